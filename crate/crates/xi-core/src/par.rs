//! Data-parallel helpers with a sequential fallback. Results are
//! collected and reduced in index order, so outputs are bit-identical
//! whether or not the `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use rug::Float;

/// Evaluates `eval` at each index and sums the `Some` results in index
/// order at the given precision. Returns the sum and how many indices
/// produced a value.
pub fn sum_indexed<F>(indices: &[i64], eval: F, prec: u32) -> (Float, u64)
where
    F: Fn(i64) -> Option<Float> + Sync,
{
    #[cfg(feature = "parallel")]
    let parts: Vec<Option<Float>> = indices.par_iter().map(|&j| eval(j)).collect();
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Option<Float>> = indices.iter().map(|&j| eval(j)).collect();

    let mut acc = Float::new(prec);
    let mut evaluated = 0;
    for part in parts {
        if let Some(v) = part {
            acc += v;
            evaluated += 1;
        }
    }
    (acc, evaluated)
}

/// Maps `f` over `0..count`, preserving index order in the output.
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}
