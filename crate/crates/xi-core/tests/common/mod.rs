//! Shared fixtures for the integration suites. Every test binary talks to
//! one oracle backed by an on-disk cache under the build's scratch
//! directory, so values computed by one suite are reused by the rest.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::LazyLock;

use xi_core::interval::Interval;
use xi_core::oracle::Oracle;
use xi_core::real::EvalContext;

pub static ORACLE: LazyLock<Oracle> = LazyLock::new(|| {
    Oracle::new(Some(
        PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("oracle-cache"),
    ))
});

/// Enclosures of γ(start), …, γ(start + count − 1) at the given digit level.
pub fn gamma_intervals(start: u32, count: u32, digits: u32) -> Vec<Interval> {
    let ctx = EvalContext::new(digits);
    (start..start + count)
        .map(|n| {
            let r = ORACLE.gamma(n, &ctx).expect("gamma oracle");
            Interval::new(r.value, r.error_bound)
        })
        .collect()
}
