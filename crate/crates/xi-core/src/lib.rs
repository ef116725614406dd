//! Arbitrary-precision tools for the Taylor coefficients γ(n) of the
//! Riemann xi function, the Turán coefficients b₂ₙ of its Hermite
//! expansion, and the Jensen-type polynomial families built from them.
//!
//! The crate has three layers:
//!
//! * exact symbolic arithmetic ([`rational`], [`poly`], [`ratfunc`],
//!   [`bell`], [`coeffs`]) generating every expansion coefficient as a
//!   rational function with rational coefficients;
//! * certified numerics ([`real`], [`quad`], [`oracle`]) evaluating γ(n),
//!   ξ^{(2n)}(1/2), b₂ₙ and the Laplace-type integrals behind them by
//!   direct quadrature with rigorous error bounds;
//! * consumers ([`expand`], [`jensen`]) evaluating the asymptotic
//!   expansions at finite n and certifying hyperbolicity of the Jensen
//!   polynomials J^{d,n}, P^{d,n}, Q^{d,n,α}.

pub mod bell;
pub mod coeffs;
pub mod expand;
pub mod interval;
pub mod jensen;
pub mod poly;
pub mod rational;
pub mod ratfunc;
pub mod oracle;
pub mod par;
pub mod quad;
pub mod real;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),
    /// Evaluation outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Certification failed within the allowed precision or level limits;
    /// the message reports the bound that was achieved.
    #[error("precision exhausted: {0}")]
    Precision(String),
    /// Cache file I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
