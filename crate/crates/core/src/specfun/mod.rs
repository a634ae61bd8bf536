//! Bessel functions of real and purely imaginary order.
//!
//! The imaginary-order family consists of the standard real solutions of
//! `x²y″ + xy′ + (x² + ν²)y = 0` (the pair `F_iν`, `G_iν`) and of the modified
//! equation `x²y″ + xy′ − (x² − ν²)y = 0` (the pair `K_iν`, `L_iν`). All four
//! are real for real `x > 0` and real `ν > 0`.
//!
//! Every evaluator picks one of several branches depending on `(ν, x)`:
//!
//! | branch          | where                                       |
//! |-----------------|---------------------------------------------|
//! | `Series`        | small and moderate `x` (power series)       |
//! | `Asymptotic`    | large `x`, once the Hankel-type expansion has converged |
//! | `Continuation`  | `F_iν`, `G_iν` between the two: Taylor stepping of the ODE from the series edge |
//! | `Quadrature`    | `K_iν`, `K_ν` away from the origin: trapezoidal rule on `∫ e^{−x cosh t} cos(νt) dt` |
//! | `ContinuedFraction` | real-order `J_ν`, `Y_ν` off the series/asymptotic regions (Temme + Steed) |
//!
//! The evaluation returns the value together with the first and second
//! derivative obtained from the same representation, which is what the
//! Wronskian and ODE-residual checks consume.

mod asymptotic;
mod gamma;
mod imaginary;
mod real;
mod scaled;
mod zeros;

pub use asymptotic::{hankel_coefficient, AsymptoticCoeffs};
pub use gamma::{arg_gamma_continuous, ln_gamma, ln_gamma_complex, recip_gamma};
pub use imaginary::{
    f_inu, f_inu_eval, f_inu_small_x, fg_inu_eval, g_inu, g_inu_eval, g_inu_small_x, k_inu, k_inu_eval,
    k_inu_small_x, l_inu, l_inu_eval, l_inu_small_x, ImaginaryOrderTriple,
};
pub use real::{
    bessel_i, bessel_i_eval, bessel_j, bessel_j_eval, bessel_jy_scaled, bessel_k, bessel_k_eval,
    bessel_y, bessel_y_eval, JyScaled,
};
pub use scaled::Scaled;
pub use zeros::find_k_inu_zeros;

use thiserror::Error;

/// Failure modes of the special-function kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },
    #[error("{function} did not converge within {terms} terms at nu = {nu}, x = {x}")]
    NonConvergence {
        function: &'static str,
        nu: f64,
        x: f64,
        terms: usize,
    },
    #[error("{function} overflows double precision at nu = {nu}, x = {x}")]
    Overflow { function: &'static str, nu: f64, x: f64 },
    #[error("no sign change of K_i{nu}(x) found around the seed of level n = {n}")]
    BracketFailure { nu: f64, n: i64 },
}

pub type Result<T> = std::result::Result<T, SpecfunError>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> SpecfunError {
    SpecfunError::Domain {
        function,
        detail: detail.into(),
    }
}

/// Truncation and branch-selection settings shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    /// A series stops once three consecutive terms fall below
    /// `rel_tol · |partial sum|`.
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Fixed threshold between the power series and the large-`x` forms.
    /// `None` selects the order-dependent default, see [`SeriesPolicy::switch_for`].
    pub asymptotic_switch_x: Option<f64>,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
            asymptotic_switch_x: None,
        }
    }
}

/// Maximum number of terms summed in the large-argument expansions
/// (ten each for the even and odd parts).
pub const MAX_ASYMPTOTIC_TERMS: usize = 20;

impl SeriesPolicy {
    pub fn new(rel_tol: f64, max_terms: usize, asymptotic_switch_x: Option<f64>) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(domain("SeriesPolicy", format!("rel_tol must be > 0, got {rel_tol}")));
        }
        if max_terms < 1 {
            return Err(domain("SeriesPolicy", "max_terms must be >= 1"));
        }
        if let Some(s) = asymptotic_switch_x {
            if !(s > 0.0) {
                return Err(domain(
                    "SeriesPolicy",
                    format!("asymptotic_switch_x must be > 0, got {s}"),
                ));
            }
        }
        Ok(Self {
            rel_tol,
            max_terms,
            asymptotic_switch_x,
        })
    }

    /// Argument above which the power series is no longer used for order `nu`.
    ///
    /// The default is `max(12, min(2ν², 12 + 0.8ν))`. Past `x ≈ 12 + 0.8ν` the
    /// series loses more than about four digits to cancellation, so the `2ν²`
    /// rule is capped there and the gap up to the asymptotic region is bridged
    /// by ODE continuation or quadrature.
    pub fn switch_for(&self, nu: f64) -> f64 {
        match self.asymptotic_switch_x {
            Some(s) => s,
            None => {
                let nu = nu.abs();
                (2.0 * nu * nu).min(12.0 + 0.8 * nu).max(12.0)
            }
        }
    }
}

/// Which representation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Series,
    Asymptotic,
    Continuation,
    Quadrature,
    ContinuedFraction,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Series => "series",
            Branch::Asymptotic => "asymptotic",
            Branch::Continuation => "continuation",
            Branch::Quadrature => "quadrature",
            Branch::ContinuedFraction => "continued-fraction",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A function value with its first two derivatives and the branch used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub derivative: f64,
    pub second_derivative: f64,
    pub branch: Branch,
}

impl Evaluation {
    pub(crate) fn new(value: f64, derivative: f64, second_derivative: f64, branch: Branch) -> Self {
        Self {
            value,
            derivative,
            second_derivative,
            branch,
        }
    }
}

/// Tracks the stopping rule "three consecutive small terms".
#[derive(Debug, Default)]
pub(crate) struct Convergence {
    small_in_a_row: u8,
    peak: f64,
}

impl Convergence {
    /// Feed the magnitude of the latest term and of the partial sum; returns
    /// `true` once the series can be truncated.
    pub(crate) fn update(&mut self, term: f64, sum: f64, rel_tol: f64) -> bool {
        let term = term.abs();
        self.peak = self.peak.max(term);
        // terms that are negligible next to the largest one also count, so a
        // partial sum sitting on a zero of the function still terminates
        if term <= rel_tol * sum.abs() || term <= 1e-30 * self.peak {
            self.small_in_a_row += 1;
        } else {
            self.small_in_a_row = 0;
        }
        self.small_in_a_row >= 3
    }
}
