//! Exact-arithmetic certificates bounding the number of irreducible
//! factors (counted with multiplicity) of integer polynomials over Q, and
//! of bivariate polynomials over Q(X).
//!
//! The certifying pipeline combines two ingredients, both exact:
//!
//! * divisor-ratio bounds: the largest quotient `d2/d1` of classified
//!   divisors of `|f(b)|` and `|f(a)|` below the (k+1)-th root of
//!   `|f(b)|/|f(a)|`, evaluated purely by integer cross-multiplication;
//! * root-location certificates: Rouche-type disk tests, Apollonius
//!   circle membership and Routh-Hurwitz half-plane tests.
//!
//! Every verdict is returned as a [`report::CriterionReport`] carrying the
//! exact intermediate values needed to re-derive it, and can be checked
//! against the brute-force [`oracle`].

pub mod arith;
pub mod bivariate;
pub mod criteria;
pub mod divisors;
pub mod oracle;
pub mod poly;
pub mod ratio;
pub mod report;
pub mod roots;

pub use arith::{FactorConfig, Factorization, Int, Rat};
pub use bivariate::{BivarPoly, certify_coro6, certify_thm5, factor_ratpoly};
pub use criteria::{best_bound, certify_corollary, certify_thm0, certify_thm1};
pub use divisors::{DivisorClass, DivisorSet, divisor_set};
pub use poly::{IntPoly, RatPoly, parse_poly, print_canonical};
pub use ratio::{QkResult, compute_qk, min_k_with_unit_ratio};
pub use report::{CriterionReport, Route};
