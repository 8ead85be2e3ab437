//! Mahler measures of integer polynomials and Lyapunov exponents of
//! binary constant-length substitutions.
//!
//! The logarithmic Mahler measure of a polynomial is the mean of `log|p|`
//! over the unit circle. For a binary constant-length substitution, the
//! bijective columns define a signed polynomial `Q - R`, and the maximal
//! Lyapunov exponent of the substitution's Fourier-matrix cocycle equals
//! the Mahler measure of that polynomial, while the minimal exponent is
//! zero. This crate computes both sides of that equality by independent
//! numerical routes:
//!
//! - exact measures via root finding and Jensen's formula ([`mahler_jensen`]),
//! - direct quadrature of the defining integral ([`mahler_quadrature`]),
//! - Birkhoff sampling of the cocycle ([`lyapunov_max`], [`lyapunov_min`],
//!   [`birkhoff_logdet`]),
//!
//! together with the constructions that turn a height-one polynomial into
//! substitutions realizing its measure ([`substitution_from_signs`],
//! [`enumerate_substitutions`]), an exhaustive search over Borwein
//! polynomials ([`borwein_search`]), and two-dimensional block
//! substitutions with bivariate measures ([`BlockSubstitution2D`],
//! [`mahler_multivariate`]).
//!
//! ```
//! use mahler_subst::{mahler_jensen, BinarySubstitution, IntPolynomial};
//!
//! let s: BinarySubstitution = "11010,00101".parse().unwrap();
//! let qr = s.qr_polynomial();
//! assert_eq!(qr, IntPolynomial::from_i64(&[-1, -1, 1, -1, 1]));
//! let m = mahler_jensen(&qr).unwrap();
//! assert!((m.value - 0.656256).abs() < 1e-5);
//! ```

pub mod block2d;
pub mod cocycle;
pub mod construct;
pub mod fourier;
pub mod laurent;
pub mod mahler;
pub mod poly;
pub mod subst;

pub use block2d::{BlockError, BlockSubstitution2D};
pub use cocycle::{
    birkhoff_logdet, cocycle_product, extremal_exponents, extremal_exponents_qr,
    invariant_direction_exponent, lyapunov_max, lyapunov_min, CocycleError, CocycleParams,
    LyapunovEstimate, DEFAULT_SEED,
};
pub use construct::{
    borwein_search, borwein_search_parallel, enumerate_substitutions, substitution_from_signs,
    Coincidence, ConstructError, SearchRecord, ZeroChoice,
};
pub use fourier::{FourierMatrix, Matrix2};
pub use laurent::{LaurentError, LaurentPoly};
pub use mahler::{
    find_roots, mahler_jensen, mahler_jensen_complex, mahler_multivariate, mahler_quadrature,
    MahlerDetail, MahlerError, MahlerMethod, MahlerResult,
};
pub use poly::{classify, poly_mul, reciprocal_of, ComplexPolynomial, IntPolynomial, PolyClass, PolyError};
pub use subst::{
    period_doubling, thue_morse, BinarySubstitution, ColumnDecomposition, PeriodicClass, SubstError,
};
