//! Sparse multivariate integer polynomials, maps of projective space and
//! exact checks of two explicit self-maps of `P^2`.

mod examples;
mod map;
mod poly;

pub use examples::{
    dupont_map, dupont_restriction, squares_of_lines, tchebyshev_map, tchebyshev_pi, tchebyshev_quintic,
    verify_dupont, verify_dupont_with, verify_tchebyshev, verify_tchebyshev_with, CheckResult, VerificationReport,
    DUPONT_LINES,
};
pub use map::{compose_map, image_of_line, jacobian_det, line_form, normalize_line, restrict_to_line, MapPN};
pub use poly::{default_names, Monomial, MultiPoly};
