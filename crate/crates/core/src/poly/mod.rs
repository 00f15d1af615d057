//! Sparse multivariate polynomials and the constructions built on them.

pub mod factor;
pub mod irreducible;
pub mod multi;
pub mod parse;
pub mod quadratic;
pub mod resultant;

pub use factor::{factor_binary_form, factor_univariate, gcd_poly, squarefree_part, FactorList};
pub use multi::{vars, HomogeneousForm, Mono, MultiPoly, Vars};
pub use parse::parse_poly;
pub use quadratic::{quadratic_form_data, QuadraticFormData};
pub use resultant::{resultant, resultant_by_name};
