//! Exact algebra for bounding and certifying the Krull dimension of the
//! reciprocal complement of coordinate rings of affine plane curves and
//! surfaces in 3-space.

pub mod error;
pub mod dimcriteria;
pub mod field;
pub mod ftransform;
pub mod linalg;
pub mod planeloc;
pub mod poly;
pub mod projgeom;

pub use error::{Error, ErrorClass, Result};
pub use field::{Elem, Field, FieldValue};
pub use poly::{HomogeneousForm, MultiPoly};
