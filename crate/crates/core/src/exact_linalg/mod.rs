//! Exact dense integer linear algebra.

mod det;
mod identities;
mod matrix;

pub use det::{adjugate, charpoly, det, det_mod, first_minor, minor};
pub use identities::{
    cauchy_binet, combinations, compound_identity, conjugation_minor_identity,
    deleted_block_product, deleted_block_sides, laplace_det, row_op_matrix,
    row_op_minor_identity, wedge,
};
pub use matrix::IMatrix;
