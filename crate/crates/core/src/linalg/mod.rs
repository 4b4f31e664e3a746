//! Exact linear algebra over `Q` and `Z`.

pub mod lattice;
pub mod normal_form;
pub mod qmat;

pub use lattice::{affine_lattice_points_in_box, complementary_in, lattice_basis_of_span, LatticeBasis};
pub use normal_form::{hnf, integer_kernel, snf, solve_integer, IntMatrix};
