pub mod cone;
pub mod corpus;
pub mod error;
pub mod freesum;
pub mod json;
pub mod linalg;
pub mod polytope;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use polytope::RationalPolytope;
pub use rational::{LatticePoint, QVec, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/free-sums.md")]
    mod free_sums {}
    #[doc = include_str!("../../../book/src/affine.md")]
    mod affine {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
