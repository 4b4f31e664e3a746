use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a polytope needs at least one vertex")]
    EmptyPolytope,

    #[error("the origin is not contained in the polytope")]
    OriginNotInPolytope,

    #[error("point is not contained in the cone")]
    NotInCone,

    #[error("projection direction is not contained in the cone")]
    DirectionNotInCone,

    #[error("lattice is not contained in the target lattice")]
    NotSublattice,

    #[error("affine spans intersect in more than a point")]
    SpansNotTransverse,

    #[error("affine spans do not intersect")]
    SpansDisjoint,

    #[error("intersection point of the affine spans is not in both summands")]
    IntersectionNotShared,

    #[error("summand lattices are not complementary")]
    NotComplementary,

    #[error("truncation height {got} is below the required {needed}")]
    TruncationTooSmall { needed: u64, got: u64 },

    #[error("Ehrhart series times its denominator has a nonzero coefficient at degree {0}")]
    NonvanishingTail(usize),

    #[error("quasi-polynomial disagrees with the direct count at k = {0}")]
    ValidationFailure(u64),

    #[error("polytope is not a lattice polytope")]
    NotLatticePolytope,

    #[error("polytope is not Gorenstein: {0}")]
    NotGorenstein(String),

    #[error("no interior lattice point found in dilates up to {0}")]
    GorensteinInconclusive(u64),

    #[error("intersection point differs from the Gorenstein center")]
    CenterMismatch,

    #[error("series have different numbers of variables ({0} and {1})")]
    VariableMismatch(usize, usize),

    #[error("shift index {index} is outside 0..{bound}")]
    ShiftIndexOutOfRange { index: u64, bound: u64 },

    #[error("monomial must have positive height")]
    NonPositiveHeight,

    #[error("coordinate does not fit in a machine integer")]
    Overflow,

    #[error("invalid rational number {0:?}")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EmptyPolytope => "empty_polytope",
            Error::OriginNotInPolytope => "origin_not_in_polytope",
            Error::NotInCone => "not_in_cone",
            Error::DirectionNotInCone => "direction_not_in_cone",
            Error::NotSublattice => "not_sublattice",
            Error::SpansNotTransverse => "spans_intersect_in_more_than_a_point",
            Error::SpansDisjoint => "spans_disjoint",
            Error::IntersectionNotShared => "intersection_point_not_in_both_sets",
            Error::NotComplementary => "not_complementary",
            Error::TruncationTooSmall { .. } => "truncation_too_small",
            Error::NonvanishingTail(_) => "nonvanishing_tail",
            Error::ValidationFailure(_) => "validation_failure",
            Error::NotLatticePolytope => "not_lattice_polytope",
            Error::NotGorenstein(_) => "not_gorenstein",
            Error::GorensteinInconclusive(_) => "gorenstein_inconclusive",
            Error::CenterMismatch => "intersection_point_differs_from_gorenstein_center",
            Error::VariableMismatch(..) => "variable_mismatch",
            Error::ShiftIndexOutOfRange { .. } => "shift_index_out_of_range",
            Error::NonPositiveHeight => "non_positive_height",
            Error::Overflow => "overflow",
            Error::ParseRational(_) => "invalid_rational",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
