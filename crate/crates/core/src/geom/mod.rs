//! Projective points, lines, conics and projectivities over exact fields.

mod conic;
pub mod linalg;
mod maps;
mod point;
mod veronese;

use thiserror::Error;

use crate::field::FieldError;

pub use conic::Conic;
pub use maps::{cross_ratio, project_from, span_rank, CrossRatio, Map2, Map3};
pub use point::{collinear, sorted_pair, unify_points, unify_points1, Line, Point1, Point2};
pub use veronese::veronese_normalize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("zero form")]
    ZeroForm,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines coincide")]
    CoincidentLines,
    #[error("conic through the points is not unique")]
    NotUnique,
    #[error("unique conic through the points is degenerate: {0:?}")]
    NotIrreducible(Box<Conic>),
    #[error("conic is degenerate")]
    DegenerateConic,
    #[error("point lies on the conic")]
    PointOnConic,
    #[error("point does not lie on the conic")]
    PointNotOnConic,
    #[error("projection center equals the point")]
    CenterEqualsPoint,
    #[error("points of the triple are not pairwise distinct")]
    DegenerateTriple,
    #[error("frame is not in general position")]
    DegenerateFrame,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
