use thiserror::Error;

use crate::schlafli::SchlafliSymbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed Schläfli symbol `{0}`")]
    MalformedSymbol(String),
    #[error("Schläfli term `{0}` is out of range (terms must be >= 3 or infinite)")]
    TermOutOfRange(String),
    #[error("{{{p},{q}}} is not a spherical or euclidean polyhedron", p = .0, q = .1)]
    NotAPolyhedron(String, String),
    #[error("surfaces do not intersect")]
    Disjoint,
    #[error("geodesic arc endpoints coincide")]
    DegenerateArc,
    #[error("{0} is not hyperbolic; only hyperbolic honeycombs are supported here")]
    UnsupportedGeometry(SchlafliSymbol),
    #[error("{0} has no material cell center")]
    NoMaterialCenter(SchlafliSymbol),
    #[error("depth grid has no converged samples")]
    EmptyGrid,
    #[error("mesh has no triangles")]
    EmptyMesh,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
