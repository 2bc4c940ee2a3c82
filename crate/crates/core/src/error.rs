use thiserror::Error;

use crate::lattice::LatticeSite;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a sum a^2 + ab + b^2 (not an attainable squared diameter)")]
    NotAttainable(u64),
    #[error("{0} does not split into a product of conjugate Eisenstein primes")]
    NotDecomposable(u64),
    #[error("the zero element has no factorization")]
    ZeroElement,
    #[error("coordinate of {0:?} exceeds the supported bound 2^30")]
    Overflow(LatticeSite),
    #[error("site {site:?} lies outside the torus [-{half}, {half})^2")]
    OutOfDomain { site: LatticeSite, half: i64 },
    #[error("neighbourhood of {0:?} leaves the configuration region")]
    OutOfRegion(LatticeSite),
    #[error("parallelogram block around ({0}, {1}) leaves the configuration region")]
    BlockOutOfRegion(i64, i64),
    #[error("incorrect parallelogram ({0}, {1}) touches the region boundary")]
    BoundaryTouching(i64, i64),
    #[error("invalid sublattice generator ({0}, {1}); expected a >= b >= 0, not both zero")]
    InvalidSublattice(i64, i64),
    #[error("force family is defined for d2 = {family} but the sublattice has index {sublattice}")]
    IncompatibleFamily { family: u64, sublattice: u64 },
    #[error("no admissible pairs of inserted sites")]
    NoAdmissiblePairs,
    #[error("unknown force family `{0}` (expected d7, d13 or d147)")]
    UnknownFamily(String),
    #[error("admissible 6-tuple found in the punctured disk: {0:?}")]
    SixTupleFound(Vec<LatticeSite>),
    #[error("invalid force family: {0}")]
    InvalidFamily(String),
    #[error("invalid viewport: {0}")]
    InvalidViewport(String),
    #[error("invalid render request: {0}")]
    InvalidRenderSpec(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
