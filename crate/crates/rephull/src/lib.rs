//! Convex-hull geometry for sets of numbers representable in a complex base
//! `q = p·e^{2πi/n}` (p > 1) with digits drawn from a finite real alphabet.
//!
//! The crate provides:
//!
//! - a small planar geometry kernel ([`geom`]): complex-plane vectors, polygon
//!   orientation, point-in-polygon tests and a brute-force convex hull;
//! - the closed-form hull machinery ([`hull`]): the translation-hull
//!   construction `conv(P ∪ (P+t))`, the recursive base polygon, the
//!   closed-form extremal vertices/normals and the affine map to the hull of
//!   the representable set;
//! - alphabet-level analysis ([`numsys`]): the gap criterion for convexity of
//!   the representable set, a slice-based geometric convexity test for unions
//!   of translates, digit folding and a constructive Farkas-style convex
//!   decomposition;
//! - iterated-function-system approximations ([`ifs`]): the contraction maps
//!   `x ↦ (x + a)/q`, Hutchinson steps, and depth-d point clouds;
//! - deterministic output emitters ([`render`]) and seeded verification
//!   suites ([`verify`]) shared by the CLI and the acceptance tests.

pub mod geom;
pub mod hull;
pub mod ifs;
pub mod numsys;
pub mod render;
pub mod verify;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point coordinates must be finite, got ({0}, {1})")]
    NonFinitePoint(f64, f64),
    #[error("polygon needs at least one vertex")]
    EmptyPolygon,
    #[error("polygon needs at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("zero-length edge between consecutive vertices {0} and {1}")]
    ZeroLengthEdge(usize, usize),
    #[error("convexity precondition violated")]
    NotConvex,
    #[error("undefined translation direction (t = 0)")]
    ZeroTranslation,
    #[error("tolerances must be strictly positive and below 1e-3")]
    BadTolerance,
    #[error("base modulus must satisfy p > 1, got {0}")]
    BadModulus(f64),
    #[error("rotation order n must be at least 1")]
    BadOrder,
    #[error("alphabet digits must be finite and strictly increasing")]
    BadAlphabet,
    #[error("enumeration cap exceeded: {detail}")]
    EnumerationCap { detail: String },
    #[error("digit list length {got} is not a multiple of the block size {block}")]
    BlockMismatch { got: usize, block: usize },
    #[error("value {value} at position {index} is outside [{lo}, {hi}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("bounds must satisfy lo < hi, got [{0}, {1}]")]
    BadBounds(f64, f64),
    #[error("normals undefined for a segment by closed form (n = 1)")]
    SegmentNormals,
    #[error("slice-test hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("translation offsets must be sorted ascending")]
    UnsortedOffsets,
    #[error("word length {got} does not match base order {expected}")]
    WordLength { got: usize, expected: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use geom::{canonical_equal, convex_hull, dot, perp, Orientation, Point, Polygon, Tolerance};
pub use hull::{
    base_polygon, binary_power_sums, closed_form_normals, closed_form_vertices, lambda_hull,
    predict_counts, translate_hull, Base, VertexFamily, Word,
};
pub use ifs::{cloud, hausdorff_to_hull, hutchinson_step, IfsMap, PointCloud};
pub use numsys::{
    convexity_report, convexity_witness, criterion_matches_geometry, farkas_decompose,
    fold_expansion, union_slices_convex, Alphabet, ConvexityReport, FarkasDecomposition,
};
