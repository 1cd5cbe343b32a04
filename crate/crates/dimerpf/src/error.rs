//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failure modes of graph construction, reduction, orientation and
/// Pfaffian evaluation.  Variants carry enough detail to produce a useful
/// diagnostic without holding references into the structures that produced
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // ---- planar embedding -------------------------------------------------
    /// Two edges intersect somewhere other than a shared endpoint, two
    /// vertices coincide, or a vertex lies in the interior of an edge.
    #[error("crossing or overlapping geometry: {0}")]
    CrossingEdges(String),
    /// The same unordered vertex pair appears twice in the edge list.
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    /// An edge joins a vertex to itself.
    #[error("self loop at vertex {0}")]
    SelfLoop(u32),
    /// A rotation system failed the Euler consistency check, referenced an
    /// unknown vertex, or was otherwise not a valid planar embedding.
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    /// A vertex id was referenced that the graph does not contain.
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    /// A circuit was requested from a vertex sequence that is not a simple
    /// cycle of the graph.
    #[error("not a circuit: {0}")]
    NotACircuit(String),
    /// Two circuits do not share exactly one maximal reversed string, so the
    /// merge operation is undefined for them.
    #[error("circuits are not mergeable: {0}")]
    NotMergeable(String),
    /// An exhaustive enumeration was requested on an input past the supported
    /// size cap.
    #[error("input too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    // ---- reduction to an enclosed graph ----------------------------------
    /// `evenize_boundary` was called on a graph whose boundary circuit
    /// already has even length.
    #[error("boundary circuit already has even length")]
    BoundaryAlreadyEven,

    // ---- orientation ------------------------------------------------------
    /// A pre-directed edge set cannot be extended to a Kasteleyn orientation
    /// (a fully directed circuit with the wrong parity was found).
    #[error("partial orientation cannot be extended: {0}")]
    BadPartialOrientation(String),
    /// A circuit goodness test needs a direction for every circuit edge.
    #[error("edge {{{0}, {1}}} has no direction")]
    UndirectedEdgeInCircuit(u32, u32),
    /// The graph admits no covering by dimers plus boundary monomers.
    #[error("no covering with boundary monomers exists")]
    NoCoveringExists,

    // ---- polynomials and matrices -----------------------------------------
    /// Pfaffians of odd-dimensional matrices do not exist.
    #[error("matrix dimension {0} is odd")]
    OddDimension(usize),
    /// Sub-Pfaffian index sets must have even size.
    #[error("index subset has odd size {0}")]
    OddSubsetSize(usize),
    /// A row/column index is outside the matrix.
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    /// Matrix inversion failed.
    #[error("matrix is singular")]
    SingularMatrix,
    /// A univariate operation was applied to a polynomial that is not
    /// univariate, or evaluation hit a negative exponent at zero.
    #[error("polynomial operation unsupported: {0}")]
    BadPolynomial(String),

    // ---- partition functions ----------------------------------------------
    /// An interior (or augmentation) vertex carries a nonzero monomer weight
    /// but the caller did not ask for interior weights to be zeroed.
    #[error("interior vertex {0} has nonzero monomer weight")]
    NonzeroInteriorMonomer(u32),
    /// A correlation index does not name a boundary vertex label.
    #[error("label {0} is not a boundary label")]
    IndexOffBoundary(usize),
    /// Correlations require at least one dimer cover of the even sublattice;
    /// the normalising Pfaffian vanished.
    #[error("graph has no perfect matching; correlations are undefined")]
    NoPerfectMatching,

    // ---- full monomer-dimer computations ----------------------------------
    /// Rectangle dimensions must describe an even grid with even width.
    #[error("bad rectangle dimensions {0}x{1}: {2}")]
    BadDimensions(usize, usize, String),
    /// A removed-edge set does not shape a usable skeleton.
    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),
    /// The graph has no Hamiltonian cycle even after boundary augmentation.
    #[error("graph is not Hamiltonian: {0}")]
    NotHamiltonian(String),
    /// Upper-bound substitutions need strictly positive monomer weights.
    #[error("vertex {0} has non-positive monomer weight")]
    NonpositiveMonomerWeight(u32),
    /// Upper-bound substitutions need rational square roots of the weights.
    #[error("weight {0} has no rational square root")]
    IrrationalSquareRoot(String),
    /// Counting bounds are only meaningful for non-negative dimer weights.
    #[error("edge {{{0}, {1}}} has negative dimer weight")]
    NegativeDimerWeight(u32, u32),

    // ---- input ------------------------------------------------------------
    /// Malformed JSON or semantic problems in an input document.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
