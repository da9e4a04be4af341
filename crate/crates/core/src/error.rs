use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two maps or morphisms that do not meet at a common object.
    #[error("composition domain mismatch: {0}")]
    CompositionDomain(String),

    /// An input violates the precondition of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A functor into the simplex category failed a coherence check.
    #[error("diagram error: {0}")]
    Diagram(String),

    #[error("labeling error: {0}")]
    Labeling(String),

    #[error("classification error: {0}")]
    Classification(String),

    /// Bordisms whose shared boundary trusses differ.
    #[error("composition error: {0}")]
    Composition(String),

    #[error("unpacking error: {0}")]
    Unpacking(String),

    #[error("extraction error: {0}")]
    Extraction(String),

    #[error("section error: {0}")]
    Section(String),

    #[error("unsupported depth {found}: expected {expected}")]
    UnsupportedDepth { expected: String, found: usize },

    /// Something the construction guarantees turned out false. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
