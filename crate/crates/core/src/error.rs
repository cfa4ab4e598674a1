use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: link references undeclared segment '{name}'")]
    UndeclaredSegment { line: usize, name: String },

    #[error("line {line}: overlap '{overlap}' is not blunt; bluntify the graph first (only '*' or '0M' overlaps are accepted)")]
    NotBlunt { line: usize, overlap: String },

    #[error("line {line}: link is not '+'/'+' oriented; rerun with --double to analyse the doubled graph")]
    NotDirected { line: usize },

    #[error("vertex {0} does not exist")]
    UnknownVertex(u32),

    #[error("input is not biconnected: {0}")]
    NotBiconnected(String),

    #[error("oracle refuses graphs with {vertices} vertices (limit {limit})")]
    OracleTooLarge { vertices: usize, limit: usize },

    #[error("cannot generate graph: {0}")]
    InfeasibleSpec(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
