//! Snarl and superbubble detection.
//!
//! Snarls are found on bidirected graphs, superbubbles on directed graphs.
//! Both finders decompose the input into blocks and run over SPQR trees of the
//! biconnected ones. The [`oracle`] module holds slow reference
//! implementations used for cross-checking.

pub mod connectivity;
mod error;
pub mod feedback;
pub mod gfa;
pub mod graph;
pub mod oracle;
pub mod snarls;
pub mod spqr;
pub mod superbubbles;

pub use error::Error;
pub use snarls::find_snarls_timed;
pub use superbubbles::find_superbubbles_timed;
pub use feedback::{feedback_arcs, FeedbackArcs};
pub use gfa::{GfaDocument, SnarlReport, SuperbubbleReport};
pub use graph::{BidirectedGraph, DirectedGraph, EdgeId, Incidence, Sign, UndirectedMultigraph, VertexId};

pub use spqr::{build_spqr, NodeKind, SpqrTree};
pub use snarls::{find_snarls, SnarlRepresentation};
pub use superbubbles::find_superbubbles;

/// Wall time of the two stages of a finder: building block-cut and SPQR
/// trees, then detection over them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimes {
    pub build: std::time::Duration,
    pub detect: std::time::Duration,
}
