//! Embedding path, cycle and clique graphs onto the vertices of simple
//! polygons, with every edge an interior chord.
//!
//! - [`geom`]: exact integer predicates.
//! - [`polygon`]: validation and convex/reflex/u-turn classification.
//! - [`visibility`]: interior chords, visibility graph, isolated vertices.
//! - [`pointset`]: path and cycle drawings on bare point sets.
//! - [`polygon_embed`]: constructive embeddings (convex and pseudo-convex).
//! - [`verify`]: the exact checker every construction answers to.
//! - [`oracle`]: exhaustive maxima on small polygons.
//! - [`generate`]: seeded convex, pseudo-convex and orthoconvex polygons.
//! - [`audit`]: greedy-versus-exhaustive comparison runs.
//! - [`io`], [`svg`]: file formats and rendering.

pub mod audit;
pub mod embedding;
pub mod generate;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod pointset;
pub mod polygon;
pub mod polygon_embed;
pub mod svg;
pub mod verify;
pub mod visibility;

pub use embedding::{Embedding, EmbeddingMeta, GraphKind, GraphSpec};
pub use geom::{Orientation, Point, Segment};
pub use polygon::{Polygon, PolygonError, VertexKind};
pub use verify::{Violation, ViolationKind};
pub use visibility::VisibilityGraph;
