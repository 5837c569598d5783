//! Combinatorial engine for convex-surface decorations of Heegaard surfaces:
//! dividing sets, compressing-disc chord diagrams, bypass attachment,
//! positive stabilisation, refinement, and elementary disc moves, with
//! labeled-map isomorphism as the equivalence test.

pub mod arc;
pub mod build;
pub mod bypass;
pub mod chord;
pub mod convex;
pub mod corpus;
pub mod cutglue;
pub mod equiv;
pub mod normalize;
pub mod reduce;
pub mod surgery;
pub mod tightness;
pub mod map;

pub use map::{CombinatorialMap, Dart, EdgeLabel, MapBuilder, MapError, Result, SystemKind};
