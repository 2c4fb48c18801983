//! Semi-equivelar toroidal maps as lattice quotients of the Archimedean
//! tilings, and their vertex-transitive covers.
//!
//! A toroidal map is specified by a [`QuotientSpec`]: a tiling and an integer
//! matrix whose rows generate the translation subgroup being factored out.
//! [`cover::vt_cover`] replaces that subgroup by the scalar lattice `m·Z²`
//! it contains, which yields a vertex-transitive cover, and
//! [`symmetry`] checks vertex-transitivity independently from the
//! automorphism group of the flag system.

pub mod batch;
pub mod cover;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod map;
pub mod render;
pub mod scalar;
pub mod signature;
pub mod symmetry;
pub mod tilings;

pub use error::{Error, Result};
pub use map::{build_quotient, FlagMap, QuotientSpec};
pub use signature::VertexTypeSig;
pub use tilings::{template, TilingId, TilingTemplate};

/// Sublattice matrices over the working integer type.
pub type Sublattice = lattice::SublatticeMat<i64>;

/// Coset systems over the working integer type.
pub type Cosets = lattice::CosetSystem<i64>;

/// Plane points used for rendering.
pub type Point = geometry::Vec2<f64>;
