//! Regular honeycombs `{p,q,r}` in spherical, euclidean and hyperbolic space.
//!
//! The crate is organised bottom-up:
//!
//! * [`schlafli`] parses symbols and classifies geometry and vertex/cell types.
//! * [`conformal`] holds the conformal-model primitives: generalized spheres,
//!   sphere inversion, model conversions and geodesics.
//! * [`simplex`] builds the four mirrors of the fundamental simplex in the
//!   upper half-space model and folds points back into it.
//! * [`render`] draws the pattern a hyperbolic honeycomb leaves on the
//!   boundary at infinity.
//! * [`honeycomb`] enumerates honeycomb edges in the Poincaré ball.
//! * [`mesh`] turns edges into Dupin-cyclide tube meshes and writes STL/OBJ.

pub mod conformal;
pub mod error;
pub mod honeycomb;
pub mod hyperboloid;
pub mod mesh;
pub mod render;
pub mod schlafli;
pub mod simplex;

pub use conformal::{GeneralizedSphere, HypSphere, Point3, Vec3};
pub use error::{Error, Result};
pub use honeycomb::{Edge, EdgeSet};
pub use mesh::{Mesh, ThicknessPolicy};
pub use render::{DepthGrid, Palette, Viewport};
pub use schlafli::{ElementType, ExtendedInt, Geometry, SchlafliSymbol};
pub use simplex::{CanonicalizeResult, Simplex};
