//! Monodromy zeta-functions of polynomial deformations and of polynomials on
//! complete intersections, computed exactly from Newton polytopes.
//!
//! The pipeline runs bottom-up: integer lattices and frames ([`lattice`]),
//! exact convex hulls and faces ([`polytope`]), lattice-normalized mixed
//! volumes ([`mixed_volume`]), the forms `Q^l_k` ([`qforms`]), input systems
//! ([`system`]) and finally the zeta products ([`zeta`]).
//!
//! ```
//! use newton_zeta::{parse_polynomial, Direction, Engine, Scope, SystemSpec, ZetaProduct};
//!
//! let vars = ["z1".to_string(), "z2".to_string()];
//! let f1 = parse_polynomial("z1 + z2*(1+z1^2)", &vars).unwrap();
//! let spec = SystemSpec::deformation(2, vec![f1]).unwrap();
//! let (zeta, _traces) = Engine::new()
//!     .zeta_deformation(&spec, Direction::Origin, Scope::Affine)
//!     .unwrap();
//! assert_eq!(zeta, ZetaProduct::factor(1, 2));
//! assert_eq!(zeta.pretty(), "(1-t)^2");
//! ```

pub mod error;
mod hull;
pub mod lattice;
pub mod mixed_volume;
mod parse;
pub mod polytope;
pub mod qforms;
pub mod system;
pub mod zeta;

pub use error::{Error, Result};
pub use lattice::{
    orthogonal_line_generators, primitive_part, saturated_basis, to_frame_coords, Covector,
    IntPoint, LatticeFrame,
};
pub use mixed_volume::{
    lattice_point_volume_oracle, lattice_volume, normalized_mixed_volume, MixedVolumeCache,
    VolumeQuery,
};
pub use polytope::{FaceRecord, IndexSet, LatticePolytope};
pub use qforms::{
    q_compositions, q_exponent, q_exponent_cached, q_tilde_exponent, q_tilde_exponent_cached,
    Composition,
};
pub use system::{
    cone_system, fiber_polytopes, newton_polytope, parse_polynomial, restrict_system,
    PolynomialInput, RestrictedSystem, SystemMode, SystemSpec,
};
pub use zeta::{
    candidate_covectors, ContributionTrace, Direction, Engine, Hypothesis, Scope, TraceKind,
    ZetaProduct,
};
