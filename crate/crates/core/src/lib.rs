//! Symmetric-difference transformations of submodular set functions.
//!
//! A set function `f` on a finite ground set `V` is stored as a dense
//! table of exact rationals indexed by bitmask. The crate certifies
//! submodularity on 2-faces, builds the inequality graph whose components
//! describe every `S` with `f∘σ_S` submodular, finds canonical sets of
//! arbitrary functions through a mod-2 parity system, and computes the
//! inseparable decomposition.

pub mod canonical;
pub mod classify;
mod dsu;
pub mod error;
pub mod io;
pub mod setfn;
pub mod structure;
pub mod transform;
pub mod value;
pub mod zoo;

/// Exact rational scalar used for every function value.
pub type Rational = num_rational::BigRational;

pub use canonical::{
    build_parity_system, face_constraint, solve_canonical, strict_canonical,
    strict_canonical_anchored, verify_canonical, Conflict, ParityConstraint, ParitySystem,
    SolutionFamily, SystemStatus,
};
pub use classify::{
    certify, is_modular, is_strictly_submodular, is_submodular, lovasz_extension, ClassCertificate,
    FaceWitness, FunctionClass, Verdict,
};
pub use dsu::{ParityConflict, ParityUnionFind};
pub use error::{Error, Result};
pub use setfn::{
    counted, enumerate_faces, face_count, phi, phi_face, Corner, CountedOracle, GroundSet, Oracle,
    SetFunction, Subset, TwoFace,
};
pub use structure::{
    boolean_row, canonical_family, inequality_graph, inseparable_decomposition, is_sd_submodular,
    is_separable, BooleanRow, Decomposition, InequalityGraph,
};
pub use transform::{face_sd_map, relabel, sd_map, sd_transform, sd_view, SdMap, SdView};
