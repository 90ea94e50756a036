//! Exact computation of the special Mumford-Tate torus of a CM type at the
//! level of cocharacter lattices.
//!
//! A CM field and its Galois closure are modeled by finite group data
//! `(G, H, c)`: a finite group, a subgroup, and a central involution
//! outside the subgroup. A CM type is a half-set of the coset space `G/H`.
//! On top of that the crate computes, with exact integer arithmetic
//! throughout:
//!
//! - canonical Hermite/Smith normal forms, saturations, annihilators and
//!   the character/cocharacter pairing ([`integer_lattice`]);
//! - Hodge cocharacters, Galois translation, reflex subgroups, reflex types
//!   and norm pushforwards ([`cm_structures`]);
//! - the Mumford-Tate lattice via the Hodge orbit, the torus image via the
//!   factored reflex norm, their comparison, and invariant-class dimensions
//!   of tensor spaces ([`mumford_tate`]);
//! - exhaustive enumeration over group families with CSV/JSON tabulation
//!   ([`atlas`]).
//!
//! Everything is immutable after construction and safe to share across
//! threads.
//!
//! ```
//! use mtcm_core::{make_group, validate_cm_datum, validate_cm_type, GroupSpec};
//! use mtcm_core::mumford_tate::check_main_theorem;
//!
//! let built = make_group(&GroupSpec::Cyclic(4), 512)?;
//! let h = built.group.subgroup_closure(&[])?;
//! let datum = validate_cm_datum(built.group, h, 2)?;
//! let quartic = validate_cm_type(&datum, &[0, 1])?;
//! let report = check_main_theorem(&quartic)?;
//! assert!(report.theorem_holds && report.factorization_holds);
//! assert_eq!(report.mt_rank, 3);
//! # Ok::<(), mtcm_core::Error>(())
//! ```

pub mod atlas;
pub mod cm_structures;
pub mod finite_group;
pub mod fixtures;
pub mod integer_lattice;
pub mod mumford_tate;

pub use atlas::{
    enumerate_cm_types, tabulate_family, AtlasError, AtlasRecord, FamilySpec, SubfieldPolicy,
    TabulateOptions,
};
pub use cm_structures::{
    field_norm_pushforward, norm_pushforward, psi_pushforward, reflex_norm_pushforward,
    validate_cm_type, CmError, CmType, ReflexData,
};
pub use finite_group::{
    coset_space, make_group, validate_cm_datum, BuiltGroup, CmFieldDatum, CosetSpace, DatumError,
    FiniteGroup, GroupError, GroupSpec, Subgroup, DEFAULT_ORDER_CAP,
};
pub use integer_lattice::{
    hnf_canonical, lattice_contains, lattice_equal, pair, IntegerLattice, LatticeError, LatticeMap,
};
pub use mumford_tate::{
    check_main_theorem, invariant_class_dimension, motive_weights, mt_lattice, t0_lattice,
    ClassRoute, MotiveError, MtReport, WeightMultiset, DEFAULT_WEIGHT_CAP,
};

/// Any error the crate can produce, for callers that mix the layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
}
