//! Hypergroups over a group, exactly and exhaustively at small order.
//!
//! Any subgroup `H` of a group `G` together with a right transversal `M`
//! factors every element uniquely as `h·m`. Pushing the group law through
//! that factorization equips `M` with four structural tables; the axioms
//! they satisfy define a hypergroup over `H`. This crate implements the
//! whole calculus on exact Cayley tables:
//!
//! * [`group`] — validated finite groups, subgroups, cosets, transversals,
//!   isomorphism search, automorphism groups, and a brute-force enumeration
//!   of all groups of order up to 8 used as an independent oracle;
//! * [`hypergroup`] — the axioms, derived identities, trivial-action
//!   specialization, and morphisms;
//! * [`construction`] — the standard construction from a transversal, the
//!   outer exact product on `H x M`, and the universality roundtrip;
//! * [`action`] — the wreath group `H^M x S_M`, its action on hypergroups,
//!   exhaustive hypergroup enumeration, and orbit partitions;
//! * [`extension`] — classification of degree-`m` extensions of `H` by
//!   wreath orbits, cross-checked against the ambient-group oracle, with
//!   normality and quotient-fixed refinements;
//! * [`cohomology`] — factor-set cocycles, coboundaries, `H2`, the pairing
//!   with extension classes for a commutative kernel, and the witness that
//!   coboundary closure fails for a noncommutative one;
//! * [`format`] — plain-text serialization of all of the above.

pub mod action;
pub mod cohomology;
pub mod construction;
pub mod extension;
pub mod format;
pub mod group;
pub mod hypergroup;

pub use action::{
    act_f, act_kappa, act_wreath, enumerate_hypergroups, enumerate_trivial_phi_class,
    enumerate_trivial_phi_fixed_xi, orbits_full, orbits_kappa, orbits_xi_stabilizer, same_orbit,
    ActionError, Orbit, OrbitPartition, WreathElement, WreathGroup,
};
pub use cohomology::{
    all_reverse_representations, coboundary, cocycles_give_equivalent_extensions, enumerate_b2,
    enumerate_z2, h2, is_cocycle, noncommutative_obstruction_witness, schreier_classify,
    Cochain2, CohomologyError, H2Data, ReverseRepresentation,
};
pub use construction::{
    exact_product, reconstruction_map, standard_construct, universality_roundtrip,
    ConstructError, ExactProductGroup,
};
pub use extension::{
    classify_ext, ext_by_quotient, extensions_equal, hypergroup_of_extension, map_e, map_h,
    orbit_representative_of_extension, split_normal, Classification, ExtError, Extension,
    QuotientClassification,
};
pub use format::{parse_group, parse_hypergroup, write_group, write_hypergroup, FormatError};
pub use group::{
    automorphisms, by_name, canonical_form, cyclic, describe_group, direct_product,
    enumerate_groups_oracle, enumerate_transversals, isomorphism, FiniteGroup, GroupError,
    GroupMorphism, Transversal,
};
pub use hypergroup::{Axiom, AxiomReport, HgError, Hypergroup, HypergroupMorphism};
