//! Finite quantales, the down-set quantale of relations, the tensor
//! multiplication `⊙`, and the composition of antitone maps.

mod compose;
mod conditions;
mod finite;
mod relational;
mod units;

pub use compose::{composition_relation, full_odot, galois_compose, galois_compose_truncated};
pub use conditions::{
    condition_a, condition_b, condition_c, condition_d, condition_e, condition_f, condition_g, condition_h,
    quantale_conditions, Certificate, Condition, LawKind, ConditionOptions, ConditionsReport, Verdict, DEFAULT_LAW_CAP,
};
pub use finite::{nucleus_checks, FiniteQuantale, LawFailure, NucleusReport, PreclosureTable, QuantaleReport};
pub use relational::{odot, relation_product, RelationQuantale, TensorQuantale};
pub use units::{
    atom_identity, atom_identity_map, atoms_are_pure_tensors, is_antitone, unit_report, AtomIsoReport,
    AtomRelationIso, UnitReport,
};
