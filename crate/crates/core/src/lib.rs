//! Tensor products of finite closure spaces and augmented posets, the
//! truncated tensor product, and the relation quantale multiplication
//! `R ⊙ S = t̄(R · S)`, with brute-force oracles for every construction.

pub mod bits;
pub mod closure;
pub mod completion;
pub mod error;
pub mod oracle;
pub mod order;
pub mod par;
pub mod quantale;
pub mod relation;
pub mod tensor;

pub use bits::Bits;
pub use error::{Error, Result};
pub use closure::{ClosureSpace, SpaceProperties};
pub use completion::{AugmentedPoset, FamilyKind};
pub use order::{FinitePoset, PosetProperties};
pub use quantale::{FiniteQuantale, RelationQuantale, TensorQuantale};
pub use relation::Relation;
pub use tensor::{Side, TensorBase, TensorFamily};
