//! Finite-ring toolkit for idempotent ideals and their TTF triples.
//!
//! Every structure here is finite and fully enumerated: rings are Cayley
//! tables, ideals are bitsets over element indices, and modules are
//! subquotients of a free module `R^d` whose elements are encoded as
//! mixed-radix integers. All computations are exact.

pub mod commutative;
pub mod construct;
mod elemset;
mod error;
pub mod finring;
pub mod fpdetect;
pub mod group;
pub mod ideals;
pub mod limits;
pub mod matrix;
pub mod modcat;

pub use commutative::{check_commutative_theorem, decompose_local, support, CommutativeVerdict, LocalDecomposition};
pub use construct::Encoding;
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use finring::{build_ring, FiniteRing, RawTables, RingElement};
pub use fpdetect::{
    counterexample_conditions, fix_ideal, ideal_i_a, is_fp_detecting, left_annihilator_rows,
    locally_fp_via_fix, locally_fp_via_idempotents, right_invertible_mod, CounterexampleReport,
    FixVerdict, FpVerdict, LfpReport,
};
pub use ideals::{Ideal, Side, TtfData, TtfFlags};
pub use limits::Limits;
pub use matrix::RMatrix;
pub use modcat::{FinModule, GroupHom, HomGroup, ModuleMap, Tensor};

/// Index of an element inside its ring's Cayley tables.
pub type Elem = u32;
