//! Algebraic duality for finite posets.
//!
//! Every finite poset `P` embeds in its dual space `P*` of isotone maps into
//! the two-element chain. Equipping a subspace `A ⊆ P*` with two closures,
//! generated by the sets `UP_A(p)` and `LO_A(p)`, the sets closed in the first
//! and open in the second form a poset, and `p ↦ UP_A(p)` is an isomorphism
//! onto it whenever `A` is full and separating. Choosing `A` recovers the
//! classical pictures: the orthodual space of an orthoposet, the
//! lattice-morphism dual of a distributive lattice, and the Stone space of a
//! Boolean algebra.
//!
//! All of this is computed exhaustively on finite instances, and
//! [`suite::theorem_suite`] checks each representation result on a given poset.

pub mod bitset;
pub mod catalog;
pub mod closure;
pub mod dot;
pub mod dual;
pub mod error;
pub mod family;
pub mod ortho;
pub mod poset;
pub mod represent;
pub mod suite;

pub use bitset::BitSet;
pub use catalog::{are_isomorphic, enumerate_posets, enumerate_posets_up_to, is_isomorphism};
pub use closure::{c1o2_family, closures_equal, closures_of_subspace, ClosureOperator};
pub use dual::{
    dual_space, dual_space_capped, lattice_dual, orthodual_space, DualPoint, Generated,
    IdealFamily, Role, Subspace,
};
pub use error::{Error, Result};
pub use family::SubsetFamily;
pub use ortho::{find_orthocomplementations, OrthoMap};
pub use poset::{Poset, PosetJson};
pub use represent::{
    collection_s, induced_orthocomplementation, ortho_characterization_check, represent,
    represent_distributive, represent_orthoposet, sigma, sigma_check, stone, RepresentationReport,
    StoneSpace,
};
pub use suite::{theorem_suite, Suite, SuiteReport};

/// Enumeration limits shared by the sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest catalog size.
    pub max_n: usize,
    /// Largest number of up-sets materialized for a dual space.
    pub dual_cap: usize,
    /// Largest `|P*|` for the exhaustive sweep over subspaces of `P*`.
    pub s_cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_n: catalog::DEFAULT_MAX_N,
            dual_cap: dual::DEFAULT_DUAL_CAP,
            s_cap: 14,
        }
    }
}
