//! Exact character-theoretic density machinery for finite Galois models.
//!
//! The crate models automorphic objects at desk scale: finite matrix or
//! permutation groups stand in for Galois images, irreducible characters for
//! cuspidal representations, and exact character inner products for the pole
//! orders of the associated Dirichlet series. On top of the exact layer sits
//! a seeded place-stream simulator (Chebotarev sampling over the first N
//! primes) and a symbolic bound engine that derives lower-bound constants for
//! disagreement densities and checks them against exact class-sum densities.
//!
//! Everything user-visible is deterministic: exact rationals and cyclotomic
//! integers in the algebra, a counter-based generator in the simulator, and
//! byte-stable report writers.

pub mod rational;
pub mod cyclotomic;
pub mod element;
pub mod group;
pub mod classfun;
pub mod chartab;
pub mod catalog;
pub mod stream;
pub mod density;
pub mod radical;
pub mod moments;
pub mod bounds;
pub mod verify;
pub mod report;
pub mod cli;

pub use catalog::{catalog, CatalogEntry};
pub use chartab::{character_table, CharacterTable};
pub use classfun::ClassFunction;
pub use cyclotomic::Cyclotomic;
pub use element::GroupElement;
pub use group::FiniteGroup;
pub use rational::Rat;
