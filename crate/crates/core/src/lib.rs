//! Finite geometric lattices at desk scale: matroid rank/closure oracles,
//! the lattice of flats with its verification suites, the society and
//! obstruction calculus, and atom-to-hyperplane matching strategies.

pub mod checks;
pub mod corpus;
pub mod export;
pub mod lattice;
pub mod matching;
pub mod matroid;
pub mod society;
pub mod subset;

pub use lattice::{Lattice, LatticeError, Shadows, SubLattice};
pub use matching::{Matching, Strategy};
pub use matroid::{Matroid, MatroidError, ParsedInstance};
pub use society::{Espousal, ObstructionWitness, Society, SocietyError};
pub use subset::Subset;
