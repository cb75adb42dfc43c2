//! Exact finite-type Bogoliubov operators on a selfdual one-particle space,
//! their Fock-space implementers, and the checks that tie the two together.
//!
//! The one-particle space `K` has a real orthonormal basis `e_0, e_1, ...`
//! on which the conjugation acts as complex conjugation. The fixed basis
//! projection `P1` has range spanned by `f_n = (e_{2n} - i e_{2n+1}) / sqrt 2`.
//! Internally operators on `K` are stored in the *mode basis*
//! `f_0, conj f_0, f_1, conj f_1, ...` so that the components `P_m A P_n`
//! are plain strided sub-matrices.
//!
//! Module map:
//! * [`selfdual`]: finite-type operators, Bogoliubov operators, subspaces.
//! * [`clifford`]: the finite selfdual CAR algebra as matrices.
//! * [`fock`]: sparse Fock vectors, CAR operators, Wick-ordered exponentials.
//! * [`quasifree`]: quasi-free states and their spectral structure.
//! * [`implementer`]: the associate, `Psi_0`, and the full implementer family.
//! * [`decompose`]: the product decomposition `V = U W` and the character.
//! * [`verify`]: the acceptance checks shared by tests and the CLI.

pub mod clifford;
pub mod decompose;
pub mod error;
pub mod fock;
pub mod implementer;
pub mod linalg;
pub mod quasifree;
pub mod random;
pub mod report;
pub mod selfdual;
pub mod verify;

pub use error::{Error, Result};
