//! Fixed-size complex linear algebra, group generators and the swept
//! Hamiltonians.

mod eigen;
mod gaps;
mod generators;
mod hamiltonian;
mod matrix;
mod sym2;

pub use eigen::{eigenvalues_hermitian3, eigh3};
pub use gaps::{eigencurves, gap_minima, GapMinimum};
pub use generators::{from_gellmann_coefficients, gellmann_coefficients, gellmann_matrices, spin1_matrices};
pub use hamiltonian::{
    apply_hamiltonian, build_hamiltonian, build_su3_hamiltonian, classify, spin1_hamiltonian, Hamiltonian3, LZParams,
    SU3Params, SymmetryClass,
};
pub use matrix::{ComplexMatrix2, ComplexMatrix3, Vector3};
pub use sym2::symmetric_square;
