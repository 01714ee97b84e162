//! Exact scalars and linear algebra over F2 and Z/N.

pub mod cyclo;
pub mod f2;
pub mod root;
pub mod symplectic;
pub mod zn;

pub use cyclo::CycloNumber;
pub use f2::{solve_f2, BitMatrix, F2Eliminator, F2Matrix, F2Vector};
pub use root::RootOfUnity;
pub use symplectic::{halve, symplectic_basis};
pub use zn::{solve_zn, ZnSolution, ZnVector};
