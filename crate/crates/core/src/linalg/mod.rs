pub mod complex;
pub mod eigen;
pub mod expm;
pub mod logm;
pub mod matrix;

pub use complex::ComplexMatrix;
pub use eigen::{eigen_decompose, SpectralDecomposition};
pub use expm::expm;
pub use logm::logm_principal;
pub use matrix::RealMatrix;
