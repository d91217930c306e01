//! Fourier analysis, convolution-operator norms and compactness diagnostics
//! on finite abelian groups, truncated integers and sampled real grids.
//!
//! ```
//! use lca_pego::{operator::fourier_sup, compactness::paper_kernel};
//!
//! let g = paper_kernel(8).unwrap();
//! let sup = fourier_sup(&g, Some(4096)).unwrap();
//! assert!((sup - 5f64.sqrt()).abs() < 1e-6);
//! ```

pub mod claims;
pub mod cli;
pub mod compactness;
pub mod config;
pub mod error;
pub mod groups;
pub mod operator;
pub mod report;
pub mod transform;

pub use error::{Error, Result};
