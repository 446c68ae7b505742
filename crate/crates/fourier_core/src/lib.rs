//! Periodic spectral fields on `[0,1)^d`.
//!
//! Two index conventions are supported. Galerkin fields keep the modes
//! `|k|_inf <= N` and are sampled on an oversampled grid of `M >= 3(2N+1)`
//! points per axis so that cubic nonlinearities can be projected exactly.
//! Collocation fields live on `N` equispaced nodes (N even) with wave numbers
//! `k in (-N/2, N/2]`, and the DFT is normalised as
//! `U~_k = (1/N) sum_j U_j exp(-2 pi i k j / N)`.

mod error;
pub mod fft;
mod field;
mod grid;
mod interp;
mod ops;

pub use error::FourierError;
pub use field::SpectralField;
pub use grid::{next_fft_size, Convention, GridSpec};
pub use interp::{collocation_interpolant, dirichlet_g, CollocationInterpolant};
pub use ops::{
    apply_helmholtz_inverse, dealiased_product, pointwise_product, project_galerkin,
};

pub use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, FourierError>;
