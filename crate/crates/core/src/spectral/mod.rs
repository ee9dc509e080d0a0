//! Periodic grids, Fourier multipliers, and the periodic Hilbert transform.
//!
//! Profiles live on a staggered grid `u_j = -pi + (j + 1/2) 2pi/N`, so the
//! singular points `u = 0` and `u = +-pi` of fractional powers are never
//! sampled. Fourier coefficients are phase-corrected for the half-cell
//! offset: a profile equals `sum_k c_k exp(i n_k u)` with `n_k` the signed
//! wavenumber of FFT bin `k`.

mod dealias;
mod depth;
pub(crate) mod fft;
mod grid;
mod multiplier;
mod power;
mod profile;
mod quadrature;

pub use dealias::{dealiased_product, padded_len};
pub use depth::DepthMode;
pub use grid::{make_grid, Grid};
pub use multiplier::{
    apply_multiplier, derivative_symbol, hilbert, hilbert_symbol, k_multiplier, Parity,
    SpectralMultiplier,
};
pub use power::sample_power;
pub use profile::PeriodicProfile;
pub use quadrature::hilbert_pv_quadrature;
