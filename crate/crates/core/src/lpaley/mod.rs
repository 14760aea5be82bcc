//! Littlewood-Paley machinery on the periodic lattice: the dyadic partition
//! of unity, the blocks `Δ_j` and `S_j`, Besov and Sobolev norms, and
//! probes for the Bernstein and commutator inequalities.
//!
//! The low-pass profile is `χ(ξ) = ψ(3(|ξ| - 1))` with the smooth step
//! `ψ(r) = g(1 - r) / (g(r) + g(1 - r))`, `g(r) = exp(-1/r)`, so `χ ≡ 1` on
//! the unit ball and vanishes outside radius 4/3. The annulus profile
//! `φ(ξ) = χ(ξ/2) - χ(ξ)` then telescopes: over the shell range
//! `[j_min, j_max]`, `χ(2^{-j_min}k) + Σ_j φ(2^{-j}k) = χ(2^{-j_max-1}k)`,
//! which is exactly 1 on every retained mode.

mod norms;
mod partition;
mod probes;

pub use norms::{besov_norm, sobolev_norm, NormRequest};
pub use partition::{build_partition, chi, phi, DyadicPartition, Shell, SpectralField};
pub use probes::{bernstein_ratio, commutator_residual, multi_indices, CommutatorExponents, CommutatorReport};

#[cfg(test)]
mod tests;
