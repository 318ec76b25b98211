//! Gibbs thermal states with their spectral decompositions.
//!
//! The geometric-phase formulas consume a thermal state as an explicit
//! ensemble {λ_k, |k⟩}, so the constructor keeps the decomposition it
//! diagonalized rather than just the density matrix. Populations are
//! stored descending (paired with energies ascending), and are computed
//! from exponents shifted by the ground energy so that no inverse
//! temperature in the supported range can overflow.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::eig::{apply_spectrum, hermitian_eig, SpectralDecomposition};
use crate::error::{Result, SpinError};
use crate::matrix::{inner, ComplexMatrix};
use crate::tol;

/// A Gibbs state ρ = e^{−βH}/Z together with the ensemble the
/// geometric-phase formulas evaluate over.
///
/// `decomposition.eigenvalues` holds the populations λ_k sorted
/// descending; column k of `decomposition.eigenvectors` is the matching
/// eigenstate |k⟩ (simultaneously an eigenbasis of H, with energies
/// ascending). `partition_function` is the ground-shifted value
/// Z̃ = Σ e^{−β(E_i − E_min)} ∈ [1, dim]; the unshifted partition
/// function is Z̃·e^{−β·ground_energy} whenever that number is
/// representable.
#[derive(Clone, Debug)]
pub struct ThermalState {
    pub beta: f64,
    pub rho: ComplexMatrix,
    pub decomposition: SpectralDecomposition,
    pub partition_function: f64,
    pub ground_energy: f64,
}

impl ThermalState {
    /// Populations λ_k, descending.
    pub fn populations(&self) -> &[f64] {
        &self.decomposition.eigenvalues
    }

    /// Matrix whose column k is the ensemble state |k⟩.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.decomposition.eigenvectors
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    /// Resolves degenerate populations against a reference Hamiltonian.
    ///
    /// Populations whose consecutive gap is at most
    /// [`tol::DEGENERACY_TOL`] form a cluster; within each cluster of
    /// size > 1 the restriction of `reference` to the cluster's span is
    /// re-diagonalized and the cluster's basis replaced by that
    /// eigenbasis, with populations re-read as ⟨k|ρ|k⟩ and re-sorted
    /// descending inside the cluster. States with no clusters come back
    /// unchanged.
    ///
    /// An ensemble member of a strictly degenerate subspace is an
    /// arbitrary gauge choice; picking the one adiabatically connected to
    /// `reference` keeps the geometric phase continuous through the
    /// degenerate limits (vanishing field, infinite temperature). For a
    /// nearly degenerate cluster the returned basis no longer exactly
    /// diagonalizes ρ, so the V·diag(λ)·V† = ρ reconstruction holds only
    /// to the cluster tolerance rather than to working precision.
    pub fn aligned_to(&self, reference: &ComplexMatrix) -> Result<ThermalState> {
        if reference.dim() != self.dim() {
            return Err(SpinError::DimensionMismatch);
        }
        if !reference.is_hermitian(tol::HERMITICITY_TOL) {
            return Err(SpinError::NonHermitianInput);
        }

        let populations = self.populations();
        let clusters = cluster_by_gap(populations, tol::DEGENERACY_TOL);
        if clusters.iter().all(|c| c.len() == 1) {
            return Ok(self.clone());
        }

        let n = self.dim();
        let mut basis = self.basis().clone();
        let mut pops = populations.to_vec();

        for cluster in clusters.iter().filter(|c| c.len() > 1) {
            let m = cluster.len();
            // Restriction of the reference to the cluster's span.
            let columns: Vec<Vec<Complex64>> = cluster.iter().map(|&k| basis.column(k)).collect();
            let mut restriction = ComplexMatrix::zeros(m);
            for (a, col_a) in columns.iter().enumerate() {
                let r_col = reference.matvec(col_a);
                for (b, col_b) in columns.iter().enumerate() {
                    restriction.set(b, a, inner(col_b, &r_col));
                }
            }
            let sub = hermitian_eig(&restriction)?;

            // Rotate the cluster basis into the reference eigenbasis and
            // re-read populations from ρ.
            let mut rotated: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(m);
            for w in 0..m {
                let mut vec_new = vec![Complex64::new(0.0, 0.0); n];
                for (a, col_a) in columns.iter().enumerate() {
                    let coeff = sub.eigenvectors.get(a, w);
                    for (row, entry) in vec_new.iter_mut().enumerate() {
                        *entry += col_a[row] * coeff;
                    }
                }
                let p = inner(&vec_new, &self.rho.matvec(&vec_new)).re;
                rotated.push((p, vec_new));
            }
            rotated.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("populations are finite"));

            for (slot, (p, vec_new)) in cluster.iter().zip(rotated.iter()) {
                pops[*slot] = *p;
                basis.set_column(*slot, vec_new);
            }
        }

        Ok(ThermalState {
            beta: self.beta,
            rho: self.rho.clone(),
            decomposition: SpectralDecomposition {
                eigenvalues: pops,
                eigenvectors: basis,
            },
            partition_function: self.partition_function,
            ground_energy: self.ground_energy,
        })
    }
}

/// Groups consecutive indices whose population gap is at most `tol`.
/// Input is descending, so clusters are contiguous runs.
fn cluster_by_gap(populations: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in 0..populations.len() {
        let starts_new = match clusters.last() {
            Some(cluster) => {
                let prev = *cluster.last().expect("clusters are non-empty");
                (populations[prev] - populations[k]).abs() > tol
            }
            None => true,
        };
        if starts_new {
            clusters.push(vec![k]);
        } else {
            clusters.last_mut().expect("just checked").push(k);
        }
    }
    clusters
}

/// Prepares the Gibbs state of `h` at inverse temperature `beta`.
///
/// Populations are e^{−β(E_i − E_min)}/Z̃ with Z̃ the shifted partition
/// function, so arbitrarily stiff spectra inside the β cap cannot
/// overflow. β = 0 short-circuits to exactly 1/dim per level. Degenerate
/// populations are left in the gauge-fixed eigensolver order; see
/// [`ThermalState::aligned_to`] for the resolution policy against an
/// evolution Hamiltonian.
pub fn gibbs_state(h: &ComplexMatrix, beta: f64) -> Result<ThermalState> {
    if !beta.is_finite() || !(0.0..=tol::BETA_MAX).contains(&beta) {
        return Err(SpinError::BetaOutOfRange { beta });
    }
    let eig = hermitian_eig(h)?;
    let n = h.dim();
    let ground_energy = eig.eigenvalues[0];

    let (populations, partition_function, rho) = if beta == 0.0 {
        let p = vec![1.0 / n as f64; n];
        let rho = ComplexMatrix::identity(n).scaled(Complex64::new(1.0 / n as f64, 0.0));
        (p, n as f64, rho)
    } else {
        let weights: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&e| Float::exp(-beta * (e - ground_energy)))
            .collect();
        let z: f64 = weights.iter().sum();
        let p: Vec<f64> = weights.iter().map(|w| w / z).collect();
        let complex_p: Vec<Complex64> = p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let rho = apply_spectrum(&eig.eigenvectors, &complex_p);
        (p, z, rho)
    };

    Ok(ThermalState {
        beta,
        rho,
        decomposition: SpectralDecomposition {
            eigenvalues: populations,
            eigenvectors: eig.eigenvectors,
        },
        partition_function,
        ground_energy,
    })
}

/// [`gibbs_state`] followed by [`ThermalState::aligned_to`] against a
/// reference Hamiltonian.
pub fn gibbs_state_aligned(
    h: &ComplexMatrix,
    beta: f64,
    reference: &ComplexMatrix,
) -> Result<ThermalState> {
    gibbs_state(h, beta)?.aligned_to(reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{analytic_spectrum, full_hamiltonian, heisenberg_coupling, SpinParams};

    #[test]
    fn infinite_temperature_is_exactly_maximally_mixed() {
        let h = full_hamiltonian(&SpinParams::new(1.0, 1.0, 0.0, 0.0), false);
        let state = gibbs_state(&h, 0.0).unwrap();
        let want = ComplexMatrix::identity(4).scaled(Complex64::new(0.25, 0.0));
        assert_eq!(state.rho.as_slice(), want.as_slice());
        assert_eq!(state.populations(), &[0.25; 4]);
        assert_eq!(state.partition_function, 4.0);
    }

    #[test]
    fn populations_follow_boltzmann_weights() {
        let h = full_hamiltonian(&SpinParams::new(1.0, 1.0, 0.0, 0.0), false);
        let state = gibbs_state(&h, 1.0).unwrap();
        let energies = analytic_spectrum(1.0, 1.0);
        let z: f64 = energies.iter().map(|&e| Float::exp(-(e - energies[0]))).sum();
        for (p, &e) in state.populations().iter().zip(energies.iter()) {
            let want = Float::exp(-(e - energies[0])) / z;
            assert!((p - want).abs() < 1e-12);
        }
        // Descending, summing to one.
        for w in state.populations().windows(2) {
            assert!(w[0] >= w[1]);
        }
        let total: f64 = state.populations().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cold_heisenberg_state_approaches_the_singlet_projector() {
        let h = heisenberg_coupling(1.0);
        let state = gibbs_state(&h, 100.0).unwrap();
        assert!(state.populations()[0] > 1.0 - 1e-12);
        // The singlet projector has 1/2 on the central diagonal and ∓1/2
        // off-diagonal between |e↑n↓⟩ and |e↓n↑⟩.
        assert!((state.rho.get(1, 1).re - 0.5).abs() < 1e-12);
        assert!((state.rho.get(1, 2).re + 0.5).abs() < 1e-12);
        assert!(state.rho.get(0, 0).norm() < 1e-12);
    }

    #[test]
    fn gibbs_state_commutes_with_its_hamiltonian() {
        let h = full_hamiltonian(&SpinParams::new(1.3, -0.6, 0.1, 0.0), false);
        let state = gibbs_state(&h, 2.0).unwrap();
        let comm = &(&state.rho * &h) - &(&h * &state.rho);
        assert!(comm.frobenius_norm() < 1e-12);
        assert!(state.rho.is_hermitian(1e-12));
        assert!((state.rho.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn purity_increases_with_beta() {
        let h = full_hamiltonian(&SpinParams::new(1.0, 0.8, 0.0, 0.0), false);
        let mut last = 0.0;
        for &beta in &[0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let state = gibbs_state(&h, beta).unwrap();
            let purity = (&state.rho * &state.rho).trace().re;
            assert!(purity >= last - 1e-12, "purity must not drop: {purity} vs {last}");
            last = purity;
        }
    }

    #[test]
    fn stiff_spectrum_stays_finite_at_the_beta_cap() {
        let h = full_hamiltonian(&SpinParams::new(100.0, 50.0, 0.0, 0.0), false);
        let state = gibbs_state(&h, tol::BETA_MAX).unwrap();
        assert!(state.rho.is_finite());
        assert!(state.partition_function >= 1.0);
        assert!((state.populations()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beta_outside_range_is_rejected() {
        let h = heisenberg_coupling(1.0);
        assert!(matches!(
            gibbs_state(&h, -0.1).unwrap_err(),
            SpinError::BetaOutOfRange { .. }
        ));
        assert!(matches!(
            gibbs_state(&h, 1.5e4).unwrap_err(),
            SpinError::BetaOutOfRange { .. }
        ));
        assert!(matches!(
            gibbs_state(&h, f64::NAN).unwrap_err(),
            SpinError::BetaOutOfRange { .. }
        ));
    }

    #[test]
    fn alignment_is_identity_for_distinct_populations() {
        let p = SpinParams::new(1.0, 1.0, 0.0, 0.5);
        let h = full_hamiltonian(&p, false);
        let hp = full_hamiltonian(&p, true);
        let state = gibbs_state(&h, 1.0).unwrap();
        let aligned = state.aligned_to(&hp).unwrap();
        assert_eq!(state.basis().as_slice(), aligned.basis().as_slice());
        assert_eq!(state.populations(), aligned.populations());
    }

    #[test]
    fn alignment_diagonalizes_reference_inside_clusters() {
        // β = 0 makes all four populations exactly degenerate: the
        // aligned basis must be an eigenbasis of the reference.
        let p = SpinParams::new(1.0, 1.0, 0.0, 0.5);
        let h = full_hamiltonian(&p, false);
        let hp = full_hamiltonian(&p, true);
        let state = gibbs_state(&h, 0.0).unwrap();
        let aligned = state.aligned_to(&hp).unwrap();
        for k in 0..4 {
            let col = aligned.basis().column(k);
            let hcol = hp.matvec(&col);
            let energy = inner(&col, &hcol).re;
            let mut residual = 0.0;
            for (a, b) in hcol.iter().zip(col.iter()) {
                residual += (a - b * Complex64::new(energy, 0.0)).norm_sqr();
            }
            assert!(Float::sqrt(residual) < 1e-10, "column {k} is not a reference eigenvector");
        }
        // Populations survive as diagonal expectations of ρ = I/4.
        for &p in aligned.populations() {
            assert!((p - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn cluster_grouping_respects_gaps() {
        let clusters = cluster_by_gap(&[0.4, 0.4, 0.1, 0.1], 1e-6);
        assert_eq!(clusters, vec![vec![0, 1], vec![2, 3]]);
        let clusters = cluster_by_gap(&[0.5, 0.3, 0.2], 1e-6);
        assert_eq!(clusters, vec![vec![0], vec![1], vec![2]]);
        // Chained near-degeneracy merges transitively.
        let clusters = cluster_by_gap(&[0.25 + 2e-7, 0.25 + 1e-7, 0.25, 0.25 - 1e-7], 1e-6);
        assert_eq!(clusters.len(), 1);
    }
}
