//! State and gate fidelities of Talbot shears on the physical code space.

use std::ops::Mul;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::comb::{build_physical_state, overlap, CombSpec, LogicalLabel, SpectralState};
use crate::error::{Error, Result};
use crate::propagation::{apply_chirp, Chirp};

const DEGENERACY_MARGIN: f64 = 1e-6;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    RawLogical,
    Orthonormalized,
}

/// 2×2 operator in the `(0_t, 1_t)` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateMatrix {
    pub entries: [[Complex64; 2]; 2],
    pub basis: BasisTag,
}

impl GateMatrix {
    pub fn new(entries: [[Complex64; 2]; 2], basis: BasisTag) -> Self {
        Self { entries, basis }
    }

    fn target(entries: [[Complex64; 2]; 2]) -> Self {
        Self::new(entries, BasisTag::Orthonormalized)
    }

    pub fn identity() -> Self {
        Self::target([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
    }

    pub fn x_t() -> Self {
        Self::target([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
    }

    /// Phase gate `diag(e^{−iπ/4}, e^{iπ/4})`, i.e. `S` up to a global phase.
    pub fn s() -> Self {
        let p = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        Self::target([[p.conj(), c(0.0, 0.0)], [c(0.0, 0.0), p]])
    }

    /// `[[cos θ, −sin θ], [sin θ, cos θ]]`.
    pub fn r_y(theta: f64) -> Self {
        let (s, co) = theta.sin_cos();
        Self::target([[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]])
    }

    /// `S·R_y(−π/4)·S†`, equal to `(1/√2)[[1, −i], [−i, 1]]`.
    pub fn s_ry_s_dagger() -> Self {
        Self::s() * Self::r_y(-std::f64::consts::FRAC_PI_4) * Self::s().dagger()
    }

    pub fn dagger(&self) -> Self {
        let e = &self.entries;
        Self::new([[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]], self.basis)
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        let e = &self.entries;
        Self::new([[z * e[0][0], z * e[0][1]], [z * e[1][0], z * e[1][1]]], self.basis)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let g = self.dagger() * *self;
        let a = g.entries[0][0].re;
        let d = g.entries[1][1].re;
        let b = g.entries[0][1].norm();
        let mean = 0.5 * (a + d);
        let gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        (mean + gap).max(0.0).sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let g = self.dagger() * *self;
        let id = Self::identity();
        (0..2).all(|i| (0..2).all(|j| (g.entries[i][j] - id.entries[i][j]).norm() <= tol))
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
    }
}

impl Mul for GateMatrix {
    type Output = GateMatrix;

    fn mul(self, rhs: GateMatrix) -> GateMatrix {
        let (a, b) = (&self.entries, &rhs.entries);
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        let basis = if self.basis == rhs.basis { self.basis } else { BasisTag::RawLogical };
        GateMatrix::new(out, basis)
    }
}

/// `|⟨a|b⟩|²`.
pub fn state_fidelity(a: &SpectralState, b: &SpectralState) -> Result<f64> {
    Ok(overlap(a, b)?.norm_sqr())
}

/// Gram–Schmidt basis `e0 = 0_t`, `e1 ∝ 1_t − ⟨e0|1_t⟩e0`.
pub fn orthonormal_logical_basis(spec: &CombSpec) -> Result<(SpectralState, SpectralState)> {
    let zero = build_physical_state(LogicalLabel::ZeroT, spec)?;
    let one = build_physical_state(LogicalLabel::OneT, spec)?;
    let ov = overlap(&zero, &one)?;
    if ov.norm() > 1.0 - DEGENERACY_MARGIN {
        return Err(Error::DegenerateBasis { overlap: ov.norm() });
    }
    let e1 = one.combine(c(1.0, 0.0), &zero, -ov)?.normalized()?;
    Ok((zero, e1))
}

/// `W_ij = ⟨e_i| e^{iβω²} |e_j⟩` in the orthonormalized basis.
pub fn implemented_gate(chirp: Chirp, spec: &CombSpec) -> Result<GateMatrix> {
    let (e0, e1) = orthonormal_logical_basis(spec)?;
    let basis = [&e0, &e1];
    let mut entries = [[c(0.0, 0.0); 2]; 2];
    for (j, ej) in basis.iter().enumerate() {
        let moved = apply_chirp(ej, chirp)?;
        for (i, ei) in basis.iter().enumerate() {
            entries[i][j] = overlap(ei, &moved)?;
        }
    }
    Ok(GateMatrix::new(entries, BasisTag::Orthonormalized))
}

/// `|Tr(X†W)|² / (Tr(W†W)·Tr(X†X))`.
pub fn gate_fidelity_from_matrix(w: &GateMatrix, target: &GateMatrix) -> f64 {
    let num = (target.dagger() * *w).trace().norm_sqr();
    num / (w.frobenius_sq() * target.frobenius_sq())
}

pub fn gate_fidelity(chirp: Chirp, target: &GateMatrix, spec: &CombSpec) -> Result<f64> {
    Ok(gate_fidelity_from_matrix(&implemented_gate(chirp, spec)?, target))
}

/// `|⟨target| e^{iβω²} |input⟩|²`.
pub fn chirped_state_fidelity(
    chirp: Chirp,
    input: LogicalLabel,
    target: LogicalLabel,
    spec: &CombSpec,
) -> Result<f64> {
    let moved = apply_chirp(&build_physical_state(input, spec)?, chirp)?;
    state_fidelity(&build_physical_state(target, spec)?, &moved)
}

/// What a sweep cell evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepTarget {
    Gate(GateMatrix),
    State { input: LogicalLabel, target: LogicalLabel },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellWarning {
    pub kappa: f64,
    pub sigma: f64,
    pub message: String,
}

/// Values over a `(κ, σ)` grid, indexed `values[[i_kappa, j_sigma]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityMap {
    pub kappa_axis: Vec<f64>,
    pub sigma_axis: Vec<f64>,
    pub values: Array2<f64>,
    pub beta: Option<Chirp>,
    pub warnings: Vec<CellWarning>,
}

impl FidelityMap {
    /// Evaluate `cell` at every grid point in parallel, recording failures as NaN.
    pub fn evaluate(
        kappa_axis: &[f64],
        sigma_axis: &[f64],
        beta: Option<Chirp>,
        cell: impl Fn(f64, f64) -> Result<f64> + Sync,
    ) -> Self {
        let points: Vec<(f64, f64)> = kappa_axis
            .iter()
            .flat_map(|&k| sigma_axis.iter().map(move |&s| (k, s)))
            .collect();
        let results: Vec<Result<f64>> = points.par_iter().map(|&(k, s)| cell(k, s)).collect();
        let mut values = Array2::from_elem((kappa_axis.len(), sigma_axis.len()), f64::NAN);
        let mut warnings = Vec::new();
        for (idx, ((kappa, sigma), result)) in points.into_iter().zip(results).enumerate() {
            let slot = &mut values[[idx / sigma_axis.len(), idx % sigma_axis.len()]];
            match result {
                Ok(v) if v.is_finite() => *slot = v,
                Ok(v) => warnings.push(CellWarning { kappa, sigma, message: format!("non-finite value {v}") }),
                Err(e) => {
                    log::warn!("cell κ = {kappa}, σ = {sigma}: {e}");
                    warnings.push(CellWarning { kappa, sigma, message: e.to_string() });
                }
            }
        }
        Self {
            kappa_axis: kappa_axis.to_vec(),
            sigma_axis: sigma_axis.to_vec(),
            values,
            beta,
            warnings,
        }
    }
}

/// Fidelity over a `(κ, σ)` grid, each cell on its own default grid sized for `chirp`.
pub fn fidelity_sweep(chirp: Chirp, target: SweepTarget, kappa_axis: &[f64], sigma_axis: &[f64]) -> FidelityMap {
    let reach = chirp.in_talbot_units().abs().max(crate::comb::DEFAULT_MAX_CHIRP);
    FidelityMap::evaluate(kappa_axis, sigma_axis, Some(chirp), |kappa, sigma| {
        let spec = CombSpec::for_chirp(sigma, kappa, reach)?;
        match target {
            SweepTarget::Gate(gate) => gate_fidelity(chirp, &gate, &spec),
            SweepTarget::State { input, target } => chirped_state_fidelity(chirp, input, target, &spec),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_talbot_target_matches_explicit_matrix() {
        let g = GateMatrix::s_ry_s_dagger();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [[c(h, 0.0), c(0.0, -h)], [c(0.0, -h), c(h, 0.0)]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.entries[i][j] - expected[i][j]).norm() < 1e-15);
            }
        }
        assert!(g.is_unitary(1e-14));
    }

    #[test]
    fn targets_are_unitary() {
        for g in [GateMatrix::identity(), GateMatrix::x_t(), GateMatrix::s(), GateMatrix::r_y(0.3)] {
            assert!(g.is_unitary(1e-15));
            assert!((g.operator_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fidelity_of_target_with_itself_is_one() {
        let x = GateMatrix::x_t();
        assert!((gate_fidelity_from_matrix(&x, &x) - 1.0).abs() < 1e-15);
        assert!(gate_fidelity_from_matrix(&GateMatrix::identity(), &x).abs() < 1e-15);
    }
}
