//! Geometric probability over a real Hilbert space.
//!
//! A distribution `p` becomes the unit "joystick" vector `Ψ = (√p_1, ..., √p_N)`:
//! outcome `i` is observed with probability `cos²` of the angle between `Ψ` and
//! axis `i`. Mixed states are symmetric positive semidefinite matrices of unit
//! trace, measured by `p_z = trace(ρ m_z)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::{ExactDistribution, GenericSpace};
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, Matrix};
use crate::numeric::{big_to_f64, rational_to_f64};

/// Tolerance on `Σ Ψ_i² = 1` for a stored [`JspsVector`].
pub const UNIT_NORM_TOLERANCE: f64 = 1e-12;
/// Looser tolerance accepted for vectors handed to [`born_probability`].
pub const INPUT_NORM_TOLERANCE: f64 = 1e-9;
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue still counted as non-negative.
pub const PSD_TOLERANCE: f64 = -1e-10;
/// Entrywise tolerance on `Σ m_z = 1`.
pub const COMPLETENESS_TOLERANCE: f64 = 1e-10;

fn squared_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Unit vector whose squared components are outcome probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct JspsVector {
    components: Vec<f64>,
}

impl JspsVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty);
        }
        let norm = squared_norm(&components);
        if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
            return Err(Error::NotUnitNorm(norm));
        }
        Ok(Self { components })
    }

    /// Rescales any non-zero vector onto the unit sphere.
    pub fn normalized(mut components: Vec<f64>) -> Result<Self> {
        let norm = squared_norm(&components).sqrt();
        if components.is_empty() || !norm.is_finite() || norm <= 0.0 {
            return Err(Error::NotUnitNorm(norm * norm));
        }
        components.iter_mut().for_each(|x| *x /= norm);
        Self::new(components)
    }

    /// Canonical embedding `Ψ_i = +√p_i`.
    pub fn from_distribution(dist: &ExactDistribution) -> Self {
        Self {
            components: dist
                .probs()
                .iter()
                .map(|p| rational_to_f64(p).sqrt())
                .collect(),
        }
    }

    /// The `D`-dimensional uniform vector `(1/√D, ...)` with each block of
    /// `N_i` axes collapsed onto its diagonal, leaving `Ψ_i = √(N_i / D)`.
    pub fn collapse(gs: &GenericSpace) -> Self {
        let d = big_to_f64(gs.dimension());
        let components = gs
            .counts()
            .iter()
            .map(|n| {
                // the block's diagonal picks up N_i components of 1/√D each,
                // projecting to length N_i / √(N_i D)
                let n = big_to_f64(n);
                (n / d).sqrt()
            })
            .collect();
        Self { components }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Angles `α_i` to each axis, `cos α_i = Ψ_i`.
    pub fn angles(&self) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| c.clamp(-1.0, 1.0).acos())
            .collect()
    }

    /// Squared components, i.e. the distribution this vector selects.
    pub fn probabilities(&self) -> Vec<f64> {
        self.components.iter().map(|c| c * c).collect()
    }

    /// Pure-state density matrix `ΨΨ^T`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: Matrix::outer(&self.components, &self.components),
        }
    }
}

/// `(a^T Ψ)²`: the probability of observing outcome `a` in state `Ψ`.
///
/// Signs are irrelevant, so either vector may carry negative components.
pub fn born_probability(psi: &[f64], outcome: &[f64]) -> Result<f64> {
    if psi.len() != outcome.len() {
        return Err(Error::DimensionMismatch {
            left: psi.len(),
            right: outcome.len(),
        });
    }
    for v in [psi, outcome] {
        let norm = squared_norm(v);
        if (norm - 1.0).abs() > INPUT_NORM_TOLERANCE {
            return Err(Error::NotUnitNorm(norm));
        }
    }
    let overlap = dot(psi, outcome);
    Ok((overlap * overlap).min(1.0))
}

/// Checks performed by [`validate_density`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub dim: usize,
    pub symmetry_defect: f64,
    /// `|trace - 1|`
    pub trace_defect: f64,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub is_psd: bool,
}

impl DensityReport {
    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect <= SYMMETRY_TOLERANCE
    }

    pub fn has_unit_trace(&self) -> bool {
        self.trace_defect <= TRACE_TOLERANCE
    }

    pub fn is_valid(&self) -> bool {
        self.is_symmetric() && self.has_unit_trace() && self.is_psd
    }

    fn problems(&self) -> String {
        let mut out = Vec::new();
        if !self.is_symmetric() {
            out.push(format!("symmetry defect {:e}", self.symmetry_defect));
        }
        if !self.has_unit_trace() {
            out.push(format!("trace = {}", 1.0 + self.trace_defect));
        }
        if !self.is_psd {
            let min = self.eigenvalues.last().copied().unwrap_or(0.0);
            out.push(format!("eigenvalue {min} < 0"));
        }
        out.join(", ")
    }
}

/// Reports symmetry, trace and eigenvalues of a candidate density matrix.
pub fn validate_density(rows: &[Vec<f64>]) -> Result<DensityReport> {
    let matrix = Matrix::from_rows(rows)?;
    density_report(&matrix)
}

fn density_report(matrix: &Matrix) -> Result<DensityReport> {
    let eigen = symmetric_eigen(matrix)?;
    let min = eigen.values.last().copied().unwrap_or(0.0);
    Ok(DensityReport {
        dim: matrix.dim(),
        symmetry_defect: matrix.symmetry_defect(),
        trace_defect: (matrix.trace() - 1.0).abs(),
        is_psd: min >= PSD_TOLERANCE,
        eigenvalues: eigen.values,
    })
}

/// Real symmetric positive semidefinite matrix with unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix,
}

impl DensityMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let report = density_report(&matrix)?;
        if !report.is_valid() {
            return Err(Error::InvalidDensity(report.problems()));
        }
        Ok(Self { matrix })
    }

    /// `diag(p_1, ..., p_N)`.
    pub fn diagonal(dist: &ExactDistribution) -> Self {
        Self {
            matrix: Matrix::diagonal(&dist.probs_f64()),
        }
    }

    /// `(1/N) I`.
    pub fn maximally_mixed(dim: usize) -> Self {
        assert!(dim > 0);
        Self {
            matrix: Matrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `Q ρ Q^T` for an orthogonal `Q`.
    pub fn conjugated(&self, q: &Matrix) -> Result<Self> {
        Self::new(q.mul(&self.matrix).mul(&q.transpose()))
    }
}

/// Positive semidefinite operators `m_z` with `Σ m_z = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSet {
    operators: Vec<Matrix>,
}

impl MeasurementSet {
    pub fn new(operators: Vec<Matrix>) -> Result<Self> {
        let dim = operators
            .first()
            .map(Matrix::dim)
            .ok_or_else(|| Error::InvalidMeasurement("no operators".into()))?;
        let mut total = Matrix::zeros(dim);
        for (z, m) in operators.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: m.dim(),
                });
            }
            if m.symmetry_defect() > COMPLETENESS_TOLERANCE {
                return Err(Error::InvalidMeasurement(format!(
                    "operator {z} is not symmetric"
                )));
            }
            let min = symmetric_eigen(m)?.values.last().copied().unwrap_or(0.0);
            if min < PSD_TOLERANCE {
                return Err(Error::InvalidMeasurement(format!(
                    "operator {z} has eigenvalue {min} < 0"
                )));
            }
            total = total.add(m);
        }
        let defect = total.max_abs_diff(&Matrix::identity(dim));
        if defect > COMPLETENESS_TOLERANCE {
            return Err(Error::InvalidMeasurement(format!(
                "operators sum to identity only within {defect:e}"
            )));
        }
        Ok(Self { operators })
    }

    /// von Neumann measurement `m_a = a a^T` for an orthonormal basis `{a}`.
    pub fn von_neumann(basis: &[Vec<f64>]) -> Result<Self> {
        let dim = basis.len();
        let mut ops = Vec::with_capacity(dim);
        for a in basis {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: a.len(),
                });
            }
            ops.push(Matrix::outer(a, a));
        }
        Self::new(ops)
    }

    /// Projectors onto the coordinate axes.
    pub fn standard(dim: usize) -> Self {
        let ops = (0..dim)
            .map(|i| {
                let mut m = Matrix::zeros(dim);
                m[(i, i)] = 1.0;
                m
            })
            .collect();
        Self { operators: ops }
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }
}

/// Outcome probabilities `trace(ρ m_z)`, one per operator.
pub fn measure(rho: &DensityMatrix, m: &MeasurementSet) -> Result<Vec<f64>> {
    if rho.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: m.dim(),
        });
    }
    Ok(m.operators
        .iter()
        .map(|op| rho.matrix.trace_product(op))
        .collect())
}

/// Draws `n` outcomes with `P(i) = Ψ_i²` and returns how often each occurred.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`; each
/// draw takes one uniform `f64` in `[0, 1)` and inverts the cumulative sum of
/// squared components. Counts are reproducible for a given seed.
pub fn sample(psi: &JspsVector, seed: u64, n: u64) -> Vec<u64> {
    let weights = psi.probabilities();
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().expect("non-empty vector");
    let last_positive = weights.iter().rposition(|&w| w > 0.0).unwrap_or(0);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; weights.len()];
    for _ in 0..n {
        let u = rng.random::<f64>() * total;
        let i = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(last_positive);
        counts[i] += 1;
    }
    counts
}
