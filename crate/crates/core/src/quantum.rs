//! Complex linear-algebra substrate: pure and mixed states, observables as
//! eigenbases, Haar-random unitaries and the qubit Bloch parametrization.
//!
//! Observables carry only their eigenbasis. Every uncertainty measure used in
//! this crate depends on outcome probabilities, never on eigenvalues.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{validation, Result};
use crate::tolerances::STRUCTURAL;

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn ensure_finite(m: &ComplexMatrix, what: &str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(validation(format!("{what} has non-finite entries")))
    }
}

/// Largest entry of |M^dagger M - I|.
pub fn unitarity_defect(m: &ComplexMatrix) -> f64 {
    let gram = m.adjoint() * m;
    let n = gram.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - c(target, 0.0)).norm());
        }
    }
    worst
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: DVector<C64>,
}

impl PureState {
    /// Accepts amplitudes whose squared norm is 1 within 1e-10.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let amps = DVector::from_vec(amps);
        if amps.is_empty() {
            return Err(validation("pure state must have at least one amplitude"));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(validation("pure state has non-finite amplitudes"));
        }
        let norm_sq = amps.norm_squared();
        if (norm_sq - 1.0).abs() > STRUCTURAL {
            return Err(validation(format!(
                "pure state squared norm {norm_sq} differs from 1"
            )));
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let v = DVector::from_vec(amps);
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(validation("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self {
            amps: v.unscale(norm),
        })
    }

    /// Computational basis state |index>.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(validation(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![c(0.0, 0.0); dim];
        amps[index] = c(1.0, 0.0);
        Ok(Self {
            amps: DVector::from_vec(amps),
        })
    }

    pub(crate) fn from_vector_unchecked(amps: DVector<C64>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amps.dotc(&other.amps)
    }

    /// |<self|other>|, invariant under global phases.
    pub fn fidelity_amplitude(&self, other: &PureState) -> f64 {
        self.inner(other).norm()
    }
}

/// A d x d Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(validation("density matrix must be square and non-empty"));
        }
        ensure_finite(&m, "density matrix")?;
        let herm = (&m - m.adjoint())
            .iter()
            .fold(0.0_f64, |acc, z| acc.max(z.norm()));
        if herm > STRUCTURAL {
            return Err(validation(format!(
                "density matrix not Hermitian (defect {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STRUCTURAL || tr.im.abs() > STRUCTURAL {
            return Err(validation(format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        let rho = Self { m };
        let min_eig = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -STRUCTURAL {
            return Err(validation(format!(
                "density matrix has negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(rho)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(validation("dimension must be positive"));
        }
        Ok(Self {
            m: ComplexMatrix::identity(dim, dim).unscale(dim as f64),
        })
    }

    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        // Symmetrize so round-off in the anti-Hermitian part cannot leak in.
        let h = (&self.m + self.m.adjoint()).unscale(2.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Eigen-decomposition as (eigenvalue, eigenvector) pairs.
    pub fn eigenstates(&self) -> Vec<(f64, PureState)> {
        let h = (&self.m + self.m.adjoint()).unscale(2.0);
        let eig = SymmetricEigen::new(h);
        (0..self.dim())
            .map(|k| {
                let v = eig.eigenvectors.column(k).into_owned();
                let norm = v.norm();
                (
                    eig.eigenvalues[k],
                    PureState::from_vector_unchecked(v.unscale(norm)),
                )
            })
            .collect()
    }

    /// <v|rho|v>, real part.
    pub fn expectation(&self, v: &DVector<C64>) -> f64 {
        v.dotc(&(&self.m * v)).re
    }
}

/// |psi><psi|.
pub fn pure_to_density(psi: &PureState) -> Result<DensityMatrix> {
    let norm_sq = psi.amps.norm_squared();
    if (norm_sq - 1.0).abs() > STRUCTURAL {
        return Err(validation(format!(
            "pure state squared norm {norm_sq} differs from 1"
        )));
    }
    Ok(DensityMatrix::from_matrix_unchecked(
        &psi.amps * psi.amps.adjoint(),
    ))
}

/// An observable, represented by its orthonormal eigenbasis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    basis: ComplexMatrix,
}

impl Observable {
    pub fn new(basis: ComplexMatrix) -> Result<Self> {
        if !basis.is_square() || basis.nrows() == 0 {
            return Err(validation("eigenbasis matrix must be square and non-empty"));
        }
        ensure_finite(&basis, "eigenbasis")?;
        let defect = unitarity_defect(&basis);
        if defect > STRUCTURAL {
            return Err(validation(format!(
                "eigenbasis columns are not orthonormal (defect {defect:e})"
            )));
        }
        Ok(Self { basis })
    }

    /// The computational basis.
    pub fn standard(dim: usize) -> Self {
        Self {
            basis: ComplexMatrix::identity(dim, dim),
        }
    }

    /// Qubit observable n . sigma for a unit axis n; column 0 is the +1 eigenvector.
    pub fn qubit_axis(axis: [f64; 3]) -> Result<Self> {
        let len = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (len - 1.0).abs() > STRUCTURAL {
            return Err(validation(format!(
                "qubit axis must be a unit vector (|n| = {len})"
            )));
        }
        let theta = axis[2].clamp(-1.0, 1.0).acos();
        let phi = axis[1].atan2(axis[0]);
        let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let e = C64::from_polar(1.0, phi);
        let plus = [c(ch, 0.0), e * sh];
        let minus = [c(-sh, 0.0), e * ch];
        Self::new(ComplexMatrix::from_column_slice(
            2,
            2,
            &[plus[0], plus[1], minus[0], minus[1]],
        ))
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn eigenvector(&self, index: usize) -> PureState {
        PureState::from_vector_unchecked(self.basis.column(index).into_owned())
    }
}

/// Two observables on the same space and their overlap matrix V_ij = <a_i|b_j>.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservablePair {
    a: Observable,
    b: Observable,
    overlap: ComplexMatrix,
}

impl ObservablePair {
    pub fn new(a: Observable, b: Observable) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(validation(format!(
                "observables act on different dimensions ({} vs {})",
                a.dim(),
                b.dim()
            )));
        }
        let overlap = a.basis.adjoint() * &b.basis;
        let defect = unitarity_defect(&overlap);
        if defect > STRUCTURAL {
            return Err(validation(format!(
                "overlap matrix not unitary (defect {defect:e})"
            )));
        }
        Ok(Self { a, b, overlap })
    }

    /// A is the computational basis and B has the columns of `u` as eigenvectors.
    pub fn from_unitary(u: ComplexMatrix) -> Result<Self> {
        let dim = u.nrows();
        Self::new(Observable::standard(dim), Observable::new(u)?)
    }

    pub fn a(&self) -> &Observable {
        &self.a
    }

    pub fn b(&self) -> &Observable {
        &self.b
    }

    pub fn overlap(&self) -> &ComplexMatrix {
        &self.overlap
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Real 3-vector with |r| <= 1 describing a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    r: [f64; 3],
}

impl BlochVector {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        if r.iter().any(|x| !x.is_finite()) {
            return Err(validation("Bloch vector has non-finite components"));
        }
        let len = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1.0 + 1e-12 {
            return Err(validation(format!("Bloch vector length {len} exceeds 1")));
        }
        Ok(Self { r })
    }

    pub fn components(&self) -> [f64; 3] {
        self.r
    }

    pub fn length(&self) -> f64 {
        self.r.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Bloch vector of a qubit density matrix, r_k = tr(rho sigma_k).
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(validation("Bloch vectors exist only for qubits"));
        }
        let m = rho.matrix();
        Self::new([
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ])
    }
}

/// (I + r . sigma) / 2.
pub fn bloch_to_density(r: &BlochVector) -> DensityMatrix {
    let [x, y, z] = r.r;
    let m = ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            c((1.0 + z) / 2.0, 0.0),
            c(x / 2.0, -y / 2.0),
            c(x / 2.0, y / 2.0),
            c((1.0 - z) / 2.0, 0.0),
        ],
    );
    DensityMatrix::from_matrix_unchecked(m)
}

/// Qubit pair with A along (0,0,1) and B along (sin g, 0, cos g).
///
/// Accepts 0 < gamma <= pi/2; gamma = pi/2 is the mutually unbiased pair.
pub fn qubit_pair(gamma: f64) -> Result<ObservablePair> {
    if !(gamma > 0.0 && gamma <= std::f64::consts::FRAC_PI_2 + 1e-15) {
        return Err(validation(format!(
            "qubit angle gamma = {gamma} outside (0, pi/2]"
        )));
    }
    ObservablePair::new(
        Observable::qubit_axis([0.0, 0.0, 1.0])?,
        Observable::qubit_axis([gamma.sin(), 0.0, gamma.cos()])?,
    )
}

/// Haar-distributed d x d unitary from a seeded ChaCha stream.
pub fn haar_unitary(dim: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary_with(dim, &mut rng)
}

/// Ginibre matrix, QR, then column phases fixed so diag(R) is positive.
pub fn haar_unitary_with<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if dim < 2 {
        return Err(validation(format!(
            "Haar unitary needs dimension >= 2 (got {dim})"
        )));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = ComplexMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re * scale, im * scale)
    });
    let qr = ginibre.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            c(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Real rotation about (1,1,1)/sqrt(3) by `angle` (Rodrigues), as a qutrit unitary.
pub fn rotation_matrix_111(angle: f64) -> DMatrix<f64> {
    let n = 1.0 / 3.0_f64.sqrt();
    let (s, co) = angle.sin_cos();
    let k = DMatrix::from_row_slice(3, 3, &[0.0, -n, n, n, 0.0, -n, -n, n, 0.0]);
    let nn = DMatrix::from_element(3, 3, n * n);
    DMatrix::identity(3, 3) * co + k * s + nn * (1.0 - co)
}

/// A = computational basis, B = R(angle) applied to it, R about the (1,1,1) axis.
pub fn rotation_pair_qutrit(angle: f64) -> Result<ObservablePair> {
    let r = rotation_matrix_111(angle);
    ObservablePair::from_unitary(r.map(|x| c(x, 0.0)))
}
