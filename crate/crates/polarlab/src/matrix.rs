//! Dense complex matrices and the spectral (largest-singular-value) norm.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default relative tolerance for the power iteration.
pub const SPECTRAL_TOL: f64 = 1e-10;
/// Default iteration cap for the power iteration.
pub const SPECTRAL_MAX_ITER: usize = 10_000;

// Fixed seed for the power-iteration start vector; the iteration is a pure
// function of the input matrix.
const START_SEED: u64 = 0x5EED_0001;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * alpha).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// y = M x
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(y.len(), self.rows);
        for (r, yr) in y.iter_mut().enumerate() {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x.iter()) {
                acc += a * b;
            }
            *yr = acc;
        }
    }

    /// y = M* x (conjugate transpose applied to x)
    pub fn adjoint_matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.rows);
        debug_assert_eq!(y.len(), self.cols);
        for v in y.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        for (r, xr) in x.iter().enumerate() {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let s = xr.conj();
            for (yc, a) in y.iter_mut().zip(row.iter()) {
                // (M* x)_c = sum_r conj(M_{r,c}) x_r; accumulate conjugated at the end.
                *yc += a * s;
            }
        }
        for v in y.iter_mut() {
            *v = v.conj();
        }
    }
}

/// Result of a converged power iteration: `value = |M witness|_2` for the unit
/// witness vector, a certified lower bound on the spectral norm.
#[derive(Debug, Clone)]
pub struct SpectralEstimate {
    pub value: f64,
    pub witness: Vec<Complex64>,
    pub iterations: usize,
}

fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value of `M` within relative tolerance `tol`, by power
/// iteration on M*M from a fixed seeded random start.
///
/// Non-convergence after `max_iter` steps is an explicit error, never a
/// silently wrong value.
pub fn spectral_norm(m: &ComplexMatrix, tol: f64, max_iter: usize) -> Result<SpectralEstimate> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    if m.rows == 0 || m.cols == 0 || m.max_abs() == 0.0 {
        let mut witness = vec![Complex64::new(0.0, 0.0); m.cols.max(1)];
        witness[0] = Complex64::new(1.0, 0.0);
        witness.truncate(m.cols);
        return Ok(SpectralEstimate {
            value: 0.0,
            witness,
            iterations: 0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut v: Vec<Complex64> = (0..m.cols)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let nv = norm2(&v);
    for z in v.iter_mut() {
        *z /= nv;
    }

    let mut mv = vec![Complex64::new(0.0, 0.0); m.rows];
    let mut back = vec![Complex64::new(0.0, 0.0); m.cols];
    let mut sigma_prev = -1.0f64;
    for it in 1..=max_iter {
        m.matvec(&v, &mut mv);
        let sigma = norm2(&mv);
        if sigma == 0.0 {
            // Start vector landed in the kernel of a nonzero matrix; perturb.
            for z in v.iter_mut() {
                *z += Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let nv = norm2(&v);
            for z in v.iter_mut() {
                *z /= nv;
            }
            continue;
        }
        if (sigma - sigma_prev).abs() <= tol * sigma {
            return Ok(SpectralEstimate {
                value: sigma,
                witness: v,
                iterations: it,
            });
        }
        sigma_prev = sigma;
        m.adjoint_matvec(&mv, &mut back);
        let nb = norm2(&back);
        if nb == 0.0 {
            return Ok(SpectralEstimate {
                value: sigma,
                witness: v,
                iterations: it,
            });
        }
        for (vz, bz) in v.iter_mut().zip(back.iter()) {
            *vz = bz / nb;
        }
    }
    Err(Error::NonConvergence { max_iter, tol })
}

/// `spectral_norm` with the crate defaults.
pub fn spectral_norm_default(m: &ComplexMatrix) -> Result<SpectralEstimate> {
    spectral_norm(m, SPECTRAL_TOL, SPECTRAL_MAX_ITER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Complex, DMatrix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent oracle: full SVD via nalgebra.
    fn svd_oracle(m: &ComplexMatrix) -> f64 {
        if m.rows() == 0 || m.cols() == 0 {
            return 0.0;
        }
        let a = DMatrix::from_fn(m.rows(), m.cols(), |r, cc| {
            let z = m.get(r, cc);
            Complex::new(z.re, z.im)
        });
        a.svd(false, false)
            .singular_values
            .iter()
            .fold(0.0f64, |acc, s| acc.max(*s))
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = ComplexMatrix::zeros(rows, cols);
        for r in 0..rows {
            for col in 0..cols {
                m.set(r, col, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        m
    }

    #[test]
    fn identity_norm_is_one() {
        let est = spectral_norm_default(&ComplexMatrix::identity(5)).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn antidiagonal_pair_block() {
        // (1/(i-j)) e_i (x) e_j + (1/(j-i)) e_j (x) e_i restricted to {i, j} is a
        // 2x2 anti-diagonal block with both singular values 1/|i-j|.
        for (i, j) in [(1usize, 3usize), (2, 7), (4, 5)] {
            let d = (i as f64) - (j as f64);
            let mut m = ComplexMatrix::zeros(8, 8);
            m.set(i, j, c(1.0 / d, 0.0));
            m.set(j, i, c(-1.0 / d, 0.0));
            let est = spectral_norm_default(&m).unwrap();
            let expect = 1.0 / d.abs();
            assert!((est.value - expect).abs() < 1e-10);
            assert!((est.value - svd_oracle(&m)).abs() < 1e-8);
        }
    }

    #[test]
    fn rank_one_scaled() {
        // M = 3 u v* with unit u, v has norm 3.
        let u = [c(0.6, 0.0), c(0.0, 0.8)];
        let v = [c(1.0 / 2f64.sqrt(), 0.0), c(0.0, -1.0 / 2f64.sqrt())];
        let mut m = ComplexMatrix::zeros(2, 2);
        for r in 0..2 {
            for col in 0..2 {
                m.set(r, col, c(3.0, 0.0) * u[r] * v[col].conj());
            }
        }
        let est = spectral_norm_default(&m).unwrap();
        assert!((est.value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn matches_svd_oracle_up_to_6x6() {
        let mut cases: Vec<ComplexMatrix> = vec![
            ComplexMatrix::identity(6),
            ComplexMatrix::zeros(4, 4),
            random_matrix(3, 5, 1),
            random_matrix(5, 3, 2),
            random_matrix(6, 6, 3),
            random_matrix(6, 6, 4),
            random_matrix(2, 2, 5),
            random_matrix(1, 6, 6),
        ];
        // Hilbert-type antisymmetric kernel.
        let mut h = ComplexMatrix::zeros(6, 6);
        for a in 0..6 {
            for b in 0..6 {
                if a != b {
                    h.set(a, b, c(1.0 / (a as f64 - b as f64), 0.0));
                }
            }
        }
        cases.push(h);
        for m in &cases {
            let est = spectral_norm_default(m).unwrap();
            let oracle = svd_oracle(m);
            assert!(
                (est.value - oracle).abs() < 1e-8,
                "power {} vs svd {}",
                est.value,
                oracle
            );
        }
    }

    #[test]
    fn witness_certifies_value() {
        let m = random_matrix(6, 6, 9);
        let est = spectral_norm_default(&m).unwrap();
        assert!((norm2(&est.witness) - 1.0).abs() < 1e-12);
        let mut mv = vec![c(0.0, 0.0); 6];
        m.matvec(&est.witness, &mut mv);
        assert!((norm2(&mv) - est.value).abs() <= crate::TAU_EVAL * (1.0 + est.value));
    }

    #[test]
    fn adjoint_and_scaling_invariances() {
        for seed in 0..5u64 {
            let m = random_matrix(5, 4, 100 + seed);
            let a = spectral_norm_default(&m).unwrap().value;
            let b = spectral_norm_default(&m.adjoint()).unwrap().value;
            assert!((a - b).abs() <= 1e-9 * (1.0 + a));
            let alpha = c(-2.5, 1.5);
            let s = spectral_norm_default(&m.scale(alpha)).unwrap().value;
            assert!((s - alpha.norm() * a).abs() <= 1e-8 * (1.0 + s));
        }
    }

    #[test]
    fn non_convergence_is_explicit() {
        let m = random_matrix(6, 6, 11);
        match spectral_norm(&m, 1e-12, 1) {
            Err(Error::NonConvergence { max_iter: 1, .. }) => {}
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 0, c(f64::NAN, 0.0));
        assert!(spectral_norm_default(&m).is_err());
    }
}
