//! Sparse coefficient tensors for m-linear forms and m-homogeneous polynomials.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{nondecreasing_indices, MultiIndex};

/// Sparse complex coefficient map over `I(m, n)`; an m-linear form
/// `L(x1, .., xm) = sum_i c_i x1_{i_1} ... xm_{i_m}`.
///
/// Absent keys are zero. Iteration over coefficients is in canonical
/// (lexicographic) index order, so reductions are deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffTensor {
    m: usize,
    n: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl CoeffTensor {
    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(index)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Sets a coefficient after validating the key against (m, n). Exact zeros
    /// are not stored.
    pub fn set(&mut self, index: MultiIndex, value: Complex64) -> Result<()> {
        if index.arity() != self.m {
            return Err(Error::ArityMismatch {
                expected: self.m,
                got: index.arity(),
            });
        }
        if index.max_entry() > self.n {
            return Err(Error::IndexOutOfRange {
                entry: index.max_entry(),
                n: self.n,
            });
        }
        if value == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, value);
        }
        Ok(())
    }

    pub(crate) fn add_assign(&mut self, index: MultiIndex, value: Complex64) {
        let entry = self
            .coeffs
            .entry(index)
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(i, c)| (i.clone(), c * factor))
            .collect();
        Self {
            m: self.m,
            n: self.n,
            coeffs,
        }
    }

    /// Entrywise (Schur) product with another tensor of the same shape.
    pub fn schur(&self, other: &CoeffTensor) -> Result<CoeffTensor> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::ShapeMismatch {
                m_left: self.m,
                n_left: self.n,
                m_right: other.m,
                n_right: other.n,
            });
        }
        let mut out = CoeffTensor::zero(self.m, self.n);
        for (i, c) in &self.coeffs {
            let p = c * other.coeff(i);
            if p != Complex64::new(0.0, 0.0) {
                out.coeffs.insert(i.clone(), p);
            }
        }
        Ok(out)
    }

    /// Evaluates the m-linear form on one vector per slot.
    pub fn eval(&self, xs: &[Vec<Complex64>]) -> Result<Complex64> {
        if xs.len() != self.m {
            return Err(Error::ArityMismatch {
                expected: self.m,
                got: xs.len(),
            });
        }
        for x in xs {
            if x.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: x.len(),
                });
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in &self.coeffs {
            let mut term = *c;
            for (slot, &e) in i.entries().iter().enumerate() {
                term *= xs[slot][e - 1];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// The polynomial `x -> L(x, .., x)`, with coefficients accumulated onto
    /// nondecreasing keys.
    pub fn diagonal_restriction(&self) -> HomPolynomial {
        let mut out = HomPolynomial::zero(self.m, self.n);
        for (i, c) in &self.coeffs {
            let key = i.sorted();
            let entry = out
                .coeffs
                .entry(key)
                .or_insert(Complex64::new(0.0, 0.0));
            *entry += c;
        }
        out.prune();
        out
    }

    /// True when the tensor is invariant under every slot permutation
    /// (checked on the adjacent transpositions, which generate them all).
    pub fn is_symmetric(&self) -> bool {
        let tol = crate::TAU_EXACT;
        self.coeffs.iter().all(|(i, c)| {
            (0..self.m.saturating_sub(1)).all(|t| {
                let mut entries = i.entries().to_vec();
                entries.swap(t, t + 1);
                let swapped = self.coeff(&MultiIndex::from_raw(entries));
                (c - swapped).norm() <= tol * (1.0 + c.norm())
            })
        })
    }

    /// Entrywise comparison within an absolute tolerance, over the union of supports.
    pub fn approx_eq(&self, other: &CoeffTensor, tol: f64) -> bool {
        self.max_abs_diff(other).map_or(false, |d| d <= tol)
    }

    /// Largest entrywise deviation, or None on shape mismatch.
    pub fn max_abs_diff(&self, other: &CoeffTensor) -> Option<f64> {
        if self.m != other.m || self.n != other.n {
            return None;
        }
        let mut worst = 0.0f64;
        for (i, c) in &self.coeffs {
            worst = worst.max((c - other.coeff(i)).norm());
        }
        for (i, c) in &other.coeffs {
            worst = worst.max((c - self.coeff(i)).norm());
        }
        Some(worst)
    }
}

/// An m-homogeneous polynomial on C^n: sparse coefficients over nondecreasing
/// multi-indices, `P(x) = sum_{j1 <= .. <= jm} c_j x_{j_1} ... x_{j_m}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomPolynomial {
    m: usize,
    n: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl HomPolynomial {
    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// The product monomial `x_1 x_2 ... x_m` on C^m (the Lagrange-witness family).
    pub fn product(m: usize) -> Self {
        let mut p = Self::zero(m, m.max(1));
        if m > 0 {
            let idx = MultiIndex::from_raw((1..=m).collect());
            p.coeffs.insert(idx, Complex64::new(1.0, 0.0));
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(index)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn set(&mut self, index: MultiIndex, value: Complex64) -> Result<()> {
        if index.arity() != self.m {
            return Err(Error::ArityMismatch {
                expected: self.m,
                got: index.arity(),
            });
        }
        if index.max_entry() > self.n {
            return Err(Error::IndexOutOfRange {
                entry: index.max_entry(),
                n: self.n,
            });
        }
        if !index.is_nondecreasing() {
            return Err(Error::NotNondecreasing(index.entries().to_vec()));
        }
        if value == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, value);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(i, c)| (i.clone(), c * factor))
            .collect();
        Self {
            m: self.m,
            n: self.n,
            coeffs,
        }
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
    }

    /// Evaluates the polynomial at a point of C^n.
    pub fn eval(&self, x: &[Complex64]) -> Result<Complex64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in &self.coeffs {
            let mut term = *c;
            for &e in i.entries() {
                term *= x[e - 1];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Holomorphic partial derivatives (dP/dx_1, .., dP/dx_n) at a point.
    pub(crate) fn gradient(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut grad = vec![Complex64::new(0.0, 0.0); self.n];
        for (i, c) in &self.coeffs {
            let entries = i.entries();
            for slot in 0..entries.len() {
                // Skip repeated coordinates after the first occurrence; the
                // multiplicity is handled by differentiating each factor once.
                let mut term = *c;
                for (s, &e) in entries.iter().enumerate() {
                    if s != slot {
                        term *= x[e - 1];
                    }
                }
                grad[entries[slot] - 1] += term;
            }
        }
        grad
    }

    /// The non-symmetric lift: the m-linear form with the same coefficients on
    /// nondecreasing indices and zero elsewhere. Satisfies
    /// `L_P(x, .., x) = P(x)`.
    pub fn lift(&self) -> CoeffTensor {
        CoeffTensor {
            m: self.m,
            n: self.n,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn approx_eq(&self, other: &HomPolynomial, tol: f64) -> bool {
        if self.m != other.m || self.n != other.n {
            return false;
        }
        let mut worst = 0.0f64;
        for (i, c) in &self.coeffs {
            worst = worst.max((c - other.coeff(i)).norm());
        }
        for (i, c) in &other.coeffs {
            worst = worst.max((c - self.coeff(i)).norm());
        }
        worst <= tol
    }

    /// Dense random polynomial with standard complex Gaussian coefficients on
    /// every nondecreasing index.
    pub fn random_gaussian<R: rand::Rng>(m: usize, n: usize, rng: &mut R) -> Self {
        use rand_distr::StandardNormal;
        let mut p = Self::zero(m, n);
        for idx in nondecreasing_indices(m, n) {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            p.coeffs.insert(idx, Complex64::new(re, im));
        }
        p
    }
}
