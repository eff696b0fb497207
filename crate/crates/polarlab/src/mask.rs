//! Schur-product mask algebra on `C^{I(m,n)}`.
//!
//! Masks are lazy entry functions, never materialized densely: the
//! equal-slots indicator D, the ordered-slots indicator T, and the shuffle
//! recursion weight R_k, plus the combinators needed to state the
//! factorization `R_k = (m-k+1) T^{k,k+1} * (1 + sum_u D^{k,k+u} (1/(u+1) - 1/u))`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::tensor::CoeffTensor;

type EntryFn = Arc<dyn Fn(&MultiIndex) -> Complex64 + Send + Sync>;

/// A coefficient mask: a pure function `I(m, n) -> C`.
#[derive(Clone)]
pub struct Mask {
    m: usize,
    n: usize,
    label: String,
    entry: EntryFn,
}

impl std::fmt::Debug for Mask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mask")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("label", &self.label)
            .finish()
    }
}

fn check_slot(slot: usize, m: usize) -> Result<()> {
    if slot < 1 || slot > m {
        return Err(Error::SlotOutOfRange { slot, m });
    }
    Ok(())
}

/// The recursion weight at index i:
/// `(m-k+1) (1 + sum_{u=1}^{m-k} delta_{i_k, i_{k+u}} (1/(u+1) - 1/u))` when
/// `i_k <= i_{k+1}`, and 0 otherwise.
pub(crate) fn recursion_weight_value(m: usize, k: usize, i: &MultiIndex) -> f64 {
    if i.entry(k) > i.entry(k + 1) {
        return 0.0;
    }
    let mut acc = 1.0f64;
    for u in 1..=(m - k) {
        if i.entry(k) == i.entry(k + u) {
            acc += 1.0 / (u + 1) as f64 - 1.0 / u as f64;
        }
    }
    (m - k + 1) as f64 * acc
}

impl Mask {
    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entry(&self, i: &MultiIndex) -> Complex64 {
        (self.entry)(i)
    }

    /// The all-ones mask (the Schur unit).
    pub fn ones(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            label: "1".into(),
            entry: Arc::new(|_| Complex64::new(1.0, 0.0)),
        }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            label: "0".into(),
            entry: Arc::new(|_| Complex64::new(0.0, 0.0)),
        }
    }

    /// D^{u,v}: entry 1 iff i_u = i_v.
    pub fn diagonal(m: usize, n: usize, u: usize, v: usize) -> Result<Self> {
        check_slot(u, m)?;
        check_slot(v, m)?;
        Ok(Self {
            m,
            n,
            label: format!("D^{{{u},{v}}}"),
            entry: Arc::new(move |i| {
                if i.entry(u) == i.entry(v) {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        })
    }

    /// T^{u,v}: entry 1 iff i_u <= i_v.
    pub fn triangle(m: usize, n: usize, u: usize, v: usize) -> Result<Self> {
        check_slot(u, m)?;
        check_slot(v, m)?;
        Ok(Self {
            m,
            n,
            label: format!("T^{{{u},{v}}}"),
            entry: Arc::new(move |i| {
                if i.entry(u) <= i.entry(v) {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        })
    }

    /// R_k, by the direct closed form.
    pub fn recursion_weight(m: usize, n: usize, k: usize) -> Result<Self> {
        if m < 2 || k < 1 || k > m - 1 {
            return Err(Error::StepOutOfRange {
                k,
                lo: 1,
                hi: m.saturating_sub(1),
            });
        }
        Ok(Self {
            m,
            n,
            label: format!("R_{k}"),
            entry: Arc::new(move |i| Complex64::new(recursion_weight_value(m, k, i), 0.0)),
        })
    }

    /// R_k assembled from the factored form
    /// `(m-k+1) T^{k,k+1} * (1 + sum_u D^{k,k+u} (1/(u+1) - 1/u))`.
    pub fn recursion_weight_factored(m: usize, n: usize, k: usize) -> Result<Self> {
        if m < 2 || k < 1 || k > m - 1 {
            return Err(Error::StepOutOfRange {
                k,
                lo: 1,
                hi: m.saturating_sub(1),
            });
        }
        let mut weighted = Self::ones(m, n);
        for u in 1..=(m - k) {
            let w = 1.0 / (u + 1) as f64 - 1.0 / u as f64;
            weighted = weighted.add(&Self::diagonal(m, n, k, k + u)?.scale(Complex64::new(w, 0.0)))?;
        }
        let t = Self::triangle(m, n, k, k + 1)?;
        let mut out = t
            .schur_mask(&weighted)?
            .scale(Complex64::new((m - k + 1) as f64, 0.0));
        out.label = format!("(m-k+1) T^{{{k},{}}} * (1 + sum_u D^{{{k},k+u}} w_u)", k + 1);
        Ok(out)
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let f = self.entry.clone();
        Self {
            m: self.m,
            n: self.n,
            label: format!("{alpha} * {}", self.label),
            entry: Arc::new(move |i| alpha * f(i)),
        }
    }

    pub fn add(&self, other: &Mask) -> Result<Self> {
        self.check_shape(other.m, other.n)?;
        let f = self.entry.clone();
        let g = other.entry.clone();
        Ok(Self {
            m: self.m,
            n: self.n,
            label: format!("({} + {})", self.label, other.label),
            entry: Arc::new(move |i| f(i) + g(i)),
        })
    }

    /// Entrywise product of two masks.
    pub fn schur_mask(&self, other: &Mask) -> Result<Self> {
        self.check_shape(other.m, other.n)?;
        let f = self.entry.clone();
        let g = other.entry.clone();
        Ok(Self {
            m: self.m,
            n: self.n,
            label: format!("({} * {})", self.label, other.label),
            entry: Arc::new(move |i| f(i) * g(i)),
        })
    }

    /// Largest entrywise deviation from another mask over all of I(m, n).
    pub fn max_abs_diff(&self, other: &Mask) -> Result<f64> {
        self.check_shape(other.m, other.n)?;
        let mut worst = 0.0f64;
        for i in crate::index::index_set(self.m, self.n) {
            worst = worst.max((self.entry(&i) - other.entry(&i)).norm());
        }
        Ok(worst)
    }

    fn check_shape(&self, m: usize, n: usize) -> Result<()> {
        if self.m != m || self.n != n {
            return Err(Error::ShapeMismatch {
                m_left: self.m,
                n_left: self.n,
                m_right: m,
                n_right: n,
            });
        }
        Ok(())
    }
}

/// Schur product of a mask with an m-linear form: `c_i(A*L) = c_i(A) c_i(L)`.
pub fn schur(mask: &Mask, l: &CoeffTensor) -> Result<CoeffTensor> {
    mask.check_shape(l.arity(), l.dim())?;
    let mut out = CoeffTensor::zero(l.arity(), l.dim());
    for (i, c) in l.iter() {
        let v = mask.entry(i) * c;
        if v != Complex64::new(0.0, 0.0) {
            out.set(i.clone(), v)?;
        }
    }
    Ok(out)
}
