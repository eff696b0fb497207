//! Permutations of {1..m} and the partial Fisher-Yates shuffle laws.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::MultiIndex;

/// Largest arity for which permutation supports are materialized (m! blowup guard).
pub const FACTORIAL_GUARD: usize = 8;

/// A permutation of {1..m}, stored as images: `images[u-1] = sigma(u)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self {
            images: (1..=m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &v in &images {
            if v < 1 || v > m || seen[v - 1] {
                return Err(Error::InvalidArgument(format!(
                    "not a bijection of 1..={m}: {images:?}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images })
    }

    /// The cycle `(l  l-1  ...  k)`: maps l to l-1, ..., k+1 to k, and k to l.
    /// Identity when l = k.
    pub fn cycle_down(m: usize, k: usize, l: usize) -> Self {
        debug_assert!(1 <= k && k <= l && l <= m);
        let mut images: Vec<usize> = (1..=m).collect();
        if l > k {
            for u in (k + 1)..=l {
                images[u - 1] = u - 1;
            }
            images[k - 1] = l;
        }
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// sigma(u), 1-based.
    pub fn apply(&self, u: usize) -> usize {
        self.images[u - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (u, &v) in self.images.iter().enumerate() {
            images[v - 1] = u + 1;
        }
        Self { images }
    }

    /// Function composition `self . other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.len(), other.len());
        let images = (1..=self.len())
            .map(|u| self.apply(other.apply(u)))
            .collect();
        Self { images }
    }

    /// The index `(i_{sigma(1)}, ..., i_{sigma(m)})`.
    pub fn permute_index(&self, i: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), i.arity());
        MultiIndex::from_raw((1..=self.len()).map(|t| i.entry(self.apply(t))).collect())
    }
}

/// Explicit probability distribution on permutations of {1..m}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PermDistribution {
    m: usize,
    probs: BTreeMap<Permutation, f64>,
}

impl PermDistribution {
    pub fn point_mass(sigma: Permutation) -> Self {
        let m = sigma.len();
        let mut probs = BTreeMap::new();
        probs.insert(sigma, 1.0);
        Self { m, probs }
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn support_len(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, sigma: &Permutation) -> f64 {
        self.probs.get(sigma).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, f64)> {
        self.probs.iter().map(|(s, &p)| (s, p))
    }

    /// Total mass error against 1, for the normalization invariant.
    pub fn mass_defect(&self) -> f64 {
        (self.probs.values().sum::<f64>() - 1.0).abs()
    }

    pub fn validate(&self) -> Result<()> {
        if self.probs.values().any(|&p| p < 0.0) {
            return Err(Error::InvalidArgument("negative probability".into()));
        }
        if self.mass_defect() > crate::TAU_EXACT {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to 1 +- {}",
                self.mass_defect()
            )));
        }
        Ok(())
    }
}

/// All m! permutations of {1..m}, in lexicographic order on image vectors.
pub fn all_permutations(m: usize) -> Result<Vec<Permutation>> {
    if m > FACTORIAL_GUARD {
        return Err(Error::FactorialGuard {
            m,
            max: FACTORIAL_GUARD,
        });
    }
    fn rec(m: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == m {
            out.push(Permutation {
                images: prefix.clone(),
            });
            return;
        }
        for v in 1..=m {
            if !used[v - 1] {
                used[v - 1] = true;
                prefix.push(v);
                rec(m, prefix, used, out);
                prefix.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::new(), &mut vec![false; m], &mut out);
    Ok(out)
}

fn check_fy_args(m: usize, k: usize) -> Result<()> {
    if m > FACTORIAL_GUARD {
        return Err(Error::FactorialGuard {
            m,
            max: FACTORIAL_GUARD,
        });
    }
    if m < 2 || k < 1 || k > m - 1 {
        return Err(Error::StepOutOfRange {
            k,
            lo: 1,
            hi: m.saturating_sub(1),
        });
    }
    Ok(())
}

/// The law of the permutation after the first `k` steps of the Fisher-Yates
/// shuffle on a deck of `m` cards.
///
/// Step j draws tau_j uniformly over the m - j + 1 cycles `(l  l-1  ...  j)`,
/// j <= l <= m (identity when l = j). Each step re-permutes the positions of
/// the current arrangement, so the accumulated permutation after k steps is
/// `tau_1 . tau_2 . ... . tau_k` (the newest cycle composed on the right:
/// sigma_j = sigma_{j-1} . tau_j). This is the order that makes the final
/// step equidistribute and the partial shuffles satisfy `S_k = T_k .. T_1`.
/// The expectation is exact: the support is materialized, never sampled.
pub fn fy_distribution(m: usize, k: usize) -> Result<PermDistribution> {
    check_fy_args(m, k)?;
    let mut probs = BTreeMap::new();
    probs.insert(Permutation::identity(m), 1.0f64);
    for j in 1..=k {
        let step_weight = 1.0 / (m - j + 1) as f64;
        let mut next: BTreeMap<Permutation, f64> = BTreeMap::new();
        for (sigma, p) in &probs {
            for l in j..=m {
                let tau = Permutation::cycle_down(m, j, l);
                let composed = sigma.compose(&tau);
                *next.entry(composed).or_insert(0.0) += p * step_weight;
            }
        }
        probs = next;
    }
    Ok(PermDistribution { m, probs })
}

/// One draw from the `fy_distribution(m, k)` law (for property tests).
pub fn fy_sample<R: Rng>(m: usize, k: usize, rng: &mut R) -> Result<Permutation> {
    check_fy_args(m, k)?;
    let mut sigma = Permutation::identity(m);
    for j in 1..=k {
        let l = rng.gen_range(j..=m);
        sigma = sigma.compose(&Permutation::cycle_down(m, j, l));
    }
    Ok(sigma)
}
