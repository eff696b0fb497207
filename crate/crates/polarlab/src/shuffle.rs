//! Shuffle symmetrization of m-linear forms.
//!
//! Three independent routes to the symmetric form associated with a
//! polynomial P live here: the sign-averaged polarization formula, the full
//! group average of the lift L_P, and the Fisher-Yates shuffle `S_{m-1}`.
//! The shuffling step T_k, the partial shuffles S_k, and the coefficient
//! recursion connecting consecutive shuffles complete the picture.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::index_set;
use crate::mask::recursion_weight_value;
use crate::perm::{all_permutations, fy_distribution, FACTORIAL_GUARD};
use crate::tensor::{CoeffTensor, HomPolynomial};

/// The unique symmetric m-linear form B with `B(x, .., x) = P(x)`, computed by
/// the sign average
/// `B(x1, .., xm) = (1/(2^m m!)) sum_{eps in {-1,1}^m} eps_1 .. eps_m P(eps_1 x1 + .. + eps_m xm)`
/// applied coefficientwise: the coefficient at index i is the value of B on
/// the canonical-basis tuple `(e_{i_1}, .., e_{i_m})`.
pub fn polarization_form(p: &HomPolynomial) -> CoeffTensor {
    let m = p.degree();
    let n = p.dim();
    let mut out = CoeffTensor::zero(m, n);
    if m == 0 {
        return out;
    }
    let scale = 1.0 / ((1u64 << m) as f64 * (1..=m).map(|v| v as f64).product::<f64>());
    let mut arg = vec![Complex64::new(0.0, 0.0); n];
    for i in index_set(m, n) {
        let mut acc = Complex64::new(0.0, 0.0);
        for bits in 0u64..(1 << m) {
            for z in arg.iter_mut() {
                *z = Complex64::new(0.0, 0.0);
            }
            let mut sign = 1.0f64;
            for (slot, &e) in i.entries().iter().enumerate() {
                let eps = if bits >> slot & 1 == 0 { 1.0 } else { -1.0 };
                sign *= eps;
                arg[e - 1] += Complex64::new(eps, 0.0);
            }
            acc += p.eval(&arg).expect("argument built with matching dimension") * sign;
        }
        let value = acc * scale;
        if value != Complex64::new(0.0, 0.0) {
            out.add_assign(i, value);
        }
    }
    out
}

/// The group average `(1/m!) sum_sigma L(x^{sigma(1)}, .., x^{sigma(m)})`,
/// acting on slots; the output is permutation-symmetric. Enumeration of the
/// m! permutations is refused for m > 8.
pub fn symmetrize_average(l: &CoeffTensor) -> Result<CoeffTensor> {
    let m = l.arity();
    if m > FACTORIAL_GUARD {
        return Err(Error::FactorialGuard {
            m,
            max: FACTORIAL_GUARD,
        });
    }
    if m <= 1 {
        return Ok(l.clone());
    }
    let perms = all_permutations(m)?;
    let weight = 1.0 / perms.len() as f64;
    let mut out = CoeffTensor::zero(m, l.dim());
    for sigma in &perms {
        for (i, c) in l.iter() {
            out.add_assign(sigma.permute_index(i), c * weight);
        }
    }
    Ok(out)
}

/// The k-th shuffling step:
/// `T_k L = (1/(m-k+1)) sum_{l=k}^m L(x1, .., x_{k-1}, x_{k+1}, .., x_l, x_k, x_{l+1}, .., x_m)`,
/// realized on coefficients by the index relocation
/// `c_i(T_k L) = (1/(m-k+1)) sum_l c_{(i_1, .., i_{k-1}, i_{k+1}, .., i_l, i_k, i_{l+1}, .., i_m)}(L)`.
pub fn shuffle_step(l: &CoeffTensor, k: usize) -> Result<CoeffTensor> {
    let m = l.arity();
    if m < 2 || k < 1 || k > m - 1 {
        return Err(Error::StepOutOfRange {
            k,
            lo: 1,
            hi: m.saturating_sub(1),
        });
    }
    let weight = 1.0 / (m - k + 1) as f64;
    let mut out = CoeffTensor::zero(m, l.dim());
    for (i, c) in l.iter() {
        for target in k..=m {
            // The source index whose (k -> target) relocation is i.
            out.add_assign(i.relocate(target, k), c * weight);
        }
    }
    Ok(out)
}

/// The k-th shuffle `S_k L`: the exact expectation of the subindex-permuted
/// form over the Fisher-Yates law, via
/// `c_j(S_k L) = E_sigma[ c_{(j_{sigma^{-1}(1)}, .., j_{sigma^{-1}(m)})}(L) ]`.
/// `k = 0` returns L unchanged.
pub fn shuffle(l: &CoeffTensor, k: usize) -> Result<CoeffTensor> {
    let m = l.arity();
    if k == 0 {
        return Ok(l.clone());
    }
    if m < 2 || k > m - 1 {
        return Err(Error::StepOutOfRange {
            k,
            lo: 0,
            hi: m.saturating_sub(1),
        });
    }
    let dist = fy_distribution(m, k)?;
    let mut out = CoeffTensor::zero(m, l.dim());
    for (sigma, prob) in dist.iter() {
        for (i, c) in l.iter() {
            out.add_assign(sigma.permute_index(i), c * prob);
        }
    }
    Ok(out)
}

/// One coefficient-recursion counterexample: the first index (in canonical
/// order) where the predicted and computed coefficients disagree.
#[derive(Debug, Clone, Serialize)]
pub struct RecursionCounterexample {
    pub k: usize,
    pub index: Vec<usize>,
    pub computed: Complex64,
    pub predicted: Complex64,
}

/// Outcome of the exhaustive coefficient-recursion check.
#[derive(Debug, Clone, Serialize)]
pub struct RecursionReport {
    pub m: usize,
    pub n: usize,
    pub pass: bool,
    pub checks: usize,
    pub max_deviation: f64,
    pub counterexample: Option<RecursionCounterexample>,
}

/// Verifies, for every `k` in 1..m-1 and every index i of I(m, n), that
/// `c_i(S_{k-1} L_P)` equals the Kronecker-weighted multiple of
/// `c_i(S_k L_P)` (zero when `i_k > i_{k+1}`), and that nonzero coefficients
/// of `S_k L_P` have nondecreasing tails `i_{k+1} <= .. <= i_m`.
///
/// The shuffles are computed through the exact Fisher-Yates expectation,
/// independently of the recursion being tested. Exhaustive enumeration is
/// restricted to m <= 6, n <= 5.
pub fn recursion_check(p: &HomPolynomial) -> Result<RecursionReport> {
    let m = p.degree();
    let n = p.dim();
    if m > 6 || n > 5 {
        return Err(Error::BudgetExceeded(format!(
            "recursion check enumerates I(m, n) exhaustively; need m <= 6, n <= 5, got ({m}, {n})"
        )));
    }
    let mut shuffles = Vec::with_capacity(m);
    let lift = p.lift();
    for k in 0..m.max(1) {
        shuffles.push(shuffle(&lift, k)?);
    }

    let mut checks = 0usize;
    let mut max_dev = 0.0f64;
    let mut counterexample = None;

    'outer: for k in 1..m {
        let prev = &shuffles[k - 1];
        let curr = &shuffles[k];
        for i in index_set(m, n) {
            let computed = prev.coeff(&i);
            let predicted = if i.entry(k) <= i.entry(k + 1) {
                curr.coeff(&i) * recursion_weight_value(m, k, &i)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let dev = (computed - predicted).norm();
            max_dev = max_dev.max(dev);
            checks += 1;
            if dev > crate::TAU_EXACT {
                counterexample = Some(RecursionCounterexample {
                    k,
                    index: i.entries().to_vec(),
                    computed,
                    predicted,
                });
                break 'outer;
            }
        }
    }

    // Support property: nonzero coefficients of S_k L_P have nondecreasing tails.
    if counterexample.is_none() {
        'support: for (k, tensor) in shuffles.iter().enumerate() {
            for (i, c) in tensor.iter() {
                if c.norm() <= crate::TAU_EXACT {
                    continue;
                }
                checks += 1;
                let tail_ok = (k + 1..m).all(|s| i.entry(s) <= i.entry(s + 1));
                if !tail_ok {
                    counterexample = Some(RecursionCounterexample {
                        k,
                        index: i.entries().to_vec(),
                        computed: *c,
                        predicted: Complex64::new(0.0, 0.0),
                    });
                    break 'support;
                }
            }
        }
    }

    Ok(RecursionReport {
        m,
        n,
        pass: counterexample.is_none(),
        checks,
        max_deviation: max_dev,
        counterexample,
    })
}
