//! Certified-lower-bound estimation of polynomial and multilinear sups over
//! l_p unit balls, and search-based lower bounds for mask mu-norms.
//!
//! Every estimator returns a feasible witness achieving the reported value;
//! nothing here claims global maximality.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::index::index_set;
use crate::lp::{BallSpec, Exponent};
use crate::mask::{schur, Mask};
use crate::report::{Direction, EstimateReport, Witness};
use crate::tensor::{CoeffTensor, HomPolynomial};

/// Multi-start search budget shared by the sup estimators.
#[derive(Debug, Clone)]
pub struct SearchParams {
    pub restarts: u32,
    pub iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            restarts: 32,
            iters: 200,
            tol: 1e-10,
            seed: crate::DEFAULT_SEED,
        }
    }
}

impl SearchParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// An independent deterministic RNG stream derived from (seed, stream).
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn phase_of(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / r
    }
}

// ---------------------------------------------------------------------------
// sup |P(x)| over the l_p ball
// ---------------------------------------------------------------------------

/// Certified lower bound on `sup_{|x|_p <= 1} |P(x)|` by multi-start ascent.
///
/// For p = inf the search runs directly on the torus (by the maximum modulus
/// principle the sup over the polydisc is attained there) as cyclic
/// coordinate maximization: with every phase but one frozen, P restricted to
/// the free coordinate is a univariate polynomial whose modulus is maximized
/// on a circle by a grid-plus-golden-section line search. For finite p the
/// search is monotone projected gradient ascent on the scale-invariant
/// objective `|P(x)| / |x|_p^m`, followed by a first-order-condition polish.
pub fn sup_polynomial(p: &HomPolynomial, ball: &BallSpec, params: &SearchParams) -> EstimateReport {
    let n = p.dim();
    let method = if ball.is_infinite() {
        "torus-coordinate-ascent"
    } else {
        "projected-gradient-ascent"
    };
    let mut report = EstimateReport {
        value: 0.0,
        direction: Direction::CertifiedLowerBound,
        witness: Some(Witness::Point(vec![Complex64::new(0.0, 0.0); n])),
        samples: params.restarts as u64,
        ci_halfwidth: 0.0,
        seed: params.seed,
        method: method.into(),
    };
    if p.is_zero() || n == 0 || p.degree() == 0 {
        return report;
    }

    let mut best = -1.0f64;
    let mut best_x: Vec<Complex64> = Vec::new();
    for r in 0..params.restarts.max(1) {
        let mut rng = stream_rng(params.seed, r as u64);
        let (x, v) = match ball.p {
            Exponent::Infinity => {
                let start: Vec<Complex64> = if r == 0 {
                    vec![Complex64::new(1.0, 0.0); n]
                } else {
                    (0..n)
                        .map(|_| {
                            Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU)
                        })
                        .collect()
                };
                ascend_torus(p, start, params)
            }
            Exponent::Finite(_) => {
                let mut start: Vec<Complex64> = if r == 0 {
                    vec![Complex64::new(1.0, 0.0); n]
                } else {
                    (0..n)
                        .map(|_| {
                            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                        })
                        .collect()
                };
                ball.normalize(&mut start);
                ascend_ball(p, ball, start, params)
            }
        };
        if v > best {
            best = v;
            best_x = x;
        }
    }
    report.value = best.max(0.0);
    report.witness = Some(Witness::Point(best_x));
    report
}

/// Cyclic exact coordinate maximization over phases.
fn ascend_torus(
    p: &HomPolynomial,
    mut x: Vec<Complex64>,
    params: &SearchParams,
) -> (Vec<Complex64>, f64) {
    let n = p.dim();
    let m = p.degree();
    let mut val = p.eval(&x).expect("dimension checked").norm();
    for _sweep in 0..params.iters {
        let before = val;
        for c in 0..n {
            // P as a univariate polynomial in x_c: collect a_k, k = multiplicity of c.
            let mut a = vec![Complex64::new(0.0, 0.0); m + 1];
            for (i, coeff) in p.iter() {
                let mut term = *coeff;
                let mut mult = 0usize;
                for &e in i.entries() {
                    if e == c + 1 {
                        mult += 1;
                    } else {
                        term *= x[e - 1];
                    }
                }
                a[mult] += term;
            }
            let (theta, line_val) = maximize_modulus_on_circle(&a);
            if line_val > val {
                x[c] = Complex64::from_polar(1.0, theta);
                val = line_val;
            }
        }
        if val - before <= params.tol * (1.0 + val) {
            break;
        }
    }
    // Re-evaluate so the reported value is exactly the witness value.
    let v = p.eval(&x).expect("dimension checked").norm();
    (x, v)
}

/// Maximizes `|a_0 + a_1 z + .. + a_d z^d|` over the unit circle `z = e^{i t}`.
fn maximize_modulus_on_circle(a: &[Complex64]) -> (f64, f64) {
    let eval = |t: f64| -> f64 {
        let z = Complex64::from_polar(1.0, t);
        let mut acc = Complex64::new(0.0, 0.0);
        for ak in a.iter().rev() {
            acc = acc * z + ak;
        }
        acc.norm()
    };
    let grid = 64usize;
    let step = std::f64::consts::TAU / grid as f64;
    let mut best_t = 0.0;
    let mut best_v = eval(0.0);
    for k in 1..grid {
        let t = k as f64 * step;
        let v = eval(t);
        if v > best_v {
            best_v = v;
            best_t = t;
        }
    }
    // Golden-section refinement around the best grid cell.
    let (mut lo, mut hi) = (best_t - step, best_t + step);
    let phi = 0.618_033_988_749_894_8;
    let mut t1 = hi - phi * (hi - lo);
    let mut t2 = lo + phi * (hi - lo);
    let mut f1 = eval(t1);
    let mut f2 = eval(t2);
    for _ in 0..70 {
        if f1 < f2 {
            lo = t1;
            t1 = t2;
            f1 = f2;
            t2 = lo + phi * (hi - lo);
            f2 = eval(t2);
        } else {
            hi = t2;
            t2 = t1;
            f2 = f1;
            t1 = hi - phi * (hi - lo);
            f1 = eval(t1);
        }
    }
    let mid = 0.5 * (lo + hi);
    let v = eval(mid);
    if v >= best_v {
        (mid, v)
    } else {
        (best_t, best_v)
    }
}

/// Monotone gradient ascent on `|P(x)| / |x|_p^m`, then a polish pass.
fn ascend_ball(
    p: &HomPolynomial,
    ball: &BallSpec,
    mut x: Vec<Complex64>,
    params: &SearchParams,
) -> (Vec<Complex64>, f64) {
    let pval = match ball.p {
        Exponent::Finite(v) => v,
        Exponent::Infinity => unreachable!("finite-p path"),
    };
    let m = p.degree() as f64;
    let n = p.dim();
    let mut val = p.eval(&x).expect("dimension checked").norm();
    let mut eta = 0.25f64;
    for _ in 0..params.iters.max(1) * 4 {
        let pv = p.eval(&x).expect("dimension checked");
        let grad = p.gradient(&x);
        if pv.norm() == 0.0 {
            // Ascent direction degenerates at a zero of P; nudge toward the
            // largest gradient coordinate.
            let dir: Vec<Complex64> = grad.iter().map(|d| d.conj()).collect();
            let nn = dir.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nn == 0.0 {
                break;
            }
            for (xc, d) in x.iter_mut().zip(&dir) {
                *xc += 1e-3 * d / nn;
            }
            ball.normalize(&mut x);
            val = p.eval(&x).expect("dimension checked").norm();
            continue;
        }
        // Combined direction of increase for log |P| - m log |x|_p.
        let norm_p = 1.0f64; // x kept on the unit sphere
        let mut dir = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..n {
            let g_log = grad[c].conj() * pv / pv.norm_sqr();
            let xc = x[c];
            let g_norm = if xc.norm() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                xc * xc.norm().powf(pval - 2.0) / norm_p
            };
            dir[c] = g_log - g_norm * m;
        }
        let nn = dir.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nn * (1.0 + val) <= 1e-15 {
            break;
        }
        for d in dir.iter_mut() {
            *d /= nn;
        }
        let mut improved = false;
        while eta > 1e-14 {
            let mut trial: Vec<Complex64> =
                x.iter().zip(&dir).map(|(xc, d)| xc + eta * d).collect();
            ball.normalize(&mut trial);
            let tval = p.eval(&trial).expect("dimension checked").norm();
            if tval > val {
                x = trial;
                val = tval;
                eta = (eta * 1.5).min(1.0);
                improved = true;
                break;
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }

    if pval > 1.0 {
        polish_first_order(p, ball, pval, &mut x, &mut val);
    } else {
        polish_l1(p, ball, &mut x, &mut val);
    }
    (x, val)
}

/// Fixed-point polish from the stationarity condition
/// `x_c  ~  phase(e^{i psi} conj(dP/dx_c)) |dP/dx_c|^{1/(p-1)}`; accepted only
/// while the objective improves.
fn polish_first_order(
    p: &HomPolynomial,
    ball: &BallSpec,
    pval: f64,
    x: &mut Vec<Complex64>,
    val: &mut f64,
) {
    for _ in 0..80 {
        let pv = p.eval(x).expect("dimension checked");
        if pv.norm() == 0.0 {
            return;
        }
        let psi = phase_of(pv);
        let grad = p.gradient(x);
        let wmax = grad.iter().map(|g| g.norm()).fold(0.0, f64::max);
        if wmax == 0.0 {
            return;
        }
        let mut trial: Vec<Complex64> = grad
            .iter()
            .map(|g| {
                if g.norm() == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    phase_of(psi * g.conj()) * (g.norm() / wmax).powf(1.0 / (pval - 1.0))
                }
            })
            .collect();
        ball.normalize(&mut trial);
        let tval = p.eval(&trial).expect("dimension checked").norm();
        if tval > *val {
            *x = trial;
            *val = tval;
        } else {
            return;
        }
    }
}

/// l1 polish: phase alignment plus a damped multiplicative mass update toward
/// the equal-marginal-gain condition.
fn polish_l1(p: &HomPolynomial, ball: &BallSpec, x: &mut Vec<Complex64>, val: &mut f64) {
    let mut beta = 0.5f64;
    for _ in 0..200 {
        let pv = p.eval(x).expect("dimension checked");
        if pv.norm() == 0.0 {
            return;
        }
        let psi = phase_of(pv);
        let grad = p.gradient(x);

        // Phases from stationarity at fixed moduli.
        let phased: Vec<Complex64> = x
            .iter()
            .zip(&grad)
            .map(|(xc, g)| {
                if g.norm() == 0.0 {
                    *xc
                } else {
                    phase_of(psi * g.conj()) * xc.norm()
                }
            })
            .collect();
        let pval1 = p.eval(&phased).expect("dimension checked").norm();
        if pval1 > *val {
            *x = phased;
            *val = pval1;
        }

        // Mass toward coordinates with larger |dP/dx_c|.
        let grad = p.gradient(x);
        let wmax = grad.iter().map(|g| g.norm()).fold(0.0, f64::max);
        if wmax == 0.0 {
            return;
        }
        let mut trial: Vec<Complex64> = x
            .iter()
            .zip(&grad)
            .map(|(xc, g)| xc * (g.norm() / wmax).powf(beta))
            .collect();
        ball.normalize(&mut trial);
        let tval = p.eval(&trial).expect("dimension checked").norm();
        if tval > *val {
            *x = trial;
            *val = tval;
        } else {
            beta *= 0.5;
            if beta < 1e-6 {
                return;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// sup |L(x1, .., xm)| over products of l_p balls
// ---------------------------------------------------------------------------

/// Certified lower bound on the multilinear sup by cyclic alternating
/// maximization: with all slots but one fixed the objective is linear in the
/// free slot, and the exact slot optimum over the ball is the dual-norm
/// witness of the induced functional. Ties (zero induced functional) keep the
/// previous slot value. The per-update objective is nondecreasing by
/// construction.
pub fn sup_mform(l: &CoeffTensor, ball: &BallSpec, params: &SearchParams) -> EstimateReport {
    let m = l.arity();
    let n = l.dim();
    let mut report = EstimateReport {
        value: 0.0,
        direction: Direction::CertifiedLowerBound,
        witness: Some(Witness::Tuple(vec![
            vec![Complex64::new(0.0, 0.0); n];
            m
        ])),
        samples: params.restarts as u64,
        ci_halfwidth: 0.0,
        seed: params.seed,
        method: "alternating-ascent".into(),
    };
    if l.support_len() == 0 || m == 0 || n == 0 {
        return report;
    }

    let mut best = -1.0f64;
    let mut best_xs: Vec<Vec<Complex64>> = Vec::new();
    for r in 0..params.restarts.max(1) {
        let mut rng = stream_rng(params.seed, 0x4D00 + r as u64);
        let xs: Vec<Vec<Complex64>> = match r {
            0 => {
                let mut uniform = vec![Complex64::new(1.0, 0.0); n];
                ball.normalize(&mut uniform);
                vec![uniform; m]
            }
            1 => (0..m)
                .map(|t| {
                    let mut e = vec![Complex64::new(0.0, 0.0); n];
                    e[t.min(n - 1)] = Complex64::new(1.0, 0.0);
                    e
                })
                .collect(),
            _ => (0..m)
                .map(|_| {
                    let mut x: Vec<Complex64> = match ball.p {
                        Exponent::Infinity => (0..n)
                            .map(|_| {
                                Complex64::from_polar(
                                    1.0,
                                    rng.gen::<f64>() * std::f64::consts::TAU,
                                )
                            })
                            .collect(),
                        Exponent::Finite(_) => (0..n)
                            .map(|_| {
                                Complex64::new(
                                    rng.sample(StandardNormal),
                                    rng.sample(StandardNormal),
                                )
                            })
                            .collect(),
                    };
                    ball.normalize(&mut x);
                    x
                })
                .collect(),
        };
        let (xs, v) = alternate_slots(l, ball, xs, params);
        if v > best {
            best = v;
            best_xs = xs;
        }
    }
    report.value = best.max(0.0);
    report.witness = Some(Witness::Tuple(best_xs));
    report
}

fn alternate_slots(
    l: &CoeffTensor,
    ball: &BallSpec,
    mut xs: Vec<Vec<Complex64>>,
    params: &SearchParams,
) -> (Vec<Vec<Complex64>>, f64) {
    let m = l.arity();
    let n = l.dim();
    let mut obj = l.eval(&xs).expect("shape checked").norm();
    for _sweep in 0..params.iters.max(1) {
        let before = obj;
        for t in 0..m {
            let mut g = vec![Complex64::new(0.0, 0.0); n];
            for (i, c) in l.iter() {
                let mut term = *c;
                for (s, &e) in i.entries().iter().enumerate() {
                    if s != t {
                        term *= xs[s][e - 1];
                    }
                }
                g[i.entry(t + 1) - 1] += term;
            }
            let (w, v) = ball.dual_witness(&g);
            if v == 0.0 {
                // Tie: the induced functional vanished; keep the slot as is.
                continue;
            }
            debug_assert!(
                v >= obj - 1e-9 * (1.0 + obj),
                "slot update decreased the objective: {obj} -> {v}"
            );
            xs[t] = w;
            obj = v;
        }
        if obj - before <= params.tol * (1.0 + obj) {
            break;
        }
    }
    let v = l.eval(&xs).expect("shape checked").norm();
    (xs, v)
}

// ---------------------------------------------------------------------------
// mu-norm search
// ---------------------------------------------------------------------------

/// Search-based lower bound on the mu-norm of a mask: the best observed ratio
/// `sup |A * L| / sup |L|` over a candidate family of forms (shifted-kernel
/// and antisymmetric-kernel two-slot profiles, plus random Gaussian tensors).
///
/// Both sups are certified lower bounds of their own objectives, so the
/// ratio is reported as a statistic, not a certificate.
pub fn mu_lower_bound(
    mask: &Mask,
    ball: &BallSpec,
    trials: u32,
    params: &SearchParams,
) -> Result<EstimateReport> {
    let m = mask.arity();
    let n = mask.dim();
    let mut candidates: Vec<(String, CoeffTensor)> = Vec::new();
    if m >= 2 {
        for u in 1..=m {
            for v in 1..=m {
                if u == v {
                    continue;
                }
                candidates.push((
                    format!("shifted-kernel({u},{v})"),
                    two_slot_profile(m, n, u, v, |d| 1.0 / (d + 0.5)),
                ));
                if u < v {
                    candidates.push((
                        format!("antisym-kernel({u},{v})"),
                        two_slot_profile(m, n, u, v, |d| if d == 0.0 { 0.0 } else { 1.0 / d }),
                    ));
                }
            }
        }
    }
    for t in 0..trials {
        let mut rng = stream_rng(params.seed, 0xA100 + t as u64);
        candidates.push((format!("gaussian({t})"), random_dense_tensor(m, n, &mut rng)));
    }

    let mut best_ratio = 0.0f64;
    let mut best_label = String::from("none");
    let mut best_witness = None;
    for (label, l) in &candidates {
        let den = sup_mform(l, ball, params);
        if den.value <= 1e-12 {
            continue;
        }
        let masked = schur(mask, l)?;
        let num = sup_mform(&masked, ball, params);
        let ratio = num.value / den.value;
        if ratio > best_ratio {
            best_ratio = ratio;
            best_label = label.clone();
            best_witness = num.witness;
        }
    }

    Ok(EstimateReport {
        value: best_ratio,
        direction: Direction::StatisticalMean,
        witness: best_witness,
        samples: candidates.len() as u64,
        ci_halfwidth: 0.0,
        seed: params.seed,
        method: format!(
            "schur-ratio-search over {} candidate forms (best: {best_label}); \
             numerator and denominator are independent certified-lower sup estimates",
            candidates.len()
        ),
    })
}

/// The closed-form upper bound `log2(2n)` on the mu-norm of an
/// ordered-slots mask under any 1-unconditional norm.
pub fn mu_upper_bound_triangle(n: usize) -> f64 {
    (2.0 * n as f64).log2()
}

/// A form supported on two slots: `c_i = f(i_v - i_u)` with every other slot
/// pinned to coordinate 1.
fn two_slot_profile(m: usize, n: usize, u: usize, v: usize, f: impl Fn(f64) -> f64) -> CoeffTensor {
    let mut out = CoeffTensor::zero(m, n);
    for a in 1..=n {
        for b in 1..=n {
            let w = f(b as f64 - a as f64);
            if w == 0.0 {
                continue;
            }
            let mut entries = vec![1usize; m];
            entries[u - 1] = a;
            entries[v - 1] = b;
            out.add_assign(
                crate::index::MultiIndex::new(entries, n).expect("in range"),
                Complex64::new(w, 0.0),
            );
        }
    }
    out
}

fn random_dense_tensor<R: Rng>(m: usize, n: usize, rng: &mut R) -> CoeffTensor {
    let mut out = CoeffTensor::zero(m, n);
    for i in index_set(m, n) {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        out.add_assign(i, Complex64::new(re, im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(restarts: u32, seed: u64) -> SearchParams {
        SearchParams {
            restarts,
            iters: 300,
            tol: 1e-12,
            seed,
        }
    }

    fn witness_point(r: &EstimateReport) -> Vec<Complex64> {
        match r.witness.as_ref().unwrap() {
            Witness::Point(x) => x.clone(),
            _ => panic!("expected point witness"),
        }
    }

    fn witness_tuple(r: &EstimateReport) -> Vec<Vec<Complex64>> {
        match r.witness.as_ref().unwrap() {
            Witness::Tuple(t) => t.clone(),
            _ => panic!("expected tuple witness"),
        }
    }

    #[test]
    fn product_polynomial_matches_lagrange_value() {
        // sup |x1 .. xm| on the l_p ball is m^{-m/p}, at m^{-1/p}(1, .., 1).
        for m in 1..=4 {
            let p = HomPolynomial::product(m);
            for pexp in [1.0, 1.5, 2.0, 3.0] {
                let ball = BallSpec::new(pexp).unwrap();
                let est = sup_polynomial(&p, &ball, &params(8, 1));
                let expect = (m as f64).powf(-(m as f64) / pexp);
                assert!(
                    (est.value - expect).abs() < 1e-8,
                    "m={m} p={pexp}: {} vs {expect}",
                    est.value
                );
                let w = witness_point(&est);
                assert!(ball.contains(&w, 1e-12));
                let reval = p.eval(&w).unwrap().norm();
                assert!((reval - est.value).abs() <= crate::TAU_EVAL);
            }
        }
    }

    #[test]
    fn product_polynomial_on_torus_is_one() {
        for m in 1..=5 {
            let p = HomPolynomial::product(m);
            let est = sup_polynomial(&p, &BallSpec::infinity(), &params(4, 2));
            assert!((est.value - 1.0).abs() < 1e-10, "m={m}: {}", est.value);
        }
    }

    #[test]
    fn sum_of_squares_on_torus() {
        // P = x1^2 + x2^2 on T^2 has sup 2 (phases aligned); grid oracle below.
        let mut p = HomPolynomial::zero(2, 2);
        p.set(MultiIndex::new(vec![1, 1], 2).unwrap(), c(1.0, 0.0))
            .unwrap();
        p.set(MultiIndex::new(vec![2, 2], 2).unwrap(), c(1.0, 0.0))
            .unwrap();
        let mut oracle = 0.0f64;
        let grid = 180;
        for a in 0..grid {
            for b in 0..grid {
                let x = [
                    Complex64::from_polar(1.0, a as f64 * std::f64::consts::TAU / grid as f64),
                    Complex64::from_polar(1.0, b as f64 * std::f64::consts::TAU / grid as f64),
                ];
                oracle = oracle.max(p.eval(&x).unwrap().norm());
            }
        }
        assert!((oracle - 2.0).abs() < 1e-6);
        let est = sup_polynomial(&p, &BallSpec::infinity(), &params(8, 3));
        assert!((est.value - 2.0).abs() < 1e-9, "{}", est.value);
    }

    #[test]
    fn zero_polynomial_returns_zero_with_zero_witness() {
        let p = HomPolynomial::zero(2, 3);
        let est = sup_polynomial(&p, &BallSpec::new(2.0).unwrap(), &params(2, 4));
        assert_eq!(est.value, 0.0);
        assert_eq!(witness_point(&est), vec![c(0.0, 0.0); 3]);
    }

    #[test]
    fn sup_scales_with_coefficients() {
        let mut rng = stream_rng(77, 0);
        let p = HomPolynomial::random_gaussian(3, 3, &mut rng);
        let doubled = p.scale(c(2.0, 0.0));
        for ball in [BallSpec::new(1.5).unwrap(), BallSpec::infinity()] {
            let a = sup_polynomial(&p, &ball, &params(6, 5));
            let b = sup_polynomial(&doubled, &ball, &params(6, 5));
            assert!(
                (b.value - 2.0 * a.value).abs() <= crate::TAU_EVAL * (1.0 + b.value),
                "{} vs {}",
                b.value,
                2.0 * a.value
            );
        }
    }

    #[test]
    fn mform_product_lift_has_sup_one() {
        for m in 1..=4 {
            let l = HomPolynomial::product(m).lift();
            for pexp in [1.0, 2.0, f64::INFINITY] {
                let ball = BallSpec::new(pexp).unwrap();
                let est = sup_mform(&l, &ball, &params(4, 6));
                assert!((est.value - 1.0).abs() < 1e-10, "m={m} p={pexp}");
                let xs = witness_tuple(&est);
                for x in &xs {
                    assert!(ball.contains(x, 1e-12));
                }
                let reval = l.eval(&xs).unwrap().norm();
                assert!((reval - est.value).abs() <= crate::TAU_EVAL);
            }
        }
    }

    #[test]
    fn mform_single_coefficient_gives_modulus() {
        let mut l = CoeffTensor::zero(3, 4);
        l.set(
            MultiIndex::new(vec![2, 1, 4], 4).unwrap(),
            c(-1.5, 2.0),
        )
        .unwrap();
        let expect = c(-1.5, 2.0).norm();
        for pexp in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let ball = BallSpec::new(pexp).unwrap();
            let est = sup_mform(&l, &ball, &params(4, 7));
            assert!(
                (est.value - expect).abs() < 1e-10,
                "p={pexp}: {}",
                est.value
            );
        }
    }

    #[test]
    fn mform_upper_triangle_ones_matches_grid_oracle() {
        // m = 2, n = 2, all ones on i <= j, p = inf. Exhaustive 64-point phase
        // grid per coordinate (the optimum sits on the grid).
        let mut l = CoeffTensor::zero(2, 2);
        for (a, b) in [(1, 1), (1, 2), (2, 2)] {
            l.set(MultiIndex::new(vec![a, b], 2).unwrap(), c(1.0, 0.0))
                .unwrap();
        }
        let grid = 64usize;
        let angle = |k: usize| k as f64 * std::f64::consts::TAU / grid as f64;
        let mut oracle = 0.0f64;
        for a in 0..grid {
            for b in 0..grid {
                for cc in 0..grid {
                    for d in 0..grid {
                        let xs = vec![
                            vec![
                                Complex64::from_polar(1.0, angle(a)),
                                Complex64::from_polar(1.0, angle(b)),
                            ],
                            vec![
                                Complex64::from_polar(1.0, angle(cc)),
                                Complex64::from_polar(1.0, angle(d)),
                            ],
                        ];
                        oracle = oracle.max(l.eval(&xs).unwrap().norm());
                    }
                }
            }
        }
        let est = sup_mform(&l, &BallSpec::infinity(), &params(8, 8));
        assert!(
            (est.value - oracle).abs() < 1e-3,
            "ascent {} vs grid {oracle}",
            est.value
        );
    }

    #[test]
    fn mform_scales_with_coefficients() {
        let mut rng = stream_rng(99, 0);
        let l = HomPolynomial::random_gaussian(2, 4, &mut rng).lift();
        let doubled = l.scale(c(2.0, 0.0));
        let ball = BallSpec::infinity();
        let a = sup_mform(&l, &ball, &params(6, 9));
        let b = sup_mform(&doubled, &ball, &params(6, 9));
        assert!((b.value - 2.0 * a.value).abs() <= crate::TAU_EVAL * (1.0 + b.value));
    }

    #[test]
    fn mu_all_ones_mask_is_unit_ratio() {
        let ball = BallSpec::infinity();
        let est = mu_lower_bound(&Mask::ones(2, 3), &ball, 3, &params(6, 10)).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9, "{}", est.value);
    }

    #[test]
    fn mu_diagonal_mask_stays_near_one() {
        let ball = BallSpec::infinity();
        let mask = Mask::diagonal(2, 6, 1, 2).unwrap();
        let est = mu_lower_bound(&mask, &ball, 4, &params(12, 11)).unwrap();
        assert!(est.value <= 1.0 + 0.05, "mu(D) search found {}", est.value);
    }

    #[test]
    fn mu_triangle_mask_grows_and_respects_upper_bound() {
        let ball = BallSpec::infinity();
        let mut prev = 0.0;
        for n in [4usize, 16] {
            let mask = Mask::triangle(2, n, 1, 2).unwrap();
            let est = mu_lower_bound(&mask, &ball, 2, &params(8, 12)).unwrap();
            assert!(est.value <= mu_upper_bound_triangle(n));
            assert!(est.value > prev);
            prev = est.value;
        }
    }

    #[test]
    fn mu_upper_bound_values() {
        assert!((mu_upper_bound_triangle(1) - 1.0).abs() < 1e-15);
        assert!((mu_upper_bound_triangle(8) - 4.0).abs() < 1e-15);
        assert!((mu_upper_bound_triangle(1024) - 11.0).abs() < 1e-15);
    }
}
