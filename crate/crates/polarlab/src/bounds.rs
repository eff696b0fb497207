//! Two-sided experiments for the lift constants: closed-form upper
//! certificates, the product-polynomial lower bound, the per-step certificate
//! chain, and the block tensor construction driving the logarithmic lower
//! bound at p = inf.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{sup_mform, sup_polynomial, SearchParams};
use crate::lp::BallSpec;
use crate::matrix::{spectral_norm, ComplexMatrix};
use crate::report::{BoundReport, ChainLink, Direction, EstimateReport};
use crate::shuffle::shuffle;
use crate::tensor::HomPolynomial;
use crate::torus::torus_expectation_streamed;

// Per-sample power-iteration budget inside the Monte Carlo integrals. The
// tolerance only needs to sit far below the confidence intervals.
const MC_SPECTRAL_TOL: f64 = 1e-7;
const MC_SPECTRAL_MAX_ITER: usize = 200_000;

/// Closed-form upper certificate for the lift constant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UpperCertificate {
    pub m: usize,
    pub n: usize,
    /// `2^{m-1} e^m m! mu^{m-1}` with `mu = log2(2n)`: the explicit constant
    /// produced by chaining the per-step mask bounds, before any smoothing.
    pub value: f64,
    /// Natural log of `value`, computed directly (no intermediate overflow).
    pub ln_value: f64,
    /// Display shape `m^m (ln n)^{m-1}` with unspecified universal constants
    /// suppressed.
    pub shape: f64,
}

/// The explicit chain constant `2^{m-1} e^m m! log2(2n)^{m-1}` (computed in
/// log space, so large m cannot overflow intermediates).
pub fn upper_certificate(m: usize, n: usize) -> Result<UpperCertificate> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "need m >= 1 and n >= 1, got ({m}, {n})"
        )));
    }
    let mf = m as f64;
    let mu = (2.0 * n as f64).log2();
    let ln_factorial: f64 = (1..=m).map(|k| (k as f64).ln()).sum();
    let ln_value = (mf - 1.0) * std::f64::consts::LN_2 + mf + ln_factorial + (mf - 1.0) * mu.ln();
    let shape = mf.powf(mf) * (n as f64).ln().powf(mf - 1.0);
    Ok(UpperCertificate {
        m,
        n,
        value: ln_value.exp(),
        ln_value,
        shape,
    })
}

/// The product-polynomial experiment: everything known about
/// `sup |L_P| / sup |P|` for `P = x_1 .. x_m` on the l_p ball.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductRatio {
    pub m: usize,
    pub p: f64,
    /// The certified ratio `sup |L_P| / sup |P|`, equal to `m^{m/p}`.
    pub report: EstimateReport,
    /// Estimator confirmation of the numerator closed form (value 1).
    pub numerator: EstimateReport,
    /// Estimator confirmation of the denominator closed form `m^{-m/p}`.
    pub denominator: EstimateReport,
    pub closed_form: f64,
}

/// Certified ratio `sup |L_P| / sup |P| = m^{m/p}` for the product polynomial,
/// with both closed forms re-confirmed by the search estimators. Accepts any
/// finite p >= 1.
pub fn product_poly_ratio(m: usize, p: f64, params: &SearchParams) -> Result<ProductRatio> {
    if m < 1 {
        return Err(Error::InvalidArgument("need m >= 1".into()));
    }
    if !(p >= 1.0) || p.is_infinite() {
        return Err(Error::InvalidExponent(p));
    }
    let ball = BallSpec::new(p)?;
    let poly = HomPolynomial::product(m);
    let lift = poly.lift();
    let numerator = sup_mform(&lift, &ball, params);
    let denominator = sup_polynomial(&poly, &ball, params);
    let denominator_closed = (m as f64).powf(-(m as f64) / p);
    let closed_form = (m as f64).powf(m as f64 / p);
    // The denominator is the exact Lagrange value; the numerator estimate is
    // certified by its witness, so the quotient is a certified lower bound.
    let value = numerator.value / denominator_closed;
    let report = EstimateReport {
        value,
        direction: Direction::CertifiedLowerBound,
        witness: numerator.witness.clone(),
        samples: params.restarts as u64,
        ci_halfwidth: 0.0,
        seed: params.seed,
        method: format!(
            "product-polynomial ratio: certified numerator / closed-form denominator m^(-m/p); \
             closed form m^(m/p) = {closed_form}"
        ),
    };
    Ok(ProductRatio {
        m,
        p,
        report,
        numerator,
        denominator,
        closed_form,
    })
}

/// Walks the per-step certificate chain for one polynomial:
/// `sup |S_{k-1} L_P| <= 2 (m-k+1) log2(2n) sup |S_k L_P|` for every k, and
/// the endpoint `sup |B| <= e^m sup |P|`.
///
/// Both sides of each inequality can only be lower-estimated, so the gate
/// asserts `lower(lhs) <= factor * lower(rhs) * (1 + slack)`: a heuristic
/// check (slack covers estimator shortfall on the right side only), not a
/// proof.
pub fn chain_check(
    p: &HomPolynomial,
    ball: &BallSpec,
    params: &SearchParams,
    slack: f64,
) -> Result<BoundReport> {
    let m = p.degree();
    let n = p.dim();
    if m > 5 || n > 6 {
        return Err(Error::BudgetExceeded(format!(
            "chain check estimates m+1 sups exhaustively; need m <= 5, n <= 6, got ({m}, {n})"
        )));
    }
    if m < 1 {
        return Err(Error::InvalidArgument("need m >= 1".into()));
    }
    let lift = p.lift();
    let mut sups = Vec::with_capacity(m);
    for k in 0..m {
        let sk = shuffle(&lift, k)?;
        sups.push(sup_mform(&sk, ball, params));
    }
    let sup_p = sup_polynomial(p, ball, params);

    let mu_bar = (2.0 * n as f64).log2();
    let mut chain = Vec::new();
    for k in 1..m {
        let factor = 2.0 * (m - k + 1) as f64 * mu_bar;
        let lhs = sups[k - 1].value;
        let rhs = factor * sups[k].value * (1.0 + slack);
        chain.push(ChainLink {
            k,
            description: format!("sup|S_{} L_P| <= 2 (m-k+1) log2(2n) sup|S_{k} L_P|", k - 1),
            lhs,
            factor,
            rhs,
            holds: lhs <= rhs,
        });
    }
    let em = (m as f64).exp();
    let endpoint_lhs = sups[m - 1].value;
    let endpoint_rhs = em * sup_p.value * (1.0 + slack);
    chain.push(ChainLink {
        k: m,
        description: format!("sup|B| <= e^{m} sup|P|"),
        lhs: endpoint_lhs,
        factor: em,
        rhs: endpoint_rhs,
        holds: endpoint_lhs <= endpoint_rhs,
    });

    let upper = upper_certificate(m, n)?;
    let ratio = if sup_p.value > 0.0 {
        sups[0].value / sup_p.value
    } else {
        0.0
    };
    let lower = EstimateReport {
        value: ratio,
        direction: Direction::StatisticalMean,
        witness: None,
        samples: params.restarts as u64,
        ci_halfwidth: 0.0,
        seed: params.seed,
        method: "sup|L_P| / sup|P| (quotient of certified-lower estimates)".into(),
    };
    let consistent = chain.iter().all(|c| c.holds) && lower.value <= upper.value;
    Ok(BoundReport {
        m,
        n,
        p: ball.p,
        lower,
        upper: upper.value,
        chain,
        consistent,
    })
}

// ---------------------------------------------------------------------------
// The block construction at p = inf
// ---------------------------------------------------------------------------

/// The n x n operator `sum_{i<j} v_ij x_i x_j` where
/// `v_ij = (1/(i-j)) e_i (x) e_j + (1/(j-i)) e_j (x) e_i`: entries
/// `x_a x_b / (a - b)` off the diagonal.
pub fn coupled_operator(x: &[Complex64]) -> ComplexMatrix {
    let n = x.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let w = 1.0 / (a as f64 - b as f64);
                m.set(a, b, x[a] * x[b] * w);
            }
        }
    }
    m
}

/// The decoupled version `sum_{i<j} v_ij x_i y_j`: entry (a, b) is
/// `x_min(a,b) y_max(a,b) / (a - b)` off the diagonal.
pub fn decoupled_operator(x: &[Complex64], y: &[Complex64]) -> ComplexMatrix {
    let n = x.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let w = 1.0 / (a as f64 - b as f64);
                let lo = a.min(b);
                let hi = a.max(b);
                m.set(a, b, x[lo] * y[hi] * w);
            }
        }
    }
    m
}

fn operator_norm_integrand(m: &ComplexMatrix) -> f64 {
    match spectral_norm(m, MC_SPECTRAL_TOL, MC_SPECTRAL_MAX_ITER) {
        Ok(est) => est.value,
        // Signal through the non-finite path so the Monte Carlo loop aborts
        // with the offending sample index.
        Err(_) => f64::NAN,
    }
}

/// One block of the construction, at local size `size`: the Monte Carlo
/// estimates of the one-variable integral (I1) and of the decoupled
/// two-variable integral (I2). Streams are derived as
/// `(seed, 2 * block_index)` and `(seed, 2 * block_index + 1)`.
fn block_integrals(
    size: usize,
    samples: u64,
    seed: u64,
    block_index: u64,
    threads: usize,
) -> Result<(EstimateReport, EstimateReport)> {
    let i1 = torus_expectation_streamed(
        |x: &[Complex64]| operator_norm_integrand(&coupled_operator(x)),
        size,
        seed,
        2 * block_index * 1000,
        samples,
        threads,
        format!("bourgain-I1(size={size}, block={block_index})"),
    )?;
    // One 2n-dimensional torus sample per draw: first half x, second half y.
    let i2 = torus_expectation_streamed(
        |xy: &[Complex64]| {
            let (x, y) = xy.split_at(size);
            operator_norm_integrand(&decoupled_operator(x, y))
        },
        2 * size,
        seed,
        (2 * block_index + 1) * 1000,
        samples,
        threads,
        format!("bourgain-I2(size={size}, block={block_index})"),
    )?;
    Ok((i1, i2))
}

/// Monte Carlo estimates of the two torus integrals behind the logarithmic
/// lower bound: I1 integrates the coupled operator norm over one torus
/// variable, I2 the decoupled norm over two. The known comparisons are
/// `I1 <= pi` and `I2 >= ln n - pi`.
pub fn bourgain_integrals(
    n: usize,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<(EstimateReport, EstimateReport)> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    block_integrals(n, samples, seed, 0, threads)
}

/// The ratio statistic of the block construction for even m: the product of
/// per-block decoupled integrals over the product of per-block coupled
/// integrals. For m = 2 this is exactly `I2 / I1` at size n.
///
/// Blocks are the disjoint intervals `((k-1) b, k b]` with `b = floor(2n/m)`;
/// the integrand is an elementary tensor, so its projective norm is the
/// product of per-block operator norms, and the expectation of a product of
/// independent factors is the product of per-block expectations. Each block
/// gets `samples / (m/2)` samples from its own stream.
pub fn bourgain_lower_bound(
    m: usize,
    n: usize,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<EstimateReport> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::OddArity(m));
    }
    let b = (2 * n) / m;
    if b < 2 {
        return Err(Error::BlockTooSmall { b });
    }
    let blocks = m / 2;
    let per_block = (samples / blocks as u64).max(2);
    let mut num = 1.0f64;
    let mut den = 1.0f64;
    let mut rel_var = 0.0f64;
    let mut used = 0u64;
    for k in 0..blocks {
        let (i1, i2) = block_integrals(b, per_block, seed, k as u64, threads)?;
        num *= i2.value;
        den *= i1.value;
        if i1.value > 0.0 && i2.value > 0.0 {
            rel_var += (i1.ci_halfwidth / i1.value).powi(2) + (i2.ci_halfwidth / i2.value).powi(2);
        }
        used += i1.samples + i2.samples;
    }
    let value = if den > 0.0 { num / den } else { 0.0 };
    let hypothesis = (2.0 * n as f64 / m as f64).ln() >= std::f64::consts::PI;
    let mut method = format!(
        "bourgain-block-ratio: {blocks} block(s) of size {b}, product of per-block I2 / I1"
    );
    if !hypothesis {
        method.push_str("; note: ln(2n/m) < pi, below the regime where the bound is informative");
    }
    Ok(EstimateReport {
        value,
        direction: Direction::StatisticalMean,
        witness: None,
        samples: used,
        ci_halfwidth: value * rel_var.sqrt(),
        seed,
        method,
    })
}

/// The closed-form target of the ratio statistic,
/// `((ln(2n/m) - pi) / pi)^{m/2}`.
pub fn bourgain_target(m: usize, n: usize) -> f64 {
    let b = 2.0 * n as f64 / m as f64;
    ((b.ln() - std::f64::consts::PI) / std::f64::consts::PI).powf(m as f64 / 2.0)
}
