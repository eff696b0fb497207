//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them).

use num_complex::Complex64;
use polarlab::bounds::{bourgain_integrals, chain_check, product_poly_ratio};
use polarlab::estimate::{
    mu_lower_bound, mu_upper_bound_triangle, stream_rng, sup_polynomial, SearchParams,
};
use polarlab::index::index_set;
use polarlab::lp::BallSpec;
use polarlab::mask::Mask;
use polarlab::perm::fy_distribution;
use polarlab::shuffle::{polarization_form, recursion_check, shuffle, shuffle_step, symmetrize_average};
use polarlab::tensor::{CoeffTensor, HomPolynomial};

const SEED: u64 = polarlab::DEFAULT_SEED;

fn announce(criterion: &str, detail: String) {
    println!("PASS {criterion}: {detail}");
}

fn random_tensor(m: usize, n: usize, entries: usize, rng: &mut impl rand::Rng) -> CoeffTensor {
    use rand_distr::StandardNormal;
    let all: Vec<_> = index_set(m, n).collect();
    let mut t = CoeffTensor::zero(m, n);
    for _ in 0..entries {
        let idx = all[rng.gen_range(0..all.len())].clone();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        let prev = t.coeff(&idx);
        t.set(idx, prev + Complex64::new(re, im)).unwrap();
    }
    t
}

/// Criterion 1: shuffle(L_P, m-1), the group average, and the polarization
/// formula agree entrywise within 1e-10 for m <= 5, n <= 4, 20 random
/// complex polynomials each.
#[test]
fn criterion_01_shuffle_symmetrization_identity() {
    let tol = 1e-10;
    let mut worst = 0.0f64;
    for m in 1..=5usize {
        for n in 1..=4usize {
            let mut rng = stream_rng(SEED, (100 * m + n) as u64);
            for _ in 0..20 {
                let p = HomPolynomial::random_gaussian(m, n, &mut rng);
                let lift = p.lift();
                let via_shuffle = shuffle(&lift, m - 1).unwrap();
                let via_group = symmetrize_average(&lift).unwrap();
                let via_polar = polarization_form(&p);
                let d1 = via_shuffle.max_abs_diff(&via_group).unwrap();
                let d2 = via_shuffle.max_abs_diff(&via_polar).unwrap();
                let d = d1.max(d2);
                worst = worst.max(d);
                assert!(d <= tol, "m={m} n={n}: deviation {d}");
            }
        }
    }
    announce(
        "criterion 1 (shuffle symmetrization identity)",
        format!("three routes agree entrywise; worst deviation {worst:.3e} <= 1e-10"),
    );
}

/// Criterion 2: S_k = T_k ... T_1 within 1e-12 for m <= 6 on random tensors,
/// with the shuffle law computed by exhaustive enumeration.
#[test]
fn criterion_02_composition_law() {
    let tol = 1e-12;
    let mut worst = 0.0f64;
    for m in 2..=6usize {
        let n = 3;
        let mut rng = stream_rng(SEED, 200 + m as u64);
        for _ in 0..5 {
            let l = random_tensor(m, n, 40, &mut rng);
            let mut stepped = l.clone();
            for k in 1..m {
                stepped = shuffle_step(&stepped, k).unwrap();
                let direct = shuffle(&l, k).unwrap();
                let d = direct.max_abs_diff(&stepped).unwrap();
                worst = worst.max(d);
                assert!(d <= tol, "m={m} k={k}: deviation {d}");
            }
        }
    }
    announce(
        "criterion 2 (composition law)",
        format!("S_k = T_k...T_1 exactly; worst deviation {worst:.3e} <= 1e-12"),
    );
}

/// Criterion 3: the coefficient recursion reproduces c_i(S_{k-1} L_P) for
/// every index and k (including the zero branch and the nondecreasing-tail
/// support property), within 1e-12, for m <= 5, n <= 4.
#[test]
fn criterion_03_coefficient_recursion() {
    let mut worst = 0.0f64;
    let mut checks = 0usize;
    for m in 2..=5usize {
        for n in 1..=4usize {
            let mut rng = stream_rng(SEED, (300 + 10 * m + n) as u64);
            for _ in 0..3 {
                let p = HomPolynomial::random_gaussian(m, n, &mut rng);
                let report = recursion_check(&p).unwrap();
                assert!(
                    report.pass,
                    "m={m} n={n}: counterexample {:?}",
                    report.counterexample
                );
                worst = worst.max(report.max_deviation);
                checks += report.checks;
            }
        }
    }
    announce(
        "criterion 3 (coefficient recursion)",
        format!("{checks} index checks, worst deviation {worst:.3e} <= 1e-12"),
    );
}

/// Criterion 4: the recursion-weight mask equals its factored form entrywise
/// for m <= 5, n <= 5, every k.
#[test]
fn criterion_04_mask_factorization() {
    let mut worst = 0.0f64;
    for m in 2..=5usize {
        for n in 1..=5usize {
            for k in 1..m {
                let direct = Mask::recursion_weight(m, n, k).unwrap();
                let factored = Mask::recursion_weight_factored(m, n, k).unwrap();
                let d = direct.max_abs_diff(&factored).unwrap();
                worst = worst.max(d);
                assert!(d <= 1e-12, "m={m} n={n} k={k}: deviation {d}");
            }
        }
    }
    announce(
        "criterion 4 (mask factorization)",
        format!("entrywise agreement, worst deviation {worst:.3e}"),
    );
}

/// Criterion 5: the final shuffle law is uniform within 1e-12 for m <= 7.
#[test]
fn criterion_05_equidistribution() {
    for m in 2..=7usize {
        let d = fy_distribution(m, m - 1).unwrap();
        let mfact: usize = (1..=m).product();
        assert_eq!(d.support_len(), mfact, "support at m={m}");
        let uniform = 1.0 / mfact as f64;
        for (sigma, p) in d.iter() {
            assert!(
                (p - uniform).abs() <= 1e-12,
                "m={m}: P({sigma:?}) = {p} vs {uniform}"
            );
        }
    }
    announce(
        "criterion 5 (equidistribution)",
        "final shuffle law uniform within 1e-12 for m = 2..7".into(),
    );
}

/// Criterion 6: sup |x_1..x_m| over the l_p ball equals m^{-m/p} within 1e-6
/// for m <= 5, p in {1, 1.5, 2, 3}; the product ratio reports m^{m/p} within
/// 1e-5.
#[test]
fn criterion_06_product_polynomial_closed_form() {
    let params = SearchParams::with_seed(SEED);
    let mut worst_sup = 0.0f64;
    let mut worst_ratio = 0.0f64;
    for m in 1..=5usize {
        let poly = HomPolynomial::product(m);
        for p in [1.0f64, 1.5, 2.0, 3.0] {
            let ball = BallSpec::new(p).unwrap();
            let est = sup_polynomial(&poly, &ball, &params);
            let expect = (m as f64).powf(-(m as f64) / p);
            let err = (est.value - expect).abs();
            worst_sup = worst_sup.max(err);
            assert!(err <= 1e-6, "sup at m={m} p={p}: err {err}");

            let ratio = product_poly_ratio(m, p, &params).unwrap();
            let expect_ratio = (m as f64).powf(m as f64 / p);
            let rerr = (ratio.report.value - expect_ratio).abs();
            worst_ratio = worst_ratio.max(rerr);
            assert!(rerr <= 1e-5, "ratio at m={m} p={p}: err {rerr}");
            // The estimators confirm both closed forms.
            assert!((ratio.numerator.value - 1.0).abs() <= 1e-9);
            assert!((ratio.denominator.value - expect).abs() <= 1e-6);
        }
    }
    announce(
        "criterion 6 (product polynomial closed forms)",
        format!("worst sup error {worst_sup:.3e} <= 1e-6, worst ratio error {worst_ratio:.3e} <= 1e-5"),
    );
}

/// Criterion 7: at n = 64 with 10^4 samples, I1 - CI <= pi and
/// I2 + CI >= ln 64 - pi at the 99% level; and the m = 2 ratio statistic
/// increases over n in {32, 64, 128}.
#[test]
fn criterion_07_bourgain_inequalities() {
    let pi = std::f64::consts::PI;
    let (i1, i2) = bourgain_integrals(64, 10_000, SEED, 1).unwrap();
    assert!(
        i1.value - i1.ci_halfwidth <= pi,
        "I1 = {} (ci {})",
        i1.value,
        i1.ci_halfwidth
    );
    let target = 64f64.ln() - pi;
    assert!(
        i2.value + i2.ci_halfwidth >= target,
        "I2 = {} (ci {}) vs {target}",
        i2.value,
        i2.ci_halfwidth
    );

    let mut ratios = Vec::new();
    for n in [32usize, 64, 128] {
        let (a, b) = bourgain_integrals(n, 1000, SEED, 1).unwrap();
        assert!(a.value - a.ci_halfwidth <= pi, "I1 at n={n}");
        assert!(
            b.value + b.ci_halfwidth >= (n as f64).ln() - pi,
            "I2 at n={n}: {} vs {}",
            b.value,
            (n as f64).ln() - pi
        );
        ratios.push(b.value / a.value);
    }
    assert!(
        ratios[0] < ratios[1] && ratios[1] < ratios[2],
        "ratio trend {ratios:?}"
    );
    announce(
        "criterion 7 (torus integrals at desk scale)",
        format!(
            "I1 = {:.4} <= pi, I2 = {:.4} >= {target:.4}; ratio trend {:.3} < {:.3} < {:.3}",
            i1.value, i2.value, ratios[0], ratios[1], ratios[2]
        ),
    );
}

/// Criterion 8: the mu search on the ordered-slots mask reaches 1.4 at
/// n = 32 (m = 2, p = inf) and never exceeds the log2(2n) upper bound.
#[test]
fn criterion_08_mu_trend() {
    let ball = BallSpec::infinity();
    let params = SearchParams::with_seed(SEED);
    let mut values = Vec::new();
    for n in [8usize, 32] {
        let mask = Mask::triangle(2, n, 1, 2).unwrap();
        let est = mu_lower_bound(&mask, &ball, 4, &params).unwrap();
        let upper = mu_upper_bound_triangle(n);
        assert!(
            est.value <= upper,
            "n={n}: search {} exceeds upper bound {upper}",
            est.value
        );
        values.push(est.value);
    }
    assert!(
        values[1] >= 1.4,
        "mu lower bound at n=32 is {} < 1.4",
        values[1]
    );
    announce(
        "criterion 8 (mu sandwich)",
        format!(
            "search lower bounds {:.4} (n=8), {:.4} (n=32) >= 1.4, both below log2(2n)",
            values[0], values[1]
        ),
    );
}

/// Criterion 9: the per-step certificate chain holds with slack 0.05 on 10
/// random polynomials at m = 3, n = 4, p = inf.
#[test]
fn criterion_09_chain_sanity() {
    let ball = BallSpec::infinity();
    let params = SearchParams {
        restarts: 64,
        ..SearchParams::with_seed(SEED)
    };
    let mut rng = stream_rng(SEED, 900);
    for trial in 0..10 {
        let p = HomPolynomial::random_gaussian(3, 4, &mut rng);
        let report = chain_check(&p, &ball, &params, 0.05).unwrap();
        assert!(report.consistent, "trial {trial}: {:#?}", report.chain);
    }
    announce(
        "criterion 9 (chain sanity)",
        "per-step and endpoint inequalities hold with slack 0.05 on 10 random polynomials".into(),
    );
}

/// Criterion 10: every subcommand with a fixed seed in single-threaded mode
/// produces byte-identical output across two runs.
#[test]
fn criterion_10_reproducibility() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_polarlab");
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["verify", "--m", "3", "--n", "3", "--seed", "7"],
        vec![
            "bounds", "--m", "2,3", "--n", "8", "--p", "1", "--samples", "64", "--restarts", "8",
            "--seed", "7",
        ],
        vec!["shuffle-table", "--m", "4"],
        vec!["mu", "--m", "2", "--n", "8", "--trials", "2", "--restarts", "8", "--seed", "7"],
        vec![
            "bourgain", "--m", "2", "--n", "8", "--samples", "50", "--seed", "7",
        ],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();

    // estimate-norm needs a polynomial file.
    let poly_path = dir.path().join("poly.json");
    std::fs::write(
        &poly_path,
        r#"[{"index":[1,2],"re":1.0,"im":0.0},{"index":[2,2],"re":-0.5,"im":0.25}]"#,
    )
    .unwrap();
    let mut all = cases;
    all.push(
        [
            "estimate-norm",
            "--poly",
            poly_path.to_str().unwrap(),
            "--target",
            "mform",
            "--p",
            "inf",
            "--restarts",
            "8",
            "--seed",
            "7",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );

    for (idx, args) in all.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("out-{idx}-{run}.json"));
            let status = Command::new(bin)
                .args(args)
                .args(["--format", "json", "--threads", "1", "--out"])
                .arg(&path)
                .status()
                .unwrap();
            assert!(status.success(), "{args:?} failed");
            outputs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(
            outputs[0], outputs[1],
            "subcommand {:?} not byte-identical",
            args[0]
        );
    }
    announce(
        "criterion 10 (reproducibility)",
        "all six subcommands byte-identical across reruns with fixed seed".into(),
    );
}
