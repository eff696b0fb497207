//! Seeded Monte Carlo integration over the torus `T^n`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::{Direction, EstimateReport};

/// Two-sided 99% normal quantile used for every confidence interval.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// A stream of uniform points of `T^n`: every coordinate is an independent
/// unimodular complex scalar `exp(i theta)`. Deterministic for a fixed
/// `(seed, stream)` pair.
#[derive(Debug, Clone)]
pub struct TorusSampler {
    n: usize,
    seed: u64,
    rng: ChaCha8Rng,
}

impl TorusSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        Self::with_stream(n, seed, 0)
    }

    /// An independent stream derived from the same seed (for parallel or
    /// per-block use).
    pub fn with_stream(n: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { n, seed, rng }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample(&mut self) -> Vec<Complex64> {
        (0..self.n)
            .map(|_| {
                let theta = self.rng.gen::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(1.0, theta)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, v: f64) {
        self.count += 1;
        let delta = v - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (v - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * self.count as f64 * other.count as f64 / count as f64;
        Welford { count, mean, m2 }
    }

    fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        }
    }
}

/// Statistical mean of `integrand` over `T^n` with a 99% confidence interval.
///
/// Sampling is split into `threads` contiguous chunks; chunk `t` draws from
/// the sampler stream `stream_base + t`. The result is deterministic for a
/// fixed seed and fixed chunking, and single-threaded runs (`threads = 1`)
/// consume stream `stream_base` sequentially. A non-finite integrand value
/// aborts with the offending sample index.
pub fn torus_expectation_streamed<F>(
    integrand: F,
    n: usize,
    seed: u64,
    stream_base: u64,
    samples: u64,
    threads: usize,
    method: impl Into<String>,
) -> Result<EstimateReport>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let threads = threads.max(1).min(samples as usize);

    let chunk_stats = if threads == 1 {
        vec![run_chunk(&integrand, n, seed, stream_base, 0, samples)?]
    } else {
        let per = samples / threads as u64;
        let rem = samples % threads as u64;
        let mut plan = Vec::with_capacity(threads);
        let mut offset = 0u64;
        for t in 0..threads as u64 {
            let count = per + if t < rem { 1 } else { 0 };
            plan.push((t, offset, count));
            offset += count;
        }
        let results: Vec<Result<Welford>> = std::thread::scope(|scope| {
            let handles: Vec<_> = plan
                .iter()
                .map(|&(t, offset, count)| {
                    let integrand = &integrand;
                    scope.spawn(move || run_chunk(integrand, n, seed, stream_base + t, offset, count))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("chunk panicked")).collect()
        });
        let mut stats = Vec::with_capacity(results.len());
        for r in results {
            stats.push(r?);
        }
        stats
    };

    let total = chunk_stats.into_iter().fold(Welford::default(), Welford::merge);
    let ci = Z_99 * (total.variance() / total.count as f64).sqrt();
    Ok(EstimateReport {
        value: total.mean,
        direction: Direction::StatisticalMean,
        witness: None,
        samples: total.count,
        ci_halfwidth: ci,
        seed,
        method: method.into(),
    })
}

fn run_chunk<F>(
    integrand: &F,
    n: usize,
    seed: u64,
    stream: u64,
    index_offset: u64,
    count: u64,
) -> Result<Welford>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    let mut sampler = TorusSampler::with_stream(n, seed, stream);
    let mut acc = Welford::default();
    for k in 0..count {
        let x = sampler.sample();
        let v = integrand(&x);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample {
                sample: index_offset + k,
                value: v,
            });
        }
        acc.push(v);
    }
    Ok(acc)
}

/// `torus_expectation_streamed` on the default stream, single-threaded.
pub fn torus_expectation<F>(
    integrand: F,
    n: usize,
    seed: u64,
    samples: u64,
) -> Result<EstimateReport>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    torus_expectation_streamed(integrand, n, seed, 0, samples, 1, "torus-monte-carlo")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_are_unimodular_and_deterministic() {
        let mut a = TorusSampler::new(6, 99);
        let mut b = TorusSampler::new(6, 99);
        for _ in 0..10 {
            let xa = a.sample();
            let xb = b.sample();
            assert_eq!(xa, xb);
            for z in &xa {
                assert!((z.norm() - 1.0).abs() < 1e-15);
            }
        }
        let mut c = TorusSampler::with_stream(6, 99, 1);
        assert_ne!(a.sample(), c.sample());
    }

    #[test]
    fn constant_integrand_has_zero_ci() {
        let r = torus_expectation(|_| 1.0, 3, 0, 1000).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.ci_halfwidth, 0.0);
        assert_eq!(r.samples, 1000);
    }

    #[test]
    fn modulus_of_coordinate_is_one() {
        let r = torus_expectation(|x| x[0].norm(), 4, 7, 500).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_coordinate_sum_matches_quadrature_oracle() {
        // E |x1 + x2| = E |1 + e^{i theta}| computed by Simpson quadrature.
        let oracle = {
            let f = |t: f64| (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, t)).norm();
            let steps = 20_000usize;
            let h = std::f64::consts::TAU / steps as f64;
            let mut acc = f(0.0) + f(std::f64::consts::TAU);
            for k in 1..steps {
                acc += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
            }
            acc * h / 3.0 / std::f64::consts::TAU
        };
        assert!((oracle - 4.0 / std::f64::consts::PI).abs() < 1e-10);

        let r = torus_expectation(|x| (x[0] + x[1]).norm(), 2, 20240, 100_000).unwrap();
        assert!(
            (r.value - oracle).abs() <= r.ci_halfwidth,
            "mc {} vs oracle {oracle} (ci {})",
            r.value,
            r.ci_halfwidth
        );
    }

    #[test]
    fn phase_rotation_leaves_estimate_within_ci() {
        let plain = torus_expectation(|x| (x[0] + x[1]).norm(), 2, 5, 20_000).unwrap();
        let a = Complex64::from_polar(1.0, 0.9);
        let b = Complex64::from_polar(1.0, -2.3);
        let rotated =
            torus_expectation(move |x| (a * x[0] + b * x[1]).norm(), 2, 5, 20_000).unwrap();
        assert!((plain.value - rotated.value).abs() <= plain.ci_halfwidth + rotated.ci_halfwidth);
    }

    #[test]
    fn non_finite_integrand_aborts_with_sample_index() {
        let r = torus_expectation(
            |x| if x[0].re > 0.0 { f64::NAN } else { 1.0 },
            1,
            3,
            100,
        );
        assert!(matches!(r, Err(Error::NonFiniteSample { .. })));
    }

    #[test]
    fn needs_two_samples() {
        assert!(torus_expectation(|_| 1.0, 1, 0, 1).is_err());
    }

    #[test]
    fn chunked_runs_are_deterministic() {
        let f = |x: &[Complex64]| (x[0] + x[1] * x[1]).norm();
        let a = torus_expectation_streamed(f, 2, 11, 0, 999, 4, "t").unwrap();
        let b = torus_expectation_streamed(f, 2, 11, 0, 999, 4, "t").unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.ci_halfwidth, b.ci_halfwidth);
    }
}
