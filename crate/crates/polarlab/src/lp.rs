//! The l_p geometry of C^n: norms, unit balls, and dual-norm witnesses.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of an l_p norm. Infinity is a distinguished variant, not a large
/// finite p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(num) => {
                let p = num.as_f64().ok_or_else(|| DeError::custom("bad exponent"))?;
                Ok(Exponent::Finite(p))
            }
            serde_json::Value::String(s) if s == "inf" => Ok(Exponent::Infinity),
            other => Err(DeError::custom(format!("bad exponent: {other}"))),
        }
    }
}

/// Selects the l_p unit ball of C^n, 1 <= p <= inf.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub p: Exponent,
}

impl BallSpec {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        if p.is_infinite() {
            return Ok(Self::infinity());
        }
        Ok(Self {
            p: Exponent::Finite(p),
        })
    }

    pub fn infinity() -> Self {
        Self {
            p: Exponent::Infinity,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.p.is_infinite()
    }

    pub fn norm(&self, x: &[Complex64]) -> f64 {
        match self.p {
            Exponent::Infinity => x.iter().map(|z| z.norm()).fold(0.0, f64::max),
            Exponent::Finite(p) => lp_norm_finite(x, p),
        }
    }

    /// Whether `x` lies in the (closed) unit ball, up to `slack`.
    pub fn contains(&self, x: &[Complex64], slack: f64) -> bool {
        self.norm(x) <= 1.0 + slack
    }

    /// Rescales `x` onto the unit sphere (no-op direction for the zero vector).
    pub fn normalize(&self, x: &mut [Complex64]) {
        let nrm = self.norm(x);
        if nrm > 0.0 {
            for z in x.iter_mut() {
                *z /= nrm;
            }
        }
    }

    /// A maximizer of `|<g, x>|` over the unit ball, together with the optimal
    /// value (the dual norm of `g`).
    ///
    /// For p = inf the witness is the phase alignment giving the l1 mass of
    /// `g`; for p = 1 it is a phase-aligned basis vector at the largest entry;
    /// in between it is the standard dual-exponent profile. Zero entries of
    /// `g` get coordinate 1 (p = inf) or 0 (p finite) so ties stay
    /// deterministic.
    pub fn dual_witness(&self, g: &[Complex64]) -> (Vec<Complex64>, f64) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match self.p {
            Exponent::Infinity => {
                let value: f64 = g.iter().map(|z| z.norm()).sum();
                let x = g
                    .iter()
                    .map(|z| if z.norm() == 0.0 { one } else { z.conj() / z.norm() })
                    .collect();
                (x, value)
            }
            Exponent::Finite(p) if p == 1.0 => {
                let mut best = 0usize;
                let mut best_val = -1.0f64;
                for (k, z) in g.iter().enumerate() {
                    if z.norm() > best_val {
                        best_val = z.norm();
                        best = k;
                    }
                }
                let mut x = vec![zero; g.len()];
                if best_val > 0.0 {
                    x[best] = g[best].conj() / g[best].norm();
                } else {
                    best_val = 0.0;
                    x[best] = one;
                }
                (x, best_val)
            }
            Exponent::Finite(p) => {
                let q = p / (p - 1.0);
                let dual: f64 = lp_norm_finite(g, q);
                if dual == 0.0 {
                    let mut x = vec![zero; g.len()];
                    x[0] = one;
                    return (x, 0.0);
                }
                let x = g
                    .iter()
                    .map(|z| {
                        if z.norm() == 0.0 {
                            zero
                        } else {
                            (z.conj() / z.norm()) * (z.norm() / dual).powf(q / p)
                        }
                    })
                    .collect();
                (x, dual)
            }
        }
    }
}

fn lp_norm_finite(x: &[Complex64], p: f64) -> f64 {
    if p == 1.0 {
        return x.iter().map(|z| z.norm()).sum();
    }
    if p == 2.0 {
        return x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = x.iter().map(|z| (z.norm() / scale).powf(p)).sum();
    scale * sum.powf(1.0 / p)
}

/// Standard l_p norm of a complex vector; errors on p < 1.
pub fn lp_norm(x: &[Complex64], p: f64) -> Result<f64> {
    let ball = BallSpec::new(p)?;
    Ok(ball.norm(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_examples() {
        let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
        for p in [1.0, 1.5, 2.0, 7.0] {
            assert!((lp_norm(&e1, p).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((BallSpec::infinity().norm(&e1) - 1.0).abs() < 1e-15);

        // All-ones in C^m has norm m^{1/p}.
        for m in 1..=5 {
            let ones = vec![c(1.0, 0.0); m];
            for p in [1.0, 1.5, 2.0, 3.0] {
                let expect = (m as f64).powf(1.0 / p);
                assert!((lp_norm(&ones, p).unwrap() - expect).abs() < 1e-12);
            }
        }

        let v = [c(3.0, 0.0), c(4.0, 0.0)];
        assert!((lp_norm(&v, 2.0).unwrap() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn p_below_one_rejected() {
        assert!(matches!(
            lp_norm(&[c(1.0, 0.0)], 0.5),
            Err(Error::InvalidExponent(_))
        ));
        assert!(BallSpec::new(f64::NAN).is_err());
    }

    #[test]
    fn infinity_is_distinguished() {
        let b = BallSpec::new(f64::INFINITY).unwrap();
        assert!(b.is_infinite());
        assert_eq!(b, BallSpec::infinity());
    }

    #[test]
    fn dual_witness_achieves_dual_norm() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let ball = BallSpec::new(p).unwrap();
            for _ in 0..50 {
                let g: Vec<Complex64> = (0..4)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let (x, value) = ball.dual_witness(&g);
                assert!(ball.norm(&x) <= 1.0 + 1e-12);
                let pairing: Complex64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
                assert!(
                    (pairing.norm() - value).abs() <= 1e-10 * (1.0 + value),
                    "p={p} pairing {} vs dual {}",
                    pairing.norm(),
                    value
                );
            }
        }
    }

    #[test]
    fn dual_witness_zero_functional() {
        let ball = BallSpec::new(2.0).unwrap();
        let (x, value) = ball.dual_witness(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(value, 0.0);
        assert!(ball.norm(&x) <= 1.0 + 1e-15);
    }

    #[test]
    fn exponent_serde_round_trip() {
        let fin = serde_json::to_string(&Exponent::Finite(1.5)).unwrap();
        assert_eq!(fin, "1.5");
        let inf = serde_json::to_string(&Exponent::Infinity).unwrap();
        assert_eq!(inf, "\"inf\"");
        let back: Exponent = serde_json::from_str(&inf).unwrap();
        assert!(back.is_infinite());
    }
}
