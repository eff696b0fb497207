//! The upper-bound certificate chain, walked step by step on one polynomial.
//!
//! Each shuffle step can inflate the sup by at most
//! `2 (m-k+1) log2(2n)`, and the endpoint comparison against the symmetric
//! form costs a factor e^m, which chains into the closed-form certificate
//! `2^{m-1} e^m m! log2(2n)^{m-1}`.
//!
//! Run: `cargo run --release --example certificate_chain`

use polarlab::bounds::{chain_check, upper_certificate};
use polarlab::estimate::{stream_rng, SearchParams};
use polarlab::lp::BallSpec;
use polarlab::tensor::HomPolynomial;

fn main() -> polarlab::Result<()> {
    let params = SearchParams {
        restarts: 64,
        ..SearchParams::with_seed(polarlab::DEFAULT_SEED)
    };
    let mut rng = stream_rng(polarlab::DEFAULT_SEED, 77);
    let p = HomPolynomial::random_gaussian(3, 4, &mut rng);

    let report = chain_check(&p, &BallSpec::infinity(), &params, 0.05)?;
    println!("random 3-homogeneous polynomial on C^4, sup-norm ball");
    for link in &report.chain {
        println!(
            "  [{}] {}: lhs {:.4} <= {:.4} (factor {:.2})",
            if link.holds { "ok" } else { "VIOLATED" },
            link.description,
            link.lhs,
            link.rhs,
            link.factor
        );
    }
    println!(
        "observed sup|L_P| / sup|P| = {:.4}, certificate {:.4}",
        report.lower.value, report.upper
    );

    println!("\nclosed-form certificates (value, display shape m^m ln(n)^(m-1)):");
    for m in 1..=5usize {
        for n in [8usize, 64, 1024] {
            let c = upper_certificate(m, n)?;
            println!("  m={m} n={n:<5} value {:>14.4e}  shape {:>12.4e}", c.value, c.shape);
        }
    }
    Ok(())
}
