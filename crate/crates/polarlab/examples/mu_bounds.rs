//! The mu-norm sandwich for the ordered-slots mask on the sup-norm ball.
//!
//! The mu-norm of a mask A is the smallest constant with
//! `sup |A * L| <= mu sup |L|` over all bilinear forms. For the equal-slots
//! mask D it equals 1; for the ordered-slots mask T it is bounded above by
//! log2(2n) and grows logarithmically, which the search lower bound tracks
//! from below.
//!
//! Run: `cargo run --release --example mu_bounds`

use polarlab::estimate::{mu_lower_bound, mu_upper_bound_triangle, SearchParams};
use polarlab::lp::BallSpec;
use polarlab::mask::Mask;

fn main() -> polarlab::Result<()> {
    let ball = BallSpec::infinity();
    let params = SearchParams::with_seed(polarlab::DEFAULT_SEED);

    println!("n    search lower   log2(2n) upper");
    for n in [4usize, 8, 16, 32] {
        let mask = Mask::triangle(2, n, 1, 2)?;
        let est = mu_lower_bound(&mask, &ball, 4, &params)?;
        println!(
            "{n:<4} {:<14.4} {:<14.4}",
            est.value,
            mu_upper_bound_triangle(n)
        );
    }

    // The equal-slots mask does not inflate anything.
    let d = Mask::diagonal(2, 16, 1, 2)?;
    let est = mu_lower_bound(&d, &ball, 4, &params)?;
    println!("\nequal-slots mask at n = 16: search ratio {:.4} (mu = 1)", est.value);
    println!("best candidate: {}", est.method);
    Ok(())
}
