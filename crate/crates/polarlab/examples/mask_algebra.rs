//! The Schur mask algebra: D, T, the recursion weight R_k, its
//! factorization, and the coefficient recursion it encodes.
//!
//! Run: `cargo run --example mask_algebra`

use polarlab::estimate::stream_rng;
use polarlab::index::{index_set, MultiIndex};
use polarlab::mask::{schur, Mask};
use polarlab::shuffle::{recursion_check, shuffle};
use polarlab::tensor::HomPolynomial;

fn main() -> polarlab::Result<()> {
    let (m, n) = (3, 3);

    // R_1 entry by entry, next to its factored form.
    let direct = Mask::recursion_weight(m, n, 1)?;
    let factored = Mask::recursion_weight_factored(m, n, 1)?;
    println!("R_1 on I(3, 3) (zero rows omitted):");
    for i in index_set(m, n) {
        let v = direct.entry(&i).re;
        if v != 0.0 {
            println!("  {:?} -> {v:.4}", i.entries());
        }
    }
    println!(
        "max |direct - factored| over I(m, n) = {:.2e}",
        direct.max_abs_diff(&factored)?
    );

    // A specific weighted entry: i = (1, 1, 2) gets 3 (1 + 1/2 - 1) = 3/2.
    let i = MultiIndex::new(vec![1, 1, 2], n)?;
    println!("R_1 at (1,1,2) = {} (expected 1.5)", direct.entry(&i).re);

    // The recursion S_{k-1} L_P = R_k * S_k L_P on a random polynomial.
    let mut rng = stream_rng(polarlab::DEFAULT_SEED, 1);
    let p = HomPolynomial::random_gaussian(m, n, &mut rng);
    let lift = p.lift();
    for k in 1..m {
        let lhs = shuffle(&lift, k - 1)?;
        let rhs = schur(&Mask::recursion_weight(m, n, k)?, &shuffle(&lift, k)?)?;
        println!(
            "k = {k}: max |S_(k-1) L_P - R_k * S_k L_P| = {:.2e}",
            lhs.max_abs_diff(&rhs).unwrap()
        );
    }

    // Exhaustive index-by-index audit, including the zero branch and the
    // nondecreasing-tail support property.
    let report = recursion_check(&p)?;
    println!(
        "recursion check: pass = {}, {} checks, worst deviation {:.2e}",
        report.pass, report.checks, report.max_deviation
    );
    Ok(())
}
