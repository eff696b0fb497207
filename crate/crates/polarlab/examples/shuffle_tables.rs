//! Partial-shuffle laws and the coefficient flow of the partial shuffles.
//!
//! Prints the distribution of the permutation after each Fisher-Yates step
//! for a 4-card deck, then follows the coefficients of S_k L_P for
//! P = x1 x2 x3 from the lift (k = 0) to full symmetry (k = 2).
//!
//! Run: `cargo run --example shuffle_tables`

use polarlab::perm::fy_distribution;
use polarlab::shuffle::shuffle;
use polarlab::tensor::HomPolynomial;

fn main() -> polarlab::Result<()> {
    let m = 4;
    for k in 1..m {
        let d = fy_distribution(m, k)?;
        println!(
            "law after {k} step(s): {} permutations, mass defect {:.1e}",
            d.support_len(),
            d.mass_defect()
        );
        for (sigma, prob) in d.iter() {
            let images: Vec<usize> = (1..=m).map(|u| sigma.apply(u)).collect();
            println!("  {images:?}  {prob:.6}");
        }
    }
    println!("(the last table is uniform: the deck is fully shuffled)\n");

    let p = HomPolynomial::product(3);
    let lift = p.lift();
    for k in 0..3 {
        let sk = shuffle(&lift, k)?;
        println!("S_{k} L_P for P = x1 x2 x3 ({} coefficients):", sk.support_len());
        for (i, c) in sk.iter() {
            println!("  {:?} -> {:.6}", i.entries(), c.re);
        }
    }
    Ok(())
}
