//! The lift and its symmetrizations, end to end on a small polynomial.
//!
//! Builds P(x) = x1^2 + 2 x1 x2 on C^2, lifts it to the non-symmetric
//! bilinear form L_P, and produces the symmetric form B three independent
//! ways: the sign-averaged polarization formula, the full group average of
//! L_P, and the final Fisher-Yates shuffle S_{m-1} L_P.
//!
//! Run: `cargo run --example polarization_basics`

use num_complex::Complex64;
use polarlab::index::MultiIndex;
use polarlab::shuffle::{polarization_form, shuffle, symmetrize_average};
use polarlab::tensor::{CoeffTensor, HomPolynomial};

fn show(label: &str, t: &CoeffTensor) {
    println!("{label}:");
    for (i, c) in t.iter() {
        println!("  {:?} -> {:.6} + {:.6}i", i.entries(), c.re, c.im);
    }
}

fn main() -> polarlab::Result<()> {
    let mut p = HomPolynomial::zero(2, 2);
    p.set(MultiIndex::new(vec![1, 1], 2)?, Complex64::new(1.0, 0.0))?;
    p.set(MultiIndex::new(vec![1, 2], 2)?, Complex64::new(2.0, 0.0))?;

    let x = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
    println!("P(1, 2) = {}", p.eval(&x)?.re);

    let lift = p.lift();
    show("L_P coefficients (nondecreasing indices only)", &lift);

    // The diagonal identity L_P(x, x) = P(x).
    let diag = lift.eval(&[x.to_vec(), x.to_vec()])?;
    println!("L_P(x, x) = {} (same point)", diag.re);

    // Three routes to the unique symmetric form B.
    let b_polar = polarization_form(&p);
    let b_group = symmetrize_average(&lift)?;
    let b_shuffle = shuffle(&lift, 1)?;
    show("B via sign-averaged polarization", &b_polar);
    show("B via group average", &b_group);
    show("B via Fisher-Yates shuffle S_1", &b_shuffle);

    println!(
        "max |polarization - group average|   = {:.2e}",
        b_polar.max_abs_diff(&b_group).unwrap()
    );
    println!(
        "max |polarization - shuffle route|   = {:.2e}",
        b_polar.max_abs_diff(&b_shuffle).unwrap()
    );

    // Round trip: restricting B (or L_P) to the diagonal recovers P.
    let back = b_shuffle.diagonal_restriction();
    println!(
        "diagonal restriction recovers P: {}",
        back.approx_eq(&p, 1e-12)
    );
    Ok(())
}
