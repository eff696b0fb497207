//! Torus integrals of the operator-valued quadratic form built from
//! `v_ij = (1/(i-j)) e_i (x) e_j + (1/(j-i)) e_j (x) e_i`.
//!
//! The coupled integral I1 stays below pi (the integrand is the norm of a
//! diagonally rotated kernel, constant in x), while the decoupled integral
//! I2 grows like log n; their ratio is the lower-bound statistic for the
//! lift constant at p = inf, extended to higher even arity by the
//! disjoint-block construction.
//!
//! Run: `cargo run --release --example bourgain`

use polarlab::bounds::{bourgain_integrals, bourgain_lower_bound, bourgain_target};

fn main() -> polarlab::Result<()> {
    let seed = polarlab::DEFAULT_SEED;
    let samples = 2000;

    println!("n     I1 (<= pi)      I2 (>= ln n - pi)   ratio");
    for n in [16usize, 32, 64, 128] {
        let (i1, i2) = bourgain_integrals(n, samples, seed, 1)?;
        println!(
            "{n:<5} {:.4} ± {:.4} {:.4} ± {:.4}     {:.4}",
            i1.value,
            i1.ci_halfwidth,
            i2.value,
            i2.ci_halfwidth,
            i2.value / i1.value
        );
    }

    println!("\nblock ratio statistic for even arity at n = 64:");
    for m in [2usize, 4] {
        let lb = bourgain_lower_bound(m, 64, samples, seed, 1)?;
        println!(
            "m = {m}: statistic {:.4} ± {:.4}   closed-form target {:.4}",
            lb.value,
            lb.ci_halfwidth,
            bourgain_target(m, 64)
        );
    }
    Ok(())
}
