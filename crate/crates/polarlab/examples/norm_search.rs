//! Certified sup estimation over l_p balls, against known closed forms.
//!
//! For the product polynomial P = x1 .. xm the closed forms are
//! `sup |P| = m^{-m/p}` (at the Lagrange point m^{-1/p}(1, .., 1)) and
//! `sup |L_P| = 1` (at the canonical basis tuple), so the ratio is m^{m/p}.
//!
//! Run: `cargo run --release --example norm_search`

use polarlab::bounds::product_poly_ratio;
use polarlab::estimate::{sup_mform, sup_polynomial, SearchParams};
use polarlab::lp::BallSpec;
use polarlab::report::Witness;
use polarlab::tensor::HomPolynomial;

fn main() -> polarlab::Result<()> {
    let params = SearchParams::with_seed(polarlab::DEFAULT_SEED);

    println!("m  p     sup|P| est      closed form    sup|L_P|   ratio (= m^(m/p))");
    for m in 2..=4usize {
        let poly = HomPolynomial::product(m);
        for p in [1.0, 1.5, 2.0, 3.0] {
            let ball = BallSpec::new(p)?;
            let sup_p = sup_polynomial(&poly, &ball, &params);
            let sup_l = sup_mform(&poly.lift(), &ball, &params);
            let ratio = product_poly_ratio(m, p, &params)?;
            println!(
                "{m}  {p:<4} {:<14.10} {:<14.10} {:<10.6} {:<.6}",
                sup_p.value,
                (m as f64).powf(-(m as f64) / p),
                sup_l.value,
                ratio.report.value,
            );
        }
    }

    // Witnesses are feasible points achieving the reported values.
    let poly = HomPolynomial::product(3);
    let ball = BallSpec::new(2.0)?;
    let est = sup_polynomial(&poly, &ball, &params);
    if let Some(Witness::Point(x)) = &est.witness {
        println!(
            "\nwitness for sup|x1 x2 x3| on the l_2 ball: |x| = {:?}",
            x.iter().map(|z| z.norm()).collect::<Vec<_>>()
        );
        println!(
            "in ball: {}, re-evaluates to {:.12} (reported {:.12})",
            ball.contains(x, 1e-12),
            poly.eval(x)?.norm(),
            est.value
        );
    }
    Ok(())
}
