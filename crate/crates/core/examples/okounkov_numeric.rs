//! Numeric n-point functions on both sides of the main identity.

use psi_npoint::numeric::{f_bur_numeric, f_ok_numeric, NumericConfig, QuadratureRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = NumericConfig::default();
    for x in [vec![1.0], vec![0.5, 0.9], vec![0.4, 0.7, 1.1]] {
        let ok = f_ok_numeric(&x, &cfg)?;
        let bur = f_bur_numeric(&x, &cfg)?;
        println!(
            "x={x:?}: orthant {:.12} (err {:.1e}), gaussian {:.12} (err {:.1e})",
            ok.re(),
            ok.est_err,
            bur.re(),
            bur.est_err
        );
    }

    let hermite = NumericConfig { rule: QuadratureRule::GaussHermite, nodes_per_axis: 80, ..cfg };
    println!("gauss-hermite at (0.5, 0.9): {:.8}", f_bur_numeric(&[0.5, 0.9], &hermite)?.re());
    Ok(())
}
