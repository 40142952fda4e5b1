//! Exact n-point functions from the Gaussian-moment pipeline.

use psi_npoint::buryak::{p_n_definition, p_n_symmetric};
use psi_npoint::{f_bur_series, intersection_number};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p2 = p_n_symmetric(2, 4)?;
    println!("P_2 = {p2}");
    println!("pipelines agree at n=3: {}", p_n_definition(3, 6)? == p_n_symmetric(3, 6)?);

    for (n, degree) in [(1, 7), (2, 3), (3, 3)] {
        println!("F_{n} to degree {degree}:");
        print!("{}", f_bur_series(n, degree)?);
    }

    println!("<tau_2 tau_3>_2 = {}", intersection_number(2, &[2, 3])?);
    Ok(())
}
