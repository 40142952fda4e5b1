//! Truncated series arithmetic and certified exact division.

use psi_npoint::exact::{exact_divide, series_exp, sum_x, zeta_series, BilinearForm, Divisor};
use psi_npoint::exact::{rat, TruncatedSeries};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 2;
    let cap = 6;

    // exp((x1 + x2)^3 / 24) to degree 6
    let s = sum_x(n);
    let cube = s.mul(&s, cap)?.mul(&s, cap)?.scale(&rat(1, 24));
    println!("exp(S^3/24) = {}", series_exp(&cube, cap)?);

    // zeta(x1) = 2 sinh(x1 / 2)
    println!("zeta(x1) = {}", zeta_series(&TruncatedSeries::x(n, 1), 5)?);

    // B_12 * (1 + x1) divided back by B_12
    let b = BilinearForm::new(1, 2)?;
    let product = b.to_series(n)?.mul(&TruncatedSeries::one(n, cap).add(&TruncatedSeries::x(n, 1))?, cap)?;
    let division = exact_divide(&product, &Divisor::Bilinear(b))?;
    println!("({product}) / {b} = {}", division.quotient);
    println!("remainder zero: {}", division.remainder_zero());
    Ok(())
}
