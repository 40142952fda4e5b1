//! Term-by-term comparison over cyclically ordered partitions.

use psi_npoint::combinatorics::cyclic_ordered_partitions;
use psi_npoint::numeric::{term_correspondence, NumericConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = NumericConfig::default();
    let x = [0.6, 0.9, 1.3];
    for comp in cyclic_ordered_partitions(x.len())? {
        let t = term_correspondence(&comp, &x, &cfg)?;
        println!(
            "{:>10}  gaussian {:+.10e}  orthant {:+.10e}  rel diff {:.1e}",
            comp.to_string(),
            t.gaussian_side.value.re,
            t.orthant_side.value.re,
            t.rel_diff()
        );
    }
    Ok(())
}
