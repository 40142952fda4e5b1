//! Index sets: permutations, set partitions, cyclic compositions.

use psi_npoint::combinatorics::{
    cycle_c, cyclic_ordered_partitions, permutations, permutations_fixing_first, set_partitions, Permutation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    for p in permutations(n)? {
        println!("{p} sign {:+}", p.sign());
    }
    println!("fixing 1: {}", permutations_fixing_first(n)?.len());

    let partitions = set_partitions(4)?;
    println!("set partitions of 4: {}", partitions.len());
    for p in partitions.iter().take(5) {
        println!("  {p}");
    }

    let cyclic = cyclic_ordered_partitions(n)?;
    let shown: Vec<String> = cyclic.iter().map(ToString::to_string).collect();
    println!("cyclic compositions of {n}: {}", shown.join(" "));

    let c = cycle_c(2, 4)?;
    let sigma = Permutation::from_images(vec![2, 3, 1, 4])?;
    println!("{sigma} o {c} = {}", sigma.compose(&c)?);
    Ok(())
}
