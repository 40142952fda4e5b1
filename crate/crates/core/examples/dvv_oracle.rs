//! Intersection numbers from the Virasoro recursion, with identity checks.

use psi_npoint::dvv::{CorrelatorTable, Strategy};
use psi_npoint::exact::render_scalar;

fn main() {
    let fast = CorrelatorTable::new(Strategy::FastPaths);
    let pure = CorrelatorTable::new(Strategy::PureDvv);
    for (g, ds) in [(0, vec![0, 0, 0]), (1, vec![1]), (2, vec![4]), (3, vec![7]), (2, vec![2, 3]), (1, vec![1, 1, 1])] {
        let a = fast.correlator(g, &ds);
        let b = pure.correlator(g, &ds);
        println!("<{ds:?}>_{g} = {} (strategies agree: {})", render_scalar(&a), a == b);
    }

    let string = pure.string_identity_check(1, &[2, 2]);
    println!("string equation on <tau_0 tau_2 tau_2>_1: {} = {}", string.lhs, string.rhs);
    let dilaton = pure.dilaton_identity_check(2, &[4]);
    println!("dilaton equation on <tau_1 tau_4>_2: {} = {}", dilaton.lhs, dilaton.rhs);
    if let Some(kdv) = pure.kdv_first_equation_check(&[3], 8) {
        println!("kdv at tau_3: {} = {}", kdv.lhs, kdv.rhs);
    }
    println!("memoised entries: {}", pure.len());
}
