//! Closed-form oracles, independent of the library's recursions, checked
//! against both exact pipelines.

use num::{BigInt, BigRational, One};
use psi_npoint::dvv::{CorrelatorTable, Strategy};
use psi_npoint::exact::rat;
use psi_npoint::intersection_number;
use psi_npoint::numeric::{f_bur_numeric, f_ok_numeric, NumericConfig};
use psi_npoint::verify::multisets;

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `<tau_{3g-2}>_g = 1 / (24^g g!)`.
fn one_point(g: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(24).pow(g) * factorial(g))
}

/// Genus zero: `(n-3)! / prod d_i!`.
fn genus_zero(ds: &[u32]) -> BigRational {
    let den = ds.iter().fold(BigInt::one(), |acc, &d| acc * factorial(d));
    BigRational::new(factorial(ds.len() as u32 - 3), den)
}

/// `<tau_1^n>_1 = (n-1)! / 24`.
fn tau_one_power(n: u32) -> BigRational {
    BigRational::new(factorial(n - 1), BigInt::from(24))
}

#[test]
fn one_point_numbers() {
    let table = CorrelatorTable::new(Strategy::PureDvv);
    for g in 1..=5 {
        assert_eq!(table.correlator(g, &[3 * g - 2]), one_point(g), "g={g}");
    }
    for g in 1..=3 {
        assert_eq!(intersection_number(g, &[3 * g - 2]).unwrap(), one_point(g), "g={g}");
    }
    assert_eq!(one_point(3), rat(1, 82944));
}

#[test]
fn genus_zero_numbers() {
    let table = CorrelatorTable::new(Strategy::PureDvv);
    for n in 3..=7 {
        for ds in multisets(n, n as u32 - 3) {
            if ds.iter().sum::<u32>() == n as u32 - 3 {
                assert_eq!(table.correlator(0, &ds), genus_zero(&ds), "{ds:?}");
            }
        }
    }
    for ds in [vec![0, 0, 0, 1], vec![1, 0, 0, 0]] {
        assert_eq!(intersection_number(0, &ds).unwrap(), genus_zero(&ds), "{ds:?}");
    }
}

#[test]
fn genus_one_tau_one_powers() {
    let table = CorrelatorTable::new(Strategy::PureDvv);
    for n in 1..=7 {
        assert_eq!(table.correlator(1, &vec![1; n as usize]), tau_one_power(n), "n={n}");
    }
    for n in 1..=3 {
        assert_eq!(intersection_number(1, &vec![1; n as usize]).unwrap(), tau_one_power(n), "n={n}");
    }
}

/// Frozen reference values computed from the closed forms above and the
/// two-point genus-two table.
#[test]
fn frozen_values() {
    let table = CorrelatorTable::new(Strategy::FastPaths);
    let cases: [(u32, &[u32], i64, i64); 8] = [
        (2, &[4], 1, 1152),
        (2, &[2, 3], 29, 5760),
        (2, &[1, 4], 1, 384),
        (2, &[0, 5], 1, 1152),
        (1, &[1, 1, 1], 1, 12),
        (1, &[0, 0, 3], 1, 24),
        (3, &[7], 1, 82944),
        (0, &[1, 1, 1, 0, 0, 0], 6, 1),
    ];
    for (g, ds, p, q) in cases {
        assert_eq!(table.correlator(g, ds), rat(p, q), "<{ds:?}>_{g}");
    }
}

#[test]
fn one_point_function_closed_form() {
    let cfg = NumericConfig::default();
    for x in [0.3, 0.8, 1.0, 1.5] {
        let closed = (x * x * x / 24.0f64).exp() / (x * x);
        for value in [f_ok_numeric(&[x], &cfg).unwrap().re(), f_bur_numeric(&[x], &cfg).unwrap().re()] {
            assert!((value - closed).abs() / closed < 1e-10, "x={x}: {value} vs {closed}");
        }
    }
}
