//! Identity suites run by `psi-npoint verify` and by the acceptance tests.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num::{BigInt, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::buryak::{f_bur_series, p_n_definition_certified, p_n_symmetric_certified, CorrelatorKey};
use crate::combinatorics::{
    a_vector, a_vector_full, coset_index, cycle_c, cyclic_ordered_partitions, increasing_sequences, permutations,
    permutations_fixing_first, q_identity_rhs, q_value, u_identity_lhs, Permutation,
};
use crate::dvv::{CorrelatorTable, Strategy};
use crate::exact::{render_scalar, ExactScalar};
use crate::numeric::{f_bur_numeric, f_ok_numeric, term_correspondence, NumericConfig};

/// A failing case with its inputs and both values.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
}

impl VerificationReport {
    fn new(suite: &str) -> Self {
        VerificationReport { suite: suite.to_string(), cases: 0, failures: Vec::new(), wall_time: Duration::ZERO }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String, expected: impl FnOnce() -> String, got: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { case: case(), expected: expected(), got: got() });
        }
    }

    fn fail(&mut self, case: String, expected: String, got: String) {
        self.cases += 1;
        self.failures.push(Failure { case, expected, got });
    }

    fn merge(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    fn timed(mut self, start: Instant) -> Self {
        self.wall_time = start.elapsed();
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{}: {status} ({} cases, {} failures, {:.2}s)",
            self.suite,
            self.cases,
            self.failures.len(),
            self.wall_time.as_secs_f64()
        )?;
        for failure in &self.failures {
            writeln!(f, "  {}: expected {}, got {}", failure.case, failure.expected, failure.got)?;
        }
        Ok(())
    }
}

/// Both `P_n` pipelines agree exactly for each `n`, with every division certified.
pub fn prop31(ns: &[usize], degree: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("prop31");
    for &n in ns {
        let def = p_n_definition_certified(n, degree);
        let sym = p_n_symmetric_certified(n, degree);
        match (def, sym) {
            (Ok((d, dc)), Ok((s, sc))) => {
                let pairs = n * (n - 1) / 2;
                report.check(
                    dc.divisors.len() == pairs && sc.divisors.len() == pairs,
                    || format!("n={n} certified divisions"),
                    || format!("{pairs} per pipeline"),
                    || format!("{} / {}", dc.divisors.len(), sc.divisors.len()),
                );
                report.check(d == s, || format!("n={n} cap={degree}"), || s.to_string(), || d.to_string());
            }
            (d, s) => {
                let describe = |r: Result<_, crate::error::ConsistencyError>| match r {
                    Ok(_) => "ok".to_string(),
                    Err(e) => e.to_string(),
                };
                report.fail(format!("n={n} cap={degree}"), describe(s.map(|_| ())), describe(d.map(|_| ())));
            }
        }
    }
    report.timed(start)
}

/// Random pairwise-distinct rationals `p/q`.
pub fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<ExactScalar> {
    loop {
        let v: Vec<ExactScalar> = (0..n)
            .map(|_| ExactScalar::new(BigInt::from(rng.gen_range(-60i64..=60)), BigInt::from(rng.gen_range(1i64..=17))))
            .collect();
        let distinct: BTreeSet<&ExactScalar> = v.iter().collect();
        if distinct.len() == n {
            return v;
        }
    }
}

/// The cycle-product coset lemma, the `A`-vector lemmas, the `Q` identity and
/// the `u` identity.
pub fn lemmas(max_n_q: usize, max_n_u: usize, max_n_a: usize, samples: usize, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("lemmas");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for n in 2..=max_n_a {
        report.merge(cycle_cosets(n));
        report.merge(a_uniqueness(n));
        report.merge(a_solution(n));
    }
    for n in 2..=max_n_a.min(4) {
        report.merge(left_invariance(n));
        report.merge(a_correspondence(n));
    }
    for n in 2..=max_n_q {
        let perms = permutations(n).expect("n >= 2");
        for _ in 0..samples {
            let v = random_points(&mut rng, n);
            for sigma in &perms {
                let lhs = q_value(sigma, &v);
                let rhs = q_identity_rhs(sigma, &v);
                report.check(
                    lhs.is_ok() && lhs == rhs,
                    || format!("Q identity n={n} sigma={sigma} v={}", render_points(&v)),
                    || format!("{lhs:?}"),
                    || format!("{rhs:?}"),
                );
            }
        }
    }
    for n in 2..=max_n_u {
        for _ in 0..samples {
            let v = random_points(&mut rng, n);
            for r in 1..n {
                let got = u_identity_lhs(n, r, &v);
                report.check(
                    matches!(&got, Ok(value) if *value == -ExactScalar::one()),
                    || format!("u identity n={n} r={r} v={}", render_points(&v)),
                    || "-1".to_string(),
                    || format!("{got:?}"),
                );
            }
        }
    }
    report.timed(start)
}

fn render_points(v: &[ExactScalar]) -> String {
    let parts: Vec<String> = v.iter().map(render_scalar).collect();
    format!("({})", parts.join(","))
}

fn cycle_product(ms: &[usize], n: usize) -> Permutation {
    ms.iter().fold(Permutation::identity(n), |acc, &m| acc.compose(&cycle_c(m, n).expect("m in range")).expect("same n"))
}

fn cycle_cosets(n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("cycle cosets");
    for len in 0..n {
        for ms in increasing_sequences(2, n, len) {
            let p = cycle_product(&ms, n);
            report.check(
                coset_index(&p) == len + 1,
                || format!("C-product n={n} ms={ms:?}"),
                || format!("coset {}", len + 1),
                || format!("coset {}", coset_index(&p)),
            );
        }
    }
    report
}

fn a_uniqueness(n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("A uniqueness");
    let perms = permutations(n).expect("n >= 2");
    let images: BTreeSet<String> = perms.iter().map(|s| a_vector_full(s).to_string()).collect();
    report.check(images.len() == perms.len(), || format!("A injective n={n}"), || perms.len().to_string(), || images.len().to_string());
    report
}

fn complement(n: usize, j_set: &[usize]) -> Vec<usize> {
    (2..=n).filter(|i| !j_set.contains(i)).collect()
}

fn a_solution(n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("A solution");
    let id = Permutation::identity(n);
    for len in 0..n {
        for ms in increasing_sequences(2, n, len) {
            let lhs = a_vector_full(&cycle_product(&ms, n));
            let rhs = a_vector(&id, &complement(n, &ms), &ms).expect("partition of [2,n]");
            report.check(lhs == rhs, || format!("A-solution n={n} J={ms:?}"), || rhs.to_string(), || lhs.to_string());
        }
    }
    report
}

/// All `(I, J)` splits of `[2, n]`, indexed by subsets `J`.
fn splits(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0..n).flat_map(|len| increasing_sequences(2, n, len)).map(|j| (complement(n, &j), j)).collect()
}

fn left_invariance(n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("left invariance");
    let perms = permutations(n).expect("n >= 2");
    let id = Permutation::identity(n);
    for sigma in &perms {
        let full = a_vector_full(sigma);
        for (i_set, j_set) in splits(n) {
            if a_vector(&id, &i_set, &j_set).expect("split") != full {
                continue;
            }
            for rho in &perms {
                let lhs = a_vector_full(&rho.compose(sigma).expect("same n"));
                let rhs = a_vector(rho, &i_set, &j_set).expect("split");
                report.check(
                    lhs == rhs,
                    || format!("left invariance n={n} sigma={sigma} rho={rho} J={j_set:?}"),
                    || rhs.to_string(),
                    || lhs.to_string(),
                );
            }
        }
    }
    report
}

/// Every `(tau, I, J)` with `tau(1) = 1` and `A^tau_{I,J} = A^sigma_{[2,n],{}}`
/// is exactly the predicted list, for every `sigma`.
fn a_correspondence(n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("A correspondence");
    let taus = permutations_fixing_first(n).expect("n >= 2");
    let all_splits = splits(n);
    let mut hit = BTreeSet::new();
    for sigma in permutations(n).expect("n >= 2") {
        let target = a_vector_full(&sigma);
        let mut found = BTreeSet::new();
        for tau in &taus {
            for (i_set, j_set) in &all_splits {
                if a_vector(tau, i_set, j_set).expect("split") == target {
                    found.insert((tau.images().to_vec(), j_set.clone()));
                    hit.insert((tau.images().to_vec(), j_set.clone()));
                }
            }
        }
        let i = coset_index(&sigma);
        let predicted: BTreeSet<(Vec<usize>, Vec<usize>)> = increasing_sequences(2, n, i - 1)
            .into_iter()
            .map(|ms| {
                let mut tau = sigma.clone();
                for &m in ms.iter().rev() {
                    tau = tau.compose(&cycle_c(m, n).expect("m in range").inverse()).expect("same n");
                }
                (tau.images().to_vec(), ms)
            })
            .collect();
        report.check(found == predicted, || format!("A-A n={n} sigma={sigma}"), || format!("{predicted:?}"), || format!("{found:?}"));
    }
    // every (tau, I, J) is reached by some sigma
    let total = taus.len() * all_splits.len();
    report.check(hit.len() == total, || format!("A-A existence n={n}"), || total.to_string(), || hit.len().to_string());
    report
}

/// Series coefficients from the Gaussian-moment pipeline against the DVV
/// oracle, for every admissible key with the given `(n, max genus)` pairs.
pub fn dvv_cross(bounds: &[(usize, u32)]) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("dvv-cross");
    let table = CorrelatorTable::new(Strategy::FastPaths);
    for &(n, max_genus) in bounds {
        let keys: Vec<CorrelatorKey> = (0..=max_genus).flat_map(|g| CorrelatorKey::all(n, g)).collect();
        let Some(max_degree) = keys.iter().map(|k| k.d.iter().sum::<u32>()).max() else { continue };
        let series = match f_bur_series(n, max_degree) {
            Ok(s) => s,
            Err(e) => {
                report.fail(format!("n={n} series to degree {max_degree}"), "a series".into(), e.to_string());
                continue;
            }
        };
        // every coefficient of the series, not only the sorted keys
        for row in series.rows() {
            let oracle = table.correlator(row.genus, &row.ds);
            report.check(
                row.value == oracle,
                || format!("<{:?}>_{} n={n}", row.ds, row.genus),
                || render_scalar(&oracle),
                || render_scalar(&row.value),
            );
        }
        for key in keys {
            let value = series.coefficient(&key.d);
            let oracle = table.value(&key);
            report.check(value == oracle, || format!("<{key}>"), || render_scalar(&oracle), || render_scalar(&value));
        }
    }
    report.timed(start)
}

/// String equation on the recursion-only table for every `X` with at most
/// `max_n` points and `sum d <= max_sum` whose extension by `tau_0` is stable.
pub fn string_suite(max_n: usize, max_sum: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("string");
    let table = CorrelatorTable::new(Strategy::PureDvv);
    for n in 1..=max_n {
        for ds in multisets(n, max_sum) {
            let Some(genus) = CorrelatorKey::genus_for(&[&[0u32][..], &ds].concat()) else { continue };
            let full = CorrelatorKey::new(genus, &[&[0u32][..], &ds].concat());
            if !full.is_admissible() || (genus == 0 && full.n() == 3) {
                continue;
            }
            let sides = table.string_identity_check(genus, &ds);
            report.check(
                sides.holds(),
                || format!("<tau_0 {ds:?}>_{genus}"),
                || render_scalar(&sides.rhs),
                || render_scalar(&sides.lhs),
            );
        }
    }
    report.timed(start)
}

/// First KdV equation coefficientwise for every multiset `K` of weight
/// `sum (d+1) <= max_weight`.
pub fn kdv_suite(max_weight: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("kdv");
    let table = CorrelatorTable::new(Strategy::PureDvv);
    for k in weighted_multisets(max_weight) {
        let sides = table.kdv_first_equation_check(&k, max_weight).expect("weight within bound");
        report.check(sides.holds(), || format!("K={k:?}"), || render_scalar(&sides.rhs), || render_scalar(&sides.lhs));
    }
    report.timed(start)
}

/// Non-decreasing sequences of length `n` with sum at most `max_sum`.
pub fn multisets(n: usize, max_sum: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, min: u32, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in min..=budget {
            prefix.push(v);
            rec(n, v, budget - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max_sum, &mut Vec::new(), &mut out);
    out
}

/// Non-decreasing sequences (including the empty one) with `sum (d+1) <= max_weight`.
pub fn weighted_multisets(max_weight: u32) -> Vec<Vec<u32>> {
    fn rec(min: u32, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        for v in min.. {
            if v + 1 > budget {
                break;
            }
            prefix.push(v);
            rec(v, budget - v - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, max_weight, &mut Vec::new(), &mut out);
    out
}

/// Sample points with components uniform in `[lo, hi]`.
pub fn sample_points(n: usize, count: usize, seed: u64, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Gaussian-side against orthant-side n-point functions at each point.
pub fn numeric_theorem(points: &[Vec<f64>], tol: f64, cfg: &NumericConfig) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("numeric theorem");
    for x in points {
        match (f_bur_numeric(x, cfg), f_ok_numeric(x, cfg)) {
            (Ok(b), Ok(o)) => {
                let diff = rel_diff(b.re(), o.re());
                report.check(
                    diff <= tol,
                    || format!("x={x:?} (rel diff {diff:.2e}, tol {tol:.0e})"),
                    || format!("{:.12e}", o.re()),
                    || format!("{:.12e}", b.re()),
                );
            }
            (b, o) => report.fail(format!("x={x:?}"), format!("{o:?}"), format!("{b:?}")),
        }
    }
    report.timed(start)
}

/// Term-wise identity for every cyclically ordered partition of each point.
pub fn numeric_terms(points: &[Vec<f64>], tol: f64, cfg: &NumericConfig) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("term correspondence");
    for x in points {
        for comp in cyclic_ordered_partitions(x.len()).expect("n >= 1") {
            match term_correspondence(&comp, x, cfg) {
                Ok(t) => report.check(
                    t.holds(tol),
                    || format!("{comp} x={x:?} (rel diff {:.2e})", t.rel_diff()),
                    || format!("{:.12e}", t.orthant_side.re()),
                    || format!("{:.12e}", t.gaussian_side.value),
                ),
                Err(e) => report.fail(format!("{comp} x={x:?}"), "a value".into(), e.to_string()),
            }
        }
    }
    report.timed(start)
}

/// Unstable tag plus truncated exact series against the orthant-side value.
pub fn series_vs_numeric(ns: &[usize], x: f64, degree: u32, tol: f64, cfg: &NumericConfig) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("series vs numeric");
    for &n in ns {
        let point = vec![x; n];
        let series = match f_bur_series(n, degree) {
            Ok(s) => s,
            Err(e) => {
                report.fail(format!("n={n}"), "a series".into(), e.to_string());
                continue;
            }
        };
        let approx = series.evaluate(&point);
        match f_ok_numeric(&point, cfg) {
            Ok(o) => {
                let diff = rel_diff(approx, o.re());
                report.check(
                    diff <= tol,
                    || format!("n={n} x={x} degree={degree} (rel diff {diff:.2e})"),
                    || format!("{:.12e}", o.re()),
                    || format!("{approx:.12e}"),
                );
            }
            Err(e) => report.fail(format!("n={n}"), "a value".into(), e.to_string()),
        }
    }
    report.timed(start)
}

/// Runs a named group of reports into one.
pub fn combine(suite: &str, parts: Vec<VerificationReport>) -> VerificationReport {
    let mut report = VerificationReport::new(suite);
    for part in parts {
        report.wall_time += part.wall_time;
        report.merge(part);
    }
    report
}

pub fn zero_failures(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}
