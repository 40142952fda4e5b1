//! Exact n-point series from the Gaussian-moment formula.
//!
//! `P_n` is computed two ways: from its defining sum over `tau` with
//! `tau(1) = 1` (zeta products over nested partial sums), and from the
//! symmetric sum over all of `S_n` (a single exponential per term). Both bring
//! every term over `prod_{j<k} (a_j x_k - a_k x_j)` and divide the bilinear
//! factors back out, each division certified remainder-free.

use std::fmt;

use num::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::{permutations, permutations_fixing_first, Permutation};
use crate::error::ConsistencyError;
use crate::exact::{
    exact_divide, int, rat, render_scalar, series_exp, sum_x, zeta_series, BilinearForm, Divisor, ExactScalar,
    Monomial, TruncatedSeries, EXACT,
};

/// Which formula produced a `P_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Definition,
    Symmetric,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Definition => "definition",
            Pipeline::Symmetric => "symmetric",
        }
    }
}

/// Witness that `P_n` is a power series: every bilinear factor of the common
/// denominator divided out with zero remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionCertificate {
    pub pipeline: Pipeline,
    pub divisors: Vec<BilinearForm>,
}

fn bilinear(n: usize, j: usize, k: usize) -> Result<TruncatedSeries, ConsistencyError> {
    Ok(BilinearForm::new(j, k)?.to_series(n)?)
}

/// Product of the exact bilinear forms over all pairs `j < k` not adjacent on
/// the identity path.
fn non_path_factor(n: usize) -> Result<TruncatedSeries, ConsistencyError> {
    let mut out = TruncatedSeries::one(n, EXACT);
    for j in 1..=n {
        for k in j + 2..=n {
            out = out.mul(&bilinear(n, j, k)?, EXACT)?;
        }
    }
    Ok(out)
}

fn middle_x_monomial(n: usize) -> TruncatedSeries {
    let exps: Vec<u32> = (1..=n).map(|i| u32::from(i > 1 && i < n)).collect();
    TruncatedSeries::from_terms(n, EXACT, [(Monomial::x_only(&exps), ExactScalar::one())])
}

/// Sums in a fixed balanced tree so the reduction order never depends on
/// scheduling.
pub(crate) fn tree_sum(mut parts: Vec<TruncatedSeries>, n: usize) -> TruncatedSeries {
    if parts.is_empty() {
        return TruncatedSeries::zero(n, EXACT);
    }
    while parts.len() > 1 {
        parts = parts
            .par_chunks(2)
            .map(|pair| {
                let mut acc = pair[0].clone();
                if let Some(second) = pair.get(1) {
                    acc.accumulate(second, false);
                }
                acc
            })
            .collect();
    }
    parts.pop().expect("non-empty")
}

/// `sum_tau sgn(tau) * tau.(numerator_id)`, where `tau` relabels variables.
fn symmetrize(numerator: &TruncatedSeries, perms: &[Permutation]) -> TruncatedSeries {
    let parts: Vec<TruncatedSeries> = perms
        .par_iter()
        .map(|tau| {
            let moved = numerator.permuted(tau.images());
            if tau.sign() < 0 {
                moved.neg()
            } else {
                moved
            }
        })
        .collect();
    tree_sum(parts, numerator.n())
}

fn divide_out(
    mut num: TruncatedSeries,
    pipeline: Pipeline,
) -> Result<(TruncatedSeries, DivisionCertificate), ConsistencyError> {
    let n = num.n();
    let mut divisors = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            let form = BilinearForm::new(j, k)?;
            let division = exact_divide(&num, &Divisor::Bilinear(form))?;
            if !division.remainder_zero() {
                return Err(ConsistencyError::NonZeroRemainder {
                    pipeline: pipeline.name(),
                    divisor: form.to_string(),
                });
            }
            num = division.quotient;
            divisors.push(form);
        }
    }
    Ok((num, DivisionCertificate { pipeline, divisors }))
}

fn check_n(n: usize) -> Result<(), ConsistencyError> {
    if n < 2 {
        return Err(ConsistencyError::PointCount(n));
    }
    Ok(())
}

/// Degree of the common denominator `prod_{j<k} B_jk`.
fn denominator_degree(n: usize) -> u32 {
    (n * (n - 1)) as u32
}

/// `P_n` from the defining sum over `tau` with `tau(1) = 1`, with certificate.
pub fn p_n_definition_certified(
    n: usize,
    cap: u32,
) -> Result<(TruncatedSeries, DivisionCertificate), ConsistencyError> {
    check_n(n)?;
    // zeta products start in degree 2(n-1); the x prefactor adds n-2
    let zeta_cap = cap + n as u32;
    let mut zetas = TruncatedSeries::one(n, EXACT);
    for j in 1..n {
        let mut a_sum = TruncatedSeries::zero(n, EXACT);
        let mut x_sum = TruncatedSeries::zero(n, EXACT);
        for k in 1..=j {
            a_sum = a_sum.add(&TruncatedSeries::a(n, k))?;
            x_sum = x_sum.add(&TruncatedSeries::x(n, k))?;
        }
        let l = a_sum
            .mul(&TruncatedSeries::x(n, j + 1), EXACT)?
            .sub(&TruncatedSeries::a(n, j + 1).mul(&x_sum, EXACT)?)?;
        zetas = zetas.mul(&zeta_series(&l, zeta_cap)?, zeta_cap)?;
    }
    let numerator = zetas.mul(&middle_x_monomial(n), EXACT)?.mul(&non_path_factor(n)?, EXACT)?;
    debug_assert_eq!(numerator.cap(), cap + denominator_degree(n));
    let total = symmetrize(&numerator, &permutations_fixing_first(n).expect("n >= 2"));
    divide_out(total, Pipeline::Definition)
}

/// `P_n` from the symmetric sum over all of `S_n`, with certificate.
pub fn p_n_symmetric_certified(
    n: usize,
    cap: u32,
) -> Result<(TruncatedSeries, DivisionCertificate), ConsistencyError> {
    check_n(n)?;
    let mut w = TruncatedSeries::zero(n, EXACT);
    for i in 1..=n {
        for j in i + 1..=n {
            w = w.add(&bilinear(n, i, j)?)?;
        }
    }
    let w = w.scale(&rat(1, 2));
    let exp_cap = cap + n as u32;
    let numerator = series_exp(&w, exp_cap)?.mul(&middle_x_monomial(n), EXACT)?.mul(&non_path_factor(n)?, EXACT)?;
    debug_assert_eq!(numerator.cap(), cap + denominator_degree(n));
    let total = symmetrize(&numerator, &permutations(n).expect("n >= 2"));
    divide_out(total, Pipeline::Symmetric)
}

/// `P_n(a; x)` up to combined total degree `cap`, from the defining formula.
pub fn p_n_definition(n: usize, cap: u32) -> Result<TruncatedSeries, ConsistencyError> {
    p_n_definition_certified(n, cap).map(|(s, _)| s)
}

/// `P_n(a; x)` up to combined total degree `cap`, from the symmetric formula.
pub fn p_n_symmetric(n: usize, cap: u32) -> Result<TruncatedSeries, ConsistencyError> {
    p_n_symmetric_certified(n, cap).map(|(s, _)| s)
}

/// `k (k-2) (k-4) ...`, and 1 for `k <= 1`.
fn double_factorial(k: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut j = k as i64;
    while j > 1 {
        acc *= int(j);
        j -= 2;
    }
    acc
}

/// Replaces `a_j -> i a_j` and integrates each `a_j` against the normalized
/// Gaussian of variance `x_j`: `a^{2k} -> (-1)^k (2k-1)!! x^k`, odd powers vanish.
///
/// Terms whose image has degree above `cap` are dropped.
pub fn gaussian_moments(p: &TruncatedSeries, cap: u32) -> TruncatedSeries {
    let n = p.n();
    let zeros = vec![0u32; n];
    let mut images = Vec::new();
    for (m, c) in p.terms() {
        let a: Vec<u32> = m.a_exponents().collect();
        if a.iter().any(|k| k % 2 == 1) {
            continue;
        }
        let x: Vec<u32> = m.x_exponents().zip(&a).map(|(e, k)| e + k / 2).collect();
        if x.iter().sum::<u32>() > cap {
            continue;
        }
        let mut coeff = c.clone();
        for &k in &a {
            if k > 0 {
                coeff *= double_factorial(k - 1);
            }
        }
        if (a.iter().sum::<u32>() / 2) % 2 == 1 {
            coeff = -coeff;
        }
        images.push((Monomial::new(&zeros, &x), coeff));
    }
    TruncatedSeries::from_terms(n, cap, images)
}

/// Singular terms carried symbolically next to the stable series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnstableTerm {
    /// `x^-2`, for one point.
    InverseSquare,
    /// `(x1+x2)^-1`, for two points.
    InverseSum,
}

impl fmt::Display for UnstableTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnstableTerm::InverseSquare => f.write_str("x^-2"),
            UnstableTerm::InverseSum => f.write_str("(x1+x2)^-1"),
        }
    }
}

/// A genus together with a sorted multiset of descendant indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorKey {
    pub genus: u32,
    pub d: Vec<u32>,
}

impl CorrelatorKey {
    pub fn new(genus: u32, d: &[u32]) -> Self {
        let mut d = d.to_vec();
        d.sort_unstable();
        CorrelatorKey { genus, d }
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    /// `2g - 2 + n > 0`.
    pub fn is_stable(&self) -> bool {
        2 * self.genus as i64 - 2 + self.d.len() as i64 > 0
    }

    /// `sum d = 3g - 3 + n`.
    pub fn has_dimension(&self) -> bool {
        self.d.iter().map(|&d| d as i64).sum::<i64>() == 3 * self.genus as i64 - 3 + self.d.len() as i64
    }

    /// The key is stable and satisfies the dimension constraint.
    pub fn is_admissible(&self) -> bool {
        self.is_stable() && self.has_dimension()
    }

    /// Genus forced by the dimension constraint, if any.
    pub fn genus_for(d: &[u32]) -> Option<u32> {
        let total = d.iter().sum::<u32>() as i64 + 3 - d.len() as i64;
        (total >= 0 && total % 3 == 0).then_some((total / 3) as u32)
    }

    /// Every admissible key with `n` points and genus `g`.
    pub fn all(n: usize, genus: u32) -> Vec<CorrelatorKey> {
        let total = 3 * genus as i64 - 3 + n as i64;
        if n == 0 || total < 0 || 2 * genus as i64 - 2 + n as i64 <= 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        partitions_into(total as u32, n, total as u32, &mut Vec::new(), &mut out);
        out.into_iter().map(|mut d| {
            d.reverse();
            CorrelatorKey { genus, d }
        }).collect()
    }
}

/// Non-increasing sequences of length `parts` summing to `total`, each at most `max`.
fn partitions_into(total: u32, parts: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for v in (0..=max.min(total)).rev() {
        if (v as u64) * (parts as u64) < total as u64 {
            break;
        }
        prefix.push(v);
        partitions_into(total - v, parts - 1, v, prefix, out);
        prefix.pop();
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.d.iter().map(u32::to_string).collect();
        write!(f, "{};{}", self.genus, ds.join(","))
    }
}

/// One stable coefficient of an n-point series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRow {
    pub ds: Vec<u32>,
    pub genus: u32,
    pub value: ExactScalar,
}

/// Stable part of `F_n` up to total x-degree `max_degree`, plus the unstable tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPointSeries {
    pub n: usize,
    pub max_degree: u32,
    pub unstable: Option<UnstableTerm>,
    pub stable: TruncatedSeries,
}

impl NPointSeries {
    /// Coefficient of `prod x_i^{d_i}` in the stable part.
    pub fn coefficient(&self, ds: &[u32]) -> ExactScalar {
        assert_eq!(ds.len(), self.n, "one exponent per point");
        self.stable.coefficient(&Monomial::x_only(ds))
    }

    /// Nonzero stable coefficients in graded-lex order.
    pub fn rows(&self) -> Vec<SeriesRow> {
        self.stable
            .terms()
            .map(|(m, c)| {
                let ds: Vec<u32> = m.x_exponents().collect();
                let genus = CorrelatorKey::genus_for(&ds).unwrap_or(u32::MAX);
                SeriesRow { ds, genus, value: c.clone() }
            })
            .collect()
    }

    /// Unstable tag plus stable part at a real point.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n, "one coordinate per point");
        let unstable = match self.unstable {
            Some(UnstableTerm::InverseSquare) => x[0].powi(-2),
            Some(UnstableTerm::InverseSum) => 1.0 / (x[0] + x[1]),
            None => 0.0,
        };
        let stable: f64 = self
            .stable
            .terms()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * m.x_exponents().zip(x).map(|(e, v)| v.powi(e as i32)).product::<f64>())
            .sum();
        unstable + stable
    }

    /// Monomials violating `sum d = 3g - 3 + n` for every integer `g >= 0`.
    pub fn off_grade_terms(&self) -> Vec<(Vec<u32>, ExactScalar)> {
        self.rows()
            .into_iter()
            .filter(|r| r.genus == u32::MAX)
            .map(|r| (r.ds, r.value))
            .collect()
    }
}

impl fmt::Display for NPointSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(tag) = self.unstable {
            writeln!(f, "unstable: {tag}")?;
        }
        for row in self.rows() {
            let ds: Vec<String> = row.ds.iter().map(u32::to_string).collect();
            writeln!(f, "{};g={};{}", ds.join(","), row.genus, render_scalar(&row.value))?;
        }
        Ok(())
    }
}

/// Cap on `P_n` that fixes every moment image of x-degree `<= target`.
///
/// `P_n` is bigraded with x-degree minus a-degree equal to `n - 2`, and
/// `a^{2k}` becomes x-degree `k`, so a term of a-degree `2k` lands in x-degree
/// `3k + n - 2` and has combined degree `4k + n - 2`.
pub fn p_cap_for(n: usize, target: u32) -> u32 {
    let shifted = target as i64 + 2 - n as i64;
    let k_max = if shifted < 0 { 0 } else { shifted / 3 };
    (4 * k_max + n as i64 - 2).max(0) as u32
}

/// Stable part of the n-point function up to total degree `max_degree`.
pub fn f_bur_series(n: usize, max_degree: u32) -> Result<NPointSeries, ConsistencyError> {
    match n {
        0 => Err(ConsistencyError::PointCount(0)),
        1 => Ok(one_point(max_degree)),
        _ => several_points(n, max_degree),
    }
}

/// `e^{x^3/24}/x^2 - x^{-2} = sum_{m>=1} x^{3m-2} / (24^m m!)`.
fn one_point(max_degree: u32) -> NPointSeries {
    let mut terms = Vec::new();
    let mut coeff = ExactScalar::one();
    let mut m = 1u32;
    while 3 * m - 2 <= max_degree {
        coeff /= int(24 * m as i64);
        terms.push((Monomial::x_only(&[3 * m - 2]), coeff.clone()));
        m += 1;
    }
    NPointSeries {
        n: 1,
        max_degree,
        unstable: Some(UnstableTerm::InverseSquare),
        stable: TruncatedSeries::from_terms(1, max_degree, terms),
    }
}

fn several_points(n: usize, max_degree: u32) -> Result<NPointSeries, ConsistencyError> {
    let target = max_degree + 1;
    let p = p_n_symmetric(n, p_cap_for(n, target))?;
    let moments = gaussian_moments(&p, target);
    let s = sum_x(n);
    let cube = s.mul(&s, EXACT)?.mul(&s, EXACT)?.scale(&rat(1, 24));
    let mut total = series_exp(&cube, target)?.mul(&moments, target)?;

    let unstable = if n == 2 {
        let grade0 = total.constant_term();
        if grade0 != ExactScalar::one() {
            return Err(ConsistencyError::UnstableMismatch { found: render_scalar(&grade0) });
        }
        total = total.sub(&TruncatedSeries::one(n, EXACT))?;
        Some(UnstableTerm::InverseSum)
    } else {
        let grade0 = total.constant_term();
        if !grade0.is_zero() {
            return Err(ConsistencyError::UnexpectedConstant { found: render_scalar(&grade0) });
        }
        None
    };
    let division = exact_divide(&total, &Divisor::SumX)?;
    if !division.remainder_zero() {
        return Err(ConsistencyError::NonZeroRemainder { pipeline: "moments", divisor: Divisor::SumX.to_string() });
    }
    Ok(NPointSeries { n, max_degree, unstable, stable: division.quotient.truncated(max_degree) })
}

/// `<tau_{d_1} ... tau_{d_n}>_g` read off the Gaussian-moment series.
pub fn intersection_number(genus: u32, ds: &[u32]) -> Result<ExactScalar, ConsistencyError> {
    let key = CorrelatorKey::new(genus, ds);
    if ds.is_empty() || !key.is_admissible() {
        return Ok(ExactScalar::zero());
    }
    let series = f_bur_series(ds.len(), ds.iter().sum())?;
    Ok(series.coefficient(ds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: usize, j: usize, k: usize) -> TruncatedSeries {
        bilinear(n, j, k).unwrap()
    }

    #[test]
    fn p2_matches_zeta_over_argument() {
        let p = p_n_symmetric(2, 4).unwrap();
        // 1 + B^2/24 + B^4/1920
        let bb = b(2, 1, 2);
        let b2 = bb.mul(&bb, EXACT).unwrap();
        let b4 = b2.mul(&b2, EXACT).unwrap();
        let expected = TruncatedSeries::one(2, EXACT)
            .add(&b2.scale(&rat(1, 24)))
            .unwrap()
            .add(&b4.scale(&rat(1, 1920)))
            .unwrap()
            .truncated(4);
        assert_eq!(p, expected);
        assert_eq!(p_n_definition(2, 4).unwrap(), expected);
        assert_eq!(p.at_a_zero().to_string(), "1");
    }

    #[test]
    fn p_n_rejects_one_point() {
        assert_eq!(p_n_symmetric(1, 3).unwrap_err(), ConsistencyError::PointCount(1));
    }

    #[test]
    fn relabelled_identity_term_matches_direct_term() {
        // tau . term_id, written over the common denominator, equals the
        // directly assembled term for tau, at n = 3
        let n = 3;
        let cap = 8;
        let mut w = TruncatedSeries::zero(n, EXACT);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            w = w.add(&b(n, i, j)).unwrap();
        }
        let id_num = series_exp(&w.scale(&rat(1, 2)), cap)
            .unwrap()
            .mul(&middle_x_monomial(n), EXACT)
            .unwrap()
            .mul(&b(n, 1, 3), EXACT)
            .unwrap();
        for tau in permutations(n).unwrap() {
            let s = |i: usize| tau.apply(i);
            let mut wt = TruncatedSeries::zero(n, EXACT);
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                wt = wt.add(&b(n, s(i), s(j))).unwrap();
            }
            // term_tau = E / (B_{s1 s2} B_{s2 s3}) should equal sgn(tau) tau.(id numerator) / D
            let e = series_exp(&wt.scale(&rat(1, 2)), cap)
                .unwrap()
                .mul(&TruncatedSeries::x(n, s(2)), EXACT)
                .unwrap();
            let path = b(n, s(1), s(2)).mul(&b(n, s(2), s(3)), EXACT).unwrap();
            let d = b(n, 1, 2).mul(&b(n, 1, 3), EXACT).unwrap().mul(&b(n, 2, 3), EXACT).unwrap();
            let moved = id_num.permuted(tau.images());
            let moved = if tau.sign() < 0 { moved.neg() } else { moved };
            let lhs = e.mul(&d, EXACT).unwrap();
            let rhs = moved.mul(&path, EXACT).unwrap();
            assert_eq!(lhs.truncated(cap + 6), rhs.truncated(cap + 6), "tau = {tau}");
        }
    }

    #[test]
    fn both_pipelines_agree_n3() {
        let (def, cert_d) = p_n_definition_certified(3, 6).unwrap();
        let (sym, cert_s) = p_n_symmetric_certified(3, 6).unwrap();
        assert_eq!(def, sym);
        assert_eq!(cert_d.divisors.len(), 3);
        assert_eq!(cert_s.divisors.len(), 3);
    }

    #[test]
    fn p_n_is_bigraded() {
        for n in 2..=4 {
            let p = p_n_symmetric(n, 6).unwrap();
            for (m, _) in p.terms() {
                assert_eq!(m.x_degree() as i64 - m.a_degree() as i64, n as i64 - 2, "{m:?}");
            }
        }
    }

    #[test]
    fn diagonal_symmetry_n3() {
        let p = p_n_symmetric(3, 7).unwrap();
        for tau in permutations(3).unwrap() {
            assert_eq!(p.permuted(tau.images()), p);
        }
        let q = p_n_definition(3, 7).unwrap();
        for tau in permutations(3).unwrap() {
            assert_eq!(q.permuted(tau.images()), q);
        }
    }

    #[test]
    fn moments() {
        let n = 2;
        let a1 = TruncatedSeries::a(n, 1);
        assert!(gaussian_moments(&a1, 10).is_zero());
        let a1sq = a1.mul(&a1, EXACT).unwrap();
        assert_eq!(gaussian_moments(&a1sq, 10).to_string(), "-1 * x1");
        let a2 = TruncatedSeries::a(n, 2);
        let a2_4 = a2.mul(&a2, EXACT).unwrap().mul(&a2, EXACT).unwrap().mul(&a2, EXACT).unwrap();
        let mixed = a1sq.mul(&a2_4, EXACT).unwrap();
        assert_eq!(gaussian_moments(&mixed, 10).to_string(), "-3 * x1*x2^2");
    }

    #[test]
    fn one_point_series() {
        let f = f_bur_series(1, 7).unwrap();
        assert_eq!(f.coefficient(&[1]), rat(1, 24));
        assert_eq!(f.coefficient(&[4]), rat(1, 1152));
        assert_eq!(f.coefficient(&[7]), rat(1, 82944));
        assert_eq!(f.unstable, Some(UnstableTerm::InverseSquare));
    }

    #[test]
    fn two_point_low_degree() {
        let f = f_bur_series(2, 2).unwrap();
        assert_eq!(f.unstable, Some(UnstableTerm::InverseSum));
        assert_eq!(f.coefficient(&[0, 2]), rat(1, 24));
        assert_eq!(f.coefficient(&[1, 1]), rat(1, 24));
        assert_eq!(f.coefficient(&[2, 0]), rat(1, 24));
        assert_eq!(f.rows().len(), 3);
    }

    #[test]
    fn three_point_constant() {
        let f = f_bur_series(3, 0).unwrap();
        assert_eq!(f.unstable, None);
        assert_eq!(f.coefficient(&[0, 0, 0]), int(1));
        assert_eq!(f.to_string(), "0,0,0;g=0;1\n");
    }

    #[test]
    fn grading_and_symmetry_of_stable_part() {
        for (n, d) in [(2, 6), (3, 5), (4, 3)] {
            let f = f_bur_series(n, d).unwrap();
            assert!(f.off_grade_terms().is_empty(), "n={n}");
            for tau in permutations(n).unwrap() {
                assert_eq!(f.stable.permuted(tau.images()), f.stable);
            }
        }
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(intersection_number(0, &[0, 0, 0]).unwrap(), int(1));
        assert_eq!(intersection_number(1, &[1]).unwrap(), rat(1, 24));
        assert_eq!(intersection_number(0, &[2]).unwrap(), int(0));
        assert_eq!(intersection_number(2, &[4]).unwrap(), rat(1, 1152));
        assert_eq!(intersection_number(0, &[1, 0, 0, 0]).unwrap(), int(1));
    }

    #[test]
    fn keys() {
        let k = CorrelatorKey::new(1, &[2, 0]);
        assert_eq!(k.d, vec![0, 2]);
        assert!(k.is_admissible());
        assert_eq!(k.to_string(), "1;0,2");
        assert_eq!(CorrelatorKey::all(2, 1).len(), 2);
        assert_eq!(CorrelatorKey::all(1, 0).len(), 0);
        assert_eq!(CorrelatorKey::all(3, 0), vec![CorrelatorKey::new(0, &[0, 0, 0])]);
        assert_eq!(CorrelatorKey::genus_for(&[4]), Some(2));
        assert_eq!(CorrelatorKey::genus_for(&[2]), None);
    }

    #[test]
    fn p_caps() {
        // criterion-one sizes
        assert_eq!(p_cap_for(4, 5), 6);
        assert_eq!(p_cap_for(3, 7), 9);
        assert_eq!(p_cap_for(2, 6), 8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn intersection_number_ignores_order(g in 0u32..3, seed in 0usize..50) {
            let keys: Vec<CorrelatorKey> = (1..=3).flat_map(|n| CorrelatorKey::all(n, g)).collect();
            prop_assume!(!keys.is_empty());
            let key = &keys[seed % keys.len()];
            let mut rev = key.d.clone();
            rev.reverse();
            prop_assert_eq!(intersection_number(g, &key.d).unwrap(), intersection_number(g, &rev).unwrap());
        }
    }
}
