//! Exact truncated power series in two variable blocks `a_1..a_n`, `x_1..x_n`.
//!
//! Coefficients are arbitrary-precision rationals. A series carries a total
//! degree bound `cap`: every stored term has degree `<= cap`, and every term of
//! degree `<= cap` of the underlying exact object is present. Products track
//! the bound through the valuation of each factor, so multiplying a truncated
//! series by an exact polynomial of valuation `v` raises the bound by `v`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::AlgebraError;

/// Exact rational scalar. Always reduced with a positive denominator.
pub type ExactScalar = BigRational;

/// Degree bound used for exact polynomials.
pub const EXACT: u32 = u32::MAX / 4;

pub fn rat(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(value))
}

/// Renders as `num/den`, or just `num` when the denominator is one.
pub fn render_scalar(value: &ExactScalar) -> String {
    value.to_string()
}

pub fn parse_scalar(text: &str) -> Option<ExactScalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// A monomial `prod a_j^{k_j} x_j^{e_j}`.
///
/// Ordered graded-lexicographically: by total degree, then lexicographically
/// on the exponent vector `(k_1..k_n, e_1..e_n)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u8; 12]>,
    degree: u32,
}

impl Monomial {
    pub fn new(a_exponents: &[u32], x_exponents: &[u32]) -> Self {
        assert_eq!(a_exponents.len(), x_exponents.len(), "blocks must have equal length");
        let exps: SmallVec<[u8; 12]> = a_exponents
            .iter()
            .chain(x_exponents)
            .map(|&e| u8::try_from(e).expect("exponent exceeds 255"))
            .collect();
        let degree = a_exponents.iter().chain(x_exponents).sum();
        Monomial { exps, degree }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, 2 * n), degree: 0 }
    }

    /// `a_i`, 1-based.
    pub fn a(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps[i - 1] = 1;
        m.degree = 1;
        m
    }

    /// `x_i`, 1-based.
    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps[n + i - 1] = 1;
        m.degree = 1;
        m
    }

    /// Pure `x` monomial with the given exponents.
    pub fn x_only(x_exponents: &[u32]) -> Self {
        Monomial::new(&vec![0; x_exponents.len()], x_exponents)
    }

    pub fn n(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn a_exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps[..self.n()].iter().map(|&e| e as u32)
    }

    pub fn x_exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps[self.n()..].iter().map(|&e| e as u32)
    }

    pub fn a_exp(&self, i: usize) -> u32 {
        self.exps[i - 1] as u32
    }

    pub fn x_exp(&self, i: usize) -> u32 {
        self.exps[self.n() + i - 1] as u32
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn a_degree(&self) -> u32 {
        self.a_exponents().sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.x_exponents().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent exceeds 255"))
            .collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, degree: self.degree - other.degree }
    }

    /// Relabels variables: the exponent of `a_i` (and `x_i`) moves to `a_{images[i-1]}`.
    fn permuted(&self, images: &[usize]) -> Monomial {
        let n = self.n();
        let mut exps = SmallVec::from_elem(0, 2 * n);
        for (i, &target) in images.iter().enumerate() {
            exps[target - 1] = self.exps[i];
            exps[n + target - 1] = self.exps[n + i];
        }
        Monomial { exps, degree: self.degree }
    }

    fn render(&self) -> String {
        let n = self.n();
        let mut factors = Vec::new();
        for (idx, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if idx < n { format!("a{}", idx + 1) } else { format!("x{}", idx - n + 1) };
            if e == 1 {
                factors.push(name);
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        factors.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate power series over `(a_1..a_n; x_1..x_n)` truncated at total degree `cap`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    n: usize,
    cap: u32,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl TruncatedSeries {
    pub fn zero(n: usize, cap: u32) -> Self {
        TruncatedSeries { n, cap: cap.min(EXACT), terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, value: ExactScalar, cap: u32) -> Self {
        Self::from_terms(n, cap, [(Monomial::one(n), value)])
    }

    pub fn one(n: usize, cap: u32) -> Self {
        Self::constant(n, ExactScalar::one(), cap)
    }

    /// The exact polynomial `a_i`.
    pub fn a(n: usize, i: usize) -> Self {
        Self::from_terms(n, EXACT, [(Monomial::a(n, i), ExactScalar::one())])
    }

    /// The exact polynomial `x_i`.
    pub fn x(n: usize, i: usize) -> Self {
        Self::from_terms(n, EXACT, [(Monomial::x(n, i), ExactScalar::one())])
    }

    /// Builds a series, merging repeated monomials and dropping zeros and
    /// terms above `cap`.
    pub fn from_terms<I>(n: usize, cap: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ExactScalar)>,
    {
        let cap = cap.min(EXACT);
        let mut map: BTreeMap<Monomial, ExactScalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.n(), n, "monomial over the wrong number of variables");
            if m.degree() > cap {
                continue;
            }
            *map.entry(m).or_insert_with(ExactScalar::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        TruncatedSeries { n, cap, terms: map }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_exact(&self) -> bool {
        self.cap >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coefficient(&Monomial::one(self.n))
    }

    /// Lowest degree present; `cap + 1` for the zero series.
    pub fn valuation(&self) -> u32 {
        self.terms.keys().next().map_or(self.cap.saturating_add(1), Monomial::degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(lo), Some(hi)) => lo.degree() == hi.degree(),
            _ => true,
        }
    }

    pub fn truncated(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= cap).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncatedSeries { n: self.n, cap, terms }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncatedSeries { n: self.n, cap: self.cap, terms }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::MismatchedVariables { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = self.truncated(cap);
        out.add_assign_truncated(other, ExactScalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = self.truncated(cap);
        out.add_assign_truncated(other, -ExactScalar::one());
        Ok(out)
    }

    /// `self += factor * other`, discarding terms above `self.cap`.
    fn add_assign_truncated(&mut self, other: &Self, factor: ExactScalar) {
        for (m, c) in &other.terms {
            if m.degree() > self.cap {
                break;
            }
            let entry = self.terms.entry(m.clone()).or_insert_with(ExactScalar::zero);
            *entry += c * &factor;
            if entry.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    /// `self + sign * other` where both share `n`; caps combine by minimum.
    pub(crate) fn accumulate(&mut self, other: &Self, negate: bool) {
        debug_assert_eq!(self.n, other.n);
        self.cap = self.cap.min(other.cap);
        let cap = self.cap;
        self.terms.retain(|m, _| m.degree() <= cap);
        let factor = if negate { -ExactScalar::one() } else { ExactScalar::one() };
        self.add_assign_truncated(other, factor);
    }

    pub fn scale(&self, factor: &ExactScalar) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n, self.cap);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect();
        TruncatedSeries { n: self.n, cap: self.cap, terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-ExactScalar::one())
    }

    /// Product truncated at `cap` (and at the precision the factors support).
    pub fn mul(&self, other: &Self, cap: u32) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let cap = cap
            .min(self.cap.saturating_add(other.valuation()))
            .min(other.cap.saturating_add(self.valuation()))
            .min(EXACT);
        let mut acc: HashMap<Monomial, ExactScalar> = HashMap::new();
        for (ms, cs) in &self.terms {
            if ms.degree() > cap {
                break;
            }
            for (mt, ct) in &other.terms {
                if ms.degree() + mt.degree() > cap {
                    break;
                }
                let m = ms.mul(mt);
                *acc.entry(m).or_insert_with(ExactScalar::zero) += cs * ct;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(TruncatedSeries { n: self.n, cap, terms })
    }

    /// Relabels variables by a permutation given as 1-based images:
    /// `a_i -> a_{images[i-1]}`, `x_i -> x_{images[i-1]}`.
    pub fn permuted(&self, images: &[usize]) -> Self {
        assert_eq!(images.len(), self.n, "permutation size must match n");
        let terms = self.terms.iter().map(|(m, c)| (m.permuted(images), c.clone())).collect();
        TruncatedSeries { n: self.n, cap: self.cap, terms }
    }

    /// Keeps only terms free of the `a` block.
    pub fn at_a_zero(&self) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.a_degree() == 0).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncatedSeries { n: self.n, cap: self.cap, terms }
    }
}

impl fmt::Display for TruncatedSeries {
    /// Canonical text: graded-lex ascending, `num/den * monomial`, e.g. `1/24 * x1^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = render_scalar(&c.abs());
            let body = if m.degree() == 0 { magnitude } else { format!("{magnitude} * {}", m.render()) };
            match (idx, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// Exact product truncated at `cap`.
pub fn series_mul(s: &TruncatedSeries, t: &TruncatedSeries, cap: u32) -> Result<TruncatedSeries, AlgebraError> {
    s.mul(t, cap)
}

/// `exp(p) = sum_m p^m / m!` for `p` without constant term.
pub fn series_exp(p: &TruncatedSeries, cap: u32) -> Result<TruncatedSeries, AlgebraError> {
    if !p.constant_term().is_zero() {
        return Err(AlgebraError::NonZeroConstant);
    }
    let cap = cap.min(p.cap());
    let mut result = TruncatedSeries::one(p.n(), cap);
    let mut term = TruncatedSeries::one(p.n(), cap);
    let mut m = 1i64;
    loop {
        term = term.mul(p, cap)?.scale(&rat(1, m));
        if term.is_zero() {
            break;
        }
        result.add_assign_truncated(&term, ExactScalar::one());
        m += 1;
    }
    result.cap = cap;
    Ok(result)
}

/// `zeta(L) = e^{L/2} - e^{-L/2} = sum_{k odd} L^k / (2^{k-1} k!)`.
pub fn zeta_series(l: &TruncatedSeries, cap: u32) -> Result<TruncatedSeries, AlgebraError> {
    if !l.constant_term().is_zero() {
        return Err(AlgebraError::NonZeroConstant);
    }
    let cap = cap.min(l.cap());
    let square = l.mul(l, cap)?;
    let mut power = l.truncated(cap);
    let mut result = power.clone();
    // 2^{k-1} k! for the current odd k
    let mut denom = BigInt::one();
    let mut k = 1i64;
    loop {
        power = power.mul(&square, cap)?;
        if power.is_zero() {
            break;
        }
        denom *= BigInt::from(4 * (k + 1) * (k + 2));
        k += 2;
        let coeff = BigRational::new(BigInt::one(), denom.clone());
        result.add_assign_truncated(&power, coeff);
    }
    result.cap = cap;
    Ok(result)
}

/// The bilinear form `a_j x_k - a_k x_j` (1-based, `j != k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BilinearForm {
    j: usize,
    k: usize,
}

impl BilinearForm {
    pub fn new(j: usize, k: usize) -> Result<Self, AlgebraError> {
        if j == k {
            return Err(AlgebraError::DegenerateForm(j));
        }
        Ok(BilinearForm { j, k })
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.j, self.k)
    }

    /// `form(k, j) = -form(j, k)`.
    pub fn reversed(&self) -> Self {
        BilinearForm { j: self.k, k: self.j }
    }

    pub fn to_series(&self, n: usize) -> Result<TruncatedSeries, AlgebraError> {
        for index in [self.j, self.k] {
            if index == 0 || index > n {
                return Err(AlgebraError::IndexOutOfRange { index, n });
            }
        }
        let plus = Monomial::a(n, self.j).mul(&Monomial::x(n, self.k));
        let minus = Monomial::a(n, self.k).mul(&Monomial::x(n, self.j));
        Ok(TruncatedSeries::from_terms(n, EXACT, [(plus, int(1)), (minus, int(-1))]))
    }
}

impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a{j}*x{k} - a{k}*x{j})", j = self.j, k = self.k)
    }
}

/// `x_1 + ... + x_n`.
pub fn sum_x(n: usize) -> TruncatedSeries {
    TruncatedSeries::from_terms(n, EXACT, (1..=n).map(|i| (Monomial::x(n, i), int(1))))
}

/// Divisors accepted by [`exact_divide`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisor {
    Bilinear(BilinearForm),
    SumX,
}

impl Divisor {
    pub fn to_series(&self, n: usize) -> Result<TruncatedSeries, AlgebraError> {
        match self {
            Divisor::Bilinear(form) => form.to_series(n),
            Divisor::SumX => Ok(sum_x(n)),
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divisor::Bilinear(form) => form.fmt(f),
            Divisor::SumX => f.write_str("(x1 + ... + xn)"),
        }
    }
}

/// Result of a gradewise division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotient: TruncatedSeries,
    pub remainder: TruncatedSeries,
}

impl Division {
    pub fn remainder_zero(&self) -> bool {
        self.remainder.is_zero()
    }
}

pub fn exact_divide(num: &TruncatedSeries, form: &Divisor) -> Result<Division, AlgebraError> {
    exact_divide_by(num, &form.to_series(num.n())?)
}

/// Divides `num` by a homogeneous polynomial grade by grade.
///
/// Grade `d` of the quotient comes from grade `d + deg(divisor)` of the
/// numerator, reduced against the graded-lex leading monomial of the divisor.
/// Whatever cannot be reduced lands in the remainder. Since a single
/// polynomial is a Groebner basis of the ideal it generates, a zero remainder
/// is equivalent to divisibility up to the numerator's cap.
pub fn exact_divide_by(num: &TruncatedSeries, divisor: &TruncatedSeries) -> Result<Division, AlgebraError> {
    num.check_compatible(divisor)?;
    let (lead_m, lead_c) = match divisor.terms.iter().next_back() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(AlgebraError::ZeroDivisor),
    };
    if !divisor.is_homogeneous() {
        return Err(AlgebraError::NonHomogeneousDivisor);
    }
    let degree = lead_m.degree();
    if num.cap < degree {
        return Err(AlgebraError::InsufficientPrecision { cap: num.cap, degree });
    }
    let quotient_cap = if num.is_exact() { EXACT } else { num.cap - degree };
    let tail: Vec<(Monomial, ExactScalar)> =
        divisor.terms.iter().rev().skip(1).map(|(m, c)| (m.clone(), c.clone())).collect();

    let mut work = num.terms.clone();
    let mut quotient = BTreeMap::new();
    let mut remainder = BTreeMap::new();
    while let Some((m, c)) = work.pop_last() {
        if m.degree() >= degree && lead_m.divides(&m) {
            let qm = m.div(&lead_m);
            let qc = &c / &lead_c;
            for (tm, tc) in &tail {
                let target = qm.mul(tm);
                let entry = work.entry(target.clone()).or_insert_with(ExactScalar::zero);
                *entry -= &qc * tc;
                if entry.is_zero() {
                    work.remove(&target);
                }
            }
            quotient.insert(qm, qc);
        } else {
            remainder.insert(m, c);
        }
    }
    Ok(Division {
        quotient: TruncatedSeries { n: num.n, cap: quotient_cap, terms: quotient },
        remainder: TruncatedSeries { n: num.n, cap: num.cap, terms: remainder },
    })
}
