//! Floating-point evaluation of both n-point formulas.
//!
//! The orthant side evaluates `E(y)` by splitting `R_{>=0}^n` according to
//! which coordinate is smallest: the minimum integrates out in closed form and
//! each face `r_k = 0` leaves an `(n-1)`-dimensional integral of a Gaussian
//! times a decaying exponential, done by tensor Gauss-Legendre on a box.
//!
//! The Gaussian side evaluates one term per cyclically ordered partition. In
//! `phi_j = f_j / X_j` the denominators only see differences, so the common
//! shift integrates to `sqrt(2 pi / X)` and an `(l-1)`-dimensional integral
//! over consecutive differences remains. That integrand is analytic in a strip
//! around the real axis, which the trapezoidal rule resolves to near machine
//! precision; tensor Gauss-Hermite in the original variables is kept as an
//! alternative rule.

use std::f64::consts::PI;

use gauss_quad::{GaussHermite, GaussLegendre};
use num::complex::Complex64;
use rayon::prelude::*;

use crate::combinatorics::{cyclic_class_reps, cyclic_ordered_partitions, set_partitions, CyclicComposition};
use crate::error::NumericError;

/// Relative size of the imaginary part tolerated for a real quantity.
pub const REALITY_THRESHOLD: f64 = 1e-10;

/// Exponent at which integrand tails are cut: `e^{-40}` is below double precision.
const TAIL: f64 = 40.0;

const MAX_E_POINTS: usize = 4;
const MAX_BUR_POINTS: usize = 3;

/// Quadrature used for the Gaussian-side integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QuadratureRule {
    /// Trapezoid on consecutive differences, step chosen from the pole distance.
    #[default]
    Trapezoid,
    /// Tensor Gauss-Hermite matched to `e^{-f^2 / 2X}` in every block variable.
    GaussHermite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericConfig {
    pub nodes_per_axis: usize,
    pub rule: QuadratureRule,
    pub target_rel_err: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { nodes_per_axis: 64, rule: QuadratureRule::Trapezoid, target_rel_err: 1e-8 }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<(), NumericError> {
        if self.nodes_per_axis < 8 {
            return Err(NumericError::Config(format!("nodes_per_axis must be >= 8, got {}", self.nodes_per_axis)));
        }
        if self.target_rel_err.is_nan() || self.target_rel_err <= 0.0 {
            return Err(NumericError::Config(format!("target_rel_err must be > 0, got {}", self.target_rel_err)));
        }
        Ok(())
    }
}

/// A complex value with the size of its imaginary part and a node-doubling
/// error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericResult {
    pub value: Complex64,
    pub abs_imag: f64,
    pub est_err: f64,
}

impl NumericResult {
    fn real(value: f64, est_err: f64) -> Self {
        NumericResult { value: Complex64::new(value, 0.0), abs_imag: 0.0, est_err }
    }

    fn complex(value: Complex64, est_err: f64) -> Self {
        NumericResult { value, abs_imag: value.im.abs(), est_err }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn rel_err(&self) -> f64 {
        self.est_err / self.value.norm()
    }

    fn scaled(self, factor: f64) -> Self {
        NumericResult::complex(self.value * factor, self.est_err * factor.abs())
    }
}

impl std::ops::Add for NumericResult {
    type Output = NumericResult;
    fn add(self, rhs: Self) -> Self {
        NumericResult::complex(self.value + rhs.value, self.est_err + rhs.est_err)
    }
}

fn check_points(x: &[f64], what: &'static str, max: usize) -> Result<(), NumericError> {
    if x.is_empty() {
        return Err(NumericError::NoPoints);
    }
    if x.len() > max {
        return Err(NumericError::TooManyPoints { what, max, got: x.len() });
    }
    if let Some(&bad) = x.iter().find(|v| v.is_nan() || **v <= 0.0 || !v.is_finite()) {
        return Err(NumericError::NonPositive(bad));
    }
    Ok(())
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        len => {
            let (l, r) = values.split_at(len / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        len => {
            let (l, r) = values.split_at(len / 2);
            pairwise_sum_complex(l) + pairwise_sum_complex(r)
        }
    }
}

/// Sum of `w(idx) f(point(idx))` over the tensor grid `nodes^dims`,
/// parallel over the first axis and reduced in a fixed order.
fn tensor_sum<T, F>(nodes: &[(f64, f64)], dims: usize, f: F, pairwise: fn(&[T]) -> T) -> T
where
    T: Send + Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    F: Fn(&[f64]) -> T + Sync,
{
    if dims == 0 {
        return f(&[]);
    }
    let slices: Vec<T> = (0..nodes.len())
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; dims];
            idx[0] = first;
            let mut point = vec![0.0; dims];
            let mut acc: Option<T> = None;
            loop {
                let mut w = 1.0;
                for (d, &i) in idx.iter().enumerate() {
                    point[d] = nodes[i].0;
                    w *= nodes[i].1;
                }
                let term = f(&point) * w;
                acc = Some(match acc {
                    Some(a) => a + term,
                    None => term,
                });
                // odometer over the trailing axes
                let mut d = dims - 1;
                loop {
                    if d == 0 {
                        return acc.expect("at least one node");
                    }
                    idx[d] += 1;
                    if idx[d] < nodes.len() {
                        break;
                    }
                    idx[d] = 0;
                    d -= 1;
                }
            }
        })
        .collect();
    pairwise(&slices)
}

fn legendre_on(n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(n).expect("at least two nodes");
    let half = 0.5 * (hi - lo);
    rule.as_node_weight_pairs().iter().map(|&(t, w)| (lo + half * (t + 1.0), w * half)).collect()
}

/// `sum_k J_k` for the orthant integral of `E`, at a given node count.
fn orthant_faces(y: &[f64], nodes: usize) -> f64 {
    let n = y.len();
    if n == 1 {
        return 1.0;
    }
    let c: Vec<f64> = (0..n).map(|j| 0.5 * (y[j] + y[(j + n - 1) % n])).collect();
    let c_min = c.iter().cloned().fold(f64::INFINITY, f64::min);
    let total: f64 = y.iter().sum();
    let box_len = (4.0 * TAIL * total).sqrt().min(TAIL / c_min);
    let grid = legendre_on(nodes, 0.0, box_len);
    let faces: Vec<f64> = (0..n)
        .map(|k| {
            tensor_sum(
                &grid,
                n - 1,
                |free| {
                    let mut r = [0.0; MAX_E_POINTS];
                    let mut it = free.iter();
                    for (j, slot) in r.iter_mut().enumerate().take(n) {
                        if j != k {
                            *slot = *it.next().expect("n-1 free coordinates");
                        }
                    }
                    let mut exponent = 0.0;
                    for j in 0..n {
                        let diff = r[j] - r[(j + 1) % n];
                        exponent += diff * diff / (4.0 * y[j]) + c[j] * r[j];
                    }
                    (-exponent).exp()
                },
                pairwise_sum,
            )
        })
        .collect();
    pairwise_sum(&faces)
}

/// `E(y) = e^{sum y^3/12} / prod sqrt(4 pi y_j) * int_{s >= 0} exp(-sum_j [(s_j - s_{j+1})^2/(4 y_j) + (s_j + s_{j+1}) y_j / 2]) ds`.
pub fn e_okounkov(y: &[f64], cfg: &NumericConfig) -> Result<NumericResult, NumericError> {
    cfg.validate()?;
    check_points(y, "e_okounkov", MAX_E_POINTS)?;
    let total: f64 = y.iter().sum();
    let prefactor = (y.iter().map(|v| v.powi(3)).sum::<f64>() / 12.0).exp()
        / y.iter().map(|v| (4.0 * PI * v).sqrt()).product::<f64>()
        / total;
    if y.len() == 1 {
        return Ok(NumericResult::real(prefactor, 0.0));
    }
    let coarse = orthant_faces(y, cfg.nodes_per_axis);
    let fine = orthant_faces(y, 2 * cfg.nodes_per_axis);
    Ok(NumericResult::real(prefactor * fine, prefactor * (fine - coarse).abs()))
}

/// `E` summed over cyclic orderings of its arguments.
pub fn e_cyclic(y: &[f64], cfg: &NumericConfig) -> Result<NumericResult, NumericError> {
    check_points(y, "e_cyclic", MAX_E_POINTS)?;
    let mut acc = NumericResult::real(0.0, 0.0);
    for rep in cyclic_class_reps(y.len())? {
        let permuted: Vec<f64> = rep.images().iter().map(|&i| y[i - 1]).collect();
        acc = acc + e_okounkov(&permuted, cfg)?;
    }
    Ok(acc)
}

/// `G(y) = sum over set partitions of (-1)^{l+1} E_cyclic(y_{I_1}, ..., y_{I_l})`.
pub fn g_okounkov(y: &[f64], cfg: &NumericConfig) -> Result<NumericResult, NumericError> {
    check_points(y, "g_okounkov", MAX_E_POINTS)?;
    let mut acc = NumericResult::real(0.0, 0.0);
    for partition in set_partitions(y.len())? {
        let sums: Vec<f64> = partition.blocks().iter().map(|b| b.iter().map(|&i| y[i - 1]).sum()).collect();
        let sign = if partition.len() % 2 == 1 { 1.0 } else { -1.0 };
        acc = acc + e_cyclic(&sums, cfg)?.scaled(sign);
    }
    Ok(acc)
}

fn cube_root_two() -> f64 {
    2f64.powf(1.0 / 3.0)
}

fn gaussian_prefactor(x: &[f64]) -> f64 {
    (2.0 * PI).powf(x.len() as f64 / 2.0) / x.iter().map(|v| v.sqrt()).product::<f64>()
}

/// `(2 pi)^{n/2} / prod sqrt(x_j) * G(x / 2^{1/3})`.
pub fn f_ok_numeric(x: &[f64], cfg: &NumericConfig) -> Result<NumericResult, NumericError> {
    check_points(x, "f_ok_numeric", MAX_E_POINTS)?;
    let y: Vec<f64> = x.iter().map(|v| v / cube_root_two()).collect();
    Ok(g_okounkov(&y, cfg)?.scaled(gaussian_prefactor(x)))
}

/// `int_{R^l} prod_j e^{-X_j phi_j^2 / 2} dphi_j / prod_j [i (phi_j - phi_{j+1}) - (X_j + X_{j+1})/2]`.
pub fn block_integral(blocks: &[f64], cfg: &NumericConfig) -> Result<NumericResult, NumericError> {
    cfg.validate()?;
    check_points(blocks, "block_integral", MAX_BUR_POINTS)?;
    let l = blocks.len();
    let total: f64 = blocks.iter().sum();
    if l == 1 {
        return Ok(NumericResult::real(-(2.0 * PI / total).sqrt() / total, 0.0));
    }
    match cfg.rule {
        QuadratureRule::Trapezoid => Ok(trapezoid_block_integral(blocks, cfg.nodes_per_axis)),
        QuadratureRule::GaussHermite => {
            let coarse = hermite_block_integral(blocks, cfg.nodes_per_axis);
            let fine = hermite_block_integral(blocks, 2 * cfg.nodes_per_axis);
            Ok(NumericResult::complex(fine, (fine - coarse).norm()))
        }
    }
}

fn pole_offsets(blocks: &[f64]) -> Vec<f64> {
    let l = blocks.len();
    (0..l).map(|j| 0.5 * (blocks[j] + blocks[(j + 1) % l])).collect()
}

fn hermite_block_integral(blocks: &[f64], nodes: usize) -> Complex64 {
    let l = blocks.len();
    let rule = GaussHermite::new(nodes).expect("at least two nodes");
    let grid: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    let c = pole_offsets(blocks);
    let scale: Vec<f64> = blocks.iter().map(|x| (2.0 / x).sqrt()).collect();
    let jacobian: f64 = scale.iter().product();
    let sum = tensor_sum(
        &grid,
        l,
        |u| {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..l {
                let next = (j + 1) % l;
                let diff = u[j] * scale[j] - u[next] * scale[next];
                denom *= Complex64::new(-c[j], diff);
            }
            denom.inv()
        },
        pairwise_sum_complex,
    );
    sum * jacobian
}

/// Centre direction in closed form; trapezoid over the `l-1` differences
/// `delta_j = phi_j - phi_{j+1}` on a symmetric grid. The coarse estimate
/// uses every other node of the same grid.
fn trapezoid_block_integral(blocks: &[f64], min_nodes: usize) -> NumericResult {
    let l = blocks.len();
    let dims = l - 1;
    let total: f64 = blocks.iter().sum();
    let c = pole_offsets(blocks);
    let x_min = blocks.iter().cloned().fold(f64::INFINITY, f64::min);
    let c_min = c.iter().cloned().fold(f64::INFINITY, f64::min);
    // e^{-q} <= e^{-x_min delta^2 / 4} along each axis
    let half_width = (4.0 * TAIL / x_min).sqrt();
    // poles sit at distance >= c_min from the real axis; keep half of it
    let step = PI * c_min / TAIL;
    let mut half_count = (half_width / step).ceil() as usize;
    half_count = half_count.max(min_nodes / 2).max(4);
    if half_count % 2 == 1 {
        half_count += 1;
    }
    let h = half_width / half_count as f64;
    let count = 2 * half_count + 1;

    let integrand = |delta: &[f64]| -> Complex64 {
        // D_1 = 0, D_{j+1} = D_j - delta_j
        let mut d = [0.0; MAX_BUR_POINTS];
        for j in 1..l {
            d[j] = d[j - 1] - delta[j - 1];
        }
        let mean: f64 = (0..l).map(|j| blocks[j] * d[j]).sum::<f64>() / total;
        let q = 0.5 * ((0..l).map(|j| blocks[j] * d[j] * d[j]).sum::<f64>() - total * mean * mean);
        let mut denom = Complex64::new(1.0, 0.0);
        let mut last = 0.0;
        for j in 0..dims {
            denom *= Complex64::new(-c[j], delta[j]);
            last -= delta[j];
        }
        denom *= Complex64::new(-c[l - 1], last);
        Complex64::new((-q).exp(), 0.0) / denom
    };

    let collect = |stride: usize| -> Complex64 {
        let nodes: Vec<(f64, f64)> = (0..count)
            .step_by(stride)
            .map(|i| (-half_width + i as f64 * h, h * stride as f64))
            .collect();
        tensor_sum(&nodes, dims, integrand, pairwise_sum_complex)
    };
    let centre = (2.0 * PI / total).sqrt();
    let fine = collect(1) * centre;
    let coarse = collect(2) * centre;
    NumericResult::complex(fine, (fine - coarse).norm())
}

/// One cyclic-partition term `e^{sum X^3/24} / (2 pi)^l * block_integral(X)`.
pub fn buryak_term(blocks: &[f64], cfg: &NumericConfig) -> Result<NumericResult, NumericError> {
    let l = blocks.len();
    let factor = (blocks.iter().map(|v| v.powi(3)).sum::<f64>() / 24.0).exp() / (2.0 * PI).powi(l as i32);
    Ok(block_integral(blocks, cfg)?.scaled(factor))
}

/// Gaussian-side n-point function summed over cyclically ordered partitions.
pub fn f_bur_numeric(x: &[f64], cfg: &NumericConfig) -> Result<NumericResult, NumericError> {
    check_points(x, "f_bur_numeric", MAX_BUR_POINTS)?;
    let mut acc = NumericResult::real(0.0, 0.0);
    for comp in cyclic_ordered_partitions(x.len())? {
        acc = acc + buryak_term(&comp.block_sums(x), cfg)?.scaled(-1.0);
    }
    let out = acc.scaled(gaussian_prefactor(x));
    if out.abs_imag > REALITY_THRESHOLD * out.value.re.abs() {
        return Err(NumericError::ConvergenceFailure { value: out.value.re, imag: out.abs_imag });
    }
    Ok(out)
}

/// Both sides of the term-wise identity for one cyclically ordered partition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermCorrespondence {
    pub gaussian_side: NumericResult,
    pub orthant_side: NumericResult,
}

impl TermCorrespondence {
    pub fn rel_diff(&self) -> f64 {
        (self.gaussian_side.value - self.orthant_side.value).norm() / self.orthant_side.value.norm()
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.rel_diff() <= tol
    }
}

/// `e^{sum X^3/24}/(2 pi)^l * integral` against `(-1)^l E(X / 2^{1/3})`.
pub fn term_correspondence(
    blocks: &CyclicComposition,
    x: &[f64],
    cfg: &NumericConfig,
) -> Result<TermCorrespondence, NumericError> {
    check_points(x, "term_correspondence", MAX_BUR_POINTS)?;
    let sums = blocks.block_sums(x);
    let gaussian_side = buryak_term(&sums, cfg)?;
    let y: Vec<f64> = sums.iter().map(|v| v / cube_root_two()).collect();
    let sign = if sums.len().is_multiple_of(2) { 1.0 } else { -1.0 };
    let orthant_side = e_okounkov(&y, cfg)?.scaled(sign);
    Ok(TermCorrespondence { gaussian_side, orthant_side })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::erf::erfc;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn one_point_closed_forms() {
        let e = e_okounkov(&[1.0], &cfg()).unwrap();
        assert!(rel(e.re(), (1.0f64 / 12.0).exp() / (4.0 * PI).sqrt()) < 1e-14);
        assert!((e.re() - 0.30661).abs() < 1e-5);
        let expected = (1.0f64 / 24.0).exp();
        assert!(rel(f_ok_numeric(&[1.0], &cfg()).unwrap().re(), expected) < 1e-12);
        assert!(rel(f_bur_numeric(&[1.0], &cfg()).unwrap().re(), expected) < 1e-12);
        for x in [0.3, 0.7, 1.5] {
            let closed = (x * x * x / 24.0f64).exp() / (x * x);
            assert!(rel(f_ok_numeric(&[x], &cfg()).unwrap().re(), closed) < 1e-12);
        }
    }

    /// Two-point orthant integral in closed form, per face:
    /// `int_0^inf exp(-a r^2 - b r) dr` with `a = 1/(4y1) + 1/(4y2)`, `b = (y1+y2)/2`.
    fn e_two_closed(y1: f64, y2: f64) -> f64 {
        let a = 0.25 / y1 + 0.25 / y2;
        let b = 0.5 * (y1 + y2);
        let face = 0.5 * (PI / a).sqrt() * (b * b / (4.0 * a)).exp() * erfc(b / (2.0 * a.sqrt()));
        let total = y1 + y2;
        ((y1.powi(3) + y2.powi(3)) / 12.0).exp() / ((4.0 * PI * y1).sqrt() * (4.0 * PI * y2).sqrt()) * 2.0 * face
            / total
    }

    #[test]
    fn two_point_orthant_matches_closed_form() {
        for (y1, y2) in [(0.5, 0.8), (0.16, 0.16), (1.2, 0.3)] {
            let e = e_okounkov(&[y1, y2], &cfg()).unwrap();
            assert!(rel(e.re(), e_two_closed(y1, y2)) < 1e-9, "{y1} {y2}: {e:?}");
            assert!(e.rel_err() < 1e-8);
        }
    }

    #[test]
    fn two_block_integral_matches_closed_form() {
        for (x1, x2) in [(0.5, 0.8), (0.3, 0.3), (1.5, 0.4)] {
            let total = x1 + x2;
            let a = x1 * x2 / (2.0 * total);
            let c = 0.5 * total;
            let closed = (2.0 * PI / total).sqrt() * (PI / c) * (a * c * c).exp() * erfc(c * a.sqrt());
            let k = block_integral(&[x1, x2], &cfg()).unwrap();
            assert!(rel(k.re(), closed) < 1e-10, "{x1} {x2}: {k:?} vs {closed}");
            assert!(k.abs_imag < 1e-12);
        }
    }

    #[test]
    fn hermite_rule_agrees_at_moderate_x() {
        let gh = NumericConfig { nodes_per_axis: 60, rule: QuadratureRule::GaussHermite, ..cfg() };
        let a = block_integral(&[1.0, 1.4], &gh).unwrap();
        let b = block_integral(&[1.0, 1.4], &cfg()).unwrap();
        assert!(rel(a.re(), b.re()) < 1e-4, "{a:?} {b:?}");
    }

    #[test]
    fn single_block_term_is_minus_e() {
        let comp = CyclicComposition::new(vec![vec![1, 2]]).unwrap();
        let t = term_correspondence(&comp, &[0.4, 0.9], &cfg()).unwrap();
        assert!(t.holds(1e-13), "{t:?}");
    }

    #[test]
    fn cyclic_invariance_of_e() {
        let y = [0.4, 0.7, 1.1];
        let a = e_okounkov(&y, &cfg()).unwrap().re();
        let b = e_okounkov(&[0.7, 1.1, 0.4], &cfg()).unwrap().re();
        assert!(rel(a, b) < 1e-9);
        let g1 = g_okounkov(&y, &cfg()).unwrap().re();
        let g2 = g_okounkov(&[1.1, 0.4, 0.7], &cfg()).unwrap().re();
        assert!(rel(g1, g2) < 1e-9);
    }

    #[test]
    fn two_point_theorem() {
        let x = [0.5, 0.8];
        let ok = f_ok_numeric(&x, &cfg()).unwrap();
        let bur = f_bur_numeric(&x, &cfg()).unwrap();
        assert!(rel(bur.re(), ok.re()) < 1e-6, "{bur:?} {ok:?}");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(e_okounkov(&[], &cfg()).unwrap_err(), NumericError::NoPoints);
        assert_eq!(e_okounkov(&[0.0], &cfg()).unwrap_err(), NumericError::NonPositive(0.0));
        assert!(matches!(f_bur_numeric(&[1.0; 4], &cfg()), Err(NumericError::TooManyPoints { .. })));
        let bad = NumericConfig { nodes_per_axis: 4, ..cfg() };
        assert!(matches!(e_okounkov(&[1.0, 1.0], &bad), Err(NumericError::Config(_))));
    }

    #[test]
    fn pairwise_sum_is_order_fixed() {
        let v: Vec<f64> = (0..1000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        assert_eq!(pairwise_sum(&v), pairwise_sum(&v));
        assert!((pairwise_sum(&v) - v.iter().sum::<f64>()).abs() < 1e-12);
    }
}
