//! Index sets of the n-point formulas: permutations, set partitions, cyclically
//! ordered partitions, the cycles `C_m`, and the sign-tracking vectors
//! `A^sigma_{I,J}`.
//!
//! Enumeration orders are fixed (lexicographic on images, restricted growth
//! strings for partitions) and are part of the output contract.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::CombinatoricsError;
use crate::exact::ExactScalar;

/// A bijection of `{1..n}` stored by its 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, CombinatoricsError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(CombinatoricsError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `sigma(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, CombinatoricsError> {
        if self.len() != other.len() {
            return Err(CombinatoricsError::SizeMismatch(self.len(), other.len()));
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Permutation { images }
    }

    /// +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i32 {
        let mut visited = vec![false; self.len()];
        let mut sign = 1;
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !visited[k] {
                visited[k] = true;
                k = self.images[k] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order of image vectors.
pub fn permutations(n: usize) -> Result<Vec<Permutation>, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::EmptyGroundSet);
    }
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation { images: current.clone() }];
    while next_permutation(&mut current) {
        out.push(Permutation { images: current.clone() });
    }
    Ok(out)
}

/// The subgroup `sigma(1) = 1`, in lexicographic order.
pub fn permutations_fixing_first(n: usize) -> Result<Vec<Permutation>, CombinatoricsError> {
    Ok(permutations(n)?.into_iter().filter(|p| p.apply(1) == 1).collect())
}

/// One representative per orbit of `sigma -> sigma o (rotation)`; the
/// representative is the rotation with `sigma(1) = 1`.
pub fn cyclic_class_reps(n: usize) -> Result<Vec<Permutation>, CombinatoricsError> {
    permutations_fixing_first(n)
}

/// A set partition of `{1..n}`: blocks sorted internally and ordered by their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_blocks(&self.blocks))
    }
}

fn render_blocks(blocks: &[Vec<usize>]) -> String {
    let parts: Vec<String> = blocks.iter().map(|b| b.iter().map(usize::to_string).collect::<String>()).collect();
    format!("{{{}}}", parts.join("|"))
}

/// All `Bell(n)` set partitions, ordered by restricted growth string.
pub fn set_partitions(n: usize) -> Result<Vec<SetPartition>, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::EmptyGroundSet);
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        out.push(SetPartition { blocks });

        // advance the restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// An ordered block sequence `[I_1 | ... | I_l]` modulo rotation, stored with
/// the block containing 1 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicComposition {
    blocks: Vec<Vec<usize>>,
}

impl CyclicComposition {
    /// Canonicalizes an arbitrary rotation of the blocks.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self, CombinatoricsError> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(CombinatoricsError::EmptyGroundSet);
        }
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            block.sort_unstable();
            for &i in block.iter() {
                if i == 0 || i > n || seen[i] {
                    return Err(CombinatoricsError::NotAPermutation(blocks.concat()));
                }
                seen[i] = true;
            }
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(CombinatoricsError::NotAPermutation(blocks.concat()));
        }
        let first = blocks.iter().position(|b| b.contains(&1)).expect("1 is covered");
        blocks.rotate_left(first);
        Ok(CyclicComposition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `x_{I_j} = sum_{i in I_j} x_i` for each block in order.
    pub fn block_sums(&self, x: &[f64]) -> Vec<f64> {
        self.blocks.iter().map(|b| b.iter().map(|&i| x[i - 1]).sum()).collect()
    }
}

impl fmt::Display for CyclicComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.iter().map(usize::to_string).collect::<String>()).collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

/// For each set partition with `l` blocks, its `(l-1)!` cyclic orderings.
pub fn cyclic_ordered_partitions(n: usize) -> Result<Vec<CyclicComposition>, CombinatoricsError> {
    let mut out = Vec::new();
    for partition in set_partitions(n)? {
        let blocks = partition.blocks;
        for order in cyclic_class_reps(blocks.len())? {
            let ordered = order.images().iter().map(|&b| blocks[b - 1].clone()).collect();
            out.push(CyclicComposition { blocks: ordered });
        }
    }
    Ok(out)
}

/// The cycle `C_m = (1, m, m-1, ..., 2)` on `{1..n}`: `1 -> m`, `k -> k-1` for
/// `2 <= k <= m`, identity above `m`.
pub fn cycle_c(m: usize, n: usize) -> Result<Permutation, CombinatoricsError> {
    if m < 2 || m > n {
        return Err(CombinatoricsError::CycleOutOfRange { m, n });
    }
    let images = (1..=n)
        .map(|k| match k {
            1 => m,
            k if k <= m => k - 1,
            k => k,
        })
        .collect();
    Ok(Permutation { images })
}

/// All strictly increasing sequences of length `len` drawn from `lo..=hi`,
/// lexicographically.
pub fn increasing_sequences(lo: usize, hi: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, hi: usize, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in start..=hi {
            if hi + 1 - v < len - prefix.len() {
                break;
            }
            prefix.push(v);
            rec(v + 1, hi, len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        out.push(Vec::new());
    } else if hi >= lo {
        rec(lo, hi, len, &mut Vec::new(), &mut out);
    }
    out
}

/// Integer combination of the antisymmetric symbols `w_{jk}`, stored in the
/// basis `j < k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairVector {
    n: usize,
    coeffs: BTreeMap<(usize, usize), i64>,
}

impl PairVector {
    pub fn zero(n: usize) -> Self {
        let coeffs = (1..=n).flat_map(|j| (j + 1..=n).map(move |k| ((j, k), 0))).collect();
        PairVector { n, coeffs }
    }

    /// Adds `sign * w_{jk}` using `w_{kj} = -w_{jk}`.
    pub fn add_symbol(&mut self, j: usize, k: usize, sign: i64) {
        assert_ne!(j, k, "w_jj is not a basis symbol");
        let (key, s) = if j < k { ((j, k), sign) } else { ((k, j), -sign) };
        *self.coeffs.get_mut(&key).expect("index in range") += s;
    }

    /// Coefficient of `w_{jk}` for either ordering of the indices.
    pub fn get(&self, j: usize, k: usize) -> i64 {
        if j < k {
            self.coeffs[&(j, k)]
        } else {
            -self.coeffs[&(k, j)]
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }
}

impl fmt::Display for PairVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|((j, k), c)| format!("w{j}{k}:{c:+}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Coefficients of
/// `A^sigma_{I,J} = sum_{i in I} sum_{l<i} w_{sigma(l) sigma(i)} - sum_{j in J} sum_{l<j} w_{sigma(l) sigma(j)}`.
pub fn a_vector(sigma: &Permutation, i_set: &[usize], j_set: &[usize]) -> Result<PairVector, CombinatoricsError> {
    let n = sigma.len();
    let mut covered = vec![0u8; n + 1];
    for &i in i_set.iter().chain(j_set) {
        if i < 2 || i > n {
            return Err(CombinatoricsError::NotAPartition { n });
        }
        covered[i] += 1;
    }
    if covered[2..].iter().any(|&c| c != 1) {
        return Err(CombinatoricsError::NotAPartition { n });
    }
    let mut out = PairVector::zero(n);
    for (set, sign) in [(i_set, 1), (j_set, -1)] {
        for &i in set {
            for l in 1..i {
                out.add_symbol(sigma.apply(l), sigma.apply(i), sign);
            }
        }
    }
    Ok(out)
}

/// `A^sigma_{[2,n], {}}`, the exponent bookkeeping of the symmetric formula.
pub fn a_vector_full(sigma: &Permutation) -> PairVector {
    let all: Vec<usize> = (2..=sigma.len()).collect();
    a_vector(sigma, &all, &[]).expect("[2,n] partitions itself")
}

fn u(v: &[ExactScalar], j: usize, k: usize) -> Result<ExactScalar, CombinatoricsError> {
    let value = &v[j - 1] - &v[k - 1];
    if value.is_zero() {
        return Err(CombinatoricsError::CoincidentPoints { j, k });
    }
    Ok(value)
}

/// `Q(sigma) = 1 / (u_{s1 s2} u_{s2 s3} ... u_{s(n-1) sn})` with `u_{jk} = v_j - v_k`.
pub fn q_value(sigma: &Permutation, v: &[ExactScalar]) -> Result<ExactScalar, CombinatoricsError> {
    if v.len() != sigma.len() {
        return Err(CombinatoricsError::WrongPointCount { expected: sigma.len(), got: v.len() });
    }
    let mut denom = ExactScalar::one();
    for j in 1..sigma.len() {
        denom *= u(v, sigma.apply(j), sigma.apply(j + 1))?;
    }
    Ok(denom.recip())
}

/// Index `i` of the coset `S_{n-1} (1,i)` containing `sigma`, i.e. `sigma(i) = 1`
/// (`i = 1` for the subgroup itself).
pub fn coset_index(sigma: &Permutation) -> usize {
    sigma.inverse().apply(1)
}

/// Right-hand side of the `Q` identity for `sigma` in coset `i >= 2`:
/// `(-1)^{i-1} sum_{2 <= m_1 < ... < m_{i-1} <= n} Q(sigma C_{m_{i-1}}^{-1} ... C_{m_1}^{-1})`.
pub fn q_identity_rhs(sigma: &Permutation, v: &[ExactScalar]) -> Result<ExactScalar, CombinatoricsError> {
    let n = sigma.len();
    let i = coset_index(sigma);
    let mut total = ExactScalar::zero();
    for ms in increasing_sequences(2, n, i - 1) {
        let mut tau = sigma.clone();
        for &m in ms.iter().rev() {
            tau = tau.compose(&cycle_c(m, n)?.inverse())?;
        }
        total += q_value(&tau, v)?;
    }
    if (i - 1) % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// Left-hand side of
/// `sum_{m=r+1}^{n-1} u_{1,r+1} u_{m,m+1} / (u_{m,1} u_{1,m+1}) + u_{1,r+1} / u_{n,1} = -1`.
pub fn u_identity_lhs(n: usize, r: usize, v: &[ExactScalar]) -> Result<ExactScalar, CombinatoricsError> {
    if v.len() != n {
        return Err(CombinatoricsError::WrongPointCount { expected: n, got: v.len() });
    }
    let lead = u(v, 1, r + 1)?;
    let mut total = &lead / u(v, n, 1)?;
    for m in r + 1..n {
        total += &lead * u(v, m, m + 1)? / (u(v, m, 1)? * u(v, 1, m + 1)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn permutation_counts_and_order() {
        assert_eq!(permutations(2).unwrap(), vec![perm(&[1, 2]), perm(&[2, 1])]);
        assert_eq!(permutations_fixing_first(3).unwrap(), vec![perm(&[1, 2, 3]), perm(&[1, 3, 2])]);
        assert_eq!(permutations(4).unwrap().len(), 24);
        assert_eq!(permutations(0).unwrap_err(), CombinatoricsError::EmptyGroundSet);
    }

    #[test]
    fn cyclic_reps_count() {
        for (n, count) in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 24)] {
            assert_eq!(cyclic_class_reps(n).unwrap().len(), count);
        }
    }

    #[test]
    fn cyclic_reps_hit_every_rotation_orbit_once() {
        for n in 1..=5 {
            let reps = cyclic_class_reps(n).unwrap();
            let mut orbits = std::collections::BTreeSet::new();
            for p in permutations(n).unwrap() {
                // rotate the image sequence until it starts with 1
                let mut images = p.images().to_vec();
                let pos = images.iter().position(|&v| v == 1).unwrap();
                images.rotate_left(pos);
                orbits.insert(images);
            }
            let rep_images: std::collections::BTreeSet<_> = reps.iter().map(|r| r.images().to_vec()).collect();
            assert_eq!(orbits, rep_images);
        }
    }

    /// Brute-force Bell numbers: label every map {1..n} -> {1..n} and count
    /// the distinct induced partitions.
    fn brute_force_bell(n: usize) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut labels = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                labels.push(c % n);
                c /= n;
            }
            let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, l) in labels.iter().enumerate() {
                blocks.entry(*l).or_default().push(i + 1);
            }
            let mut bs: Vec<Vec<usize>> = blocks.into_values().collect();
            bs.sort();
            seen.insert(bs);
        }
        seen.len()
    }

    #[test]
    fn set_partition_counts() {
        let two = set_partitions(2).unwrap();
        assert_eq!(two.iter().map(ToString::to_string).collect::<Vec<_>>(), vec!["{12}", "{1|2}"]);
        assert_eq!(set_partitions(3).unwrap().len(), 5);
        assert_eq!(set_partitions(4).unwrap().len(), 15);
        assert_eq!(brute_force_bell(4), 15);
        for n in 1..=6 {
            let parts = set_partitions(n).unwrap();
            let distinct: std::collections::BTreeSet<_> = parts.iter().collect();
            assert_eq!(distinct.len(), parts.len());
            if n <= 5 {
                assert_eq!(parts.len(), brute_force_bell(n));
            }
        }
    }

    /// Enumerates ordered set compositions and quotients by rotation.
    fn brute_force_cyclic_compositions(n: usize) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        for p in set_partitions(n).unwrap() {
            for order in permutations(p.len()).unwrap() {
                let blocks: Vec<Vec<usize>> = order.images().iter().map(|&b| p.blocks()[b - 1].clone()).collect();
                seen.insert(CyclicComposition::new(blocks).unwrap());
            }
        }
        seen.len()
    }

    #[test]
    fn cyclic_composition_counts() {
        assert_eq!(brute_force_cyclic_compositions(2), 2);
        assert_eq!(brute_force_cyclic_compositions(3), 6);
        assert_eq!(brute_force_cyclic_compositions(4), 26);
        for n in 1..=5 {
            let list = cyclic_ordered_partitions(n).unwrap();
            let expected: usize = set_partitions(n).unwrap().iter().map(|p| factorial(p.len() - 1)).sum();
            assert_eq!(list.len(), expected);
            assert_eq!(list.len(), brute_force_cyclic_compositions(n));
        }
    }

    #[test]
    fn composition_canonical_rotation() {
        let c = CyclicComposition::new(vec![vec![3], vec![2, 1]]).unwrap();
        assert_eq!(c.blocks(), &[vec![1, 2], vec![3]]);
        assert_eq!(c.to_string(), "[12|3]");
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_c(2, 3).unwrap(), perm(&[2, 1, 3]));
        assert_eq!(cycle_c(3, 3).unwrap(), perm(&[3, 1, 2]));
        let c2 = cycle_c(2, 4).unwrap();
        assert!(c2.compose(&c2).unwrap().is_identity());
        assert!(cycle_c(1, 3).is_err());
        assert!(cycle_c(4, 3).is_err());
    }

    #[test]
    fn products_of_cycles_land_in_the_predicted_coset() {
        // C_{m_1} ... C_{m_{i-1}} lies in S_{n-1} (1, i)
        for n in 2..=5 {
            for len in 1..n {
                for ms in increasing_sequences(2, n, len) {
                    let mut p = Permutation::identity(n);
                    for &m in &ms {
                        p = p.compose(&cycle_c(m, n).unwrap()).unwrap();
                    }
                    assert_eq!(coset_index(&p), len + 1, "n={n}, ms={ms:?}");
                }
            }
        }
    }

    #[test]
    fn sign_and_inverse() {
        assert_eq!(perm(&[2, 1, 3]).sign(), -1);
        assert_eq!(perm(&[2, 3, 1]).sign(), 1);
        for p in permutations(4).unwrap() {
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn a_vectors() {
        let id = Permutation::identity(4);
        let full = a_vector(&id, &[2, 3, 4], &[]).unwrap();
        assert!(full.entries().all(|(_, c)| c == 1));

        let c2 = cycle_c(2, 3).unwrap();
        let v = a_vector(&c2, &[2, 3], &[]).unwrap();
        assert_eq!((v.get(1, 2), v.get(1, 3), v.get(2, 3)), (-1, 1, 1));

        let w = a_vector(&Permutation::identity(3), &[3], &[2]).unwrap();
        assert_eq!(w, v);

        assert!(a_vector(&id, &[2, 3], &[3, 4]).is_err());
        assert!(a_vector(&id, &[2], &[4]).is_err());
    }

    #[test]
    fn q_values() {
        let v = vec![int(0), int(1)];
        assert_eq!(q_value(&Permutation::identity(2), &v).unwrap(), int(-1));
        assert_eq!(q_value(&perm(&[2, 1]), &v).unwrap(), int(1));
        let v3 = vec![int(0), int(1), int(3)];
        assert_eq!(q_value(&Permutation::identity(3), &v3).unwrap(), rat(1, 2));
        let clash = vec![int(2), int(2)];
        assert!(matches!(
            q_value(&Permutation::identity(2), &clash),
            Err(CombinatoricsError::CoincidentPoints { .. })
        ));
    }

    #[test]
    fn u_identity_hand_instance() {
        let v = vec![int(0), int(1), int(3)];
        assert_eq!(u_identity_lhs(3, 1, &v).unwrap(), int(-1));
        assert_eq!(u_identity_lhs(3, 2, &v).unwrap(), int(-1));
    }

    /// `Q` identity with products read left to right (`(s t)(i) = t(s(i))`) and
    /// cosets `S_{n-1} (1,i)` read the same way, i.e. `sigma(1) = i`.
    fn q_identity_holds_diagrammatic(sigma: &Permutation, v: &[ExactScalar]) -> bool {
        let n = sigma.len();
        let i = sigma.apply(1);
        let mut total = ExactScalar::zero();
        for ms in increasing_sequences(2, n, i - 1) {
            let mut tau = sigma.clone();
            for &m in ms.iter().rev() {
                tau = cycle_c(m, n).unwrap().inverse().compose(&tau).unwrap();
            }
            total += q_value(&tau, v).unwrap();
        }
        if (i - 1) % 2 == 1 {
            total = -total;
        }
        q_value(sigma, v).unwrap() == total
    }

    #[test]
    fn composition_convention_is_selected_by_the_q_identity() {
        let v: Vec<ExactScalar> = [3, -7, 11, 2, -5].iter().map(|&k| rat(k, k.abs() % 4 + 1)).collect();
        for n in 2..=5 {
            let v = &v[..n];
            let mut diagrammatic_ok = true;
            for sigma in permutations(n).unwrap() {
                assert_eq!(q_value(&sigma, v).unwrap(), q_identity_rhs(&sigma, v).unwrap(), "n={n} sigma={sigma}");
                diagrammatic_ok &= q_identity_holds_diagrammatic(&sigma, v);
            }
            if n >= 3 {
                assert!(!diagrammatic_ok, "the opposite convention should fail at n={n}");
            }
        }
    }

    #[test]
    fn increasing_sequence_enumeration() {
        assert_eq!(increasing_sequences(2, 4, 2), vec![vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(increasing_sequences(2, 4, 0), vec![Vec::<usize>::new()]);
        assert!(increasing_sequences(2, 3, 3).is_empty());
    }
}
