//! Intersection numbers from the DVV (Virasoro) recursion.
//!
//! Two evaluation strategies share one recursion. [`Strategy::FastPaths`]
//! shortcuts genus zero, the string equation and the dilaton equation before
//! falling back to the recursion; [`Strategy::PureDvv`] uses only the
//! recursion with the two base values `<tau_0^3>_0 = 1` and `<tau_1>_1 = 1/24`,
//! so string and dilaton identities checked on it are not tautological.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::RwLock;

use num::{One, Zero};

use crate::buryak::CorrelatorKey;
use crate::error::CacheError;
use crate::exact::{int, parse_scalar, rat, render_scalar, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    FastPaths,
    PureDvv,
}

/// `(2k-1)!!` with `(-1)!! = 1`.
fn odd_double_factorial(k: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut j = 2 * k as i64 - 1;
    while j > 1 {
        acc *= int(j);
        j -= 2;
    }
    acc
}

fn factorial(k: u32) -> ExactScalar {
    (1..=k as i64).fold(ExactScalar::one(), |acc, j| acc * int(j))
}

/// `(n-3)! / prod d_i!` when `sum d = n - 3`, else 0.
pub fn genus_zero(ds: &[u32]) -> ExactScalar {
    let n = ds.len() as u32;
    if n < 3 || ds.iter().sum::<u32>() != n - 3 {
        return ExactScalar::zero();
    }
    ds.iter().fold(factorial(n - 3), |acc, &d| acc / factorial(d))
}

/// Memoized correlators, optionally backed by a cache file.
#[derive(Debug, Default)]
pub struct CorrelatorTable {
    strategy: Strategy,
    memo: RwLock<HashMap<CorrelatorKey, ExactScalar>>,
}

/// Two sides of an identity among correlators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySides {
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

impl IdentitySides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl CorrelatorTable {
    pub fn new(strategy: Strategy) -> Self {
        CorrelatorTable { strategy, memo: RwLock::new(HashMap::new()) }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `<tau_{d_1} ... tau_{d_n}>_g`; zero for unstable or off-dimension keys.
    pub fn correlator(&self, genus: u32, ds: &[u32]) -> ExactScalar {
        self.value(&CorrelatorKey::new(genus, ds))
    }

    pub fn value(&self, key: &CorrelatorKey) -> ExactScalar {
        if key.d.is_empty() || !key.is_admissible() {
            return ExactScalar::zero();
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(key) {
            return v.clone();
        }
        let v = self.compute(key);
        self.memo.write().expect("memo lock").insert(key.clone(), v.clone());
        v
    }

    fn compute(&self, key: &CorrelatorKey) -> ExactScalar {
        let g = key.genus;
        let d = &key.d;
        if g == 0 && d.iter().all(|&x| x == 0) {
            return ExactScalar::one();
        }
        if g == 1 && d.as_slice() == [1] {
            return rat(1, 24);
        }
        if self.strategy == Strategy::FastPaths {
            if g == 0 {
                return genus_zero(d);
            }
            if let Some(pos) = d.iter().position(|&x| x == 0) {
                return self.string_rhs(g, &remove_at(d, pos));
            }
            if let Some(pos) = d.iter().position(|&x| x == 1) {
                let rest = remove_at(d, pos);
                let factor = 2 * g as i64 - 2 + rest.len() as i64;
                return int(factor) * self.correlator(g, &rest);
            }
        }
        let pivot = d.iter().enumerate().max_by_key(|(_, &v)| v).map(|(i, _)| i).expect("non-empty");
        self.recursion_at(g, d, pivot)
    }

    /// `sum_j <tau_{d_j - 1} prod_{i != j} tau_{d_i}>_g`.
    fn string_rhs(&self, genus: u32, rest: &[u32]) -> ExactScalar {
        let mut total = ExactScalar::zero();
        for j in 0..rest.len() {
            if rest[j] == 0 {
                continue;
            }
            let mut lowered = rest.to_vec();
            lowered[j] -= 1;
            total += self.correlator(genus, &lowered);
        }
        total
    }

    /// The DVV recursion solved for `<tau_{m+1} X>_g`, with the pivot
    /// `tau_{m+1}` taken at position `pivot` of `ds` (requires `ds[pivot] >= 1`).
    pub fn recursion_at(&self, genus: u32, ds: &[u32], pivot: usize) -> ExactScalar {
        assert!(ds[pivot] >= 1, "pivot index must be at least 1");
        let m = ds[pivot] - 1;
        let rest = remove_at(ds, pivot);
        let mut total = ExactScalar::zero();

        for j in 0..rest.len() {
            let dj = rest[j];
            let coeff = odd_double_factorial(m + dj + 1) / odd_double_factorial(dj);
            let mut merged = rest.clone();
            merged[j] = m + dj;
            total += coeff * self.correlator(genus, &merged);
        }

        let mut quadratic = ExactScalar::zero();
        for a in 0..m {
            let b = m - 1 - a;
            let weight = odd_double_factorial(a + 1) * odd_double_factorial(b + 1);
            let mut inner = ExactScalar::zero();
            if genus > 0 {
                let mut handle = rest.clone();
                handle.push(a);
                handle.push(b);
                inner += self.correlator(genus - 1, &handle);
            }
            let count = rest.len();
            for mask in 0u32..(1 << count) {
                let mut left = vec![a];
                let mut right = vec![b];
                for (i, &v) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(v);
                    } else {
                        right.push(v);
                    }
                }
                let Some(g1) = CorrelatorKey::genus_for(&left) else { continue };
                if g1 > genus {
                    continue;
                }
                let g2 = genus - g1;
                let l = self.correlator(g1, &left);
                if l.is_zero() {
                    continue;
                }
                inner += l * self.correlator(g2, &right);
            }
            quadratic += weight * inner;
        }
        total += quadratic / int(2);
        total / odd_double_factorial(m + 2)
    }

    /// `<tau_0 X>_g` against `sum_j <tau_{d_j - 1} ...>_g`.
    pub fn string_identity_check(&self, genus: u32, rest: &[u32]) -> IdentitySides {
        let mut full = vec![0];
        full.extend_from_slice(rest);
        IdentitySides { lhs: self.correlator(genus, &full), rhs: self.string_rhs(genus, rest) }
    }

    /// `<tau_1 X>_g` against `(2g - 2 + n_X) <X>_g`.
    pub fn dilaton_identity_check(&self, genus: u32, rest: &[u32]) -> IdentitySides {
        let mut full = vec![1];
        full.extend_from_slice(rest);
        let factor = 2 * genus as i64 - 2 + rest.len() as i64;
        IdentitySides { lhs: self.correlator(genus, &full), rhs: int(factor) * self.correlator(genus, rest) }
    }

    /// Coefficient of `t_K` in `U_{t_1} = U U_{t_0} + U_{t_0 t_0 t_0} / 12` with
    /// `U = d^2 F / dt_0^2`, genera summed. `None` if `sum_{d in K} (d+1)`
    /// exceeds `max_total`.
    pub fn kdv_first_equation_check(&self, k: &[u32], max_total: u32) -> Option<IdentitySides> {
        if k.iter().map(|d| d + 1).sum::<u32>() > max_total {
            return None;
        }
        let with = |prefix: &[u32], tail: &[u32]| -> ExactScalar {
            let mut ds = prefix.to_vec();
            ds.extend_from_slice(tail);
            match CorrelatorKey::genus_for(&ds) {
                Some(g) => self.correlator(g, &ds),
                None => ExactScalar::zero(),
            }
        };
        let lhs = with(&[1, 0, 0], k);
        let mut rhs = with(&[0, 0, 0, 0, 0], k) / int(12);
        for mask in 0u32..(1 << k.len()) {
            let (mut i_part, mut j_part) = (Vec::new(), Vec::new());
            for (pos, &v) in k.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    i_part.push(v);
                } else {
                    j_part.push(v);
                }
            }
            rhs += with(&[0, 0], &i_part) * with(&[0, 0, 0], &j_part);
        }
        Some(IdentitySides { lhs, rhs })
    }

    /// Memo contents in the canonical text format, sorted by key.
    pub fn render(&self) -> String {
        let memo = self.memo.read().expect("memo lock");
        let mut entries: Vec<_> = memo.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        entries.into_iter().map(|(k, v)| format!("{k};{}\n", render_scalar(v))).collect()
    }

    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        let mut file = fs::File::create(path)?;
        file.write_all(self.render().as_bytes())?;
        Ok(())
    }

    /// Loads cached values (a missing file is an empty cache), then
    /// recomputes up to `spot_checks` entries from scratch to catch corruption.
    pub fn load(path: &Path, strategy: Strategy, spot_checks: usize) -> Result<Self, CacheError> {
        let table = CorrelatorTable::new(strategy);
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(table),
            Err(e) => return Err(e.into()),
        };
        let entries = parse_cache(&text)?;
        let step = (entries.len() / spot_checks.max(1)).max(1);
        for (key, value) in entries.iter().step_by(step).take(spot_checks) {
            let fresh = CorrelatorTable::new(strategy).value(key);
            if &fresh != value {
                return Err(CacheError::Corrupt {
                    key: key.to_string(),
                    cached: render_scalar(value),
                    fresh: render_scalar(&fresh),
                });
            }
        }
        table.memo.write().expect("memo lock").extend(entries);
        Ok(table)
    }
}

/// Parses `g;d_1,...,d_n;num/den` lines.
pub fn parse_cache(text: &str) -> Result<Vec<(CorrelatorKey, ExactScalar)>, CacheError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: &str| CacheError::Parse { line: idx + 1, reason: reason.to_string() };
        let mut parts = line.split(';');
        let (Some(g), Some(ds), Some(v), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected three ';'-separated fields"));
        };
        let genus: u32 = g.parse().map_err(|_| bad("genus is not a non-negative integer"))?;
        let ds: Vec<u32> = ds
            .split(',')
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| bad("indices must be non-negative integers"))?;
        let value = parse_scalar(v).ok_or_else(|| bad("value is not a rational"))?;
        let key = CorrelatorKey::new(genus, &ds);
        if !key.is_admissible() {
            return Err(bad("key is unstable or violates the dimension constraint"));
        }
        out.push((key, value));
    }
    Ok(out)
}

fn remove_at(ds: &[u32], pos: usize) -> Vec<u32> {
    let mut out = ds.to_vec();
    out.remove(pos);
    out
}
