use itertools::Itertools;

use crate::algebra::{Algebra, Constants, Table};
use crate::error::{Error, Result};
use crate::heyting::{heyting_arrow, CommutativeLattice};

/// Largest poset whose upset lattice is tabulated.
pub const UPSET_POINT_BOUND: usize = 12;

/// A finite partial order. Subsets are bitmasks over at most 64 points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Poset> {
        let n = names.len();
        let bad = |m: String| Error::PreconditionFailed(format!("not a partial order: {m}"));
        if n > 64 {
            return Err(Error::TooLarge { size: n, bound: 64 });
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(bad(format!("relation must be {n}×{n}")));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(bad(format!("`{}` is not below itself", names[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(bad(format!("`{}` and `{}` are mutually below", names[a], names[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(bad(format!(
                            "`{}` ≤ `{}` ≤ `{}` but not `{}` ≤ `{}`",
                            names[a], names[b], names[c], names[a], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Poset { names, leq })
    }

    /// Reflexive-transitive closure of `pairs` (`(a, b)` meaning `a ≤ b`).
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::PreconditionFailed(format!("pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if leq[a][k] && leq[k][b] {
                        leq[a][b] = true;
                    }
                }
            }
        }
        Poset::new(names, leq)
    }

    pub fn default_names(n: usize) -> Vec<String> {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_pairs(Poset::default_names(n), &[]).expect("antichain")
    }

    /// `a < b < c < …`
    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(Poset::default_names(n), &pairs).expect("chain")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn full(&self) -> u64 {
        mask_of(self.size())
    }

    pub fn up(&self, set: u64) -> u64 {
        self.closure(set, |a, b| self.leq(a, b))
    }

    pub fn down(&self, set: u64) -> u64 {
        self.closure(set, |a, b| self.leq(b, a))
    }

    fn closure(&self, set: u64, rel: impl Fn(usize, usize) -> bool) -> u64 {
        let n = self.size();
        (0..n)
            .filter(|&b| (0..n).any(|a| set >> a & 1 == 1 && rel(a, b)))
            .fold(0, |m, b| m | 1 << b)
    }

    pub fn is_upset(&self, set: u64) -> bool {
        self.up(set) == set
    }

    /// All upsets, ordered by size and then by mask.
    pub fn upsets(&self) -> Vec<u64> {
        let n = self.size();
        assert!(n < 64, "too many points to enumerate subsets");
        let mut out: Vec<u64> = (0..1u64 << n).filter(|&s| self.is_upset(s)).collect();
        out.sort_by_key(|&s| (s.count_ones(), s));
        out
    }

    pub fn set_name(&self, set: u64) -> String {
        let inner: Vec<&str> = (0..self.size())
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| self.names[i].as_str())
            .collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Relation under the relabeling `i ↦ perm[i]`, as a bit string.
    fn code(&self, perm: &[usize]) -> Vec<bool> {
        let n = self.size();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.leq[inv[a]][inv[b]])
            .collect()
    }

    /// Least relation code over all relabelings.
    pub fn canonical_code(&self) -> Vec<bool> {
        (0..self.size())
            .permutations(self.size())
            .map(|p| self.code(&p))
            .min()
            .unwrap_or_default()
    }
}

fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All posets on `n` points up to isomorphism, with points named `a, b, …`.
///
/// Every finite poset has a linear extension, so strict relations contained
/// in `i < j` cover all classes.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n > 6 {
        return Err(Error::TooLarge { size: n, bound: 6 });
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for bits in 0..1u64 << slots.len() {
        let pairs: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let p = Poset::from_pairs(Poset::default_names(n), &pairs)?;
        // only transitively closed choices, so each relation is met once
        if p.leq.iter().flatten().filter(|&&b| b).count() != pairs.len() + n {
            continue;
        }
        seen.entry(p.canonical_code()).or_insert(p);
    }
    Ok(seen.into_values().collect())
}

/// `U → V = X ∖ ↓(U ∖ V)` on the upsets of `p`.
pub fn esakia_arrow(p: &Poset, u: u64, v: u64) -> u64 {
    p.full() & !p.down(u & !v)
}

/// The lattice of upsets of `p` under ∩ and ∪, with the Esakia arrow,
/// checked entrywise against the order-theoretic arrow.
pub fn upset_heyting(p: &Poset) -> Result<Algebra> {
    if p.size() > UPSET_POINT_BOUND {
        return Err(Error::TooLarge {
            size: p.size(),
            bound: UPSET_POINT_BOUND,
        });
    }
    let ups = p.upsets();
    let index: std::collections::HashMap<u64, usize> =
        ups.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let k = ups.len();
    let op = |f: &dyn Fn(u64, u64) -> u64| Table::from_fn(k, |i, j| index[&f(ups[i], ups[j])]);
    let meet = op(&|a, b| a & b);
    let join = op(&|a, b| a | b);
    let arrow = op(&|a, b| esakia_arrow(p, a, b));
    let names = ups.iter().map(|&s| p.set_name(s)).collect();
    let a = Algebra::from_tables(meet, join, Constants::bounded(k - 1, 0), None)?.with_names(names)?;
    let oracle = heyting_arrow(&CommutativeLattice::new(a.clone())?)
        .map_err(|e| Error::EsakiaFormulaMismatch(e.y, e.z))?;
    for u in 0..k {
        for v in 0..k {
            if oracle.get(u, v) != arrow.get(u, v) {
                return Err(Error::EsakiaFormulaMismatch(u, v));
            }
        }
    }
    a.with_arrow(arrow)
}
