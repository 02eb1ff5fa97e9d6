use std::collections::BTreeMap;

use super::Algebra;
use crate::error::{Error, Result};
use crate::Elem;

/// Binary relation on `0..n` as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> bool) -> Relation {
        let mut bits = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                bits.push(f(a, b));
            }
        }
        Relation { n, bits }
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn compose(&self, other: &Relation) -> Relation {
        Relation::from_fn(self.n, |a, c| (0..self.n).any(|b| self.get(a, b) && other.get(b, c)))
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.get(a, b) || self.get(b, a)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.n).filter(move |&b| self.get(a, b)).map(move |b| (a, b)))
    }
}

/// The natural partial order `≤` and natural preorder `⪯`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrders {
    pub leq: Relation,
    pub preceq: Relation,
}

/// `x ≤ y` iff `x∨y = y = y∨x`; `x ⪯ y` iff `y∨x∨y = y`.
///
/// Also checks that `x ≤ y` agrees with `x∨y∨x = y`, with `y∧x∧y = x` and
/// with `x∧y = x = y∧x`; on a skew lattice all four coincide.
pub fn natural_orders(a: &Algebra) -> Result<NaturalOrders> {
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            let join_form = a.join(x, y) == y && a.join(y, x) == y;
            let sandwich_join = a.join_sandwich(x, y) == y;
            let sandwich_meet = a.meet_sandwich(y, x) == x;
            let meet_form = a.meet(x, y) == x && a.meet(y, x) == x;
            if join_form != sandwich_join || join_form != sandwich_meet || join_form != meet_form {
                return Err(Error::CostaMismatch(x, y));
            }
        }
    }
    Ok(NaturalOrders {
        leq: Relation::from_fn(n, |x, y| a.join(x, y) == y && a.join(y, x) == y),
        preceq: preceq(a),
    })
}

pub(crate) fn preceq(a: &Algebra) -> Relation {
    Relation::from_fn(a.size(), |x, y| a.join_sandwich(y, x) == y)
}

#[inline]
pub(crate) fn leq(a: &Algebra, x: Elem, y: Elem) -> bool {
    a.join(x, y) == y && a.join(y, x) == y
}

#[inline]
pub(crate) fn is_preceq(a: &Algebra, x: Elem, y: Elem) -> bool {
    a.join_sandwich(y, x) == y
}

/// An equivalence partition of `0..n`. Blocks are sorted internally and
/// ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<Elem>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<Elem>>) -> Result<Partition> {
        let bad = |m: String| Error::PreconditionFailed(format!("invalid partition: {m}"));
        let mut block_of = vec![usize::MAX; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(bad("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &e in b {
                if e >= n {
                    return Err(bad(format!("element {e} out of range")));
                }
                if block_of[e] != usize::MAX {
                    return Err(bad(format!("element {e} appears twice")));
                }
                block_of[e] = i;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(bad(format!("element {e} is not covered")));
        }
        Ok(Partition { blocks, block_of })
    }

    /// Groups elements by a key.
    pub fn from_key<K: Ord>(n: usize, key: impl Fn(Elem) -> K) -> Partition {
        let mut groups: BTreeMap<K, Vec<Elem>> = BTreeMap::new();
        for e in 0..n {
            groups.entry(key(e)).or_default().push(e);
        }
        Partition::from_blocks(n, groups.into_values().collect()).expect("grouping is a partition")
    }

    /// Checks reflexivity, symmetry and transitivity first.
    pub fn from_equivalence(rel: &Relation, name: &'static str) -> Result<Partition> {
        let n = rel.size();
        let fail = |w: Vec<Elem>| Error::NotAnEquivalence {
            relation: name,
            witness: w,
        };
        for a in 0..n {
            if !rel.get(a, a) {
                return Err(fail(vec![a]));
            }
            for b in 0..n {
                if rel.get(a, b) != rel.get(b, a) {
                    return Err(fail(vec![a, b]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !rel.get(a, b) {
                    continue;
                }
                for c in 0..n {
                    if rel.get(b, c) && !rel.get(a, c) {
                        return Err(fail(vec![a, b, c]));
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let block: Vec<Elem> = (0..n).filter(|&b| rel.get(a, b)).collect();
            for &b in &block {
                seen[b] = true;
            }
            blocks.push(block);
        }
        Partition::from_blocks(n, blocks)
    }

    pub fn singletons(n: usize) -> Partition {
        Partition::from_key(n, |e| e)
    }

    pub fn total(n: usize) -> Partition {
        Partition::from_key(n, |_| ())
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[Elem] {
        &self.blocks[i]
    }

    #[inline]
    pub fn block_of(&self, e: Elem) -> usize {
        self.block_of[e]
    }

    #[inline]
    pub fn same(&self, a: Elem, b: Elem) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn carrier_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    pub fn as_relation(&self) -> Relation {
        Relation::from_fn(self.carrier_size(), |a, b| self.same(a, b))
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GreenRelation {
    D,
    L,
    R,
}

impl GreenRelation {
    pub fn name(self) -> &'static str {
        match self {
            GreenRelation::D => "D",
            GreenRelation::L => "L",
            GreenRelation::R => "R",
        }
    }
}

impl std::str::FromStr for GreenRelation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "D" | "d" => Ok(GreenRelation::D),
            "L" | "l" => Ok(GreenRelation::L),
            "R" | "r" => Ok(GreenRelation::R),
            other => Err(format!("unknown relation `{other}`, expected D, L or R")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Greens {
    pub d: Partition,
    pub l: Partition,
    pub r: Partition,
}

impl Greens {
    pub fn get(&self, rel: GreenRelation) -> &Partition {
        match rel {
            GreenRelation::D => &self.d,
            GreenRelation::L => &self.l,
            GreenRelation::R => &self.r,
        }
    }
}

/// Green's relations `D`, `L`, `R`, with `L∘R = R∘L = D` checked pointwise.
pub fn greens(a: &Algebra) -> Result<Greens> {
    let n = a.size();
    let pre = preceq(a);
    let d_rel = Relation::from_fn(n, |x, y| pre.get(x, y) && pre.get(y, x));
    let l_rel = Relation::from_fn(n, |x, y| a.meet(x, y) == x && a.meet(y, x) == y);
    let r_rel = Relation::from_fn(n, |x, y| a.meet(x, y) == y && a.meet(y, x) == x);
    let d = Partition::from_equivalence(&d_rel, "D")?;
    let l = Partition::from_equivalence(&l_rel, "L")?;
    let r = Partition::from_equivalence(&r_rel, "R")?;
    let lr = l_rel.compose(&r_rel);
    let rl = r_rel.compose(&l_rel);
    for x in 0..n {
        for y in 0..n {
            let want = d_rel.get(x, y);
            if lr.get(x, y) != want || rl.get(x, y) != want {
                return Err(Error::NotComposable(x, y));
            }
        }
    }
    Ok(Greens { d, l, r })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn chain2_orders() {
        let o = natural_orders(&chain2()).unwrap();
        assert!(o.leq.get(0, 1));
        assert!(!o.leq.get(1, 0));
        assert_eq!(o.leq, o.preceq);
    }

    #[test]
    fn rect2_orders() {
        let o = natural_orders(&rect2()).unwrap();
        assert!(o.preceq.get(0, 1) && o.preceq.get(1, 0));
        assert!(!o.leq.get(0, 1) && !o.leq.get(1, 0));
    }

    #[test]
    fn costa_mismatch_on_non_skew_lattice() {
        // ∧ = ∨ = max on a 2-chain: absorption fails
        let bad = Algebra::from_fns(2, |a, b| a.max(b), |a, b| a.max(b), Default::default()).unwrap();
        assert!(matches!(natural_orders(&bad), Err(Error::CostaMismatch(..))));
    }

    #[test]
    fn chain2_greens_are_discrete() {
        let g = greens(&chain2()).unwrap();
        assert!(g.d.is_discrete() && g.l.is_discrete() && g.r.is_discrete());
    }

    #[test]
    fn rect2_greens() {
        let g = greens(&rect2()).unwrap();
        assert_eq!(g.d.blocks(), &[vec![0, 1]]);
        assert_eq!(g.l.blocks(), &[vec![0, 1]]);
        assert!(g.r.is_discrete());
        let g = greens(&rect2_right()).unwrap();
        assert!(g.l.is_discrete());
        assert_eq!(g.r.len(), 1);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_blocks(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, vec![vec![0, 1]]).is_err());
        let p = Partition::from_blocks(3, vec![vec![2], vec![1, 0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2]]);
        assert_eq!(p.block_of(2), 1);
    }

    #[test]
    fn non_equivalence_is_reported() {
        let r = Relation::from_fn(3, |a, b| a <= b);
        assert!(matches!(
            Partition::from_equivalence(&r, "X"),
            Err(Error::NotAnEquivalence { relation: "X", .. })
        ));
    }
}
