use super::quotient::HomMap;
use super::relations::is_preceq;
use super::{Algebra, Table};
use crate::error::{Error, Result};
use crate::Elem;

pub const DEFAULT_ISO_BOUND: usize = 12;

const NONE: usize = usize::MAX;

/// Isomorphism-invariant data per element; candidates must match exactly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    d_class: usize,
    l_class: usize,
    r_class: usize,
    above: usize,
    below: usize,
    pre_above: usize,
    top: bool,
    bottom: bool,
}

fn signatures(a: &Algebra, use_constants: (bool, bool)) -> Vec<Signature> {
    a.elements()
        .map(|x| {
            let mut s = Signature {
                d_class: 0,
                l_class: 0,
                r_class: 0,
                above: 0,
                below: 0,
                pre_above: 0,
                top: use_constants.0 && a.top() == Some(x),
                bottom: use_constants.1 && a.bottom() == Some(x),
            };
            for y in a.elements() {
                let (xy, yx) = (is_preceq(a, x, y), is_preceq(a, y, x));
                s.d_class += usize::from(xy && yx);
                s.pre_above += usize::from(xy);
                s.l_class += usize::from(a.meet(x, y) == x && a.meet(y, x) == y);
                s.r_class += usize::from(a.meet(x, y) == y && a.meet(y, x) == x);
                s.above += usize::from(a.join(x, y) == y && a.join(y, x) == y);
                s.below += usize::from(a.join(x, y) == x && a.join(y, x) == x);
            }
            s
        })
        .collect()
}

struct Search<'a> {
    ops: Vec<(&'a Table, &'a Table)>,
    sig_a: Vec<Signature>,
    sig_b: Vec<Signature>,
    order: Vec<Elem>,
    fwd: Vec<usize>,
    back: Vec<usize>,
    trail: Vec<Elem>,
}

impl Search<'_> {
    /// Assigns `x ↦ y` and everything it forces through the tables.
    fn assign(&mut self, x: Elem, y: Elem) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if self.fwd[x] != NONE {
                if self.fwd[x] != y {
                    return false;
                }
                continue;
            }
            if self.back[y] != NONE || self.sig_a[x] != self.sig_b[y] {
                return false;
            }
            self.fwd[x] = y;
            self.back[y] = x;
            self.trail.push(x);
            for i in 0..self.trail.len() {
                let z = self.trail[i];
                let fz = self.fwd[z];
                for (ta, tb) in &self.ops {
                    queue.push((ta.get(x, z), tb.get(y, fz)));
                    queue.push((ta.get(z, x), tb.get(fz, y)));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail above mark");
            self.back[self.fwd[x]] = NONE;
            self.fwd[x] = NONE;
        }
    }

    fn solve(&mut self) -> bool {
        let Some(&x) = self.order.iter().find(|&&x| self.fwd[x] == NONE) else {
            return true;
        };
        for y in 0..self.sig_b.len() {
            if self.back[y] != NONE || self.sig_b[y] != self.sig_a[x] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Searches for an isomorphism respecting ∧, ∨, the arrow (when both carry
/// one) and each constant designated on both sides.
///
/// Backtracks over signature-compatible assignments and propagates every
/// value forced by the operation tables.
pub fn find_isomorphism(a: &Algebra, b: &Algebra, bound: usize) -> Result<Option<HomMap>> {
    let size = a.size().max(b.size());
    if size > bound {
        return Err(Error::TooLarge { size, bound });
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let shared = (
        a.top().is_some() && b.top().is_some(),
        a.bottom().is_some() && b.bottom().is_some(),
    );
    let sig_a = signatures(a, shared);
    let sig_b = signatures(b, shared);
    let (mut sa, mut sb) = (sig_a.clone(), sig_b.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let mut ops = vec![
        (a.meet_table(), b.meet_table()),
        (a.join_table(), b.join_table()),
    ];
    if let (Some(ta), Some(tb)) = (a.arrow_table(), b.arrow_table()) {
        ops.push((ta, tb));
    }
    // Rarest signatures first.
    let mut order: Vec<Elem> = a.elements().collect();
    order.sort_by_key(|&x| (sig_a.iter().filter(|s| **s == sig_a[x]).count(), x));
    let n = a.size();
    let mut search = Search {
        ops,
        sig_a,
        sig_b,
        order,
        fwd: vec![NONE; n],
        back: vec![NONE; n],
        trail: Vec::with_capacity(n),
    };
    if shared.0 && !search.assign(a.top().unwrap(), b.top().unwrap()) {
        return Ok(None);
    }
    if shared.1 && !search.assign(a.bottom().unwrap(), b.bottom().unwrap()) {
        return Ok(None);
    }
    if !search.solve() {
        return Ok(None);
    }
    let hom = HomMap {
        source: a.clone(),
        target: b.clone(),
        map: search.fwd,
    };
    debug_assert!(hom.is_homomorphism() && hom.is_bijective());
    Ok(Some(hom))
}

#[cfg(test)]
mod tests {
    use super::super::construct::{direct_product, vertical_dual};
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn relabeled_chain_is_found() {
        let c = chain2();
        let swapped = c.relabel(&[1, 0]);
        let iso = find_isomorphism(&c, &swapped, DEFAULT_ISO_BOUND).unwrap().unwrap();
        assert_eq!(iso.map, vec![1, 0]);
    }

    #[test]
    fn chain_vs_rect_is_none() {
        assert!(find_isomorphism(&chain2(), &rect2(), DEFAULT_ISO_BOUND).unwrap().is_none());
        assert!(find_isomorphism(&rect2(), &rect2_right(), DEFAULT_ISO_BOUND).unwrap().is_none());
    }

    #[test]
    fn unit_law_for_products() {
        let a = direct_product(&chain2(), &rect2());
        let b = direct_product(&a, &Algebra::trivial());
        assert!(find_isomorphism(&a, &b, DEFAULT_ISO_BOUND).unwrap().is_some());
    }

    #[test]
    fn bound_is_enforced() {
        let c = chain(13);
        assert!(matches!(
            find_isomorphism(&c, &c, DEFAULT_ISO_BOUND),
            Err(Error::TooLarge { size: 13, bound: 12 })
        ));
        assert!(find_isomorphism(&c, &c, 13).unwrap().is_some());
    }

    #[test]
    fn chain_is_self_dual_up_to_constants() {
        let c = chain(5);
        let d = vertical_dual(&c);
        let iso = find_isomorphism(&c, &d, DEFAULT_ISO_BOUND).unwrap().unwrap();
        assert_eq!(iso.map, vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn random_relabelings_are_recovered() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = direct_product(&direct_product(&chain2(), &rect2()), &rect2_right());
        for _ in 0..10 {
            let mut perm: Vec<Elem> = base.elements().collect();
            perm.shuffle(&mut rng);
            let other = base.relabel(&perm);
            let iso = find_isomorphism(&base, &other, DEFAULT_ISO_BOUND).unwrap().unwrap();
            assert!(iso.is_homomorphism() && iso.is_bijective());
        }
    }
}
