use super::relations::{greens, GreenRelation, Partition};
use super::{Algebra, Constants, Table};
use crate::error::{Error, Result};
use crate::report::{Check, Witness};
use crate::Elem;

/// A total map between carriers, intended to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    pub source: Algebra,
    pub target: Algebra,
    pub map: Vec<Elem>,
}

impl HomMap {
    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e]
    }

    /// First operation-table entry (or constant) the map fails to preserve.
    /// The arrow is compared only when both sides carry one.
    pub fn violation(&self) -> Option<Witness> {
        let (s, t) = (&self.source, &self.target);
        let f = |e| self.map[e];
        for a in s.elements() {
            for b in s.elements() {
                if f(s.meet(a, b)) != t.meet(f(a), f(b)) {
                    return Some(Witness::new(&["a", "b"], &[a, b]).with_note("meet not preserved"));
                }
                if f(s.join(a, b)) != t.join(f(a), f(b)) {
                    return Some(Witness::new(&["a", "b"], &[a, b]).with_note("join not preserved"));
                }
                if s.arrow_table().is_some()
                    && t.arrow_table().is_some()
                    && f(s.arrow(a, b)) != t.arrow(f(a), f(b))
                {
                    return Some(Witness::new(&["a", "b"], &[a, b]).with_note("arrow not preserved"));
                }
            }
        }
        if let (Some(x), Some(y)) = (s.top(), t.top()) {
            if f(x) != y {
                return Some(Witness::new(&["top"], &[x]).with_note("top not preserved"));
            }
        }
        if let (Some(x), Some(y)) = (s.bottom(), t.bottom()) {
            if f(x) != y {
                return Some(Witness::new(&["bottom"], &[x]).with_note("bottom not preserved"));
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.violation().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut hit = vec![false; self.target.size()];
        for &m in &self.map {
            if std::mem::replace(&mut hit[m], true) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceViolation {
    pub op: &'static str,
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl From<CongruenceViolation> for Error {
    fn from(v: CongruenceViolation) -> Error {
        Error::NotACongruence {
            op: v.op,
            a: v.a,
            b: v.b,
            c: v.c,
            d: v.d,
        }
    }
}

fn operations(a: &Algebra) -> Vec<(&'static str, &Table)> {
    let mut ops = vec![("meet", a.meet_table()), ("join", a.join_table())];
    if let Some(t) = a.arrow_table() {
        ops.push(("arrow", t));
    }
    ops
}

/// `None` when `p` is compatible with every operation table present on `a`;
/// otherwise the least violation `(op, a, b, c, d)` with `a≈c`, `b≈d` and
/// `op(a,b)` unrelated to `op(c,d)`.
pub fn is_congruence(alg: &Algebra, p: &Partition) -> Option<CongruenceViolation> {
    assert_eq!(p.carrier_size(), alg.size(), "partition carrier mismatch");
    for (op, t) in operations(alg) {
        if one_sided_compatible(alg, t, p) {
            continue;
        }
        for a in alg.elements() {
            for b in alg.elements() {
                let ab = p.block_of(t.get(a, b));
                for &c in p.block(p.block_of(a)) {
                    for &d in p.block(p.block_of(b)) {
                        if p.block_of(t.get(c, d)) != ab {
                            return Some(CongruenceViolation { op, a, b, c, d });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Replacing one argument at a time within its block never changes the
/// block of the result. Equivalent to full compatibility by transitivity.
fn one_sided_compatible(alg: &Algebra, t: &Table, p: &Partition) -> bool {
    alg.elements().all(|a| {
        let block = p.block(p.block_of(a));
        alg.elements().all(|b| {
            let ab = p.block_of(t.get(a, b));
            block.iter().all(|&c| p.block_of(t.get(c, b)) == ab && p.block_of(t.get(b, c)) == p.block_of(t.get(b, a)))
        })
    })
}

/// Quotient algebra on the blocks of `p`, with the projection.
pub fn quotient(alg: &Algebra, p: &Partition) -> Result<(Algebra, HomMap)> {
    if let Some(v) = is_congruence(alg, p) {
        return Err(v.into());
    }
    let k = p.len();
    let rep = |i: usize| p.block(i)[0];
    let induced = |t: &Table| Table::from_fn(k, |i, j| p.block_of(t.get(rep(i), rep(j))));
    let constants = Constants {
        top: alg.top().map(|t| p.block_of(t)),
        bottom: alg.bottom().map(|b| p.block_of(b)),
    };
    let names = (0..k).map(|i| format!("[{}]", alg.name(rep(i)))).collect();
    let target = Algebra::from_tables(
        induced(alg.meet_table()),
        induced(alg.join_table()),
        constants,
        alg.arrow_table().map(induced),
    )?
    .with_names(names)?;
    let map = alg.elements().map(|e| p.block_of(e)).collect();
    let hom = HomMap {
        source: alg.clone(),
        target: target.clone(),
        map,
    };
    Ok((target, hom))
}

/// Quotient by one of Green's relations. For `D` the image is checked to be
/// commutative.
pub fn quotient_by(alg: &Algebra, rel: GreenRelation) -> Result<(Algebra, HomMap)> {
    let g = greens(alg)?;
    let (q, hom) = quotient(alg, g.get(rel))?;
    if rel == GreenRelation::D {
        for x in q.elements() {
            for y in q.elements() {
                if q.meet(x, y) != q.meet(y, x) || q.join(x, y) != q.join(y, x) {
                    return Err(Error::QuotientNotCommutative(x, y));
                }
            }
        }
    }
    Ok((q, hom))
}

/// Checks that `x ↦ (R_x, L_x)` is a bijective homomorphism from `alg` onto
/// the fibered product of `alg/R` and `alg/L` over `alg/D`.
pub fn pullback_check(alg: &Algebra) -> Result<Check> {
    const NAME: &str = "pullback";
    let g = greens(alg)?;
    let (by_r, _) = quotient(alg, &g.r)?;
    let (by_l, _) = quotient(alg, &g.l)?;
    let n = alg.size();
    let tuples = (n * n) as u64;

    // Fiber elements are (R-block, L-block) pairs inside a common D-class.
    let mut owner = vec![vec![None; g.l.len()]; g.r.len()];
    for x in alg.elements() {
        let (r, l) = (g.r.block_of(x), g.l.block_of(x));
        if let Some(y) = owner[r][l] {
            return Ok(Check::fails(
                NAME,
                tuples,
                Witness::new(&["x", "y"], &[y, x]).with_note("not injective"),
            ));
        }
        owner[r][l] = Some(x);
    }
    for r in 0..g.r.len() {
        for l in 0..g.l.len() {
            let (xr, xl) = (g.r.block(r)[0], g.l.block(l)[0]);
            if g.d.same(xr, xl) && owner[r][l].is_none() {
                return Ok(Check::fails(
                    NAME,
                    tuples,
                    Witness::new(&["r", "l"], &[xr, xl]).with_note("fiber element not hit"),
                ));
            }
        }
    }
    for x in alg.elements() {
        for y in alg.elements() {
            let (rx, ry) = (g.r.block_of(x), g.r.block_of(y));
            let (lx, ly) = (g.l.block_of(x), g.l.block_of(y));
            let m = alg.meet(x, y);
            let j = alg.join(x, y);
            let ok = g.r.block_of(m) == by_r.meet(rx, ry)
                && g.l.block_of(m) == by_l.meet(lx, ly)
                && g.r.block_of(j) == by_r.join(rx, ry)
                && g.l.block_of(j) == by_l.join(lx, ly);
            if !ok {
                return Ok(Check::fails(
                    NAME,
                    tuples,
                    Witness::new(&["x", "y"], &[x, y]).with_note("not a homomorphism"),
                ));
            }
        }
    }
    Ok(Check::holds(NAME, tuples))
}
