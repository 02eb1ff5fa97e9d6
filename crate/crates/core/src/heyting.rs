//! Heyting arrows on finite commutative lattices.

use crate::algebra::{Algebra, Constants, Table};
use crate::error::{Error, Result};
use crate::properties::{check_skew_lattice, law};
use crate::report::{Check, PropertyReport, Witness};
use crate::scan::{check_law, Eval};
use crate::Elem;

/// A finite lattice with a greatest element, stored as an [`Algebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeLattice {
    alg: Algebra,
    top: Elem,
}

impl CommutativeLattice {
    /// Checks the lattice laws and locates the top. A designated top on the
    /// input is kept; otherwise the greatest element is designated.
    pub fn new(alg: Algebra) -> Result<CommutativeLattice> {
        let sl = check_skew_lattice(&alg);
        if let Some(w) = sl.witness {
            return Err(Error::PreconditionFailed(format!("not a lattice: {w}")));
        }
        let comm = law("commutative").expect("known law").check(&alg);
        if let Some(w) = comm.witness {
            return Err(Error::PreconditionFailed(format!("not commutative: {w}")));
        }
        let top = alg.greatest().ok_or(Error::NoTop)?;
        let bottom = alg.bottom();
        let alg = alg.with_constants(Constants {
            top: Some(top),
            bottom,
        })?;
        Ok(CommutativeLattice { alg, top })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn into_algebra(self) -> Algebra {
        self.alg
    }

    pub fn size(&self) -> usize {
        self.alg.size()
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.alg.meet(x, y) == x
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.alg.meet(x, y)
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.alg.join(x, y)
    }
}

/// `get(y, z)` is `y → z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowTable(pub Table);

impl ArrowTable {
    #[inline]
    pub fn get(&self, y: Elem, z: Elem) -> Elem {
        self.0.get(y, z)
    }

    pub fn table(&self) -> &Table {
        &self.0
    }

    pub fn into_table(self) -> Table {
        self.0
    }
}

/// `{x : x∧y ≤ z}` has no maximum; `maximal` lists its maximal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoArrow {
    pub y: Elem,
    pub z: Elem,
    pub maximal: Vec<Elem>,
}

impl std::fmt::Display for NoArrow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "no greatest x with x∧{}≤{}; maximal candidates {:?}",
            self.y, self.z, self.maximal
        )
    }
}

/// Maximal elements of `{x : x∧y ≤ z}`.
pub fn arrow_candidates(l: &CommutativeLattice, y: Elem, z: Elem) -> Vec<Elem> {
    let cands: Vec<Elem> = l
        .algebra()
        .elements()
        .filter(|&x| l.leq(l.meet(x, y), z))
        .collect();
    cands
        .iter()
        .copied()
        .filter(|&c| !cands.iter().any(|&d| d != c && l.leq(c, d)))
        .collect()
}

/// `y → z = max{x : x∧y ≤ z}` computed directly from the order.
pub fn heyting_arrow(l: &CommutativeLattice) -> std::result::Result<ArrowTable, NoArrow> {
    let n = l.size();
    let mut t = Table::from_fn(n, |_, _| 0);
    for y in 0..n {
        for z in 0..n {
            match arrow_candidates(l, y, z).as_slice() {
                [m] => t.set(y, z, *m),
                other => {
                    return Err(NoArrow {
                        y,
                        z,
                        maximal: other.to_vec(),
                    })
                }
            }
        }
    }
    Ok(ArrowTable(t))
}

/// H1–H4, the adjunction and `x→y = (x∨y)→y` for a given arrow table.
pub fn check_heyting_axioms(l: &CommutativeLattice, arrow: &Table) -> PropertyReport {
    let a = l.algebra();
    let n = a.size();
    let one = l.top();
    let i = |x, y| arrow.get(x, y);
    let mut r = PropertyReport::new();
    r.push(check_law("H1", ["x"], n, |t| Eval::eq(i(t[0], t[0]), one)));
    r.push(check_law("H2", ["x", "y"], n, |t| {
        let (x, y) = (t[0], t[1]);
        Eval::eq(a.meet(x, i(x, y)), a.meet(x, y))
    }));
    r.push(check_law("H3", ["x", "y"], n, |t| {
        let (x, y) = (t[0], t[1]);
        Eval::eq(a.meet(y, i(x, y)), y)
    }));
    r.push(check_law("H4", ["x", "y", "z"], n, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        Eval::eq(i(x, a.meet(y, z)), a.meet(i(x, y), i(x, z)))
    }));
    r.push(check_law("HA", ["x", "y", "z"], n, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        Eval::cond(l.leq(x, i(y, z)) == l.leq(a.meet(x, y), z))
    }));
    r.push(check_law("arrow-join-lemma", ["x", "y"], n, |t| {
        let (x, y) = (t[0], t[1]);
        Eval::eq(i(x, y), i(a.join(x, y), y))
    }));
    r
}

/// Elements of `u↑`, in increasing index order.
pub fn lattice_upset(l: &CommutativeLattice, u: Elem) -> Vec<Elem> {
    l.algebra().elements().filter(|&x| l.leq(u, x)).collect()
}

/// The generalized Heyting arrow, when every `u↑` is a Heyting algebra.
///
/// On a finite lattice this is the ordinary Heyting arrow; the outer error
/// reports an upset whose own arrow disagrees with the restriction of the
/// global one.
pub fn generalized_heyting_arrow(
    l: &CommutativeLattice,
) -> Result<std::result::Result<ArrowTable, NoArrow>> {
    let global = match heyting_arrow(l) {
        Ok(t) => t,
        Err(e) => return Ok(Err(e)),
    };
    for u in l.algebra().elements() {
        let members = lattice_upset(l, u);
        let pos = |e: Elem| members.iter().position(|&m| m == e);
        let sub = CommutativeLattice::new(l.algebra().restrict(&members)?.with_constants(Constants {
            top: pos(l.top()),
            bottom: pos(u),
        })?)?;
        let local = heyting_arrow(&sub).map_err(|e| {
            Error::InconsistencyDetected(format!(
                "upset of element {u} is not Heyting although the lattice is: {e}"
            ))
        })?;
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                if members[local.get(i, j)] != global.get(x, y) {
                    return Err(Error::InconsistencyDetected(format!(
                        "arrow on the upset of element {u} differs at ({x}, {y})"
                    )));
                }
            }
        }
    }
    Ok(Ok(global))
}

/// `y \\ x`: the unique `d` with `(y∨x)∨d = 1` and `(y∨x)∧d = y`. `None`
/// when some pair has no solution.
pub fn dual_gb_diff(l: &CommutativeLattice) -> Result<Option<Table>> {
    let a = l.algebra();
    let n = a.size();
    let mut t = Table::from_fn(n, |_, _| 0);
    for y in 0..n {
        for x in 0..n {
            let s = a.join(y, x);
            let candidates: Vec<Elem> = a
                .elements()
                .filter(|&d| a.join(s, d) == l.top() && a.meet(s, d) == y)
                .collect();
            match candidates.as_slice() {
                [] => return Ok(None),
                [d] => t.set(y, x, *d),
                _ => return Err(Error::AmbiguousDiff { y, x, candidates }),
            }
        }
    }
    Ok(Some(t))
}

/// One-line summary of a missing arrow, for reports.
pub fn no_arrow_check(name: &str, e: &NoArrow, tuples: u64) -> Check {
    Check::fails(
        name,
        tuples,
        Witness::new(&["y", "z"], &[e.y, e.z])
            .with_note(format!("{} maximal candidates", e.maximal.len())),
    )
}
