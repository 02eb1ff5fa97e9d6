//! Finite double-band algebras stored as operation tables.
//!
//! Elements are dense indices `0..n`. The tables are the only authoritative
//! data; orders, Green's relations and quotients are derived on demand.

mod construct;
mod iso;
mod quotient;
pub(crate) mod relations;

pub use construct::{direct_product, vertical_dual};
pub use iso::{find_isomorphism, DEFAULT_ISO_BOUND};
pub use quotient::{
    is_congruence, pullback_check, quotient, quotient_by, CongruenceViolation, HomMap,
};
pub use relations::{greens, natural_orders, GreenRelation, Greens, NaturalOrders, Partition, Relation};

use crate::error::{Error, Result};
use crate::Elem;

/// A total binary operation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    data: Vec<u32>,
}

impl Table {
    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Table {
        let mut data = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                data.push(f(a, b) as u32);
            }
        }
        Table { n, data }
    }

    /// Validates shape and range. `name` only feeds the error message.
    pub fn from_rows(name: &str, rows: &[Vec<Elem>]) -> Result<Table> {
        let n = rows.len();
        let bad = |reason: String| Error::MalformedTable {
            table: name.to_string(),
            reason,
        };
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(bad(format!("entry ({i}, {j}) = {v} is out of range")));
                }
                data.push(v as u32);
            }
        }
        Ok(Table { n, data })
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.data[a * self.n + b] as Elem
    }

    pub fn set(&mut self, a: Elem, b: Elem, v: Elem) {
        assert!(v < self.n, "table value out of range");
        self.data[a * self.n + b] = v as u32;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.get(a, b)).collect())
            .collect()
    }

    /// Table of the same operation after renaming each `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[Elem]) -> Table {
        let mut out = vec![0u32; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                out[perm[a] * self.n + perm[b]] = perm[self.get(a, b)] as u32;
            }
        }
        Table {
            n: self.n,
            data: out,
        }
    }

    pub fn transpose(&self) -> Table {
        Table::from_fn(self.n, |a, b| self.get(b, a))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Constants {
    pub top: Option<Elem>,
    pub bottom: Option<Elem>,
}

impl Constants {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn top(t: Elem) -> Self {
        Constants {
            top: Some(t),
            bottom: None,
        }
    }

    pub fn bounded(top: Elem, bottom: Elem) -> Self {
        Constants {
            top: Some(top),
            bottom: Some(bottom),
        }
    }
}

/// A finite algebra `(S; ∧, ∨[, →][, 1][, 0])`.
///
/// Construction checks only closure and the laws of declared constants.
/// Skew lattice laws are classifications, see [`crate::properties`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    meet: Table,
    join: Table,
    arrow: Option<Table>,
    top: Option<Elem>,
    bottom: Option<Elem>,
    names: Vec<String>,
}

/// Validated constructor from row-major tables.
pub fn make_algebra(
    meet: &[Vec<Elem>],
    join: &[Vec<Elem>],
    constants: Constants,
    arrow: Option<&[Vec<Elem>]>,
) -> Result<Algebra> {
    let meet = Table::from_rows("meet", meet)?;
    let join = Table::from_rows("join", join)?;
    let arrow = arrow.map(|rows| Table::from_rows("arrow", rows)).transpose()?;
    Algebra::from_tables(meet, join, constants, arrow)
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn check_name(name: &str) -> std::result::Result<(), String> {
    if name.is_empty() {
        return Err("empty element name".into());
    }
    if name.chars().any(char::is_whitespace) {
        return Err(format!("element name `{name}` contains whitespace"));
    }
    if name.starts_with('#') || name.ends_with(':') {
        return Err(format!("element name `{name}` collides with file syntax"));
    }
    Ok(())
}

impl Algebra {
    pub fn from_tables(
        meet: Table,
        join: Table,
        constants: Constants,
        arrow: Option<Table>,
    ) -> Result<Algebra> {
        let n = meet.size();
        if n == 0 {
            return Err(Error::MalformedTable {
                table: "meet".into(),
                reason: "carrier is empty".into(),
            });
        }
        for (name, t) in [("join", Some(&join)), ("arrow", arrow.as_ref())] {
            if let Some(t) = t {
                if t.size() != n {
                    return Err(Error::MalformedTable {
                        table: name.into(),
                        reason: format!("size {} does not match carrier size {n}", t.size()),
                    });
                }
            }
        }
        let alg = Algebra {
            meet,
            join,
            arrow,
            top: constants.top,
            bottom: constants.bottom,
            names: default_names(n),
        };
        alg.check_constants()?;
        Ok(alg)
    }

    /// Builds from operation closures on `0..n`.
    pub fn from_fns(
        n: usize,
        meet: impl FnMut(Elem, Elem) -> Elem,
        join: impl FnMut(Elem, Elem) -> Elem,
        constants: Constants,
    ) -> Result<Algebra> {
        Algebra::from_tables(
            Table::from_fn(n, meet),
            Table::from_fn(n, join),
            constants,
            None,
        )
    }

    /// The one-element algebra.
    pub fn trivial() -> Algebra {
        Algebra::from_fns(1, |_, _| 0, |_, _| 0, Constants::bounded(0, 0))
            .expect("trivial algebra is valid")
    }

    fn check_constants(&self) -> Result<()> {
        let n = self.size();
        if let Some(t) = self.top {
            if t >= n {
                return Err(Error::MalformedTable {
                    table: "top".into(),
                    reason: format!("element {t} out of range"),
                });
            }
            if let Some(x) = (0..n).find(|&x| {
                self.join(x, t) != t
                    || self.join(t, x) != t
                    || self.meet(x, t) != x
                    || self.meet(t, x) != x
            }) {
                return Err(Error::BadConstant {
                    constant: "top",
                    element: t,
                    witness: x,
                });
            }
        }
        if let Some(b) = self.bottom {
            if b >= n {
                return Err(Error::MalformedTable {
                    table: "bottom".into(),
                    reason: format!("element {b} out of range"),
                });
            }
            if let Some(x) = (0..n).find(|&x| {
                self.meet(x, b) != b
                    || self.meet(b, x) != b
                    || self.join(x, b) != x
                    || self.join(b, x) != x
            }) {
                return Err(Error::BadConstant {
                    constant: "bottom",
                    element: b,
                    witness: x,
                });
            }
        }
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Algebra> {
        let bad = |reason: String| Error::MalformedTable {
            table: "elements".into(),
            reason,
        };
        if names.len() != self.size() {
            return Err(bad(format!(
                "{} names for {} elements",
                names.len(),
                self.size()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            check_name(name).map_err(bad)?;
            if !seen.insert(name.as_str()) {
                return Err(bad(format!("duplicate element name `{name}`")));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn with_arrow(mut self, arrow: Table) -> Result<Algebra> {
        if arrow.size() != self.size() {
            return Err(Error::MalformedTable {
                table: "arrow".into(),
                reason: format!(
                    "size {} does not match carrier size {}",
                    arrow.size(),
                    self.size()
                ),
            });
        }
        self.arrow = Some(arrow);
        Ok(self)
    }

    pub fn without_arrow(mut self) -> Algebra {
        self.arrow = None;
        self
    }

    pub fn with_constants(mut self, constants: Constants) -> Result<Algebra> {
        self.top = constants.top;
        self.bottom = constants.bottom;
        self.check_constants()?;
        Ok(self)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.meet.size()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet.get(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join.get(a, b)
    }

    /// Panics when no arrow table is attached.
    #[inline]
    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow
            .as_ref()
            .expect("algebra carries no arrow table")
            .get(a, b)
    }

    /// `u ∨ x ∨ u`
    #[inline]
    pub fn join_sandwich(&self, u: Elem, x: Elem) -> Elem {
        self.join(self.join(u, x), u)
    }

    /// `u ∧ x ∧ u`
    #[inline]
    pub fn meet_sandwich(&self, u: Elem, x: Elem) -> Elem {
        self.meet(self.meet(u, x), u)
    }

    pub fn meet_table(&self) -> &Table {
        &self.meet
    }

    pub fn join_table(&self) -> &Table {
        &self.join
    }

    pub fn arrow_table(&self) -> Option<&Table> {
        self.arrow.as_ref()
    }

    pub fn top(&self) -> Option<Elem> {
        self.top
    }

    pub fn bottom(&self) -> Option<Elem> {
        self.bottom
    }

    pub fn constants(&self) -> Constants {
        Constants {
            top: self.top,
            bottom: self.bottom,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    /// Greatest element of the natural partial order, designated or not.
    pub fn greatest(&self) -> Option<Elem> {
        self.top.or_else(|| {
            self.elements().find(|&t| {
                self.elements()
                    .all(|x| self.join(x, t) == t && self.join(t, x) == t)
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.meet(a, b) == self.meet(b, a) && self.join(a, b) == self.join(b, a))
        })
    }

    /// Isomorphic copy with element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[Elem]) -> Algebra {
        assert_eq!(perm.len(), self.size());
        let mut names = vec![String::new(); self.size()];
        for (x, &p) in perm.iter().enumerate() {
            names[p] = self.names[x].clone();
        }
        Algebra {
            meet: self.meet.relabel(perm),
            join: self.join.relabel(perm),
            arrow: self.arrow.as_ref().map(|t| t.relabel(perm)),
            top: self.top.map(|t| perm[t]),
            bottom: self.bottom.map(|b| perm[b]),
            names,
        }
    }

    /// Subalgebra on `members` (which must be closed under ∧ and ∨), with
    /// local indices in the given order. The arrow is kept only when closed.
    pub fn restrict(&self, members: &[Elem]) -> Result<Algebra> {
        let mut local = vec![usize::MAX; self.size()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let k = members.len();
        let lookup = |v: Elem| -> Result<Elem> {
            match local[v] {
                usize::MAX => Err(Error::PreconditionFailed(format!(
                    "subset is not closed: produces `{}`",
                    self.names[v]
                ))),
                i => Ok(i),
            }
        };
        let mut meet = Vec::with_capacity(k);
        let mut join = Vec::with_capacity(k);
        for &a in members {
            meet.push(
                members
                    .iter()
                    .map(|&b| lookup(self.meet(a, b)))
                    .collect::<Result<Vec<_>>>()?,
            );
            join.push(
                members
                    .iter()
                    .map(|&b| lookup(self.join(a, b)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let arrow = self.arrow.as_ref().and_then(|t| {
            members
                .iter()
                .map(|&a| {
                    members
                        .iter()
                        .map(|&b| lookup(t.get(a, b)).ok())
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()
        });
        let constants = Constants {
            top: self.top.and_then(|t| (local[t] != usize::MAX).then(|| local[t])),
            bottom: self
                .bottom
                .and_then(|b| (local[b] != usize::MAX).then(|| local[b])),
        };
        let names = members.iter().map(|&m| self.names[m].clone()).collect();
        make_algebra(&meet, &join, constants, arrow.as_deref())?.with_names(names)
    }
}
