//! Classification of finite algebras against the skew lattice identities.
//!
//! Every law is checked exhaustively over its tuple space. Failures report the
//! least violating tuple in lexicographic order.

use crate::algebra::{
    direct_product, find_isomorphism, greens, quotient_by, Algebra, Constants, GreenRelation,
    HomMap, Table,
};
use crate::error::{Error, Result};
use crate::report::{Check, PropertyReport, Witness};
use crate::scan::{check_law, check_prefixed4, first_failure, tuple_space, witness_from, Eval};
use crate::Elem;

/// A named identity or universally quantified condition.
pub struct Law {
    pub name: &'static str,
    pub labels: &'static [&'static str],
    eval: fn(&Algebra, &[Elem]) -> Eval,
}

impl Law {
    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    /// Evaluates the law at one tuple.
    pub fn eval_at(&self, a: &Algebra, t: &[Elem]) -> Eval {
        (self.eval)(a, t)
    }

    pub fn check(&self, a: &Algebra) -> Check {
        let n = a.size();
        match self.name {
            "conormal" => {
                return check_prefixed4(
                    self.name,
                    ["x", "y", "z", "w"],
                    n,
                    |x, y, z| (a.join(a.join(x, y), z), a.join(a.join(x, z), y)),
                    |p, w| a.join(p, w),
                )
            }
            "normal" => {
                return check_prefixed4(
                    self.name,
                    ["x", "y", "z", "w"],
                    n,
                    |x, y, z| (a.meet(a.meet(x, y), z), a.meet(a.meet(x, z), y)),
                    |p, w| a.meet(p, w),
                )
            }
            _ => {}
        }
        let f = |t: &[Elem]| (self.eval)(a, t);
        let l = self.labels;
        match self.arity() {
            1 => check_law(self.name, [l[0]], n, |t| f(t)),
            2 => check_law(self.name, [l[0], l[1]], n, |t| f(t)),
            3 => check_law(self.name, [l[0], l[1], l[2]], n, |t| f(t)),
            4 => check_law(self.name, [l[0], l[1], l[2], l[3]], n, |t| f(t)),
            k => unreachable!("no law of arity {k}"),
        }
    }
}

fn idempotent(a: &Algebra, t: &[Elem]) -> Eval {
    let x = t[0];
    Eval::eq(a.meet(x, x), x).and(|| Eval::eq(a.join(x, x), x))
}

fn associative(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y, z) = (t[0], t[1], t[2]);
    Eval::eq(a.meet(a.meet(x, y), z), a.meet(x, a.meet(y, z)))
        .and(|| Eval::eq(a.join(a.join(x, y), z), a.join(x, a.join(y, z))))
}

fn absorption(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y) = (t[0], t[1]);
    Eval::eq(a.meet(x, a.join(x, y)), x)
        .and(|| Eval::eq(a.join(x, a.meet(x, y)), x))
        .and(|| Eval::eq(a.join(a.meet(x, y), y), y))
        .and(|| Eval::eq(a.meet(a.join(x, y), y), y))
}

fn absorption_equivalence(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y) = (t[0], t[1]);
    Eval::cond(
        (a.meet(x, y) == x) == (a.join(x, y) == y) && (a.meet(x, y) == y) == (a.join(x, y) == x),
    )
}

fn regular(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, u, v) = (t[0], t[1], t[2]);
    let m = |p, q| a.meet(p, q);
    let j = |p, q| a.join(p, q);
    Eval::eq(m(m(m(m(x, u), x), v), x), m(m(m(x, u), v), x))
        .and(|| Eval::eq(j(j(j(j(x, u), x), v), x), j(j(j(x, u), v), x)))
}

fn commutative(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y) = (t[0], t[1]);
    Eval::eq(a.meet(x, y), a.meet(y, x)).and(|| Eval::eq(a.join(x, y), a.join(y, x)))
}

fn rectangular(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y, z) = (t[0], t[1], t[2]);
    Eval::eq(a.meet(a.meet(x, y), z), a.meet(x, z))
        .and(|| Eval::eq(a.join(a.join(x, y), z), a.join(x, z)))
}

fn left_handed(a: &Algebra, t: &[Elem]) -> Eval {
    // R is trivial
    let (x, y) = (t[0], t[1]);
    Eval::cond(x == y || !(a.meet(x, y) == y && a.meet(y, x) == x))
}

fn right_handed(a: &Algebra, t: &[Elem]) -> Eval {
    // L is trivial
    let (x, y) = (t[0], t[1]);
    Eval::cond(x == y || !(a.meet(x, y) == x && a.meet(y, x) == y))
}

fn symmetric(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y) = (t[0], t[1]);
    Eval::cond((a.meet(x, y) == a.meet(y, x)) == (a.join(x, y) == a.join(y, x)))
}

fn conormal(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
    let j = |p, q| a.join(p, q);
    Eval::eq(j(j(j(x, y), z), w), j(j(j(x, z), y), w))
}

fn normal(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
    let m = |p, q| a.meet(p, q);
    Eval::eq(m(m(m(x, y), z), w), m(m(m(x, z), y), w))
}

fn distributive(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y, z) = (t[0], t[1], t[2]);
    let m = |p, q| a.meet(p, q);
    let j = |p, q| a.join(p, q);
    Eval::eq(m(m(x, j(y, z)), x), j(m(m(x, y), x), m(m(x, z), x)))
        .and(|| Eval::eq(j(j(x, m(y, z)), x), m(j(j(x, y), x), j(j(x, z), x))))
}

fn strongly_distributive(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y, z) = (t[0], t[1], t[2]);
    let m = |p, q| a.meet(p, q);
    let j = |p, q| a.join(p, q);
    Eval::eq(m(x, j(y, z)), j(m(x, y), m(x, z)))
        .and(|| Eval::eq(m(j(x, y), z), j(m(x, z), m(y, z))))
}

fn co_strongly_distributive(a: &Algebra, t: &[Elem]) -> Eval {
    let (x, y, z) = (t[0], t[1], t[2]);
    let m = |p, q| a.meet(p, q);
    let j = |p, q| a.join(p, q);
    Eval::eq(j(x, m(y, z)), m(j(x, y), j(x, z)))
        .and(|| Eval::eq(j(m(x, y), z), m(j(x, z), j(y, z))))
}

const XYZ: &[&str] = &["x", "y", "z"];
const XY: &[&str] = &["x", "y"];

pub static LAWS: &[Law] = &[
    Law { name: "idempotent", labels: &["x"], eval: idempotent },
    Law { name: "associative", labels: XYZ, eval: associative },
    Law { name: "absorption", labels: XY, eval: absorption },
    Law { name: "absorption-equivalence", labels: XY, eval: absorption_equivalence },
    Law { name: "regular", labels: &["x", "u", "v"], eval: regular },
    Law { name: "commutative", labels: XY, eval: commutative },
    Law { name: "rectangular", labels: XYZ, eval: rectangular },
    Law { name: "left-handed", labels: XY, eval: left_handed },
    Law { name: "right-handed", labels: XY, eval: right_handed },
    Law { name: "symmetric", labels: XY, eval: symmetric },
    Law { name: "normal", labels: &["x", "y", "z", "w"], eval: normal },
    Law { name: "conormal", labels: &["x", "y", "z", "w"], eval: conormal },
    Law { name: "distributive", labels: XYZ, eval: distributive },
    Law { name: "strongly-distributive", labels: XYZ, eval: strongly_distributive },
    Law { name: "co-strongly-distributive", labels: XYZ, eval: co_strongly_distributive },
];

pub fn law(name: &str) -> Option<&'static Law> {
    LAWS.iter().find(|l| l.name == name)
}

/// Every property name [`classify`] reports, in report order.
pub fn property_names() -> Vec<&'static str> {
    let mut names = vec!["skew-lattice"];
    names.extend(LAWS.iter().map(|l| l.name));
    names.push("quasi-distributive");
    names
}

fn check_named(a: &Algebra, name: &str) -> Check {
    law(name).expect("known law").check(a)
}

/// Idempotency, associativity and absorption together.
pub fn check_skew_lattice(a: &Algebra) -> Check {
    let parts: Vec<Check> = ["idempotent", "associative", "absorption"]
        .iter()
        .map(|n| check_named(a, n))
        .collect();
    aggregate("skew-lattice", parts)
}

fn aggregate(name: &str, parts: Vec<Check>) -> Check {
    let tuples = parts.iter().map(|c| c.tuples).sum();
    match parts.into_iter().find(Check::is_fails) {
        None => Check::holds(name, tuples),
        Some(c) => {
            let w = c.witness.expect("failing check has a witness").with_note(c.name);
            Check::fails(name, tuples, w)
        }
    }
}

/// `S/D` is a distributive lattice. Skipped when `a` is not a skew lattice.
pub fn check_quasi_distributive(a: &Algebra) -> Check {
    const NAME: &str = "quasi-distributive";
    if !check_skew_lattice(a).is_holds() {
        return Check::skipped(NAME, "not a skew lattice");
    }
    let (q, hom) = match quotient_by(a, GreenRelation::D) {
        Ok(v) => v,
        Err(e) => return Check::skipped(NAME, format!("no lattice image: {e}")),
    };
    // representatives of the D-classes, to report witnesses in `a`
    let mut rep = vec![usize::MAX; q.size()];
    for x in a.elements().rev() {
        rep[hom.apply(x)] = x;
    }
    let labels = ["x", "y", "z"];
    let failure = first_failure::<3, _>(q.size(), |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        Eval::eq(q.meet(x, q.join(y, z)), q.join(q.meet(x, y), q.meet(x, z)))
    })
    .map(|(t, e)| {
        let w = witness_from(&labels, &t, e);
        Witness {
            tuple: w.tuple.iter().map(|&c| rep[c]).collect(),
            sides: w.sides.map(|(l, r)| (rep[l], rep[r])),
            ..w
        }
        .with_note("in S/D")
    });
    Check::from_outcome(NAME, tuple_space(q.size(), 3), failure)
}

/// Full classification report.
pub fn classify(a: &Algebra) -> PropertyReport {
    let mut report = PropertyReport::new();
    let laws: Vec<Check> = LAWS.iter().map(|l| l.check(a)).collect();
    report.push(aggregate("skew-lattice", laws[..3].to_vec()));
    report.checks.extend(laws);
    report.push(check_quasi_distributive(a));
    report
}

/// Evaluates both sides of "co-strongly distributive iff quasi-distributive,
/// symmetric and conormal" independently and demands agreement.
pub fn check_costrong_equivalence(a: &Algebra) -> Result<Check> {
    const NAME: &str = "costrong-equivalence";
    if !check_skew_lattice(a).is_holds() {
        return Err(Error::PreconditionFailed("not a skew lattice".into()));
    }
    let lhs = check_named(a, "co-strongly-distributive");
    let parts = [
        check_quasi_distributive(a),
        check_named(a, "symmetric"),
        check_named(a, "conormal"),
    ];
    let rhs = parts.iter().all(Check::is_holds);
    if lhs.is_holds() != rhs {
        return Err(Error::InconsistencyDetected(format!(
            "co-strong distributivity is {} but quasi-distributive/symmetric/conormal is {}",
            lhs.is_holds(),
            rhs
        )));
    }
    let tuples = lhs.tuples + parts.iter().map(|c| c.tuples).sum::<u64>();
    Ok(Check::holds(NAME, tuples))
}

/// The unique `a` in `block` with `b ≤ a`, for a conormal `alg` and a D-class
/// `block` lying above `D_b` in `alg/D`.
pub fn cover_in_class(alg: &Algebra, b: Elem, block: &[Elem]) -> Result<Elem> {
    let Some(&x) = block.first() else {
        return Err(Error::PreconditionFailed("empty block".into()));
    };
    if let Some(&y) = block.iter().find(|&&y| alg.join_sandwich(y, b) != y) {
        return Err(Error::PreconditionFailed(format!(
            "block element {y} is not above {b} in the preorder"
        )));
    }
    let cover = alg.join_sandwich(b, x);
    let covers: Vec<Elem> = block
        .iter()
        .copied()
        .filter(|&c| alg.join(b, c) == c && alg.join(c, b) == c)
        .collect();
    if covers != [cover] {
        return Err(Error::NotUnique {
            element: b,
            count: covers.len(),
        });
    }
    Ok(cover)
}

/// `A ≅ L × B` with `L = A/D` and `B` a D-class.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub lattice: Algebra,
    pub rectangular: Algebra,
    /// Isomorphism from the input onto `lattice × rectangular`.
    pub iso: HomMap,
}

/// Present exactly when the input is both strongly and co-strongly
/// distributive (binormal).
pub fn binormal_factorization(a: &Algebra) -> Result<Option<Factorization>> {
    if !check_skew_lattice(a).is_holds()
        || !check_named(a, "strongly-distributive").is_holds()
        || !check_named(a, "co-strongly-distributive").is_holds()
    {
        return Ok(None);
    }
    let g = greens(a)?;
    let sizes = g.d.block_sizes();
    if sizes.iter().any(|&s| s != sizes[0]) || sizes[0] * g.d.len() != a.size() {
        return Ok(None);
    }
    let (lattice, _) = quotient_by(a, GreenRelation::D)?;
    let class = g.d.block(0).to_vec();
    let mut rectangular = a.restrict(&class)?.with_constants(Constants::none())?;
    if class.len() == 1 {
        rectangular = rectangular.with_constants(Constants::bounded(0, 0))?;
    }
    let product = direct_product(&lattice, &rectangular);
    match find_isomorphism(&a.clone().without_arrow(), &product, a.size())? {
        Some(iso) => Ok(Some(Factorization {
            lattice,
            rectangular,
            iso,
        })),
        None => Err(Error::FactorizationNotFound),
    }
}

/// Elements of `u↓ = {x : x ≤ u}` and `{u∧x∧u}`, which must coincide.
fn downset(a: &Algebra, u: Elem) -> Option<Vec<Elem>> {
    let by_order: Vec<Elem> = a
        .elements()
        .filter(|&x| a.meet(x, u) == x && a.meet(u, x) == x)
        .collect();
    let mut by_sandwich: Vec<Elem> = a.elements().map(|x| a.meet_sandwich(u, x)).collect();
    by_sandwich.sort_unstable();
    by_sandwich.dedup();
    (by_order == by_sandwich).then_some(by_order)
}

fn upset(a: &Algebra, u: Elem) -> Option<Vec<Elem>> {
    let by_order: Vec<Elem> = a
        .elements()
        .filter(|&x| a.join(x, u) == x && a.join(u, x) == x)
        .collect();
    let mut by_sandwich: Vec<Elem> = a.elements().map(|x| a.join_sandwich(u, x)).collect();
    by_sandwich.sort_unstable();
    by_sandwich.dedup();
    (by_order == by_sandwich).then_some(by_order)
}

/// `members` is a commutative, distributive, complemented sublattice with
/// least element `lo` and greatest element `hi`.
fn boolean_witness(a: &Algebra, members: &[Elem], lo: Elem, hi: Elem) -> Option<Witness> {
    let inside = |e: Elem| members.binary_search(&e).is_ok();
    for &x in members {
        if a.meet(x, lo) != lo || a.join(x, hi) != hi {
            return Some(Witness::new(&["x"], &[x]).with_note("bounds"));
        }
        for &y in members {
            let (m, j) = (a.meet(x, y), a.join(x, y));
            if !inside(m) || !inside(j) || m != a.meet(y, x) || j != a.join(y, x) {
                return Some(Witness::new(&["x", "y"], &[x, y]).with_note("not a commutative sublattice"));
            }
            for &z in members {
                if a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)) {
                    return Some(Witness::new(&["x", "y", "z"], &[x, y, z]).with_note("not distributive"));
                }
            }
        }
        if !members.iter().any(|&c| a.meet(x, c) == lo && a.join(x, c) == hi) {
            return Some(Witness::new(&["x"], &[x]).with_note("no complement"));
        }
    }
    None
}

fn constant_check(name: &str, value: Option<Elem>) -> Check {
    match value {
        Some(_) => Check::holds(name, 1),
        None => Check::fails(name, 1, Witness::new(&[], &[]).with_note("no such constant")),
    }
}

/// Skew Boolean algebra `(S; ∧, ∨, \, 0)` with `diff.get(x, y) = x \ y`.
pub fn check_skew_boolean(a: &Algebra, diff: &Table) -> PropertyReport {
    let mut r = PropertyReport::new();
    r.push(check_skew_lattice(a));
    r.push(check_named(a, "strongly-distributive"));
    r.push(constant_check("has-bottom", a.bottom()));
    let Some(zero) = a.bottom() else { return r };
    let n = a.size();
    r.push(check_law("difference-join", ["x", "y"], n, |t| {
        let (x, y) = (t[0], t[1]);
        let (s, d) = (a.meet_sandwich(x, y), diff.get(x, y));
        Eval::eq(a.join(s, d), x).and(|| Eval::eq(a.join(d, s), x))
    }));
    r.push(check_law("difference-meet", ["x", "y"], n, |t| {
        let (x, y) = (t[0], t[1]);
        let (s, d) = (a.meet_sandwich(x, y), diff.get(x, y));
        Eval::eq(a.meet(s, d), zero).and(|| Eval::eq(a.meet(d, s), zero))
    }));
    let failure = a.elements().find_map(|u| match downset(a, u) {
        None => Some(Witness::new(&["u"], &[u]).with_note("downset descriptions differ")),
        Some(m) => boolean_witness(a, &m, zero, u).map(|w| w.with_note(format!("in downset of element {u}"))),
    });
    r.push(Check::from_outcome("downsets-boolean", n as u64, failure));
    r
}

/// Dual skew Boolean algebra `(S; ∧, ∨, \\, 1)` with `ddiff.get(y, x) = y \\ x`.
pub fn check_dual_skew_boolean(a: &Algebra, ddiff: &Table) -> PropertyReport {
    let mut r = PropertyReport::new();
    r.push(check_skew_lattice(a));
    r.push(check_named(a, "co-strongly-distributive"));
    r.push(constant_check("has-top", a.top()));
    let Some(one) = a.top() else { return r };
    let n = a.size();
    r.push(check_law("dual-difference-join", ["y", "x"], n, |t| {
        let (y, x) = (t[0], t[1]);
        let (s, d) = (a.join_sandwich(y, x), ddiff.get(y, x));
        Eval::eq(a.join(s, d), one).and(|| Eval::eq(a.join(d, s), one))
    }));
    r.push(check_law("dual-difference-meet", ["y", "x"], n, |t| {
        let (y, x) = (t[0], t[1]);
        let (s, d) = (a.join_sandwich(y, x), ddiff.get(y, x));
        Eval::eq(a.meet(s, d), y).and(|| Eval::eq(a.meet(d, s), y))
    }));
    let failure = a.elements().find_map(|u| match upset(a, u) {
        None => Some(Witness::new(&["u"], &[u]).with_note("upset descriptions differ")),
        Some(m) => boolean_witness(a, &m, u, one).map(|w| w.with_note(format!("in upset of element {u}"))),
    });
    r.push(Check::from_outcome("upsets-boolean", n as u64, failure));
    r
}

/// Solves the four dual-difference identities entrywise. `None` when some
/// pair has no solution.
pub fn solve_dual_skew_diff(a: &Algebra) -> Result<Option<Table>> {
    let one = a.top().ok_or(Error::NoTop)?;
    let mut rows = Vec::with_capacity(a.size());
    for y in a.elements() {
        let mut row = Vec::with_capacity(a.size());
        for x in a.elements() {
            let s = a.join_sandwich(y, x);
            let candidates: Vec<Elem> = a
                .elements()
                .filter(|&d| {
                    a.join(s, d) == one && a.join(d, s) == one && a.meet(s, d) == y && a.meet(d, s) == y
                })
                .collect();
            match candidates.as_slice() {
                [] => return Ok(None),
                [d] => row.push(*d),
                _ => return Err(Error::AmbiguousDiff { y, x, candidates }),
            }
        }
        rows.push(row);
    }
    Ok(Some(Table::from_rows("ddiff", &rows)?))
}

/// Solves the four skew Boolean difference identities entrywise.
pub fn solve_skew_diff(a: &Algebra) -> Result<Option<Table>> {
    let zero = a
        .bottom()
        .ok_or_else(|| Error::PreconditionFailed("algebra has no bottom".into()))?;
    let mut rows = Vec::with_capacity(a.size());
    for x in a.elements() {
        let mut row = Vec::with_capacity(a.size());
        for y in a.elements() {
            let s = a.meet_sandwich(x, y);
            let candidates: Vec<Elem> = a
                .elements()
                .filter(|&d| {
                    a.join(s, d) == x && a.join(d, s) == x && a.meet(s, d) == zero && a.meet(d, s) == zero
                })
                .collect();
            match candidates.as_slice() {
                [] => return Ok(None),
                [d] => row.push(*d),
                _ => return Err(Error::AmbiguousDiff { y: x, x: y, candidates }),
            }
        }
        rows.push(row);
    }
    Ok(Some(Table::from_rows("diff", &rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::vertical_dual;
    use crate::models::{partial_function_algebra, DEFAULT_MODEL_BOUND};

    fn pf22() -> Algebra {
        partial_function_algebra(2, 2, DEFAULT_MODEL_BOUND).unwrap()
    }

    fn idx(a: &Algebra, name: &str) -> Elem {
        a.index_of(name).unwrap_or_else(|| panic!("no element {name}"))
    }

    #[test]
    fn chain2_holds_everything_but_rectangularity() {
        let r = classify(&chain2());
        for c in &r.checks {
            if c.name == "rectangular" {
                assert!(c.is_fails());
            } else {
                assert!(c.is_holds(), "{} should hold", c.name);
            }
        }
    }

    #[test]
    fn rect2_classification() {
        let r = classify(&rect2());
        assert!(r.holds("skew-lattice"));
        assert!(r.holds("rectangular"));
        assert!(r.holds("left-handed"));
        assert!(!r.holds("right-handed"));
        assert!(!r.holds("commutative"));
    }

    #[test]
    fn pf22_classification() {
        let r = classify(&pf22());
        for name in [
            "skew-lattice",
            "co-strongly-distributive",
            "symmetric",
            "conormal",
            "quasi-distributive",
        ] {
            assert!(r.holds(name), "{name} should hold on PF22");
        }
        for name in ["rectangular", "strongly-distributive"] {
            let c = r.get(name).unwrap();
            assert!(c.is_fails(), "{name} should fail on PF22");
            assert!(c.witness.is_some());
        }
    }

    #[test]
    fn witnesses_reevaluate_to_violations() {
        let a = pf22();
        for c in classify(&a).checks.iter().filter(|c| c.is_fails()) {
            if let Some(l) = law(&c.name) {
                let w = c.witness.as_ref().unwrap();
                assert_ne!(l.eval_at(&a, &w.tuple), Eval::Ok, "{}", c.name);
            }
        }
    }

    #[test]
    fn holds_count_full_space() {
        let a = pf22();
        let r = classify(&a);
        let c = r.get("conormal").unwrap();
        assert_eq!(c.tuples, 9u64.pow(4));
        assert_eq!(r.get("symmetric").unwrap().tuples, 81);
    }

    #[test]
    fn normal_is_conormal_of_dual() {
        for a in [pf22(), rect2(), chain(3)] {
            let n = check_named(&a, "normal");
            let c = check_named(&vertical_dual(&a), "conormal").renamed("normal");
            assert_eq!(n, c);
        }
    }

    #[test]
    fn costrong_equivalence_examples() {
        assert!(check_costrong_equivalence(&pf22()).unwrap().is_holds());
        assert!(check_costrong_equivalence(&vertical_dual(&pf22())).unwrap().is_holds());
        assert!(check_costrong_equivalence(&chain2()).unwrap().is_holds());
    }

    #[test]
    fn costrong_equivalence_needs_skew_lattice() {
        let bad = Algebra::from_fns(2, |a, b| a.max(b), |a, b| a.max(b), Constants::none()).unwrap();
        assert!(matches!(
            check_costrong_equivalence(&bad),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn cover_examples() {
        let a = pf22();
        let g = greens(&a).unwrap();
        let b = idx(&a, "{p0,q1}");
        let p0 = idx(&a, "{p0}");
        let block = g.d.block(g.d.block_of(p0)).to_vec();
        assert_eq!(cover_in_class(&a, b, &block).unwrap(), p0);
        let own = g.d.block(g.d.block_of(b)).to_vec();
        assert_eq!(cover_in_class(&a, b, &own).unwrap(), b);
        let empty = idx(&a, "{}");
        assert_eq!(cover_in_class(&a, b, &[empty]).unwrap(), empty);
    }

    #[test]
    fn cover_rejects_lower_block() {
        let a = pf22();
        let g = greens(&a).unwrap();
        let p0 = idx(&a, "{p0}");
        let b = idx(&a, "{p0,q1}");
        let low = g.d.block(g.d.block_of(b)).to_vec();
        assert!(matches!(cover_in_class(&a, p0, &low), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn factorization_of_chain_times_rect() {
        let prod = direct_product(&chain2(), &rect2());
        assert!(classify(&prod).holds("strongly-distributive"));
        let f = binormal_factorization(&prod).unwrap().unwrap();
        assert!(find_isomorphism(&f.lattice.clone().with_constants(Constants::none()).unwrap(),
            &chain2().with_constants(Constants::none()).unwrap(), 12).unwrap().is_some());
        assert!(find_isomorphism(&f.rectangular, &rect2(), 12).unwrap().is_some());
        assert!(f.iso.is_homomorphism() && f.iso.is_bijective());
    }

    #[test]
    fn factorization_absent_for_pf22() {
        assert!(binormal_factorization(&pf22()).unwrap().is_none());
    }

    #[test]
    fn factorization_of_chain() {
        let f = binormal_factorization(&chain2()).unwrap().unwrap();
        assert_eq!(f.lattice.size(), 2);
        assert_eq!(f.rectangular.size(), 1);
    }

    #[test]
    fn chain2_dual_difference() {
        let c = chain2();
        let dd = solve_dual_skew_diff(&c).unwrap().unwrap();
        // y \\ x = 1 unless y = 0 and x = 1
        assert_eq!(dd.rows(), vec![vec![1, 0], vec![1, 1]]);
        assert!(check_dual_skew_boolean(&c, &dd).all_hold());
    }

    #[test]
    fn pf22_dual_difference_is_restriction() {
        let a = pf22();
        let dd = solve_dual_skew_diff(&a).unwrap().unwrap();
        assert!(check_dual_skew_boolean(&a, &dd).all_hold());
        // y \\ x = y restricted to dom y − dom x, which is x → y on P(X,Y)
        for y in a.elements() {
            for x in a.elements() {
                assert_eq!(dd.get(y, x), a.arrow(x, y));
            }
        }
    }

    #[test]
    fn dual_of_pf22_is_skew_boolean() {
        let d = vertical_dual(&pf22());
        let diff = solve_skew_diff(&d).unwrap().unwrap();
        assert!(check_skew_boolean(&d, &diff).all_hold());
        let a = pf22();
        // f \ g = f restricted to dom f − dom g, i.e. g → f
        for f in a.elements() {
            for g in a.elements() {
                assert_eq!(diff.get(f, g), a.arrow(g, f));
            }
        }
    }

    #[test]
    fn three_chain_has_no_dual_difference() {
        assert!(solve_dual_skew_diff(&chain(3)).unwrap().is_none());
    }
}
