//! Concrete algebra families: partial functions, sections of surjections,
//! upset lattices of finite posets, and small enumerated skew lattices.

mod enumerate;
mod poset;
mod poset_sections;
mod sections;
mod skew_boolean;

pub use enumerate::{enumerate_skew_lattices, family_instances, Family, Instance, ENUMERATION_BOUND};
pub use poset::{enumerate_posets, esakia_arrow, upset_heyting, Poset, UPSET_POINT_BOUND};
pub use poset_sections::{
    poset_sections_algebra, ArrowVariant, Orientation, PosetSectionModel, SectionFormulaReport,
    VariantOutcome,
};
pub use sections::{
    partial_function_algebra, partial_function_skew_boolean, sections_algebra, PartialMap,
    SurjectionModel,
};
pub use skew_boolean::from_skew_boolean;

use crate::algebra::{Algebra, Constants, Table};
use crate::Elem;

/// Default cap on the number of elements a model constructor may produce.
pub const DEFAULT_MODEL_BOUND: usize = 10_000;

/// `p, q, r, s, t, u, v, w`, then `x8, x9, …`.
pub fn point_name(i: usize) -> String {
    const LETTERS: &[u8] = b"pqrstuvw";
    match LETTERS.get(i) {
        Some(&c) => (c as char).to_string(),
        None => format!("x{i}"),
    }
}

fn fresh_name(a: &Algebra, wanted: &[&str]) -> String {
    wanted
        .iter()
        .map(|s| s.to_string())
        .chain((0..).map(|i| format!("e{}", a.size() + i)))
        .find(|s| a.index_of(s).is_none())
        .expect("some name is free")
}

fn adjoin(a: &Algebra, name: String, absorbing_join: bool) -> Algebra {
    let n = a.size();
    let extend = |t: &Table, absorbing: bool| {
        Table::from_fn(n + 1, |x, y| match (x == n, y == n) {
            (false, false) => t.get(x, y),
            (true, true) => n,
            (true, false) if absorbing => n,
            (true, false) => y,
            (false, true) if absorbing => n,
            (false, true) => x,
        })
    };
    let meet = extend(a.meet_table(), !absorbing_join);
    let join = extend(a.join_table(), absorbing_join);
    let constants = if absorbing_join {
        Constants { top: Some(n), bottom: a.bottom() }
    } else {
        Constants { top: a.top(), bottom: Some(n) }
    };
    let mut names = a.names().to_vec();
    names.push(name);
    Algebra::from_tables(meet, join, constants, None)
        .expect("adjoined element is absorbing")
        .with_names(names)
        .expect("fresh name")
}

/// A new greatest element `1`, designated as top. Drops any arrow.
pub fn adjoin_top(a: &Algebra) -> Algebra {
    adjoin(a, fresh_name(a, &["1", "top"]), true)
}

/// A new least element `0`, designated as bottom. Drops any arrow.
pub fn adjoin_bottom(a: &Algebra) -> Algebra {
    adjoin(a, fresh_name(a, &["0", "bottom"]), false)
}

/// Index of the element adjoined last.
pub fn adjoined(a: &Algebra) -> Elem {
    a.size() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::rect2;
    use crate::properties::classify;
    use crate::skew_heyting::verify;

    #[test]
    fn skew_chain_t3() {
        let t3 = adjoin_top(&rect2());
        assert_eq!(t3.names(), ["a", "b", "1"]);
        assert_eq!(t3.top(), Some(2));
        let r = verify(&t3).unwrap();
        assert!(r.all_hold(), "{:?}", r.first_failure());
        assert!(r.holds("skew-chain-arrow"));
    }

    #[test]
    fn rect2_with_bottom() {
        let a = adjoin_bottom(&rect2());
        assert_eq!(a.bottom(), Some(adjoined(&a)));
        assert!(classify(&a).holds("skew-lattice"));
    }

    #[test]
    fn point_names() {
        assert_eq!(point_name(0), "p");
        assert_eq!(point_name(7), "w");
        assert_eq!(point_name(8), "x8");
    }
}
