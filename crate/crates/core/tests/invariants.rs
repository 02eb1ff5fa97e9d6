mod common;

use proptest::prelude::*;

use common::*;
use skewheyting::algebra::{direct_product, vertical_dual};
use skewheyting::format::{emit_algebra_file, parse_algebra_file};
use skewheyting::models::{
    enumerate_skew_lattices, partial_function_algebra, poset_sections_algebra, sections_algebra,
    SurjectionModel, DEFAULT_MODEL_BOUND,
};
use skewheyting::properties::{classify, law, LAWS};
use skewheyting::scan::Eval;
use skewheyting::skew_heyting::with_derived_arrow;
use skewheyting::{Algebra, Verdict};

const B: usize = DEFAULT_MODEL_BOUND;

fn pool() -> Vec<Algebra> {
    let mut v = vec![
        parse(CHAIN2),
        parse(RECT2),
        parse(RECT2_BOTTOM),
        parse(N5),
        partial_function_algebra(1, 2, B).unwrap(),
        partial_function_algebra(2, 2, B).unwrap(),
        vertical_dual(&partial_function_algebra(2, 1, B).unwrap()),
        sections_algebra(&SurjectionModel::from_fibers(&[2, 1]).unwrap(), B).unwrap(),
        direct_product(&parse(CHAIN2), &parse(RECT2)),
    ];
    v.extend(enumerate_skew_lattices(3).unwrap());
    for (_, m) in poset_section_models(&small_posets()).into_iter().take(12) {
        v.push(poset_sections_algebra(&m, B).unwrap().0);
    }
    v
}

fn instance() -> impl Strategy<Value = (Algebra, Vec<usize>)> {
    let pool = pool();
    (0..pool.len()).prop_flat_map(move |i| {
        let a = pool[i].clone();
        let n = a.size();
        (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn verdicts(a: &Algebra) -> Vec<(String, bool)> {
    classify(a)
        .checks
        .into_iter()
        .map(|c| (c.name, c.verdict == Verdict::Holds))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classify_is_relabel_stable((a, perm) in instance()) {
        prop_assert_eq!(verdicts(&a), verdicts(&a.relabel(&perm)));
    }

    #[test]
    fn parse_emit_round_trip((a, perm) in instance()) {
        let b = a.relabel(&perm);
        let text = emit_algebra_file(&b);
        let back = parse_algebra_file(&text).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(emit_algebra_file(&back), text);
    }

    #[test]
    fn witnesses_re_evaluate((a, perm) in instance()) {
        let b = a.relabel(&perm);
        for l in LAWS.iter() {
            let c = l.check(&b);
            if let Some(w) = &c.witness {
                let e = law(l.name).unwrap().eval_at(&b, &w.tuple);
                prop_assert_ne!(e, Eval::Ok, "{} witness {:?}", l.name, w);
                if let (Eval::Differ(x, y), Some(s)) = (e, w.sides) {
                    prop_assert_eq!((x, y), s);
                }
            } else {
                prop_assert!(c.is_holds());
            }
        }
    }

    #[test]
    fn derived_arrow_commutes_with_relabeling((a, perm) in instance()) {
        let base = a.without_arrow();
        if let Ok(d) = with_derived_arrow(&base) {
            let r = with_derived_arrow(&base.relabel(&perm)).unwrap();
            let moved = d.relabel(&perm);
            prop_assert_eq!(moved.arrow_table(), r.arrow_table());
        }
    }
}

/// Witnesses are the least failing tuple in lexicographic order.
#[test]
fn witnesses_are_least() {
    for a in pool() {
        for l in LAWS.iter().filter(|l| a.size().pow(l.arity() as u32) <= 100_000) {
            let Some(w) = l.check(&a).witness else { continue };
            let n = a.size();
            let k = l.arity();
            let least = (0..n.pow(k as u32))
                .map(|mut c| {
                    let mut t = vec![0; k];
                    for slot in t.iter_mut().rev() {
                        *slot = c % n;
                        c /= n;
                    }
                    t
                })
                .find(|t| l.eval_at(&a, t) != Eval::Ok);
            assert_eq!(least.as_ref(), Some(&w.tuple), "{}", l.name);
        }
    }
}
