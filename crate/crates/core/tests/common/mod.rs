#![allow(dead_code)]

use std::collections::BTreeSet;

use skewheyting::format::parse_algebra_file;
use skewheyting::models::{Poset, PosetSectionModel};
use skewheyting::Algebra;

pub const CHAIN2: &str = "\
elements: 0 1
meet:
0 0
0 1
join:
0 1
1 1
top: 1
bottom: 0
";

/// Two elements with `x∧y = x` and `x∨y = y`.
pub const RECT2: &str = "\
elements: a b
meet:
a a
b b
join:
a b
a b
";

/// RECT2 with a new least element.
pub const RECT2_BOTTOM: &str = "\
elements: 0 a b
meet:
0 0 0
0 a a
0 b b
join:
0 a b
a a b
b a b
bottom: 0
";

/// The pentagon: 0 < a < c < 1 and 0 < b < 1.
pub const N5: &str = "\
elements: 0 a b c 1
meet:
0 0 0 0 0
0 a 0 a a
0 0 b 0 b
0 a 0 c c
0 a b c 1
join:
0 a b c 1
a a 1 c 1
b 1 b 1 1
c c 1 c 1
1 1 1 1 1
top: 1
bottom: 0
";

pub fn parse(text: &str) -> Algebra {
    parse_algebra_file(text).expect("fixture parses")
}

/// `(x, y)` with `(y+1)^x <= max`.
pub fn pfn_shapes(max: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for x in 1.. {
        if 2usize.pow(x as u32) > max {
            break;
        }
        for y in 1.. {
            if (y + 1usize).pow(x as u32) > max {
                break;
            }
            v.push((x, y));
        }
    }
    v
}

/// Every `{1, 2}`-valued fiber vector of length `n`.
pub fn fiber_choices(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|bits| (0..n).map(|i| 1 + (bits >> i & 1)).collect())
        .collect()
}

/// Posets on 1 to 3 points, one per isomorphism class.
pub fn small_posets() -> Vec<Poset> {
    (1..=3)
        .flat_map(|n| skewheyting::models::enumerate_posets(n).unwrap())
        .collect()
}

pub fn poset_section_models(posets: &[Poset]) -> Vec<(String, PosetSectionModel)> {
    let mut out = Vec::new();
    for p in posets {
        for f in fiber_choices(p.size()) {
            let pairs: BTreeSet<(usize, usize)> = (0..p.size())
                .flat_map(|a| (0..p.size()).filter(move |&b| a != b).map(move |b| (a, b)))
                .filter(|&(a, b)| p.leq(a, b))
                .collect();
            let label = format!("poset {}pt {:?} fibers {:?}", p.size(), pairs, f);
            out.push((label, PosetSectionModel::from_fibers(p.clone(), &f).unwrap()));
        }
    }
    out
}
