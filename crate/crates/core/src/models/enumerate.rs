use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::sections::{partial_function_algebra, sections_algebra, SurjectionModel};
use crate::algebra::{direct_product, Algebra, Constants, Table};
use crate::error::{Error, Result};
use crate::properties::check_skew_lattice;

/// Raw table enumeration is limited to carriers of at most this size.
pub const ENUMERATION_BOUND: usize = 3;

fn is_associative(t: &Table) -> bool {
    let n = t.size();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t.get(t.get(a, b), c) == t.get(a, t.get(b, c)))))
}

/// Idempotent associative tables on `0..n`.
fn bands(n: usize) -> Vec<Table> {
    let off: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|(a, b)| a != b).collect();
    let total = n.pow(off.len() as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut t = Table::from_fn(n, |a, b| if a == b { a } else { 0 });
            for &(a, b) in &off {
                t.set(a, b, code % n);
                code /= n;
            }
            is_associative(&t).then_some(t)
        })
        .collect()
}

fn absorbs(m: &Table, j: &Table) -> bool {
    let n = m.size();
    (0..n).all(|x| {
        (0..n).all(|y| {
            m.get(x, j.get(x, y)) == x
                && j.get(x, m.get(x, y)) == x
                && j.get(m.get(x, y), y) == y
                && m.get(j.get(x, y), y) == y
        })
    })
}

/// All skew lattices on `n` elements up to isomorphism, each in the
/// relabeling with the least `(meet, join)` rows.
pub fn enumerate_skew_lattices(n: usize) -> Result<Vec<Algebra>> {
    if n > ENUMERATION_BOUND {
        return Err(Error::TooLarge {
            size: n,
            bound: ENUMERATION_BOUND,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let bs = bands(n);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut seen = BTreeMap::new();
    for m in &bs {
        for j in bs.iter().filter(|j| absorbs(m, j)) {
            let key = perms
                .iter()
                .map(|p| (m.relabel(p).rows(), j.relabel(p).rows()))
                .min()
                .expect("at least one permutation");
            seen.entry(key).or_insert(());
        }
    }
    seen.into_keys()
        .map(|(m, j)| {
            let a = crate::algebra::make_algebra(&m, &j, Constants::none(), None)?;
            debug_assert!(check_skew_lattice(&a).is_holds());
            Ok(a)
        })
        .collect()
}

/// Instance families for counterexample search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Pfn,
    Sections,
    Enum,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pfn" => Ok(Family::Pfn),
            "sections" => Ok(Family::Sections),
            "enum" => Ok(Family::Enum),
            other => Err(format!("unknown family `{other}`, expected pfn, sections or enum")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Pfn => "pfn",
            Family::Sections => "sections",
            Family::Enum => "enum",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub algebra: Algebra,
}

fn nonincreasing(max_product: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let used: usize = prefix.iter().map(|f| f + 1).product();
    for f in (1..=cap).rev() {
        if used * (f + 1) > max_product {
            continue;
        }
        prefix.push(f);
        out.push(prefix.clone());
        nonincreasing(max_product, f, prefix, out);
        prefix.pop();
    }
}

/// Instances of `family` with at most `max_size` elements, smallest first.
pub fn family_instances(family: Family, max_size: usize, bound: usize) -> Result<Vec<Instance>> {
    let cap = max_size.min(bound);
    let mut out = Vec::new();
    match family {
        Family::Pfn => {
            let mut shapes = Vec::new();
            for x in 1..usize::BITS as usize {
                if 2usize.saturating_pow(x as u32) > cap {
                    break;
                }
                for y in 1.. {
                    let size = (y + 1usize).saturating_pow(x as u32);
                    if size > cap {
                        break;
                    }
                    shapes.push((size, x, y));
                }
            }
            shapes.sort();
            for (_, x, y) in shapes {
                out.push(Instance {
                    label: format!("pfn x={x} y={y}"),
                    algebra: partial_function_algebra(x, y, bound)?,
                });
            }
        }
        Family::Sections => {
            let mut fibers = Vec::new();
            nonincreasing(cap, cap, &mut Vec::new(), &mut fibers);
            let mut shapes: Vec<(usize, Vec<usize>)> = fibers
                .into_iter()
                .map(|f| (f.iter().map(|k| k + 1).product(), f))
                .collect();
            shapes.sort();
            for (_, f) in shapes {
                out.push(Instance {
                    label: format!("sections fibers={}", f.iter().join(",")),
                    algebra: sections_algebra(&SurjectionModel::from_fibers(&f)?, bound)?,
                });
            }
        }
        Family::Enum => {
            let mut base = Vec::new();
            for n in 1..=cap.min(ENUMERATION_BOUND) {
                for (k, a) in enumerate_skew_lattices(n)?.into_iter().enumerate() {
                    base.push((format!("enum n={n} #{k}"), a));
                }
            }
            let mut products = Vec::new();
            for (i, (li, ai)) in base.iter().enumerate() {
                for (lj, aj) in &base[i..] {
                    let size = ai.size() * aj.size();
                    if ai.size() > 1 && aj.size() > 1 && size > ENUMERATION_BOUND && size <= cap {
                        products.push((size, format!("({li}) x ({lj})"), direct_product(ai, aj)));
                    }
                }
            }
            products.sort_by_key(|(size, _, _)| *size);
            out.extend(base.into_iter().map(|(label, algebra)| Instance { label, algebra }));
            out.extend(
                products
                    .into_iter()
                    .map(|(_, label, algebra)| Instance { label, algebra }),
            );
        }
    }
    Ok(out)
}
