use std::collections::HashMap;

use super::poset::Poset;
use super::sections::{map_algebra, PartialMap, SurjectionModel};
use crate::algebra::{vertical_dual, Algebra};
use crate::error::{Error, Result};
use crate::skew_heyting::{derive_arrow, Derivation};
use crate::Elem;

/// A surjection onto the points of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetSectionModel {
    poset: Poset,
    surjection: SurjectionModel,
}

impl PosetSectionModel {
    pub fn new(poset: Poset, surjection: SurjectionModel) -> Result<PosetSectionModel> {
        if poset.names() != surjection.base() {
            return Err(Error::PreconditionFailed(
                "surjection base must be the poset's points".into(),
            ));
        }
        Ok(PosetSectionModel { poset, surjection })
    }

    /// Fiber over point `a` is `a0, a1, …`.
    pub fn from_fibers(poset: Poset, fibers: &[usize]) -> Result<PosetSectionModel> {
        let s = SurjectionModel::from_named_fibers(poset.names().to_vec(), fibers)?;
        PosetSectionModel::new(poset, s)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn surjection(&self) -> &SurjectionModel {
        &self.surjection
    }

    fn fiber_len(&self, b: usize) -> usize {
        self.surjection.fiber(b).len()
    }

    /// Sections over upsets only.
    pub fn sections(&self, bound: usize) -> Result<Vec<PartialMap>> {
        let ups = self.poset.upsets();
        let size = ups.iter().fold(0usize, |acc, &u| {
            let c = (0..self.poset.size())
                .filter(|&b| u >> b & 1 == 1)
                .fold(1usize, |c, b| c.saturating_mul(self.fiber_len(b)));
            acc.saturating_add(c)
        });
        if size > bound {
            return Err(Error::TooLarge { size, bound });
        }
        let mut out = Vec::with_capacity(size);
        for u in ups {
            let mut partial = vec![PartialMap::empty(self.poset.size())];
            for b in (0..self.poset.size()).filter(|&b| u >> b & 1 == 1) {
                partial = partial
                    .into_iter()
                    .flat_map(|m| {
                        self.surjection.fiber(b).into_iter().map(move |e| {
                            let mut v = m.values().to_vec();
                            v[b] = Some(e);
                            PartialMap::from_values(v)
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        out.sort();
        Ok(out)
    }
}

/// Candidate closed forms for the arrow on poset sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrowVariant {
    /// `r|↑(dom s∖dom r)`, undefined unless that upset lies in `dom r`.
    Printed,
    /// `r|(↑(dom s∖dom r) ∩ dom r)`
    PrintedClipped,
    /// `s|↑(dom s∖dom r)`
    SecondArgument,
    /// `s|(dom s∖dom r)`
    ExampleOne,
    /// `s` restricted to the largest upset inside `dom s∖dom r`.
    Interior,
}

impl ArrowVariant {
    pub const ALL: [ArrowVariant; 5] = [
        ArrowVariant::Printed,
        ArrowVariant::PrintedClipped,
        ArrowVariant::SecondArgument,
        ArrowVariant::ExampleOne,
        ArrowVariant::Interior,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArrowVariant::Printed => "printed",
            ArrowVariant::PrintedClipped => "printed-clipped",
            ArrowVariant::SecondArgument => "second-argument",
            ArrowVariant::ExampleOne => "example-one",
            ArrowVariant::Interior => "interior",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            ArrowVariant::Printed => "r|up(dom s - dom r)",
            ArrowVariant::PrintedClipped => "r|(up(dom s - dom r) & dom r)",
            ArrowVariant::SecondArgument => "s|up(dom s - dom r)",
            ArrowVariant::ExampleOne => "s|(dom s - dom r)",
            ArrowVariant::Interior => "s|int(dom s - dom r)",
        }
    }

    /// `None` when the formula is undefined at `(r, s)`.
    pub fn eval(self, p: &Poset, r: &PartialMap, s: &PartialMap) -> Option<PartialMap> {
        let (dr, ds) = (r.domain_mask(), s.domain_mask());
        let diff = ds & !dr;
        let keep = |m: u64| move |i: usize| m >> i & 1 == 1;
        match self {
            ArrowVariant::Printed => {
                let up = p.up(diff);
                (up & !dr == 0).then(|| r.restrict(keep(up)))
            }
            ArrowVariant::PrintedClipped => Some(r.restrict(keep(p.up(diff) & dr))),
            ArrowVariant::SecondArgument => Some(s.restrict(keep(p.up(diff)))),
            ArrowVariant::ExampleOne => Some(s.restrict(keep(diff))),
            ArrowVariant::Interior => {
                let int = p.full() & !p.down(p.full() & !diff);
                Some(s.restrict(keep(int)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantOutcome {
    pub variant: ArrowVariant,
    /// First pair `(r, s)` where the variant differs from the derived arrow.
    pub mismatch: Option<(Elem, Elem, String)>,
}

impl VariantOutcome {
    pub fn matches(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Which way round the displayed ∧ and ∨ give a skew Heyting algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orientation {
    pub as_displayed: bool,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionFormulaReport {
    pub variants: Vec<VariantOutcome>,
    pub orientation: Orientation,
}

impl SectionFormulaReport {
    pub fn matching(&self) -> Vec<ArrowVariant> {
        self.variants.iter().filter(|v| v.matches()).map(|v| v.variant).collect()
    }

    /// One line per variant and one for the orientation.
    pub fn lines(&self, names: &[String]) -> Vec<String> {
        let mut out: Vec<String> = self
            .variants
            .iter()
            .map(|v| match &v.mismatch {
                None => format!("variant {} [{}]: matches", v.variant.name(), v.variant.formula()),
                Some((r, s, why)) => format!(
                    "variant {} [{}]: differs at r={} s={} ({why})",
                    v.variant.name(),
                    v.variant.formula(),
                    names[*r],
                    names[*s]
                ),
            })
            .collect();
        out.push(format!(
            "orientation: displayed={} swapped={}",
            self.orientation.as_displayed, self.orientation.swapped
        ));
        out
    }
}

fn skew_heyting_able(a: &Algebra) -> bool {
    matches!(derive_arrow(a), Ok(Derivation::Derived(_)))
}

/// Sections over upsets with `r∨s = s|(dom r∩dom s)`, `r∧s = r∪s|(dom s∖dom r)`
/// and `1 = ∅`. The arrow attached is the derived one; each closed-form
/// candidate is compared against it.
pub fn poset_sections_algebra(
    model: &PosetSectionModel,
    bound: usize,
) -> Result<(Algebra, SectionFormulaReport)> {
    let maps = model.sections(bound)?;
    let names: Vec<String> = maps.iter().map(|s| model.surjection.section_name(s)).collect();
    let reduct = map_algebra(&maps, names.clone(), None)?;
    let derived = match derive_arrow(&reduct)? {
        Derivation::Derived(d) => d.table,
        Derivation::NotHeyting { u, missing } => {
            return Err(Error::InconsistencyDetected(format!(
                "sections over upsets: upset of `{}` is not Heyting ({missing})",
                names[u]
            )))
        }
    };
    let index: HashMap<&PartialMap, Elem> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let p = model.poset();
    let variants = ArrowVariant::ALL
        .iter()
        .map(|&variant| {
            let mut mismatch = None;
            'outer: for (i, r) in maps.iter().enumerate() {
                for (j, s) in maps.iter().enumerate() {
                    let why = match variant.eval(p, r, s) {
                        None => Some("undefined".to_string()),
                        Some(m) => match index.get(&m) {
                            None => Some("not a section over an upset".to_string()),
                            Some(&k) if k != derived.get(i, j) => {
                                Some(format!("gives {} instead of {}", names[k], names[derived.get(i, j)]))
                            }
                            Some(_) => None,
                        },
                    };
                    if let Some(why) = why {
                        mismatch = Some((i, j, why));
                        break 'outer;
                    }
                }
            }
            VariantOutcome { variant, mismatch }
        })
        .collect();
    let orientation = Orientation {
        as_displayed: true,
        swapped: skew_heyting_able(&vertical_dual(&reduct)),
    };
    let a = reduct.with_arrow(derived)?;
    Ok((
        a,
        SectionFormulaReport {
            variants,
            orientation,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_isomorphism;
    use crate::models::{partial_function_algebra, upset_heyting, DEFAULT_MODEL_BOUND};
    use crate::properties::classify;
    use crate::skew_heyting::check_sh_axioms;

    const B: usize = DEFAULT_MODEL_BOUND;

    #[test]
    fn single_point_matches_pf12() {
        let m = PosetSectionModel::from_fibers(Poset::chain(1), &[2]).unwrap();
        let (a, _) = poset_sections_algebra(&m, B).unwrap();
        let pf = partial_function_algebra(1, 2, B).unwrap();
        assert!(find_isomorphism(&a, &pf, 12).unwrap().is_some());
    }

    #[test]
    fn singleton_fibers_give_dual_upset_lattice() {
        let p = Poset::chain(2);
        let m = PosetSectionModel::from_fibers(p.clone(), &[1, 1]).unwrap();
        let (a, _) = poset_sections_algebra(&m, B).unwrap();
        assert!(classify(&a).holds("commutative"));
        // sections are ordered by reverse inclusion of domains
        let u = vertical_dual(&upset_heyting(&p).unwrap().without_arrow());
        assert!(find_isomorphism(&a.clone().without_arrow(), &u, 12).unwrap().is_some());
    }

    #[test]
    fn two_chain_with_fibers() {
        let m = PosetSectionModel::from_fibers(Poset::chain(2), &[2, 2]).unwrap();
        let (a, report) = poset_sections_algebra(&m, B).unwrap();
        // upsets ∅, {b}, {a,b}: 1 + 2 + 4 sections
        assert_eq!(a.size(), 7);
        assert!(check_sh_axioms(&a, a.arrow_table().unwrap()).unwrap().all_hold());
        assert!(report.matching().contains(&ArrowVariant::SecondArgument));
        assert!(!report.matching().contains(&ArrowVariant::Printed));
    }

    #[test]
    fn printed_formula_is_top_on_the_diagonal() {
        let p = Poset::chain(2);
        let m = PosetSectionModel::from_fibers(p.clone(), &[2, 1]).unwrap();
        for r in m.sections(B).unwrap() {
            let got = ArrowVariant::Printed.eval(&p, &r, &r).unwrap();
            assert_eq!(got.domain_mask(), 0);
        }
    }
}
