use std::collections::HashMap;

use super::point_name;
use crate::algebra::{vertical_dual, Algebra, Constants, Table};
use crate::error::{Error, Result};
use crate::Elem;

/// A partial function from `0..n` to value indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    values: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn empty(n: usize) -> PartialMap {
        PartialMap {
            values: vec![None; n],
        }
    }

    pub fn from_values(values: Vec<Option<usize>>) -> PartialMap {
        PartialMap { values }
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize) -> Option<usize> {
        self.values[i]
    }

    #[inline]
    pub fn is_defined(&self, i: usize) -> bool {
        self.values[i].is_some()
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.is_defined(i)).collect()
    }

    /// Bitmask of the domain. Requires at most 64 points.
    pub fn domain_mask(&self) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some())
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> PartialMap {
        PartialMap {
            values: (0..self.values.len())
                .map(|i| if keep(i) { self.values[i] } else { None })
                .collect(),
        }
    }

    /// `f ∪ g|_{dom g − dom f}`
    pub fn meet(&self, g: &PartialMap) -> PartialMap {
        PartialMap {
            values: self.values.iter().zip(&g.values).map(|(a, b)| a.or(*b)).collect(),
        }
    }

    /// `g|_{dom g ∩ dom f}`
    pub fn join(&self, g: &PartialMap) -> PartialMap {
        g.restrict(|i| self.is_defined(i))
    }

    /// `g|_{dom g − dom f}`
    pub fn arrow(&self, g: &PartialMap) -> PartialMap {
        g.restrict(|i| !self.is_defined(i))
    }
}

/// A surjection `E → B` of finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectionModel {
    base: Vec<String>,
    total: Vec<String>,
    proj: Vec<usize>,
}

impl SurjectionModel {
    pub fn new(base: Vec<String>, total: Vec<String>, proj: Vec<usize>) -> Result<SurjectionModel> {
        if proj.len() != total.len() {
            return Err(Error::PreconditionFailed(format!(
                "projection has {} entries for {} points",
                proj.len(),
                total.len()
            )));
        }
        let mut hit = vec![false; base.len()];
        for &b in &proj {
            *hit.get_mut(b).ok_or_else(|| {
                Error::PreconditionFailed(format!("projection target {b} out of range"))
            })? = true;
        }
        if let Some(b) = hit.iter().position(|h| !h) {
            return Err(Error::PreconditionFailed(format!(
                "projection misses base point `{}`",
                base[b]
            )));
        }
        Ok(SurjectionModel { base, total, proj })
    }

    /// Base points `p, q, …`; the fiber over `p` is `p0, p1, …`.
    pub fn from_fibers(fibers: &[usize]) -> Result<SurjectionModel> {
        let base: Vec<String> = (0..fibers.len()).map(point_name).collect();
        SurjectionModel::from_named_fibers(base, fibers)
    }

    pub fn from_named_fibers(base: Vec<String>, fibers: &[usize]) -> Result<SurjectionModel> {
        if base.len() != fibers.len() {
            return Err(Error::PreconditionFailed("one fiber size per base point".into()));
        }
        let mut total = Vec::new();
        let mut proj = Vec::new();
        for (b, &k) in fibers.iter().enumerate() {
            for v in 0..k {
                total.push(format!("{}{v}", base[b]));
                proj.push(b);
            }
        }
        SurjectionModel::new(base, total, proj)
    }

    /// `X × Y → X`.
    pub fn coordinate_projection(x: usize, y: usize) -> Result<SurjectionModel> {
        SurjectionModel::from_fibers(&vec![y; x])
    }

    pub fn identity(n: usize) -> Result<SurjectionModel> {
        SurjectionModel::from_fibers(&vec![1; n])
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn total(&self) -> &[String] {
        &self.total
    }

    pub fn proj(&self) -> &[usize] {
        &self.proj
    }

    pub fn fiber(&self, b: usize) -> Vec<usize> {
        (0..self.total.len()).filter(|&e| self.proj[e] == b).collect()
    }

    /// Number of sections over all subsets of the base.
    pub fn section_count(&self) -> usize {
        (0..self.base.len()).fold(1usize, |acc, b| acc.saturating_mul(self.fiber(b).len() + 1))
    }

    /// All sections, total-space indices as values, in lexicographic order
    /// with "undefined" first at every point.
    pub fn sections(&self, bound: usize) -> Result<Vec<PartialMap>> {
        let size = self.section_count();
        if size > bound {
            return Err(Error::TooLarge { size, bound });
        }
        let mut out = vec![PartialMap::empty(self.base.len())];
        for b in (0..self.base.len()).rev() {
            let choices: Vec<Option<usize>> =
                std::iter::once(None).chain(self.fiber(b).into_iter().map(Some)).collect();
            out = choices
                .iter()
                .flat_map(|&c| {
                    out.iter().map(move |m| {
                        let mut v = m.values.clone();
                        v[b] = c;
                        PartialMap::from_values(v)
                    })
                })
                .collect();
        }
        out.sort();
        Ok(out)
    }

    pub fn section_name(&self, s: &PartialMap) -> String {
        let inner: Vec<&str> = s
            .values()
            .iter()
            .flatten()
            .map(|&e| self.total[e].as_str())
            .collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// Algebra on `maps` with the override/restriction operations. `arrow`
/// supplies the implication when given; the empty map is the top.
pub(crate) fn map_algebra(
    maps: &[PartialMap],
    names: Vec<String>,
    arrow: Option<&dyn Fn(&PartialMap, &PartialMap) -> PartialMap>,
) -> Result<Algebra> {
    let index: HashMap<&PartialMap, Elem> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = maps.len();
    let find = |m: PartialMap| -> Result<Elem> {
        index
            .get(&m)
            .copied()
            .ok_or_else(|| Error::PreconditionFailed(format!("carrier not closed: {m:?}")))
    };
    let table = |op: &dyn Fn(&PartialMap, &PartialMap) -> PartialMap| -> Result<Table> {
        let rows = maps
            .iter()
            .map(|f| maps.iter().map(|g| find(op(f, g))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Table::from_rows("model", &rows)
    };
    let meet = table(&PartialMap::meet)?;
    let join = table(&PartialMap::join)?;
    let arrow = arrow.map(table).transpose()?;
    let top = find(PartialMap::empty(maps.first().map_or(0, |m| m.values.len())))?;
    debug_assert_eq!(meet.size(), n);
    Algebra::from_tables(meet, join, Constants::top(top), arrow)?.with_names(names)
}

/// `P(X, Y)` with `|X| = x`, `|Y| = y` and the override operations; the
/// arrow is `f → g = g|_{dom g − dom f}` and the top is the empty map.
pub fn partial_function_algebra(x: usize, y: usize, bound: usize) -> Result<Algebra> {
    if x == 0 || y == 0 {
        return Err(Error::PreconditionFailed("X and Y must be nonempty".into()));
    }
    let model = SurjectionModel::coordinate_projection(x, y)?;
    let maps: Vec<PartialMap> = model
        .sections(bound)?
        .into_iter()
        .map(|s| PartialMap::from_values(s.values.iter().map(|v| v.map(|e| e % y)).collect()))
        .collect();
    let names = maps
        .iter()
        .map(|m| {
            let inner: Vec<String> = (0..x)
                .filter_map(|i| m.get(i).map(|v| format!("{}{v}", point_name(i))))
                .collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    map_algebra(&maps, names, Some(&PartialMap::arrow))
}

/// Sections of `model` over all subsets of its base, with the same
/// operations as [`partial_function_algebra`].
pub fn sections_algebra(model: &SurjectionModel, bound: usize) -> Result<Algebra> {
    let maps = model.sections(bound)?;
    let names = maps.iter().map(|s| model.section_name(s)).collect();
    map_algebra(&maps, names, Some(&PartialMap::arrow))
}

/// The vertical dual of `P(X, Y)` as a skew Boolean algebra, with its
/// difference `f \ g = f|_{dom f − dom g}` as `diff.get(f, g)`.
pub fn partial_function_skew_boolean(x: usize, y: usize, bound: usize) -> Result<(Algebra, Table)> {
    let pf = partial_function_algebra(x, y, bound)?;
    let diff = Table::from_fn(pf.size(), |f, g| pf.arrow(g, f));
    Ok((vertical_dual(&pf), diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_isomorphism, greens, relations::is_preceq};
    use crate::models::DEFAULT_MODEL_BOUND;
    use crate::properties::classify;

    const B: usize = DEFAULT_MODEL_BOUND;

    fn idx(a: &Algebra, name: &str) -> Elem {
        a.index_of(name).unwrap_or_else(|| panic!("no element {name}"))
    }

    #[test]
    fn pf12_tables() {
        let a = partial_function_algebra(1, 2, B).unwrap();
        assert_eq!(a.names(), ["{}", "{p0}", "{p1}"]);
        let (p0, p1) = (idx(&a, "{p0}"), idx(&a, "{p1}"));
        assert_eq!(a.meet(p0, p1), p0);
        assert_eq!(a.top(), Some(idx(&a, "{}")));
        assert!(is_preceq(&a, p0, p1) && is_preceq(&a, p1, p0));
        assert_eq!(a.arrow(p0, p1), idx(&a, "{}"));
    }

    #[test]
    fn pf22_arrow_example() {
        let a = partial_function_algebra(2, 2, B).unwrap();
        assert_eq!(a.size(), 9);
        let f = idx(&a, "{p0}");
        let g = idx(&a, "{p1,q0}");
        assert_eq!(a.arrow(f, g), idx(&a, "{q0}"));
        for f in a.elements() {
            assert_eq!(a.arrow(f, f), a.top().unwrap());
        }
    }

    #[test]
    fn pf22_d_classes_are_domains() {
        let a = partial_function_algebra(2, 2, B).unwrap();
        let g = greens(&a).unwrap();
        let mut sizes = g.d.block_sizes();
        sizes.sort();
        assert_eq!(sizes, [1, 2, 2, 4]);
    }

    #[test]
    fn pf22_is_left_handed() {
        // the overlap in f∧g keeps f's values
        let a = partial_function_algebra(2, 2, B).unwrap();
        let r = classify(&a);
        assert!(r.holds("left-handed"));
        assert!(!r.holds("right-handed"));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            partial_function_algebra(3, 2, 26),
            Err(Error::TooLarge { size: 27, bound: 26 })
        ));
    }

    #[test]
    fn coordinate_projection_matches_pf() {
        let a = partial_function_algebra(2, 2, B).unwrap();
        let s = sections_algebra(&SurjectionModel::coordinate_projection(2, 2).unwrap(), B).unwrap();
        let perm: Vec<Elem> = (0..9).rev().collect();
        let iso = find_isomorphism(&a, &s.relabel(&perm), 12).unwrap().unwrap();
        assert!(iso.is_bijective() && iso.is_homomorphism());
    }

    #[test]
    fn single_fiber_matches_pf12() {
        let s = sections_algebra(&SurjectionModel::from_fibers(&[2]).unwrap(), B).unwrap();
        let a = partial_function_algebra(1, 2, B).unwrap();
        assert!(find_isomorphism(&a, &s, 12).unwrap().is_some());
    }

    #[test]
    fn identity_projection_is_commutative() {
        let s = sections_algebra(&SurjectionModel::identity(3).unwrap(), B).unwrap();
        assert_eq!(s.size(), 8);
        assert!(classify(&s).holds("commutative"));
    }

    #[test]
    fn surjectivity_is_required() {
        let base = vec!["p".to_string(), "q".to_string()];
        assert!(SurjectionModel::new(base, vec!["p0".into()], vec![0]).is_err());
    }
}
