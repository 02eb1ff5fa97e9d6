use super::{Algebra, Constants, Table};
use crate::Elem;

/// `(S; ∨, ∧)`: operations exchanged, top and bottom exchanged, arrow dropped.
pub fn vertical_dual(a: &Algebra) -> Algebra {
    Algebra::from_tables(
        a.join_table().clone(),
        a.meet_table().clone(),
        Constants {
            top: a.bottom(),
            bottom: a.top(),
        },
        None,
    )
    .expect("dual of a valid algebra is valid")
    .with_names(a.names().to_vec())
    .expect("names already validated")
}

/// Componentwise product. Element `(i, j)` has index `i * |B| + j`. The arrow
/// and each constant are present iff present in both factors.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Algebra {
    let nb = b.size();
    let n = a.size() * nb;
    let split = |e: Elem| (e / nb, e % nb);
    let pair = |t: &Table, u: &Table| {
        Table::from_fn(n, |x, y| {
            let ((x1, x2), (y1, y2)) = (split(x), split(y));
            t.get(x1, y1) * nb + u.get(x2, y2)
        })
    };
    let arrow = match (a.arrow_table(), b.arrow_table()) {
        (Some(t), Some(u)) => Some(pair(t, u)),
        _ => None,
    };
    let both = |x: Option<Elem>, y: Option<Elem>| Some(x? * nb + y?);
    let names = (0..n)
        .map(|e| {
            let (i, j) = split(e);
            format!("({},{})", a.name(i), b.name(j))
        })
        .collect();
    Algebra::from_tables(
        pair(a.meet_table(), b.meet_table()),
        pair(a.join_table(), b.join_table()),
        Constants {
            top: both(a.top(), b.top()),
            bottom: both(a.bottom(), b.bottom()),
        },
        arrow,
    )
    .expect("product of valid algebras is valid")
    .with_names(names)
    .expect("product names are distinct")
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn dual_of_chain2_swaps_constants() {
        let d = vertical_dual(&chain2());
        assert_eq!(d.top(), Some(0));
        assert_eq!(d.bottom(), Some(1));
        assert_eq!(d.join(0, 1), 0);
    }

    #[test]
    fn dual_is_involution() {
        for a in [chain2(), rect2(), chain(4)] {
            assert_eq!(vertical_dual(&vertical_dual(&a)), a);
        }
    }

    #[test]
    fn product_constants() {
        let p = direct_product(&chain2(), &chain2());
        assert_eq!(p.size(), 4);
        assert_eq!(p.top(), Some(3));
        assert_eq!(p.bottom(), Some(0));
        let q = direct_product(&chain2(), &rect2());
        assert_eq!(q.top(), None);
        assert_eq!(q.name(1), "(0,b)");
    }
}
