//! Exhaustive tuple scans with deterministic witnesses.
//!
//! Work is split across the first coordinate with rayon; `find_map_first`
//! keeps the reported witness equal to the lexicographically least failing
//! tuple regardless of the thread count.

use rayon::prelude::*;

use crate::report::{Check, Witness};
use crate::Elem;

/// Outcome of evaluating a law at one tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eval {
    Ok,
    /// An equation failed with these left and right sides.
    Differ(Elem, Elem),
    /// A non-equational condition failed.
    Fails,
}

impl Eval {
    #[inline]
    pub fn eq(lhs: Elem, rhs: Elem) -> Eval {
        if lhs == rhs {
            Eval::Ok
        } else {
            Eval::Differ(lhs, rhs)
        }
    }

    #[inline]
    pub fn cond(ok: bool) -> Eval {
        if ok {
            Eval::Ok
        } else {
            Eval::Fails
        }
    }

    /// First failure of a sequence of evaluations.
    #[inline]
    pub fn and(self, next: impl FnOnce() -> Eval) -> Eval {
        match self {
            Eval::Ok => next(),
            other => other,
        }
    }
}

pub fn tuple_space(n: usize, arity: usize) -> u64 {
    (n as u64).saturating_pow(arity as u32)
}

/// Least tuple (lexicographic) in `0..n`^K at which `f` does not return `Ok`.
pub fn first_failure<const K: usize, F>(n: usize, f: F) -> Option<([Elem; K], Eval)>
where
    F: Fn(&[Elem; K]) -> Eval + Sync,
{
    if n == 0 || K == 0 {
        return None;
    }
    (0..n).into_par_iter().find_map_first(|first| {
        let mut t = [0; K];
        t[0] = first;
        loop {
            let e = f(&t);
            if e != Eval::Ok {
                return Some((t, e));
            }
            let mut i = K - 1;
            loop {
                if i == 0 {
                    return None;
                }
                t[i] += 1;
                if t[i] < n {
                    break;
                }
                t[i] = 0;
                i -= 1;
            }
        }
    })
}

pub fn witness_from<const K: usize>(labels: &[&'static str; K], t: &[Elem; K], e: Eval) -> Witness {
    let w = Witness::new(labels, t);
    match e {
        Eval::Differ(l, r) => w.with_sides(l, r),
        _ => w,
    }
}

/// Runs a law over the whole tuple space and packages the result.
pub fn check_law<const K: usize, F>(
    name: &str,
    labels: [&'static str; K],
    n: usize,
    f: F,
) -> Check
where
    F: Fn(&[Elem; K]) -> Eval + Sync,
{
    let failure = first_failure(n, f).map(|(t, e)| witness_from(&labels, &t, e));
    Check::from_outcome(name, tuple_space(n, K), failure)
}

/// Four-variable equation of the shape `tail(a(x,y,z), w) = tail(b(x,y,z), w)`.
///
/// The least separating `w` is tabulated once per pair of prefix values, so
/// the scan is cubic. The reported witness is still the least failing
/// quadruple.
pub fn check_prefixed4<P, T>(
    name: &str,
    labels: [&'static str; 4],
    n: usize,
    prefix: P,
    tail: T,
) -> Check
where
    P: Fn(Elem, Elem, Elem) -> (Elem, Elem) + Sync,
    T: Fn(Elem, Elem) -> Elem + Sync,
{
    let sep: Vec<Option<Elem>> = (0..n * n)
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            (0..n).find(|&w| tail(a, w) != tail(b, w))
        })
        .collect();
    let failure = (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                let (a, b) = prefix(x, y, z);
                if let Some(w) = sep[a * n + b] {
                    return Some(Witness::new(&labels, &[x, y, z, w]).with_sides(tail(a, w), tail(b, w)));
                }
            }
        }
        None
    });
    Check::from_outcome(name, tuple_space(n, 4), failure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_witness_is_lexicographic() {
        // fails on every tuple whose sum is 3
        let got = first_failure::<3, _>(4, |t| Eval::cond(t.iter().sum::<usize>() != 3));
        assert_eq!(got.map(|(t, _)| t), Some([0, 0, 3]));
    }

    #[test]
    fn single_variable_scan() {
        let got = first_failure::<1, _>(5, |t| Eval::cond(t[0] < 3));
        assert_eq!(got.map(|(t, _)| t), Some([3]));
        assert!(first_failure::<1, _>(5, |_| Eval::Ok).is_none());
    }

    #[test]
    fn prefixed_matches_plain_scan() {
        let n = 5;
        let f = |a: usize, b: usize| (a * 3 + b) % n;
        let plain = check_law("p", ["x", "y", "z", "w"], n, |t| {
            Eval::eq(f(f(f(t[0], t[1]), t[2]), t[3]), f(f(f(t[0], t[2]), t[1]), t[3]))
        });
        let fast = check_prefixed4(
            "p",
            ["x", "y", "z", "w"],
            n,
            |x, y, z| (f(f(x, y), z), f(f(x, z), y)),
            f,
        );
        assert_eq!(plain, fast);
    }

    #[test]
    fn counts_full_space_when_holding() {
        let c = check_law("t", ["x", "y"], 7, |_| Eval::Ok);
        assert!(c.is_holds());
        assert_eq!(c.tuples, 49);
    }
}
