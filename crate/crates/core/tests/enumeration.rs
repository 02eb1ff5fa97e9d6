use itertools::Itertools;

use skewheyting::models::enumerate_skew_lattices;

/// Labeled skew lattices on `0..n` as flat `(meet, join)` tables.
fn labeled(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let cells = n * n;
    let tables: Vec<Vec<usize>> = (0..n.pow(cells as u32))
        .map(|mut c| {
            (0..cells)
                .map(|_| {
                    let v = c % n;
                    c /= n;
                    v
                })
                .collect()
        })
        .filter(|t: &Vec<usize>| {
            (0..n).all(|a| t[a * n + a] == a)
                && (0..n).all(|a| {
                    (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]))
                })
        })
        .collect();
    let mut out = Vec::new();
    for m in &tables {
        for j in &tables {
            let ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    m[x * n + j[x * n + y]] == x
                        && j[x * n + m[x * n + y]] == x
                        && j[m[x * n + y] * n + y] == y
                        && m[j[x * n + y] * n + y] == y
                })
            });
            if ok {
                out.push((m.clone(), j.clone()));
            }
        }
    }
    out
}

/// Orbit count by Burnside: the mean number of structures fixed by a permutation.
fn burnside(n: usize) -> usize {
    let all = labeled(n);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let fixed: usize = perms
        .iter()
        .map(|g| {
            all.iter()
                .filter(|(m, j)| {
                    (0..n).all(|a| {
                        (0..n).all(|b| {
                            m[g[a] * n + g[b]] == g[m[a * n + b]] && j[g[a] * n + g[b]] == g[j[a * n + b]]
                        })
                    })
                })
                .count()
        })
        .sum();
    assert_eq!(fixed % perms.len(), 0);
    fixed / perms.len()
}

#[test]
fn two_element_classes() {
    assert_eq!(burnside(2), 3);
    assert_eq!(enumerate_skew_lattices(2).unwrap().len(), 3);
}

#[test]
fn three_element_golden() {
    assert_eq!(burnside(3), 7);
    assert_eq!(enumerate_skew_lattices(3).unwrap().len(), 7);
}
