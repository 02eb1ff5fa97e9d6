use super::algebra_file::lines;
use crate::error::{Error, Result};
use crate::models::Poset;

/// `points:` followed by a `leq:` section of 0/1 rows, row `a` column `b`
/// meaning `a ≤ b`.
pub fn parse_poset_file(text: &str) -> Result<Poset> {
    let ls = lines(text);
    let eof = text.lines().count() + 1;
    let err = |line: usize, column: usize, message: String| Error::Parse { line, column, message };
    let Some(first) = ls.first() else {
        return Err(err(eof, 1, "expected `points:` section".into()));
    };
    if first.header() != Some("points") {
        return Err(first.error(first.tokens[0].0, "expected `points:` section"));
    }
    let names: Vec<String> = first.tokens[1..].iter().map(|(_, t)| t.to_string()).collect();
    for (i, &(col, t)) in first.tokens[1..].iter().enumerate() {
        if names[..i].iter().any(|n| n == t) {
            return Err(first.error(col, format!("duplicate point `{t}`")));
        }
    }
    let n = names.len();
    let Some(head) = ls.get(1) else {
        return Err(err(eof, 1, "expected `leq:` section".into()));
    };
    if head.header() != Some("leq") {
        return Err(head.error(head.tokens[0].0, "expected `leq:` section"));
    }
    if let Some(&(col, _)) = head.tokens.get(1) {
        return Err(head.error(col, "`leq:` takes its rows on the following lines"));
    }
    let mut leq = Vec::with_capacity(n);
    for r in 0..n {
        let Some(line) = ls.get(2 + r) else {
            return Err(err(eof, 1, format!("`leq` ends after {r} of {n} rows")));
        };
        if line.tokens.len() != n {
            return Err(line.error(1, format!("`leq` row has {} entries, expected {n}", line.tokens.len())));
        }
        let row = line
            .tokens
            .iter()
            .map(|&(col, t)| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(line.error(col, format!("expected 0 or 1, found `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        leq.push(row);
    }
    if let Some(line) = ls.get(2 + n) {
        return Err(line.error(line.tokens[0].0, "unexpected content after the last row"));
    }
    Poset::new(names, leq).map_err(|e| match e {
        Error::PreconditionFailed(m) => err(head.number, 1, m),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_v_shape() {
        let p = parse_poset_file("points: a b c\nleq:\n1 1 1\n0 1 0\n0 0 1\n").unwrap();
        assert_eq!(p.size(), 3);
        assert!(p.leq(0, 2));
        assert!(!p.leq(1, 2));
    }

    #[test]
    fn rejects_cycle_as_parse_error() {
        let r = parse_poset_file("points: a b\nleq:\n1 1\n1 1\n");
        assert!(matches!(r, Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn rejects_bad_digit() {
        let r = parse_poset_file("points: a b\nleq:\n1 2\n0 1\n");
        assert!(matches!(r, Err(Error::Parse { line: 3, column: 3, .. })));
    }
}
