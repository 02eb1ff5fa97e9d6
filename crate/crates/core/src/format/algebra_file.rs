use crate::algebra::{make_algebra, Algebra, Constants, Table};
use crate::error::{Error, Result};
use crate::Elem;

/// Non-blank, non-comment line split into `(column, token)` pairs.
pub(crate) struct Line<'a> {
    pub(crate) number: usize,
    pub(crate) tokens: Vec<(usize, &'a str)>,
}

impl Line<'_> {
    pub(crate) fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// `Some(key)` when the line opens a section.
    pub(crate) fn header(&self) -> Option<&str> {
        self.tokens.first().and_then(|(_, t)| t.strip_suffix(':'))
    }
}

pub(crate) fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return None;
            }
            let mut tokens = Vec::new();
            let mut start = None;
            for (col, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(col),
                    (true, Some(s)) => {
                        tokens.push((raw[..s].chars().count() + 1, &raw[s..col]));
                        start = None;
                    }
                    _ => {}
                }
            }
            Some(Line {
                number: i + 1,
                tokens,
            })
        })
        .collect()
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Option<&Line<'a>> {
        let l = self.lines.get(self.pos);
        self.pos += 1;
        l
    }

    fn eof_error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.last_line + 1,
            column: 1,
            message: message.into(),
        }
    }

    /// Consumes `key:` and returns the tokens after it on the same line.
    fn section(&mut self, key: &str) -> Result<(usize, Vec<(usize, &'a str)>)> {
        let Some(line) = self.next() else {
            return Err(self.eof_error(format!("expected `{key}:` section")));
        };
        match line.header() {
            Some(k) if k == key => Ok((line.number, line.tokens[1..].to_vec())),
            _ => Err(line.error(line.tokens[0].0, format!("expected `{key}:` section"))),
        }
    }

    fn optional_section(&mut self, key: &str) -> Option<(usize, Vec<(usize, &'a str)>)> {
        match self.peek().and_then(Line::header) {
            Some(k) if k == key => self.section(key).ok(),
            _ => None,
        }
    }

    fn table(&mut self, key: &str, names: &[&str]) -> Result<Vec<Vec<Elem>>> {
        let (number, rest) = self.section(key)?;
        if let Some(&(col, _)) = rest.first() {
            return Err(Error::Parse {
                line: number,
                column: col,
                message: format!("`{key}:` takes its rows on the following lines"),
            });
        }
        let n = names.len();
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let Some(line) = self.peek() else {
                return Err(self.eof_error(format!("`{key}` table ends after {r} of {n} rows")));
            };
            if line.header().is_some() {
                return Err(line.error(1, format!("`{key}` table has {r} rows, expected {n}")));
            }
            let line = self.next().expect("peeked");
            if line.tokens.len() != n {
                let col = line.tokens.get(n).map_or(line.tokens.last().map_or(1, |t| t.0), |t| t.0);
                return Err(line.error(
                    col,
                    format!("`{key}` row has {} entries, expected {n}", line.tokens.len()),
                ));
            }
            let row = line
                .tokens
                .iter()
                .map(|&(col, t)| lookup(names, t).ok_or_else(|| line.error(col, format!("unknown element `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(rows)
    }

    fn constant(&mut self, key: &str, names: &[&str]) -> Result<Option<Elem>> {
        let Some((number, rest)) = self.optional_section(key) else {
            return Ok(None);
        };
        match rest.as_slice() {
            [(col, t)] => lookup(names, t).map(Some).ok_or_else(|| Error::Parse {
                line: number,
                column: *col,
                message: format!("unknown element `{t}`"),
            }),
            _ => Err(Error::Parse {
                line: number,
                column: 1,
                message: format!("`{key}:` takes exactly one element name"),
            }),
        }
    }
}

fn lookup(names: &[&str], t: &str) -> Option<Elem> {
    names.iter().position(|n| *n == t)
}

/// Parses the text format: `elements:`, `meet:`, `join:`, then optional
/// `arrow:`, `top:` and `bottom:`, in that order.
pub fn parse_algebra_file(text: &str) -> Result<Algebra> {
    let all = lines(text);
    let last_line = text.lines().count();
    let mut c = Cursor {
        lines: all,
        pos: 0,
        last_line,
    };
    let (number, elems) = c.section("elements")?;
    if elems.is_empty() {
        return Err(Error::Parse {
            line: number,
            column: 1,
            message: "no elements declared".into(),
        });
    }
    let names: Vec<&str> = elems.iter().map(|(_, t)| *t).collect();
    for (i, &(col, t)) in elems.iter().enumerate() {
        if names[..i].contains(&t) {
            return Err(Error::Parse {
                line: number,
                column: col,
                message: format!("duplicate element `{t}`"),
            });
        }
        if t.ends_with(':') || t.starts_with('#') {
            return Err(Error::Parse {
                line: number,
                column: col,
                message: format!("invalid element name `{t}`"),
            });
        }
    }
    let meet = c.table("meet", &names)?;
    let join = c.table("join", &names)?;
    let arrow = match c.peek().and_then(Line::header) {
        Some("arrow") => Some(c.table("arrow", &names)?),
        _ => None,
    };
    let top = c.constant("top", &names)?;
    let bottom = c.constant("bottom", &names)?;
    if let Some(line) = c.peek() {
        return Err(line.error(line.tokens[0].0, "unexpected content after the last section"));
    }
    make_algebra(&meet, &join, Constants { top, bottom }, arrow.as_deref())?
        .with_names(names.iter().map(|s| s.to_string()).collect())
}

fn emit_table(out: &mut String, key: &str, a: &Algebra, t: &Table) {
    let width = a.names().iter().map(|n| n.chars().count()).max().unwrap_or(1);
    out.push_str(key);
    out.push_str(":\n");
    for x in a.elements() {
        let row: Vec<String> = a
            .elements()
            .map(|y| format!("{:<width$}", a.name(t.get(x, y))))
            .collect();
        out.push_str(row.join(" ").trim_end());
        out.push('\n');
    }
}

/// Renders in the format [`parse_algebra_file`] reads.
pub fn emit_algebra_file(a: &Algebra) -> String {
    let mut out = String::new();
    out.push_str("elements: ");
    out.push_str(&a.names().join(" "));
    out.push('\n');
    emit_table(&mut out, "meet", a, a.meet_table());
    emit_table(&mut out, "join", a, a.join_table());
    if let Some(t) = a.arrow_table() {
        emit_table(&mut out, "arrow", a, t);
    }
    if let Some(t) = a.top() {
        out.push_str(&format!("top: {}\n", a.name(t)));
    }
    if let Some(b) = a.bottom() {
        out.push_str(&format!("bottom: {}\n", a.name(b)));
    }
    out
}

/// Just the `arrow:` section for `table` over the names of `a`.
pub fn emit_arrow_table(a: &Algebra, table: &Table) -> String {
    let mut out = String::new();
    emit_table(&mut out, "arrow", a, table);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN2: &str = "\
# the two-element chain
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

    #[test]
    fn parses_chain2() {
        let a = parse_algebra_file(CHAIN2).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.top(), Some(1));
        assert_eq!(a.bottom(), Some(0));
        assert_eq!(a.names(), ["0", "1"]);
    }

    #[test]
    fn round_trip() {
        let a = parse_algebra_file(CHAIN2).unwrap();
        let text = emit_algebra_file(&a);
        assert_eq!(parse_algebra_file(&text).unwrap(), a);
    }

    #[test]
    fn short_row_reports_position() {
        let text = "elements: a b c\nmeet:\na a a\na b\n";
        match parse_algebra_file(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_row_reports_next_header() {
        let text = "elements: a b\nmeet:\na a\njoin:\na b\nb b\n";
        match parse_algebra_file(text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_name_reports_column() {
        let text = "elements: a b\nmeet:\na a\na  zz\njoin:\na b\nb b\n";
        match parse_algebra_file(text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (4, 4));
                assert!(message.contains("zz"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_top_is_forwarded() {
        let text = "elements: 1 a b\nmeet:\n1 a b\na a a\nb a b\njoin:\n1 1 1\n1 a 1\n1 1 b\ntop: a\n";
        assert!(matches!(parse_algebra_file(text), Err(Error::BadConstant { .. })));
    }

    #[test]
    fn sections_out_of_order() {
        let text = "elements: a\njoin:\na\nmeet:\na\n";
        assert!(matches!(parse_algebra_file(text), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn trailing_garbage() {
        let text = format!("{CHAIN2}extra\n");
        assert!(matches!(parse_algebra_file(&text), Err(Error::Parse { line: 11, .. })));
    }
}
