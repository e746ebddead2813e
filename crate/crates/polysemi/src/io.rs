//! Text formats for operation tables and construction specs.
//!
//! Both formats are line-oriented: `#` starts a comment, tokens are
//! whitespace-separated, and parsing reports the offending 1-based line.
//!
//! ```text
//! optab 1
//! arity 3
//! size 2
//! # labels a b        (optional)
//! table
//! 0 1
//! 1 0
//! 1 0
//! 0 1
//! ```
//!
//! ```text
//! construct 1
//! size 5
//! arity 4
//! group 0 1 2
//! grouptable
//! 0 1 2  1 2 0  2 0 1
//! rest
//! 0 1  1 1
//! ```

use crate::construct::ConstructionSpec;
use crate::error::Error;
use crate::table::{table_len, Carrier, Elem, NaryOp};

struct Lines<'a> {
    tokens: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let tokens = text
            .lines()
            .enumerate()
            .map(|(i, line)| {
                let body = line.split('#').next().unwrap_or("");
                (i + 1, body.split_whitespace().collect::<Vec<_>>())
            })
            .filter(|(_, toks)| !toks.is_empty())
            .collect();
        Lines { tokens, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.tokens.get(self.pos)
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), Error> {
        let item = self.tokens.get(self.pos).cloned().ok_or(Error::Parse {
            line: self.tokens.last().map(|(l, _)| *l).unwrap_or(0) + 1,
            msg: format!("expected {what}, found end of input"),
        })?;
        self.pos += 1;
        Ok(item)
    }

    /// Consumes a `key <value>` line and returns the parsed value.
    fn keyword_value(&mut self, key: &str) -> Result<usize, Error> {
        let (line, toks) = self.next_line(&format!("`{key} <count>`"))?;
        if toks.len() != 2 || toks[0] != key {
            return Err(Error::Parse {
                line,
                msg: format!("expected `{key} <count>`"),
            });
        }
        toks[1].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{}` is not a number", toks[1]),
        })
    }

    /// Consumes exactly `count` integer tokens below an already-consumed
    /// section header.
    fn numbers(&mut self, count: usize, max: usize, what: &str) -> Result<Vec<Elem>, Error> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let (line, toks) = self.next_line(&format!("{what} entries"))?;
            for tok in toks {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("`{tok}` is not a number"),
                })?;
                if v >= max {
                    return Err(Error::Parse {
                        line,
                        msg: format!("{what} entry {v} out of range 0..{max}"),
                    });
                }
                out.push(v as Elem);
                if out.len() > count {
                    return Err(Error::Parse {
                        line,
                        msg: format!("too many {what} entries, expected {count}"),
                    });
                }
            }
        }
        Ok(out)
    }

    fn expect_end(&mut self) -> Result<(), Error> {
        if let Some((line, _)) = self.peek() {
            return Err(Error::Parse {
                line: *line,
                msg: "unexpected trailing content".into(),
            });
        }
        Ok(())
    }
}

/// Parses the operation-table format.
pub fn parse_optab(text: &str) -> Result<NaryOp, Error> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next_line("`optab 1` header")?;
    if toks != ["optab", "1"] {
        return Err(Error::Parse {
            line,
            msg: "expected `optab 1` header".into(),
        });
    }
    let arity = lines.keyword_value("arity")?;
    let size = lines.keyword_value("size")?;
    // envelope enforcement happens here, before any table memory moves
    let len = table_len(size, arity)?;
    let labels = match lines.peek() {
        Some((_, toks)) if toks.first() == Some(&"labels") => {
            let (line, toks) = lines.next_line("labels")?;
            if toks.len() != size + 1 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {size} labels, got {}", toks.len() - 1),
                });
            }
            Some(toks[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>())
        }
        _ => None,
    };
    let (line, toks) = lines.next_line("`table`")?;
    if toks != ["table"] {
        return Err(Error::Parse {
            line,
            msg: "expected `table`".into(),
        });
    }
    let entries = lines.numbers(len, size, "table")?;
    lines.expect_end()?;
    let carrier = match labels {
        Some(ls) => Carrier::with_labels(size, ls)?,
        None => Carrier::new(size)?,
    };
    NaryOp::new(carrier, arity, entries)
}

/// Serializes an operation in the table format, `size` entries per line.
pub fn serialize_optab(op: &NaryOp) -> String {
    let mut out = String::new();
    out.push_str("optab 1\n");
    out.push_str(&format!("arity {}\n", op.arity()));
    out.push_str(&format!("size {}\n", op.size()));
    if let Some(labels) = op.carrier().labels() {
        out.push_str(&format!("labels {}\n", labels.join(" ")));
    }
    out.push_str("table\n");
    for row in op.table().chunks(op.size()) {
        let toks: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the construction-spec format.
pub fn parse_construct(text: &str) -> Result<ConstructionSpec, Error> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next_line("`construct 1` header")?;
    if toks != ["construct", "1"] {
        return Err(Error::Parse {
            line,
            msg: "expected `construct 1` header".into(),
        });
    }
    let size = lines.keyword_value("size")?;
    let arity = lines.keyword_value("arity")?;
    table_len(size, arity)?;
    let (line, toks) = lines.next_line("`group <members>`")?;
    if toks.first() != Some(&"group") || toks.len() < 2 {
        return Err(Error::Parse {
            line,
            msg: "expected `group <members>`".into(),
        });
    }
    let mut members = Vec::with_capacity(toks.len() - 1);
    for tok in &toks[1..] {
        let v: usize = tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{tok}` is not a number"),
        })?;
        if v >= size {
            return Err(Error::Parse {
                line,
                msg: format!("group member {v} out of range 0..{size}"),
            });
        }
        members.push(v as Elem);
    }
    let k = members.len();
    let (line, toks) = lines.next_line("`grouptable`")?;
    if toks != ["grouptable"] {
        return Err(Error::Parse {
            line,
            msg: "expected `grouptable`".into(),
        });
    }
    let group_table = lines.numbers(k * k, k, "group table")?;
    let rest = size - k.min(size);
    let tail_table = if rest > 0 {
        let (line, toks) = lines.next_line("`rest`")?;
        if toks != ["rest"] {
            return Err(Error::Parse {
                line,
                msg: "expected `rest`".into(),
            });
        }
        lines.numbers(rest * rest, rest, "tail table")?
    } else {
        // an explicit empty `rest` section is permitted
        if let Some((_, toks)) = lines.peek() {
            if toks == &["rest"] {
                lines.next_line("`rest`")?;
            }
        }
        Vec::new()
    };
    lines.expect_end()?;
    Ok(ConstructionSpec {
        size,
        arity,
        members,
        group_table,
        tail_table,
    })
}

/// Serializes a construction spec.
pub fn serialize_construct(spec: &ConstructionSpec) -> String {
    let mut out = String::new();
    out.push_str("construct 1\n");
    out.push_str(&format!("size {}\n", spec.size));
    out.push_str(&format!("arity {}\n", spec.arity));
    let members: Vec<String> = spec.members.iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("group {}\n", members.join(" ")));
    out.push_str("grouptable\n");
    let k = spec.members.len();
    for row in spec.group_table.chunks(k.max(1)) {
        let toks: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    let rest = spec.size - k;
    if rest > 0 {
        out.push_str("rest\n");
        for row in spec.tail_table.chunks(rest) {
            let toks: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::fixture;

    #[test]
    fn parses_the_ternary_sum() {
        let text = "optab 1\narity 3\nsize 2\ntable\n0 1 1 0 1 0 0 1\n";
        let op = parse_optab(text).unwrap();
        assert_eq!(op.table(), &[0, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(op.arity(), 3);
    }

    #[test]
    fn accepts_comments_and_odd_whitespace() {
        let text = "# a semigroup\noptab 1\n arity 2\nsize 1\ntable # entries\n 0\n";
        let op = parse_optab(text).unwrap();
        assert_eq!(op.table(), &[0]);
    }

    #[test]
    fn round_trips_are_byte_identical() {
        for name in crate::construct::FIXTURE_NAMES {
            let op = fixture(name).unwrap();
            let text = serialize_optab(&op);
            let parsed = parse_optab(&text).unwrap();
            assert_eq!(parsed, op, "{name}");
            assert_eq!(serialize_optab(&parsed), text, "{name}");
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_header = "optab 2\narity 2\nsize 2\ntable\n0 0 0 0\n";
        assert!(matches!(
            parse_optab(bad_header),
            Err(Error::Parse { line: 1, .. })
        ));
        let bad_count = "optab 1\narity 2\nsize 2\ntable\n0 0 0\n";
        assert!(matches!(parse_optab(bad_count), Err(Error::Parse { .. })));
        let out_of_range = "optab 1\narity 2\nsize 2\ntable\n0 0 0 2\n";
        assert!(matches!(
            parse_optab(out_of_range),
            Err(Error::Parse { line: 5, .. })
        ));
        let trailing = "optab 1\narity 2\nsize 1\ntable\n0\nmore\n";
        assert!(matches!(
            parse_optab(trailing),
            Err(Error::Parse { line: 6, .. })
        ));
        let not_a_number = "optab 1\narity x\nsize 2\ntable\n0 0 0 0\n";
        assert!(matches!(
            parse_optab(not_a_number),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn capacity_is_enforced_at_parse_time() {
        let huge = "optab 1\narity 30\nsize 10\ntable\n0\n";
        assert!(matches!(parse_optab(huge), Err(Error::Capacity(_))));
    }

    #[test]
    fn construct_round_trip() {
        let text = "construct 1\nsize 5\narity 4\ngroup 0 1 2\ngrouptable\n0 1 2\n1 2 0\n2 0 1\nrest\n0 1\n1 1\n";
        let spec = parse_construct(text).unwrap();
        assert_eq!(spec.members, vec![0, 1, 2]);
        assert_eq!(spec.tail_table, vec![0, 1, 1, 1]);
        assert_eq!(serialize_construct(&spec), text);
        let full = "construct 1\nsize 3\narity 4\ngroup 0 1 2\ngrouptable\n0 1 2\n1 2 0\n2 0 1\n";
        let spec = parse_construct(full).unwrap();
        assert!(spec.tail_table.is_empty());
    }

    #[test]
    fn construct_parse_errors() {
        let overlap = "construct 1\nsize 5\narity 4\ngroup 0 1 9\ngrouptable\n0 1 2\n1 2 0\n2 0 1\nrest\n0 1\n1 1\n";
        assert!(matches!(
            parse_construct(overlap),
            Err(Error::Parse { line: 4, .. })
        ));
        let missing = "construct 1\nsize 5\narity 4\ngroup 0 1 2\ngrouptable\n0 1 2\n";
        assert!(matches!(parse_construct(missing), Err(Error::Parse { .. })));
    }
}
