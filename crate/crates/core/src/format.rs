//! Plain-text formats for automata and partitions.
//!
//! ```text
//! aut 1
//! states 3
//! letters a b
//! a: 0 0 0
//! b: 0 2 1
//! ```
//!
//! Optional `initial q` and `final q ...` lines follow the transitions. `#`
//! starts a comment; blank lines are ignored. Partitions use
//! `partition 1`, `states n` and one `block q ...` line per non-singleton block.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::galois::Recognizer;
use crate::partition::Partition;

/// An automaton file, with the optional recognizer annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutFile {
    pub automaton: Automaton,
    pub initial: Option<usize>,
    pub finals: Option<Vec<usize>>,
}

impl AutFile {
    pub fn plain(automaton: Automaton) -> Self {
        Self {
            automaton,
            initial: None,
            finals: None,
        }
    }
}

impl From<Recognizer> for AutFile {
    fn from(r: Recognizer) -> Self {
        Self {
            automaton: r.automaton,
            initial: Some(r.initial),
            finals: Some(r.accepting),
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_state(token: &str, n: usize, line: usize) -> Result<usize> {
    let q: usize = token
        .parse()
        .map_err(|_| parse_error(line, format!("expected a state index, found `{token}`")))?;
    if q >= n {
        return Err(parse_error(line, format!("state {q} out of range 0..{n}")));
    }
    Ok(q)
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    last_line: usize,
) -> Result<(usize, Vec<&'a str>)> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| parse_error(last_line, format!("missing `{keyword}` line")))?;
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Err(parse_error(line, format!("expected `{keyword}`")));
    }
    Ok((line, tokens.collect()))
}

fn parse_count(tokens: &[&str], line: usize) -> Result<usize> {
    match tokens {
        [n] => n
            .parse()
            .map_err(|_| parse_error(line, format!("expected a count, found `{n}`"))),
        _ => Err(parse_error(line, "expected exactly one count")),
    }
}

pub fn parse_aut(text: &str) -> Result<AutFile> {
    let total = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (line, version) = expect_header(&mut lines, "aut", total)?;
    if version != ["1"] {
        return Err(parse_error(line, "unsupported version, expected `aut 1`"));
    }
    let (line, count) = expect_header(&mut lines, "states", total)?;
    let n = parse_count(&count, line)?;
    if n == 0 {
        return Err(parse_error(line, "an automaton needs at least one state"));
    }
    let (line, names) = expect_header(&mut lines, "letters", total)?;
    if names.is_empty() {
        return Err(parse_error(line, "at least one letter is required"));
    }
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    if index.len() != names.len() {
        return Err(parse_error(line, "duplicate letter"));
    }
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; names.len()];
    let mut initial = None;
    let mut finals = None;
    for (line, text) in lines {
        if let Some((token, images)) = text.split_once(':') {
            if initial.is_some() || finals.is_some() {
                return Err(parse_error(line, "transitions must precede initial/final"));
            }
            let x = *index
                .get(token.trim())
                .ok_or_else(|| parse_error(line, format!("unknown letter `{}`", token.trim())))?;
            if rows[x].is_some() {
                return Err(parse_error(line, format!("letter `{}` defined twice", names[x])));
            }
            let images: Vec<usize> = images
                .split_whitespace()
                .map(|t| parse_state(t, n, line))
                .collect::<Result<_>>()?;
            if images.len() != n {
                return Err(parse_error(
                    line,
                    format!("expected {n} images, found {}", images.len()),
                ));
            }
            rows[x] = Some(images);
            continue;
        }
        let mut tokens = text.split_whitespace();
        match tokens.next() {
            Some("initial") => {
                if initial.is_some() {
                    return Err(parse_error(line, "duplicate `initial` line"));
                }
                let rest: Vec<&str> = tokens.collect();
                let [q] = rest[..] else {
                    return Err(parse_error(line, "expected one initial state"));
                };
                initial = Some(parse_state(q, n, line)?);
            }
            Some("final") => {
                if finals.is_some() {
                    return Err(parse_error(line, "duplicate `final` line"));
                }
                let mut states: Vec<usize> =
                    tokens.map(|t| parse_state(t, n, line)).collect::<Result<_>>()?;
                states.sort_unstable();
                states.dedup();
                finals = Some(states);
            }
            _ => return Err(parse_error(line, format!("unexpected line `{text}`"))),
        }
    }
    let rows: Vec<Vec<usize>> = rows
        .into_iter()
        .enumerate()
        .map(|(x, row)| row.ok_or_else(|| parse_error(total, format!("missing transitions for `{}`", names[x]))))
        .collect::<Result<_>>()?;
    let automaton = Automaton::new(n, names.iter().map(|t| t.to_string()).collect(), rows)
        .map_err(|e| parse_error(total, e.to_string()))?;
    Ok(AutFile {
        automaton,
        initial,
        finals,
    })
}

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn print_aut(file: &AutFile) -> String {
    let a = &file.automaton;
    let mut out = String::new();
    writeln!(out, "aut 1").unwrap();
    writeln!(out, "states {}", a.states()).unwrap();
    writeln!(out, "letters {}", a.letter_names().join(" ")).unwrap();
    for (x, name) in a.letter_names().iter().enumerate() {
        writeln!(out, "{name}: {}", join(a.letter(x).images())).unwrap();
    }
    if let Some(q) = file.initial {
        writeln!(out, "initial {q}").unwrap();
    }
    if let Some(finals) = &file.finals {
        if finals.is_empty() {
            writeln!(out, "final").unwrap();
        } else {
            writeln!(out, "final {}", join(finals.iter().copied())).unwrap();
        }
    }
    out
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let total = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (line, version) = expect_header(&mut lines, "partition", total)?;
    if version != ["1"] {
        return Err(parse_error(line, "unsupported version, expected `partition 1`"));
    }
    let (line, count) = expect_header(&mut lines, "states", total)?;
    let n = parse_count(&count, line)?;
    let mut blocks = Vec::new();
    for (line, text) in lines {
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some("block") {
            return Err(parse_error(line, "expected `block`"));
        }
        let block: Vec<usize> = tokens.map(|t| parse_state(t, n, line)).collect::<Result<_>>()?;
        if block.is_empty() {
            return Err(parse_error(line, "empty block"));
        }
        blocks.push(block);
    }
    Partition::from_blocks(n, &blocks).map_err(|e| parse_error(total, e.to_string()))
}

pub fn print_partition(p: &Partition) -> String {
    let mut out = format!("partition 1\nstates {}\n", p.len());
    for block in p.blocks().into_iter().filter(|b| b.len() > 1) {
        writeln!(out, "block {}", join(block.into_iter())).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{modcerny2, quasi3};

    const QUASI3: &str = "aut 1\nstates 3\nletters a b\na: 0 0 0\nb: 0 2 1\n";

    #[test]
    fn prints_canonical_text() {
        assert_eq!(print_aut(&AutFile::plain(quasi3())), QUASI3);
    }

    #[test]
    fn round_trips() {
        let parsed = parse_aut(QUASI3).unwrap();
        assert_eq!(parsed.automaton, quasi3());
        assert_eq!(print_aut(&parsed), QUASI3);
        let file = AutFile {
            automaton: modcerny2(),
            initial: Some(2),
            finals: Some(vec![0, 3]),
        };
        let text = print_aut(&file);
        assert_eq!(parse_aut(&text).unwrap(), file);
        assert!(text.ends_with("initial 2\nfinal 0 3\n"));
    }

    #[test]
    fn ignores_comments_and_blank_lines() {
        let text = "# header\naut 1\n\nstates 3 # three\nletters a b\nb: 0 2 1\na: 0 0 0\n";
        assert_eq!(parse_aut(text).unwrap().automaton, quasi3());
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("aut 2\n", 1),
            ("aut 1\nstates x\n", 2),
            ("aut 1\nstates 2\nletters a\na: 0 5\n", 4),
            ("aut 1\nstates 2\nletters a\na: 0 1\na: 0 1\n", 5),
            ("aut 1\nstates 2\nletters a\nb: 0 1\n", 4),
            ("aut 1\nstates 2\nletters a a\n", 3),
            ("aut 1\nstates 2\nletters a\na: 0\n", 4),
        ];
        for (text, line) in cases {
            match parse_aut(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(
            parse_aut("aut 1\nstates 2\nletters a b\na: 0 1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn partitions_round_trip() {
        let p = Partition::from_blocks(5, &[vec![3, 1], vec![0, 4]]).unwrap();
        let text = print_partition(&p);
        assert_eq!(text, "partition 1\nstates 5\nblock 0 4\nblock 1 3\n");
        assert_eq!(parse_partition(&text).unwrap(), p);
        assert!(parse_partition("partition 1\nstates 3\nblock 0 0\n").is_err());
        assert!(parse_partition("partition 1\nstates 3\nfoo\n").is_err());
    }
}
