//! Complete deterministic automata, words and state sets.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// A word over an automaton's alphabet, stored as letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// A subset of the states of an `n`-state automaton.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet(FixedBitSet);

impl StateSet {
    pub fn empty(n: usize) -> Self {
        Self(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self(bits)
    }

    pub fn from_states(n: usize, states: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n);
        for q in states {
            set.insert(q);
        }
        set
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, q: usize) {
        self.0.insert(q);
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0.contains(q)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Image under a single transformation.
    pub fn image(&self, t: &Transformation) -> StateSet {
        let mut out = Self::empty(self.width());
        for q in self.iter() {
            out.insert(t.image(q));
        }
        out
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A complete deterministic automaton on states `0..n`.
///
/// Each letter is stored as the transformation it induces on the states.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automaton {
    n: usize,
    letters: Vec<String>,
    delta: Vec<Transformation>,
}

fn valid_token(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| !c.is_whitespace() && c != ':' && c != '#' && c != '|')
}

impl Automaton {
    /// Builds an automaton from letter tokens and one row of `n` targets per letter.
    pub fn new(n: usize, letters: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if letters.is_empty() {
            return Err(Error::InvalidAutomaton("empty alphabet".into()));
        }
        if letters.len() != rows.len() {
            return Err(Error::InvalidAutomaton(format!(
                "{} letters but {} transition rows",
                letters.len(),
                rows.len()
            )));
        }
        let mut seen = HashSet::new();
        for token in &letters {
            if !valid_token(token) {
                return Err(Error::InvalidAutomaton(format!("bad letter token `{token}`")));
            }
            if !seen.insert(token.as_str()) {
                return Err(Error::InvalidAutomaton(format!("duplicate letter `{token}`")));
            }
        }
        let mut delta = Vec::with_capacity(rows.len());
        for (token, row) in letters.iter().zip(rows) {
            if row.len() != n {
                return Err(Error::InvalidAutomaton(format!(
                    "letter `{token}` has {} entries, expected {n}",
                    row.len()
                )));
            }
            delta.push(Transformation::new(row)?);
        }
        Ok(Self { n, letters, delta })
    }

    /// Convenience constructor for literal tables.
    pub fn from_table(letters: &[&str], rows: &[&[usize]]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        Self::new(
            n,
            letters.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
    }

    /// Default letter names: `a`, `b`, ..., `z`, then `x26`, `x27`, ...
    pub fn default_letter_names(k: usize) -> Vec<String> {
        (0..k)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("x{i}")
                }
            })
            .collect()
    }

    pub fn states(&self) -> usize {
        self.n
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letter_names(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, x: usize) -> &Transformation {
        &self.delta[x]
    }

    pub fn letter_transformations(&self) -> &[Transformation] {
        &self.delta
    }

    pub fn letter_index(&self, token: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == token)
    }

    #[inline]
    pub fn step(&self, q: usize, x: usize) -> usize {
        self.delta[x].image(q)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&x| x >= self.num_letters()) {
            Some(&index) => Err(Error::InvalidWord {
                index,
                letters: self.num_letters(),
            }),
            None => Ok(()),
        }
    }

    /// `q . w`
    pub fn run(&self, q: usize, w: &Word) -> Result<usize> {
        self.check_word(w)?;
        Ok(w.letters().iter().fold(q, |p, &x| self.step(p, x)))
    }

    /// `s . w = { q . w : q in s }`
    pub fn apply(&self, s: &StateSet, w: &Word) -> Result<StateSet> {
        self.check_word(w)?;
        if s.width() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: s.width(),
            });
        }
        let mut cur = s.clone();
        for &x in w.letters() {
            cur = cur.image(&self.delta[x]);
        }
        Ok(cur)
    }

    /// The transformation `pi(w)` induced by a word.
    pub fn transformation_of(&self, w: &Word) -> Result<Transformation> {
        self.check_word(w)?;
        let mut t = Transformation::identity(self.n);
        for &x in w.letters() {
            t = t.then(&self.delta[x]);
        }
        Ok(t)
    }

    pub fn is_reset_word(&self, w: &Word) -> Result<bool> {
        Ok(self.transformation_of(w)?.rank() == 1)
    }

    /// Every state reaches every other state in the letter digraph.
    pub fn is_strongly_connected(&self) -> bool {
        let forward = self.reachable_from(0, false);
        let backward = self.reachable_from(0, true);
        forward.iter().all(|&b| b) && backward.iter().all(|&b| b)
    }

    fn reachable_from(&self, start: usize, reverse: bool) -> Vec<bool> {
        let mut preds = vec![Vec::new(); self.n];
        if reverse {
            for t in &self.delta {
                for q in 0..self.n {
                    preds[t.image(q)].push(q);
                }
            }
        }
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(q) = queue.pop_front() {
            let next: Vec<usize> = if reverse {
                preds[q].clone()
            } else {
                self.delta.iter().map(|t| t.image(q)).collect()
            };
            for p in next {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Shortest word leading from `from` into any state of `targets` (letters tried in order).
    pub fn path_to(&self, from: usize, targets: &StateSet) -> Option<Word> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            if targets.contains(q) {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((prev, x)) = parent[cur] {
                    letters.push(x);
                    cur = prev;
                }
                letters.reverse();
                return Some(Word::new(letters));
            }
            for x in 0..self.num_letters() {
                let p = self.step(q, x);
                if !seen[p] {
                    seen[p] = true;
                    parent[p] = Some((q, x));
                    queue.push_back(p);
                }
            }
        }
        None
    }

    /// Renders a word with this automaton's letter tokens.
    ///
    /// Single-character alphabets are concatenated, otherwise tokens are space separated.
    /// The empty word renders as `ε`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        let single = self.letters.iter().all(|l| l.chars().count() == 1);
        let tokens = w.letters().iter().map(|&x| self.letters[x].as_str());
        if single {
            tokens.collect()
        } else {
            tokens.collect::<Vec<_>>().join(" ")
        }
    }

    /// Inverse of [`Automaton::format_word`]. Whitespace between single-character letters is ignored.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let single = self.letters.iter().all(|l| l.chars().count() == 1);
        let mut letters = Vec::new();
        if single {
            for c in text.chars().filter(|c| !c.is_whitespace()) {
                let token = c.to_string();
                letters.push(
                    self.letter_index(&token)
                        .ok_or(Error::UnknownLetter(token))?,
                );
            }
        } else {
            for token in text.split_whitespace() {
                letters.push(
                    self.letter_index(token)
                        .ok_or_else(|| Error::UnknownLetter(token.to_string()))?,
                );
            }
        }
        Ok(Word::new(letters))
    }
}

impl fmt::Debug for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Automaton");
        d.field("states", &self.n);
        for (name, t) in self.letters.iter().zip(&self.delta) {
            d.field(name, t);
        }
        d.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain4() -> Automaton {
        Automaton::from_table(&["a"], &[&[0, 0, 1, 2]]).unwrap()
    }

    #[test]
    fn apply_follows_the_word() {
        let a = chain4();
        let all = StateSet::full(4);
        let w = a.parse_word("aaa").unwrap();
        let img = a.apply(&all, &w).unwrap();
        assert_eq!(img.iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(a.apply(&all, &Word::empty()).unwrap(), all);
    }

    #[test]
    fn invalid_word_is_rejected() {
        let a = chain4();
        let err = a.apply(&StateSet::full(4), &Word::new(vec![0, 1])).unwrap_err();
        assert_eq!(err, Error::InvalidWord { index: 1, letters: 1 });
        assert!(matches!(a.parse_word("ab"), Err(Error::UnknownLetter(_))));
    }

    #[test]
    fn strong_connectivity() {
        assert!(!chain4().is_strongly_connected());
        let cycle = Automaton::from_table(&["a"], &[&[1, 2, 0]]).unwrap();
        assert!(cycle.is_strongly_connected());
        let single = Automaton::from_table(&["a"], &[&[0]]).unwrap();
        assert!(single.is_strongly_connected());
    }

    #[test]
    fn construction_validates_tables() {
        assert!(Automaton::from_table(&["a"], &[&[0, 2]]).is_err());
        assert!(Automaton::from_table(&["a", "a"], &[&[0, 1], &[1, 0]]).is_err());
        assert!(Automaton::from_table(&["a b"], &[&[0]]).is_err());
        assert!(Automaton::new(2, vec!["a".into()], vec![vec![0]]).is_err());
    }

    #[test]
    fn word_formatting_round_trips() {
        let a = Automaton::from_table(&["a", "b"], &[&[1, 0], &[0, 0]]).unwrap();
        let w = a.parse_word("abba").unwrap();
        assert_eq!(a.format_word(&w), "abba");
        assert_eq!(a.format_word(&Word::empty()), "ε");
        let long = Automaton::from_table(&["up", "down"], &[&[1, 0], &[0, 0]]).unwrap();
        let w = long.parse_word("up down up").unwrap();
        assert_eq!(w.letters(), &[0, 1, 0]);
        assert_eq!(long.format_word(&w), "up down up");
    }
}
