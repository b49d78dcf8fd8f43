//! Flat `key = value` summaries, keys sorted.

use std::collections::BTreeMap;
use std::fmt;

use crate::automaton::Automaton;
use crate::classify::{classify_with_limits, Category, Classification};
use crate::congruence::atoms;
use crate::error::{Error, Result};
use crate::galois::GaloisContext;
use crate::limits::Limits;
use crate::radical::{radical_oracle, shortest_radical_word};
use crate::sync::{greedy_reset_word, shortest_reset_word};

const NONE: &str = "none";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report(BTreeMap<&'static str, String>);

impl Report {
    pub fn set(&mut self, key: &'static str, value: impl ToString) {
        self.0.insert(key, value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.keys().copied()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.0 {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Classification keys only.
pub fn classification_report(c: &Classification) -> Report {
    let mut r = Report::default();
    r.set("class", c.category);
    r.set("strongly_connected", yes_no(c.strongly_connected));
    r.set("semisimple", c.semisimple.map_or(NONE, yes_no));
    r
}

/// Full summary: classification, monoid, radical, lattice and reset-word lengths.
pub fn analyze(a: &Automaton, limits: &Limits) -> Result<Report> {
    let class = classify_with_limits(a, limits)?;
    let mut r = classification_report(&class);
    let ctx = GaloisContext::with_limits(a, *limits)?;
    let m = ctx.monoid();
    let lattice = ctx.lattice()?;
    r.set("monoid_size", m.len());
    r.set("lattice_size", lattice.len());
    r.set("lattice_height", lattice.height());
    r.set(
        "atom_count",
        if a.states() < 2 { 0 } else { atoms(a)?.len() },
    );
    if class.category == Category::NotSynchronizing {
        r.set("syn_size", 0);
        for key in [
            "rad_size",
            "nilpotency_index",
            "shortest_reset_length",
            "shortest_radical_length",
            "greedy_reset_length",
        ] {
            r.set(key, NONE);
        }
        return Ok(r);
    }
    let radical = radical_oracle(m)?;
    r.set("syn_size", radical.syn.len());
    r.set("rad_size", radical.rad.len());
    r.set("nilpotency_index", radical.nilpotency_index);
    r.set(
        "shortest_radical_length",
        shortest_radical_word(m, &radical).map_or(0, |w| w.len()),
    );
    match shortest_reset_word(a, limits.max_subsets) {
        Ok(w) => r.set("shortest_reset_length", w.len()),
        Err(Error::CapExceeded { .. }) => r.set("shortest_reset_length", "capped"),
        Err(e) => return Err(e),
    }
    r.set("greedy_reset_length", greedy_reset_word(a)?.len());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cerny, quasi3};

    #[test]
    fn quasi3_report() {
        let r = analyze(&quasi3(), &Limits::default()).unwrap();
        assert_eq!(
            r.to_string(),
            "atom_count = 1\nclass = quasi-simple\ngreedy_reset_length = 1\nlattice_height = 3\n\
             lattice_size = 3\nmonoid_size = 3\nnilpotency_index = 1\nrad_size = 1\n\
             semisimple = true\nshortest_radical_length = 1\nshortest_reset_length = 1\n\
             strongly_connected = false\nsyn_size = 1\n"
        );
    }

    #[test]
    fn capped_reset_search() {
        let limits = Limits {
            max_subsets: 4,
            ..Limits::default()
        };
        let r = analyze(&cerny(4).unwrap(), &limits).unwrap();
        assert_eq!(r.get("shortest_reset_length"), Some("capped"));
        assert_eq!(r.get("greedy_reset_length").map(|v| v.parse::<usize>().is_ok()), Some(true));
    }

    #[test]
    fn non_synchronizing_report() {
        let perm = Automaton::from_table(&["a"], &[&[1, 0]]).unwrap();
        let r = analyze(&perm, &Limits::default()).unwrap();
        assert_eq!(r.get("class"), Some("not-synchronizing"));
        assert_eq!(r.get("semisimple"), Some("none"));
        assert_eq!(r.keys().count(), 13);
    }
}
