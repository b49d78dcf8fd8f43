//! Named example automata, parametric families and a seeded random generator.
//!
//! The random generator is ChaCha8 seeded with `seed_from_u64`; each transition
//! entry is drawn in letter-major, state-minor order with `gen_range(0..n)` over
//! `u32`, so a given `(n, k, seed)` yields the same table on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::sync::is_synchronizing;

/// Cyclic shift `a` plus a letter `b` sending `0` to `1` and fixing the rest.
pub fn cerny(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::Precondition("cerny needs at least 2 states".into()));
    }
    let a: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let b: Vec<usize> = (0..n).map(|i| if i == 0 { 1 } else { i }).collect();
    Automaton::from_table(&["a", "b"], &[&a, &b])
}

/// One letter moving every state down by one, with `0` fixed.
pub fn chain(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::Precondition("chain needs at least 2 states".into()));
    }
    let a: Vec<usize> = (0..n).map(|i| i.saturating_sub(1)).collect();
    Automaton::from_table(&["a"], &[&a])
}

/// `copies` stacked Černý automata on `n` states each; `c` moves copy `j` down to copy `j - 1`.
pub fn cerny_tower(n: usize, copies: usize) -> Result<Automaton> {
    if n < 2 || copies < 1 {
        return Err(Error::Precondition(
            "cerny_tower needs n >= 2 and at least one copy".into(),
        ));
    }
    let total = n * copies;
    let a: Vec<usize> = (0..total).map(|q| q / n * n + (q % n + 1) % n).collect();
    let b: Vec<usize> = (0..total)
        .map(|q| if q % n == 0 { q + 1 } else { q })
        .collect();
    let c: Vec<usize> = (0..total).map(|q| if q < n { q } else { q - n }).collect();
    Automaton::from_table(&["a", "b", "c"], &[&a, &b, &c])
}

/// Two 4-state Černý cycles; `c` folds the second onto the first.
pub fn double_cerny() -> Automaton {
    Automaton::from_table(
        &["a", "b", "c"],
        &[
            &[1, 2, 3, 0, 5, 6, 7, 4],
            &[0, 1, 2, 0, 4, 5, 6, 4],
            &[0, 1, 2, 3, 0, 1, 2, 3],
        ],
    )
    .expect("valid table")
}

/// Four states with a unique non-trivial congruence `{0,1}{2}{3}` whose quotient is Černý on 3 states.
pub fn modcerny1() -> Automaton {
    Automaton::from_table(
        &["a", "b", "c"],
        &[&[2, 2, 3, 1], &[0, 0, 2, 1], &[1, 0, 2, 3]],
    )
    .expect("valid table")
}

/// `modcerny1` with an extra letter `d` whose image is `{0,1}`.
pub fn modcerny2() -> Automaton {
    Automaton::from_table(
        &["a", "b", "c", "d"],
        &[&[2, 2, 3, 1], &[0, 0, 2, 1], &[1, 0, 2, 3], &[1, 0, 1, 1]],
    )
    .expect("valid table")
}

/// Three states: a constant letter and a swap of the last two states.
pub fn quasi3() -> Automaton {
    Automaton::from_table(&["a", "b"], &[&[0, 0, 0], &[0, 2, 1]]).expect("valid table")
}

/// Uniformly random complete automaton with letters `a, b, c, ...`.
pub fn random_automaton(n: usize, k: usize, seed: u64) -> Result<Automaton> {
    if n < 1 || k < 1 {
        return Err(Error::Precondition(
            "random automata need at least one state and one letter".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| rng.gen_range(0..n as u32) as usize)
                .collect()
        })
        .collect();
    Automaton::new(n, Automaton::default_letter_names(k), rows)
}

/// One member of a seeded random population.
#[derive(Clone, Debug)]
pub struct Specimen {
    pub index: usize,
    pub states: usize,
    pub letters: usize,
    pub seed: u64,
    pub automaton: Automaton,
}

/// `count` synchronizing automata with `2 <= n <= max_states` and `1 <= k <= max_letters`.
///
/// A master generator seeded with `seed` draws `(n, k, inner seed)` triples;
/// non-synchronizing draws are skipped.
pub fn random_synchronizing_population(
    count: usize,
    max_states: usize,
    max_letters: usize,
    seed: u64,
) -> Result<Vec<Specimen>> {
    if max_states < 2 || max_letters < 1 {
        return Err(Error::Precondition(
            "population needs max_states >= 2 and max_letters >= 1".into(),
        ));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = master.gen_range(2..=max_states as u32) as usize;
        let k = master.gen_range(1..=max_letters as u32) as usize;
        let inner: u64 = master.gen();
        let automaton = random_automaton(n, k, inner)?;
        if is_synchronizing(&automaton) {
            out.push(Specimen {
                index: out.len(),
                states: n,
                letters: k,
                seed: inner,
                automaton,
            });
        }
    }
    Ok(out)
}

/// Checkable statements attached to corpus entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    /// Category name as printed in reports.
    Class(&'static str),
    ShortestResetLength(usize),
    Semisimple(bool),
    MonoidSize(usize),
    NilpotencyIndex(usize),
    LatticeSize(usize),
    AtomCount(usize),
    /// The word, in letter tokens, is a reset word.
    Resets(&'static str),
    /// The word induces an element of `Rad \ Syn`.
    RadicalNonReset(&'static str),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub automaton: Automaton,
    pub provenance: &'static str,
    pub expected_facts: Vec<Fact>,
}

/// The fixed regression corpus.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let mut facts = vec![
            Fact::ShortestResetLength((n - 1) * (n - 1)),
            Fact::Semisimple(true),
        ];
        if n >= 3 {
            facts.push(Fact::Class("simple"));
        }
        out.push(CorpusEntry {
            name: format!("cerny{n}"),
            automaton: cerny(n).expect("n >= 2"),
            provenance: "Černý family: cyclic shift plus one merging letter",
            expected_facts: facts,
        });
    }
    for n in 2..=7 {
        let mut facts = vec![
            Fact::ShortestResetLength(n - 1),
            Fact::MonoidSize(n),
            Fact::NilpotencyIndex(n - 1),
            Fact::LatticeSize(n),
        ];
        if n == 2 {
            facts.push(Fact::Class("simple"));
        } else {
            facts.push(Fact::Semisimple(false));
            facts.push(Fact::RadicalNonReset("a"));
        }
        out.push(CorpusEntry {
            name: format!("chain{n}"),
            automaton: chain(n).expect("n >= 2"),
            provenance: "unary chain attaining the nilpotency height bound",
            expected_facts: facts,
        });
    }
    out.push(CorpusEntry {
        name: "double_cerny".into(),
        automaton: double_cerny(),
        provenance: "two Černý cycles folded by a third letter",
        expected_facts: vec![
            Fact::Resets("baaabaaabc"),
            Fact::Semisimple(true),
            Fact::Class("semisimple-other"),
        ],
    });
    out.push(CorpusEntry {
        name: "modcerny1".into(),
        automaton: modcerny1(),
        provenance: "non-semisimple automaton whose unique atom has a Černý quotient",
        expected_facts: vec![
            Fact::RadicalNonReset("baab"),
            Fact::Semisimple(false),
            Fact::AtomCount(1),
            Fact::Class("non-semisimple-other"),
        ],
    });
    out.push(CorpusEntry {
        name: "modcerny2".into(),
        automaton: modcerny2(),
        provenance: "radical automaton obtained by adding a letter with image {0,1}",
        expected_facts: vec![Fact::Semisimple(false), Fact::Class("radical")],
    });
    out.push(CorpusEntry {
        name: "quasi3".into(),
        automaton: quasi3(),
        provenance: "smallest quasi-simple automaton: one constant and one swap",
        expected_facts: vec![
            Fact::MonoidSize(3),
            Fact::Semisimple(true),
            Fact::Class("quasi-simple"),
        ],
    });
    out.push(CorpusEntry {
        name: "tower3x3".into(),
        automaton: cerny_tower(3, 3).expect("valid parameters"),
        provenance: "three stacked copies of Černý on 3 states",
        expected_facts: vec![],
    });
    out
}

/// Whether the automata are equal up to renaming states (letters matched by position).
pub fn is_isomorphic(a: &Automaton, b: &Automaton) -> bool {
    let n = a.states();
    if n != b.states() || a.num_letters() != b.num_letters() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..a.num_letters())
            .all(|x| (0..n).all(|q| perm[a.step(q, x)] == b.step(perm[q], x)));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sync::shortest_reset_word;

    #[test]
    fn families_reject_small_sizes() {
        assert!(cerny(1).is_err());
        assert!(chain(1).is_err());
        assert!(random_automaton(0, 1, 0).is_err());
    }

    #[test]
    fn chain_four_table() {
        assert_eq!(chain(4).unwrap().letter(0).images().collect::<Vec<_>>(), [0, 0, 1, 2]);
    }

    #[test]
    fn cerny_two_resets_in_one() {
        assert_eq!(shortest_reset_word(&cerny(2).unwrap(), 1 << 20).unwrap().len(), 1);
    }

    #[test]
    fn random_generator_is_reproducible() {
        let x = random_automaton(7, 3, 42).unwrap();
        let y = random_automaton(7, 3, 42).unwrap();
        assert_eq!(x, y);
        assert_ne!(x, random_automaton(7, 3, 43).unwrap());
        assert_eq!(random_automaton(1, 2, 5).unwrap().states(), 1);
        assert_eq!(x.letter_names(), ["a", "b", "c"]);
    }

    #[test]
    fn population_is_synchronizing_and_stable() {
        let p = random_synchronizing_population(20, 5, 2, 7).unwrap();
        let q = random_synchronizing_population(20, 5, 2, 7).unwrap();
        assert_eq!(p.len(), 20);
        for (s, t) in p.iter().zip(&q) {
            assert_eq!(s.automaton, t.automaton);
            assert!(is_synchronizing(&s.automaton));
            assert!((2..=5).contains(&s.states));
        }
    }

    #[test]
    fn double_cerny_is_a_tower() {
        assert!(is_isomorphic(&double_cerny(), &cerny_tower(4, 2).unwrap()));
        assert!(!is_isomorphic(&modcerny1(), &modcerny2()));
    }

    #[test]
    fn permutations_are_exhausted() {
        let mut p = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
