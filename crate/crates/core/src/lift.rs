//! Lifting a reset word of a quotient `a / s` to a reset word of `a`.

use crate::automaton::{Automaton, StateSet, Word};
use crate::congruence::{quotient, Congruence};
use crate::error::{Error, Result};
use crate::sync::{greedy_collapse, is_synchronizing, shortest_merging_word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedWord {
    pub word: Word,
    /// Whether the input word was short enough for the length bound to be asserted.
    pub bound_applies: bool,
}

struct Prepared {
    quotient: Automaton,
    class_map: Vec<usize>,
    /// quotient state reached by `u`
    landing: usize,
}

fn prepare(a: &Automaton, s: &Congruence, u: &Word) -> Result<Prepared> {
    if s.len() != a.states() {
        return Err(Error::SizeMismatch {
            expected: a.states(),
            found: s.len(),
        });
    }
    if !s.is_nontrivial() {
        return Err(Error::Precondition(
            "congruence must differ from the identity and universal relations".into(),
        ));
    }
    if !is_synchronizing(a) {
        return Err(Error::NotSynchronizing);
    }
    let (qa, class_map) = quotient(a, s)?;
    let image = a.apply(&StateSet::full(a.states()), u)?;
    let mut landing = None;
    for q in image.iter() {
        match landing {
            None => landing = Some(class_map[q]),
            Some(c) if c != class_map[q] => {
                return Err(Error::Precondition(
                    "word does not reset the quotient".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(Prepared {
        quotient: qa,
        class_map,
        landing: landing.expect("image of a nonempty set is nonempty"),
    })
}

/// Quotient states whose block has the given size.
fn classes_of_size(p: &Prepared, size: usize) -> StateSet {
    let mut counts = vec![0usize; p.quotient.states()];
    for &c in &p.class_map {
        counts[c] += 1;
    }
    StateSet::from_states(
        p.quotient.states(),
        (0..counts.len()).filter(|&c| counts[c] == size),
    )
}

/// Lift through a congruence with a block of one or two states.
///
/// With a singleton block the quotient path into it already resets `a`; with only
/// doubleton blocks the remaining pair is merged by a shortest merging word.
pub fn lift_reset_word_small_class(a: &Automaton, s: &Congruence, u: &Word) -> Result<LiftedWord> {
    if !a.is_strongly_connected() {
        return Err(Error::Precondition("automaton must be strongly connected".into()));
    }
    let p = prepare(a, s, u)?;
    let n = a.states();
    let m = p.quotient.states();
    let singles = classes_of_size(&p, 1);
    let doubles = classes_of_size(&p, 2);
    let targets = if !singles.is_empty() {
        singles
    } else if !doubles.is_empty() {
        doubles
    } else {
        return Err(Error::Precondition(
            "congruence has no block of size one or two".into(),
        ));
    };
    let path = p
        .quotient
        .path_to(p.landing, &targets)
        .expect("strongly connected quotient");
    let mut word = u.concat(&path);
    let image = a.apply(&StateSet::full(n), &word)?;
    if image.len() > 1 {
        let merge = shortest_merging_word(a, &image).ok_or(Error::NotSynchronizing)?;
        word.extend(&merge);
    }
    debug_assert!(a.is_reset_word(&word)?);
    let bound_applies = u.len() <= (m - 1) * (m - 1);
    if bound_applies {
        assert!(
            word.len() < (n - 1) * (n - 1),
            "lifted word of length {} breaks the (n-1)^2 bound for n = {n}",
            word.len()
        );
    }
    Ok(LiftedWord {
        word,
        bound_applies,
    })
}

/// `6 m^2` times the length bound for the general lift, kept in integers.
pub fn general_lift_bound_scaled(n: usize, m: usize) -> i128 {
    let (n, m) = (n as i128, m as i128);
    let d = n - m;
    6 * n * n - 6 * n * m + m * m * (n * n * n - n) - m * m * (d * d * d + 3 * d * d + 2 * d)
}

/// Lift through a congruence whose smallest block has `m >= 3` states.
///
/// Navigates into a smallest block and collapses it greedily.
pub fn lift_reset_word_general(a: &Automaton, s: &Congruence, u: &Word) -> Result<LiftedWord> {
    let p = prepare(a, s, u)?;
    let n = a.states();
    let m = s.min_block_size();
    if m < 3 {
        return Err(Error::Precondition(format!(
            "smallest block has {m} states; at least 3 are required"
        )));
    }
    let targets = classes_of_size(&p, m);
    let path = p.quotient.path_to(p.landing, &targets).ok_or_else(|| {
        Error::Precondition("no smallest block is reachable after the word".into())
    })?;
    let mut word = u.concat(&path);
    let image = a.apply(&StateSet::full(n), &word)?;
    word.extend(&greedy_collapse(a, &image)?);
    debug_assert!(a.is_reset_word(&word)?);
    let bound_applies = (m * m * u.len()) as u128 <= ((n - m) * (n - m)) as u128;
    if bound_applies {
        let scaled = 6 * (m * m) as i128 * word.len() as i128;
        assert!(
            scaled <= general_lift_bound_scaled(n, m),
            "lifted word of length {} breaks the general bound for n = {n}, m = {m}",
            word.len()
        );
    }
    Ok(LiftedWord {
        word,
        bound_applies,
    })
}
