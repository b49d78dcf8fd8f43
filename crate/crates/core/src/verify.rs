//! Property sweeps over single automata and seeded random populations.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Automaton, Word};
use crate::check::CheckReport;
use crate::classify::{classify_with_limits, radical_structure_count, verify_min_congruence_syn, Category};
use crate::congruence::{atoms, quotient, Congruence};
use crate::corpus::{corpus, random_synchronizing_population};
use crate::error::{Error, Result};
use crate::galois::{
    annihilator_check, galois_check, ideal_language_recognizer, ideal_of_congruence,
    left_annihilator_check, rho_of_ideal, GaloisContext,
};
use crate::limits::Limits;
use crate::monoid::{induced_morphism, is_nilpotent_mod, syn_quotient_ideal, zero_minimal_ideals, TransitionMonoid};
use crate::radical::{radical_algorithm1_with_limits, radical_oracle, rho_chain_with_limits};
use crate::sync::{
    greedy_bound, greedy_reset_word, is_synchronizing, is_synchronizing_by_subsets,
    shortest_reset_word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Galois,
    Radical,
    Classify,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "galois" => Ok(Suite::Galois),
            "radical" => Ok(Suite::Radical),
            "classify" => Ok(Suite::Classify),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Galois => "galois",
            Suite::Radical => "radical",
            Suite::Classify => "classify",
            Suite::All => "all",
        })
    }
}

/// Uniform random words of length `0..=max_len`.
pub fn random_words(k: usize, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len as u32) as usize;
            Word::new(
                (0..len)
                    .map(|_| rng.gen_range(0..k as u32) as usize)
                    .collect(),
            )
        })
        .collect()
}

/// Recognizer acceptance agrees with membership of the word's element in `I(s)`.
pub fn recognizer_agreement(
    ctx: &GaloisContext,
    s: &Congruence,
    words: &[Word],
) -> Result<CheckReport> {
    let recognizer = ideal_language_recognizer(ctx, s)?;
    let ideal = ideal_of_congruence(ctx, s)?;
    let m = ctx.monoid();
    let mut report = CheckReport::new(format!("recognizer for {s}"));
    for w in words {
        let accepted = recognizer.accepts(w)?;
        let member = ideal.contains(m.element_of(w)?);
        report.record(accepted == member, || {
            format!("word {} accepted = {accepted}, member = {member}", ctx.automaton().format_word(w))
        });
    }
    Ok(report)
}

/// Principal ideals of the J-class representatives.
fn principal_ideals(m: &TransitionMonoid) -> Vec<crate::monoid::MonoidIdeal> {
    let j = m.jclasses();
    (0..j.count())
        .map(|c| m.ideal_closure([j.representative(c)]))
        .collect()
}

/// Connection laws, annihilators, the Syn-intersection law, atoms, antitonicity,
/// left annihilators (semisimple input) and recognizer agreement.
pub fn galois_suite(a: &Automaton, limits: &Limits, word_seed: u64) -> Result<CheckReport> {
    let ctx = GaloisContext::with_limits(a, *limits)?;
    let m = ctx.monoid();
    let lattice = ctx.lattice()?;
    let mut report = CheckReport::new("galois");
    report.absorb(galois_check(&ctx)?);

    let ideals: Vec<_> = lattice
        .elements()
        .iter()
        .map(|s| ideal_of_congruence(&ctx, s))
        .collect::<Result<_>>()?;
    let syn_q: Vec<_> = lattice
        .elements()
        .iter()
        .map(|s| syn_quotient_ideal(m, s))
        .collect::<Result<_>>()?;

    for s in lattice.elements() {
        report.absorb(annihilator_check(&ctx, s)?);
    }

    let mut law = CheckReport::new("Syn-intersection law");
    let mut anti = CheckReport::new("antitonicity");
    for (i, s) in lattice.elements().iter().enumerate() {
        for (j, t) in lattice.elements().iter().enumerate().skip(i) {
            let meet = s.meet(t)?;
            let k = lattice
                .index_of(&meet)
                .ok_or_else(|| Error::Precondition("lattice not closed under meet".into()))?;
            law.record(syn_q[k] == syn_q[i].intersection(&syn_q[j]), || {
                format!("Syn(a/({s} ∧ {t})) differs from the intersection")
            });
            if s.refines(t) {
                anti.record(ideals[j].is_subset(&ideals[i]), || {
                    format!("{s} ⊆ {t} but I({t}) ⊄ I({s})")
                });
            }
            if t.refines(s) {
                anti.record(ideals[i].is_subset(&ideals[j]), || {
                    format!("{t} ⊆ {s} but I({s}) ⊄ I({t})")
                });
            }
        }
    }
    let principals = principal_ideals(m);
    let rhos: Vec<Congruence> = principals
        .iter()
        .map(|j| rho_of_ideal(&ctx, j))
        .collect::<Result<_>>()?;
    for (x, jx) in principals.iter().enumerate() {
        for (y, jy) in principals.iter().enumerate() {
            if x != y && jx.is_subset(jy) {
                anti.record(rhos[y].refines(&rhos[x]), || {
                    format!("J ⊆ K but rho(K) = {} ⊄ rho(J) = {}", rhos[y], rhos[x])
                });
            }
        }
    }
    report.absorb(law);
    report.absorb(anti);

    let mut minimal = CheckReport::new("atoms are the minimal lattice elements");
    if a.states() >= 2 {
        let found = atoms(a)?;
        let expected = lattice.atoms();
        minimal.record(found == expected, || {
            format!("atom procedure gave {} congruences, lattice has {}", found.len(), expected.len())
        });
    }
    report.absorb(minimal);

    if is_synchronizing(a) {
        match left_annihilator_check(&ctx) {
            Ok(r) => report.absorb(r),
            Err(Error::NotSemisimple) => {}
            Err(e) => return Err(e),
        }
    }

    let words = random_words(a.num_letters(), 100, 2 * a.states() + 2, word_seed);
    for s in lattice.elements() {
        report.absorb(recognizer_agreement(&ctx, s, &words)?);
    }
    Ok(report)
}

/// Oracle/Algorithm 1 agreement, maximality, the height bound, the ρ-chain, and the
/// quotient laws for every congruence.
pub fn radical_suite(a: &Automaton, limits: &Limits) -> Result<CheckReport> {
    let mut report = CheckReport::new("radical");
    if !is_synchronizing(a) {
        report.note("not synchronizing; skipped");
        return Ok(report);
    }
    let ctx = GaloisContext::with_limits(a, *limits)?;
    let m = ctx.monoid();
    let oracle = radical_oracle(m)?;
    let alg = radical_algorithm1_with_limits(a, limits)?;
    report.record(oracle.rad == alg.rad, || {
        format!(
            "oracle has {} radical elements, algorithm 1 has {}",
            oracle.rad.len(),
            alg.rad.len()
        )
    });
    report.record(oracle.nilpotency_index == alg.nilpotency_index, || {
        "nilpotency indices differ".into()
    });

    let j = m.jclasses();
    for c in 0..j.count() {
        let rep = j.representative(c);
        if oracle.rad.contains(rep) {
            continue;
        }
        let ideal = m.ideal_closure([rep]);
        report.record(is_nilpotent_mod(m, &ideal, &oracle.syn)?.is_none(), || {
            format!("principal ideal of non-radical element {rep} is nilpotent")
        });
    }

    let lattice = ctx.lattice()?;
    let height = lattice.height();
    if a.states() >= 2 {
        report.record(oracle.nilpotency_index < height, || {
            format!("index {} exceeds height {height} - 1", oracle.nilpotency_index)
        });
    }
    let chain = rho_chain_with_limits(a, limits)?;
    report.record(chain.congruences.iter().all(|s| crate::congruence::is_congruence(a, s)), || {
        "rho-chain member is not a congruence".into()
    });

    let rho = rho_of_ideal(&ctx, &oracle.rad)?;
    for s in lattice.elements().iter().skip(1) {
        let phi = induced_morphism(m, a, s, limits.max_monoid)?;
        let quotient_rad = radical_oracle(&phi.target)?;
        let pulled = phi.pullback(&quotient_rad.rad);
        if phi.pullback(&quotient_rad.syn).is_subset(&oracle.rad) {
            report.record(pulled == oracle.rad, || {
                format!("Syn(a/{s}) ⊆ Rad but the pulled-back radical differs")
            });
        }
        if s.refines(&rho) {
            let i = ideal_of_congruence(&ctx, s)?;
            report.record(pulled.intersection(&i) == oracle.rad, || {
                format!("Rad != Rad(a/{s}) ∩ I({s})")
            });
        }
    }
    Ok(report)
}

/// Synchronization checks: pair criterion against subsets, greedy bound, exact ≤ greedy.
pub fn sync_suite(a: &Automaton, limits: &Limits) -> Result<CheckReport> {
    let mut report = CheckReport::new("synchronization");
    let pairs = is_synchronizing(a);
    match is_synchronizing_by_subsets(a, limits.max_subsets) {
        Ok(subsets) => report.record(pairs == subsets, || {
            format!("pair criterion says {pairs}, subset search says {subsets}")
        }),
        Err(Error::CapExceeded { .. }) => report.note("subset search capped"),
        Err(e) => return Err(e),
    }
    if !pairs {
        return Ok(report);
    }
    let greedy = greedy_reset_word(a)?;
    report.record(a.is_reset_word(&greedy)?, || "greedy word does not reset".into());
    report.record(greedy.len() <= greedy_bound(a.states()), || {
        format!("greedy length {} exceeds {}", greedy.len(), greedy_bound(a.states()))
    });
    match shortest_reset_word(a, limits.max_subsets) {
        Ok(exact) => report.record(exact.len() <= greedy.len(), || {
            format!("exact {} longer than greedy {}", exact.len(), greedy.len())
        }),
        Err(Error::CapExceeded { .. }) => report.note("exact search capped"),
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// Category containments, structure theorems, the semisimple-meet corollary,
/// the 0-minimal lemma and the synchronization checks.
pub fn classify_suite(a: &Automaton, limits: &Limits) -> Result<CheckReport> {
    let mut report = CheckReport::new("classify");
    report.absorb(sync_suite(a, limits)?);
    let class = classify_with_limits(a, limits)?;
    if class.category == Category::NotSynchronizing {
        return Ok(report);
    }
    let semisimple = class.semisimple == Some(true);
    match class.category {
        Category::Simple | Category::QuasiSimple => {
            report.record(semisimple, || format!("{} automaton is not semisimple", class.category));
            if a.states() >= 2 {
                report.record(class.evidence.zero_minimal_over_syn == Some(1), || {
                    format!("{:?} 0-minimal ideals over Syn", class.evidence.zero_minimal_over_syn)
                });
            }
        }
        Category::Radical => {
            report.record(!semisimple, || "radical automaton is semisimple".into());
            // not a sweep invariant: it fails whenever Syn(a/s) lies inside Rad
            let count = radical_structure_count(a)?;
            report.record(count <= 1, || format!("{count} qualifying 0-minimal ideals"));
            if count != 1 {
                report.note(format!("radical structure: {count} qualifying 0-minimal ideals"));
            }
        }
        _ => {}
    }

    let ctx = GaloisContext::with_limits(a, *limits)?;
    let m = ctx.monoid();
    let lattice = ctx.lattice()?;
    let quotient_semisimple: Vec<bool> = lattice
        .elements()
        .iter()
        .map(|s| {
            let (qa, _) = quotient(a, s)?;
            let qm = TransitionMonoid::enumerate(&qa, limits.max_monoid)?;
            Ok(radical_oracle(&qm)?.is_semisimple())
        })
        .collect::<Result<_>>()?;
    let elements = lattice.elements();
    for i in 0..elements.len() {
        for j in i..elements.len() {
            if quotient_semisimple[i] && quotient_semisimple[j] && elements[i].meet(&elements[j])?.is_discrete() {
                report.record(semisimple, || {
                    format!("{} and {} have semisimple quotients and meet at Δ", elements[i], elements[j])
                });
            }
        }
    }

    if !semisimple {
        let rad = radical_oracle(m)?.rad;
        if rad.len() < m.len() {
            let zm = zero_minimal_ideals(m, &rad)?;
            for x in 0..zm.len() {
                for y in x + 1..zm.len() {
                    let r1 = rho_of_ideal(&ctx, &zm[x].union(&rad))?;
                    let r2 = rho_of_ideal(&ctx, &zm[y].union(&rad))?;
                    report.record(r1.is_nontrivial() || r2.is_nontrivial(), || {
                        format!("two 0-minimal ideals over Rad with trivial rho: {r1} and {r2}")
                    });
                }
            }
        }
    }

    match verify_min_congruence_syn(a) {
        Ok(r) => {
            report.note("minimum-congruence Syn check applied");
            report.absorb(r);
        }
        Err(Error::Precondition(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// Runs the selected suite on one automaton.
pub fn verify_automaton(a: &Automaton, suite: Suite, limits: &Limits, word_seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new(suite.to_string());
    if matches!(suite, Suite::Galois | Suite::All) {
        report.absorb(galois_suite(a, limits, word_seed)?);
    }
    if matches!(suite, Suite::Radical | Suite::All) {
        report.absorb(radical_suite(a, limits)?);
    }
    if matches!(suite, Suite::Classify | Suite::All) {
        report.absorb(classify_suite(a, limits)?);
    }
    Ok(report)
}

/// One line of a verification run.
#[derive(Clone, Debug)]
pub struct InstanceOutcome {
    pub name: String,
    pub report: CheckReport,
}

/// Runs a suite over the corpus followed by `random` seeded synchronizing automata
/// with at most `max_states` states and `max_letters` letters. Outcomes are in order.
pub fn run_verification(
    suite: Suite,
    random: usize,
    max_states: usize,
    max_letters: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<InstanceOutcome>> {
    let mut out = Vec::new();
    for entry in corpus() {
        out.push(InstanceOutcome {
            report: verify_automaton(&entry.automaton, suite, limits, seed)?,
            name: entry.name,
        });
    }
    if random > 0 {
        for specimen in random_synchronizing_population(random, max_states, max_letters, seed)? {
            out.push(InstanceOutcome {
                report: verify_automaton(&specimen.automaton, suite, limits, seed ^ specimen.seed)?,
                name: format!(
                    "random#{} (n={}, k={}, seed={})",
                    specimen.index, specimen.states, specimen.letters, specimen.seed
                ),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{chain, double_cerny, modcerny2, quasi3};

    #[test]
    fn suites_pass_on_examples() {
        let limits = Limits::default();
        for a in [double_cerny(), modcerny2(), quasi3(), chain(5).unwrap()] {
            let r = verify_automaton(&a, Suite::All, &limits, 1).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checked > 10);
        }
    }

    #[test]
    fn random_words_are_reproducible() {
        let w = random_words(3, 10, 6, 9);
        assert_eq!(w, random_words(3, 10, 6, 9));
        assert!(w.iter().all(|w| w.len() <= 6 && w.letters().iter().all(|&x| x < 3)));
    }

    #[test]
    fn suite_names_parse() {
        for s in [Suite::Galois, Suite::Radical, Suite::Classify, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("none".parse::<Suite>().is_err());
    }
}
