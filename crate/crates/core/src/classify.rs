//! Simple, quasi-simple and radical automata, and checks of their structure theorems.

use std::fmt;

use crate::automaton::Automaton;
use crate::check::CheckReport;
use crate::congruence::{atoms, quotient, Congruence};
use crate::error::{Error, Result};
use crate::galois::{ideal_of_congruence, GaloisContext};
use crate::limits::Limits;
use crate::monoid::{induced_morphism, syn_quotient_ideal, zero_minimal_ideals};
use crate::radical::{radical_congruence, radical_oracle, RadicalResult};
use crate::sync::is_synchronizing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Simple,
    QuasiSimple,
    Radical,
    SemisimpleOther,
    NonSemisimpleOther,
    NotSynchronizing,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::Simple => "simple",
            Category::QuasiSimple => "quasi-simple",
            Category::Radical => "radical",
            Category::SemisimpleOther => "semisimple-other",
            Category::NonSemisimpleOther => "non-semisimple-other",
            Category::NotSynchronizing => "not-synchronizing",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    /// Least congruence other than the identity, when it exists and is not universal.
    pub minimum_congruence: Option<Congruence>,
    pub radical_congruence: Option<Congruence>,
    /// 0-minimal ideals of `M / Syn`.
    pub zero_minimal_over_syn: Option<usize>,
    /// 0-minimal ideals of `M / Rad`.
    pub zero_minimal_over_rad: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub category: Category,
    pub strongly_connected: bool,
    /// `None` for non-synchronizing input.
    pub semisimple: Option<bool>,
    pub has_min_nontrivial_congruence: bool,
    pub evidence: Evidence,
}

/// Everything the predicates share, computed once.
struct Facts {
    ctx: GaloisContext,
    radical: RadicalResult,
    minimum: Option<Congruence>,
    simple: bool,
}

impl Facts {
    fn gather(a: &Automaton, limits: &Limits) -> Result<Self> {
        if !is_synchronizing(a) {
            return Err(Error::NotSynchronizing);
        }
        let ctx = GaloisContext::with_limits(a, *limits)?;
        let radical = radical_oracle(ctx.monoid())?;
        let lattice = ctx.lattice()?;
        let minimum = lattice.nontrivial_minimum().cloned();
        let simple = a.states() < 2 || simple_by_both_routes(a, lattice.len())?;
        Ok(Self {
            ctx,
            radical,
            minimum,
            simple,
        })
    }

    fn quasi_simple(&self) -> Result<bool> {
        let Some(s) = &self.minimum else {
            return Ok(false);
        };
        Ok(ideal_of_congruence(&self.ctx, s)? == self.radical.syn)
    }

    fn radical_class(&self, limits: &Limits) -> Result<bool> {
        if self.radical.is_semisimple() || self.minimum.is_none() {
            return Ok(false);
        }
        let rho = radical_congruence(&self.ctx, &self.radical)?;
        let phi = induced_morphism(self.ctx.monoid(), self.ctx.automaton(), &rho, limits.max_monoid)?;
        let quotient_rad = radical_oracle(&phi.target)?;
        Ok(phi.pullback(&quotient_rad.rad) != self.radical.rad)
    }

    fn category(&self, limits: &Limits) -> Result<Category> {
        Ok(if self.simple {
            Category::Simple
        } else if self.quasi_simple()? {
            Category::QuasiSimple
        } else if self.radical_class(limits)? {
            Category::Radical
        } else if self.radical.is_semisimple() {
            Category::SemisimpleOther
        } else {
            Category::NonSemisimpleOther
        })
    }
}

/// Atoms equal `{∇}` exactly when the lattice has two elements; both are computed.
fn simple_by_both_routes(a: &Automaton, lattice_len: usize) -> Result<bool> {
    let found = atoms(a)?;
    let by_atoms = found.len() == 1 && found[0].is_full();
    assert_eq!(
        by_atoms,
        lattice_len == 2,
        "atom procedure and lattice enumeration disagree on simplicity"
    );
    Ok(by_atoms)
}

/// The only congruences are the identity and the universal relation.
pub fn is_simple(a: &Automaton) -> Result<bool> {
    if a.states() < 2 {
        return Err(Error::TrivialAutomaton);
    }
    let lattice = crate::congruence::congruence_lattice(a, Limits::default().max_congruences)?;
    simple_by_both_routes(a, lattice.len())
}

/// No radical element outside `Syn`.
pub fn is_semisimple(a: &Automaton) -> Result<bool> {
    if !is_synchronizing(a) {
        return Err(Error::NotSynchronizing);
    }
    let ctx = GaloisContext::new(a)?;
    Ok(radical_oracle(ctx.monoid())?.is_semisimple())
}

/// A least non-identity congruence `s` exists, differs from `∇`, and `I(s) = Syn`.
pub fn is_quasi_simple(a: &Automaton) -> Result<bool> {
    Facts::gather(a, &Limits::default())?.quasi_simple()
}

/// Non-semisimple, with a least non-identity congruence, and whose radical is not
/// the pullback of the radical of the quotient by the radical congruence.
pub fn is_radical_class(a: &Automaton) -> Result<bool> {
    let limits = Limits::default();
    Facts::gather(a, &limits)?.radical_class(&limits)
}

pub fn classify(a: &Automaton) -> Result<Classification> {
    classify_with_limits(a, &Limits::default())
}

/// Classifies; the only errors are exceeded caps.
pub fn classify_with_limits(a: &Automaton, limits: &Limits) -> Result<Classification> {
    let strongly_connected = a.is_strongly_connected();
    let facts = match Facts::gather(a, limits) {
        Ok(f) => f,
        Err(Error::NotSynchronizing) => {
            return Ok(Classification {
                category: Category::NotSynchronizing,
                strongly_connected,
                semisimple: None,
                has_min_nontrivial_congruence: false,
                evidence: Evidence::default(),
            })
        }
        Err(e) => return Err(e),
    };
    let category = facts.category(limits)?;
    let m = facts.ctx.monoid();
    let count_over = |z| match zero_minimal_ideals(m, z) {
        Ok(list) => Ok(Some(list.len())),
        Err(Error::NoQuotient) => Ok(None),
        Err(e) => Err(e),
    };
    let evidence = Evidence {
        minimum_congruence: facts.minimum.clone(),
        radical_congruence: Some(radical_congruence(&facts.ctx, &facts.radical)?),
        zero_minimal_over_syn: count_over(&facts.radical.syn)?,
        zero_minimal_over_rad: count_over(&facts.radical.rad)?,
    };
    let out = Classification {
        category,
        strongly_connected,
        semisimple: Some(facts.radical.is_semisimple()),
        has_min_nontrivial_congruence: facts.minimum.is_some(),
        evidence,
    };
    if matches!(category, Category::Simple | Category::QuasiSimple) {
        assert_eq!(out.semisimple, Some(true), "{category} automata are semisimple");
    }
    Ok(out)
}

fn require(found: Category, allowed: &[Category], expected: &str) -> Result<()> {
    if allowed.contains(&found) {
        Ok(())
    } else {
        Err(Error::WrongClass {
            expected: expected.into(),
            found: found.name().into(),
        })
    }
}

/// Simple and quasi-simple automata have exactly one 0-minimal ideal over `Syn`.
pub fn verify_unique_zero_minimal(a: &Automaton) -> Result<CheckReport> {
    let limits = Limits::default();
    let class = classify_with_limits(a, &limits)?;
    require(
        class.category,
        &[Category::Simple, Category::QuasiSimple],
        "simple or quasi-simple",
    )?;
    let facts = Facts::gather(a, &limits)?;
    let count = zero_minimal_ideals(facts.ctx.monoid(), &facts.radical.syn)?.len();
    let mut report = CheckReport::new("unique 0-minimal ideal over Syn");
    report.record(count == 1, || format!("found {count} 0-minimal ideals"));
    report.note(format!("zero_minimal = {count}"));
    Ok(report)
}

/// Number of 0-minimal ideals of `M / Rad` inside `Syn(a/s) ∪ Rad`, for a radical automaton.
pub fn radical_structure_count(a: &Automaton) -> Result<usize> {
    let limits = Limits::default();
    let class = classify_with_limits(a, &limits)?;
    require(class.category, &[Category::Radical], "radical")?;
    let facts = Facts::gather(a, &limits)?;
    let s = facts.minimum.as_ref().expect("radical automata have a minimum");
    let m = facts.ctx.monoid();
    let allowed = syn_quotient_ideal(m, s)?.union(&facts.radical.rad);
    Ok(zero_minimal_ideals(m, &facts.radical.rad)?
        .iter()
        .filter(|i| i.is_subset(&allowed))
        .count())
}

/// In a radical automaton exactly one 0-minimal ideal of `M / Rad` sits inside `Syn(a/s) ∪ Rad`.
pub fn verify_radical_structure(a: &Automaton) -> Result<CheckReport> {
    let count = radical_structure_count(a)?;
    let mut report = CheckReport::new("radical structure");
    report.record(count == 1, || format!("{count} qualifying 0-minimal ideals"));
    report.note(format!("qualifying = {count}"));
    Ok(report)
}

/// For a semisimple automaton with minimum `s` and `I(s) != Syn`: `Syn(a/s) = Syn(a)` and `a/s` is semisimple.
pub fn verify_min_congruence_syn(a: &Automaton) -> Result<CheckReport> {
    let facts = Facts::gather(a, &Limits::default())?;
    if !facts.radical.is_semisimple() {
        return Err(Error::Precondition("automaton is not semisimple".into()));
    }
    let Some(s) = &facts.minimum else {
        return Err(Error::Precondition(
            "no least non-identity congruence".into(),
        ));
    };
    if ideal_of_congruence(&facts.ctx, s)? == facts.radical.syn {
        return Err(Error::Precondition("I(s) equals Syn".into()));
    }
    let mut report = CheckReport::new("Syn of the minimum quotient");
    let syn_q = syn_quotient_ideal(facts.ctx.monoid(), s)?;
    report.record(syn_q == facts.radical.syn, || {
        format!("Syn(a/s) has {} elements, Syn(a) has {}", syn_q.len(), facts.radical.syn.len())
    });
    let (qa, _) = quotient(a, s)?;
    let quotient_semisimple = is_semisimple(&qa)?;
    report.record(quotient_semisimple, || format!("quotient by {s} is not semisimple"));
    Ok(report)
}
