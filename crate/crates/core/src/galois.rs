//! The antitone pair between congruences and ideals of the transition monoid:
//! `rho(J)` is the meet of the kernels of `J`, and `I(s)` is the set of
//! elements whose kernel contains `s`.

use std::sync::OnceLock;

use indexmap::IndexSet;

use crate::automaton::{Automaton, Word};
use crate::check::CheckReport;
use crate::congruence::{congruence_lattice, is_congruence, Congruence, CongruenceLattice};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::{syn_quotient_ideal, ElementSet, MonoidIdeal, TransitionMonoid};
use crate::partition::Partition;
use crate::radical::radical_oracle;

/// Kernels and images of all monoid elements, interned.
#[derive(Debug)]
struct Profile {
    kernel_of: Vec<u32>,
    kernels: Vec<Partition>,
    image_of: Vec<u32>,
    images: Vec<Vec<usize>>,
}

/// An automaton together with its transition monoid and (lazily) its congruence lattice.
#[derive(Debug)]
pub struct GaloisContext {
    automaton: Automaton,
    monoid: TransitionMonoid,
    limits: Limits,
    lattice: OnceLock<Result<CongruenceLattice>>,
    profile: OnceLock<Profile>,
}

impl GaloisContext {
    pub fn new(a: &Automaton) -> Result<Self> {
        Self::with_limits(a, Limits::default())
    }

    pub fn with_limits(a: &Automaton, limits: Limits) -> Result<Self> {
        let monoid = TransitionMonoid::enumerate(a, limits.max_monoid)?;
        Ok(Self {
            automaton: a.clone(),
            monoid,
            limits,
            lattice: OnceLock::new(),
            profile: OnceLock::new(),
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn monoid(&self) -> &TransitionMonoid {
        &self.monoid
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn lattice(&self) -> Result<&CongruenceLattice> {
        self.lattice
            .get_or_init(|| congruence_lattice(&self.automaton, self.limits.max_congruences))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn profile(&self) -> &Profile {
        self.profile.get_or_init(|| {
            let mut kernels = IndexSet::new();
            let mut images = IndexSet::new();
            let mut kernel_of = Vec::with_capacity(self.monoid.len());
            let mut image_of = Vec::with_capacity(self.monoid.len());
            for t in self.monoid.elements() {
                kernel_of.push(kernels.insert_full(t.kernel()).0 as u32);
                let mut image: Vec<usize> = t.images().collect();
                image.sort_unstable();
                image.dedup();
                image_of.push(images.insert_full(image).0 as u32);
            }
            Profile {
                kernel_of,
                kernels: kernels.into_iter().collect(),
                image_of,
                images: images.into_iter().collect(),
            }
        })
    }

    fn check_congruence(&self, s: &Congruence) -> Result<()> {
        if s.len() != self.automaton.states() {
            return Err(Error::SizeMismatch {
                expected: self.automaton.states(),
                found: s.len(),
            });
        }
        if !is_congruence(&self.automaton, s) {
            return Err(Error::NotACongruence);
        }
        Ok(())
    }

    /// Distinct kernel ids of the members.
    fn kernel_ids(&self, set: &ElementSet) -> Vec<usize> {
        distinct(set.iter().map(|e| self.profile().kernel_of[e] as usize))
    }

    /// Distinct image ids of the members.
    fn image_ids(&self, set: &ElementSet) -> Vec<usize> {
        distinct(set.iter().map(|e| self.profile().image_of[e] as usize))
    }
}

fn distinct(ids: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = ids.collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether all of `states` share one block of `p`.
fn within_one_block(states: &[usize], p: &Partition) -> bool {
    states.windows(2).all(|w| p.related(w[0], w[1]))
}

/// `rho(J)`, the meet of the kernels of the members of `j`.
///
/// `j` must be a nonempty left ideal. Rank-one members contribute the
/// universal relation, so passing `J ∪ Syn` gives the same result as `J`.
pub fn rho_of_ideal(ctx: &GaloisContext, j: &MonoidIdeal) -> Result<Congruence> {
    let m = ctx.monoid();
    if j.universe() != m.len() {
        return Err(Error::SizeMismatch {
            expected: m.len(),
            found: j.universe(),
        });
    }
    if j.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    if !m.is_left_ideal(j) {
        return Err(Error::NotAnIdeal("not a left ideal".into()));
    }
    let profile = ctx.profile();
    let mut meet = Partition::full(m.states());
    for k in ctx.kernel_ids(j) {
        meet = meet.meet(&profile.kernels[k])?;
        if meet.is_discrete() {
            break;
        }
    }
    assert!(
        is_congruence(ctx.automaton(), &meet),
        "meet of kernels over a left ideal must be a congruence"
    );
    Ok(Congruence::new_unchecked(meet))
}

/// `I(s)`, the elements collapsing every block of `s`.
pub fn ideal_of_congruence(ctx: &GaloisContext, s: &Congruence) -> Result<MonoidIdeal> {
    ctx.check_congruence(s)?;
    let m = ctx.monoid();
    let profile = ctx.profile();
    let good: Vec<bool> = profile.kernels.iter().map(|k| s.refines(k)).collect();
    let ideal = ElementSet::from_ids(
        m.len(),
        (0..m.len()).filter(|&e| good[profile.kernel_of[e] as usize]),
    );
    assert!(m.is_ideal(&ideal), "I(s) must be a two-sided ideal");
    Ok(ideal)
}

/// Shortest (then least) word whose element lies in `I(s)`.
pub fn shortest_ideal_word(ctx: &GaloisContext, s: &Congruence) -> Result<Option<Word>> {
    let ideal = ideal_of_congruence(ctx, s)?;
    Ok(ideal.first().map(|e| ctx.monoid().witness(e)))
}

/// Principal ideals, one per J-class.
fn principal_ideals(m: &TransitionMonoid) -> Vec<(usize, MonoidIdeal)> {
    let j = m.jclasses();
    (0..j.count())
        .map(|c| {
            let rep = j.representative(c);
            (rep, m.ideal_closure([rep]))
        })
        .collect()
}

/// Checks the connection laws over every lattice element and every principal ideal.
pub fn galois_check(ctx: &GaloisContext) -> Result<CheckReport> {
    let lattice = ctx.lattice()?;
    let m = ctx.monoid();
    let mut report = CheckReport::new("galois connection");
    for (rep, j) in principal_ideals(m) {
        let r = rho_of_ideal(ctx, &j)?;
        let back = ideal_of_congruence(ctx, &r)?;
        report.record(j.is_subset(&back), || {
            format!("principal ideal of element {rep} is not inside I(rho(J))")
        });
        let again = rho_of_ideal(ctx, &back)?;
        report.record(again == r, || {
            format!("rho(I(rho(J))) != rho(J) for the principal ideal of element {rep}")
        });
    }
    for s in lattice.elements() {
        let i = ideal_of_congruence(ctx, s)?;
        let r = rho_of_ideal(ctx, &i)?;
        report.record(s.refines(&r), || format!("{s} is not below rho(I(s)) = {r}"));
        let again = ideal_of_congruence(ctx, &r)?;
        report.record(again == i, || format!("I(rho(I(s))) != I(s) for s = {s}"));
    }
    Ok(report)
}

/// Whether `u . v` is rank one for every `u` in `left` and `v` in `right`.
///
/// `u . v` is constant exactly when the image of `u` lies in one kernel block of `v`,
/// so it suffices to test each (image, kernel) combination once.
fn products_in_syn(
    ctx: &GaloisContext,
    left: &ElementSet,
    right: &ElementSet,
    label: &str,
    report: &mut CheckReport,
) {
    let profile = ctx.profile();
    let kernels = ctx.kernel_ids(right);
    for x in ctx.image_ids(left) {
        let image = &profile.images[x];
        for &k in &kernels {
            report.record(within_one_block(image, &profile.kernels[k]), || {
                format!("{label}: image {image:?} meets several blocks of kernel {}", profile.kernels[k])
            });
        }
    }
}

/// `Syn(a/s) . I(s) ⊆ Syn(a)` and `(I(s) ∩ Syn(a/s))^2 ⊆ Syn(a)`.
pub fn annihilator_check(ctx: &GaloisContext, s: &Congruence) -> Result<CheckReport> {
    let i = ideal_of_congruence(ctx, s)?;
    let syn_q = syn_quotient_ideal(ctx.monoid(), s)?;
    let both = i.intersection(&syn_q);
    let mut report = CheckReport::new(format!("annihilators for {s}"));
    products_in_syn(ctx, &syn_q, &i, "Syn(a/s) I(s)", &mut report);
    products_in_syn(ctx, &both, &both, "(I(s) ∩ Syn(a/s))^2", &mut report);
    Ok(report)
}

/// Left annihilators of fixed-point ideals are the quotient reset ideals.
///
/// For every fixed congruence `s = rho(I(s))`: `u . I(s) ⊆ Syn` iff `u ∈ Syn(a/s)`.
/// For every fixed ideal `I = I(s)`: `u . I ⊆ Syn` iff `u ∈ Syn(a/rho(I))`.
/// Requires a semisimple automaton.
pub fn left_annihilator_check(ctx: &GaloisContext) -> Result<CheckReport> {
    let m = ctx.monoid();
    let radical = radical_oracle(m)?;
    if !radical.rad_minus_syn().is_empty() {
        return Err(Error::NotSemisimple);
    }
    let lattice = ctx.lattice()?;
    let profile = ctx.profile();
    let all_images = ctx.image_ids(&ElementSet::full(m.len()));
    let mut report = CheckReport::new("left annihilators");
    for s in lattice.elements() {
        let i = ideal_of_congruence(ctx, s)?;
        let r = rho_of_ideal(ctx, &i)?;
        let kernels = ctx.kernel_ids(&i);
        let annihilates = |x: usize| {
            kernels
                .iter()
                .all(|&k| within_one_block(&profile.images[x], &profile.kernels[k]))
        };
        for &x in &all_images {
            let image = &profile.images[x];
            let lhs = annihilates(x);
            if r == *s {
                report.record(lhs == within_one_block(image, s), || {
                    format!("fixed congruence {s}: image {image:?} disagrees")
                });
            }
            report.record(lhs == within_one_block(image, &r), || {
                format!("fixed ideal I({s}): image {image:?} disagrees with rho = {r}")
            });
        }
    }
    Ok(report)
}

/// Deterministic automaton with a start state and accepting states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognizer {
    pub automaton: Automaton,
    pub initial: usize,
    /// Sorted accepting states.
    pub accepting: Vec<usize>,
}

impl Recognizer {
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let end = self.automaton.run(self.initial, w)?;
        Ok(self.accepting.binary_search(&end).is_ok())
    }
}

/// Recognizer for the words whose transformation collapses every block of `s`.
///
/// Product of one subset automaton per block, each started at its block and
/// accepting singletons; only reachable product states are built.
pub fn ideal_language_recognizer(ctx: &GaloisContext, s: &Congruence) -> Result<Recognizer> {
    ctx.check_congruence(s)?;
    let a = ctx.automaton();
    let k = a.num_letters();
    let start: Vec<Vec<usize>> = s.blocks();
    let mut states: IndexSet<Vec<Vec<usize>>> = IndexSet::new();
    states.insert(start);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut cursor = 0;
    while cursor < states.len() {
        for (x, row) in rows.iter_mut().enumerate() {
            let next: Vec<Vec<usize>> = states[cursor]
                .iter()
                .map(|block| {
                    let mut image: Vec<usize> = block.iter().map(|&q| a.step(q, x)).collect();
                    image.sort_unstable();
                    image.dedup();
                    image
                })
                .collect();
            let (id, fresh) = states.insert_full(next);
            if fresh && states.len() > ctx.limits().max_product_states {
                return Err(Error::CapExceeded {
                    what: "product recognizer",
                    cap: ctx.limits().max_product_states,
                });
            }
            row.push(id);
        }
        cursor += 1;
    }
    let accepting = (0..states.len())
        .filter(|&i| states[i].iter().all(|b| b.len() == 1))
        .collect();
    let automaton = Automaton::new(states.len(), a.letter_names().to_vec(), rows)?;
    Ok(Recognizer {
        automaton,
        initial: 0,
        accepting,
    })
}
