//! The radical: the largest ideal of `M(a)` that is nilpotent modulo the rank-one elements.
//!
//! Result sets always contain `Syn`; the part outside `Syn` is reported separately.

use std::fmt;

use crate::automaton::{Automaton, Word};
use crate::congruence::{atoms, lift_congruence, quotient, Congruence};
use crate::error::{Error, Result};
use crate::galois::{rho_of_ideal, GaloisContext};
use crate::limits::Limits;
use crate::monoid::{
    induced_morphism, is_nilpotent_mod, syn_ideal, ElementSet, MonoidIdeal, TransitionMonoid,
};
use crate::sync::is_synchronizing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Algorithm1,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Algorithm1 => "alg1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalResult {
    /// Radical members, `Syn` included.
    pub rad: MonoidIdeal,
    pub syn: MonoidIdeal,
    /// Least `k` with `rad^k ⊆ Syn`.
    pub nilpotency_index: usize,
    pub method: Method,
}

impl RadicalResult {
    fn new(m: &TransitionMonoid, rad: MonoidIdeal, syn: MonoidIdeal, method: Method) -> Self {
        let nilpotency_index = is_nilpotent_mod(m, &rad, &syn)
            .expect("radical and Syn are ideals")
            .expect("radical is nilpotent modulo Syn");
        Self {
            rad,
            syn,
            nilpotency_index,
            method,
        }
    }

    pub fn rad_minus_syn(&self) -> ElementSet {
        self.rad.difference(&self.syn)
    }

    pub fn is_semisimple(&self) -> bool {
        self.rad == self.syn
    }
}

/// J-classes in an order where every class comes after all classes below it.
fn bottom_up_classes(m: &TransitionMonoid) -> Vec<usize> {
    let j = m.jclasses();
    let mut pending: Vec<usize> = (0..j.count()).map(|c| j.below(c).len()).collect();
    let mut order: Vec<usize> = (0..j.count()).filter(|&c| pending[c] == 0).collect();
    let mut cursor = 0;
    while cursor < order.len() {
        let c = order[cursor];
        for &d in j.above(c) {
            pending[d] -= 1;
            if pending[d] == 0 {
                order.push(d);
            }
        }
        cursor += 1;
    }
    debug_assert_eq!(order.len(), j.count());
    order
}

/// Radical by brute force: `e` is radical iff `M e M` is nilpotent modulo `Syn`.
///
/// A class sitting above a non-nilpotent class cannot be nilpotent, which
/// prunes most tests.
pub fn radical_oracle(m: &TransitionMonoid) -> Result<RadicalResult> {
    let syn = syn_ideal(m);
    if syn.is_empty() {
        return Err(Error::NotSynchronizing);
    }
    let j = m.jclasses();
    let mut nilpotent = vec![false; j.count()];
    let mut rad = syn.clone();
    for c in bottom_up_classes(m) {
        let rep = j.representative(c);
        if syn.contains(rep) {
            nilpotent[c] = true;
            continue;
        }
        if j.below(c).iter().any(|&d| !nilpotent[d]) {
            continue;
        }
        let ideal = m.ideal_closure([rep]);
        if is_nilpotent_mod(m, &ideal, &syn)?.is_some() {
            nilpotent[c] = true;
            for &e in j.members(c) {
                rad.insert(e);
            }
        }
    }
    Ok(RadicalResult::new(m, rad, syn, Method::Oracle))
}

/// Elements collapsing every block of `s`.
fn collapsing_elements(m: &TransitionMonoid, s: &Congruence) -> ElementSet {
    ElementSet::from_ids(m.len(), (0..m.len()).filter(|&e| m.element(e).collapses(s)))
}

fn algorithm1_set(a: &Automaton, m: &TransitionMonoid, limits: &Limits) -> Result<ElementSet> {
    let syn = syn_ideal(m);
    if a.states() < 2 {
        return Ok(syn);
    }
    let found = atoms(a)?;
    if found.len() == 1 && found[0].is_full() {
        return Ok(syn);
    }
    let mut pulled = Vec::with_capacity(2);
    for s in found.iter().take(2) {
        let phi = induced_morphism(m, a, s, limits.max_monoid)?;
        let rad_q = algorithm1_set(&phi.quotient, &phi.target, limits)?;
        pulled.push(phi.pullback(&rad_q));
    }
    Ok(if pulled.len() == 1 {
        pulled[0].intersection(&collapsing_elements(m, &found[0]))
    } else {
        pulled[0].intersection(&pulled[1])
    })
}

/// Radical by recursion over atoms of the congruence lattice.
///
/// Simple automata are semisimple. With a unique atom `s` the radical is the
/// pullback of the quotient radical intersected with `I(s)`; with two or more
/// atoms it is the intersection of the pullbacks along the two least atoms.
pub fn radical_algorithm1(a: &Automaton) -> Result<RadicalResult> {
    radical_algorithm1_with_limits(a, &Limits::default())
}

pub fn radical_algorithm1_with_limits(a: &Automaton, limits: &Limits) -> Result<RadicalResult> {
    if !is_synchronizing(a) {
        return Err(Error::NotSynchronizing);
    }
    let m = TransitionMonoid::enumerate(a, limits.max_monoid)?;
    let rad = algorithm1_set(a, &m, limits)?;
    let syn = syn_ideal(&m);
    Ok(RadicalResult::new(&m, rad, syn, Method::Algorithm1))
}

/// `rho(Rad)`; non-trivial unless the automaton is semisimple.
pub fn radical_congruence(ctx: &GaloisContext, r: &RadicalResult) -> Result<Congruence> {
    let rho = rho_of_ideal(ctx, &r.rad)?;
    assert!(
        r.is_semisimple() || rho.is_nontrivial(),
        "a non-semisimple automaton has a non-trivial radical congruence"
    );
    Ok(rho)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoChain {
    /// Strictly increasing congruences of the original automaton.
    pub congruences: Vec<Congruence>,
    pub nilpotency_index: usize,
    pub lattice_height: usize,
}

impl RhoChain {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }
}

/// Iterates radical congruences through successive quotients until a semisimple one.
pub fn rho_chain(a: &Automaton) -> Result<RhoChain> {
    rho_chain_with_limits(a, &Limits::default())
}

pub fn rho_chain_with_limits(a: &Automaton, limits: &Limits) -> Result<RhoChain> {
    if !is_synchronizing(a) {
        return Err(Error::NotSynchronizing);
    }
    let base = GaloisContext::with_limits(a, *limits)?;
    let nilpotency_index = radical_oracle(base.monoid())?.nilpotency_index;
    let lattice_height = base.lattice()?.height();
    let mut chain: Vec<Congruence> = Vec::new();
    let mut current = Congruence::identity(a.states());
    let mut level = a.clone();
    loop {
        let ctx = GaloisContext::with_limits(&level, *limits)?;
        let r = radical_oracle(ctx.monoid())?;
        if r.is_semisimple() {
            break;
        }
        let rho = radical_congruence(&ctx, &r)?;
        let lifted = lift_congruence(a, &current, &rho)?;
        assert!(
            current.refines(&lifted) && current != lifted,
            "radical congruences strictly increase along the chain"
        );
        level = quotient(a, &lifted)?.0;
        current = lifted.clone();
        chain.push(lifted);
    }
    let k = chain.len();
    assert!(
        nilpotency_index <= k + 1,
        "Rad^(k+1) must lie in Syn: index {nilpotency_index}, k = {k}"
    );
    assert!(
        k + 2 <= lattice_height || a.states() < 2,
        "chain of length {k} does not fit a lattice of height {lattice_height}"
    );
    Ok(RhoChain {
        congruences: chain,
        nilpotency_index,
        lattice_height,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeightBound {
    pub nilpotency_index: usize,
    pub lattice_height: usize,
}

impl HeightBound {
    /// `index <= height - 1`
    pub fn holds(&self) -> bool {
        self.nilpotency_index < self.lattice_height
    }

    pub fn attained(&self) -> bool {
        self.nilpotency_index + 1 == self.lattice_height
    }
}

/// Compares the nilpotency index of the radical with the lattice height.
pub fn height_bound_check(a: &Automaton) -> Result<HeightBound> {
    height_bound_check_with_limits(a, &Limits::default())
}

pub fn height_bound_check_with_limits(a: &Automaton, limits: &Limits) -> Result<HeightBound> {
    let ctx = GaloisContext::with_limits(a, *limits)?;
    let r = radical_oracle(ctx.monoid())?;
    Ok(HeightBound {
        nilpotency_index: r.nilpotency_index,
        lattice_height: ctx.lattice()?.height(),
    })
}

/// Shortest (then least) word whose element is radical.
pub fn shortest_radical_word(m: &TransitionMonoid, r: &RadicalResult) -> Option<Word> {
    r.rad.first().map(|e| m.witness(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cerny, chain, double_cerny, modcerny1, modcerny2, quasi3};
    use crate::monoid::enumerate_monoid;
    use crate::partition::Partition;

    /// A finite nil ideal is nilpotent, so `e` is radical iff `M e M` holds no idempotent outside Syn.
    fn radical_by_idempotents(m: &TransitionMonoid) -> ElementSet {
        let syn = syn_ideal(m);
        let j = m.jclasses();
        let mut out = syn.clone();
        for c in 0..j.count() {
            let ideal = m.ideal_closure([j.representative(c)]);
            let nil = ideal
                .difference(&syn)
                .iter()
                .all(|e| !m.element(e).is_idempotent());
            if nil {
                for &e in j.members(c) {
                    out.insert(e);
                }
            }
        }
        out
    }

    #[test]
    fn chain_four_radical() {
        let a = chain(4).unwrap();
        let m = enumerate_monoid(&a).unwrap();
        let r = radical_oracle(&m).unwrap();
        assert_eq!(r.rad_minus_syn().iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(r.nilpotency_index, 3);
        assert_eq!(shortest_radical_word(&m, &r).unwrap().len(), 1);
        let ctx = GaloisContext::new(&a).unwrap();
        let rho = radical_congruence(&ctx, &r).unwrap();
        assert_eq!(rho.partition(), &a.letter(0).kernel());
    }

    #[test]
    fn semisimple_examples() {
        for a in [double_cerny(), cerny(5).unwrap(), quasi3()] {
            let m = enumerate_monoid(&a).unwrap();
            let r = radical_oracle(&m).unwrap();
            assert!(r.is_semisimple());
            assert_eq!(r.nilpotency_index, 1);
            let ctx = GaloisContext::new(&a).unwrap();
            assert!(radical_congruence(&ctx, &r).unwrap().is_full());
        }
    }

    #[test]
    fn modcerny1_radical() {
        let a = modcerny1();
        let m = enumerate_monoid(&a).unwrap();
        let r = radical_oracle(&m).unwrap();
        let baab = m.element_of(&a.parse_word("baab").unwrap()).unwrap();
        assert!(r.rad_minus_syn().contains(baab));
        assert!(shortest_radical_word(&m, &r).unwrap().len() <= 4);
        let ctx = GaloisContext::new(&a).unwrap();
        let rho = radical_congruence(&ctx, &r).unwrap();
        assert_eq!(
            rho.partition(),
            &Partition::from_blocks(4, &[vec![0, 1]]).unwrap()
        );
    }

    #[test]
    fn algorithm1_matches_oracle_on_examples() {
        let mut examples = vec![double_cerny(), modcerny1(), modcerny2(), quasi3()];
        examples.extend((2..=6).map(|n| cerny(n).unwrap()));
        examples.extend((2..=7).map(|n| chain(n).unwrap()));
        for a in examples {
            let m = enumerate_monoid(&a).unwrap();
            let oracle = radical_oracle(&m).unwrap();
            let alg = radical_algorithm1(&a).unwrap();
            assert_eq!(oracle.rad, alg.rad);
            assert_eq!(oracle.nilpotency_index, alg.nilpotency_index);
            assert_eq!(oracle.rad, radical_by_idempotents(&m));
        }
        let r = radical_algorithm1(&chain(5).unwrap()).unwrap();
        assert_eq!(r.nilpotency_index, 4);
        assert_eq!(r.method, Method::Algorithm1);
    }

    #[test]
    fn non_synchronizing_is_rejected() {
        let perm = Automaton::from_table(&["a"], &[&[1, 0]]).unwrap();
        assert_eq!(
            radical_oracle(&enumerate_monoid(&perm).unwrap()),
            Err(Error::NotSynchronizing)
        );
        assert_eq!(radical_algorithm1(&perm), Err(Error::NotSynchronizing));
    }

    #[test]
    fn chain_rho_chain() {
        let a = chain(4).unwrap();
        let c = rho_chain(&a).unwrap();
        assert_eq!(c.len(), 2);
        let a2 = a.letter(0).then(a.letter(0));
        assert_eq!(c.congruences[0].partition(), &a.letter(0).kernel());
        assert_eq!(c.congruences[1].partition(), &a2.kernel());
        assert!(rho_chain(&double_cerny()).unwrap().is_empty());
        let c = rho_chain(&modcerny2()).unwrap();
        assert!(!c.is_empty());
        for s in &c.congruences {
            assert!(crate::congruence::is_congruence(&modcerny2(), s));
        }
    }

    #[test]
    fn chain_heights_are_tight() {
        for n in 4..=7 {
            let b = height_bound_check(&chain(n).unwrap()).unwrap();
            assert_eq!(b.nilpotency_index, n - 1);
            assert!(b.holds() && b.attained());
        }
        let b = height_bound_check(&cerny(4).unwrap()).unwrap();
        assert!(b.holds());
        assert_eq!(b.nilpotency_index, 1);
    }
}
