use std::fmt;

use fixedbitset::FixedBitSet;

use super::TransitionMonoid;
use crate::automaton::Automaton;
use crate::congruence::{quotient, Congruence};
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// A set of monoid element ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet(FixedBitSet);

/// Ideals are element sets; "an ideal mod `Z`" is a set whose union with `Z` is an ideal.
pub type MonoidIdeal = ElementSet;

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        Self(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self(bits)
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    /// Returns whether the id was newly inserted.
    pub fn insert(&mut self, id: usize) -> bool {
        !self.0.put(id)
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.contains(id)
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

    /// Least id, which is also the element with the shortest witness.
    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.0.clone();
        out.union_with(&other.0);
        Self(out)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.0.clone();
        out.intersect_with(&other.0);
        Self(out)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.0.clone();
        out.difference_with(&other.0);
        Self(out)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Rank-one elements: the transformations of reset words.
pub fn syn_ideal(m: &TransitionMonoid) -> MonoidIdeal {
    ElementSet::from_ids(m.len(), (0..m.len()).filter(|&e| m.element(e).is_constant()))
}

/// Elements whose image lies inside one block of `s`.
pub fn syn_quotient_ideal(m: &TransitionMonoid, s: &Congruence) -> Result<MonoidIdeal> {
    if s.len() != m.states() {
        return Err(Error::SizeMismatch {
            expected: m.states(),
            found: s.len(),
        });
    }
    Ok(ElementSet::from_ids(
        m.len(),
        (0..m.len()).filter(|&e| m.element(e).image_within_block(s)),
    ))
}

/// `M e M`
pub fn principal_ideal(m: &TransitionMonoid, e: usize) -> Result<MonoidIdeal> {
    if e >= m.len() {
        return Err(Error::Precondition(format!(
            "element {e} out of range for a monoid of size {}",
            m.len()
        )));
    }
    Ok(m.ideal_closure([e]))
}

fn check_ideal(m: &TransitionMonoid, set: &ElementSet, what: &str) -> Result<()> {
    if set.universe() != m.len() {
        return Err(Error::SizeMismatch {
            expected: m.len(),
            found: set.universe(),
        });
    }
    if !m.is_ideal(set) {
        return Err(Error::NotAnIdeal(what.to_string()));
    }
    Ok(())
}

/// Least `k` with `I^k ⊆ Z`, or `None` when the powers of `I` stabilise outside `Z`.
///
/// Requires `Z` and `I ∪ Z` to be ideals. Powers are computed as sets: with
/// `P_1 = I ∪ Z` and `P_{k+1} = P_k · P_1 ∪ Z`, and `P_k · P_1` is obtained as the
/// right closure of `P_k · g` over generators `g` of the maximal J-classes of `I`.
pub fn is_nilpotent_mod(
    m: &TransitionMonoid,
    i: &MonoidIdeal,
    z: &MonoidIdeal,
) -> Result<Option<usize>> {
    check_ideal(m, z, "zero set")?;
    let base = i.union(z);
    check_ideal(m, &base, "ideal modulo zero set")?;
    let generators: Vec<_> = maximal_generators(m, &base, z)
        .into_iter()
        .map(|g| m.witness(g))
        .collect();
    let mut power = base;
    let mut exponent = 1;
    loop {
        if power.is_subset(z) {
            return Ok(Some(exponent));
        }
        let mut products = Vec::new();
        for g in &generators {
            products.extend(power.iter().map(|x| m.mul_word(x, g)));
        }
        let next = m.right_closure(products).union(z);
        if next == power {
            return Ok(None);
        }
        power = next;
        exponent += 1;
    }
}

/// Representatives of the J-classes of `ideal \ zero` not below any other class of `ideal`.
fn maximal_generators(m: &TransitionMonoid, ideal: &ElementSet, zero: &ElementSet) -> Vec<usize> {
    let j = m.jclasses();
    let mut out = Vec::new();
    let mut visited = vec![false; j.count()];
    for e in ideal.difference(zero).iter() {
        let c = j.class_of(e);
        if std::mem::replace(&mut visited[c], true) {
            continue;
        }
        // ideals are unions of J-classes, so a direct predecessor outside the ideal is never relevant
        if j.above(c).iter().all(|&d| !ideal.contains(j.representative(d))) {
            out.push(j.representative(c));
        }
    }
    out
}

/// 0-minimal ideals of the Rees quotient `M / Z`.
///
/// Each entry lists the members outside `Z`; such an ideal is a single J-class
/// all of whose strict lower classes lie in `Z`.
pub fn zero_minimal_ideals(m: &TransitionMonoid, z: &MonoidIdeal) -> Result<Vec<MonoidIdeal>> {
    check_ideal(m, z, "zero set")?;
    if z.len() == m.len() {
        return Err(Error::NoQuotient);
    }
    let j = m.jclasses();
    let mut out = Vec::new();
    for c in 0..j.count() {
        let rep = j.representative(c);
        if z.contains(rep) {
            continue;
        }
        if j.below(c).iter().all(|&d| z.contains(j.representative(d))) {
            out.push(ElementSet::from_ids(m.len(), j.members(c).iter().copied()));
        }
    }
    Ok(out)
}

/// The surjective morphism `M(a) -> M(a / s)`.
#[derive(Debug)]
pub struct InducedMorphism {
    pub quotient: Automaton,
    /// state of `a` -> state of the quotient
    pub class_map: Vec<usize>,
    pub target: TransitionMonoid,
    map: Vec<u32>,
}

impl InducedMorphism {
    pub fn image(&self, e: usize) -> usize {
        self.map[e] as usize
    }

    /// `{ e : phi(e) in set }`
    pub fn pullback(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_ids(
            self.map.len(),
            (0..self.map.len()).filter(|&e| set.contains(self.map[e] as usize)),
        )
    }

    /// Image set of the whole source monoid.
    pub fn image_set(&self) -> ElementSet {
        ElementSet::from_ids(self.target.len(), self.map.iter().map(|&e| e as usize))
    }

    /// The transformation of the quotient induced directly by a transformation of `a`.
    pub fn induced_transformation(&self, t: &Transformation) -> Transformation {
        let blocks = self.quotient.states();
        let mut images = vec![0; blocks];
        for (q, &b) in self.class_map.iter().enumerate() {
            images[b] = self.class_map[t.image(q)];
        }
        Transformation::new(images).expect("class indices in range")
    }
}

/// Builds the morphism induced by the congruence `s`, enumerating the quotient monoid.
pub fn induced_morphism(
    m: &TransitionMonoid,
    a: &Automaton,
    s: &Congruence,
    max_elements: usize,
) -> Result<InducedMorphism> {
    let (qa, class_map) = quotient(a, s)?;
    let target = TransitionMonoid::enumerate(&qa, max_elements)?;
    let mut map = vec![0u32; m.len()];
    // breadth-first order guarantees the parent is mapped first
    for e in 1..m.len() {
        let (p, x) = m.parent[e];
        map[e] = target.right(map[p as usize] as usize, x as usize) as u32;
    }
    Ok(InducedMorphism {
        quotient: qa,
        class_map,
        target,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::principal_congruence;
    use crate::monoid::enumerate_monoid;

    fn quasi3() -> Automaton {
        Automaton::from_table(&["a", "b"], &[&[0, 0, 0], &[0, 2, 1]]).unwrap()
    }

    fn chain(n: usize) -> Automaton {
        let a: Vec<usize> = (0..n).map(|i| i.saturating_sub(1)).collect();
        Automaton::from_table(&["a"], &[&a]).unwrap()
    }

    fn id(m: &TransitionMonoid, images: &[usize]) -> usize {
        m.id_of(&Transformation::new(images.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn syn_ideals() {
        let m = enumerate_monoid(&quasi3()).unwrap();
        let syn = syn_ideal(&m);
        assert_eq!(syn.iter().collect::<Vec<_>>(), vec![id(&m, &[0, 0, 0])]);
        let full = syn_quotient_ideal(&m, &Congruence::universal(3)).unwrap();
        assert_eq!(full.len(), 3);
        let delta = syn_quotient_ideal(&m, &Congruence::identity(3)).unwrap();
        assert_eq!(delta, syn);
        let perm = Automaton::from_table(&["a"], &[&[1, 0]]).unwrap();
        assert!(syn_ideal(&enumerate_monoid(&perm).unwrap()).is_empty());
    }

    #[test]
    fn principal_ideal_of_swap() {
        let m = enumerate_monoid(&quasi3()).unwrap();
        let swap = id(&m, &[0, 2, 1]);
        // the swap is a unit, so it generates everything
        assert_eq!(principal_ideal(&m, swap).unwrap().len(), 3);
        let reset = id(&m, &[0, 0, 0]);
        assert_eq!(principal_ideal(&m, reset).unwrap().len(), 1);
        assert!(principal_ideal(&m, 7).is_err());
    }

    #[test]
    fn nilpotency_of_chain_ideal() {
        let m = enumerate_monoid(&chain(4)).unwrap();
        let i = ElementSet::from_ids(4, [1, 2, 3]);
        let z = ElementSet::from_ids(4, [3]);
        assert_eq!(is_nilpotent_mod(&m, &i, &z).unwrap(), Some(3));
        assert_eq!(is_nilpotent_mod(&m, &z, &z).unwrap(), Some(1));
        let not_ideal = ElementSet::from_ids(4, [1]);
        assert!(matches!(
            is_nilpotent_mod(&m, &not_ideal, &z),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn swap_escapes_the_zero() {
        let m = enumerate_monoid(&quasi3()).unwrap();
        let swap = id(&m, &[0, 2, 1]);
        let i = principal_ideal(&m, swap).unwrap();
        let z = syn_ideal(&m);
        assert_eq!(is_nilpotent_mod(&m, &i, &z).unwrap(), None);
    }

    #[test]
    fn zero_minimal_of_small_monoids() {
        let m = enumerate_monoid(&quasi3()).unwrap();
        let zm = zero_minimal_ideals(&m, &syn_ideal(&m)).unwrap();
        assert_eq!(zm.len(), 1);
        assert_eq!(zm[0].iter().collect::<Vec<_>>(), vec![0, id(&m, &[0, 2, 1])]);
        let m = enumerate_monoid(&chain(4)).unwrap();
        let zm = zero_minimal_ideals(&m, &syn_ideal(&m)).unwrap();
        assert_eq!(zm.len(), 1);
        assert_eq!(zm[0].iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(
            zero_minimal_ideals(&m, &ElementSet::full(4)),
            Err(Error::NoQuotient)
        );
    }

    #[test]
    fn induced_morphism_matches_direct_action() {
        let a = chain(5);
        let m = enumerate_monoid(&a).unwrap();
        let s = principal_congruence(&a, 0, 1).unwrap();
        let phi = induced_morphism(&m, &a, &s, 1000).unwrap();
        for e in 0..m.len() {
            let direct = phi.induced_transformation(m.element(e));
            assert_eq!(phi.target.element(phi.image(e)), &direct);
        }
        assert_eq!(phi.image_set().len(), phi.target.len());
    }
}
