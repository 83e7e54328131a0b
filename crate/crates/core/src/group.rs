//! Permutation groups: membership, element enumeration, classes,
//! centralizers, normalizers, Sylow subgroups and p-cores.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::{is_prime, p_part};
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_MAX_ORDER: u64 = 200_000;
pub const DEFAULT_MAX_SYLOW: u64 = 1 << 10;

/// Configurable size limits. Exceeding one is an error, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_order: u64,
    pub max_sylow: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: DEFAULT_MAX_ORDER,
            max_sylow: DEFAULT_MAX_SYLOW,
        }
    }
}

/// A conjugacy class with its least element as representative.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: Perm,
    pub size: u64,
    pub element_order: u64,
    pub elements: Vec<Perm>,
}

struct Inner {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    elements: OnceLock<Vec<Perm>>,
    element_set: OnceLock<HashSet<Perm>>,
    classes: OnceLock<Vec<ConjClass>>,
}

#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(order {}, gens {:?})", self.order(), self.gens())
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree()
            && self.order() == other.order()
            && other.gens().iter().all(|g| self.contains(g))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// `group_from_generators`: the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: Vec<Perm>, cap: u64) -> Result<Self> {
        let chain = StabChain::new(degree, &gens, cap)?;
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(Self::from_parts(degree, gens, chain))
    }

    fn from_parts(degree: usize, gens: Vec<Perm>, chain: StabChain) -> Self {
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                gens,
                chain,
                elements: OnceLock::new(),
                element_set: OnceLock::new(),
                classes: OnceLock::new(),
            }),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, vec![], 1).expect("trivial group")
    }

    /// Subgroup generated by `gens`, all of which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::NotSubgroup(format!("{g} is not in the group")));
            }
        }
        let h = Self::new(self.degree(), gens, self.order())?;
        self.assert_lagrange(&h);
        Ok(h)
    }

    /// Builds a group from a set of elements known to be closed under
    /// multiplication, choosing a small generating set greedily.
    pub fn from_closed_set(degree: usize, mut elements: Vec<Perm>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let target = elements.len() as u64;
        let mut gens: Vec<Perm> = Vec::new();
        let mut chain = StabChain::new(degree, &gens, target)?;
        for e in &elements {
            if chain.order() == target {
                break;
            }
            if !chain.contains(e) {
                gens.push(e.clone());
                chain = StabChain::new(degree, &gens, target).map_err(|_| {
                    Error::NotSubgroup("element set is not closed under products".into())
                })?;
            }
        }
        if chain.order() != target {
            return Err(Error::NotSubgroup(
                "element set is not closed under products".into(),
            ));
        }
        let g = Self::from_parts(degree, gens, chain);
        let _ = g.inner.elements.set(elements);
        Ok(g)
    }

    fn assert_lagrange(&self, sub: &PermGroup) {
        assert_eq!(
            self.order() % sub.order(),
            0,
            "Lagrange violated: |H| = {} does not divide |G| = {}",
            sub.order(),
            self.order()
        );
    }

    /// Subgroup of the elements satisfying `pred`; the predicate must cut out a subgroup.
    pub fn filter_subgroup(&self, pred: impl Fn(&Perm) -> bool) -> Result<Self> {
        let els: Vec<Perm> = self.elements().iter().filter(|g| pred(g)).cloned().collect();
        let h = Self::from_closed_set(self.degree(), els)?;
        self.assert_lagrange(&h);
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.inner.gens
    }

    pub fn order(&self) -> u64 {
        self.inner.chain.order()
    }

    pub fn chain(&self) -> &StabChain {
        &self.inner.chain
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if let Some(set) = self.inner.element_set.get() {
            return set.contains(g);
        }
        self.inner.chain.contains(g)
    }

    /// Sorted element list (lexicographic image order).
    pub fn elements(&self) -> &[Perm] {
        self.inner.elements.get_or_init(|| self.inner.chain.elements())
    }

    pub fn element_set(&self) -> &HashSet<Perm> {
        self.inner
            .element_set
            .get_or_init(|| self.elements().iter().cloned().collect())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && other.order().is_multiple_of(self.order())
            && self.gens().iter().all(|g| other.contains(g))
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .gens()
                .iter()
                .all(|g| self.gens().iter().all(|h| self.contains(&h.conj(g))))
    }

    pub fn normalizes(&self, g: &Perm) -> bool {
        self.gens().iter().all(|h| self.contains(&h.conj(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let gs = self.gens();
        gs.iter()
            .all(|a| gs.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens: Vec<Perm> = self.gens().iter().map(|h| h.conj(g)).collect();
        Self::new(self.degree(), gens, self.order()).expect("conjugate has the same order")
    }

    /// ⟨self, other⟩.
    pub fn join(&self, other: &PermGroup, cap: u64) -> Result<PermGroup> {
        let mut gens = self.gens().to_vec();
        gens.extend(other.gens().iter().cloned());
        Self::new(self.degree(), gens, cap)
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let h = small
            .filter_subgroup(|g| big.contains(g))
            .expect("intersection is a subgroup");
        self.assert_lagrange(&h);
        other.assert_lagrange(&h);
        h
    }

    pub fn centralizer(&self, x: &Perm) -> PermGroup {
        self.filter_subgroup(|g| g.mul(x) == x.mul(g))
            .expect("centralizer is a subgroup")
    }

    /// Elements of `self` commuting with every generator of `h`.
    pub fn centralizer_of(&self, h: &PermGroup) -> PermGroup {
        self.filter_subgroup(|g| h.gens().iter().all(|x| g.mul(x) == x.mul(g)))
            .expect("centralizer is a subgroup")
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer_of(self)
    }

    /// `N_self(h)`, by filtering on generator images.
    pub fn normalizer(&self, h: &PermGroup) -> PermGroup {
        self.filter_subgroup(|g| h.normalizes(g))
            .expect("normalizer is a subgroup")
    }

    pub fn exponent(&self) -> u64 {
        self.conjugacy_classes()
            .iter()
            .fold(1, |acc, c| crate::arith::lcm(acc, c.element_order))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order(), p) == self.order()
    }

    /// Derived subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut gens = Vec::new();
        for a in self.gens() {
            for b in self.gens() {
                let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        self.normal_closure(gens)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, mut gens: Vec<Perm>) -> PermGroup {
        loop {
            let h = Self::new(self.degree(), gens.clone(), self.order()).expect("subgroup");
            let mut extra = Vec::new();
            for x in h.gens() {
                for g in self.gens() {
                    let y = x.conj(g);
                    if !h.contains(&y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                self.assert_lagrange(&h);
                return h;
            }
            gens = h.gens().to_vec();
            gens.extend(extra);
        }
    }

    /// Conjugacy classes: identity first, then ordered by (element order, size, representative).
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        self.inner.classes.get_or_init(|| {
            let mut seen: HashSet<Perm> = HashSet::with_capacity(self.order() as usize);
            let mut classes = Vec::new();
            for x in self.elements() {
                if seen.contains(x) {
                    continue;
                }
                let mut members = vec![x.clone()];
                seen.insert(x.clone());
                let mut k = 0;
                while k < members.len() {
                    let y = members[k].clone();
                    for g in self.gens() {
                        let z = y.conj(g);
                        if seen.insert(z.clone()) {
                            members.push(z);
                        }
                    }
                    k += 1;
                }
                members.sort();
                classes.push(ConjClass {
                    rep: members[0].clone(),
                    size: members.len() as u64,
                    element_order: x.order(),
                    elements: members,
                });
            }
            classes.sort_by(|a, b| {
                (a.element_order, a.size, &a.rep).cmp(&(b.element_order, b.size, &b.rep))
            });
            classes
        })
    }

    /// `sylow_p`: grows a p-subgroup inside its normalizer until it has order |G|_p.
    pub fn sylow(&self, p: u64) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        self.sylow_containing(p, &Self::trivial(self.degree()))
    }

    /// A Sylow p-subgroup containing the p-subgroup `start`.
    pub fn sylow_containing(&self, p: u64, start: &PermGroup) -> Result<PermGroup> {
        let target = p_part(self.order(), p);
        let mut pg = start.clone();
        while pg.order() < target {
            let next = self
                .elements()
                .iter()
                .find(|g| {
                    !pg.contains(g) && p_part(g.order(), p) == g.order() && pg.normalizes(g)
                })
                .cloned()
                .ok_or_else(|| Error::Internal("no p-element in normalizer".into()))?;
            let mut gens = pg.gens().to_vec();
            gens.push(next);
            pg = Self::new(self.degree(), gens, target)?;
        }
        self.assert_lagrange(&pg);
        Ok(pg)
    }

    /// `O_p(G)`: the core of a Sylow p-subgroup.
    pub fn p_core(&self, p: u64) -> Result<PermGroup> {
        let sylow = self.sylow(p)?;
        let mut set: Vec<Perm> = sylow.elements().to_vec();
        loop {
            let s: HashSet<&Perm> = set.iter().collect();
            let next: Vec<Perm> = set
                .iter()
                .filter(|x| self.gens().iter().all(|g| s.contains(&x.conj(g))))
                .cloned()
                .collect();
            if next.len() == set.len() {
                break;
            }
            set = next;
        }
        let core = Self::from_closed_set(self.degree(), set)?;
        self.assert_lagrange(&core);
        Ok(core)
    }

    /// `subgroup_conjugacy`: some `g` in `self` with `h1^g = h2`.
    pub fn conjugating_element(&self, h1: &PermGroup, h2: &PermGroup) -> Option<Perm> {
        if h1.order() != h2.order() {
            return None;
        }
        let target = h2.element_set();
        self.elements()
            .iter()
            .find(|g| h1.gens().iter().all(|x| target.contains(&x.conj(g))))
            .cloned()
    }

    /// Lexicographically least conjugate of `h` (as a sorted element list)
    /// and an element conjugating `h` onto it.
    pub fn canonical_conjugate(&self, h: &PermGroup) -> (Vec<Perm>, Perm) {
        let mut best: Option<(Vec<Perm>, Perm)> = None;
        let mut seen: HashSet<Vec<Perm>> = HashSet::new();
        for g in self.elements() {
            let mut els: Vec<Perm> = h.elements().iter().map(|x| x.conj(g)).collect();
            els.sort();
            if !seen.insert(els.clone()) {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _)| els < *b) {
                best = Some((els, g.clone()));
            }
        }
        best.expect("group is non-empty")
    }

    /// Index map from element to position in `elements()`.
    pub fn element_index(&self) -> HashMap<Perm, usize> {
        self.elements()
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn grp(n: usize, gens: &[&str]) -> PermGroup {
        let gens = gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect();
        PermGroup::new(n, gens, DEFAULT_MAX_ORDER).unwrap()
    }

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(grp(3, &["(1 2 3)", "(1 2)"]).order(), 6);
        assert_eq!(grp(3, &["()"]).order(), 1);
        assert_eq!(grp(5, &["(1 2 3 4 5)", "(1 2)"]).order(), 120);
    }

    #[test]
    fn classes() {
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let sizes: Vec<u64> = s3.conjugacy_classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let c6 = grp(6, &["(1 2 3 4 5 6)"]);
        assert_eq!(c6.conjugacy_classes().len(), 6);
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert_eq!(s5.conjugacy_classes().len(), 7);
        for c in s5.conjugacy_classes() {
            assert_eq!(c.size * s5.centralizer(&c.rep).order(), 120);
            assert_eq!(c.rep, c.elements[0]);
        }
    }

    #[test]
    fn normalizers_and_centralizers() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = s4
            .subgroup(vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")])
            .unwrap();
        assert_eq!(s4.normalizer(&v4).order(), 24);
        assert_eq!(s4.centralizer(&s4.identity()).order(), 24);
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let t = s3.subgroup(vec![p(3, "(1 2)")]).unwrap();
        assert_eq!(s3.normalizer(&t), t);
    }

    #[test]
    fn sylow_and_core() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        assert_eq!(s4.sylow(2).unwrap().order(), 8);
        let core = s4.p_core(2).unwrap();
        assert_eq!(core.order(), 4);
        assert!(core.is_normal_in(&s4));
        let a5 = grp(5, &["(1 2 3)", "(3 4 5)"]);
        assert_eq!(a5.p_core(2).unwrap().order(), 1);
        assert!(s4.sylow(4).is_err());
    }

    #[test]
    fn conjugacy_of_subgroups() {
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let h1 = s3.subgroup(vec![p(3, "(1 2)")]).unwrap();
        let h2 = s3.subgroup(vec![p(3, "(1 3)")]).unwrap();
        let g = s3.conjugating_element(&h1, &h2).unwrap();
        assert_eq!(h1.conjugate(&g), h2);
        assert!(s3.conjugating_element(&h1, &h1).is_some());
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = s4
            .subgroup(vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")])
            .unwrap();
        let other = s4.subgroup(vec![p(4, "(1 2)"), p(4, "(3 4)")]).unwrap();
        assert!(s4.conjugating_element(&v4, &other).is_none());
    }

    #[test]
    fn derived() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        assert_eq!(s4.derived_subgroup().order(), 12);
        let a5 = grp(5, &["(1 2 3)", "(3 4 5)"]);
        assert_eq!(a5.derived_subgroup().order(), 60);
    }

    #[test]
    fn closed_set_rejects_non_subgroup() {
        let els = vec![Perm::identity(3), p(3, "(1 2)"), p(3, "(1 3)")];
        assert!(PermGroup::from_closed_set(3, els).is_err());
    }
}
