//! Homomorphisms between permutation groups, quotients on cosets, and
//! semidirect products with an abstractly given acting group.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A homomorphism given by generator images, verified on the whole Cayley graph.
#[derive(Clone)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    gens: Vec<Perm>,
    images: Vec<Perm>,
    map: Arc<OnceLock<HashMap<Perm, Perm>>>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHom")
            .field("gens", &self.gens)
            .field("images", &self.images)
            .finish()
    }
}

impl GroupHom {
    pub fn new(
        source: PermGroup,
        target: PermGroup,
        gens: Vec<Perm>,
        images: Vec<Perm>,
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::NotHomomorphism("generator/image count mismatch".into()));
        }
        for g in &gens {
            if !source.contains(g) {
                return Err(Error::NotHomomorphism(format!("{g} not in source")));
            }
        }
        for x in &images {
            if !target.contains(x) {
                return Err(Error::NotHomomorphism(format!("{x} not in target")));
            }
        }
        let probe = PermGroup::new(source.degree(), gens.clone(), source.order())?;
        if probe.order() != source.order() {
            return Err(Error::NotHomomorphism("generators do not generate the source".into()));
        }
        let hom = GroupHom {
            source,
            target,
            gens,
            images,
            map: Arc::new(OnceLock::new()),
        };
        hom.build_map()?;
        Ok(hom)
    }

    fn build_map(&self) -> Result<()> {
        let mut map: HashMap<Perm, Perm> = HashMap::with_capacity(self.source.order() as usize);
        let id = self.source.identity();
        map.insert(id.clone(), self.target.identity());
        let mut queue = vec![id];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k].clone();
            let fx = map[&x].clone();
            for (s, fs) in self.gens.iter().zip(&self.images) {
                let y = x.mul(s);
                let fy = fx.mul(fs);
                match map.get(&y) {
                    Some(prev) if *prev != fy => {
                        return Err(Error::NotHomomorphism(format!(
                            "relation violated at {y}: {prev} vs {fy}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        map.insert(y.clone(), fy);
                        queue.push(y);
                    }
                }
            }
            k += 1;
        }
        let _ = self.map.set(map);
        Ok(())
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.images
    }

    /// Image of an element of the source. Panics on elements outside the source.
    pub fn apply(&self, g: &Perm) -> Perm {
        self.map.get().expect("map built in constructor")[g].clone()
    }

    pub fn try_apply(&self, g: &Perm) -> Option<Perm> {
        self.map.get().and_then(|m| m.get(g).cloned())
    }

    pub fn kernel(&self) -> PermGroup {
        self.source
            .filter_subgroup(|g| self.apply(g).is_identity())
            .expect("kernel is a subgroup")
    }

    pub fn image(&self) -> PermGroup {
        self.target
            .subgroup(self.images.clone())
            .expect("images lie in the target")
    }

    pub fn is_bijective(&self) -> bool {
        self.image().order() == self.target.order() && self.source.order() == self.target.order()
    }
}

/// `quotient_group`: the action of `g` on the right cosets of normal `n`.
pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, GroupHom)> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("quotient by a non-normal subgroup".into()));
    }
    if n.is_trivial() {
        let hom = GroupHom::new(g.clone(), g.clone(), g.gens().to_vec(), g.gens().to_vec())?;
        return Ok((g.clone(), hom));
    }
    let mut coset_of: HashMap<Perm, usize> = HashMap::with_capacity(g.order() as usize);
    let mut reps: Vec<Perm> = Vec::new();
    for x in g.elements() {
        if coset_of.contains_key(x) {
            continue;
        }
        let id = reps.len();
        reps.push(x.clone());
        for m in n.elements() {
            coset_of.insert(m.mul(x), id);
        }
    }
    let k = reps.len();
    let act = |s: &Perm| -> Perm {
        let images: Vec<usize> = reps.iter().map(|r| coset_of[&r.mul(s)]).collect();
        Perm::from_images(images).expect("coset action is a permutation")
    };
    let images: Vec<Perm> = g.gens().iter().map(act).collect();
    let q = PermGroup::new(k, images.clone(), k as u64 * k as u64)?;
    if q.order() * n.order() != g.order() {
        return Err(Error::Internal("coset action is not faithful on G/N".into()));
    }
    let hom = GroupHom::new(g.clone(), q.clone(), g.gens().to_vec(), images)?;
    Ok((q, hom))
}

/// A finite group `E` given by its multiplication table, acting on `H`
/// through automorphisms attached to generators of `E`.
///
/// Automorphisms compose as `α(xy) = α(x) ∘ α(y)`.
#[derive(Clone, Debug)]
pub struct AutAction {
    table: Vec<Vec<usize>>,
    acted: PermGroup,
    /// Per element of `E`, images of `acted.gens()`.
    gen_images: Vec<Vec<Perm>>,
    maps: Vec<HashMap<Perm, Perm>>,
}

impl AutAction {
    /// `table[a][b]` is the index of `a·b`; element 0 must be the identity.
    pub fn new(
        acted: PermGroup,
        table: Vec<Vec<usize>>,
        generators: Vec<(usize, Vec<Perm>)>,
    ) -> Result<Self> {
        let k = table.len();
        if k == 0 || table.iter().any(|r| r.len() != k || r.iter().any(|&x| x >= k)) {
            return Err(Error::Parse("multiplication table must be square".into()));
        }
        for a in 0..k {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::Parse("element 0 must be the identity".into()));
            }
            if !(0..k).any(|b| table[a][b] == 0) {
                return Err(Error::Parse(format!("element {a} has no inverse")));
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Parse("multiplication table is not associative".into()));
                    }
                }
            }
        }
        let hgens = acted.gens().to_vec();
        let mut auts: Vec<(usize, GroupHom)> = Vec::new();
        for (e, imgs) in generators {
            if e >= k {
                return Err(Error::Parse(format!("generator index {e} out of range")));
            }
            let hom = GroupHom::new(acted.clone(), acted.clone(), hgens.clone(), imgs)?;
            if !hom.is_bijective() {
                return Err(Error::NotHomomorphism(format!(
                    "map for E-element {e} is not bijective"
                )));
            }
            auts.push((e, hom));
        }
        // α over all of E by breadth-first search in the Cayley graph.
        let id_map: HashMap<Perm, Perm> = acted.elements().iter().map(|h| (h.clone(), h.clone())).collect();
        let mut maps: Vec<Option<HashMap<Perm, Perm>>> = vec![None; k];
        maps[0] = Some(id_map);
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let a = queue[qi];
            qi += 1;
            for (s, hom) in &auts {
                let b = table[a][*s];
                let ma = maps[a].as_ref().unwrap();
                let mb: HashMap<Perm, Perm> = acted
                    .elements()
                    .iter()
                    .map(|h| (h.clone(), ma[&hom.apply(h)].clone()))
                    .collect();
                match &maps[b] {
                    Some(prev) => {
                        if hgens.iter().any(|g| prev[g] != mb[g]) {
                            return Err(Error::NotHomomorphism(
                                "automorphisms inconsistent with the multiplication table".into(),
                            ));
                        }
                    }
                    None => {
                        maps[b] = Some(mb);
                        queue.push(b);
                    }
                }
            }
        }
        if maps.iter().any(|m| m.is_none()) {
            return Err(Error::Parse("generators do not generate E".into()));
        }
        let maps: Vec<HashMap<Perm, Perm>> = maps.into_iter().map(|m| m.unwrap()).collect();
        let gen_images = maps
            .iter()
            .map(|m| hgens.iter().map(|g| m[g].clone()).collect())
            .collect();
        Ok(AutAction {
            table,
            acted,
            gen_images,
            maps,
        })
    }

    /// The trivial action of the trivial group.
    pub fn trivial(acted: PermGroup) -> Self {
        AutAction::new(acted, vec![vec![0]], vec![]).expect("trivial action")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.table.len() == 1
    }

    pub fn acted(&self) -> &PermGroup {
        &self.acted
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn apply(&self, e: usize, h: &Perm) -> Perm {
        self.maps[e][h].clone()
    }

    pub fn generator_images(&self, e: usize) -> &[Perm] {
        &self.gen_images[e]
    }

    /// Generators of `E` (a small generating subset of the table, greedy).
    pub fn generators(&self) -> Vec<usize> {
        let k = self.order();
        let mut gens = Vec::new();
        let mut reached = vec![false; k];
        reached[0] = true;
        for cand in 1..k {
            if reached[cand] {
                continue;
            }
            gens.push(cand);
            let mut queue: Vec<usize> = (0..k).filter(|&a| reached[a]).collect();
            let mut qi = 0;
            while qi < queue.len() {
                let a = queue[qi];
                qi += 1;
                for &s in &gens {
                    let b = self.table[a][s];
                    if !reached[b] {
                        reached[b] = true;
                        queue.push(b);
                    }
                }
            }
        }
        gens
    }
}

/// `H ⋊ E` realized on `|E|` copies of the points of `H`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: PermGroup,
    action: AutAction,
    base_degree: usize,
}

impl SemidirectProduct {
    pub fn embed_h(&self, h: &Perm) -> Perm {
        let n = self.base_degree;
        let k = self.action.order();
        let mut images = vec![0usize; n * k];
        for a in 0..k {
            let ah = self.action.apply(a, h);
            for i in 0..n {
                images[a * n + i] = a * n + ah.apply(i);
            }
        }
        Perm::from_images(images).expect("embedding is a permutation")
    }

    pub fn embed_e(&self, e: usize) -> Perm {
        let n = self.base_degree;
        let k = self.action.order();
        let mut images = vec![0usize; n * k];
        for a in 0..k {
            let b = self.action.mul(a, e);
            for i in 0..n {
                images[a * n + i] = b * n + i;
            }
        }
        Perm::from_images(images).expect("embedding is a permutation")
    }

    pub fn h_subgroup(&self) -> PermGroup {
        let gens = self.action.acted().gens().iter().map(|h| self.embed_h(h)).collect();
        self.group.subgroup(gens).expect("H embeds")
    }

    pub fn e_subgroup(&self) -> PermGroup {
        let gens = (0..self.action.order()).map(|e| self.embed_e(e)).collect();
        self.group.subgroup(gens).expect("E embeds")
    }

    pub fn action(&self) -> &AutAction {
        &self.action
    }
}

/// `semidirect_product(H, A)`.
pub fn semidirect_product(action: &AutAction, cap: u64) -> Result<SemidirectProduct> {
    let h = action.acted();
    let total = h.order() as u128 * action.order() as u128;
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            what: "semidirect product order",
            limit: cap,
            actual: total.min(u64::MAX as u128) as u64,
        });
    }
    let sd = SemidirectProduct {
        group: PermGroup::trivial(1),
        action: action.clone(),
        base_degree: h.degree(),
    };
    let mut gens: Vec<Perm> = h.gens().iter().map(|x| sd.embed_h(x)).collect();
    gens.extend(action.generators().into_iter().map(|e| sd.embed_e(e)));
    let degree = h.degree() * action.order();
    let group = PermGroup::new(degree, gens, cap)?;
    if group.order() as u128 != total {
        return Err(Error::Internal(format!(
            "semidirect product has order {} instead of {}",
            group.order(),
            total
        )));
    }
    Ok(SemidirectProduct { group, ..sd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        let gens = gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect();
        PermGroup::new(n, gens, DEFAULT_MAX_ORDER).unwrap()
    }

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn quotients() {
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let a3 = s3.subgroup(vec![p(3, "(1 2 3)")]).unwrap();
        let (q, hom) = quotient_group(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(hom.kernel(), a3);

        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = s4
            .subgroup(vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")])
            .unwrap();
        let (q, hom) = quotient_group(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.conjugacy_classes().len(), 3);
        assert_eq!(hom.kernel(), v4);

        let (q, _) = quotient_group(&s3, &PermGroup::trivial(3)).unwrap();
        assert_eq!(q.order(), 6);

        let t = s3.subgroup(vec![p(3, "(1 2)")]).unwrap();
        assert!(matches!(quotient_group(&s3, &t), Err(Error::NotNormal(_))));
    }

    #[test]
    fn bad_hom_detected() {
        let c3 = grp(3, &["(1 2 3)"]);
        let c2 = grp(2, &["(1 2)"]);
        let r = GroupHom::new(c3.clone(), c2, c3.gens().to_vec(), vec![p(2, "(1 2)")]);
        assert!(matches!(r, Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn c3_by_c2_inversion() {
        let c3 = grp(3, &["(1 2 3)"]);
        let inv = vec![p(3, "(1 3 2)")];
        let act = AutAction::new(c3, vec![vec![0, 1], vec![1, 0]], vec![(1, inv)]).unwrap();
        let sd = semidirect_product(&act, 1000).unwrap();
        assert_eq!(sd.group.order(), 6);
        assert!(!sd.group.is_abelian());
        // e h e⁻¹ = α_e(h)
        let h = p(3, "(1 2 3)");
        let e = sd.embed_e(1);
        assert_eq!(sd.embed_h(&h).conj(&e.inverse()), sd.embed_h(&act.apply(1, &h)));
    }

    #[test]
    fn trivial_action_gives_h() {
        let c3 = grp(3, &["(1 2 3)"]);
        let sd = semidirect_product(&AutAction::trivial(c3), 1000).unwrap();
        assert_eq!(sd.group.order(), 3);
    }

    #[test]
    fn v4_by_c3_is_a4() {
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        // conjugation by (2 3 4) permutes the involutions cyclically
        let c = p(4, "(2 3 4)");
        let imgs: Vec<Perm> = v4.gens().iter().map(|x| x.conj(&c)).collect();
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let act = AutAction::new(v4, table, vec![(1, imgs)]).unwrap();
        let sd = semidirect_product(&act, 1000).unwrap();
        assert_eq!(sd.group.order(), 12);
        assert_eq!(sd.group.conjugacy_classes().len(), 4);
        assert_eq!(sd.h_subgroup().order(), 4);
        assert!(sd.h_subgroup().is_normal_in(&sd.group));
    }

    #[test]
    fn inconsistent_action_rejected() {
        let c3 = grp(3, &["(1 2 3)"]);
        // C2 acting by an automorphism of order 2 is fine; claiming E = C3 with inversion is not.
        let inv = vec![p(3, "(1 3 2)")];
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(AutAction::new(c3, table, vec![(1, inv)]).is_err());
    }
}
