//! Deterministic Schreier–Sims: base and strong generating set.

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// `transversal[x] = u` with `point^u = x`, for `x` in the basic orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

/// A base with strong generators and basic transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    base: Vec<usize>,
    sgs: Vec<Perm>,
    levels: Vec<Level>,
}

enum Sift {
    Member,
    Fails(usize, Perm),
}

impl StabChain {
    /// Builds the chain, failing as soon as the group provably exceeds `cap`.
    pub fn new(degree: usize, gens: &[Perm], cap: u64) -> Result<Self> {
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            sgs: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if g.is_identity() {
                continue;
            }
            if chain.base.iter().all(|&b| g.apply(b) == b) {
                chain.base.push(g.first_moved_point().unwrap());
            }
            chain.sgs.push(g.clone());
        }
        chain.rebuild_levels(0);
        chain.check_cap(cap)?;
        if chain.base.is_empty() {
            return Ok(chain);
        }
        let mut i = chain.base.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let gens_i = chain.level_gens(lvl);
            let orbit = chain.levels[lvl].orbit.clone();
            for &x in &orbit {
                let ux = chain.levels[lvl].transversal[x].clone().unwrap();
                for s in &gens_i {
                    let y = s.apply(x);
                    let uy = chain.levels[lvl].transversal[y].as_ref().unwrap();
                    let h = ux.mul(s).mul(&uy.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    if let Sift::Fails(j, r) = chain.sift(h, lvl + 1) {
                        if j == chain.base.len() {
                            chain.base.push(r.first_moved_point().unwrap());
                        }
                        chain.sgs.push(r);
                        chain.rebuild_levels(lvl + 1);
                        chain.check_cap(cap)?;
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
        Ok(chain)
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let mut prod: u128 = 1;
        for l in &self.levels {
            prod *= l.orbit.len() as u128;
            if prod > cap as u128 {
                return Err(Error::CapExceeded {
                    what: "group order",
                    limit: cap,
                    actual: prod.min(u64::MAX as u128) as u64,
                });
            }
        }
        Ok(())
    }

    fn level_gens(&self, lvl: usize) -> Vec<Perm> {
        let fixed = &self.base[..lvl];
        self.sgs
            .iter()
            .filter(|s| fixed.iter().all(|&b| s.apply(b) == b))
            .cloned()
            .collect()
    }

    fn rebuild_levels(&mut self, from: usize) {
        self.levels.truncate(from.min(self.levels.len()));
        for lvl in self.levels.len()..self.base.len() {
            let point = self.base[lvl];
            let gens = self.level_gens(lvl);
            let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
            transversal[point] = Some(Perm::identity(self.degree));
            let mut orbit = vec![point];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                let ux = transversal[x].clone().unwrap();
                for s in &gens {
                    let y = s.apply(x);
                    if transversal[y].is_none() {
                        transversal[y] = Some(ux.mul(s));
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            self.levels.push(Level {
                point,
                transversal,
                orbit,
            });
        }
    }

    fn sift(&self, mut h: Perm, from: usize) -> Sift {
        for (k, lvl) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(lvl.point);
            match &lvl.transversal[x] {
                None => return Sift::Fails(k, h),
                Some(u) => h = h.mul(&u.inverse()),
            }
        }
        if h.is_identity() {
            Sift::Member
        } else {
            Sift::Fails(self.levels.len(), h)
        }
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && matches!(self.sift(g.clone(), 0), Sift::Member)
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.sgs
    }

    /// All elements, as products of transversal elements, in sorted order.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        // G = G^(1) U_0, so extend from the bottom level upward.
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for h in &out {
                for &x in &lvl.orbit {
                    next.push(h.mul(lvl.transversal[x].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(gens: &[Perm], n: usize) -> HashSet<Perm> {
        let mut set = HashSet::new();
        let id = Perm::identity(n);
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn orders_match_closure() {
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (3, vec!["(1 2 3)", "(1 2)"]),
            (5, vec!["(1 2 3 4 5)", "(1 2)"]),
            (5, vec!["(1 2 3)", "(3 4 5)"]),
            (4, vec!["(1 2)(3 4)", "(1 3)(2 4)"]),
            (6, vec!["(1 2 3 4 5 6)"]),
            (7, vec!["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
        ];
        for (n, gs) in cases {
            let gens: Vec<Perm> = gs.iter().map(|s| Perm::parse(n, s).unwrap()).collect();
            let chain = StabChain::new(n, &gens, 1_000_000).unwrap();
            let brute = closure(&gens, n);
            assert_eq!(chain.order(), brute.len() as u64);
            let els = chain.elements();
            assert_eq!(els.len(), brute.len());
            assert!(els.iter().all(|e| brute.contains(e) && chain.contains(e)));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![
            Perm::parse(10, "(1 2 3 4 5 6 7 8 9 10)").unwrap(),
            Perm::parse(10, "(1 2)").unwrap(),
        ];
        assert!(matches!(
            StabChain::new(10, &gens, 200_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn non_members_rejected() {
        let gens = vec![Perm::parse(4, "(1 2 3)").unwrap()];
        let chain = StabChain::new(4, &gens, 100).unwrap();
        assert!(!chain.contains(&Perm::parse(4, "(1 2)").unwrap()));
        assert!(chain.contains(&Perm::parse(4, "(1 3 2)").unwrap()));
    }
}
