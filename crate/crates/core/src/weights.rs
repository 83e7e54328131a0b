//! p-radical subgroups, p-weights and their orbits, and the Alperin counts.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::arith::is_prime;
use crate::blocks::{block_distribution, block_induction, l_count, pregular_class_count, BlockSystem};
use crate::chartab::{product, ClassFunction};
use crate::error::{Error, Result};
use crate::ffield::FpEmbedding;
use crate::group::{Caps, PermGroup};
use crate::perm::Perm;
use crate::section::Section;

/// Subgroups of the p-group `p_group`, found by iterated closure.
pub fn subgroups_of_p_group(p_group: &PermGroup, caps: &Caps) -> Result<Vec<PermGroup>> {
    if p_group.order() > caps.max_sylow {
        return Err(Error::CapExceeded {
            what: "Sylow subgroup order",
            limit: caps.max_sylow,
            actual: p_group.order(),
        });
    }
    let degree = p_group.degree();
    let trivial = PermGroup::trivial(degree);
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    seen.insert(trivial.elements().to_vec());
    let mut found = vec![trivial];
    let mut k = 0;
    while k < found.len() {
        let s = found[k].clone();
        for x in p_group.elements() {
            if s.contains(x) {
                continue;
            }
            let mut gens = s.gens().to_vec();
            gens.push(x.clone());
            let t = PermGroup::new(degree, gens, p_group.order())?;
            if seen.insert(t.elements().to_vec()) {
                found.push(t);
            }
        }
        k += 1;
    }
    Ok(found)
}

/// Representatives (lexicographically least conjugates) of the classes of
/// p-subgroups of `g`, found inside the Sylow subgroup `sylow`.
pub fn p_subgroup_classes(g: &PermGroup, sylow: &PermGroup, caps: &Caps) -> Result<Vec<PermGroup>> {
    let mut reps: Vec<Vec<Perm>> = Vec::new();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    for s in subgroups_of_p_group(sylow, caps)? {
        let (canon, _) = g.canonical_conjugate(&s);
        if seen.insert(canon.clone()) {
            reps.push(canon);
        }
    }
    reps.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    reps.into_iter()
        .map(|els| PermGroup::from_closed_set(g.degree(), els))
        .collect()
}

pub fn is_radical(g: &PermGroup, q: &PermGroup, p: u64) -> Result<bool> {
    let n = g.normalizer(q);
    Ok(n.p_core(p)?.order() == q.order())
}

/// `p_radical_subgroups`: class representatives of p-radical subgroups.
pub fn p_radical_subgroups(g: &PermGroup, p: u64, caps: &Caps) -> Result<Vec<PermGroup>> {
    let sylow = g.sylow(p)?;
    radicals_in(g, &sylow, p, caps)
}

fn radicals_in(g: &PermGroup, sylow: &PermGroup, p: u64, caps: &Caps) -> Result<Vec<PermGroup>> {
    let mut out = Vec::new();
    for q in p_subgroup_classes(g, sylow, caps)? {
        if is_radical(g, &q, p)? {
            out.push(q);
        }
    }
    Ok(out)
}

/// A radical subgroup with its normalizer and the section `N_G(Q)/Q`.
#[derive(Clone, Debug)]
pub struct Radical {
    pub q: PermGroup,
    pub normalizer: PermGroup,
    pub section: Section,
    /// `N_G(Q)` as a section with trivial kernel.
    pub local: Section,
    pub local_blocks: BlockSystem,
}

/// The G-orbit of a weight `(Q, θ)`: `Q` is the radical with index `radical`
/// and `θ` the irreducible character of `N_G(Q)/Q` with index `theta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightOrbit {
    pub radical: usize,
    pub theta: usize,
}

/// All p-weights of a group up to conjugacy, with the data needed for
/// block and central-character questions.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    pub p: u64,
    pub group: Section,
    pub blocks: BlockSystem,
    pub radicals: Vec<Radical>,
    pub orbits: Vec<WeightOrbit>,
    embedding: FpEmbedding,
    caps: Caps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlperinReport {
    pub weights: usize,
    pub pregular: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCount {
    pub block: usize,
    pub weights: usize,
    pub brauer: usize,
    pub pass: bool,
}

impl WeightSystem {
    /// Weights of `g`; `master` is a multiple of the exponent of every group
    /// whose blocks will be compared with these.
    pub fn new(g: &PermGroup, p: u64, master: u64, caps: &Caps) -> Result<Self> {
        let sylow = g.sylow(p)?;
        Self::with_sylow(g, p, master, &sylow, caps)
    }

    pub fn with_sylow(
        g: &PermGroup,
        p: u64,
        master: u64,
        sylow: &PermGroup,
        caps: &Caps,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let embedding = FpEmbedding::new(p, master)?;
        let group = Section::whole(g)?;
        let blocks = block_distribution(group.table(), p, &embedding)?;
        let mut radicals = Vec::new();
        let mut orbits = Vec::new();
        for q in radicals_in(g, sylow, p, caps)? {
            let normalizer = g.normalizer(&q);
            let section = Section::new(&normalizer, &q)?;
            let dz = section.dz(p);
            if dz.is_empty() {
                continue;
            }
            let local = Section::whole(&normalizer)?;
            let local_blocks = block_distribution(local.table(), p, &embedding)?;
            for theta in dz {
                orbits.push(WeightOrbit {
                    radical: radicals.len(),
                    theta,
                });
            }
            radicals.push(Radical {
                q,
                normalizer,
                section,
                local,
                local_blocks,
            });
        }
        Ok(WeightSystem {
            p,
            group,
            blocks,
            radicals,
            orbits,
            embedding,
            caps: *caps,
        })
    }

    pub fn embedding(&self) -> &FpEmbedding {
        &self.embedding
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn g(&self) -> &PermGroup {
        self.group.top()
    }

    pub fn orbit_index(&self, w: &WeightOrbit) -> Option<usize> {
        self.orbits.iter().position(|o| o == w)
    }

    pub fn radical(&self, w: &WeightOrbit) -> &Radical {
        &self.radicals[w.radical]
    }

    pub fn theta(&self, w: &WeightOrbit) -> &ClassFunction {
        self.radicals[w.radical].section.chi(w.theta)
    }

    pub fn theta_degree(&self, w: &WeightOrbit) -> u64 {
        self.radicals[w.radical].section.table().degree(w.theta)
    }

    /// Size of the G-orbit: the stabilizer of `(Q, θ)` is `N_G(Q)`.
    pub fn orbit_size(&self, w: &WeightOrbit) -> u64 {
        self.g().order() / self.radicals[w.radical].normalizer.order()
    }

    /// Locates the orbit of an arbitrary weight `(q, θ)` given as a character
    /// of the section `sec = N_G(q)/q`. Returns `None` when `(q, θ)` is not a weight.
    pub fn canonicalize(&self, sec: &Section, theta: &ClassFunction) -> Result<Option<WeightOrbit>> {
        let q = sec.kernel();
        for (i, r) in self.radicals.iter().enumerate() {
            if r.q.order() != q.order() {
                continue;
            }
            let Some(g) = self.g().conjugating_element(&r.q, q) else {
                continue;
            };
            // r.q^g = q, so θ transports back to r.q as y ↦ θ(g⁻¹ y g)
            let moved = r.section.pull(sec, theta, Some(&g.inverse()))?;
            return Ok(r.section.index_of(&moved).and_then(|t| {
                let w = WeightOrbit { radical: i, theta: t };
                self.orbit_index(&w).map(|_| w)
            }));
        }
        Ok(None)
    }

    /// `lin_action`: `μ.(Q, θ) = (Q, θ·μ̄)` for `μ` a linear character of
    /// p'-order (an index into the irreducibles of the group).
    pub fn lin_action(&self, mu: usize, w: &WeightOrbit) -> Result<WeightOrbit> {
        let t = self.group.table();
        if t.degree(mu) != 1 || t.linear_order(mu).is_multiple_of(self.p) {
            return Err(Error::NotPPrime(format!("character {mu} is not linear of p'-order")));
        }
        let r = &self.radicals[w.radical];
        let mu_bar = r.section.pull(&self.group, t.chi(mu), None)?;
        let twisted = product(self.theta(w), &mu_bar);
        let theta = r
            .section
            .index_of(&twisted)
            .ok_or_else(|| Error::Internal("twisted character is not irreducible".into()))?;
        Ok(WeightOrbit { radical: w.radical, theta })
    }

    /// `block_of_weight`: `bl(θ')^G` for the inflation `θ'` of `θ` to `N_G(Q)`.
    pub fn block_of_weight(&self, w: &WeightOrbit) -> Result<usize> {
        let r = &self.radicals[w.radical];
        let inflated = r.local.pull(&r.section, self.theta(w), None)?;
        let chi = r
            .local
            .index_of(&inflated)
            .ok_or_else(|| Error::Internal("inflation is not irreducible".into()))?;
        let b = &r.local_blocks.blocks[r.local_blocks.block_of[chi]];
        block_induction(&r.local, b, &self.group, &self.blocks)?
            .ok_or_else(|| Error::Internal("induced block is undefined".into()))
    }

    /// `Alp(B)` for every block, as orbit indices.
    pub fn alp_by_block(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.blocks.blocks.len()];
        for (i, w) in self.orbits.iter().enumerate() {
            out[self.block_of_weight(w)?].push(i);
        }
        Ok(out)
    }

    /// `Alp(G | ν)` for `ν` a linear character of p'-order of `Z(G)`, given
    /// by its index in the table of `z`.
    pub fn alp_over_central(&self, z: &Section, nu: usize) -> Result<Vec<usize>> {
        let zt = z.table();
        if zt.degree(nu) != 1 || zt.linear_order(nu).is_multiple_of(self.p) {
            return Err(Error::NotPPrime(format!("central character {nu} has order divisible by p")));
        }
        let mut out = Vec::new();
        for (i, w) in self.orbits.iter().enumerate() {
            let r = &self.radicals[w.radical];
            if !z.top().is_subgroup_of(&r.normalizer) {
                return Err(Error::Internal("center is not inside N_G(Q)".into()));
            }
            let res = z.pull(&r.section, self.theta(w), None)?;
            let want: ClassFunction = zt.chi(nu).iter().map(|v| v.scale(self.theta_degree(w) as i64)).collect();
            if res == want {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn alperin_check(&self) -> AlperinReport {
        let pregular = pregular_class_count(self.group.table(), self.p);
        AlperinReport {
            weights: self.orbits.len(),
            pregular,
            pass: pregular == self.orbits.len(),
        }
    }

    pub fn blockwise_check(&self) -> Result<Vec<BlockCount>> {
        let alp = self.alp_by_block()?;
        self.blocks
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let brauer = l_count(self.group.table(), b)?;
                Ok(BlockCount {
                    block: i,
                    weights: alp[i].len(),
                    brauer,
                    pass: alp[i].len() == brauer,
                })
            })
            .collect()
    }

    /// Orbit counts per class of p-subgroups, radical or not.
    pub fn weights_per_p_subgroup(&self) -> Result<Vec<(PermGroup, usize)>> {
        let g = self.g();
        let sylow = g.sylow(self.p)?;
        p_subgroup_classes(g, &sylow, &self.caps)?
            .into_iter()
            .map(|q| {
                let sec = Section::new(&g.normalizer(&q), &q)?;
                let count = sec.dz(self.p).len();
                Ok((q, count))
            })
            .collect()
    }

    /// Map from orbit to index, for callers building lookup tables.
    pub fn orbit_lookup(&self) -> HashMap<WeightOrbit, usize> {
        self.orbits.iter().enumerate().map(|(i, w)| (*w, i)).collect()
    }
}
