//! The extendibility hypothesis, the groups `J_G` and the bijection `Π`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{CoverRecord, NormalPair};
use crate::arith::p_part;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::section::Section;
use crate::weights::WeightOrbit;

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    /// `θ` extends to `N_G̃(Q)_θ/Q` for every `G̃`-orbit on `Alp(G)`.
    pub weights_extend: bool,
    /// Every constituent `θ_0` of `θ̃` on `N_G(Q̃)Q̃/Q̃` extends to its stabilizer.
    pub constituents_extend: bool,
    pub agree: bool,
    /// `G̃`-orbits on `Alp(G)` whose character does not extend.
    pub failing_orbits: Vec<usize>,
    /// Weights of `G̃` with a non-extending constituent.
    pub failing_covering: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JgReport {
    pub weight: usize,
    pub j_order: u64,
    pub stabilizer_order: u64,
    /// Fiber of the partition containing the weight equals its `Lin(G̃/G)_{p'}`-orbit.
    pub fiber_is_orbit: bool,
    /// `G̃_{w̄} = (∩ ker μ) ∩ J`.
    pub formula_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PiReport {
    /// `(Lin(G̃/G)_{p'}-orbit on Alp(G̃), G̃-orbit on Alp(G))` pairs.
    pub map: Vec<(Vec<usize>, usize)>,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl PiReport {
    pub fn bijective(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

impl NormalPair {
    fn require_abelian(&self) -> Result<()> {
        if self.quotient_is_abelian() {
            Ok(())
        } else {
            Err(Error::NotNormal("G̃/G is not abelian".into()))
        }
    }

    /// `N_G̃(Q)_θ` for the weight `w` of `G`.
    pub fn theta_stabilizer(&self, w: &WeightOrbit) -> Result<PermGroup> {
        let r = self.small.radical(w);
        self.stabilizer(&self.gt, &r.section, self.small.theta(w))
    }

    /// Whether `θ` extends to `N_G̃(Q)_θ/Q`.
    pub fn weight_extends(&self, w: &WeightOrbit) -> Result<bool> {
        let r = self.small.radical(w);
        let stab = self.theta_stabilizer(w)?;
        let sec = Section::new(&stab, &r.q)?;
        Ok(!sec.extensions_of(&r.section, self.small.theta(w))?.is_empty())
    }

    /// `N_G(Q̃)Q̃/Q̃` for the radical subgroup of the `G̃`-weight `w̃`.
    pub fn inner_local(&self, wt: &WeightOrbit) -> Result<Section> {
        let rt = self.big.radical(wt);
        let mut gens = self.g.normalizer(&rt.q).gens().to_vec();
        gens.extend(rt.q.gens().iter().cloned());
        let top = rt.normalizer.subgroup(gens)?;
        Section::new(&top, &rt.q)
    }

    /// Whether every constituent of `θ̃` on `N_G(Q̃)Q̃/Q̃` extends to its
    /// stabilizer in `N_G̃(Q̃)/Q̃`.
    pub fn constituents_extend(&self, wt: &WeightOrbit) -> Result<bool> {
        let rt = self.big.radical(wt);
        let inner = self.inner_local(wt)?;
        let res = rt.section.restrict(self.big.theta(wt), &inner)?;
        for t0 in 0..inner.num_irr() {
            let chi = inner.chi(t0);
            if inner.inner_product(&res, chi)?.is_zero() {
                continue;
            }
            let stab = rt
                .normalizer
                .filter_subgroup(|x| matches!(inner.is_invariant_under(chi, x), Ok(true)))?;
            let sec = Section::new(&stab, &rt.q)?;
            if sec.extensions_of(&inner, chi)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `check_hypothesis`: the weight-side extendibility conditions.
    pub fn check_hypothesis(&self) -> Result<HypothesisReport> {
        self.require_abelian()?;
        let mut failing_orbits = Vec::new();
        for (i, orbit) in self.gt_orbits.iter().enumerate() {
            if !self.weight_extends(&self.small.orbits[orbit[0]])? {
                failing_orbits.push(i);
            }
        }
        let mut failing_covering = Vec::new();
        for (i, wt) in self.big.orbits.iter().enumerate() {
            if !self.constituents_extend(wt)? {
                failing_covering.push(i);
            }
        }
        let weights_extend = failing_orbits.is_empty();
        let constituents_extend = failing_covering.is_empty();
        Ok(HypothesisReport {
            weights_extend,
            constituents_extend,
            agree: weights_extend == constituents_extend,
            failing_orbits,
            failing_covering,
        })
    }

    /// `G̃_{p'}`: elements whose image in `G̃/G` has p'-order.
    pub fn pprime_part(&self) -> Result<PermGroup> {
        self.require_abelian()?;
        let q = self.quotient_order();
        let m = q / p_part(q, self.p);
        self.gt.filter_subgroup(|x| self.g.contains(&x.pow(m)))
    }

    /// `G̃_{w̄} = G N_G̃(Q)_θ`, the stabilizer of the `G`-orbit `w`.
    pub fn orbit_stabilizer(&self, w: &WeightOrbit) -> Result<PermGroup> {
        self.g.join(&self.theta_stabilizer(w)?, self.caps.max_order)
    }

    /// `J_G(w̃) = G̃_{w̄} G̃_{p'}` for `w̄` the orbit covered by `w̃`.
    pub fn jg_weight(&self, rec: &CoverRecord) -> Result<PermGroup> {
        let w = self.small.orbits[rec.members[0]];
        self.orbit_stabilizer(&w)?.join(&self.pprime_part()?, self.caps.max_order)
    }

    /// `jg_weight` together with both parts of the stabilizer lemma.
    pub fn stabilizer_formula_check(&self, rec: &CoverRecord, records: &[CoverRecord]) -> Result<JgReport> {
        let j = self.jg_weight(rec)?;
        let w = self.small.orbits[rec.members[0]];
        let stab = self.orbit_stabilizer(&w)?;
        let lin = self.lin_pprime()?;
        let wt = self.big.orbits[rec.covering];
        let mut orbit = BTreeSet::new();
        let mut fixing = Vec::new();
        for &mu in &lin {
            let moved = self.big.lin_action(mu, &wt)?;
            if moved == wt {
                fixing.push(mu);
            }
            orbit.insert(self.big.orbit_index(&moved).expect("weight of G̃"));
        }
        let fiber: BTreeSet<usize> = records
            .iter()
            .filter(|r| r.covered == rec.covered)
            .map(|r| r.covering)
            .collect();
        let t = self.big.group.table();
        let mut meet = j.clone();
        for mu in fixing {
            let chi = t.chi(mu);
            let kernel = self
                .gt
                .filter_subgroup(|x| t.value_at(chi, x).and_then(|v| v.as_integer()) == Some(1))?;
            meet = meet.intersection(&kernel);
        }
        Ok(JgReport {
            weight: rec.covering,
            j_order: j.order(),
            stabilizer_order: stab.order(),
            fiber_is_orbit: fiber == orbit,
            formula_holds: meet == stab,
        })
    }

    /// `pi_bijection` from the `Lin(G̃/G)_{p'}`-orbits on `Alp(G̃)` to the
    /// `G̃`-orbits on `Alp(G)`.
    pub fn pi_bijection(&self, records: &[CoverRecord]) -> Result<PiReport> {
        self.require_abelian()?;
        let covered: BTreeMap<usize, usize> = records.iter().map(|r| (r.covering, r.covered)).collect();
        let mut map = Vec::new();
        let mut well_defined = true;
        for orbit in self.lin_orbits()? {
            let images: BTreeSet<usize> = orbit.iter().map(|i| covered[i]).collect();
            well_defined &= images.len() == 1;
            map.push((orbit, *images.iter().next().expect("non-empty orbit")));
        }
        let image: BTreeSet<usize> = map.iter().map(|(_, c)| *c).collect();
        Ok(PiReport {
            injective: image.len() == map.len(),
            surjective: image.len() == self.gt_orbits.len(),
            well_defined,
            map,
        })
    }
}
