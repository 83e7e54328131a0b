//! Clifford theory of weights for a normal pair `G ⊴ G̃`, optionally with an
//! outer action `E` on `G̃`.

mod audit;
mod delta;
mod dgn;
mod stabilizers;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::arith::p_part;
use crate::blocks::covers as block_covers;
use crate::chartab::ClassFunction;
use crate::error::{Error, Result};
use crate::group::{Caps, PermGroup};
use crate::hom::{semidirect_product, AutAction};
use crate::perm::Perm;
use crate::section::Section;
use crate::weights::{WeightOrbit, WeightSystem};

pub use audit::{AuditReport, ConditionReport, Verdict};
pub use delta::DeltaReport;
pub use dgn::{DgnFrame, DgnOutcome, DgnResult};
pub use stabilizers::{HypothesisReport, JgReport, PiReport};

/// A normal pair, realized inside the ambient group `X = G̃ ⋊ E`
/// (or `X = G̃` when there is no outer action).
#[derive(Clone, Debug)]
pub struct NormalPair {
    pub p: u64,
    pub g: PermGroup,
    pub gt: PermGroup,
    pub ambient: PermGroup,
    /// The acting group `E` as a complement to `G̃` in the ambient group.
    pub e: PermGroup,
    pub small: WeightSystem,
    pub big: WeightSystem,
    /// `G̃`-orbits on `Alp(G)`, as sorted lists of orbit indices of `small`.
    pub gt_orbits: Vec<Vec<usize>>,
    pub gt_orbit_of: Vec<usize>,
    caps: Caps,
}

/// Per-θ record of which covering conditions held.
#[derive(Clone, Debug, Serialize)]
pub struct CoverTrace {
    pub theta: usize,
    pub theta_degree: u64,
    pub invariant: bool,
    pub defect_group: Option<bool>,
    pub lies_over: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverRecord {
    /// Orbit index in `Alp(G̃)`.
    pub covering: usize,
    /// Index of the covered `G̃`-orbit on `Alp(G)`.
    pub covered: usize,
    /// Orbit indices in `Alp(G)` reached by the covered characters.
    pub members: Vec<usize>,
    pub q_order: u64,
    pub qt_order: u64,
    pub pi_bar_degree: u64,
    pub transcript: Vec<CoverTrace>,
}

impl NormalPair {
    pub fn new(gt: &PermGroup, g: &PermGroup, p: u64, caps: &Caps) -> Result<Self> {
        Self::with_action(gt, g, p, None, caps)
    }

    pub fn with_action(
        gt: &PermGroup,
        g: &PermGroup,
        p: u64,
        action: Option<&AutAction>,
        caps: &Caps,
    ) -> Result<Self> {
        if !g.is_normal_in(gt) {
            return Err(Error::NotNormal("G is not normal in G̃".into()));
        }
        let (ambient, g, gt, e) = match action {
            Some(a) if !a.is_trivial() => {
                if a.acted() != gt {
                    return Err(Error::NotHomomorphism("E must act on G̃".into()));
                }
                let sd = semidirect_product(a, caps.max_order)?;
                let embed = |h: &PermGroup| -> Result<PermGroup> {
                    let gens = h.gens().iter().map(|x| sd.embed_h(x)).collect();
                    PermGroup::new(sd.group.degree(), gens, h.order())
                };
                let g_x = embed(g)?;
                let gt_x = sd.h_subgroup();
                let e_x = sd.e_subgroup();
                for x in e_x.gens() {
                    if !g_x.normalizes(x) {
                        return Err(Error::NotNormal("E does not stabilize G".into()));
                    }
                }
                (sd.group.clone(), g_x, gt_x, e_x)
            }
            _ => (gt.clone(), g.clone(), gt.clone(), PermGroup::trivial(gt.degree())),
        };
        let master = gt.exponent();
        let small = WeightSystem::new(&g, p, master, caps)?;
        let big = WeightSystem::new(&gt, p, master, caps)?;
        let mut pair = NormalPair {
            p,
            g,
            gt,
            ambient,
            e,
            small,
            big,
            gt_orbits: Vec::new(),
            gt_orbit_of: Vec::new(),
            caps: *caps,
        };
        let gens = pair.gt.gens().to_vec();
        let (orbits, orbit_of) = pair.orbits_under(&gens)?;
        pair.gt_orbits = orbits;
        pair.gt_orbit_of = orbit_of;
        Ok(pair)
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn quotient_order(&self) -> u64 {
        self.gt.order() / self.g.order()
    }

    /// Whether `G̃/G` is abelian.
    pub fn quotient_is_abelian(&self) -> bool {
        let gens = self.gt.gens();
        gens.iter().all(|a| {
            gens.iter()
                .all(|b| self.g.contains(&a.inverse().mul(&b.inverse()).mul(a).mul(b)))
        })
    }

    /// The weight `(Q, θ)^x` for `x` in the ambient group, located among the
    /// orbits of `Alp(G)`.
    pub fn act(&self, w: &WeightOrbit, x: &Perm) -> Result<WeightOrbit> {
        let r = self.small.radical(w);
        let target = r.q.conjugate(x);
        for (i, r2) in self.small.radicals.iter().enumerate() {
            let Some(g) = self.g.conjugating_element(&r2.q, &target) else {
                continue;
            };
            let t = x.mul(&g.inverse());
            let moved = r2.section.pull(&r.section, self.small.theta(w), Some(&t))?;
            let theta = r2
                .section
                .index_of(&moved)
                .ok_or_else(|| Error::Internal("conjugate weight character is not irreducible".into()))?;
            return Ok(WeightOrbit { radical: i, theta });
        }
        Err(Error::Internal("conjugate of a radical subgroup is not radical".into()))
    }

    /// Orbits on `Alp(G)` of the group generated by `gens`.
    pub fn orbits_under(&self, gens: &[Perm]) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
        let lookup = self.small.orbit_lookup();
        let n = self.small.orbits.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            orbit_of[start] = id;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let w = self.small.orbits[members[k]];
                for x in gens {
                    let j = lookup[&self.act(&w, x)?];
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort();
            orbits.push(members);
        }
        Ok((orbits, orbit_of))
    }

    /// `N_Y(Q)_θ` for a character `θ` of `N_G(Q)/Q` and `Y` normalizing `G`.
    pub fn stabilizer(&self, y: &PermGroup, n_sec: &Section, theta: &ClassFunction) -> Result<PermGroup> {
        y.normalizer(n_sec.kernel())
            .filter_subgroup(|x| matches!(n_sec.is_invariant_under(theta, x), Ok(true)))
    }

    /// The frame attached to `Q̃` and `Q = Q̃ ∩ G`.
    pub fn frame_for(&self, qt: &PermGroup) -> Result<DgnFrame> {
        let q = qt.intersection(&self.g);
        DgnFrame::new(&self.g, &q, qt, self.p, self.small.embedding())?
            .ok_or_else(|| Error::Internal("Q̃ ∩ G is not normal in Q̃".into()))
    }

    /// The characters `θ ∈ dz(N_G(Q)/Q)` covered by the weight `w̃ = (Q̃, θ̃)`,
    /// for `Q = Q̃ ∩ G`, with the frame and transcript.
    pub fn covered_characters(&self, wt: &WeightOrbit) -> Result<(DgnFrame, Vec<usize>, Vec<CoverTrace>, u64)> {
        let rt = self.big.radical(wt);
        self.covered_by(&rt.section, self.big.theta(wt))
    }

    /// As [`Self::covered_characters`] for an arbitrary pair `(Q̃, θ̃)` given
    /// by the section `N_G̃(Q̃)/Q̃` and a character of it.
    pub fn covered_by(
        &self,
        sec: &Section,
        theta_t: &ClassFunction,
    ) -> Result<(DgnFrame, Vec<usize>, Vec<CoverTrace>, u64)> {
        let frame = self.frame_for(sec.kernel())?;
        let mut covered = Vec::new();
        let mut transcript = Vec::new();
        let mut pi_bar_degree = 0;
        for theta in frame.n_sec.dz(self.p) {
            let chi = frame.n_sec.chi(theta);
            let mut trace = CoverTrace {
                theta,
                theta_degree: frame.n_sec.table().degree(theta),
                invariant: false,
                defect_group: None,
                lies_over: None,
            };
            match frame.correspond(chi)? {
                DgnOutcome::NotInvariant => {}
                DgnOutcome::NotDefectGroup => {
                    trace.invariant = true;
                    trace.defect_group = Some(false);
                }
                DgnOutcome::Found(res) => {
                    trace.invariant = true;
                    trace.defect_group = Some(true);
                    let res_t = sec.restrict(theta_t, &frame.s2)?;
                    let over = !frame.s2.inner_product(&res_t, &res.pi_bar)?.is_zero();
                    trace.lies_over = Some(over);
                    if over {
                        covered.push(theta);
                        pi_bar_degree = res.pi_bar[0].as_integer().unwrap_or(0) as u64;
                    }
                }
            }
            transcript.push(trace);
        }
        Ok((frame, covered, transcript, pi_bar_degree))
    }

    /// `covered_orbit`: the `G̃`-orbit on `Alp(G)` covered by `w̃`, checking
    /// that the covered characters form a single `N_G̃(Q̃)`-orbit.
    pub fn cover_record(&self, wt: &WeightOrbit) -> Result<CoverRecord> {
        let (frame, covered, transcript, pi_bar_degree) = self.covered_characters(wt)?;
        if covered.is_empty() {
            return Err(Error::Internal(format!("weight {wt:?} of G̃ covers no weight of G")));
        }
        let rt = self.big.radical(wt);
        let set: BTreeSet<usize> = covered.iter().copied().collect();
        let mut orbit: BTreeSet<usize> = [covered[0]].into();
        let mut stack = vec![covered[0]];
        while let Some(t) = stack.pop() {
            for x in rt.normalizer.gens() {
                let moved = frame.n_sec.pull(&frame.n_sec, frame.n_sec.chi(t), Some(x))?;
                let j = frame
                    .n_sec
                    .index_of(&moved)
                    .ok_or_else(|| Error::Internal("conjugate character is not irreducible".into()))?;
                if orbit.insert(j) {
                    stack.push(j);
                }
            }
        }
        if orbit != set {
            return Err(Error::Internal(format!(
                "covered characters of {wt:?} are not a single N_G̃(Q̃)-orbit"
            )));
        }
        let mut members = BTreeSet::new();
        for &t in &covered {
            let w = self
                .small
                .canonicalize(&frame.n_sec, frame.n_sec.chi(t))?
                .ok_or_else(|| Error::Internal("covered pair is not a weight of G".into()))?;
            members.insert(self.small.orbit_index(&w).expect("canonical orbit"));
        }
        let classes: BTreeSet<usize> = members.iter().map(|&m| self.gt_orbit_of[m]).collect();
        if classes.len() != 1 {
            return Err(Error::Internal(format!("{wt:?} covers several G̃-orbits")));
        }
        Ok(CoverRecord {
            covering: self.big.orbit_index(wt).expect("weight of G̃"),
            covered: *classes.iter().next().unwrap(),
            members: members.into_iter().collect(),
            q_order: frame.q.order(),
            qt_order: frame.qt.order(),
            pi_bar_degree,
            transcript,
        })
    }

    /// Whether `w̃` covers some representative of the `G`-orbit `w`.
    pub fn covers(&self, wt: &WeightOrbit, w: &WeightOrbit) -> Result<Option<CoverRecord>> {
        let idx = self
            .small
            .orbit_index(w)
            .ok_or_else(|| Error::Internal("not a weight of G".into()))?;
        let rec = self.cover_record(wt)?;
        Ok(rec.members.contains(&idx).then_some(rec))
    }

    /// `clifford_partition`: the covered `G̃`-orbit for every weight orbit of `G̃`.
    pub fn clifford_partition(&self) -> Result<Vec<CoverRecord>> {
        self.big.orbits.iter().map(|wt| self.cover_record(wt)).collect()
    }

    /// Fibers of the partition, indexed by `G̃`-orbit on `Alp(G)`.
    pub fn fibers(records: &[CoverRecord], classes: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); classes];
        for r in records {
            out[r.covered].push(r.covering);
        }
        out
    }

    /// Whether the block of `w̃` covers the block of each covered weight.
    pub fn blocks_consistent(&self, rec: &CoverRecord) -> Result<bool> {
        let wt = self.big.orbits[rec.covering];
        let bt = &self.big.blocks.blocks[self.big.block_of_weight(&wt)?];
        for &m in &rec.members {
            let b = &self.small.blocks.blocks[self.small.block_of_weight(&self.small.orbits[m])?];
            if !block_covers(&self.big.group, bt, &self.small.group, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Linear characters of `G̃/G` of p'-order, as indices into `Irr(G̃)`.
    pub fn lin_pprime(&self) -> Result<Vec<usize>> {
        let t = self.big.group.table();
        let mut out = Vec::new();
        for mu in t.linear_pprime(self.p) {
            let res = self.small.group.pull(&self.big.group, t.chi(mu), None)?;
            if res.iter().all(|v| v.as_integer() == Some(1)) {
                out.push(mu);
            }
        }
        Ok(out)
    }

    /// Orbits of `Lin(G̃/G)_{p'}` on `Alp(G̃)`.
    pub fn lin_orbits(&self) -> Result<Vec<Vec<usize>>> {
        let lookup: HashMap<WeightOrbit, usize> = self.big.orbit_lookup();
        let lin = self.lin_pprime()?;
        let mut seen = vec![false; self.big.orbits.len()];
        let mut out = Vec::new();
        for i in 0..self.big.orbits.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for &mu in &lin {
                let j = lookup[&self.big.lin_action(mu, &self.big.orbits[i])?];
                orbit.insert(j);
                seen[j] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        Ok(out)
    }
}

/// `rdz(H | χ)`: characters of `big` over `χ` (a character of `small`) whose
/// degree ratio has p-part `|H/G|_p`.
pub fn rdz(big: &Section, small: &Section, chi: &ClassFunction, p: u64) -> Result<Vec<usize>> {
    let index = big.order() / small.order();
    let want = p_part(index, p);
    let d = chi[0]
        .as_integer()
        .ok_or_else(|| Error::Internal("degree is not an integer".into()))? as u64;
    Ok(big
        .irr_over(small, chi)?
        .into_iter()
        .filter(|&i| p_part(big.table().degree(i) / d, p) == want)
        .collect())
}
