//! Counting and block consequences of the bijection between relative
//! defect-zero characters and defect-zero characters over `π̄_D(θ)`.

use std::collections::HashSet;

use serde::Serialize;

use super::{rdz, DgnOutcome, NormalPair};
use crate::blocks::{block_distribution, block_induction, BlockSystem};
use crate::chartab::ClassFunction;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::section::Section;
use crate::weights::{subgroups_of_p_group, WeightOrbit};

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    /// Orbit index in `Alp(G)`.
    pub weight: usize,
    pub q_order: u64,
    pub qt_order: u64,
    pub m_order: u64,
    pub extension_found: bool,
    /// `|rdz(N_Ñ(M) | θ̂)|`.
    pub rdz_count: usize,
    /// `|dz(N_G̃(Q̃)/Q̃ | π̄)|`.
    pub dz_count: usize,
    /// The same count inside `N_G̃(Q̃)_θ/Q̃`.
    pub dz_stabilizer_count: usize,
    pub matching: bool,
    pub pass: bool,
}

/// A character of `sec` inflated to the whole group `local`, with its block.
struct Local {
    sec: Section,
    blocks: BlockSystem,
}

impl Local {
    fn new(top: &PermGroup, p: u64, pair: &NormalPair) -> Result<Self> {
        let sec = Section::whole(top)?;
        let blocks = block_distribution(sec.table(), p, pair.small.embedding())?;
        Ok(Local { sec, blocks })
    }

    fn block_of(&self, from: &Section, chi: &ClassFunction) -> Result<usize> {
        let inflated = self.sec.pull(from, chi, None)?;
        let i = self
            .sec
            .index_of(&inflated)
            .ok_or_else(|| Error::Internal("inflation is not irreducible".into()))?;
        Ok(self.blocks.block_of[i])
    }
}

impl NormalPair {
    /// Candidate `Q̃` for the weight `w`: p-subgroups of `N_G̃(Q)_θ`
    /// containing `Q` with `Q̃ ∩ G = Q`, up to `N_G̃(Q)_θ`-conjugacy.
    pub fn delta_candidates(&self, w: &WeightOrbit) -> Result<Vec<PermGroup>> {
        let q = &self.small.radical(w).q;
        let stab = self.theta_stabilizer(w)?;
        let sylow = stab.sylow_containing(self.p, q)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for qt in subgroups_of_p_group(&sylow, self.caps())? {
            if !q.is_subgroup_of(&qt) || !q.is_normal_in(&qt) || qt.intersection(&self.g) != *q {
                continue;
            }
            if seen.insert(stab.canonical_conjugate(&qt).0) {
                out.push(qt);
            }
        }
        out.sort_by_key(|h| h.order());
        Ok(out)
    }

    /// `delta_theta_checks` for the weight `w` and the candidate `Q̃`;
    /// `None` when `Q̃` does not give a covering context.
    pub fn delta_theta_checks(&self, w: &WeightOrbit, qt: &PermGroup) -> Result<Option<DeltaReport>> {
        let p = self.p;
        let r = self.small.radical(w);
        let frame = self.frame_for(qt)?;
        if frame.q != r.q {
            return Err(Error::Internal("candidate does not meet G in Q".into()));
        }
        let theta = frame.n_sec.pull(&r.section, self.small.theta(w), None)?;
        let res = match frame.correspond(&theta)? {
            DgnOutcome::Found(res) => res,
            _ => return Ok(None),
        };
        let weight = self.small.orbit_index(w).expect("weight of G");
        let stab = self.theta_stabilizer(w)?;
        let m = frame.m_sec.top().clone();
        let nm = stab.normalizer(&m);
        let ng_m = self.g.normalizer(&m);
        let mut hat = None;
        for e in frame.m_sec.extensions_of(&frame.n_sec, &theta)? {
            let chi = frame.m_sec.chi(e);
            let mut invariant = true;
            for x in ng_m.gens() {
                invariant &= frame.m_sec.is_invariant_under(chi, x)?;
            }
            if invariant {
                hat = Some(e);
                break;
            }
        }
        let mut report = DeltaReport {
            weight,
            q_order: r.q.order(),
            qt_order: qt.order(),
            m_order: m.order(),
            extension_found: hat.is_some(),
            rdz_count: 0,
            dz_count: 0,
            dz_stabilizer_count: 0,
            matching: false,
            pass: false,
        };
        let Some(hat) = hat else {
            return Ok(Some(report));
        };
        let big_sec = Section::new(&nm, &r.q)?;
        let rdz_side = rdz(&big_sec, &frame.m_sec, frame.m_sec.chi(hat), p)?;

        let nt = self.gt.normalizer(qt);
        let nt_sec = Section::new(&nt, qt)?;
        let mut dz_count = 0;
        for i in nt_sec.dz(p) {
            if nt_sec.lies_over(i, &frame.s2, &res.pi_bar)? {
                dz_count += 1;
            }
        }
        let nt_theta = nt.intersection(&stab);
        let small_sec = Section::new(&nt_theta, qt)?;
        let mut dz_side = Vec::new();
        for i in small_sec.dz(p) {
            if small_sec.lies_over(i, &frame.s2, &res.pi_bar)? {
                dz_side.push(i);
            }
        }
        report.rdz_count = rdz_side.len();
        report.dz_count = dz_count;
        report.dz_stabilizer_count = dz_side.len();

        if rdz_side.len() == dz_side.len() {
            let big_local = Local::new(&nm, p, self)?;
            let small_local = Local::new(&nt_theta, p, self)?;
            let left: Vec<usize> = rdz_side
                .iter()
                .map(|&i| big_local.block_of(&big_sec, big_sec.chi(i)))
                .collect::<Result<_>>()?;
            let right: Vec<Option<usize>> = dz_side
                .iter()
                .map(|&i| {
                    let b = small_local.block_of(&small_sec, small_sec.chi(i))?;
                    block_induction(
                        &small_local.sec,
                        &small_local.blocks.blocks[b],
                        &big_local.sec,
                        &big_local.blocks,
                    )
                })
                .collect::<Result<_>>()?;
            let adj: Vec<Vec<usize>> = left
                .iter()
                .map(|&b| (0..right.len()).filter(|&j| right[j] == Some(b)).collect())
                .collect();
            report.matching = perfect_matching(&adj, right.len());
        }
        report.pass = report.extension_found
            && report.rdz_count == report.dz_count
            && report.dz_count == report.dz_stabilizer_count
            && report.matching;
        Ok(Some(report))
    }

    /// All covering contexts, one per `G̃`-orbit representative and candidate.
    pub fn delta_all(&self) -> Result<Vec<DeltaReport>> {
        let mut out = Vec::new();
        for orbit in &self.gt_orbits {
            let w = self.small.orbits[orbit[0]];
            for qt in self.delta_candidates(&w)? {
                if let Some(r) = self.delta_theta_checks(&w, &qt)? {
                    out.push(r);
                }
            }
        }
        Ok(out)
    }
}

/// Whether the bipartite graph (left vertices with adjacency lists into
/// `0..right`) has a perfect matching.
fn perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if mate[v].is_none_or(|w| augment(w, adj, seen, mate)) {
                mate[v] = Some(u);
                return true;
            }
        }
        false
    }
    if adj.len() != right {
        return false;
    }
    let mut mate = vec![None; right];
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; right], &mut mate))
}
