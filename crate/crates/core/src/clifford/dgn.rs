//! The Dade–Glauberman–Nagao correspondent in the defect-zero setting.

use crate::blocks::{block_distribution, block_induction, covers, BlockSystem};
use crate::chartab::ClassFunction;
use crate::error::{Error, Result};
use crate::ffield::FpEmbedding;
use crate::group::PermGroup;
use crate::section::Section;

/// The groups attached to `Q ⊴ Q̃` with `Q̃ ∩ G = Q`, independent of `θ`.
#[derive(Clone, Debug)]
pub struct DgnFrame {
    pub p: u64,
    pub q: PermGroup,
    pub qt: PermGroup,
    /// `N/Q` with `N = N_G(Q)`.
    pub n_sec: Section,
    /// `M/Q` with `M = N Q̃`.
    pub m_sec: Section,
    pub m_blocks: BlockSystem,
    /// `D = Q̃/Q` inside the quotient group of `m_sec`.
    pub d: PermGroup,
    /// `N_{M/Q}(D)`, realized as `N_M(Q̃)/Q`.
    pub nmd_sec: Section,
    pub nmd_blocks: BlockSystem,
    /// `C_{N/Q}(D)`, realized as `N_N(Q̃)/Q`.
    pub c_sec: Section,
    pub c_blocks: BlockSystem,
    /// `N_G(Q̃)Q̃/Q̃`.
    pub s2: Section,
    /// `D ∩ N/Q = 1` and `M/Q = (N/Q) D`.
    pub complement: bool,
    /// `N_{M/Q}(D) = C_{N/Q}(D) × D`.
    pub direct_product: bool,
}

/// Outcome of the correspondence for one `θ`.
#[derive(Clone, Debug)]
pub enum DgnOutcome {
    /// `θ` is not `Q̃`-invariant, so `Q̃ ≰ Ñ`.
    NotInvariant,
    /// `Q̃/Q` is not a defect group of the block of `M/Q` over `bl(θ)`.
    NotDefectGroup,
    Found(DgnResult),
}

#[derive(Clone, Debug)]
pub struct DgnResult {
    /// Block of `M/Q` covering `bl(θ)`.
    pub b: usize,
    /// Brauer correspondent in `N_{M/Q}(D)`.
    pub b_prime: usize,
    /// Block of `C_{N/Q}(D)` covered by the Brauer correspondent.
    pub b_prime_c: usize,
    /// `π_D(θ)` as an index into the irreducibles of `c_sec`.
    pub pi: usize,
    /// `π_D(θ) × 1_D` as an index into the irreducibles of `nmd_sec`.
    pub pi_times_one: usize,
    /// `π̄_D(θ)` as a character of `s2`.
    pub pi_bar: ClassFunction,
    /// Defect-zero constituents of `θ` restricted to `C_{N/Q}(D)` (diagnostic only).
    pub restriction_dz: Vec<usize>,
}

impl DgnFrame {
    /// Builds the frame, or `None` when `Q` is not normal in `Q̃` or `Q̃ ∩ G ≠ Q`.
    pub fn new(
        g: &PermGroup,
        q: &PermGroup,
        qt: &PermGroup,
        p: u64,
        emb: &FpEmbedding,
    ) -> Result<Option<Self>> {
        if !q.is_normal_in(qt) || qt.intersection(g) != *q || !qt.is_p_group(p) {
            return Ok(None);
        }
        let n = g.normalizer(q);
        if !qt.gens().iter().all(|t| n.normalizes(t)) {
            return Ok(None);
        }
        let n_sec = Section::new(&n, q)?;
        let mut gens = n.gens().to_vec();
        gens.extend(qt.gens().iter().cloned());
        let m = PermGroup::new(g.degree(), gens, n.order() * qt.order())?;
        let m_sec = Section::new(&m, q)?;
        let m_blocks = block_distribution(m_sec.table(), p, emb)?;
        let d_gens = qt
            .gens()
            .iter()
            .map(|t| m_sec.project(t).expect("Q̃ lies in M"))
            .collect();
        let d = m_sec.quotient().subgroup(d_gens)?;
        let complement = qt.intersection(&n) == *q && m.order() * q.order() == n.order() * qt.order();
        let nm = m.normalizer(qt);
        let c = n.normalizer(qt);
        let commutators_in_q = c.gens().iter().all(|x| {
            qt.gens()
                .iter()
                .all(|t| q.contains(&x.inverse().mul(&t.inverse()).mul(x).mul(t)))
        });
        let direct_product = commutators_in_q
            && c.intersection(qt) == *q
            && nm.order() * q.order() == c.order() * qt.order();
        let nmd_sec = Section::new(&nm, q)?;
        let nmd_blocks = block_distribution(nmd_sec.table(), p, emb)?;
        let c_sec = Section::new(&c, q)?;
        let c_blocks = block_distribution(c_sec.table(), p, emb)?;
        let s2 = Section::new(&nm, qt)?;
        Ok(Some(DgnFrame {
            p,
            q: q.clone(),
            qt: qt.clone(),
            n_sec,
            m_sec,
            m_blocks,
            d,
            nmd_sec,
            nmd_blocks,
            c_sec,
            c_blocks,
            s2,
            complement,
            direct_product,
        }))
    }

    pub fn is_invariant(&self, theta: &ClassFunction) -> Result<bool> {
        for t in self.qt.gens() {
            if !self.n_sec.is_invariant_under(theta, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `dgn_correspondent` for a defect-zero `θ ∈ Irr(N/Q)`.
    pub fn correspond(&self, theta: &ClassFunction) -> Result<DgnOutcome> {
        if !self.is_invariant(theta)? {
            return Ok(DgnOutcome::NotInvariant);
        }
        if !self.complement || !self.direct_product {
            return Err(Error::Internal("DGN context invariants fail".into()));
        }
        let theta_idx = self
            .n_sec
            .index_of(theta)
            .ok_or_else(|| Error::Internal("θ is not irreducible".into()))?;
        if self.n_sec.table().defect(theta_idx, self.p) != 0 {
            return Err(Error::Internal("θ does not have defect zero".into()));
        }
        // The unique block of M/Q covering bl(θ) = {θ}.
        let over = self.m_sec.irr_over(&self.n_sec, theta)?;
        let mut bs: Vec<usize> = over.iter().map(|&i| self.m_blocks.block_of[i]).collect();
        bs.sort();
        bs.dedup();
        if bs.len() != 1 {
            return Err(Error::Internal(format!("{} blocks of M/Q cover bl(θ)", bs.len())));
        }
        let b = bs[0];
        let dg = &self.m_blocks.blocks[b].defect_group;
        if dg.order() != self.d.order() || self.m_sec.quotient().conjugating_element(&self.d, dg).is_none() {
            return Ok(DgnOutcome::NotDefectGroup);
        }
        let correspondents: Vec<usize> = (0..self.nmd_blocks.blocks.len())
            .filter_map(|i| {
                match block_induction(&self.nmd_sec, &self.nmd_blocks.blocks[i], &self.m_sec, &self.m_blocks) {
                    Ok(Some(j)) if j == b => Some(Ok(i)),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .collect::<Result<_>>()?;
        if correspondents.len() != 1 {
            return Err(Error::Internal(format!(
                "{} Brauer correspondents instead of one",
                correspondents.len()
            )));
        }
        let b_prime = correspondents[0];
        let bp = &self.nmd_blocks.blocks[b_prime];
        let mut covered = Vec::new();
        for (i, cb) in self.c_blocks.blocks.iter().enumerate() {
            if covers(&self.nmd_sec, bp, &self.c_sec, cb)? {
                covered.push(i);
            }
        }
        if covered.len() != 1 || self.c_blocks.blocks[covered[0]].defect != 0 {
            return Err(Error::Internal(
                "Brauer correspondent does not cover a unique defect-zero block".into(),
            ));
        }
        let b_prime_c = covered[0];
        let pi = self.c_blocks.blocks[b_prime_c].members[0];
        let pi_chi = self.c_sec.chi(pi);
        let mut product = None;
        for j in 0..self.nmd_sec.num_irr() {
            let psi = self.nmd_sec.chi(j);
            if &self.nmd_sec.restrict(psi, &self.c_sec)? != pi_chi {
                continue;
            }
            let mut trivial_on_d = true;
            for t in self.qt.gens() {
                if self.nmd_sec.eval(psi, t)? != psi[0] {
                    trivial_on_d = false;
                }
            }
            if trivial_on_d {
                product = Some(j);
                break;
            }
        }
        let pi_times_one =
            product.ok_or_else(|| Error::Internal("π_D(θ) × 1_D is not a character".into()))?;
        let pi_bar = self.s2.pull(&self.nmd_sec, self.nmd_sec.chi(pi_times_one), None)?;
        let res = self.n_sec.restrict(theta, &self.c_sec)?;
        let mut restriction_dz = Vec::new();
        for i in self.c_sec.dz(self.p) {
            if !self.c_sec.inner_product(&res, self.c_sec.chi(i))?.is_zero() {
                restriction_dz.push(i);
            }
        }
        Ok(DgnOutcome::Found(DgnResult {
            b,
            b_prime,
            b_prime_c,
            pi,
            pi_times_one,
            pi_bar,
            restriction_dz,
        }))
    }
}
