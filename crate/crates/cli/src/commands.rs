//! The computations behind each subcommand, producing JSON values.

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::{json, Value};
use weightsmith_core::arith::is_prime;
use weightsmith_core::blocks::{block_distribution, l_count, pregular_class_count};
use weightsmith_core::chartab::CharacterTable;
use weightsmith_core::clifford::{NormalPair, Verdict};
use weightsmith_core::ffield::FpEmbedding;
use weightsmith_core::group::Caps;
use weightsmith_core::section::Section;
use weightsmith_core::weights::WeightSystem;

use crate::spec::Parsed;

/// A command result: the JSON output and whether a check in it failed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub failed: bool,
}

impl Outcome {
    fn new(value: impl Serialize, failed: bool) -> Result<Self> {
        Ok(Outcome {
            value: serde_json::to_value(value)?,
            failed,
        })
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        bail!("-p {p}: not a prime");
    }
    Ok(())
}

pub fn table(spec: &Parsed) -> Result<Outcome> {
    let t = CharacterTable::new(&spec.group)?;
    Outcome::new(t.to_json(), false)
}

#[derive(Serialize)]
struct BlockRow {
    block: usize,
    principal: bool,
    defect: u32,
    defect_group_order: u64,
    characters: Vec<usize>,
    degrees: Vec<u64>,
    brauer: usize,
}

pub fn blocks(spec: &Parsed, p: u64) -> Result<Outcome> {
    check_prime(p)?;
    let g = &spec.group;
    let t = CharacterTable::new(g)?;
    let emb = FpEmbedding::new(p, g.exponent())?;
    let bs = block_distribution(&t, p, &emb)?;
    let mut rows = Vec::new();
    let mut total = 0;
    for (i, b) in bs.blocks.iter().enumerate() {
        let l = l_count(&t, b)?;
        total += l;
        rows.push(BlockRow {
            block: i,
            principal: b.is_principal,
            defect: b.defect,
            defect_group_order: b.defect_group.order(),
            characters: b.members.clone(),
            degrees: b.members.iter().map(|&c| t.degree(c)).collect(),
            brauer: l,
        });
    }
    let pregular = pregular_class_count(&t, p);
    Outcome::new(
        json!({"p": p, "order": g.order(), "blocks": rows, "brauer_total": total, "pregular": pregular}),
        total != pregular,
    )
}

#[derive(Serialize)]
struct WeightRow {
    orbit: usize,
    q_order: u64,
    normalizer_order: u64,
    theta_degree: u64,
    block: usize,
    central: Option<usize>,
}

pub fn weight_system(spec: &Parsed, p: u64, caps: &Caps) -> Result<WeightSystem> {
    check_prime(p)?;
    Ok(WeightSystem::new(&spec.group, p, spec.group.exponent(), caps)?)
}

pub fn weights(spec: &Parsed, p: u64, caps: &Caps) -> Result<Outcome> {
    let ws = weight_system(spec, p, caps)?;
    let z = Section::whole(&spec.group.center())?;
    let mut central = vec![None; ws.orbits.len()];
    for nu in z.table().linear_pprime(p) {
        for i in ws.alp_over_central(&z, nu)? {
            central[i] = Some(nu);
        }
    }
    let mut rows = Vec::new();
    for (i, w) in ws.orbits.iter().enumerate() {
        let r = ws.radical(w);
        rows.push(WeightRow {
            orbit: i,
            q_order: r.q.order(),
            normalizer_order: r.normalizer.order(),
            theta_degree: ws.theta_degree(w),
            block: ws.block_of_weight(w)?,
            central: central[i],
        });
    }
    let alperin = ws.alperin_check();
    let blockwise = ws.blockwise_check()?;
    let failed = !alperin.pass || blockwise.iter().any(|b| !b.pass);
    Outcome::new(
        json!({"p": p, "order": spec.group.order(), "weights": rows, "alperin": alperin, "blockwise": blockwise}),
        failed,
    )
}

pub fn alperin(spec: &Parsed, p: u64, caps: &Caps) -> Result<Outcome> {
    let report = weight_system(spec, p, caps)?.alperin_check();
    let failed = !report.pass;
    Outcome::new(report, failed)
}

pub fn normal_pair(spec: &Parsed, p: u64, caps: &Caps) -> Result<NormalPair> {
    check_prime(p)?;
    let (gt, g) = spec.pair()?;
    Ok(NormalPair::with_action(gt, g, p, spec.action.as_ref(), caps)?)
}

pub fn cover(spec: &Parsed, p: u64, caps: &Caps) -> Result<Outcome> {
    let pr = normal_pair(spec, p, caps)?;
    let records = pr.clifford_partition()?;
    let fibers = NormalPair::fibers(&records, pr.gt_orbits.len());
    let mut consistent = true;
    for r in &records {
        consistent &= pr.blocks_consistent(r)?;
    }
    let hypothesis = pr.check_hypothesis()?;
    let pi = pr.pi_bijection(&records)?;
    let mut jg = Vec::new();
    for r in &records {
        jg.push(pr.stabilizer_formula_check(r, &records)?);
    }
    let failed = fibers.iter().any(|f| f.is_empty())
        || !consistent
        || !hypothesis.agree
        || (hypothesis.weights_extend && !pi.bijective())
        || jg.iter().any(|j| !j.fiber_is_orbit || !j.formula_holds);
    Outcome::new(
        json!({
            "p": p,
            "g_order": pr.g.order(),
            "gt_order": pr.gt.order(),
            "alp_g": pr.small.orbits.len(),
            "alp_gt": pr.big.orbits.len(),
            "gt_orbits": pr.gt_orbits,
            "records": records,
            "fibers": fibers,
            "blocks_consistent": consistent,
            "hypothesis": hypothesis,
            "pi": {
                "map": pi.map,
                "well_defined": pi.well_defined,
                "injective": pi.injective,
                "surjective": pi.surjective,
                "bijective": pi.bijective(),
            },
            "jg": jg,
        }),
        failed,
    )
}

#[derive(Serialize)]
struct FrameRow {
    covering: usize,
    q_order: u64,
    qt_order: u64,
    complement: bool,
    direct_product: bool,
}

pub fn dgn(spec: &Parsed, p: u64, caps: &Caps) -> Result<Outcome> {
    let pr = normal_pair(spec, p, caps)?;
    let mut frames = Vec::new();
    for (i, wt) in pr.big.orbits.iter().enumerate() {
        let f = pr.frame_for(&pr.big.radical(wt).q)?;
        frames.push(FrameRow {
            covering: i,
            q_order: f.q.order(),
            qt_order: f.qt.order(),
            complement: f.complement,
            direct_product: f.direct_product,
        });
    }
    let contexts = pr.delta_all()?;
    let failed = frames.iter().any(|f| !f.complement || !f.direct_product) || contexts.iter().any(|c| !c.pass);
    Outcome::new(json!({"p": p, "frames": frames, "contexts": contexts}), failed)
}

pub fn audit(spec: &Parsed, p: u64, caps: &Caps) -> Result<Outcome> {
    let pr = normal_pair(spec, p, caps)?;
    let report = pr.criterion_audit()?;
    let overall = report.overall();
    let mut value = serde_json::to_value(&report)?;
    value["overall"] = serde_json::to_value(overall)?;
    Ok(Outcome {
        value,
        failed: overall == Verdict::Fail,
    })
}
