//! p-blocks of sections: distribution, defect groups, block induction,
//! covering and Brauer character counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{p_part, primes_one_mod, primitive_root, pow_mod, valuation};
use crate::chartab::{CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::ffield::{FpEmbedding, Fq};
use crate::group::PermGroup;
use crate::modp;
use crate::section::Section;

#[derive(Clone, Debug)]
pub struct PBlock {
    pub p: u64,
    /// Indices into the irreducibles of the owning table.
    pub members: Vec<usize>,
    pub defect: u32,
    /// Reduced central character, one entry per class (zero off p-regular classes).
    pub lambda: Vec<Fq>,
    /// Defect group, a subgroup of the quotient group of the owning section.
    pub defect_group: PermGroup,
    pub is_principal: bool,
}

/// All p-blocks of a character table.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub p: u64,
    pub blocks: Vec<PBlock>,
    /// Block index of each irreducible character.
    pub block_of: Vec<usize>,
    pub pregular: Vec<usize>,
    pub embedding: FpEmbedding,
}

impl BlockSystem {
    pub fn principal(&self) -> &PBlock {
        &self.blocks[self.block_of[0]]
    }

    /// The block whose reduced central character equals `lambda` on p-regular classes.
    pub fn find(&self, lambda: &[Fq]) -> Result<Option<usize>> {
        let hits: Vec<usize> = (0..self.blocks.len())
            .filter(|&b| self.pregular.iter().all(|&c| self.blocks[b].lambda[c] == lambda[c]))
            .collect();
        match hits.len() {
            0 => Ok(None),
            1 => Ok(Some(hits[0])),
            _ => Err(Error::Internal("central characters do not separate blocks".into())),
        }
    }
}

pub fn pregular_class_count(t: &CharacterTable, p: u64) -> usize {
    t.pregular_classes(p).len()
}

/// `block_distribution`: groups characters by their central characters
/// reduced on p-regular classes.
pub fn block_distribution(t: &CharacterTable, p: u64, emb: &FpEmbedding) -> Result<BlockSystem> {
    if emb.prime() != p {
        return Err(Error::Internal("embedding for a different prime".into()));
    }
    let pregular = t.pregular_classes(p);
    let k = t.num_classes();
    let mut blocks: Vec<PBlock> = Vec::new();
    let mut block_of = vec![0usize; t.irr().len()];
    for chi in 0..t.irr().len() {
        let omega = t.central_character(chi)?;
        let mut lambda = vec![0 as Fq; k];
        for &c in &pregular {
            lambda[c] = emb.reduce(&omega[c]);
        }
        let d = t.defect(chi, p);
        match blocks.iter().position(|b| b.lambda == lambda) {
            Some(b) => {
                blocks[b].members.push(chi);
                blocks[b].defect = blocks[b].defect.max(d);
                block_of[chi] = b;
            }
            None => {
                block_of[chi] = blocks.len();
                blocks.push(PBlock {
                    p,
                    members: vec![chi],
                    defect: d,
                    lambda,
                    defect_group: PermGroup::trivial(t.group().degree()),
                    is_principal: chi == 0,
                });
            }
        }
    }
    for b in blocks.iter_mut() {
        b.defect_group = defect_group(t, b)?;
    }
    Ok(BlockSystem {
        p,
        blocks,
        block_of,
        pregular,
        embedding: emb.clone(),
    })
}

/// Sylow p-subgroup of the centralizer of a defect class, canonicalized
/// within the group.
fn defect_group(t: &CharacterTable, b: &PBlock) -> Result<PermGroup> {
    let g = t.group();
    if b.defect == 0 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let mut candidates: Vec<usize> = t
        .pregular_classes(b.p)
        .into_iter()
        .filter(|&c| b.lambda[c] != 0)
        .collect();
    candidates.sort_by_key(|&c| std::cmp::Reverse(valuation(t.centralizer_order(c), b.p)));
    let c = candidates
        .into_iter()
        .find(|&c| valuation(t.centralizer_order(c), b.p) == b.defect)
        .ok_or_else(|| Error::Internal("no defect class for block".into()))?;
    let d = g.centralizer(&t.classes()[c].rep).sylow(b.p)?;
    let (els, _) = g.canonical_conjugate(&d);
    let d = PermGroup::from_closed_set(g.degree(), els)?;
    if d.order() != b.p.pow(b.defect) {
        return Err(Error::Internal("defect group has the wrong order".into()));
    }
    Ok(d)
}

/// Preimage in the section's top group of a subgroup of its quotient.
pub fn preimage(sec: &Section, sub: &PermGroup) -> Result<PermGroup> {
    let set = sub.element_set();
    sec.top()
        .filter_subgroup(|x| sec.project(x).is_some_and(|y| set.contains(&y)))
}

/// Brauer's block induction `b^G` from the section `small` (with
/// `small.top ≤ big.top` and a common kernel) to `big`.
pub fn block_induction(
    small: &Section,
    b: &PBlock,
    big: &Section,
    big_blocks: &BlockSystem,
) -> Result<Option<usize>> {
    if small.kernel() != big.kernel() {
        return Err(Error::NotSubgroup("block induction needs a common kernel".into()));
    }
    let emb = &big_blocks.embedding;
    let mut lambda = vec![0 as Fq; big.table().num_classes()];
    for &c in &small.table().pregular_classes(b.p) {
        let y = small.preimage(c);
        let big_c = big
            .class_of_element(y)
            .ok_or_else(|| Error::NotSubgroup(format!("{y} is not in the larger section")))?;
        lambda[big_c] = emb.add(lambda[big_c], b.lambda[c]);
    }
    big_blocks.find(&lambda)
}

/// Whether some character of `big_b` has a constituent in `small_b` on
/// restriction to the normal subsection `small`.
pub fn covers(
    big: &Section,
    big_b: &PBlock,
    small: &Section,
    small_b: &PBlock,
) -> Result<bool> {
    for &chi in &big_b.members {
        let res = big.restrict(big.chi(chi), small)?;
        for &eta in &small_b.members {
            if !small.inner_product(&res, small.chi(eta))?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `l(B)`: the rank of the characters of `B` on p-regular classes.
pub fn l_count(t: &CharacterTable, b: &PBlock) -> Result<usize> {
    let cols = t.pregular_classes(b.p);
    let rows: Vec<Vec<Cyclotomic>> = b
        .members
        .iter()
        .map(|&chi| cols.iter().map(|&c| t.chi(chi)[c].lift(t.conductor())).collect())
        .collect();
    let exact = exact_rank(&rows, t.conductor());
    let modular = modular_rank(&rows, t.conductor());
    if exact != modular {
        return Err(Error::Internal(format!(
            "rank mismatch: exact {exact}, modular {modular}"
        )));
    }
    Ok(exact)
}

/// Rank over `Q(ζ_n)`: the rational realization by multiplication matrices
/// has rank `φ(n)` times as large.
fn exact_rank(rows: &[Vec<Cyclotomic>], n: u32) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let phi = Cyclotomic::zero(n).coords().len();
    let basis: Vec<Cyclotomic> = (0..phi).map(|j| Cyclotomic::root(n, j as i64)).collect();
    let mut m: Vec<Vec<BigInt>> = vec![Vec::new(); rows.len() * phi];
    for (i, row) in rows.iter().enumerate() {
        for a in row {
            let images: Vec<Cyclotomic> = basis.iter().map(|z| a * z).collect();
            for r in 0..phi {
                for img in &images {
                    m[i * phi + r].push(BigInt::from(img.coords()[r]));
                }
            }
        }
    }
    let r = bareiss_rank(m);
    debug_assert_eq!(r % phi, 0);
    r / phi
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank after reducing modulo a large prime `l ≡ 1 (mod n)`.
fn modular_rank(rows: &[Vec<Cyclotomic>], n: u32) -> usize {
    let l = primes_one_mod(n as u64, 1 << 30).next().expect("infinitely many primes");
    let z = pow_mod(primitive_root(l), (l - 1) / n as u64, l);
    let m: modp::Mat = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let mut acc = 0u128;
                    let mut pw = 1u128;
                    for &c in v.coords() {
                        let c = c.rem_euclid(l as i64) as u128;
                        acc = (acc + c * pw) % l as u128;
                        pw = pw * z as u128 % l as u128;
                    }
                    acc as u64
                })
                .collect()
        })
        .collect();
    modp::rank(&m, l)
}

/// The p'-part of the central character of `B` on a central subsection `z`,
/// as an index into the irreducibles of `z`.
pub fn block_central_pprime_character(
    sec: &Section,
    b: &PBlock,
    z: &Section,
) -> Result<usize> {
    let mut found: Option<usize> = None;
    for &chi in &b.members {
        let res = sec.restrict(sec.chi(chi), z)?;
        let lin: ClassFunction = res
            .iter()
            .map(|v| v.div_exact(sec.table().degree(chi) as i64))
            .collect::<Result<_>>()?;
        let idx = z
            .index_of(&lin)
            .ok_or_else(|| Error::Internal("restriction to a central subgroup is not homogeneous".into()))?;
        let o = z.table().linear_order(idx);
        let op = p_part(o, b.p);
        let opp = o / op;
        // k ≡ 1 mod o_{p'}, k ≡ 0 mod o_p
        let k = (0..o).find(|k| k % op == 0 && k % opp == 1 % opp).unwrap_or(0);
        let nu: ClassFunction = lin.iter().map(|v| v.pow(k as u32)).collect();
        let nu = z
            .index_of(&nu)
            .ok_or_else(|| Error::Internal("p'-part is not a character".into()))?;
        match found {
            None => found = Some(nu),
            Some(prev) if prev != nu => {
                return Err(Error::Internal("block members disagree on the center".into()))
            }
            _ => {}
        }
    }
    found.ok_or_else(|| Error::Internal("empty block".into()))
}
