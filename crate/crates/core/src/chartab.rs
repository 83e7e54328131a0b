//! Ordinary character tables by the Burnside–Dixon method.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, p_part, pow_mod, primes_one_mod, primitive_root, valuation};
use crate::cyclotomic::{Cyclotomic, CyclotomicJson};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::modp::{self, Mat};
use crate::perm::Perm;

/// A class function, one value per class of the owning table.
pub type ClassFunction = Vec<Cyclotomic>;

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub rep: Perm,
    pub size: u64,
    pub element_order: u64,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: PermGroup,
    conductor: u32,
    aux_prime: u64,
    classes: Vec<ClassInfo>,
    class_of: HashMap<Perm, usize>,
    inverse: Vec<usize>,
    /// `powers[j][c]` = class of `x_c^j` for `0 ≤ j < conductor`.
    powers: Vec<Vec<usize>>,
    irr: Vec<ClassFunction>,
}

/// Class multiplication coefficients `m[a][b][c]` = #{(x, y) ∈ K_a × K_b : xy = z_c}.
#[derive(Clone, Debug)]
pub struct ClassMultiplication {
    k: usize,
    m: Vec<u64>,
}

impl ClassMultiplication {
    pub fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        self.m[(a * self.k + b) * self.k + c]
    }
}

fn class_lookup(g: &PermGroup) -> (Vec<ClassInfo>, HashMap<Perm, usize>) {
    let mut class_of = HashMap::with_capacity(g.order() as usize);
    let classes = g
        .conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            for x in &c.elements {
                class_of.insert(x.clone(), i);
            }
            ClassInfo {
                rep: c.rep.clone(),
                size: c.size,
                element_order: c.element_order,
            }
        })
        .collect();
    (classes, class_of)
}

/// Brute-force class multiplication coefficients of `g`.
pub fn class_multiplication(g: &PermGroup) -> ClassMultiplication {
    let (classes, class_of) = class_lookup(g);
    class_multiplication_with(g, &classes, &class_of)
}

fn class_multiplication_with(
    g: &PermGroup,
    classes: &[ClassInfo],
    class_of: &HashMap<Perm, usize>,
) -> ClassMultiplication {
    let k = classes.len();
    let mut m = vec![0u64; k * k * k];
    for (c, cl) in classes.iter().enumerate() {
        for x in g.elements() {
            let a = class_of[x];
            let b = class_of[&x.inverse().mul(&cl.rep)];
            m[(a * k + b) * k + c] += 1;
        }
    }
    ClassMultiplication { k, m }
}

impl CharacterTable {
    /// Computes the table using the smallest admissible auxiliary prime.
    pub fn new(g: &PermGroup) -> Result<Self> {
        Self::compute(g, 0)
    }

    /// Computes the table skipping the first `skip` admissible auxiliary primes.
    pub fn compute(g: &PermGroup, skip: usize) -> Result<Self> {
        let (classes, class_of) = class_lookup(g);
        let e = g.exponent();
        let conductor = u32::try_from(e).map_err(|_| Error::TableFailed("exponent too large".into()))?;
        let order = g.order();
        let k = classes.len();
        let inverse: Vec<usize> = classes.iter().map(|c| class_of[&c.rep.inverse()]).collect();
        let powers: Vec<Vec<usize>> = (0..e)
            .map(|j| classes.iter().map(|c| class_of[&c.rep.pow(j)]).collect())
            .collect();
        let cm = class_multiplication_with(g, &classes, &class_of);
        let lower = 2 * ((order as f64).sqrt().ceil() as u64);
        let mut last = String::new();
        for ell in primes_one_mod(e, lower).skip(skip).take(8) {
            match dixon(order, &classes, &inverse, &powers, &cm, e, ell) {
                Ok(mut irr) => {
                    sort_characters(&mut irr);
                    let t = CharacterTable {
                        group: g.clone(),
                        conductor,
                        aux_prime: ell,
                        classes: classes.clone(),
                        class_of: class_of.clone(),
                        inverse: inverse.clone(),
                        powers: powers.clone(),
                        irr,
                    };
                    match t.verify() {
                        Ok(()) => return Ok(t),
                        Err(err) => last = err.to_string(),
                    }
                }
                Err(err) => last = err.to_string(),
            }
        }
        debug_assert!(k > 0);
        Err(Error::TableFailed(format!("auxiliary primes exhausted: {last}")))
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn auxiliary_prime(&self) -> u64 {
        self.aux_prime
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn irr(&self) -> &[ClassFunction] {
        &self.irr
    }

    pub fn chi(&self, i: usize) -> &ClassFunction {
        &self.irr[i]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.irr[i][0].as_integer().expect("degree is an integer") as u64
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.irr.len()).map(|i| self.degree(i)).collect()
    }

    pub fn class_of(&self, x: &Perm) -> Option<usize> {
        self.class_of.get(x).copied()
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c]
    }

    /// Class of `x_c^j`.
    pub fn power_class(&self, c: usize, j: i64) -> usize {
        self.powers[j.rem_euclid(self.conductor as i64) as usize][c]
    }

    /// Power map for a prime `q`.
    pub fn power_map(&self, q: u64) -> Vec<usize> {
        self.powers[(q % self.conductor as u64) as usize].clone()
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.order() / self.classes[c].size
    }

    /// Value of a class function at an arbitrary group element.
    pub fn value_at(&self, f: &ClassFunction, x: &Perm) -> Option<Cyclotomic> {
        self.class_of(x).map(|c| f[c].clone())
    }

    fn verify(&self) -> Result<()> {
        let order = self.order() as i64;
        let n = self.irr.len();
        if n != self.classes.len() {
            return Err(Error::TableFailed(format!(
                "{n} characters for {} classes",
                self.classes.len()
            )));
        }
        for i in 0..n {
            for j in i..n {
                let ip = self.raw_inner(&self.irr[i], &self.irr[j]);
                let want = if i == j { order } else { 0 };
                if ip != Cyclotomic::from_int(1, want) {
                    return Err(Error::TableFailed(format!("rows {i},{j} not orthogonal")));
                }
            }
        }
        for a in 0..n {
            for b in a..n {
                let mut s = Cyclotomic::zero(self.conductor);
                for chi in &self.irr {
                    s = &s + &(&chi[a] * &chi[b].conj());
                }
                let want = if a == b { self.centralizer_order(a) as i64 } else { 0 };
                if s != Cyclotomic::from_int(1, want) {
                    return Err(Error::TableFailed(format!("columns {a},{b} not orthogonal")));
                }
            }
        }
        Ok(())
    }

    /// `|G| ⟨f, g⟩`.
    fn raw_inner(&self, f: &ClassFunction, g: &ClassFunction) -> Cyclotomic {
        let mut s = Cyclotomic::zero(1);
        for (c, cl) in self.classes.iter().enumerate() {
            s = &s + &(&f[c] * &g[c].conj()).scale(cl.size as i64);
        }
        s
    }

    /// `⟨f, g⟩ = |G|⁻¹ Σ f(x) conj(g(x))`.
    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Cyclotomic> {
        self.raw_inner(f, g).div_exact(self.order() as i64)
    }

    /// Multiplicities of the irreducibles in a generalized character.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        self.irr
            .iter()
            .map(|chi| {
                self.inner_product(f, chi)?
                    .as_integer()
                    .ok_or_else(|| Error::InexactDivision("non-rational multiplicity".into()))
            })
            .collect()
    }

    /// Index of an irreducible character given by its values.
    pub fn index_of(&self, f: &ClassFunction) -> Option<usize> {
        self.irr.iter().position(|chi| chi == f)
    }
}

fn sort_characters(irr: &mut [ClassFunction]) {
    irr.sort_by(|a, b| {
        let ta = a.iter().all(|v| v.as_integer() == Some(1));
        let tb = b.iter().all(|v| v.as_integer() == Some(1));
        tb.cmp(&ta)
            .then_with(|| a[0].as_integer().cmp(&b[0].as_integer()))
            .then_with(|| a.cmp(b))
    });
}

/// One attempt of the Dixon algorithm modulo `ell`.
fn dixon(
    order: u64,
    classes: &[ClassInfo],
    inverse: &[usize],
    powers: &[Vec<usize>],
    cm: &ClassMultiplication,
    e: u64,
    ell: u64,
) -> Result<Vec<ClassFunction>> {
    let k = classes.len();
    let l = ell;
    let mats: Vec<Mat> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| (0..k).map(|c| cm.get(a, b, c) % l).collect())
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ ell);
    let mut sequence: Vec<Mat> = Vec::new();
    for _ in 0..2 {
        let coeffs: Vec<u64> = (0..k).map(|_| rng.random_range(0..l)).collect();
        let mut comb = vec![vec![0u64; k]; k];
        for (a, m) in mats.iter().enumerate() {
            for i in 0..k {
                for j in 0..k {
                    comb[i][j] = (comb[i][j] + coeffs[a] * m[i][j]) % l;
                }
            }
        }
        sequence.push(comb);
    }
    sequence.extend(mats.iter().skip(1).cloned());

    let identity: Mat = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces: Vec<Mat> = vec![identity];
    for a in &sequence {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split(&space, a, l)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::TableFailed(format!("eigenspaces not split modulo {ell}")));
    }

    let z = pow_mod(primitive_root(l), (l - 1) / e, l);
    let mut irr = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::TableFailed("eigenvector vanishes at identity".into()));
        }
        let inv0 = inv_mod(v[0], l);
        let omega: Vec<u64> = v.iter().map(|x| x * inv0 % l).collect();
        let mut s = 0u64;
        for c in 0..k {
            let t = omega[c] * omega[inverse[c]] % l * inv_mod(classes[c].size % l, l) % l;
            s = (s + t) % l;
        }
        if s == 0 {
            return Err(Error::TableFailed("degenerate norm".into()));
        }
        let d2 = order % l * inv_mod(s, l) % l;
        let bound = (order as f64).sqrt() as u64 + 1;
        let d = (1..=bound)
            .find(|&d| d * d % l == d2 && order.is_multiple_of(d))
            .ok_or_else(|| Error::TableFailed("no integral degree".into()))?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|c| omega[c] * (d % l) % l * inv_mod(classes[c].size % l, l) % l)
            .collect();
        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let o = classes[c].element_order;
            let zo = pow_mod(z, e / o, l);
            let inv_o = inv_mod(o % l, l);
            let mut mults = vec![0i64; e as usize];
            let mut total = 0u64;
            for kk in 0..o {
                let mut acc = 0u64;
                for j in 0..o {
                    let xj = chi_mod[powers[j as usize][c]];
                    let w = pow_mod(zo, (o - (j * kk) % o) % o, l);
                    acc = (acc + xj * w) % l;
                }
                let m = acc * inv_o % l;
                if m > d {
                    return Err(Error::TableFailed("eigenvalue multiplicity out of range".into()));
                }
                total += m;
                mults[(kk * (e / o)) as usize] = m as i64;
            }
            if total != d {
                return Err(Error::TableFailed("multiplicities do not sum to the degree".into()));
            }
            values.push(Cyclotomic::from_exponents(e as u32, &mults));
        }
        irr.push(values);
    }
    Ok(irr)
}

/// Splits an invariant subspace (rows = basis) into eigenspaces of `a`.
fn split(space: &Mat, a: &Mat, l: u64) -> Result<Vec<Mat>> {
    let mut basis = space.clone();
    let pivots = modp::rref(&mut basis, l);
    let d = basis.len();
    // c[i][j] = coordinate i of a·w_j
    let images: Vec<Vec<u64>> = basis.iter().map(|w| modp::mat_vec(a, w, l)).collect();
    let c: Mat = (0..d)
        .map(|i| (0..d).map(|j| images[j][pivots[i]]).collect())
        .collect();
    let poly = modp::charpoly(&c, l);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..l {
        if modp::eval_poly(&poly, lambda, l) != 0 {
            continue;
        }
        let shifted: Mat = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let diag = if i == j { lambda } else { 0 };
                        (c[i][j] + l - diag) % l
                    })
                    .collect()
            })
            .collect();
        let ker = modp::kernel(&shifted, d, l);
        total += ker.len();
        let vecs: Mat = ker
            .iter()
            .map(|y| {
                let mut v = vec![0u64; basis[0].len()];
                for (coef, w) in y.iter().zip(&basis) {
                    for (x, b) in v.iter_mut().zip(w) {
                        *x = (*x + coef * b) % l;
                    }
                }
                v
            })
            .collect();
        out.push(vecs);
    }
    if total != d {
        return Err(Error::TableFailed("class matrix not diagonalizable".into()));
    }
    Ok(out)
}

/// Pointwise product of class functions.
pub fn product(f: &ClassFunction, g: &ClassFunction) -> ClassFunction {
    f.iter().zip(g).map(|(a, b)| a * b).collect()
}

impl CharacterTable {
    pub fn trivial_character(&self) -> ClassFunction {
        vec![Cyclotomic::one(1); self.classes.len()]
    }

    /// `f_H` for a subgroup `H` with table `sub`.
    pub fn restrict(&self, f: &ClassFunction, sub: &CharacterTable) -> Result<ClassFunction> {
        sub.classes
            .iter()
            .map(|c| {
                self.class_of(&c.rep)
                    .map(|i| f[i].clone())
                    .ok_or_else(|| Error::NotSubgroup(format!("{} is not in the group", c.rep)))
            })
            .collect()
    }

    /// `ψ^G` for a class function `ψ` of a subgroup with table `sub`.
    pub fn induce(&self, psi: &ClassFunction, sub: &CharacterTable) -> Result<ClassFunction> {
        let mut acc = vec![Cyclotomic::zero(1); self.classes.len()];
        for (d, c) in sub.classes.iter().enumerate() {
            let i = self
                .class_of(&c.rep)
                .ok_or_else(|| Error::NotSubgroup(format!("{} is not in the group", c.rep)))?;
            acc[i] = &acc[i] + &psi[d].scale(c.size as i64);
        }
        acc.iter()
            .enumerate()
            .map(|(i, v)| v.scale(self.centralizer_order(i) as i64).div_exact(sub.order() as i64))
            .collect()
    }

    /// `Irr(G | η)` for `η` a class function of a normal subgroup with table `sub`.
    pub fn irr_over(&self, sub: &CharacterTable, eta: &ClassFunction) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.irr.len() {
            if self.lies_over(i, sub, eta)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn lies_over(&self, chi: usize, sub: &CharacterTable, eta: &ClassFunction) -> Result<bool> {
        let res = self.restrict(&self.irr[chi], sub)?;
        Ok(!sub.inner_product(&res, eta)?.is_zero())
    }

    /// Whether `η` (a character of the normal subgroup `sub`) is invariant under
    /// conjugation by every element of this group.
    pub fn is_invariant(&self, sub: &CharacterTable, eta: &ClassFunction) -> bool {
        self.group.gens().iter().all(|g| {
            sub.classes
                .iter()
                .enumerate()
                .all(|(c, cl)| match sub.class_of(&cl.rep.conj(g)) {
                    Some(d) => eta[d] == eta[c],
                    None => false,
                })
        })
    }

    /// Whether the invariant irreducible `η` of the normal subgroup `sub`
    /// extends to this group.
    pub fn extension_exists(&self, sub: &CharacterTable, eta: &ClassFunction) -> Result<bool> {
        if !self.is_invariant(sub, eta) {
            return Err(Error::NotInvariant("character is not invariant".into()));
        }
        Ok(self.extensions(sub, eta)?.next().is_some())
    }

    /// Irreducibles restricting exactly to `η`.
    pub fn extensions<'a>(
        &'a self,
        sub: &'a CharacterTable,
        eta: &'a ClassFunction,
    ) -> Result<impl Iterator<Item = usize> + 'a> {
        let res: Vec<ClassFunction> = self
            .irr
            .iter()
            .map(|chi| self.restrict(chi, sub))
            .collect::<Result<_>>()?;
        Ok((0..self.irr.len()).filter(move |&i| &res[i] == eta))
    }

    /// Multiplicative order of a linear character.
    pub fn linear_order(&self, chi: usize) -> u64 {
        let f = &self.irr[chi];
        assert_eq!(self.degree(chi), 1, "not a linear character");
        (1..=self.conductor as u64)
            .find(|&m| {
                (self.conductor as u64).is_multiple_of(m)
                    && f.iter().all(|v| v.pow(m as u32).as_integer() == Some(1))
            })
            .expect("order divides the exponent")
    }

    /// `Lin(G)_{p'}` as indices into `Irr(G)`.
    pub fn linear_pprime(&self, p: u64) -> Vec<usize> {
        (0..self.irr.len())
            .filter(|&i| self.degree(i) == 1 && !self.linear_order(i).is_multiple_of(p))
            .collect()
    }

    /// `ω_χ(K) = |K| χ(x_K) / χ(1)`.
    pub fn central_character(&self, chi: usize) -> Result<ClassFunction> {
        let d = self.degree(chi) as i64;
        self.irr[chi]
            .iter()
            .zip(&self.classes)
            .map(|(v, c)| v.scale(c.size as i64).div_exact(d))
            .collect()
    }

    pub fn defect(&self, chi: usize, p: u64) -> u32 {
        valuation(self.order(), p) - valuation(self.degree(chi), p)
    }

    /// `dz(G)`: characters of p-defect zero.
    pub fn dz(&self, p: u64) -> Vec<usize> {
        (0..self.irr.len()).filter(|&i| self.defect(i, p) == 0).collect()
    }

    pub fn is_pregular(&self, c: usize, p: u64) -> bool {
        !self.classes[c].element_order.is_multiple_of(p)
    }

    pub fn pregular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.is_pregular(c, p)).collect()
    }

    /// p-part of a group order, as used by defect computations.
    pub fn order_p_part(&self, p: u64) -> u64 {
        p_part(self.order(), p)
    }

    /// The class function `x ↦ f(t x t⁻¹)` for `t` normalizing the group.
    pub fn conjugate_function(&self, f: &ClassFunction, t: &Perm) -> Result<ClassFunction> {
        let tinv = t.inverse();
        self.classes
            .iter()
            .map(|c| {
                self.class_of(&c.rep.conj(&tinv))
                    .map(|i| f[i].clone())
                    .ok_or_else(|| Error::NotNormal(format!("{t} does not normalize the group")))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassJson {
    pub rep: String,
    pub size: u64,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PowerMapJson {
    pub prime: u64,
    pub map: Vec<usize>,
}

/// Serialized character table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharacterTableJson {
    pub degree: usize,
    pub generators: Vec<String>,
    pub order: u64,
    pub conductor: u32,
    pub auxiliary_prime: u64,
    pub classes: Vec<ClassJson>,
    pub power_maps: Vec<PowerMapJson>,
    pub irreducibles: Vec<Vec<CyclotomicJson>>,
}

impl CharacterTable {
    pub fn to_json(&self) -> CharacterTableJson {
        CharacterTableJson {
            degree: self.group.degree(),
            generators: self.group.gens().iter().map(|g| g.to_string()).collect(),
            order: self.order(),
            conductor: self.conductor,
            auxiliary_prime: self.aux_prime,
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    rep: c.rep.to_string(),
                    size: c.size,
                    order: c.element_order,
                })
                .collect(),
            power_maps: (2..=self.conductor as u64)
                .filter(|&q| is_prime(q))
                .map(|q| PowerMapJson {
                    prime: q,
                    map: self.power_map(q),
                })
                .collect(),
            irreducibles: self
                .irr
                .iter()
                .map(|row| row.iter().map(|v| v.to_json()).collect())
                .collect(),
        }
    }

    /// Rebuilds a table from its serialized form, checking it against the group.
    pub fn from_json(j: &CharacterTableJson, cap: u64) -> Result<Self> {
        let gens = j
            .generators
            .iter()
            .map(|s| Perm::parse(j.degree, s))
            .collect::<Result<Vec<_>>>()?;
        let g = PermGroup::new(j.degree, gens, cap)?;
        let (classes, class_of) = class_lookup(&g);
        let mismatch = |what: &str| Error::Parse(format!("table does not match its group: {what}"));
        if g.order() != j.order || g.exponent() != j.conductor as u64 {
            return Err(mismatch("order"));
        }
        if classes.len() != j.classes.len()
            || classes.iter().zip(&j.classes).any(|(a, b)| {
                a.rep.to_string() != b.rep || a.size != b.size || a.element_order != b.order
            })
        {
            return Err(mismatch("classes"));
        }
        let e = j.conductor as u64;
        let inverse: Vec<usize> = classes.iter().map(|c| class_of[&c.rep.inverse()]).collect();
        let powers: Vec<Vec<usize>> = (0..e)
            .map(|p| classes.iter().map(|c| class_of[&c.rep.pow(p)]).collect())
            .collect();
        for pm in &j.power_maps {
            if pm.map != powers[(pm.prime % e) as usize] {
                return Err(mismatch("power map"));
            }
        }
        let irr = j
            .irreducibles
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| Cyclotomic::from_json(v).map(|x| x.lift(j.conductor)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let t = CharacterTable {
            group: g,
            conductor: j.conductor,
            aux_prime: j.auxiliary_prime,
            classes,
            class_of,
            inverse,
            powers,
            irr,
        };
        t.verify()?;
        Ok(t)
    }
}
