//! Sections `H/K` of an ambient permutation group, with their character tables.
//!
//! Characters of a section are evaluated on elements of `H` through the
//! projection, so characters of different sections can be compared on the
//! ambient group without building isomorphisms between quotient groups.

use std::sync::Arc;

use crate::chartab::{CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::{quotient_group, GroupHom};
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct Section {
    top: PermGroup,
    kernel: PermGroup,
    proj: GroupHom,
    table: Arc<CharacterTable>,
    preimages: Vec<Perm>,
}

impl Section {
    pub fn new(top: &PermGroup, kernel: &PermGroup) -> Result<Self> {
        let (quotient, proj) = quotient_group(top, kernel)?;
        let table = CharacterTable::new(&quotient)?;
        let mut preimages: Vec<Option<Perm>> = vec![None; table.num_classes()];
        let mut missing = preimages.len();
        for x in top.elements() {
            let c = table.class_of(&proj.apply(x)).expect("image lies in the quotient");
            if preimages[c].is_none() {
                preimages[c] = Some(x.clone());
                missing -= 1;
                if missing == 0 {
                    break;
                }
            }
        }
        let preimages = preimages.into_iter().map(|x| x.expect("projection is onto")).collect();
        Ok(Section {
            top: top.clone(),
            kernel: kernel.clone(),
            proj,
            table: Arc::new(table),
            preimages,
        })
    }

    /// The group itself, as the section `G/1`.
    pub fn whole(g: &PermGroup) -> Result<Self> {
        Self::new(g, &PermGroup::trivial(g.degree()))
    }

    pub fn top(&self) -> &PermGroup {
        &self.top
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn quotient(&self) -> &PermGroup {
        self.table.group()
    }

    pub fn order(&self) -> u64 {
        self.top.order() / self.kernel.order()
    }

    pub fn project(&self, x: &Perm) -> Option<Perm> {
        self.proj.try_apply(x)
    }

    /// Element of `H` mapping into class `c` of the quotient.
    pub fn preimage(&self, c: usize) -> &Perm {
        &self.preimages[c]
    }

    pub fn preimages(&self) -> &[Perm] {
        &self.preimages
    }

    pub fn class_of_element(&self, x: &Perm) -> Option<usize> {
        self.project(x).and_then(|y| self.table.class_of(&y))
    }

    /// `f(xK)` for `x ∈ H`.
    pub fn eval(&self, f: &ClassFunction, x: &Perm) -> Result<Cyclotomic> {
        self.class_of_element(x)
            .map(|c| f[c].clone())
            .ok_or_else(|| Error::NotSubgroup(format!("{x} is not in the section")))
    }

    pub fn chi(&self, i: usize) -> &ClassFunction {
        self.table.chi(i)
    }

    pub fn num_irr(&self) -> usize {
        self.table.irr().len()
    }

    /// The class function `yK ↦ f(t y t⁻¹)` of this section, for `f` a
    /// character of `other`.
    ///
    /// Requires `t H t⁻¹ ≤ H_other` and `t K t⁻¹` inside the kernel of `f`.
    pub fn pull(&self, other: &Section, f: &ClassFunction, t: Option<&Perm>) -> Result<ClassFunction> {
        let tinv = t.map(|t| t.inverse());
        let move_in = |y: &Perm| match &tinv {
            Some(ti) => y.conj(ti),
            None => y.clone(),
        };
        let degree = f[0].clone();
        for k in self.kernel.gens() {
            if other.eval(f, &move_in(k))? != degree {
                return Err(Error::NotSubgroup(
                    "kernel does not act trivially on the character".into(),
                ));
            }
        }
        self.preimages.iter().map(|y| other.eval(f, &move_in(y))).collect()
    }

    /// Index of the irreducible character of this section equal to `f`.
    pub fn index_of(&self, f: &ClassFunction) -> Option<usize> {
        self.table.index_of(f)
    }

    /// Restriction of a class function of this section to the normal
    /// subsection `sub` (same kernel or a smaller one inside this kernel).
    pub fn restrict(&self, f: &ClassFunction, sub: &Section) -> Result<ClassFunction> {
        sub.pull(self, f, None)
    }

    /// Induction of a class function of `sub` (with `sub.top ≤ H`, same kernel).
    pub fn induce(&self, psi: &ClassFunction, sub: &Section) -> Result<ClassFunction> {
        if sub.kernel != self.kernel {
            return Err(Error::NotSubgroup("induction needs a common kernel".into()));
        }
        let mut acc = vec![Cyclotomic::zero(1); self.table.num_classes()];
        for (d, y) in sub.preimages.iter().enumerate() {
            let c = self
                .class_of_element(y)
                .ok_or_else(|| Error::NotSubgroup(format!("{y} is not in the section")))?;
            let size = sub.table.classes()[d].size as i64;
            acc[c] = &acc[c] + &psi[d].scale(size);
        }
        acc.iter()
            .enumerate()
            .map(|(c, v)| {
                v.scale(self.table.centralizer_order(c) as i64)
                    .div_exact(sub.order() as i64)
            })
            .collect()
    }

    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Cyclotomic> {
        self.table.inner_product(f, g)
    }

    /// `Irr(self | η)` for `η` a character of a normal subsection.
    pub fn irr_over(&self, sub: &Section, eta: &ClassFunction) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.num_irr() {
            if self.lies_over(i, sub, eta)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn lies_over(&self, chi: usize, sub: &Section, eta: &ClassFunction) -> Result<bool> {
        let res = self.restrict(self.chi(chi), sub)?;
        Ok(!sub.inner_product(&res, eta)?.is_zero())
    }

    /// Whether the character `f` is invariant under conjugation by `t`
    /// (`t` normalizing both `H` and `K`).
    pub fn is_invariant_under(&self, f: &ClassFunction, t: &Perm) -> Result<bool> {
        Ok(&self.pull(self, f, Some(t))? == f)
    }

    /// Irreducibles of this section restricting exactly to `η`.
    pub fn extensions_of(&self, sub: &Section, eta: &ClassFunction) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.num_irr() {
            if &self.restrict(self.chi(i), sub)? == eta {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn dz(&self, p: u64) -> Vec<usize> {
        self.table.dz(p)
    }
}
