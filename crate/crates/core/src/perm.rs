//! Permutations on `{0, .., n-1}` (displayed 1-based in cycle notation).
//!
//! Products are right actions: `a.mul(&b)` applies `a` first and then `b`,
//! so `x^(ab) = (x^a)^b`. Conjugation is `x^g = g⁻¹ x g`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range 1..={degree}"
                    )));
                }
                if used[x - 1] {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated")));
                }
                used[x - 1] = true;
                images[x - 1] = cyc[(i + 1) % cyc.len()] - 1;
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let s = text.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            if rest_trim.is_empty() {
                break;
            }
            if !rest_trim.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' in {text:?}")));
            }
            let close = rest_trim
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &rest_trim[1..close];
            let pts: std::result::Result<Vec<usize>, _> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>())
                .collect();
            let pts = pts.map_err(|e| Error::Parse(format!("bad point in {text:?}: {e}")))?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = &rest_trim[close + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Perm { images }
    }

    /// `g⁻¹ · self · g`.
    pub fn conj(&self, g: &Perm) -> Perm {
        // x ↦ g(self(g⁻¹(x)))
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Perm { images }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| crate::arith::lcm(acc, c.len() as u64))
    }

    /// Non-trivial cycles, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }
}

/// Function composition `(a∘b)(x) = a(b(x))`.
pub fn compose(a: &Perm, b: &Perm) -> Result<Perm> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(b.mul(a))
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t = p(3, "(1 2)");
        assert!(compose(&t, &t).unwrap().is_identity());
        assert_eq!(compose(&p(3, "(1 2 3)"), &t).unwrap(), p(3, "(1 3)"));
        let a = p(3, "(1 2 3)");
        assert_eq!(compose(&a, &Perm::identity(3)).unwrap(), a);
        assert!(matches!(
            compose(&a, &Perm::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse(3, "(1 2 2)").is_err());
        assert!(Perm::parse(3, "(1 4)").is_err());
        assert!(Perm::parse(3, "(1 2").is_err());
        assert!(Perm::parse(3, "(1 x)").is_err());
        assert!(Perm::parse(3, "()").unwrap().is_identity());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn display_roundtrip() {
        let a = p(6, "(1 2 3)(4 5)");
        assert_eq!(a.to_string(), "(1 2 3)(4 5)");
        assert_eq!(a.order(), 6);
        assert_eq!(p(6, &a.to_string()), a);
    }

    #[test]
    fn conj_is_g_inverse_x_g() {
        let x = p(4, "(1 2 3 4)");
        let g = p(4, "(1 3)");
        assert_eq!(x.conj(&g), g.inverse().mul(&x).mul(&g));
    }
}
