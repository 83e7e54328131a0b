//! Exact elements of cyclotomic fields.
//!
//! An element of `Q(ζ_n)` with integral coordinates is stored in the power
//! basis `1, ζ, …, ζ^(φ(n)-1)` of `Z[ζ_n]`; exponents at or above `φ(n)` are
//! reduced with the n-th cyclotomic polynomial. Because the power basis is an
//! integral basis, equality is coordinate equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, lcm};
use crate::error::{Error, Result};

#[derive(Debug)]
struct Basis {
    phi: usize,
    /// `powers[k]` = coordinates of `ζ^k` for `0 ≤ k < n`.
    powers: Vec<Vec<i64>>,
}

/// Integer coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for j in 0..=dd {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "division not exact");
    q
}

fn basis(n: u32) -> Arc<Basis> {
    static BASES: OnceLock<RwLock<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
    let lock = BASES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = lock.read().unwrap().get(&n) {
        return b.clone();
    }
    let phi = euler_phi(n as u64) as usize;
    let poly = cyclotomic_polynomial(n);
    let mut powers: Vec<Vec<i64>> = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        for (i, x) in next.iter_mut().enumerate() {
            *x -= top * poly[i];
        }
        cur = next;
    }
    let b = Arc::new(Basis { phi, powers });
    lock.write().unwrap().insert(n, b.clone());
    b
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<i64>,
}

/// Wire form: `{"conductor": n, "coeffs": [[k, c], ...]}` over the power basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CyclotomicJson {
    pub conductor: u32,
    pub coeffs: Vec<(u32, i64)>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        let phi = euler_phi(n as u64) as usize;
        Cyclotomic { n, c: vec![0; phi] }
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = v;
        z
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k`.
    pub fn root(n: u32, k: i64) -> Self {
        let b = basis(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            c: b.powers[k].clone(),
        }
    }

    /// `Σ m_k ζ_n^k` from exponent multiplicities.
    pub fn from_exponents(n: u32, mults: &[i64]) -> Self {
        let b = basis(n);
        let mut c = vec![0i64; b.phi];
        for (k, &m) in mults.iter().enumerate() {
            if m != 0 {
                for (x, y) in c.iter_mut().zip(&b.powers[k % n as usize]) {
                    *x += m * y;
                }
            }
        }
        Cyclotomic { n, c }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Re-expresses the element over `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert_eq!(m % self.n, 0, "conductor {} does not divide {m}", self.n);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let b = basis(m);
        let mut c = vec![0i64; b.phi];
        for (k, &x) in self.c.iter().enumerate() {
            if x != 0 {
                for (y, z) in c.iter_mut().zip(&b.powers[k * step]) {
                    *y += x * z;
                }
            }
        }
        Cyclotomic { n: m, c }
    }

    fn align(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.n as u64, b.n as u64) as u32;
            (a.lift(m), b.lift(m))
        }
    }

    /// Image under `ζ ↦ ζ^q` (`q` coprime to the conductor).
    pub fn galois(&self, q: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(gcd(q.rem_euclid(n) as u64, n as u64), 1, "not a Galois automorphism");
        let b = basis(self.n);
        let mut c = vec![0i64; b.phi];
        for (k, &x) in self.c.iter().enumerate() {
            if x != 0 {
                let e = ((k as i64) * q).rem_euclid(n) as usize;
                for (y, z) in c.iter_mut().zip(&b.powers[e]) {
                    *y += x * z;
                }
            }
        }
        Cyclotomic { n: self.n, c }
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    /// Division by an integer, permitted only when exact.
    pub fn div_exact(&self, d: i64) -> Result<Self> {
        if d == 0 || self.c.iter().any(|x| x % d != 0) {
            return Err(Error::InexactDivision(format!("{self} / {d}")));
        }
        Ok(Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| x / d).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates under `ζ_n ↦ root` in a ring where `reduce_int` maps integers
    /// and `mul`/`add` are the ring operations.
    pub fn evaluate<T: Clone>(
        &self,
        root: &T,
        one: T,
        reduce_int: impl Fn(i64) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let mut acc = reduce_int(0);
        let mut power = one;
        for &x in &self.c {
            if x != 0 {
                acc = add(&acc, &mul(&reduce_int(x), &power));
            }
            power = mul(&power, root);
        }
        acc
    }

    pub fn to_json(&self) -> CyclotomicJson {
        CyclotomicJson {
            conductor: self.n,
            coeffs: self
                .c
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| (k as u32, x))
                .collect(),
        }
    }

    pub fn from_json(j: &CyclotomicJson) -> Result<Self> {
        if j.conductor == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        let mut z = Self::zero(j.conductor);
        for &(k, x) in &j.coeffs {
            let k = k as usize;
            if k >= z.c.len() {
                return Err(Error::Parse(format!(
                    "exponent {k} outside the power basis of conductor {}",
                    j.conductor
                )));
            }
            z.c[k] += x;
        }
        Ok(z)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::align(self, other);
        a.c == b.c
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of coordinates over the common conductor.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = Self::align(self, other);
        a.c.cmp(&b.c)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::align(self, rhs);
        Cyclotomic {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::align(self, rhs);
        Cyclotomic {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::align(self, rhs);
        let bas = basis(a.n);
        let n = a.n as usize;
        let mut acc = vec![0i64; n];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                if y != 0 {
                    acc[(i + j) % n] += x * y;
                }
            }
        }
        let mut c = vec![0i64; bas.phi];
        for (k, &m) in acc.iter().enumerate() {
            if m != 0 {
                for (y, z) in c.iter_mut().zip(&bas.powers[k]) {
                    *y += m * z;
                }
            }
        }
        Cyclotomic { n: a.n, c }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let sign = if x < 0 { "-" } else if first { "" } else { "+" };
            let mag = x.abs();
            let term = match (k, mag) {
                (0, m) => format!("{m}"),
                (k, 1) => format!("z{}^{k}", self.n),
                (k, m) => format!("{m}*z{}^{k}", self.n),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        let w = Cyclotomic::root(3, 1);
        let sum = &(&Cyclotomic::one(3) + &w) + &w.conj();
        assert!(sum.is_zero());
        assert_eq!(w.pow(3), Cyclotomic::one(3));
        // ζ_6 = -ζ_3^2
        assert_eq!(Cyclotomic::root(6, 1), -&Cyclotomic::root(3, 2));
        // equality across conductors
        assert_eq!(Cyclotomic::root(4, 2), Cyclotomic::from_int(1, -1));
        assert_eq!(Cyclotomic::root(2, 1), Cyclotomic::from_int(7, -1));
    }

    #[test]
    fn exact_division() {
        let x = Cyclotomic::root(5, 2).scale(6);
        assert_eq!(x.div_exact(3).unwrap(), Cyclotomic::root(5, 2).scale(2));
        assert!(x.div_exact(4).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let x = &Cyclotomic::root(12, 5) + &Cyclotomic::from_int(12, 3);
        let j = x.to_json();
        assert_eq!(Cyclotomic::from_json(&j).unwrap(), x);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"conductor":12,"coeffs":[[0,3],[1,-1],[3,1]]}"#);
    }

    fn arb(n: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-3i64..=3, n as usize)
            .prop_map(move |m| Cyclotomic::from_exponents(n, &m))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb(12), b in arb(12), c in arb(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn lifting_is_a_ring_map(a in arb(6), b in arb(6)) {
            prop_assert_eq!((&a * &b).lift(30), &a.lift(30) * &b.lift(30));
            prop_assert_eq!((&a + &b).lift(30), &a.lift(30) + &b.lift(30));
        }
    }
}
