//! Finite fields `GF(p^m)` and the reduction of cyclotomic integers modulo p.

use crate::arith::{is_prime, p_prime_part};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// An element of `GF(p^m)`, encoded as the base-p digits of its polynomial
/// representative.
pub type Fq = u32;

const MAX_FIELD: u64 = 1 << 22;

/// Reduction `Z[ζ_E] → GF(p^m)` sending `ζ_E` to a fixed element of order `E_{p'}`.
#[derive(Clone, Debug)]
pub struct FpEmbedding {
    p: u64,
    m: u32,
    q: u64,
    master: u64,
    exp: Vec<Fq>,
    log: Vec<u32>,
    /// log of the image of `ζ_E`
    gamma_log: u64,
}

impl FpEmbedding {
    /// Embedding for prime `p` and master exponent `e`; every conductor that
    /// is later reduced must divide `e`.
    pub fn new(p: u64, e: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = p_prime_part(e, p);
        let mut m = 1u32;
        let mut q = p;
        while !(q - 1).is_multiple_of(order) {
            m += 1;
            q *= p;
            if q > MAX_FIELD {
                return Err(Error::CapExceeded {
                    what: "finite field size",
                    limit: MAX_FIELD,
                    actual: q,
                });
            }
        }
        let (exp, log) = build_tables(p, m, q)?;
        Ok(FpEmbedding {
            p,
            m,
            q,
            master: e,
            exp,
            log,
            gamma_log: (q - 1) / order,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn master_exponent(&self) -> u64 {
        self.master
    }

    pub fn zero(&self) -> Fq {
        0
    }

    pub fn one(&self) -> Fq {
        1
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.p as u32;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[s as usize]
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize] as u64;
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn from_int(&self, v: i64) -> Fq {
        v.rem_euclid(self.p as i64) as Fq
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fq) -> u64 {
        let l = self.log[a as usize] as u64;
        (self.q - 1) / crate::arith::gcd(l, self.q - 1)
    }

    /// Image of `ζ_n^k` for `n` dividing the master exponent.
    pub fn root_image(&self, n: u64, k: i64) -> Fq {
        debug_assert_eq!(self.master % n, 0);
        let step = (self.master / n) as i64;
        let e = (k.rem_euclid(n as i64) * step) as u64 * self.gamma_log % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn reduce(&self, x: &Cyclotomic) -> Fq {
        let n = x.conductor() as u64;
        assert_eq!(self.master % n, 0, "conductor {n} does not divide {}", self.master);
        let mut acc = 0;
        for (k, &c) in x.coords().iter().enumerate() {
            if c != 0 {
                acc = self.add(acc, self.mul(self.from_int(c), self.root_image(n, k as i64)));
            }
        }
        acc
    }
}

fn build_tables(p: u64, m: u32, q: u64) -> Result<(Vec<Fq>, Vec<u32>)> {
    // Search monic polynomials of degree m for one with x primitive.
    let pm = q;
    for tail in 0..pm {
        let poly: Vec<u64> = (0..m).map(|i| tail / p.pow(i) % p).collect();
        if poly[0] == 0 {
            continue;
        }
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut cur = vec![0u64; m as usize];
        cur[0] = 1;
        let mut ok = true;
        for i in 0..q - 1 {
            let enc = encode(&cur, p);
            if i > 0 && enc == 1 {
                ok = false;
                break;
            }
            exp.push(enc);
            // multiply by x modulo x^m + Σ poly_i x^i
            let top = cur[m as usize - 1];
            let mut next = vec![0u64; m as usize];
            next[1..].copy_from_slice(&cur[..m as usize - 1]);
            for i in 0..m as usize {
                next[i] = (next[i] + p * p - top * poly[i] % p) % p;
            }
            cur = next;
        }
        if !ok || encode(&cur, p) != 1 {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        return Ok((exp, log));
    }
    Err(Error::Internal(format!("no primitive polynomial of degree {m} over F_{p}")))
}

fn encode(v: &[u64], p: u64) -> Fq {
    v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as Fq
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_sizes() {
        assert_eq!(FpEmbedding::new(2, 24).unwrap().size(), 4);
        assert_eq!(FpEmbedding::new(2, 60).unwrap().size(), 16);
        assert_eq!(FpEmbedding::new(3, 60).unwrap().size(), 81);
        assert_eq!(FpEmbedding::new(5, 60).unwrap().size(), 25);
        assert_eq!(FpEmbedding::new(7, 6).unwrap().size(), 7);
        assert!(FpEmbedding::new(4, 6).is_err());
    }

    #[test]
    fn root_image_has_exact_order() {
        for (p, e) in [(2, 60), (3, 24), (5, 120), (7, 42)] {
            let f = FpEmbedding::new(p, e).unwrap();
            let g = f.root_image(e, 1);
            assert_eq!(f.element_order(g), p_prime_part(e, p));
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = FpEmbedding::new(3, 80).unwrap();
        for a in 0..f.size() as Fq {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    fn arb(n: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-4i64..=4, n as usize)
            .prop_map(move |m| Cyclotomic::from_exponents(n, &m))
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_map(a in arb(12), b in arb(20)) {
            for p in [2u64, 3, 5] {
                let f = FpEmbedding::new(p, 60).unwrap();
                prop_assert_eq!(f.reduce(&(&a * &b)), f.mul(f.reduce(&a), f.reduce(&b)));
                prop_assert_eq!(f.reduce(&(&a + &b)), f.add(f.reduce(&a), f.reduce(&b)));
            }
        }
    }
}
