//! Finite fields `GF(q)` for prime powers `q <= 2^20`.
//!
//! Elements are encoded as integers in `0..q`: for `q = p^k` the encoding of
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! For prime fields this is the usual residue. The encoding order is the
//! canonical element order used throughout the crate, and doubles as the
//! bijection onto host vertices `0..q`.
//!
//! Multiplication goes through discrete log tables built once at construction.

use crate::error::{Error, Result};

pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients from constant term upward (length `k + 1`).
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomial arithmetic over GF(p), coefficient vectors from the constant term up.
mod poly {
    pub fn decode(mut x: u32, p: u32, k: u32) -> Vec<u32> {
        (0..k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn encode(digits: &[u32], p: u32) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let deg = m.len() - 1;
        let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        let p64 = p as u64;
        for top in (deg..r.len()).rev() {
            let c = r[top] % p64;
            if c == 0 {
                continue;
            }
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - deg + j;
                r[idx] = (r[idx] + (p64 - c) * mj as u64) % p64;
            }
        }
        r.truncate(deg);
        r.resize(deg, 0);
        r.into_iter().map(|x| (x % p64) as u32).collect()
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Monic polynomial of degree `deg` whose lower coefficients encode `index`.
    pub fn monic(index: u32, p: u32, deg: u32) -> Vec<u32> {
        let mut coeffs = decode(index, p, deg);
        coeffs.push(1);
        coeffs
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        for d in 1..=deg / 2 {
            for index in 0..p.pow(d) {
                let g = monic(index, p, d);
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        Self::with_bound(q, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(q: u64, bound: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > bound || q > u32::MAX as u64 {
            return Err(Error::FieldTooLarge { q, bound });
        }
        let (p32, q32) = (p as u32, q as u32);

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            // least monic irreducible, ordered by the encoding of its lower coefficients
            // read with the x^{k-1} coefficient most significant
            (0..q32)
                .map(|index| poly::monic(index, p32, k))
                .find(|f| poly::is_irreducible(f, p32))
                .expect("irreducible polynomials exist in every degree")
        };

        let slow_mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return ((a as u64 * b as u64) % p) as u32;
            }
            let prod = poly::mul(&poly::decode(a, p32, k), &poly::decode(b, p32, k), p32);
            poly::encode(&poly::rem(&prod, &modulus, p32), p32)
        };
        let slow_pow = |base: u32, mut e: u64| -> u32 {
            let (mut acc, mut b) = (1u32, base);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            acc
        };

        let order = q - 1;
        let factors = prime_factors(order);
        let primitive = (1..q32)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("the multiplicative group is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for e in 0..order as u32 {
            exp.push(x);
            log[x as usize] = e;
            x = slow_mul(x, primitive);
        }
        debug_assert_eq!(x, 1);

        Ok(Field {
            p: p32,
            k,
            q: q32,
            modulus,
            primitive,
            exp,
            log,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| {
            let n = self.q - 1;
            self.exp[((n - self.log[a as usize]) % n) as usize]
        })
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, e: u64) -> u32 {
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }

    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        let n = self.q as u64 - 1;
        self.log(a).map(|l| n / num_integer::gcd(l as u64, n))
    }
}

/// Cosets of the index-`m` subgroup `C_0 = <g^m>` of the multiplicative group.
#[derive(Debug, Clone)]
pub struct CosetSystem<'f> {
    field: &'f Field,
    index: u32,
    cosets: Vec<Vec<u32>>,
}

impl<'f> CosetSystem<'f> {
    pub fn new(field: &'f Field, m: u64) -> Result<Self> {
        let order = field.order() as u64 - 1;
        if m == 0 || order % m != 0 {
            return Err(Error::IndexDoesNotDivide { m, order });
        }
        let index = m as u32;
        let mut cosets = vec![Vec::new(); index as usize];
        for x in 1..field.order() {
            let j = field.log(x).expect("nonzero") % index;
            cosets[j as usize].push(x);
        }
        Ok(CosetSystem {
            field,
            index,
            cosets,
        })
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Coset `j` is `g^j C_0`; members sorted.
    pub fn cosets(&self) -> &[Vec<u32>] {
        &self.cosets
    }

    pub fn subgroup(&self) -> &[u32] {
        &self.cosets[0]
    }

    /// Coset of a nonzero element; `None` for zero.
    pub fn coset_of(&self, x: u32) -> Option<u32> {
        self.field.log(x).map(|l| l % self.index)
    }

    /// One element from each `{x, -x}` pair of `C_0`, the smaller encoding of the two.
    pub fn pm1_transversal(&self) -> Result<Vec<u32>> {
        let q = self.field.order() as u64;
        let m = self.index as u64;
        if (q - 1) % (2 * m) != 0 {
            return Err(Error::MinusOneNotInSubgroup { q, m });
        }
        Ok(self
            .subgroup()
            .iter()
            .copied()
            .filter(|&x| x < self.field.neg(x))
            .collect())
    }
}
