use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Fixed moduli (Conway polynomials), coefficients from the constant term up.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 1, &[9, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 1, &[11, 1]),
    (13, 2, &[2, 12, 1]),
];

/// Characteristic, degree and the modulus defining `GF(p^e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        MODULI
            .iter()
            .find(|(pp, ee, _)| *pp == p && *ee == e)
            .map(|(_, _, m)| FieldSpec {
                p,
                e,
                modulus: m.to_vec(),
            })
            .ok_or(Error::UnsupportedField { p, e })
    }

    /// Field order `p^e`.
    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }
}

/// An element of a field in its integer encoding `sum c_i p^i` (coefficients
/// of the polynomial basis). Every supported field has at most 256 elements.
pub type Elem = u8;

struct Tables {
    spec: FieldSpec,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    log: Vec<u16>,
    exp: Vec<u8>,
}

/// Arithmetic in `GF(p^e)` through full lookup tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.spec.p, self.0.spec.e)
    }
}

fn digits(mut x: usize, p: usize, e: usize) -> Vec<usize> {
    let mut d = vec![0; e];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::from_spec(FieldSpec::new(p, e)?)
    }

    pub fn gf2(e: u32) -> Result<Self> {
        Self::new(2, e)
    }

    /// `GF(q)` for a prime power `q` in the modulus table.
    pub fn of_order(q: u32) -> Result<Self> {
        for &(p, e, _) in MODULI {
            if p.pow(e) == q {
                return Self::new(p, e);
            }
        }
        Err(Error::InvalidArgument(format!("no field of order {q} in the modulus table")))
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        let (p, e) = (spec.p as usize, spec.e as usize);
        let q = p.pow(e as u32);
        if q > 256 {
            return Err(Error::UnsupportedField { p: spec.p, e: spec.e });
        }
        let m: Vec<usize> = spec.modulus.iter().map(|&c| c as usize).collect();

        let mut add = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u8;
            }
            let n: Vec<usize> = da.iter().map(|x| (p - x) % p).collect();
            neg[a] = undigits(&n, p) as u8;
        }

        // powers of x modulo the modulus
        let times_x = |d: &[usize]| -> Vec<usize> {
            let mut shifted = vec![0; e + 1];
            shifted[1..].copy_from_slice(d);
            let lead = shifted[e];
            for k in 0..=e {
                shifted[k] = (shifted[k] + p * p - lead * m[k] % p) % p;
            }
            shifted.truncate(e);
            shifted
        };
        let mut exp = vec![0u8; 2 * q];
        let mut log = vec![u16::MAX; q];
        let mut cur = digits(1, p, e);
        let mut order = 0;
        for k in 0..q - 1 {
            let v = undigits(&cur, p);
            if log[v] != u16::MAX {
                break;
            }
            log[v] = k as u16;
            exp[k] = v as u8;
            order += 1;
            cur = times_x(&cur);
        }
        if order != q - 1 {
            return Err(Error::Validation(format!(
                "modulus for GF({p}^{e}) is not primitive (x has order {order})"
            )));
        }
        for k in q - 1..2 * q {
            exp[k] = exp[k - (q - 1)];
        }

        let mut mul = vec![0u8; q * q];
        let mut inv = vec![0u8; q];
        for a in 1..q {
            for b in 1..q {
                mul[a * q + b] = exp[log[a] as usize + log[b] as usize];
            }
            inv[a] = exp[(q - 1 - log[a] as usize) % (q - 1)];
        }
        Ok(Field(Arc::new(Tables {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
            log,
            exp,
        })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn e(&self) -> u32 {
        self.0.spec.e
    }

    /// Number of elements.
    pub fn q(&self) -> usize {
        self.0.q
    }

    #[inline]
    pub fn is_char2(&self) -> bool {
        self.0.spec.p == 2
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.is_char2() {
            a ^ b
        } else {
            self.0.add[a as usize * self.0.q + b as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (k % n)) % n) as usize]
    }

    /// `a^k` for a signed exponent (`a` nonzero when `k < 0`).
    pub fn pow_signed(&self, a: Elem, k: i64) -> Elem {
        if k >= 0 {
            self.pow(a, k as u64)
        } else {
            self.pow(self.inv(a).expect("inverse of zero"), k.unsigned_abs())
        }
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.spec.p as u64)
    }

    /// The fixed primitive element (the class of `x`).
    pub fn primitive(&self) -> Elem {
        self.0.exp[1]
    }

    /// `primitive^k`.
    pub fn exp(&self, k: u64) -> Elem {
        self.0.exp[(k % (self.0.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the primitive element.
    pub fn log(&self, a: Elem) -> Option<u64> {
        (a != 0).then(|| self.0.log[a as usize] as u64)
    }

    pub fn mul_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)?;
        let n = self.0.q as u64 - 1;
        Some(n / gcd(n, l))
    }

    /// Image of the integer `n` under `Z -> GF(p)`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.spec.p as i64) as Elem
    }

    /// Row of the multiplication table for `c`: `mul_row(c)[x] = c * x`.
    #[inline]
    pub(crate) fn mul_row(&self, c: Elem) -> &[u8] {
        let q = self.0.q;
        &self.0.mul[c as usize * q..(c as usize + 1) * q]
    }

    /// `dst += c * src` elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c == 0 {
            return;
        }
        let mr = self.mul_row(c);
        if self.is_char2() {
            if c == 1 {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            } else {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d ^= mr[s as usize];
                }
            }
        } else {
            let q = self.0.q;
            let add = &self.0.add;
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = add[*d as usize * q + mr[s as usize] as usize];
            }
        }
    }

    pub fn scale_in_place(&self, v: &mut [Elem], c: Elem) {
        let mr = self.mul_row(c);
        for x in v.iter_mut() {
            *x = mr[*x as usize];
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gf2_one_plus_one() {
        let f = Field::gf2(1).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf256_primitive_order_by_direct_powering() {
        let f = Field::gf2(8).unwrap();
        let g = f.primitive();
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = f.mul(x, g);
            k += 1;
        }
        assert_eq!(k, 255);
    }

    #[test]
    fn gf25_frobenius_has_order_two() {
        let f = Field::new(5, 2).unwrap();
        let moved = (0..25u8).any(|a| f.frobenius(a) != a);
        assert!(moved);
        for a in 0..25u8 {
            assert_eq!(f.frobenius(f.frobenius(a)), a);
        }
    }

    #[test]
    fn every_table_entry_is_primitive() {
        for &(p, e, _) in MODULI {
            let f = Field::new(p, e).unwrap();
            assert_eq!(f.mul_order(f.primitive()), Some(f.q() as u64 - 1));
        }
    }

    #[test]
    fn unsupported_field_is_an_error() {
        assert!(matches!(Field::new(2, 9), Err(Error::UnsupportedField { .. })));
        assert!(matches!(Field::new(4, 1), Err(Error::UnsupportedField { .. })));
    }

    #[test]
    fn fermat_and_axioms_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &(p, e, _) in MODULI {
            let f = Field::new(p, e).unwrap();
            let q = f.q() as u64;
            for _ in 0..1000 {
                let a = rng.gen_range(0..q) as u8;
                let b = rng.gen_range(0..q) as u8;
                let c = rng.gen_range(0..q) as u8;
                assert_eq!(f.pow(a, q), a);
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn encoding_is_bijective() {
        let f = Field::new(3, 2).unwrap();
        let mut seen = [false; 9];
        for k in 0..8 {
            seen[f.exp(k) as usize] = true;
        }
        seen[0] = true;
        assert!(seen.iter().all(|&s| s));
    }
}
