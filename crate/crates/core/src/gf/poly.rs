use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Elem, Field};
use super::matrix::{FqMatrix, SpanBasis};

/// Seed for equal-degree splitting.
const SPLIT_SEED: u64 = 0x5eed_f00d;

/// Univariate polynomial, coefficients from the constant term up, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::new(field, vec![1])
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `x`.
    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![0, 1])
    }

    /// `x - c`.
    pub fn linear(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![field.neg(c), 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).unwrap();
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let mut v = self.coeffs.clone();
        self.field.scale_in_place(&mut v, c);
        Poly::new(&self.field, v)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = self.coeffs.clone();
        v.resize(n, 0);
        self.field.axpy(&mut v[..other.coeffs.len()], 1, &other.coeffs);
        Poly::new(&self.field, v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            self.field.axpy(&mut v[i..i + other.coeffs.len()], a, &other.coeffs);
        }
        Poly::new(&self.field, v)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.leading()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            if c != 0 {
                q[k] = c;
                f.axpy(&mut r[k..=k + dd], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        let g = self.gcd(other);
        self.mul(other).div_exact(&g).monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(c, f.from_int(k as i64)))
            .collect();
        Poly::new(f, v)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &FqMatrix) -> FqMatrix {
        let n = a.rows();
        let mut acc = FqMatrix::zeros(&self.field, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// `p(A) v` for a column vector `v`.
    pub fn eval_matrix_vec(&self, a: &FqMatrix, v: &[Elem]) -> Vec<Elem> {
        let mut acc = vec![0; v.len()];
        for &c in self.coeffs.iter().rev() {
            acc = a.mul_vec(&acc);
            self.field.axpy(&mut acc, c, v);
        }
        acc
    }

    /// The polynomial whose `p`-th power is `self` (all exponents divisible by `p`).
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        let root_exp = (f.q() / p) as u64;
        let v = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, root_exp))
            .collect();
        Poly::new(f, v)
    }

    /// Square-free decomposition of a monic polynomial: `(g, m)` with `self = prod g^m`.
    pub fn square_free(&self) -> Vec<(Poly, u32)> {
        let f = &self.field;
        let p = f.p();
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root().square_free() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if !z.is_one() {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if !c.is_one() {
            for (g, m) in c.monic().pth_root().square_free() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a square-free monic polynomial.
    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let f = &self.field;
        let q = BigUint::from(f.q());
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = Poly::x(f);
        let mut h = x.rem(&rest);
        let mut i = 1;
        while rest.deg() >= 2 * i {
            h = h.powmod(&q, &rest);
            let g = rest.gcd(&h.sub(&x));
            if !g.is_one() {
                rest = rest.div_exact(&g);
                h = h.rem(&rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.deg() > 0 {
            let d = rest.deg();
            out.push((rest, d));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let f = &self.field;
        let n = self.deg();
        if n == d {
            return vec![self.clone()];
        }
        loop {
            let a = Poly::new(f, (0..n).map(|_| rng.gen_range(0..f.q()) as u8).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if f.is_char2() {
                // trace map to GF(2)
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..(f.e() as usize * d) {
                    t = t.mul(&t).rem(self);
                    s = s.add(&t);
                }
                s
            } else {
                let e = (BigUint::from(f.q()).pow(d as u32) - 1u32) / 2u32;
                a.powmod(&e, self).sub(&Poly::one(f))
            };
            let g = self.gcd(&b);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let mut out = g.equal_degree(d, rng);
                out.extend(self.div_exact(&g).equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, sorted, plus the
    /// leading coefficient of `self`.
    pub fn factor(&self) -> (Elem, Vec<(Poly, u32)>) {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out = Vec::new();
        for (g, m) in self.monic().square_free() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d, &mut rng) {
                    out.push((irr, m));
                }
            }
        }
        out.sort();
        (self.leading(), out)
    }

    /// Irreducibility by distinct-degree factorization.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let m = self.monic();
        let sf = m.square_free();
        if sf.len() != 1 || sf[0].1 != 1 {
            return false;
        }
        let dd = m.distinct_degree();
        dd.len() == 1 && dd[0].1 == n
    }
}

/// Minimal polynomial of `v` under `A` (acting on column vectors), along with
/// the Krylov vectors `v, Av, ...` spanning the cyclic subspace.
fn local_min_poly(a: &FqMatrix, v: &[Elem]) -> (Poly, Vec<Vec<Elem>>) {
    let f = a.field().clone();
    let n = v.len();
    // echelon rows with the combination (in powers of A) that produced them
    let mut rows: Vec<(Vec<Elem>, usize, Vec<Elem>)> = Vec::new();
    let mut krylov = Vec::new();
    let mut cur = v.to_vec();
    for k in 0..=n {
        let mut w = cur.clone();
        let mut combo = vec![0; k + 1];
        combo[k] = 1;
        for (row, p, c) in &rows {
            let s = w[*p];
            if s != 0 {
                let ns = f.neg(s);
                f.axpy(&mut w, ns, row);
                f.axpy(&mut combo[..c.len()], ns, c);
            }
        }
        match w.iter().position(|&x| x != 0) {
            None => return (Poly::new(&f, combo), krylov),
            Some(p) => {
                let inv = f.inv(w[p]).unwrap();
                f.scale_in_place(&mut w, inv);
                f.scale_in_place(&mut combo, inv);
                rows.push((w, p, combo));
            }
        }
        krylov.push(cur.clone());
        cur = a.mul_vec(&cur);
    }
    unreachable!("Krylov sequence longer than the dimension")
}

/// Minimal polynomial of a square matrix.
pub fn min_poly(a: &FqMatrix) -> Poly {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let f = a.field().clone();
    let n = a.rows();
    let mut mu = Poly::one(&f);
    let mut span = SpanBasis::new(&f, n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if span.contains(&e) {
            continue;
        }
        let w = mu.eval_matrix_vec(a, &e);
        if w.iter().any(|&x| x != 0) {
            let (m, _) = local_min_poly(a, &w);
            mu = mu.mul(&m);
        }
        let (_, kry) = local_min_poly(a, &e);
        for k in &kry {
            span.insert(k);
        }
        // the span must stay A-invariant: close it
        let mut frontier: Vec<Vec<Elem>> = kry;
        while let Some(u) = frontier.pop() {
            let au = a.mul_vec(&u);
            if span.insert(&au) {
                frontier.push(au);
            }
        }
        if span.len() == n {
            break;
        }
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Field, c: &[u8]) -> Poly {
        Poly::new(f, c.to_vec())
    }

    /// det(xI - A) by cofactor expansion over polynomial entries.
    fn char_poly_by_expansion(a: &FqMatrix) -> Poly {
        let f = a.field().clone();
        let n = a.rows();
        let entries: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Poly::constant(&f, f.neg(a.get(i, j)));
                        if i == j {
                            c.add(&Poly::x(&f))
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(m: &[Vec<Poly>], f: &Field) -> Poly {
            if m.is_empty() {
                return Poly::one(f);
            }
            let mut acc = Poly::zero(f);
            for j in 0..m.len() {
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&det(&minor, f));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        det(&entries, &f)
    }

    #[test]
    fn identity_and_jordan_block() {
        let f = Field::gf2(8).unwrap();
        assert_eq!(min_poly(&FqMatrix::identity(&f, 4)), Poly::linear(&f, 1));
        let j = FqMatrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(min_poly(&j), p(&f, &[0, 0, 0, 1]));
    }

    #[test]
    fn min_poly_divides_char_poly_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let fields = [Field::gf2(1).unwrap(), Field::gf2(8).unwrap(), Field::new(3, 2).unwrap(), Field::new(5, 1).unwrap()];
        for t in 0..100 {
            let f = &fields[t % fields.len()];
            let n = 1 + t % 6;
            let data: Vec<u8> = (0..n * n)
                .map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..f.q()) as u8 })
                .collect();
            let a = FqMatrix::from_vec(f, n, n, data).unwrap();
            let mu = min_poly(&a);
            let chi = char_poly_by_expansion(&a);
            assert!(chi.rem(&mu).is_zero(), "{mu} does not divide {chi}");
            assert!(mu.eval_matrix(&a).is_zero());
            // no proper divisor annihilates: removing any irreducible factor fails
            for (g, _) in mu.factor().1 {
                let smaller = mu.div_exact(&g);
                assert!(!smaller.eval_matrix(&a).is_zero());
            }
        }
    }

    #[test]
    fn factor_x2_plus_x_over_gf2() {
        let f = Field::gf2(1).unwrap();
        let (_, fac) = p(&f, &[0, 1, 1]).factor();
        assert_eq!(fac, vec![(p(&f, &[0, 1]), 1), (p(&f, &[1, 1]), 1)]);
    }

    fn irreducible_by_search(g: &Poly) -> bool {
        let f = g.field().clone();
        let n = g.degree().unwrap();
        // every monic divisor of degree 1..=n/2
        for d in 1..=n / 2 {
            let count = f.q().pow(d as u32);
            for code in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut x = code;
                for _ in 0..d {
                    c.push((x % f.q()) as u8);
                    x /= f.q();
                }
                c.push(1);
                if g.rem(&Poly::new(&f, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factor_round_trip_on_random_polys() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (pp, e) in [(2, 1), (2, 2), (2, 8), (3, 1), (5, 2), (7, 1)] {
            let f = Field::new(pp, e).unwrap();
            for _ in 0..25 {
                // products of random pieces, with repeats
                let mut g = Poly::constant(&f, rng.gen_range(1..f.q()) as u8);
                for _ in 0..rng.gen_range(1..4) {
                    let d = rng.gen_range(1..5);
                    let piece = Poly::new(&f, (0..=d).map(|_| rng.gen_range(0..f.q()) as u8).collect());
                    if piece.degree().unwrap_or(0) == 0 {
                        continue;
                    }
                    let times = rng.gen_range(1..3);
                    for _ in 0..times {
                        g = g.mul(&piece);
                    }
                }
                let (lead, fac) = g.factor();
                let mut back = Poly::constant(&f, lead);
                for (h, m) in &fac {
                    assert_eq!(h.leading(), 1);
                    if h.degree().unwrap() <= 4 && f.q() <= 16 {
                        assert!(irreducible_by_search(h), "{h} reducible");
                    } else {
                        assert!(h.is_irreducible());
                    }
                    for _ in 0..*m {
                        back = back.mul(h);
                    }
                }
                assert_eq!(back, g);
                let mut sorted = fac.clone();
                sorted.sort();
                assert_eq!(sorted, fac);
            }
        }
    }

    #[test]
    fn factoring_is_deterministic() {
        let f = Field::gf2(8).unwrap();
        let g = p(&f, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(g.factor(), g.factor());
        // x^15 - 1 splits completely over GF(256)
        assert!(g.factor().1.iter().all(|(h, _)| h.degree() == Some(1)));
    }

    #[test]
    fn divrem_identity() {
        let f = Field::new(13, 1).unwrap();
        let a = p(&f, &[3, 0, 5, 7, 1]);
        let b = p(&f, &[2, 9]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }
}
