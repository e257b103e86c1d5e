use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree-1}`.
///
/// Products are read left to right: `a.mul(&b)` applies `a` first, then `b`,
/// so points are acted on from the right (`i^(ab) = (i^a)^b`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijective { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from cycles written with 1-based points.
    pub fn from_cycles_1based(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p == 0 || p as usize > degree || q == 0 || q as usize > degree {
                    return Err(Error::NotBijective { degree });
                }
                let p0 = (p - 1) as usize;
                if touched[p0] {
                    return Err(Error::NotBijective { degree });
                }
                touched[p0] = true;
                images[p0] = q - 1;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self.images.iter().map(|&x| other.images[x as usize]).collect();
        Permutation { images }
    }

    /// Writes `self * other` into `out` without allocating.
    #[inline]
    pub(crate) fn mul_into(&self, other: &Permutation, out: &mut Permutation) {
        for (o, &x) in out.images.iter_mut().zip(self.images.iter()) {
            *o = other.images[x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> BigUint {
        let mut lens: Vec<u64> = self.cycles().iter().map(|c| c.len() as u64).collect();
        lens.sort_unstable();
        lens.dedup();
        let mut acc = BigUint::one();
        for l in lens {
            let l = BigUint::from(l);
            let g = num_integer_gcd(&acc, &l);
            acc = acc * &l / g;
        }
        acc
    }

    /// Element order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    /// `self^k` for any integer exponent, computed cycle by cycle.
    pub fn pow(&self, k: i64) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + shift) % cycle.len()];
            }
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    pub fn pow_big(&self, k: &BigUint) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for cycle in self.cycles() {
            let shift = (k % BigUint::from(cycle.len())).to_u64_digits().first().copied().unwrap_or(0) as usize;
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + shift) % cycle.len()];
            }
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// The power of `self` of `p`-power order generating the Sylow part of `<self>`.
    pub fn p_part(&self, p: u64) -> Permutation {
        let ord = self.order();
        let pb = BigUint::from(p);
        let mut cofactor = ord;
        while (&cofactor % &pb) == BigUint::from(0u32) {
            cofactor /= &pb;
        }
        self.pow_big(&cofactor)
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }
}

fn num_integer_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigUint::from(0u32) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with 1-based points, identity printed as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() < 2 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// One letter of a word: a generator index, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Signed 1-based encoding: `+k` is generator `k-1`, `-k` its inverse.
    pub fn signed(self) -> i64 {
        let v = self.gen as i64 + 1;
        if self.inverse {
            -v
        } else {
            v
        }
    }
}

/// A word in the generators of a group, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn evaluate<T: GroupTarget>(&self, gens: &[T], inverses: &[T], identity: &T) -> T {
        let mut acc = identity.clone();
        for l in &self.0 {
            let g = if l.inverse { &inverses[l.gen] } else { &gens[l.gen] };
            acc = acc.op(g);
        }
        acc
    }
}

/// Anything a word can be evaluated in: permutations, invertible matrices.
pub trait GroupTarget: Clone {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl GroupTarget for Permutation {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_left_to_right() {
        let a = Permutation::from_cycles_1based(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles_1based(3, &[&[2, 3]]).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.mul(&b).apply(0), 2);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles_1based(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn conjugation_matches_definition() {
        let a = Permutation::from_cycles_1based(5, &[&[1, 2, 3]]).unwrap();
        let g = Permutation::from_cycles_1based(5, &[&[1, 4], &[2, 5]]).unwrap();
        assert_eq!(a.conjugate_by(&g), g.inverse().mul(&a).mul(&g));
    }

    #[test]
    fn order_and_pow() {
        let a = Permutation::from_cycles_1based(7, &[&[1, 2], &[3, 4, 5]]).unwrap();
        assert_eq!(a.order_u64(), Some(6));
        assert!(a.pow(6).is_identity());
        assert_eq!(a.pow(-1), a.inverse());
        assert_eq!(a.pow(4), a.mul(&a).mul(&a).mul(&a));
        let two = a.p_part(2);
        assert_eq!(two.order_u64(), Some(2));
        assert_eq!(a.p_part(3).order_u64(), Some(3));
    }

    #[test]
    fn display_is_one_based() {
        let a = Permutation::from_cycles_1based(4, &[&[1, 3, 4]]).unwrap();
        assert_eq!(a.to_string(), "(1,3,4)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }
}
