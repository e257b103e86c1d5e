use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FqMatrix};

/// `A -> diag(A, det(A)^-1)`, embedding `GL_2` into `SL_3`.
pub fn iota(a: &FqMatrix) -> Result<FqMatrix> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Dimension(format!("iota takes a 2x2 matrix, got {}x{}", a.rows(), a.cols())));
    }
    let f = a.field();
    let d = f.inv(a.det()).ok_or_else(|| Error::InvalidArgument("iota of a singular matrix".into()))?;
    Ok(FqMatrix::block_diagonal(f, &[a, &FqMatrix::scalar(f, 1, d)]))
}

/// Named elements of `SL_3^ε(q)` around the Klein four subgroup `Q = <u, v>`
/// of diagonal sign matrices.
#[derive(Clone, Debug)]
pub struct KleinElements {
    pub eps: i32,
    pub q: u32,
    pub field: Field,
    /// Generator of the odd-order part of the diagonal torus' cyclic factor.
    pub zeta: Elem,
    pub u: FqMatrix,
    pub v: FqMatrix,
    /// Squares to `u`, and together with `a` permutes `{u, v, uv}` as `S_3`.
    pub t: FqMatrix,
    /// The permutation matrix of a 3-cycle.
    pub a: FqMatrix,
    pub x: FqMatrix,
    pub y: FqMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementRelation {
    pub name: &'static str,
    pub holds: bool,
}

fn odd_part(mut n: u64) -> u64 {
    while n.is_multiple_of(2) {
        n /= 2;
    }
    n
}

/// The elements for `q ≡ -ε (mod 4)`, over `GF(q)` for `ε = 1` and `GF(q^2)`
/// (with the identity Hermitian form) for `ε = -1`.
pub fn klein_elements(eps: i32, q: u32) -> Result<KleinElements> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidArgument(format!("ε must be ±1, got {eps}")));
    }
    if q.is_multiple_of(2) || (q as i64 + eps as i64) % 4 != 0 {
        return Err(Error::InvalidArgument(format!("need q ≡ -ε (mod 4), got q = {q}, ε = {eps}")));
    }
    let f = if eps == 1 { Field::of_order(q)? } else { Field::of_order(q * q)? };
    let qbar = f.q() as u64;
    let q_minus_eps = (q as i64 - eps as i64) as u64;
    let zeta = f.exp((qbar - 1) / odd_part(q_minus_eps));
    let zi = f.inv(zeta).unwrap();
    let m1 = f.neg(1);
    let u = FqMatrix::diagonal(&f, &[1, m1, m1]);
    let v = FqMatrix::diagonal(&f, &[m1, 1, m1]);
    let t = FqMatrix::from_vec(&f, 3, 3, vec![1, 0, 0, 0, 0, 1, 0, m1, 0])?;
    let a = FqMatrix::from_vec(&f, 3, 3, vec![0, 1, 0, 0, 0, 1, 1, 0, 0])?;
    let x = FqMatrix::diagonal(&f, &[zeta, zeta, f.mul(zi, zi)]);
    let y = FqMatrix::diagonal(&f, &[zeta, 1, zi]);
    Ok(KleinElements { eps, q, field: f, zeta, u, v, t, a, x, y })
}

impl KleinElements {
    /// `g^h = h^-1 g h`.
    fn conj(g: &FqMatrix, h: &FqMatrix) -> FqMatrix {
        g.conjugate_by(h, &h.inverse().expect("invertible"))
    }

    fn inv(g: &FqMatrix) -> FqMatrix {
        g.inverse().expect("invertible")
    }

    pub fn uv(&self) -> FqMatrix {
        self.u.mul(&self.v)
    }

    /// Each defining relation together with whether it holds.
    pub fn relations(&self) -> Vec<ElementRelation> {
        let c = Self::conj;
        let (u, v, t, a, x, y) = (&self.u, &self.v, &self.t, &self.a, &self.x, &self.y);
        let uv = self.uv();
        let one = FqMatrix::identity(&self.field, 3);
        let yi = Self::inv(y);
        let xi = Self::inv(x);
        let checks: Vec<(&'static str, bool)> = vec![
            ("u^2 = 1", u.mul(u) == one),
            ("v^2 = 1", v.mul(v) == one),
            ("uv = vu", uv == v.mul(u)),
            ("t^2 = u", t.mul(t) == *u),
            ("a^3 = 1", a.pow(3) == one),
            ("a^t = a^2 uv", c(a, t) == a.pow(2).mul(&uv)),
            ("u^a = v", c(u, a) == *v),
            ("v^a = uv", c(v, a) == uv),
            ("(uv)^a = u", c(&uv, a) == *u),
            ("u^t = u", c(u, t) == *u),
            ("v^t = uv", c(v, t) == uv),
            ("xy = yx", x.mul(y) == y.mul(x)),
            ("x^a = x y^-3", c(x, a) == x.mul(&yi.pow(3))),
            ("x^t = x^-2 y^3", c(x, t) == xi.pow(2).mul(&y.pow(3))),
            ("y^a = x y^-2", c(y, a) == x.mul(&yi.pow(2))),
            ("y^t = x^-1 y^2", c(y, t) == xi.mul(&y.pow(2))),
            ("det = 1", [u, v, t, a, x, y].iter().all(|g| g.det() == 1)),
            ("preserves form", self.eps == 1 || [u, v, t, a, x, y].iter().all(|g| self.is_unitary(g))),
        ];
        checks.into_iter().map(|(name, holds)| ElementRelation { name, holds }).collect()
    }

    fn is_unitary(&self, g: &FqMatrix) -> bool {
        let q = self.q as u64;
        let f = &self.field;
        let bar_t = g.transpose().map(|e| f.pow(e, q));
        g.mul(&bar_t).is_identity()
    }

    pub fn all_relations_hold(&self) -> bool {
        self.relations().iter().all(|r| r.holds)
    }

    /// Generators of `N_G(Q)` for `Q = <u, v>`: the diagonal torus elements
    /// `x, y`, the sign matrices and the `S_3` lifts `t, a`.
    pub fn normalizer_generators(&self) -> Vec<FqMatrix> {
        vec![self.u.clone(), self.v.clone(), self.x.clone(), self.y.clone(), self.t.clone(), self.a.clone()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        for (eps, q) in [(1, 3), (1, 7), (-1, 5), (1, 11), (-1, 9)] {
            let p = klein_elements(eps, q).unwrap();
            for r in p.relations() {
                assert!(r.holds, "{} fails for ε={eps}, q={q}", r.name);
            }
        }
    }

    #[test]
    fn zeta_orders() {
        // odd part of q - ε
        for (eps, q, ord) in [(1, 3, 1), (1, 7, 3), (-1, 5, 3), (1, 11, 5), (-1, 13, 7)] {
            let p = klein_elements(eps, q).unwrap();
            assert_eq!(p.field.mul_order(p.zeta), Some(ord), "ε={eps} q={q}");
        }
    }

    #[test]
    fn congruence_enforced() {
        assert!(klein_elements(1, 5).is_err());
        assert!(klein_elements(-1, 3).is_err());
        assert!(klein_elements(0, 3).is_err());
    }

    #[test]
    fn iota_is_determinant_one() {
        let f = Field::of_order(7).unwrap();
        let a = FqMatrix::from_ints(&f, &[&[2, 3], &[1, 4]]);
        let m = iota(&a).unwrap();
        assert_eq!(m.det(), 1);
        assert_eq!(m.submatrix(0, 0, 2, 2), a);
        let b = FqMatrix::from_ints(&f, &[&[0, 1], &[6, 3]]);
        assert_eq!(iota(&a.mul(&b)).unwrap(), m.mul(&iota(&b).unwrap()));
    }
}
