//! Concrete groups: 2-group models, classical matrix groups and their
//! permutation images, `PGL*_2(q^2)`, the explicit elements normalizing the
//! Klein four subgroup of `SL_3^ε(q)`, and two static fixtures.

mod classical;
mod elements;

pub use classical::{classical_group, general_order, ClassicalFamily, MatrixGroup, PermRep, PointAction, DEGREE_CAP};
pub use elements::{iota, klein_elements, ElementRelation, KleinElements};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FqMatrix};
use crate::grouptheory::{classify_2group, sylow_2};
use crate::permgroup::{PermGroup, Permutation};

fn affine_z(modulus: u32, f: impl Fn(u32) -> u32) -> Permutation {
    Permutation::from_images((0..modulus).map(|x| f(x) % modulus).collect()).expect("bijection")
}

/// `SD_{2^m}` on `Z/2^(m-1)`, generated by `x -> x+1` and `x -> (2^(m-2)-1) x`.
pub fn semidihedral_group(m: u32) -> Result<PermGroup> {
    if !(4..=16).contains(&m) {
        return Err(Error::InvalidArgument(format!("semidihedral groups need 4 <= m <= 16, got {m}")));
    }
    let n = 1u32 << (m - 1);
    let k = (1u32 << (m - 2)) - 1;
    PermGroup::new(n as usize, vec![affine_z(n, |x| x + 1), affine_z(n, |x| x * k)])
}

/// `D_{2^m}` on `Z/2^(m-1)`.
pub fn dihedral_group(m: u32) -> Result<PermGroup> {
    if !(2..=16).contains(&m) {
        return Err(Error::InvalidArgument(format!("dihedral model needs 2 <= m <= 16, got {m}")));
    }
    let n = 1u32 << (m - 1);
    PermGroup::new(n as usize, vec![affine_z(n, |x| x + 1), affine_z(n, |x| n - x)])
}

/// `Q_{2^m}` in its regular representation.
pub fn quaternion_group(m: u32) -> Result<PermGroup> {
    if !(3..=12).contains(&m) {
        return Err(Error::InvalidArgument(format!("quaternion model needs 3 <= m <= 12, got {m}")));
    }
    let c = 1u32 << (m - 1);
    let half = c / 2;
    // element r^i s^j has index i + c*j
    let mul_r = (0..2 * c)
        .map(|k| {
            let (i, j) = (k % c, k / c);
            if j == 0 { (i + 1) % c } else { (i + c - 1) % c + c }
        })
        .collect();
    let mul_s = (0..2 * c)
        .map(|k| {
            let (i, j) = (k % c, k / c);
            if j == 0 { i + c } else { (i + half) % c }
        })
        .collect();
    PermGroup::new(
        2 * c as usize,
        vec![Permutation::from_images(mul_r)?, Permutation::from_images(mul_s)?],
    )
}

/// `M11` on 11 points.
pub fn m11() -> PermGroup {
    let a = Permutation::from_cycles_1based(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]).unwrap();
    let b = Permutation::from_cycles_1based(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]).unwrap();
    PermGroup::new(11, vec![a, b]).unwrap()
}

/// The triple cover `3.M10` on 36 points.
pub fn fixture_3m10() -> PermGroup {
    let x1 = Permutation::from_cycles_1based(
        36,
        &[
            &[1, 2, 4, 8, 20, 34, 31, 36, 22, 10, 9, 3],
            &[5, 13, 15, 6, 14, 28, 27, 35, 21, 18, 25, 11],
            &[7, 16, 24, 33, 30, 17],
            &[12, 26, 23, 29, 32, 19],
        ],
    )
    .unwrap();
    let x2 = Permutation::from_cycles_1based(
        36,
        &[
            &[1, 4, 5],
            &[2, 6, 7],
            &[9, 21, 22],
            &[10, 11, 24],
            &[12, 27, 16],
            &[13, 28, 18],
            &[14, 20, 31],
            &[15, 33, 23],
            &[17, 32, 25],
            &[19, 26, 29],
            &[30, 34, 35],
        ],
    )
    .unwrap();
    let x3 = Permutation::from_cycles_1based(
        36,
        &[
            &[2, 6, 8],
            &[3, 10, 11],
            &[4, 5, 12],
            &[7, 18, 19],
            &[9, 21, 23],
            &[13, 29, 30],
            &[14, 32, 31],
            &[15, 25, 27],
            &[16, 17, 33],
            &[24, 28, 26],
            &[34, 35, 36],
        ],
    )
    .unwrap();
    PermGroup::new(36, vec![x1, x2, x3]).unwrap()
}

/// Points of the projective line over `F`: field elements, then infinity.
fn mobius(f: &Field, m: &FqMatrix) -> Permutation {
    let q = f.q() as u32;
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    // (x : 1) [[a, b], [c, d]] = (a x + c : b x + d)
    let image = |num: Elem, den: Elem| -> u32 {
        match f.div(num, den) {
            Some(v) => v as u32,
            None => q,
        }
    };
    let mut images: Vec<u32> = (0..q)
        .map(|x| {
            let x = x as Elem;
            image(f.add(f.mul(a, x), c), f.add(f.mul(b, x), d))
        })
        .collect();
    images.push(image(a, b));
    Permutation::from_images(images).expect("invertible matrix")
}

fn psl2_generators(f: &Field) -> Vec<Permutation> {
    let w = f.primitive();
    let t = FqMatrix::from_vec(f, 2, 2, vec![1, 1, 0, 1]).unwrap();
    let h = FqMatrix::diagonal(f, &[w, f.inv(w).unwrap()]);
    let s = FqMatrix::from_vec(f, 2, 2, vec![0, 1, f.neg(1), 0]).unwrap();
    [t, h, s].iter().map(|m| mobius(f, m)).collect()
}

fn psl2_order(qq: u64) -> u64 {
    qq * (qq * qq - 1) / 2
}

fn projective_line_field(q: u32) -> Result<Field> {
    if q.is_multiple_of(2) || q < 3 {
        return Err(Error::InvalidArgument(format!("q = {q} must be an odd prime power")));
    }
    Field::of_order(q * q).map_err(|_| Error::InvalidArgument(format!("GF({q}^2) outside the field table")))
}

/// `PGL_2(q^2)` on the `q^2 + 1` points of the projective line.
pub fn pgl2_of_square(q: u32) -> Result<PermGroup> {
    let f = projective_line_field(q)?;
    let mut gens = psl2_generators(&f);
    gens.push(mobius(&f, &FqMatrix::diagonal(&f, &[f.primitive(), 1])));
    let g = PermGroup::new(f.q() + 1, gens)?;
    let qq = f.q() as u64;
    if g.order_u64() != 2 * psl2_order(qq) {
        return Err(Error::Validation("PGL_2 order".into()));
    }
    Ok(g)
}

/// `PGL*_2(q^2)`: `PSL_2(q^2)` extended by a diagonal scaling composed with
/// the Frobenius `x -> x^q`. Candidates are tried until the extension has
/// index 2 over `PSL_2(q^2)` and a semidihedral Sylow 2-subgroup.
pub fn pgl_star(q: u32) -> Result<PermGroup> {
    let f = projective_line_field(q)?;
    let qq = f.q() as u32;
    let psl = PermGroup::new(qq as usize + 1, psl2_generators(&f))?;
    if psl.order_u64() != psl2_order(qq as u64) {
        return Err(Error::Validation("PSL_2 order".into()));
    }
    for k in (1..qq as u64 - 1).step_by(2) {
        let c = f.exp(k);
        for scale_first in [true, false] {
            let mut images: Vec<u32> = (0..qq)
                .map(|x| {
                    let x = x as Elem;
                    let y = if scale_first {
                        f.pow(f.mul(c, x), q as u64)
                    } else {
                        f.mul(c, f.pow(x, q as u64))
                    };
                    y as u32
                })
                .collect();
            images.push(qq);
            let phi = Permutation::from_images(images)?;
            let mut gens = psl.generators().to_vec();
            gens.push(phi);
            let g = PermGroup::new(qq as usize + 1, gens)?;
            if g.order_u64() != 2 * psl.order_u64() {
                continue;
            }
            if classify_2group(&sylow_2(&g)?)?.is_semidihedral() {
                return Ok(g);
            }
        }
    }
    Err(Error::Validation(format!("no candidate realizes PGL*_2({}^2)", q)))
}

/// `PSL_3^ε(q)` acting on the points of the projective plane.
pub fn psl3_eps(eps: i32, q: u32) -> Result<PermGroup> {
    let fam = match eps {
        1 => ClassicalFamily::SL,
        -1 => ClassicalFamily::SU,
        _ => return Err(Error::InvalidArgument(format!("ε must be ±1, got {eps}"))),
    };
    let g = classical_group(fam, 3, q)?;
    let rep = g.to_perm(PointAction::Projective)?;
    let expected = g.expected_order().unwrap() / num_bigint::BigUint::from(g.scalar_subgroup_order());
    if rep.group.order() != expected {
        return Err(Error::Validation("PSL_3 order".into()));
    }
    Ok(rep.group)
}

/// `SL_3^ε(q)` with its faithful permutation action.
pub fn sl3_eps(eps: i32, q: u32) -> Result<(MatrixGroup, PermRep)> {
    let fam = match eps {
        1 => ClassicalFamily::SL,
        -1 => ClassicalFamily::SU,
        _ => return Err(Error::InvalidArgument(format!("ε must be ±1, got {eps}"))),
    };
    let g = classical_group(fam, 3, q)?;
    let rep = g.to_perm(PointAction::Faithful)?;
    Ok((g, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouptheory::{center, normalizer, quotient_perm_rep, TwoGroupTag};

    /// Oracle: closure by breadth-first search.
    fn closure_size(g: &PermGroup) -> usize {
        let mut seen = std::collections::HashSet::new();
        let id = g.identity();
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = x.mul(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn semidihedral_models() {
        for m in 4..=8 {
            let g = semidihedral_group(m).unwrap();
            assert_eq!(g.order_u64(), 1 << m);
            let t = classify_2group(&g).unwrap();
            assert_eq!(t.tag, TwoGroupTag::Semidihedral);
            let (r, s) = t.witnesses.unwrap();
            assert_eq!(s.mul(&r).mul(&s), r.pow((1 << (m - 2)) - 1));
        }
        assert!(semidihedral_group(3).is_err());
        assert_eq!(closure_size(&semidihedral_group(5).unwrap()), 32);
    }

    #[test]
    fn dihedral_and_quaternion_models() {
        for m in 3..=6 {
            assert_eq!(classify_2group(&dihedral_group(m).unwrap()).unwrap().tag, TwoGroupTag::Dihedral);
            let q = quaternion_group(m).unwrap();
            assert_eq!(q.order_u64(), 1 << m);
            assert_eq!(classify_2group(&q).unwrap().tag, TwoGroupTag::Quaternion);
        }
    }

    #[test]
    fn fixture_orders() {
        let g = fixture_3m10();
        assert_eq!(g.order_u64(), 2160);
        assert_eq!(closure_size(&g), 2160);
        let z = center(&g).unwrap();
        assert_eq!(z.order_u64(), 3);
        let q = quotient_perm_rep(&g, &z).unwrap();
        assert_eq!(q.quotient.order_u64(), 720);
        let p = sylow_2(&q.quotient).unwrap();
        assert!(classify_2group(&p).unwrap().is_semidihedral());
        assert_eq!(closure_size(&m11()), 7920);
    }

    #[test]
    fn pgl_star_of_nine() {
        let g = pgl_star(3).unwrap();
        assert_eq!(g.order_u64(), 720);
        let p = sylow_2(&g).unwrap();
        assert!(classify_2group(&p).unwrap().is_semidihedral());
        assert_eq!(normalizer(&g, &p).unwrap().order_u64(), 16);
        let h = pgl2_of_square(3).unwrap();
        assert_eq!(h.order_u64(), 720);
        assert_eq!(classify_2group(&sylow_2(&h).unwrap()).unwrap().tag, TwoGroupTag::Dihedral);
    }

    #[test]
    fn pgl_star_of_twenty_five() {
        let g = pgl_star(5).unwrap();
        assert_eq!(g.order_u64(), 15600);
        assert_eq!(sylow_2(&g).unwrap().order_u64(), 16);
    }

    #[test]
    fn psl3_orders() {
        assert_eq!(psl3_eps(1, 3).unwrap().order_u64(), 5616);
        assert_eq!(psl3_eps(-1, 3).unwrap().order_u64(), 6048);
        assert_eq!(psl3_eps(1, 7).unwrap().order_u64(), 1876896);
    }
}
