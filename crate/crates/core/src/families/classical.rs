use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::{gcd, Elem, Field, FqMatrix};
use crate::permgroup::{PermGroup, Permutation};

/// Largest permutation degree produced from a matrix group.
pub const DEGREE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalFamily {
    GL,
    SL,
    GU,
    SU,
    /// Determinant `±1` inside `GL`.
    SLpm,
    /// Determinant `±1` inside `GU`.
    SUpm,
}

impl ClassicalFamily {
    pub fn is_unitary(self) -> bool {
        matches!(self, ClassicalFamily::GU | ClassicalFamily::SU | ClassicalFamily::SUpm)
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassicalFamily::GL => "GL",
            ClassicalFamily::SL => "SL",
            ClassicalFamily::GU => "GU",
            ClassicalFamily::SU => "SU",
            ClassicalFamily::SLpm => "SLpm",
            ClassicalFamily::SUpm => "SUpm",
        };
        f.write_str(s)
    }
}

impl FromStr for ClassicalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gl" => ClassicalFamily::GL,
            "sl" => ClassicalFamily::SL,
            "gu" => ClassicalFamily::GU,
            "su" => ClassicalFamily::SU,
            "slpm" => ClassicalFamily::SLpm,
            "supm" => ClassicalFamily::SUpm,
            _ => return Err(Error::InvalidArgument(format!("unknown classical family `{s}`"))),
        })
    }
}

/// A group of invertible matrices acting on row vectors.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub family: Option<ClassicalFamily>,
    /// The `q` in the family name; the field is `GF(q)`, or `GF(q^2)` for unitary types.
    pub q: u32,
    pub n: usize,
    pub field: Field,
    pub generators: Vec<FqMatrix>,
    /// Hermitian form for unitary types.
    pub form: Option<FqMatrix>,
}

/// Which vectors a matrix group permutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointAction {
    /// 1-spaces; the kernel is the scalar subgroup.
    Projective,
    /// Vectors modulo the largest scalar subgroup meeting the group's scalars
    /// trivially, so the action is faithful.
    Faithful,
}

/// A matrix group together with its permutation action on vector classes.
#[derive(Clone, Debug)]
pub struct PermRep {
    pub group: PermGroup,
    pub points: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, u32>,
    field: Field,
    /// Order of the scalar subgroup the points are taken modulo.
    pub scalar_order: u64,
    /// Order of the kernel of the action on the matrix group.
    pub kernel_order: u64,
}

fn pow_u64(q: u64, k: u32) -> u64 {
    q.pow(k)
}

/// `|GL_n(q)|` (or `|GU_n(q)|` with `unitary`).
pub fn general_order(n: u32, q: u64, unitary: bool) -> BigUint {
    let mut acc = BigUint::from(q).pow(n * (n - 1) / 2);
    for i in 1..=n {
        let qi = pow_u64(q, i);
        let f = if unitary && i % 2 == 1 { qi + 1 } else { qi - 1 };
        acc *= BigUint::from(f);
    }
    acc
}

impl MatrixGroup {
    /// Field size `q̄`: `q`, or `q^2` for unitary types.
    pub fn qbar(&self) -> u64 {
        self.field.q() as u64
    }

    /// Order predicted by the family's formula.
    pub fn expected_order(&self) -> Option<BigUint> {
        let fam = self.family?;
        let (n, q) = (self.n as u32, self.q as u64);
        let gen = general_order(n, q, fam.is_unitary());
        Some(match fam {
            ClassicalFamily::GL | ClassicalFamily::GU => gen,
            ClassicalFamily::SL => gen / BigUint::from(q - 1),
            ClassicalFamily::SU => gen / BigUint::from(q + 1),
            ClassicalFamily::SLpm => gen * 2u32 / BigUint::from(q - 1),
            ClassicalFamily::SUpm => gen * 2u32 / BigUint::from(q + 1),
        })
    }

    /// Order of the subgroup of scalar matrices.
    pub fn scalar_subgroup_order(&self) -> u64 {
        let fam = self.family.expect("family needed for the scalar subgroup");
        let (n, q) = (self.n as u64, self.q as u64);
        match fam {
            ClassicalFamily::GL => q - 1,
            ClassicalFamily::GU => q + 1,
            ClassicalFamily::SL => gcd(n, q - 1),
            ClassicalFamily::SU => gcd(n, q + 1),
            ClassicalFamily::SLpm => gcd(2 * n, q - 1),
            ClassicalFamily::SUpm => gcd(2 * n, q + 1),
        }
    }

    /// `Ā^T` with the bar the involution `x -> x^q` of `GF(q^2)`.
    pub fn conj_transpose(&self, a: &FqMatrix) -> FqMatrix {
        let q = self.q as u64;
        a.map(|x| self.field.pow(x, q)).transpose()
    }

    /// `A F Ā^T = F`.
    pub fn preserves_form(&self, a: &FqMatrix) -> bool {
        match &self.form {
            None => true,
            Some(f) => &a.mul(f).mul(&self.conj_transpose(a)) == f,
        }
    }

    /// Checks the defining predicate of the family on every generator.
    pub fn check_generators(&self) -> Result<()> {
        let f = &self.field;
        let minus_one = f.neg(1);
        for (i, g) in self.generators.iter().enumerate() {
            let d = g.det();
            let det_ok = match self.family {
                None => d != 0,
                Some(ClassicalFamily::GL) => d != 0,
                Some(ClassicalFamily::GU) => d != 0 && f.pow(d, self.q as u64 + 1) == 1,
                Some(ClassicalFamily::SL | ClassicalFamily::SU) => d == 1,
                Some(ClassicalFamily::SLpm | ClassicalFamily::SUpm) => d == 1 || d == minus_one,
            };
            if !det_ok {
                return Err(Error::Validation(format!("generator {i} has determinant {d}")));
            }
            if !self.preserves_form(g) {
                return Err(Error::Validation(format!("generator {i} does not preserve the form")));
            }
        }
        Ok(())
    }

    /// Order `s` of the scalar subgroup the points of `action` are taken modulo.
    fn quotient_scalars(&self, action: PointAction) -> u64 {
        let n = self.qbar() - 1;
        match action {
            PointAction::Projective => n,
            PointAction::Faithful => {
                let z = self.scalar_subgroup_order();
                (1..=n).rev().find(|s| n.is_multiple_of(*s) && gcd(*s, z) == 1).unwrap()
            }
        }
    }

    /// Permutation action on classes of vectors modulo scalars, restricted to
    /// the union of the orbits of the standard basis vectors.
    pub fn to_perm(&self, action: PointAction) -> Result<PermRep> {
        let s = self.quotient_scalars(action);
        let f = self.field.clone();
        let step = (self.qbar() - 1) / s;
        let canon = |v: &[Elem]| -> Vec<Elem> {
            let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
            let l = f.log(lead).unwrap();
            let shift = (l % step) + (self.qbar() - 1) - l;
            let c = f.exp(shift);
            let mut w = v.to_vec();
            f.scale_in_place(&mut w, c);
            w
        };
        let mut points: Vec<Vec<Elem>> = Vec::new();
        let mut index: HashMap<Vec<Elem>, u32> = HashMap::new();
        for i in 0..self.n {
            let mut e = vec![0; self.n];
            e[i] = 1;
            let e = canon(&e);
            if index.contains_key(&e) {
                continue;
            }
            index.insert(e.clone(), points.len() as u32);
            points.push(e);
            let mut k = points.len() - 1;
            while k < points.len() {
                for g in &self.generators {
                    let w = canon(&g.vec_mul(&points[k]));
                    if !index.contains_key(&w) {
                        if points.len() >= DEGREE_CAP {
                            return Err(Error::scale("permutation degree", format!("> {DEGREE_CAP}"), DEGREE_CAP));
                        }
                        index.insert(w.clone(), points.len() as u32);
                        points.push(w);
                    }
                }
                k += 1;
            }
        }
        let mut rep = PermRep {
            group: PermGroup::trivial(points.len()),
            points,
            index,
            field: f.clone(),
            scalar_order: s,
            kernel_order: 1,
        };
        let gens = self.generators.iter().map(|g| rep.perm_of(g)).collect::<Result<Vec<_>>>()?;
        rep.group = PermGroup::new(rep.points.len(), gens)?;
        rep.kernel_order = match action {
            PointAction::Faithful => 1,
            PointAction::Projective => self.family.map_or(1, |_| self.scalar_subgroup_order()),
        };
        Ok(rep)
    }
}

impl PermRep {
    pub fn degree(&self) -> usize {
        self.points.len()
    }

    fn canon(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let f = &self.field;
        let lead = *v.iter().find(|&&x| x != 0)?;
        let n = f.q() as u64 - 1;
        let step = n / self.scalar_order;
        let l = f.log(lead).unwrap();
        let c = f.exp((l % step) + n - l);
        let mut w = v.to_vec();
        f.scale_in_place(&mut w, c);
        Some(w)
    }

    /// The permutation induced by a matrix normalizing the point set.
    pub fn perm_of(&self, a: &FqMatrix) -> Result<Permutation> {
        let images = self
            .points
            .iter()
            .map(|p| {
                self.canon(&a.vec_mul(p))
                    .and_then(|w| self.index.get(&w).copied())
                    .ok_or_else(|| Error::InvalidArgument("matrix does not act on the point set".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images).map_err(|_| Error::InvalidArgument("matrix is singular".into()))
    }
}

fn field_for(q: u32, unitary: bool) -> Result<Field> {
    if q.is_multiple_of(2) || q < 3 {
        return Err(Error::InvalidArgument(format!("q = {q} must be an odd prime power")));
    }
    let order = if unitary { q * q } else { q };
    Field::of_order(order).map_err(|_| Error::InvalidArgument(format!("q = {q} outside the field table")))
}

/// `n`-cycle permutation matrix with one sign flipped when needed for determinant 1.
fn signed_cycle(f: &Field, n: usize) -> FqMatrix {
    let mut m = FqMatrix::zeros(f, n, n);
    for i in 0..n {
        m.set(i, (i + 1) % n, 1);
    }
    if n.is_multiple_of(2) {
        m.set(n - 1, 0, f.neg(1));
    }
    m
}

fn diag_with(f: &Field, n: usize, entries: &[(usize, Elem)]) -> FqMatrix {
    let mut d = vec![1; n];
    for &(i, x) in entries {
        d[i] = x;
    }
    FqMatrix::diagonal(f, &d)
}

/// Unitary 2x2 blocks `[[a, b], [-b̄, ā]]` with `a ā + b b̄ = 1` and `a, b` nonzero,
/// in encoding order.
fn su2_blocks(f: &Field, q: u64) -> Vec<(Elem, Elem)> {
    let norm = |x: Elem| f.pow(x, q + 1);
    let mut out = Vec::new();
    for a in 1..f.q() as u16 {
        for b in 1..f.q() as u16 {
            let (a, b) = (a as Elem, b as Elem);
            if f.add(norm(a), norm(b)) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

fn embed_block(f: &Field, n: usize, i: usize, block: [[Elem; 2]; 2]) -> FqMatrix {
    let mut m = FqMatrix::identity(f, n);
    for r in 0..2 {
        for c in 0..2 {
            m.set(i + r, i + c, block[r][c]);
        }
    }
    m
}

/// Standard generators of a classical group, extended deterministically
/// until the faithful permutation image reaches the order formula.
pub fn classical_group(family: ClassicalFamily, n: usize, q: u32) -> Result<MatrixGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension {n} < 2")));
    }
    let unitary = family.is_unitary();
    let f = field_for(q, unitary)?;
    let w = f.primitive();
    let minus_one = f.neg(1);
    let mut gens = Vec::new();
    let mut extra: Vec<FqMatrix> = Vec::new();
    if !unitary {
        let mut t = FqMatrix::identity(&f, n);
        t.set(0, 1, 1);
        gens.push(t);
        gens.push(diag_with(&f, n, &[(0, w), (1, f.inv(w).unwrap())]));
        gens.push(signed_cycle(&f, n));
        let mut t2 = FqMatrix::identity(&f, n);
        t2.set(1, 0, 1);
        extra.push(t2);
        if family == ClassicalFamily::GL {
            gens.push(diag_with(&f, n, &[(0, w)]));
        }
    } else {
        let qq = q as u64;
        let mu = f.pow(w, qq - 1);
        let bar = |x: Elem| f.pow(x, qq);
        let blocks = su2_blocks(&f, qq);
        let block = |(a, b): (Elem, Elem)| [[a, b], [f.neg(bar(b)), bar(a)]];
        gens.push(embed_block(&f, n, 0, block(blocks[0])));
        gens.push(diag_with(&f, n, &[(0, mu), (1, f.inv(mu).unwrap())]));
        gens.push(signed_cycle(&f, n));
        for (k, &ab) in blocks.iter().enumerate().skip(1).step_by(7).take(16) {
            extra.push(embed_block(&f, n, k % (n - 1), block(ab)));
        }
        if family == ClassicalFamily::GU {
            gens.push(diag_with(&f, n, &[(0, mu)]));
        }
    }
    if matches!(family, ClassicalFamily::SLpm | ClassicalFamily::SUpm) {
        gens.push(diag_with(&f, n, &[(0, minus_one)]));
    }
    let mut g = MatrixGroup {
        family: Some(family),
        q,
        n,
        field: f.clone(),
        generators: gens,
        form: unitary.then(|| FqMatrix::identity(&f, n)),
    };
    g.check_generators()?;
    let target = g.expected_order().unwrap();
    let mut extra = extra.into_iter();
    loop {
        let order = g.to_perm(PointAction::Faithful)?.group.order();
        if order == target {
            return Ok(g);
        }
        match extra.next() {
            Some(x) => g.generators.push(x),
            None => {
                return Err(Error::Validation(format!(
                    "{family}_{n}({q}) generators give order {order}, expected {target}"
                )))
            }
        }
        g.check_generators()?;
    }
}
