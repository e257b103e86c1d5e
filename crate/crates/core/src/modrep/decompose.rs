use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hom::{end_algebra, end_general, hom_space, EndAlgebra};
use super::{flatten, random_combination, Coordinates, GModule};
use crate::error::{Error, Result};
use crate::gf::{min_poly, Elem, FqMatrix, Poly, SpanBasis};

pub const DEFAULT_SEED: u64 = 0x00de_c0de;

const SPLIT_TRIES: usize = 48;
const RADICAL_CAP: usize = 100;

/// An indecomposable direct summand with its local endomorphism data.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: GModule,
    /// Rows span the summand inside the decomposed module.
    pub basis: FqMatrix,
    pub end_basis: Vec<FqMatrix>,
    /// Basis of the radical of the (local) endomorphism algebra.
    pub end_radical: Vec<FqMatrix>,
    /// `dim End/J`, the degree of the residue field over the base field.
    pub residue_degree: usize,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Rows are the concatenated summand bases; conjugating the action by it
    /// gives block-diagonal matrices.
    pub certificate: FqMatrix,
    /// Summands that are indecomposable but not absolutely so.
    pub warnings: Vec<String>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim()).collect()
    }

    /// Entry-wise check that the certificate block-diagonalizes `m`.
    pub fn verify(&self, m: &GModule) -> bool {
        let Some(ci) = self.certificate.inverse() else {
            return false;
        };
        m.generator_images().iter().enumerate().all(|(g, a)| {
            let blocks: Vec<&FqMatrix> = self
                .summands
                .iter()
                .map(|s| &s.module.generator_images()[g])
                .collect();
            self.certificate.mul(a).mul(&ci) == FqMatrix::block_diagonal(m.field(), &blocks)
        })
    }
}

fn poly_pow(p: &Poly, k: u32) -> Poly {
    let mut acc = Poly::one(p.field());
    for _ in 0..k {
        acc = acc.mul(p);
    }
    acc
}

/// Fitting splitting of `W` along an endomorphism whose minimal polynomial
/// has two coprime factors.
fn split(e: &EndAlgebra, rng: &mut ChaCha8Rng) -> Option<(FqMatrix, FqMatrix)> {
    for attempt in 0..SPLIT_TRIES {
        let x = if attempt < e.basis.len() && attempt < 4 {
            e.basis[attempt].clone()
        } else {
            random_combination(&e.basis, rng)
        };
        let mu = min_poly(&x);
        let (_, facs) = mu.factor();
        if facs.len() < 2 {
            continue;
        }
        let p1 = poly_pow(&facs[0].0, facs[0].1);
        let rest = mu.div_exact(&p1);
        let k1 = p1.eval_matrix(&x).left_nullspace();
        let k2 = rest.eval_matrix(&x).left_nullspace();
        debug_assert_eq!(k1.rows() + k2.rows(), x.rows());
        return Some((k1, k2));
    }
    None
}

pub(crate) struct LocalCertificate {
    pub radical: Vec<FqMatrix>,
    pub residue_degree: usize,
}

/// `y^(q^(rN))` for `q^(rN) ≥ dim`, the semisimple part of `y` when its
/// minimal polynomial is a power of an irreducible of degree `r`.
fn semisimple_part(y: &FqMatrix, r: usize) -> FqMatrix {
    let e = y.field().e() as usize;
    let step = e * r;
    let mut k = step;
    while (1usize << k.min(40)) < y.rows() {
        k += step;
    }
    let mut s = y.clone();
    for _ in 0..k {
        s = s.mul(&s);
    }
    s
}

/// Proves `End(W)` local: a nilpotent ideal `J'` of codimension `r` together
/// with an element generating a residue field of degree `r` forces `J' = J`
/// and `End/J ≅ GF(q^r)`.
pub(crate) fn local_certificate(e: &EndAlgebra, rng: &mut ChaCha8Rng) -> Option<LocalCertificate> {
    let d = e.dim();
    let w = e.module.dim();
    let f = e.module.field();
    if d == 1 {
        return Some(LocalCertificate {
            radical: Vec::new(),
            residue_degree: 1,
        });
    }
    let mut candidates: Vec<FqMatrix> = e.basis.clone();
    for _ in 0..8 {
        candidates.push(random_combination(&e.basis, rng));
    }
    if d <= 8 {
        for a in &e.basis {
            for b in &e.basis {
                candidates.push(a.mul(b));
            }
        }
    }
    let mut span = SpanBasis::new(f, w * w);
    let mut r_max = 1;
    for y in &candidates {
        let (_, facs) = min_poly(y).factor();
        if facs.len() != 1 {
            return None;
        }
        let r = facs[0].0.degree().unwrap_or(0);
        r_max = r_max.max(r);
        let n = y.sub(&semisimple_part(y, r));
        span.insert(&flatten(&n));
    }
    // two-sided ideal closure
    loop {
        let current = span.to_matrix();
        let before = span.len();
        for i in 0..current.rows() {
            let j = super::unflatten(f, w, w, current.row(i).to_vec());
            for b in &e.basis {
                span.insert(&flatten(&b.mul(&j)));
                span.insert(&flatten(&j.mul(b)));
            }
        }
        if span.len() == before {
            break;
        }
    }
    let radical: Vec<FqMatrix> = {
        let m = span.to_matrix();
        (0..m.rows())
            .map(|i| super::unflatten(f, w, w, m.row(i).to_vec()))
            .collect()
    };
    // nilpotency of the ideal: its powers reach zero
    let mut power = radical.clone();
    let mut steps = 0;
    while !power.is_empty() {
        steps += 1;
        if steps > w + 1 {
            return None;
        }
        let mut next = SpanBasis::new(f, w * w);
        for p in &power {
            for j in &radical {
                next.insert(&flatten(&p.mul(j)));
            }
        }
        let m = next.to_matrix();
        power = (0..m.rows())
            .map(|i| super::unflatten(f, w, w, m.row(i).to_vec()))
            .collect();
    }
    (d - radical.len() == r_max).then_some(LocalCertificate {
        radical,
        residue_degree: r_max,
    })
}

fn encoding(m: &GModule) -> Vec<Elem> {
    m.generator_images().iter().flat_map(flatten).collect()
}

pub fn decompose(m: &GModule) -> Result<Decomposition> {
    decompose_with_seed(m, DEFAULT_SEED)
}

/// Splits `m` into indecomposable summands by random Fitting decompositions
/// in its endomorphism algebra; every summand carries a locality certificate.
pub fn decompose_with_seed(m: &GModule, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = m.field();
    let mut done: Vec<Summand> = Vec::new();
    let mut warnings = Vec::new();
    let mut stack: Vec<(FqMatrix, GModule, EndAlgebra)> =
        vec![(FqMatrix::identity(f, m.dim()), m.clone(), end_algebra(m)?)];
    while let Some((basis, w, e)) = stack.pop() {
        if let Some((k1, k2)) = split(&e, &mut rng) {
            for k in [k1, k2] {
                let sub = w.submodule(&k)?;
                let end = end_general(&sub)?;
                stack.push((k.mul(&basis), sub, end));
            }
            continue;
        }
        let cert = local_certificate(&e, &mut rng).ok_or_else(|| {
            Error::Undecided(format!(
                "no splitting found and no locality certificate for a {}-dimensional summand",
                w.dim()
            ))
        })?;
        if cert.residue_degree > 1 {
            warnings.push(format!(
                "{}-dimensional summand has residue field of degree {}",
                w.dim(),
                cert.residue_degree
            ));
        }
        done.push(Summand {
            module: w,
            basis,
            end_basis: e.basis,
            end_radical: cert.radical,
            residue_degree: cert.residue_degree,
        });
    }
    done.sort_by_key(|a| (a.dim(), encoding(&a.module)));
    let mut certificate = FqMatrix::zeros(f, 0, m.dim());
    for s in &done {
        certificate = certificate.vconcat(&s.basis);
    }
    let dec = Decomposition {
        summands: done,
        certificate,
        warnings,
    };
    if !dec.verify(m) {
        return Err(Error::Validation("decomposition certificate does not block-diagonalize".into()));
    }
    Ok(dec)
}

/// Isomorphism of modules with local endomorphism rings: a random element of
/// `Hom(a, b)` is invertible unless it lies in the proper subspace of
/// non-isomorphisms.
fn isomorphic_indecomposables(a: &GModule, b: &GModule, rng: &mut ChaCha8Rng) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let homs = hom_space(a, b)?;
    if homs.is_empty() {
        return Ok(false);
    }
    for h in homs.iter().take(4) {
        if h.det() != 0 {
            return Ok(true);
        }
    }
    for _ in 0..32 {
        if random_combination(&homs, rng).det() != 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn is_isomorphic(m: &GModule, n: &GModule) -> Result<bool> {
    m.check_compatible(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0x150);
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.dims() != dn.dims() {
        return Ok(false);
    }
    let mut used = vec![false; dn.summands.len()];
    for s in &dm.summands {
        let mut found = false;
        for (i, t) in dn.summands.iter().enumerate() {
            if !used[i] && isomorphic_indecomposables(&s.module, &t.module, &mut rng)? {
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `J(End M)` with its verification data.
#[derive(Clone, Debug)]
pub struct Radical {
    pub basis: Vec<FqMatrix>,
    /// `dim End/J`.
    pub semisimple_dim: usize,
}

/// Coordinates of `End(M_i)/J_i` for a local summand.
struct Residue {
    coords: Coordinates,
    skip: usize,
}

impl Residue {
    fn new(s: &Summand) -> Result<Self> {
        let f = s.module.field();
        let w = s.dim();
        let mut span = SpanBasis::new(f, w * w);
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for j in &s.end_radical {
            span.insert(&flatten(j));
            rows.push(flatten(j));
        }
        for b in &s.end_basis {
            if span.insert(&flatten(b)) {
                rows.push(flatten(b));
            }
        }
        Ok(Residue {
            coords: Coordinates::new(&FqMatrix::from_rows(f, &rows)?)?,
            skip: s.end_radical.len(),
        })
    }

    fn of(&self, x: &FqMatrix) -> Result<Vec<Elem>> {
        let c = self
            .coords
            .of(&flatten(x))
            .ok_or_else(|| Error::Validation("composite is not an endomorphism".into()))?;
        Ok(c[self.skip..].to_vec())
    }
}

/// The radical of an endomorphism algebra, assembled from the radical
/// morphisms between indecomposable summands: `x: M_i → M_j` is radical iff
/// `x y ∈ J(End M_i)` for every `y: M_j → M_i`.
pub fn radical(a: &EndAlgebra) -> Result<Radical> {
    if a.dim() > RADICAL_CAP {
        return Err(Error::scale("radical algebra dimension", a.dim(), RADICAL_CAP as u64));
    }
    let m = &a.module;
    let f = m.field();
    let n = m.dim();
    let dec = decompose(m)?;
    let c = &dec.certificate;
    let ci = c.try_inverse()?;
    let offsets: Vec<usize> = dec
        .summands
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.dim();
            Some(o)
        })
        .collect();
    let residues: Vec<Residue> = dec.summands.iter().map(Residue::new).collect::<Result<_>>()?;
    let mut basis = Vec::new();
    for (i, si) in dec.summands.iter().enumerate() {
        for (j, sj) in dec.summands.iter().enumerate() {
            let hij = hom_space(&si.module, &sj.module)?;
            if hij.is_empty() {
                continue;
            }
            let hji = hom_space(&sj.module, &si.module)?;
            let r = si.residue_degree;
            let mut eq = FqMatrix::zeros(f, hji.len() * r, hij.len());
            for (yi, y) in hji.iter().enumerate() {
                for (l, h) in hij.iter().enumerate() {
                    for (t, v) in residues[i].of(&h.mul(y))?.into_iter().enumerate() {
                        eq.set(yi * r + t, l, v);
                    }
                }
            }
            let sols = if eq.rows() == 0 {
                FqMatrix::identity(f, hij.len())
            } else {
                eq.nullspace()
            };
            for k in 0..sols.rows() {
                let mut x = FqMatrix::zeros(f, si.dim(), sj.dim());
                for (l, h) in hij.iter().enumerate() {
                    x.add_scaled(sols.get(k, l), h);
                }
                let mut big = FqMatrix::zeros(f, n, n);
                for rr in 0..si.dim() {
                    big.row_mut(offsets[i] + rr)[offsets[j]..offsets[j] + sj.dim()].copy_from_slice(x.row(rr));
                }
                basis.push(ci.mul(&big).mul(c));
            }
        }
    }
    let rad = Radical {
        semisimple_dim: a.dim() - basis.len(),
        basis,
    };
    verify_radical(a, &rad, &dec)?;
    Ok(rad)
}

fn verify_radical(a: &EndAlgebra, rad: &Radical, dec: &Decomposition) -> Result<()> {
    let m = &a.module;
    let f = m.field();
    let n = m.dim();
    let mut span = SpanBasis::new(f, n * n);
    for j in &rad.basis {
        if !m.generator_images().iter().all(|g| g.mul(j) == j.mul(g)) {
            return Err(Error::Validation("radical element is not an endomorphism".into()));
        }
        if !j.pow(n as u64).is_zero() {
            return Err(Error::Validation("radical element is not nilpotent".into()));
        }
        span.insert(&flatten(j));
    }
    for x in &a.basis {
        for j in &rad.basis {
            if !span.contains(&flatten(&x.mul(j))) || !span.contains(&flatten(&j.mul(x))) {
                return Err(Error::Validation("radical is not an ideal".into()));
            }
        }
    }
    // A/J semisimple: its dimension is Σ (multiplicity^2 · residue degree)
    // over isomorphism classes of summands
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0x4ad);
    let mut classes: Vec<(usize, usize)> = Vec::new(); // (representative, multiplicity)
    for (i, s) in dec.summands.iter().enumerate() {
        let mut hit = false;
        for c in classes.iter_mut() {
            if isomorphic_indecomposables(&dec.summands[c.0].module, &s.module, &mut rng)? {
                c.1 += 1;
                hit = true;
                break;
            }
        }
        if !hit {
            classes.push((i, 1));
        }
    }
    let expected: usize = classes
        .iter()
        .map(|&(i, k)| k * k * dec.summands[i].residue_degree)
        .sum();
    if expected != rad.semisimple_dim {
        return Err(Error::Validation(format!(
            "End/J has dimension {} but the summands predict {expected}",
            rad.semisimple_dim
        )));
    }
    Ok(())
}
