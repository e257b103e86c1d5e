use serde::Serialize;

use super::{flatten, Coordinates, GModule};
use crate::error::{Error, Result};
use crate::gf::{Elem, FqMatrix, SpanBasis};

/// Largest module whose endomorphisms are found by the general solver.
pub const GENERAL_END_CAP: usize = 200;

enum Origin {
    Seed(usize),
    Child(usize, usize),
}

/// A basis of `M` built by spinning standard basis vectors under the generators.
struct Spin {
    basis: FqMatrix,
    basis_inv: FqMatrix,
    origins: Vec<Origin>,
    seeds: usize,
}

fn spin(m: &GModule) -> Spin {
    let f = m.field();
    let d = m.dim();
    let mut span = SpanBasis::new(f, d);
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(d);
    let mut origins = Vec::with_capacity(d);
    let mut seeds = 0;
    for i in 0..d {
        if span.len() == d {
            break;
        }
        let mut e = vec![0; d];
        e[i] = 1;
        if !span.insert(&e) {
            continue;
        }
        rows.push(e);
        origins.push(Origin::Seed(seeds));
        seeds += 1;
        let mut j = rows.len() - 1;
        while j < rows.len() {
            for (s, a) in m.gens.iter().enumerate() {
                let w = a.vec_mul(&rows[j]);
                if span.insert(&w) {
                    rows.push(w);
                    origins.push(Origin::Child(j, s));
                }
            }
            j += 1;
        }
    }
    let basis = FqMatrix::from_rows(f, &rows).unwrap_or_else(|_| FqMatrix::zeros(f, 0, d));
    let basis_inv = basis.inverse().unwrap_or_else(|| FqMatrix::zeros(f, 0, 0));
    Spin {
        basis,
        basis_inv,
        origins,
        seeds,
    }
}

/// Basis of `Hom_G(M, N)` as `dim M × dim N` matrices `Φ` with `ρ_M(g) Φ = Φ ρ_N(g)`.
///
/// A homomorphism is fixed by the images of the spinning seeds; every
/// non-tree edge of the spin gives linear conditions on those images.
pub fn hom_space(m: &GModule, n: &GModule) -> Result<Vec<FqMatrix>> {
    m.check_compatible(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let sp = spin(m);
    let u = sp.seeds * dn;
    // images[j] (u × dn): the image of basis vector j as a linear function of the unknowns
    let mut images: Vec<FqMatrix> = Vec::with_capacity(dm);
    let mut tree = std::collections::HashSet::new();
    for o in &sp.origins {
        let l = match *o {
            Origin::Seed(k) => {
                let mut l = FqMatrix::zeros(f, u, dn);
                for r in 0..dn {
                    l.set(k * dn + r, r, 1);
                }
                l
            }
            Origin::Child(p, s) => {
                tree.insert((p, s));
                images[p].mul(&n.gens[s])
            }
        };
        images.push(l);
    }
    let action: Vec<FqMatrix> = m
        .gens
        .iter()
        .map(|a| sp.basis.mul(a).mul(&sp.basis_inv))
        .collect();
    let mut constraints = SpanBasis::new(f, u);
    'outer: for j in 0..dm {
        for s in 0..m.gens.len() {
            if tree.contains(&(j, s)) {
                continue;
            }
            let mut d = images[j].mul(&n.gens[s]);
            for (l, &c) in action[s].row(j).iter().enumerate() {
                if c != 0 {
                    d.add_scaled(f.neg(c), &images[l]);
                }
            }
            for col in 0..dn {
                constraints.insert(&d.column(col));
            }
            if constraints.len() == u {
                break 'outer;
            }
        }
    }
    let solutions = if constraints.is_empty() {
        FqMatrix::identity(f, u)
    } else {
        constraints.to_matrix().nullspace()
    };
    let mut out = Vec::with_capacity(solutions.rows());
    for k in 0..solutions.rows() {
        let x = solutions.row(k);
        let mut phi = FqMatrix::zeros(f, dm, dn);
        for (j, l) in images.iter().enumerate() {
            phi.row_mut(j).copy_from_slice(&l.vec_mul(x));
        }
        let phi = sp.basis_inv.mul(&phi);
        for (a, b) in m.gens.iter().zip(&n.gens) {
            if a.mul(&phi) != phi.mul(b) {
                return Err(Error::Validation("spun homomorphism fails to commute".into()));
            }
        }
        out.push(phi);
    }
    Ok(out)
}

/// How an endomorphism algebra was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndRoute {
    /// Direct spin solve of the commutant.
    General,
    /// `End_G(Ind V) ≅ Hom_H(V, Res_H Ind V)` transported to endomorphisms.
    Reciprocity,
}

/// `End_{kG}(M)` with a basis of commuting matrices.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub module: GModule,
    pub basis: Vec<FqMatrix>,
    pub route: EndRoute,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn coordinates(&self) -> Result<Coordinates> {
        let f = self.module.field();
        let rows: Vec<Vec<Elem>> = self.basis.iter().map(flatten).collect();
        Coordinates::new(&FqMatrix::from_rows(f, &rows)?)
    }

    /// `c[i][j][k]` with `b_i b_j = Σ_k c[i][j][k] b_k`.
    pub fn structure_constants(&self) -> Result<Vec<Vec<Vec<Elem>>>> {
        let coords = self.coordinates()?;
        self.basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .map(|b| {
                        coords
                            .of(&flatten(&a.mul(b)))
                            .ok_or_else(|| Error::Validation("endomorphisms not closed under products".into()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Every basis element commutes with the action.
    pub fn check(&self) -> bool {
        self.basis
            .iter()
            .all(|x| self.module.gens.iter().all(|a| a.mul(x) == x.mul(a)))
    }
}

/// Basis of `End_{kG}(M)`; induced modules go through reciprocity.
pub fn end_algebra(m: &GModule) -> Result<EndAlgebra> {
    if let Some(ind) = m.induced() {
        let basis = end_via_reciprocity(m, ind)?;
        return Ok(EndAlgebra {
            module: m.clone(),
            basis,
            route: EndRoute::Reciprocity,
        });
    }
    end_general(m)
}

pub(crate) fn end_general(m: &GModule) -> Result<EndAlgebra> {
    if m.dim() > GENERAL_END_CAP {
        return Err(Error::scale("endomorphism solver dimension", m.dim(), GENERAL_END_CAP as u64));
    }
    Ok(EndAlgebra {
        module: m.clone(),
        basis: hom_space(m, m)?,
        route: EndRoute::General,
    })
}

/// `F(v ⊗ t_i) = f(v) t_i` for each `f ∈ Hom_H(V, Res_H Ind V)`.
fn end_via_reciprocity(m: &GModule, ind: &super::Induced) -> Result<Vec<FqMatrix>> {
    let h = ind.source.group();
    let res = m.restrict(h)?;
    let homs = hom_space(&ind.source, &res)?;
    let d = ind.source.dim();
    let n = ind.table.index();
    let f = m.field();
    let blocks: Vec<Vec<(usize, FqMatrix)>> = ind
        .table
        .reps
        .iter()
        .map(|t| {
            let b = ind.blocks(t)?;
            let hs: Vec<_> = b.iter().map(|(_, h)| h.clone()).collect();
            let mats = ind.source.images(&hs)?;
            Ok(b.into_iter().map(|(j, _)| j).zip(mats).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(homs.len());
    for phi in &homs {
        let mut big = FqMatrix::zeros(f, n * d, n * d);
        for (i, tb) in blocks.iter().enumerate() {
            for r in 0..d {
                let src = phi.row(r);
                let dst = big.row_mut(i * d + r);
                // src · ρ_Ind(t_i): block k of src moves to block tb[k].0 through tb[k].1
                for (k, (j, mat)) in tb.iter().enumerate() {
                    let piece = mat.vec_mul(&src[k * d..(k + 1) * d]);
                    for (c, v) in piece.into_iter().enumerate() {
                        dst[j * d + c] = f.add(dst[j * d + c], v);
                    }
                }
            }
        }
        out.push(big);
    }
    for x in &out {
        if !m.gens.iter().all(|a| a.mul(x) == x.mul(a)) {
            return Err(Error::Validation("reciprocity endomorphism fails to commute".into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::test_modules::*;
    use super::*;
    use crate::grouptheory::test_groups::{perm, symmetric};
    use crate::permgroup::PermGroup;

    /// Oracle: commutant by the Kronecker-product linear system.
    fn commutant_dim(m: &GModule) -> usize {
        let f = m.field();
        let d = m.dim();
        let id = FqMatrix::identity(f, d);
        let mut sys: Option<FqMatrix> = None;
        for a in m.generator_images() {
            // vec(A X - X A) = (A ⊗ I - I ⊗ A^T) vec(X) with row-major vec
            let block = a.kron(&id).sub(&id.kron(&a.transpose()));
            sys = Some(match sys {
                None => block,
                Some(s) => s.vconcat(&block),
            });
        }
        sys.map_or(d * d, |s| s.nullspace().rows())
    }

    #[test]
    fn small_endomorphism_algebras() {
        let f = gf(8);
        let g = cyclic(2);
        let k = GModule::trivial(&g, &f);
        assert_eq!(end_algebra(&k).unwrap().dim(), 1);
        assert_eq!(end_algebra(&k.direct_sum(&k).unwrap()).unwrap().dim(), 4);
        let reg = regular(&g, &f);
        assert_eq!(end_algebra(&reg).unwrap().dim(), 2);
    }

    #[test]
    fn spin_matches_kronecker_oracle() {
        let f = gf(2);
        let g = symmetric(4);
        let reg = regular(&g, &f);
        let perm_mod = GModule::trivial(&g.subgroup(vec![perm(4, &[&[1, 2, 3]])]).unwrap(), &f)
            .induce(&g)
            .unwrap();
        let sum = perm_mod.direct_sum(&GModule::trivial(&g, &f)).unwrap();
        for m in [&sum, &perm_mod] {
            let e = end_general(m).unwrap();
            assert!(e.check());
            assert_eq!(e.dim(), commutant_dim(m));
            e.structure_constants().unwrap();
        }
        assert_eq!(end_general(&reg).unwrap().dim(), 24);
    }

    #[test]
    fn reciprocity_route_agrees() {
        let f = gf(2);
        let g = symmetric(4);
        let subs = [
            g.subgroup(vec![perm(4, &[&[1, 2, 3]])]).unwrap(),
            g.subgroup(vec![perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 3], &[2, 4]])]).unwrap(),
            PermGroup::trivial(4),
        ];
        for h in &subs {
            let ind = GModule::trivial(h, &f).induce(&g).unwrap();
            let r = end_algebra(&ind).unwrap();
            assert_eq!(r.route, EndRoute::Reciprocity);
            assert!(r.check());
            let plain = GModule::from_parts(&g, &f, ind.dim(), ind.generator_images().to_vec());
            assert_eq!(r.dim(), end_general(&plain).unwrap().dim());
        }
    }

    #[test]
    fn hom_between_distinct_modules() {
        let f = gf(2);
        let g = cyclic(3);
        let reg = regular(&g, &f);
        let k = GModule::trivial(&g, &f);
        // Hom(k, kC3) = fixed points, Hom(kC3, k) = one augmentation
        assert_eq!(hom_space(&k, &reg).unwrap().len(), 1);
        assert_eq!(hom_space(&reg, &k).unwrap().len(), 1);
        // over GF(4) the regular module splits into three distinct characters
        assert_eq!(end_general(&reg).unwrap().dim(), 3);
    }
}
