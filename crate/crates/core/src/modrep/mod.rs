//! Modules for permutation groups over `GF(2^e)`: constructions, Hom spaces,
//! direct-sum decomposition, free-summand counting and endo-triviality.
//!
//! Matrices act on row vectors, so a module is a right module and
//! `ρ(gh) = ρ(g) ρ(h)` matches the left-to-right permutation product.

mod chars;
mod decompose;
mod free;
mod hom;
mod io;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FqMatrix};
use crate::permgroup::{CosetTable, PermGroup, Permutation, Side, Word};

pub use chars::{one_dim_characters, one_dim_modules, Character};
pub use decompose::{
    decompose, decompose_with_seed, is_isomorphic, radical, Decomposition, Radical, Summand, DEFAULT_SEED,
};
pub use free::{is_endotrivial, norm_rank, projective_free_core, projective_free_dim, split_free, NORM_CAP};
pub use hom::{end_algebra, hom_space, EndAlgebra, EndRoute, GENERAL_END_CAP};
pub use io::{format_mod, parse_mod, read_mod, write_mod};

/// Largest induced module built.
pub const INDUCTION_CAP: usize = 2000;

#[derive(Clone, Debug)]
pub(crate) struct Induced {
    pub(crate) source: GModule,
    pub(crate) table: CosetTable,
}

/// How a module was built, kept where a construction enables a shortcut.
#[derive(Clone, Debug)]
pub(crate) enum Structure {
    Plain,
    Induced(Arc<Induced>),
    Tensor(Arc<(GModule, GModule)>),
}

/// A `kG`-module given by one invertible matrix per generator of `G`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: PermGroup,
    field: Field,
    dim: usize,
    gens: Vec<FqMatrix>,
    structure: Structure,
}

impl GModule {
    /// Validated constructor.
    pub fn new(group: &PermGroup, field: &Field, gens: Vec<FqMatrix>) -> Result<Self> {
        if field.p() != 2 {
            return Err(Error::UnsupportedField {
                p: field.p(),
                e: field.e(),
            });
        }
        if gens.len() != group.generators().len() {
            return Err(Error::InvalidArgument(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let dim = gens.first().map_or(1, |m| m.rows());
        for m in &gens {
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(Error::Dimension("generator images must be square of one size over one field".into()));
            }
        }
        let m = GModule::from_parts(group, field, dim, gens);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(group: &PermGroup, field: &Field, dim: usize, gens: Vec<FqMatrix>) -> Self {
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            gens,
            structure: Structure::Plain,
        }
    }

    /// Checks invertibility, generator orders, and 20 random relations.
    pub fn validate(&self) -> Result<()> {
        for (m, g) in self.gens.iter().zip(self.group.generators()) {
            if m.inverse().is_none() {
                return Err(Error::Validation("singular generator image".into()));
            }
            let o = g.order_u64().ok_or_else(|| Error::Validation("generator order overflow".into()))?;
            if !m.pow(o).is_identity() {
                return Err(Error::Validation(format!(
                    "generator image order does not divide {o}"
                )));
            }
        }
        let k = self.gens.len();
        if k == 0 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x7e1a);
        let id = FqMatrix::identity(&self.field, self.dim);
        let inv: Vec<FqMatrix> = self.gens.iter().map(|m| m.inverse().unwrap()).collect();
        for _ in 0..20 {
            let len = rng.gen_range(1..12);
            let w = Word(
                (0..len)
                    .map(|_| crate::permgroup::Letter::new(rng.gen_range(0..k), rng.gen_bool(0.5)))
                    .collect(),
            );
            let x = self.group.evaluate_word_perm(&w);
            let relation = w.concat(&self.group.factor(&x)?.inverse());
            if relation.evaluate(&self.gens, &inv, &id) != id {
                return Err(Error::Validation("a relation of the group fails in the module".into()));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_images(&self) -> &[FqMatrix] {
        &self.gens
    }

    pub fn is_induced(&self) -> bool {
        matches!(self.structure, Structure::Induced(_))
    }

    /// The trivial module `k`.
    pub fn trivial(group: &PermGroup, field: &Field) -> Self {
        let one = FqMatrix::identity(field, 1);
        GModule::from_parts(group, field, 1, vec![one; group.generators().len()])
    }

    fn check_compatible(&self, other: &GModule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::InvalidArgument("modules over different fields".into()));
        }
        if self.group.degree() != other.group.degree() || self.group.generators() != other.group.generators() {
            return Err(Error::InvalidArgument("modules for different groups".into()));
        }
        Ok(())
    }

    /// `M ⊗ N` through Kronecker products.
    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.check_compatible(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect();
        let mut t = GModule::from_parts(&self.group, &self.field, self.dim * other.dim, gens);
        t.structure = Structure::Tensor(Arc::new((self.clone(), other.clone())));
        Ok(t)
    }

    /// `M*` through inverse transposes.
    pub fn dual(&self) -> GModule {
        let gens = self
            .gens
            .iter()
            .map(|a| a.inverse().expect("invertible").transpose())
            .collect();
        GModule::from_parts(&self.group, &self.field, self.dim, gens)
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.check_compatible(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| FqMatrix::block_diagonal(&self.field, &[a, b]))
            .collect();
        Ok(GModule::from_parts(&self.group, &self.field, self.dim + other.dim, gens))
    }

    /// The same module in the basis given by the rows of `c`: `ρ'(g) = c ρ(g) c^-1`.
    pub fn change_basis(&self, c: &FqMatrix) -> Result<GModule> {
        let ci = c.try_inverse()?;
        if c.rows() != self.dim {
            return Err(Error::Dimension("basis change of the wrong size".into()));
        }
        let gens = self.gens.iter().map(|a| c.mul(a).mul(&ci)).collect();
        Ok(GModule::from_parts(&self.group, &self.field, self.dim, gens))
    }

    /// Image of an arbitrary group element.
    pub fn image(&self, g: &Permutation) -> Result<FqMatrix> {
        if let Structure::Induced(ind) = &self.structure {
            return ind.image(g, &self.field);
        }
        self.group
            .evaluate_in(g, self.gens.clone(), FqMatrix::identity(&self.field, self.dim))
    }

    /// Images of several elements sharing one evaluator.
    pub fn images(&self, elems: &[Permutation]) -> Result<Vec<FqMatrix>> {
        if let Structure::Induced(ind) = &self.structure {
            return elems.iter().map(|g| ind.image(g, &self.field)).collect();
        }
        let mut ev = self
            .group
            .evaluator(self.gens.clone(), FqMatrix::identity(&self.field, self.dim));
        elems.iter().map(|g| ev.element(g)).collect()
    }

    /// `Res^G_H M`.
    pub fn restrict(&self, h: &PermGroup) -> Result<GModule> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup("restriction".into()));
        }
        if let Structure::Tensor(parts) = &self.structure {
            return parts.0.restrict(h)?.tensor(&parts.1.restrict(h)?);
        }
        let gens = self.images(h.generators())?;
        Ok(GModule::from_parts(h, &self.field, self.dim, gens))
    }

    /// `Ind_H^G V` on `⊕ V ⊗ t_i` for the right transversal `H t_i`.
    pub fn induce(&self, g: &PermGroup) -> Result<GModule> {
        if !self.group.is_subgroup_of(g) {
            return Err(Error::NotSubgroup("induction".into()));
        }
        let index = g.order() / self.group.order();
        let needed = index * self.dim;
        if needed > INDUCTION_CAP.into() {
            return Err(Error::scale("induced module dimension", needed, INDUCTION_CAP as u64));
        }
        let table = g.coset_table(&self.group, Side::Right)?;
        let ind = Induced {
            source: self.clone(),
            table,
        };
        let gens = g
            .generators()
            .iter()
            .map(|x| ind.image(x, &self.field))
            .collect::<Result<_>>()?;
        Ok(GModule {
            group: g.clone(),
            field: self.field.clone(),
            dim: ind.table.index() * self.dim,
            gens,
            structure: Structure::Induced(Arc::new(ind)),
        })
    }

    /// Stored induction data, if this module was built by `induce`.
    pub(crate) fn induced(&self) -> Option<&Induced> {
        match &self.structure {
            Structure::Induced(i) => Some(i),
            _ => None,
        }
    }

    pub(crate) fn tensor_factors(&self) -> Option<&(GModule, GModule)> {
        match &self.structure {
            Structure::Tensor(t) => Some(t),
            _ => None,
        }
    }

    /// The submodule spanned by the rows of `basis`, which must be invariant.
    pub fn submodule(&self, basis: &FqMatrix) -> Result<GModule> {
        let coords = Coordinates::new(basis)?;
        let gens = self
            .gens
            .iter()
            .map(|a| coords.of_rows(&basis.mul(a)))
            .collect::<Result<_>>()?;
        Ok(GModule::from_parts(&self.group, &self.field, basis.rows(), gens))
    }

    /// Whether the rows of `basis` span an invariant subspace.
    pub fn is_invariant(&self, basis: &FqMatrix) -> bool {
        Coordinates::new(basis).is_ok_and(|c| self.gens.iter().all(|a| c.of_rows(&basis.mul(a)).is_ok()))
    }

    /// Whether every generator acts trivially.
    pub fn is_trivial_action(&self) -> bool {
        self.gens.iter().all(|a| a.is_identity())
    }
}

impl Induced {
    /// Block-monomial image: `(v ⊗ t_i) g = v ρ(h) ⊗ t_j` with `t_i g = h t_j`.
    fn blocks(&self, g: &Permutation) -> Result<Vec<(usize, Permutation)>> {
        self.table
            .reps
            .iter()
            .map(|t| {
                let x = t.mul(g);
                let j = self.table.coset_of(&x);
                Ok((j, x.mul(&self.table.reps[j].inverse())))
            })
            .collect()
    }

    fn image(&self, g: &Permutation, field: &Field) -> Result<FqMatrix> {
        let d = self.source.dim;
        let n = self.table.index();
        let blocks = self.blocks(g)?;
        let hs: Vec<Permutation> = blocks.iter().map(|(_, h)| h.clone()).collect();
        let mats = self.source.images(&hs)?;
        let mut out = FqMatrix::zeros(field, n * d, n * d);
        for (i, ((j, _), m)) in blocks.iter().zip(&mats).enumerate() {
            for r in 0..d {
                out.row_mut(i * d + r)[j * d..(j + 1) * d].copy_from_slice(m.row(r));
            }
        }
        Ok(out)
    }
}

/// Solves `c B = x` for the rows `x` of a matrix, `B` of full row rank.
pub(crate) struct Coordinates {
    basis: FqMatrix,
    pivots: Vec<usize>,
    inv: FqMatrix,
}

impl Coordinates {
    pub(crate) fn new(basis: &FqMatrix) -> Result<Self> {
        // pivot columns of the echelon form are independent columns of B
        let pivots = basis.echelon().pivots;
        if pivots.len() != basis.rows() {
            return Err(Error::Dimension("basis rows are dependent".into()));
        }
        let f = basis.field();
        let mut sq = FqMatrix::zeros(f, basis.rows(), basis.rows());
        for i in 0..basis.rows() {
            for (k, &p) in pivots.iter().enumerate() {
                sq.set(i, k, basis.get(i, p));
            }
        }
        let inv = sq.try_inverse()?;
        Ok(Coordinates {
            basis: basis.clone(),
            pivots,
            inv,
        })
    }

    pub(crate) fn of(&self, x: &[Elem]) -> Option<Vec<Elem>> {
        let sel: Vec<Elem> = self.pivots.iter().map(|&p| x[p]).collect();
        let c = self.inv.vec_mul(&sel);
        (self.basis.vec_mul(&c) == x).then_some(c)
    }

    pub(crate) fn of_rows(&self, x: &FqMatrix) -> Result<FqMatrix> {
        let mut out = FqMatrix::zeros(x.field(), x.rows(), self.basis.rows());
        for i in 0..x.rows() {
            let c = self.of(x.row(i)).ok_or(Error::Inconsistent)?;
            out.row_mut(i).copy_from_slice(&c);
        }
        Ok(out)
    }
}

pub(crate) fn flatten(m: &FqMatrix) -> Vec<Elem> {
    m.data().to_vec()
}

pub(crate) fn unflatten(field: &Field, rows: usize, cols: usize, v: Vec<Elem>) -> FqMatrix {
    FqMatrix::from_vec(field, rows, cols, v).expect("shape")
}

/// Random linear combination of matrices.
pub(crate) fn random_combination(basis: &[FqMatrix], rng: &mut ChaCha8Rng) -> FqMatrix {
    let f = basis[0].field();
    let mut acc = FqMatrix::zeros(f, basis[0].rows(), basis[0].cols());
    for b in basis {
        let c = rng.gen_range(0..f.q()) as Elem;
        acc.add_scaled(c, b);
    }
    acc
}

#[cfg(test)]
pub(crate) mod test_modules {
    use super::*;
    use crate::grouptheory::test_groups;

    pub fn gf(e: u32) -> Field {
        Field::gf2(e).unwrap()
    }

    /// Regular module of a permutation group via its element list.
    pub fn regular(g: &PermGroup, f: &Field) -> GModule {
        let elems = g.element_list(1 << 12).unwrap();
        let index: std::collections::HashMap<_, _> = elems.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let n = elems.len();
        let gens = g
            .generators()
            .iter()
            .map(|s| {
                let mut m = FqMatrix::zeros(f, n, n);
                for (i, x) in elems.iter().enumerate() {
                    m.set(i, index[&x.mul(s)], 1);
                }
                m
            })
            .collect();
        GModule::new(g, f, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        test_groups::cyclic(n)
    }

    pub fn sd16() -> PermGroup {
        test_groups::sd16()
    }
}

#[cfg(test)]
mod tests {
    use super::test_modules::*;
    use super::*;
    use crate::grouptheory::test_groups::{perm, symmetric};

    #[test]
    fn tensor_with_trivial_and_double_dual() {
        let g = symmetric(4);
        let f = gf(2);
        let m = regular(&g, &f);
        let k = GModule::trivial(&g, &f);
        let t = k.tensor(&m).unwrap();
        assert_eq!(t.generator_images(), m.generator_images());
        assert_eq!(m.dual().dual().generator_images(), m.generator_images());
        assert_eq!(m.tensor(&m.dual()).unwrap().dim(), 576);
        assert_eq!(m.direct_sum(&k).unwrap().dim(), 25);
    }

    #[test]
    fn invalid_modules_rejected() {
        let g = cyclic(3);
        let f = gf(2);
        // an involution cannot represent an element of order 3
        let swap = FqMatrix::from_ints(&f, &[&[0, 1], &[1, 0]]);
        assert!(GModule::new(&g, &f, vec![swap]).is_err());
        let s4 = symmetric(4);
        // images that satisfy the generator orders but not the relations
        let a = FqMatrix::from_ints(&f, &[&[0, 1], &[1, 0]]);
        let b = FqMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]);
        let bad = GModule::new(&s4, &f, vec![b.clone(), a.clone(), a.clone(), b]);
        assert!(bad.is_err() || s4.generators().len() != 4);
    }

    #[test]
    fn restriction_and_induction() {
        let g = symmetric(4);
        let f = gf(2);
        let h = g.subgroup(vec![perm(4, &[&[1, 2, 3]])]).unwrap();
        let k = GModule::trivial(&h, &f);
        let ind = k.induce(&g).unwrap();
        assert_eq!(ind.dim(), 8);
        ind.validate().unwrap();
        // permutation module on cosets: every group element acts by a permutation matrix
        let x = g.generators()[0].mul(&g.generators()[1]);
        let img = ind.image(&x).unwrap();
        let prod = ind.generator_images()[0].mul(&ind.generator_images()[1]);
        assert_eq!(img, prod);
        assert_eq!(GModule::trivial(&g, &f).restrict(&h).unwrap().generator_images(), k.generator_images());
        let same = ind.restrict(&g).unwrap();
        assert_eq!(same.generator_images(), ind.generator_images());
        let back = GModule::trivial(&g, &f).induce(&g).unwrap();
        assert_eq!(back.dim(), 1);
        assert!(back.is_trivial_action());
    }

    #[test]
    fn induction_cap() {
        let g = symmetric(7);
        let f = gf(1);
        let h = PermGroup::trivial(7);
        assert!(matches!(GModule::trivial(&h, &f).induce(&g), Err(Error::Scale { .. })));
    }

    #[test]
    fn submodule_extraction() {
        let g = cyclic(3);
        let f = gf(2);
        let m = regular(&g, &f);
        let all_ones = FqMatrix::from_rows(&f, &[vec![1, 1, 1]]).unwrap();
        assert!(m.is_invariant(&all_ones));
        let s = m.submodule(&all_ones).unwrap();
        assert!(s.is_trivial_action());
        let e1 = FqMatrix::from_rows(&f, &[vec![1, 0, 0]]).unwrap();
        assert!(!m.is_invariant(&e1));
    }
}
