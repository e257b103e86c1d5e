use std::collections::HashMap;

use super::GModule;
use crate::error::{Error, Result};
use crate::gf::FqMatrix;
use crate::grouptheory::p_part;
use crate::permgroup::{PermGroup, Permutation};

/// Largest 2-group whose norm element is summed element by element.
pub const NORM_CAP: u64 = 1 << 8;

fn check_two_group(p: &PermGroup) -> Result<u64> {
    let order = p.order_u64();
    if !order.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("norm element needs a 2-group, got order {order}")));
    }
    p.check_cap(NORM_CAP, "norm element")?;
    Ok(order)
}

/// Images of every element of `group` in each list of generator images.
fn all_images(group: &PermGroup, modules: &[&[FqMatrix]]) -> Vec<Vec<FqMatrix>> {
    let id = group.identity();
    let mut seen: HashMap<Permutation, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elems = vec![id];
    let mut out: Vec<Vec<FqMatrix>> = modules
        .iter()
        .map(|gens| {
            let f = gens[0].field();
            vec![FqMatrix::identity(f, gens[0].rows())]
        })
        .collect();
    let mut i = 0;
    while i < elems.len() {
        for (s, g) in group.generators().iter().enumerate() {
            let y = elems[i].mul(g);
            if seen.contains_key(&y) {
                continue;
            }
            seen.insert(y.clone(), elems.len());
            elems.push(y);
            for (k, gens) in modules.iter().enumerate() {
                let m = out[k][i].mul(&gens[s]);
                out[k].push(m);
            }
        }
        i += 1;
    }
    out
}

/// Rank of the norm element `Σ_{g ∈ P} ρ(g)`, the number of free summands of
/// a module over a 2-group. Tensor products are summed as Kronecker products
/// of their factors' element images.
pub fn norm_rank(m: &GModule) -> Result<usize> {
    let p = m.group();
    check_two_group(p)?;
    let f = m.field();
    if p.generators().is_empty() {
        return Ok(m.dim());
    }
    let norm = if let Some((a, b)) = m.tensor_factors() {
        let imgs = all_images(p, &[a.generator_images(), b.generator_images()]);
        let mut acc = FqMatrix::zeros(f, m.dim(), m.dim());
        for (x, y) in imgs[0].iter().zip(&imgs[1]) {
            acc.add_scaled(1, &x.kron(y));
        }
        acc
    } else {
        let imgs = all_images(p, &[m.generator_images()]);
        let mut acc = FqMatrix::zeros(f, m.dim(), m.dim());
        for x in &imgs[0] {
            acc.add_scaled(1, x);
        }
        acc
    };
    Ok(norm.rank())
}

/// `dim M - |P| · norm_rank(M)`: the dimension left after stripping free summands.
pub fn projective_free_dim(m: &GModule) -> Result<usize> {
    let order = m.group().order_u64() as usize;
    let r = norm_rank(m)?;
    Ok(m.dim() - order * r)
}

/// Splits a module over a 2-group as `(kP)^b ⊕ C` with `C` free of
/// projective summands, returning `(b, C)`. `C` is the kernel of the
/// retraction `x ↦ (λ(x ρ(g)))_g` onto the free part, where `λ` is dual to
/// independent norm images.
pub fn split_free(m: &GModule) -> Result<(usize, GModule)> {
    let p = m.group();
    let order = check_two_group(p)? as usize;
    let f = m.field();
    let n = m.dim();
    if p.generators().is_empty() {
        return Ok((n, GModule::from_parts(p, f, 0, Vec::new())));
    }
    let imgs = all_images(p, &[m.generator_images()]).pop().unwrap();
    let mut norm = FqMatrix::zeros(f, n, n);
    for x in &imgs {
        norm.add_scaled(1, x);
    }
    let rows = norm.transpose().echelon().pivots;
    let b = rows.len();
    if b == 0 {
        return Ok((0, m.clone()));
    }
    let s = FqMatrix::from_rows(f, &rows.iter().map(|&i| norm.row(i).to_vec()).collect::<Vec<_>>())?;
    let cols = s.echelon().pivots;
    let mut square = FqMatrix::zeros(f, b, b);
    for i in 0..b {
        for (k, &c) in cols.iter().enumerate() {
            square.set(i, k, s.get(i, c));
        }
    }
    let inv = square.try_inverse()?;
    let mut lambda = FqMatrix::zeros(f, n, b);
    for (k, &c) in cols.iter().enumerate() {
        lambda.row_mut(c).copy_from_slice(inv.row(k));
    }
    let mut psi = FqMatrix::zeros(f, n, 0);
    for x in &imgs {
        psi = psi.hconcat(&x.mul(&lambda));
    }
    let kernel = psi.left_nullspace();
    if kernel.rows() != n - b * order {
        return Err(Error::Validation(format!(
            "free part of rank {b} leaves a kernel of dimension {}, expected {}",
            kernel.rows(),
            n - b * order
        )));
    }
    if kernel.rows() == 0 {
        return Ok((b, GModule::from_parts(p, f, 0, vec![FqMatrix::zeros(f, 0, 0); p.generators().len()])));
    }
    Ok((b, m.submodule(&kernel)?))
}

/// The projective-free part of a module over a 2-group. For tensor products
/// the factors are reduced first, since `(A ⊕ F) ⊗ (B ⊕ F') ≅ A ⊗ B ⊕ (free)`.
pub fn projective_free_core(m: &GModule) -> Result<GModule> {
    if let Some((a, b)) = m.tensor_factors() {
        let (ca, cb) = (projective_free_core(a)?, projective_free_core(b)?);
        if ca.dim() == 0 || cb.dim() == 0 {
            return Ok(GModule::from_parts(m.group(), m.field(), 0, vec![
                FqMatrix::zeros(m.field(), 0, 0);
                m.group().generators().len()
            ]));
        }
        let t = ca.tensor(&cb)?;
        let plain = GModule::from_parts(t.group(), t.field(), t.dim(), t.generator_images().to_vec());
        return Ok(split_free(&plain)?.1);
    }
    Ok(split_free(m)?.1)
}

/// `M` is endo-trivial iff `Res_P(M) ⊗ Res_P(M)*` is `k` plus a free module.
/// The test runs on the projective-free part of the restriction, which
/// changes `M ⊗ M*` only by free summands.
pub fn is_endotrivial(m: &GModule, p: &PermGroup) -> Result<bool> {
    if !p.is_subgroup_of(m.group()) {
        return Err(Error::NotSubgroup("endo-triviality test".into()));
    }
    let order = m.group().order_u64();
    if p.order_u64() != p_part(order, 2) {
        return Err(Error::InvalidArgument("endo-triviality needs a Sylow 2-subgroup".into()));
    }
    let core = projective_free_core(&m.restrict(p)?)?;
    if core.dim() == 0 {
        return Ok(false);
    }
    Ok(projective_free_dim(&core.tensor(&core.dual())?)? == 1)
}

#[cfg(test)]
mod tests {
    use super::super::test_modules::*;
    use super::*;
    use crate::gf::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> FqMatrix {
        loop {
            let data = (0..n * n).map(|_| rng.gen_range(0..f.q()) as u8).collect();
            let m = FqMatrix::from_vec(f, n, n, data).unwrap();
            if m.det() != 0 {
                return m;
            }
        }
    }

    #[test]
    fn regular_and_trivial() {
        let f = gf(8);
        let p = sd16();
        let reg = regular(&p, &f);
        assert_eq!(norm_rank(&reg).unwrap(), 1);
        assert_eq!(projective_free_dim(&reg).unwrap(), 0);
        let k = GModule::trivial(&p, &f);
        assert_eq!(norm_rank(&k).unwrap(), 0);
        assert_eq!(projective_free_dim(&k).unwrap(), 1);
        assert!(is_endotrivial(&k, &p).unwrap());
        assert!(!is_endotrivial(&reg, &p).unwrap());
    }

    #[test]
    fn planted_free_rank() {
        let f = gf(2);
        let p = cyclic(4);
        let reg = regular(&p, &f);
        let k = GModule::trivial(&p, &f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let free = rng.gen_range(0..4);
            let mut m = k.clone();
            for _ in 0..free {
                m = m.direct_sum(&reg).unwrap();
            }
            let c = random_invertible(&f, m.dim(), &mut rng);
            let m = m.change_basis(&c).unwrap();
            assert_eq!(norm_rank(&m).unwrap(), free);
        }
    }

    #[test]
    fn tensor_shortcut_matches_explicit_kronecker() {
        let f = gf(1);
        let p = sd16();
        let reg = regular(&p, &f);
        let k = GModule::trivial(&p, &f);
        let m = reg.direct_sum(&k).unwrap();
        let t = m.tensor(&m.dual()).unwrap();
        let plain = GModule::from_parts(&p, &f, t.dim(), t.generator_images().to_vec());
        assert_eq!(norm_rank(&t).unwrap(), norm_rank(&plain).unwrap());
        // (kP + k) ⊗ (kP + k)* = 3 kP + k
        assert_eq!(norm_rank(&t).unwrap(), 18);
    }

    #[test]
    fn not_a_two_group() {
        let f = gf(2);
        let g = cyclic(3);
        assert!(norm_rank(&GModule::trivial(&g, &f)).is_err());
    }

    /// Oracle: the unreduced test on the full tensor square.
    fn endotrivial_direct(m: &GModule, p: &PermGroup) -> bool {
        let r = m.restrict(p).unwrap();
        projective_free_dim(&r.tensor(&r.dual()).unwrap()).unwrap() == 1
    }

    #[test]
    fn split_free_recovers_planted_summands() {
        let f = gf(4);
        let p = sd16();
        let reg = regular(&p, &f);
        let k = GModule::trivial(&p, &f);
        let c2 = p.subgroup(vec![p.generators()[1].clone()]).unwrap();
        let perm = GModule::trivial(&c2, &f).induce(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for free in 0..3 {
            let mut m = k.direct_sum(&perm).unwrap();
            for _ in 0..free {
                m = m.direct_sum(&reg).unwrap();
            }
            let c = random_invertible(&f, m.dim(), &mut rng);
            let m = m.change_basis(&c).unwrap();
            let (b, core) = split_free(&m).unwrap();
            assert_eq!(b, free);
            assert_eq!(core.dim(), 1 + perm.dim());
            assert_eq!(norm_rank(&core).unwrap(), 0);
            core.validate().unwrap();
        }
        let (b, core) = split_free(&reg).unwrap();
        assert_eq!((b, core.dim()), (1, 0));
    }

    #[test]
    fn reduced_test_agrees_with_direct_test() {
        let f = gf(2);
        let p = sd16();
        let reg = regular(&p, &f);
        let k = GModule::trivial(&p, &f);
        let c2 = p.subgroup(vec![p.generators()[1].clone()]).unwrap();
        let perm = GModule::trivial(&c2, &f).induce(&p).unwrap();
        let omega = {
            // kernel of the augmentation kP -> k is endo-trivial
            let ones = FqMatrix::from_rows(&f, &[vec![1; 16]]).unwrap();
            let aug = ones.transpose();
            reg.submodule(&aug.left_nullspace()).unwrap()
        };
        for m in [k.clone(), reg.clone(), perm.clone(), omega.clone(), k.direct_sum(&reg).unwrap(), omega.direct_sum(&reg).unwrap()] {
            assert_eq!(is_endotrivial(&m, &p).unwrap(), endotrivial_direct(&m, &p), "dim {}", m.dim());
        }
        assert!(is_endotrivial(&omega, &p).unwrap());
        let t = omega.tensor(&omega).unwrap();
        assert!(is_endotrivial(&t, &p).unwrap());
        let (_, core) = split_free(&GModule::from_parts(&p, &f, t.dim(), t.generator_images().to_vec())).unwrap();
        // Ω ⊗ Ω ≅ Ω²(k) ⊕ free, and Ω²(k) has dimension 2·16 - 15
        assert_eq!(core.dim(), 17);
        assert_eq!(t.dim() - 16 * norm_rank(&t).unwrap(), 17);
    }
}
