use std::collections::HashSet;

use serde::Serialize;

use super::derived_subgroup;
use crate::error::{Error, Result};
use crate::permgroup::{CosetTable, PermGroup, Permutation, Side};

/// Largest abelianization enumerated element by element.
const ABELIAN_CAP: u64 = 1 << 16;

/// The action of `G` on the right cosets of a normal subgroup `N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// `G/N` acting on `|G:N|` points, generated by the images of `G`'s generators.
    pub quotient: PermGroup,
    table: CosetTable,
    source: PermGroup,
}

impl QuotientMap {
    /// Image of `g` in the quotient.
    pub fn image(&self, g: &Permutation) -> Permutation {
        let images = self
            .table
            .reps
            .iter()
            .map(|t| self.table.coset_of(&t.mul(g)) as u32)
            .collect();
        Permutation::from_images(images).expect("coset action is a permutation")
    }

    /// Some preimage in `G` of a quotient element.
    pub fn preimage(&self, q: &Permutation) -> Result<Permutation> {
        let w = self.quotient.factor(q)?;
        Ok(self.source.evaluate_word_perm(&w))
    }

    pub fn index(&self) -> usize {
        self.table.index()
    }
}

/// `G/N` as a permutation group on the cosets of `N`.
pub fn quotient_perm_rep(g: &PermGroup, n: &PermGroup) -> Result<QuotientMap> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("quotient".into()));
    }
    let table = g.coset_table(n, Side::Right)?;
    let k = table.index();
    let mut map = QuotientMap {
        quotient: PermGroup::trivial(k),
        table,
        source: g.clone(),
    };
    let gens: Vec<Permutation> = g.generators().iter().map(|x| map.image(x)).collect();
    map.quotient = PermGroup::new(k, gens)?;
    if map.quotient.order_u64() as usize != k {
        return Err(Error::Validation("coset action of G/N is not regular".into()));
    }
    Ok(map)
}

/// Invariant factors `d_1 | d_2 | ...` (ascending, each `> 1`) of an abelian
/// group, with elements of `G` mapping to a basis of matching orders.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianInvariants {
    pub invariants: Vec<u64>,
    #[serde(skip)]
    pub generators: Vec<Permutation>,
    /// For each generator of `G`, the exponents of its image (projected to
    /// the selected primes) in terms of `generators`.
    #[serde(skip)]
    pub generator_coords: Vec<Vec<u64>>,
}

impl AbelianInvariants {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow(x: &Permutation, k: u64) -> Permutation {
    x.pow(k as i64)
}

/// Basis of the `p`-primary part of an abelian permutation group, as
/// `(element, order)` pairs with orders non-increasing.
fn primary_basis(elements: &[Permutation], p: u64) -> Result<Vec<(Permutation, u64)>> {
    let part: Vec<&Permutation> = elements
        .iter()
        .filter(|x| {
            let mut o = x.order_u64().unwrap();
            while o % p == 0 {
                o /= p;
            }
            o == 1
        })
        .collect();
    let id = Permutation::identity(elements[0].degree());
    let mut span: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut basis = Vec::new();
    while span.len() < part.len() {
        // element of largest order modulo the span
        let mut best: Option<(&Permutation, u64)> = None;
        for &y in &part {
            let mut k = 1u64;
            let mut z = y.clone();
            while !span.contains(&z) {
                z = pow(&z, p);
                k *= p;
            }
            if best.is_none_or(|(_, b)| k > b) {
                best = Some((y, k));
            }
        }
        let (y, ord) = best.unwrap();
        let s = pow(y, ord);
        let z = span
            .iter()
            .filter(|z| pow(z, ord) == s)
            .min()
            .cloned()
            .ok_or_else(|| Error::Validation("abelian basis adjustment failed".into()))?;
        let y2 = y.mul(&z.inverse());
        let mut next = HashSet::with_capacity(span.len() * ord as usize);
        let mut power = id.clone();
        for _ in 0..ord {
            for s in &span {
                next.insert(s.mul(&power));
            }
            power = power.mul(&y2);
        }
        span = next;
        basis.push((y2, ord));
    }
    Ok(basis)
}

/// Invariants of an abelian permutation group; `keep` selects the primes.
fn invariants_of_abelian(a: &PermGroup, keep: &impl Fn(u64) -> bool) -> Result<(Vec<u64>, Vec<Permutation>)> {
    a.check_cap(ABELIAN_CAP, "abelian invariants")?;
    let order = a.order_u64();
    if order == 1 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut elements = a.element_list(ABELIAN_CAP)?;
    elements.sort();
    // columns[i] collects the i-th largest primary component of each prime
    let mut columns: Vec<(u64, Permutation)> = Vec::new();
    for p in prime_factors(order).into_iter().filter(|&p| keep(p)) {
        for (i, (x, o)) in primary_basis(&elements, p)?.into_iter().enumerate() {
            if i < columns.len() {
                let (d, g) = &columns[i];
                columns[i] = (d * o, g.mul(&x));
            } else {
                columns.push((o, x));
            }
        }
    }
    columns.reverse();
    Ok(columns.into_iter().unzip())
}

fn abelianization(g: &PermGroup, keep: impl Fn(u64) -> bool) -> Result<AbelianInvariants> {
    let d = derived_subgroup(g);
    if d.order() == g.order() {
        return Ok(AbelianInvariants {
            invariants: Vec::new(),
            generators: Vec::new(),
            generator_coords: vec![Vec::new(); g.generators().len()],
        });
    }
    let q = quotient_perm_rep(g, &d)?;
    let (invariants, gens) = invariants_of_abelian(&q.quotient, &keep)?;
    let generators = gens.iter().map(|x| q.preimage(x)).collect::<Result<_>>()?;
    let generator_coords = coordinates(&q, g, &invariants, &gens, &keep)?;
    Ok(AbelianInvariants {
        invariants,
        generators,
        generator_coords,
    })
}

/// Exponent `m` with `x^m` the `keep`-primary part of any `x` of order `order`.
fn projection_exponent(order: u64, keep: &impl Fn(u64) -> bool) -> u64 {
    let mut kept = 1;
    let mut rest = order;
    for p in prime_factors(order).into_iter().filter(|&p| keep(p)) {
        while rest.is_multiple_of(p) {
            rest /= p;
            kept *= p;
        }
    }
    // m = 0 mod rest, m = 1 mod kept
    (0..kept).map(|k| k * rest).find(|m| m % kept == 1 % kept).unwrap()
}

fn coordinates(
    q: &QuotientMap,
    g: &PermGroup,
    invariants: &[u64],
    basis: &[Permutation],
    keep: &impl Fn(u64) -> bool,
) -> Result<Vec<Vec<u64>>> {
    let mut table: std::collections::HashMap<Permutation, Vec<u64>> = Default::default();
    let mut coords = vec![0u64; invariants.len()];
    let mut x = q.quotient.identity();
    // odometer over all exponent vectors, tracking the product incrementally
    loop {
        table.insert(x.clone(), coords.clone());
        let mut i = 0;
        loop {
            if i == coords.len() {
                break;
            }
            coords[i] += 1;
            x = x.mul(&basis[i]);
            if coords[i] < invariants[i] {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == coords.len() {
            break;
        }
    }
    let m = projection_exponent(q.quotient.order_u64(), keep);
    g.generators()
        .iter()
        .map(|s| {
            let y = q.image(s).pow(m as i64);
            table
                .get(&y)
                .cloned()
                .ok_or_else(|| Error::Validation("abelian coordinates: image outside basis span".into()))
        })
        .collect()
}

/// Invariant factors of `G/[G,G]`.
pub fn abelian_invariants(g: &PermGroup) -> Result<AbelianInvariants> {
    abelianization(g, |_| true)
}

/// Invariant factors of the odd part of `G/[G,G]`.
pub fn abelian_invariants_odd(g: &PermGroup) -> Result<AbelianInvariants> {
    abelianization(g, |p| p != 2)
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;
    use super::super::{center, derived_subgroup};
    use super::*;

    #[test]
    fn perfect_group_has_no_invariants() {
        assert!(abelian_invariants_odd(&m11()).unwrap().is_trivial());
    }

    #[test]
    fn cyclic_fifteen() {
        let a = abelian_invariants_odd(&cyclic(15)).unwrap();
        assert_eq!(a.invariants, vec![15]);
        assert_eq!(a.generators[0].order_u64(), Some(15));
    }

    #[test]
    fn mixed_products() {
        // C2 x C4 x C3 x C9: invariants [6, 36]
        let g = direct_product(&direct_product(&cyclic(2), &cyclic(4)), &direct_product(&cyclic(3), &cyclic(9)));
        let a = abelian_invariants(&g).unwrap();
        assert_eq!(a.invariants, vec![6, 36]);
        for (x, d) in a.generators.iter().zip(&a.invariants) {
            assert_eq!(x.order_u64(), Some(*d));
        }
        let odd = abelian_invariants_odd(&g).unwrap();
        assert_eq!(odd.invariants, vec![3, 9]);
        // recombining the coordinates recovers each generator's odd part modulo G'
        for (s, c) in g.generators().iter().zip(&odd.generator_coords) {
            let mut y = g.identity();
            for (b, &k) in odd.generators.iter().zip(c) {
                y = y.mul(&b.pow(k as i64));
            }
            let o = s.order_u64().unwrap();
            let m = projection_exponent(o, &|p| p != 2);
            assert_eq!(y, s.pow(m as i64));
        }
        let s = direct_product(&cyclic(3), &sd16());
        assert_eq!(abelian_invariants_odd(&s).unwrap().invariants, vec![3]);
        assert_eq!(abelian_invariants(&sd16()).unwrap().invariants, vec![2, 2]);
    }

    #[test]
    fn quotient_by_center() {
        let g = direct_product(&cyclic(3), &symmetric(4));
        let z = center(&g).unwrap();
        let q = quotient_perm_rep(&g, &z).unwrap();
        assert_eq!(q.quotient.order_u64(), 24);
        let x = &g.generators()[1];
        let y = &g.generators()[2];
        assert_eq!(q.image(&x.mul(y)), q.image(x).mul(&q.image(y)));
        let full = quotient_perm_rep(&g, &g).unwrap();
        assert_eq!(full.quotient.order_u64(), 1);
        let d = derived_subgroup(&symmetric(4));
        assert!(quotient_perm_rep(&symmetric(4), &symmetric(4).subgroup(vec![perm(4, &[&[1, 2]])]).unwrap()).is_err());
        assert_eq!(d.order_u64(), 12);
    }
}
