use super::GModule;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FqMatrix};
use crate::grouptheory::abelian_invariants_odd;
use crate::permgroup::PermGroup;

/// A homomorphism `N → k^×`, by its exponents on the invariant-factor basis
/// of the odd part of `N/[N,N]`.
#[derive(Clone, Debug)]
pub struct Character {
    pub exponents: Vec<u64>,
    pub module: GModule,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }
}

fn multiplicative_order_of_two(n: u64) -> u32 {
    let mut x = 2 % n;
    let mut e = 1;
    while x != 1 % n {
        x = x * 2 % n;
        e += 1;
    }
    e
}

/// All one-dimensional modules together with the odd abelian invariants of
/// `N`; the trivial character comes first, the rest in lexicographic order
/// of exponents.
pub fn one_dim_characters(n: &PermGroup, field: &Field) -> Result<(Vec<u64>, Vec<Character>)> {
    let ab = abelian_invariants_odd(n)?;
    let q1 = field.q() as u64 - 1;
    if let Some(&exp) = ab.invariants.last() {
        if !q1.is_multiple_of(exp) {
            return Err(Error::FieldTooSmall {
                e: field.e(),
                order: exp,
                minimal_e: multiplicative_order_of_two(exp),
            });
        }
    }
    let zetas: Vec<Elem> = ab.invariants.iter().map(|&d| field.exp(q1 / d)).collect();
    let mut out = Vec::new();
    let mut k = vec![0u64; ab.invariants.len()];
    loop {
        let gens = ab
            .generator_coords
            .iter()
            .map(|c| {
                let mut v: Elem = 1;
                for ((z, &ki), &ci) in zetas.iter().zip(&k).zip(c) {
                    v = field.mul(v, field.pow(*z, ki * ci));
                }
                FqMatrix::scalar(field, 1, v)
            })
            .collect();
        out.push(Character {
            exponents: k.clone(),
            module: GModule::from_parts(n, field, 1, gens),
        });
        // odometer, last coordinate fastest
        let mut i = k.len();
        loop {
            if i == 0 {
                return Ok((ab.invariants, out));
            }
            i -= 1;
            k[i] += 1;
            if k[i] < ab.invariants[i] {
                break;
            }
            k[i] = 0;
        }
    }
}

/// Every homomorphism `N → GF(2^e)^×` as a one-dimensional module.
pub fn one_dim_modules(n: &PermGroup, e: u32) -> Result<Vec<GModule>> {
    let f = Field::gf2(e)?;
    Ok(one_dim_characters(n, &f)?.1.into_iter().map(|c| c.module).collect())
}

#[cfg(test)]
mod tests {
    use super::super::test_modules::*;
    use super::*;
    use crate::grouptheory::test_groups::{direct_product, m11};

    #[test]
    fn perfect_and_two_groups_have_only_the_trivial_module() {
        assert_eq!(one_dim_modules(&m11(), 8).unwrap().len(), 1);
        let only = one_dim_modules(&sd16(), 8).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only[0].is_trivial_action());
    }

    #[test]
    fn sd16_times_c3() {
        let n = direct_product(&sd16(), &cyclic(3));
        let (inv, chars) = one_dim_characters(&n, &gf(8)).unwrap();
        assert_eq!(inv, vec![3]);
        assert_eq!(chars.len(), 3);
        assert!(chars[0].is_trivial());
        for c in &chars {
            c.module.validate().unwrap();
        }
        // the nontrivial two are dual to each other
        let d = chars[1].module.dual();
        assert_eq!(d.generator_images(), chars[2].module.generator_images());
    }

    #[test]
    fn field_too_small() {
        match one_dim_modules(&cyclic(7), 8) {
            Err(Error::FieldTooSmall { minimal_e, order, .. }) => {
                assert_eq!(minimal_e, 3);
                assert_eq!(order, 7);
            }
            other => panic!("expected FieldTooSmall, got {other:?}"),
        }
        assert_eq!(one_dim_modules(&cyclic(7), 3).unwrap().len(), 7);
    }
}
