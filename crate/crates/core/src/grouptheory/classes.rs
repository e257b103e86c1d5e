use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{normal_closure, normal_closure_bounded, sylow, sylow_2};
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation, DEFAULT_ELEMENT_CAP};

/// One representative per conjugacy class of elements satisfying `keep`,
/// in element-enumeration order. Classes are swept by conjugating with the
/// generators; elements are keyed by their base images.
pub fn conjugacy_class_reps(g: &PermGroup, keep: impl Fn(&Permutation) -> bool) -> Result<Vec<Permutation>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut reps = Vec::new();
    for (x, _) in g.elements(DEFAULT_ELEMENT_CAP)? {
        if !keep(&x) {
            continue;
        }
        let key = g.base_image(&x);
        if seen.contains(&key) {
            continue;
        }
        seen.insert(key);
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            for a in g.generators() {
                let c = y.conjugate_by(a);
                if seen.insert(g.base_image(&c)) {
                    stack.push(c);
                }
            }
        }
        reps.push(x);
    }
    Ok(reps)
}

fn is_odd(n: &BigUint) -> bool {
    n.bit(0)
}

fn is_power_of(n: &BigUint, p: u64) -> bool {
    let p = BigUint::from(p);
    let mut n = n.clone();
    while !n.is_one() {
        if !(&n % &p).is_zero() {
            return false;
        }
        n /= &p;
    }
    true
}

/// `O_{2'}(G)`: the join of the odd-order normal closures of odd-order
/// class representatives. Every normal subgroup of odd order is such a
/// join, and a join of normal odd-order subgroups is again normal of odd
/// order, so the result is the largest one.
pub fn o_lower_odd(g: &PermGroup) -> Result<PermGroup> {
    let reps = conjugacy_class_reps(g, |x| !x.is_identity() && is_odd(&x.order()))?;
    let mut o = PermGroup::trivial(g.degree());
    for x in reps {
        if o.contains_unchecked(&x) {
            continue;
        }
        let mut gens = o.generators().to_vec();
        gens.push(x);
        if let Some(n) = normal_closure_bounded(g, gens, |n| !is_odd(&n.order())) {
            o = n;
        }
    }
    Ok(o)
}

/// `O_p(G)` given a Sylow `p`-subgroup `P`: every element of `O_p(G)` lies
/// in `P` and has a `p`-group as normal closure, and conversely.
pub fn o_lower_p_with_sylow(g: &PermGroup, p_sub: &PermGroup, p: u64) -> Result<PermGroup> {
    let mut o = PermGroup::trivial(g.degree());
    for (x, _) in p_sub.elements(DEFAULT_ELEMENT_CAP)? {
        if o.contains_unchecked(&x) {
            continue;
        }
        let mut gens = o.generators().to_vec();
        gens.push(x);
        if let Some(n) = normal_closure_bounded(g, gens, |n| !n.is_subgroup_of(p_sub)) {
            o = n;
        }
    }
    debug_assert!(is_power_of(&o.order(), p));
    Ok(o)
}

/// `O_2(G)`.
pub fn o_lower_2(g: &PermGroup) -> Result<PermGroup> {
    let p = sylow_2(g)?;
    o_lower_p_with_sylow(g, &p, 2)
}

/// `O^{p'}(G)`, the normal closure of a Sylow `p`-subgroup.
pub fn o_upper_pprime(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let s = sylow(g, p)?;
    o_upper_pprime_with_sylow(g, &s, p)
}

pub fn o_upper_pprime_with_sylow(g: &PermGroup, s: &PermGroup, p: u64) -> Result<PermGroup> {
    let n = normal_closure(g, s)?;
    let index = g.order() / n.order();
    if (&index % BigUint::from(p)).is_zero() {
        return Err(Error::Validation(format!("O^{{{p}'}} has index {index} divisible by {p}")));
    }
    // S is Sylow in N as well, so O^{p'}(N) is its normal closure there
    if normal_closure(&n, s)?.order() != n.order() {
        return Err(Error::Validation("O^{p'} is not idempotent".into()));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;
    use super::super::{center, is_abelian};
    use super::*;

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_class_reps(&symmetric(5), |_| true).unwrap().len(), 7);
        assert_eq!(conjugacy_class_reps(&m11(), |_| true).unwrap().len(), 10);
        assert_eq!(conjugacy_class_reps(&sd16(), |_| true).unwrap().len(), 7);
    }

    #[test]
    fn o_odd_of_direct_product() {
        let g = direct_product(&cyclic(3), &sd16());
        let o = o_lower_odd(&g).unwrap();
        assert_eq!(o.order_u64(), 3);
        assert!(o.is_normal_in(&g));
        assert!(o_lower_odd(&m11()).unwrap().is_trivial());
        // contains a planted normal odd subgroup
        let g = direct_product(&direct_product(&cyclic(5), &symmetric(4)), &cyclic(3));
        let o = o_lower_odd(&g).unwrap();
        assert_eq!(o.order_u64(), 15);
    }

    #[test]
    fn o_two() {
        // O_2(S4) = V4
        assert_eq!(o_lower_2(&symmetric(4)).unwrap().order_u64(), 4);
        assert!(o_lower_2(&m11()).unwrap().is_trivial());
        assert_eq!(o_lower_2(&sd16()).unwrap().order_u64(), 16);
    }

    #[test]
    fn o_upper() {
        let c6 = cyclic(6);
        assert_eq!(o_upper_pprime(&c6, 2).unwrap().order_u64(), 2);
        let p = sd16();
        assert_eq!(o_upper_pprime(&p, 2).unwrap().order_u64(), 16);
        assert_eq!(o_upper_pprime(&symmetric(4), 3).unwrap().order_u64(), 12);
        let z = center(&symmetric(3)).unwrap();
        assert!(z.is_trivial() && is_abelian(&c6));
    }
}
