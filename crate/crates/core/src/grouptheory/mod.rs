//! Subgroup constructions on top of the stabilizer chain: normalizers,
//! centralizers, closures, Sylow subgroups, characteristic subgroups,
//! quotients, abelian invariants and small 2-groups.

mod abelian;
mod classes;
mod sylow;
mod twogroups;

pub use abelian::{abelian_invariants, abelian_invariants_odd, quotient_perm_rep, AbelianInvariants, QuotientMap};
pub use classes::{conjugacy_class_reps, o_lower_2, o_lower_odd, o_lower_p_with_sylow, o_upper_pprime, o_upper_pprime_with_sylow};
pub use sylow::{sylow, sylow_2};
pub use twogroups::{
    classify_2group, subgroup_classes_under, subgroup_order_profile, subgroups_of_2group, SubgroupClass, TwoGroupTag,
    TwoGroupType,
};

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation, DEFAULT_ELEMENT_CAP};

/// Tests `g^-1 h g in H` for the generators `h` of `H`, rejecting through the
/// images of `H`'s base points before building any full permutation.
struct ConjTester<'a> {
    group: &'a PermGroup,
    base: Vec<u32>,
}

impl<'a> ConjTester<'a> {
    fn new(group: &'a PermGroup) -> Self {
        ConjTester {
            group,
            base: group.base(),
        }
    }

    fn conj_in(&self, h: &Permutation, g: &Permutation, g_inv: &Permutation) -> bool {
        let conj = |x: u32| g.apply(h.apply(g_inv.apply(x)));
        let imgs: Vec<u32> = self.base.iter().map(|&b| conj(b)).collect();
        match self.group.element_from_base_image(&imgs) {
            None => false,
            Some(c) => (0..self.group.degree() as u32).all(|x| c.apply(x) == conj(x)),
        }
    }

    fn normalizes(&self, g: &Permutation, g_inv: &Permutation) -> bool {
        self.group
            .generators()
            .iter()
            .all(|h| self.conj_in(h, g, g_inv))
    }
}

/// Accumulates a subgroup from elements found by a scan.
struct Collector {
    group: PermGroup,
}

impl Collector {
    fn new(degree: usize) -> Self {
        Collector {
            group: PermGroup::trivial(degree),
        }
    }

    fn offer(&mut self, g: &Permutation) {
        if !self.group.contains_unchecked(g) {
            let mut gens = self.group.generators().to_vec();
            gens.push(g.clone());
            self.group = PermGroup::new(self.group.degree(), gens).expect("same degree");
        }
    }
}

fn check_sub(h: &PermGroup, g: &PermGroup, what: &str) -> Result<()> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(what.into()));
    }
    Ok(())
}

/// `N_G(H)` for several subgroups in a single pass over the elements of `G`.
pub fn normalizers(g: &PermGroup, hs: &[PermGroup]) -> Result<Vec<PermGroup>> {
    for h in hs {
        check_sub(h, g, "normalizer")?;
    }
    let mut out: Vec<Option<PermGroup>> = hs
        .iter()
        .map(|h| h.is_normal_in(g).then(|| g.clone()))
        .collect();
    let pending: Vec<usize> = (0..hs.len()).filter(|&i| out[i].is_none()).collect();
    if pending.is_empty() {
        return Ok(out.into_iter().map(Option::unwrap).collect());
    }
    let testers: Vec<ConjTester> = hs.iter().map(ConjTester::new).collect();
    let mut found: Vec<Collector> = pending.iter().map(|_| Collector::new(g.degree())).collect();
    for (x, x_inv) in g.elements(DEFAULT_ELEMENT_CAP)? {
        for (k, &i) in pending.iter().enumerate() {
            if testers[i].normalizes(&x, &x_inv) {
                found[k].offer(&x);
            }
        }
    }
    for (k, &i) in pending.iter().enumerate() {
        out[i] = Some(std::mem::replace(&mut found[k].group, PermGroup::trivial(1)));
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    Ok(normalizers(g, std::slice::from_ref(h))?.pop().unwrap())
}

/// `C_G(H)` by element scan.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    check_sub(h, g, "centralizer")?;
    if g.generators().iter().all(|x| h.generators().iter().all(|y| x.commutes_with(y))) {
        return Ok(g.clone());
    }
    let mut c = Collector::new(g.degree());
    for (x, _) in g.elements(DEFAULT_ELEMENT_CAP)? {
        if h.generators().iter().all(|y| x.commutes_with(y)) {
            c.offer(&x);
        }
    }
    Ok(c.group)
}

pub fn center(g: &PermGroup) -> Result<PermGroup> {
    centralizer(g, g)
}

/// Subgroup generated by two subgroups of a common group.
pub fn join(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let mut gens = a.generators().to_vec();
    gens.extend(b.generators().iter().filter(|x| !a.contains_unchecked(x)).cloned());
    PermGroup::new(a.degree(), gens)
}

/// Smallest normal subgroup of `G` containing `S`.
pub fn normal_closure(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    if s.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: s.degree(),
        });
    }
    Ok(normal_closure_bounded(g, s.generators().to_vec(), |_| false).expect("unbounded"))
}

/// Normal closure of `<gens>` in `G`, abandoned (returning `None`) as soon
/// as an intermediate subgroup satisfies `stop`.
pub(crate) fn normal_closure_bounded(
    g: &PermGroup,
    gens: Vec<Permutation>,
    stop: impl Fn(&PermGroup) -> bool,
) -> Option<PermGroup> {
    let gens: Vec<Permutation> = gens.into_iter().filter(|x| !x.is_identity()).collect();
    let mut n = PermGroup::new(g.degree(), gens).expect("same degree");
    loop {
        if stop(&n) {
            return None;
        }
        let mut added = None;
        'outer: for x in n.generators() {
            for a in g.generators() {
                let c = x.conjugate_by(a);
                if !n.contains_unchecked(&c) {
                    added = Some(c);
                    break 'outer;
                }
            }
        }
        match added {
            None => return Some(n),
            Some(c) => {
                let mut gs = n.generators().to_vec();
                gs.push(c);
                n = PermGroup::new(g.degree(), gs).expect("same degree");
            }
        }
    }
}

/// `[G, G]` as the normal closure of the commutators of generators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_bounded(g, comms, |_| false).expect("unbounded")
}

/// `A ∩ B` by scanning the smaller group.
pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.is_subgroup_of(big) {
        return Ok(small.clone());
    }
    let mut c = Collector::new(a.degree());
    for (x, _) in small.elements(DEFAULT_ELEMENT_CAP)? {
        if big.contains_unchecked(&x) {
            c.offer(&x);
        }
    }
    Ok(c.group)
}

/// Whether the group is abelian (generators commute pairwise).
pub fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

/// Part of `n` prime to `p`.
pub fn p_prime_part(n: u64, p: u64) -> u64 {
    n / p_part(n, p)
}

#[cfg(test)]
pub(crate) mod test_groups {
    use super::*;

    pub fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles_1based(n, cycles).unwrap()
    }

    /// SD16 on Z/8: x -> x+1 and x -> 3x (points 1..8 stand for 0..7).
    pub fn sd16() -> PermGroup {
        let r = Permutation::from_images((0..8).map(|x| (x + 1) % 8).collect()).unwrap();
        let s = Permutation::from_images((0..8).map(|x| (3 * x) % 8).collect()).unwrap();
        PermGroup::new(8, vec![r, s]).unwrap()
    }

    pub fn d16() -> PermGroup {
        let r = Permutation::from_images((0..8).map(|x| (x + 1) % 8).collect()).unwrap();
        let s = Permutation::from_images((0..8).map(|x| (8 - x) % 8).collect()).unwrap();
        PermGroup::new(8, vec![r, s]).unwrap()
    }

    /// Q16 in its regular representation on 16 points.
    pub fn q16() -> PermGroup {
        // elements r^i s^j, i in 0..8, j in 0..2; index i + 8j
        let idx = |i: u32, j: u32| i % 8 + 8 * j;
        // right multiplication by r: r^i s^j r = r^(i - j*2*i?) ... use s r = r^-1 s
        let mul_r: Vec<u32> = (0..16)
            .map(|k| {
                let (i, j) = (k % 8, k / 8);
                if j == 0 { idx(i + 1, 0) } else { idx(i + 7, 1) }
            })
            .collect();
        // right multiplication by s: r^i s^j s = r^i s^(j+1), s^2 = r^4
        let mul_s: Vec<u32> = (0..16)
            .map(|k| {
                let (i, j) = (k % 8, k / 8);
                if j == 0 { idx(i, 1) } else { idx(i + 4, 0) }
            })
            .collect();
        PermGroup::new(
            16,
            vec![
                Permutation::from_images(mul_r).unwrap(),
                Permutation::from_images(mul_s).unwrap(),
            ],
        )
        .unwrap()
    }

    pub fn m11() -> PermGroup {
        PermGroup::new(
            11,
            vec![
                perm(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]),
                perm(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]),
            ],
        )
        .unwrap()
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let cyc: Vec<u32> = (1..=n as u32).collect();
        PermGroup::new(n, vec![perm(n, &[&cyc]), perm(n, &[&[1, 2]])]).unwrap()
    }

    /// Direct product of two groups on disjoint point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
        let (n, m) = (a.degree(), b.degree());
        let shift_a = |g: &Permutation| {
            let mut v: Vec<u32> = g.images().to_vec();
            v.extend(n as u32..(n + m) as u32);
            Permutation::from_images(v).unwrap()
        };
        let shift_b = |g: &Permutation| {
            let mut v: Vec<u32> = (0..n as u32).collect();
            v.extend(g.images().iter().map(|&x| x + n as u32));
            Permutation::from_images(v).unwrap()
        };
        let mut gens: Vec<Permutation> = a.generators().iter().map(shift_a).collect();
        gens.extend(b.generators().iter().map(shift_b));
        PermGroup::new(n + m, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let cyc: Vec<u32> = (1..=n as u32).collect();
        PermGroup::new(n, vec![perm(n, &[&cyc])]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_groups::*;
    use super::*;

    fn brute_normalizer(g: &PermGroup, h: &PermGroup) -> Vec<Permutation> {
        let hs: std::collections::HashSet<Permutation> = h.element_list(1 << 20).unwrap().into_iter().collect();
        g.element_list(1 << 20)
            .unwrap()
            .into_iter()
            .filter(|x| hs.iter().all(|y| hs.contains(&y.conjugate_by(x))))
            .collect()
    }

    #[test]
    fn normalizer_of_whole_group() {
        let g = m11();
        assert_eq!(normalizer(&g, &g).unwrap().order_u64(), 7920);
    }

    #[test]
    fn normalizer_matches_brute_force() {
        let g = symmetric(5);
        let h = g.subgroup(vec![perm(5, &[&[1, 2, 3]])]).unwrap();
        let n = normalizer(&g, &h).unwrap();
        let brute = brute_normalizer(&g, &h);
        assert_eq!(n.order_u64() as usize, brute.len());
        assert!(brute.iter().all(|x| n.contains(x).unwrap()));
        let k = g.subgroup(vec![perm(5, &[&[1, 2], &[3, 4]])]).unwrap();
        let many = normalizers(&g, &[h.clone(), k.clone()]).unwrap();
        assert_eq!(many[0].order_u64(), 12);
        assert_eq!(many[1].order_u64(), brute_normalizer(&g, &k).len() as u64);
    }

    #[test]
    fn centralizer_and_center() {
        let g = direct_product(&cyclic(3), &sd16());
        let z = center(&g).unwrap();
        // Z(SD16) has order 2
        assert_eq!(z.order_u64(), 6);
        let g = symmetric(4);
        assert_eq!(center(&g).unwrap().order_u64(), 1);
        let t = g.subgroup(vec![perm(4, &[&[1, 2]])]).unwrap();
        assert_eq!(centralizer(&g, &t).unwrap().order_u64(), 4);
    }

    #[test]
    fn derived_and_closure() {
        assert!(derived_subgroup(&cyclic(6)).is_trivial());
        let g = symmetric(5);
        assert_eq!(derived_subgroup(&g).order_u64(), 60);
        let t = g.subgroup(vec![perm(5, &[&[1, 2]])]).unwrap();
        assert_eq!(normal_closure(&g, &t).unwrap().order_u64(), 120);
        let d = derived_subgroup(&m11());
        assert_eq!(d.order_u64(), 7920);
    }

    #[test]
    fn intersection_in_sd16() {
        let g = sd16();
        let r = g.subgroup(vec![g.generators()[0].clone()]).unwrap();
        let s = g.subgroup(vec![g.generators()[1].clone()]).unwrap();
        assert!(intersection(&r, &s).unwrap().is_trivial());
        let r2 = g.subgroup(vec![g.generators()[0].pow(2)]).unwrap();
        assert_eq!(intersection(&r, &r2).unwrap().order_u64(), 4);
    }

    #[test]
    fn not_a_subgroup_is_an_error() {
        let g = sd16();
        let h = PermGroup::new(8, vec![perm(8, &[&[1, 2, 3]])]).unwrap();
        assert!(matches!(normalizer(&g, &h), Err(Error::NotSubgroup(_))));
    }
}
