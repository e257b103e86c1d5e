use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{join, normalizer, p_part};
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;

const SYLOW_SEED: u64 = 0x51_0a_2b;

/// Candidates drawn per growth step in a group where the current subgroup is normal.
const CANDIDATES: usize = 16;

/// A Sylow `p`-subgroup.
///
/// A `p`-subgroup `H` grows inside `N_G(H)`: when `H` is normal in the
/// current group, `p`-parts of random elements outside `H` extend it;
/// otherwise the search recurses into `N_G(H)`, whose Sylow subgroups are
/// strictly larger than `H` as long as `H` is not Sylow in `G`.
pub fn sylow(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(SYLOW_SEED ^ p);
    let target = p_part(g.order_u64(), p);
    let s = grow(g, PermGroup::trivial(g.degree()), p, &mut rng)?;
    if s.order_u64() != target {
        return Err(Error::Validation(format!(
            "Sylow {p}-subgroup has order {}, expected {target}",
            s.order_u64()
        )));
    }
    Ok(s)
}

pub fn sylow_2(g: &PermGroup) -> Result<PermGroup> {
    sylow(g, 2)
}

fn grow(g: &PermGroup, mut h: PermGroup, p: u64, rng: &mut ChaCha8Rng) -> Result<PermGroup> {
    let target = p_part(g.order_u64(), p);
    while h.order_u64() < target {
        if h.is_normal_in(g) {
            let mut best: Option<PermGroup> = None;
            let mut found = 0;
            while found < CANDIDATES {
                let y = g.random_element(rng).p_part(p);
                if y.is_identity() || h.contains_unchecked(&y) {
                    continue;
                }
                found += 1;
                let cand = join(&h, &g.subgroup(vec![y])?)?;
                if best.as_ref().is_none_or(|b| cand.order() > b.order()) {
                    best = Some(cand);
                }
            }
            h = best.unwrap();
        } else {
            let n = normalizer(g, &h)?;
            h = grow(&n, h, p, rng)?;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;
    use super::*;

    #[test]
    fn odd_group_has_trivial_sylow_2() {
        assert!(sylow_2(&cyclic(15)).unwrap().is_trivial());
    }

    #[test]
    fn m11_sylow_orders() {
        let g = m11();
        assert_eq!(sylow_2(&g).unwrap().order_u64(), 16);
        assert_eq!(sylow(&g, 3).unwrap().order_u64(), 9);
        assert_eq!(sylow(&g, 11).unwrap().order_u64(), 11);
    }

    #[test]
    fn symmetric_sylows() {
        let g = symmetric(8);
        assert_eq!(sylow_2(&g).unwrap().order_u64(), 128);
        assert_eq!(sylow(&g, 3).unwrap().order_u64(), 9);
    }

    #[test]
    fn deterministic() {
        let g = m11();
        let a = sylow_2(&g).unwrap();
        let b = sylow_2(&g).unwrap();
        assert_eq!(a.generators(), b.generators());
    }
}
