use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::is_abelian;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

/// Largest 2-group whose subgroups are enumerated.
const SUBGROUP_ENUM_CAP: u64 = 1 << 8;
/// Largest 2-group classified by element scan.
const CLASSIFY_CAP: u64 = 1 << 16;

/// Isomorphism type of a 2-group, decided for groups with a cyclic
/// subgroup of index 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoGroupTag {
    Cyclic,
    /// Abelian but not cyclic.
    AbelianNoncyclic,
    Dihedral,
    Quaternion,
    Semidihedral,
    Modular,
    Other,
}

impl fmt::Display for TwoGroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TwoGroupTag::Cyclic => "cyclic",
            TwoGroupTag::AbelianNoncyclic => "abelian-noncyclic",
            TwoGroupTag::Dihedral => "dihedral",
            TwoGroupTag::Quaternion => "quaternion",
            TwoGroupTag::Semidihedral => "semidihedral",
            TwoGroupTag::Modular => "modular",
            TwoGroupTag::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoGroupType {
    pub tag: TwoGroupTag,
    /// `log2` of the order.
    pub m: u32,
    /// `(r, s)` with `r` generating a cyclic subgroup of index 2 (or the
    /// whole group when cyclic) and `s` outside it realizing the relation.
    #[serde(skip)]
    pub witnesses: Option<(Permutation, Permutation)>,
}

impl TwoGroupType {
    pub fn is_semidihedral(&self) -> bool {
        self.tag == TwoGroupTag::Semidihedral && self.m >= 4
    }
}

impl fmt::Display for TwoGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of order 2^{}", self.tag, self.m)
    }
}

fn log2_exact(n: u64) -> Option<u32> {
    (n.is_power_of_two()).then(|| n.trailing_zeros())
}

/// Isomorphism type of a 2-group.
pub fn classify_2group(p: &PermGroup) -> Result<TwoGroupType> {
    let order = p.order_u64();
    let m = log2_exact(order).ok_or_else(|| Error::InvalidArgument(format!("order {order} is not a power of 2")))?;
    let mut elements = p.element_list(CLASSIFY_CAP)?;
    elements.sort();
    let of_order = |k: u64| elements.iter().find(|x| x.order_u64() == Some(k)).cloned();
    let id = p.identity();
    if is_abelian(p) {
        return Ok(match of_order(order) {
            Some(r) => TwoGroupType {
                tag: TwoGroupTag::Cyclic,
                m,
                witnesses: Some((r, id)),
            },
            None => TwoGroupType {
                tag: TwoGroupTag::AbelianNoncyclic,
                m,
                witnesses: None,
            },
        });
    }
    let other = TwoGroupType {
        tag: TwoGroupTag::Other,
        m,
        witnesses: None,
    };
    let Some(r) = of_order(order / 2) else {
        return Ok(other);
    };
    let cyc = p.subgroup(vec![r.clone()])?;
    let outside: Vec<&Permutation> = elements.iter().filter(|x| !cyc.contains_unchecked(x)).collect();
    let s0 = outside[0];
    let c = r.conjugate_by(s0);
    let involution = outside.iter().find(|s| s.mul(s).is_identity()).map(|s| (*s).clone());
    let half = 1i64 << (m - 2);
    let (tag, s) = if c == r.pow(-1) {
        match involution {
            Some(s) => (TwoGroupTag::Dihedral, s),
            None => (TwoGroupTag::Quaternion, s0.clone()),
        }
    } else if c == r.pow(half - 1) && involution.is_some() {
        (TwoGroupTag::Semidihedral, involution.unwrap())
    } else if c == r.pow(half + 1) && involution.is_some() {
        (TwoGroupTag::Modular, involution.unwrap())
    } else {
        return Ok(other);
    };
    Ok(TwoGroupType {
        tag,
        m,
        witnesses: Some((r, s)),
    })
}

/// Element-indexed view of a small group: sorted elements and a
/// multiplication table.
struct Indexed {
    elements: Vec<Permutation>,
    table: Vec<u16>,
    words: usize,
}

type Bits = Vec<u64>;

impl Indexed {
    fn new(p: &PermGroup, cap: u64) -> Result<Self> {
        let mut elements = p.element_list(cap)?;
        elements.sort();
        let index: HashMap<&Permutation, u16> = elements.iter().enumerate().map(|(i, x)| (x, i as u16)).collect();
        let n = elements.len();
        let mut table = vec![0u16; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[&a.mul(b)];
            }
        }
        Ok(Indexed {
            words: n.div_ceil(64),
            elements,
            table,
        })
    }

    fn n(&self) -> usize {
        self.elements.len()
    }

    fn closure(&self, gens: &[usize]) -> Bits {
        let n = self.n();
        let mut bits = vec![0u64; self.words];
        // the identity sorts first
        bits[0] |= 1;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.table[x * n + g] as usize;
                if bits[y / 64] >> (y % 64) & 1 == 0 {
                    bits[y / 64] |= 1 << (y % 64);
                    members.push(y);
                }
            }
            i += 1;
        }
        bits
    }
}

fn has(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

/// Every subgroup of a group of order at most 256, each once, sorted by
/// order and then by element set.
pub fn subgroups_of_2group(p: &PermGroup) -> Result<Vec<PermGroup>> {
    p.check_cap(SUBGROUP_ENUM_CAP, "subgroup enumeration")?;
    let ix = Indexed::new(p, SUBGROUP_ENUM_CAP)?;
    let n = ix.n();
    let mut found: Vec<(Bits, Vec<usize>)> = vec![(ix.closure(&[]), Vec::new())];
    let mut seen: HashSet<Bits> = HashSet::from([found[0].0.clone()]);
    let mut i = 0;
    while i < found.len() {
        let (bits, gens) = found[i].clone();
        let mut covered = bits.clone();
        for x in 0..n {
            if has(&covered, x) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(x);
            let t = ix.closure(&g2);
            // the whole coset x<S> gives the same subgroup
            for s in (0..n).filter(|&s| has(&bits, s)) {
                let y = ix.table[x * n + s] as usize;
                covered[y / 64] |= 1 << (y % 64);
            }
            if seen.insert(t.clone()) {
                found.push((t, g2));
            }
        }
        i += 1;
    }
    let mut keyed: Vec<(usize, Vec<usize>, Vec<usize>)> = found
        .into_iter()
        .map(|(bits, gens)| {
            let members: Vec<usize> = (0..n).filter(|&k| has(&bits, k)).collect();
            (members.len(), members, gens)
        })
        .collect();
    keyed.sort();
    keyed
        .into_iter()
        .map(|(_, _, gens)| p.subgroup(gens.into_iter().map(|k| ix.elements[k].clone()).collect()))
        .collect()
}

/// A class of subgroups under conjugation.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Member with the lexicographically least sorted element list.
    pub representative: PermGroup,
    /// Indices into the input list.
    pub members: Vec<usize>,
    /// Order of the acting group.
    pub context_order: u64,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

fn element_key(h: &PermGroup) -> Result<Vec<Permutation>> {
    let mut e = h.element_list(SUBGROUP_ENUM_CAP.max(CLASSIFY_CAP))?;
    e.sort();
    Ok(e)
}

/// Partitions `subs` into orbits under conjugation by `A` (orbits of the
/// group equal orbits under its generators). Every conjugate must be in
/// the list.
pub fn subgroup_classes_under(subs: &[PermGroup], a: &PermGroup) -> Result<Vec<SubgroupClass>> {
    let keys: Vec<Vec<Permutation>> = subs.iter().map(element_key).collect::<Result<_>>()?;
    let index: HashMap<&Vec<Permutation>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..subs.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[start] = c;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for g in a.generators() {
                let mut conj: Vec<Permutation> = keys[i].iter().map(|x| x.conjugate_by(g)).collect();
                conj.sort();
                let j = *index
                    .get(&conj)
                    .ok_or_else(|| Error::InvalidArgument("subgroup list is not closed under conjugation".into()))?;
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort();
        classes.push(members);
    }
    let mut out: Vec<(usize, &Vec<Permutation>, SubgroupClass)> = classes
        .into_iter()
        .map(|members| {
            let best = *members.iter().min_by(|&&x, &&y| keys[x].cmp(&keys[y])).unwrap();
            (
                keys[best].len(),
                &keys[best],
                SubgroupClass {
                    representative: subs[best].clone(),
                    members,
                    context_order: a.order_u64(),
                },
            )
        })
        .collect();
    out.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    Ok(out.into_iter().map(|(_, _, c)| c).collect())
}

/// Number of subgroups of each order, a cheap lattice fingerprint.
pub fn subgroup_order_profile(subs: &[PermGroup]) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for s in subs {
        *out.entry(s.order_u64()).or_insert(0) += 1;
    }
    out
}
