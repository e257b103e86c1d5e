//! Permutation groups backed by a stabilizer chain.
//!
//! Every strong generator records how it was produced from earlier strong
//! generators and transversal elements, so any member of the group can be
//! rewritten as a word in the original generators without a second
//! membership machinery.

pub(crate) mod io;
mod perm;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

pub use io::{read_grp, write_grp, parse_grp, format_grp};
pub use perm::{GroupTarget, Letter, Permutation, Word};

use crate::error::{Error, Result};

/// Default cap on element enumeration.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
enum GenDef {
    Original(usize),
    Product(Vec<Term>),
}

#[derive(Clone, Copy, Debug)]
enum Term {
    Strong(usize, bool),
    Trans(usize, usize, bool),
}

#[derive(Clone, Debug)]
struct StrongGen {
    perm: Permutation,
    inv: Permutation,
    def: GenDef,
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    trans: Vec<Permutation>,
    trans_inv: Vec<Permutation>,
    // (parent orbit index, strong generator); trans[i] = trans[parent] * strong[gen]
    tree: Vec<(u32, u32)>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            trans: vec![Permutation::identity(degree)],
            trans_inv: vec![Permutation::identity(degree)],
            tree: vec![(NONE, NONE)],
        }
    }

    #[inline]
    fn index_of(&self, point: u32) -> Option<usize> {
        let p = self.pos[point as usize];
        (p != NONE).then_some(p as usize)
    }

    /// Closes the orbit after `new_gen` joined `gens`.
    fn extend(&mut self, strong: &[StrongGen], new_gen: usize) {
        let mut frontier: Vec<usize> = (0..self.orbit.len()).collect();
        let mut only_new = true;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &idx in &frontier {
                let gens: Vec<usize> = if only_new { vec![new_gen] } else { self.gens.clone() };
                for s in gens {
                    let img = strong[s].perm.apply(self.orbit[idx]);
                    if self.pos[img as usize] == NONE {
                        let t = self.trans[idx].mul(&strong[s].perm);
                        let ti = strong[s].inv.mul(&self.trans_inv[idx]);
                        self.pos[img as usize] = self.orbit.len() as u32;
                        self.orbit.push(img);
                        self.trans.push(t);
                        self.trans_inv.push(ti);
                        self.tree.push((idx as u32, s as u32));
                        next.push(self.orbit.len() - 1);
                    }
                }
            }
            if only_new {
                // points reached for the first time must see every generator
                only_new = false;
            }
            frontier = next;
        }
    }
}

/// A permutation group given by generators, with a deterministic stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    gen_inv: Vec<Permutation>,
    strong: Vec<StrongGen>,
    levels: Vec<Level>,
}

/// Which side cosets are taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gen_inv = gens.iter().map(|g| g.inverse()).collect();
        let mut group = PermGroup {
            degree,
            gens,
            gen_inv,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        group.schreier_sims();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators")
    }

    /// Subgroup generated by `gens` (which must have this group's degree).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Self> {
        Self::new(self.degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Lengths of the fundamental orbits along the chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// The order as a `u64`; every group this crate enumerates fits.
    pub fn order_u64(&self) -> u64 {
        u64::try_from(self.order()).expect("group order exceeds u64")
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(())
    }

    // ---------------------------------------------------------------------
    // Schreier-Sims

    fn schreier_sims(&mut self) {
        for (i, g) in self.gens.iter().enumerate() {
            if g.is_identity() {
                continue;
            }
            self.strong.push(StrongGen {
                perm: g.clone(),
                inv: g.inverse(),
                def: GenDef::Original(i),
            });
        }
        for s in 0..self.strong.len() {
            let fixes_base = self
                .levels
                .iter()
                .all(|l| self.strong[s].perm.apply(l.base) == l.base);
            if fixes_base {
                let b = self.strong[s].perm.smallest_moved_point().expect("non-identity");
                self.levels.push(Level::new(b, self.degree));
            }
        }
        for s in 0..self.strong.len() {
            self.attach(s, 0);
        }
        if self.levels.is_empty() {
            return;
        }

        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match self.check_level(lvl) {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Adds strong generator `s` to every level from `from` on whose base points it fixes.
    fn attach(&mut self, s: usize, from: usize) {
        for l in 0..self.levels.len() {
            let fixes_prefix = self.levels[..l]
                .iter()
                .all(|lv| self.strong[s].perm.apply(lv.base) == lv.base);
            if !fixes_prefix {
                break;
            }
            if l >= from && !self.levels[l].gens.contains(&s) {
                self.levels[l].gens.push(s);
                let (levels, strong) = (&mut self.levels, &self.strong);
                levels[l].extend(strong, s);
            }
        }
    }

    /// Tests every Schreier generator of level `lvl`; on the first one that does
    /// not sift, adds its residue and returns the level to resume from.
    fn check_level(&mut self, lvl: usize) -> Option<usize> {
        let mut idx = 0;
        while idx < self.levels[lvl].orbit.len() {
            let ngens = self.levels[lvl].gens.len();
            for gi in 0..ngens {
                let s = self.levels[lvl].gens[gi];
                let level = &self.levels[lvl];
                let img = self.strong[s].perm.apply(level.orbit[idx]);
                let img_idx = level.index_of(img).expect("orbit closed");
                if level.tree[img_idx] == (idx as u32, s as u32) {
                    continue;
                }
                let h = level.trans[idx]
                    .mul(&self.strong[s].perm)
                    .mul(&level.trans_inv[img_idx]);
                let (residue, stop, path) = self.sift_from(h, lvl + 1);
                if residue.is_identity() {
                    continue;
                }
                let mut terms = vec![
                    Term::Trans(lvl, idx, false),
                    Term::Strong(s, false),
                    Term::Trans(lvl, img_idx, true),
                ];
                for (l, t) in path {
                    terms.push(Term::Trans(l, t, true));
                }
                let new_s = self.strong.len();
                self.strong.push(StrongGen {
                    inv: residue.inverse(),
                    perm: residue,
                    def: GenDef::Product(terms),
                });
                if stop == self.levels.len() {
                    let b = self.strong[new_s]
                        .perm
                        .smallest_moved_point()
                        .expect("non-identity residue");
                    self.levels.push(Level::new(b, self.degree));
                }
                self.attach(new_s, lvl + 1);
                return Some(stop);
            }
            idx += 1;
        }
        None
    }

    /// Sifts `g` through levels `from..`; returns residue, stopping level, and
    /// the transversal indices divided out.
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize, Vec<(usize, usize)>) {
        let mut path = Vec::new();
        let mut tmp = Permutation::identity(self.degree);
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let img = g.apply(level.base);
            match level.index_of(img) {
                None => return (g, l, path),
                Some(t) => {
                    g.mul_into(&level.trans_inv[t], &mut tmp);
                    std::mem::swap(&mut g, &mut tmp);
                    path.push((l, t));
                }
            }
        }
        (g, self.levels.len(), path)
    }

    // ---------------------------------------------------------------------
    // membership and factorization

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.contains_unchecked(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        let (res, stop, _) = self.sift_from(g.clone(), 0);
        stop == self.levels.len() && res.is_identity()
    }

    /// Transversal indices `(level, orbit index)` with `g = u_k ... u_1`.
    fn sift_path(&self, g: &Permutation) -> Result<Vec<(usize, usize)>> {
        self.check_degree(g)?;
        let (res, stop, path) = self.sift_from(g.clone(), 0);
        if stop != self.levels.len() || !res.is_identity() {
            return Err(Error::NotAMember);
        }
        Ok(path)
    }

    /// Writes `g` as a word in the original generators.
    pub fn factor(&self, g: &Permutation) -> Result<Word> {
        let gens: Vec<Word> = (0..self.gens.len())
            .map(|i| Word(vec![Letter::new(i, false)]))
            .collect();
        let mut ev = Evaluator::new(self, gens, Word::empty());
        ev.element(g)
    }

    /// Evaluates the factorization of `g` with generator `i` mapped to `images[i]`.
    pub fn evaluate_in<T: GroupTarget>(&self, g: &Permutation, images: Vec<T>, identity: T) -> Result<T> {
        let mut ev = Evaluator::new(self, images, identity);
        ev.element(g)
    }

    /// A reusable evaluator: memoizes strong generator and transversal images.
    pub fn evaluator<T: GroupTarget>(&self, images: Vec<T>, identity: T) -> Evaluator<'_, T> {
        Evaluator::new(self, images, identity)
    }

    pub fn evaluate_word<T: GroupTarget>(&self, w: &Word, images: &[T], identity: &T) -> T {
        let inv: Vec<T> = images.iter().map(|x| x.inv()).collect();
        w.evaluate(images, &inv, identity)
    }

    pub fn evaluate_word_perm(&self, w: &Word) -> Permutation {
        w.evaluate(&self.gens, &self.gen_inv, &self.identity())
    }

    // ---------------------------------------------------------------------
    // elements

    /// Images of the base points; determines an element uniquely.
    pub fn base_image(&self, g: &Permutation) -> Vec<u32> {
        self.levels.iter().map(|l| g.apply(l.base)).collect()
    }

    /// Rebuilds the element with the given base images, if it exists.
    pub fn element_from_base_image(&self, images: &[u32]) -> Option<Permutation> {
        if images.len() != self.levels.len() {
            return None;
        }
        let mut targets = images.to_vec();
        let mut chosen = Vec::with_capacity(self.levels.len());
        for l in 0..self.levels.len() {
            let t = self.levels[l].index_of(targets[l])?;
            chosen.push(t);
            let inv = &self.levels[l].trans_inv[t];
            for x in targets.iter_mut().skip(l + 1) {
                *x = inv.apply(*x);
            }
        }
        let mut g = self.identity();
        for l in (0..self.levels.len()).rev() {
            g = g.mul(&self.levels[l].trans[chosen[l]]);
        }
        Some(g)
    }

    pub fn check_cap(&self, cap: u64, what: &str) -> Result<()> {
        let ord = self.order();
        if ord > BigUint::from(cap) {
            return Err(Error::scale(what, ord, cap));
        }
        Ok(())
    }

    /// Every element exactly once, in a deterministic order.
    pub fn elements(&self, cap: u64) -> Result<ElementIter<'_>> {
        self.check_cap(cap, "element enumeration")?;
        Ok(ElementIter::new(self))
    }

    /// Collects all elements; convenience for small groups.
    pub fn element_list(&self, cap: u64) -> Result<Vec<Permutation>> {
        Ok(self.elements(cap)?.map(|(g, _)| g).collect())
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for l in (0..self.levels.len()).rev() {
            let t = rng.gen_range(0..self.levels[l].orbit.len());
            g = g.mul(&self.levels[l].trans[t]);
        }
        g
    }

    // ---------------------------------------------------------------------
    // subgroups and cosets

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains_unchecked(g))
    }

    pub fn equals(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Normality of `self` in `ambient` (generators conjugated by generators).
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.gens.iter().all(|a| {
                self.gens
                    .iter()
                    .all(|h| self.contains_unchecked(&h.conjugate_by(a)))
            })
    }

    /// The lexicographically least element of the right coset `self * x`,
    /// least with respect to images of this group's base points.
    pub fn canonical_right_coset_rep(&self, x: &Permutation) -> Permutation {
        let mut x = x.clone();
        for level in &self.levels {
            let mut best = 0usize;
            let mut best_img = u32::MAX;
            for (i, &p) in level.orbit.iter().enumerate() {
                let img = x.apply(p);
                if img < best_img {
                    best_img = img;
                    best = i;
                }
            }
            if best != 0 {
                x = level.trans[best].mul(&x);
            }
        }
        x
    }

    /// Coset representatives of `sub` in `self`; the first is the identity.
    ///
    /// Right cosets `H t` are enumerated by right multiplication, left cosets
    /// `t H` by left multiplication, each from the trivial coset.
    pub fn coset_transversal(&self, sub: &PermGroup, side: Side) -> Result<Vec<Permutation>> {
        Ok(self.coset_table(sub, side)?.reps)
    }

    pub fn coset_table(&self, sub: &PermGroup, side: Side) -> Result<CosetTable> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("coset transversal".into()));
        }
        let index = self.order() / sub.order();
        let index = usize::try_from(index.clone())
            .ok()
            .filter(|&i| i <= DEFAULT_ELEMENT_CAP as usize)
            .ok_or_else(|| Error::scale("coset transversal", &index, DEFAULT_ELEMENT_CAP))?;
        let key = |t: &Permutation| match side {
            Side::Right => sub.canonical_right_coset_rep(t),
            Side::Left => sub.canonical_right_coset_rep(&t.inverse()),
        };
        let mut reps = vec![self.identity()];
        let mut parent = vec![(usize::MAX, usize::MAX)];
        let mut lookup = HashMap::new();
        lookup.insert(key(&reps[0]), 0usize);
        let mut i = 0;
        while i < reps.len() {
            for (gi, g) in self.gens.iter().enumerate() {
                let t = match side {
                    Side::Right => reps[i].mul(g),
                    Side::Left => g.mul(&reps[i]),
                };
                let k = key(&t);
                if let std::collections::hash_map::Entry::Vacant(e) = lookup.entry(k) {
                    e.insert(reps.len());
                    reps.push(t);
                    parent.push((i, gi));
                }
            }
            i += 1;
        }
        debug_assert_eq!(reps.len(), index);
        Ok(CosetTable {
            side,
            reps,
            parent,
            lookup,
            sub: sub.clone(),
        })
    }
}

/// Coset representatives with lookup of the coset containing an element.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub side: Side,
    pub reps: Vec<Permutation>,
    /// `(parent, generator)`: right cosets `reps[i] = reps[parent] * gen`,
    /// left cosets `reps[i] = gen * reps[parent]`.
    pub parent: Vec<(usize, usize)>,
    lookup: HashMap<Permutation, usize>,
    sub: PermGroup,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Permutation) -> usize {
        let key = match self.side {
            Side::Right => self.sub.canonical_right_coset_rep(x),
            Side::Left => self.sub.canonical_right_coset_rep(&x.inverse()),
        };
        self.lookup[&key]
    }
}

/// Depth-first iterator over all elements, yielding `(g, g^-1)`.
pub struct ElementIter<'a> {
    group: &'a PermGroup,
    idx: Vec<usize>,
    // prefix[l] = u_{k-1} ... u_l ; inv_prefix[l] = u_l^-1 ... u_{k-1}^-1
    prefix: Vec<Permutation>,
    inv_prefix: Vec<Permutation>,
    done: bool,
}

impl<'a> ElementIter<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let k = group.levels.len();
        let id = group.identity();
        let mut it = ElementIter {
            group,
            idx: vec![0; k],
            prefix: vec![id.clone(); k + 1],
            inv_prefix: vec![id; k + 1],
            done: false,
        };
        if k > 0 {
            it.refresh(k - 1);
        }
        it
    }

    fn refresh(&mut self, from: usize) {
        for l in (0..=from).rev() {
            let level = &self.group.levels[l];
            let (lo, hi) = self.prefix.split_at_mut(l + 1);
            hi[0].mul_into(&level.trans[self.idx[l]], &mut lo[l]);
            let (lo, hi) = self.inv_prefix.split_at_mut(l + 1);
            level.trans_inv[self.idx[l]].mul_into(&hi[0], &mut lo[l]);
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = (Permutation, Permutation);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let k = self.group.levels.len();
        let out = (self.prefix[0].clone(), self.inv_prefix[0].clone());
        // odometer, level 0 fastest
        let mut l = 0;
        loop {
            if l == k {
                self.done = true;
                break;
            }
            self.idx[l] += 1;
            if self.idx[l] < self.group.levels[l].orbit.len() {
                self.refresh(l);
                break;
            }
            self.idx[l] = 0;
            l += 1;
        }
        Some(out)
    }
}

/// Evaluates group elements in another group through their chain factorization.
pub struct Evaluator<'a, T: GroupTarget> {
    group: &'a PermGroup,
    gens: Vec<T>,
    gen_inv: Vec<T>,
    identity: T,
    strong: Vec<Option<(T, T)>>,
    trans: HashMap<(usize, usize), (T, T)>,
}

impl<'a, T: GroupTarget> Evaluator<'a, T> {
    fn new(group: &'a PermGroup, gens: Vec<T>, identity: T) -> Self {
        assert_eq!(gens.len(), group.gens.len(), "one image per generator");
        let gen_inv: Vec<T> = gens.iter().map(|g| g.inv()).collect();
        Evaluator {
            group,
            gens,
            gen_inv,
            identity,
            strong: vec![None; group.strong.len()],
            trans: HashMap::new(),
        }
    }

    /// Image of the group element `g`.
    pub fn element(&mut self, g: &Permutation) -> Result<T> {
        let path = self.group.sift_path(g)?;
        let mut acc = self.identity.clone();
        for &(l, t) in path.iter().rev() {
            let u = self.transversal(l, t).0;
            acc = acc.op(&u);
        }
        Ok(acc)
    }

    fn strong_gen(&mut self, s: usize) -> (T, T) {
        if let Some(v) = &self.strong[s] {
            return v.clone();
        }
        let val = match &self.group.strong[s].def {
            GenDef::Original(i) => (self.gens[*i].clone(), self.gen_inv[*i].clone()),
            GenDef::Product(terms) => {
                let terms = terms.clone();
                let mut acc = self.identity.clone();
                for t in terms {
                    let x = match t {
                        Term::Strong(j, inv) => {
                            let (a, b) = self.strong_gen(j);
                            if inv { b } else { a }
                        }
                        Term::Trans(l, i, inv) => {
                            let (a, b) = self.transversal(l, i);
                            if inv { b } else { a }
                        }
                    };
                    acc = acc.op(&x);
                }
                let inv = acc.inv();
                (acc, inv)
            }
        };
        self.strong[s] = Some(val.clone());
        val
    }

    fn transversal(&mut self, l: usize, i: usize) -> (T, T) {
        if let Some(v) = self.trans.get(&(l, i)) {
            return v.clone();
        }
        // walk up to a memoized ancestor, then come back down
        let level = &self.group.levels[l];
        let mut path = Vec::new();
        let mut cur = i;
        let mut start = (self.identity.clone(), self.identity.clone());
        loop {
            if let Some(v) = self.trans.get(&(l, cur)) {
                start = v.clone();
                break;
            }
            let (parent, gen) = level.tree[cur];
            if parent == NONE {
                break;
            }
            path.push((cur, gen as usize));
            cur = parent as usize;
        }
        let (mut acc, mut acc_inv) = start;
        for &(node, gen) in path.iter().rev() {
            let (s, s_inv) = self.strong_gen(gen);
            acc = acc.op(&s);
            acc_inv = s_inv.op(&acc_inv);
            self.trans.insert((l, node), (acc.clone(), acc_inv.clone()));
        }
        (acc, acc_inv)
    }
}

impl GroupTarget for Word {
    fn op(&self, other: &Self) -> Self {
        self.concat(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles_1based(n, cycles).unwrap()
    }

    /// Test-only oracle: closure under right multiplication by generators.
    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    fn sd16() -> PermGroup {
        let r = Permutation::from_images((0..8).map(|x| (x + 1) % 8).collect()).unwrap();
        let s = Permutation::from_images((0..8).map(|x| (3 * x) % 8).collect()).unwrap();
        PermGroup::new(8, vec![r, s]).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::new(5, vec![]).unwrap();
        assert_eq!(g.order(), BigUint::from(1u32));
        assert!(g.contains(&Permutation::identity(5)).unwrap());
        assert_eq!(g.factor(&Permutation::identity(5)).unwrap(), Word::empty());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = PermGroup::new(5, vec![Permutation::identity(4)]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn sd16_order_and_membership_match_closure() {
        let g = sd16();
        let all = closure(8, g.generators());
        assert_eq!(all.len(), 16);
        assert_eq!(g.order_u64(), 16);
        let three_cycle = cyc(8, &[&[1, 2, 3]]);
        assert!(!g.contains(&three_cycle).unwrap());
        for x in &all {
            assert!(g.contains(x).unwrap());
        }
    }

    #[test]
    fn factor_r_squared() {
        let g = sd16();
        let r = &g.generators()[0];
        let r2 = r.mul(r);
        let w = g.factor(&r2).unwrap();
        assert_eq!(g.evaluate_word_perm(&w), r2);
    }

    #[test]
    fn factor_of_non_member_is_error() {
        let g = sd16();
        let err = g.factor(&cyc(8, &[&[1, 2, 3]])).unwrap_err();
        assert!(matches!(err, Error::NotAMember));
        let err = g.factor(&Permutation::identity(9)).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn m11_order() {
        let a = cyc(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]);
        let b = cyc(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]);
        let g = PermGroup::new(11, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(g.order_u64(), 7920);
        assert_eq!(closure(11, &[a, b]).len(), 7920);
    }

    #[test]
    fn random_words_factor_back() {
        let a = cyc(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]);
        let b = cyc(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]);
        let g = PermGroup::new(11, vec![a, b]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let len = rng.gen_range(0..12);
            let w = Word(
                (0..len)
                    .map(|_| Letter::new(rng.gen_range(0..2), rng.gen_bool(0.5)))
                    .collect(),
            );
            let x = g.evaluate_word_perm(&w);
            let f = g.factor(&x).unwrap();
            assert_eq!(g.evaluate_word_perm(&f), x);
        }
    }

    #[test]
    fn elements_enumerate_once() {
        let g = sd16();
        let els: Vec<_> = g.elements(100).unwrap().collect();
        assert_eq!(els.len(), 16);
        let set: HashSet<_> = els.iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(set, closure(8, g.generators()));
        for (x, xi) in &els {
            assert!(x.mul(xi).is_identity());
        }
        assert_eq!(PermGroup::trivial(3).element_list(1).unwrap().len(), 1);
    }

    #[test]
    fn element_cap_is_scale_error() {
        let a = cyc(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]);
        let b = cyc(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]);
        let g = PermGroup::new(11, vec![a, b]).unwrap();
        assert!(matches!(g.elements(1000), Err(Error::Scale { .. })));
    }

    #[test]
    fn base_image_round_trip() {
        let g = sd16();
        for (x, _) in g.elements(100).unwrap() {
            assert_eq!(g.element_from_base_image(&g.base_image(&x)).unwrap(), x);
        }
    }

    #[test]
    fn transversals_partition() {
        let g = sd16();
        let r = g.generators()[0].clone();
        let h = g.subgroup(vec![r]).unwrap();
        for side in [Side::Left, Side::Right] {
            let t = g.coset_transversal(&h, side).unwrap();
            assert_eq!(t.len(), 2);
            assert!(t[0].is_identity());
            for (x, _) in g.elements(100).unwrap() {
                let hits = t
                    .iter()
                    .filter(|ti| match side {
                        Side::Right => h.contains_unchecked(&x.mul(&ti.inverse())),
                        Side::Left => h.contains_unchecked(&ti.inverse().mul(&x)),
                    })
                    .count();
                assert_eq!(hits, 1);
            }
        }
        assert_eq!(g.coset_transversal(&g, Side::Right).unwrap().len(), 1);
    }

    #[test]
    fn transversal_requires_subgroup() {
        let g = sd16();
        let other = PermGroup::new(8, vec![cyc(8, &[&[1, 2, 3]])]).unwrap();
        assert!(matches!(
            g.coset_transversal(&other, Side::Left),
            Err(Error::NotSubgroup(_))
        ));
    }
}
