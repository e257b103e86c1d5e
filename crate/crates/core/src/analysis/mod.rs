//! The classification pipeline: `K_G°` and the abelianization bound, `X(G)`,
//! `K(G)` through Green correspondents, and the assembled report.

mod reproduce;

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::grouptheory::{
    abelian_invariants, abelian_invariants_odd, classify_2group, intersection, join, normal_closure, normalizer,
    normalizers, o_lower_2, o_lower_odd, o_upper_pprime, quotient_perm_rep, subgroup_classes_under,
    subgroups_of_2group, sylow_2, TwoGroupType,
};
use crate::modrep::{decompose, is_endotrivial, one_dim_characters, INDUCTION_CAP};
use crate::permgroup::PermGroup;

pub use reproduce::{reproduce_3m10, Check, Reproduction};

pub const SCHEMA_VERSION: &str = "1";

/// Contribution of one `N_G(P)`-class of subgroups `1 < Q ≤ P`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassContribution {
    pub subgroup_order: u64,
    pub class_size: usize,
    pub normalizer_order: u64,
    pub o2prime_upper_order: u64,
    /// `|N_G(P) ∩ O^{2'}(N_G(Q))|`.
    pub contribution_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KGCircleResult {
    #[serde(skip)]
    pub kgc: PermGroup,
    pub kgc_order: u64,
    pub normalizer_order: u64,
    pub equals_normalizer: bool,
    pub normal_in_normalizer: bool,
    /// Invariant factors of `(N_G(P)/K_G°)^ab`.
    pub ab_quotient_invariants: Vec<u64>,
    pub class_log: Vec<ClassContribution>,
}

/// `K_G°`: the normal closure in `N_G(P)` of the subgroups
/// `N_G(P) ∩ O^{2'}(N_G(Q))` over the `N_G(P)`-classes of `1 < Q ≤ P`.
pub fn k_g_circle(g: &PermGroup, p: &PermGroup) -> Result<KGCircleResult> {
    let n = normalizer(g, p)?;
    k_g_circle_with_normalizer(g, p, &n)
}

pub fn k_g_circle_with_normalizer(g: &PermGroup, p: &PermGroup, n: &PermGroup) -> Result<KGCircleResult> {
    let subs = subgroups_of_2group(p)?;
    let classes: Vec<_> = subgroup_classes_under(&subs, n)?
        .into_iter()
        .filter(|c| !c.representative.is_trivial())
        .collect();
    let reps: Vec<PermGroup> = classes.iter().map(|c| c.representative.clone()).collect();
    let norms = normalizers(g, &reps)?;
    let mut gens = Vec::new();
    let mut class_log = Vec::with_capacity(classes.len());
    for (c, nq) in classes.iter().zip(&norms) {
        let upper = o_upper_pprime(nq, 2).map_err(|e| {
            Error::Validation(format!("class of subgroups of order {}: {e}", c.representative.order_u64()))
        })?;
        let part = intersection(n, &upper)?;
        class_log.push(ClassContribution {
            subgroup_order: c.representative.order_u64(),
            class_size: c.size(),
            normalizer_order: nq.order_u64(),
            o2prime_upper_order: upper.order_u64(),
            contribution_order: part.order_u64(),
        });
        gens.extend(part.generators().iter().cloned());
    }
    let generated = n.subgroup(gens)?;
    let kgc = normal_closure(n, &generated)?;
    let equals_normalizer = kgc.order() == n.order();
    let ab_quotient_invariants = if equals_normalizer {
        Vec::new()
    } else {
        let q = quotient_perm_rep(n, &kgc)?;
        abelian_invariants(&q.quotient)?.invariants
    };
    Ok(KGCircleResult {
        kgc_order: kgc.order_u64(),
        normalizer_order: n.order_u64(),
        equals_normalizer,
        normal_in_normalizer: kgc.is_normal_in(n),
        ab_quotient_invariants,
        class_log,
        kgc,
    })
}

/// The group `K(G)` read off `(N_G(P)/K_G°)^ab`; trivial when `K_G° = N_G(P)`.
pub fn craven_bound(r: &KGCircleResult) -> Vec<u64> {
    if r.equals_normalizer {
        Vec::new()
    } else {
        r.ab_quotient_invariants.clone()
    }
}

/// `X(G) ≅ (G/[G,G])_{2'}`.
pub fn x_group(g: &PermGroup) -> Result<Vec<u64>> {
    Ok(abelian_invariants_odd(g)?.invariants)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterOutcome {
    /// Exponents on the invariant basis of `X(N_G(P))`.
    pub exponents: Vec<u64>,
    pub summand_dims: Vec<usize>,
    pub endotrivial_flags: Vec<bool>,
    /// Exactly one summand of the induced module is endo-trivial.
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KGroupResult {
    pub field_exp: u32,
    /// Invariant factors of `X(N_G(P))`.
    pub character_group: Vec<u64>,
    pub characters: Vec<CharacterOutcome>,
    /// Invariant factors of the subgroup of flagged characters.
    pub group_structure: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn element_order(exps: &[u64], invariants: &[u64]) -> u64 {
    exps.iter()
        .zip(invariants)
        .map(|(&k, &d)| d / gcd(d, k))
        .fold(1, |acc, o| acc / gcd(acc, o) * o)
}

fn primes_of(mut n: u64) -> Vec<u64> {
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

/// Invariant factors of a finite abelian group from its element orders:
/// `#{x : x^(p^j) = 1} = p^(c_j)` determines the `p`-primary part.
pub fn invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let total = orders.len() as u64;
    let mut columns: Vec<u64> = Vec::new();
    for p in primes_of(total) {
        let mut counts = vec![0u32]; // c_0 = 0
        let mut pj = 1u64;
        loop {
            pj *= p;
            let c = orders.iter().filter(|&&o| pj.is_multiple_of(o)).count() as u64;
            let mut log = 0;
            let mut x = c;
            while x > 1 {
                x /= p;
                log += 1;
            }
            counts.push(log);
            if c == total || pj > total {
                break;
            }
        }
        // factors of order >= p^j: counts[j] - counts[j-1]
        let mut factors: Vec<u64> = Vec::new();
        for j in 1..counts.len() {
            let at_least = counts[j] - counts[j - 1];
            let at_least_next = if j + 1 < counts.len() { counts[j + 1] - counts[j] } else { 0 };
            for _ in 0..(at_least - at_least_next) {
                factors.push(p.pow(j as u32));
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        for (i, f) in factors.into_iter().enumerate() {
            if i < columns.len() {
                columns[i] *= f;
            } else {
                columns.push(f);
            }
        }
    }
    columns.sort_unstable();
    columns
}

/// `K(G)` through Green correspondence: for each `λ ∈ X(N_G(P))`, decompose
/// `Ind_N^G λ` and flag `λ` when exactly one summand is endo-trivial.
pub fn k_group_via_green(g: &PermGroup, p: &PermGroup, field_exp: u32) -> Result<KGroupResult> {
    let n = normalizer(g, p)?;
    k_group_via_green_with_normalizer(g, p, &n, field_exp)
}

pub fn k_group_via_green_with_normalizer(
    g: &PermGroup,
    p: &PermGroup,
    n: &PermGroup,
    field_exp: u32,
) -> Result<KGroupResult> {
    let index: BigUint = g.order() / n.order();
    if index > BigUint::from(INDUCTION_CAP) {
        return Err(Error::scale("Green correspondence induction index", index, INDUCTION_CAP as u64));
    }
    let field = Field::gf2(field_exp)?;
    let (character_group, chars) = one_dim_characters(n, &field)?;
    let mut characters = Vec::with_capacity(chars.len());
    for c in &chars {
        let ind = c.module.induce(g)?;
        let dec = decompose(&ind)?;
        let flags = dec
            .summands
            .iter()
            .map(|s| is_endotrivial(&s.module, p))
            .collect::<Result<Vec<bool>>>()?;
        characters.push(CharacterOutcome {
            exponents: c.exponents.clone(),
            summand_dims: dec.dims(),
            flagged: flags.iter().filter(|&&b| b).count() == 1,
            endotrivial_flags: flags,
        });
    }
    let flagged: Vec<&CharacterOutcome> = characters.iter().filter(|c| c.flagged).collect();
    if !characters.first().is_some_and(|c| c.flagged) {
        return Err(Error::Validation("the trivial character is not flagged".into()));
    }
    // closure under products (sums of exponents) and duals
    let key = |e: &[u64]| e.to_vec();
    let set: std::collections::HashSet<Vec<u64>> = flagged.iter().map(|c| key(&c.exponents)).collect();
    for a in &flagged {
        let neg: Vec<u64> = a
            .exponents
            .iter()
            .zip(&character_group)
            .map(|(&k, &d)| (d - k) % d)
            .collect();
        if !set.contains(&neg) {
            return Err(Error::Validation("flagged characters not closed under duals".into()));
        }
        for b in &flagged {
            let sum: Vec<u64> = a
                .exponents
                .iter()
                .zip(&b.exponents)
                .zip(&character_group)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect();
            if !set.contains(&sum) {
                return Err(Error::Validation("flagged characters not closed under tensor products".into()));
            }
        }
    }
    let orders: Vec<u64> = flagged
        .iter()
        .map(|c| element_order(&c.exponents, &character_group))
        .collect();
    Ok(KGroupResult {
        field_exp,
        character_group,
        characters,
        group_structure: invariants_from_orders(&orders),
    })
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub field_exp: u32,
    pub skip_green: bool,
    /// Largest `|G : N_G(P)|` for the Green route.
    pub green_cap: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            field_exp: 8,
            skip_green: false,
            green_cap: INDUCTION_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConclusionLine {
    pub text: String,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub group_order: String,
    pub degree: usize,
    pub sylow_type: TwoGroupType,
    pub sylow_order: u64,
    pub o2prime_order: String,
    pub o2_order: u64,
    pub normalizer_order: u64,
    pub x_group_invariants: Vec<u64>,
    pub kgc: Option<KGCircleResult>,
    pub craven_bound: Option<Vec<u64>>,
    pub kgroup: Option<KGroupResult>,
    pub k_group_invariants: Vec<u64>,
    pub shortcuts_applied: Vec<String>,
    /// Best-effort name of `G/O_{2'}(G)`, from its order and Sylow type.
    pub family_label: String,
    pub notes: Vec<String>,
    pub conclusion: Vec<ConclusionLine>,
}

impl AnalysisReport {
    pub fn summary(&self) -> String {
        self.conclusion
            .iter()
            .map(|l| l.text.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "|G| = {} on {} points", self.group_order, self.degree)?;
        writeln!(f, "Sylow 2-subgroup: {} (order {})", self.sylow_type, self.sylow_order)?;
        writeln!(f, "G/O_2'(G): {}", self.family_label)?;
        writeln!(f, "|O_2'(G)| = {}, |O_2(G)| = {}", self.o2prime_order, self.o2_order)?;
        writeln!(f, "|N_G(P)| = {}", self.normalizer_order)?;
        writeln!(f, "X(G) = {}", format_invariants(&self.x_group_invariants))?;
        if let Some(k) = &self.kgc {
            writeln!(
                f,
                "|K_G°| = {} (equals N_G(P): {}), (N_G(P)/K_G°)^ab = {}",
                k.kgc_order,
                k.equals_normalizer,
                format_invariants(&k.ab_quotient_invariants)
            )?;
        }
        if let Some(k) = &self.kgroup {
            for c in &k.characters {
                writeln!(
                    f,
                    "λ = {:?}: summands {:?}, endo-trivial {:?}",
                    c.exponents, c.summand_dims, c.endotrivial_flags
                )?;
            }
        }
        for s in &self.shortcuts_applied {
            writeln!(f, "shortcut: {s}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        for l in &self.conclusion {
            writeln!(f, "{}    [{}]", l.text, l.provenance)?;
        }
        Ok(())
    }
}

/// `ℤ/3ℤ ⊕ ℤ/3ℤ` style rendering; `1` for the trivial group.
pub fn format_invariants(inv: &[u64]) -> String {
    if inv.is_empty() {
        "1".into()
    } else {
        inv.iter().map(|d| format!("ℤ/{d}ℤ")).collect::<Vec<_>>().join(" ⊕ ")
    }
}

fn family_label(order: &BigUint, sylow: &TwoGroupType, perfect: bool) -> String {
    let n: u64 = match u64::try_from(order) {
        Ok(n) => n,
        Err(_) => return "unknown (heuristic)".into(),
    };
    if n.is_power_of_two() {
        return format!("{sylow} (2-group)");
    }
    let mut guesses = Vec::new();
    if n == 720 && !perfect {
        guesses.push("PGL*_2(9) ≅ M10".to_string());
    }
    if n == 7920 && perfect {
        guesses.push("M11".to_string());
    }
    for q in (3u64..64).step_by(2) {
        let d_plus = gcd(3, q - 1);
        let d_minus = gcd(3, q + 1);
        let sl3 = q.pow(3) * (q * q - 1) * (q.pow(3) - 1);
        let su3 = q.pow(3) * (q * q - 1) * (q.pow(3) + 1);
        if perfect && n == sl3 / d_plus {
            guesses.push(format!("PSL_3({q})"));
        }
        if perfect && n == su3 / d_minus {
            guesses.push(format!("PSU_3({q})"));
        }
        let gl2 = q * (q - 1) * (q * q - 1);
        if !perfect && n == gl2 {
            guesses.push(format!("GL_2({q})-like"));
        }
        let pgl_star = q * q * (q.pow(4) - 1);
        if !perfect && n == pgl_star && n != 720 {
            guesses.push(format!("PGL*_2({q}^2)-like"));
        }
    }
    if guesses.is_empty() {
        format!("order {n} (heuristic, no match)")
    } else {
        format!("{} (heuristic)", guesses.join(" or "))
    }
}

fn k_over_x(k: &[u64], x: &[u64]) -> Vec<u64> {
    let ko: u64 = k.iter().product();
    let xo: u64 = x.iter().product();
    if xo == 1 {
        return k.to_vec();
    }
    if ko == xo {
        return Vec::new();
    }
    // the quotient has order at most 3 in this setting; a prime order is cyclic
    let r = ko / xo;
    vec![r]
}

/// The full pipeline for a group with a semi-dihedral Sylow 2-subgroup.
pub fn theorem_a_report(g: &PermGroup, opts: &ReportOptions) -> Result<AnalysisReport> {
    let p = sylow_2(g)?;
    let sylow_type = classify_2group(&p)?;
    if !sylow_type.is_semidihedral() {
        return Err(Error::NotSemidihedral(format!(
            "the Sylow 2-subgroup has order {} and type {sylow_type}",
            p.order_u64()
        )));
    }
    let o2prime = o_lower_odd(g)?;
    let o2 = o_lower_2(g)?;
    let x = x_group(g)?;
    let n = normalizer(g, &p)?;
    let mut notes = Vec::new();
    let mut shortcuts = Vec::new();
    let mut routes: Vec<(&'static str, Vec<u64>)> = Vec::new();

    if o2.order_u64() > 1 {
        shortcuts.push(format!("O_2(G) has order {} > 1, so K(G) = X(G)", o2.order_u64()));
        routes.push(("shortcut: O_2(G) > 1 gives K(G) = X(G)", x.clone()));
    }
    if n.order() == p.order() {
        shortcuts.push("N_G(P) = P, so K(G) is trivial".into());
        routes.push(("shortcut: self-normalising Sylow 2-subgroup", Vec::new()));
    }

    let (kgc, craven) = match k_g_circle_with_normalizer(g, &p, &n) {
        Ok(r) => {
            let b = craven_bound(&r);
            routes.push(("K_G° route: abelianization of N_G(P)/K_G°", b.clone()));
            (Some(r), Some(b))
        }
        Err(e @ Error::Scale { .. }) => {
            notes.push(format!("K_G° route skipped: {e}"));
            (None, None)
        }
        Err(e) => return Err(e),
    };

    let index: BigUint = g.order() / n.order();
    let kgroup = if opts.skip_green {
        notes.push("Green route skipped on request".into());
        None
    } else if index > BigUint::from(opts.green_cap) {
        notes.push(format!(
            "Green route skipped: |G : N_G(P)| = {index} exceeds the induction cap {}",
            opts.green_cap
        ));
        None
    } else {
        match k_group_via_green_with_normalizer(g, &p, &n, opts.field_exp) {
            Ok(r) => {
                routes.push(("Green route: endo-trivial Green correspondents", r.group_structure.clone()));
                Some(r)
            }
            Err(e @ (Error::Scale { .. } | Error::FieldTooSmall { .. })) => {
                notes.push(format!("Green route skipped: {e}"));
                None
            }
            Err(e) => return Err(e),
        }
    };

    let Some((_, k)) = routes.first().cloned() else {
        return Err(Error::Undecided("no route to K(G) ran within the caps".into()));
    };
    for (name, v) in &routes {
        if *v != k {
            return Err(Error::RouteDisagreement(format!(
                "{name} gives {} but {} gives {}",
                format_invariants(v),
                routes[0].0,
                format_invariants(&k)
            )));
        }
    }
    let provenance = routes.iter().map(|(n, _)| *n).collect::<Vec<_>>().join("; ");
    let kx = k_over_x(&k, &x);
    let mut conclusion = Vec::new();
    let xline = ConclusionLine {
        text: if x.is_empty() {
            "X(G) = 1".into()
        } else {
            format!("X(G) ≅ {}", format_invariants(&x))
        },
        provenance: "odd part of G/[G,G]".into(),
    };
    if k.is_empty() {
        conclusion.push(ConclusionLine {
            text: "T(G) ≅ ℤ/2ℤ ⊕ ℤ".into(),
            provenance: "K(G) = 1; the ℤ/2ℤ ⊕ ℤ part is the symbolic contribution of the semi-dihedral Sylow subgroup"
                .into(),
        });
        conclusion.push(ConclusionLine {
            text: "K(G) = X(G) = 1".into(),
            provenance,
        });
    } else if kx.is_empty() {
        conclusion.push(ConclusionLine {
            text: "T(G) ≅ X(G) ⊕ ℤ/2ℤ ⊕ ℤ".into(),
            provenance: "K(G) = X(G); the ℤ/2ℤ ⊕ ℤ part is symbolic".into(),
        });
        conclusion.push(ConclusionLine {
            text: format!("K(G) = X(G) ≅ {}", format_invariants(&k)),
            provenance,
        });
        conclusion.push(xline);
    } else {
        conclusion.push(ConclusionLine {
            text: format!("K(G) ≅ {}", format_invariants(&k)),
            provenance,
        });
        conclusion.push(ConclusionLine {
            text: format!("K(G)/X(G) ≅ {}", format_invariants(&kx)),
            provenance: "orders of K(G) and X(G)".into(),
        });
        conclusion.push(xline);
        conclusion.push(ConclusionLine {
            text: "T(G) ≅ K(G) ⊕ ℤ/2ℤ ⊕ ℤ".into(),
            provenance: "the ℤ/2ℤ ⊕ ℤ part is symbolic".into(),
        });
    }

    let quotient_order = g.order() / o2prime.order();
    // G/O_{2'}(G) is perfect iff G = G'·O_{2'}(G)
    let perfect = join(&crate::grouptheory::derived_subgroup(g), &o2prime)?.order() == g.order();
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        group_order: g.order().to_string(),
        degree: g.degree(),
        sylow_order: p.order_u64(),
        o2prime_order: o2prime.order().to_string(),
        o2_order: o2.order_u64(),
        normalizer_order: n.order_u64(),
        x_group_invariants: x,
        kgc,
        craven_bound: craven,
        kgroup,
        k_group_invariants: k,
        shortcuts_applied: shortcuts,
        family_label: family_label(&quotient_order, &sylow_type, perfect),
        sylow_type,
        notes,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fixture_3m10, m11, pgl_star, semidihedral_group};
    use crate::grouptheory::test_groups::{cyclic, direct_product, sd16};

    #[test]
    fn invariants_from_element_orders() {
        // C2 x C4 x C3
        let mut orders = Vec::new();
        for a in 0..2u64 {
            for b in 0..4u64 {
                for c in 0..3u64 {
                    orders.push(element_order(&[a, b, c], &[2, 4, 3]));
                }
            }
        }
        assert_eq!(invariants_from_orders(&orders), vec![2, 12]);
        assert_eq!(invariants_from_orders(&[1]), Vec::<u64>::new());
        assert_eq!(invariants_from_orders(&[1, 3, 3]), vec![3]);
    }

    #[test]
    fn two_group_alone() {
        let g = semidihedral_group(4).unwrap();
        let p = sylow_2(&g).unwrap();
        let r = k_g_circle(&g, &p).unwrap();
        assert!(r.equals_normalizer);
        let rep = theorem_a_report(&g, &ReportOptions::default()).unwrap();
        assert!(rep.summary().contains("T(G) ≅ ℤ/2ℤ ⊕ ℤ"));
        assert!(rep.summary().contains("K(G) = X(G) = 1"));
    }

    #[test]
    fn x_groups() {
        assert!(x_group(&m11()).unwrap().is_empty());
        assert_eq!(x_group(&direct_product(&cyclic(3), &sd16())).unwrap(), vec![3]);
    }

    #[test]
    fn non_semidihedral_rejected() {
        let g = crate::families::dihedral_group(4).unwrap();
        assert!(matches!(
            theorem_a_report(&g, &ReportOptions::default()),
            Err(Error::NotSemidihedral(_))
        ));
    }

    #[test]
    fn c3_times_sd16_has_k_equal_x() {
        let g = direct_product(&cyclic(3), &sd16());
        let rep = theorem_a_report(&g, &ReportOptions::default()).unwrap();
        assert_eq!(rep.k_group_invariants, vec![3]);
        assert_eq!(rep.x_group_invariants, vec![3]);
        assert!(rep.summary().contains("K(G) = X(G) ≅ ℤ/3ℤ"));
    }

    #[test]
    fn pgl_star_nine_report() {
        let g = pgl_star(3).unwrap();
        let rep = theorem_a_report(&g, &ReportOptions::default()).unwrap();
        assert!(rep.summary().contains("K(G) = X(G) = 1"));
        assert!(!rep.shortcuts_applied.is_empty());
    }

    #[test]
    fn three_m10_report() {
        let g = fixture_3m10();
        let rep = theorem_a_report(&g, &ReportOptions::default()).unwrap();
        assert_eq!(rep.k_group_invariants, vec![3]);
        let s = rep.summary();
        assert!(s.contains("K(G) ≅ ℤ/3ℤ"), "{s}");
        assert!(s.contains("K(G)/X(G) ≅ ℤ/3ℤ"), "{s}");
        assert!(s.contains("T(G) ≅ K(G) ⊕ ℤ/2ℤ ⊕ ℤ"), "{s}");
        let again = theorem_a_report(&g, &ReportOptions::default()).unwrap();
        assert_eq!(rep.to_json(), again.to_json());
    }
}
