use serde::Serialize;

use super::{theorem_a_report, AnalysisReport, ReportOptions};
use crate::error::Result;
use crate::families::fixture_3m10;
use crate::gf::Field;
use crate::grouptheory::{normalizer, sylow_2};
use crate::modrep::{decompose, is_endotrivial, is_isomorphic, norm_rank, one_dim_characters, projective_free_dim, GModule};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        Check {
            name: name.into(),
            pass: expected == observed,
            expected,
            observed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Reproduction {
    pub checks: Vec<Check>,
    pub report: AnalysisReport,
}

impl Reproduction {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the 3.M10 computation end to end over `GF(2^8)` and records each
/// intermediate value next to the value it must take.
pub fn reproduce_3m10() -> Result<Reproduction> {
    let g = fixture_3m10();
    let p = sylow_2(&g)?;
    let n = normalizer(&g, &p)?;
    let f = Field::gf2(8)?;
    let mut checks = vec![
        Check::new("|G|", 2160, g.order_u64()),
        Check::new("|P|", 16, p.order_u64()),
        Check::new("|N_G(P)|", 48, n.order_u64()),
    ];

    let kp = GModule::trivial(&p, &f).induce(&n)?;
    let d = decompose(&kp)?;
    let k = GModule::trivial(&n, &f);
    let trivial_count = d
        .summands
        .iter()
        .map(|s| is_isomorphic(&k, &s.module))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    checks.push(Check::new("Ind_P^N k summand dims", "[1, 1, 1]", format!("{:?}", d.dims())));
    checks.push(Check::new("trivial summands of Ind_P^N k", 1, trivial_count));

    let (inv, chars) = one_dim_characters(&n, &f)?;
    checks.push(Check::new("X(N_G(P))", "[3]", format!("{inv:?}")));
    let mut correspondents: Vec<GModule> = Vec::new();
    for c in &chars {
        let ind = c.module.induce(&g)?;
        let dec = decompose(&ind)?;
        let label = format!("λ = {:?}", c.exponents);
        if c.is_trivial() {
            checks.push(Check::new(
                &format!("{label}: summand dims"),
                "[1, 16, 28]",
                format!("{:?}", dec.dims()),
            ));
            continue;
        }
        checks.push(Check::new(&format!("{label}: summand dims"), "[12, 33]", format!("{:?}", dec.dims())));
        let flags = dec
            .summands
            .iter()
            .map(|s| is_endotrivial(&s.module, &p))
            .collect::<Result<Vec<bool>>>()?;
        checks.push(Check::new(&format!("{label}: endo-trivial flags"), "[false, true]", format!("{flags:?}")));
        if let Some(big) = dec.summands.iter().find(|s| s.dim() == 33) {
            let r = big.module.restrict(&p)?;
            checks.push(Check::new(
                &format!("{label}: rank of the norm on Res(M ⊗ M*)"),
                68,
                norm_rank(&r.tensor(&r.dual())?)?,
            ));
            correspondents.push(big.module.clone());
        }
    }
    if let [a, b] = correspondents.as_slice() {
        checks.push(Check::new("correspondents are mutually dual", true, is_isomorphic(&a.dual(), b)?));
        checks.push(Check::new("dual of a correspondent is endo-trivial", true, is_endotrivial(&a.dual(), &p)?));
        checks.push(Check::new("M ⊗ M is endo-trivial", true, is_endotrivial(&a.tensor(a)?, &p)?));
        checks.push(Check::new("M ⊗ M' is endo-trivial", true, is_endotrivial(&a.tensor(b)?, &p)?));
        let sq = a.restrict(&p)?.tensor(&a.restrict(&p)?)?;
        checks.push(Check::new("projective-free part of Res_P(M ⊗ M)", 1, projective_free_dim(&sq)?));
    } else {
        checks.push(Check::new("33-dimensional correspondents", 2, correspondents.len()));
    }

    let report = theorem_a_report(&g, &ReportOptions::default())?;
    checks.push(Check::new("X(G)", "[]", format!("{:?}", report.x_group_invariants)));
    checks.push(Check::new(
        "K_G° route",
        "[3]",
        format!("{:?}", report.craven_bound.clone().unwrap_or_default()),
    ));
    checks.push(Check::new(
        "Green route",
        "[3]",
        format!("{:?}", report.kgroup.as_ref().map(|k| k.group_structure.clone()).unwrap_or_default()),
    ));
    checks.push(Check::new(
        "conclusion",
        "K(G) ≅ ℤ/3ℤ, K(G)/X(G) ≅ ℤ/3ℤ, X(G) = 1, T(G) ≅ K(G) ⊕ ℤ/2ℤ ⊕ ℤ",
        report.summary(),
    ));
    Ok(Reproduction { checks, report })
}
