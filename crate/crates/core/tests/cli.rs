use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_endotriv"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("endotriv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_then_analyze_is_deterministic() {
    let grp = scratch("m10.grp");
    let st = bin().args(["construct", "pgl-star", "3", "-o"]).arg(&grp).status().unwrap();
    assert!(st.success());
    let g = endotriv::permgroup::read_grp(&grp).unwrap();
    assert_eq!(g.order_u64(), 720);

    let (j1, j2) = (scratch("a.json"), scratch("b.json"));
    for j in [&j1, &j2] {
        let out = bin().arg("analyze").arg(&grp).arg("--json").arg(j).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("K(G) = X(G) = 1"), "{text}");
    }
    let (a, b) = (std::fs::read(&j1).unwrap(), std::fs::read(&j2).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["normalizer_order"], 16);
}

#[test]
fn kgc_on_the_triple_cover() {
    let grp = scratch("3m10.grp");
    assert!(bin().args(["construct", "3m10", "-o"]).arg(&grp).status().unwrap().success());
    let out = bin().arg("kgc").arg(&grp).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(N_G(P)/K_G°)^ab = ℤ/3ℤ"), "{text}");
}

#[test]
fn dihedral_input_is_an_error() {
    let grp = scratch("d16.grp");
    assert!(bin().args(["construct", "dihedral", "4", "-o"]).arg(&grp).status().unwrap().success());
    let out = bin().arg("analyze").arg(&grp).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not semidihedral"));
}

#[test]
fn reproduction_exits_zero() {
    let out = bin().arg("reproduce-3m10").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.contains("Green route: [3]"));
}
