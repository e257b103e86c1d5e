use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use endotriv_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    et_string_free(s);
    out
}

fn grp_text(g: &endotriv::permgroup::PermGroup) -> CString {
    CString::new(endotriv::permgroup::format_grp(g)).unwrap()
}

#[test]
fn group_round_trip_and_order() {
    let text = grp_text(&endotriv::families::m11());
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(et_group_from_grp_text(text.as_ptr(), &mut g), EtStatus::Ok);
        assert_eq!(et_group_degree(g), 11);
        let mut s = ptr::null_mut();
        assert_eq!(et_group_order(g, &mut s), EtStatus::Ok);
        assert_eq!(take(s), "7920");
        et_group_free(g);
    }
}

#[test]
fn images_constructor() {
    // SD16 on 8 points: x -> x+1 and x -> 3x
    let mut images: Vec<u32> = (0..8).map(|x| (x + 1) % 8).collect();
    images.extend((0..8).map(|x| (3 * x) % 8));
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(et_group_from_images(8, images.as_ptr(), 2, &mut g), EtStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(et_analyze_json(g, 8, false, 0, &mut s), EtStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["schema"], "1");
        assert_eq!(v["sylow_type"]["tag"], "semidihedral");
        assert_eq!(v["k_group_invariants"], serde_json::json!([]));
        et_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(et_group_from_grp_text(ptr::null(), &mut g), EtStatus::NullPointer);
        assert!(!et_last_error().is_null());
        let bad = CString::new("degree 3\n1 1 2\n").unwrap();
        assert_eq!(et_group_from_grp_text(bad.as_ptr(), &mut g), EtStatus::Parse);
        let msg = CStr::from_ptr(et_last_error()).to_str().unwrap();
        assert!(!msg.is_empty());
        let images: [u32; 3] = [0, 0, 1];
        assert_eq!(et_group_from_images(3, images.as_ptr(), 1, &mut g), EtStatus::InvalidArgument);

        // dihedral Sylow is rejected
        let d = grp_text(&endotriv::families::dihedral_group(4).unwrap());
        assert_eq!(et_group_from_grp_text(d.as_ptr(), &mut g), EtStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(et_analyze_json(g, 8, false, 0, &mut s), EtStatus::NotSemidihedral);
        assert!(s.is_null());
        et_group_free(g);

        assert_eq!(et_group_degree(ptr::null()), 0);
        et_group_free(ptr::null_mut());
        et_string_free(ptr::null_mut());
    }
}

#[test]
fn kgc_and_reproduction() {
    let text = grp_text(&endotriv::families::fixture_3m10());
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(et_group_from_grp_text(text.as_ptr(), &mut g), EtStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(et_kgc_json(g, &mut s), EtStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["equals_normalizer"], false);
        assert_eq!(v["ab_quotient_invariants"], serde_json::json!([3]));
        et_group_free(g);

        let mut ok = false;
        assert_eq!(et_reproduce_3m10_json(&mut ok, ptr::null_mut()), EtStatus::Ok);
        assert!(ok);
    }
}

#[test]
fn header_declares_the_api_and_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/endotriv.h")).unwrap();
    for f in [
        "et_last_error",
        "et_version",
        "et_string_free",
        "et_group_from_grp_text",
        "et_group_from_images",
        "et_group_free",
        "et_group_degree",
        "et_group_order",
        "et_analyze_json",
        "et_kgc_json",
        "et_reproduce_3m10_json",
        "typedef struct EtGroup EtGroup",
        "ET_STATUS_OK = 0",
    ] {
        assert!(header.contains(f), "header lacks {f}");
    }
    // syntax check with the system C compiler when there is one
    let tmp = std::env::temp_dir().join("endotriv_header_check.c");
    std::fs::write(&tmp, "#include \"endotriv.h\"\nint main(void) { EtGroup *g = 0; et_group_free(g); return ET_STATUS_OK; }\n")
        .unwrap();
    match Command::new("cc").arg("-fsyntax-only").arg("-I").arg(dir.join("include")).arg(&tmp).status() {
        Ok(st) => assert!(st.success(), "header does not compile as C"),
        Err(_) => eprintln!("no C compiler, syntax check skipped"),
    }
}
