use std::ffi::{c_char, CStr, CString};
use std::ptr;

use f2growth_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    f2_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = f2_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

#[test]
fn generators_to_recurrence() {
    unsafe {
        let mut h = ptr::null_mut();
        let gens = cstr("aa,bb,Aba,Bab");
        assert_eq!(
            f2_subgroup_from_generators(gens.as_ptr(), &mut h),
            F2Status::Ok
        );
        assert!(f2_last_error().is_null());

        let mut index = 0;
        assert_eq!(f2_subgroup_index(h, &mut index), F2Status::Ok);
        assert_eq!(index, 3);
        let mut odd = false;
        assert_eq!(f2_subgroup_has_odd_element(h, &mut odd), F2Status::Ok);
        assert!(odd);

        let mut r = ptr::null_mut();
        let target = cstr("a");
        assert_eq!(
            f2_recurrence_compute(h, target.as_ptr(), 0, &mut r),
            F2Status::Ok
        );
        let (mut terminated, mut last, mut count) = (false, 0, 0);
        f2_recurrence_terminated(r, &mut terminated);
        f2_recurrence_last_step(r, &mut last);
        f2_recurrence_entry_count(r, &mut count);
        assert!(terminated);
        assert_eq!((last, count), (3, 5));

        let mut entries = Vec::new();
        for i in 0..count {
            let (mut s, mut v, mut a) = (0, 0, 0);
            assert_eq!(
                f2_recurrence_entry(r, i, &mut s, &mut v, &mut a),
                F2Status::Ok
            );
            entries.push((s, v, a));
        }
        // vertices 0, 1, 2 are H, aH, bH
        assert_eq!(
            entries,
            [(1, 0, 1), (1, 1, 1), (2, 0, 1), (2, 2, 1), (3, 2, 3)]
        );
        let (mut s, mut v, mut a) = (0, 0, 0);
        assert_eq!(
            f2_recurrence_entry(r, 5, &mut s, &mut v, &mut a),
            F2Status::OutOfRange
        );
        assert!(last_error().contains("entry 5"));

        let mut json = ptr::null_mut();
        assert_eq!(f2_recurrence_to_json(r, &mut json), F2Status::Ok);
        assert!(take_string(json).contains("\"target\": \"aH\""));

        let mut count_str = ptr::null_mut();
        assert_eq!(
            f2_count(h, target.as_ptr(), 3, &mut count_str),
            F2Status::Ok
        );
        assert_eq!(take_string(count_str), "10");

        f2_recurrence_free(r);
        f2_subgroup_free(h);
    }
}

#[test]
fn action_and_spec_inputs() {
    unsafe {
        let sa = [1usize, 0, 3, 2, 4];
        let sb = [2usize, 4, 0, 1, 3];
        let mut h = ptr::null_mut();
        assert_eq!(
            f2_subgroup_from_action(sa.as_ptr(), sb.as_ptr(), 5, 0, &mut h),
            F2Status::Ok
        );

        let mut json = ptr::null_mut();
        let fmt = cstr("json");
        assert_eq!(f2_subgroup_export(h, fmt.as_ptr(), &mut json), F2Status::Ok);
        let exported = cstr(&take_string(json));
        let mut h2 = ptr::null_mut();
        assert_eq!(
            f2_subgroup_from_spec_json(exported.as_ptr(), &mut h2),
            F2Status::Ok
        );

        let mut dot = ptr::null_mut();
        let fmt = cstr("dot");
        assert_eq!(f2_subgroup_export(h2, fmt.as_ptr(), &mut dot), F2Status::Ok);
        assert_eq!(take_string(dot).matches("->").count(), 20);

        let fmt = cstr("svg");
        let mut out = ptr::null_mut();
        assert_eq!(
            f2_subgroup_export(h2, fmt.as_ptr(), &mut out),
            F2Status::InvalidInput
        );
        assert!(out.is_null());

        f2_subgroup_free(h);
        f2_subgroup_free(h2);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        let gens = cstr("a");
        assert_eq!(
            f2_subgroup_from_generators(gens.as_ptr(), &mut h),
            F2Status::InfiniteIndex
        );
        assert_eq!(last_error(), "infinite index (vertex 0 missing b-edge)");
        assert!(h.is_null());

        let sa = [1usize, 0, 2];
        let sb = [1usize, 0, 2];
        assert_eq!(
            f2_subgroup_from_action(sa.as_ptr(), sb.as_ptr(), 3, 0, &mut h),
            F2Status::NotTransitive
        );
        assert_eq!(
            f2_subgroup_from_action(sa.as_ptr(), sb.as_ptr(), 3, 7, &mut h),
            F2Status::OutOfRange
        );

        assert_eq!(
            f2_subgroup_from_generators(ptr::null(), &mut h),
            F2Status::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            f2_subgroup_from_generators(bad.as_ptr() as *const c_char, &mut h),
            F2Status::InvalidUtf8
        );
        let mut index = 0;
        assert_eq!(
            f2_subgroup_index(ptr::null(), &mut index),
            F2Status::NullPointer
        );

        let gens = cstr("aa,bb,ab");
        assert_eq!(
            f2_subgroup_from_generators(gens.as_ptr(), &mut h),
            F2Status::Ok
        );
        let target = cstr("x");
        let mut r = ptr::null_mut();
        assert_eq!(
            f2_recurrence_compute(h, target.as_ptr(), 0, &mut r),
            F2Status::InvalidInput
        );
        assert!(last_error().contains("invalid character"));
        assert_eq!(f2_subgroup_index(h, ptr::null_mut()), F2Status::NullPointer);
        f2_subgroup_free(h);

        f2_subgroup_free(ptr::null_mut());
        f2_recurrence_free(ptr::null_mut());
        f2_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated_and_compiles() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/f2growth.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build script");
    for name in [
        "typedef struct F2Subgroup F2Subgroup;",
        "F2_STATUS_INFINITE_INDEX",
        "f2_subgroup_from_generators",
        "f2_recurrence_entry",
        "f2_last_error",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Some(cc) = which_cc() else { return };
    let dir = tempfile_dir();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"f2growth.h\"\nint main(void) { F2Subgroup *h = 0; size_t k = 0;\n\
         return f2_subgroup_index(h, &k) == F2_STATUS_OK; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| {
        std::process::Command::new(c)
            .arg("--version")
            .output()
            .is_ok()
    })
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("f2growth-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
