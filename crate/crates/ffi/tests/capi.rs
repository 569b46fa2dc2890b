use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use lashof_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lashof_last_error_message()) }.to_str().unwrap().to_string()
}

fn normalize(ctx: *const LashofContext, expr: &str) -> Result<String, (LashofStatus, String)> {
    let e = CString::new(expr).unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { lashof_normalize(ctx, e.as_ptr(), &mut out) };
    if s != LashofStatus::Ok {
        return Err((s, last_error()));
    }
    let r = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { lashof_string_free(out) };
    Ok(r)
}

#[test]
fn sphere_context_normalizes() {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { lashof_context_new_sphere(0, &mut ctx) }, LashofStatus::Ok);
    assert_eq!(normalize(ctx, "Q[3] x(1)").unwrap(), "x(1)^4");
    let (s, msg) = normalize(ctx, "Q[").unwrap_err();
    assert_eq!(s, LashofStatus::Syntax);
    assert!(msg.contains("syntax error"));
    assert_eq!(normalize(ctx, "[0]").unwrap(), "[0]");
    assert_eq!(last_error(), "");
    unsafe { lashof_context_free(ctx) };
}

#[test]
fn space_context_series() {
    let name = CString::new("BU").unwrap();
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { lashof_context_new_space(name.as_ptr(), &mut ctx) }, LashofStatus::Ok);
    let mut buf = [0u64; 7];
    assert_eq!(unsafe { lashof_poincare_series(ctx, 6, buf.as_mut_ptr(), buf.len()) }, LashofStatus::Ok);
    assert_eq!(buf, [1, 0, 1, 0, 3, 1, 7]);
    assert_eq!(
        unsafe { lashof_poincare_series(ctx, 9, buf.as_mut_ptr(), buf.len()) },
        LashofStatus::BufferTooSmall
    );
    assert_eq!(normalize(ctx, "Q[2] c(2)").unwrap(), normalize(ctx, "c(2)^2").unwrap());
    unsafe { lashof_context_free(ctx) };

    let bad = CString::new("not a presentation").unwrap();
    let s = unsafe { lashof_context_new_space(bad.as_ptr(), &mut ctx) };
    assert_eq!(s, LashofStatus::Syntax);
    assert!(!last_error().is_empty());
}

#[test]
fn predicates() {
    let mut n = 0u32;
    assert_eq!(unsafe { lashof_nu(1, &mut n) }, LashofStatus::Ok);
    assert_eq!(n, 4);
    assert_eq!(unsafe { lashof_nu(0, &mut n) }, LashofStatus::InvalidArgument);
    let mut q = 0u64;
    assert_eq!(unsafe { lashof_q_of_p(5, &mut q) }, LashofStatus::Ok);
    assert_eq!(q, 2);
    assert_ne!(unsafe { lashof_q_of_p(4, &mut q) }, LashofStatus::Ok);
    let mut b = true;
    assert_eq!(unsafe { lashof_x_class_nontrivial(15, 8, &mut b) }, LashofStatus::Ok);
    assert!(!b);
    assert_eq!(unsafe { lashof_x_class_nontrivial(14, 8, &mut b) }, LashofStatus::Ok);
    assert!(b);
    assert_eq!(unsafe { lashof_w_class_nontrivial(2, 4, 2, &mut b) }, LashofStatus::Ok);
    assert!(!b);
}

#[test]
fn null_handles() {
    unsafe { lashof_context_free(ptr::null_mut()) };
    unsafe { lashof_string_free(ptr::null_mut()) };
    let e = CString::new("[0]").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lashof_normalize(ptr::null(), e.as_ptr(), &mut out) }, LashofStatus::NullPointer);
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let src = "#include \"lashof.h\"\nint main(void) { LashofContext *c = 0; return lashof_context_new_sphere(0, &c) == LASHOF_STATUS_OK ? 0 : 1; }\n";
    let dir = std::env::temp_dir().join(format!("lashof-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (compiler, file) in [("cc", "t.c"), ("c++", "t.cpp")] {
        let path = dir.join(file);
        std::fs::write(&path, src).unwrap();
        let Ok(out) = Command::new(compiler).args(["-fsyntax-only", "-Wall", "-Werror", "-I", include]).arg(&path).output()
        else {
            eprintln!("{compiler} not found, skipping");
            continue;
        };
        assert!(out.status.success(), "{compiler}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let _ = std::fs::remove_dir_all(&dir);
}
