//! C interface to the lashof engine.
//!
//! Every function returns a `LashofStatus`; results go through out-pointers.
//! On failure `lashof_last_error_message` describes the error until the next
//! call on the same thread. Strings returned by the library are released with
//! `lashof_string_free`, contexts with `lashof_context_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lashof::atlas::AtlasSpace;
use lashof::engine::{Context, Engine};
use lashof::error::Error;
use lashof::expr::{evaluate, render};
use lashof::pi0::Pi0Spec;
use lashof::predicates::{nu, q_of_p, w_class, x_class};
use lashof::space::SpacePresentation;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LashofStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    UnsupportedPrime = 4,
    InvalidArgument = 5,
    Context = 6,
    Inconsistency = 7,
    BufferTooSmall = 8,
    Panic = 9,
    Other = 10,
}

/// Opaque handle to an engine.
pub struct LashofContext {
    engine: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LashofStatus {
    match e {
        Error::Syntax { .. } | Error::MalformedSequence(_) | Error::Presentation { .. } => LashofStatus::Syntax,
        Error::UnsupportedPrime(_) | Error::NotPrime(_) => LashofStatus::UnsupportedPrime,
        Error::InvalidArgument(_) | Error::UnknownGenerator(_) => LashofStatus::InvalidArgument,
        Error::Context(_) | Error::MissingImage(_) | Error::MissingSteenrod { .. } | Error::MissingCoproduct(_) => {
            LashofStatus::Context
        }
        Error::Inconsistency(_) => LashofStatus::Inconsistency,
        _ => LashofStatus::Other,
    }
}

struct Fail(LashofStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LashofStatus {
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err(Fail(LashofStatus::Panic, "internal panic".into())));
    match r {
        Ok(()) => {
            set_error("");
            LashofStatus::Ok
        }
        Err(Fail(s, m)) => {
            set_error(&m);
            s
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LashofStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(LashofStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(LashofStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn boxed(engine: Engine) -> *mut LashofContext {
    Box::into_raw(Box::new(LashofContext { engine }))
}

/// Context for `H_*QS^{-k}` from the built-in stems table.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lashof_context_new_sphere(k: u32, out: *mut *mut LashofContext) -> LashofStatus {
    guard(|| {
        let e = Engine::new(Context::Pi0(Pi0Spec::builtin(k)?));
        write(out, boxed(e))
    })
}

/// Context for `H_*QX`, `X` named from the atlas (for example "BU") or
/// given as the text of a presentation.
///
/// # Safety
/// `space` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lashof_context_new_space(space: *const c_char, out: *mut *mut LashofContext) -> LashofStatus {
    guard(|| {
        let s = text(space)?;
        let sp = match AtlasSpace::from_name(s.trim()) {
            Some(a) => a.presentation(),
            None => SpacePresentation::parse(s)?.into(),
        };
        write(out, boxed(Engine::new(Context::Space(sp))))
    })
}

/// # Safety
/// `ctx` must come from a `lashof_context_new_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lashof_context_free(ctx: *mut LashofContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Normal form of an expression; the caller frees `*out` with `lashof_string_free`.
///
/// # Safety
/// `ctx` must be a live context, `expr` a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lashof_normalize(
    ctx: *const LashofContext,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> LashofStatus {
    guard(|| {
        let ctx = ctx.as_ref().ok_or_else(|| Fail(LashofStatus::NullPointer, "null context".into()))?;
        let e = &ctx.engine;
        let s = render(e, &evaluate(e, text(expr)?)?)?;
        let c = CString::new(s).map_err(|_| Fail(LashofStatus::Other, "interior NUL".into()))?;
        write(out, c.into_raw())
    })
}

/// Fills `out[0..=up_to]` with basis counts; `len` must be at least `up_to + 1`.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn lashof_poincare_series(
    ctx: *const LashofContext,
    up_to: u32,
    out: *mut u64,
    len: usize,
) -> LashofStatus {
    guard(|| {
        let ctx = ctx.as_ref().ok_or_else(|| Fail(LashofStatus::NullPointer, "null context".into()))?;
        if out.is_null() {
            return Err(Fail(LashofStatus::NullPointer, "null out-pointer".into()));
        }
        if len < up_to as usize + 1 {
            return Err(Fail(LashofStatus::BufferTooSmall, format!("need {} entries", up_to + 1)));
        }
        let s = ctx.engine.poincare_series(up_to);
        std::slice::from_raw_parts_mut(out, s.len()).copy_from_slice(&s);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn lashof_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The 2-adic valuation of `3^{4j} - 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lashof_nu(j: u64, out: *mut u32) -> LashofStatus {
    guard(|| {
        if j == 0 {
            return Err(Fail(LashofStatus::InvalidArgument, "j must be positive".into()));
        }
        write(out, nu(j))
    })
}

/// The least prime `q` generating the units mod `p^2`, for an odd prime `p`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lashof_q_of_p(p: u64, out: *mut u64) -> LashofStatus {
    guard(|| write(out, q_of_p(p)?))
}

/// Whether `x_i^{-k}` is nontrivial in `H_*Q_0S^{-k}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lashof_x_class_nontrivial(i: u32, k: u32, out: *mut bool) -> LashofStatus {
    guard(|| write(out, x_class(i, k)?.nontrivial))
}

/// Whether `w^{-k}` indexed by `i` is nontrivial at the prime `p`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lashof_w_class_nontrivial(i: u32, k: u32, p: u64, out: *mut bool) -> LashofStatus {
    guard(|| write(out, w_class(i, k, p)?.nontrivial))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lashof_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn null_out_pointer_is_reported() {
        let s = unsafe { lashof_nu(1, ptr::null_mut()) };
        assert_eq!(s, LashofStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(lashof_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "null out-pointer");
    }
}
