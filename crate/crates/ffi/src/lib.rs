//! C ABI for the simulator: ordinal arithmetic and Goedel pairing over
//! literal strings, opaque program handles, and JSON-record runs.
//!
//! Conventions: functions return an [`IttmStatus`] code; results come back
//! through out-pointers. Strings returned through out-pointers are
//! NUL-terminated, UTF-8, allocated by this library, and must be released
//! with `ittm_string_free`. Program handles must be released with
//! `ittm_program_free`. The generated header lives in `include/ittm.h`.

use ittm_core::engine::EngineOptions;
use ittm_core::experiments::{self, HarnessError, InputSpec};
use ittm_core::machine::{Program, StateConvention};
use ittm_core::ordinal::{godel_pair, godel_unpair, Ordinal};
use libc::{c_char, size_t};
use std::ffi::{CStr, CString};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IttmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Validation = 3,
    Internal = 4,
}

/// An assembled program behind an opaque handle.
pub struct IttmProgram {
    inner: Program,
    label: String,
}

fn to_c_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, IttmStatus> {
    if ptr.is_null() {
        return Err(IttmStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| IttmStatus::InvalidUtf8)
}

fn write_out(out: *mut *mut c_char, value: String) -> IttmStatus {
    if out.is_null() {
        return IttmStatus::NullPointer;
    }
    let c = to_c_string(value);
    if c.is_null() {
        return IttmStatus::Internal;
    }
    unsafe { *out = c };
    IttmStatus::Ok
}

fn status_of(err: &HarnessError) -> IttmStatus {
    match err {
        HarnessError::Validation(_) => IttmStatus::Validation,
        HarnessError::Internal(_) => IttmStatus::Internal,
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned through one of this
/// library's out-parameters, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ittm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an ordinal literal and return its canonical form.
///
/// # Safety
/// `literal` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to receive the result.
#[no_mangle]
pub unsafe extern "C" fn ittm_ordinal_normalize(
    literal: *const c_char,
    out: *mut *mut c_char,
) -> IttmStatus {
    let text = match read_str(literal) {
        Ok(s) => s,
        Err(e) => return e,
    };
    match text.parse::<Ordinal>() {
        Ok(o) => write_out(out, o.to_string()),
        Err(_) => IttmStatus::Validation,
    }
}

/// Compare two ordinal literals: -1, 0 or 1 through `out`.
///
/// # Safety
/// All pointers must be valid as in `ittm_ordinal_normalize`.
#[no_mangle]
pub unsafe extern "C" fn ittm_ordinal_compare(
    a: *const c_char,
    b: *const c_char,
    out: *mut i32,
) -> IttmStatus {
    if out.is_null() {
        return IttmStatus::NullPointer;
    }
    let (a, b) = match (read_str(a), read_str(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let (a, b) = match (a.parse::<Ordinal>(), b.parse::<Ordinal>()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return IttmStatus::Validation,
    };
    *out = match a.cmp(&b) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    };
    IttmStatus::Ok
}

/// Ordinal sum of two literals.
///
/// # Safety
/// Pointer contracts as in `ittm_ordinal_normalize`.
#[no_mangle]
pub unsafe extern "C" fn ittm_ordinal_add(
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> IttmStatus {
    binary_op(a, b, out, |x, y| x.add(y))
}

/// Ordinal product of two literals.
///
/// # Safety
/// Pointer contracts as in `ittm_ordinal_normalize`.
#[no_mangle]
pub unsafe extern "C" fn ittm_ordinal_mul(
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> IttmStatus {
    binary_op(a, b, out, |x, y| x.mul(y))
}

/// Rank of the pair (a, b) in the Goedel order.
///
/// # Safety
/// Pointer contracts as in `ittm_ordinal_normalize`.
#[no_mangle]
pub unsafe extern "C" fn ittm_godel_pair(
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> IttmStatus {
    binary_op(a, b, out, |x, y| godel_pair(x, y))
}

unsafe fn binary_op(
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
    f: impl Fn(&Ordinal, &Ordinal) -> Ordinal,
) -> IttmStatus {
    let (a, b) = match (read_str(a), read_str(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let (a, b) = match (a.parse::<Ordinal>(), b.parse::<Ordinal>()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return IttmStatus::Validation,
    };
    write_out(out, f(&a, &b).to_string())
}

/// Invert the Goedel pairing: both coordinates through out-pointers.
///
/// # Safety
/// Pointer contracts as in `ittm_ordinal_normalize`.
#[no_mangle]
pub unsafe extern "C" fn ittm_godel_unpair(
    rank: *const c_char,
    out_left: *mut *mut c_char,
    out_right: *mut *mut c_char,
) -> IttmStatus {
    let text = match read_str(rank) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let r = match text.parse::<Ordinal>() {
        Ok(r) => r,
        Err(_) => return IttmStatus::Validation,
    };
    let (l, rgt) = godel_unpair(&r);
    let status = write_out(out_left, l.to_string());
    if status != IttmStatus::Ok {
        return status;
    }
    let status = write_out(out_right, rgt.to_string());
    if status != IttmStatus::Ok {
        unsafe {
            ittm_string_free(*out_left);
            *out_left = std::ptr::null_mut();
        }
    }
    status
}

/// Assemble program source text into an opaque handle.
///
/// # Safety
/// `source` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ittm_program_assemble(
    source: *const c_char,
    out: *mut *mut IttmProgram,
) -> IttmStatus {
    if out.is_null() {
        return IttmStatus::NullPointer;
    }
    let text = match read_str(source) {
        Ok(s) => s,
        Err(e) => return e,
    };
    match ittm_core::asm::assemble(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(IttmProgram {
                inner,
                label: "<assembled>".into(),
            }));
            IttmStatus::Ok
        }
        Err(_) => IttmStatus::Validation,
    }
}

/// Build a catalog program, e.g. name "move_right" with args [3].
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `args` must point to
/// `args_len` values (or be null when `args_len` is 0); `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ittm_program_from_catalog(
    name: *const c_char,
    args: *const i64,
    args_len: size_t,
    out: *mut *mut IttmProgram,
) -> IttmStatus {
    if out.is_null() || (args.is_null() && args_len > 0) {
        return IttmStatus::NullPointer;
    }
    let name = match read_str(name) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let args = if args_len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(args, args_len)
    };
    match ittm_core::asm::catalog(name, args) {
        Ok(cat) => match cat.program.assemble() {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(IttmProgram {
                    inner,
                    label: format!("catalog:{name}"),
                }));
                IttmStatus::Ok
            }
            Err(_) => IttmStatus::Internal,
        },
        Err(_) => IttmStatus::Validation,
    }
}

/// Release a program handle.
///
/// # Safety
/// `prog` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ittm_program_free(prog: *mut IttmProgram) {
    if !prog.is_null() {
        drop(Box::from_raw(prog));
    }
}

/// The canonical transition-table serialization of a program.
///
/// # Safety
/// `prog` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ittm_program_table(
    prog: *const IttmProgram,
    out: *mut *mut c_char,
) -> IttmStatus {
    if prog.is_null() {
        return IttmStatus::NullPointer;
    }
    let table = ittm_core::asm::format_table(&(*prog).inner);
    write_out(out, table)
}

/// Run a program and return the outcome record as JSON.
///
/// `input_spec` follows the CLI grammar (`empty`, `ones:...`,
/// `canonical:<ordinal>`); `param` may be null; `convention` is
/// "distinguished" or "liminf".
///
/// # Safety
/// `prog` must be a live handle; string arguments must be valid
/// NUL-terminated strings (or null where documented); `out_json` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ittm_run(
    prog: *const IttmProgram,
    alpha: *const c_char,
    input_spec: *const c_char,
    param: *const c_char,
    budget_steps: u64,
    budget_jumps: u64,
    convention: *const c_char,
    out_json: *mut *mut c_char,
) -> IttmStatus {
    if prog.is_null() {
        return IttmStatus::NullPointer;
    }
    let alpha: Ordinal = match read_str(alpha).map(str::parse) {
        Ok(Ok(a)) => a,
        Ok(Err(_)) => return IttmStatus::Validation,
        Err(e) => return e,
    };
    let input = match read_str(input_spec).map(InputSpec::parse) {
        Ok(Ok(i)) => i,
        Ok(Err(_)) => return IttmStatus::Validation,
        Err(e) => return e,
    };
    let param: Option<Ordinal> = if param.is_null() {
        None
    } else {
        match read_str(param).map(str::parse) {
            Ok(Ok(p)) => Some(p),
            _ => return IttmStatus::Validation,
        }
    };
    let convention: StateConvention = match read_str(convention).map(str::parse) {
        Ok(Ok(c)) => c,
        Ok(Err(_)) => return IttmStatus::Validation,
        Err(e) => return e,
    };
    let options = EngineOptions {
        budget_steps,
        budget_jumps,
        convention,
        ..EngineOptions::default()
    };
    let handle = &*prog;
    let realized = match input.realize(&alpha) {
        Ok(t) => t,
        Err(e) => return status_of(&e),
    };
    let spec = ittm_core::engine::RunSpec {
        program: handle.inner.clone(),
        alpha: alpha.clone(),
        input: realized,
        param,
        options: options.clone(),
    };
    match ittm_core::engine::run(&spec) {
        Ok((outcome, _trace)) => {
            let record =
                experiments::outcome_record(&handle.label, &alpha, &outcome, &options);
            match serde_json::to_string(&record) {
                Ok(json) => write_out(out_json, json),
                Err(_) => IttmStatus::Internal,
            }
        }
        Err(ittm_core::engine::EngineError::Precondition(_)) => IttmStatus::Validation,
        Err(_) => IttmStatus::Internal,
    }
}

/// Validate an alpha-code given as JSON; the verdict record comes back as
/// JSON.
///
/// # Safety
/// `code_json` must be a valid NUL-terminated string; `out_json` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ittm_validate_code(
    code_json: *const c_char,
    out_json: *mut *mut c_char,
) -> IttmStatus {
    let text = match read_str(code_json) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let code: ittm_core::codes::AlphaCode = match serde_json::from_str(text) {
        Ok(c) => c,
        Err(_) => return IttmStatus::Validation,
    };
    let verdict =
        experiments::validate_code(&code, &ittm_core::codes::CodeBudget::default());
    match serde_json::to_string(&verdict) {
        Ok(json) => write_out(out_json, json),
        Err(_) => IttmStatus::Internal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(ptr: *mut c_char) -> String {
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        ittm_string_free(ptr);
        s
    }

    #[test]
    fn ordinal_surface() {
        unsafe {
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ittm_ordinal_normalize(c("w^(2)*1").as_ptr(), &mut out),
                IttmStatus::Ok
            );
            assert_eq!(take(out), "w^2");
            assert_eq!(
                ittm_ordinal_normalize(c("w+w").as_ptr(), &mut out),
                IttmStatus::Validation
            );
            assert_eq!(
                ittm_ordinal_normalize(std::ptr::null(), &mut out),
                IttmStatus::NullPointer
            );
            let mut cmp = 0i32;
            ittm_ordinal_compare(c("w").as_ptr(), c("w+1").as_ptr(), &mut cmp);
            assert_eq!(cmp, -1);
            assert_eq!(
                ittm_ordinal_add(c("1").as_ptr(), c("w").as_ptr(), &mut out),
                IttmStatus::Ok
            );
            assert_eq!(take(out), "w");
            assert_eq!(
                ittm_ordinal_mul(c("w+1").as_ptr(), c("w").as_ptr(), &mut out),
                IttmStatus::Ok
            );
            assert_eq!(take(out), "w^2");
        }
    }

    #[test]
    fn pairing_surface() {
        unsafe {
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ittm_godel_pair(c("1").as_ptr(), c("0").as_ptr(), &mut out),
                IttmStatus::Ok
            );
            assert_eq!(take(out), "2");
            let mut l: *mut c_char = std::ptr::null_mut();
            let mut r: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ittm_godel_unpair(c("w").as_ptr(), &mut l, &mut r),
                IttmStatus::Ok
            );
            assert_eq!(take(l), "0");
            assert_eq!(take(r), "w");
        }
    }

    #[test]
    fn program_and_run_surface() {
        unsafe {
            let mut prog: *mut IttmProgram = std::ptr::null_mut();
            assert_eq!(
                ittm_program_from_catalog(c("reach_limit").as_ptr(), std::ptr::null(), 0, &mut prog),
                IttmStatus::Ok
            );
            let mut table: *mut c_char = std::ptr::null_mut();
            assert_eq!(ittm_program_table(prog, &mut table), IttmStatus::Ok);
            assert!(take(table).starts_with("ittm-program v1"));
            let mut json: *mut c_char = std::ptr::null_mut();
            let status = ittm_run(
                prog,
                c("w^2").as_ptr(),
                c("empty").as_ptr(),
                std::ptr::null(),
                1_000_000,
                1_000,
                c("distinguished").as_ptr(),
                &mut json,
            );
            assert_eq!(status, IttmStatus::Ok);
            let record = take(json);
            let v: serde_json::Value = serde_json::from_str(&record).unwrap();
            assert_eq!(v["outcome"], "halted");
            assert_eq!(v["output_head"], "w");
            // bad alpha is a validation error
            let status = ittm_run(
                prog,
                c("w^2*2").as_ptr(),
                c("empty").as_ptr(),
                std::ptr::null(),
                1_000,
                10,
                c("distinguished").as_ptr(),
                &mut json,
            );
            assert_eq!(status, IttmStatus::Validation);
            ittm_program_free(prog);
        }
        unsafe {
            let mut prog: *mut IttmProgram = std::ptr::null_mut();
            assert_eq!(
                ittm_program_from_catalog(c("no_such").as_ptr(), std::ptr::null(), 0, &mut prog),
                IttmStatus::Validation
            );
            assert_eq!(
                ittm_program_assemble(c("GOTO nowhere\n").as_ptr(), &mut prog),
                IttmStatus::Validation
            );
            assert_eq!(
                ittm_program_assemble(c("MOVE OUT R\nHALT\n").as_ptr(), &mut prog),
                IttmStatus::Ok
            );
            ittm_program_free(prog);
        }
    }

    #[test]
    fn code_surface() {
        unsafe {
            let mut json: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ittm_validate_code(c(r#"{"canonical":"5","alpha":"w"}"#).as_ptr(), &mut json),
                IttmStatus::Ok
            );
            let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
            assert_eq!(v["validity"]["verdict"], "valid");
            assert_eq!(
                ittm_validate_code(c("not json").as_ptr(), &mut json),
                IttmStatus::Validation
            );
        }
    }
}
