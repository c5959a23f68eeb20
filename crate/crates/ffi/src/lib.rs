//! C interface to `opgs-core`.
//!
//! Systems are opaque handles.  Every function returns an [`OpgsStatus`];
//! results go through out-pointers.  Strings returned to the caller are
//! owned by the caller and must be released with [`opgs_string_free`].
//! After a non-OK status, [`opgs_last_error_message`] describes the error
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use opgs::ambiguity::{gs_check, GsConfig};
use opgs::basis::dimension_series;
use opgs::order::OrderKind;
use opgs::rewrite::Reducer;
use opgs::{catalog, Alphabet, Coeff, Error, Mode, OpiSystem, RuleSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpgsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    UnknownSystem = 4,
    InvalidConfig = 5,
    BudgetExceeded = 6,
    Inconsistent = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpgsOrder {
    Pd = 0,
    Upd = 1,
    Dlex = 2,
}

/// A rewriting system built from a catalog entry or a system file.
pub struct OpgsSystem {
    rules: RuleSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> OpgsStatus {
    match e {
        Error::Syntax { .. }
        | Error::EmptyContent(_)
        | Error::UnitInNonunital
        | Error::UnknownGenerator(_)
        | Error::Alphabet(_) => OpgsStatus::Syntax,
        Error::UnknownSystem(_) => OpgsStatus::UnknownSystem,
        Error::BudgetExceeded(_) => OpgsStatus::BudgetExceeded,
        Error::Inconsistent(_) => OpgsStatus::Inconsistent,
        _ => OpgsStatus::InvalidConfig,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (OpgsStatus, String)>) -> OpgsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OpgsStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            OpgsStatus::Panic
        }
    }
}

fn core<T>(r: opgs::Result<T>) -> Result<T, (OpgsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// # Safety
/// `p` is null or a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (OpgsStatus, String)> {
    if p.is_null() {
        return Err((OpgsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (OpgsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or a NUL-terminated string.
unsafe fn opt_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, (OpgsStatus, String)> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), (OpgsStatus, String)> {
    if p.is_null() {
        Err((OpgsStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn lambda(s: Option<&str>) -> Result<Coeff, (OpgsStatus, String)> {
    let s = s.unwrap_or("1").trim();
    Coeff::from_str(s).map_err(|_| (OpgsStatus::InvalidConfig, format!("invalid lambda `{s}`")))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

fn alphabet(spec: Option<&str>, texts: &[&str]) -> Result<Alphabet, (OpgsStatus, String)> {
    core(match spec {
        Some(s) => Alphabet::parse(s),
        None => Alphabet::infer(texts),
    })
}

fn handle<'a>(sys: *const OpgsSystem) -> Result<&'a OpgsSystem, (OpgsStatus, String)> {
    if sys.is_null() {
        return Err((OpgsStatus::NullArgument, "system is null".into()));
    }
    // SAFETY: non-null handles come from `Box::into_raw` in this crate.
    Ok(unsafe { &*sys })
}

fn boxed(sys: OpiSystem, out: *mut *mut OpgsSystem) -> Result<(), (OpgsStatus, String)> {
    let rules = core(RuleSet::new(sys))?;
    // SAFETY: `out` was checked non-null by the caller.
    unsafe { *out = Box::into_raw(Box::new(OpgsSystem { rules })) };
    Ok(())
}

/// Loads a catalog system (`DRB`, `ID0`, `uDRB`, `DRB'`, ...).  `lambda` is
/// a decimal integer or fraction such as `"1/2"`; null means 1.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn opgs_system_from_catalog(
    name: *const c_char,
    lambda_text: *const c_char,
    unital: bool,
    out: *mut *mut OpgsSystem,
) -> OpgsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let name = text(name, "name")?;
        let l = lambda(opt_text(lambda_text, "lambda")?)?;
        boxed(core(catalog(name, &l, unital))?, out)
    })
}

/// Parses a system in the text format accepted by `opgs --system FILE`.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn opgs_system_from_text(
    source: *const c_char,
    lambda_text: *const c_char,
    unital: bool,
    out: *mut *mut OpgsSystem,
) -> OpgsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let src = text(source, "source")?;
        let l = lambda(opt_text(lambda_text, "lambda")?)?;
        boxed(core(OpiSystem::parse(src, &l, unital.then_some(Mode::Unital)))?, out)
    })
}

/// # Safety
/// `sys` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opgs_system_free(sys: *mut OpgsSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Name of the system.
///
/// # Safety
/// `sys` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn opgs_system_name(sys: *const OpgsSystem, out: *mut *mut c_char) -> OpgsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = into_c(handle(sys)?.rules.system().name.clone());
        Ok(())
    })
}

/// Normal form of `expr`.  `alphabet` is a comma- or `<`-separated list of
/// generators in increasing order; null infers it from `expr`.
///
/// # Safety
/// `sys` is a live handle; strings are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn opgs_normal_form(
    sys: *const OpgsSystem,
    expr: *const c_char,
    alphabet_spec: *const c_char,
    budget: usize,
    out: *mut *mut c_char,
) -> OpgsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let s = handle(sys)?;
        let e = text(expr, "expr")?;
        let a = alphabet(opt_text(alphabet_spec, "alphabet")?, &[e])?;
        let p = core(a.parse_poly(e, s.rules.mode()))?;
        let budget = if budget == 0 { opgs::rewrite::DEFAULT_BUDGET } else { budget };
        let nf = core(Reducer::with_budget(&s.rules, budget).nf(&p))?;
        *out = into_c(a.format_poly(&nf));
        Ok(())
    })
}

/// Checks all compositions among instances with arguments of weight
/// `<= bound` over the first `generators` of x, y, z.  Writes the verdict to
/// `passed` and, when `report` is non-null, the JSON report.
///
/// # Safety
/// `sys` is a live handle; `passed` is writable; `report` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn opgs_gs_check(
    sys: *const OpgsSystem,
    bound: usize,
    generators: u32,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> OpgsStatus {
    guard(|| {
        out_ptr(passed, "passed")?;
        let s = handle(sys)?;
        if !(1..=3).contains(&generators) {
            return Err((OpgsStatus::InvalidConfig, "generators must be 1, 2 or 3".into()));
        }
        let a = core(Alphabet::new(&["x", "y", "z"]))?;
        let cfg = GsConfig { bound, generators, ..GsConfig::default() };
        let r = core(gs_check(&s.rules, &a, &cfg))?;
        *passed = r.passed;
        if !report.is_null() {
            *report = into_c(serde_json::to_string_pretty(&r).unwrap());
        }
        Ok(())
    })
}

/// Compares two words under the [`OpgsOrder`] given by `order`; writes
/// -1, 0 or 1.
///
/// # Safety
/// Strings are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn opgs_compare(
    u: *const c_char,
    v: *const c_char,
    alphabet_spec: *const c_char,
    order: i32,
    out: *mut i32,
) -> OpgsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let (us, vs) = (text(u, "u")?, text(v, "v")?);
        let a = alphabet(opt_text(alphabet_spec, "alphabet")?, &[us, vs])?;
        let (kind, mode) = match order {
            o if o == OpgsOrder::Pd as i32 => (OrderKind::Pd, Mode::Nonunital),
            o if o == OpgsOrder::Upd as i32 => (OrderKind::Upd, Mode::Unital),
            o if o == OpgsOrder::Dlex as i32 => (OrderKind::Dlex, Mode::Nonunital),
            o => return Err((OpgsStatus::InvalidConfig, format!("unknown order {o}"))),
        };
        let (wu, wv) = (core(a.parse_word(us, mode))?, core(a.parse_word(vs, mode))?);
        *out = core(kind.compare(&wu, &wv))? as i32;
        Ok(())
    })
}

/// Number of irreducible words of each weight `0..=bound` over `generators`
/// generators.  Writes `min(bound + 1, capacity)` counts to `counts` and
/// `bound + 1` to `written`.
///
/// # Safety
/// `sys` is a live handle; `counts` has room for `capacity` values; `written` is writable.
#[no_mangle]
pub unsafe extern "C" fn opgs_basis_counts(
    sys: *const OpgsSystem,
    generators: u32,
    bound: usize,
    counts: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> OpgsStatus {
    guard(|| {
        out_ptr(written, "written")?;
        if capacity > 0 {
            out_ptr(counts, "counts")?;
        }
        let s = handle(sys)?;
        let series = dimension_series(&s.rules, generators, bound);
        for (i, c) in series.iter().take(capacity).enumerate() {
            *counts.add(i) = *c as u64;
        }
        *written = series.len();
        Ok(())
    })
}

/// Message for the last non-OK status on this thread, or null.  The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn opgs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opgs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn opgs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
