//! C ABI over `kgroup`.
//!
//! Objects are opaque handles created by `kg_*_new`/`kg_*_from_json` and
//! released with the matching `kg_*_free`. Every fallible call returns a
//! [`KgStatus`]; on failure `kg_last_error` describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kgroup::abgrp::FinAbGroup;
use kgroup::cli::{input, InputDocument, Overrides, Resolved};
use kgroup::fingrp::DEFAULT_CAP;
use kgroup::kcalc::{k0, k1, k_finite_coefficients, CoefficientInput};
use kgroup::monoid::{grothendieck_group_finite, FiniteCommMonoid};
use kgroup::smgpd::{check_condition_star, EnumeratedGroupoid, SMGroupoidPres, SmInput};
use kgroup::Error;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KgStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8 or an out-of-range index.
    InvalidArgument = 1,
    /// Malformed document or table.
    InvalidInput = 2,
    CapExceeded = 3,
    NotAHomomorphism = 4,
    ConditionStarViolated = 5,
    Internal = 6,
}

/// A finite commutative monoid.
pub struct KgMonoid(FiniteCommMonoid);

/// A truncated symmetric monoidal groupoid.
pub struct KgGroupoid(SMGroupoidPres);

/// A finitely generated abelian group.
pub struct KgAbGroup(FinAbGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> KgStatus {
    match e {
        Error::CapExceeded { .. } => KgStatus::CapExceeded,
        Error::NotAHomomorphism(_) => KgStatus::NotAHomomorphism,
        Error::ConditionStarViolated { .. } => KgStatus::ConditionStarViolated,
        _ => KgStatus::InvalidInput,
    }
}

enum Failure {
    Arg(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            KgStatus::Ok
        }
        Ok(Err(Failure::Arg(msg))) => {
            set_error(msg);
            KgStatus::InvalidArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            KgStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Arg(format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Arg(format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::Arg(format!("{what} is null")))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn cap_or_default(cap: usize) -> usize {
    if cap == 0 {
        DEFAULT_CAP
    } else {
        cap
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn kg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a `monoid-table` document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_monoid_from_json(json: *const c_char, out: *mut *mut KgMonoid) -> KgStatus {
    guard(|| {
        let doc: InputDocument = serde_json::from_str(text(json, "json")?).map_err(Error::from)?;
        match doc.resolve(Overrides::default())? {
            Resolved::Monoid(m) => emit(out, KgMonoid(m)),
            other => Err(Failure::Core(Error::InvalidInput(format!(
                "expected a monoid-table, got a {}",
                other.kind()
            )))),
        }
    })
}

/// `Z/n` for `n >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_monoid_cyclic(n: usize, out: *mut *mut KgMonoid) -> KgStatus {
    guard(|| {
        if n == 0 {
            return Err(Failure::Arg("n must be positive".into()));
        }
        emit(out, KgMonoid(FiniteCommMonoid::cyclic_group(n)))
    })
}

/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn kg_monoid_size(m: *const KgMonoid) -> usize {
    m.as_ref().map_or(0, |m| m.0.size())
}

/// # Safety
/// `m` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kg_monoid_free(m: *mut KgMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// A builtin groupoid: `"fin"`, `"nat"` or `"freemod"` (which uses `modulus`).
/// A `cap` of 0 selects the default.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_groupoid_builtin(
    name: *const c_char,
    modulus: u64,
    truncation: usize,
    cap: usize,
    out: *mut *mut KgGroupoid,
) -> KgStatus {
    guard(|| {
        let kind = match text(name, "name")? {
            "fin" => input::Builtin::Fin,
            "nat" => input::Builtin::Nat,
            "freemod" => input::Builtin::Freemod,
            other => return Err(Failure::Arg(format!("unknown builtin {other:?}"))),
        };
        let pres = input::builtin(kind, Some(modulus), truncation, cap_or_default(cap))?;
        emit(out, KgGroupoid(pres))
    })
}

/// Parses a `groupoid-builtin` or `groupoid-custom` document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_groupoid_from_json(json: *const c_char, out: *mut *mut KgGroupoid) -> KgStatus {
    guard(|| {
        let doc: InputDocument = serde_json::from_str(text(json, "json")?).map_err(Error::from)?;
        match doc.resolve(Overrides::default())? {
            Resolved::Groupoid { pres, .. } => emit(out, KgGroupoid(pres)),
            other => Err(Failure::Core(Error::InvalidInput(format!(
                "expected a groupoid, got a {}",
                other.kind()
            )))),
        }
    })
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn kg_groupoid_truncation(g: *const KgGroupoid) -> usize {
    g.as_ref().map_or(0, |g| g.0.truncation)
}

/// Writes whether every translation is injective.
///
/// # Safety
/// `g` must be a live handle; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_groupoid_condition_star(g: *const KgGroupoid, cap: usize, holds: *mut bool) -> KgStatus {
    guard(|| {
        let e = EnumeratedGroupoid::new(&deref(g, "groupoid")?.0, cap_or_default(cap))?;
        if holds.is_null() {
            return Err(Failure::Arg("output pointer is null".into()));
        }
        *holds = check_condition_star(&e).holds;
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kg_groupoid_free(g: *mut KgGroupoid) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Grothendieck group of a finite monoid.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_grothendieck(m: *const KgMonoid, out: *mut *mut KgAbGroup) -> KgStatus {
    guard(|| {
        let c = grothendieck_group_finite(&deref(m, "monoid")?.0)?;
        emit(out, KgAbGroup(c.group))
    })
}

/// `K₀` of a groupoid.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_k0(g: *const KgGroupoid, out: *mut *mut KgAbGroup) -> KgStatus {
    guard(|| {
        let r = k0(&SmInput::Groupoid(deref(g, "groupoid")?.0.clone()))?;
        emit(out, KgAbGroup(r.group))
    })
}

/// `K₁` of a groupoid at its truncation. A `cap` of 0 selects the default.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_k1(g: *const KgGroupoid, cap: usize, out: *mut *mut KgAbGroup) -> KgStatus {
    guard(|| {
        let r = k1(&SmInput::Groupoid(deref(g, "groupoid")?.0.clone()), cap_or_default(cap))?;
        emit(out, KgAbGroup(r.group))
    })
}

/// `K₀` of a finite monoid with `Z/n` coefficients.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_coefficients(m: *const KgMonoid, n: u64, out: *mut *mut KgAbGroup) -> KgStatus {
    guard(|| {
        let input = CoefficientInput::Finite(deref(m, "monoid")?.0.clone());
        let r = k_finite_coefficients(&input, n, DEFAULT_CAP)?;
        emit(out, KgAbGroup(r.group))
    })
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn kg_abgroup_free_rank(g: *const KgAbGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.free_rank())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn kg_abgroup_factor_count(g: *const KgAbGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.invariant_factors().len())
}

/// Writes the `i`-th invariant factor; fails if it does not fit in 64 bits.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kg_abgroup_factor(g: *const KgAbGroup, i: usize, out: *mut u64) -> KgStatus {
    guard(|| {
        let d = deref(g, "group")?
            .0
            .invariant_factors()
            .get(i)
            .ok_or_else(|| Failure::Arg(format!("factor {i} out of range")))?;
        let v = d
            .to_u64()
            .ok_or_else(|| Failure::Arg(format!("factor {d} exceeds 64 bits")))?;
        if out.is_null() {
            return Err(Failure::Arg("output pointer is null".into()));
        }
        *out = v;
        Ok(())
    })
}

/// JSON form `{"free_rank": .., "invariant_factors": [..]}`; free with [`kg_string_free`].
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn kg_abgroup_to_json(g: *const KgAbGroup) -> *mut c_char {
    let Some(g) = g.as_ref() else { return ptr::null_mut() };
    let text = serde_json::to_string(&g.0).expect("groups serialize");
    CString::new(text).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kg_abgroup_free(g: *mut KgAbGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}
