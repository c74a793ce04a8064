//! C ABI over `twisted_bernoulli`.
//!
//! Handles are opaque and owned by the caller once returned; free them with the
//! matching `*_free` function. Every fallible call returns a [`TbStatus`]; on failure
//! `tb_last_error_message` describes the error for the calling thread. Exact values
//! cross the boundary as JSON strings (fractions as `"num/den"`), freed with
//! `tb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde::Deserialize;
use twisted_bernoulli::bernoulli::{numbers, power_sum, BernoulliFamily, TwistSpec};
use twisted_bernoulli::characters::DirichletCharacter;
use twisted_bernoulli::exact::RootOfUnity;
use twisted_bernoulli::identities::{sweep, GridConfig};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputeError = 3,
    ParseError = 4,
    /// A verification ran but some identity instance did not hold.
    IdentityFailed = 5,
    Panic = 6,
}

/// A Dirichlet character.
pub struct TbCharacter(DirichletCharacter);

/// Bernoulli numbers `B^(k)_{0..=max_n, chi, xi}`.
pub struct TbFamily(BernoulliFamily);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(TbStatus, String);

impl From<twisted_bernoulli::Error> for Failure {
    fn from(e: twisted_bernoulli::Error) -> Self {
        Failure(TbStatus::ComputeError, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<TbStatus, Failure>) -> TbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TbStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(TbStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(TbStatus::InvalidArgument, msg.into())
}

fn root(order: u64, exponent: i64) -> Result<RootOfUnity, Failure> {
    if order == 0 {
        return Err(invalid("root of unity order must be positive"));
    }
    Ok(RootOfUnity::new(order, exponent))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| invalid("output contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn tb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Principal character mod `d`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tb_character_principal(d: u64, out: *mut *mut TbCharacter) -> TbStatus {
    guard(|| {
        non_null(out, "out")?;
        put(out, TbCharacter(DirichletCharacter::principal(d)?));
        Ok(TbStatus::Ok)
    })
}

/// Character mod `d` from its value table: entry `a` is `zeta_{orders[a]}^{exponents[a]}`,
/// or 0 when `orders[a] == 0`.
///
/// # Safety
/// `orders` and `exponents` must point to `len` elements; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tb_character_from_table(
    d: u64,
    orders: *const u64,
    exponents: *const i64,
    len: usize,
    out: *mut *mut TbCharacter,
) -> TbStatus {
    guard(|| {
        non_null(out, "out")?;
        if len > 0 {
            non_null(orders, "orders")?;
            non_null(exponents, "exponents")?;
        }
        let values = (0..len)
            .map(|i| {
                let (o, e) = (*orders.add(i), *exponents.add(i));
                if o == 0 {
                    None
                } else {
                    Some(RootOfUnity::new(o, e))
                }
            })
            .collect();
        put(out, TbCharacter(DirichletCharacter::from_table(d, values)?));
        Ok(TbStatus::Ok)
    })
}

/// The `j`-th character mod `d` in the enumeration by a least primitive root.
/// Writes the number of characters to `count` when it is not NULL.
///
/// # Safety
/// `out` must be valid for writes; `count` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tb_character_enumerate(
    d: u64,
    j: usize,
    out: *mut *mut TbCharacter,
    count: *mut usize,
) -> TbStatus {
    guard(|| {
        non_null(out, "out")?;
        let mut all = DirichletCharacter::enumerate_cyclic(d)?;
        if !count.is_null() {
            *count = all.len();
        }
        if j >= all.len() {
            return Err(invalid(format!("index {j} out of range: {} characters mod {d}", all.len())));
        }
        put(out, TbCharacter(all.swap_remove(j)));
        Ok(TbStatus::Ok)
    })
}

/// Modulus of a character, or 0 for NULL.
///
/// # Safety
/// `chi` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tb_character_modulus(chi: *const TbCharacter) -> u64 {
    chi.as_ref().map_or(0, |c| c.0.modulus())
}

/// # Safety
/// `chi` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tb_character_free(chi: *mut TbCharacter) {
    if !chi.is_null() {
        drop(Box::from_raw(chi));
    }
}

/// `B^(k)_{n, chi, xi}` for `n = 0..=max_n`, `xi = zeta_{xi_order}^{xi_exponent}`.
///
/// # Safety
/// `chi` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tb_family_compute(
    chi: *const TbCharacter,
    xi_order: u64,
    xi_exponent: i64,
    k: u64,
    max_n: usize,
    out: *mut *mut TbFamily,
) -> TbStatus {
    guard(|| {
        non_null(chi, "chi")?;
        non_null(out, "out")?;
        let spec = TwistSpec::new((*chi).0.clone(), root(xi_order, xi_exponent)?)?;
        put(out, TbFamily(numbers(&spec, k, max_n)?));
        Ok(TbStatus::Ok)
    })
}

/// Number of stored values (`max_n + 1`), or 0 for NULL.
///
/// # Safety
/// `family` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tb_family_len(family: *const TbFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.max_n() + 1)
}

/// Conductor of the cyclotomic field holding the values, or 0 for NULL.
///
/// # Safety
/// `family` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tb_family_conductor(family: *const TbFamily) -> u64 {
    family.as_ref().map_or(0, |f| f.0.spec().field().conductor())
}

/// JSON form of the `n`-th value: `"num/den"` over Q, else `{"conductor", "coeffs"}`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tb_family_number_json(family: *const TbFamily, n: usize, out: *mut *mut c_char) -> TbStatus {
    guard(|| {
        non_null(family, "family")?;
        non_null(out, "out")?;
        let v = (*family).0.number(n).map_err(|e| invalid(e.to_string()))?;
        put_string(out, serde_json::to_string(v).expect("elements serialize"))?;
        Ok(TbStatus::Ok)
    })
}

/// # Safety
/// `family` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tb_family_free(family: *mut TbFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// JSON form of `T_{k, chi, xi}(n) = sum_{l <= n} chi(l) xi^l l^k`.
///
/// # Safety
/// `chi` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tb_power_sum_json(
    chi: *const TbCharacter,
    xi_order: u64,
    xi_exponent: i64,
    k: u64,
    n: u64,
    out: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        non_null(chi, "chi")?;
        non_null(out, "out")?;
        let spec = TwistSpec::new((*chi).0.clone(), root(xi_order, xi_exponent)?)?;
        put_string(out, serde_json::to_string(&power_sum(&spec, k, n)).expect("elements serialize"))?;
        Ok(TbStatus::Ok)
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyRequest {
    #[serde(default)]
    grids: Vec<GridConfig>,
}

/// Runs the identity sweep described by `{"grids": [...]}` and writes
/// `{"summary", "reports"}` to `out`. Returns `IdentityFailed` (with `out` set)
/// when some instance does not hold.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tb_verify_json(config_json: *const c_char, jobs: usize, out: *mut *mut c_char) -> TbStatus {
    guard(|| {
        non_null(config_json, "config_json")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(config_json)
            .to_str()
            .map_err(|_| Failure(TbStatus::ParseError, "config is not UTF-8".into()))?;
        let req: VerifyRequest =
            serde_json::from_str(text).map_err(|e| Failure(TbStatus::ParseError, e.to_string()))?;
        let jobs = (jobs > 0).then_some(jobs);
        let result = sweep(&req.grids, jobs).map_err(|e| invalid(e.to_string()))?;
        put_string(out, serde_json::to_string(&result).expect("reports serialize"))?;
        if result.summary.all_hold() {
            Ok(TbStatus::Ok)
        } else {
            set_error(format!("{} of {} instances failed", result.summary.total - result.summary.holds, result.summary.total));
            Ok(TbStatus::IdentityFailed)
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
