//! C ABI for the beltnot library.
//!
//! Conventions:
//! * every fallible call returns a [`BnStatus`] and writes results through
//!   out-pointers;
//! * gates and chains are opaque handles created and released by the
//!   `bn_*_new`/`bn_*_free` pairs; a handle is never mutated after creation;
//! * strings returned by the library are NUL-terminated, UTF-8, and must be
//!   released with [`bn_string_free`];
//! * all angles are radians.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use beltnot::{
    analytic_optimum, apply, avg_fidelity_closed, avg_fidelity_quadrature, belt_constants,
    classify_case, exemplar_chain, fidelity_sim, realize_from_report, verify_chain, BeltRegion,
    CaseId, ExemplarState, GateSpec, InputState, MpsChain, QuadratureConfig,
};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BnStatus {
    BnOk = 0,
    /// A pointer argument was NULL.
    BnNullPointer = 1,
    /// An argument was out of range (angles, copy counts, orders).
    BnInvalidArgument = 2,
    /// A gate failed its unitarity checks.
    BnInvalidGate = 3,
    /// Input text could not be parsed.
    BnParseError = 4,
    /// An internal invariant failed.
    BnInternalError = 5,
}

/// Opaque handle to a NOT-gate description.
pub struct BnGate {
    inner: GateSpec,
}

/// Opaque handle to a sequential-generation chain.
pub struct BnChain {
    inner: MpsChain,
}

/// Belt constants and the optimal-gate summary for one (belt, M).
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BnOptimalReport {
    pub k_const: f64,
    pub p_const: f64,
    pub q_const: f64,
    pub r_const: f64,
    /// 1..4, matching the four-case classification.
    pub case_id: u32,
    /// The case formula's free parameter, clipped to [0, 1].
    pub a_star: f64,
    /// 1 when the min(·, 1) clip engaged.
    pub boundary_hit: u8,
    /// 1 when the case allocation attains the true optimum.
    pub case_optimal: u8,
    /// Optimal belt-averaged fidelity.
    pub f_bar: f64,
}

fn guarded(f: impl FnOnce() -> BnStatus) -> BnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => BnStatus::BnInternalError,
    }
}

fn case_code(case: CaseId) -> u32 {
    match case {
        CaseId::Case1 => 1,
        CaseId::Case2 => 2,
        CaseId::Case3 => 3,
        CaseId::Case4 => 4,
    }
}

fn region(theta1: f64, theta2: f64) -> Result<BeltRegion, BnStatus> {
    BeltRegion::new(theta1, theta2).map_err(|_| BnStatus::BnInvalidArgument)
}

/// Belt constants K, P, Q, R for a latitude pair.
///
/// # Safety
/// `out_k`, `out_p`, `out_q`, `out_r` must be valid writable pointers.
#[no_mangle]
pub unsafe extern "C" fn bn_belt_constants(
    theta1: f64,
    theta2: f64,
    out_k: *mut f64,
    out_p: *mut f64,
    out_q: *mut f64,
    out_r: *mut f64,
) -> BnStatus {
    if out_k.is_null() || out_p.is_null() || out_q.is_null() || out_r.is_null() {
        return BnStatus::BnNullPointer;
    }
    let r = match region(theta1, theta2) {
        Ok(r) => r,
        Err(status) => return status,
    };
    let c = belt_constants(&r);
    *out_k = c.k_const;
    *out_p = c.p_const;
    *out_q = c.q_const;
    *out_r = c.r_const;
    BnStatus::BnOk
}

/// Optimal-gate report for a belt and copy count.
///
/// # Safety
/// `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bn_optimal_report(
    theta1: f64,
    theta2: f64,
    copies: u32,
    out: *mut BnOptimalReport,
) -> BnStatus {
    if out.is_null() {
        return BnStatus::BnNullPointer;
    }
    guarded(|| {
        let r = match region(theta1, theta2) {
            Ok(r) => r,
            Err(status) => return status,
        };
        let report = match analytic_optimum(&r, copies) {
            Ok(rep) => rep,
            Err(_) => return BnStatus::BnInvalidArgument,
        };
        let case = classify_case(&r, copies);
        unsafe {
            *out = BnOptimalReport {
                k_const: report.k_const,
                p_const: report.p_const,
                q_const: report.q_const,
                r_const: report.r_const,
                case_id: case_code(case),
                a_star: report.a_star,
                boundary_hit: report.boundary_hit as u8,
                case_optimal: report.case_optimal as u8,
                f_bar: report.f_bar,
            };
        }
        BnStatus::BnOk
    })
}

/// Realize the optimal gate for a belt. On success `*out` owns a new handle
/// that must be released with [`bn_gate_free`].
///
/// # Safety
/// `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_realize_optimal(
    theta1: f64,
    theta2: f64,
    copies: u32,
    out: *mut *mut BnGate,
) -> BnStatus {
    if out.is_null() {
        return BnStatus::BnNullPointer;
    }
    guarded(|| {
        let r = match region(theta1, theta2) {
            Ok(r) => r,
            Err(status) => return status,
        };
        let gate = match analytic_optimum(&r, copies).and_then(|rep| realize_from_report(&rep)) {
            Ok(g) => g,
            Err(_) => return BnStatus::BnInvalidArgument,
        };
        unsafe {
            *out = Box::into_raw(Box::new(BnGate { inner: gate }));
        }
        BnStatus::BnOk
    })
}

/// Parse a gate from its JSON form. The gate is validated before a handle is
/// returned.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_from_json(text: *const c_char, out: *mut *mut BnGate) -> BnStatus {
    if text.is_null() || out.is_null() {
        return BnStatus::BnNullPointer;
    }
    let raw = unsafe { CStr::from_ptr(text) };
    let Ok(utf8) = raw.to_str() else {
        return BnStatus::BnParseError;
    };
    let Ok(gate) = serde_json::from_str::<GateSpec>(utf8) else {
        return BnStatus::BnParseError;
    };
    if !gate.validate().is_valid() {
        return BnStatus::BnInvalidGate;
    }
    unsafe {
        *out = Box::into_raw(Box::new(BnGate { inner: gate }));
    }
    BnStatus::BnOk
}

/// Serialize a gate to JSON. The returned string must be released with
/// [`bn_string_free`].
///
/// # Safety
/// `gate` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_to_json(gate: *const BnGate) -> *mut c_char {
    if gate.is_null() {
        return std::ptr::null_mut();
    }
    let gate = unsafe { &*gate };
    match beltnot::json::to_string(&gate.inner) {
        Ok(text) => CString::new(text).map_or(std::ptr::null_mut(), CString::into_raw),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Copy count of a gate handle; 0 for NULL.
///
/// # Safety
/// `gate` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_copies(gate: *const BnGate) -> u32 {
    if gate.is_null() {
        0
    } else {
        unsafe { (*gate).inner.m }
    }
}

/// Pointwise fidelity of a gate at one input (θ, φ) by simulation.
///
/// # Safety
/// `gate` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_fidelity_sim(
    gate: *const BnGate,
    theta: f64,
    phi: f64,
    out: *mut f64,
) -> BnStatus {
    if gate.is_null() || out.is_null() {
        return BnStatus::BnNullPointer;
    }
    guarded(|| {
        let gate = unsafe { &*gate };
        let Ok(input) = InputState::new(theta, phi) else {
            return BnStatus::BnInvalidArgument;
        };
        match fidelity_sim(&gate.inner, &input) {
            Ok(f) => {
                unsafe { *out = f };
                BnStatus::BnOk
            }
            Err(_) => BnStatus::BnInvalidGate,
        }
    })
}

/// Closed-form belt-averaged fidelity of a gate.
///
/// # Safety
/// `gate` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_avg_fidelity_closed(
    gate: *const BnGate,
    theta1: f64,
    theta2: f64,
    out: *mut f64,
) -> BnStatus {
    if gate.is_null() || out.is_null() {
        return BnStatus::BnNullPointer;
    }
    guarded(|| {
        let gate = unsafe { &*gate };
        let r = match region(theta1, theta2) {
            Ok(r) => r,
            Err(status) => return status,
        };
        match avg_fidelity_closed(&gate.inner, &r) {
            Ok(f) => {
                unsafe { *out = f };
                BnStatus::BnOk
            }
            Err(_) => BnStatus::BnInvalidGate,
        }
    })
}

/// Quadrature belt-averaged fidelity of a gate (u_nodes ≥ 8, phi_nodes ≥ 16).
///
/// # Safety
/// `gate` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_avg_fidelity_quadrature(
    gate: *const BnGate,
    theta1: f64,
    theta2: f64,
    u_nodes: u32,
    phi_nodes: u32,
    out: *mut f64,
) -> BnStatus {
    if gate.is_null() || out.is_null() {
        return BnStatus::BnNullPointer;
    }
    guarded(|| {
        let gate = unsafe { &*gate };
        let r = match region(theta1, theta2) {
            Ok(r) => r,
            Err(status) => return status,
        };
        let config = QuadratureConfig { u_nodes: u_nodes as usize, phi_nodes: phi_nodes as usize };
        match avg_fidelity_quadrature(&gate.inner, &r, &config) {
            Ok(f) => {
                unsafe { *out = f };
                BnStatus::BnOk
            }
            Err(_) => BnStatus::BnInvalidArgument,
        }
    })
}

/// Apply a gate to an input and write the joint output state as JSON.
/// The returned string must be released with [`bn_string_free`]; NULL on
/// failure.
///
/// # Safety
/// `gate` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_apply_json(
    gate: *const BnGate,
    theta: f64,
    phi: f64,
) -> *mut c_char {
    if gate.is_null() {
        return std::ptr::null_mut();
    }
    let gate = unsafe { &*gate };
    let Ok(input) = InputState::new(theta, phi) else {
        return std::ptr::null_mut();
    };
    let Ok(state) = apply(&gate.inner, &input) else {
        return std::ptr::null_mut();
    };
    match beltnot::json::to_string(&state) {
        Ok(text) => CString::new(text).map_or(std::ptr::null_mut(), CString::into_raw),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Release a gate handle. NULL is ignored.
///
/// # Safety
/// `gate` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bn_gate_free(gate: *mut BnGate) {
    if !gate.is_null() {
        drop(unsafe { Box::from_raw(gate) });
    }
}

/// Build the closed-form chain of the odd-M exemplar output state.
///
/// # Safety
/// `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_exemplar(
    copies: u32,
    gamma: f64,
    out: *mut *mut BnChain,
) -> BnStatus {
    if out.is_null() {
        return BnStatus::BnNullPointer;
    }
    guarded(|| {
        let Ok(state) = ExemplarState::new(copies, gamma) else {
            return BnStatus::BnInvalidArgument;
        };
        match exemplar_chain(&state) {
            Ok((chain, _)) => {
                unsafe { *out = Box::into_raw(Box::new(BnChain { inner: chain })) };
                BnStatus::BnOk
            }
            Err(_) => BnStatus::BnInternalError,
        }
    })
}

/// Number of sites in a chain; 0 for NULL.
///
/// # Safety
/// `chain` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_site_count(chain: *const BnChain) -> u32 {
    if chain.is_null() {
        0
    } else {
        unsafe { (*chain).inner.site_count() as u32 }
    }
}

/// Bond dimension at cut `index` (0 ..= site_count).
///
/// # Safety
/// `chain` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_bond_dim(
    chain: *const BnChain,
    index: u32,
    out: *mut u32,
) -> BnStatus {
    if chain.is_null() || out.is_null() {
        return BnStatus::BnNullPointer;
    }
    let dims = unsafe { (*chain).inner.bond_dims() };
    match dims.get(index as usize) {
        Some(d) => {
            unsafe { *out = *d as u32 };
            BnStatus::BnOk
        }
        None => BnStatus::BnInvalidArgument,
    }
}

/// Largest per-site isometry residual of a chain.
///
/// # Safety
/// `chain` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_max_isometry_residual(
    chain: *const BnChain,
    out: *mut f64,
) -> BnStatus {
    if chain.is_null() || out.is_null() {
        return BnStatus::BnNullPointer;
    }
    let residual = unsafe {
        (*chain)
            .inner
            .isometry_residuals()
            .into_iter()
            .fold(0.0f64, f64::max)
    };
    unsafe { *out = residual };
    BnStatus::BnOk
}

/// Verify a chain against the exemplar state with the same parameters:
/// writes the reconstruction overlap and whether the certificate passed.
///
/// # Safety
/// `chain` must be a live handle; `out_overlap` and `out_passed` writable.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_verify_exemplar(
    chain: *const BnChain,
    copies: u32,
    gamma: f64,
    out_overlap: *mut f64,
    out_passed: *mut u8,
) -> BnStatus {
    if chain.is_null() || out_overlap.is_null() || out_passed.is_null() {
        return BnStatus::BnNullPointer;
    }
    guarded(|| {
        let Ok(state) = ExemplarState::new(copies, gamma) else {
            return BnStatus::BnInvalidArgument;
        };
        let reference = state.full_state();
        match verify_chain(unsafe { &(*chain).inner }, &reference) {
            Ok(cert) => {
                unsafe {
                    *out_overlap = cert.overlap;
                    *out_passed = cert.passed as u8;
                }
                BnStatus::BnOk
            }
            Err(_) => BnStatus::BnInvalidArgument,
        }
    })
}

/// Serialize a chain to JSON. The returned string must be released with
/// [`bn_string_free`]; NULL on failure.
///
/// # Safety
/// `chain` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_to_json(chain: *const BnChain) -> *mut c_char {
    if chain.is_null() {
        return std::ptr::null_mut();
    }
    match beltnot::json::to_string(unsafe { &(*chain).inner }) {
        Ok(text) => CString::new(text).map_or(std::ptr::null_mut(), CString::into_raw),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Parse a chain from its JSON form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_from_json(text: *const c_char, out: *mut *mut BnChain) -> BnStatus {
    if text.is_null() || out.is_null() {
        return BnStatus::BnNullPointer;
    }
    let raw = unsafe { CStr::from_ptr(text) };
    let Ok(utf8) = raw.to_str() else {
        return BnStatus::BnParseError;
    };
    match serde_json::from_str::<MpsChain>(utf8) {
        Ok(chain) => {
            unsafe { *out = Box::into_raw(Box::new(BnChain { inner: chain })) };
            BnStatus::BnOk
        }
        Err(_) => BnStatus::BnParseError,
    }
}

/// Release a chain handle. NULL is ignored.
///
/// # Safety
/// `chain` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bn_chain_free(chain: *mut BnChain) {
    if !chain.is_null() {
        drop(unsafe { Box::from_raw(chain) });
    }
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `text` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bn_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}
