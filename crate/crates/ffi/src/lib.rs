//! C interface to the `invy` engine.
//!
//! Every function returns an [`InvyStatus`]; on failure a description is
//! kept per thread and can be copied out with [`invy_last_error_message`].
//! Trajectories are opaque handles created by [`invy_evolve`] and released
//! with [`invy_trajectory_free`]. Output arrays are caller-allocated; each
//! accessor takes the buffer length and fails with
//! `INVY_STATUS_BUFFER_TOO_SMALL` rather than writing past it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use invy::dynamics::evolve_state;
use invy::observables::{
    level_populations, phase_distribution, phase_variance, population_inversion, reduced_field_density_at,
};
use invy::{choose_cutoff, Error, ModelParams, StateTrajectory};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    InvalidArgument = 3,
    BufferTooSmall = 4,
    /// The dynamics failed (degenerate spectrum, integrator step, ...).
    Numerical = 5,
    Panic = 6,
}

/// Model inputs. Rates are in units of λ; `cutoff = 0` selects the photon
/// cutoff automatically from `n_bar` and `k`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct InvyParams {
    pub lambda: [f64; 4],
    pub mu: f64,
    pub delta1: f64,
    pub delta3: f64,
    pub delta4: f64,
    pub chi: f64,
    pub k: u32,
    pub n_bar: f64,
    pub cutoff: usize,
    pub time_independent: bool,
    pub renormalize: bool,
}

impl InvyParams {
    fn to_model(self) -> ModelParams {
        let cutoff = if self.cutoff == 0 && self.n_bar.is_finite() && self.n_bar >= 0.0 && self.k >= 1 {
            choose_cutoff(self.n_bar, invy::coherent::DEFAULT_TAIL_TOL, self.k)
        } else {
            self.cutoff
        };
        ModelParams {
            lambda_1: self.lambda[0],
            lambda_2: self.lambda[1],
            lambda_3: self.lambda[2],
            lambda_4: self.lambda[3],
            mu: self.mu,
            delta_cap_1: self.delta1,
            delta_cap_3: self.delta3,
            delta_cap_4: self.delta4,
            chi: self.chi,
            k: self.k,
            n_bar: self.n_bar,
            cutoff,
            time_independent: self.time_independent,
            renormalize: self.renormalize,
        }
    }
}

/// Evolved state; opaque to C.
pub struct InvyTrajectory {
    inner: StateTrajectory,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Failure(InvyStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match root(&e) {
            Error::InvalidParams(_) | Error::ManifoldOutOfRange { .. } => InvyStatus::InvalidParams,
            Error::InvalidTimeGrid | Error::TimeNotOnGrid(_) | Error::GridTooSmall(_) | Error::UnsupportedOrder(_) => {
                InvyStatus::InvalidArgument
            }
            _ => InvyStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

fn root(e: &Error) -> &Error {
    match e {
        Error::Manifold { source, .. } => root(source),
        e => e,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> InvyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            InvyStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            InvyStatus::Panic
        }
    }
}

fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: callers pass either null or a pointer valid for reads.
    unsafe { p.as_ref() }.ok_or_else(|| Failure(InvyStatus::NullPointer, format!("{what} is null")))
}

fn out_slice<'a>(p: *mut f64, len: usize, needed: usize, what: &str) -> Result<&'a mut [f64], Failure> {
    if p.is_null() {
        return Err(Failure(InvyStatus::NullPointer, format!("{what} is null")));
    }
    if len < needed {
        return Err(Failure(InvyStatus::BufferTooSmall, format!("{what} needs {needed} elements, got {len}")));
    }
    // SAFETY: the caller guarantees `len` writable doubles at `p`.
    Ok(unsafe { std::slice::from_raw_parts_mut(p, needed) })
}

/// Fill `out` with default parameters for mean photon number `n_bar` and
/// photon multiplicity `k`.
#[no_mangle]
pub extern "C" fn invy_params_default(n_bar: f64, k: u32, out: *mut InvyParams) -> InvyStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(InvyStatus::NullPointer, "out is null".into()));
        }
        let p = InvyParams {
            lambda: [1.0; 4],
            mu: 0.0,
            delta1: 0.0,
            delta3: 0.0,
            delta4: 0.0,
            chi: 0.0,
            k,
            n_bar,
            cutoff: 0,
            time_independent: false,
            renormalize: true,
        };
        // SAFETY: checked non-null above.
        unsafe { out.write(p) };
        Ok(())
    })
}

/// Evolve the initial coherent state over `times[0..n_times]` (ascending,
/// starting at 0). On success `*out` owns a new trajectory.
#[no_mangle]
pub extern "C" fn invy_evolve(
    params: *const InvyParams,
    times: *const f64,
    n_times: usize,
    out: *mut *mut InvyTrajectory,
) -> InvyStatus {
    guard(|| {
        let params = non_null(params, "params")?;
        if out.is_null() {
            return Err(Failure(InvyStatus::NullPointer, "out is null".into()));
        }
        if times.is_null() {
            return Err(Failure(InvyStatus::NullPointer, "times is null".into()));
        }
        // SAFETY: the caller guarantees `n_times` readable doubles.
        let grid = unsafe { std::slice::from_raw_parts(times, n_times) };
        let inner = evolve_state(&params.to_model(), grid)?;
        let handle = Box::into_raw(Box::new(InvyTrajectory { inner }));
        // SAFETY: checked non-null above.
        unsafe { out.write(handle) };
        Ok(())
    })
}

/// Release a trajectory. Null is ignored.
#[no_mangle]
pub extern "C" fn invy_trajectory_free(traj: *mut InvyTrajectory) {
    if !traj.is_null() {
        // SAFETY: `traj` came from `invy_evolve` and is freed once.
        drop(unsafe { Box::from_raw(traj) });
    }
}

/// Number of time points; 0 for a null handle.
#[no_mangle]
pub extern "C" fn invy_trajectory_len(traj: *const InvyTrajectory) -> usize {
    // SAFETY: null or a live handle.
    unsafe { traj.as_ref() }.map_or(0, |t| t.inner.time_grid.len())
}

/// Photon cutoff actually used (after automatic selection).
#[no_mangle]
pub extern "C" fn invy_trajectory_cutoff(traj: *const InvyTrajectory) -> usize {
    // SAFETY: null or a live handle.
    unsafe { traj.as_ref() }.map_or(0, |t| t.inner.params.cutoff)
}

/// W(τ) at every time point.
#[no_mangle]
pub extern "C" fn invy_inversion(traj: *const InvyTrajectory, out: *mut f64, len: usize) -> InvyStatus {
    guard(|| {
        let t = &non_null(traj, "trajectory")?.inner;
        let dst = out_slice(out, len, t.time_grid.len(), "out")?;
        for (d, (_, w)) in dst.iter_mut().zip(population_inversion(t)) {
            *d = w;
        }
        Ok(())
    })
}

/// Total norm at every time point.
#[no_mangle]
pub extern "C" fn invy_norm_history(traj: *const InvyTrajectory, out: *mut f64, len: usize) -> InvyStatus {
    guard(|| {
        let t = &non_null(traj, "trajectory")?.inner;
        let dst = out_slice(out, len, t.norm_history.len(), "out")?;
        dst.copy_from_slice(&t.norm_history);
        Ok(())
    })
}

/// Level populations P_1..P_5, five values per time point, row-major.
#[no_mangle]
pub extern "C" fn invy_level_populations(traj: *const InvyTrajectory, out: *mut f64, len: usize) -> InvyStatus {
    guard(|| {
        let t = &non_null(traj, "trajectory")?.inner;
        let dst = out_slice(out, len, 5 * t.time_grid.len(), "out")?;
        for (row, (_, p)) in dst.chunks_exact_mut(5).zip(level_populations(t)) {
            row.copy_from_slice(&p);
        }
        Ok(())
    })
}

/// P(θ) at time point `index` on `grid` angles spanning [−π, π]; `theta`
/// may be null.
#[no_mangle]
pub extern "C" fn invy_phase_distribution(
    traj: *const InvyTrajectory,
    index: usize,
    grid: usize,
    theta: *mut f64,
    p: *mut f64,
) -> InvyStatus {
    guard(|| {
        let t = &non_null(traj, "trajectory")?.inner;
        if index >= t.time_grid.len() {
            return Err(Failure(InvyStatus::InvalidArgument, format!("time index {index} out of range")));
        }
        let rho = reduced_field_density_at(t, index)?;
        let pd = phase_distribution(&rho, grid)?;
        out_slice(p, grid, grid, "p")?.copy_from_slice(&pd.p);
        if !theta.is_null() {
            out_slice(theta, grid, grid, "theta")?.copy_from_slice(&pd.theta_grid);
        }
        Ok(())
    })
}

/// Phase variance at every time point.
#[no_mangle]
pub extern "C" fn invy_phase_variance(traj: *const InvyTrajectory, out: *mut f64, len: usize) -> InvyStatus {
    guard(|| {
        let t = &non_null(traj, "trajectory")?.inner;
        let dst = out_slice(out, len, t.time_grid.len(), "out")?;
        for (i, d) in dst.iter_mut().enumerate() {
            *d = phase_variance(&reduced_field_density_at(t, i)?);
        }
        Ok(())
    })
}

/// Real roots, ascending, of ζ⁴ + a[0]ζ³ + a[1]ζ² + a[2]ζ + a[3].
#[no_mangle]
pub extern "C" fn invy_solve_quartic(a: *const f64, roots: *mut f64) -> InvyStatus {
    guard(|| {
        if a.is_null() {
            return Err(Failure(InvyStatus::NullPointer, "a is null".into()));
        }
        // SAFETY: the caller passes four readable doubles.
        let coeffs: [f64; 4] = unsafe { ptr::read(a as *const [f64; 4]) };
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Failure(InvyStatus::InvalidArgument, "coefficients must be finite".into()));
        }
        let r = invy::quartic::solve_companion(coeffs)?;
        out_slice(roots, 4, 4, "roots")?.copy_from_slice(&r.zeta);
        Ok(())
    })
}

/// Copy the calling thread's last error message (NUL-terminated, truncated
/// to fit) into `buf`. Returns the full message length excluding the NUL,
/// so a return value ≥ `len` means truncation.
#[no_mangle]
pub extern "C" fn invy_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: the caller guarantees `len` writable bytes at `buf`.
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn invy_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}
