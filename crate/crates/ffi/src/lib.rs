//! C ABI over the geocops engine.
//!
//! Games live behind an opaque [`GcGame`] handle. Every fallible call
//! returns a [`GcStatus`]; on anything but `GC_STATUS_OK` the message is
//! available from [`gc_last_error_message`] on the same thread until the
//! next failing call. Strings returned by the library are freed with
//! [`gc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use geocops::config::{RunConfig, Session};
use geocops::engine::OutcomeKind;
use geocops::{Error, Space, SpaceKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    InvalidArgument = 1,
    IllegalMove = 2,
    StrategyMisuse = 3,
    AmbiguousLift = 4,
    UndefinedRay = 5,
    SearchFailure = 6,
    InternalInvariant = 7,
    Config = 8,
    Parse = 9,
    Io = 10,
    NullPointer = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcOutcome {
    Running = 0,
    Caught = 1,
    WithinEpsilon = 2,
    MaxSteps = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcSpaceKind {
    Ball = 0,
    Sphere = 1,
    Hemisphere = 2,
    Torus = 3,
    EllTwoBox = 4,
}

/// Snapshot of a game in progress.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GcStatusReport {
    pub outcome: GcOutcome,
    pub steps: u64,
    /// Running value: the infimum of cop-robber distances so far.
    pub value: f64,
    /// Index of the capturing cop, or -1.
    pub capturing_cop: i64,
}

/// Opaque game handle.
pub struct GcGame {
    session: Session,
    outcome: GcOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GcStatus {
    match e {
        Error::InvalidArgument(_) => GcStatus::InvalidArgument,
        Error::IllegalMove { .. } => GcStatus::IllegalMove,
        Error::StrategyMisuse(_) => GcStatus::StrategyMisuse,
        Error::AmbiguousLift { .. } => GcStatus::AmbiguousLift,
        Error::UndefinedRay => GcStatus::UndefinedRay,
        Error::SearchFailure(_) => GcStatus::SearchFailure,
        Error::InternalInvariant(_) => GcStatus::InternalInvariant,
        Error::Config(_) => GcStatus::Config,
        Error::Parse(_) => GcStatus::Parse,
        Error::Io(_) => GcStatus::Io,
    }
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), (GcStatus, String)>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("panic: {msg}"));
            GcStatus::Panic
        }
    }
}

fn core(e: Error) -> (GcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (GcStatus, String) {
    (GcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (GcStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (GcStatus::InvalidArgument, format!("{what} is not UTF-8: {e}")))
}

fn outcome_of(kind: OutcomeKind) -> GcOutcome {
    match kind {
        OutcomeKind::Caught => GcOutcome::Caught,
        OutcomeKind::WithinEpsilon => GcOutcome::WithinEpsilon,
        OutcomeKind::MaxSteps => GcOutcome::MaxSteps,
    }
}

fn copy_coords(src: &[f64], buf: *mut f64, len: usize, needed: *mut usize) -> Result<(), (GcStatus, String)> {
    if !needed.is_null() {
        // SAFETY: caller passes a writable usize or null.
        unsafe { *needed = src.len() };
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    if len < src.len() {
        return Err((GcStatus::BufferTooSmall, format!("need {} coordinates, got {len}", src.len())));
    }
    // SAFETY: buf holds at least len >= src.len() doubles.
    unsafe { ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len()) };
    Ok(())
}

/// Message of the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a run configuration and sets up a game.
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out` a writable
/// pointer. The handle written to `out` must be released with
/// [`gc_game_free`].
#[no_mangle]
pub unsafe extern "C" fn gc_game_new(config_json: *const c_char, out: *mut *mut GcGame) -> GcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let json = read_str(config_json, "config_json")?;
        let config = RunConfig::from_json(json).map_err(core)?;
        let session = config.start().map_err(core)?;
        *out = Box::into_raw(Box::new(GcGame { session, outcome: GcOutcome::Running }));
        Ok(())
    })
}

/// Releases a game. NULL is ignored.
///
/// # Safety
/// `game` must come from [`gc_game_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gc_game_free(game: *mut GcGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Plays one step. `advanced` (may be NULL) is set to false when the game
/// was already over.
///
/// # Safety
/// `game` must be a live handle from [`gc_game_new`].
#[no_mangle]
pub unsafe extern "C" fn gc_game_step(game: *mut GcGame, advanced: *mut bool) -> GcStatus {
    guard(|| {
        let g = game.as_mut().ok_or_else(|| null("game"))?;
        let moved = g.session.step().map_err(core)?;
        if !advanced.is_null() {
            *advanced = moved;
        }
        Ok(())
    })
}

/// Plays to the end (capture, epsilon or step limit) and records the
/// outcome. `outcome` may be NULL.
///
/// # Safety
/// `game` must be a live handle; `outcome` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn gc_game_finish(game: *mut GcGame, outcome: *mut GcOutcome) -> GcStatus {
    guard(|| {
        let g = game.as_mut().ok_or_else(|| null("game"))?;
        let o = g.session.finish().map_err(core)?;
        g.outcome = outcome_of(o.result);
        if !outcome.is_null() {
            *outcome = g.outcome;
        }
        Ok(())
    })
}

/// Current step count, value and outcome. The outcome stays
/// `GC_OUTCOME_RUNNING` until [`gc_game_finish`] is called.
///
/// # Safety
/// `game` must be a live handle and `report` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_game_status(game: *const GcGame, report: *mut GcStatusReport) -> GcStatus {
    guard(|| {
        let g = game.as_ref().ok_or_else(|| null("game"))?;
        let r = report.as_mut().ok_or_else(|| null("report"))?;
        let s = &g.session.game.state;
        *r = GcStatusReport {
            outcome: g.outcome,
            steps: s.step,
            value: s.value,
            capturing_cop: s.capturing_cop.map_or(-1, |i| i as i64),
        };
        Ok(())
    })
}

/// Number of cops in the game, or 0 for a NULL handle.
///
/// # Safety
/// `game` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn gc_game_cop_count(game: *const GcGame) -> usize {
    game.as_ref().map_or(0, |g| g.session.game.state.cops.len())
}

/// Copies the robber's coordinates into `buf`. `needed` (may be NULL)
/// receives the coordinate count even when the buffer is too small.
///
/// # Safety
/// `game` must be a live handle and `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gc_game_robber(
    game: *const GcGame,
    buf: *mut f64,
    len: usize,
    needed: *mut usize,
) -> GcStatus {
    guard(|| {
        let g = game.as_ref().ok_or_else(|| null("game"))?;
        copy_coords(&g.session.game.state.robber.coords, buf, len, needed)
    })
}

/// Copies cop `index`'s coordinates into `buf`, as for [`gc_game_robber`].
///
/// # Safety
/// `game` must be a live handle and `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gc_game_cop(
    game: *const GcGame,
    index: usize,
    buf: *mut f64,
    len: usize,
    needed: *mut usize,
) -> GcStatus {
    guard(|| {
        let g = game.as_ref().ok_or_else(|| null("game"))?;
        let cops = &g.session.game.state.cops;
        let c = cops.get(index).ok_or_else(|| {
            (GcStatus::InvalidArgument, format!("cop index {index} out of range ({} cops)", cops.len()))
        })?;
        copy_coords(&c.coords, buf, len, needed)
    })
}

/// Trace of the game so far as JSON, or NULL on error. Free with
/// [`gc_string_free`].
///
/// # Safety
/// `game` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_game_trace_json(game: *const GcGame) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let g = game.as_ref().ok_or_else(|| null("game"))?;
        let json = g.session.game.trace().to_json();
        out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    });
    out
}

/// Plays a whole configuration and writes the trace JSON to `trace_out`
/// (free with [`gc_string_free`]).
///
/// # Safety
/// `config_json` must be NUL-terminated and `trace_out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_simulate(config_json: *const c_char, trace_out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        if trace_out.is_null() {
            return Err(null("trace_out"));
        }
        *trace_out = ptr::null_mut();
        let json = read_str(config_json, "config_json")?;
        let trace = RunConfig::from_json(json).and_then(|c| c.simulate()).map_err(core)?;
        *trace_out = CString::new(trace.to_json()).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Intrinsic distance between two points of a space given by raw
/// coordinates (n+1 for spheres and hemispheres, n otherwise).
///
/// # Safety
/// `a` and `b` must each hold `len` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_distance(
    kind: GcSpaceKind,
    dim: usize,
    a: *const f64,
    b: *const f64,
    len: usize,
    out: *mut f64,
) -> GcStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return Err(null("a, b or out"));
        }
        let kind = match kind {
            GcSpaceKind::Ball => SpaceKind::Ball,
            GcSpaceKind::Sphere => SpaceKind::Sphere,
            GcSpaceKind::Hemisphere => SpaceKind::Hemisphere,
            GcSpaceKind::Torus => SpaceKind::Torus,
            GcSpaceKind::EllTwoBox => SpaceKind::EllTwoBox,
        };
        let space = Space::new(kind, dim).map_err(core)?;
        let a = space.point(std::slice::from_raw_parts(a, len).to_vec()).map_err(core)?;
        let b = space.point(std::slice::from_raw_parts(b, len).to_vec()).map_err(core)?;
        *out = geocops::spaces::distance(&space, &a, &b).map_err(core)?;
        Ok(())
    })
}
