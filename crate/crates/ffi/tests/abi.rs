use std::ffi::{CStr, CString};
use std::ptr;

use geocops_ffi::*;

const DISK: &str = r#"{
  "schema": "geocops.run/1",
  "space": {"kind": "ball", "dim": 2},
  "k": 1,
  "initial": {"robber": [0.9, 0.0], "cops": [[0.0, 0.0]]},
  "robber": {"kind": "boundary_circler"},
  "cops": {"kind": "radial"},
  "max_steps": 100000,
  "epsilon": 0.01,
  "seed": 1
}"#;

fn last_error() -> String {
    let p = gc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn new_game(json: &str) -> (GcStatus, *mut GcGame) {
    let c = CString::new(json).unwrap();
    let mut g = ptr::null_mut();
    let st = unsafe { gc_game_new(c.as_ptr(), &mut g) };
    (st, g)
}

#[test]
fn stepped_game_matches_simulate() {
    let (st, g) = new_game(DISK);
    assert_eq!(st, GcStatus::Ok);
    assert_eq!(unsafe { gc_game_cop_count(g) }, 1);
    let mut advanced = false;
    let mut steps = 0;
    loop {
        assert_eq!(unsafe { gc_game_step(g, &mut advanced) }, GcStatus::Ok);
        if !advanced {
            break;
        }
        steps += 1;
    }
    let mut outcome = GcOutcome::Running;
    assert_eq!(unsafe { gc_game_finish(g, &mut outcome) }, GcStatus::Ok);
    assert_eq!(outcome, GcOutcome::WithinEpsilon);

    let mut r = GcStatusReport { outcome: GcOutcome::Running, steps: 0, value: 0.0, capturing_cop: 0 };
    assert_eq!(unsafe { gc_game_status(g, &mut r) }, GcStatus::Ok);
    assert_eq!(r.steps, steps);
    assert!(r.value <= 0.01);
    assert_eq!(r.capturing_cop, -1);

    let stepped = unsafe { gc_game_trace_json(g) };
    let stepped_json = unsafe { CStr::from_ptr(stepped) }.to_str().unwrap().to_owned();
    let cfg = CString::new(DISK).unwrap();
    let mut whole = ptr::null_mut();
    assert_eq!(unsafe { gc_simulate(cfg.as_ptr(), &mut whole) }, GcStatus::Ok);
    assert_eq!(stepped_json, unsafe { CStr::from_ptr(whole) }.to_str().unwrap());
    unsafe {
        gc_string_free(stepped);
        gc_string_free(whole);
        gc_game_free(g);
    }
}

#[test]
fn coordinates_and_buffer_sizes() {
    let (_, g) = new_game(DISK);
    let mut buf = [0.0f64; 2];
    let mut needed = 0usize;
    assert_eq!(unsafe { gc_game_robber(g, buf.as_mut_ptr(), 2, &mut needed) }, GcStatus::Ok);
    assert_eq!(needed, 2);
    assert_eq!(buf, [0.9, 0.0]);
    assert_eq!(unsafe { gc_game_cop(g, 0, buf.as_mut_ptr(), 1, &mut needed) }, GcStatus::BufferTooSmall);
    assert_eq!(needed, 2);
    assert_eq!(unsafe { gc_game_cop(g, 3, buf.as_mut_ptr(), 2, ptr::null_mut()) }, GcStatus::InvalidArgument);
    assert!(last_error().contains("out of range"));
    unsafe { gc_game_free(g) };
}

#[test]
fn errors_map_to_codes() {
    let (st, g) = new_game(&DISK.replace("\"k\": 1", "\"k\": 0"));
    assert_eq!(st, GcStatus::Config);
    assert!(g.is_null());
    // malformed JSON is a config problem too
    let (st, _) = new_game("{not json");
    assert_eq!(st, GcStatus::Config);
    assert_eq!(unsafe { gc_game_step(ptr::null_mut(), ptr::null_mut()) }, GcStatus::NullPointer);
    assert!(last_error().contains("game"));

    // a strict scripted jump past the budget is an illegal move
    let jump = DISK.replace(r#"{"kind": "boundary_circler"}"#, r#"{"kind": "scripted", "moves": [[-0.5, 0.0]]}"#);
    let (st, g) = new_game(&jump);
    assert_eq!(st, GcStatus::Ok);
    assert_eq!(unsafe { gc_game_step(g, ptr::null_mut()) }, GcStatus::IllegalMove);
    assert!(last_error().contains("robber"));
    unsafe { gc_game_free(g) };
    unsafe { gc_game_free(ptr::null_mut()) };
}

#[test]
fn distance_on_each_space() {
    let mut d = 0.0;
    let a = [0.9, 0.1];
    let b = [0.1, 0.1];
    assert_eq!(unsafe { gc_distance(GcSpaceKind::Torus, 2, a.as_ptr(), b.as_ptr(), 2, &mut d) }, GcStatus::Ok);
    assert!((d - 0.2).abs() < 1e-12);
    let n = [0.0, 0.0, 1.0];
    let e = [1.0, 0.0, 0.0];
    assert_eq!(unsafe { gc_distance(GcSpaceKind::Sphere, 2, n.as_ptr(), e.as_ptr(), 3, &mut d) }, GcStatus::Ok);
    assert!((d - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    let out = [2.0, 0.0];
    assert_eq!(
        unsafe { gc_distance(GcSpaceKind::Ball, 2, out.as_ptr(), b.as_ptr(), 2, &mut d) },
        GcStatus::InvalidArgument
    );
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(gc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
