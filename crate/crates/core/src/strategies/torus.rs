//! Covering-space strategies on the flat torus.
//!
//! Cops keep virtual positions ("lifts") in ℝⁿ, plan there, and play the
//! projections. The robber's lift follows his shortest moves.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::engine::{AuxRecord, CopStrategy, CopView};
use crate::error::{misuse, Error, Result};
use crate::linalg;
use crate::spaces::torus_project;
use crate::spaces::{Point, Space, SpaceKind};

/// Rational point near `x`: per coordinate the smallest denominator
/// `q ≤ max_den` with |xᵢ − pᵢ/qᵢ| ≤ `tol`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    /// Least common multiple of the denominators.
    pub lcm: u64,
}

impl RationalPoint {
    pub fn value(&self) -> Vec<f64> {
        self.p.iter().zip(&self.q).map(|(p, q)| *p as f64 / *q as f64).collect()
    }

    /// Q·(p/q), an integer vector.
    pub fn scaled(&self) -> Vec<f64> {
        self.p.iter().zip(&self.q).map(|(p, q)| (p * (self.lcm / q)) as f64).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn rational_alignment(x: &[f64], tol: f64, max_den: u64) -> Result<RationalPoint> {
    let mut p = Vec::with_capacity(x.len());
    let mut q = Vec::with_capacity(x.len());
    for &xi in x {
        if !(0.0..=1.0).contains(&xi) {
            return misuse(format!("coordinate {xi} outside [0, 1]"));
        }
        let found = (1..=max_den.max(1)).find_map(|qi| {
            let pi = (xi * qi as f64).round();
            ((xi - pi / qi as f64).abs() <= tol + 1e-12).then_some((pi as u64, qi))
        });
        let (pi, qi) = found.ok_or_else(|| {
            Error::SearchFailure(format!("no fraction with denominator <= {max_den} near {xi}"))
        })?;
        let g = gcd(pi, qi).max(1);
        p.push(pi / g);
        q.push(qi / g);
    }
    let lcm = q.iter().fold(1u64, |acc, &qi| acc / gcd(acc, qi) * qi);
    Ok(RationalPoint { p, q, lcm })
}

fn project(space: &Space, lift: &[f64]) -> Result<Point> {
    let p = torus_project(lift)?;
    Ok(Point { space: *space, coords: p.coords })
}

fn check_origin(view: &CopView<'_>) -> Result<()> {
    let o = vec![0.0; view.space.dim];
    if view.cops.iter().any(|c| view.space.dist(&c.coords, &o) > 1e-12) {
        return misuse("torus cops must start at the origin");
    }
    Ok(())
}

/// Two cops sandwiching the robber on a line in ℝⁿ: cop `A` above him along
/// `axis`, cop `B` below. Each cop mirrors the robber's cross-axis motion
/// tilted by an angle α toward him and spends the rest closing the axial
/// gap, keeping its cross offset at most ε/2.
#[derive(Debug, Clone)]
pub struct Pincer {
    pub axis: Vec<f64>,
    pub epsilon: f64,
}

impl Pincer {
    /// Tilt angle for axial gap `g` and cross offset `o`:
    /// t = (g² − e²)/(2e), α = atan(g/t), with e = ε/2 − o.
    pub fn tilt(&self, g: f64, o: f64) -> f64 {
        let e = 0.5 * self.epsilon - o;
        if e <= 0.0 {
            return 0.0;
        }
        let t = (g * g - e * e) / (2.0 * e);
        if t <= 0.0 {
            FRAC_PI_2
        } else {
            (g / t).atan()
        }
    }

    /// New lift of one cop. `sign` is +1 for the cop above the robber.
    pub fn cop_move(&self, cop: &[f64], r_from: &[f64], r_to: &[f64], sign: f64, budget: f64) -> Vec<f64> {
        let e = &self.axis;
        let delta = linalg::sub(r_to, r_from);
        let dz = linalg::dot(&delta, e);
        let d_perp = linalg::axpy(&delta, -dz, e);
        let tx = linalg::norm(&d_perp).min(budget);
        let rel = linalg::sub(cop, r_to);
        let gap = sign * linalg::dot(&rel, e);
        let off_vec = |v: &[f64]| {
            let z = linalg::dot(v, e);
            linalg::axpy(v, -z, e)
        };
        let o_now = linalg::norm(&off_vec(&linalg::sub(cop, r_from)));
        let limit = 0.5 * self.epsilon;
        let build = |alpha: f64| {
            let cross = linalg::scale(&d_perp, alpha.cos());
            let axial_budget = (budget * budget - tx * tx * alpha.cos().powi(2)).max(0.0).sqrt();
            // close the gap, or step back to the robber's level if it slipped past
            let axial = if gap >= 0.0 { axial_budget.min(gap) } else { gap.max(-axial_budget) };
            let moved = linalg::add(cop, &cross);
            linalg::axpy(&moved, -sign * axial, e)
        };
        let offset_after = |c: &[f64]| linalg::norm(&off_vec(&linalg::sub(c, r_to)));
        let mut alpha = self.tilt(gap.max(0.0), o_now);
        let mut c = build(alpha);
        if offset_after(&c) > limit && alpha > 0.0 {
            let (mut lo, mut hi) = (0.0, alpha);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if offset_after(&build(mid)) <= limit {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            alpha = lo;
            c = build(alpha);
        }
        c
    }
}

/// Two cops on Tⁿ: align the robber on a segment between two lifts of the
/// origin, then play the pincer in the cover.
pub struct TorusTwoCopLift {
    epsilon: f64,
    tol: Option<f64>,
    max_den: Option<u64>,
    state: Option<LiftState>,
}

#[derive(Debug, Clone)]
struct LiftState {
    robber: Vec<f64>,
    cops: [Vec<f64>; 2],
    pincer: Option<Pincer>,
    /// Which cop is above the robber along the axis.
    upper: usize,
    /// Some cop has been within ε; the pincer's job is done.
    reached: bool,
    /// The robber got past a cop after `reached`: plain pursuit in the cover.
    chase: bool,
}

impl TorusTwoCopLift {
    pub fn new(epsilon: f64, tol: Option<f64>, max_den: Option<u64>) -> Result<Self> {
        if !(epsilon > 0.0) {
            return misuse("pincer epsilon must be positive");
        }
        Ok(TorusTwoCopLift { epsilon, tol, max_den, state: None })
    }

    fn align(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        check_origin(view)?;
        let space = view.space;
        let n = space.dim;
        let r1 = &view.robber_move.destination;
        let b = view.budget;
        let tol = self.tol.unwrap_or(b / (n as f64).sqrt());
        let max_den = self.max_den.unwrap_or((2.0 / b).ceil() as u64);
        let rat = rational_alignment(&r1.coords, tol, max_den)?;
        let pq = rat.value();
        let shift = linalg::sub(&r1.coords, &pq);
        let c1 = shift.clone();
        let c2 = linalg::add(&rat.scaled(), &shift);
        log::debug!("aligned on p/q = {:?}/{:?}, Q = {}", rat.p, rat.q, rat.lcm);
        let pincer = linalg::normalized(&linalg::sub(&c2, &c1))
            .map(|axis| Pincer { axis, epsilon: self.epsilon });
        self.state = Some(LiftState {
            robber: r1.coords.clone(),
            cops: [c1.clone(), c2.clone()],
            pincer,
            upper: 1,
            reached: false,
            chase: false,
        });
        if pq.iter().all(|v| *v == 0.0) {
            // the robber is within reach of the origin itself
            return Ok(vec![r1.clone(), r1.clone()]);
        }
        Ok(vec![project(space, &c1)?, project(space, &c2)?])
    }
}

impl CopStrategy for TorusTwoCopLift {
    fn name(&self) -> &'static str {
        "torus_two_cop_lift"
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        if view.space.kind != SpaceKind::Torus || view.cops.len() != 2 {
            return misuse("torus_two_cop_lift needs two cops on a torus");
        }
        let Some(st) = self.state.as_mut() else {
            return self.align(view);
        };
        let space = view.space;
        let rm = view.robber_move;
        let delta = Space::torus_delta(&rm.origin.coords, &rm.destination.coords);
        let r_to = linalg::add(&st.robber, &delta);
        let mut lifts = Vec::with_capacity(2);
        let mut broken = false;
        for i in 0..2 {
            let c = &st.cops[i];
            let next = if linalg::dist(c, &r_to) <= view.budget {
                r_to.clone()
            } else if let (Some(p), false) = (&st.pincer, st.chase) {
                let sign = if i == st.upper { 1.0 } else { -1.0 };
                let v = p.cop_move(c, &st.robber, &r_to, sign, view.budget);
                broken |= sign * linalg::dot(&linalg::sub(&v, &r_to), &p.axis) < -1e-9;
                v
            } else {
                let d = linalg::dist(c, &r_to);
                linalg::axpy(c, view.budget / d, &linalg::sub(&r_to, c))
            };
            lifts.push(next);
        }
        if broken {
            if !st.reached {
                return Err(Error::StrategyMisuse("pincer sandwich broken".into()));
            }
            log::debug!("robber slipped past the pincer after it reached ε; chasing");
            st.chase = true;
        }
        let mut out = Vec::with_capacity(2);
        for (i, next) in lifts.into_iter().enumerate() {
            st.reached |= linalg::dist(&next, &r_to) <= self.epsilon;
            out.push(if next == r_to { rm.destination.clone() } else { project(space, &next)? });
            st.cops[i] = next;
        }
        st.robber = r_to;
        Ok(out)
    }

    fn aux(&self) -> Option<AuxRecord> {
        let st = self.state.as_ref()?;
        Some(AuxRecord {
            robber: Some(st.robber.clone()),
            cops: st.cops.to_vec(),
            axis: st.pincer.as_ref().map(|p| p.axis.clone()),
            phase: Some(if st.chase { "chase" } else { "pincer" }.into()),
        })
    }
}

/// Virtual starting lifts of the three cops on T².
pub const THREE_COP_LIFTS: [[f64; 2]; 3] = [[0.0, -100.0], [200.0, 100.0], [-200.0, 100.0]];

/// Bounds on the angle between any two cop directions seen from the robber.
pub const RAY_ANGLE_MIN: f64 = 10.0 * PI / 18.0;
pub const RAY_ANGLE_MAX: f64 = 14.0 * PI / 18.0;

/// Guaranteed decrease factor of Σ d(r, cᵢ) per unit of agility.
pub fn three_cop_decrease_factor() -> f64 {
    2.0 * (7.0 * PI / 18.0).cos()
}

/// Reflection of `y` across the perpendicular bisector of `a`–`b`.
pub fn reflect_across_bisector(y: &[f64], a: &[f64], b: &[f64]) -> Vec<f64> {
    let u = linalg::normalized(&linalg::sub(b, a)).expect("distinct points");
    let m = linalg::scale(&linalg::add(a, b), 0.5);
    let s = linalg::dot(&linalg::sub(y, &m), &u);
    linalg::axpy(y, -2.0 * s, &u)
}

/// Sum of cover distances from the robber lift to the cop lifts.
pub fn potential(robber: &[f64], cops: &[Vec<f64>]) -> f64 {
    cops.iter().map(|c| linalg::dist(robber, c)).sum()
}

/// Pairwise angles between the directions robber→cop.
pub fn ray_angles(robber: &[f64], cops: &[Vec<f64>]) -> Vec<f64> {
    let us: Vec<Vec<f64>> = cops
        .iter()
        .filter_map(|c| linalg::normalized(&linalg::sub(c, robber)))
        .collect();
    let mut out = Vec::new();
    for i in 0..us.len() {
        for j in i + 1..us.len() {
            out.push(linalg::dot(&us[i], &us[j]).clamp(-1.0, 1.0).acos());
        }
    }
    out
}

/// Three cops on T². A cop the robber moves away from copies his move; a
/// cop he approaches jumps to the mirror image of his new position in their
/// bisector. Leftover budget goes straight at him.
pub struct TorusThreeCopCatch {
    state: Option<(Vec<f64>, Vec<Vec<f64>>)>,
}

impl TorusThreeCopCatch {
    pub fn new() -> Self {
        TorusThreeCopCatch { state: None }
    }
}

impl Default for TorusThreeCopCatch {
    fn default() -> Self {
        Self::new()
    }
}

impl CopStrategy for TorusThreeCopCatch {
    fn name(&self) -> &'static str {
        "torus_three_cop_catch"
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        let space = view.space;
        if space.kind != SpaceKind::Torus || space.dim != 2 || view.cops.len() != 3 {
            return misuse("torus_three_cop_catch needs three cops on T^2");
        }
        let rm = view.robber_move;
        if self.state.is_none() {
            check_origin(view)?;
            let lifts = THREE_COP_LIFTS.iter().map(|c| c.to_vec()).collect();
            self.state = Some((rm.origin.coords.clone(), lifts));
        }
        let (robber, cops) = self.state.as_mut().expect("set above");
        let delta = Space::torus_delta(&rm.origin.coords, &rm.destination.coords);
        let step = linalg::norm(&delta);
        let r_to = linalg::add(robber, &delta);
        let b = view.budget;
        let mut out = Vec::with_capacity(3);
        for c in cops.iter_mut() {
            if linalg::dist(c, &r_to) <= b {
                *c = r_to.clone();
                out.push(rm.destination.clone());
                continue;
            }
            let u = linalg::normalized(&linalg::sub(c, robber)).expect("cop lift differs from robber lift");
            let mut next = if linalg::dot(&delta, &u) <= 0.0 {
                linalg::add(c, &delta)
            } else {
                reflect_across_bisector(&r_to, robber, c)
            };
            let left = (b - step).max(0.0);
            let gap = linalg::dist(&next, &r_to);
            if left > 0.0 && gap > 0.0 {
                next = linalg::axpy(&next, left.min(gap) / gap, &linalg::sub(&r_to, &next));
            }
            *c = next;
            out.push(project(space, c)?);
        }
        *robber = r_to;
        if cops.iter().all(|c| linalg::dist(c, robber) > 0.0) {
            for a in ray_angles(robber, cops) {
                if !(RAY_ANGLE_MIN - 1e-6..=RAY_ANGLE_MAX + 1e-6).contains(&a) {
                    return Err(Error::InternalInvariant(format!(
                        "angle {a} between cop rays left the envelope"
                    )));
                }
            }
        }
        Ok(out)
    }

    fn aux(&self) -> Option<AuxRecord> {
        let (robber, cops) = self.state.as_ref()?;
        Some(AuxRecord { robber: Some(robber.clone()), cops: cops.clone(), ..Default::default() })
    }
}
