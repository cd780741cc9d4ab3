use geocops::spaces::{move_toward, shortest_geodesic, Point, Space};
use proptest::prelude::*;

const EPS: f64 = 1e-9;

fn spaces() -> impl Strategy<Value = Space> {
    prop_oneof![
        (1usize..=4).prop_map(Space::ball),
        (1usize..=3).prop_map(Space::sphere),
        (1usize..=3).prop_map(Space::hemisphere),
        (1usize..=4).prop_map(Space::torus),
        (1usize..=5).prop_map(Space::ell_two_box),
    ]
}

/// Maps a raw cube sample into the space.
fn embed(space: &Space, raw: &[f64]) -> Point {
    use geocops::SpaceKind::*;
    let m = space.ambient_dim();
    let mut x: Vec<f64> = raw[..m].to_vec();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    match space.kind {
        Ball => {
            if norm > 1.0 {
                x.iter_mut().for_each(|v| *v /= norm);
            }
        }
        Sphere | Hemisphere => {
            if norm < 1e-3 {
                x = vec![0.0; m];
                x[m - 1] = 1.0;
            } else {
                x.iter_mut().for_each(|v| *v /= norm);
            }
            if space.kind == Hemisphere {
                x[m - 1] = x[m - 1].abs();
            }
        }
        Torus => x.iter_mut().for_each(|v| *v = v.rem_euclid(1.0)),
        EllTwoBox => {
            for (i, v) in x.iter_mut().enumerate() {
                *v = v.clamp(-1.0, 1.0) / (i + 1) as f64;
            }
            let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1.0 {
                x.iter_mut().for_each(|v| *v /= n);
            }
        }
    }
    space.point(x).expect("embedded point is valid")
}

fn raw() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5f64..1.5, 6)
}

proptest! {
    #[test]
    fn metric_axioms(space in spaces(), a in raw(), b in raw(), c in raw()) {
        let (p, q, r) = (embed(&space, &a), embed(&space, &b), embed(&space, &c));
        let d = |x: &Point, y: &Point| space.dist(&x.coords, &y.coords);
        prop_assert!(d(&p, &p) <= EPS);
        prop_assert!((d(&p, &q) - d(&q, &p)).abs() <= EPS);
        prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + EPS);
        prop_assert!(d(&p, &q) <= space.diameter() + EPS);
    }

    #[test]
    fn move_toward_respects_budget(space in spaces(), a in raw(), b in raw(), t in 0.0f64..1.0) {
        let (p, q) = (embed(&space, &a), embed(&space, &b));
        let m = move_toward(&space, &p, &q, t).unwrap();
        prop_assert!(space.contains(&m.coords));
        prop_assert!(space.dist(&p.coords, &m.coords) <= t + EPS);
        // moving along a geodesic never increases the distance to the target
        let before = space.dist(&p.coords, &q.coords);
        let after = space.dist(&m.coords, &q.coords);
        prop_assert!((before - t).max(0.0) - EPS <= after && after <= before + EPS);
    }

    #[test]
    fn geodesic_midpoint_splits_length(space in spaces(), a in raw(), b in raw(), s in 0.0f64..=1.0) {
        let (p, q) = (embed(&space, &a), embed(&space, &b));
        let g = match shortest_geodesic(&space, &p, &q) {
            Ok(g) => g,
            // antipodal pairs on the sphere have no unique geodesic
            Err(_) => return Ok(()),
        };
        let x = g.evaluate(s);
        let dp = space.dist(&p.coords, &x.coords);
        let dq = space.dist(&x.coords, &q.coords);
        prop_assert!((dp + dq - g.length).abs() <= 1e-7);
        prop_assert!((dp - s * g.length).abs() <= 1e-7);
    }

    #[test]
    fn canonicalize_is_idempotent(space in spaces(), a in raw()) {
        let p = embed(&space, &a);
        let once = space.canonicalize(p.coords.clone());
        let twice = space.canonicalize(once.clone());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn step_in_direction_is_within_length(space in spaces(), a in raw(), dir in raw(), t in 0.0f64..0.8) {
        let p = embed(&space, &a);
        let m = space.ambient_dim();
        let d = &dir[..m];
        let n = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let d: Vec<f64> = d.iter().map(|v| v / n).collect();
        let x = space.step_in_direction(&p, &d, t);
        prop_assert!(space.contains(&x.coords));
        prop_assert!(space.dist(&p.coords, &x.coords) <= t + 1e-9);
    }
}
