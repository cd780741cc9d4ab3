//! Direction sampling in tangent spaces.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg;
use crate::spaces::Point;

/// Orthonormal basis of the tangent space at `p` (in ambient coordinates).
pub fn tangent_basis(p: &Point) -> Vec<Vec<f64>> {
    let m = p.coords.len();
    if p.space.is_spherical() {
        let mut vs = vec![p.coords.clone()];
        vs.extend((0..m).map(|i| linalg::basis(m, i)));
        linalg::gram_schmidt(&vs).into_iter().skip(1).collect()
    } else {
        (0..m).map(|i| linalg::basis(m, i)).collect()
    }
}

/// `count` unit tangent directions at `p`. In one and two tangent
/// dimensions the set is evenly spaced (rotated by a random offset in 2-D);
/// otherwise directions are drawn uniformly from the unit sphere.
pub fn sample(p: &Point, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let basis = tangent_basis(p);
    let count = count.max(1);
    match basis.len() {
        0 => Vec::new(),
        1 => vec![basis[0].clone(), linalg::scale(&basis[0], -1.0)],
        2 => {
            let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            (0..count)
                .map(|j| {
                    let a = offset + std::f64::consts::TAU * j as f64 / count as f64;
                    linalg::add(&linalg::scale(&basis[0], a.cos()), &linalg::scale(&basis[1], a.sin()))
                })
                .collect()
        }
        _ => (0..count)
            .map(|_| loop {
                let v: Vec<f64> = basis
                    .iter()
                    .map(|b| (gaussian(rng), b))
                    .fold(vec![0.0; p.coords.len()], |acc, (g, b)| linalg::axpy(&acc, g, b));
                if let Some(u) = linalg::normalized(&v) {
                    break u;
                }
            })
            .collect(),
    }
}

/// Standard normal draw (Box–Muller).
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Space;
    use rand::SeedableRng;

    #[test]
    fn tangent_vectors_are_orthogonal_to_sphere_point() {
        let s = Space::sphere(2);
        let p = s.point(vec![0.6, 0.0, 0.8]).unwrap();
        let b = tangent_basis(&p);
        assert_eq!(b.len(), 2);
        for v in &b {
            assert!(linalg::dot(v, &p.coords).abs() < 1e-12);
            assert!((linalg::norm(v) - 1.0).abs() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ds = sample(&p, 16, &mut rng);
        assert_eq!(ds.len(), 16);
        assert!(ds.iter().all(|d| linalg::dot(d, &p.coords).abs() < 1e-12));
    }

    #[test]
    fn high_dimensional_sampling_is_unit() {
        let b = Space::ball(4);
        let p = b.point(vec![0.0; 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in sample(&p, 10, &mut rng) {
            assert!((linalg::norm(&d) - 1.0).abs() < 1e-12);
        }
    }
}
