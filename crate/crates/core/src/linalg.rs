//! Small dense-vector helpers over `f64` slices.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Unit vector in the direction of `a`, or `None` when `a` is (numerically) zero.
pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    if n > 1e-300 && n.is_finite() {
        Some(scale(a, 1.0 / n))
    } else {
        None
    }
}

/// Component of `a` orthogonal to the unit vector `u`.
pub fn reject(a: &[f64], u: &[f64]) -> Vec<f64> {
    axpy(a, -dot(a, u), u)
}

pub fn basis(dim: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; dim];
    e[i] = 1.0;
    e
}

/// Unit vector orthogonal to every vector in `span`, preferring the lowest
/// standard basis direction. Returns `None` if `span` already fills the space.
pub fn orthogonal_complement_vector(span: &[Vec<f64>], dim: usize) -> Option<Vec<f64>> {
    let ortho = gram_schmidt(span);
    (0..dim).find_map(|i| {
        let mut v = basis(dim, i);
        for q in &ortho {
            v = reject(&v, q);
        }
        // re-orthogonalize once for stability
        for q in &ortho {
            v = reject(&v, q);
        }
        if norm(&v) > 1e-8 {
            normalized(&v)
        } else {
            None
        }
    })
}

/// Orthonormal basis of the span of `vs`, dropping (near-)dependent vectors.
pub fn gram_schmidt(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let scale_ref = norm(v);
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                w = reject(&w, q);
            }
        }
        if scale_ref > 0.0 && norm(&w) > 1e-10 * scale_ref {
            out.push(normalized(&w).expect("nonzero"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_axis() {
        let v = orthogonal_complement_vector(&[vec![1.0, 0.0]], 2).unwrap();
        assert_eq!(v, vec![0.0, 1.0]);
        let v = orthogonal_complement_vector(&[vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]], 3).unwrap();
        assert!(dot(&v, &[1.0, 1.0, 0.0]).abs() < 1e-12);
        assert!((norm(&v) - 1.0).abs() < 1e-12);
        assert!(orthogonal_complement_vector(&[vec![1.0, 0.0], vec![0.0, 1.0]], 2).is_none());
    }
}
