//! Independent oracles for the integration tests. Nothing here calls the
//! crate's own eigensolver or lattice code.
#![allow(dead_code)]

use num_complex::Complex64;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn dot(v: &[Complex64], w: &[Complex64]) -> Complex64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

/// Modified Gram-Schmidt, applied twice; drops vectors whose residual norm
/// falls below `drop`.
pub fn gram_schmidt(vectors: &[Vec<Complex64>], drop: f64) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &out {
                let k = dot(b, &w);
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= k * y;
                }
            }
        }
        let n = dot(&w, &w).re.sqrt();
        if n > drop {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

/// `Σ b b*` as a dense row-major array.
pub fn projector(dim: usize, basis: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut m = vec![vec![c(0.0); dim]; dim];
    for b in basis {
        for i in 0..dim {
            for j in 0..dim {
                m[i][j] += b[i] * b[j].conj();
            }
        }
    }
    m
}

pub fn max_diff(a: &contextia::ComplexMatrix, b: &[Vec<Complex64>]) -> f64 {
    let mut d = 0.0f64;
    for (i, row) in b.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            d = d.max((a[(i, j)] - z).norm());
        }
    }
    d
}

/// Roots of a real symmetric 3x3 matrix's characteristic polynomial by the
/// trigonometric form of Cardano's formula, ascending.
pub fn symmetric3_eigenvalues(a: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q; 3];
    }
    let b: [[f64; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| (a[i][j] - if i == j { q } else { 0.0 }) / p)
    });
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    [lo, mid, hi]
}

/// Plain bisection for a sign change of `f` on `[a, b]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    assert!(fa * f(b) < 0.0, "no sign change");
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}
