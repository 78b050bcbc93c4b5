//! Dense-matrix brute force for the walk operator `S (B (x) 1)`.
//!
//! Builds the full `2N x 2N` matrix (N = 2 t_max + 1 sites) explicitly from
//! the coin entries and the shift's definition and applies it by ordinary
//! matrix-vector products. Only meant for small lattices in tests.

use num_complex::Complex64;

pub type Matrix = Vec<Vec<Complex64>>;

fn zeros(n: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

/// Coin matrix written out from its closed form.
pub fn coin(xi: f64, theta: f64, zeta: f64) -> [[Complex64; 2]; 2] {
    let e = |a: f64| Complex64::new(a.cos(), a.sin());
    [
        [e(xi) * theta.cos(), e(zeta) * theta.sin()],
        [e(-zeta) * theta.sin(), -e(-xi) * theta.cos()],
    ]
}

/// Basis index of `|c> (x) |x>`, coin-major.
pub fn basis(c: usize, x: i64, t_max: usize) -> usize {
    let n = 2 * t_max + 1;
    c * n + (x + t_max as i64) as usize
}

/// `B (x) 1` on a lattice of half-width `t_max`.
pub fn coin_operator(b: &[[Complex64; 2]; 2], t_max: usize) -> Matrix {
    let n = 2 * t_max + 1;
    let mut m = zeros(2 * n);
    for x in -(t_max as i64)..=(t_max as i64) {
        for r in 0..2 {
            for c in 0..2 {
                m[basis(r, x, t_max)][basis(c, x, t_max)] = b[r][c];
            }
        }
    }
    m
}

/// `sum_x |0><0| (x) |x-1><x| + |1><1| (x) |x+1><x|`, truncated at the lattice edge.
pub fn shift_operator(t_max: usize) -> Matrix {
    let n = 2 * t_max + 1;
    let mut m = zeros(2 * n);
    let t = t_max as i64;
    for x in -t..=t {
        if x > -t {
            m[basis(0, x - 1, t_max)][basis(0, x, t_max)] = Complex64::new(1.0, 0.0);
        }
        if x < t {
            m[basis(1, x + 1, t_max)][basis(1, x, t_max)] = Complex64::new(1.0, 0.0);
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

/// `W = S (B (x) 1)` for coin angles `(xi, theta, zeta)`.
pub fn walk_operator(params: (f64, f64, f64), t_max: usize) -> Matrix {
    let b = coin(params.0, params.1, params.2);
    matmul(&shift_operator(t_max), &coin_operator(&b, t_max))
}

/// Initial vector `cos(delta/2)|0> + sin(delta/2) e^{i phi}|1>` at the origin.
pub fn initial_vector(delta: f64, phi: f64, t_max: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * (2 * t_max + 1)];
    v[basis(0, 0, t_max)] = Complex64::new((delta / 2.0).cos(), 0.0);
    v[basis(1, 0, t_max)] = Complex64::from_polar((delta / 2.0).sin(), phi);
    v
}

/// Applies one dense walk operator per coin, first coin first.
pub fn evolve(initial: &[Complex64], coins: &[(f64, f64, f64)], t_max: usize) -> Vec<Complex64> {
    coins.iter().fold(initial.to_vec(), |v, &c| {
        matvec(&walk_operator(c, t_max), &v)
    })
}

/// Site probabilities from a coin-major vector.
pub fn probabilities(v: &[Complex64], t_max: usize) -> Vec<f64> {
    let n = 2 * t_max + 1;
    (0..n)
        .map(|i| v[i].norm_sqr() + v[n + i].norm_sqr())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_is_a_partial_permutation() {
        let s = shift_operator(2);
        for row in &s {
            let ones = row.iter().filter(|v| v.re == 1.0).count();
            assert!(ones <= 1);
        }
    }

    #[test]
    fn hadamard_two_steps_by_hand() {
        let h = std::f64::consts::FRAC_PI_4;
        let v0 = initial_vector(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, 2);
        let v = evolve(&v0, &[(0.0, h, 0.0), (0.0, h, 0.0)], 2);
        let p = probabilities(&v, 2);
        let want = [0.25, 0.0, 0.5, 0.0, 0.25];
        for (a, b) in p.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
