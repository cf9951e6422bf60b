//! Double-precision Aberth iteration, used only for diagnostics.

use num_complex::Complex64;

/// Approximate complex roots of `sum a_i x^i` (`a` lowest first, nonzero leading term).
pub fn roots(a: &[f64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = a[n];
    let c: Vec<f64> = a.iter().map(|x| x / lead).collect();
    // Cauchy-type radius for the initial circle
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs())).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1e-300));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn eval_with_derivative(c: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &coef in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + coef;
    }
    (p, dp)
}
