//! Error function, used by the closed-form Gaussian-charge field profile.

/// `erf(x)` to ~1e-13: Maclaurin series below 2.5, continued-fraction
/// complement above.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x < 2.5 {
        let mut term = x;
        let mut sum = x;
        let x2 = x * x;
        for n in 1..200 {
            term *= -x2 / n as f64;
            let add = term / (2 * n + 1) as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        sum * 2.0 / std::f64::consts::PI.sqrt()
    } else {
        1.0 - erfc_cf(x)
    }
}

/// Continued fraction for `erfc(x)`, `x ≥ 2.5` (modified Lentz).
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f: f64 = tiny;
    let mut c: f64 = f;
    let mut d: f64 = 0.0;
    // erfc(x) = e^{-x²}/√π · 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
    for i in 0..200 {
        let (a, b) = if i == 0 { (1.0, x) } else { (i as f64 / 2.0, x) };
        d = b + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() * f
}

/// Enclosed charge fraction of a unit Gaussian charge of width `sigma`
/// within radius `r`.
pub fn gaussian_enclosed_fraction(r: f64, sigma: f64) -> f64 {
    let u = r / (sigma * std::f64::consts::SQRT_2);
    erf(u) - (2.0 / std::f64::consts::PI).sqrt() * (r / sigma) * (-0.5 * (r / sigma).powi(2)).exp()
}
