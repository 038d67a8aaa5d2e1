//! Log-gamma for real and complex arguments (Lanczos approximation).

use num_complex::Complex64;

/// Lanczos coefficients for g = 7, n = 9.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of ln Γ(z) for Re(z) > 0.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    assert!(z.re > 0.0, "ln_gamma_complex needs Re(z) > 0, got {z}");
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_complex(Complex64::new(x, 0.0)).re
}

/// ln |Γ(x+iy)|² = 2·Re ln Γ(x+iy) for x > 0.
pub fn ln_abs_gamma_sq(x: f64, y: f64) -> f64 {
    2.0 * ln_gamma_complex(Complex64::new(x, y)).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_values() {
        // Γ(1) = Γ(2) = 1, Γ(5) = 24, Γ(1/2) = √π
        assert!(ln_gamma(1.0).abs() < 1e-13);
        assert!(ln_gamma(2.0).abs() < 1e-13);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
    }

    #[test]
    fn recurrence_complex() {
        // ln Γ(z+1) = ln Γ(z) + ln z
        for &(x, y) in &[(0.7, 3.0), (2.5, -1.2), (1.0, 10.0), (4.0, 25.0)] {
            let z = Complex64::new(x, y);
            let lhs = ln_gamma_complex(z + 1.0);
            let rhs = ln_gamma_complex(z) + z.ln();
            assert!((lhs - rhs).norm() < 1e-11, "z = {z}");
        }
    }

    #[test]
    fn known_complex_modulus() {
        // |Γ(iy)|² = π/(y sinh πy) ⇒ |Γ(1+iy)|² = πy/sinh(πy)
        let y = 1.5f64;
        let exact = (std::f64::consts::PI * y / (std::f64::consts::PI * y).sinh()).ln();
        assert!((ln_abs_gamma_sq(1.0, y) - exact).abs() < 1e-12);
    }
}
