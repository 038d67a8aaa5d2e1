//! The O(2)-covariant fuzzy circle S¹_Λ.
//!
//! Generators ξ⁺, ξ⁻, L̄ act on the (2Λ+1)-dimensional space spanned by
//! ψ_m, m = −Λ..Λ (ascending). The band action
//!
//!   ξ^± ψ_m = (1/√2)·√(1 + m(m±1)/k)·ψ_{m±1}   (truncated at ±Λ)
//!   L̄ ψ_m  = m ψ_m
//!
//! is taken as the *definition*, which makes every identity below exact up
//! to floating-point roundoff; the familiar band coefficient
//! (1 + m(m±1)/(2k))/√2 is its 1/k-expansion.

use num_complex::Complex64;

use crate::error::Error;
use crate::lie::su2::su2_irrep;
use crate::operator::{span_rank, Operator};
use crate::report::{ConvergenceRow, ConvergenceTable, KRule, VerificationReport};

#[derive(Debug, Clone)]
pub struct FuzzyCircle {
    pub lambda: u32,
    pub k: f64,
    pub xi_plus: Operator,
    pub xi_minus: Operator,
    pub lbar: Operator,
    /// Soft cutoff-consistency check Λ² < 2√(2k) − 2; violation is reported
    /// but does not block construction.
    pub consistency_ok: bool,
}

/// Fourier coefficients f_h, h = −2Λ..2Λ (dense, length 4Λ+1).
#[derive(Debug, Clone)]
pub struct FuzzyFunctionCoeffs1D {
    pub coeffs: Vec<Complex64>,
}

impl FuzzyFunctionCoeffs1D {
    pub fn from_sparse(lambda: u32, terms: &[(i32, Complex64)]) -> Result<Self, Error> {
        let bound = 2 * lambda as i32;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (4 * lambda + 1) as usize];
        for &(h, c) in terms {
            if h.abs() > bound {
                return Err(Error::IndexOutOfRange(format!(
                    "Fourier index {h} exceeds 2Λ = {bound}"
                )));
            }
            coeffs[(h + bound) as usize] += c;
        }
        Ok(FuzzyFunctionCoeffs1D { coeffs })
    }
}

/// Band coefficient of ξ^±: √(1 + m(m±1)/k)/√2. This is the form under
/// which the whole identity suite and the Uso(3) realization are exact;
/// its 1/k-expansion is the familiar (1 + m(m±1)/(2k))/√2.
fn band_coeff(m: i32, sign: i32, k: f64) -> f64 {
    let mf = m as f64;
    (1.0 + mf * (mf + sign as f64) / k).sqrt() / 2f64.sqrt()
}

pub fn consistency_bound_ok(lambda: u32, k: f64) -> bool {
    let lam = lambda as f64;
    lam * lam < 2.0 * (2.0 * k).sqrt() - 2.0
}

/// Build S¹_Λ from the band action.
pub fn build_circle(lambda: u32, k: f64) -> Result<FuzzyCircle, Error> {
    if lambda < 1 {
        return Err(Error::InvalidParameter("circle needs Λ ≥ 1".into()));
    }
    if !(k > 0.0) {
        return Err(Error::InvalidParameter("circle needs k > 0".into()));
    }
    let li = lambda as i32;
    let dim = (2 * lambda + 1) as usize;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for m in -li..li {
        // ξ⁺: ψ_m → ψ_{m+1}
        let row = (m + 1 + li) as usize;
        let col = (m + li) as usize;
        entries[row * dim + col] = Complex64::new(band_coeff(m, 1, k), 0.0);
    }
    let xi_plus = Operator::from_entries(dim, &entries)?;
    let xi_minus = xi_plus.adjoint();
    let lbar = Operator::from_real_diagonal(
        &(-li..=li).map(|m| m as f64).collect::<Vec<_>>(),
    );
    Ok(FuzzyCircle {
        lambda,
        k,
        xi_plus,
        xi_minus,
        lbar,
        consistency_ok: consistency_bound_ok(lambda, k),
    })
}

impl FuzzyCircle {
    pub fn dim(&self) -> usize {
        (2 * self.lambda + 1) as usize
    }

    /// Rank-1 projector P̃_m onto span{ψ_m}.
    pub fn ptilde(&self, m: i32) -> Operator {
        let idx = (m + self.lambda as i32) as usize;
        Operator::basis_projector(self.dim(), idx)
    }

    /// P̃_m expressed as the Lagrange interpolation polynomial in L̄ with
    /// nodes −Λ..Λ; must agree with the explicit rank-1 projector.
    pub fn ptilde_as_polynomial(&self, m: i32) -> Operator {
        let li = self.lambda as i32;
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        let mut denom = 1.0f64;
        for mp in -li..=li {
            if mp == m {
                continue;
            }
            // multiply poly by (x − mp)
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (j, &c) in poly.iter().enumerate() {
                next[j] -= c * Complex64::new(mp as f64, 0.0);
                next[j + 1] += c;
            }
            poly = next;
            denom *= (m - mp) as f64;
        }
        let inv = Complex64::new(1.0 / denom, 0.0);
        for c in poly.iter_mut() {
            *c *= inv;
        }
        self.lbar.polynomial_apply(&poly)
    }

    /// Square distance from the origin, R² = ξ⁺ξ⁻ + ξ⁻ξ⁺.
    pub fn r_squared(&self) -> Operator {
        self.xi_plus.anticommutator(&self.xi_minus).unwrap()
    }

    /// Closed-form R² eigenvalue on ψ_m.
    pub fn r_squared_predicted(&self, m: i32) -> f64 {
        let lam = self.lambda as f64;
        let mf = m as f64;
        let base = 1.0 + mf * mf / self.k;
        if m.unsigned_abs() == self.lambda {
            base - (1.0 + lam * (lam + 1.0) / self.k) / 2.0
        } else {
            base
        }
    }

    /// max_{|m|<Λ} |spec(R²) − 1|, from the diagonal of R².
    pub fn r_squared_max_interior_deviation(&self) -> f64 {
        let r2 = self.r_squared();
        let li = self.lambda as i32;
        let mut max = 0.0f64;
        for m in (-li + 1)..li {
            let idx = (m + li) as usize;
            max = max.max((r2.entry(idx, idx).re - 1.0).abs());
        }
        max
    }

    /// Cartesian coordinates x̄¹ = (ξ⁺+ξ⁻)/√2, x̄² = (ξ⁺−ξ⁻)/(i√2).
    pub fn cartesian(&self) -> [Operator; 2] {
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        let x1 = (&self.xi_plus + &self.xi_minus).scale_re(inv_sqrt2);
        let x2 = (&self.xi_plus - &self.xi_minus)
            .scale(Complex64::new(0.0, -inv_sqrt2));
        [x1, x2]
    }
}

/// Verify the defining relations of S¹_Λ; all residuals are Frobenius norms.
pub fn verify_circle_algebra(fc: &FuzzyCircle, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("circle", fc.lambda, fc.k);
    let lam = fc.lambda as f64;
    let li = fc.lambda as i32;
    let dim = fc.dim();
    let k = fc.k;

    // [ξ⁺,ξ⁻] = −L̄/k + [1+Λ(Λ+1)/k]·(P̃_Λ − P̃_{−Λ})/2
    let comm = fc.xi_plus.commutator(&fc.xi_minus).unwrap();
    let edge = (&fc.ptilde(li) - &fc.ptilde(-li))
        .scale_re(0.5 * (1.0 + lam * (lam + 1.0) / k));
    let rhs = &fc.lbar.scale_re(-1.0 / k) + &edge;
    rep.push("y+y-", comm.frobenius_distance(&rhs).unwrap(), tol);

    // ∏_{m=−Λ}^{Λ}(L̄ − mI) = 0, reported relative to the product of
    // factor norms (matching the sphere's minimal-polynomial checks)
    let mut prod = Operator::identity(dim);
    let mut scale = 1.0f64;
    for m in -li..=li {
        let shifted = &fc.lbar - &Operator::identity(dim).scale_re(m as f64);
        scale *= shifted.frobenius_norm().max(1.0);
        prod = &prod * &shifted;
    }
    rep.push("minimal-poly-L", prod.frobenius_norm() / scale, tol);

    // [L̄, ξ^±] = ±ξ^±
    let wp = fc.lbar.commutator(&fc.xi_plus).unwrap();
    rep.push(
        "weight-xi-plus",
        wp.frobenius_distance(&fc.xi_plus).unwrap(),
        tol,
    );
    let wm = fc.lbar.commutator(&fc.xi_minus).unwrap();
    rep.push(
        "weight-xi-minus",
        wm.frobenius_distance(&fc.xi_minus.scale_re(-1.0)).unwrap(),
        tol,
    );

    // (ξ^±)^{2Λ+1} = 0
    rep.push(
        "nilpotent-xi-plus",
        fc.xi_plus.pow(2 * fc.lambda + 1).frobenius_norm(),
        tol,
    );
    rep.push(
        "nilpotent-xi-minus",
        fc.xi_minus.pow(2 * fc.lambda + 1).frobenius_norm(),
        tol,
    );

    // R² = 1 + L̄²/k − [1+Λ(Λ+1)/k]·(P̃_Λ + P̃_{−Λ})/2
    let r2 = fc.r_squared();
    let l2 = &fc.lbar * &fc.lbar;
    let edge_sym = (&fc.ptilde(li) + &fc.ptilde(-li))
        .scale_re(0.5 * (1.0 + lam * (lam + 1.0) / k));
    let pred = &(&Operator::identity(dim) + &l2.scale_re(1.0 / k)) - &edge_sym;
    rep.push("R2", r2.frobenius_distance(&pred).unwrap(), tol);

    // (ξ⁺)† = ξ⁻, L̄ Hermitian
    rep.push(
        "adjoint-xi",
        fc.xi_plus.adjoint().frobenius_distance(&fc.xi_minus).unwrap(),
        tol,
    );
    rep.push("hermitian-L", fc.lbar.hermitian_defect(), tol);

    rep
}

/// The diagonal function of the Uso(3) realization ξ^± = f_±(E⁰)E^±:
/// f₊(s) = √((1 + s(s−1)/k)/(Λ(Λ+1) − s(s−1))), with f₋(s) = f₊(s+1).
/// Reproduces the band definition entrywise exactly.
pub fn realization_f_plus(s: f64, lambda: u32, k: f64) -> f64 {
    let lam = lambda as f64;
    ((1.0 + s * (s - 1.0) / k) / (lam * (lam + 1.0) - s * (s - 1.0))).sqrt()
}

/// Build S¹_Λ inside π_Λ[Uso(3)]: L̄ = E⁰, ξ^± = f_±(E⁰)E^±.
pub fn realize_circle_uso3(lambda: u32, k: f64) -> Result<FuzzyCircle, Error> {
    if lambda < 1 {
        return Err(Error::InvalidParameter("circle needs Λ ≥ 1".into()));
    }
    let rep = su2_irrep(2 * lambda);
    let dim = rep.dim();
    let lam = lambda as f64;
    // f_± stays finite where it matters: s(s−1) < Λ(Λ+1) for s > −Λ. At
    // s = −Λ equality holds, but the corresponding E⁺ column vanishes, so
    // that diagonal slot is set to 0 instead of the (divergent) formula.
    for s in (1 - lambda as i32)..=(lambda as i32) {
        let sf = s as f64;
        assert!(sf * (sf - 1.0) < lam * (lam + 1.0));
    }
    let f_diag = Operator::from_real_diagonal(
        &(-(lambda as i32)..=lambda as i32)
            .map(|s| {
                if s == -(lambda as i32) {
                    0.0
                } else {
                    realization_f_plus(s as f64, lambda, k)
                }
            })
            .collect::<Vec<_>>(),
    );
    let xi_plus = &f_diag * &rep.e_plus;
    let xi_minus = xi_plus.adjoint();
    debug_assert_eq!(dim, (2 * lambda + 1) as usize);
    Ok(FuzzyCircle {
        lambda,
        k,
        xi_plus,
        xi_minus,
        lbar: rep.e_zero,
        consistency_ok: consistency_bound_ok(lambda, k),
    })
}

/// Rotation by θ: conjugation by exp(iθL̄). Fixes L̄, ξ^± pick up e^{±iθ}.
pub fn rotation_automorphism(fc: &FuzzyCircle, theta: f64) -> Result<FuzzyCircle, Error> {
    let g = fc.lbar.exp_i_hermitian(theta)?;
    Ok(FuzzyCircle {
        lambda: fc.lambda,
        k: fc.k,
        xi_plus: fc.xi_plus.conjugate_by(&g)?,
        xi_minus: fc.xi_minus.conjugate_by(&g)?,
        lbar: fc.lbar.conjugate_by(&g)?,
        consistency_ok: fc.consistency_ok,
    })
}

/// The determinant −1 isometry: conjugation by exp(iπ(E⁺+E⁻)/√2) in π_Λ.
/// Maps L̄ ↦ −L̄ and ξ^± ↦ ξ^∓ (x̄¹ ↦ x̄¹, x̄² ↦ −x̄²).
pub fn reflection_automorphism(fc: &FuzzyCircle) -> Result<FuzzyCircle, Error> {
    let rep = su2_irrep(2 * fc.lambda);
    let alpha = (&rep.e_plus + &rep.e_minus).scale_re(std::f64::consts::PI / 2f64.sqrt());
    let g = alpha.exp_i_hermitian(1.0)?;
    Ok(FuzzyCircle {
        lambda: fc.lambda,
        k: fc.k,
        xi_plus: fc.xi_plus.conjugate_by(&g)?,
        xi_minus: fc.xi_minus.conjugate_by(&g)?,
        lbar: fc.lbar.conjugate_by(&g)?,
        consistency_ok: fc.consistency_ok,
    })
}

/// f̂_Λ = Σ_h f_h η^h with η^m = (√2ξ⁺)^m, η^{−m} = (√2ξ⁻)^m.
pub fn fuzzy_function_1d(fc: &FuzzyCircle, f: &FuzzyFunctionCoeffs1D) -> Result<Operator, Error> {
    let expected = (4 * fc.lambda + 1) as usize;
    if f.coeffs.len() != expected {
        return Err(Error::BadShape {
            expected,
            got: f.coeffs.len(),
        });
    }
    let sqrt2 = 2f64.sqrt();
    let bound = 2 * fc.lambda as i32;
    let mut acc = Operator::zeros(fc.dim());
    // powers built incrementally in both directions
    let mut pow_plus = Operator::identity(fc.dim());
    let mut pow_minus = Operator::identity(fc.dim());
    let eta_plus = fc.xi_plus.scale_re(sqrt2);
    let eta_minus = fc.xi_minus.scale_re(sqrt2);
    for h in 0..=bound {
        let cp = f.coeffs[(h + bound) as usize];
        if cp != Complex64::new(0.0, 0.0) {
            acc = &acc + &pow_plus.scale(cp);
        }
        if h > 0 {
            let cm = f.coeffs[(-h + bound) as usize];
            if cm != Complex64::new(0.0, 0.0) {
                acc = &acc + &pow_minus.scale(cm);
            }
        }
        pow_plus = &pow_plus * &eta_plus;
        pow_minus = &pow_minus * &eta_minus;
    }
    Ok(acc)
}

/// Multiplication of sparse Fourier series: (f·φ)_m = Σ_h f_h φ_{m−h}.
fn classical_product_1d(
    f: &[(i32, Complex64)],
    phi: &[(i32, Complex64)],
) -> Vec<(i32, Complex64)> {
    let mut out: std::collections::BTreeMap<i32, Complex64> = std::collections::BTreeMap::new();
    for &(h, fh) in f {
        for &(m, pm) in phi {
            *out.entry(h + m).or_insert(Complex64::new(0.0, 0.0)) += fh * pm;
        }
    }
    out.into_iter().collect()
}

/// ‖(f̂_Λ − f·)φ‖ in the embedded picture: f̂_Λ acts on the truncated
/// coefficient vector (annihilating H_Λ^⊥), f· acts by Fourier convolution.
pub fn circle_embedded_norm(
    fc: &FuzzyCircle,
    f: &[(i32, Complex64)],
    phi: &[(i32, Complex64)],
) -> Result<f64, Error> {
    let li = fc.lambda as i32;
    let dim = fc.dim();
    let f_op = fuzzy_function_1d(fc, &FuzzyFunctionCoeffs1D::from_sparse(fc.lambda, f)?)?;
    // truncated φ as a column vector
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    for &(m, c) in phi {
        if m.abs() <= li {
            v[(m + li) as usize] += c;
        }
    }
    let mut fuzzy = vec![Complex64::new(0.0, 0.0); dim];
    for (row, slot) in fuzzy.iter_mut().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for (col, &vc) in v.iter().enumerate() {
            s += f_op.entry(row, col) * vc;
        }
        *slot = s;
    }
    let classical = classical_product_1d(f, phi);
    let mut norm_sq = 0.0f64;
    let mut seen = std::collections::BTreeSet::new();
    for &(m, c) in &classical {
        let fz = if m.abs() <= li {
            fuzzy[(m + li) as usize]
        } else {
            Complex64::new(0.0, 0.0)
        };
        norm_sq += (fz - c).norm_sqr();
        seen.insert(m);
    }
    for (idx, &fz) in fuzzy.iter().enumerate() {
        let m = idx as i32 - li;
        if !seen.contains(&m) {
            norm_sq += fz.norm_sqr();
        }
    }
    Ok(norm_sq.sqrt())
}

/// Strong-convergence scan: per Λ, ‖(f̂_Λ − f·)φ‖ plus the edge-mode
/// counterexample column with φ_edge = ψ_Λ.
pub fn circle_convergence_scan(
    f: &[(i32, Complex64)],
    phi: &[(i32, Complex64)],
    lambdas: &[u32],
    k_rule: KRule,
) -> Result<ConvergenceTable, Error> {
    let mut table = ConvergenceTable::new();
    for &lambda in lambdas {
        let k = k_rule.k_for(lambda)?;
        let k_bound = KRule::Prop33.k_for(lambda)?;
        if k < k_bound {
            table.warnings.push(format!(
                "Λ={lambda}: k={k} below the strong-convergence bound {k_bound}"
            ));
        }
        let fc = build_circle(lambda, k)?;
        let norm = circle_embedded_norm(&fc, f, phi)?;
        let edge = vec![(lambda as i32, Complex64::new(1.0, 0.0))];
        let edge_norm = circle_embedded_norm(&fc, f, &edge)?;
        table.push(ConvergenceRow {
            lambda,
            k,
            norm,
            edge_norm,
            coordinate_norms: Vec::new(),
            description: "circle".into(),
        });
    }
    Ok(table)
}

/// Rank of the span of the ordered monomials (ξ⁺)^h L̄^l and L̄^l (ξ⁻)^n;
/// equals (2Λ+1)² iff ξ^± generate the full matrix algebra.
pub fn circle_monomial_span_rank(fc: &FuzzyCircle) -> usize {
    let n = fc.dim();
    let mut monomials = Vec::new();
    let mut xi_pow_p = Operator::identity(n);
    let mut xi_pow_m = Operator::identity(n);
    for h in 0..n {
        let mut lp = Operator::identity(n);
        for _ in 0..(n - h) {
            monomials.push(&xi_pow_p * &lp);
            if h > 0 {
                monomials.push(&lp * &xi_pow_m);
            }
            lp = &lp * &fc.lbar;
        }
        xi_pow_p = &xi_pow_p * &fc.xi_plus;
        xi_pow_m = &xi_pow_m * &fc.xi_minus;
    }
    span_rank(&monomials, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn band_entries_match_definition() {
        let fc = build_circle(1, 2.0).unwrap();
        let s = 1.0 / 2f64.sqrt();
        // ξ⁺ψ₀ = (1/√2)ψ₁, ξ⁺ψ₁ = 0, ξ⁺ψ₋₁ = (1/√2)ψ₀ (m(m+1)=0 at m=−1,0)
        assert!((fc.xi_plus.entry(2, 1).re - s).abs() < 1e-15);
        assert!((fc.xi_plus.entry(1, 0).re - s).abs() < 1e-15);
        for row in 0..3 {
            assert_eq!(fc.xi_plus.entry(row, 2), Complex64::new(0.0, 0.0));
        }
        // Λ=2, k=8: ψ₂←ψ₁ element is √(1 + 2/8)/√2 = √1.25/√2
        let fc = build_circle(2, 8.0).unwrap();
        let want = (1.25f64).sqrt() / 2f64.sqrt();
        assert!((fc.xi_plus.entry(4, 3).re - want).abs() < 1e-15);
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert!(build_circle(0, 4.0).is_err());
        assert!(build_circle(2, 0.0).is_err());
        // consistency bound: Λ=10, k=50 violates Λ² < 2√(2k)−2
        let fc = build_circle(10, 50.0).unwrap();
        assert!(!fc.consistency_ok);
        let fc = build_circle(2, 100.0).unwrap();
        assert!(fc.consistency_ok);
    }

    #[test]
    fn identities_hold_at_machine_precision() {
        for (lambda, k) in [(1u32, 2.0f64), (5, 900.0), (3, 144.0)] {
            let fc = build_circle(lambda, k).unwrap();
            let rep = verify_circle_algebra(&fc, 1e-12);
            assert!(rep.overall_pass, "Λ={lambda} k={k}: {:?}", rep.checks);
        }
    }

    #[test]
    fn r_squared_spectrum_small_case() {
        let fc = build_circle(1, 2.0).unwrap();
        let r2 = fc.r_squared();
        let eig = r2.hermitian_eigensystem().unwrap();
        let expect = [0.5, 0.5, 1.0];
        for (got, want) in eig.eigenvalues.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-14);
        }
        for m in -1..=1 {
            let idx = (m + 1) as usize;
            assert!((r2.entry(idx, idx).re - fc.r_squared_predicted(m)).abs() < 1e-14);
        }
    }

    #[test]
    fn realization_matches_band_construction() {
        for (lambda, k) in [(1u32, 4.0f64), (2, 36.0), (7, 3136.0), (20, 176400.0)] {
            let built = build_circle(lambda, k).unwrap();
            let realized = realize_circle_uso3(lambda, k).unwrap();
            assert!(
                realized
                    .xi_plus
                    .frobenius_distance(&built.xi_plus)
                    .unwrap()
                    < 1e-12,
                "Λ={lambda}"
            );
            assert!(realized.lbar.frobenius_distance(&built.lbar).unwrap() < 1e-12);
        }
        // f₊(0) at Λ=1: 1/√2 regardless of k since s(s−1)=0
        assert!((realization_f_plus(0.0, 1, 4.0) - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rotation_acts_by_phases() {
        let fc = build_circle(2, 36.0).unwrap();
        let id = rotation_automorphism(&fc, 0.0).unwrap();
        assert!(id.xi_plus.frobenius_distance(&fc.xi_plus).unwrap() < 1e-12);

        let rot = rotation_automorphism(&fc, std::f64::consts::PI).unwrap();
        assert!(
            rot.xi_plus
                .frobenius_distance(&fc.xi_plus.scale_re(-1.0))
                .unwrap()
                < 1e-10
        );
        assert!(rot.lbar.frobenius_distance(&fc.lbar).unwrap() < 1e-10);

        // generic θ: ξ± ↦ e^{±iθ}ξ±
        let theta = 0.37;
        let rot = rotation_automorphism(&fc, theta).unwrap();
        let expect = fc.xi_plus.scale(Complex64::from_polar(1.0, theta));
        assert!(rot.xi_plus.frobenius_distance(&expect).unwrap() < 1e-10);

        // spectrum of R² invariant under rotation
        let s0 = fc.r_squared().hermitian_eigensystem().unwrap().eigenvalues;
        let s1 = rot.r_squared().hermitian_eigensystem().unwrap().eigenvalues;
        for (a, b) in s0.iter().zip(s1.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn reflection_flips_l_and_swaps_xi() {
        for lambda in [1u32, 2, 4] {
            let fc = build_circle(lambda, 100.0).unwrap();
            let refl = reflection_automorphism(&fc).unwrap();
            assert!(
                refl.lbar.frobenius_distance(&fc.lbar.scale_re(-1.0)).unwrap() < 1e-10,
                "Λ={lambda}"
            );
            assert!(refl.xi_plus.frobenius_distance(&fc.xi_minus).unwrap() < 1e-10);
            // x̄¹ ↦ x̄¹, x̄² ↦ −x̄²
            let [x1, x2] = fc.cartesian();
            let [y1, y2] = refl.cartesian();
            assert!(y1.frobenius_distance(&x1).unwrap() < 1e-10);
            assert!(y2.frobenius_distance(&x2.scale_re(-1.0)).unwrap() < 1e-10);
            // involution on the adjoint action
            let twice = reflection_automorphism(&refl).unwrap();
            assert!(twice.xi_plus.frobenius_distance(&fc.xi_plus).unwrap() < 1e-10);
            assert!(twice.lbar.frobenius_distance(&fc.lbar).unwrap() < 1e-10);
        }
    }

    #[test]
    fn reflection_preserves_identity_suite() {
        let fc = build_circle(3, 144.0).unwrap();
        let refl = reflection_automorphism(&fc).unwrap();
        // relabel: the reflected ξ⁻ plays the role of ξ⁺ and L̄ flips sign
        let relabeled = FuzzyCircle {
            lambda: fc.lambda,
            k: fc.k,
            xi_plus: refl.xi_minus.clone(),
            xi_minus: refl.xi_plus.clone(),
            lbar: refl.lbar.scale_re(-1.0),
            consistency_ok: fc.consistency_ok,
        };
        let rep = verify_circle_algebra(&relabeled, 1e-10);
        assert!(rep.overall_pass, "{:?}", rep.checks);
    }

    #[test]
    fn fuzzy_functions_basics() {
        let fc = build_circle(2, 300.0).unwrap();
        let one = FuzzyFunctionCoeffs1D::from_sparse(2, &[(0, c(1.0))]).unwrap();
        let op = fuzzy_function_1d(&fc, &one).unwrap();
        assert!(op.frobenius_distance(&Operator::identity(5)).unwrap() < 1e-14);

        let u = FuzzyFunctionCoeffs1D::from_sparse(2, &[(1, c(1.0))]).unwrap();
        let op = fuzzy_function_1d(&fc, &u).unwrap();
        let expect = fc.xi_plus.scale_re(2f64.sqrt());
        assert!(op.frobenius_distance(&expect).unwrap() < 1e-14);

        // η¹η⁻¹ has diagonal entries 1 + O(1/k) away from the band edges
        let eta1 = fc.xi_plus.scale_re(2f64.sqrt());
        let eta_m1 = fc.xi_minus.scale_re(2f64.sqrt());
        let prod = &eta1 * &eta_m1;
        for m in -1i32..2 {
            let idx = (m + 2) as usize;
            assert!((prod.entry(idx, idx).re - 1.0).abs() < 7.0 / fc.k);
        }
        // index out of range rejected
        assert!(FuzzyFunctionCoeffs1D::from_sparse(2, &[(5, c(1.0))]).is_err());
    }

    #[test]
    fn embedded_norm_edge_and_interior() {
        // f = u, φ = ψ₀, Λ=2, Prop-3.3 k: at most a small error (the m=0
        // coefficient is exactly 1/√2, so this particular case is ~0)
        let f = vec![(1, c(1.0))];
        let phi = vec![(0, c(1.0))];
        let k = KRule::Prop33.k_for(2).unwrap();
        let fc = build_circle(2, k).unwrap();
        let norm = circle_embedded_norm(&fc, &f, &phi).unwrap();
        assert!(norm <= 1e-3, "norm = {norm}");

        // φ supported inside H_Λ with f = 1 → exactly zero
        let one = vec![(0, c(1.0))];
        assert!(circle_embedded_norm(&fc, &one, &phi).unwrap() < 1e-15);

        // edge: f = u, φ = ψ_Λ → norm 1 for every Λ
        for lambda in [2u32, 4, 7] {
            let fc = build_circle(lambda, KRule::Prop33.k_for(lambda).unwrap()).unwrap();
            let edge = vec![(lambda as i32, c(1.0))];
            let norm = circle_embedded_norm(&fc, &f, &edge).unwrap();
            assert!((norm - 1.0).abs() < 1e-12, "Λ={lambda}: {norm}");
        }
    }

    #[test]
    fn convergence_scan_decreases() {
        let f = vec![(1, c(1.0))];
        // φ = ψ₁: the m=1 band coefficient carries a genuine 1/k error, so
        // the scan norms are nonzero and strictly decreasing
        let phi = vec![(1, c(1.0))];
        let lambdas: Vec<u32> = (2..=8).collect();
        let table = circle_convergence_scan(&f, &phi, &lambdas, KRule::Prop33).unwrap();
        assert!(table.warnings.is_empty());
        for pair in table.rows.windows(2) {
            assert!(pair[1].norm < pair[0].norm);
        }
        for row in &table.rows {
            assert!((row.edge_norm - 1.0).abs() < 1e-12);
        }
        // under-bound k rule warns but still computes
        let table = circle_convergence_scan(&f, &phi, &[2, 3], KRule::Fixed(10.0)).unwrap();
        assert_eq!(table.warnings.len(), 2);
        assert_eq!(table.rows.len(), 2);
    }

    #[test]
    fn projectors_are_polynomials_in_l() {
        let fc = build_circle(4, 400.0).unwrap();
        for m in [-4i32, -1, 0, 2, 4] {
            let direct = fc.ptilde(m);
            let poly = fc.ptilde_as_polynomial(m);
            assert!(poly.frobenius_distance(&direct).unwrap() < 1e-10, "m={m}");
        }
    }

    #[test]
    fn monomials_span_full_algebra() {
        for lambda in [1u32, 2, 3] {
            let fc = build_circle(lambda, 100.0).unwrap();
            let n = fc.dim();
            assert_eq!(circle_monomial_span_rank(&fc), n * n, "Λ={lambda}");
        }
    }
}
