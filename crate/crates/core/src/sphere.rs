//! The O(3)-covariant fuzzy sphere S²_Λ.
//!
//! Coordinates x̄^a (a ∈ {−,0,+}) and angular momenta L̄_a act on the
//! (Λ+1)²-dimensional space spanned by ψ_l^m, 0 ≤ l ≤ Λ, |m| ≤ l. The band
//! action
//!
//!   x̄^a ψ_l^m = c_l A_l^{a,m} ψ_{l−1}^{m+a} + c_{l+1} A_{l+1}^{−a,m+a} ψ_{l+1}^{m+a}
//!   c_0 = c_{Λ+1} = 0,  c_l = √(1 + l²/k)
//!
//! is taken as the definition, making the whole identity suite exact up to
//! roundoff. The same algebra is realized inside π_{Λ/2}⊗π_{Λ/2} of Uso(4)
//! as x̄^a = g(λ)X^a g(λ), which is the entrywise cross-check.

use num_complex::Complex64;

use crate::error::Error;
use crate::lie::cg::clebsch_gordan;
use crate::lie::so4::{
    cartesian_components, coeff_a, coupled_dim, coupled_index, coupled_l_ops, coupled_labels,
    so4_coupled_rep, tensor_swap_in_coupled_basis, MINUS, PLUS, ZERO,
};
use crate::lie::su2::su2_irrep;
use crate::operator::Operator;
use crate::report::{ConvergenceRow, ConvergenceTable, KRule, VerificationReport};
use crate::special::{ln_abs_gamma_sq, ln_gamma};

#[derive(Debug, Clone)]
pub struct FuzzySphere {
    pub lambda: u32,
    pub k: f64,
    /// x̄^a for a ∈ {−,0,+} (slots MINUS, ZERO, PLUS).
    pub xbar: [Operator; 3],
    /// L̄_a, block-diagonal in l.
    pub lbar: [Operator; 3],
    /// K = 1/k + (1+Λ²/k)/(2Λ+1), the edge coefficient of Eq. (xx)-type
    /// commutators.
    pub kconst: f64,
    /// Soft cutoff-consistency check Λ(Λ+1) < 2√(2k).
    pub consistency_ok: bool,
}

/// Spherical-harmonic coefficients f_l^m, 0 ≤ l ≤ 2Λ, |m| ≤ l (dense
/// triangular storage, index l² + l + m).
#[derive(Debug, Clone)]
pub struct HarmonicCoeffs2D {
    pub lambda: u32,
    pub coeffs: Vec<Complex64>,
}

impl HarmonicCoeffs2D {
    pub fn from_sparse(lambda: u32, terms: &[(u32, i32, Complex64)]) -> Result<Self, Error> {
        let lmax = 2 * lambda;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); ((lmax + 1) * (lmax + 1)) as usize];
        for &(l, m, c) in terms {
            if l > lmax || m.unsigned_abs() > l {
                return Err(Error::IndexOutOfRange(format!(
                    "harmonic index (l={l}, m={m}) outside 0 ≤ l ≤ {lmax}, |m| ≤ l"
                )));
            }
            coeffs[coupled_index(l, m)] += c;
        }
        Ok(HarmonicCoeffs2D { lambda, coeffs })
    }
}

/// c_l = √(1 + l²/k) for 1 ≤ l ≤ Λ, and c_0 = c_{Λ+1} = 0.
pub fn c_coeff(lambda: u32, k: f64, l: u32) -> f64 {
    if l == 0 || l > lambda {
        0.0
    } else {
        let lf = l as f64;
        (1.0 + lf * lf / k).sqrt()
    }
}

pub fn sphere_consistency_ok(lambda: u32, k: f64) -> bool {
    let lam = lambda as f64;
    lam * (lam + 1.0) < 2.0 * (2.0 * k).sqrt()
}

fn kconst(lambda: u32, k: f64) -> f64 {
    let lam = lambda as f64;
    1.0 / k + (1.0 + lam * lam / k) / (2.0 * lam + 1.0)
}

/// Build S²_Λ from the band action.
pub fn build_sphere(lambda: u32, k: f64) -> Result<FuzzySphere, Error> {
    if lambda < 1 {
        return Err(Error::InvalidParameter("sphere needs Λ ≥ 1".into()));
    }
    if !(k > 0.0) {
        return Err(Error::InvalidParameter("sphere needs k > 0".into()));
    }
    let dim = coupled_dim(lambda);
    let mut x_mats = [
        nalgebra::DMatrix::<Complex64>::zeros(dim, dim),
        nalgebra::DMatrix::<Complex64>::zeros(dim, dim),
        nalgebra::DMatrix::<Complex64>::zeros(dim, dim),
    ];
    for (slot, x) in x_mats.iter_mut().enumerate() {
        let a = slot as i32 - 1;
        for l in 0..=lambda {
            let li = l as i32;
            for m in -li..=li {
                let col = coupled_index(l, m);
                // lowering band l → l−1
                if l >= 1 && (m + a).abs() <= li - 1 {
                    let c = c_coeff(lambda, k, l) * coeff_a(a, li, m);
                    x[(coupled_index(l - 1, m + a), col)] += Complex64::new(c, 0.0);
                }
                // raising band l → l+1, B_l^{a,m} = A_{l+1}^{−a,m+a}
                if l + 1 <= lambda && (m + a).abs() <= li + 1 {
                    let c = c_coeff(lambda, k, l + 1) * coeff_a(-a, li + 1, m + a);
                    x[(coupled_index(l + 1, m + a), col)] += Complex64::new(c, 0.0);
                }
            }
        }
    }
    let [xm, xz, xp] = x_mats;
    Ok(FuzzySphere {
        lambda,
        k,
        xbar: [
            Operator::from_matrix(xm),
            Operator::from_matrix(xz),
            Operator::from_matrix(xp),
        ],
        lbar: coupled_l_ops(lambda),
        kconst: kconst(lambda, k),
        consistency_ok: sphere_consistency_ok(lambda, k),
    })
}

impl FuzzySphere {
    pub fn dim(&self) -> usize {
        coupled_dim(self.lambda)
    }

    pub fn basis_labels(&self) -> Vec<(u32, i32)> {
        coupled_labels(self.lambda)
    }

    /// Projector P̃_l onto the L²-eigenspace with eigenvalue l(l+1).
    pub fn ptilde(&self, l: u32) -> Operator {
        let mut diag = vec![0.0; self.dim()];
        let li = l as i32;
        for m in -li..=li {
            diag[coupled_index(l, m)] = 1.0;
        }
        Operator::from_real_diagonal(&diag)
    }

    /// L̄² = L̄_a L̄_{−a} (diagonal l(l+1)).
    pub fn l_squared(&self) -> Operator {
        let a = &self.lbar[PLUS] * &self.lbar[MINUS];
        let b = &self.lbar[MINUS] * &self.lbar[PLUS];
        let c = &self.lbar[ZERO] * &self.lbar[ZERO];
        &(&a + &b) + &c
    }

    /// R² = x̄⁺x̄⁻ + x̄⁻x̄⁺ + (x̄⁰)² = x̄^i x̄^i.
    pub fn r_squared(&self) -> Operator {
        let a = &self.xbar[PLUS] * &self.xbar[MINUS];
        let b = &self.xbar[MINUS] * &self.xbar[PLUS];
        let c = &self.xbar[ZERO] * &self.xbar[ZERO];
        &(&a + &b) + &c
    }

    /// Closed-form R² eigenvalue on the l-sector.
    pub fn r_squared_predicted(&self, l: u32) -> f64 {
        let (lf, lam) = (l as f64, self.lambda as f64);
        let base = 1.0 + (lf * (lf + 1.0) + 1.0) / self.k;
        if l == self.lambda {
            base - (1.0 + (lam + 1.0) * (lam + 1.0) / self.k) * (lam + 1.0) / (2.0 * lam + 1.0)
        } else {
            base
        }
    }

    /// max_{l<Λ} |spec(R²) − 1| from the diagonal of R².
    pub fn r_squared_max_sub_top_deviation(&self) -> f64 {
        let r2 = self.r_squared();
        let mut max = 0.0f64;
        for l in 0..self.lambda {
            let li = l as i32;
            for m in -li..=li {
                let idx = coupled_index(l, m);
                max = max.max((r2.entry(idx, idx).re - 1.0).abs());
            }
        }
        max
    }

    /// Cartesian x̄^i, Hermitian.
    pub fn x_cartesian(&self) -> [Operator; 3] {
        cartesian_components(&self.xbar)
    }

    /// Cartesian L̄_i, Hermitian.
    pub fn l_cartesian(&self) -> [Operator; 3] {
        cartesian_components(&self.lbar)
    }
}

/// Verify the defining relations of S²_Λ; all residuals are Frobenius norms.
pub fn verify_sphere_algebra(fs: &FuzzySphere, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("sphere", fs.lambda, fs.k);
    let dim = fs.dim();
    let lam = fs.lambda as f64;
    let l2 = fs.l_squared();
    let lc = fs.l_cartesian();
    let xc = fs.x_cartesian();
    let id = Operator::identity(dim);

    // ∏_{l=0}^{Λ} [L̄² − l(l+1)I] = 0. The residual is reported relative
    // to the product of factor norms; the raw product amplifies the
    // ~ulp-level roundoff of L̄² by the spread of the polynomial nodes.
    let mut prod = Operator::identity(dim);
    let mut scale = 1.0f64;
    for l in 0..=fs.lambda {
        let lf = l as f64;
        let factor = &l2 - &id.scale_re(lf * (lf + 1.0));
        scale *= factor.frobenius_norm().max(1.0);
        prod = &prod * &factor;
    }
    rep.push("minimal-poly-L2", prod.frobenius_norm() / scale, tol);

    // ∏_{m=−l}^{l} (L̄₃ − mI) P̃_l = 0 per l (max relative residual over l)
    let mut worst = 0.0f64;
    for l in 0..=fs.lambda {
        let li = l as i32;
        let mut p = fs.ptilde(l);
        let mut scale = 1.0f64;
        for m in -li..=li {
            let factor = &lc[2] - &id.scale_re(m as f64);
            scale *= factor.frobenius_norm().max(1.0);
            p = &factor * &p;
        }
        worst = worst.max(p.frobenius_norm() / scale);
    }
    rep.push("minimal-poly-L3", worst, tol);

    // [L̄_i, L̄_j] = iε^{ijh} L̄_h
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let comm = lc[i].commutator(&lc[j]).unwrap();
            let rhs = epsilon_sum(&lc, i, j);
            worst = worst.max(comm.frobenius_distance(&rhs).unwrap());
        }
    }
    rep.push("so3-commutators", worst, tol);

    // x̄^i L̄_i = 0 = L̄_i x̄^i
    let mut xl = Operator::zeros(dim);
    let mut lx = Operator::zeros(dim);
    for i in 0..3 {
        xl = &xl + &(&xc[i] * &lc[i]);
        lx = &lx + &(&lc[i] * &xc[i]);
    }
    rep.push("x-dot-L", xl.frobenius_norm(), tol);
    rep.push("L-dot-x", lx.frobenius_norm(), tol);

    // [L̄_i, x̄^j] = iε^{ijh} x̄^h
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let comm = lc[i].commutator(&xc[j]).unwrap();
            let rhs = epsilon_sum(&xc, i, j);
            worst = worst.max(comm.frobenius_distance(&rhs).unwrap());
        }
    }
    rep.push("covariance-x", worst, tol);

    // [x̄^i, x̄^j] = iε^{ijh} (−1/k + K P̃_Λ) L̄_h
    let factor = &id.scale_re(-1.0 / fs.k) + &fs.ptilde(fs.lambda).scale_re(fs.kconst);
    let weighted: Vec<Operator> = lc.iter().map(|l| &factor * l).collect();
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let comm = xc[i].commutator(&xc[j]).unwrap();
            let rhs = epsilon_sum(&weighted, i, j);
            worst = worst.max(comm.frobenius_distance(&rhs).unwrap());
        }
    }
    rep.push("xx", worst, tol);

    // R² = 1 + (L̄²+1)/k − [1+(Λ+1)²/k]·(Λ+1)/(2Λ+1)·P̃_Λ
    let top = (1.0 + (lam + 1.0) * (lam + 1.0) / fs.k) * (lam + 1.0) / (2.0 * lam + 1.0);
    let pred = &(&id + &(&l2 + &id).scale_re(1.0 / fs.k)) - &fs.ptilde(fs.lambda).scale_re(top);
    rep.push(
        "R2",
        fs.r_squared().frobenius_distance(&pred).unwrap(),
        tol,
    );

    // (x̄^a)† = x̄^{−a}; Cartesian components Hermitian
    let adj = fs.xbar[PLUS]
        .adjoint()
        .frobenius_distance(&fs.xbar[MINUS])
        .unwrap();
    rep.push("adjoint-x", adj, tol);
    let herm = xc
        .iter()
        .map(|x| x.hermitian_defect())
        .fold(0.0, f64::max);
    rep.push("hermitian-x", herm, tol);
    let herm = lc
        .iter()
        .map(|l| l.hermitian_defect())
        .fold(0.0, f64::max);
    rep.push("hermitian-L", herm, tol);

    rep
}

/// iε^{ijh} v_h summed over h.
fn epsilon_sum(v: &[Operator], i: usize, j: usize) -> Operator {
    let dim = v[0].dim();
    let mut acc = Operator::zeros(dim);
    for h in 0..3 {
        let e = epsilon(i, j, h);
        if e != 0.0 {
            acc = &acc + &v[h].scale(Complex64::new(0.0, e));
        }
    }
    acc
}

fn epsilon(i: usize, j: usize, h: usize) -> f64 {
    match (i, j, h) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -1.0,
        _ => 0.0,
    }
}

/// Which of the paper's two closed forms of g(l) to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GForm {
    Product,
    Gamma,
}

/// The diagonal function of the Uso(4) realization x̄^a = g(λ)X^a g(λ),
/// in its finite-product form or its Γ-function form. g satisfies
/// g(l)g(l−1)d_l = c_l with g(0) = 1/√(Λ+1).
///
/// The Γ-form resums the k-dependent factors into complex-argument gamma
/// functions; it reproduces the finite product only up to a relative
/// O(e^{−π√k}) correction (e.g. at l = 0 it evaluates to
/// 1/√((Λ+1)·tanh(π√k/2))), so the two forms agree to 10⁻¹⁰ once
/// k ≳ 60 and drift apart below that.
pub fn g_function(l: u32, lambda: u32, k: f64, form: GForm) -> Result<f64, Error> {
    if l > lambda {
        return Err(Error::IndexOutOfRange(format!(
            "g(l) needs 0 ≤ l ≤ Λ, got l={l}, Λ={lambda}"
        )));
    }
    let (lf, lam) = (l as f64, lambda as f64);
    match form {
        GForm::Product => {
            let mut ratio = 1.0f64;
            for h in 0..l {
                ratio *= lam + lf - 2.0 * h as f64;
            }
            for h in 0..=l {
                ratio /= lam + lf + 1.0 - 2.0 * h as f64;
            }
            let mut kfac = 1.0f64;
            if l >= 1 {
                for j in 0..=((l - 1) / 2) {
                    let a = (lf - 2.0 * j as f64).powi(2);
                    let b = (lf - 1.0 - 2.0 * j as f64).powi(2);
                    kfac *= (1.0 + a / k) / (1.0 + b / k);
                }
            }
            Ok((ratio * kfac).sqrt())
        }
        GForm::Gamma => {
            let y = k.sqrt() / 2.0;
            let log = ln_gamma((lam + lf) / 2.0 + 1.0) + ln_gamma((lam - lf + 1.0) / 2.0)
                - ln_gamma((lam + 1.0 + lf) / 2.0 + 1.0)
                - ln_gamma((lam - lf) / 2.0 + 1.0)
                + ln_abs_gamma_sq(lf / 2.0 + 1.0, y)
                - ln_abs_gamma_sq((lf + 1.0) / 2.0, y)
                - 0.5 * k.ln();
            Ok((0.5 * log).exp())
        }
    }
}

/// Build S²_Λ inside π_Λ[Uso(4)]: L̄_a = L_a, x̄^a = g(λ)X^a g(λ), where
/// λ = (√(4L²+1)−1)/2 acts as l on |l,m⟩ (L² is diagonal in the coupled
/// basis, so the spectral function is applied on its diagonal).
pub fn realize_sphere_uso4(lambda: u32, k: f64) -> Result<FuzzySphere, Error> {
    if lambda < 1 {
        return Err(Error::InvalidParameter("sphere needs Λ ≥ 1".into()));
    }
    let rep = so4_coupled_rep(lambda);
    let l2 = rep.l_squared();
    let g_diag: Vec<f64> = (0..rep.dim())
        .map(|idx| {
            let lam_eig = (0.25 + l2.entry(idx, idx).re).sqrt() - 0.5;
            let l = lam_eig.round() as u32;
            g_function(l, lambda, k, GForm::Product).unwrap()
        })
        .collect();
    let g = Operator::from_real_diagonal(&g_diag);
    let xbar = [
        &(&g * &rep.x_ops[0]) * &g,
        &(&g * &rep.x_ops[1]) * &g,
        &(&g * &rep.x_ops[2]) * &g,
    ];
    Ok(FuzzySphere {
        lambda,
        k,
        xbar,
        lbar: rep.l_ops,
        kconst: kconst(lambda, k),
        consistency_ok: sphere_consistency_ok(lambda, k),
    })
}

/// Parity: the E¹ ↔ E² swap of so(4), conjugation by the tensor-factor
/// exchange expressed in the coupled basis. Fixes L̄_i, flips x̄^i.
pub fn parity_automorphism(fs: &FuzzySphere) -> Result<FuzzySphere, Error> {
    let s = tensor_swap_in_coupled_basis(fs.lambda);
    Ok(FuzzySphere {
        lambda: fs.lambda,
        k: fs.k,
        xbar: [
            fs.xbar[0].conjugate_by(&s)?,
            fs.xbar[1].conjugate_by(&s)?,
            fs.xbar[2].conjugate_by(&s)?,
        ],
        lbar: [
            fs.lbar[0].conjugate_by(&s)?,
            fs.lbar[1].conjugate_by(&s)?,
            fs.lbar[2].conjugate_by(&s)?,
        ],
        kconst: fs.kconst,
        consistency_ok: fs.consistency_ok,
    })
}

/// Rotation by α ∈ ℝ³: conjugation by exp(iα_iL̄_i). The Cartesian x̄^i
/// transform by the classical matrix R(α) = exp([α]ₓ).
pub fn rotation_automorphism_3d(fs: &FuzzySphere, alpha: [f64; 3]) -> Result<FuzzySphere, Error> {
    let lc = fs.l_cartesian();
    let mut h = Operator::zeros(fs.dim());
    for i in 0..3 {
        h = &h + &lc[i].scale_re(alpha[i]);
    }
    let g = h.exp_i_hermitian(1.0)?;
    Ok(FuzzySphere {
        lambda: fs.lambda,
        k: fs.k,
        xbar: [
            fs.xbar[0].conjugate_by(&g)?,
            fs.xbar[1].conjugate_by(&g)?,
            fs.xbar[2].conjugate_by(&g)?,
        ],
        lbar: [
            fs.lbar[0].conjugate_by(&g)?,
            fs.lbar[1].conjugate_by(&g)?,
            fs.lbar[2].conjugate_by(&g)?,
        ],
        kconst: fs.kconst,
        consistency_ok: fs.consistency_ok,
    })
}

/// Classical rotation matrix R(α) = exp([α]ₓ) (Rodrigues form).
pub fn rotation_matrix(alpha: [f64; 3]) -> [[f64; 3]; 3] {
    let theta = (alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]).sqrt();
    let mut r = [[0.0; 3]; 3];
    if theta < 1e-300 {
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        return r;
    }
    let n = [alpha[0] / theta, alpha[1] / theta, alpha[2] / theta];
    let (s, c) = theta.sin_cos();
    for i in 0..3 {
        for j in 0..3 {
            let kx = -epsilon(i, j, 0) * n[0] - epsilon(i, j, 1) * n[1] - epsilon(i, j, 2) * n[2];
            let delta = if i == j { 1.0 } else { 0.0 };
            r[i][j] = delta * c + s * kx + (1.0 - c) * n[i] * n[j];
        }
    }
    r
}

/// Hilbert–Schmidt inner product normalized so the constant Y₀⁰ = 1/√(4π)
/// corresponds to a unit vector: ⟨A,B⟩ = (4π/(Λ+1)²)·tr(A†B).
pub fn hs_inner(lambda: u32, a: &Operator, b: &Operator) -> Complex64 {
    let dim = coupled_dim(lambda) as f64;
    (&a.adjoint() * b).trace() * Complex64::new(4.0 * std::f64::consts::PI / dim, 0.0)
}

pub fn hs_norm(lambda: u32, a: &Operator) -> f64 {
    hs_inner(lambda, a, a).re.max(0.0).sqrt()
}

/// The normalization constant of Ŷ_l^l = M_l (x̄⁺)^l:
/// M_l = (−1)^l √((2l+1)!/4π) / (2^{l/2} l!), exactly the coefficient of
/// (x⁺/r)^l in the classical Y_l^l (Condon–Shortley sign included). With
/// this choice Ŷ₀⁰ = (1/√4π)·1 and Ŷ_l^m → Y_l^m· strongly; the
/// Hilbert–Schmidt norm of Ŷ_l^m tends to 1 from below (the deficit is the
/// weight of the truncated band edge).
pub fn harmonic_normalization(l: u32) -> f64 {
    let mut m = 1.0 / (4.0 * std::f64::consts::PI);
    for j in 1..=2 * l + 1 {
        m *= j as f64;
    }
    for j in 1..=l {
        m /= (j * j) as f64 * 2.0;
    }
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    sign * m.sqrt()
}

/// The fuzzy spherical harmonics Ŷ_l^m for fixed l, indexed by m+l.
///
/// Ŷ_l^l = M_l (x̄⁺)^l is the top of an adjoint spin-l multiplet
/// ([L̄₊, x̄⁺] = 0); lowering with the Cartan–Weyl factors
/// √((l+m)(l−m+1)/2) walks down the multiplet, reproducing the closed-form
/// prefactor √((l+m)!2^{l−m}/((2l)!(l−m)!)).
pub fn fuzzy_harmonic_family(fs: &FuzzySphere, l: u32) -> Result<Vec<Operator>, Error> {
    if l > 2 * fs.lambda {
        return Err(Error::IndexOutOfRange(format!(
            "fuzzy harmonic needs l ≤ 2Λ = {}, got {l}",
            2 * fs.lambda
        )));
    }
    let li = l as i32;
    let top = fs.xbar[PLUS].pow(l);
    let mut family = vec![Operator::zeros(fs.dim()); (2 * l + 1) as usize];
    family[(2 * l) as usize] = top.scale_re(harmonic_normalization(l));
    for m in (1 - li..=li).rev() {
        let lf = l as f64;
        let mf = m as f64;
        let factor = ((lf + mf) * (lf - mf + 1.0) / 2.0).sqrt();
        let lowered = fs.lbar[MINUS]
            .commutator(&family[(li + m) as usize])
            .unwrap()
            .scale_re(1.0 / factor);
        family[(li + m - 1) as usize] = lowered;
    }
    Ok(family)
}

pub fn fuzzy_harmonic(fs: &FuzzySphere, l: u32, m: i32) -> Result<Operator, Error> {
    if m.unsigned_abs() > l {
        return Err(Error::IndexOutOfRange(format!(
            "fuzzy harmonic needs |m| ≤ l, got l={l}, m={m}"
        )));
    }
    let family = fuzzy_harmonic_family(fs, l)?;
    Ok(family[(l as i32 + m) as usize].clone())
}

/// f̂_Λ = Σ_{l=0}^{2Λ} Σ_{|m|≤l} f_l^m Ŷ_l^m.
pub fn fuzzy_function_2d(fs: &FuzzySphere, f: &HarmonicCoeffs2D) -> Result<Operator, Error> {
    if f.lambda != fs.lambda {
        return Err(Error::BadShape {
            expected: ((2 * fs.lambda + 1) * (2 * fs.lambda + 1)) as usize,
            got: f.coeffs.len(),
        });
    }
    let mut acc = Operator::zeros(fs.dim());
    for l in 0..=2 * fs.lambda {
        let li = l as i32;
        if (-li..=li).all(|m| f.coeffs[coupled_index(l, m)] == Complex64::new(0.0, 0.0)) {
            continue;
        }
        let family = fuzzy_harmonic_family(fs, l)?;
        for m in -li..=li {
            let c = f.coeffs[coupled_index(l, m)];
            if c != Complex64::new(0.0, 0.0) {
                acc = &acc + &family[(li + m) as usize].scale(c);
            }
        }
    }
    Ok(acc)
}

/// Gaunt coefficient ∫ Y_{l1}^{m1} Y_{l2}^{m2} (Y_L^{m1+m2})* dΩ, via
/// Clebsch–Gordan coefficients.
pub fn gaunt(l1: u32, m1: i32, l2: u32, m2: i32, big_l: u32) -> f64 {
    let pre = ((2 * l1 + 1) as f64 * (2 * l2 + 1) as f64
        / (4.0 * std::f64::consts::PI * (2 * big_l + 1) as f64))
        .sqrt();
    let c0 = clebsch_gordan(2 * l1, 2 * l2, 2 * big_l, 0, 0);
    let cm = clebsch_gordan(2 * l1, 2 * l2, 2 * big_l, 2 * m1, 2 * m2);
    pre * c0 * cm
}

/// Multiplication of spherical-harmonic expansions: the classical oracle
/// (f·φ)(x) expanded back over Y_L^M with Gaunt coefficients.
pub fn classical_product_2d(
    f: &[(u32, i32, Complex64)],
    phi: &[(u32, i32, Complex64)],
) -> Vec<(u32, i32, Complex64)> {
    let mut out: std::collections::BTreeMap<(u32, i32), Complex64> =
        std::collections::BTreeMap::new();
    for &(l1, m1, fc) in f {
        for &(l2, m2, pc) in phi {
            let lo = l1.abs_diff(l2);
            for big_l in lo..=l1 + l2 {
                let g = gaunt(l1, m1, l2, m2, big_l);
                if g != 0.0 {
                    *out.entry((big_l, m1 + m2))
                        .or_insert(Complex64::new(0.0, 0.0)) += g * fc * pc;
                }
            }
        }
    }
    out.into_iter().map(|((l, m), c)| (l, m, c)).collect()
}

/// Classical multiplication by x^a/r on a harmonic expansion:
/// (x^a/r)Y_l^m = A_l^{a,m} Y_{l−1}^{m+a} + A_{l+1}^{−a,m+a} Y_{l+1}^{m+a}.
pub fn classical_coordinate_product(
    a: i32,
    phi: &[(u32, i32, Complex64)],
) -> Vec<(u32, i32, Complex64)> {
    let mut out: std::collections::BTreeMap<(u32, i32), Complex64> =
        std::collections::BTreeMap::new();
    for &(l, m, pc) in phi {
        let li = l as i32;
        if l >= 1 {
            let c = coeff_a(a, li, m);
            if c != 0.0 {
                *out.entry((l - 1, m + a)).or_insert(Complex64::new(0.0, 0.0)) += c * pc;
            }
        }
        let c = coeff_a(-a, li + 1, m + a);
        if c != 0.0 {
            *out.entry((l + 1, m + a)).or_insert(Complex64::new(0.0, 0.0)) += c * pc;
        }
    }
    out.into_iter().map(|((l, m), c)| (l, m, c)).collect()
}

fn truncate_to_vector(lambda: u32, phi: &[(u32, i32, Complex64)]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); coupled_dim(lambda)];
    for &(l, m, c) in phi {
        if l <= lambda && m.unsigned_abs() <= l {
            v[coupled_index(l, m)] += c;
        }
    }
    v
}

fn embedded_difference_norm(
    lambda: u32,
    fuzzy: &[Complex64],
    classical: &[(u32, i32, Complex64)],
) -> f64 {
    let mut norm_sq = 0.0f64;
    let mut seen = std::collections::BTreeSet::new();
    for &(l, m, c) in classical {
        let fz = if l <= lambda {
            fuzzy[coupled_index(l, m)]
        } else {
            Complex64::new(0.0, 0.0)
        };
        norm_sq += (fz - c).norm_sqr();
        if l <= lambda {
            seen.insert(coupled_index(l, m));
        }
    }
    for (idx, &fz) in fuzzy.iter().enumerate() {
        if !seen.contains(&idx) {
            norm_sq += fz.norm_sqr();
        }
    }
    norm_sq.sqrt()
}

fn apply_to_vector(op: &Operator, v: &[Complex64]) -> Vec<Complex64> {
    let dim = v.len();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (row, slot) in out.iter_mut().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for (col, &vc) in v.iter().enumerate() {
            s += op.entry(row, col) * vc;
        }
        *slot = s;
    }
    out
}

/// ‖(f̂_Λ − f·)φ‖ in the embedded picture, with the classical side computed
/// by Gaunt-coefficient products (components above the cutoff count fully).
pub fn sphere_embedded_norm(
    fs: &FuzzySphere,
    f: &[(u32, i32, Complex64)],
    phi: &[(u32, i32, Complex64)],
) -> Result<f64, Error> {
    let fhat = fuzzy_function_2d(fs, &HarmonicCoeffs2D::from_sparse(fs.lambda, f)?)?;
    let v = truncate_to_vector(fs.lambda, phi);
    let fuzzy = apply_to_vector(&fhat, &v);
    let classical = classical_product_2d(f, phi);
    Ok(embedded_difference_norm(fs.lambda, &fuzzy, &classical))
}

/// ‖(x̄^i − (x^i/r)·)φ‖ for a Cartesian coordinate index i ∈ {0,1,2}.
pub fn sphere_coordinate_norm(
    fs: &FuzzySphere,
    i: usize,
    phi: &[(u32, i32, Complex64)],
) -> Result<f64, Error> {
    let xc = fs.x_cartesian();
    let v = truncate_to_vector(fs.lambda, phi);
    let fuzzy = apply_to_vector(&xc[i], &v);
    // x¹/r = (x⁺+x⁻)/√2, x²/r = (x⁺−x⁻)/(i√2), x³/r = x⁰ on harmonics
    let inv_sqrt2 = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let minus_i_inv_sqrt2 = Complex64::new(0.0, -1.0 / 2f64.sqrt());
    let plus = classical_coordinate_product(1, phi);
    let minus = classical_coordinate_product(-1, phi);
    let classical: Vec<(u32, i32, Complex64)> = match i {
        0 => merge_scaled(&[(inv_sqrt2, &plus), (inv_sqrt2, &minus)]),
        1 => merge_scaled(&[(minus_i_inv_sqrt2, &plus), (-minus_i_inv_sqrt2, &minus)]),
        2 => classical_coordinate_product(0, phi),
        _ => {
            return Err(Error::IndexOutOfRange(
                "coordinate index must be 0, 1 or 2".into(),
            ))
        }
    };
    Ok(embedded_difference_norm(fs.lambda, &fuzzy, &classical))
}

fn merge_scaled(
    parts: &[(Complex64, &Vec<(u32, i32, Complex64)>)],
) -> Vec<(u32, i32, Complex64)> {
    let mut out: std::collections::BTreeMap<(u32, i32), Complex64> =
        std::collections::BTreeMap::new();
    for &(scale, terms) in parts {
        for &(l, m, c) in terms.iter() {
            *out.entry((l, m)).or_insert(Complex64::new(0.0, 0.0)) += scale * c;
        }
    }
    out.into_iter().map(|((l, m), c)| (l, m, c)).collect()
}

/// Strong-convergence scan. Per Λ the row holds ‖(f̂_Λ − f·)φ‖, the
/// coordinate companion norms ‖(x̄^i − (x^i/r)·)φ‖, and the edge column
/// ‖(x̄³ − (z/r)·)ψ_Λ^0‖, which stays above 1/2 for every Λ because the
/// classical product leaks the amplitude A_{Λ+1}^{0,0} > 1/2 into the
/// truncated l = Λ+1 level.
pub fn sphere_convergence_scan(
    f: &[(u32, i32, Complex64)],
    phi: &[(u32, i32, Complex64)],
    lambdas: &[u32],
    k_rule: KRule,
) -> Result<ConvergenceTable, Error> {
    let mut table = ConvergenceTable::new();
    for &lambda in lambdas {
        let k = k_rule.k_for(lambda)?;
        let k_bound = KRule::Prop43.k_for(lambda)?;
        if k < k_bound {
            table.warnings.push(format!(
                "Λ={lambda}: k={k} below the strong-convergence bound {k_bound}"
            ));
        }
        let fs = build_sphere(lambda, k)?;
        let norm = sphere_embedded_norm(&fs, f, phi)?;
        let coordinate_norms = (0..3)
            .map(|i| sphere_coordinate_norm(&fs, i, phi))
            .collect::<Result<Vec<_>, _>>()?;
        let edge_phi = vec![(lambda, 0, Complex64::new(1.0, 0.0))];
        let edge_norm = sphere_coordinate_norm(&fs, 2, &edge_phi)?;
        table.push(ConvergenceRow {
            lambda,
            k,
            norm,
            edge_norm,
            coordinate_norms,
            description: "sphere".into(),
        });
    }
    Ok(table)
}

/// Rank of the span of products of x̄^a, L̄_a: breadth-first growth over
/// words in the six generators, orthogonalizing as it goes. Equals (Λ+1)⁴
/// iff the generators span the full matrix algebra End(H_Λ).
pub fn sphere_monomial_span_rank(fs: &FuzzySphere) -> usize {
    let dim = fs.dim();
    let full = dim * dim;
    let gens: Vec<&Operator> = fs.xbar.iter().chain(fs.lbar.iter()).collect();
    // orthonormal span (vectorized), plus the word that produced each entry
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut frontier: Vec<Operator> = vec![Operator::identity(dim)];
    let try_add = |basis: &mut Vec<Vec<Complex64>>, op: &Operator| -> bool {
        let mut v = op.vectorize();
        for b in basis.iter() {
            let mut proj = Complex64::new(0.0, 0.0);
            for (bi, vi) in b.iter().zip(v.iter()) {
                proj += bi.conj() * vi;
            }
            for (bi, vi) in b.iter().zip(v.iter_mut()) {
                *vi -= proj * bi;
            }
        }
        let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 {
            for c in v.iter_mut() {
                *c /= Complex64::new(norm, 0.0);
            }
            basis.push(v);
            true
        } else {
            false
        }
    };
    try_add(&mut basis, &frontier[0]);
    while !frontier.is_empty() && basis.len() < full {
        let mut next = Vec::new();
        'words: for w in &frontier {
            for g in &gens {
                let prod = w * *g;
                if try_add(&mut basis, &prod) {
                    next.push(prod);
                    if basis.len() == full {
                        break 'words;
                    }
                }
            }
        }
        frontier = next;
    }
    basis.len()
}

/// The Madore–Hoppe fuzzy sphere x^i = 2L_i/√(n²−1) on ℂⁿ.
#[derive(Debug, Clone)]
pub struct MadoreFS {
    pub n: u32,
    pub x: [Operator; 3],
}

/// Baseline report: the defining relations of the Madore fuzzy sphere and
/// its parity-violation magnitude. Substituting x^i → −x^i leaves the
/// commutator LHS invariant but flips the linear RHS, so the residual of
/// the parity-transformed relation is 2‖RHS‖ — strictly positive, in
/// contrast with the parity-exact S²_Λ.
pub struct MadoreReport {
    pub fs: MadoreFS,
    pub report: VerificationReport,
    pub parity_violation: f64,
}

pub fn madore_baseline(n: u32, tol: f64) -> Result<MadoreReport, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter("Madore sphere needs n ≥ 2".into()));
    }
    let scale = 2.0 / ((n * n - 1) as f64).sqrt();
    let j = su2_irrep(n - 1).cartesian();
    let x = [
        j[0].scale_re(scale),
        j[1].scale_re(scale),
        j[2].scale_re(scale),
    ];
    let mut rep = VerificationReport::new("madore", n - 1, f64::NAN);
    // [x^i,x^j] = (2i/√(n²−1)) ε^{ijk} x^k
    let mut worst = 0.0f64;
    let mut violation = 0.0f64;
    for i in 0..3 {
        for jx in 0..3 {
            let comm = x[i].commutator(&x[jx]).unwrap();
            let mut rhs = Operator::zeros(n as usize);
            for h in 0..3 {
                let e = epsilon(i, jx, h);
                if e != 0.0 {
                    rhs = &rhs + &x[h].scale(Complex64::new(0.0, e * scale));
                }
            }
            worst = worst.max(comm.frobenius_distance(&rhs).unwrap());
            // x^i → −x^i: LHS fixed, RHS flipped
            violation = violation.max(comm.frobenius_distance(&rhs.scale_re(-1.0)).unwrap());
        }
    }
    rep.push("FS-commutator", worst, tol);
    let mut r2 = Operator::zeros(n as usize);
    for xi in &x {
        r2 = &r2 + &(xi * xi);
    }
    rep.push(
        "FS-radius",
        r2.frobenius_distance(&Operator::identity(n as usize)).unwrap(),
        tol,
    );
    Ok(MadoreReport {
        fs: MadoreFS { n, x },
        report: rep,
        parity_violation: violation,
    })
}
