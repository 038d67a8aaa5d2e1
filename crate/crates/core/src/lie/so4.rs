//! The coupled representation π_{Λ/2}⊗π_{Λ/2} of so(4) ≅ su(2)⊕su(2).
//!
//! Two independent constructions of the same generators:
//!
//! * [`so4_coupled_rep`] writes L_a and X^a directly in the coupled basis
//!   |l,m⟩ (l = 0..Λ, ordered l ascending then m ascending), using the
//!   closed-form band action X^a|l,m⟩ = d_l A_l^{a,m}|l−1,m+a⟩
//!   + d_{l+1} A_{l+1}^{−a,m+a}|l+1,m+a⟩ with d_l = √((Λ+1)²−l²).
//! * [`so4_product_oracle`] builds E¹ = π_{Λ/2}⊗I, E² = I⊗π_{Λ/2} in the
//!   product basis, forms L = E¹+E², X = E¹−E², and conjugates into the
//!   coupled basis with Clebsch–Gordan coefficients.
//!
//! The two must agree entrywise; that cross-check is the representation
//! oracle for everything built on top.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::lie::cg::CgBlock;
use crate::lie::su2::su2_irrep;
use crate::operator::Operator;

/// Spherical-component index a ∈ {−1, 0, +1} stored as array slot a+1.
pub const MINUS: usize = 0;
pub const ZERO: usize = 1;
pub const PLUS: usize = 2;

/// so(4) generators on the (Λ+1)²-dimensional coupled space.
#[derive(Debug, Clone)]
pub struct So4Rep {
    pub lambda: u32,
    /// L_a for a ∈ {−,0,+} (slots MINUS, ZERO, PLUS).
    pub l_ops: [Operator; 3],
    /// X^a for a ∈ {−,0,+}.
    pub x_ops: [Operator; 3],
    /// (l, m) label of each basis vector.
    pub basis_labels: Vec<(u32, i32)>,
}

pub fn coupled_dim(lambda: u32) -> usize {
    ((lambda + 1) * (lambda + 1)) as usize
}

/// Index of |l,m⟩ in the (l asc, m asc) ordering: l² + (l+m).
pub fn coupled_index(l: u32, m: i32) -> usize {
    (l * l) as usize + (l as i32 + m) as usize
}

pub fn coupled_labels(lambda: u32) -> Vec<(u32, i32)> {
    let mut labels = Vec::with_capacity(coupled_dim(lambda));
    for l in 0..=lambda {
        for m in -(l as i32)..=(l as i32) {
            labels.push((l, m));
        }
    }
    labels
}

/// The A-coefficients of the spherical-harmonic recursion
/// (x^a/r)·Y_l^m = A_l^{a,m} Y_{l−1}^{m+a} + B_l^{a,m} Y_{l+1}^{m+a},
/// with B_l^{a,m} = A_{l+1}^{−a,m+a}. Out-of-range indices give 0.
pub fn coeff_a(a: i32, l: i32, m: i32) -> f64 {
    if l < 1 || m.abs() > l || (m + a).abs() > l - 1 {
        return 0.0;
    }
    let (lf, mf) = (l as f64, m as f64);
    match a {
        1 => ((lf - mf) * (lf - mf - 1.0) / (2.0 * (2.0 * lf + 1.0) * (2.0 * lf - 1.0))).sqrt(),
        -1 => -((lf + mf) * (lf + mf - 1.0) / (2.0 * (2.0 * lf + 1.0) * (2.0 * lf - 1.0))).sqrt(),
        0 => ((lf + mf) * (lf - mf) / ((2.0 * lf + 1.0) * (2.0 * lf - 1.0))).sqrt(),
        _ => panic!("component index must be -1, 0 or +1"),
    }
}

/// d_l = √((Λ+1)² − l²).
pub fn d_coeff(lambda: u32, l: u32) -> f64 {
    let lam1 = (lambda + 1) as f64;
    (lam1 * lam1 - (l as f64) * (l as f64)).sqrt()
}

/// L_a generators, block-diagonal in l, in the coupled basis.
pub fn coupled_l_ops(lambda: u32) -> [Operator; 3] {
    let dim = coupled_dim(lambda);
    let mut l_plus = DMatrix::<Complex64>::zeros(dim, dim);
    let mut l_zero = DMatrix::<Complex64>::zeros(dim, dim);
    for l in 0..=lambda {
        let li = l as i32;
        for m in -li..=li {
            let col = coupled_index(l, m);
            l_zero[(col, col)] = Complex64::new(m as f64, 0.0);
            if m < li {
                // Cartan–Weyl: L⁺|l,m⟩ = sqrt((l−m)(l+m+1)/2)|l,m+1⟩
                let c = ((li - m) as f64 * (li + m + 1) as f64 / 2.0).sqrt();
                l_plus[(coupled_index(l, m + 1), col)] = Complex64::new(c, 0.0);
            }
        }
    }
    let l_plus = Operator::from_matrix(l_plus);
    let l_minus = l_plus.adjoint();
    [l_minus, Operator::from_matrix(l_zero), l_plus]
}

/// Direct coupled-basis construction of the full so(4) generator set.
pub fn so4_coupled_rep(lambda: u32) -> So4Rep {
    let dim = coupled_dim(lambda);
    let l_ops = coupled_l_ops(lambda);
    let mut x_mats = [
        DMatrix::<Complex64>::zeros(dim, dim),
        DMatrix::<Complex64>::zeros(dim, dim),
        DMatrix::<Complex64>::zeros(dim, dim),
    ];
    for (slot, x) in x_mats.iter_mut().enumerate() {
        let a = slot as i32 - 1;
        for l in 0..=lambda {
            let li = l as i32;
            for m in -li..=li {
                let col = coupled_index(l, m);
                // lowering band l → l−1
                if l >= 1 && (m + a).abs() <= li - 1 {
                    let c = d_coeff(lambda, l) * coeff_a(a, li, m);
                    x[(coupled_index(l - 1, m + a), col)] += Complex64::new(c, 0.0);
                }
                // raising band l → l+1, B_l^{a,m} = A_{l+1}^{−a,m+a}
                if l + 1 <= lambda && (m + a).abs() <= li + 1 {
                    let c = d_coeff(lambda, l + 1) * coeff_a(-a, li + 1, m + a);
                    x[(coupled_index(l + 1, m + a), col)] += Complex64::new(c, 0.0);
                }
            }
        }
    }
    let [xm, xz, xp] = x_mats;
    So4Rep {
        lambda,
        l_ops,
        x_ops: [
            Operator::from_matrix(xm),
            Operator::from_matrix(xz),
            Operator::from_matrix(xp),
        ],
        basis_labels: coupled_labels(lambda),
    }
}

/// Change-of-basis matrix W whose column (l,m) holds the coupled vector
/// |l,m⟩ expanded over the product basis |m1⟩⊗|m2⟩ (Condon–Shortley CG).
pub fn coupling_matrix(lambda: u32) -> Operator {
    let n1 = (lambda + 1) as usize;
    let dim = coupled_dim(lambda);
    let mut w = DMatrix::<Complex64>::zeros(dim, dim);
    for l in 0..=lambda {
        let block = CgBlock::new(lambda, lambda, 2 * l);
        let li = l as i32;
        for m in -li..=li {
            let col = coupled_index(l, m);
            for i1 in 0..n1 {
                let two_m1 = -(lambda as i32) + 2 * i1 as i32;
                let two_m2 = 2 * m - two_m1;
                if two_m2.abs() > lambda as i32 {
                    continue;
                }
                let i2 = ((two_m2 + lambda as i32) / 2) as usize;
                let c = block.get(two_m1, two_m2);
                if c != 0.0 {
                    w[(i1 * n1 + i2, col)] = Complex64::new(c, 0.0);
                }
            }
        }
    }
    Operator::from_matrix(w)
}

/// Independent product-basis construction, conjugated into the coupled
/// basis; the oracle against which [`so4_coupled_rep`] is checked.
pub fn so4_product_oracle(lambda: u32) -> So4Rep {
    let spin = su2_irrep(lambda); // j = Λ/2, doubled label Λ
    let j = spin.cartesian();
    let n1 = (lambda + 1) as usize;
    let id = DMatrix::<Complex64>::identity(n1, n1);
    let mut l_cart = Vec::with_capacity(3);
    let mut x_cart = Vec::with_capacity(3);
    for ji in &j {
        let e1 = ji.matrix().kronecker(&id);
        let e2 = id.kronecker(ji.matrix());
        l_cart.push(Operator::from_matrix(&e1 + &e2));
        x_cart.push(Operator::from_matrix(&e1 - &e2));
    }
    let w = coupling_matrix(lambda);
    let to_coupled = |op: &Operator| Operator::from_matrix(
        w.matrix().adjoint() * op.matrix() * w.matrix(),
    );
    let l_cart: Vec<Operator> = l_cart.iter().map(&to_coupled).collect();
    let x_cart: Vec<Operator> = x_cart.iter().map(&to_coupled).collect();
    So4Rep {
        lambda,
        l_ops: spherical_components(&l_cart),
        x_ops: spherical_components(&x_cart),
        basis_labels: coupled_labels(lambda),
    }
}

/// (v¹,v²,v³) → (v⁻, v⁰, v⁺) via v^± = (v¹ ± i v²)/√2, v⁰ = v³.
pub fn spherical_components(cart: &[Operator]) -> [Operator; 3] {
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    let i = Complex64::new(0.0, 1.0);
    let plus = (&cart[0] + &cart[1].scale(i)).scale_re(inv_sqrt2);
    let minus = (&cart[0] - &cart[1].scale(i)).scale_re(inv_sqrt2);
    [minus, cart[2].clone(), plus]
}

/// (v⁻, v⁰, v⁺) → (v¹,v²,v³).
pub fn cartesian_components(sph: &[Operator; 3]) -> [Operator; 3] {
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    let minus_i = Complex64::new(0.0, -1.0);
    let v1 = (&sph[PLUS] + &sph[MINUS]).scale_re(inv_sqrt2);
    let v2 = (&sph[PLUS] - &sph[MINUS]).scale(minus_i).scale_re(inv_sqrt2);
    [v1, v2, sph[ZERO].clone()]
}

/// Exchange of the two tensor factors, expressed in the coupled basis.
/// Implements the parity automorphism E¹ ↔ E² of so(4).
pub fn tensor_swap_in_coupled_basis(lambda: u32) -> Operator {
    let n1 = (lambda + 1) as usize;
    let dim = coupled_dim(lambda);
    let mut s = DMatrix::<Complex64>::zeros(dim, dim);
    for i1 in 0..n1 {
        for i2 in 0..n1 {
            s[(i1 * n1 + i2, i2 * n1 + i1)] = Complex64::new(1.0, 0.0);
        }
    }
    let w = coupling_matrix(lambda);
    Operator::from_matrix(w.matrix().adjoint() * s * w.matrix())
}

impl So4Rep {
    pub fn dim(&self) -> usize {
        coupled_dim(self.lambda)
    }

    pub fn l_cartesian(&self) -> [Operator; 3] {
        cartesian_components(&self.l_ops)
    }

    pub fn x_cartesian(&self) -> [Operator; 3] {
        cartesian_components(&self.x_ops)
    }

    /// L² = L_aL_{−a} = L⁺L⁻ + L⁻L⁺ + L⁰L⁰.
    pub fn l_squared(&self) -> Operator {
        squared(&self.l_ops)
    }

    pub fn x_squared(&self) -> Operator {
        squared(&self.x_ops)
    }

    /// X·L = X_aL_{−a}.
    pub fn x_dot_l(&self) -> Operator {
        let a = &self.x_ops[PLUS] * &self.l_ops[MINUS];
        let b = &self.x_ops[MINUS] * &self.l_ops[PLUS];
        let c = &self.x_ops[ZERO] * &self.l_ops[ZERO];
        &(&a + &b) + &c
    }

    pub fn l_dot_x(&self) -> Operator {
        let a = &self.l_ops[PLUS] * &self.x_ops[MINUS];
        let b = &self.l_ops[MINUS] * &self.x_ops[PLUS];
        let c = &self.l_ops[ZERO] * &self.x_ops[ZERO];
        &(&a + &b) + &c
    }
}

fn squared(v: &[Operator; 3]) -> Operator {
    let a = &v[PLUS] * &v[MINUS];
    let b = &v[MINUS] * &v[PLUS];
    let c = &v[ZERO] * &v[ZERO];
    &(&a + &b) + &c
}
