//! Irreducible unitary representations of su(2).
//!
//! Generators come in the Cartan–Weyl normalization [E⁺,E⁻] = E⁰,
//! [E⁰,E^±] = ±E^±, (E^a)† = E^{−a} (note: not the physics convention
//! [J⁺,J⁻] = 2J₀; the two differ by E^± = J^±/√2). Basis vectors |m⟩ are
//! ordered by m ascending.

use num_complex::Complex64;

use crate::error::Error;
use crate::operator::Operator;

/// The (2l+1)-dimensional irrep with highest weight l (possibly half-integer).
#[derive(Debug, Clone)]
pub struct Su2Irrep {
    pub two_l: u32,
    pub e_plus: Operator,
    pub e_minus: Operator,
    pub e_zero: Operator,
}

/// Build the spin-l irrep; `two_l` is the doubled label 2l.
pub fn su2_irrep(two_l: u32) -> Su2Irrep {
    let dim = (two_l + 1) as usize;
    let l = two_l as f64 / 2.0;
    let mut e_zero_diag = vec![0.0f64; dim];
    let mut plus_entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for idx in 0..dim {
        let m = -l + idx as f64;
        e_zero_diag[idx] = m;
        if idx + 1 < dim {
            // E⁺|m⟩ = sqrt((l−m)(l+m+1)/2) |m+1⟩
            let coeff = ((l - m) * (l + m + 1.0) / 2.0).sqrt();
            plus_entries[(idx + 1) * dim + idx] = Complex64::new(coeff, 0.0);
        }
    }
    let e_plus = Operator::from_entries(dim, &plus_entries).unwrap();
    let e_minus = e_plus.adjoint();
    let e_zero = Operator::from_real_diagonal(&e_zero_diag);
    Su2Irrep {
        two_l,
        e_plus,
        e_minus,
        e_zero,
    }
}

/// Parse a label like "2" or "3/2" into a doubled integer.
pub fn parse_spin_label(s: &str) -> Result<u32, Error> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        if den.trim() == "2" {
            let n: u32 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidLabel(s.to_string()))?;
            return Ok(n);
        }
        return Err(Error::InvalidLabel(s.to_string()));
    }
    let n: u32 = s.parse().map_err(|_| Error::InvalidLabel(s.to_string()))?;
    Ok(2 * n)
}

impl Su2Irrep {
    pub fn dim(&self) -> usize {
        (self.two_l + 1) as usize
    }

    /// Casimir C = E⁺E⁻ + E⁻E⁺ + E⁰E⁰ = l(l+1)·I.
    pub fn casimir(&self) -> Operator {
        let pm = &self.e_plus * &self.e_minus;
        let mp = &self.e_minus * &self.e_plus;
        let zz = &self.e_zero * &self.e_zero;
        &(&pm + &mp) + &zz
    }

    /// Physics-normalized cartesian generators J₁, J₂, J₃
    /// ([J_i,J_j] = iε^{ijk}J_k); used by the so(4) product-basis oracle.
    pub fn cartesian(&self) -> [Operator; 3] {
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        // J± = √2 E±; J1 = (J+ + J−)/2, J2 = (J+ − J−)/2i.
        let j1 = (&self.e_plus + &self.e_minus).scale_re(inv_sqrt2);
        let j2 = (&self.e_plus - &self.e_minus).scale(Complex64::new(0.0, -inv_sqrt2));
        [j1, j2, self.e_zero.clone()]
    }
}
