//! Dense complex matrix algebra with Hermitian spectral decomposition.
//!
//! Every generator in this crate (ladder operators, coordinates, projectors)
//! is an [`Operator`]: a dense square matrix over ℂ in f64 arithmetic.
//! Generators are block-tridiagonal in practice, but dimensions stay small
//! enough (≲ 2000) that dense storage keeps everything simple.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Error;

/// Dense complex square matrix; immutable by convention after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: DMatrix<Complex64>,
}

/// Spectral decomposition of a Hermitian operator.
///
/// Eigenvalues sorted ascending; eigenvector columns orthonormal, with the
/// phase of each column fixed so its first component of non-negligible
/// magnitude is positive real. This makes comparisons against independently
/// built bases deterministic.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl EigenSystem {
    /// V diag(λ) V† — reconstructs the decomposed operator.
    pub fn reconstruct(&self) -> Operator {
        let n = self.eigenvalues.len();
        let diag = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(self.eigenvalues[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Operator {
            mat: &self.eigenvectors * diag * self.eigenvectors.adjoint(),
        }
    }
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Operator {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            mat: DMatrix::identity(dim, dim),
        }
    }

    /// Build from a row-major list of dim² entries.
    pub fn from_entries(dim: usize, entries: &[Complex64]) -> Result<Self, Error> {
        if entries.len() != dim * dim {
            return Err(Error::BadShape {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Operator {
            mat: DMatrix::from_row_slice(dim, dim, entries),
        })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Operator {
            mat: DMatrix::from_fn(dim, dim, f),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Operator::from_fn(diag.len(), |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Rank-1 projector |e_i⟩⟨e_i| onto a basis vector.
    pub fn basis_projector(dim: usize, index: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(index, index)] = Complex64::new(1.0, 0.0);
        Operator { mat: m }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    pub fn from_matrix(mat: DMatrix<Complex64>) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "operator must be square");
        Operator { mat }
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            mat: self.mat.adjoint(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Operator {
        Operator {
            mat: &self.mat * c,
        }
    }

    pub fn scale_re(&self, c: f64) -> Operator {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.diagonal().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Operator) -> Result<f64, Error> {
        self.check_dim(other)?;
        Ok((self.mat.clone() - &other.mat)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// AB − BA.
    pub fn commutator(&self, other: &Operator) -> Result<Operator, Error> {
        self.check_dim(other)?;
        Ok(Operator {
            mat: &self.mat * &other.mat - &other.mat * &self.mat,
        })
    }

    /// AB + BA.
    pub fn anticommutator(&self, other: &Operator) -> Result<Operator, Error> {
        self.check_dim(other)?;
        Ok(Operator {
            mat: &self.mat * &other.mat + &other.mat * &self.mat,
        })
    }

    /// Σ coeffs[j]·A^j, with A⁰ = I (Horner evaluation).
    pub fn polynomial_apply(&self, coeffs: &[Complex64]) -> Operator {
        let n = self.dim();
        let mut acc = DMatrix::<Complex64>::zeros(n, n);
        for &c in coeffs.iter().rev() {
            acc = &acc * &self.mat;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Operator { mat: acc }
    }

    pub fn pow(&self, n: u32) -> Operator {
        let mut acc = Operator::identity(self.dim());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Frobenius norm of A − A†.
    pub fn hermitian_defect(&self) -> f64 {
        (self.mat.clone() - self.mat.adjoint())
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Spectral decomposition; rejects input whose Hermitian defect exceeds
    /// 10⁻¹⁰·(1 + ‖A‖_F).
    pub fn hermitian_eigensystem(&self) -> Result<EigenSystem, Error> {
        let defect = self.hermitian_defect();
        if defect > 1e-10 * (1.0 + self.frobenius_norm()) {
            return Err(Error::NotHermitian { asymmetry: defect });
        }
        let n = self.dim();
        // Symmetrize to kill roundoff before decomposing.
        let h = (self.mat.clone() + self.mat.adjoint()).scale(0.5);
        let eig = nalgebra::SymmetricEigen::new(h);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let mut eigenvalues = Vec::with_capacity(n);
        let mut eigenvectors = DMatrix::<Complex64>::zeros(n, n);
        for (col, &idx) in order.iter().enumerate() {
            eigenvalues.push(eig.eigenvalues[idx]);
            let mut v: Vec<Complex64> = (0..n).map(|i| eig.eigenvectors[(i, idx)]).collect();
            fix_phase(&mut v);
            for i in 0..n {
                eigenvectors[(i, col)] = v[i];
            }
        }
        Ok(EigenSystem {
            eigenvalues,
            eigenvectors,
        })
    }

    /// exp(i·t·A) for Hermitian A, evaluated spectrally. Used for the
    /// automorphism groups, where A is a real combination of generators.
    pub fn exp_i_hermitian(&self, t: f64) -> Result<Operator, Error> {
        let eig = self.hermitian_eigensystem()?;
        let n = self.dim();
        let phases = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, t * eig.eigenvalues[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let v = eig.eigenvectors;
        Ok(Operator {
            mat: &v * phases * v.adjoint(),
        })
    }

    /// g A g† (adjoint action of a unitary g).
    pub fn conjugate_by(&self, g: &Operator) -> Result<Operator, Error> {
        self.check_dim(g)?;
        Ok(Operator {
            mat: &g.mat * &self.mat * g.mat.adjoint(),
        })
    }

    /// Column-stacked vectorization (dim² complex components).
    pub fn vectorize(&self) -> Vec<Complex64> {
        self.mat.iter().copied().collect()
    }

    fn check_dim(&self, other: &Operator) -> Result<(), Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

fn fix_phase(v: &mut [Complex64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-8 * max).copied() {
        let phase = z / z.norm();
        let correction = phase.conj();
        for c in v.iter_mut() {
            *c *= correction;
        }
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator {
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl std::ops::Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator { mat: -&self.mat }
    }
}

/// Rank of the span of vectorized operators, via modified Gram–Schmidt.
///
/// Used for the generation tests: the *-algebra generated by the fuzzy
/// coordinates must exhaust End(H_Λ).
pub fn span_rank(ops: &[Operator], tol: f64) -> usize {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for op in ops {
        let mut v = op.vectorize();
        let norm0 = vec_norm(&v);
        if norm0 == 0.0 {
            continue;
        }
        for b in &basis {
            let proj: Complex64 = b.iter().zip(v.iter()).map(|(bi, vi)| bi.conj() * vi).sum();
            for (vi, bi) in v.iter_mut().zip(b.iter()) {
                *vi -= proj * bi;
            }
        }
        let norm = vec_norm(&v);
        if norm > tol * norm0 {
            let inv = Complex64::new(1.0 / norm, 0.0);
            for vi in v.iter_mut() {
                *vi *= inv;
            }
            basis.push(v);
        }
    }
    basis.len()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let a = Operator::from_fn(3, |i, j| c((i * 3 + j) as f64, (i as f64) - (j as f64)));
        let id = Operator::identity(3);
        let comm = id.commutator(&a).unwrap();
        assert!(comm.frobenius_norm() < 1e-14);
        let self_comm = a.commutator(&a).unwrap();
        assert!(self_comm.frobenius_norm() < 1e-14);
    }

    #[test]
    fn sigma_plus_minus_commutator_gives_sigma_zero() {
        // Cartan-Weyl on the 2-dim irrep: E± = σ±/√2, E0 = σ3/2.
        let s = 1.0 / 2f64.sqrt();
        let e_plus = Operator::from_entries(2, &[c(0., 0.), c(s, 0.), c(0., 0.), c(0., 0.)]).unwrap();
        let e_minus = e_plus.adjoint();
        let e_zero = Operator::from_real_diagonal(&[0.5, -0.5]);
        let comm = e_plus.commutator(&e_minus).unwrap();
        assert!(comm.frobenius_distance(&e_zero).unwrap() < 1e-15);
    }

    #[test]
    fn commutator_rejects_dimension_mismatch() {
        let a = Operator::identity(2);
        let b = Operator::identity(3);
        assert!(matches!(
            a.commutator(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(a.frobenius_distance(&b).is_err());
    }

    #[test]
    fn frobenius_distance_values() {
        let a = Operator::from_real_diagonal(&[1.0, 0.0]);
        let b = Operator::from_real_diagonal(&[0.0, 1.0]);
        assert!((a.frobenius_distance(&a).unwrap()).abs() < 1e-15);
        assert!((a.frobenius_distance(&b).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let z = Operator::zeros(2);
        let id = Operator::identity(2);
        assert!((z.frobenius_distance(&id).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn eigensystem_sorts_and_reconstructs() {
        let a = Operator::from_real_diagonal(&[3.0, 1.0, 2.0]);
        let eig = a.hermitian_eigensystem().unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);

        let b = Operator::from_entries(2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let eig = b.hermitian_eigensystem().unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigensystem_rejects_non_hermitian() {
        let a = Operator::from_entries(2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        match a.hermitian_eigensystem() {
            Err(Error::NotHermitian { asymmetry }) => assert!(asymmetry > 1.0),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn polynomial_apply_basics() {
        let a = Operator::from_real_diagonal(&[-1.0, 0.0, 1.0]);
        // coeffs [0,1] -> A itself; coeffs [1] -> I.
        let p = a.polynomial_apply(&[c(0., 0.), c(1., 0.)]);
        assert!(p.frobenius_distance(&a).unwrap() < 1e-15);
        let one = a.polynomial_apply(&[c(1., 0.)]);
        assert!(one.frobenius_distance(&Operator::identity(3)).unwrap() < 1e-15);
        // Minimal polynomial x(x-1)(x+1) = x³ - x annihilates diag(-1,0,1).
        let min = a.polynomial_apply(&[c(0., 0.), c(-1., 0.), c(0., 0.), c(1., 0.)]);
        assert!(min.frobenius_norm() < 1e-15);
    }

    #[test]
    fn exp_i_hermitian_is_unitary() {
        let h = Operator::from_entries(
            2,
            &[c(1., 0.), c(0., -2.), c(0., 2.), c(-1., 0.)],
        )
        .unwrap();
        let g = h.exp_i_hermitian(0.7).unwrap();
        let gg = &g * &g.adjoint();
        assert!(gg.frobenius_distance(&Operator::identity(2)).unwrap() < 1e-12);
    }

    #[test]
    fn span_rank_counts_independent_matrices() {
        let ops = vec![
            Operator::identity(2),
            Operator::from_real_diagonal(&[1.0, -1.0]),
            Operator::identity(2).scale_re(2.0),
        ];
        assert_eq!(span_rank(&ops, 1e-10), 2);
    }
}
