//! Fixed-size complex 3×3 arithmetic and the spectral routines every other
//! module relies on.

pub mod cubic;
pub mod elim;
mod mat3;

pub use cubic::{Cubic, Root};
pub use elim::Dense;
pub use mat3::{cplx, cplx_pair, expi, Cplx, Mat3, Tol, I, OMEGA, ONE, ZERO};

use nalgebra::Matrix3;

use crate::error::{Error, Result};

/// One distinct eigenvalue with its multiplicities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen {
    pub value: Cplx,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigen>,
    pub diagonalizable: bool,
}

impl Spectrum {
    /// Eigenvalues repeated by algebraic multiplicity.
    pub fn expanded(&self) -> [Cplx; 3] {
        let mut out = [ZERO; 3];
        let mut n = 0;
        for e in &self.eigenvalues {
            for _ in 0..e.algebraic {
                out[n] = e.value;
                n += 1;
            }
        }
        out
    }

    pub fn distinct(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Coefficients of the characteristic polynomial `X^3 - tr X^2 + s2 X - det`.
pub fn char_cubic(m: &Mat3) -> Cubic {
    Cubic::new(-m.trace(), m.adjugate().trace(), -m.det())
}

/// `(tr m, tr m^-1)` for `m` in SL(3,C); the characteristic polynomial is then
/// `X^3 - z X^2 + w X - 1`.
pub fn char_poly_sl3(m: &Mat3) -> Result<(Cplx, Cplx)> {
    char_poly_sl3_with(m, &Tol::DEFAULT)
}

pub fn char_poly_sl3_with(m: &Mat3, tol: &Tol) -> Result<(Cplx, Cplx)> {
    let d = m.det();
    if !tol.close(d, ONE) {
        return Err(Error::NotUnimodular { re: d.re, im: d.im });
    }
    // det = 1, so m^-1 = adj(m)
    Ok((m.trace(), m.adjugate().trace()))
}

pub fn spectrum(m: &Mat3) -> Spectrum {
    spectrum_with(m, &Tol::DEFAULT)
}

pub fn spectrum_with(m: &Mat3, tol: &Tol) -> Spectrum {
    let roots = char_cubic(m).roots(tol);
    let mut eigenvalues = Vec::with_capacity(roots.len());
    for r in &roots {
        let shifted = *m - Mat3::scalar(r.value);
        let rank = rank3(&shifted, tol.pair_eps(1.0));
        let geometric = (3 - rank).clamp(1, r.multiplicity);
        eigenvalues.push(Eigen {
            value: r.value,
            algebraic: r.multiplicity,
            geometric,
        });
    }
    let diagonalizable = eigenvalues.iter().all(|e| e.algebraic == e.geometric);
    Spectrum {
        eigenvalues,
        diagonalizable,
    }
}

fn to_dense(m: &Mat3) -> Dense {
    Dense {
        rows: 3,
        cols: 3,
        data: m.to_vec9().to_vec(),
    }
}

/// Numerical rank of a 3×3 matrix, pivots relative to `max(1, max |m_ij|)`.
pub fn rank3(m: &Mat3, rel_tol: f64) -> usize {
    elim::rank(&to_dense(m), rel_tol)
}

/// Basis of the kernel of `m`, orthonormalized.
pub fn kernel3(m: &Mat3, rel_tol: f64) -> Vec<[Cplx; 3]> {
    let red = elim::reduce(&to_dense(m), rel_tol);
    let mut basis: Vec<Vec<Cplx>> = Vec::new();
    for v in red.kernel {
        if let Some(u) = elim::orthogonalize(&basis, &v, 1e-12) {
            basis.push(u);
        }
    }
    basis.into_iter().map(|v| [v[0], v[1], v[2]]).collect()
}

/// Eigenspace of `m` for `lambda`, as an orthonormal basis.
pub fn eigenspace(m: &Mat3, lambda: Cplx, tol: &Tol) -> Vec<[Cplx; 3]> {
    kernel3(&(*m - Mat3::scalar(lambda)), tol.pair_eps(1.0))
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(h: &Mat3) -> [f64; 3] {
    let nm = Matrix3::from_fn(|i, j| h[(i, j)]);
    // symmetrize to remove rounding asymmetry
    let nm = (nm + nm.adjoint()) * Cplx::new(0.5, 0.0);
    let eig = nm.symmetric_eigenvalues();
    let mut v = [eig[0], eig[1], eig[2]];
    v.sort_by(f64::total_cmp);
    v
}

/// Inertia `(positive, negative, zero)` of a Hermitian matrix.
pub fn herm_signature(h: &Mat3) -> Result<(usize, usize, usize)> {
    herm_signature_with(h, &Tol::DEFAULT)
}

pub fn herm_signature_with(h: &Mat3, tol: &Tol) -> Result<(usize, usize, usize)> {
    if !h.is_hermitian(tol) {
        return Err(Error::NotHermitian);
    }
    let zero = tol.abs_eps * h.norm().max(1.0);
    let mut sig = (0, 0, 0);
    for e in hermitian_eigenvalues(h) {
        if e > zero {
            sig.0 += 1;
        } else if e < -zero {
            sig.1 += 1;
        } else {
            sig.2 += 1;
        }
    }
    Ok(sig)
}

/// Rows of the linear system `X a - b X = 0` in the row-major entries of `X`.
pub fn sylvester_rows(a: &Mat3, b: &Mat3, out: &mut Dense, row0: usize) {
    for i in 0..3 {
        for j in 0..3 {
            let r = row0 + 3 * i + j;
            for k in 0..3 {
                // (X a)_{ij} = sum_k X_{ik} a_{kj}
                out.add_at(r, 3 * i + k, a[(k, j)]);
                // (b X)_{ij} = sum_k b_{ik} X_{kj}
                out.add_at(r, 3 * k + j, -b[(i, k)]);
            }
        }
    }
}

/// Stacked system for `X a_i = b_i X`, one 9-row block per pair.
pub fn intertwiner_system(pairs: &[(Mat3, Mat3)]) -> Dense {
    let mut d = Dense::zeros(9 * pairs.len(), 9);
    for (n, (a, b)) in pairs.iter().enumerate() {
        sylvester_rows(a, b, &mut d, 9 * n);
    }
    d
}

/// Complex dimension of the common centralizer of `ms`.
pub fn commutant_dim(ms: &[Mat3]) -> usize {
    commutant_dim_with(ms, &Tol::DEFAULT)
}

pub fn commutant_dim_with(ms: &[Mat3], tol: &Tol) -> usize {
    let pairs: Vec<(Mat3, Mat3)> = ms.iter().map(|m| (*m, *m)).collect();
    9 - elim::rank(&intertwiner_system(&pairs), tol.abs_eps)
}
