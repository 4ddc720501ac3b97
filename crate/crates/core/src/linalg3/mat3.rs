use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar.
pub type Cplx = Complex64;

/// Primitive cube root of unity e^{2πi/3}.
pub const OMEGA: Cplx = Cplx::new(-0.5, 0.866_025_403_784_438_6);

pub const ZERO: Cplx = Cplx::new(0.0, 0.0);
pub const ONE: Cplx = Cplx::new(1.0, 0.0);
pub const I: Cplx = Cplx::new(0.0, 1.0);

/// Builds a complex number, rejecting NaN and infinities.
pub fn cplx(re: f64, im: f64) -> Result<Cplx> {
    if re.is_finite() && im.is_finite() {
        Ok(Cplx::new(re, im))
    } else {
        Err(Error::NonFinite)
    }
}

/// `e^{iθ}`.
pub fn expi(theta: f64) -> Cplx {
    Cplx::from_polar(1.0, theta)
}

/// Absolute/relative tolerance pair used for every approximate comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tol {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol::DEFAULT
    }
}

impl Tol {
    pub const DEFAULT: Tol = Tol {
        abs_eps: 1e-9,
        rel_eps: 1e-9,
    };

    pub fn new(abs_eps: f64, rel_eps: f64) -> Option<Tol> {
        (abs_eps > 0.0 && rel_eps > 0.0).then_some(Tol { abs_eps, rel_eps })
    }

    /// `|a - b| <= abs_eps + rel_eps * max(|a|, |b|)`.
    pub fn close(&self, a: Cplx, b: Cplx) -> bool {
        (a - b).norm() <= self.abs_eps + self.rel_eps * a.norm().max(b.norm())
    }

    pub fn close_f(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs_eps + self.rel_eps * a.abs().max(b.abs())
    }

    /// Entrywise closeness measured against the larger of the two norms.
    pub fn close_mat(&self, a: &Mat3, b: &Mat3) -> bool {
        let scale = a.max_abs().max(b.max_abs());
        (*a - *b).max_abs() <= self.abs_eps + self.rel_eps * scale
    }

    /// Threshold below which two roots of a characteristic cubic are merged
    /// into a double root. Double roots of a cubic are only recoverable to
    /// about the square root of the coefficient accuracy.
    pub fn pair_eps(&self, scale: f64) -> f64 {
        self.abs_eps.sqrt() * scale.max(1.0)
    }

    /// Threshold for merging three roots into one triple root.
    pub fn triple_eps(&self, scale: f64) -> f64 {
        0.1 * self.abs_eps.cbrt() * scale.max(1.0)
    }
}

/// 3×3 complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat3(pub [[Cplx; 3]; 3]);

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat3[")?;
        for row in &self.0 {
            writeln!(
                f,
                "  [{:+.6}{:+.6}i, {:+.6}{:+.6}i, {:+.6}{:+.6}i]",
                row[0].re, row[0].im, row[1].re, row[1].im, row[2].re, row[2].im
            )?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = Cplx;
    fn index(&self, (i, j): (usize, usize)) -> &Cplx {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cplx {
        &mut self.0[i][j]
    }
}

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[ZERO; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]);

    /// Checked constructor: every entry must be finite.
    pub fn new(rows: [[Cplx; 3]; 3]) -> Result<Mat3> {
        let m = Mat3(rows);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Mat3 {
        Mat3(rows.map(|r| r.map(|x| Cplx::new(x, 0.0))))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Cplx) -> Mat3 {
        let mut m = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn diag(d: [Cplx; 3]) -> Mat3 {
        Mat3::from_fn(|i, j| if i == j { d[i] } else { ZERO })
    }

    pub fn diag_real(d: [f64; 3]) -> Mat3 {
        Mat3::diag(d.map(|x| Cplx::new(x, 0.0)))
    }

    pub fn scalar(s: Cplx) -> Mat3 {
        Mat3::diag([s; 3])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn diagonal(&self) -> [Cplx; 3] {
        [self.0[0][0], self.0[1][1], self.0[2][2]]
    }

    pub fn trace(&self) -> Cplx {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Mat3 {
        Mat3(self.0.map(|r| r.map(|z| z.conj())))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, s: Cplx) -> Mat3 {
        Mat3(self.0.map(|r| r.map(|z| z * s)))
    }

    pub fn det(&self) -> Cplx {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Classical adjugate (transposed cofactor matrix); `m * adj(m) = det(m) I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.0;
        let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        Mat3([
            [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
            [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
            [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
        ])
    }

    pub fn inverse_with(&self, tol: &Tol) -> Result<Mat3> {
        let d = self.det();
        if d.norm() <= tol.abs_eps {
            return Err(Error::Singular(d.norm()));
        }
        Ok(self.adjugate().scale(d.inv()))
    }

    pub fn inverse(&self) -> Result<Mat3> {
        self.inverse_with(&Tol::DEFAULT)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: &Tol) -> bool {
        tol.close_mat(self, &self.adjoint())
    }

    /// True when every off-diagonal entry vanishes and the diagonal is constant.
    pub fn is_scalar(&self, tol: &Tol) -> bool {
        let s = self.trace() / 3.0;
        tol.close_mat(self, &Mat3::scalar(s))
    }

    pub fn is_diagonal(&self, tol: &Tol) -> bool {
        let d = Mat3::diag(self.diagonal());
        tol.close_mat(self, &d)
    }

    pub fn pow(&self, k: u32) -> Mat3 {
        let mut acc = Mat3::IDENTITY;
        let mut base = *self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Commutator `self * other - other * self`.
    pub fn bracket(&self, other: &Mat3) -> Mat3 {
        *self * *other - *other * *self
    }

    /// Row-major flattening.
    pub fn to_vec9(&self) -> [Cplx; 9] {
        let mut v = [ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                v[3 * i + j] = self.0[i][j];
            }
        }
        v
    }

    pub fn from_vec9(v: &[Cplx]) -> Mat3 {
        Mat3::from_fn(|i, j| v[3 * i + j])
    }

    /// Rescales so that det = 1 using the principal cube root of the determinant.
    pub fn unimodular(&self) -> Result<Mat3> {
        let d = self.det();
        if d.norm() == 0.0 || !d.norm().is_finite() {
            return Err(Error::Singular(d.norm()));
        }
        Ok(self.scale(d.powf(1.0 / 3.0).inv()))
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale(-ONE)
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Mul<[Cplx; 3]> for Mat3 {
    type Output = [Cplx; 3];
    fn mul(self, v: [Cplx; 3]) -> [Cplx; 3] {
        [0, 1, 2].map(|i| (0..3).map(|k| self.0[i][k] * v[k]).sum())
    }
}

// JSON: three rows of three [re, im] pairs.
type RawMat = [[[f64; 2]; 3]; 3];

impl Serialize for Mat3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: RawMat = self.0.map(|r| r.map(|z| [z.re, z.im]));
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Mat3, D::Error> {
        let raw = RawMat::deserialize(d)?;
        Mat3::new(raw.map(|r| r.map(|[re, im]| Cplx::new(re, im)))).map_err(serde::de::Error::custom)
    }
}

/// `[re, im]` serialization for scalars, matching the matrix encoding.
pub mod cplx_pair {
    use super::Cplx;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Cplx, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Cplx, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        super::cplx(re, im).map_err(serde::de::Error::custom)
    }
}
