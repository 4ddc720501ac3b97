//! Antiholomorphic involutions of SL(3,C), their fixed real forms, twisting
//! by an intertwiner, and identification of the real form through the
//! signature of the trace form on the fixed Lie algebra.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg3::{elim, Cplx, Dense, Mat3, Tol, I, OMEGA, ONE, ZERO};

/// `I_{2,1} = diag(1, 1, -1)`.
pub const I21: Mat3 = Mat3([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, Cplx::new(-1.0, 0.0)]]);

/// An antiholomorphic involution of SL(3,C).
///
/// `FirstKind(A)` acts by `M ↦ A M̄ A⁻¹`; `SecondKind(J)` acts by
/// `M ↦ J (M̄ᵀ)⁻¹ J⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Involution {
    FirstKind(Mat3),
    SecondKind(Mat3),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealFormType {
    #[serde(rename = "sl3r")]
    SL3R,
    #[serde(rename = "su3")]
    SU3,
    #[serde(rename = "su21")]
    SU21,
}

impl fmt::Display for RealFormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealFormType::SL3R => "SL(3,R)",
            RealFormType::SU3 => "SU(3)",
            RealFormType::SU21 => "SU(2,1)",
        })
    }
}

/// Elements of the center `{I, ωI, ω²I}` of SL(3,C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Center {
    #[serde(rename = "I")]
    Identity,
    #[serde(rename = "omegaI")]
    Omega,
    #[serde(rename = "omega2I")]
    OmegaSquared,
}

impl Center {
    pub const ALL: [Center; 3] = [Center::Identity, Center::Omega, Center::OmegaSquared];

    pub fn scalar(self) -> Cplx {
        match self {
            Center::Identity => ONE,
            Center::Omega => OMEGA,
            Center::OmegaSquared => OMEGA * OMEGA,
        }
    }

    pub fn matrix(self) -> Mat3 {
        Mat3::scalar(self.scalar())
    }

    /// The central element equal to `m` within `tol`, if any.
    pub fn of(m: &Mat3, tol: &Tol) -> Option<Center> {
        Center::ALL.into_iter().find(|c| tol.close_mat(m, &c.matrix()))
    }

    pub fn label(self) -> &'static str {
        match self {
            Center::Identity => "I",
            Center::Omega => "omegaI",
            Center::OmegaSquared => "omega2I",
        }
    }
}

impl Involution {
    /// Entrywise complex conjugation; fixes SL(3,R).
    pub fn tau0() -> Involution {
        Involution::FirstKind(Mat3::IDENTITY)
    }

    /// `M ↦ (M̄ᵀ)⁻¹`; fixes SU(3).
    pub fn tau1() -> Involution {
        Involution::SecondKind(Mat3::IDENTITY)
    }

    /// `M ↦ I₂,₁ (M̄ᵀ)⁻¹ I₂,₁`; fixes SU(2,1).
    pub fn tau2() -> Involution {
        Involution::SecondKind(I21)
    }

    pub fn from_name(name: &str) -> Option<Involution> {
        match name {
            "tau0" => Some(Involution::tau0()),
            "tau1" => Some(Involution::tau1()),
            "tau2" => Some(Involution::tau2()),
            _ => None,
        }
    }

    pub fn matrix(&self) -> &Mat3 {
        match self {
            Involution::FirstKind(a) | Involution::SecondKind(a) => a,
        }
    }

    pub fn is_first_kind(&self) -> bool {
        matches!(self, Involution::FirstKind(_))
    }

    /// The map squares to the identity iff `A Ā` (resp. `J (J̄ᵀ)⁻¹`) is a
    /// nonzero scalar.
    pub fn is_involution(&self, tol: &Tol) -> bool {
        let probe = match self {
            Involution::FirstKind(a) => *a * a.conj(),
            Involution::SecondKind(j) => match j.adjoint().inverse_with(tol) {
                Ok(inv) => *j * inv,
                Err(_) => return false,
            },
        };
        probe.det().norm() > tol.abs_eps && probe.is_scalar(tol)
    }

    pub fn apply(&self, m: &Mat3) -> Result<Mat3> {
        match self {
            Involution::FirstKind(a) => Ok(*a * m.conj() * a.inverse()?),
            Involution::SecondKind(j) => Ok(*j * m.adjoint().inverse()? * j.inverse()?),
        }
    }

    pub fn is_fixed(&self, m: &Mat3) -> bool {
        self.is_fixed_with(m, &Tol::DEFAULT)
    }

    pub fn is_fixed_with(&self, m: &Mat3, tol: &Tol) -> bool {
        match self.apply(m) {
            Ok(img) => tol.close_mat(&img, m),
            Err(_) => false,
        }
    }

    /// The involution `g ↦ h t(g) h⁻¹`. Requires `h t(h)` central.
    pub fn twist(&self, h: &Mat3) -> Result<Involution> {
        self.twist_with(h, &Tol::DEFAULT)
    }

    pub fn twist_with(&self, h: &Mat3, tol: &Tol) -> Result<Involution> {
        // only h up to scalars matters, so a unit-modulus determinant is enough
        let d = h.det();
        if !tol.close_f(d.norm(), 1.0) {
            return Err(Error::NotUnimodular { re: d.re, im: d.im });
        }
        let witness = *h * self.apply(h)?;
        if Center::of(&witness, tol).is_none() {
            return Err(Error::NotCentral);
        }
        Ok(match self {
            Involution::FirstKind(a) => Involution::FirstKind(*h * *a),
            Involution::SecondKind(j) => Involution::SecondKind(*h * *j),
        })
    }

    /// Differential at the identity: `X ↦ A X̄ A⁻¹` or `X ↦ -J X̄ᵀ J⁻¹`.
    pub fn differential(&self, x: &Mat3) -> Result<Mat3> {
        match self {
            Involution::FirstKind(a) => Ok(*a * x.conj() * a.inverse()?),
            Involution::SecondKind(j) => Ok(-(*j * x.adjoint() * j.inverse()?)),
        }
    }

    /// Real basis (8 matrices) of the traceless `X` with `dθ(X) = X`.
    pub fn fixed_lie_algebra(&self) -> Result<Vec<Mat3>> {
        let basis = traceless_basis();
        let mut sys = Dense::zeros(16, 16);
        for (k, b) in basis.iter().enumerate() {
            let img = traceless_coords(&self.differential(b)?);
            for (r, v) in img.iter().enumerate() {
                let diag = if r == k { 1.0 } else { 0.0 };
                sys.set(r, k, Cplx::new(v - diag, 0.0));
            }
        }
        let red = elim::reduce(&sys, 1e-9);
        if red.kernel.len() != 8 {
            return Err(Error::DegenerateSolve(red.kernel.len()));
        }
        // orthonormalize in coordinate space for a well-conditioned Gram matrix
        let mut ortho: Vec<Vec<Cplx>> = Vec::with_capacity(8);
        for v in &red.kernel {
            let real: Vec<Cplx> = v.iter().map(|z| Cplx::new(z.re, 0.0)).collect();
            match elim::orthogonalize(&ortho, &real, 1e-10) {
                Some(u) => ortho.push(u),
                None => return Err(Error::DegenerateSolve(ortho.len())),
            }
        }
        Ok(ortho
            .iter()
            .map(|c| {
                let coeffs: Vec<f64> = c.iter().map(|z| z.re).collect();
                from_traceless_coords(&coeffs)
            })
            .collect())
    }

    /// Signature `(positive, negative)` of `(X, Y) ↦ Re tr(XY)` on the fixed
    /// Lie algebra. The trace form is a positive multiple of the Killing form.
    pub fn trace_form_signature(&self) -> Result<(usize, usize)> {
        let basis = self.fixed_lie_algebra()?;
        let n = basis.len();
        let gram = DMatrix::from_fn(n, n, |k, l| (basis[k] * basis[l]).trace().re);
        let gram = (&gram + gram.transpose()) * 0.5;
        let eig = gram.symmetric_eigenvalues();
        let top = eig.iter().map(|e| e.abs()).fold(0.0, f64::max);
        let zero = 1e-9 * top.max(1e-300);
        let pos = eig.iter().filter(|&&e| e > zero).count();
        let neg = eig.iter().filter(|&&e| e < -zero).count();
        Ok((pos, neg))
    }

    pub fn identify_real_form(&self) -> Result<RealFormType> {
        match self.trace_form_signature()? {
            (5, 3) => Ok(RealFormType::SL3R),
            (0, 8) => Ok(RealFormType::SU3),
            (4, 4) => Ok(RealFormType::SU21),
            (p, n) => Err(Error::UnknownSignature(p, n)),
        }
    }
}

const OFF_DIAG: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

/// Real basis of sl(3,C) viewed as a 16-dimensional real space: real and
/// imaginary unit off-diagonal entries, then `E₀₀ - E₂₂`, `E₁₁ - E₂₂` and
/// their imaginary multiples.
pub fn traceless_basis() -> Vec<Mat3> {
    let mut out = Vec::with_capacity(16);
    for &(i, j) in &OFF_DIAG {
        for s in [ONE, I] {
            let mut m = Mat3::ZERO;
            m[(i, j)] = s;
            out.push(m);
        }
    }
    for d in 0..2 {
        for s in [ONE, I] {
            let mut m = Mat3::ZERO;
            m[(d, d)] = s;
            m[(2, 2)] = -s;
            out.push(m);
        }
    }
    out
}

/// Coordinates of a traceless matrix in [`traceless_basis`].
pub fn traceless_coords(x: &Mat3) -> [f64; 16] {
    let mut c = [0.0; 16];
    for (k, &(i, j)) in OFF_DIAG.iter().enumerate() {
        c[2 * k] = x[(i, j)].re;
        c[2 * k + 1] = x[(i, j)].im;
    }
    c[12] = x[(0, 0)].re;
    c[13] = x[(0, 0)].im;
    c[14] = x[(1, 1)].re;
    c[15] = x[(1, 1)].im;
    c
}

pub fn from_traceless_coords(c: &[f64]) -> Mat3 {
    traceless_basis()
        .iter()
        .zip(c)
        .fold(Mat3::ZERO, |acc, (b, &x)| acc + b.scale(Cplx::new(x, 0.0)))
}

// JSON: {"kind": "first"|"second", "matrix": ...} or one of the aliases.
#[derive(Serialize, Deserialize)]
struct InvolutionRepr {
    kind: String,
    matrix: Mat3,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum InvolutionInput {
    Alias(String),
    Full(InvolutionRepr),
}

impl Serialize for Involution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, matrix) = match self {
            Involution::FirstKind(a) => ("first", *a),
            Involution::SecondKind(j) => ("second", *j),
        };
        InvolutionRepr {
            kind: kind.to_string(),
            matrix,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Involution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Involution, D::Error> {
        use serde::de::Error as _;
        match InvolutionInput::deserialize(d)? {
            InvolutionInput::Alias(name) => Involution::from_name(&name)
                .ok_or_else(|| D::Error::custom(format!("unknown involution alias {name:?}"))),
            InvolutionInput::Full(r) => match r.kind.as_str() {
                "first" => Ok(Involution::FirstKind(r.matrix)),
                "second" => Ok(Involution::SecondKind(r.matrix)),
                other => Err(D::Error::custom(format!("unknown involution kind {other:?}"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg3::expi;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn apply_examples() {
        let m = Mat3::diag([I, -I, ONE]);
        assert_eq!(Involution::tau0().apply(&m).unwrap(), Mat3::diag([-I, I, ONE]));

        let t: f64 = 0.7;
        let rot = Mat3::from_real([[t.cos(), -t.sin(), 0.0], [t.sin(), t.cos(), 0.0], [0.0, 0.0, 1.0]]);
        let u = rot * Mat3::diag([expi(0.3), expi(1.1), expi(-1.4)]);
        assert!(Tol::DEFAULT.close_mat(&Involution::tau1().apply(&u).unwrap(), &u));

        let img = Involution::tau2().apply(&Mat3::diag_real([2.0, 1.0, 0.5])).unwrap();
        assert!(Tol::DEFAULT.close_mat(&img, &Mat3::diag_real([0.5, 1.0, 2.0])));
    }

    #[test]
    fn is_fixed_examples() {
        let comp = Mat3::from_real([[0.0, 0.0, 1.0], [1.0, 0.0, -4.0], [0.0, 1.0, 4.0]]);
        assert!(Involution::tau0().is_fixed(&comp));
        let (a, b) = (0.4, 2.2);
        assert!(Involution::tau2().is_fixed(&Mat3::diag([expi(a), expi(b), expi(-a - b)])));
        assert!(!Involution::tau1().is_fixed(&Mat3::diag_real([2.0, 1.0, 0.5])));
        assert!(!Involution::tau1().is_fixed(&Mat3::ZERO));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(Involution::tau0().twist(&Mat3::IDENTITY).unwrap(), Involution::tau0());
        assert_eq!(Involution::tau1().twist(&I21).unwrap(), Involution::tau2());
        // diag(i, i, -1) times its conjugate is the identity
        let h = Mat3::diag([I, I, -ONE]);
        assert_eq!(Involution::tau0().twist(&h).unwrap(), Involution::FirstKind(h));
        let h = Mat3::diag_real([2.0, 0.5, 1.0]);
        assert_eq!(Involution::tau0().twist(&h), Err(Error::NotCentral));
        assert!(matches!(
            Involution::tau0().twist(&Mat3::diag_real([2.0, 1.0, 1.0])),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn twisting_by_omega_gives_central_witness() {
        let h = Mat3::scalar(OMEGA);
        let t = Involution::tau1().twist(&h).unwrap();
        assert!(t.is_involution(&Tol::DEFAULT));
        let w = h * Involution::tau1().apply(&h).unwrap();
        assert_eq!(Center::of(&w, &Tol::DEFAULT), Some(Center::OmegaSquared));
    }

    #[test]
    fn standard_involutions_are_involutions() {
        for t in [Involution::tau0(), Involution::tau1(), Involution::tau2()] {
            assert!(t.is_involution(&Tol::DEFAULT));
        }
        assert!(!Involution::FirstKind(Mat3::diag_real([2.0, 1.0, 1.0])).is_involution(&Tol::DEFAULT));
    }

    #[test]
    fn fixed_lie_algebras() {
        let sl3r = Involution::tau0().fixed_lie_algebra().unwrap();
        assert_eq!(sl3r.len(), 8);
        assert!(sl3r.iter().all(|x| x.0.iter().flatten().all(|z| z.im.abs() < 1e-12)));

        let su3 = Involution::tau1().fixed_lie_algebra().unwrap();
        assert!(su3.iter().all(|x| Tol::DEFAULT.close_mat(&x.adjoint(), &-*x)));
        assert!(su3.iter().all(|x| x.trace().norm() < 1e-12));

        let su21 = Involution::tau2().fixed_lie_algebra().unwrap();
        // X* I21 + I21 X = 0
        for x in &su21 {
            let r = x.adjoint() * I21 + I21 * *x;
            assert!(r.max_abs() < 1e-12);
        }
    }

    #[test]
    fn fixed_lie_algebra_rejects_non_involution() {
        let bad = Involution::FirstKind(Mat3::diag_real([2.0, 1.0, 1.0]));
        assert_eq!(bad.fixed_lie_algebra(), Err(Error::DegenerateSolve(4)));
    }

    #[test]
    fn identify_standard_forms() {
        assert_eq!(Involution::tau0().identify_real_form().unwrap(), RealFormType::SL3R);
        assert_eq!(Involution::tau1().identify_real_form().unwrap(), RealFormType::SU3);
        assert_eq!(Involution::tau2().identify_real_form().unwrap(), RealFormType::SU21);
        assert_eq!(
            Involution::tau1().twist(&I21).unwrap().identify_real_form().unwrap(),
            RealFormType::SU21
        );
        assert_eq!(Involution::tau0().trace_form_signature().unwrap(), (5, 3));
        assert_eq!(Involution::tau1().trace_form_signature().unwrap(), (0, 8));
        assert_eq!(Involution::tau2().trace_form_signature().unwrap(), (4, 4));
    }

    #[test]
    fn traceless_coordinates_round_trip() {
        let x = Mat3([
            [c(1.0, 2.0), c(0.5, -1.0), c(0.0, 3.0)],
            [c(-2.0, 0.0), c(0.25, 0.5), c(1.0, 1.0)],
            [c(0.0, -0.5), c(7.0, 0.0), c(-1.25, -2.5)],
        ]);
        let y = from_traceless_coords(&traceless_coords(&x));
        assert!(Tol::DEFAULT.close_mat(&x, &y));
    }

    #[test]
    fn json_forms() {
        let t: Involution = serde_json::from_str("\"tau2\"").unwrap();
        assert_eq!(t, Involution::tau2());
        let s = serde_json::to_string(&Involution::tau0()).unwrap();
        assert!(s.starts_with("{\"kind\":\"first\",\"matrix\":"));
        let back: Involution = serde_json::from_str(&s).unwrap();
        assert_eq!(back, Involution::tau0());
        assert!(serde_json::from_str::<Involution>("\"tau9\"").is_err());
    }
}
