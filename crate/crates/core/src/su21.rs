//! Conjugacy classes in SU(2,1): dynamical type, the eigenvalue on the
//! negative-type eigenvector, and canonical representatives.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg3::{self, cplx_pair, expi, Cplx, Mat3, Spectrum, Tol, ONE, ZERO};

/// The two Hermitian forms of signature (2,1) used for representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HermitianModel {
    /// `diag(1, 1, -1)`, used for elliptic representatives.
    H1,
    /// Antidiagonal ones, used for loxodromic representatives.
    H2,
}

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Fixed congruence with `C* H1 C = H2` and `det C = 1`.
pub const CONGRUENCE: Mat3 = Mat3([
    [Cplx::new(S, 0.0), ZERO, Cplx::new(S, 0.0)],
    [ZERO, ONE, ZERO],
    [Cplx::new(-S, 0.0), ZERO, Cplx::new(S, 0.0)],
]);

impl HermitianModel {
    pub fn matrix(self) -> Mat3 {
        match self {
            HermitianModel::H1 => Mat3::diag_real([1.0, 1.0, -1.0]),
            HermitianModel::H2 => Mat3::from_real([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]),
        }
    }

    /// Moves a group element of this model into the corresponding element of
    /// `target`, via the fixed congruence.
    pub fn transport(self, m: &Mat3, target: HermitianModel) -> Mat3 {
        let c_inv = CONGRUENCE.adjoint(); // C is real orthogonal
        match (self, target) {
            (HermitianModel::H1, HermitianModel::H2) => c_inv * *m * CONGRUENCE,
            (HermitianModel::H2, HermitianModel::H1) => CONGRUENCE * *m * c_inv,
            _ => *m,
        }
    }

    /// `Ψ(v) = v* H v`.
    pub fn form(self, v: &[Cplx; 3]) -> f64 {
        let h = self.matrix();
        let hv = h * *v;
        (0..3).map(|k| v[k].conj() * hv[k]).sum::<Cplx>().re
    }

    /// Membership in SU(2,1) for this model, with tolerances scaled by the
    /// size of `m`.
    pub fn contains(self, m: &Mat3, tol: &Tol) -> bool {
        let s = m.norm().max(1.0);
        let h = self.matrix();
        let det_ok = (m.det() - ONE).norm() <= tol.abs_eps * s.powi(3);
        let form_ok = (m.adjoint() * h * *m - h).max_abs() <= tol.abs_eps * s * s;
        det_ok && form_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementClass {
    EllipticRegular,
    EllipticReflectionLine,
    EllipticReflectionPoint,
    EllipticCentral,
    Parabolic,
    Loxodromic,
}

impl ElementClass {
    pub fn is_elliptic(self) -> bool {
        matches!(
            self,
            ElementClass::EllipticRegular
                | ElementClass::EllipticReflectionLine
                | ElementClass::EllipticReflectionPoint
                | ElementClass::EllipticCentral
        )
    }
}

/// Conjugacy invariant of a semisimple element of SU(2,1).
///
/// For `Elliptic`, `c` is the angle of the eigenvalue on the negative-type
/// eigenvector; `a <= b` are the other two angles. All angles lie in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CanonicalForm {
    Elliptic {
        a: f64,
        b: f64,
        c: f64,
    },
    Loxodromic {
        #[serde(with = "cplx_pair")]
        lambda: Cplx,
    },
}

/// Angle comparison tolerance for canonical forms built from computed spectra.
pub const CANONICAL_EPS: f64 = 1e-7;

pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Distance on the circle `R / 2πZ`.
pub fn circle_dist(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

impl CanonicalForm {
    /// Elliptic form from three unit eigenvalues, the last one marked.
    pub fn elliptic(others: [Cplx; 2], marked: Cplx) -> CanonicalForm {
        let mut ab = others.map(|z| normalize_angle(z.arg()));
        ab.sort_by(f64::total_cmp);
        CanonicalForm::Elliptic {
            a: ab[0],
            b: ab[1],
            c: normalize_angle(marked.arg()),
        }
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            CanonicalForm::Elliptic { a, b, c } => {
                let in_range = |t: f64| (0.0..TAU).contains(&t);
                in_range(a) && in_range(b) && in_range(c) && a <= b && circle_dist(a + b + c, 0.0) < 1e-6
            }
            CanonicalForm::Loxodromic { lambda } => lambda.norm() > 0.0 && lambda.norm() < 1.0,
        }
    }

    pub fn approx_eq(&self, other: &CanonicalForm, eps: f64) -> bool {
        match (*self, *other) {
            (CanonicalForm::Elliptic { a, b, c }, CanonicalForm::Elliptic { a: a2, b: b2, c: c2 }) => {
                let d = circle_dist;
                d(c, c2) <= eps && ((d(a, a2) <= eps && d(b, b2) <= eps) || (d(a, b2) <= eps && d(b, a2) <= eps))
            }
            (CanonicalForm::Loxodromic { lambda }, CanonicalForm::Loxodromic { lambda: l2 }) => {
                (lambda - l2).norm() <= eps
            }
            _ => false,
        }
    }

    /// The explicit diagonal representative and the model it lives in.
    pub fn representative(&self) -> (Mat3, HermitianModel) {
        match *self {
            CanonicalForm::Elliptic { a, b, c } => (Mat3::diag([expi(a), expi(b), expi(c)]), HermitianModel::H1),
            CanonicalForm::Loxodromic { lambda } => (
                Mat3::diag([lambda, lambda.conj() / lambda, lambda.conj().inv()]),
                HermitianModel::H2,
            ),
        }
    }

    /// Trace of the representative.
    pub fn trace(&self) -> Cplx {
        self.representative().0.trace()
    }
}

pub fn representative(c: &CanonicalForm) -> (Mat3, HermitianModel) {
    c.representative()
}

/// `f(z) = |z|⁴ - 8 Re(z³) + 18 |z|² - 27`, the discriminant of
/// `X³ - zX² + z̄X - 1`.
pub fn goldman_f(z: Cplx) -> f64 {
    let n2 = z.norm_sqr();
    n2 * n2 - 8.0 * (z * z * z).re + 18.0 * n2 - 27.0
}

/// Width of the band around `f = 0` treated as the boundary curve.
pub fn boundary_tol(z: Cplx) -> f64 {
    1e-6 * z.norm_sqr().powi(2).max(1.0)
}

fn modulus_eps(tol: &Tol) -> f64 {
    tol.pair_eps(1.0)
}

/// Minimum of `Ψ` on unit vectors of the eigenspace for `lambda`, or `None`
/// when the eigenspace is numerically empty.
fn min_form_on_eigenspace(m: &Mat3, lambda: Cplx, model: HermitianModel, tol: &Tol) -> Option<f64> {
    let basis = linalg3::eigenspace(m, lambda, tol);
    let h = model.matrix();
    match basis.len() {
        0 => None,
        1 => Some(model.form(&basis[0])),
        2 => {
            let g = |x: &[Cplx; 3], y: &[Cplx; 3]| -> Cplx {
                let hy = h * *y;
                (0..3).map(|k| x[k].conj() * hy[k]).sum()
            };
            let (g00, g11, g01) = (
                g(&basis[0], &basis[0]).re,
                g(&basis[1], &basis[1]).re,
                g(&basis[0], &basis[1]),
            );
            let half_tr = (g00 + g11) / 2.0;
            let det = g00 * g11 - g01.norm_sqr();
            Some(half_tr - (half_tr * half_tr - det).max(0.0).sqrt())
        }
        _ => Some(linalg3::hermitian_eigenvalues(&h)[0]),
    }
}

fn checked_spectrum(m: &Mat3, model: HermitianModel, tol: &Tol) -> Result<Spectrum> {
    if !model.contains(m, tol) {
        return Err(Error::NotInGroup);
    }
    Ok(linalg3::spectrum_with(m, tol))
}

fn is_loxodromic(spec: &Spectrum, tol: &Tol) -> bool {
    spec.eigenvalues
        .iter()
        .any(|e| (e.value.norm() - 1.0).abs() > modulus_eps(tol))
}

/// Eigenvalue whose eigenspace contains a negative vector; `None` if there is
/// no such eigenvalue.
fn negative_eigenvalue(m: &Mat3, spec: &Spectrum, model: HermitianModel, tol: &Tol) -> Option<Cplx> {
    spec.eigenvalues
        .iter()
        .filter_map(|e| min_form_on_eigenspace(m, e.value, model, tol).map(|v| (e.value, v)))
        .filter(|&(_, v)| v < 0.0)
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(val, _)| val)
}

pub fn classify(m: &Mat3, model: HermitianModel) -> Result<ElementClass> {
    classify_with(m, model, &Tol::DEFAULT)
}

pub fn classify_with(m: &Mat3, model: HermitianModel, tol: &Tol) -> Result<ElementClass> {
    let spec = checked_spectrum(m, model, tol)?;
    Ok(classify_spectrum(m, &spec, model, tol))
}

fn classify_spectrum(m: &Mat3, spec: &Spectrum, model: HermitianModel, tol: &Tol) -> ElementClass {
    if is_loxodromic(spec, tol) {
        return ElementClass::Loxodromic;
    }
    if !spec.diagonalizable {
        return ElementClass::Parabolic;
    }
    match spec.distinct() {
        1 => ElementClass::EllipticCentral,
        2 => {
            let double = spec.eigenvalues.iter().find(|e| e.algebraic == 2).map(|e| e.value);
            match (negative_eigenvalue(m, spec, model, tol), double) {
                (Some(neg), Some(d)) if (neg - d).norm() <= modulus_eps(tol) => ElementClass::EllipticReflectionLine,
                _ => ElementClass::EllipticReflectionPoint,
            }
        }
        _ => ElementClass::EllipticRegular,
    }
}

/// The eigenvalue of an elliptic element on its negative-type eigenvector,
/// projected onto the unit circle.
pub fn eig_minus(m: &Mat3, model: HermitianModel) -> Result<Cplx> {
    eig_minus_with(m, model, &Tol::DEFAULT)
}

pub fn eig_minus_with(m: &Mat3, model: HermitianModel, tol: &Tol) -> Result<Cplx> {
    let spec = checked_spectrum(m, model, tol)?;
    if !classify_spectrum(m, &spec, model, tol).is_elliptic() {
        return Err(Error::NotElliptic);
    }
    let neg = negative_eigenvalue(m, &spec, model, tol).ok_or(Error::NotElliptic)?;
    Ok(neg / neg.norm())
}

pub fn canonical(m: &Mat3, model: HermitianModel) -> Result<CanonicalForm> {
    canonical_with(m, model, &Tol::DEFAULT)
}

pub fn canonical_with(m: &Mat3, model: HermitianModel, tol: &Tol) -> Result<CanonicalForm> {
    let spec = checked_spectrum(m, model, tol)?;
    match classify_spectrum(m, &spec, model, tol) {
        ElementClass::Parabolic => Err(Error::NotSemisimpleInGroup),
        ElementClass::Loxodromic => {
            let lambda = spec
                .expanded()
                .into_iter()
                .min_by(|x, y| x.norm().total_cmp(&y.norm()))
                .expect("three eigenvalues");
            Ok(CanonicalForm::Loxodromic { lambda })
        }
        _ => {
            let neg = negative_eigenvalue(m, &spec, model, tol).ok_or(Error::NotElliptic)?;
            let all = spec.expanded();
            let marked_idx = (0..3)
                .min_by(|&i, &j| (all[i] - neg).norm().total_cmp(&(all[j] - neg).norm()))
                .expect("three eigenvalues");
            let others: Vec<Cplx> = (0..3).filter(|&k| k != marked_idx).map(|k| all[k]).collect();
            Ok(CanonicalForm::elliptic([others[0], others[1]], all[marked_idx]))
        }
    }
}

pub fn same_orbit(m1: &Mat3, m2: &Mat3, model: HermitianModel) -> Result<bool> {
    let c1 = canonical(m1, model)?;
    let c2 = canonical(m2, model)?;
    Ok(c1.approx_eq(&c2, CANONICAL_EPS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg3::{I, OMEGA};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn lox(lambda: Cplx) -> Mat3 {
        CanonicalForm::Loxodromic { lambda }.representative().0
    }

    fn e(a: f64, b: f64, cc: f64) -> Mat3 {
        Mat3::diag([expi(a), expi(b), expi(cc)])
    }

    #[test]
    fn congruence_relates_models() {
        let h1 = HermitianModel::H1.matrix();
        let h2 = HermitianModel::H2.matrix();
        assert!(Tol::DEFAULT.close_mat(&(CONGRUENCE.adjoint() * h1 * CONGRUENCE), &h2));
        assert!((CONGRUENCE.det() - ONE).norm() < 1e-15);
    }

    #[test]
    fn goldman_spot_values() {
        assert_eq!(goldman_f(c(0.0, 0.0)), -27.0);
        assert_eq!(goldman_f(c(3.0, 0.0)), 0.0);
        assert_eq!(goldman_f(c(4.0, 0.0)), 5.0);
        assert!(goldman_f(c(-1.0, 2.0)).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&lox(c(0.5, 0.0)), HermitianModel::H2).unwrap(),
            ElementClass::Loxodromic
        );
        assert_eq!(
            classify(&Mat3::scalar(OMEGA), HermitianModel::H1).unwrap(),
            ElementClass::EllipticCentral
        );
        // P_{0,0,1} = [[1, 0, -i/2], [0, 1, 0], [0, 0, 1]]
        let mut p = Mat3::IDENTITY;
        p[(0, 2)] = -I * 0.5;
        assert_eq!(classify(&p, HermitianModel::H2).unwrap(), ElementClass::Parabolic);
        assert_eq!(
            classify(&Mat3::diag_real([2.0, 1.0, 0.5]), HermitianModel::H1),
            Err(Error::NotInGroup)
        );
    }

    #[test]
    fn reflections_are_distinguished() {
        let a = 0.9;
        // double eigenvalue carries the negative direction
        assert_eq!(
            classify(&e(a, -2.0 * a, a), HermitianModel::H1).unwrap(),
            ElementClass::EllipticReflectionLine
        );
        assert_eq!(
            classify(&e(a, a, -2.0 * a), HermitianModel::H1).unwrap(),
            ElementClass::EllipticReflectionPoint
        );
        assert_eq!(
            classify(&e(0.3, 1.2, -1.5), HermitianModel::H1).unwrap(),
            ElementClass::EllipticRegular
        );
    }

    #[test]
    fn eig_minus_examples() {
        let (a, b) = (0.4, 1.9);
        let got = eig_minus(&e(a, b, -a - b), HermitianModel::H1).unwrap();
        assert!((got - expi(-a - b)).norm() < 1e-12);
        let got = eig_minus(&Mat3::scalar(OMEGA), HermitianModel::H1).unwrap();
        assert!((got - OMEGA).norm() < 1e-12);
        assert_eq!(
            eig_minus(&lox(c(0.5, 0.2)), HermitianModel::H2),
            Err(Error::NotElliptic)
        );
    }

    #[test]
    fn canonical_examples() {
        let m = e(2.0, 1.0, TAU - 3.0);
        let got = canonical(&m, HermitianModel::H1).unwrap();
        assert!(got.approx_eq(
            &CanonicalForm::Elliptic {
                a: 1.0,
                b: 2.0,
                c: TAU - 3.0
            },
            1e-12
        ));
        if let CanonicalForm::Elliptic { a, b, .. } = got {
            assert!(a <= b);
        }

        let t = 2.0 * PI / 3.0;
        let got = canonical(&Mat3::scalar(OMEGA), HermitianModel::H1).unwrap();
        assert!(got.approx_eq(&CanonicalForm::Elliptic { a: t, b: t, c: t }, 1e-12));

        let got = canonical(&lox(c(0.5, 0.0)), HermitianModel::H2).unwrap();
        assert!(got.approx_eq(&CanonicalForm::Loxodromic { lambda: c(0.5, 0.0) }, 1e-12));

        let mut p = Mat3::IDENTITY;
        p[(0, 2)] = -I * 0.5;
        assert_eq!(canonical(&p, HermitianModel::H2), Err(Error::NotSemisimpleInGroup));
    }

    #[test]
    fn representative_examples() {
        let (m, model) = CanonicalForm::Elliptic {
            a: 0.5,
            b: 1.0,
            c: TAU - 1.5,
        }
        .representative();
        assert_eq!(model, HermitianModel::H1);
        assert!(Tol::DEFAULT.close_mat(&m, &e(0.5, 1.0, -1.5)));

        let l = c(0.3, -0.4);
        let (m, model) = CanonicalForm::Loxodromic { lambda: l }.representative();
        assert_eq!(model, HermitianModel::H2);
        assert!(HermitianModel::H2.contains(&m, &Tol::DEFAULT));

        let t = 2.0 * PI / 3.0;
        let (m, _) = CanonicalForm::Elliptic { a: t, b: t, c: t }.representative();
        assert!(Tol::DEFAULT.close_mat(&m, &Mat3::scalar(OMEGA)));
    }

    #[test]
    fn same_orbit_examples() {
        let (a, b, cc) = (0.3, 1.7, -2.0);
        assert!(same_orbit(&e(a, b, cc), &e(b, a, cc), HermitianModel::H1).unwrap());
        assert!(!same_orbit(&e(a, cc, b), &e(a, b, cc), HermitianModel::H1).unwrap());
        let mut p = Mat3::IDENTITY;
        p[(0, 2)] = -I * 0.5;
        assert_eq!(same_orbit(&p, &p, HermitianModel::H2), Err(Error::NotSemisimpleInGroup));
    }

    #[test]
    fn canonical_json() {
        let s = serde_json::to_string(&CanonicalForm::Loxodromic { lambda: c(0.5, 0.0) }).unwrap();
        assert_eq!(s, r#"{"type":"loxodromic","lambda":[0.5,0.0]}"#);
        let s = serde_json::to_string(&CanonicalForm::Elliptic { a: 1.0, b: 2.0, c: 3.0 }).unwrap();
        assert_eq!(s, r#"{"type":"elliptic","a":1.0,"b":2.0,"c":3.0}"#);
    }

    #[test]
    fn angle_helpers() {
        assert_eq!(normalize_angle(-1e-300), 0.0);
        assert!((normalize_angle(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!(circle_dist(0.01, TAU - 0.01) < 0.0201);
    }
}
