//! Galois 1-cocycles of stabilizers, the orbit-to-cohomology map, and explicit
//! invariants classifying H¹ for each stabilizer shape.
//!
//! A cocycle is stored together with a frame `P` that puts the base point in
//! standard position: `P⁻¹ x P` is diagonal, repeated eigenvalue first. The
//! classifiers work on `P⁻¹ c P` with the transported involution.

use std::fmt;

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg3::{self, Cplx, Mat3, Spectrum, Tol};
use crate::quotients::{self, StabilizerKind};
use crate::real_forms::{Involution, RealFormType, I21};
use crate::su21::CONGRUENCE;

/// Tolerance for cocycle identities and shape checks. Cocycles are products of
/// conjugators, so they carry more rounding than the inputs.
pub const COCYCLE_TOL: Tol = Tol {
    abs_eps: 1e-7,
    rel_eps: 1e-7,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cocycle {
    pub c: Mat3,
    pub involution: Involution,
    pub stabilizer: StabilizerKind,
    /// Columns adapted to the base point; see the module docs.
    pub frame: Mat3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum H1Class {
    Trivial,
    /// Signs of the first two diagonal entries of a torus cocycle.
    Signs {
        first: i8,
        second: i8,
    },
    /// Signature of the 2×2 block of `c J`.
    Block {
        pos: usize,
        neg: usize,
    },
    /// Signature of `c J` up to overall sign: `(3, 0)` or `(2, 1)`.
    Form {
        pos: usize,
        neg: usize,
    },
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i8| if s > 0 { '+' } else { '-' };
        match *self {
            H1Class::Trivial => write!(f, "trivial"),
            H1Class::Signs { first, second } => write!(f, "({},{})", sign(first), sign(second)),
            H1Class::Block { pos, neg } => write!(f, "block({pos},{neg})"),
            H1Class::Form { pos, neg } => write!(f, "form({pos},{neg})"),
        }
    }
}

pub fn is_cocycle(t: &Involution, c: &Mat3) -> bool {
    is_cocycle_with(t, c, &Tol::DEFAULT)
}

pub fn is_cocycle_with(t: &Involution, c: &Mat3, tol: &Tol) -> bool {
    match t.apply(c) {
        Ok(tc) => tol.close_mat(&(*c * tc), &Mat3::IDENTITY),
        Err(_) => false,
    }
}

/// `J` rescaled by a phase so that it is Hermitian. The involution only sees
/// `J` up to scalars.
pub fn hermitian_part(j: &Mat3) -> Mat3 {
    let (mut best, mut at) = (0.0, (0, 0));
    for i in 0..3 {
        for k in 0..3 {
            if j[(i, k)].norm() > best {
                best = j[(i, k)].norm();
                at = (i, k);
            }
        }
    }
    // J = e^{iφ} H gives J_ik / conj(J_ki) = e^{2iφ}
    let ratio = j[at] / j[(at.1, at.0)].conj();
    let phase = Cplx::from_polar(1.0, -ratio.arg() / 2.0);
    let h = j.scale(phase);
    Mat3::from_fn(|a, b| (h[(a, b)] + h[(b, a)].conj()) / 2.0)
}

fn eigvec(x: &Mat3, lambda: Cplx, tol: &Tol) -> Result<[Cplx; 3]> {
    linalg3::eigenspace(x, lambda, tol)
        .into_iter()
        .next()
        .ok_or(Error::NotSemisimple)
}

fn from_cols(cols: [[Cplx; 3]; 3]) -> Mat3 {
    Mat3::from_fn(|i, j| cols[j][i])
}

fn form(k: &Mat3, x: &[Cplx; 3], y: &[Cplx; 3]) -> Cplx {
    let ky = *k * *y;
    (0..3).map(|i| x[i].conj() * ky[i]).sum()
}

fn scaled(v: [Cplx; 3], s: Cplx) -> [Cplx; 3] {
    v.map(|z| z * s)
}

fn double_and_simple(spec: &Spectrum) -> (Cplx, Cplx) {
    let d = spec
        .eigenvalues
        .iter()
        .find(|e| e.algebraic == 2)
        .expect("double eigenvalue");
    let s = spec
        .eigenvalues
        .iter()
        .find(|e| e.algebraic == 1)
        .expect("simple eigenvalue");
    (d.value, s.value)
}

/// Frame adapted to a semisimple base point and involution.
///
/// For the second kind, with `K = H⁻¹` (`H` the Hermitian part of `J`), the
/// columns are `K`-orthogonal with `|v* K v| = 1`, except for a loxodromic
/// base point where the two null eigenvectors sit in positions 0 and 2 with
/// `v₂* K v₀ = 1`.
pub fn adapted_frame(x: &Mat3, t: &Involution) -> Result<(Mat3, StabilizerKind)> {
    adapted_frame_with(x, t, &Tol::DEFAULT)
}

pub fn adapted_frame_with(x: &Mat3, t: &Involution, tol: &Tol) -> Result<(Mat3, StabilizerKind)> {
    let kind = quotients::stabilizer_kind_with(x, t, tol)?;
    let spec = linalg3::spectrum_with(x, tol);
    let frame = match (kind, t) {
        (StabilizerKind::Full, _) => Mat3::IDENTITY,
        (StabilizerKind::GL2, Involution::FirstKind(_)) => {
            let (d, s) = double_and_simple(&spec);
            let e2 = linalg3::eigenspace(x, d, tol);
            if e2.len() != 2 {
                return Err(Error::NotSemisimple);
            }
            from_cols([e2[0], e2[1], eigvec(x, s, tol)?])
        }
        (_, Involution::FirstKind(_)) => {
            let ev = spec.expanded();
            from_cols([eigvec(x, ev[0], tol)?, eigvec(x, ev[1], tol)?, eigvec(x, ev[2], tol)?])
        }
        (_, Involution::SecondKind(j)) => {
            let k = hermitian_part(j).inverse()?;
            let unit = |v: [Cplx; 3]| {
                let n = form(&k, &v, &v).re.abs().sqrt();
                scaled(v, Cplx::new(1.0 / n, 0.0))
            };
            match kind {
                StabilizerKind::TorusA => {
                    let ev = spec.expanded();
                    from_cols([
                        unit(eigvec(x, ev[0], tol)?),
                        unit(eigvec(x, ev[1], tol)?),
                        unit(eigvec(x, ev[2], tol)?),
                    ])
                }
                StabilizerKind::TorusB => {
                    let mut ev = spec.expanded();
                    ev.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
                    let v0 = eigvec(x, ev[0], tol)?;
                    let v2 = eigvec(x, ev[2], tol)?;
                    let pairing = form(&k, &v2, &v0);
                    from_cols([v0, unit(eigvec(x, ev[1], tol)?), scaled(v2, pairing.conj().inv())])
                }
                _ => {
                    let (d, s) = double_and_simple(&spec);
                    let e2 = linalg3::eigenspace(x, d, tol);
                    if e2.len() != 2 {
                        return Err(Error::NotSemisimple);
                    }
                    let g = Matrix2::from_fn(|a, b| form(&k, &e2[a], &e2[b]));
                    let g = (g + g.adjoint()) * Cplx::new(0.5, 0.0);
                    let eig = g.symmetric_eigen();
                    let cols: Vec<[Cplx; 3]> = (0..2)
                        .map(|n| {
                            let (a, b) = (eig.eigenvectors[(0, n)], eig.eigenvectors[(1, n)]);
                            unit(std::array::from_fn(|i| e2[0][i] * a + e2[1][i] * b))
                        })
                        .collect();
                    from_cols([cols[0], cols[1], unit(eigvec(x, s, tol)?)])
                }
            }
        }
    };
    Ok((frame, kind))
}

/// The cocycle `g⁻¹ t(g)` attached to the real translate `g x g⁻¹` of the
/// real point `x`.
pub fn phi_map(x: &Mat3, g: &Mat3, t: &Involution) -> Result<Cocycle> {
    let spec = linalg3::spectrum(x);
    if !spec.diagonalizable {
        return Err(Error::NotClosedOrbit);
    }
    if !t.is_fixed_with(x, &COCYCLE_TOL) {
        return Err(Error::NotRealPoint);
    }
    let g_inv = g.inverse()?;
    let y = *g * *x * g_inv;
    if !t.is_fixed_with(&y, &COCYCLE_TOL) {
        return Err(Error::NotRealTranslate);
    }
    let (frame, stabilizer) = adapted_frame(x, t)?;
    Ok(Cocycle {
        c: g_inv * t.apply(g)?,
        involution: *t,
        stabilizer,
        frame,
    })
}

fn small(z: Cplx, scale: f64) -> bool {
    z.norm() <= COCYCLE_TOL.abs_eps + COCYCLE_TOL.rel_eps * scale
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else {
        -1
    }
}

fn signature2(b: Matrix2<Cplx>, scale: f64) -> Result<(usize, usize)> {
    let eig = ((b + b.adjoint()) * Cplx::new(0.5, 0.0)).symmetric_eigenvalues();
    let zero = COCYCLE_TOL.abs_eps * scale.max(1.0);
    if eig.iter().any(|e| e.abs() <= zero) {
        return Err(Error::KindMismatch);
    }
    let pos = eig.iter().filter(|e| **e > 0.0).count();
    Ok((pos, 2 - pos))
}

pub fn classify_cocycle(co: &Cocycle) -> Result<H1Class> {
    if !is_cocycle_with(&co.involution, &co.c, &COCYCLE_TOL) {
        return Err(Error::KindMismatch);
    }
    let p_inv = co.frame.inverse()?;
    let c = p_inv * co.c * co.frame;
    let scale = c.max_abs();
    let off: &[(usize, usize)] = match co.stabilizer {
        StabilizerKind::TorusA | StabilizerKind::TorusB => &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)],
        StabilizerKind::GL2 => &[(0, 2), (1, 2), (2, 0), (2, 1)],
        StabilizerKind::Full => &[],
    };
    if off.iter().any(|&ij| !small(c[ij], scale)) {
        return Err(Error::KindMismatch);
    }
    let j = match co.involution {
        Involution::FirstKind(_) => return Ok(H1Class::Trivial),
        Involution::SecondKind(j) => hermitian_part(&j),
    };
    let jp = p_inv * j * p_inv.adjoint();
    let cj = c * jp;
    match co.stabilizer {
        StabilizerKind::TorusB => Ok(H1Class::Trivial),
        StabilizerKind::TorusA => {
            if !(small(Cplx::new(0.0, c[(0, 0)].im), scale) && small(Cplx::new(0.0, c[(1, 1)].im), scale)) {
                return Err(Error::KindMismatch);
            }
            Ok(H1Class::Signs {
                first: sign(c[(0, 0)].re),
                second: sign(c[(1, 1)].re),
            })
        }
        StabilizerKind::GL2 => {
            let b = Matrix2::from_fn(|a, k| cj[(a, k)]);
            let (pos, neg) = signature2(b, cj.max_abs())?;
            Ok(H1Class::Block { pos, neg })
        }
        StabilizerKind::Full => {
            let sig = linalg3::herm_signature_with(&cj, &COCYCLE_TOL).map_err(|_| Error::KindMismatch)?;
            if sig.2 != 0 {
                return Err(Error::KindMismatch);
            }
            let definite = sig.0 == 3 || sig.1 == 3;
            Ok(if definite {
                H1Class::Form { pos: 3, neg: 0 }
            } else {
                H1Class::Form { pos: 2, neg: 1 }
            })
        }
    }
}

/// Which standard unitary involution `t` is, if any.
fn unitary_type(t: &Involution) -> Result<Option<RealFormType>> {
    match t {
        Involution::FirstKind(_) => Ok(None),
        Involution::SecondKind(_) => Ok(Some(t.identify_real_form()?)),
    }
}

/// Number of H¹ classes of the stabilizer, following the standard table.
pub fn h1_cardinality(kind: StabilizerKind, t: &Involution) -> Result<usize> {
    match unitary_type(t)? {
        None => Ok(1),
        Some(form) => match kind {
            StabilizerKind::TorusA => Ok(4),
            StabilizerKind::GL2 => Ok(3),
            StabilizerKind::Full => Ok(2),
            StabilizerKind::TorusB if form == RealFormType::SU21 => Ok(1),
            StabilizerKind::TorusB => Err(Error::UncoveredCombination),
        },
    }
}

fn standard_second_kind(t: &Involution) -> Option<RealFormType> {
    let Involution::SecondKind(j) = t else { return None };
    let h = hermitian_part(j);
    let h = h.scale(Cplx::new(1.0 / h[(0, 0)].re, 0.0));
    if COCYCLE_TOL.close_mat(&h, &Mat3::IDENTITY) {
        Some(RealFormType::SU3)
    } else if COCYCLE_TOL.close_mat(&h, &I21) {
        Some(RealFormType::SU21)
    } else {
        None
    }
}

/// One representative cocycle per H¹ class, in the standard frame.
pub fn h1_enumerate(kind: StabilizerKind, t: &Involution) -> Result<Vec<(Cocycle, H1Class)>> {
    let n = h1_cardinality(kind, t)?;
    let reps: Vec<(Mat3, Mat3)> = if t.is_first_kind() {
        vec![(Mat3::IDENTITY, Mat3::IDENTITY)]
    } else {
        let form = standard_second_kind(t).ok_or(Error::UncoveredCombination)?;
        let d = |a: f64, b: f64, c: f64| (Mat3::diag_real([a, b, c]), Mat3::IDENTITY);
        match kind {
            StabilizerKind::TorusA => vec![
                d(1.0, 1.0, 1.0),
                d(1.0, -1.0, -1.0),
                d(-1.0, 1.0, -1.0),
                d(-1.0, -1.0, 1.0),
            ],
            StabilizerKind::GL2 => vec![d(1.0, 1.0, 1.0), d(1.0, -1.0, -1.0), d(-1.0, -1.0, 1.0)],
            StabilizerKind::Full => vec![(Mat3::IDENTITY, Mat3::IDENTITY), (I21, Mat3::IDENTITY)],
            // H2-adapted frame: C* I21 C = H2
            StabilizerKind::TorusB if form == RealFormType::SU21 => vec![(Mat3::IDENTITY, CONGRUENCE)],
            StabilizerKind::TorusB => return Err(Error::UncoveredCombination),
        }
    };
    let out = reps
        .into_iter()
        .map(|(c, frame)| {
            let co = Cocycle {
                c,
                involution: *t,
                stabilizer: kind,
                frame,
            };
            classify_cocycle(&co).map(|class| (co, class))
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(out.len(), n);
    Ok(out)
}

/// Upper bound on the fiber of the comparison map through `x`: the size of
/// H¹ of its stabilizer.
pub fn fiber_h1_kernel_bound(x: &Mat3, t: &Involution) -> Result<usize> {
    let kind = quotients::stabilizer_kind(x, t)?;
    h1_cardinality(kind, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg3::{expi, I, OMEGA, ONE};
    use crate::quotients::companion_lift;
    use crate::su21::HermitianModel;

    fn torus_a(t: Involution) -> Cocycle {
        Cocycle {
            c: Mat3::IDENTITY,
            involution: t,
            stabilizer: StabilizerKind::TorusA,
            frame: Mat3::IDENTITY,
        }
    }

    #[test]
    fn cocycle_examples() {
        for t in [Involution::tau0(), Involution::tau1(), Involution::tau2()] {
            assert!(is_cocycle(&t, &Mat3::IDENTITY));
        }
        assert!(is_cocycle(&Involution::tau1(), &I21));
        // c c̄ = diag(2, 1/2, 1)^2 ≠ I
        assert!(!is_cocycle(&Involution::tau0(), &Mat3::diag_real([2.0, 0.5, 1.0])));
    }

    #[test]
    fn classify_examples() {
        let full = |c: Mat3| Cocycle {
            c,
            involution: Involution::tau1(),
            stabilizer: StabilizerKind::Full,
            frame: Mat3::IDENTITY,
        };
        assert_eq!(
            classify_cocycle(&full(Mat3::IDENTITY)).unwrap(),
            H1Class::Form { pos: 3, neg: 0 }
        );
        assert_eq!(classify_cocycle(&full(I21)).unwrap(), H1Class::Form { pos: 2, neg: 1 });

        let co = Cocycle {
            c: Mat3::diag_real([-1.0, -1.0, 1.0]),
            ..torus_a(Involution::tau1())
        };
        assert_eq!(classify_cocycle(&co).unwrap(), H1Class::Signs { first: -1, second: -1 });
    }

    #[test]
    fn shape_mismatch_is_reported() {
        // a cocycle for tau1 that is not diagonal
        let c = Mat3::from_real([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(is_cocycle(&Involution::tau1(), &c));
        let co = Cocycle {
            c,
            ..torus_a(Involution::tau1())
        };
        assert_eq!(classify_cocycle(&co), Err(Error::KindMismatch));
    }

    #[test]
    fn cardinalities() {
        let (t0, t1, t2) = (Involution::tau0(), Involution::tau1(), Involution::tau2());
        for k in [
            StabilizerKind::TorusA,
            StabilizerKind::TorusB,
            StabilizerKind::GL2,
            StabilizerKind::Full,
        ] {
            assert_eq!(h1_cardinality(k, &t0).unwrap(), 1);
        }
        assert_eq!(h1_cardinality(StabilizerKind::TorusA, &t2).unwrap(), 4);
        assert_eq!(h1_cardinality(StabilizerKind::GL2, &t1).unwrap(), 3);
        assert_eq!(h1_cardinality(StabilizerKind::Full, &t1).unwrap(), 2);
        assert_eq!(h1_cardinality(StabilizerKind::TorusB, &t2).unwrap(), 1);
        assert_eq!(
            h1_cardinality(StabilizerKind::TorusB, &t1),
            Err(Error::UncoveredCombination)
        );
    }

    #[test]
    fn enumerations_are_distinct() {
        let (t0, t1, t2) = (Involution::tau0(), Involution::tau1(), Involution::tau2());
        let cases = [
            (StabilizerKind::TorusA, t0),
            (StabilizerKind::TorusB, t0),
            (StabilizerKind::GL2, t0),
            (StabilizerKind::Full, t0),
            (StabilizerKind::TorusA, t1),
            (StabilizerKind::GL2, t1),
            (StabilizerKind::Full, t1),
            (StabilizerKind::TorusA, t2),
            (StabilizerKind::GL2, t2),
            (StabilizerKind::Full, t2),
            (StabilizerKind::TorusB, t2),
        ];
        for (k, t) in cases {
            let reps = h1_enumerate(k, &t).unwrap();
            assert_eq!(reps.len(), h1_cardinality(k, &t).unwrap());
            for (i, (co, class)) in reps.iter().enumerate() {
                assert!(is_cocycle(&t, &co.c));
                for (_, other) in &reps[i + 1..] {
                    assert_ne!(class, other, "{k:?}");
                }
            }
        }
        assert_eq!(
            h1_enumerate(StabilizerKind::TorusB, &t1).unwrap_err(),
            Error::UncoveredCombination
        );
    }

    #[test]
    fn phi_map_examples() {
        let x = companion_lift(0.0, 0.0);
        let t0 = Involution::tau0();
        let co = phi_map(&x, &Mat3::IDENTITY, &t0).unwrap();
        assert!(Tol::DEFAULT.close_mat(&co.c, &Mat3::IDENTITY));
        assert_eq!(co.stabilizer, StabilizerKind::TorusB);
        assert_eq!(classify_cocycle(&co).unwrap(), H1Class::Trivial);

        // a real g gives the identity cocycle
        let g = Mat3::from_real([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [3.0, 0.0, 1.0]])
            .unimodular()
            .unwrap();
        let co = phi_map(&x, &g, &t0).unwrap();
        assert!(COCYCLE_TOL.close_mat(&co.c, &Mat3::IDENTITY));

        let mut u = Mat3::IDENTITY;
        u[(0, 1)] = ONE;
        assert_eq!(phi_map(&u, &Mat3::IDENTITY, &t0).unwrap_err(), Error::NotClosedOrbit);
        let g = Mat3::diag([I, ONE, -I]);
        assert_eq!(phi_map(&x, &g, &t0).unwrap_err(), Error::NotRealTranslate);
        let x = Mat3::diag([ONE, OMEGA, OMEGA * OMEGA]);
        assert_eq!(phi_map(&x, &Mat3::IDENTITY, &t0).unwrap_err(), Error::NotRealPoint);
    }

    #[test]
    fn phi_separates_markings() {
        // E(a,b,c) and its cyclic permutations are conjugate by permutation
        // matrices; their cocycles under tau2 have different sign pairs.
        let (a, b) = (0.4, 1.3);
        let x = Mat3::diag([expi(a), expi(b), expi(-a - b)]);
        let t2 = Involution::tau2();
        let cyc = Mat3::from_real([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let mut classes = Vec::new();
        for g in [Mat3::IDENTITY, cyc, cyc * cyc] {
            let y = g * x * g.inverse().unwrap();
            assert!(HermitianModel::H1.contains(&y, &Tol::DEFAULT));
            classes.push(classify_cocycle(&phi_map(&x, &g, &t2).unwrap()).unwrap());
        }
        assert_ne!(classes[0], classes[1]);
        assert_ne!(classes[0], classes[2]);
        assert_ne!(classes[1], classes[2]);
    }

    #[test]
    fn kernel_bounds() {
        let t2 = Involution::tau2();
        let x = Mat3::diag([ONE, OMEGA, OMEGA * OMEGA]);
        assert_eq!(fiber_h1_kernel_bound(&x, &t2).unwrap(), 4);
        assert_eq!(
            fiber_h1_kernel_bound(&companion_lift(4.0, 4.0), &Involution::tau0()).unwrap(),
            1
        );
        assert_eq!(fiber_h1_kernel_bound(&Mat3::scalar(OMEGA), &t2).unwrap(), 2);
    }

    #[test]
    fn adapted_frames_are_standard() {
        let t2 = Involution::tau2();
        let lox = HermitianModel::H2.transport(
            &Mat3::diag([
                Cplx::new(0.5, 0.2),
                Cplx::new(0.5, -0.2) / Cplx::new(0.5, 0.2),
                Cplx::new(0.5, 0.2).conj().inv(),
            ]),
            HermitianModel::H1,
        );
        let (p, kind) = adapted_frame(&lox, &t2).unwrap();
        assert_eq!(kind, StabilizerKind::TorusB);
        let k = I21.inverse().unwrap();
        assert!(COCYCLE_TOL.close_mat(&(p.adjoint() * k * p), &HermitianModel::H2.matrix()));
        assert!((p.inverse().unwrap() * lox * p).is_diagonal(&COCYCLE_TOL));

        let refl = Mat3::diag([expi(0.6), expi(-1.2), expi(0.6)]);
        let (p, kind) = adapted_frame(&refl, &t2).unwrap();
        assert_eq!(kind, StabilizerKind::GL2);
        let g = p.adjoint() * I21 * p;
        assert!(g.is_diagonal(&COCYCLE_TOL));
        assert!(g.diagonal().iter().all(|d| (d.norm() - 1.0).abs() < 1e-9));
    }

    #[test]
    fn hermitian_part_removes_phase() {
        let h = hermitian_part(&I21.scale(OMEGA));
        assert!(h.is_hermitian(&Tol::DEFAULT));
        assert!(COCYCLE_TOL.close_mat(&h, &I21) || COCYCLE_TOL.close_mat(&h, &-I21));
    }
}
