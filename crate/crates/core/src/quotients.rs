//! Trace coordinates on the character variety of Z, regions of the real
//! slice, lifts, and the fibers of the comparison map for each real form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg3::{self, cplx_pair, cubic, Cplx, Cubic, Mat3, Tol, OMEGA, ONE};
use crate::real_forms::Involution;
use crate::su21::{self, CanonicalForm};

/// `(tr M, tr M⁻¹)`, which identifies the character variety of Z with C².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceCoords {
    #[serde(with = "cplx_pair")]
    pub z: Cplx,
    #[serde(with = "cplx_pair")]
    pub w: Cplx,
}

impl TraceCoords {
    pub fn new(z: Cplx, w: Cplx) -> TraceCoords {
        TraceCoords { z, w }
    }

    /// Coordinates of an SU(2,1) or SU(3) point with trace `z`.
    pub fn unitary(z: Cplx) -> TraceCoords {
        TraceCoords { z, w: z.conj() }
    }

    pub fn swap(self) -> TraceCoords {
        TraceCoords { z: self.w, w: self.z }
    }

    pub fn cubic(&self) -> Cubic {
        Cubic::sl3(self.z, self.w)
    }
}

/// The two antiholomorphic involutions of C² induced by the real forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealSlice {
    /// `(z, w) ↦ (z̄, w̄)`, induced by SL(3,R).
    Phi1,
    /// `(z, w) ↦ (w̄, z̄)`, induced by SU(3) and SU(2,1).
    Phi2,
}

impl RealSlice {
    pub fn apply(self, c: TraceCoords) -> TraceCoords {
        match self {
            RealSlice::Phi1 => TraceCoords::new(c.z.conj(), c.w.conj()),
            RealSlice::Phi2 => TraceCoords::new(c.w.conj(), c.z.conj()),
        }
    }

    pub fn is_fixed(self, c: TraceCoords, tol: &Tol) -> bool {
        let d = self.apply(c);
        tol.close(d.z, c.z) && tol.close(d.w, c.w)
    }

    pub fn of(t: &Involution) -> RealSlice {
        if t.is_first_kind() {
            RealSlice::Phi1
        } else {
            RealSlice::Phi2
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Su21Region {
    InteriorDelta,
    BoundaryNonCentral,
    CentralPoint,
    Exterior,
}

impl Su21Region {
    pub fn label(self) -> &'static str {
        match self {
            Su21Region::InteriorDelta => "interior",
            Su21Region::BoundaryNonCentral => "boundary",
            Su21Region::CentralPoint => "center",
            Su21Region::Exterior => "exterior",
        }
    }
}

impl fmt::Display for Su21Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Shape of the stabilizer of a semisimple element, relative to an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerKind {
    /// Regular, eigenvalues individually preserved by the involution.
    TorusA,
    /// Regular, two eigenvalues exchanged by the involution.
    TorusB,
    /// Exactly one repeated eigenvalue.
    GL2,
    /// Scalar.
    Full,
}

impl fmt::Display for StabilizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StabilizerKind::TorusA => "torus (a)",
            StabilizerKind::TorusB => "torus (b)",
            StabilizerKind::GL2 => "GL2",
            StabilizerKind::Full => "SL3",
        };
        f.write_str(s)
    }
}

/// The three center points of the deltoid.
pub fn center_points() -> [Cplx; 3] {
    [ONE * 3.0, OMEGA * 3.0, OMEGA * OMEGA * 3.0]
}

pub fn trace_coords(m: &Mat3) -> Result<TraceCoords> {
    trace_coords_with(m, &Tol::DEFAULT)
}

pub fn trace_coords_with(m: &Mat3, tol: &Tol) -> Result<TraceCoords> {
    let (z, w) = linalg3::char_poly_sl3_with(m, tol)?;
    Ok(TraceCoords { z, w })
}

/// `tr Mᵏ` from the Newton recurrence of `X³ - zX² + wX - 1`.
pub fn power_trace(c: &TraceCoords, k: i32) -> Cplx {
    if k < 0 {
        return power_trace(&c.swap(), -k);
    }
    let (z, w) = (c.z, c.w);
    // p0 = 3
    let mut p = [ONE * 3.0, z, z * z - w * 2.0];
    if k <= 2 {
        return p[k as usize];
    }
    for _ in 3..=k {
        let next = z * p[2] - w * p[1] + p[0];
        p = [p[1], p[2], next];
    }
    p[2]
}

/// Real companion matrix with characteristic polynomial `X³ - rX² + sX - 1`.
pub fn companion_lift(r: f64, s: f64) -> Mat3 {
    Mat3::from_real([[0.0, 0.0, 1.0], [1.0, 0.0, -s], [0.0, 1.0, r]])
}

/// Diagonal matrix of the (clustered) roots of the characteristic cubic.
pub fn diagonal_lift(c: &TraceCoords) -> Mat3 {
    diagonal_lift_with(c, &Tol::DEFAULT)
}

pub fn diagonal_lift_with(c: &TraceCoords, tol: &Tol) -> Mat3 {
    Mat3::diag(cubic::expand(&c.cubic().roots(tol)))
}

pub fn su21_region(z: Cplx) -> Su21Region {
    su21_region_with(z, &Tol::DEFAULT)
}

pub fn su21_region_with(z: Cplx, tol: &Tol) -> Su21Region {
    let near_center = center_points().iter().any(|p| (z - p).norm() < tol.abs_eps);
    if near_center {
        return Su21Region::CentralPoint;
    }
    let f = su21::goldman_f(z);
    if f.abs() <= su21::boundary_tol(z) {
        Su21Region::BoundaryNonCentral
    } else if f < 0.0 {
        Su21Region::InteriorDelta
    } else {
        Su21Region::Exterior
    }
}

pub fn fiber_count_su21(z: Cplx) -> usize {
    match su21_region(z) {
        Su21Region::InteriorDelta => 3,
        Su21Region::BoundaryNonCentral => 2,
        Su21Region::CentralPoint | Su21Region::Exterior => 1,
    }
}

/// SU(2,1)-orbits of semisimple elements with trace `z`, one canonical form
/// each, built from the possible markings of the negative-type eigenvalue.
pub fn fiber_enumerate_su21(z: Cplx) -> Vec<CanonicalForm> {
    let c = TraceCoords::unitary(z);
    match su21_region(z) {
        Su21Region::CentralPoint => {
            let center = center_points()
                .into_iter()
                .min_by(|a, b| (z - a).norm().total_cmp(&(z - b).norm()))
                .expect("three centers");
            let theta = su21::normalize_angle((center / 3.0).arg());
            vec![CanonicalForm::Elliptic {
                a: theta,
                b: theta,
                c: theta,
            }]
        }
        Su21Region::Exterior => {
            let lambda = c
                .cubic()
                .raw_roots()
                .into_iter()
                .min_by(|a, b| a.norm().total_cmp(&b.norm()))
                .expect("three roots");
            vec![CanonicalForm::Loxodromic { lambda }]
        }
        Su21Region::InteriorDelta => {
            let r = c.cubic().raw_roots().map(|x| x / x.norm());
            (0..3)
                .map(|k| CanonicalForm::elliptic([r[(k + 1) % 3], r[(k + 2) % 3]], r[k]))
                .collect()
        }
        Su21Region::BoundaryNonCentral => {
            let d = boundary_double_root(z);
            let s = d.conj() * d.conj();
            vec![
                // negative direction inside the doubled eigenspace
                CanonicalForm::elliptic([d, s], d),
                // negative direction on the simple eigenvalue
                CanonicalForm::elliptic([d, d], s),
            ]
        }
    }
}

/// Unit-modulus double root of `X³ - zX² + z̄X - 1` for `z` on the boundary,
/// taken as the critical point where the cubic is smallest.
fn boundary_double_root(z: Cplx) -> Cplx {
    let p = TraceCoords::unitary(z).cubic();
    // 3X² - 2zX + z̄ = 0
    let disc = (z * z - z.conj() * 3.0).sqrt();
    let cands = [(z + disc) / 3.0, (z - disc) / 3.0];
    let d = if p.eval(cands[0]).norm() <= p.eval(cands[1]).norm() {
        cands[0]
    } else {
        cands[1]
    };
    d / d.norm()
}

pub fn fiber_count_sl3r(_r: f64, _s: f64) -> usize {
    1
}

pub fn su3_in_image(z: Cplx) -> bool {
    su21::goldman_f(z) <= su21::boundary_tol(z)
}

pub fn stabilizer_kind(m: &Mat3, t: &Involution) -> Result<StabilizerKind> {
    stabilizer_kind_with(m, t, &Tol::DEFAULT)
}

pub fn stabilizer_kind_with(m: &Mat3, t: &Involution, tol: &Tol) -> Result<StabilizerKind> {
    let spec = linalg3::spectrum_with(m, tol);
    if !spec.diagonalizable {
        return Err(Error::NotSemisimple);
    }
    Ok(match spec.distinct() {
        1 => StabilizerKind::Full,
        2 => StabilizerKind::GL2,
        _ => {
            let type_a = spec.eigenvalues.iter().all(|e| {
                let eps = tol.pair_eps(e.value.norm().max(1.0));
                if t.is_first_kind() {
                    e.value.im.abs() <= eps
                } else {
                    (e.value.norm() - 1.0).abs() <= eps
                }
            });
            if type_a {
                StabilizerKind::TorusA
            } else {
                StabilizerKind::TorusB
            }
        }
    })
}

/// One row of the `curve` output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub re: f64,
    pub im: f64,
    pub f: f64,
    pub region: Su21Region,
}

impl CurvePoint {
    pub fn at(re: f64, im: f64) -> CurvePoint {
        let z = Cplx::new(re, im);
        CurvePoint {
            re,
            im,
            f: su21::goldman_f(z),
            region: su21_region(z),
        }
    }

    pub fn csv(&self) -> String {
        format!("{},{},{},{}", self.re, self.im, self.f, self.region)
    }
}
