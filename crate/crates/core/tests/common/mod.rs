#![allow(dead_code)]

use charvar::linalg3::{expi, Cplx, Mat3, ONE};
use charvar::quotients::StabilizerKind;
use charvar::sampling;
use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Cplx {
    Cplx::new(re, im)
}

/// Nonzero complex number with log-normal modulus.
pub fn unit_ish<R: Rng>(rng: &mut R) -> Cplx {
    Cplx::from_polar((0.5 * sampling::gaussian(rng)).exp(), sampling::angle(rng))
}

/// Random element of the stabilizer shape in frame coordinates, moved back by
/// the frame.
pub fn random_stabilizer<R: Rng>(rng: &mut R, kind: StabilizerKind, frame: &Mat3) -> Mat3 {
    let hp = match kind {
        StabilizerKind::TorusA | StabilizerKind::TorusB => {
            let (a, b) = (unit_ish(rng), unit_ish(rng));
            Mat3::diag([a, b, (a * b).inv()])
        }
        StabilizerKind::GL2 => {
            let mut m = Mat3::IDENTITY;
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = sampling::complex_gaussian(rng) * 0.5 + if i == j { ONE * 2.0 } else { ONE * 0.0 };
                }
            }
            let d = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            m[(2, 2)] = d.inv();
            m
        }
        StabilizerKind::Full => sampling::sl3c(rng),
    };
    *frame * hp * frame.inverse().unwrap()
}

pub fn to_na(m: &Mat3) -> Matrix3<Cplx> {
    Matrix3::from_fn(|i, j| m[(i, j)])
}

pub fn from_na(m: &Matrix3<Cplx>) -> Mat3 {
    Mat3::from_fn(|i, j| m[(i, j)])
}

/// Unitary factor of the polar decomposition, rescaled into SU(3).
pub fn polar_unitary(g: &Mat3) -> Mat3 {
    let svd = to_na(g).svd(true, true);
    let u = svd.u.unwrap() * svd.v_t.unwrap();
    let u = from_na(&u);
    let phase = u.det().arg() / 3.0;
    u.scale(expi(-phase))
}

pub fn rel_residual(a: &Mat3, b: &Mat3) -> f64 {
    (*a - *b).norm() / a.norm().max(b.norm()).max(1.0)
}
