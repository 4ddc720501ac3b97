//! Random group elements for property checks and the self-test.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg3::{expi, Cplx, Mat3, ONE, ZERO};
use crate::su21::HermitianModel;

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Cplx {
    Cplx::new(gaussian(rng), gaussian(rng))
}

pub fn angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..std::f64::consts::TAU)
}

/// Gaussian matrix rescaled into SL(3,C).
pub fn sl3c<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    loop {
        let m = Mat3::from_fn(|_, _| complex_gaussian(rng));
        if m.det().norm() > 1e-2 {
            return m.unimodular().expect("determinant checked");
        }
    }
}

/// Gaussian real matrix rescaled into SL(3,R).
pub fn sl3r<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    loop {
        let mut m = Mat3::from_fn(|_, _| Cplx::new(gaussian(rng), 0.0));
        let d = m.det().re;
        if d.abs() > 1e-2 {
            if d < 0.0 {
                for j in 0..3 {
                    m[(0, j)] = -m[(0, j)];
                }
            }
            return m.scale(Cplx::new(d.abs().cbrt().recip(), 0.0));
        }
    }
}

/// Haar-ish unitary from Gram–Schmidt on a Gaussian matrix, with det fixed to 1.
pub fn su3<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let cols: Vec<[Cplx; 3]> = (0..3).map(|_| [0, 1, 2].map(|_| complex_gaussian(rng))).collect();
    let mut q: Vec<[Cplx; 3]> = Vec::new();
    for c in cols {
        let mut v = c;
        for u in &q {
            let d: Cplx = (0..3).map(|k| u[k].conj() * v[k]).sum();
            for k in 0..3 {
                v[k] -= d * u[k];
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        q.push(v.map(|z| z / n));
    }
    let m = Mat3::from_fn(|i, j| q[j][i]);
    let phase = m.det().arg() / 3.0;
    m.scale(expi(-phase))
}

fn su2_block<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let mut v = [complex_gaussian(rng), complex_gaussian(rng)];
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    v = v.map(|z| z / n);
    Mat3([[v[0], -v[1].conj(), ZERO], [v[1], v[0].conj(), ZERO], [ZERO, ZERO, ONE]])
}

fn boost(t: f64) -> Mat3 {
    Mat3::from_real([[t.cosh(), 0.0, t.sinh()], [0.0, 1.0, 0.0], [t.sinh(), 0.0, t.cosh()]])
}

fn torus<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let (a, b) = (angle(rng), angle(rng));
    Mat3::diag([expi(a), expi(b), expi(-a - b)])
}

/// Random element of SU(2,1) for the chosen Hermitian model.
pub fn su21<R: Rng + ?Sized>(rng: &mut R, model: HermitianModel) -> Mat3 {
    let t = rng.random_range(-1.5..1.5);
    let g = torus(rng) * su2_block(rng) * boost(t) * su2_block(rng) * torus(rng);
    HermitianModel::H1.transport(&g, model)
}

/// Random elliptic element of SU(2,1) in model H1: a regular diagonal unitary
/// conjugated by a random group element.
pub fn su21_elliptic<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let g = su21(rng, HermitianModel::H1);
    g * torus(rng) * g.inverse().expect("group element")
}
