//! Good representations of free groups, intertwiners with their images under
//! an involution, and the twisted real form containing a representation with
//! real character.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg3::{self, elim, Cplx, Mat3, Tol, ONE};
use crate::real_forms::{Center, Involution, RealFormType};

/// Iteration cap for the algebra span closure.
pub const SPAN_CAP: usize = 20;

/// Tolerance for the central witness and the twist of a computed intertwiner.
pub const LIFT_TOL: Tol = Tol {
    abs_eps: 1e-7,
    rel_eps: 1e-7,
};

/// Images of the free generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub generators: Vec<Mat3>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessReport {
    pub irreducible: bool,
    pub commutant_dimension: usize,
    pub semisimple: bool,
    pub good: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiftResult {
    pub h: Mat3,
    #[serde(serialize_with = "center_label")]
    pub central_witness: Center,
    pub twisted: Involution,
    pub real_form: RealFormType,
    pub residual: f64,
}

fn center_label<S: Serializer>(c: &Center, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(c.label())
}

impl Representation {
    pub fn new(generators: Vec<Mat3>) -> Result<Representation> {
        Representation::new_with(generators, &Tol::DEFAULT)
    }

    /// Checks that there is at least one generator and that each is finite
    /// and unimodular.
    pub fn new_with(generators: Vec<Mat3>, tol: &Tol) -> Result<Representation> {
        if generators.is_empty() {
            return Err(Error::EmptyRepresentation);
        }
        for g in &generators {
            if !g.is_finite() {
                return Err(Error::NonFinite);
            }
            let d = g.det();
            if !tol.close(d, ONE) {
                return Err(Error::NotUnimodular { re: d.re, im: d.im });
            }
        }
        Ok(Representation { generators })
    }

    pub fn conjugate(&self, g: &Mat3) -> Result<Representation> {
        let g_inv = g.inverse()?;
        Ok(Representation {
            generators: self.generators.iter().map(|m| *g * *m * g_inv).collect(),
        })
    }

    pub fn max_norm(&self) -> f64 {
        self.generators.iter().map(Mat3::norm).fold(0.0, f64::max)
    }
}

fn normalized(v: [Cplx; 9]) -> Vec<Cplx> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / n).collect()
}

/// Dimension of the unital algebra generated by the generators, by closing the
/// span under right multiplication.
pub fn algebra_dimension(r: &Representation) -> Result<usize> {
    let mut basis: Vec<Vec<Cplx>> = vec![normalized(Mat3::IDENTITY.to_vec9())];
    let mut frontier = basis.clone();
    for _ in 0..SPAN_CAP {
        let mut fresh = Vec::new();
        for b in &frontier {
            let m = Mat3::from_vec9(b);
            for g in &r.generators {
                let p = (m * *g).to_vec9();
                if p.iter().all(|z| *z == Cplx::new(0.0, 0.0)) {
                    continue;
                }
                if let Some(u) = elim::orthogonalize(&basis, &normalized(p), 1e-9) {
                    basis.push(u.clone());
                    fresh.push(u);
                }
            }
        }
        if fresh.is_empty() || basis.len() == 9 {
            return Ok(basis.len());
        }
        frontier = fresh;
    }
    Err(Error::SpanNotConverged(SPAN_CAP))
}

pub fn is_irreducible(r: &Representation) -> bool {
    matches!(algebra_dimension(r), Ok(9))
}

pub fn goodness(r: &Representation) -> GoodnessReport {
    let irreducible = is_irreducible(r);
    let semisimple = if r.generators.len() == 1 {
        linalg3::spectrum(&r.generators[0]).diagonalizable
    } else {
        irreducible
    };
    GoodnessReport {
        irreducible,
        commutant_dimension: linalg3::commutant_dim(&r.generators),
        semisimple,
        good: irreducible,
    }
}

/// Orthonormal basis of `{X : X a_i = b_i X}` as 9-vectors.
fn intertwiner_space(pairs: &[(Mat3, Mat3)]) -> Vec<Vec<Cplx>> {
    let sys = linalg3::intertwiner_system(pairs);
    let red = elim::reduce(&sys, 1e-9);
    let mut basis: Vec<Vec<Cplx>> = Vec::new();
    for v in red.kernel {
        if let Some(u) = elim::orthogonalize(&basis, &v, 1e-12) {
            basis.push(u);
        }
    }
    basis
}

/// Scales so the largest entry is real positive, then to det 1 with the
/// principal cube root.
fn normalize_intertwiner(h: Mat3) -> Result<Mat3> {
    let big =
        h.0.iter()
            .flatten()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("nine entries");
    h.scale(big.conj() / big.norm()).unimodular()
}

fn involution_pairs(r: &Representation, t: &Involution) -> Result<Vec<(Mat3, Mat3)>> {
    r.generators.iter().map(|g| Ok((t.apply(g)?, *g))).collect()
}

/// Complex dimension of the space of `h` with `ρ_i h = h t(ρ_i)`.
pub fn intertwiner_dim(r: &Representation, t: &Involution) -> Result<usize> {
    Ok(intertwiner_space(&involution_pairs(r, t)?).len())
}

/// `h` with `ρ_i h = h t(ρ_i)` for every generator, normalized to det 1.
pub fn solve_intertwiner(r: &Representation, t: &Involution) -> Result<Mat3> {
    let space = intertwiner_space(&involution_pairs(r, t)?);
    match space.len() {
        0 => Err(Error::NoIntertwiner),
        1 => normalize_intertwiner(Mat3::from_vec9(&space[0])),
        n => {
            if r.generators.iter().all(|g| t.is_fixed(g)) {
                Ok(Mat3::IDENTITY)
            } else {
                Err(Error::NotUnique(n))
            }
        }
    }
}

pub fn lift(r: &Representation, t: &Involution) -> Result<LiftResult> {
    if !goodness(r).good {
        return Err(Error::NotGood);
    }
    let h = solve_intertwiner(r, t)?;
    let witness = h * t.apply(&h)?;
    let central_witness = Center::of(&witness, &LIFT_TOL).ok_or(Error::NotCentral)?;
    let twisted = t.twist_with(&h, &LIFT_TOL)?;
    let real_form = twisted.identify_real_form()?;
    let mut residual: f64 = 0.0;
    for g in &r.generators {
        residual = residual.max((twisted.apply(g)? - *g).norm());
    }
    Ok(LiftResult {
        h,
        central_witness,
        twisted,
        real_form,
        residual,
    })
}

/// Whether the character of `r` is fixed by `t`.
///
/// For good `r` this is existence of an intertwiner. A single semisimple
/// generator is also accepted: its character is real iff it is conjugate to
/// its image, i.e. iff the intertwiner space contains an invertible matrix.
pub fn character_is_real(r: &Representation, t: &Involution) -> Result<bool> {
    if goodness(r).good {
        return match solve_intertwiner(r, t) {
            Ok(_) => Ok(true),
            Err(Error::NoIntertwiner) => Ok(false),
            Err(e) => Err(e),
        };
    }
    match r.generators.as_slice() {
        [g] if linalg3::spectrum(g).diagonalizable => match conjugator(&t.apply(g)?, g) {
            Ok(_) => Ok(true),
            Err(Error::NoIntertwiner) => Ok(false),
            Err(e) => Err(e),
        },
        _ => Err(Error::NotGood),
    }
}

/// Fixed generic coefficients for combining an intertwiner basis.
fn generic_coeffs(n: usize, real: bool) -> Vec<Cplx> {
    (0..n)
        .map(|k| {
            let k = k as f64;
            let modulus = 1.0 + 0.37 * k;
            if real {
                Cplx::new(modulus * (0.9 + 1.3 * k).cos(), 0.0)
            } else {
                Cplx::from_polar(modulus, 0.9 + 1.3 * k)
            }
        })
        .collect()
}

fn combine(space: &[Vec<Cplx>], real: bool) -> Result<Mat3> {
    if space.is_empty() {
        return Err(Error::NoIntertwiner);
    }
    let coeffs = generic_coeffs(space.len(), real);
    let v: Vec<Cplx> = (0..9)
        .map(|i| space.iter().zip(&coeffs).map(|(b, c)| b[i] * c).sum())
        .collect();
    let g = Mat3::from_vec9(&v);
    if g.det().norm() <= 1e-8 * g.norm().powi(3) {
        return Err(Error::NoIntertwiner);
    }
    Ok(g)
}

/// Some `g` in SL(3,C) with `g x g⁻¹ = y`.
pub fn conjugator(x: &Mat3, y: &Mat3) -> Result<Mat3> {
    conjugator_tuple(&[*x], &[*y])
}

/// Some `g` in SL(3,C) with `g x_i g⁻¹ = y_i` for all `i`.
pub fn conjugator_tuple(xs: &[Mat3], ys: &[Mat3]) -> Result<Mat3> {
    let pairs: Vec<(Mat3, Mat3)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    combine(&intertwiner_space(&pairs), false)?.unimodular()
}

/// Real `g` in SL(3,R) with `g x g⁻¹ = y`, for real `x` and `y`.
pub fn real_conjugator(x: &Mat3, y: &Mat3) -> Result<Mat3> {
    let space: Vec<Vec<Cplx>> = intertwiner_space(&[(*x, *y)])
        .into_iter()
        .map(|v| v.into_iter().map(|z| Cplx::new(z.re, 0.0)).collect())
        .collect();
    let g = combine(&space, true)?;
    let d = g.det().re;
    Ok(g.scale(Cplx::new(d.cbrt().recip(), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg3::{expi, I, OMEGA};
    use crate::quotients::companion_lift;
    use crate::real_forms::I21;

    fn rot(t: f64, axis: usize) -> Mat3 {
        let (c, s) = (t.cos(), t.sin());
        let (a, b) = match axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut m = Mat3::IDENTITY;
        m[(a, a)] = Cplx::new(c, 0.0);
        m[(b, b)] = Cplx::new(c, 0.0);
        m[(a, b)] = Cplx::new(-s, 0.0);
        m[(b, a)] = Cplx::new(s, 0.0);
        m
    }

    fn pair() -> Representation {
        Representation::new(vec![rot(0.7, 0) * rot(0.3, 2), rot(1.1, 1) * rot(-0.4, 0)]).unwrap()
    }

    fn omega_diag() -> Mat3 {
        Mat3::diag([ONE, OMEGA, OMEGA * OMEGA])
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!is_irreducible(&Representation::new(vec![omega_diag()]).unwrap()));
        assert!(is_irreducible(&pair()));
        assert!(!is_irreducible(
            &Representation::new(vec![Mat3::IDENTITY, Mat3::IDENTITY]).unwrap()
        ));
        // block-diagonal pair preserves a plane
        let b = Representation::new(vec![rot(0.7, 2), rot(0.2, 2) * Mat3::diag([I, -I, ONE])]).unwrap();
        assert!(!is_irreducible(&b));
        assert_eq!(Representation::new(vec![]), Err(Error::EmptyRepresentation));
    }

    #[test]
    fn goodness_examples() {
        let rep = goodness(&Representation::new(vec![omega_diag()]).unwrap());
        assert_eq!(
            rep,
            GoodnessReport {
                irreducible: false,
                commutant_dimension: 3,
                semisimple: true,
                good: false
            }
        );
        let rep = goodness(&pair());
        assert!(rep.good && rep.commutant_dimension == 1);
        let mut u = Mat3::IDENTITY;
        u[(0, 1)] = ONE;
        let rep = goodness(&Representation::new(vec![u]).unwrap());
        assert!(!rep.semisimple && !rep.good);
    }

    #[test]
    fn intertwiner_examples() {
        let t0 = Involution::tau0();
        assert!(Tol::DEFAULT.close_mat(&solve_intertwiner(&pair(), &t0).unwrap(), &Mat3::IDENTITY));

        let g = Mat3([
            [Cplx::new(1.0, 0.5), Cplx::new(0.2, 0.0), Cplx::new(0.0, -1.0)],
            [Cplx::new(0.0, 0.3), Cplx::new(1.5, 0.0), Cplx::new(0.4, 0.4)],
            [Cplx::new(-0.6, 0.0), Cplx::new(0.1, 0.9), Cplx::new(1.0, 0.0)],
        ])
        .unimodular()
        .unwrap();
        let r = pair().conjugate(&g).unwrap();
        let h = solve_intertwiner(&r, &t0).unwrap();
        let want = g * g.conj().inverse().unwrap();
        // equal up to a central scalar
        let ratio = h * want.inverse().unwrap();
        assert!(ratio.is_scalar(&LIFT_TOL));

        let d = Representation::new(vec![Mat3::diag_real([2.0, 3.0, 1.0 / 6.0])]).unwrap();
        assert_eq!(solve_intertwiner(&d, &Involution::tau1()), Err(Error::NoIntertwiner));
    }

    #[test]
    fn lift_examples() {
        let r = pair();
        let res = lift(&r, &Involution::tau0()).unwrap();
        assert_eq!(res.real_form, RealFormType::SL3R);
        assert_eq!(res.central_witness, Center::Identity);
        assert!(res.residual < 1e-12);

        // rotations are also unitary
        let res = lift(&r, &Involution::tau1()).unwrap();
        assert_eq!(res.real_form, RealFormType::SU3);

        let single = Representation::new(vec![omega_diag()]).unwrap();
        assert_eq!(lift(&single, &Involution::tau0()), Err(Error::NotGood));
    }

    #[test]
    fn lift_su21_pair() {
        let boost = |t: f64| Mat3::from_real([[t.cosh(), 0.0, t.sinh()], [0.0, 1.0, 0.0], [t.sinh(), 0.0, t.cosh()]]);
        let e = Mat3::diag([expi(0.4), expi(1.0), expi(-1.4)]);
        let r = Representation::new(vec![boost(0.8) * e, rot(0.9, 2) * boost(-0.3)]).unwrap();
        assert!(r.generators.iter().all(|g| Involution::tau2().is_fixed(g)));
        let res = lift(&r, &Involution::tau1()).unwrap();
        assert_eq!(res.real_form, RealFormType::SU21);
        // h is I21 up to a central scalar
        assert!((res.h * I21).is_scalar(&LIFT_TOL));
    }

    #[test]
    fn character_reality() {
        let d = Representation::new(vec![Mat3::diag_real([2.0, 3.0, 1.0 / 6.0])]).unwrap();
        assert!(!character_is_real(&d, &Involution::tau1()).unwrap());
        let c = Representation::new(vec![companion_lift(4.0, 4.0)]).unwrap();
        assert!(character_is_real(&c, &Involution::tau0()).unwrap());
        assert!(character_is_real(&pair(), &Involution::tau0()).unwrap());
        let mut u = Mat3::IDENTITY;
        u[(0, 1)] = ONE;
        let u = Representation::new(vec![u]).unwrap();
        assert_eq!(character_is_real(&u, &Involution::tau0()), Err(Error::NotGood));
    }

    #[test]
    fn conjugators() {
        let x = companion_lift(1.5, -2.0);
        let g = Mat3::from_real([[1.0, 2.0, 0.0], [0.5, 1.0, 1.0], [3.0, 0.0, 1.0]]);
        let g = g.scale(Cplx::new(g.det().re.abs().cbrt().recip(), 0.0));
        let y = g * x * g.inverse().unwrap();
        let h = real_conjugator(&x, &y).unwrap();
        assert!(h.0.iter().flatten().all(|z| z.im == 0.0));
        assert!((h.det() - ONE).norm() < 1e-9);
        assert!(LIFT_TOL.close_mat(&(h * x), &(y * h)));

        let h = conjugator(&omega_diag(), &Mat3::diag([OMEGA, ONE, OMEGA * OMEGA])).unwrap();
        assert!(LIFT_TOL.close_mat(&(h * omega_diag()), &(Mat3::diag([OMEGA, ONE, OMEGA * OMEGA]) * h)));
        assert_eq!(conjugator(&omega_diag(), &Mat3::IDENTITY), Err(Error::NoIntertwiner));
    }

    #[test]
    fn lift_json() {
        let res = lift(&pair(), &Involution::tau0()).unwrap();
        let v: serde_json::Value = serde_json::to_value(res).unwrap();
        assert_eq!(v["central_witness"], "I");
        assert_eq!(v["real_form"], "sl3r");
    }
}
