//! Closed-form roots of monic complex cubics, with multiple-root snapping.

use super::mat3::{Cplx, Tol, OMEGA, ZERO};

/// Monic cubic `x^3 + a x^2 + b x + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    pub a: Cplx,
    pub b: Cplx,
    pub c: Cplx,
}

/// A root together with its multiplicity after clustering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Cplx,
    pub multiplicity: usize,
}

impl Cubic {
    pub fn new(a: Cplx, b: Cplx, c: Cplx) -> Cubic {
        Cubic { a, b, c }
    }

    /// `X^3 - z X^2 + w X - 1`, the characteristic polynomial on SL(3,C).
    pub fn sl3(z: Cplx, w: Cplx) -> Cubic {
        Cubic::new(-z, w, Cplx::new(-1.0, 0.0))
    }

    pub fn eval(&self, x: Cplx) -> Cplx {
        ((x + self.a) * x + self.b) * x + self.c
    }

    pub fn deriv(&self, x: Cplx) -> Cplx {
        (x * 3.0 + self.a * 2.0) * x + self.b
    }

    /// Cardano's formula followed by a guarded Newton polish.
    pub fn raw_roots(&self) -> [Cplx; 3] {
        let (a, b, c) = (self.a, self.b, self.c);
        let shift = a / 3.0;
        let p = b - a * a / 3.0;
        let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;
        let disc = q * q / 4.0 + p * p * p / 27.0;
        let s = disc.sqrt();
        let c1 = -q / 2.0 + s;
        let c2 = -q / 2.0 - s;
        let u3 = if c1.norm() >= c2.norm() { c1 } else { c2 };

        let mut roots = if u3.norm() == 0.0 {
            // p = q = 0: triple root of the depressed cubic
            [ZERO; 3]
        } else {
            let u = u3.powf(1.0 / 3.0);
            let mut out = [ZERO; 3];
            let mut rot = Cplx::new(1.0, 0.0);
            for r in out.iter_mut() {
                let uk = u * rot;
                *r = uk - p / (uk * 3.0);
                rot *= OMEGA;
            }
            out
        };
        for r in roots.iter_mut() {
            *r -= shift;
            *r = self.polish(*r);
        }
        roots
    }

    fn polish(&self, mut x: Cplx) -> Cplx {
        let mut fx = self.eval(x).norm();
        for _ in 0..4 {
            let d = self.deriv(x);
            if d.norm() == 0.0 || fx == 0.0 {
                break;
            }
            let y = x - self.eval(x) / d;
            let fy = self.eval(y).norm();
            // also stops on NaN
            if fy.partial_cmp(&fx) != Some(std::cmp::Ordering::Less) {
                break;
            }
            x = y;
            fx = fy;
        }
        x
    }

    /// Roots clustered into distinct values with multiplicities.
    ///
    /// A close pair is replaced by the nearby critical point (a simple root of
    /// the derivative, hence well conditioned) and a close triple by `-a/3`.
    /// The remaining simple root of a double is recovered from the root sum.
    pub fn roots(&self, tol: &Tol) -> Vec<Root> {
        let r = self.raw_roots();
        let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let d01 = (r[0] - r[1]).norm();
        let d02 = (r[0] - r[2]).norm();
        let d12 = (r[1] - r[2]).norm();
        let dmax = d01.max(d02).max(d12);

        if dmax <= tol.triple_eps(scale) {
            return vec![Root {
                value: -self.a / 3.0,
                multiplicity: 3,
            }];
        }

        let (dmin, i, j) = [(d01, 0, 1), (d02, 0, 2), (d12, 1, 2)]
            .into_iter()
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .unwrap();
        if dmin <= tol.pair_eps(scale) {
            let mid = (r[i] + r[j]) / 2.0;
            let double = self.critical_point_near(mid);
            let simple = -self.a - double * 2.0;
            return vec![
                Root {
                    value: double,
                    multiplicity: 2,
                },
                Root {
                    value: simple,
                    multiplicity: 1,
                },
            ];
        }
        r.iter().map(|&value| Root { value, multiplicity: 1 }).collect()
    }

    /// Root of `3x^2 + 2a x + b` closest to `near`.
    fn critical_point_near(&self, near: Cplx) -> Cplx {
        let (qa, qb, qc) = (Cplx::new(3.0, 0.0), self.a * 2.0, self.b);
        let disc = (qb * qb - qa * qc * 4.0).sqrt();
        // numerically stable quadratic roots
        let t = if (qb.conj() * disc).re >= 0.0 {
            -(qb + disc) / 2.0
        } else {
            -(qb - disc) / 2.0
        };
        let cands = if t.norm() == 0.0 {
            [ZERO, ZERO]
        } else {
            [t / qa, qc / t]
        };
        let best = if (cands[0] - near).norm() <= (cands[1] - near).norm() {
            cands[0]
        } else {
            cands[1]
        };
        // accept the critical point only if it does not move the root far
        if (best - near).norm() <= 1e-3 * near.norm().max(1.0) {
            best
        } else {
            near
        }
    }
}

/// Expands clustered roots into a length-3 list in cluster order.
pub fn expand(roots: &[Root]) -> [Cplx; 3] {
    let mut out = [ZERO; 3];
    let mut n = 0;
    for r in roots {
        for _ in 0..r.multiplicity {
            out[n] = r.value;
            n += 1;
        }
    }
    out
}
