//! Dense Gaussian elimination with complete pivoting, sized for the small
//! stacked systems used here (commutants, intertwiners, fixed Lie algebras).

use super::mat3::{Cplx, ZERO};

/// Row-major dense complex matrix.
#[derive(Debug, Clone)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Cplx>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Dense {
        Dense {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Cplx {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cplx) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: Cplx) {
        self.data[i * self.cols + j] += v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Result of reducing a matrix: its numerical rank and a basis of its kernel.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub rank: usize,
    pub kernel: Vec<Vec<Cplx>>,
}

/// Complete-pivoting elimination. A pivot is treated as zero once its modulus
/// falls below `rel_tol * max(1, max |a_ij|)`.
///
/// Kernel vectors have a unit entry on their own free column and zeros on the
/// other free columns. Real input stays real: no complex scaling is introduced.
pub fn reduce(a: &Dense, rel_tol: f64) -> Reduction {
    let (m, n) = (a.rows, a.cols);
    let mut w = a.clone();
    let threshold = rel_tol * a.max_abs().max(1.0);
    let mut col_perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;

    for k in 0..m.min(n) {
        let mut best = (k, k, 0.0_f64);
        for i in k..m {
            for j in k..n {
                let v = w.get(i, j).norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= threshold {
            break;
        }
        let (pi, pj, _) = best;
        if pi != k {
            for j in 0..n {
                w.data.swap(k * n + j, pi * n + j);
            }
        }
        if pj != k {
            for i in 0..m {
                w.data.swap(i * n + k, i * n + pj);
            }
            col_perm.swap(k, pj);
        }
        let piv = w.get(k, k);
        for j in k..n {
            let v = w.get(k, j) / piv;
            w.set(k, j, v);
        }
        for i in 0..m {
            if i == k {
                continue;
            }
            let f = w.get(i, k);
            if f == ZERO {
                continue;
            }
            for j in k..n {
                let v = w.get(i, j) - f * w.get(k, j);
                w.set(i, j, v);
            }
        }
        rank += 1;
    }

    // w[0..rank] is now [I | R] in permuted column order.
    let mut kernel = Vec::with_capacity(n - rank);
    for f in rank..n {
        let mut v = vec![ZERO; n];
        v[col_perm[f]] = Cplx::new(1.0, 0.0);
        for r in 0..rank {
            v[col_perm[r]] = -w.get(r, f);
        }
        kernel.push(v);
    }
    Reduction { rank, kernel }
}

pub fn rank(a: &Dense, rel_tol: f64) -> usize {
    reduce(a, rel_tol).rank
}

/// Modified Gram–Schmidt against an existing orthonormal set. Returns the
/// normalized residual if it carries more than `rel_tol` of the input's norm.
pub fn orthogonalize(basis: &[Vec<Cplx>], v: &[Cplx], rel_tol: f64) -> Option<Vec<Cplx>> {
    let norm0 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm0 == 0.0 {
        return None;
    }
    let mut r: Vec<Cplx> = v.iter().map(|z| z / norm0).collect();
    for _ in 0..2 {
        for b in basis {
            let c: Cplx = b.iter().zip(&r).map(|(bi, ri)| bi.conj() * ri).sum();
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
    }
    let nr = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if nr <= rel_tol {
        return None;
    }
    Some(r.into_iter().map(|z| z / nr).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> Dense {
        let m = rows.len();
        let n = rows[0].len();
        let mut d = Dense::zeros(m, n);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                d.set(i, j, Cplx::new(*x, 0.0));
            }
        }
        d
    }

    #[test]
    fn rank_of_simple_matrices() {
        assert_eq!(rank(&real(&[&[1.0, 0.0], &[0.0, 1.0]]), 1e-12), 2);
        assert_eq!(rank(&real(&[&[1.0, 2.0], &[2.0, 4.0]]), 1e-12), 1);
        assert_eq!(rank(&real(&[&[0.0, 0.0], &[0.0, 0.0]]), 1e-12), 0);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = real(&[&[1.0, 2.0, 3.0, 4.0], &[2.0, 4.0, 6.0, 8.5], &[0.0, 1.0, 0.0, 1.0]]);
        let red = reduce(&a, 1e-12);
        assert_eq!(red.rank, 3);
        assert_eq!(red.kernel.len(), 1);
        for v in &red.kernel {
            for i in 0..a.rows {
                let s: Cplx = (0..a.cols).map(|j| a.get(i, j) * v[j]).sum();
                assert!(s.norm() < 1e-12);
            }
            assert!(v.iter().all(|z| z.im == 0.0));
        }
    }

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let e1 = vec![Cplx::new(1.0, 0.0), ZERO];
        let v = vec![Cplx::new(3.0, 0.0), ZERO];
        assert!(orthogonalize(std::slice::from_ref(&e1), &v, 1e-10).is_none());
        let w = vec![Cplx::new(1.0, 0.0), Cplx::new(0.0, 2.0)];
        let r = orthogonalize(&[e1], &w, 1e-10).unwrap();
        assert!((r[0]).norm() < 1e-15);
        assert!((r[1] - Cplx::new(0.0, 1.0)).norm() < 1e-15);
    }
}
