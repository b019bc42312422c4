//! Real symmetric block-tridiagonal operators and a shift-invert Lanczos
//! eigensolver built on their block LU factorisation.

use nalgebra::{DMatrix, DVector, SymmetricEigen, LU};

use crate::error::{Error, Result};

/// Symmetric matrix with dense diagonal blocks D_i and coupling blocks
/// B_i between block rows i and i+1 (the transpose sits below the diagonal).
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTridiagonal {
    pub diag: Vec<DMatrix<f64>>,
    pub upper: Vec<DMatrix<f64>>,
}

impl BlockTridiagonal {
    pub fn new(diag: Vec<DMatrix<f64>>, upper: Vec<DMatrix<f64>>) -> Result<Self> {
        let m = diag.first().map_or(0, |d| d.nrows());
        if m == 0 {
            return Err(Error::Dimension("empty block operator".into()));
        }
        if upper.len() + 1 != diag.len() {
            return Err(Error::Dimension(format!("{} diagonal blocks need {} couplings", diag.len(), diag.len() - 1)));
        }
        if diag.iter().chain(&upper).any(|b| b.nrows() != m || b.ncols() != m) {
            return Err(Error::Dimension(format!("all blocks must be {m}x{m}")));
        }
        Ok(Self { diag, upper })
    }

    pub fn block_size(&self) -> usize {
        self.diag[0].nrows()
    }

    pub fn blocks(&self) -> usize {
        self.diag.len()
    }

    pub fn dim(&self) -> usize {
        self.blocks() * self.block_size()
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        let m = self.block_size();
        let mut y = DVector::zeros(self.dim());
        for i in 0..self.blocks() {
            let xi = x.rows(i * m, m);
            let mut yi = &self.diag[i] * xi;
            if i > 0 {
                yi += self.upper[i - 1].transpose() * x.rows((i - 1) * m, m);
            }
            if i + 1 < self.blocks() {
                yi += &self.upper[i] * x.rows((i + 1) * m, m);
            }
            y.rows_mut(i * m, m).copy_from(&yi);
        }
        y
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let m = self.block_size();
        let mut a = DMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.blocks() {
            a.view_mut((i * m, i * m), (m, m)).copy_from(&self.diag[i]);
            if i + 1 < self.blocks() {
                a.view_mut((i * m, (i + 1) * m), (m, m)).copy_from(&self.upper[i]);
                a.view_mut(((i + 1) * m, i * m), (m, m)).copy_from(&self.upper[i].transpose());
            }
        }
        a
    }

    /// Block LU of A − σI.
    pub fn factor_shifted(&self, sigma: f64) -> Result<ShiftedFactor<'_>> {
        let m = self.block_size();
        let mut schur: Vec<LU<f64, nalgebra::Dyn, nalgebra::Dyn>> = Vec::with_capacity(self.blocks());
        for i in 0..self.blocks() {
            let mut s = &self.diag[i] - DMatrix::identity(m, m) * sigma;
            if i > 0 {
                let b = &self.upper[i - 1];
                let x = schur[i - 1]
                    .solve(b)
                    .ok_or_else(|| Error::Eigensolve(format!("singular Schur block at shift {sigma}")))?;
                s -= b.transpose() * x;
            }
            schur.push(s.lu());
        }
        Ok(ShiftedFactor { op: self, schur })
    }
}

pub struct ShiftedFactor<'a> {
    op: &'a BlockTridiagonal,
    schur: Vec<LU<f64, nalgebra::Dyn, nalgebra::Dyn>>,
}

impl ShiftedFactor<'_> {
    /// x = (A − σI)^{-1} r.
    pub fn solve(&self, r: &DVector<f64>) -> Result<DVector<f64>> {
        let m = self.op.block_size();
        let nb = self.op.blocks();
        let singular = || Error::Eigensolve("singular Schur block".into());
        let mut y: Vec<DVector<f64>> = Vec::with_capacity(nb);
        for i in 0..nb {
            let mut yi = r.rows(i * m, m).into_owned();
            if i > 0 {
                let z = self.schur[i - 1].solve(&y[i - 1]).ok_or_else(singular)?;
                yi -= self.op.upper[i - 1].transpose() * z;
            }
            y.push(yi);
        }
        let mut x = DVector::zeros(nb * m);
        let mut next: Option<DVector<f64>> = None;
        for i in (0..nb).rev() {
            let mut rhs = y[i].clone();
            if let Some(xn) = &next {
                rhs -= &self.op.upper[i] * xn;
            }
            let xi = self.schur[i].solve(&rhs).ok_or_else(singular)?;
            x.rows_mut(i * m, m).copy_from(&xi);
            next = Some(xi);
        }
        Ok(x)
    }
}

/// Eigenpair with its residual ‖Ax − λx‖ / ‖x‖.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: DVector<f64>,
    pub residual: f64,
}

/// The `k` eigenpairs of A closest to σ, by Lanczos iteration with full
/// reorthogonalisation on (A − σI)^{-1}. The Krylov space grows until all
/// `k` residuals fall below `tol` or the full dimension is reached.
pub fn shift_invert_lanczos(a: &BlockTridiagonal, sigma: f64, k: usize, tol: f64) -> Result<Vec<EigenPair>> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::Dimension(format!("cannot extract {k} eigenpairs from dimension {n}")));
    }
    let fac = a.factor_shifted(sigma)?;
    let mut q: Vec<DVector<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.5 * (1.3 * i as f64).sin() + 0.25 * (0.7 * (i * i) as f64).cos());
    v /= v.norm();
    let mut target = (2 * k + 20).min(n);
    let mut exhausted = false;
    loop {
        while q.len() < target {
            let mut w = fac.solve(&v)?;
            let alpha = w.dot(&v);
            // two passes of classical Gram-Schmidt against the whole basis
            q.push(v.clone());
            for _ in 0..2 {
                for qi in &q {
                    let c = qi.dot(&w);
                    w.axpy(-c, qi, 1.0);
                }
            }
            alphas.push(alpha);
            let beta = w.norm();
            if q.len() == n || beta < 1e-14 {
                exhausted = true;
                break;
            }
            betas.push(beta);
            v = w / beta;
        }
        let m = q.len();
        let mut t = DMatrix::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alphas[i];
            if i + 1 < m {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].abs().total_cmp(&eig.eigenvalues[i].abs()));
        let take = k.min(m);
        let mut pairs = Vec::with_capacity(take);
        for &idx in &order[..take] {
            let theta = eig.eigenvalues[idx];
            let value = sigma + 1.0 / theta;
            let s = eig.eigenvectors.column(idx);
            let mut x = DVector::zeros(n);
            for (qi, si) in q.iter().zip(s.iter()) {
                x.axpy(*si, qi, 1.0);
            }
            x /= x.norm();
            let residual = (a.apply(&x) - &x * value).norm();
            pairs.push(EigenPair { value, vector: x, residual });
        }
        let converged = pairs.len() == k && pairs.iter().all(|p| p.residual < tol);
        if converged || exhausted {
            if pairs.len() < k {
                return Err(Error::Eigensolve(format!("Krylov space exhausted at {m} vectors")));
            }
            if !converged {
                let worst = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
                return Err(Error::NonConvergence(format!("Lanczos residual {worst:e} above {tol:e}")));
            }
            pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
            return Ok(pairs);
        }
        target = (target * 2).min(n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(blocks: usize, m: usize) -> BlockTridiagonal {
        let diag = (0..blocks)
            .map(|b| {
                DMatrix::from_fn(m, m, |i, j| match i.abs_diff(j) {
                    0 => 2.0 + b as f64 + 0.1 * i as f64,
                    1 => -1.0,
                    _ => 0.0,
                })
            })
            .collect();
        let upper = (0..blocks - 1).map(|b| DMatrix::from_fn(m, m, |i, j| if i == j { 0.2 + 0.01 * (b + i) as f64 } else { 0.0 })).collect();
        BlockTridiagonal::new(diag, upper).unwrap()
    }

    #[test]
    fn apply_matches_dense() {
        let a = sample(4, 5);
        let x = DVector::from_fn(20, |i, _| (i as f64).cos());
        assert!((a.apply(&x) - a.to_dense() * &x).norm() < 1e-13);
        let d = a.to_dense();
        assert_eq!(d.clone(), d.transpose());
    }

    #[test]
    fn shifted_solve_inverts() {
        let a = sample(5, 6);
        let fac = a.factor_shifted(0.37).unwrap();
        let r = DVector::from_fn(30, |i, _| (0.3 * i as f64).sin());
        let x = fac.solve(&r).unwrap();
        assert!((a.apply(&x) - &x * 0.37 - &r).norm() < 1e-12);
    }

    #[test]
    fn lanczos_matches_dense_eigensolve() {
        let a = sample(5, 8);
        let dense = SymmetricEigen::new(a.to_dense());
        let sigma = 3.3;
        let pairs = shift_invert_lanczos(&a, sigma, 6, 1e-10).unwrap();
        let mut want: Vec<f64> = dense.eigenvalues.iter().copied().collect();
        want.sort_by(|x, y| (x - sigma).abs().total_cmp(&(y - sigma).abs()));
        let mut want: Vec<f64> = want[..6].to_vec();
        want.sort_by(f64::total_cmp);
        for (p, w) in pairs.iter().zip(&want) {
            assert!((p.value - w).abs() < 1e-10, "{} vs {w}", p.value);
            assert!(p.residual < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(BlockTridiagonal::new(vec![DMatrix::zeros(2, 2)], vec![DMatrix::zeros(2, 2)]).is_err());
        assert!(shift_invert_lanczos(&sample(2, 2), 0.0, 5, 1e-8).is_err());
    }
}
