//! Small dense-linear-algebra helpers built on real symmetric
//! eigendecompositions.
//!
//! The generators produced by [`crate::fock::hamiltonian`] are real
//! antisymmetric matrices `A`, so `e^A` is real orthogonal. Rather than a
//! complex Hermitian solve of `iA`, we embed `A` in the real symmetric
//! matrix `M = [[0, -A], [A, 0]]`: if `M (u; v) = lambda (u; v)` then
//! `A (u + i v) = -i lambda (u + i v)`, and summing over the complete
//! orthonormal eigenbasis of `M` gives
//!
//! `e^A = 1/2 sum_j [ cos(l_j) (u_j u_j^T + v_j v_j^T)
//!                  + sin(l_j) (v_j u_j^T - u_j v_j^T) ]`.
//!
//! This keeps every propagator computation in real arithmetic.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::LinalgReal;

const MAX_EIGEN_ITERATIONS: usize = 100_000;

fn symmetric_eigen<R: LinalgReal>(m: DMatrix<R>) -> Result<SymmetricEigen<R, nalgebra::Dyn>> {
    let dim = m.nrows();
    SymmetricEigen::try_new(m, <R as num_traits::Float>::epsilon(), MAX_EIGEN_ITERATIONS)
        .ok_or_else(|| {
            Error::numerical(format!(
                "symmetric eigendecomposition of a {dim}x{dim} matrix did not converge"
            ))
        })
}

/// `e^A` for a real antisymmetric `A`, exactly orthogonal up to rounding.
pub fn orthogonal_exp<R: LinalgReal>(a: &DMatrix<R>) -> Result<DMatrix<R>> {
    let b = a.nrows();
    if a.ncols() != b {
        return Err(Error::domain("matrix exponential of a non-square matrix"));
    }
    if b == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let mut m = DMatrix::<R>::zeros(2 * b, 2 * b);
    for i in 0..b {
        for j in 0..b {
            m[(i, b + j)] = -a[(i, j)];
            m[(b + i, j)] = a[(i, j)];
        }
    }
    let eigen = symmetric_eigen(m)?;
    let q = eigen.eigenvectors;
    let top = q.rows(0, b).clone_owned();
    let bot = q.rows(b, b).clone_owned();
    let cos = DVector::<R>::from_iterator(
        2 * b,
        eigen.eigenvalues.iter().map(|l| num_traits::Float::cos(*l)),
    );
    let sin = DVector::<R>::from_iterator(
        2 * b,
        eigen.eigenvalues.iter().map(|l| num_traits::Float::sin(*l)),
    );
    let scale_cols = |m: &DMatrix<R>, d: &DVector<R>| -> DMatrix<R> {
        let mut out = m.clone();
        for j in 0..out.ncols() {
            let mut col = out.column_mut(j);
            col *= d[j];
        }
        out
    };
    let tc = scale_cols(&top, &cos);
    let bc = scale_cols(&bot, &cos);
    let ts = scale_cols(&top, &sin);
    let bs = scale_cols(&bot, &sin);
    let mut u = tc * top.transpose();
    u += bc * bot.transpose();
    u += bs * top.transpose();
    u -= ts * bot.transpose();
    u *= crate::scalar::r::<R>(0.5);
    Ok(u)
}

/// Smallest eigenvalue of the Hermitian matrix `C = X + iY` given its real
/// part `X` (symmetric) and imaginary part `Y` (antisymmetric), via the real
/// symmetric embedding `[[X, -Y], [Y, X]]` whose spectrum is that of `C`
/// doubled.
pub fn hermitian_min_eigenvalue<R: LinalgReal>(x: &DMatrix<R>, y: &DMatrix<R>) -> Result<R> {
    let d = x.nrows();
    if x.ncols() != d || y.nrows() != d || y.ncols() != d {
        return Err(Error::domain("Hermitian parts must be square and same size"));
    }
    if d == 0 {
        return Ok(R::zero());
    }
    let mut m = DMatrix::<R>::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = x[(i, j)];
            m[(d + i, d + j)] = x[(i, j)];
            m[(i, d + j)] = -y[(i, j)];
            m[(d + i, j)] = y[(i, j)];
        }
    }
    let eigen = symmetric_eigen(m)?;
    let mut min = <R as num_traits::Float>::infinity();
    for l in eigen.eigenvalues.iter() {
        if *l < min {
            min = *l;
        }
    }
    Ok(min)
}
