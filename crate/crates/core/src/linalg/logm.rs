//! Principal matrix logarithm. The main route diagonalizes in complex
//! arithmetic and takes the principal scalar log of each eigenvalue; when
//! the eigenvector basis is too ill-conditioned for that to be trustworthy,
//! an inverse scaling-and-squaring pass on the complex Schur form is used
//! instead. Either way the result is checked to be real up to tolerance and
//! then truncated to a real matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::complex::ComplexMatrix;
use super::eigen::{complex_schur, eigen_decompose, real_schur};
use super::matrix::RealMatrix;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Above this eigenvector condition number the diagonalization route loses
/// too many digits and the Schur-based fallback takes over.
const BASIS_CONDITION_LIMIT: f64 = 1e8;

/// The square-root stage stops once the triangular factor is within this
/// distance of the identity; the quadrature below is then accurate to well
/// under machine precision.
const ISS_TARGET: f64 = 0.25;

const ISS_MAX_SQRTS: usize = 100;

/// 8-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.525532409916329,
    -0.1834346424956498,
    0.1834346424956498,
    0.525532409916329,
    0.7966664774136267,
    0.9602898564975363,
];
const GL_WEIGHTS: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.362683783378362,
    0.362683783378362,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

/// Distance of an eigenvalue from the closed negative real axis, where the
/// principal logarithm has its branch cut.
pub(crate) fn axis_distance(lambda: Complex64) -> f64 {
    if lambda.re <= 0.0 {
        lambda.im.abs()
    } else {
        lambda.norm()
    }
}

/// Principal square root of an upper triangular complex matrix by the
/// recurrence over superdiagonals. The diagonal entries stay off the
/// branch cut here, so the divisor r_ii + r_jj has positive real part.
fn sqrtm_upper_triangular(t: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = t.nrows();
    let mut r = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        r[(i, i)] = t[(i, i)].sqrt();
    }
    for d in 1..n {
        for i in 0..(n - d) {
            let j = i + d;
            let mut sum = Complex64::new(0.0, 0.0);
            for k in (i + 1)..j {
                sum += r[(i, k)] * r[(k, j)];
            }
            r[(i, j)] = (t[(i, j)] - sum) / (r[(i, i)] + r[(j, j)]);
        }
    }
    r
}

/// log(X) for X near the identity, as the Gauss-Legendre quadrature of
/// the integral representation log(X) = int_0^1 E (I + s E)^{-1} ds with
/// E = X - I. Equivalent to a diagonal Pade approximant; with
/// ||E|| <= 1/4 the truncation error is far below machine precision.
fn log_near_identity(x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = x.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let e = x - &id;
    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    for (node, weight) in GL_NODES.iter().zip(GL_WEIGHTS) {
        let s = 0.5 * (1.0 + node);
        let w = 0.5 * weight;
        let shifted = &id + &e * Complex64::new(s, 0.0);
        let inv = shifted
            .try_inverse()
            .expect("I + sE is nonsingular for ||E|| < 1");
        acc += (&e * inv) * Complex64::new(w, 0.0);
    }
    acc
}

/// Inverse scaling and squaring on the complex Schur factor: repeated
/// principal square roots bring T near the identity, the quadrature log is
/// taken there, and the scaling is undone by doubling.
fn logm_schur_fallback(m: &RealMatrix) -> Result<ComplexMatrix> {
    let schur = real_schur(m)?;
    let (u, t) = complex_schur(&schur);

    let n = m.dim();
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut x = t.as_dmatrix().clone();
    let mut sqrts = 0usize;
    while ComplexMatrix::from_dmatrix(&x - &id).op_norm() > ISS_TARGET {
        if sqrts >= ISS_MAX_SQRTS {
            return Err(Error::ConvergenceFailure {
                max_iterations: ISS_MAX_SQRTS,
            });
        }
        x = sqrtm_upper_triangular(&x);
        sqrts += 1;
    }

    let log_t = log_near_identity(&x) * Complex64::new(2f64.powi(sqrts as i32), 0.0);
    let uh = u.conjugate_transpose();
    Ok(u
        .mul(&ComplexMatrix::from_dmatrix(log_t))
        .mul(&uh))
}

pub fn logm_principal(m: &RealMatrix, tol: &Tolerances) -> Result<RealMatrix> {
    let scale = m.op_norm();
    let dec = eigen_decompose(m, tol.separation)?;

    let threshold = tol.axis * scale;
    for &lambda in &dec.eigenvalues {
        let distance = axis_distance(lambda);
        if distance <= threshold {
            return Err(Error::SpectrumOnClosedNegativeAxis {
                eigenvalue: lambda,
                distance,
                threshold,
            });
        }
    }

    let log_c = if dec.basis_condition <= BASIS_CONDITION_LIMIT {
        let n = m.dim();
        let v = dec.eigenvectors.as_dmatrix();
        let v_inv = dec
            .eigenvectors
            .try_inverse()
            .expect("finite basis condition implies invertible eigenvector matrix");
        let mut scaled = v.clone();
        for (j, lambda) in dec.eigenvalues.iter().enumerate() {
            let log_lambda = lambda.ln();
            for i in 0..n {
                scaled[(i, j)] *= log_lambda;
            }
        }
        ComplexMatrix::from_dmatrix(scaled).mul(&v_inv)
    } else {
        logm_schur_fallback(m)?
    };

    let residue = log_c.max_imag_abs();
    if residue > tol.reality * (1.0 + scale) {
        return Err(Error::IllConditionedBasis {
            condition: dec.basis_condition,
        });
    }

    Ok(log_c.real_part())
}
