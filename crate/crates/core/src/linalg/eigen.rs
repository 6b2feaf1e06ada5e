//! Dense nonsymmetric eigensolver: orthogonal reduction to Hessenberg form
//! followed by the shifted QR iteration, in the classic EISPACK/Jama
//! formulation. The Schur pair is kept because the matrix logarithm falls
//! back to it when the eigenvector basis is too ill-conditioned.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::complex::ComplexMatrix;
use super::matrix::RealMatrix;
use crate::error::{Error, Result};

/// Real Schur form A = Q T Q^T with T quasi-triangular: 1x1 blocks for real
/// eigenvalues and 2x2 blocks for complex conjugate pairs. `re`/`im` list the
/// eigenvalues in diagonal order; a pair occupies consecutive indices with
/// im[i] > 0 followed by its conjugate.
#[derive(Debug, Clone)]
pub(crate) struct SchurForm {
    pub t: DMatrix<f64>,
    pub q: DMatrix<f64>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

/// Spectral data of a real square matrix.
///
/// Eigenvalues are sorted by descending modulus, ties broken by ascending
/// argument, so conjugate pairs always appear with the negative-argument
/// member first. Eigenvector columns follow the same order and are
/// normalized so the largest-modulus entry of each column is exactly 1.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: ComplexMatrix,
    /// Infinity-norm condition number of the eigenvector matrix, or
    /// infinity when it is numerically singular.
    pub basis_condition: f64,
    /// True when all pairwise eigenvalue gaps exceed the separation
    /// tolerance scaled by the matrix norm.
    pub is_distinct: bool,
}

/// QR sweeps are cheap and convergence is normally a handful of sweeps per
/// eigenvalue; the cap only exists to turn pathological stalls into a typed
/// error instead of a hang.
fn iteration_cap(n: usize) -> usize {
    100 * n * n
}

/// Householder reduction to upper Hessenberg form, accumulating the
/// orthogonal transformation in `v`. The reflector vectors are stashed in
/// the zeroed-out part of `h` below the subdiagonal, as in the original.
fn orthes(h: &mut DMatrix<f64>, v: &mut DMatrix<f64>) {
    let n = h.nrows();
    let low = 0;
    let high = n - 1;
    let mut ort = vec![0.0; n];

    for m in (low + 1)..high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[(i, m - 1)].abs();
        }
        if scale == 0.0 {
            continue;
        }

        // Householder vector for column m-1.
        let mut hh = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hh += ort[i] * ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] -= g;

        // Apply I - (u*u')/h from the left and right.
        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[(i, j)];
            }
            f /= hh;
            for i in m..=high {
                h[(i, j)] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[(i, j)];
            }
            f /= hh;
            for j in m..=high {
                h[(i, j)] -= f * ort[j];
            }
        }
        ort[m] *= scale;
        h[(m, m - 1)] = scale * g;
    }

    // Accumulate the transformations.
    for m in ((low + 1)..high).rev() {
        if h[(m, m - 1)] != 0.0 {
            for i in (m + 1)..=high {
                ort[i] = h[(i, m - 1)];
            }
            for j in m..=high {
                let mut g = 0.0;
                for i in m..=high {
                    g += ort[i] * v[(i, j)];
                }
                // Double division avoids possible underflow.
                g = (g / ort[m]) / h[(m, m - 1)];
                for i in m..=high {
                    v[(i, j)] += g * ort[i];
                }
            }
        }
    }
}

/// Complex scalar division, (xr + i*xi) / (yr + i*yi), Smith's algorithm.
fn cdiv(xr: f64, xi: f64, yr: f64, yi: f64) -> (f64, f64) {
    if yr.abs() > yi.abs() {
        let r = yi / yr;
        let d = yr + r * yi;
        ((xr + r * xi) / d, (xi - r * xr) / d)
    } else {
        let r = yr / yi;
        let d = yi + r * yr;
        ((r * xr + xi) / d, (r * xi - xr) / d)
    }
}

/// Francis double-shift QR iteration on an upper Hessenberg matrix,
/// accumulating transformations in `v`. On success `h` holds the
/// quasi-triangular factor (with stale reflector data still parked below
/// the subdiagonal) and `d`/`e` the eigenvalues in diagonal order.
fn francis(
    h: &mut DMatrix<f64>,
    v: &mut DMatrix<f64>,
    d: &mut [f64],
    e: &mut [f64],
    cap: usize,
) -> Result<()> {
    let nn = h.nrows();
    let mut n = nn - 1;
    let low = 0;
    let high = nn - 1;
    let eps = f64::EPSILON;
    let mut exshift = 0.0;
    let (mut p, mut q, mut r, mut s, mut z);
    let (mut x, mut y, mut w);

    let mut norm = 0.0;
    for i in 0..nn {
        let jstart = i.saturating_sub(1);
        for j in jstart..nn {
            norm += h[(i, j)].abs();
        }
    }
    // Zero Hessenberg part: already triangular, and the deflation test
    // below can never fire with norm == 0.
    if norm == 0.0 {
        for i in 0..nn {
            d[i] = 0.0;
            e[i] = 0.0;
        }
        return Ok(());
    }

    let mut iter = 0usize;
    let mut total_sweeps = 0usize;

    loop {
        // Look for a single small subdiagonal element.
        let mut l = n;
        while l > low {
            s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One root found.
            h[(n, n)] += exshift;
            d[n] = h[(n, n)];
            e[n] = 0.0;
            if n == low {
                break;
            }
            n -= 1;
            iter = 0;
        } else if l + 1 == n {
            // Two roots found.
            w = h[(n, n - 1)] * h[(n - 1, n)];
            p = (h[(n - 1, n - 1)] - h[(n, n)]) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            h[(n, n)] += exshift;
            h[(n - 1, n - 1)] += exshift;
            x = h[(n, n)];

            if q >= 0.0 {
                // Real pair.
                z = if p >= 0.0 { p + z } else { p - z };
                d[n - 1] = x + z;
                d[n] = d[n - 1];
                if z != 0.0 {
                    d[n] = x - w / z;
                }
                e[n - 1] = 0.0;
                e[n] = 0.0;
                x = h[(n, n - 1)];
                s = x.abs() + z.abs();
                p = x / s;
                q = z / s;
                r = (p * p + q * q).sqrt();
                p /= r;
                q /= r;
                // Row modification.
                for j in (n - 1)..nn {
                    z = h[(n - 1, j)];
                    h[(n - 1, j)] = q * z + p * h[(n, j)];
                    h[(n, j)] = q * h[(n, j)] - p * z;
                }
                // Column modification.
                for i in 0..=n {
                    z = h[(i, n - 1)];
                    h[(i, n - 1)] = q * z + p * h[(i, n)];
                    h[(i, n)] = q * h[(i, n)] - p * z;
                }
                // Accumulate transformations.
                for i in low..=high {
                    z = v[(i, n - 1)];
                    v[(i, n - 1)] = q * z + p * v[(i, n)];
                    v[(i, n)] = q * v[(i, n)] - p * z;
                }
            } else {
                // Complex pair.
                d[n - 1] = x + p;
                d[n] = x + p;
                e[n - 1] = z;
                e[n] = -z;
            }
            iter = 0;
            if n >= low + 2 {
                n -= 2;
            } else {
                break;
            }
        } else {
            // No convergence yet: one QR sweep.
            x = h[(n, n)];
            y = 0.0;
            w = 0.0;
            if l < n {
                y = h[(n - 1, n - 1)];
                w = h[(n, n - 1)] * h[(n - 1, n)];
            }

            // Wilkinson's original ad hoc shift.
            if iter == 10 || iter == 20 {
                exshift += x;
                for i in low..=n {
                    h[(i, i)] -= x;
                }
                s = h[(n, n - 1)].abs() + h[(n - 1, n - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }

            // MATLAB's new ad hoc shift.
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        h[(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = 0.964;
                    w = 0.964;
                }
            }

            total_sweeps += 1;
            if total_sweeps > cap {
                return Err(Error::ConvergenceFailure {
                    max_iterations: cap,
                });
            }
            iter += 1;

            // Look for two consecutive small subdiagonal elements.
            let mut m = n - 2;
            loop {
                z = h[(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - r - s;
                r = h[(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps
                        * (p.abs()
                            * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }

            for i in (m + 2)..=n {
                h[(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }

            // Double QR step involving rows l..n and columns m..n.
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }

                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[(k, k - 1)] = -s * x;
                    } else if l != m {
                        h[(k, k - 1)] = -h[(k, k - 1)];
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    // Row modification.
                    for j in k..nn {
                        p = h[(k, j)] + q * h[(k + 1, j)];
                        if notlast {
                            p += r * h[(k + 2, j)];
                            h[(k + 2, j)] -= p * z;
                        }
                        h[(k, j)] -= p * x;
                        h[(k + 1, j)] -= p * y;
                    }

                    // Column modification.
                    let upper = if n < k + 3 { n } else { k + 3 };
                    for i in 0..=upper {
                        p = x * h[(i, k)] + y * h[(i, k + 1)];
                        if notlast {
                            p += z * h[(i, k + 2)];
                            h[(i, k + 2)] -= p * r;
                        }
                        h[(i, k)] -= p;
                        h[(i, k + 1)] -= p * q;
                    }

                    // Accumulate transformations.
                    for i in low..=high {
                        p = x * v[(i, k)] + y * v[(i, k + 1)];
                        if notlast {
                            p += z * v[(i, k + 2)];
                            v[(i, k + 2)] -= p * r;
                        }
                        v[(i, k)] -= p;
                        v[(i, k + 1)] -= p * q;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Reduces `m` to real Schur form. The returned `t` has exact zeros below
/// the quasi-triangular structure (converged subdiagonals and reflector
/// leftovers are cleared).
pub(crate) fn real_schur(m: &RealMatrix) -> Result<SchurForm> {
    let nn = m.dim();
    let mut h = m.as_dmatrix().clone();
    let mut v = DMatrix::identity(nn, nn);
    let mut d = vec![0.0; nn];
    let mut e = vec![0.0; nn];

    if nn == 1 {
        d[0] = h[(0, 0)];
        return Ok(SchurForm {
            t: h,
            q: v,
            re: d,
            im: e,
        });
    }

    if nn > 2 {
        orthes(&mut h, &mut v);
    }
    francis(&mut h, &mut v, &mut d, &mut e, iteration_cap(nn))?;

    // Clear everything below the block structure so t is exactly
    // quasi-triangular: kept subdiagonal entries are only those inside a
    // complex-pair block (marked by im > 0 at the first index).
    for i in 1..nn {
        for j in 0..i.saturating_sub(1) {
            h[(i, j)] = 0.0;
        }
        if e[i - 1] <= 0.0 {
            h[(i, i - 1)] = 0.0;
        }
    }

    Ok(SchurForm {
        t: h,
        q: v,
        re: d,
        im: e,
    })
}

/// Eigenvector computation by back substitution on the quasi-triangular
/// factor, then back transformation. Returns the complex eigenvector
/// matrix whose columns match the `re`/`im` ordering of the Schur form.
fn eigenvectors(schur: &SchurForm) -> DMatrix<Complex64> {
    let nn = schur.t.nrows();
    let mut h = schur.t.clone();
    let mut v = schur.q.clone();
    let d: Vec<f64> = schur.re.clone();
    let e: Vec<f64> = schur.im.clone();
    let eps = f64::EPSILON;
    let low = 0;
    let high = nn - 1;

    let mut norm = 0.0;
    for i in 0..nn {
        let jstart = i.saturating_sub(1);
        for j in jstart..nn {
            norm += h[(i, j)].abs();
        }
    }

    if norm != 0.0 {
        let (mut p, mut q, mut r, mut s, mut z, mut w, mut x, mut y);
        r = 0.0;
        s = 0.0;
        z = 0.0;

        for n in (0..nn).rev() {
            p = d[n];
            q = e[n];

            if q == 0.0 {
                // Real vector.
                let mut l = n;
                h[(n, n)] = 1.0;
                for i in (0..n).rev() {
                    w = h[(i, i)] - p;
                    r = 0.0;
                    for j in l..=n {
                        r += h[(i, j)] * h[(j, n)];
                    }
                    if e[i] < 0.0 {
                        z = w;
                        s = r;
                    } else {
                        l = i;
                        if e[i] == 0.0 {
                            h[(i, n)] = if w != 0.0 { -r / w } else { -r / (eps * norm) };
                        } else {
                            // Solve real equations.
                            x = h[(i, i + 1)];
                            y = h[(i + 1, i)];
                            q = (d[i] - p) * (d[i] - p) + e[i] * e[i];
                            let t = (x * s - z * r) / q;
                            h[(i, n)] = t;
                            h[(i + 1, n)] = if x.abs() > z.abs() {
                                (-r - w * t) / x
                            } else {
                                (-s - y * t) / z
                            };
                        }

                        // Overflow control.
                        let t = h[(i, n)].abs();
                        if (eps * t) * t > 1.0 {
                            for j in i..=n {
                                h[(j, n)] /= t;
                            }
                        }
                    }
                }
            } else if q < 0.0 {
                // Complex vector, stored in columns n-1 (real part) and n
                // (imaginary part).
                let mut l = n - 1;

                if h[(n, n - 1)].abs() > h[(n - 1, n)].abs() {
                    h[(n - 1, n - 1)] = q / h[(n, n - 1)];
                    h[(n - 1, n)] = -(h[(n, n)] - p) / h[(n, n - 1)];
                } else {
                    let (cr, ci) = cdiv(0.0, -h[(n - 1, n)], h[(n - 1, n - 1)] - p, q);
                    h[(n - 1, n - 1)] = cr;
                    h[(n - 1, n)] = ci;
                }
                h[(n, n - 1)] = 0.0;
                h[(n, n)] = 1.0;
                for i in (0..n.saturating_sub(1)).rev() {
                    let mut ra = 0.0;
                    let mut sa = 0.0;
                    for j in l..=n {
                        ra += h[(i, j)] * h[(j, n - 1)];
                        sa += h[(i, j)] * h[(j, n)];
                    }
                    w = h[(i, i)] - p;

                    if e[i] < 0.0 {
                        z = w;
                        r = ra;
                        s = sa;
                    } else {
                        l = i;
                        if e[i] == 0.0 {
                            let (cr, ci) = cdiv(-ra, -sa, w, q);
                            h[(i, n - 1)] = cr;
                            h[(i, n)] = ci;
                        } else {
                            // Solve complex equations.
                            x = h[(i, i + 1)];
                            y = h[(i + 1, i)];
                            let mut vr =
                                (d[i] - p) * (d[i] - p) + e[i] * e[i] - q * q;
                            let vi = (d[i] - p) * 2.0 * q;
                            if vr == 0.0 && vi == 0.0 {
                                vr = eps
                                    * norm
                                    * (w.abs() + q.abs() + x.abs() + y.abs() + z.abs());
                            }
                            let (cr, ci) = cdiv(
                                x * r - z * ra + q * sa,
                                x * s - z * sa - q * ra,
                                vr,
                                vi,
                            );
                            h[(i, n - 1)] = cr;
                            h[(i, n)] = ci;
                            if x.abs() > z.abs() + q.abs() {
                                h[(i + 1, n - 1)] =
                                    (-ra - w * h[(i, n - 1)] + q * h[(i, n)]) / x;
                                h[(i + 1, n)] =
                                    (-sa - w * h[(i, n)] - q * h[(i, n - 1)]) / x;
                            } else {
                                let (cr, ci) = cdiv(
                                    -r - y * h[(i, n - 1)],
                                    -s - y * h[(i, n)],
                                    z,
                                    q,
                                );
                                h[(i + 1, n - 1)] = cr;
                                h[(i + 1, n)] = ci;
                            }
                        }

                        // Overflow control.
                        let t = h[(i, n - 1)].abs().max(h[(i, n)].abs());
                        if (eps * t) * t > 1.0 {
                            for j in i..=n {
                                h[(j, n - 1)] /= t;
                                h[(j, n)] /= t;
                            }
                        }
                    }
                }
            }
        }

        // Back transformation to get eigenvectors of the original matrix.
        for j in (0..nn).rev() {
            for i in low..=high {
                z = 0.0;
                let upper = if j < high { j } else { high };
                for k in low..=upper {
                    z += v[(i, k)] * h[(k, j)];
                }
                v[(i, j)] = z;
            }
        }
    }

    // Assemble complex columns: a conjugate pair stores the real part in the
    // first column and the imaginary part in the second.
    let mut vectors = DMatrix::zeros(nn, nn);
    let mut j = 0;
    while j < nn {
        if e[j] > 0.0 {
            for i in 0..nn {
                vectors[(i, j)] = Complex64::new(v[(i, j)], v[(i, j + 1)]);
                vectors[(i, j + 1)] = Complex64::new(v[(i, j)], -v[(i, j + 1)]);
            }
            j += 2;
        } else {
            for i in 0..nn {
                vectors[(i, j)] = Complex64::new(v[(i, j)], 0.0);
            }
            j += 1;
        }
    }
    vectors
}

/// Converts a real Schur form to a complex Schur form A = U T U^H with T
/// upper triangular, by rotating each 2x2 conjugate-pair block with a
/// unitary 2x2 transform.
pub(crate) fn complex_schur(schur: &SchurForm) -> (ComplexMatrix, ComplexMatrix) {
    let nn = schur.t.nrows();
    let mut t = DMatrix::from_fn(nn, nn, |i, j| Complex64::new(schur.t[(i, j)], 0.0));
    let mut u = DMatrix::from_fn(nn, nn, |i, j| Complex64::new(schur.q[(i, j)], 0.0));

    let mut i = 0;
    while i < nn {
        if schur.im[i] > 0.0 {
            // Block [[a, b], [c, d]] with eigenvalue lambda = re + i*im.
            let lambda = Complex64::new(schur.re[i], schur.im[i]);
            let a = t[(i, i)];
            let b = t[(i, i + 1)];
            let c = t[(i + 1, i)];
            let d = t[(i + 1, i + 1)];
            // Eigenvector of the block for lambda; c is nonzero in an
            // unreduced pair block, but prefer the larger pivot.
            let (v0, v1) = if b.norm() >= c.norm() {
                (b, lambda - a)
            } else {
                (lambda - d, c)
            };
            let nv = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
            let v0 = v0 / nv;
            let v1 = v1 / nv;
            // Unitary [v w] with w orthogonal to v.
            let w0 = -v1.conj();
            let w1 = v0.conj();

            // T <- U2^H T U2 on rows/columns i, i+1; U <- U U2.
            for j in 0..nn {
                let x = t[(i, j)];
                let y = t[(i + 1, j)];
                t[(i, j)] = v0.conj() * x + v1.conj() * y;
                t[(i + 1, j)] = w0.conj() * x + w1.conj() * y;
            }
            for k in 0..nn {
                let x = t[(k, i)];
                let y = t[(k, i + 1)];
                t[(k, i)] = x * v0 + y * v1;
                t[(k, i + 1)] = x * w0 + y * w1;
            }
            for k in 0..nn {
                let x = u[(k, i)];
                let y = u[(k, i + 1)];
                u[(k, i)] = x * v0 + y * v1;
                u[(k, i + 1)] = x * w0 + y * w1;
            }
            t[(i + 1, i)] = Complex64::new(0.0, 0.0);
            i += 2;
        } else {
            i += 1;
        }
    }

    (
        ComplexMatrix::from_dmatrix(u),
        ComplexMatrix::from_dmatrix(t),
    )
}

/// Sort order: descending modulus, then ascending argument. Negative zero
/// imaginary parts are canonicalized first so real eigenvalues sort
/// consistently.
fn sort_keys(re: f64, im: f64) -> (f64, f64) {
    let im = if im == 0.0 { 0.0 } else { im };
    let modulus = (re * re + im * im).sqrt();
    (modulus, im.atan2(re))
}

/// Full spectral decomposition with deterministic ordering and
/// normalization. `separation` is the relative gap below which two
/// eigenvalues are considered repeated.
pub fn eigen_decompose(m: &RealMatrix, separation: f64) -> Result<SpectralDecomposition> {
    let n = m.dim();
    let schur = real_schur(m)?;
    let raw_vectors = eigenvectors(&schur);

    let mut order: Vec<usize> = (0..n).collect();
    let keys: Vec<(f64, f64)> = (0..n)
        .map(|i| sort_keys(schur.re[i], schur.im[i]))
        .collect();
    order.sort_by(|&a, &b| {
        keys[b]
            .0
            .partial_cmp(&keys[a].0)
            .unwrap()
            .then(keys[a].1.partial_cmp(&keys[b].1).unwrap())
    });

    let eigenvalues: Vec<Complex64> = order
        .iter()
        .map(|&i| {
            let im = if schur.im[i] == 0.0 { 0.0 } else { schur.im[i] };
            Complex64::new(schur.re[i], im)
        })
        .collect();

    // Permute columns, then normalize each so its largest-modulus entry is
    // exactly 1. Conjugate columns are rebuilt from their partner so the
    // pairing stays bit-exact after normalization.
    let mut vectors: DMatrix<Complex64> = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = raw_vectors[(i, src)];
        }
    }
    let mut normalized: DMatrix<Complex64> = DMatrix::zeros(n, n);
    let mut done = vec![false; n];
    for j in 0..n {
        if done[j] {
            continue;
        }
        let mut pivot_row = 0;
        let mut pivot_norm = -1.0;
        for i in 0..n {
            let nm = vectors[(i, j)].norm();
            if nm > pivot_norm {
                pivot_norm = nm;
                pivot_row = i;
            }
        }
        let pivot = vectors[(pivot_row, j)];
        if pivot.norm() > 0.0 {
            for i in 0..n {
                normalized[(i, j)] = vectors[(i, j)] / pivot;
            }
            normalized[(pivot_row, j)] = Complex64::new(1.0, 0.0);
        }
        done[j] = true;

        // Locate the conjugate partner column, if any, and mirror it.
        if eigenvalues[j].im != 0.0 {
            let conj = eigenvalues[j].conj();
            for k in 0..n {
                if !done[k] && eigenvalues[k] == conj {
                    for i in 0..n {
                        normalized[(i, k)] = normalized[(i, j)].conj();
                    }
                    done[k] = true;
                    break;
                }
            }
        }
    }

    let eigenvectors = ComplexMatrix::from_dmatrix(normalized);
    let basis_condition = match eigenvectors.try_inverse() {
        Some(inv) => eigenvectors.op_norm() * inv.op_norm(),
        None => f64::INFINITY,
    };

    let scale = m.op_norm();
    let mut is_distinct = true;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            if (eigenvalues[i] - eigenvalues[j]).norm() <= separation * scale {
                is_distinct = false;
                break 'outer;
            }
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        basis_condition,
        is_distinct,
    })
}
