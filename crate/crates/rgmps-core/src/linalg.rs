//! Dense complex linear algebra for small matrices.
//!
//! Everything in this toolkit operates on matrices no larger than a few
//! dozen rows (blocked tensors are 16×4, two-site MPS splits top out around
//! 64×64), so the kernels here are hand-rolled Jacobi-type algorithms:
//! one-sided Jacobi for the SVD and cyclic Jacobi for Hermitian
//! eigendecomposition. Both are unconditionally stable, dependency-free,
//! and — crucially for reproducible circuit emission — fully deterministic:
//! no pivoting heuristics, no platform-dependent BLAS.

use crate::error::{Error, Result};
use crate::math;
use alloc::{vec, vec::Vec};
use num_complex::Complex64 as C64;

/// Convergence threshold for Jacobi sweeps, relative to column/row scale.
const JACOBI_TOL: f64 = 1e-14;
/// Hard cap on Jacobi sweeps; reached only on pathological input.
const MAX_SWEEPS: usize = 128;

/// Complex matrix in row-major storage.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Build from a function of (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Build from a row-major slice of entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[C64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        CMat { rows, cols, data: entries.to_vec() }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at (row, col).
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    /// Set entry at (row, col).
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.at(r, c) + a * rhs.at(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self.at(r, c) * v[c];
            }
            out[r] = acc;
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
    }

    /// Plain transpose.
    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r))
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).conj())
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + rhs.at(r, c))
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - rhs.at(r, c))
    }

    /// Scalar multiple.
    pub fn scaled(&self, s: C64) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.at(r1, c1);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, a * rhs.at(r2, c2));
                    }
                }
            }
        }
        out
    }

    /// Trace (square matrices).
    pub fn trace(&self) -> C64 {
        assert_eq!(self.rows, self.cols, "trace needs a square matrix");
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn norm_f(&self) -> f64 {
        math::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from another matrix.
    pub fn max_abs_diff(&self, rhs: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Deviation of `self† · self` from the identity — isometry defect.
    pub fn isometry_defect(&self) -> f64 {
        self.dagger().mul(self).max_abs_diff(&CMat::identity(self.cols))
    }

    /// Extract a column as a vector.
    pub fn col(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }
}

impl core::fmt::Debug for CMat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.at(r, c);
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Singular value decomposition `a = u · diag(s) · v†`.
///
/// For an m×n input with m ≥ n: `u` is m×n with orthonormal columns,
/// `s` holds n singular values in descending order, and `v` is n×n unitary.
/// Columns of `u` belonging to zero singular values are completed
/// deterministically (Gram–Schmidt against the computed columns, scanning
/// computational basis vectors in lexicographic order).
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

impl Svd {
    /// `u · diag(s) · v†`, for verification.
    pub fn reconstruct(&self) -> CMat {
        let n = self.s.len();
        let mut us = self.u.clone();
        for c in 0..n {
            for r in 0..us.rows() {
                us.set(r, c, us.at(r, c) * self.s[c]);
            }
        }
        us.mul(&self.v.dagger())
    }
}

/// One-sided Jacobi SVD.
///
/// Rotates column pairs of a working copy until all pairs are orthogonal;
/// the accumulated rotations form `v`, the normalized columns form `u`.
pub fn svd(a: &CMat) -> Result<Svd> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::Shape("svd expects rows >= cols"));
    }
    let mut w = a.clone();
    let mut v = CMat::identity(n);
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        // Columns whose norm is negligible against the largest column are
        // numerically null: their residue is roundoff noise that can never
        // be orthogonalized relative to its own magnitude, so pairs
        // touching them are skipped rather than churned forever.
        let mut maxsq = 0.0f64;
        for c in 0..n {
            let nsq: f64 = (0..m).map(|r| w.at(r, c).norm_sqr()).sum();
            maxsq = maxsq.max(nsq);
        }
        let nullsq = maxsq * 1e-30;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                // Gram data for the column pair.
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = C64::new(0.0, 0.0);
                for r in 0..m {
                    let cp = w.at(r, p);
                    let cq = w.at(r, q);
                    app += cp.norm_sqr();
                    aqq += cq.norm_sqr();
                    apq += cp.conj() * cq;
                }
                let scale = math::sqrt(app * aqq);
                if app <= nullsq
                    || aqq <= nullsq
                    || scale <= f64::MIN_POSITIVE
                    || apq.norm() <= JACOBI_TOL * scale
                {
                    continue;
                }
                off = off.max(apq.norm() / scale);
                let habs = apq.norm();
                let phase = apq / habs; // e^{i phi}
                let tau = (aqq - app) / (2.0 * habs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + math::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                // Columns [cp cq] <- [cp cq] · R with
                // R = [[c, s], [-s·conj(phase), c·conj(phase)]].
                let r10 = -phase.conj() * s;
                let r11 = phase.conj() * c;
                for r in 0..m {
                    let cp = w.at(r, p);
                    let cq = w.at(r, q);
                    w.set(r, p, cp * c + cq * r10);
                    w.set(r, q, cp * s + cq * r11);
                }
                for r in 0..n {
                    let vp = v.at(r, p);
                    let vq = v.at(r, q);
                    v.set(r, p, vp * c + vq * r10);
                    v.set(r, q, vp * s + vq * r11);
                }
            }
        }
        if off <= JACOBI_TOL {
            converged = true;
            break;
        }
    }
    if !converged && n > 1 {
        // A final check: sweeps may exit exactly at the tolerance boundary.
        // Anything still rotating after MAX_SWEEPS is pathological.
        return Err(Error::Numerical("one-sided Jacobi SVD did not converge"));
    }

    // Column norms are the singular values; sort descending (stable).
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|c| math::sqrt((0..m).map(|r| w.at(r, c).norm_sqr()).sum()))
        .collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap().then(i.cmp(&j)));

    let mut s = Vec::with_capacity(n);
    let mut u = CMat::zeros(m, n);
    let mut vs = CMat::zeros(n, n);
    let smax = order.first().map(|&i| norms[i]).unwrap_or(0.0);
    let mut pending_completion = Vec::new();
    for (new_c, &old_c) in order.iter().enumerate() {
        let sigma = norms[old_c];
        s.push(sigma);
        for r in 0..n {
            vs.set(r, new_c, v.at(r, old_c));
        }
        if sigma > smax * 1e-15 && sigma > f64::MIN_POSITIVE {
            for r in 0..m {
                u.set(r, new_c, w.at(r, old_c) / sigma);
            }
        } else {
            pending_completion.push(new_c);
        }
    }
    // Deterministic completion of null columns of u.
    for &c in &pending_completion {
        let mut found = false;
        for basis in 0..m {
            let mut cand = vec![C64::new(0.0, 0.0); m];
            cand[basis] = C64::new(1.0, 0.0);
            for uc in 0..n {
                if pending_completion.contains(&uc) && uc >= c {
                    continue;
                }
                let overlap: C64 = (0..m).map(|r| u.at(r, uc).conj() * cand[r]).sum();
                for r in 0..m {
                    let v = cand[r] - overlap * u.at(r, uc);
                    cand[r] = v;
                }
            }
            let nrm = math::sqrt(cand.iter().map(|z| z.norm_sqr()).sum());
            if nrm > 0.5 {
                for r in 0..m {
                    u.set(r, c, cand[r] / nrm);
                }
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Numerical("could not complete null column of U"));
        }
    }
    Ok(Svd { u, s, v: vs })
}

/// Hermitian eigendecomposition `a = u · diag(vals) · u†`.
///
/// Returns eigenvalues in ascending order with the matching unitary of
/// eigenvectors in the columns of `u`. The input must be Hermitian; only its
/// lower triangle is trusted for the diagnostic check, the iteration itself
/// symmetrizes implicitly through two-sided rotations.
pub fn eigh(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape("eigh needs a square matrix"));
    }
    let mut b = a.clone();
    let mut u = CMat::identity(n);
    let mut converged = n < 2;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let h = b.at(p, q);
                let scale = math::fabs(b.at(p, p).re) + math::fabs(b.at(q, q).re);
                if h.norm() <= JACOBI_TOL * scale.max(1e-300) {
                    continue;
                }
                off = off.max(h.norm() / scale.max(f64::MIN_POSITIVE));
                let habs = h.norm();
                let phase = h / habs;
                let tau = (b.at(q, q).re - b.at(p, p).re) / (2.0 * habs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + math::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                // R = [[c, s], [-s·conj(phase), c·conj(phase)]] acting on (p, q).
                let r10 = -phase.conj() * s;
                let r11 = phase.conj() * c;
                // B <- R† B R: columns, then rows.
                for r in 0..n {
                    let bp = b.at(r, p);
                    let bq = b.at(r, q);
                    b.set(r, p, bp * c + bq * r10);
                    b.set(r, q, bp * s + bq * r11);
                }
                for col in 0..n {
                    let bp = b.at(p, col);
                    let bq = b.at(q, col);
                    b.set(p, col, bp * c + bq * r10.conj());
                    b.set(q, col, bp * s + bq * r11.conj());
                }
                for r in 0..n {
                    let up = u.at(r, p);
                    let uq = u.at(r, q);
                    u.set(r, p, up * c + uq * r10);
                    u.set(r, q, up * s + uq * r11);
                }
            }
        }
        if off <= JACOBI_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical("Hermitian Jacobi iteration did not converge"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| b.at(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap().then(i.cmp(&j)));
    let vals: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (new_c, &old_c) in order.iter().enumerate() {
        for r in 0..n {
            vecs.set(r, new_c, u.at(r, old_c));
        }
    }
    Ok((vals, vecs))
}

/// Polar decomposition `m = v · p` with `v` an isometry (orthonormal
/// columns) and `p` positive semidefinite, via the SVD.
///
/// Requires rows ≥ cols. Rank-deficient inputs still produce a valid
/// isometry thanks to the SVD's deterministic null-column completion.
pub fn polar(m: &CMat) -> Result<(CMat, CMat)> {
    if m.rows() < m.cols() {
        return Err(Error::Shape("polar decomposition expects rows >= cols"));
    }
    let Svd { u, s, v } = svd(m)?;
    let viso = u.mul(&v.dagger());
    let n = s.len();
    let mut sv = CMat::zeros(n, n);
    for i in 0..n {
        sv.set(i, i, C64::new(s[i], 0.0));
    }
    let p = v.mul(&sv).mul(&v.dagger());
    Ok((viso, p))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero (numerical noise) are clamped to zero.
pub fn sqrtm_psd(a: &CMat) -> Result<CMat> {
    let (vals, u) = eigh(a)?;
    let n = vals.len();
    let mut d = CMat::zeros(n, n);
    for i in 0..n {
        d.set(i, i, C64::new(math::sqrt(vals[i].max(0.0)), 0.0));
    }
    Ok(u.mul(&d).mul(&u.dagger()))
}

/// Inverse principal square root of a positive definite Hermitian matrix.
/// Fails if any eigenvalue is at or below `tol` times the largest.
pub fn inv_sqrtm_psd(a: &CMat, tol: f64) -> Result<CMat> {
    let (vals, u) = eigh(a)?;
    let n = vals.len();
    let vmax = vals.iter().cloned().fold(0.0, f64::max);
    let mut d = CMat::zeros(n, n);
    for i in 0..n {
        if vals[i] <= tol * vmax {
            return Err(Error::Numerical("matrix is singular to working precision"));
        }
        d.set(i, i, C64::new(1.0 / math::sqrt(vals[i]), 0.0));
    }
    Ok(u.mul(&d).mul(&u.dagger()))
}

/// Eigenvalues of a general complex 2×2 matrix, by the quadratic formula.
pub fn eig2(a: &CMat) -> (C64, C64) {
    assert_eq!((a.rows(), a.cols()), (2, 2), "eig2 needs a 2x2 matrix");
    let tr = a.at(0, 0) + a.at(1, 1);
    let det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    let disc = (tr * tr - det * 4.0).sqrt();
    ((tr + disc) * 0.5, (tr - disc) * 0.5)
}

/// Least-dominant right singular vector of `a` (the best null-vector
/// candidate): the last column of `v` from the SVD.
pub fn min_singular_vector(a: &CMat) -> Result<Vec<C64>> {
    let Svd { v, s, .. } = svd(a)?;
    let last = s.len() - 1;
    Ok(v.col(last))
}
