//! The translation-invariant target state family and exact tensor-network
//! evaluation.
//!
//! The family is a bond-dimension-2 matrix product state tuned by a single
//! parameter `g` in [−1, 1]. Its endpoints are product (`g = 1`), GHZ
//! (`g = 0`), and cluster (`g = −1`) states; in between it interpolates
//! between a trivial and a symmetry-protected phase. The defining tensor is
//! right-canonical for every `g`, which pins the transfer operator's
//! spectral radius at exactly 1.
//!
//! This module owns three layers:
//!
//! * [`UniformMps`] — the site tensor pair `(A⁰, A¹)` with its invariants;
//! * [`TransferSpectrum`] — eigenvalues of the 4×4 transfer operator and
//!   the stationary boundary matrix that seeds the entangled-pair state;
//! * [`FiniteMps`] — inhomogeneous finite chains (periodic or open) with
//!   exact overlap and Pauli-string contraction, the verification backbone
//!   for every synthesized circuit.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::math;
use crate::observables::{Pauli, PauliString};
use alloc::{vec, vec::Vec};
use num_complex::Complex64 as C64;

const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// Pauli-X as a 2×2 matrix.
pub fn pauli_x() -> CMat {
    CMat::from_rows(2, 2, &[ZERO, ONE, ONE, ZERO])
}

/// The translation-invariant site tensor of the target family.
///
/// Invariants established at construction:
/// * `a1 = X · a0 · X` entrywise (the spin-flip symmetry of the family);
/// * right-canonical gauge: `a0·a0† + a1·a1† = I`.
#[derive(Clone, Debug)]
pub struct UniformMps {
    a0: CMat,
    a1: CMat,
    g: f64,
}

/// Bond dimension of the family (fixed).
pub const BOND_DIM: usize = 2;
/// Physical dimension of the family (fixed).
pub const PHYS_DIM: usize = 2;

impl UniformMps {
    /// The tensor for physical index 0.
    pub fn a0(&self) -> &CMat {
        &self.a0
    }

    /// The tensor for physical index 1.
    pub fn a1(&self) -> &CMat {
        &self.a1
    }

    /// The tensor for a physical index.
    pub fn tensor(&self, s: usize) -> &CMat {
        match s {
            0 => &self.a0,
            1 => &self.a1,
            _ => panic!("physical index out of range"),
        }
    }

    /// The tuning parameter.
    pub fn g(&self) -> f64 {
        self.g
    }

    /// Bond dimension (always 2).
    pub fn bond_dim(&self) -> usize {
        BOND_DIM
    }

    /// Physical dimension (always 2).
    pub fn phys_dim(&self) -> usize {
        PHYS_DIM
    }
}

/// Build the defining tensor of the family at tuning parameter `g`.
///
/// `A⁰ = (1+|g|)^{-1/2} [[0, 0], [√g, 1]]` with the principal branch
/// `√g = i·√|g|` for negative `g`, and `A¹ = X·A⁰·X`.
pub fn build_target_tensor(g: f64) -> Result<UniformMps> {
    if !(g.is_finite() && math::fabs(g) <= 1.0) {
        return Err(Error::Domain("tuning parameter must satisfy |g| <= 1"));
    }
    let root_g = if g >= 0.0 {
        C64::new(math::sqrt(g), 0.0)
    } else {
        C64::new(0.0, math::sqrt(-g))
    };
    let scale = 1.0 / math::sqrt(1.0 + math::fabs(g));
    let a0 = CMat::from_rows(2, 2, &[ZERO, ZERO, root_g * scale, ONE * scale]);
    let x = pauli_x();
    let a1 = x.mul(&a0).mul(&x);

    // Construction-time invariant checks.
    let xa0x = x.mul(&a0).mul(&x);
    debug_assert!(a1.max_abs_diff(&xa0x) < 1e-14);
    let rc = a0.mul(&a0.dagger()).add(&a1.mul(&a1.dagger()));
    if rc.max_abs_diff(&CMat::identity(2)) > 1e-12 {
        return Err(Error::Numerical("family tensor lost the right-canonical property"));
    }
    Ok(UniformMps { a0, a1, g })
}

/// Spectral data of the 4×4 transfer operator `E = Σ_i A^i ⊗ conj(A^i)`.
#[derive(Clone, Debug)]
pub struct TransferSpectrum {
    /// All four eigenvalues, sorted by modulus descending (ties broken by
    /// real part, then imaginary part, for determinism).
    pub eigenvalues: [C64; 4],
    /// Trace-normalized stationary boundary matrix `σ` of the transfer
    /// operator: the positive semidefinite solution of
    /// `Σ_i (A^i)† σ A^i = σ`. Its square root builds the entangled-pair
    /// state of the fixed point, `ω ∝ vec(√σ)`.
    ///
    /// At degenerate points (g = 0) the stationary space has dimension two
    /// and this field holds one deterministic representative.
    pub stationary_matrix: CMat,
}

/// The transfer operator as a dense 4×4 matrix with row-major compound
/// indices: `E[(a·2+b), (c·2+d)] = Σ_i A^i[a,c] · conj(A^i[b,d])`.
pub fn transfer_matrix(mps: &UniformMps) -> CMat {
    let mut e = CMat::zeros(4, 4);
    for i in 0..2 {
        let a = mps.tensor(i);
        let ac = a.conjugate();
        e = e.add(&a.kron(&ac));
    }
    e
}

/// Eigen-decompose the transfer operator and extract the stationary matrix.
///
/// The family's spin-flip symmetry makes `E` commute with `X ⊗ X`, so the
/// spectrum splits into two exactly-solvable 2×2 blocks over the symmetric
/// and antisymmetric subspaces — no general 4×4 eigensolver is needed and
/// the eigenvalues come out at machine precision even at degenerate points.
pub fn transfer_spectrum(mps: &UniformMps) -> Result<TransferSpectrum> {
    let e = transfer_matrix(mps);

    // Orthonormal bases of the ±1 eigenspaces of X⊗X.
    let h = 1.0 / math::sqrt(2.0);
    let bp = CMat::from_fn(4, 2, |r, c| match (r, c) {
        (0, 0) | (3, 0) => C64::new(h, 0.0),
        (1, 1) | (2, 1) => C64::new(h, 0.0),
        _ => ZERO,
    });
    let bm = CMat::from_fn(4, 2, |r, c| match (r, c) {
        (0, 0) => C64::new(h, 0.0),
        (3, 0) => C64::new(-h, 0.0),
        (1, 1) => C64::new(h, 0.0),
        (2, 1) => C64::new(-h, 0.0),
        _ => ZERO,
    });
    let block_p = bp.dagger().mul(&e).mul(&bp);
    let block_m = bm.dagger().mul(&e).mul(&bm);
    let (l1, l2) = linalg::eig2(&block_p);
    let (l3, l4) = linalg::eig2(&block_m);
    let mut eigs = [l1, l2, l3, l4];
    eigs.sort_by(|a, b| {
        b.norm()
            .partial_cmp(&a.norm())
            .unwrap()
            .then(b.re.partial_cmp(&a.re).unwrap())
            .then(b.im.partial_cmp(&a.im).unwrap())
    });

    let sigma = stationary_matrix(mps)?;
    Ok(TransferSpectrum { eigenvalues: eigs, stationary_matrix: sigma })
}

/// The stationary boundary matrix: the trace-normalized Hermitian PSD
/// solution of `Σ_i (A^i)† σ A^i = σ`, found as the null vector of the
/// stationarity map minus the identity.
pub fn stationary_matrix(mps: &UniformMps) -> Result<CMat> {
    // Row-major vectorization: the map σ ↦ Σ (A^i)† σ A^i has matrix
    // Σ_i (A^i)† ⊗ (A^i)ᵀ.
    let mut m = CMat::zeros(4, 4);
    for i in 0..2 {
        let a = mps.tensor(i);
        m = m.add(&a.dagger().kron(&a.transpose()));
    }
    let shifted = m.sub(&CMat::identity(4));
    let v = linalg::min_singular_vector(&shifted)?;
    let q = CMat::from_rows(2, 2, &[v[0], v[1], v[2], v[3]]);
    // The null vector carries an arbitrary global phase; rotate it so the
    // trace is real-positive, then Hermitize and normalize.
    let tr = q.trace();
    let phase = if tr.norm() > 1e-300 { tr / tr.norm() } else { ONE };
    let q = q.scaled(phase.conj());
    let herm = q.add(&q.dagger()).scaled(C64::new(0.5, 0.0));
    let tr = herm.trace().re;
    if math::fabs(tr) < 1e-12 {
        return Err(Error::Numerical("stationary matrix has vanishing trace"));
    }
    Ok(herm.scaled(C64::new(1.0 / tr, 0.0)))
}

/// Closed-form correlation length `ξ = |ln((1−g)/(1+g))|⁻¹` in sites.
///
/// Diverges at the scale-invariant point `g = 0` (domain error); exactly 0
/// at `|g| = 1` where correlations vanish.
pub fn correlation_length(g: f64) -> Result<f64> {
    if !(g.is_finite() && math::fabs(g) <= 1.0) {
        return Err(Error::Domain("tuning parameter must satisfy |g| <= 1"));
    }
    if g == 0.0 {
        return Err(Error::Domain("correlation length diverges at g = 0"));
    }
    if math::fabs(g) == 1.0 {
        return Ok(0.0);
    }
    let ratio = (1.0 - g) / (1.0 + g);
    Ok(1.0 / math::fabs(math::ln(ratio)))
}

/// Boundary condition of a finite chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Ring: amplitudes close with a trace over the bond.
    Periodic,
    /// Chain: bond dimension 1 at both ends.
    Open,
}

/// One site of a finite MPS: a rank-3 tensor with physical dimension 2.
///
/// Storage is `data[(s · left + a) · right + b]` for physical index `s`,
/// left bond `a`, right bond `b`.
#[derive(Clone, Debug)]
pub struct SiteTensor {
    left: usize,
    right: usize,
    data: Vec<C64>,
}

impl SiteTensor {
    /// Build from explicit per-physical-index matrices (left × right each).
    pub fn from_matrices(m0: &CMat, m1: &CMat) -> Self {
        assert_eq!((m0.rows(), m0.cols()), (m1.rows(), m1.cols()));
        let (left, right) = (m0.rows(), m0.cols());
        let mut data = Vec::with_capacity(2 * left * right);
        for m in [m0, m1] {
            for a in 0..left {
                for b in 0..right {
                    data.push(m.at(a, b));
                }
            }
        }
        SiteTensor { left, right, data }
    }

    /// Left bond dimension.
    pub fn left(&self) -> usize {
        self.left
    }

    /// Right bond dimension.
    pub fn right(&self) -> usize {
        self.right
    }

    /// Entry at (physical, left, right).
    #[inline]
    pub fn at(&self, s: usize, a: usize, b: usize) -> C64 {
        self.data[(s * self.left + a) * self.right + b]
    }

    /// The left×right matrix for a fixed physical index.
    pub fn matrix(&self, s: usize) -> CMat {
        CMat::from_fn(self.left, self.right, |a, b| self.at(s, a, b))
    }

    /// Scale all entries.
    pub fn scale(&mut self, f: f64) {
        for z in self.data.iter_mut() {
            *z *= f;
        }
    }
}

/// A finite, generally inhomogeneous matrix product state.
#[derive(Clone, Debug)]
pub struct FiniteMps {
    tensors: Vec<SiteTensor>,
    boundary: Boundary,
}

impl FiniteMps {
    /// Assemble from site tensors, checking bond consistency.
    pub fn new(tensors: Vec<SiteTensor>, boundary: Boundary) -> Result<Self> {
        if tensors.is_empty() {
            return Err(Error::Shape("finite MPS needs at least one site"));
        }
        for w in tensors.windows(2) {
            if w[0].right != w[1].left {
                return Err(Error::Shape("adjacent bond dimensions disagree"));
            }
        }
        match boundary {
            Boundary::Periodic => {
                if tensors.last().unwrap().right != tensors[0].left {
                    return Err(Error::Shape("periodic chain must close its bond"));
                }
            }
            Boundary::Open => {
                if tensors[0].left != 1 || tensors.last().unwrap().right != 1 {
                    return Err(Error::Shape("open chain must have unit end bonds"));
                }
            }
        }
        Ok(FiniteMps { tensors, boundary })
    }

    /// Number of sites.
    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    /// True for the empty chain (never constructible; kept for clippy).
    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    /// Boundary condition.
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Site tensor accessor.
    pub fn tensor(&self, i: usize) -> &SiteTensor {
        &self.tensors[i]
    }

    /// Largest bond dimension.
    pub fn max_bond(&self) -> usize {
        self.tensors.iter().map(|t| t.left.max(t.right)).max().unwrap_or(0)
    }

    /// The state's norm `√⟨ψ|ψ⟩`.
    pub fn norm(&self) -> f64 {
        let n2 = mixed_contraction(self, self, None).expect("self-overlap is always shaped");
        math::sqrt(n2.re.max(0.0))
    }

    /// Rescale to unit norm (uniformly across sites). Errors on zero norm.
    pub fn normalize(&mut self) -> Result<()> {
        let nrm = self.norm();
        if nrm <= 0.0 || !nrm.is_finite() {
            return Err(Error::Numerical("cannot normalize a zero-norm state"));
        }
        let n = self.tensors.len() as f64;
        let per_site = math::exp(math::ln(nrm) * (-1.0 / n));
        for t in self.tensors.iter_mut() {
            t.scale(per_site);
        }
        Ok(())
    }

    /// Contract into a dense statevector (site 0 is the most significant
    /// bit). Intended for oracle comparisons at small n.
    pub fn to_statevector(&self, cap_qubits: usize) -> Result<Vec<C64>> {
        let n = self.len();
        if n > cap_qubits {
            return Err(Error::SizeCap { qubits: n, cap: cap_qubits });
        }
        let chi0 = self.tensors[0].left;
        // Carry an amplitude block over (configurations so far) × (start bond γ, current bond).
        // Periodic chains keep γ to close the trace; open chains have χ0 = 1.
        let mut block: Vec<CMat> = vec![CMat::identity(chi0)];
        for t in &self.tensors {
            // Each existing configuration c branches into (c, s); the new
            // physical index becomes the least significant bit.
            let m0 = t.matrix(0);
            let m1 = t.matrix(1);
            let mut next = Vec::with_capacity(block.len() * 2);
            for b in &block {
                next.push(b.mul(&m0));
                next.push(b.mul(&m1));
            }
            block = next;
        }
        let mut out = Vec::with_capacity(block.len());
        match self.boundary {
            Boundary::Periodic => {
                for b in &block {
                    out.push(b.trace());
                }
            }
            Boundary::Open => {
                for b in &block {
                    out.push(b.at(0, 0));
                }
            }
        }
        Ok(out)
    }
}

/// The n-site target state of the family as a finite MPS.
///
/// Periodic form: n copies of the uniform tensor, trace-closed.
/// Open form: the same ring state rewritten as an open chain (the start
/// bond rides along as a doubled bond dimension), so both forms describe
/// the identical state vector.
///
/// The result is normalized.
pub fn target_state(mps: &UniformMps, n: usize, boundary: Boundary) -> Result<FiniteMps> {
    if n < 2 {
        return Err(Error::Shape("target state needs at least 2 sites"));
    }
    let mut tensors = Vec::with_capacity(n);
    match boundary {
        Boundary::Periodic => {
            for _ in 0..n {
                tensors.push(SiteTensor::from_matrices(mps.a0(), mps.a1()));
            }
        }
        Boundary::Open => {
            let d = BOND_DIM;
            // First site: row vector over compound (α, γ): T[1, (α,γ)] = A^s[γ, α].
            let first = |s: &CMat| CMat::from_fn(1, d * d, |_, ag| s.at(ag % d, ag / d));
            // Middle: block-diagonal in γ: T[(α,γ), (β,γ)] = A^s[α, β].
            let middle = |s: &CMat| {
                CMat::from_fn(d * d, d * d, |ag, bg| {
                    if ag % d == bg % d {
                        s.at(ag / d, bg / d)
                    } else {
                        ZERO
                    }
                })
            };
            // Last: close the loop: T[(α,γ), 1] = A^s[α, γ].
            let last = |s: &CMat| CMat::from_fn(d * d, 1, |ag, _| s.at(ag / d, ag % d));
            tensors.push(SiteTensor::from_matrices(&first(mps.a0()), &first(mps.a1())));
            for _ in 1..n - 1 {
                tensors.push(SiteTensor::from_matrices(&middle(mps.a0()), &middle(mps.a1())));
            }
            tensors.push(SiteTensor::from_matrices(&last(mps.a0()), &last(mps.a1())));
        }
    }
    let mut state = FiniteMps::new(tensors, boundary)?;
    state.normalize()?;
    Ok(state)
}

/// Mixed transfer contraction `⟨a|O|b⟩` where `O` is an optional Pauli
/// string (None means the identity).
///
/// Open chains run a cheap boundary-matrix sweep in O(n·χ³). Periodic
/// chains multiply full mixed transfer matrices of size (χ_a·χ_b)²; with
/// the bond dimensions appearing in this artifact (≤ 4 on ring states)
/// that stays trivially cheap.
fn mixed_contraction(a: &FiniteMps, b: &FiniteMps, op: Option<&PauliString>) -> Result<C64> {
    if a.len() != b.len() {
        return Err(Error::Shape("states have different lengths"));
    }
    if a.boundary() != b.boundary() {
        return Err(Error::Shape("states have different boundary types"));
    }
    if let Some(p) = op {
        if p.len() != a.len() {
            return Err(Error::Shape("operator length must match the chain"));
        }
    }
    let n = a.len();
    match a.boundary() {
        Boundary::Open => {
            // L[α, β] boundary matrix; bra indices conjugated.
            let mut l = CMat::identity(1);
            for i in 0..n {
                let ta = a.tensor(i);
                let tb = b.tensor(i);
                let mut next = CMat::zeros(ta.right(), tb.right());
                for (sb, sk, w) in pauli_entries(op, i) {
                    // next += w · (A^{sb})† L B^{sk}
                    let abra = ta.matrix(sb).dagger();
                    let bket = tb.matrix(sk);
                    let term = abra.mul(&l).mul(&bket).scaled(w);
                    next = next.add(&term);
                }
                l = next;
            }
            Ok(l.at(0, 0))
        }
        Boundary::Periodic => {
            let chi_a = a.tensor(0).left();
            let chi_b = b.tensor(0).left();
            let dim = chi_a * chi_b;
            let mut m = CMat::identity(dim);
            for i in 0..n {
                let ta = a.tensor(i);
                let tb = b.tensor(i);
                let mut step = CMat::zeros(dim, ta.right() * tb.right());
                for (sb, sk, w) in pauli_entries(op, i) {
                    let abar = ta.matrix(sb).conjugate();
                    let bket = tb.matrix(sk);
                    step = step.add(&abar.kron(&bket).scaled(w));
                }
                m = m.mul(&step);
            }
            Ok(m.trace())
        }
    }
}

/// Matrix elements `⟨s_bra| P_i |s_ket⟩` of the single-site operator at
/// site `i`, enumerated as (s_bra, s_ket, weight) with zero entries skipped.
fn pauli_entries(op: Option<&PauliString>, site: usize) -> Vec<(usize, usize, C64)> {
    let p = match op {
        None => Pauli::I,
        Some(s) => s.letter(site),
    };
    match p {
        Pauli::I => vec![(0, 0, ONE), (1, 1, ONE)],
        Pauli::X => vec![(0, 1, ONE), (1, 0, ONE)],
        Pauli::Y => vec![(0, 1, C64::new(0.0, -1.0)), (1, 0, C64::new(0.0, 1.0))],
        Pauli::Z => vec![(0, 0, ONE), (1, 1, -ONE)],
    }
}

/// Exact expectation value `⟨ψ|P|ψ⟩ / ⟨ψ|ψ⟩` of one Pauli string.
///
/// The imaginary part must vanish (Hermitian observable on a normalized
/// state); anything above 1e−10 signals a contraction bug and errors out.
pub fn expectation_pauli(state: &FiniteMps, pauli: &PauliString) -> Result<f64> {
    let num = mixed_contraction(state, state, Some(pauli))?;
    let den = mixed_contraction(state, state, None)?;
    if den.re <= 0.0 {
        return Err(Error::Numerical("state has non-positive norm"));
    }
    let val = num / den.re;
    if math::fabs(val.im) > 1e-10 {
        return Err(Error::Numerical("expectation value has a non-negligible imaginary part"));
    }
    Ok(val.re * pauli.coefficient())
}

/// Inner product `⟨a|b⟩` of two finite MPS of equal length and boundary.
pub fn overlap(a: &FiniteMps, b: &FiniteMps) -> Result<C64> {
    mixed_contraction(a, b, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_endpooints_match_closed_forms() {
        // g = 0: A⁰ = [[0,0],[0,1]], A¹ = [[1,0],[0,0]].
        let m = build_target_tensor(0.0).unwrap();
        assert!(m.a0().at(1, 1).norm() - 1.0 < 1e-15);
        assert!(m.a0().at(1, 0).norm() < 1e-15);
        assert!((m.a1().at(0, 0) - ONE).norm() < 1e-15);

        // g = 1: A⁰ = (1/√2)[[0,0],[1,1]].
        let m = build_target_tensor(1.0).unwrap();
        let r = 1.0 / 2.0f64.sqrt();
        assert!((m.a0().at(1, 0).re - r).abs() < 1e-15);
        assert!((m.a0().at(1, 1).re - r).abs() < 1e-15);

        // g = −1: A⁰ = (1/√2)[[0,0],[i,1]] (principal branch).
        let m = build_target_tensor(-1.0).unwrap();
        assert!((m.a0().at(1, 0) - C64::new(0.0, r)).norm() < 1e-15);
    }

    #[test]
    fn out_of_domain_rejected() {
        assert!(matches!(build_target_tensor(1.5), Err(Error::Domain(_))));
        assert!(matches!(build_target_tensor(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn transfer_leading_eigenvalue_is_one() {
        for g in [-0.9, -0.5, -0.1, 0.1, 0.5, 0.9, 1.0] {
            let m = build_target_tensor(g).unwrap();
            let spec = transfer_spectrum(&m).unwrap();
            assert!(
                (spec.eigenvalues[0].norm() - 1.0).abs() < 1e-12,
                "leading modulus at g={g}"
            );
        }
    }

    #[test]
    fn transfer_examples_from_closed_forms() {
        // g = 1: subleading eigenvalue modulus 0.
        let spec = transfer_spectrum(&build_target_tensor(1.0).unwrap()).unwrap();
        assert!(spec.eigenvalues[1].norm() < 1e-12);

        // g = 0: two eigenvalues of modulus 1 (degenerate point).
        let spec = transfer_spectrum(&build_target_tensor(0.0).unwrap()).unwrap();
        assert!((spec.eigenvalues[0].norm() - 1.0).abs() < 1e-12);
        assert!((spec.eigenvalues[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stationary_matrix_matches_closed_form() {
        // g > 0: σ = [[1/2, √g/(1+g)], [√g/(1+g), 1/2]].
        for g in [0.1, 0.5, 0.9] {
            let m = build_target_tensor(g).unwrap();
            let sigma = stationary_matrix(&m).unwrap();
            let r = g.sqrt() / (1.0 + g);
            let closed = CMat::from_rows(
                2,
                2,
                &[
                    C64::new(0.5, 0.0), C64::new(r, 0.0),
                    C64::new(r, 0.0), C64::new(0.5, 0.0),
                ],
            );
            assert!(sigma.max_abs_diff(&closed) < 1e-10, "sigma at g={g}");
        }
        // g < 0: σ = I/2.
        for g in [-0.1, -0.5, -0.9, -1.0] {
            let m = build_target_tensor(g).unwrap();
            let sigma = stationary_matrix(&m).unwrap();
            let closed = CMat::identity(2).scaled(C64::new(0.5, 0.0));
            assert!(sigma.max_abs_diff(&closed) < 1e-10, "sigma at g={g}");
        }
    }

    #[test]
    fn correlation_length_closed_form_identity() {
        // ξ must agree with −1/ln|λ_sub| from the transfer spectrum.
        for k in 1..=9 {
            for sign in [-1.0, 1.0] {
                let g = sign * (k as f64) / 10.0;
                let xi = correlation_length(g).unwrap();
                let spec = transfer_spectrum(&build_target_tensor(g).unwrap()).unwrap();
                let sub = spec.eigenvalues[1].norm();
                let xi_spec = -1.0 / sub.ln();
                assert!(
                    (xi - xi_spec).abs() < 1e-10,
                    "xi mismatch at g={g}: {xi} vs {xi_spec}"
                );
            }
        }
        assert!(correlation_length(1.0).unwrap() == 0.0);
        assert!(matches!(correlation_length(0.0), Err(Error::Domain(_))));
        // g = 0.5 → 1/ln 3.
        assert!((correlation_length(0.5).unwrap() - 1.0 / 3.0f64.ln()).abs() < 1e-12);
        // Symmetric in the sign of g.
        assert!(
            (correlation_length(0.5).unwrap() - correlation_length(-0.5).unwrap()).abs() < 1e-12
        );
    }

    #[test]
    fn periodic_and_open_target_states_agree() {
        for g in [0.5, -0.5, 0.0, 1.0] {
            let m = build_target_tensor(g).unwrap();
            let p = target_state(&m, 6, Boundary::Periodic).unwrap();
            let o = target_state(&m, 6, Boundary::Open).unwrap();
            let vp = p.to_statevector(12).unwrap();
            let vo = o.to_statevector(12).unwrap();
            let dot: C64 = vp.iter().zip(vo.iter()).map(|(x, y)| x.conj() * y).sum();
            assert!((dot.norm() - 1.0).abs() < 1e-10, "g={g} overlap {}", dot.norm());
        }
    }

    #[test]
    fn overlap_self_is_one() {
        let m = build_target_tensor(0.3).unwrap();
        let s = target_state(&m, 8, Boundary::Periodic).unwrap();
        let o = overlap(&s, &s).unwrap();
        assert!((o.re - 1.0).abs() < 1e-12 && o.im.abs() < 1e-12);
    }

    #[test]
    fn ghz_and_plus_product_expectations() {
        // g = 0 target is GHZ: ⟨Z₁Z₂⟩ = 1.
        let m = build_target_tensor(0.0).unwrap();
        let s = target_state(&m, 8, Boundary::Periodic).unwrap();
        let zz = PauliString::from_letters(
            &[
                Pauli::Z, Pauli::Z, Pauli::I, Pauli::I,
                Pauli::I, Pauli::I, Pauli::I, Pauli::I,
            ],
            1.0,
        );
        assert!((expectation_pauli(&s, &zz).unwrap() - 1.0).abs() < 1e-10);

        // g = 1 target is |+⟩⊗ⁿ: ⟨X₂X₃X₄X₅X₆⟩ = 1.
        let m = build_target_tensor(1.0).unwrap();
        let s = target_state(&m, 8, Boundary::Periodic).unwrap();
        let xs = PauliString::from_letters(
            &[
                Pauli::I, Pauli::X, Pauli::X, Pauli::X,
                Pauli::X, Pauli::X, Pauli::I, Pauli::I,
            ],
            1.0,
        );
        assert!((expectation_pauli(&s, &xs).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cluster_state_stabilizers_at_g_minus_one() {
        // Every ⟨Z_{k−1} X_k Z_{k+1}⟩ = −1 on the ring at g = −1.
        let m = build_target_tensor(-1.0).unwrap();
        let n = 8;
        let s = target_state(&m, n, Boundary::Periodic).unwrap();
        for k in 0..n {
            let mut letters = vec![Pauli::I; n];
            letters[(k + n - 1) % n] = Pauli::Z;
            letters[k] = Pauli::X;
            letters[(k + 1) % n] = Pauli::Z;
            let p = PauliString::from_letters(&letters, 1.0);
            let v = expectation_pauli(&s, &p).unwrap();
            assert!((v + 1.0).abs() < 1e-10, "stabilizer at k={k}: {v}");
        }
    }
}
