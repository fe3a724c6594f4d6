//! Sequential preparation of the ring target state.
//!
//! The circuit uses `n + 2` wires: wires `1..=n` become the ring sites,
//! wires `0` and `n + 1` are bond ancillas. Construction:
//!
//! 1. prepare the two middle wires in the entangled pair `ω ∝ vec(√σ)`
//!    (the Bell pair `Φ₊` whenever the tensor is already left-canonical,
//!    i.e. `g ≤ 0`);
//! 2. grow two staircases outward in parallel — rightward with the
//!    right-canonical tensor `A`, leftward with its left-canonical
//!    conjugate `B = √σ · A · √σ⁻¹` — each step a 4×2 isometry consuming
//!    one bond wire and one fresh `|0⟩`;
//! 3. fuse the two loose bond ends by measuring wires `(0, n+1)` and
//!    postselecting on `χ ∝ vec(σ^{−1/2})` (again `Φ₊` for `g ≤ 0`).
//!
//! The gauge conjugation in step 2 is what makes the protocol exact for
//! every `g` in `[−1, 1]`: with both staircases run from the same tensor
//! the left half builds the reversed matrix product, which is not the
//! target state away from the left-canonical region. At `g = 1` the
//! stationary matrix is singular; there the transpose tensor (always
//! left-canonical) replaces the conjugation and the fusion pair is `Φ₊`.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::math;
use crate::mps::{self, Boundary, FiniteMps, SiteTensor, UniformMps};
use alloc::{vec, vec::Vec};
use num_complex::Complex64 as C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Threshold above which the stationary matrix is too close to singular
/// to conjugate by; the transpose-tensor branch takes over.
const SINGULAR_EDGE: f64 = 1.0 - 1e-12;

/// Everything needed to emit and analyze the sequential circuit.
#[derive(Clone, Debug)]
pub struct SequentialPlan {
    g: f64,
    n: usize,
    /// Left-staircase tensor pair (left-canonical).
    left_tensor: [CMat; 2],
    /// Right-staircase tensor pair (right-canonical).
    right_tensor: [CMat; 2],
    /// Middle entangled-pair state (normalized 4-vector).
    middle_state: [C64; 4],
    /// Expected outcome of the end-fusing measurement (normalized).
    postselect_state: [C64; 4],
}

impl SequentialPlan {
    /// The tuning parameter.
    pub fn g(&self) -> f64 {
        self.g
    }

    /// Ring sites prepared.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total wires of the emitted circuit (`n + 2`).
    pub fn n_wires(&self) -> usize {
        self.n + 2
    }

    /// Left-staircase tensor for one physical index.
    pub fn left_tensor(&self, s: usize) -> &CMat {
        &self.left_tensor[s]
    }

    /// Right-staircase tensor for one physical index.
    pub fn right_tensor(&self, s: usize) -> &CMat {
        &self.right_tensor[s]
    }

    /// The middle pair state.
    pub fn middle_state(&self) -> &[C64; 4] {
        &self.middle_state
    }

    /// The postselected fusion outcome.
    pub fn postselect_state(&self) -> &[C64; 4] {
        &self.postselect_state
    }

    /// The 4×2 right-staircase gate: rows (physical, new bond), columns
    /// the incoming bond.
    pub fn right_gate(&self) -> CMat {
        CMat::from_fn(4, 2, |r, a| self.right_tensor[r >> 1].at(a, r & 1))
    }

    /// The 4×2 left-staircase gate: rows (physical, new bond), columns
    /// the incoming bond.
    pub fn left_gate(&self) -> CMat {
        CMat::from_fn(4, 2, |r, a| self.left_tensor[r >> 1].at(r & 1, a))
    }
}

fn vec4(m: &CMat) -> [C64; 4] {
    [m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)]
}

fn normalized4(v: [C64; 4]) -> Result<[C64; 4]> {
    let nrm = math::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
    if nrm <= 0.0 {
        return Err(Error::Numerical("pair state has zero norm"));
    }
    Ok([v[0] / nrm, v[1] / nrm, v[2] / nrm, v[3] / nrm])
}

fn bell_phi_plus() -> [C64; 4] {
    let h = C64::new(1.0 / math::sqrt(2.0), 0.0);
    [h, ZERO, ZERO, h]
}

/// Build the sequential plan for `(g, n)`.
///
/// `n` must be even and at least 4. `g = 0` is accepted: the construction
/// is exact even where the transfer spectrum is degenerate.
pub fn plan(g: f64, n: usize) -> Result<SequentialPlan> {
    if n % 2 != 0 || n < 4 {
        return Err(Error::Shape("sequential preparation needs even n >= 4"));
    }
    let ump = mps::build_target_tensor(g)?;
    let a = [ump.a0().clone(), ump.a1().clone()];

    let (left, middle, post) = if g <= 0.0 {
        // Left-canonical already; σ ∝ I and both pair states are Φ₊.
        (a.clone(), bell_phi_plus(), bell_phi_plus())
    } else if g >= SINGULAR_EDGE {
        // σ is singular; the transpose tensor is always left-canonical and
        // the product state makes the reversed-order closure harmless.
        let at = [a[0].transpose(), a[1].transpose()];
        let plus = C64::new(0.5, 0.0);
        (at, [plus; 4], bell_phi_plus())
    } else {
        let sigma = mps::stationary_matrix(&ump)?;
        let rs = linalg::sqrtm_psd(&sigma)?;
        let rsi = linalg::inv_sqrtm_psd(&sigma, 1e-14)?;
        let b = [rs.mul(&a[0]).mul(&rsi), rs.mul(&a[1]).mul(&rsi)];
        let middle = normalized4(vec4(&rs))?;
        let post = normalized4(vec4(&rsi))?;
        (b, middle, post)
    };

    // Staircase isometry invariants: right tensor right-canonical,
    // left tensor left-canonical, both within 1e−12.
    let eye = CMat::identity(2);
    let rc = a[0].mul(&a[0].dagger()).add(&a[1].mul(&a[1].dagger()));
    if rc.max_abs_diff(&eye) > 1e-12 {
        return Err(Error::Numerical("right staircase tensor is not right-canonical"));
    }
    let lc = left[0].dagger().mul(&left[0]).add(&left[1].dagger().mul(&left[1]));
    if lc.max_abs_diff(&eye) > 1e-12 {
        return Err(Error::Numerical("left staircase tensor is not left-canonical"));
    }

    Ok(SequentialPlan {
        g,
        n,
        left_tensor: left,
        right_tensor: a,
        middle_state: middle,
        postselect_state: post,
    })
}

/// Emit the sequential preparation circuit on `n + 2` wires.
///
/// Gate order: middle pair preparation; the two staircases (disjoint
/// wires, so their steps interleave into parallel layers); the fusing
/// postselection marker on the end wires. Native two-qubit depth is
/// affine in `n` (1 + n/2 isometry layers before compilation).
pub fn synthesize_seq_circuit(g: f64, n: usize) -> Result<Circuit> {
    let plan = plan(g, n)?;
    let mut c = Circuit::new(plan.n_wires());
    let m1 = n / 2;
    let m2 = m1 + 1;

    c.push(Gate::PrepPair { wires: [m1, m2], state: plan.middle_state })?;

    let vr = plan.right_gate();
    let vl = plan.left_gate();
    // Interleave the two outward staircases step by step so the gate list
    // order matches the parallel schedule.
    for step in 0..(n / 2) {
        let wr = m2 + step; // rightward: pair (wr, wr+1), input wr
        let wl = m1 - step; // leftward: pair (wl, wl−1), input wl
        c.push(Gate::Isometry {
            wires: vec![wr, wr + 1],
            inputs: vec![wr],
            matrix: vr.clone(),
        })?;
        c.push(Gate::Isometry {
            wires: vec![wl, wl - 1],
            inputs: vec![wl],
            matrix: vl.clone(),
        })?;
    }

    c.push(Gate::Postselect { wires: [0, n + 1], expected: plan.postselect_state })?;
    Ok(c)
}

/// The exact state on all `n + 2` wires just before the fusing
/// measurement, as an open-chain MPS (wire order = site order).
pub fn pre_measurement_state(g: f64, n: usize) -> Result<FiniteMps> {
    let plan = plan(g, n)?;
    let m1 = n / 2;
    let d = 2usize;

    // Site 0 exposes the left bond end as its physical index.
    let t0 = {
        let m: Vec<CMat> = (0..2)
            .map(|o| CMat::from_fn(1, d, |_, u| if u == o { ONE } else { ZERO }))
            .collect();
        SiteTensor::from_matrices(&m[0], &m[1])
    };
    // The middle pair state as a 2×2 matrix folded into site m1+1.
    let omega = CMat::from_fn(d, d, |j, k| plan.middle_state[2 * j + k]);
    let mut tensors = Vec::with_capacity(n + 2);
    tensors.push(t0);
    for w in 1..=n {
        let (b0, b1);
        if w <= m1 {
            b0 = plan.left_tensor(0).clone();
            b1 = plan.left_tensor(1).clone();
        } else if w == m1 + 1 {
            b0 = omega.mul(plan.right_tensor(0));
            b1 = omega.mul(plan.right_tensor(1));
        } else {
            b0 = plan.right_tensor(0).clone();
            b1 = plan.right_tensor(1).clone();
        }
        tensors.push(SiteTensor::from_matrices(&b0, &b1));
    }
    // Site n+1 exposes the right bond end.
    let tn = {
        let m: Vec<CMat> = (0..2)
            .map(|k| CMat::from_fn(d, 1, |u, _| if u == k { ONE } else { ZERO }))
            .collect();
        SiteTensor::from_matrices(&m[0], &m[1])
    };
    tensors.push(tn);
    FiniteMps::new(tensors, Boundary::Open)
}

/// Exact probability of the postselected fusion outcome.
///
/// Computed from the reduced density matrix of the two end wires of the
/// pre-measurement state — one O(n) sweep at bond dimension 2, no dense
/// state needed.
pub fn postselect_probability(g: f64, n: usize) -> Result<f64> {
    let plan = plan(g, n)?;
    let state = pre_measurement_state(g, n)?;
    let len = state.len();

    // Carry Q[(j,j'), (β,β')]: open bra/ket physical legs at site 0,
    // contracted legs elsewhere.
    let t0 = state.tensor(0);
    let chi = t0.right();
    let mut q = CMat::zeros(4, chi * chi);
    for j in 0..2 {
        for jp in 0..2 {
            let row = t0.matrix(j).conjugate().kron(&t0.matrix(jp));
            for c in 0..chi * chi {
                q.set(2 * j + jp, c, row.at(0, c));
            }
        }
    }
    for i in 1..len - 1 {
        let t = state.tensor(i);
        let mut step = CMat::zeros(t.left() * t.left(), t.right() * t.right());
        for s in 0..2 {
            step = step.add(&t.matrix(s).conjugate().kron(&t.matrix(s)));
        }
        q = q.mul(&step);
    }
    let tn = state.tensor(len - 1);
    // ρ[(j,k), (j',k')] = Σ_bonds q[(j,j'), (β,β')]·conj(T[k][β])·T[k'][β'].
    let mut rho = CMat::zeros(4, 4);
    for k in 0..2 {
        for kp in 0..2 {
            let cap = tn.matrix(k).conjugate().kron(&tn.matrix(kp));
            for j in 0..2 {
                for jp in 0..2 {
                    let mut acc = ZERO;
                    for c in 0..cap.rows() {
                        acc += q.at(2 * j + jp, c) * cap.at(c, 0);
                    }
                    rho.set(2 * j + k, 2 * jp + kp, acc);
                }
            }
        }
    }
    // Normalize (the staircase construction keeps norm 1, but guard).
    let tr = rho.trace().re;
    if tr <= 0.0 {
        return Err(Error::Numerical("pre-measurement state has non-positive norm"));
    }
    let chi_state = plan.postselect_state;
    let mut p = ZERO;
    for r in 0..4 {
        for c in 0..4 {
            p += chi_state[r].conj() * rho.at(r, c) * chi_state[c];
        }
    }
    let p = p.re / tr;
    if p <= 0.0 {
        return Err(Error::ZeroProbability);
    }
    Ok(p.min(1.0))
}
