//! Circuit execution backends.
//!
//! Three engines with one semantics:
//!
//! * [`run_statevector`] — dense, exact, capped at 22 wires; the oracle.
//! * [`run_mps`] — open-chain tensor-network state with bounded bond
//!   dimension; scales to the 80-site circuits. Non-adjacent gates are
//!   handled by simulator-internal wire dragging that is never counted in
//!   any depth metric.
//! * [`run_trajectories`] — stochastic Pauli noise on top of the MPS
//!   engine; trajectory `t` draws its randomness from `hash(seed, t)` so
//!   results are bit-identical regardless of execution order or thread
//!   count.
//!
//! Wire 0 is the most significant bit throughout. Postselection markers
//! are applied as exact projections with renormalization; the acceptance
//! probability is tracked multiplicatively.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::math;
use crate::mps::{Boundary, FiniteMps, SiteTensor};
use crate::observables::{Pauli, PauliString};
use alloc::{vec, vec::Vec};
use num_complex::Complex64 as C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense-backend wire cap: 2^22 amplitudes is the largest state the exact
/// oracle will materialize.
pub const STATEVECTOR_CAP: usize = 22;

// ---------------------------------------------------------------------------
// Dense statevector backend
// ---------------------------------------------------------------------------

/// A dense state on `n` wires; wire 0 is the most significant bit of the
/// amplitude index.
#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` wires.
    pub fn zero(n: usize) -> Result<Self> {
        if n > STATEVECTOR_CAP {
            return Err(Error::SizeCap { qubits: n, cap: STATEVECTOR_CAP });
        }
        if n == 0 {
            return Err(Error::Shape("statevector needs at least one wire"));
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(StateVector { n, amps })
    }

    /// Wrap explicit amplitudes (length must be a power of two).
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || len & (len - 1) != 0 {
            return Err(Error::Shape("amplitude count must be a power of two"));
        }
        let n = len.trailing_zeros() as usize;
        if n > STATEVECTOR_CAP {
            return Err(Error::SizeCap { qubits: n, cap: STATEVECTOR_CAP });
        }
        Ok(StateVector { n, amps })
    }

    /// Number of wires.
    pub fn n_wires(&self) -> usize {
        self.n
    }

    /// The amplitudes.
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// Bit position (shift) of a wire in the amplitude index.
    #[inline]
    fn pos(&self, wire: usize) -> usize {
        self.n - 1 - wire
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        math::sqrt(self.amps.iter().map(|a| a.norm_sqr()).sum())
    }

    /// Rescale to unit norm.
    pub fn normalize(&mut self) -> Result<()> {
        let nrm = self.norm();
        if nrm <= 0.0 || !nrm.is_finite() {
            return Err(Error::Numerical("cannot normalize a zero-norm state"));
        }
        let inv = 1.0 / nrm;
        for a in self.amps.iter_mut() {
            *a *= inv;
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &StateVector) -> Result<C64> {
        if self.n != other.n {
            return Err(Error::Shape("overlap needs equal wire counts"));
        }
        Ok(self.amps.iter().zip(other.amps.iter()).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|` for unit-normalized states.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.overlap(other)?.norm())
    }

    /// Apply a single-qubit unitary.
    pub fn apply_one(&mut self, wire: usize, u: &CMat) {
        let mask = 1usize << self.pos(wire);
        for idx in 0..self.amps.len() {
            if idx & mask == 0 {
                let a0 = self.amps[idx];
                let a1 = self.amps[idx | mask];
                self.amps[idx] = u.at(0, 0) * a0 + u.at(0, 1) * a1;
                self.amps[idx | mask] = u.at(1, 0) * a0 + u.at(1, 1) * a1;
            }
        }
    }

    /// Apply a two-qubit unitary; `w0` is the more significant gate bit.
    pub fn apply_two(&mut self, w0: usize, w1: usize, u: &CMat) {
        let m0 = 1usize << self.pos(w0);
        let m1 = 1usize << self.pos(w1);
        for idx in 0..self.amps.len() {
            if idx & m0 == 0 && idx & m1 == 0 {
                let i = [idx, idx | m1, idx | m0, idx | m0 | m1];
                let a = [self.amps[i[0]], self.amps[i[1]], self.amps[i[2]], self.amps[i[3]]];
                for (r, &target) in i.iter().enumerate() {
                    let mut acc = ZERO;
                    for (c, &amp) in a.iter().enumerate() {
                        acc += u.at(r, c) * amp;
                    }
                    self.amps[target] = acc;
                }
            }
        }
    }

    /// Total probability mass on configurations where `wire` is 1.
    fn mass_on_one(&self, wire: usize) -> f64 {
        let mask = 1usize << self.pos(wire);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Apply an isometry gate: `wires` (MSB first) with the subset
    /// `inputs` carrying state and the rest required to be `|0⟩` ancillas.
    pub fn apply_isometry(&mut self, wires: &[usize], inputs: &[usize], v: &CMat) -> Result<()> {
        let k = wires.len();
        let kin = inputs.len();
        let ancillas: Vec<usize> =
            wires.iter().copied().filter(|w| !inputs.contains(w)).collect();
        for &a in &ancillas {
            if self.mass_on_one(a) > 1e-18 {
                return Err(Error::Numerical("isometry ancilla wire is not in |0⟩"));
            }
        }
        let gate_pos: Vec<usize> = wires.iter().map(|&w| self.pos(w)).collect();
        let in_pos: Vec<usize> = inputs.iter().map(|&w| self.pos(w)).collect();
        let gate_mask: usize = gate_pos.iter().map(|&p| 1 << p).sum();

        let mut out = vec![ZERO; self.amps.len()];
        for idx in 0..self.amps.len() {
            // Only configurations with every gate wire clear are expanded:
            // input bits are read from the index, ancilla bits are zero by
            // the check above, so each (rest, input-config) appears exactly
            // once among indices with gate bits ⊆ input bits.
            if idx & gate_mask != 0 {
                continue;
            }
            // idx has all gate wires clear: enumerate input configs c.
            for c in 0..(1usize << kin) {
                let mut src = idx;
                for (bi, &p) in in_pos.iter().enumerate() {
                    if c & (1 << (kin - 1 - bi)) != 0 {
                        src |= 1 << p;
                    }
                }
                let amp = self.amps[src];
                if amp == ZERO {
                    continue;
                }
                for r in 0..(1usize << k) {
                    let vrc = v.at(r, c);
                    if vrc == ZERO {
                        continue;
                    }
                    let mut dst = idx;
                    for (bi, &p) in gate_pos.iter().enumerate() {
                        if r & (1 << (k - 1 - bi)) != 0 {
                            dst |= 1 << p;
                        }
                    }
                    out[dst] += vrc * amp;
                }
            }
        }
        self.amps = out;
        Ok(())
    }

    /// Project two wires onto `expected` (normalized 4-vector, `wires[0]`
    /// the more significant bit), renormalize, and return the outcome
    /// probability.
    pub fn project_pair(&mut self, wires: [usize; 2], expected: &[C64; 4]) -> Result<f64> {
        let m0 = 1usize << self.pos(wires[0]);
        let m1 = 1usize << self.pos(wires[1]);
        let mut prob = 0.0;
        let mut out = vec![ZERO; self.amps.len()];
        for idx in 0..self.amps.len() {
            if idx & m0 == 0 && idx & m1 == 0 {
                let i = [idx, idx | m1, idx | m0, idx | m0 | m1];
                let mut inner = ZERO;
                for (c, &src) in i.iter().enumerate() {
                    inner += expected[c].conj() * self.amps[src];
                }
                prob += inner.norm_sqr();
                for (c, &dst) in i.iter().enumerate() {
                    out[dst] = expected[c] * inner;
                }
            }
        }
        if prob <= 1e-300 {
            return Err(Error::ZeroProbability);
        }
        self.amps = out;
        self.normalize()?;
        Ok(prob)
    }

    /// Factor out two wires known to be in the pure state `expected`
    /// (after projection), returning the state on the remaining wires in
    /// their original order.
    pub fn factor_out_pair(&self, wires: [usize; 2], expected: &[C64; 4]) -> Result<StateVector> {
        let m0 = 1usize << self.pos(wires[0]);
        let m1 = 1usize << self.pos(wires[1]);
        let keep: Vec<usize> = (0..self.n).filter(|w| !wires.contains(w)).collect();
        let mut amps = vec![ZERO; 1 << keep.len()];
        for idx in 0..self.amps.len() {
            if idx & m0 == 0 && idx & m1 == 0 {
                let i = [idx, idx | m1, idx | m0, idx | m0 | m1];
                let mut inner = ZERO;
                for (c, &src) in i.iter().enumerate() {
                    inner += expected[c].conj() * self.amps[src];
                }
                // Compress remaining bits in wire order.
                let mut rid = 0usize;
                for (bi, &w) in keep.iter().enumerate() {
                    if idx & (1 << self.pos(w)) != 0 {
                        rid |= 1 << (keep.len() - 1 - bi);
                    }
                }
                amps[rid] = inner;
            }
        }
        let mut sv = StateVector::from_amplitudes(amps)?;
        let nrm = sv.norm();
        if (nrm - 1.0).abs() > 1e-8 {
            return Err(Error::Numerical("pair is not in the expected pure state"));
        }
        sv.normalize()?;
        Ok(sv)
    }

    /// Exact expectation value of one Pauli string (normalized state).
    pub fn expectation_pauli(&self, p: &PauliString) -> Result<f64> {
        if p.len() != self.n {
            return Err(Error::Shape("operator length must match wire count"));
        }
        let mut acc = C64::new(0.0, 0.0);
        for idx in 0..self.amps.len() {
            let src = self.amps[idx];
            if src == ZERO {
                continue;
            }
            let mut dst = idx;
            let mut w = ONE;
            for site in 0..self.n {
                let posn = self.pos(site);
                let bit = (idx >> posn) & 1;
                match p.letter(site) {
                    Pauli::I => {}
                    Pauli::X => dst ^= 1 << posn,
                    Pauli::Y => {
                        dst ^= 1 << posn;
                        w *= if bit == 0 { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) };
                    }
                    Pauli::Z => {
                        if bit == 1 {
                            w = -w;
                        }
                    }
                }
            }
            acc += self.amps[dst].conj() * w * src;
        }
        Ok(acc.re * p.coefficient())
    }
}

/// Result of an exact dense run.
#[derive(Clone, Debug)]
pub struct SvOutcome {
    /// The normalized final state (postselected wires collapsed in place).
    pub state: StateVector,
    /// Product of all postselection outcome probabilities (1.0 if none).
    pub postselect_probability: f64,
}

/// Execute a circuit on the dense backend.
pub fn run_statevector(circuit: &Circuit) -> Result<SvOutcome> {
    let mut sv = StateVector::zero(circuit.n_wires())?;
    let mut prob = 1.0;
    for gate in circuit.gates() {
        match gate {
            Gate::PrepPair { wires, state } => {
                // A preparation is an isometry with no input wires: both
                // wires are |0⟩ ancillas and the matrix is one column.
                let v = CMat::from_fn(4, 1, |r, _| state[r]);
                sv.apply_isometry(&[wires[0], wires[1]], &[], &v)?;
            }
            Gate::Isometry { wires, inputs, matrix } => {
                sv.apply_isometry(wires, inputs, matrix)?;
            }
            Gate::TwoQubit { wires, matrix } => sv.apply_two(wires[0], wires[1], matrix),
            Gate::OneQubit { wire, matrix } => sv.apply_one(*wire, matrix),
            Gate::Cnot { control, target } => {
                let u = cnot_matrix();
                sv.apply_two(*control, *target, &u);
            }
            Gate::Swap { wires } => {
                let u = swap_matrix();
                sv.apply_two(wires[0], wires[1], &u);
            }
            Gate::Postselect { wires, expected } => {
                prob *= sv.project_pair(*wires, expected)?;
            }
        }
    }
    if (sv.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Numerical("final state norm drifted beyond tolerance"));
    }
    Ok(SvOutcome { state: sv, postselect_probability: prob })
}

/// CNOT with the control on the more significant gate bit.
pub fn cnot_matrix() -> CMat {
    CMat::from_rows(
        4,
        4,
        &[
            ONE, ZERO, ZERO, ZERO,
            ZERO, ONE, ZERO, ZERO,
            ZERO, ZERO, ZERO, ONE,
            ZERO, ZERO, ONE, ZERO,
        ],
    )
}

/// SWAP as a 4×4 matrix.
pub fn swap_matrix() -> CMat {
    CMat::from_rows(
        4,
        4,
        &[
            ONE, ZERO, ZERO, ZERO,
            ZERO, ZERO, ONE, ZERO,
            ZERO, ONE, ZERO, ZERO,
            ZERO, ZERO, ZERO, ONE,
        ],
    )
}

#[cfg(test)]
mod sv_tests {
    use super::*;

    fn bell() -> [C64; 4] {
        let h = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
        [h, ZERO, ZERO, h]
    }

    #[test]
    fn cap_enforced() {
        let c = Circuit::new(30);
        assert!(matches!(run_statevector(&c), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn hadamard_cnot_makes_bell() {
        let h = 1.0 / 2.0f64.sqrt();
        let had = CMat::from_rows(
            2,
            2,
            &[C64::new(h, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0)],
        );
        let mut c = Circuit::new(2);
        c.push(Gate::OneQubit { wire: 0, matrix: had }).unwrap();
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        let out = run_statevector(&c).unwrap();
        let b = bell();
        for (a, e) in out.state.amplitudes().iter().zip(b.iter()) {
            assert!((a - e).norm() < 1e-14);
        }
    }

    #[test]
    fn prep_pair_writes_the_pair_state() {
        let mut c = Circuit::new(3);
        c.push(Gate::PrepPair { wires: [0, 2], state: bell() }).unwrap();
        let out = run_statevector(&c).unwrap();
        // Wires (0,2) hold (|00⟩+|11⟩)/√2, wire 1 stays |0⟩:
        // nonzero amplitudes at |000⟩ and |101⟩.
        let a = out.state.amplitudes();
        assert!((a[0b000].re - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
        assert!((a[0b101].re - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
        assert!(a.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0 < 1e-12);
    }

    #[test]
    fn isometry_gate_matches_dense_multiply() {
        // A 4×2 isometry on (input wire 1, fresh wire 0): columns are
        // orthonormal vectors; compare against direct construction.
        let r = 1.0 / 2.0f64.sqrt();
        let v = CMat::from_rows(
            4,
            2,
            &[
                C64::new(r, 0.0), ZERO,
                ZERO, C64::new(r, 0.0),
                ZERO, C64::new(0.0, -r),
                C64::new(0.0, r), ZERO,
            ],
        );
        // Input |+⟩ on wire 1.
        let h = 1.0 / 2.0f64.sqrt();
        let had = CMat::from_rows(
            2,
            2,
            &[C64::new(h, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0)],
        );
        let mut c = Circuit::new(2);
        c.push(Gate::OneQubit { wire: 1, matrix: had }).unwrap();
        c.push(Gate::Isometry { wires: vec![0, 1], inputs: vec![1], matrix: v.clone() })
            .unwrap();
        let out = run_statevector(&c).unwrap();
        // Expected: V · (|0⟩+|1⟩)/√2 over (wire0, wire1) bits.
        for r_ in 0..4 {
            let expect = (v.at(r_, 0) + v.at(r_, 1)) * h;
            assert!((out.state.amplitudes()[r_] - expect).norm() < 1e-14, "row {r_}");
        }
    }

    #[test]
    fn isometry_rejects_dirty_ancilla() {
        let x = CMat::from_rows(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let v = CMat::from_fn(4, 2, |r, c| if r == c { ONE } else { ZERO });
        let mut c = Circuit::new(2);
        c.push(Gate::OneQubit { wire: 0, matrix: x }).unwrap();
        c.push(Gate::Isometry { wires: vec![0, 1], inputs: vec![1], matrix: v }).unwrap();
        assert!(run_statevector(&c).is_err());
    }

    #[test]
    fn postselect_probability_of_bell_on_plus_plus() {
        // |++⟩ projected on Φ₊ has probability 1/2.
        let h = 1.0 / 2.0f64.sqrt();
        let had = CMat::from_rows(
            2,
            2,
            &[C64::new(h, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0)],
        );
        let mut c = Circuit::new(2);
        c.push(Gate::OneQubit { wire: 0, matrix: had.clone() }).unwrap();
        c.push(Gate::OneQubit { wire: 1, matrix: had }).unwrap();
        c.push(Gate::Postselect { wires: [0, 1], expected: bell() }).unwrap();
        let out = run_statevector(&c).unwrap();
        assert!((out.postselect_probability - 0.5).abs() < 1e-12);
        // Post-measurement state is Φ₊ itself.
        let b = bell();
        for (a, e) in out.state.amplitudes().iter().zip(b.iter()) {
            assert!((a - e).norm() < 1e-12);
        }
    }

    #[test]
    fn factor_out_recovers_subsystem() {
        let mut c = Circuit::new(3);
        c.push(Gate::PrepPair { wires: [0, 2], state: bell() }).unwrap();
        let x = CMat::from_rows(2, 2, &[ZERO, ONE, ONE, ZERO]);
        c.push(Gate::OneQubit { wire: 1, matrix: x }).unwrap();
        let out = run_statevector(&c).unwrap();
        let mut st = out.state.clone();
        st.project_pair([0, 2], &bell()).unwrap();
        let reduced = st.factor_out_pair([0, 2], &bell()).unwrap();
        assert_eq!(reduced.n_wires(), 1);
        assert!((reduced.amplitudes()[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_expectation_on_bell() {
        let mut c = Circuit::new(2);
        c.push(Gate::PrepPair { wires: [0, 1], state: bell() }).unwrap();
        let out = run_statevector(&c).unwrap();
        let zz = PauliString::from_letters(&[Pauli::Z, Pauli::Z], 1.0);
        let xx = PauliString::from_letters(&[Pauli::X, Pauli::X], 1.0);
        let yy = PauliString::from_letters(&[Pauli::Y, Pauli::Y], 1.0);
        assert!((out.state.expectation_pauli(&zz).unwrap() - 1.0).abs() < 1e-12);
        assert!((out.state.expectation_pauli(&xx).unwrap() - 1.0).abs() < 1e-12);
        assert!((out.state.expectation_pauli(&yy).unwrap() + 1.0).abs() < 1e-12);
    }
}
