//! Quantum circuit intermediate representation.
//!
//! Two levels of abstraction share one gate list:
//!
//! * **synthesis level** — entangled-pair preparations, multi-qubit
//!   isometries with designated input wires, and Bell-basis postselection
//!   markers, exactly as the preparation protocols emit them;
//! * **native level** — CNOT, SWAP, and single-qubit unitaries, the output
//!   of the gate compiler and the router.
//!
//! Wire 0 is the most significant bit of any state vector built from the
//! circuit. Postselection is a measurement marker carrying its expected
//! outcome, not a unitary: simulators project on it, hardware would
//! discard mismatching shots, and the router never needs an edge for it.

use crate::error::{Error, Result};
use crate::linalg::CMat;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;

/// One gate in the IR.
#[derive(Clone, Debug)]
pub enum Gate {
    /// Prepare two fresh wires in an entangled pair state (4 amplitudes,
    /// wire order [w0, w1] with w0 the more significant bit).
    PrepPair { wires: [usize; 2], state: [C64; 4] },
    /// An isometry acting on `wires` (first entry = most significant row
    /// bit). The wires listed in `inputs` carry existing state; all other
    /// wires must be fresh `|0⟩` ancillas consumed by the gate.
    /// `matrix` has 2^wires.len() rows and 2^inputs.len() columns.
    Isometry { wires: Vec<usize>, inputs: Vec<usize>, matrix: CMat },
    /// Arbitrary two-qubit unitary (4×4, wire order [w0, w1] = [MSB, LSB]).
    TwoQubit { wires: [usize; 2], matrix: CMat },
    /// Arbitrary single-qubit unitary (2×2).
    OneQubit { wire: usize, matrix: CMat },
    /// Controlled-NOT.
    Cnot { control: usize, target: usize },
    /// Wire exchange (native three-CNOT cost is accounted at routing).
    Swap { wires: [usize; 2] },
    /// Measure two wires in the basis containing `expected` and keep only
    /// that outcome. `expected` is a normalized two-qubit state.
    Postselect { wires: [usize; 2], expected: [C64; 4] },
}

impl Gate {
    /// All wires the gate touches, in declaration order.
    pub fn wires(&self) -> Vec<usize> {
        match self {
            Gate::PrepPair { wires, .. }
            | Gate::TwoQubit { wires, .. }
            | Gate::Swap { wires }
            | Gate::Postselect { wires, .. } => wires.to_vec(),
            Gate::Isometry { wires, .. } => wires.clone(),
            Gate::OneQubit { wire, .. } => alloc::vec![*wire],
            Gate::Cnot { control, target } => alloc::vec![*control, *target],
        }
    }

    /// True for gates that touch two or more wires with nontrivial
    /// entangling action (what native two-qubit depth counts).
    pub fn is_entangling(&self) -> bool {
        match self {
            Gate::PrepPair { .. }
            | Gate::Isometry { .. }
            | Gate::TwoQubit { .. }
            | Gate::Cnot { .. }
            | Gate::Swap { .. } => true,
            Gate::OneQubit { .. } | Gate::Postselect { .. } => false,
        }
    }
}

/// An ordered gate list over a fixed set of wires.
#[derive(Clone, Debug, Default)]
pub struct Circuit {
    n_wires: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit on `n_wires` wires.
    pub fn new(n_wires: usize) -> Self {
        Circuit { n_wires, gates: Vec::new() }
    }

    /// Number of wires.
    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    /// The gates in application order.
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Append a gate after validating wire indices and shapes.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let ws = gate.wires();
        for &w in &ws {
            if w >= self.n_wires {
                return Err(Error::Shape("gate wire index out of range"));
            }
        }
        for (i, &a) in ws.iter().enumerate() {
            if ws[i + 1..].contains(&a) {
                return Err(Error::Shape("gate lists a wire twice"));
            }
        }
        match &gate {
            Gate::Isometry { wires, inputs, matrix } => {
                if inputs.is_empty() || inputs.len() > wires.len() {
                    return Err(Error::Shape("isometry input set must be a nonempty subset"));
                }
                for w in inputs {
                    if !wires.contains(w) {
                        return Err(Error::Shape("isometry inputs must be listed wires"));
                    }
                }
                let rows = 1usize << wires.len();
                let cols = 1usize << inputs.len();
                if matrix.rows() != rows || matrix.cols() != cols {
                    return Err(Error::Shape("isometry matrix shape mismatch"));
                }
            }
            Gate::TwoQubit { matrix, .. } => {
                if matrix.rows() != 4 || matrix.cols() != 4 {
                    return Err(Error::Shape("two-qubit gate must be 4x4"));
                }
            }
            Gate::OneQubit { matrix, .. } => {
                if matrix.rows() != 2 || matrix.cols() != 2 {
                    return Err(Error::Shape("single-qubit gate must be 2x2"));
                }
            }
            _ => {}
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Append every gate of `other` (same wire count required).
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_wires != self.n_wires {
            return Err(Error::Shape("cannot extend across different wire counts"));
        }
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(())
    }

    /// Number of CNOT gates (SWAPs count as three).
    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::Cnot { .. } => 1,
                Gate::Swap { .. } => 3,
                _ => 0,
            })
            .sum()
    }

    /// Number of entangling gates of any kind.
    pub fn entangling_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_entangling()).count()
    }

    /// Native two-qubit depth: greedy wire-frontier layering counting only
    /// entangling gates (single-qubit gates and measurement markers are
    /// free). A SWAP costs three layers (its CNOT expansion); other
    /// entangling gates cost one.
    pub fn two_qubit_depth(&self) -> usize {
        let mut frontier = alloc::vec![0usize; self.n_wires];
        let mut depth = 0;
        for g in &self.gates {
            let cost = match g {
                Gate::Swap { .. } => 3,
                _ if g.is_entangling() => 1,
                _ => 0,
            };
            if cost == 0 {
                continue;
            }
            let ws = g.wires();
            let start = ws.iter().map(|&w| frontier[w]).max().unwrap_or(0);
            let end = start + cost;
            for &w in &ws {
                frontier[w] = end;
            }
            depth = depth.max(end);
        }
        depth
    }
}
