//! The 2-qubit Deutsch-Jozsa circuit with marked noise-injection slots.
//!
//! Qubit 0 is the query qubit, qubit 1 the ancilla. The ancilla is prepared
//! in |-> by X then H; the oracle acts by phase kickback. Three noise slots
//! mark where phase errors are injected on the query qubit: after the first
//! Hadamard on it, after the oracle, and after the final Hadamard.

use crate::quantum_state::{Gate, Statevector};
use crate::{Error, Result};

/// The four 1-bit oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    /// f(x) = 0
    ConstantZero,
    /// f(x) = 1
    ConstantOne,
    /// f(x) = x
    BalancedIdentity,
    /// f(x) = NOT x
    BalancedNot,
}

impl OracleKind {
    pub const ALL: [OracleKind; 4] = [
        OracleKind::ConstantZero,
        OracleKind::ConstantOne,
        OracleKind::BalancedIdentity,
        OracleKind::BalancedNot,
    ];
}

/// One circuit element: a concrete gate or a pending noise-injection slot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CircuitOp {
    Gate(Gate),
    NoiseSlot(usize),
}

/// Ordered gate list over a fixed-size register. Slot indices appear in
/// order 0, 1, 2, ... with no gaps.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub num_qubits: usize,
    pub ops: Vec<CircuitOp>,
}

impl Circuit {
    pub fn num_noise_slots(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, CircuitOp::NoiseSlot(_)))
            .count()
    }

    /// Simulate on a statevector starting from |0...0>. Fails if the
    /// circuit still contains unbound noise slots.
    pub fn simulate(&self) -> Result<Statevector> {
        let mut state = Statevector::new_basis_state(self.num_qubits, 0)?;
        for op in &self.ops {
            match op {
                CircuitOp::Gate(g) => state = state.apply_gate(*g)?,
                CircuitOp::NoiseSlot(j) => {
                    return Err(Error::Argument(format!(
                        "cannot simulate circuit with unbound noise slot {j}"
                    )))
                }
            }
        }
        Ok(state)
    }
}

/// Build the Deutsch-Jozsa circuit for the given oracle, with three noise
/// slots on the query qubit.
pub fn build_dj_circuit(oracle: OracleKind) -> Circuit {
    let q = 0; // query
    let a = 1; // ancilla
    let mut ops = vec![
        CircuitOp::Gate(Gate::X(a)),
        CircuitOp::Gate(Gate::H(a)),
        CircuitOp::Gate(Gate::H(q)),
        CircuitOp::NoiseSlot(0),
    ];
    match oracle {
        OracleKind::ConstantZero => {}
        OracleKind::ConstantOne => ops.push(CircuitOp::Gate(Gate::X(a))),
        OracleKind::BalancedIdentity => {
            ops.push(CircuitOp::Gate(Gate::Cnot { control: q, target: a }))
        }
        OracleKind::BalancedNot => {
            ops.push(CircuitOp::Gate(Gate::X(q)));
            ops.push(CircuitOp::Gate(Gate::Cnot { control: q, target: a }));
            ops.push(CircuitOp::Gate(Gate::X(q)));
        }
    }
    ops.push(CircuitOp::NoiseSlot(1));
    ops.push(CircuitOp::Gate(Gate::H(q)));
    ops.push(CircuitOp::NoiseSlot(2));
    Circuit { num_qubits: 2, ops }
}

/// Ideal query-qubit outcome: 0 for constant oracles, 1 for balanced.
pub fn expected_outcome(oracle: OracleKind) -> u8 {
    match oracle {
        OracleKind::ConstantZero | OracleKind::ConstantOne => 0,
        OracleKind::BalancedIdentity | OracleKind::BalancedNot => 1,
    }
}

/// Replace each NoiseSlot(j) by Rz(phases[j]) on the query qubit, yielding
/// a purely unitary circuit.
pub fn bind_phase_noise(circuit: &Circuit, phases: &[f64]) -> Result<Circuit> {
    let slots = circuit.num_noise_slots();
    if phases.len() != slots {
        return Err(Error::Argument(format!(
            "expected {slots} phases, got {}",
            phases.len()
        )));
    }
    let ops = circuit
        .ops
        .iter()
        .map(|op| match op {
            CircuitOp::NoiseSlot(j) => CircuitOp::Gate(Gate::Rz {
                phase: phases[*j],
                target: 0,
            }),
            g => *g,
        })
        .collect();
    Ok(Circuit {
        num_qubits: circuit.num_qubits,
        ops,
    })
}

/// Exact success probability of the circuit with the given injected phases:
/// the probability of measuring the expected outcome on the query qubit.
pub fn success_probability(oracle: OracleKind, phases: &[f64]) -> Result<f64> {
    let circuit = bind_phase_noise(&build_dj_circuit(oracle), phases)?;
    let state = circuit.simulate()?;
    let (p0, p1) = state.probabilities_qubit(0)?;
    Ok(if expected_outcome(oracle) == 0 { p0 } else { p1 })
}
