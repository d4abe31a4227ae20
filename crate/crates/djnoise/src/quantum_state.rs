//! Dense pure-state and mixed-state simulation of a small qubit register.
//!
//! Qubit ordering is little-endian: qubit 0 is the least significant bit of
//! the basis-state index. With the conventions of this crate, qubit 0 is the
//! Deutsch-Jozsa query qubit. Gates act by direct index-pair updates rather
//! than full-matrix multiplication. All values are immutable; operations
//! return new states.

use num_complex::Complex64;

use crate::{Error, Result};

/// Exactness tolerance for norm, unitarity, trace and Hermiticity checks.
pub const EXACT_TOL: f64 = 1e-12;

/// Maximum register size supported. The Deutsch-Jozsa circuit uses 2.
pub const MAX_QUBITS: usize = 4;

/// Single- and two-qubit gates used by the circuit builder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    /// diag(1, e^{i phase}) on the target qubit.
    Rz { phase: f64, target: usize },
}

impl Gate {
    /// Qubits the gate acts on.
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) => vec![q],
            Gate::Rz { target, .. } => vec![target],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    /// Element-wise complex conjugate of the gate matrix, as a gate.
    /// H, X, Z and CNOT are real; Rz conjugates to Rz(-phase).
    pub fn conj(&self) -> Gate {
        match *self {
            Gate::Rz { phase, target } => Gate::Rz {
                phase: -phase,
                target,
            },
            g => g,
        }
    }

    fn check_targets(&self, num_qubits: usize) -> Result<()> {
        for q in self.targets() {
            if q >= num_qubits {
                return Err(Error::Argument(format!(
                    "gate target {q} out of range for {num_qubits} qubits"
                )));
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::Argument(
                    "CNOT control and target must be distinct".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Pure state of an n-qubit register, n <= 4.
#[derive(Clone, Debug)]
pub struct Statevector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// Computational basis state |basis_index> of `num_qubits` qubits.
    pub fn new_basis_state(num_qubits: usize, basis_index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Argument(format!(
                "num_qubits must be in 1..={MAX_QUBITS}, got {num_qubits}"
            )));
        }
        let dim = 1 << num_qubits;
        if basis_index >= dim {
            return Err(Error::Argument(format!(
                "basis_index {basis_index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[basis_index] = Complex64::new(1.0, 0.0);
        Ok(Statevector {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply a gate, returning the new state.
    pub fn apply_gate(&self, gate: Gate) -> Result<Self> {
        gate.check_targets(self.num_qubits)?;
        let mut amps = self.amplitudes.clone();
        apply_gate_in_place(&mut amps, gate);
        Ok(Statevector {
            num_qubits: self.num_qubits,
            amplitudes: amps,
        })
    }

    /// Marginal probabilities (p0, p1) of one qubit, tracing out the rest.
    pub fn probabilities_qubit(&self, qubit: usize) -> Result<(f64, f64)> {
        if qubit >= self.num_qubits {
            return Err(Error::Argument(format!(
                "qubit {qubit} out of range for {} qubits",
                self.num_qubits
            )));
        }
        let mask = 1usize << qubit;
        let mut p1 = 0.0;
        let mut p0 = 0.0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i & mask == 0 {
                p0 += a.norm_sqr();
            } else {
                p1 += a.norm_sqr();
            }
        }
        Ok((p0, p1))
    }

    /// Outer product |psi><psi|.
    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.amplitudes.len();
        let mut elements = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                elements[r * dim + c] = self.amplitudes[r] * self.amplitudes[c].conj();
            }
        }
        DensityMatrix {
            num_qubits: self.num_qubits,
            elements,
        }
    }
}

/// In-place gate action on a raw amplitude vector.
fn apply_gate_in_place(amps: &mut [Complex64], gate: Gate) {
    let dim = amps.len();
    match gate {
        Gate::H(q) => {
            let mask = 1 << q;
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for i in 0..dim {
                if i & mask == 0 {
                    let (a, b) = (amps[i], amps[i | mask]);
                    amps[i] = (a + b) * s;
                    amps[i | mask] = (a - b) * s;
                }
            }
        }
        Gate::X(q) => {
            let mask = 1 << q;
            for i in 0..dim {
                if i & mask == 0 {
                    amps.swap(i, i | mask);
                }
            }
        }
        Gate::Z(q) => {
            let mask = 1 << q;
            for (i, a) in amps.iter_mut().enumerate() {
                if i & mask != 0 {
                    *a = -*a;
                }
            }
        }
        Gate::Rz { phase, target } => {
            let mask = 1 << target;
            let ph = Complex64::from_polar(1.0, phase);
            for (i, a) in amps.iter_mut().enumerate() {
                if i & mask != 0 {
                    *a *= ph;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let cmask = 1 << control;
            let tmask = 1 << target;
            for i in 0..dim {
                if i & cmask != 0 && i & tmask == 0 {
                    amps.swap(i, i | tmask);
                }
            }
        }
    }
}

/// Dense 2^n x 2^n density matrix, row-major.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    num_qubits: usize,
    elements: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.elements[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        let dim = self.dim();
        (0..dim).map(|i| self.elements[i * dim + i]).sum()
    }

    /// rho -> U rho U^dag.
    pub fn apply_gate(&self, gate: Gate) -> Result<Self> {
        gate.check_targets(self.num_qubits)?;
        let dim = self.dim();
        let mut elements = self.elements.clone();
        // Left factor: U acts on each column.
        let mut buf = vec![Complex64::new(0.0, 0.0); dim];
        for c in 0..dim {
            for r in 0..dim {
                buf[r] = elements[r * dim + c];
            }
            apply_gate_in_place(&mut buf, gate);
            for r in 0..dim {
                elements[r * dim + c] = buf[r];
            }
        }
        // Right factor U^dag: conj(U) acts on each row.
        let conj_gate = gate.conj();
        for r in 0..dim {
            buf.copy_from_slice(&elements[r * dim..(r + 1) * dim]);
            apply_gate_in_place(&mut buf, conj_gate);
            elements[r * dim..(r + 1) * dim].copy_from_slice(&buf);
        }
        Ok(DensityMatrix {
            num_qubits: self.num_qubits,
            elements,
        })
    }

    /// Apply a single-qubit Kraus channel to one qubit:
    /// rho -> sum_i (E_i (x) I) rho (E_i (x) I)^dag.
    pub fn apply_kraus(&self, kraus: &KrausSet, qubit: usize) -> Result<Self> {
        if qubit >= self.num_qubits {
            return Err(Error::Argument(format!(
                "qubit {qubit} out of range for {} qubits",
                self.num_qubits
            )));
        }
        kraus.check_completeness()?;
        let dim = self.dim();
        let mask = 1usize << qubit;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for op in &kraus.operators {
            for r in 0..dim {
                let rb = (r & mask != 0) as usize;
                for c in 0..dim {
                    let cb = (c & mask != 0) as usize;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b1 in 0..2 {
                        let rr = (r & !mask) | (b1 << qubit);
                        let e_l = op[rb][b1];
                        if e_l == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for b2 in 0..2 {
                            let cc = (c & !mask) | (b2 << qubit);
                            acc += e_l * self.elements[rr * dim + cc] * op[cb][b2].conj();
                        }
                    }
                    out[r * dim + c] += acc;
                }
            }
        }
        Ok(DensityMatrix {
            num_qubits: self.num_qubits,
            elements: out,
        })
    }

    /// Marginal probabilities (p0, p1) of one qubit from the diagonal.
    pub fn probabilities_qubit(&self, qubit: usize) -> Result<(f64, f64)> {
        if qubit >= self.num_qubits {
            return Err(Error::Argument(format!(
                "qubit {qubit} out of range for {} qubits",
                self.num_qubits
            )));
        }
        let dim = self.dim();
        let mask = 1usize << qubit;
        let mut p0 = 0.0;
        let mut p1 = 0.0;
        for i in 0..dim {
            let d = self.elements[i * dim + i].re;
            if i & mask == 0 {
                p0 += d;
            } else {
                p1 += d;
            }
        }
        Ok((p0, p1))
    }
}

/// A single-qubit channel as a list of 2x2 Kraus operators.
#[derive(Clone, Debug)]
pub struct KrausSet {
    operators: Vec<[[Complex64; 2]; 2]>,
}

impl KrausSet {
    /// Tolerance on the completeness defect before the channel is rejected.
    pub const COMPLETENESS_TOL: f64 = 1e-9;

    pub fn new(operators: Vec<[[Complex64; 2]; 2]>) -> Self {
        KrausSet { operators }
    }

    pub fn operators(&self) -> &[[[Complex64; 2]; 2]] {
        &self.operators
    }

    /// Max-norm defect of sum_i E_i^dag E_i - I.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = [[Complex64::new(0.0, 0.0); 2]; 2];
        for op in &self.operators {
            for r in 0..2 {
                for c in 0..2 {
                    for k in 0..2 {
                        sum[r][c] += op[k][r].conj() * op[k][c];
                    }
                }
            }
        }
        let mut defect: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let id = if r == c { 1.0 } else { 0.0 };
                defect = defect.max((sum[r][c] - id).norm());
            }
        }
        defect
    }

    fn check_completeness(&self) -> Result<()> {
        let defect = self.completeness_defect();
        if defect > Self::COMPLETENESS_TOL {
            return Err(Error::InvalidChannel { defect });
        }
        Ok(())
    }
}
