use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qsim::circuit::{CircuitSpec, Gate};
use crate::qsim::pauli::{PauliBasis, PauliString};

/// Largest qubit count for statevectors (desk-scale memory budget).
pub const MAX_STATEVECTOR_QUBITS: usize = 22;

const NORM_TOL: f64 = 1e-10;

/// Pure n-qubit state as 2^n complex amplitudes.
///
/// Qubit 0 is the most significant bit of the amplitude index, so the
/// ket `|10>` lives at index 2 and bitstring formatting reads left to
/// right in qubit order.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0...0>` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis_state(n, 0)
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        check_qubit_budget(n)?;
        if index >= (1 << n) {
            return Err(Error::invalid("index", format!("{index} >= 2^{n}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n, amps })
    }

    /// Build from raw amplitudes; enforces the length and normalization
    /// invariants.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_budget(n)?;
        if amps.len() != (1 << n) {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: amps.len(),
            });
        }
        let state = Statevector { n, amps };
        let deviation = (state.norm_sqr() - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Evolve under `circuit`, leaving `self` unchanged.
    pub fn apply(&self, circuit: &CircuitSpec) -> Result<Statevector> {
        if circuit.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: circuit.n(),
            });
        }
        let mut out = self.clone();
        for gate in circuit.gates() {
            out.apply_gate(gate);
        }
        Ok(out)
    }

    fn apply_gate(&mut self, gate: &Gate) {
        match *gate {
            Gate::Ry { qubit, angle } => {
                let (s, c) = angle.sin_cos();
                self.apply_single(qubit, |a0, a1| (c * a0 - s * a1, s * a0 + c * a1));
            }
            Gate::X { qubit } => self.apply_single(qubit, |a0, a1| (a1, a0)),
            Gate::H { qubit } => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_single(qubit, |a0, a1| (r * (a0 + a1), r * (a0 - a1)));
            }
            Gate::S { qubit } => {
                let i = Complex64::new(0.0, 1.0);
                self.apply_single(qubit, |a0, a1| (a0, i * a1));
            }
            Gate::Sdg { qubit } => {
                let mi = Complex64::new(0.0, -1.0);
                self.apply_single(qubit, |a0, a1| (a0, mi * a1));
            }
            Gate::Cnot { control, target } => {
                let cbit = 1usize << (self.n - 1 - control);
                let tbit = 1usize << (self.n - 1 - target);
                for base in 0..self.amps.len() {
                    // visit each swapped pair once, from its target=0 side
                    if base & cbit != 0 && base & tbit == 0 {
                        self.amps.swap(base, base | tbit);
                    }
                }
            }
        }
    }

    fn apply_single<F>(&mut self, qubit: usize, f: F)
    where
        F: Fn(Complex64, Complex64) -> (Complex64, Complex64),
    {
        let bit = 1usize << (self.n - 1 - qubit);
        for base in 0..self.amps.len() {
            if base & bit == 0 {
                let (a0, a1) = (self.amps[base], self.amps[base | bit]);
                let (b0, b1) = f(a0, a1);
                self.amps[base] = b0;
                self.amps[base | bit] = b1;
            }
        }
    }

    /// `<psi|P|psi>`, computed by index arithmetic without forming the
    /// dense matrix of `P`.
    pub fn expval_pauli(&self, p: &PauliString) -> Result<f64> {
        use crate::qsim::pauli::PauliLetter;
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.n(),
            });
        }
        let mut xmask = 0usize; // letters X, Y flip the bit
        let mut signmask = 0usize; // letters Y, Z contribute (-1)^bit
        let mut ycount = 0u32;
        for (q, letter) in p.letters().iter().enumerate() {
            let bit = 1usize << (self.n - 1 - q);
            match letter {
                PauliLetter::I => {}
                PauliLetter::X => xmask |= bit,
                PauliLetter::Y => {
                    xmask |= bit;
                    signmask |= bit;
                    ycount += 1;
                }
                PauliLetter::Z => signmask |= bit,
            }
        }
        // P|b> = i^ycount * (-1)^popcount(b & signmask) |b ^ xmask>
        let mut acc = Complex64::new(0.0, 0.0);
        for b in 0..self.amps.len() {
            let sign = if (b & signmask).count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            acc += self.amps[b ^ xmask].conj() * self.amps[b] * sign;
        }
        let phase = Complex64::new(0.0, 1.0).powu(ycount);
        let val = phase * acc;
        debug_assert!(val.im.abs() < 1e-9, "Pauli expectation not real: {val}");
        Ok(val.re.clamp(-1.0, 1.0))
    }

    /// One Born-rule sample of all qubits in the computational basis.
    pub fn sample_bits<R: Rng>(&self, rng: &mut R) -> Vec<bool> {
        let index = self.sample_index(rng);
        (0..self.n)
            .map(|q| index & (1 << (self.n - 1 - q)) != 0)
            .collect()
    }

    /// As `sample_bits`, returning the basis-state index.
    pub fn sample_index<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen::<f64>() * self.norm_sqr();
        let mut acc = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr();
            if u < acc {
                return i;
            }
        }
        self.amps.len() - 1
    }

    /// Rotate so that a subsequent computational-basis measurement
    /// realizes a measurement in the requested per-qubit Pauli bases:
    /// H for X, S-dagger then H for Y, nothing for Z.
    pub fn rotate_to_pauli_basis(&self, bases: &[PauliBasis]) -> Result<Statevector> {
        if bases.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: bases.len(),
            });
        }
        let mut out = self.clone();
        for (q, basis) in bases.iter().enumerate() {
            match basis {
                PauliBasis::X => out.apply_gate(&Gate::H { qubit: q }),
                PauliBasis::Y => {
                    out.apply_gate(&Gate::Sdg { qubit: q });
                    out.apply_gate(&Gate::H { qubit: q });
                }
                PauliBasis::Z => {}
            }
        }
        Ok(out)
    }
}

fn check_qubit_budget(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n", "qubit count must be at least 1"));
    }
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::QubitLimit {
            role: "statevector",
            limit: MAX_STATEVECTOR_QUBITS,
            n,
        });
    }
    Ok(())
}

/// Render sampled bits as a string such as "10".
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}
