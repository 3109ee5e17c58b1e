use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One gate of the supported set.
///
/// The rotation convention is `RY(x) = exp(-i x Y)`, i.e.
/// `RY(x)|0> = cos(x)|0> + sin(x)|1>`, so that `x = pi/2` maps `|0>` to `|1>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateRecord", into = "GateRecord")]
pub enum Gate {
    Ry { qubit: usize, angle: f64 },
    X { qubit: usize },
    H { qubit: usize },
    S { qubit: usize },
    Sdg { qubit: usize },
    Cnot { control: usize, target: usize },
}

/// Wire format: `{name, qubits, angle?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct GateRecord {
    name: String,
    qubits: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

impl From<Gate> for GateRecord {
    fn from(g: Gate) -> Self {
        let (name, qubits, angle) = match g {
            Gate::Ry { qubit, angle } => ("ry", vec![qubit], Some(angle)),
            Gate::X { qubit } => ("x", vec![qubit], None),
            Gate::H { qubit } => ("h", vec![qubit], None),
            Gate::S { qubit } => ("s", vec![qubit], None),
            Gate::Sdg { qubit } => ("sdg", vec![qubit], None),
            Gate::Cnot { control, target } => ("cnot", vec![control, target], None),
        };
        GateRecord {
            name: name.to_string(),
            qubits,
            angle,
        }
    }
}

impl TryFrom<GateRecord> for Gate {
    type Error = String;

    fn try_from(r: GateRecord) -> std::result::Result<Self, String> {
        let one = |r: &GateRecord| -> std::result::Result<usize, String> {
            if r.qubits.len() == 1 {
                Ok(r.qubits[0])
            } else {
                Err(format!("gate '{}' takes one qubit", r.name))
            }
        };
        match r.name.as_str() {
            "ry" => Ok(Gate::Ry {
                qubit: one(&r)?,
                angle: r.angle.ok_or_else(|| "ry requires an angle".to_string())?,
            }),
            "x" => Ok(Gate::X { qubit: one(&r)? }),
            "h" => Ok(Gate::H { qubit: one(&r)? }),
            "s" => Ok(Gate::S { qubit: one(&r)? }),
            "sdg" => Ok(Gate::Sdg { qubit: one(&r)? }),
            "cnot" => {
                if r.qubits.len() != 2 {
                    return Err("cnot takes [control, target]".to_string());
                }
                Ok(Gate::Cnot {
                    control: r.qubits[0],
                    target: r.qubits[1],
                })
            }
            other => Err(format!("unknown gate '{other}'")),
        }
    }
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Ry { qubit, .. }
            | Gate::X { qubit }
            | Gate::H { qubit }
            | Gate::S { qubit }
            | Gate::Sdg { qubit } => vec![qubit],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Ry { qubit, angle } => Gate::Ry {
                qubit,
                angle: -angle,
            },
            Gate::S { qubit } => Gate::Sdg { qubit },
            Gate::Sdg { qubit } => Gate::S { qubit },
            ref g => g.clone(),
        }
    }
}

/// Ordered gate list on a fixed qubit count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    n: usize,
    gates: Vec<Gate>,
}

impl CircuitSpec {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let c = CircuitSpec { n, gates };
        c.validate()?;
        Ok(c)
    }

    /// Circuit with no gates.
    pub fn empty(n: usize) -> Self {
        CircuitSpec { n, gates: vec![] }
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            for q in g.qubits() {
                if q >= self.n {
                    return Err(Error::QubitOutOfRange {
                        index: q,
                        n: self.n,
                    });
                }
            }
            if let Gate::Cnot { control, target } = g {
                if control == target {
                    return Err(Error::invalid("cnot", "control equals target"));
                }
            }
            if let Gate::Ry { angle, .. } = g {
                if !angle.is_finite() {
                    return Err(Error::invalid("angle", format!("non-finite angle {angle}")));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.gates.push(gate);
        self.validate()
    }

    /// Reversed circuit of inverted gates, so that
    /// `apply(inverse) . apply(self)` is the identity.
    pub fn inverse(&self) -> CircuitSpec {
        CircuitSpec {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Concatenation `other . self` (self runs first).
    pub fn then(&self, other: &CircuitSpec) -> Result<CircuitSpec> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(CircuitSpec { n: self.n, gates })
    }
}
