use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// A control qubit and the value it must hold.
pub type Control = (usize, bool);

/// Gate set. Rotations follow `R_a(theta) = exp(-i theta sigma_a / 2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Rx { q: usize, theta: f64 },
    Ry { q: usize, theta: f64 },
    Rz { q: usize, theta: f64 },
    H { q: usize },
    X { q: usize },
    /// `Rx(pi/2)`
    Sx { q: usize },
    /// `Rx(-pi/2)`
    Sxdg { q: usize },
    Cnot { control: usize, target: usize },
    /// One-CNOT controlled rotation: applies `X Ry(theta)` to `target` when `control == on`.
    CRot { control: usize, on: bool, target: usize, theta: f64 },
    /// `Ry(theta)` on `target` when every control matches.
    Mcry { controls: Vec<Control>, target: usize, theta: f64 },
    /// `exp(-i theta (XX + YY) / 2)`: mixes `|01>` and `|10>`, fixes `|00>` and `|11>`.
    APhi { a: usize, b: usize, theta: f64 },
    /// `APhi` applied when every control matches.
    CAPhi { controls: Vec<Control>, a: usize, b: usize, theta: f64 },
    Toffoli { c0: usize, c1: usize, target: usize },
    /// `exp(-i theta P)`
    PauliExp { pauli: PauliString, theta: f64 },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Rx { q, .. } | Gate::Ry { q, .. } | Gate::Rz { q, .. } => vec![*q],
            Gate::H { q } | Gate::X { q } | Gate::Sx { q } | Gate::Sxdg { q } => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::CRot { control, target, .. } => vec![*control, *target],
            Gate::Mcry { controls, target, .. } => controls.iter().map(|c| c.0).chain([*target]).collect(),
            Gate::APhi { a, b, .. } => vec![*a, *b],
            Gate::CAPhi { controls, a, b, .. } => controls.iter().map(|c| c.0).chain([*a, *b]).collect(),
            Gate::Toffoli { c0, c1, target } => vec![*c0, *c1, *target],
            Gate::PauliExp { pauli, .. } => pauli.support(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Gate::Rx { .. } => "rx",
            Gate::Ry { .. } => "ry",
            Gate::Rz { .. } => "rz",
            Gate::H { .. } => "h",
            Gate::X { .. } => "x",
            Gate::Sx { .. } => "sx",
            Gate::Sxdg { .. } => "sxdg",
            Gate::Cnot { .. } => "cnot",
            Gate::CRot { .. } => "crot",
            Gate::Mcry { .. } => "mcry",
            Gate::APhi { .. } => "aphi",
            Gate::CAPhi { .. } => "caphi",
            Gate::Toffoli { .. } => "toffoli",
            Gate::PauliExp { .. } => "pauli_exp",
        }
    }

    /// One-qubit gates and CNOT.
    pub fn is_primitive(&self) -> bool {
        matches!(
            self,
            Gate::Rx { .. } | Gate::Ry { .. } | Gate::Rz { .. } | Gate::H { .. } | Gate::X { .. } | Gate::Sx { .. } | Gate::Sxdg { .. } | Gate::Cnot { .. }
        )
    }

    pub fn is_single_qubit(&self) -> bool {
        self.is_primitive() && !matches!(self, Gate::Cnot { .. })
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Gate::Rx { theta, .. }
            | Gate::Ry { theta, .. }
            | Gate::Rz { theta, .. }
            | Gate::CRot { theta, .. }
            | Gate::Mcry { theta, .. }
            | Gate::APhi { theta, .. }
            | Gate::CAPhi { theta, .. }
            | Gate::PauliExp { theta, .. } => Some(*theta),
            _ => None,
        }
    }

    pub fn is_parametric(&self) -> bool {
        self.angle().is_some()
    }

    pub fn with_angle(&self, t: f64) -> Gate {
        let mut g = self.clone();
        match &mut g {
            Gate::Rx { theta, .. }
            | Gate::Ry { theta, .. }
            | Gate::Rz { theta, .. }
            | Gate::CRot { theta, .. }
            | Gate::Mcry { theta, .. }
            | Gate::APhi { theta, .. }
            | Gate::CAPhi { theta, .. }
            | Gate::PauliExp { theta, .. } => *theta = t,
            _ => {}
        }
        g
    }

    /// Operands distinct and inside an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        let qs = self.qubits();
        let mut sorted = qs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != qs.len() {
            return Err(Error::InvalidGate(format!("{self}: repeated operand")));
        }
        if let Some(q) = qs.iter().find(|&&q| q >= n) {
            return Err(Error::InvalidGate(format!("{self}: qubit {q} outside {n}-qubit register")));
        }
        if let Some(t) = self.angle() {
            if !t.is_finite() {
                return Err(Error::InvalidGate(format!("{self}: non-finite angle")));
            }
        }
        Ok(())
    }

    /// Angle-free description, used to break ties deterministically.
    pub fn descriptor(&self) -> String {
        let ctl = |cs: &[Control]| cs.iter().map(|(q, on)| format!("{q}{}", if *on { '+' } else { '-' })).collect::<Vec<_>>().join(",");
        match self {
            Gate::CRot { control, on, target, .. } => format!("crot(t={target};c={})", ctl(&[(*control, *on)])),
            Gate::Mcry { controls, target, .. } => format!("mcry(t={target};c={})", ctl(controls)),
            Gate::APhi { a, b, .. } => format!("aphi({a},{b})"),
            Gate::CAPhi { controls, a, b, .. } => format!("caphi({a},{b};c={})", ctl(controls)),
            Gate::PauliExp { pauli, .. } => format!("pexp({})", pauli.to_text(pauli.width())),
            g => format!("{}({})", g.kind(), g.qubits().iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")),
        }
    }

    /// Inverse pairs removed by the peephole pass.
    pub(crate) fn cancels_with(&self, next: &Gate) -> bool {
        match (self, next) {
            (Gate::H { q: a }, Gate::H { q: b }) | (Gate::X { q: a }, Gate::X { q: b }) => a == b,
            (Gate::Sx { q: a }, Gate::Sxdg { q: b }) | (Gate::Sxdg { q: a }, Gate::Sx { q: b }) => a == b,
            (Gate::Cnot { control: c1, target: t1 }, Gate::Cnot { control: c2, target: t2 }) => c1 == c2 && t1 == t2,
            _ => false,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.angle() {
            Some(t) => write!(f, "{}[{}]", self.descriptor(), t),
            None => write!(f, "{}", self.descriptor()),
        }
    }
}
