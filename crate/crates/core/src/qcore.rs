//! Dense state vectors for up to four qubits.
//!
//! Amplitudes are indexed big-endian: qubit 0 is the most significant bit, so
//! for the four-qubit teleportation composite the index is
//! `8·i_info + 4·i_A + 2·i_B + i_C`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 4;

/// Tolerance for the `normalized` flag on a state vector.
pub const NORM_TOL: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I_UNIT: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
    normalized: bool,
}

impl StateVector {
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let expected = 1usize << n_qubits;
        if amps.len() != expected {
            return Err(Error::LengthMismatch {
                n_qubits,
                expected,
                got: amps.len(),
            });
        }
        if let Some(i) = amps.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self::from_parts(n_qubits, amps))
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(n_qubits: usize, amps: &[f64]) -> Result<Self> {
        Self::new(n_qubits, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut amps = vec![ZERO; 1usize.checked_shl(n_qubits as u32).unwrap_or(0)];
        if index >= amps.len() {
            return Err(Error::QubitOutOfRange { index, n_qubits });
        }
        amps[index] = ONE;
        Self::new(n_qubits, amps)
    }

    /// Equal-weight superposition of the given basis indices.
    pub fn uniform(n_qubits: usize, indices: &[usize]) -> Result<Self> {
        let mut amps = vec![ZERO; 1usize.checked_shl(n_qubits as u32).unwrap_or(0)];
        let w = 1.0 / (indices.len() as f64).sqrt();
        for &i in indices {
            if i >= amps.len() {
                return Err(Error::QubitOutOfRange { index: i, n_qubits });
            }
            amps[i] += Complex64::new(w, 0.0);
        }
        Self::new(n_qubits, amps)
    }

    // Internal constructor for already validated data.
    fn from_parts(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        let n2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        Self {
            n_qubits,
            amps,
            normalized: (n2 - 1.0).abs() < NORM_TOL,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Squared norm `⟨s|s⟩`.
    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, c: Complex64) -> StateVector {
        Self::from_parts(self.n_qubits, self.amps.iter().map(|a| a * c).collect())
    }

    /// Returns the normalized state, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<StateVector> {
        let n = self.norm2().sqrt();
        (n > 0.0).then(|| self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::DimensionOverflow(self.n_qubits, other.n_qubits));
        }
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(Self::from_parts(n, amps))
    }

    fn check_target(&self, index: usize) -> Result<()> {
        if index >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                index,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    fn bit(&self, index: usize, qubit: usize) -> usize {
        (index >> (self.n_qubits - 1 - qubit)) & 1
    }

    /// Applies a single-qubit operator to the `target` tensor factor.
    pub fn apply_single(&self, op: &Operator, target: usize) -> Result<StateVector> {
        self.check_target(target)?;
        let stride = 1usize << (self.n_qubits - 1 - target);
        let mut out = self.amps.clone();
        for i in (0..self.dim()).filter(|i| i & stride == 0) {
            let (a0, a1) = (self.amps[i], self.amps[i | stride]);
            let [r0, r1] = op.apply([a0, a1]);
            out[i] = r0;
            out[i | stride] = r1;
        }
        Ok(Self::from_parts(self.n_qubits, out))
    }

    /// Contracts `⟨bra|` against the factors `targets` (in that order) and
    /// returns the unnormalized residual state on the remaining qubits.
    fn contract(&self, bra: &StateVector, targets: &[usize]) -> Result<StateVector> {
        if bra.n_qubits != targets.len() {
            return Err(Error::DimensionMismatch(bra.n_qubits, targets.len()));
        }
        if !bra.is_normalized() {
            return Err(Error::BraNotNormalized);
        }
        if self.n_qubits <= targets.len() {
            return Err(Error::TooFewQubits {
                needed: targets.len() + 1,
                got: self.n_qubits,
            });
        }
        for (k, &t) in targets.iter().enumerate() {
            self.check_target(t)?;
            if targets[..k].contains(&t) {
                return Err(Error::QubitCollision(t));
            }
        }
        let rest: Vec<usize> = (0..self.n_qubits).filter(|q| !targets.contains(q)).collect();
        let mut out = vec![ZERO; 1 << rest.len()];
        for (i, amp) in self.amps.iter().enumerate() {
            let b = targets.iter().fold(0, |acc, &q| (acc << 1) | self.bit(i, q));
            let r = rest.iter().fold(0, |acc, &q| (acc << 1) | self.bit(i, q));
            out[r] += bra.amps[b].conj() * amp;
        }
        Ok(Self::from_parts(rest.len(), out))
    }

    /// Contracts a two-qubit bra against factors `(q1, q2)`. The squared
    /// norm of the result is the branch probability.
    pub fn project_pair(&self, bra: &StateVector, targets: (usize, usize)) -> Result<StateVector> {
        if self.n_qubits < 3 {
            return Err(Error::TooFewQubits {
                needed: 3,
                got: self.n_qubits,
            });
        }
        self.contract(bra, &[targets.0, targets.1])
    }

    /// Contracts a one-qubit bra against factor `target`.
    pub fn project_single(&self, bra: &StateVector, target: usize) -> Result<StateVector> {
        self.contract(bra, &[target])
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() < 1e-30 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{:0w$b}⟩", a.re, a.im, i, w = self.n_qubits)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A 2×2 complex matrix acting on one qubit, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator(pub [[Complex64; 2]; 2]);

impl Operator {
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn mul(&self, rhs: &Operator) -> Operator {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Operator(out)
    }

    pub fn dagger(&self) -> Operator {
        let m = &self.0;
        Operator([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scaled(&self, c: Complex64) -> Operator {
        let m = &self.0;
        Operator([[m[0][0] * c, m[0][1] * c], [m[1][0] * c, m[1][1] * c]])
    }

    /// Largest entry-wise deviation from another operator.
    pub fn max_diff(&self, other: &Operator) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.dagger()).max_diff(&Pauli::I.matrix()) <= tol
    }
}

/// The four single-qubit Pauli operators, with the standard phase convention
/// `σy = [[0, −i], [i, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Base-4 digit used by the correction-table encoding.
    pub fn digit(self) -> u32 {
        self as u32
    }

    pub fn from_digit(d: u32) -> Option<Pauli> {
        Self::ALL.get(d as usize).copied()
    }

    pub fn matrix(self) -> Operator {
        match self {
            Pauli::I => Operator([[ONE, ZERO], [ZERO, ONE]]),
            Pauli::X => Operator([[ZERO, ONE], [ONE, ZERO]]),
            Pauli::Y => Operator([[ZERO, -I_UNIT], [I_UNIT, ZERO]]),
            Pauli::Z => Operator([[ONE, ZERO], [ZERO, -ONE]]),
        }
    }

    /// Product label ignoring the phase: `σa·σb ∝ σc`.
    pub fn product(self, rhs: Pauli) -> Pauli {
        Pauli::from_digit(match (self, rhs) {
            (Pauli::I, p) | (p, Pauli::I) => p.digit(),
            (a, b) if a == b => 0,
            (a, b) => 6 - a.digit() - b.digit(),
        })
        .expect("digit in range")
    }

    pub fn label(self) -> &'static str {
        match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" | "1" => Ok(Pauli::I),
            "X" | "x" | "sx" | "σx" => Ok(Pauli::X),
            "Y" | "y" | "sy" | "σy" => Ok(Pauli::Y),
            "Z" | "z" | "sz" | "σz" => Ok(Pauli::Z),
            other => Err(Error::UnknownPauli(other.to_string())),
        }
    }
}
