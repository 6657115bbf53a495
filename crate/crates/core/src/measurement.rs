//! Measurement resources: the Bell basis for the sender, the `(ν, κ)` basis
//! for the co-sender, and Bloch-angle information states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qcore::{StateVector, ZERO};

/// Sender outcome `j`: 1 ↔ Φ+, 2 ↔ Φ−, 3 ↔ Ψ+, 4 ↔ Ψ−.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum BellOutcome {
    PhiPlus = 1,
    PhiMinus = 2,
    PsiPlus = 3,
    PsiMinus = 4,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    pub fn j(self) -> u8 {
        self as u8
    }

    /// Zero-based column in a correction table.
    pub fn column(self) -> usize {
        self as usize - 1
    }

    pub fn from_j(j: u8) -> Option<BellOutcome> {
        Self::ALL.get((j as usize).wrapping_sub(1)).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "Φ+",
            BellOutcome::PhiMinus => "Φ−",
            BellOutcome::PsiPlus => "Ψ+",
            BellOutcome::PsiMinus => "Ψ−",
        }
    }
}

impl From<BellOutcome> for u8 {
    fn from(b: BellOutcome) -> u8 {
        b.j()
    }
}

impl TryFrom<u8> for BellOutcome {
    type Error = String;

    fn try_from(j: u8) -> Result<Self, String> {
        BellOutcome::from_j(j).ok_or_else(|| format!("Bell outcome j={j} outside 1..=4"))
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Co-sender outcome `k`: 1 ↔ μ+, 2 ↔ μ−.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum CosenderOutcome {
    Plus = 1,
    Minus = 2,
}

impl CosenderOutcome {
    pub const ALL: [CosenderOutcome; 2] = [CosenderOutcome::Plus, CosenderOutcome::Minus];

    pub fn k(self) -> u8 {
        self as u8
    }

    pub fn row(self) -> usize {
        self as usize - 1
    }
}

impl From<CosenderOutcome> for u8 {
    fn from(k: CosenderOutcome) -> u8 {
        k.k()
    }
}

impl TryFrom<u8> for CosenderOutcome {
    type Error = String;

    fn try_from(k: u8) -> Result<Self, String> {
        match k {
            1 => Ok(CosenderOutcome::Plus),
            2 => Ok(CosenderOutcome::Minus),
            _ => Err(format!("co-sender outcome k={k} outside 1..=2")),
        }
    }
}

pub fn bell_state(j: BellOutcome) -> StateVector {
    let h = FRAC_1_SQRT_2;
    let amps = match j {
        BellOutcome::PhiPlus => [h, 0.0, 0.0, h],
        BellOutcome::PhiMinus => [h, 0.0, 0.0, -h],
        BellOutcome::PsiPlus => [0.0, h, h, 0.0],
        BellOutcome::PsiMinus => [0.0, h, -h, 0.0],
    };
    StateVector::from_real(2, &amps).expect("Bell amplitudes are valid")
}

/// Single-qubit projective basis measured by the co-sender.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CosenderBasis {
    pub nu: f64,
    pub kappa: f64,
}

impl CosenderBasis {
    pub fn new(nu: f64, kappa: f64) -> Self {
        Self { nu, kappa }
    }

    /// `(|μ+⟩, |μ−⟩)` with `|μ+⟩ = sinν|0⟩ + e^{iκ}cosν|1⟩` and
    /// `|μ−⟩ = cosν|0⟩ − e^{iκ}sinν|1⟩`.
    pub fn states(&self) -> (StateVector, StateVector) {
        let (s, c) = self.nu.sin_cos();
        let phase = Complex64::from_polar(1.0, self.kappa);
        let plus = StateVector::new(1, vec![Complex64::new(s, 0.0), phase * c]);
        let minus = StateVector::new(1, vec![Complex64::new(c, 0.0), -phase * s]);
        (
            plus.expect("finite angles give valid amplitudes"),
            minus.expect("finite angles give valid amplitudes"),
        )
    }

    pub fn state(&self, k: CosenderOutcome) -> StateVector {
        let (plus, minus) = self.states();
        match k {
            CosenderOutcome::Plus => plus,
            CosenderOutcome::Minus => minus,
        }
    }
}

pub fn cosender_states(basis: CosenderBasis) -> (StateVector, StateVector) {
    basis.states()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochAngles {
    pub theta: f64,
    pub phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`
pub fn bloch_state(angles: BlochAngles) -> StateVector {
    let (s, c) = (angles.theta / 2.0).sin_cos();
    StateVector::new(1, vec![Complex64::new(c, 0.0), Complex64::from_polar(s, angles.phi)])
        .expect("finite angles give valid amplitudes")
}

/// The six Pauli eigenstates `|0⟩, |1⟩, |±⟩, |±i⟩`; a spherical 2-design.
pub fn pauli_eigenstates() -> [StateVector; 6] {
    let h = FRAC_1_SQRT_2;
    let mk = |a: Complex64, b: Complex64| StateVector::new(1, vec![a, b]).expect("valid");
    let r = |x: f64| Complex64::new(x, 0.0);
    [
        mk(r(1.0), ZERO),
        mk(ZERO, r(1.0)),
        mk(r(h), r(h)),
        mk(r(h), r(-h)),
        mk(r(h), Complex64::new(0.0, h)),
        mk(r(h), Complex64::new(0.0, -h)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn assert_amps(s: &StateVector, want: &[Complex64], tol: f64) {
        for (a, b) in s.amps().iter().zip(want) {
            assert!((a - b).norm() <= tol, "{s} vs {want:?}");
        }
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn bell_examples() {
        let h = FRAC_1_SQRT_2;
        assert_amps(&bell_state(BellOutcome::PhiPlus), &[r(h), r(0.0), r(0.0), r(h)], 0.0);
        assert_amps(&bell_state(BellOutcome::PsiMinus), &[r(0.0), r(h), r(-h), r(0.0)], 0.0);
        for a in BellOutcome::ALL {
            for b in BellOutcome::ALL {
                let g = bell_state(a).inner(&bell_state(b)).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g - r(want)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn outcome_labels() {
        assert_eq!(BellOutcome::from_j(1), Some(BellOutcome::PhiPlus));
        assert_eq!(BellOutcome::from_j(4), Some(BellOutcome::PsiMinus));
        assert_eq!(BellOutcome::from_j(0), None);
        assert_eq!(BellOutcome::from_j(5), None);
        assert_eq!(BellOutcome::PsiPlus.column(), 2);
        assert_eq!(CosenderOutcome::Minus.row(), 1);
    }

    #[test]
    fn cosender_examples() {
        let (p, m) = CosenderBasis::new(0.0, 0.0).states();
        assert_amps(&p, &[r(0.0), r(1.0)], 1e-16);
        assert_amps(&m, &[r(1.0), r(0.0)], 1e-16);

        let (p, m) = CosenderBasis::new(FRAC_PI_4, 0.0).states();
        let h = FRAC_1_SQRT_2;
        assert_amps(&p, &[r(h), r(h)], 1e-15);
        assert_amps(&m, &[r(h), r(-h)], 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let b = CosenderBasis::new(rng.random_range(-PI..PI), rng.random_range(0.0..2.0 * PI));
            let (p, m) = b.states();
            assert!(p.inner(&m).unwrap().norm() < 1e-12);
            assert!(p.is_normalized() && m.is_normalized());
        }
    }

    #[test]
    fn cosender_basis_is_complete_and_periodic() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let nu = rng.random_range(-PI..PI);
            let kappa = rng.random_range(0.0..2.0 * PI);
            let (p, m) = CosenderBasis::new(nu, kappa).states();
            // Σ|μ⟩⟨μ| = I, checked entry-wise
            for a in 0..2 {
                for b in 0..2 {
                    let e = p.amp(a) * p.amp(b).conj() + m.amp(a) * m.amp(b).conj();
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((e - r(want)).norm() < 1e-12);
                }
            }
            let (p2, m2) = CosenderBasis::new(nu + PI, kappa).states();
            assert!((p.inner(&p2).unwrap().norm() - 1.0).abs() < 1e-12);
            assert!((m.inner(&m2).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_completeness_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let amps: Vec<Complex64> = (0..4)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let s = StateVector::new(2, amps).unwrap().normalized().unwrap();
            // Σ_j |Bell_j⟩⟨Bell_j|s⟩ reproduces s
            let mut acc = [ZERO; 4];
            for j in BellOutcome::ALL {
                let b = bell_state(j);
                let ov = b.inner(&s).unwrap();
                for (x, a) in acc.iter_mut().zip(b.amps()) {
                    *x += a * ov;
                }
            }
            assert_amps(&s, &acc, 1e-12);
        }
    }

    #[test]
    fn bloch_examples() {
        assert_amps(&bloch_state(BlochAngles::new(0.0, 1.3)), &[r(1.0), r(0.0)], 0.0);
        let s = bloch_state(BlochAngles::new(PI, FRAC_PI_2));
        assert!((s.amp(0)).norm() < 1e-16);
        assert!((s.amp(1) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let h = FRAC_1_SQRT_2;
        assert_amps(&bloch_state(BlochAngles::new(FRAC_PI_2, 0.0)), &[r(h), r(h)], 1e-15);
        assert!(bloch_state(BlochAngles::new(1.1, 4.0)).is_normalized());
    }

    #[test]
    fn pauli_eigenstates_are_normalized() {
        for s in pauli_eigenstates() {
            assert!(s.is_normalized());
        }
    }
}
