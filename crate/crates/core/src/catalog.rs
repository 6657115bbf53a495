//! Canonical three-qubit resource states, role assignments, correction
//! tables and the reference results the engine is checked against.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::{BellOutcome, CosenderOutcome};
use crate::qcore::{Pauli, StateVector};

pub type Rational = Ratio<i64>;

/// Acin-type canonical states plus the standard W state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum StateTypeId {
    T2aI,
    T2aII,
    T2b,
    T3a,
    T3bI,
    T3bII,
    T3bIII,
    T4a,
    T4bI,
    T4bII,
    T4c,
    T5,
    WStd,
}

impl StateTypeId {
    pub const ALL: [StateTypeId; 13] = [
        StateTypeId::T2aI,
        StateTypeId::T2aII,
        StateTypeId::T2b,
        StateTypeId::T3a,
        StateTypeId::T3bI,
        StateTypeId::T3bII,
        StateTypeId::T3bIII,
        StateTypeId::T4a,
        StateTypeId::T4bI,
        StateTypeId::T4bII,
        StateTypeId::T4c,
        StateTypeId::T5,
        StateTypeId::WStd,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StateTypeId::T2aI => "2aI",
            StateTypeId::T2aII => "2aII",
            StateTypeId::T2b => "2b",
            StateTypeId::T3a => "3a",
            StateTypeId::T3bI => "3bI",
            StateTypeId::T3bII => "3bII",
            StateTypeId::T3bIII => "3bIII",
            StateTypeId::T4a => "4a",
            StateTypeId::T4bI => "4bI",
            StateTypeId::T4bII => "4bII",
            StateTypeId::T4c => "4c",
            StateTypeId::T5 => "5",
            StateTypeId::WStd => "W-std",
        }
    }

    /// Basis kets `x_A x_B x_C` carrying equal weight.
    pub fn support(self) -> &'static [usize] {
        match self {
            StateTypeId::T2aI => &[0b000, 0b100, 0b101],
            StateTypeId::T2aII => &[0b000, 0b100, 0b110],
            StateTypeId::T2b => &[0b000, 0b111],
            StateTypeId::T3a => &[0b000, 0b101, 0b110],
            StateTypeId::T3bI => &[0b000, 0b110, 0b111],
            StateTypeId::T3bII => &[0b000, 0b100, 0b111],
            StateTypeId::T3bIII => &[0b000, 0b101, 0b111],
            StateTypeId::T4a => &[0b000, 0b100, 0b101, 0b110],
            StateTypeId::T4bI => &[0b000, 0b100, 0b110, 0b111],
            StateTypeId::T4bII => &[0b000, 0b100, 0b101, 0b111],
            StateTypeId::T4c => &[0b000, 0b101, 0b110, 0b111],
            // Five terms, so the prefactor is 1/√5.
            StateTypeId::T5 => &[0b000, 0b100, 0b101, 0b110, 0b111],
            StateTypeId::WStd => &[0b001, 0b010, 0b100],
        }
    }

    pub fn canonical_state(self) -> StateVector {
        StateVector::uniform(3, self.support()).expect("catalog supports are valid")
    }
}

pub fn canonical_state(t: StateTypeId) -> StateVector {
    t.canonical_state()
}

impl fmt::Display for StateTypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StateTypeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|t| t.tag().eq_ignore_ascii_case(s))
            .or(match s.to_ascii_lowercase().as_str() {
                "w" | "wstd" | "w_std" => Some(StateTypeId::WStd),
                "ghz" => Some(StateTypeId::T2b),
                "4b" => Some(StateTypeId::T4bI),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownStateTag(s.to_string()))
    }
}

impl From<StateTypeId> for String {
    fn from(t: StateTypeId) -> String {
        t.tag().to_string()
    }
}

impl TryFrom<String> for StateTypeId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Permutes and bit-flips the qubits of a three-qubit state: new qubit `q`
/// carries old qubit `perm[q]`, flipped when `flips[q]` is set.
pub fn permute_and_flip(state: &StateVector, perm: [usize; 3], flips: [bool; 3]) -> StateVector {
    let mut out = vec![crate::qcore::ZERO; 8];
    for (i, a) in state.amps().iter().enumerate() {
        let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
        let idx = (0..3).fold(0, |acc, q| (acc << 1) | (bits[perm[q]] ^ flips[q] as usize));
        out[idx] += a;
    }
    StateVector::new(3, out).expect("permutation preserves dimension")
}

/// Qubit maps taking `3bI` onto the other extended GHZ variants, in the
/// convention of [`permute_and_flip`].
pub const EXTENDED_GHZ_MAPS: [(StateTypeId, [usize; 3], [bool; 3]); 2] = [
    (StateTypeId::T3bII, [2, 0, 1], [true, true, true]),
    (StateTypeId::T3bIII, [0, 2, 1], [false, false, false]),
];

/// One of the three parties sharing the resource state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Position of this party's qubit in the four-qubit composite (the
    /// information qubit is 0).
    pub fn composite_qubit(self) -> usize {
        self as usize + 1
    }

    /// Position within the three-qubit resource state.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Party::A => 'A',
            Party::B => 'B',
            Party::C => 'C',
        }
    }
}

impl FromStr for Party {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" | "Alice" => Ok(Party::A),
            "B" | "b" | "Bob" => Ok(Party::B),
            "C" | "c" | "Cindy" => Ok(Party::C),
            other => Err(Error::UnknownParty(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct RoleAssignment {
    sender: Party,
    cosender: Party,
    receiver: Party,
}

impl RoleAssignment {
    pub fn new(sender: Party, cosender: Party, receiver: Party) -> Result<Self> {
        if sender == cosender || sender == receiver || cosender == receiver {
            return Err(Error::InvalidRoles(format!(
                "{},{},{} is not a permutation of A,B,C",
                sender.letter(),
                cosender.letter(),
                receiver.letter()
            )));
        }
        Ok(Self {
            sender,
            cosender,
            receiver,
        })
    }

    pub fn all() -> Vec<RoleAssignment> {
        let mut out = Vec::with_capacity(6);
        for s in Party::ALL {
            for c in Party::ALL {
                for r in Party::ALL {
                    if let Ok(roles) = Self::new(s, c, r) {
                        out.push(roles);
                    }
                }
            }
        }
        out
    }

    pub fn sender(&self) -> Party {
        self.sender
    }

    pub fn cosender(&self) -> Party {
        self.cosender
    }

    pub fn receiver(&self) -> Party {
        self.receiver
    }

    /// Same sender, co-sender and receiver exchanged.
    pub fn swapped(&self) -> RoleAssignment {
        Self {
            sender: self.sender,
            cosender: self.receiver,
            receiver: self.cosender,
        }
    }
}

impl fmt::Display for RoleAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.sender.letter(),
            self.cosender.letter(),
            self.receiver.letter()
        )
    }
}

impl FromStr for RoleAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split([',', '>', ' ']).filter(|p| !p.is_empty()).collect();
        let parties: Vec<Party> = match parts.as_slice() {
            [one] if one.len() == 3 => one.chars().map(|c| c.to_string().parse()).collect::<Result<_>>()?,
            _ => parts.iter().map(|p| p.parse()).collect::<Result<_>>()?,
        };
        match parties.as_slice() {
            [s, c, r] => Self::new(*s, *c, *r),
            _ => Err(Error::InvalidRoles(format!(
                "`{s}` must name sender, co-sender and receiver"
            ))),
        }
    }
}

impl From<RoleAssignment> for String {
    fn from(r: RoleAssignment) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for RoleAssignment {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scenario {
    pub state: StateTypeId,
    pub roles: RoleAssignment,
}

impl Scenario {
    pub fn new(state: StateTypeId, roles: RoleAssignment) -> Self {
        Self { state, roles }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.state, self.roles)
    }
}

/// Receiver corrections indexed by co-sender outcome (row `k`) and sender
/// outcome (column `j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorrectionTable {
    pub cells: [[Pauli; 4]; 2],
}

/// Number of distinct Pauli correction tables.
pub const TABLE_COUNT: u32 = 1 << 16;

impl CorrectionTable {
    pub fn new(k1: [Pauli; 4], k2: [Pauli; 4]) -> Self {
        Self { cells: [k1, k2] }
    }

    pub fn uniform(p: Pauli) -> Self {
        Self { cells: [[p; 4]; 2] }
    }

    pub fn get(&self, j: BellOutcome, k: CosenderOutcome) -> Pauli {
        self.cells[k.row()][j.column()]
    }

    /// Row-major base-4 encoding with `I=0, X=1, Y=2, Z=3`; the first cell is
    /// the most significant digit.
    pub fn code(&self) -> u32 {
        self.cells.iter().flatten().fold(0, |acc, p| acc * 4 + p.digit())
    }

    pub fn from_code(code: u32) -> Result<Self> {
        if code >= TABLE_COUNT {
            return Err(Error::TableCode(code));
        }
        let mut cells = [[Pauli::I; 4]; 2];
        for (pos, cell) in cells.iter_mut().flatten().enumerate() {
            let d = (code >> (2 * (7 - pos))) & 3;
            *cell = Pauli::from_digit(d).expect("two-bit digit");
        }
        Ok(Self { cells })
    }

    /// True when the correction ignores the co-sender's outcome.
    pub fn rows_equal(&self) -> bool {
        self.cells[0] == self.cells[1]
    }

    /// Compact form such as `IZXY/ZIYX`.
    pub fn compact(&self) -> String {
        let row = |r: &[Pauli; 4]| r.iter().map(|p| p.label()).collect::<String>();
        format!("{}/{}", row(&self.cells[0]), row(&self.cells[1]))
    }
}

impl fmt::Display for CorrectionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl FromStr for CorrectionTable {
    type Err = Error;

    /// Accepts a named protocol, eight labels (`IZXYZIYX`, `IZXY/ZIYX`,
    /// `I,Z,X,Y,Z,I,Y,X`) or a numeric code prefixed with `#`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(name) = s.parse::<ProtocolName>() {
            return Ok(name.table());
        }
        if let Some(code) = s.strip_prefix('#') {
            let code: u32 = code.parse().map_err(|_| Error::UnknownProtocol(s.to_string()))?;
            return Self::from_code(code);
        }
        let labels: Vec<Pauli> = if s.contains(',') {
            s.split([',', '/'])
                .map(|p| p.parse())
                .collect::<Result<_>>()
                .map_err(|_| Error::UnknownProtocol(s.to_string()))?
        } else {
            s.chars()
                .filter(|c| *c != '/')
                .map(|c| c.to_string().parse())
                .collect::<Result<_>>()
                .map_err(|_| Error::UnknownProtocol(s.to_string()))?
        };
        if labels.len() != 8 {
            return Err(Error::UnknownProtocol(s.to_string()));
        }
        let mut cells = [[Pauli::I; 4]; 2];
        for (cell, p) in cells.iter_mut().flatten().zip(labels) {
            *cell = p;
        }
        Ok(Self { cells })
    }
}

impl Serialize for CorrectionTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.compact())
    }
}

impl<'de> Deserialize<'de> for CorrectionTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProtocolName {
    #[serde(rename = "GHZ")]
    Ghz,
    #[serde(rename = "W-I")]
    WI,
    #[serde(rename = "W-II")]
    WII,
}

impl ProtocolName {
    pub const ALL: [ProtocolName; 3] = [ProtocolName::Ghz, ProtocolName::WI, ProtocolName::WII];

    pub fn table(self) -> CorrectionTable {
        use Pauli::*;
        match self {
            ProtocolName::Ghz => CorrectionTable::new([I, Z, X, Y], [Z, I, Y, X]),
            ProtocolName::WI => CorrectionTable::new([I, Z, X, Y], [I, Z, X, Y]),
            ProtocolName::WII => CorrectionTable::new([X, Y, I, Z], [X, Y, I, Z]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProtocolName::Ghz => "GHZ",
            ProtocolName::WI => "W-I",
            ProtocolName::WII => "W-II",
        }
    }

    pub fn family(self) -> Family {
        match self {
            ProtocolName::Ghz => Family::Ghz,
            ProtocolName::WI | ProtocolName::WII => Family::W,
        }
    }

    /// Named table matching `table` exactly, if any.
    pub fn identify(table: &CorrectionTable) -> Option<ProtocolName> {
        Self::ALL.into_iter().find(|p| p.table() == *table)
    }
}

pub fn named_protocol(name: ProtocolName) -> CorrectionTable {
    name.table()
}

impl FromStr for ProtocolName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GHZ" => Ok(ProtocolName::Ghz),
            "W-I" | "WI" | "W1" | "W-1" => Ok(ProtocolName::WI),
            "W-II" | "WII" | "W2" | "W-2" => Ok(ProtocolName::WII),
            _ => Err(Error::UnknownProtocol(s.to_string())),
        }
    }
}

impl fmt::Display for ProtocolName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "GHZ")]
    Ghz,
    W,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ghz => "GHZ",
            Family::W => "W",
            Family::Other => "other",
        })
    }
}

/// Exact coefficients `(a, b, c, d)` of
/// `F(ν, κ) = a + b·cos2ν + c·cosκ·sin2ν + d·sinκ·sin2ν`.
pub type RationalForm = [Rational; 4];

/// Optimal angles as multiples of π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestAngles {
    pub nu_over_pi: Rational,
    pub kappa_over_pi: Rational,
}

impl BestAngles {
    pub fn nu(&self) -> f64 {
        ratio_f64(self.nu_over_pi) * std::f64::consts::PI
    }

    pub fn kappa(&self) -> f64 {
        ratio_f64(self.kappa_over_pi) * std::f64::consts::PI
    }
}

pub fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviationFlag {
    /// Type 5 is printed with a 1/√4 prefactor over five terms; normalized
    /// with 1/√5 here.
    Type5Normalization,
    /// The printed protocol phrase does not name a single table; the table
    /// was resolved by sweeping candidate tables for the printed formula.
    ProtocolResolvedBySearch,
    /// The printed state is a qubit relabeling of the catalog state; the
    /// role letters refer to catalog qubits.
    PartiesRelabeled,
    /// The role assignment is not printed; it was fixed by evaluating every
    /// assignment.
    RolesResolvedByOracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceResult {
    pub id: String,
    pub group: String,
    pub case: u8,
    /// Role arrows as printed, in the source's party names.
    pub printed_roles: String,
    pub scenario: Scenario,
    /// A `↔` row: the swapped co-sender/receiver ordering is the same case.
    pub symmetric: bool,
    pub family: Family,
    /// Protocol phrase as printed ("GHZ", "W", "second W", ...).
    pub protocol_phrase: String,
    pub protocol: ProtocolName,
    pub form: RationalForm,
    pub best: Option<BestAngles>,
    pub flags: Vec<DeviationFlag>,
}

impl ReferenceResult {
    pub fn table(&self) -> CorrectionTable {
        self.protocol.table()
    }

    pub fn form_f64(&self) -> [f64; 4] {
        self.form.map(ratio_f64)
    }

    /// Maximum of the printed formula, `a + √(b²+c²+d²)`.
    pub fn f_max(&self) -> f64 {
        let [a, b, c, d] = self.form_f64();
        a + (b * b + c * c + d * d).sqrt()
    }

    pub fn is_baseline(&self) -> bool {
        self.group == "baseline"
    }
}

fn q(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

fn constant(n: i64, d: i64) -> RationalForm {
    [q(n, d), q(0, 1), q(0, 1), q(0, 1)]
}

struct Row {
    id: &'static str,
    group: &'static str,
    case: u8,
    printed: &'static str,
    state: StateTypeId,
    roles: &'static str,
    symmetric: bool,
    phrase: &'static str,
    protocol: ProtocolName,
    form: RationalForm,
    best_nu: Option<Rational>,
    flags: &'static [DeviationFlag],
}

/// Reference results: the two symmetric-state baselines followed by every
/// row of the consolidated three-party table, in printed order.
///
/// The extended GHZ rows use `3bI`; the printed state
/// `|000⟩+|011⟩+|111⟩` (Alice, Bob, Cindy) is `3bI` read with Alice on
/// qubit C, Bob on B and Cindy on A.
pub fn scenario_registry() -> Vec<ReferenceResult> {
    use DeviationFlag::*;
    use ProtocolName::*;
    use StateTypeId::*;

    let ghz_a = [q(5, 9), q(0, 1), q(2, 9), q(0, 1)];
    let b4_1 = [q(1, 2), q(0, 1), q(1, 6), q(0, 1)];
    let b4_3 = [q(7, 12), q(1, 6), q(1, 6), q(0, 1)];
    let quarter = Some(q(1, 4));
    let eighth = Some(q(1, 8));
    let relabel: &[DeviationFlag] = &[PartiesRelabeled];
    let relabel_resolved: &[DeviationFlag] = &[PartiesRelabeled, ProtocolResolvedBySearch];
    let resolved: &[DeviationFlag] = &[ProtocolResolvedBySearch];
    let t5: &[DeviationFlag] = &[Type5Normalization];
    let t5_resolved: &[DeviationFlag] = &[Type5Normalization, ProtocolResolvedBySearch];

    #[rustfmt::skip]
    let rows = [
        Row { id: "ghz", group: "baseline", case: 1, printed: "sender → co-sender → receiver", state: T2b, roles: "A,B,C", symmetric: false, phrase: "GHZ", protocol: Ghz, form: [q(2, 3), q(0, 1), q(1, 3), q(0, 1)], best_nu: quarter, flags: &[] },
        Row { id: "w", group: "baseline", case: 2, printed: "sender → co-sender → receiver", state: WStd, roles: "A,B,C", symmetric: false, phrase: "W", protocol: WII, form: constant(7, 9), best_nu: None, flags: &[RolesResolvedByOracle] },

        Row { id: "ext-ghz-1", group: "extended GHZ", case: 1, printed: "Alice(sender) → Bob ↔ Cindy", state: T3bI, roles: "C,B,A", symmetric: true, phrase: "GHZ", protocol: Ghz, form: ghz_a, best_nu: quarter, flags: relabel },
        Row { id: "ext-ghz-2", group: "extended GHZ", case: 2, printed: "Bob(sender) → Alice(co-sender) → Cindy(receiver)", state: T3bI, roles: "B,C,A", symmetric: false, phrase: "W", protocol: WI, form: constant(8, 9), best_nu: None, flags: relabel_resolved },
        Row { id: "ext-ghz-3", group: "extended GHZ", case: 3, printed: "Bob(sender) → Cindy(co-sender) → Alice(receiver)", state: T3bI, roles: "B,A,C", symmetric: false, phrase: "GHZ", protocol: Ghz, form: ghz_a, best_nu: quarter, flags: relabel },

        Row { id: "4a-1", group: "type 4a", case: 1, printed: "Alice(sender) → Bob ↔ Cindy", state: T4a, roles: "A,B,C", symmetric: true, phrase: "W", protocol: WI, form: constant(2, 3), best_nu: None, flags: resolved },
        Row { id: "4a-2", group: "type 4a", case: 2, printed: "Bob(sender) → Alice(co-sender) → Cindy(receiver)", state: T4a, roles: "B,A,C", symmetric: false, phrase: "second W", protocol: WII, form: constant(2, 3), best_nu: None, flags: resolved },
        Row { id: "4a-3", group: "type 4a", case: 3, printed: "Bob(sender) → Cindy(co-sender) → Alice(receiver)", state: T4a, roles: "B,C,A", symmetric: false, phrase: "W", protocol: WI, form: constant(2, 3), best_nu: None, flags: resolved },

        Row { id: "4b-1", group: "type 4b", case: 1, printed: "Alice(sender) → Bob(co-sender) ↔ Cindy(receiver)", state: T4bI, roles: "A,B,C", symmetric: false, phrase: "GHZ", protocol: Ghz, form: b4_1, best_nu: quarter, flags: &[] },
        Row { id: "4b-2", group: "type 4b", case: 2, printed: "Alice(sender) → Cindy(co-sender) → Bob(receiver)", state: T4bI, roles: "A,C,B", symmetric: false, phrase: "W", protocol: WI, form: constant(3, 4), best_nu: None, flags: resolved },
        Row { id: "4b-3", group: "type 4b", case: 3, printed: "Bob(sender) → Alice → Cindy", state: T4bI, roles: "B,A,C", symmetric: false, phrase: "GHZ", protocol: Ghz, form: b4_3, best_nu: eighth, flags: &[] },
        Row { id: "4b-4", group: "type 4b", case: 4, printed: "Bob(sender) → Cindy(co-sender) → Alice(receiver)", state: T4bI, roles: "B,C,A", symmetric: false, phrase: "W", protocol: WI, form: constant(3, 4), best_nu: None, flags: resolved },
        Row { id: "4b-5", group: "type 4b", case: 5, printed: "Cindy(sender) → Alice(co-sender) → Bob(receiver)", state: T4bI, roles: "C,A,B", symmetric: false, phrase: "GHZ", protocol: Ghz, form: b4_3, best_nu: eighth, flags: &[] },
        Row { id: "4b-6", group: "type 4b", case: 6, printed: "Cindy(sender) → Bob(co-sender) → Alice(receiver)", state: T4bI, roles: "C,B,A", symmetric: false, phrase: "GHZ", protocol: Ghz, form: b4_1, best_nu: quarter, flags: &[] },

        Row { id: "4c-1", group: "type 4c", case: 1, printed: "Alice(sender) → Bob ↔ Cindy", state: T4c, roles: "A,B,C", symmetric: true, phrase: "W", protocol: WI, form: constant(3, 4), best_nu: None, flags: resolved },
        Row { id: "4c-2", group: "type 4c", case: 2, printed: "Bob(sender) → Alice(co-sender) → Cindy(receiver)", state: T4c, roles: "B,A,C", symmetric: false, phrase: "second GHZ", protocol: Ghz, form: b4_1, best_nu: quarter, flags: resolved },
        Row { id: "4c-3", group: "type 4c", case: 3, printed: "Bob(sender) → Cindy(co-sender) → Alice(receiver)", state: T4c, roles: "B,C,A", symmetric: false, phrase: "W", protocol: WI, form: constant(3, 4), best_nu: None, flags: resolved },

        Row { id: "5-1", group: "type 5", case: 1, printed: "Alice(sender) → Bob ↔ Cindy", state: T5, roles: "A,B,C", symmetric: true, phrase: "W", protocol: WI, form: constant(2, 3), best_nu: None, flags: t5_resolved },
        Row { id: "5-2", group: "type 5", case: 2, printed: "Bob(sender) → Alice(co-sender) → Cindy(receiver)", state: T5, roles: "B,A,C", symmetric: false, phrase: "GHZ", protocol: Ghz, form: [q(8, 15), q(2, 15), q(2, 15), q(0, 1)], best_nu: eighth, flags: t5 },
        Row { id: "5-3", group: "type 5", case: 3, printed: "Bob(sender) → Cindy(co-sender) → Alice(receiver)", state: T5, roles: "B,C,A", symmetric: false, phrase: "W", protocol: WI, form: constant(2, 3), best_nu: None, flags: t5_resolved },
    ];

    rows.into_iter()
        .map(|r| ReferenceResult {
            id: r.id.to_string(),
            group: r.group.to_string(),
            case: r.case,
            printed_roles: r.printed.to_string(),
            scenario: Scenario::new(r.state, r.roles.parse().expect("registry roles are valid")),
            symmetric: r.symmetric,
            family: r.protocol.family(),
            protocol_phrase: r.phrase.to_string(),
            protocol: r.protocol,
            form: r.form,
            best: r.best_nu.map(|nu_over_pi| BestAngles {
                nu_over_pi,
                kappa_over_pi: q(0, 1),
            }),
            flags: r.flags.to_vec(),
        })
        .collect()
}

/// Looks up a registry entry by id.
pub fn reference(id: &str) -> Option<ReferenceResult> {
    scenario_registry().into_iter().find(|r| r.id == id)
}
