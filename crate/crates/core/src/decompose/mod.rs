//! Element decompositions into idempotent-like parts plus a nilpotent.
//!
//! [`decompose`] tries the constructive route first (lifting modulo
//! nilpotents over the 2/3/5 splitting of the ring) and falls back to
//! [`brute_force_decompose`], an exhaustive search that serves as the oracle.

mod lift;
mod search;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::classify::{self, is_nilpotent};
use crate::ring::{zint_members, Elem, FiniteRing};

pub use lift::{
    crt_split_235, lift_idempotent, lift_idempotent_traced, lift_tripotent, quintic_witness, CrtSplit, Lift,
};
pub use search::brute_force_decompose;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    TwoTripotents,
    FourIdempotents,
    ThreeIdempotents,
    TwoIdempotents,
    OneIdempotent,
    TwoTwoIdempotents,
    OneTwoIdempotent,
    SquareTwoIdempotent,
    FourthPowerIdempotent,
    QuinticWitness,
}

/// The identity every summand of a given kind must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartIdentity {
    Idempotent,
    Tripotent,
    TwoIdempotent,
    Quintic,
}

impl PartIdentity {
    pub fn holds(self, ring: &FiniteRing, e: Elem) -> bool {
        match self {
            PartIdentity::Idempotent => classify::is_idempotent(ring, e),
            PartIdentity::Tripotent => classify::is_tripotent(ring, e),
            PartIdentity::TwoIdempotent => classify::is_two_idempotent(ring, e),
            PartIdentity::Quintic => classify::is_quintic_root(ring, e),
        }
    }

    pub(crate) fn candidates(self, ring: &FiniteRing) -> &[Elem] {
        match self {
            PartIdentity::Idempotent => classify::idempotents(ring),
            PartIdentity::Tripotent => classify::tripotents(ring),
            PartIdentity::TwoIdempotent => classify::two_idempotents(ring),
            PartIdentity::Quintic => classify::quintic_roots(ring),
        }
    }
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::TwoTripotents,
        Kind::FourIdempotents,
        Kind::ThreeIdempotents,
        Kind::TwoIdempotents,
        Kind::OneIdempotent,
        Kind::TwoTwoIdempotents,
        Kind::OneTwoIdempotent,
        Kind::SquareTwoIdempotent,
        Kind::FourthPowerIdempotent,
        Kind::QuinticWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::TwoTripotents => "two_tripotents",
            Kind::FourIdempotents => "four_idempotents",
            Kind::ThreeIdempotents => "three_idempotents",
            Kind::TwoIdempotents => "two_idempotents",
            Kind::OneIdempotent => "one_idempotent",
            Kind::TwoTwoIdempotents => "two_2idempotents",
            Kind::OneTwoIdempotent => "one_2idempotent",
            Kind::SquareTwoIdempotent => "square_2idempotent",
            Kind::FourthPowerIdempotent => "fourth_power_idempotent",
            Kind::QuinticWitness => "quintic_witness",
        }
    }

    pub fn part_count(self) -> usize {
        match self {
            Kind::FourIdempotents => 4,
            Kind::ThreeIdempotents => 3,
            Kind::TwoTripotents | Kind::TwoIdempotents | Kind::TwoTwoIdempotents => 2,
            _ => 1,
        }
    }

    pub fn part_identity(self) -> PartIdentity {
        match self {
            Kind::TwoTripotents => PartIdentity::Tripotent,
            Kind::FourIdempotents
            | Kind::ThreeIdempotents
            | Kind::TwoIdempotents
            | Kind::OneIdempotent
            | Kind::FourthPowerIdempotent => PartIdentity::Idempotent,
            Kind::TwoTwoIdempotents | Kind::OneTwoIdempotent | Kind::SquareTwoIdempotent => PartIdentity::TwoIdempotent,
            Kind::QuinticWitness => PartIdentity::Quintic,
        }
    }

    /// The element being decomposed: `a`, or `a^2` / `a^4` for the power kinds.
    pub fn target(self, ring: &FiniteRing, a: Elem) -> Elem {
        match self {
            Kind::SquareTwoIdempotent => ring.pow(a, 2),
            Kind::FourthPowerIdempotent => ring.pow(a, 4),
            _ => a,
        }
    }

    /// Statements phrased with membership in `Z[a]` default to `in_za`; the
    /// ones phrased with "that commute" default to `commuting`.
    pub fn default_scope(self) -> Scope {
        match self {
            Kind::FourIdempotents | Kind::TwoTwoIdempotents | Kind::SquareTwoIdempotent | Kind::QuinticWitness => {
                Scope::InZa
            }
            _ => Scope::Commuting,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = DecomposeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| DecomposeError::UnknownKind(s.to_string()))
    }
}

/// Constraints tying the summands to the decomposed element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scope {
    /// Every part and the nilpotent lie in `Z[a]`.
    InZa,
    /// Parts, nilpotent and target commute pairwise.
    Commuting,
    Unrestricted,
}

impl Scope {
    pub const ALL: [Scope; 3] = [Scope::InZa, Scope::Commuting, Scope::Unrestricted];

    pub fn name(self) -> &'static str {
        match self {
            Scope::InZa => "in_za",
            Scope::Commuting => "commuting",
            Scope::Unrestricted => "unrestricted",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = DecomposeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scope::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| DecomposeError::UnknownScope(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidDecomposition {
    #[error("element does not belong to this ring")]
    ForeignElement,
    #[error("expected {expected} part(s), got {got}")]
    PartCount { expected: usize, got: usize },
    #[error("part {index} does not satisfy the {kind} identity")]
    PartIdentity { index: usize, kind: Kind },
    #[error("parts and nilpotent do not sum to the target")]
    SumMismatch,
    #[error("nilpotent part is not nilpotent")]
    NotNilpotent,
    #[error("parts, nilpotent and target do not commute pairwise")]
    NotCommuting,
    #[error("a part or the nilpotent lies outside Z[a]")]
    OutsideZa,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("element does not belong to this ring")]
    ForeignElement,
    #[error("unknown decomposition kind `{0}`")]
    UnknownKind(String),
    #[error("unknown scope `{0}`")]
    UnknownScope(String),
    #[error("cannot lift: {0}")]
    Lift(String),
    #[error("2 is not a unit")]
    TwoNotUnit,
    #[error("30 is not nilpotent")]
    ThirtyNotNilpotent,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no constructive route for {0}")]
    NoConstruction(Kind),
    #[error(transparent)]
    Invalid(#[from] InvalidDecomposition),
}

/// A validated decomposition `target = parts[0] + ... + parts[k-1] + nilpotent`.
///
/// Only the checked constructors produce values of this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    kind: Kind,
    scope: Scope,
    element: Elem,
    target: Elem,
    parts: Vec<Elem>,
    nilpotent: Elem,
}

impl Decomposition {
    /// Builds the decomposition of `element` with the given parts; the
    /// nilpotent remainder is `target - sum(parts)`.
    pub fn new(
        ring: &FiniteRing,
        element: Elem,
        kind: Kind,
        scope: Scope,
        parts: Vec<Elem>,
    ) -> Result<Self, InvalidDecomposition> {
        if !ring.contains(element) || parts.iter().any(|p| !ring.contains(*p)) {
            return Err(InvalidDecomposition::ForeignElement);
        }
        let target = kind.target(ring, element);
        let sum = parts.iter().fold(ring.zero(), |acc, p| ring.add(acc, *p));
        let nilpotent = ring.sub(target, sum);
        Self::with_nilpotent(ring, element, kind, scope, parts, nilpotent)
    }

    /// Like [`Decomposition::new`] but with an explicit nilpotent part, which
    /// must make the sum come out right.
    pub fn with_nilpotent(
        ring: &FiniteRing,
        element: Elem,
        kind: Kind,
        scope: Scope,
        parts: Vec<Elem>,
        nilpotent: Elem,
    ) -> Result<Self, InvalidDecomposition> {
        if !ring.contains(element) || !ring.contains(nilpotent) || parts.iter().any(|p| !ring.contains(*p)) {
            return Err(InvalidDecomposition::ForeignElement);
        }
        let d = Decomposition {
            kind,
            scope,
            element,
            target: kind.target(ring, element),
            parts,
            nilpotent,
        };
        d.validate(ring)?;
        Ok(d)
    }

    /// Re-checks every constraint against `ring`.
    pub fn validate(&self, ring: &FiniteRing) -> Result<(), InvalidDecomposition> {
        let all = || {
            self.parts
                .iter()
                .copied()
                .chain([self.nilpotent, self.target, self.element])
        };
        if all().any(|e| !ring.contains(e)) {
            return Err(InvalidDecomposition::ForeignElement);
        }
        if self.parts.len() != self.kind.part_count() {
            return Err(InvalidDecomposition::PartCount {
                expected: self.kind.part_count(),
                got: self.parts.len(),
            });
        }
        let identity = self.kind.part_identity();
        if let Some(index) = self.parts.iter().position(|p| !identity.holds(ring, *p)) {
            return Err(InvalidDecomposition::PartIdentity { index, kind: self.kind });
        }
        let sum = self.parts.iter().fold(self.nilpotent, |acc, p| ring.add(acc, *p));
        if self.target != self.kind.target(ring, self.element) || sum != self.target {
            return Err(InvalidDecomposition::SumMismatch);
        }
        if !is_nilpotent(ring, self.nilpotent) {
            return Err(InvalidDecomposition::NotNilpotent);
        }
        match self.scope {
            Scope::Unrestricted => {}
            Scope::Commuting => {
                let items: Vec<Elem> = self
                    .parts
                    .iter()
                    .copied()
                    .chain([self.nilpotent, self.target])
                    .collect();
                for (i, &x) in items.iter().enumerate() {
                    if items[i + 1..].iter().any(|&y| !ring.commute(x, y)) {
                        return Err(InvalidDecomposition::NotCommuting);
                    }
                }
            }
            Scope::InZa => {
                let zint = zint_members(ring, self.element);
                if self.parts.iter().chain([&self.nilpotent]).any(|p| !zint[p.index()]) {
                    return Err(InvalidDecomposition::OutsideZa);
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn element(&self) -> Elem {
        self.element
    }

    pub fn target(&self) -> Elem {
        self.target
    }

    pub fn parts(&self) -> &[Elem] {
        &self.parts
    }

    pub fn nilpotent(&self) -> Elem {
        self.nilpotent
    }
}

/// Constructive decomposition where one is known, otherwise the exhaustive
/// oracle. `Ok(None)` means no decomposition of this kind and scope exists.
pub fn decompose(
    ring: &FiniteRing,
    a: Elem,
    kind: Kind,
    scope: Scope,
) -> Result<Option<Decomposition>, DecomposeError> {
    if !ring.contains(a) {
        return Err(DecomposeError::ForeignElement);
    }
    let target = kind.target(ring, a);
    if kind.part_count() == 1 && kind.part_identity().holds(ring, target) {
        if let Ok(d) = Decomposition::new(ring, a, kind, scope, vec![target]) {
            return Ok(Some(d));
        }
    }
    if let Ok(parts) = lift::constructive_parts(ring, a, kind) {
        if let Ok(d) = Decomposition::new(ring, a, kind, scope, parts) {
            return Ok(Some(d));
        }
    }
    Ok(brute_force_decompose(ring, a, kind, scope))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn parts(d: &Decomposition) -> Vec<usize> {
        d.parts().iter().map(|e| e.index()).collect()
    }

    #[test]
    fn kind_and_scope_names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
        }
        for s in Scope::ALL {
            assert_eq!(s.name().parse::<Scope>().unwrap(), s);
        }
        assert_eq!(
            "five_idempotents".parse::<Kind>(),
            Err(DecomposeError::UnknownKind("five_idempotents".into()))
        );
    }

    #[test]
    fn constructive_examples() {
        let z5 = z(5);
        let four = z5.int_image(4);
        let d = decompose(&z5, four, Kind::FourIdempotents, Scope::InZa)
            .unwrap()
            .unwrap();
        assert_eq!(parts(&d), vec![1, 1, 1, 1]);
        assert_eq!(d.nilpotent(), z5.zero());
        assert!(decompose(&z5, four, Kind::ThreeIdempotents, Scope::Commuting)
            .unwrap()
            .is_none());

        let z25 = z(25);
        let three = z25.int_image(3);
        let d = decompose(&z25, three, Kind::TwoTwoIdempotents, Scope::Commuting)
            .unwrap()
            .unwrap();
        assert_eq!(parts(&d), vec![24, 24]);
        assert_eq!(d.nilpotent().index(), 5);
        let d = decompose(&z25, three, Kind::SquareTwoIdempotent, Scope::InZa)
            .unwrap()
            .unwrap();
        assert_eq!(d.target().index(), 9);
        assert_eq!(parts(&d), vec![24]);
        assert_eq!(d.nilpotent().index(), 10);
        let d = decompose(&z25, three, Kind::FourthPowerIdempotent, Scope::Commuting)
            .unwrap()
            .unwrap();
        assert_eq!(d.target().index(), 6);
        assert_eq!(parts(&d), vec![1]);
        assert_eq!(d.nilpotent().index(), 5);

        let z4 = z(4);
        let d = decompose(&z4, z4.int_image(2), Kind::OneTwoIdempotent, Scope::Commuting)
            .unwrap()
            .unwrap();
        assert_eq!(parts(&d), vec![2]);
        assert_eq!(d.nilpotent(), z4.zero());
    }

    #[test]
    fn invalid_decompositions_are_rejected() {
        let z25 = z(25);
        let three = z25.int_image(3);
        let e = |i| z25.int_image(i);
        assert_eq!(
            Decomposition::new(&z25, three, Kind::TwoTwoIdempotents, Scope::Commuting, vec![e(2), e(1)]),
            Err(InvalidDecomposition::PartIdentity {
                index: 0,
                kind: Kind::TwoTwoIdempotents
            })
        );
        assert_eq!(
            Decomposition::new(&z25, three, Kind::TwoTwoIdempotents, Scope::Commuting, vec![e(1), e(1)]),
            Err(InvalidDecomposition::NotNilpotent)
        );
        assert_eq!(
            Decomposition::with_nilpotent(
                &z25,
                three,
                Kind::TwoTwoIdempotents,
                Scope::Commuting,
                vec![e(24), e(24)],
                e(10)
            ),
            Err(InvalidDecomposition::SumMismatch)
        );
        assert_eq!(
            Decomposition::new(&z25, three, Kind::TwoTwoIdempotents, Scope::Commuting, vec![e(24)]),
            Err(InvalidDecomposition::PartCount { expected: 2, got: 1 })
        );
        let t2 = FiniteRing::triangular(2, &z(2)).unwrap();
        // a = [[1,1],[0,0]] = diag(1,0) + e12
        let a = t2.elem(0b110).unwrap();
        let e11 = vec![t2.elem(0b100).unwrap()];
        assert!(Decomposition::new(&t2, a, Kind::OneIdempotent, Scope::Unrestricted, e11.clone()).is_ok());
        assert_eq!(
            Decomposition::new(&t2, a, Kind::OneIdempotent, Scope::Commuting, e11.clone()),
            Err(InvalidDecomposition::NotCommuting)
        );
        assert_eq!(
            Decomposition::new(&t2, a, Kind::OneIdempotent, Scope::InZa, e11),
            Err(InvalidDecomposition::OutsideZa)
        );
    }
}
