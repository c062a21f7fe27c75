//! Ring-level property deciders.

mod suite;

use std::fmt;
use std::str::FromStr;

use crate::classify::{self, is_nilpotent, is_unit, quintic_defect};
use crate::decompose::{brute_force_decompose, decompose, Decomposition, Kind, Scope};
use crate::ring::{Construction, Elem, FiniteRing, RingError};

pub use suite::{
    default_corpus, quintic_root_of_two_scan, theorem_suite, CaseRecord, SuiteReport, TheoremRow, DEFAULT_CORPUS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    ZhouNilClean,
    StronglyNilClean,
    StronglyTwoNilClean,
    Kosan,
    Exchange,
    Clean,
    UnitsSquareUnipotent,
    /// Every element is two tripotents plus a nilpotent, with no commuting
    /// requirement.
    TripotentSum,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::ZhouNilClean,
        Property::StronglyNilClean,
        Property::StronglyTwoNilClean,
        Property::Kosan,
        Property::Exchange,
        Property::Clean,
        Property::UnitsSquareUnipotent,
        Property::TripotentSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::ZhouNilClean => "zhou_nil_clean",
            Property::StronglyNilClean => "strongly_nil_clean",
            Property::StronglyTwoNilClean => "strongly_2_nil_clean",
            Property::Kosan => "kosan",
            Property::Exchange => "exchange",
            Property::Clean => "clean",
            Property::UnitsSquareUnipotent => "units_square_unipotent",
            Property::TripotentSum => "tripotent_sum",
        }
    }

    /// The decomposition whose elementwise existence defines the property.
    fn defining_kind(self) -> Option<(Kind, Scope)> {
        match self {
            Property::StronglyNilClean => Some((Kind::OneIdempotent, Scope::Commuting)),
            Property::StronglyTwoNilClean => Some((Kind::TwoIdempotents, Scope::Commuting)),
            Property::TripotentSum => Some((Kind::TwoTripotents, Scope::Unrestricted)),
            _ => None,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// A concrete element on which a property's criterion fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `a^5 - 5a^3 + 4a` is not nilpotent.
    QuinticDefect { element: Elem, defect: Elem },
    /// No decomposition of the given kind and scope exists.
    NoDecomposition { element: Elem, kind: Kind, scope: Scope },
    /// A unit whose `k`-th power minus 1 is not nilpotent.
    PowerNotUnipotent { unit: Elem, exponent: u32 },
    /// No idempotent `e` with `e` in `aR` and `1 - e` in `(1 - a)R`.
    NoExchangeIdempotent { element: Elem },
    /// `a - e` is a non-unit for every idempotent `e`.
    NotClean { element: Elem },
}

impl Violation {
    pub fn element(&self) -> Elem {
        match *self {
            Violation::QuinticDefect { element, .. }
            | Violation::NoDecomposition { element, .. }
            | Violation::NoExchangeIdempotent { element }
            | Violation::NotClean { element } => element,
            Violation::PowerNotUnipotent { unit, .. } => unit,
        }
    }

    pub fn condition(&self) -> String {
        match self {
            Violation::QuinticDefect { .. } => "a^5 - 5a^3 + 4a is not nilpotent".into(),
            Violation::NoDecomposition { kind, scope, .. } => format!("no {kind} decomposition ({scope})"),
            Violation::PowerNotUnipotent { exponent, .. } => format!("u^{exponent} - 1 is not nilpotent"),
            Violation::NoExchangeIdempotent { .. } => "no idempotent e in aR with 1 - e in (1 - a)R".into(),
            Violation::NotClean { .. } => "a - e is not a unit for any idempotent e".into(),
        }
    }

    /// Re-checks from scratch that the cited condition fails.
    pub fn revalidate(&self, ring: &FiniteRing) -> bool {
        if !ring.contains(self.element()) {
            return false;
        }
        match *self {
            Violation::QuinticDefect { element, defect } => {
                defect == quintic_defect(ring, element) && !is_nilpotent(ring, defect)
            }
            Violation::NoDecomposition { element, kind, scope } => {
                brute_force_decompose(ring, element, kind, scope).is_none()
            }
            Violation::PowerNotUnipotent { unit, exponent } => {
                is_unit(ring, unit) && !power_unipotent(ring, unit, exponent)
            }
            Violation::NoExchangeIdempotent { element } => exchange_idempotent(ring, element).is_none(),
            Violation::NotClean { element } => clean_idempotent(ring, element).is_none(),
        }
    }
}

/// Outcome of [`check_property`]. `counterexample` is present iff `holds` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: Property,
    pub holds: bool,
    /// One decomposition per element, in carrier order, when requested and
    /// the property is defined by decompositions.
    pub witnesses: Option<Vec<Decomposition>>,
    pub counterexample: Option<Violation>,
    /// Elementwise polynomial test reported next to the definitional
    /// decider: `a - a^2` nilpotent for every `a` (strongly nil-clean) or
    /// `a - a^3` nilpotent for every `a` (strongly 2-nil-clean).
    pub auxiliary: Option<(&'static str, bool)>,
}

fn power_unipotent(ring: &FiniteRing, u: Elem, k: u32) -> bool {
    is_nilpotent(ring, ring.sub(ring.pow(u, k as u64), ring.one()))
}

/// Flags of the right ideal `aR`.
fn right_ideal(ring: &FiniteRing, a: Elem) -> Vec<bool> {
    let mut flags = vec![false; ring.size()];
    for r in ring.elements() {
        flags[ring.mul(a, r).index()] = true;
    }
    flags
}

fn exchange_idempotent(ring: &FiniteRing, a: Elem) -> Option<Elem> {
    let in_a = right_ideal(ring, a);
    let in_b = right_ideal(ring, ring.sub(ring.one(), a));
    classify::idempotents(ring)
        .iter()
        .copied()
        .find(|&e| in_a[e.index()] && in_b[ring.sub(ring.one(), e).index()])
}

fn clean_idempotent(ring: &FiniteRing, a: Elem) -> Option<Elem> {
    classify::idempotents(ring)
        .iter()
        .copied()
        .find(|&e| is_unit(ring, ring.sub(a, e)))
}

/// Decides `property` on `ring`, reporting the first violation in carrier order.
pub fn check_property(ring: &FiniteRing, property: Property) -> PropertyVerdict {
    evaluate(ring, property, false)
}

/// Like [`check_property`], additionally collecting a witness per element
/// for the decomposition-defined properties (for `zhou_nil_clean`, a
/// commuting two-tripotent decomposition).
pub fn check_property_with_witnesses(ring: &FiniteRing, property: Property) -> PropertyVerdict {
    evaluate(ring, property, true)
}

fn evaluate(ring: &FiniteRing, property: Property, collect: bool) -> PropertyVerdict {
    let units = || ring.elements().filter(|&u| is_unit(ring, u));
    let counterexample = match property {
        Property::ZhouNilClean => ring.elements().find_map(|a| {
            let defect = quintic_defect(ring, a);
            (!is_nilpotent(ring, defect)).then_some(Violation::QuinticDefect { element: a, defect })
        }),
        Property::Kosan => units()
            .find(|&u| !power_unipotent(ring, u, 4))
            .map(|unit| Violation::PowerNotUnipotent { unit, exponent: 4 }),
        Property::UnitsSquareUnipotent => units()
            .find(|&u| !power_unipotent(ring, u, 2))
            .map(|unit| Violation::PowerNotUnipotent { unit, exponent: 2 }),
        Property::Exchange => ring
            .elements()
            .find(|&a| exchange_idempotent(ring, a).is_none())
            .map(|element| Violation::NoExchangeIdempotent { element }),
        Property::Clean => ring
            .elements()
            .find(|&a| clean_idempotent(ring, a).is_none())
            .map(|element| Violation::NotClean { element }),
        Property::StronglyNilClean | Property::StronglyTwoNilClean | Property::TripotentSum => {
            let (kind, scope) = property.defining_kind().expect("decomposition-defined property");
            first_missing(ring, kind, scope)
        }
    };
    let holds = counterexample.is_none();
    let witnesses = (collect && holds)
        .then(|| {
            let (kind, scope) = property
                .defining_kind()
                .or((property == Property::ZhouNilClean).then_some((Kind::TwoTripotents, Scope::Commuting)))?;
            ring.elements()
                .map(|a| decompose(ring, a, kind, scope).ok().flatten())
                .collect::<Option<Vec<_>>>()
        })
        .flatten();
    let auxiliary = match property {
        Property::StronglyNilClean => Some(("a_minus_a2_nilpotent", all_nilpotent(ring, 2))),
        Property::StronglyTwoNilClean => Some(("a_minus_a3_nilpotent", all_nilpotent(ring, 3))),
        _ => None,
    };
    PropertyVerdict {
        property,
        holds,
        witnesses,
        counterexample,
        auxiliary,
    }
}

fn first_missing(ring: &FiniteRing, kind: Kind, scope: Scope) -> Option<Violation> {
    ring.elements()
        .find(|&a| brute_force_decompose(ring, a, kind, scope).is_none())
        .map(|element| Violation::NoDecomposition { element, kind, scope })
}

/// `a - a^k` is nilpotent for every `a`.
fn all_nilpotent(ring: &FiniteRing, k: u64) -> bool {
    ring.elements().all(|a| is_nilpotent(ring, ring.sub(a, ring.pow(a, k))))
}

/// `n` has no prime factor other than 2, 3 and 5.
pub fn zn_kosan_numbertheory(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    for p in [2, 3, 5] {
        while m.is_multiple_of(p) {
            m /= p;
        }
    }
    m == 1
}

/// Exhaustively checks that every matrix is a sum of two tripotents and a
/// nilpotent.
pub fn matrix_tripotent_sum_check(ring: &FiniteRing) -> Result<PropertyVerdict, RingError> {
    match ring.construction() {
        Construction::Matrix { .. } => Ok(check_property(ring, Property::TripotentSum)),
        _ => Err(RingError::Precondition("expected a matrix ring".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn holds(ring: &FiniteRing, p: Property) -> bool {
        let v = check_property(ring, p);
        assert_eq!(v.holds, v.counterexample.is_none());
        if let Some(c) = &v.counterexample {
            assert!(c.revalidate(ring), "{p} on {ring:?}: {c:?}");
        }
        v.holds
    }

    #[test]
    fn zhou_examples() {
        assert!(holds(&z(25), Property::ZhouNilClean));
        let z7 = z(7);
        let v = check_property(&z7, Property::ZhouNilClean);
        // 3^5 - 5*3^3 + 4*3 = 120 = 1 mod 7, so 3 also fails; 2 is a root
        let c = v.counterexample.unwrap();
        assert!(c.revalidate(&z7));
        assert!(!Violation::QuinticDefect {
            element: z7.int_image(2),
            defect: z7.zero()
        }
        .revalidate(&z7));
        assert!(Violation::QuinticDefect {
            element: z7.int_image(3),
            defect: z7.one()
        }
        .revalidate(&z7));
    }

    #[test]
    fn kosan_examples() {
        assert!(holds(&z(30), Property::Kosan));
        let z7 = z(7);
        assert!(!holds(&z7, Property::Kosan));
        assert!(Violation::PowerNotUnipotent {
            unit: z7.int_image(3),
            exponent: 4
        }
        .revalidate(&z7));
        let m = FiniteRing::matrix(2, &z(2)).unwrap();
        assert!(!holds(&m, Property::Kosan));
        // [[1,1],[1,0]] has order 3
        let u = m.elem(0b1110).unwrap();
        assert!(Violation::PowerNotUnipotent { unit: u, exponent: 4 }.revalidate(&m));
    }

    #[test]
    fn definitional_scans() {
        assert!(holds(&z(6), Property::Exchange));
        assert!(holds(&z(25), Property::Clean));
        assert!(holds(&z(6), Property::StronglyTwoNilClean));
        let z5 = z(5);
        let v = check_property(&z5, Property::StronglyTwoNilClean);
        assert_eq!(
            v.counterexample,
            Some(Violation::NoDecomposition {
                element: z5.int_image(3),
                kind: Kind::TwoIdempotents,
                scope: Scope::Commuting
            })
        );
        assert_eq!(v.auxiliary, Some(("a_minus_a3_nilpotent", false)));
        let v = check_property(&z(12), Property::StronglyNilClean);
        assert!(!v.holds);
        assert_eq!(v.auxiliary, Some(("a_minus_a2_nilpotent", false)));
        assert!(holds(&z(8), Property::StronglyNilClean));
        assert!(!holds(&z(7), Property::UnitsSquareUnipotent));
        assert!(holds(&z(24), Property::UnitsSquareUnipotent));
    }

    #[test]
    fn zero_ring_satisfies_everything() {
        let z1 = z(1);
        for p in Property::ALL {
            assert!(holds(&z1, p), "{p}");
        }
    }

    #[test]
    fn witnesses_cover_every_element() {
        let r = z(30);
        let v = check_property_with_witnesses(&r, Property::ZhouNilClean);
        let w = v.witnesses.unwrap();
        assert_eq!(w.len(), 30);
        for (a, d) in r.elements().zip(&w) {
            assert_eq!(d.element(), a);
            d.validate(&r).unwrap();
        }
        assert!(check_property_with_witnesses(&r, Property::Kosan).witnesses.is_none());
    }

    #[test]
    fn number_theory() {
        assert!(zn_kosan_numbertheory(30));
        assert!(!zn_kosan_numbertheory(7));
        assert!(zn_kosan_numbertheory(1));
        let hits: Vec<u64> = (2..=20).filter(|&n| zn_kosan_numbertheory(n)).collect();
        assert_eq!(hits, vec![2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20]);
    }

    #[test]
    fn matrix_check() {
        let m = FiniteRing::matrix(2, &z(2)).unwrap();
        assert!(matrix_tripotent_sum_check(&m).unwrap().holds);
        let m1 = FiniteRing::matrix(1, &z(5)).unwrap();
        assert!(matrix_tripotent_sum_check(&m1).unwrap().holds);
        assert!(matrix_tripotent_sum_check(&z(5)).is_err());
    }
}
