//! Lifting modulo nilpotents and the constructive decompositions built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{DecomposeError, Decomposition, Kind, Scope};
use crate::classify::{characteristic, inverse, is_nilpotent, quintic_defect};
use crate::ring::{Elem, FiniteRing};

/// Result of [`lift_idempotent_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lift {
    pub idempotent: Elem,
    /// Number of Newton steps taken, including the final one that confirms
    /// the fixed point.
    pub iterations: u32,
}

/// Safety net far above the quadratic-convergence bound (`log2 |R|` + 1).
const MAX_LIFT_STEPS: u32 = 64;

/// Idempotent `e` in `Z[b]` with `b - e` nilpotent, by iterating
/// `e <- 3e^2 - 2e^3` from `b` until it stabilizes.
pub fn lift_idempotent(ring: &FiniteRing, b: Elem) -> Result<Elem, DecomposeError> {
    lift_idempotent_traced(ring, b).map(|l| l.idempotent)
}

pub fn lift_idempotent_traced(ring: &FiniteRing, b: Elem) -> Result<Lift, DecomposeError> {
    if !ring.contains(b) {
        return Err(DecomposeError::ForeignElement);
    }
    if !is_nilpotent(ring, ring.sub(b, ring.mul(b, b))) {
        return Err(DecomposeError::Lift("b - b^2 is not nilpotent".into()));
    }
    let mut e = b;
    for iterations in 1..=MAX_LIFT_STEPS {
        let e2 = ring.mul(e, e);
        let next = ring.sub(ring.scale(3, e2), ring.scale(2, ring.mul(e2, e)));
        if next == e {
            return Ok(Lift {
                idempotent: e,
                iterations,
            });
        }
        e = next;
    }
    Err(DecomposeError::Lift("iteration did not stabilize".into()))
}

/// Tripotent `t` in `Z[a]` with `a - t` nilpotent; needs 2 to be a unit.
pub fn lift_tripotent(ring: &FiniteRing, a: Elem) -> Result<Elem, DecomposeError> {
    if !ring.contains(a) {
        return Err(DecomposeError::ForeignElement);
    }
    let half = inverse(ring, ring.int_image(2)).ok_or(DecomposeError::TwoNotUnit)?;
    tripotent_with_half(ring, a, half)
}

fn tripotent_with_half(ring: &FiniteRing, a: Elem, half: Elem) -> Result<Elem, DecomposeError> {
    if !is_nilpotent(ring, ring.sub(a, ring.pow(a, 3))) {
        return Err(DecomposeError::Lift("a - a^3 is not nilpotent".into()));
    }
    let a2 = ring.mul(a, a);
    let e = lift_idempotent(ring, ring.mul(ring.add(a2, a), half))?;
    let f = lift_idempotent(ring, ring.mul(ring.sub(a2, a), half))?;
    Ok(ring.sub(e, f))
}

/// For a central idempotent `u` of odd additive order `m`, the element
/// `((m + 1) / 2) u`, which is the inverse of 2 inside `uR`.
fn half_of(ring: &FiniteRing, u: Elem) -> Option<Elem> {
    let mut order = 1i64;
    let mut acc = u;
    while acc != ring.zero() {
        acc = ring.add(acc, u);
        order += 1;
    }
    (order % 2 == 1).then(|| ring.scale((order + 1) / 2, u))
}

/// Tripotent lift of `x` computed inside the component `uR`.
fn tripotent_in(ring: &FiniteRing, x: Elem, u: Elem) -> Result<Elem, DecomposeError> {
    let half = half_of(ring, u).ok_or(DecomposeError::TwoNotUnit)?;
    tripotent_with_half(ring, x, half)
}

/// Orthogonal central idempotents with `two + three + five = 1` and
/// `2^n two = 3^n three = 5^n five = 0`, where `n` is the least exponent
/// with `30^n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtSplit {
    pub exponent: u32,
    pub two: Elem,
    pub three: Elem,
    pub five: Elem,
}

pub fn crt_split_235(ring: &FiniteRing) -> Result<CrtSplit, DecomposeError> {
    ring.cache()
        .crt_split
        .get_or_init(|| compute_split(ring))
        .ok_or(DecomposeError::ThirtyNotNilpotent)
}

fn compute_split(ring: &FiniteRing) -> Option<CrtSplit> {
    let thirty = ring.int_image(30);
    let mut p = thirty;
    let mut exponent = 1u32;
    while p != ring.zero() {
        if exponent as usize >= ring.size() {
            return None;
        }
        p = ring.mul(p, thirty);
        exponent += 1;
    }
    let char = BigInt::from(characteristic(ring));
    let component = |prime: u32, rest: u32| -> Option<Elem> {
        let q = BigInt::from(prime).pow(exponent);
        let r = BigInt::from(rest).pow(exponent);
        // u q + v r = 1, so v r is 1 modulo q and 0 modulo r
        let v = q.extended_gcd(&r).y;
        let value = (v * r).mod_floor(&char).to_i64()?;
        lift_idempotent(ring, ring.int_image(value)).ok()
    };
    Some(CrtSplit {
        exponent,
        two: component(2, 15)?,
        three: component(3, 10)?,
        five: component(5, 6)?,
    })
}

/// `a^5 - 5a^3 + 4a` is nilpotent for every `a`.
pub(crate) fn zhou_criterion(ring: &FiniteRing) -> bool {
    *ring
        .cache()
        .zhou_criterion
        .get_or_init(|| ring.elements().all(|a| is_nilpotent(ring, quintic_defect(ring, a))))
}

/// The idempotents `e, f, g, h` of the five-component construction: with
/// `x = 3a + a^2 + a^4` and `y = 3a - a^2 - a^4`, they lift
/// `(x^2 + x)/2`, `(x^2 - x)/2`, `(y^2 + y)/2`, `(y^2 - y)/2`.
fn five_component_idempotents(ring: &FiniteRing, a: Elem, u: Elem) -> Result<[Elem; 4], DecomposeError> {
    let half = half_of(ring, u).ok_or(DecomposeError::TwoNotUnit)?;
    let a2 = ring.mul(a, a);
    let a4 = ring.mul(a2, a2);
    let high = ring.add(a2, a4);
    let a3x = ring.scale(3, a);
    let x = ring.add(a3x, high);
    let y = ring.sub(a3x, high);
    let mut out = [ring.zero(); 4];
    for (slot, (z, sign)) in out.iter_mut().zip([(x, 1), (x, -1), (y, 1), (y, -1)]) {
        let z2 = ring.mul(z, z);
        let b = ring.add(z2, ring.scale(sign, z));
        *slot = lift_idempotent(ring, ring.mul(b, half))?;
    }
    Ok(out)
}

fn five_component_witness(ring: &FiniteRing, a: Elem, u: Elem) -> Result<Elem, DecomposeError> {
    let [e, f, g, h] = five_component_idempotents(ring, a, u)?;
    Ok(ring.sub(ring.add(ring.sub(e, f), g), h))
}

/// `e` in `Z[a]` with `e^5 = 5e^3 - 4e` and `a - e` nilpotent, assembled
/// component by component over the 2/3/5 split.
pub fn quintic_witness(ring: &FiniteRing, a: Elem) -> Result<Decomposition, DecomposeError> {
    let e = quintic_part(ring, a)?;
    Ok(Decomposition::new(ring, a, Kind::QuinticWitness, Scope::InZa, vec![e])?)
}

fn quintic_part(ring: &FiniteRing, a: Elem) -> Result<Elem, DecomposeError> {
    if !ring.contains(a) {
        return Err(DecomposeError::ForeignElement);
    }
    if !zhou_criterion(ring) {
        return Err(DecomposeError::NotApplicable(
            "a^5 - 5a^3 + 4a is not nilpotent for every a".into(),
        ));
    }
    let s = crt_split_235(ring)?;
    let e2 = lift_idempotent(ring, ring.mul(s.two, a))?;
    let t3 = tripotent_in(ring, ring.mul(s.three, a), s.three)?;
    let q5 = five_component_witness(ring, ring.mul(s.five, a), s.five)?;
    Ok(ring.add(ring.add(e2, t3), q5))
}

/// Four commuting idempotents in `Z[c]` summing to `c` up to a nilpotent.
fn four_idempotents(ring: &FiniteRing, c: Elem) -> Result<[Elem; 4], DecomposeError> {
    let s = crt_split_235(ring)?;
    let e2 = lift_idempotent(ring, ring.mul(s.two, c))?;

    let c3 = ring.mul(s.three, c);
    let half3 = half_of(ring, s.three).ok_or(DecomposeError::TwoNotUnit)?;
    if !is_nilpotent(ring, ring.sub(c3, ring.pow(c3, 3))) {
        return Err(DecomposeError::Lift("c - c^3 is not nilpotent".into()));
    }
    let c3sq = ring.mul(c3, c3);
    let e3 = lift_idempotent(ring, ring.mul(ring.add(c3sq, c3), half3))?;
    let f3 = lift_idempotent(ring, ring.mul(ring.sub(c3sq, c3), half3))?;

    // c = 2 - a on the five-component, and a = (e - f) + (g - h) + w
    let a5 = ring.sub(ring.scale(2, s.five), ring.mul(s.five, c));
    let [e5, f5, g5, h5] = five_component_idempotents(ring, a5, s.five)?;

    Ok([
        ring.add(ring.add(e2, ring.add(e3, f3)), ring.sub(s.five, e5)),
        ring.add(f3, f5),
        ring.sub(s.five, g5),
        h5,
    ])
}

/// A lifted idempotent on the 2-component plus a lifted tripotent on the
/// rest; the sum is a 2-idempotent.
fn two_idempotent_part(ring: &FiniteRing, x: Elem) -> Result<Elem, DecomposeError> {
    let s = crt_split_235(ring)?;
    let sigma = ring.add(s.three, s.five);
    let e = lift_idempotent(ring, ring.mul(s.two, x))?;
    let t = tripotent_in(ring, ring.mul(sigma, x), sigma)?;
    Ok(ring.add(e, t))
}

/// Parts produced by the constructive route for `kind`, not yet validated.
pub(super) fn constructive_parts(ring: &FiniteRing, a: Elem, kind: Kind) -> Result<Vec<Elem>, DecomposeError> {
    match kind {
        Kind::FourIdempotents => Ok(four_idempotents(ring, a)?.to_vec()),
        Kind::TwoTripotents => {
            let one = ring.one();
            let [e, f, g, h] = four_idempotents(ring, ring.sub(ring.int_image(2), a))?;
            Ok(vec![ring.sub(ring.sub(one, e), f), ring.sub(ring.sub(one, h), g)])
        }
        Kind::OneIdempotent => Ok(vec![lift_idempotent(ring, a)?]),
        Kind::FourthPowerIdempotent => Ok(vec![lift_idempotent(ring, ring.pow(a, 4))?]),
        Kind::OneTwoIdempotent => Ok(vec![two_idempotent_part(ring, a)?]),
        Kind::SquareTwoIdempotent => Ok(vec![two_idempotent_part(ring, ring.mul(a, a))?]),
        Kind::QuinticWitness => Ok(vec![quintic_part(ring, a)?]),
        Kind::ThreeIdempotents | Kind::TwoIdempotents | Kind::TwoTwoIdempotents => {
            Err(DecomposeError::NoConstruction(kind))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_idempotent, is_quintic_root, is_tripotent};

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    #[test]
    fn idempotent_lifts() {
        let z8 = z(8);
        let l = lift_idempotent_traced(&z8, z8.int_image(5)).unwrap();
        assert_eq!(l.idempotent, z8.one());
        assert_eq!(l.iterations, 2);
        let z9 = z(9);
        assert_eq!(lift_idempotent(&z9, z9.int_image(4)).unwrap(), z9.one());
        let z6 = z(6);
        assert_eq!(lift_idempotent(&z6, z6.int_image(3)).unwrap(), z6.int_image(3));
        let z7 = z(7);
        assert!(matches!(
            lift_idempotent(&z7, z7.int_image(3)),
            Err(DecomposeError::Lift(_))
        ));
    }

    #[test]
    fn tripotent_lifts() {
        let z25 = z(25);
        assert_eq!(lift_tripotent(&z25, z25.int_image(6)).unwrap(), z25.one());
        assert_eq!(lift_tripotent(&z25, z25.int_image(24)).unwrap(), z25.int_image(24));
        assert_eq!(lift_tripotent(&z25, z25.zero()).unwrap(), z25.zero());
        let z4 = z(4);
        assert_eq!(lift_tripotent(&z4, z4.one()), Err(DecomposeError::TwoNotUnit));
        let z27 = z(27);
        let t = lift_tripotent(&z27, z27.int_image(5)).unwrap();
        assert!(is_tripotent(&z27, t));
    }

    #[test]
    fn crt_examples() {
        let check = |n: usize, want: (usize, usize, usize)| {
            let r = z(n);
            let s = crt_split_235(&r).unwrap();
            assert_eq!((s.two.index(), s.three.index(), s.five.index()), want, "Z/{n}");
        };
        check(90, (45, 10, 36));
        check(8, (1, 0, 0));
        check(30, (15, 10, 6));
        check(1, (0, 0, 0));
        assert_eq!(crt_split_235(&z(7)), Err(DecomposeError::ThirtyNotNilpotent));
        let m = FiniteRing::matrix(2, &z(6)).unwrap();
        let s = crt_split_235(&m).unwrap();
        assert_eq!(m.add(m.add(s.two, s.three), s.five), m.one());
        assert!(is_idempotent(&m, s.three));
    }

    #[test]
    fn quintic_witness_examples() {
        let z25 = z(25);
        let d = quintic_witness(&z25, z25.int_image(3)).unwrap();
        assert_eq!(d.parts()[0].index(), 23);
        assert_eq!(d.nilpotent().index(), 5);
        let d = quintic_witness(&z25, z25.int_image(2)).unwrap();
        assert!(is_quintic_root(&z25, d.parts()[0]));
        let z7 = z(7);
        assert!(matches!(
            quintic_witness(&z7, z7.one()),
            Err(DecomposeError::NotApplicable(_))
        ));
        for n in [30, 90, 45, 16, 27] {
            let r = z(n);
            for a in r.elements() {
                quintic_witness(&r, a).unwrap();
            }
        }
    }

    #[test]
    fn four_idempotents_on_zhou_rings() {
        for n in [5, 25, 30, 90, 12] {
            let r = z(n);
            for a in r.elements() {
                let parts = constructive_parts(&r, a, Kind::FourIdempotents).unwrap();
                Decomposition::new(&r, a, Kind::FourIdempotents, Scope::InZa, parts).unwrap();
                let parts = constructive_parts(&r, a, Kind::TwoTripotents).unwrap();
                Decomposition::new(&r, a, Kind::TwoTripotents, Scope::InZa, parts).unwrap();
            }
        }
    }
}
