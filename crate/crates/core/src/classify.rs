//! Element predicates and structural subsets of a finite ring.

use std::fmt;
use std::str::FromStr;

use crate::ring::{Elem, FiniteRing};

/// Flags describing a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassReport {
    pub element: Elem,
    pub nilpotent: bool,
    /// Least `k` with `a^k = 0`; present iff `nilpotent`.
    pub nilpotency_index: Option<u32>,
    pub idempotent: bool,
    pub tripotent: bool,
    pub two_idempotent: bool,
    pub unit: bool,
    pub unipotent: bool,
    pub inverse: Option<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementClass {
    Nilpotents,
    Units,
    Idempotents,
    Tripotents,
    TwoIdempotents,
}

impl ElementClass {
    pub const ALL: [ElementClass; 5] = [
        ElementClass::Nilpotents,
        ElementClass::Units,
        ElementClass::Idempotents,
        ElementClass::Tripotents,
        ElementClass::TwoIdempotents,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementClass::Nilpotents => "nilpotents",
            ElementClass::Units => "units",
            ElementClass::Idempotents => "idempotents",
            ElementClass::Tripotents => "tripotents",
            ElementClass::TwoIdempotents => "two_idempotents",
        }
    }
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown element class `{s}`"))
    }
}

/// A subset of a ring's carrier in canonical order, with O(1) membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemSet {
    members: Vec<Elem>,
    flags: Vec<bool>,
}

impl ElemSet {
    pub fn from_flags(ring: &FiniteRing, flags: Vec<bool>) -> Self {
        let members = ring.elements().filter(|e| flags[e.index()]).collect();
        ElemSet { members, flags }
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.flags.get(e.index()).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.members
    }
}

/// Upper bound on the nilpotency index: a nilpotent `a` gives a strictly
/// decreasing chain `R > aR > a^2R > ... > 0` of additive subgroups.
fn nil_index_bound(n: usize) -> u32 {
    (usize::BITS - 1 - n.leading_zeros()).max(1)
}

fn nil_table(ring: &FiniteRing) -> &[u32] {
    ring.cache().nil_index.get_or_init(|| {
        let bound = nil_index_bound(ring.size());
        let zero = ring.zero();
        ring.elements()
            .map(|a| {
                let mut p = a;
                let mut k = 1;
                loop {
                    if p == zero {
                        return k;
                    }
                    if k >= bound {
                        return 0;
                    }
                    p = ring.mul(p, a);
                    k += 1;
                }
            })
            .collect()
    })
}

pub fn nilpotency_index(ring: &FiniteRing, a: Elem) -> Option<u32> {
    assert!(ring.contains(a), "element belongs to a different ring");
    match nil_table(ring)[a.index()] {
        0 => None,
        k => Some(k),
    }
}

pub fn is_nilpotent(ring: &FiniteRing, a: Elem) -> bool {
    nilpotency_index(ring, a).is_some()
}

const NO_INVERSE: u32 = u32::MAX;

fn inverse_table(ring: &FiniteRing) -> &[u32] {
    ring.cache().inverse.get_or_init(|| {
        let one = ring.one();
        ring.elements()
            .map(|a| {
                // The powers of `a` reach exactly one idempotent; `a` is a
                // unit iff that idempotent is 1, and then `a^(k-1)` inverts it.
                let mut p = a;
                let mut prev = one;
                loop {
                    if p == one {
                        return prev.index() as u32;
                    }
                    if ring.mul(p, p) == p {
                        return NO_INVERSE;
                    }
                    prev = p;
                    p = ring.mul(p, a);
                }
            })
            .collect()
    })
}

/// Two-sided inverse.
pub fn inverse(ring: &FiniteRing, a: Elem) -> Option<Elem> {
    assert!(ring.contains(a), "element belongs to a different ring");
    match inverse_table(ring)[a.index()] {
        NO_INVERSE => None,
        b => ring.elem(b as usize),
    }
}

pub fn is_unit(ring: &FiniteRing, a: Elem) -> bool {
    inverse(ring, a).is_some()
}

pub fn is_unipotent(ring: &FiniteRing, u: Elem) -> bool {
    is_nilpotent(ring, ring.sub(u, ring.one()))
}

pub fn is_idempotent(ring: &FiniteRing, e: Elem) -> bool {
    ring.mul(e, e) == e
}

pub fn is_tripotent(ring: &FiniteRing, e: Elem) -> bool {
    ring.pow(e, 3) == e
}

pub fn is_two_idempotent(ring: &FiniteRing, e: Elem) -> bool {
    ring.pow(e, 2) == ring.pow(e, 4)
}

/// `e^5 = 5e^3 - 4e`, exactly.
pub fn is_quintic_root(ring: &FiniteRing, e: Elem) -> bool {
    let e3 = ring.pow(e, 3);
    let rhs = ring.sub(ring.scale(5, e3), ring.scale(4, e));
    ring.pow(e, 5) == rhs
}

/// `a^5 - 5a^3 + 4a`.
pub fn quintic_defect(ring: &FiniteRing, a: Elem) -> Elem {
    let a3 = ring.pow(a, 3);
    let lhs = ring.pow(a, 5);
    ring.add(ring.sub(lhs, ring.scale(5, a3)), ring.scale(4, a))
}

pub fn is_central(ring: &FiniteRing, a: Elem) -> bool {
    central_flags(ring)[a.index()]
}

fn central_flags(ring: &FiniteRing) -> &[bool] {
    ring.cache().central.get_or_init(|| {
        ring.elements()
            .map(|a| ring.elements().all(|r| ring.commute(a, r)))
            .collect()
    })
}

/// Additive order of the identity.
pub fn characteristic(ring: &FiniteRing) -> usize {
    *ring.cache().characteristic.get_or_init(|| {
        let one = ring.one();
        let mut acc = one;
        let mut c = 1;
        while acc != ring.zero() {
            acc = ring.add(acc, one);
            c += 1;
        }
        c
    })
}

pub fn classify_element(ring: &FiniteRing, a: Elem) -> ClassReport {
    let nilpotency_index = nilpotency_index(ring, a);
    let inverse = inverse(ring, a);
    ClassReport {
        element: a,
        nilpotent: nilpotency_index.is_some(),
        nilpotency_index,
        idempotent: is_idempotent(ring, a),
        tripotent: is_tripotent(ring, a),
        two_idempotent: is_two_idempotent(ring, a),
        unit: inverse.is_some(),
        unipotent: is_unipotent(ring, a),
        inverse,
    }
}

fn cached_class<'r>(
    ring: &'r FiniteRing,
    slot: &'r std::sync::OnceLock<Vec<Elem>>,
    pred: fn(&FiniteRing, Elem) -> bool,
) -> &'r [Elem] {
    slot.get_or_init(|| ring.elements().filter(|&e| pred(ring, e)).collect())
}

pub(crate) fn idempotents(ring: &FiniteRing) -> &[Elem] {
    cached_class(ring, &ring.cache().idempotents, is_idempotent)
}

pub(crate) fn tripotents(ring: &FiniteRing) -> &[Elem] {
    cached_class(ring, &ring.cache().tripotents, is_tripotent)
}

pub(crate) fn two_idempotents(ring: &FiniteRing) -> &[Elem] {
    cached_class(ring, &ring.cache().two_idempotents, is_two_idempotent)
}

pub(crate) fn quintic_roots(ring: &FiniteRing) -> &[Elem] {
    cached_class(ring, &ring.cache().quintic_roots, is_quintic_root)
}

pub fn enumerate_class(ring: &FiniteRing, class: ElementClass) -> ElemSet {
    let members: Vec<Elem> = match class {
        ElementClass::Nilpotents => ring.elements().filter(|&e| is_nilpotent(ring, e)).collect(),
        ElementClass::Units => ring.elements().filter(|&e| is_unit(ring, e)).collect(),
        ElementClass::Idempotents => idempotents(ring).to_vec(),
        ElementClass::Tripotents => tripotents(ring).to_vec(),
        ElementClass::TwoIdempotents => two_idempotents(ring).to_vec(),
    };
    let mut flags = vec![false; ring.size()];
    for e in &members {
        flags[e.index()] = true;
    }
    ElemSet { members, flags }
}

fn left_invertible(ring: &FiniteRing) -> &[bool] {
    ring.cache().left_invertible.get_or_init(|| {
        let one = ring.one();
        let mut flags = vec![false; ring.size()];
        for z in ring.elements() {
            for y in ring.elements() {
                if !flags[y.index()] && ring.mul(z, y) == one {
                    flags[y.index()] = true;
                }
            }
        }
        flags
    })
}

/// `J(R) = {x : 1 - r x is left invertible for every r}`.
pub fn jacobson_radical(ring: &FiniteRing) -> ElemSet {
    let flags = ring
        .cache()
        .jacobson
        .get_or_init(|| {
            let left = left_invertible(ring);
            let one = ring.one();
            ring.elements()
                .map(|x| ring.elements().all(|r| left[ring.sub(one, ring.mul(r, x)).index()]))
                .collect()
        })
        .clone();
    ElemSet::from_flags(ring, flags)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalInfo {
    pub local: bool,
    /// `|R/J(R)|`, reported for local rings.
    pub residue_size: Option<usize>,
    pub residue_is_field: bool,
    /// The residue ring is a field with 2, 3 or 5 elements.
    pub residue_field_235: bool,
}

/// A ring is local when its non-units are exactly `J(R)`.
pub fn is_local(ring: &FiniteRing) -> LocalInfo {
    let j = jacobson_radical(ring);
    let local = ring.elements().all(|x| is_unit(ring, x) != j.contains(x));
    if !local {
        return LocalInfo {
            local: false,
            residue_size: None,
            residue_is_field: false,
            residue_field_235: false,
        };
    }
    let residue = ring.size() / j.len();
    let commutative_mod_j = ring.elements().all(|x| {
        ring.elements()
            .all(|y| j.contains(ring.sub(ring.mul(x, y), ring.mul(y, x))))
    });
    LocalInfo {
        local: true,
        residue_size: Some(residue),
        residue_is_field: commutative_mod_j,
        residue_field_235: commutative_mod_j && matches!(residue, 2 | 3 | 5),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingIdentities {
    pub reduced: bool,
    pub x5_eq_x: bool,
    /// `x^5 = 5x^3 - 4x` for every `x`.
    pub quintic_identity: bool,
    pub commutative: bool,
    /// Largest nilpotency index over `N(R)`.
    pub bounded_index: u32,
}

pub fn ring_identities(ring: &FiniteRing) -> RingIdentities {
    let zero = ring.zero();
    let nil = nil_table(ring);
    RingIdentities {
        reduced: ring.elements().all(|x| x == zero || nil[x.index()] == 0),
        x5_eq_x: ring.elements().all(|x| ring.pow(x, 5) == x),
        quintic_identity: ring.elements().all(|x| quintic_defect(ring, x) == zero),
        commutative: ring.elements().all(|x| is_central(ring, x)),
        bounded_index: nil.iter().copied().max().unwrap_or(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn idx(set: &ElemSet) -> Vec<usize> {
        set.iter().map(Elem::index).collect()
    }

    #[test]
    fn element_reports() {
        let z25 = z(25);
        let r = classify_element(&z25, z25.int_image(5));
        assert!(r.nilpotent && !r.unit);
        assert_eq!(r.nilpotency_index, Some(2));
        let z4 = z(4);
        let r = classify_element(&z4, z4.int_image(2));
        assert!(r.two_idempotent && !r.tripotent && !r.idempotent);
        let r = classify_element(&z25, z25.int_image(3));
        assert!(r.unit);
        assert_eq!(r.inverse, Some(z25.int_image(17)));
        let r = classify_element(&z25, z25.int_image(6));
        assert!(r.unipotent && r.unit);
    }

    #[test]
    fn class_enumerations() {
        let z25 = z(25);
        assert_eq!(
            idx(&enumerate_class(&z25, ElementClass::Nilpotents)),
            vec![0, 5, 10, 15, 20]
        );
        assert_eq!(idx(&enumerate_class(&z25, ElementClass::Tripotents)), vec![0, 1, 24]);
        let z4 = z(4);
        assert_eq!(
            idx(&enumerate_class(&z4, ElementClass::TwoIdempotents)),
            vec![0, 1, 2, 3]
        );
        assert_eq!(enumerate_class(&z(7), ElementClass::Units).len(), 6);
    }

    #[test]
    fn nilpotency_in_two_power_rings() {
        let z8 = z(8);
        assert_eq!(nilpotency_index(&z8, z8.int_image(2)), Some(3));
        let z1024 = z(1024);
        assert_eq!(nilpotency_index(&z1024, z1024.int_image(2)), Some(10));
        assert_eq!(nilpotency_index(&z1024, z1024.int_image(3)), None);
        let z1 = z(1);
        assert_eq!(nilpotency_index(&z1, z1.zero()), Some(1));
    }

    #[test]
    fn jacobson_examples() {
        let z25 = z(25);
        assert_eq!(idx(&jacobson_radical(&z25)), vec![0, 5, 10, 15, 20]);
        assert_eq!(idx(&jacobson_radical(&z(6))), vec![0]);
        let t2 = FiniteRing::triangular(2, &z(2)).unwrap();
        // {0, e12}
        assert_eq!(idx(&jacobson_radical(&t2)), vec![0, 0b010]);
    }

    #[test]
    fn locality() {
        let l = is_local(&z(25));
        assert!(l.local && l.residue_field_235);
        assert_eq!(l.residue_size, Some(5));
        assert!(!is_local(&z(6)).local);
        let l = is_local(&z(49));
        assert_eq!(l.residue_size, Some(7));
        assert!(l.residue_is_field && !l.residue_field_235);
        assert!(!is_local(&z(1)).local);
        let t2 = FiniteRing::triangular(2, &z(2)).unwrap();
        assert!(!is_local(&t2).local);
    }

    #[test]
    fn identities() {
        let ids = ring_identities(&z(30));
        assert!(ids.reduced && ids.x5_eq_x && ids.quintic_identity && ids.commutative);
        assert_eq!(ring_identities(&z(8)).bounded_index, 3);
        let z25 = z(25);
        let ids = ring_identities(&z25);
        assert!(!ids.x5_eq_x && !ids.quintic_identity);
        assert_eq!(z25.pow(z25.int_image(2), 5).index(), 7);
        let m = FiniteRing::matrix(2, &z(2)).unwrap();
        assert!(!ring_identities(&m).commutative);
    }

    #[test]
    fn characteristic_of_constructions() {
        assert_eq!(characteristic(&z(12)), 12);
        let p = FiniteRing::product(&[z(4), z(6)]).unwrap();
        assert_eq!(characteristic(&p), 12);
        assert_eq!(characteristic(&z(1)), 1);
    }
}
