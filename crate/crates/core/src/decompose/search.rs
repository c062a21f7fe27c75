//! Exhaustive search for decompositions.

use super::{Decomposition, Kind, Scope};
use crate::classify::is_nilpotent;
use crate::ring::{zint_members, Elem, FiniteRing};

/// The lexicographically first decomposition over non-decreasing tuples of
/// candidate parts in carrier order, or `None` if there is none.
pub fn brute_force_decompose(ring: &FiniteRing, a: Elem, kind: Kind, scope: Scope) -> Option<Decomposition> {
    if !ring.contains(a) {
        return None;
    }
    let target = kind.target(ring, a);
    let zint = (scope == Scope::InZa).then(|| zint_members(ring, a));
    let candidates: Vec<Elem> = kind
        .part_identity()
        .candidates(ring)
        .iter()
        .copied()
        .filter(|&e| match scope {
            Scope::InZa => zint.as_ref().is_some_and(|z| z[e.index()]),
            Scope::Commuting => ring.commute(e, target),
            Scope::Unrestricted => true,
        })
        .collect();
    let mut search = Search {
        ring,
        candidates: &candidates,
        target,
        commuting: scope == Scope::Commuting,
        chosen: Vec::with_capacity(kind.part_count()),
    };
    if !search.extend(0, ring.zero(), kind.part_count()) {
        return None;
    }
    let parts = search.chosen;
    Some(Decomposition::new(ring, a, kind, scope, parts).expect("search only yields valid decompositions"))
}

struct Search<'a> {
    ring: &'a FiniteRing,
    candidates: &'a [Elem],
    target: Elem,
    commuting: bool,
    chosen: Vec<Elem>,
}

impl Search<'_> {
    fn extend(&mut self, from: usize, sum: Elem, remaining: usize) -> bool {
        if remaining == 0 {
            return is_nilpotent(self.ring, self.ring.sub(self.target, sum));
        }
        for i in from..self.candidates.len() {
            let p = self.candidates[i];
            if self.commuting && self.chosen.iter().any(|&q| !self.ring.commute(p, q)) {
                continue;
            }
            self.chosen.push(p);
            if self.extend(i, self.ring.add(sum, p), remaining - 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn found(r: &FiniteRing, a: i64, kind: Kind, scope: Scope) -> Option<(Vec<usize>, usize)> {
        brute_force_decompose(r, r.int_image(a), kind, scope)
            .map(|d| (d.parts().iter().map(|e| e.index()).collect(), d.nilpotent().index()))
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            found(&z(25), 2, Kind::TwoTripotents, Scope::Commuting),
            Some((vec![1, 1], 0))
        );
        assert_eq!(found(&z(5), 4, Kind::TwoIdempotents, Scope::Commuting), None);
        // lexicographically first, ahead of the equally valid (1, 2) with w = 0
        assert_eq!(
            found(&z(4), 3, Kind::TwoTwoIdempotents, Scope::Commuting),
            Some((vec![0, 1], 2))
        );
        assert_eq!(
            found(&z(25), 3, Kind::QuinticWitness, Scope::Unrestricted),
            Some((vec![23], 5))
        );
        assert_eq!(found(&z(7), 3, Kind::QuinticWitness, Scope::Unrestricted), None);
    }

    #[test]
    fn commuting_scope_in_noncommutative_ring() {
        let m = FiniteRing::matrix(2, &z(2)).unwrap();
        for a in m.elements() {
            let d = brute_force_decompose(&m, a, Kind::TwoTripotents, Scope::Unrestricted);
            assert!(d.is_some());
            if let Some(d) = brute_force_decompose(&m, a, Kind::TwoTripotents, Scope::Commuting) {
                assert!(d.parts().iter().all(|&p| m.commute(p, a)));
            }
        }
    }
}
