//! Cross-checks of the structural equivalences over a corpus of rings.
//!
//! Each row compares independently computed sides (a polynomial criterion,
//! elementwise decomposition existence, a structural predicate) on every
//! ring where the row applies. A row passes iff the sides agree everywhere.

use rayon::prelude::*;
use serde::Serialize;

use super::{check_property, matrix_tripotent_sum_check, zn_kosan_numbertheory, Property};
use crate::classify::{
    self, is_central, is_idempotent, is_nilpotent, is_quintic_root, is_tripotent, jacobson_radical, nilpotency_index,
    LocalInfo, RingIdentities,
};
use crate::decompose::{decompose, lift_idempotent_traced, quintic_witness, Kind, Scope};
use crate::expr::{build_str, ring_name};
use crate::ring::{zint_members, Construction, FiniteRing, RingFactory};

/// Expressions of the built-in corpus.
pub const DEFAULT_CORPUS: &[&str] = &[
    "Z2",
    "Z3",
    "Z4",
    "Z5",
    "Z6",
    "Z7",
    "Z8",
    "Z9",
    "Z10",
    "Z12",
    "Z16",
    "Z25",
    "Z27",
    "Z30",
    "Z45",
    "Z49",
    "Z90",
    "T2(Z2)",
    "T2(Z4)",
    "T3(Z2)",
    "M2(Z2)",
    "M2(Z3)",
    "prod(Z2,Z9)",
    "prod(Z4,Z5)",
];

pub fn default_corpus() -> Vec<FiniteRing> {
    let factory = RingFactory::default();
    DEFAULT_CORPUS
        .iter()
        .map(|text| build_str(text, &factory).expect("built-in corpus expression"))
        .collect()
}

/// Outcome of one row on one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub ring: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub id: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    /// Rings on which the row applies, in corpus order.
    pub cases: Vec<CaseRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub rings: Vec<String>,
    pub passed: bool,
    pub rows: Vec<TheoremRow>,
}

impl SuiteReport {
    pub fn row(&self, id: &str) -> Option<&TheoremRow> {
        self.rows.iter().find(|r| r.id == id)
    }
}

/// Decomposition kinds whose elementwise existence the rows compare.
const KINDS: [(Kind, Scope); 12] = [
    (Kind::TwoTripotents, Scope::Commuting),
    (Kind::FourIdempotents, Scope::InZa),
    (Kind::FourIdempotents, Scope::Commuting),
    (Kind::TwoIdempotents, Scope::Commuting),
    (Kind::ThreeIdempotents, Scope::Commuting),
    (Kind::TwoTwoIdempotents, Scope::InZa),
    (Kind::TwoTwoIdempotents, Scope::Commuting),
    (Kind::OneTwoIdempotent, Scope::Commuting),
    (Kind::SquareTwoIdempotent, Scope::InZa),
    (Kind::SquareTwoIdempotent, Scope::Commuting),
    (Kind::FourthPowerIdempotent, Scope::Commuting),
    (Kind::QuinticWitness, Scope::InZa),
];

/// Rings built by the suite itself (triangular and matrix rings over corpus
/// members) stay below this size.
const DERIVED_RING_LIMIT: usize = 1 << 15;

struct Facts {
    ring: FiniteRing,
    name: String,
    zhou: bool,
    /// The constructive quintic witness succeeds and validates on every element.
    quintic_constructive: bool,
    every: [bool; KINDS.len()],
    strongly_2_nil_clean: bool,
    kosan: bool,
    exchange: bool,
    clean: bool,
    units_square_unipotent: bool,
    thirty_nilpotent: bool,
    jacobson_nil: bool,
    jacobson_zero: bool,
    identities: RingIdentities,
    local: LocalInfo,
}

impl Facts {
    fn gather(ring: &FiniteRing) -> Self {
        let holds = |p| check_property(ring, p).holds;
        let every = KINDS.map(|(kind, scope)| {
            ring.elements()
                .all(|a| decompose(ring, a, kind, scope).expect("element of this ring").is_some())
        });
        let j = jacobson_radical(ring);
        let jacobson_nil = j.iter().all(|x| is_nilpotent(ring, x));
        Facts {
            ring: ring.clone(),
            name: ring_name(ring),
            zhou: holds(Property::ZhouNilClean),
            quintic_constructive: ring.elements().all(|a| quintic_witness(ring, a).is_ok()),
            every,
            strongly_2_nil_clean: holds(Property::StronglyTwoNilClean),
            kosan: holds(Property::Kosan),
            exchange: holds(Property::Exchange),
            clean: holds(Property::Clean),
            units_square_unipotent: holds(Property::UnitsSquareUnipotent),
            thirty_nilpotent: is_nilpotent(ring, ring.int_image(30)),
            jacobson_nil,
            jacobson_zero: j.len() == 1,
            identities: classify::ring_identities(ring),
            local: classify::is_local(ring),
        }
    }

    fn every(&self, kind: Kind, scope: Scope) -> bool {
        let i = KINDS
            .iter()
            .position(|&k| k == (kind, scope))
            .expect("kind tracked by the suite");
        self.every[i]
    }

    fn case(&self, holds: bool, detail: String) -> CaseRecord {
        CaseRecord {
            ring: self.name.clone(),
            holds,
            detail,
        }
    }
}

fn show(pairs: &[(&str, bool)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn all_equal(values: &[bool]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// A row whose sides must all agree on every ring.
fn equivalence(
    facts: &[Facts],
    id: &'static str,
    statement: &'static str,
    sides: impl Fn(&Facts) -> Vec<(&'static str, bool)>,
) -> TheoremRow {
    row(
        id,
        statement,
        facts.iter().map(|f| {
            let s = sides(f);
            let values: Vec<bool> = s.iter().map(|p| p.1).collect();
            Some(f.case(all_equal(&values), show(&s)))
        }),
    )
}

/// A row `hypothesis => conclusion`, applicable where the hypothesis holds.
fn implication(
    facts: &[Facts],
    id: &'static str,
    statement: &'static str,
    hypothesis: impl Fn(&Facts) -> bool,
    conclusion: impl Fn(&Facts) -> (&'static str, bool),
) -> TheoremRow {
    row(
        id,
        statement,
        facts.iter().map(|f| {
            hypothesis(f).then(|| {
                let (name, value) = conclusion(f);
                f.case(value, show(&[(name, value)]))
            })
        }),
    )
}

fn row(id: &'static str, statement: &'static str, cases: impl Iterator<Item = Option<CaseRecord>>) -> TheoremRow {
    let cases: Vec<CaseRecord> = cases.flatten().collect();
    TheoremRow {
        id,
        statement,
        passed: cases.iter().all(|c| c.holds),
        cases,
    }
}

pub fn theorem_suite(corpus: &[FiniteRing]) -> SuiteReport {
    let facts: Vec<Facts> = corpus.par_iter().map(Facts::gather).collect();
    let mut rows = vec![
        equivalence(
            &facts,
            "zhou_quintic_witness",
            "a^5 - 5a^3 + 4a nilpotent for all a <=> every a has a quintic witness in Z[a] <=> every a is two commuting tripotents plus a nilpotent",
            |f| {
                vec![
                    ("criterion", f.zhou),
                    ("quintic_witness", f.quintic_constructive),
                    ("quintic_witness_search", f.every(Kind::QuinticWitness, Scope::InZa)),
                    ("two_tripotents", f.every(Kind::TwoTripotents, Scope::Commuting)),
                ]
            },
        ),
        equivalence(
            &facts,
            "x5_identity",
            "x^5 = x <=> reduced and x^5 = 5x^3 - 4x",
            |f| {
                let ids = f.identities;
                vec![("x5_eq_x", ids.x5_eq_x), ("reduced_and_quintic", ids.reduced && ids.quintic_identity)]
            },
        ),
        quintic_root_of_two(),
        equivalence(
            &facts,
            "four_idempotents",
            "zhou nil-clean <=> every a = e + f + g + h + w with idempotents in Z[a] <=> the same with commuting parts",
            |f| {
                vec![
                    ("zhou", f.zhou),
                    ("in_za", f.every(Kind::FourIdempotents, Scope::InZa)),
                    ("commuting", f.every(Kind::FourIdempotents, Scope::Commuting)),
                ]
            },
        ),
        equivalence(
            &facts,
            "x5_four_idempotents",
            "x^5 = x <=> reduced and every element a sum of four commuting idempotents",
            |f| {
                vec![
                    ("x5_eq_x", f.identities.x5_eq_x),
                    (
                        "reduced_and_four",
                        f.identities.reduced && f.every(Kind::FourIdempotents, Scope::Commuting),
                    ),
                ]
            },
        ),
        equivalence(
            &facts,
            "strongly_2_nil_clean_sums",
            "strongly 2-nil-clean <=> two commuting idempotents plus a nilpotent <=> three",
            |f| {
                vec![
                    ("strongly_2_nil_clean", f.strongly_2_nil_clean),
                    ("two_idempotents", f.every(Kind::TwoIdempotents, Scope::Commuting)),
                    ("three_idempotents", f.every(Kind::ThreeIdempotents, Scope::Commuting)),
                ]
            },
        ),
        implication(
            &facts,
            "two_2idempotents_thirty",
            "every a two commuting 2-idempotents plus a nilpotent => 30 nilpotent",
            |f| f.every(Kind::TwoTwoIdempotents, Scope::Commuting),
            |f| ("thirty_nilpotent", f.thirty_nilpotent),
        ),
        equivalence(
            &facts,
            "two_2idempotents",
            "zhou nil-clean <=> every a = e + f + w with 2-idempotents in Z[a] <=> the same with commuting parts",
            |f| {
                vec![
                    ("zhou", f.zhou),
                    ("in_za", f.every(Kind::TwoTwoIdempotents, Scope::InZa)),
                    ("commuting", f.every(Kind::TwoTwoIdempotents, Scope::Commuting)),
                ]
            },
        ),
        equivalence(
            &facts,
            "one_2idempotent",
            "strongly 2-nil-clean <=> every a a 2-idempotent plus a commuting nilpotent",
            |f| {
                vec![
                    ("strongly_2_nil_clean", f.strongly_2_nil_clean),
                    ("one_2idempotent", f.every(Kind::OneTwoIdempotent, Scope::Commuting)),
                ]
            },
        ),
        equivalence(
            &facts,
            "square_2idempotent",
            "zhou nil-clean <=> every a^2 = e + w with a 2-idempotent e in Z[a] <=> the same with commuting parts",
            |f| {
                vec![
                    ("zhou", f.zhou),
                    ("in_za", f.every(Kind::SquareTwoIdempotent, Scope::InZa)),
                    ("commuting", f.every(Kind::SquareTwoIdempotent, Scope::Commuting)),
                ]
            },
        ),
        equivalence(
            &facts,
            "fourth_power_idempotent",
            "zhou nil-clean <=> every a^4 an idempotent plus a commuting nilpotent",
            |f| {
                vec![
                    ("zhou", f.zhou),
                    ("fourth_power", f.every(Kind::FourthPowerIdempotent, Scope::Commuting)),
                ]
            },
        ),
        row(
            "bounded_index",
            "every a two commuting 2-idempotents plus a nilpotent => nilpotents of bounded index (reported)",
            facts.iter().map(|f| {
                f.every(Kind::TwoTwoIdempotents, Scope::Commuting)
                    .then(|| f.case(true, format!("bounded_index={}", f.identities.bounded_index)))
            }),
        ),
        matrix_tripotent_sums(&facts),
        kosan_closure(&facts),
        kosan_nil_quotient(&facts),
        kosan_triangular(&facts),
        row(
            "kosan_matrix",
            "M2(R) is never Kosan",
            facts.iter().map(|f| {
                let n = f.ring.size();
                (n > 1 && n.pow(4) <= DERIVED_RING_LIMIT).then(|| {
                    let m = FiniteRing::matrix(2, &f.ring).expect("size checked");
                    let kosan = check_property(&m, Property::Kosan).holds;
                    f.case(!kosan, show(&[("kosan_m2", kosan)]))
                })
            }),
        ),
        row(
            "kosan_local",
            "local R: Kosan <=> J(R) nil and R/J(R) a field with 2, 3 or 5 elements",
            facts.iter().map(|f| {
                f.local.local.then(|| {
                    let rhs = f.jacobson_nil && f.local.residue_field_235;
                    let detail = format!(
                        "{} residue_size={}",
                        show(&[("kosan", f.kosan), ("jacobson_nil_and_residue_235", rhs)]),
                        f.local.residue_size.unwrap_or(0)
                    );
                    f.case(f.kosan == rhs, detail)
                })
            }),
        ),
        row(
            "kosan_zn",
            "Z/n is Kosan <=> n has no prime factor beyond 2, 3, 5",
            facts.iter().map(|f| match f.ring.construction() {
                Construction::Zmod { modulus } => {
                    let nt = zn_kosan_numbertheory(*modulus as u64);
                    Some(f.case(f.kosan == nt, show(&[("kosan", f.kosan), ("number_theory", nt)])))
                }
                _ => None,
            }),
        ),
        implication(
            &facts,
            "exchange_kosan_thirty",
            "exchange and Kosan => 30 nilpotent",
            |f| f.exchange && f.kosan,
            |f| ("thirty_nilpotent", f.thirty_nilpotent),
        ),
        implication(
            &facts,
            "exchange_kosan_jacobson_nil",
            "exchange and Kosan => J(R) nil",
            |f| f.exchange && f.kosan,
            |f| ("jacobson_nil", f.jacobson_nil),
        ),
        implication(
            &facts,
            "exchange_kosan_reduced",
            "exchange, Kosan and J(R) = 0 => reduced",
            |f| f.exchange && f.kosan && f.jacobson_zero,
            |f| ("reduced", f.identities.reduced),
        ),
        equivalence(
            &facts,
            "zhou_exchange_kosan",
            "zhou nil-clean <=> exchange and Kosan",
            |f| vec![("zhou", f.zhou), ("exchange_and_kosan", f.exchange && f.kosan)],
        ),
        equivalence(
            &facts,
            "zhou_clean_kosan",
            "zhou nil-clean <=> clean and Kosan",
            |f| vec![("zhou", f.zhou), ("clean_and_kosan", f.clean && f.kosan)],
        ),
        equivalence(
            &facts,
            "strongly_2_nil_clean_units",
            "strongly 2-nil-clean <=> exchange and every unit square unipotent",
            |f| {
                vec![
                    ("strongly_2_nil_clean", f.strongly_2_nil_clean),
                    ("exchange_and_units_square_unipotent", f.exchange && f.units_square_unipotent),
                ]
            },
        ),
    ];
    rows.push(idempotent_lifting(&facts));
    rows.push(quintic_sanity(&facts));
    SuiteReport {
        rings: facts.iter().map(|f| f.name.clone()).collect(),
        passed: rows.iter().all(|r| r.passed),
        rows,
    }
}

/// In `Z/25`, the elements `f` with `f^5 = f` and `2 - f` nilpotent, found by
/// scanning candidates `f` and, independently, nilpotents `w` with `f = 2 - w`.
pub fn quintic_root_of_two_scan() -> (Vec<usize>, Vec<usize>) {
    let r = FiniteRing::zmod(25).expect("small modulus");
    let two = r.int_image(2);
    let by_f: Vec<usize> = r
        .elements()
        .filter(|&f| r.pow(f, 5) == f && is_nilpotent(&r, r.sub(two, f)))
        .map(|f| f.index())
        .collect();
    let mut by_w: Vec<usize> = r
        .elements()
        .filter(|&w| is_nilpotent(&r, w))
        .map(|w| r.sub(two, w))
        .filter(|&f| r.pow(f, 5) == f)
        .map(|f| f.index())
        .collect();
    by_w.sort_unstable();
    (by_f, by_w)
}

fn quintic_root_of_two() -> TheoremRow {
    let (by_f, by_w) = quintic_root_of_two_scan();
    let nilpotent_parts: Vec<usize> = by_f.iter().map(|f| (2 + 25 - f) % 25).collect();
    let detail = format!("witnesses f={by_f:?} nilpotent parts w={nilpotent_parts:?}");
    row(
        "quintic_root_of_two",
        "Z25: elements f with f^5 = f and 2 - f nilpotent (scan by f agrees with scan by w)",
        std::iter::once(Some(CaseRecord {
            ring: "Z25".into(),
            holds: by_f == by_w,
            detail,
        })),
    )
}

fn matrix_tripotent_sums(facts: &[Facts]) -> TheoremRow {
    row(
        "matrix_tripotent_sums",
        "zhou nil-clean R => every matrix in M2(R) is two tripotents plus a nilpotent",
        facts.iter().map(|f| {
            (f.zhou && f.ring.size().pow(4) <= 256).then(|| {
                let m = FiniteRing::matrix(2, &f.ring).expect("size checked");
                let v = matrix_tripotent_sum_check(&m).expect("matrix ring");
                f.case(v.holds, show(&[("m2_tripotent_sums", v.holds)]))
            })
        }),
    )
}

fn kosan_closure(facts: &[Facts]) -> TheoremRow {
    let factory = RingFactory::default();
    row(
        "kosan_closure",
        "Kosan passes to finite products (exactly), corners eRe and subrings Z[a]",
        facts.iter().map(|f| {
            let r = &f.ring;
            let mut parts = Vec::new();
            let mut ok = true;
            if let Construction::Product { factors } = r.construction() {
                let all = factors.iter().all(|x| check_property(x, Property::Kosan).holds);
                ok &= all == f.kosan;
                parts.push(("factors_kosan", all));
            }
            if f.kosan {
                let corners = classify::idempotents(r).iter().all(|&e| {
                    let c = factory.corner(r, e).expect("idempotent");
                    check_property(&c, Property::Kosan).holds
                });
                let subrings = r.elements().all(|a| {
                    let s = factory.subring_generated(r, a).expect("element of r");
                    check_property(&s, Property::Kosan).holds
                });
                ok &= corners && subrings;
                parts.push(("corners_kosan", corners));
                parts.push(("subrings_kosan", subrings));
            }
            (!parts.is_empty()).then(|| {
                parts.insert(0, ("kosan", f.kosan));
                f.case(ok, show(&parts))
            })
        }),
    )
}

fn kosan_nil_quotient(facts: &[Facts]) -> TheoremRow {
    let factory = RingFactory::default();
    row(
        "kosan_nil_quotient",
        "R is Kosan <=> R/I is Kosan, I the (nil) ideal generated by the central nilpotents",
        facts.iter().map(|f| {
            let r = &f.ring;
            let gens: Vec<_> = r
                .elements()
                .filter(|&x| is_nilpotent(r, x) && is_central(r, x))
                .collect();
            let q = factory.quotient_central(r, &gens).expect("central generators");
            let ideal_nil = r
                .elements()
                .filter(|&x| q.from_base(x) == Some(q.zero()))
                .all(|x| is_nilpotent(r, x));
            let kq = check_property(&q, Property::Kosan).holds;
            let detail = format!(
                "{} quotient_size={}",
                show(&[("kosan", f.kosan), ("kosan_quotient", kq), ("ideal_nil", ideal_nil)]),
                q.size()
            );
            Some(f.case(ideal_nil && kq == f.kosan, detail))
        }),
    )
}

fn kosan_triangular(facts: &[Facts]) -> TheoremRow {
    row(
        "kosan_triangular",
        "T_k(R) is Kosan <=> R is Kosan (k = 2, 3 where T_k(R) is small enough)",
        facts.iter().map(|f| {
            let n = f.ring.size();
            let mut parts = vec![("kosan", f.kosan)];
            for (k, label) in [(2u32, "kosan_t2"), (3, "kosan_t3")] {
                let entries = k * (k + 1) / 2;
                if n.checked_pow(entries).is_some_and(|s| s <= DERIVED_RING_LIMIT) {
                    let t = FiniteRing::triangular(k as usize, &f.ring).expect("size checked");
                    parts.push((label, check_property(&t, Property::Kosan).holds));
                }
            }
            (parts.len() > 1).then(|| {
                let values: Vec<bool> = parts.iter().map(|p| p.1).collect();
                f.case(all_equal(&values), show(&parts))
            })
        }),
    )
}

fn ceil_log2(n: u32) -> u32 {
    u32::BITS - n.saturating_sub(1).leading_zeros()
}

fn idempotent_lifting(facts: &[Facts]) -> TheoremRow {
    row(
        "idempotent_lifting",
        "b - b^2 nilpotent => e <- 3e^2 - 2e^3 reaches an idempotent of Z[b] congruent to b within ceil(log2 index) + 1 steps",
        facts.iter().map(|f| {
            let r = &f.ring;
            let mut checked = 0usize;
            let mut worst = 0u32;
            let mut ok = true;
            for b in r.elements() {
                let Some(index) = nilpotency_index(r, r.sub(b, r.mul(b, b))) else {
                    continue;
                };
                checked += 1;
                let Ok(lift) = lift_idempotent_traced(r, b) else {
                    ok = false;
                    continue;
                };
                let e = lift.idempotent;
                worst = worst.max(lift.iterations);
                ok &= lift.iterations <= ceil_log2(index) + 1
                    && is_idempotent(r, e)
                    && zint_members(r, b)[e.index()]
                    && is_nilpotent(r, r.sub(b, e));
            }
            Some(f.case(ok, format!("liftable={checked} max_iterations={worst}")))
        }),
    )
}

fn quintic_sanity(facts: &[Facts]) -> TheoremRow {
    row(
        "quintic_sanity",
        "idempotents and tripotents satisfy x^5 = 5x^3 - 4x; commuting idempotents e, f give a tripotent (1 - e) - f",
        facts.iter().map(|f| {
            let r = &f.ring;
            let idem = classify::idempotents(r);
            let roots = idem
                .iter()
                .chain(classify::tripotents(r))
                .all(|&x| is_quintic_root(r, x));
            let transform = idem.iter().all(|&e| {
                idem.iter()
                    .filter(|&&g| r.commute(e, g))
                    .all(|&g| is_tripotent(r, r.sub(r.sub(r.one(), e), g)))
            });
            Some(f.case(
                roots && transform,
                show(&[("quintic_roots", roots), ("transform", transform)]),
            ))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_two_scan_finds_seven() {
        assert_eq!(quintic_root_of_two_scan(), (vec![7], vec![7]));
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn small_suite_passes() {
        let factory = RingFactory::default();
        let corpus: Vec<FiniteRing> = ["Z2", "Z5", "Z7", "Z12", "Z25", "T2(Z2)", "M2(Z2)", "prod(Z2,Z3)"]
            .iter()
            .map(|t| build_str(t, &factory).unwrap())
            .collect();
        let report = theorem_suite(&corpus);
        for row in &report.rows {
            assert!(row.passed, "{}: {:?}", row.id, row.cases.iter().find(|c| !c.holds));
        }
        let row = report.row("kosan_zn").unwrap();
        assert_eq!(row.cases.len(), 5);
        assert!(report
            .row("zhou_exchange_kosan")
            .unwrap()
            .cases
            .iter()
            .any(|c| c.ring == "M2(Z2)"));
    }
}
