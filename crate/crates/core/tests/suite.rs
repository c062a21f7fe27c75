use ringlab_core::properties::{default_corpus, theorem_suite};

#[test]
fn default_corpus_suite_passes() {
    let report = theorem_suite(&default_corpus());
    for row in &report.rows {
        let failing: Vec<_> = row.cases.iter().filter(|c| !c.holds).collect();
        assert!(failing.is_empty(), "{}: {failing:?}", row.id);
        assert!(!row.cases.is_empty(), "{} never applied", row.id);
    }
    assert!(report.passed);
    assert_eq!(report.rings.len(), 24);
}
