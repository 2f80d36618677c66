use nilq::rep;

#[test]
fn degree_three_table() {
    let rows = rep::appendix_table().unwrap();
    assert_eq!(rows.len(), 13);
    for r in &rows {
        assert!(r.mismatches.is_empty(), "{} alpha{}: {:?}", r.algebra, r.simple, r.mismatches);
        assert_eq!(r.multiplicity, 2, "{} alpha{}", r.algebra, r.simple);
    }
    assert_eq!(rows.iter().filter(|r| !r.tabulated).count(), 1);
}
