mod common;

use common::*;
use plie_core::search::*;
use plie_core::Exec;

#[test]
fn dimension_two_hits() {
    let hits = first_nontrivial_bialgebras(&[2, 3], &[-1, 0, 1], Exec::default());
    assert_eq!(hits.len(), 64);
    assert!(hits.iter().all(|b| b.dim() == 2 && b.validate().is_ok()));
    // no dimension-two hit is flat with the identity metric
    assert_eq!(first_flat_metaflat_with_bracket(&hits), None);
}

#[test]
fn frozen_entry_meets_selection_rule() {
    let e = entry("nontrivial-bi");
    assert_eq!(first_flat_metaflat_with_bracket(&[e.bi]), Some(0));
    let so = entry("so3-dual");
    assert_eq!(first_flat_metaflat_with_bracket(&[so.bi]), None);
}

#[test]
fn dimension_three_algebra_count() {
    let algs = enumerate_lie_algebras(3, &[-1, 0, 1], Exec::default());
    assert_eq!(algs.len(), 1335);
    assert!(algs.contains(&nontrivial_g()) && algs.contains(&nontrivial_gstar()));
}
