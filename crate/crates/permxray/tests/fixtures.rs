//! The bundled b-files must stay in exact agreement with what the library
//! computes; any drift in either direction fails here.

use permxray::oeis::{compare, Client, Verdict};

fn client() -> Client {
    Client::new().without_cache().offline(true)
}

fn assert_prefix(id: &str, computed: Vec<i64>, offset: i64) {
    let seq = client().fetch(id).unwrap();
    let report = compare(&seq, &computed, offset);
    assert_eq!(
        report.verdict,
        Verdict::AllMatch,
        "{id}: {:?}",
        report
            .checks
            .iter()
            .filter(|c| c.matched() != Some(true))
            .collect::<Vec<_>>()
    );
    // And the fixture holds nothing beyond what was verified here.
    assert_eq!(seq.terms.len(), computed.len(), "{id} fixture length");
}

#[test]
fn involution_counts() {
    let computed: Vec<i64> = (0..=12)
        .map(|n| permxray::structures::involution_count(n) as i64)
        .collect();
    assert_prefix("A000085", computed, 0);
}

#[test]
fn tournament_score_sequences() {
    let computed: Vec<i64> = (0..=12)
        .map(|n| permxray::binary::generalized_score_sequences(n, 1) as i64)
        .collect();
    assert_prefix("A000571", computed, 0);
}

#[test]
fn zero_sum_arrays() {
    let computed: Vec<i64> = [1usize, 3, 5, 7, 9]
        .iter()
        .map(|&m| permxray::structures::enumerate_zero_sum_arrays(m).unwrap().len() as i64)
        .collect();
    assert_prefix("A002047", computed, 0);
}

#[test]
fn two_power_thirds() {
    let computed: Vec<i64> = (0..=10u32).map(|k| ((1i64 << (2 * k + 1)) + 1) / 3).collect();
    assert_prefix("A007583", computed, 0);
}

#[test]
fn distinct_xray_counts() {
    let computed: Vec<i64> = (1..=9)
        .map(|n| permxray::degeneracy::count_distinct_xrays(n).unwrap() as i64)
        .collect();
    assert_prefix("A019589", computed, 1);
}

#[test]
fn reverse_inverse_invariant_counts() {
    let computed: Vec<i64> = (1..=10)
        .map(|n| permxray::structures::count_reverse_inverse_invariant(n).unwrap() as i64)
        .collect();
    assert_prefix("A097296", computed.clone(), 1);
    // The rotationally-invariant rooks sequence carries the same terms.
    assert_prefix("A037224", computed, 1);
}

#[test]
fn three_point_score_sequences() {
    let computed: Vec<i64> = (1..=9)
        .map(|n| permxray::binary::generalized_score_sequences(n, 3) as i64)
        .collect();
    assert_prefix("A047729", computed, 1);
}
