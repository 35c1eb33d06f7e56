//! Candidate pair generation under three interchangeable strategies.
//!
//! Documents are sorted ascending by a per-strategy length measure, and each
//! document `s` is paired with the documents `t` that follow it while
//! `L_t <= L_s / J` holds. Because the keys are non-decreasing, the scan for
//! `s` can stop at the first `t` that fails the test. `ALL_PAIRS` skips the
//! test entirely and emits every unordered pair — the exhaustive baseline
//! the other two strategies are audited against.
//!
//! With the set-length measure the filter is exact: `SIM(s,t) <= L_s / L_t`,
//! so no pair at or above the threshold is ever pruned. The weighted-length
//! measure has no such guarantee; it trades provable recall for deeper
//! pruning, which is precisely what the recall auditor quantifies.
//!
//! Profiles with an empty shingle set are excluded from generation outright.
//! They are flagged at ingestion, and a 0/0 similarity is a definition, not
//! evidence of duplication.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::shingle::ShingleProfile;

/// Which candidate filter a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterStrategy {
    /// Exhaustive baseline: every unordered pair is a candidate.
    AllPairs,
    /// Classical length filter keyed on the distinct-shingle count.
    SetLength,
    /// Repetition-weighted filter keyed on `Σ i · F(i)`.
    WeightedLength,
}

impl FilterStrategy {
    pub const ALL: [FilterStrategy; 3] = [
        FilterStrategy::AllPairs,
        FilterStrategy::SetLength,
        FilterStrategy::WeightedLength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FilterStrategy::AllPairs => "all-pairs",
            FilterStrategy::SetLength => "set-length",
            FilterStrategy::WeightedLength => "weighted-length",
        }
    }
}

impl fmt::Display for FilterStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-pairs" => Ok(FilterStrategy::AllPairs),
            "set-length" => Ok(FilterStrategy::SetLength),
            "weighted-length" => Ok(FilterStrategy::WeightedLength),
            other => Err(format!(
                "unknown strategy {other:?} (expected all-pairs, set-length or weighted-length)"
            )),
        }
    }
}

/// A pair admitted by the filter, in scan order: `doc_a` is the document
/// with the smaller (or tied, earlier by id) length measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidatePair<'a> {
    pub doc_a: &'a str,
    pub doc_b: &'a str,
    pub length_a: u64,
    pub length_b: u64,
}

/// The sort key a strategy orders documents by.
pub fn sort_key(profile: &ShingleProfile, strategy: FilterStrategy) -> u64 {
    match strategy {
        // Order is immaterial for the exhaustive scan but kept fixed.
        FilterStrategy::AllPairs | FilterStrategy::SetLength => profile.set_length() as u64,
        FilterStrategy::WeightedLength => profile.weighted_length(),
    }
}

/// The admission test for a sorted pair: compare `t` against `s` iff
/// `L_t <= L_s / j`. Callers must pass `len_s <= len_t`.
pub fn admit(len_s: u64, len_t: u64, j: f64) -> bool {
    debug_assert!(len_s <= len_t, "admit requires len_s <= len_t");
    len_t as f64 <= len_s as f64 / j
}

/// Generate the candidate pairs for `profiles` under `strategy` at
/// threshold `j`, and count the pairs dismissed without comparison.
///
/// Profiles are ordered ascending by `(sort_key, doc_id)`; empty profiles
/// are excluded entirely. The dismissed count is `C(n, 2)` over the
/// participating profiles minus the emitted count.
pub fn candidates<'a>(
    profiles: &'a [ShingleProfile],
    strategy: FilterStrategy,
    j: f64,
) -> (Vec<CandidatePair<'a>>, u64) {
    let mut sorted: Vec<(u64, &ShingleProfile)> = profiles
        .iter()
        .filter(|profile| !profile.is_empty())
        .map(|profile| (sort_key(profile, strategy), profile))
        .collect();
    sorted.sort_by(|(key_a, prof_a), (key_b, prof_b)| {
        key_a
            .cmp(key_b)
            .then_with(|| prof_a.doc_id().cmp(prof_b.doc_id()))
    });

    let n = sorted.len() as u64;
    let total_pairs = n * n.saturating_sub(1) / 2;
    let mut pairs = Vec::new();
    for (i, &(key_s, profile_s)) in sorted.iter().enumerate() {
        for &(key_t, profile_t) in &sorted[i + 1..] {
            if strategy != FilterStrategy::AllPairs && !admit(key_s, key_t, j) {
                // Keys are non-decreasing: every later t fails too.
                break;
            }
            pairs.push(CandidatePair {
                doc_a: profile_s.doc_id(),
                doc_b: profile_t.doc_id(),
                length_a: key_s,
                length_b: key_t,
            });
        }
    }
    let dismissed = total_pairs - pairs.len() as u64;
    (pairs, dismissed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use crate::shingle::build_profile;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn profile(doc_id: &str, text: &str, k: usize) -> ShingleProfile {
        build_profile(doc_id, text, &RunConfig::new(k, 0.9).unwrap())
    }

    #[test]
    fn sort_keys_for_worked_example() {
        let p = profile("d", "abcdabd", 2);
        assert_eq!(sort_key(&p, FilterStrategy::SetLength), 5);
        assert_eq!(sort_key(&p, FilterStrategy::WeightedLength), 16);
        assert_eq!(sort_key(&p, FilterStrategy::AllPairs), 5);
        let empty = profile("e", "", 2);
        for strategy in FilterStrategy::ALL {
            assert_eq!(sort_key(&empty, strategy), 0);
        }
    }

    #[test]
    fn admit_matches_worked_example() {
        // A length-9 string is compared with strings up to length 9/0.9 = 10.
        assert!(admit(9, 10, 0.9));
        assert!(!admit(9, 11, 0.9));
        assert!(admit(0, 0, 0.9));
    }

    #[test]
    fn all_pairs_emits_every_pair() {
        // 645 one-shingle profiles: C(645, 2) = 207690 candidates, none dismissed.
        let profiles: Vec<ShingleProfile> = (0..645)
            .map(|i| profile(&format!("d{i:03}"), "xy", 2))
            .collect();
        let (pairs, dismissed) = candidates(&profiles, FilterStrategy::AllPairs, 0.9);
        assert_eq!(pairs.len(), 207_690);
        assert_eq!(dismissed, 0);
    }

    #[test]
    fn equal_keys_always_admit() {
        // Three profiles with identical sort keys: all 3 pairs emitted.
        let profiles = vec![
            profile("a", "ab", 2),
            profile("b", "cd", 2),
            profile("c", "ef", 2),
        ];
        for strategy in FilterStrategy::ALL {
            let (pairs, dismissed) = candidates(&profiles, strategy, 0.9);
            assert_eq!(pairs.len(), 3, "strategy {strategy}");
            assert_eq!(dismissed, 0);
        }
    }

    #[test]
    fn empty_profiles_are_excluded() {
        let profiles = vec![
            profile("a", "", 2),
            profile("b", "abab", 2),
            profile("c", "abab", 2),
        ];
        let (pairs, dismissed) = candidates(&profiles, FilterStrategy::SetLength, 0.9);
        assert_eq!(pairs.len(), 1);
        assert_eq!(dismissed, 0);
        assert!(pairs.iter().all(|p| p.doc_a != "a" && p.doc_b != "a"));
    }

    #[test]
    fn pair_order_and_tie_breaking() {
        let profiles = vec![
            profile("b", "ab", 2),   // key 1
            profile("a", "ab", 2),   // key 1
            profile("c", "abcd", 2), // key 3
        ];
        let (pairs, _) = candidates(&profiles, FilterStrategy::SetLength, 0.5);
        // Sorted order is (a, 1), (b, 1), (c, 3); j = 0.5 admits key 1 -> 2 but not 1 -> 3.
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].doc_a, pairs[0].doc_b), ("a", "b"));
        assert!(pairs[0].length_a <= pairs[0].length_b);
    }

    /// The hand-built pair the weighted filter wrongly dismisses: one
    /// document dominated by a single repeated shingle (weighted length
    /// 1000), one small document sharing half its set (weighted length 3).
    /// SIM = 1/2, yet 1000 > 3 / 0.5 prunes the pair at j = 0.5.
    #[test]
    fn weighted_filter_dismisses_adversarial_pair() {
        let heavy = profile("heavy", &"a".repeat(1001), 2);
        assert_eq!(heavy.set_length(), 1);
        assert_eq!(heavy.weighted_length(), 1000);
        let light = profile("light", "aab", 2);
        assert_eq!(light.set_length(), 2);
        assert_eq!(light.weighted_length(), 3);

        let profiles = vec![heavy, light];
        let (weighted, dismissed) = candidates(&profiles, FilterStrategy::WeightedLength, 0.5);
        assert!(weighted.is_empty());
        assert_eq!(dismissed, 1);

        // The set-length filter keeps it: admit(1, 2, 0.5) holds.
        let (set_based, _) = candidates(&profiles, FilterStrategy::SetLength, 0.5);
        assert_eq!(set_based.len(), 1);
    }

    fn pair_set<'a>(pairs: &[CandidatePair<'a>]) -> HashSet<(&'a str, &'a str)> {
        pairs.iter().map(|p| (p.doc_a, p.doc_b)).collect()
    }

    /// Brute-force reference: apply admit to every sorted pair independently,
    /// no early exit.
    fn double_loop_candidates<'a>(
        profiles: &'a [ShingleProfile],
        strategy: FilterStrategy,
        j: f64,
    ) -> HashSet<(&'a str, &'a str)> {
        let mut sorted: Vec<(u64, &ShingleProfile)> = profiles
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| (sort_key(p, strategy), p))
            .collect();
        sorted.sort_by(|(ka, pa), (kb, pb)| ka.cmp(kb).then_with(|| pa.doc_id().cmp(pb.doc_id())));
        let mut out = HashSet::new();
        for i in 0..sorted.len() {
            for m in (i + 1)..sorted.len() {
                if strategy == FilterStrategy::AllPairs || admit(sorted[i].0, sorted[m].0, j) {
                    out.insert((sorted[i].1.doc_id(), sorted[m].1.doc_id()));
                }
            }
        }
        out
    }

    fn arbitrary_profiles() -> impl Strategy<Value = Vec<ShingleProfile>> {
        prop::collection::vec("[a-d]{0,24}", 2..12).prop_map(|texts| {
            texts
                .into_iter()
                .enumerate()
                .map(|(i, text)| profile(&format!("d{i:02}"), &text, 2))
                .collect()
        })
    }

    proptest! {
        /// The early-exit scan emits exactly what the full double loop does.
        #[test]
        fn early_exit_equivalence(profiles in arbitrary_profiles(), j in 0.05f64..=1.0) {
            for strategy in FilterStrategy::ALL {
                let (pairs, dismissed) = candidates(&profiles, strategy, j);
                let reference = double_loop_candidates(&profiles, strategy, j);
                prop_assert_eq!(pair_set(&pairs), reference);
                let n = profiles.iter().filter(|p| !p.is_empty()).count() as u64;
                prop_assert_eq!(dismissed + pairs.len() as u64, n * n.saturating_sub(1) / 2);
            }
        }

        /// Lowering j never shrinks the candidate set.
        #[test]
        fn monotone_in_threshold(profiles in arbitrary_profiles(), j_low in 0.05f64..=1.0, j_high in 0.05f64..=1.0) {
            let (lo, hi) = if j_low <= j_high { (j_low, j_high) } else { (j_high, j_low) };
            for strategy in FilterStrategy::ALL {
                let (at_hi, _) = candidates(&profiles, strategy, hi);
                let (at_lo, _) = candidates(&profiles, strategy, lo);
                let lo_set = pair_set(&at_lo);
                for pair in pair_set(&at_hi) {
                    prop_assert!(lo_set.contains(&pair), "pair {:?} lost when j dropped {} -> {}", pair, hi, lo);
                }
            }
        }

        /// Candidate order is a pure function of the inputs.
        #[test]
        fn deterministic(profiles in arbitrary_profiles(), j in 0.05f64..=1.0) {
            for strategy in FilterStrategy::ALL {
                prop_assert_eq!(candidates(&profiles, strategy, j), candidates(&profiles, strategy, j));
            }
        }

        /// Emitted pairs respect the sorted-scan invariant.
        #[test]
        fn emitted_lengths_are_ordered(profiles in arbitrary_profiles(), j in 0.05f64..=1.0) {
            for strategy in FilterStrategy::ALL {
                let (pairs, _) = candidates(&profiles, strategy, j);
                for pair in &pairs {
                    prop_assert!(pair.length_a <= pair.length_b);
                    if pair.length_a == pair.length_b {
                        prop_assert!(pair.doc_a < pair.doc_b);
                    }
                }
            }
        }
    }

    #[test]
    fn strategy_names_round_trip() {
        for strategy in FilterStrategy::ALL {
            assert_eq!(strategy.name().parse::<FilterStrategy>(), Ok(strategy));
        }
        assert!("minhash".parse::<FilterStrategy>().is_err());
    }
}
