mod common;

use invopat::perm::{involutions, pattern_of, permutations};
use invopat::tableau::{evacuation, rsk, rsk_inverse, standard_tableaux};
use invopat::Permutation;
use proptest::prelude::*;

fn perm_strategy(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn involution_strategy(max_len: usize) -> impl Strategy<Value = Permutation> {
    perm_strategy(max_len).prop_map(|p| {
        // pair up consecutive entries of a shuffle, leaving odd ones fixed
        let v = p.values();
        let mut img = vec![0; v.len()];
        let mut k = 0;
        while k < v.len() {
            if k + 1 < v.len() && v[k] % 3 != 0 {
                img[v[k] - 1] = v[k + 1];
                img[v[k + 1] - 1] = v[k];
                k += 2;
            } else {
                img[v[k] - 1] = v[k];
                k += 1;
            }
        }
        Permutation::new(img).unwrap()
    })
}

proptest! {
    #[test]
    fn pattern_of_is_idempotent(word in prop::collection::hash_set(-50i64..50, 0..9)) {
        let word: Vec<i64> = word.into_iter().collect();
        let once = pattern_of(&word).unwrap();
        let as_i64: Vec<i64> = once.values().iter().map(|&v| v as i64).collect();
        prop_assert_eq!(pattern_of(&as_i64).unwrap(), once);
    }

    #[test]
    fn containment_respects_symmetries(pi in perm_strategy(8), sigma in perm_strategy(4)) {
        let c = pi.contains(&sigma);
        prop_assert_eq!(pi.inverse().contains(&sigma.inverse()), c);
        prop_assert_eq!(pi.reversed_complement().contains(&sigma.reversed_complement()), c);
        prop_assert_eq!(pi.reverse().contains(&sigma.reverse()), c);
    }

    #[test]
    fn containment_matches_subsequence_search(pi in perm_strategy(7), sigma in perm_strategy(4)) {
        let to0 = |p: &Permutation| p.values().iter().map(|v| v - 1).collect::<Vec<_>>();
        let subs = common::subsets(pi.len(), sigma.len());
        prop_assert_eq!(pi.contains(&sigma), common::contains(&to0(&pi), &to0(&sigma), &subs));
    }

    #[test]
    fn rsk_round_trip(pi in perm_strategy(9)) {
        let (p, q) = rsk(&pi);
        prop_assert_eq!(p.shape(), q.shape());
        prop_assert_eq!(rsk_inverse(&p, &q).unwrap(), pi.clone());
        let (pi_p, pi_q) = rsk(&pi.inverse());
        prop_assert_eq!((pi_p, pi_q), (q, p));
    }

    #[test]
    fn involutions_have_equal_tableaux(pi in involution_strategy(9)) {
        prop_assert!(pi.is_involution());
        let (p, q) = rsk(&pi);
        prop_assert_eq!(p, q);
    }

    #[test]
    fn text_round_trip(pi in perm_strategy(12)) {
        let text = pi.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), pi.clone());
        if pi.len() >= 10 {
            prop_assert!(text.contains(','));
        }
    }

    #[test]
    fn symmetry_class_members_share_counts(sigma in perm_strategy(4).prop_filter("nonempty", |s| !s.is_empty())) {
        let t = |p: &Permutation| invopat::PatternSet::single(p.clone()).unwrap();
        let base = invopat::count_avoiders(7, &t(&sigma));
        for member in sigma.symmetry_class() {
            prop_assert_eq!(invopat::count_avoiders(7, &t(&member)), base);
        }
    }
}

#[test]
fn enumerations_match_oracle() {
    for n in 0..=7 {
        let mine: Vec<Vec<usize>> = permutations(n)
            .iter()
            .map(|p| p.values().iter().map(|v| v - 1).collect())
            .collect();
        assert_eq!(mine, common::permutations(n));
        let mut inv: Vec<Vec<usize>> = involutions(n)
            .iter()
            .map(|p| p.values().iter().map(|v| v - 1).collect())
            .collect();
        let mut oracle = common::involutions(n);
        inv.sort();
        oracle.sort();
        assert_eq!(inv, oracle);
    }
}

#[test]
fn evacuation_is_an_involution_and_commutes_with_shape() {
    for n in 0..=8 {
        for t in standard_tableaux(n) {
            let e = evacuation(&t);
            assert_eq!(e.shape(), t.shape());
            assert_eq!(evacuation(&e), t);
        }
    }
}
