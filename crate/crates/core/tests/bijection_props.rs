mod common;

use std::collections::BTreeMap;

use invopat::bijection::{
    class_decomposition_check, hat, lambda_t, slide_inverse, slide_trace, verify_reduction_equivalence,
    SlideCase, SuffixSet,
};
use invopat::board::{enumerate_self_conjugate_shapes, enumerate_symmetric_full_placements};
use invopat::verify::slide_cell;
use invopat::{BoardPlacement, Permutation, Shape};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn reduced_shape_ignores_dots_inside_kept_boxes() {
    let mut rng = StdRng::seed_from_u64(7);
    let shapes: Vec<Shape> = enumerate_self_conjugate_shapes(7)
        .into_iter()
        .filter(|s| !enumerate_symmetric_full_placements(s).unwrap().is_empty())
        .collect();
    let suffix_sets: Vec<SuffixSet> = (1..=3)
        .flat_map(|j| SuffixSet::all_small(j, 2, 2))
        .collect();
    let mut nontrivial = 0;
    for _ in 0..400 {
        let mu = shapes.choose(&mut rng).unwrap();
        let placements = enumerate_symmetric_full_placements(mu).unwrap();
        let parent = placements.choose(&mut rng).unwrap();
        let t = suffix_sets.choose(&mut rng).unwrap();
        let reduced = lambda_t(mu, parent, t).unwrap();
        let inner = enumerate_symmetric_full_placements(&reduced.shape).unwrap();
        let q = inner.choose(&mut rng).unwrap();
        let lifted = reduced.lift(parent, q).unwrap();
        assert!(lifted.is_symmetric() && lifted.is_full());
        let again = lambda_t(mu, &lifted, t).unwrap();
        assert_eq!(again.shape, reduced.shape, "{parent} -> {lifted} with {t}");
        assert_eq!(again.parent_boxes(), reduced.parent_boxes());
        assert_eq!(again.induced, *q);
        nontrivial += usize::from(inner.len() > 1);
    }
    assert!(nontrivial > 20);
}

#[test]
fn reduction_equivalence_on_random_large_placements() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(4..=10);
        let inv = common::involutions(n);
        let pi = inv.choose(&mut rng).unwrap();
        let pi = Permutation::new(pi.iter().map(|v| v + 1).collect()).unwrap();
        let placement = BoardPlacement::from_permutation(&pi);
        let mu = Shape::square(n);
        for sigma in ["12", "21"] {
            let t = SuffixSet::parse(2, "43,3").unwrap();
            assert!(verify_reduction_equivalence(&mu, &placement, &p(sigma), &t).unwrap());
        }
        for sigma in ["123", "321", "132", "213"] {
            let t = SuffixSet::parse(3, "54,645").unwrap();
            assert!(verify_reduction_equivalence(&mu, &placement, &p(sigma), &t).unwrap());
        }
    }
}

#[test]
fn class_decomposition_on_squares() {
    for n in 0..=5 {
        let mu = Shape::square(n);
        assert!(class_decomposition_check(&mu, &SuffixSet::parse(2, "43").unwrap(), &p("12"), &p("21")).unwrap());
        assert!(class_decomposition_check(&mu, &SuffixSet::parse(3, "54").unwrap(), &p("123"), &p("321")).unwrap());
    }
    let err = class_decomposition_check(
        &Shape::square(3),
        &SuffixSet::parse(2, "3").unwrap(),
        &p("12"),
        &p("231"),
    );
    assert!(err.is_err());
}

#[test]
fn slide_is_a_bijection_on_side_seven() {
    for lambda in enumerate_self_conjugate_shapes(7) {
        let last = lambda.last_part();
        for i in 1..last {
            for j in 1..=last - i {
                let r = slide_cell(&lambda, i, j).unwrap();
                assert!(r.pass, "{r}");
            }
        }
    }
}

#[test]
fn slide_images_never_collide_across_cases() {
    let dec3 = p("321");
    let mut seen_cases = std::collections::BTreeSet::new();
    for lambda in enumerate_self_conjugate_shapes(6) {
        let last = lambda.last_part();
        for i in 1..last {
            for j in 2..=last - i {
                let mut images: BTreeMap<BoardPlacement, SlideCase> = BTreeMap::new();
                for q in enumerate_symmetric_full_placements(&lambda).unwrap() {
                    if q.contains(&dec3) || q.restrict_columns(i, i + j - 1).contains(&p("21")) {
                        continue;
                    }
                    let t = slide_trace(&q, i, j).unwrap();
                    seen_cases.insert(t.case);
                    if let Some(prev) = images.insert(t.output.clone(), t.case) {
                        panic!("{lambda} i={i} j={j}: cases {prev} and {} share an image", t.case);
                    }
                    // diagonal dots outside the merge/split stay on the diagonal
                    if t.case != SlideCase::MirrorEndWithDiagonal {
                        let on_before = t.context.on.len();
                        let on_after = (i..=i + j)
                            .filter(|&c| t.output.height_in_column(c) == Some(c))
                            .count();
                        assert!(on_after >= on_before);
                    }
                    assert_eq!(slide_inverse(&t.output, i, j).unwrap(), q);
                }
            }
        }
    }
    // every case occurs somewhere in the sweep
    assert_eq!(seen_cases.len(), 6, "{seen_cases:?}");
}

#[test]
fn hat_shrinks_by_two() {
    for lambda in enumerate_self_conjugate_shapes(8) {
        if lambda.is_empty() || lambda.is_square() || !lambda.admits_full_placement() {
            continue;
        }
        let h = hat(&lambda).unwrap();
        assert!(h.is_self_conjugate());
        if !h.is_empty() {
            assert_eq!(h.len(), lambda.len() - 2, "{lambda}");
        }
    }
}
