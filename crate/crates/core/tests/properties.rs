use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use relcat_core::cat::{validate_category, validate_relative_category};
use relcat_core::harness::text::{
    read_relative_category, read_simplicial_category, read_simplicial_set, write_relative_category,
    write_simplicial_category, write_simplicial_set,
};
use relcat_core::harness::{gen_maps_from, gen_simplicial_category, gen_simplicial_set, run_instance, GenParams, SuiteId};
use relcat_core::homology::{smith_normal_form, IntMatrix};
use relcat_core::nerve::validate_bisimplicial_set;
use relcat_core::scat::{flipped_nerve, relativize, validate_simplicial_category};
use relcat_core::simp::validate_simplicial_set;

fn small(seed: u64, p: usize) -> GenParams {
    GenParams { seed, trunc_p: p, ..GenParams::default() }
}

/// Rank over ℚ by fraction-free elimination.
fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for j in 0..cols {
                m[i][j] = &m[i][j] * &a - &m[r][j] * &b;
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_sets_are_valid_and_round_trip(seed in any::<u64>(), p in 1usize..=3) {
        let x = gen_simplicial_set(&small(seed, p)).unwrap();
        prop_assert!(validate_simplicial_set(&x).is_empty());
        let text = write_simplicial_set(&x);
        prop_assert_eq!(read_simplicial_set(&text).unwrap(), x);
    }

    #[test]
    fn generated_categories_are_valid_and_round_trip(seed in any::<u64>(), acyclic in any::<bool>()) {
        let params = GenParams { acyclic, ..small(seed, 2) };
        let x = gen_simplicial_category(&params).unwrap();
        prop_assert!(validate_simplicial_category(&x).is_empty());
        let text = write_simplicial_category(&x);
        prop_assert_eq!(read_simplicial_category(&text).unwrap(), x);
    }

    #[test]
    fn grothendieck_is_a_relative_category(seed in any::<u64>()) {
        let x = gen_simplicial_category(&small(seed, 1)).unwrap();
        let rel = relativize(&x, 1);
        prop_assert!(validate_category(&rel.groth.category).is_empty());
        prop_assert!(validate_relative_category(&rel.relative).is_empty());
        let text = write_relative_category(&rel.relative);
        prop_assert_eq!(write_relative_category(&read_relative_category(&text).unwrap()), text);
    }

    #[test]
    fn flipped_nerve_is_bisimplicial(seed in any::<u64>()) {
        let x = gen_simplicial_category(&small(seed, 2)).unwrap();
        prop_assert!(validate_bisimplicial_set(&flipped_nerve(&x, 2).set).is_empty());
    }

    #[test]
    fn generated_maps_are_simplicial(seed in any::<u64>()) {
        let x = gen_simplicial_set(&small(seed, 2)).unwrap();
        let maps = gen_maps_from(&x, &small(seed, 2));
        prop_assert!(maps.len() >= 2);
        for (_, target, f) in &maps {
            prop_assert!(f.validate(&x, target).is_empty());
        }
    }

    #[test]
    fn smith_form_divides_and_keeps_rank(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..5)) {
        let form = smith_normal_form(&IntMatrix::from_dense(&rows));
        prop_assert_eq!(form.rank, rank(&rows));
        prop_assert_eq!(form.invariants.len(), form.rank);
        prop_assert!(form.invariants.iter().all(|d| d.is_positive()));
        for w in form.invariants.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn instances_are_deterministic(seed in any::<u64>()) {
        let params = small(seed, 1);
        prop_assert_eq!(run_instance(SuiteId::S2, &params), run_instance(SuiteId::S2, &params));
    }
}
