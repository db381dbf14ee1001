//! Property tests on random exact instances. Each case draws its instance
//! from a seeded generator so failures reproduce from the printed seed.

mod common;

use nhdegen::numeric::{cardano_roots, dense_eigenvalues};
use nhdegen::tropical::newton_polygon;
use nhdegen::{analyze, charpoly_checked, charpoly_direct, charpoly_traces};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn charpoly_routes_agree(seed in any::<u64>()) {
        let m = common::matrix(&mut rng(seed), 4);
        prop_assert_eq!(charpoly_traces(&m), charpoly_direct(&m));
    }

    #[test]
    fn hull_slopes_increase_and_multiplicities_sum(seed in any::<u64>(), n in 1usize..=7) {
        let c = common::charpoly(&mut rng(seed), n);
        let a = analyze(&c).unwrap();
        let p = newton_polygon(&c);
        let slopes: Vec<_> = p.segments().into_iter().map(|(s, _)| s).collect();
        prop_assert!(slopes.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(a.report.multiplicity_sum(), n - a.report.zero_root_count);
        prop_assert!(a.report.is_consistent());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn roots_multiply_under_products(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=4) {
        let mut r = rng(seed);
        let (f, g) = (common::charpoly(&mut r, n), common::charpoly(&mut r, k));
        let fg = analyze(&f.product(&g)).unwrap().report;
        let union = analyze(&f).unwrap().report.union(&analyze(&g).unwrap().report);
        prop_assert_eq!(fg, union);
    }

    #[test]
    fn cardano_matches_eigensolver(seed in any::<u64>()) {
        let (p, q) = common::depressed_cubic(&mut rng(seed));
        let z = num_complex::Complex::new(0.0, 0.0);
        let one = num_complex::Complex::new(1.0, 0.0);
        let companion = nalgebra::DMatrix::from_row_slice(3, 3, &[z, one, z, z, z, one, -q, -p, z]);
        let eig = dense_eigenvalues(&companion).unwrap();
        let roots = cardano_roots(p, q);
        let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        prop_assert!(common::match_distance(&roots, &eig) <= 1e-9 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn charpoly_is_similarity_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = common::matrix(&mut r, 4);
        let (p, inv) = common::unimodular(&mut r, 4);
        let conj = p.matmul(&m).matmul(&inv);
        prop_assert_eq!(charpoly_checked(&conj).unwrap(), charpoly_checked(&m).unwrap());
    }
}
