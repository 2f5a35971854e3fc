use delaunay_lab::config::{EpsGrid, RunConfig, DEFAULT_SEED};
use delaunay_lab::indicial::fourier_laplace;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(DEFAULT_SEED), failure_persistence: None, ..ProptestConfig::default() }
}

fn h(t: f64) -> f64 {
    if t < 0.0 {
        0.0
    } else {
        (-1.3 * t).exp() * (1.0 + 0.5 * (2.0 * t).cos())
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn holonomy(t in -3.0f64..6.0, re in -4.0f64..4.0, im in -3.0f64..1.0, period in 0.5f64..3.0) {
        let zeta = Complex64::new(re, im);
        let a = fourier_laplace(h, t, zeta, period, -1.3).unwrap();
        let b = fourier_laplace(h, t + period, zeta, period, -1.3).unwrap();
        let expected = (Complex64::i() * zeta).exp() * a;
        prop_assert!((b - expected).norm() <= 1e-10 * (1.0 + expected.norm()));
    }

    #[test]
    fn range_grids_are_sorted(start in 0.01f64..0.3, step in 0.01f64..0.1, count in 1usize..6) {
        let stop = start + step * (count - 1) as f64;
        let g = EpsGrid::Range { start, step, stop };
        let v = g.values(4).unwrap();
        prop_assert_eq!(v.len(), count);
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn config_hash_tracks_every_field(seed in any::<u64>(), n in 3usize..8) {
        let a = RunConfig { n, seed, ..RunConfig::default() };
        let mut b = a.clone();
        prop_assert_eq!(a.hash(), b.hash());
        b.j_max += 1;
        prop_assert_ne!(a.hash(), b.hash());
    }
}
