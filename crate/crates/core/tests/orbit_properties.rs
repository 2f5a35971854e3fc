use delaunay_lab::config::DEFAULT_SEED;
use delaunay_lab::delaunay::{equilibrium_ubar, hamiltonian, period_r_oracle, period_t_oracle, solve_orbit, u_max_for};
use delaunay_lab::PeriodicOrbit;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, rng_seed: RngSeed::Fixed(DEFAULT_SEED), failure_persistence: None, ..ProptestConfig::default() }
}

fn orbit(n: usize, frac: f64) -> PeriodicOrbit {
    let eps = frac * equilibrium_ubar(n).unwrap();
    solve_orbit(n, eps, PeriodicOrbit::default_tolerance()).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn energy_and_periods(n in 3usize..=6, frac in 0.05f64..0.95) {
        let o = orbit(n, frac);
        prop_assert!(o.energy_drift() < 1e-9);
        prop_assert!((o.period() - period_t_oracle(n, o.eps()).unwrap()).abs() < 1e-8);
        prop_assert!((o.geodesic_period() - period_r_oracle(n, o.eps()).unwrap()).abs() < 1e-8);
        prop_assert!(o.energy() < 0.0);
    }

    #[test]
    fn parity_and_periodicity(n in 3usize..=6, frac in 0.05f64..0.95, t in -20.0f64..20.0) {
        let o = orbit(n, frac);
        let s = o.state(t);
        let m = o.state(-t);
        let p = o.state(t + o.period());
        prop_assert!((s.u - m.u).abs() < 1e-11);
        prop_assert!((s.v + m.v).abs() < 1e-10);
        prop_assert!((s.u - p.u).abs() < 1e-10);
        prop_assert!((p.r - s.r - o.geodesic_period()).abs() < 1e-9);
        prop_assert!(s.u >= o.eps() - 1e-12 && s.u <= o.u_max() + 1e-12);
    }

    #[test]
    fn turning_points_share_the_level(n in 3usize..=6, frac in 0.01f64..0.999) {
        let ubar = equilibrium_ubar(n).unwrap();
        let eps = frac * ubar;
        let um = u_max_for(n, eps).unwrap();
        prop_assert!(um > ubar && um < 1.0);
        let h0 = hamiltonian(n, eps, 0.0);
        prop_assert!((hamiltonian(n, um, 0.0) - h0).abs() <= 1e-15_f64.max(1e-12 * h0.abs()));
    }

    #[test]
    fn energy_decreases_in_eps(n in 3usize..=6, a in 0.02f64..0.97, b in 0.02f64..0.97) {
        prop_assume!((a - b).abs() > 1e-6);
        let ubar = equilibrium_ubar(n).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(hamiltonian(n, hi * ubar, 0.0) < hamiltonian(n, lo * ubar, 0.0));
    }
}

#[test]
fn n4_geodesic_period_is_pi() {
    for eps in [0.05, 0.2, 0.45, 0.7] {
        let o = solve_orbit(4, eps, PeriodicOrbit::default_tolerance()).unwrap();
        assert!((o.geodesic_period() - std::f64::consts::PI).abs() < 1e-9);
    }
}
