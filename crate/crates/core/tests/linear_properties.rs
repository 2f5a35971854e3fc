use delaunay_lab::config::DEFAULT_SEED;
use delaunay_lab::delaunay::{equilibrium_ubar, solve_orbit, Coordinate, CylinderFunction};
use delaunay_lab::floquet::sl_form;
use delaunay_lab::jacobi::{extract_deficiency_coefficients, phi1, phi2, symplectic_form, wronskian_pairing, DeficiencyCoefficients};
use delaunay_lab::PeriodicOrbit;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(DEFAULT_SEED), failure_persistence: None, ..ProptestConfig::default() }
}

fn coeffs(k: usize) -> impl Strategy<Value = DeficiencyCoefficients> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), k).prop_map(DeficiencyCoefficients::new)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn symplectic_form_is_antisymmetric_and_bilinear(
        (c1, c2, c3) in (1usize..6).prop_flat_map(|k| (coeffs(k), coeffs(k), coeffs(k)))
    ) {
        let w12 = symplectic_form(&c1, &c2).unwrap();
        prop_assert!((w12 + symplectic_form(&c2, &c1).unwrap()).abs() < 1e-12);
        prop_assert_eq!(symplectic_form(&c1, &c1).unwrap(), 0.0);
        let sum = DeficiencyCoefficients::new(c2.pairs.iter().zip(&c3.pairs).map(|(a, b)| (a.0 + b.0, a.1 + b.1)).collect());
        let lin = symplectic_form(&c1, &sum).unwrap() - w12 - symplectic_form(&c1, &c3).unwrap();
        prop_assert!(lin.abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn coefficient_extraction_inverts_synthesis(a in -10.0f64..10.0, b in -10.0f64..10.0, frac in 0.1f64..0.9) {
        let o = solve_orbit(4, frac * equilibrium_ubar(4).unwrap(), PeriodicOrbit::default_tolerance()).unwrap();
        let (f1, f2) = (phi1(&o), phi2(&o));
        let w = CylinderFunction::sample(Coordinate::Cylinder, (o.period(), 4.0 * o.period()), 193, Some(0), |t| {
            a * f1.value(t) + b * f2.value(t)
        }).unwrap();
        let fit = extract_deficiency_coefficients(&w, &o).unwrap();
        prop_assert!((fit.a - a).abs() < 1e-6 && (fit.b - b).abs() < 1e-6, "{:?}", fit);
    }

    #[test]
    fn wronskian_is_constant(n in 3usize..=6, frac in 0.05f64..0.95) {
        let o = solve_orbit(n, frac * equilibrium_ubar(n).unwrap(), PeriodicOrbit::default_tolerance()).unwrap();
        let w = wronskian_pairing(&phi1(&o), &phi2(&o), (-o.period(), 2.0 * o.period()), 150).unwrap();
        prop_assert!(w.relative_variation < 1e-8);
        prop_assert!(w.value.abs() > 0.0);
    }

    #[test]
    fn monodromy_is_unimodular(n in 3usize..=6, frac in 0.05f64..0.95, j in 0usize..5, sigma in -10.0f64..10.0) {
        let o = solve_orbit(n, frac * equilibrium_ubar(n).unwrap(), PeriodicOrbit::default_tolerance()).unwrap();
        let m = sl_form(&o, j).monodromy(sigma).unwrap();
        prop_assert!(m.determinant_error() < 1e-9, "{:?}", m);
        let [g, h] = m.exponents(o.period());
        prop_assert!((g + h).abs() < 1e-12);
    }
}
