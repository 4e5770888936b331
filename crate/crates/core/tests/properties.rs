use std::sync::Arc;

use proptest::prelude::*;
use rfd_core::bench::{build_profile, default_alpha_grid, ProfileTable};
use rfd_core::rng::{gaussian_vec, seeded};
use rfd_core::{linalg, Euclidean, Manifold, Oblique, Product, SpecialOrthogonal, Stiefel};

fn manifold(kind: u8, a: usize, b: usize) -> Arc<dyn Manifold<f64>> {
    let (m, p) = (a.max(b), a.min(b));
    match kind % 5 {
        0 => Arc::new(Euclidean::new(a)),
        1 => Arc::new(Stiefel::new(m, p)),
        2 => Arc::new(Oblique::new(a, b)),
        3 => Arc::new(SpecialOrthogonal::new(a.max(2))),
        _ => Arc::new(Product::new(vec![
            Arc::new(Stiefel::new(m, p)) as Arc<dyn Manifold<f64>>,
            Arc::new(Oblique::new(b, a)),
        ])),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_idempotent_and_retraction_feasible(
        kind in 0u8..5,
        a in 1usize..6,
        b in 1usize..4,
        seed in any::<u64>(),
        scale in 1e-4f64..5.0,
    ) {
        let m = manifold(kind, a, b);
        let mut r = seeded(seed);
        let x = m.random_point(&mut r);
        prop_assert!(m.constraint_violation(&x) <= 1e-10);
        let w: Vec<f64> = gaussian_vec(&mut r, m.ambient_dim());
        let pw = m.project(&x, &w).unwrap();
        let ppw = m.project(&x, &pw).unwrap();
        prop_assert!(linalg::max_abs(&linalg::sub(&ppw, &pw)) <= 1e-12);
        let y = m.retract(&x, &linalg::scaled(scale, &pw)).unwrap();
        prop_assert!(m.constraint_violation(&y) <= 1e-10);
        // the normal component is orthogonal to every tangent vector
        let normal = linalg::sub(&w, &pw);
        let t = m.random_tangent(&x, &mut r);
        prop_assert!(linalg::dot(&normal, &t).abs() <= 1e-10 * (1.0 + linalg::norm(&normal) * linalg::norm(&t)));
    }

    #[test]
    fn profiles_are_monotone_step_functions(
        costs in prop::collection::vec(prop::collection::vec(prop::option::weighted(0.8, 1u32..50), 3), 1..10),
    ) {
        let t: Vec<Vec<Option<f64>>> = costs.iter().map(|row| row.iter().map(|c| c.map(f64::from)).collect()).collect();
        let table = ProfileTable::from_costs(t).unwrap();
        let np = table.problems.len() as f64;
        for c in build_profile(&table, &default_alpha_grid()).unwrap() {
            prop_assert!(c.rho.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(c.rho.iter().all(|&v| (0.0..=1.0).contains(&v)));
            prop_assert!(c.rho.iter().all(|&v| ((v * np) - (v * np).round()).abs() < 1e-9));
            prop_assert!(*c.rho.last().unwrap() <= c.solved_fraction);
        }
    }
}
