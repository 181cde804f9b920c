use fairmarket_core::equilibrium::{
    baseline_threshold, intervention_threshold, optimal_reserve, solve_baseline, solve_intervention,
};
use fairmarket_core::fairness::check_backfire;
use fairmarket_core::mechanism::{shapley_values, symmetric_share};
use fairmarket_core::model::{BuyerPanel, CostStructure, GroupSet, LearningCurve, MarketConfig, TargetVector};
use fairmarket_core::oracle::{find_root_bisect, price_grid_search};
use proptest::prelude::*;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

fn curve() -> impl Strategy<Value = LearningCurve> {
    (0.5f64..3.0, 0.1f64..2.0, 0.2f64..3.0).prop_map(|(z, a, b)| LearningCurve::new(z, a, b).unwrap())
}

fn market(max_groups: usize) -> impl Strategy<Value = MarketConfig> {
    (1..=max_groups, 1usize..=4, 1usize..=12, curve()).prop_flat_map(|(g, m, n, c)| {
        (
            prop::collection::vec(0.05f64..4.0, g),
            prop::collection::vec(prop::collection::vec(0.0f64..5.0, g), n),
        )
            .prop_map(move |(kappa, rows)| {
                MarketConfig::new(
                    GroupSet::numbered(g).unwrap(),
                    c,
                    m,
                    CostStructure::new(kappa).unwrap(),
                    BuyerPanel::new(g, &rows).unwrap(),
                )
                .unwrap()
            })
    })
}

proptest! {
    #[test]
    fn reserve_matches_exhaustive_search(values in prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..10.0, (1u8..5).prop_map(f64::from)], 0..30)) {
        let r = optimal_reserve(&values);
        prop_assert_eq!(price_grid_search(&values), (r.price, r.rho));
    }

    #[test]
    fn shapley_efficiency_symmetry_null_player(
        amounts in prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..6.0], 1..8),
        c in curve(),
    ) {
        let phi = shapley_values(&amounts, &c).unwrap();
        let total: f64 = amounts.iter().sum();
        prop_assert!((phi.iter().sum::<f64>() - c.accuracy(total)).abs() < 1e-9);
        for (j, &a) in amounts.iter().enumerate() {
            if a == 0.0 {
                prop_assert!(phi[j].abs() < 1e-12);
            }
            for (k, &b) in amounts.iter().enumerate() {
                if a == b {
                    prop_assert!((phi[j] - phi[k]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn identical_sellers_split_evenly(x in 0.01f64..5.0, m in 1usize..=6, c in curve()) {
        let phi = shapley_values(&vec![x; m], &c).unwrap();
        let share = symmetric_share(x * m as f64, m, &c);
        for v in phi {
            prop_assert!((v - share).abs() < 1e-9);
        }
    }

    #[test]
    fn baseline_production_monotone(cfg in market(3), bump in 1.01f64..3.0) {
        let base = solve_baseline(&cfg).unwrap();
        let cheaper = cfg.with_costs(CostStructure::new(cfg.costs.kappa().iter().map(|k| k / bump).collect()).unwrap()).unwrap();
        let richer = cfg.with_buyers(cfg.buyers.scaled(bump).unwrap()).unwrap();
        for other in [solve_baseline(&cheaper).unwrap(), solve_baseline(&richer).unwrap()] {
            for g in 0..cfg.group_count() {
                prop_assert!(other.produced.get(g) >= base.produced.get(g));
            }
        }
    }

    #[test]
    fn uniform_threshold_is_mean(rho in prop::collection::vec(0.01f64..50.0, 1..6), c in curve()) {
        let u = TargetVector::uniform(rho.len());
        let all: Vec<usize> = (0..rho.len()).collect();
        let mean = rho.iter().map(|&r| baseline_threshold(r, &c)).sum::<f64>() / rho.len() as f64;
        prop_assert!(rel_close(intervention_threshold(&rho, u.gamma(), &all, &c), mean, 1e-12));
    }

    #[test]
    fn symmetric_markets_pay_nothing_for_fairness(
        g in 1usize..=4, m in 1usize..=4, value in 0.2f64..5.0, n in 1usize..=10, kappa in 0.05f64..3.0, c in curve(),
    ) {
        let cfg = MarketConfig::new(
            GroupSet::numbered(g).unwrap(), c, m,
            CostStructure::new(vec![kappa; g]).unwrap(),
            BuyerPanel::new(g, &vec![vec![value; g]; n]).unwrap(),
        ).unwrap();
        let base = solve_baseline(&cfg).unwrap();
        let fair = solve_intervention(&cfg, &TargetVector::uniform(g)).unwrap();
        prop_assert_eq!(base.formed(), fair.formed());
        for h in 0..g {
            prop_assert!(rel_close(fair.produced.get(h), base.produced.get(h), 1e-9) || base.produced.get(h) == 0.0 && fair.produced.get(h) == 0.0);
        }
        prop_assert!(rel_close(fair.utilities.marketplace, base.utilities.marketplace, 1e-9) || base.utilities.marketplace == fair.utilities.marketplace);
    }

    #[test]
    fn joint_scaling_preserves_formation(cfg in market(3), s in 0.1f64..10.0) {
        let scaled = MarketConfig::new(
            cfg.groups.clone(), cfg.curve, cfg.sellers,
            CostStructure::new(cfg.costs.kappa().iter().map(|k| k * s).collect()).unwrap(),
            cfg.buyers.scaled(s).unwrap(),
        ).unwrap();
        let u = TargetVector::uniform(cfg.group_count());
        let a = check_backfire(&cfg, &u).unwrap();
        let b = check_backfire(&scaled, &u).unwrap();
        // formation decisions within rounding of a boundary may flip; skip those
        let base = solve_baseline(&cfg).unwrap();
        let near = (0..cfg.group_count()).any(|g| rel_close(cfg.costs.get(g), base.thresholds[g], 1e-6));
        let fair = solve_intervention(&cfg, &u).unwrap();
        let near_fair = rel_close(fair.production.marginal_cost, fair.production.threshold, 1e-6);
        if !near && !near_fair {
            prop_assert_eq!(a, b);
        }
        let sb = solve_baseline(&scaled).unwrap();
        for g in 0..cfg.group_count() {
            prop_assert!(rel_close(sb.produced.get(g), base.produced.get(g), 1e-9) || near);
        }
    }

    #[test]
    fn intervention_forms_iff_sellers_break_even(cfg in market(3), raw in prop::collection::vec(0.0f64..1.0, 3)) {
        let g = cfg.group_count();
        let Ok(t) = TargetVector::normalized(&raw[..g]) else { return Ok(()) };
        let fair = solve_intervention(&cfg, &t).unwrap();
        if fair.formed() {
            let total: f64 = fair.utilities.sellers.iter().sum();
            prop_assert!(total >= -1e-9 * fair.production.marginal_cost * fair.production.total_samples);
            for &h in &fair.production.monetized {
                prop_assert!(t.get(h) * fair.production.total_samples > cfg.curve.learning_ante());
            }
        } else {
            prop_assert_eq!(fair.production.total_samples, 0.0);
        }
    }

    #[test]
    fn bisection_bit_identical(a in 0.1f64..10.0, b in 0.1f64..5.0) {
        let f = |x: f64| x * x * x - a * x - b;
        let r1 = find_root_bisect(f, 0.0, 100.0, 1e-14).unwrap();
        let r2 = find_root_bisect(f, 0.0, 100.0, 1e-14).unwrap();
        prop_assert_eq!(r1.to_bits(), r2.to_bits());
    }
}
