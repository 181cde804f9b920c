use fairmarket::config::{parse, BuyerEntry, RunConfig};
use fairmarket_core::model::{BuyerPanel, CostStructure, GroupSet, LearningCurve, MarketConfig, TargetVector};
use proptest::prelude::*;

fn market() -> impl Strategy<Value = (MarketConfig, Option<Vec<f64>>)> {
    (1usize..=4, 1usize..=5, 0usize..=6, 0.1f64..5.0, 0.01f64..3.0, 0.1f64..4.0).prop_flat_map(
        |(g, m, n, z, a, b)| {
            (
                prop::collection::vec(1e-3f64..100.0, g),
                prop::collection::vec(prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1e3], g), n),
                prop::option::of(prop::collection::vec(0.01f64..1.0, g)),
            )
                .prop_map(move |(kappa, rows, w)| {
                    let market = MarketConfig::new(
                        GroupSet::numbered(g).unwrap(),
                        LearningCurve::new(z, a, b).unwrap(),
                        m,
                        CostStructure::new(kappa).unwrap(),
                        BuyerPanel::new(g, &rows).unwrap(),
                    )
                    .unwrap();
                    (market, w)
                })
        },
    )
}

proptest! {
    #[test]
    fn text_round_trip((m, w) in market()) {
        let target = w.map(|w| TargetVector::normalized(&w).unwrap());
        let cfg = RunConfig::from_market(&m, target.as_ref());
        let back = parse(&cfg.to_text()).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(back.market(), m);
        prop_assert_eq!(back.target().map(Result::unwrap), target);
    }

    #[test]
    fn compact_buyers_expand(count in 0usize..20, value in 0.01f64..10.0) {
        let text = format!(
            "[market]\ngroups = x, y\nsellers = 1\n[curve]\nz = 1\nalpha = 1\nbeta = 1\n[costs]\nx = 1\ny = 2\n[buyers]\ny = {count} x {value}\n"
        );
        let cfg = parse(&text).unwrap();
        prop_assert_eq!(&cfg.buyers, &vec![BuyerEntry::Compact { group: 1, count, value }]);
        let panel = cfg.panel();
        prop_assert_eq!(panel.len(), count);
        prop_assert!(panel.rows().all(|r| r == [0.0, value]));
        prop_assert_eq!(parse(&cfg.to_text()).unwrap(), cfg);
    }
}
