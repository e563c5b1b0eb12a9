//! Round-trip suites for the two interchange surfaces: the expression
//! language and the diagram JSON schema.

use proptest::prelude::*;

use tanglekit_cli::json::{diagram_from_str, diagram_to_string};
use tanglekit_cli::parse::{parse_expr, print_expr};
use tanglekit_core::expr::TangleExpr;
use tanglekit_core::testkit::{decorate, gen_ball, gen_punctured, gen_spherical, GenConfig};

fn arb_expr() -> impl Strategy<Value = TangleExpr> {
    let leaf = prop_oneof![
        Just(TangleExpr::T1),
        Just(TangleExpr::T2),
        Just(TangleExpr::Identity),
        (-9i64..9).prop_map(TangleExpr::HTwist),
        (-9i64..9).prop_map(TangleExpr::VTwist),
        (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2)
            .prop_map(|(a, b, c, d)| TangleExpr::J(a, b, c, d)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TangleExpr::ConnectH(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TangleExpr::ConnectV(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TangleExpr::InnerH(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TangleExpr::Compose(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| TangleExpr::Mirror(Box::new(a))),
            inner.clone().prop_map(|a| TangleExpr::Swap(Box::new(a))),
            inner.clone().prop_map(|a| TangleExpr::R1(Box::new(a))),
            inner.clone().prop_map(|a| TangleExpr::Rotate(Box::new(a))),
            inner.clone().prop_map(|a| TangleExpr::HFlip(Box::new(a))),
            inner.clone().prop_map(|a| TangleExpr::Num(Box::new(a))),
            inner.clone().prop_map(|a| TangleExpr::Den(Box::new(a))),
            (inner.clone(), proptest::collection::vec(inner, 1..3))
                .prop_map(|(t, fs)| TangleExpr::Fill(Box::new(t), fs)),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_reparse_identically(e in arb_expr()) {
        let text = print_expr(&e);
        let back = parse_expr(&text)
            .unwrap_or_else(|err| panic!("{} failed to reparse: {}", text, err));
        prop_assert_eq!(back, e);
    }
}

#[test]
fn json_round_trip_on_500_generated_diagrams() {
    let mut count = 0;
    for seed in 0..200u64 {
        let cfg = GenConfig { seed, max_crossings: 9, depth: 3, allow_closed_components: seed % 4 == 0 };
        let mut diagrams = vec![gen_ball(&cfg), gen_spherical(&cfg)];
        if seed % 2 == 0 {
            diagrams.push(gen_punctured(&cfg, 2));
            diagrams.push(decorate(&diagrams[1], &cfg, true).0);
        }
        for d in diagrams {
            let text = diagram_to_string(&d);
            let back = diagram_from_str(&text).unwrap();
            assert_eq!(back, d, "seed {}", seed);
            count += 1;
        }
    }
    assert!(count >= 500, "only {} round trips", count);
}

#[test]
fn elaborated_expressions_satisfy_matching() {
    // every parsed-and-elaborated expression yields a valid diagram
    for src in [
        "fill(J(1,1,1,1); h(2) +h t1)",
        "(h(2) +v I) o (t2 .+h I)",
        "num(v(3) +h t1)",
        "den((h(1) +h h(1)) vf)",
        "t1 .+v (I r1)",
    ] {
        let d = parse_expr(src).unwrap().elaborate().unwrap();
        // Diagram::new re-validates the perfect matching
        let rebuilt = tanglekit_core::diagram::Diagram::new(
            d.crossings(),
            d.boundaries(),
            d.free_loops(),
            d.arcs().to_vec(),
        );
        assert!(rebuilt.is_ok(), "{}", src);
    }
}
