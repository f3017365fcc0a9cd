use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rsk_core::{
    certify_big_anticanonical, h0_class_interval, min_destabilizing_e, volume, BlowupScenario,
    BlowupStep, Curve, NumClass, RuledSurface, SplitBundle,
};

fn degrees(max_rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..=max_rank)
}

fn surface_strategy() -> impl Strategy<Value = RuledSurface> {
    (0u32..=4, prop::collection::vec(-6i64..=6, 2..=3)).prop_map(|(g, d)| {
        RuledSurface::new(Curve::char_zero(g), SplitBundle::new(d).unwrap()).unwrap()
    })
}

fn rank2_strategy() -> impl Strategy<Value = RuledSurface> {
    (0u32..=4, -6i64..=6, -6i64..=6).prop_map(|(g, x, y)| {
        RuledSurface::new(Curve::char_zero(g), SplitBundle::new(vec![x, y]).unwrap()).unwrap()
    })
}

fn class_strategy() -> impl Strategy<Value = NumClass> {
    (-3i64..=5, -15i64..=15).prop_map(|(a, b)| NumClass::new(a, b))
}

#[test]
fn symmetric_power_slope_is_linear_exhaustive() {
    for r in 1..=4u32 {
        for code in 0..11u32.pow(r) {
            let d: Vec<i64> = (0..r)
                .map(|i| (code / 11u32.pow(i) % 11) as i64 - 5)
                .collect();
            let b = SplitBundle::new(d).unwrap();
            for n in 0..=8u64 {
                let s = b.symmetric_power_stats(n);
                assert_eq!(s.slope, b.slope() * BigRational::from_integer(n.into()));
                assert_eq!(BigRational::new(s.degree.clone(), s.rank.clone()), s.slope);
            }
        }
    }
}

proptest! {
    #[test]
    fn hn_data_ignores_order(mut d in degrees(5), seed in any::<u64>()) {
        let original = SplitBundle::new(d.clone()).unwrap().hn_data();
        let n = d.len();
        for i in 0..n {
            d.swap(i, (seed as usize).wrapping_add(i * 7) % n);
        }
        let shuffled = SplitBundle::new(d).unwrap().hn_data();
        prop_assert_eq!(&original, &shuffled);
        let total: usize = original.blocks().iter().map(|b| b.multiplicity).sum();
        prop_assert_eq!(total, n);
        prop_assert!(original.blocks().windows(2).all(|w| w[0].degree > w[1].degree));
    }

    #[test]
    fn frobenius_composes(d in degrees(4), p in prop::sample::select(vec![2u64, 3, 5, 7]), e1 in 0u32..4, e2 in 0u32..4) {
        let c = Curve::new(1, p).unwrap();
        let b = SplitBundle::new(d).unwrap();
        let both = b.frobenius_pullback(&c, e1 + e2).unwrap();
        let stepwise = b.frobenius_pullback(&c, e1).unwrap().frobenius_pullback(&c, e2).unwrap();
        prop_assert_eq!(both, stepwise);
    }

    #[test]
    fn min_e_is_least(g in 0u32..6, p in prop::sample::select(vec![0u64, 2, 3, 5, 7, 11]), x in -8i64..=8, y in -8i64..=8) {
        let c = Curve::new(g, p).unwrap();
        let b = SplitBundle::new(vec![x, y]).unwrap();
        let gap = BigInt::from(b.degrees()[0] - b.degrees()[1]);
        let threshold = BigInt::from(c.canonical_degree());
        let holds = |e: u32| rsk_core::curve_bundle::frobenius_factor(&c, e) * &gap > threshold;
        match min_destabilizing_e(&c, &b).unwrap() {
            Some(e) => {
                prop_assert!(holds(e));
                if e >= 1 {
                    prop_assert!(!holds(e - 1));
                }
                prop_assert!(p > 0 || e == 0);
            }
            None => {
                prop_assert!(!holds(0));
                prop_assert!(gap == BigInt::from(0) || p == 0);
            }
        }
    }

    #[test]
    fn big_test_is_twist_invariant(s in surface_strategy(), c in class_strategy(), t in -5i64..=5) {
        let twisted = RuledSurface::new(*s.curve(), s.bundle().twist(t)).unwrap();
        prop_assert_eq!(s.big_test(c), twisted.big_test(c.retwist(t)));
        prop_assert_eq!(s.pseff_test(c), twisted.pseff_test(c.retwist(t)));
        prop_assert_eq!(volume(&s, c), volume(&twisted, c.retwist(t)));
    }

    #[test]
    fn anticanonical_is_twist_invariant(s in surface_strategy(), t in -5i64..=5) {
        let twisted = RuledSurface::new(*s.curve(), s.bundle().twist(t)).unwrap();
        prop_assert_eq!(twisted.anticanonical_class(), s.anticanonical_class().retwist(t));
    }

    #[test]
    fn cone_tests_are_consistent(s in rank2_strategy(), c in class_strategy(), extra in 0i64..10) {
        if s.big_test(c) {
            prop_assert!(s.pseff_test(c));
            prop_assert!(s.big_test(NumClass::new(c.a, c.b + extra)));
        }
        if s.nef_test(c).unwrap() {
            prop_assert!(s.pseff_test(c));
        }
        prop_assert_eq!(s.big_test(c), volume(&s, c) > BigRational::from_integer(0.into()));
    }

    #[test]
    fn intersection_is_symmetric_and_multilinear(s in surface_strategy(), x in class_strategy(), y in class_strategy(), z in class_strategy(), w in class_strategy()) {
        let r = s.rank();
        let mut args = vec![x; r];
        args[r - 1] = y;
        let xy = s.intersect(&args).unwrap();
        args.reverse();
        prop_assert_eq!(&s.intersect(&args).unwrap(), &xy);

        let mut lhs = vec![z; r];
        lhs[0] = x + w;
        let mut left = vec![z; r];
        left[0] = x;
        let mut right = vec![z; r];
        right[0] = w;
        prop_assert_eq!(
            s.intersect(&lhs).unwrap(),
            s.intersect(&left).unwrap() + s.intersect(&right).unwrap()
        );
    }

    #[test]
    fn h0_monotone_in_fiber_degree(s in surface_strategy(), c in class_strategy(), extra in 1i64..6) {
        let upper = NumClass::new(c.a, c.b + extra);
        // the trivial class is pinned to exactly one section, which a degree > 0
        // twist of unknown bundle cannot guarantee
        prop_assume!(!c.is_zero());
        let lo = h0_class_interval(&s, c);
        let hi = h0_class_interval(&s, upper);
        prop_assert!(lo.lo <= hi.lo && lo.hi <= hi.hi, "{} -> {}: {} vs {}", c, upper, lo, hi);
    }

    #[test]
    fn volume_homogeneous(s in surface_strategy(), c in class_strategy()) {
        let v = volume(&s, c);
        let r = s.rank() as u32;
        for t in 1..=3i64 {
            prop_assert_eq!(volume(&s, c.scale(t)), &v * BigRational::from_integer(BigInt::from(t).pow(r)));
        }
    }

    #[test]
    fn certification_ignores_step_order(g in 0u32..4, x in 0i64..6, flags in prop::collection::vec(any::<bool>(), 0..8), seed in any::<u64>()) {
        let base = RuledSurface::new(Curve::char_zero(g), SplitBundle::new(vec![x, 0]).unwrap()).unwrap();
        let steps: Vec<BlowupStep> = flags.iter().map(|&f| BlowupStep { on_strict_transform: f }).collect();
        let mut rotated = steps.clone();
        if !rotated.is_empty() {
            let k = seed as usize % rotated.len();
            rotated.rotate_left(k);
        }
        let budget = NumClass::new(0, 1);
        let a = BlowupScenario::new(base.clone(), budget, steps).unwrap();
        let b = BlowupScenario::new(base, budget, rotated).unwrap();
        prop_assert_eq!(
            certify_big_anticanonical(&a).unwrap().certified,
            certify_big_anticanonical(&b).unwrap().certified
        );
    }

    #[test]
    fn certification_with_no_budget_is_big_test(s in rank2_strategy()) {
        let expected = s.big_test(s.anticanonical_class());
        let sc = BlowupScenario::new(s, NumClass::ZERO, vec![]).unwrap();
        prop_assert_eq!(certify_big_anticanonical(&sc).unwrap().certified, expected);
    }

    #[test]
    fn shrinking_budget_keeps_certificate(s in rank2_strategy(), a in 0i64..3, b in -8i64..8, da in 0i64..2, db in 0i64..4, n in 0usize..6) {
        let big_budget = NumClass::new(a, b);
        // the enlargement itself must be an effective-type class
        let increment = NumClass::new(da.min(a), db);
        let small_budget = big_budget - increment;
        prop_assume!(s.pseff_test(increment));
        prop_assume!(s.pseff_test(big_budget) && s.pseff_test(small_budget));
        let steps = vec![BlowupStep { on_strict_transform: true }; n];
        let big = BlowupScenario::new(s.clone(), big_budget, steps.clone()).unwrap();
        let small = BlowupScenario::new(s, small_budget, steps).unwrap();
        if certify_big_anticanonical(&big).unwrap().certified {
            prop_assert!(certify_big_anticanonical(&small).unwrap().certified);
        }
    }
}
