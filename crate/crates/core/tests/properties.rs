//! Property tests: ring laws for the series arithmetic, derivation rules,
//! Pieri algebra, and witness soundness on random admissible classes.

use std::collections::BTreeMap;

use proptest::prelude::*;

use qjacobi::criterion::{self, BetaClass};
use qjacobi::fano::GrClass;
use qjacobi::qseries::QYSeries;
use qjacobi::{rat, rat_i, Rat};

const PREC: i64 = 6;

fn series_strategy() -> impl Strategy<Value = QYSeries> {
    prop::collection::vec(((0i64..PREC), (-4i64..=4), (-5i64..=5)), 0..8).prop_map(|entries| {
        let mut map: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (d, r2, c) in entries {
            let entry = map.entry((d, r2)).or_insert_with(|| rat_i(0));
            *entry += rat_i(c);
        }
        map.retain(|_, c| c != &rat_i(0));
        QYSeries::from_terms(0, PREC, map)
    })
}

fn unit_series_strategy() -> impl Strategy<Value = QYSeries> {
    // y-free with nonzero constant term
    (
        prop::collection::vec((1i64..PREC, -5i64..=5), 0..5),
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(3), Just(-5)],
    )
        .prop_map(|(entries, c0)| {
            let mut map: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
            map.insert((0, 0), rat_i(c0));
            for (d, c) in entries {
                let entry = map.entry((d, 0)).or_insert_with(|| rat_i(0));
                *entry += rat_i(c);
            }
            map.retain(|_, c| c != &rat_i(0));
            QYSeries::from_terms(0, PREC, map)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(
        a in series_strategy(),
        b in series_strategy(),
        c in series_strategy(),
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_ring_laws(
        a in series_strategy(),
        b in series_strategy(),
        c in series_strategy(),
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn leibniz_rule_for_both_derivations(
        a in series_strategy(),
        b in series_strategy(),
    ) {
        let prod = a.mul(&b);
        prop_assert_eq!(prod.dy(), a.dy().mul(&b).add(&a.mul(&b.dy())));
        prop_assert_eq!(prod.dq(), a.dq().mul(&b).add(&a.mul(&b.dq())));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series_strategy()) {
        let inv = a.invert_q_unit().unwrap();
        let one = QYSeries::one(PREC);
        prop_assert!(a.mul(&inv).same_terms(&one));
        prop_assert!(inv.mul(&a).same_terms(&one));
    }

    #[test]
    fn heat_operator_scales_single_terms(
        d in -3i64..6,
        r2 in -6i64..=6,
        m in 1u32..4,
        c in 1i64..9,
    ) {
        let t = QYSeries::monomial(d, r2, rat_i(c), 8);
        let expected = rat_i(c) * (rat_i(2 * d) - rat(r2 * r2, 8 * m as i64));
        let h = t.heat(m);
        if expected == rat_i(0) {
            prop_assert!(h.is_zero_series());
        } else {
            prop_assert_eq!(h.coeff_at(d, r2).unwrap(), expected);
        }
    }

    #[test]
    fn no_zero_coefficients_after_operations(
        a in series_strategy(),
        b in series_strategy(),
    ) {
        for s in [a.add(&b), a.sub(&a), a.mul(&b), a.dy(), a.dq()] {
            prop_assert!(s.terms().all(|(_, _, c)| c != &rat_i(0)));
        }
    }
}

fn gr_class_strategy() -> impl Strategy<Value = GrClass> {
    prop::collection::vec(((0u8..=4), (0u8..=4), (-3i64..=3)), 1..4).prop_map(|entries| {
        let mut acc = GrClass::zero();
        for (a, b, c) in entries {
            let (a, b) = if a >= b { (a, b) } else { (b, a) };
            acc = acc.add(&GrClass::sigma(a, b).scale(&rat_i(c)));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pieri_product_is_commutative_and_associative(
        x in gr_class_strategy(),
        y in gr_class_strategy(),
        z in gr_class_strategy(),
    ) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn witnesses_are_sound_and_multiplicities_nonnegative(
        n in 1u32..=4,
        d in -2i64..=6,
        rep in 0i64..=3,
    ) {
        let rep = if n == 1 { 0 } else { rep % n as i64 };
        let two_m = 2 * (n as i64 - 1);
        let norm = if n == 1 {
            rat_i(2 * d)
        } else {
            rat_i(2 * d) - rat(rep * rep, two_m)
        };
        let beta = BetaClass::new(n, norm, rep).expect("constructed grid is admissible");
        let m = criterion::multiplicity(&beta);
        prop_assert!(m >= rat_i(0));
        if let Some(w) = criterion::search_witness(&beta, 6, 12) {
            prop_assert!(w.is_valid());
            prop_assert_eq!(w.pairs.len() as u32, n.saturating_sub(1));
            if n >= 2 {
                let (norm_back, r_sum) = w.reproduces(n);
                prop_assert_eq!(&norm_back, beta.norm());
                prop_assert!(beta.residue().contains(r_sum));
            }
        }
    }
}
