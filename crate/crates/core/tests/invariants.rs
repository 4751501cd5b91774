//! Structural invariants of the named forms: coefficient well-definedness
//! for index-m expansions, the positivity characterization, oracle equality
//! between the two phi constructions, and index additivity under products.

use num_traits::{Signed, Zero};

use qjacobi::jacobi::{self, well_definedness_violation, JacobiElement, NamedForm};
use qjacobi::{rat, rat_i, Rat};

fn assert_well_defined(form: &JacobiElement, label: &str) {
    if let Some(violation) = well_definedness_violation(form) {
        panic!("{label}: {violation}");
    }
}

#[test]
fn well_definedness_of_the_named_forms() {
    let q = 10;
    assert_well_defined(&jacobi::named_form(NamedForm::PhiM21, q), "theta^2");
    assert_well_defined(&jacobi::named_form(NamedForm::Phi, q), "phi");
    assert_well_defined(&jacobi::named_form(NamedForm::Phi01, q), "phi_{0,1}");
    let phi2 = jacobi::phi(q).pow(2);
    assert_well_defined(&phi2, "phi^2");
    // the Laurent prefactor 1/Delta must not break the property
    assert_well_defined(&jacobi::named_form(NamedForm::F, q), "f");
    assert_well_defined(&jacobi::named_form(NamedForm::G, q), "g");
}

#[test]
fn index_additivity_passes_well_definedness() {
    let q = 8;
    let prod = jacobi::named_form(NamedForm::PhiM21, q).mul(&jacobi::phi(q));
    assert_eq!(prod.index2, 4);
    assert_well_defined(&prod, "theta^2 * phi");
}

#[test]
fn positivity_characterization_of_phi() {
    // [phi]_{q^d y^r} >= 0 always, and > 0 exactly when 4d >= r^2
    let q = 10;
    let phi = jacobi::phi(q).series;
    for d in 0..q {
        for r in -7i64..=7 {
            let c = phi.coeff_at(d, 2 * r).unwrap();
            assert!(!c.is_negative(), "negative coefficient at ({d}, {r})");
            assert_eq!(
                c.is_positive(),
                4 * d >= r * r,
                "support mismatch at ({d}, {r})"
            );
        }
    }
}

#[test]
fn phi_oracle_equality_at_stated_precision() {
    let a = jacobi::phi(10);
    let b = jacobi::phi_via_convolution(10);
    assert!(a.series.same_terms(&b.series));
    assert_eq!(a.series.q_prec(), b.series.q_prec());
    assert_eq!(a.series.q_min(), b.series.q_min());
}

#[test]
fn inverse_discriminant_has_positive_coefficients() {
    // oracle for the K3 case: expand prod (1-q^m)^{-24} independently by
    // naive polynomial arithmetic and compare; all coefficients positive
    let q = 12;
    let inv = jacobi::delta(q + 2).series.invert_q_unit().unwrap();
    let mut expansion = vec![Rat::zero(); q as usize];
    expansion[0] = rat_i(1);
    for m in 1..q {
        // multiply by (1 - q^m)^{-24} = sum_j binom(j + 23, 23) q^{m j}
        let mut next = vec![Rat::zero(); q as usize];
        for (e, c) in expansion.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut j = 0i64;
            let mut binom = rat_i(1);
            loop {
                let target = e as i64 + m * j;
                if target >= q {
                    break;
                }
                next[target as usize] += c * &binom;
                // binom(j + 24, 23) / binom(j + 23, 23) = (j + 24) / (j + 1)
                binom *= rat(j + 24, j + 1);
                j += 1;
            }
        }
        expansion = next;
    }
    for d in 0..q {
        let c = inv.coeff_at(d - 1, 0).unwrap();
        assert_eq!(c, expansion[d as usize], "at q^{}", d - 1);
        assert!(c.is_positive());
    }
}
