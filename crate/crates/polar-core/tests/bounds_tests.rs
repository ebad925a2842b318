//! Closed-form code bounds: specialization consistency, embedding
//! relations, simplified estimates and frozen values.

use num_bigint::BigInt;
use polar_core::bounds::{
    alpha, beta, code_bound, epsilon, product_inequalities_check, simplified_bounds_check,
    theorem_bound, theorem_bound_even_d, BoundsError, FormulaUsed,
};
use polar_core::qarith::{rint, Rat};
use polar_core::schemes::{scheme_size, PolarKind, SchemeSpec};

#[test]
fn hahn_form_specializes_to_alpha() {
    for q in [2u64, 3] {
        for n in 1..=6i64 {
            let spec = SchemeSpec::new(PolarKind::HermitianOdd, n, q).unwrap();
            for d in 1..=n {
                let want = alpha(n, d, q).unwrap();
                let got = if d % 2 == 1 {
                    theorem_bound(&spec, d).unwrap()
                } else {
                    theorem_bound_even_d(&spec, d).unwrap()
                };
                assert_eq!(got, want, "n={n} d={d} q={q}");
            }
        }
    }
}

#[test]
fn hahn_form_specializes_to_beta() {
    for q in [2u64, 3] {
        for m in 2..=8i64 {
            let spec = SchemeSpec::new(PolarKind::HalfHyperbolic, m, q).unwrap();
            for d in 1..=spec.classes() {
                assert_eq!(
                    theorem_bound(&spec, d).unwrap(),
                    beta(m, d, q).unwrap(),
                    "m={m} d={d} q={q}"
                );
            }
        }
    }
}

#[test]
fn bound_at_distance_one_is_the_ambient_size() {
    // families bounded in their own scheme give |X|; the embedded ones give
    // the generator count of the ambient space, (1 + q) |X|
    for q in [2u64, 3, 4] {
        for n in 2..=6 {
            for kind in PolarKind::BASE {
                let spec = SchemeSpec::new(kind, n, q).unwrap();
                let b = code_bound(&spec, 1).unwrap();
                let x = Rat::from(scheme_size(&spec));
                let want = match kind {
                    PolarKind::HermitianEven | PolarKind::Elliptic => {
                        (rint(1) + rint(q as i64)) * x
                    }
                    _ => x,
                };
                assert_eq!(b.value, want, "{kind:?} n={n} q={q}");
            }
        }
    }
}

#[test]
fn formula_dispatch_and_labels() {
    let cells: [(PolarKind, i64, FormulaUsed, &str); 7] = [
        (PolarKind::HermitianOdd, 2, FormulaUsed::CorA, "alpha"),
        (PolarKind::HermitianEven, 2, FormulaUsed::CorB, "alpha-embedded"),
        (PolarKind::Symplectic, 2, FormulaUsed::CorC, "beta-fused"),
        (PolarKind::Parabolic, 3, FormulaUsed::CorC, "beta-fused"),
        (PolarKind::Hyperbolic, 3, FormulaUsed::CorD, "beta-half-doubled"),
        (PolarKind::Hyperbolic, 2, FormulaUsed::CorE, "beta-half"),
        (PolarKind::Elliptic, 2, FormulaUsed::CorF, "beta-embedded"),
    ];
    for (kind, d, formula, label) in cells {
        let spec = SchemeSpec::new(kind, 4, 2).unwrap();
        let b = code_bound(&spec, d).unwrap();
        assert_eq!(b.formula, formula, "{kind:?} d={d}");
        assert_eq!(b.formula.label(), label);
    }
}

#[test]
fn parabolic_equals_symplectic() {
    for q in [2u64, 3, 4, 5] {
        for n in 2..=8 {
            let b = SchemeSpec::new(PolarKind::Parabolic, n, q).unwrap();
            let c = SchemeSpec::new(PolarKind::Symplectic, n, q).unwrap();
            for d in 1..=n {
                assert_eq!(
                    code_bound(&b, d).unwrap().value,
                    code_bound(&c, d).unwrap().value,
                    "n={n} q={q} d={d}"
                );
            }
        }
    }
}

#[test]
fn hyperbolic_odd_d_doubles_the_elliptic_bound() {
    // a d-code of D_n with odd d splits over the halves exactly like a
    // (d+1)-code of the elliptic space of rank n-2
    for q in [2u64, 3, 4, 5] {
        for n in 4..=8i64 {
            for d in (1..=n).step_by(2) {
                if d + 1 > n - 2 {
                    continue;
                }
                let hyp = SchemeSpec::new(PolarKind::Hyperbolic, n, q).unwrap();
                let ell = SchemeSpec::new(PolarKind::Elliptic, n - 2, q).unwrap();
                assert_eq!(
                    code_bound(&hyp, d).unwrap().value,
                    rint(2) * code_bound(&ell, d + 1).unwrap().value,
                    "n={n} q={q} d={d}"
                );
            }
        }
    }
}

#[test]
fn bounds_decrease_in_d() {
    for q in [2u64, 3] {
        for n in 2..=8 {
            for kind in PolarKind::BASE {
                let spec = SchemeSpec::new(kind, n, q).unwrap();
                let mut prev = code_bound(&spec, 1).unwrap().value;
                for d in 2..=n {
                    let cur = code_bound(&spec, d).unwrap().value;
                    assert!(cur <= prev, "{kind:?} n={n} q={q} d={d}");
                    prev = cur;
                }
            }
        }
    }
}

#[test]
fn frozen_bound_values() {
    // half-scheme bound of the rank-4 hyperbolic space at d = 2:
    // beta(4, 1) = (1+q)(1+q^2)(1+q^3) = 135 at q = 2
    let spec = SchemeSpec::new(PolarKind::Hyperbolic, 4, 2).unwrap();
    let b = code_bound(&spec, 2).unwrap();
    assert_eq!(b.value, rint(135));
    assert_eq!(b.floor(), BigInt::from(135));
    assert_eq!(b.formula, FormulaUsed::CorE);

    // hermitian odd rank 2 at d = 2: the even-d correction makes the bound
    // non-integral before flooring
    let spec = SchemeSpec::new(PolarKind::HermitianOdd, 2, 2).unwrap();
    let b = code_bound(&spec, 2).unwrap();
    assert_eq!(b.floor(), BigInt::from(9));

    let spec = SchemeSpec::new(PolarKind::Elliptic, 2, 2).unwrap();
    assert_eq!(code_bound(&spec, 2).unwrap().floor(), BigInt::from(135));
    let spec = SchemeSpec::new(PolarKind::Symplectic, 2, 2).unwrap();
    assert_eq!(code_bound(&spec, 2).unwrap().floor(), BigInt::from(15));
}

#[test]
fn simplified_estimates_hold() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
        for n in 1..=20 {
            for d in 1..=n {
                assert!(
                    simplified_bounds_check(n, d, q).unwrap(),
                    "n={n} d={d} q={q}"
                );
            }
        }
        assert!(product_inequalities_check(30, q), "q={q}");
    }
}

#[test]
fn domain_errors() {
    assert!(matches!(
        epsilon(5, 3, 2),
        Err(BoundsError::BadParameters(_))
    ));
    assert!(matches!(alpha(4, 5, 2), Err(BoundsError::BadParameters(_))));
    assert!(matches!(beta(4, 0, 2), Err(BoundsError::BadParameters(_))));

    let spec = SchemeSpec::new(PolarKind::HermitianOdd, 4, 2).unwrap();
    assert!(theorem_bound(&spec, 2).is_err());
    assert!(theorem_bound_even_d(&spec, 3).is_err());

    let fused = SchemeSpec::new(PolarKind::FusedBC, 4, 2).unwrap();
    assert!(code_bound(&fused, 2).is_err());

    let spec = SchemeSpec::new(PolarKind::Hyperbolic, 4, 2).unwrap();
    assert!(code_bound(&spec, 0).is_err());
    assert!(code_bound(&spec, 5).is_err());
}
