//! Forced distributions of Steiner systems of generators: moment checks,
//! frozen witness entries and the closed forms used by the dual-negativity
//! cases.

use num_traits::{One, Zero};
use polar_core::distributions::{
    dual_distribution, inner_distribution, is_d_code, steiner_dual_distribution,
    steiner_inner_distribution, steiner_inner_moment_check, steiner_moment_identity_check,
    DistError, Distribution, Flavor,
};
use polar_core::qarith::{rfrac, rint, rpow, Rat};
use polar_core::schemes::{eig_table, PolarKind, SchemeSpec};
use polar_core::steiner::steiner_size;

#[test]
fn steiner_distribution_shape() {
    for kind in PolarKind::BASE {
        for n in 2..=6 {
            for q in [2u64, 3] {
                let spec = SchemeSpec::new(kind, n, q).unwrap();
                for t in 1..=n {
                    let inner = steiner_inner_distribution(&spec, t).unwrap();
                    let dual = steiner_dual_distribution(&spec, t).unwrap();
                    assert_eq!(inner.flavor, Flavor::Inner);
                    assert_eq!(dual.flavor, Flavor::Dual);
                    assert_eq!(inner.entries.len() as i64, n + 1);
                    assert_eq!(dual.entries.len() as i64, n + 1);

                    // a_0 = 1, a_i = 0 below the designed distance
                    assert!(inner.entries[0].is_one());
                    let d = n - t + 1;
                    assert!(is_d_code(&inner, d), "{kind:?} n={n} q={q} t={t}");

                    // the entries sum to the member count, which the dual
                    // repeats at index 0
                    let total: Rat = inner.entries.iter().sum();
                    let size = Rat::from(steiner_size(&spec, t).unwrap());
                    assert_eq!(total, size);
                    assert_eq!(dual.entries[0], size);
                }
            }
        }
    }
}

#[test]
fn steiner_moment_identities() {
    for kind in PolarKind::BASE {
        for n in 2..=6 {
            for q in [2u64, 3] {
                let spec = SchemeSpec::new(kind, n, q).unwrap();
                for t in 1..=n {
                    for j in 0..t {
                        assert!(
                            steiner_inner_moment_check(&spec, t, j),
                            "inner {kind:?} n={n} q={q} t={t} j={j}"
                        );
                    }
                    for j in 0..=n {
                        assert!(
                            steiner_moment_identity_check(&spec, t, j),
                            "dual {kind:?} n={n} q={q} t={t} j={j}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn frozen_dual_witness_entries() {
    // the dual entry that goes negative, at the witness index, for one
    // representative of each dual-negativity case
    let cells: [(PolarKind, i64, i64, usize, Rat); 6] = [
        (PolarKind::Symplectic, 5, 2, 4, rint(-17_391)),
        (PolarKind::Elliptic, 6, 2, 6, rfrac(-1_567_995, 2)),
        (PolarKind::Elliptic, 6, 3, 5, rfrac(-164_639_475, 2)),
        (PolarKind::Elliptic, 7, 4, 6, rfrac(-99_345_119_445, 2)),
        (PolarKind::Elliptic, 8, 5, 7, rfrac(-71_884_278_194_625, 2)),
        (
            PolarKind::HermitianEven,
            6,
            3,
            5,
            rfrac(-152_819_326_750_545, 2),
        ),
    ];
    for (kind, n, t, w, want) in cells {
        let spec = SchemeSpec::new(kind, n, 2).unwrap();
        let dual = steiner_dual_distribution(&spec, t).unwrap();
        assert_eq!(dual.entries[w], want, "{kind:?} n={n} t={t}");
    }
}

#[test]
fn odd_rank_base_witness_closed_form() {
    // symplectic and parabolic spaces of odd rank, t = 2: the dual entry at
    // n-1, divided by its multiplicity, equals
    //
    //   2 - (q^n - 1)/((q-1) q^{n-1}) - q^{-(2n-2)}
    //     - (q^{n-1} - 1)/((q-1) q^{n-3})
    //     + (q^n + 1)(q^{n-1} + 1)/q^{2n-2}
    //
    // and is negative.
    for q in [2u64, 3, 4, 5] {
        let qr = rint(q as i64);
        let one = Rat::one();
        for n in [5i64, 7] {
            for kind in [PolarKind::Symplectic, PolarKind::Parabolic] {
                let spec = SchemeSpec::new(kind, n, q).unwrap();
                let dual = steiner_dual_distribution(&spec, 2).unwrap();
                let table = eig_table(&spec).unwrap();
                let w = (n - 1) as usize;
                let lhs = &dual.entries[w] / &table.multiplicities[w];
                let rhs = rint(2)
                    - (rpow(&qr, n) - &one) / ((&qr - &one) * rpow(&qr, n - 1))
                    - rpow(&qr, -(2 * n - 2))
                    - (rpow(&qr, n - 1) - &one) / ((&qr - &one) * rpow(&qr, n - 3))
                    + (rpow(&qr, n) + &one) * (rpow(&qr, n - 1) + &one) / rpow(&qr, 2 * n - 2);
                assert_eq!(lhs, rhs, "{kind:?} n={n} q={q}");
                assert!(lhs < Rat::zero());
            }
        }
    }
}

#[test]
fn even_rank_elliptic_witness_closed_form() {
    // elliptic spaces of even rank, t = 2: the dual entry at n over its
    // multiplicity equals
    //
    //   1 - (q^n - 1)/((q-1) q^n) - q^{-2n}
    //     - (q^n - 1) q^2 / ((q-1) q^n)
    //     + (1 + q^{n+1})(1 + q^n)/q^{2n}
    //
    // and is negative.
    for q in [2u64, 3, 4, 5] {
        let qr = rint(q as i64);
        let one = Rat::one();
        for n in [4i64, 6] {
            let spec = SchemeSpec::new(PolarKind::Elliptic, n, q).unwrap();
            let dual = steiner_dual_distribution(&spec, 2).unwrap();
            let table = eig_table(&spec).unwrap();
            let w = n as usize;
            let lhs = &dual.entries[w] / &table.multiplicities[w];
            let rhs = &one - (rpow(&qr, n) - &one) / ((&qr - &one) * rpow(&qr, n))
                - rpow(&qr, -2 * n)
                - (rpow(&qr, n) - &one) * rpow(&qr, 2) / ((&qr - &one) * rpow(&qr, n))
                + (&one + rpow(&qr, n + 1)) * (&one + rpow(&qr, n)) / rpow(&qr, 2 * n);
            assert_eq!(lhs, rhs, "n={n} q={q}");
            assert!(lhs < Rat::zero());
        }
    }
}

#[test]
fn even_rank_elliptic_triple_witness_closed_form() {
    // elliptic spaces of even rank, t = 3: the dual entry at n-1, scaled by
    // (q-1)^2 (q+1) / (2 mu), factors as
    //
    //   -q (q+1) (1 - q^{2-n}) (1 - q^{4-n})
    for q in [2u64, 3, 4, 5] {
        let qr = rint(q as i64);
        let one = Rat::one();
        for n in [6i64, 8, 10] {
            let spec = SchemeSpec::new(PolarKind::Elliptic, n, q).unwrap();
            let dual = steiner_dual_distribution(&spec, 3).unwrap();
            let table = eig_table(&spec).unwrap();
            let w = (n - 1) as usize;
            let lhs = &dual.entries[w] * (&qr - &one) * (&qr - &one) * (&qr + &one)
                / (rint(2) * &table.multiplicities[w]);
            let rhs = -&qr * (&qr + &one) * (&one - rpow(&qr, 2 - n)) * (&one - rpow(&qr, 4 - n));
            assert_eq!(lhs, rhs, "n={n} q={q}");
            assert!(dual.entries[w] < Rat::zero());
        }
    }
}

#[test]
fn sporadic_witness_factored_forms() {
    // the three sporadic corners have fully factored witness ratios
    for q in [2u64, 3, 4, 5] {
        let qr = rint(q as i64);
        let one = Rat::one();

        // elliptic rank 7, t = 4, witness 6
        let spec = SchemeSpec::new(PolarKind::Elliptic, 7, q).unwrap();
        let dual = steiner_dual_distribution(&spec, 4).unwrap();
        let mu = Rat::from(eig_table(&spec).unwrap().multiplicities[6].clone());
        let got = &dual.entries[6] / mu;
        let want = rint(-2)
            * rpow(&qr, -5)
            * rpow(&(&qr + &one), 2)
            * (rpow(&qr, 2) + &one)
            * (rpow(&qr, 3) + &qr + &one);
        assert_eq!(got, want, "elliptic rank 7 q={q}");

        // elliptic rank 8, t = 5, witness 7
        let spec = SchemeSpec::new(PolarKind::Elliptic, 8, q).unwrap();
        let dual = steiner_dual_distribution(&spec, 5).unwrap();
        let mu = Rat::from(eig_table(&spec).unwrap().multiplicities[7].clone());
        let got = &dual.entries[7] / mu;
        let want = rint(-2)
            * rpow(&qr, -5)
            * rpow(&(&qr + &one), 4)
            * (rpow(&qr, 2) - &qr + &one)
            * rpow(&(rpow(&qr, 2) + &one), 2);
        assert_eq!(got, want, "elliptic rank 8 q={q}");

        // hermitian even rank 6, t = 3, witness 5
        let spec = SchemeSpec::new(PolarKind::HermitianEven, 6, q).unwrap();
        let dual = steiner_dual_distribution(&spec, 3).unwrap();
        let mu = Rat::from(eig_table(&spec).unwrap().multiplicities[5].clone());
        let got = &dual.entries[5] / mu;
        let want = -rpow(&qr, -7)
            * rpow(&(&qr + &one), 3)
            * (rpow(&qr, 2) - &qr + &one)
            * (rpow(&qr, 4) - rpow(&qr, 3) + rpow(&qr, 2) + &one);
        assert_eq!(got, want, "hermitian even rank 6 q={q}");
    }
}

#[test]
fn sporadic_witness_sampled_values() {
    let cells: [(PolarKind, i64, i64, usize, u64, Rat); 7] = [
        (PolarKind::Elliptic, 7, 4, 6, 2, rfrac(-495, 16)),
        (PolarKind::Elliptic, 7, 4, 6, 3, rfrac(-9920, 243)),
        (PolarKind::Elliptic, 8, 5, 7, 2, rfrac(-6075, 16)),
        (PolarKind::Elliptic, 8, 5, 7, 3, rfrac(-358_400, 243)),
        (PolarKind::HermitianEven, 6, 3, 5, 2, rfrac(-1053, 128)),
        (PolarKind::HermitianEven, 6, 3, 5, 3, rfrac(-28_672, 2187)),
        (PolarKind::HermitianEven, 6, 3, 5, 5, rfrac(-2_385_936, 78_125)),
    ];
    for (kind, n, t, w, q, want) in cells {
        let spec = SchemeSpec::new(kind, n, q).unwrap();
        let dual = steiner_dual_distribution(&spec, t).unwrap();
        let mu = Rat::from(eig_table(&spec).unwrap().multiplicities[w].clone());
        assert_eq!(&dual.entries[w] / mu, want, "{kind:?} n={n} t={t} q={q}");
    }
}

#[test]
fn subset_distribution_arithmetic() {
    // a 4-cycle inside a 2-class relation matrix: distances to self 0,
    // neighbors 1, antipode 2
    let relation: Vec<Vec<u8>> = vec![
        vec![0, 1, 2, 1],
        vec![1, 0, 1, 2],
        vec![2, 1, 0, 1],
        vec![1, 2, 1, 0],
    ];
    let inner = inner_distribution(&relation, &[0, 1, 2, 3], 2).unwrap();
    assert_eq!(inner.entries, vec![rint(1), rint(2), rint(1)]);
    assert!(is_d_code(&inner, 1));
    assert!(!is_d_code(&inner, 2));

    let pair = inner_distribution(&relation, &[0, 2], 2).unwrap();
    assert_eq!(pair.entries, vec![rint(1), rint(0), rint(1)]);
    assert!(is_d_code(&pair, 2));

    assert_eq!(
        inner_distribution(&relation, &[], 2),
        Err(DistError::EmptySubset)
    );
    assert!(matches!(
        inner_distribution(&relation, &[0, 7], 2),
        Err(DistError::BadParameters(_))
    ));
}

#[test]
fn dual_distribution_guards() {
    let spec = SchemeSpec::new(PolarKind::Symplectic, 2, 2).unwrap();
    let table = eig_table(&spec).unwrap();

    let short = Distribution {
        flavor: Flavor::Inner,
        entries: vec![Rat::one()],
    };
    assert!(matches!(
        dual_distribution(&short, &table),
        Err(DistError::LengthMismatch { .. })
    ));

    let dual = Distribution {
        flavor: Flavor::Dual,
        entries: vec![Rat::one(), Rat::zero(), Rat::zero()],
    };
    assert!(matches!(
        dual_distribution(&dual, &table),
        Err(DistError::BadParameters(_))
    ));
}
