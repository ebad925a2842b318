//! Identity grids for the exact q-series layer.
//!
//! Everything here is checked with rational arithmetic, so equality is
//! literal equality: no tolerances.

use polar_core::qarith::{
    binom2, inversion_check, qbinomial, qbinomial_theorem_check, qchu_vandermonde_check,
    qhypergeometric, qpochhammer, rfrac, rint, rpow, QarithError, Rat,
};

use num_traits::{One, Zero};

fn bases() -> Vec<Rat> {
    vec![rint(2), rint(3), rint(-2), rfrac(1, 2), rfrac(-3, 2)]
}

#[test]
fn qbinomial_frozen_values() {
    assert_eq!(qbinomial(8, 4, &rint(2)), rint(200_787));
    assert_eq!(qbinomial(6, 3, &rint(3)), rint(33_880));
    assert_eq!(qbinomial(5, 2, &rint(2)), rint(155));
    assert_eq!(qbinomial(4, 2, &rint(4)), rint(357));
    assert_eq!(qpochhammer(&rint(3), &rint(2), 4), rint(2530));
    assert_eq!(qpochhammer(&rint(-1), &rint(3), 3), rint(80));
}

#[test]
fn qbinomial_symmetry_and_pascal() {
    for q in &bases() {
        for n in 0..=8i64 {
            for k in 0..=n {
                assert_eq!(qbinomial(n, k, q), qbinomial(n, n - k, q));
                if n > 0 {
                    // two Pascal recurrences, differing by which side
                    // carries the power of q
                    let lhs = qbinomial(n, k, q);
                    let a = qbinomial(n - 1, k - 1, q) + rpow(q, k) * qbinomial(n - 1, k, q);
                    let b = qbinomial(n - 1, k, q) + rpow(q, n - k) * qbinomial(n - 1, k - 1, q);
                    assert_eq!(lhs, a, "pascal a at n={n} k={k} q={q}");
                    assert_eq!(lhs, b, "pascal b at n={n} k={k} q={q}");
                }
            }
        }
    }
}

#[test]
fn qpochhammer_splits_as_product() {
    // (a; q)_{m+n} = (a; q)_m (a q^m; q)_n
    let args = [rint(2), rint(-1), rfrac(1, 2), rfrac(-3, 2), rint(3)];
    for q in &bases() {
        for a in &args {
            for m in 0..=8u32 {
                for n in 0..=8u32 {
                    let whole = qpochhammer(a, q, m + n);
                    let left = qpochhammer(a, q, m);
                    let right = qpochhammer(&(a * rpow(q, m as i64)), q, n);
                    assert_eq!(whole, left * right, "split at a={a} q={q} m={m} n={n}");
                }
            }
        }
    }
}

#[test]
fn qbinomial_theorem_grid() {
    let zs = [rint(1), rint(-1), rint(2), rfrac(1, 2), rfrac(-3, 2), rint(3)];
    for q in &bases() {
        for z in &zs {
            for k in 0..=8 {
                assert!(qbinomial_theorem_check(k, z, q), "k={k} z={z} q={q}");
            }
        }
    }
}

#[test]
fn inversion_grid() {
    for q in &bases() {
        for i in 0..=8 {
            for k in 0..=8 {
                assert!(inversion_check(i, k, q), "i={i} k={k} q={q}");
            }
        }
    }
}

#[test]
fn chu_vandermonde_grid() {
    for q in &[rint(2), rfrac(1, 2), rint(-3)] {
        for x in 0..=6 {
            for y in 0..=6 {
                for z in 0..=6 {
                    assert!(qchu_vandermonde_check(x, y, z, q), "x={x} y={y} z={z} q={q}");
                }
            }
        }
    }
}

#[test]
fn terminating_1phi0_collapses_to_pochhammer() {
    // 1phi0(q^{-n}; -; q, z) = (z q^{-n}; q)_n
    let zs = [rint(1), rint(-2), rfrac(3, 2), rfrac(-1, 3)];
    for q in &[rint(2), rint(3), rfrac(1, 2)] {
        for z in &zs {
            for n in 0..=8i64 {
                let got = qhypergeometric(&[rpow(q, -n)], &[], q, z).unwrap();
                let want = qpochhammer(&(z * rpow(q, -n)), q, n as u32);
                assert_eq!(got, want, "n={n} z={z} q={q}");
            }
        }
    }
}

#[test]
fn pfaff_saalschutz_grid() {
    // balanced 3phi2 summation:
    //
    //   3phi2(q^{-n}, a, b; c, a b q^{1-n} / c; q, q)
    //     = (c/a; q)_n (c/b; q)_n / ( (c; q)_n (c/(ab); q)_n )
    //
    // Argument combinations where a denominator parameter hits q^{-i} before
    // the series terminates (a pole) or where the right side divides by zero
    // are skipped; the survivor count is asserted so the grid cannot pass
    // vacuously.
    let params = [rint(2), rint(3), rfrac(1, 2), rint(-2), rint(5)];
    let mut checked = 0u32;
    for q in &[rint(2), rfrac(1, 2)] {
        for a in &params {
            for b in &params {
                for c in &params {
                    for n in 0..=5i64 {
                        let top = [rpow(q, -n), a.clone(), b.clone()];
                        let bot = [c.clone(), a * b * rpow(q, 1 - n) / c];
                        let lhs = match qhypergeometric(&top, &bot, q, q) {
                            Ok(v) => v,
                            Err(QarithError::PoleBeforeTermination { .. }) => continue,
                            Err(e) => panic!("unexpected failure: {e}"),
                        };
                        let den =
                            qpochhammer(c, q, n as u32) * qpochhammer(&(c / (a * b)), q, n as u32);
                        if den.is_zero() {
                            continue;
                        }
                        let rhs = qpochhammer(&(c / a), q, n as u32)
                            * qpochhammer(&(c / b), q, n as u32)
                            / den;
                        assert_eq!(lhs, rhs, "a={a} b={b} c={c} n={n} q={q}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 800, "only {checked} grid points were checkable");
}

#[test]
fn hypergeometric_edge_behavior() {
    let q = rint(2);
    // zero numerator parameter freezes its factor; series still terminates
    // off the other parameter
    let r = qhypergeometric(&[Rat::zero(), rpow(&q, -2)], &[rint(3)], &q, &rint(1));
    assert!(r.is_ok());
    // n = 0 termination gives the empty sum 1
    let r = qhypergeometric(&[Rat::one()], &[], &q, &rfrac(7, 3)).unwrap();
    assert!(r.is_one());
    // no numerator parameter of the form q^{-i}: rejected
    let r = qhypergeometric(&[rint(5)], &[], &q, &rint(1));
    assert_eq!(r, Err(QarithError::NonTerminating));
}

#[test]
fn binom2_matches_definition() {
    for x in -6..=6 {
        assert_eq!(binom2(x), x * (x - 1) / 2);
    }
}
