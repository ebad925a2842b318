//! Inner and dual distributions of subsets of generators.
//!
//! For a nonempty subset Y of the vertex set X of a scheme with n classes,
//! the inner distribution is
//!
//! ```text
//! a_i = |{ (x, y) in Y x Y : (x, y) in R_i }| / |Y|,
//! ```
//!
//! and the dual distribution is a'_k = sum_i Q_k(i) a_i, which is always
//! nonnegative. Y is a d-code when a_1 = ... = a_{d-1} = 0.
//!
//! A t-Steiner system of generators (every isotropic t-space in exactly one
//! member) is an (n-t+1)-code whose inner distribution is forced:
//!
//! ```text
//! A_0 = 1,  A_{n-i} = sum_{j=i..t-1} (-1)^{j-i} p^{binom(j-i,2)}
//!             [j, i]_p [n, j]_p (prod_{l=j..t-1} (1 + p^{n-l+e}) - 1)
//! ```
//!
//! for 0 <= i <= t-1, with all other entries zero. Its dual distribution
//! then vanishes at indices 1..t. Both closed forms are computed here; the
//! nonexistence engine inspects the signs of the dual entries.

use crate::qarith::{binom2, qbinomial, rbig, rint, Rat};
use crate::schemes::{eig_table, qnum_identity_coefficient, scheme_size, SchemeSpec};
use num_traits::{One, Zero};

/// Whether a distribution is an inner or a dual one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Inner,
    Dual,
}

/// A distribution vector indexed by relation class or eigenspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    pub flavor: Flavor,
    pub entries: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistError {
    EmptySubset,
    LengthMismatch { got: usize, want: usize },
    BadParameters(String),
}

impl std::fmt::Display for DistError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistError::EmptySubset => write!(f, "subset is empty"),
            DistError::LengthMismatch { got, want } => {
                write!(f, "length mismatch: got {got}, want {want}")
            }
            DistError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

impl std::error::Error for DistError {}

/// Inner distribution of the subset with the given indices, from a full
/// relation matrix (entries are class indices 0..=classes).
pub fn inner_distribution(
    relation: &[Vec<u8>],
    subset: &[usize],
    classes: i64,
) -> Result<Distribution, DistError> {
    if subset.is_empty() {
        return Err(DistError::EmptySubset);
    }
    let mut counts = vec![0u64; classes as usize + 1];
    for &x in subset {
        for &y in subset {
            let r = relation
                .get(x)
                .and_then(|row| row.get(y))
                .copied()
                .ok_or(DistError::BadParameters(format!(
                    "subset index {} outside relation matrix",
                    x.max(y)
                )))?;
            if r as i64 > classes {
                return Err(DistError::LengthMismatch {
                    got: r as usize,
                    want: classes as usize,
                });
            }
            counts[r as usize] += 1;
        }
    }
    let size = rint(subset.len() as i64);
    let entries = counts
        .iter()
        .map(|&c| rint(c as i64) / &size)
        .collect();
    Ok(Distribution {
        flavor: Flavor::Inner,
        entries,
    })
}

/// Dual distribution a'_k = sum_i Q_k(i) a_i of an inner distribution.
pub fn dual_distribution(
    inner: &Distribution,
    table: &crate::schemes::EigTable,
) -> Result<Distribution, DistError> {
    if inner.flavor != Flavor::Inner {
        return Err(DistError::BadParameters(
            "dual of a dual distribution".into(),
        ));
    }
    let n = table.classes as usize;
    if inner.entries.len() != n + 1 {
        return Err(DistError::LengthMismatch {
            got: inner.entries.len(),
            want: n + 1,
        });
    }
    let mut entries = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut s = Rat::zero();
        for i in 0..=n {
            s += &table.qmat[k][i] * &inner.entries[i];
        }
        entries.push(s);
    }
    Ok(Distribution {
        flavor: Flavor::Dual,
        entries,
    })
}

/// True when the inner distribution vanishes at indices 1..=d-1.
pub fn is_d_code(inner: &Distribution, d: i64) -> bool {
    assert!(inner.flavor == Flavor::Inner && d >= 1);
    inner
        .entries
        .iter()
        .take(d as usize)
        .skip(1)
        .all(|a| a.is_zero())
}

/// Number of members of a t-Steiner system of generators,
/// S = prod_{i=0..t-1} (1 + p^{n-i+e}).
fn steiner_member_count(spec: &SchemeSpec, t: i64) -> Rat {
    let mut s = Rat::one();
    for i in 0..t {
        s *= Rat::one() + spec.p_pow_half(2 * (spec.n - i) + spec.two_e);
    }
    s
}

/// The forced inner distribution of a t-Steiner system of generators in a
/// base family of rank n, for 1 <= t <= n.
pub fn steiner_inner_distribution(
    spec: &SchemeSpec,
    t: i64,
) -> Result<Distribution, DistError> {
    if !spec.is_base() {
        return Err(DistError::BadParameters(format!(
            "no Steiner closed form for {}",
            spec.kind
        )));
    }
    let n = spec.n;
    if t < 1 || t > n {
        return Err(DistError::BadParameters(format!(
            "t = {t} outside 1..={n}"
        )));
    }
    let p = spec.p_rat();
    let mut entries = vec![Rat::zero(); n as usize + 1];
    entries[0] = Rat::one();
    for i in 0..t {
        // A_{n-i}
        let mut a = Rat::zero();
        for j in i..t {
            let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
            let mut tail = Rat::one();
            for l in j..t {
                tail *= Rat::one() + spec.p_pow_half(2 * (n - l) + spec.two_e);
            }
            a += rint(sign)
                * spec.p_pow_half(2 * binom2(j - i))
                * qbinomial(j, i, &p)
                * qbinomial(n, j, &p)
                * (tail - Rat::one());
        }
        entries[(n - i) as usize] = a;
    }
    let total: Rat = entries.iter().sum();
    assert_eq!(
        total,
        steiner_member_count(spec, t),
        "Steiner inner distribution must sum to the member count"
    );
    Ok(Distribution {
        flavor: Flavor::Inner,
        entries,
    })
}

/// The dual distribution of a t-Steiner system of generators. Entries at
/// indices 1..=t are exactly zero, which is asserted.
pub fn steiner_dual_distribution(
    spec: &SchemeSpec,
    t: i64,
) -> Result<Distribution, DistError> {
    let inner = steiner_inner_distribution(spec, t)?;
    let table = eig_table(spec)
        .map_err(|e| DistError::BadParameters(format!("table: {e}")))?;
    let dual = dual_distribution(&inner, &table)?;
    assert_eq!(dual.entries[0], steiner_member_count(spec, t));
    for k in 1..=t as usize {
        assert!(
            dual.entries[k].is_zero(),
            "dual distribution of a Steiner system must vanish at {k}"
        );
    }
    Ok(dual)
}

/// Checks the moment identity tying the two distributions of a t-Steiner
/// system together:
///
/// ```text
/// sum_{k=0..j} A'_k w_k(j) = |X| sum_i A_i [n-i, j]_p
/// ```
///
/// with the coefficients w_k(j) of `qnum_identity_coefficient`.
pub fn steiner_moment_identity_check(spec: &SchemeSpec, t: i64, j: i64) -> bool {
    let inner = steiner_inner_distribution(spec, t).unwrap();
    let dual = steiner_dual_distribution(spec, t).unwrap();
    let n = spec.n;
    let mut lhs = Rat::zero();
    for k in 0..=n {
        lhs += qnum_identity_coefficient(spec, k, j) * &dual.entries[k as usize];
    }
    let mut rhs = Rat::zero();
    for i in 0..=n {
        rhs += qbinomial(n - i, j, &spec.p_rat()) * &inner.entries[i as usize];
    }
    lhs == rbig(scheme_size(spec)) * rhs
}

/// Checks the binomial moments of the forced inner distribution:
///
/// ```text
/// sum_{i=0..t-1} A_{n-i} [i, j]_p
///   = [n, j]_p (prod_{l=j..t-1} (1 + p^{n-l+e}) - 1)
/// ```
///
/// for 0 <= j <= t-1.
pub fn steiner_inner_moment_check(spec: &SchemeSpec, t: i64, j: i64) -> bool {
    let inner = steiner_inner_distribution(spec, t).unwrap();
    let n = spec.n;
    let p = spec.p_rat();
    let mut lhs = Rat::zero();
    for i in 0..t {
        lhs += &inner.entries[(n - i) as usize] * qbinomial(i, j, &p);
    }
    let mut tail = Rat::one();
    for l in j..t {
        tail *= Rat::one() + spec.p_pow_half(2 * (n - l) + spec.two_e);
    }
    lhs == qbinomial(n, j, &p) * (tail - Rat::one())
}
