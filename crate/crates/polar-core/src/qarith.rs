//! Exact q-series arithmetic over the rationals.
//!
//! All quantities are `num_rational::BigRational`, so every identity in this
//! module is checked exactly, with no tolerance anywhere.
//!
//! Conventions:
//!
//! ```text
//! [n, k]_q  = prod_{j=1..k} (q^{n-j+1} - 1) / (q^j - 1)      (q-binomial)
//! (a; q)_n  = prod_{i=0..n-1} (1 - a q^i)                    (q-Pochhammer)
//!
//! rphi_s(a_1..a_r; b_1..b_s; q, z)
//!   = sum_{l>=0} [ prod_j (a_j;q)_l / prod_j (b_j;q)_l ]
//!       * ( (-1)^l q^{binom(l,2)} )^{1+s-r} * z^l / (q;q)_l
//! ```
//!
//! The hypergeometric sum is evaluated only when it terminates, that is when
//! some numerator parameter equals `q^{-i}` with `i >= 0`; the sum then stops
//! at `l = i`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact scalar type used throughout the crate.
pub type Rat = num_rational::BigRational;

/// How far the termination probe walks when looking for a numerator
/// parameter of the form q^{-i}. All series in this crate terminate far
/// earlier; the probe only bounds the search for malformed input.
pub const TERMINATION_PROBE: usize = 256;

/// Errors from the q-series evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QarithError {
    /// No numerator parameter of a hypergeometric sum had the form q^{-i}
    /// within the termination probe.
    NonTerminating,
    /// A denominator Pochhammer factor vanished before the series
    /// terminated.
    PoleBeforeTermination { index: usize },
}

impl std::fmt::Display for QarithError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QarithError::NonTerminating => {
                write!(f, "hypergeometric series does not terminate")
            }
            QarithError::PoleBeforeTermination { index } => {
                write!(f, "denominator factor vanishes at term {index}")
            }
        }
    }
}

impl std::error::Error for QarithError {}

/// Integer as a rational.
pub fn rint(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Big integer as a rational.
pub fn rbig(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

/// Fraction n/d as a rational. Panics when d = 0.
pub fn rfrac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// x^e for any integer e. Panics on 0^e with e < 0.
pub fn rpow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let exp = i32::try_from(e.unsigned_abs()).expect("exponent fits in i32");
    let a = x.pow(exp);
    if e > 0 {
        a
    } else {
        assert!(!a.is_zero(), "0 raised to a negative power");
        a.recip()
    }
}

/// binom(x, 2) = x(x-1)/2, for any integer x.
pub fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// True when x has denominator 1.
pub fn is_int(x: &Rat) -> bool {
    x.denom().is_one()
}

/// The numerator of x when x is an integer.
pub fn to_bigint(x: &Rat) -> Option<BigInt> {
    if is_int(x) {
        Some(x.numer().clone())
    } else {
        None
    }
}

/// Gaussian binomial [n, k]_q at an arbitrary rational base q (q not a root
/// of unity of order <= k).
///
/// Total over all integer arguments: 0 when k < 0 or k > n >= 0, and the
/// defining product otherwise, which also covers negative n.
pub fn qbinomial(n: i64, k: i64, q: &Rat) -> Rat {
    if k < 0 || (n >= 0 && k > n) {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for j in 1..=k {
        let num = rpow(q, n - j + 1) - Rat::one();
        let den = rpow(q, j) - Rat::one();
        assert!(!den.is_zero(), "base is a root of unity");
        acc *= num / den;
    }
    acc
}

/// q-Pochhammer symbol (a; q)_n = prod_{i=0..n-1} (1 - a q^i).
pub fn qpochhammer(a: &Rat, q: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc *= Rat::one() - &aq;
        aq *= q;
    }
    acc
}

/// Index i >= 0 with a = q^{-i}, when one exists within the probe bound.
fn termination_index(a: &Rat, q: &Rat) -> Option<usize> {
    let mut x = a.clone();
    for i in 0..=TERMINATION_PROBE {
        // a q^i == 1 <=> a == q^{-i}
        if x.is_one() {
            return Some(i);
        }
        x *= q;
    }
    None
}

/// Terminating basic hypergeometric sum rphi_s(num; den; q, z).
///
/// The series must terminate: some numerator parameter must equal q^{-i}
/// with i >= 0 (checked up to `TERMINATION_PROBE`). Zero numerator
/// parameters are allowed and simply freeze their Pochhammer factor at 1.
pub fn qhypergeometric(
    num: &[Rat],
    den: &[Rat],
    q: &Rat,
    z: &Rat,
) -> Result<Rat, QarithError> {
    let stop = num
        .iter()
        .filter_map(|a| termination_index(a, q))
        .min()
        .ok_or(QarithError::NonTerminating)?;

    // correction exponent 1 + s - r applied as ((-1)^l q^{binom(l,2)})^c
    let c = 1 + den.len() as i64 - num.len() as i64;

    let mut total = Rat::one();
    let mut term = Rat::one();
    let mut qpow = Rat::one(); // q^l for the term being extended
    for l in 0..stop {
        for a in num {
            term *= Rat::one() - a * &qpow;
        }
        for b in den {
            let f = Rat::one() - b * &qpow;
            if f.is_zero() {
                return Err(QarithError::PoleBeforeTermination { index: l + 1 });
            }
            term /= f;
        }
        if c != 0 {
            // ratio of consecutive corrections is ((-1) q^l)^c
            term *= rpow(&(-&qpow), c);
        }
        term *= z;
        let f = Rat::one() - q * &qpow;
        if f.is_zero() {
            return Err(QarithError::PoleBeforeTermination { index: l + 1 });
        }
        term /= f;
        qpow *= q;
        total += &term;
    }
    Ok(total)
}

/// Checks the q-binomial theorem at (k, z, q):
///
/// ```text
/// sum_{i=0..k} q^{binom(i,2)} [k, i]_q z^i = prod_{i=0..k-1} (1 + z q^i)
/// ```
pub fn qbinomial_theorem_check(k: i64, z: &Rat, q: &Rat) -> bool {
    assert!(k >= 0);
    let mut lhs = Rat::zero();
    for i in 0..=k {
        lhs += rpow(q, binom2(i)) * qbinomial(k, i, q) * rpow(z, i);
    }
    let rhs = qpochhammer(&-z.clone(), q, k as u32);
    lhs == rhs
}

/// Checks the alternating-sum inversion identity at (i, k, q):
///
/// ```text
/// sum_{j=i..k} (-1)^{j-i} q^{binom(j-i,2)} [j, i]_q [k, j]_q = delta_{ik}
/// ```
pub fn inversion_check(i: i64, k: i64, q: &Rat) -> bool {
    assert!(i >= 0 && k >= 0);
    let mut sum = Rat::zero();
    for j in i..=k {
        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
        sum += rint(sign)
            * rpow(q, binom2(j - i))
            * qbinomial(j, i, q)
            * qbinomial(k, j, q);
    }
    sum == if i == k { Rat::one() } else { Rat::zero() }
}

/// q-analogue of the Chu-Vandermonde convolution:
///
/// ```text
/// [x+y, z]_q = sum_i q^{i(y-z+i)} [x, i]_q [y, z-i]_q
/// ```
///
/// valid for nonnegative integers x, y, z. Used as a self-test of the
/// binomial evaluator on shifted arguments.
pub fn qchu_vandermonde_check(x: i64, y: i64, z: i64, q: &Rat) -> bool {
    assert!(x >= 0 && y >= 0 && z >= 0);
    let mut sum = Rat::zero();
    for i in 0..=z {
        sum += rpow(q, i * (y - z + i)) * qbinomial(x, i, q) * qbinomial(y, z - i, q);
    }
    sum == qbinomial(x + y, z, q)
}

/// Exact sign of a rational, as -1, 0 or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
