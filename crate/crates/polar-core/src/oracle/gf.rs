//! Small finite fields with table-based arithmetic.
//!
//! Supported orders: 2, 3, 4, 5, 7, 8, 9. Elements are u8 values 0..q.
//! Prime fields are residues; the extension fields are
//!
//! ```text
//! GF(4) = GF(2)[x] / (x^2 + x + 1)      e = b1 x + b0,  e = 2 b1 + b0
//! GF(8) = GF(2)[x] / (x^3 + x + 1)      e = b2 x^2 + b1 x + b0
//! GF(9) = GF(3)[x] / (x^2 + 1)          e = c1 x + c0,  e = 3 c1 + c0
//! ```
//!
//! All tables are checked against the field axioms at construction, and
//! for the two square orders the stored involution x -> x^sqrt(q) is
//! checked to be an automorphism fixing exactly the prime field.

use super::OracleError;

#[derive(Debug, Clone)]
pub struct Gf {
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    conj: Vec<u8>,
    has_conj: bool,
}

/// Digits of e in base r, lowest first, padded to k.
fn digits(mut e: usize, r: usize, k: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    for slot in d.iter_mut() {
        *slot = e % r;
        e /= r;
    }
    d
}

fn value(d: &[usize], r: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * r + c)
}

/// Product of two field elements written in base r, reduced by the monic
/// irreducible `irr` (coefficients lowest first).
fn polymul(a: usize, b: usize, r: usize, irr: &[usize]) -> usize {
    let k = irr.len() - 1;
    let da = digits(a, r, k);
    let db = digits(b, r, k);
    let mut prod = vec![0usize; 2 * k - 1];
    for (i, &ca) in da.iter().enumerate() {
        for (j, &cb) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ca * cb) % r;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            prod[top] = 0;
            for (j, &ic) in irr.iter().enumerate().take(k) {
                let pos = top - k + j;
                prod[pos] = (prod[pos] + c * (r - ic) % r) % r;
            }
        }
    }
    value(&prod[..k], r)
}

impl Gf {
    pub fn new(q: u64) -> Result<Gf, OracleError> {
        let (r, irr): (usize, Vec<usize>) = match q {
            2 | 3 | 5 | 7 => (q as usize, vec![0, 1]),
            4 => (2, vec![1, 1, 1]),
            8 => (2, vec![1, 1, 0, 1]),
            9 => (3, vec![1, 0, 1]),
            _ => return Err(OracleError::UnsupportedField(q)),
        };
        let q = q as usize;
        let mulf = |a: usize, b: usize| -> usize {
            if irr.len() == 2 {
                a * b % r
            } else {
                polymul(a, b, r, &irr)
            }
        };
        let addf = |a: usize, b: usize| -> usize {
            let k = irr.len() - 1;
            let (da, db) = (digits(a, r, k), digits(b, r, k));
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % r).collect();
            value(&sum, r)
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = addf(a, b) as u8;
                mul[a * q + b] = mulf(a, b) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let root = (2..=3).find(|s| s * s == q);
        let mut conj: Vec<u8> = (0..q as u8).collect();
        if let Some(s) = root {
            for a in 0..q {
                let mut acc = 1usize;
                for _ in 0..s {
                    acc = mulf(acc, a);
                }
                conj[a] = acc as u8;
            }
        }
        let gf = Gf {
            q,
            add,
            mul,
            neg,
            inv,
            conj,
            has_conj: root.is_some(),
        };
        gf.check_axioms()?;
        Ok(gf)
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; a must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// x -> x^sqrt(q) for q in {4, 9}, identity otherwise.
    #[inline]
    pub fn conj(&self, a: u8) -> u8 {
        self.conj[a as usize]
    }

    pub fn has_conj(&self) -> bool {
        self.has_conj
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    fn check_axioms(&self) -> Result<(), OracleError> {
        let bad = |msg: &str| Err(OracleError::Inconsistent(format!("field axioms: {msg}")));
        let q = self.q as u8;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return bad("identity");
            }
            if self.add(a, self.neg(a)) != 0 {
                return bad("negation");
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return bad("inversion");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return bad("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return bad("associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return bad("distributivity");
                    }
                }
            }
        }
        if self.has_conj {
            let mut fixed = 0;
            for a in 0..q {
                if self.conj(self.conj(a)) != a {
                    return bad("conjugation is not an involution");
                }
                if self.conj(a) == a {
                    fixed += 1;
                }
                for b in 0..q {
                    if self.conj(self.add(a, b)) != self.add(self.conj(a), self.conj(b))
                        || self.conj(self.mul(a, b)) != self.mul(self.conj(a), self.conj(b))
                    {
                        return bad("conjugation is not an automorphism");
                    }
                }
            }
            let root = (2..=3).find(|s| s * s == self.q).unwrap();
            if fixed != root {
                return bad("fixed field of conjugation has the wrong size");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_supported_orders_build() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let gf = Gf::new(q).unwrap();
            assert_eq!(gf.q as u64, q);
            assert_eq!(gf.has_conj(), q == 4 || q == 9);
        }
        assert!(matches!(Gf::new(6), Err(OracleError::UnsupportedField(6))));
        assert!(matches!(Gf::new(16), Err(OracleError::UnsupportedField(16))));
    }

    #[test]
    fn gf4_multiplication() {
        // x * x = x + 1, x * (x + 1) = 1 with x encoded as 2
        let gf = Gf::new(4).unwrap();
        assert_eq!(gf.mul(2, 2), 3);
        assert_eq!(gf.mul(2, 3), 1);
        assert_eq!(gf.conj(2), 3);
        assert_eq!(gf.conj(3), 2);
    }

    #[test]
    fn gf9_conjugation_fixes_prime_field() {
        let gf = Gf::new(9).unwrap();
        for a in [0u8, 1, 2] {
            assert_eq!(gf.conj(a), a);
        }
        // x^3 = -x for x^2 = -1, so conj(x) = 2x with x encoded as 3
        assert_eq!(gf.conj(3), 6);
    }
}
