//! Eigenvalue tables of the association schemes of finite classical polar
//! spaces.
//!
//! A polar space of rank n over GF(q) carries the association scheme on its
//! set X of generators (maximal totally isotropic subspaces), with relations
//!
//! ```text
//! R_i = { (U, W) : dim(U /\ W) = n - i },   i = 0, 1, ..., n.
//! ```
//!
//! Each of the six families is described by two parameters (p, e):
//!
//! ```text
//! family                 ambient space      p     e
//! hermitian odd  2A_{2n-1}  U(2n, q^2)     q^2  -1/2
//! hermitian even 2A_{2n}    U(2n+1, q^2)   q^2   1/2
//! symplectic     C_n        Sp(2n, q)      q     0
//! hyperbolic     D_n        O+(2n, q)      q    -1
//! parabolic      B_n        O(2n+1, q)     q     0
//! elliptic       2D_{n+1}   O-(2n+2, q)    q     1
//! ```
//!
//! and the scheme data is
//!
//! ```text
//! |X|     = prod_{i=1..n} (1 + p^{i+e})
//! v_i     = p^{binom(i+1,2) + ie} [n, i]_p
//! P_i(k)  = v_i [n, k]_p^{-1}
//!           sum_{l=0..i} (-1)^l [n-i, k-l]_p [i, l]_p p^{l(l-i-e-1)}
//!         = v_i 3phi2(p^{-k}, p^{-i}, -p^{-n-e-1+k}; 0, p^{-n}; p, p)
//! ```
//!
//! with Q defined by the duality mu_k P_i(k) = v_i Q_k(i) and the
//! multiplicities mu_k recovered exactly from orthogonality.
//!
//! Two derived schemes are included. The half hyperbolic scheme is the
//! restriction of D_m to one bipartite half of its generators, with
//! P'_i(k) = P_{2i}(k) on floor(m/2) classes. The fused scheme of B_n (or
//! C_n, which has the same table) merges R_{2j-1} with R_{2j}; its table
//! coincides with that of the half hyperbolic scheme of rank n+1.
//!
//! For the hermitian odd family and the half hyperbolic scheme the dual
//! eigenvalues are q-Hahn polynomials. With
//!
//! ```text
//! (b, c) = (-q, -1)       hermitian odd
//! (b, c) = (q^2, 1/q)     half hyperbolic, even m
//! (b, c) = (q^2, q)       half hyperbolic, odd m
//! ```
//!
//! one has, in the appropriate eigenspace ordering,
//!
//! ```text
//! P'_i(k) = v'_i  3phi2(b^{-i}, b^{-k}, q^{-1}c^{-1}b^{-2n+k};
//!                       b^{-n}, c^{-1}b^{-n}; b, b)
//! Q'_k(i) = mu'_k 3phi2(b^{-i}, b^{-k}, q^{-1}c^{-1}b^{-2n+k};
//!                       b^{-n}, c^{-1}b^{-n}; b, b)
//! ```
//!
//! where for the hermitian odd family the ordering is the alternate one,
//! interleaving the natural eigenspaces as 0, n, 1, n-1, 2, n-2, ...

use crate::qarith::{
    binom2, qbinomial, qhypergeometric, qpochhammer, rbig, rint, rpow, to_bigint, Rat,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Largest number of classes for which eigenvalue tables are built.
pub const MAX_RANK: i64 = 16;

/// The six polar space families plus the two derived schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarKind {
    /// 2A_{2n-1}, generators of a hermitian form on a 2n-dim space over GF(q^2).
    HermitianOdd,
    /// 2A_{2n}, generators of a hermitian form on a (2n+1)-dim space over GF(q^2).
    HermitianEven,
    /// C_n, generators of an alternating form on a 2n-dim space.
    Symplectic,
    /// D_n, generators of a hyperbolic quadric on a 2n-dim space.
    Hyperbolic,
    /// B_n, generators of a parabolic quadric on a (2n+1)-dim space.
    Parabolic,
    /// 2D_{n+1}, generators of an elliptic quadric on a (2n+2)-dim space.
    Elliptic,
    /// One bipartite half of the hyperbolic scheme D_m (n holds m).
    HalfHyperbolic,
    /// B_n or C_n with relations R_{2j-1} and R_{2j} merged.
    FusedBC,
}

impl PolarKind {
    /// The six base families in a fixed order.
    pub const BASE: [PolarKind; 6] = [
        PolarKind::HermitianOdd,
        PolarKind::HermitianEven,
        PolarKind::Symplectic,
        PolarKind::Hyperbolic,
        PolarKind::Parabolic,
        PolarKind::Elliptic,
    ];

    /// Short display label.
    pub fn label(&self) -> &'static str {
        match self {
            PolarKind::HermitianOdd => "2A-odd",
            PolarKind::HermitianEven => "2A-even",
            PolarKind::Symplectic => "C",
            PolarKind::Hyperbolic => "D",
            PolarKind::Parabolic => "B",
            PolarKind::Elliptic => "2D",
            PolarKind::HalfHyperbolic => "half-D",
            PolarKind::FusedBC => "fused-BC",
        }
    }

    /// Descriptive name of the defining form.
    pub fn classical_name(&self) -> &'static str {
        match self {
            PolarKind::HermitianOdd => "hermitian-odd",
            PolarKind::HermitianEven => "hermitian-even",
            PolarKind::Symplectic => "symplectic",
            PolarKind::Hyperbolic => "hyperbolic",
            PolarKind::Parabolic => "parabolic",
            PolarKind::Elliptic => "elliptic",
            PolarKind::HalfHyperbolic => "half-hyperbolic",
            PolarKind::FusedBC => "fused-parabolic-symplectic",
        }
    }

    /// Parses either the short label or the descriptive name, case
    /// insensitively.
    pub fn parse(s: &str) -> Option<PolarKind> {
        let s = s.trim().to_ascii_lowercase();
        let all = [
            PolarKind::HermitianOdd,
            PolarKind::HermitianEven,
            PolarKind::Symplectic,
            PolarKind::Hyperbolic,
            PolarKind::Parabolic,
            PolarKind::Elliptic,
            PolarKind::HalfHyperbolic,
            PolarKind::FusedBC,
        ];
        all.into_iter().find(|k| {
            s == k.label().to_ascii_lowercase() || s == k.classical_name().to_ascii_lowercase()
        })
    }
}

impl std::fmt::Display for PolarKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which eigenspace ordering a table uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableOrdering {
    /// Natural ordering E_0, E_1, ..., E_n.
    Standard,
    /// Hermitian odd interleaved ordering E_0, E_n, E_1, E_{n-1}, ...
    Alternate,
}

/// Errors raised by scheme construction and table checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeError {
    BadParameters(String),
    IndexOutOfRange { index: i64, max: i64 },
    WrongFamily { op: &'static str, kind: PolarKind },
    InvariantViolation(String),
}

impl std::fmt::Display for SchemeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchemeError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
            SchemeError::IndexOutOfRange { index, max } => {
                write!(f, "index {index} out of range 0..={max}")
            }
            SchemeError::WrongFamily { op, kind } => {
                write!(f, "operation {op} is not defined for family {kind}")
            }
            SchemeError::InvariantViolation(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for SchemeError {}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut r = 0;
    for d in 2..=q {
        if d * d > q {
            r = q;
            break;
        }
        if q % d == 0 {
            r = d;
            break;
        }
    }
    let mut m = q;
    while m % r == 0 {
        m /= r;
    }
    m == 1
}

/// A polar space scheme given by family, rank and field size.
///
/// For `HalfHyperbolic` the field `n` holds the rank m of the underlying
/// hyperbolic space, so the derived scheme has floor(m/2) classes. For
/// `FusedBC` it holds the rank n of the underlying parabolic or symplectic
/// space, giving ceil(n/2) classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchemeSpec {
    pub kind: PolarKind,
    pub n: i64,
    pub q: u64,
    /// Twice the parameter e, so the six base families carry -1, 1, 0, -2, 0, 2.
    pub two_e: i64,
}

impl SchemeSpec {
    pub fn new(kind: PolarKind, n: i64, q: u64) -> Result<SchemeSpec, SchemeError> {
        if !is_prime_power(q) {
            return Err(SchemeError::BadParameters(format!(
                "q = {q} is not a prime power"
            )));
        }
        let min_n = if kind == PolarKind::HalfHyperbolic { 2 } else { 1 };
        if n < min_n {
            return Err(SchemeError::BadParameters(format!(
                "rank {n} is too small for family {kind}"
            )));
        }
        let two_e = match kind {
            PolarKind::HermitianOdd => -1,
            PolarKind::HermitianEven => 1,
            PolarKind::Symplectic | PolarKind::Parabolic | PolarKind::FusedBC => 0,
            PolarKind::Hyperbolic | PolarKind::HalfHyperbolic => -2,
            PolarKind::Elliptic => 2,
        };
        Ok(SchemeSpec { kind, n, q, two_e })
    }

    /// Number of nonidentity relation classes.
    pub fn classes(&self) -> i64 {
        match self.kind {
            PolarKind::HalfHyperbolic => self.n / 2,
            PolarKind::FusedBC => (self.n + 1) / 2,
            _ => self.n,
        }
    }

    pub fn is_base(&self) -> bool {
        !matches!(self.kind, PolarKind::HalfHyperbolic | PolarKind::FusedBC)
    }

    pub fn is_hermitian(&self) -> bool {
        matches!(self.kind, PolarKind::HermitianOdd | PolarKind::HermitianEven)
    }

    /// The base p of the scheme parameters: q^2 for hermitian families, q
    /// otherwise.
    pub fn p(&self) -> u64 {
        if self.is_hermitian() {
            self.q * self.q
        } else {
            self.q
        }
    }

    pub fn p_rat(&self) -> Rat {
        rint(self.p() as i64)
    }

    pub fn q_rat(&self) -> Rat {
        rint(self.q as i64)
    }

    /// p^{twice/2} as an exact rational. Exponents of p are half-integers
    /// for hermitian families, so they are carried around doubled; the value
    /// is always an integral power of q.
    pub fn p_pow_half(&self, twice: i64) -> Rat {
        let s = if self.is_hermitian() { 2 } else { 1 };
        let tot = twice * s;
        assert!(tot % 2 == 0, "fractional power of q cannot occur");
        rpow(&self.q_rat(), tot / 2)
    }

    /// Hahn parameters (b, c), defined for the hermitian odd family and for
    /// the half hyperbolic scheme.
    pub fn hahn_bc(&self) -> Option<(Rat, Rat)> {
        match self.kind {
            PolarKind::HermitianOdd => Some((-self.q_rat(), -Rat::one())),
            PolarKind::HalfHyperbolic => {
                let b = rpow(&self.q_rat(), 2);
                let c = if self.n % 2 == 0 {
                    self.q_rat().recip()
                } else {
                    self.q_rat()
                };
                Some((b, c))
            }
            _ => None,
        }
    }

    /// Number of generators through a fixed isotropic (n-1)-space, which is
    /// p^{e+1} + 1. Base families only.
    pub fn generators_per_next_to_max(&self) -> BigInt {
        assert!(self.is_base());
        to_bigint(&(self.p_pow_half(2 + self.two_e) + Rat::one())).expect("integral")
    }
}

impl std::fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}(n={}, q={})", self.kind, self.n, self.q)
    }
}

/// Rows of the fused scheme: block j of relation indices of B_n.
fn fused_rows(j: i64, n: i64) -> Vec<i64> {
    if j == 0 {
        vec![0]
    } else if 2 * j <= n {
        vec![2 * j - 1, 2 * j]
    } else {
        vec![2 * j - 1]
    }
}

/// Number of generators |X|.
pub fn scheme_size(spec: &SchemeSpec) -> BigInt {
    match spec.kind {
        PolarKind::HalfHyperbolic => {
            let base = SchemeSpec::new(PolarKind::Hyperbolic, spec.n, spec.q).unwrap();
            scheme_size(&base) / BigInt::from(2)
        }
        PolarKind::FusedBC => {
            let base = SchemeSpec::new(PolarKind::Parabolic, spec.n, spec.q).unwrap();
            scheme_size(&base)
        }
        _ => {
            let mut acc = Rat::one();
            for i in 1..=spec.n {
                acc *= Rat::one() + spec.p_pow_half(2 * i + spec.two_e);
            }
            to_bigint(&acc).expect("|X| is an integer")
        }
    }
}

/// Valency v_i of relation R_i.
pub fn valency(spec: &SchemeSpec, i: i64) -> Result<BigInt, SchemeError> {
    let nc = spec.classes();
    if i < 0 || i > nc {
        return Err(SchemeError::IndexOutOfRange { index: i, max: nc });
    }
    match spec.kind {
        PolarKind::HalfHyperbolic => {
            // v'_i = q^{binom(2i,2)} [m, 2i]_q
            let v = rpow(&spec.q_rat(), binom2(2 * i)) * qbinomial(spec.n, 2 * i, &spec.q_rat());
            Ok(to_bigint(&v).expect("valency is an integer"))
        }
        PolarKind::FusedBC => {
            let base = SchemeSpec::new(PolarKind::Parabolic, spec.n, spec.q).unwrap();
            let mut acc = BigInt::zero();
            for r in fused_rows(i, spec.n) {
                acc += valency(&base, r)?;
            }
            Ok(acc)
        }
        _ => {
            // v_i = p^{binom(i+1,2) + ie} [n, i]_p
            let v = spec.p_pow_half(i * (i + 1) + i * spec.two_e)
                * qbinomial(spec.n, i, &spec.p_rat());
            Ok(to_bigint(&v).expect("valency is an integer"))
        }
    }
}

/// Eigenvalue P_i(k) in the natural ordering, by the alternating sum formula.
pub fn p_number(spec: &SchemeSpec, i: i64, k: i64) -> Result<Rat, SchemeError> {
    let nc = spec.classes();
    if i < 0 || i > nc {
        return Err(SchemeError::IndexOutOfRange { index: i, max: nc });
    }
    if k < 0 || k > nc {
        return Err(SchemeError::IndexOutOfRange { index: k, max: nc });
    }
    match spec.kind {
        PolarKind::HalfHyperbolic => {
            let base = SchemeSpec::new(PolarKind::Hyperbolic, spec.n, spec.q).unwrap();
            p_number(&base, 2 * i, k)
        }
        PolarKind::FusedBC => Ok(eig_table(spec)?.pmat[i as usize][k as usize].clone()),
        _ => {
            let n = spec.n;
            let p = spec.p_rat();
            let mut sum = Rat::zero();
            for l in 0..=i {
                let sign = if l % 2 == 0 { Rat::one() } else { -Rat::one() };
                // p^{l(l-i-e-1)} carried as twice the exponent
                let pw = spec.p_pow_half(2 * l * (l - i - 1) - l * spec.two_e);
                sum += sign * qbinomial(n - i, k - l, &p) * qbinomial(i, l, &p) * pw;
            }
            let v = rbig(valency(spec, i)?);
            Ok(v * sum / qbinomial(n, k, &p))
        }
    }
}

/// Eigenvalue P_i(k) through the terminating 3phi2 form. Agrees with
/// `p_number` entrywise; kept separate so the two evaluation routes can be
/// compared.
pub fn p_number_phi(spec: &SchemeSpec, i: i64, k: i64) -> Result<Rat, SchemeError> {
    let nc = spec.classes();
    if i < 0 || i > nc {
        return Err(SchemeError::IndexOutOfRange { index: i, max: nc });
    }
    if k < 0 || k > nc {
        return Err(SchemeError::IndexOutOfRange { index: k, max: nc });
    }
    match spec.kind {
        PolarKind::HalfHyperbolic => {
            let base = SchemeSpec::new(PolarKind::Hyperbolic, spec.n, spec.q).unwrap();
            p_number_phi(&base, 2 * i, k)
        }
        PolarKind::FusedBC => Err(SchemeError::WrongFamily {
            op: "p_number_phi",
            kind: spec.kind,
        }),
        _ => {
            let n = spec.n;
            let p = spec.p_rat();
            // 3phi2(p^{-k}, p^{-i}, -p^{-n-e-1+k}; 0, p^{-n}; p, p)
            let a3 = -spec.p_pow_half(2 * (k - n - 1) - spec.two_e);
            let num = [rpow(&p, -k), rpow(&p, -i), a3];
            let den = [Rat::zero(), rpow(&p, -n)];
            let phi = qhypergeometric(&num, &den, &p, &p)
                .map_err(|e| SchemeError::InvariantViolation(format!("3phi2: {e}")))?;
            Ok(rbig(valency(spec, i)?) * phi)
        }
    }
}

fn hahn_phi(spec: &SchemeSpec, i: i64, k: i64) -> Result<Rat, SchemeError> {
    let (b, c) = spec.hahn_bc().ok_or(SchemeError::WrongFamily {
        op: "hahn eigenvalue",
        kind: spec.kind,
    })?;
    let n = spec.classes();
    let q = spec.q_rat();
    // 3phi2(b^{-i}, b^{-k}, q^{-1}c^{-1}b^{-2n+k}; b^{-n}, c^{-1}b^{-n}; b, b)
    let a3 = (q * &c).recip() * rpow(&b, k - 2 * n);
    let num = [rpow(&b, -i), rpow(&b, -k), a3];
    let den = [rpow(&b, -n), c.recip() * rpow(&b, -n)];
    qhypergeometric(&num, &den, &b, &b)
        .map_err(|e| SchemeError::InvariantViolation(format!("hahn 3phi2: {e}")))
}

/// Hahn-ordered eigenvalue P'_i(k): for the hermitian odd family this is the
/// alternate-ordering table, for the half hyperbolic scheme the natural one.
pub fn hahn_p_number(spec: &SchemeSpec, i: i64, k: i64) -> Result<Rat, SchemeError> {
    let nc = spec.classes();
    if i < 0 || i > nc || k < 0 || k > nc {
        return Err(SchemeError::IndexOutOfRange {
            index: if i < 0 || i > nc { i } else { k },
            max: nc,
        });
    }
    let v = match spec.kind {
        // v'_i = q^{i^2} [n, i]_{q^2}
        PolarKind::HermitianOdd => {
            rpow(&spec.q_rat(), i * i) * qbinomial(spec.n, i, &rpow(&spec.q_rat(), 2))
        }
        PolarKind::HalfHyperbolic => rbig(valency(spec, i)?),
        _ => {
            return Err(SchemeError::WrongFamily {
                op: "hahn_p_number",
                kind: spec.kind,
            })
        }
    };
    Ok(v * hahn_phi(spec, i, k)?)
}

/// Hahn-ordered dual eigenvalue Q'_k(i) = mu'_k times the same 3phi2 that
/// appears in `hahn_p_number`.
pub fn hahn_q_number(spec: &SchemeSpec, k: i64, i: i64) -> Result<Rat, SchemeError> {
    let table = hahn_table(spec)?;
    let mu = rbig(table.multiplicities[k as usize].clone());
    Ok(mu * hahn_phi(spec, i, k)?)
}

/// The eigenvalue table in the ordering that makes the dual eigenvalues
/// q-Hahn polynomials: alternate for hermitian odd, natural for half
/// hyperbolic.
pub fn hahn_table(spec: &SchemeSpec) -> Result<EigTable, SchemeError> {
    match spec.kind {
        PolarKind::HermitianOdd => eig_table_ordered(spec, TableOrdering::Alternate),
        PolarKind::HalfHyperbolic => eig_table(spec),
        _ => Err(SchemeError::WrongFamily {
            op: "hahn_table",
            kind: spec.kind,
        }),
    }
}

/// Multiplicities mu_k, recovered from orthogonality (natural ordering).
pub fn multiplicities(spec: &SchemeSpec) -> Result<Vec<BigInt>, SchemeError> {
    Ok(eig_table(spec)?.multiplicities)
}

/// A complete first and second eigenvalue table of a scheme.
#[derive(Debug, Clone)]
pub struct EigTable {
    pub spec: SchemeSpec,
    pub ordering: TableOrdering,
    /// Number of classes n; matrices are (n+1) x (n+1).
    pub classes: i64,
    pub x_size: BigInt,
    pub valencies: Vec<BigInt>,
    pub multiplicities: Vec<BigInt>,
    /// pmat[i][k] = P_i(k).
    pub pmat: Vec<Vec<Rat>>,
    /// qmat[k][i] = Q_k(i).
    pub qmat: Vec<Vec<Rat>>,
}

impl EigTable {
    pub fn p(&self, i: i64, k: i64) -> &Rat {
        &self.pmat[i as usize][k as usize]
    }

    pub fn q(&self, k: i64, i: i64) -> &Rat {
        &self.qmat[k as usize][i as usize]
    }

    pub fn x_rat(&self) -> Rat {
        rbig(self.x_size.clone())
    }

    /// Re-checks every defining identity of the table: first row and column,
    /// row sums, duality, orthogonality, and the sum conditions on valencies
    /// and multiplicities. Cheap relative to construction; used as the
    /// corruption detector.
    pub fn verify_invariants(&self) -> Result<(), SchemeError> {
        let n = self.classes as usize;
        let fail = |msg: String| Err(SchemeError::InvariantViolation(msg));
        if self.pmat.len() != n + 1 || self.qmat.len() != n + 1 {
            return fail("table dimensions".into());
        }
        let x = self.x_rat();
        let mut vsum = BigInt::zero();
        let mut musum = BigInt::zero();
        for i in 0..=n {
            if self.pmat[i].len() != n + 1 || self.qmat[i].len() != n + 1 {
                return fail("table dimensions".into());
            }
            if self.valencies[i] <= BigInt::zero() || self.multiplicities[i] <= BigInt::zero() {
                return fail(format!("nonpositive valency or multiplicity at {i}"));
            }
            vsum += &self.valencies[i];
            musum += &self.multiplicities[i];
            if !self.pmat[0][i].is_one() || !self.qmat[0][i].is_one() {
                return fail(format!("row 0 entry at {i} is not 1"));
            }
            if self.pmat[i][0] != rbig(self.valencies[i].clone()) {
                return fail(format!("P_{i}(0) differs from valency"));
            }
            if self.qmat[i][0] != rbig(self.multiplicities[i].clone()) {
                return fail(format!("Q_{i}(0) differs from multiplicity"));
            }
        }
        if vsum != self.x_size || musum != self.x_size {
            return fail("valencies or multiplicities do not sum to |X|".into());
        }
        for k in 0..=n {
            // sum_i P_i(k) = |X| delta_{k0}: the all-ones matrix has a single
            // nonzero eigenvalue |X| on the trivial eigenspace
            let mut rowsum = Rat::zero();
            for i in 0..=n {
                rowsum += &self.pmat[i][k];
                // duality mu_k P_i(k) = v_i Q_k(i)
                let lhs = rbig(self.multiplicities[k].clone()) * &self.pmat[i][k];
                let rhs = rbig(self.valencies[i].clone()) * &self.qmat[k][i];
                if lhs != rhs {
                    return fail(format!("duality fails at i={i}, k={k}"));
                }
            }
            let expect = if k == 0 { x.clone() } else { Rat::zero() };
            if rowsum != expect {
                return fail(format!("column sum over P at k={k}"));
            }
        }
        for i in 0..=n {
            for j in 0..=n {
                let mut s = Rat::zero();
                for k in 0..=n {
                    s += &self.pmat[i][k] * &self.qmat[k][j];
                }
                let expect = if i == j { x.clone() } else { Rat::zero() };
                if s != expect {
                    return fail(format!("orthogonality fails at i={i}, j={j}"));
                }
            }
        }
        Ok(())
    }
}

/// Assembles multiplicities and the dual table from (x, v, P) and verifies
/// every table invariant.
fn finish_table(
    spec: SchemeSpec,
    ordering: TableOrdering,
    x_size: BigInt,
    valencies: Vec<BigInt>,
    pmat: Vec<Vec<Rat>>,
) -> Result<EigTable, SchemeError> {
    let n = spec.classes() as usize;
    let x = rbig(x_size.clone());
    let mut multiplicities = Vec::with_capacity(n + 1);
    for k in 0..=n {
        // mu_k = |X| / sum_i P_i(k)^2 / v_i
        let mut denom = Rat::zero();
        for i in 0..=n {
            denom += &pmat[i][k] * &pmat[i][k] / rbig(valencies[i].clone());
        }
        let mu = &x / denom;
        let mu = to_bigint(&mu).ok_or_else(|| {
            SchemeError::InvariantViolation(format!("multiplicity at k={k} is not integral"))
        })?;
        if mu <= BigInt::zero() {
            return Err(SchemeError::InvariantViolation(format!(
                "multiplicity at k={k} is not positive"
            )));
        }
        multiplicities.push(mu);
    }
    let mut qmat = vec![vec![Rat::zero(); n + 1]; n + 1];
    for k in 0..=n {
        for i in 0..=n {
            qmat[k][i] =
                rbig(multiplicities[k].clone()) * &pmat[i][k] / rbig(valencies[i].clone());
        }
    }
    let table = EigTable {
        spec,
        ordering,
        classes: n as i64,
        x_size,
        valencies,
        multiplicities,
        pmat,
        qmat,
    };
    table.verify_invariants()?;
    Ok(table)
}

/// Builds the eigenvalue table in the natural ordering.
pub fn eig_table(spec: &SchemeSpec) -> Result<EigTable, SchemeError> {
    let nc = spec.classes();
    if nc > MAX_RANK {
        return Err(SchemeError::BadParameters(format!(
            "rank {nc} exceeds table limit {MAX_RANK}"
        )));
    }
    match spec.kind {
        PolarKind::FusedBC => fused_table(spec),
        _ => {
            let n = nc as usize;
            let mut valencies = Vec::with_capacity(n + 1);
            let mut pmat = vec![vec![Rat::zero(); n + 1]; n + 1];
            for i in 0..=nc {
                valencies.push(valency(spec, i)?);
                for k in 0..=nc {
                    pmat[i as usize][k as usize] = p_number(spec, i, k)?;
                }
            }
            finish_table(
                spec.clone(),
                TableOrdering::Standard,
                scheme_size(spec),
                valencies,
                pmat,
            )
        }
    }
}

/// Builds the fused table of B_n (or C_n) by merging relation pairs and
/// grouping the eigenspaces whose merged columns coincide.
fn fused_table(spec: &SchemeSpec) -> Result<EigTable, SchemeError> {
    let n = spec.n;
    let base = SchemeSpec::new(PolarKind::Parabolic, n, spec.q).unwrap();
    let bt = eig_table(&base)?;
    let nc = spec.classes();

    // merged column vectors c_k[j] = sum_{i in block j} P_i(k)
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for k in 0..=n {
        let mut col = Vec::with_capacity(nc as usize + 1);
        for j in 0..=nc {
            let mut s = Rat::zero();
            for r in fused_rows(j, n) {
                s += &bt.pmat[r as usize][k as usize];
            }
            col.push(s);
        }
        cols.push(col);
    }

    // group equal columns into eigenspace blocks, ordered by first member
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for k in 0..=n as usize {
        match blocks.iter_mut().find(|b| cols[b[0]] == cols[k]) {
            Some(b) => b.push(k),
            None => blocks.push(vec![k]),
        }
    }
    if blocks.len() != nc as usize + 1 {
        return Err(SchemeError::InvariantViolation(format!(
            "fused table has {} eigenspace blocks, expected {}",
            blocks.len(),
            nc + 1
        )));
    }
    if blocks[0] != vec![0] {
        return Err(SchemeError::InvariantViolation(
            "fused trivial eigenspace is not the block {0}".into(),
        ));
    }

    let mut valencies = Vec::with_capacity(nc as usize + 1);
    for j in 0..=nc {
        valencies.push(valency(spec, j)?);
    }
    let mut pmat = vec![vec![Rat::zero(); nc as usize + 1]; nc as usize + 1];
    for (kk, block) in blocks.iter().enumerate() {
        for j in 0..=nc as usize {
            pmat[j][kk] = cols[block[0]][j].clone();
        }
    }
    let table = finish_table(
        spec.clone(),
        TableOrdering::Standard,
        scheme_size(spec),
        valencies,
        pmat,
    )?;
    // the orthogonality-derived multiplicities must equal the block sums
    for (kk, block) in blocks.iter().enumerate() {
        let s: BigInt = block
            .iter()
            .map(|&k| bt.multiplicities[k].clone())
            .sum();
        if s != table.multiplicities[kk] {
            return Err(SchemeError::InvariantViolation(format!(
                "fused multiplicity block {kk} does not sum correctly"
            )));
        }
    }
    Ok(table)
}

/// Builds the table in a chosen ordering. The alternate ordering is defined
/// for the hermitian odd family and interleaves the natural eigenspaces as
///
/// ```text
/// sigma(2k) = k,  sigma(2k+1) = n - k,
/// ```
///
/// so P'_i(2k) = P_i(k) and P'_i(2k+1) = P_i(n-k).
pub fn eig_table_ordered(
    spec: &SchemeSpec,
    ordering: TableOrdering,
) -> Result<EigTable, SchemeError> {
    match ordering {
        TableOrdering::Standard => eig_table(spec),
        TableOrdering::Alternate => {
            if spec.kind != PolarKind::HermitianOdd {
                return Err(SchemeError::WrongFamily {
                    op: "alternate ordering",
                    kind: spec.kind,
                });
            }
            let t = eig_table(spec)?;
            let n = spec.n;
            let mut sigma = Vec::with_capacity(n as usize + 1);
            for j in 0..=n {
                sigma.push(if j % 2 == 0 { j / 2 } else { n - (j - 1) / 2 });
            }
            let nu = n as usize;
            let mut pmat = vec![vec![Rat::zero(); nu + 1]; nu + 1];
            let mut qmat = vec![vec![Rat::zero(); nu + 1]; nu + 1];
            let mut mult = Vec::with_capacity(nu + 1);
            for j in 0..=nu {
                let s = sigma[j] as usize;
                mult.push(t.multiplicities[s].clone());
                for i in 0..=nu {
                    pmat[i][j] = t.pmat[i][s].clone();
                    qmat[j][i] = t.qmat[s][i].clone();
                }
            }
            let table = EigTable {
                spec: spec.clone(),
                ordering: TableOrdering::Alternate,
                classes: t.classes,
                x_size: t.x_size,
                valencies: t.valencies,
                multiplicities: mult,
                pmat,
                qmat,
            };
            table.verify_invariants()?;
            Ok(table)
        }
    }
}

/// Coefficient of Q_k(i) in the q-binomial moment identity for base
/// families:
///
/// ```text
/// w_k(j) = p^{k(n-j)} [n-k, n-j]_p prod_{l=1..n-j} (1 + p^{l-k+e})
/// ```
pub fn qnum_identity_coefficient(spec: &SchemeSpec, k: i64, j: i64) -> Rat {
    assert!(spec.is_base());
    let n = spec.n;
    let p = spec.p_rat();
    let mut w = rpow(&p, k * (n - j)) * qbinomial(n - k, n - j, &p);
    for l in 1..=(n - j) {
        w *= Rat::one() + spec.p_pow_half(2 * (l - k) + spec.two_e);
    }
    w
}

/// Checks, on a base-family table in the natural ordering, the moment
/// identity
///
/// ```text
/// sum_{k=0..n} w_k(j) Q_k(i) = |X| [n-i, j]_p
/// ```
///
/// with w_k(j) as in `qnum_identity_coefficient`.
pub fn qnum_binomial_identity_check(table: &EigTable, i: i64, j: i64) -> bool {
    let spec = &table.spec;
    assert!(spec.is_base() && table.ordering == TableOrdering::Standard);
    let n = spec.n;
    let mut lhs = Rat::zero();
    for k in 0..=n {
        lhs += qnum_identity_coefficient(spec, k, j) * table.q(k, i);
    }
    lhs == table.x_rat() * qbinomial(n - i, j, &spec.p_rat())
}

/// Coefficient of Q'_k(i) in the Hahn-side moment identity:
///
/// ```text
/// w_k(j) = b^{k(n-j)} [n-k, n-j]_b (qcb^{n-k}; b)_{n-j} / (q; b)_{n-j}
/// ```
pub fn hahn_identity_coefficient(spec: &SchemeSpec, k: i64, j: i64) -> Rat {
    let (b, c) = spec.hahn_bc().expect("hahn family");
    let n = spec.classes();
    let q = spec.q_rat();
    let num = qpochhammer(&(&q * &c * rpow(&b, n - k)), &b, (n - j) as u32);
    let den = qpochhammer(&q, &b, (n - j) as u32);
    rpow(&b, k * (n - j)) * qbinomial(n - k, n - j, &b) * num / den
}

/// Checks, on a Hahn-ordered table, the moment identity
///
/// ```text
/// sum_{k=0..n} w_k(j) Q'_k(i) = |X| [n-i, j]_b
/// ```
///
/// with w_k(j) as in `hahn_identity_coefficient`.
pub fn hahn_binomial_identity_check(table: &EigTable, i: i64, j: i64) -> bool {
    let spec = &table.spec;
    let (b, _) = spec.hahn_bc().expect("hahn family");
    let n = spec.classes();
    let mut lhs = Rat::zero();
    for k in 0..=n {
        lhs += hahn_identity_coefficient(spec, k, j) * table.q(k, i);
    }
    lhs == table.x_rat() * qbinomial(n - i, j, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_schemes_are_complete_graphs() {
        // rank 1: X is the set of isotropic points of a rank-1 form, the
        // scheme is the complete graph K_{1+p^{1+e}} with P = [[1,1],[v,-1]]
        for kind in PolarKind::BASE {
            let spec = SchemeSpec::new(kind, 1, 2).unwrap();
            let t = eig_table(&spec).unwrap();
            assert_eq!(t.pmat[1][1], rint(-1), "{spec}");
            assert_eq!(
                rbig(t.valencies[1].clone()) + Rat::one(),
                t.x_rat(),
                "{spec}"
            );
        }
    }

    #[test]
    fn symplectic_rank_two_sizes() {
        let spec = SchemeSpec::new(PolarKind::Symplectic, 2, 2).unwrap();
        assert_eq!(scheme_size(&spec), BigInt::from(15));
        assert_eq!(valency(&spec, 1).unwrap(), BigInt::from(6));
        assert_eq!(valency(&spec, 2).unwrap(), BigInt::from(8));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(SchemeSpec::new(PolarKind::Symplectic, 2, 6).is_err());
        assert!(SchemeSpec::new(PolarKind::Symplectic, 0, 2).is_err());
        let spec = SchemeSpec::new(PolarKind::Symplectic, 2, 2).unwrap();
        assert!(matches!(
            p_number(&spec, 3, 0),
            Err(SchemeError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            eig_table_ordered(&spec, TableOrdering::Alternate),
            Err(SchemeError::WrongFamily { .. })
        ));
    }
}
