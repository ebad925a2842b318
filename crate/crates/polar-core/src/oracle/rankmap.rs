//! Matrix classes embedded in polar spaces by their graphs.
//!
//! An n x n matrix A over the field maps to the n-space
//!
//! ```text
//! v(A) = { (x, xA) : x in F^n }
//! ```
//!
//! inside F^{2n}. For a symmetric A the graph is totally isotropic for the
//! split alternating form (x, u), (y, w) -> x.w - y.u; for an alternating
//! A it is singular for the quadratic form (x, u) -> x.u; for a hermitian
//! A it is isotropic for lambda (x.conj(w) - u.conj(y)) with lambda a
//! nonzero element satisfying conj(lambda) = -lambda. In all three cases
//!
//! ```text
//! n - dim(v(A) /\ v(B)) = rank(A - B),
//! ```
//!
//! so the matrix class with the rank distance embeds isometrically into
//! the generator graph of the polar space. The checks here replay all of
//! this from the definitions, exhaustively over the whole class when it is
//! small and by seeded sampling otherwise.

use super::gf::Gf;
use super::{rref, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    /// Symmetric matrices over GF(q).
    Symmetric,
    /// Alternating matrices (zero diagonal, skew) over GF(q).
    Alternating,
    /// Hermitian matrices over GF(q^2), conjugate-transpose fixed.
    Hermitian,
}

impl std::fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MatrixClass::Symmetric => "symmetric",
            MatrixClass::Alternating => "alternating",
            MatrixClass::Hermitian => "hermitian",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct RankMapReport {
    pub class: MatrixClass,
    pub n: usize,
    pub q: u64,
    pub matrices: usize,
    pub pairs_checked: u64,
}

const MAX_EXHAUSTIVE_MATRICES: usize = 1000;

/// All matrices of the class, as flattened row-major n x n arrays.
fn enumerate_class(class: MatrixClass, n: usize, gf: &Gf) -> Vec<Vec<u8>> {
    // free positions: diagonal (symmetric, hermitian-diagonal) and the
    // upper triangle; the lower triangle is forced
    let mut free: Vec<(usize, usize)> = Vec::new();
    if class != MatrixClass::Alternating {
        for i in 0..n {
            free.push((i, i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            free.push((i, j));
        }
    }
    let choices: Vec<Vec<u8>> = free
        .iter()
        .map(|&(i, j)| match class {
            MatrixClass::Hermitian if i == j => {
                gf.elements().filter(|&e| gf.conj(e) == e).collect()
            }
            _ => gf.elements().collect(),
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut m = vec![0u8; n * n];
        for (slot, &(i, j)) in free.iter().enumerate() {
            let e = choices[slot][idx[slot]];
            m[i * n + j] = e;
            if i != j {
                m[j * n + i] = match class {
                    MatrixClass::Symmetric => e,
                    MatrixClass::Alternating => gf.neg(e),
                    MatrixClass::Hermitian => gf.conj(e),
                };
            }
        }
        out.push(m);
        let mut pos = free.len();
        for s in (0..free.len()).rev() {
            if idx[s] + 1 < choices[s].len() {
                idx[s] += 1;
                pos = s;
                break;
            }
            idx[s] = 0;
        }
        if pos == free.len() {
            break;
        }
    }
    out
}

fn matrix_rank(gf: &Gf, m: &[u8], n: usize) -> usize {
    let mut rows: Vec<Vec<u8>> = m.chunks(n).map(|c| c.to_vec()).collect();
    rref(gf, &mut rows)
}

/// Basis of the graph v(A): rows (e_i, row_i(A)).
fn graph_basis(m: &[u8], n: usize) -> Vec<Vec<u8>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0u8; 2 * n];
            row[i] = 1;
            row[n..].copy_from_slice(&m[i * n..(i + 1) * n]);
            row
        })
        .collect()
}

/// The split pairing that must vanish on the graph of the class.
fn split_pair(class: MatrixClass, gf: &Gf, lambda: u8, u: &[u8], w: &[u8]) -> u8 {
    let n = u.len() / 2;
    let mut acc = 0u8;
    match class {
        MatrixClass::Symmetric => {
            // x.w - y.u on ((x, u), (y, w))
            for i in 0..n {
                acc = gf.add(acc, gf.mul(u[i], w[n + i]));
                acc = gf.sub(acc, gf.mul(w[i], u[n + i]));
            }
        }
        MatrixClass::Alternating => {
            // polarization of (x, u) -> x.u
            for i in 0..n {
                acc = gf.add(acc, gf.mul(u[i], w[n + i]));
                acc = gf.add(acc, gf.mul(w[i], u[n + i]));
            }
        }
        MatrixClass::Hermitian => {
            for i in 0..n {
                acc = gf.add(acc, gf.mul(u[i], gf.conj(w[n + i])));
                acc = gf.sub(acc, gf.mul(u[n + i], gf.conj(w[i])));
            }
            acc = gf.mul(lambda, acc);
        }
    }
    acc
}

/// Quadratic value x.u at (x, u); alternating class only.
fn split_quad(gf: &Gf, v: &[u8]) -> u8 {
    let n = v.len() / 2;
    let mut acc = 0u8;
    for i in 0..n {
        acc = gf.add(acc, gf.mul(v[i], v[n + i]));
    }
    acc
}

fn field_for(class: MatrixClass, q: u64) -> Result<Gf, OracleError> {
    match class {
        MatrixClass::Hermitian => Gf::new(q * q),
        _ => Gf::new(q),
    }
}

fn lambda_for(class: MatrixClass, gf: &Gf) -> Result<u8, OracleError> {
    if class != MatrixClass::Hermitian {
        return Ok(1);
    }
    gf.elements()
        .filter(|&e| e != 0)
        .find(|&e| gf.conj(e) == gf.neg(e))
        .ok_or_else(|| OracleError::Inconsistent("no antisymmetric scalar found".into()))
}

fn check_pair(gf: &Gf, n: usize, a: &[u8], b: &[u8]) -> Result<(), OracleError> {
    let diff: Vec<u8> = a.iter().zip(b).map(|(&x, &y)| gf.sub(x, y)).collect();
    let rank = matrix_rank(gf, &diff, n);
    let ga = graph_basis(a, n);
    let gb = graph_basis(b, n);
    let mut stacked: Vec<Vec<u8>> = ga.iter().chain(gb.iter()).cloned().collect();
    let stacked_rank = rref(gf, &mut stacked);
    if stacked_rank - n != rank {
        return Err(OracleError::Inconsistent(format!(
            "graph intersection disagrees with matrix rank {rank}"
        )));
    }
    Ok(())
}

fn check_graph_isotropic(
    class: MatrixClass,
    gf: &Gf,
    lambda: u8,
    n: usize,
    a: &[u8],
) -> Result<(), OracleError> {
    let ga = graph_basis(a, n);
    for (i, u) in ga.iter().enumerate() {
        if class == MatrixClass::Alternating && split_quad(gf, u) != 0 {
            return Err(OracleError::Inconsistent(
                "graph basis vector is not singular".into(),
            ));
        }
        for w in ga.iter().skip(i) {
            if split_pair(class, gf, lambda, u, w) != 0 {
                return Err(OracleError::Inconsistent(
                    "graph is not totally isotropic".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Exhaustive check of the whole class: every graph is totally isotropic
/// and every matrix pair satisfies the rank identity.
pub fn rank_map_check(class: MatrixClass, n: usize, q: u64) -> Result<RankMapReport, OracleError> {
    let gf = field_for(class, q)?;
    let lambda = lambda_for(class, &gf)?;
    let mats = enumerate_class(class, n, &gf);
    if mats.len() > MAX_EXHAUSTIVE_MATRICES {
        return Err(OracleError::TooLarge {
            what: "matrix class for exhaustive checking",
            size: mats.len(),
            cap: MAX_EXHAUSTIVE_MATRICES,
        });
    }
    let mut pairs = 0u64;
    for a in &mats {
        check_graph_isotropic(class, &gf, lambda, n, a)?;
    }
    for (i, a) in mats.iter().enumerate() {
        for b in mats.iter().skip(i) {
            check_pair(&gf, n, a, b)?;
            pairs += 1;
        }
    }
    Ok(RankMapReport {
        class,
        n,
        q,
        matrices: mats.len(),
        pairs_checked: pairs,
    })
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

fn random_matrix(class: MatrixClass, n: usize, gf: &Gf, state: &mut u64) -> Vec<u8> {
    let fixed: Vec<u8> = gf.elements().filter(|&e| gf.conj(e) == e).collect();
    let mut m = vec![0u8; n * n];
    for i in 0..n {
        if class != MatrixClass::Alternating {
            m[i * n + i] = match class {
                MatrixClass::Hermitian => fixed[(xorshift(state) % fixed.len() as u64) as usize],
                _ => (xorshift(state) % gf.q as u64) as u8,
            };
        }
        for j in i + 1..n {
            let e = (xorshift(state) % gf.q as u64) as u8;
            m[i * n + j] = e;
            m[j * n + i] = match class {
                MatrixClass::Symmetric => e,
                MatrixClass::Alternating => gf.neg(e),
                MatrixClass::Hermitian => gf.conj(e),
            };
        }
    }
    m
}

/// Seeded sampling variant for classes too large to exhaust.
pub fn rank_map_sample(
    class: MatrixClass,
    n: usize,
    q: u64,
    samples: u64,
    seed: u64,
) -> Result<RankMapReport, OracleError> {
    let gf = field_for(class, q)?;
    let lambda = lambda_for(class, &gf)?;
    let mut state = seed | 1;
    let mut pairs = 0u64;
    for _ in 0..samples {
        let a = random_matrix(class, n, &gf, &mut state);
        let b = random_matrix(class, n, &gf, &mut state);
        check_graph_isotropic(class, &gf, lambda, n, &a)?;
        check_graph_isotropic(class, &gf, lambda, n, &b)?;
        check_pair(&gf, n, &a, &b)?;
        pairs += 1;
    }
    Ok(RankMapReport {
        class,
        n,
        q,
        matrices: 0,
        pairs_checked: pairs,
    })
}
