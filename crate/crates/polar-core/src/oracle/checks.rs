//! Structural verification of enumerated polar spaces.
//!
//! Everything here consumes the raw relation matrix of an enumerated
//! instance and confirms, by direct computation, the structure that the
//! closed-form machinery predicts: association scheme axioms, spectral
//! projections with the right ranks, the number of generators through a
//! next-to-maximal subspace, and the bipartite split of the hyperbolic
//! family.

use super::{OracleConfig, OracleError, PolarSpaceInstance};
use crate::qarith::{to_bigint, Rat};
use crate::schemes::{EigTable, PolarKind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Checks the association scheme axioms on the relation matrix: symmetry,
/// zero diagonal, constant row counts per relation, and intersection
/// numbers independent of the chosen pair. Returns the valencies.
pub fn verify_axioms(
    inst: &PolarSpaceInstance,
    config: &OracleConfig,
) -> Result<Vec<u64>, OracleError> {
    let x = inst.size();
    if x > config.max_axioms {
        return Err(OracleError::TooLarge {
            what: "point set for the axiom check",
            size: x,
            cap: config.max_axioms,
        });
    }
    let n = inst.spec.n as usize;
    let rel = &inst.relation;
    for a in 0..x {
        if rel[a][a] != 0 {
            return Err(OracleError::Inconsistent("nonzero diagonal".into()));
        }
        for b in 0..x {
            if rel[a][b] != rel[b][a] {
                return Err(OracleError::Inconsistent("asymmetric relation".into()));
            }
            if rel[a][b] as usize > n {
                return Err(OracleError::Inconsistent("relation index above rank".into()));
            }
            if a != b && rel[a][b] == 0 {
                return Err(OracleError::Inconsistent(
                    "distinct generators in relation 0".into(),
                ));
            }
        }
    }
    let mut valencies: Option<Vec<u64>> = None;
    for a in 0..x {
        let mut counts = vec![0u64; n + 1];
        for b in 0..x {
            counts[rel[a][b] as usize] += 1;
        }
        match &valencies {
            None => valencies = Some(counts),
            Some(v) => {
                if *v != counts {
                    return Err(OracleError::Inconsistent(
                        "valencies depend on the base point".into(),
                    ));
                }
            }
        }
    }
    // intersection numbers: the count of z with rel(a, z) = i, rel(z, b) = j
    // must depend only on rel(a, b)
    let mut reference: Vec<Option<Vec<u64>>> = vec![None; n + 1];
    for a in 0..x {
        for b in 0..x {
            let mut counts = vec![0u64; (n + 1) * (n + 1)];
            for z in 0..x {
                counts[rel[a][z] as usize * (n + 1) + rel[z][b] as usize] += 1;
            }
            let k = rel[a][b] as usize;
            match &reference[k] {
                None => reference[k] = Some(counts),
                Some(r) => {
                    if *r != counts {
                        return Err(OracleError::Inconsistent(format!(
                            "intersection numbers for relation {k} depend on the pair"
                        )));
                    }
                }
            }
        }
    }
    Ok(valencies.expect("nonempty instance"))
}

fn modmul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Rank over GF(p) of an integer matrix reduced mod p.
fn rank_mod_p(mat: &[Vec<i128>], p: u64) -> usize {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut m: Vec<Vec<u64>> = mat
        .iter()
        .map(|r| r.iter().map(|&e| (e.rem_euclid(p as i128)) as u64).collect())
        .collect();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = modpow(m[row][col], p - 2, p);
        for c in col..cols {
            m[row][c] = modmul(m[row][c], inv, p);
        }
        for i in 0..rows {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for c in col..cols {
                    let sub = modmul(f, m[row][c], p);
                    m[i][c] = (m[i][c] + p - sub) % p;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = modmul(acc, b, p);
        }
        b = modmul(b, b, p);
        e >>= 1;
    }
    acc
}

/// Rank over the rationals by Gaussian elimination.
fn rank_rational(mat: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = mat.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let piv = m[row][col].clone();
        for c in col..cols {
            m[row][c] = &m[row][c] / &piv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..cols {
                    let sub = &f * &m[row][c];
                    m[i][c] -= sub;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Builds the scaled spectral projections from the relation matrix and the
/// second eigenvalues, and verifies they behave as orthogonal idempotents
/// with ranks equal to the multiplicities.
///
/// With D the least common denominator of the Q values, the matrices
///
/// ```text
/// F_k(x, y) = D Q_k(rel(x, y))
/// ```
///
/// must satisfy F_k F_l = delta_kl (D |X|) F_k, and rank(F_k) must equal
/// the multiplicity, since F_k / (D |X|) is then a projection whose rank
/// is its trace. The rank is measured by elimination mod a large prime
/// (always) and over the rationals (when |X| <= 50). Returns the measured
/// ranks in class order.
pub fn verify_idempotents(
    inst: &PolarSpaceInstance,
    table: &EigTable,
    config: &OracleConfig,
) -> Result<Vec<u64>, OracleError> {
    let x = inst.size();
    if x > config.max_idempotents {
        return Err(OracleError::TooLarge {
            what: "point set for the idempotent check",
            size: x,
            cap: config.max_idempotents,
        });
    }
    let n = inst.spec.n;
    if table.classes != n {
        return Err(OracleError::BadParameters(
            "table and instance have different class counts".into(),
        ));
    }
    let mut denom = BigInt::one();
    for k in 0..=n {
        for i in 0..=n {
            denom = denom.lcm(table.q(k, i).denom());
        }
    }
    let scaled: Vec<Vec<i128>> = (0..=n)
        .map(|k| {
            (0..=n)
                .map(|i| {
                    let v = table.q(k, i) * Rat::from(denom.clone());
                    let b = to_bigint(&v).expect("cleared denominator");
                    b.to_i128().filter(|e| e.abs() < 1i128 << 40)
                })
                .collect::<Option<Vec<i128>>>()
        })
        .collect::<Option<Vec<Vec<i128>>>>()
        .ok_or_else(|| {
            OracleError::Inconsistent("scaled eigenvalues exceed the integer check range".into())
        })?;

    let mats: Vec<Vec<Vec<i128>>> = (0..=n as usize)
        .map(|k| {
            (0..x)
                .map(|a| {
                    (0..x)
                        .map(|b| scaled[k][inst.relation[a][b] as usize])
                        .collect()
                })
                .collect()
        })
        .collect();

    let dx = denom.to_i128().unwrap() * x as i128;
    for k in 0..=n as usize {
        for l in k..=n as usize {
            // both factors are symmetric, so the product is a grid of row
            // dot products
            for a in 0..x {
                for b in 0..x {
                    let mut acc: i128 = 0;
                    for z in 0..x {
                        acc += mats[k][a][z] * mats[l][b][z];
                    }
                    let want = if k == l { dx * mats[k][a][b] } else { 0 };
                    if acc != want {
                        return Err(OracleError::Inconsistent(format!(
                            "projection product failed at classes {k}, {l}"
                        )));
                    }
                }
            }
        }
    }

    let p = 1_000_000_007u64;
    let mut ranks = Vec::with_capacity(n as usize + 1);
    for k in 0..=n as usize {
        let rank = rank_mod_p(&mats[k], p) as u64;
        let want = table.multiplicities[k]
            .to_u64()
            .ok_or_else(|| OracleError::Inconsistent("multiplicity overflow".into()))?;
        if rank != want {
            return Err(OracleError::Inconsistent(format!(
                "projection {k} has rank {rank}, multiplicity is {want}"
            )));
        }
        if x <= 50 {
            let rmat: Vec<Vec<Rat>> = (0..x)
                .map(|a| {
                    (0..x)
                        .map(|b| table.q(k as i64, inst.relation[a][b] as i64).clone())
                        .collect()
                })
                .collect();
            if rank_rational(&rmat) as u64 != want {
                return Err(OracleError::Inconsistent(format!(
                    "projection {k} has the wrong rational rank"
                )));
            }
        }
        ranks.push(rank);
    }
    Ok(ranks)
}

/// Whether every row of the flattened matrix `sub` lies in the row space
/// of the flattened matrix `sup` with `sup_rows` rows.
fn contained(
    inst: &PolarSpaceInstance,
    sub: &[u8],
    sup: &[u8],
    sup_rows: usize,
) -> bool {
    let dim = inst.form.dim;
    let mut rows: Vec<Vec<u8>> = sup
        .chunks(dim)
        .chain(sub.chunks(dim))
        .map(|c| c.to_vec())
        .collect();
    super::rref(&inst.gf, &mut rows) == sup_rows
}

/// Counts the generators through each next-to-maximal isotropic subspace,
/// checks the count is constant, and returns it.
pub fn generators_per_next_to_max(inst: &PolarSpaceInstance) -> Result<u64, OracleError> {
    let n = inst.spec.n as usize;
    if n < 2 {
        return Err(OracleError::BadParameters(
            "rank 1 has no next-to-maximal subspaces".into(),
        ));
    }
    let mut common: Option<u64> = None;
    for sub in &inst.levels[n - 2] {
        let count = inst
            .generators()
            .iter()
            .filter(|g| contained(inst, sub, g, n))
            .count() as u64;
        match common {
            None => common = Some(count),
            Some(c) => {
                if c != count {
                    return Err(OracleError::Inconsistent(
                        "generator count through next-to-maximal subspaces varies".into(),
                    ));
                }
            }
        }
    }
    Ok(common.expect("nonempty level"))
}

/// Splits the hyperbolic generators into the two classes with even mutual
/// relation, and checks the split is well defined and balanced.
pub fn bipartite_half(
    inst: &PolarSpaceInstance,
) -> Result<(Vec<usize>, Vec<usize>), OracleError> {
    if inst.spec.kind != PolarKind::Hyperbolic {
        return Err(OracleError::BadParameters(format!(
            "bipartite split concerns the hyperbolic family, not {}",
            inst.spec.kind
        )));
    }
    let x = inst.size();
    let side: Vec<u8> = (0..x).map(|y| inst.relation[0][y] % 2).collect();
    for a in 0..x {
        for b in 0..x {
            if (inst.relation[a][b] % 2 == 0) != (side[a] == side[b]) {
                return Err(OracleError::Inconsistent(
                    "relation parity is not a bipartition".into(),
                ));
            }
        }
    }
    let half0: Vec<usize> = (0..x).filter(|&y| side[y] == 0).collect();
    let half1: Vec<usize> = (0..x).filter(|&y| side[y] == 1).collect();
    if half0.len() != half1.len() {
        return Err(OracleError::Inconsistent("halves are unbalanced".into()));
    }
    Ok((half0, half1))
}

/// Verifies that the given generator subset covers every next-to-maximal
/// isotropic subspace exactly once.
pub fn covers_next_to_max_once(
    inst: &PolarSpaceInstance,
    members: &[usize],
) -> Result<(), OracleError> {
    let n = inst.spec.n as usize;
    if n < 2 {
        return Err(OracleError::BadParameters(
            "rank 1 has no next-to-maximal subspaces".into(),
        ));
    }
    let gens = inst.generators();
    for sub in &inst.levels[n - 2] {
        let count = members
            .iter()
            .filter(|&&g| contained(inst, sub, &gens[g], n))
            .count();
        if count != 1 {
            return Err(OracleError::Inconsistent(format!(
                "a next-to-maximal subspace lies in {count} members"
            )));
        }
    }
    Ok(())
}
