//! Exact linear-programming bound on d-codes.
//!
//! For a scheme with classes 0..n and second eigenvalue matrix Q, the size
//! of any d-code is at most the optimum of
//!
//! ```text
//! maximize    1 + sum_{i=d..n} a_i
//! subject to  sum_{i=d..n} Q_k(i) a_i  >=  -mu_k     (k = 0..n)
//!             a_i >= 0,
//! ```
//!
//! since the inner distribution (1, 0, .., 0, a_d, .., a_n) of a code has
//! nonnegative dual transform and sums to the code size. The solver is a
//! dense primal simplex over BigRational with Bland's pivot rule, so the
//! optimum, the maximizing distribution and the dual multipliers are exact.
//! The origin is feasible (mu_k > 0) and the k = 0 row bounds the sum by
//! |X| - 1, so the program is bounded and the solver always terminates at
//! an optimum.

use crate::qarith::{sign, Rat};
use crate::schemes::{eig_table, EigTable, SchemeError, SchemeSpec};
use crate::bounds::{code_bound, BoundResult, BoundsError};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Exact optimum with both certificates.
///
/// `primal` is the full maximizing inner distribution (a_0, .., a_n) with
/// a_0 = 1 and a_1 = .. = a_{d-1} = 0; `dual` holds one multiplier per
/// constraint row. `optimum` equals the sum of `primal`.
#[derive(Debug, Clone)]
pub struct LpResult {
    pub status: LpStatus,
    pub optimum: Rat,
    pub primal: Vec<Rat>,
    pub dual: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    BadParameters(String),
}

impl std::fmt::Display for LpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

impl std::error::Error for LpError {}

impl From<SchemeError> for LpError {
    fn from(e: SchemeError) -> Self {
        LpError::BadParameters(e.to_string())
    }
}

/// Maximum LP size of a d-code in the scheme of `table`, 1 <= d <= n + 1.
///
/// d = n + 1 asks for a code with all nondiagonal relations forbidden, so
/// the optimum is 1 with zero dual.
pub fn lp_bound_table(table: &EigTable, d: i64) -> Result<LpResult, LpError> {
    let n = table.classes;
    if d < 1 || d > n + 1 {
        return Err(LpError::BadParameters(format!(
            "d = {d} outside 1..={}",
            n + 1
        )));
    }
    let rows = (n + 1) as usize;
    let nvars = (n + 1 - d) as usize;
    let ncols = nvars + rows + 1; // structural, slacks, right-hand side
    let rhs = ncols - 1;

    // tableau for: maximize sum a, subject to -Q a <= mu (slacks appended)
    let mut t: Vec<Vec<Rat>> = vec![vec![Rat::zero(); ncols]; rows + 1];
    for k in 0..rows {
        for (j, i) in (d..=n).enumerate() {
            t[k][j] = -table.q(k as i64, i);
        }
        t[k][nvars + k] = Rat::one();
        t[k][rhs] = Rat::from(table.multiplicities[k].clone());
    }
    for j in 0..nvars {
        t[rows][j] = -Rat::one();
    }

    let mut basis: Vec<usize> = (nvars..nvars + rows).collect();
    let mut steps = 0usize;
    loop {
        steps += 1;
        assert!(steps < 100_000, "simplex did not terminate");
        // Bland: entering variable is the lowest negative reduced cost
        let Some(enter) = (0..ncols - 1).find(|&j| sign(&t[rows][j]) < 0) else {
            break;
        };
        // ratio test, ties broken by the lowest basis index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows {
            if sign(&t[r][enter]) > 0 {
                let ratio = &t[r][rhs] / &t[r][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(pr) = leave else {
            return Ok(LpResult {
                status: LpStatus::Unbounded,
                optimum: Rat::zero(),
                primal: vec![],
                dual: vec![],
            });
        };
        let piv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &piv;
        }
        for r in 0..=rows {
            if r != pr && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for j in 0..ncols {
                    let delta = &f * &t[pr][j];
                    t[r][j] -= delta;
                }
            }
        }
        basis[pr] = enter;
    }

    let mut primal = vec![Rat::zero(); (n + 1) as usize];
    primal[0] = Rat::one();
    for (r, &b) in basis.iter().enumerate() {
        if b < nvars {
            primal[b + d as usize] = t[r][rhs].clone();
        }
    }
    let dual: Vec<Rat> = (0..rows).map(|k| t[rows][nvars + k].clone()).collect();
    let optimum = Rat::one() + &t[rows][rhs];
    Ok(LpResult {
        status: LpStatus::Optimal,
        optimum,
        primal,
        dual,
    })
}

/// Builds the eigenvalue table for `spec` and solves the d-code program.
pub fn lp_bound(spec: &SchemeSpec, d: i64) -> Result<LpResult, LpError> {
    let table = eig_table(spec)?;
    lp_bound_table(&table, d)
}

/// Replays both certificates of `res` against the table from scratch:
/// primal feasibility (Delsarte nonnegativity of the dual transform of the
/// distribution), dual feasibility, and equality of the two objectives.
pub fn verify_certificate(table: &EigTable, d: i64, res: &LpResult) -> bool {
    let n = table.classes;
    if res.status != LpStatus::Optimal
        || d < 1
        || d > n + 1
        || res.primal.len() != (n + 1) as usize
        || res.dual.len() != (n + 1) as usize
    {
        return false;
    }
    if res.primal[0] != Rat::one() {
        return false;
    }
    for i in 1..=n {
        let a = &res.primal[i as usize];
        if sign(a) < 0 || (i < d && !a.is_zero()) {
            return false;
        }
    }
    if res.primal.iter().sum::<Rat>() != res.optimum {
        return false;
    }
    // dual transform of the distribution is nonnegative
    for k in 0..=n {
        let mut acc = Rat::zero();
        for i in 0..=n {
            acc += table.q(k, i) * &res.primal[i as usize];
        }
        if sign(&acc) < 0 {
            return false;
        }
    }
    // dual feasibility: y >= 0 and the reduced cost of every structural
    // variable is nonnegative
    for y in &res.dual {
        if sign(y) < 0 {
            return false;
        }
    }
    for i in d..=n {
        let mut acc = Rat::zero();
        for k in 0..=n {
            acc += -table.q(k, i) * &res.dual[k as usize];
        }
        if acc < Rat::one() {
            return false;
        }
    }
    // strong duality: mu . y equals the structural objective
    let mut by = Rat::zero();
    for k in 0..=n {
        by += Rat::from(table.multiplicities[k as usize].clone()) * &res.dual[k as usize];
    }
    by == &res.optimum - Rat::one()
}

/// The LP optimum next to a closed-form code bound for the same d.
#[derive(Debug, Clone)]
pub struct LpComparison {
    pub lp_optimum: Rat,
    pub closed_form: BoundResult,
    pub lp_le_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareError {
    Lp(LpError),
    Bounds(BoundsError),
}

impl std::fmt::Display for CompareError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompareError::Lp(e) => write!(f, "{e}"),
            CompareError::Bounds(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CompareError {}

/// Solves the LP and evaluates the closed-form bound, recording whether
/// the optimum is at most the closed form.
pub fn lp_vs_closed_form(spec: &SchemeSpec, d: i64) -> Result<LpComparison, CompareError> {
    let lp = lp_bound(spec, d).map_err(CompareError::Lp)?;
    let cf = code_bound(spec, d).map_err(CompareError::Bounds)?;
    let le = lp.optimum <= cf.value;
    Ok(LpComparison {
        lp_optimum: lp.optimum,
        closed_form: cf,
        lp_le_closed: le,
    })
}
