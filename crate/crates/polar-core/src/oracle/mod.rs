//! Brute-force construction of small polar spaces.
//!
//! For a base family and a supported field the oracle builds the actual
//! geometry: it enumerates every totally isotropic subspace of the ambient
//! form level by level, so the generators, the intersection relation and
//! every derived quantity come from the definition alone and share nothing
//! with the closed-form eigenvalue machinery they are used to test.
//!
//! Ambient forms, on row vectors over GF(q) (GF(q^2) for the hermitian
//! families):
//!
//! ```text
//! symplectic   dim 2n      B(x, y) = sum_i (x_i y_{n+i} - x_{n+i} y_i)
//! hyperbolic   dim 2n      Q(x) = sum_i x_i x_{n+i}
//! parabolic    dim 2n+1    Q(x) = x_0^2 + sum_i x_i x_{n+i}
//! elliptic     dim 2n+2    Q(x) = sum_i x_i x_{n+i} + s^2 + a s t + b t^2
//! hermitian    dim 2n, 2n+1    h(x, y) = sum_i x_i conj(y_i)
//! ```
//!
//! with (a, b) the lexicographically first pair making s^2 + a s t + b t^2
//! anisotropic. A subspace is totally isotropic when all basis vectors
//! pair to zero and, for the quadratic kinds, are singular; this forces
//! the same for the whole subspace.
//!
//! Subspaces are stored as row-reduced echelon bases flattened row major,
//! one byte per entry, so equality of subspaces is equality of bytes. The
//! relation index of two generators U, W is n - dim(U /\ W), computed as
//! rank of the stacked bases minus n.

pub mod checks;
pub mod codes;
pub mod gf;
pub mod rankmap;

pub use gf::Gf;

use crate::schemes::{scheme_size, PolarKind, SchemeError, SchemeSpec};
use num_traits::ToPrimitive;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    UnsupportedField(u64),
    BadParameters(String),
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    Inconsistent(String),
    Parse(String),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::UnsupportedField(q) => write!(f, "unsupported field order {q}"),
            OracleError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
            OracleError::TooLarge { what, size, cap } => {
                write!(f, "{what} has size {size}, above the cap {cap}")
            }
            OracleError::Inconsistent(msg) => write!(f, "inconsistency: {msg}"),
            OracleError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for OracleError {}

impl From<SchemeError> for OracleError {
    fn from(e: SchemeError) -> Self {
        OracleError::BadParameters(e.to_string())
    }
}

/// Size caps for the expensive verification passes.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Largest subspace level the enumeration will fill.
    pub max_enumerate: usize,
    /// Largest point count for the intersection-number check (cubic cost).
    pub max_axioms: usize,
    /// Largest point count for the idempotent matrix check.
    pub max_idempotents: usize,
    /// Largest vertex count for exhaustive clique search.
    pub max_clique: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_enumerate: 20000,
            max_axioms: 600,
            max_idempotents: 2000,
            max_clique: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Alternating,
    QuadraticHyperbolic,
    QuadraticParabolic,
    QuadraticElliptic,
    Hermitian,
}

impl FormKind {
    pub fn label(&self) -> &'static str {
        match self {
            FormKind::Alternating => "alternating",
            FormKind::QuadraticHyperbolic => "quadratic-hyperbolic",
            FormKind::QuadraticParabolic => "quadratic-parabolic",
            FormKind::QuadraticElliptic => "quadratic-elliptic",
            FormKind::Hermitian => "hermitian",
        }
    }

    fn is_quadratic(&self) -> bool {
        matches!(
            self,
            FormKind::QuadraticHyperbolic
                | FormKind::QuadraticParabolic
                | FormKind::QuadraticElliptic
        )
    }
}

/// The ambient form of a base polar space.
#[derive(Debug, Clone)]
pub struct FormSpec {
    pub kind: FormKind,
    pub rank: usize,
    pub dim: usize,
    /// (a, b) of the anisotropic tail s^2 + a s t + b t^2, elliptic only.
    pub elliptic_coeffs: Option<(u8, u8)>,
}

impl FormSpec {
    pub fn new(spec: &SchemeSpec, gf: &Gf) -> Result<FormSpec, OracleError> {
        let n = spec.n as usize;
        let (kind, dim) = match spec.kind {
            PolarKind::Symplectic => (FormKind::Alternating, 2 * n),
            PolarKind::Hyperbolic => (FormKind::QuadraticHyperbolic, 2 * n),
            PolarKind::Parabolic => (FormKind::QuadraticParabolic, 2 * n + 1),
            PolarKind::Elliptic => (FormKind::QuadraticElliptic, 2 * n + 2),
            PolarKind::HermitianOdd => (FormKind::Hermitian, 2 * n),
            PolarKind::HermitianEven => (FormKind::Hermitian, 2 * n + 1),
            _ => {
                return Err(OracleError::BadParameters(format!(
                    "no ambient form for {}",
                    spec.kind
                )))
            }
        };
        let elliptic_coeffs = if kind == FormKind::QuadraticElliptic {
            Some(anisotropic_pair(gf)?)
        } else {
            None
        };
        Ok(FormSpec {
            kind,
            rank: n,
            dim,
            elliptic_coeffs,
        })
    }

    /// Value of the quadratic form at v; quadratic kinds only.
    pub fn quad(&self, gf: &Gf, v: &[u8]) -> u8 {
        let n = self.rank;
        let mut acc = 0u8;
        match self.kind {
            FormKind::QuadraticHyperbolic => {
                for i in 0..n {
                    acc = gf.add(acc, gf.mul(v[i], v[n + i]));
                }
            }
            FormKind::QuadraticParabolic => {
                acc = gf.mul(v[0], v[0]);
                for i in 0..n {
                    acc = gf.add(acc, gf.mul(v[1 + i], v[1 + n + i]));
                }
            }
            FormKind::QuadraticElliptic => {
                for i in 0..n {
                    acc = gf.add(acc, gf.mul(v[i], v[n + i]));
                }
                let (a, b) = self.elliptic_coeffs.unwrap();
                let (s, t) = (v[2 * n], v[2 * n + 1]);
                acc = gf.add(acc, gf.mul(s, s));
                acc = gf.add(acc, gf.mul(a, gf.mul(s, t)));
                acc = gf.add(acc, gf.mul(b, gf.mul(t, t)));
            }
            _ => panic!("quad on a non-quadratic form"),
        }
        acc
    }

    /// The pairing that must vanish on pairs of basis vectors: the form
    /// itself for the alternating and hermitian kinds, the polarization
    /// Q(u + w) - Q(u) - Q(w) for the quadratic ones.
    pub fn pair(&self, gf: &Gf, u: &[u8], w: &[u8]) -> u8 {
        let n = self.rank;
        match self.kind {
            FormKind::Alternating => {
                let mut acc = 0u8;
                for i in 0..n {
                    acc = gf.add(acc, gf.mul(u[i], w[n + i]));
                    acc = gf.sub(acc, gf.mul(u[n + i], w[i]));
                }
                acc
            }
            FormKind::Hermitian => {
                let mut acc = 0u8;
                for i in 0..self.dim {
                    acc = gf.add(acc, gf.mul(u[i], gf.conj(w[i])));
                }
                acc
            }
            _ => {
                let sum: Vec<u8> = u.iter().zip(w).map(|(&a, &b)| gf.add(a, b)).collect();
                let mut acc = self.quad(gf, &sum);
                acc = gf.sub(acc, self.quad(gf, u));
                gf.sub(acc, self.quad(gf, w))
            }
        }
    }

    /// Whether the projective point v lies on the polar space.
    pub fn isotropic_point(&self, gf: &Gf, v: &[u8]) -> bool {
        if self.kind.is_quadratic() {
            self.quad(gf, v) == 0
        } else {
            self.pair(gf, v, v) == 0
        }
    }
}

/// Lexicographically first (a, b) with s^2 + a s t + b t^2 having no
/// nonzero root over gf.
fn anisotropic_pair(gf: &Gf) -> Result<(u8, u8), OracleError> {
    for a in gf.elements() {
        for b in gf.elements() {
            let mut aniso = true;
            'outer: for s in gf.elements() {
                for t in gf.elements() {
                    if s == 0 && t == 0 {
                        continue;
                    }
                    let v = gf.add(
                        gf.add(gf.mul(s, s), gf.mul(a, gf.mul(s, t))),
                        gf.mul(b, gf.mul(t, t)),
                    );
                    if v == 0 {
                        aniso = false;
                        break 'outer;
                    }
                }
            }
            if aniso {
                return Ok((a, b));
            }
        }
    }
    Err(OracleError::Inconsistent(
        "no anisotropic binary quadratic form found".into(),
    ))
}

/// Row reduction to reduced echelon form in place; returns the rank.
/// Zero rows are removed.
pub fn rref(gf: &Gf, rows: &mut Vec<Vec<u8>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut lead = 0usize;
    let mut r = 0usize;
    while r < rows.len() && lead < ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][lead] != 0) else {
            lead += 1;
            continue;
        };
        rows.swap(r, pr);
        let piv = rows[r][lead];
        if piv != 1 {
            let s = gf.inv(piv);
            for x in rows[r].iter_mut() {
                *x = gf.mul(*x, s);
            }
        }
        for i in 0..rows.len() {
            if i != r && rows[i][lead] != 0 {
                let f = rows[i][lead];
                for c in 0..ncols {
                    let sub = gf.mul(f, rows[r][c]);
                    rows[i][c] = gf.sub(rows[i][c], sub);
                }
            }
        }
        r += 1;
        lead += 1;
    }
    rows.truncate(r);
    r
}

/// Rank of the rows of two stacked flattened matrices.
fn stacked_rank(gf: &Gf, a: &[u8], b: &[u8], dim: usize) -> usize {
    let mut rows: Vec<Vec<u8>> = a.chunks(dim).chain(b.chunks(dim)).map(|c| c.to_vec()).collect();
    rref(gf, &mut rows)
}

/// A fully enumerated small polar space.
#[derive(Debug, Clone)]
pub struct PolarSpaceInstance {
    pub spec: SchemeSpec,
    pub gf: Gf,
    pub form: FormSpec,
    /// levels[k] lists the isotropic (k + 1)-spaces as flattened RREF
    /// bases of shape (k + 1) x dim, sorted.
    pub levels: Vec<Vec<Vec<u8>>>,
    /// relation[x][y] = n - dim(generator x /\ generator y).
    pub relation: Vec<Vec<u8>>,
}

impl PolarSpaceInstance {
    pub fn generators(&self) -> &[Vec<u8>] {
        self.levels.last().expect("rank is at least 1")
    }

    pub fn size(&self) -> usize {
        self.generators().len()
    }

    /// Number of isotropic t-spaces, 1 <= t <= n.
    pub fn count_isotropic(&self, t: i64) -> Option<usize> {
        if t < 1 || t as usize > self.levels.len() {
            None
        } else {
            Some(self.levels[t as usize - 1].len())
        }
    }
}

pub fn enumerate(spec: &SchemeSpec) -> Result<PolarSpaceInstance, OracleError> {
    enumerate_with(spec, &OracleConfig::default())
}

/// Builds the full geometry of `spec` by brute force.
pub fn enumerate_with(
    spec: &SchemeSpec,
    config: &OracleConfig,
) -> Result<PolarSpaceInstance, OracleError> {
    if !spec.is_base() {
        return Err(OracleError::BadParameters(format!(
            "enumeration covers base families, not {}",
            spec.kind
        )));
    }
    let field_order = if spec.is_hermitian() {
        spec.q * spec.q
    } else {
        spec.q
    };
    let gf = Gf::new(field_order)?;
    let form = FormSpec::new(spec, &gf)?;
    let n = spec.n as usize;
    let dim = form.dim;

    // canonical projective points: first nonzero coordinate is 1
    let mut points: Vec<Vec<u8>> = Vec::new();
    let mut v = vec![0u8; dim];
    loop {
        // advance the odometer
        let mut pos = dim;
        for i in (0..dim).rev() {
            if (v[i] as usize) + 1 < gf.q {
                v[i] += 1;
                pos = i;
                break;
            }
            v[i] = 0;
        }
        if pos == dim {
            break;
        }
        let first = v.iter().position(|&x| x != 0).unwrap();
        if v[first] != 1 {
            continue;
        }
        if form.isotropic_point(&gf, &v) {
            points.push(v.clone());
        }
    }
    points.sort();
    if points.len() > config.max_enumerate {
        return Err(OracleError::TooLarge {
            what: "isotropic point level",
            size: points.len(),
            cap: config.max_enumerate,
        });
    }

    let mut levels: Vec<Vec<Vec<u8>>> = vec![points.iter().map(|p| p.clone()).collect()];
    for k in 2..=n {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let prev = &levels[k - 2];
        for s in prev {
            let rows: Vec<&[u8]> = s.chunks(dim).collect();
            'point: for p in &points {
                for row in &rows {
                    if form.pair(&gf, row, p) != 0 {
                        continue 'point;
                    }
                }
                let mut stacked: Vec<Vec<u8>> =
                    rows.iter().map(|r| r.to_vec()).collect();
                stacked.push(p.clone());
                if rref(&gf, &mut stacked) != k {
                    continue;
                }
                let flat: Vec<u8> = stacked.concat();
                seen.insert(flat);
            }
        }
        let mut next: Vec<Vec<u8>> = seen.into_iter().collect();
        next.sort();
        if next.len() > config.max_enumerate {
            return Err(OracleError::TooLarge {
                what: "isotropic subspace level",
                size: next.len(),
                cap: config.max_enumerate,
            });
        }
        if next.is_empty() {
            return Err(OracleError::Inconsistent(format!(
                "no isotropic {k}-spaces found"
            )));
        }
        levels.push(next);
    }

    let expected = scheme_size(spec);
    let got = levels.last().unwrap().len();
    if expected.to_usize() != Some(got) {
        return Err(OracleError::Inconsistent(format!(
            "enumerated {got} generators, closed form gives {expected}"
        )));
    }

    let gens = levels.last().unwrap();
    let mut relation = vec![vec![0u8; got]; got];
    for x in 0..got {
        for y in x + 1..got {
            let rel = stacked_rank(&gf, &gens[x], &gens[y], dim) - n;
            relation[x][y] = rel as u8;
            relation[y][x] = rel as u8;
        }
    }

    Ok(PolarSpaceInstance {
        spec: spec.clone(),
        gf,
        form,
        levels,
        relation,
    })
}

const EXPORT_HEADER: &str = "# polar space generators";

/// Serializes the generator list: a small header, then one generator per
/// line with the RREF basis rows concatenated as hex digits.
pub fn export_text(instance: &PolarSpaceInstance) -> String {
    let mut out = String::new();
    out.push_str(EXPORT_HEADER);
    out.push('\n');
    out.push_str(&format!("# family: {}\n", instance.spec.kind.label()));
    out.push_str(&format!("# rank: {}\n", instance.spec.n));
    out.push_str(&format!("# field: {}\n", instance.spec.q));
    out.push_str(&format!("# form: {}\n", instance.form.kind.label()));
    out.push_str(&format!("# generators: {}\n", instance.size()));
    for g in instance.generators() {
        for &e in g {
            out.push(char::from_digit(e as u32, 16).unwrap());
        }
        out.push('\n');
    }
    out
}

/// Parses and re-validates an export: header shape, digit range, RREF
/// canonical form, total isotropy, distinctness and the generator count.
pub fn import_text(text: &str) -> Result<(SchemeSpec, Vec<Vec<u8>>), OracleError> {
    let mut family = None;
    let mut rank = None;
    let mut field = None;
    let mut declared = None;
    let mut body: Vec<&str> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("family:") {
                family = PolarKind::parse(v.trim());
            } else if let Some(v) = rest.strip_prefix("rank:") {
                rank = v.trim().parse::<i64>().ok();
            } else if let Some(v) = rest.strip_prefix("field:") {
                field = v.trim().parse::<u64>().ok();
            } else if let Some(v) = rest.strip_prefix("generators:") {
                declared = v.trim().parse::<usize>().ok();
            }
            continue;
        }
        body.push(line);
    }
    let (Some(kind), Some(n), Some(q), Some(declared)) = (family, rank, field, declared) else {
        return Err(OracleError::Parse("missing or malformed header".into()));
    };
    let spec = SchemeSpec::new(kind, n, q)?;
    let field_order = if spec.is_hermitian() { q * q } else { q };
    let gf = Gf::new(field_order)?;
    let form = FormSpec::new(&spec, &gf)?;
    let dim = form.dim;
    let rows = n as usize;
    let mut gens: Vec<Vec<u8>> = Vec::with_capacity(body.len());
    for line in body {
        if line.len() != rows * dim {
            return Err(OracleError::Parse(format!(
                "generator line has {} digits, expected {}",
                line.len(),
                rows * dim
            )));
        }
        let mut g = Vec::with_capacity(rows * dim);
        for c in line.chars() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| OracleError::Parse(format!("bad digit {c:?}")))?;
            if d as usize >= gf.q {
                return Err(OracleError::Parse(format!(
                    "digit {d} outside the field of order {}",
                    gf.q
                )));
            }
            g.push(d as u8);
        }
        let mut mat: Vec<Vec<u8>> = g.chunks(dim).map(|c| c.to_vec()).collect();
        let before = mat.clone();
        if rref(&gf, &mut mat) != rows || mat != before {
            return Err(OracleError::Parse(
                "generator basis is not in reduced echelon form".into(),
            ));
        }
        for (i, u) in before.iter().enumerate() {
            if form.kind.is_quadratic() && form.quad(&gf, u) != 0 {
                return Err(OracleError::Parse("basis vector is not singular".into()));
            }
            for w in before.iter().skip(i) {
                if form.pair(&gf, u, w) != 0 {
                    return Err(OracleError::Parse("basis is not totally isotropic".into()));
                }
            }
        }
        gens.push(g);
    }
    gens.sort();
    let before_dedup = gens.len();
    gens.dedup();
    if gens.len() != before_dedup {
        return Err(OracleError::Parse("duplicate generators".into()));
    }
    if gens.len() != declared {
        return Err(OracleError::Parse(format!(
            "header declares {declared} generators, body has {}",
            gens.len()
        )));
    }
    if scheme_size(&spec).to_usize() != Some(gens.len()) {
        return Err(OracleError::Parse(format!(
            "{} generators do not form the full space",
            gens.len()
        )));
    }
    Ok((spec, gens))
}
