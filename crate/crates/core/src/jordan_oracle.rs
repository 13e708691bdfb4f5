//! Dense-matrix ground truth.
//!
//! Builds adjacency matrices of small strongly regular graphs, forms the
//! idempotents as polynomials in `A` with floating eigenvalues, and checks
//! the symbolic results against honest matrix arithmetic: frame identities,
//! Kronecker idempotency, entrywise powers as principal submatrices, and
//! Krein values by trace projection.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SrgError};
use crate::krein_engine::{KreinEngine, ProductSpec};
use crate::srg_core::{abs_power_coords, multiplicities, validate_params, SrgParams};

/// Default cap on the order of any Kronecker power.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Size cap, overridable through `SRG_KREIN_SIZE_CAP`.
pub fn size_cap() -> usize {
    std::env::var("SRG_KREIN_SIZE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

/// Square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(order: usize) -> DenseMatrix {
        DenseMatrix { order, entries: vec![0.0; order * order] }
    }

    pub fn identity(order: usize) -> DenseMatrix {
        DenseMatrix::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn ones(order: usize) -> DenseMatrix {
        DenseMatrix { order, entries: vec![1.0; order * order] }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> DenseMatrix {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        DenseMatrix { order, entries }
    }

    pub fn from_row_major(order: usize, entries: Vec<f64>) -> Result<DenseMatrix> {
        if entries.len() != order * order {
            return Err(SrgError::DimensionMismatch(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        Ok(DenseMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.order + j] = value;
    }

    fn same_order(&self, other: &DenseMatrix) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(SrgError::DimensionMismatch(format!("{} vs {}", self.order, other.order)))
        }
    }

    fn zip_with(&self, other: &DenseMatrix, f: impl Fn(f64, f64) -> f64) -> Result<DenseMatrix> {
        self.same_order(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect();
        Ok(DenseMatrix { order: self.order, entries })
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn hadamard(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, k: f64) -> DenseMatrix {
        DenseMatrix { order: self.order, entries: self.entries.iter().map(|x| x * k).collect() }
    }

    /// `k`-th entrywise power, `k >= 1`.
    pub fn hadamard_power(&self, k: u32) -> DenseMatrix {
        DenseMatrix {
            order: self.order,
            entries: self.entries.iter().map(|x| x.powi(k as i32)).collect(),
        }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_order(other)?;
        let n = self.order;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let other_row = &other.entries[k * n..(k + 1) * n];
                for (dst, &b) in row.iter_mut().zip(other_row) {
                    *dst += a * b;
                }
            }
        }
        Ok(DenseMatrix { order: n, entries: out })
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.order)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matrix_power(&self, k: u32) -> DenseMatrix {
        let mut acc = DenseMatrix::identity(self.order);
        for _ in 0..k {
            acc = acc.matmul(self).expect("same order");
        }
        acc
    }

    /// `self ⊗ other`: block `(i, j)` is `self[i][j]·other`.
    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let mut entries = vec![0.0; order * order];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == 0.0 {
                    continue;
                }
                for k in 0..m {
                    let dst = (i * m + k) * order + j * m;
                    let src = &other.entries[k * m..(k + 1) * m];
                    for (d, &b) in entries[dst..dst + m].iter_mut().zip(src) {
                        *d = a * b;
                    }
                }
            }
        }
        DenseMatrix { order, entries }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// `tr(self · other)` for symmetric `other`.
    pub fn trace_product(&self, other: &DenseMatrix) -> Result<f64> {
        self.same_order(other)?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    pub fn principal_submatrix(&self, indices: &[usize]) -> DenseMatrix {
        DenseMatrix::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    /// Eigenvalues of a symmetric matrix, largest first.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_row_slice(self.order, self.order, &self.entries);
        let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }
}

/// Reads `n` on the first line followed by `n²` whitespace-separated 0/1 entries.
pub fn parse_adjacency(text: &str) -> Result<DenseMatrix> {
    let mut tokens = text.split_whitespace();
    let order: usize = tokens
        .next()
        .ok_or_else(|| SrgError::Parse("empty adjacency input".into()))?
        .parse()
        .map_err(|_| SrgError::Parse("first token must be the order n".into()))?;
    let entries = tokens
        .map(|t| match t {
            "0" => Ok(0.0),
            "1" => Ok(1.0),
            other => Err(SrgError::Parse(format!("adjacency entry `{other}` is not 0/1"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let m = DenseMatrix::from_row_major(order, entries)?;
    if !m.is_symmetric(0.0) || (0..order).any(|i| m.get(i, i) != 0.0) {
        return Err(SrgError::Parse("adjacency matrix must be symmetric with zero diagonal".into()));
    }
    Ok(m)
}

fn adjacency_ints(adj: &DenseMatrix) -> Vec<i64> {
    adj.entries().iter().map(|&x| x.round() as i64).collect()
}

/// Reads `(n, p; a, c)` off an adjacency matrix and validates it.
pub fn infer_params(adj: &DenseMatrix) -> Result<SrgParams> {
    let n = adj.order();
    let a = adjacency_ints(adj);
    let degree = |i: usize| a[i * n..(i + 1) * n].iter().sum::<i64>();
    let common = |i: usize, j: usize| (0..n).map(|k| a[i * n + k] * a[j * n + k]).sum::<i64>();
    let p = degree(0);
    if (0..n).any(|i| degree(i) != p) {
        return Err(SrgError::RangeViolation("graph is not regular".into()));
    }
    let mut adjacent = BTreeSet::new();
    let mut non_adjacent = BTreeSet::new();
    for i in 0..n {
        for j in 0..i {
            if a[i * n + j] == 1 {
                adjacent.insert(common(i, j));
            } else {
                non_adjacent.insert(common(i, j));
            }
        }
    }
    let single = |set: &BTreeSet<i64>, what: &str| match set.len() {
        1 => Ok(*set.iter().next().expect("one element")),
        _ => Err(SrgError::RangeViolation(format!("{what} pairs do not share a constant count"))),
    };
    let lambda = single(&adjacent, "adjacent")?;
    let mu = single(&non_adjacent, "non-adjacent")?;
    validate_params(n as i64, p, lambda, mu)
}

/// Max entry of `|A² - (p-c)I - (a-c)A - cJ|`, in exact integer arithmetic.
pub fn regularity_residual(adj: &DenseMatrix, params: &SrgParams) -> i64 {
    let n = adj.order();
    let a = adjacency_ints(adj);
    let (p, lambda, mu) = (params.p() as i64, params.a() as i64, params.c() as i64);
    let mut worst = 0;
    for i in 0..n {
        for j in 0..n {
            let square: i64 = (0..n).map(|k| a[i * n + k] * a[k * n + j]).sum();
            let diag = if i == j { p - mu } else { 0 };
            let expected = diag + (lambda - mu) * a[i * n + j] + mu;
            worst = worst.max((square - expected).abs());
        }
    }
    worst
}

/// How a catalog graph is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphRule {
    Cycle5,
    /// Kneser graph K(5, 2).
    Petersen,
    /// Quadratic-residue graph on Z_q.
    Paley(u64),
    /// Rook's graph on an m×m board.
    Lattice(usize),
    /// Line graph of K_m.
    Triangular(usize),
}

impl GraphRule {
    pub fn build(&self) -> DenseMatrix {
        match *self {
            GraphRule::Cycle5 => {
                DenseMatrix::from_fn(5, |i, j| if (i + 5 - j) % 5 == 1 || (j + 5 - i) % 5 == 1 { 1.0 } else { 0.0 })
            }
            GraphRule::Petersen => {
                let pairs = two_subsets(5);
                DenseMatrix::from_fn(pairs.len(), |i, j| {
                    let (a, b) = (pairs[i], pairs[j]);
                    let disjoint = a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1;
                    if disjoint { 1.0 } else { 0.0 }
                })
            }
            GraphRule::Paley(q) => {
                let residues: BTreeSet<u64> = (1..q).map(|x| x * x % q).collect();
                DenseMatrix::from_fn(q as usize, |i, j| {
                    let diff = (i as u64 + q - j as u64) % q;
                    if diff != 0 && residues.contains(&diff) { 1.0 } else { 0.0 }
                })
            }
            GraphRule::Lattice(m) => DenseMatrix::from_fn(m * m, |i, j| {
                let (ri, ci, rj, cj) = (i / m, i % m, j / m, j % m);
                if i != j && (ri == rj || ci == cj) { 1.0 } else { 0.0 }
            }),
            GraphRule::Triangular(m) => {
                let pairs = two_subsets(m);
                DenseMatrix::from_fn(pairs.len(), |i, j| {
                    let (a, b) = (pairs[i], pairs[j]);
                    let shared = [a.0 == b.0, a.0 == b.1, a.1 == b.0, a.1 == b.1].iter().filter(|&&x| x).count();
                    if i != j && shared == 1 { 1.0 } else { 0.0 }
                })
            }
        }
    }
}

fn two_subsets(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|k| k * k <= q).all(|k| !q.is_multiple_of(k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCatalogEntry {
    pub name: String,
    pub params: SrgParams,
    pub rule: GraphRule,
}

impl GraphCatalogEntry {
    pub fn build(&self) -> DenseMatrix {
        self.rule.build()
    }
}

fn entry(name: String, params: (i64, i64, i64, i64), rule: GraphRule) -> GraphCatalogEntry {
    let params = validate_params(params.0, params.1, params.2, params.3).expect("catalog parameters are valid");
    GraphCatalogEntry { name, params, rule }
}

fn paley_entry(q: u64) -> Result<GraphCatalogEntry> {
    if !(is_prime(q) && q % 4 == 1 && q <= 101) {
        return Err(SrgError::BadPaleyModulus(q));
    }
    let q = q as i64;
    Ok(entry(format!("paley-{q}"), (q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4), GraphRule::Paley(q as u64)))
}

/// Every catalog graph: `c5`, `petersen`, `lattice-3`, `triangular-5`, and
/// `paley-q` for each prime `q = 1 (mod 4)` up to 101.
pub fn catalog() -> Vec<GraphCatalogEntry> {
    let mut out = vec![
        entry("c5".into(), (5, 2, 0, 1), GraphRule::Cycle5),
        entry("petersen".into(), (10, 3, 0, 1), GraphRule::Petersen),
        entry("lattice-3".into(), (9, 4, 1, 2), GraphRule::Lattice(3)),
        entry("triangular-5".into(), (10, 6, 3, 4), GraphRule::Triangular(5)),
    ];
    out.extend((5..=101).filter_map(|q| paley_entry(q).ok()));
    out
}

pub fn lookup(name: &str) -> Result<GraphCatalogEntry> {
    let name = name.trim().to_ascii_lowercase();
    if let Some(q) = name.strip_prefix("paley-") {
        let q: u64 = q.parse().map_err(|_| SrgError::UnknownGraph(name.clone()))?;
        return paley_entry(q);
    }
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or(SrgError::UnknownGraph(name))
}

pub fn build_graph(name: &str) -> Result<(DenseMatrix, SrgParams)> {
    let entry = lookup(name)?;
    Ok((entry.build(), entry.params))
}

fn float_spectrum(params: &SrgParams) -> (f64, f64, f64) {
    let spec = crate::srg_core::spectrum(params);
    (spec.p.to_f64(), spec.r.to_f64(), spec.s.to_f64())
}

/// `E₁, E₂, E₃` as quadratic polynomials in `A`.
pub fn idempotents_from_adjacency(adj: &DenseMatrix, params: &SrgParams) -> [DenseMatrix; 3] {
    let (p, r, s) = float_spectrum(params);
    let a2 = adj.matmul(adj).expect("square");
    let id = DenseMatrix::identity(adj.order());
    let poly = |sum: f64, prod: f64, denom: f64| {
        a2.sub(&adj.scale(sum))
            .and_then(|m| m.add(&id.scale(prod)))
            .expect("same order")
            .scale(1.0 / denom)
    };
    [
        poly(r + s, r * s, (p - r) * (p - s)),
        poly(p + s, p * s, (r - s) * (r - p)),
        poly(p + r, p * r, (s - r) * (s - p)),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    /// `‖E_i² - E_i‖`
    pub idempotency: [f64; 3],
    /// `‖E₁E₂‖`, `‖E₁E₃‖`, `‖E₂E₃‖`
    pub orthogonality: [f64; 3],
    /// `‖E₁ + E₂ + E₃ - I‖`
    pub completeness: f64,
    pub tol: f64,
    pub passed: bool,
}

impl FrameReport {
    pub fn worst(&self) -> f64 {
        self.idempotency
            .iter()
            .chain(&self.orthogonality)
            .fold(self.completeness, |m, &x| m.max(x))
    }
}

/// Max-norm residuals of the complete-system identities.
pub fn verify_frame(e: &[DenseMatrix; 3], tol: f64) -> Result<FrameReport> {
    let mut idempotency = [0.0; 3];
    for (slot, m) in idempotency.iter_mut().zip(e) {
        *slot = m.matmul(m)?.sub(m)?.max_abs();
    }
    let mut orthogonality = [0.0; 3];
    for (slot, (i, j)) in orthogonality.iter_mut().zip([(0, 1), (0, 2), (1, 2)]) {
        *slot = e[i].matmul(&e[j])?.max_abs();
    }
    let completeness = e[0].add(&e[1])?.add(&e[2])?.sub(&DenseMatrix::identity(e[0].order()))?.max_abs();
    let mut report = FrameReport { idempotency, orthogonality, completeness, tol, passed: false };
    report.passed = report.worst() < tol;
    Ok(report)
}

fn check_cap(order: usize, k: u32, cap: usize) -> Result<usize> {
    let size = (order as u128).checked_pow(k).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(SrgError::SizeCapExceeded { order: size.min(usize::MAX as u128) as usize, cap });
    }
    Ok(size as usize)
}

/// Largest order at which [`idempotency_residual`] forms `M²` densely.
pub const DENSE_SQUARE_LIMIT: usize = 512;

const PROBES: usize = 6;

/// `‖M² - M‖`. Above [`DENSE_SQUARE_LIMIT`] this is `max_t ‖M(Mx_t) - Mx_t‖`
/// over fixed quasi-random probes `x_t` with entries in `[-1, 1]`.
pub fn idempotency_residual(m: &DenseMatrix) -> f64 {
    if m.order() <= DENSE_SQUARE_LIMIT {
        return m.matmul(m).and_then(|sq| sq.sub(m)).expect("same order").max_abs();
    }
    (1..=PROBES)
        .map(|t| {
            let x: Vec<f64> = (0..m.order()).map(|j| (j as f64 * (t as f64 + 0.5).sqrt() * 1.618).cos()).collect();
            let mx = m.matvec(&x);
            let mmx = m.matvec(&mx);
            mmx.iter().zip(&mx).fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
        })
        .fold(0.0, f64::max)
}

/// Largest `k <= wanted` with `order^k <= cap`, at least 1.
pub fn clamp_kronecker_exponent(order: usize, wanted: u32, cap: usize) -> u32 {
    let mut k = 1;
    while k < wanted && check_cap(order, k + 1, cap).is_ok() {
        k += 1;
    }
    k
}

/// `M^{⊗k}` with `M^{⊗1} = M` and `M^{⊗k} = M ⊗ M^{⊗(k-1)}`.
pub fn kronecker_power(m: &DenseMatrix, k: u32, cap: usize) -> Result<DenseMatrix> {
    if k == 0 {
        return Err(SrgError::ZeroExponent);
    }
    check_cap(m.order(), k, cap)?;
    let mut acc = m.clone();
    for _ in 1..k {
        acc = m.kron(&acc);
    }
    Ok(acc)
}

/// `E^{⊗m} ⊗ F^{⊗n}`.
pub fn kronecker_mixed(e: &DenseMatrix, m: u32, f: &DenseMatrix, n: u32, cap: usize) -> Result<DenseMatrix> {
    e.same_order(f)?;
    check_cap(e.order(), m + n, cap)?;
    Ok(kronecker_power(e, m, cap)?.kron(&kronecker_power(f, n, cap)?))
}

/// 0-based rows of `M^{⊗k}` holding the diagonal blocks `(i, i, …, i)`:
/// `i·(n^{k-1} + … + n + 1)`.
pub fn principal_indices(order: usize, k: u32) -> Vec<usize> {
    let stride: usize = (0..k).map(|e| order.pow(e)).sum();
    (0..order).map(|i| i * stride).collect()
}

/// `‖E^{∘m} ∘ F^{∘n} - (E^{⊗m} ⊗ F^{⊗n})[idx, idx]‖`.
pub fn mixed_principal_residual(e: &DenseMatrix, m: u32, f: &DenseMatrix, n: u32, cap: usize) -> Result<f64> {
    let big = kronecker_mixed(e, m, f, n, cap)?;
    let sub = big.principal_submatrix(&principal_indices(e.order(), m + n));
    let entrywise = e.hadamard_power(m).hadamard(&f.hadamard_power(n))?;
    Ok(sub.sub(&entrywise)?.max_abs())
}

pub fn principal_submatrix_residual(m: &DenseMatrix, k: u32, cap: usize) -> Result<f64> {
    let big = kronecker_power(m, k, cap)?;
    let sub = big.principal_submatrix(&principal_indices(m.order(), k));
    Ok(sub.sub(&m.hadamard_power(k))?.max_abs())
}

/// Whether `M^{∘k}` is the principal submatrix of `M^{⊗k}` at
/// [`principal_indices`], to `1e-12`.
pub fn principal_submatrix_check(m: &DenseMatrix, k: u32, cap: usize) -> Result<bool> {
    Ok(principal_submatrix_residual(m, k, cap)? < 1e-12)
}

/// Slack allowed by [`interlacing_check`].
pub const INTERLACING_SLACK: f64 = 1e-8;

/// Cauchy interlacing of the principal submatrix on `indices`:
/// `λ_i >= μ_i >= λ_{n-m+i}` with eigenvalues sorted descending.
pub fn interlacing_check(m: &DenseMatrix, indices: &[usize]) -> bool {
    let distinct: BTreeSet<_> = indices.iter().collect();
    if distinct.len() != indices.len() || indices.iter().any(|&i| i >= m.order()) {
        return false;
    }
    let lambda = m.symmetric_eigenvalues();
    let mu = m.principal_submatrix(indices).symmetric_eigenvalues();
    let (n, k) = (lambda.len(), mu.len());
    mu.iter().enumerate().all(|(i, &x)| {
        lambda[i] + INTERLACING_SLACK >= x && x + INTERLACING_SLACK >= lambda[n - k + i]
    })
}

/// The Hadamard product named by `spec`, densely.
pub fn dense_product(e: &[DenseMatrix; 3], spec: &ProductSpec) -> Result<DenseMatrix> {
    spec.validate()?;
    let idem = |i: usize| &e[i - 1];
    Ok(match *spec {
        ProductSpec::JJ { j, k } => idem(j).hadamard_power(k),
        ProductSpec::UV { u, v, k, l } => idem(u).hadamard_power(k).hadamard(&idem(v).hadamard_power(l))?,
        ProductSpec::PlusUV { u, v, k } => idem(u).add(idem(v))?.hadamard_power(k),
        ProductSpec::JPlusUV { j, u, v, k, l } => idem(j)
            .hadamard_power(k)
            .hadamard(&idem(u).add(idem(v))?.hadamard_power(l))?,
    })
}

/// Floating Krein values by trace projection, `q_i = tr(M·E_i) / m_i`,
/// where `m_i = tr(E_i)`.
pub fn oracle_krein(e: &[DenseMatrix; 3], mult: [f64; 3], spec: &ProductSpec) -> Result<[f64; 3]> {
    let m = dense_product(e, spec)?;
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = m.trace_product(&e[i])? / mult[i];
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Krein agreement is checked for every spec up to this total degree.
    pub degree_cap: u32,
    /// Kronecker exponent; defaults to 3 for `n <= 5` and 2 otherwise.
    pub kronecker_k: Option<u32>,
    pub tol: f64,
    pub size_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { degree_cap: 4, kronecker_k: None, tol: 1e-9, size_cap: size_cap() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub graph: String,
    pub params: SrgParams,
    pub kronecker_k: u32,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        let passed = residual.is_finite() && residual < tol || residual == 0.0 && tol == 0.0;
        self.checks.push(CheckOutcome { name: name.into(), residual, tol, passed });
    }
}

/// Runs the full oracle suite on one graph.
pub fn verify_graph(name: &str, adj: &DenseMatrix, params: &SrgParams, opts: &VerifyOptions) -> Result<VerifyReport> {
    let n = adj.order();
    if n as u64 != params.n() {
        return Err(SrgError::DimensionMismatch(format!("matrix order {n} but n = {}", params.n())));
    }
    let kk = match opts.kronecker_k {
        Some(k) => {
            check_cap(n, k, opts.size_cap)?;
            k
        }
        None => clamp_kronecker_exponent(n, if n <= 5 { 3 } else { 2 }, opts.size_cap),
    };
    let tol = opts.tol;
    let mut report = VerifyReport { graph: name.to_string(), params: *params, kronecker_k: kk, checks: Vec::new() };

    report.push("regularity.exact", regularity_residual(adj, params) as f64, 0.0);

    let engine = KreinEngine::new(*params);
    let (p, r, s) = float_spectrum(params);
    let mults = multiplicities(params);
    if let Some((m_r, m_s)) = mults.as_integers() {
        let mut expected = vec![p];
        expected.extend(std::iter::repeat_n(r, m_r as usize));
        expected.extend(std::iter::repeat_n(s, m_s as usize));
        expected.sort_by(|a, b| b.total_cmp(a));
        let eig = adj.symmetric_eigenvalues();
        let worst = eig.iter().zip(&expected).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        report.push("spectrum.eigenvalues", worst, tol);
    }

    let e = idempotents_from_adjacency(adj, params);
    let frame = verify_frame(&e, tol)?;
    report.push("frame.idempotency", frame.idempotency.iter().fold(0.0f64, |m, &x| m.max(x)), tol);
    report.push("frame.orthogonality", frame.orthogonality.iter().fold(0.0f64, |m, &x| m.max(x)), tol);
    report.push("frame.completeness", frame.completeness, tol);
    report.push("frame.e1_is_j_over_n", e[0].sub(&DenseMatrix::ones(n).scale(1.0 / n as f64))?.max_abs(), tol);
    let traces = [e[0].trace(), e[1].trace(), e[2].trace()];

    let reconstruction = e[0].scale(p).add(&e[1].scale(r))?.add(&e[2].scale(s))?.sub(adj)?.max_abs();
    report.push("frame.spectral_reconstruction", reconstruction, tol);

    // Symbolic coordinates against the dense entries on each support.
    let mut coord_err = 0.0f64;
    for (i, dense) in e.iter().enumerate() {
        let [x, y, z] = engine.idempotent(i + 1).to_f64();
        for row in 0..n {
            for col in 0..n {
                let expected = if row == col { x } else if adj.get(row, col) == 1.0 { y } else { z };
                coord_err = coord_err.max((dense.get(row, col) - expected).abs());
            }
        }
    }
    report.push("coords.idempotents", coord_err, tol);

    let mut abs_err = 0.0f64;
    for x in [0u32, 2, 4, 6] {
        let c = abs_power_coords(params, x as f64);
        let approx = DenseMatrix::identity(n).scale(c.alpha).add(&adj.scale(c.beta))?.add(&e[0].scale(c.gamma))?;
        let exact = adj.matrix_power(x);
        abs_err = abs_err.max(approx.sub(&exact)?.max_abs() / exact.max_abs().max(1.0));
    }
    report.push("abs_power.even_exponents", abs_err, tol);

    let mut kron_idem = 0.0f64;
    let mut principal = 0.0f64;
    let mut interlace_ok = true;
    for (i, ei) in e.iter().enumerate() {
        for k in 2..=kk {
            let big = kronecker_power(ei, k, opts.size_cap)?;
            kron_idem = kron_idem.max(idempotency_residual(&big));
            principal = principal.max(principal_submatrix_residual(ei, k, opts.size_cap)?);
            let idx = principal_indices(n, k);
            if big.order() <= DENSE_SQUARE_LIMIT {
                interlace_ok &= interlacing_check(&big, &idx);
            }
            let extracted = big.principal_submatrix(&idx).symmetric_eigenvalues();
            interlace_ok &= extracted.iter().all(|&x| (-INTERLACING_SLACK..=1.0 + INTERLACING_SLACK).contains(&x));
        }
        for ej in e.iter().skip(i + 1) {
            for total in 2..=kk {
                for m in 1..total {
                    let big = kronecker_mixed(ei, m, ej, total - m, opts.size_cap)?;
                    kron_idem = kron_idem.max(idempotency_residual(&big));
                    principal = principal.max(mixed_principal_residual(ei, m, ej, total - m, opts.size_cap)?);
                }
            }
        }
    }
    report.push(format!("kronecker.idempotency(k<={kk})"), kron_idem, tol);
    report.push(format!("hadamard.principal_submatrix(k<={kk})"), principal, tol);
    report.push("interlacing.kronecker_principal", if interlace_ok { 0.0 } else { f64::INFINITY }, tol);

    let mut agreement = 0.0f64;
    let mut bounds = 0.0f64;
    for spec in ProductSpec::all_up_to(opts.degree_cap) {
        let dense = oracle_krein(&e, traces, &spec)?;
        let exact = engine.krein(&spec)?.to_f64();
        for (a, b) in dense.iter().zip(&exact) {
            agreement = agreement.max((a - b).abs());
            bounds = bounds.max(-a).max(a - 1.0);
        }
    }
    report.push(format!("krein.agreement(degree<={})", opts.degree_cap), agreement, tol);
    report.push("krein.unit_interval", bounds.max(0.0), tol);
    Ok(report)
}
