//! Necessary conditions for the existence of a strongly regular graph.
//!
//! Each condition is evaluated exactly in Q(√d). The non-negativity
//! conditions are stated on scaled numerators: the Krein value times
//! `(n(r - s))^e`, which is positive, so the sign is unchanged and the
//! witness stays an algebraic integer polynomial in `n`, `p`, `r`, `s`.

use serde::{Deserialize, Serialize};

use crate::error::SrgError;
use crate::krein_engine::{classical_specs, KreinEngine, ProductSpec};
use crate::quad_field::{QuadNum, Sign};
use crate::srg_core::{
    multiplicities, nonneg_integer, spectrum, validate_range, SrgParams, Spectrum,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionSource {
    Validation,
    PaperTheorem,
    PaperLemma,
    PaperCorollary,
    Classical,
    /// Optional q² / q³ checks, off by default.
    Extension,
}

/// What `value` must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    NonNegative,
    Zero,
    UnitInterval,
    NonNegativeInteger,
}

impl Predicate {
    pub fn holds(&self, value: &QuadNum) -> bool {
        match self {
            Predicate::NonNegative => value.sign() != Sign::Negative,
            Predicate::Zero => value.is_zero(),
            Predicate::UnitInterval => {
                value.sign() != Sign::Negative
                    && (&QuadNum::one(value.d()) - value).sign() != Sign::Negative
            }
            Predicate::NonNegativeInteger => nonneg_integer(value).is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionResult {
    pub condition_id: String,
    pub value: QuadNum,
    pub satisfied: bool,
    pub source: ConditionSource,
    pub predicate: Predicate,
    pub note: Option<String>,
}

impl ConditionResult {
    fn exact(id: String, value: QuadNum, source: ConditionSource, predicate: Predicate) -> Self {
        let satisfied = predicate.holds(&value);
        ConditionResult { condition_id: id, value, satisfied, source, predicate, note: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// The four families of q¹ conditions. The first factor is raised to `k`,
/// the second (if any) to `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremFamily {
    /// `q¹_{33k}`, odd `k`.
    E3Power,
    /// `q¹_{(+13)k}`, odd `k`.
    E13SumPower,
    /// `q¹_{3(+13)kl}`, odd `k + l`.
    E3TimesE13Sum,
    /// `q¹_{2(+13)kl}`, odd `l`.
    E2TimesE13Sum,
}

/// Which idempotent combination a factor uses.
#[derive(Debug, Clone, Copy)]
enum Factor {
    E2,
    E3,
    E1PlusE3,
}

/// `alpha·n + beta`, a coordinate numerator as a linear polynomial in `n`.
struct Linear {
    alpha: QuadNum,
    beta: QuadNum,
}

impl Factor {
    /// Numerators of the `{I, A, J - A - I}` coordinates, over `n(r - s)`.
    fn numerators(self, params: &SrgParams, spec: &Spectrum) -> [Linear; 3] {
        let p = &spec.p;
        let (r, s) = (&spec.r, &spec.s);
        let one = params.int(1);
        let zero = params.int(0);
        let lin = |alpha: QuadNum, beta: QuadNum| Linear { alpha, beta };
        match self {
            Factor::E2 => [
                lin(-s, s - p),
                lin(one, s - p),
                lin(zero, s - p),
            ],
            Factor::E3 => [
                lin(r.clone(), p - r),
                lin(-one, p - r),
                lin(zero, p - r),
            ],
            Factor::E1PlusE3 => [
                lin(r.clone(), p - s),
                lin(-one, p - s),
                lin(zero, p - s),
            ],
        }
    }
}

impl TheoremFamily {
    pub const ALL: [TheoremFamily; 4] = [
        TheoremFamily::E3Power,
        TheoremFamily::E13SumPower,
        TheoremFamily::E3TimesE13Sum,
        TheoremFamily::E2TimesE13Sum,
    ];

    fn factors(self) -> (Factor, Option<Factor>) {
        match self {
            TheoremFamily::E3Power => (Factor::E3, None),
            TheoremFamily::E13SumPower => (Factor::E1PlusE3, None),
            TheoremFamily::E3TimesE13Sum => (Factor::E3, Some(Factor::E1PlusE3)),
            TheoremFamily::E2TimesE13Sum => (Factor::E2, Some(Factor::E1PlusE3)),
        }
    }

    pub fn is_single(self) -> bool {
        self.factors().1.is_none()
    }

    /// The Hadamard product whose q¹ this family bounds.
    pub fn spec(self, k: u32, l: u32) -> ProductSpec {
        match self {
            TheoremFamily::E3Power => ProductSpec::JJ { j: 3, k },
            TheoremFamily::E13SumPower => ProductSpec::PlusUV { u: 1, v: 3, k },
            TheoremFamily::E3TimesE13Sum => ProductSpec::JPlusUV { j: 3, u: 1, v: 3, k, l },
            TheoremFamily::E2TimesE13Sum => ProductSpec::JPlusUV { j: 2, u: 1, v: 3, k, l },
        }
    }

    fn tag(self) -> &'static str {
        match self {
            TheoremFamily::E3Power => "33k",
            TheoremFamily::E13SumPower => "(+13)k",
            TheoremFamily::E3TimesE13Sum => "3(+13)kl",
            TheoremFamily::E2TimesE13Sum => "2(+13)kl",
        }
    }

    fn id(self, row: usize, k: u32, l: u32) -> String {
        if self.is_single() {
            format!("thm.q{row}_{}.k={k}", self.tag())
        } else {
            format!("thm.q{row}_{}.k={k},l={l}", self.tag())
        }
    }

    /// Exponent pairs `(k, l)` the theorem covers within the limits, in
    /// reporting order. Single families carry `l = 0`.
    pub fn exponents(self, k_max: u32, kl_max: u32) -> Vec<(u32, u32)> {
        match self {
            TheoremFamily::E3Power | TheoremFamily::E13SumPower => {
                (3..=k_max).step_by(2).map(|k| (k, 0)).collect()
            }
            TheoremFamily::E3TimesE13Sum => (3..=kl_max)
                .step_by(2)
                .flat_map(|total| (1..total).map(move |k| (k, total - k)))
                .collect(),
            TheoremFamily::E2TimesE13Sum => (3..=kl_max)
                .flat_map(|total| (1..total).map(move |k| (k, total - k)))
                .filter(|&(_, l)| l % 2 == 1)
                .collect(),
        }
    }
}

fn poly_mul(a: &[QuadNum], b: &[QuadNum]) -> Vec<QuadNum> {
    let d = a[0].d().max(b[0].d());
    let mut out = vec![QuadNum::zero(d); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn poly_pow(a: &[QuadNum], k: u32) -> Vec<QuadNum> {
    let mut acc = vec![QuadNum::one(a[0].d())];
    for _ in 0..k {
        acc = poly_mul(&acc, a);
    }
    acc
}

fn poly_add(a: &[QuadNum], b: &[QuadNum]) -> Vec<QuadNum> {
    let d = a[0].d().max(b[0].d());
    (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| QuadNum::zero(d));
            let y = b.get(i).cloned().unwrap_or_else(|| QuadNum::zero(d));
            x + y
        })
        .collect()
}

/// The scaled numerator `(n(r-s))^{k+l}·q¹` as a polynomial in a formal `n`,
/// coefficients listed from the constant term up.
pub fn scaled_numerator_poly(params: &SrgParams, family: TheoremFamily, k: u32, l: u32) -> Vec<QuadNum> {
    let spec = spectrum(params);
    let (first, second) = family.factors();
    let first = first.numerators(params, &spec);
    let second = second.map(|f| f.numerators(params, &spec));
    let p = &spec.p;
    // Eigenvalue of J - A - I on E₁ is n - p - 1.
    let complement = [-(p + params.int(1)), params.int(1)];
    let weights: [Vec<QuadNum>; 3] = [vec![params.int(1)], vec![p.clone()], complement.to_vec()];
    let mut total = vec![params.int(0)];
    for coord in 0..3 {
        let lin = &first[coord];
        let mut term = poly_pow(&[lin.beta.clone(), lin.alpha.clone()], k);
        if let Some(second) = &second {
            let lin2 = &second[coord];
            term = poly_mul(&term, &poly_pow(&[lin2.beta.clone(), lin2.alpha.clone()], l));
        }
        total = poly_add(&total, &poly_mul(&term, &weights[coord]));
    }
    while total.len() > 1 && total.last().is_some_and(QuadNum::is_zero) {
        total.pop();
    }
    total
}

/// The scaled numerator evaluated at the parameter set's own `n`.
pub fn scaled_numerator(params: &SrgParams, family: TheoremFamily, k: u32, l: u32) -> QuadNum {
    let spec = spectrum(params);
    let n = params.int(params.n() as i64);
    let eval = |lin: &Linear| &lin.alpha * &n + &lin.beta;
    let (first, second) = family.factors();
    let first = first.numerators(params, &spec);
    let second = second.map(|f| f.numerators(params, &spec));
    let weights = [params.int(1), spec.p.clone(), &n - &spec.p - params.int(1)];
    (0..3)
        .map(|coord| {
            let mut term = eval(&first[coord]).pow(k);
            if let Some(second) = &second {
                term = term * eval(&second[coord]).pow(l);
            }
            term * &weights[coord]
        })
        .reduce(|a, b| a + b)
        .expect("three coordinates")
}

/// Every theorem condition within the limits; odd `k <= k_max` for the
/// single-index families and `k + l <= kl_max` for the others.
pub fn check_theorem(params: &SrgParams, k_max: u32, kl_max: u32) -> Vec<ConditionResult> {
    TheoremFamily::ALL
        .iter()
        .flat_map(|&family| {
            family.exponents(k_max, kl_max).into_iter().map(move |(k, l)| {
                ConditionResult::exact(
                    family.id(1, k, l),
                    scaled_numerator(params, family, k, l),
                    ConditionSource::PaperTheorem,
                    Predicate::NonNegative,
                )
            })
        })
        .collect()
}

/// The five cubic inequalities, written out term by term.
pub fn check_lemma_cubic(params: &SrgParams) -> Vec<ConditionResult> {
    let spec = spectrum(params);
    let p = &spec.p;
    let (r, s) = (&spec.r, &spec.s);
    let n = params.int(params.n() as i64);
    let rest = &n - p - params.int(1);
    let abs_s = -s;

    let e3 = [r * &n + p - r, p - r - &n, p - r];
    let e13 = [r * &n + p - s, p - s - &n, p - s];
    let e2 = [&abs_s * &n + s - p, &n + s - p, s - p];
    let combine = |x: QuadNum, y: QuadNum, z: QuadNum| x + y * p + z * &rest;

    let cubes = [
        (
            "lemma.q1_333",
            combine(e3[0].pow(3), e3[1].pow(3), e3[2].pow(3)),
        ),
        (
            "lemma.q1_(+13)3",
            combine(e13[0].pow(3), e13[1].pow(3), e13[2].pow(3)),
        ),
        (
            "lemma.q1_3(+13)21",
            combine(
                e3[0].pow(2) * &e13[0],
                e3[1].pow(2) * &e13[1],
                e3[2].pow(2) * &e13[2],
            ),
        ),
        (
            "lemma.q1_3(+13)12",
            combine(
                &e3[0] * e13[0].pow(2),
                &e3[1] * e13[1].pow(2),
                &e3[2] * e13[2].pow(2),
            ),
        ),
        (
            "lemma.q1_2(+13)21",
            combine(
                e2[0].pow(2) * &e13[0],
                e2[1].pow(2) * &e13[1],
                e2[2].pow(2) * &e13[2],
            ),
        ),
    ];
    cubes
        .into_iter()
        .map(|(id, value)| {
            ConditionResult::exact(
                id.to_string(),
                value,
                ConditionSource::PaperLemma,
                Predicate::NonNegative,
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundDirection {
    /// `n` must lie below the bound.
    Upper,
    /// `n` must lie above the bound.
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryBound {
    pub direction: BoundDirection,
    pub bound: f64,
}

impl CorollaryBound {
    pub fn admits(&self, n: f64) -> bool {
        match self.direction {
            BoundDirection::Upper => n < self.bound,
            BoundDirection::Lower => n > self.bound,
        }
    }
}

/// Relative margin inside which the float bound defers to the exact sign.
pub const COROLLARY_MARGIN: f64 = 1e-9;

/// Bound on `n` from the roots of the cubic `q¹_{333}` numerator.
///
/// The numerator factors as `n·((r³-p)n² + 3(p-r)(r²+p)n - 2(p-r)³)`. For
/// `r³ < p` the quadratic opens downward and `n` is bounded above by its
/// larger root; for `r³ > p` it opens upward with one positive root, which
/// bounds `n` from below. `None` when `r³ = p`.
pub fn corollary_bound(params: &SrgParams) -> Option<CorollaryBound> {
    let spec = spectrum(params);
    let lead = spec.r.pow(3) - &spec.p;
    let direction = match lead.sign() {
        Sign::Zero => return None,
        Sign::Negative => BoundDirection::Upper,
        Sign::Positive => BoundDirection::Lower,
    };
    let r = spec.r.to_f64();
    let p = params.p() as f64;
    let radicand = r.powi(4) + 18.0 * p * r * r + p * p + 8.0 * r.powi(3) * p + 8.0 * p * r;
    let root = radicand.sqrt();
    let signed_root = match direction {
        BoundDirection::Upper => root,
        BoundDirection::Lower => -root,
    };
    let bound = (p - r) * (3.0 * r * r + 3.0 * p + signed_root) / (2.0 * (p - r.powi(3)));
    Some(CorollaryBound { direction, bound })
}

/// Exact value of the quadratic factor `(r³-p)n² + 3(p-r)(r²+p)n - 2(p-r)³`.
fn corollary_quadratic(params: &SrgParams, spec: &Spectrum) -> QuadNum {
    let n = params.int(params.n() as i64);
    let (p, r) = (&spec.p, &spec.r);
    let t = p - r;
    (r.pow(3) - p) * n.pow(2) + params.int(3) * &t * (r.pow(2) + p) * &n - params.int(2) * t.pow(3)
}

/// The corollary as a reportable condition. Decided by the float bound
/// unless `n` sits within [`COROLLARY_MARGIN`] of it, then by the exact sign.
pub fn check_corollary(params: &SrgParams) -> Option<ConditionResult> {
    let bound = corollary_bound(params)?;
    let spec = spectrum(params);
    let value = corollary_quadratic(params, &spec);
    let n = params.n() as f64;
    let satisfied = if (n - bound.bound).abs() <= COROLLARY_MARGIN * bound.bound.abs() {
        value.sign() != Sign::Negative
    } else {
        bound.admits(n)
    };
    let note = match bound.direction {
        BoundDirection::Upper => format!("advisory: n < {:.6}", bound.bound),
        BoundDirection::Lower => format!(
            "advisory: n > {:.6} (positive root of the quadratic factor; the printed \
             lower bound carries an extra (p-r) factor on the radical)",
            bound.bound
        ),
    };
    Some(ConditionResult {
        condition_id: "cor.n_bound".to_string(),
        value,
        satisfied,
        source: ConditionSource::PaperCorollary,
        predicate: Predicate::NonNegative,
        note: Some(note),
    })
}

fn krein_label(spec: &ProductSpec) -> String {
    match *spec {
        ProductSpec::JJ { j, k } => format!("{j}{j}{k}"),
        ProductSpec::UV { u, v, k, l } => format!("{u}{v}{k}{l}"),
        ProductSpec::PlusUV { u, v, k } => format!("(+{u}{v}){k}"),
        ProductSpec::JPlusUV { j, u, v, k, l } => format!("{j}(+{u}{v}){k}{l}"),
    }
}

/// Multiplicity integrality and the classical Krein values in `[0, 1]`.
pub fn check_classical(params: &SrgParams) -> Vec<ConditionResult> {
    let m = multiplicities(params);
    let mut out = vec![
        ConditionResult::exact(
            "classical.multiplicity.m_r".into(),
            m.m_r,
            ConditionSource::Classical,
            Predicate::NonNegativeInteger,
        ),
        ConditionResult::exact(
            "classical.multiplicity.m_s".into(),
            m.m_s,
            ConditionSource::Classical,
            Predicate::NonNegativeInteger,
        ),
    ];
    let engine = KreinEngine::new(*params);
    for spec in classical_specs() {
        let triple = engine.krein(&spec).expect("classical specs are valid");
        for (i, value) in triple.iter().enumerate() {
            out.push(
                ConditionResult::exact(
                    format!("classical.krein.q{}_{}", i + 1, krein_label(&spec)),
                    value.clone(),
                    ConditionSource::Classical,
                    Predicate::UnitInterval,
                )
                .with_note("paper convention (unnormalized)"),
            );
        }
    }
    out
}

/// q² and q³ of every theorem product, required to lie in `[0, 1]`.
pub fn check_q23_extension(params: &SrgParams, k_max: u32, kl_max: u32) -> Vec<ConditionResult> {
    let engine = KreinEngine::new(*params);
    let mut out = Vec::new();
    for family in TheoremFamily::ALL {
        for (k, l) in family.exponents(k_max, kl_max) {
            let triple = engine.krein(&family.spec(k, l)).expect("theorem specs are valid");
            for row in 2..=3 {
                out.push(ConditionResult::exact(
                    family.id(row, k, l).replacen("thm.", "ext.", 1),
                    triple.get(row).expect("row in range").clone(),
                    ConditionSource::Extension,
                    Predicate::UnitInterval,
                ));
            }
        }
    }
    out
}

/// Evaluation limits and switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub k_max: u32,
    pub kl_max: u32,
    pub classical: bool,
    pub q23_conditions: bool,
    pub enforce_counting_identity: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            k_max: 12,
            kl_max: 12,
            classical: true,
            q23_conditions: false,
            enforce_counting_identity: true,
        }
    }
}

/// Unvalidated parameter tuple as supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RawParams {
    pub n: i64,
    pub p: i64,
    pub a: i64,
    pub c: i64,
}

impl From<SrgParams> for RawParams {
    fn from(params: SrgParams) -> Self {
        let (n, p, a, c) = params.tuple();
        RawParams { n: n as i64, p: p as i64, a: a as i64, c: c as i64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    FeasibleSoFar,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityVerdict {
    pub params: RawParams,
    /// `Some` once the range check passed.
    pub validated: Option<SrgParams>,
    pub results: Vec<ConditionResult>,
    pub overall: Overall,
    pub first_failure: Option<String>,
}

impl FeasibilityVerdict {
    fn from_results(params: RawParams, validated: Option<SrgParams>, results: Vec<ConditionResult>) -> Self {
        let first_failure = results.iter().find(|r| !r.satisfied).map(|r| r.condition_id.clone());
        let overall = if first_failure.is_some() { Overall::Infeasible } else { Overall::FeasibleSoFar };
        FeasibilityVerdict { params, validated, results, overall, first_failure }
    }

    /// True when the tuple was rejected before any spectral condition ran.
    pub fn failed_validation(&self) -> bool {
        self.results
            .iter()
            .any(|r| r.source == ConditionSource::Validation && !r.satisfied)
    }
}

/// Runs every condition in a fixed order: validation, lemma cubics, theorem
/// families, corollary, classical checks, optional q²/q³ extension.
pub fn verdict(raw: RawParams, limits: &Limits) -> FeasibilityVerdict {
    let RawParams { n, p, a, c } = raw;
    let mut results = Vec::new();
    let slack = [c, p - c, n - 1 - p].into_iter().min().expect("non-empty") - 1;
    let range = validate_range(n, p, a, c);
    let range_result = ConditionResult::exact(
        "validation.range".into(),
        QuadNum::from(slack.min(a)),
        ConditionSource::Validation,
        Predicate::NonNegative,
    );
    let range_result = match &range {
        Ok(_) => ConditionResult { satisfied: true, ..range_result },
        Err(e) => ConditionResult { satisfied: false, ..range_result }.with_note(e.to_string()),
    };
    results.push(range_result);
    let Ok(params) = range else {
        return FeasibilityVerdict::from_results(raw, None, results);
    };

    if limits.enforce_counting_identity {
        let defect = params.counting_defect();
        let result = ConditionResult::exact(
            "validation.counting_identity".into(),
            QuadNum::from(defect as i64),
            ConditionSource::Validation,
            Predicate::Zero,
        )
        .with_note("p(p-a-1) - (n-p-1)c");
        let failed = !result.satisfied;
        let result = if failed {
            let (n, p, a, c) = params.tuple();
            let (n, p, a, c) = (n as i128, p as i128, a as i128, c as i128);
            result.with_note(SrgError::CountingIdentityViolation { lhs: p * (p - a - 1), rhs: (n - p - 1) * c }.to_string())
        } else {
            result
        };
        results.push(result);
        if failed {
            return FeasibilityVerdict::from_results(raw, Some(params), results);
        }
    }

    results.extend(check_lemma_cubic(&params));
    results.extend(check_theorem(&params, limits.k_max, limits.kl_max));
    results.extend(check_corollary(&params));
    if limits.classical {
        results.extend(check_classical(&params));
    }
    if limits.q23_conditions {
        results.extend(check_q23_extension(&params, limits.k_max, limits.kl_max));
    }
    FeasibilityVerdict::from_results(raw, Some(params), results)
}
