//! Generalized Krein parameters through Hadamard algebra on basis coordinates.
//!
//! `I`, `A` and `J - A - I` are 0/1 matrices with pairwise disjoint supports,
//! so the entrywise product of two elements is the coordinatewise product of
//! their coordinates. Each family of products of idempotents is built that
//! way and then projected onto the Jordan frame `{E₁, E₂, E₃}` through the
//! eigenvalues of the three basis matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SrgError};
use crate::quad_field::QuadNum;
use crate::srg_core::{idempotent_coords_with, spectrum, BasisCoords, SrgParams, Spectrum};

/// A Hadamard product of Jordan-frame idempotents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductSpec {
    /// `E_j^{∘k}`
    JJ { j: usize, k: u32 },
    /// `E_u^{∘k} ∘ E_v^{∘l}`
    UV { u: usize, v: usize, k: u32, l: u32 },
    /// `(E_u + E_v)^{∘k}`
    PlusUV { u: usize, v: usize, k: u32 },
    /// `E_j^{∘k} ∘ (E_u + E_v)^{∘l}`
    JPlusUV { j: usize, u: usize, v: usize, k: u32, l: u32 },
}

impl ProductSpec {
    pub fn validate(&self) -> Result<()> {
        let idx = |i: usize| {
            if (1..=3).contains(&i) {
                Ok(())
            } else {
                Err(SrgError::IndexOutOfRange { index: i, expected: "1..=3" })
            }
        };
        let pair = |u: usize, v: usize| {
            idx(u)?;
            idx(v)?;
            if u < v {
                Ok(())
            } else {
                Err(SrgError::IndexOutOfRange { index: v, expected: "u < v" })
            }
        };
        let positive = |k: u32| if k >= 1 { Ok(()) } else { Err(SrgError::ZeroExponent) };
        match *self {
            ProductSpec::JJ { j, k } => {
                idx(j)?;
                positive(k)
            }
            ProductSpec::UV { u, v, k, l } => {
                pair(u, v)?;
                positive(k)?;
                positive(l)
            }
            ProductSpec::PlusUV { u, v, k } => {
                pair(u, v)?;
                positive(k)
            }
            ProductSpec::JPlusUV { j, u, v, k, l } => {
                idx(j)?;
                pair(u, v)?;
                positive(k)?;
                positive(l)
            }
        }
    }

    /// Total Hadamard degree.
    pub fn degree(&self) -> u32 {
        match *self {
            ProductSpec::JJ { k, .. } | ProductSpec::PlusUV { k, .. } => k,
            ProductSpec::UV { k, l, .. } | ProductSpec::JPlusUV { k, l, .. } => k + l,
        }
    }

    /// Every valid spec of total degree `1..=max_degree`, in a fixed order.
    pub fn all_up_to(max_degree: u32) -> Vec<ProductSpec> {
        const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];
        let mut out = Vec::new();
        for j in 1..=3 {
            for k in 1..=max_degree {
                out.push(ProductSpec::JJ { j, k });
            }
        }
        for (u, v) in PAIRS {
            for k in 1..max_degree {
                for l in 1..=max_degree - k {
                    out.push(ProductSpec::UV { u, v, k, l });
                }
            }
        }
        for (u, v) in PAIRS {
            for k in 1..=max_degree {
                out.push(ProductSpec::PlusUV { u, v, k });
            }
        }
        for j in 1..=3 {
            for (u, v) in PAIRS {
                for k in 1..max_degree {
                    for l in 1..=max_degree - k {
                        out.push(ProductSpec::JPlusUV { j, u, v, k, l });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ProductSpec::JJ { j, k } => write!(f, "jj(j={j},k={k})"),
            ProductSpec::UV { u, v, k, l } => write!(f, "uv(u={u},v={v},k={k},l={l})"),
            ProductSpec::PlusUV { u, v, k } => write!(f, "plus(u={u},v={v},k={k})"),
            ProductSpec::JPlusUV { j, u, v, k, l } => {
                write!(f, "jplus(j={j},u={u},v={v},k={k},l={l})")
            }
        }
    }
}

/// Coefficients of an element on `E₁`, `E₂`, `E₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinTriple {
    pub q1: QuadNum,
    pub q2: QuadNum,
    pub q3: QuadNum,
}

impl KreinTriple {
    pub fn get(&self, i: usize) -> Option<&QuadNum> {
        match i {
            1 => Some(&self.q1),
            2 => Some(&self.q2),
            3 => Some(&self.q3),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &QuadNum> {
        [&self.q1, &self.q2, &self.q3].into_iter()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.q1.to_f64(), self.q2.to_f64(), self.q3.to_f64()]
    }
}

pub fn hadamard_combine(a: &BasisCoords, b: &BasisCoords) -> Result<BasisCoords> {
    Ok(BasisCoords {
        x: a.x.try_mul(&b.x)?,
        y: a.y.try_mul(&b.y)?,
        z: a.z.try_mul(&b.z)?,
    })
}

/// `k`-th entrywise power; `k = 0` is rejected since `B^{∘0}` is not defined.
pub fn hadamard_power(a: &BasisCoords, k: u32) -> Result<BasisCoords> {
    if k == 0 {
        return Err(SrgError::ZeroExponent);
    }
    Ok(BasisCoords { x: a.x.pow(k), y: a.y.pow(k), z: a.z.pow(k) })
}

fn project_with(c: &BasisCoords, params: &SrgParams, spec: &Spectrum) -> KreinTriple {
    let n = params.int(params.n() as i64);
    let one = params.int(1);
    // Eigenvalues of J - A - I on E₁, E₂, E₃.
    let comp1 = &n - &spec.p - &one;
    let comp2 = -&spec.r - &one;
    let comp3 = -&spec.s - &one;
    let row = |lambda: &QuadNum, mu: &QuadNum| &c.x + &c.y * lambda + &c.z * mu;
    KreinTriple {
        q1: row(&spec.p, &comp1),
        q2: row(&spec.r, &comp2),
        q3: row(&spec.s, &comp3),
    }
}

/// Jordan-frame coordinates of an element given in `{I, A, J - A - I}`.
pub fn eigen_project(c: &BasisCoords, params: &SrgParams) -> Result<KreinTriple> {
    let spec = spectrum(params);
    for q in [&c.x, &c.y, &c.z] {
        if !q.is_rational() && q.d() != spec.d {
            return Err(SrgError::MixedDiscriminant { left: q.d(), right: spec.d });
        }
    }
    Ok(project_with(c, params, &spec))
}

/// Spectrum and idempotents of one parameter set, computed once.
#[derive(Debug, Clone)]
pub struct KreinEngine {
    params: SrgParams,
    spectrum: Spectrum,
    idempotents: [BasisCoords; 3],
}

impl KreinEngine {
    pub fn new(params: SrgParams) -> KreinEngine {
        let spectrum = spectrum(&params);
        let idempotents = [1, 2, 3].map(|i| idempotent_coords_with(&params, &spectrum, i));
        KreinEngine { params, spectrum, idempotents }
    }

    pub fn params(&self) -> &SrgParams {
        &self.params
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// `E_i`, 1-based. Panics outside `1..=3`.
    pub fn idempotent(&self, i: usize) -> &BasisCoords {
        &self.idempotents[i - 1]
    }

    fn pair_sum(&self, u: usize, v: usize) -> BasisCoords {
        self.idempotent(u).try_add(self.idempotent(v)).expect("shared discriminant")
    }

    pub fn project(&self, c: &BasisCoords) -> KreinTriple {
        project_with(c, &self.params, &self.spectrum)
    }

    /// Inverse of [`KreinEngine::project`]: `q₁E₁ + q₂E₂ + q₃E₃`.
    pub fn reconstruct(&self, t: &KreinTriple) -> BasisCoords {
        t.iter()
            .zip(&self.idempotents)
            .map(|(q, e)| e.scale(q))
            .reduce(|acc, e| acc.try_add(&e).expect("shared discriminant"))
            .expect("three terms")
    }

    /// Basis coordinates of the Hadamard product named by `spec`.
    pub fn product_coords(&self, spec: &ProductSpec) -> Result<BasisCoords> {
        spec.validate()?;
        match *spec {
            ProductSpec::JJ { j, k } => hadamard_power(self.idempotent(j), k),
            ProductSpec::UV { u, v, k, l } => hadamard_combine(
                &hadamard_power(self.idempotent(u), k)?,
                &hadamard_power(self.idempotent(v), l)?,
            ),
            ProductSpec::PlusUV { u, v, k } => hadamard_power(&self.pair_sum(u, v), k),
            ProductSpec::JPlusUV { j, u, v, k, l } => hadamard_combine(
                &hadamard_power(self.idempotent(j), k)?,
                &hadamard_power(&self.pair_sum(u, v), l)?,
            ),
        }
    }

    pub fn krein(&self, spec: &ProductSpec) -> Result<KreinTriple> {
        Ok(self.project(&self.product_coords(spec)?))
    }

    /// The classical cases `E_j ∘ E_j` and `E_u ∘ E_v`.
    pub fn classical(&self) -> Vec<(ProductSpec, KreinTriple)> {
        classical_specs()
            .into_iter()
            .map(|spec| {
                let t = self.krein(&spec).expect("classical specs are valid");
                (spec, t)
            })
            .collect()
    }
}

/// `JJ(j, 2)` for `j = 1..3`, then `UV(u, v, 1, 1)` for `u < v`.
pub fn classical_specs() -> Vec<ProductSpec> {
    let mut specs: Vec<ProductSpec> = (1..=3).map(|j| ProductSpec::JJ { j, k: 2 }).collect();
    for (u, v) in [(1, 2), (1, 3), (2, 3)] {
        specs.push(ProductSpec::UV { u, v, k: 1, l: 1 });
    }
    specs
}

pub fn generalized_krein(params: &SrgParams, spec: &ProductSpec) -> Result<KreinTriple> {
    KreinEngine::new(*params).krein(spec)
}

pub fn krein_classical(params: &SrgParams) -> Vec<(ProductSpec, KreinTriple)> {
    KreinEngine::new(*params).classical()
}
