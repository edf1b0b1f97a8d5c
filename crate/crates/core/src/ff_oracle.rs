//! Point counts of Spaltenstein fibers over `F_p`, by direct enumeration of
//! isotropic flags in a Jordan basis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Vector};
use crate::levi::LeviType;
use crate::partition::{is_valid, Family, Partition};
use crate::spaltenstein::GrassStep;

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;
pub const BUDGET_ENV: &str = "NILORBIT_ORACLE_BUDGET";

/// The node cap, overridden by `NILORBIT_ORACLE_BUDGET` when it parses.
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// Sign of the first self-paired Jordan block; later ones alternate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SignConvention {
    #[default]
    Standard,
    Alternate,
}

#[derive(Debug, Clone)]
pub struct JordanRealization {
    family: Family,
    partition: Partition,
    field: PrimeField,
    /// `(i, j)` with `1 ≤ i ≤ d_j`, 0-based `j`.
    basis: Vec<(u32, usize)>,
    beta: Vec<usize>,
    e: Vec<Vector>,
    gram: Vec<Vector>,
}

impl JordanRealization {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(u32, usize)] {
        &self.basis
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn e(&self) -> &[Vector] {
        &self.e
    }

    pub fn gram(&self) -> &[Vector] {
        &self.gram
    }

    pub fn rank_of_e(&self) -> usize {
        self.field.echelon(&self.e).rank()
    }
}

pub fn realize(p: &Partition, f: Family, modulus: u32) -> Result<JordanRealization> {
    realize_with(p, f, modulus, SignConvention::Standard)
}

pub fn realize_with(
    p: &Partition,
    f: Family,
    modulus: u32,
    conv: SignConvention,
) -> Result<JordanRealization> {
    let field = PrimeField::new(modulus)?;
    if !is_valid(p, f) {
        return Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    let d = p.parts();
    let r = d.len();
    let mut basis = Vec::new();
    let mut offset = Vec::with_capacity(r);
    for (j, &dj) in d.iter().enumerate() {
        offset.push(basis.len());
        for i in 1..=dj {
            basis.push((i, j));
        }
    }
    let idx = |i: u32, j: usize| offset[j] + (i as usize - 1);
    let n = basis.len();

    let self_parity = match f {
        Family::B | Family::D => 1,
        Family::C => 0,
    };
    let mut beta = vec![0; r];
    let mut j = 0;
    while j < r {
        if d[j] % 2 == self_parity {
            beta[j] = j;
            j += 1;
        } else {
            assert_eq!(d[j], d[j + 1], "paired Jordan blocks must have equal size");
            beta[j] = j + 1;
            beta[j + 1] = j;
            j += 2;
        }
    }

    let mut e = vec![vec![0u32; n]; n];
    for &(i, j) in &basis {
        if i > 1 {
            e[idx(i - 1, j)][idx(i, j)] = 1;
        }
    }

    let sign = |k: u32| if k % 2 == 0 { 1i64 } else { -1 };
    let eps: i64 = f.epsilon() as i64;
    let mut g = vec![vec![0u32; n]; n];
    let mut sgn: i64 = match conv {
        SignConvention::Standard => 1,
        SignConvention::Alternate => -1,
    };
    for j in 0..r {
        let dj = d[j];
        let b = beta[j];
        if b == j {
            let c = sgn * sign(dj.div_ceil(2));
            sgn = -sgn;
            for i in 1..=dj {
                g[idx(i, j)][idx(dj + 1 - i, j)] = field.from_i64(c * sign(i));
            }
        } else if j < b {
            for i in 1..=dj {
                let k = dj + 1 - i;
                let v = field.from_i64(sign(i));
                g[idx(i, j)][idx(k, b)] = v;
                g[idx(k, b)][idx(i, j)] = field.from_i64(eps * v as i64);
            }
        }
    }

    let real = JordanRealization {
        family: f,
        partition: p.clone(),
        field,
        basis,
        beta,
        e,
        gram: g,
    };
    check_realization(&real);
    Ok(real)
}

fn check_realization(real: &JordanRealization) {
    let f = real.field;
    let n = real.dim();
    let eps = real.family.epsilon() as i64;
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                real.gram[a][b],
                f.from_i64(eps * real.gram[b][a] as i64),
                "form has the wrong symmetry"
            );
            let s: u64 = (0..n)
                .map(|c| {
                    real.e[c][a] as u64 * real.gram[c][b] as u64
                        + real.gram[a][c] as u64 * real.e[c][b] as u64
                })
                .sum();
            assert_eq!(s % f.modulus() as u64, 0, "form is not e-invariant");
        }
    }
    assert_eq!(f.echelon(&real.gram).rank(), n, "form is degenerate");
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CountOutcome {
    Counted { count: u64 },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagCount {
    pub outcome: CountOutcome,
    pub field_size: u32,
    pub levi: LeviType,
    pub nodes: u64,
}

impl FlagCount {
    pub fn count(&self) -> Option<u64> {
        match self.outcome {
            CountOutcome::Counted { count } => Some(count),
            CountOutcome::Skipped { .. } => None,
        }
    }
}

pub fn fiber_point_count(real: &JordanRealization, l: &LeviType) -> Result<FlagCount> {
    fiber_point_count_with_budget(real, l, default_budget())
}

/// Counts chains `U_1 ⊂ … ⊂ U_k` of isotropic subspaces with
/// `dim U_i = p_1 + … + p_i`, `e(U_1) = 0`, `e(U_i) ⊆ U_{i−1}` and `e(U_k^⊥) ⊆ U_k`.
pub fn fiber_point_count_with_budget(
    real: &JordanRealization,
    l: &LeviType,
    budget: u64,
) -> Result<FlagCount> {
    if l.family() != real.family || l.ambient_dim() as usize != real.dim() {
        return Err(Error::InvalidLevi(format!(
            "{} does not fit {} in family {}",
            l, real.partition, real.family
        )));
    }
    let mut search = Search {
        real,
        f: real.field,
        n: real.dim(),
        dims: l.p().to_vec(),
        budget,
        nodes: 0,
        total: 0,
    };
    let finished = search.level(0, Vec::new());
    let outcome = if finished {
        CountOutcome::Counted {
            count: search.total,
        }
    } else {
        CountOutcome::Skipped {
            reason: "budget".into(),
        }
    };
    Ok(FlagCount {
        outcome,
        field_size: real.modulus(),
        levi: l.clone(),
        nodes: search.nodes,
    })
}

struct Search<'a> {
    real: &'a JordanRealization,
    f: PrimeField,
    n: usize,
    dims: Vec<u32>,
    budget: u64,
    nodes: u64,
    total: u64,
}

impl Search<'_> {
    fn perp(&self, u: &[Vector]) -> Vec<Vector> {
        let rows: Vec<Vector> = u
            .iter()
            .map(|v| self.f.vec_mat(v, &self.real.gram))
            .collect();
        self.f.nullspace(&rows, self.n)
    }

    /// `{x : e x ∈ span u}`.
    fn preimage(&self, u: &[Vector]) -> Vec<Vector> {
        let ann = self.f.nullspace(u, self.n);
        let rows: Vec<Vector> = ann
            .iter()
            .map(|w| self.f.vec_mat(w, &self.real.e))
            .collect();
        self.f.nullspace(&rows, self.n)
    }

    fn form(&self, u: &[u32], v: &[u32]) -> u32 {
        self.f.bilinear(&self.real.gram, u, v)
    }

    // Returns false once the budget is exhausted.
    fn level(&mut self, lvl: usize, u: Vec<Vector>) -> bool {
        if lvl == self.dims.len() {
            let ech = self.f.echelon(&u);
            let ok = self
                .perp(&u)
                .iter()
                .all(|v| ech.contains(&self.f.mat_vec(&self.real.e, v)));
            if ok {
                self.total += 1;
            }
            return true;
        }
        let w = self
            .f
            .intersection(&self.preimage(&u), &self.perp(&u), self.n);
        // Complement of span(u) inside w.
        let mut ech = self.f.echelon(&u);
        let comp: Vec<Vector> = w.into_iter().filter(|v| ech.insert(v.clone())).collect();
        let t = self.dims[lvl] as usize;
        if t > comp.len() {
            return true;
        }
        for pivots in combinations(comp.len(), t) {
            let frees: Vec<Vec<usize>> = pivots
                .iter()
                .map(|&pv| {
                    (pv + 1..comp.len())
                        .filter(|c| !pivots.contains(c))
                        .collect()
                })
                .collect();
            let mut rows = Vec::with_capacity(t);
            if !self.rows(lvl, &u, &comp, &pivots, &frees, &mut rows) {
                return false;
            }
        }
        true
    }

    fn rows(
        &mut self,
        lvl: usize,
        u: &[Vector],
        comp: &[Vector],
        pivots: &[usize],
        frees: &[Vec<usize>],
        rows: &mut Vec<Vector>,
    ) -> bool {
        let r = rows.len();
        if r == pivots.len() {
            let mut next = u.to_vec();
            next.extend(rows.iter().cloned());
            return self.level(lvl + 1, next);
        }
        let p = self.f.modulus();
        let mut vals = vec![0u32; frees[r].len()];
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let mut v = comp[pivots[r]].clone();
            for (&col, &c) in frees[r].iter().zip(&vals) {
                if c != 0 {
                    let neg = self.f.neg(c);
                    self.f.axpy(&mut v, neg, &comp[col]);
                }
            }
            let isotropic = self.form(&v, &v) == 0 && rows.iter().all(|o| self.form(&v, o) == 0);
            if isotropic {
                rows.push(v);
                let cont = self.rows(lvl, u, comp, pivots, frees, rows);
                rows.pop();
                if !cont {
                    return false;
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == vals.len() {
                    return true;
                }
                vals[i] += 1;
                if vals[i] < p {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Points of a maximal orthogonal or Lagrangian Grassmannian over `F_p`.
pub fn grassmannian_count(step: &GrassStep, modulus: u32) -> Result<u64> {
    PrimeField::new(modulus)?;
    let e = step.e_polynomial()?;
    Ok(e.eval(modulus as i64) as u64)
}
