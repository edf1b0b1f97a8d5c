//! Flag types of isotropic flags, induction from the zero orbit of a Levi,
//! and polarizations of Richardson orbits.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{all_partitions, collapse, is_valid, Family, Partition};

/// `(p_1 ≤ … ≤ p_k; q)` with `2 Σ p_i + q = N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeviType {
    p: Vec<u32>,
    q: u32,
    family: Family,
}

impl LeviType {
    /// Sorts `p` ascending and checks the parity of `q` and admissibility.
    pub fn new(mut p: Vec<u32>, q: u32, family: Family) -> Result<Self> {
        if p.contains(&0) {
            return Err(Error::InvalidLevi(format!("zero block size in {p:?}")));
        }
        p.sort_unstable();
        let want_odd = family == Family::B;
        if (q % 2 == 1) != want_odd {
            return Err(Error::InvalidLevi(format!(
                "q = {q} has the wrong parity for family {family}"
            )));
        }
        if family != Family::C && q == 2 {
            return Err(Error::InvalidLevi(format!(
                "q = 2 is not admissible for family {family}"
            )));
        }
        Ok(LeviType { p, q, family })
    }

    /// Parses `2,5;7` or `;7`.
    pub fn parse(s: &str, family: Family) -> Result<Self> {
        let (ps, qs) = s
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("Levi type {s:?} lacks ';'")))?;
        let parse_num = |t: &str| -> Result<u32> {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad number {t:?} in Levi type {s:?}")))
        };
        let p = if ps.trim().is_empty() {
            Vec::new()
        } else {
            ps.split(',').map(parse_num).collect::<Result<Vec<_>>>()?
        };
        LeviType::new(p, parse_num(qs)?, family)
    }

    pub fn p(&self) -> &[u32] {
        &self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn ambient_dim(&self) -> u32 {
        2 * self.p.iter().sum::<u32>() + self.q
    }

    pub fn literal(&self) -> String {
        let ps: Vec<String> = self.p.iter().map(|x| x.to_string()).collect();
        format!("{};{}", ps.join(","), self.q)
    }
}

impl fmt::Display for LeviType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.literal())
    }
}

impl Serialize for LeviType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.literal())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedShape {
    pub raw: Partition,
    pub odd_head_len: usize,
}

/// `raw_j = 2·#{i : p_i ≥ j} + [j ≤ q]`.
pub fn induced_shape(l: &LeviType) -> InducedShape {
    let top = l.p.iter().copied().chain([l.q]).max().unwrap_or(0);
    let raw: Vec<u32> = (1..=top)
        .map(|j| 2 * l.p.iter().filter(|&&x| x >= j).count() as u32 + u32::from(j <= l.q))
        .filter(|&x| x > 0)
        .collect();
    let odd_head_len = raw.iter().take_while(|&&x| x % 2 == 1).count();
    debug_assert!(raw[odd_head_len..].iter().all(|x| x % 2 == 0));
    InducedShape {
        raw: Partition::from_unsorted(raw),
        odd_head_len,
    }
}

pub fn richardson_orbit_of(l: &LeviType) -> Partition {
    collapse(&induced_shape(l).raw, l.family).expect("induced shape has the ambient size")
}

/// All admissible flag types of ambient dimension `n`, sorted.
pub fn levi_types(n: u32, f: Family) -> Vec<LeviType> {
    let mut out = Vec::new();
    for s in 0..=n / 2 {
        let q = n - 2 * s;
        for part in all_partitions(s) {
            if let Ok(l) = LeviType::new(part.into_parts(), q, f) {
                out.push(l);
            }
        }
    }
    out.sort();
    out
}

pub fn polarizations(p: &Partition, f: Family) -> Result<Vec<LeviType>> {
    if !is_valid(p, f) {
        return Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    let pols: Vec<LeviType> = levi_types(p.size(), f)
        .into_iter()
        .filter(|l| &richardson_orbit_of(l) == p)
        .collect();
    if pols.is_empty() {
        return Err(Error::NotRichardson {
            partition: p.clone(),
            family: f,
        });
    }
    Ok(pols)
}

pub fn is_richardson_via_induction(p: &Partition, f: Family) -> bool {
    is_valid(p, f)
        && levi_types(p.size(), f)
            .iter()
            .any(|l| &richardson_orbit_of(l) == p)
}

/// `(p; 2l+1)_B ↔ (p; 2l)_C`.
pub fn langlands_dual_levi(l: &LeviType) -> Result<LeviType> {
    match l.family {
        Family::B => LeviType::new(l.p.clone(), l.q - 1, Family::C),
        Family::C => LeviType::new(l.p.clone(), l.q + 1, Family::B),
        Family::D => Err(Error::WrongFamily {
            expected: "B or C",
            found: Family::D,
        }),
    }
}
