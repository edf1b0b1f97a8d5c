//! Reduced Spaltenstein fibers as towers of maximal orthogonal Grassmannians
//! times products of Lagrangian Grassmannians.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::levi::{induced_shape, richardson_orbit_of, LeviType};
use crate::min_richardson::minimal_richardson_orbits;
use crate::partition::{is_valid, Family, Partition};
use crate::EPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GrassKind {
    OG,
    IG,
}

/// `OG(m, N)` or `IG(m, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GrassStep {
    #[serde(skip)]
    pub kind: GrassKind,
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
}

impl GrassStep {
    pub fn og(m: u32, n: u32) -> Self {
        GrassStep {
            kind: GrassKind::OG,
            m,
            n,
        }
    }

    pub fn ig(m: u32, n: u32) -> Self {
        GrassStep {
            kind: GrassKind::IG,
            m,
            n,
        }
    }

    pub fn is_maximal(&self) -> bool {
        match self.kind {
            GrassKind::OG => self.n == 2 * self.m || self.n == 2 * self.m + 1,
            GrassKind::IG => self.n == 2 * self.m,
        }
    }

    fn check(&self) -> Result<()> {
        if self.is_maximal() {
            Ok(())
        } else {
            Err(Error::NonMaximalStep(self.to_string()))
        }
    }

    pub fn dimension(&self) -> Result<u64> {
        self.check()?;
        let m = self.m as u64;
        Ok(match self.kind {
            GrassKind::OG if self.n == 2 * self.m => m * m.saturating_sub(1) / 2,
            _ => m * (m + 1) / 2,
        })
    }

    pub fn e_polynomial(&self) -> Result<EPolynomial> {
        self.check()?;
        let m = self.m as usize;
        Ok(match self.kind {
            GrassKind::OG if self.n == 2 * self.m => {
                if m == 0 {
                    EPolynomial::one()
                } else {
                    EPolynomial::q_product(m - 1).scale(2)
                }
            }
            _ => EPolynomial::q_product(m),
        })
    }

    /// Two components exactly for `OG(m, 2m)` with `m ≥ 1`.
    pub fn is_disconnected(&self) -> bool {
        self.kind == GrassKind::OG && self.m >= 1 && self.n == 2 * self.m
    }
}

impl fmt::Display for GrassStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            GrassKind::OG => "OG",
            GrassKind::IG => "IG",
        };
        write!(f, "{k}({},{})", self.m, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescriptorContext {
    pub orbit: Partition,
    pub richardson: Partition,
    pub levi: LeviType,
    pub split_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationDescriptor {
    pub og_tower: Vec<GrassStep>,
    pub ig_factors: Vec<GrassStep>,
    pub context: Option<DescriptorContext>,
}

#[derive(Serialize)]
struct DescriptorJson<'a> {
    og_tower: &'a [GrassStep],
    ig_factors: &'a [GrassStep],
    dim: u64,
    components: u64,
    e_poly: &'a [i64],
}

impl FibrationDescriptor {
    pub fn steps(&self) -> impl Iterator<Item = &GrassStep> {
        self.og_tower.iter().chain(&self.ig_factors)
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let e = e_polynomial(self)?;
        let j = DescriptorJson {
            og_tower: &self.og_tower,
            ig_factors: &self.ig_factors,
            dim: dimension(self)?,
            components: component_count(self),
            e_poly: e.coeffs(),
        };
        Ok(serde_json::to_value(j).expect("plain data serializes"))
    }
}

impl fmt::Display for FibrationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps: Vec<String> = self.steps().map(|s| s.to_string()).collect();
        if steps.is_empty() {
            f.write_str("point")
        } else {
            f.write_str(&steps.join(" x "))
        }
    }
}

/// `l` such that the induced shape has `2l+1` (B) or `2l` (C, D) leading odd parts.
pub fn split_index(l: &LeviType) -> usize {
    let h = induced_shape(l).odd_head_len;
    match l.family() {
        Family::B => {
            debug_assert!(h % 2 == 1);
            (h - 1) / 2
        }
        Family::C | Family::D => {
            debug_assert!(h % 2 == 0);
            h / 2
        }
    }
}

fn head_len(f: Family, l: usize) -> usize {
    match f {
        Family::B => 2 * l + 1,
        Family::C | Family::D => 2 * l,
    }
}

/// Values with their multiplicities, strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DistinguishedValues {
    pub odd: Vec<(u32, u32)>,
    pub even: Vec<(u32, u32)>,
}

/// A value counts only when all of its occurrences sit in its segment: odd
/// values in the tail, even values in the head. The family decides which side
/// feeds the Lagrangian factors.
pub fn distinguished_values(p: &Partition, f: Family, l: usize) -> Result<DistinguishedValues> {
    let h = head_len(f, l);
    let mut out = DistinguishedValues::default();
    for (v, m) in p.multiplicities().into_iter().rev() {
        let first = p.parts().iter().position(|&x| x == v).expect("present") + 1;
        let last = first + m as usize - 1;
        let in_head = last <= h;
        let in_tail = first > h;
        let odd = v % 2 == 1;
        if !(if odd { in_tail } else { in_head }) {
            continue;
        }
        if odd {
            out.odd.push((v, m));
        } else {
            out.even.push((v, m));
        }
    }
    let lagrangian = match f {
        Family::B | Family::D => &out.even,
        Family::C => &out.odd,
    };
    if let Some(&(_, m)) = lagrangian.iter().find(|(_, m)| m % 2 == 1) {
        return Err(Error::OddLagrangianMultiplicity(m));
    }
    Ok(out)
}

pub fn og_tower(ns: &[u32]) -> Vec<GrassStep> {
    let mut s = 0u32;
    ns.iter()
        .map(|&n| {
            let s2 = s + n;
            let step = GrassStep::og(s2 / 2 - s / 2, s2 - 2 * (s / 2));
            debug_assert!(step.is_maximal());
            s = s2;
            step
        })
        .collect()
}

pub fn ig_factors(ns: &[u32]) -> Result<Vec<GrassStep>> {
    ns.iter()
        .map(|&n| {
            if n % 2 == 1 {
                Err(Error::OddLagrangianMultiplicity(n))
            } else {
                Ok(GrassStep::ig(n / 2, n))
            }
        })
        .collect()
}

/// Descriptor over `p` for the pseudo-polarization `(r, l)`.
pub fn descriptor(
    p: &Partition,
    f: Family,
    r: &Partition,
    l: &LeviType,
) -> Result<FibrationDescriptor> {
    if !is_valid(p, f) {
        return Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    let bad = || Error::NotPseudoPolarization {
        orbit: p.clone(),
        richardson: r.clone(),
        levi: l.literal(),
    };
    if l.family() != f || l.ambient_dim() != p.size() || &richardson_orbit_of(l) != r {
        return Err(bad());
    }
    if !minimal_richardson_orbits(p, f)?.contains(r) {
        return Err(bad());
    }
    let mut d = descriptor_for_levi(p, l)?;
    d.context = Some(DescriptorContext {
        orbit: p.clone(),
        richardson: r.clone(),
        levi: l.clone(),
        split_index: split_index(l),
    });
    Ok(d)
}

/// The tower itself, without checking that `l` polarizes a minimal Richardson orbit of `p`.
pub fn descriptor_for_levi(p: &Partition, l: &LeviType) -> Result<FibrationDescriptor> {
    let f = l.family();
    let dv = distinguished_values(p, f, split_index(l))?;
    let mults = |v: &[(u32, u32)]| v.iter().map(|&(_, m)| m).collect::<Vec<_>>();
    let (og, ig) = match f {
        Family::B | Family::D => (mults(&dv.odd), mults(&dv.even)),
        Family::C => (mults(&dv.even), mults(&dv.odd)),
    };
    Ok(FibrationDescriptor {
        og_tower: og_tower(&og),
        ig_factors: ig_factors(&ig)?,
        context: None,
    })
}

pub fn e_polynomial(d: &FibrationDescriptor) -> Result<EPolynomial> {
    d.steps()
        .try_fold(EPolynomial::one(), |acc, s| Ok(acc * s.e_polynomial()?))
}

/// Total degree in `u, v` of an E-polynomial written in `q = uv`.
pub fn uv_degree(e: &EPolynomial) -> usize {
    2 * e.degree().unwrap_or(0)
}

pub fn component_count(d: &FibrationDescriptor) -> u64 {
    1u64 << d.steps().filter(|s| s.is_disconnected()).count()
}

pub fn dimension(d: &FibrationDescriptor) -> Result<u64> {
    d.steps().map(|s| s.dimension()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lv(s: &str, f: Family) -> LeviType {
        LeviType::parse(s, f).unwrap()
    }

    #[test]
    fn split_index_examples() {
        assert_eq!(split_index(&lv("1;3", Family::B)), 1);
        assert_eq!(split_index(&lv("2;1", Family::B)), 0);
        assert_eq!(split_index(&lv("2;0", Family::C)), 0);
    }

    #[test]
    fn distinguished_examples() {
        let dv = distinguished_values(&p("2,2,1"), Family::B, 1).unwrap();
        assert!(dv.odd.is_empty());
        assert_eq!(dv.even, vec![(2, 2)]);
        let dv = distinguished_values(&p("2,2,1"), Family::B, 0).unwrap();
        assert_eq!(dv.odd, vec![(1, 1)]);
        assert!(dv.even.is_empty());
        let dv = distinguished_values(&p("4,4,4,4,3,3,1"), Family::B, 3).unwrap();
        assert!(dv.odd.is_empty());
        assert_eq!(dv.even, vec![(4, 4)]);
    }

    #[test]
    fn tower_examples() {
        assert_eq!(og_tower(&[2]), vec![GrassStep::og(1, 2)]);
        assert_eq!(
            og_tower(&[3, 1]),
            vec![GrassStep::og(1, 3), GrassStep::og(1, 2)]
        );
        assert_eq!(og_tower(&[1]), vec![GrassStep::og(0, 1)]);
        assert_eq!(ig_factors(&[2]).unwrap(), vec![GrassStep::ig(1, 2)]);
        assert_eq!(ig_factors(&[4]).unwrap(), vec![GrassStep::ig(2, 4)]);
        assert!(ig_factors(&[]).unwrap().is_empty());
        assert_eq!(ig_factors(&[3]), Err(Error::OddLagrangianMultiplicity(3)));
    }

    #[test]
    fn descriptor_examples() {
        let d = descriptor(&p("2,2,1"), Family::B, &p("3,1,1"), &lv("1;3", Family::B)).unwrap();
        assert_eq!(d.to_string(), "IG(1,2)");
        assert_eq!(dimension(&d).unwrap(), 1);
        assert_eq!(component_count(&d), 1);
        assert_eq!(e_polynomial(&d).unwrap().coeffs(), &[1, 1]);

        let d = descriptor(&p("3,1,1"), Family::B, &p("3,1,1"), &lv("2;1", Family::B)).unwrap();
        assert_eq!(d.to_string(), "OG(1,2)");
        assert_eq!(dimension(&d).unwrap(), 0);
        assert_eq!(component_count(&d), 2);
        assert_eq!(e_polynomial(&d).unwrap().coeffs(), &[2]);

        let o = p("4,4,4,4,3,3,1");
        let d = descriptor(&o, Family::B, &p("5,5,3,3,3,3,1"), &lv("2,6;7", Family::B)).unwrap();
        assert_eq!(d.to_string(), "IG(2,4)");
        assert_eq!(dimension(&d).unwrap(), 3);
        assert_eq!(e_polynomial(&d).unwrap().coeffs(), &[1, 1, 1, 1]);
        assert_eq!(
            d.to_json().unwrap().to_string(),
            r#"{"og_tower":[],"ig_factors":[{"m":2,"N":4}],"dim":3,"components":1,"e_poly":[1,1,1,1]}"#
        );

        let d = descriptor(&o, Family::B, &p("5,4,4,4,4,1,1"), &lv("5,6;1", Family::B)).unwrap();
        assert_eq!(d.to_string(), "OG(1,2) x OG(0,1)");
        assert_eq!(e_polynomial(&d).unwrap().coeffs(), &[2]);

        assert!(matches!(
            descriptor(&p("2,2,1"), Family::B, &p("5"), &lv("1,1;1", Family::B)),
            Err(Error::NotPseudoPolarization { .. })
        ));
    }

    #[test]
    fn step_polynomials() {
        assert_eq!(
            FibrationDescriptor {
                og_tower: vec![],
                ig_factors: vec![],
                context: None
            }
            .to_string(),
            "point"
        );
        assert_eq!(
            GrassStep::ig(1, 2).e_polynomial().unwrap().coeffs(),
            &[1, 1]
        );
        assert_eq!(GrassStep::og(1, 2).e_polynomial().unwrap().coeffs(), &[2]);
        assert_eq!(
            GrassStep::ig(2, 4).e_polynomial().unwrap().coeffs(),
            &[1, 1, 1, 1]
        );
        assert!(GrassStep::og(1, 4).e_polynomial().is_err());
        let d = FibrationDescriptor {
            og_tower: og_tower(&[3, 1]),
            ig_factors: vec![],
            context: None,
        };
        assert_eq!(component_count(&d), 2);
    }
}
