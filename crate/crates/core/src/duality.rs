//! Springer duality between special orbits of types B and C, and the
//! E-polynomial and seesaw identities for dual pseudo-polarizations.

use serde::Serialize;

use crate::blocks::{canonical_quotient_order, decompose_valid, is_special, BlockKind};
use crate::error::{Error, Result};
use crate::levi::{langlands_dual_levi, polarizations, LeviType};
use crate::min_richardson::minimal_richardson_orbits;
use crate::partition::{enumerate_valid, is_valid, Family, Partition};
use crate::spaltenstein::{component_count, descriptor, dimension, e_polynomial};
use crate::EPolynomial;

fn require_special(p: &Partition, f: Family) -> Result<()> {
    if !is_valid(p, f) {
        return Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    if !is_special(p, f)? {
        return Err(Error::NotSpecial {
            partition: p.clone(),
            family: f,
        });
    }
    Ok(())
}

/// B1 blocks stay, B2 and B3 blocks are replaced by their `T′` forms.
pub fn springer_dual(p: &Partition) -> Result<Partition> {
    require_special(p, Family::B)?;
    let mut out = Vec::new();
    for b in decompose_valid(p, Family::B).blocks() {
        let ps = b.parts();
        match b.kind() {
            BlockKind::B1 => out.extend_from_slice(ps),
            BlockKind::B2 => {
                out.push(ps[0] - 1);
                out.extend_from_slice(&ps[1..ps.len() - 1]);
                out.push(b.last() + 1);
            }
            BlockKind::B3 => {
                out.push(ps[0] - 1);
                out.extend_from_slice(&ps[1..]);
            }
            _ => unreachable!("special B partitions have no B1* block"),
        }
    }
    Ok(Partition::from_unsorted(out))
}

/// Inverse of [`springer_dual`].
pub fn springer_dual_inverse(c: &Partition) -> Result<Partition> {
    require_special(c, Family::C)?;
    let guess = blockwise_inverse(c);
    if springer_dual(&guess).ok().as_ref() == Some(c) {
        return Ok(guess);
    }
    springer_dual_inverse_search(c)
}

// Odd pairs come back as B1 blocks. The even parts split into chunks at every
// even position 2i with e_{2i} > e_{2i+1}; even chunks undo B2 blocks and an
// odd final chunk undoes B3 (otherwise B3 = [1]).
fn blockwise_inverse(c: &Partition) -> Partition {
    let mut out: Vec<u32> = c.parts().iter().copied().filter(|x| x % 2 == 1).collect();
    let evens: Vec<u32> = c.parts().iter().copied().filter(|x| x % 2 == 0).collect();
    let mut chunks: Vec<&[u32]> = Vec::new();
    let mut start = 0;
    let mut i = 1;
    while i < evens.len() {
        // 0-based i is the 1-based even position i+1.
        if i + 1 < evens.len() && evens[i] > evens[i + 1] {
            chunks.push(&evens[start..=i]);
            start = i + 1;
        }
        i += 2;
    }
    if start < evens.len() {
        chunks.push(&evens[start..]);
    }
    let mut has_b3 = false;
    for ch in chunks {
        out.push(ch[0] + 1);
        if ch.len() % 2 == 0 {
            out.extend_from_slice(&ch[1..ch.len() - 1]);
            out.push(ch[ch.len() - 1] - 1);
        } else {
            out.extend_from_slice(&ch[1..]);
            has_b3 = true;
        }
    }
    if !has_b3 {
        out.push(1);
    }
    Partition::from_unsorted(out)
}

/// Exhaustive search for the special B preimage.
pub fn springer_dual_inverse_search(c: &Partition) -> Result<Partition> {
    require_special(c, Family::C)?;
    enumerate_valid(c.size() + 1, Family::B)?
        .into_iter()
        .filter(|b| is_special(b, Family::B).unwrap_or(false))
        .find(|b| springer_dual(b).ok().as_ref() == Some(c))
        .ok_or_else(|| Error::NoPreimage(c.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalPair {
    pub r_b: Partition,
    pub r_c: Partition,
    pub polarization_pairs: Vec<(LeviType, LeviType)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualPair {
    pub b_orbit: Partition,
    pub c_orbit: Partition,
    pub min_richardson_pairs: Vec<MinimalPair>,
    /// Failed consistency checks; empty when the pair is well formed.
    pub problems: Vec<String>,
}

impl DualPair {
    pub fn is_consistent(&self) -> bool {
        self.problems.is_empty()
    }
}

pub fn dual_pair(b: &Partition) -> Result<DualPair> {
    let c = springer_dual(b)?;
    let mut problems = Vec::new();
    let rb = minimal_richardson_orbits(b, Family::B)?;
    let mut rc = minimal_richardson_orbits(&c, Family::C)?;
    let mut images = Vec::new();
    for r in &rb {
        images.push(springer_dual(r)?);
    }
    {
        let mut a = images.clone();
        a.sort();
        rc.sort();
        if a != rc {
            problems.push(format!(
                "minimal Richardson orbits do not commute with the dual: S({:?}) vs {:?}",
                rb.iter().map(|r| r.literal()).collect::<Vec<_>>(),
                rc.iter().map(|r| r.literal()).collect::<Vec<_>>()
            ));
        }
    }
    let mut pairs = Vec::new();
    for (r_b, r_c) in rb.into_iter().zip(images) {
        let pb = polarizations(&r_b, Family::B)?;
        let pc = polarizations(&r_c, Family::C).unwrap_or_default();
        let mut polarization_pairs = Vec::new();
        for l in pb {
            let lc = langlands_dual_levi(&l)?;
            if !pc.contains(&lc) {
                problems.push(format!(
                    "{lc} does not polarize {r_c} although {l} polarizes {r_b}"
                ));
            }
            polarization_pairs.push((l, lc));
        }
        if polarization_pairs.len() != pc.len() {
            problems.push(format!(
                "{} has {} polarizations but {} has {}",
                r_b,
                polarization_pairs.len(),
                r_c,
                pc.len()
            ));
        }
        pairs.push(MinimalPair {
            r_b,
            r_c,
            polarization_pairs,
        });
    }
    Ok(DualPair {
        b_orbit: b.clone(),
        c_orbit: c,
        min_richardson_pairs: pairs,
        problems,
    })
}

/// Both fibers of one Langlands-dual pseudo-polarization pair and every
/// quantity the two identities use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingRecord {
    pub r_b: Partition,
    pub r_c: Partition,
    pub l_b: LeviType,
    pub l_c: LeviType,
    pub fiber_b: serde_json::Value,
    pub fiber_c: serde_json::Value,
    pub components_b: u64,
    pub components_c: u64,
    pub product: u64,
    pub abar: u64,
    pub e_b: EPolynomial,
    pub e_c: EPolynomial,
    pub dim_b: u64,
    pub dim_c: u64,
    pub seesaw: bool,
    pub e_equal: bool,
}

pub fn pairing_records(dp: &DualPair) -> Result<Vec<PairingRecord>> {
    let abar = canonical_quotient_order(&dp.b_orbit)?;
    let mut out = Vec::new();
    for mp in &dp.min_richardson_pairs {
        for (l_b, l_c) in &mp.polarization_pairs {
            let db = descriptor(&dp.b_orbit, Family::B, &mp.r_b, l_b)?;
            let dc = descriptor(&dp.c_orbit, Family::C, &mp.r_c, l_c)?;
            let (cb, cc) = (component_count(&db), component_count(&dc));
            let (eb, ec) = (e_polynomial(&db)?, e_polynomial(&dc)?);
            let e_equal = match (eb.div_exact(cb as i64), ec.div_exact(cc as i64)) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            };
            out.push(PairingRecord {
                r_b: mp.r_b.clone(),
                r_c: mp.r_c.clone(),
                l_b: l_b.clone(),
                l_c: l_c.clone(),
                fiber_b: db.to_json()?,
                fiber_c: dc.to_json()?,
                components_b: cb,
                components_c: cc,
                product: cb * cc,
                abar,
                dim_b: dimension(&db)?,
                dim_c: dimension(&dc)?,
                e_b: eb,
                e_c: ec,
                seesaw: cb * cc == abar,
                e_equal,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub b_orbit: Partition,
    pub c_orbit: Partition,
    pub records: Vec<PairingRecord>,
    pub problems: Vec<String>,
    pub pass: bool,
}

/// `#components(B) · #components(C) = #Ā` for every dual pairing.
pub fn seesaw_check(dp: &DualPair) -> Result<CheckReport> {
    let records = pairing_records(dp)?;
    let pass = dp.is_consistent() && records.iter().all(|r| r.seesaw);
    Ok(CheckReport {
        b_orbit: dp.b_orbit.clone(),
        c_orbit: dp.c_orbit.clone(),
        records,
        problems: dp.problems.clone(),
        pass,
    })
}

/// `E_B / #components(B) = E_C / #components(C)` with exact division.
pub fn epoly_equality_check(dp: &DualPair) -> Result<CheckReport> {
    let records = pairing_records(dp)?;
    let pass = dp.is_consistent() && records.iter().all(|r| r.e_equal);
    Ok(CheckReport {
        b_orbit: dp.b_orbit.clone(),
        c_orbit: dp.c_orbit.clone(),
        records,
        problems: dp.problems.clone(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(springer_dual(&p("7")).unwrap(), p("6"));
        assert_eq!(springer_dual(&p("3,1,1")).unwrap(), p("2,2"));
        assert_eq!(springer_dual(&p("3,3,1,1,1")).unwrap(), p("3,3,1,1"));
        assert!(matches!(
            springer_dual(&p("2,2,1")),
            Err(Error::NotSpecial { .. })
        ));
        assert!(springer_dual(&p("2,2")).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(springer_dual_inverse(&p("2,2")).unwrap(), p("3,1,1"));
        assert_eq!(springer_dual_inverse(&p("6")).unwrap(), p("7"));
        assert_eq!(
            springer_dual_inverse(&p("3,3,1,1")).unwrap(),
            p("3,3,1,1,1")
        );
        assert_eq!(springer_dual_inverse_search(&p("2,2")).unwrap(), p("3,1,1"));
    }

    #[test]
    fn blockwise_inverse_needs_no_fallback() {
        for n in (1..=15).step_by(2) {
            for b in enumerate_valid(n, Family::B).unwrap() {
                if !is_special(&b, Family::B).unwrap() {
                    continue;
                }
                let c = springer_dual(&b).unwrap();
                assert_eq!(blockwise_inverse(&c), b, "{c}");
            }
        }
    }

    #[test]
    fn dual_pair_examples() {
        let dp = dual_pair(&p("3,1,1")).unwrap();
        assert!(dp.is_consistent());
        assert_eq!(dp.c_orbit, p("2,2"));
        let pairs: Vec<(String, String)> = dp.min_richardson_pairs[0]
            .polarization_pairs
            .iter()
            .map(|(a, b)| (a.literal(), b.literal()))
            .collect();
        assert_eq!(
            pairs,
            vec![("1;3".into(), "1;2".into()), ("2;1".into(), "2;0".into())]
        );

        let dp = dual_pair(&p("7")).unwrap();
        assert_eq!(
            dp.min_richardson_pairs[0].polarization_pairs[0].0.literal(),
            "1,1,1;1"
        );
        assert_eq!(
            dp.min_richardson_pairs[0].polarization_pairs[0].1.literal(),
            "1,1,1;0"
        );

        let dp = dual_pair(&p("3,3,1,1,1")).unwrap();
        assert_eq!(
            dp.min_richardson_pairs[0].polarization_pairs[0].0.literal(),
            "2;5"
        );
        assert_eq!(
            dp.min_richardson_pairs[0].polarization_pairs[0].1.literal(),
            "2;4"
        );
    }

    #[test]
    fn seesaw_examples() {
        let dp = dual_pair(&p("3,1,1")).unwrap();
        let rep = seesaw_check(&dp).unwrap();
        assert!(rep.pass);
        let counts: Vec<(u64, u64)> = rep
            .records
            .iter()
            .map(|r| (r.components_b, r.components_c))
            .collect();
        assert_eq!(counts, vec![(1, 2), (2, 1)]);
        assert!(rep.records.iter().all(|r| r.product == 2 && r.abar == 2));
        assert!(epoly_equality_check(&dp).unwrap().pass);

        let rep = seesaw_check(&dual_pair(&p("3,3,1,1,1")).unwrap()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.records[0].product, 1);
        assert!(
            epoly_equality_check(&dual_pair(&p("9")).unwrap())
                .unwrap()
                .pass
        );
    }
}
