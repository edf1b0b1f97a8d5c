//! Minimal Richardson orbits above a given orbit, built from block
//! modifications, and the pseudo-polarizations they carry.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::blocks::{decompose_valid, Block, BlockKind};
use crate::error::{Error, Result};
use crate::levi::{levi_types, polarizations, richardson_orbit_of, LeviType};
use crate::partition::{collapse, dominated_by, is_valid, Family, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    Circ,
    Prime,
    DoublePrime,
}

impl Variant {
    fn name(self) -> &'static str {
        match self {
            Variant::Circ => "T°",
            Variant::Prime => "T′",
            Variant::DoublePrime => "T″",
        }
    }
}

/// The three modified forms of a block. Entries may be negative only for
/// zero padding blocks, which never reach a candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModifiedBlocks {
    pub source: Block,
    pub circ: Option<Vec<i64>>,
    pub prime: Option<Vec<i64>>,
    pub double_prime: Option<Vec<i64>>,
}

impl ModifiedBlocks {
    pub fn variant(&self, v: Variant) -> Result<&[i64]> {
        let slot = match v {
            Variant::Circ => &self.circ,
            Variant::Prime => &self.prime,
            Variant::DoublePrime => &self.double_prime,
        };
        slot.as_deref().ok_or_else(|| Error::UndefinedVariant {
            kind: self.source.to_string(),
            variant: v.name(),
        })
    }
}

fn desc(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

// β+1, β−1 for each middle pair value, re-sorted.
fn split_pairs(vals: &[i64]) -> Vec<i64> {
    desc(vals.iter().flat_map(|&b| [b + 1, b - 1]).collect())
}

pub fn modify_block(b: &Block, f: Family) -> Result<ModifiedBlocks> {
    if b.kind().family() != f {
        return Err(Error::WrongFamily {
            expected: match b.kind().family() {
                Family::B => "B",
                Family::C => "C",
                Family::D => "D",
            },
            found: f,
        });
    }
    let ps: Vec<i64> = b.parts().iter().map(|&x| x as i64).collect();
    let first = ps[0];
    let last = *ps.last().expect("non-empty");
    let mids: Vec<i64> = if ps.len() > 2 {
        ps[1..ps.len() - 1].iter().step_by(2).copied().collect()
    } else {
        Vec::new()
    };
    let cat = |head: Vec<i64>, mid: &[i64], tail: Vec<i64>| -> Vec<i64> {
        head.into_iter()
            .chain(mid.iter().copied())
            .chain(tail)
            .collect()
    };
    let (circ, prime, double_prime) = match b.kind() {
        BlockKind::B1 | BlockKind::C1 | BlockKind::D1 => (
            None,
            Some(vec![first + 1, first - 1]),
            Some(vec![first, first]),
        ),
        BlockKind::B1Star => (
            Some(vec![first + 1, first]),
            Some(vec![first, first]),
            Some(vec![first + 1, first - 1]),
        ),
        BlockKind::C1Star | BlockKind::D1Star => (
            Some(vec![first, first]),
            Some(vec![first, first]),
            Some(vec![first + 1, first - 1]),
        ),
        BlockKind::B2 => {
            let inner = &ps[1..ps.len() - 1];
            (
                Some(cat(vec![first], inner, vec![last + 1])),
                Some(cat(vec![first - 1], inner, vec![last + 1])),
                Some(cat(vec![first], &split_pairs(&mids), vec![last])),
            )
        }
        BlockKind::B3 => {
            let inner = &ps[1..];
            (
                Some(ps.clone()),
                Some(cat(vec![first - 1], inner, vec![])),
                None,
            )
        }
        BlockKind::D2 => {
            let inner = &ps[1..ps.len() - 1];
            let circ = if inner.is_empty() {
                None
            } else {
                Some(cat(vec![first, inner[0] + 1], &inner[1..], vec![last - 1]))
            };
            (
                circ,
                Some(cat(vec![first + 1], inner, vec![last - 1])),
                Some(cat(vec![first], &split_pairs(&mids), vec![last])),
            )
        }
        BlockKind::C2 => {
            let (alphas, beta2): (Vec<i64>, Option<i64>) = if b.c2_has_tail() {
                (ps[1..ps.len() - 1].to_vec(), Some(last))
            } else {
                (ps[1..].to_vec(), None)
            };
            let pair_vals: Vec<i64> = alphas.iter().step_by(2).copied().collect();
            let prime = cat(
                vec![first],
                &split_pairs(&pair_vals),
                vec![beta2.unwrap_or(0)],
            );
            // With β₂ = 0 omitted, the −1 lands on the block's own last part.
            let dp = match beta2 {
                Some(b2) => cat(vec![first + 1], &alphas, vec![b2 - 1]),
                None => {
                    let mut v = cat(vec![first + 1], &alphas, vec![]);
                    *v.last_mut().expect("non-empty") -= 1;
                    v
                }
            };
            (Some(dp.clone()), Some(prime), Some(dp))
        }
    };
    Ok(ModifiedBlocks {
        source: b.clone(),
        circ,
        prime,
        double_prime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IndexEntry {
    /// 1-based block index over the padded decomposition.
    pub block: usize,
    /// 1-based witness position `l`.
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSet {
    pub entries: Vec<IndexEntry>,
}

struct Padded {
    blocks: Vec<Block>,
    parts: Vec<u32>,
    owner: Vec<usize>,
}

fn padded_blocks(p: &Partition, f: Family) -> Padded {
    let mut blocks = decompose_valid(p, f).blocks().to_vec();
    match f {
        Family::B => {
            let last = blocks.pop().expect("a B decomposition ends in B3");
            blocks.push(last.padded(2));
        }
        Family::C | Family::D => {
            blocks.push(Block::zero_pair(f));
            blocks.push(Block::zero_pair(f));
        }
    }
    let mut parts = Vec::new();
    let mut owner = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &x in b.parts() {
            parts.push(x);
            owner.push(i);
        }
    }
    Padded {
        blocks,
        parts,
        owner,
    }
}

pub fn index_set(p: &Partition, f: Family) -> Result<IndexSet> {
    if !is_valid(p, f) {
        return Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    Ok(index_set_of(&padded_blocks(p, f), f))
}

fn index_set_of(pad: &Padded, f: Family) -> IndexSet {
    let n = pad.parts.len();
    let at = |i: usize| pad.parts[i - 1];
    // B, C: witness at (2l, 2l+1), odd pair at (2l'+1, 2l'+2). D shifts both by one.
    let shift = usize::from(f == Family::D);
    let witness_pos = |l: usize| 2 * l - shift;
    let is_witness = |l: usize| {
        let i = witness_pos(l);
        i + 1 <= n && at(i) == at(i + 1) && at(i) % 2 == 0
    };
    let is_odd_pair = |l: usize| {
        let i = 2 * l + 1 - shift;
        i >= 1 && i + 1 <= n && at(i) == at(i + 1) && at(i) % 2 == 1
    };
    let mut entries = Vec::new();
    let mut prev: Option<usize> = None;
    for l in 1..=n / 2 {
        if !is_witness(l) {
            continue;
        }
        let qualifies = match prev {
            None => true,
            Some(pl) => (pl + 1..l).any(is_odd_pair),
        };
        if qualifies {
            entries.push(IndexEntry {
                block: pad.owner[witness_pos(l) - 1] + 1,
                witness: l,
            });
            prev = Some(l);
        }
    }
    IndexSet { entries }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalRichardson {
    pub orbit: Partition,
    pub block: usize,
    pub witness: usize,
}

impl fmt::Display for MinimalRichardson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (from block {}, witness l={})",
            self.orbit, self.block, self.witness
        )
    }
}

/// Pre-collapse candidate for one index-set entry: T″ before, T° at, T′ after.
fn candidate(pad: &Padded, f: Family, entry: IndexEntry, n: u32) -> Result<Partition> {
    let at = entry.block - 1;
    let mut parts: Vec<i64> = Vec::new();
    for (i, b) in pad.blocks.iter().enumerate() {
        let v = match i.cmp(&at) {
            std::cmp::Ordering::Less => Variant::DoublePrime,
            std::cmp::Ordering::Equal => Variant::Circ,
            std::cmp::Ordering::Greater => Variant::Prime,
        };
        parts.extend_from_slice(modify_block(b, f)?.variant(v)?);
    }
    let cand = Partition::from_signed(parts).ok_or_else(|| Error::UndefinedVariant {
        kind: format!("{} at block {}", f, entry.block),
        variant: "negative part",
    })?;
    if cand.size() != n {
        return Err(Error::UndefinedVariant {
            kind: format!("{} at block {}", f, entry.block),
            variant: "size change",
        });
    }
    Ok(cand)
}

/// Minimal Richardson orbits with the block and witness that produced them,
/// in construction order.
pub fn minimal_richardson_with_witnesses(
    p: &Partition,
    f: Family,
) -> Result<Vec<MinimalRichardson>> {
    if !is_valid(p, f) {
        return Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    let pad = padded_blocks(p, f);
    let mut out: Vec<MinimalRichardson> = Vec::new();
    for entry in index_set_of(&pad, f).entries {
        let orbit = collapse(&candidate(&pad, f, entry, p.size())?, f)?;
        if out.iter().all(|m| m.orbit != orbit) {
            out.push(MinimalRichardson {
                orbit,
                block: entry.block,
                witness: entry.witness,
            });
        }
    }
    Ok(out)
}

pub fn minimal_richardson_orbits(p: &Partition, f: Family) -> Result<Vec<Partition>> {
    Ok(minimal_richardson_with_witnesses(p, f)?
        .into_iter()
        .map(|m| m.orbit)
        .collect())
}

pub fn pseudo_polarizations(p: &Partition, f: Family) -> Result<Vec<(Partition, LeviType)>> {
    let mut out = Vec::new();
    for r in minimal_richardson_orbits(p, f)? {
        for l in polarizations(&r, f)? {
            out.push((r.clone(), l));
        }
    }
    Ok(out)
}

/// Dominance-minimal induced orbits above `p`, by enumeration. Sorted descending.
pub fn minimal_richardson_bruteforce(p: &Partition, f: Family) -> Result<Vec<Partition>> {
    if !is_valid(p, f) {
        return Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    let above: BTreeSet<Partition> = levi_types(p.size(), f)
        .iter()
        .map(richardson_orbit_of)
        .filter(|r| dominated_by(p, r))
        .collect();
    let mut mins: Vec<Partition> = above
        .iter()
        .filter(|r| !above.iter().any(|w| w != *r && dominated_by(w, r)))
        .cloned()
        .collect();
    mins.sort_unstable_by(|a, b| b.cmp(a));
    Ok(mins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::decompose;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn block(s: &str, f: Family, i: usize) -> Block {
        decompose(&p(s), f).unwrap().blocks()[i].clone()
    }

    #[test]
    fn modification_examples() {
        let m = modify_block(&block("3,3,1", Family::B, 0), Family::B).unwrap();
        assert_eq!(m.variant(Variant::Prime).unwrap(), &[4, 2]);
        assert_eq!(m.variant(Variant::DoublePrime).unwrap(), &[3, 3]);
        assert!(m.variant(Variant::Circ).is_err());

        let m = modify_block(&block("2,2,1", Family::B, 0), Family::B).unwrap();
        assert_eq!(m.circ.as_deref().unwrap(), &[3, 2]);
        assert_eq!(m.prime.as_deref().unwrap(), &[2, 2]);
        assert_eq!(m.double_prime.as_deref().unwrap(), &[3, 1]);

        let m = modify_block(&block("5,4,4,3,1", Family::B, 0), Family::B).unwrap();
        assert_eq!(m.double_prime.as_deref().unwrap(), &[5, 5, 3, 3]);
        assert_eq!(m.prime.as_deref().unwrap(), &[4, 4, 4, 4]);

        let m = modify_block(&block("5,2,2", Family::B, 0), Family::B).unwrap();
        assert_eq!(m.prime.as_deref().unwrap(), &[4, 2, 2]);
        assert!(m.double_prime.is_none());

        let m = modify_block(&block("3,1", Family::D, 0), Family::D).unwrap();
        assert!(m.circ.is_none());
        assert_eq!(m.prime.as_deref().unwrap(), &[4, 0]);

        let m = modify_block(&block("4,3,3", Family::C, 0), Family::C).unwrap();
        assert_eq!(m.double_prime.as_deref().unwrap(), &[5, 3, 2]);
        assert_eq!(m.prime.as_deref().unwrap(), &[4, 4, 2, 0]);

        assert!(modify_block(&block("3,3,1", Family::B, 0), Family::C).is_err());
    }

    #[test]
    fn index_set_examples() {
        let e = |s: &str| -> Vec<(usize, usize)> {
            index_set(&p(s), Family::B)
                .unwrap()
                .entries
                .iter()
                .map(|e| (e.block, e.witness))
                .collect()
        };
        assert_eq!(e("2,2,1"), vec![(2, 2)]);
        assert_eq!(e("4,4,4,4,3,3,1"), vec![(1, 1), (4, 4)]);
        assert_eq!(e("5"), vec![(1, 1)]);
    }

    #[test]
    fn minimal_richardson_examples() {
        let m = |s: &str| minimal_richardson_orbits(&p(s), Family::B).unwrap();
        assert_eq!(m("2,2,1"), vec![p("3,1,1")]);
        assert_eq!(
            m("4,4,4,4,3,3,1"),
            vec![p("5,4,4,4,4,1,1"), p("5,5,3,3,3,3,1")]
        );
        assert_eq!(m("2,2,2,2,1"), vec![p("3,2,2,1,1")]);
        assert_eq!(m("1,1,1,1,1"), vec![p("1,1,1,1,1")]);
        let w = minimal_richardson_with_witnesses(&p("2,2,1"), Family::B).unwrap();
        assert_eq!(w[0].to_string(), "[3,1,1] (from block 2, witness l=2)");
    }

    #[test]
    fn bruteforce_examples() {
        let m = |s: &str| minimal_richardson_bruteforce(&p(s), Family::B).unwrap();
        assert_eq!(m("2,2,1"), vec![p("3,1,1")]);
        assert_eq!(m("1,1,1,1,1"), vec![p("1,1,1,1,1")]);
        assert_eq!(m("2,2,2,2,1"), vec![p("3,2,2,1,1")]);
    }

    #[test]
    fn pseudo_polarization_examples() {
        let pp = |s: &str| -> Vec<(String, String)> {
            pseudo_polarizations(&p(s), Family::B)
                .unwrap()
                .into_iter()
                .map(|(r, l)| (r.literal(), l.literal()))
                .collect()
        };
        let own = |r: &str, l: &str| (r.to_string(), l.to_string());
        assert_eq!(pp("2,2,1"), vec![own("3,1,1", "1;3"), own("3,1,1", "2;1")]);
        assert_eq!(pp("2,2,2,2,1"), vec![own("3,2,2,1,1", "4;1")]);
        assert!(pp("5,5,3,3,3,3,1").contains(&own("5,5,3,3,3,3,1", "2,6;7")));
    }
}
