//! Block decomposition of orbit partitions, specialness, the Richardson
//! criterion and the order of Lusztig's canonical quotient.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{is_valid, transpose, Family, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlockKind {
    B1,
    #[serde(rename = "B1*")]
    B1Star,
    B2,
    B3,
    C1,
    #[serde(rename = "C1*")]
    C1Star,
    C2,
    D1,
    #[serde(rename = "D1*")]
    D1Star,
    D2,
}

impl BlockKind {
    pub fn name(self) -> &'static str {
        match self {
            BlockKind::B1 => "B1",
            BlockKind::B1Star => "B1*",
            BlockKind::B2 => "B2",
            BlockKind::B3 => "B3",
            BlockKind::C1 => "C1",
            BlockKind::C1Star => "C1*",
            BlockKind::C2 => "C2",
            BlockKind::D1 => "D1",
            BlockKind::D1Star => "D1*",
            BlockKind::D2 => "D2",
        }
    }

    /// Pair of equal odd parts.
    pub fn is_odd_pair(self) -> bool {
        matches!(self, BlockKind::B1 | BlockKind::C1 | BlockKind::D1)
    }

    /// Pair of equal even parts.
    pub fn is_even_pair(self) -> bool {
        matches!(
            self,
            BlockKind::B1Star | BlockKind::C1Star | BlockKind::D1Star
        )
    }

    pub fn family(self) -> Family {
        match self {
            BlockKind::B1 | BlockKind::B1Star | BlockKind::B2 | BlockKind::B3 => Family::B,
            BlockKind::C1 | BlockKind::C1Star | BlockKind::C2 => Family::C,
            BlockKind::D1 | BlockKind::D1Star | BlockKind::D2 => Family::D,
        }
    }

    fn odd_pair(f: Family) -> BlockKind {
        match f {
            Family::B => BlockKind::B1,
            Family::C => BlockKind::C1,
            Family::D => BlockKind::D1,
        }
    }

    fn even_pair(f: Family) -> BlockKind {
        match f {
            Family::B => BlockKind::B1Star,
            Family::C => BlockKind::C1Star,
            Family::D => BlockKind::D1Star,
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One block. `parts` is the literal segment of the partition (weakly decreasing);
/// a B3 block may carry trailing zero pairs when padded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    kind: BlockKind,
    parts: Vec<u32>,
}

impl Block {
    /// Checks the shape of `parts` against `kind`.
    pub fn new(kind: BlockKind, parts: Vec<u32>) -> Result<Self> {
        let b = Block { kind, parts };
        if b.well_formed() {
            Ok(b)
        } else {
            Err(Error::Parse(format!(
                "{:?} is not a legal {} block",
                b.parts, kind
            )))
        }
    }

    pub(crate) fn new_unchecked(kind: BlockKind, parts: Vec<u32>) -> Self {
        debug_assert!(
            Block {
                kind,
                parts: parts.clone()
            }
            .well_formed(),
            "{kind} {parts:?}"
        );
        Block { kind, parts }
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn first(&self) -> u32 {
        self.parts[0]
    }

    pub fn last(&self) -> u32 {
        *self.parts.last().expect("blocks are non-empty")
    }

    /// Odd values: the pair value for X1, `[α₁, α₂]` for B2/D2, `[α]` for B3, the
    /// distinct pair values for C2.
    pub fn alphas(&self) -> Vec<u32> {
        let p = &self.parts;
        match self.kind {
            BlockKind::B1 | BlockKind::C1 | BlockKind::D1 => vec![p[0]],
            BlockKind::B2 | BlockKind::D2 => vec![p[0], self.last()],
            BlockKind::B3 => vec![p[0]],
            BlockKind::C2 => p[1..1 + 2 * self.k()].iter().step_by(2).copied().collect(),
            _ => Vec::new(),
        }
    }

    /// Even values: the pair value for X1*, the distinct β's of B2/B3/D2, `[β₁, β₂]`
    /// for C2 (β₂ left out when it is zero).
    pub fn betas(&self) -> Vec<u32> {
        let p = &self.parts;
        match self.kind {
            BlockKind::B1Star | BlockKind::C1Star | BlockKind::D1Star => vec![p[0]],
            BlockKind::B2 | BlockKind::D2 | BlockKind::B3 => {
                p[1..1 + 2 * self.k()].iter().step_by(2).copied().collect()
            }
            BlockKind::C2 => {
                let mut v = vec![p[0]];
                if self.c2_has_tail() {
                    v.push(self.last());
                }
                v
            }
            _ => Vec::new(),
        }
    }

    /// Number of repeated middle pairs.
    pub fn k(&self) -> usize {
        let n = self.parts.len();
        match self.kind {
            BlockKind::B2 | BlockKind::D2 => (n - 2) / 2,
            BlockKind::B3 | BlockKind::C2 => (n - 1) / 2,
            _ => 0,
        }
    }

    /// Whether a C2 block stores its closing β₂ (false when β₂ = 0).
    pub fn c2_has_tail(&self) -> bool {
        self.kind == BlockKind::C2 && self.parts.len() % 2 == 0
    }

    /// An X1* pair of zeros, used only to pad C and D scans.
    pub(crate) fn zero_pair(f: Family) -> Block {
        Block {
            kind: BlockKind::even_pair(f),
            parts: vec![0, 0],
        }
    }

    /// B3 block with `extra` additional zero pairs appended.
    pub fn padded(&self, extra: usize) -> Block {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat(0).take(2 * extra));
        Block {
            kind: self.kind,
            parts,
        }
    }

    pub fn well_formed(&self) -> bool {
        let p = &self.parts;
        if p.is_empty() || p.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        let odd = |x: u32| x % 2 == 1;
        let even = |x: u32| x % 2 == 0;
        let pairs = |s: &[u32], par: &dyn Fn(u32) -> bool| {
            s.len() % 2 == 0 && s.chunks(2).all(|c| c[0] == c[1] && par(c[0]))
        };
        match self.kind {
            BlockKind::B1 | BlockKind::C1 | BlockKind::D1 => p.len() == 2 && pairs(p, &odd),
            BlockKind::B1Star | BlockKind::C1Star | BlockKind::D1Star => {
                p.len() == 2 && p[0] > 0 && pairs(p, &even)
            }
            BlockKind::B2 | BlockKind::D2 => {
                p.len() >= 2
                    && odd(p[0])
                    && odd(p[p.len() - 1])
                    && p[0] > p[p.len() - 1]
                    && pairs(&p[1..p.len() - 1], &even)
                    && p[1..p.len() - 1]
                        .iter()
                        .all(|&b| b < p[0] && b > p[p.len() - 1])
            }
            BlockKind::B3 => odd(p[0]) && pairs(&p[1..], &even) && p[1..].iter().all(|&b| b < p[0]),
            BlockKind::C2 => {
                if !(even(p[0]) && p[0] > 0) {
                    return false;
                }
                let (mid, tail) = if p.len() % 2 == 0 {
                    (&p[1..p.len() - 1], Some(p[p.len() - 1]))
                } else {
                    (&p[1..], None)
                };
                pairs(mid, &odd)
                    && mid.iter().all(|&a| a < p[0])
                    && match tail {
                        Some(b2) => b2 > 0 && even(b2) && b2 < p[0] && mid.iter().all(|&a| a > b2),
                        None => true,
                    }
            }
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.parts;
        match self.kind {
            BlockKind::B2 | BlockKind::D2 => write!(
                f,
                "{}[{} |{}| {}]",
                self.kind,
                p[0],
                join(&p[1..p.len() - 1]),
                self.last()
            ),
            BlockKind::B3 if p.len() == 1 => write!(f, "B3[{}]", p[0]),
            BlockKind::B3 => write!(f, "B3[{} |{}|]", p[0], join(&p[1..])),
            BlockKind::C2 if p.len() == 1 => write!(f, "C2[{}]", p[0]),
            BlockKind::C2 if self.c2_has_tail() => write!(
                f,
                "C2[{} |{}| {}]",
                p[0],
                join(&p[1..p.len() - 1]),
                self.last()
            ),
            BlockKind::C2 => write!(f, "C2[{} |{}|]", p[0], join(&p[1..])),
            _ => write!(f, "{}[{}]", self.kind, join(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockDecomposition {
    blocks: Vec<Block>,
    family: Family,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

fn require_valid(p: &Partition, f: Family) -> Result<()> {
    if is_valid(p, f) {
        Ok(())
    } else {
        Err(Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        })
    }
}

/// Greedy left-to-right decomposition.
pub fn decompose(p: &Partition, f: Family) -> Result<BlockDecomposition> {
    require_valid(p, f)?;
    Ok(decompose_valid(p, f))
}

pub(crate) fn decompose_valid(p: &Partition, f: Family) -> BlockDecomposition {
    let d = p.parts();
    let n = d.len();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        let a = d[i];
        let next_equal = i + 1 < n && d[i + 1] == a;
        match f {
            Family::B | Family::D => {
                if a % 2 == 0 {
                    blocks.push(Block::new_unchecked(BlockKind::even_pair(f), vec![a, a]));
                    i += 2;
                    continue;
                }
                if next_equal {
                    blocks.push(Block::new_unchecked(BlockKind::odd_pair(f), vec![a, a]));
                    i += 2;
                    continue;
                }
                let mut j = i + 1;
                while j + 1 < n && d[j] % 2 == 0 && d[j] == d[j + 1] {
                    j += 2;
                }
                if j < n {
                    let kind = if f == Family::B {
                        BlockKind::B2
                    } else {
                        BlockKind::D2
                    };
                    blocks.push(Block::new_unchecked(kind, d[i..=j].to_vec()));
                    i = j + 1;
                } else {
                    blocks.push(Block::new_unchecked(BlockKind::B3, d[i..].to_vec()));
                    i = n;
                }
            }
            Family::C => {
                if a % 2 == 1 {
                    blocks.push(Block::new_unchecked(BlockKind::C1, vec![a, a]));
                    i += 2;
                    continue;
                }
                if next_equal {
                    blocks.push(Block::new_unchecked(BlockKind::C1Star, vec![a, a]));
                    i += 2;
                    continue;
                }
                let mut j = i + 1;
                while j + 1 < n && d[j] % 2 == 1 && d[j] == d[j + 1] {
                    j += 2;
                }
                if j < n {
                    blocks.push(Block::new_unchecked(BlockKind::C2, d[i..=j].to_vec()));
                    i = j + 1;
                } else {
                    blocks.push(Block::new_unchecked(BlockKind::C2, d[i..].to_vec()));
                    i = n;
                }
            }
        }
    }
    BlockDecomposition { blocks, family: f }
}

/// Concatenates the blocks, dropping padding zeros.
pub fn reassemble(d: &BlockDecomposition) -> Partition {
    Partition::from_unsorted(d.blocks.iter().flat_map(|b| b.parts.iter().copied()))
}

/// Transpose criterion: D shares the C test.
pub fn is_special_by_transpose(p: &Partition, f: Family) -> bool {
    let target = match f {
        Family::B => Family::B,
        Family::C | Family::D => Family::C,
    };
    // The transpose of a B or C partition has the same size, so the size check
    // only matters for D, where N is even and the C test applies unchanged.
    is_valid(&transpose(p), target)
}

pub fn is_special_by_blocks(d: &BlockDecomposition) -> bool {
    d.blocks.iter().all(|b| match b.kind {
        BlockKind::B1Star => false,
        BlockKind::D2 | BlockKind::C2 => b.k() == 0,
        _ => true,
    })
}

pub fn is_special(p: &Partition, f: Family) -> Result<bool> {
    require_valid(p, f)?;
    let by_t = is_special_by_transpose(p, f);
    debug_assert_eq!(
        by_t,
        is_special_by_blocks(&decompose_valid(p, f)),
        "{p} {f}"
    );
    Ok(by_t)
}

pub fn is_richardson(p: &Partition, f: Family) -> Result<bool> {
    require_valid(p, f)?;
    Ok(is_richardson_blocks(&decompose_valid(p, f)))
}

pub fn is_richardson_blocks(d: &BlockDecomposition) -> bool {
    let bl = &d.blocks;
    match d.family {
        Family::B => richardson_b(bl),
        Family::C => richardson_c(bl),
        Family::D => richardson_d(bl),
    }
}

fn richardson_b(bl: &[Block]) -> bool {
    use BlockKind::*;
    let m = bl.len();
    if bl.iter().any(|b| b.kind == B1Star) {
        return false;
    }
    (0..m).any(|l| {
        let before = bl[..l]
            .iter()
            .all(|b| b.kind == B1 || (b.kind == B2 && b.k() == 0));
        if !before {
            return false;
        }
        if l == m - 1 {
            return true;
        }
        bl[l].kind == B2 && bl[l].k() >= 1 && bl[l + 1..m - 1].iter().all(|b| b.kind == B2)
    })
}

// Adjacent blocks may not share a boundary value of the given parity.
fn boundary_distinct(bl: &[Block], i: usize, parity: u32) -> bool {
    match bl.get(i + 1) {
        None => true,
        Some(next) => {
            let v = bl[i].last();
            !(v == next.first() && v % 2 == parity)
        }
    }
}

fn richardson_c(bl: &[Block]) -> bool {
    use BlockKind::*;
    let m = bl.len();
    if bl.iter().any(|b| b.kind == C2 && b.k() >= 1) {
        return false;
    }
    if bl.iter().all(|b| matches!(b.kind, C1Star | C2)) {
        return true;
    }
    (0..m).any(|l| {
        bl[l].kind == C1
            && (0..l).all(|i| boundary_distinct(bl, i, 0))
            && bl[l + 1..].iter().all(|b| matches!(b.kind, C1Star | C2))
    })
}

fn richardson_d(bl: &[Block]) -> bool {
    use BlockKind::*;
    let m = bl.len();
    if bl.iter().any(|b| b.kind == D2 && b.k() >= 1) {
        return false;
    }
    if bl.iter().all(|b| matches!(b.kind, D1 | D2)) {
        return true;
    }
    (0..m).any(|l| {
        bl[l].kind == D1Star
            && bl[..l].iter().all(|b| matches!(b.kind, D1 | D2))
            && (l + 1..m).all(|i| boundary_distinct(bl, i, 1))
    })
}

/// `2^q` with `q` the number of B2 blocks of a special B partition.
pub fn canonical_quotient_order(p: &Partition) -> Result<u64> {
    if !is_valid(p, Family::B) {
        return Err(Error::WrongFamily {
            expected: "B",
            found: if p.size() % 2 == 0 {
                Family::C
            } else {
                Family::B
            },
        });
    }
    if !is_special(p, Family::B)? {
        return Err(Error::NotSpecial {
            partition: p.clone(),
            family: Family::B,
        });
    }
    let d = decompose_valid(p, Family::B);
    Ok(1u64 << d.count(BlockKind::B2))
}

/// Every segmentation of `p` into legal block shapes obeying the family's
/// placement rules, found by exhaustive search.
pub fn all_segmentations(p: &Partition, f: Family) -> Vec<BlockDecomposition> {
    fn rec(
        d: &[u32],
        start: usize,
        f: Family,
        cur: &mut Vec<Block>,
        out: &mut Vec<BlockDecomposition>,
    ) {
        let n = d.len();
        if start == n {
            let b_ok = f != Family::B || cur.last().is_some_and(|b| b.kind == BlockKind::B3);
            if b_ok {
                out.push(BlockDecomposition {
                    blocks: cur.clone(),
                    family: f,
                });
            }
            return;
        }
        for end in start + 1..=n {
            let seg = d[start..end].to_vec();
            let is_last = end == n;
            for kind in kinds_for(f) {
                let b = Block {
                    kind: *kind,
                    parts: seg.clone(),
                };
                if !b.well_formed() {
                    continue;
                }
                let placement_ok = match kind {
                    BlockKind::B3 => is_last,
                    BlockKind::C2 => b.c2_has_tail() || is_last,
                    _ => true,
                };
                if placement_ok {
                    cur.push(b);
                    rec(d, end, f, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(p.parts(), 0, f, &mut Vec::new(), &mut out);
    out
}

fn kinds_for(f: Family) -> &'static [BlockKind] {
    use BlockKind::*;
    match f {
        Family::B => &[B1, B1Star, B2, B3],
        Family::C => &[C1, C1Star, C2],
        Family::D => &[D1, D1Star, D2],
    }
}
