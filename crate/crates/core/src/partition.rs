//! Partitions labelling nilpotent orbits of `so(2n+1)`, `sp(2n)` and `so(2n)`.
//!
//! A partition is valid for a family when every part of the "wrong" parity
//! (even parts for B and D, odd parts for C) occurs an even number of times
//! and the total has the parity of the ambient dimension.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::B, Family::C, Family::D];

    /// +1 for the orthogonal families, -1 for the symplectic one.
    pub fn epsilon(self) -> i32 {
        match self {
            Family::B | Family::D => 1,
            Family::C => -1,
        }
    }

    /// Parity (0 = even, 1 = odd) of the parts that must come with even multiplicity.
    pub fn paired_parity(self) -> u32 {
        match self {
            Family::B | Family::D => 0,
            Family::C => 1,
        }
    }

    pub fn accepts_size(self, n: u32) -> bool {
        match self {
            Family::B => n % 2 == 1,
            Family::C | Family::D => n % 2 == 0,
        }
    }

    /// Ambient dimension of the natural representation at the given rank.
    pub fn dimension_at_rank(self, rank: u32) -> u32 {
        match self {
            Family::B => 2 * rank + 1,
            Family::C | Family::D => 2 * rank,
        }
    }

    pub fn rank_of_dimension(self, n: u32) -> u32 {
        n / 2
    }

    pub fn letter(self) -> char {
        match self {
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!(
                "unknown family {other:?}, expected B, C or D"
            ))),
        }
    }
}

/// A weakly decreasing list of positive parts. Zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts that must already be positive and weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "parts {parts:?} are not in non-increasing order"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Like [`Partition::from_unsorted`] but over signed parts; `None` if any part is negative.
    pub fn from_signed<I: IntoIterator<Item = i64>>(parts: I) -> Option<Self> {
        let mut v = Vec::new();
        for p in parts {
            if p < 0 {
                return None;
            }
            v.push(p as u32);
        }
        Some(Self::from_unsorted(v))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part at 1-based position `i`, with implicit zero padding.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, value: u32) -> u32 {
        self.0.iter().filter(|&&p| p == value).count() as u32
    }

    /// Number of odd parts.
    pub fn odd_count(&self) -> u32 {
        self.0.iter().filter(|&&p| p % 2 == 1).count() as u32
    }

    /// Comma separated literal, e.g. `5,4,4,1`.
    pub fn literal(&self) -> String {
        self.0
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `[1^n]`.
    pub fn ones(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.literal())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `5,4,4,1`. Brackets and surrounding whitespace are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if body.is_empty() {
            return Err(Error::Parse("empty partition literal".into()));
        }
        let mut parts = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {tok:?} in {s:?}")))?;
            if v <= 0 {
                return Err(Error::Parse(format!("part {v} in {s:?} is not positive")));
            }
            parts.push(v as u32);
        }
        Partition::new(parts)
    }
}

/// Which of the two orbits a very even type D partition labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VeryEvenLabel {
    I,
    II,
}

impl fmt::Display for VeryEvenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VeryEvenLabel::I => write!(f, "I"),
            VeryEvenLabel::II => write!(f, "II"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    partition: Partition,
    family: Family,
    very_even_label: Option<VeryEvenLabel>,
}

impl OrbitLabel {
    pub fn new(partition: Partition, family: Family) -> Result<Self> {
        if !is_valid(&partition, family) {
            return Err(Error::InvalidPartition { partition, family });
        }
        Ok(OrbitLabel {
            partition,
            family,
            very_even_label: None,
        })
    }

    /// Attaches a very even label; only allowed for type D partitions with all parts even.
    pub fn with_very_even_label(mut self, label: VeryEvenLabel) -> Result<Self> {
        if !is_very_even(&self.partition, self.family) {
            return Err(Error::Parse(format!(
                "{} in family {} is not very even",
                self.partition, self.family
            )));
        }
        self.very_even_label = Some(label);
        Ok(self)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn very_even_label(&self) -> Option<VeryEvenLabel> {
        self.very_even_label
    }
}

pub fn is_very_even(p: &Partition, f: Family) -> bool {
    f == Family::D && !p.is_empty() && p.parts().iter().all(|x| x % 2 == 0)
}

pub fn is_valid(p: &Partition, f: Family) -> bool {
    if !f.accepts_size(p.size()) {
        return false;
    }
    let bad = f.paired_parity();
    p.multiplicities()
        .iter()
        .all(|(&v, &m)| v % 2 != bad || m % 2 == 0)
}

/// `f_part <= d_part` in the dominance order.
pub fn dominance_leq(f_part: &Partition, d_part: &Partition) -> Result<bool> {
    if f_part.size() != d_part.size() {
        return Err(Error::IncomparableSizes {
            left: f_part.size(),
            right: d_part.size(),
        });
    }
    Ok(dominated_by(f_part, d_part))
}

// Prefix-sum comparison without the size check.
pub(crate) fn dominated_by(f_part: &Partition, d_part: &Partition) -> bool {
    let n = f_part.len().max(d_part.len());
    let (mut sf, mut sd) = (0u64, 0u64);
    for i in 1..=n {
        sf += f_part.part(i) as u64;
        sd += d_part.part(i) as u64;
        if sf > sd {
            return false;
        }
    }
    true
}

pub fn transpose(p: &Partition) -> Partition {
    let top = p.part(1);
    Partition(
        (1..=top)
            .map(|i| p.parts().iter().filter(|&&d| d >= i).count() as u32)
            .collect(),
    )
}

/// The largest partition valid for `f` that is dominated by `p`.
pub fn collapse(p: &Partition, f: Family) -> Result<Partition> {
    if !f.accepts_size(p.size()) {
        return Err(Error::ParityMismatch {
            size: p.size(),
            family: f,
        });
    }
    let bad = f.paired_parity();
    let mut d: Vec<u32> = p.parts().to_vec();
    loop {
        let offender = {
            let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
            for &x in &d {
                *mult.entry(x).or_insert(0) += 1;
            }
            mult.into_iter()
                .rev()
                .find(|&(v, m)| v > 0 && v % 2 == bad && m % 2 == 1)
                .map(|(v, _)| v)
        };
        let Some(q) = offender else { break };
        let last = d.iter().rposition(|&x| x == q).expect("offender occurs");
        d[last] -= 1;
        let mut j = last + 1;
        loop {
            if j == d.len() {
                d.push(0);
            }
            if d[j] + 1 < q {
                d[j] += 1;
                break;
            }
            j += 1;
        }
        d.retain(|&x| x > 0);
    }
    Ok(Partition(d))
}

/// All partitions of `n` in descending lexicographic order.
pub fn all_partitions(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All valid partitions of `n` for `f`, descending lexicographic order.
pub fn enumerate_valid(n: u32, f: Family) -> Result<Vec<Partition>> {
    if !f.accepts_size(n) {
        return Err(Error::ParityMismatch { size: n, family: f });
    }
    Ok(all_partitions(n)
        .into_iter()
        .filter(|p| is_valid(p, f))
        .collect())
}

/// Complex dimension of the orbit.
pub fn orbit_dim(o: &OrbitLabel) -> i64 {
    partition_orbit_dim(o.partition(), o.family())
}

pub(crate) fn partition_orbit_dim(p: &Partition, f: Family) -> i64 {
    let n = p.size() as i64;
    let sq: i64 = transpose(p)
        .parts()
        .iter()
        .map(|&x| (x as i64) * (x as i64))
        .sum();
    let odd = p.odd_count() as i64;
    // Twice the dimension keeps everything integral.
    let twice = match f {
        Family::B | Family::D => n * n - n - sq + odd,
        Family::C => n * n + n - sq - odd,
    };
    debug_assert!(twice % 2 == 0);
    twice / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid(&p(&[5]), Family::B));
        assert!(is_valid(&p(&[2, 2, 1]), Family::B));
        assert!(!is_valid(&p(&[4, 3, 1]), Family::C));
        assert!(is_valid(&p(&[3, 1]), Family::D));
        assert!(!is_valid(&p(&[4, 3, 1]), Family::D));
        assert!(!is_valid(&p(&[3, 1]), Family::B));
    }

    #[test]
    fn dominance_examples() {
        let d = p(&[3, 1, 1]);
        assert!(dominance_leq(&d, &d).unwrap());
        assert!(dominance_leq(&p(&[2, 2, 1]), &d).unwrap());
        let a = p(&[4, 1, 1]);
        let b = p(&[3, 3]);
        assert!(!dominance_leq(&a, &b).unwrap());
        assert!(!dominance_leq(&b, &a).unwrap());
        assert_eq!(
            dominance_leq(&p(&[3]), &p(&[2, 2])),
            Err(Error::IncomparableSizes { left: 3, right: 4 })
        );
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&p(&[1, 1, 1])), p(&[3]));
        assert_eq!(transpose(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(transpose(&p(&[3, 2, 2, 1])), p(&[4, 3, 1]));
        assert_eq!(transpose(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse(&p(&[5]), Family::B).unwrap(), p(&[5]));
        assert_eq!(
            collapse(&p(&[4, 3, 3, 1]), Family::B).unwrap(),
            p(&[3, 3, 3, 1, 1])
        );
        assert_eq!(collapse(&p(&[4, 3, 1]), Family::C).unwrap(), p(&[4, 2, 2]));
        assert_eq!(collapse(&p(&[3, 1]), Family::C).unwrap(), p(&[2, 2]));
        assert!(matches!(
            collapse(&p(&[2, 2]), Family::B),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_valid(3, Family::B).unwrap(),
            vec![p(&[3]), p(&[1, 1, 1])]
        );
        assert_eq!(
            enumerate_valid(5, Family::B).unwrap(),
            vec![p(&[5]), p(&[3, 1, 1]), p(&[2, 2, 1]), p(&[1, 1, 1, 1, 1])]
        );
        assert_eq!(
            enumerate_valid(4, Family::C).unwrap(),
            vec![p(&[4]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert!(enumerate_valid(4, Family::B).is_err());
    }

    #[test]
    fn orbit_dim_examples() {
        for f in Family::ALL {
            let n = if f == Family::B { 7 } else { 6 };
            let o = OrbitLabel::new(Partition::ones(n), f).unwrap();
            assert_eq!(orbit_dim(&o), 0);
        }
        let dim = |v: &[u32]| orbit_dim(&OrbitLabel::new(p(v), Family::B).unwrap());
        assert_eq!(dim(&[5]), 8);
        assert_eq!(dim(&[3, 1, 1]), 6);
        assert_eq!(dim(&[3, 2, 2, 1, 1]), 20);
        assert_eq!(dim(&[2, 2, 2, 2, 1]), 16);
        assert_eq!(dim(&[5, 5, 3, 3, 3, 3, 1]), 192);
        assert_eq!(dim(&[4, 4, 4, 4, 3, 3, 1]), 186);
        // regular orbit of sp(2n) has dimension 2n^2
        let c = OrbitLabel::new(p(&[6]), Family::C).unwrap();
        assert_eq!(orbit_dim(&c), 18);
    }

    #[test]
    fn parse_literals() {
        assert_eq!("5".parse::<Partition>().unwrap(), p(&[5]));
        assert_eq!("4,3,3,1".parse::<Partition>().unwrap(), p(&[4, 3, 3, 1]));
        assert!("1,3".parse::<Partition>().is_err());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("3,-1".parse::<Partition>().is_err());
        assert!("a,b".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
    }

    #[test]
    fn very_even_labels() {
        let o = OrbitLabel::new(p(&[2, 2]), Family::D).unwrap();
        assert!(o.clone().with_very_even_label(VeryEvenLabel::I).is_ok());
        let o = OrbitLabel::new(p(&[3, 1]), Family::D).unwrap();
        assert!(o.with_very_even_label(VeryEvenLabel::II).is_err());
        let o = OrbitLabel::new(p(&[2, 2]), Family::C).unwrap();
        assert!(o.with_very_even_label(VeryEvenLabel::I).is_err());
    }
}
