//! Linear algebra over a prime field `F_p`, vectors stored as reduced `u32`s.

use crate::error::{Error, Result};

pub type Vector = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Odd primes only.
    pub fn new(p: u32) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime || p == 2 {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
        (s % self.p as u64) as u32
    }

    /// `v - c·w`.
    pub fn axpy(self, v: &mut [u32], c: u32, w: &[u32]) {
        if c == 0 {
            return;
        }
        for (x, &y) in v.iter_mut().zip(w) {
            *x = self.sub(*x, self.mul(c, y));
        }
    }

    /// Matrix (rows) times column vector.
    pub fn mat_vec(self, m: &[Vector], v: &[u32]) -> Vector {
        m.iter().map(|row| self.dot(row, v)).collect()
    }

    /// `vᵀ M` as a row vector.
    pub fn vec_mat(self, v: &[u32], m: &[Vector]) -> Vector {
        let n = m.first().map_or(0, |r| r.len());
        let mut out = vec![0u64; n];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(&m[i]) {
                *o += c as u64 * x as u64;
            }
        }
        out.into_iter()
            .map(|x| (x % self.p as u64) as u32)
            .collect()
    }

    /// `uᵀ G v`.
    pub fn bilinear(self, g: &[Vector], u: &[u32], v: &[u32]) -> u32 {
        self.dot(&self.vec_mat(u, g), v)
    }

    pub fn echelon(self, rows: &[Vector]) -> Echelon {
        let mut e = Echelon {
            field: self,
            pivots: Vec::new(),
            rows: Vec::new(),
        };
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    /// Basis of `{x : r·x = 0 for every row r}` in `F_p^n`.
    pub fn nullspace(self, rows: &[Vector], n: usize) -> Vec<Vector> {
        let e = self.echelon(rows);
        (0..n)
            .filter(|c| !e.pivots.contains(c))
            .map(|free| {
                let mut x = vec![0; n];
                x[free] = 1;
                for (&pc, row) in e.pivots.iter().zip(&e.rows) {
                    x[pc] = self.neg(row[free]);
                }
                x
            })
            .collect()
    }

    pub fn intersection(self, a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
        let mut ann = self.nullspace(a, n);
        ann.extend(self.nullspace(b, n));
        self.nullspace(&ann, n)
    }

    pub fn identity(n: usize) -> Vec<Vector> {
        (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect()
    }
}

/// Fully reduced row echelon form of a span.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    pivots: Vec<usize>,
    rows: Vec<Vector>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn reduce(&self, v: &[u32]) -> Vector {
        let mut v = v.to_vec();
        for (&pc, row) in self.pivots.iter().zip(&self.rows) {
            let c = v[pc];
            self.field.axpy(&mut v, c, row);
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let f = self.field;
        let mut v = self.reduce(&v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            f.axpy(row, c, &v);
        }
        self.pivots.push(pc);
        self.rows.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert!(PrimeField::new(3).is_ok());
        assert!(PrimeField::new(5).is_ok());
        assert_eq!(PrimeField::new(2), Err(Error::InvalidModulus(2)));
        assert_eq!(PrimeField::new(9), Err(Error::InvalidModulus(9)));
        assert_eq!(PrimeField::new(1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.sub(2, 5), 4);
    }

    #[test]
    fn spans_and_kernels() {
        let f = PrimeField::new(5).unwrap();
        let rows = vec![vec![1, 2, 0], vec![2, 4, 0]];
        let e = f.echelon(&rows);
        assert_eq!(e.rank(), 1);
        assert!(e.contains(&[3, 1, 0]));
        assert!(!e.contains(&[0, 0, 1]));
        let k = f.nullspace(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(f.dot(&rows[0], v), 0);
        }
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let i = f.intersection(&a, &b, 3);
        assert_eq!(i.len(), 1);
        assert!(f.echelon(&i).contains(&[0, 1, 0]));
    }
}
