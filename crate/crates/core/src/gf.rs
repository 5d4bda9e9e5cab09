//! Dense matrices over small prime fields GF(p).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::error::{check_cap, Error, Result};
use crate::matroid::RankTable;

pub const MAX_PRIME: u8 = 13;

pub fn is_supported_prime(p: u8) -> bool {
    matches!(p, 2 | 3 | 5 | 7 | 11 | 13)
}

fn inv(a: u8, p: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r, mut base, mut e) = (1u32, a as u32, p as u32 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u32;
        }
        base = base * base % p as u32;
        e >>= 1;
    }
    r as u8
}

/// Row-major m×n matrix over GF(p). Entries are always reduced.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FFMatrix {
    p: u8,
    m: usize,
    n: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) {:?}", self.p, self.rows())
    }
}

impl FFMatrix {
    pub fn zero(p: u8, m: usize, n: usize) -> Result<Self> {
        if !is_supported_prime(p) {
            return Err(Error::input(format!("unsupported field size {p}")));
        }
        Ok(FFMatrix { p, m, n, data: vec![0; m * n] })
    }

    pub fn identity(p: u8, m: usize) -> Result<Self> {
        let mut a = Self::zero(p, m, m)?;
        for i in 0..m {
            a.data[i * m + i] = 1;
        }
        Ok(a)
    }

    /// Builds a matrix from rows, reducing every entry modulo `p`.
    /// `n` is needed to express matrices without rows.
    pub fn from_rows(p: u8, n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut a = Self::zero(p, rows.len(), n)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::input(format!("row {i} has {} entries, expected {n}", r.len())));
            }
            for (j, &x) in r.iter().enumerate() {
                a.data[i * n + j] = x.rem_euclid(p as i64) as u8;
            }
        }
        Ok(a)
    }

    pub fn p(&self) -> u8 {
        self.p
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.n + j] = x % self.p;
    }
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.m).map(|i| self.get(i, j)).collect()
    }
    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.m).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: u8) {
        if factor == 0 {
            return;
        }
        let p = self.p as u16;
        for j in 0..self.n {
            let s = self.data[src * self.n + j] as u16;
            let d = &mut self.data[dst * self.n + j];
            *d = ((*d as u16 + factor as u16 * s) % p) as u8;
        }
    }

    fn scale_row(&mut self, i: usize, factor: u8) {
        let p = self.p as u16;
        for x in &mut self.data[i * self.n..(i + 1) * self.n] {
            *x = (*x as u16 * factor as u16 % p) as u8;
        }
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (FFMatrix, usize) {
        let mut a = self.clone();
        let p = a.p;
        let mut r = 0;
        for c in 0..a.n {
            if r == a.m {
                break;
            }
            let Some(piv) = (r..a.m).find(|&i| a.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..a.n {
                    a.data.swap(piv * a.n + j, r * a.n + j);
                }
            }
            let s = inv(a.get(r, c), p);
            a.scale_row(r, s);
            for i in 0..a.m {
                if i != r {
                    let f = a.get(i, c);
                    if f != 0 {
                        a.add_row_multiple(i, r, p - f);
                    }
                }
            }
            r += 1;
        }
        (a, r)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// RREF with the zero rows removed: a canonical representative of the row space.
    pub fn row_space_key(&self) -> FFMatrix {
        let (mut a, r) = self.rref();
        a.data.truncate(r * a.n);
        a.m = r;
        a
    }

    /// Rank of the columns selected by `cols`.
    pub fn subset_rank(&self, cols: u32) -> usize {
        let mut basis = Basis::new(self.p, self.m);
        let mut c = cols;
        while c != 0 {
            let j = c.trailing_zeros() as usize;
            c &= c - 1;
            if j < self.n {
                basis.insert(self.column(j));
            }
        }
        basis.rank()
    }

    /// Appends `v` as a column and contracts it. A zero `v` is a loop and leaves `A` unchanged.
    pub fn contract_column(&self, v: &[u8]) -> Result<FFMatrix> {
        if v.len() != self.m {
            return Err(Error::input(format!("vector length {} differs from row count {}", v.len(), self.m)));
        }
        let p = self.p;
        let Some(piv) = v.iter().position(|&x| x % p != 0) else {
            return Ok(self.clone());
        };
        let mut a = self.clone();
        let s = inv(v[piv] % p, p);
        a.scale_row(piv, s);
        for i in 0..a.m {
            if i != piv {
                let f = v[i] % p;
                if f != 0 {
                    a.add_row_multiple(i, piv, p - f);
                }
            }
        }
        Ok(a.delete_row(piv))
    }

    /// Contracts existing column `j`. Contracting a zero column deletes it.
    pub fn contract_existing(&self, j: usize) -> Result<FFMatrix> {
        if j >= self.n {
            return Err(Error::input(format!("column {j} out of range")));
        }
        let v = self.column(j);
        self.contract_column(&v)?.delete_column(j)
    }

    fn delete_row(&self, r: usize) -> FFMatrix {
        let mut data = Vec::with_capacity((self.m - 1) * self.n);
        for i in 0..self.m {
            if i != r {
                data.extend_from_slice(self.row(i));
            }
        }
        FFMatrix { p: self.p, m: self.m - 1, n: self.n, data }
    }

    /// Appends `w` as a new last row.
    pub fn coextend_row(&self, w: &[u8]) -> Result<FFMatrix> {
        if w.len() != self.n {
            return Err(Error::input(format!("row length {} differs from column count {}", w.len(), self.n)));
        }
        let mut a = self.clone();
        a.data.extend(w.iter().map(|&x| x % self.p));
        a.m += 1;
        Ok(a)
    }

    /// Removes column `j` (0-based).
    pub fn delete_column(&self, j: usize) -> Result<FFMatrix> {
        if j >= self.n {
            return Err(Error::input(format!("column {j} out of range")));
        }
        let mut data = Vec::with_capacity(self.m * (self.n - 1));
        for i in 0..self.m {
            for c in 0..self.n {
                if c != j {
                    data.push(self.get(i, c));
                }
            }
        }
        Ok(FFMatrix { p: self.p, m: self.m, n: self.n - 1, data })
    }

    /// Submatrix on the columns of `cols`, in increasing order.
    pub fn select_columns(&self, cols: u32) -> FFMatrix {
        let idx: Vec<usize> = (0..self.n).filter(|&j| cols >> j & 1 == 1).collect();
        let mut data = Vec::with_capacity(self.m * idx.len());
        for i in 0..self.m {
            for &j in &idx {
                data.push(self.get(i, j));
            }
        }
        FFMatrix { p: self.p, m: self.m, n: idx.len(), data }
    }

    /// The product `U·A`.
    pub fn left_mul(&self, u: &FFMatrix) -> FFMatrix {
        assert_eq!(u.n, self.m);
        let p = self.p as u32;
        let mut data = vec![0u8; u.m * self.n];
        for i in 0..u.m {
            for k in 0..self.m {
                let f = u.get(i, k) as u32;
                if f == 0 {
                    continue;
                }
                for j in 0..self.n {
                    let d = &mut data[i * self.n + j];
                    *d = ((*d as u32 + f * self.get(k, j) as u32) % p) as u8;
                }
            }
        }
        FFMatrix { p: self.p, m: u.m, n: self.n, data }
    }

    /// The vector matroid of the columns.
    pub fn vector_matroid(&self) -> Result<RankTable> {
        check_cap("vector matroid columns", self.n as u64, caps().rank_table_n as u64)?;
        let cols: Vec<Vec<u8>> = (0..self.n).map(|j| self.column(j)).collect();
        let mut ranks = vec![0u8; 1 << self.n];
        // Extend a basis along the lowest set bit; each subset is solved once.
        for x in 1u32..(1 << self.n) {
            let mut basis = Basis::new(self.p, self.m);
            let mut c = x;
            while c != 0 {
                let j = c.trailing_zeros() as usize;
                c &= c - 1;
                basis.insert(cols[j].clone());
            }
            ranks[x as usize] = basis.rank() as u8;
        }
        RankTable::from_ranks(self.n, ranks)
    }

    /// Text format: header `gf<p> <m> <n>` followed by `m` rows of space-separated entries.
    pub fn to_text(&self) -> String {
        let mut s = format!("gf{} {} {}\n", self.p, self.m, self.n);
        for i in 0..self.m {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<FFMatrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || !parts[0].starts_with("gf") {
            return Err(Error::Parse(format!("bad matrix header '{header}'")));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number '{s}'")));
        let p = num(&parts[0][2..])?;
        let (m, n) = (num(parts[1])?, num(parts[2])?);
        if p > MAX_PRIME as usize || !is_supported_prime(p as u8) {
            return Err(Error::Parse(format!("unsupported field gf{p}")));
        }
        let mut a = FFMatrix::zero(p as u8, m, n)?;
        for i in 0..m {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
            let vals: Vec<&str> = line.split_whitespace().collect();
            if vals.len() != n {
                return Err(Error::Parse(format!("row {} has {} entries, expected {n}", i + 1, vals.len())));
            }
            for (j, v) in vals.iter().enumerate() {
                let x = num(v)?;
                if x >= p {
                    return Err(Error::Parse(format!("entry {x} is not reduced modulo {p}")));
                }
                a.data[i * n + j] = x as u8;
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing rows after matrix".into()));
        }
        Ok(a)
    }
}

/// Incremental echelon basis used for rank computations.
struct Basis {
    p: u8,
    rows: Vec<(usize, Vec<u8>)>,
}

impl Basis {
    fn new(p: u8, _dim: usize) -> Self {
        Basis { p, rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<u8>) -> bool {
        let p = self.p as u16;
        for (piv, b) in &self.rows {
            let f = v[*piv];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = ((*x as u16 + (p - f as u16) * y as u16) % p) as u8;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(piv) => {
                let s = inv(v[piv], self.p);
                for x in v.iter_mut() {
                    *x = (*x as u16 * s as u16 % p) as u8;
                }
                self.rows.push((piv, v));
                true
            }
            None => false,
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Decodes the `idx`-th vector of GF(p)^dim in lexicographic order.
pub fn vector_at(p: u8, dim: usize, mut idx: u64) -> Vec<u8> {
    let mut v = vec![0u8; dim];
    for i in (0..dim).rev() {
        v[i] = (idx % p as u64) as u8;
        idx /= p as u64;
    }
    v
}

/// All vectors of GF(p)^dim, zero first, lexicographic.
pub fn enumerate_vectors(p: u8, dim: usize) -> Result<impl Iterator<Item = Vec<u8>>> {
    if !is_supported_prime(p) {
        return Err(Error::input(format!("unsupported field size {p}")));
    }
    let total = (p as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    check_cap("vector enumeration size", total, caps().vectors)?;
    Ok((0..total).map(move |i| vector_at(p, dim, i)))
}

/// Order of GL(m, p).
pub fn gl_order(m: usize, p: u8) -> u128 {
    let q = p as u128;
    let pm = q.checked_pow(m as u32).unwrap_or(u128::MAX);
    (0..m as u32).fold(1u128, |acc, i| acc.saturating_mul(pm - q.pow(i)))
}

/// Iterator over `U·A` for all invertible `U`.
pub struct RowEquivalentForms {
    a: FFMatrix,
    total: u64,
    idx: Vec<u64>,
    level: isize,
    first: bool,
    finished: bool,
}

impl Iterator for RowEquivalentForms {
    type Item = FFMatrix;

    fn next(&mut self) -> Option<FFMatrix> {
        let m = self.a.m;
        if self.finished {
            return None;
        }
        if m == 0 {
            self.finished = true;
            return Some(self.a.clone());
        }
        if !self.first {
            self.level = m as isize - 1;
        }
        self.first = false;
        let p = self.a.p;
        loop {
            if self.level < 0 {
                self.finished = true;
                return None;
            }
            let k = self.level as usize;
            self.idx[k] = self.idx[k].wrapping_add(1);
            if self.idx[k] >= self.total {
                self.idx[k] = u64::MAX;
                self.level -= 1;
                continue;
            }
            let mut basis = Basis::new(p, m);
            let independent = (0..=k).all(|i| basis.insert(vector_at(p, m, self.idx[i])));
            if !independent {
                continue;
            }
            if k + 1 == m {
                let rows: Vec<Vec<i64>> =
                    (0..m).map(|i| vector_at(p, m, self.idx[i]).into_iter().map(i64::from).collect()).collect();
                let u = FFMatrix::from_rows(p, m, &rows).expect("valid field");
                return Some(self.a.left_mul(&u));
            }
            self.level += 1;
        }
    }
}

/// Every matrix `U·A` with `U` ranging over GL(m, p), one item per `U`.
pub fn row_equivalent_forms(a: &FFMatrix) -> Result<RowEquivalentForms> {
    let order = gl_order(a.m, a.p);
    check_cap("order of GL(m, p)", u64::try_from(order).unwrap_or(u64::MAX), caps().gl_order)?;
    Ok(RowEquivalentForms {
        a: a.clone(),
        total: (a.p as u64).pow(a.m as u32),
        idx: vec![u64::MAX; a.m],
        level: 0,
        first: true,
        finished: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(rows: &[&[i64]]) -> FFMatrix {
        let n = rows.first().map_or(0, |r| r.len());
        FFMatrix::from_rows(2, n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Rank by brute force: the largest subset of columns with no nontrivial vanishing combination.
    fn brute_rank(a: &FFMatrix, cols: u32) -> usize {
        let idx: Vec<usize> = (0..a.n()).filter(|&j| cols >> j & 1 == 1).collect();
        let p = a.p() as u64;
        let mut best = 0;
        for sub in 0u32..(1 << idx.len()) {
            let chosen: Vec<usize> = (0..idx.len()).filter(|&i| sub >> i & 1 == 1).map(|i| idx[i]).collect();
            let k = chosen.len() as u32;
            let independent = (1..p.pow(k)).all(|code| {
                let coeffs = vector_at(a.p(), chosen.len(), code);
                (0..a.m()).any(|r| {
                    chosen.iter().zip(&coeffs).map(|(&j, &c)| c as u64 * a.get(r, j) as u64).sum::<u64>() % p != 0
                })
            });
            if independent {
                best = best.max(chosen.len());
            }
        }
        best
    }

    #[test]
    fn rref_examples() {
        let i2 = FFMatrix::identity(2, 2).unwrap();
        assert_eq!(i2.rref(), (i2.clone(), 2));
        let (r, k) = m2(&[&[1, 1], &[1, 1]]).rref();
        assert_eq!((r, k), (m2(&[&[1, 1], &[0, 0]]), 1));
        let a = FFMatrix::from_rows(3, 2, &[vec![2, 1], vec![1, 2]]).unwrap();
        // 2·2 − 1·1 = 3 ≡ 0 (mod 3): the rows are dependent.
        assert_eq!(a.rank(), brute_rank(&a, 0b11));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn subset_rank_examples() {
        let i2 = FFMatrix::identity(2, 2).unwrap();
        assert_eq!(i2.subset_rank(0), 0);
        assert_eq!(i2.subset_rank(0b11), 2);
        assert_eq!(m2(&[&[1, 1]]).subset_rank(0b11), 1);
    }

    #[test]
    fn subset_rank_matches_brute_force() {
        for code in 0u64..(1 << 12) {
            let a = FFMatrix::from_rows(
                2,
                4,
                &(0..3).map(|i| (0..4).map(|j| (code >> (i * 4 + j) & 1) as i64).collect()).collect::<Vec<_>>(),
            )
            .unwrap();
            if code % 7 == 0 {
                for cols in 0..16 {
                    assert_eq!(a.subset_rank(cols), brute_rank(&a, cols));
                }
            }
        }
        let a = FFMatrix::from_rows(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        for cols in 0..8 {
            assert_eq!(a.subset_rank(cols), brute_rank(&a, cols));
        }
    }

    #[test]
    fn contract_examples() {
        let i2 = FFMatrix::identity(2, 2).unwrap();
        let c = i2.contract_column(&[1, 0]).unwrap();
        assert_eq!((c.m(), c.n()), (1, 2));
        assert_eq!(c.row(0), &[0, 1]);
        assert_eq!(i2.contract_column(&[0, 0]).unwrap(), i2);
        let c = m2(&[&[1, 1]]).contract_column(&[1]).unwrap();
        assert_eq!((c.m(), c.n()), (0, 2));
        assert_eq!(c.vector_matroid().unwrap().rank(), 0);
        assert!(i2.contract_column(&[1]).is_err());
    }

    #[test]
    fn coextend_and_delete() {
        let a = m2(&[&[1, 1]]).coextend_row(&[0, 1]).unwrap();
        assert_eq!(a, m2(&[&[1, 1], &[0, 1]]));
        assert_eq!(a.vector_matroid().unwrap(), RankTable::uniform(2, 2).unwrap());
        let e = FFMatrix::zero(2, 0, 1).unwrap().coextend_row(&[1]).unwrap();
        assert_eq!(e, m2(&[&[1]]));
        assert_eq!(m2(&[&[1, 1]]).delete_column(1).unwrap(), m2(&[&[1]]));
        assert!(m2(&[&[1, 1]]).delete_column(2).is_err());
        let i2 = FFMatrix::identity(2, 2).unwrap();
        assert_eq!(i2.delete_column(0).unwrap(), m2(&[&[0], &[1]]));
    }

    #[test]
    fn vector_enumeration_order() {
        let v: Vec<_> = enumerate_vectors(2, 2).unwrap().collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let v: Vec<_> = enumerate_vectors(3, 1).unwrap().collect();
        assert_eq!(v, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(enumerate_vectors(2, 3).unwrap().count(), 8);
        assert!(enumerate_vectors(2, 21).is_err());
    }

    #[test]
    fn gl_orbit_sizes() {
        assert_eq!(row_equivalent_forms(&m2(&[&[1, 0]])).unwrap().count(), 1);
        assert_eq!(row_equivalent_forms(&FFMatrix::identity(2, 2).unwrap()).unwrap().count(), 6);
        assert_eq!(row_equivalent_forms(&FFMatrix::identity(2, 3).unwrap()).unwrap().count(), 168);
        assert_eq!(gl_order(3, 3), 11232);
        let forms: std::collections::HashSet<_> =
            row_equivalent_forms(&FFMatrix::identity(2, 3).unwrap()).unwrap().collect();
        assert_eq!(forms.len(), 168);
    }

    #[test]
    fn fano_lines() {
        let rows: Vec<Vec<i64>> = (0..3).map(|i| (1..=7).map(|c| (c >> (2 - i)) & 1).collect()).collect();
        let f = FFMatrix::from_rows(2, 7, &rows).unwrap().vector_matroid().unwrap();
        assert_eq!(f.rank(), 3);
        let lines = (0u32..128).filter(|x| x.count_ones() == 3 && f.r(*x) == 2).count();
        assert_eq!(lines, 7);
    }

    #[test]
    fn text_round_trip() {
        let a = FFMatrix::from_rows(3, 3, &[vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        let t = a.to_text();
        assert_eq!(t, "gf3 2 3\n1 2 0\n0 1 2\n");
        assert_eq!(FFMatrix::parse_text(&t).unwrap(), a);
        assert!(FFMatrix::parse_text("gf4 1 1\n1\n").is_err());
        assert!(FFMatrix::parse_text("gf2 1 1\n2\n").is_err());
        let e = FFMatrix::zero(2, 0, 3).unwrap();
        assert_eq!(FFMatrix::parse_text(&e.to_text()).unwrap(), e);
    }
}
