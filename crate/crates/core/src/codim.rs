//! Exact codimension of congruence orbits of skew-symmetric pencils.
//!
//! The codimension of the orbit of `A - λB` is `n² - n` minus the rank of the
//! tangent map `X ↦ (XᵀA + AX, XᵀB + BX)`. Eigenvalues are pinned to concrete
//! values before the pencil is materialized, and the rank is computed over
//! the rationals with fraction-free elimination.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::structures::{EigenvalueLabel, SkewStructure, Spectrum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodimError {
    #[error("eigenvalue {0} is assigned to more than one group")]
    DuplicateValue(String),
    #[error("eigenvalue label `{0}` is not pinned")]
    UnpinnedLabel(String),
    #[error("no group is labelled `{0}`")]
    UnknownLabel(String),
}

/// Dense matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone())
            })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[ExactMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// `[0 W; -Wᵀ 0]` for a `p x q` block `W`.
    fn skew_from_half(w: &ExactMatrix) -> Self {
        let (p, q) = w.dims();
        let mut m = Self::zeros(p + q, p + q);
        for i in 0..p {
            for j in 0..q {
                let v = w.get(i, j).clone();
                m.set(i, p + j, v.clone());
                m.set(p + j, i, -v);
            }
        }
        m
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect()
    }
}

/// Rank over the rationals by Bareiss elimination on an integer scaling of
/// the rows. Zero columns are skipped; every division is exact.
pub fn exact_rank(m: &ExactMatrix) -> usize {
    let mut a = m.integer_rows();
    let (rows, cols) = m.dims();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let p = &prow[col];
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                for j in col + 1..cols {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * p / &prev;
                    }
                }
                continue;
            }
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = &row[j] * p - &factor * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[col] = BigInt::zero();
        }
        prev = p.clone();
        rank += 1;
    }
    rank
}

/// Rank by plain Gaussian elimination over `BigRational`; a slow reference.
pub fn rational_rank(m: &ExactMatrix) -> usize {
    let (rows, cols) = m.dims();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let p = a[rank][col].clone();
        for i in rank + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &p;
            for j in col..cols {
                let v = &f * &a[rank][j];
                a[i][j] -= v;
            }
        }
        rank += 1;
    }
    rank
}

/// A skew-symmetric pencil `A - λB` with concrete entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedPencil {
    pub a: ExactMatrix,
    pub b: ExactMatrix,
}

impl PinnedPencil {
    pub fn size(&self) -> usize {
        self.a.dims().0
    }
}

/// How anonymous eigenvalue labels receive values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Pinning {
    /// Primes 2, 3, 5, ... in group order, skipping values already in use.
    #[default]
    Auto,
    /// Listed labels get the given values; the remaining anonymous labels
    /// are pinned as in [`Pinning::Auto`].
    Explicit(BTreeMap<String, EigenvalueLabel>),
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn next_prime(after: Option<u64>, used: &BTreeSet<EigenvalueLabel>) -> u64 {
    let mut c = after.map_or(2, |p| p + 1);
    loop {
        if is_prime(c) && !used.contains(&EigenvalueLabel::finite(c as i64)) {
            return c;
        }
        c += 1;
    }
}

/// Replaces every anonymous label of `s` by a concrete value.
pub fn pin_eigenvalues(s: &SkewStructure, pinning: &Pinning) -> Result<SkewStructure, CodimError> {
    let explicit = match pinning {
        Pinning::Auto => BTreeMap::new(),
        Pinning::Explicit(map) => map.clone(),
    };
    for name in explicit.keys() {
        let known = s
            .groups()
            .iter()
            .any(|g| matches!(&g.label, EigenvalueLabel::Anonymous(n) if n == name));
        if !known {
            return Err(CodimError::UnknownLabel(name.clone()));
        }
    }

    let mut used: BTreeSet<EigenvalueLabel> = BTreeSet::new();
    let claim = |label: EigenvalueLabel, used: &mut BTreeSet<EigenvalueLabel>| {
        if used.insert(label.clone()) {
            Ok(label)
        } else {
            Err(CodimError::DuplicateValue(label.to_string()))
        }
    };

    let mut assigned: Vec<Option<EigenvalueLabel>> = Vec::new();
    for g in s.groups() {
        let label = match &g.label {
            EigenvalueLabel::Anonymous(name) => explicit.get(name).cloned(),
            pinned => Some(pinned.clone()),
        };
        assigned.push(match label {
            Some(l) if l.is_pinned() => Some(claim(l, &mut used)?),
            Some(l) => return Err(CodimError::UnpinnedLabel(l.to_string())),
            None => None,
        });
    }
    let mut last = None;
    let mut blocks = Vec::new();
    for (g, label) in s.groups().iter().zip(assigned) {
        let label = match label {
            Some(l) => l,
            None => {
                let p = next_prime(last, &used);
                last = Some(p);
                claim(EigenvalueLabel::finite(p as i64), &mut used)?
            }
        };
        blocks.extend(g.sizes().iter().map(|&h| (label.clone(), h)));
    }
    let spectrum = Spectrum::from_blocks(blocks).expect("distinct labels, positive sizes");
    Ok(SkewStructure::new(s.m_sizes().to_vec(), spectrum))
}

fn jordan(h: usize, mu: &BigRational) -> ExactMatrix {
    let mut j = ExactMatrix::zeros(h, h);
    for i in 0..h {
        j.set(i, i, mu.clone());
        if i + 1 < h {
            j.set(i, i + 1, BigRational::one());
        }
    }
    j
}

fn m_halves(m: usize) -> (ExactMatrix, ExactMatrix) {
    let mut f = ExactMatrix::zeros(m, m + 1);
    let mut g = ExactMatrix::zeros(m, m + 1);
    for i in 0..m {
        f.set(i, i + 1, BigRational::one());
        g.set(i, i, BigRational::one());
    }
    (f, g)
}

/// The canonical matrices of a pinned structure, blocks in normalized order:
/// `M` blocks by size, then each eigenvalue group.
pub fn pencil_matrices(s: &SkewStructure) -> Result<PinnedPencil, CodimError> {
    let mut a_blocks = Vec::new();
    let mut b_blocks = Vec::new();
    for &m in s.m_sizes() {
        let (f, g) = m_halves(m);
        a_blocks.push(ExactMatrix::skew_from_half(&f));
        b_blocks.push(ExactMatrix::skew_from_half(&g));
    }
    for group in s.groups() {
        for &h in group.sizes() {
            match &group.label {
                EigenvalueLabel::Finite(mu) => {
                    a_blocks.push(ExactMatrix::skew_from_half(&jordan(h, mu)));
                    b_blocks.push(ExactMatrix::skew_from_half(&ExactMatrix::identity(h)));
                }
                EigenvalueLabel::Infinity => {
                    a_blocks.push(ExactMatrix::skew_from_half(&ExactMatrix::identity(h)));
                    b_blocks.push(ExactMatrix::skew_from_half(&jordan(h, &BigRational::zero())));
                }
                EigenvalueLabel::Anonymous(name) => {
                    return Err(CodimError::UnpinnedLabel(name.clone()))
                }
            }
        }
    }
    Ok(PinnedPencil {
        a: ExactMatrix::direct_sum(&a_blocks),
        b: ExactMatrix::direct_sum(&b_blocks),
    })
}

/// The tangent map at `(A, B)` as an `(n² - n) x n²` matrix. Rows are the
/// strictly upper triangular positions of `XᵀA + AX`, row-major, followed by
/// those of `XᵀB + BX`; column `p·n + q` is the entry `X[p][q]`.
pub fn tangent_matrix(pencil: &PinnedPencil) -> ExactMatrix {
    let n = pencil.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut t = ExactMatrix::zeros(2 * pairs.len(), n * n);
    for (part, m) in [&pencil.a, &pencil.b].into_iter().enumerate() {
        for (r, &(i, j)) in pairs.iter().enumerate() {
            let row = part * pairs.len() + r;
            for p in 0..n {
                // X[p][i] A[p][j] and A[i][p] X[p][j]
                let c1 = p * n + i;
                let v1 = t.get(row, c1) + m.get(p, j);
                t.set(row, c1, v1);
                let c2 = p * n + j;
                let v2 = t.get(row, c2) + m.get(i, p);
                t.set(row, c2, v2);
            }
        }
    }
    t
}

pub fn pinned_codimension(s: &SkewStructure, pinning: &Pinning) -> Result<usize, CodimError> {
    let pinned = pin_eigenvalues(s, pinning)?;
    let pencil = pencil_matrices(&pinned)?;
    let n = pencil.size();
    Ok(n * n - n - exact_rank(&tangent_matrix(&pencil)))
}

/// Codimension of the congruence orbit of `s`, anonymous labels auto-pinned.
pub fn orbit_codimension(s: &SkewStructure) -> usize {
    pinned_codimension(s, &Pinning::Auto).expect("automatic pinning never collides")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SkewStructure {
        text.parse().unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(exact_rank(&ExactMatrix::identity(3)), 3);
        assert_eq!(exact_rank(&ExactMatrix::zeros(3, 4)), 0);
        assert_eq!(exact_rank(&ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(exact_rank(&ExactMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn pinning() {
        let p = pin_eigenvalues(&s("H1(a) + H1(b)"), &Pinning::Auto).unwrap();
        let labels: Vec<String> = p.groups().iter().map(|g| g.label.to_string()).collect();
        assert_eq!(labels, ["2", "3"]);
        let p = pin_eigenvalues(&s("K1"), &Pinning::Auto).unwrap();
        assert_eq!(p.groups()[0].label, EigenvalueLabel::Infinity);
        let p = pin_eigenvalues(&s("H1(a) + H2(2)"), &Pinning::Auto).unwrap();
        assert_eq!(p.to_string(), "H2(2) + H1(3)");
        let clash = Pinning::Explicit(BTreeMap::from([
            ("a".to_string(), EigenvalueLabel::finite(1)),
            ("b".to_string(), EigenvalueLabel::finite(1)),
        ]));
        assert!(matches!(
            pin_eigenvalues(&s("H1(a) + H1(b)"), &clash),
            Err(CodimError::DuplicateValue(_))
        ));
    }

    #[test]
    fn block_matrices() {
        let p = pencil_matrices(&s("M0")).unwrap();
        assert_eq!(p.a, ExactMatrix::zeros(1, 1));
        assert_eq!(p.b, ExactMatrix::zeros(1, 1));
        let p = pencil_matrices(&s("H1(2)")).unwrap();
        assert_eq!(p.a, ExactMatrix::from_i64(&[vec![0, 2], vec![-2, 0]]));
        assert_eq!(p.b, ExactMatrix::from_i64(&[vec![0, 1], vec![-1, 0]]));
        let p = pencil_matrices(&s("K1")).unwrap();
        assert_eq!(p.a, ExactMatrix::from_i64(&[vec![0, 1], vec![-1, 0]]));
        assert_eq!(p.b, ExactMatrix::zeros(2, 2));
        let p = pencil_matrices(&s("M2 + H2(1/2) + K1")).unwrap();
        assert!(p.a.is_skew_symmetric() && p.b.is_skew_symmetric());
        assert_eq!(p.size(), 11);
        assert!(matches!(
            pencil_matrices(&s("H1(a)")),
            Err(CodimError::UnpinnedLabel(_))
        ));
    }

    #[test]
    fn codimension_examples() {
        assert_eq!(orbit_codimension(&s("M3")), 0);
        assert_eq!(orbit_codimension(&s("M0*6")), 30);
        assert_eq!(orbit_codimension(&s("H3(a)")), 3);
        assert_eq!(orbit_codimension(&s("M0")), 0);
    }
}
