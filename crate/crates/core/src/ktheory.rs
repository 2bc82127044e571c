//! Integer matrices, Smith normal form, and the K-groups
//! `K_0 = coker(I − Bᵀ)`, `K_1 = ker(I − Bᵀ)` of a Cuntz-Krieger algebra.
//!
//! Column-vector convention: `I − Bᵀ` acts on `Z^n` by left
//! multiplication and `K_0` is `Z^n` modulo its image.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::krieger::EdgeMatrix;

/// A dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| x.into()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.at(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "dimension mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Fraction-free (Bareiss) determinant. Panics on non-square input.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.at(i, j) = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[src]
    fn add_row(&mut self, target: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * factor;
            *self.at(target, j) += v;
        }
    }

    /// col[target] += factor * col[src]
    fn add_col(&mut self, target: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * factor;
            *self.at(i, target) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -core::mem::take(self.at(i, j));
            *self.at(i, j) = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[BigInt]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        f.debug_list()
            .entries(rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

/// `D = U·M·V` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// with each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero()
                        && pivot.is_none_or(|(pi, pj)| x.abs() < d.get(pi, pj).abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return SmithNormalForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut residue = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                residue |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                residue |= !d.get(t, j).is_zero();
            }
            if residue {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let one = BigInt::one();
                d.add_row(t, i, &one);
                u.add_row(t, i, &one);
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithNormalForm { u, d, v }
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `d_1 | d_2 | … | d_k` and every `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, " ⊕ ")
            }
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                write!(f, "Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for d in &self.invariant_factors {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// `Z^rows / M·Z^cols`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = snf.rank();
    AbelianGroup {
        free_rank: m.rows - rank,
        invariant_factors: diag.into_iter().filter(|x| *x > BigInt::one()).collect(),
    }
}

/// `{x ∈ Z^cols : M x = 0}`, which is free.
pub fn kernel(m: &IntMatrix) -> AbelianGroup {
    AbelianGroup {
        free_rank: m.cols - smith_normal_form(m).rank(),
        invariant_factors: Vec::new(),
    }
}

/// `I − Bᵀ`.
pub fn bowen_franks_matrix(b: &EdgeMatrix) -> IntMatrix {
    let n = b.size();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if b.get(j, i) != 0 {
                *m.at(i, j) -= BigInt::from(b.get(j, i));
            }
        }
    }
    m
}

/// `(K_0, K_1) = (coker(I − Bᵀ), ker(I − Bᵀ))`.
pub fn k_groups(b: &EdgeMatrix) -> (AbelianGroup, AbelianGroup) {
    let m = bowen_franks_matrix(b);
    (cokernel(&m), kernel(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn diag_of(m: &[Vec<i64>]) -> Vec<BigInt> {
        smith_normal_form(&IntMatrix::from_rows(m)).diagonal()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 2);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn small_examples() {
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
        assert_eq!(diag_of(&[vec![0, -1], vec![-1, 0]]), big(&[1, 1]));
        assert_eq!(diag_of(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), big(&[2, 6, 12]));
    }

    #[test]
    fn reconstruction_on_rectangular() {
        let m = IntMatrix::from_rows(&[vec![4i64, 6, 2], vec![2, 8, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn determinant_values() {
        let m = IntMatrix::from_rows(&[vec![2i64, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(6));
        let m = IntMatrix::from_rows(&[vec![0i64, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
    }

    #[test]
    fn group_rendering() {
        assert_eq!(format!("{}", AbelianGroup::trivial()), "0");
        let g = AbelianGroup {
            free_rank: 1,
            invariant_factors: vec![],
        };
        assert_eq!(format!("{g}"), "Z");
        let g = AbelianGroup {
            free_rank: 2,
            invariant_factors: big(&[2, 4]),
        };
        assert_eq!(format!("{g}"), "Z^2 ⊕ Z/2 ⊕ Z/4");
        let g = AbelianGroup {
            free_rank: 0,
            invariant_factors: big(&[3]),
        };
        assert_eq!(format!("{g}"), "Z/3");
    }

    #[test]
    fn full_shift_groups() {
        for n in 2..=5usize {
            let b = EdgeMatrix::from_rows(&vec![vec![1u8; n]; n]);
            let (k0, k1) = k_groups(&b);
            assert_eq!(k0.free_rank, 0);
            if n == 2 {
                assert!(k0.is_trivial());
            } else {
                assert_eq!(k0.invariant_factors, big(&[n as i64 - 1]));
            }
            assert!(k1.is_trivial());
        }
    }

    #[test]
    fn rectangular_diagonal() {
        assert_eq!(diag_of(&[vec![4, 6, 2], vec![2, 8, 0]]), big(&[2, 2]));
    }

    #[test]
    fn even_shift_groups() {
        use crate::krieger::{build_cover, edge_matrix};
        use crate::shift::{Alphabet, Edge, LabeledGraph};
        let g = LabeledGraph::new(
            Alphabet::new(["0", "1"]).unwrap(),
            vec!["a".into(), "b".into()],
            vec![Edge::new(0, 0, 1), Edge::new(0, 1, 0), Edge::new(1, 0, 0)],
        )
        .unwrap();
        let b = edge_matrix(&build_cover(&g).unwrap()).unwrap();
        let (k0, k1) = k_groups(&b);
        assert_eq!(format!("{k0}"), "Z");
        assert_eq!(format!("{k1}"), "Z");
    }
}
