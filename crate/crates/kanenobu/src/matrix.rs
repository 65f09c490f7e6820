//! Integer matrices with exact arithmetic: fraction-free determinants and
//! Smith normal form with accumulated unimodular transforms.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{int, Int};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = int(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Submatrix keeping the listed rows and columns, in order.
    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(keep_rows.len(), keep_cols.len());
        for (i, &r) in keep_rows.iter().enumerate() {
            for (j, &c) in keep_cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Deletes one row and one column (0-indexed).
    pub fn minor_matrix(&self, drop_row: usize, drop_col: usize) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != drop_row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != drop_col).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let at = |a: &Vec<Int>, i: usize, j: usize| a[i * n + j].clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                // swap in a row with a nonzero entry in column k
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = &at(&a, i, j) * &at(&a, k, k) - &at(&a, i, k) * &at(&a, k, j);
                    a[i * n + j] = &x / &prev;
                }
                a[i * n + k] = Int::zero();
            }
            prev = at(&a, k, k);
        }
        sign * at(&a, n - 1, n - 1)
    }

    /// |det|, the knot determinant when `self` presents H₁ of a branched double cover.
    pub fn abs_det(&self) -> Int {
        self.det().abs()
    }

    /// Row-major entries as decimal strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.to_string_rows(),
        })
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Invariant factors d₁ | d₂ | ... plus the free rank of the cokernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianStructure {
    pub invariant_factors: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianStructure {
    pub fn is_cyclic(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.iter().filter(|&&d| d > 1).count() <= 1
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = Int::one();
        for &d in &self.invariant_factors {
            o *= int(d as i64);
        }
        Some(o)
    }
}

/// Smith normal form: `u * m * v` is diagonal with a divisibility chain,
/// `u` and `v` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub structure: AbelianStructure,
}

/// Smith normal form over Z. Pivot choice: smallest nonzero absolute value in
/// the remaining block, which keeps entry growth moderate.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_abs_pivot(&a, k) else { break };
        swap_rows(&mut a, &mut u, k, pi);
        swap_cols(&mut a, &mut v, k, pj);

        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(i, k)], &a[(k, k)]);
                row_op(&mut a, &mut u, i, k, &q);
                if !a[(i, k)].is_zero() {
                    // remainder became the smaller pivot
                    swap_rows(&mut a, &mut u, k, i);
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(k, j)], &a[(k, k)]);
                col_op(&mut a, &mut v, j, k, &q);
                if !a[(k, j)].is_zero() {
                    swap_cols(&mut a, &mut v, k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            match find_nondivisible(&a, k) {
                Some(i) => {
                    // fold row i into row k to pull the offending entry forward
                    add_row(&mut a, &mut u, k, i);
                }
                None => break,
            }
        }

        if a[(k, k)].is_negative() {
            negate_row(&mut a, &mut u, k);
        }
        k += 1;
    }

    let rank = k;
    let factors: Vec<u64> = (0..rank)
        .map(|i| u64::try_from(&a[(i, i)]).expect("invariant factor fits u64"))
        .collect();
    debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
    let structure = AbelianStructure {
        invariant_factors: factors,
        free_rank: rows - rank,
    };
    SmithForm { d: a, u, v, structure }
}

fn min_abs_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(Int, usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((b, _, _)) if *b <= v => {}
                _ => best = Some((v, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn find_nondivisible(a: &IntMatrix, k: usize) -> Option<usize> {
    let p = a[(k, k)].clone();
    for i in k + 1..a.rows() {
        for j in k + 1..a.cols() {
            if (&a[(i, j)] % &p) != Int::zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Rounded division keeps remainders at most half the divisor.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = (a / b, a % b);
    if &(r.abs() * int(2)) > &b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols() {
        let x = a[(r1, j)].clone();
        a[(r1, j)] = a[(r2, j)].clone();
        a[(r2, j)] = x;
    }
    for j in 0..u.cols() {
        let x = u[(r1, j)].clone();
        u[(r1, j)] = u[(r2, j)].clone();
        u[(r2, j)] = x;
    }
}

fn swap_cols(a: &mut IntMatrix, v: &mut IntMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.rows() {
        let x = a[(i, c1)].clone();
        a[(i, c1)] = a[(i, c2)].clone();
        a[(i, c2)] = x;
    }
    for i in 0..v.rows() {
        let x = v[(i, c1)].clone();
        v[(i, c1)] = v[(i, c2)].clone();
        v[(i, c2)] = x;
    }
}

/// row_i -= q * row_k
fn row_op(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &Int) {
    for j in 0..a.cols() {
        let t = q * &a[(k, j)];
        a[(i, j)] -= t;
    }
    for j in 0..u.cols() {
        let t = q * &u[(k, j)];
        u[(i, j)] -= t;
    }
}

/// col_j -= q * col_k
fn col_op(a: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &Int) {
    for i in 0..a.rows() {
        let t = q * &a[(i, k)];
        a[(i, j)] -= t;
    }
    for i in 0..v.rows() {
        let t = q * &v[(i, k)];
        v[(i, j)] -= t;
    }
}

/// row_k += row_i
fn add_row(a: &mut IntMatrix, u: &mut IntMatrix, k: usize, i: usize) {
    for j in 0..a.cols() {
        let t = a[(i, j)].clone();
        a[(k, j)] += t;
    }
    for j in 0..u.cols() {
        let t = u[(i, j)].clone();
        u[(k, j)] += t;
    }
}

fn negate_row(a: &mut IntMatrix, u: &mut IntMatrix, k: usize) {
    for j in 0..a.cols() {
        let x = -a[(k, j)].clone();
        a[(k, j)] = x;
    }
    for j in 0..u.cols() {
        let x = -u[(k, j)].clone();
        u[(k, j)] = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = IntMatrix::from_rows_i64(&[vec![1]]);
        assert_eq!(m.det(), int(1));
        let m = IntMatrix::from_rows_i64(&[vec![2, -1], vec![-1, 3]]);
        assert_eq!(m.det(), int(5));
        let m = IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), int(-1));
    }

    #[test]
    fn det_singular() {
        let m = IntMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.det(), int(0));
    }

    #[test]
    fn snf_identity() {
        let snf = smith_normal_form(&IntMatrix::identity(4));
        assert_eq!(snf.structure.invariant_factors, vec![1, 1, 1, 1]);
        assert_eq!(snf.structure.free_rank, 0);
    }

    #[test]
    fn snf_transforms_valid() {
        let m = IntMatrix::from_rows_i64(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        assert_eq!(snf.u.abs_det(), int(1));
        assert_eq!(snf.v.abs_det(), int(1));
        assert_eq!(snf.structure.invariant_factors, vec![1, 3, 21]);
        assert_eq!(snf.structure.free_rank, 1);
    }

    #[test]
    fn cyclic_detection() {
        let s = AbelianStructure { invariant_factors: vec![1, 1, 1, 25], free_rank: 0 };
        assert!(s.is_cyclic());
        assert_eq!(s.order(), Some(int(25)));
        let s = AbelianStructure { invariant_factors: vec![1, 1, 5, 5], free_rank: 0 };
        assert!(!s.is_cyclic());
    }
}
