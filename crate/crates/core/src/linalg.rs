//! Exact integer/rational linear algebra: the inclusion-exclusion
//! constraint system, fraction-free rank, and Smith normal form.
//! No floating point anywhere.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// A dense matrix over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigRational::from(BigInt::from(x))))
            .collect();
        ExactMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    /// Integer rows after clearing denominators row by row.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    let d = self.get(i, j).denom();
                    lcm = num::integer::lcm(lcm, d.clone());
                }
                (0..self.cols)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// TSV rendering; integers stay plain, non-integers print as p/q.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols)
                .map(|j| {
                    let e = self.get(i, j);
                    if e.denom().is_one() {
                        e.numer().to_string()
                    } else {
                        format!("{}/{}", e.numer(), e.denom())
                    }
                })
                .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Rank over Q by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        m.retain(|row| row.iter().any(|x| !x.is_zero()));
        let rows = m.len();
        if rows == 0 || self.cols == 0 {
            return 0;
        }
        let cols = self.cols;
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut col = 0;
        while rank < rows && col < cols {
            // pivot with least absolute value in this column
            let pivot_row = (rank..rows)
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| m[i][col].abs());
            let Some(p) = pivot_row else {
                col += 1;
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            col += 1;
        }
        rank
    }
}

/// Dimension of the rational nullspace: cols - rank.
pub fn nullspace_dimension(m: &ExactMatrix) -> usize {
    m.cols() - m.rank()
}

/// Smith normal form data: elementary divisors d1 | d2 | ... and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// True iff every nonzero elementary divisor is 1, i.e. the cokernel
    /// is free.
    pub fn is_torsion_free(&self) -> bool {
        self.diagonal.iter().take(self.rank).all(|d| d.is_one())
    }
}

/// Smith normal form of an integer matrix by row/column reduction with
/// pivoting on the least nonzero absolute value.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).denom().is_one() {
                return Err(Error::NonIntegerEntry { row: i, col: j });
            }
        }
    }
    let mut a = m.integer_rows();
    let (rows, cols) = (a.len(), m.cols());
    let dim = rows.min(cols);
    let mut diagonal = Vec::new();

    let mut t = 0;
    'outer: while t < dim {
        // locate a pivot with least |value| in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break 'outer;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // clear row and column; restart if a remainder shrinks the pivot
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..cols {
                        let v = &a[i][j] - &q * &a[t][j];
                        a[i][j] = v;
                    }
                    if !a[i][t].is_zero() {
                        // nonzero remainder: swap up as the new, smaller pivot
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().skip(t) {
                        let v = &row[j] - &q * &row[t];
                        row[j] = v;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        // divisibility: pivot must divide every trailing entry
        let mut fixed = true;
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    // fold the offending row into row t and redo
                    for jj in t..cols {
                        let v = &a[t][jj] + &a[i][jj];
                        a[t][jj] = v;
                    }
                    fixed = false;
                    break;
                }
            }
            if !fixed {
                break;
            }
        }
        if !fixed {
            continue 'outer;
        }
        diagonal.push(a[t][t].abs());
        t += 1;
    }
    let rank = diagonal.len();
    while diagonal.len() < dim {
        diagonal.push(BigInt::zero());
    }
    Ok(SmithForm { diagonal, rank })
}

/// Builds the inclusion-exclusion constraint matrix of a lattice: one
/// column per element, one row for v(0) = 0 and one per distinct-element
/// subset of size 2..=max_subset_size. Zero rows are dropped and rows are
/// de-duplicated.
pub fn constraint_matrix(lat: &FiniteLattice, max_subset_size: usize) -> Result<ExactMatrix> {
    let n = lat.size();
    let k_max = max_subset_size.min(n);
    if n >= 2 && k_max < 2 {
        return Err(Error::SizeCapExceeded { size: 2, cap: k_max });
    }
    let mut row_count_guard = 0usize;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut zero_row = vec![0i64; n];
    zero_row[lat.bottom()] = 1;
    rows.push(zero_row);

    // iterate over subsets by increasing size, elements in index order
    let mut subset: Vec<usize> = Vec::new();
    fn visit(
        lat: &FiniteLattice,
        k: usize,
        start: usize,
        subset: &mut Vec<usize>,
        rows: &mut Vec<Vec<i64>>,
        guard: &mut usize,
    ) -> Result<()> {
        if subset.len() == k {
            *guard += 1;
            if *guard > 2_000_000 {
                return Err(Error::SizeCapExceeded { size: *guard, cap: 2_000_000 });
            }
            rows.push(inclusion_exclusion_row(lat, subset));
            return Ok(());
        }
        for x in start..lat.size() {
            subset.push(x);
            visit(lat, k, x + 1, subset, rows, guard)?;
            subset.pop();
        }
        Ok(())
    }
    for k in 2..=k_max {
        visit(lat, k, 0, &mut subset, &mut rows, &mut row_count_guard)?;
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows.sort();
    rows.dedup();
    Ok(ExactMatrix::from_integer_rows(&rows))
}

/// The row v(x1 v ... v xk) - sum_s (-1)^{s+1} sum v(meet of s-subsets).
fn inclusion_exclusion_row(lat: &FiniteLattice, subset: &[usize]) -> Vec<i64> {
    let n = lat.size();
    let k = subset.len();
    let mut row = vec![0i64; n];
    row[lat.join_all(subset)] += 1;
    for mask in 1u32..(1 << k) {
        let part: Vec<usize> =
            (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| subset[i]).collect();
        let sign = if part.len() % 2 == 1 { -1 } else { 1 };
        row[lat.meet_all(&part)] += sign;
    }
    row
}

/// Rows forcing v(g(x)) = v(x) for every element, for one automorphism.
pub fn invariance_rows(lat: &FiniteLattice, map: &[usize]) -> Vec<Vec<i64>> {
    let n = lat.size();
    let mut rows = Vec::new();
    for x in 0..n {
        if map[x] != x {
            let mut row = vec![0i64; n];
            row[x] += 1;
            row[map[x]] -= 1;
            if row.iter().any(|&v| v != 0) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Appends extra integer rows to a matrix.
pub fn stack_rows(m: &ExactMatrix, extra: &[Vec<i64>]) -> ExactMatrix {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..m.rows() {
        rows.push(
            (0..m.cols())
                .map(|j| {
                    let e = m.get(i, j);
                    debug_assert!(e.denom().is_one());
                    i64::try_from(e.numer()).expect("constraint entries fit i64")
                })
                .collect(),
        );
    }
    rows.extend_from_slice(extra);
    ExactMatrix::from_integer_rows(&rows)
}
