use super::field::{Field, FieldElem};
use super::upoly::UPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<FieldElem>>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, data: Vec<Vec<FieldElem>>) -> Mat {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols));
        Mat { field, rows, cols, data }
    }

    pub fn from_ints(field: Field, data: &[Vec<i64>]) -> Mat {
        Mat::from_rows(field, data.iter().map(|r| r.iter().map(|&v| field.int(v)).collect()).collect())
    }

    pub fn transpose(&self) -> Mat {
        let data = (0..self.cols).map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect()).collect();
        Mat { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i][j] = &out.data[i][j] + &(a * &o.data[k][j]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        self.data
            .iter()
            .map(|r| r.iter().zip(v).fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.clone()).0
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols);
        if self.rows == 0 {
            return self.field.one();
        }
        if self.field == Field::Q {
            return det_rational(&self.data);
        }
        let (r, d) = bareiss(self.clone());
        if r < self.rows {
            self.field.zero()
        } else {
            d
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else { continue };
            m.data.swap(r, p);
            let inv = m.data[r][c].inv().unwrap();
            for v in m.data[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let f = m.data[i][c].clone();
                    let (top, bottom) = if i < r { m.data.split_at_mut(r) } else { m.data.split_at_mut(i) };
                    let (pivot_row, row) = if i < r { (&bottom[0], &mut top[i]) } else { (&top[r], &mut bottom[0]) };
                    for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                        if !y.is_zero() {
                            *x = &*x - &(&f * y);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right nullspace `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r.data[i][f];
                }
                v
            })
            .collect()
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let mut aug = self.clone();
        for (row, bi) in aug.data.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        aug.cols += 1;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.data[i][self.cols].clone();
        }
        Some(x)
    }
}

/// Bareiss elimination with row/column pivoting; returns `(rank, signed last pivot)`.
fn bareiss(mut m: Mat) -> (usize, FieldElem) {
    let f = m.field;
    let mut prev = f.one();
    let mut sign = f.one();
    let mut rank = 0;
    let (rows, cols) = (m.rows, m.cols);
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(p) = (rank..rows).find(|&i| !m.data[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        if p != rank {
            m.data.swap(p, rank);
            sign = -sign;
        }
        let piv = m.data[rank][col].clone();
        let prev_inv = prev.inv().unwrap();
        for i in rank + 1..rows {
            let lead = m.data[i][col].clone();
            for j in col + 1..cols {
                let v = &(&(&piv * &m.data[i][j]) - &(&lead * &m.data[rank][j])) * &prev_inv;
                m.data[i][j] = v;
            }
            m.data[i][col] = f.zero();
        }
        prev = piv;
        rank += 1;
        col += 1;
    }
    (rank, &sign * &prev)
}

/// Clears denominators row by row and runs Bareiss over the integers.
fn det_rational(rows: &[Vec<FieldElem>]) -> FieldElem {
    let n = rows.len();
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let qs: Vec<BigRational> = r.iter().map(FieldElem::to_rational).collect();
            let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &l;
            qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return Field::Q.zero() };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = BigRational::new(if negate { -prev } else { prev }, scale);
    Field::Q.rational(&det).unwrap()
}

/// Determinant of a square matrix over `k[x]` by Bareiss elimination with exact division.
pub fn det_upoly(m: &[Vec<UPoly>], field: Field) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one(field);
    }
    let mut a: Vec<Vec<UPoly>> = m.to_vec();
    let mut prev = UPoly::one(field);
    let mut neg = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return UPoly::zero(field);
        };
        if p != k {
            a.swap(p, k);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division must be exact");
            }
            a[i][k] = UPoly::zero(field);
        }
        prev = a[k][k].clone();
    }
    if neg {
        -&a[n - 1][n - 1]
    } else {
        a[n - 1][n - 1].clone()
    }
}

/// Rank of a matrix over the fraction field `k(x)`, by symbolic Bareiss.
pub fn rank_upoly(m: &[Vec<UPoly>], field: Field) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut prev = UPoly::one(field);
    let (mut rank, mut col) = (0, 0);
    while rank < rows && col < cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        a.swap(p, rank);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &(&a[rank][col] * &a[i][j]) - &(&a[i][col] * &a[rank][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division must be exact");
            }
            a[i][col] = UPoly::zero(field);
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank_and_det() {
        let m = Mat::identity(Field::Q, 3);
        assert_eq!(m.rank(), 3);
        assert!(m.det().is_one());
    }

    #[test]
    fn zero_row_block_drops_rank() {
        let m = Mat::from_ints(Field::Q, &[vec![1, 2, 3], vec![0, 0, 0], vec![2, 4, 7]]);
        assert_eq!(m.rank(), 2);
        assert!(m.det().is_zero());
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = Mat::from_ints(Field::Q, &[vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]]);
        // 2*(3*-2 - 4*5) + 1*(1*-2 - 0) = -52 - 2 = -54
        assert_eq!(m.det(), Field::Q.int(-54));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = Mat::from_ints(Field::Fp(7), &[vec![1, 2, 3, 4], vec![2, 4, 6, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn poly_det() {
        let f = Field::Q;
        let x = UPoly::x(f);
        let one = UPoly::one(f);
        // det [[x, 1], [1, x]] = x^2 - 1
        let d = det_upoly(&[vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]], f);
        assert_eq!(d, UPoly::from_ints(f, &[-1, 0, 1]));
        assert_eq!(rank_upoly(&[vec![x.clone(), one.clone()], vec![x.pow(2), x.clone()]], f), 1);
    }
}
