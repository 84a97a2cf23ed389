use super::field::{Field, FieldElem};
use super::hpoly::HPoly;
use super::linalg::{rank_upoly, Mat};
use crate::error::{Error, Result};

/// A map of split bundles `⊕ O(-c_j) -> ⊕ O(-r_i)` on `P^1`.
///
/// Entry `(i, j)` is a binary form of degree `c_j - r_i`; entries with negative
/// expected degree are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    field: Field,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
    entries: Vec<Vec<HPoly>>,
}

impl GradedMatrix {
    pub fn new(field: Field, row_twists: Vec<i64>, col_twists: Vec<i64>, entries: Vec<Vec<HPoly>>) -> Result<GradedMatrix> {
        if entries.len() != row_twists.len() || entries.iter().any(|r| r.len() != col_twists.len()) {
            return Err(Error::InvalidInput("graded matrix shape does not match its twists".into()));
        }
        let mut m = GradedMatrix { field, row_twists, col_twists, entries };
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.expected_degree(i, j);
                let p = &m.entries[i][j];
                if p.field() != field {
                    return Err(Error::FieldMismatch(p.field().to_string(), field.to_string()));
                }
                if p.is_zero() {
                    m.entries[i][j] = HPoly::zero(field, 2, e.max(0) as u32);
                } else if e < 0 || p.degree() as i64 != e {
                    return Err(Error::InvalidInput(format!(
                        "entry ({i},{j}) has degree {} but the twists require {e}",
                        p.degree()
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn from_fn(field: Field, row_twists: Vec<i64>, col_twists: Vec<i64>, mut f: impl FnMut(usize, usize, i64) -> HPoly) -> GradedMatrix {
        let entries = (0..row_twists.len())
            .map(|i| (0..col_twists.len()).map(|j| f(i, j, col_twists[j] - row_twists[i])).collect())
            .collect();
        GradedMatrix::new(field, row_twists, col_twists, entries).expect("from_fn produced inconsistent degrees")
    }

    pub fn zero(field: Field, row_twists: Vec<i64>, col_twists: Vec<i64>) -> GradedMatrix {
        GradedMatrix::from_fn(field, row_twists, col_twists, |_, _, d| HPoly::zero(field, 2, d.max(0) as u32))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.row_twists.len()
    }

    pub fn cols(&self) -> usize {
        self.col_twists.len()
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    pub fn entry(&self, i: usize, j: usize) -> &HPoly {
        &self.entries[i][j]
    }

    pub fn expected_degree(&self, i: usize, j: usize) -> i64 {
        self.col_twists[j] - self.row_twists[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<HPoly> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul(&self, o: &GradedMatrix) -> Result<GradedMatrix> {
        if self.col_twists != o.row_twists {
            return Err(Error::InvalidInput("graded product: inner twists differ".into()));
        }
        let f = self.field;
        Ok(GradedMatrix::from_fn(f, self.row_twists.clone(), o.col_twists.clone(), |i, k, d| {
            let mut acc = HPoly::zero(f, 2, d.max(0) as u32);
            for j in 0..self.cols() {
                let (a, b) = (&self.entries[i][j], &o.entries[j][k]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn sub(&self, o: &GradedMatrix) -> Result<GradedMatrix> {
        if self.row_twists != o.row_twists || self.col_twists != o.col_twists {
            return Err(Error::InvalidInput("graded difference: twists differ".into()));
        }
        Ok(GradedMatrix::from_fn(self.field, self.row_twists.clone(), self.col_twists.clone(), |i, j, _| {
            &self.entries[i][j] - &o.entries[i][j]
        }))
    }

    /// The same map tensored with `O(-s)`.
    pub fn shifted(&self, s: i64) -> GradedMatrix {
        GradedMatrix {
            field: self.field,
            row_twists: self.row_twists.iter().map(|t| t + s).collect(),
            col_twists: self.col_twists.iter().map(|t| t + s).collect(),
            entries: self.entries.clone(),
        }
    }

    /// The dual map: twists are negated and swapped.
    pub fn transpose(&self) -> GradedMatrix {
        let rt = self.col_twists.iter().map(|t| -t).collect();
        let ct = self.row_twists.iter().map(|t| -t).collect();
        GradedMatrix::from_fn(self.field, rt, ct, |i, j, _| self.entries[j][i].clone())
    }

    /// Scalar matrix at the point `[x : 1]`.
    pub fn eval(&self, x: &FieldElem) -> Mat {
        let pt = [x.clone(), self.field.one()];
        Mat::from_rows(self.field, self.entries.iter().map(|r| r.iter().map(|p| p.eval(&pt)).collect()).collect())
    }

    fn column_degree_bound(&self) -> i64 {
        (0..self.cols())
            .map(|j| {
                (0..self.rows())
                    .filter(|&i| !self.entries[i][j].is_zero())
                    .map(|i| self.expected_degree(i, j))
                    .max()
                    .unwrap_or(0)
            })
            .sum()
    }

    /// Rank over the fraction field `k(x0, x1)`.
    ///
    /// Every minor has degree at most the sum of the column degree bounds `D`, so
    /// the maximum rank over `D + 1` distinct evaluation points is the generic
    /// rank. Small prime fields without enough points fall back to symbolic
    /// elimination over `k[x]`.
    pub fn rank(&self) -> usize {
        let full = self.rows().min(self.cols());
        let bound = self.column_degree_bound() as u64;
        let mut best = 0;
        for i in 0..=bound {
            let Some(x) = self.field.point(i) else {
                let polys: Vec<Vec<_>> = self.entries.iter().map(|r| r.iter().map(|p| p.dehomogenize()).collect()).collect();
                return rank_upoly(&polys, self.field);
            };
            best = best.max(self.eval(&x).rank());
            if best == full {
                break;
            }
        }
        best
    }

    /// Minimal graded basis of the kernel, found degree by degree.
    ///
    /// Columns are polynomial vectors generating the kernel sheaf, in order of
    /// increasing twist. The search stops at the degree bound "sum over columns of
    /// the largest entry degree, plus one"; running past it is an error.
    pub fn kernel_basis(&self) -> Result<GradedMatrix> {
        let f = self.field;
        let expected = self.cols() - self.rank();
        let ct = self.col_twists.clone();
        if expected == 0 {
            return GradedMatrix::new(f, ct, vec![], vec![vec![]; self.cols()]);
        }
        let bound = self.column_degree_bound() + 1;
        let tmin = *ct.iter().min().unwrap();
        let mut gens: Vec<(i64, Vec<HPoly>)> = vec![];
        for t in tmin..=tmin + bound {
            let layout = VarLayout::new(&ct, t);
            if layout.len == 0 {
                continue;
            }
            let mut sys = Mat::zeros(f, 0, layout.len);
            let eq_layout = VarLayout::new(&self.row_twists, t);
            sys.data = vec![vec![f.zero(); layout.len]; eq_layout.len];
            sys.rows = eq_layout.len;
            for (var, (j, e)) in layout.vars().enumerate() {
                let deg = (t - ct[j]) as u32;
                let mono = HPoly::monomial(f.one(), [deg - e, e, 0], 2);
                for i in 0..self.rows() {
                    let a = &self.entries[i][j];
                    if a.is_zero() {
                        continue;
                    }
                    let img = a * &mono;
                    for (k, c) in img.to_dense().into_iter().enumerate() {
                        sys.data[eq_layout.offset[i] + k][var] = c;
                    }
                }
            }
            let space = sys.nullspace();
            if space.is_empty() {
                continue;
            }
            let mut span: Vec<Vec<FieldElem>> = vec![];
            for (ts, g) in &gens {
                let shift = (t - ts) as u32;
                for e in 0..=shift {
                    let mono = HPoly::monomial(f.one(), [shift - e, e, 0], 2);
                    let v: Vec<HPoly> = g.iter().map(|p| p * &mono).collect();
                    span.push(layout.flatten(&v));
                }
            }
            let mut r = Mat::from_rows(f, span.clone()).rank_or_zero(layout.len);
            for v in space {
                let mut trial = span.clone();
                trial.push(v.clone());
                let r2 = Mat::from_rows(f, trial.clone()).rank_or_zero(layout.len);
                if r2 > r {
                    span = trial;
                    r = r2;
                    gens.push((t, layout.unflatten(f, &v)));
                    if gens.len() == expected {
                        let cols: Vec<i64> = gens.iter().map(|(t, _)| *t).collect();
                        let entries = (0..self.cols()).map(|j| gens.iter().map(|(_, g)| g[j].clone()).collect()).collect();
                        return GradedMatrix::new(f, ct, cols, entries);
                    }
                }
            }
        }
        Err(Error::KernelBound { bound, found: gens.len(), expected })
    }

    /// Coefficients of all entries, row-major, each entry densely in its expected degree.
    pub fn flatten(&self) -> Vec<FieldElem> {
        let mut out = vec![];
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let d = self.expected_degree(i, j);
                if d >= 0 {
                    out.extend(self.entries[i][j].clone().with_degree(d as u32).to_dense());
                }
            }
        }
        out
    }

    /// Basis of all graded matrices with the given twists, one monomial entry each.
    pub fn monomial_basis(field: Field, row_twists: &[i64], col_twists: &[i64]) -> Vec<GradedMatrix> {
        let mut out = vec![];
        for i in 0..row_twists.len() {
            for j in 0..col_twists.len() {
                let d = col_twists[j] - row_twists[i];
                for e in 0..=d.max(-1) {
                    let (d, e) = (d as u32, e as u32);
                    out.push(GradedMatrix::from_fn(field, row_twists.to_vec(), col_twists.to_vec(), |a, b, dd| {
                        if (a, b) == (i, j) {
                            HPoly::monomial(field.one(), [d - e, e, 0], 2)
                        } else {
                            HPoly::zero(field, 2, dd.max(0) as u32)
                        }
                    }));
                }
            }
        }
        out
    }

    pub fn linear_combination(field: Field, basis: &[GradedMatrix], coeffs: &[FieldElem], row_twists: &[i64], col_twists: &[i64]) -> GradedMatrix {
        GradedMatrix::from_fn(field, row_twists.to_vec(), col_twists.to_vec(), |i, j, d| {
            let mut acc = HPoly::zero(field, 2, d.max(0) as u32);
            for (b, c) in basis.iter().zip(coeffs) {
                if !c.is_zero() && !b.entries[i][j].is_zero() {
                    acc = &acc + &b.entries[i][j].scale(c);
                }
            }
            acc
        })
    }
}

/// Solutions `X` (with the given twists) of the linear equation `map(X) = rhs`.
///
/// Returns a particular solution (or `None` if inconsistent; the zero matrix when
/// `rhs` is `None`) together with a basis of the homogeneous solution space.
pub(crate) fn solve_graded(
    field: Field,
    row_twists: &[i64],
    col_twists: &[i64],
    map: impl Fn(&GradedMatrix) -> GradedMatrix,
    rhs: Option<&GradedMatrix>,
) -> (Option<GradedMatrix>, Vec<GradedMatrix>) {
    let basis = GradedMatrix::monomial_basis(field, row_twists, col_twists);
    let images: Vec<Vec<FieldElem>> = basis.iter().map(|b| map(b).flatten()).collect();
    let n_eq = match (images.first(), rhs) {
        (Some(v), _) => v.len(),
        (None, Some(r)) => r.flatten().len(),
        (None, None) => 0,
    };
    let mut a = Mat::zeros(field, n_eq, basis.len());
    for (k, img) in images.iter().enumerate() {
        for (r, c) in img.iter().enumerate() {
            a.data[r][k] = c.clone();
        }
    }
    let combine = |c: &[FieldElem]| GradedMatrix::linear_combination(field, &basis, c, row_twists, col_twists);
    let particular = match rhs {
        None => Some(GradedMatrix::zero(field, row_twists.to_vec(), col_twists.to_vec())),
        Some(r) => {
            let b = r.flatten();
            if basis.is_empty() {
                b.iter().all(|x| x.is_zero()).then(|| GradedMatrix::zero(field, row_twists.to_vec(), col_twists.to_vec()))
            } else {
                a.solve(&b).map(|x| combine(&x))
            }
        }
    };
    let kernel = if basis.is_empty() { vec![] } else { a.nullspace().iter().map(|v| combine(v)).collect() };
    (particular, kernel)
}

impl Mat {
    fn rank_or_zero(&self, cols: usize) -> usize {
        if self.rows == 0 {
            0
        } else {
            debug_assert_eq!(self.cols, cols);
            self.rank()
        }
    }
}

/// Coefficient layout of a polynomial vector with entry degrees `t - twist_j`.
struct VarLayout {
    degs: Vec<i64>,
    offset: Vec<usize>,
    len: usize,
}

impl VarLayout {
    fn new(twists: &[i64], t: i64) -> VarLayout {
        let degs: Vec<i64> = twists.iter().map(|c| t - c).collect();
        let mut offset = vec![];
        let mut len = 0;
        for d in &degs {
            offset.push(len);
            if *d >= 0 {
                len += *d as usize + 1;
            }
        }
        VarLayout { degs, offset, len }
    }

    fn vars(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.degs
            .iter()
            .enumerate()
            .filter(|(_, &d)| d >= 0)
            .flat_map(|(j, &d)| (0..=d as u32).map(move |e| (j, e)))
    }

    fn flatten(&self, v: &[HPoly]) -> Vec<FieldElem> {
        let f = v[0].field();
        let mut out = vec![f.zero(); self.len];
        for (j, p) in v.iter().enumerate() {
            if self.degs[j] >= 0 {
                for (k, c) in p.clone().with_degree(self.degs[j] as u32).to_dense().into_iter().enumerate() {
                    out[self.offset[j] + k] = c;
                }
            }
        }
        out
    }

    fn unflatten(&self, f: Field, v: &[FieldElem]) -> Vec<HPoly> {
        self.degs
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                if d < 0 {
                    HPoly::zero(f, 2, 0)
                } else {
                    HPoly::from_dense(f, &v[self.offset[j]..self.offset[j] + d as usize + 1])
                }
            })
            .collect()
    }
}
