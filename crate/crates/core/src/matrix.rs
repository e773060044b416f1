//! Dense matrices of polynomials.

use std::ops::{Index, IndexMut};

use crate::error::{MfError, Result};
use crate::poly::Poly;
use crate::ring::RingCtx;
use crate::scalar::GaussRat;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<Poly>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Mat {
        Mat { rows, cols, nvars, data: vec![Poly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Mat {
        Mat::scalar(n, &Poly::one(nvars))
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: &Poly) -> Mat {
        let mut m = Mat::zeros(n, n, c.nvars());
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[Poly], nvars: usize) -> Mat {
        let mut m = Mat::zeros(entries.len(), entries.len(), nvars);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Build from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Poly>>, nvars: usize) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MfError::SizeMismatch("ragged rows".into()));
        }
        let data: Vec<Poly> = rows.into_iter().flatten().collect();
        if let Some(p) = data.iter().find(|p| p.nvars() != nvars) {
            return Err(MfError::VariableMismatch { expected: nvars, found: p.nvars() });
        }
        Ok(Mat { rows: r, cols: c, nvars, data })
    }

    pub fn from_fn(rows: usize, cols: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, nvars, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.nvars, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Mat {
        let data: Vec<Poly> = self.data.iter().map(f).collect();
        let nvars = data.first().map_or(self.nvars, Poly::nvars);
        Mat { rows: self.rows, cols: self.cols, nvars, data }
    }

    /// Entrywise normal form modulo `f`.
    pub fn nf(&self, ctx: &RingCtx) -> Mat {
        self.map(|p| ctx.reduce(p))
    }

    pub fn scale(&self, c: &GaussRat) -> Mat {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, c: &Poly) -> Mat {
        self.map(|p| p * c)
    }

    pub fn neg(&self) -> Mat {
        self.map(|p| -p)
    }

    fn check_same_shape(&self, other: &Mat) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MfError::SizeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Mat { data, ..self.clone_shape() })
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Mat { data, ..self.clone_shape() })
    }

    fn clone_shape(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, nvars: self.nvars, data: Vec::new() }
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(MfError::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        let cell = &mut out[(i, j)];
                        *cell = &*cell + &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internal use where shapes are known to agree.
    pub fn mul(&self, other: &Mat) -> Mat {
        self.try_mul(other).expect("matrix shapes agree")
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.try_add(other).expect("matrix shapes agree")
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.try_sub(other).expect("matrix shapes agree")
    }

    pub fn block_diag(blocks: &[&Mat], nvars: usize) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols, nvars);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// `[[a, b], [c, d]]` from four blocks with compatible shapes.
    pub fn block2(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let mut out = Mat::zeros(a.rows + c.rows, a.cols + b.cols, a.nvars);
        out.set_block(0, 0, a);
        out.set_block(0, a.cols, b);
        out.set_block(a.rows, 0, c);
        out.set_block(a.rows, a.cols, d);
        out
    }

    pub fn hstack(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.rows, b.rows);
        let mut out = Mat::zeros(a.rows, a.cols + b.cols, a.nvars);
        out.set_block(0, 0, a);
        out.set_block(0, a.cols, b);
        out
    }

    pub fn vstack(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.cols);
        let mut out = Mat::zeros(a.rows + b.rows, a.cols, a.nvars);
        out.set_block(0, 0, a);
        out.set_block(a.rows, 0, b);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), self.nvars, |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, self.nvars, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize], nvars: usize) -> Mat {
        let mut m = Mat::zeros(perm.len(), perm.len(), nvars);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = Poly::one(nvars);
        }
        m
    }

    /// Determinant by expansion over row subsets, reduced modulo `f` at each step.
    pub fn det_mod(&self, ctx: &RingCtx) -> Poly {
        self.det_with(|p| ctx.reduce(&p))
    }

    /// Determinant as an exact polynomial.
    pub fn det(&self) -> Poly {
        self.det_with(|p| p)
    }

    fn det_with(&self, reduce: impl Fn(Poly) -> Poly) -> Poly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        // dp[mask]: signed sum over injections of the first popcount(mask)
        // columns into the rows in `mask`.
        let mut dp = vec![Poly::zero(self.nvars); 1 << n];
        dp[0] = Poly::one(self.nvars);
        for mask in 0usize..(1 << n) {
            if dp[mask].is_zero() {
                continue;
            }
            let col = mask.count_ones() as usize;
            if col == n {
                continue;
            }
            for row in 0..n {
                if mask & (1 << row) != 0 || self[(row, col)].is_zero() {
                    continue;
                }
                let above = (mask & ((1 << row) - 1)).count_ones();
                let higher = col as u32 - above;
                let term = &dp[mask] * &self[(row, col)];
                let next = mask | (1 << row);
                dp[next] = if higher.is_multiple_of(2) { reduce(&dp[next] + &term) } else { reduce(&dp[next] - &term) };
            }
        }
        dp.pop().expect("nonempty table")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}
