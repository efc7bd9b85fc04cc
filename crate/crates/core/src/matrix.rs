//! Dense exact matrices over a field, with reduced row echelon form and
//! nullspace extraction.
//!
//! Pivot selection is deterministic: columns are scanned left to right and
//! the first nonzero entry at or below the current row becomes the pivot.
//! Nullspace vectors are indexed by the non-pivot (free) columns in
//! ascending order, so two runs over the same field produce identical bases.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A row-major matrix with all entries in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// A basis of the right nullspace `{v : M v = 0}`.
///
/// `vectors[k]` has a 1 in position `free_columns[k]`, zeros in the other
/// free positions, and the negated echelon entries in the pivot positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullspaceBasis {
    pub free_columns: Vec<usize>,
    pub vectors: Vec<Vec<Scalar>>,
}

impl NullspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

impl Matrix {
    pub fn zero(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: *field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch {
                    lhs_rows: nrows,
                    lhs_cols: ncols,
                    rhs_rows: 1,
                    rhs_cols: row.len(),
                });
            }
            for s in row {
                if s.field() != *field {
                    return Err(Error::FieldMismatch(*field, s.field()));
                }
                entries.push(s);
            }
        }
        Ok(Matrix {
            field: *field,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Builds a matrix of small integers embedded into `field`.
    pub fn from_integers(field: &FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let scalar_rows = rows
            .iter()
            .map(|r| r.iter().map(|&n| field.integer(n)).collect())
            .collect();
        Matrix::from_rows(field, scalar_rows)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({}, {}) out of range", i, j);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({}, {}) out of range", i, j);
        assert!(value.field() == self.field, "entry field must match the matrix field");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    fn check_same_field(&self, rhs: &Matrix) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field, rhs.field))
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_mismatch(rhs));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_mismatch(rhs));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = c * a;
        }
        out
    }

    fn shape_mismatch(&self, rhs: &Matrix) -> Error {
        Error::ShapeMismatch {
            lhs_rows: self.rows,
            lhs_cols: self.cols,
            rhs_rows: rhs.rows,
            rhs_cols: rhs.cols,
        }
    }

    /// Matrix product; the inner dimensions must agree.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(self.shape_mismatch(rhs));
        }
        let mut out = Matrix::zero(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let acc = out.get(i, j) + &(a * b);
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    /// `self * rhs - rhs * self` for square matrices of equal size.
    pub fn commutator(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != self.cols || rhs.rows != rhs.cols || self.rows != rhs.rows {
            return Err(self.shape_mismatch(rhs));
        }
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Row vector times matrix: `(v M)_j = sum_i v_i m[i][j]`.
    pub fn row_times(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch {
                lhs_rows: 1,
                lhs_cols: v.len(),
                rhs_rows: self.rows,
                rhs_cols: self.cols,
            });
        }
        let mut out = vec![self.field.zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.field() != self.field {
                return Err(Error::FieldMismatch(self.field, c.field()));
            }
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = &*slot + &(c * self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `(M v)_i = sum_j m[i][j] v_j`.
    pub fn times_col(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for (j, c) in v.iter().enumerate() {
                if c.field() != self.field {
                    return Err(Error::FieldMismatch(self.field, c.field()));
                }
                if c.is_zero() || self.get(i, j).is_zero() {
                    continue;
                }
                *slot = &*slot + &(self.get(i, j) * c);
            }
        }
        Ok(out)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        assert!(self.rows == self.cols, "trace of a non-square matrix");
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Reduced row echelon form and the pivot column indices.
    ///
    /// Pivot rows are normalized to leading 1 and every other entry in a
    /// pivot column is eliminated.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(r) = found else { continue };
            m.swap_rows(r, pivot_row);
            let inv = m
                .get(pivot_row, col)
                .inv()
                .expect("pivot entries are nonzero");
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.subtract_scaled_row(r, pivot_row, &factor);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> NullspaceBasis {
        let (reduced, pivots) = self.rref();
        let free_columns: Vec<usize> =
            (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free_columns
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = reduced.get(i, f).neg();
                }
                v
            })
            .collect();
        NullspaceBasis {
            free_columns,
            vectors,
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        if c.is_one() {
            return;
        }
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.entries[idx] = c * &self.entries[idx];
        }
    }

    /// row r -= c * row src
    fn subtract_scaled_row(&mut self, r: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let term = c * &self.entries[src * self.cols + j];
            if term.is_zero() {
                continue;
            }
            let idx = r * self.cols + j;
            self.entries[idx] = &self.entries[idx] - &term;
        }
    }

    /// JSON form `{"rows": r, "cols": c, "entries": [..]}` with the entries
    /// row-major in their text encoding.
    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|s| json!(s.to_string())).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: &FieldSpec, value: &Value) -> Result<Matrix> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("matrix: expected a JSON object".into()))?;
        let dim_at = |key: &str| -> Result<usize> {
            obj.get(key)
                .and_then(Value::as_u64)
                .map(|n| n as usize)
                .ok_or_else(|| Error::Parse(format!("matrix: missing dimension {:?}", key)))
        };
        let rows = dim_at("rows")?;
        let cols = dim_at("cols")?;
        let raw = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix: missing entry array".into()))?;
        if raw.len() != rows * cols {
            return Err(Error::Parse(format!(
                "matrix: expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                raw.len()
            )));
        }
        let mut entries = Vec::with_capacity(raw.len());
        for (i, v) in raw.iter().enumerate() {
            let s = v
                .as_str()
                .ok_or_else(|| Error::Parse(format!("matrix: entry {} must be a string", i)))?;
            entries.push(field.parse_scalar(s)?);
        }
        Ok(Matrix {
            field: *field,
            rows,
            cols,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = Matrix::identity(&q(), 4);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::from_integers(&q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r, Matrix::from_integers(&q(), &[vec![1, 2], vec![0, 0]]).unwrap());
        assert_eq!(pivots, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_scales_and_eliminates() {
        let m = Matrix::from_integers(&q(), &[vec![2, 4, 2], vec![1, 3, 3]]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(
            r,
            Matrix::from_integers(&q(), &[vec![1, 0, -3], vec![0, 1, 2]]).unwrap()
        );
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Matrix::from_integers(
            &q(),
            &[vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![8, 10, 6, 7]],
        )
        .unwrap();
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn rref_over_gf2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let m = Matrix::from_integers(
            &f2,
            &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
        )
        .unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(
            r,
            Matrix::from_integers(&f2, &[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 0]]).unwrap()
        );
        assert_eq!(pivots, vec![0, 1]);
        let ns = m.nullspace();
        assert_eq!(ns.free_columns, vec![2]);
        assert_eq!(ns.vectors, vec![vec![f2.one(), f2.one(), f2.one()]]);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = Matrix::from_integers(
            &q(),
            &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]],
        )
        .unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.dim() + m.rank(), m.cols());
        assert_eq!(ns.free_columns, vec![2, 3]);
        for v in &ns.vectors {
            assert!(m.times_col(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn nullspace_of_injective_map_is_trivial() {
        let m = Matrix::from_integers(&q(), &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.nullspace().dim(), 0);
    }

    #[test]
    fn mul_by_hand() {
        let a = Matrix::from_integers(&q(), &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let b = Matrix::from_integers(&q(), &[vec![7, 8], vec![9, 10], vec![11, 12]]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(
            c,
            Matrix::from_integers(&q(), &[vec![58, 64], vec![139, 154]]).unwrap()
        );
    }

    #[test]
    fn mul_shape_mismatch() {
        let a = Matrix::zero(&q(), 2, 3);
        let b = Matrix::zero(&q(), 2, 3);
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn commutator_by_hand() {
        let e = Matrix::from_integers(&q(), &[vec![0, 1], vec![0, 0]]).unwrap();
        let f = Matrix::from_integers(&q(), &[vec![0, 0], vec![1, 0]]).unwrap();
        let h = e.commutator(&f).unwrap();
        assert_eq!(h, Matrix::from_integers(&q(), &[vec![1, 0], vec![0, -1]]).unwrap());
        assert!(e.commutator(&e).unwrap().is_zero());
    }

    #[test]
    fn row_times_and_times_col() {
        let m = Matrix::from_integers(&q(), &[vec![1, 2], vec![3, 4]]).unwrap();
        let v = vec![q().integer(1), q().integer(1)];
        assert_eq!(
            m.row_times(&v).unwrap(),
            vec![q().integer(4), q().integer(6)]
        );
        assert_eq!(
            m.times_col(&v).unwrap(),
            vec![q().integer(3), q().integer(7)]
        );
    }

    #[test]
    fn trace_and_transpose() {
        let m = Matrix::from_integers(&q(), &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.trace(), q().integer(5));
        assert_eq!(
            m.transpose(),
            Matrix::from_integers(&q(), &[vec![1, 3], vec![2, 4]]).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_rows(
            &q(),
            vec![
                vec![q().fraction(1, 2).unwrap(), q().integer(-3)],
                vec![q().zero(), q().fraction(7, 5).unwrap()],
            ],
        )
        .unwrap();
        let back = Matrix::from_json(&q(), &m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_wrong_entry_count() {
        let bad = json!({"rows": 2, "cols": 2, "entries": ["1", "2", "3"]});
        assert!(Matrix::from_json(&q(), &bad).is_err());
    }
}
