//! Lie structure of the derivation algebra.
//!
//! The bracket of two derivations is their commutator. Expressing every
//! bracket of labeled basis elements back in that basis yields the
//! structure constants c_{ij}^k; this module computes them, checks the Lie
//! axioms, builds the Killing form, and compares against the table shipped
//! with the crate.

use serde_json::{json, Value};

use crate::derivation::{recon, DerivationSpace};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

/// Structure constants of a bracket on basis x_1..x_n, stored densely:
/// `c[i][j][k]` is the coefficient of x_{k+1} in [x_{i+1}, x_{j+1}].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    field: FieldSpec,
    n: usize,
    coeffs: Vec<Scalar>,
}

impl BracketTable {
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        BracketTable {
            field: *field,
            n,
            coeffs: vec![field.zero(); n * n * n],
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of x_{k+1} in [x_{i+1}, x_{j+1}], 0-based indices.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[(i * self.n + j) * self.n + k]
    }

    fn set_coeff(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        self.coeffs[(i * self.n + j) * self.n + k] = c;
    }

    /// The full coefficient row of [x_{i+1}, x_{j+1}].
    pub fn bracket_row(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.n + j) * self.n;
        &self.coeffs[base..base + self.n]
    }

    /// Nonzero terms of one bracket as (0-based k, coefficient).
    pub fn terms(&self, i: usize, j: usize) -> Vec<(usize, &Scalar)> {
        self.bracket_row(i, j)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Renders one cell like `2x4-x8`, or `0` for an empty bracket.
    pub fn cell_text(&self, i: usize, j: usize) -> String {
        let mut out = String::new();
        for (k, c) in self.terms(i, j) {
            let cs = c.to_string();
            let (sign, magnitude) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if !(out.is_empty() && sign == "+") {
                out.push_str(sign);
            }
            if magnitude != "1" {
                out.push_str(&magnitude);
            }
            out.push_str(&format!("x{}", k + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Renders one cell in LaTeX math, e.g. `2x_{4}-x_{8}`.
    pub fn cell_latex(&self, i: usize, j: usize) -> String {
        let mut out = String::new();
        for (k, c) in self.terms(i, j) {
            let cs = c.to_string();
            let (sign, magnitude) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if !(out.is_empty() && sign == "+") {
                out.push_str(sign);
            }
            if magnitude != "1" {
                out.push_str(&magnitude);
            }
            out.push_str(&format!("x_{{{}}}", k + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Canonical JSON: `{"n": .., "brackets": [{"i", "j", "terms"} ..]}`
    /// listing only pairs i < j with a nonzero bracket; the rest follows by
    /// antisymmetry.
    pub fn to_json(&self) -> Value {
        let mut brackets = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let terms: Vec<Value> = self
                    .terms(i, j)
                    .into_iter()
                    .map(|(k, c)| json!({"k": k + 1, "c": c.to_string()}))
                    .collect();
                if !terms.is_empty() {
                    brackets.push(json!({"i": i + 1, "j": j + 1, "terms": terms}));
                }
            }
        }
        json!({"n": self.n, "brackets": brackets})
    }

    /// Parses the canonical JSON form, filling the i > j half by
    /// antisymmetry and leaving the diagonal zero.
    pub fn from_json(field: &FieldSpec, value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("table: expected a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("table: missing size \"n\"".into()))?
            as usize;
        let brackets = obj
            .get("brackets")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table: missing bracket array".into()))?;
        let mut table = BracketTable::zero(field, n);
        let mut seen = std::collections::HashSet::new();
        for entry in brackets {
            let e = entry
                .as_object()
                .ok_or_else(|| Error::Parse("table: bracket entries must be objects".into()))?;
            let index_at = |key: &str| -> Result<usize> {
                let raw = e
                    .get(key)
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse(format!("table: missing index {:?}", key)))?
                    as usize;
                if raw < 1 || raw > n {
                    return Err(Error::Parse(format!(
                        "table: index {:?} = {} outside 1..={}",
                        key, raw, n
                    )));
                }
                Ok(raw - 1)
            };
            let i = index_at("i")?;
            let j = index_at("j")?;
            if i >= j {
                return Err(Error::Parse(format!(
                    "table: bracket ({}, {}) must have i < j",
                    i + 1,
                    j + 1
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!(
                    "table: duplicate bracket ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            let terms = e
                .get("terms")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("table: bracket without terms".into()))?;
            for term in terms {
                let t = term
                    .as_object()
                    .ok_or_else(|| Error::Parse("table: terms must be objects".into()))?;
                let k = t
                    .get("k")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("table: term missing \"k\"".into()))?
                    as usize;
                if k < 1 || k > n {
                    return Err(Error::Parse(format!(
                        "table: term index k = {} outside 1..={}",
                        k, n
                    )));
                }
                let c = t
                    .get("c")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("table: term missing coefficient".into()))?;
                let c = field.parse_scalar(c)?;
                table.set_coeff(j, i, k - 1, c.neg());
                table.set_coeff(i, j, k - 1, c);
            }
        }
        Ok(table)
    }

    /// Embeds a rational table with integer coefficients into GF(p).
    pub fn reduce_mod_p(&self, p: u64) -> Result<BracketTable> {
        let target = FieldSpec::prime(p)?;
        let mut out = BracketTable::zero(&target, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let c = self.coeff(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let n = c.as_integer().ok_or_else(|| Error::NotInteger {
                        row: i + 1,
                        col: j + 1,
                        value: c.to_string(),
                    })?;
                    out.set_coeff(i, j, k, target.big_integer(&n));
                }
            }
        }
        Ok(out)
    }

    /// First cell (1-based i, j) where the two tables disagree, scanning
    /// rows lexicographically; `None` when they match everywhere.
    pub fn first_difference(&self, other: &BracketTable) -> Result<Option<(usize, usize)>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch {
                lhs_rows: self.n,
                lhs_cols: self.n,
                rhs_rows: other.n,
                rhs_cols: other.n,
            });
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if self.bracket_row(i, j) != other.bracket_row(i, j) {
                    return Ok(Some((i + 1, j + 1)));
                }
            }
        }
        Ok(None)
    }
}

/// Computes the structure constants of a labeled derivation space by
/// reconstructing each commutator of basis elements in the x-basis.
///
/// Requires a labeled space; an unlabeled one has no x-coordinates to
/// expand in. A commutator that fails reconstruction reports the offending
/// 1-based pair.
pub fn structure_table(space: &DerivationSpace) -> Result<BracketTable> {
    if !space.labeled {
        return Err(Error::ParameterizationMismatch);
    }
    let n = space.dim;
    let mut table = BracketTable::zero(&space.field, n);
    for i in 0..n {
        for j in 0..n {
            let br = space.basis[i].bracket(&space.basis[j])?;
            let params = recon(&br).map_err(|_| Error::NotClosed { i: i + 1, j: j + 1 })?;
            for (k, c) in params.values().iter().enumerate() {
                table.set_coeff(i, j, k, c.clone());
            }
        }
    }
    Ok(table)
}

/// First ordered pair (1-based) violating c_{ij}^k = -c_{ji}^k, if any.
pub fn verify_antisymmetry(table: &BracketTable) -> Option<(usize, usize)> {
    let n = table.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if *table.coeff(i, j, k) != table.coeff(j, i, k).neg() {
                    return Some((i + 1, j + 1));
                }
            }
        }
    }
    None
}

/// First triple i < j < k (1-based) violating the Jacobi identity, if any.
pub fn verify_jacobi(table: &BracketTable) -> Option<(usize, usize, usize)> {
    let n = table.n();
    let field = table.field();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in 0..n {
                    let mut acc = field.zero();
                    for m in 0..n {
                        acc = &acc + &(table.coeff(i, j, m) * table.coeff(m, k, l));
                        acc = &acc + &(table.coeff(j, k, m) * table.coeff(m, i, l));
                        acc = &acc + &(table.coeff(k, i, m) * table.coeff(m, j, l));
                    }
                    if !acc.is_zero() {
                        return Some((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
    }
    None
}

/// The adjoint matrix of basis element i: row j holds the coordinates of
/// [x_{i+1}, x_{j+1}].
pub fn adjoint_matrix(table: &BracketTable, i: usize) -> Matrix {
    let n = table.n();
    let mut m = Matrix::zero(table.field(), n, n);
    for j in 0..n {
        for k in 0..n {
            m.set(j, k, table.coeff(i, j, k).clone());
        }
    }
    m
}

/// The Killing form K[i][j] = trace(ad x_{i+1} compose ad x_{j+1}).
pub fn killing_form(table: &BracketTable) -> Result<Matrix> {
    let n = table.n();
    let ads: Vec<Matrix> = (0..n).map(|i| adjoint_matrix(table, i)).collect();
    let mut k = Matrix::zero(table.field(), n, n);
    for i in 0..n {
        for j in i..n {
            let t = ads[i].mul(&ads[j])?.trace();
            k.set(i, j, t.clone());
            k.set(j, i, t);
        }
    }
    Ok(k)
}

/// First triple (1-based) violating K([x_i, x_j], x_k) = -K(x_j, [x_i, x_k]),
/// the infinitesimal invariance of the Killing form, if any.
pub fn verify_killing_invariance(
    table: &BracketTable,
    killing: &Matrix,
) -> Result<Option<(usize, usize, usize)>> {
    let n = table.n();
    let field = table.field();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = field.zero();
                for m in 0..n {
                    acc = &acc + &(table.coeff(i, j, m) * killing.get(m, k));
                    acc = &acc + &(table.coeff(i, k, m) * killing.get(j, m));
                }
                if !acc.is_zero() {
                    return Ok(Some((i + 1, j + 1, k + 1)));
                }
            }
        }
    }
    Ok(None)
}

/// The table shipped with the crate, over the rationals.
pub fn golden_table() -> BracketTable {
    let raw = include_str!("../data/golden_table.json");
    let value: Value = serde_json::from_str(raw).expect("embedded table is valid JSON");
    BracketTable::from_json(&FieldSpec::rationals(), &value)
        .expect("embedded table matches the canonical format")
}

/// The shipped table embedded into `field` (reduced mod p for prime fields).
pub fn golden_table_over(field: &FieldSpec) -> Result<BracketTable> {
    let t = golden_table();
    match field.characteristic() {
        0 => Ok(t),
        p => t.reduce_mod_p(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::solve_derivations;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn computed_table() -> BracketTable {
        structure_table(&solve_derivations(&q()).unwrap()).unwrap()
    }

    #[test]
    fn computed_table_matches_the_golden_table() {
        let table = computed_table();
        let golden = golden_table();
        assert_eq!(table.first_difference(&golden).unwrap(), None);
    }

    #[test]
    fn golden_table_spot_checks() {
        let t = golden_table();
        // [x1, x2] = -2 x14
        assert_eq!(*t.coeff(0, 1, 13), q().integer(-2));
        // [x12, x13] = -2 x3 and the reverse order flips sign
        assert_eq!(*t.coeff(11, 12, 2), q().integer(-2));
        assert_eq!(*t.coeff(12, 11, 2), q().integer(2));
        // [x1, x12] = 2 x4 - x8
        assert_eq!(*t.coeff(0, 11, 3), q().integer(2));
        assert_eq!(*t.coeff(0, 11, 7), q().integer(-1));
        // [x4, x8] = 0
        assert!(t.bracket_row(3, 7).iter().all(Scalar::is_zero));
        // [x1, x13] = 3 x7
        assert_eq!(*t.coeff(0, 12, 6), q().integer(3));
        // [x14, x3] = x4 + x8
        assert_eq!(*t.coeff(13, 2, 3), q().one());
        assert_eq!(*t.coeff(13, 2, 7), q().one());
    }

    #[test]
    fn lie_axioms_hold() {
        let t = golden_table();
        assert_eq!(verify_antisymmetry(&t), None);
        assert_eq!(verify_jacobi(&t), None);
    }

    #[test]
    fn jacobi_detects_a_broken_table() {
        let mut t = golden_table();
        t.set_coeff(0, 1, 13, q().integer(5));
        t.set_coeff(1, 0, 13, q().integer(-5));
        assert_eq!(verify_antisymmetry(&t), None);
        assert!(verify_jacobi(&t).is_some());
    }

    #[test]
    fn killing_form_values() {
        let t = golden_table();
        let k = killing_form(&t).unwrap();
        // Both x4 and x8 are diagonal; their Killing products follow from
        // the eigenvalue lists read off the table.
        assert_eq!(*k.get(3, 3), q().integer(16));
        assert_eq!(*k.get(3, 7), q().integer(8));
        assert_eq!(k, k.transpose());
        assert_eq!(k.rank(), 14);
        assert_eq!(verify_killing_invariance(&t, &k).unwrap(), None);
    }

    #[test]
    fn cell_rendering() {
        let t = golden_table();
        assert_eq!(t.cell_text(0, 1), "-2x14");
        assert_eq!(t.cell_text(0, 11), "2x4-x8");
        assert_eq!(t.cell_text(3, 7), "0");
        assert_eq!(t.cell_text(0, 3), "x1");
        assert_eq!(t.cell_text(4, 9), "-x11");
        assert_eq!(t.cell_latex(0, 11), "2x_{4}-x_{8}");
        assert_eq!(t.cell_latex(1, 12), "-x_{4}+2x_{8}");
    }

    #[test]
    fn json_round_trip_is_exact() {
        let t = golden_table();
        let back = BracketTable::from_json(&q(), &t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_json(), back.to_json());
    }

    #[test]
    fn json_rejects_malformed_tables() {
        let bad = json!({"n": 14, "brackets": [{"i": 2, "j": 1, "terms": []}]});
        assert!(BracketTable::from_json(&q(), &bad).is_err());
        let bad = json!({"n": 14, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 15, "c": "1"}]}]});
        assert!(BracketTable::from_json(&q(), &bad).is_err());
        let dup = json!({"n": 14, "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 14, "c": "-2"}]},
            {"i": 1, "j": 2, "terms": [{"k": 14, "c": "-2"}]}
        ]});
        assert!(BracketTable::from_json(&q(), &dup).is_err());
    }

    #[test]
    fn reduction_mod_p_wraps_negatives() {
        let t5 = golden_table().reduce_mod_p(5).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(*t5.coeff(0, 1, 13), f5.integer(-2));
        assert_eq!(t5.coeff(0, 1, 13).to_string(), "3");
    }

    #[test]
    fn first_difference_locates_a_tampered_cell() {
        let golden = golden_table();
        let mut t = golden_table();
        t.set_coeff(2, 9, 0, q().integer(7));
        assert_eq!(golden.first_difference(&t).unwrap(), Some((3, 10)));
        assert_eq!(golden.first_difference(&golden).unwrap(), None);
    }

    #[test]
    fn adjoint_rows_are_bracket_coordinates() {
        let t = golden_table();
        let ad1 = adjoint_matrix(&t, 0);
        // Row 2 of ad x1 holds [x1, x3] = 2 x13.
        assert_eq!(*ad1.get(2, 12), q().integer(2));
        assert_eq!(*ad1.get(0, 0), q().zero());
    }
}
