//! Derivations of the split octonions.
//!
//! A linear map D is a derivation when it satisfies the Leibniz rule
//! D(pq) = D(p)q + pD(q). Imposing that rule on all pairs of basis elements
//! gives a homogeneous linear system in the 64 matrix entries of D; its
//! solution space is the derivation algebra. Over a field of characteristic
//! other than 2 and 3 the space has dimension 14 and carries a canonical
//! parameterization by the entries named u11..u51, v11..v13, recoverable
//! from 14 fixed positions of the matrix.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::zorn::{octonion_basis, Coord8, ZornMatrix};

/// A linear self-map of the split octonions in the basis
/// (A, B, C1, C2, C3, D1, D2, D3): row i holds the coordinates of the image
/// of basis element i, and maps act on coordinate rows from the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Map8 {
    m: Matrix,
}

/// The 14 parameters of the generic derivation, in the fixed order
/// u11, u12, u13, u31, u32, u33, u41, u42, u43, u51, u52, v11, v12, v13.
/// Parameter k (0-based) corresponds to the basis derivation x_{k+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationParams {
    values: [Scalar; 14],
}

/// The solved derivation space over one field.
///
/// When `labeled` is true the basis rows realize the unit parameter vectors
/// in order, so `basis[k]` is the derivation x_{k+1}. When the dimension is
/// not 14 the basis is the raw echelon nullspace basis and `labeled` is
/// false.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<Map8>,
    pub labeled: bool,
}

pub const PARAM_NAMES: [&str; 14] = [
    "u11", "u12", "u13", "u31", "u32", "u33", "u41", "u42", "u43", "u51", "u52", "v11", "v12",
    "v13",
];

/// Flat 0-based positions (row-major, 8 columns) of the matrix entries that
/// carry the parameters, in parameter order: rows 1, 3, 4, 5 columns 3..5
/// hold the u's and row 1 columns 6..8 hold the v's (1-based positions
/// (1,3) (1,4) (1,5) (3,3) (3,4) (3,5) (4,3) (4,4) (4,5) (5,3) (5,4)
/// (1,6) (1,7) (1,8)).
const PARAM_POSITIONS: [usize; 14] = [2, 3, 4, 18, 19, 20, 26, 27, 28, 34, 35, 5, 6, 7];

impl Map8 {
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if m.rows() != 8 || m.cols() != 8 {
            return Err(Error::ShapeMismatch {
                lhs_rows: m.rows(),
                lhs_cols: m.cols(),
                rhs_rows: 8,
                rhs_cols: 8,
            });
        }
        Ok(Map8 { m })
    }

    /// Builds the map from a flat row-major list of 64 entries.
    pub fn from_flat(field: &FieldSpec, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != 64 {
            return Err(Error::ShapeMismatch {
                lhs_rows: 1,
                lhs_cols: entries.len(),
                rhs_rows: 8,
                rhs_cols: 8,
            });
        }
        let rows = entries.chunks(8).map(|r| r.to_vec()).collect();
        Map8::from_matrix(Matrix::from_rows(field, rows)?)
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Map8 {
            m: Matrix::zero(field, 8, 8),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn field(&self) -> &FieldSpec {
        self.m.field()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.m.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// Applies the map to a coordinate vector: image = row times matrix.
    pub fn apply(&self, c: &Coord8) -> Result<Coord8> {
        let out = self.m.row_times(&c.0)?;
        Coord8::new(out.try_into().expect("row_times on 8 columns yields 8 entries"))
    }

    /// Applies the map to an octonion through its coordinates.
    pub fn apply_octonion(&self, p: &ZornMatrix) -> Result<ZornMatrix> {
        Ok(ZornMatrix::from_coords(&self.apply(&p.coords())?))
    }

    /// The commutator `self rhs - rhs self`, again a linear self-map.
    pub fn bracket(&self, rhs: &Map8) -> Result<Map8> {
        Ok(Map8 {
            m: self.m.commutator(&rhs.m)?,
        })
    }

    pub fn add(&self, rhs: &Map8) -> Result<Map8> {
        Ok(Map8 {
            m: self.m.add(&rhs.m)?,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Map8 {
        Map8 {
            m: self.m.scale(c),
        }
    }

    pub fn to_json(&self) -> Value {
        self.m.to_json()
    }

    pub fn from_json(field: &FieldSpec, value: &Value) -> Result<Self> {
        Map8::from_matrix(Matrix::from_json(field, value)?)
    }
}

impl DerivationParams {
    pub fn new(values: [Scalar; 14]) -> Result<Self> {
        let field = values[0].field();
        for v in &values[1..] {
            if v.field() != field {
                return Err(Error::FieldMismatch(field, v.field()));
            }
        }
        Ok(DerivationParams { values })
    }

    pub fn zero(field: &FieldSpec) -> Self {
        DerivationParams {
            values: std::array::from_fn(|_| field.zero()),
        }
    }

    /// The unit parameter vector selecting x_{k+1}, k in 0..14.
    pub fn unit(field: &FieldSpec, k: usize) -> Self {
        assert!(k < 14, "parameter index {} out of range", k);
        let mut p = DerivationParams::zero(field);
        p.values[k] = field.one();
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.values[0].field()
    }

    pub fn values(&self) -> &[Scalar; 14] {
        &self.values
    }

    pub fn get(&self, k: usize) -> &Scalar {
        &self.values[k]
    }

    /// JSON object keyed by the parameter names, values in scalar text form.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        for (name, v) in PARAM_NAMES.iter().zip(&self.values) {
            obj.insert((*name).into(), json!(v.to_string()));
        }
        Value::Object(obj)
    }

    /// Parses the JSON object form; all 14 keys are required and no other
    /// keys are allowed.
    pub fn from_json(field: &FieldSpec, value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("parameters: expected a JSON object".into()))?;
        for key in obj.keys() {
            if !PARAM_NAMES.contains(&key.as_str()) {
                return Err(Error::Parse(format!("parameters: unknown key {:?}", key)));
            }
        }
        let mut values = Vec::with_capacity(14);
        for name in PARAM_NAMES {
            let s = obj
                .get(name)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("parameters: missing key {:?}", name)))?;
            values.push(field.parse_scalar(s)?);
        }
        DerivationParams::new(values.try_into().expect("collected exactly 14 values"))
    }
}

/// The Leibniz defect `D(pq) - D(p)q - pD(q)`; zero exactly when D respects
/// the product of p and q.
pub fn leibniz_residual(d: &Map8, p: &ZornMatrix, q: &ZornMatrix) -> Result<ZornMatrix> {
    let field = p.field();
    let d_pq = d.apply_octonion(&p.mul(q)?)?;
    let dp_q = d.apply_octonion(p)?.mul(q)?;
    let p_dq = p.mul(&d.apply_octonion(q)?)?;
    let one = field.one();
    let minus_one = field.integer(-1);
    let partial = ZornMatrix::lin(&one, &d_pq, &minus_one, &dp_q)?;
    ZornMatrix::lin(&one, &partial, &minus_one, &p_dq)
}

/// True when D satisfies the Leibniz rule on every pair of basis elements,
/// which by bilinearity extends to all octonions.
pub fn is_derivation(d: &Map8) -> bool {
    let basis = octonion_basis(d.field());
    for p in &basis {
        for q in &basis {
            let r = leibniz_residual(d, p, q).expect("basis elements share the map's field");
            if !r.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Structure constants of the octonion product: `coords(e_a e_b)`.
fn product_coords(field: &FieldSpec) -> [[Coord8; 8]; 8] {
    let basis = octonion_basis(field);
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            basis[a]
                .mul(&basis[b])
                .expect("basis elements share one field")
                .coords()
        })
    })
}

/// The Leibniz constraint system: a 512 x 64 matrix whose right nullspace
/// is the derivation space.
///
/// Unknown (i, j) is the matrix entry m[i][j] at flat column 8i + j. The
/// constraint for the basis pair (a, b) and image coordinate j sits at row
/// (8a + b) * 8 + j and encodes coordinate j of D(e_a e_b) - D(e_a)e_b -
/// e_a D(e_b) as a linear form in the unknowns.
pub fn assemble_leibniz_system(field: &FieldSpec) -> Matrix {
    let s = product_coords(field);
    let mut system = Matrix::zero(field, 512, 64);
    let mut add_at = |row: usize, col: usize, c: &Scalar| {
        if c.is_zero() {
            return;
        }
        let acc = system.get(row, col) + c;
        system.set(row, col, acc);
    };
    for a in 0..8 {
        for b in 0..8 {
            for j in 0..8 {
                let row = (8 * a + b) * 8 + j;
                // D(e_a e_b) lands on m[i][j] with weight s[a][b][i].
                for i in 0..8 {
                    add_at(row, 8 * i + j, &s[a][b].0[i]);
                }
                // -D(e_a)e_b hits row a of the unknowns, -e_a D(e_b) row b.
                #[allow(clippy::needless_range_loop)]
                for k in 0..8 {
                    add_at(row, 8 * a + k, &s[k][b].0[j].neg());
                    add_at(row, 8 * b + k, &s[a][k].0[j].neg());
                }
            }
        }
    }
    system
}

/// Solves the Leibniz system and, when the solution space has dimension 14,
/// re-parameterizes its basis so that basis k realizes the unit parameter
/// vector for x_{k+1}.
///
/// The re-parameterization inverts the 14 x 14 block of parameter-carrying
/// columns; if that block is singular the solution space does not project
/// onto the parameters and `ParameterizationMismatch` is returned. When the
/// dimension differs from 14 the raw echelon basis is returned unlabeled.
pub fn solve_derivations(field: &FieldSpec) -> Result<DerivationSpace> {
    let system = assemble_leibniz_system(field);
    let ns = system.nullspace();
    let dim = ns.dim();
    if dim != 14 {
        let basis = ns
            .vectors
            .iter()
            .map(|v| Map8::from_flat(field, v))
            .collect::<Result<Vec<_>>>()?;
        return Ok(DerivationSpace {
            field: *field,
            dim,
            basis,
            labeled: false,
        });
    }

    // Augment [P | V] where P is the parameter-column block of the raw
    // basis V; reducing to [I | B] yields B with unit parameter rows.
    let mut aug_rows = Vec::with_capacity(14);
    for v in &ns.vectors {
        let mut row = Vec::with_capacity(14 + 64);
        for &pos in &PARAM_POSITIONS {
            row.push(v[pos].clone());
        }
        row.extend(v.iter().cloned());
        aug_rows.push(row);
    }
    let aug = Matrix::from_rows(field, aug_rows)?;
    let (reduced, pivots) = aug.rref();
    if pivots != (0..14).collect::<Vec<_>>() {
        return Err(Error::ParameterizationMismatch);
    }
    let basis = (0..14)
        .map(|k| Map8::from_flat(field, &reduced.row(k)[14..]))
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivationSpace {
        field: *field,
        dim: 14,
        basis,
        labeled: true,
    })
}

/// The generic derivation: the closed-form matrix every derivation fits
/// when the characteristic is not 2 or 3, written out entry by entry in the
/// 14 parameters.
pub fn generic_derivation(params: &DerivationParams) -> Map8 {
    let field = params.field();
    let z = field.zero();
    let [u11, u12, u13, u31, u32, u33, u41, u42, u43, u51, u52, v11, v12, v13] = params.values();
    let n = Scalar::neg;
    let rows: [[Scalar; 8]; 8] = [
        [
            z.clone(), z.clone(), u11.clone(), u12.clone(), u13.clone(),
            v11.clone(), v12.clone(), v13.clone(),
        ],
        [
            z.clone(), z.clone(), n(u11), n(u12), n(u13),
            n(v11), n(v12), n(v13),
        ],
        [
            n(v11), v11.clone(), u31.clone(), u32.clone(), u33.clone(),
            z.clone(), u13.clone(), n(u12),
        ],
        [
            n(v12), v12.clone(), u41.clone(), u42.clone(), u43.clone(),
            n(u13), z.clone(), u11.clone(),
        ],
        [
            n(v13), v13.clone(), u51.clone(), u52.clone(), &n(u31) - u42,
            u12.clone(), n(u11), z.clone(),
        ],
        [
            n(u11), u11.clone(), z.clone(), v13.clone(), n(v12),
            n(u31), n(u41), n(u51),
        ],
        [
            n(u12), u12.clone(), n(v13), z.clone(), v11.clone(),
            n(u32), n(u42), n(u52),
        ],
        [
            n(u13), u13.clone(), v12.clone(), n(v11), z.clone(),
            n(u33), n(u43), u31 + u42,
        ],
    ];
    let flat: Vec<Scalar> = rows.into_iter().flatten().collect();
    Map8::from_flat(&field, &flat).expect("fixed 8 x 8 shape")
}

/// Reads the parameters back out of a map's parameter-carrying entries and
/// checks that the map is exactly the generic derivation for them. The
/// error reports the 1-based position of the first entry that disagrees.
pub fn recon(d: &Map8) -> Result<DerivationParams> {
    let values: Vec<Scalar> = PARAM_POSITIONS
        .iter()
        .map(|&pos| d.get(pos / 8, pos % 8).clone())
        .collect();
    let params = DerivationParams::new(values.try_into().expect("14 positions"))?;
    let expect = generic_derivation(&params);
    for i in 0..8 {
        for j in 0..8 {
            if d.get(i, j) != expect.get(i, j) {
                return Err(Error::NotInSpan {
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
    }
    Ok(params)
}
