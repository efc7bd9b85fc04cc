//! Split octonions in Zorn vector-matrix form.
//!
//! An element is a 2x2 array with scalar diagonal and 3-vector off-diagonal
//! blocks. The product combines the scalar and vector blocks through the dot
//! and cross products with a fixed sign convention: minus the cross product
//! of the lower-left vectors, plus the cross product of the upper-right ones.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A 3-vector with all components in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec3 {
    pub e1: Scalar,
    pub e2: Scalar,
    pub e3: Scalar,
}

impl Vec3 {
    pub fn new(e1: Scalar, e2: Scalar, e3: Scalar) -> Result<Self> {
        for c in [&e2, &e3] {
            if c.field() != e1.field() {
                return Err(Error::FieldMismatch(e1.field(), c.field()));
            }
        }
        Ok(Vec3 { e1, e2, e3 })
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Vec3 {
            e1: field.zero(),
            e2: field.zero(),
            e3: field.zero(),
        }
    }

    /// The i-th standard basis vector, i in 0..3.
    pub fn axis(field: &FieldSpec, i: usize) -> Self {
        let mut v = Vec3::zero(field);
        *v.component_mut(i) = field.one();
        v
    }

    pub fn field(&self) -> FieldSpec {
        self.e1.field()
    }

    pub fn components(&self) -> [&Scalar; 3] {
        [&self.e1, &self.e2, &self.e3]
    }

    fn component_mut(&mut self, i: usize) -> &mut Scalar {
        match i {
            0 => &mut self.e1,
            1 => &mut self.e2,
            2 => &mut self.e3,
            _ => panic!("vector component index {} out of range", i),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    fn check_same_field(&self, rhs: &Vec3) -> Result<()> {
        if self.field() == rhs.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), rhs.field()))
        }
    }

    /// The vector cross product
    /// `(y*w - z*v, z*u - x*w, x*v - y*u)` of `(x, y, z)` and `(u, v, w)`.
    pub fn cross(&self, rhs: &Vec3) -> Result<Vec3> {
        self.check_same_field(rhs)?;
        let (x, y, z) = (&self.e1, &self.e2, &self.e3);
        let (u, v, w) = (&rhs.e1, &rhs.e2, &rhs.e3);
        Ok(Vec3 {
            e1: &(y * w) - &(z * v),
            e2: &(z * u) - &(x * w),
            e3: &(x * v) - &(y * u),
        })
    }

    /// The scalar product `x*u + y*v + z*w`.
    pub fn dot(&self, rhs: &Vec3) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        let mut acc = &self.e1 * &rhs.e1;
        acc = &acc + &(&self.e2 * &rhs.e2);
        acc = &acc + &(&self.e3 * &rhs.e3);
        Ok(acc)
    }

    fn scale(&self, c: &Scalar) -> Vec3 {
        Vec3 {
            e1: c * &self.e1,
            e2: c * &self.e2,
            e3: c * &self.e3,
        }
    }

    fn add(&self, rhs: &Vec3) -> Vec3 {
        Vec3 {
            e1: &self.e1 + &rhs.e1,
            e2: &self.e2 + &rhs.e2,
            e3: &self.e3 + &rhs.e3,
        }
    }

    fn sub(&self, rhs: &Vec3) -> Vec3 {
        Vec3 {
            e1: &self.e1 - &rhs.e1,
            e2: &self.e2 - &rhs.e2,
            e3: &self.e3 - &rhs.e3,
        }
    }
}

/// A split octonion as a Zorn vector matrix `(a, x; y, b)`: scalars on the
/// diagonal, 3-vectors off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZornMatrix {
    pub a: Scalar,
    pub x: Vec3,
    pub y: Vec3,
    pub b: Scalar,
}

/// Coordinates of a split octonion in the ordered basis
/// (A, B, C1, C2, C3, D1, D2, D3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coord8(pub [Scalar; 8]);

impl ZornMatrix {
    pub fn new(a: Scalar, x: Vec3, y: Vec3, b: Scalar) -> Result<Self> {
        let field = a.field();
        for other in [x.field(), y.field(), b.field()] {
            if other != field {
                return Err(Error::FieldMismatch(field, other));
            }
        }
        Ok(ZornMatrix { a, x, y, b })
    }

    /// The zero octonion.
    pub fn zero(field: &FieldSpec) -> Self {
        ZornMatrix {
            a: field.zero(),
            x: Vec3::zero(field),
            y: Vec3::zero(field),
            b: field.zero(),
        }
    }

    /// The unit octonion: ones on the diagonal.
    pub fn unit(field: &FieldSpec) -> Self {
        ZornMatrix {
            a: field.one(),
            x: Vec3::zero(field),
            y: Vec3::zero(field),
            b: field.one(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.x.is_zero() && self.y.is_zero() && self.b.is_zero()
    }

    /// The Zorn matrix product of `(a, x; y, b)` and `(c, z; t, d)`:
    ///
    /// `(a*c + dot(x, t),  a*z + d*x - cross(y, t);`
    /// ` c*y + b*t + cross(x, z),  b*d + dot(y, z))`
    pub fn mul(&self, rhs: &ZornMatrix) -> Result<ZornMatrix> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch(self.field(), rhs.field()));
        }
        let (a, x, y, b) = (&self.a, &self.x, &self.y, &self.b);
        let (c, z, t, d) = (&rhs.a, &rhs.x, &rhs.y, &rhs.b);
        Ok(ZornMatrix {
            a: &(a * c) + &x.dot(t)?,
            x: z.scale(a).add(&x.scale(d)).sub(&y.cross(t)?),
            y: y.scale(c).add(&t.scale(b)).add(&x.cross(z)?),
            b: &(b * d) + &y.dot(z)?,
        })
    }

    /// The linear combination `c1*p + c2*q`.
    pub fn lin(c1: &Scalar, p: &ZornMatrix, c2: &Scalar, q: &ZornMatrix) -> Result<ZornMatrix> {
        let field = p.field();
        for other in [c1.field(), q.field(), c2.field()] {
            if other != field {
                return Err(Error::FieldMismatch(field, other));
            }
        }
        Ok(ZornMatrix {
            a: &(c1 * &p.a) + &(c2 * &q.a),
            x: p.x.scale(c1).add(&q.x.scale(c2)),
            y: p.y.scale(c1).add(&q.y.scale(c2)),
            b: &(c1 * &p.b) + &(c2 * &q.b),
        })
    }

    /// Coordinates in the basis order (A, B, C1, C2, C3, D1, D2, D3),
    /// i.e. the tuple (a, b, x1, x2, x3, y1, y2, y3).
    pub fn coords(&self) -> Coord8 {
        Coord8([
            self.a.clone(),
            self.b.clone(),
            self.x.e1.clone(),
            self.x.e2.clone(),
            self.x.e3.clone(),
            self.y.e1.clone(),
            self.y.e2.clone(),
            self.y.e3.clone(),
        ])
    }

    /// Rebuilds the octonion from its coordinate tuple; inverse of `coords`.
    pub fn from_coords(c: &Coord8) -> ZornMatrix {
        let v = &c.0;
        ZornMatrix {
            a: v[0].clone(),
            x: Vec3 {
                e1: v[2].clone(),
                e2: v[3].clone(),
                e3: v[4].clone(),
            },
            y: Vec3 {
                e1: v[5].clone(),
                e2: v[6].clone(),
                e3: v[7].clone(),
            },
            b: v[1].clone(),
        }
    }

    /// JSON form `{"a": .., "x": [..], "y": [..], "b": ..}` with scalars in
    /// their text encoding.
    pub fn to_json(&self) -> Value {
        let vec_json = |v: &Vec3| {
            Value::Array(v.components().iter().map(|c| json!(c.to_string())).collect())
        };
        json!({
            "a": self.a.to_string(),
            "x": vec_json(&self.x),
            "y": vec_json(&self.y),
            "b": self.b.to_string(),
        })
    }

    pub fn from_json(field: &FieldSpec, value: &Value) -> Result<ZornMatrix> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("octonion: expected a JSON object".into()))?;
        let scalar_at = |key: &str| -> Result<Scalar> {
            let s = obj
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("octonion: missing scalar field {:?}", key)))?;
            field.parse_scalar(s)
        };
        let vec_at = |key: &str| -> Result<Vec3> {
            let arr = obj
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("octonion: missing vector field {:?}", key)))?;
            if arr.len() != 3 {
                return Err(Error::Parse(format!(
                    "octonion: field {:?} must have 3 components, got {}",
                    key,
                    arr.len()
                )));
            }
            let mut parts = Vec::with_capacity(3);
            for (i, v) in arr.iter().enumerate() {
                let s = v.as_str().ok_or_else(|| {
                    Error::Parse(format!("octonion: {:?}[{}] must be a string", key, i))
                })?;
                parts.push(field.parse_scalar(s)?);
            }
            Vec3::new(parts[0].clone(), parts[1].clone(), parts[2].clone())
        };
        ZornMatrix::new(scalar_at("a")?, vec_at("x")?, vec_at("y")?, scalar_at("b")?)
    }
}

impl Coord8 {
    pub fn new(c: [Scalar; 8]) -> Result<Self> {
        let field = c[0].field();
        for s in &c[1..] {
            if s.field() != field {
                return Err(Error::FieldMismatch(field, s.field()));
            }
        }
        Ok(Coord8(c))
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0].field()
    }
}

/// The eight basis elements in the fixed order (A, B, C1, C2, C3, D1, D2, D3).
///
/// A and B are the diagonal idempotents; C_i has the i-th standard vector in
/// the upper-right block, D_i in the lower-left one.
pub fn octonion_basis(field: &FieldSpec) -> [ZornMatrix; 8] {
    let mut out: [ZornMatrix; 8] = std::array::from_fn(|_| ZornMatrix::zero(field));
    out[0].a = field.one();
    out[1].b = field.one();
    for i in 0..3 {
        out[2 + i].x = Vec3::axis(field, i);
        out[5 + i].y = Vec3::axis(field, i);
    }
    out
}

/// Names accepted wherever an octonion literal is expected, in basis order
/// plus the two distinguished constants.
pub const ELEMENT_NAMES: [&str; 10] = ["A", "B", "C1", "C2", "C3", "D1", "D2", "D3", "Y", "ZERO"];

/// Looks up a named element: a basis element, the unit `Y`, or `ZERO`.
/// Case-sensitive; returns `None` for unknown names.
pub fn element_by_name(field: &FieldSpec, name: &str) -> Option<ZornMatrix> {
    let basis = octonion_basis(field);
    match name {
        "A" => Some(basis[0].clone()),
        "B" => Some(basis[1].clone()),
        "C1" => Some(basis[2].clone()),
        "C2" => Some(basis[3].clone()),
        "C3" => Some(basis[4].clone()),
        "D1" => Some(basis[5].clone()),
        "D2" => Some(basis[6].clone()),
        "D3" => Some(basis[7].clone()),
        "Y" => Some(ZornMatrix::unit(field)),
        "ZERO" => Some(ZornMatrix::zero(field)),
        _ => None,
    }
}
