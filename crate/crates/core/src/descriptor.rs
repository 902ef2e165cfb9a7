//! JSON descriptors for fields, subfields, rings, modules and isometries.
//!
//! Rationals are strings `"p/q"` (or `"p"`), field elements are arrays of
//! θ-power coordinates. A bare rational is accepted wherever a field element is
//! expected. Output objects use sorted keys, so serialisation is deterministic.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::coincidence::{CommensurateVerdict, Isometry};
use crate::decompose::ReflectionDecomposition;
use crate::error::{Error, Result};
use crate::numfield::{parse_rational, FieldElement, FieldMatrix, NumberField, Poly, Rational, Subfield};
use crate::smodule::{GramCriterion, SModule};
use crate::sring::SRing;

pub const MODULE_SCHEMA: &str = "csl-module/1";
pub const ISOMETRY_SCHEMA: &str = "csl-isometry/1";

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn element_to_json(x: &FieldElement) -> Value {
    Value::Array(x.coords().iter().map(rational_to_json).collect())
}

pub fn vector_to_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(element_to_json).collect())
}

pub fn matrix_to_json(m: &FieldMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(&m.row(i))).collect())
}

pub fn field_to_json(l: &NumberField) -> Value {
    let r = l.root_interval();
    json!({
        "min_poly": l.min_poly().coeffs().iter().map(rational_to_json).collect::<Vec<_>>(),
        "root_interval": [rational_to_json(&r.lo), rational_to_json(&r.hi)],
    })
}

pub fn module_to_json(m: &SModule) -> Value {
    let mut v = json!({
        "schema": MODULE_SCHEMA,
        "field_L": field_to_json(m.field()),
        "subfield_K": {"basis": m.field_k().basis().iter().map(element_to_json).collect::<Vec<_>>()},
        "ring_S": {"zbasis": m.ring().zbasis().iter().map(element_to_json).collect::<Vec<_>>()},
        "basis_matrix": matrix_to_json(m.basis_matrix()),
    });
    if let Some(name) = m.name() {
        v["name"] = Value::String(name.to_string());
    }
    v
}

pub fn isometry_to_json(f: &Isometry) -> Value {
    json!({"schema": ISOMETRY_SCHEMA, "matrix": matrix_to_json(f.matrix())})
}

pub fn decomposition_to_json(d: &ReflectionDecomposition, verified: bool) -> Value {
    json!({
        "vectors": d.vectors.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
        "count": d.len(),
        "verified": verified,
    })
}

pub fn verdict_to_json(v: &CommensurateVerdict) -> Value {
    json!({
        "commensurate": v.commensurate,
        "transition": matrix_to_json(&v.transition),
        "failing_entry": v.failing_entry.map(|(i, j)| json!([i, j])),
        "failing_value": v.failing_value().map(element_to_json),
    })
}

pub fn criterion_to_json(c: &GramCriterion) -> Value {
    json!({
        "holds": c.holds,
        "witness": c.witness.as_ref().map(|w| json!({
            "triple": [w.i, w.j, w.k],
            "ratio": element_to_json(&w.ratio),
        })),
    })
}

struct Cursor<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Cursor<'a> {
    fn root(value: &'a Value) -> Self {
        Cursor { value, path: "$".into() }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.path.clone(), msg)
    }

    fn field(&self, key: &str) -> Result<Cursor<'a>> {
        self.opt_field(key)?.ok_or_else(|| self.err(format!("missing field \"{key}\"")))
    }

    fn opt_field(&self, key: &str) -> Result<Option<Cursor<'a>>> {
        let obj = self.value.as_object().ok_or_else(|| self.err("expected an object"))?;
        Ok(obj.get(key).map(|value| Cursor { value, path: format!("{}.{key}", self.path) }))
    }

    fn items(&self) -> Result<Vec<Cursor<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, value)| Cursor { value, path: format!("{}[{i}]", self.path) }).collect())
    }

    fn rational(&self) -> Result<Rational> {
        let parsed = match self.value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
            _ => None,
        };
        parsed.ok_or_else(|| self.err("expected a rational \"p/q\""))
    }

    fn element(&self, l: &Arc<NumberField>) -> Result<FieldElement> {
        if self.value.is_array() {
            let coords = self.items()?.iter().map(Cursor::rational).collect::<Result<Vec<_>>>()?;
            if coords.len() > l.degree() {
                return Err(self.err(format!("{} coordinates for a field of degree {}", coords.len(), l.degree())));
            }
            FieldElement::new(l, coords).map_err(|e| self.err(e.to_string()))
        } else {
            Ok(FieldElement::from_rational(l, self.rational()?))
        }
    }

    fn elements(&self, l: &Arc<NumberField>) -> Result<Vec<FieldElement>> {
        self.items()?.iter().map(|c| c.element(l)).collect()
    }

    fn matrix(&self, l: &Arc<NumberField>) -> Result<FieldMatrix> {
        let rows = self.items()?.iter().map(|r| r.elements(l)).collect::<Result<Vec<_>>>()?;
        FieldMatrix::from_rows(l, rows).map_err(|e| self.err(e.to_string()))
    }

    fn check_schema(&self, expected: &str) -> Result<()> {
        if let Some(s) = self.opt_field("schema")? {
            if s.value.as_str() != Some(expected) {
                return Err(s.err(format!("expected schema \"{expected}\"")));
            }
        }
        Ok(())
    }
}

fn field_from(c: &Cursor) -> Result<Arc<NumberField>> {
    let mp = c.field("min_poly")?;
    let coeffs = mp.items()?.iter().map(Cursor::rational).collect::<Result<Vec<_>>>()?;
    let ri = c.field("root_interval")?;
    let ends = ri.items()?;
    if ends.len() != 2 {
        return Err(ri.err("expected [lo, hi]"));
    }
    let (lo, hi) = (ends[0].rational()?, ends[1].rational()?);
    NumberField::new(Poly::new(coeffs), lo, hi)
}

pub fn field_from_json(v: &Value) -> Result<Arc<NumberField>> {
    field_from(&Cursor::root(v))
}

/// Missing `field_L`, `subfield_K` or `ring_S` default to `Q`, `Q` and `Z`.
pub fn module_from_json(v: &Value) -> Result<SModule> {
    let c = Cursor::root(v);
    c.check_schema(MODULE_SCHEMA)?;
    let l = match c.opt_field("field_L")? {
        Some(f) => field_from(&f)?,
        None => NumberField::rationals(),
    };
    let k = match c.opt_field("subfield_K")? {
        Some(k) => Subfield::new(&l, k.field("basis")?.elements(&l)?)?,
        None => Subfield::rationals(&l),
    };
    let ring = match c.opt_field("ring_S")? {
        Some(s) => SRing::validate(s.field("zbasis")?.elements(&l)?, k)?,
        None if k.degree() == 1 => SRing::integers(&l),
        None => return Err(c.err("ring_S is required when K is not Q")),
    };
    let basis = c.field("basis_matrix")?.matrix(&l)?;
    let name = match c.opt_field("name")? {
        Some(n) => Some(n.value.as_str().ok_or_else(|| n.err("expected a string"))?.to_string()),
        None => None,
    };
    SModule::new(Arc::new(ring), basis, name)
}

/// Accepts `{"matrix": ...}` or a bare array of rows, with entries over `l`.
pub fn isometry_from_json(v: &Value, l: &Arc<NumberField>) -> Result<Isometry> {
    let c = Cursor::root(v);
    let m = if v.is_array() {
        c.matrix(l)?
    } else {
        c.check_schema(ISOMETRY_SCHEMA)?;
        c.field("matrix")?.matrix(l)?
    };
    Isometry::new(m)
}

pub fn parse_json(text: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("{origin}:{}:{}", e.line(), e.column()), e.to_string()))
}
