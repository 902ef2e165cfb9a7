//! Validated standard modules: hypercubic and root lattices, icosahedral
//! modules over Z[τ], the icosian ring and planar cyclotomic modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numfield::{FieldElement, FieldMatrix, NumberField, Poly, Rational, Subfield};
use crate::smodule::SModule;
use crate::sring::SRing;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub module: SModule,
    pub provenance_note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogListing {
    pub key: String,
    pub dim: usize,
    pub field_summary: String,
}

const KEYS: [&str; 10] = [
    "A2",
    "D4",
    "Zn:2",
    "Zn:3",
    "Zn:4",
    "cyclotomic:12",
    "cyclotomic:5",
    "cyclotomic:8",
    "icosahedral:primitive",
    "icosian",
];

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn field(coeffs: &[Rational], lo: Rational, hi: Rational) -> Arc<NumberField> {
    NumberField::new(Poly::new(coeffs.to_vec()), lo, hi).expect("catalog field is valid")
}

fn elem(l: &Arc<NumberField>, coords: &[Rational]) -> FieldElement {
    FieldElement::new(l, coords.to_vec()).expect("coordinate count fits the field")
}

fn golden() -> Arc<NumberField> {
    field(&[q(-1, 1), q(-1, 1), q(1, 1)], q(1, 1), q(2, 1))
}

fn golden_ring(l: &Arc<NumberField>) -> Arc<SRing> {
    let ring = SRing::validate(vec![FieldElement::one(l), FieldElement::theta(l)], Subfield::whole(l));
    Arc::new(ring.expect("Z[τ] is a ring"))
}

fn columns(l: &Arc<NumberField>, cols: &[Vec<FieldElement>]) -> FieldMatrix {
    FieldMatrix::from_columns(l, cols).expect("catalog basis is square")
}

fn build(key: &str) -> Option<(SModule, &'static str)> {
    let entry = match key {
        "Zn:2" | "Zn:3" | "Zn:4" => {
            let n: usize = key[3..].parse().ok()?;
            let l = NumberField::rationals();
            (SModule::standard(Arc::new(SRing::integers(&l)), n), "hypercubic lattice Z^n, S = Z, K = Q")
        }
        "A2" => {
            let l = field(&[q(-3, 1), q(0, 1), q(1, 1)], q(1, 1), q(2, 1));
            let cols = vec![
                vec![FieldElement::one(&l), FieldElement::zero(&l)],
                vec![elem(&l, &[q(1, 2)]), elem(&l, &[q(0, 1), q(1, 2)])],
            ];
            let basis = columns(&l, &cols);
            let m = SModule::new(Arc::new(SRing::integers(&l)), basis, None).ok()?;
            (m, "triangular lattice, basis (1,0), (1/2, √3/2) in Q(√3)^2, S = Z, K = Q")
        }
        "D4" => {
            let l = NumberField::rationals();
            let rows = [[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 1], [0, 0, -1, 1]];
            let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect();
            let basis = FieldMatrix::from_rationals(&l, &rows).ok()?;
            let m = SModule::new(Arc::new(SRing::integers(&l)), basis, None).ok()?;
            (m, "checkerboard root lattice D4, simple roots as columns")
        }
        "icosahedral:primitive" => {
            let l = golden();
            let (o, z, t) = (FieldElement::one(&l), FieldElement::zero(&l), FieldElement::theta(&l));
            let cols = vec![
                vec![o.clone(), t.clone(), z.clone()],
                vec![t.clone(), z.clone(), o.clone()],
                vec![z, o, t],
            ];
            let m = SModule::new(golden_ring(&l), columns(&l, &cols), None).ok()?;
            (m, "primitive icosahedral module, basis cyclic permutations of (1, τ, 0), S = Z[τ]")
        }
        "icosian" => {
            let l = golden();
            let e = |c: [Rational; 2]| elem(&l, &c);
            let (z, o, h) = (q(0, 1), q(1, 1), q(1, 2));
            let cols = vec![
                vec![e([o.clone(), z.clone()]), e([z.clone(), z.clone()]), e([z.clone(), z.clone()]), e([z.clone(), z.clone()])],
                vec![e([z.clone(), z.clone()]), e([o.clone(), z.clone()]), e([z.clone(), z.clone()]), e([z.clone(), z.clone()])],
                vec![e([h.clone(), z.clone()]), e([h.clone(), z.clone()]), e([h.clone(), z.clone()]), e([h.clone(), z.clone()])],
                vec![e([h.clone(), -h.clone()]), e([z.clone(), h.clone()]), e([z.clone(), z.clone()]), e([h.clone(), z])],
            ];
            let m = SModule::new(golden_ring(&l), columns(&l, &cols), None).ok()?;
            (m, "icosian ring as quaternions (a, b, c, d), Z[τ]-basis 1, i, (1+i+j+k)/2, ((1-τ) + τi + k)/2")
        }
        "cyclotomic:5" => {
            // θ = sin 72°, cos 72° = 2θ² − 3/2
            let l = field(&[q(5, 16), q(0, 1), q(-5, 4), q(0, 1), q(1, 1)], q(9, 10), q(1, 1));
            let kb = vec![FieldElement::one(&l), elem(&l, &[q(0, 1), q(0, 1), q(1, 1)])];
            let k = Subfield::new(&l, kb).ok()?;
            let two_cos = elem(&l, &[q(-3, 1), q(0, 1), q(4, 1)]);
            let ring = SRing::validate(vec![FieldElement::one(&l), two_cos.clone()], k).ok()?;
            let cos = two_cos.scale(&q(1, 2));
            let cols = vec![vec![FieldElement::one(&l), FieldElement::zero(&l)], vec![cos, FieldElement::theta(&l)]];
            let m = SModule::new(Arc::new(ring), columns(&l, &cols), None).ok()?;
            (m, "planar 5-fold module, basis (1,0), (cos 72°, sin 72°), S = Z[2cos 72°], L = Q(sin 72°)")
        }
        "cyclotomic:8" => {
            // θ = sin 45° = cos 45°
            let l = field(&[q(-1, 2), q(0, 1), q(1, 1)], q(0, 1), q(1, 1));
            let t = FieldElement::theta(&l);
            let ring = SRing::validate(vec![FieldElement::one(&l), t.scale(&q(2, 1))], Subfield::whole(&l)).ok()?;
            let cols = vec![vec![FieldElement::one(&l), FieldElement::zero(&l)], vec![t.clone(), t]];
            let m = SModule::new(Arc::new(ring), columns(&l, &cols), None).ok()?;
            (m, "planar 8-fold module, basis (1,0), (cos 45°, sin 45°), S = Z[√2], L = K = Q(√2)")
        }
        "cyclotomic:12" => {
            // θ = √3 = 2cos 30°; sin 30° is rational, so L = K = Q(√3)
            let l = field(&[q(-3, 1), q(0, 1), q(1, 1)], q(1, 1), q(2, 1));
            let t = FieldElement::theta(&l);
            let ring = SRing::validate(vec![FieldElement::one(&l), t.clone()], Subfield::whole(&l)).ok()?;
            let cols = vec![
                vec![FieldElement::one(&l), FieldElement::zero(&l)],
                vec![t.scale(&q(1, 2)), FieldElement::from_rational(&l, q(1, 2))],
            ];
            let m = SModule::new(Arc::new(ring), columns(&l, &cols), None).ok()?;
            (m, "planar 12-fold module, basis (1,0), (cos 30°, sin 30°), S = Z[√3], L = K = Q(√3)")
        }
        _ => return None,
    };
    Some(entry)
}

/// Runs the three load-time validations.
pub fn validate_entry(m: &SModule) -> Result<()> {
    let ring = m.ring();
    SRing::validate(ring.zbasis().to_vec(), ring.field_k().clone())?;
    if !m.is_module_over_k() {
        return Err(Error::InvalidModule("Gram entries are not all in K".into()));
    }
    if let Some(w) = m.gram_ratio_criterion().witness {
        return Err(Error::PreconditionGramCriterion((w.i, w.j, w.k)));
    }
    Ok(())
}

pub fn catalog_get(key: &str) -> Result<CatalogEntry> {
    let (module, note) = build(key).ok_or_else(|| Error::UnknownKey(key.to_string()))?;
    let module = module.with_name(key);
    validate_entry(&module)?;
    Ok(CatalogEntry { key: key.to_string(), module, provenance_note: note.to_string() })
}

pub fn catalog_keys() -> &'static [&'static str] {
    &KEYS
}

/// Sorted by key.
pub fn catalog_list() -> Vec<CatalogListing> {
    KEYS.iter()
        .map(|&key| {
            let e = catalog_get(key).expect("catalog entries validate");
            let m = &e.module;
            let summary = format!("L = {}, [K:Q] = {}", m.field(), m.field_k().degree());
            CatalogListing { key: key.to_string(), dim: m.dim(), field_summary: summary }
        })
        .collect()
}
