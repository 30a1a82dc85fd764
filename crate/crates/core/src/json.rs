//! JSON encodings of the crate's values.
//!
//! Rationals are strings `"p/q"` or `"p"` (integers are also accepted on
//! input). Points of a finite set are written one-based, so the permutation
//! swapping the two points of `{0, 1}` is `{"n": 2, "image": [2, 1]}`. Sparse
//! indices are arbitrary integers and are written as they are.
//!
//! Each value type has a `*Json` mirror that derives serde, plus `encode_*`
//! and `decode_*` conversions; decoding performs all validation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::base_algebra::{FuncElem, Permutation};
use crate::commutant::SubspaceBasis;
use crate::derivation::DerivationMatrix;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::ore_poly::{OreContext, OrePoly};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::skew_variants::{LaurentElem, SeriesElem};
use crate::sparse_mode::{
    BijectionKind, CountableBijection, DegreeSlice, SparseCentralizerWindow, SparseContext, SparseDerivation,
    SparseFunc, SparsePoly,
};

/// A rational on the wire.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<JsonRational, E> {
                parse_rational(s).map(JsonRational).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonRational, E> {
                Ok(JsonRational(crate::rational::int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

fn rats(v: &[Rational]) -> Vec<JsonRational> {
    v.iter().cloned().map(JsonRational).collect()
}

fn unrats(v: Vec<JsonRational>) -> Vec<Rational> {
    v.into_iter().map(|r| r.0).collect()
}

/// An integer-keyed map, keys written as decimal strings in numeric order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntKeyed<T>(pub BTreeMap<i64, T>);

impl<T> Default for IntKeyed<T> {
    fn default() -> Self {
        IntKeyed(BTreeMap::new())
    }
}

impl<T: Serialize> Serialize for IntKeyed<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for IntKeyed<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: serde_json::Map<String, serde_json::Value> = Deserialize::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let key: i64 = k.parse().map_err(|_| de::Error::custom(format!("map key {k:?} is not an integer")))?;
            let val = T::deserialize(v).map_err(de::Error::custom)?;
            if out.insert(key, val).is_some() {
                return Err(de::Error::custom(format!("duplicate key {key}")));
            }
        }
        Ok(IntKeyed(out))
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct PermJson {
    pub n: usize,
    pub image: Vec<usize>,
}

pub fn encode_perm(p: &Permutation) -> PermJson {
    PermJson { n: p.n(), image: p.image().iter().map(|i| i + 1).collect() }
}

pub fn decode_perm(j: PermJson) -> Result<Permutation> {
    if j.image.len() != j.n {
        return Err(Error::DimensionMismatch { expected: j.n, found: j.image.len() });
    }
    let mut image = Vec::with_capacity(j.n);
    for v in j.image {
        if v == 0 {
            return Err(Error::InvalidPermutation("points are numbered from 1".into()));
        }
        image.push(v - 1);
    }
    Permutation::new(image)
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct FuncJson {
    pub n: usize,
    pub values: Vec<JsonRational>,
}

pub fn encode_func(f: &FuncElem) -> FuncJson {
    FuncJson { n: f.n(), values: rats(f.values()) }
}

pub fn decode_func(j: FuncJson) -> Result<FuncElem> {
    if j.values.len() != j.n {
        return Err(Error::DimensionMismatch { expected: j.n, found: j.values.len() });
    }
    FuncElem::new(unrats(j.values))
}

fn decode_funcs(v: Vec<FuncJson>, n: usize) -> Result<Vec<FuncElem>> {
    v.into_iter()
        .map(|f| {
            let f = decode_func(f)?;
            crate::base_algebra::check_dim(n, f.n())?;
            Ok(f)
        })
        .collect()
}

/// An extension: a permutation and, unless the derivation is zero, its diagonal.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ContextJson {
    pub perm: PermJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<JsonRational>>,
}

pub fn encode_context(ctx: &OreContext) -> ContextJson {
    let diag = if ctx.has_zero_derivation() { None } else { Some(rats(&ctx.derivation().diagonal())) };
    ContextJson { perm: encode_perm(ctx.perm()), diag }
}

pub fn decode_context(j: ContextJson) -> Result<Arc<OreContext>> {
    let perm = decode_perm(j.perm)?;
    match j.diag {
        None => Ok(OreContext::skew(perm)),
        Some(d) => OreContext::from_diag(perm, unrats(d)),
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct DiagJson {
    pub perm: PermJson,
    pub diag: Vec<JsonRational>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct DerivationJson {
    pub perm: PermJson,
    /// Row-major.
    pub entries: Vec<Vec<JsonRational>>,
}

pub fn encode_derivation(d: &DerivationMatrix) -> DerivationJson {
    DerivationJson { perm: encode_perm(d.perm()), entries: d.entries().to_rows().iter().map(|r| rats(r)).collect() }
}

/// Checks shapes only; use [`DerivationMatrix::validate`] for the derivation conditions.
pub fn decode_derivation(j: DerivationJson) -> Result<DerivationMatrix> {
    let perm = decode_perm(j.perm)?;
    let n = perm.n();
    if j.entries.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.entries.len() });
    }
    let mut rows = Vec::with_capacity(n);
    for r in j.entries {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        rows.push(unrats(r));
    }
    DerivationMatrix::from_entries(perm, RatMatrix::from_rows(rows))
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub context: ContextJson,
    pub coeffs: Vec<FuncJson>,
}

pub fn encode_poly(p: &OrePoly) -> PolyJson {
    PolyJson { context: encode_context(p.context()), coeffs: p.coeffs().iter().map(encode_func).collect() }
}

pub fn decode_poly(j: PolyJson) -> Result<OrePoly> {
    let ctx = decode_context(j.context)?;
    let coeffs = decode_funcs(j.coeffs, ctx.n())?;
    OrePoly::new(&ctx, coeffs)
}

/// Decodes polynomials that must share one extension; they are rebuilt on a
/// single shared context.
pub fn decode_polys_same_context(js: Vec<PolyJson>) -> Result<Vec<OrePoly>> {
    let mut out: Vec<OrePoly> = Vec::with_capacity(js.len());
    for j in js {
        let p = decode_poly(j)?;
        match out.first() {
            None => out.push(p),
            Some(first) => {
                if !first.context().same_as(p.context()) {
                    return Err(Error::ContextMismatch);
                }
                let ctx = first.context().clone();
                out.push(OrePoly::new(&ctx, p.coeffs().to_vec())?);
            }
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub method: String,
    pub max_degree: usize,
    pub dimension: usize,
    pub elements: Vec<PolyJson>,
}

pub fn encode_basis(b: &SubspaceBasis) -> BasisJson {
    BasisJson {
        method: b.method().as_str().to_string(),
        max_degree: b.max_degree(),
        dimension: b.dimension(),
        elements: b.elements().iter().map(encode_poly).collect(),
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct SparseFuncJson {
    pub support: IntKeyed<JsonRational>,
}

pub fn encode_sparse_func(f: &SparseFunc) -> SparseFuncJson {
    SparseFuncJson { support: IntKeyed(f.entries().iter().map(|(&i, v)| (i, JsonRational(v.clone()))).collect()) }
}

pub fn decode_sparse_func(j: SparseFuncJson) -> SparseFunc {
    SparseFunc::from_pairs(j.support.0.into_iter().map(|(i, v)| (i, v.0)))
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BijectionJson {
    Shift { d: i64 },
    Cycles { cycles: Vec<Vec<i64>> },
}

pub fn encode_bijection(b: &CountableBijection) -> BijectionJson {
    match b.kind() {
        BijectionKind::Shift(d) => BijectionJson::Shift { d },
        BijectionKind::FiniteCycles(c) => BijectionJson::Cycles { cycles: c.to_vec() },
    }
}

pub fn decode_bijection(j: BijectionJson) -> Result<CountableBijection> {
    match j {
        BijectionJson::Shift { d } => CountableBijection::shift(d),
        BijectionJson::Cycles { cycles } => CountableBijection::cycles(cycles),
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct SparseContextJson {
    pub bijection: BijectionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag: Option<IntKeyed<JsonRational>>,
}

pub fn encode_sparse_context(ctx: &SparseContext) -> SparseContextJson {
    let diag = ctx.derivation().diagonal();
    SparseContextJson {
        bijection: encode_bijection(ctx.bijection()),
        diag: if diag.is_empty() {
            None
        } else {
            Some(IntKeyed(diag.iter().map(|(&i, v)| (i, JsonRational(v.clone()))).collect()))
        },
    }
}

pub fn decode_sparse_context(j: SparseContextJson) -> Result<Arc<SparseContext>> {
    let bij = decode_bijection(j.bijection)?;
    let diag = j.diag.unwrap_or_default().0.into_iter().map(|(i, v)| (i, v.0)).collect();
    Ok(SparseContext::new(SparseDerivation::from_diagonal(bij, diag)?))
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct SparseDerivationJson {
    pub bijection: BijectionJson,
    /// `i ↦ [Δ(e_i)(i), Δ(e_i)(σ(i))]`.
    pub assignments: IntKeyed<(JsonRational, JsonRational)>,
}

pub fn encode_sparse_derivation(d: &SparseDerivation) -> SparseDerivationJson {
    SparseDerivationJson {
        bijection: encode_bijection(d.bijection()),
        assignments: IntKeyed(
            d.assignments().into_iter().map(|(i, (a, b))| (i, (JsonRational(a), JsonRational(b)))).collect(),
        ),
    }
}

pub fn decode_sparse_derivation(j: SparseDerivationJson) -> Result<SparseDerivation> {
    let bij = decode_bijection(j.bijection)?;
    SparseDerivation::from_assignments(bij, j.assignments.0.into_iter().map(|(i, (a, b))| (i, (a.0, b.0))).collect())
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct SparsePolyJson {
    pub context: SparseContextJson,
    pub coeffs: Vec<SparseFuncJson>,
}

pub fn encode_sparse_poly(p: &SparsePoly) -> SparsePolyJson {
    SparsePolyJson {
        context: encode_sparse_context(p.context()),
        coeffs: p.coeffs().iter().map(encode_sparse_func).collect(),
    }
}

pub fn decode_sparse_poly(j: SparsePolyJson) -> Result<SparsePoly> {
    let ctx = decode_sparse_context(j.context)?;
    Ok(SparsePoly::new(&ctx, j.coeffs.into_iter().map(decode_sparse_func).collect()))
}

/// Like [`decode_polys_same_context`] for sparse polynomials.
pub fn decode_sparse_polys_same_context(js: Vec<SparsePolyJson>) -> Result<Vec<SparsePoly>> {
    let mut out: Vec<SparsePoly> = Vec::with_capacity(js.len());
    for j in js {
        let p = decode_sparse_poly(j)?;
        match out.first() {
            None => out.push(p),
            Some(first) => {
                if first.context() != p.context() {
                    return Err(Error::ContextMismatch);
                }
                let ctx = first.context().clone();
                out.push(SparsePoly::new(&ctx, p.coeffs().to_vec()));
            }
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct DegreeSliceJson {
    pub degree: usize,
    pub all_indices: bool,
    pub all_fixed_points: bool,
    pub cycle_members: Vec<i64>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct WindowJson {
    pub max_degree: usize,
    pub slices: Vec<DegreeSliceJson>,
}

pub fn encode_window(w: &SparseCentralizerWindow) -> WindowJson {
    WindowJson {
        max_degree: w.max_degree,
        slices: w
            .slices
            .iter()
            .map(|s: &DegreeSlice| DegreeSliceJson {
                degree: s.degree,
                all_indices: s.all_indices,
                all_fixed_points: s.all_fixed_points,
                cycle_members: s.cycle_members.clone(),
            })
            .collect(),
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<FuncJson>,
}

pub fn encode_series(s: &SeriesElem) -> SeriesJson {
    SeriesJson { order: s.order(), coeffs: s.coeffs().iter().map(encode_func).collect() }
}

/// `order` overrides the element's own truncation order when given.
pub fn decode_series(ctx: &Arc<OreContext>, j: SeriesJson, order: Option<usize>) -> Result<SeriesElem> {
    let coeffs = decode_funcs(j.coeffs, ctx.n())?;
    SeriesElem::new(ctx, order.unwrap_or(j.order), coeffs)
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct LaurentJson {
    pub coeffs: IntKeyed<FuncJson>,
}

pub fn encode_laurent(l: &LaurentElem) -> LaurentJson {
    LaurentJson { coeffs: IntKeyed(l.coeffs().iter().map(|(&k, f)| (k, encode_func(f))).collect()) }
}

pub fn decode_laurent(ctx: &Arc<OreContext>, j: LaurentJson) -> Result<LaurentElem> {
    let mut coeffs = BTreeMap::new();
    for (k, f) in j.coeffs.0 {
        let f = decode_func(f)?;
        crate::base_algebra::check_dim(ctx.n(), f.n())?;
        coeffs.insert(k, f);
    }
    LaurentElem::new(ctx, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rational_strings() {
        let r: JsonRational = serde_json::from_str("\"-4/6\"").unwrap();
        assert_eq!(r.0, rat(-2, 3));
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-2/3\"");
        let i: JsonRational = serde_json::from_str("5").unwrap();
        assert_eq!(serde_json::to_string(&i).unwrap(), "\"5\"");
        assert!(serde_json::from_str::<JsonRational>("0.5").is_err());
        assert!(serde_json::from_str::<JsonRational>("\"1/0\"").is_err());
    }

    #[test]
    fn permutation_is_one_based() {
        let p = Permutation::rotation(3);
        let j = encode_perm(&p);
        assert_eq!(j.image, vec![2, 3, 1]);
        assert_eq!(decode_perm(j).unwrap(), p);
        assert!(decode_perm(PermJson { n: 2, image: vec![0, 1] }).is_err());
        assert!(decode_perm(PermJson { n: 3, image: vec![1, 2] }).is_err());
    }

    #[test]
    fn sparse_keys_in_numeric_order() {
        let f = SparseFunc::from_pairs([(10, rat(1, 1)), (-3, rat(1, 2)), (2, rat(2, 1))]);
        let s = serde_json::to_string(&encode_sparse_func(&f)).unwrap();
        assert_eq!(s, r#"{"support":{"-3":"1/2","2":"2","10":"1"}}"#);
        let back: SparseFuncJson = serde_json::from_str(&s).unwrap();
        assert_eq!(decode_sparse_func(back), f);
        assert!(serde_json::from_str::<SparseFuncJson>(r#"{"support":{"a":"1"}}"#).is_err());
    }

    #[test]
    fn bijection_tags() {
        let s: BijectionJson = serde_json::from_str(r#"{"kind":"shift","d":1}"#).unwrap();
        assert_eq!(s, BijectionJson::Shift { d: 1 });
        let c: BijectionJson = serde_json::from_str(r#"{"kind":"cycles","cycles":[[1,2,3]]}"#).unwrap();
        assert!(decode_bijection(c).is_ok());
        assert!(serde_json::from_str::<BijectionJson>(r#"{"kind":"other"}"#).is_err());
    }

    #[test]
    fn context_round_trip() {
        let ctx = OreContext::from_diag(Permutation::rotation(3), vec![rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        let j = encode_context(&ctx);
        let back = decode_context(j.clone()).unwrap();
        assert!(back.same_as(&ctx));
        assert_eq!(encode_context(&back), j);
        assert!(encode_context(&OreContext::skew(Permutation::identity(2))).diag.is_none());
    }
}
