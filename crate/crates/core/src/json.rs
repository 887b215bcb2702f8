//! JSON and inline-text formats for groups, weights, elements and reports.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{parse_rational, AlgebraElement, Coefficient, GroupElement, NormBound, Rational};
use crate::cancellation::CancellationReport;
use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::groups::{
    grigorchuk_level_hom, FiniteIndexSubgroup, GroupHom, Permutation, Radius, SubgroupMode, DEFAULT_CAP,
};
use crate::ideals::{
    AugmentationDecomposition, CodimensionReport, ExtractedExpression, JExpression, PullbackResult, SeparationResult,
    TelescopeCertificate,
};
use crate::weights::{InducedWeight, RadialWeight, TableWeight, Weight, WeightCheckReport};

fn invalid(message: impl Into<String>) -> Error {
    Error::Invalid(message.into())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: offset_of(text, e.line(), e.column()),
        message: format!("malformed JSON: {e}"),
    })
}

fn offset_of(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.lines().take(line.saturating_sub(1)).map(|l| l.len() + 1).sum();
    before + column.saturating_sub(1)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| invalid(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| invalid(format!("{what} must be a non-negative integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| invalid(format!("{what} must be a string")))
}

/// A rational given as a JSON string `"n/d"` or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or_default().into())),
        _ => Err(invalid(format!("expected a rational, got {v}"))),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn coefficient_from_json(v: &Value) -> Result<Coefficient> {
    match v {
        Value::Object(m) => {
            let re = m.get("re").map(rational_from_json).transpose()?.unwrap_or_default();
            let im = m.get("im").map(rational_from_json).transpose()?.unwrap_or_default();
            Ok(Coefficient::new(re, im))
        }
        _ => Ok(Coefficient::real(rational_from_json(v)?)),
    }
}

pub fn coefficient_to_json(c: &Coefficient) -> Value {
    json!({"re": c.re.to_string(), "im": c.im.to_string()})
}

pub fn norm_to_json(n: &NormBound) -> Value {
    json!({"lower": n.lower.to_string(), "upper": n.upper.to_string()})
}

/// A subgroup of a free group given by a homomorphism to a permutation group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Permutation {
        rank: usize,
        degree: usize,
        images: Vec<Vec<usize>>,
        mode: SubgroupMode,
        radius: Option<usize>,
    },
    /// The kernel of the level-`L` action of the Grigorchuk group on its
    /// rank-4 free cover.
    Grigorchuk { level: usize, radius: Option<usize> },
}

impl GroupSpec {
    /// `"grigorchuk:L"`, `"even2"`, inline JSON, or a JSON value.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let t = text.trim();
        if t.starts_with('{') {
            return GroupSpec::from_json(&parse_json(t)?);
        }
        if let Some(level) = t.strip_prefix("grigorchuk:") {
            let level = level
                .parse()
                .map_err(|_| invalid(format!("bad Grigorchuk level in {t:?}")))?;
            return Ok(GroupSpec::Grigorchuk { level, radius: None });
        }
        match t {
            "even2" => Ok(GroupSpec::even2()),
            _ => Err(invalid(format!("unknown group {t:?}"))),
        }
    }

    /// The even-length subgroup of `F_2`: the kernel of `a, b -> (0 1)` with `r = 2`.
    pub fn even2() -> GroupSpec {
        GroupSpec::Permutation {
            rank: 2,
            degree: 2,
            images: vec![vec![1, 0], vec![1, 0]],
            mode: SubgroupMode::Kernel,
            radius: Some(2),
        }
    }

    pub fn from_json(v: &Value) -> Result<GroupSpec> {
        if let Value::String(s) = v {
            return GroupSpec::parse(s);
        }
        let radius = v.get("radius").map(|r| as_usize(r, "radius")).transpose()?;
        if let Some(level) = v.get("grigorchuk") {
            return Ok(GroupSpec::Grigorchuk {
                level: as_usize(level, "grigorchuk level")?,
                radius,
            });
        }
        let rank = as_usize(field(v, "rank")?, "rank")?;
        let degree = as_usize(field(v, "degree")?, "degree")?;
        let images = field(v, "images")?
            .as_array()
            .ok_or_else(|| invalid("images must be an array"))?
            .iter()
            .map(|img| {
                img.as_array()
                    .ok_or_else(|| invalid("each image must be an array"))?
                    .iter()
                    .map(|x| as_usize(x, "image entry"))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mode = match v.get("mode") {
            None => SubgroupMode::Kernel,
            Some(Value::String(s)) if s == "kernel" => SubgroupMode::Kernel,
            Some(m) => match m.get("stabilizer") {
                Some(p) => SubgroupMode::Stabilizer(as_usize(p, "stabilizer point")?),
                None => return Err(invalid(format!("unknown mode {m}"))),
            },
        };
        Ok(GroupSpec::Permutation {
            rank,
            degree,
            images,
            mode,
            radius,
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupSpec::Permutation {
                rank,
                degree,
                images,
                mode,
                radius,
            } => {
                let mut m = Map::new();
                m.insert("rank".into(), json!(rank));
                m.insert("degree".into(), json!(degree));
                m.insert("images".into(), json!(images));
                m.insert("mode".into(), mode_to_json(*mode));
                if let Some(r) = radius {
                    m.insert("radius".into(), json!(r));
                }
                Value::Object(m)
            }
            GroupSpec::Grigorchuk { level, .. } => json!(format!("grigorchuk:{level}")),
        }
    }

    pub fn hom(&self, cap: usize) -> Result<GroupHom> {
        match self {
            GroupSpec::Permutation {
                rank, degree, images, ..
            } => {
                if images.len() != *rank {
                    return Err(Error::RankMismatch {
                        expected: *rank,
                        found: images.len(),
                    });
                }
                let perms = images
                    .iter()
                    .map(|img| Permutation::from_slice(img))
                    .collect::<Result<Vec<_>>>()?;
                GroupHom::new(*rank, *degree, perms)
            }
            GroupSpec::Grigorchuk { level, .. } => grigorchuk_level_hom(*level, cap),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Permutation { rank, .. } => *rank,
            GroupSpec::Grigorchuk { .. } => 4,
        }
    }

    pub fn mode(&self) -> SubgroupMode {
        match self {
            GroupSpec::Permutation { mode, .. } => *mode,
            GroupSpec::Grigorchuk { .. } => SubgroupMode::Kernel,
        }
    }

    /// The subgroup, with `radius_override` taking precedence over the radius given in the description.
    pub fn subgroup(&self, radius_override: Option<usize>, cap: usize) -> Result<FiniteIndexSubgroup> {
        let spec_radius = match self {
            GroupSpec::Permutation { radius, .. } | GroupSpec::Grigorchuk { radius, .. } => *radius,
        };
        let radius = match radius_override.or(spec_radius) {
            Some(r) => Radius::Fixed(r),
            None => Radius::Auto,
        };
        FiniteIndexSubgroup::new(self.hom(cap)?, self.mode(), radius, cap)
    }
}

fn mode_to_json(mode: SubgroupMode) -> Value {
    match mode {
        SubgroupMode::Kernel => json!("kernel"),
        SubgroupMode::Stabilizer(p) => json!({"stabilizer": p}),
    }
}

pub fn word_to_json(w: &FreeWord) -> Value {
    Value::String(w.to_string())
}

pub fn words_to_json<'a>(ws: impl IntoIterator<Item = &'a FreeWord>) -> Value {
    Value::Array(ws.into_iter().map(word_to_json).collect())
}

pub fn perm_to_json(p: &Permutation) -> Value {
    json!(p.images())
}

/// Group elements that serialize as a term key.
pub trait JsonKey: GroupElement {
    const KEY: &'static str;
    fn key_to_json(&self) -> Value;
}

impl JsonKey for FreeWord {
    const KEY: &'static str = "word";
    fn key_to_json(&self) -> Value {
        word_to_json(self)
    }
}

impl JsonKey for Permutation {
    const KEY: &'static str = "perm";
    fn key_to_json(&self) -> Value {
        perm_to_json(self)
    }
}

/// Canonical form: terms in group-element order, zero terms absent.
pub fn element_to_json<G: JsonKey>(f: &AlgebraElement<G>) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|(g, c)| {
            let mut m = Map::new();
            m.insert(G::KEY.into(), g.key_to_json());
            m.insert("coeff".into(), coefficient_to_json(c));
            Value::Object(m)
        })
        .collect();
    json!({ "terms": terms })
}

fn terms_of(v: &Value) -> Result<&Vec<Value>> {
    field(v, "terms")?
        .as_array()
        .ok_or_else(|| invalid("terms must be an array"))
}

fn term_coefficient(t: &Value) -> Result<Coefficient> {
    t.get("coeff")
        .map(coefficient_from_json)
        .transpose()
        .map(|c| c.unwrap_or_else(Coefficient::one))
}

pub fn word_element_from_json(v: &Value, rank: usize) -> Result<AlgebraElement<FreeWord>> {
    let mut f = AlgebraElement::zero(rank);
    for t in terms_of(v)? {
        let w = FreeWord::parse(as_str(field(t, "word")?, "word")?, rank)?;
        f.add_term(w, &term_coefficient(t)?);
    }
    Ok(f)
}

/// Terms keyed by `"perm"` (images) or `"word"` (mapped through the hom).
pub fn perm_element_from_json(v: &Value, hom: &GroupHom) -> Result<AlgebraElement<Permutation>> {
    let mut f = AlgebraElement::zero(hom.degree());
    for t in terms_of(v)? {
        let p = match (t.get("perm"), t.get("word")) {
            (Some(p), _) => {
                let images = p
                    .as_array()
                    .ok_or_else(|| invalid("perm must be an array"))?
                    .iter()
                    .map(|x| as_usize(x, "perm entry"))
                    .collect::<Result<Vec<_>>>()?;
                let p = Permutation::from_slice(&images)?;
                if p.degree() != hom.degree() {
                    return Err(Error::DegreeMismatch {
                        expected: hom.degree(),
                        found: p.degree(),
                    });
                }
                p
            }
            (None, Some(w)) => hom.apply(&FreeWord::parse(as_str(w, "word")?, hom.rank())?)?,
            (None, None) => return Err(invalid("term needs a \"perm\" or \"word\" key")),
        };
        f.add_term(p, &term_coefficient(t)?);
    }
    Ok(f)
}

struct Sugar<'a> {
    text: &'a str,
    pos: usize,
    rank: usize,
}

impl<'a> Sugar<'a> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        let len: usize = self.rest().chars().take_while(|&c| pred(c)).map(char::len_utf8).sum();
        self.pos += len;
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<Option<Coefficient>> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit() || c == '/');
        let imaginary = self.rest().starts_with('i');
        if imaginary {
            self.pos += 1;
        }
        if digits.is_empty() && !imaginary {
            return Ok(None);
        }
        let value = if digits.is_empty() {
            Rational::from_integer(1.into())
        } else {
            parse_rational(digits).map_err(|_| self.err(start, format!("invalid number {digits:?}")))?
        };
        Ok(Some(if imaginary {
            Coefficient::new(Rational::default(), value)
        } else {
            Coefficient::real(value)
        }))
    }

    fn term(&mut self) -> Result<(Coefficient, FreeWord)> {
        self.skip_ws();
        let start = self.pos;
        let coeff = self.number()?;
        self.skip_ws();
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            self.skip_ws();
        }
        let word = if self.rest().starts_with("t:") {
            self.pos += 2;
            let wstart = self.pos;
            let w = self.take_while(|c| c.is_ascii_alphabetic() || c == '1');
            if w.is_empty() {
                return Err(self.err(wstart, "expected a word after t:"));
            }
            FreeWord::parse(w, self.rank).map_err(|e| match e {
                Error::Parse { offset, message } => self.err(wstart + offset, message),
                other => other,
            })?
        } else if coeff.is_some() {
            FreeWord::identity(self.rank)
        } else {
            return Err(self.err(start, "expected a coefficient or t:WORD"));
        };
        Ok((coeff.unwrap_or_else(Coefficient::one), word))
    }

    fn element(&mut self) -> Result<AlgebraElement<FreeWord>> {
        let mut f = AlgebraElement::zero(self.rank);
        self.skip_ws();
        let mut sign = Coefficient::one();
        if self.peek() == Some('-') {
            sign = Coefficient::from_int(-1);
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let (c, w) = self.term()?;
            f.add_term(w, &(&sign * &c));
            self.skip_ws();
            match self.peek() {
                None => return Ok(f),
                Some('+') => sign = Coefficient::one(),
                Some('-') => sign = Coefficient::from_int(-1),
                Some(other) => return Err(self.err(self.pos, format!("unexpected {other:?}"))),
            }
            self.pos += 1;
        }
    }
}

/// Parses inline sugar such as `"1 - t:ab"` or `"1/2*t:a + 3i*t:bB"`, the
/// JSON element format, or `"0"`.
pub fn parse_element(text: &str, rank: usize) -> Result<AlgebraElement<FreeWord>> {
    let t = text.trim();
    if t.starts_with('{') {
        return word_element_from_json(&parse_json(t)?, rank);
    }
    if t == "0" || t.is_empty() {
        return Ok(AlgebraElement::zero(rank));
    }
    Sugar { text, pos: 0, rank }.element()
}

/// Parses an element of a finite quotient: JSON with `"perm"`/`"word"` keys,
/// or the inline sugar with words mapped through the hom.
pub fn parse_quotient_element(text: &str, hom: &GroupHom) -> Result<AlgebraElement<Permutation>> {
    let t = text.trim();
    if t.starts_with('{') {
        return perm_element_from_json(&parse_json(t)?, hom);
    }
    let f = parse_element(text, hom.rank())?;
    crate::algebra::push_forward(&f, hom)
}

/// A weight built from a JSON spec, on the free group or on a finite quotient.
pub enum WeightSpec {
    Free(Box<dyn Weight<FreeWord>>),
    Quotient {
        weight: Box<dyn Weight<Permutation>>,
        hom: GroupHom,
    },
}

impl WeightSpec {
    /// `{"kind":"radial","base":"2"}`, `{"kind":"table","values":{...}}` (keys
    /// are words; with a `"group"` they are mapped into that quotient), or
    /// `{"kind":"induced","parent":...,"group":...}`.
    pub fn from_json(v: &Value, cap: usize) -> Result<WeightSpec> {
        match as_str(field(v, "kind")?, "kind")? {
            "radial" => {
                let base = v.get("base").map(rational_from_json).transpose()?;
                let base = base.unwrap_or_else(|| Rational::from_integer(2.into()));
                Ok(WeightSpec::Free(Box::new(RadialWeight::new(base)?)))
            }
            "table" => {
                let values = field(v, "values")?
                    .as_object()
                    .ok_or_else(|| invalid("values must be an object"))?;
                match v.get("group") {
                    Some(g) => {
                        let hom = GroupSpec::from_json(g)?.hom(cap)?;
                        let mut table = BTreeMap::new();
                        for (k, val) in values {
                            let p = hom.apply(&FreeWord::parse(k, hom.rank())?)?;
                            table.insert(p, rational_from_json(val)?);
                        }
                        Ok(WeightSpec::Quotient {
                            weight: Box::new(TableWeight::new(table)?),
                            hom,
                        })
                    }
                    None => {
                        let rank = v.get("rank").map(|r| as_usize(r, "rank")).transpose()?.unwrap_or(2);
                        let mut table = BTreeMap::new();
                        for (k, val) in values {
                            table.insert(FreeWord::parse(k, rank)?, rational_from_json(val)?);
                        }
                        Ok(WeightSpec::Free(Box::new(TableWeight::new(table)?)))
                    }
                }
            }
            "induced" => {
                let parent = match WeightSpec::from_json(field(v, "parent")?, cap)? {
                    WeightSpec::Free(w) => w,
                    WeightSpec::Quotient { .. } => {
                        return Err(Error::UnsupportedWeight("the parent of an induced weight must live on the free group".into()))
                    }
                };
                let hom = GroupSpec::from_json(field(v, "group")?)?.hom(cap)?;
                let weight = InducedWeight::new(parent.as_ref(), &hom, cap)?;
                Ok(WeightSpec::Quotient {
                    weight: Box::new(weight),
                    hom,
                })
            }
            other => Err(invalid(format!("unknown weight kind {other:?}"))),
        }
    }

    pub fn parse(text: &str, cap: usize) -> Result<WeightSpec> {
        WeightSpec::from_json(&parse_json(text)?, cap)
    }

    pub fn describe(&self) -> String {
        match self {
            WeightSpec::Free(w) => w.describe(),
            WeightSpec::Quotient { weight, .. } => weight.describe(),
        }
    }
}

impl Default for WeightSpec {
    fn default() -> Self {
        WeightSpec::Free(Box::new(RadialWeight::base_two()))
    }
}

/// Default cap used when a spec does not name one.
pub const DEFAULT_JSON_CAP: usize = DEFAULT_CAP;

pub fn certificate_to_json(c: &TelescopeCertificate) -> Value {
    let gens: Vec<Value> = c
        .gens
        .iter()
        .map(|(y, g)| {
            json!({
                "y": word_to_json(y),
                "g_y": element_to_json(g),
                "summands": c.summands.get(y).cloned().unwrap_or_default(),
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("u".into(), word_to_json(c.u()));
    m.insert("factors".into(), words_to_json(&c.factorization.factors));
    m.insert("geodesic".into(), json!(c.geodesic));
    m.insert("gens".into(), Value::Array(gens));
    m.insert("identity_checked".into(), json!(c.identity_checked));
    if let Some(e) = &c.growth {
        m.insert(
            "eq2_bound".into(),
            json!({
                "norm": e.max_norm().to_string(),
                "bound": e.bound.to_string(),
                "prefix_norms": e.prefix_norms.iter().map(rational_to_json).collect::<Vec<_>>(),
                "strictly_increasing": e.strictly_increasing,
                "holds": e.holds,
            }),
        );
    }
    Value::Object(m)
}

pub fn decomposition_to_json(d: &AugmentationDecomposition) -> Value {
    let phi: Vec<Value> = d
        .phi
        .iter()
        .map(|(y, p)| {
            let mut m = Map::new();
            m.insert("y".into(), word_to_json(y));
            m.insert("phi_y".into(), element_to_json(p));
            if let Some(e) = d.evidence.get(y) {
                m.insert(
                    "norm".into(),
                    json!({
                        "phi": e.phi_norm.to_string(),
                        "weighted_coefficients": e.weighted_coefficients.to_string(),
                        "f": e.f_norm.to_string(),
                        "holds": e.holds,
                    }),
                );
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "f": element_to_json(&d.f),
        "phi": phi,
        "certificates": d.certificates.len(),
        "identity_checked": d.identity_checked,
    })
}

pub fn j_expression_to_json(e: &JExpression) -> Value {
    let psi: Vec<Value> = e
        .psi
        .iter()
        .map(|(y, p)| json!({"y": word_to_json(y), "psi_y": element_to_json(p)}))
        .collect();
    json!({
        "f": element_to_json(&e.f),
        "components": e.components.iter().map(element_to_json).collect::<Vec<_>>(),
        "psi": psi,
        "identity_checked": e.identity_checked,
    })
}

pub fn separation_to_json(s: &SeparationResult) -> Value {
    json!({
        "f": element_to_json(&s.f),
        "translation": s.translation.as_ref().map(word_to_json),
        "translated": element_to_json(&s.translated),
        "classes": s.classes.iter().map(|c| json!({
            "representative": word_to_json(&c.representative),
            "coeff": coefficient_to_json(&c.coefficient),
            "words": c.words,
            "trivial_at_level": c.trivial_at_level,
        })).collect::<Vec<_>>(),
        "level": s.level,
        "quotient_degree": s.quotient_degree,
        "finite_set": words_to_json(&s.finite_set),
        "identity_sum": coefficient_to_json(&s.identity_sum),
        "f_e": coefficient_to_json(&s.f_e),
        "tail": s.tail.to_string(),
        "tail_dominated": s.tail_dominated,
        "certified": s.certified,
    })
}

pub fn cancellation_to_json(r: &CancellationReport) -> Value {
    json!({
        "u": word_to_json(&r.factorization.u),
        "factors": words_to_json(&r.factorization.factors),
        "pair_cancellations": r.pairs.iter().map(|c| json!({
            "i": c.i, "cancelled": c.cancelled, "bound": c.bound, "ok": c.ok,
        })).collect::<Vec<_>>(),
        "survival_flags": r.survival.iter().map(|c| json!({
            "j": c.j, "cancelled_positions": c.cancelled_positions, "ok": c.ok,
        })).collect::<Vec<_>>(),
        "growth_flags": r.growth.iter().map(|c| json!({
            "j": c.j, "before": c.before, "after": c.after, "ok": c.ok,
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

pub fn codimension_to_json(r: &CodimensionReport) -> Value {
    json!({
        "group_order": r.group_order,
        "subgroup_order": r.subgroup_order,
        "index": r.index,
        "dim_i": r.dim_i,
        "dim_j": r.dim_j,
        "codim_i": r.codim_i,
        "codim_j": r.codim_j,
        "j_is_left_ideal": r.j_is_left_ideal,
        "formula_holds": r.formula_holds,
    })
}

pub fn extraction_to_json<G: JsonKey>(e: &ExtractedExpression<G>) -> Value {
    json!({
        "g": element_to_json(&e.g),
        "terms": e.terms.iter().map(|t| json!({
            "i": t.i,
            "k": t.k,
            "k_prime": t.k_prime,
            "coefficient": element_to_json(&t.coefficient),
            "component": element_to_json(&t.component),
        })).collect::<Vec<_>>(),
        "identity_checked": e.identity_checked,
    })
}

pub fn pullback_to_json(r: &PullbackResult) -> Value {
    json!({
        "images": r.images.iter().map(|(y, p)| json!({"y": word_to_json(y), "q_y": perm_to_json(p)})).collect::<Vec<_>>(),
        "generators": r.generators.iter().map(element_to_json).collect::<Vec<_>>(),
        "degenerate": r.degenerate,
        "group_order": r.group_order,
        "subgroup_order": r.subgroup_order,
        "index": r.index,
        "ideal_dimension": r.ideal_dimension,
        "expected_dimension": r.expected_dimension,
        "generates": r.generates,
    })
}

pub fn weight_report_to_json<G: std::fmt::Display>(r: &WeightCheckReport<G>) -> Value {
    json!({
        "checked_pairs": r.checked_pairs,
        "identity_ok": r.identity_ok,
        "violations": r.violations.iter().map(|v| json!({
            "s": v.s.to_string(),
            "t": v.t.to_string(),
            "weight_of_product": v.weight_of_product.to_string(),
            "product_of_weights": v.product_of_weights.to_string(),
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}
