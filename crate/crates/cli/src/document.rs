//! JSON input documents: `cdga`, `lie`, `complex`, `map` and `gram`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use sullivan_core::cdga::FreeCdga;
use sullivan_core::lie::{GLieAlgebra, LieData};
use sullivan_core::{ChainMap, Complex, Generator, GeneratorSet, GradedSpace, Matrix, Polynomial, Rational};

use crate::expr::{nfc, parse_expression, parse_linear, valid_name, ParseError};

pub const SCHEMA: &str = "sullivan/1";

/// Problems with the document itself, as opposed to the mathematics.
#[derive(Debug)]
pub enum SchemaError {
    Json(serde_json::Error),
    Expression { location: String, error: ParseError },
    Invalid(String),
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::Json(e) => write!(f, "invalid document: {e}"),
            SchemaError::Expression { location, error } => write!(f, "{location}: {error}"),
            SchemaError::Invalid(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for SchemaError {}

fn invalid(m: impl Into<String>) -> SchemaError {
    SchemaError::Invalid(m.into())
}

/// An exact rational on the wire: a string `"p/q"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match Value::deserialize(d)? {
            Value::Number(n) if n.is_i64() => Ok(Q(Rational::from_integer(n.as_i64().unwrap().into()))),
            Value::String(s) => s.trim().parse::<Rational>().map(Q).map_err(|_| D::Error::custom(format!("not a rational: {s:?}"))),
            other => Err(D::Error::custom(format!("expected an integer or a \"p/q\" string, found {other}"))),
        }
    }
}

/// Sparse matrix as `(row, column, value)` triplets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub entries: Vec<(usize, usize, Q)>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries: m.triplets().into_iter().map(|(i, j, v)| (i, j, Q(v))).collect() }
    }

    pub fn to_matrix(&self, location: &str) -> Result<Matrix, SchemaError> {
        for (i, j, _) in &self.entries {
            if *i >= self.rows || *j >= self.cols {
                return Err(invalid(format!("{location}: entry ({i}, {j}) outside a {}x{} matrix", self.rows, self.cols)));
            }
        }
        let entries: Vec<_> = self.entries.iter().map(|(i, j, q)| (*i, *j, q.0.clone())).collect();
        Ok(Matrix::from_triplets(self.rows, self.cols, &entries))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CdgaDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i64>,
    pub generators: Vec<GeneratorDoc>,
    /// Missing entries mean `d = 0`.
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
}

/// A Lie generator: a bare name (degree 0) or `{name, degree}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LieGenerator {
    Name(String),
    Graded(GeneratorDoc),
}

impl LieGenerator {
    fn parts(&self) -> (String, i64) {
        match self {
            LieGenerator::Name(n) => (nfc(n), 0),
            LieGenerator::Graded(g) => (nfc(&g.name), g.degree),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub left: String,
    pub right: String,
    /// A linear combination of generators.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorTerm {
    pub left: String,
    pub right: String,
    pub coefficient: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i64>,
    pub generators: Vec<LieGenerator>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
    /// `∂(x)` as a linear combination, degree `+1`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub boundary: BTreeMap<String, String>,
    /// `δ(x) = Σ c · left ⊗ right`, degree `0`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cobracket: BTreeMap<String, Vec<TensorTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Basis labels per degree.
    pub degrees: BTreeMap<String, Vec<String>>,
    /// `d_k : C_k -> C_{k+1}` keyed by `k`.
    #[serde(default)]
    pub differential: BTreeMap<String, MatrixDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub augmented: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    #[serde(default)]
    pub components: BTreeMap<String, MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub grams: BTreeMap<String, MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Cdga(CdgaDoc),
    Lie(LieDoc),
    Complex(ComplexDoc),
    Map(MapDoc),
    Gram(GramDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Cdga(_) => "cdga",
            Document::Lie(_) => "lie",
            Document::Complex(_) => "complex",
            Document::Map(_) => "map",
            Document::Gram(_) => "gram",
        }
    }

    pub fn truncation(&self) -> Option<i64> {
        match self {
            Document::Cdga(d) => d.truncation,
            Document::Lie(d) => d.truncation,
            _ => None,
        }
    }

    /// Canonical JSON: sorted keys, rationals as reduced `"p/q"` strings.
    pub fn to_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("documents serialize");
        if let Value::Object(m) = &mut v {
            m.insert("schema".into(), Value::String(SCHEMA.into()));
        }
        v
    }
}

pub fn parse_document(text: &str) -> Result<Document, SchemaError> {
    let mut v: Value = serde_json::from_str(text).map_err(SchemaError::Json)?;
    let Value::Object(map) = &mut v else {
        return Err(invalid("a document must be a JSON object"));
    };
    match map.remove("schema") {
        None => {}
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(other) => return Err(invalid(format!("unsupported schema {other}, expected {SCHEMA:?}"))),
    }
    serde_json::from_value(v).map_err(SchemaError::Json)
}

fn degree_key(s: &str, location: &str) -> Result<i64, SchemaError> {
    s.trim().parse().map_err(|_| invalid(format!("{location}: degree key {s:?} is not an integer")))
}

fn check_name(name: &str, location: &str) -> Result<(), SchemaError> {
    if valid_name(name) {
        Ok(())
    } else {
        Err(invalid(format!("{location}: {name:?} is not a valid generator name")))
    }
}

/// Either a schema problem or a mathematical rejection from the engine.
#[derive(Debug)]
pub enum BuildError {
    Schema(SchemaError),
    Math(sullivan_core::Error),
}

impl From<SchemaError> for BuildError {
    fn from(e: SchemaError) -> Self {
        BuildError::Schema(e)
    }
}

impl From<sullivan_core::Error> for BuildError {
    fn from(e: sullivan_core::Error) -> Self {
        BuildError::Math(e)
    }
}

impl CdgaDoc {
    pub fn generator_set(&self) -> Result<GeneratorSet, SchemaError> {
        let mut gens = Vec::new();
        for g in &self.generators {
            let name = nfc(&g.name);
            check_name(&name, "generators")?;
            gens.push(Generator::new(name, g.degree));
        }
        GeneratorSet::new(gens).map_err(|e| invalid(format!("generators: {e}")))
    }

    /// Parses every differential. Schema problems only; no validation of `d`.
    pub fn differentials(&self, gens: &GeneratorSet) -> Result<Vec<Polynomial>, SchemaError> {
        let mut diff = vec![Polynomial::zero(); gens.len()];
        for (name, src) in &self.differential {
            let i = gens.index_of(&nfc(name)).map_err(|_| invalid(format!("differential: undeclared generator {name:?}")))?;
            diff[i] = parse_expression(src, gens).map_err(|error| SchemaError::Expression { location: format!("differential of {name}"), error })?;
        }
        Ok(diff)
    }

    pub fn build(&self, truncation: i64) -> Result<FreeCdga, BuildError> {
        let gens = self.generator_set()?;
        let diff = self.differentials(&gens)?;
        Ok(FreeCdga::new(gens, diff, truncation)?)
    }
}

impl LieDoc {
    fn names_and_degrees(&self) -> Result<(Vec<String>, Vec<i64>), SchemaError> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for g in &self.generators {
            let (n, d) = g.parts();
            check_name(&n, "generators")?;
            if names.contains(&n) {
                return Err(invalid(format!("generators: duplicate name {n:?}")));
            }
            names.push(n);
            degrees.push(d);
        }
        Ok((names, degrees))
    }

    fn index(names: &[String], name: &str, location: &str) -> Result<usize, SchemaError> {
        let n = nfc(name);
        names.iter().position(|x| *x == n).ok_or_else(|| invalid(format!("{location}: undeclared generator {name:?}")))
    }

    fn linear(names: &[String], src: &str, location: String) -> Result<Vec<Rational>, SchemaError> {
        parse_linear(src, names).map_err(|error| SchemaError::Expression { location, error })
    }

    pub fn is_ungraded(&self) -> bool {
        self.generators.iter().all(|g| g.parts().1 == 0) && self.boundary.is_empty() && self.cobracket.is_empty()
    }

    pub fn graded(&self) -> Result<GLieAlgebra, BuildError> {
        let (names, degrees) = self.names_and_degrees()?;
        let n = names.len();
        let mut triples = Vec::new();
        for (i, j, v) in self.bracket_list(&names)? {
            for (k, c) in v.into_iter().enumerate() {
                if !num_traits::Zero::is_zero(&c) {
                    triples.push((i, j, k, c));
                }
            }
        }
        // Brackets are listed once; antisymmetry fills in the transpose.
        let sign = |i: usize, j: usize| if degrees[i] * degrees[j] % 2 != 0 { 1 } else { -1 };
        let mut full = triples.clone();
        for (i, j, k, c) in &triples {
            if i != j {
                full.push((*j, *i, *k, c * Rational::from_integer(sign(*i, *j).into())));
            }
        }
        let boundary = if self.boundary.is_empty() {
            None
        } else {
            let mut m = Matrix::zeros(n, n);
            for (name, src) in &self.boundary {
                let j = Self::index(&names, name, "boundary")?;
                for (i, c) in Self::linear(&names, src, format!("boundary of {name}"))?.into_iter().enumerate() {
                    m[(i, j)] = c;
                }
            }
            Some(m)
        };
        let cobracket = if self.cobracket.is_empty() {
            None
        } else {
            let mut ms = vec![Matrix::zeros(n, n); n];
            for (name, terms) in &self.cobracket {
                let k = Self::index(&names, name, "cobracket")?;
                for t in terms {
                    let i = Self::index(&names, &t.left, "cobracket")?;
                    let j = Self::index(&names, &t.right, "cobracket")?;
                    ms[k][(i, j)] += &t.coefficient.0;
                }
            }
            Some(ms)
        };
        Ok(GLieAlgebra::new(names, degrees, &full, boundary, cobracket)?)
    }

    /// The ungraded Lie algebra for Weil and Chevalley–Eilenberg algebras.
    pub fn ungraded(&self) -> Result<LieData, BuildError> {
        if !self.is_ungraded() {
            return Err(BuildError::Math(sullivan_core::Error::Precondition(
                "this command needs an ungraded Lie algebra (all degrees 0, no boundary or cobracket)".into(),
            )));
        }
        let (names, _) = self.names_and_degrees()?;
        let brackets = self.bracket_list(&names)?;
        Ok(LieData::from_brackets(names, &brackets)?)
    }

    /// Listed brackets as `(left, right, value)`; each unordered pair at most once.
    fn bracket_list(&self, names: &[String]) -> Result<Vec<(usize, usize, Vec<Rational>)>, BuildError> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for b in &self.brackets {
            let i = Self::index(names, &b.left, "brackets")?;
            let j = Self::index(names, &b.right, "brackets")?;
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(BuildError::Schema(invalid(format!(
                    "bracket [{}, {}] is listed more than once (list each pair once)",
                    b.left, b.right
                ))));
            }
            let v = Self::linear(names, &b.value, format!("bracket [{}, {}]", b.left, b.right))?;
            out.push((i, j, v));
        }
        Ok(out)
    }
}

impl ComplexDoc {
    pub fn build(&self) -> Result<Complex, BuildError> {
        let mut space = GradedSpace::new();
        for (k, labels) in &self.degrees {
            let k = degree_key(k, "degrees")?;
            space.set_degree(k, labels.iter().map(|s| nfc(s)).collect()).map_err(|e| invalid(format!("degree {k}: {e}")))?;
        }
        let mut diff = BTreeMap::new();
        for (k, m) in &self.differential {
            let kk = degree_key(k, "differential")?;
            let mat = m.to_matrix(&format!("differential {k}"))?;
            if mat.shape() != (space.dim(kk + 1), space.dim(kk)) {
                return Err(BuildError::Schema(invalid(format!(
                    "differential {k}: expected {}x{}, found {}x{}",
                    space.dim(kk + 1),
                    space.dim(kk),
                    mat.rows(),
                    mat.cols()
                ))));
            }
            diff.insert(kk, mat);
        }
        Ok(Complex::new(space, diff)?.with_augmentation(self.augmented))
    }

    pub fn from_complex(c: &Complex) -> Self {
        let degrees = c.space().iter().filter(|(_, l)| !l.is_empty()).map(|(k, l)| (k.to_string(), l.to_vec())).collect();
        let differential = c
            .degrees()
            .map(|k| (k, c.d(k)))
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, m)| (k.to_string(), MatrixDoc::from_matrix(&m)))
            .collect();
        ComplexDoc { name: None, degrees, differential, augmented: c.is_augmented() }
    }
}

impl MapDoc {
    pub fn build(&self) -> Result<ChainMap, BuildError> {
        let source = self.source.build()?;
        let target = self.target.build()?;
        let mut components = BTreeMap::new();
        for (k, m) in &self.components {
            let kk = degree_key(k, "components")?;
            let mat = m.to_matrix(&format!("component {k}"))?;
            if mat.shape() != (target.dim(kk), source.dim(kk)) {
                return Err(BuildError::Schema(invalid(format!("component {k}: expected {}x{}", target.dim(kk), source.dim(kk)))));
            }
            components.insert(kk, mat);
        }
        Ok(ChainMap::new(source, target, 0, components)?)
    }
}

impl GramDoc {
    pub fn grams(&self) -> Result<BTreeMap<i64, Matrix>, SchemaError> {
        self.grams.iter().map(|(k, m)| Ok((degree_key(k, "grams")?, m.to_matrix(&format!("gram {k}"))?))).collect()
    }

    pub fn inner_product(&self) -> Result<sullivan_core::hodge::InnerProduct, BuildError> {
        let grams = self.grams()?;
        for (k, g) in &grams {
            if g.rows() != g.cols() || *g != g.transpose() {
                return Err(BuildError::Math(sullivan_core::Error::NotPositiveDefinite(*k)));
            }
        }
        Ok(sullivan_core::hodge::InnerProduct::new(grams)?)
    }
}
