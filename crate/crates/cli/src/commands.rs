//! Subcommands and their JSON reports.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde_json::{json, Map, Value};
use sullivan_core::cartan::{basic_betti, chevalley_eilenberg, weil_algebra, CartanOps};
use sullivan_core::cdga::{monomial_label, FreeCdga};
use sullivan_core::hodge::{self, InnerProduct};
use sullivan_core::minimal::minimal_model;
use sullivan_core::{Complex, Error, Matrix, Polynomial, Rational};

use crate::document::{BuildError, ComplexDoc, Document, GramDoc, SchemaError};

pub const DEFAULT_TRUNCATION: i64 = 8;
pub const MAX_TRUNCATION: i64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Check,
    Homology,
    MinimalModel,
    Homotopy,
    Weil,
    Ce,
    Cone,
    Cyl,
    ConeMap,
    Hodge,
    NumberOp,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Check,
        Command::Homology,
        Command::MinimalModel,
        Command::Homotopy,
        Command::Weil,
        Command::Ce,
        Command::Cone,
        Command::Cyl,
        Command::ConeMap,
        Command::Hodge,
        Command::NumberOp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Homology => "homology",
            Command::MinimalModel => "minimal-model",
            Command::Homotopy => "homotopy",
            Command::Weil => "weil",
            Command::Ce => "ce",
            Command::Cone => "cone",
            Command::Cyl => "cyl",
            Command::ConeMap => "cone-map",
            Command::Hodge => "hodge",
            Command::NumberOp => "number-op",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub truncation: Option<i64>,
    pub window: Option<RangeInclusive<i64>>,
    pub gram: Option<GramDoc>,
}

#[derive(Debug)]
pub enum RunError {
    /// Exit status 2.
    Schema(SchemaError),
    /// Exit status 1.
    Rejected(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Schema(_) => 2,
            RunError::Rejected(_) => 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Schema(e) => write!(f, "{e}"),
            RunError::Rejected(e) => write!(f, "rejected: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<BuildError> for RunError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Schema(s) => RunError::Schema(s),
            BuildError::Math(m) => RunError::Rejected(m),
        }
    }
}

impl From<SchemaError> for RunError {
    fn from(e: SchemaError) -> Self {
        RunError::Schema(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Rejected(e)
    }
}

fn unsupported(cmd: Command, doc: &Document) -> RunError {
    RunError::Schema(SchemaError::Invalid(format!("`{}` does not accept a {} document", cmd.name(), doc.kind())))
}

fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn betti_object(betti: impl IntoIterator<Item = (i64, usize)>) -> Value {
    Value::Object(betti.into_iter().map(|(k, b)| (k.to_string(), json!(b))).collect())
}

fn poly(p: &Polynomial, a: &FreeCdga) -> Value {
    Value::String(p.display(a.generators()).to_string())
}

pub fn truncation_for(doc: &Document, opts: &Options) -> i64 {
    opts.truncation.or(doc.truncation()).unwrap_or(DEFAULT_TRUNCATION)
}

/// Runs `check` and then the requested command.
pub fn run(cmd: Command, doc: &Document, opts: &Options) -> Result<Value, RunError> {
    let n = truncation_for(doc, opts);
    if n < 0 {
        return Err(RunError::Schema(SchemaError::Invalid(format!("truncation must be non-negative, got {n}"))));
    }
    let checked = check(doc, n)?;
    let body = match cmd {
        Command::Check => checked,
        Command::Homology => homology(doc, n, opts)?,
        Command::MinimalModel => match doc {
            Document::Cdga(d) => minimal(&d.build(n)?, n, true)?,
            _ => return Err(unsupported(cmd, doc)),
        },
        Command::Homotopy => match doc {
            Document::Cdga(d) => minimal(&d.build(n)?, n, false)?,
            _ => return Err(unsupported(cmd, doc)),
        },
        Command::Weil => match doc {
            Document::Lie(d) => weil(&d.ungraded()?, n, opts)?,
            _ => return Err(unsupported(cmd, doc)),
        },
        Command::Ce => match doc {
            Document::Lie(d) => ce(&d.ungraded()?, n, opts)?,
            _ => return Err(unsupported(cmd, doc)),
        },
        Command::Cone => match doc {
            Document::Complex(d) => cone(&d.build()?),
            _ => return Err(unsupported(cmd, doc)),
        },
        Command::Cyl => match doc {
            Document::Map(d) => cyl(&d.build()?)?,
            _ => return Err(unsupported(cmd, doc)),
        },
        Command::ConeMap => match doc {
            Document::Map(d) => cone_map(&d.build()?)?,
            _ => return Err(unsupported(cmd, doc)),
        },
        Command::Hodge => hodge_report(doc, n, opts)?,
        Command::NumberOp => match doc {
            Document::Lie(d) => number_op(&d.graded()?, n, opts)?,
            _ => return Err(unsupported(cmd, doc)),
        },
    };
    Ok(body)
}

/// Validates the object described by the document.
pub fn check(doc: &Document, n: i64) -> Result<Value, RunError> {
    Ok(match doc {
        Document::Cdga(d) => {
            let a = d.build(n)?;
            json!({
                "kind": "cdga",
                "generators": a.generators().len(),
                "truncation": n,
                "homogeneous": true,
                "d_squared_zero": true,
                "d_squared_zero_matrices": d_squared_matrices(&a, n),
                "leibniz": leibniz(&a, n),
            })
        }
        Document::Lie(d) => {
            let l = d.graded()?;
            let compatible = if l.has_cobracket() {
                l.check_coderivation()?;
                Value::Bool(true)
            } else {
                Value::Null
            };
            json!({
                "kind": "lie",
                "dimension": l.dim(),
                "antisymmetry": true,
                "jacobi": true,
                "boundary_derivation": l.has_boundary(),
                "cobracket_compatible": compatible,
            })
        }
        Document::Complex(d) => {
            let c = d.build()?;
            json!({ "kind": "complex", "d_squared_zero": true, "euler_characteristic": c.euler_characteristic() })
        }
        Document::Map(d) => {
            let f = d.build()?;
            f.check()?;
            json!({ "kind": "map", "chain_map": true })
        }
        Document::Gram(d) => {
            d.inner_product()?;
            json!({ "kind": "gram", "positive_definite": true, "degrees": d.grams.len() })
        }
    })
}

fn d_squared_matrices(a: &FreeCdga, n: i64) -> bool {
    (0..n).all(|k| (&a.d_matrix(k + 1) * &a.d_matrix(k)).is_zero())
}

/// `d(xy) = d(x) y + (-1)^{|x|} x d(y)` on pairs of basis monomials.
fn leibniz(a: &FreeCdga, n: i64) -> bool {
    for p in 0..n {
        for m in a.basis(p) {
            let x = Polynomial::monomial(m, Rational::from_integer(1.into()));
            for r in 0..n - p {
                for m2 in a.basis(r) {
                    let y = Polynomial::monomial(m2, Rational::from_integer(1.into()));
                    let lhs = a.apply_d(&a.mul(&x, &y));
                    let mut rhs = a.mul(&a.apply_d(&x), &y);
                    let second = a.mul(&x, &a.apply_d(&y));
                    rhs.add_assign(&if p % 2 != 0 { second.neg() } else { second });
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn window_or(opts: &Options, default: RangeInclusive<i64>) -> RangeInclusive<i64> {
    opts.window.clone().unwrap_or(default)
}

fn homology(doc: &Document, n: i64, opts: &Options) -> Result<Value, RunError> {
    match doc {
        Document::Cdga(d) => {
            let a = d.build(n)?;
            let w = window_or(opts, 0..=n);
            let report = a.homology(w.clone())?;
            let c = a.complex_through(n + 1);
            let mut reps = Map::new();
            for k in w.clone() {
                let basis = c.homology_basis(k);
                if !basis.is_empty() {
                    reps.insert(k.to_string(), Value::Array(basis.iter().map(|v| poly(&a.from_coordinates(v, k), &a)).collect()));
                }
            }
            Ok(json!({
                "betti": betti_object(w.clone().map(|k| (k, report.betti(k)))),
                "representatives": reps,
                "window": [w.start(), w.end()],
            }))
        }
        Document::Complex(d) => {
            let c = d.build()?;
            let range = c.range().unwrap_or(0..=0);
            let w = window_or(opts, range);
            let report = c.homology(w.clone());
            Ok(json!({
                "betti": betti_object(w.clone().map(|k| (k, report.betti(k)))),
                "euler_characteristic": c.euler_characteristic(),
                "window": [w.start(), w.end()],
            }))
        }
        Document::Map(d) => {
            let f = d.build()?;
            let lo = [f.source().range(), f.target().range()].into_iter().flatten().map(|r| *r.start()).min().unwrap_or(0);
            let hi = [f.source().range(), f.target().range()].into_iter().flatten().map(|r| *r.end()).max().unwrap_or(0);
            let w = window_or(opts, lo..=hi);
            let mut induced = Map::new();
            for k in w.clone() {
                induced.insert(k.to_string(), json!(f.induced_map(k).rank()));
            }
            Ok(json!({
                "source_betti": betti_object(w.clone().map(|k| (k, f.source().betti(k)))),
                "target_betti": betti_object(w.clone().map(|k| (k, f.target().betti(k)))),
                "induced_rank": induced,
                "weak_equivalence": f.is_weak_equivalence_on(w.clone())?,
                "window": [w.start(), w.end()],
            }))
        }
        _ => Err(unsupported(Command::Homology, doc)),
    }
}

fn minimal(a: &FreeCdga, n: i64, full: bool) -> Result<Value, RunError> {
    let m = minimal_model(a, n)?;
    let cert = m.certify()?;
    if !cert.passes() {
        return Err(RunError::Rejected(Error::Consistency(format!("the constructed model is not certified through {n}"))));
    }
    let table = m.homotopy_table();
    let pi: Map<String, Value> = table.ranks.iter().map(|(k, r)| (k.to_string(), json!(r))).collect();
    if !full {
        return Ok(json!({ "certified_through": table.certified_through, "pi": pi }));
    }
    let model = &m.model;
    let target = &m.quasi_iso.target;
    let stages: Vec<Value> = m
        .stages
        .iter()
        .map(|s| {
            let gens: Vec<Value> = s
                .generators
                .iter()
                .zip(&s.differentials)
                .zip(&s.targets)
                .map(|((g, d), t)| json!({ "name": g, "d": poly(d, model), "image": poly(t, target) }))
                .collect();
            json!({ "degree": s.degree, "generators": gens })
        })
        .collect();
    let evidence: Vec<Value> = cert
        .evidence
        .iter()
        .map(|e| json!({ "degree": e.degree, "betti_model": e.betti_model, "betti_target": e.betti_target, "induced_rank": e.induced_rank }))
        .collect();
    Ok(json!({
        "certified_through": table.certified_through,
        "pi": pi,
        "stages": stages,
        "certificate": { "weak_equivalence": cert.weak_equivalence, "evidence": evidence },
    }))
}

fn cartan_json(ops: &CartanOps) -> Value {
    let r = ops.check_identities();
    json!({ "identities_hold": r.symbolic, "failures": r.failures })
}

fn generator_list(a: &FreeCdga) -> Value {
    Value::Array(a.generators().iter().map(|g| json!({ "name": g.name, "degree": g.degree })).collect())
}

fn weil(lie: &sullivan_core::lie::LieData, n: i64, opts: &Options) -> Result<Value, RunError> {
    let w = window_or(opts, 0..=n);
    let ops = weil_algebra(lie, n + 1)?;
    let report = ops.algebra.homology(w.clone())?;
    let basic = basic_betti(&ops, *w.end())?;
    Ok(json!({
        "generators": generator_list(&ops.algebra),
        "betti": betti_object(w.clone().map(|k| (k, report.betti(k)))),
        "basic_betti": betti_object(w.clone().filter(|k| *k >= 0).map(|k| (k, basic[k as usize]))),
        "cartan": cartan_json(&ops),
        "window": [w.start(), w.end()],
    }))
}

fn ce(lie: &sullivan_core::lie::LieData, n: i64, opts: &Options) -> Result<Value, RunError> {
    let w = window_or(opts, 0..=n.min(lie.dim() as i64));
    let ops = chevalley_eilenberg(lie, n.max(*w.end()))?;
    let report = ops.algebra.homology(w.clone())?;
    let c = ops.algebra.complex_through(*w.end() + 1);
    let mut reps = Map::new();
    for k in w.clone() {
        let basis = c.homology_basis(k);
        if !basis.is_empty() {
            reps.insert(k.to_string(), Value::Array(basis.iter().map(|v| poly(&ops.algebra.from_coordinates(v, k), &ops.algebra)).collect()));
        }
    }
    Ok(json!({
        "generators": generator_list(&ops.algebra),
        "betti": betti_object(w.clone().map(|k| (k, report.betti(k)))),
        "representatives": reps,
        "cartan": cartan_json(&ops),
        "window": [w.start(), w.end()],
    }))
}

fn complex_value(c: &Complex) -> Value {
    let mut v = serde_json::to_value(ComplexDoc::from_complex(c)).expect("serializes");
    if let Value::Object(m) = &mut v {
        m.insert("kind".into(), json!("complex"));
        m.insert("schema".into(), json!(crate::document::SCHEMA));
    }
    v
}

fn full_betti(c: &Complex) -> Value {
    betti_object(c.degrees().map(|k| (k, c.betti(k))))
}

fn cone(c: &Complex) -> Value {
    let k = c.cone();
    let contr = k.is_contractible();
    json!({
        "complex": complex_value(&k),
        "betti": full_betti(&k),
        "contractible": contr.contractible,
        "homotopy_verified": contr.witness.verify(&k) && contr.witness.is_contraction(),
    })
}

fn cyl(f: &sullivan_core::ChainMap) -> Result<Value, RunError> {
    let cyl = f.mapping_cylinder()?;
    Ok(json!({
        "complex": complex_value(&cyl.complex),
        "betti": full_betti(&cyl.complex),
        "target_betti": full_betti(f.target()),
        "projection_weak_equivalence": cyl.project.is_weak_equivalence()?,
    }))
}

fn cone_map(f: &sullivan_core::ChainMap) -> Result<Value, RunError> {
    let c = f.mapping_cone()?;
    Ok(json!({
        "complex": complex_value(&c),
        "betti": full_betti(&c),
        "acyclic": c.full_homology().is_acyclic(),
        "weak_equivalence": f.is_weak_equivalence()?,
    }))
}

fn hodge_report(doc: &Document, n: i64, opts: &Options) -> Result<Value, RunError> {
    let (c, window, labels): (Complex, RangeInclusive<i64>, Option<FreeCdga>) = match doc {
        Document::Complex(d) => {
            let c = d.build()?;
            let r = c.range().unwrap_or(0..=0);
            (c, window_or(opts, r), None)
        }
        Document::Cdga(d) => {
            let a = d.build(n)?;
            let w = window_or(opts, 0..=n);
            if *w.end() > n {
                return Err(RunError::Rejected(Error::Truncation(format!("window ends at {} beyond truncation {n}", w.end()))));
            }
            (a.complex_through(n + 1), w, Some(a))
        }
        Document::Lie(d) => {
            let lie = d.ungraded()?;
            let top = n.min(lie.dim() as i64);
            let a = chevalley_eilenberg(&lie, top + 1)?.algebra;
            let w = window_or(opts, 0..=top);
            if *w.end() > top {
                return Err(RunError::Rejected(Error::Truncation(format!("window ends at {} beyond {top}", w.end()))));
            }
            (a.complex_through(top + 1), w, Some(a))
        }
        _ => return Err(unsupported(Command::Hodge, doc)),
    };
    let ip = match &opts.gram {
        Some(g) => g.inner_product()?,
        None => InnerProduct::identity(),
    };
    ip.validate_for(&c)?;
    let mut degrees = Map::new();
    let mut harmonic_space = sullivan_core::GradedSpace::new();
    for k in window.clone() {
        let h = hodge::harmonic_space(&c, &ip, k)?;
        let dec = hodge::hodge_decomposition(&c, &ip, k)?;
        let basis: Vec<String> = match &labels {
            Some(a) => a.basis(k).iter().map(|m| monomial_label(m, a.generators())).collect(),
            None => c.space().basis(k).to_vec(),
        };
        harmonic_space
            .set_degree(k, (0..h.len()).map(|i| format!("h{k}_{}", i + 1)).collect())
            .expect("fresh labels");
        degrees.insert(
            k.to_string(),
            json!({
                "basis": basis,
                "harmonic": h.iter().map(|v| vector(v)).collect::<Vec<_>>(),
                "betti": c.betti(k),
                "exact_dim": dec.exact.len(),
                "coexact_dim": dec.coexact.len(),
                "decomposition_verified": dec.verify(&ip, c.dim(k)),
                "harmonic_equals_joint_kernel": hodge::harmonic_is_cocycle_and_cocycle_dual(&c, &ip, k)?,
                "images_intersect_trivially": hodge::images_intersect_trivially(&c, &ip, k)?,
            }),
        );
    }
    let harmonic = Complex::new(harmonic_space, BTreeMap::new())?;
    Ok(json!({
        "degrees": degrees,
        "laplacian_commutes": hodge::laplacian_commutes(&c, &ip)?,
        "harmonic_complex": complex_value(&harmonic),
        "window": [window.start(), window.end()],
    }))
}

fn number_op(l: &sullivan_core::lie::GLieAlgebra, n: i64, opts: &Options) -> Result<Value, RunError> {
    let dim = l.dim();
    // Per-degree Gram blocks on the generators of L, identity by default.
    let mut gram = Matrix::identity(dim);
    if let Some(g) = &opts.gram {
        for (k, block) in g.grams()? {
            let idx: Vec<usize> = (0..dim).filter(|&i| l.degrees()[i] == k).collect();
            if block.shape() != (idx.len(), idx.len()) {
                return Err(RunError::Schema(SchemaError::Invalid(format!(
                    "gram {k}: expected {0}x{0} for the generators of degree {k}",
                    idx.len()
                ))));
            }
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    gram[(i, j)] = block[(a, b)].clone();
                }
            }
        }
    }
    if l.degrees().iter().any(|&d| d < 0) {
        return Err(RunError::Rejected(Error::Precondition("number-op needs generators of degree >= 0".into())));
    }
    let r = hodge::number_operator_check(l, &gram, n)?;
    let residual: Map<String, Value> = r
        .residual
        .iter()
        .map(|(k, m)| (k.to_string(), serde_json::to_value(crate::document::MatrixDoc::from_matrix(m)).expect("serializes")))
        .collect();
    Ok(json!({
        "truncation": r.truncation,
        "poisson_relations": r.poisson_relations,
        "number_operator": r.number_operator,
        "cross_terms_cancel": r.cross_terms_cancel,
        "identity_holds": r.identity_holds,
        "degrees_checked": r.degrees_checked,
        "residual": residual,
    }))
}

/// Human-readable rendering of a report.
pub fn to_text(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match x {
                        Value::Object(inner) if !inner.is_empty() => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            go(x, indent + 1, out);
                        }
                        Value::Array(a) if a.iter().any(|e| e.is_object()) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            for e in a {
                                out.push_str(&format!("{pad}  -\n"));
                                go(e, indent + 2, out);
                            }
                        }
                        _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                    }
                }
            }
            other => out.push_str(&format!("{pad}{}\n", scalar(other))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
            Value::Object(m) if m.is_empty() => "{}".into(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}
