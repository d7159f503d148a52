//! Command-line front end: input parsing, dispatch to the computation
//! modules, and table/JSON report rendering.
//!
//! Exit codes: 0 success, 1 selftest or internal failure, 2 malformed
//! input, 3 precondition violation, 4 resource limit.

use std::collections::BTreeMap;
use std::io::Read;

use num::{BigInt, Signed};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classes::{
    dual_degree_reversal, mather_from_polar, polar_from_mather, reciprocal_from_polar,
    DegreeSequence, DualDefect,
};
use crate::curves::{polar_degrees_curve, rank, reciprocal_degree_curve, strict_dual_ranks, CurveData};
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::scrolls::{
    elliptic_dual_degree, rns_dual_degree, rns_is_balanced_selfdual, EllipticScrollSpec,
    RationalScrollSpec,
};
use crate::toric::{polygon_higher_polar, polyhedron_order2_polar, toric_report, EulerWeighting, ToricReport};
use crate::DEFAULT_SCAN_BUDGET;

/// Environment variable capping lattice-point scans.
pub const SCAN_BUDGET_ENV: &str = "POLARCALC_SCAN_BUDGET";

pub fn scan_budget_from_env() -> u64 {
    std::env::var(SCAN_BUDGET_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SCAN_BUDGET)
}

/// Serde adapters keeping arbitrary-precision integers exact in JSON
/// (decimal strings).
pub mod bigint_serde {
    use num::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| de::Error::custom(format!("invalid integer literal: {s}")))
    }
}

pub mod bigint_vec_serde {
    use num::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| {
                s.parse()
                    .map_err(|_| de::Error::custom(format!("invalid integer literal: {s}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

/// Top-level machine-readable document shared by all modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<R> {
    pub mode: String,
    pub input_echo: Value,
    pub results: R,
    pub warnings: Vec<String>,
}

// ---------------------------------------------------------------- toric

/// Parsed toric input file.
#[derive(Debug, Clone)]
pub struct ToricInput {
    pub vertices: Vec<Vec<BigInt>>,
    pub weighting: EulerWeighting,
    pub order: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HigherOrder {
    Polygon {
        order: i64,
        #[serde(with = "bigint_vec_serde")]
        degrees: Vec<BigInt>,
    },
    Polyhedron {
        #[serde(with = "bigint_vec_serde")]
        degrees: Vec<BigInt>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToricResults {
    #[serde(flatten)]
    pub report: ToricReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub higher_order: Option<HigherOrder>,
}

fn reject_floats(v: &Value) -> Result<()> {
    match v {
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                Ok(())
            } else {
                Err(Error::MalformedInput(format!(
                    "fractional or oversized numeric literal {n} rejected; exact integers only"
                )))
            }
        }
        Value::Array(xs) => xs.iter().try_for_each(reject_floats),
        Value::Object(m) => m.values().try_for_each(reject_floats),
        _ => Ok(()),
    }
}

fn get_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::MalformedInput(format!("{what} must be an integer")))
}

/// Parse the toric input document (vertices, optional weights, optional
/// order).
pub fn parse_toric_input(text: &str) -> Result<ToricInput> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::MalformedInput(format!("invalid JSON: {e}")))?;
    reject_floats(&v)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::MalformedInput("top level must be an object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "vertices" | "weights" | "order") {
            return Err(Error::MalformedInput(format!("unknown field `{key}`")));
        }
    }
    let verts = obj
        .get("vertices")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::MalformedInput("missing `vertices` array".into()))?;
    let mut vertices = Vec::new();
    for row in verts {
        let row = row
            .as_array()
            .ok_or_else(|| Error::MalformedInput("each vertex must be an integer array".into()))?;
        let mut p = Vec::new();
        for x in row {
            p.push(BigInt::from(get_i64(x, "vertex coordinate")?));
        }
        vertices.push(p);
    }

    let mut weighting = EulerWeighting::all_ones();
    if let Some(w) = obj.get("weights") {
        let w = w
            .as_object()
            .ok_or_else(|| Error::MalformedInput("`weights` must be an object".into()))?;
        for key in w.keys() {
            if !matches!(key.as_str(), "default" | "overrides") {
                return Err(Error::MalformedInput(format!("unknown weights field `{key}`")));
            }
        }
        if let Some(d) = w.get("default") {
            weighting.default_weight = BigInt::from(get_i64(d, "default weight")?);
        }
        if let Some(os) = w.get("overrides") {
            let os = os
                .as_array()
                .ok_or_else(|| Error::MalformedInput("`overrides` must be an array".into()))?;
            let mut map = BTreeMap::new();
            for o in os {
                let o = o.as_object().ok_or_else(|| {
                    Error::MalformedInput("each override must be an object".into())
                })?;
                let fv = o
                    .get("face_vertices")
                    .and_then(|x| x.as_array())
                    .ok_or_else(|| {
                        Error::MalformedInput("override missing `face_vertices` array".into())
                    })?;
                let mut key = Vec::new();
                for x in fv {
                    let i = get_i64(x, "face vertex index")?;
                    if i < 0 {
                        return Err(Error::MalformedInput("vertex indices must be >= 0".into()));
                    }
                    key.push(i as usize);
                }
                let sorted = {
                    let mut k = key.clone();
                    k.sort();
                    k.dedup();
                    k
                };
                if sorted != key {
                    return Err(Error::MalformedInput(
                        "`face_vertices` must be sorted and duplicate-free".into(),
                    ));
                }
                let eu = o
                    .get("eu")
                    .ok_or_else(|| Error::MalformedInput("override missing `eu`".into()))?;
                map.insert(key, BigInt::from(get_i64(eu, "Euler weight")?));
            }
            weighting.overrides = map;
        }
    }

    let order = obj.get("order").map(|x| get_i64(x, "order")).transpose()?;
    Ok(ToricInput { vertices, weighting, order })
}

pub fn run_toric(input: &ToricInput, budget: u64) -> Result<Document<ToricResults>> {
    let p = LatticePolytope::from_vertices(&input.vertices)?;
    let report = toric_report(&p, &input.weighting)?;
    let higher_order = match input.order {
        None => None,
        Some(k) => match p.dim() {
            2 => {
                let (a, b) = polygon_higher_polar(&p, k, budget)?;
                Some(HigherOrder::Polygon { order: k, degrees: vec![a, b] })
            }
            3 => {
                if k != 2 {
                    return Err(Error::Precondition(
                        "only order 2 is supported for 3-dimensional polytopes".into(),
                    ));
                }
                let (a, b, c) = polyhedron_order2_polar(&p, budget)?;
                Some(HigherOrder::Polyhedron { degrees: vec![a, b, c] })
            }
            d => {
                return Err(Error::Precondition(format!(
                    "higher-order formulas exist for dimensions 2 and 3 only, got {d}"
                )))
            }
        },
    };
    let input_echo = serde_json::json!({
        "vertices": p
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "default_weight": input.weighting.default_weight.to_string(),
        "overrides": input
            .weighting
            .overrides
            .iter()
            .map(|(k, w)| serde_json::json!({"face_vertices": k, "eu": w.to_string()}))
            .collect::<Vec<_>>(),
        "order": input.order,
    });
    Ok(Document {
        mode: "toric".into(),
        input_echo,
        results: ToricResults { report, higher_order },
        warnings: vec![],
    })
}

// ---------------------------------------------------------------- curve

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveResults {
    pub order: usize,
    #[serde(with = "bigint_serde")]
    pub rank: BigInt,
    pub polar: DegreeSequence,
    #[serde(with = "bigint_serde")]
    pub reciprocal: BigInt,
    #[serde(with = "bigint_vec_serde")]
    pub strict_dual_ranks: Vec<BigInt>,
}

pub fn run_curve(curve: &CurveData, k: usize) -> Result<Document<CurveResults>> {
    let r = rank(curve, k)?;
    let mut warnings = Vec::new();
    if r.is_negative() {
        warnings.push(format!(
            "computed rank r_{k} = {r} is negative; the input data is likely not realizable"
        ));
    }
    let (polar, reciprocal) = if k >= 1 {
        (polar_degrees_curve(curve, k)?, reciprocal_degree_curve(curve, k)?)
    } else {
        // k = 0 just echoes r_0 = d
        (DegreeSequence::new(vec![curve.d.clone()])?, curve.d.clone())
    };
    let results = CurveResults {
        order: k,
        rank: r,
        polar,
        reciprocal,
        strict_dual_ranks: strict_dual_ranks(curve)?,
    };
    let input_echo = serde_json::json!({
        "n": curve.n,
        "d": curve.d.to_string(),
        "g": curve.g.to_string(),
        "kappa": curve.kappa.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "k": k,
    });
    Ok(Document { mode: "curve".into(), input_echo, results, warnings })
}

// ---------------------------------------------------------------- scroll

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ScrollResults {
    Rational {
        order: i64,
        #[serde(with = "bigint_serde")]
        dual_degree: BigInt,
        balanced_selfdual: bool,
    },
    Elliptic {
        order: i64,
        #[serde(with = "bigint_serde")]
        dual_degree: BigInt,
    },
}

pub fn run_rational_scroll(s: &RationalScrollSpec, k: i64) -> Result<Document<ScrollResults>> {
    let deg = rns_dual_degree(s, k)?;
    let balanced = rns_is_balanced_selfdual(s, k)?;
    let input_echo = serde_json::json!({"type": s.scroll_type, "order": k});
    Ok(Document {
        mode: "scroll".into(),
        input_echo,
        results: ScrollResults::Rational { order: k, dual_degree: deg, balanced_selfdual: balanced },
        warnings: vec![],
    })
}

pub fn run_elliptic_scroll(s: &EllipticScrollSpec) -> Result<Document<ScrollResults>> {
    let (k, deg) = elliptic_dual_degree(s)?;
    let input_echo =
        serde_json::json!({"e": s.e, "d": s.d, "decomposable": s.decomposable});
    Ok(Document {
        mode: "scroll".into(),
        input_echo,
        results: ScrollResults::Elliptic { order: k, dual_degree: deg },
        warnings: vec![],
    })
}

// ---------------------------------------------------------------- convert

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertFrom {
    Mather,
    Polar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvertResults {
    pub polar: DegreeSequence,
    pub mather: DegreeSequence,
    pub reciprocal: DegreeSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_reversal: Option<DegreeSequence>,
}

pub fn run_convert(
    from: ConvertFrom,
    degrees: &DegreeSequence,
    delta: Option<usize>,
) -> Result<Document<ConvertResults>> {
    let (polar, mather) = match from {
        ConvertFrom::Mather => (polar_from_mather(degrees), degrees.clone()),
        ConvertFrom::Polar => (degrees.clone(), mather_from_polar(degrees)),
    };
    let reciprocal = reciprocal_from_polar(&polar);
    let dual_reversal = delta
        .map(|d| dual_degree_reversal(&polar, DualDefect(d)))
        .transpose()?;
    let input_echo = serde_json::json!({
        "from": match from { ConvertFrom::Mather => "mather", ConvertFrom::Polar => "polar" },
        "degrees": degrees.entries.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "delta": delta,
    });
    Ok(Document {
        mode: "convert".into(),
        input_echo,
        results: ConvertResults { polar, mather, reciprocal, dual_reversal },
        warnings: vec![],
    })
}

// ---------------------------------------------------------------- rendering

pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::MalformedInput(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedInput(format!("cannot read {path}: {e}")))
    }
}

pub fn to_json<R: Serialize>(doc: &Document<R>) -> String {
    serde_json::to_string_pretty(doc).expect("report serialization cannot fail")
}

fn seq_str(s: &DegreeSequence) -> String {
    s.entries.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn toric_table(doc: &Document<ToricResults>) -> String {
    let r = &doc.results.report;
    let m = r.polar.m;
    let mut out = String::new();
    out.push_str("codim        Vol       EVol      polar reciprocal\n");
    for j in 0..=m {
        out.push_str(&format!(
            "{:>5} {:>10} {:>10} {:>10} {:>10}\n",
            j, r.vol[j], r.evol[j], r.polar.entries[j], r.reciprocal.entries[j]
        ));
    }
    out.push_str(&format!("ED degree: {}\n", r.ed_degree));
    match &doc.results.higher_order {
        Some(HigherOrder::Polygon { order, degrees }) => {
            out.push_str(&format!(
                "order-{} polar degrees (i = 1, 2): {}, {}\n",
                order, degrees[0], degrees[1]
            ));
        }
        Some(HigherOrder::Polyhedron { degrees }) => {
            out.push_str(&format!(
                "order-2 polar degrees (i = 1, 2, 3): {}, {}, {}\n",
                degrees[0], degrees[1], degrees[2]
            ));
        }
        None => {}
    }
    for w in &doc.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

pub fn curve_table(doc: &Document<CurveResults>) -> String {
    let r = &doc.results;
    let mut out = String::new();
    out.push_str(&format!("r_{} = {}\n", r.order, r.rank));
    out.push_str(&format!("polar degrees (d, r_k): {}\n", seq_str(&r.polar)));
    out.push_str(&format!("reciprocal degree d + r_k: {}\n", r.reciprocal));
    out.push_str(&format!(
        "strict dual rank list: {}\n",
        r.strict_dual_ranks.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    ));
    for w in &doc.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

pub fn scroll_table(doc: &Document<ScrollResults>) -> String {
    match &doc.results {
        ScrollResults::Rational { order, dual_degree, balanced_selfdual } => format!(
            "deg X^({order}) = {dual_degree}\nbalanced selfdual: {balanced_selfdual}\n"
        ),
        ScrollResults::Elliptic { order, dual_degree } => {
            format!("deg X^({order}) = {dual_degree}\n")
        }
    }
}

pub fn convert_table(doc: &Document<ConvertResults>) -> String {
    let r = &doc.results;
    let mut out = String::new();
    out.push_str(&format!("polar:      {}\n", seq_str(&r.polar)));
    out.push_str(&format!("mather:     {}\n", seq_str(&r.mather)));
    out.push_str(&format!("reciprocal: {}\n", seq_str(&r.reciprocal)));
    if let Some(dr) = &r.dual_reversal {
        out.push_str(&format!("dual reversal: {}\n", seq_str(dr)));
    }
    out
}
