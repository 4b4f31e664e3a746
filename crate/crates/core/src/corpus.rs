//! Batch runs over named pairs of polytopes.

use serde_json::{json, Value};

use crate::cone::dual_denominator_u64;
use crate::error::{Error, Result};
use crate::freesum::{
    affine_braun_check, check_decomposition, classify_sum, converse_search, gorenstein_affine_check,
    verify_cone_decomposition, SumKind,
};
use crate::json::{
    affine_report_json, decomposition_check_json, decomposition_report_json, gorenstein_report_json,
    polytope_from_json, witness_json,
};
use crate::polytope::RationalPolytope;

pub const STANDARD_CORPUS: &str = include_str!("../corpus/standard.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    Braun,
    Decompose,
    Converse,
    Affine,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "braun" => Ok(Mode::Braun),
            "decompose" => Ok(Mode::Decompose),
            "converse" => Ok(Mode::Converse),
            "affine" => Ok(Mode::Affine),
            other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPair {
    pub name: String,
    pub a: RationalPolytope,
    pub b: RationalPolytope,
    /// Empty means every applicable check.
    pub modes: Vec<Mode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub height_bound: u64,
    pub pairs: Vec<CorpusPair>,
}

impl Corpus {
    /// `{"height": T, "pairs": [{"name", "a", "b", "modes"?}]}`; `height`
    /// falls back to `default_height`.
    pub fn from_json(v: &Value, default_height: u64) -> Result<Corpus> {
        let height_bound = v.get("height").and_then(Value::as_u64).unwrap_or(default_height);
        let pairs = match v.get("pairs") {
            None => Vec::new(),
            Some(Value::Array(items)) => items.iter().map(parse_pair).collect::<Result<_>>()?,
            Some(_) => return Err(Error::InvalidInput("\"pairs\" must be an array".into())),
        };
        Ok(Corpus { height_bound, pairs })
    }

    pub fn from_str(s: &str, default_height: u64) -> Result<Corpus> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
        Corpus::from_json(&v, default_height)
    }

    pub fn standard() -> Corpus {
        Corpus::from_str(STANDARD_CORPUS, 10).expect("bundled corpus parses")
    }
}

fn parse_pair(v: &Value) -> Result<CorpusPair> {
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput("pair without a name".into()))?;
    let field = |key: &str| -> Result<RationalPolytope> {
        polytope_from_json(v.get(key).ok_or_else(|| Error::InvalidInput(format!("pair {name:?} lacks {key:?}")))?)
    };
    let modes = match v.get("modes").and_then(Value::as_array) {
        Some(items) => items
            .iter()
            .map(|m| m.as_str().map_or_else(|| Err(Error::InvalidInput("mode must be a string".into())), Mode::parse))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    Ok(CorpusPair {
        name: name.to_string(),
        a: field("a")?,
        b: field("b")?,
        modes,
    })
}

/// Outcome for one pair. `problems` lists broken consistency assertions.
#[derive(Debug, Clone, PartialEq)]
pub struct PairOutcome {
    pub name: String,
    pub kind: Option<SumKind>,
    pub rejection: Option<&'static str>,
    /// Both duals non-lattice, so the product formula must fail, but no
    /// failure showed up below the height bound.
    pub unwitnessed_failure: bool,
    pub braun_holds: Option<bool>,
    pub dual_denominator: Option<u64>,
    pub problems: Vec<String>,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport {
    pub height_bound: u64,
    pub outcomes: Vec<PairOutcome>,
}

impl CorpusReport {
    pub fn consistent(&self) -> bool {
        self.outcomes.iter().all(|o| o.problems.is_empty())
    }

    pub fn to_json(&self) -> Value {
        let count = |f: &dyn Fn(&PairOutcome) -> bool| self.outcomes.iter().filter(|o| f(o)).count();
        let pairs: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                json!({
                    "name": o.name,
                    "kind": o.kind.map(SumKind::as_str),
                    "rejected": o.rejection,
                    "braun_holds": o.braun_holds,
                    "dual_denominator": o.dual_denominator,
                    "unwitnessed_failure": o.unwitnessed_failure,
                    "problems": o.problems,
                    "details": o.details,
                })
            })
            .collect();
        json!({
            "T": self.height_bound,
            "pairs": pairs,
            "summary": {
                "pairs": self.outcomes.len(),
                "free_sums": count(&|o| o.kind == Some(SumKind::FreeSum)),
                "affine_free_sums": count(&|o| o.kind == Some(SumKind::AffineFreeSum)),
                "rejected": count(&|o| o.rejection.is_some()),
                "braun_holds": count(&|o| o.braun_holds == Some(true)),
                "braun_fails": count(&|o| o.braun_holds == Some(false)),
                "unwitnessed_failures": count(&|o| o.unwitnessed_failure),
                "consistent": self.consistent(),
            },
        })
    }
}

pub fn run_corpus(corpus: &Corpus) -> CorpusReport {
    let mut outcomes: Vec<PairOutcome> = corpus.pairs.iter().map(|p| run_pair(p, corpus.height_bound)).collect();
    outcomes.sort_by(|a, b| a.name.cmp(&b.name));
    CorpusReport {
        height_bound: corpus.height_bound,
        outcomes,
    }
}

fn wants(pair: &CorpusPair, m: Mode) -> bool {
    pair.modes.is_empty() || pair.modes.contains(&m)
}

pub fn run_pair(pair: &CorpusPair, t: u64) -> PairOutcome {
    let mut out = PairOutcome {
        name: pair.name.clone(),
        kind: None,
        rejection: None,
        unwitnessed_failure: false,
        braun_holds: None,
        dual_denominator: None,
        problems: Vec::new(),
        details: json!({}),
    };
    let w = match classify_sum(&pair.a, &pair.b) {
        Ok(w) => w,
        Err(e) => {
            out.rejection = Some(e.code());
            return out;
        }
    };
    out.kind = Some(w.kind);
    let mut details = serde_json::Map::new();
    details.insert("witness".into(), witness_json(&w));
    if let Err(e) = check_pair(pair, &w, t, &mut out, &mut details) {
        out.problems.push(format!("{}: {e}", e.code()));
    }
    out.details = Value::Object(details);
    out
}

fn check_pair(
    pair: &CorpusPair,
    w: &crate::freesum::FreeSumWitness,
    t: u64,
    out: &mut PairOutcome,
    details: &mut serde_json::Map<String, Value>,
) -> Result<()> {
    let report = verify_cone_decomposition(w, t)?;
    if !report.holds() {
        out.problems.push("cone decomposition has violations".into());
    }
    details.insert("cone_decomposition".into(), decomposition_report_json(&report));
    match w.kind {
        SumKind::FreeSum => {
            out.dual_denominator = Some(dual_denominator_u64(&pair.a)?);
            if wants(pair, Mode::Decompose) {
                let c = check_decomposition(&pair.a, &pair.b, t)?;
                if !c.holds {
                    out.problems.push("envelope decomposition differs from direct enumeration".into());
                }
                details.insert("decompose".into(), decomposition_check_json(&c, t));
            }
            if wants(pair, Mode::Braun) || wants(pair, Mode::Converse) {
                let r = converse_search(&pair.a, &pair.b, t)?;
                out.braun_holds = Some(r.braun_holds_up_to_t);
                out.unwitnessed_failure = !r.dual_p_lattice && !r.dual_q_lattice && r.braun_holds_up_to_t;
                if !r.consistent {
                    out.problems.push("product formula contradicts the dual lattice test".into());
                }
                details.insert("converse".into(), crate::json::converse_json(&r));
            }
        }
        SumKind::AffineFreeSum => {
            if wants(pair, Mode::Affine) || wants(pair, Mode::Braun) {
                let a = affine_braun_check(&pair.a, &pair.b, t)?;
                out.braun_holds = Some(a.braun.holds_up_to_t);
                if a.envelope.holds && !a.braun.holds_up_to_t {
                    out.problems.push("envelope condition holds but the product formula fails".into());
                }
                if !a.braun.residual.has_nonnegative_coefficients() {
                    out.problems.push("negative residual".into());
                }
                details.insert("affine".into(), affine_report_json(&a));
                match gorenstein_affine_check(&pair.a, &pair.b, t) {
                    Ok(g) => {
                        if !(g.braun.holds_up_to_t && g.interior_identity_holds) {
                            out.problems.push("Gorenstein summand check fails".into());
                        }
                        details.insert("gorenstein".into(), gorenstein_report_json(&g));
                    }
                    Err(e) => {
                        details.insert("gorenstein".into(), json!({"skipped": e.code()}));
                    }
                }
            }
        }
    }
    Ok(())
}
