//! Per-command results and the text/json emitters.
//!
//! Listings are ordered by canonical symbol, so reports are byte-identical
//! across runs; timings are included only when requested.

use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Report {
    pub schema_version: String,
    pub results: Vec<CommandResult>,
}

#[derive(Serialize, Default)]
pub struct CommandResult {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<ClassTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct StructureOut {
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub display: String,
}

#[derive(Serialize)]
pub struct ClassTerm {
    pub coeff: i64,
    pub symbol: String,
}

#[derive(Serialize)]
pub struct BasisOut {
    pub elements: Vec<String>,
    pub invariant_factors: Vec<u64>,
}

#[derive(Serialize)]
pub struct Diagnostics {
    pub generators: usize,
    pub relations: usize,
}

impl Report {
    pub fn new() -> Self {
        Report {
            schema_version: SCHEMA_VERSION.to_string(),
            results: Vec::new(),
        }
    }

    pub fn any_error(&self) -> bool {
        self.results.iter().any(|r| r.status == "error")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("== {}\n", r.command));
            if r.status == "error" {
                out.push_str(&format!(
                    "   error: {}\n",
                    r.message.as_deref().unwrap_or("unknown")
                ));
                continue;
            }
            if let Some(s) = &r.structure {
                out.push_str(&format!("   structure: {}\n", s.display));
            }
            if let Some(v) = r.verdict {
                out.push_str(&format!("   verdict: {}\n", v));
            }
            if let Some(terms) = &r.class {
                if terms.is_empty() {
                    out.push_str("   class: 0\n");
                } else {
                    out.push_str("   class:\n");
                    for t in terms {
                        out.push_str(&format!("     {:+} * {}\n", t.coeff, t.symbol));
                    }
                }
            }
            if let Some(g) = &r.group {
                out.push_str(&format!("   group: {}\n", g));
            }
            if let Some(b) = &r.basis {
                out.push_str(&format!(
                    "   invariant factors: [{}]\n",
                    b.invariant_factors
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
                for (i, e) in b.elements.iter().enumerate() {
                    out.push_str(&format!("   basis[{}] = {}\n", i, e));
                }
            }
            if let Some(d) = &r.diagnostics {
                out.push_str(&format!(
                    "   generators: {}, relations: {}\n",
                    d.generators, d.relations
                ));
            }
            if let Some(t) = r.timing_ms {
                out.push_str(&format!("   timing_ms: {}\n", t));
            }
        }
        out
    }
}
