//! Per-graph symmetry reports.

use std::fmt;

use serde_json::{json, Value};

use crate::automorphism::{automorphism_group_with, AutConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::encode_graph6;
use crate::group::PermGroup;
use crate::metrics::{cost_number_in, determining_number_in, distinguishing_number_in, SearchBudget};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub aut: AutConfig,
    pub budget: SearchBudget,
}

/// Cost number outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rho {
    Value(usize),
    /// The graph is not 2-distinguishable.
    Absent,
    /// The search ran out of budget.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub aut_order: usize,
    /// `None` when the search ran out of budget.
    pub d: Option<usize>,
    pub d_coloring: Option<Vec<usize>>,
    pub det: Option<usize>,
    pub det_set: Option<Vec<usize>>,
    pub rho: Rho,
    pub rho_set: Option<Vec<usize>>,
    /// `D = 2 ∧ Det = 2`; `None` if either is unknown.
    pub det2_d2: Option<bool>,
    /// Whether `2 <= ρ <= 4`; set only when `det2_d2` holds and `ρ` is known.
    pub rho_in_2_4: Option<bool>,
    /// Trivial automorphism group: `ρ` is reported as 0 with an empty class.
    pub degenerate: bool,
}

/// A report together with the group it was computed from.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: SymmetryReport,
    pub group: PermGroup,
}

fn known<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn analyze(g: &Graph) -> Result<SymmetryReport> {
    Ok(analyze_with(g, &AnalyzeOptions::default())?.report)
}

/// Computes `|Aut|`, `D`, `Det` and `ρ`. Only automorphism-group failures
/// are errors; an exhausted search budget marks the field unknown.
pub fn analyze_with(g: &Graph, options: &AnalyzeOptions) -> Result<Analysis> {
    let group = automorphism_group_with(g, options.aut)?;
    let graph6 = encode_graph6(g).unwrap_or_else(|_| "-".to_string());

    let d = known(distinguishing_number_in(&group, options.budget))?;
    let det = known(determining_number_in(&group, options.budget))?;
    let (rho, rho_set) = match d.as_ref().map(|(k, _)| *k) {
        Some(k) if k > 2 => (Rho::Absent, None),
        _ => {
            let lower = det.as_ref().map_or(1, |(k, _)| *k);
            match known(cost_number_in(&group, lower, options.budget))? {
                Some(Some((r, set))) => (Rho::Value(r), Some(set)),
                Some(None) => (Rho::Absent, None),
                None => (Rho::Unknown, None),
            }
        }
    };

    let d_value = d.as_ref().map(|(k, _)| *k);
    let det_value = det.as_ref().map(|(k, _)| *k);
    let det2_d2 = match (d_value, det_value) {
        (Some(a), Some(b)) => Some(a == 2 && b == 2),
        (Some(a), None) if a != 2 => Some(false),
        (None, Some(b)) if b != 2 => Some(false),
        _ => None,
    };
    let rho_in_2_4 = match (det2_d2, rho) {
        (Some(true), Rho::Value(r)) => Some((2..=4).contains(&r)),
        (Some(true), Rho::Absent) => Some(false),
        _ => None,
    };

    let report = SymmetryReport {
        graph6,
        n: g.n(),
        edges: g.edge_count(),
        aut_order: group.order(),
        d: d_value,
        d_coloring: d.map(|(_, c)| c.colors().to_vec()),
        det: det_value,
        det_set: det.map(|(_, s)| s),
        rho,
        rho_set,
        det2_d2,
        rho_in_2_4,
        degenerate: group.is_trivial(),
    };
    Ok(Analysis { report, group })
}

impl SymmetryReport {
    pub fn flags(&self) -> Vec<&'static str> {
        let mut flags = Vec::new();
        if self.det2_d2 == Some(true) {
            flags.push("det2_d2");
        }
        match self.rho_in_2_4 {
            Some(true) => flags.push("rho_in_2_4"),
            Some(false) => flags.push("rho_outside_2_4"),
            None => {}
        }
        if self.degenerate {
            flags.push("degenerate");
        }
        if self.d.is_none() || self.det.is_none() || self.rho == Rho::Unknown {
            flags.push("unknown");
        }
        flags
    }

    pub fn to_json(&self) -> Value {
        let rho = match self.rho {
            Rho::Value(r) => json!(r),
            Rho::Absent => Value::Null,
            Rho::Unknown => json!("unknown"),
        };
        let opt = |v: Option<usize>| v.map_or(json!("unknown"), |v| json!(v));
        json!({
            "graph6": self.graph6,
            "n": self.n,
            "edges": self.edges,
            "aut_order": self.aut_order,
            "D": opt(self.d),
            "Det": opt(self.det),
            "rho": rho,
            "flags": self.flags(),
            "D_coloring": self.d_coloring,
            "Det_set": self.det_set,
            "rho_set": self.rho_set,
        })
    }
}

struct List<'a>(Option<&'a [usize]>);

impl fmt::Display for List<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("-"),
            Some(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

fn or_unknown(v: Option<usize>) -> String {
    v.map_or_else(|| "?".to_string(), |v| v.to_string())
}

/// Tab-separated `key=value` record, one graph per line.
impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rho = match self.rho {
            Rho::Value(r) => r.to_string(),
            Rho::Absent => "-".to_string(),
            Rho::Unknown => "?".to_string(),
        };
        let flags = self.flags();
        let flags = if flags.is_empty() { "-".to_string() } else { flags.join(",") };
        write!(
            f,
            "{}\tn={}\tm={}\taut={}\tD={}\tDet={}\trho={}\tflags={}\tD_coloring={}\tDet_set={}\trho_set={}",
            self.graph6,
            self.n,
            self.edges,
            self.aut_order,
            or_unknown(self.d),
            or_unknown(self.det),
            rho,
            flags,
            List(self.d_coloring.as_deref()),
            List(self.det_set.as_deref()),
            List(self.rho_set.as_deref()),
        )
    }
}
