//! Serializable verification records shared by the A3 and Racah pipelines.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::symalg::{CommPoly, VarTable, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

impl Status {
    pub fn from_zero(zero: bool) -> Self {
        if zero {
            Status::Verified
        } else {
            Status::Failed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperComparison {
    pub matched: bool,
    pub differences: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One checked identity. `residual` is `lhs - expected - correction` in
/// canonical text; the record is verified iff it is `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub id: String,
    pub family: String,
    pub indices: Vec<usize>,
    pub lhs: String,
    pub expected: String,
    pub residual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_unreduced: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_correction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_comparison: Option<PaperComparison>,
    pub status: Status,
}

impl RelationReport {
    pub fn new(
        id: impl Into<String>,
        family: impl Into<String>,
        indices: Vec<usize>,
        lhs: String,
        expected: String,
        residual: String,
    ) -> Self {
        let status = Status::from_zero(residual == "0");
        RelationReport {
            id: id.into(),
            family: family.into(),
            indices,
            lhs,
            expected,
            residual,
            residual_unreduced: None,
            correction: None,
            paper_correction: None,
            paper_comparison: None,
            status,
        }
    }

    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn paper_matched(&self) -> bool {
        self.paper_comparison.as_ref().is_none_or(|c| c.matched)
    }

    /// Human-readable multi-line rendering.
    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Verified => "verified",
            Status::Failed => "FAILED",
        };
        let mut out = format!("[{}] {}\n  lhs      = {}\n  expected = {}\n", status, self.id, self.lhs, self.expected);
        if let Some(c) = &self.correction {
            out.push_str(&format!("  correction = {c}\n"));
        }
        out.push_str(&format!("  residual = {}\n", self.residual));
        if let Some(r) = &self.residual_unreduced {
            out.push_str(&format!("  residual (no ideal) = {r}\n"));
        }
        if let Some(p) = &self.paper_correction {
            out.push_str(&format!("  paper correction = {p}\n"));
        }
        if let Some(cmp) = &self.paper_comparison {
            if cmp.matched {
                out.push_str("  paper: matched\n");
            } else {
                out.push_str("  paper: differs\n");
                for d in &cmp.differences {
                    out.push_str(&format!("    {d}\n"));
                }
            }
            for n in &cmp.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        out
    }
}

/// A polynomial with its variable table, for JSON transport.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub variables: Vec<Variable>,
    pub text: String,
}

impl PolyRecord {
    pub fn from_poly(p: &CommPoly) -> Self {
        PolyRecord { variables: p.table().vars().to_vec(), text: p.to_text() }
    }

    pub fn to_poly(&self) -> Result<CommPoly> {
        CommPoly::parse(&self.text, &VarTable::new(self.variables.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r =
            RelationReport::new("eq1(1,2,3)", "eq1", vec![1, 2, 3], "2*f123".into(), "2*f123".into(), "0".into());
        r.paper_comparison =
            Some(PaperComparison { matched: false, differences: vec!["c1^2: 1/2 vs 1/3".into()], notes: vec![] });
        assert!(r.verified());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"status\":\"verified\""));
        assert!(!json.contains("residual_unreduced"));
        let back: RelationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!back.paper_matched());
    }

    #[test]
    fn poly_record_round_trip() {
        let t = VarTable::phase_space(2, &["mu"]);
        let p = CommPoly::parse("-1/4*s1^2*p2^2 + a1^2*s2^2*s1^-2 - 3*mu", &t).unwrap();
        let json = serde_json::to_string(&PolyRecord::from_poly(&p)).unwrap();
        let back: PolyRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_poly().unwrap(), p);
    }
}
