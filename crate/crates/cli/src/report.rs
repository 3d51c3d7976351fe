//! The structured result emitted for every task, with a byte-stable JSON
//! form and a human rendering at 12 significant digits.

use num_complex::Complex64;
use serde::Serialize;

use wkf_core::certify::CertificateReport;
use wkf_core::frame::{BoundsReport, KBoundsReport};
use wkf_core::weave::WeavingReport;

/// One task's outcome. Only the fields meaningful for the task are present;
/// `verdict` always is, and decides the process exit code. The JSON form
/// contains no timing, so identical inputs and seeds produce identical
/// bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result_id: Option<String>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_tight: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partitions_checked: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subspace_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_witness: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Vec<String>>,
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl Report {
    fn empty(task: &str, verdict: bool) -> Self {
        Report {
            task: task.to_string(),
            result_id: None,
            verdict,
            lower: None,
            upper: None,
            is_tight: None,
            tight_constant: None,
            claimed_lower: None,
            claimed_upper: None,
            achieved_lower: None,
            achieved_upper: None,
            worst_partition: None,
            partitions_checked: None,
            exhaustive: None,
            subspace_dim: None,
            witness: None,
            upper_witness: None,
            details: None,
        }
    }

    pub fn bounds(bounds: &BoundsReport, verdict: bool) -> Self {
        let mut r = Report::empty("bounds", verdict);
        r.lower = Some(bounds.lower);
        r.upper = Some(bounds.upper);
        r.subspace_dim = Some(bounds.subspace_dim);
        r.witness = Some(pairs(&bounds.lower_witness));
        r.upper_witness = Some(pairs(&bounds.upper_witness));
        r
    }

    pub fn kbounds(bounds: &KBoundsReport, verdict: bool) -> Self {
        let mut r = Report::empty("kbounds", verdict);
        r.lower = Some(bounds.lower);
        r.upper = Some(bounds.upper);
        r.is_tight = Some(bounds.is_tight);
        r.tight_constant = bounds.tight_constant;
        r.witness = Some(pairs(&bounds.lower_witness));
        r
    }

    pub fn weaving(task: &str, sweep: &WeavingReport, verdict: bool) -> Self {
        let mut r = Report::empty(task, verdict);
        r.lower = Some(sweep.universal_lower);
        r.upper = Some(sweep.universal_upper);
        r.worst_partition = Some(sweep.worst_partition.render());
        r.partitions_checked = Some(sweep.partitions_checked);
        r.exhaustive = Some(sweep.exhaustive);
        r.witness = Some(pairs(&sweep.witness));
        r
    }

    /// Certificate outcome; `tol` replaces the built-in relative slack when
    /// given.
    pub fn certificate(cert: &CertificateReport, tol: Option<f64>) -> Self {
        let pass = match tol {
            Some(tol) => {
                cert.achieved_lower >= cert.claimed_lower * (1.0 - tol)
                    && cert.achieved_upper <= cert.claimed_upper * (1.0 + tol)
            }
            None => cert.pass,
        };
        let mut r = Report::empty("cert", pass);
        r.result_id = Some(cert.result_id.clone());
        r.claimed_lower = Some(cert.claimed_lower);
        r.claimed_upper = Some(cert.claimed_upper);
        r.achieved_lower = Some(cert.achieved_lower);
        r.achieved_upper = Some(cert.achieved_upper);
        r.details = Some(cert.details.clone());
        r
    }

    /// Process exit code: 0 for a passing verdict, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            0
        } else {
            1
        }
    }

    /// Machine form: stable field order, no timing, trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    /// Human form at 12 significant digits, with the elapsed time appended
    /// by the caller.
    pub fn to_human(&self) -> String {
        let mut lines = Vec::new();
        lines.push(format!("task: {}", self.task));
        if let Some(id) = &self.result_id {
            lines.push(format!("result id: {id}"));
        }
        lines.push(format!("verdict: {}", if self.verdict { "pass" } else { "fail" }));
        let num = |x: f64| format!("{x:.11e}");
        if let Some(x) = self.lower {
            lines.push(format!("lower: {}", num(x)));
        }
        if let Some(x) = self.upper {
            lines.push(format!("upper: {}", num(x)));
        }
        if let Some(t) = self.is_tight {
            lines.push(format!("tight: {t}"));
        }
        if let Some(x) = self.tight_constant {
            lines.push(format!("tight constant: {}", num(x)));
        }
        if let Some(x) = self.claimed_lower {
            lines.push(format!("claimed lower: {}", num(x)));
        }
        if let Some(x) = self.claimed_upper {
            lines.push(format!("claimed upper: {}", num(x)));
        }
        if let Some(x) = self.achieved_lower {
            lines.push(format!("achieved lower: {}", num(x)));
        }
        if let Some(x) = self.achieved_upper {
            lines.push(format!("achieved upper: {}", num(x)));
        }
        if let Some(p) = &self.worst_partition {
            lines.push(format!("worst partition: {p}"));
        }
        if let (Some(n), Some(e)) = (self.partitions_checked, self.exhaustive) {
            let kind = if e { "exhaustive" } else { "sampled" };
            lines.push(format!("partitions checked: {n} ({kind})"));
        }
        if let Some(d) = self.subspace_dim {
            lines.push(format!("subspace dimension: {d}"));
        }
        if let Some(w) = &self.witness {
            lines.push(format!("witness: {}", render_vector(w)));
        }
        if let Some(w) = &self.upper_witness {
            lines.push(format!("upper witness: {}", render_vector(w)));
        }
        if let Some(details) = &self.details {
            for line in details {
                lines.push(format!("  {line}"));
            }
        }
        lines.join("\n")
    }
}

fn render_vector(v: &[[f64; 2]]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|[re, im]| {
            if *im >= 0.0 {
                format!("{re:.11e} + {im:.11e}i")
            } else {
                format!("{re:.11e} - {:.11e}i", -im)
            }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}
