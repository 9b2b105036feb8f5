//! Report tree and its two renderings.

use std::fmt::Write as _;

use defcoh_core::Scalar;
use serde::Serialize;

use crate::job::Mutation;

pub const TOOL: &str = "defcoh";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const BASIS_NOTE: &str = "Cohomology is reported for every degree up to kmax; each complex is built one degree \
further so that the top degree is exact. Two-vector-space cochains: degree -1 is a[r,j] for a c x v matrix; degree \
k >= 0 lists g1[r,j] for a c x ((k+1)c+v) matrix row-major, then g2[r,j] for a v x (kc+v) matrix. Group cochains \
are indexed by element tuples in lexicographic order, then by component (row-major for End-valued cochains). \
Representatives are reduced-echelon choices, listed as sparse (label, coefficient) pairs.";

pub const CONVENTIONS: &str = "Groupoid arrows (c, v) go from v to dc + v. Algebroid sections are affine maps \
alpha(v) = L v + a into C, extended right-invariantly. The van Est map is the identity on degree -1; in degree 0 the \
pair (A, B) is the derivation beta -> beta B - A beta with symbol v -> B v; in degree 1 the matrix K is the bracket \
deformation (alpha0, alpha1) -> L1 K alpha0 - L0 K alpha1.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub basis_note: &'static str,
    pub conventions: &'static str,
    pub passed: bool,
    pub jobs: Vec<JobReport>,
}

impl Report {
    pub fn new(jobs: Vec<JobReport>) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            basis_note: BASIS_NOTE,
            conventions: CONVENTIONS,
            passed: jobs.iter().all(|j| j.checks.iter().all(|c| c.passed)),
            jobs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JobReport {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: &'static str,
    pub field: String,
    pub kmax: i32,
    pub input: InputSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
    pub cohomology: Vec<ComplexReport>,
    pub checks: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum InputSummary {
    TwoVect {
        c_dim: usize,
        v_dim: usize,
        rank: usize,
        kernel_dim: usize,
        cokernel_dim: usize,
        poly_degree: u32,
    },
    Group {
        group: String,
        order: usize,
        rep_dim: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub complex: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub degrees: Vec<DegreeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: i32,
    pub dim: usize,
    pub betti: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<(String, String)>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Field elements as they appear in reports: `-3/2` over ℚ, the residue in `0..p` over 𝔽_p.
pub fn scalar_text(x: &Scalar) -> String {
    match x {
        Scalar::Rational(q) => q.to_string(),
        Scalar::Modular(m) => m.value().to_string(),
    }
}

pub fn render_tree(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", report.tool, report.version);
    for job in &report.jobs {
        render_job(&mut out, job);
    }
    let failed: usize = report.jobs.iter().flat_map(|j| &j.checks).filter(|c| !c.passed).count();
    let total: usize = report.jobs.iter().map(|j| j.checks.len()).sum();
    let _ = writeln!(
        out,
        "\n{}: {} of {} checks passed",
        if report.passed { "PASS" } else { "FAIL" },
        total - failed,
        total
    );
    out
}

fn render_job(out: &mut String, job: &JobReport) {
    let title = job.name.as_deref().map(|n| format!(" {n}")).unwrap_or_default();
    let _ = write!(out, "\njob {}{}  {} over {}  kmax {}", job.index, title, job.kind, job.field, job.kmax);
    match &job.input {
        InputSummary::TwoVect {
            c_dim,
            v_dim,
            rank,
            kernel_dim,
            cokernel_dim,
            poly_degree,
        } => {
            let _ = writeln!(
                out,
                "  C={c_dim} V={v_dim} rank={rank} ker={kernel_dim} coker={cokernel_dim} d={poly_degree}"
            );
        }
        InputSummary::Group { group, order, rep_dim } => {
            let _ = writeln!(out, "  {group} (order {order}) rep dim {rep_dim}");
        }
    }
    if let Some(m) = job.mutation {
        let _ = writeln!(out, "  mutation: +1 at ({}, {}) of d_{}", m.row, m.col, m.degree);
    }
    if let Some(first) = job.cohomology.iter().find(|c| c.error.is_none()) {
        let _ = write!(out, "  {:<17}", "degree");
        for d in &first.degrees {
            let _ = write!(out, "{:>6}", d.degree);
        }
        out.push('\n');
    }
    for c in &job.cohomology {
        let _ = write!(out, "  {:<17}", format!("H({})", c.complex));
        match &c.error {
            Some(e) => {
                let _ = write!(out, "not a complex: {e}");
            }
            None => {
                for d in &c.degrees {
                    let _ = write!(out, "{:>6}", d.betti);
                }
            }
        }
        out.push('\n');
    }
    for v in &job.checks {
        let _ = writeln!(out, "  {:<22}{}  {}", v.name, if v.passed { "pass" } else { "FAIL" }, v.claim);
        if let Some(w) = &v.witness {
            let _ = writeln!(out, "  {:<22}      {w}", "");
        }
    }
}
