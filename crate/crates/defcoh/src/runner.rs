//! Executes jobs and turns every check into a verdict.

use std::time::Instant;

use defcoh_core::complex::{check_splitting, ChainMap, CochainComplex};
use defcoh_core::group::Representation;
use defcoh_core::poly_cochains::poly_complex;
use defcoh_core::van_est::{van_est_chain_map, van_est_matrix};
use defcoh_core::{Matrix, TwoVectorSpace};
use rayon::prelude::*;

use crate::job::{Check, JobSpec, Mutation, Payload};
use crate::report::{scalar_text, ComplexReport, DegreeReport, InputSummary, JobReport, Report, Verdict};

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Worker threads; jobs are still reported in input order.
    pub threads: usize,
    /// Record wall-clock time per job. Off by default so reports are reproducible.
    pub timing: bool,
    /// Include cohomology representatives, not just Betti numbers.
    pub representatives: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            threads: 1,
            timing: false,
            representatives: true,
        }
    }
}

pub fn run_all(jobs: &[JobSpec], opts: RunOptions) -> Report {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .expect("thread pool");
    let reports = pool.install(|| {
        jobs.par_iter()
            .enumerate()
            .map(|(i, job)| run(i, job, opts))
            .collect()
    });
    Report::new(reports)
}

pub fn run(index: usize, job: &JobSpec, opts: RunOptions) -> JobReport {
    let start = Instant::now();
    let (input, cohomology, checks) = match &job.payload {
        Payload::TwoVect { space, poly_degree } => run_twovect(job, space, *poly_degree, opts),
        Payload::Group { group_label, rep } => run_group(job, group_label, rep, opts),
    };
    JobReport {
        index,
        name: job.name.clone(),
        kind: job.kind(),
        field: job.field.to_string(),
        kmax: job.kmax,
        input,
        mutation: job.mutation,
        cohomology,
        checks,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

pub fn claim(check: Check) -> &'static str {
    match check {
        Check::Betti => "the differentials compose to zero, so cohomology is defined in every reported degree",
        Check::ClosedForm => {
            "cohomology is (q*k0, q^2 + k0^2, k0*q) in degrees -1, 0, 1 and vanishes above, for k0 = dim ker and q = dim coker"
        }
        Check::OracleMatch => "the closed-form differential equals the one evaluated symbolically through the groupoid structure",
        Check::NormalizedQuasiIso => "the inclusion of normalized cochains is a quasi-isomorphism",
        Check::Duality => "the transposed map has the same deformation cohomology",
        Check::Linearization => {
            "polynomial cochains split by polynomial degree and linearization is a chain retraction onto linear cochains"
        }
        Check::VanEstIdentity => "the van Est map is a cochain map and equals the identity on normalized cochains",
        Check::BarMatch => "the trivial-core deformation differential is minus the bar differential with End coefficients",
        Check::GroupDuality => "the dual representation has the same trivial-core deformation cohomology",
    }
}

fn verdict(check: Check, outcome: Result<(), String>) -> Verdict {
    Verdict {
        name: check.name(),
        claim: claim(check),
        passed: outcome.is_ok(),
        witness: outcome.err(),
    }
}

/// Differentials with the job's mutation applied, and the complex they form if `d∘d = 0` still holds.
struct Mutated {
    differentials: Vec<Matrix>,
    complex: Result<CochainComplex, String>,
}

fn mutate(c: &CochainComplex, mutation: Option<Mutation>) -> Mutated {
    let mut differentials = c.differentials().to_vec();
    if let Some(m) = mutation {
        let d = &mut differentials[(m.degree - c.kmin()) as usize];
        let one = c.field().one();
        d.add_to(m.row, m.col, &one);
    }
    let labels = c.degrees().map(|k| c.labels(k).to_vec()).collect();
    let complex = CochainComplex::with_labels(c.field(), c.kmin(), c.dims().to_vec(), differentials.clone(), labels)
        .map_err(|e| e.to_string());
    Mutated { differentials, complex }
}

fn betti_upto(c: &CochainComplex, kmax: i32) -> Vec<usize> {
    (c.kmin()..=kmax).map(|k| c.betti(k).expect("degree in window")).collect()
}

fn cohomology_report(name: &'static str, c: &Result<CochainComplex, String>, kmax: i32, reps: bool) -> ComplexReport {
    let c = match c {
        Ok(c) => c,
        Err(e) => {
            return ComplexReport {
                complex: name,
                error: Some(e.clone()),
                degrees: Vec::new(),
            }
        }
    };
    let degrees = (c.kmin()..=kmax)
        .map(|k| {
            let h = c.cohomology_at(k).expect("degree in window");
            let representatives = reps.then(|| {
                let labels = c.labels(k);
                (0..h.representatives.cols())
                    .map(|j| {
                        h.representatives
                            .col(j)
                            .iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(i, x)| (labels[i].clone(), scalar_text(x)))
                            .collect()
                    })
                    .collect()
            });
            DegreeReport {
                degree: k,
                dim: c.dim(k),
                betti: h.betti,
                representatives,
            }
        })
        .collect();
    ComplexReport {
        complex: name,
        error: None,
        degrees,
    }
}

fn first_difference(a: &Matrix, b: &Matrix) -> Option<String> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Some(format!("shapes {}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != b.get(i, j) {
                return Some(format!(
                    "entry ({i}, {j}): {} vs {}",
                    scalar_text(a.get(i, j)),
                    scalar_text(b.get(i, j))
                ));
            }
        }
    }
    None
}

fn compare_betti(kmin: i32, got: &[usize], expected: &[usize], what: &str) -> Result<(), String> {
    match got.iter().zip(expected).position(|(a, b)| a != b) {
        None => Ok(()),
        Some(i) => Err(format!(
            "degree {}: {} vs {} ({what}); Betti {:?} vs {:?}",
            kmin + i as i32,
            got[i],
            expected[i],
            got,
            expected
        )),
    }
}

fn run_twovect(
    job: &JobSpec,
    t: &TwoVectorSpace,
    poly_degree: u32,
    opts: RunOptions,
) -> (InputSummary, Vec<ComplexReport>, Vec<Verdict>) {
    let kmax = job.kmax;
    let top = (kmax + 1).max(2);
    let input = InputSummary::TwoVect {
        c_dim: t.c_dim(),
        v_dim: t.v_dim(),
        rank: t.rank(),
        kernel_dim: t.kernel_dim(),
        cokernel_dim: t.cokernel_dim(),
        poly_degree,
    };
    let full = t.build_full_complex(top).expect("closed-form differential squares to zero");
    let m = mutate(&full, job.mutation);
    let cohomology = vec![cohomology_report("full", &m.complex, kmax, opts.representatives)];

    let checks = job
        .checks
        .iter()
        .map(|&check| {
            let outcome = match check {
                Check::Betti => m.complex.as_ref().map(|_| ()).map_err(Clone::clone),
                Check::ClosedForm => check_closed_form(t, &m, kmax),
                Check::OracleMatch => check_oracle(t, &m, kmax),
                Check::NormalizedQuasiIso => check_normalized(t, &m, top, kmax),
                Check::Duality => check_duality(t, &m, top, kmax),
                Check::Linearization => check_linearization(t, &m, kmax, poly_degree),
                Check::VanEstIdentity => check_van_est(t),
                Check::BarMatch | Check::GroupDuality => unreachable!("rejected by the parser"),
            };
            verdict(check, outcome)
        })
        .collect();
    (input, cohomology, checks)
}

fn check_closed_form(t: &TwoVectorSpace, m: &Mutated, kmax: i32) -> Result<(), String> {
    let c = m.complex.as_ref().map_err(Clone::clone)?;
    let (a, b, d) = t.closed_form_betti();
    let expected: Vec<usize> = (-1..=kmax)
        .map(|k| match k {
            -1 => a,
            0 => b,
            1 => d,
            _ => 0,
        })
        .collect();
    compare_betti(-1, &betti_upto(c, kmax), &expected, "computed vs closed form")
}

fn check_oracle(t: &TwoVectorSpace, m: &Mutated, kmax: i32) -> Result<(), String> {
    for k in -1..=kmax {
        let oracle = t.oracle_differential(k).map_err(|e| e.to_string())?;
        if let Some(diff) = first_difference(&m.differentials[(k + 1) as usize], &oracle) {
            return Err(format!("d_{k}: {diff} (closed form vs oracle)"));
        }
    }
    Ok(())
}

fn check_normalized(t: &TwoVectorSpace, m: &Mutated, top: i32, kmax: i32) -> Result<(), String> {
    let full = m.complex.as_ref().map_err(Clone::clone)?;
    let inc = t.normalized_inclusion(top).map_err(|e| e.to_string())?;
    let inc = ChainMap::new(inc.source().clone(), full.clone(), inc.components().to_vec()).map_err(|e| e.to_string())?;
    match inc.is_quasi_iso(-1..=kmax) {
        Ok(true) => Ok(()),
        Ok(false) => {
            let src = betti_upto(inc.source(), kmax);
            let dst = betti_upto(full, kmax);
            Err(format!("induced map is not an isomorphism; Betti {src:?} (normalized) vs {dst:?} (full)"))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn check_duality(t: &TwoVectorSpace, m: &Mutated, top: i32, kmax: i32) -> Result<(), String> {
    let c = m.complex.as_ref().map_err(Clone::clone)?;
    let dual = t.dual().build_full_complex(top).map_err(|e| e.to_string())?;
    compare_betti(-1, &betti_upto(c, kmax), &betti_upto(&dual, kmax), "map vs transpose")
}

fn check_linearization(t: &TwoVectorSpace, m: &Mutated, kmax: i32, d: u32) -> Result<(), String> {
    let g = poly_complex(t, kmax.max(1), d).map_err(|e| e.to_string())?;
    g.total().validate().map_err(|e| e.to_string())?;
    let linear = g.block(1);
    for (i, dk) in linear.differentials().iter().enumerate() {
        if let Some(diff) = first_difference(dk, &m.differentials[i]) {
            return Err(format!("d_{}: {diff} (linear block vs full complex)", i as i32 - 1));
        }
    }
    let incl = g.inclusion(1).map_err(|e| e.to_string())?;
    let lin = g.linearization_map().map_err(|e| e.to_string())?;
    let composite = lin.compose_after(&incl).map_err(|e| e.to_string())?;
    if let Some(k) = composite.source().degrees().find(|&k| !composite.component(k).is_some_and(Matrix::is_identity)) {
        return Err(format!("lin after incl is not the identity in degree {k}"));
    }
    if !check_splitting(&incl, &lin) {
        return Err("linearization does not split the inclusion".into());
    }
    Ok(())
}

fn check_van_est(t: &TwoVectorSpace) -> Result<(), String> {
    for k in -1..=1 {
        let m = van_est_matrix(t, k).map_err(|e| e.to_string())?;
        if let Some(diff) = first_difference(&m, &Matrix::identity(t.field(), m.cols())) {
            let diagonal = (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()));
            if diagonal {
                let entries: Vec<String> = (0..m.rows()).map(|i| scalar_text(m.get(i, i))).collect();
                return Err(format!("degree {k}: signed diagonal [{}]", entries.join(", ")));
            }
            return Err(format!("degree {k}: {diff} (van Est vs identity)"));
        }
    }
    van_est_chain_map(t).map(|_| ()).map_err(|e| e.to_string())
}

fn run_group(
    job: &JobSpec,
    group_label: &str,
    rep: &Representation,
    opts: RunOptions,
) -> (InputSummary, Vec<ComplexReport>, Vec<Verdict>) {
    let kmax = job.kmax;
    let top = kmax as usize + 1;
    let input = InputSummary::Group {
        group: group_label.to_string(),
        order: rep.group().order(),
        rep_dim: rep.dim(),
    };
    let bar = rep.bar_complex(top);
    let tc = mutate(&rep.trivialcore_def_complex(top), job.mutation);
    let cohomology = vec![
        cohomology_report("bar", &Ok(bar), kmax, opts.representatives),
        cohomology_report("trivial_core", &tc.complex, kmax, opts.representatives),
    ];

    let checks = job
        .checks
        .iter()
        .map(|&check| {
            let outcome = match check {
                Check::Betti => tc.complex.as_ref().map(|_| ()).map_err(Clone::clone),
                Check::BarMatch => check_bar_match(rep, &tc, kmax),
                Check::GroupDuality => tc.complex.as_ref().map_err(Clone::clone).and_then(|c| {
                    let dual = rep.dual_rep().trivialcore_def_complex(top);
                    compare_betti(0, &betti_upto(c, kmax), &betti_upto(&dual, kmax), "rep vs dual")
                }),
                _ => unreachable!("rejected by the parser"),
            };
            verdict(check, outcome)
        })
        .collect();
    (input, cohomology, checks)
}

fn check_bar_match(rep: &Representation, tc: &Mutated, kmax: i32) -> Result<(), String> {
    let end = rep.end_rep();
    for (k, d) in tc.differentials.iter().enumerate() {
        if let Some(diff) = first_difference(d, &end.bar_differential(k).neg()) {
            return Err(format!("d_{k}: {diff} (trivial core vs minus bar of End)"));
        }
    }
    let c = tc.complex.as_ref().map_err(Clone::clone)?;
    let bar = end.bar_complex(kmax as usize + 1);
    compare_betti(0, &betti_upto(c, kmax), &betti_upto(&bar, kmax), "trivial core vs bar of End")
}
