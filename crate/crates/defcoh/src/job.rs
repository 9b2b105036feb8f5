//! Job documents: parsing and validation.
//!
//! A document is either a single job object or `{"jobs": [...]}`. Matrix entries
//! are strings such as `"-3/2"` so that no value ever passes through a float.

use defcoh_core::group::{FiniteGroup, Representation};
use defcoh_core::{Field, Matrix, TwoVectorSpace};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::JobError;

pub const MAX_KMAX: i32 = 6;
pub const MAX_POLY_DEGREE: u32 = 4;
pub const MAX_GROUP_ORDER: usize = 12;
/// Largest cochain space any job may ask for, in any degree.
pub const MAX_COCHAIN_DIM: usize = 5000;

pub const DEFAULT_KMAX: i32 = 2;
pub const DEFAULT_POLY_DEGREE: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Betti,
    ClosedForm,
    OracleMatch,
    NormalizedQuasiIso,
    Duality,
    Linearization,
    VanEstIdentity,
    BarMatch,
    GroupDuality,
}

impl Check {
    pub const TWOVECT: [Check; 7] = [
        Check::Betti,
        Check::ClosedForm,
        Check::OracleMatch,
        Check::NormalizedQuasiIso,
        Check::Duality,
        Check::Linearization,
        Check::VanEstIdentity,
    ];
    pub const GROUP: [Check; 3] = [Check::Betti, Check::BarMatch, Check::GroupDuality];

    pub fn name(self) -> &'static str {
        match self {
            Check::Betti => "betti",
            Check::ClosedForm => "closed_form",
            Check::OracleMatch => "oracle_match",
            Check::NormalizedQuasiIso => "normalized_quasi_iso",
            Check::Duality => "duality",
            Check::Linearization => "linearization",
            Check::VanEstIdentity => "van_est_identity",
            Check::BarMatch => "bar_match",
            Check::GroupDuality => "group_duality",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::TWOVECT
            .into_iter()
            .chain(Check::GROUP)
            .find(|c| c.name() == name)
    }
}

/// Adds 1 to entry `(row, col)` of the degree-`degree` differential before any check runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub degree: i32,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub enum Payload {
    TwoVect { space: TwoVectorSpace, poly_degree: u32 },
    Group { group_label: String, rep: Representation },
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub name: Option<String>,
    pub field: Field,
    pub kmax: i32,
    pub payload: Payload,
    pub checks: Vec<Check>,
    pub mutation: Option<Mutation>,
}

impl JobSpec {
    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::TwoVect { .. } => "twovect",
            Payload::Group { .. } => "group",
        }
    }
}

pub fn parse_document(text: &str) -> Result<Vec<JobSpec>, JobError> {
    let root: Value = serde_json::from_str(text).map_err(|e| JobError::Schema {
        path: "$".into(),
        reason: format!("not valid JSON: {e}"),
    })?;
    match root.get("jobs") {
        Some(Value::Array(jobs)) => {
            if jobs.is_empty() {
                return Err(schema("$.jobs", "expected at least one job"));
            }
            jobs.iter()
                .enumerate()
                .map(|(i, job)| parse_job_value(job, &format!("$.jobs[{i}]")))
                .collect()
        }
        Some(_) => Err(schema("$.jobs", "expected an array")),
        None => Ok(vec![parse_job_value(&root, "$")?]),
    }
}

pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let root: Value = serde_json::from_str(text).map_err(|e| schema("$", &format!("not valid JSON: {e}")))?;
    parse_job_value(&root, "$")
}

fn schema(path: &str, reason: &str) -> JobError {
    JobError::Schema {
        path: path.to_string(),
        reason: reason.to_string(),
    }
}

fn cap(cap: &'static str, value: usize, limit: usize) -> JobError {
    JobError::CapExceeded { cap, value, limit }
}

const TWOVECT_KEYS: &[&str] = &["name", "kind", "field", "partial", "c_dim", "v_dim", "kmax", "poly_degree", "checks", "mutation"];
const GROUP_KEYS: &[&str] = &["name", "kind", "field", "group", "rho", "kmax", "checks", "mutation"];

fn parse_job_value(value: &Value, path: &str) -> Result<JobSpec, JobError> {
    let obj = value.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    let kind = get_str(obj, path, "kind")?.ok_or_else(|| schema(&format!("{path}.kind"), "missing"))?;
    let allowed = match kind {
        "twovect" => TWOVECT_KEYS,
        "group" => GROUP_KEYS,
        _ => return Err(schema(&format!("{path}.kind"), "expected \"twovect\" or \"group\"")),
    };
    if let Some(key) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(schema(&format!("{path}.{key}"), &format!("unknown key for a {kind} job")));
    }

    let name = get_str(obj, path, "name")?.map(str::to_string);
    let field = parse_field(obj.get("field"), &format!("{path}.field"))?;
    let kmax = match get_uint(obj, path, "kmax")? {
        Some(k) if k > MAX_KMAX as u64 => return Err(cap("kmax", k as usize, MAX_KMAX as usize)),
        Some(k) => k as i32,
        None => DEFAULT_KMAX,
    };
    let mutation = match obj.get("mutation") {
        None => None,
        Some(m) => Some(parse_mutation(m, &format!("{path}.mutation"))?),
    };

    let (payload, applicable): (Payload, &[Check]) = if kind == "twovect" {
        let poly_degree = match get_uint(obj, path, "poly_degree")? {
            Some(d) if d > MAX_POLY_DEGREE as u64 => return Err(cap("poly_degree", d as usize, MAX_POLY_DEGREE as usize)),
            Some(0) => return Err(schema(&format!("{path}.poly_degree"), "must be at least 1")),
            Some(d) => d as u32,
            None => DEFAULT_POLY_DEGREE,
        };
        let space = parse_partial(obj, path, field)?;
        (Payload::TwoVect { space, poly_degree }, &Check::TWOVECT)
    } else {
        let (group, group_label) = parse_group(obj.get("group"), &format!("{path}.group"))?;
        let rep = parse_rho(obj.get("rho"), &format!("{path}.rho"), group, field)?;
        (Payload::Group { group_label, rep }, &Check::GROUP)
    };

    let checks = match obj.get("checks") {
        None => applicable.to_vec(),
        Some(Value::Array(items)) => {
            let mut out = Vec::new();
            for (i, item) in items.iter().enumerate() {
                let p = format!("{path}.checks[{i}]");
                let name = item.as_str().ok_or_else(|| schema(&p, "expected a check name"))?;
                let check = Check::from_name(name).ok_or_else(|| schema(&p, &format!("unknown check {name:?}")))?;
                if !applicable.contains(&check) {
                    return Err(schema(&p, &format!("check {name:?} does not apply to {kind} jobs")));
                }
                if !out.contains(&check) {
                    out.push(check);
                }
            }
            out
        }
        Some(_) => return Err(schema(&format!("{path}.checks"), "expected an array of names")),
    };

    let job = JobSpec {
        name,
        field,
        kmax,
        payload,
        checks,
        mutation,
    };
    enforce_size(&job)?;
    if let Some(m) = job.mutation {
        check_mutation_target(&job, m, &format!("{path}.mutation"))?;
    }
    Ok(job)
}

fn get_str<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<Option<&'a str>, JobError> {
    match obj.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(schema(&format!("{path}.{key}"), "expected a string")),
    }
}

fn get_uint(obj: &Map<String, Value>, path: &str, key: &str) -> Result<Option<u64>, JobError> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| schema(&format!("{path}.{key}"), "expected a non-negative integer")),
    }
}

fn parse_field(value: Option<&Value>, path: &str) -> Result<Field, JobError> {
    let text = match value {
        None => return Ok(Field::RATIONAL),
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(schema(path, "expected \"Q\" or \"F<p>\"")),
    };
    if text == "Q" {
        return Ok(Field::RATIONAL);
    }
    let p = text
        .strip_prefix('F')
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| schema(path, "expected \"Q\" or \"F<p>\""))?;
    Field::prime(p).map_err(|e| schema(path, &e.to_string()))
}

fn parse_matrix(value: &Value, path: &str, field: Field) -> Result<Vec<Vec<defcoh_core::Scalar>>, JobError> {
    let rows = value.as_array().ok_or_else(|| schema(path, "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let entries = row.as_array().ok_or_else(|| schema(&rp, "expected an array of entries"))?;
        let mut parsed = Vec::with_capacity(entries.len());
        for (j, entry) in entries.iter().enumerate() {
            let ep = format!("{rp}[{j}]");
            let text = entry
                .as_str()
                .ok_or_else(|| schema(&ep, "entries must be strings such as \"-3/2\""))?;
            parsed.push(field.parse(text).map_err(|e| schema(&ep, &e.to_string()))?);
        }
        if let Some(first) = out.first().map(Vec::len) {
            if parsed.len() != first {
                return Err(schema(&rp, "rows have different lengths"));
            }
        }
        out.push(parsed);
    }
    Ok(out)
}

fn parse_partial(obj: &Map<String, Value>, path: &str, field: Field) -> Result<TwoVectorSpace, JobError> {
    let p = format!("{path}.partial");
    let rows = parse_matrix(obj.get("partial").ok_or_else(|| schema(&p, "missing"))?, &p, field)?;
    let v_dim = rows.len();
    let c_from_rows = rows.first().map(Vec::len);
    let c_dim = match (get_uint(obj, path, "c_dim")?, c_from_rows) {
        (Some(c), Some(n)) if c as usize != n => {
            return Err(schema(&format!("{path}.c_dim"), "does not match the number of columns of partial"))
        }
        (Some(c), _) => c as usize,
        (None, Some(n)) => n,
        (None, None) => return Err(schema(&format!("{path}.c_dim"), "required when partial has no rows")),
    };
    if let Some(v) = get_uint(obj, path, "v_dim")? {
        if v as usize != v_dim {
            return Err(schema(&format!("{path}.v_dim"), "does not match the number of rows of partial"));
        }
    }
    let m = Matrix::from_rows(field, c_dim, rows).map_err(|e| schema(&p, &e.to_string()))?;
    Ok(TwoVectorSpace::new(m))
}

fn parse_group(value: Option<&Value>, path: &str) -> Result<(FiniteGroup, String), JobError> {
    let obj = value
        .and_then(Value::as_object)
        .ok_or_else(|| schema(path, "expected {\"preset\": ..} or {\"table\": ..}"))?;
    if let Some(key) = obj.keys().find(|k| !["preset", "n", "table"].contains(&k.as_str())) {
        return Err(schema(&format!("{path}.{key}"), "unknown key"));
    }
    match (obj.get("preset"), obj.get("table")) {
        (Some(name), None) => {
            let name = name.as_str().ok_or_else(|| schema(&format!("{path}.preset"), "expected a string"))?;
            let n = get_uint(obj, path, "n")?.map(|n| n as usize);
            let order = match (name, n) {
                ("cyclic", Some(n)) => Some(n),
                ("klein_four", None) => Some(4),
                ("symmetric", Some(n)) => (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i)),
                _ => None,
            };
            if let Some(order) = order {
                if order > MAX_GROUP_ORDER {
                    return Err(cap("group order", order, MAX_GROUP_ORDER));
                }
            }
            let group = FiniteGroup::preset(name, n).map_err(|e| schema(path, &e.to_string()))?;
            let label = match n {
                Some(n) => format!("{name}({n})"),
                None => name.to_string(),
            };
            Ok((group, label))
        }
        (None, Some(table)) => {
            if obj.contains_key("n") {
                return Err(schema(&format!("{path}.n"), "only meaningful with a preset"));
            }
            let tp = format!("{path}.table");
            let rows = table.as_array().ok_or_else(|| schema(&tp, "expected an array of rows"))?;
            if rows.len() > MAX_GROUP_ORDER {
                return Err(cap("group order", rows.len(), MAX_GROUP_ORDER));
            }
            let mut parsed = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let rp = format!("{tp}[{i}]");
                let entries = row.as_array().ok_or_else(|| schema(&rp, "expected an array of indices"))?;
                let row: Option<Vec<usize>> = entries.iter().map(|e| e.as_u64().map(|x| x as usize)).collect();
                parsed.push(row.ok_or_else(|| schema(&rp, "entries must be element indices"))?);
            }
            let group = FiniteGroup::from_table(parsed).map_err(|e| schema(&tp, &e.to_string()))?;
            Ok((group, format!("table of order {}", rows.len())))
        }
        _ => Err(schema(path, "give exactly one of \"preset\" and \"table\"")),
    }
}

fn parse_rho(value: Option<&Value>, path: &str, group: FiniteGroup, field: Field) -> Result<Representation, JobError> {
    let Some(value) = value else {
        return Ok(Representation::trivial(group, field, 1));
    };
    let mats = value.as_array().ok_or_else(|| schema(path, "expected one matrix per group element"))?;
    if mats.len() != group.order() {
        return Err(schema(
            path,
            &format!("expected {} matrices, one per group element", group.order()),
        ));
    }
    let mut rho = Vec::with_capacity(mats.len());
    for (g, m) in mats.iter().enumerate() {
        let mp = format!("{path}[{g}]");
        let rows = parse_matrix(m, &mp, field)?;
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(schema(&mp, "expected a nonempty square matrix"));
        }
        rho.push(Matrix::from_rows(field, n, rows).map_err(|e| schema(&mp, &e.to_string()))?);
    }
    if rho.iter().any(|m| m.rows() != rho[0].rows()) {
        return Err(schema(path, "matrices have different sizes"));
    }
    Representation::new(group, field, rho).map_err(|e| schema(path, &e.to_string()))
}

fn parse_mutation(value: &Value, path: &str) -> Result<Mutation, JobError> {
    let obj = value.as_object().ok_or_else(|| schema(path, "expected {degree, row, col}"))?;
    if let Some(key) = obj.keys().find(|k| !["degree", "row", "col"].contains(&k.as_str())) {
        return Err(schema(&format!("{path}.{key}"), "unknown key"));
    }
    let degree = obj
        .get("degree")
        .and_then(Value::as_i64)
        .ok_or_else(|| schema(&format!("{path}.degree"), "expected an integer"))?;
    let row = get_uint(obj, path, "row")?.ok_or_else(|| schema(&format!("{path}.row"), "missing"))?;
    let col = get_uint(obj, path, "col")?.ok_or_else(|| schema(&format!("{path}.col"), "missing"))?;
    Ok(Mutation {
        degree: degree.clamp(i32::MIN as i64, i32::MAX as i64) as i32,
        row: row as usize,
        col: col as usize,
    })
}

/// Cochain dimensions per degree of every complex a job builds, for cap checks
/// and mutation bounds.
pub fn twovect_dims(t: &TwoVectorSpace, top: i32) -> Vec<usize> {
    (-1..=top).map(|k| t.cochain_dim(k)).collect()
}

/// Number of polynomial cochains of degree `k` and polynomial degree `≤ d`.
pub fn poly_cochain_dim(t: &TwoVectorSpace, k: i32, d: u32) -> usize {
    let (c, v) = (t.c_dim(), t.v_dim());
    let monomials = |nvars: usize| -> usize { (0..=d as usize).map(|e| monomials_of_degree(nvars, e)).sum() };
    if k < 0 {
        return c * monomials(v);
    }
    let k = k as usize;
    c * monomials((k + 1) * c + v) + v * monomials(k * c + v)
}

/// `C(nvars + e − 1, e)`.
fn monomials_of_degree(nvars: usize, e: usize) -> usize {
    match (nvars, e) {
        (_, 0) => 1,
        (0, _) => 0,
        _ => (0..e).fold(1usize, |acc, i| acc.saturating_mul(nvars + i) / (i + 1)),
    }
}

fn enforce_size(job: &JobSpec) -> Result<(), JobError> {
    // Checks read one degree past kmax so that every reported degree is exact.
    let top = job.kmax + 1;
    let largest = match &job.payload {
        Payload::TwoVect { space, poly_degree } => {
            let full = twovect_dims(space, top).into_iter().max().unwrap_or(0);
            let poly = if job.checks.contains(&Check::Linearization) {
                (-1..=job.kmax.max(1)).map(|k| poly_cochain_dim(space, k, *poly_degree)).max().unwrap_or(0)
            } else {
                0
            };
            full.max(poly)
        }
        Payload::Group { rep, .. } => {
            let n = rep.group().order();
            let dim = rep.dim();
            (0..=top as u32)
                .map(|k| n.saturating_pow(k).saturating_mul(dim * dim))
                .max()
                .unwrap_or(0)
        }
    };
    if largest > MAX_COCHAIN_DIM {
        return Err(cap("cochain dimension", largest, MAX_COCHAIN_DIM));
    }
    Ok(())
}

fn check_mutation_target(job: &JobSpec, m: Mutation, path: &str) -> Result<(), JobError> {
    let (kmin, dims) = match &job.payload {
        Payload::TwoVect { space, .. } => (-1, twovect_dims(space, job.kmax + 1)),
        Payload::Group { rep, .. } => {
            let d = rep.dim() * rep.dim();
            (0, (0..=job.kmax as u32 + 1).map(|k| rep.group().order().pow(k) * d).collect())
        }
    };
    let top = kmin + dims.len() as i32 - 1;
    if m.degree < kmin || m.degree >= top {
        return Err(schema(&format!("{path}.degree"), &format!("expected a degree in {kmin}..{}", top - 1)));
    }
    let i = (m.degree - kmin) as usize;
    if m.row >= dims[i + 1] || m.col >= dims[i] {
        return Err(schema(
            path,
            &format!("entry out of range for a {}x{} differential", dims[i + 1], dims[i]),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_twovect_job() {
        let job = parse_job(r#"{"kind": "twovect", "partial": [["1"]]}"#).unwrap();
        let Payload::TwoVect { space, poly_degree } = &job.payload else {
            panic!("wrong kind")
        };
        assert_eq!((space.v_dim(), space.c_dim()), (1, 1));
        assert_eq!((job.kmax, *poly_degree), (2, 3));
        assert_eq!(job.checks, Check::TWOVECT.to_vec());
        assert_eq!(job.field, Field::RATIONAL);
    }

    #[test]
    fn sign_representation_job() {
        let job = parse_job(
            r#"{"kind": "group", "group": {"preset": "cyclic", "n": 2}, "rho": [[["1"]], [["-1"]]], "checks": ["betti"]}"#,
        )
        .unwrap();
        let Payload::Group { rep, group_label } = &job.payload else {
            panic!("wrong kind")
        };
        assert_eq!(group_label, "cyclic(2)");
        assert_eq!(rep.invariants_dim(), 0);
        assert_eq!(job.checks, vec![Check::Betti]);
    }

    #[test]
    fn caps_are_errors() {
        let err = parse_job(r#"{"kind": "twovect", "partial": [["1"]], "kmax": 99}"#).unwrap_err();
        assert!(matches!(err, JobError::CapExceeded { cap: "kmax", value: 99, .. }));
        let err = parse_job(r#"{"kind": "twovect", "partial": [["1"]], "poly_degree": 5}"#).unwrap_err();
        assert!(matches!(err, JobError::CapExceeded { cap: "poly_degree", .. }));
        let err = parse_job(r#"{"kind": "group", "group": {"preset": "symmetric", "n": 4}}"#).unwrap_err();
        assert!(matches!(err, JobError::CapExceeded { cap: "group order", value: 24, .. }));
        let err = parse_job(r#"{"kind": "group", "group": {"preset": "cyclic", "n": 12}, "kmax": 6}"#).unwrap_err();
        assert!(matches!(err, JobError::CapExceeded { cap: "cochain dimension", .. }));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let path_of = |text: &str| match parse_document(text).unwrap_err() {
            JobError::Schema { path, .. } => path,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(path_of(r#"{"jobs": [{"kind": "twovect", "partial": [[1]]}]}"#), "$.jobs[0].partial[0][0]");
        assert_eq!(path_of(r#"{"kind": "twovect", "partial": [["1", "2"], ["3"]]}"#), "$.partial[1]");
        assert_eq!(path_of(r#"{"kind": "twovect", "partial": [["1"]], "field": "F4"}"#), "$.field");
        assert_eq!(path_of(r#"{"kind": "twovect", "partial": [["1"]], "checks": ["bar_match"]}"#), "$.checks[0]");
        assert_eq!(path_of(r#"{"kind": "group", "group": {"preset": "cyclic", "n": 2}, "rho": [[["1"]], [["2"]]]}"#), "$.rho");
        assert_eq!(path_of(r#"{"kind": "twovect", "partial": [["1"]], "mutation": {"degree": 5, "row": 0, "col": 0}}"#), "$.mutation.degree");
        assert_eq!(path_of(r#"{"kind": "matrix"}"#), "$.kind");
        assert_eq!(path_of("not json"), "$");
        assert_eq!(path_of(r#"{"kind": "twovect", "partial": [["1"]], "extra": 1}"#), "$.extra");
    }

    #[test]
    fn empty_partial_needs_dimensions() {
        let job = parse_job(r#"{"kind": "twovect", "partial": [], "c_dim": 2}"#).unwrap();
        let Payload::TwoVect { space, .. } = &job.payload else {
            panic!("wrong kind")
        };
        assert_eq!((space.c_dim(), space.v_dim()), (2, 0));
        assert!(parse_job(r#"{"kind": "twovect", "partial": []}"#).is_err());
        let job = parse_job(r#"{"kind": "twovect", "partial": [[], []]}"#).unwrap();
        let Payload::TwoVect { space, .. } = &job.payload else {
            panic!("wrong kind")
        };
        assert_eq!((space.c_dim(), space.v_dim()), (0, 2));
    }

    #[test]
    fn exact_entries_over_prime_fields() {
        let job = parse_job(r#"{"kind": "twovect", "field": "F5", "partial": [["1/2", "3 mod 5"]]}"#).unwrap();
        let Payload::TwoVect { space, .. } = &job.payload else {
            panic!("wrong kind")
        };
        let f = Field::prime(5).unwrap();
        assert_eq!(space.partial(), &Matrix::from_i64(f, &[&[3, 3]]));
        assert!(parse_job(r#"{"kind": "twovect", "field": "F5", "partial": [["1/5"]]}"#).is_err());
    }

    #[test]
    fn poly_dimension_count_matches_basis() {
        let t = TwoVectorSpace::new(Matrix::from_i64(Field::RATIONAL, &[&[1, 0], &[2, 1]]));
        for k in -1..=2 {
            for d in 1..=3 {
                assert_eq!(
                    poly_cochain_dim(&t, k, d),
                    defcoh_core::poly_cochains::PolyBasis::new(&t, k, d).dim()
                );
            }
        }
    }
}
