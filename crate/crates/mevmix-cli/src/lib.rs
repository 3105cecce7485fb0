//! Command implementations behind the `mevmix` binary: load a model-spec
//! JSON file, then validate, evaluate, sample, estimate tail dependence,
//! or run the bundled verification suite. Every failure carries a stable
//! error code so the binary can emit machine-parseable JSON on stderr with
//! a distinct exit status per failure class.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mevmix::modelspec::parse_model_spec;
use mevmix::taildep::TailDepReport;
use mevmix::{
    empirical_lambda, orthant_lambda, Error as MevError, MarginTransform, MevMixModel,
    SubsetMask,
};

pub mod verify;

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments (exit 2, matching the parser's own code).
    Usage(String),
    /// The model-spec document does not parse into a model (exit 3).
    MalformedSpec(String),
    /// Filesystem problems (exit 4).
    Io(String),
    /// The model parses but violates its constraints (exit 1).
    InvalidModel { violations: Vec<String> },
    /// Evaluation or estimation failed on valid input shapes (exit 5).
    Eval(String),
    /// One or more verification checks failed (exit 1).
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::MalformedSpec(_) => 3,
            CliError::Io(_) => 4,
            CliError::InvalidModel { .. } => 1,
            CliError::Eval(_) => 5,
            CliError::VerifyFailed(_) => 1,
        }
    }

    pub fn code_name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::MalformedSpec(_) => "malformed-spec",
            CliError::Io(_) => "io",
            CliError::InvalidModel { .. } => "invalid-model",
            CliError::Eval(_) => "evaluation",
            CliError::VerifyFailed(_) => "verify-failed",
        }
    }

    /// The machine-parseable stderr payload.
    pub fn to_json(&self) -> serde_json::Value {
        let message = self.to_string();
        match self {
            CliError::InvalidModel { violations } => serde_json::json!({
                "error": {
                    "code": self.code_name(),
                    "message": message,
                    "violations": violations,
                }
            }),
            _ => serde_json::json!({
                "error": { "code": self.code_name(), "message": message }
            }),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{}", m),
            CliError::MalformedSpec(m) => write!(f, "{}", m),
            CliError::Io(m) => write!(f, "{}", m),
            CliError::InvalidModel { violations } => {
                write!(f, "model violates {} constraint(s)", violations.len())
            }
            CliError::Eval(m) => write!(f, "{}", m),
            CliError::VerifyFailed(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for CliError {}

fn eval_err(e: MevError) -> CliError {
    match e {
        MevError::InvalidModel { violations } => CliError::InvalidModel {
            violations: violations.iter().map(|v| v.to_string()).collect(),
        },
        other => CliError::Eval(other.to_string()),
    }
}

/// Load and parse a model-spec file. Structural problems are malformed-spec
/// failures; constraint violations are left for the caller to check.
pub fn load_model(path: &Path) -> Result<MevMixModel, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {}", path.display(), e)))?;
    parse_model_spec(&text).map_err(|e| CliError::MalformedSpec(e.to_string()))
}

/// Load a model and require it valid.
pub fn load_valid_model(path: &Path) -> Result<MevMixModel, CliError> {
    let model = load_model(path)?;
    let violations = model.validate();
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(CliError::InvalidModel {
            violations: violations.iter().map(|v| v.to_string()).collect(),
        })
    }
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {}", path.display(), e))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// `validate`: report violations; exit 1 when any exist.
pub fn run_validate(model_path: &Path) -> Result<String, CliError> {
    let model = load_model(model_path)?;
    let violations = model.validate();
    if violations.is_empty() {
        Ok(serde_json::json!({
            "valid": true,
            "d": model.dim(),
            "q": model.num_components(),
        })
        .to_string()
            + "\n")
    } else {
        Err(CliError::InvalidModel {
            violations: violations.iter().map(|v| v.to_string()).collect(),
        })
    }
}

/// Parse a grid file: one comma-separated point in `[0,1]^d` per line, an
/// optional header line, `.` as the decimal separator.
pub fn read_grid(path: &Path, dim: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {}", path.display(), e)))?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match fields {
            Ok(point) => {
                if point.len() != dim {
                    return Err(CliError::Eval(format!(
                        "grid line {} has {} coordinates, expected {}",
                        lineno + 1,
                        point.len(),
                        dim
                    )));
                }
                points.push(point);
            }
            Err(_) if lineno == 0 => continue, // header row
            Err(e) => {
                return Err(CliError::Eval(format!(
                    "grid line {}: cannot parse: {}",
                    lineno + 1,
                    e
                )))
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::Eval("grid file contains no points".to_string()));
    }
    Ok(points)
}

/// `eval`: CSV of (u-point, cdf, exponent at -ln u) over the grid.
pub fn run_eval(
    model_path: &Path,
    grid_path: &Path,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let model = load_valid_model(model_path)?;
    let points = read_grid(grid_path, model.dim())?;
    let mut csv = String::new();
    for i in 1..=model.dim() {
        csv.push_str(&format!("u{},", i));
    }
    csv.push_str("cdf,exponent\n");
    for point in &points {
        let cdf = model.cdf(point).map_err(eval_err)?;
        let x: Vec<f64> = point.iter().map(|&ui| -ui.ln()).collect();
        let exponent = model.exponent(&x).map_err(eval_err)?;
        for ui in point {
            csv.push_str(&format!("{},", ui));
        }
        csv.push_str(&format!("{},{}\n", cdf, exponent));
    }
    write_output(out, &csv)
}

/// `sample`: CSV of `n` draws, `y1..yd` plus optional `u1..ud` columns.
pub fn run_sample(
    model_path: &Path,
    n: usize,
    seed: u64,
    with_uniforms: bool,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let model = load_valid_model(model_path)?;
    let samples = model.sample(n, seed).map_err(eval_err)?;
    let dim = samples.dim();
    let mut csv = String::new();
    for i in 1..=dim {
        csv.push_str(&format!("y{}", i));
        if i < dim || with_uniforms {
            csv.push(',');
        }
    }
    if with_uniforms {
        for i in 1..=dim {
            csv.push_str(&format!("u{}", i));
            if i < dim {
                csv.push(',');
            }
        }
    }
    csv.push('\n');
    for row in samples.rows() {
        for (i, y) in row.iter().enumerate() {
            csv.push_str(&format!("{}", y));
            if i + 1 < dim || with_uniforms {
                csv.push(',');
            }
        }
        if with_uniforms {
            for (i, y) in row.iter().enumerate() {
                csv.push_str(&format!("{}", (-1.0 / y).exp()));
                if i + 1 < dim {
                    csv.push(',');
                }
            }
        }
        csv.push('\n');
    }
    write_output(out, &csv)
}

/// Parse a 1-based `--J` coordinate list like `1,3`.
pub fn parse_j_set(spec: &str, dim: usize) -> Result<SubsetMask, CliError> {
    let mut indices = Vec::new();
    for field in spec.split(',') {
        let coord: usize = field.trim().parse().map_err(|_| {
            CliError::Usage(format!("cannot parse coordinate '{}' in --J {}", field, spec))
        })?;
        if coord == 0 || coord > dim {
            return Err(CliError::Usage(format!(
                "--J coordinate {} out of 1..={}",
                coord, dim
            )));
        }
        indices.push(coord - 1);
    }
    SubsetMask::from_indices(dim, &indices)
        .map_err(|e| CliError::Usage(format!("bad --J {}: {}", spec, e)))
}

/// Output format for tail-dependence reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// `taildep`: analytic reports for each requested `J`, bivariate pair
/// coefficients for two-coordinate sets, and empirical estimates when a
/// draw count is given.
pub fn run_taildep(
    model_path: &Path,
    j_specs: &[String],
    n: Option<usize>,
    seed: Option<u64>,
    u: f64,
    format: ReportFormat,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let model = load_valid_model(model_path)?;
    let dim = model.dim();
    let mut reports: Vec<TailDepReport> = Vec::new();

    let samples = match n {
        Some(n) => {
            let seed = seed.ok_or_else(|| {
                CliError::Usage("--n for empirical estimation requires --seed".to_string())
            })?;
            Some(model.sample(n, seed).map_err(eval_err)?)
        }
        None => None,
    };

    for spec in j_specs {
        let j = parse_j_set(spec, dim)?;
        reports.push(orthant_lambda(&model, &j).map_err(eval_err)?);
        if let Some(samples) = &samples {
            reports.push(
                empirical_lambda(samples, &j, u, MarginTransform::Frechet).map_err(eval_err)?,
            );
        }
    }

    let content = match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
        }
        ReportFormat::Csv => {
            let mut csv = String::from(TailDepReport::csv_header());
            csv.push('\n');
            for r in &reports {
                csv.push_str(&r.csv_row());
                csv.push('\n');
            }
            csv
        }
    };
    write_output(out, &content)
}
