//! Command-line front end: evaluate the completed zeta function, locate
//! critical-line zeros, scan the spectral density over the strip, tabulate
//! the wave function, the well model and the autocorrelation, and run the
//! generic transform on sampled data.
//!
//! Output is CSV (17 significant digits, lossless for binary64) or JSON
//! with identical numbers. Exit codes: 0 success, 2 configuration or
//! domain error, 3 precision-wall range, 4 internal consistency failure.

// `!(step > 0.0)` is deliberate: it rejects NaN along with non-positives.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use xispec::spectral::{
    locate_zeros, spectral_density_of, strip_scan, SampledWave, WaveSource, WaveVector,
};
use xispec::stochastic::{
    autocorrelation, autocorrelation_spectrum, spectrum_sign_changes, CorrelationParams,
};
use xispec::wavefunction::{potential, riemann_wave, schrodinger_residual};
use xispec::well::{well_forbidden_states, well_spectral_closed, WellState};
use xispec::xi::{xi_direct, xi_fourier, xi_omega_form, CriticalPoint};
use xispec::{Error as XiError, Tolerances};

#[derive(Parser)]
#[command(name = "xispec", version, about = "Completed-zeta spectral toolkit")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Override the absolute quadrature tolerance
    #[arg(long, global = true)]
    tol_quad: Option<f64>,

    /// Override the bisection half-width tolerance
    #[arg(long, global = true)]
    tol_root: Option<f64>,

    /// Override the series truncation tolerance
    #[arg(long, global = true)]
    tol_series: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Omega,
    Fourier,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Xi at a point (--t) or along a sweep (--t-min/--t-max/--t-step)
    #[command(allow_negative_numbers = true)]
    Xi {
        #[arg(long, conflicts_with_all = ["t_min", "t_max", "t_step"])]
        t: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, requires = "t_max")]
        t_min: Option<f64>,
        #[arg(long, requires = "t_min")]
        t_max: Option<f64>,
        #[arg(long)]
        t_step: Option<f64>,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Locate critical-line zeros in [--t-min, --t-max]
    #[command(allow_negative_numbers = true)]
    Zeros {
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Scan the spectral density over a (k, lambda) grid off the real axis
    #[command(allow_negative_numbers = true)]
    Scan {
        #[arg(long)]
        k_min: f64,
        #[arg(long)]
        k_max: f64,
        #[arg(long, default_value_t = 0.1)]
        k_step: f64,
        /// Off-axis lambda value; repeat the flag for several
        #[arg(long = "lambda", required = true)]
        lambdas: Vec<f64>,
    },
    /// Tabulate R(x), the potential and the Schrodinger residual
    #[command(allow_negative_numbers = true)]
    Wavefunction {
        #[arg(long)]
        x_min: f64,
        #[arg(long)]
        x_max: f64,
        #[arg(long)]
        step: f64,
    },
    /// Closed-form infinite-well spectral density along a k sweep
    #[command(allow_negative_numbers = true)]
    Well {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        k_min: f64,
        #[arg(long)]
        k_max: f64,
        #[arg(long)]
        k_step: f64,
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        /// Also evaluate the generic transform per row for comparison
        #[arg(long)]
        quadrature: bool,
    },
    /// Autocorrelation tau(t; t0), optionally with its spectrum
    #[command(allow_negative_numbers = true)]
    Autocorr {
        #[arg(long)]
        t0: f64,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        step: f64,
        /// Also compute S(omega) on a grid of the same length
        #[arg(long, requires_all = ["omega_min", "omega_max", "omega_step"])]
        spectrum: bool,
        #[arg(long)]
        omega_min: Option<f64>,
        #[arg(long)]
        omega_max: Option<f64>,
        #[arg(long)]
        omega_step: Option<f64>,
    },
    /// Spectral density of a sampled wave (CSV with header x,re,im)
    #[command(allow_negative_numbers = true)]
    SpectralOf {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k_min: f64,
        #[arg(long)]
        k_max: f64,
        #[arg(long)]
        k_step: f64,
        /// Lambda value; repeat the flag for several
        #[arg(long = "lambda", required = true)]
        lambdas: Vec<f64>,
    },
}

/// One output cell: a number (NaN allowed) or a short label.
enum Cell {
    Num(f64),
    Text(String),
}

struct Output {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    /// (key, value) pairs rendered as trailing `# key=value` CSV comments
    /// and as the `summary` object in JSON.
    summary: Vec<(String, serde_json::Value)>,
    /// Preformatted trailing comment lines, CSV only, emitted first.
    csv_comments: Vec<String>,
}

fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{:.16e}", v)
    }
}

impl Output {
    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => fmt_num(*v),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for line in &self.csv_comments {
            out.push_str(&format!("# {line}\n"));
        }
        for (key, value) in &self.summary {
            let rendered = match value {
                serde_json::Value::Number(n) if n.is_f64() => {
                    n.as_f64().map(fmt_num).unwrap_or_else(|| n.to_string())
                }
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("# {key}={rendered}\n"));
        }
        out
    }

    fn render_json(&self, command: &str) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.header.iter().zip(row) {
                    let v = match cell {
                        Cell::Num(x) => serde_json::Number::from_f64(*x)
                            .map(serde_json::Value::Number)
                            .unwrap_or(serde_json::Value::Null),
                        Cell::Text(s) => serde_json::Value::String(s.clone()),
                    };
                    obj.insert((*name).to_string(), v);
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut summary = serde_json::Map::new();
        for (key, value) in &self.summary {
            summary.insert(key.clone(), value.clone());
        }
        let doc = json!({
            "command": command,
            "rows": rows,
            "summary": serde_json::Value::Object(summary),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json render");
        s.push('\n');
        s
    }
}

fn num_value(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

fn build_grid(lo: f64, hi: f64, step: f64, what: &str) -> anyhow::Result<Vec<f64>> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        anyhow::bail!(XiError::InvalidInput(format!(
            "{what} range must be finite with min <= max, got [{lo}, {hi}]"
        )));
    }
    if !(step > 0.0) || !step.is_finite() {
        anyhow::bail!(XiError::InvalidInput(format!(
            "{what} step must be strictly positive, got {step}"
        )));
    }
    if lo == hi {
        return Ok(vec![lo]);
    }
    let mut xs = Vec::new();
    let mut x = lo;
    while x < hi - 0.5 * step * f64::EPSILON {
        xs.push(x);
        x += step;
    }
    xs.push(hi);
    Ok(xs)
}

fn tolerances(cli: &Cli) -> anyhow::Result<Tolerances> {
    let mut tol = Tolerances::default();
    if let Some(q) = cli.tol_quad {
        tol.quad_abs_tol = q;
    }
    if let Some(r) = cli.tol_root {
        tol.root_tol = r;
    }
    if let Some(s) = cli.tol_series {
        tol.series_tol = s;
    }
    Ok(tol.validated()?)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            // Single line, machine parsable.
            let msg = err.to_string().replace('\n', " ");
            eprintln!("error: {msg}");
            std::process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<XiError>() {
        Some(XiError::PrecisionWall(_)) => 3,
        Some(XiError::InternalConsistency(_)) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let tol = tolerances(&cli)?;
    let (name, output) = match &cli.command {
        Command::Xi {
            t,
            delta,
            t_min,
            t_max,
            t_step,
            method,
        } => (
            "xi",
            cmd_xi(*t, *delta, *t_min, *t_max, *t_step, *method, &tol)?,
        ),
        Command::Zeros { t_min, t_max, step } => ("zeros", cmd_zeros(*t_min, *t_max, *step, &tol)?),
        Command::Scan {
            k_min,
            k_max,
            k_step,
            lambdas,
        } => ("scan", cmd_scan(*k_min, *k_max, *k_step, lambdas, &tol)?),
        Command::Wavefunction { x_min, x_max, step } => {
            ("wavefunction", cmd_wavefunction(*x_min, *x_max, *step, &tol)?)
        }
        Command::Well {
            n,
            a,
            k_min,
            k_max,
            k_step,
            lambda,
            quadrature,
        } => (
            "well",
            cmd_well(*n, *a, *k_min, *k_max, *k_step, *lambda, *quadrature, &tol)?,
        ),
        Command::Autocorr {
            t0,
            t_min,
            t_max,
            step,
            spectrum,
            omega_min,
            omega_max,
            omega_step,
        } => (
            "autocorr",
            cmd_autocorr(
                *t0, *t_min, *t_max, *step, *spectrum, *omega_min, *omega_max, *omega_step, &tol,
            )?,
        ),
        Command::SpectralOf {
            input,
            k_min,
            k_max,
            k_step,
            lambdas,
        } => (
            "spectral-of",
            cmd_spectral_of(input, *k_min, *k_max, *k_step, lambdas, &tol)?,
        ),
    };

    let rendered = match cli.format {
        Format::Csv => output.render_csv(),
        Format::Json => output.render_json(name),
    };
    match &cli.output {
        Some(path) => {
            std::fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn eval_method(
    p: &CriticalPoint,
    method: Method,
    tol: &Tolerances,
) -> anyhow::Result<Vec<(&'static str, f64, f64)>> {
    let mut out = Vec::new();
    let mut push = |label, v: (f64, f64)| out.push((label, v.0, v.1));
    match method {
        Method::Direct => {
            let v = xi_direct(p, tol)?;
            push("direct", (v.re, v.im));
        }
        Method::Omega => {
            let v = xi_omega_form(p, tol)?;
            push("omega", (v.re, v.im));
        }
        Method::Fourier => {
            let v = xi_fourier(p, tol)?;
            push("fourier", (v.re, v.im));
        }
        Method::All => {
            let d = xi_direct(p, tol)?;
            let o = xi_omega_form(p, tol)?;
            let f = xi_fourier(p, tol)?;
            push("direct", (d.re, d.im));
            push("omega", (o.re, o.im));
            push("fourier", (f.re, f.im));
        }
    }
    Ok(out)
}

fn cmd_xi(
    t: Option<f64>,
    delta: f64,
    t_min: Option<f64>,
    t_max: Option<f64>,
    t_step: Option<f64>,
    method: Method,
    tol: &Tolerances,
) -> anyhow::Result<Output> {
    let ts: Vec<f64> = match (t, t_min, t_max) {
        (Some(t), None, None) => vec![t],
        (None, Some(lo), Some(hi)) => {
            let step = t_step.ok_or_else(|| {
                XiError::InvalidInput("--t-step is required with --t-min/--t-max".to_string())
            })?;
            build_grid(lo, hi, step, "t")?
        }
        _ => {
            return Err(XiError::InvalidInput(
                "give either --t or the sweep flags --t-min/--t-max/--t-step".to_string(),
            )
            .into())
        }
    };

    let mut rows = Vec::new();
    let mut max_dev_omega: f64 = 0.0;
    let mut max_dev_fourier: f64 = 0.0;
    for &height in &ts {
        let p = CriticalPoint::new(height, delta);
        let values = eval_method(&p, method, tol)?;
        if method == Method::All {
            let dist = |a: &(&str, f64, f64), b: &(&str, f64, f64)| {
                ((a.1 - b.1).powi(2) + (a.2 - b.2).powi(2)).sqrt()
            };
            max_dev_omega = max_dev_omega.max(dist(&values[0], &values[1]));
            max_dev_fourier = max_dev_fourier.max(dist(&values[0], &values[2]));
        }
        for (label, re, im) in values {
            rows.push(vec![
                Cell::Num(height),
                Cell::Num(delta),
                Cell::Num(re),
                Cell::Num(im),
                Cell::Text(label.to_string()),
            ]);
        }
    }

    let mut summary = Vec::new();
    if method == Method::All {
        summary.push(("delta_direct_omega".to_string(), num_value(max_dev_omega)));
        summary.push((
            "delta_direct_fourier".to_string(),
            num_value(max_dev_fourier),
        ));
    }
    Ok(Output {
        header: vec!["t", "delta", "re", "im", "method"],
        rows,
        summary,
        csv_comments: Vec::new(),
    })
}

fn cmd_zeros(t_min: f64, t_max: f64, step: f64, tol: &Tolerances) -> anyhow::Result<Output> {
    let zeros = locate_zeros(t_min, t_max, step, tol)?;
    let rows = zeros
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            vec![
                Cell::Num((i + 1) as f64),
                Cell::Num(z),
                Cell::Num(2.0 * z),
            ]
        })
        .collect();
    Ok(Output {
        header: vec!["index", "t", "k"],
        rows,
        summary: vec![("count".to_string(), json!(zeros.len()))],
        csv_comments: Vec::new(),
    })
}

fn cmd_scan(
    k_min: f64,
    k_max: f64,
    k_step: f64,
    lambdas: &[f64],
    tol: &Tolerances,
) -> anyhow::Result<Output> {
    let report = strip_scan(k_min, k_max, k_step, lambdas, tol)?;
    let rows = report
        .points
        .iter()
        .map(|p| vec![Cell::Num(p.k), Cell::Num(p.lambda), Cell::Num(p.rho)])
        .collect();
    let csv_comments = vec![format!(
        "min={},argmin_k={},argmin_lambda={}",
        fmt_num(report.min_value),
        fmt_num(report.argmin.0),
        fmt_num(report.argmin.1)
    )];
    let zeros: Vec<String> = report.zeros.iter().map(|&z| fmt_num(z)).collect();
    let mut summary = vec![
        ("min".to_string(), num_value(report.min_value)),
        ("argmin_k".to_string(), num_value(report.argmin.0)),
        ("argmin_lambda".to_string(), num_value(report.argmin.1)),
        ("zeros".to_string(), json!(zeros.join(";"))),
        ("evaluations".to_string(), json!(report.evaluations)),
        (
            "counterexamples".to_string(),
            json!(report.counterexamples.len()),
        ),
    ];
    for p in &report.counterexamples {
        // Loud: these would be candidate off-axis zeros, which established
        // zero tables say cannot exist in this range.
        eprintln!(
            "WARNING: counterexample candidate rho = {} at k = {}, lambda = {}",
            p.rho, p.k, p.lambda
        );
        summary.push((
            format!("COUNTEREXAMPLE_k_{}_lambda_{}", p.k, p.lambda),
            num_value(p.rho),
        ));
    }
    Ok(Output {
        header: vec!["k", "lambda", "rho"],
        rows,
        summary,
        csv_comments,
    })
}

fn cmd_wavefunction(x_min: f64, x_max: f64, step: f64, tol: &Tolerances) -> anyhow::Result<Output> {
    let xs = build_grid(x_min, x_max, step, "x")?;
    let mut rows = Vec::new();
    for &x in &xs {
        let r = riemann_wave(x, tol);
        let u = potential(x, tol)?;
        let residual = match schrodinger_residual(x, tol) {
            Ok(v) => v,
            Err(XiError::Domain(_)) => f64::NAN, // kink exclusion zone
            Err(e) => return Err(e.into()),
        };
        rows.push(vec![
            Cell::Num(x),
            Cell::Num(r),
            Cell::Num(u),
            Cell::Num(residual),
        ]);
    }
    Ok(Output {
        header: vec!["x", "R", "uR", "residual"],
        rows,
        summary: Vec::new(),
        csv_comments: Vec::new(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_well(
    n: u32,
    a: f64,
    k_min: f64,
    k_max: f64,
    k_step: f64,
    lambda: f64,
    quadrature: bool,
    tol: &Tolerances,
) -> anyhow::Result<Output> {
    let state = WellState::new(n, a)?;
    let mut ks = build_grid(k_min, k_max, k_step, "k")?;
    if lambda == 0.0 {
        // Make sure the removable points k = +-n pi / a show up in the
        // table; they carry the limit value a/(4 pi).
        for removable in [n as f64 * std::f64::consts::PI / a, -(n as f64) * std::f64::consts::PI / a] {
            if removable >= k_min
                && removable <= k_max
                && !ks.iter().any(|&k| (k - removable).abs() < 1e-12)
            {
                ks.push(removable);
            }
        }
        ks.sort_by(f64::total_cmp);
    }

    let mut rows = Vec::new();
    for &k in &ks {
        let kv = WaveVector::new(k, lambda);
        let closed = well_spectral_closed(&state, &kv);
        let mut row = vec![Cell::Num(k), Cell::Num(lambda), Cell::Num(closed)];
        if quadrature {
            let q = spectral_density_of(WaveSource::Analytic(&state), &kv, tol)?;
            row.push(Cell::Num(q));
        }
        rows.push(row);
    }

    let m_max = ((k_max.abs().max(k_min.abs()) * a) / std::f64::consts::PI).floor() as u32;
    let forbidden = well_forbidden_states(&state, m_max);
    let in_range: Vec<String> = forbidden
        .iter()
        .filter(|&&k| k >= k_min && k <= k_max)
        .map(|&k| fmt_num(k))
        .collect();
    let summary = vec![
        ("forbidden_k".to_string(), json!(in_range.join(";"))),
        (
            "note".to_string(),
            json!(
                "zeros of the closed form at lambda=0 occur only at k = m pi/a with \
                 m = n (mod 2), m != n; opposite-parity lattice points are not zeros"
            ),
        ),
    ];

    let header = if quadrature {
        vec!["k", "lambda", "rho_closed", "rho_quadrature"]
    } else {
        vec!["k", "lambda", "rho_closed"]
    };
    Ok(Output {
        header,
        rows,
        summary,
        csv_comments: Vec::new(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_autocorr(
    t0: f64,
    t_min: f64,
    t_max: f64,
    step: f64,
    spectrum: bool,
    omega_min: Option<f64>,
    omega_max: Option<f64>,
    omega_step: Option<f64>,
    tol: &Tolerances,
) -> anyhow::Result<Output> {
    let params = CorrelationParams::new(t0)?;
    let ts = build_grid(t_min, t_max, step, "t")?;

    if !spectrum {
        let rows = ts
            .iter()
            .map(|&t| vec![Cell::Num(t), Cell::Num(autocorrelation(t, &params, tol))])
            .collect();
        return Ok(Output {
            header: vec!["t", "tau"],
            rows,
            summary: Vec::new(),
            csv_comments: Vec::new(),
        });
    }

    let (olo, ohi, ostep) = (
        omega_min.expect("clap enforces"),
        omega_max.expect("clap enforces"),
        omega_step.expect("clap enforces"),
    );
    let omegas = build_grid(olo, ohi, ostep, "omega")?;
    if omegas.len() != ts.len() {
        return Err(XiError::InvalidInput(format!(
            "the t grid ({} points) and omega grid ({} points) must have equal length \
             for combined rows",
            ts.len(),
            omegas.len()
        ))
        .into());
    }
    let spectrum_points = autocorrelation_spectrum(&omegas, &params, tol)?;
    let mut max_route_delta: f64 = 0.0;
    let mut negative_count = 0usize;
    let rows = ts
        .iter()
        .zip(&spectrum_points)
        .map(|(&t, sp)| {
            max_route_delta = max_route_delta.max((sp.s_quadrature - sp.s_closed).abs());
            negative_count += sp.negative as usize;
            vec![
                Cell::Num(t),
                Cell::Num(autocorrelation(t, &params, tol)),
                Cell::Num(sp.omega),
                Cell::Num(sp.s_quadrature),
            ]
        })
        .collect();

    let mut summary = vec![
        ("max_route_delta".to_string(), num_value(max_route_delta)),
        ("negative_points".to_string(), json!(negative_count)),
    ];
    let flips = spectrum_sign_changes(olo, ohi, ostep, &params, tol)?;
    if let Some(first) = flips.first() {
        summary.push(("first_sign_change_omega".to_string(), num_value(*first)));
    }
    Ok(Output {
        header: vec!["t", "tau", "omega", "S"],
        rows,
        summary,
        csv_comments: Vec::new(),
    })
}

fn cmd_spectral_of(
    input: &PathBuf,
    k_min: f64,
    k_max: f64,
    k_step: f64,
    lambdas: &[f64],
    tol: &Tolerances,
) -> anyhow::Result<Output> {
    let wave = SampledWave::from_csv_path(input)
        .with_context(|| format!("reading sampled wave from {}", input.display()))?;
    let ks = build_grid(k_min, k_max, k_step, "k")?;
    let mut lams = lambdas.to_vec();
    if lams.is_empty() {
        return Err(XiError::InvalidInput("at least one --lambda is required".to_string()).into());
    }
    lams.sort_by(f64::total_cmp);

    let mut rows = Vec::new();
    for &k in &ks {
        for &l in &lams {
            let rho = spectral_density_of(
                WaveSource::Sampled(&wave),
                &WaveVector::new(k, l),
                tol,
            )?;
            rows.push(vec![Cell::Num(k), Cell::Num(l), Cell::Num(rho)]);
        }
    }
    Ok(Output {
        header: vec!["k", "lambda", "rho"],
        rows,
        summary: vec![("samples".to_string(), json!(wave.xs().len()))],
        csv_comments: Vec::new(),
    })
}
