use std::path::PathBuf;

use clap::Args;
use cone_morse::dec_grid::ConstantForm;
use cone_morse::witten_spectral::{
    run_scan, ScanConfig, ScanPoint, DEFAULT_BUMP_RADIUS, DEFAULT_THRESHOLD, SCAN_SCHEMA_VERSION,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::format::{float, opt_float, table, write_csv, write_json};

#[derive(Debug, Clone, Default, Args)]
pub struct SpectrumArgs {
    /// TOML file with any of the fields below; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Cells per axis.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated T values.
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    /// Schedule constant in S = exp(c0 T); defaults to 1 + 2 max|f|.
    #[arg(long)]
    pub c0: Option<f64>,
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Coefficient c of ω = c dx; 0 gives the direct sum.
    #[arg(long, allow_negative_numbers = true)]
    pub omega_dx: Option<f64>,
    #[arg(long)]
    pub bump_radius: Option<f64>,
    /// Run scan points one after another.
    #[arg(long)]
    pub serial: bool,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub defects_csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumFile {
    n: Option<usize>,
    t: Option<Vec<f64>>,
    c0: Option<f64>,
    threshold: Option<f64>,
    omega_dx: Option<f64>,
    bump_radius: Option<f64>,
    serial: Option<bool>,
    csv: Option<PathBuf>,
    defects_csv: Option<PathBuf>,
    json: Option<PathBuf>,
}

/// Resolved settings for one spectral scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub scan: ScanConfig,
    pub csv: Option<PathBuf>,
    pub defects_csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

pub fn resolve(args: &SpectrumArgs) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(&path.display().to_string(), e))?;
            toml::from_str::<SpectrumFile>(&text)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?
        }
        None => SpectrumFile::default(),
    };
    let n = args.n.or(file.n).unwrap_or(16);
    let ts = args
        .t
        .clone()
        .or(file.t)
        .unwrap_or_else(|| vec![4.0, 6.0, 8.0, 10.0, 12.0]);
    if ts.is_empty() {
        return Err(CliError::Validation("T list must be nonempty".into()));
    }
    if n < 4 {
        return Err(CliError::Validation(format!("n must be at least 4, got {n}")));
    }
    let omega_dx = args.omega_dx.or(file.omega_dx).unwrap_or(1.0);
    let mut scan = ScanConfig::torus(n, omega_dx, ts);
    scan.c0 = args.c0.or(file.c0);
    scan.threshold = args.threshold.or(file.threshold).unwrap_or(DEFAULT_THRESHOLD);
    scan.bump_radius = args.bump_radius.or(file.bump_radius).unwrap_or(DEFAULT_BUMP_RADIUS);
    scan.parallel = !(args.serial || file.serial.unwrap_or(false));
    if omega_dx == 0.0 {
        scan.omega = ConstantForm::zero(2, 1);
    }
    Ok(RunConfig {
        scan,
        csv: args.csv.clone().or(file.csv),
        defects_csv: args.defects_csv.clone().or(file.defects_csv),
        json: args.json.clone().or(file.json),
    })
}

pub const DEGREE_HEADER: [&str; 16] = [
    "t",
    "log_s",
    "s",
    "degree",
    "dim",
    "low_count",
    "gap_ratio",
    "gap_low_count",
    "modes_agree",
    "zero_count",
    "largest_low",
    "smallest_high",
    "instanton_dim",
    "rank",
    "cohomology",
    "max_defect",
];

pub const DEFECT_HEADER: [&str; 6] = ["t", "label", "index", "summand", "degree", "defect"];

fn degree_rows(points: &[ScanPoint]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for p in points {
        for (i, d) in p.degrees.iter().enumerate() {
            let inst = p.instanton.as_ref().ok().map(|c| &c.degrees[i]);
            let max_defect = p
                .defects
                .iter()
                .filter(|x| x.degree == d.degree)
                .map(|x| x.defect)
                .reduce(f64::max);
            rows.push(vec![
                float(p.t),
                float(p.log_s),
                float(p.log_s.exp()),
                d.degree.to_string(),
                d.dim.to_string(),
                d.low_count.to_string(),
                float(d.gap_ratio),
                d.gap_low_count.to_string(),
                d.modes_agree.to_string(),
                d.zero_count.to_string(),
                opt_float(d.largest_low),
                opt_float(d.smallest_high),
                inst.map(|x| x.dim.to_string()).unwrap_or_default(),
                inst.map(|x| x.rank.to_string()).unwrap_or_default(),
                inst.map(|x| x.cohomology.to_string()).unwrap_or_default(),
                opt_float(max_defect),
            ]);
        }
    }
    rows
}

fn defect_rows(points: &[ScanPoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .flat_map(|p| {
            p.defects.iter().map(move |d| {
                vec![
                    float(p.t),
                    d.label.clone(),
                    d.index.to_string(),
                    format!("{:?}", d.summand).to_lowercase(),
                    d.degree.to_string(),
                    float(d.defect),
                ]
            })
        })
        .collect()
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    scan_schema_version: u32,
    config: &'a ScanConfig,
    points: &'a [ScanPoint],
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let cfg = resolve(args)?;
    let points = run_scan(&cfg.scan)?;
    let rows = degree_rows(&points);
    let shown = [0usize, 3, 5, 6, 9, 13, 14, 15];
    let header: Vec<&str> = shown.iter().map(|&i| DEGREE_HEADER[i]).collect();
    let short: Vec<Vec<String>> = rows
        .iter()
        .map(|r| shown.iter().map(|&i| r[i].clone()).collect())
        .collect();
    println!("{}", table(&header, &short));
    for p in &points {
        if let Err(e) = &p.instanton {
            eprintln!("T = {}: {e}", float(p.t));
        }
    }
    if let Some(path) = &cfg.csv {
        write_csv(path, &DEGREE_HEADER, &rows)?;
    }
    if let Some(path) = &cfg.defects_csv {
        write_csv(path, &DEFECT_HEADER, &defect_rows(&points))?;
    }
    if let Some(path) = &cfg.json {
        let doc = SpectrumJson {
            scan_schema_version: SCAN_SCHEMA_VERSION,
            config: &cfg.scan,
            points: &points,
        };
        write_json(path, "spectrum", &doc)?;
    }
    Ok(())
}
