use std::path::{Path, PathBuf};

use cone_morse::complex_core::{
    decompose_cohomology, mapping_cone, morse_equalities, morse_inequalities, random_pair,
    rank_q, ChainMapPair, DecompositionEntry, EqualityReport, InequalityReport,
    RandomPairConfig,
};
use cone_morse::morse_model::{builtin, load, validate, MorseData, BUILTIN_NAMES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::format::{table, write_json};

/// A path if it exists on disk, otherwise a builtin name.
pub fn resolve(source: &str) -> Result<MorseData, CliError> {
    let path = Path::new(source);
    if path.exists() || source.contains('/') || source.ends_with(".toml") {
        return Ok(load(path)?);
    }
    if BUILTIN_NAMES.contains(&source) {
        return Ok(builtin(source)?);
    }
    Err(CliError::Io(format!(
        "no file '{source}' and no builtin of that name (builtins: {})",
        BUILTIN_NAMES.join(", ")
    )))
}

pub fn cmd_validate(source: &str) -> Result<(), CliError> {
    let data = resolve(source)?;
    let v = validate(&data)?;
    println!("{}: valid (m = {}, ℓ = {})", data.name, data.manifold_dim, data.ell);
    let rows: Vec<Vec<String>> = v
        .mu
        .iter()
        .enumerate()
        .map(|(k, mu)| vec![k.to_string(), mu.to_string(), v.basis[k].join(" ")])
        .collect();
    println!("{}", table(&["k", "mu", "points"], &rows));
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct CohomologyRow {
    pub degree: i32,
    pub mu: usize,
    pub betti: usize,
    pub cone_betti: usize,
    pub cone_rank: usize,
    pub cup_rank: usize,
}

#[derive(Debug, Serialize)]
pub struct CohomologyReport {
    pub name: String,
    pub ell: usize,
    pub rows: Vec<CohomologyRow>,
}

fn at(v: &[usize], k: i32) -> usize {
    usize::try_from(k).ok().and_then(|i| v.get(i).copied()).unwrap_or(0)
}

pub fn cohomology_report(name: &str, pair: &ChainMapPair) -> Result<CohomologyReport, CliError> {
    let cone = mapping_cone(pair)?;
    let betti = pair.base_complex().cohomology_dims();
    let cone_betti = cone.cohomology_dims();
    let rows = cone
        .degrees()
        .zip(cone_betti)
        .map(|(k, b)| CohomologyRow {
            degree: k,
            mu: at(pair.mu(), k),
            betti: at(&betti, k),
            cone_betti: b,
            cone_rank: cone.rank(k),
            cup_rank: rank_q(&pair.cone(k)),
        })
        .collect();
    Ok(CohomologyReport {
        name: name.to_string(),
        ell: pair.ell(),
        rows,
    })
}

pub fn cmd_cohomology(source: &str, json: Option<&PathBuf>) -> Result<(), CliError> {
    let data = resolve(source)?;
    let v = validate(&data)?;
    let report = cohomology_report(&data.name, &v.pair)?;
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.mu.to_string(),
                r.betti.to_string(),
                r.cone_betti.to_string(),
                r.cone_rank.to_string(),
                r.cup_rank.to_string(),
            ]
        })
        .collect();
    println!("{} (ℓ = {})", report.name, report.ell);
    println!("{}", table(&["k", "mu_k", "b_k", "b^w_k", "R_k", "v_k"], &rows));
    if let Some(path) = json {
        write_json(path, "cohomology", &report)?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub equalities: EqualityReport,
    pub inequalities: InequalityReport,
    pub decomposition: Vec<DecompositionEntry>,
    pub pass: bool,
}

pub fn identity_report(name: &str, pair: &ChainMapPair) -> Result<IdentityReport, CliError> {
    let mu = pair.mu().to_vec();
    let equalities = morse_equalities(pair, &mu)?;
    let inequalities = morse_inequalities(pair, &mu)?;
    let decomposition = decompose_cohomology(pair)?;
    let pass = equalities.pass && inequalities.pass;
    Ok(IdentityReport {
        name: name.to_string(),
        equalities,
        inequalities,
        decomposition,
        pass,
    })
}

fn print_identities(r: &IdentityReport) {
    println!("{}", r.name);
    let rows: Vec<Vec<String>> = r
        .equalities
        .rows
        .iter()
        .zip(&r.inequalities.rows)
        .zip(&r.decomposition)
        .map(|((e, i), d)| {
            vec![
                e.degree.to_string(),
                e.rank.to_string(),
                e.residue.to_string(),
                i.slack.to_string(),
                format!("({}, {})", d.coker, d.ker),
                d.cone_betti.to_string(),
            ]
        })
        .collect();
    println!(
        "{}",
        table(&["k", "R_k", "residue", "slack", "(coker, ker)", "b^w_k"], &rows)
    );
    println!("{}", if r.pass { "pass" } else { "FAIL" });
}

pub fn cmd_corollaries(
    source: Option<&str>,
    random: Option<usize>,
    seed: u64,
    json: Option<&PathBuf>,
) -> Result<(), CliError> {
    let mut reports = Vec::new();
    if let Some(source) = source {
        let data = resolve(source)?;
        let v = validate(&data)?;
        reports.push(identity_report(&data.name, &v.pair)?);
    }
    if let Some(count) = random {
        let cfg = RandomPairConfig::default();
        for i in 0..count {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let pair = random_pair(&mut rng, &cfg);
            reports.push(identity_report(&format!("random#{i} (seed {})", seed.wrapping_add(i as u64)), &pair)?);
        }
    }
    if reports.is_empty() {
        return Err(CliError::Validation("give a dataset or --random N".into()));
    }
    if source.is_some() {
        print_identities(&reports[0]);
    }
    if random.is_some() {
        let batch = &reports[source.is_some() as usize..];
        let passed = batch.iter().filter(|r| r.pass).count();
        println!("random batch: {passed}/{} pass", batch.len());
        for r in batch.iter().filter(|r| !r.pass) {
            print_identities(r);
        }
    }
    if let Some(path) = json {
        write_json(path, "corollaries", &reports)?;
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(CliError::Validation("identity check failed".into()))
    }
}
