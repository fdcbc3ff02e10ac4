//! `sedf` — verify, construct, analyze and classify strong external
//! difference families and partial difference sets in finite abelian groups.
//!
//! Exit codes: 0 success/verified; 1 verification failed, nonexistent-only
//! query, empty-handed search abort; 2 usage or input error; 3 internal
//! assertion failure. All diagnostics are single lines on stderr.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sedf_core::constructions::{
    construct_k2plus1, construct_m11_sedf, construct_paley_pds, sedf_from_pds,
};
use sedf_core::designs::{
    exhaustive_sedf_search, spectrum, verify_edf, verify_pds, verify_sedf, FamilyDocument,
};
use sedf_core::error::Error;
use sedf_core::facts::KnownFactsTable;
use sedf_core::filters::{
    classify_range, filter_classify, group_constraints, FilterConfig, ParamSet, Preset, Status,
};
use sedf_core::group::parse_group_spec;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "sedf",
    version,
    about = "strong external difference family toolkit"
)]
struct Cli {
    /// Progress chatter on stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Document,
    PlainTable,
}

#[derive(Subcommand)]
enum Command {
    /// Check a family file against the SEDF / EDF / PDS axioms.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        /// Family file; `-` reads stdin.
        #[arg(long, default_value = "-")]
        family: String,
        #[arg(long, value_enum, default_value = "plain-table")]
        format: Format,
    },
    /// Emit a constructed family as a family document on stdout.
    Construct {
        #[command(subcommand)]
        which: ConstructCmd,
    },
    /// Exact character spectrum of a verified SEDF.
    Spectrum {
        #[arg(long, default_value = "-")]
        family: String,
        #[arg(long, value_enum, default_value = "document")]
        format: Format,
    },
    /// Classify all parameter sets in a range through the filter battery.
    Classify(ClassifyArgs),
    /// Per-group exponent constraints for one parameter set.
    Groups {
        /// v,m,k,lambda
        #[arg(long)]
        params: String,
        #[arg(long, default_value = "full")]
        preset: String,
        #[arg(long, value_enum, default_value = "plain-table")]
        format: Format,
    },
    /// Exhaustive SEDF search in one group (small orders).
    Search {
        /// Group spec, e.g. `3^5`, `243`, `4x2`.
        #[arg(long)]
        group: String,
        /// v,m,k,lambda (v must equal the group order)
        #[arg(long)]
        params: String,
        /// Node budget for the backtracking search.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "document")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Sedf,
    Edf,
    Pds,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// The (243,11,22,20) family in Z_3^5 from projective point orbits.
    M11,
    /// The (k^2+1, 2, k, 1) family in the cyclic group.
    K2plus1 {
        #[arg(long)]
        k: u64,
    },
    /// Quadratic-residue PDS modulo a prime p = 1 (mod 4), as a single-set
    /// document with the PDS lambda and mu filled in.
    Paley {
        #[arg(long)]
        p: u64,
        /// Emit the near-complete two-set family instead of the bare PDS.
        #[arg(long)]
        as_sedf: bool,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    v_max: u64,
    #[arg(long, default_value_t = 2)]
    m_min: u64,
    /// Defaults to unbounded (v-max caps it anyway).
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long, default_value = "full")]
    preset: String,
    /// Also classify near-complete parameter sets (v = km + 1).
    #[arg(long)]
    include_near_complete: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads for the classification map.
    #[arg(long)]
    jobs: Option<usize>,
    /// Cache directory (default $SEDF_CACHE_DIR, then ~/.cache/sedf).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Disable the result cache.
    #[arg(long)]
    no_cache: bool,
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let code = match &e {
                Error::Internal(_) => 3u8,
                Error::NotSedf(_) | Error::BudgetExceeded { .. } => 1,
                _ => 2,
            };
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

fn read_family_text(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Document(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Document(format!("reading {path}: {e}")))
    }
}

fn parse_params(text: &str) -> Result<ParamSet, Error> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidParams(format!("cannot parse `{text}` as v,m,k,lambda")))?;
    let [v, m, k, lambda] = parts.as_slice() else {
        return Err(Error::InvalidParams("expected exactly v,m,k,lambda".into()));
    };
    ParamSet::new(*v, *m, *k, *lambda)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify {
            kind,
            family,
            format,
        } => cmd_verify(kind, &family, format),
        Command::Construct { which } => cmd_construct(which),
        Command::Spectrum { family, format } => cmd_spectrum(&family, format),
        Command::Classify(args) => cmd_classify(args, cli.verbose),
        Command::Groups {
            params,
            preset,
            format,
        } => cmd_groups(&params, &preset, format),
        Command::Search {
            group,
            params,
            budget,
            format,
        } => cmd_search(&group, &params, budget, format),
    }
}

fn cmd_verify(kind: VerifyKind, path: &str, format: Format) -> Result<ExitCode, Error> {
    let doc = FamilyDocument::parse(&read_family_text(path)?)?;
    let report = match kind {
        VerifyKind::Sedf | VerifyKind::Edf => {
            let family = doc.to_family()?;
            match kind {
                VerifyKind::Sedf => verify_sedf(&family)?,
                _ => verify_edf(&family)?,
            }
        }
        VerifyKind::Pds => {
            let group = parse_group_spec(&doc.group)?;
            let sets = doc.element_sets(&group)?;
            let [set] = sets.as_slice() else {
                return Err(Error::Document(
                    "pds verification expects exactly one set".into(),
                ));
            };
            let mu = doc
                .mu
                .ok_or_else(|| Error::Document("pds verification needs a `mu` field".into()))?;
            verify_pds(&group, set, set.len() as u64, doc.lambda, mu)?
        }
    };
    match format {
        Format::Document => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        _ => {
            let flags = format!(
                "near_complete={} contains_identity={} nontrivial={}{}",
                report.near_complete,
                report.contains_identity,
                report.set_nontrivial.iter().all(|&b| b),
                report
                    .regular
                    .map(|r| format!(" regular={r}"))
                    .unwrap_or_default()
            );
            if report.passed {
                println!("passed ({flags})");
            } else {
                let detail = report
                    .failure
                    .as_ref()
                    .map(|f| {
                        format!(
                            "set {} deviates on {} elements",
                            f.set_index,
                            f.deviations.len()
                        )
                    })
                    .unwrap_or_default();
                println!("failed: {detail} ({flags})");
            }
        }
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_construct(which: ConstructCmd) -> Result<ExitCode, Error> {
    let doc = match which {
        ConstructCmd::M11 => FamilyDocument::from_family(&construct_m11_sedf()?),
        ConstructCmd::K2plus1 { k } => FamilyDocument::from_family(&construct_k2plus1(k)?),
        ConstructCmd::Paley { p, as_sedf } => {
            let set = construct_paley_pds(p)?;
            if as_sedf {
                let group = parse_group_spec(&p.to_string())?;
                FamilyDocument::from_family(&sedf_from_pds(&group, &set)?)
            } else {
                FamilyDocument {
                    group: p.to_string(),
                    lambda: (p - 5) / 4,
                    mu: Some((p - 1) / 4),
                    sets: vec![set.into_iter().map(|e| e.coords).collect()],
                }
            }
        }
    };
    println!("{}", doc.to_json());
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(path: &str, format: Format) -> Result<ExitCode, Error> {
    let family = FamilyDocument::parse(&read_family_text(path)?)?.to_family()?;
    let report = spectrum(&family)?;
    match format {
        Format::Document | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap())
        }
        Format::PlainTable => {
            println!(
                "characters: {} vanishing on the union, {} not",
                report.vanishing_count, report.nonvanishing_count
            );
            let mut ab_seen = std::collections::BTreeMap::new();
            for e in &report.entries {
                if let Some(ab) = e.ab {
                    *ab_seen.entry(ab).or_insert(0usize) += 1;
                }
            }
            for (ab, n) in ab_seen {
                println!("pair (a,b) = ({},{}) on {n} characters", ab.0, ab.1);
            }
            for inc in &report.inconsistencies {
                println!("inconsistency: {inc}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cache_dir(args: &ClassifyArgs) -> Option<PathBuf> {
    if args.no_cache {
        return None;
    }
    if let Some(d) = &args.cache_dir {
        return Some(d.clone());
    }
    if let Ok(d) = std::env::var("SEDF_CACHE_DIR") {
        return Some(PathBuf::from(d));
    }
    std::env::var("HOME")
        .ok()
        .map(|h| PathBuf::from(h).join(".cache").join("sedf"))
}

fn cmd_classify(args: ClassifyArgs, verbose: u8) -> Result<ExitCode, Error> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    }
    let preset = Preset::parse(&args.preset)?;
    let m_max = args.m_max.unwrap_or(args.v_max);
    let key = format!(
        "classify-v{}-m{}-{}-{}-nc{}-{}.json",
        args.v_max,
        args.m_min,
        m_max,
        preset.name(),
        args.include_near_complete,
        VERSION
    );

    let cache_path = cache_dir(&args).map(|d| d.join(&key));
    if let Some(path) = &cache_path {
        if let Ok(text) = std::fs::read_to_string(path) {
            if verbose > 0 {
                eprintln!("cache hit: {}", path.display());
            }
            emit_classification_json(&text, args.format)?;
            return Ok(ExitCode::SUCCESS);
        }
    }

    if verbose > 0 {
        eprintln!(
            "classifying v <= {}, {} <= m <= {}, preset {}",
            args.v_max,
            args.m_min,
            m_max,
            preset.name()
        );
    }
    let cfg = FilterConfig::new(preset);
    let table = classify_range(
        args.v_max,
        args.m_min,
        m_max,
        &cfg,
        &KnownFactsTable,
        args.include_near_complete,
    );
    let json = serde_json::to_string(&table).unwrap();
    if let Some(path) = &cache_path {
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if std::fs::write(path, &json).is_ok() && verbose > 0 {
            eprintln!("cached: {}", path.display());
        }
    }
    emit_classification_json(&json, args.format)?;
    Ok(ExitCode::SUCCESS)
}

/// Renders a serialized classification table in the requested format. The
/// cache stores the document form, so both paths share this.
fn emit_classification_json(json: &str, format: Format) -> Result<(), Error> {
    match format {
        Format::Document => {
            println!("{json}");
            Ok(())
        }
        Format::Csv | Format::PlainTable => {
            let value: serde_json::Value =
                serde_json::from_str(json).map_err(|e| Error::Document(e.to_string()))?;
            let rows = value["rows"]
                .as_array()
                .ok_or_else(|| Error::Document("malformed cached table".into()))?;
            if format == Format::Csv {
                println!("v,m,k,lambda,status,filter_id,citation");
            }
            for row in rows {
                let p = &row["params"];
                let verdict = &row["verdict"];
                let status = verdict["status"].as_str().map(status_str).unwrap_or("?");
                let (fid, cite) = match verdict["reasons"].as_array().and_then(|r| r.first()) {
                    Some(r) => (
                        filter_id_str(&r["filter"]),
                        r["citation"].as_str().unwrap_or("").to_string(),
                    ),
                    None => (String::new(), String::new()),
                };
                if format == Format::Csv {
                    let quoted = if cite.contains(',') || cite.contains('"') {
                        format!("\"{}\"", cite.replace('"', "\"\""))
                    } else {
                        cite
                    };
                    println!(
                        "{},{},{},{},{},{},{}",
                        p["v"], p["m"], p["k"], p["lambda"], status, fid, quoted
                    );
                } else {
                    println!(
                        "({},{},{},{}) {} {}",
                        p["v"], p["m"], p["k"], p["lambda"], status, fid
                    );
                }
            }
            Ok(())
        }
    }
}

fn status_str(s: &str) -> &'static str {
    match s {
        "Trivial" => "TRIVIAL",
        "Exists" => "EXISTS",
        "Nonexistent" => "NONEXISTENT",
        "Open" => "OPEN",
        "OpenNearCompletePdsReduced" => "OPEN_NEAR_COMPLETE_PDS_REDUCED",
        _ => "?",
    }
}

fn filter_id_str(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => match s.as_str() {
            "Triv" => "F-triv".into(),
            "M2KPrime" => "F-M2KP".into(),
            "TwoPrime" => "F-2P".into(),
            "Exp" => "F-EXP".into(),
            "ExpBoundary" => "F-EXP-B".into(),
            "Ab" => "F-AB".into(),
            "Syl" => "F-SYL".into(),
            "Scvp" => "F-SCVP".into(),
            "Pp" => "F-PP".into(),
            "PpScvp" => "F-PP-SCVP".into(),
            "NearComplete" => "F-NC".into(),
            "Facts" => "F-FACTS".into(),
            "DerivedBound" => "F-DERIVED".into(),
            "ExpSelfConjugate" => "F-EXP2".into(),
            other => other.into(),
        },
        serde_json::Value::Object(map) => map
            .get("P4")
            .and_then(|i| i.as_u64())
            .map(|i| format!("F-P4-{i}"))
            .unwrap_or_else(|| v.to_string()),
        _ => v.to_string(),
    }
}

fn cmd_groups(params: &str, preset: &str, format: Format) -> Result<ExitCode, Error> {
    let p = parse_params(params)?;
    let cfg = FilterConfig::new(Preset::parse(preset)?);
    let verdict = filter_classify(&p, &cfg, &KnownFactsTable);
    if verdict.status == Status::Nonexistent {
        let reason = verdict
            .reasons
            .first()
            .map(|r| format!("{}: {}", r.filter.id(), r.citation))
            .unwrap_or_default();
        println!("{p} NONEXISTENT ({reason})");
        return Ok(ExitCode::from(1));
    }
    let report = group_constraints(&p, &cfg, &KnownFactsTable)?;
    match format {
        Format::Document | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap())
        }
        Format::PlainTable => {
            println!("{p} {}", verdict.status.as_str());
            if let Some(ab) = report.scvp_pair {
                println!(
                    "forced pair (a,b) = ({},{}); |G^0| = {}",
                    ab.a,
                    ab.b,
                    report.vanishing_class_size.as_deref().unwrap_or("-")
                );
            }
            for gc in &report.groups {
                let caps: Vec<String> = gc
                    .caps
                    .iter()
                    .map(|c| format!("exp(G_{}) <= {} (bound {})", c.prime, c.cap, c.bound))
                    .collect();
                println!(
                    "group {}: {} {}",
                    gc.spec_string,
                    if gc.allowed { "allowed" } else { "excluded" },
                    caps.join("; ")
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(group: &str, params: &str, budget: u64, format: Format) -> Result<ExitCode, Error> {
    let g = parse_group_spec(group)?;
    let p = parse_params(params)?;
    if p.v != g.order() {
        return Err(Error::InvalidParams(format!(
            "group order {} does not match v = {}",
            g.order(),
            p.v
        )));
    }
    let found = exhaustive_sedf_search(&g, p.m, p.k, p.lambda, budget)?;
    match format {
        Format::Document | Format::Csv => {
            let docs: Vec<FamilyDocument> = found.iter().map(FamilyDocument::from_family).collect();
            println!("{}", serde_json::to_string_pretty(&docs).unwrap());
        }
        Format::PlainTable => {
            println!("{} families up to translation", found.len());
            for f in &found {
                let sets: Vec<Vec<u64>> = f
                    .sets()
                    .iter()
                    .map(|s| s.iter().map(|e| f.group().encode(e)).collect())
                    .collect();
                println!("{sets:?}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        assert!(parse_params("243,11,22,20").is_ok());
        assert!(parse_params("243, 11, 22, 20").is_ok());
        assert!(parse_params("243,11,22").is_err());
        assert!(parse_params("243,11,22,21").is_err()); // counting relation
    }
}
