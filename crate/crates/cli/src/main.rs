use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ncp_cli::{
    cmd_export, cmd_table, cmd_verify, parse_ctype, parse_families, parse_gamma_perm,
    payload_bytes, render_report_text, render_table_csv, render_table_text, write_output,
    CacheConfig, ExportObject, Method, VerifyOptions,
};
use ncp_core::kdiv::DEFAULT_ELEMENT_CAP;

/// Exact engine for finite Coxeter groups and k-divisible noncrossing
/// partition posets, with multi-route Möbius-number verification.
#[derive(Parser)]
#[command(name = "ncp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Family: a | b | d | i2 | h3 | f4
    #[arg(long = "type")]
    family: String,
    /// Rank (required for a/b/d)
    #[arg(long)]
    rank: Option<usize>,
    /// Dihedral order m (required for i2)
    #[arg(long)]
    m: Option<u32>,
    /// Order of simple generators in the Coxeter element, e.g. "1,0,2"
    #[arg(long = "gamma-perm")]
    gamma_perm: Option<String>,
}

#[derive(Args, Clone)]
struct CacheArgs {
    /// Cache directory (default: $NCP_CACHE_DIR or ./.ncp-cache)
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
    /// Bypass the cache entirely
    #[arg(long = "no-cache")]
    no_cache: bool,
}

impl CacheArgs {
    fn config(&self) -> CacheConfig {
        CacheConfig {
            enabled: !self.no_cache,
            dir: self.cache_dir.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Möbius-number identity for one (W, k)
    Verify {
        #[command(flatten)]
        type_args: TypeArgs,
        /// Number of multichain entries
        #[arg(short)]
        k: u64,
        /// recursion | shelling | both
        #[arg(long, default_value = "both")]
        method: String,
        /// text | json
        #[arg(long, default_value = "text")]
        format: String,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Element cap for poset constructions
        #[arg(long = "max-elements", default_value_t = DEFAULT_ELEMENT_CAP)]
        max_elements: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Run the verification grid over several types and k values
    Table {
        /// Comma-separated families, e.g. "a,b,d,i2,h3"
        #[arg(long, default_value = "a,b,d,i2,h3")]
        families: String,
        #[arg(long = "max-rank", default_value_t = 4)]
        max_rank: usize,
        #[arg(long = "max-k", default_value_t = 3)]
        max_k: u64,
        /// text | csv | json
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "max-elements", default_value_t = DEFAULT_ELEMENT_CAP)]
        max_elements: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Export a structure: group | nc | nck | labeling
    Export {
        /// group | nc | nck | labeling
        #[arg(long)]
        object: String,
        #[command(flatten)]
        type_args: TypeArgs,
        /// Number of multichain entries (for nck / labeling)
        #[arg(short, default_value_t = 1)]
        k: u64,
        /// json | dot
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "max-elements", default_value_t = DEFAULT_ELEMENT_CAP)]
        max_elements: usize,
    },
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            type_args,
            k,
            method,
            format,
            out,
            max_elements,
            cache,
        } => {
            let ctype = parse_ctype(&type_args.family, type_args.rank, type_args.m)?;
            let gamma_perm = type_args
                .gamma_perm
                .as_deref()
                .map(parse_gamma_perm)
                .transpose()?;
            let opts = VerifyOptions {
                ctype,
                k,
                method: Method::parse(&method)?,
                gamma_perm,
                max_elements,
                cache: cache.config(),
            };
            let report = cmd_verify(&opts)?;
            let content = match format.as_str() {
                "text" => render_report_text(&report),
                "json" => {
                    // The payload keeps its canonical byte form; timings and
                    // cache provenance ride alongside.
                    let mut s = String::from_utf8(payload_bytes(&report.payload))?;
                    while s.ends_with('\n') {
                        s.pop();
                    }
                    format!(
                        "{{\"report\":{},\"timings_ms\":{},\"from_cache\":{}}}\n",
                        s,
                        serde_json::to_string(&report.timings_ms)?,
                        report.from_cache
                    )
                }
                other => anyhow::bail!("unknown format '{other}' (expected text|json)"),
            };
            write_output(out.as_deref(), &content)?;
            Ok(if report.payload.all_equal { 0 } else { 1 })
        }
        Command::Table {
            families,
            max_rank,
            max_k,
            format,
            out,
            max_elements,
            cache,
        } => {
            let fams = parse_families(&families)?;
            let cells = cmd_table(&fams, max_rank, max_k, &cache.config(), max_elements);
            let content = match format.as_str() {
                "text" => render_table_text(&cells),
                "csv" => render_table_csv(&cells),
                "json" => {
                    let mut s = serde_json::to_string_pretty(&cells)?;
                    s.push('\n');
                    s
                }
                other => anyhow::bail!("unknown format '{other}' (expected text|csv|json)"),
            };
            write_output(out.as_deref(), &content)?;
            let all_pass = cells.iter().all(|c| c.pass.unwrap_or(true));
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Export {
            object,
            type_args,
            k,
            format,
            out,
            max_elements,
        } => {
            let ctype = parse_ctype(&type_args.family, type_args.rank, type_args.m)?;
            let gamma_perm = type_args
                .gamma_perm
                .as_deref()
                .map(parse_gamma_perm)
                .transpose()?;
            let content = cmd_export(
                ExportObject::parse(&object)?,
                &ctype,
                k,
                &format,
                gamma_perm.as_deref(),
                max_elements,
            )?;
            write_output(out.as_deref(), &content)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
