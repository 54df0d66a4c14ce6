//! The `scs` command line. JSON results go to stdout (or `-o`), diagnostics
//! to stderr. Exit codes: 0 success, 1 negative verdict, 2 usage or input
//! error, 3 resource cap.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::config::Limits;
use crate::covering::{fold_subgroup, PreCoveringDoc};
use crate::error::{Error, Result};
use crate::free_witness::{scs_witness, sics_witness, verify_certificate_json, SCHEMA_VERSION};
use crate::gluing::glue_stars;
use crate::gog::{check_normalizer_condition, GPath, GraphOfGroups};
use crate::kcover::{build_k, KStrategy};
use crate::subgroup_graph::SubgroupGraph;
use crate::verify::Verdict;
use crate::vf::{verify_vf_certificate_json, vf_conj_into_decide, vf_sics_witness, VfDecision, VfOptions};
use crate::words::{parse_word_list, Alphabet};

#[derive(Parser, Debug)]
#[command(name = "scs", about = "Conjugacy separability witnesses for subgroups", disable_version_flag = true)]
pub struct Cli {
    /// Print the package and certificate schema versions.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free groups.
    #[command(subcommand)]
    Free(FreeCommand),
    /// Glue r-stars to s-stars without short cycles.
    Glue {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Finite trees of finite groups.
    #[command(subcommand)]
    Gog(GogCommand),
    /// Witnesses in fundamental groups of finite trees of finite groups.
    #[command(subcommand)]
    Vf(VfCommand),
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON result here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FreePair {
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Comma-separated generators of H1.
    #[arg(long)]
    h1: String,
    /// Comma-separated generators of H2.
    #[arg(long)]
    h2: String,
    /// `exact` or `random:SEED:DEGREE`.
    #[arg(long = "k", default_value = "exact")]
    k: String,
}

#[derive(Subcommand, Debug)]
enum FreeCommand {
    /// Certificate that H2 is not conjugate into H1.
    Witness {
        #[command(flatten)]
        pair: FreePair,
        #[command(flatten)]
        out: Output,
    },
    /// Re-check a certificate file.
    Verify { file: PathBuf },
    /// Decide conjugacy of H1 and H2 with a conjugator or a certificate.
    Conj {
        #[command(flatten)]
        pair: FreePair,
        #[command(flatten)]
        out: Output,
    },
    /// Folded subgroup graph of the given generators.
    Fold {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        saturate: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Finite regular cover with no cycle of length at most C.
    GirthCover {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        c: usize,
        #[arg(long = "k", default_value = "exact")]
        k: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum GogCommand {
    /// Validate a graph of groups and report the normalizer condition.
    Check { file: PathBuf },
    /// Reduce a path `g@v : e : g@v : ...`.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        path: String,
    },
    /// Folded pre-covering of the subgroup generated by closed paths.
    Fold {
        file: PathBuf,
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        out: Output,
    },
    /// Validate a pre-covering document `{gog, precovering}`.
    Validate { file: PathBuf },
}

#[derive(Args, Debug)]
struct VfPair {
    file: PathBuf,
    #[arg(long)]
    h1: String,
    #[arg(long)]
    h2: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Proceed when the normalizer condition is not verified.
    #[arg(long)]
    assume_normalizer_condition: bool,
}

#[derive(Subcommand, Debug)]
enum VfCommand {
    Witness {
        #[command(flatten)]
        pair: VfPair,
        #[command(flatten)]
        out: Output,
    },
    Verify { file: PathBuf },
    /// Decide whether H2 is conjugate into H1.
    Decide {
        #[command(flatten)]
        pair: VfPair,
        #[command(flatten)]
        out: Output,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    if cli.version {
        emit(&json!({"scs": env!("CARGO_PKG_VERSION"), "schema_version": SCHEMA_VERSION}), None)?;
        return Ok(0);
    }
    let Some(command) = cli.command else {
        return Err(Error::InvalidInput("missing subcommand (try --help)".into()));
    };
    let limits = Limits::from_env();
    match command {
        Command::Free(c) => free(c, &limits),
        Command::Glue { r, s, t, seed, out } => {
            let g = glue_stars(r, s, t, seed, &limits)?;
            emit(&g, out.output.as_deref())?;
            Ok(0)
        }
        Command::Gog(c) => gog(c),
        Command::Vf(c) => vf(c, &limits),
    }
}

fn free(command: FreeCommand, limits: &Limits) -> Result<i32> {
    match command {
        FreeCommand::Witness { pair, out } => {
            let (a, h1, h2, k) = free_pair(&pair)?;
            let cert = sics_witness(a, &h1, &h2, k, limits)?;
            emit(&cert, out.output.as_deref())?;
            Ok(0)
        }
        FreeCommand::Verify { file } => report(verify_certificate_json(&read(&file)?)),
        FreeCommand::Conj { pair, out } => {
            let (a, h1, h2, k) = free_pair(&pair)?;
            emit(&scs_witness(a, &h1, &h2, k, limits)?, out.output.as_deref())?;
            Ok(0)
        }
        FreeCommand::Fold { rank, gens, saturate, out } => {
            let a = Alphabet::new(rank)?;
            let g = SubgroupGraph::fold_generators(a, &parse_word_list(&gens, a)?)?;
            let g = if saturate { g.saturate() } else { g };
            emit(&g.to_json(), out.output.as_deref())?;
            Ok(0)
        }
        FreeCommand::GirthCover { rank, c, k, out } => {
            let cert = build_k(Alphabet::new(rank)?, c, k.parse()?, limits)?;
            emit(&cert, out.output.as_deref())?;
            Ok(0)
        }
    }
}

type FreeInputs = (Alphabet, Vec<crate::words::ReducedWord>, Vec<crate::words::ReducedWord>, KStrategy);

fn free_pair(pair: &FreePair) -> Result<FreeInputs> {
    let a = Alphabet::new(pair.rank)?;
    Ok((a, parse_word_list(&pair.h1, a)?, parse_word_list(&pair.h2, a)?, pair.k.parse()?))
}

fn gog(command: GogCommand) -> Result<i32> {
    match command {
        GogCommand::Check { file } => {
            let g = load_gog(&file)?;
            let verdict = check_normalizer_condition(&g);
            let v = json!({
                "valid": true,
                "vertices": g.num_vertices(),
                "edges": g.num_edges(),
                "base": g.base(),
                "normalizer_condition": verdict,
            });
            emit(&v, None)?;
            Ok(0)
        }
        GogCommand::Reduce { file, path } => {
            let g = load_gog(&file)?;
            let p = GPath::parse(&path, &g)?;
            let reduced = p.reduce(&g);
            let length = reduced.length(&g).ok();
            let v = json!({
                "input": p.display(&g).to_string(),
                "reduced": reduced.display(&g).to_string(),
                "normal_form": p.normal_form(&g).display(&g).to_string(),
                "edges": reduced.len(),
                "length": length,
            });
            emit(&v, None)?;
            Ok(0)
        }
        GogCommand::Fold { file, gens, out } => {
            let g = load_gog(&file)?;
            let gens = GPath::parse_list(&gens, &g)?;
            let pre = fold_subgroup(&g, &gens)?;
            emit(&PreCoveringDoc { gog: g, precovering: pre }, out.output.as_deref())?;
            Ok(0)
        }
        GogCommand::Validate { file } => {
            let doc: PreCoveringDoc = serde_json::from_str(&read(&file)?)?;
            report(doc.precovering.validate(&doc.gog))
        }
    }
}

fn vf(command: VfCommand, limits: &Limits) -> Result<i32> {
    match command {
        VfCommand::Witness { pair, out } => {
            let (g, h1, h2, options) = vf_pair(&pair)?;
            let cert = vf_sics_witness(&g, &h1, &h2, pair.seed, options, limits)?;
            emit(&cert, out.output.as_deref())?;
            Ok(0)
        }
        VfCommand::Verify { file } => report(verify_vf_certificate_json(&read(&file)?)),
        VfCommand::Decide { pair, out } => {
            let (g, h1, h2, options) = vf_pair(&pair)?;
            let decision = vf_conj_into_decide(&g, &h1, &h2, pair.seed, options, limits)?;
            if let VfDecision::ConjInto { conjugator } = &decision {
                eprintln!("H2 is conjugate into H1 by {conjugator}");
            }
            emit(&decision, out.output.as_deref())?;
            Ok(0)
        }
    }
}

fn vf_pair(pair: &VfPair) -> Result<(GraphOfGroups, Vec<GPath>, Vec<GPath>, VfOptions)> {
    let g = load_gog(&pair.file)?;
    let h1 = GPath::parse_list(&pair.h1, &g)?;
    let h2 = GPath::parse_list(&pair.h2, &g)?;
    Ok((g, h1, h2, VfOptions { assume_normalizer_condition: pair.assume_normalizer_condition }))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_gog(path: &Path) -> Result<GraphOfGroups> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Prints a verification outcome; exit 1 with the reason code when rejected.
fn report(verdict: Verdict) -> Result<i32> {
    match verdict {
        Ok(()) => {
            emit(&json!({"valid": true}), None)?;
            Ok(0)
        }
        Err(r) => {
            eprintln!("rejected: {r}");
            emit(&json!({"valid": false, "code": r.code, "detail": r.detail}), None)?;
            Ok(1)
        }
    }
}
