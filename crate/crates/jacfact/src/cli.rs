use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use jacfact_core::{Budget, FieldConfig};

use crate::commands::{self, read_file, CommandError, DiscActionArg, GlueKind, MfObject};
use crate::corpus::run_corpus;
use crate::report::{OutputFormat, Report, RunConfig, Status};

/// Exact Jacobian rings, matrix factorizations and lattice gluing, with
/// checkable reports.
///
/// Exit codes: 0 all checks pass, 1 mathematical rejection or failed check,
/// 2 input error, 3 resource limit.
#[derive(Debug, Parser)]
#[command(name = "jacfact", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Coefficient field: `q` for the rationals or `fp:<p>` for a prime p > 3.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldConfig,
    /// Top degree for `mf lmf`, twist for `mf hom`.
    #[arg(long, global = true, default_value_t = 2)]
    pub degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Largest linear system, in matrix cells, a command may assemble.
    #[arg(long, global = true, default_value_t = Budget::default().max_cells)]
    pub budget: u64,
}

fn parse_field(s: &str) -> Result<FieldConfig, String> {
    FieldConfig::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function, socle degree, smoothness and pairing certificates.
    Jacring { file: PathBuf },
    /// Matrix factorizations from an `.mf` file or a `.poly` file.
    Mf {
        #[command(subcommand)]
        action: MfAction,
    },
    /// Discriminant forms, isometry groups, gluing and orientation.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Runs every acceptance criterion against a golden corpus.
    Corpus { dir: PathBuf },
}

#[derive(Debug, Args)]
pub struct MfInput {
    file: PathBuf,
    /// Object built from a `.poly` input.
    #[arg(long, value_enum, default_value_t = MfObject::Koszul)]
    object: MfObject,
}

#[derive(Debug, Subcommand)]
pub enum MfAction {
    Validate(MfInput),
    ShiftCheck(MfInput),
    Chainrule(MfInput),
    /// `Hom(P, P'(N))` modulo homotopy, `N` from `--degree`.
    Hom {
        #[command(flatten)]
        input: MfInput,
        /// Target object; defaults to the source.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// `⊕_{ℓ ≤ N} Hom(Q_0, Q_ℓ)` against the Jacobian ring.
    Lmf { file: PathBuf },
    /// Prints the object in `.mf` format.
    Export(MfInput),
}

#[derive(Debug, Subcommand)]
pub enum LatticeAction {
    /// Discriminant group, its quadratic form and invariant factors.
    Disc { gram: PathBuf },
    /// Isometry group of a definite lattice.
    Ogroup { gram: PathBuf },
    /// Overlattice from an anti-isometry of discriminant forms.
    Glue {
        gram1: PathBuf,
        gram2: PathBuf,
        #[arg(long, value_enum, default_value_t = GlueKind::Identity)]
        glue: GlueKind,
    },
    /// Extends `φ ⊕ g` to the glued overlattice when the discriminant
    /// actions agree.
    Extend {
        gram1: PathBuf,
        gram2: PathBuf,
        #[arg(long, value_enum, default_value_t = GlueKind::Identity)]
        glue: GlueKind,
        /// `id`, `neg-id`, `cycle`, `swap` or a matrix file.
        #[arg(long, default_value = "id")]
        phi: String,
        #[arg(long, default_value = "id")]
        g: String,
    },
    /// Whether an isometry preserves the orientation of positive subspaces.
    Orient {
        gram: PathBuf,
        #[arg(long, default_value = "id")]
        sigma: String,
        /// Rows of rational vectors spanning a maximal positive subspace;
        /// defaults to the coordinate basis for definite lattices.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Orientation-preserving isometries of `A_2` with a given action on
    /// its discriminant group.
    Lift {
        #[arg(long, value_enum)]
        action: DiscActionArg,
    },
}

/// Runs a parsed command line and returns the rendered output and exit code.
pub fn run(cli: &Cli, argv: &[String]) -> (String, i32) {
    let cfg = RunConfig {
        field: cli.global.field,
        max_degree: cli.global.degree,
        output: cli.global.output,
        budget: Budget {
            max_cells: cli.global.budget,
        },
    };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Corpus { dir } => return run_corpus_command(dir, &cfg),
        Command::Mf {
            action: MfAction::Export(input),
        } => {
            return match read_file(&input.file)
                .and_then(|text| commands::mf_export(&cfg, &input.file, &text, input.object))
            {
                Ok(text) => (text, 0),
                Err(e) => error_output(argv, &cfg, &e),
            };
        }
        Command::Jacring { file } => read_file(file).and_then(|t| commands::jacring(argv, &cfg, &t)),
        Command::Mf { action } => run_mf(action, argv, &cfg),
        Command::Lattice { action } => run_lattice(action, argv, &cfg),
    };
    match result {
        Ok(mut report) => {
            report.timing_ms = Some(start.elapsed().as_millis() as u64);
            let code = report.exit_code();
            (with_newline(report.render(cfg.output)), code)
        }
        Err(e) => error_output(argv, &cfg, &e),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn error_output(argv: &[String], cfg: &RunConfig, e: &CommandError) -> (String, i32) {
    let report = Report::error(argv, cfg.field, e.status(), &e.to_string());
    (with_newline(report.render(cfg.output)), report.exit_code())
}

fn run_mf(action: &MfAction, argv: &[String], cfg: &RunConfig) -> commands::CommandResult {
    match action {
        MfAction::Validate(i) => {
            let t = read_file(&i.file)?;
            commands::mf_validate(argv, cfg, &i.file, &t, i.object)
        }
        MfAction::ShiftCheck(i) => {
            let t = read_file(&i.file)?;
            commands::mf_shift_check(argv, cfg, &i.file, &t, i.object)
        }
        MfAction::Chainrule(i) => {
            let t = read_file(&i.file)?;
            commands::mf_chainrule(argv, cfg, &i.file, &t, i.object)
        }
        MfAction::Hom { input, target } => {
            let t = read_file(&input.file)?;
            let tt = target.as_ref().map(|p| read_file(p)).transpose()?;
            let tgt = target.as_deref().zip(tt.as_deref());
            commands::mf_hom(argv, cfg, &input.file, &t, tgt, cfg.max_degree as i64, input.object)
        }
        MfAction::Lmf { file } => {
            let t = read_file(file)?;
            commands::mf_lmf(argv, cfg, &t)
        }
        MfAction::Export(_) => unreachable!("handled by the caller"),
    }
}

fn run_lattice(action: &LatticeAction, argv: &[String], cfg: &RunConfig) -> commands::CommandResult {
    let load = |p: &PathBuf| read_file(p).and_then(|t| commands::load_lattice(p, &t));
    match action {
        LatticeAction::Disc { gram } => commands::lattice_disc(argv, cfg, gram, &read_file(gram)?),
        LatticeAction::Ogroup { gram } => commands::lattice_ogroup(argv, cfg, gram, &read_file(gram)?),
        LatticeAction::Glue { gram1, gram2, glue } => {
            commands::lattice_glue(argv, cfg, &load(gram1)?, &load(gram2)?, *glue)
        }
        LatticeAction::Extend {
            gram1,
            gram2,
            glue,
            phi,
            g,
        } => commands::lattice_extend(argv, cfg, &load(gram1)?, &load(gram2)?, *glue, phi, g),
        LatticeAction::Orient { gram, sigma, basis } => {
            let basis = basis.as_ref().map(|p| read_file(p)).transpose()?;
            commands::lattice_orient(argv, cfg, &load(gram)?, sigma, basis.as_deref())
        }
        LatticeAction::Lift { action } => commands::lattice_lift(argv, cfg, *action),
    }
}

fn run_corpus_command(dir: &std::path::Path, cfg: &RunConfig) -> (String, i32) {
    match run_corpus(dir, cfg.field, cfg.budget) {
        Ok(summary) => {
            let code = if summary.all_blocking_pass() { 0 } else { 1 };
            let text = match cfg.output {
                OutputFormat::Json => summary.to_json(),
                OutputFormat::Text => summary.to_text(),
            };
            (with_newline(text), code)
        }
        Err(e) => {
            let report = Report::error(&["corpus".to_string()], cfg.field, Status::Input, &e.to_string());
            (with_newline(report.render(cfg.output)), 2)
        }
    }
}
