//! Command-line front end and HTTP render service.

pub mod serve;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use css4code_core::layout::FontMetrics;
use css4code_core::pipeline::{render, Analysis, Diag, Lang, RenderRequest, Severity};
use css4code_core::sheet::load_stylesheet;
use css4code_core::tiny::tiny_registry;

#[derive(Debug, Parser)]
#[command(name = "css4code", version, about = "Render code through code style sheets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a program with a style sheet to HTML.
    Render(RenderArgs),
    /// Parse and check a style sheet.
    Check {
        #[arg(long)]
        sheet: PathBuf,
    },
    /// Serve the playground and the render endpoint.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LangArg {
    Tiny,
    Tally,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AnalysisArg {
    None,
    Names,
    Heat,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum, default_value = "tiny")]
    pub lang: LangArg,
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub sheet: PathBuf,
    #[arg(long, value_enum, default_value = "none")]
    pub analysis: AnalysisArg,
    #[arg(long)]
    pub entry: Option<String>,
    /// `mono` or `table:FILE`.
    #[arg(long, default_value = "mono")]
    pub metrics: String,
    /// Output file; standard output when absent.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dump_doc: Option<PathBuf>,
    #[arg(long)]
    pub dump_layout: Option<PathBuf>,
}

/// How a command ended, short of an I/O failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Clean,
    Diagnostics,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn report(file: &Path, d: &Diag) {
    let sev = match d.severity {
        Severity::Error => "error",
        Severity::Warning => "warning",
    };
    eprintln!("{}:{}:{}: {sev}: {}", file.display(), d.line, d.col, d.message);
}

/// Resolves `mono` or `table:FILE`. `Ok(Err(..))` is a malformed table.
pub fn load_metrics(spec: &str) -> anyhow::Result<Result<FontMetrics, String>> {
    if let Some(file) = spec.strip_prefix("table:") {
        let text = read(Path::new(file))?;
        return Ok(FontMetrics::from_table(&text).map_err(|e| format!("{file}: {e}")));
    }
    Ok(FontMetrics::preset(spec).map_err(|e| e.to_string()))
}

pub fn cmd_render(args: &RenderArgs) -> anyhow::Result<Status> {
    let code = read(&args.code)?;
    let sheet = read(&args.sheet)?;
    let metrics = match load_metrics(&args.metrics)? {
        Ok(m) => m,
        Err(msg) => {
            eprintln!("error: {msg}");
            return Ok(Status::Diagnostics);
        }
    };
    let mut req = RenderRequest::new(code, sheet);
    req.lang = match args.lang {
        LangArg::Tiny => Lang::Tiny,
        LangArg::Tally => Lang::Tally,
    };
    req.analysis = match args.analysis {
        AnalysisArg::None => Analysis::None,
        AnalysisArg::Names => Analysis::Names,
        AnalysisArg::Heat => Analysis::Heat,
    };
    req.entry = args.entry.clone();
    let out = render(&req, &metrics);
    for d in &out.diagnostics {
        let file = if d.message.starts_with("code:") { &args.code } else { &args.sheet };
        report(file, d);
    }
    if out.has_errors() {
        return Ok(Status::Diagnostics);
    }
    if let (Some(path), Some(doc)) = (&args.dump_doc, &out.doc) {
        write(path, &doc.to_json())?;
    }
    if let (Some(path), Some(l)) = (&args.dump_layout, &out.layout) {
        write(path, &serde_json::to_string_pretty(&l.to_json())?)?;
    }
    match &args.out {
        Some(path) => write(path, &out.html)?,
        None => print!("{}", out.html),
    }
    Ok(Status::Clean)
}

pub fn cmd_check(sheet: &Path) -> anyhow::Result<Status> {
    let text = read(sheet)?;
    match load_stylesheet(&text, &tiny_registry()) {
        Ok(rules) => {
            println!("{}: {} rule(s), ok", sheet.display(), rules.len());
            Ok(Status::Clean)
        }
        Err(ds) => {
            for d in ds {
                eprintln!("{}:{}:{}: error: {}", sheet.display(), d.line, d.col, d.message);
            }
            Ok(Status::Diagnostics)
        }
    }
}

pub fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Render(args) => cmd_render(&args),
        Command::Check { sheet } => cmd_check(&sheet),
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new().context("cannot start runtime")?;
            rt.block_on(serve::serve(port))?;
            bail!("server stopped")
        }
    }
}
