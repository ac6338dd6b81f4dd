//! `planeform`: finite projective planes and the projective-plane poetic form.
//!
//! Exit codes: 0 success or valid, 1 negative verdict, 2 usage or input error.

mod commands;

use std::net::IpAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "planeform",
    version,
    about = "Finite projective planes and the poems built on them"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and check incidence structures.
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Perfect difference sets.
    #[command(subcommand)]
    Diffset(DiffsetCmd),
    /// Ovals and conics.
    #[command(subcommand)]
    Oval(OvalCmd),
    /// The octonion table of the oriented Fano plane.
    #[command(subcommand)]
    Octonion(OctonionCmd),
    /// Poem forms: scaffold, validate, discover.
    #[command(subcommand)]
    Form(FormCmd),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Subcommand)]
pub enum PlaneCmd {
    /// Build PG(2,q) over GF(q).
    Build {
        q: i64,
        /// Also write the plane document to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the three axioms of a plane document.
    Check { file: PathBuf },
    /// Points, lines and incidence counts of a plane document.
    Stats { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum DiffsetCmd {
    /// Print the difference table of a residue set.
    Verify {
        n: usize,
        /// Comma-separated residues, e.g. 0,1,3.
        set: String,
    },
    /// Exhaustive search for perfect k-sets mod n.
    Search { n: usize, k: usize },
    /// Develop a perfect difference set into a plane.
    Develop {
        n: usize,
        set: String,
        /// Also write the plane document to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that i -> i+1 is a collineation of a developed plane document.
    Shift { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum OvalCmd {
    /// Compare the ovals of PG(2,q) with its conics.
    Segre {
        q: i64,
        /// Permit the slow q = 7 run.
        #[arg(long)]
        allow_long: bool,
    },
    /// List the ovals (or conics) of PG(2,q).
    List {
        q: i64,
        #[arg(long)]
        conics: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum OctonionCmd {
    /// Print the signed 8x8 basis table.
    Table,
    /// Multiply two basis elements (u, f0..f6).
    Mul { a: String, b: String },
    /// Check the algebraic laws of the table.
    Report {
        #[arg(long, default_value_t = planeform::octonion::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = planeform::octonion::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, clap::Args)]
#[command(group(ArgGroup::new("pattern").required(true).args(["form", "form_file"])))]
pub struct FormSelector {
    /// Name of a built-in form.
    #[arg(long)]
    pub form: Option<String>,
    /// Path of a form document.
    #[arg(long)]
    pub form_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum FormCmd {
    /// List the built-in forms.
    List,
    /// Print a form document.
    Show {
        #[command(flatten)]
        selector: FormSelector,
    },
    /// Fill a form with base lines, one per point.
    Scaffold {
        #[command(flatten)]
        selector: FormSelector,
        /// File whose i-th line is the text of point i.
        #[arg(long)]
        lines: PathBuf,
    },
    /// Check a poem against a form.
    Validate {
        #[command(flatten)]
        selector: FormSelector,
        #[arg(long, value_parser = ["exact", "normalized", "fuzzy"])]
        mode: String,
        /// Similarity threshold in [0, 1]; fuzzy mode only.
        #[arg(long)]
        threshold: Option<f64>,
        /// Poem file, or `-` for stdin.
        poem: PathBuf,
    },
    /// Recover an incidence structure from a poem's repeated lines.
    Discover {
        poem: PathBuf,
        /// Similarity threshold in (0, 1].
        #[arg(long)]
        threshold: Option<f64>,
    },
}

#[derive(Debug, clap::Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: IpAddr,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Register both orderings of a difference-set form, e.g. 21:3,6,7,12,14.
    #[arg(long = "diffset", value_name = "N:SET")]
    pub diffsets: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
