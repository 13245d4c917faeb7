mod commands;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semitoric::graded::SliceKind;
use semitoric::io::Input;
use semitoric::{datasets, DegreeBox, Error, FieldSpec};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use commands::Settings;
use report::{Exit, Report};

#[derive(Parser, Debug)]
#[command(
    name = "semitoric",
    version,
    about = "Seminormality and local cohomology of affine semigroup and toric face rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// JSON input file, or - for stdin
    #[arg(conflicts_with = "dataset", required_unless_present = "dataset")]
    input: Option<PathBuf>,
    /// bundled dataset name instead of a file
    #[arg(long)]
    dataset: Option<String>,
    /// degree box, e.g. -3..3 or 0..4,0..4
    #[arg(long = "box", default_value = "-3..3", allow_hyphen_values = true)]
    bx: DegreeBox,
    /// Q or a prime such as F2
    #[arg(long, default_value = "Q")]
    field: FieldSpec,
    /// search bound for seminormalization and localization membership
    #[arg(long, default_value_t = semitoric::semigroup::DEFAULT_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
    bound: u32,
    /// worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Cech,
    Ishida,
    Plus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seminormality and normality flags with generators of +M and the normalization
    Analyze(Common),
    /// Degree-wise cohomology of a Čech or Ishida-type complex over the box
    Cohomology {
        #[arg(long, value_enum, default_value_t = Kind::Cech)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Compare +I• with local cohomology at -a
    DualityCheck(Common),
    /// Nonvanishing local cohomology below the top index
    CmProbe(Common),
    /// Cohen-Macaulay evidence for R, +R and the cone-wise normalization
    CmChain(Common),
    /// Local cohomology of R against its seminormalization
    Compare(Common),
    /// Seminormality witnesses: H^i_m(R)_a ≠ 0 with -a outside the cone
    Probe(Common),
    /// Reduced cohomology of the underlying space from degree zero
    Topology(Common),
    /// Check the monoidal complex axioms
    Validate(Common),
    /// List bundled datasets
    Datasets,
}

fn read_input(c: &Common) -> Result<Vec<u8>, Error> {
    if let Some(name) = &c.dataset {
        return datasets::json(name)
            .map(|t| t.as_bytes().to_vec())
            .ok_or_else(|| Error::Malformed(format!("no bundled dataset {name:?}")));
    }
    let path = c.input.as_ref().expect("clap requires an input");
    let mut buf = Vec::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut buf).map(|_| ())
    } else {
        std::fs::read(path).map(|b| buf = b)
    };
    res.map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    Ok(buf)
}

fn run(
    name: &str,
    c: &Common,
    f: impl FnOnce(&Input, &Settings, &mut Report) -> semitoric::Result<()> + Send,
) -> ExitCode {
    let mut config = Map::new();
    config.insert("box".into(), Value::String(c.bx.to_string()));
    config.insert("field".into(), Value::String(c.field.to_string()));
    config.insert("bound".into(), c.bound.into());
    let bytes = read_input(c);
    let digest = bytes.as_ref().map(|b| hex::encode(Sha256::digest(b))).unwrap_or_default();
    let mut rep = Report::new(name, digest, config);
    let settings = Settings { bx: c.bx.clone(), field: c.field, bound: c.bound };
    let outcome = bytes.and_then(|b| {
        let text = String::from_utf8(b).map_err(|e| Error::Malformed(e.to_string()))?;
        let input = Input::from_json(&text)?;
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(c.jobs).build().map_err(|e| Error::Malformed(e.to_string()))?;
        pool.install(|| f(&input, &settings, &mut rep))
    });
    if let Err(e) = outcome {
        rep.exit = commands::exit_for(&e);
        rep.result = commands::error_value(&e);
        rep.flags.insert("error".into(), Value::String(e.to_string()));
    }
    match c.format {
        Format::Json => println!("{}", rep.json()),
        Format::Table => print!("{}", rep.table()),
    }
    ExitCode::from(rep.exit as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(c) => run("analyze", &c, commands::analyze),
        Command::Cohomology { kind, common } => {
            let k = match kind {
                Kind::Cech => SliceKind::Cech,
                Kind::Ishida => SliceKind::Ishida,
                Kind::Plus => SliceKind::PlusIshida,
            };
            run("cohomology", &common, |i, s, r| commands::cohomology_cmd(i, k, s, r))
        }
        Command::DualityCheck(c) => run("duality-check", &c, commands::duality_check),
        Command::CmProbe(c) => run("cm-probe", &c, commands::cm_probe),
        Command::CmChain(c) => run("cm-chain", &c, commands::cm_chain),
        Command::Compare(c) => run("compare", &c, commands::compare),
        Command::Probe(c) => run("probe", &c, commands::probe),
        Command::Topology(c) => run("topology", &c, commands::topology),
        Command::Validate(c) => run("validate", &c, |i, _, r| commands::validate(i, r)),
        Command::Datasets => {
            for n in datasets::names() {
                println!("{n}");
            }
            ExitCode::from(Exit::Pass as u8)
        }
    }
}
