use std::collections::BTreeSet;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use symlabel::aut::{analyse, permutation_isomorphic};
use symlabel::brauer::{build_brauer_table, validate_decomposition_matrix, DecompositionMatrix};
use symlabel::error::RelabelError;
use symlabel::io::{
    group_json, read_decomposition, read_matrix, read_table, write_report, write_scramble_sidecar, write_table,
};
use symlabel::relabel::{column_orders, relabel};
use symlabel::{build_an_table, build_sn_table, fixtures, CharTable, GroupKind};

#[derive(Parser)]
#[command(
    name = "symlabel",
    version,
    about = "Character tables of symmetric and alternating groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    #[value(name = "S")]
    S,
    #[value(name = "A")]
    A,
}

#[derive(Subcommand)]
enum Command {
    /// Write the labelled table of S_n or A_n, or its Brauer table mod p.
    Gen {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: Option<u32>,
        /// Decomposition matrix document; the bundled one is used otherwise.
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strip labels and permute rows and columns. The hidden permutation is
    /// written to `<out>.perm.json`.
    Scramble {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find every labelling of an unlabelled table.
    Relabel {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: Option<u32>,
        /// Directory holding `d{n}p{p}.json`; the bundled matrices are used otherwise.
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automorphism group of a matrix and its row and column projections.
    Aut {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Element orders of the classes of an unlabelled table, per column.
    Orders {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a table (orthogonality or row independence) or a decomposition matrix.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Decomposition matrix to check the table against.
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a Brauer table of S_n from a decomposition matrix document.
    BrauerGen {
        #[arg(long)]
        decomp: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Generation(String),
    NotATable(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Generation(_) => 3,
            Failure::NotATable(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Generation(m) | Failure::NotATable(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn generation(e: impl ToString) -> Failure {
    Failure::Generation(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial document. Without a path the text goes to standard output.
fn emit(out: Option<&Path>, text: &str) -> Outcome {
    let Some(path) = out else {
        print!("{text}");
        return Ok(());
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| generation(format!("{}: {e}", path.display())))
}

fn decomposition_from_file(path: &Path) -> Result<DecompositionMatrix, Failure> {
    read_decomposition(&read(path)?).map_err(usage)
}

fn decomposition_for(n: u32, p: u32, dir: Option<&Path>) -> Result<DecompositionMatrix, Failure> {
    match dir {
        Some(dir) => decomposition_from_file(&dir.join(format!("d{n}p{p}.json"))),
        None => fixtures::decomposition(n, p)
            .ok_or_else(|| usage(format!("no bundled decomposition matrix for n = {n}, p = {p}"))),
    }
}

fn an_reference(n: u32, p: u32, d: &DecompositionMatrix) -> Result<CharTable, Failure> {
    let t = fixtures::an_brauer_table(n, p).ok_or_else(|| usage(format!("no bundled Brauer table of A{n} mod {p}")))?;
    symlabel::relabel::label_an_brauer_reference(&t, d).map_err(generation)
}

fn gen(group: Group, n: u32, p: Option<u32>, decomp: Option<&Path>) -> Result<CharTable, Failure> {
    let Some(p) = p else {
        if decomp.is_some() {
            return Err(usage("--decomp needs --p"));
        }
        return match group {
            Group::S => build_sn_table(n).map_err(usage),
            Group::A => build_an_table(n).map_err(usage),
        };
    };
    let d = match decomp {
        Some(f) => decomposition_from_file(f)?,
        None => decomposition_for(n, p, None)?,
    };
    if (d.n(), d.p()) != (n, p) {
        return Err(usage(format!(
            "decomposition matrix is for n = {}, p = {}",
            d.n(),
            d.p()
        )));
    }
    match group {
        Group::S => build_brauer_table(&d).map_err(generation),
        Group::A => an_reference(n, p, &d),
    }
}

fn not_a_table(e: RelabelError) -> Failure {
    match e {
        RelabelError::NotACharacterTable { reason, trace } => {
            for line in trace {
                warn!("{line}");
            }
            Failure::NotATable(format!("not a character table of the claimed kind: {reason}"))
        }
        other => Failure::NotATable(other.to_string()),
    }
}

fn run_relabel(
    input: &Path,
    group: Group,
    n: u32,
    p: Option<u32>,
    decomp: Option<&Path>,
) -> Result<symlabel::relabel::ReconstructionReport, Failure> {
    let x = read_table(&read(input)?).map_err(usage)?;
    let (kind, d, reference) = match (group, p) {
        (Group::S, None) => (GroupKind::Symmetric, None, None),
        (Group::A, None) => (GroupKind::Alternating, None, None),
        (Group::S, Some(p)) => (
            GroupKind::SymmetricModular,
            Some(decomposition_for(n, p, decomp)?),
            None,
        ),
        (Group::A, Some(p)) => {
            let d = decomposition_for(n, p, decomp)?;
            let r = an_reference(n, p, &d)?;
            (GroupKind::AlternatingModular, Some(d), Some(r))
        }
    };
    let report = relabel(&x, kind, n, d.as_ref(), reference.as_ref()).map_err(not_a_table)?;
    for line in &report.trace {
        info!("{line}");
    }
    Ok(report)
}

fn validate(input: &Path, decomp: Option<&Path>) -> Result<String, Failure> {
    let text = read(input)?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(usage)?;
    if doc.get("entries").is_some() {
        let d = read_decomposition(&text).map_err(usage)?;
        let report = validate_decomposition_matrix(&d).map_err(generation)?;
        return if report.is_valid() {
            Ok(report.to_string())
        } else {
            Err(generation(report))
        };
    }
    let t = read_table(&text).map_err(usage)?;
    if t.group().is_modular() {
        let d = match decomp {
            Some(f) => decomposition_from_file(f)?,
            None => decomposition_for(t.n(), t.p().expect("modular"), None)?,
        };
        let reference = match t.group() {
            GroupKind::SymmetricModular => build_brauer_table(&d).map_err(generation)?,
            _ => an_reference(t.n(), d.p(), &d)?,
        };
        if symlabel::relabel::enumerate_labellings_oracle(&t.unlabelled(), &reference).is_empty() {
            return Err(generation("table does not match the Brauer table of its group"));
        }
        if let (Some(rows), Some(cols)) = (t.row_labels(), t.col_labels()) {
            let own = symlabel::relabel::Labelling {
                rows: rows.to_vec(),
                cols: cols.to_vec(),
            };
            if !own.reproduces(&t, &reference) {
                return Err(generation("labels disagree with the Brauer table of their group"));
            }
        }
        return Ok("valid\n".into());
    }
    t.check_orthogonality().map_err(generation)?;
    Ok("valid\n".into())
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen {
            group,
            n,
            p,
            decomp,
            out,
        } => {
            let t = gen(group, n, p, decomp.as_deref())?;
            emit(out.as_deref(), &write_table(&t))
        }
        Command::Scramble { input, seed, out } => {
            let t = read_table(&read(&input)?).map_err(usage)?;
            let (x, rows, cols) = t.scrambled(seed);
            emit(Some(&out), &write_table(&x))?;
            let mut side = out.into_os_string();
            side.push(".perm.json");
            emit(Some(Path::new(&side)), &write_scramble_sidecar(seed, &rows, &cols))
        }
        Command::Relabel {
            input,
            group,
            n,
            p,
            decomp,
            out,
        } => {
            let report = run_relabel(&input, group, n, p, decomp.as_deref())?;
            emit(out.as_deref(), &write_report(&report))
        }
        Command::Aut { input, out } => {
            let values = read_matrix(&read(&input)?).map_err(usage)?;
            let r = analyse(&values).map_err(generation)?;
            let iso = permutation_isomorphic(&r.caut, &r.claut).map_err(generation)?;
            let text = format!(
                "{{\n  \"order\": {},\n  \"caut\": {},\n  \"claut\": {},\n  \"permutationIsomorphic\": {}\n}}\n",
                r.automorphisms.len(),
                group_json(&r.caut),
                group_json(&r.claut),
                iso.is_some()
            );
            emit(out.as_deref(), &text)
        }
        Command::Orders {
            input,
            group,
            n,
            p,
            decomp,
            out,
        } => {
            let report = run_relabel(&input, group, n, p, decomp.as_deref())?;
            let cols: Vec<String> = column_orders(&report)
                .into_iter()
                .map(|s: BTreeSet<u64>| match s.len() {
                    1 => s.into_iter().next().expect("one order").to_string(),
                    _ => format!("[{}]", s.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")),
                })
                .collect();
            emit(out.as_deref(), &format!("{{\"orders\": [{}]}}\n", cols.join(", ")))
        }
        Command::Validate { input, decomp, out } => {
            let text = validate(&input, decomp.as_deref())?;
            emit(out.as_deref(), &text)
        }
        Command::BrauerGen { decomp, out } => {
            let d = decomposition_from_file(&decomp)?;
            let t = build_brauer_table(&d).map_err(generation)?;
            emit(out.as_deref(), &write_table(&t))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
