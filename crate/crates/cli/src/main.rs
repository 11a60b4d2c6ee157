//! `ternary`: command-line access to verification, enumeration, word search, linear maps,
//! cohomology and deformations. Exit status 0 on success, 1 when a verification fails (the
//! witness is printed), 2 on usage or input errors.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ternary_core::classify::{enumerate_with, to_paper_notation, EnumerationOptions, MAX_ENUMERATION_ORDER};
use ternary_core::cohomology::{report_from_pair, DifferentialPair, MAX_COHOMOLOGY_DIM};
use ternary_core::deform::{
    apply_equivalence, deformation_defect, trivialize_coboundary, TruncatedDeformation,
};
use ternary_core::io::{
    bialgebra_from_value, map_from_value, map_to_value, parse_group, table_from_value, table_to_value, AnyTable,
};
use ternary_core::linear::bialgebra::{
    check_coassoc, check_ternary_assoc, compatibility_witness, linear_distributivity_witness, linearize_set,
    TernaryBialgebra,
};
use ternary_core::linear::dim2::classify_dim2_maps;
use ternary_core::linear::LinearMap;
use ternary_core::structure::{classify_structure, nary_distributivity_witness};
use ternary_core::words::{search_words, word_to_table};
use ternary_core::{Error, FiniteGroup};

#[derive(Parser)]
#[command(name = "ternary", version, about = "Ternary self-distributive structures")]
struct Cli {
    /// Worker threads for parallel searches (defaults to all cores).
    #[arg(long, global = true, env = "TERNARY_THREADS")]
    threads: Option<usize>,
    /// Seed for randomly drawn inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Paper,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Shelf,
    Rack,
    Quandle,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a table given as JSON.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Axiom level required for exit status 0.
        #[arg(long, value_enum, default_value_t = Level::Quandle)]
        require: Level,
    },
    /// All ternary quandles of an order up to isomorphism, one per line.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Enumerate ternary racks instead of quandles.
        #[arg(long)]
        no_idempotence: bool,
    },
    /// Distributive words of a given odd length.
    Words {
        #[arg(long)]
        length: usize,
        /// Evaluate each word in a group: trivial, zN, sN, dN or q8.
        #[arg(long, conflicts_with = "group_file")]
        group: Option<String>,
        /// Evaluate each word in a group read from JSON.
        #[arg(long)]
        group_file: Option<PathBuf>,
        /// Include the operation tables of the evaluated words.
        #[arg(long)]
        emit_tables: bool,
    },
    /// Linear ternary maps and bialgebras.
    Linmaps {
        #[command(subcommand)]
        action: LinmapsAction,
    },
    /// Dimensions of the low-degree cohomology of a table or bialgebra.
    Cohomology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        report: ReportFormat,
    },
    /// Truncated deformations of a linearized table or a bialgebra.
    Deform {
        #[command(subcommand)]
        action: DeformAction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum LinmapsAction {
    /// Every 0/±x/±y assignment on the plane that is distributive and compatible.
    ClassifyDim2 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Axioms of a bialgebra given as JSON.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum DeformAction {
    /// Defects of `T + t T1 (+ t Δ1)` at every order up to `--order`.
    Check {
        #[arg(long)]
        base: PathBuf,
        /// First-order term of the operation; drawn at random from `--seed` when absent.
        #[arg(long)]
        t1: Option<PathBuf>,
        /// First-order term of the comultiplication; zero when absent.
        #[arg(long)]
        delta1: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// A formal isomorphism removing a coboundary first-order term.
    Trivialize {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        delta1: Option<PathBuf>,
    },
}

enum Failure {
    /// Verification failed; the witness has been printed.
    Verification,
    Usage(String),
    /// The reader closed stdout early, as `head` does.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// A bialgebra from either bialgebra JSON or a ternary shelf table, which is linearized.
fn read_bialgebra(path: &Path) -> Result<TernaryBialgebra, Failure> {
    let v = read_json(path)?;
    if v.get("dim").is_some() {
        return Ok(bialgebra_from_value(&v)?);
    }
    match table_from_value(&v)? {
        AnyTable::Ternary(t) => Ok(linearize_set(&t)?),
        _ => Err(Failure::Usage("expected a ternary table or a bialgebra".into())),
    }
}

fn emit(out: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{v}")
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_check(out: &mut impl Write, input: &Path, require: Level) -> Outcome {
    match table_from_value(&read_json(input)?)? {
        AnyTable::Ternary(t) => {
            let r = classify_structure(&t);
            emit(out, &serde_json::to_value(&r).expect("plain data"))?;
            verdict(match require {
                Level::Shelf => r.is_shelf,
                Level::Rack => r.is_rack,
                Level::Quandle => r.is_quandle,
            })
        }
        AnyTable::Binary(b) => {
            let q = b.is_quandle();
            emit(out, &json!({"kind": "binary", "order": b.order(), "is_quandle": q}))?;
            verdict(q)
        }
        AnyTable::Nary(t) => {
            let w = nary_distributivity_witness(&t);
            emit(out, &json!({"kind": "nary", "arity": t.arity(), "order": t.order(), "is_distributive": w.is_none(), "distributivity_witness": w}))?;
            verdict(w.is_none())
        }
    }
}

fn cmd_enumerate(out: &mut impl Write, order: usize, format: Format, no_idempotence: bool) -> Outcome {
    if order > MAX_ENUMERATION_ORDER {
        return Err(Failure::Usage(format!("--order is limited to {MAX_ENUMERATION_ORDER}")));
    }
    let classes = enumerate_with(order, EnumerationOptions { no_idempotence })?;
    for c in &classes {
        match format {
            Format::Paper | Format::Text => writeln!(out, "{}", to_paper_notation(&c.representative)?)?,
            Format::Json => emit(
                out,
                &json!({
                    "representative": table_to_value(&AnyTable::Ternary(c.representative.clone())),
                    "class_size": c.class_size,
                    "associated": serde_json::to_value(&c.associated).expect("plain data"),
                    "labeled_with_fixed_associated": c.labeled_with_fixed_associated,
                }),
            )?,
        }
    }
    Ok(())
}

fn cmd_words(out: &mut impl Write, length: usize, group: Option<FiniteGroup>, emit_tables: bool) -> Outcome {
    for w in search_words(length)? {
        match &group {
            None => writeln!(out, "{w}")?,
            Some(g) => {
                let t = word_to_table(&w, g)?;
                let r = classify_structure(&t);
                let mut v = json!({"word": w.to_string(), "is_shelf": r.is_shelf, "is_rack": r.is_rack, "is_quandle": r.is_quandle});
                if emit_tables {
                    v["table"] = table_to_value(&AnyTable::Ternary(t));
                }
                emit(out, &v)?;
            }
        }
    }
    Ok(())
}

fn cmd_classify_dim2(out: &mut impl Write, path: Option<&Path>) -> Outcome {
    let sols = classify_dim2_maps();
    let lines: Vec<String> = sols.iter().map(|s| s.to_string()).collect();
    match path {
        Some(p) => {
            let doc = json!({"order": ["xxx", "xxy", "xyx", "xyy", "yxx", "yxy", "yyx", "yyy"], "count": sols.len(), "solutions": lines});
            fs::write(p, format!("{doc:#}\n"))?;
            emit(out, &json!({"count": sols.len(), "out": p.display().to_string()}))?;
        }
        None => {
            for l in &lines {
                writeln!(out, "{l}")?;
            }
        }
    }
    Ok(())
}

fn cmd_linmaps_check(out: &mut impl Write, input: &Path) -> Outcome {
    let b = bialgebra_from_value(&read_json(input)?)?;
    let dist = linear_distributivity_witness(b.t(), b.delta())?;
    let compat = compatibility_witness(b.t(), b.delta())?;
    let coassoc = check_coassoc(b.delta(), b.epsilon())?;
    let assoc = check_ternary_assoc(b.t(), b.eta())?;
    emit(
        out,
        &json!({
            "dim": b.dim(),
            "distributive": dist.is_none(),
            "distributivity_witness": dist,
            "compatible": compat.is_none(),
            "compatibility_witness": compat,
            "coassociativity": coassoc,
            "associativity": assoc,
        }),
    )?;
    verdict(dist.is_none() && compat.is_none())
}

fn cmd_cohomology(out: &mut impl Write, input: &Path, format: ReportFormat) -> Outcome {
    let b = read_bialgebra(input)?;
    if b.dim() > MAX_COHOMOLOGY_DIM {
        return Err(Failure::Usage(format!("cohomology is limited to dimension {MAX_COHOMOLOGY_DIM}")));
    }
    let pair = DifferentialPair::new(&b)?;
    let residual = json!({"rows": pair.residual.rows(), "cols": pair.residual.cols(), "nonzero_entries": pair.residual.nnz(), "is_zero": pair.residual.is_zero()});
    match report_from_pair(&pair) {
        Ok(r) => {
            match format {
                ReportFormat::Json => {
                    let mut v = serde_json::to_value(r).expect("plain data");
                    v["residual"] = residual;
                    emit(out, &v)?;
                }
                ReportFormat::Text => writeln!(
                    out,
                    "dim {}  C1 {}  C2 {}  C3 {}  Z1m {}  Z1c {}  H1 {}  rank D1 {}  ker D2 {}  rank D2 {}  H2 {}  D2·D1 = 0",
                    r.dim, r.dim_c1, r.dim_c2, r.dim_c3, r.dim_z1_m, r.dim_z1_c, r.dim_h1, r.rank_d1, r.dim_ker_d2, r.rank_d2, r.dim_h2
                )?,
            }
            Ok(())
        }
        Err(Error::ChainCondition { column }) => {
            emit(out, &json!({"chain_condition": false, "witness_column": column, "residual": residual}))?;
            Err(Failure::Verification)
        }
        Err(e) => Err(e.into()),
    }
}

fn read_map(path: &Path, rows: usize, cols: usize) -> Result<LinearMap, Failure> {
    let m = map_from_value(&read_json(path)?)?;
    if m.rows() != rows || m.cols() != cols {
        return Err(Failure::Usage(format!("{}: expected a {rows}x{cols} map, got {}x{}", path.display(), m.rows(), m.cols())));
    }
    Ok(m)
}

/// A deformation with the given first-order terms and zero terms above.
fn first_order(base: TernaryBialgebra, t1: LinearMap, delta1: LinearMap, order: usize) -> Result<TruncatedDeformation, Failure> {
    let d = base.dim();
    let mut ts = vec![t1];
    let mut ds = vec![delta1];
    ts.resize(order.max(1), LinearMap::zeros(d, d.pow(3)));
    ds.resize(order.max(1), LinearMap::zeros(d.pow(3), d));
    Ok(TruncatedDeformation::new(base, ts, ds)?)
}

fn cmd_deform_check(
    out: &mut impl Write,
    seed: u64,
    base: &Path,
    t1: Option<&Path>,
    delta1: Option<&Path>,
    order: usize,
) -> Outcome {
    if order == 0 {
        return Err(Failure::Usage("--order must be at least 1".into()));
    }
    let b = read_bialgebra(base)?;
    let d = b.dim();
    let t1 = match t1 {
        Some(p) => read_map(p, d, d.pow(3))?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data: Vec<i64> = (0..d.pow(4)).map(|_| rng.gen_range(-2..=2)).collect();
            LinearMap::from_i64(d, d.pow(3), &data)?
        }
    };
    let delta1 = match delta1 {
        Some(p) => read_map(p, d.pow(3), d)?,
        None => LinearMap::zeros(d.pow(3), d),
    };
    let def = first_order(b, t1.clone(), delta1, order)?;
    let mut valid = true;
    for k in 1..=order {
        let defect = deformation_defect(&def, k)?;
        valid &= defect.is_zero();
        emit(out, &json!({"order": k, "zero": defect.is_zero(), "failing_blocks": defect.failing_blocks()}))?;
    }
    emit(out, &json!({"valid": valid, "t1": map_to_value(&t1)}))?;
    verdict(valid)
}

fn cmd_deform_trivialize(out: &mut impl Write, base: &Path, t1: &Path, delta1: Option<&Path>) -> Outcome {
    let b = read_bialgebra(base)?;
    let d = b.dim();
    let t1 = read_map(t1, d, d.pow(3))?;
    let delta1 = match delta1 {
        Some(p) => read_map(p, d.pow(3), d)?,
        None => LinearMap::zeros(d.pow(3), d),
    };
    let def = first_order(b, t1, delta1, 1)?;
    match trivialize_coboundary(&def)? {
        Some(phi) => {
            let pushed = apply_equivalence(&phi, &def)?;
            emit(
                out,
                &json!({
                    "coboundary": true,
                    "phi1": map_to_value(&phi.phi_terms()[0]),
                    "first_nonzero_after": pushed.first_nonzero(),
                }),
            )?;
            Ok(())
        }
        None => {
            emit(out, &json!({"coboundary": false}))?;
            Err(Failure::Verification)
        }
    }
}

fn group_arg(group: Option<String>, file: Option<PathBuf>) -> Result<Option<FiniteGroup>, Failure> {
    match (group, file) {
        (Some(name), _) => Ok(Some(FiniteGroup::by_name(&name)?)),
        (None, Some(p)) => {
            let text = fs::read_to_string(&p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(Some(parse_group(&text)?))
        }
        (None, None) => Ok(None),
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Check { input, require } => cmd_check(&mut out, &input, require),
        Command::Enumerate { order, format, no_idempotence } => cmd_enumerate(&mut out, order, format, no_idempotence),
        Command::Words { length, group, group_file, emit_tables } => {
            let g = group_arg(group, group_file)?;
            if emit_tables && g.is_none() {
                return Err(Failure::Usage("--emit-tables needs --group or --group-file".into()));
            }
            cmd_words(&mut out, length, g, emit_tables)
        }
        Command::Linmaps { action: LinmapsAction::ClassifyDim2 { out: path } } => cmd_classify_dim2(&mut out, path.as_deref()),
        Command::Linmaps { action: LinmapsAction::Check { input } } => cmd_linmaps_check(&mut out, &input),
        Command::Cohomology { input, report } => cmd_cohomology(&mut out, &input, report),
        Command::Deform { action: DeformAction::Check { base, t1, delta1, order } } => {
            cmd_deform_check(&mut out, cli.seed, &base, t1.as_deref(), delta1.as_deref(), order)
        }
        Command::Deform { action: DeformAction::Trivialize { base, t1, delta1 } } => {
            cmd_deform_trivialize(&mut out, &base, &t1, delta1.as_deref())
        }
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
