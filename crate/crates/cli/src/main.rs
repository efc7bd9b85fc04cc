//! Command-line interface: octonion multiplication, derivation solving,
//! structure table emission, the verification suite, and parameter
//! reconstruction.
//!
//! Exit codes: 0 on success, 1 for verification or domain failures, 2 for
//! parse and usage errors. All data output goes to standard output and is
//! byte-identical across identical invocations; diagnostics go to standard
//! error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use splitg2_core::{
    element_by_name, golden_table_over, leibniz_residual, recon, solve_derivations,
    structure_table, verify_antisymmetry, verify_jacobi, BracketTable, DerivationSpace, Error,
    FieldSpec, Map8, Matrix, ZornMatrix, ELEMENT_NAMES, PARAM_NAMES,
};

#[derive(Parser)]
#[command(
    name = "splitg2",
    version,
    about = "Split octonion arithmetic and the 14-dimensional Lie algebra of its derivations",
    arg_required_else_help = true
)]
struct Cli {
    /// Field to compute over: "q" for the rationals or "fp:<p>" for GF(p)
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,

    /// Output format for data printed to standard output
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Print extra diagnostics on standard error
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two split octonions (basis names or inline JSON)
    Mul {
        /// Left factor: a basis name (A, B, C1..C3, D1..D3, Y, ZERO) or JSON
        lhs: String,
        /// Right factor, same forms as the left
        rhs: String,
    },
    /// Solve the Leibniz system and print the derivation space
    Derive,
    /// Print the 14 x 14 structure table of the derivation algebra
    Table,
    /// Run the verification suite against the shipped table
    Verify {
        /// Compare against this table file instead of the shipped one
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Read a derivation's parameters back from an 8 x 8 matrix JSON file
    Recon {
        /// Path to the matrix in JSON form
        file: PathBuf,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse::<FieldSpec>().map_err(|e| e.to_string())
}

/// Failures carry the exit code they map to: 1 for domain or verification
/// failures, 2 for parse errors.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::parse(e.to_string()),
            _ => Failure::domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe stops reading (head, etc.)
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mul { lhs, rhs } => cmd_mul(&cli, lhs, rhs),
        Command::Derive => cmd_derive(&cli),
        Command::Table => cmd_table(&cli),
        Command::Verify { golden } => cmd_verify(&cli, golden.as_deref()),
        Command::Recon { file } => cmd_recon(&cli, file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn note(cli: &Cli, message: impl AsRef<str>) {
    if cli.verbose {
        eprintln!("note: {}", message.as_ref());
    }
}

/// Parses an octonion operand: a named element or an inline JSON object.
fn parse_octonion(field: &FieldSpec, raw: &str) -> Result<ZornMatrix, Failure> {
    if raw.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(raw)
            .map_err(|e| Failure::parse(format!("octonion operand is not valid JSON: {}", e)))?;
        return Ok(ZornMatrix::from_json(field, &value)?);
    }
    element_by_name(field, raw).ok_or_else(|| {
        Failure::parse(format!(
            "unknown element name {:?}; expected one of {} or a JSON object",
            raw,
            ELEMENT_NAMES.join(", ")
        ))
    })
}

fn scalar_list(items: &[&splitg2_core::Scalar]) -> String {
    items
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_octonion_text(z: &ZornMatrix) -> String {
    format!(
        "({}, ({}); ({}), {})",
        z.a,
        scalar_list(&z.x.components()),
        scalar_list(&z.y.components()),
        z.b
    )
}

fn render_octonion_latex(z: &ZornMatrix) -> String {
    format!(
        "\\begin{{pmatrix}} {} & ({}) \\\\ ({}) & {} \\end{{pmatrix}}",
        z.a,
        scalar_list(&z.x.components()),
        scalar_list(&z.y.components()),
        z.b
    )
}

/// Name of the element a value coincides with, for verbose diagnostics.
fn matching_name(z: &ZornMatrix) -> Option<&'static str> {
    ELEMENT_NAMES
        .into_iter()
        .find(|name| element_by_name(&z.field(), name).as_ref() == Some(z))
}

fn cmd_mul(cli: &Cli, lhs: &str, rhs: &str) -> Result<(), Failure> {
    let p = parse_octonion(&cli.field, lhs)?;
    let q = parse_octonion(&cli.field, rhs)?;
    let prod = p.mul(&q)?;
    match cli.format {
        Format::Text => println!("{}", render_octonion_text(&prod)),
        Format::Json => println!("{}", prod.to_json()),
        Format::Latex => println!("{}", render_octonion_latex(&prod)),
    }
    if let Some(name) = matching_name(&prod) {
        note(cli, format!("product equals {}", name));
    }
    Ok(())
}

fn render_matrix_rows(m: &Matrix) -> Vec<String> {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|s| s.to_string()).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(1))
        .collect();
    cells
        .iter()
        .map(|row| {
            row.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{:>width$}", c, width = w))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn render_matrix_latex(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!(
        "\\begin{{pmatrix}} {} \\end{{pmatrix}}",
        rows.join(" \\\\ ")
    )
}

fn space_to_json(space: &DerivationSpace) -> Value {
    serde_json::json!({
        "field": space.field.to_string(),
        "dim": space.dim,
        "labeled": space.labeled,
        "basis": space.basis.iter().map(Map8::to_json).collect::<Vec<_>>(),
    })
}

fn cmd_derive(cli: &Cli) -> Result<(), Failure> {
    let space = solve_derivations(&cli.field)?;
    note(cli, format!("field: {}", cli.field));
    match cli.format {
        Format::Text => {
            println!("dim = {}", space.dim);
            if space.labeled {
                for (k, b) in space.basis.iter().enumerate() {
                    println!("x{} =", k + 1);
                    for line in render_matrix_rows(b.matrix()) {
                        println!("  {}", line);
                    }
                }
            } else {
                println!("basis is unlabeled in this characteristic");
            }
        }
        Format::Json => println!("{}", space_to_json(&space)),
        Format::Latex => {
            println!("\\mathrm{{dim}} = {}", space.dim);
            if space.labeled {
                for (k, b) in space.basis.iter().enumerate() {
                    println!("x_{{{}}} = {}", k + 1, render_matrix_latex(b.matrix()));
                }
            }
        }
    }
    Ok(())
}

fn labeled_table(field: &FieldSpec) -> Result<BracketTable, Failure> {
    let space = solve_derivations(field)?;
    if !space.labeled {
        return Err(Failure::domain(format!(
            "derivation space over {} has dimension {} and no parameter labeling; \
             no structure table to print",
            field, space.dim
        )));
    }
    Ok(structure_table(&space)?)
}

fn render_table_text(table: &BracketTable) -> String {
    let n = table.n();
    let labels: Vec<String> = (1..=n).map(|k| format!("x{}", k)).collect();
    let mut cells = vec![vec![String::new(); n + 1]; n + 1];
    for (j, label) in labels.iter().enumerate() {
        cells[0][j + 1] = label.clone();
    }
    for (i, label) in labels.iter().enumerate() {
        cells[i + 1][0] = label.clone();
        for j in 0..n {
            cells[i + 1][j + 1] = table.cell_text(i, j);
        }
    }
    let widths: Vec<usize> = (0..=n)
        .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{:>width$}", c, width = w))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).expect("string write");
    }
    out
}

fn render_table_latex(table: &BracketTable) -> String {
    let n = table.n();
    let mut out = String::new();
    writeln!(out, "\\begin{{tabular}}{{c|{}}}", "c".repeat(n)).expect("string write");
    let header: Vec<String> = (1..=n).map(|k| format!("$x_{{{}}}$", k)).collect();
    writeln!(out, " & {} \\\\", header.join(" & ")).expect("string write");
    writeln!(out, "\\hline").expect("string write");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("${}$", table.cell_latex(i, j))).collect();
        writeln!(out, "$x_{{{}}}$ & {} \\\\", i + 1, row.join(" & ")).expect("string write");
    }
    writeln!(out, "\\end{{tabular}}").expect("string write");
    out
}

fn cmd_table(cli: &Cli) -> Result<(), Failure> {
    let table = labeled_table(&cli.field)?;
    match cli.format {
        Format::Text => print!("{}", render_table_text(&table)),
        Format::Json => println!("{}", table.to_json()),
        Format::Latex => print!("{}", render_table_latex(&table)),
    }
    Ok(())
}

/// One verification check: its report line plus whether it passed; `None`
/// passing state means skipped.
struct Check {
    name: &'static str,
    outcome: Result<String, String>,
}

fn cmd_verify(cli: &Cli, golden_path: Option<&std::path::Path>) -> Result<(), Failure> {
    let field = &cli.field;
    let golden = match golden_path {
        Some(path) => {
            let raw = std::fs::read_to_string(path).map_err(|e| {
                Failure::parse(format!("cannot read golden file {}: {}", path.display(), e))
            })?;
            let value: Value = serde_json::from_str(&raw).map_err(|e| {
                Failure::parse(format!("golden file {}: invalid JSON: {}", path.display(), e))
            })?;
            let table = BracketTable::from_json(&FieldSpec::rationals(), &value)
                .map_err(|e| Failure::parse(format!("golden file {}: {}", path.display(), e)))?;
            match field.characteristic() {
                0 => table,
                p => table
                    .reduce_mod_p(p)
                    .map_err(|e| Failure::parse(format!("golden file {}: {}", path.display(), e)))?,
            }
        }
        None => golden_table_over(field)?,
    };

    let space = solve_derivations(field)?;
    note(cli, format!("dim = {}, labeled = {}", space.dim, space.labeled));

    let mut checks = Vec::new();

    // Leibniz on all basis pairs, for every solved basis derivation.
    let basis8 = splitg2_core::octonion_basis(field);
    let mut leibniz_failure = None;
    'leibniz: for (k, d) in space.basis.iter().enumerate() {
        for p in &basis8 {
            for q in &basis8 {
                if !leibniz_residual(d, p, q)?.is_zero() {
                    leibniz_failure = Some(k + 1);
                    break 'leibniz;
                }
            }
        }
    }
    checks.push(Check {
        name: "leibniz rule on basis pairs",
        outcome: match leibniz_failure {
            None => Ok(format!("{} derivations x 64 pairs", space.dim)),
            Some(k) => Err(format!("basis derivation {} violates the rule", k)),
        },
    });

    if space.labeled {
        let table = structure_table(&space);
        checks.push(Check {
            name: "closure of the bracket",
            outcome: match &table {
                Ok(_) => Ok("all brackets reconstruct in the basis".into()),
                Err(e) => Err(e.to_string()),
            },
        });
        if let Ok(table) = table {
            checks.push(Check {
                name: "antisymmetry",
                outcome: match verify_antisymmetry(&table) {
                    None => Ok("196 ordered pairs".into()),
                    Some((i, j)) => Err(format!("violated at pair ({}, {})", i, j)),
                },
            });
            checks.push(Check {
                name: "jacobi identity",
                outcome: match verify_jacobi(&table) {
                    None => Ok("364 unordered triples".into()),
                    Some((i, j, k)) => Err(format!("violated at triple ({}, {}, {})", i, j, k)),
                },
            });
            checks.push(Check {
                name: "golden table comparison",
                outcome: match table.first_difference(&golden)? {
                    None => Ok("all 196 cells match".into()),
                    Some((i, j)) => Err(format!("mismatch at cell ({}, {})", i, j)),
                },
            });
        }
    } else {
        println!(
            "skipping table checks: basis is unlabeled in this characteristic (dim = {})",
            space.dim
        );
    }

    let passed = checks.iter().filter(|c| c.outcome.is_ok()).count();
    let total = checks.len();
    for c in &checks {
        match &c.outcome {
            Ok(detail) => println!("{}: ok ({})", c.name, detail),
            Err(detail) => println!("{}: FAILED ({})", c.name, detail),
        }
    }
    println!("{}/{} checks passed", passed, total);
    if passed == total {
        Ok(())
    } else {
        Err(Failure::domain("verification failed"))
    }
}

fn cmd_recon(cli: &Cli, file: &std::path::Path) -> Result<(), Failure> {
    let raw = std::fs::read_to_string(file)
        .map_err(|e| Failure::parse(format!("cannot read {}: {}", file.display(), e)))?;
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| Failure::parse(format!("{}: invalid JSON: {}", file.display(), e)))?;
    let map = Map8::from_json(&cli.field, &value)?;
    let params = recon(&map).map_err(|e| match e {
        Error::NotInSpan { row, col } => Failure::domain(format!(
            "matrix is not a derivation in the labeled span: first mismatch at entry ({}, {})",
            row, col
        )),
        other => Failure::from(other),
    })?;
    match cli.format {
        Format::Text => {
            for (name, v) in PARAM_NAMES.iter().zip(params.values()) {
                println!("{} = {}", name, v);
            }
        }
        Format::Json => println!("{}", params.to_json()),
        Format::Latex => {
            for (name, v) in PARAM_NAMES.iter().zip(params.values()) {
                let (head, tail) = name.split_at(1);
                println!("{}_{{{}}} = {} \\\\", head, tail, v);
            }
        }
    }
    Ok(())
}
