//! `qpart`: exact tables for partitions of matrix spaces over finite
//! fields — Krawtchouk coefficients, MacWilliams transforms, Ferrers
//! rank distributions, q-rook polynomials, extremality reports, and
//! partition-preserver searches.
//!
//! Exit codes: 0 on success, 1 if a self-test check fails, 2 on usage
//! errors (including unreadable or malformed inputs), 3 when an
//! enumeration would exceed the budget.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{render, Format, Output};
use qpart_core::codes::MatrixCode;
use qpart_core::ferrers::{q_stirling, rank_dist, rook_poly_closed, FerrersBoard};
use qpart_core::gf::FieldCtx;
use qpart_core::kraw::{
    dual_partition, explicit_partition, kraw_table, label_of, PartitionKind,
};
use qpart_core::lattice::subspaces_of_dim;
use qpart_core::matgf::{field_from_order, MatGF, PivotList};
use qpart_core::preservers::{classify_preservers, extension_search, structured_family};
use qpart_core::selftest::run_selftest;
use qpart_core::{Budget, Error};

/// Default seed for randomized corpora (currently the self-test's
/// random-code checks).  Runs with equal seeds are byte-identical.
const DEFAULT_SEED: u64 = 424242;

#[derive(Parser)]
#[command(
    name = "qpart",
    version,
    about = "Exact partition tables for matrix spaces over finite fields"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = CliFormat::Text)]
    format: CliFormat,

    /// Cap on the number of objects an exhaustive enumeration may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u64,

    /// Seed for randomized corpora; equal seeds give identical output.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliFormat {
    Text,
    Json,
    Csv,
}

impl From<CliFormat> for Format {
    fn from(f: CliFormat) -> Format {
        match f {
            CliFormat::Text => Format::Text,
            CliFormat::Json => Format::Json,
            CliFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Group matrices by rank.
    Rank,
    /// Group matrices by row space.
    Rowspace,
    /// Group matrices by pivot columns of the row-reduced form.
    Pivot,
    /// Group matrices by pivot columns after reduction from the right.
    Rpivot,
}

impl From<Kind> for PartitionKind {
    fn from(k: Kind) -> PartitionKind {
        match k {
            Kind::Rank => PartitionKind::Rank,
            Kind::Rowspace => PartitionKind::RowSpace,
            Kind::Pivot => PartitionKind::Pivot,
            Kind::Rpivot => PartitionKind::RPivot,
        }
    }
}

/// Shared `--q/--n/--m` shape flags.
#[derive(Args)]
struct Shape {
    /// Field order (a prime power).
    #[arg(long)]
    q: u64,
    /// Number of matrix rows.
    #[arg(long)]
    n: usize,
    /// Number of matrix columns.
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of Krawtchouk coefficients of a partition.
    Kraw {
        /// Partition whose coefficients to tabulate.
        #[arg(long, value_enum)]
        partition: Kind,
        #[command(flatten)]
        shape: Shape,
    },
    /// Brute-force the dual partition from character-sum signatures and
    /// report how its blocks line up with the predicted partition.
    Dualpartition {
        /// Partition to dualize.
        #[arg(long, value_enum)]
        partition: Kind,
        #[command(flatten)]
        shape: Shape,
    },
    /// Transform a code's distribution into its trace-dual's
    /// distribution (no dual-code enumeration involved).
    Macwilliams {
        /// Code file (header "n m q k" followed by k generator matrices).
        #[arg(long)]
        file: PathBuf,
        /// Partition of the primal distribution.
        #[arg(long, value_enum)]
        dist: Kind,
    },
    /// Ferrers-board polynomials.
    #[command(subcommand)]
    Ferrers(FerrersCommand),
    /// Matrix-code reports.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Partition-preserving coordinate maps.
    #[command(subcommand)]
    Preservers(PreserversCommand),
    /// Run the built-in oracle-equivalence suite and print one line per
    /// check.
    Selftest,
}

#[derive(Subcommand)]
enum FerrersCommand {
    /// Number of matrices of each rank supported on a board, as a
    /// polynomial in q.
    Rankdist {
        /// Comma-separated non-decreasing column heights, e.g. "1,2,4,4,5".
        #[arg(long)]
        board: String,
        /// Matrix rank.
        #[arg(long)]
        r: usize,
    },
    /// q-rook polynomial of a board.
    Rook {
        /// Comma-separated non-decreasing column heights.
        #[arg(long)]
        board: String,
        /// Number of non-attacking rooks.
        #[arg(long)]
        r: usize,
    },
    /// q-Stirling number of the second kind.
    Stirling {
        /// First index.
        #[arg(long)]
        m: usize,
        /// Second index.
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Distribution of a code over the blocks of a partition.
    Analyze {
        /// Code file.
        #[arg(long)]
        file: PathBuf,
        /// Partition to distribute over.
        #[arg(long, value_enum)]
        dist: Kind,
    },
    /// Trace-dual of a code, in the code file format.
    Dual {
        /// Code file.
        #[arg(long)]
        file: PathBuf,
    },
    /// Extremality report: size bounds, minimum rank distance, and
    /// optional shortening-based extremality sweeps.
    Extremal {
        /// Code file.
        #[arg(long)]
        file: PathBuf,
        /// Check extremality against every subspace of this dimension.
        #[arg(long)]
        u_dim: Option<usize>,
        /// Check extremality against this pivot list, e.g. "2,3" or "()".
        #[arg(long)]
        pivot: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapChoice {
    /// f(A) = A.
    Identity,
    /// f(A) = A^T (square spaces only).
    Transpose,
    /// Transpose the leading n x n block, keep the remaining columns.
    LeftBlockTranspose,
}

#[derive(Subcommand)]
enum PreserversCommand {
    /// Exhaustively classify the invertible coordinate maps preserving a
    /// partition (intended for q=2, nm <= 4) and compare them with the
    /// structured two-sided families.
    Classify {
        /// Partition to preserve.
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        shape: Shape,
    },
    /// Search the structured two-sided family for a map agreeing with a
    /// named map on every codeword of a code.
    Extend {
        /// Code file defining the domain.
        #[arg(long)]
        file: PathBuf,
        /// Map to extend.
        #[arg(long, value_enum)]
        map: MapChoice,
        /// Partition the extension must preserve.
        #[arg(long, value_enum)]
        kind: Kind,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget(cli.budget);
    match execute(&cli.command, &budget, cli.seed) {
        Ok(out) => {
            print!("{}", render(command_name(&cli.command), &out, cli.format.into()));
            if let Output::Checks { rows } = &out {
                if rows.iter().any(|(_, ok)| !ok) {
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Kraw { .. } => "kraw",
        Command::Dualpartition { .. } => "dualpartition",
        Command::Macwilliams { .. } => "macwilliams",
        Command::Ferrers(FerrersCommand::Rankdist { .. }) => "ferrers rankdist",
        Command::Ferrers(FerrersCommand::Rook { .. }) => "ferrers rook",
        Command::Ferrers(FerrersCommand::Stirling { .. }) => "ferrers stirling",
        Command::Code(CodeCommand::Analyze { .. }) => "code analyze",
        Command::Code(CodeCommand::Dual { .. }) => "code dual",
        Command::Code(CodeCommand::Extremal { .. }) => "code extremal",
        Command::Preservers(PreserversCommand::Classify { .. }) => "preservers classify",
        Command::Preservers(PreserversCommand::Extend { .. }) => "preservers extend",
        Command::Selftest => "selftest",
    }
}

fn execute(cmd: &Command, budget: &Budget, seed: u64) -> qpart_core::Result<Output> {
    match cmd {
        Command::Kraw { partition, shape } => cmd_kraw(*partition, shape, budget),
        Command::Dualpartition { partition, shape } => {
            cmd_dualpartition(*partition, shape, budget)
        }
        Command::Macwilliams { file, dist } => cmd_macwilliams(file, *dist, budget),
        Command::Ferrers(f) => cmd_ferrers(f, budget),
        Command::Code(c) => cmd_code(c, budget),
        Command::Preservers(p) => cmd_preservers(p, budget),
        Command::Selftest => Ok(Output::Checks {
            rows: run_selftest(seed),
        }),
    }
}

fn context(q: u64) -> qpart_core::Result<FieldCtx> {
    field_from_order(q)
}

fn read_code(path: &Path) -> qpart_core::Result<MatrixCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    MatrixCode::from_text(&text)
}

/// Parses a pivot list such as "2,3"; "()" or "" denote the empty list.
fn parse_pivot_list(s: &str, m: usize) -> qpart_core::Result<PivotList> {
    let s = s.trim();
    if s.is_empty() || s == "()" {
        return PivotList::new(m, &[]);
    }
    let indices = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad pivot index {t:?}: {e}")))
        })
        .collect::<qpart_core::Result<Vec<_>>>()?;
    PivotList::new(m, &indices)
}

/// Renders a matrix on one line, rows separated by semicolons.
fn mat_inline(a: &MatGF) -> String {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| a.get(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn cmd_kraw(kind: Kind, shape: &Shape, budget: &Budget) -> qpart_core::Result<Output> {
    let ctx = context(shape.q)?;
    let table = kraw_table(kind.into(), &ctx, shape.n, shape.m, budget)?;
    Ok(Output::Table {
        row_name: "block".into(),
        columns: table.col_labels.iter().map(|l| l.to_string()).collect(),
        rows: table
            .row_labels
            .iter()
            .zip(&table.values)
            .map(|(label, values)| {
                (
                    label.to_string(),
                    values.iter().map(|v| v.to_string()).collect(),
                )
            })
            .collect(),
    })
}

fn cmd_dualpartition(kind: Kind, shape: &Shape, budget: &Budget) -> qpart_core::Result<Output> {
    let kind: PartitionKind = kind.into();
    let ctx = context(shape.q)?;
    let (n, m) = (shape.n, shape.m);
    let dual_blocks = dual_partition(kind, &ctx, n, m, budget)?;
    let predicted = explicit_partition(kind.dual(), &ctx, n, m, budget)?;
    let rows = dual_blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let rep = MatGF::from_code(&ctx, n, m, block[0]);
            let label = label_of(kind.dual(), &rep);
            let matches = predicted.contains(block);
            (
                i.to_string(),
                vec![
                    block.len().to_string(),
                    block[0].to_string(),
                    label.to_string(),
                    if matches { "yes" } else { "no" }.to_string(),
                ],
            )
        })
        .collect();
    Ok(Output::Table {
        row_name: "dual-block".into(),
        columns: vec![
            "size".into(),
            "representative".into(),
            format!("{}-label", kind.dual()),
            "matches-predicted".into(),
        ],
        rows,
    })
}

fn cmd_macwilliams(file: &Path, kind: Kind, budget: &Budget) -> qpart_core::Result<Output> {
    let kind: PartitionKind = kind.into();
    let code = read_code(file)?;
    let dist = code.distribution(kind, budget)?;
    let transformed = qpart_core::kraw::macwilliams_transform(
        code.ctx(),
        code.rows(),
        code.cols(),
        &dist,
        &code.size(),
        budget,
    )?;
    Ok(Output::Pairs {
        key_name: format!("{}-block", transformed.kind()),
        value_name: "count".into(),
        rows: transformed
            .iter()
            .map(|(label, count)| (label.to_string(), count.to_string()))
            .collect(),
    })
}

fn cmd_ferrers(cmd: &FerrersCommand, _budget: &Budget) -> qpart_core::Result<Output> {
    match cmd {
        FerrersCommand::Rankdist { board, r } => {
            let board = FerrersBoard::parse(board)?;
            Ok(Output::Poly {
                poly: rank_dist(&board, *r),
            })
        }
        FerrersCommand::Rook { board, r } => {
            let board = FerrersBoard::parse(board)?;
            Ok(Output::Poly {
                poly: rook_poly_closed(&board, *r)?,
            })
        }
        FerrersCommand::Stirling { m, r } => Ok(Output::Poly {
            poly: q_stirling(*m, *r),
        }),
    }
}

fn cmd_code(cmd: &CodeCommand, budget: &Budget) -> qpart_core::Result<Output> {
    match cmd {
        CodeCommand::Analyze { file, dist } => {
            let code = read_code(file)?;
            let d = code.distribution((*dist).into(), budget)?;
            Ok(Output::Pairs {
                key_name: format!("{}-block", d.kind()),
                value_name: "count".into(),
                rows: d
                    .iter()
                    .map(|(label, count)| (label.to_string(), count.to_string()))
                    .collect(),
            })
        }
        CodeCommand::Dual { file } => {
            let code = read_code(file)?;
            Ok(Output::Blob {
                body: code.dual_code().to_text(),
            })
        }
        CodeCommand::Extremal { file, u_dim, pivot } => {
            let code = read_code(file)?;
            let mut fields = vec![
                ("rows".into(), code.rows().to_string()),
                ("cols".into(), code.cols().to_string()),
                ("q".into(), code.ctx().q().to_string()),
                ("dimension".into(), code.dim().to_string()),
                ("size".into(), code.size().to_string()),
            ];
            match code.min_rank_distance(budget) {
                Ok(d) => fields.push(("min-rank-distance".into(), d.to_string())),
                Err(Error::EmptyCode) => {
                    fields.push(("min-rank-distance".into(), "undefined".into()))
                }
                Err(e) => return Err(e),
            }
            fields.push((
                "meets-size-bound".into(),
                yes_no(code.is_mrd(budget)?),
            ));
            if let Some(u) = u_dim {
                let subs = subspaces_of_dim(code.ctx(), code.cols(), *u, budget)?;
                let mut all = true;
                let mut any = false;
                for s in &subs {
                    if code.is_u_extremal(s, budget)? {
                        any = true;
                    } else {
                        all = false;
                    }
                }
                fields.push((format!("extremal-for-all-dim-{u}"), yes_no(all)));
                fields.push((format!("extremal-for-some-dim-{u}"), yes_no(any)));
            }
            if let Some(p) = pivot {
                let lambda = parse_pivot_list(p, code.cols())?;
                let piv = code.is_piv_extremal(
                    &lambda,
                    qpart_core::codes::PivotSide::Piv,
                    budget,
                )?;
                let rpiv = code.is_piv_extremal(
                    &lambda,
                    qpart_core::codes::PivotSide::RPiv,
                    budget,
                )?;
                fields.push((format!("pivot-extremal-at-{lambda}"), yes_no(piv)));
                fields.push((format!("rpivot-extremal-at-{lambda}"), yes_no(rpiv)));
            }
            Ok(Output::Record { fields })
        }
    }
}

fn cmd_preservers(cmd: &PreserversCommand, budget: &Budget) -> qpart_core::Result<Output> {
    match cmd {
        PreserversCommand::Classify { kind, shape } => {
            let kind: PartitionKind = (*kind).into();
            let ctx = context(shape.q)?;
            let classified = classify_preservers(&ctx, shape.n, shape.m, kind, budget)?;
            let family = structured_family(&ctx, shape.n, shape.m, kind, budget)?;
            let family_codes: std::collections::BTreeSet<u128> = family
                .iter()
                .map(|b| {
                    qpart_core::preservers::GeneralLinearMap::from_bilinear(
                        shape.n, shape.m, b,
                    )
                    .map(|g| g.code())
                })
                .collect::<qpart_core::Result<_>>()?;
            let rows = classified
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let structured = family_codes.contains(&g.code());
                    (
                        i.to_string(),
                        vec![
                            g.code().to_string(),
                            if structured { "yes" } else { "no" }.to_string(),
                        ],
                    )
                })
                .collect();
            Ok(Output::Table {
                row_name: "map".into(),
                columns: vec!["coordinate-matrix".into(), "structured".into()],
                rows,
            })
        }
        PreserversCommand::Extend { file, map, kind } => {
            let code = read_code(file)?;
            let (n, m) = (code.rows(), code.cols());
            let f = |a: &MatGF| -> qpart_core::Result<MatGF> {
                match map {
                    MapChoice::Identity => Ok(a.clone()),
                    MapChoice::Transpose => {
                        if n != m {
                            return Err(Error::ShapeMismatch(
                                "transpose requires a square matrix space".into(),
                            ));
                        }
                        Ok(a.transpose())
                    }
                    MapChoice::LeftBlockTranspose => {
                        if m < n {
                            return Err(Error::ShapeMismatch(
                                "left block transpose requires at least as many columns as rows"
                                    .into(),
                            ));
                        }
                        let left: Vec<usize> = (0..n).collect();
                        let right: Vec<usize> = (n..m).collect();
                        let t = a.select_cols(&left).transpose();
                        if right.is_empty() {
                            Ok(t)
                        } else {
                            t.hconcat(&a.select_cols(&right))
                        }
                    }
                }
            };
            let found = extension_search(&code, f, (*kind).into(), budget)?;
            let mut fields = vec![(
                "extension-found".into(),
                if found.is_some() { "yes" } else { "no" }.to_string(),
            )];
            if let Some(b) = found {
                fields.push(("left-factor".into(), mat_inline(b.left())));
                fields.push(("right-factor".into(), mat_inline(b.right())));
                fields.push(("transposed".into(), yes_no(b.is_transposed())));
            }
            Ok(Output::Record { fields })
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}
