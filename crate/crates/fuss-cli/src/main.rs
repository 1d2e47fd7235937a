use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fuss_schroder::chung_feller::{flaw_count, AnnotatedPath, FlawEngine};
use fuss_schroder::counting::{self, Count};
use fuss_schroder::enumeration::{count_by_type, enumerate};
use fuss_schroder::schroder_nc::{small_partition, trace_to_partition};
use fuss_schroder::verification::{
    verify_chung_feller, verify_conjecture, verify_r_independence, verify_theorem, ConjectureId, TheoremId,
    VerifyReport,
};
use fuss_schroder::{shift_r, FamilyClass, FamilySpec, LatticePath, TypePartition};

#[derive(Parser)]
#[command(name = "fuss", version, about = "Lattice paths by type: counts, bijections, verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Lines,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Add,
    Remove,
}

#[derive(clap::Args)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_class)]
    class: FamilyClass,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Defaults to k.
    #[arg(long)]
    r: Option<usize>,
}

#[derive(clap::Args)]
struct PathArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    path: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of paths of one type.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated parts; "" for the empty type.
        #[arg(long = "type", value_parser = parse_type, allow_hyphen_values = true)]
        lambda: TypePartition,
    },
    /// Every type with its count, from enumeration.
    CountTable {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// All members of a family in lexicographic order (E < N < D).
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Flaw count of a free path (r = k).
    Flaws {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Raise or lower the flaw count by one.
    FlawStep {
        #[arg(long, value_enum)]
        direction: Direction,
        #[command(flatten)]
        path: PathArgs,
    },
    /// The flaw class of a free path, flawless member first.
    Orbit {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Move the diagonals of a large (k,from) path to residue `to`.
    ShiftR {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Sparse noncrossing partition traced from a large (k,k) path.
    ToPartition {
        #[command(flatten)]
        path: PathArgs,
        /// Drop the trailing singleton of a small path.
        #[arg(long)]
        small: bool,
    },
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Closed form against enumeration.
    Theorem {
        #[arg(long, value_parser = parse_theorem)]
        id: TheoremId,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Path-to-partition conjecture at one size ((k+1)n <= 9).
    Conjecture {
        #[arg(long, value_parser = parse_conjecture)]
        id: ConjectureId,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Flaw classes partition the free paths.
    ChungFeller {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Tables agree across r and the r-shift round-trips.
    RIndependence {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
}

fn parse_class(s: &str) -> Result<FamilyClass, String> {
    s.parse::<FamilyClass>().map_err(|e| e.to_string())
}

fn parse_type(s: &str) -> Result<TypePartition, String> {
    s.parse::<TypePartition>().map_err(|e| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse()
}

fn parse_conjecture(s: &str) -> Result<ConjectureId, String> {
    s.parse()
}

/// Anything that should exit with status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Usage> {
        let r = self.r.unwrap_or(self.k);
        Ok(FamilySpec::new(self.class, self.n, self.k, r)?)
    }
}

fn json<T: Serialize>(out: &mut impl Write, v: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn count_of(spec: &FamilySpec, lambda: &TypePartition) -> Count {
    let (n, k) = (spec.n, spec.k);
    match spec.class {
        FamilyClass::Dyck => counting::dyck_by_type(n, lambda),
        FamilyClass::LargeSchroder => counting::large_schroder_by_type(n, lambda),
        FamilyClass::SmallSchroder => counting::small_schroder_by_type(n, lambda),
        FamilyClass::FussCatalan => counting::fuss_catalan_by_type(n, k, lambda),
        FamilyClass::SmallFuss => counting::small_fuss_by_type(n, k, lambda),
        FamilyClass::Free => counting::free_paths_by_type(n, k, lambda),
        // no closed form; count the stream
        FamilyClass::LargeFuss => count_by_type(spec).get(lambda),
    }
}

fn csv_writer(out: &mut impl Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out as &mut dyn Write)
}

fn report(out: &mut impl Write, rep: &VerifyReport, format: Format) -> Result<bool, Usage> {
    match format {
        Format::Json => json(out, rep)?,
        Format::Lines => {
            let failing = rep.checked_cells.iter().filter(|c| !c.pass).count();
            writeln!(
                out,
                "{}: {} ({} cells, {} failing, {} counterexamples)",
                rep.check,
                if rep.passed() { "pass" } else { "fail" },
                rep.checked_cells.len(),
                failing,
                rep.counterexamples.len()
            )?;
            for row in &rep.conjecture_rows {
                writeln!(
                    out,
                    "  type ({}): {} paths, {} partitions, {} images in set, injective {}",
                    row.lambda, row.paths, row.set_size, row.images_in_set, row.injective
                )?;
            }
            for w in &rep.counterexamples {
                writeln!(out, "  [{}] {}", w.check, w.detail)?;
                if !w.replay.is_empty() {
                    writeln!(out, "    replay: fuss {}", w.replay)?;
                }
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "k", "r", "type", "formula", "enumerated", "pass"])?;
            for c in &rep.checked_cells {
                w.write_record([
                    c.n.to_string(),
                    c.k.to_string(),
                    c.r.to_string(),
                    c.lambda.to_string(),
                    c.formula.to_string(),
                    c.enumerated.to_string(),
                    c.pass.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(rep.passed())
}

#[derive(Serialize)]
struct Listed<'a> {
    path: &'a LatticePath,
    #[serde(rename = "type")]
    lambda: TypePartition,
}

#[derive(Serialize)]
struct OrbitEntry<'a> {
    path: &'a AnnotatedPath,
    flaws: usize,
}

/// Ok(true) on success or pass, Ok(false) on a verification failure.
fn run(cli: Cli, out: &mut impl Write) -> Result<bool, Usage> {
    match cli.cmd {
        Cmd::Count { family, lambda } => {
            let spec = family.spec()?;
            writeln!(out, "{}", count_of(&spec, &lambda))?;
        }
        Cmd::CountTable { family, format } => {
            let table = count_by_type(&family.spec()?);
            match format {
                Format::Json => json(out, &table)?,
                Format::Lines => {
                    for (lambda, c) in &table.entries {
                        writeln!(out, "({lambda}) {c}")?;
                    }
                }
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["type", "count"])?;
                    for (lambda, c) in &table.entries {
                        w.write_record([lambda.to_string(), c.to_string()])?;
                    }
                    w.flush()?;
                }
            }
        }
        Cmd::Enumerate { family, format } => {
            let spec = family.spec()?;
            match format {
                Format::Lines => {
                    for p in enumerate(&spec) {
                        writeln!(out, "{p}")?;
                    }
                }
                Format::Json => {
                    let paths: Vec<LatticePath> = enumerate(&spec).collect();
                    let listed: Vec<Listed> = paths.iter().map(|p| Listed { path: p, lambda: p.path_type() }).collect();
                    json(out, &listed)?;
                }
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["path", "type"])?;
                    for p in enumerate(&spec) {
                        w.write_record([p.to_string(), p.path_type().to_string()])?;
                    }
                    w.flush()?;
                }
            }
        }
        Cmd::Flaws { path, format } => {
            let p = AnnotatedPath::parse(&path.path, path.n, path.k)?;
            let rep = flaw_count(&p)?;
            match format {
                Format::Json => json(out, &rep)?,
                _ => writeln!(out, "{}", rep.total)?,
            }
        }
        Cmd::FlawStep { direction, path } => {
            let p = AnnotatedPath::parse(&path.path, path.n, path.k)?;
            let mut engine = FlawEngine::new(path.n, path.k);
            let q = match direction {
                Direction::Add => engine.add_flaw(&p)?,
                Direction::Remove => engine.remove_flaw(&p)?,
            };
            writeln!(out, "{q}")?;
        }
        Cmd::Orbit { path, format } => {
            let p = AnnotatedPath::parse(&path.path, path.n, path.k)?;
            let orbit = FlawEngine::new(path.n, path.k).orbit(&p)?;
            match format {
                Format::Json => {
                    let entries: Vec<OrbitEntry> =
                        orbit.iter().enumerate().map(|(flaws, path)| OrbitEntry { path, flaws }).collect();
                    json(out, &entries)?;
                }
                Format::Lines => {
                    for q in &orbit {
                        writeln!(out, "{q}")?;
                    }
                }
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["flaws", "path"])?;
                    for (f, q) in orbit.iter().enumerate() {
                        w.write_record([f.to_string(), q.to_string()])?;
                    }
                    w.flush()?;
                }
            }
        }
        Cmd::ShiftR { path, from, to } => {
            let p = LatticePath::parse(&path.path, path.n, path.k)?;
            writeln!(out, "{}", shift_r(&p, from, to)?)?;
        }
        Cmd::ToPartition { path, small } => {
            let p = LatticePath::parse(&path.path, path.n, path.k)?;
            let part = if small { small_partition(&p)? } else { trace_to_partition(&p)? };
            serde_json::to_writer(&mut *out, &part)?;
            writeln!(out)?;
        }
        Cmd::Verify(v) => {
            return match v {
                VerifyCmd::Theorem { id, max_n, max_k, format } => report(out, &verify_theorem(id, max_n, max_k), format),
                VerifyCmd::Conjecture { id, n, k, format } => report(out, &verify_conjecture(id, n, k)?, format),
                VerifyCmd::ChungFeller { max_n, max_k, format } => report(out, &verify_chung_feller(max_n, max_k), format),
                VerifyCmd::RIndependence { max_n, max_k, format } => {
                    report(out, &verify_r_independence(max_n, max_k), format)
                }
            };
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
        (Err(Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuss_schroder::verification::{Status, Witness};

    #[test]
    fn failing_report_maps_to_false() {
        let rep = VerifyReport {
            check: "theorem 2.1".into(),
            status: Status::Fail,
            checked_cells: Vec::new(),
            conjecture_rows: Vec::new(),
            counterexamples: vec![Witness {
                check: "formula".into(),
                detail: "made up".into(),
                replay: "count-table --class dyck --n 1".into(),
            }],
        };
        let mut out = Vec::new();
        assert!(matches!(report(&mut out, &rep, Format::Lines), Ok(false)));
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("theorem 2.1: fail"));
        assert!(text.contains("replay: fuss count-table --class dyck --n 1"));
    }
}
