//! Command-line front end.
//!
//! Everything the `bintrans` binary does goes through [`run`], which takes
//! the registry and I/O handles explicitly so tests can drive it.
//!
//! Exit codes: `0` success or all identities passed, `1` some identity
//! failed, `2` usage or parse error.

use std::io::{Read, Write};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::families;
use crate::rational::ExactRational;
use crate::sequence::Sequence;
use crate::suite::{ParamSet, Registry, VerificationReport};
use crate::transform;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Rendered for entries below `valid_from` in operator output.
pub const PLACEHOLDER: &str = "·";
/// Same, in `--machine` mode.
pub const MACHINE_PLACEHOLDER: &str = "_";

pub const GENERATORS: [&str; 11] = [
    "harmonic",
    "gen-harmonic",
    "skew-harmonic",
    "fibonacci",
    "lucas",
    "power-sum",
    "geometric",
    "index-powers",
    "laguerre",
    "mhs",
    "binomial-column",
];

#[derive(Parser, Debug)]
#[command(name = "bintrans", version, about = "Exact binomial transforms, n∇ operators and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Binomial transform of a sequence file (signed by default).
    Transform {
        #[arg(long)]
        unsigned: bool,
        #[arg(long)]
        inverse: bool,
        /// Sequence file, or "-" for stdin.
        file: String,
    },
    /// Apply ∇ or n∇ (p times) to a sequence file.
    Op {
        #[arg(value_enum)]
        op: OpKind,
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// First index at which the input is defined.
        #[arg(long, default_value_t = 0)]
        valid_from: usize,
        /// Use "_" instead of "·" for undefined entries.
        #[arg(long)]
        machine: bool,
        file: String,
    },
    /// Print the first terms of a built-in sequence.
    Gen {
        name: String,
        count_arg: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        /// Generator parameter as name=value.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        r: Option<String>,
    },
    /// Check registered identities over n = valid_from..=n_max.
    #[command(group(ArgGroup::new("target").required(true).args(["id", "all"])))]
    Verify {
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        n_max: usize,
        /// Identity parameter as name=value (rational literal).
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
        /// One JSON object per report.
        #[arg(long)]
        machine: bool,
    },
    /// List registered identity ids.
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    Nabla,
    NNabla,
}

/// A sequence file: one rational per line, `#` comments and blank lines
/// skipped. Leading `·` or `_` lines are undefined entries and set
/// `valid_from`.
pub fn parse_sequence_file(text: &str) -> Result<Sequence> {
    let mut values = Vec::new();
    let mut placeholders = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == PLACEHOLDER || line == MACHINE_PLACEHOLDER {
            if placeholders != values.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "placeholder after a defined term".into(),
                });
            }
            placeholders += 1;
            values.push(ExactRational::zero());
            continue;
        }
        let value = line.parse::<ExactRational>().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("not a rational literal: {line:?}"),
        })?;
        values.push(value);
    }
    if values.len() == placeholders {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: "no data lines".into(),
        });
    }
    Sequence::with_valid_from(values, placeholders)
}

/// Renders every slot, one per line, with `placeholder` for undefined ones.
pub fn render_sequence(s: &Sequence, placeholder: &str) -> String {
    let mut out = String::new();
    for slot in s.slots() {
        match slot {
            Some(v) => out.push_str(&v.to_string()),
            None => out.push_str(placeholder),
        }
        out.push('\n');
    }
    out
}

fn read_input(file: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if file == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse { line: 0, message: format!("reading stdin: {e}") })?;
    } else {
        text = std::fs::read_to_string(file)
            .map_err(|e| Error::Parse { line: 0, message: format!("reading {file}: {e}") })?;
    }
    Ok(text)
}

fn transform_cmd(seq: &Sequence, unsigned: bool, inverse: bool) -> Result<Sequence> {
    match (unsigned, inverse) {
        (false, _) => transform::binomial_transform(seq),
        (true, false) => transform::unsigned_binomial_transform(seq),
        (true, true) => transform::inverse_unsigned_binomial_transform(seq),
    }
}

fn op_cmd(seq: Sequence, op: OpKind, p: usize, valid_from: usize) -> Result<Sequence> {
    if p == 0 {
        return Err(Error::Domain("--p must be at least 1".into()));
    }
    let vf = valid_from.max(seq.valid_from());
    let seq = if vf != seq.valid_from() {
        let values = (0..seq.len())
            .map(|n| if n < vf { Ok(ExactRational::zero()) } else { seq.get(n).cloned() })
            .collect::<Result<Vec<_>>>()?;
        Sequence::with_valid_from(values, vf)?
    } else {
        seq
    };
    match op {
        OpKind::NNabla => transform::n_nabla_pow(&seq, p),
        OpKind::Nabla => {
            let mut cur = seq;
            for _ in 0..p {
                cur = transform::backward_difference(&cur)?;
            }
            Ok(cur)
        }
    }
}

fn gen_cmd(name: &str, count: usize, ps: &ParamSet) -> Result<Sequence> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    match name {
        "harmonic" => families::harmonic(count),
        "gen-harmonic" => families::generalized_harmonic(count, ps.int_u32("r")?),
        "skew-harmonic" => families::skew_harmonic(count),
        "fibonacci" => families::fibonacci(count),
        "lucas" => families::lucas(count),
        "power-sum" => families::power_sum(count, ps.int_u32("q")?),
        "geometric" => families::geometric(count, ps.rat("x")?),
        "index-powers" => families::index_powers(count, ps.int_u32("p")?),
        "laguerre" => families::laguerre(count, ps.rat("x")?),
        "mhs" => families::multiple_harmonic_sum(count, ps.int("m")?),
        "binomial-column" => families::binomial_column(count, ps.int("p")? as u64),
        other => Err(Error::Domain(format!(
            "unknown generator {other:?}; available: {}",
            GENERATORS.join(", ")
        ))),
    }
}

fn collect_params(assignments: &[String]) -> Result<ParamSet> {
    let mut ps = ParamSet::new();
    for a in assignments {
        ps.insert_assignment(a)?;
    }
    Ok(ps)
}

fn write_reports(
    reports: &[VerificationReport],
    machine: bool,
    stdout: &mut dyn Write,
) -> std::io::Result<i32> {
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for r in reports {
        if machine {
            writeln!(stdout, "{}", r.to_machine_line())?;
        } else {
            writeln!(stdout, "{r}")?;
        }
        if r.status.is_pass() {
            passed += 1;
        } else if r.status.is_failure() {
            failed += 1;
        } else {
            skipped += 1;
        }
    }
    if !machine {
        writeln!(stdout, "{passed} passed, {failed} failed, {skipped} skipped")?;
    }
    Ok(if failed > 0 { EXIT_FAILED } else { EXIT_OK })
}

fn usage(stderr: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    EXIT_USAGE
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    registry: &Registry,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, registry, stdin, stdout) {
        Ok(code) => code,
        Err(e) => usage(stderr, e),
    }
}

fn execute(
    command: Command,
    registry: &Registry,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let io = |e: std::io::Error| Error::Domain(format!("write failed: {e}"));
    match command {
        Command::Transform { unsigned, inverse, file } => {
            let seq = parse_sequence_file(&read_input(&file, stdin)?)?;
            let out = transform_cmd(&seq, unsigned, inverse)?;
            stdout.write_all(render_sequence(&out, PLACEHOLDER).as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Op { op, p, valid_from, machine, file } => {
            let seq = parse_sequence_file(&read_input(&file, stdin)?)?;
            let out = op_cmd(seq, op, p, valid_from)?;
            let glyph = if machine { MACHINE_PLACEHOLDER } else { PLACEHOLDER };
            stdout.write_all(render_sequence(&out, glyph).as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Gen { name, count_arg, count, params, x, m, p, q, r } => {
            let count = count.or(count_arg).ok_or_else(|| Error::Domain("missing count".into()))?;
            let mut ps = collect_params(&params)?;
            for (key, value) in [("x", x), ("m", m), ("p", p), ("q", q), ("r", r)] {
                if let Some(v) = value {
                    ps.insert(key, v.parse()?);
                }
            }
            let out = gen_cmd(&name, count, &ps)?;
            stdout.write_all(render_sequence(&out, PLACEHOLDER).as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { id, all, n_max, params, machine } => {
            let ps = collect_params(&params)?;
            let reports = if all {
                if !ps.is_empty() {
                    return Err(Error::Parameter("--param cannot be combined with --all".into()));
                }
                registry.verify_all(n_max)
            } else {
                let id = id.expect("clap enforces id or --all");
                if registry.lookup(&id).is_err() {
                    let ids: Vec<&str> = registry.ids().collect();
                    return Err(Error::Domain(format!(
                        "unknown identity {id:?}; available: {}",
                        ids.join(", ")
                    )));
                }
                if ps.is_empty() {
                    registry.verify_grid(&id, n_max)?
                } else {
                    vec![registry.verify(&id, n_max, &ps)?]
                }
            };
            write_reports(&reports, machine, stdout).map_err(io)
        }
        Command::List => {
            for spec in registry.iter() {
                writeln!(stdout, "{:<26} {}", spec.id, spec.description).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_files_with_comments_and_placeholders() {
        let s = parse_sequence_file("# header\n\n·\n_\n 3/6 \n-2\n").unwrap();
        assert_eq!(s.valid_from(), 2);
        assert_eq!(s.len(), 4);
        assert_eq!(s.get(2).unwrap().to_string(), "1/2");
        assert_eq!(render_sequence(&s, PLACEHOLDER), "·\n·\n1/2\n-2\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_sequence_file("1\n# c\n2.5\n"),
            Err(Error::Parse { line: 3, message: "not a rational literal: \"2.5\"".into() })
        );
        assert!(matches!(parse_sequence_file("1\n·\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_sequence_file("# nothing\n\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sequence_file("·\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sequence_file("1/0\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn op_respects_valid_from_flag() {
        let s = parse_sequence_file("0\n1\n1/2\n1/3\n").unwrap();
        let out = op_cmd(s, OpKind::NNabla, 2, 1).unwrap();
        assert_eq!(render_sequence(&out, MACHINE_PLACEHOLDER), "_\n_\n_\n3/2\n");
    }

    #[test]
    fn gen_needs_parameters() {
        assert!(gen_cmd("laguerre", 3, &ParamSet::new()).is_err());
        assert!(gen_cmd("nope", 3, &ParamSet::new()).is_err());
        assert!(gen_cmd("harmonic", 0, &ParamSet::new()).is_err());
        for name in GENERATORS {
            let ps = ParamSet::new().with("x", 2).with("m", 2).with("p", 2).with("q", 2).with("r", 2);
            assert_eq!(gen_cmd(name, 4, &ps).unwrap().len(), 4, "{name}");
        }
    }
}
