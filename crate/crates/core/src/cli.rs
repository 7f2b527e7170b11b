//! The `maglap` command surface.
//!
//! [`run`] parses arguments and returns the exit code with captured output so
//! the commands can be tested without spawning a process. Exit codes: 0 when
//! the command computed its result (and found a certificate, for `certify`),
//! 1 when no certificate was found or a check failed, 2 on errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::certificates::{
    certify_nonhamiltonian_via_cycle, certify_nonhamiltonian_via_matching, certify_nonmatchable,
    sweep_chord_fluxes, sweep_constant_potential, sweep_single_chord, verify_theorem_suite,
    Certificate, CycleMode, SearchStrategy,
};
use crate::combinatorics::{find_hamiltonian_cycle, maximum_matching};
use crate::dml::spectrum;
use crate::graph::{EdgeId, Graph};
use crate::io::{emit_sweep_csv, format_sig12, parse_angle, parse_graph_file};
use crate::magnetic::{is_gauge_equivalent, MagneticGraph, MagneticPotential};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "maglap",
    version,
    about = "Magnetic Laplacian spectra and spectral obstruction certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the spectrum, one eigenvalue per line.
    Spectrum {
        file: PathBuf,
        /// Constant angle on every reference arc, overriding any potential in the file.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Sweep a family of potentials and write the spectra as CSV.
    Sweep {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "const")]
        family: FamilyArg,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Output path; `-` or omitted writes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Edge index (file line order) of the swept chord; defaults to the first chord.
        #[arg(long)]
        chord: Option<usize>,
        /// Maximum number of spectra for the chord torus.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Search for a spectral certificate and print it as JSON.
    Certify {
        #[arg(value_enum)]
        property: PropertyArg,
        file: PathBuf,
        /// Flux model for the cycle comparison.
        #[arg(long, value_enum, default_value = "robust")]
        mode: ModeArg,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Run an exact combinatorial search.
    Oracle {
        #[arg(value_enum)]
        problem: OracleArg,
        file: PathBuf,
    },
    /// Check the spectral inequalities on seeded random instances.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Test whether two potentials on the same graph differ by a gauge.
    Gauge { file_a: PathBuf, file_b: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Const,
    Chord,
    SingleChord,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PropertyArg {
    Matchable,
    Hamiltonian,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Robust,
}

impl From<ModeArg> for CycleMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => CycleMode::Paper,
            ModeArg::Robust => CycleMode::Robust,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleArg {
    Matching,
    Hamilton,
}

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput::ok(0, text)
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(CommandOutput::error)
}

fn read_graph(path: &Path) -> Result<(Graph, Option<MagneticPotential>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_graph_file(&text)
}

fn magnetic(graph: Graph, potential: Option<MagneticPotential>) -> Result<MagneticGraph> {
    match potential {
        Some(p) => MagneticGraph::new(graph, p),
        None => Ok(MagneticGraph::zero(graph)),
    }
}

fn certificate_json(cert: &Certificate) -> String {
    let mut s = serde_json::to_string(cert).expect("certificates serialize");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> Result<CommandOutput> {
    match command {
        Command::Spectrum { file, t } => {
            let (graph, potential) = read_graph(&file)?;
            let mg = match t {
                Some(t) => MagneticGraph::constant(graph, parse_angle(&t)?),
                None => magnetic(graph, potential)?,
            };
            let s = spectrum(&mg)?;
            let out: String = s
                .values()
                .iter()
                .map(|&x| format!("{}\n", format_sig12(x)))
                .collect();
            Ok(CommandOutput::ok(0, out))
        }
        Command::Sweep {
            file,
            family,
            grid,
            out,
            chord,
            budget,
        } => {
            let (graph, _) = read_graph(&file)?;
            let sweep = match family {
                FamilyArg::Const => sweep_constant_potential(&graph, grid)?,
                FamilyArg::Chord => sweep_chord_fluxes(&graph, grid, budget)?,
                FamilyArg::SingleChord => {
                    let chord = match chord {
                        Some(i) => EdgeId(i),
                        None => *graph.spanning_tree()?.chords().first().ok_or_else(|| {
                            Error::NotApplicable("the graph is a tree and has no chord".into())
                        })?,
                    };
                    sweep_single_chord(&graph, chord, grid)?
                }
            };
            let csv = emit_sweep_csv(&sweep);
            match out {
                Some(path) if path.as_os_str() != "-" => {
                    std::fs::write(&path, csv).map_err(|e| {
                        Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(CommandOutput::ok(
                        0,
                        format!("wrote {} rows to {}\n", sweep.points.len(), path.display()),
                    ))
                }
                _ => Ok(CommandOutput::ok(0, csv)),
            }
        }
        Command::Certify {
            property,
            file,
            mode,
            grid,
        } => {
            let (graph, _) = read_graph(&file)?;
            let strategy = SearchStrategy::with_grid(grid);
            let n = graph.vertex_count();
            let cert = match property {
                PropertyArg::Matchable => certify_nonmatchable(&graph, &strategy)?,
                PropertyArg::Hamiltonian => {
                    let via_matching = if n % 2 == 0 && n > 3 {
                        certify_nonhamiltonian_via_matching(&graph, &strategy)?
                    } else {
                        None
                    };
                    match via_matching {
                        Some(c) => Some(c),
                        None => certify_nonhamiltonian_via_cycle(&graph, grid, mode.into())?,
                    }
                }
            };
            Ok(match cert {
                Some(c) => CommandOutput::ok(0, certificate_json(&c)),
                None => CommandOutput {
                    code: 1,
                    stdout: String::new(),
                    stderr: "no certificate found\n".into(),
                },
            })
        }
        Command::Oracle { problem, file } => {
            let (graph, _) = read_graph(&file)?;
            let out = match problem {
                OracleArg::Matching => {
                    let m = maximum_matching(&graph);
                    let edges: Vec<String> = m
                        .edges()
                        .iter()
                        .map(|&e| {
                            let (u, v) = graph.endpoints(e).expect("matching edge");
                            format!("{u}-{v}")
                        })
                        .collect();
                    format!(
                        "matching_number {}\nperfect {}\nedges {}\n",
                        m.len(),
                        m.is_perfect(&graph),
                        edges.join(" ")
                    )
                }
                OracleArg::Hamilton => match find_hamiltonian_cycle(&graph)? {
                    Some(c) => {
                        let order: Vec<String> =
                            c.vertices().iter().map(|v| v.to_string()).collect();
                        format!("hamiltonian true\ncycle {}\n", order.join(" "))
                    }
                    None => "hamiltonian false\n".to_string(),
                },
            };
            Ok(CommandOutput::ok(0, out))
        }
        Command::Verify { seed, trials } => {
            let report = verify_theorem_suite(seed, trials)?;
            Ok(CommandOutput::ok(
                if report.all_passed() { 0 } else { 1 },
                report.to_string(),
            ))
        }
        Command::Gauge { file_a, file_b } => {
            let (ga, pa) = read_graph(&file_a)?;
            let (gb, pb) = read_graph(&file_b)?;
            let equivalent = is_gauge_equivalent(&magnetic(ga, pa)?, &magnetic(gb, pb)?)?;
            Ok(if equivalent {
                CommandOutput::ok(0, "gauge equivalent\n".into())
            } else {
                CommandOutput::ok(1, "not gauge equivalent\n".into())
            })
        }
    }
}
