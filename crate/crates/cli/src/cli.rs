//! Argument parsing and verb dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use polyresolve_core::graph::{Kind, SimpleGraph};
use polyresolve_core::oddcover::{
    check_cover, linear_forest_decomposition, odd_cover_eulerian, path_odd_cover_general, OddCoverCert,
};
use polyresolve_core::oracles::{
    exact_diameter_bfs, pruned_search_with, verify_certificate, Certificate as CertRef, Report, Target,
    DEFAULT_STATE_CAP,
};
use polyresolve_core::perm::{cdg, check_resolution};
use polyresolve_core::resolve::{
    gen_lower_bound_instance, gen_pp36_instance, progress_lower_bound, resolution_length_bound, resolve,
};
use rand::Rng;

use crate::acceptance;
use crate::dot;
use crate::gen;
use crate::io::{
    read_certificate, read_graph, read_instance, to_json, write_text, Certificate, CertificateFile,
    GraphFile, Instance, InstanceFile, IoError, ReportFile,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "polyresolve",
    version,
    about = "Certified short walks on partition polytopes and odd-covers of graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Path,
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Two random partitions of a random shape
    Random,
    /// Lower-bound instance for `--shape`
    Lowerbound,
    /// The six-cluster swap instance with three items per cluster
    Pp36,
    /// Random Eulerian graph with maximum degree `--degree`
    Eulerian,
    /// Random graph with maximum degree 4
    Degree4,
    /// Random graph with a random edge density
    Graph,
    /// Two disjoint copies of K5
    TwoK5,
}

#[derive(clap::Args, Debug, Default)]
pub struct Output {
    /// Write the main result here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a Graphviz rendering
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Draw loops of the cluster digraph
    #[arg(long)]
    pub show_loops: bool,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Resolve an instance and emit a verified certificate
    Resolve {
        /// Instance JSON file
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Odd-cover a graph by paths or cycles
    Oddcover {
        /// Graph JSON file
        #[arg(long)]
        graph: PathBuf,
        /// Part shape
        #[arg(long, value_enum, default_value = "path")]
        kind: KindArg,
        #[command(flatten)]
        output: Output,
    },
    /// Split a graph of maximum degree 4 into three linear forests
    Arboricity {
        /// Graph JSON file
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Diameter bounds for a shape, or the exact value with --exact
    Diameter {
        /// Cluster sizes, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        /// Exact value by breadth-first search over the polytope graph
        #[arg(long)]
        exact: bool,
        /// Largest number of vertices explored
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Emit a lower-bound instance for --shape, or refute resolutions of
    /// length --bound for --instance
    Lowerbound {
        /// Cluster sizes, comma separated, non-increasing, at least four
        #[arg(long, value_delimiter = ',', conflicts_with = "instance")]
        shape: Option<Vec<usize>>,
        /// Instance JSON file to search
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Refute every resolution of at most this length
        #[arg(long, requires = "instance")]
        bound: Option<usize>,
        /// Search every first exchange instead of fixing one by symmetry
        #[arg(long)]
        no_symmetry: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Check a certificate against an instance or graph
    Verify {
        /// Instance JSON file
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        instance: Option<PathBuf>,
        /// Graph JSON file
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Certificate JSON file
        #[arg(long)]
        cert: PathBuf,
        /// Largest accepted certificate length or part count
        #[arg(long)]
        bound: Option<usize>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance or graph
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Seed of the generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cluster sizes for random and lowerbound
        #[arg(long, value_delimiter = ',')]
        shape: Option<Vec<usize>>,
        /// Vertex count for graph families
        #[arg(long, default_value_t = 10)]
        vertices: usize,
        /// Maximum degree for the eulerian family
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run the acceptance suite
    Selftest,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Failed(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Cap from `--cap`, else `POLYRESOLVE_CAP`, else the default.
pub fn state_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("POLYRESOLVE_CAP").ok()?.parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), CliError> {
    match target {
        Some(path) => write_text(path, text)?,
        None => writeln!(out, "{text}").map_err(|e| usage(format!("stdout: {e}")))?,
    }
    Ok(())
}

fn emit_dot(target: Option<&Path>, text: impl FnOnce() -> String) -> Result<(), CliError> {
    if let Some(path) = target {
        write_text(path, &text())?;
    }
    Ok(())
}

fn report_json(r: &Report, start: Instant) -> String {
    to_json(&ReportFile {
        check: r.check.clone(),
        pass: r.pass,
        detail: r.detail.clone(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn cover_for(g: &SimpleGraph, kind: KindArg) -> Result<OddCoverCert, CliError> {
    let res = match (kind, g.is_eulerian()) {
        (KindArg::Path, true) => odd_cover_eulerian(g, Kind::Path),
        (KindArg::Path, false) => path_odd_cover_general(g),
        (KindArg::Cycle, true) => odd_cover_eulerian(g, Kind::Cycle),
        (KindArg::Cycle, false) => {
            return Err(usage("a graph with an odd-degree vertex has no cycle odd-cover"))
        }
    };
    res.map_err(|e| usage(e.to_string()))
}

fn write_cover(
    g: &SimpleGraph,
    cert: &OddCoverCert,
    output: &Output,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    check_cover(g, cert).map_err(|e| CliError::Failed(e.to_string()))?;
    emit(
        out,
        output.out.as_deref(),
        &to_json(&CertificateFile::from_cover(cert)),
    )?;
    emit_dot(output.dot.as_deref(), || dot::cover_dot(g, cert))
}

fn run_verb(verb: Verb, out: &mut dyn Write) -> Result<i32, CliError> {
    match verb {
        Verb::Resolve { instance, output } => {
            let inst = read_instance(&instance)?;
            let res = resolve(&inst.p, &inst.q).map_err(|e| usage(e.to_string()))?;
            check_resolution(&inst.p, &inst.q, &res.taus).map_err(|e| CliError::Failed(e.to_string()))?;
            let limit = resolution_length_bound(&inst.p.shape());
            if res.len() > limit {
                return Err(CliError::Failed(format!("length {} exceeds {limit}", res.len())));
            }
            emit(
                out,
                output.out.as_deref(),
                &to_json(&CertificateFile::from_resolution(&res.taus)),
            )?;
            let g = cdg(&inst.p, &inst.q).map_err(|e| usage(e.to_string()))?;
            emit_dot(output.dot.as_deref(), || dot::digraph_dot(&g, output.show_loops))?;
            Ok(EXIT_OK)
        }
        Verb::Oddcover { graph, kind, output } => {
            let g = read_graph(&graph)?;
            let cert = cover_for(&g, kind)?;
            write_cover(&g, &cert, &output, out)?;
            Ok(EXIT_OK)
        }
        Verb::Arboricity { graph, output } => {
            let g = read_graph(&graph)?;
            let cert = linear_forest_decomposition(&g).map_err(|e| usage(e.to_string()))?;
            write_cover(&g, &cert, &output, out)?;
            Ok(EXIT_OK)
        }
        Verb::Diameter { shape, exact, cap } => {
            if shape.is_empty() || shape.contains(&0) {
                return Err(usage("--shape needs positive cluster sizes"));
            }
            if exact {
                let d = exact_diameter_bfs(&shape, state_cap(cap)).map_err(|e| usage(e.to_string()))?;
                writeln!(out, "{d}").map_err(|e| usage(e.to_string()))?;
            } else {
                let upper = resolution_length_bound(&shape);
                let mut sorted = shape.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let lower = gen_lower_bound_instance(&sorted).map(|i| i.bound).ok();
                match lower {
                    Some(l) => writeln!(out, "lower {l}\nupper {upper}"),
                    None => writeln!(out, "upper {upper}"),
                }
                .map_err(|e| usage(e.to_string()))?;
            }
            Ok(EXIT_OK)
        }
        Verb::Lowerbound {
            shape,
            instance,
            bound,
            no_symmetry,
            output,
        } => {
            if let Some(shape) = shape {
                let lb = gen_lower_bound_instance(&shape).map_err(|e| usage(e.to_string()))?;
                let file = InstanceFile::from_instance(&Instance {
                    p: lb.p,
                    q: lb.q,
                    bound: Some(lb.bound),
                    family: Some(lb.family.into()),
                });
                emit(out, output.out.as_deref(), &to_json(&file))?;
                return Ok(EXIT_OK);
            }
            let path = instance.ok_or_else(|| usage("lowerbound needs --shape or --instance"))?;
            let inst = read_instance(&path)?;
            let start = Instant::now();
            let report = match bound {
                Some(l) => {
                    let res = pruned_search_with(&inst.p, &inst.q, l, !no_symmetry)
                        .map_err(|e| usage(e.to_string()))?;
                    Report::new(
                        "no_short_resolution",
                        res.no_short,
                        format!(
                            "length <= {l}: {} ({} nodes)",
                            if res.no_short { "none" } else { "found" },
                            res.nodes
                        ),
                    )
                }
                None => {
                    let lb = progress_lower_bound(&inst.p, &inst.q).map_err(|e| usage(e.to_string()))?;
                    Report::new(
                        "progress_lower_bound",
                        true,
                        format!("every resolution has length >= {lb}"),
                    )
                }
            };
            emit(out, output.out.as_deref(), &report_json(&report, start))?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FAILED })
        }
        Verb::Verify {
            instance,
            graph,
            cert,
            bound,
            out: target,
        } => {
            let start = Instant::now();
            let certificate = read_certificate(&cert)?;
            let report = match (instance, graph) {
                (Some(path), _) => {
                    let inst = read_instance(&path)?;
                    let bound = Some(bound.unwrap_or_else(|| resolution_length_bound(&inst.p.shape())));
                    let t = Target::Resolution {
                        p: &inst.p,
                        q: &inst.q,
                        bound,
                    };
                    match &certificate {
                        Certificate::Resolution(taus) => verify_certificate(t, CertRef::Resolution(taus)),
                        Certificate::Cover(c) => verify_certificate(t, CertRef::Cover(c)),
                    }
                }
                (None, Some(path)) => {
                    let g = read_graph(&path)?;
                    let t = Target::Graph { graph: &g, bound };
                    match &certificate {
                        Certificate::Resolution(taus) => verify_certificate(t, CertRef::Resolution(taus)),
                        Certificate::Cover(c) => verify_certificate(t, CertRef::Cover(c)),
                    }
                }
                (None, None) => return Err(usage("verify needs --instance or --graph")),
            };
            emit(out, target.as_deref(), &report_json(&report, start))?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FAILED })
        }
        Verb::Gen {
            family,
            seed,
            shape,
            vertices,
            degree,
            output,
        } => {
            let mut r = gen::rng(seed);
            let text = match family {
                Family::Random => {
                    let (p, q) = match shape {
                        Some(s) if !s.is_empty() && !s.contains(&0) => (
                            gen::random_partition(&s, &mut r),
                            gen::random_partition(&s, &mut r),
                        ),
                        Some(_) => return Err(usage("--shape needs positive cluster sizes")),
                        None => gen::random_instance(30, 10, &mut r),
                    };
                    to_json(&InstanceFile::from_instance(&Instance {
                        p,
                        q,
                        bound: None,
                        family: None,
                    }))
                }
                Family::Lowerbound => {
                    let s = shape.ok_or_else(|| usage("--family lowerbound needs --shape"))?;
                    let lb = gen_lower_bound_instance(&s).map_err(|e| usage(e.to_string()))?;
                    to_json(&InstanceFile::from_instance(&Instance {
                        p: lb.p,
                        q: lb.q,
                        bound: Some(lb.bound),
                        family: Some(lb.family.into()),
                    }))
                }
                Family::Pp36 => {
                    let (p, q) = gen_pp36_instance();
                    to_json(&InstanceFile::from_instance(&Instance {
                        p,
                        q,
                        bound: Some(5),
                        family: None,
                    }))
                }
                Family::Eulerian => {
                    if degree < 2 || degree % 2 == 1 || vertices <= degree {
                        return Err(usage("--degree must be even, at least 2 and below --vertices"));
                    }
                    to_json(&GraphFile::from_graph(&gen::random_eulerian_with_delta(
                        vertices, degree, &mut r,
                    )))
                }
                Family::Degree4 => {
                    if vertices < 5 {
                        return Err(usage("--vertices must be at least 5"));
                    }
                    to_json(&GraphFile::from_graph(&gen::random_max_degree_4(
                        vertices, &mut r,
                    )))
                }
                Family::Graph => {
                    let density = r.gen_range(0.2..0.8);
                    to_json(&GraphFile::from_graph(&gen::random_graph(
                        vertices, density, &mut r,
                    )))
                }
                Family::TwoK5 => to_json(&GraphFile::from_graph(&acceptance::two_k5())),
            };
            emit(out, output.out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Verb::Selftest => {
            let results = acceptance::run_all(|r| {
                let _ = writeln!(out, "{r}");
            });
            let failed = results.iter().filter(|r| !r.pass).count();
            writeln!(out, "{} passed, {failed} failed", results.len() - failed)
                .map_err(|e| usage(e.to_string()))?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

/// Parses `args` (program name first) and runs the verb. Results go to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match run_verb(cli.verb, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
