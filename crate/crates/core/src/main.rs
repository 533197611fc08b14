use clap::{Args, Parser, Subcommand, ValueEnum};
use sixcircles::chain::{circle_from_phi, circle_from_radius, circle_from_u, run_chain, Policy};
use sixcircles::experiments::{monte_carlo, McConfig};
use sixcircles::oracles::{
    brute_force_malfatti, exact_f_eval, exact_rational_orbit, rational_from_str,
};
use sixcircles::plmap::{f_eval, interval_label, orbit, PlParams, FLOAT_CYCLE_TOL};
use sixcircles::polygon::{divergence_rate, polygon_chain, ConvexPolygon};
use sixcircles::scenario::{BuiltShape, InitialSpec, Scenario};
use sixcircles::{report, svg, Point, Triangle};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sixcircles",
    version,
    about = "Tangent circle chains in triangles and convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived quantities of a triangle
    Triangle(TriangleArgs),
    /// Run a chain of circles inscribed in a triangle's angles
    Chain(ChainArgs),
    /// Iterate the interval map f(x) = |||x-1|-a|-b|
    Plmap(PlmapArgs),
    /// Histogram of pre-periods over many seeded random chains
    Mc(McArgs),
    /// Run a chain of circles around a convex polygon
    Ngon(NgonArgs),
    /// Solve the Malfatti configuration of a triangle
    Malfatti(MalfattiArgs),
    /// Render a scenario file to SVG
    Render(RenderArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Smaller,
    Larger,
    Random,
    Scripted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Float,
    Exact,
}

#[derive(Args)]
struct TriangleArgs {
    /// Side lengths a1,a2,a3 (side i opposite vertex i)
    #[arg(long)]
    sides: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Print angles in degrees instead of radians
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct ChainArgs {
    /// Side lengths a1,a2,a3
    #[arg(long)]
    sides: String,
    /// Initial angle coordinate phi of the first circle
    #[arg(long, conflicts_with_all = ["r0", "u0"])]
    phi0: Option<f64>,
    /// Initial radius of the first circle
    #[arg(long, conflicts_with = "u0")]
    r0: Option<f64>,
    /// Initial u = sqrt(r cot alpha) of the first circle
    #[arg(long)]
    u0: Option<f64>,
    /// 1-based vertex of the first circle
    #[arg(long, default_value_t = 1)]
    start_vertex: usize,
    #[arg(long, value_enum, default_value = "smaller")]
    policy: PolicyArg,
    /// Seed for the random policy
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Choice script for the scripted policy, e.g. "slls"
    #[arg(long)]
    script: Option<String>,
    #[arg(long, default_value_t = sixcircles::chain::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the data to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Interpret --phi0 and print the phi column in degrees
    #[arg(long)]
    degrees: bool,
    /// Also write a reusable scenario file describing this run
    #[arg(long)]
    save_scenario: Option<PathBuf>,
}

#[derive(Args)]
struct PlmapArgs {
    /// Parameter a (decimal or num/den in exact mode)
    #[arg(long)]
    a: String,
    /// Parameter b (decimal or num/den in exact mode)
    #[arg(long)]
    b: String,
    /// Starting point (decimal or num/den in exact mode)
    #[arg(long)]
    x0: String,
    /// Number of iterates to tabulate
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long, value_enum, default_value = "float")]
    mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    /// Side lengths a1,a2,a3
    #[arg(long)]
    sides: String,
    #[arg(long, default_value_t = 3000)]
    runs: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// "random" tosses a coin per step; "smaller" forces the smaller circle
    #[arg(long, value_enum, default_value = "random")]
    policy: PolicyArg,
    #[arg(long, default_value_t = sixcircles::chain::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NgonArgs {
    /// Flat counterclockwise vertex list x1,y1,x2,y2,...
    #[arg(long)]
    vertices: String,
    #[arg(long, conflicts_with = "r0")]
    u0: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long, default_value_t = 1)]
    start_vertex: usize,
    #[arg(long, value_enum, default_value = "smaller")]
    policy: PolicyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    script: Option<String>,
    #[arg(long, default_value_t = sixcircles::chain::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// Also estimate the separation rate using this initial offset
    #[arg(long)]
    divergence_delta: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    divergence_steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a reusable scenario file describing this run
    #[arg(long)]
    save_scenario: Option<PathBuf>,
}

#[derive(Args)]
struct MalfattiArgs {
    /// Side lengths a1,a2,a3
    #[arg(long)]
    sides: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Scenario file (JSON, version 1)
    #[arg(long)]
    scenario: PathBuf,
    /// Output SVG path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    /// Malformed invocation: exit code 2.
    Usage(String),
    /// Well-formed request that cannot be satisfied: exit code 1.
    Domain(String),
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Domain(msg)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_sides(s: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(usage(format!(
            "--sides expects three comma-separated lengths, got {s:?}"
        )));
    }
    let mut sides = [0.0; 3];
    for (slot, part) in sides.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("--sides contains a non-numeric entry {part:?}")))?;
    }
    Ok(sides)
}

fn parse_vertices(s: &str) -> Result<Vec<Point>, CliError> {
    let numbers: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| usage(format!("--vertices contains a non-numeric entry {p:?}")))
        })
        .collect::<Result<_, _>>()?;
    if !numbers.len().is_multiple_of(2) || numbers.len() < 6 {
        return Err(usage("--vertices needs an even list of at least 6 numbers"));
    }
    Ok(numbers.chunks(2).map(|c| Point::new(c[0], c[1])).collect())
}

fn emit(out: &Option<PathBuf>, data: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, data)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn triangle_from(sides: &str) -> Result<Triangle, CliError> {
    let [a1, a2, a3] = parse_sides(sides)?;
    Triangle::from_sides(a1, a2, a3).map_err(|e| CliError::Domain(e.to_string()))
}

fn policy_from(arg: PolicyArg, seed: u64, script: &Option<String>) -> Result<Policy, CliError> {
    Ok(match arg {
        PolicyArg::Smaller => Policy::AlwaysSmaller,
        PolicyArg::Larger => Policy::AlwaysLarger,
        PolicyArg::Random => Policy::Random { seed },
        PolicyArg::Scripted => {
            let script = script
                .as_ref()
                .ok_or_else(|| usage("--script is required with --policy scripted"))?;
            Policy::Scripted(
                sixcircles::scenario::parse_script(script).map_err(|e| usage(e.to_string()))?,
            )
        }
    })
}

fn policy_spec_of(
    arg: PolicyArg,
    seed: u64,
    script: &Option<String>,
) -> sixcircles::scenario::PolicySpec {
    use sixcircles::scenario::PolicySpec;
    match arg {
        PolicyArg::Smaller => PolicySpec::Smaller,
        PolicyArg::Larger => PolicySpec::Larger,
        PolicyArg::Random => PolicySpec::Random { seed },
        PolicyArg::Scripted => PolicySpec::Scripted {
            script: script.clone().unwrap_or_default(),
        },
    }
}

fn initial_spec_of(args: &ChainArgs, start_vertex: usize) -> sixcircles::scenario::InitialSpec {
    use sixcircles::scenario::InitialSpec;
    match (args.phi0, args.r0, args.u0) {
        (Some(value), None, None) => {
            let value = if args.degrees {
                value.to_radians()
            } else {
                value
            };
            InitialSpec::Phi0 {
                value,
                start_vertex,
            }
        }
        (None, Some(value), None) => InitialSpec::R0 {
            value,
            start_vertex,
        },
        _ => InitialSpec::U0 {
            value: args.u0.unwrap_or(0.0),
            start_vertex,
        },
    }
}

fn check_vertex(v: usize, n: usize) -> Result<usize, CliError> {
    if v == 0 || v > n {
        return Err(usage(format!("--start-vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Triangle(args) => {
            let tri = triangle_from(&args.sides)?;
            let data = match args.format {
                Format::Json => report::triangle_json(&tri, args.degrees) + "\n",
                Format::Csv => report::triangle_csv(&tri, args.degrees),
            };
            print!("{data}");
            Ok(())
        }

        Command::Chain(args) => {
            let tri = triangle_from(&args.sides)?;
            let vertex = check_vertex(args.start_vertex, 3)?;
            let initial = match (args.phi0, args.r0, args.u0) {
                (Some(phi0), None, None) => {
                    let phi0 = if args.degrees {
                        phi0.to_radians()
                    } else {
                        phi0
                    };
                    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&phi0) {
                        return Err(CliError::Domain(format!("--phi0 {phi0} outside [0, pi/2]")));
                    }
                    circle_from_phi(&tri, vertex, phi0)
                }
                (None, Some(r0), None) => {
                    if r0 < 0.0 {
                        return Err(CliError::Domain("--r0 must be nonnegative".into()));
                    }
                    circle_from_radius(&tri, vertex, r0)
                }
                (None, None, Some(u0)) => {
                    if u0 < 0.0 {
                        return Err(CliError::Domain("--u0 must be nonnegative".into()));
                    }
                    circle_from_u(&tri, vertex, u0)
                }
                _ => return Err(usage("exactly one of --phi0, --r0, --u0 is required")),
            };
            let policy = policy_from(args.policy, args.seed, &args.script)?;
            if let Some(path) = &args.save_scenario {
                let [a1, a2, a3] = parse_sides(&args.sides)?;
                let scenario = Scenario {
                    version: sixcircles::scenario::SCENARIO_VERSION,
                    shape: sixcircles::scenario::ShapeSpec::Triangle {
                        sides: [a1, a2, a3],
                    },
                    initial: initial_spec_of(&args, args.start_vertex),
                    policy: policy_spec_of(args.policy, args.seed, &args.script),
                    max_steps: args.max_steps,
                };
                emit(&Some(path.clone()), &(scenario.to_json() + "\n"))?;
            }
            let record = run_chain(&tri, initial, &policy, args.max_steps);
            let p = Some(tri.semiperimeter());
            let data = match args.format {
                Format::Csv => report::chain_csv(&record.steps, p, args.degrees),
                Format::Json => {
                    report::chain_json(
                        &record.steps,
                        p,
                        args.degrees,
                        record.termination,
                        record.pre_period,
                        record.period,
                    ) + "\n"
                }
            };
            emit(&args.out, &data)?;
            eprint!("{}", report::chain_report_lines(&record));
            Ok(())
        }

        Command::Plmap(args) => match args.mode {
            Mode::Float => {
                let a: f64 = args
                    .a
                    .parse()
                    .map_err(|_| usage(format!("bad --a {:?}", args.a)))?;
                let b: f64 = args
                    .b
                    .parse()
                    .map_err(|_| usage(format!("bad --b {:?}", args.b)))?;
                let x0: f64 = args
                    .x0
                    .parse()
                    .map_err(|_| usage(format!("bad --x0 {:?}", args.x0)))?;
                let params = PlParams::new(a, b).map_err(|e| CliError::Domain(e.to_string()))?;
                if x0 < 0.0 {
                    return Err(CliError::Domain("--x0 must be nonnegative".into()));
                }
                let mut table = String::from("step,x,interval\n");
                let mut x = x0;
                for i in 0..=args.steps {
                    writeln!(table, "{i},{x},{}", interval_label(params, x)).unwrap();
                    x = f_eval(params, x);
                }
                emit(&args.out, &table)?;
                let summary = orbit(params, x0, FLOAT_CYCLE_TOL, args.max_iter)
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                eprint!("{}", report::orbit_report_lines_f64(&summary));
                Ok(())
            }
            Mode::Exact => {
                let parse = |name: &str, s: &str| {
                    rational_from_str(s).ok_or_else(|| {
                        usage(format!("bad --{name} {s:?} (use num/den or decimal)"))
                    })
                };
                let a = parse("a", &args.a)?;
                let b = parse("b", &args.b)?;
                let x0 = parse("x0", &args.x0)?;
                let mut table = String::from("step,x\n");
                let mut x = x0.clone();
                for i in 0..=args.steps {
                    writeln!(table, "{i},{x}").unwrap();
                    x = exact_f_eval(&a, &b, &x);
                }
                emit(&args.out, &table)?;
                let summary = exact_rational_orbit(&a, &b, &x0, args.max_iter)
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                eprint!("{}", report::orbit_report_lines_exact(&summary));
                Ok(())
            }
        },

        Command::Mc(args) => {
            let tri = triangle_from(&args.sides)?;
            let force_smaller = match args.policy {
                PolicyArg::Random => false,
                PolicyArg::Smaller => true,
                _ => return Err(usage("mc supports --policy random or smaller")),
            };
            let cfg = McConfig {
                runs: args.runs,
                seed: args.seed,
                max_steps: args.max_steps,
                force_smaller,
                threads: args.threads,
            };
            let hist = monte_carlo(&tri, &cfg);
            let data = match args.format {
                Format::Csv => hist.to_csv(),
                Format::Json => hist.to_json() + "\n",
            };
            emit(&args.out, &data)?;
            eprintln!("runs={} failures={}", hist.runs, hist.failures);
            Ok(())
        }

        Command::Ngon(args) => {
            let pts = parse_vertices(&args.vertices)?;
            let poly = ConvexPolygon::new(pts).map_err(|e| CliError::Domain(e.to_string()))?;
            let vertex = check_vertex(args.start_vertex, poly.len())?;
            let initial = match (args.u0, args.r0) {
                (Some(u0), None) => {
                    if u0 < 0.0 {
                        return Err(CliError::Domain("--u0 must be nonnegative".into()));
                    }
                    poly.circle_from_u(vertex, u0)
                }
                (None, Some(r0)) => {
                    if r0 < 0.0 {
                        return Err(CliError::Domain("--r0 must be nonnegative".into()));
                    }
                    poly.circle_from_radius(vertex, r0)
                }
                _ => return Err(usage("exactly one of --u0, --r0 is required")),
            };
            let u0 = initial.u;
            let policy = policy_from(args.policy, args.seed, &args.script)?;
            if let Some(path) = &args.save_scenario {
                let vertices = poly.vertices().iter().map(|p| [p.x, p.y]).collect();
                let initial_spec = match (args.u0, args.r0) {
                    (Some(value), None) => sixcircles::scenario::InitialSpec::U0 {
                        value,
                        start_vertex: args.start_vertex,
                    },
                    (None, Some(value)) => sixcircles::scenario::InitialSpec::R0 {
                        value,
                        start_vertex: args.start_vertex,
                    },
                    _ => unreachable!(),
                };
                let scenario = Scenario {
                    version: sixcircles::scenario::SCENARIO_VERSION,
                    shape: sixcircles::scenario::ShapeSpec::Polygon { vertices },
                    initial: initial_spec,
                    policy: policy_spec_of(args.policy, args.seed, &args.script),
                    max_steps: args.max_steps,
                };
                emit(&Some(path.clone()), &(scenario.to_json() + "\n"))?;
            }
            let record = polygon_chain(&poly, initial, &policy, args.max_steps);
            let data = match args.format {
                Format::Csv => report::chain_csv(&record.steps, None, false),
                Format::Json => {
                    report::chain_json(
                        &record.steps,
                        None,
                        false,
                        record.termination,
                        record.pre_period,
                        record.period,
                    ) + "\n"
                }
            };
            emit(&args.out, &data)?;
            eprint!("{}", report::chain_report_lines(&record));
            if let Some(delta) = args.divergence_delta {
                if delta.is_nan() || delta <= 0.0 {
                    return Err(usage("--divergence-delta must be positive"));
                }
                let rate = divergence_rate(&poly, u0, delta, args.divergence_steps)
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                eprintln!("divergence_rate={rate}");
            }
            Ok(())
        }

        Command::Malfatti(args) => {
            let tri = triangle_from(&args.sides)?;
            let radii = brute_force_malfatti(&tri).map_err(|e| CliError::Domain(e.to_string()))?;
            let circles: Vec<_> = (0..3)
                .map(|k| circle_from_radius(&tri, k, radii[k]))
                .collect();
            let mut residuals = [0.0; 3];
            for i in 0..3 {
                let j = (i + 1) % 3;
                residuals[i] = circles[i].center.dist(circles[j].center)
                    - (circles[i].radius + circles[j].radius);
            }
            let data = match args.format {
                Format::Json => report::malfatti_json(&tri, radii, residuals) + "\n",
                Format::Csv => {
                    let mut out = String::from("vertex,radius,tangency_residual\n");
                    for k in 0..3 {
                        writeln!(out, "{},{},{}", k + 1, radii[k], residuals[k]).unwrap();
                    }
                    out
                }
            };
            emit(&args.out, &data)?;
            Ok(())
        }

        Command::Render(args) => {
            let text = std::fs::read_to_string(&args.scenario).map_err(|e| {
                CliError::Domain(format!("cannot read {}: {e}", args.scenario.display()))
            })?;
            let domain = |e: sixcircles::Error| CliError::Domain(e.to_string());
            let scenario = Scenario::from_json(&text).map_err(domain)?;
            let policy = scenario.policy().map_err(domain)?;
            let document = match scenario.build_shape().map_err(domain)? {
                BuiltShape::Triangle(tri) => {
                    let vertex = scenario.start_vertex(3).map_err(domain)?;
                    let initial = match scenario.initial {
                        InitialSpec::Phi0 { value, .. } => circle_from_phi(&tri, vertex, value),
                        InitialSpec::R0 { value, .. } => circle_from_radius(&tri, vertex, value),
                        InitialSpec::U0 { value, .. } => circle_from_u(&tri, vertex, value),
                    };
                    let record = run_chain(&tri, initial, &policy, scenario.max_steps);
                    eprint!("{}", report::chain_report_lines(&record));
                    svg::render_triangle_chain(&tri, &record.steps)
                }
                BuiltShape::Polygon(poly) => {
                    let vertex = scenario.start_vertex(poly.len()).map_err(domain)?;
                    let initial = match scenario.initial {
                        InitialSpec::Phi0 { .. } => {
                            return Err(CliError::Domain(
                                "phi0 initial conditions need a triangle".into(),
                            ))
                        }
                        InitialSpec::R0 { value, .. } => poly.circle_from_radius(vertex, value),
                        InitialSpec::U0 { value, .. } => poly.circle_from_u(vertex, value),
                    };
                    let record = polygon_chain(&poly, initial, &policy, scenario.max_steps);
                    eprint!("{}", report::chain_report_lines(&record));
                    svg::render_polygon_chain(&poly, &record.steps)
                }
            };
            emit(&args.out, &document)
        }
    }
}
