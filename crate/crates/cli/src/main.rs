mod report;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use tmdelta::{
    bipartition_lower_witness, degree_sequence_bounds, delta_forest_formula, generate, max_subdet_auto,
    max_subdet_brute, max_subdet_forced, max_subdet_principal, near_pencil_heuristic, parse_graph, recognize,
    solve_brute, solve_fpt, solve_paths_dp, with_random_weights, write_graph, DeltaOutcome, Element,
    ElementColoring, Engine, Error, Family, FptConfig, Graph, PathInstance, SubdetConfig, SubdetResult,
};

use report::{big, Report};

/// Exact maximum subdeterminants of graph constraint matrices and
/// total matching solvers.
///
/// Exit status: 0 success, 1 bound exceeded or a failed corpus check,
/// 2 bad input, 3 size cap hit.
#[derive(Parser, Debug)]
#[command(name = "tmdelta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON object instead of `name: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest absolute subdeterminant of M(G).
    Delta {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DeltaMethod::Auto)]
        method: DeltaMethod,
        /// Certify Δ(G) <= BOUND or produce a certificate that it is larger.
        #[arg(long)]
        bound: Option<u64>,
        /// Elements that must be both a row and a column, e.g. `v3,e7`.
        #[arg(long, value_delimiter = ',')]
        forced: Vec<Element>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Maximum weight total matching.
    Solve {
        file: PathBuf,
        /// Defaults to fpt when a bound is given and brute otherwise.
        #[arg(long, value_enum)]
        method: Option<SolveMethod>,
        #[arg(long)]
        bound: Option<u64>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Decide whether Δ(G) <= BOUND.
    Check {
        file: PathBuf,
        #[arg(long)]
        bound: u64,
        #[command(flatten)]
        caps: Caps,
    },
    /// Cheap lower and upper bounds on Δ(G).
    Bounds { file: PathBuf },
    /// Write a generated graph to stdout.
    Gen(GenArgs),
    /// Cross-check the solvers on every `.graph` file of a directory.
    Verify {
        dir: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Largest n + m for exhaustive searches.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
}

impl Caps {
    fn subdet(self) -> SubdetConfig {
        let base = SubdetConfig::default();
        match self.cap {
            Some(c) => {
                let c = c as usize;
                let mut cfg = base.with_full_cap(c);
                cfg.principal_cap = cfg.principal_cap.max(c);
                cfg
            }
            None => base,
        }
    }

    fn brute(self) -> usize {
        self.cap
            .map_or(tmdelta::matching::DEFAULT_BRUTE_CAP, |c| c as usize)
    }

    fn formula(self) -> usize {
        self.cap
            .map_or(tmdelta::forest::DEFAULT_FORMULA_CAP, |c| c as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DeltaMethod {
    /// Principal search on forests, full search otherwise, per component.
    Auto,
    /// Full search with the sweep engine.
    Brute,
    /// Full search with one determinant per row and column subset.
    Exhaustive,
    /// Square submatrices with equal row and column sets (forests only).
    Principal,
    /// Enumeration of the forest determinant formula.
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Fpt,
    /// Path program; the graph must be a disjoint union of paths.
    Dp,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenFamily {
    Path,
    Cycle,
    Star,
    Spider,
    Forest,
    Sparse,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    family: GenFamily,
    /// Vertices (path, cycle, forest, sparse) or leaves (star).
    #[arg(long, short)]
    n: Option<usize>,
    /// Edges (sparse).
    #[arg(long, short)]
    m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    branches: usize,
    #[arg(long, default_value_t = 2)]
    leaves: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Uniform integer weights, e.g. `-5:9`.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    weights: Option<(i64, i64)>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.rsplit_once(':').ok_or("expected LO:HI")?;
    let lo: i64 = lo.parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: i64 = hi.parse().map_err(|e| format!("{hi}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Report, Failure>;

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(parse_graph(&text)?)
}

fn subdet_fields(r: &mut Report, res: &SubdetResult) {
    r.field("delta", &res.value, big(&res.value))
        .field("mode", format!("{:?}", res.mode).to_lowercase(), json!(res.mode))
        .field("exact", res.exact, json!(res.exact))
        .field("witness", &res.witness, json!(res.witness));
}

fn outcome_fields(r: &mut Report, outcome: &DeltaOutcome, bound: u64) {
    r.field("bound", bound, json!(bound));
    match outcome {
        DeltaOutcome::Exact { value } => {
            r.field("result", "within", json!("within"))
                .field("delta", value, big(value));
        }
        DeltaOutcome::Exceeds { certificate } => {
            r.field("result", "exceeds", json!("exceeds"));
            report::certificate(r, certificate);
            r.code = 1;
        }
    }
}

/// Per-component search with the witnesses mapped back and merged; the
/// blocks of a disjoint union multiply.
fn delta_auto(g: &Graph, cfg: &SubdetConfig) -> tmdelta::Result<SubdetResult> {
    let mut value = BigInt::from(1);
    let mut red = Vec::new();
    let mut cyan = Vec::new();
    let mut mode = tmdelta::SubdetMode::Principal;
    for comp in g.components() {
        let res = max_subdet_auto(&comp.graph, None, cfg)?;
        value *= &res.value;
        if res.mode == tmdelta::SubdetMode::Full {
            mode = res.mode;
        }
        red.extend(res.witness.red.iter().map(|&x| comp.to_host(x)));
        cyan.extend(res.witness.cyan.iter().map(|&x| comp.to_host(x)));
    }
    Ok(SubdetResult {
        value,
        witness: ElementColoring::new(red, cyan),
        mode,
        exact: true,
    })
}

fn cmd_delta(
    file: &Path,
    method: DeltaMethod,
    bound: Option<u64>,
    forced: &[Element],
    caps: Caps,
) -> Outcome {
    let g = read_graph(file)?;
    let mut cfg = caps.subdet();
    let mut r = Report::new();
    if let Some(bound) = bound {
        if method != DeltaMethod::Auto || !forced.is_empty() {
            return Err(Error::input("--bound only combines with --method auto and no --forced").into());
        }
        outcome_fields(&mut r, &recognize(&g, bound, &cfg)?, bound);
        return Ok(r);
    }
    if !forced.is_empty() {
        let res = match method {
            DeltaMethod::Principal => tmdelta::principal_search(&g, forced, None, &cfg)?,
            DeltaMethod::Auto if g.is_forest() && g.element_count() <= cfg.principal_cap => {
                tmdelta::principal_search(&g, forced, None, &cfg)?
            }
            DeltaMethod::Auto | DeltaMethod::Brute => max_subdet_forced(&g, forced, &cfg)?,
            DeltaMethod::Exhaustive => max_subdet_forced(&g, forced, &cfg.with_engine(Engine::Exhaustive))?,
            DeltaMethod::Formula => return Err(Error::input("--forced does not apply to the formula").into()),
        };
        subdet_fields(&mut r, &res);
        return Ok(r);
    }
    match method {
        DeltaMethod::Auto => subdet_fields(&mut r, &delta_auto(&g, &cfg)?),
        DeltaMethod::Brute => subdet_fields(&mut r, &max_subdet_brute(&g, None, &cfg)?),
        DeltaMethod::Exhaustive => {
            cfg.engine = Engine::Exhaustive;
            subdet_fields(&mut r, &max_subdet_brute(&g, None, &cfg)?)
        }
        DeltaMethod::Principal => subdet_fields(&mut r, &max_subdet_principal(&g, &cfg)?),
        DeltaMethod::Formula => {
            let f = delta_forest_formula(&g, caps.formula())?;
            subdet_fields(&mut r, &f.result);
            let pair: Vec<String> = f.pair.elements().iter().map(ToString::to_string).collect();
            r.field("pair", pair.join(" "), json!(pair)).field(
                "restricted",
                f.restricted,
                json!(f.restricted),
            );
        }
    }
    Ok(r)
}

fn path_instances(g: &Graph) -> tmdelta::Result<Vec<PathInstance>> {
    let pc = g
        .classify_paths_and_cycles()
        .map_err(|_| Error::precondition("dp needs a disjoint union of paths"))?;
    if !pc.cycles.is_empty() {
        return Err(Error::precondition("dp needs a disjoint union of paths"));
    }
    pc.paths.iter().map(|p| PathInstance::from_graph(g, p)).collect()
}

fn cmd_solve(file: &Path, method: Option<SolveMethod>, bound: Option<u64>, caps: Caps) -> Outcome {
    let g = read_graph(file)?;
    let method = method.unwrap_or(if bound.is_some() {
        SolveMethod::Fpt
    } else {
        SolveMethod::Brute
    });
    let t = match method {
        SolveMethod::Fpt => {
            let bound = bound.ok_or_else(|| Error::input("--method fpt needs --bound"))?;
            let mut cfg = FptConfig::default();
            if let Some(c) = caps.cap {
                cfg.incident_cap = c as usize;
            }
            solve_fpt(&g, bound, &cfg)?
        }
        SolveMethod::Dp => solve_paths_dp(&path_instances(&g)?),
        SolveMethod::Brute => solve_brute(&g, caps.brute())?,
    };
    let mut r = Report::new();
    report::matching(&mut r, &g, &t);
    Ok(r)
}

fn cmd_check(file: &Path, bound: u64, caps: Caps) -> Outcome {
    let g = read_graph(file)?;
    let mut r = Report::new();
    outcome_fields(&mut r, &recognize(&g, bound, &caps.subdet())?, bound);
    Ok(r)
}

fn cmd_bounds(file: &Path) -> Outcome {
    let g = read_graph(file)?;
    let mut r = Report::new();
    let (set, value) = near_pencil_heuristic(&g);
    let names = report::vertex_names(&set);
    r.field("near_pencil_lower", &value, big(&value))
        .field("near_pencil_vertices", names.join(" "), json!(names))
        .field("forest", g.is_forest(), json!(g.is_forest()));
    if g.is_forest() {
        let b = degree_sequence_bounds(&g)?;
        let w = bipartition_lower_witness(&g)?;
        let side = report::vertex_names(&w.side);
        r.field("degree_lower", format!("{:.6}", b.lower), json!(b.lower))
            .field(
                "degree_lower_square",
                &b.lower_exact_square,
                big(&b.lower_exact_square),
            )
            .field("degree_upper", format!("{:.6}", b.upper), json!(b.upper))
            .field(
                "degree_upper_exact",
                &b.upper_exact,
                json!(b.upper_exact.to_string()),
            )
            .field("bipartition_lower", &w.value, big(&w.value))
            .field("bipartition_side", side.join(" "), json!(side));
    }
    Ok(r)
}

fn cmd_gen(a: &GenArgs) -> Result<String, Failure> {
    let need =
        |x: Option<usize>, flag: &str| x.ok_or_else(|| Error::input(format!("this family needs --{flag}")));
    let family = match a.family {
        GenFamily::Path => Family::Path { n: need(a.n, "n")? },
        GenFamily::Cycle => Family::Cycle { n: need(a.n, "n")? },
        GenFamily::Star => Family::Star { k: need(a.n, "n")? },
        GenFamily::Spider => Family::Spider {
            branches: a.branches,
            leaves: a.leaves,
        },
        GenFamily::Forest => Family::RandomForest { n: need(a.n, "n")? },
        GenFamily::Sparse => Family::RandomSparse {
            n: need(a.n, "n")?,
            m: need(a.m, "m")?,
        },
    };
    let mut g = generate(family, a.seed)?;
    if let Some((lo, hi)) = a.weights {
        g = with_random_weights(&g, lo, hi, a.seed);
    }
    Ok(write_graph(&g))
}

fn exit_code(e: &Failure) -> u8 {
    match e {
        Failure::Io(..) => 2,
        Failure::Lib(Error::BoundExceeded(_)) => 1,
        Failure::Lib(Error::Input(_) | Error::Precondition(_)) => 2,
        Failure::Lib(Error::Size { .. }) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Delta {
            file,
            method,
            bound,
            forced,
            caps,
        } => cmd_delta(file, *method, *bound, forced, *caps),
        Command::Solve {
            file,
            method,
            bound,
            caps,
        } => cmd_solve(file, *method, *bound, *caps),
        Command::Check { file, bound, caps } => cmd_check(file, *bound, *caps),
        Command::Bounds { file } => cmd_bounds(file),
        Command::Gen(a) => match cmd_gen(a) {
            Ok(text) => {
                print!("{text}");
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
        Command::Verify { dir, caps } => verify::run(dir, *caps),
    };
    match result {
        Ok(r) => {
            print!("{}", r.render(cli.json));
            ExitCode::from(r.code)
        }
        Err(Failure::Lib(Error::BoundExceeded(cert))) => {
            let mut r = Report::new();
            r.field("result", "exceeds", json!("exceeds"));
            report::certificate(&mut r, &cert);
            print!("{}", r.render(cli.json));
            ExitCode::from(1)
        }
        Err(e) => {
            match &e {
                Failure::Io(p, err) => eprintln!("error: {}: {err}", p.display()),
                Failure::Lib(err) => eprintln!("error: {err}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
