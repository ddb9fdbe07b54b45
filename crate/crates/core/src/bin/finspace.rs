use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use finspace::cat::{ctx_pushout, pushout, DEFAULT_SIZE_BUDGET};
use finspace::closure::{closure, ClosureOp};
use finspace::inject::{injective_along, orthogonal_along, pushout_stability};
use finspace::monad::{monad_at_with_budget, verify_monad, LawMode, DEFAULT_DOUBLE_POWER_BUDGET};
use finspace::workbench::dot::export_dot_named;
use finspace::workbench::dsl::{map_to_dsl, space_to_dsl, MapDecl};
use finspace::workbench::{parse_model, run_suite, Format, Model, SuiteError, SuiteOptions, SUITES};
use finspace::{CMap, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "finspace", version, about = "Constructions and law checks on finite topological spaces")]
struct Cli {
    /// Largest pushout target for stability checks.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Largest product or power built, in points.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_BUDGET)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Reg,
    Ort,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a model and describe its spaces and maps.
    Check { model: String },
    /// Pushout of two maps with a common domain.
    Pushout {
        model: String,
        left: String,
        right: String,
        #[arg(long)]
        context: Option<String>,
    },
    /// Closure of an embedding in a context.
    Closure {
        model: String,
        map: String,
        #[arg(long)]
        context: String,
        #[arg(long, value_enum, default_value_t = Op::Reg)]
        op: Op,
    },
    /// Injectivity of a space along a map, with pushout stability when a
    /// context is given.
    Inj {
        model: String,
        space: String,
        map: String,
        #[arg(long)]
        context: Option<String>,
    },
    /// Carrier sizes and laws of the monad over a space.
    Monad {
        model: String,
        space: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Run a named suite, or all of them.
    Verify {
        #[arg(long, required_unless_present_any = ["all", "list"])]
        suite: Option<String>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Graphviz text of a space's specialization order.
    ExportDot { model: String, space: String },
}

enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeBudgetExceeded { .. } | Error::BoundExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Core(e) => e.into(),
            SuiteError::UnknownSuite(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn load(path: &str) -> Result<Model, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    parse_model(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn lookup_map<'m>(model: &'m Model, name: &str) -> Result<&'m MapDecl, Failure> {
    model.map(name).ok_or_else(|| Failure::Usage(format!("no map named {name}")))
}

fn lookup_ctx(model: &Model, name: &str) -> Result<finspace::cat::SubcatContext, Failure> {
    model
        .context(name)
        .ok_or_else(|| Failure::Usage(format!("no context named {name}")))
}

fn describe_map(name: &str, dom: &str, cod: &str, f: &CMap) -> String {
    format!(
        "{}\n  injective={} surjective={} embedding={} iso={}",
        map_to_dsl(name, dom, cod, f),
        f.is_injective(),
        f.is_surjective(),
        f.is_embedding(),
        f.is_isomorphism()
    )
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Check { model } => {
            let m = load(&model)?;
            for (name, x) in &m.spaces {
                let c = x.classify();
                println!(
                    "{}\n  points={} opens={} t0={} discrete={} indiscrete={} zero_dimensional={}",
                    space_to_dsl(name, x),
                    x.n(),
                    x.opens().len(),
                    c.t0,
                    c.discrete,
                    c.indiscrete,
                    c.zero_dimensional
                );
            }
            for d in &m.maps {
                println!("{}", describe_map(&d.name, &d.dom, &d.cod, &d.map));
            }
            for c in &m.contexts {
                let ctx = lookup_ctx(&m, &c.name)?;
                let members: Vec<&str> = m
                    .spaces
                    .iter()
                    .filter(|(_, x)| ctx.member(x))
                    .map(|(n, _)| n.as_str())
                    .collect();
                println!("context {} = builtin({})\n  members={}", c.name, c.builtin, members.join(","));
            }
            Ok(0)
        }
        Cmd::Pushout { model, left, right, context } => {
            let m = load(&model)?;
            let (f, g) = (&lookup_map(&m, &left)?.map, &lookup_map(&m, &right)?.map);
            let po = match &context {
                Some(c) => ctx_pushout(&lookup_ctx(&m, c)?, f, g)?,
                None => pushout(f, g)?,
            };
            let cod_f = &lookup_map(&m, &left)?.cod;
            let cod_g = &lookup_map(&m, &right)?.cod;
            println!("{}", space_to_dsl("P", po.apex()));
            println!("{}", describe_map("u", cod_f, "P", po.left()));
            println!("{}", describe_map("v", cod_g, "P", po.right()));
            Ok(0)
        }
        Cmd::Closure { model, map, context, op } => {
            let m = load(&model)?;
            let d = lookup_map(&m, &map)?;
            let ctx = lookup_ctx(&m, &context)?;
            let op = match op {
                Op::Reg => ClosureOp::Reg,
                Op::Ort => ClosureOp::Ort,
            };
            let c = closure(&ctx, op, &d.map)?;
            println!(
                "closure op={} context={} map={} dense={} closed={} closure_is_embedding={}",
                op.name(),
                ctx.name(),
                d.name,
                c.is_dense,
                c.is_closed,
                c.closure_is_embedding
            );
            println!("{}", space_to_dsl("K", c.closure.dom()));
            println!("{}", map_to_dsl("closure", "K", &d.cod, &c.closure));
            println!("{}", map_to_dsl("dense_part", &d.dom, "K", &c.dense_part));
            Ok(0)
        }
        Cmd::Inj { model, space, map, context } => {
            let m = load(&model)?;
            let a = m
                .space(&space)
                .ok_or_else(|| Failure::Usage(format!("no space named {space}")))?;
            let d = lookup_map(&m, &map)?;
            println!(
                "inj space={space} map={map} injective={} orthogonal={}",
                injective_along(a, &d.map)?,
                orthogonal_along(a, &d.map)?
            );
            if let Some(c) = context {
                let ctx = lookup_ctx(&m, &c)?;
                if !d.map.is_embedding() {
                    println!("stability context={} status=not-an-embedding", ctx.name());
                    return Ok(0);
                }
                let bound = cli.bound.unwrap_or(3);
                let v = pushout_stability(&ctx, &d.map, bound)?;
                println!(
                    "stability context={} bound={bound} status={} pushouts={}",
                    ctx.name(),
                    if v.is_stable() { "stable_up_to_bound" } else { "counterexample" },
                    v.pushouts_checked
                );
                if let Some((f, leg)) = &v.witness {
                    println!("{}", space_to_dsl("Z", f.cod()));
                    println!("{}", map_to_dsl("f", &d.dom, "Z", f));
                    println!("{}", space_to_dsl("P", leg.cod()));
                    println!("{}", map_to_dsl("leg", "Z", "P", leg));
                }
            }
            Ok(0)
        }
        Cmd::Monad { model, space, n } => {
            let m = load(&model)?;
            let a = m
                .space(&space)
                .ok_or_else(|| Failure::Usage(format!("no space named {space}")))?;
            let t = monad_at_with_budget(a, n, cli.budget, DEFAULT_DOUBLE_POWER_BUDGET)?;
            let rep = verify_monad(&t)?;
            let assoc = match rep.associativity {
                LawMode::Exhaustive { instances } => format!("exhaustive:{instances}"),
                LawMode::Sampled { instances, seed } => format!("sampled:{instances}:seed={seed}"),
                LawMode::SkippedBudget => "skipped-budget".to_string(),
            };
            println!(
                "monad space={space} n={n} size={} unit_checks={} associativity={assoc} violations={}",
                t.size(),
                rep.unit_checks,
                rep.violations.len()
            );
            for v in &rep.violations {
                println!("  violation: {v}");
            }
            Ok(if rep.violations.is_empty() { 0 } else { EXIT_FAIL })
        }
        Cmd::Verify { suite, n_max, all, list, seed } => {
            if list {
                for (name, n, about) in SUITES {
                    println!("{name} n_max={n} {about}");
                }
                return Ok(0);
            }
            let names: Vec<String> = if all {
                SUITES.iter().map(|(n, _, _)| n.to_string()).collect()
            } else {
                suite.into_iter().collect()
            };
            let opts = SuiteOptions {
                n_max,
                bound: cli.bound,
                budget: cli.budget,
                seed,
            };
            let mut code = 0;
            for name in names {
                let rep = run_suite(&name, &opts)?;
                print!("{}", rep.render(cli.format));
                if !rep.all_pass() {
                    code = EXIT_FAIL;
                }
            }
            Ok(code)
        }
        Cmd::ExportDot { model, space } => {
            let m = load(&model)?;
            let x = m
                .space(&space)
                .ok_or_else(|| Failure::Usage(format!("no space named {space}")))?;
            print!("{}", export_dot_named(x, &space));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
