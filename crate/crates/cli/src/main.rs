use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dct_tower::chebyshev::{field_name, tower_factorization};
use dct_tower::codegen::{emitter, from_json};
use dct_tower::exact_field::{DyadicRational, FieldElement, Rational};
use dct_tower::executor::{apply_exact, apply_float, count_ops, verify, Mode};
use dct_tower::galois::{fixed_field_generator, galois_group, subgroup_chain};
use dct_tower::planner::{lookup, registry, TransformPlan};
use dct_tower::{Error, Result};

#[derive(Parser)]
#[command(name = "dct-tower", version, about = "Fast DCT-4/DCT-2 plans over the exact field tower Q ⊂ Q[√2] ⊂ …")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a plan and write it as JSON
    Plan {
        /// dct4, dct4-poly, dct2 or dct2-poly
        #[arg(long)]
        transform: String,
        #[arg(long)]
        n: usize,
        /// skew as exact text m/2^j (dct4-poly only)
        #[arg(long)]
        skew: Option<DyadicRational>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a plan with the dense reference matrix; exit 2 on mismatch
    Verify {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Count multiplications and additions
    Count {
        #[arg(long)]
        plan: PathBuf,
    },
    /// Run a plan on a vector file (one value per line, `a/b` or decimal, `#` comments)
    Apply {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Factor 2T_{2^k} - 2cos(rπ) level by level through the tower
    Factor {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        skew: Option<DyadicRational>,
    },
    /// Galois group of 2T_{2^k}: Cayley table, subgroups, fixed fields
    Galois {
        #[arg(long)]
        k: u32,
    },
    /// Write a plan as a dataflow graph, kernel listing or JSON
    Emit {
        #[arg(long)]
        plan: PathBuf,
        /// graph, kernel or json
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Pass,
    Mismatch,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_plan(path: &Path) -> Result<TransformPlan> {
    from_json(&read(path)?)
}

fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

fn cmd_plan(transform: &str, n: usize, skew: Option<DyadicRational>, out: Option<&Path>) -> Result<Outcome> {
    let family = lookup(transform).map_err(|_| {
        let names: Vec<&str> = registry().iter().map(|f| f.name()).collect();
        Error::InvalidArgument(format!("unknown transform `{transform}` (expected one of {})", names.join(", ")))
    })?;
    let plan = family.plan(n, skew)?;
    write_or_print(&emitter("json")?.emit(&plan), out)?;
    Ok(Outcome::Pass)
}

fn cmd_verify(path: &Path, exact: bool, tol: f64, json: bool) -> Result<Outcome> {
    let plan = load_plan(path)?;
    let report = verify(&plan, if exact { Mode::Exact } else { Mode::Float }, tol)?;
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    Ok(if report.passed { Outcome::Pass } else { Outcome::Mismatch })
}

fn cmd_count(path: &Path) -> Result<Outcome> {
    let plan = load_plan(path)?;
    let ops = count_ops(&plan);
    let expected = lookup(plan.transform.name())?.expected_ops(plan.size);
    println!("transform: {} n={}", plan.transform, plan.size);
    println!("mults: {}", ops.mults);
    println!("adds: {}", ops.adds);
    println!("closed form: mults {}, adds {}", expected.mults, expected.adds);
    Ok(Outcome::Pass)
}

fn cmd_apply(plan_path: &Path, input: &Path, exact: bool) -> Result<Outcome> {
    let plan = load_plan(plan_path)?;
    let values = parse_vector(&read(input)?)?;
    let lines: Vec<String> = if exact {
        let x: Vec<FieldElement> = values.into_iter().map(FieldElement::from_rational).collect();
        apply_exact(&plan, &x)?.iter().map(FieldElement::to_surd_string).collect()
    } else {
        let x: Vec<f64> = values.iter().map(Rational::to_f64).collect();
        apply_float(&plan, &x)?.iter().map(|v| if *v == 0.0 { "0".into() } else { v.to_string() }).collect()
    };
    for l in lines {
        println!("{l}");
    }
    Ok(Outcome::Pass)
}

fn cmd_factor(k: u32, skew: Option<DyadicRational>) -> Result<Outcome> {
    for step in tower_factorization(k, skew.unwrap_or(DyadicRational::HALF))? {
        let product: String = match step.factors.as_slice() {
            [single] => single.symbolic(),
            many => many.iter().map(|f| format!("({})", f.symbolic())).collect(),
        };
        println!("{}: {product}", step.field_name());
    }
    Ok(Outcome::Pass)
}

fn cmd_galois(k: u32) -> Result<Outcome> {
    let g = galois_group(k)?;
    let n = g.order();
    let mut out = String::new();
    let _ = writeln!(out, "Gal(2T_{}) over Q: order {n}, {}", 1usize << k, if g.is_cyclic() { "cyclic" } else { "not cyclic" });
    let _ = writeln!(out, "\nautomorphisms (θ = {}):", generator_surd(k));
    for (i, a) in g.elements().iter().enumerate() {
        let _ = writeln!(out, "  σ{i}: θ ↦ {}   order {}", a.image().to_surd_string(), g.element_order(i));
    }
    let width = format!("σ{}", n - 1).chars().count();
    let _ = writeln!(out, "\nCayley table (row ∘ column):");
    let header: Vec<String> = (0..n).map(|i| format!("{:>width$}", format!("σ{i}"))).collect();
    let _ = writeln!(out, "  {:>width$} | {}", "∘", header.join(" "));
    for (a, row) in g.cayley().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|&c| format!("{:>width$}", format!("σ{c}"))).collect();
        let _ = writeln!(out, "  {:>width$} | {}", format!("σ{a}"), cells.join(" "));
    }
    let _ = writeln!(out, "\nsubgroups and fixed fields:");
    for h in subgroup_chain(&g) {
        let generator = fixed_field_generator(&g, &h)?;
        let members: Vec<String> = h.iter().map(|i| format!("σ{i}")).collect();
        let _ = writeln!(
            out,
            "  order {:>width$}: {{{}}}  fixed field {}, generated by 2T_{}(θ/2) = {}",
            h.len(),
            members.join(", "),
            field_name(generator.minimal_level()),
            h.len(),
            generator.to_surd_string(),
        );
    }
    print!("{out}");
    Ok(Outcome::Pass)
}

fn generator_surd(k: u32) -> String {
    FieldElement::generator(k).map(|g| g.to_surd_string()).unwrap_or_default()
}

fn cmd_emit(path: &Path, format: &str, out: Option<&Path>) -> Result<Outcome> {
    let plan = load_plan(path)?;
    write_or_print(&emitter(format)?.emit(&plan), out)?;
    Ok(Outcome::Pass)
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Plan { transform, n, skew, out } => cmd_plan(&transform, n, skew, out.as_deref()),
        Command::Verify { plan, exact, tol, json } => cmd_verify(&plan, exact, tol, json),
        Command::Count { plan } => cmd_count(&plan),
        Command::Apply { plan, input, exact } => cmd_apply(&plan, &input, exact),
        Command::Factor { k, skew } => cmd_factor(k, skew),
        Command::Galois { k } => cmd_galois(k),
        Command::Emit { plan, format, out } => cmd_emit(&plan, &format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
