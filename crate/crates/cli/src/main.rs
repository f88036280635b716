use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphsemi::arith::{self, ArithFunction, Population};
use graphsemi::bounds::{self, BoundCheck};
use graphsemi::counting::b_sequence;
use graphsemi::factorization::{factorize, is_cartesian_prime};
use graphsemi::graph::graph6::{from_graph6, to_graph6};
use graphsemi::graph::{canonical_form, enumerate_graphs_capped, DEFAULT_ENUM_CAP};
use graphsemi::report::Table;
use graphsemi::semiring::{self, Family, SemiringInstance};
use graphsemi::wright::{expansion_error_report, omega_list};
use graphsemi::{Error, Result};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "graphsemi", version, about = "Exact computations in the semiring of unlabeled graphs")]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Seed for sampled spot checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceName {
    Graphs,
    EvenEdge,
    Hamming,
}

impl From<InstanceName> for Family {
    fn from(name: InstanceName) -> Self {
        match name {
            InstanceName::Graphs => Family::AllGraphs,
            InstanceName::EvenEdge => Family::EvenEdge,
            InstanceName::Hamming => Family::Hamming,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Counts S(n), S^+(n) and the cartesian primes S^□(n).
    Census {
        #[arg(long, value_enum, default_value_t = InstanceName::Graphs)]
        instance: InstanceName,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Raise the enumeration cap (at most 9) for enumeration-backed instances.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        enum_cap: usize,
        /// Canonicalize this many random relabelings per enumerated order.
        #[arg(long)]
        spot_check: Option<usize>,
    },
    /// Cartesian prime factorization of graph6 inputs (arguments or stdin lines).
    Factor { graphs: Vec<String> },
    /// Remainder of the truncated expansion of connected counts.
    Wright {
        #[arg(long, value_enum, default_value_t = InstanceName::Graphs)]
        instance: InstanceName,
        #[arg(long = "R")]
        r: usize,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Render rationals as decimals with this many places.
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Exact evaluation of the counting bounds per degree.
    Bounds {
        #[arg(long, value_parser = parse_check)]
        check: BoundCheck,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long = "D", default_value_t = 3)]
        d: usize,
        #[arg(long, value_enum, default_value_t = InstanceName::Graphs)]
        instance: InstanceName,
    },
    /// Statistics of an arithmetic function over a prime population.
    Functions {
        #[arg(long = "fn", value_parser = parse_function)]
        function: ArithFunction,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_population, default_value = "add")]
        population: Population,
        #[arg(long, value_enum, default_value_t = InstanceName::Graphs)]
        instance: InstanceName,
        /// Report f^+(n) - f^□(n) against S(n) - S^+(n) instead.
        #[arg(long)]
        gap: bool,
        /// Check f(A□B) <= f(A)f(B) up to this product order instead.
        #[arg(long)]
        submultiplicative: Option<usize>,
    },
    /// Instance summaries and diagnostics.
    Semiring {
        #[arg(long, value_enum, default_value_t = InstanceName::Graphs)]
        instance: InstanceName,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long)]
        monotonicity: bool,
        #[arg(long)]
        closure: bool,
        #[arg(long)]
        self_complementary: bool,
        /// graph6 of a graph whose Hamming polynomial to print.
        #[arg(long)]
        hamming_polynomial: Option<String>,
    },
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|n| n..=n),
    }
}

fn parse_check(s: &str) -> std::result::Result<BoundCheck, String> {
    BoundCheck::parse(s).map_err(|e| e.to_string())
}

fn parse_function(s: &str) -> std::result::Result<ArithFunction, String> {
    ArithFunction::parse(s).map_err(|e| e.to_string())
}

fn parse_population(s: &str) -> std::result::Result<Population, String> {
    Population::parse(s).map_err(|e| e.to_string())
}

enum Output {
    Table(Table),
    Json(Value),
}

fn render(output: Output, format: Format) -> String {
    match (output, format) {
        (Output::Table(t), Format::Csv) => t.to_csv(),
        (Output::Table(t), Format::Json) => json_text(&t.to_json()),
        (Output::Json(v), _) => json_text(&v),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn instance_for(family: Family, horizon: usize, cap: usize) -> Result<SemiringInstance> {
    match family {
        Family::EvenEdge => semiring::instance_even_edge_capped(horizon, cap),
        _ => semiring::instance(family, horizon),
    }
}

fn census(
    family: Family,
    range: RangeInclusive<usize>,
    cap: usize,
    spot_check: Option<usize>,
    seed: u64,
) -> Result<Table> {
    let inst = instance_for(family, *range.end(), cap)?;
    let mut t = Table::new(["n", "S", "S+", "S_prime"]);
    for n in range.clone() {
        t.push(vec![
            n.to_string(),
            inst.totals.get(n)?.to_string(),
            inst.connected.get(n)?.to_string(),
            inst.primes.get(n)?.to_string(),
        ]);
    }
    if let Some(k) = spot_check {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut checked = 0;
        for n in range.filter(|&n| n <= cap.min(DEFAULT_ENUM_CAP)) {
            let graphs = enumerate_graphs_capped(n, cap)?;
            for g in graphs.choose_multiple(&mut rng, k) {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                if &canonical_form(&g.relabel(&perm)?)? != g {
                    return Err(Error::domain(format!("spot check failed at order {n}: {}", to_graph6(g))));
                }
                checked += 1;
            }
        }
        eprintln!("spot check: {checked} relabeled graphs canonicalized consistently");
    }
    Ok(t)
}

fn factor(inputs: Vec<String>) -> Result<Table> {
    let inputs = if inputs.is_empty() {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| Error::parse(e.to_string()))?;
        text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect()
    } else {
        inputs
    };
    let mut t = Table::new(["input", "factor", "multiplicity", "kind"]);
    for line in inputs {
        let g = from_graph6(&line)?;
        let kind = if is_cartesian_prime(&g)? { "PRIME" } else { "COMPOSITE" };
        for (f, m) in factorize(&g)?.multiplicities() {
            t.push(vec![line.trim().to_string(), to_graph6(&f), m.to_string(), kind.to_string()]);
        }
    }
    Ok(t)
}

fn wright(family: Family, r: usize, range: RangeInclusive<usize>, digits: Option<usize>) -> Result<Table> {
    let end = *range.end();
    let (inst, scale) = match family {
        Family::AllGraphs => (semiring::instance_all_graphs(end)?, BigRational::from_integer(1.into())),
        Family::EvenEdge => {
            (semiring::instance_even_edge(end)?, BigRational::new(1.into(), 2.into()))
        }
        Family::Hamming => return Err(Error::domain("no expansion polynomials for the Hamming instance")),
    };
    let b = b_sequence(&inst.totals, r.saturating_sub(1).max(1))?;
    let polys = omega_list(r, &b)?;
    Ok(expansion_error_report(&inst.connected, &polys, r, range, &scale)?.table(digits))
}

fn bounds_cmd(family: Family, check: BoundCheck, range: RangeInclusive<usize>, d: usize) -> Result<Table> {
    let horizon = match family {
        Family::AllGraphs => semiring::ALL_GRAPHS_PRIME_HORIZON,
        Family::EvenEdge => semiring::EVEN_EDGE_HORIZON,
        Family::Hamming => semiring::HAMMING_HORIZON,
    };
    let inst = semiring::instance(family, horizon)?;
    match check {
        BoundCheck::Axioms => Ok(bounds::axiom_table(&bounds::axiom_diagnostics(&inst, range)?)),
        BoundCheck::LeadingTerm => {
            let rows = range.map(|n| bounds::leading_term_check(&inst, n)).collect::<Result<Vec<_>>>()?;
            Ok(bounds::leading_table(&rows))
        }
        _ => Ok(bounds::bound_report(&inst, check, range, d)?.table()),
    }
}

fn functions(
    family: Family,
    f: ArithFunction,
    range: RangeInclusive<usize>,
    pop: Population,
    gap: bool,
    submultiplicative: Option<usize>,
) -> Result<Table> {
    let horizon = match family {
        Family::AllGraphs => semiring::ALL_GRAPHS_PRIME_HORIZON,
        _ => semiring::EVEN_EDGE_HORIZON,
    };
    let inst = semiring::instance(family, horizon)?;
    if let Some(n_max) = submultiplicative {
        let report = arith::submultiplicativity_check(f, &inst, n_max)?;
        let mut t = Table::new(["left", "right", "f_product", "f_left", "f_right"]);
        for v in &report.violations {
            t.push(vec![
                to_graph6(&v.left),
                to_graph6(&v.right),
                v.values.0.to_string(),
                v.values.1.to_string(),
                v.values.2.to_string(),
            ]);
        }
        eprintln!(
            "{}: {} pairs checked, {} violations",
            f.name(),
            report.pairs_checked,
            report.violations.len()
        );
        return Ok(t);
    }
    if gap {
        return Ok(arith::gap_table(&arith::function_gap_report(f, &inst, range)?));
    }
    let rows = range.map(|n| arith::stats(f, &inst, n, pop)).collect::<Result<Vec<_>>>()?;
    Ok(arith::stats_table(&rows))
}

fn semiring_cmd(
    family: Family,
    n_max: usize,
    monotonicity: bool,
    closure: bool,
    self_complementary: bool,
    hamming_polynomial: Option<String>,
) -> Result<Output> {
    if let Some(text) = hamming_polynomial {
        let g = from_graph6(&text)?;
        let mut t = Table::new(["term", "order", "multiplicity"]);
        for (key, m) in semiring::hamming_polynomial(&g)? {
            t.push(vec![to_graph6(&key.to_graph()), key.order().to_string(), m.to_string()]);
        }
        return Ok(Output::Table(t));
    }
    if self_complementary {
        let mut t = Table::new(["n", "lhs", "rhs", "equal"]);
        for n in 1..=n_max {
            let r = semiring::self_complementary_identity(n)?;
            t.push(vec![n.to_string(), r.lhs.to_string(), r.rhs.to_string(), r.holds().to_string()]);
        }
        return Ok(Output::Table(t));
    }
    if closure {
        let r = semiring::closure_check(family, n_max)?;
        let mut t = Table::new(["n_max", "pairs_checked", "closed", "operation", "left", "right"]);
        let (op, l, rt) = r.counterexample.as_ref().map_or(("", String::new(), String::new()), |c| {
            (c.operation, to_graph6(&c.left), to_graph6(&c.right))
        });
        t.push(vec![
            n_max.to_string(),
            r.pairs_checked.to_string(),
            r.is_closed().to_string(),
            op.to_string(),
            l,
            rt,
        ]);
        return Ok(Output::Table(t));
    }
    let inst = semiring::instance(family, n_max)?;
    if monotonicity {
        let r = inst.monotonicity(n_max)?;
        let mut t = Table::new(["n", "S+(n)", "S+(n+1)"]);
        for (n, a, b) in &r.descents {
            t.push(vec![n.to_string(), a.to_string(), b.to_string()]);
        }
        return Ok(Output::Table(t));
    }
    Ok(Output::Json(inst.to_json()?))
}

fn run(cli: Cli) -> Result<String> {
    let format = cli.output.format;
    let output = match cli.command {
        Command::Census { instance, n, enum_cap, spot_check } => {
            Output::Table(census(instance.into(), n, enum_cap, spot_check, cli.output.seed)?)
        }
        Command::Factor { graphs } => Output::Table(factor(graphs)?),
        Command::Wright { instance, r, n, digits } => Output::Table(wright(instance.into(), r, n, digits)?),
        Command::Bounds { check, n, d, instance } => Output::Table(bounds_cmd(instance.into(), check, n, d)?),
        Command::Functions { function, n, population, instance, gap, submultiplicative } => {
            Output::Table(functions(instance.into(), function, n, population, gap, submultiplicative)?)
        }
        Command::Semiring { instance, n_max, monotonicity, closure, self_complementary, hamming_polynomial } => {
            semiring_cmd(instance.into(), n_max, monotonicity, closure, self_complementary, hamming_polynomial)?
        }
    };
    Ok(render(output, format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.output.out.clone();
    match run(cli) {
        Ok(text) => {
            let written = match out {
                Some(path) => std::fs::write(&path, text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
