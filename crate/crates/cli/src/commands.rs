use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::json;

use bcn_entropy::assr::transition_graph;
use bcn_entropy::generate::random_network;
use bcn_entropy::hardness::parse_dimacs;
use bcn_entropy::oracle::walk_counts;
use bcn_entropy::spectral::check_log_v;
use bcn_entropy::{
    analyze, compile_with_cap, parse_formula, parse_network, reduce_sat, verify_reduction,
    AssrModel, BoolMatrix, Error, Formula, NetworkDef,
};

use crate::{Command, GlobalArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub input: Option<PathBuf>,
    pub format: OutputFormat,
    pub horizon: usize,
    pub seed: u64,
    pub cap_bits: u32,
}

impl AnalysisConfig {
    fn new(global: &GlobalArgs, input: Option<&Path>, plain: OutputFormat) -> Result<Self> {
        if global.horizon == 0 {
            return Err(Error::InvalidArgument("--horizon must be at least 1".into()).into());
        }
        Ok(AnalysisConfig {
            input: input.map(Path::to_path_buf),
            format: if global.json {
                OutputFormat::Json
            } else {
                plain
            },
            horizon: global.horizon,
            seed: global.seed,
            cap_bits: global.cap_bits,
        })
    }

    fn read_input(&self) -> Result<String> {
        let path = self.input.as_deref().context("no input given")?;
        if path == Path::new("-") {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
        }
    }

    fn load_network(&self) -> Result<NetworkDef> {
        Ok(parse_network(&self.read_input()?)?)
    }

    fn load_model(&self) -> Result<AssrModel> {
        Ok(compile_with_cap(&self.load_network()?, self.cap_bits)?)
    }
}

pub fn run(command: Command, global: &GlobalArgs) -> Result<()> {
    use OutputFormat::*;
    match command {
        Command::Compile { path } => cmd_compile(&AnalysisConfig::new(global, Some(&path), Text)?),
        Command::Entropy { path } => cmd_entropy(&AnalysisConfig::new(global, Some(&path), Text)?),
        Command::CheckMax { path } => {
            cmd_check_max(&AnalysisConfig::new(global, Some(&path), Text)?)
        }
        Command::Decompose { path } => {
            cmd_decompose(&AnalysisConfig::new(global, Some(&path), Text)?)
        }
        Command::Count { path } => cmd_count(&AnalysisConfig::new(global, Some(&path), Csv)?),
        Command::ReduceSat {
            path,
            expr,
            dimacs,
            vars,
            verify,
            output,
        } => {
            let config = AnalysisConfig::new(global, path.as_deref(), Text)?;
            let dimacs = dimacs
                || path
                    .as_deref()
                    .is_some_and(|p| p.extension().is_some_and(|e| e == "cnf"));
            let (g, declared) = match (&expr, dimacs) {
                (Some(text), false) => (parse_formula(text)?, None),
                (Some(text), true) => split(parse_dimacs(text)?),
                (None, false) => (parse_formula(&config.read_input()?)?, None),
                (None, true) => split(parse_dimacs(&config.read_input()?)?),
            };
            let vars = vars.or(declared).unwrap_or_else(|| g.variables());
            cmd_reduce_sat(&config, &g, &vars, verify, output.as_deref())
        }
        Command::ExportDot { path, no_labels } => {
            cmd_export_dot(&AnalysisConfig::new(global, Some(&path), Text)?, !no_labels)
        }
        Command::Random { n, m } => cmd_random(&AnalysisConfig::new(global, None, Text)?, n, m),
    }
}

fn split((g, vars): (Formula, Vec<String>)) -> (Formula, Option<Vec<String>>) {
    (g, Some(vars))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn set(states: &[usize]) -> String {
    let items: Vec<String> = states.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn indent(m: &BoolMatrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

pub fn cmd_compile(config: &AnalysisConfig) -> Result<()> {
    let model = config.load_model()?;
    if config.format == OutputFormat::Json {
        return print_json(&model);
    }
    println!("n = {}, m = {}", model.n(), model.m());
    println!("L = {}", model.transition());
    print!("M =\n{}", indent(model.merged()));
    Ok(())
}

pub fn cmd_entropy(config: &AnalysisConfig) -> Result<()> {
    let model = config.load_model()?;
    let report = analyze(&model)?;
    if config.format == OutputFormat::Json {
        return print_json(&report);
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    println!("states      2^{} = {}", model.n(), model.num_states());
    println!("inputs      2^{} = {}", model.m(), model.num_inputs());
    println!("v           {}", report.v);
    println!("λ_M         {:.12}", report.lambda);
    let note = if report.nilpotent { " (nilpotent)" } else { "" };
    println!("h_S         {:.12} bits{note}", report.entropy_bits);
    println!("h_max       {} bits", report.h_max_bits);
    println!("h_S=log2 v  {}", yes(report.is_log_v));
    println!("Y           {}", set(&report.closed_set));
    println!("r           {}", report.r);
    println!("maximal     {}", yes(report.is_max_entropy));
    println!("one-step    {}", yes(report.is_one_step_controllable));
    Ok(())
}

pub fn cmd_check_max(config: &AnalysisConfig) -> Result<()> {
    let model = config.load_model()?;
    let report = analyze(&model)?;
    let decomposition = if report.is_max_entropy {
        check_log_v(model.merged())?
    } else {
        None
    };
    if config.format == OutputFormat::Json {
        return print_json(&json!({
            "is_max_entropy": report.is_max_entropy,
            "entropy_bits": report.entropy_bits,
            "h_max_bits": report.h_max_bits,
            "v": report.v,
            "r": decomposition.as_ref().map(|d| d.r),
            "permutation": decomposition.as_ref().map(|d| &d.permutation),
            "b_column_sums": decomposition.as_ref().map(|d| d.b_column_sums()),
        }));
    }
    match decomposition {
        Some(d) => {
            println!("MAX");
            println!("h_S = h_max = {} bits", report.h_max_bits);
            println!("r = {}", d.r);
            println!("Y = {}", set(&d.permutation[..d.r]));
            println!("permutation = {:?}", d.permutation);
            println!("B column sums = {:?}", d.b_column_sums());
        }
        None => {
            println!("NOT-MAX");
            println!(
                "h_S = {:.12} bits < h_max = {} bits",
                report.entropy_bits, report.h_max_bits
            );
        }
    }
    Ok(())
}

pub fn cmd_decompose(config: &AnalysisConfig) -> Result<()> {
    let model = config.load_model()?;
    let decomposition = check_log_v(model.merged())?;
    let rows = |m: &BoolMatrix| (0..m.rows()).map(|i| m.row_string(i)).collect::<Vec<_>>();
    if config.format == OutputFormat::Json {
        return print_json(&match &decomposition {
            Some(d) => json!({
                "is_log_v": true,
                "v": d.v,
                "r": d.r,
                "permutation": d.permutation,
                "B": rows(&d.b),
                "C": rows(&d.c),
                "D": rows(&d.d),
            }),
            None => json!({ "is_log_v": false }),
        });
    }
    let Some(d) = decomposition else {
        println!("no block form: h_S < log2 v");
        return Ok(());
    };
    println!("v = {}, r = {}", d.v, d.r);
    println!("Y = {}", set(&d.permutation[..d.r]));
    println!("permutation = {:?}", d.permutation);
    print!("B =\n{}", indent(&d.b));
    if d.r < d.permutation.len() {
        print!("C =\n{}", indent(&d.c));
        print!("D =\n{}", indent(&d.d));
    }
    Ok(())
}

pub fn cmd_count(config: &AnalysisConfig) -> Result<()> {
    let model = config.load_model()?;
    let counts = walk_counts(model.merged(), config.horizon)?;
    if config.format == OutputFormat::Json {
        let rows: Vec<_> = counts
            .iter()
            .map(|c| json!({ "j": c.horizon, "count": c.count.to_string(), "bits_per_step": c.bits_per_step() }))
            .collect();
        return print_json(&rows);
    }
    println!("j,count,bits_per_step");
    for c in &counts {
        println!("{},{},{}", c.horizon, c.count, c.bits_per_step());
    }
    Ok(())
}

pub fn cmd_reduce_sat(
    config: &AnalysisConfig,
    g: &Formula,
    vars: &[String],
    verify: bool,
    output: Option<&Path>,
) -> Result<()> {
    let reduction = reduce_sat(g, vars)?;
    if reduction.network.n() + reduction.network.m() > config.cap_bits as usize && verify {
        return Err(Error::CapExceeded {
            what: "state + input variables",
            needed: (reduction.network.n() + reduction.network.m()) as u64,
            cap: config.cap_bits as u64,
        }
        .into());
    }
    let verdict = if verify {
        Some(verify_reduction(g, vars)?)
    } else {
        None
    };
    let mut network = format!("# reduction of: {g}\n# variables: {}\n", vars.join(" "));
    network.push_str(&reduction.network.to_string());

    if config.format == OutputFormat::Json {
        if let Some(path) = output {
            write_file(path, &network)?;
        }
        return print_json(&json!({
            "vars": vars,
            "network": if output.is_none() { Some(&network) } else { None },
            "verdict": verdict,
        }));
    }
    match output {
        Some(path) => {
            write_file(path, &network)?;
            if let Some(v) = &verdict {
                println!("{}", serde_json::to_string(v)?);
            }
        }
        None => {
            print!("{network}");
            if let Some(v) = &verdict {
                println!("# verdict: {}", serde_json::to_string(v)?);
            }
        }
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_export_dot(config: &AnalysisConfig, with_input_labels: bool) -> Result<()> {
    let model = config.load_model()?;
    let graph = transition_graph(&model);
    if config.format == OutputFormat::Json {
        return print_json(&graph);
    }
    print!("{}", graph.to_dot(with_input_labels));
    Ok(())
}

pub fn cmd_random(config: &AnalysisConfig, n: usize, m: usize) -> Result<()> {
    if n + m > config.cap_bits as usize {
        return Err(Error::CapExceeded {
            what: "state + input variables",
            needed: (n + m) as u64,
            cap: config.cap_bits as u64,
        }
        .into());
    }
    let net = random_network(n, m, config.seed)?;
    let mut text = String::new();
    writeln!(text, "# random network: n={n} m={m} seed={}", config.seed)?;
    text.push_str(&net.to_string());
    if config.format == OutputFormat::Json {
        return print_json(&json!({ "n": n, "m": m, "seed": config.seed, "network": text }));
    }
    print!("{text}");
    Ok(())
}
