mod elements;

use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sigma_forge::catalog::{standard_suite_exprs, GroupExpr};
use sigma_forge::harness::{aggregate_failing, standard_sigmas, survey, GroupAnalysis, Outcome};
use sigma_forge::predicates::{
    is_quasinormal, is_seminormal, is_sigma_quasinormal, is_sigma_seminormal, is_sigma_subnormal,
    modular_violation_in,
};
use sigma_forge::subgroup::{core, is_subnormal, normal_closure};
use sigma_forge::{Error, FiniteGroup, Lattice, Limits, NormalLattice, PrimePartition, Subgroup};

#[derive(Parser, Debug)]
#[command(
    name = "sigma-forge",
    version,
    about = "σ-subnormality and modular subgroups of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every predicate for one subgroup.
    Check {
        #[command(flatten)]
        common: Common,
        /// Generators, as cycles `[(0 1)(2 3)]` or image arrays `[[1,0,2,3]]`.
        #[arg(long)]
        subgroup: String,
    },
    /// Tabulate the predicates for every subgroup.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Run the verification harness over groups and partitions.
    Survey {
        #[command(flatten)]
        common: Common,
        /// Named group suite.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// Subgroup count and the poset of normal subgroups.
    Lattice {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Group expression, e.g. `S(4)` or `DP(A(4),SDC(11,5,3))`.
    #[arg(long)]
    group: Vec<String>,
    /// Partition of the primes, e.g. `sigma1`, `pi:{2,3}`, `classes:[{2,5,11}]`.
    #[arg(long)]
    sigma: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Largest group order to analyse.
    #[arg(long)]
    max_order: Option<usize>,
    /// Largest number of subgroups in a lattice.
    #[arg(long)]
    max_subgroups: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Standard,
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Lib(Error::Resource(_)) => EXIT_RESOURCE,
            Failure::Lib(Error::Falsified(_)) => EXIT_VIOLATION,
            Failure::Lib(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type Run = Result<u8, Failure>;

// Specs and limits, all parsed before any computation.
struct Config {
    groups: Vec<GroupExpr>,
    sigmas: Vec<PrimePartition>,
    format: Format,
    limits: Limits,
}

impl Config {
    fn from_common(c: &Common) -> Result<Self, Failure> {
        let groups = c
            .group
            .iter()
            .map(|s| s.parse::<GroupExpr>())
            .collect::<Result<Vec<_>, _>>()?;
        let sigmas = c
            .sigma
            .iter()
            .map(|s| s.parse::<PrimePartition>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut limits = Limits::default();
        if let Some(n) = c.max_order {
            limits.max_lattice_order = n;
            limits.max_elements = limits.max_elements.min(n);
        }
        if let Some(n) = c.max_subgroups {
            limits.max_subgroups = n;
        }
        if let Some(secs) = c.time_budget {
            if !secs.is_finite() || secs < 0.0 {
                return Err(Failure::Usage(format!("invalid time budget {secs}")));
            }
            limits = limits.with_time_budget(Duration::from_secs_f64(secs));
        }
        Ok(Config {
            groups,
            sigmas,
            format: c.format,
            limits,
        })
    }

    fn single_group(&self) -> Result<&GroupExpr, Failure> {
        match self.groups.as_slice() {
            [g] => Ok(g),
            [] => Err(Failure::Usage("--group is required".into())),
            _ => Err(Failure::Usage("exactly one --group expected".into())),
        }
    }

    fn sigmas_or_default(&self) -> Vec<PrimePartition> {
        if self.sigmas.is_empty() {
            vec![PrimePartition::sigma1()]
        } else {
            self.sigmas.clone()
        }
    }

    fn build(&self, expr: &GroupExpr) -> Result<FiniteGroup, Failure> {
        let g = expr.build_with(&self.limits)?;
        if g.order() > self.limits.max_lattice_order {
            return Err(Error::Resource(format!(
                "group order {} exceeds the limit {}",
                g.order(),
                self.limits.max_lattice_order
            ))
            .into());
        }
        Ok(g)
    }
}

fn images(g: &FiniteGroup, s: &Subgroup) -> Vec<Vec<usize>> {
    s.gens().iter().filter_map(|&x| g.perm_images(x)).collect()
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn check(cfg: &Config, subgroup: &str) -> Run {
    let expr = cfg.single_group()?;
    let g = cfg.build(expr)?;
    let degree = g
        .degree()
        .ok_or_else(|| Failure::Usage("group has no permutation representation".into()))?;
    let gens = elements::parse_generators(subgroup, degree).map_err(Failure::Usage)?;
    let elems = elements::resolve(&g, &gens).map_err(Failure::Usage)?;
    let a = Subgroup::generated(&g, &elems);
    let lattice = Lattice::build_with(&g, &cfg.limits)?;
    let ai = lattice.index_of(&a)?;
    let modular = modular_violation_in(&lattice, ai, lattice.top()).is_none();
    let quasinormal = is_quasinormal(&g, &a)?;
    let seminormal = is_seminormal(&g, &a)?;
    let mut text = format!(
        "group: {expr}\norder: {}\nsubgroup order: {}\ncore order: {}\nnormal closure order: {}\nnormal: {}\nsubnormal: {}\nmodular: {modular}\nquasinormal: {quasinormal}\nseminormal: {seminormal}\n",
        g.order(),
        a.order(),
        core(&g, &a).order(),
        normal_closure(&g, &a).order(),
        a.is_normal(&g),
        is_subnormal(&g, &a),
    );
    let mut per_sigma = Vec::new();
    for sigma in cfg.sigmas_or_default() {
        cfg.limits.check_deadline("predicate evaluation")?;
        let (sub, chain) = is_sigma_subnormal(&lattice, &a, &sigma)?;
        let chain: Option<Vec<usize>> =
            chain.map(|c| c.terms().iter().map(Subgroup::order).collect());
        let sq = is_sigma_quasinormal(&lattice, &a, &sigma)?;
        let ss = is_sigma_seminormal(&g, &a, &sigma)?;
        text.push_str(&format!("sigma: {sigma}\n  σ-subnormal: {sub}\n"));
        if let Some(c) = &chain {
            let orders: Vec<String> = c.iter().map(usize::to_string).collect();
            text.push_str(&format!("  chain orders: {}\n", orders.join(" < ")));
        }
        text.push_str(&format!("  σ-quasinormal: {sq}\n  σ-seminormal: {ss}\n"));
        per_sigma.push(json!({
            "sigma": sigma.to_string(),
            "sigma_subnormal": sub,
            "chain_orders": chain,
            "sigma_quasinormal": sq,
            "sigma_seminormal": ss,
        }));
    }
    let value = json!({
        "group": expr.to_string(),
        "order": g.order(),
        "subgroup": {"order": a.order(), "generators": images(&g, &a)},
        "normal": a.is_normal(&g),
        "subnormal": is_subnormal(&g, &a),
        "modular": modular,
        "quasinormal": quasinormal,
        "seminormal": seminormal,
        "sigmas": per_sigma,
    });
    emit(cfg.format, text, value);
    Ok(0)
}

fn classify(cfg: &Config) -> Run {
    let expr = cfg.single_group()?;
    let g = cfg.build(expr)?;
    let an = GroupAnalysis::new(expr.to_string(), &g, &cfg.limits)?;
    let lattice = an.lattice();
    let sigmas = cfg.sigmas_or_default();
    let mut text = format!(
        "group: {expr}\norder: {}\nsubgroups: {}\n",
        g.order(),
        lattice.len()
    );
    let mut tables = Vec::new();
    for sigma in &sigmas {
        let search = sigma_forge::predicates::SigmaSubnormality::new(lattice, sigma);
        let reach = search.reach(lattice.top(), None);
        let sq: std::collections::BTreeSet<usize> =
            an.sigma_quasinormal(sigma).into_iter().collect();
        text.push_str(&format!(
            "sigma: {sigma}\n{:>5} {:>6}  mod sub σsub qn σqn semi σsemi\n",
            "index", "order"
        ));
        let mut rows = Vec::new();
        for (i, a) in lattice.subgroups().iter().enumerate() {
            cfg.limits.check_deadline("classification")?;
            let flags = [
                an.is_modular(i),
                an.is_subnormal(i),
                reach.contains(i),
                an.is_quasinormal(i),
                sq.contains(&i),
                is_seminormal(&g, a)?,
                is_sigma_seminormal(&g, a, sigma)?,
            ];
            let cells: Vec<&str> = flags.iter().map(|&f| if f { "x" } else { "." }).collect();
            text.push_str(&format!(
                "{i:>5} {:>6}  {:^3} {:^3} {:^4} {:^2} {:^3} {:^4} {:^5}\n",
                a.order(),
                cells[0],
                cells[1],
                cells[2],
                cells[3],
                cells[4],
                cells[5],
                cells[6]
            ));
            rows.push(json!({
                "index": i,
                "order": a.order(),
                "generators": images(&g, a),
                "modular": flags[0],
                "subnormal": flags[1],
                "sigma_subnormal": flags[2],
                "quasinormal": flags[3],
                "sigma_quasinormal": flags[4],
                "seminormal": flags[5],
                "sigma_seminormal": flags[6],
            }));
        }
        tables.push(json!({"sigma": sigma.to_string(), "subgroups": rows}));
    }
    let value = json!({
        "group": expr.to_string(),
        "order": g.order(),
        "subgroups": lattice.len(),
        "classes": tables,
    });
    emit(cfg.format, text, value);
    Ok(0)
}

fn lattice(cfg: &Config) -> Run {
    let expr = cfg.single_group()?;
    let g = cfg.build(expr)?;
    let l = Lattice::build_with(&g, &cfg.limits)?;
    let nl = NormalLattice::from_lattice(&l);
    let mut text = format!(
        "group: {expr}\norder: {}\nsubgroups: {}\nnormal subgroups: {}\n",
        g.order(),
        l.len(),
        nl.len()
    );
    let mut normal = Vec::new();
    for (i, n) in nl.subgroups().iter().enumerate() {
        let covers = nl.poset().covers_above(i);
        let list: Vec<String> = covers.iter().map(usize::to_string).collect();
        text.push_str(&format!(
            "  N{i}: order {} < [{}]\n",
            n.order(),
            list.join(", ")
        ));
        normal.push(json!({
            "index": i,
            "order": n.order(),
            "generators": images(&g, n),
            "covered_by": covers,
        }));
    }
    let value = json!({
        "group": expr.to_string(),
        "order": g.order(),
        "subgroups": l.len(),
        "normal": normal,
    });
    emit(cfg.format, text, value);
    Ok(0)
}

fn run_survey(cfg: &Config, suite: Option<Suite>) -> Run {
    let mut exprs = cfg.groups.clone();
    if let Some(Suite::Standard) = suite {
        exprs.extend(standard_suite_exprs());
    }
    if exprs.is_empty() {
        return Err(Failure::Usage("survey needs --suite or --group".into()));
    }
    let sigmas = if cfg.sigmas.is_empty() {
        standard_sigmas()
    } else {
        cfg.sigmas.clone()
    };
    let reports = survey(&exprs, &sigmas, &cfg.limits);
    let failing = aggregate_failing(&reports);
    let mut text = String::new();
    let (mut verified, mut skipped) = (0usize, 0usize);
    for r in &reports {
        let count = |o: Outcome| r.claims.iter().filter(|c| c.outcome == o).count();
        let (v, s, x) = (
            count(Outcome::Verified),
            count(Outcome::Skipped),
            count(Outcome::Violated),
        );
        verified += v;
        skipped += s;
        let status = if x > 0 {
            "VIOLATED"
        } else if s > 0 {
            "partial"
        } else {
            "verified"
        };
        text.push_str(&format!(
            "{} {}: {status} ({v} verified, {s} skipped)\n",
            r.group, r.sigma
        ));
        for c in r.claims.iter().filter(|c| c.outcome != Outcome::Verified) {
            text.push_str(&format!(
                "  {} {:?}: {}\n",
                c.id,
                c.outcome,
                c.reason.as_deref().unwrap_or("")
            ));
            if let Some(w) = &c.witness {
                text.push_str(&format!(
                    "    witness: {}\n",
                    serde_json::to_string(w).expect("json")
                ));
            }
        }
    }
    text.push_str(&format!(
        "cells: {}\nclaims verified: {verified}\nclaims skipped: {skipped}\nresult: {}\n",
        reports.len(),
        if failing { "FAILING" } else { "ok" }
    ));
    match cfg.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).expect("json")),
    }
    Ok(if failing { EXIT_VIOLATION } else { 0 })
}

fn run(cli: Cli) -> Run {
    match &cli.command {
        Command::Check { common, subgroup } => check(&Config::from_common(common)?, subgroup),
        Command::Classify { common } => classify(&Config::from_common(common)?),
        Command::Survey { common, suite } => run_survey(&Config::from_common(common)?, *suite),
        Command::Lattice { common } => lattice(&Config::from_common(common)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
