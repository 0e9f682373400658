use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tropkit::json;
use tropkit::kapranov::{kapranov_witness, product_hypersurface_check, univariate_variety, Certificate};
use tropkit::parse::{is_tropical_text, parse_gamma, parse_group_element, parse_laurent, parse_series, parse_tropical};
use tropkit::random::Sampler;
use tropkit::{hypersurface_cells_2d, suites, Error, GroupElement, LaurentPolynomial, Series, Signature, TropicalPolynomial};

#[derive(Parser)]
#[command(name = "tropkit", version, about = "Exact tropical geometry over ordered abelian groups")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Rank of the value group: 1 for the rationals, 2 for lex-ordered pairs
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    rank: u8,
    /// Cutoff exponent for truncated computations
    #[arg(long, global = true)]
    precision: Option<String>,
    /// Emit JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampling commands, echoed in their output
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cases per suite for axioms, random points for check-product
    #[arg(long, global = true, default_value_t = 100)]
    cases: usize,
    /// Comma-separated group elements, e.g. "0,1/2" or "(1,0),(0,1)"
    #[arg(long, global = true, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Polynomial text; "TROP: min(...)" for tropical polynomials
    #[arg(long, global = true, allow_hyphen_values = true)]
    poly: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Tropicalize a Laurent polynomial
    Trop,
    /// Evaluate a polynomial at --point (series) or a tropical polynomial at --gamma
    Eval {
        /// Semicolon-separated series, one per variable
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Membership of --gamma in the tropical hypersurface
    Hyp,
    /// Roots of a univariate tropical polynomial
    Roots1d,
    /// Cells of a bivariate rank-1 tropical curve
    Cells2d,
    /// A zero of --poly with valuation --gamma
    Witness,
    /// Compare the hypersurface of a product with the union of its factors'
    CheckProduct,
    /// Randomized property suites
    Axioms,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

struct Ctx {
    sig: Signature,
    opts: Opts,
}

impl Ctx {
    fn single_poly(&self) -> Result<&str, Failure> {
        match self.opts.poly.as_slice() {
            [p] => Ok(p),
            [] => Err(Failure::Input("missing --poly".into())),
            _ => Err(Failure::Input("expected exactly one --poly".into())),
        }
    }

    fn gamma(&self) -> Result<Vec<GroupElement>, Failure> {
        let text = self
            .opts
            .gamma
            .as_deref()
            .ok_or_else(|| Failure::Input("missing --gamma".into()))?;
        Ok(parse_gamma(text, self.sig)?)
    }

    fn precision(&self) -> Result<Option<GroupElement>, Failure> {
        match &self.opts.precision {
            Some(p) => Ok(Some(parse_group_element(p, self.sig)?)),
            None => Ok(None),
        }
    }

    fn laurent(&self, text: &str) -> Result<LaurentPolynomial, Failure> {
        if is_tropical_text(text) {
            return Err(Failure::Input("expected a Laurent polynomial, not a tropical one".into()));
        }
        Ok(parse_laurent(text, self.sig, 0)?)
    }

    /// A tropical polynomial, tropicalizing Laurent input.
    fn tropical(&self, text: &str, min_nvars: usize) -> Result<TropicalPolynomial, Failure> {
        if is_tropical_text(text) {
            Ok(parse_tropical(text, self.sig, min_nvars)?)
        } else {
            Ok(parse_laurent(text, self.sig, min_nvars)?.tropicalize()?)
        }
    }

    fn emit(&self, human: String, value: Value) -> Outcome {
        if self.opts.json {
            Ok(serde_json::to_string_pretty(&value).expect("serializable"))
        } else {
            Ok(human)
        }
    }
}

fn fmt_gamma(g: &[GroupElement]) -> String {
    g.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn trop(ctx: &Ctx) -> Outcome {
    let f = ctx.laurent(ctx.single_poly()?)?;
    let t = f.tropicalize()?;
    ctx.emit(t.to_string(), json::tropical(&t))
}

fn eval(ctx: &Ctx, point: Option<&str>) -> Outcome {
    let text = ctx.single_poly()?;
    if is_tropical_text(text) {
        let gamma = ctx.gamma()?;
        let f = parse_tropical(text, ctx.sig, gamma.len())?;
        let v = f.eval(&gamma)?;
        return ctx.emit(v.to_string(), json!({"value": json::group(&v)}));
    }
    let point = point.ok_or_else(|| Failure::Input("missing --point".into()))?;
    let x: Vec<Series> = point
        .split(';')
        .map(|s| parse_series(s, ctx.sig))
        .collect::<Result<_, _>>()?;
    let f = parse_laurent(text, ctx.sig, x.len())?;
    let v = f.eval(&x)?;
    let val = v.valuation();
    ctx.emit(
        format!("{v}\nvaluation: {val}"),
        json!({"value": json::series(&v), "valuation": json::val_result(&val)}),
    )
}

fn hyp(ctx: &Ctx) -> Outcome {
    let gamma = ctx.gamma()?;
    let f = ctx.tropical(ctx.single_poly()?, gamma.len())?;
    let argmin = f.argmin(&gamma)?;
    let member = argmin.exponents.len() > 1;
    let exps: Vec<&Vec<i64>> = argmin.exponents.iter().collect();
    ctx.emit(
        member.to_string(),
        json!({"member": member, "value": json::group(&argmin.value), "argmin": exps}),
    )
}

fn roots1d(ctx: &Ctx) -> Outcome {
    let text = ctx.single_poly()?;
    if is_tropical_text(text) {
        let f = parse_tropical(text, ctx.sig, 1)?;
        let roots = f.univariate_roots()?;
        let human = roots.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
        let list: Vec<Value> = roots.iter().map(json::group).collect();
        return ctx.emit(human, json!({"roots": list}));
    }
    let f = ctx.laurent(text)?;
    let variety = univariate_variety(&f)?;
    let mut lines = Vec::new();
    for (eta, cert) in &variety {
        lines.push(match cert {
            Certificate::Root(z) => format!("{eta}: root {z}"),
            Certificate::Failed(reason) => format!("{eta}: uncertified ({reason})"),
        });
    }
    let list: Vec<Value> = variety.iter().map(|(e, c)| json::certificate(e, c)).collect();
    ctx.emit(lines.join("\n"), json!({"roots": list}))
}

fn cells2d(ctx: &Ctx) -> Outcome {
    let f = ctx.tropical(ctx.single_poly()?, 2)?;
    let cells = hypersurface_cells_2d(&f)?;
    let human = cells
        .iter()
        .map(|c| {
            format!(
                "{} base ({}, {}) dir ({}, {}) between {:?} and {:?}",
                c.kind.as_str(),
                c.base[0],
                c.base[1],
                c.dir[0],
                c.dir[1],
                c.pair.0,
                c.pair.1
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let list: Vec<Value> = cells.iter().map(json::cell).collect();
    ctx.emit(human, json!({"cells": list}))
}

fn witness(ctx: &Ctx) -> Outcome {
    let f = ctx.laurent(ctx.single_poly()?)?;
    let gamma = ctx.gamma()?;
    let precision = ctx.precision()?;
    let w = kapranov_witness(&f, &gamma, precision.as_ref())?;
    let verified = w.valuation == gamma && w.residual_valuation.at_least(&w.certified_to);
    let point = w
        .point
        .iter()
        .enumerate()
        .map(|(i, x)| format!("x{} = {x}", i + 1))
        .collect::<Vec<_>>()
        .join("\n");
    let human = format!(
        "{point}\nvaluation: {}\nresidual valuation: {}\ncertified to: {}\nlifting steps: {}",
        fmt_gamma(&w.valuation),
        w.residual_valuation,
        w.certified_to,
        w.trace.len()
    );
    let out = ctx.emit(human, json::witness(&w))?;
    if verified {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn check_product(ctx: &Ctx) -> Outcome {
    let [f, g] = ctx.opts.poly.as_slice() else {
        return Err(Failure::Input("check-product needs --poly twice".into()));
    };
    let f = ctx.laurent(f)?;
    let g = ctx.laurent(g)?;
    let n = f.nvars().max(g.nvars());
    let f = parse_laurent(&f.to_string(), ctx.sig, n)?;
    let g = parse_laurent(&g.to_string(), ctx.sig, n)?;
    let mut sampler = Sampler::new(ctx.opts.seed, ctx.sig);
    let points: Vec<Vec<GroupElement>> = (0..ctx.opts.cases).map(|_| sampler.gamma(n)).collect();
    let report = product_hypersurface_check(&f, &g, &points)?;
    let mut human = format!(
        "seed: {}\nsamples: {} ({} on tie loci, {} random)\ninconclusive: {}\nfailures: {}",
        ctx.opts.seed,
        report.samples(),
        report.tie_samples,
        report.random_samples,
        report.inconclusive,
        report.failures.len()
    );
    for fail in &report.failures {
        human.push_str(&format!("\n  at ({}): {}", fmt_gamma(&fail.gamma), fail.reason));
    }
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| json!({"gamma": json::gamma(&f.gamma), "reason": f.reason}))
        .collect();
    let out = ctx.emit(
        human,
        json!({
            "seed": ctx.opts.seed,
            "samples": report.samples(),
            "tie_samples": report.tie_samples,
            "random_samples": report.random_samples,
            "inconclusive": report.inconclusive,
            "failures": failures,
            "passed": report.passed(),
        }),
    )?;
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn axioms(ctx: &Ctx) -> Outcome {
    let reports = suites::run_all(ctx.opts.seed, ctx.sig, ctx.opts.cases)?;
    let mut human = format!("seed: {}\nrank: {}", ctx.opts.seed, ctx.sig.rank());
    for r in &reports {
        human.push_str(&format!(
            "\n{}: {} cases, {} failures, {} inconclusive",
            r.name, r.cases, r.failures, r.inconclusive
        ));
        if let Some(detail) = &r.first_failure {
            human.push_str(&format!("\n  first failure: {detail}"));
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    let list: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.name,
                "cases": r.cases,
                "failures": r.failures,
                "inconclusive": r.inconclusive,
                "first_failure": r.first_failure,
            })
        })
        .collect();
    let out = ctx.emit(
        human,
        json!({"seed": ctx.opts.seed, "rank": ctx.sig.rank(), "suites": list, "passed": passed}),
    )?;
    if passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sig = Signature::from_rank(cli.opts.rank).expect("clap restricts the rank");
    let ctx = Ctx { sig, opts: cli.opts };
    let outcome = match &cli.command {
        Command::Trop => trop(&ctx),
        Command::Eval { point } => eval(&ctx, point.as_deref()),
        Command::Hyp => hyp(&ctx),
        Command::Roots1d => roots1d(&ctx),
        Command::Cells2d => cells2d(&ctx),
        Command::Witness => witness(&ctx),
        Command::CheckProduct => check_product(&ctx),
        Command::Axioms => axioms(&ctx),
    };
    match outcome {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(out)) => {
            println!("{out}");
            eprintln!("verification failed");
            ExitCode::from(2)
        }
    }
}
