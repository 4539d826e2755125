//! Command-line front end for the lambda-ring kernel.
//!
//! JSON goes to stdout, human-readable notes to stderr. Exit codes:
//! 0 success, 1 usage errors, 2 domain errors (reported as
//! `{ok:false, error:{kind, message}}`).

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lambda_ring::automorphism::{apply_map, build_sigma};
use lambda_ring::error::Error;
use lambda_ring::factor::factor_series;
use lambda_ring::field::FieldDesc;
use lambda_ring::growth::GrowthFn;
use lambda_ring::json as out;
use lambda_ring::norm::{membership_check, norm_lambda, norm_weighted, Weights};
use lambda_ring::parse::{
    parse_field_spec, parse_lambda_spec, parse_ratio, parse_series, parse_weights,
};
use lambda_ring::series::Series;
use lambda_ring::weierstrass::{
    divide, divide_oracle, invert_unit, is_distinguished, prepare, reduce_mod_omega,
};

const MAX_PREC: u32 = 4096;
const MAX_NVARS: usize = 64;

#[derive(Parser)]
#[command(
    name = "lring",
    version,
    about = "Exact Weierstrass division, preparation and factorization in F[X1..Xn; Y, lambda]"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Coefficient field: Q, or Fp:N for a prime N
    #[arg(long, default_value = "Q")]
    field: String,
    /// Growth function: linear:a, pow:a, exp:b or table:v0,v1,...
    #[arg(long, default_value = "linear:1")]
    lambda: String,
    /// Y-adic working precision N; results are exact mod Y^N
    #[arg(long, default_value_t = 8)]
    prec: u32,
    /// Number of X variables
    #[arg(long, default_value_t = 1)]
    nvars: usize,
    /// Weight vector c1,...,cn of positive rationals
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Y-adic norm |f|_lambda as an exact exponent
    Norm {
        #[command(flatten)]
        common: Common,
        series: String,
    },
    /// Weighted norm ||f||_{lambda,c}; requires --weights
    Wnorm {
        #[command(flatten)]
        common: Common,
        series: String,
    },
    /// Invert a unit (nonzero constant mod Y) via the geometric series
    Invert {
        #[command(flatten)]
        common: Common,
        series: String,
    },
    /// Weierstrass division f = q*g + r by the contraction iteration
    Divide {
        #[command(flatten)]
        common: Common,
        f: String,
        g: String,
    },
    /// Independent level-by-level division; must agree with divide
    #[command(name = "divide-oracle")]
    DivideOracle {
        #[command(flatten)]
        common: Common,
        f: String,
        g: String,
    },
    /// Weierstrass preparation g = unit * omega
    Prepare {
        #[command(flatten)]
        common: Common,
        g: String,
    },
    /// Coordinates of f in the free module modulo a Weierstrass polynomial
    Reduce {
        #[command(flatten)]
        common: Common,
        f: String,
        omega: String,
        /// Common Y-power d of the module basis {Y^d X_n^i}
        #[arg(long, default_value_t = 0)]
        ypow: u32,
    },
    /// Build the distinguishing automorphism for f and apply it
    Distinguish {
        #[command(flatten)]
        common: Common,
        f: String,
    },
    /// Test whether g is X_n-distinguished and report the degree
    #[command(name = "is-distinguished")]
    IsDistinguished {
        #[command(flatten)]
        common: Common,
        g: String,
    },
    /// One-X-variable factorization through Weierstrass preparation
    Factor {
        #[command(flatten)]
        common: Common,
        f: String,
    },
    /// Growth-bound membership heuristic deg_X(f_k) <= C*lambda(k)
    Member {
        #[command(flatten)]
        common: Common,
        f: String,
        /// The constant C in the slice-degree bound
        #[arg(long)]
        cf: String,
        /// First Y-level to check
        #[arg(long, default_value_t = 0)]
        k0: u32,
    },
    /// Validate lambda(0)=0, strict monotonicity and superadditivity
    #[command(name = "validate-lambda")]
    ValidateLambda {
        #[command(flatten)]
        common: Common,
        /// Largest sampled integer
        #[arg(long, default_value_t = 64)]
        bound: u32,
    },
}

enum Failure {
    Usage(String),
    Kernel(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

struct Ctx {
    field: FieldDesc,
    lam: GrowthFn,
    prec: u32,
    nvars: usize,
    weights: Option<Weights>,
}

fn ctx(common: &Common) -> Result<Ctx, Failure> {
    let field =
        parse_field_spec(&common.field).map_err(|e| Failure::Usage(format!("--field: {e}")))?;
    let lam =
        parse_lambda_spec(&common.lambda).map_err(|e| Failure::Usage(format!("--lambda: {e}")))?;
    if common.prec < 1 || common.prec > MAX_PREC {
        return Err(Failure::Usage(format!("--prec must lie in 1..={MAX_PREC}")));
    }
    if common.nvars < 1 || common.nvars > MAX_NVARS {
        return Err(Failure::Usage(format!(
            "--nvars must lie in 1..={MAX_NVARS}"
        )));
    }
    let weights = match &common.weights {
        None => None,
        Some(text) => {
            let w = parse_weights(text).map_err(|e| Failure::Usage(format!("--weights: {e}")))?;
            if w.len() != common.nvars {
                return Err(Failure::Usage(format!(
                    "--weights needs {} entries, got {}",
                    common.nvars,
                    w.len()
                )));
            }
            Some(w)
        }
    };
    Ok(Ctx {
        field,
        lam,
        prec: common.prec,
        nvars: common.nvars,
        weights,
    })
}

fn series_arg(ctx: &Ctx, text: &str) -> Result<Series, Failure> {
    Ok(parse_series(text, &ctx.field, ctx.nvars, ctx.prec)?)
}

fn ok(result: Value) -> Value {
    json!({ "ok": true, "result": result })
}

fn ok_with(result: Value, diagnostics: Value) -> Value {
    json!({ "ok": true, "result": result, "diagnostics": diagnostics })
}

fn run(cmd: &Cmd) -> Result<Value, Failure> {
    match cmd {
        Cmd::Norm { common, series } => {
            let ctx = ctx(common)?;
            let a = series_arg(&ctx, series)?;
            let n = norm_lambda(&a, &ctx.lam)?;
            Ok(ok(out::norm_exp_json(&n)))
        }
        Cmd::Wnorm { common, series } => {
            let ctx = ctx(common)?;
            let w = ctx
                .weights
                .clone()
                .ok_or_else(|| Failure::Usage("wnorm requires --weights".into()))?;
            let a = series_arg(&ctx, series)?;
            let n = norm_weighted(&a, &ctx.lam, &w)?;
            Ok(ok_with(
                out::norm_exp_json(&n),
                json!({ "weights": out::weights_json(&w) }),
            ))
        }
        Cmd::Invert { common, series } => {
            let ctx = ctx(common)?;
            let f = series_arg(&ctx, series)?;
            let inv = invert_unit(&f)?;
            Ok(ok(json!({ "series": inv.to_string() })))
        }
        Cmd::Divide { common, f, g } => {
            let ctx = ctx(common)?;
            let f = series_arg(&ctx, f)?;
            let g = series_arg(&ctx, g)?;
            let res = divide(&f, &g, &ctx.lam, ctx.weights.clone())?;
            let diag = json!({
                "s": res.s,
                "iterations": res.iterations,
                "weights": res.weights_used.as_ref().map(out::weights_json),
            });
            Ok(ok_with(out::division_json(&res), diag))
        }
        Cmd::DivideOracle { common, f, g } => {
            let ctx = ctx(common)?;
            let f = series_arg(&ctx, f)?;
            let g = series_arg(&ctx, g)?;
            let res = divide_oracle(&f, &g)?;
            let diag = json!({ "s": res.s, "iterations": res.iterations });
            Ok(ok_with(out::division_json(&res), diag))
        }
        Cmd::Prepare { common, g } => {
            let ctx = ctx(common)?;
            let g = series_arg(&ctx, g)?;
            let prep = prepare(&g, &ctx.lam)?;
            let diag = json!({ "s": prep.s });
            Ok(ok_with(out::preparation_json(&prep), diag))
        }
        Cmd::Reduce {
            common,
            f,
            omega,
            ypow,
        } => {
            let ctx = ctx(common)?;
            let f = series_arg(&ctx, f)?;
            let omega = series_arg(&ctx, omega)?;
            let coords = reduce_mod_omega(&f, &omega, *ypow)?;
            let diag = json!({ "s": coords.len(), "y_power": ypow });
            Ok(ok_with(
                json!({ "coords": out::coordinates_json(&coords) }),
                diag,
            ))
        }
        Cmd::Distinguish { common, f } => {
            let ctx = ctx(common)?;
            let f = series_arg(&ctx, f)?;
            let map = build_sigma(&f)?;
            let image = apply_map(&map, &f)?;
            let s = is_distinguished(&image);
            let diag = json!({ "s": s });
            Ok(ok_with(
                json!({
                    "map": out::automap_json(&map),
                    "image": image.to_string(),
                }),
                diag,
            ))
        }
        Cmd::IsDistinguished { common, g } => {
            let ctx = ctx(common)?;
            let g = series_arg(&ctx, g)?;
            Ok(ok(out::distinguished_json(is_distinguished(&g))))
        }
        Cmd::Factor { common, f } => {
            let ctx = ctx(common)?;
            let f = series_arg(&ctx, f)?;
            let fact = factor_series(&f, &ctx.lam)?;
            Ok(ok(out::factorization_json(&fact)))
        }
        Cmd::Member { common, f, cf, k0 } => {
            let ctx = ctx(common)?;
            let c = parse_ratio(cf).map_err(|e| Failure::Usage(format!("--cf: {e}")))?;
            let f = series_arg(&ctx, f)?;
            let rep = membership_check(&f, &ctx.lam, &c, *k0)?;
            Ok(ok(out::membership_json(&rep)))
        }
        Cmd::ValidateLambda { common, bound } => {
            let ctx = ctx(common)?;
            let rep = ctx.lam.validate(*bound);
            Ok(ok(out::lambda_report_json(&rep)))
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli.cmd) {
        Ok(value) => {
            println!("{}", serde_json::to_string(&value).expect("serializable"));
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(1);
        }
        Err(Failure::Kernel(e)) => {
            let value = json!({
                "ok": false,
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            println!("{}", serde_json::to_string(&value).expect("serializable"));
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
