use clap::{Args, ValueEnum};
use serde::Serialize;

use fueter_core::clifford::{format_multivector, parse_paravector, MultivectorJson, TextCoeff};
use fueter_core::kernels::{oracle_kernel, Flavor, KernelSpec, LemmaCase, LemmaOp, Side};
use fueter_core::verify::Mode;
use fueter_core::{JetScalar, Rational};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelName {
    #[value(name = "cauchy-I")]
    CauchyI,
    #[value(name = "cauchy-II")]
    CauchyII,
    PseudoCauchy,
    FueterSce,
    DBetaDeltaM,
    DbarBetaDeltaM,
    Harmonic,
    LaplacianPower,
    Polyanalytic,
    Lemma,
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Dirac,
    DiracConj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub kernel: KernelName,
    /// Odd dimension of the algebra.
    #[arg(long)]
    pub n: usize,
    /// Cauchy parameter `s0,s1,...,sn`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Evaluation point `x0,x1,...,xn`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// Laplacian exponent, or the `Q` exponent of pseudo-cauchy and lemma.
    #[arg(long)]
    pub m: Option<u64>,
    /// Dirac power.
    #[arg(long)]
    pub beta: Option<u64>,
    /// Polyanalytic order.
    #[arg(long)]
    pub l: Option<u64>,
    /// Power of `(s - x0)` in lemma formulas 3 and 4.
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    /// Lemma formula number, 1 to 4.
    #[arg(long)]
    pub formula: Option<u8>,
    /// Operator of a lemma formula.
    #[arg(long, value_enum, default_value = "dirac")]
    pub op: OpArg,
    /// Catalog entry id.
    #[arg(long)]
    pub id: Option<String>,
    #[arg(long, default_value = "exact")]
    pub mode: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: EvalFormat,
    /// Differentiate the Cauchy kernel with the jet oracle instead of using
    /// the closed form.
    #[arg(long)]
    pub oracle: bool,
}

fn required<T: Copy>(v: Option<T>, flag: &str, kernel: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::config(format!("--{flag} is required for kernel {kernel}")))
}

fn to_u32(v: u64, flag: &str) -> Result<u32, Failure> {
    u32::try_from(v).map_err(|_| Failure::config(format!("--{flag} is too large")))
}

pub fn kernel_spec(args: &EvalArgs) -> Result<KernelSpec, Failure> {
    let name = args
        .kernel
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let flavor = match args.kernel {
        KernelName::CauchyI => Flavor::CauchyI,
        KernelName::CauchyII => Flavor::CauchyII,
        KernelName::PseudoCauchy => Flavor::PseudoCauchy {
            m: to_u32(required(args.m, "m", &name)?, "m")?,
        },
        KernelName::FueterSce => Flavor::FueterSce,
        KernelName::DBetaDeltaM => Flavor::DBetaDeltaM {
            beta: required(args.beta, "beta", &name)?,
            m: required(args.m, "m", &name)?,
        },
        KernelName::DbarBetaDeltaM => Flavor::DbarBetaDeltaM {
            beta: required(args.beta, "beta", &name)?,
            m: required(args.m, "m", &name)?,
        },
        KernelName::Harmonic => Flavor::Harmonic {
            m: required(args.m, "m", &name)?,
        },
        KernelName::LaplacianPower => Flavor::LaplacianPower {
            m: required(args.m, "m", &name)?,
        },
        KernelName::Polyanalytic => Flavor::Polyanalytic {
            l: required(args.l, "l", &name)?,
        },
        KernelName::Lemma => {
            let op = match args.op {
                OpArg::Dirac => LemmaOp::Dirac,
                OpArg::DiracConj => LemmaOp::DiracConj,
            };
            let formula = required(args.formula, "formula", &name)?;
            let m = to_u32(required(args.m, "m", &name)?, "m")?;
            Flavor::Lemma {
                case: LemmaCase::new(op, formula, m, args.k)?,
            }
        }
        KernelName::Catalog => Flavor::Catalog {
            id: args
                .id
                .clone()
                .ok_or_else(|| Failure::config("--id is required for kernel catalog"))?,
        },
    };
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    Ok(KernelSpec::new(args.n, side, flavor)?)
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    kernel: String,
    mode: String,
    method: &'static str,
    s: &'a str,
    x: &'a str,
    value: MultivectorJson,
}

fn evaluate<R: JetScalar + TextCoeff>(
    spec: &KernelSpec,
    args: &EvalArgs,
    mode: Mode,
) -> Result<String, Failure> {
    let s = parse_paravector::<R>(&args.s)?;
    let x = parse_paravector::<R>(&args.x)?;
    let value = if args.oracle {
        oracle_kernel(spec, &s, &x)?
    } else {
        spec.evaluate(&s, &x)?
    };
    Ok(match args.format {
        EvalFormat::Text => format_multivector(&value),
        EvalFormat::Json => {
            let out = EvalOutput {
                kernel: spec.label(),
                mode: mode.to_string(),
                method: if args.oracle { "oracle" } else { "closed-form" },
                s: &args.s,
                x: &args.x,
                value: MultivectorJson::from_multivector(&value),
            };
            serde_json::to_string_pretty(&out).map_err(|e| Failure::config(e.to_string()))?
        }
    })
}

pub fn run(args: &EvalArgs) -> Result<u8, Failure> {
    let mode: Mode = args.mode.parse()?;
    let spec = kernel_spec(args)?;
    let text = match mode {
        Mode::Exact => evaluate::<Rational>(&spec, args, mode)?,
        Mode::Float => evaluate::<f64>(&spec, args, mode)?,
    };
    println!("{text}");
    Ok(0)
}
