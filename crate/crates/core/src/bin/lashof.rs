use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lashof::atlas::AtlasSpace;
use lashof::components::{component, verify_truncation};
use lashof::desusp::{w_desusp_class, Desusp, PGen};
use lashof::engine::{Context, Engine};
use lashof::error::{Error, Result};
use lashof::expr::{evaluate, render, render_monomial};
use lashof::hopf::a_annihilated_primitives;
use lashof::pi0::Pi0Spec;
use lashof::predicates::{nu, nu_anchor, q_of_p, q_of_p_anchor, spherical_dims, w_class, x_class};
use lashof::scalar::Prime;
use lashof::seq::Seq;
use lashof::space::SpacePresentation;
use lashof::verify::{self, VerifyConfig};

#[derive(Parser)]
#[command(name = "lashof", version, about = "Dyer-Lashof and Steenrod calculator for H_*(QX; Z/2)")]
struct Cli {
    /// Coefficient prime; the engine supports only 2.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u64,
    /// Dimension bound for sweeps and series.
    #[arg(long, global = true)]
    max_dim: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Report,
}

#[derive(Args, Clone, Default)]
struct Ctx {
    /// QS0, or X for H_*QX with X an atlas space (BU, QBU) or a presentation file.
    #[arg(long, conflicts_with = "pi0")]
    space: Option<String>,
    /// `k=<k>` for the built-in stems, a `pi0 ...` line, or a file.
    #[arg(long)]
    pi0: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normalize an expression to admissible form.
    Normalize {
        #[command(flatten)]
        ctx: Ctx,
        expr: String,
    },
    /// Monomial basis in one dimension, or the Poincare series.
    Basis {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        dim: Option<u32>,
        #[arg(long)]
        series: bool,
    },
    /// Dual Steenrod action on an expression, or A-annihilated primitives of a space.
    Steenrod {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, requires = "expr")]
        r: Option<u32>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, conflicts_with_all = ["r", "expr"])]
        annihilated: Option<String>,
    },
    /// Loop-sum component arithmetic in H_*QS^{-k}.
    Pi0 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        component: bool,
        /// I J gamma, sequences comma-separated, `-` for the empty sequence.
        #[arg(long, num_args = 3, value_names = ["I", "J", "GAMMA"])]
        verify_truncation: Option<Vec<String>>,
    },
    /// Nontriviality predicates and Bott-periodic presentations.
    Atlas {
        #[arg(long, num_args = 2, value_names = ["I", "K"])]
        x: Option<Vec<u32>>,
        #[arg(long, num_args = 3, value_names = ["I", "K", "P"])]
        w: Option<Vec<u64>>,
        #[arg(long)]
        nu: Option<u64>,
        #[arg(long)]
        qp: Option<u64>,
        #[arg(long)]
        spherical: Option<u32>,
        /// Print a shipped presentation.
        #[arg(long)]
        show: Option<String>,
    },
    /// Primitives of H_*QBU and generators of the desuspension.
    Desusp {
        #[arg(long)]
        basis: Option<u32>,
        #[arg(long)]
        decompose: Option<String>,
        #[arg(long, requires = "k")]
        w: Option<String>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Run regression suites.
    Verify {
        suites: Vec<String>,
        #[arg(long, conflicts_with = "suites")]
        all: bool,
        #[arg(long)]
        timing: bool,
        /// Restrict the nilpotency suite to one truncation exponent.
        #[arg(long)]
        d: Option<u32>,
        /// Randomized cases for the coherence suite.
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        #[arg(long)]
        list: bool,
    },
}

fn atlas_space(name: &str) -> Option<AtlasSpace> {
    AtlasSpace::from_name(name).or_else(|| name.strip_prefix('Q').and_then(AtlasSpace::from_name))
}

fn read(path: &str) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn pi0_spec(arg: &str) -> Result<Pi0Spec> {
    if let Some(k) = arg.strip_prefix("k=") {
        let k = k.parse().map_err(|_| Error::InvalidArgument(format!("bad stem `{k}`")))?;
        return Pi0Spec::builtin(k);
    }
    if arg.starts_with("pi0 ") {
        return Pi0Spec::parse_line(arg);
    }
    let text = read(arg)?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::InvalidArgument(format!("{arg}: no pi0 line")))?;
    Pi0Spec::parse_line(line)
}

fn presentation(arg: &str) -> Result<SpacePresentation> {
    match atlas_space(arg) {
        Some(s) => Ok((*s.presentation()).clone()),
        None => SpacePresentation::parse(&read(arg)?),
    }
}

fn engine(ctx: &Ctx, prime: Prime) -> Result<Engine> {
    let c = match (&ctx.space, &ctx.pi0) {
        (_, Some(p)) => Context::Pi0(pi0_spec(p)?),
        (Some(s), None) if matches!(s.as_str(), "QS0" | "QS^0" | "S0") => Context::Pi0(Pi0Spec::builtin(0)?),
        (Some(s), None) => Context::Space(presentation(s)?.into()),
        (None, None) => Context::Pi0(Pi0Spec::builtin(0)?),
    };
    Engine::with_prime(c, prime)
}

fn parse_seq(s: &str) -> Result<Seq> {
    if s == "-" || s.is_empty() {
        return Ok(Seq::empty());
    }
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::MalformedSequence(s.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Seq::from_signed(&v)
}

fn yes(b: bool) -> &'static str {
    if b {
        "nontrivial"
    } else {
        "trivial"
    }
}

/// Runs one subcommand; `Ok(false)` means a verification failed.
fn run(cli: &Cli) -> Result<bool> {
    let prime = Prime::new(cli.prime)?;
    let bound = cli.max_dim.unwrap_or(16);
    match &cli.cmd {
        Cmd::Normalize { ctx, expr } => {
            let e = engine(ctx, prime)?;
            println!("{}", render(&e, &evaluate(&e, expr)?)?);
        }
        Cmd::Basis { ctx, dim, series } => {
            let e = engine(ctx, prime)?;
            if *series || dim.is_none() {
                let s: Vec<String> = e.poincare_series(bound).iter().map(u64::to_string).collect();
                println!("{}", s.join(" "));
            }
            if let Some(d) = dim {
                for m in e.basis(*d).iter() {
                    println!("{}", render_monomial(&e, m));
                }
            }
        }
        Cmd::Steenrod { ctx, r, expr, annihilated } => {
            if let Some(name) = annihilated {
                prime.require_two()?;
                let sp = presentation(name)?;
                for (d, x) in a_annihilated_primitives(&sp, bound)? {
                    println!("{d}: {}", sp.render_element(&x));
                }
            } else {
                let (Some(r), Some(x)) = (r, expr) else {
                    return Err(Error::InvalidArgument("give --r and --expr, or --annihilated".into()));
                };
                let e = engine(ctx, prime)?;
                println!("{}", render(&e, &e.sq(*r, &evaluate(&e, x)?)?)?);
            }
        }
        Cmd::Pi0 { k, expr, component: comp, verify_truncation: vt } => {
            let e = Engine::with_prime(Context::Pi0(Pi0Spec::builtin(*k)?), prime)?;
            let p = e.pi0().expect("pi0 context").clone();
            if let Some(x) = expr {
                let v = evaluate(&e, x)?;
                if *comp {
                    match component(&e, &v) {
                        Some(c) => println!("[{}]", p.render_element(&c)),
                        None => println!("not homogeneous in components"),
                    }
                } else {
                    println!("{}", render(&e, &v)?);
                }
            }
            if let Some(args) = vt {
                let gamma = p.parse_element(&args[2])?;
                let trace = verify_truncation(&e, &gamma, &parse_seq(&args[0])?, &parse_seq(&args[1])?)?;
                for s in &trace.steps {
                    println!("{s}");
                }
                println!("dimension {}: both routes vanish", trace.dim);
            }
        }
        Cmd::Atlas { x, w, nu: nj, qp, spherical, show } => {
            if let Some(v) = x {
                let c = x_class(v[0], v[1])?;
                println!("x_{}^(-{}) in {}: {}", c.i, c.k, c.space.name(), yes(c.nontrivial));
                if c.exterior {
                    println!("generates an exterior algebra");
                }
                for n in &c.notes {
                    println!("note: {n}");
                }
                println!("anchor: \"{}\"", c.anchor);
            }
            if let Some(v) = w {
                let c = w_class(v[0] as u32, v[1] as u32, v[2])?;
                println!("w^(-{}) in dim {} (p = {}): {}", c.k, c.dim, c.p, yes(c.nontrivial));
                if c.exterior {
                    println!("generates an exterior algebra");
                }
                println!("anchor: \"{}\"", c.anchor);
            }
            if let Some(j) = nj {
                println!("nu_{j} = {}", nu(*j));
                println!("anchor: \"{}\"", nu_anchor());
            }
            if let Some(p) = qp {
                println!("q({p}) = {}", q_of_p(*p)?);
                println!("anchor: \"{}\"", q_of_p_anchor());
            }
            if let Some(k) = spherical {
                let a = spherical_dims(*k);
                let dims: Vec<String> = a.value.iter().map(u32::to_string).collect();
                println!("{}", dims.join(" "));
                println!("anchor: \"{}\"", a.anchor);
            }
            if let Some(name) = show {
                let s = atlas_space(name).ok_or_else(|| Error::InvalidArgument(format!("unknown space `{name}`")))?;
                print!("{}", s.shipped_text());
            }
        }
        Cmd::Desusp { basis, decompose, w, k } => {
            prime.require_two()?;
            let d = Desusp::new();
            if let Some(n) = basis {
                for t in Desusp::generator_terms(*n) {
                    println!("{t}");
                }
            }
            if let Some(x) = decompose {
                let v = evaluate(d.engine(), x)?;
                println!("{}", d.primitive_decompose(&v)?);
            }
            if let (Some(g), Some(k)) = (w, k) {
                let c = w_desusp_class(g.parse::<PGen>()?, *k);
                println!("w^(-{})_{} in degree {}", 2 * k + 2, c.gen, c.degree);
                println!("in the image of the complex J-map: {}", c.in_j_image);
                println!("literal triviality clause applies: {}", c.literal_trivial);
                if let Some(n) = &c.note {
                    println!("note: {n}");
                }
            }
        }
        Cmd::Verify { suites, all, timing, d, cases, list } => {
            if *list {
                for s in verify::suites() {
                    println!("{:<16} {}", s.name, s.about);
                }
                return Ok(true);
            }
            if suites.is_empty() && !all {
                return Err(Error::InvalidArgument("name a suite or pass --all".into()));
            }
            let cfg = VerifyConfig { seed: cli.seed, max_dim: cli.max_dim, cases: *cases };
            let names: Vec<&str> = suites.iter().map(String::as_str).collect();
            let mut report = verify::run(&names, &cfg, *timing)?;
            if let Some(d) = d {
                let tag = format!("/d={d}/");
                report.checks.retain(|c| !c.id.starts_with("nilpotency/") || c.id.contains(&tag));
            }
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Report => print!("{}", report.render_report()),
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
