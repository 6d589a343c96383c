//! Command-line front end. Every command writes one JSON report to stdout.

pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abgrp::{smith_normal_form, FinAbGroup, IntMatrix};
use crate::actcat::{
    action_cat, bin_cat, classifying_cat, double_action_cat, fin_coeff_cat, gk_cat, he_cat, relative_e, relative_g,
    s1s_cat, FiniteCategory,
};
use crate::fingrp::DEFAULT_CAP;
use crate::kcalc::{
    additivity_check, cofinality_check, digest, k0, k1, k_finite_coefficients, liscompletion_check, telescope_check,
    CoefficientInput, Verdict,
};
use crate::monoid::{grothendieck_group, grothendieck_group_finite, CommMonoidPres};
use crate::smgpd::{check_condition_star, EnumeratedGroupoid, SmInput};
use crate::{Error, Result};

pub use input::{Builtin, InputDocument, Overrides, Resolved};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kgroup",
    version,
    about = "Group completions of finite monoids and symmetric monoidal groupoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Truncation degree N.
    #[arg(long, global = true)]
    pub truncate: Option<usize>,
    /// Largest group enumerated before giving up.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the category in DOT format.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub builtin: Option<Builtin>,
    /// Coefficient ring `Z/m` for `--builtin freemod`.
    #[arg(long, global = true)]
    pub modulus: Option<u64>,
    /// A monoid-table or monoid-presentation document.
    #[arg(long, global = true)]
    pub monoid: Option<PathBuf>,
    /// Any input document.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Report wall time on stderr.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CategoryFlags {
    /// Print the whole category instead of a summary.
    #[arg(long)]
    pub export: bool,
    /// Include `H₁` of every component.
    #[arg(long)]
    pub h1: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group completion of `π₀`.
    K0,
    /// Colimit of abelianized automorphism groups.
    K1,
    /// Grothendieck group of a monoid, by two routes where possible.
    Grothendieck,
    /// Quillen's `S⁻¹S`.
    S1s {
        #[command(flatten)]
        flags: CategoryFlags,
    },
    /// Quillen's `⟨S,S⟩`.
    #[command(name = "hE")]
    He {
        #[command(flatten)]
        flags: CategoryFlags,
    },
    /// Diagonal full subcategory of `S⁻¹S`.
    Bin {
        #[command(flatten)]
        flags: CategoryFlags,
    },
    /// Build any construction.
    Category {
        #[arg(long, value_enum)]
        construction: Construction,
        /// Arity for `gk`.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Coefficient for `fin-coeff`.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        flags: CategoryFlags,
    },
    /// Verdicts on structural statements.
    #[command(subcommand)]
    Check(CheckCommand),
    /// K-group with `Z/n` coefficients.
    Coeff {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Components and `H₁` of `𝐆M` against the Grothendieck group.
    Liscompletion,
    /// Components of `𝐆_k M` against `gp(M)^k`.
    Additivity {
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Cyclic triviality, abelianness and local `π₀` at the truncation.
    Telescope,
    /// Classical cofinality and the induced maps on `K₀` and `K₁`.
    Cofinality,
    /// Condition (*) on the symmetries.
    Star,
    /// Randomized Smith normal form self-check.
    Snf {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        #[arg(long, default_value_t = 9)]
        bound: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Action,
    Classifying,
    Double,
    Gk,
    RelativeE,
    RelativeG,
    FinCoeff,
    #[value(name = "hE")]
    He,
    S1s,
    Bin,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let start = Instant::now();
    let result = execute(&cli);
    if cli.global.timing {
        let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            if writeln!(out, "{text}").is_err() {
                return EXIT_INPUT;
            }
            if failed(&report) {
                EXIT_VERDICT_FAIL
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn failed(report: &Value) -> bool {
    report
        .get("verdict")
        .and_then(Value::as_str)
        .is_some_and(|v| v == "fail" || v == "fails-with-certificate")
}

fn load(g: &GlobalArgs) -> Result<Resolved> {
    let o = Overrides {
        truncation: g.truncate,
        modulus: g.modulus,
        cap: g.cap,
    };
    match (g.builtin, &g.monoid, &g.input) {
        (Some(b), None, None) => {
            let n = g.truncate.ok_or_else(|| Error::invalid("--builtin needs --truncate"))?;
            Ok(Resolved::Groupoid {
                pres: input::builtin(b, g.modulus, n, g.cap.unwrap_or(DEFAULT_CAP))?,
                cap: g.cap,
            })
        }
        (None, Some(path), None) => {
            let doc = input::read_document(path)?;
            match doc {
                InputDocument::MonoidTable(_) | InputDocument::MonoidPresentation(_) => doc.resolve(o),
                _ => Err(Error::invalid(
                    "--monoid takes a monoid-table or monoid-presentation document",
                )),
            }
        }
        (None, None, Some(path)) => input::read_document(path)?.resolve(o),
        (None, None, None) => Err(Error::invalid("give one of --builtin, --monoid or --input")),
        _ => Err(Error::invalid("--builtin, --monoid and --input are mutually exclusive")),
    }
}

fn to_value<T: Serialize>(kind: &str, report: &T) -> Value {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut v {
        map.insert("kind".into(), Value::String(kind.into()));
    }
    v
}

fn execute(cli: &Cli) -> Result<Value> {
    let g = &cli.global;
    let cap = || g.cap.unwrap_or(DEFAULT_CAP);
    if g.dot.is_some()
        && !matches!(
            cli.command,
            Command::S1s { .. } | Command::He { .. } | Command::Bin { .. } | Command::Category { .. }
        )
    {
        return Err(Error::invalid("--dot applies to category commands"));
    }
    if let Command::Check(CheckCommand::Snf { count, max_dim, bound }) = cli.command {
        return Ok(to_value("snf", &snf_suite(g.seed, count, max_dim, bound)));
    }
    let input = load(g)?;
    let cap = input.cap().unwrap_or_else(cap);
    match &cli.command {
        Command::K0 => Ok(to_value("k0", &k0(&input.sm_input()?)?)),
        Command::K1 => Ok(to_value("k1", &k1(&input.sm_input()?, cap)?)),
        Command::Grothendieck => grothendieck(&input),
        Command::S1s { flags } => category_report(g, "s1s", &input, s1s_cat(&input.sm_input()?, cap)?, *flags),
        Command::He { flags } => category_report(g, "hE", &input, he_cat(&input.sm_input()?, cap)?, *flags),
        Command::Bin { flags } => category_report(g, "bin", &input, bin_cat(&input.sm_input()?, cap)?, *flags),
        Command::Category {
            construction,
            k,
            n,
            flags,
        } => {
            let c = build(*construction, &input, *k, *n, cap)?;
            let name = construction.to_possible_value().expect("named").get_name().to_string();
            category_report(g, &name, &input, c, *flags)
        }
        Command::Check(check) => run_check(check, &input, cap),
        Command::Coeff { n } => {
            let ci = match input {
                Resolved::Monoid(m) => CoefficientInput::Finite(m),
                Resolved::Presentation(p) => CoefficientInput::Presented(p),
                Resolved::Groupoid { pres, .. } => CoefficientInput::Groupoid(pres),
                other => return Err(Error::invalid(format!("coeff does not take a {}", other.kind()))),
            };
            Ok(to_value("coeff", &k_finite_coefficients(&ci, *n, cap)?))
        }
    }
}

#[derive(Serialize)]
struct GrothendieckReport {
    input_digest: String,
    #[serde(flatten)]
    group: FinAbGroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    class_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation_route: Option<FinAbGroup>,
    verdict: Verdict,
}

fn grothendieck(input: &Resolved) -> Result<Value> {
    let report = match input {
        Resolved::Monoid(m) => {
            let c = grothendieck_group_finite(m)?;
            let via_pres = grothendieck_group(&CommMonoidPres::from_table(m));
            GrothendieckReport {
                input_digest: digest(m),
                verdict: Verdict::from_bool(via_pres == c.group),
                group: c.group,
                class_count: Some(c.class_count),
                presentation_route: Some(via_pres),
            }
        }
        Resolved::Presentation(p) => GrothendieckReport {
            input_digest: digest(p),
            group: grothendieck_group(p),
            class_count: None,
            presentation_route: None,
            verdict: Verdict::Pass,
        },
        other => {
            return Err(Error::invalid(format!(
                "grothendieck takes a monoid, got a {}",
                other.kind()
            )))
        }
    };
    Ok(to_value("grothendieck", &report))
}

fn build(c: Construction, input: &Resolved, k: usize, n: Option<usize>, cap: usize) -> Result<FiniteCategory> {
    let hom = || match input {
        Resolved::Homomorphism(f) => Ok(f),
        other => Err(Error::invalid(format!(
            "this construction takes a homomorphism, got a {}",
            other.kind()
        ))),
    };
    match c {
        Construction::Action => Ok(action_cat(input.monoid()?)),
        Construction::Classifying => Ok(classifying_cat(input.monoid()?)),
        Construction::Double => Ok(double_action_cat(input.monoid()?)),
        Construction::Gk => Ok(gk_cat(input.monoid()?, k)),
        Construction::RelativeE => relative_e(hom()?),
        Construction::RelativeG => relative_g(hom()?),
        Construction::FinCoeff => {
            let n = n.ok_or_else(|| Error::invalid("fin-coeff needs --n"))?;
            fin_coeff_cat(&input.sm_input()?, n, cap)
        }
        Construction::He => he_cat(&input.sm_input()?, cap),
        Construction::S1s => s1s_cat(&input.sm_input()?, cap),
        Construction::Bin => bin_cat(&input.sm_input()?, cap),
    }
}

#[derive(Serialize)]
struct CategoryReport {
    construction: String,
    input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation: Option<usize>,
    objects: Vec<String>,
    morphism_count: usize,
    /// `hom_sizes[x][y] = |Hom(x, y)|`.
    hom_sizes: Vec<Vec<usize>>,
    components: usize,
    component_of: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h1: Option<Vec<FinAbGroup>>,
}

fn input_digest(input: &Resolved) -> String {
    match input {
        Resolved::Monoid(m) => digest(m),
        Resolved::Presentation(p) => digest(p),
        Resolved::Groupoid { pres, .. } => digest(pres),
        Resolved::Homomorphism(f) => digest(&(&f.source, &f.target, &f.map)),
        Resolved::Selection { ambient, selection } => digest(&(input_digest(ambient), selection)),
    }
}

fn category_report(
    g: &GlobalArgs,
    name: &str,
    input: &Resolved,
    c: FiniteCategory,
    flags: CategoryFlags,
) -> Result<Value> {
    if let Some(path) = &g.dot {
        std::fs::write(path, c.to_dot(name))?;
    }
    if flags.export {
        return Ok(serde_json::to_value(&c)?);
    }
    let comps = c.components();
    let h1 = if flags.h1 {
        Some(
            (0..comps.count)
                .map(|k| c.h1_component(comps.members(k)[0]))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let n = c.object_count();
    let mut hom_sizes = vec![vec![0; n]; n];
    for f in c.morphisms() {
        hom_sizes[f.source][f.target] += 1;
    }
    let truncation = match input {
        Resolved::Groupoid { pres, .. } => Some(pres.truncation),
        _ => None,
    };
    Ok(to_value(
        "category",
        &CategoryReport {
            construction: name.into(),
            input_digest: input_digest(input),
            truncation,
            objects: c.objects().to_vec(),
            morphism_count: c.morphism_count(),
            hom_sizes,
            components: comps.count,
            component_of: comps.component_of,
            h1,
        },
    ))
}

fn run_check(check: &CheckCommand, input: &Resolved, cap: usize) -> Result<Value> {
    match check {
        CheckCommand::Liscompletion => Ok(to_value("liscompletion", &liscompletion_check(input.monoid()?)?)),
        CheckCommand::Additivity { k } => Ok(to_value("additivity", &additivity_check(input.monoid()?, *k)?)),
        CheckCommand::Telescope => Ok(to_value("telescope", &telescope_check(&input.sm_input()?, cap)?)),
        CheckCommand::Cofinality => match input {
            Resolved::Selection { ambient, selection } => Ok(to_value(
                "cofinality",
                &cofinality_check(&ambient.sm_input()?, selection, cap)?,
            )),
            other => Err(Error::invalid(format!(
                "cofinality takes a sub-selection, got a {}",
                other.kind()
            ))),
        },
        CheckCommand::Star => {
            let sm = input.sm_input()?;
            let report = match &sm {
                SmInput::Groupoid(p) => {
                    let e = EnumeratedGroupoid::new(p, cap)?;
                    let r = check_condition_star(&e);
                    let mut v = json!({
                        "input_digest": digest(&sm),
                        "truncation": p.truncation,
                        "verdict": if r.holds { Verdict::Pass } else { Verdict::FailsWithCertificate },
                    });
                    if let Some(c) = r.certificate {
                        v["certificate"] = serde_json::to_value(c)?;
                    }
                    v
                }
                SmInput::Discrete(_) => json!({ "input_digest": digest(&sm), "verdict": Verdict::Pass }),
            };
            Ok(to_value("star", &report))
        }
        CheckCommand::Snf { .. } => unreachable!("handled before input loading"),
    }
}

#[derive(Serialize)]
pub struct SnfSuiteReport {
    pub seed: u64,
    pub count: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<IntMatrix>,
    pub verdict: Verdict,
}

/// `U·M·V = S`, unimodular transforms, non-negative diagonal with a divisibility chain.
pub fn snf_is_valid(m: &IntMatrix) -> bool {
    let f = smith_normal_form(m);
    if f.u.mul(m).mul(&f.v) != f.s || !f.u.is_unimodular() || !f.v.is_unimodular() || !f.s.is_diagonal() {
        return false;
    }
    let d = f.diagonal();
    let r = f.rank();
    d.iter().all(|x| *x >= BigInt::zero())
        && d[r..].iter().all(Zero::is_zero)
        && d[..r].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let data: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(r, c, &data)
}

pub fn snf_suite(seed: u64, count: usize, max_dim: usize, bound: i64) -> SnfSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..count {
        let m = random_matrix(&mut rng, max_dim.max(1), bound.abs());
        if !snf_is_valid(&m) {
            failures += 1;
            first_failure.get_or_insert(m);
        }
    }
    SnfSuiteReport {
        seed,
        count,
        failures,
        first_failure,
        verdict: Verdict::from_bool(failures == 0),
    }
}
