//! `treehopf`: enumerate trees, apply the structure maps, run the law
//! suites and the renormalization checks from the command line.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use treehopf::laws::{self, LawReport, SweepConfig};
use treehopf::renorm::{self, Character, DysonReport, RingKind};
use treehopf::tree::enumerate;
use treehopf::{AlgebraTag, Corruption, Element, HopfMaps, Tensor, TruncatedSeries};

use AlgebraTag::{Alpha, AlphaNc, Electron, Gamma};

/// `writeln!` into a `String`, which cannot fail.
macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($out, $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "treehopf", version, about = "Hopf algebras of planar binary trees and QED renormalization maps")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Ascii, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the trees of order n in canonical order.
    Enum {
        n: usize,
        /// Print only the number of trees.
        #[arg(long)]
        count_only: bool,
    },
    /// Apply a named map to an element (text, JSON, or `-` for stdin).
    Map {
        /// Map name; `list` prints the available names.
        name: String,
        element: Option<String>,
    },
    /// Run a law suite (or `all`) and report each law.
    Check {
        /// coassoc, counit, antipode, coaction, D1, D2, qed, intertwining,
        /// corollary, counts, or all.
        suite: String,
        /// Sweep basis words up to this total order.
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Build the maps with a deliberate defect (negative control).
        #[arg(long, value_parser = corruption_names())]
        corrupt: Option<String>,
    },
    /// Run the Dyson checks on seeded toy characters.
    #[command(alias = "renorm-demo")]
    Renorm {
        /// Check the identities up to alpha^order.
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Seed for the toy characters.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = ["scalar", "matrix"], default_value = "scalar")]
        ring: String,
        /// Matrix size for `--ring matrix`.
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// Use vanishing counterterms.
        #[arg(long)]
        zero_counterterms: bool,
        /// Read the characters from a JSON file
        /// `{"U_gamma": .., "U_e": .., "C_gamma": .., "C_e": ..}` instead.
        #[arg(long)]
        characters: Option<String>,
        /// Print the character tables as JSON and exit.
        #[arg(long)]
        export_characters: bool,
    },
}

fn corruption_names() -> Vec<&'static str> {
    Corruption::ALL.iter().map(|c| c.name()).collect()
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<treehopf::Error> for Failure {
    fn from(e: treehopf::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type MapFn = fn(&HopfMaps, &Element) -> treehopf::Result<Output>;

enum Output {
    Element(Element),
    Tensor(Tensor),
}

/// `(name, domain, map)`.
const MAPS: &[(&str, AlgebraTag, MapFn)] = &[
    ("delta-p-gamma", Gamma, |m, x| m.delta_p_gamma(x).map(Output::Tensor)),
    ("delta-p-e", Electron, |m, x| m.delta_p_e(x).map(Output::Tensor)),
    ("antipode-p-gamma", Gamma, |m, x| m.antipode_p_gamma(x).map(Output::Element)),
    ("antipode-p-e", Electron, |m, x| m.antipode_p_e(x).map(Output::Element)),
    ("reduced-pruning", Electron, |m, x| {
        let t = single_tree(x)?;
        m.reduced_pruning(&t).map(Output::Tensor)
    }),
    ("delta-alpha", Alpha, |m, x| m.delta_alpha(x).map(Output::Tensor)),
    ("delta-alpha-nc", AlphaNc, |m, x| m.delta_alpha_nc(x).map(Output::Tensor)),
    ("delta-small", Alpha, |m, x| m.delta_small(x).map(Output::Tensor)),
    ("delta-small-nc", AlphaNc, |m, x| m.delta_small_nc(x).map(Output::Tensor)),
    ("antipode-alpha", Alpha, |m, x| m.antipode_alpha(x).map(Output::Element)),
    ("antipode-alpha-nc", AlphaNc, |m, x| m.antipode_alpha_nc(x).map(Output::Element)),
    ("delta-gamma-coaction", Gamma, |m, x| m.delta_gamma_coaction(x).map(Output::Tensor)),
    ("delta-e-coaction", Electron, |m, x| m.delta_e_coaction(x).map(Output::Tensor)),
    ("delta-e", Electron, |m, x| m.electron_renorm_coaction(x).map(Output::Tensor)),
    ("delta-gamma", Gamma, |m, x| m.photon_renorm_coaction(x).map(Output::Tensor)),
    ("sigma", Gamma, |m, x| m.sigma(x).map(Output::Element)),
];

fn single_tree(x: &Element) -> treehopf::Result<treehopf::Tree> {
    let mut terms = x.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if num_is_one(c) => w
            .single_tree()
            .cloned()
            .ok_or_else(|| treehopf::Error::Parse("expected a single tree".into())),
        _ => Err(treehopf::Error::Parse("expected a single tree".into())),
    }
}

fn num_is_one(c: &treehopf::Scalar) -> bool {
    *c == treehopf::algebra::scalar(1)
}

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

fn parse_element(tag: AlgebraTag, text: &str) -> Result<Element, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad JSON: {e}")))?;
        let x = Element::from_json(&v)?;
        if x.tag() != tag {
            return Err(Failure::Usage(format!("this map takes an element of {tag}, got {}", x.tag())));
        }
        Ok(x)
    } else {
        Ok(Element::parse(tag, text)?)
    }
}

fn cmd_enum(out: &mut String, n: usize, count_only: bool, format: Format) {
    let trees = enumerate(n);
    if count_only {
        match format {
            Format::Json => emit!(out, "{}", json!({"n": n, "count": trees.len()})),
            _ => emit!(out, "{}", trees.len()),
        }
        return;
    }
    match format {
        Format::Ascii => {
            for t in trees.iter() {
                emit!(out, "{}\t{}", t.canonical_name(), t.render());
            }
        }
        Format::Latex => {
            for t in trees.iter() {
                emit!(out, "\\[ Y_{{{}}} : {} \\]", t.canonical_name().trim_start_matches('Y'), t.render_latex());
            }
        }
        Format::Json => {
            let items: Vec<Value> = trees
                .iter()
                .map(|t| json!({"name": t.canonical_name(), "tree": t.render()}))
                .collect();
            emit!(out, "{}", json!({"n": n, "trees": items}));
        }
    }
}

fn cmd_map(out: &mut String, name: &str, input: Option<&str>, format: Format) -> Result<(), Failure> {
    if name == "list" {
        for (n, tag, _) in MAPS {
            emit!(out, "{n}\t{tag}");
        }
        return Ok(());
    }
    let (_, tag, f) = MAPS
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Failure::Usage(format!("unknown map {name:?}; `treehopf map list` lists them")))?;
    let input = input.ok_or_else(|| Failure::Usage(format!("map {name} needs an element")))?;
    let x = parse_element(*tag, &read_input(input)?)?;
    let image = f(HopfMaps::standard(), &x)?;
    match (format, image) {
        (Format::Ascii, Output::Element(y)) => emit!(out, "{}", y.render()),
        (Format::Ascii, Output::Tensor(t)) => emit!(out, "{}", t.render()),
        (Format::Latex, Output::Element(y)) => emit!(out, "\\[ {} \\]", y.render_latex()),
        (Format::Latex, Output::Tensor(t)) => emit!(out, "\\[ {} \\]", t.render_latex()),
        (Format::Json, Output::Element(y)) => emit!(out, "{}", y.to_json()),
        (Format::Json, Output::Tensor(t)) => emit!(out, "{}", t.to_json()),
    }
    Ok(())
}

fn report_json(r: &LawReport) -> Value {
    let cx = r.counterexample.as_ref().map(|c| {
        json!({"input": c.input, "lhs": c.lhs, "rhs": c.rhs, "difference": c.difference})
    });
    json!({"suite": r.suite, "law": r.law, "checked": r.checked, "passed": r.passed(), "counterexample": cx})
}

fn cmd_check(out: &mut String, suite: &str, order: usize, jobs: usize, corrupt: Option<&str>, format: Format) -> Result<(), Failure> {
    let maps = match corrupt {
        Some(name) => HopfMaps::with_corruption(
            Corruption::from_name(name).ok_or_else(|| Failure::Usage(format!("unknown corruption {name:?}")))?,
        ),
        None => HopfMaps::new(),
    };
    let reports = laws::run_suite(&maps, suite, SweepConfig { order, jobs })?;
    let ok = laws::all_passed(&reports);
    match format {
        Format::Json => {
            let items: Vec<Value> = reports.iter().map(report_json).collect();
            emit!(out, "{}", json!({"suite": suite, "order": order, "passed": ok, "laws": items}));
        }
        _ => {
            for r in &reports {
                emit!(out, "{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            emit!(out, "{} laws, {failed} failing", reports.len());
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

struct Characters {
    u_gamma: Character,
    u_e: Character,
    c_gamma: Character,
    c_e: Character,
}

impl Characters {
    fn toy(seed: u64, kind: RingKind, d: usize, order: usize, zero: bool) -> Characters {
        let (c_gamma, c_e) = if zero {
            (Character::trivial(Alpha), Character::trivial(Electron))
        } else {
            (
                renorm::make_toy_character(Alpha, seed, RingKind::Scalar, 1, order),
                renorm::make_toy_character(Electron, seed.wrapping_add(1_000), RingKind::Scalar, 1, order),
            )
        };
        Characters {
            u_gamma: renorm::make_toy_character(Gamma, seed, kind, d, order),
            u_e: renorm::make_toy_character(Electron, seed, kind, d, order),
            c_gamma,
            c_e,
        }
    }

    fn from_json(v: &Value) -> Result<Characters, Failure> {
        let get = |key: &str, tag: AlgebraTag| -> Result<Character, Failure> {
            let table = v
                .get(key)
                .ok_or_else(|| Failure::Usage(format!("character file lacks {key:?}")))?;
            Ok(Character::from_json(tag, table)?)
        };
        Ok(Characters {
            u_gamma: get("U_gamma", Gamma)?,
            u_e: get("U_e", Electron)?,
            c_gamma: get("C_gamma", Alpha)?,
            c_e: get("C_e", Electron)?,
        })
    }

    fn to_json(&self) -> Value {
        json!({
            "U_gamma": self.u_gamma.to_json(),
            "U_e": self.u_e.to_json(),
            "C_gamma": self.c_gamma.to_json(),
            "C_e": self.c_e.to_json(),
        })
    }
}

fn series_latex(s: &TruncatedSeries) -> String {
    let mut text = String::new();
    for (k, c) in s.nonzero() {
        let mut body = c.render_latex();
        let negative = body.starts_with('-');
        if negative {
            body.remove(0);
        }
        let power = match k {
            0 => String::new(),
            1 => " \\alpha".to_string(),
            _ => format!(" \\alpha^{{{k}}}"),
        };
        let sign = match (text.is_empty(), negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        text.push_str(&format!("{sign}{body}{power}"));
    }
    if text.is_empty() {
        text.push('0');
    }
    text
}

fn print_dyson(out: &mut String, r: &DysonReport, format: Format) {
    match format {
        Format::Json => unreachable!("collected by the caller"),
        Format::Ascii => {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            emit!(out, "{status} {} Dyson identity to alpha^{}", r.name, r.order);
            for (k, res) in r.residuals.iter().enumerate() {
                let shown = if res.is_zero() { "0".to_string() } else { res.render() };
                emit!(out, "  order {k}: residual {shown}");
            }
            if let Some(k) = r.first_failure() {
                emit!(out, "  first failing order {k}: lhs {} rhs {}", r.lhs.coeff(k).render(), r.rhs.coeff(k).render());
            }
        }
        Format::Latex => {
            let (lhs, rhs) = if r.name == "photon" {
                ("\\bar D(\\alpha) Z_3(\\alpha)", "D(\\alpha_0)")
            } else {
                ("\\bar S(\\alpha) Z_2(\\alpha)", "S(\\alpha_0)")
            };
            let diff = r.lhs.try_sub(&r.rhs).expect("same shape");
            emit!(out, "\\[ {lhs} - {rhs} = {} + O(\\alpha^{{{}}}) \\]", series_latex(&diff), r.order + 1);
            emit!(out, "\\[ {lhs} = {} + O(\\alpha^{{{}}}) \\]", series_latex(&r.lhs), r.order + 1);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_renorm(
    out: &mut String,
    order: usize,
    seed: u64,
    ring: &str,
    d: usize,
    zero: bool,
    characters: Option<&str>,
    export: bool,
    format: Format,
) -> Result<(), Failure> {
    let kind = RingKind::from_name(ring).ok_or_else(|| Failure::Usage(format!("unknown ring {ring:?}")))?;
    let chars = match characters {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            Characters::from_json(&v)?
        }
        None => Characters::toy(seed, kind, d, order, zero),
    };
    if export {
        emit!(out, "{}", serde_json::to_string_pretty(&chars.to_json()).expect("serializable"));
        return Ok(());
    }
    let maps = HopfMaps::standard();
    let photon = renorm::dyson_check_photon(maps, &chars.u_gamma, &chars.c_gamma, order)?;
    let electron = renorm::dyson_check_electron(maps, &chars.u_e, &chars.c_gamma, &chars.c_e, order)?;
    if format == Format::Json {
        emit!(
                out,
            "{}",
            json!({
                "order": order,
                "seed": seed,
                "ring": ring,
                "checks": [photon.to_json(), electron.to_json()],
                "status": if photon.passed() && electron.passed() { "pass" } else { "fail" },
            })
        );
    } else {
        print_dyson(out, &photon, format);
        print_dyson(out, &electron, format);
    }
    if photon.passed() && electron.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match &cli.command {
        Command::Enum { n, count_only } => {
            cmd_enum(&mut out, *n, *count_only, cli.format);
            Ok(())
        }
        Command::Map { name, element } => cmd_map(&mut out, name, element.as_deref(), cli.format),
        Command::Check {
            suite,
            order,
            jobs,
            corrupt,
        } => cmd_check(&mut out, suite, *order, *jobs, corrupt.as_deref(), cli.format),
        Command::Renorm {
            order,
            seed,
            ring,
            d,
            zero_counterterms,
            characters,
            export_characters,
        } => cmd_renorm(
            &mut out,
            *order,
            *seed,
            ring,
            *d,
            *zero_counterterms,
            characters.as_deref(),
            *export_characters,
            cli.format,
        ),
    };
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
