//! The `linkform` command line.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 not a rational
//! homology sphere, 3 realization search exhausted, 4 internal inconsistency.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::invariants::{decompose, invariant_table_with, GaussOptions, InvariantsError, TableMethod};
use crate::pairing::{direct_sum, LinkingPairing, PairingError};
use crate::parse::{parse_pairing, parse_presentation, ParseError};
use crate::realize::{
    catalog, realize_generator, search_realization, verify_realization_with, RealizeError, SearchBounds,
};
use crate::seifert::{
    homology_snf, linking_pairing, scalar_invariants, torsion_homology_formula, SeifertError, SeifertPresentation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_QHS: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "linkform", version, about = "Linking pairings of Seifert manifolds and their 2-primary invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads for Gauss sums and the realization search.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct SeifertArg {
    /// Presentation `e; a1/b1, a2/b2, ...` or its JSON form.
    #[arg(long)]
    pub seifert: String,
}

/// A pairing given directly, or as the 2-primary pairing of a presentation.
#[derive(Debug, Args)]
pub struct PairingSource {
    /// Block sum such as `E0(3)+A(5,2)`, or `{"orders":[..],"matrix":[..]}`.
    #[arg(long, conflicts_with = "seifert")]
    pub pairing: Option<String>,
    /// Use the 2-primary linking pairing of this presentation.
    #[arg(long)]
    pub seifert: Option<String>,
    /// Force the plumbing route for presentations.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First homology: Smith normal form and the closed formula.
    Homology {
        #[command(flatten)]
        seifert: SeifertArg,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    /// The p-primary linking matrix.
    Linkmat {
        #[command(flatten)]
        seifert: SeifertArg,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        /// Force the plumbing route.
        #[arg(long)]
        oracle: bool,
    },
    /// The invariant table `k -> (r, sigma)`.
    Invariants {
        #[command(flatten)]
        source: PairingSource,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Isomorphism test by invariant tables.
    Iso {
        #[arg(long = "pairing-a")]
        a: String,
        #[arg(long = "pairing-b")]
        b: String,
    },
    /// Canonical block decomposition.
    Decompose {
        #[command(flatten)]
        source: PairingSource,
    },
    /// A Seifert presentation realizing a pairing.
    Realize {
        #[arg(long)]
        pairing: String,
        #[arg(long, default_value_t = 4)]
        max_fibers: usize,
        #[arg(long, default_value_t = 2)]
        bump: u32,
    },
    /// Check a presentation against a pairing.
    Verify {
        #[command(flatten)]
        seifert: SeifertArg,
        #[arg(long)]
        pairing: String,
        #[arg(long)]
        oracle: bool,
    },
    /// The verified realization catalog.
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Blockwise,
    Auto,
}

impl From<MethodArg> for TableMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => TableMethod::Direct,
            MethodArg::Blockwise => TableMethod::Blockwise,
            MethodArg::Auto => TableMethod::Auto,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn parse(what: &str, src: &str, e: ParseError) -> Self {
        Self::input(format!("cannot parse {what}:\n{}", e.render(src)))
    }
}

impl From<SeifertError> for Failure {
    fn from(e: SeifertError) -> Self {
        let code = match e {
            SeifertError::NotRationalHomologySphere => EXIT_NOT_QHS,
            SeifertError::DegenerateOutput(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<PairingError> for Failure {
    fn from(e: PairingError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<InvariantsError> for Failure {
    fn from(e: InvariantsError) -> Self {
        let code = match e {
            InvariantsError::NoCandidate(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::Exhausted { .. } => Failure {
                code: EXIT_EXHAUSTED,
                message: e.to_string(),
            },
            RealizeError::Seifert(s) => s.into(),
            RealizeError::Invariants(i) => i.into(),
            RealizeError::Pairing(p) => p.into(),
            RealizeError::NotInCatalog(_) => Failure::input(e.to_string()),
        }
    }
}

/// Output of a successful command: the JSON report and its text rendering.
pub struct Report {
    pub json: Value,
    pub text: String,
}

fn read_presentation(src: &str) -> Result<SeifertPresentation, Failure> {
    parse_presentation(src).map_err(|e| Failure::parse("presentation", src, e))
}

fn read_pairing(src: &str) -> Result<LinkingPairing, Failure> {
    parse_pairing(src).map_err(|e| Failure::parse("pairing", src, e))
}

fn resolve_pairing(s: &PairingSource) -> Result<(LinkingPairing, Value), Failure> {
    match (&s.pairing, &s.seifert) {
        (Some(p), None) => Ok((read_pairing(p)?, Value::Null)),
        (None, Some(src)) => {
            let pres = read_presentation(src)?;
            let lp = linking_pairing(&pres, 2, s.oracle)?;
            let origin = json!({
                "presentation": pres.to_string(),
                "path": lp.path,
                "fallback_reason": lp.fallback_reason,
            });
            Ok((lp.pairing, origin))
        }
        _ => Err(Failure::input("give exactly one of --pairing or --seifert")),
    }
}

fn orders_text(orders: &[u64]) -> String {
    crate::algebra::AbelianGroupStructure::from_cyclic_orders(orders).to_string()
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Report, Failure> {
    let mut opts = GaussOptions::from_env();
    if let Some(t) = cli.global.threads {
        opts = opts.with_workers(t);
    }
    let threads = opts.workers;
    match &cli.command {
        Command::Homology { seifert, prime } => {
            let p = read_presentation(&seifert.seifert)?;
            let h = homology_snf(&p)?;
            let inv = scalar_invariants(&p)?;
            if !h.is_finite() {
                return Err(SeifertError::NotRationalHomologySphere.into());
            }
            let torsion = h.torsion().map_err(SeifertError::from)?;
            let primary = h.p_primary(*prime).map_err(SeifertError::from)?;
            let formula = match torsion_homology_formula(&p, *prime) {
                Ok(g) => Some(g),
                Err(SeifertError::FormulaInapplicable(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let text = format!(
                "H1 = {torsion}\nAe + C = {}\nTors_{prime} (Smith form) = {primary}\nTors_{prime} (formula) = {}",
                inv.aec,
                formula.as_ref().map_or("n/a".to_string(), |g| g.to_string())
            );
            let json = json!({
                "presentation": p.to_string(),
                "ae_plus_c": inv.aec.to_string(),
                "h1": torsion,
                "prime": prime,
                "primary_snf": primary,
                "primary_formula": formula,
            });
            Ok(Report { json, text })
        }
        Command::Linkmat { seifert, prime, oracle } => {
            let p = read_presentation(&seifert.seifert)?;
            let lp = linking_pairing(&p, *prime, *oracle)?;
            let mut json = serde_json::to_value(&lp.pairing).expect("pairing serializes");
            json["path"] = json!(lp.path);
            json["fallback_reason"] = json!(lp.fallback_reason);
            let mut text = format!("{}\n", lp.pairing);
            text += &format!("group: {}\npath: {:?}", orders_text(lp.pairing.orders()), lp.path);
            if let Some(r) = &lp.fallback_reason {
                text += &format!(" ({r})");
            }
            Ok(Report { json, text })
        }
        Command::Invariants { source, method } => {
            let (l, origin) = resolve_pairing(source)?;
            let table = invariant_table_with(&l, (*method).into(), &opts)?;
            let text = table.to_string();
            let mut json = serde_json::to_value(&table).expect("table serializes");
            if !origin.is_null() {
                json = json!({ "table": json, "origin": origin });
            }
            Ok(Report { json, text })
        }
        Command::Iso { a, b } => {
            let (la, lb) = (read_pairing(a)?, read_pairing(b)?);
            let ta = invariant_table_with(&la, TableMethod::Auto, &opts)?;
            let tb = invariant_table_with(&lb, TableMethod::Auto, &opts)?;
            let iso = ta == tb;
            Ok(Report {
                json: json!({ "isomorphic": iso }),
                text: format!("isomorphic: {iso}\n{ta}\n{tb}"),
            })
        }
        Command::Decompose { source } => {
            let (l, origin) = resolve_pairing(source)?;
            let d = decompose(&l, &opts)?;
            // the decomposition must reproduce the input up to isomorphism
            let back = invariant_table_with(&d.pairing(), TableMethod::Auto, &opts)?;
            if back != invariant_table_with(&l, TableMethod::Auto, &opts)? {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: format!("decomposition {d} does not reproduce the input table"),
                });
            }
            let mut json = json!({ "decomposition": d.to_string(), "table": back });
            if !origin.is_null() {
                json["origin"] = origin;
            }
            Ok(Report {
                json,
                text: format!("{d}\n{back}"),
            })
        }
        Command::Realize {
            pairing,
            max_fibers,
            bump,
        } => {
            let target = read_pairing(pairing)?;
            let single = crate::parse::parse_block_sum(pairing)
                .ok()
                .filter(|b| b.blocks().len() == 1)
                .and_then(|b| realize_generator(&b.blocks()[0]).ok());
            let (presentation, how, index) = match single {
                Some(p) => (p, "catalog", None),
                None => {
                    let bounds = SearchBounds {
                        max_fibers: *max_fibers,
                        bump: *bump,
                    };
                    let hit = search_realization(&target, bounds, threads, &opts)?;
                    (hit.presentation, "search", Some(hit.index))
                }
            };
            let report = verify_realization_with(&presentation, &target, &opts, false)?;
            if !report.verdict {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: format!("{presentation} failed verification"),
                });
            }
            Ok(Report {
                json: json!({
                    "presentation": presentation.to_string(),
                    "method": how,
                    "index": index,
                }),
                text: format!("{presentation}  ({how})"),
            })
        }
        Command::Verify { seifert, pairing, oracle } => {
            let p = read_presentation(&seifert.seifert)?;
            let target = read_pairing(pairing)?;
            let r = verify_realization_with(&p, &target, &opts, *oracle)?;
            let text = format!(
                "verdict: {}\nhomology: {} (target {})\npath: {:?}\npresentation table:\n{}\ntarget table:\n{}",
                r.verdict, r.homology, r.target_group, r.path, r.table_presentation, r.table_target
            );
            let json = json!({
                "verdict": r.verdict,
                "presentation": r.presentation.to_string(),
                "homology": r.homology,
                "homology_formula": r.homology_formula,
                "target_group": r.target_group,
                "homology_ok": r.homology_ok,
                "path": r.path,
                "fallback_reason": r.fallback_reason,
                "pairing": r.pairing,
                "table_presentation": r.table_presentation,
                "table_target": r.table_target,
            });
            Ok(Report { json, text })
        }
        Command::Catalog => {
            let entries = catalog(&opts)?;
            let text = entries
                .iter()
                .map(|e| format!("{:<24} {:<32} {}", e.target.to_string(), e.presentation.to_string(), e.source))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                json: catalog_json(&entries),
                text,
            })
        }
    }
}

/// JSON form of the catalog, shared with the shipped data file.
pub fn catalog_json(entries: &[crate::realize::RealizationEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "target": e.target,
                    "presentation": e.presentation.to_string(),
                    "source": e.source,
                })
            })
            .collect(),
    )
}

/// Parses `args`, runs the command and writes to `out` / `err`. Returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let body = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&r.json).expect("json"),
                Format::Text => r.text,
            };
            let _ = writeln!(out, "{body}");
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Convenience for tests: direct sum of two parsed pairings.
pub fn sum_of(a: &str, b: &str) -> Result<LinkingPairing, Failure> {
    Ok(direct_sum(&read_pairing(a)?, &read_pairing(b)?)?)
}
