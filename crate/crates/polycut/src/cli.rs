use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use polycut_core::birkhoff::{self, Permutation};
use polycut_core::cube::{self, SecondCutSpec};
use polycut_core::orderchain::{self, Family, PosetPolytope, Target};
use polycut_core::polymodel::{enumerate_cuts_oracle_with, is_separating};
use polycut_core::{CutFailure, Error, Hyperplane, Limits, Poset, RatVector, Rational, Sign, SignPattern};
use serde_json::{json, Value};

use crate::formats::{parse_hyperplane, parse_poset};
use crate::output::{self, separating_word, Verdict};

pub const ENV_MAX_VERTICES: &str = "POLYCUT_GUARD_MAX_VERTICES";
pub const ENV_MAX_CANDIDATES: &str = "POLYCUT_GUARD_MAX_CANDIDATES";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Decided = 0,
    InputError = 1,
    GuardRefused = 2,
}

#[derive(Parser, Debug)]
#[command(
    name = "polycut",
    version,
    about = "Separating hyperplanes of cubes, order/chain polytopes and Birkhoff polytopes"
)]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Unit cubes and their slices
    #[command(subcommand)]
    Cube(CubeCmd),
    /// Order and chain polytopes of posets
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Birkhoff polytopes
    #[command(subcommand)]
    Birkhoff(BirkhoffCmd),
}

#[derive(Subcommand, Debug)]
enum CubeCmd {
    /// Decide whether `coeffs·x = rhs` separates [0,1]^d
    Check {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Rational,
    },
    /// Reduce a separating hyperplane of the cube to `x_1 + ... + x_k <= l`
    Canonicalize {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Rational,
    },
    /// Decide whether `Σ_I x - Σ_J x = h` separates the slice `x_1 + ... + x_k <= l`
    Second {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// 1-based indices with coefficient +1
        #[arg(long = "I", value_delimiter = ',', required = true)]
        plus: Vec<usize>,
        /// 1-based indices with coefficient -1
        #[arg(long = "J", value_delimiter = ',', required = true)]
        minus: Vec<usize>,
        #[arg(long)]
        h: i64,
        /// Also run the vertex-subset enumeration on the slice
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Enumerate all decompositions of [0,1]^d
    Enumerate {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    /// Run the cut test for a hyperplane on O(P) or C(P)
    Check {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        hyperplane: PathBuf,
        #[arg(long)]
        target: Target,
    },
    /// Enumerate all decompositions of O(P) or C(P)
    Enumerate {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        target: Target,
    },
    /// Evaluate the sign conditions for disjoint chains, binary trees or zigzags
    Classify {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        hyperplane: PathBuf,
        #[arg(long)]
        family: Family,
    },
    /// Produce separating hyperplanes of O(P) and C(P) for a non-chain poset
    Witness {
        #[arg(long)]
        poset: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum BirkhoffCmd {
    /// Exhaustively search B_n for a separating hyperplane (n <= 4)
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Check the exchange construction for a permutation
    Certificate {
        /// Cycle notation such as "(123)(456)", or one-line notation
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: usize,
    },
    /// Check the two vertex identities on S_4
    Identities,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<Verdict, Failure>;

/// Runs one invocation with guards taken from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match limits_from_env() {
        Ok(limits) => run_with_limits(args, &limits, out, err),
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            ExitCode::InputError
        }
    }
}

pub fn run_with_limits<I, T>(args: I, limits: &Limits, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                ExitCode::Decided
            } else {
                let _ = write!(err, "{rendered}");
                ExitCode::InputError
            };
        }
    };
    let outcome = match cli.group {
        Group::Cube(cmd) => cube_command(cmd, limits),
        Group::Poset(cmd) => poset_command(cmd, limits),
        Group::Birkhoff(cmd) => birkhoff_command(cmd),
    };
    match outcome {
        Ok(v) => {
            let _ = writeln!(out, "{}", v.to_line());
            ExitCode::Decided
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ExitCode::InputError
        }
        Err(Failure::Guard(msg)) => {
            let _ = writeln!(err, "refused: {msg}");
            ExitCode::GuardRefused
        }
    }
}

fn limits_from_env() -> Result<Limits, String> {
    let mut limits = Limits::default();
    for (name, slot) in [
        (ENV_MAX_VERTICES, &mut limits.max_vertices),
        (ENV_MAX_CANDIDATES, &mut limits.max_candidates),
    ] {
        if let Ok(raw) = std::env::var(name) {
            *slot = raw
                .trim()
                .parse()
                .map_err(|_| format!("{name} must be a nonnegative integer, got {raw:?}"))?;
        }
    }
    Ok(limits)
}

fn cube_bits(d: usize, index: usize) -> String {
    (0..d)
        .map(|i| if index >> (d - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn pattern_counts(pattern: &SignPattern) -> Value {
    json!({
        "positive": pattern.count(Sign::Positive),
        "negative": pattern.count(Sign::Negative),
        "zero": pattern.count(Sign::Zero),
    })
}

fn failure_name(f: Option<CutFailure>) -> Value {
    f.map_or(Value::Null, |f| Value::String(f.name().to_string()))
}

fn cube_hyperplane(coeffs: Vec<Rational>, rhs: Rational) -> Result<Hyperplane, Failure> {
    Ok(Hyperplane::new(RatVector::new(coeffs)?, rhs)?)
}

fn cube_command(cmd: CubeCmd, limits: &Limits) -> Outcome {
    match cmd {
        CubeCmd::Check { coeffs, rhs } => {
            let h = cube_hyperplane(coeffs, rhs)?;
            let d = h.dim();
            if d <= cube::MAX_CUBE_DIM && (1u128 << d) > limits.max_vertices {
                return Err(Error::GuardExceeded {
                    what: "cube vertices",
                    requested: 1 << d,
                    limit: limits.max_vertices,
                }
                .into());
            }
            let model = cube::cube_model(d)?;
            let report = is_separating(&model, &h)?;
            let witness = match (report.failure, cube::canonicalize(h.coeffs(), h.rhs())) {
                (None, Ok(form)) => json!({ "k": form.k, "l": form.ell, "form": form.to_string() }),
                (Some(CutFailure::BadEdge(i, j)), _) => json!({ "crossing_edge": [cube_bits(d, i), cube_bits(d, j)] }),
                _ => Value::Null,
            };
            let mut details = pattern_counts(&report.pattern);
            details["d"] = json!(d);
            details["hyperplane"] = output::hyperplane(&h);
            details["failure"] = failure_name(report.failure);
            if h.rhs().is_zero() {
                details["equal_magnitude"] = json!(cube::equal_magnitude_criterion(h.coeffs())?);
            }
            Ok(Verdict::new(
                "cube check",
                separating_word(report.separating()),
                witness,
                details,
            ))
        }
        CubeCmd::Canonicalize { coeffs, rhs } => {
            let h = cube_hyperplane(coeffs, rhs)?;
            let d = h.dim();
            let details = json!({ "d": d, "hyperplane": output::hyperplane(&h) });
            match cube::canonicalize(h.coeffs(), h.rhs()) {
                Ok(form) => {
                    let witness = json!({
                        "k": form.k,
                        "l": form.ell,
                        "form": form.to_string(),
                        "reduced": { "k": form.reduced().k, "l": form.reduced().ell },
                    });
                    Ok(Verdict::new("cube canonicalize", "canonical", witness, details))
                }
                Err(Error::NotSeparatingForm) => Ok(Verdict::new(
                    "cube canonicalize",
                    "not separating",
                    Value::Null,
                    details,
                )),
                Err(e) => Err(e.into()),
            }
        }
        CubeCmd::Second {
            d,
            k,
            l,
            plus,
            minus,
            h,
            verify_oracle,
        } => {
            let zero_based = |v: &[usize]| -> Result<Vec<usize>, Failure> {
                v.iter()
                    .map(|&i| {
                        i.checked_sub(1)
                            .ok_or_else(|| Failure::Input("indices are 1-based".into()))
                    })
                    .collect()
            };
            let spec = SecondCutSpec::new(d, zero_based(&plus)?, zero_based(&minus)?, h)?;
            let predicate = cube::second_cut_predicate(d, k, l, &spec)?;
            let hyperplane = spec.hyperplane(d)?;
            let mut details = json!({
                "d": d, "k": k, "l": l,
                "I": plus, "J": minus, "h": h,
                "hyperplane": output::hyperplane(&hyperplane),
            });
            if verify_oracle {
                let model = cube::subpolytope_model(d, k, l)?;
                let oracle = is_separating(&model, &hyperplane)?.separating();
                details["oracle"] = json!(separating_word(oracle));
                details["agree"] = json!(oracle == predicate);
            }
            Ok(Verdict::new(
                "cube second",
                separating_word(predicate),
                Value::Null,
                details,
            ))
        }
        CubeCmd::Enumerate { d } => {
            let model = cube::cube_model(d)?;
            let patterns = enumerate_cuts_oracle_with(&model, limits)?;
            let forms: Vec<Value> = cube::all_forms(d)
                .into_iter()
                .filter(|f| f.reduced() == *f)
                .map(|f| json!({ "k": f.k, "l": f.ell }))
                .collect();
            let details = json!({
                "d": d,
                "decompositions": patterns.len(),
                "form_count": cube::count_forms(d),
                "forms": forms,
            });
            Ok(Verdict::new("cube enumerate", "enumerated", Value::Null, details))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    parse_poset(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_hyperplane(path: &Path, p: &Poset) -> Result<Hyperplane, Failure> {
    parse_hyperplane(&read(path)?, p).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn poset_command(cmd: PosetCmd, limits: &Limits) -> Outcome {
    match cmd {
        PosetCmd::Check {
            poset,
            hyperplane,
            target,
        } => {
            let p = load_poset(&poset)?;
            let h = load_hyperplane(&hyperplane, &p)?;
            let polytope = PosetPolytope::new(&p, target, limits)?;
            let report = polytope.checkcut(&h)?;
            let witness = report
                .bad_pair
                .as_ref()
                .map_or(Value::Null, |b| output::bad_pair(&p, b));
            let mut details = pattern_counts(&report.report.pattern);
            details["target"] = json!(target.name());
            details["vertices"] = json!(polytope.vertices().len());
            details["edges"] = json!(polytope.edges().len());
            details["failure"] = failure_name(report.report.failure);
            details["hyperplane"] = output::labeled_hyperplane(&h, &p);
            Ok(Verdict::new(
                "poset check",
                separating_word(report.separating()),
                witness,
                details,
            ))
        }
        PosetCmd::Enumerate { poset, target } => {
            let p = load_poset(&poset)?;
            let polytope = PosetPolytope::new(&p, target, limits)?;
            let patterns = enumerate_cuts_oracle_with(&polytope.model(), limits)?;
            let vertices: Vec<Value> = polytope
                .vertices()
                .iter()
                .map(|&s| output::element_set(&p, s))
                .collect();
            let details = json!({
                "target": target.name(),
                "vertices": vertices,
                "edges": polytope.edges().len(),
                "decompositions": patterns.len(),
                "patterns": patterns.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            });
            Ok(Verdict::new("poset enumerate", "enumerated", Value::Null, details))
        }
        PosetCmd::Classify {
            poset,
            hyperplane,
            family,
        } => {
            let p = load_poset(&poset)?;
            let h = load_hyperplane(&hyperplane, &p)?;
            let v = orderchain::classify(&p, &h, family, limits)?;
            let witness = v.evidence.as_ref().map_or(Value::Null, |b| output::bad_pair(&p, b));
            let details = json!({
                "family": family.name(),
                "conditions": {
                    "min_signs": v.conditions.min_signs,
                    "equal_abs": v.conditions.equal_abs,
                    "unique_extension": v.conditions.unique_extension,
                },
                "checkcut": separating_word(v.checkcut_separating),
                "extension": v.extension.as_ref().map_or(Value::Null, output::rationals),
                "hyperplane": output::labeled_hyperplane(&h, &p),
            });
            Ok(Verdict::new(
                "poset classify",
                separating_word(v.separating),
                witness,
                details,
            ))
        }
        PosetCmd::Witness { poset } => {
            let p = load_poset(&poset)?;
            match orderchain::existence_witness(&p) {
                Ok((order, chain)) => {
                    let order_ok = PosetPolytope::new(&p, Target::Order, limits)?
                        .checkcut(&order)?
                        .separating();
                    let chain_ok = PosetPolytope::new(&p, Target::Chain, limits)?
                        .checkcut(&chain)?
                        .separating();
                    let witness = json!({
                        "order": output::labeled_hyperplane(&order, &p),
                        "chain": output::labeled_hyperplane(&chain, &p),
                    });
                    let details = json!({
                        "order": separating_word(order_ok),
                        "chain": separating_word(chain_ok),
                    });
                    Ok(Verdict::new("poset witness", "found", witness, details))
                }
                Err(Error::PosetIsChain) => Ok(Verdict::new(
                    "poset witness",
                    "none",
                    Value::Null,
                    json!({ "summary": "poset is a chain" }),
                )),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn birkhoff_command(cmd: BirkhoffCmd) -> Outcome {
    match cmd {
        BirkhoffCmd::Verify { n } => {
            let outcome = birkhoff::search_separating(n)?;
            let model = birkhoff::birkhoff_skeleton(n)?;
            let count = model.vertex_count();
            let complete = model.edges().len() == count * (count - 1) / 2;
            let mut details = json!({
                "n": n,
                "vertices": count,
                "edges": model.edges().len(),
                "patterns_checked": outcome.patterns_checked,
            });
            if complete {
                details["summary"] = json!("skeleton complete");
            }
            let (verdict, witness) = match &outcome.witness {
                Some(h) => ("separating", output::hyperplane(h)),
                None => ("none", Value::Null),
            };
            Ok(Verdict::new("birkhoff verify", verdict, witness, details))
        }
        BirkhoffCmd::Certificate { perm, n } => {
            let v = Permutation::parse(&perm, Some(n))?;
            let c = birkhoff::exchange_certificate(&v)?;
            let cycles = |ps: &[Permutation]| ps.iter().map(Permutation::cycle_string).collect::<Vec<_>>();
            let relabeling: serde_json::Map<String, Value> =
                c.relabeling.iter().map(|&(s, x)| (s.to_string(), json!(x))).collect();
            let witness = json!({
                "v": v.cycle_string(),
                "relabeling": relabeling,
                "tau": cycles(&c.tau),
                "sigma": cycles(&c.sigma),
            });
            let details = json!({
                "tau_identity": c.tau_identity,
                "sigma_identity": c.sigma_identity,
                "tau_adjacent": c.tau_adjacent,
                "fewer_cycles": c.fewer_cycles,
                "sigma_adjacent": c.sigma_adjacent,
            });
            let verdict = if c.passed() { "pass" } else { "fail" };
            Ok(Verdict::new("birkhoff certificate", verdict, witness, details))
        }
        BirkhoffCmd::Identities => {
            let ok = birkhoff::exchange_identities();
            let details = json!({
                "identities": [
                    "2143 + 3412 = 2413 + 3142",
                    "(13)(24) + (14)(23) = (1324) + (1423)",
                ],
            });
            Ok(Verdict::new(
                "birkhoff identities",
                if ok { "pass" } else { "fail" },
                Value::Null,
                details,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (ExitCode, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with_limits(
            std::iter::once("polycut").chain(args.iter().copied()),
            &Limits::default(),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cube_bit_strings() {
        assert_eq!(cube_bits(3, 0b110), "110");
        assert_eq!(cube_bits(2, 1), "01");
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, ExitCode::Decided);
        assert!(out.contains("birkhoff"));
    }

    #[test]
    fn unknown_flag_is_an_input_error() {
        let (code, out, err) = run_args(&["cube", "check", "--bogus"]);
        assert_eq!(code, ExitCode::InputError);
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }

    #[test]
    fn negative_coefficients_parse() {
        let (code, out, _) = run_args(&["cube", "check", "--coeffs", "-1,1/2,0", "--rhs", "-1/4"]);
        assert_eq!(code, ExitCode::Decided);
        let v: Verdict = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v.details["hyperplane"]["rhs"], "-1/4");
    }
}
