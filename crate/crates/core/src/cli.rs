//! The `isocat` command line: group specs in, JSON reports out.
//!
//! Exit codes: 0 when the verdict matches `--expect` (or no expectation was given),
//! 2 on a verdict mismatch, 1 on usage or I/O errors, 3 when a cap leaves the answer
//! undecided.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{coboundary_solve, d1, is_cocycle2, parse_dump, verify_certificate, Certificate, Coeff, Cochain1, Cochain2, Module, Triviality, SOLVER_CAP};
use crate::error::{Error, Result};
use crate::groups::table::TABLE_CAP;
use crate::groups::{build_group, tables_isomorphic, AbelianGroup, Group, GroupSpec, TableGroup};
use crate::isocategorical::nonzero::verify_nonzero_with;
use crate::isocategorical::{character_table, fusion_compare, isocategorical_variants, rigidity_certificate, CharacterTable};
use crate::weil::crosscheck_run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "isocat", version, about = "Isocategorical finite groups: twisted groups, rigidity and certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override enumeration and solver caps (only ever lowers the built-in table cap).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Expected verdict; a different verdict exits with status 2.
    #[arg(long, global = true)]
    pub expect: Option<String>,
    /// Re-check the witnesses in a previously written JSON report instead of searching.
    #[arg(long, global = true)]
    pub verify: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct GroupArg {
    /// Built-in group, e.g. `dihedral8`, `cyclic 15`, `asp 1`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Group spec file (`builtin:` line or `gen:` permutation lines).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search all (A, R) pairs and test every twisted group against G.
    Rigidity(GroupArg),
    /// Pairwise nonisomorphic groups isocategorical to G found by the search.
    Variants(GroupArg),
    /// The twisted groups G_b with their b̃ classes.
    Gb {
        #[command(flatten)]
        group: GroupArg,
        /// Write b̃ of this candidate to `--dump` in the cocycle text format.
        #[arg(long, default_value_t = 0)]
        candidate: usize,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Nontriviality certificate for the affine pseudosymplectic twist.
    ApsVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20_000)]
        cocycle_samples: usize,
        #[arg(long, default_value_t = 2_000)]
        pair_samples: usize,
    },
    /// Compare b̃ from the Weil representation with the cohomology side.
    WeilCrosscheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Character table summary: classes, degrees and fusion hash.
    Chartable(GroupArg),
    /// Compare fusion rings and test isomorphism of two groups.
    Compare {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        builtin2: Option<String>,
        #[arg(long)]
        file2: Option<PathBuf>,
    },
    /// Check a dumped 2-cochain for the cocycle identity and decide its class.
    CocycleCheck {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        cocycle: PathBuf,
        /// Read the cochain on `G/A` of this rigidity candidate, with `A` under conjugation,
        /// as written by `gb --dump`.
        #[arg(long)]
        candidate: Option<usize>,
    },
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    /// JSON for standard output.
    pub json: Option<String>,
    /// One-line summary for standard error.
    pub message: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome { code: EXIT_USAGE, json: None, message }
    }
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome { code, json: None, message: e.to_string() };
        }
    };
    execute(&cli)
}

/// Run an already parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((value, verdict)) => finish(cli, value, verdict),
        Err(Error::TooLarge { what, count, cap }) => {
            let value = json!({ "verdict": "UNDECIDED", "reason": format!("{what} exceeds cap {cap} (reached {count})") });
            Outcome { code: EXIT_UNDECIDED, json: Some(to_text(&value)), message: format!("UNDECIDED: {what} exceeds cap {cap}") }
        }
        Err(e) => Outcome::usage(format!("error: {e}")),
    }
}

fn to_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn finish(cli: &Cli, value: Value, verdict: Option<String>) -> Outcome {
    let json = Some(to_text(&value));
    let shown = verdict.clone().unwrap_or_else(|| "done".into());
    if verdict.as_deref() == Some("UNDECIDED") {
        return Outcome { code: EXIT_UNDECIDED, json, message: "UNDECIDED".into() };
    }
    // A crosscheck is itself a test: without an expectation, disagreement is a mismatch.
    let expect = cli.expect.clone().or_else(|| matches!(cli.command, Command::WeilCrosscheck { .. }).then(|| "AGREE".into()));
    match (&expect, verdict) {
        (Some(want), Some(got)) if !want.eq_ignore_ascii_case(&got) => {
            Outcome { code: EXIT_MISMATCH, json, message: format!("verdict {got} does not match expected {want}") }
        }
        _ => Outcome { code: EXIT_OK, json, message: shown },
    }
}

fn table_cap(cli: &Cli) -> usize {
    cli.cap.unwrap_or(TABLE_CAP).min(TABLE_CAP)
}

fn load_group(arg: &GroupArg, cap: usize) -> Result<TableGroup> {
    load(arg.builtin.as_deref(), arg.file.as_ref(), cap)
}

fn load(builtin: Option<&str>, file: Option<&PathBuf>, cap: usize) -> Result<TableGroup> {
    let spec = match (builtin, file) {
        (Some(b), None) => GroupSpec::parse_builtin(b)?,
        (None, Some(f)) => GroupSpec::parse_file(&std::fs::read_to_string(f)?)?,
        _ => return Err(Error::Contract("give exactly one of --builtin or --file".into())),
    };
    let (mut t, _) = TableGroup::from_group(&build_group(&spec)?, cap)?;
    t.set_name(spec.name());
    Ok(t)
}

fn order_statistics(t: &TableGroup) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for o in t.element_orders() {
        *m.entry(o).or_insert(0) += 1;
    }
    m
}

fn no_verify(cli: &Cli, what: &str) -> Result<()> {
    match cli.verify {
        Some(_) => Err(Error::Contract(format!("--verify is not available for {what}; rerun the command with the same seed"))),
        None => Ok(()),
    }
}

fn verdict_of<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn dispatch(cli: &Cli) -> Result<(Value, Option<String>)> {
    let cap = table_cap(cli);
    match &cli.command {
        Command::Rigidity(g) => {
            no_verify(cli, "rigidity")?;
            let report = rigidity_certificate(&load_group(g, cap)?)?;
            let verdict = verdict_of(&report.verdict);
            Ok((serde_json::to_value(&report)?, Some(verdict)))
        }
        Command::Variants(g) => {
            no_verify(cli, "variants")?;
            let t = load_group(g, cap)?;
            let vs = isocategorical_variants(&t)?;
            let list: Vec<Value> = vs.iter().map(|v| json!({ "name": v.name(), "order": v.order(), "order_statistics": order_statistics(v) })).collect();
            let verdict = if vs.len() == 1 { "RIGID" } else { "VARIANTS" };
            Ok((json!({ "group": t.name(), "count": vs.len(), "variants": list }), Some(verdict.into())))
        }
        Command::Gb { group, candidate, dump } => {
            no_verify(cli, "gb")?;
            let t = load_group(group, cap)?;
            let report = rigidity_certificate(&t)?;
            let list: Vec<Value> = report
                .candidates
                .iter()
                .map(|c| {
                    let table = c.gb.to_table()?;
                    Ok(json!({
                        "A_order": c.a_order,
                        "A_members": c.a_members,
                        "R_index": c.r_index,
                        "b_trivial": c.b_trivial,
                        "gb_isomorphic": c.gb_isomorphic,
                        "gb_order_statistics": order_statistics(&table),
                    }))
                })
                .collect::<Result<_>>()?;
            if let Some(path) = dump {
                let c = report
                    .candidates
                    .get(*candidate)
                    .ok_or_else(|| Error::Contract(format!("no candidate {candidate}; found {}", report.candidates.len())))?;
                let k = &c.gb.quotient.group;
                std::fs::write(path, c.gb.btilde.dump(k, &format!("{}/A", t.name())))?;
            }
            Ok((json!({ "group": t.name(), "order": t.order(), "candidates": list }), None))
        }
        Command::ApsVerify { n, cocycle_samples, pair_samples } => {
            no_verify(cli, "aps-verify")?;
            let cert = verify_nonzero_with(*n, *cocycle_samples, *pair_samples, cli.seed)?;
            let verdict = verdict_of(&cert.verdict);
            Ok((serde_json::to_value(&cert)?, Some(verdict)))
        }
        Command::WeilCrosscheck { n, pairs } => {
            no_verify(cli, "weil-crosscheck")?;
            let r = crosscheck_run(*n, *pairs, cli.seed)?;
            let verdict = if r.passed() { "AGREE" } else { "MISMATCH" };
            let mut v = serde_json::to_value(&r)?;
            v["verdict"] = json!(verdict);
            Ok((v, Some(verdict.into())))
        }
        Command::Chartable(g) => {
            no_verify(cli, "chartable")?;
            let ct = character_table(&load_group(g, cap)?)?;
            Ok((ct.to_json(), None))
        }
        Command::Compare { group, builtin2, file2 } => {
            let t1 = load_group(group, cap)?;
            let t2 = load(builtin2.as_deref(), file2.as_ref(), cap)?;
            let (c1, c2) = (character_table(&t1)?, character_table(&t2)?);
            if let Some(path) = &cli.verify {
                return replay_compare(&c1, &c2, &std::fs::read_to_string(path)?);
            }
            let bijection = fusion_compare(&c1, &c2);
            let iso = tables_isomorphic(&t1, &t2);
            let verdict = match (&bijection, &iso) {
                (_, Some(_)) => "ISOMORPHIC",
                (Some(_), None) => "SAME_RING_NONISOMORPHIC",
                (None, None) => "DIFFERENT_RINGS",
            };
            let v = json!({
                "group1": t1.name(),
                "group2": t2.name(),
                "fusion_equal": bijection.is_some(),
                "isomorphic": iso.is_some(),
                "bijection": bijection,
                "fusion_hash1": c1.fusion_hash(),
                "fusion_hash2": c2.fusion_hash(),
                "verdict": verdict,
            });
            Ok((v, Some(verdict.into())))
        }
        Command::CocycleCheck { group, cocycle, candidate } => {
            let g = load_group(group, cap)?;
            let text = std::fs::read_to_string(cocycle)?;
            let (t, c) = match candidate {
                None => {
                    let (_, c) = parse_dump(&text, &g)?;
                    (g, as_module_cochain(c)?)
                }
                Some(i) => candidate_cochain(&g, *i, &text)?,
            };
            if let Some(path) = &cli.verify {
                return replay_cocycle(&t, &c, &std::fs::read_to_string(path)?);
            }
            cocycle_check(&t, &c, cli.cap.unwrap_or(SOLVER_CAP))
        }
    }
}

/// The quotient of candidate `i` and the dumped cochain with its conjugation action restored.
fn candidate_cochain(g: &TableGroup, i: usize, text: &str) -> Result<(TableGroup, Cochain2)> {
    let report = rigidity_certificate(g)?;
    let c = report
        .candidates
        .into_iter()
        .nth(i)
        .ok_or_else(|| Error::Contract(format!("no candidate {i}")))?;
    let k = c.gb.quotient.group;
    let (_, parsed) = parse_dump(text, &k)?;
    let module = c.gb.btilde.coeff;
    let same_shape = match (&parsed.coeff, &module) {
        (Coeff::Module(p), Coeff::Module(m)) => p.group == m.group,
        _ => false,
    };
    if !same_shape {
        return Err(Error::Contract("dumped coefficients do not match A of the candidate".into()));
    }
    Ok((k, Cochain2 { size: parsed.size, coeff: module, values: parsed.values }))
}

/// μ_N values become a cyclic module with trivial action so the solver applies.
fn as_module_cochain(c: Cochain2) -> Result<Cochain2> {
    match c.coeff {
        Coeff::Mu(n) => {
            let m = Module::trivial(AbelianGroup::new(vec![n])?);
            Ok(Cochain2 { size: c.size, coeff: Coeff::Module(m.into()), values: c.values })
        }
        Coeff::Module(_) => Ok(c),
    }
}

fn cocycle_check(t: &TableGroup, c: &Cochain2, cap: usize) -> Result<(Value, Option<String>)> {
    if let Err((x, y, z)) = is_cocycle2(t, c) {
        let labels = [x, y, z].map(|e| t.label(e as u32).to_string());
        return Ok((json!({ "group": t.name(), "cocycle": false, "failing_triple": labels, "verdict": "NOT_COCYCLE" }), Some("NOT_COCYCLE".into())));
    }
    let (verdict, splitting, certificate, reason) = match coboundary_solve(t, c, cap)? {
        Triviality::Coboundary(z) => ("COBOUNDARY", Some(z.values), None, None),
        Triviality::Nontrivial(cert) => ("NONTRIVIAL", None, Some(cert), None),
        Triviality::Undecided(why) => ("UNDECIDED", None, None, Some(why)),
    };
    let v = json!({
        "group": t.name(),
        "cocycle": true,
        "verdict": verdict,
        "splitting": splitting,
        "certificate": certificate,
        "reason": reason,
    });
    Ok((v, Some(verdict.into())))
}

fn replay_cocycle(t: &TableGroup, c: &Cochain2, report: &str) -> Result<(Value, Option<String>)> {
    let v: Value = serde_json::from_str(report)?;
    let claimed = v["verdict"].as_str().unwrap_or("").to_string();
    let ok = match claimed.as_str() {
        "COBOUNDARY" => {
            let values: Vec<usize> = serde_json::from_value(v["splitting"].clone())?;
            values.len() == t.order() && values.iter().all(|&x| x < c.coeff.size()) && d1(t, &Cochain1 { coeff: c.coeff.clone(), values }) == *c
        }
        "NONTRIVIAL" => {
            let cert: Certificate = serde_json::from_value(v["certificate"].clone())?;
            verify_certificate(t, c, &cert)?
        }
        "NOT_COCYCLE" => is_cocycle2(t, c).is_err(),
        other => return Err(Error::Contract(format!("verdict {other:?} carries no replayable witness"))),
    };
    let verdict = if ok { claimed.clone() } else { "WITNESS_REJECTED".into() };
    Ok((json!({ "replayed": claimed, "witness_valid": ok, "verdict": verdict }), Some(verdict)))
}

fn replay_compare(c1: &CharacterTable, c2: &CharacterTable, report: &str) -> Result<(Value, Option<String>)> {
    let v: Value = serde_json::from_str(report)?;
    let bijection: Option<Vec<usize>> = serde_json::from_value(v["bijection"].clone())?;
    let Some(p) = bijection else {
        return Err(Error::Contract("report has no bijection to replay".into()));
    };
    let r = c1.rank();
    let ok = p.len() == r
        && c2.rank() == r
        && {
            let mut seen = p.clone();
            seen.sort_unstable();
            seen.iter().copied().eq(0..r)
        }
        && (0..r).all(|i| c1.degrees[i] == c2.degrees[p[i]])
        && (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| c1.fusion_coefficient(i, j, k) == c2.fusion_coefficient(p[i], p[j], p[k]))));
    let verdict = if ok { "BIJECTION_VALID" } else { "WITNESS_REJECTED" };
    Ok((json!({ "witness_valid": ok, "verdict": verdict }), Some(verdict.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("isocat").chain(args.iter().copied()))
    }

    #[test]
    fn rigidity_quaternion() {
        let o = go(&["rigidity", "--builtin", "quaternion8", "--expect", "rigid"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.message);
        let v: Value = serde_json::from_str(o.json.as_deref().unwrap()).unwrap();
        assert_eq!(v["verdict"], "RIGID");
        assert_eq!(go(&["rigidity", "--builtin", "quaternion8", "--expect", "candidates"]).code, EXIT_MISMATCH);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&["rigidity"]).code, EXIT_USAGE);
        assert_eq!(go(&["rigidity", "--builtin", "nonsense"]).code, EXIT_USAGE);
    }

    #[test]
    fn cap_gives_undecided() {
        let o = go(&["rigidity", "--builtin", "dihedral8", "--cap", "4"]);
        assert_eq!(o.code, EXIT_UNDECIDED, "{}", o.message);
        assert!(o.json.unwrap().contains("UNDECIDED"));
    }

    #[test]
    fn compare_dihedral_quaternion_and_replay() {
        let o = go(&["compare", "--builtin", "dihedral8", "--builtin2", "quaternion8"]);
        assert_eq!(o.code, EXIT_OK);
        let text = o.json.unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!((v["fusion_equal"].clone(), v["isomorphic"].clone()), (json!(true), json!(false)));
        let dir = std::env::temp_dir().join(format!("isocat-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("compare.json");
        std::fs::write(&path, &text).unwrap();
        let r = go(&["compare", "--builtin", "dihedral8", "--builtin2", "quaternion8", "--verify", path.to_str().unwrap()]);
        assert_eq!(r.code, EXIT_OK);
        assert!(r.json.unwrap().contains("BIJECTION_VALID"));
    }

    #[test]
    fn cocycle_check_roundtrip() {
        let dir = std::env::temp_dir().join(format!("isocat-cli-cc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let (t, _) = TableGroup::from_group(&build_group(&GroupSpec::parse_builtin("cyclic 4").unwrap()).unwrap(), 100).unwrap();
        // The carry cocycle of Z/4 → Z/2 extension data with values in μ2 is nontrivial.
        let carry = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| usize::from(x + y >= 4));
        let path = dir.join("carry.txt");
        std::fs::write(&path, carry.dump(&t, "cyclic4")).unwrap();
        let o = go(&["cocycle-check", "--builtin", "cyclic 4", "--cocycle", path.to_str().unwrap(), "--expect", "nontrivial"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.message);
        let rep = dir.join("carry.json");
        std::fs::write(&rep, o.json.unwrap()).unwrap();
        let r = go(&["cocycle-check", "--builtin", "cyclic 4", "--cocycle", path.to_str().unwrap(), "--verify", rep.to_str().unwrap()]);
        assert_eq!(r.code, EXIT_OK);
        assert!(r.json.unwrap().contains("\"witness_valid\": true"));
        // A coboundary.
        let cob = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| (usize::from(x == 1) + usize::from(y == 1) + usize::from((x + y) % 4 == 1)) % 2);
        std::fs::write(&path, cob.dump(&t, "cyclic4")).unwrap();
        assert_eq!(go(&["cocycle-check", "--builtin", "cyclic 4", "--cocycle", path.to_str().unwrap(), "--expect", "coboundary"]).code, EXIT_OK);
    }

    #[test]
    fn seeded_output_is_deterministic() {
        let a = go(&["weil-crosscheck", "--n", "1", "--pairs", "5", "--seed", "9"]);
        let b = go(&["weil-crosscheck", "--n", "1", "--pairs", "5", "--seed", "9"]);
        assert_eq!(a.code, EXIT_OK, "{}", a.message);
        assert_eq!(a.json, b.json);
    }
}
