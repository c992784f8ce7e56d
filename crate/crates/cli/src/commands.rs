//! Subcommand handlers. Each returns a JSON result and an exit code.

use std::path::Path;

use qrgroups::exact::{q, q_int, Q};
use qrgroups::groups::*;
use qrgroups::mixing::*;
use qrgroups::productfree::*;
use qrgroups::quasirandom::*;
use qrgroups::reptheory::*;
use qrgroups::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cli::{Cli, Command, FamilyArg, GroupArgs, PfArgs, PfMode};
use crate::config::RunConfig;
use crate::report::{self, exit};

#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    pub fn kind(&self) -> &str {
        match self {
            Failure::Lib(e) => e.kind(),
            Failure::Usage(_) => "Usage",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(s) => s.clone(),
        }
    }

    pub fn code(&self) -> i32 {
        match self {
            Failure::Lib(e) if e.is_resource() => exit::RESOURCE,
            Failure::Lib(
                Error::CharacterTable(_)
                | Error::NotCommuting(_)
                | Error::NotUnitary { .. }
                | Error::NotNormalizing(_),
            ) => exit::VERIFICATION,
            _ => exit::USAGE,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub code: i32,
}

impl Outcome {
    fn checked(result: Value, pass: bool) -> Self {
        Outcome { result, code: if pass { exit::OK } else { exit::VERIFICATION } }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Rational as `{num, den}` strings.
fn exact(x: &Q) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: FamilyArg) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for family {family:?}").to_lowercase()))
}

pub fn build(args: &GroupArgs, budget: u64) -> Result<GroupTable, Failure> {
    let f = args.family;
    let g = match f {
        FamilyArg::Sl2 => {
            if args.k.is_some_and(|k| k != 2) {
                return Err(Failure::Usage("family sl2 has k = 2".into()));
            }
            build_sl(2, need(args.p, "p", f)?, args.n, budget)?
        }
        FamilyArg::Sl => build_sl(need(args.k, "k", f)?, need(args.p, "p", f)?, args.n, budget)?,
        FamilyArg::Sp => build_sp(need(args.k, "k", f)?, need(args.p, "p", f)?, args.n, budget)?,
        FamilyArg::Alt => build_alt(need(args.k, "k", f)?, budget)?,
        FamilyArg::Sym => build_sym(need(args.k, "k", f)?, budget)?,
        FamilyArg::Tree => build_tree_level(need(args.k, "k", f)?, args.level, budget)?,
        FamilyArg::Abelian => build_abelian(&args.factors, budget)?,
        FamilyArg::Quaternion => build_quaternion()?,
    };
    Ok(g)
}

fn table(g: &GroupTable, cfg: &RunConfig) -> Result<(ClassData, CharacterTable), Failure> {
    let exec = cfg.exec();
    let classes = ClassData::compute_with(g, exec);
    let t = character_table_with(g, &classes, cfg.seed, exec)?;
    Ok((classes, t))
}

pub fn run(command: &Command, cfg: &RunConfig) -> CmdResult {
    match command {
        Command::Group(args) => cmd_group(args, cfg),
        Command::Degrees { group, full } => cmd_degrees(group, *full, cfg),
        Command::Bounds(args) => cmd_bounds(args, cfg),
        Command::Mixing { group, trials } => cmd_mixing(group, *trials, cfg),
        Command::Pf(args) => cmd_pf(args, cfg),
        Command::Tree { k, depth } => cmd_tree(*k, *depth, cfg),
        Command::Report { manifest } => cmd_report(manifest, cfg),
    }
}

fn cmd_group(args: &GroupArgs, cfg: &RunConfig) -> CmdResult {
    let g = build(args, cfg.element_budget)?;
    let classes = ClassData::compute_with(&g, cfg.exec());
    let result = json!({
        "label": g.descriptor().label(),
        "descriptor": to_value(g.descriptor()),
        "order": g.order(),
        "classes": classes.num_classes(),
        "exponent": classes.exponent(),
        "abelian": g.is_abelian(),
    });
    Ok(Outcome { result, code: exit::OK })
}

fn cmd_degrees(args: &GroupArgs, full: bool, cfg: &RunConfig) -> CmdResult {
    let g = build(args, cfg.element_budget)?;
    let (_, t) = table(&g, cfg)?;
    let m = min_nontrivial_degree(&t)?;
    let mf = min_faithful_degree(&t)?;
    let square_sum: u64 = t.degrees().iter().map(|d| d * d).sum();
    let (row, col) = t.orthogonality_defect();
    let pass = square_sum == t.order() && row.max(col) <= cfg.tolerance;
    let result = json!({
        "label": g.descriptor().label(),
        "m": m,
        "m_f": to_value(&mf),
        "table": to_value(&t.summary(full)),
        "checks": {
            "degree_square_sum": square_sum,
            "order": t.order(),
            "row_orthogonality_defect": to_value(&qrgroups::exact::approx(row)),
            "column_orthogonality_defect": to_value(&qrgroups::exact::approx(col)),
            "pass": pass,
        },
    });
    Ok(Outcome::checked(result, pass))
}

fn linear_family(args: &GroupArgs) -> Result<(LinearFamily, usize), Failure> {
    match args.family {
        FamilyArg::Sl2 => Ok((LinearFamily::Sl2, 2)),
        FamilyArg::Sl => {
            let k = need(args.k, "k", args.family)?;
            Ok((LinearFamily::for_group(false, k), k))
        }
        FamilyArg::Sp => Ok((LinearFamily::Sp2k, need(args.k, "k", args.family)?)),
        other => Err(Error::UnsupportedFamily(format!("{other:?}").to_lowercase()).into()),
    }
}

fn cmd_bounds(args: &GroupArgs, cfg: &RunConfig) -> CmdResult {
    let (family, k) = linear_family(args)?;
    let p = need(args.p, "p", args.family)?;
    let h = h_bound(family, k, p)?;
    let hf = hf_bound(family, k, p, args.n)?;
    let g = build(args, cfg.element_budget)?;
    let (_, t) = table(&g, cfg)?;
    let m = min_nontrivial_degree(&t)?;
    let mf = min_faithful_degree(&t)?.value;
    let mut reports = vec![
        verify_bound("m", q_int(m), h.clone(), Relation::AtLeast, &["h"]),
        verify_bound("m_f", q_int(mf), hf.clone(), Relation::AtLeast, &["h_f"]),
    ];
    if family == LinearFamily::Sl2 && args.n >= 2 {
        let bgc = bgc_bound(p, args.n)?;
        reports.push(verify_bound("m_f", q_int(mf), bgc, Relation::AtLeast, &["bgc"]));
    }
    let pass = reports.iter().all(|r| r.pass);
    let result = json!({
        "label": g.descriptor().label(),
        "m": m,
        "m_f": mf,
        "h": exact(&h),
        "h_f": exact(&hf),
        "reports": to_value(&reports),
        "pass": pass,
    });
    Ok(Outcome::checked(result, pass))
}

fn cmd_mixing(args: &GroupArgs, trials: usize, cfg: &RunConfig) -> CmdResult {
    let g = build(args, cfg.element_budget)?;
    let (_, t) = table(&g, cfg)?;
    let m = min_nontrivial_degree(&t)?;
    let (seed, exec, tol) = (cfg.seed, cfg.exec(), cfg.tolerances());
    let mut suites = vec![
        mixing_suite(&g, m, trials, seed, exec, tol)?,
        set_mixing_suite(&g, m, trials, seed, exec, tol)?,
    ];
    let mut skipped = Vec::new();
    if g.order() <= SVD_LIMIT {
        suites.push(svd_suite(&g, m, trials, seed, exec, tol)?);
    } else {
        skipped.push(format!("svd: order {} exceeds {SVD_LIMIT}", g.order()));
    }
    // density above m^(-1/3) is impossible when m = 1
    if m > 1 {
        suites.push(cube_cover_suite(&g, m, trials, seed, exec)?);
    } else {
        skipped.push("cube-cover: no density exceeds m^(-1/3) when m = 1".to_string());
    }
    suites.push(triple_suite(&g, m, trials, seed, &[q(1, 2), q(9, 10)], exec)?);
    suites.push(product_measure_suite(&g, m, trials, seed, exec)?);
    let pass = suites.iter().all(|s| s.failures == 0);
    let result = json!({
        "label": g.descriptor().label(),
        "m": m,
        "suites": to_value(&suites),
        "skipped": skipped,
        "pass": pass,
    });
    Ok(Outcome::checked(result, pass))
}

fn search_value(r: &SearchResult) -> Value {
    let mut v = to_value(r);
    v["density_text"] = json!(r.density.to_string());
    v
}

fn formula(name: &str, value: &Q) -> Value {
    json!({ "formula": name, "value": exact(value), "value_text": value.to_string() })
}

fn cmd_pf(args: &PfArgs, cfg: &RunConfig) -> CmdResult {
    let group = || args.group().ok_or_else(|| Failure::Usage("--family is required for this mode".into()));
    let p = || args.p.ok_or_else(|| Failure::Usage("--p is required for this mode".into()));
    match args.mode {
        PfMode::Search => {
            let g = build(&group()?, cfg.element_budget)?;
            let r = exact_max_product_free(&g, cfg.node_budget, cfg.exec())?;
            let valid = verify_product_free(&g, &r.witness);
            let mut result = search_value(&r);
            result["verified"] = json!(valid);
            let code = match (valid, r.optimal) {
                (false, _) => exit::VERIFICATION,
                (true, false) => exit::RESOURCE,
                (true, true) => exit::OK,
            };
            Ok(Outcome { result, code })
        }
        PfMode::Coset => {
            let ga = group()?;
            let g = build(&ga, cfg.element_budget)?;
            let action = match ga.family {
                FamilyArg::Sl2 | FamilyArg::Sl | FamilyArg::Sp => StabilizerAction::Projective,
                FamilyArg::Alt | FamilyArg::Sym | FamilyArg::Tree => StabilizerAction::RootNeighbor(0),
                other => return Err(Error::UnsupportedFamily(format!("{other:?}").to_lowercase()).into()),
            };
            let (h, index) = stabilizer_subgroup(&g, action)?;
            let r = coset_product_free(&g, &h)?;
            let valid = verify_product_free(&g, &r.witness);
            let pass = valid && r.density == q(1, index as i64);
            let mut result = search_value(&r);
            result["subgroup_index"] = json!(index);
            result["verified"] = json!(pass);
            Ok(Outcome::checked(result, pass))
        }
        PfMode::FormulaAbelian => {
            let factors: Vec<u64> = args.factors.iter().map(|&f| f as u64).collect();
            let value = green_ruzsa_pf(&factors)?;
            let mut result = formula("abelian", &value);
            if !args.verify {
                return Ok(Outcome { result, code: exit::OK });
            }
            let report = formula_vs_search(&factors, cfg.node_budget, cfg.exec())?;
            result["verification"] = to_value(&report);
            Ok(Outcome::checked(result, report.pass))
        }
        PfMode::FormulaPadic => Ok(Outcome { result: formula("padic", &pf_padic(p()?)?), code: exit::OK }),
        PfMode::FormulaSeries => {
            Ok(Outcome { result: formula("power-series", &pf_power_series(p()?)?), code: exit::OK })
        }
        PfMode::FormulaTree => {
            let k = args.k.ok_or_else(|| Failure::Usage("--k is required for this mode".into()))?;
            let mut result = to_value(&pf_bounds_tree(k)?);
            result["formula"] = json!("tree");
            Ok(Outcome { result, code: exit::OK })
        }
        PfMode::FormulaProfinite => {
            let ga = group()?;
            let (family, k) = linear_family(&ga)?;
            let mut result = to_value(&pf_bounds_profinite(family, k, p()?)?);
            result["formula"] = json!("profinite");
            Ok(Outcome { result, code: exit::OK })
        }
    }
}

fn cmd_tree(k: usize, depth: u32, cfg: &RunConfig) -> CmdResult {
    if !(1..=2).contains(&depth) {
        return Err(Failure::Usage(format!("depth must be 1 or 2, got {depth}")));
    }
    if k < 2 {
        return Err(Failure::Usage(format!("k must be at least 2, got {k}")));
    }
    let mut pass = true;
    let mut levels = Vec::new();
    let mut f1 = None;
    for level in 1..=depth {
        let want = tree_level_order(k, level);
        let mut entry = json!({ "level": level, "order": want.to_string() });
        if want <= cfg.element_budget as u128 {
            let g = build_tree_level(k, level, cfg.element_budget)?;
            let ok = g.order() as u128 == want;
            pass &= ok;
            entry["enumerated"] = json!(g.order());
            entry["matches"] = json!(ok);
            if level == 1 {
                f1 = Some(g);
            }
        } else {
            entry["enumerated"] = Value::Null;
            entry["note"] = json!(format!("order exceeds element budget {}", cfg.element_budget));
        }
        levels.push(entry);
    }

    let level1_m = match &f1 {
        Some(g) if g.order() <= MAX_ORDER => {
            let (_, t) = table(g, cfg)?;
            let m = min_nontrivial_degree(&t)?;
            // Alt_{k+1} with k + 1 >= 7 has minimal degree k
            let expected = (k >= 6).then_some(k as u64);
            if let Some(e) = expected {
                pass &= m == e;
            }
            json!({ "value": m, "expected": expected })
        }
        _ => Value::Null,
    };

    let scan = if k < 12 {
        let s = alt_invariant_subgroup_scan(&build_even_weight_code(k + 1)?)?;
        let holds = s.min_rank + 1 >= k;
        if k >= 6 {
            pass &= holds;
        }
        json!({
            "m": s.m,
            "code_dimension": s.code_dimension,
            "invariant_subspaces": s.subspaces.len(),
            "min_rank": s.min_rank,
            "rank_at_least_k_minus_1": holds,
        })
    } else {
        Value::Null
    };

    let result = json!({ "k": k, "levels": levels, "level1_m": level1_m, "invariant_scan": scan, "pass": pass });
    Ok(Outcome::checked(result, pass))
}

/// Turns one manifest object into command-line arguments.
pub fn manifest_argv(entry: &Map<String, Value>) -> Result<Vec<String>, String> {
    let command = entry
        .get("command")
        .and_then(Value::as_str)
        .ok_or("manifest entry lacks a string \"command\"")?;
    if command == "report" {
        return Err("manifests cannot nest report".into());
    }
    let mut argv = vec![command.to_string()];
    for (key, value) in entry {
        if key == "command" || key == "name" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Bool(true) => argv.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::String(s) => argv.extend([flag, s.clone()]),
            Value::Number(n) => argv.extend([flag, n.to_string()]),
            Value::Array(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                argv.extend([flag, parts.join(",")]);
            }
            Value::Object(_) => return Err(format!("value of {key} must not be an object")),
        }
    }
    Ok(argv)
}

fn overlay(base: &RunConfig, cli: &Cli) -> RunConfig {
    let g = &cli.global;
    RunConfig {
        seed: g.seed.unwrap_or(base.seed),
        tolerance: g.tolerance.unwrap_or(base.tolerance),
        workers: g.workers.unwrap_or(base.workers),
        element_budget: g.element_budget.unwrap_or(base.element_budget),
        node_budget: g.node_budget.unwrap_or(base.node_budget),
        output: None,
    }
}

fn cmd_report(manifest: &Path, cfg: &RunConfig) -> CmdResult {
    use clap::Parser;

    let text = std::fs::read_to_string(manifest)
        .map_err(|e| Failure::Usage(format!("{}: {e}", manifest.display())))?;
    let entries: Vec<Map<String, Value>> = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: expected an array of objects: {e}", manifest.display())))?;

    let mut rows = Vec::new();
    let mut out = Vec::new();
    let mut code = exit::OK;
    for (i, entry) in entries.iter().enumerate() {
        let name = entry.get("name").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| format!("#{}", i + 1));
        let outcome = manifest_argv(entry).map_err(Failure::Usage).and_then(|argv| {
            let cli = Cli::try_parse_from(std::iter::once("qrgroups".to_string()).chain(argv.iter().cloned()))
                .map_err(|e| Failure::Usage(e.to_string().trim().to_string()))?;
            let entry_cfg = overlay(cfg, &cli);
            Ok((argv, cli.command.name(), run(&cli.command, &entry_cfg)))
        });
        let mut item = json!({ "name": name });
        let entry_code = match outcome {
            Ok((argv, command, result)) => {
                item["command"] = json!(command);
                item["args"] = json!(argv[1..]);
                match result {
                    Ok(o) => {
                        item["result"] = o.result;
                        o.code
                    }
                    Err(f) => {
                        item["error"] = json!(f.kind());
                        item["detail"] = json!(f.detail());
                        f.code()
                    }
                }
            }
            Err(f) => {
                item["error"] = json!(f.kind());
                item["detail"] = json!(f.detail());
                f.code()
            }
        };
        item["exit_code"] = json!(entry_code);
        rows.push(report::Row {
            name,
            command: item["command"].as_str().unwrap_or("-").to_string(),
            code: entry_code,
        });
        code = code.max(entry_code);
        out.push(item);
    }
    eprint!("{}", report::table(&rows));
    let result = json!({
        "manifest": manifest.display().to_string(),
        "entries": out,
        "passed": rows.iter().filter(|r| r.code == exit::OK).count(),
        "total": rows.len(),
        "exit_code": code,
    });
    Ok(Outcome { result, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_entries_become_flags() {
        let entry: Map<String, Value> =
            serde_json::from_str(r#"{"name": "x", "command": "pf", "mode": "formula-abelian", "factors": [2, 4], "verify": true, "node_budget": 10}"#)
                .unwrap();
        let argv = manifest_argv(&entry).unwrap();
        assert_eq!(argv[0], "pf");
        let joined = argv.join(" ");
        assert!(joined.contains("--factors 2,4"));
        assert!(joined.contains("--verify"));
        assert!(joined.contains("--node-budget 10"));
        assert!(!joined.contains("name"));
    }

    #[test]
    fn nested_report_is_refused() {
        let entry: Map<String, Value> = serde_json::from_str(r#"{"command": "report", "manifest": "x"}"#).unwrap();
        assert!(manifest_argv(&entry).is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::Lib(Error::BudgetExceeded(3)).code(), exit::RESOURCE);
        assert_eq!(Failure::Lib(Error::CharacterTable("x".into())).code(), exit::VERIFICATION);
        assert_eq!(Failure::Lib(Error::UnsupportedPrime(2)).code(), exit::USAGE);
        assert_eq!(Failure::Usage("x".into()).code(), exit::USAGE);
    }
}
