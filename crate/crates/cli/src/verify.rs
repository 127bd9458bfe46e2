//! Cross-checks every solver that applies to a graph against the others.

use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Map};
use tmdelta::{
    degree_sequence_bounds, delta_forest_formula, max_subdet_brute, max_subdet_principal, parse_graph,
    recognize, solve_brute, solve_fpt, solve_paths_dp, DeltaOutcome, Engine, FptConfig, Graph,
};

use crate::report::Report;
use crate::{delta_auto, path_instances, Caps, Failure, Outcome};

const DEFAULT_CAP: usize = 14;
const SOLVE_CAP: usize = 20;
/// One determinant per subset pair: `C(2k, k)` of them at `n + m = k`.
const EXHAUSTIVE_CAP: usize = 12;

fn check(g: &Graph, caps: Caps) -> tmdelta::Result<Result<(), String>> {
    let cfg = caps
        .subdet()
        .with_full_cap(caps.cap.map_or(DEFAULT_CAP, |c| c as usize));
    let sweep = max_subdet_brute(g, None, &cfg)?;
    let delta = sweep.value.clone();
    macro_rules! ensure {
        ($cond:expr, $($msg:tt)*) => {
            if !$cond {
                return Ok(Err(format!($($msg)*)));
            }
        };
    }
    ensure!(sweep.verify(g)?, "sweep witness has the wrong determinant");
    if g.element_count() <= EXHAUSTIVE_CAP {
        let exhaustive = max_subdet_brute(g, None, &cfg.clone().with_engine(Engine::Exhaustive))?;
        ensure!(
            exhaustive.value == delta,
            "exhaustive {} vs sweep {delta}",
            exhaustive.value
        );
    }
    let auto = delta_auto(g, &cfg)?;
    ensure!(
        auto.value == delta,
        "per-component {} vs sweep {delta}",
        auto.value
    );
    ensure!(auto.verify(g)?, "per-component witness has the wrong determinant");

    if g.is_forest() {
        let principal = max_subdet_principal(g, &cfg)?;
        ensure!(
            principal.value == delta,
            "principal {} vs sweep {delta}",
            principal.value
        );
        let formula = delta_forest_formula(g, caps.formula())?;
        ensure!(
            formula.result.value == delta,
            "formula {} vs sweep {delta}",
            formula.result.value
        );
        let b = degree_sequence_bounds(g)?;
        ensure!(
            b.lower_holds(&delta) && b.upper_holds(&delta),
            "degree bounds miss {delta}"
        );
    }

    let bound = u64::try_from(&delta).unwrap_or(u64::MAX);
    match recognize(g, bound, &cfg)? {
        DeltaOutcome::Exact { value } => ensure!(value == delta, "recognize {value} vs sweep {delta}"),
        DeltaOutcome::Exceeds { .. } => ensure!(false, "recognize at bound {delta} reported exceeds"),
    }
    if delta >= BigInt::from(2) {
        match recognize(g, bound - 1, &cfg)? {
            DeltaOutcome::Exceeds { certificate } => {
                ensure!(certificate.verify(g, bound - 1)?, "certificate does not verify")
            }
            DeltaOutcome::Exact { value } => ensure!(false, "recognize below delta returned {value}"),
        }
    }

    if g.element_count() <= SOLVE_CAP {
        let brute = solve_brute(g, SOLVE_CAP)?;
        let fpt = solve_fpt(g, bound, &FptConfig::default())?;
        ensure!(brute.verify(g)? && fpt.verify(g)?, "infeasible total matching");
        ensure!(
            fpt.weight == brute.weight,
            "fpt {} vs brute {}",
            fpt.weight,
            brute.weight
        );
        if let Ok(paths) = path_instances(g) {
            let dp = solve_paths_dp(&paths);
            ensure!(dp.verify(g)?, "infeasible path program solution");
            ensure!(
                dp.weight == brute.weight,
                "dp {} vs brute {}",
                dp.weight,
                brute.weight
            );
        }
    }
    Ok(Ok(()))
}

pub fn run(dir: &Path, caps: Caps) -> Outcome {
    let io = |e| Failure::Io(dir.to_path_buf(), e);
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    files.retain(|p| p.extension().is_some_and(|x| x == "graph"));
    files.sort();

    let mut r = Report::new();
    let mut results = Map::new();
    let (mut passed, mut skipped, mut failed) = (0, 0, 0);
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let status = match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_graph(&t).map_err(|e| e.to_string()))
        {
            Err(e) => Err(e),
            Ok(g) => match check(&g, caps) {
                Ok(res) => res.map(|()| "ok".to_string()),
                Err(tmdelta::Error::Size { what, size, cap }) => {
                    Ok(format!("skipped ({what} {size} > {cap})"))
                }
                Err(e) => Err(e.to_string()),
            },
        };
        let text = match status {
            Ok(s) if s == "ok" => {
                passed += 1;
                s
            }
            Ok(s) => {
                skipped += 1;
                s
            }
            Err(e) => {
                failed += 1;
                format!("FAIL {e}")
            }
        };
        r.text_only(&name, &text);
        results.insert(name, json!(text));
    }
    r.field("passed", passed, json!(passed))
        .field("skipped", skipped, json!(skipped))
        .field("failed", failed, json!(failed))
        .json_only("files", serde_json::Value::Object(results));
    if failed > 0 {
        r.code = 1;
    }
    Ok(r)
}
