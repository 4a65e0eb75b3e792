//! Acceptance run: one PASS or FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::time::{Duration, Instant};

use tableau_kb::model::KnowledgeBase;
use tableau_kb::oracle::{find_model, satisfies_kb};
use tableau_kb::rules::{materialize, Fact, MaterializeConfig, RuleError, SafetyMode};
use tableau_kb::syntax::parse_dl;
use tableau_kb::tableau::is_consistent;
use tableau_kb::validate::validate;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn load(name: &str) -> KnowledgeBase {
    parse_dl(&fs::read_to_string(common::fixture(name)).unwrap()).unwrap()
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn fact(f: &Fact) -> String {
    f.to_string()
}

fn actors() -> Outcome {
    let start = Instant::now();
    let verdict = is_consistent(&load("actors.dl")).map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(1), start)?;
    if !verdict.is_satisfiable() {
        return Err("reported unsatisfiable".into());
    }
    let backtracks: Vec<_> = verdict.trace.iter().filter(|s| s.rule == "backtrack").collect();
    if verdict.backtracks != 1 || backtracks.len() != 1 {
        return Err(format!(
            "{} backtracks, {} in the trace",
            verdict.backtracks,
            backtracks.len()
        ));
    }
    if backtracks[0].detail.as_deref() != Some("or") {
        return Err(format!("backtracked over `{}`, not a disjunction", backtracks[0]));
    }
    let run = common::run_binary(&["check", "actors.dl"]);
    if run.code != 0 || run.out() != "consistent\n" {
        return Err(format!("command line printed {:?} with exit {}", run.out(), run.code));
    }
    Ok(format!("satisfiable, one backtracked disjunction, {took:?}"))
}

fn award() -> Outcome {
    let start = Instant::now();
    let kb = load("award.dl");
    let store = materialize(&kb, &MaterializeConfig::default()).map_err(|e| e.to_string())?;
    let derived: Vec<String> = store
        .derived()
        .filter(|f| !matches!(f, Fact::NonDl(..)))
        .map(fact)
        .collect();
    if derived != ["AwardWinnerActor(a)"] {
        return Err(format!("derived {derived:?}"));
    }
    let strict = MaterializeConfig {
        safety: SafetyMode::Strict,
        ..MaterializeConfig::default()
    };
    let variable = match materialize(&kb, &strict) {
        Err(RuleError::Unsafe { variable, .. }) => variable,
        other => return Err(format!("strict mode gave {other:?}")),
    };
    if !kb.rules()[0].variables().contains(&variable.as_str()) {
        return Err(format!("cited ?{variable}, which is not in the rule"));
    }
    let run = common::run_binary(&["materialize", "--strict-rules", "award.dl"]);
    if run.code != 2 || !run.err().contains(&format!("?{variable}")) {
        return Err(format!("command line reported {:?} with exit {}", run.err(), run.code));
    }
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("derived {derived:?}, strict mode cites ?{variable}, {took:?}"))
}

fn series() -> Outcome {
    let start = Instant::now();
    let store = materialize(&load("series.dl"), &MaterializeConfig::default()).map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(1), start)?;
    let co: BTreeSet<String> = store
        .facts()
        .filter(|f| f.predicate() == "co-starredWith")
        .map(fact)
        .collect();
    let starred: BTreeSet<String> = store
        .derived()
        .filter(|f| f.predicate() == "starredIn")
        .map(fact)
        .collect();
    let want_co: BTreeSet<String> = ["a", "b", "c"]
        .iter()
        .map(|x| format!("co-starredWith({x},d)"))
        .collect();
    let want_starred: BTreeSet<String> = ["a", "b", "c"].iter().map(|x| format!("starredIn({x},s)")).collect();
    if co != want_co || starred != want_starred {
        return Err(format!("co-starredWith {co:?}, derived starredIn {starred:?}"));
    }
    Ok(format!("3 co-starredWith and 3 starredIn facts, {took:?}"))
}

fn tables() -> Outcome {
    let rows = common::tables::rows();
    let mut errors = vec![];
    for row in &rows {
        errors.extend(common::tables::check_forward(row).err());
        errors.extend(common::tables::check_backward(row).err());
    }
    if !errors.is_empty() {
        return Err(errors.join("; "));
    }
    if rows.len() < 12 {
        return Err(format!("only {} rows", rows.len()));
    }
    if !rows.iter().any(|r| r.dl.contains("房仕龍")) {
        return Err("no row with 房仕龍".into());
    }
    Ok(format!("{} rows byte-exact and read back", rows.len()))
}

fn alc_differential() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(7);
    let shape = common::Shape { depth: 3, full: false };
    let (total, bound) = (600, 8);
    let mut disagreements = vec![];
    for i in 0..total {
        let kb = common::knowledge_base(&mut rng, shape);
        let tableau = is_consistent(&kb).map_err(|e| format!("kb {i}: {e}"))?.is_satisfiable();
        let oracle = find_model(&kb, bound).map_err(|e| format!("kb {i}: {e}"))?;
        if tableau != oracle.is_some() {
            disagreements.push(i);
        }
    }
    let took = within(Duration::from_secs(300), start)?;
    if !disagreements.is_empty() {
        return Err(format!(
            "{} disagreements, first at kb {}",
            disagreements.len(),
            disagreements[0]
        ));
    }
    Ok(format!("{total} KBs, bound {bound}, 0 disagreements, {took:?}"))
}

fn full_fragment() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(8);
    let shape = common::Shape { depth: 2, full: true };
    let bound = 6;
    let (mut checked, mut models, mut none, mut inconclusive) = (0, 0, 0, 0);
    let mut violations = vec![];
    for i in 0..250 {
        let kb = common::knowledge_base(&mut rng, shape);
        if validate(&kb).iter().any(|d| d.is_error()) {
            continue;
        }
        checked += 1;
        match find_model(&kb, bound) {
            Ok(Some(model)) => {
                models += 1;
                if !satisfies_kb(&model, &kb) {
                    violations.push(format!("kb {i}: oracle model fails the KB"));
                }
                match is_consistent(&kb) {
                    Ok(v) if v.is_satisfiable() => {}
                    Ok(_) => violations.push(format!("kb {i}: tableau says unsatisfiable")),
                    Err(e) => violations.push(format!("kb {i}: tableau {e}")),
                }
            }
            Ok(None) => none += 1,
            Err(_) => inconclusive += 1,
        }
    }
    if checked < 200 {
        return Err(format!("only {checked} admissible KBs"));
    }
    if !violations.is_empty() {
        return Err(format!("{} violations: {}", violations.len(), violations.join("; ")));
    }
    Ok(format!(
        "{checked} KBs, bound {bound}: {models} models all confirmed, {none} without model, \
         {inconclusive} over budget, 0 violations, {:?}",
        start.elapsed()
    ))
}

fn properties() -> Outcome {
    let mut failed = vec![];
    for (name, suite) in common::props::SUITES {
        if let Err(e) = suite(256) {
            failed.push(format!("{name}: {e}"));
        }
    }
    if failed.is_empty() {
        Ok(format!("{} suites", common::props::SUITES.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn determinism() -> Outcome {
    let invocations = common::invocations();
    for args in &invocations {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let runs: Vec<_> = (0..3).map(|_| common::run_binary(&args)).collect();
        if runs.iter().any(|r| *r != runs[0]) {
            return Err(format!("output differs for {args:?}"));
        }
    }
    Ok(format!("{} invocations, 3 runs each", invocations.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("actors fixture consistency", actors),
        ("award fixture materialization", award),
        ("series fixture materialization", series),
        ("translation table goldens", tables),
        ("ALC differential against the oracle", alc_differential),
        ("full fragment one-directional check", full_fragment),
        ("property suites", properties),
        ("command line determinism", determinism),
    ];
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    let mut passed = 0;
    for (k, ((name, _), result)) in criteria.iter().zip(&results).enumerate() {
        match result {
            Ok(detail) => {
                passed += 1;
                println!("criterion {}: PASS {name}: {detail}", k + 1);
            }
            Err(detail) => println!("criterion {}: FAIL {name}: {detail}", k + 1),
        }
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
