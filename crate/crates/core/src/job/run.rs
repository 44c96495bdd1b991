use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{CrossedStep, GeneratorsSpec, Graph, Job, TaskSpec, SCHEMA_VERSION};
use crate::algebra::Algebra;
use crate::armature::{decompose_by_armature, proportional, verify_armature, Armature};
use crate::crossed::{
    brauer_witness_smallscale, build_crossed, decompose_with_subfields, lift_armature, nu_map,
    residue_armature, skolem_noether_lift, valuation_laws, EmbeddedKummer,
};
use crate::error::{Error, Result};
use crate::random::rng;
use crate::sqcentral::{self, Case, Verdict};
use crate::symbols::standard_armature;

/// One task's report as written to disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TaskReport {
    pub schema_version: u32,
    pub kind: String,
    pub name: String,
    pub pass: bool,
    #[serde(default)]
    pub error: Option<String>,
    pub data: Value,
}

#[derive(Clone, Debug)]
pub struct JobOutcome {
    pub summary: Value,
    pub reports: Vec<TaskReport>,
    pub pass: bool,
    pub dir: Option<PathBuf>,
}

impl JobOutcome {
    /// 0 when every task passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn armature_of(graph: &mut Graph, alg: &Algebra, name: &str, spec: &GeneratorsSpec) -> Result<Armature> {
    match spec {
        GeneratorsSpec::Standard(s) if s == "standard" => standard_armature(alg),
        GeneratorsSpec::Standard(s) => Err(Error::Parse(format!("unknown generator preset `{s}`"))),
        GeneratorsSpec::List(l) => Armature::new(alg, graph.generators(name, l)?),
    }
}

fn armature_json(arm: &Armature) -> Value {
    json!({
        "generators": arm.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "orders": arm.orders(),
        "roots": arm.roots(),
        "root": arm.root_value(1).to_string(),
        "table": arm.table(),
    })
}

/// Run one task against the graph. `Err` means the task could not be
/// carried out; a completed task whose checks fail has `pass = false`.
pub fn run_task(graph: &mut Graph, task: &TaskSpec, name: &str, seed: u64) -> Result<TaskReport> {
    let alg_name = task.algebra().to_string();
    let a = graph.algebra(&alg_name)?;
    let (pass, data) = match task {
        TaskSpec::VerifyArmature { generators, .. } => {
            let arm = match generators {
                GeneratorsSpec::List(l) => {
                    let gens = graph.generators(&alg_name, l)?;
                    let report = verify_armature(&a, &gens);
                    if !report.pass {
                        return Ok(report_of(task, name, false, json!({ "report": report })));
                    }
                    Armature::new(&a, gens)?
                }
                other => armature_of(graph, &a, &alg_name, other)?,
            };
            let report = arm.verify();
            let mut data = armature_json(&arm);
            data["report"] = json!(report);
            data["nondegenerate"] = json!(arm.is_nondegenerate());
            (report.pass, data)
        }
        TaskSpec::Decompose { generators, .. } => {
            let arm = armature_of(graph, &a, &alg_name, generators)?;
            let report = arm.verify();
            let d = decompose_by_armature(&arm)?;
            let base_ok = d.base.check(&arm);
            let mut data = armature_json(&arm);
            data["report"] = json!(report);
            data["symplectic_base"] = json!(d.base);
            data["factors"] = json!(d.factors.iter().map(|f| f.summary()).collect::<Vec<_>>());
            data["witness"] = json!(d.report);
            (report.pass && base_ok && d.report.pass, data)
        }
        TaskSpec::Crossed {
            subfields,
            vars,
            armature,
            steps,
            law_pairs,
            ..
        } => crossed_task(graph, &a, &alg_name, subfields, vars, armature.as_ref(), steps, *law_pairs, seed)?,
        TaskSpec::Sqcentral {
            element,
            budget,
            index,
            ..
        } => {
            let g = graph.element(&alg_name, element)?;
            let budget = budget.unwrap_or(sqcentral::DEFAULT_BUDGET);
            let rep = match sqcentral::classify_square_central(&g)? {
                Case::InSquare(l) => sqcentral::membership_square_case(&g, &l)?,
                Case::NonSquare(_) => sqcentral::membership_nonsquare_case(&g, *index, budget)?,
            };
            let mut data = json!(rep.summary());
            let mut pass = !matches!(rep.verdict, Verdict::Unknown(_));
            if let (Case::InSquare(l), 0) = (&rep.case, a.tower().characteristic()) {
                let tr = sqcentral::trace_criterion_char0(&g, l)?;
                let agree = matches!(
                    (&tr, &rep.verdict),
                    (Verdict::InQuaternion { .. }, Verdict::InQuaternion { .. })
                        | (Verdict::NotInQuaternion(_), Verdict::NotInQuaternion(_))
                );
                data["trace_criterion_agrees"] = json!(agree);
                pass &= agree;
            }
            (pass, data)
        }
    };
    Ok(report_of(task, name, pass, data))
}

fn report_of(task: &TaskSpec, name: &str, pass: bool, data: Value) -> TaskReport {
    TaskReport {
        schema_version: SCHEMA_VERSION,
        kind: task.kind().into(),
        name: name.into(),
        pass,
        error: None,
        data,
    }
}

#[allow(clippy::too_many_arguments)]
fn crossed_task(
    graph: &mut Graph,
    a: &Algebra,
    alg_name: &str,
    subfields: &[super::GeneratorSpec],
    vars: &[String],
    armature: Option<&GeneratorsSpec>,
    steps: &[CrossedStep],
    law_pairs: Option<usize>,
    seed: u64,
) -> Result<(bool, Value)> {
    let gens = graph.generators(alg_name, subfields)?;
    let emb = EmbeddedKummer::new(a, gens)?;
    let lift = skolem_noether_lift(&emb)?;
    let lrep = lift.check();
    let vars: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut data = json!({
        "vars": vars,
        "radicands": emb.field().radicands().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "degrees": emb.degrees(),
    });
    let mut pass = lrep.pass;
    data["skolem_noether"] = json!({ "report": lrep, "witness": lift.summary() });
    if !lrep.pass {
        return Ok((false, data));
    }
    let cp = build_crossed(&lift, &vars)?;
    let e = cp.algebra();
    if steps.contains(&CrossedStep::Build) {
        let associative = e.associativity_failure().is_none();
        pass &= associative;
        data["build"] = json!({
            "dim": e.dim(),
            "field": cp.field().describe(),
            "centralizer_dim": cp.centralizer_dim(),
            "associative": associative,
            "cocycle_table": cp.cocycle_table(),
        });
    }
    let needs_arm = steps
        .iter()
        .any(|s| matches!(s, CrossedStep::Lift | CrossedStep::Nu | CrossedStep::Residue | CrossedStep::Decompose));
    if needs_arm {
        let spec = armature
            .cloned()
            .unwrap_or_else(|| GeneratorsSpec::Standard("standard".into()));
        let arm = armature_of(graph, a, alg_name, &spec)?;
        let lifted = lift_armature(&cp, &arm)?;
        pass &= lifted.report.pass && lifted.isometric;
        data["lifted"] = json!({
            "report": lifted.report,
            "isometric": lifted.isometric,
            "sigmas": lifted.sigmas,
            "armature": armature_json(&lifted.armature),
        });
        if steps.contains(&CrossedStep::Nu) {
            let back = nu_map(&cp, &lifted.armature)?;
            let round_trip = arm
                .generators()
                .iter()
                .zip(back.armature.generators())
                .all(|(x, y)| proportional(y, x).is_some());
            let ok = back.report.pass && back.isometric && back.injective && back.kum_contained && round_trip;
            pass &= ok;
            data["nu"] = json!({
                "pass": ok,
                "report": back.report,
                "isometric": back.isometric,
                "injective": back.injective,
                "kum_contained": back.kum_contained,
                "round_trip": round_trip,
                "armature": armature_json(&back.armature),
            });
        }
        if steps.contains(&CrossedStep::Residue) {
            let res = residue_armature(&cp, &lifted.armature)?;
            let ok = res.report.pass && res.radical_is_kum && res.armature.order() == cp.centralizer_dim();
            pass &= ok;
            data["residue"] = json!({
                "pass": ok,
                "report": res.report,
                "value_classes": res.value_classes,
                "kernel_order": res.kernel_order,
                "radical_order": res.radical_order,
                "radical_is_kum": res.radical_is_kum,
                "armature": armature_json(&res.armature),
            });
        }
        if steps.contains(&CrossedStep::Decompose) {
            let d = decompose_with_subfields(&cp, &arm)?;
            let ok = d.report.pass && d.e_report.pass;
            pass &= ok;
            data["decompose"] = json!({
                "pass": ok,
                "symplectic_base": d.base,
                "cyclic": d.cyclic.iter().map(|c| c.summary()).collect::<Vec<_>>(),
                "symbols": d.symbols.iter().map(|f| f.summary()).collect::<Vec<_>>(),
                "witness": d.report,
                "e_witness": d.e_report,
            });
        }
    }
    if steps.contains(&CrossedStep::Brauer) {
        let b = brauer_witness_smallscale(&cp)?;
        pass &= b.pass;
        data["brauer"] = json!(b);
    }
    if steps.contains(&CrossedStep::Laws) {
        let mut g = rng(seed);
        let l = valuation_laws(&cp, law_pairs.unwrap_or(200), &mut g)?;
        pass &= l.pass;
        data["laws"] = json!(l);
        data["seed"] = json!(seed);
    }
    Ok((pass, data))
}

fn write_json(path: &Path, v: &impl Serialize) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

fn file_name(name: &str) -> String {
    let clean: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    format!("{clean}.json")
}

/// Run every task in order, writing `<name>.json` per task and
/// `summary.json` into `dir` when given. Stops at the first task that
/// cannot be carried out; reports written so far are kept.
pub fn run_job(job: &Job, dir: Option<&Path>) -> Result<JobOutcome> {
    let mut graph = Graph::from_job(job)?;
    let seed = job.effective_seed();
    if let Some(d) = dir {
        fs::create_dir_all(d)?;
    }
    let mut reports = Vec::new();
    let mut failed: Option<String> = None;
    for (k, task) in job.tasks.iter().enumerate() {
        let name = task.name(k);
        let rep = match run_task(&mut graph, task, &name, seed) {
            Ok(r) => r,
            Err(e) => {
                let err = Error::Task {
                    task: name.clone(),
                    reason: e.to_string(),
                };
                failed = Some(err.to_string());
                TaskReport {
                    schema_version: SCHEMA_VERSION,
                    kind: task.kind().into(),
                    name: name.clone(),
                    pass: false,
                    error: Some(e.to_string()),
                    data: Value::Null,
                }
            }
        };
        if let Some(d) = dir {
            write_json(&d.join(file_name(&name)), &rep)?;
        }
        reports.push(rep);
        if failed.is_some() {
            break;
        }
    }
    let pass = failed.is_none() && reports.iter().all(|r| r.pass);
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "summary",
        "tower": job.tower,
        "seed": seed,
        "pass": pass,
        "error": failed,
        "tasks": reports.iter().map(|r| json!({
            "name": r.name,
            "kind": r.kind,
            "pass": r.pass,
            "file": file_name(&r.name),
        })).collect::<Vec<_>>(),
    });
    if let Some(d) = dir {
        write_json(&d.join("summary.json"), &summary)?;
    }
    Ok(JobOutcome {
        summary,
        reports,
        pass,
        dir: dir.map(|d| d.to_path_buf()),
    })
}

/// Parse and run a job file. Reports go to the job's `output.dir`, resolved
/// against the job's directory, or to `<stem>.reports` beside it.
pub fn run_job_file(path: &Path) -> Result<JobOutcome> {
    let text = fs::read_to_string(path)?;
    let job = Job::from_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })?;
    let parent = path.parent().unwrap_or(Path::new("."));
    let dir = match &job.output.dir {
        Some(d) if d.is_absolute() => d.clone(),
        Some(d) => parent.join(d),
        None => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("job");
            parent.join(format!("{stem}.reports"))
        }
    };
    run_job(&job, Some(&dir))
}
