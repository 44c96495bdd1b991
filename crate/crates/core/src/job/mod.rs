//! Declarative jobs: a tower, a graph of named algebras, and a list of tasks
//! whose reports are written as JSON.

mod explain;
mod run;
pub mod selftest;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::algebra::{matrix_algebra, matrix_element, Algebra, Element};
use crate::error::{Error, Result};
use crate::fields::{FieldTower, Scalar, TowerSpec};
use crate::symbols::{kummer_extension, symbol_algebra, symbol_generators};

pub use explain::{explain, explain_value};
pub use run::{run_job, run_job_file, run_task, JobOutcome, TaskReport};

/// Version stamped into every report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    #[serde(default)]
    pub schema_version: Option<u32>,
    pub tower: TowerSpec,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraNode>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Directory for report files; defaults to `<job stem>.reports` next to
    /// the job file.
    #[serde(default)]
    pub dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum AlgebraNode {
    Tensor {
        tensor: Vec<String>,
    },
    Symbol {
        symbol: SymbolNode,
    },
    Kummer {
        kummer: KummerNode,
    },
    Matrix {
        matrix: usize,
    },
    Dense {
        dim: usize,
        #[serde(default)]
        basis: Vec<String>,
        sc: Vec<(usize, usize, usize, String)>,
        #[serde(default)]
        degree: Option<usize>,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolNode {
    pub a: String,
    pub b: String,
    pub n: u64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct KummerNode {
    pub radicands: Vec<String>,
    pub degrees: Vec<u64>,
}

/// An element of a named algebra.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ElementSpec {
    /// Sparse coordinates `{"index": "scalar"}`.
    Coords { coords: BTreeMap<String, String> },
    /// Rows of a matrix, for `matrix` nodes.
    Rows { rows: Vec<Vec<String>> },
    /// One element per factor of a `tensor` node.
    Pure { pure: Vec<ElementSpec> },
    /// A product of generators such as `i^2*j` (symbol nodes) or `x1*x2`
    /// (Kummer nodes), optionally with a leading scalar in brackets.
    Word { word: String },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub element: ElementSpec,
    pub order: u64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GeneratorsSpec {
    /// `"standard"`: the `i, j` classes of each symbol factor.
    Standard(String),
    List(Vec<GeneratorSpec>),
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CrossedStep {
    Build,
    Lift,
    Nu,
    Residue,
    Decompose,
    Brauer,
    Laws,
}

fn default_steps() -> Vec<CrossedStep> {
    vec![CrossedStep::Build]
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskSpec {
    VerifyArmature {
        #[serde(default)]
        name: Option<String>,
        algebra: String,
        generators: GeneratorsSpec,
    },
    Decompose {
        #[serde(default)]
        name: Option<String>,
        algebra: String,
        generators: GeneratorsSpec,
    },
    Crossed {
        #[serde(default)]
        name: Option<String>,
        algebra: String,
        /// Commuting elements `x_i` with `x_i^{n_i}` central.
        subfields: Vec<GeneratorSpec>,
        vars: Vec<String>,
        #[serde(default)]
        armature: Option<GeneratorsSpec>,
        #[serde(default = "default_steps")]
        steps: Vec<CrossedStep>,
        #[serde(default)]
        law_pairs: Option<usize>,
    },
    Sqcentral {
        #[serde(default)]
        name: Option<String>,
        algebra: String,
        element: ElementSpec,
        #[serde(default)]
        budget: Option<usize>,
        #[serde(default)]
        index: Option<usize>,
    },
}

impl TaskSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            TaskSpec::VerifyArmature { .. } => "verify_armature",
            TaskSpec::Decompose { .. } => "decompose",
            TaskSpec::Crossed { .. } => "crossed",
            TaskSpec::Sqcentral { .. } => "sqcentral",
        }
    }

    pub fn algebra(&self) -> &str {
        match self {
            TaskSpec::VerifyArmature { algebra, .. }
            | TaskSpec::Decompose { algebra, .. }
            | TaskSpec::Crossed { algebra, .. }
            | TaskSpec::Sqcentral { algebra, .. } => algebra,
        }
    }

    pub fn name(&self, pos: usize) -> String {
        let given = match self {
            TaskSpec::VerifyArmature { name, .. }
            | TaskSpec::Decompose { name, .. }
            | TaskSpec::Crossed { name, .. }
            | TaskSpec::Sqcentral { name, .. } => name.clone(),
        };
        given.unwrap_or_else(|| format!("{:02}-{}", pos, self.kind()))
    }
}

impl Job {
    pub fn from_json(s: &str) -> Result<Job> {
        let job: Job = serde_json::from_str(s)?;
        if let Some(v) = job.schema_version {
            if v != SCHEMA_VERSION {
                return Err(Error::Parse(format!("unsupported schema_version {v}")));
            }
        }
        job.check_references()?;
        Ok(job)
    }

    /// Every reference resolves and the algebra graph has no cycle.
    pub fn check_references(&self) -> Result<()> {
        for (name, node) in &self.algebras {
            if let AlgebraNode::Tensor { tensor } = node {
                if tensor.len() < 2 {
                    return Err(Error::Parse(format!("algebra `{name}`: a tensor needs at least two factors")));
                }
                for r in tensor {
                    if !self.algebras.contains_key(r) {
                        return Err(Error::Parse(format!("algebra `{name}` refers to unknown node `{r}`")));
                    }
                }
            }
        }
        let mut state = HashMap::new();
        for name in self.algebras.keys() {
            self.visit(name, &mut state)?;
        }
        for (k, t) in self.tasks.iter().enumerate() {
            if !self.algebras.contains_key(t.algebra()) {
                return Err(Error::Parse(format!(
                    "task {k} ({}) refers to unknown algebra `{}`",
                    t.kind(),
                    t.algebra()
                )));
            }
        }
        Ok(())
    }

    fn visit<'a>(&'a self, name: &'a str, state: &mut HashMap<&'a str, bool>) -> Result<()> {
        match state.get(name) {
            Some(true) => return Ok(()),
            Some(false) => return Err(Error::Parse(format!("algebra graph has a cycle through `{name}`"))),
            None => {}
        }
        state.insert(name, false);
        if let Some(AlgebraNode::Tensor { tensor }) = self.algebras.get(name) {
            for r in tensor {
                self.visit(r, state)?;
            }
        }
        state.insert(name, true);
        Ok(())
    }

    /// The seed used by randomized checks: `CSA_SEED`, then the job, then
    /// the crate default.
    pub fn effective_seed(&self) -> u64 {
        crate::random::seed_from_env(self.seed.unwrap_or(crate::random::DEFAULT_SEED))
    }
}

/// Built algebras of a job, keyed by node name.
pub struct Graph {
    pub tower: FieldTower,
    nodes: BTreeMap<String, AlgebraNode>,
    built: HashMap<String, Algebra>,
}

impl Graph {
    pub fn new(tower: &FieldTower, nodes: &BTreeMap<String, AlgebraNode>) -> Graph {
        Graph {
            tower: tower.clone(),
            nodes: nodes.clone(),
            built: HashMap::new(),
        }
    }

    pub fn from_job(job: &Job) -> Result<Graph> {
        Ok(Graph::new(&FieldTower::new(job.tower.clone())?, &job.algebras))
    }

    pub fn node(&self, name: &str) -> Result<&AlgebraNode> {
        self.nodes
            .get(name)
            .ok_or_else(|| Error::Parse(format!("unknown algebra `{name}`")))
    }

    pub fn algebra(&mut self, name: &str) -> Result<Algebra> {
        if let Some(a) = self.built.get(name) {
            return Ok(a.clone());
        }
        let t = self.tower.clone();
        let node = self.node(name)?.clone();
        let ctx = |e: Error| Error::Parse(format!("algebra `{name}`: {e}"));
        let a = match &node {
            AlgebraNode::Tensor { tensor } => {
                let parts = tensor.iter().map(|r| self.algebra(r)).collect::<Result<Vec<_>>>()?;
                Algebra::tensor_all(&parts).map_err(ctx)?
            }
            AlgebraNode::Symbol { symbol } => {
                let a = t.parse(&symbol.a).map_err(ctx)?;
                let b = t.parse(&symbol.b).map_err(ctx)?;
                symbol_algebra(&t, &a, &b, symbol.n).map_err(ctx)?
            }
            AlgebraNode::Kummer { kummer } => {
                let rad = kummer
                    .radicands
                    .iter()
                    .map(|s| t.parse(s))
                    .collect::<Result<Vec<_>>>()
                    .map_err(ctx)?;
                kummer_extension(&t, &rad, &kummer.degrees).map_err(ctx)?.algebra().clone()
            }
            AlgebraNode::Matrix { matrix } => {
                if *matrix == 0 {
                    return Err(ctx(Error::InvalidAlgebra("matrix size 0".into())));
                }
                matrix_algebra(&t, *matrix)
            }
            AlgebraNode::Dense { dim, basis, sc, degree } => {
                let labels = if basis.is_empty() {
                    (0..*dim).map(|i| format!("e{i}")).collect()
                } else if basis.len() == *dim {
                    basis.clone()
                } else {
                    return Err(ctx(Error::DimensionMismatch(basis.len(), *dim)));
                };
                let sc = sc
                    .iter()
                    .map(|(i, j, k, c)| Ok((*i, *j, *k, t.parse(c)?)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(ctx)?;
                let a = Algebra::from_structure_constants(&t, labels, &sc).map_err(ctx)?;
                match degree {
                    Some(d) => a.with_degree(*d),
                    None => a,
                }
            }
        };
        self.built.insert(name.to_string(), a.clone());
        Ok(a)
    }

    pub fn element(&mut self, algebra: &str, spec: &ElementSpec) -> Result<Element> {
        let a = self.algebra(algebra)?;
        let node = self.node(algebra)?.clone();
        self.element_of(&a, &node, spec)
    }

    fn element_of(&mut self, a: &Algebra, node: &AlgebraNode, spec: &ElementSpec) -> Result<Element> {
        let t = a.tower().clone();
        match spec {
            ElementSpec::Coords { coords } => {
                let mut c = vec![t.zero(); a.dim()];
                for (k, v) in coords {
                    let i: usize = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("coordinate index `{k}` is not a number")))?;
                    if i >= a.dim() {
                        return Err(Error::Parse(format!("coordinate index {i} out of range 0..{}", a.dim())));
                    }
                    c[i] = t.parse(v)?;
                }
                a.element(c)
            }
            ElementSpec::Rows { rows } => {
                let rows: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|r| r.iter().map(|s| t.parse(s)).collect())
                    .collect::<Result<_>>()?;
                matrix_element(a, &rows)
            }
            ElementSpec::Pure { pure } => {
                let AlgebraNode::Tensor { tensor } = node else {
                    return Err(Error::Parse("`pure` needs a tensor node".into()));
                };
                if pure.len() != tensor.len() {
                    return Err(Error::Parse(format!(
                        "`pure` has {} parts for {} factors",
                        pure.len(),
                        tensor.len()
                    )));
                }
                let parts = tensor
                    .iter()
                    .zip(pure)
                    .map(|(r, s)| self.element(r, s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(a.pure_tensor(&parts))
            }
            ElementSpec::Word { word } => self.word(a, node, word),
        }
    }

    fn word(&mut self, a: &Algebra, node: &AlgebraNode, word: &str) -> Result<Element> {
        let t = a.tower().clone();
        let gens: Vec<(String, Element)> = match node {
            AlgebraNode::Symbol { .. } => {
                let (i, j) = symbol_generators(a)?;
                vec![("i".into(), i), ("j".into(), j)]
            }
            AlgebraNode::Kummer { kummer } => {
                let rad = kummer.radicands.iter().map(|s| t.parse(s)).collect::<Result<Vec<_>>>()?;
                let k = kummer_extension(&t, &rad, &kummer.degrees)?;
                (0..k.rank())
                    .map(|i| Ok((format!("x{}", i + 1), k.generator(i).transport(a)?)))
                    .collect::<Result<_>>()?
            }
            _ => return Err(Error::Parse("`word` needs a symbol or kummer node".into())),
        };
        let mut acc = a.one();
        let mut rest = word.trim();
        if let Some(r) = rest.strip_prefix('[') {
            let end = r.find(']').ok_or_else(|| Error::Parse(format!("unclosed `[` in `{word}`")))?;
            acc = acc.scale(&t.parse(&r[..end])?);
            rest = r[end + 1..].trim_start_matches([' ', '*']);
        }
        if rest.is_empty() || rest == "1" {
            return Ok(acc);
        }
        for factor in rest.split('*') {
            let factor = factor.trim();
            let (g, e) = match factor.split_once('^') {
                Some((g, e)) => (
                    g.trim(),
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let x = gens
                .iter()
                .find(|(n, _)| n == g)
                .map(|(_, x)| x)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{g}` in `{word}`")))?;
            acc = &acc * &x.pow(e)?;
        }
        Ok(acc)
    }

    pub fn generators(&mut self, algebra: &str, spec: &[GeneratorSpec]) -> Result<Vec<(Element, u64)>> {
        spec.iter()
            .map(|g| Ok((self.element(algebra, &g.element)?, g.order)))
            .collect()
    }
}

/// A one-task job from an instance file. The instance carries `tower`,
/// `algebras` and optionally `seed`; every other field, together with
/// `overrides`, becomes a field of the task of kind `task`.
pub fn single_task_job(instance: serde_json::Value, task: &str, overrides: serde_json::Map<String, serde_json::Value>) -> Result<Job> {
    let serde_json::Value::Object(mut obj) = instance else {
        return Err(Error::Parse("instance must be a JSON object".into()));
    };
    let mut job = serde_json::Map::new();
    for key in ["schema_version", "tower", "algebras", "seed"] {
        if let Some(v) = obj.remove(key) {
            job.insert(key.into(), v);
        }
    }
    obj.extend(overrides);
    if task == "crossed" && !obj.contains_key("armature") {
        if let Some(g) = obj.remove("generators") {
            obj.insert("armature".into(), g);
        }
    }
    let keep: &[&str] = match task {
        "verify_armature" | "decompose" => &["name", "algebra", "generators"],
        "crossed" => &["name", "algebra", "subfields", "vars", "armature", "steps", "law_pairs"],
        "sqcentral" => &["name", "algebra", "element", "budget", "index"],
        other => return Err(Error::Parse(format!("unknown task kind `{other}`"))),
    };
    obj.retain(|k, _| keep.contains(&k.as_str()));
    obj.insert("task".into(), serde_json::Value::String(task.into()));
    job.insert("tasks".into(), serde_json::Value::Array(vec![serde_json::Value::Object(obj)]));
    let text = serde_json::Value::Object(job).to_string();
    Job::from_json(&text)
}
