//! Command-line front end: workspace loading, dispatch and reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::bispace::{dual, find_isomorphism, pi0_group, reduce_to_kernel, standard_bispace, tensor, trivial_bispace, Bispace};
use crate::cech::abelian::AbelianCochainComplex;
use crate::cech::cocycle::{
    bibundle_structures, canonical, enumerate_pi0, equivalent, is_trivial, type_map, BibundleCocycle,
};
use crate::cech::nerve::Nerve;
use crate::cech::obstruction::{exact_sequence_report, image_h1_generators, lifting_obstruction};
use crate::cech::{CechError, DEFAULT_MAX_ENUM};
use crate::crossed::{adjoint_module, check_consequences, CrossedModule};
use crate::doc::{BispaceDoc, CocycleDoc, CrossedModuleDoc, GroupDoc, NerveDoc, Ref, WorkspaceDoc};
use crate::fixtures;
use crate::group::{center, enumerate_automorphisms, FiniteGroup, DEFAULT_MAX_ORDER};

#[derive(Debug, Parser)]
#[command(name = "xmod", version, about = "Finite crossed modules, bispaces and Čech bibundles")]
pub struct Cli {
    /// Workspace document to load on top of the built-in fixtures.
    #[arg(long = "workspace", global = true, value_name = "FILE")]
    pub workspace: Vec<PathBuf>,
    /// Print a plain key/value summary instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
    /// Largest group order for automorphism enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Largest number of enumeration states.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ENUM)]
    pub max_enum: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate and summarize a named object.
    Check { name: String },
    /// Automorphism group of a named group.
    Aut { group: String },
    /// Describe a bispace, optionally comparing it with another.
    Bispace {
        #[arg(long)]
        xm: Option<String>,
        /// Use `T(xi)` over `--xm`.
        #[arg(long)]
        xi: Option<usize>,
        #[arg(long)]
        name: Option<String>,
        /// Bispace name to test for isomorphism.
        #[arg(long)]
        compare: Option<String>,
        /// `T(xi)` over `--xm` to test for isomorphism.
        #[arg(long)]
        compare_xi: Option<usize>,
    },
    /// Describe a cocycle, compare two, or enumerate all classes.
    Cocycle {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        against: Option<String>,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        xm: Option<String>,
        #[arg(long)]
        nerve: Option<String>,
    },
    /// Abelian Čech cohomology.
    Cohomology {
        #[arg(long)]
        nerve: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        degree: usize,
    },
    /// Obstruction to lifting a `t(G)` cocycle to `G`.
    Obstruction {
        #[arg(long)]
        xm: String,
        #[arg(long)]
        nerve: String,
        /// `trivial`, `w1` (first generator of H^1 with t(G) coefficients)
        /// or a JSON array of H elements per edge.
        #[arg(long, default_value = "w1")]
        tau: String,
    },
    /// Exact sequence of bibundle classes.
    Exactseq {
        #[arg(long)]
        xm: String,
        #[arg(long)]
        nerve: String,
    },
    /// All h-tables completing a G cocycle to a bibundle cocycle.
    Structures {
        #[arg(long)]
        xm: String,
        #[arg(long)]
        nerve: String,
        /// Cocycle name or a JSON array of G elements per edge.
        #[arg(long)]
        g: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Aut { .. } => "aut",
            Command::Bispace { .. } => "bispace",
            Command::Cocycle { .. } => "cocycle",
            Command::Cohomology { .. } => "cohomology",
            Command::Obstruction { .. } => "obstruction",
            Command::Exactseq { .. } => "exactseq",
            Command::Structures { .. } => "structures",
        }
    }
}

/// One load failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: Option<String>,
    pub object: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}: ")?;
        }
        if let Some(obj) = &self.object {
            write!(f, "{obj}: ")?;
        }
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workspace {
    pub groups: BTreeMap<String, FiniteGroup>,
    pub crossed_modules: BTreeMap<String, Arc<CrossedModule>>,
    pub nerves: BTreeMap<String, Arc<Nerve>>,
    pub bispaces: BTreeMap<String, Bispace>,
    pub cocycles: BTreeMap<String, BibundleCocycle>,
}

impl Workspace {
    /// Fixture groups, crossed modules, nerves and a few cocycles.
    pub fn builtin() -> Self {
        let mut ws = Workspace {
            groups: fixtures::groups(),
            crossed_modules: fixtures::crossed_modules(),
            nerves: fixtures::nerves(),
            ..Default::default()
        };
        let j3 = ws.crossed_modules["J3"].clone();
        let circ = ws.nerves["Circ3"].clone();
        let v4 = ws.crossed_modules["V4"].clone();
        ws.cocycles.insert("J3Circ3Hol1".into(), BibundleCocycle::new(&circ, &j3, vec![1, 0, 0], vec![0; 3]).unwrap());
        ws.cocycles.insert("J3Circ3Type1".into(), BibundleCocycle::new(&circ, &j3, vec![0; 3], vec![1; 3]).unwrap());
        ws.cocycles.insert("V4Circ3".into(), BibundleCocycle::new(&circ, &v4, vec![1, 2, 1], vec![0, 1, 0]).unwrap());
        ws.bispaces.insert("J3T1".into(), standard_bispace(&j3, 1));
        ws.bispaces.insert("V4T".into(), trivial_bispace(&v4));
        ws
    }

    /// Every object as an inline document.
    pub fn to_doc(&self) -> WorkspaceDoc {
        let xm_doc = |x: &CrossedModule| Ref::Inline(Box::new(CrossedModuleDoc::from_module(x)));
        WorkspaceDoc {
            groups: self.groups.iter().map(|(n, g)| (n.clone(), GroupDoc::from_group(g))).collect(),
            crossed_modules: self
                .crossed_modules
                .iter()
                .map(|(n, x)| (n.clone(), CrossedModuleDoc::from_module(x)))
                .collect(),
            nerves: self.nerves.iter().map(|(n, x)| (n.clone(), NerveDoc::from_nerve(x))).collect(),
            bispaces: self.bispaces.iter().map(|(n, b)| (n.clone(), BispaceDoc::from_bispace(b, xm_doc(b.xm())))).collect(),
            cocycles: self
                .cocycles
                .iter()
                .map(|(n, c)| {
                    let nerve = Ref::Inline(Box::new(NerveDoc::from_nerve(c.nerve())));
                    (n.clone(), CocycleDoc::from_cocycle(c, nerve, xm_doc(c.xm())))
                })
                .collect(),
        }
    }

    fn has_name(&self, name: &str) -> bool {
        self.groups.contains_key(name)
            || self.crossed_modules.contains_key(name)
            || self.nerves.contains_key(name)
            || self.bispaces.contains_key(name)
            || self.cocycles.contains_key(name)
    }
}

struct Loader<'a> {
    ws: &'a Workspace,
    max_order: usize,
}

impl Loader<'_> {
    fn group(&self, r: &Ref<GroupDoc>) -> Result<FiniteGroup, String> {
        match r {
            Ref::Name(n) => self.ws.groups.get(n).cloned().ok_or_else(|| format!("dangling reference to group {n}")),
            Ref::Inline(d) => group_from_doc(d),
        }
    }

    fn crossed(&self, r: &Ref<CrossedModuleDoc>) -> Result<Arc<CrossedModule>, String> {
        match r {
            Ref::Name(n) => {
                self.ws.crossed_modules.get(n).cloned().ok_or_else(|| format!("dangling reference to crossed module {n}"))
            }
            Ref::Inline(d) => self.crossed_doc(d).map(Arc::new),
        }
    }

    fn crossed_doc(&self, d: &CrossedModuleDoc) -> Result<CrossedModule, String> {
        match d {
            CrossedModuleDoc::Adjoint { adjoint } => {
                adjoint_module(&self.group(adjoint)?, self.max_order).map_err(|e| e.to_string())
            }
            CrossedModuleDoc::Explicit { g, h, t, alpha } => {
                CrossedModule::from_tables(&self.group(g)?, &self.group(h)?, t.clone(), alpha).map_err(|e| e.to_string())
            }
        }
    }

    fn nerve(&self, r: &Ref<NerveDoc>) -> Result<(Arc<Nerve>, Vec<String>), String> {
        match r {
            Ref::Name(n) => {
                self.ws.nerves.get(n).map(|x| (x.clone(), Vec::new())).ok_or_else(|| format!("dangling reference to nerve {n}"))
            }
            Ref::Inline(d) => Nerve::validate(&d.to_data(), false).map(|(n, w)| (Arc::new(n), w)).map_err(|e| e.to_string()),
        }
    }

    fn bispace(&self, d: &BispaceDoc) -> Result<Bispace, String> {
        match d {
            BispaceDoc::Standard { xm, standard } => {
                let xm = self.crossed(xm)?;
                if *standard >= xm.h().order() {
                    return Err(format!("standard value {standard} out of range"));
                }
                Ok(standard_bispace(&xm, *standard))
            }
            BispaceDoc::Explicit { xm, carrier, raction, psi } => {
                let xm = self.crossed(xm)?;
                if raction.len() != *carrier {
                    return Err(format!("carrier is {carrier} but raction has {} rows", raction.len()));
                }
                Bispace::new(&xm, raction.clone(), psi.clone()).map_err(|e| e.to_string())
            }
        }
    }

    fn cocycle(&self, d: &CocycleDoc) -> Result<BibundleCocycle, String> {
        let (nerve, _) = self.nerve(&d.nerve)?;
        let xm = self.crossed(&d.xm)?;
        let g = xm.g();
        let mut values = vec![None; nerve.edges().len()];
        for (key, &v) in &d.g {
            let [i, j]: [usize; 2] = serde_json::from_str(key).map_err(|_| format!("bad edge key {key}"))?;
            let e = nerve.edge(i, j).ok_or_else(|| format!("edge {key} is not in the nerve"))?;
            if v >= g.order() {
                return Err(format!("value {v} on edge {key} out of range"));
            }
            let v = if i < j { v } else { g.inv(v) };
            if values[e].replace(v).is_some() {
                return Err(format!("edge {key} given twice"));
            }
        }
        let values: Vec<usize> = values
            .into_iter()
            .enumerate()
            .map(|(e, v)| {
                let [i, j] = nerve.edges()[e];
                v.ok_or_else(|| format!("missing value for edge [{i},{j}]"))
            })
            .collect::<Result<_, _>>()?;
        BibundleCocycle::new(&nerve, &xm, values, d.h.clone()).map_err(|e| e.to_string())
    }
}

pub fn group_from_doc(d: &GroupDoc) -> Result<FiniteGroup, String> {
    if d.mul.len() != d.order {
        return Err(format!("order is {} but the table has {} rows", d.order, d.mul.len()));
    }
    FiniteGroup::from_table(&d.mul, d.labels.clone()).map_err(|e| e.to_string())
}

/// Adds every object of `doc` to `ws`, collecting all failures.
pub fn extend_workspace(ws: &mut Workspace, doc: &WorkspaceDoc, file: Option<&str>, max_order: usize) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let diag = |object: &str, message: String| Diagnostic {
        file: file.map(str::to_string),
        object: Some(object.to_string()),
        message,
    };
    macro_rules! add {
        ($field:ident, $docs:expr, $build:expr) => {
            for (name, d) in $docs {
                if ws.has_name(name) {
                    diags.push(diag(name, "duplicate name".into()));
                    continue;
                }
                let built = $build(&Loader { ws, max_order }, d);
                match built {
                    Ok(x) => {
                        ws.$field.insert(name.clone(), x);
                    }
                    Err(m) => diags.push(diag(name, m)),
                }
            }
        };
    }
    add!(groups, &doc.groups, |_: &Loader, d: &GroupDoc| group_from_doc(d));
    add!(crossed_modules, &doc.crossed_modules, |l: &Loader, d: &CrossedModuleDoc| l.crossed_doc(d).map(Arc::new));
    add!(nerves, &doc.nerves, |_: &Loader, d: &NerveDoc| Nerve::validate(&d.to_data(), false)
        .map(|(n, _)| Arc::new(n))
        .map_err(|e| e.to_string()));
    add!(bispaces, &doc.bispaces, |l: &Loader, d: &BispaceDoc| l.bispace(d));
    add!(cocycles, &doc.cocycles, |l: &Loader, d: &CocycleDoc| l.cocycle(d));
    diags
}

/// Built-in fixtures plus every file, in order.
pub fn load_workspace(paths: &[PathBuf], max_order: usize) -> Result<Workspace, Vec<Diagnostic>> {
    let mut ws = Workspace::builtin();
    let mut diags = Vec::new();
    for path in paths {
        let file = path.display().to_string();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                diags.push(Diagnostic { file: Some(file), object: None, message: e.to_string() });
                continue;
            }
        };
        match serde_json::from_str::<WorkspaceDoc>(&text) {
            Ok(doc) => diags.extend(extend_workspace(&mut ws, &doc, Some(&file), max_order)),
            Err(e) => diags.push(Diagnostic {
                file: Some(file),
                object: None,
                message: format!("parse error at line {}, column {}: {e}", e.line(), e.column()),
            }),
        }
    }
    if diags.is_empty() {
        Ok(ws)
    } else {
        Err(diags)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub witnesses: Vec<Value>,
    pub timing_ms: u64,
    pub exit_code: i32,
}

impl Report {
    fn ok(payload: Value) -> Self {
        Report { command: String::new(), status: Status::Ok, payload, witnesses: Vec::new(), timing_ms: 0, exit_code: 0 }
    }

    fn negative(payload: Value, witnesses: Vec<Value>) -> Self {
        Report { command: String::new(), status: Status::Fail, payload, witnesses, timing_ms: 0, exit_code: 1 }
    }

    fn error(message: impl Into<String>) -> Self {
        let message = message.into();
        Report {
            command: String::new(),
            status: Status::Fail,
            payload: json!({ "error": message }),
            witnesses: Vec::new(),
            timing_ms: 0,
            exit_code: 2,
        }
    }

    /// Keys come out sorted, so the encoding is stable.
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "command": self.command,
            "status": match self.status { Status::Ok => "ok", Status::Fail => "fail" },
            "payload": self.payload,
            "witnesses": self.witnesses,
            "timing_ms": self.timing_ms,
        })
    }

    pub fn render(&self, human: bool) -> String {
        if !human {
            return serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        }
        let mut lines = Vec::new();
        lines.push(format!("command: {}", self.command));
        lines.push(format!("status: {}", if self.status == Status::Ok { "ok" } else { "fail" }));
        flatten("", &self.payload, &mut lines);
        for w in &self.witnesses {
            lines.push(format!("witness: {}", compact(w)));
        }
        lines.push(format!("time: {} ms", self.timing_ms));
        lines.join("\n")
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => out.push(format!("{prefix}: {}", compact(other))),
    }
}

/// Budgets shared by all commands.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_order: usize,
    pub max_enum: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: DEFAULT_MAX_ORDER, max_enum: DEFAULT_MAX_ENUM }
    }
}

type Outcome = Result<Report, String>;

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T, String> {
    map.get(name).ok_or_else(|| format!("unknown {kind} {name}"))
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, String> {
    v.as_deref().ok_or_else(|| format!("--{flag} is required"))
}

fn cech_err(e: CechError) -> String {
    e.to_string()
}

pub fn execute(ws: &Workspace, command: &Command, limits: Limits) -> Report {
    let start = Instant::now();
    let outcome = match command {
        Command::Check { name } => check(ws, name),
        Command::Aut { group } => aut(ws, group, limits),
        Command::Bispace { xm, xi, name, compare, compare_xi } => {
            bispace_cmd(ws, xm.as_deref(), *xi, name.as_deref(), compare.as_deref(), *compare_xi)
        }
        Command::Cocycle { name, against, enumerate, xm, nerve } => {
            cocycle_cmd(ws, name.as_deref(), against.as_deref(), *enumerate, xm, nerve, limits)
        }
        Command::Cohomology { nerve, coeff, degree } => cohomology(ws, nerve, coeff, *degree),
        Command::Obstruction { xm, nerve, tau } => obstruction(ws, xm, nerve, tau),
        Command::Exactseq { xm, nerve } => exactseq(ws, xm, nerve, limits),
        Command::Structures { xm, nerve, g } => structures(ws, xm, nerve, g, limits),
    };
    let mut report = outcome.unwrap_or_else(Report::error);
    report.command = command.name().to_string();
    report.timing_ms = start.elapsed().as_millis() as u64;
    report
}

fn check(ws: &Workspace, name: &str) -> Outcome {
    if let Some(xm) = ws.crossed_modules.get(name) {
        let consequences = check_consequences(xm);
        let payload = json!({
            "kind": "crossed_module",
            "axioms": true,
            "consequences": consequences,
            "G_order": xm.g().order(),
            "H_order": xm.h().order(),
            "g1_order": xm.g1().order(),
            "tg_order": xm.tg().order(),
            "pi0_order": xm.pi0().group.order(),
        });
        return Ok(if consequences {
            Report::ok(payload)
        } else {
            Report::negative(payload, vec![json!("derived consequences fail")])
        });
    }
    if let Some(g) = ws.groups.get(name) {
        return Ok(Report::ok(json!({
            "kind": "group",
            "order": g.order(),
            "abelian": g.is_abelian(),
            "center_order": center(g).order(),
        })));
    }
    if let Some(n) = ws.nerves.get(name) {
        return Ok(Report::ok(json!({
            "kind": "nerve",
            "vertices": n.vertex_count(),
            "edges": n.edges().len(),
            "triangles": n.triangles().len(),
            "tetrahedra": n.tetrahedra().len(),
            "components": n.component_count(),
            "euler_characteristic": n.euler_characteristic(),
        })));
    }
    if let Some(b) = ws.bispaces.get(name) {
        return Ok(Report::ok(json!({ "kind": "bispace", "carrier": b.len(), "type": b.type_of().coset })));
    }
    if let Some(c) = ws.cocycles.get(name) {
        return Ok(Report::ok(json!({
            "kind": "cocycle",
            "type": type_map(c).values,
            "trivial": is_trivial(c).is_some(),
        })));
    }
    Err(format!("unknown name {name}"))
}

fn aut(ws: &Workspace, group: &str, limits: Limits) -> Outcome {
    let g = lookup(&ws.groups, "group", group)?;
    let aut = enumerate_automorphisms(g, limits.max_order).map_err(|e| e.to_string())?;
    Ok(Report::ok(json!({
        "order": g.order(),
        "aut_order": aut.group.order(),
        "inner_order": aut.inner.order(),
        "outer_order": aut.outer_reps.len(),
        "center_order": center(g).order(),
        "automorphisms": aut.autos,
    })))
}

fn pick_bispace(ws: &Workspace, xm: Option<&str>, xi: Option<usize>, name: Option<&str>) -> Result<Bispace, String> {
    match (name, xi) {
        (Some(n), None) => lookup(&ws.bispaces, "bispace", n).cloned(),
        (None, Some(xi)) => {
            let xm = lookup(&ws.crossed_modules, "crossed module", xm.ok_or("--xm is required with an xi value")?)?;
            if xi >= xm.h().order() {
                return Err(format!("xi = {xi} out of range"));
            }
            Ok(standard_bispace(xm, xi))
        }
        _ => Err("give exactly one of a bispace name or an xi value".into()),
    }
}

fn bispace_cmd(
    ws: &Workspace,
    xm: Option<&str>,
    xi: Option<usize>,
    name: Option<&str>,
    compare: Option<&str>,
    compare_xi: Option<usize>,
) -> Outcome {
    let x = pick_bispace(ws, xm, xi, name)?;
    let d = dual(&x);
    let xd = tensor(&x, &d).map_err(|e| e.to_string())?;
    let t = trivial_bispace(x.xm());
    let classes = pi0_group(x.xm()).map_err(|e| e.to_string())?;
    let mut payload = json!({
        "carrier": x.len(),
        "psi": x.psi_table(),
        "type": x.type_of().coset,
        "dual_type": d.type_of().coset,
        "kernel_reduction": reduce_to_kernel(&x).map(|r| r.points),
        "tensor_dual_trivial": find_isomorphism(&xd, &t).map_err(|e| e.to_string())?.is_some(),
        "pi0_classes": classes.group.order(),
    });
    if compare.is_none() && compare_xi.is_none() {
        return Ok(Report::ok(payload));
    }
    let xm_name = xm;
    let y = pick_bispace(ws, xm_name, compare_xi, compare)?;
    let iso = find_isomorphism(&x, &y).map_err(|e| e.to_string())?;
    payload["other_type"] = json!(y.type_of().coset);
    match iso {
        Some(m) => {
            payload["isomorphism"] = json!(m.map);
            Ok(Report::ok(payload))
        }
        None => {
            payload["isomorphism"] = Value::Null;
            let w = json!({ "types_differ": [x.type_of().coset, y.type_of().coset] });
            Ok(Report::negative(payload, vec![w]))
        }
    }
}

fn cocycle_json(c: &BibundleCocycle) -> Value {
    json!({ "g": c.g(), "h": c.h(), "type": type_map(c).values })
}

fn cocycle_cmd(
    ws: &Workspace,
    name: Option<&str>,
    against: Option<&str>,
    enumerate: bool,
    xm: &Option<String>,
    nerve: &Option<String>,
    limits: Limits,
) -> Outcome {
    if enumerate {
        let xm = lookup(&ws.crossed_modules, "crossed module", require(xm, "xm")?)?;
        let nerve = lookup(&ws.nerves, "nerve", require(nerve, "nerve")?)?;
        let cat = enumerate_pi0(nerve, xm, limits.max_enum).map_err(cech_err)?;
        return Ok(Report::ok(json!({
            "classes": cat.classes.len(),
            "representatives": cat.classes.iter().map(cocycle_json).collect::<Vec<_>>(),
            "table": cat.group.table(),
            "dual_of": cat.dual_of,
            "trivial_classes": cat.classes.iter().filter(|c| is_trivial(c).is_some()).count(),
        })));
    }
    let c = lookup(&ws.cocycles, "cocycle", name.ok_or("--name or --enumerate is required")?)?;
    let central = is_trivial(c);
    let mut payload = json!({
        "cocycle": cocycle_json(c),
        "canonical": cocycle_json(&canonical(c).0),
        "trivial": central.is_some(),
        "central_section": central.map(|k| k.k),
    });
    let Some(other) = against else {
        return Ok(Report::ok(payload));
    };
    let d = lookup(&ws.cocycles, "cocycle", other)?;
    match equivalent(c, d).map_err(cech_err)? {
        Some(k) => {
            payload["gauge"] = json!(k.k);
            Ok(Report::ok(payload))
        }
        None => {
            payload["gauge"] = Value::Null;
            let w = json!({ "not_equivalent": [type_map(c).values, type_map(d).values] });
            Ok(Report::negative(payload, vec![w]))
        }
    }
}

fn cohomology(ws: &Workspace, nerve: &str, coeff: &str, degree: usize) -> Outcome {
    let n = lookup(&ws.nerves, "nerve", nerve)?;
    let a = lookup(&ws.groups, "group", coeff)?;
    let complex = AbelianCochainComplex::from_group(n, a).map_err(cech_err)?;
    let h = complex.cohomology(degree).map_err(cech_err)?;
    Ok(Report::ok(json!({
        "degree": h.degree,
        "order": h.order,
        "invariant_factors": h.invariant_factors,
        "generators": h.summands.iter().map(|s| json!({ "order": s.order, "cocycle": s.generator })).collect::<Vec<_>>(),
    })))
}

fn parse_tau(n: &Arc<Nerve>, xm: &CrossedModule, tau: &str) -> Result<Vec<usize>, String> {
    match tau {
        "trivial" => Ok(vec![0; n.edges().len()]),
        "w1" => {
            let gens = image_h1_generators(n, xm).map_err(cech_err)?;
            gens.into_iter().next().ok_or_else(|| "H^1 with t(G) coefficients is zero; no w1".to_string())
        }
        other => serde_json::from_str(other).map_err(|e| format!("bad tau: {e}")),
    }
}

fn obstruction(ws: &Workspace, xm: &str, nerve: &str, tau: &str) -> Outcome {
    let xm = lookup(&ws.crossed_modules, "crossed module", xm)?;
    let n = lookup(&ws.nerves, "nerve", nerve)?;
    let tau = parse_tau(n, xm, tau)?;
    let ob = lifting_obstruction(n, xm, &tau).map_err(cech_err)?;
    let cert = ob.class.certificate.as_ref().map(|c| {
        json!({ "factor": c.factor, "modulus": c.modulus, "functional": c.functional })
    });
    let payload = json!({
        "tau": ob.tau,
        "lift": ob.lift,
        "cochain": ob.cochain,
        "zero": ob.class.is_zero,
        "primitive": ob.class.witness,
        "corrected_lift": ob.corrected_lift,
        "certificate": cert,
    });
    Ok(match cert {
        None => Report::ok(payload),
        Some(c) => Report::negative(payload, vec![json!({ "nonzero_class": c })]),
    })
}

fn exactseq(ws: &Workspace, xm: &str, nerve: &str, limits: Limits) -> Outcome {
    let xm = lookup(&ws.crossed_modules, "crossed module", xm)?;
    let n = lookup(&ws.nerves, "nerve", nerve)?;
    let r = exact_sequence_report(n, xm, limits.max_enum).map_err(cech_err)?;
    let payload = serde_json::to_value(&r).expect("report serializes");
    Ok(if r.exact {
        Report::ok(payload)
    } else {
        Report::negative(payload, r.witnesses.iter().map(|w| json!(w)).collect())
    })
}

fn structures(ws: &Workspace, xm: &str, nerve: &str, g: &str, limits: Limits) -> Outcome {
    let xm = lookup(&ws.crossed_modules, "crossed module", xm)?;
    let n = lookup(&ws.nerves, "nerve", nerve)?;
    let values: Vec<usize> = match ws.cocycles.get(g) {
        Some(c) => c.g().to_vec(),
        None => serde_json::from_str(g).map_err(|_| format!("--g must be a cocycle name or a JSON array, got {g}"))?,
    };
    let s = bibundle_structures(n, &values, xm, limits.max_enum).map_err(cech_err)?;
    let payload = json!({
        "count": s.solutions.len(),
        "solutions": s.solutions,
        "failing_edge": s.failing_edge,
    });
    Ok(match s.failing_edge {
        None => Report::ok(payload),
        Some(e) => Report::negative(payload, vec![json!({ "inconsistent_edge": e })]),
    })
}

/// Parses, loads and executes; returns the rendered output and exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return (e.render().to_string(), e.exit_code()),
    };
    let ws = match load_workspace(&cli.workspace, cli.max_order) {
        Ok(ws) => ws,
        Err(diags) => {
            let report = Report {
                command: cli.command.name().to_string(),
                status: Status::Fail,
                payload: json!({ "error": "workspace failed to load" }),
                witnesses: diags.iter().map(|d| json!(d.to_string())).collect(),
                timing_ms: 0,
                exit_code: 2,
            };
            return (report.render(cli.human), 2);
        }
    };
    let report = execute(&ws, &cli.command, Limits { max_order: cli.max_order, max_enum: cli.max_enum });
    (report.render(cli.human), report.exit_code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_round_trip() {
        let ws = Workspace::builtin();
        let text = serde_json::to_string(&ws.to_doc()).unwrap();
        let doc: WorkspaceDoc = serde_json::from_str(&text).unwrap();
        let mut fresh = Workspace::default();
        assert!(extend_workspace(&mut fresh, &doc, None, DEFAULT_MAX_ORDER).is_empty());
        assert_eq!(fresh, ws);
    }

    #[test]
    fn diagnostics_aggregate() {
        let text = r#"{
            "groups": {"Bad": {"order": 2, "mul": [[0,1],[1,1]]}, "Good": {"order": 1, "mul": [[0]]}},
            "crossed_modules": {"Dangling": {"G": "Nope", "H": "Z2", "t": [0], "alpha": [[0],[0]]}},
            "cocycles": {"Broken": {"nerve": "Disc2", "xm": "V4", "g": {"[0,1]": 1, "[1,2]": 1, "[0,2]": 1}, "h": [0,1,0]}}
        }"#;
        let doc: WorkspaceDoc = serde_json::from_str(text).unwrap();
        let mut ws = Workspace::builtin();
        let diags = extend_workspace(&mut ws, &doc, Some("w.json"), DEFAULT_MAX_ORDER);
        let objects: Vec<_> = diags.iter().map(|d| d.object.clone().unwrap()).collect();
        assert_eq!(objects, ["Bad", "Dangling", "Broken"]);
        assert!(ws.groups.contains_key("Good"));
    }

    #[test]
    fn reversed_edge_keys_are_inverted() {
        let doc: WorkspaceDoc = serde_json::from_str(
            r#"{"cocycles": {"C": {"nerve": "Circ3", "xm": "J3", "g": {"[1,0]": 2, "[1,2]": 0, "[0,2]": 0}, "h": [0,0,0]}}}"#,
        )
        .unwrap();
        let mut ws = Workspace::builtin();
        assert!(extend_workspace(&mut ws, &doc, None, DEFAULT_MAX_ORDER).is_empty());
        assert_eq!(ws.cocycles["C"].g(), &[1, 0, 0]);
    }
}
