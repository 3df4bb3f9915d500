//! The `contactlab` command line. [`run`] does all the work and returns the
//! exit code with the captured output, so tests can drive it in-process.
//!
//! Exit codes: 0 when everything checked passes, 1 on a semantic failure,
//! 2 on usage, parse, kind or capacity errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use contactlab::boolean::{grills, ultrafilters};
use contactlab::dot::{adjacency_dot, pcs_dot, space_dot};
use contactlab::duality::{
    ga_object, gt_object, reconstruct_from_sas, roundtrip_pca, roundtrip_pcs,
};
use contactlab::io::{parse_instance, to_json, PcaDto};
use contactlab::mask;
use contactlab::random::random_kernel;
use contactlab::structures::{clan_name, mereo_report};
use contactlab::suite::run_suite;
use contactlab::topology::u_point_of_pair;
use contactlab::{
    Constraint, DualityReport, Error, FiniteSpace, Instance, MereotopologicalPair, Model,
    RandomSpec, TopologicalPair,
};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "contactlab",
    version,
    about = "Finite models of precontact algebras and 2-precontact spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance file against the axioms of its kind.
    Validate {
        file: PathBuf,
        /// Human-readable output instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Map an algebra to its dual space or a space to its dual algebra.
    Dualize {
        file: PathBuf,
        /// Also verify the natural isomorphism and print its report.
        #[arg(long)]
        roundtrip: bool,
        /// Write the dual instance here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        text: bool,
    },
    /// List derived objects in canonical order, with the count last.
    Enumerate { file: PathBuf, what: What },
    /// Run the property suite on seeded random algebras.
    Suite {
        #[arg(long)]
        atoms: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
        constraint: ConstraintArg,
        /// Where failing instances are written.
        #[arg(long, default_value = ".")]
        dump_dir: PathBuf,
        #[arg(long)]
        text: bool,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Graphviz rendering of a space, pair, 2-precontact space or adjacency space.
    ExportDot { file: PathBuf },
    /// Write a seeded random precontact algebra.
    Random {
        #[arg(long)]
        atoms: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
        constraint: ConstraintArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    Ultrafilters,
    Grills,
    Clans,
    Rc,
    UPoints,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConstraintArg {
    None,
    Contact,
    Connected,
    Complete,
}

impl From<ConstraintArg> for Constraint {
    fn from(c: ConstraintArg) -> Self {
        match c {
            ConstraintArg::None => Constraint::None,
            ConstraintArg::Contact => Constraint::Contact,
            ConstraintArg::Connected => Constraint::Connected,
            ConstraintArg::Complete => Constraint::Complete,
        }
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(pass: bool, stdout: String) -> Self {
        Output {
            code: if pass { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }
}

/// A failure that ends the command, with its exit code.
struct Fail {
    code: i32,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. }
            | Error::Parse(_)
            | Error::Domain(_)
            | Error::DomainMismatch(_) => 2,
            _ => 1,
        };
        Fail {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Fail {
    Fail {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<Output, Fail>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output::ok(text)
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = match cli.command {
        Command::Validate { file, text } => validate(&file, text),
        Command::Dualize {
            file,
            roundtrip,
            out,
            text,
        } => dualize(&file, roundtrip, out.as_deref(), text),
        Command::Enumerate { file, what } => enumerate(&file, what),
        Command::Suite {
            atoms,
            density,
            seed,
            count,
            constraint,
            dump_dir,
            text,
            timing,
        } => {
            let spec = RandomSpec::new(atoms, density, seed).with_constraint(constraint.into());
            suite(&spec, count, &dump_dir, text, timing)
        }
        Command::ExportDot { file } => export_dot(&file),
        Command::Random {
            atoms,
            density,
            seed,
            constraint,
            out,
        } => random(
            &RandomSpec::new(atoms, density, seed).with_constraint(constraint.into()),
            out.as_deref(),
        ),
    };
    result.unwrap_or_else(|f| Output {
        code: f.code,
        stdout: String::new(),
        stderr: format!("error: {}\n", f.message),
    })
}

fn read_instance(path: &Path) -> Result<Instance, Fail> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(Instance, Model), Fail> {
    let inst = read_instance(path)?;
    let model = inst.build()?;
    Ok((inst, model))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Fail> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn render_report(report: &DualityReport, text: bool) -> String {
    if !text {
        return serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    }
    let mut out = format!("{}\n", report.subject);
    for c in &report.checks {
        match (&c.witness, c.pass) {
            (Some(w), false) => writeln!(out, "FAIL ({}): {w}", c.name),
            _ => writeln!(out, "{} ({})", if c.pass { "pass" } else { "FAIL" }, c.name),
        }
        .unwrap();
    }
    if let Some(ms) = report.elapsed_ms {
        writeln!(out, "elapsed {ms} ms").unwrap();
    }
    writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" }).unwrap();
    out
}

/// Checks for one instance, plus properties that are reported but do not
/// decide the exit code.
fn validation(model: &Model) -> Result<(DualityReport, serde_json::Value), Fail> {
    Ok(match model {
        Model::Algebra(a) => {
            let mut r =
                DualityReport::new(format!("Boolean algebra with {} atoms", a.atom_count()));
            r.push("finite Boolean algebra", true, None);
            (r, json!({ "elements": a.size() }))
        }
        Model::Pca(p) => {
            let mut r = DualityReport::new(format!("{p}"));
            // Kernels always generate precontact relations; raw element
            // relations were checked while loading.
            r.push("C0", true, None);
            r.push("C+", true, None);
            (
                r,
                serde_json::to_value(p.axiom_report()).expect("serializable"),
            )
        }
        Model::Space(s) => {
            let mut r = DualityReport::new(format!("finite space with {} points", s.len()));
            r.push("closed base", true, None);
            (
                r,
                serde_json::to_value(s.predicates()).expect("serializable"),
            )
        }
        Model::Pair(s, x0) => {
            let mut r =
                DualityReport::new(format!("topological pair ({}, {})", s.len(), s.format(*x0)));
            r.record(
                "dense subset",
                TopologicalPair::new(s.clone(), *x0)
                    .map(|_| ())
                    .map_err(|e| e.to_string()),
            );
            (r, json!({ "components": s.components(*x0).len() }))
        }
        Model::Pcs(p) => (
            p.report().clone(),
            json!({ "components": p.components().len() }),
        ),
        Model::Cs(c) => (c.report().clone(), json!({})),
        Model::Mereo(m) => {
            let rep = mereo_report(m)?;
            let u = m.space().format(rep.u_set);
            (rep.checks, json!({ "u_points": u }))
        }
        Model::PcaMorphism(f) => {
            let mut r = DualityReport::new(format!("PCA-morphism {} → {}", f.source(), f.target()));
            r.push("PCA-morphism", true, None);
            (r, json!({ "atom_map": f.hom().atom_map() }))
        }
        Model::PcsMorphism(f) => {
            let mut r = DualityReport::new("PCS-morphism");
            r.push("PCS-morphism", true, None);
            (
                r,
                json!({ "regular": f.is_regular(), "isomorphism": f.is_isomorphism() }),
            )
        }
        Model::Adjacency(a) => {
            let mut r = DualityReport::new(format!("adjacency space with {} cells", a.len()));
            r.push("adjacency space", true, None);
            (
                r,
                json!({
                    "stone": a.is_stone(),
                    "reflexive": a.is_reflexive(),
                    "symmetric": a.is_symmetric(),
                    "transitive": a.is_transitive(),
                    "connected": a.is_connected(),
                }),
            )
        }
    })
}

fn validate(path: &Path, text: bool) -> CmdResult {
    let inst = read_instance(path)?;
    let model = match inst.build() {
        Ok(m) => m,
        Err(e) => {
            let fail = Fail::from(e.clone());
            if fail.code == 2 {
                return Err(fail);
            }
            let mut r = DualityReport::new(format!("{} instance", inst.kind()));
            r.push("well-formed", false, Some(e.to_string()));
            return Ok(Output::verdict(false, render_report(&r, text)));
        }
    };
    let (report, properties) = validation(&model)?;
    let stdout = if text {
        let mut out = render_report(&report, true);
        if let Some(obj) = properties.as_object() {
            for (k, v) in obj {
                writeln!(out, "  {k}: {v}").unwrap();
            }
        }
        out
    } else {
        let value = json!({
            "kind": inst.kind(),
            "valid": report.passed(),
            "report": report,
            "properties": properties,
        });
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    };
    Ok(Output::verdict(report.passed(), stdout))
}

fn dualize(path: &Path, roundtrip: bool, out: Option<&Path>, text: bool) -> CmdResult {
    let (_, model) = load(path)?;
    let (dual, report) = match &model {
        Model::Pca(p) => {
            let d = ga_object(p)?;
            let report = roundtrip.then(|| roundtrip_pca(p)).transpose()?;
            (Model::Pcs(d.pcs), report)
        }
        Model::Pcs(s) => {
            if !s.is_valid() {
                return Err(Fail {
                    code: 1,
                    message: format!(
                        "not a 2-precontact space:\n{}",
                        render_report(s.report(), true)
                    ),
                });
            }
            let a = gt_object(s)?;
            let report = roundtrip.then(|| roundtrip_pcs(s)).transpose()?;
            (Model::Pca(a.pca), report)
        }
        Model::Adjacency(a) => {
            let rec = reconstruct_from_sas(a)?;
            let report = roundtrip.then(|| rec.report.clone());
            (Model::Pcs(rec.dual.pcs), report)
        }
        other => {
            return Err(usage(format!(
                "dualize takes a pca, pcs or adjacency file, not {}",
                other.to_instance().kind()
            )))
        }
    };
    let json = to_json(&dual.to_instance()) + "\n";
    if let Some(path) = out {
        write_file(path, &json)?;
    }
    Ok(match report {
        Some(r) => Output::verdict(r.passed(), render_report(&r, text)),
        None if out.is_some() => Output::ok(String::new()),
        None => Output::ok(json),
    })
}

fn listing(items: Vec<String>, noun: &str) -> String {
    let mut out = String::new();
    for item in &items {
        writeln!(out, "{item}").unwrap();
    }
    writeln!(out, "{} {noun}", items.len()).unwrap();
    out
}

fn region_listing(space: &FiniteSpace, members: Vec<u64>) -> String {
    let mut sets: Vec<u64> = members;
    sets.sort_by(|a, b| mask::support_order(*a, *b));
    listing(
        sets.into_iter().map(|m| space.format(m)).collect(),
        "regular closed sets",
    )
}

fn enumerate(path: &Path, what: What) -> CmdResult {
    let (inst, model) = load(path)?;
    let mismatch =
        || usage(format!("cannot enumerate {what:?} of kind {}", inst.kind()).to_lowercase());
    let algebra = match &model {
        Model::Algebra(a) => Some(*a),
        Model::Pca(p) => Some(p.algebra()),
        _ => None,
    };
    let mereo = match &model {
        Model::Space(s) => Some(MereotopologicalPair::full(s.clone())),
        Model::Pair(s, x0) => Some(MereotopologicalPair::of_pair(&TopologicalPair::new(
            s.clone(),
            *x0,
        )?)),
        Model::Pcs(p) => Some(MereotopologicalPair::of_pair(&TopologicalPair::new(
            p.space().clone(),
            p.x0(),
        )?)),
        Model::Cs(c) => Some(MereotopologicalPair::of_pair(&TopologicalPair::new(
            c.space().clone(),
            c.x0(),
        )?)),
        Model::Mereo(m) => Some(m.clone()),
        _ => None,
    };
    let stdout = match what {
        What::Ultrafilters => {
            let alg = algebra.ok_or_else(mismatch)?;
            let items = ultrafilters(alg)
                .iter()
                .map(|u| format!("↑a{}", u.meet_of_members().trailing_zeros()))
                .collect();
            listing(items, "ultrafilters")
        }
        What::Grills => {
            let alg = algebra.ok_or_else(mismatch)?;
            let mut supports: Vec<u64> = grills(alg).iter().map(|g| g.atom_support()).collect();
            supports.sort_by(|a, b| mask::support_order(*a, *b));
            listing(
                supports
                    .into_iter()
                    .map(|s| format!("grill{}", mask::fmt_set(s)))
                    .collect(),
                "grills",
            )
        }
        What::Clans => {
            let Model::Pca(p) = &model else {
                return Err(mismatch());
            };
            listing(
                p.clans().iter().map(|c| clan_name(c.support)).collect(),
                "clans",
            )
        }
        What::Rc => {
            let m = mereo.ok_or_else(mismatch)?;
            region_listing(m.space(), m.region().members())
        }
        What::UPoints => {
            let m = mereo.ok_or_else(mismatch)?;
            let mut items = Vec::new();
            for x in 0..m.space().len() {
                if u_point_of_pair(&m, x)? {
                    items.push(m.space().names()[x].clone());
                }
            }
            listing(items, "u-points")
        }
    };
    Ok(Output::ok(stdout))
}

fn suite(spec: &RandomSpec, count: usize, dump_dir: &Path, text: bool, timing: bool) -> CmdResult {
    let start = Instant::now();
    let outcome = run_suite(spec, count)?;
    let mut report = outcome.report;
    if timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let mut stderr = String::new();
    for (seed, inst, _) in &outcome.failures {
        let path = dump_dir.join(format!("contactlab-failure-{seed}.json"));
        write_file(&path, &(to_json(inst) + "\n"))?;
        writeln!(stderr, "wrote {}", path.display()).unwrap();
    }
    Ok(Output {
        code: if report.passed() { 0 } else { 1 },
        stdout: render_report(&report, text),
        stderr,
    })
}

fn export_dot(path: &Path) -> CmdResult {
    let (inst, model) = load(path)?;
    let dot = match &model {
        Model::Space(s) => space_dot(s, None, None),
        Model::Pair(s, x0) => space_dot(s, Some(*x0), None),
        Model::Pcs(p) => pcs_dot(p),
        Model::Cs(c) => space_dot(c.space(), Some(c.x0()), None),
        Model::Mereo(m) => space_dot(m.space(), None, None),
        Model::Adjacency(a) => adjacency_dot(a),
        _ => {
            return Err(usage(format!(
                "export-dot takes a space-like file, not {}",
                inst.kind()
            )))
        }
    };
    Ok(Output::ok(dot))
}

fn random(spec: &RandomSpec, out: Option<&Path>) -> CmdResult {
    let pca = random_kernel(spec)?;
    let json = to_json(&Instance::Pca(PcaDto::from(&pca))) + "\n";
    match out {
        Some(path) => {
            write_file(path, &json)?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(json)),
    }
}
