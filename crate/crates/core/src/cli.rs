//! The `smtop` command line.
//!
//! Commands print line-oriented text, or JSON with `--json`. Computing
//! commands exit 0; checking commands (`validate`, `symmetric`, `verify`,
//! `paper-examples`) exit 1 when a check fails. Input errors exit 2
//! (unreadable or malformed), 3 (wrong shape) or 4 (invalid data).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::gtop::NeighborhoodSystem;
use crate::neighborhood::{entourage, r_sphere, r_system, sphere, sphere_family, sphere_system, Elem, GEcart, Poset};
use crate::product::{box_system, product_ecart, product_space, verify_product_menger, verify_theorems};
use crate::rational::{parse_rational, Rational};
use crate::sets::{Ground, PointSet};
use crate::smspace::{MetricKind, SmSpace};
use crate::spacefile::{self, expect_ecart, expect_space, load, load_tnorm, LoadError, Loaded};
use crate::tnorm::default_grid;
use crate::worked::{self, Fixtures, Group};

pub const WINDOW_VAR: &str = "SMTOP_WINDOW";
pub const DEFAULT_WINDOW: u64 = 10;
const DEFAULT_BOUND: u64 = 10;

#[derive(Debug, Parser)]
#[command(name = "smtop", version, about = "Statistical metric spaces and their generalized topologies")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// t-norm for Menger checks: `product`, `min`, or a table file.
    #[arg(long, global = true, default_value = "product")]
    pub tnorm: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    /// (u,v)-spheres of a space
    Spheres,
    /// r-spheres of a space
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyEmit {
    Text,
    System,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductEmit {
    Space,
    Spheres,
    Classification,
    System,
}

#[derive(Debug, clap::Args)]
pub struct SystemSource {
    /// A system, space or écart file; `-` reads standard input.
    pub file: String,
    /// Which system a space file induces.
    #[arg(long, value_enum, default_value = "spheres")]
    pub kind: SystemKind,
    /// Largest f for écart systems (default 10, or all of a finite poset).
    #[arg(long)]
    pub bound: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a file and check its axioms.
    Validate { file: String },
    /// The (u,v)-sphere N_p(u, v) = {q : F_pq(u) > 1 - v}.
    Sphere { space: String, p: String, u: String, v: String },
    /// The entourage U(u, v) = {(p, q) : G_pq(u) < v}.
    Entourage { space: String, u: String, v: String },
    /// The f-sphere N_p(f) = {q : G(p, q) < f} of an écart.
    EcartSphere { ecart: String, p: String, f: String },
    /// The r-sphere N_p(r; u) = {q : G_pq(u) < G_pr(u)}.
    RSphere { space: String, p: String, r: String, u: String },
    /// The neighborhood families of a system, at one point or all points.
    Family {
        #[command(flatten)]
        source: SystemSource,
        /// Only this point.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        emit: FamilyEmit,
    },
    /// Check N0, N1, N2 and name the type of a system.
    Classify {
        #[command(flatten)]
        source: SystemSource,
    },
    /// Points all of whose neighborhoods meet the given set.
    Closure {
        #[command(flatten)]
        source: SystemSource,
        /// Points of the set.
        points: Vec<String>,
    },
    /// Complement of the closure of the complement.
    Interior {
        #[command(flatten)]
        source: SystemSource,
        points: Vec<String>,
    },
    /// Check p ∈ cl{q} ⇔ q ∈ cl{p}.
    Symmetric {
        #[command(flatten)]
        source: SystemSource,
    },
    /// Product of two spaces, two systems or two écarts.
    Product {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "space")]
        emit: ProductEmit,
        /// Bound per coordinate for écart products, as `(f1,f2)`.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Randomized and exhaustive checks of the product theorems.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Recompute the worked examples and diff against golden values.
    PaperExamples {
        /// Run only these groups: coin, dice, ecart, rsphere.
        #[arg(long)]
        group: Vec<String>,
        /// Read fixtures from this directory instead of the bundled ones.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyWhat {
    Theorems {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Rendering window for sets of natural numbers.
pub fn window() -> u64 {
    std::env::var(WINDOW_VAR)
        .ok()
        .and_then(|w| w.trim().parse().ok())
        .unwrap_or(DEFAULT_WINDOW)
}

#[derive(Debug)]
enum Failure {
    Load(LoadError),
    Usage(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Load(e)
    }
}

type Outcome = Result<(Vec<String>, Value, bool), Failure>;

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Load(LoadError::Validation(e.to_string()))
}

fn rational(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Load(LoadError::Parse(format!("{name}: {e}"))))
}

fn point(s: &SmSpace, label: &str) -> Result<usize, Failure> {
    s.index_of(label).map_err(invalid)
}

struct View {
    ground: Ground,
    window: u64,
}

impl View {
    fn set(&self, s: &PointSet) -> String {
        if self.ground.has_infinite_classes() {
            format!(
                "{}  [1..{}: {}]",
                self.ground.render(s),
                self.window,
                self.ground.window_view(s, self.window).join(" ")
            )
        } else {
            self.ground.render(s)
        }
    }

    fn set_json(&self, s: &PointSet) -> Value {
        let labels: Vec<String> = s.iter().map(|c| self.ground.label(c)).collect();
        if self.ground.has_infinite_classes() {
            json!({
                "set": self.ground.render(s),
                "classes": labels,
                "window": self.ground.window_view(s, self.window),
            })
        } else {
            json!(labels)
        }
    }
}

fn ecart_bound(g: &GEcart, bound: Option<&str>) -> Result<Vec<Elem>, Failure> {
    let range = g.range();
    if let Some(b) = bound {
        let b = range.parse(b).map_err(invalid)?;
        return Ok(range.positive_up_to(&b));
    }
    fn default(p: &Poset) -> Elem {
        match p {
            Poset::Naturals => Elem::Nat(DEFAULT_BOUND),
            Poset::Explicit { .. } => Elem::Idx(usize::MAX),
            Poset::Product(a, b) => Elem::pair(default(a), default(b)),
        }
    }
    Ok(range.positive_up_to(&default(range)))
}

fn ecart_system(g: &GEcart, bound: Option<&str>) -> Result<NeighborhoodSystem, Failure> {
    g.system_over(&ecart_bound(g, bound)?).map_err(invalid)
}

fn system_of(loaded: Loaded, kind: SystemKind, bound: Option<&str>) -> Result<NeighborhoodSystem, Failure> {
    match loaded {
        Loaded::System(s) => Ok(s),
        Loaded::Space(s) => Ok(match kind {
            SystemKind::Spheres => sphere_system(&s),
            SystemKind::R => r_system(&s),
        }),
        Loaded::Ecart(g) => ecart_system(&g, bound),
    }
}

fn load_system(src: &SystemSource) -> Result<NeighborhoodSystem, Failure> {
    system_of(load(&src.file)?, src.kind, src.bound.as_deref())
}

fn set_arg(g: &Ground, points: &[String]) -> Result<PointSet, Failure> {
    g.set_of(points).map_err(|p| invalid(format!("unknown point `{p}`")))
}

fn family_lines(sys: &NeighborhoodSystem, view: &View, only: Option<usize>) -> (Vec<String>, Value) {
    let mut lines = Vec::new();
    let mut obj = serde_json::Map::new();
    for p in 0..sys.len() {
        if only.is_some_and(|o| o != p) {
            continue;
        }
        let label = sys.ground().label(p);
        lines.push(format!("{label}:"));
        if sys.family(p).is_empty() {
            lines.push("  (no neighborhoods)".into());
        }
        for s in sys.family(p) {
            lines.push(format!("  {}", view.set(s)));
        }
        obj.insert(label, sys.family(p).iter().map(|s| view.set_json(s)).collect());
    }
    (lines, Value::Object(obj))
}

fn classification_out(sys: &NeighborhoodSystem) -> (Vec<String>, Value) {
    let c = sys.classify();
    (c.lines(), serde_json::to_value(&c).unwrap())
}

fn execute(cli: &Cli) -> Outcome {
    let w = window();
    let view = |ground: Ground| View { ground, window: w };
    match &cli.command {
        Command::Validate { file } => {
            let loaded = load(file)?;
            let mut lines = vec![format!("loaded {loaded}")];
            let (value, ok) = match &loaded {
                Loaded::Space(s) => {
                    let t = load_tnorm(&cli.tnorm)?;
                    let axioms = s.check_sm_axioms();
                    for a in &axioms.axioms {
                        lines.push(match &a.witness {
                            None => format!("{}: PASS", a.axiom),
                            Some(wt) => format!("{}: FAIL witness {wt}", a.axiom),
                        });
                    }
                    let tn = t.check_axioms(&default_grid()).map_err(invalid)?;
                    let menger = s.check_menger(&t);
                    lines.push(match &menger.witness {
                        None => format!("SM-IVm ({t}): PASS over {} triples", menger.triples),
                        Some(wt) => format!("SM-IVm ({t}): FAIL witness {wt}"),
                    });
                    if !tn.passed() {
                        lines.push(format!("t-norm {t}: fails T-I..T-V on the default grid"));
                    }
                    let ok = axioms.passed() && menger.passed();
                    (json!({"kind": "space", "axioms": axioms, "menger": menger, "tnorm": tn}), ok)
                }
                Loaded::Ecart(g) => {
                    let z = g.range().zero();
                    lines.push(format!("range {} with least element {}", g.range(), g.range().render(&z)));
                    (json!({"kind": "ecart", "classes": g.ground().labels()}), true)
                }
                Loaded::System(s) => {
                    lines.push(format!("points: {}", s.ground().labels().join(" ")));
                    (json!({"kind": "system", "points": s.ground().labels()}), true)
                }
            };
            lines.push(format!("result: {}", crate::report::pass_fail(ok)));
            Ok((lines, value, ok))
        }
        Command::Sphere { space, p, u, v } => {
            let s = expect_space(load(space)?)?;
            let i = point(&s, p)?;
            let set = sphere(&s, i, &rational("u", u)?, &rational("v", v)?).map_err(invalid)?;
            let vw = view(s.ground());
            Ok((vec![vw.set(&set)], vw.set_json(&set), true))
        }
        Command::Entourage { space, u, v } => {
            let s = expect_space(load(space)?)?;
            let e = entourage(&s, &rational("u", u)?, &rational("v", v)?).map_err(invalid)?;
            let labels = s.labels();
            let pairs: Vec<Value> = e.iter().map(|(p, q)| json!([labels[p], labels[q]])).collect();
            Ok((
                vec![e.render(labels), format!("{} pairs", e.len())],
                json!({"pairs": pairs, "count": e.len()}),
                true,
            ))
        }
        Command::EcartSphere { ecart, p, f } => {
            let g = expect_ecart(load(ecart)?)?;
            let class = g
                .ground()
                .class_of(p)
                .ok_or_else(|| invalid(format!("unknown point `{p}`")))?;
            let fe = spacefile::parse_elem(&g, f)?;
            let set = g.sphere(class, &fe).map_err(invalid)?;
            let vw = view(g.ground().clone());
            Ok((vec![vw.set(&set)], vw.set_json(&set), true))
        }
        Command::RSphere { space, p, r, u } => {
            let s = expect_space(load(space)?)?;
            let set = r_sphere(&s, point(&s, p)?, point(&s, r)?, &rational("u", u)?).map_err(invalid)?;
            let vw = view(s.ground());
            Ok((vec![vw.set(&set)], vw.set_json(&set), true))
        }
        Command::Family { source, point: only, emit } => {
            let sys = load_system(source)?;
            let only = only
                .as_ref()
                .map(|p| {
                    sys.ground()
                        .class_of(p)
                        .ok_or_else(|| invalid(format!("unknown point `{p}`")))
                })
                .transpose()?;
            match emit {
                FamilyEmit::Text => {
                    let (lines, value) = family_lines(&sys, &view(sys.ground().clone()), only);
                    Ok((lines, value, true))
                }
                FamilyEmit::System => {
                    let raw = spacefile::system_to_raw(&sys);
                    let text = serde_json::to_string_pretty(&raw).unwrap();
                    Ok((vec![text], serde_json::to_value(&raw).unwrap(), true))
                }
            }
        }
        Command::Classify { source } => {
            let sys = load_system(source)?;
            let (lines, value) = classification_out(&sys);
            Ok((lines, value, true))
        }
        Command::Closure { source, points } | Command::Interior { source, points } => {
            let sys = load_system(source)?;
            let e = set_arg(sys.ground(), points)?;
            let out = if matches!(cli.command, Command::Closure { .. }) {
                sys.closure(&e)
            } else {
                sys.interior(&e)
            };
            let vw = view(sys.ground().clone());
            Ok((vec![vw.set(&out)], vw.set_json(&out), true))
        }
        Command::Symmetric { source } => {
            let sys = load_system(source)?;
            let sym = sys.is_symmetric();
            let line = match &sym.witness {
                None => "symmetric: PASS".to_string(),
                Some((p, q)) => format!("symmetric: FAIL witness ({p}, {q}): {p} ∈ cl{{{q}}} but {q} ∉ cl{{{p}}}"),
            };
            Ok((vec![line], serde_json::to_value(&sym).unwrap(), sym.holds()))
        }
        Command::Product { left, right, emit, bound } => product(cli, load(left)?, load(right)?, *emit, bound.as_deref(), w),
        Command::Verify {
            what: VerifyWhat::Theorems { trials, seed },
        } => {
            let coin = expect_space(spacefile::parse(&Fixtures::bundled().coin)?)?;
            let dice = SmSpace::integer_line(6, MetricKind::Step);
            let report = verify_theorems(*trials, *seed, &[("coin", &coin), ("dice", &dice)]);
            let mut lines = vec![format!("seed {}", report.seed)];
            for run in &report.preservation {
                lines.push(format!(
                    "box product preserves {}: {} ({}/{} trials, {} from the generator)",
                    run.which,
                    crate::report::pass_fail(run.passed()),
                    run.preserved,
                    run.trials,
                    run.generated
                ));
                if let Some(cx) = &run.counterexample {
                    lines.push(format!("  counterexample at trial {}", cx.trial));
                    for (name, sys) in [("left", &cx.left), ("right", &cx.right)] {
                        lines.push(format!("  {name}: {}", sys.join("; ")));
                    }
                }
            }
            lines.push(format!(
                "écart product spheres are boxes and the system has type V: {}",
                crate::report::pass_fail(report.ecart.passed())
            ));
            for (name, r) in &report.r_products {
                lines.push(format!(
                    "r-sphere system of {name} is a neighborhood system: {} (verdict {}, box comparison: {})",
                    crate::report::pass_fail(r.passed()),
                    r.classification.verdict,
                    r.versus_box.relation
                ));
            }
            let ok = report.passed();
            Ok((lines, serde_json::to_value(&report).unwrap(), ok))
        }
        Command::PaperExamples { group, fixtures } => {
            let groups = if group.is_empty() {
                Group::ALL.to_vec()
            } else {
                group
                    .iter()
                    .map(|g| Group::parse(g).ok_or_else(|| Failure::Usage(format!("unknown group `{g}`"))))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let fx = match fixtures {
                Some(dir) => Fixtures::from_dir(dir)?,
                None => Fixtures::bundled(),
            };
            let reports = worked::run(&fx, &groups);
            let mut lines = Vec::new();
            for r in &reports {
                let n = r.checks.len();
                let bad = r.failures().count();
                lines.push(format!(
                    "{} {:8} {} ({}/{} checks)",
                    crate::report::pass_fail(r.passed()),
                    r.group.name(),
                    r.group.title(),
                    n - bad,
                    n
                ));
                if let Some(e) = &r.error {
                    lines.push(format!("  error: {e}"));
                }
                for c in r.failures() {
                    lines.push(format!("  {}", c.name));
                    lines.push(format!("  - expected {}", c.expected));
                    lines.push(format!("  + actual   {}", c.actual));
                }
            }
            let ok = reports.iter().all(worked::GroupReport::passed);
            Ok((lines, serde_json::to_value(&reports).unwrap(), ok))
        }
    }
}

fn product(cli: &Cli, a: Loaded, b: Loaded, emit: ProductEmit, bound: Option<&str>, w: u64) -> Outcome {
    let view = |ground: Ground| View { ground, window: w };
    match (a, b) {
        (Loaded::Space(a), Loaded::Space(b)) => {
            let p = product_space(&a, &b);
            match emit {
                ProductEmit::Space => {
                    let raw = spacefile::space_to_raw(&p);
                    let text = serde_json::to_string_pretty(&raw).unwrap();
                    Ok((vec![text], serde_json::to_value(&raw).unwrap(), true))
                }
                ProductEmit::Spheres => {
                    let sys = NeighborhoodSystem::new(
                        Ground::product(&a.ground(), &b.ground()),
                        (0..p.len()).map(|i| sphere_family(&p, i)).collect(),
                    )
                    .map_err(invalid)?;
                    let (lines, value) = family_lines(&sys, &view(sys.ground().clone()), None);
                    Ok((lines, value, true))
                }
                ProductEmit::System => {
                    let raw = spacefile::system_to_raw(&sphere_system(&p));
                    let text = serde_json::to_string_pretty(&raw).unwrap();
                    Ok((vec![text], serde_json::to_value(&raw).unwrap(), true))
                }
                ProductEmit::Classification => {
                    let axioms = p.check_sm_axioms();
                    let t = load_tnorm(&cli.tnorm)?;
                    let menger = if matches!(t, crate::tnorm::TNorm::Product) {
                        let r = verify_product_menger(&a, &b);
                        (r.passed(), r.factor_violation.is_some())
                    } else {
                        (p.check_menger(&t).passed(), false)
                    };
                    let (mut lines, value) = classification_out(&sphere_system(&p));
                    lines.insert(0, format!("SM-I..SM-IV: {}", crate::report::pass_fail(axioms.passed())));
                    lines.insert(
                        1,
                        if menger.1 {
                            "SM-IVm: factor violation, product not checked".to_string()
                        } else {
                            format!("SM-IVm ({t}): {}", crate::report::pass_fail(menger.0))
                        },
                    );
                    Ok((lines, json!({"axioms": axioms, "menger": menger.0, "spheres": value}), true))
                }
            }
        }
        (Loaded::System(a), Loaded::System(b)) => {
            let sys = box_system(&a, &b);
            product_system_out(&sys, emit, &view(sys.ground().clone()))
        }
        (Loaded::Ecart(a), Loaded::Ecart(b)) => {
            let g = product_ecart(&a, &b);
            let sys = ecart_system(&g, bound)?;
            product_system_out(&sys, emit, &view(sys.ground().clone()))
        }
        (a, b) => Err(Failure::Load(LoadError::Schema(format!(
            "cannot multiply a {} by a {}",
            a.kind(),
            b.kind()
        )))),
    }
}

fn product_system_out(sys: &NeighborhoodSystem, emit: ProductEmit, view: &View) -> Outcome {
    match emit {
        ProductEmit::Classification => {
            let (lines, value) = classification_out(sys);
            Ok((lines, value, true))
        }
        ProductEmit::System => {
            let raw = spacefile::system_to_raw(sys);
            let text = serde_json::to_string_pretty(&raw).unwrap();
            Ok((vec![text], serde_json::to_value(&raw).unwrap(), true))
        }
        ProductEmit::Spheres | ProductEmit::Space => {
            let (lines, value) = family_lines(sys, view, None);
            Ok((lines, value, true))
        }
    }
}

/// Runs one invocation, writing the result to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((lines, value, ok)) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&value).unwrap()
            } else {
                lines.join("\n")
            };
            let _ = writeln!(out, "{text}");
            if ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Load(e)) => {
            let _ = writeln!(err, "smtop: {e}");
            e.exit_code()
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "smtop: {m}");
            2
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args(), &mut stdout.lock(), &mut stderr.lock())
}
