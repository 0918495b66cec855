//! The `anncat` command line: reads JSON inputs, runs one library operation
//! and writes a report.
//!
//! Exit status is 0 when everything checked passes, 1 when the computation
//! found violations, 2 for bad input and 3 when a size limit is hit.

pub mod format;

use crate::algebra::{find_isomorphism, Bimodule, FiniteRing};
use crate::ann_category::{
    aut_functor, enumerate_regular_functors, exists_ann_functor, functor_violations, AnnCategoryRM, AnnFunctorRM,
    CoherenceChecker, DiagramViolation, FunctorExistence, HomPair,
};
use crate::cochain::{
    delta2, flip_lambda, is_ann_structure, is_cocycle3, AnyCochain, Basis, Cochain, Cochain2, Cochain3, RelationReport,
};
use crate::cohomology::{classify_ann_structures, cohomology_group, z1_group};
use crate::error::{Error, Result};
use crate::extension::{
    build_extension, enumerate_bimultiplications, enumerate_regular_lifts, is_regular_hom, obstruction,
    obstruction_with, bicenter, BimultRing, Obstruction,
};
use crate::guard::SizeGuard;
use clap::{Args, Parser, Subcommand, ValueEnum};
use format::{
    describe_group, BimoduleFile, CochainFile, FactorSetsFile, FunctorFile, GroupReport, RingFile, ThetaFile,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "anncat", version, about = "Cohomology of finite rings and categorical rings of type (R, M)")]
pub struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Limit on basis sizes; overrides ANNCAT_SIZE_GUARD
    #[arg(long, global = true)]
    pub size_guard: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct ModuleArgs {
    #[arg(long)]
    pub ring: PathBuf,
    #[arg(long)]
    pub module: PathBuf,
}

#[derive(Args, Debug)]
pub struct FunctorArgs {
    #[arg(long)]
    pub source_ring: PathBuf,
    #[arg(long)]
    pub source_module: PathBuf,
    /// Defaults to the source ring
    #[arg(long)]
    pub target_ring: Option<PathBuf>,
    /// Defaults to the source module file
    #[arg(long)]
    pub target_module: Option<PathBuf>,
    /// 3-cocycle of the source category; zero when omitted
    #[arg(long)]
    pub source_cochain: Option<PathBuf>,
    /// 3-cocycle of the target category; zero when omitted
    #[arg(long)]
    pub target_cochain: Option<PathBuf>,
    /// Homomorphism pair, with functor data where the command needs it
    #[arg(long)]
    pub functor: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExtensionArgs {
    /// The ring A being extended (its unit is ignored)
    #[arg(long)]
    pub base: PathBuf,
    /// The quotient ring R
    #[arg(long)]
    pub ring: PathBuf,
    #[arg(long)]
    pub theta: PathBuf,
    /// Factor sets; the least solutions are used when omitted
    #[arg(long)]
    pub factor_sets: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check ring (and optionally bimodule) axioms
    RingValidate {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Compute Z, B and H at level 1, 2 or 3
    Cohomology {
        #[command(flatten)]
        input: ModuleArgs,
        #[arg(long)]
        level: u8,
        /// Include one representative cochain per class
        #[arg(long)]
        representatives: bool,
    },
    /// Check the cocycle relations
    CocycleCheck {
        #[command(flatten)]
        input: ModuleArgs,
        #[arg(long)]
        cochain: PathBuf,
        /// Treat the cochain as structure data and skip regularity
        #[arg(long)]
        as_structure: bool,
    },
    /// Evaluate the coherence diagrams
    CoherenceVerify {
        #[command(flatten)]
        input: ModuleArgs,
        /// Without a cochain, compare diagrams and relations on random samples
        #[arg(long)]
        cochain: Option<PathBuf>,
        /// Treat the cochain as structure data and skip regularity
        #[arg(long)]
        as_structure: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// One regular structure per cohomology class
    Classify {
        #[command(flatten)]
        input: ModuleArgs,
    },
    /// Decide whether a homomorphism pair carries a functor
    FunctorExists {
        #[command(flatten)]
        input: FunctorArgs,
    },
    /// One functor per congruence class over a regular pair
    FunctorEnumerate {
        #[command(flatten)]
        input: FunctorArgs,
    },
    /// Automorphisms of a functor
    FunctorAut {
        #[command(flatten)]
        input: FunctorArgs,
    },
    /// Bimultiplications of a ring, and the regular lifts of a second ring
    ExtBimult {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        ring: Option<PathBuf>,
    },
    /// Obstruction of a regular homomorphism
    ExtObstruction {
        #[command(flatten)]
        input: ExtensionArgs,
    },
    /// Build the extension ring when the obstruction vanishes
    ExtBuild {
        #[command(flatten)]
        input: ExtensionArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::RingValidate { .. } => "ring-validate",
            Command::Cohomology { .. } => "cohomology",
            Command::CocycleCheck { .. } => "cocycle-check",
            Command::CoherenceVerify { .. } => "coherence-verify",
            Command::Classify { .. } => "classify",
            Command::FunctorExists { .. } => "functor-exists",
            Command::FunctorEnumerate { .. } => "functor-enumerate",
            Command::FunctorAut { .. } => "functor-aut",
            Command::ExtBimult { .. } => "ext-bimult",
            Command::ExtObstruction { .. } => "ext-obstruction",
            Command::ExtBuild { .. } => "ext-build",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violations,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    #[serde(default)]
    pub result: Value,
    #[serde(default)]
    pub violations: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match (&self.status, &self.error) {
            (Status::Ok, _) => 0,
            (Status::Violations, _) => 1,
            (Status::Error, Some(e)) if e.kind == "size-guard" => 3,
            (Status::Error, _) => 2,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            OutputFormat::Text => {
                let mut out = String::new();
                for line in &self.text {
                    out.push_str(line);
                    out.push('\n');
                }
                if let Some(e) = &self.error {
                    out.push_str(&format!("error: {}\n", e.message));
                }
                out
            }
        }
    }
}

struct Outcome {
    result: Value,
    violations: Vec<Value>,
    text: Vec<String>,
}

impl Outcome {
    fn new(result: Value, text: Vec<String>) -> Self {
        Outcome { result, violations: Vec::new(), text }
    }

    fn with_violations(mut self, v: Vec<Value>) -> Self {
        self.violations = v;
        self
    }
}

struct Context {
    guard: SizeGuard,
    seed: u64,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SizeGuard { .. } | Error::Overflow(_) => "size-guard",
        Error::Axiom { .. } => "axiom",
        Error::NotCocycle(_) => "not-cocycle",
        Error::NotRegular(_) => "not-regular",
        Error::NonzeroComposite { .. } => "nonzero-composite",
        Error::Invalid(_) => "invalid-input",
    }
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Report {
    let mut guard = SizeGuard::from_env();
    if let Some(g) = cli.size_guard {
        guard.generators = g;
    }
    let ctx = Context { guard, seed: cli.seed };
    let command = cli.command.name().to_string();
    match dispatch(&cli.command, &ctx) {
        Ok(o) => Report {
            command,
            status: if o.violations.is_empty() { Status::Ok } else { Status::Violations },
            result: o.result,
            violations: o.violations,
            error: None,
            text: o.text,
        },
        Err(e) => Report {
            command,
            status: Status::Error,
            result: Value::Null,
            violations: Vec::new(),
            error: Some(ErrorReport { kind: error_kind(&e).into(), message: e.to_string() }),
            text: Vec::new(),
        },
    }
}

/// Entry point of the binary; returns the exit status.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let report = run(&cli);
    let out = report.render(cli.format);
    if report.status == Status::Error && cli.format == OutputFormat::Text {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    report.exit_code()
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<Outcome> {
    match cmd {
        Command::RingValidate { ring, module } => ring_validate(ring, module.as_deref()),
        Command::Cohomology { input, level, representatives } => cohomology(input, *level, *representatives, ctx),
        Command::CocycleCheck { input, cochain, as_structure } => cocycle_check(input, cochain, *as_structure),
        Command::CoherenceVerify { input, cochain, as_structure, samples } => {
            coherence_verify(input, cochain.as_deref(), *as_structure, *samples, ctx)
        }
        Command::Classify { input } => classify(input, ctx),
        Command::FunctorExists { input } => functor_exists(input, ctx),
        Command::FunctorEnumerate { input } => functor_enumerate(input, ctx),
        Command::FunctorAut { input } => functor_aut(input, ctx),
        Command::ExtBimult { base, ring } => ext_bimult(base, ring.as_deref(), ctx),
        Command::ExtObstruction { input } => ext_obstruction(input, ctx),
        Command::ExtBuild { input } => ext_build(input, ctx),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Prefixes input errors with the file they came from.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Invalid(msg) => Error::Invalid(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn load_ring(path: &Path) -> Result<FiniteRing> {
    in_file(path, read_json::<RingFile>(path)?.to_ring())
}

fn load_module(ring: &FiniteRing, path: &Path) -> Result<Bimodule> {
    in_file(path, read_json::<BimoduleFile>(path)?.to_module(ring))
}

fn load_input(input: &ModuleArgs) -> Result<Bimodule> {
    let ring = load_ring(&input.ring)?;
    load_module(&ring, &input.module)
}

fn load_cochain(m: &Bimodule, path: &Path) -> Result<AnyCochain> {
    in_file(path, read_json::<CochainFile>(path)?.to_cochain(m))
}

fn load_cochain3(m: &Bimodule, path: &Path) -> Result<Cochain3> {
    match load_cochain(m, path)? {
        AnyCochain::Three(c) => Ok(c),
        c => Err(Error::Invalid(format!("{}: expected a 3-cochain, found level {}", path.display(), c.level()))),
    }
}

fn module_json(m: &Bimodule) -> Value {
    json!({ "invariant_factors": m.factors(), "order": m.order() })
}

fn relation_violations(m: &Bimodule, r: &RelationReport) -> Vec<Value> {
    r.violations
        .iter()
        .map(|v| json!({ "relation": v.relation, "tuple": v.tuple, "residual": m.coords(v.residual) }))
        .collect()
}

fn diagram_violations(m: &Bimodule, v: &[DiagramViolation]) -> Vec<Value> {
    v.iter().map(|v| json!({ "diagram": v.diagram, "tuple": v.tuple, "residual": m.coords(v.residual) })).collect()
}

/// Nonzero entries of a 3-cochain.
fn nonzero_entries(m: &Bimodule, c: &Cochain3) -> Vec<Value> {
    let n = c.ring_order();
    let mut out = Vec::new();
    for (slot, comp) in Cochain3::COMPONENTS.iter().enumerate() {
        for (idx, &v) in c.table(slot).iter().enumerate() {
            if v != 0 {
                let tuple = crate::cochain::unflatten(n, comp.arity(), idx);
                out.push(json!({ "component": comp.name(), "tuple": tuple, "residual": m.coords(v) }));
            }
        }
    }
    out
}

fn violation_lines(v: &[Value]) -> Vec<String> {
    v.iter()
        .map(|v| {
            let label = ["relation", "diagram", "component", "condition"]
                .iter()
                .find_map(|k| v.get(*k).map(|x| format!("{k} {}", x.to_string().trim_matches('"'))))
                .unwrap_or_default();
            let at = v.get("tuple").or_else(|| v.get("args")).map(|t| t.to_string()).unwrap_or_default();
            match v.get("residual") {
                Some(r) => format!("  {label} at {at}: residual {r}"),
                None => format!("  {label} at {at}"),
            }
        })
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ring_validate(ring: &Path, module: Option<&Path>) -> Result<Outcome> {
    let file: RingFile = read_json(ring)?;
    let axiom_failure = |e: Error| match e {
        Error::Axiom { structure, axiom, witness } => Ok(Outcome::new(
            Value::Null,
            vec![format!("FAIL: {structure} axiom `{axiom}` fails at {witness:?}")],
        )
        .with_violations(vec![json!({ "structure": structure, "axiom": axiom, "tuple": witness })])),
        other => Err(other),
    };
    let rng = match in_file(ring, file.to_rng()) {
        Ok(r) => r,
        Err(e) => return axiom_failure(e),
    };
    let Some(unit) = file.unit else {
        let result = json!({ "order": rng.order(), "unital": false, "null": rng.is_null() });
        return Ok(Outcome::new(result, vec![format!("PASS: rng of order {} without unit", rng.order())]));
    };
    let r = match in_file(ring, FiniteRing::from_rng(rng, unit)) {
        Ok(r) => r,
        Err(e) => return axiom_failure(e),
    };
    let mut result = json!({ "order": r.order(), "unital": true, "unit": r.unit() });
    let mut text = vec![format!("PASS: ring of order {} with unit {}", r.order(), r.unit())];
    if let Some(path) = module {
        let m = match load_module(&r, path) {
            Ok(m) => m,
            Err(e) => return axiom_failure(e),
        };
        text.push(format!("PASS: bimodule {} of order {}", describe_group(m.group()), m.order()));
        result["module"] = module_json(&m);
    }
    Ok(Outcome::new(result, text))
}

fn cohomology(input: &ModuleArgs, level: u8, representatives: bool, ctx: &Context) -> Result<Outcome> {
    let m = load_input(input)?;
    let h = cohomology_group(level, &m, &ctx.guard)?;
    let mut result = json!({
        "level": level,
        "group": GroupReport::new(h.group()),
        "cocycle_order": h.cocycle_order(),
        "coboundary_order": h.coboundary_order(),
    });
    if representatives {
        let reps: Vec<Value> = h
            .representatives()
            .into_iter()
            .map(|(class, c)| json!({ "class": class, "cochain": CochainFile::from_cochain(&m, &c) }))
            .collect();
        result["representatives"] = Value::Array(reps);
    }
    let text = vec![
        format!("H{level} = {}", describe_group(h.group())),
        format!("|Z{level}| = {}, |B{level}| = {}", h.cocycle_order(), h.coboundary_order()),
    ];
    Ok(Outcome::new(result, text))
}

fn cocycle_check(input: &ModuleArgs, cochain: &Path, as_structure: bool) -> Result<Outcome> {
    let m = load_input(input)?;
    let f = load_cochain3(&m, cochain)?;
    let (report, what) = if as_structure {
        (is_ann_structure(&m, &f), "17 relations")
    } else {
        (is_cocycle3(&m, &f), "17 relations + regularity")
    };
    let violations = relation_violations(&m, &report);
    let result = json!({ "passed": report.passed(), "failing_relations": report.failing_relations() });
    let mut text = if report.passed() {
        vec![format!("PASS ({what})")]
    } else {
        let rels: Vec<String> = report.failing_relations().iter().map(u8::to_string).collect();
        let noun = if violations.len() == 1 { "violation" } else { "violations" };
        let label = if rels.len() == 1 { "relation" } else { "relations" };
        vec![format!("FAIL: {} {noun} ({label} {})", violations.len(), rels.join(", "))]
    };
    text.extend(violation_lines(&violations));
    Ok(Outcome::new(result, text).with_violations(violations))
}

fn coherence_verify(
    input: &ModuleArgs,
    cochain: Option<&Path>,
    as_structure: bool,
    samples: usize,
    ctx: &Context,
) -> Result<Outcome> {
    let m = load_input(input)?;
    let checker = CoherenceChecker::new(m.ring());
    let Some(path) = cochain else {
        return sampled_agreement(&m, &checker, samples, ctx);
    };
    let f = load_cochain3(&m, path)?;
    let (tables, regular) = if as_structure { (f.clone(), false) } else { (flip_lambda(&m, &f), true) };
    let found = checker.check(&m, &tables, regular);
    let relations = if as_structure { is_ann_structure(&m, &f) } else { is_cocycle3(&m, &f) };
    let agrees = relations.passed() == found.is_empty();
    let count = crate::ann_category::coherence::axiom_diagrams().len();
    let what = if regular { format!("{count} diagrams + regularity") } else { format!("{count} diagrams") };
    let violations = diagram_violations(&m, &found);
    let result = json!({ "passed": found.is_empty(), "agrees_with_relations": agrees });
    let mut text = vec![
        if found.is_empty() { format!("PASS ({what})") } else { format!("FAIL: {} diagram violations", found.len()) },
        format!("agrees with relation check: {}", yes_no(agrees)),
    ];
    text.extend(violation_lines(&violations));
    Ok(Outcome::new(result, text).with_violations(violations))
}

fn random_cochain<C: Cochain>(m: &Bimodule, basis: &Basis, rng: &mut ChaCha8Rng) -> C {
    let v: Vec<u64> = basis.moduli().iter().map(|&d| rng.gen_range(0..d)).collect();
    basis.from_vector(m, &v)
}

/// Random cochains, cocycles and perturbed cocycles; every one must get the
/// same verdict from the diagrams and from the relations.
fn sampled_agreement(m: &Bimodule, checker: &CoherenceChecker, samples: usize, ctx: &Context) -> Result<Outcome> {
    let h3 = cohomology_group(3, m, &ctx.guard)?;
    let reps: Vec<Cochain3> = h3.representatives().into_iter().filter_map(|(_, c)| c.as_three().cloned()).collect();
    let (b2, b3) = (Basis::new::<Cochain2>(m), Basis::new::<Cochain3>(m));
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let (mut cocycles, mut violations) = (0usize, Vec::new());
    for i in 0..samples {
        let f: Cochain3 = if i % 3 == 0 || b3.position_count() == 0 {
            random_cochain(m, &b3, &mut rng)
        } else {
            let g: Cochain2 = random_cochain(m, &b2, &mut rng);
            let mut f = delta2(m, &g).add(m, &reps[rng.gen_range(0..reps.len())]);
            if i % 3 == 2 {
                let (slot, idx) = b3.positions()[rng.gen_range(0..b3.position_count())];
                f.table_mut(slot)[idx] = rng.gen_range(0..m.order());
            }
            f
        };
        let relations = is_cocycle3(m, &f).passed();
        let diagrams = checker.passes(m, &flip_lambda(m, &f), true);
        cocycles += relations as usize;
        if relations != diagrams {
            violations.push(json!({
                "sample": i,
                "relations_pass": relations,
                "diagrams_pass": diagrams,
                "cochain": CochainFile::from_cochain(m, &f.into()),
            }));
        }
    }
    let result = json!({ "samples": samples, "cocycles": cocycles, "disagreements": violations.len(), "seed": ctx.seed });
    let text = vec![
        format!("{samples} samples, {cocycles} cocycles, seed {}", ctx.seed),
        if violations.is_empty() {
            "PASS: diagrams and relations agree on every sample".into()
        } else {
            format!("FAIL: {} disagreements", violations.len())
        },
    ];
    Ok(Outcome::new(result, text).with_violations(violations))
}

fn classify(input: &ModuleArgs, ctx: &Context) -> Result<Outcome> {
    let m = load_input(input)?;
    let h = cohomology_group(3, &m, &ctx.guard)?;
    let structures = classify_ann_structures(&m, &ctx.guard)?;
    let classes: Vec<Vec<u64>> = h.group().elements().collect();
    let entries: Vec<Value> = classes
        .iter()
        .zip(&structures)
        .map(|(class, s)| {
            json!({ "class": class, "structure": CochainFile::from_cochain(&m, &s.tables().clone().into()) })
        })
        .collect();
    let result = json!({ "h3": GroupReport::new(h.group()), "count": structures.len(), "structures": entries });
    let mut text = vec![format!(
        "{} regular structures up to congruence (H3 = {})",
        structures.len(),
        describe_group(h.group())
    )];
    for (class, s) in classes.iter().zip(&structures) {
        let nonzero = nonzero_entries(&m, s.tables()).len();
        text.push(format!("  class {class:?}: {nonzero} nonzero entries"));
    }
    Ok(Outcome::new(result, text))
}

struct FunctorInput {
    pair: HomPair,
    file: FunctorFile,
    source: Cochain3,
    target: Cochain3,
}

fn load_functor(input: &FunctorArgs) -> Result<FunctorInput> {
    let r = load_ring(&input.source_ring)?;
    let m = load_module(&r, &input.source_module)?;
    let r2 = match &input.target_ring {
        Some(p) => load_ring(p)?,
        None => r.clone(),
    };
    let m2 = load_module(&r2, input.target_module.as_deref().unwrap_or(&input.source_module))?;
    let file: FunctorFile = read_json(&input.functor)?;
    let f1 = in_file(&input.functor, file.module_map(&m, &m2))?;
    let pair = HomPair::new(&m, &m2, file.f0.clone(), f1)?;
    let source = match &input.source_cochain {
        Some(p) => load_cochain3(&m, p)?,
        None => Cochain3::zero(r.order()),
    };
    let target = match &input.target_cochain {
        Some(p) => load_cochain3(&m2, p)?,
        None => Cochain3::zero(r2.order()),
    };
    Ok(FunctorInput { pair, file, source, target })
}

fn functor_exists(input: &FunctorArgs, ctx: &Context) -> Result<Outcome> {
    let fi = load_functor(input)?;
    let pulled = fi.pair.pulled();
    Ok(match exists_ann_functor(&fi.pair, &fi.source, &fi.target, &ctx.guard)? {
        FunctorExistence::Exists(g) => Outcome::new(
            json!({ "exists": true, "functor": fi.file.clone().with_data(pulled, &g) }),
            vec!["functor exists".into()],
        ),
        FunctorExistence::Obstructed { class, difference } => Outcome::new(
            json!({
                "exists": false,
                "class": class,
                "difference": CochainFile::from_cochain(pulled, &difference.into()),
            }),
            vec![format!("no functor: pushforward minus pullback has nonzero class {class:?}")],
        ),
    })
}

fn functor_enumerate(input: &FunctorArgs, ctx: &Context) -> Result<Outcome> {
    let fi = load_functor(input)?;
    let pulled = fi.pair.pulled();
    match enumerate_regular_functors(&fi.pair, &fi.source, &fi.target, &ctx.guard) {
        Ok(functors) => {
            let h2 = cohomology_group(2, pulled, &ctx.guard)?;
            let list: Vec<FunctorFile> = functors.iter().map(|f| fi.file.clone().with_data(pulled, &f.data)).collect();
            let result = json!({ "h2": GroupReport::new(h2.group()), "count": list.len(), "functors": list });
            let text = vec![format!(
                "{} functors up to congruence (H2 = {})",
                list.len(),
                describe_group(h2.group())
            )];
            Ok(Outcome::new(result, text))
        }
        Err(Error::NotRegular(diff)) => {
            let violations = nonzero_entries(pulled, &diff);
            let mut text = vec![format!("FAIL: pair is not regular ({} nonzero entries)", violations.len())];
            text.extend(violation_lines(&violations));
            Ok(Outcome::new(json!({ "regular": false }), text).with_violations(violations))
        }
        Err(e) => Err(e),
    }
}

fn functor_aut(input: &FunctorArgs, ctx: &Context) -> Result<Outcome> {
    let fi = load_functor(input)?;
    let pulled = fi.pair.pulled();
    let data = in_file(&input.functor, fi.file.data(pulled))?;
    let func = AnnFunctorRM::new(fi.pair.clone(), data)?;
    let src = AnnCategoryRM::from_cocycle(fi.pair.source(), &fi.source)?;
    let dst = AnnCategoryRM::from_cocycle(fi.pair.target(), &fi.target)?;
    let found = functor_violations(&src, &dst, &func)?;
    if !found.is_empty() {
        let violations = diagram_violations(pulled, &found);
        let mut text = vec![format!("FAIL: not a functor ({} diagram violations)", found.len())];
        text.extend(violation_lines(&violations));
        return Ok(Outcome::new(json!({ "functor": false }), text).with_violations(violations));
    }
    let auts = aut_functor(&func, &ctx.guard)?;
    let z1 = z1_group(pulled, &ctx.guard)?;
    let list: Vec<CochainFile> = auts.into_iter().map(|a| CochainFile::from_cochain(pulled, &a.into())).collect();
    let result = json!({ "count": list.len(), "z1_order": z1.order(), "automorphisms": list });
    let text = vec![format!("{} automorphisms (|Z1| = {})", list.len(), z1.order())];
    Ok(Outcome::new(result, text))
}

fn load_bimult(base: &Path, ctx: &Context) -> Result<BimultRing> {
    let a = in_file(base, read_json::<RingFile>(base)?.to_rng())?;
    enumerate_bimultiplications(&a, &ctx.guard)
}

fn ext_bimult(base: &Path, ring: Option<&Path>, ctx: &Context) -> Result<Outcome> {
    let ma = load_bimult(base, ctx)?;
    let inner: Vec<usize> = (0..ma.order()).filter(|&i| ma.is_inner(i)).collect();
    let c = bicenter(ma.base());
    let mut result = json!({
        "order": ma.order(),
        "unit": ma.unit(),
        "inner": inner,
        "elements": ma.elements(),
        "ring": RingFile::from_rng(ma.ring(), Some(ma.unit())),
        "bicenter": c.elements,
    });
    let mut text = vec![
        format!("{} bimultiplications, {} inner", ma.order(), inner.len()),
        format!("bicenter {:?} ({})", c.elements, describe_group(&c.group)),
    ];
    if let Some(path) = ring {
        let r = load_ring(path)?;
        let lifts = enumerate_regular_lifts(&ma, &r, &ctx.guard)?;
        text.push(format!("{} regular lifts", lifts.len()));
        result["lifts"] = json!(lifts.iter().map(|t| ThetaFile::from_lift(&t.lift)).collect::<Vec<_>>());
    }
    Ok(Outcome::new(result, text))
}

struct ExtensionInput {
    ma: BimultRing,
    ring: FiniteRing,
    theta: crate::extension::RegularHomTheta,
    factor_sets: Option<FactorSetsFile>,
}

fn load_extension(input: &ExtensionArgs, ctx: &Context) -> Result<ExtensionInput> {
    let ma = load_bimult(&input.base, ctx)?;
    let ring = load_ring(&input.ring)?;
    let theta = in_file(&input.theta, read_json::<ThetaFile>(&input.theta)?.to_theta(&ma))?;
    let factor_sets = input.factor_sets.as_deref().map(read_json).transpose()?;
    Ok(ExtensionInput { ma, ring, theta, factor_sets })
}

/// `Ok(Err(outcome))` when the lift is not a regular homomorphism.
fn compute_obstruction(e: &ExtensionInput, ctx: &Context) -> Result<std::result::Result<Obstruction, Outcome>> {
    let problems = is_regular_hom(&e.ma, &e.ring, &e.theta);
    if !problems.is_empty() {
        let violations: Vec<Value> =
            problems.iter().map(|v| json!({ "condition": v.condition, "args": v.args })).collect();
        let mut text = vec!["FAIL: not a regular homomorphism".to_string()];
        text.extend(violation_lines(&violations));
        return Ok(Err(Outcome::new(json!({ "regular": false }), text).with_violations(violations)));
    }
    let ob = match &e.factor_sets {
        Some(fs) => obstruction_with(&e.ma, &e.ring, &e.theta, fs.f.clone(), fs.g.clone(), &ctx.guard)?,
        None => obstruction(&e.ma, &e.ring, &e.theta, &ctx.guard)?,
    };
    Ok(Ok(ob))
}

fn obstruction_json(ob: &Obstruction) -> Value {
    json!({
        "vanishes": ob.vanishes(),
        "factor_sets": FactorSetsFile { f: ob.f.clone(), g: ob.g.clone() },
        "bicenter": ob.bicenter.elements,
        "module": module_json(&ob.module),
        "family": CochainFile::from_cochain(&ob.module, &ob.family.clone().into()),
        "class": ob.class,
        "coset_size": ob.coset_size,
    })
}

fn ext_obstruction(input: &ExtensionArgs, ctx: &Context) -> Result<Outcome> {
    let e = load_extension(input, ctx)?;
    let ob = match compute_obstruction(&e, ctx)? {
        Ok(ob) => ob,
        Err(outcome) => return Ok(outcome),
    };
    let violations = nonzero_entries(&ob.module, &ob.family);
    let structure = is_ann_structure(&ob.module, &ob.family).passed();
    let mut result = obstruction_json(&ob);
    result["is_structure"] = json!(structure);
    let mut text = vec![
        if ob.vanishes() { "obstruction vanishes".to_string() } else { "obstruction is nonzero".to_string() },
        format!("class {:?} in H3 = {}", ob.class, describe_group(cohomology_group(3, &ob.module, &ctx.guard)?.group())),
        format!("satisfies the structure relations: {}", yes_no(structure)),
    ];
    text.extend(violation_lines(&violations));
    Ok(Outcome::new(result, text).with_violations(violations))
}

fn ext_build(input: &ExtensionArgs, ctx: &Context) -> Result<Outcome> {
    let e = load_extension(input, ctx)?;
    let ob = match compute_obstruction(&e, ctx)? {
        Ok(ob) => ob,
        Err(outcome) => return Ok(outcome),
    };
    if !ob.vanishes() {
        let violations = nonzero_entries(&ob.module, &ob.family);
        let mut text = vec!["FAIL: obstruction is nonzero, no extension".to_string()];
        text.extend(violation_lines(&violations));
        return Ok(Outcome::new(obstruction_json(&ob), text).with_violations(violations));
    }
    let ext = build_extension(&e.ma, &e.ring, &e.theta, &ob.f, &ob.g)?;
    let n = ext.ring.order();
    let cyclic = find_isomorphism(ext.ring.rng(), FiniteRing::cyclic(n)?.rng()).is_some();
    let result = json!({
        "ring": RingFile::from_ring(&ext.ring),
        "inclusion": ext.inclusion,
        "projection": ext.projection,
        "factor_sets": FactorSetsFile { f: ob.f, g: ob.g },
        "cyclic": cyclic,
    });
    let mut text = vec![format!("extension ring of order {n}")];
    if cyclic {
        text.push(format!("isomorphic to Z{n}"));
    }
    text.push("exact: A -> S -> R with kernel equal to image".into());
    Ok(Outcome::new(result, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_command() {
        for (name, args) in [
            ("ring-validate", "anncat ring-validate --ring r.json"),
            ("cohomology", "anncat cohomology --level 3 --ring r.json --module m.json"),
            ("cocycle-check", "anncat --format json cocycle-check --ring r.json --module m.json --cochain c.json"),
            ("coherence-verify", "anncat coherence-verify --ring r.json --module m.json --samples 10 --seed 3"),
            ("classify", "anncat classify --ring r.json --module m.json"),
            ("functor-exists", "anncat functor-exists --source-ring r.json --source-module m.json --functor f.json"),
            ("functor-enumerate", "anncat functor-enumerate --source-ring r.json --source-module m.json --functor f.json"),
            ("functor-aut", "anncat functor-aut --source-ring r.json --source-module m.json --functor f.json --size-guard 10"),
            ("ext-bimult", "anncat ext-bimult --base a.json --ring r.json"),
            ("ext-obstruction", "anncat ext-obstruction --base a.json --ring r.json --theta t.json"),
            ("ext-build", "anncat ext-build --base a.json --ring r.json --theta t.json --factor-sets fg.json"),
        ] {
            let cli = Cli::try_parse_from(args.split_whitespace()).unwrap();
            assert_eq!(cli.command.name(), name);
        }
    }

    #[test]
    fn missing_file_is_input_error() {
        let cli = Cli::try_parse_from(["anncat", "ring-validate", "--ring", "/nonexistent/r.json"]).unwrap();
        let r = run(&cli);
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.error.unwrap().kind, "invalid-input");
    }
}
