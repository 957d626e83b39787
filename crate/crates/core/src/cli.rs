//! The `rcore` command-line front end.
//!
//! Every subcommand prints one JSON document. Exit status is 0 on success,
//! 1 on invalid input or usage, and 2 when two independent computations
//! disagree (or `reproduce` finds a golden mismatch).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::core_weber::{
    build_restricted_core, restricted_marginal_vectors, verify_inclusion, Game,
};
use crate::document::{CollectionDocument, GameDocument, PosetDocument, SystemDocument};
use crate::error::{Error, Result};
use crate::lattice::{extract_poset, PlayerPoset};
use crate::normal::{
    algo1_irredundant, grabisch_xie_collection, lift_collection, validate_normal,
    weber_collection, CollectionKind, Lift, NormalCollection,
};
use crate::polyhedra::{self, RationalVector, VRepresentation};
use crate::rays::{
    rays_distributive, rays_general, rays_regular, recession_cone, wuc_ray_equality_condition,
    OrderedPairRay, RayReport,
};
use crate::setsystem::{SetSystem, StructureReport};

#[derive(Debug, Parser)]
#[command(name = "rcore", version, about = "Recession rays, normal collections, restricted cores and Weber sets")]
struct Cli {
    /// `report` wraps the result with the command and its inputs; `raw` prints the result alone.
    #[arg(long, value_enum, default_value_t = Format::Report, global = true)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Report,
    Raw,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regularity, weak union-closedness, closedness and heights.
    Classify(StructureArgs),
    /// Closure under union and intersection.
    Closure(StructureArgs),
    /// Maximal chains and the player orders they induce.
    Chains(StructureArgs),
    /// Extremal rays of the recession cone, cross-checked against double description.
    Rays(StructureArgs),
    /// Normal collections, lifted into the system when it is not a lattice.
    Normal(NormalArgs),
    /// Restricted core in H- and V-form.
    Core(GameArgs),
    /// Restricted marginal vectors and the restricted Weber set.
    Weber(GameArgs),
    /// Decide whether the restricted core lies in the restricted Weber set.
    VerifyInclusion(GameArgs),
    /// Run every bundled example and compare with the golden reports.
    Reproduce,
    /// Everything above for one input.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
struct StructureArgs {
    /// Set-system document.
    #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
    system: Option<PathBuf>,
    /// Poset document; the system is its downset lattice.
    #[arg(long)]
    poset: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Irredundant,
    Weber,
    Gx,
    All,
}

#[derive(Debug, Args)]
struct NormalArgs {
    #[command(flatten)]
    input: StructureArgs,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
}

#[derive(Debug, Args)]
struct GameArgs {
    /// Game document.
    #[arg(long)]
    game: PathBuf,
    /// `irredundant`, `weber`, `gx`, or a collection document; omitted means none.
    #[arg(long)]
    collection: Option<String>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long, conflicts_with_all = ["poset", "game"])]
    system: Option<PathBuf>,
    #[arg(long, conflicts_with = "game")]
    poset: Option<PathBuf>,
    /// Game document; its system is analyzed and the inclusion is decided.
    #[arg(long)]
    game: Option<PathBuf>,
}

type Loader<'a> = &'a dyn Fn(&Path) -> Result<String>;

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Read { path: path.to_path_buf(), source })
}

fn parse<T: serde::de::DeserializeOwned>(load: Loader, path: &Path) -> Result<T> {
    serde_json::from_str(&load(path)?)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

fn load_system(load: Loader, input: &StructureArgs) -> Result<SetSystem> {
    match (&input.system, &input.poset) {
        (Some(path), _) => SetSystem::from_document(&parse::<SystemDocument>(load, path)?),
        (None, Some(path)) => Ok(PlayerPoset::from_document(&parse::<PosetDocument>(load, path)?)?.downsets()),
        (None, None) => Err(Error::Document("one of --system or --poset is required".into())),
    }
}

fn load_poset(load: Loader, input: &StructureArgs) -> Result<Option<PlayerPoset>> {
    match &input.poset {
        Some(path) => Ok(Some(PlayerPoset::from_document(&parse::<PosetDocument>(load, path)?)?)),
        None => Ok(None),
    }
}

fn load_game_file(load: Loader, path: &Path) -> Result<Game> {
    Game::from_document(&parse::<GameDocument>(load, path)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn system_value(f: &SetSystem) -> Value {
    to_value(&f.to_document())
}

fn vectors_value(vs: &[RationalVector]) -> Value {
    Value::Array(vs.iter().map(|v| Value::String(v.to_string())).collect())
}

fn vrep_value(v: &VRepresentation) -> Value {
    json!({
        "empty": v.empty,
        "bounded": v.is_bounded(),
        "vertices": vectors_value(&v.vertices),
        "rays": vectors_value(&v.rays),
        "lineality": vectors_value(&v.lineality),
    })
}

fn classify(f: &SetSystem) -> Value {
    let StructureReport {
        is_regular,
        is_weakly_union_closed,
        is_union_intersection_closed,
        height,
        closure_height,
    } = f.classify();
    json!({
        "n": f.n(),
        "size": f.len(),
        "regular": is_regular,
        "weakly_union_closed": is_weakly_union_closed,
        "union_intersection_closed": is_union_intersection_closed,
        "height": height,
        "closure_height": closure_height,
    })
}

fn closure(f: &SetSystem) -> Value {
    let c = f.closure();
    let added: Vec<Vec<usize>> = c
        .sets()
        .iter()
        .filter(|&&s| !f.contains(s))
        .map(|s| s.labels())
        .collect();
    json!({ "closure": system_value(&c), "added": added })
}

fn chains(f: &SetSystem) -> Value {
    let chains: Vec<Value> = f
        .maximal_chains()
        .iter()
        .map(|c| {
            let order = c
                .player_order()
                .map(|o| o.into_iter().map(|p| p + 1).collect::<Vec<_>>());
            json!({ "sets": to_value(&c.sets()), "order": order })
        })
        .collect();
    json!({ "count": chains.len(), "chains": chains })
}

fn pair_vectors(rays: &[OrderedPairRay], n: usize) -> Vec<RationalVector> {
    let mut v: Vec<RationalVector> = rays.iter().map(|r| r.to_vector(n)).collect();
    v.sort();
    v
}

fn check_against_dd(name: &str, rays: &[OrderedPairRay], report: &RayReport, n: usize) -> Result<()> {
    if report.lineality.is_empty() && pair_vectors(rays, n) == report.extremal_rays {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!(
            "{name} rays disagree with double description"
        )))
    }
}

fn rays_value(f: &SetSystem, poset: Option<&PlayerPoset>) -> Result<Value> {
    let n = f.n();
    let report = rays_general(f)?;
    let lattice_poset = match poset {
        Some(p) => Some(p.clone()),
        None if f.is_union_intersection_closed() && f.height() == n => Some(extract_poset(f)?),
        None => None,
    };
    let distributive = match &lattice_poset {
        Some(p) => {
            let rays = rays_distributive(p);
            check_against_dd("covering-pair", &rays, &report, n)?;
            Some(rays)
        }
        None => None,
    };
    // chain orders only see the pair-form part of the cone
    let regular = if f.is_regular() {
        let rays = rays_regular(f)?;
        let pair_form: Vec<RationalVector> = report
            .extremal_rays
            .iter()
            .filter(|r| OrderedPairRay::from_vector(r).is_some())
            .cloned()
            .collect();
        let matches = pair_vectors(&rays, n) == pair_form;
        Some((rays, matches))
    } else {
        None
    };
    let wuc = if f.is_weakly_union_closed() {
        Some(wuc_ray_equality_condition(f)?)
    } else {
        None
    };
    Ok(json!({
        "extremal_rays": vectors_value(&report.extremal_rays),
        "lineality": vectors_value(&report.lineality),
        "pair_rays": report.pair_rays.as_ref().map(|r| pair_strings(r)),
        "all_pair_form": report.all_pair_form,
        "closure_extremal_rays": vectors_value(&report.closure_extremal_rays),
        "closure_lineality": vectors_value(&report.closure_lineality),
        "equals_closure_cone": report.equals_closure_cone,
        "closure_height_is_n": report.closure_height_is_n,
        "distributive_rays": distributive.as_deref().map(pair_strings),
        "regular_rays": regular.as_ref().map(|(r, _)| pair_strings(r)),
        "regular_rays_match_pair_form": regular.as_ref().map(|(_, m)| *m),
        "regular_rays_complete": regular.as_ref().map(|_| report.all_pair_form),
        "wuc_condition": wuc,
    }))
}

fn pair_strings(rays: &[OrderedPairRay]) -> Vec<String> {
    rays.iter().map(|r| r.to_string()).collect()
}

/// Lattice the collections are computed on: `F` itself when it is one,
/// otherwise its closure.
struct Basis {
    poset: PlayerPoset,
    lattice: SetSystem,
}

fn basis_for(f: &SetSystem, poset: Option<&PlayerPoset>) -> Result<Basis> {
    if let Some(p) = poset {
        return Ok(Basis {
            poset: p.clone(),
            lattice: f.clone(),
        });
    }
    let lattice = if f.is_union_intersection_closed() {
        f.clone()
    } else {
        f.closure()
    };
    Ok(Basis {
        poset: extract_poset(&lattice)?,
        lattice,
    })
}

#[derive(Debug, Serialize)]
struct CollectionEntry {
    method: CollectionKind,
    collection: NormalCollection,
    nested: bool,
    in_system: bool,
    normal_for_lattice: bool,
    lift: Option<Lift>,
    lift_error: Option<String>,
    /// The collection usable on the system itself.
    effective: Option<NormalCollection>,
    normal_for_system: Option<bool>,
}

fn collection_entries(f: &SetSystem, basis: &Basis, method: Method) -> Result<Vec<CollectionEntry>> {
    let irredundant = algo1_irredundant(&basis.poset);
    let mut raw = Vec::new();
    if matches!(method, Method::Irredundant | Method::All) {
        raw.push(irredundant.clone());
    }
    if matches!(method, Method::Weber | Method::All) {
        raw.push(weber_collection(&irredundant)?);
    }
    if matches!(method, Method::Gx | Method::All) {
        raw.push(grabisch_xie_collection(&basis.poset));
    }
    let lattice_rays = rays_distributive(&basis.poset);
    raw.into_iter()
        .map(|collection| {
            let in_system = collection.sets().iter().all(|&s| f.contains(s));
            let normal_for_lattice = validate_normal(&basis.lattice, &collection)?;
            let (lift, lift_error, effective) = if in_system {
                (None, None, Some(collection.clone()))
            } else {
                match lift_collection(f, &collection, &lattice_rays) {
                    Ok(l) => {
                        let eff = l.collection.clone();
                        (Some(l), None, Some(eff))
                    }
                    Err(e @ Error::NoFeasibleLift(_)) => (None, Some(e.to_string()), None),
                    Err(e) => return Err(e),
                }
            };
            let normal_for_system = effective
                .as_ref()
                .map(|c| validate_normal(f, c))
                .transpose()?;
            if normal_for_system == Some(false) {
                return Err(Error::Inconsistent(format!(
                    "{} collection does not bound the core",
                    collection.kind()
                )));
            }
            Ok(CollectionEntry {
                method: collection.kind(),
                nested: collection.is_nested(),
                collection,
                in_system,
                normal_for_lattice,
                lift,
                lift_error,
                effective,
                normal_for_system,
            })
        })
        .collect()
}

fn resolve_collection(load: Loader, v: &Game, choice: Option<&str>) -> Result<NormalCollection> {
    let f = v.system();
    let method = match choice {
        None => return Ok(NormalCollection::empty(CollectionKind::Custom)),
        Some("irredundant") => Method::Irredundant,
        Some("weber") => Method::Weber,
        Some("gx") | Some("grabisch_xie") => Method::Gx,
        Some(path) => {
            let doc: CollectionDocument = parse(load, Path::new(path))?;
            return NormalCollection::from_document(&doc, f.n());
        }
    };
    let basis = basis_for(f, None)?;
    let entry = collection_entries(f, &basis, method)?
        .pop()
        .expect("one method requested");
    entry
        .effective
        .ok_or_else(|| Error::NoFeasibleLift(entry.lift_error.unwrap_or_default()))
}

fn core_value(v: &Game, nc: &NormalCollection) -> Result<Value> {
    let h = build_restricted_core(v, nc)?;
    let gens = polyhedra::dd_generators(&h);
    Ok(json!({
        "collection": to_value(nc),
        "inequalities": to_value(&h.inequalities()),
        "equalities": to_value(&h.equalities()),
        "generators": vrep_value(&gens),
    }))
}

fn weber_value(v: &Game, nc: &NormalCollection) -> Result<Value> {
    let vectors = restricted_marginal_vectors(v, nc)?;
    let weber = VRepresentation::polytope(
        v.system().n(),
        vectors.iter().map(|m| m.payoff.clone()).collect(),
    );
    Ok(json!({
        "collection": to_value(nc),
        "marginal_vectors": to_value(&vectors),
        "vertices": vectors_value(&weber.vertices),
    }))
}

fn inclusion_value(v: &Game, nc: &NormalCollection) -> Result<Value> {
    let verdict = verify_inclusion(v, nc)?;
    Ok(json!({
        "collection": to_value(nc),
        "holds": verdict.holds,
        "witness": verdict.witness.as_ref().map(|w| w.to_string()),
        "witness_kind": to_value(&verdict.witness_kind),
        "weber_in_core": verdict.weber_in_core,
        "equal": verdict.equal(),
        "core": vrep_value(&verdict.core),
        "weber_vertices": vectors_value(&verdict.weber.vertices),
    }))
}

fn analyze(f: &SetSystem, poset: Option<&PlayerPoset>, game: Option<&Game>) -> Result<Value> {
    let bounded_before = polyhedra::is_bounded(&recession_cone(f));
    let (collections, collections_error) = match basis_for(f, poset) {
        Ok(basis) => (Some(collection_entries(f, &basis, Method::All)?), None),
        Err(e @ (Error::NotClosed | Error::HeightDeficient { .. })) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let inclusion = match (game, &collections) {
        (Some(v), Some(entries)) => {
            let weber = entries
                .iter()
                .find(|e| e.method == CollectionKind::Weber)
                .and_then(|e| e.effective.clone());
            Some(match weber {
                Some(nc) => match inclusion_value(v, &nc) {
                    Ok(x) => x,
                    Err(e @ Error::Inconsistent(_)) => return Err(e),
                    Err(e) => json!({ "error": e.to_string() }),
                },
                None => json!({ "error": "the Weber collection has no lift into the system" }),
            })
        }
        (Some(v), None) => Some(inclusion_value(v, &NormalCollection::empty(CollectionKind::Custom))?),
        _ => None,
    };
    Ok(json!({
        "structure": classify(f),
        "rays": rays_value(f, poset)?,
        "bounded_before_restriction": bounded_before,
        "collections": collections.as_ref().map(to_value),
        "collections_error": collections_error,
        "inclusion": inclusion,
    }))
}

fn execute(command: &Command, load: Loader) -> Result<Value> {
    match command {
        Command::Classify(input) => Ok(classify(&load_system(load, input)?)),
        Command::Closure(input) => Ok(closure(&load_system(load, input)?)),
        Command::Chains(input) => Ok(chains(&load_system(load, input)?)),
        Command::Rays(input) => {
            let f = load_system(load, input)?;
            rays_value(&f, load_poset(load, input)?.as_ref())
        }
        Command::Normal(args) => {
            let f = load_system(load, &args.input)?;
            let poset = load_poset(load, &args.input)?;
            let basis = basis_for(&f, poset.as_ref())?;
            let entries = collection_entries(&f, &basis, args.method)?;
            Ok(json!({
                "computed_on_closure": basis.lattice != f,
                "poset_height": basis.poset.height(),
                "collections": to_value(&entries),
            }))
        }
        Command::Core(args) => {
            let v = load_game_file(load, &args.game)?;
            core_value(&v, &resolve_collection(load, &v, args.collection.as_deref())?)
        }
        Command::Weber(args) => {
            let v = load_game_file(load, &args.game)?;
            weber_value(&v, &resolve_collection(load, &v, args.collection.as_deref())?)
        }
        Command::VerifyInclusion(args) => {
            let v = load_game_file(load, &args.game)?;
            inclusion_value(&v, &resolve_collection(load, &v, args.collection.as_deref())?)
        }
        Command::Analyze(args) => {
            if let Some(path) = &args.game {
                let v = load_game_file(load, path)?;
                return analyze(v.system(), None, Some(&v));
            }
            let input = StructureArgs {
                system: args.system.clone(),
                poset: args.poset.clone(),
            };
            let f = load_system(load, &input)?;
            analyze(&f, load_poset(load, &input)?.as_ref(), None)
        }
        Command::Reproduce => reproduce(),
    }
}

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name)))
    };
}

const FIXTURES: &[(&str, &str)] = &[
    fixture!("line_system.json"),
    fixture!("regular4.json"),
    fixture!("regular5.json"),
    fixture!("nine_players.json"),
    fixture!("game5.json"),
    fixture!("game5_collection.json"),
    fixture!("wuc_counterexample.json"),
    fixture!("regular_non_pair.json"),
];

macro_rules! case {
    ($name:literal, [$($arg:literal),*]) => {
        ($name, &[$($arg),*], include_str!(concat!("../fixtures/golden/", $name, ".json")))
    };
}

type Case = (&'static str, &'static [&'static str], &'static str);

const CASES: &[Case] = &[
    case!("line-classify", ["classify", "--system", "line_system.json"]),
    case!("line-closure", ["closure", "--system", "line_system.json"]),
    case!("line-rays", ["rays", "--system", "line_system.json"]),
    case!("regular4-classify", ["classify", "--system", "regular4.json"]),
    case!("regular4-rays", ["rays", "--system", "regular4.json"]),
    case!("regular4-normal", ["normal", "--system", "regular4.json", "--method", "all"]),
    case!("regular5-chains", ["chains", "--system", "regular5.json"]),
    case!("regular5-rays", ["rays", "--system", "regular5.json"]),
    case!("nine-rays", ["rays", "--poset", "nine_players.json"]),
    case!("nine-normal", ["normal", "--poset", "nine_players.json", "--method", "all"]),
    case!("game5-core", ["core", "--game", "game5.json", "--collection", "game5_collection.json"]),
    case!("game5-weber", ["weber", "--game", "game5.json", "--collection", "game5_collection.json"]),
    case!("game5-inclusion", ["verify-inclusion", "--game", "game5.json", "--collection", "game5_collection.json"]),
    case!("wuc-rays", ["rays", "--system", "wuc_counterexample.json"]),
    case!("non-pair-rays", ["rays", "--system", "regular_non_pair.json"]),
];

fn embedded(path: &Path) -> Result<String> {
    let name = path.to_string_lossy();
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| (*text).to_owned())
        .ok_or_else(|| Error::Document(format!("no bundled fixture {name}")))
}

/// Result of one bundled case, as `reproduce` would print it with `--format raw`.
pub fn run_case(args: &[&str]) -> Result<Value> {
    let cli = Cli::try_parse_from(std::iter::once("rcore").chain(args.iter().copied()))
        .map_err(|e| Error::Document(e.to_string()))?;
    execute(&cli.command, &embedded)
}

fn reproduce() -> Result<Value> {
    let mut cases = Vec::new();
    let mut all = true;
    for (name, args, golden) in CASES {
        let expected: Value = serde_json::from_str(golden)?;
        let status = match run_case(args) {
            Ok(actual) if actual == expected => "match".to_owned(),
            Ok(_) => "mismatch".to_owned(),
            Err(e) => format!("error: {e}"),
        };
        all &= status == "match";
        cases.push(json!({ "case": name, "command": args.join(" "), "status": status }));
    }
    Ok(json!({ "all_match": all, "cases": cases }))
}

/// Names and arguments of the bundled cases.
pub fn bundled_cases() -> impl Iterator<Item = (&'static str, &'static [&'static str])> {
    CASES.iter().map(|&(name, args, _)| (name, args))
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Classify(_) => "classify",
        Command::Closure(_) => "closure",
        Command::Chains(_) => "chains",
        Command::Rays(_) => "rays",
        Command::Normal(_) => "normal",
        Command::Core(_) => "core",
        Command::Weber(_) => "weber",
        Command::VerifyInclusion(_) => "verify-inclusion",
        Command::Reproduce => "reproduce",
        Command::Analyze(_) => "analyze",
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match execute(&cli.command, &read_file) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let failed_reproduction = matches!(cli.command, Command::Reproduce) && result["all_match"] != json!(true);
    let output = match cli.format {
        Format::Raw => result,
        Format::Report => json!({ "command": command_name(&cli.command), "result": result }),
    };
    let mut text = serde_json::to_string_pretty(&output).expect("json values serialize");
    text.push('\n');
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    if failed_reproduction {
        eprintln!("error: some bundled cases differ from their golden reports");
        return 2;
    }
    0
}
