//! The subcommands. Each writes a plain-text report to `out` and returns
//! the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use closure_space::maps::{self, RegularFailure};
use closure_space::oracle::{self, SuiteReport, SuiteScope, LIFT_SEARCH_LIMIT, MAX_EXHAUSTIVE_MAP_N};
use closure_space::{Error, FiniteClosureSpace, GroundSet, Resolution, SpaceMap, Subset};

use crate::document::{self, LiftDocument, MapDocument, ResolutionDocument};
use crate::{ground_cap, space_error_code, CliError};

#[derive(Debug, Parser)]
#[command(name = "closure-resolve", version, about = "Finite closure spaces and their topological resolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a space document and summarize the space.
    Validate { path: PathBuf },
    /// Compute the topological resolution of a space.
    Resolve(ResolveArgs),
    /// Continuity, openness and regularity of a map.
    CheckMap { path: PathBuf },
    /// Lift a regular map to the resolutions.
    Lift {
        path: PathBuf,
        /// Write the lifted map as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate spaces and check the registered properties on them.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    pub path: PathBuf,
    /// Write the Hasse diagram in Graphviz format here.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the resolution as JSON here. Without `--dot` or `--json` the
    /// JSON goes to standard output.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Draw each class of equivalent points as one node.
    #[arg(long)]
    pub collapse: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    /// Only count the spaces.
    None,
    /// Properties of single spaces.
    Spaces,
    /// Space properties plus the map battery on all smaller sizes.
    All,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of points.
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub verify: Verify,
    /// Worker threads (default: one per core).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also check this many random spaces.
    #[arg(long, default_value_t = 0)]
    pub seed_count: u64,
    /// Size of the random spaces.
    #[arg(long, default_value_t = 5)]
    pub sample_n: usize,
    /// Write the full report as JSON here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Include timings in the report (making it run-dependent).
    #[arg(long)]
    pub timings: bool,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Validate { path } => validate(&path, out),
        Command::Resolve(args) => resolve(&args, out),
        Command::CheckMap { path } => check_map(&path, out),
        Command::Lift { path, out: target } => lift(&path, target.as_deref(), out),
        Command::Enumerate(args) => enumerate(&args, out),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list(g: &GroundSet, a: Subset) -> String {
    if a.is_empty() {
        "(none)".into()
    } else {
        a.iter().map(|i| g.label(i)).collect::<Vec<_>>().join(", ")
    }
}

/// Renders subsets inside library errors with element names.
fn describe(e: &Error, g: &GroundSet) -> String {
    let f = |a: &Subset| g.format_subset(*a);
    let l = |i: usize| g.label(i);
    match e {
        Error::NotIntersectionClosed(a, b) => format!(
            "closed family is not closed under intersection: {} ∩ {} is missing",
            f(a),
            f(b)
        ),
        Error::NotUnionClosed(a, b) => {
            format!("open family is not closed under union: {} ∪ {} is missing", f(a), f(b))
        }
        Error::NotExtensive(a) => format!("closure is not extensive at {}", f(a)),
        Error::NotMonotone(a, b) => format!(
            "closure is not monotone: {} ⊆ {} but cl {} ⊄ cl {}",
            f(a),
            f(b),
            f(a),
            f(b)
        ),
        Error::NotIdempotent(a) => format!("closure is not idempotent at {}", f(a)),
        Error::NotReflexive(t) => format!("preorder is not reflexive at {}", l(*t)),
        Error::NotTransitive(t, s, r) => format!(
            "preorder is not transitive: {} <= {} <= {} but not {} <= {}",
            l(*t),
            l(*s),
            l(*r),
            l(*t),
            l(*r)
        ),
        other => other.to_string(),
    }
}

// Loads a space, turning axiom violations into a report and exit code 1.
fn load_space(path: &Path, out: &mut dyn Write) -> Result<Result<FiniteClosureSpace, u8>, CliError> {
    let cap = ground_cap()?;
    let doc: document::SpaceDocument = document::read_json(path)?;
    match doc.build(cap) {
        Ok(space) => Ok(Ok(space)),
        Err(CliError::Space(e)) if space_error_code(&e) == 1 => {
            // names are known once the ground set itself is valid
            let g = GroundSet::named_with_cap(doc.elements.clone(), cap)?;
            writeln!(out, "invalid: {}", describe(&e, &g))?;
            Ok(Err(1))
        }
        Err(e) => Err(e),
    }
}

pub fn validate(path: &Path, out: &mut dyn Write) -> Result<u8, CliError> {
    let space = match load_space(path, out)? {
        Ok(space) => space,
        Err(code) => return Ok(code),
    };
    let g = space.ground();
    let essential = space.essential_points();
    let regular = space.regular_points();
    writeln!(out, "valid closure space")?;
    writeln!(out, "elements: {}", space.len())?;
    writeln!(out, "closed sets: {}", space.closed_sets().len())?;
    writeln!(out, "open sets: {}", space.open_sets().len())?;
    writeln!(out, "essential points: {}", list(g, essential))?;
    writeln!(out, "inessential points: {}", list(g, space.full().difference(essential)))?;
    writeln!(out, "regular points: {}", list(g, regular))?;
    writeln!(out, "singular points: {}", list(g, space.full().difference(regular)))?;
    writeln!(out, "topological: {}", yes(space.is_topological()))?;
    Ok(0)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

pub fn resolve(args: &ResolveArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let space = match load_space(&args.path, out)? {
        Ok(space) => space,
        Err(code) => return Ok(code),
    };
    let r = Resolution::resolve(&space);
    let json = to_json(&ResolutionDocument::of(&r));
    if args.dot.is_none() && args.json.is_none() {
        out.write_all(json.as_bytes())?;
        return Ok(0);
    }
    writeln!(
        out,
        "{} points over {} elements, {} equivalence classes",
        r.len(),
        space.len(),
        r.equivalence_classes().len()
    )?;
    if let Some(path) = &args.json {
        write_file(path, &json)?;
        writeln!(out, "wrote {}", path.display())?;
    }
    if let Some(path) = &args.dot {
        write_file(path, &r.export_dot(args.collapse))?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(0)
}

fn load_map(path: &Path) -> Result<(MapDocument, FiniteClosureSpace, FiniteClosureSpace), CliError> {
    let doc: MapDocument = document::read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let (x, y) = doc.spaces(base, ground_cap()?)?;
    Ok((doc, x, y))
}

fn family_text(g: &GroundSet, members: impl IntoIterator<Item = Subset>) -> String {
    members.into_iter().map(|a| g.format_subset(a)).collect::<Vec<_>>().join(", ")
}

fn regular_failure_text(f: &SpaceMap<'_>, x: usize, m: Subset, failure: &RegularFailure) -> String {
    let (gx, gy) = (f.domain().ground(), f.codomain().ground());
    let y = f.apply(x);
    let head = format!(
        "at {}, M = {}: ↑{} ∩ U({})",
        gx.label(x),
        gx.format_subset(m),
        gy.format_subset(f.image(m)),
        gy.label(y)
    );
    match failure {
        RegularFailure::Empty => format!("{head} is empty ({} is inessential)", gy.label(y)),
        RegularFailure::NotPrincipal(mins) => {
            format!("{head} is not principal, minimal members {}", family_text(gy, mins.iter()))
        }
        RegularFailure::NotMinimal(k) => format!(
            "{head} is generated by {}, not a minimal neighborhood of {}",
            gy.format_subset(*k),
            gy.label(y)
        ),
    }
}

pub fn check_map(path: &Path, out: &mut dyn Write) -> Result<u8, CliError> {
    let (doc, x, y) = load_map(path)?;
    let f = SpaceMap::new(&x, &y, doc.assignment.clone())?;
    let (gx, gy) = (x.ground(), y.ground());
    let comb = f.is_comb_continuous()?;
    let witness = f.regular_witness();
    writeln!(out, "continuous: {}", yes(f.is_continuous()))?;
    writeln!(out, "combinatorially continuous: {}", yes(comb))?;
    writeln!(out, "open: {}", yes(f.is_open_map()))?;
    writeln!(out, "regular: {}", yes(witness.is_regular()))?;
    for (p, m) in f.continuity_failures() {
        writeln!(
            out,
            "not continuous at {}: f({}) = {} lies in no minimal neighborhood of {}",
            gx.label(p),
            gx.format_subset(m),
            gy.format_subset(f.image(m)),
            gy.label(f.apply(p))
        )?;
    }
    for (p, v) in f.comb_failures() {
        writeln!(
            out,
            "not combinatorially continuous at {}: preimage {} of neighborhood {} of {} is not a neighborhood",
            gx.label(p),
            gx.format_subset(f.preimage(v)),
            gy.format_subset(v),
            gy.label(f.apply(p))
        )?;
    }
    for (p, m) in f.open_failures() {
        writeln!(
            out,
            "not open at {}: f({}) = {} is not open",
            gx.label(p),
            gx.format_subset(m),
            gy.format_subset(f.image(m))
        )?;
    }
    for e in witness.entries() {
        if let Err(failure) = &e.outcome {
            writeln!(out, "not regular {}", regular_failure_text(&f, e.x, e.m, failure))?;
        }
    }
    Ok(0)
}

pub fn lift(path: &Path, target: Option<&Path>, out: &mut dyn Write) -> Result<u8, CliError> {
    let (doc, x, y) = load_map(path)?;
    let f = SpaceMap::new(&x, &y, doc.assignment.clone())?;
    let (rx, ry) = (Resolution::resolve(&x), Resolution::resolve(&y));
    match maps::lift(&f, &rx, &ry) {
        Ok(big) => {
            for t in 0..rx.len() {
                writeln!(out, "F({}) = {}", rx.point_label(t), ry.point_label(big.apply(t)))?;
            }
            let square = big.commutes_with(&f) && big.is_continuous();
            writeln!(
                out,
                "commuting square: π∘F = f∘π {}, F continuous {}",
                yes(big.commutes_with(&f)),
                yes(big.is_continuous())
            )?;
            if !square {
                return Err(Error::InternalDisagreement("lift fails the commuting square".into()).into());
            }
            if let Some(path) = target {
                let lifted = LiftDocument {
                    source: document::point_records(&rx),
                    target: document::point_records(&ry),
                    assignment: big.assignment().to_vec(),
                };
                write_file(path, &to_json(&lifted))?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(0)
        }
        Err(Error::NotRegular { .. }) => {
            let witness = f.regular_witness();
            let e = witness.first_failure().expect("a non-regular map has a failing entry");
            let failure = e.outcome.as_ref().expect_err("failing entry");
            writeln!(out, "not regular {}", regular_failure_text(&f, e.x, e.m, failure))?;
            match maps::continuous_commuting_lifts(&f, &rx, &ry, LIFT_SEARCH_LIMIT)? {
                Some(lifts) => {
                    writeln!(out, "{} continuous commuting lifts exist", lifts.len())?;
                    for l in &lifts {
                        let images: Vec<String> = (0..rx.len()).map(|t| ry.point_label(l.apply(t))).collect();
                        writeln!(out, "  {}", images.join(" "))?;
                    }
                }
                None => writeln!(
                    out,
                    "more than {LIFT_SEARCH_LIMIT} commuting assignments; continuous lifts not counted"
                )?,
            }
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn scope_for(args: &EnumerateArgs) -> Result<SuiteScope, CliError> {
    let mut scope = SuiteScope::spaces_only(args.n);
    if args.verify == Verify::All {
        if args.n > MAX_EXHAUSTIVE_MAP_N {
            return Err(Error::TooLarge(format!(
                "the map battery is limited to {MAX_EXHAUSTIVE_MAP_N} points, got {}",
                args.n
            ))
            .into());
        }
        scope.map_sizes = (0..=args.n).collect();
    }
    if args.seed_count > 0 {
        scope.sample = Some((args.sample_n, args.seed_count));
    }
    scope.jobs = args.jobs;
    Ok(scope)
}

// Drops every timing field so the report only depends on the input.
fn strip_timings(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("seconds");
            map.values_mut().for_each(strip_timings);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn print_report(report: &SuiteReport, timings: bool, out: &mut dyn Write) -> Result<(), CliError> {
    for case in &report.cases {
        if case.instances == 0 {
            continue;
        }
        let mut line = format!(
            "{}: {} instances, {} not applicable, {} counterexamples",
            case.id, case.instances, case.not_applicable, case.counterexample_count
        );
        if case.skipped > 0 {
            let reasons: Vec<&str> = case.skip_reasons.iter().map(String::as_str).collect();
            line.push_str(&format!(", {} skipped ({})", case.skipped, reasons.join("; ")));
        }
        if timings {
            line.push_str(&format!(", {:.3}s", case.time.as_secs_f64()));
        }
        writeln!(out, "  {line}")?;
        for c in &case.counterexamples {
            writeln!(out, "    instance {}: {}", c.instance, c.detail)?;
            writeln!(out, "      {}", serde_json::to_string(&c.record).expect("records serialize"))?;
        }
    }
    Ok(())
}

pub fn enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if args.verify == Verify::None {
        let count = oracle::enumerate_moore_families(args.n)?.count();
        writeln!(out, "{count} spaces")?;
        return Ok(0);
    }
    let scope = scope_for(args)?;
    let report = oracle::run_suite(&scope)?;
    writeln!(out, "properties checked:")?;
    print_report(&report, args.timings, out)?;
    if report.sampled_spaces > 0 {
        writeln!(out, "random spaces on {} points: {}", args.sample_n, report.sampled_spaces)?;
    }
    if !scope.map_sizes.is_empty() {
        writeln!(out, "maps between spaces on at most {} points: {}", args.n, report.maps)?;
    }
    if args.timings {
        writeln!(out, "wall time: {:.3}s", report.wall.as_secs_f64())?;
    }
    if let Some(path) = &args.json {
        let mut value = serde_json::to_value(&report).expect("report serializes");
        if !args.timings {
            strip_timings(&mut value);
        }
        write_file(path, &to_json(&value))?;
    }
    let count = report.counterexample_count();
    writeln!(out, "{} spaces, {count} counterexamples", report.spaces)?;
    Ok(if count == 0 { 0 } else { 1 })
}
