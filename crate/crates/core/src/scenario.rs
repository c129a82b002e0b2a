//! Scenario files: a category, probe budgets and assertions run in order
//! into a deterministic report.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::axioms::{check_axiom, AxiomTag, ClassCertificate, Verdict, Witness};
use crate::completion::{wic_build, WicSearch};
use crate::complex::Ternary;
use crate::conflation::{is_conflation, is_deflation, is_inflation, ConflationClass};
use crate::derived::{derived_hom_table, is_projective};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hull::{hull_conflation_check, hull_embed, stalk_maps};
use crate::linalg::format_rational;
use crate::percolation::exactness::{ext2_into_a, l2_suite};
use crate::percolation::roof::quotient_hom_dim;
use crate::percolation::verdier::verdier_probe;
use crate::percolation::{check_percolating, PercolatingSpec};
use crate::probe::{ProbeSet, ProbeSpec};
use crate::rep::{is_isomorphic, RepMorphism, Representation};
use crate::spec::{load_category_spec, read_json, relative_to, CategorySpec, RawClass, RawMorphism, SequenceRef};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub category: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub probes: Option<ProbeSpec>,
    #[serde(default)]
    pub assertions: Vec<AssertionSpec>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AssertionSpec {
    #[serde(flatten)]
    pub check: Check,
    /// Free text copied into the report.
    #[serde(default)]
    pub note: Option<String>,
    /// Soft assertions are reported but never fail the run.
    #[serde(default)]
    pub soft: bool,
}

fn holds() -> Verdict {
    Verdict::HoldsOnProbes
}

fn listed() -> WicSearch {
    WicSearch::Listed
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Check {
    CheckAxiom {
        axiom: AxiomTag,
        expect: Verdict,
        /// Objects along the witness chain, compared up to isomorphism.
        #[serde(default)]
        witness: Option<Vec<String>>,
    },
    IsConflation {
        sequence: SequenceRef,
        expect: bool,
    },
    IsDeflation {
        map: RawMorphism,
        expect: bool,
    },
    IsInflation {
        map: RawMorphism,
        expect: bool,
    },
    /// The named objects that are projective, all others are not.
    Projectives {
        expect: Vec<String>,
    },
    DerivedHomTable {
        shifts: Vec<i32>,
        #[serde(default)]
        objects: Option<Vec<String>>,
        /// TSV file the table must reproduce.
        #[serde(default)]
        golden: Option<String>,
        /// Another class whose table must agree.
        #[serde(default)]
        against: Option<RawClass>,
    },
    CheckPercolating {
        #[serde(default = "holds")]
        expect: Verdict,
    },
    QuotientHomTable {
        objects: Vec<String>,
        expect: Vec<Vec<usize>>,
    },
    VerdierProbe,
    Exactness {
        spans: usize,
        #[serde(default)]
        seed: Option<u64>,
    },
    Wic {
        max_level: usize,
        #[serde(default = "listed")]
        search: WicSearch,
        #[serde(default)]
        stabilized_at: Option<usize>,
        /// New objects of levels `1, 2, ...`, compared up to isomorphism.
        #[serde(default)]
        new_objects: Option<Vec<Vec<String>>>,
    },
    HullCheck {
        sequence: SequenceRef,
        expect: Ternary,
    },
}

impl Check {
    pub fn op(&self) -> &'static str {
        match self {
            Check::CheckAxiom { .. } => "check_axiom",
            Check::IsConflation { .. } => "is_conflation",
            Check::IsDeflation { .. } => "is_deflation",
            Check::IsInflation { .. } => "is_inflation",
            Check::Projectives { .. } => "projectives",
            Check::DerivedHomTable { .. } => "derived_hom_table",
            Check::CheckPercolating { .. } => "check_percolating",
            Check::QuotientHomTable { .. } => "quotient_hom_table",
            Check::VerdierProbe => "verdier_probe",
            Check::Exactness { .. } => "exactness",
            Check::Wic { .. } => "wic",
            Check::HullCheck { .. } => "hull_check",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomRow {
    pub src: String,
    pub dst: String,
    pub shift: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssertionResult {
    pub index: usize,
    pub op: String,
    pub subject: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
    pub hard: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<HomRow>,
    #[serde(skip)]
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub probe_budget: String,
    pub passed: bool,
    pub assertions: Vec<AssertionResult>,
}

impl Report {
    pub fn hard_failures(&self) -> usize {
        self.assertions.iter().filter(|a| a.hard && !a.passed).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "tsv" | "tsv-tables" => Ok(Format::Tsv),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub probe_budget: Option<usize>,
    pub exec: Exec,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: None,
            probe_budget: None,
            exec: Exec::Parallel,
        }
    }
}

/// Effective probe spec: file values, then the command-line overrides.
pub fn probe_spec(base: Option<&ProbeSpec>, opts: &RunOptions) -> ProbeSpec {
    let mut p = base.cloned().unwrap_or_default();
    if let Some(s) = opts.seed {
        p.seed = s;
    }
    if let Some(b) = opts.probe_budget {
        p.max_objects = b;
    }
    p
}

struct Ctx<'a> {
    path: &'a Path,
    cat: &'a CategorySpec,
    probes: ProbeSet,
    exec: Exec,
    seed: u64,
}

struct Outcome {
    subject: String,
    expected: String,
    observed: String,
    passed: bool,
    witness: Option<String>,
    detail: Option<String>,
    table: Vec<HomRow>,
}

impl Outcome {
    fn new(subject: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        Outcome {
            subject: subject.into(),
            passed: expected == observed,
            expected,
            observed,
            witness: None,
            detail: None,
            table: Vec::new(),
        }
    }
}

pub fn run_scenario(path: &Path, opts: &RunOptions) -> Result<Report> {
    let sc: Scenario = read_json(path)?;
    let seed = opts.seed.or(sc.seed).unwrap_or(crate::linalg::DEFAULT_SEED);
    let opts = RunOptions { seed: Some(seed), ..opts.clone() };
    let pspec = probe_spec(sc.probes.as_ref(), &opts);
    let mut report = Report {
        scenario: sc.name.clone(),
        seed,
        probe_budget: pspec.describe(),
        passed: true,
        assertions: Vec::new(),
    };
    let Some(cat_path) = &sc.category else {
        if sc.assertions.is_empty() {
            return Ok(report);
        }
        return Err(Error::InvalidInput(format!("{}: assertions need a category", path.display())));
    };
    let cat = load_category_spec(&relative_to(path, cat_path))?;
    let ctx = Ctx {
        path,
        probes: ProbeSet::build(&cat.algebra, &cat.named, pspec)?,
        cat: &cat,
        exec: opts.exec,
        seed,
    };
    for (index, a) in sc.assertions.iter().enumerate() {
        let start = Instant::now();
        let out = match run_check(&ctx, &a.check) {
            Ok(o) => o,
            Err(e @ (Error::InvalidInput(_) | Error::Parse(_))) => return Err(e),
            Err(e) => Outcome {
                subject: String::new(),
                expected: "no error".into(),
                observed: format!("error: {e}"),
                passed: false,
                witness: None,
                detail: None,
                table: Vec::new(),
            },
        };
        report.assertions.push(AssertionResult {
            index,
            op: a.check.op().into(),
            subject: out.subject,
            expected: out.expected,
            observed: out.observed,
            passed: out.passed,
            hard: !a.soft,
            witness: out.witness,
            detail: out.detail,
            note: a.note.clone(),
            table: out.table,
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    report.passed = report.hard_failures() == 0;
    Ok(report)
}

fn names_of<'a>(cat: &'a CategorySpec, names: &[String]) -> Result<Vec<&'a Representation>> {
    names.iter().map(|n| cat.get(n)).collect()
}

fn percolating(cat: &CategorySpec) -> Result<&PercolatingSpec> {
    cat.percolating
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("category has no percolating spec".into()))
}

/// The first named object isomorphic to `x`, or its dimension vector.
pub fn identify(cat: &CategorySpec, x: &Representation) -> String {
    cat.named
        .iter()
        .find(|(_, r)| is_isomorphic(r, x))
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| format!("{:?}", x.dims()))
}

pub fn format_morphism(m: &RepMorphism) -> String {
    let alg = m.src.algebra();
    let mut parts = Vec::new();
    for (v, b) in m.blocks.iter().enumerate() {
        if b.rows() == 0 || b.cols() == 0 {
            continue;
        }
        let rows: Vec<String> = (0..b.rows())
            .map(|i| format!("[{}]", b.row(i).iter().map(format_rational).collect::<Vec<_>>().join(",")))
            .collect();
        parts.push(format!("{}:[{}]", alg.vertices()[v], rows.join(",")));
    }
    format!("{{{}}}", parts.join(" "))
}

pub fn format_witness(cat: &CategorySpec, w: &Witness) -> String {
    let maps: Vec<String> = w
        .maps
        .iter()
        .map(|m| format!("{}: {} -> {} {}", m.label, identify(cat, &m.map.src), identify(cat, &m.map.dst), format_morphism(&m.map)))
        .collect();
    format!("{}; {}", w.description, maps.join("; "))
}

/// Table rows for `derived_hom_table` output, sorted by names then shift.
pub fn hom_rows(names: &[String], shifts: &[i32], table: &[usize]) -> Vec<HomRow> {
    let mut rows = Vec::with_capacity(table.len());
    let mut k = 0;
    for s in names {
        for d in names {
            for &shift in shifts {
                rows.push(HomRow {
                    src: s.clone(),
                    dst: d.clone(),
                    shift,
                    dim: table[k],
                });
                k += 1;
            }
        }
    }
    rows.sort();
    rows
}

pub fn rows_to_tsv(rows: &[HomRow]) -> String {
    let mut out = String::from("src\tdst\tshift\tdim\n");
    for r in rows {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", r.src, r.dst, r.shift, r.dim);
    }
    out
}

pub fn parse_tsv(text: &str, origin: &str) -> Result<Vec<HomRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let bad = || Error::Parse(format!("{origin}:{}:1: expected src, dst, shift, dim", i + 1));
        if f.len() != 4 {
            return Err(bad());
        }
        rows.push(HomRow {
            src: f[0].into(),
            dst: f[1].into(),
            shift: f[2].parse().map_err(|_| bad())?,
            dim: f[3].parse().map_err(|_| bad())?,
        });
    }
    rows.sort();
    Ok(rows)
}

fn first_difference(a: &[HomRow], b: &[HomRow]) -> String {
    if a.len() != b.len() {
        return format!("{} rows vs {}", a.len(), b.len());
    }
    match a.iter().zip(b).find(|(x, y)| x != y) {
        Some((x, y)) => format!("Hom({}, {}[{}]) = {} vs {}", x.src, x.dst, x.shift, x.dim, y.dim),
        None => "equal".into(),
    }
}

fn class_verdict<T>(reports: &[T], verdict: impl Fn(&T) -> Verdict) -> Verdict {
    let vs: Vec<Verdict> = reports.iter().map(verdict).collect();
    if vs.contains(&Verdict::CounterexampleFound) {
        Verdict::CounterexampleFound
    } else if vs.contains(&Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::HoldsOnProbes
    }
}

fn run_check(ctx: &Ctx, check: &Check) -> Result<Outcome> {
    let cat = ctx.cat;
    let class: &ConflationClass = &cat.class;
    match check {
        Check::CheckAxiom { axiom, expect, witness } => {
            let r = check_axiom(class, *axiom, &ctx.probes, ctx.exec)?;
            let mut out = Outcome::new(format!("{axiom} on {}", class.kind_name()), expect, r.verdict);
            if let Some(w) = &r.witness {
                out.witness = Some(format_witness(cat, w));
            }
            if let Some(names) = witness {
                let objs = names_of(cat, names)?;
                let chain: Vec<Representation> = match &r.witness {
                    Some(w) if !w.maps.is_empty() => std::iter::once(w.maps[0].map.src.clone())
                        .chain(w.maps.iter().map(|m| m.map.dst.clone()))
                        .collect(),
                    _ => Vec::new(),
                };
                let same = chain.len() == objs.len() && chain.iter().zip(&objs).all(|(a, b)| is_isomorphic(a, b));
                out.expected = format!("{expect} via {}", names.join(" -> "));
                out.observed = format!(
                    "{} via {}",
                    r.verdict,
                    chain.iter().map(|x| identify(cat, x)).collect::<Vec<_>>().join(" -> ")
                );
                out.passed = r.verdict == *expect && same;
            }
            Ok(out)
        }
        Check::IsConflation { sequence, expect } => {
            let s = cat.sequence_ref(sequence)?;
            let subject = format!("{} -> {} -> {}", identify(cat, s.left()), identify(cat, s.middle()), identify(cat, s.right()));
            Ok(Outcome::new(subject, expect, is_conflation(class, &s)))
        }
        Check::IsDeflation { map, expect } | Check::IsInflation { map, expect } => {
            let m = cat.morphism(map)?;
            let got = if matches!(check, Check::IsDeflation { .. }) { is_deflation(class, &m) } else { is_inflation(class, &m) };
            Ok(Outcome::new(format!("{} -> {}", identify(cat, &m.src), identify(cat, &m.dst)), expect, got))
        }
        Check::Projectives { expect } => {
            names_of(cat, expect)?;
            let got: Vec<String> = ctx
                .exec
                .map(&cat.named, |(n, x)| is_projective(class, x, &ctx.probes).then(|| n.clone()))
                .into_iter()
                .flatten()
                .collect();
            let mut want = expect.clone();
            want.sort();
            let mut got_sorted = got;
            got_sorted.sort();
            Ok(Outcome::new(class.kind_name(), want.join(","), got_sorted.join(",")))
        }
        Check::DerivedHomTable { shifts, objects, golden, against } => {
            let names = objects.clone().unwrap_or_else(|| cat.named.iter().map(|(n, _)| n.clone()).collect());
            let objs: Vec<Representation> = names_of(cat, &names)?.into_iter().cloned().collect();
            let rows = hom_rows(&names, shifts, &derived_hom_table(class, &objs, shifts, ctx.exec)?);
            let mut checks = Vec::new();
            if let Some(g) = golden {
                let p = relative_to(ctx.path, g);
                let text = std::fs::read_to_string(&p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
                checks.push((format!("golden {g}"), first_difference(&rows, &parse_tsv(&text, &p.display().to_string())?)));
            }
            if let Some(raw) = against {
                let other = cat.class_from(raw)?;
                let theirs = hom_rows(&names, shifts, &derived_hom_table(&other, &objs, shifts, ctx.exec)?);
                checks.push((format!("table over {}", other.kind_name()), first_difference(&rows, &theirs)));
            }
            let expected = checks.iter().map(|(w, _)| format!("{w}: equal")).collect::<Vec<_>>().join("; ");
            let observed = checks.iter().map(|(w, d)| format!("{w}: {d}")).collect::<Vec<_>>().join("; ");
            let mut out = Outcome::new(format!("{} objects x {} shifts over {}", names.len(), shifts.len(), class.kind_name()), expected, observed);
            out.table = rows;
            Ok(out)
        }
        Check::CheckPercolating { expect } => {
            let spec = percolating(cat)?;
            let reports = check_percolating(spec, &ctx.probes, ctx.exec);
            let got = class_verdict(&reports, |r| r.verdict);
            let mut out = Outcome::new(spec.describe(), expect, got);
            out.observed = format!(
                "{got} ({})",
                reports.iter().map(|r| format!("{} {}", r.axiom, r.verdict)).collect::<Vec<_>>().join(", ")
            );
            out.passed = got == *expect;
            out.witness = reports.iter().find_map(|r| r.witness.as_ref()).map(|w| format_witness(cat, w));
            Ok(out)
        }
        Check::QuotientHomTable { objects, expect } => {
            let spec = percolating(cat)?;
            let objs = names_of(cat, objects)?;
            if expect.len() != objs.len() || expect.iter().any(|r| r.len() != objs.len()) {
                return Err(Error::InvalidInput("expected table does not match the object list".into()));
            }
            let pairs: Vec<(usize, usize)> = (0..objs.len()).flat_map(|i| (0..objs.len()).map(move |j| (i, j))).collect();
            let dims = ctx.exec.map(&pairs, |&(i, j)| quotient_hom_dim(spec, objs[i], objs[j]));
            let dims: Vec<usize> = dims.into_iter().collect::<Result<_>>()?;
            let mismatches: Vec<String> = pairs
                .iter()
                .zip(&dims)
                .filter(|(&(i, j), &d)| expect[i][j] != d)
                .map(|(&(i, j), &d)| format!("({}, {}) = {d} not {}", objects[i], objects[j], expect[i][j]))
                .collect();
            let mut out = Outcome::new(spec.describe(), "oracle table", if mismatches.is_empty() { "oracle table".into() } else { mismatches.join("; ") });
            out.table = hom_rows(objects, &[0], &dims);
            Ok(out)
        }
        Check::VerdierProbe => {
            let spec = percolating(cat)?;
            let r = verdier_probe(spec, &ctx.probes, ctx.exec)?;
            let summary = r
                .suites
                .iter()
                .map(|s| format!("{}: {}/{}", s.suite, s.checked - s.failures.len(), s.checked))
                .collect::<Vec<_>>()
                .join(", ");
            let mut out = Outcome::new(spec.describe(), "all suites pass", if r.passed() { "all suites pass".into() } else { summary.clone() });
            out.witness = r.suites.iter().flat_map(|s| s.failures.first()).next().cloned();
            out.detail = Some(summary);
            Ok(out)
        }
        Check::Exactness { spans, seed } => {
            let spec = percolating(cat)?;
            let ext = ext2_into_a(spec, &ctx.probes, ctx.exec);
            let l2 = l2_suite(spec, &ctx.probes, *spans, seed.unwrap_or(ctx.seed), ctx.exec)?;
            let summary = [&ext, &l2]
                .iter()
                .map(|s| format!("{}: {}/{}", s.suite, s.checked - s.failures.len(), s.checked))
                .collect::<Vec<_>>()
                .join(", ");
            let ok = ext.passed() && l2.passed();
            let mut out = Outcome::new(spec.describe(), "all suites pass", if ok { "all suites pass".into() } else { summary.clone() });
            out.witness = ext.failures.first().or(l2.failures.first()).cloned();
            out.detail = Some(summary);
            Ok(out)
        }
        Check::Wic { max_level, search, stabilized_at, new_objects } => {
            let gens = cat.generator_objects()?;
            if gens.is_empty() {
                return Err(Error::InvalidInput("category lists no generators".into()));
            }
            let t = wic_build(&gens, *max_level, *search, ctx.seed)?;
            let levels: Vec<Vec<String>> = t.levels[1..]
                .iter()
                .map(|l| {
                    let mut v: Vec<String> = l.new_objects.iter().map(|o| identify(cat, &o.object.realize().0)).collect();
                    v.sort();
                    v
                })
                .collect();
            let show = |ls: &[Vec<String>], st: Option<usize>| {
                let st = st.map_or("never".to_string(), |s| s.to_string());
                format!("levels [{}], stable at {st}", ls.iter().map(|l| l.join(" ")).collect::<Vec<_>>().join(" | "))
            };
            let mut want_levels = new_objects.clone().unwrap_or_else(|| levels.clone());
            for l in &mut want_levels {
                l.sort();
            }
            let want_stable = stabilized_at.or(t.stabilized_at);
            let observed = show(&levels, t.stabilized_at);
            let expected = show(&want_levels, want_stable);
            Ok(Outcome::new(format!("{} generators, {search:?} search", gens.len()), expected, observed))
        }
        Check::HullCheck { sequence, expect } => {
            let s = cat.sequence_ref(sequence)?;
            let cert = ClassCertificate::certify(class, &ctx.probes, ctx.exec)?;
            let objs = [hull_embed(s.left()), hull_embed(s.middle()), hull_embed(s.right())];
            let (u, v) = stalk_maps(&s.inflation, &s.deflation);
            let got = hull_conflation_check(class, [&objs[0], &objs[1], &objs[2]], &u, &v, &cert);
            let subject = format!("{} -> {} -> {}", identify(cat, s.left()), identify(cat, s.middle()), identify(cat, s.right()));
            Ok(Outcome::new(subject, expect, got))
        }
    }
}

/// Renders a report. Timings are only included on request, so the default
/// output is reproducible byte for byte.
pub fn emit_report(r: &Report, format: Format, timings: bool) -> String {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("report serializes");
            if timings {
                for (a, t) in v["assertions"].as_array_mut().expect("array").iter_mut().zip(&r.assertions) {
                    a["millis"] = serde_json::json!(t.millis);
                }
            }
            serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
        }
        Format::Tsv => {
            let mut out = String::from("assertion\tsrc\tdst\tshift\tdim\n");
            for a in &r.assertions {
                for row in &a.table {
                    let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", a.index, row.src, row.dst, row.shift, row.dim);
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!("scenario {} (seed {})\nprobes: {}\n", r.scenario, r.seed, r.probe_budget);
            for a in &r.assertions {
                let mark = match (a.passed, a.hard) {
                    (true, _) => "pass",
                    (false, true) => "FAIL",
                    (false, false) => "warn",
                };
                let _ = writeln!(out, "[{mark}] #{} {} {}", a.index, a.op, a.subject);
                let _ = writeln!(out, "       expected: {}", a.expected);
                let _ = writeln!(out, "       observed: {}", a.observed);
                if let Some(w) = &a.witness {
                    let _ = writeln!(out, "       witness: {w}");
                }
                if let Some(d) = &a.detail {
                    let _ = writeln!(out, "       detail: {d}");
                }
                if let Some(n) = &a.note {
                    let _ = writeln!(out, "       note: {n}");
                }
                if timings {
                    let _ = writeln!(out, "       time: {:.1} ms", a.millis);
                }
            }
            let passed = r.assertions.iter().filter(|a| a.passed).count();
            let _ = writeln!(out, "result: {} ({passed}/{} assertions passed)", if r.passed { "pass" } else { "fail" }, r.assertions.len());
            out
        }
    }
}
