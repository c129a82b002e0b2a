use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rexact::axioms::{check_axiom, AxiomTag, ClassCertificate, Verdict};
use rexact::completion::{wic_build, WicSearch};
use rexact::complex::{Complex, Ternary};
use rexact::derived::{derived_hom, derived_hom_table};
use rexact::hull::{hull_conflation_check, hull_embed, stalk_maps};
use rexact::percolation::roof::quotient_hom_dim;
use rexact::percolation::verdier::verdier_probe;
use rexact::percolation::{check_percolating, PercolatingSpec};
use rexact::probe::ProbeSet;
use rexact::scenario::{emit_report, format_witness, hom_rows, identify, probe_spec, rows_to_tsv, run_scenario, Format, HomRow, RunOptions};
use rexact::spec::{load_category_spec, read_json, CategorySpec, RawComplex, RawPercolating, SequenceRef};
use rexact::{Error, Exec, Result};

#[derive(Parser)]
#[command(name = "rexact", version, about = "Workbench for one-sided exact structures on quiver representations")]
struct Cli {
    /// Seed for probe morphisms and randomized searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Maximum number of probe objects.
    #[arg(long, global = true)]
    probe_budget: Option<usize>,
    /// Output format: text, json or tsv.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ClassArg {
    /// Category file; its class is used (all short exact sequences if absent).
    #[arg(long = "class")]
    class: PathBuf,
}

#[derive(Args)]
struct PercArgs {
    #[command(flatten)]
    class: ClassArg,
    /// Percolating spec file, overriding the one in the category.
    #[arg(long)]
    percolating: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check axioms of the conflation class on probes.
    CheckAxioms {
        #[command(flatten)]
        class: ClassArg,
        /// Axioms to check (default: all ten).
        #[arg(long = "axiom")]
        axioms: Vec<String>,
    },
    /// Check the percolating axioms P1-P4.
    Percolate(PercArgs),
    /// Quotient hom dimensions between all named objects.
    Localize(PercArgs),
    /// Quotient hom dimension between two named objects.
    Qhom {
        #[command(flatten)]
        perc: PercArgs,
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
    },
    /// Derived hom dimension; without --src/--dst, the table over all objects.
    Dhom {
        #[command(flatten)]
        class: ClassArg,
        /// Object name or complex file.
        #[arg(long)]
        src: Option<String>,
        #[arg(long)]
        dst: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i32,
        /// Shifts for the table, as `lo..hi` inclusive.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        shifts: String,
    },
    /// Verdier quotient probe suites.
    VerdierProbe(PercArgs),
    /// Build the weak idempotent completion tower.
    Wic {
        /// Category file listing generators.
        #[arg(long)]
        generators: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_level: usize,
        /// listed or sums.
        #[arg(long, default_value = "listed")]
        search: String,
    },
    /// Check a sequence of stalks is a conflation of the exact hull.
    HullCheck {
        #[command(flatten)]
        class: ClassArg,
        /// Sequence file, or a sequence name of the category.
        #[arg(long)]
        seq: String,
    },
    /// Run a scenario file.
    RunScenario {
        path: PathBuf,
        /// Include timings (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

struct Out {
    text: String,
    json: Value,
    rows: Vec<HomRow>,
    ok: bool,
}

impl Out {
    fn render(&self, f: Format) -> String {
        match f {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializes") + "\n",
            Format::Tsv => rows_to_tsv(&self.rows),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format.parse::<Format>() {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let opts = RunOptions {
        seed: cli.seed,
        probe_budget: cli.probe_budget,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let result = match &cli.command {
        Command::RunScenario { path, timings } => run_scenario(path, &opts).map(|r| (emit_report(&r, format, *timings), r.passed)),
        cmd => run(cmd, &opts).map(|o| (o.render(format), o.ok)),
    };
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => input_error(e),
    }
}

fn input_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn probes(cat: &CategorySpec, opts: &RunOptions) -> Result<ProbeSet> {
    ProbeSet::build(&cat.algebra, &cat.named, probe_spec(None, opts))
}

fn percolating(args: &PercArgs) -> Result<(CategorySpec, PercolatingSpec)> {
    let cat = load_category_spec(&args.class.class)?;
    let spec = match &args.percolating {
        Some(p) => {
            let raw: RawPercolating = read_json(p)?;
            cat.percolating_from(&raw, &cat.class)?
        }
        None => cat
            .percolating
            .clone()
            .ok_or_else(|| Error::InvalidInput("no percolating spec: pass --percolating".into()))?,
    };
    Ok((cat, spec))
}

fn complex_arg(cat: &CategorySpec, arg: &str) -> Result<Complex> {
    if arg.ends_with(".json") {
        let raw: RawComplex = read_json(Path::new(arg))?;
        cat.complex(&raw)
    } else {
        Ok(Complex::stalk(cat.get(arg)?, 0))
    }
}

fn parse_range(s: &str) -> Result<Vec<i32>> {
    let bad = || Error::InvalidInput(format!("shift range {s:?} is not lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let (lo, hi): (i32, i32) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn names(cat: &CategorySpec) -> Vec<String> {
    cat.named.iter().map(|(n, _)| n.clone()).collect()
}

fn table_text(rows: &[HomRow]) -> String {
    rows.iter().map(|r| format!("Hom({}, {}[{}]) = {}\n", r.src, r.dst, r.shift, r.dim)).collect()
}

fn run(cmd: &Command, opts: &RunOptions) -> Result<Out> {
    let exec = opts.exec;
    match cmd {
        Command::CheckAxioms { class, axioms } => {
            let cat = load_category_spec(&class.class)?;
            let probes = probes(&cat, opts)?;
            let tags = if axioms.is_empty() {
                AxiomTag::ALL.to_vec()
            } else {
                axioms
                    .iter()
                    .map(|a| AxiomTag::parse(a).ok_or_else(|| Error::InvalidInput(format!("unknown axiom {a:?}"))))
                    .collect::<Result<_>>()?
            };
            let mut text = format!("class {} on {}\nprobes: {}\n", cat.class.kind_name(), cat.path.display(), probes.spec.describe());
            let mut items = Vec::new();
            let mut ok = true;
            for t in tags {
                let r = check_axiom(&cat.class, t, &probes, exec)?;
                ok &= r.verdict != Verdict::CounterexampleFound;
                let w = r.witness.as_ref().map(|w| format_witness(&cat, w));
                text += &format!("{t}: {} ({} instances)\n", r.verdict, r.checked);
                if let Some(w) = &w {
                    text += &format!("  witness: {w}\n");
                }
                items.push(json!({"axiom": t.to_string(), "verdict": r.verdict, "checked": r.checked, "witness": w}));
            }
            Ok(Out { text, json: json!({"class": cat.class.kind_name(), "reports": items}), rows: vec![], ok })
        }
        Command::Percolate(args) => {
            let (cat, spec) = percolating(args)?;
            let probes = probes(&cat, opts)?;
            let reports = check_percolating(&spec, &probes, exec);
            let mut text = format!("{}\n", spec.describe());
            let mut items = Vec::new();
            for r in &reports {
                let w = r.witness.as_ref().map(|w| format_witness(&cat, w));
                text += &format!("{}: {} ({} instances)\n", r.axiom, r.verdict, r.checked);
                if let Some(w) = &w {
                    text += &format!("  witness: {w}\n");
                }
                items.push(json!({"axiom": r.axiom, "verdict": r.verdict, "checked": r.checked, "witness": w}));
            }
            let ok = reports.iter().all(|r| r.verdict != Verdict::CounterexampleFound);
            Ok(Out { text, json: json!({"subcategory": spec.describe(), "reports": items}), rows: vec![], ok })
        }
        Command::Localize(args) => {
            let (cat, spec) = percolating(args)?;
            let objs = cat.objects();
            let pairs: Vec<(usize, usize)> = (0..objs.len()).flat_map(|i| (0..objs.len()).map(move |j| (i, j))).collect();
            let dims = exec.map(&pairs, |&(i, j)| quotient_hom_dim(&spec, &objs[i], &objs[j]));
            let dims: Vec<usize> = dims.into_iter().collect::<Result<_>>()?;
            let rows = hom_rows(&names(&cat), &[0], &dims);
            let zero: Vec<String> = cat.named.iter().filter(|(_, x)| spec.contains(x)).map(|(n, _)| n.clone()).collect();
            let text = format!("{}\nzero in the quotient: {}\n{}", spec.describe(), zero.join(", "), table_text(&rows));
            Ok(Out { text, json: json!({"subcategory": spec.describe(), "zero": zero, "table": rows}), rows, ok: true })
        }
        Command::Qhom { perc, src, dst } => {
            let (cat, spec) = percolating(perc)?;
            let d = quotient_hom_dim(&spec, cat.get(src)?, cat.get(dst)?)?;
            let row = HomRow { src: src.clone(), dst: dst.clone(), shift: 0, dim: d };
            Ok(Out { text: format!("{d}\n"), json: json!(row), rows: vec![row], ok: true })
        }
        Command::Dhom { class, src, dst, shift, shifts } => {
            let cat = load_category_spec(&class.class)?;
            match (src, dst) {
                (Some(s), Some(d)) => {
                    let r = derived_hom(&cat.class, &complex_arg(&cat, s)?, &complex_arg(&cat, d)?, *shift)?;
                    let row = HomRow { src: s.clone(), dst: d.clone(), shift: *shift, dim: r.dimension };
                    Ok(Out { text: format!("{}\n", r.dimension), json: json!(row), rows: vec![row], ok: true })
                }
                (None, None) => {
                    let shifts = parse_range(shifts)?;
                    let table = derived_hom_table(&cat.class, &cat.objects(), &shifts, exec)?;
                    let rows = hom_rows(&names(&cat), &shifts, &table);
                    Ok(Out { text: table_text(&rows), json: json!({"class": cat.class.kind_name(), "table": rows}), rows, ok: true })
                }
                _ => Err(Error::InvalidInput("pass both --src and --dst, or neither".into())),
            }
        }
        Command::VerdierProbe(args) => {
            let (cat, spec) = percolating(args)?;
            let probes = probes(&cat, opts)?;
            let r = verdier_probe(&spec, &probes, exec)?;
            let mut text = format!("{}\n", spec.describe());
            for s in &r.suites {
                text += &format!("suite {}: {} checked, {} failures\n", s.suite, s.checked, s.failures.len());
                for f in &s.failures {
                    text += &format!("  {f}\n");
                }
            }
            for t in &r.towers {
                let pieces: Vec<String> = t.pieces.iter().map(|(n, x)| format!("H^{n} = {}", identify(&cat, x))).collect();
                let pieces = if pieces.is_empty() { "no cohomology".to_string() } else { pieces.join(", ") };
                text += &format!("tower {}: {pieces}\n", t.label);
            }
            Ok(Out { text, json: json!({"subcategory": spec.describe(), "suites": r.suites, "passed": r.passed()}), rows: vec![], ok: r.passed() })
        }
        Command::Wic { generators, max_level, search } => {
            let cat = load_category_spec(generators)?;
            let gens = cat.generator_objects()?;
            if gens.is_empty() {
                return Err(Error::InvalidInput(format!("{}: no \"generators\" listed", generators.display())));
            }
            let search = match search.as_str() {
                "listed" => WicSearch::Listed,
                "sums" => WicSearch::Sums,
                other => return Err(Error::InvalidInput(format!("unknown search {other:?}"))),
            };
            let t = wic_build(&gens, *max_level, search, opts.seed.unwrap_or(rexact::linalg::DEFAULT_SEED))?;
            let mut text = String::new();
            let mut levels = Vec::new();
            for l in &t.levels {
                let objs: Vec<Value> = l
                    .new_objects
                    .iter()
                    .map(|o| {
                        let iso = identify(&cat, &o.object.realize().0);
                        let from = o.provenance.as_ref().map(|p| format!("{} retracts onto {}", p.source, p.target));
                        json!({"name": o.name, "iso": iso, "from": from})
                    })
                    .collect();
                let shown: Vec<String> = objs.iter().map(|o| format!("{} ~ {}", o["name"].as_str().unwrap(), o["iso"].as_str().unwrap())).collect();
                text += &format!("level {}: {}\n", l.level, shown.join(", "));
                levels.push(json!({"level": l.level, "new_objects": objs}));
            }
            let stable = t.stabilized_at.map_or("not within the level bound".to_string(), |s| format!("at level {s}"));
            text += &format!("stabilized {stable}\n");
            Ok(Out { text, json: json!({"levels": levels, "stabilized_at": t.stabilized_at}), rows: vec![], ok: true })
        }
        Command::HullCheck { class, seq } => {
            let cat = load_category_spec(&class.class)?;
            let r: SequenceRef = if seq.ends_with(".json") { read_json(Path::new(seq))? } else { SequenceRef::Named(seq.clone()) };
            let s = cat.sequence_ref(&r)?;
            let probes = probes(&cat, opts)?;
            let cert = ClassCertificate::certify(&cat.class, &probes, exec)?;
            let objs = [hull_embed(s.left()), hull_embed(s.middle()), hull_embed(s.right())];
            let (u, v) = stalk_maps(&s.inflation, &s.deflation);
            let verdict = hull_conflation_check(&cat.class, [&objs[0], &objs[1], &objs[2]], &u, &v, &cert);
            let in_class = rexact::conflation::is_conflation(&cat.class, &s);
            let subject = format!("{} -> {} -> {}", identify(&cat, s.left()), identify(&cat, s.middle()), identify(&cat, s.right()));
            let text = format!("{subject}\nhull conflation: {verdict}\nconflation of the class: {in_class}\n");
            Ok(Out {
                text,
                json: json!({"sequence": subject, "hull_conflation": verdict, "class_conflation": in_class}),
                rows: vec![],
                ok: verdict == Ternary::Yes,
            })
        }
        Command::RunScenario { .. } => unreachable!("handled in main"),
    }
}
