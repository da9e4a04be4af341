mod format;
mod report;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use truss_core::bundle::{classify, total_space, DeltaDiagram};
use truss_core::etcat::{fiber_over_map, fiber_over_ordinal, hom_et, EtObject};
use truss_core::mesh::{duality_holds, layout_2truss, realize_bundle, reg_extract, PLMeshBundle};
use truss_core::oracle::{run_suite, OracleConfig, SUITES};
use truss_core::ordinal::{DeltaMap, Ordinal};
use truss_core::tower::{compose_bordisms_audited, pack, unpack, Bordism, TrussTower};

use format::{poset_to_raw, LoadError, TrussFile};
use report::{Report, EXIT_INVALID, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "truss", version, about = "Build, check and render framed combinatorial stratifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every invariant of a truss file; `--out` writes its canonical form.
    Validate {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the morphisms between two objects such as `s0@1` and `r1@2`.
    Hom { x: String, y: String },
    /// The fiber poset over an ordinal `n`, or over a map given as comma
    /// separated values together with `--into`.
    Fiber {
        ordinal_or_values: String,
        #[arg(long)]
        into: Option<usize>,
    },
    /// The total poset of a diagram, or of the last stage of a tower.
    Total { path: PathBuf },
    /// Compose two bordisms sharing a boundary.
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fold the last stage of a tower into truss labels.
    Pack {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a tower from a packed tower.
    Unpack {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize each stage as a mesh bundle with exact rational heights.
    Realize {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a 2-truss over the point as an SVG string diagram.
    Render {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an enumeration suite against brute-force oracles.
    Oracle {
        suite: String,
        #[arg(long)]
        max_ordinal: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match cli.command {
        Command::Validate { path, out } => validate(&path, out.as_deref()),
        Command::Hom { x, y } => hom(&x, &y),
        Command::Fiber { ordinal_or_values, into } => fiber(&ordinal_or_values, into),
        Command::Total { path } => total(&path),
        Command::Compose { first, second, out } => compose(&first, &second, out.as_deref()),
        Command::Pack { path, out } => pack_cmd(&path, out.as_deref()),
        Command::Unpack { path, out } => unpack_cmd(&path, out.as_deref()),
        Command::Realize { path, out } => realize(&path, out.as_deref()),
        Command::Render { path, out } => render(&path, out.as_deref()),
        Command::Oracle {
            suite,
            max_ordinal,
            seed,
            samples,
        } => oracle(&suite, max_ordinal, seed, samples),
    }
    .unwrap_or_else(|r| r);
    print!("{}", report.to_json());
    ExitCode::from(report.exit_code)
}

type Outcome = Result<Report, Report>;

fn load(path: &Path) -> Result<TrussFile, Report> {
    let text = std::fs::read_to_string(path).map_err(|e| Report::fail(EXIT_USAGE, path.display().to_string(), e))?;
    format::parse(&text).map_err(|e| match e {
        LoadError::Parse(d) => Report::error(EXIT_USAGE, d),
        LoadError::Invalid(d) => Report::error(EXIT_INVALID, d),
    })
}

/// Writes `text` to `out`, or returns it for the report when no path is given.
fn emit(out: Option<&Path>, text: String) -> Result<Option<String>, Report> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map(|_| None)
            .map_err(|e| Report::fail(EXIT_USAGE, p.display().to_string(), e)),
        None => Ok(Some(text)),
    }
}

fn attach(report: Report, key: &str, emitted: Option<String>) -> Report {
    match emitted {
        Some(text) => report.with_data(json!({ key: text })),
        None => report,
    }
}

fn invalid(location: &str) -> impl Fn(truss_core::Error) -> Report + '_ {
    move |e| Report::fail(EXIT_INVALID, location, e)
}

fn tower_counts(report: Report, t: &TrussTower) -> Report {
    let used: BTreeSet<usize> = t.labels().objects().iter().copied().collect();
    report
        .count("depth", t.depth())
        .count("elements", t.top().len())
        .count("relations", t.top().relation_count())
        .count("labels", used.len())
}

fn validate(path: &Path, out: Option<&Path>) -> Outcome {
    let file = load(path)?;
    let report = check(&file)?;
    match out {
        Some(p) => emit(Some(p), format::print(&file)).map(|_| report),
        None => Ok(report),
    }
}

fn check(file: &TrussFile) -> Outcome {
    match file {
        TrussFile::Diagram(d) => {
            let total = total_space(d).map_err(invalid("diagram"))?;
            let back = classify(d.base().clone(), &total).map_err(invalid("diagram"))?;
            if &back != d {
                return Err(Report::fail(EXIT_INVALID, "diagram", "total poset does not classify back to the diagram"));
            }
            Ok(Report::ok()
                .count("base_elements", d.base().len())
                .count("elements", total.len())
                .count("relations", total.carrier().relation_count()))
        }
        TrussFile::Tower(t) => Ok(tower_counts(Report::ok(), t)),
        TrussFile::Bordism(b) => {
            let source = b.source().map_err(invalid("source"))?;
            let target = b.target().map_err(invalid("target"))?;
            Ok(tower_counts(Report::ok(), b.tower())
                .count("source_elements", source.top().len())
                .count("target_elements", target.top().len()))
        }
        TrussFile::Category(c) => Ok(Report::ok()
            .count("objects", c.object_count())
            .count("morphisms", c.morphism_count())),
        TrussFile::Packed(p) => {
            let t = unpack(p).map_err(invalid("tower"))?;
            Ok(tower_counts(Report::ok(), p.tower())
                .count("trusses", p.category().objects().len())
                .count("bordisms", p.category().morphisms().len())
                .count("unpacked_elements", t.top().len()))
        }
    }
}

fn literal(s: &str, location: &str) -> Result<EtObject, Report> {
    s.parse().map_err(|e| Report::fail(EXIT_USAGE, location, e))
}

fn hom(x: &str, y: &str) -> Outcome {
    let (x, y) = (literal(x, "x")?, literal(y, "y")?);
    let maps: Vec<String> = hom_et(&x, &y).iter().map(|f| f.to_string()).collect();
    Ok(Report::ok().count("maps", maps.len()).with_data(json!({ "maps": maps })))
}

fn fiber(arg: &str, into: Option<usize>) -> Outcome {
    let number = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Report::fail(EXIT_USAGE, "ordinal_or_values", format!("not a natural number: {s:?}")))
    };
    let f = match into {
        None => fiber_over_ordinal(Ordinal(number(arg)?)),
        Some(m) => {
            let values = arg.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
            let src = Ordinal(values.len() - 1);
            let alpha = DeltaMap::new(src, Ordinal(m), values).map_err(|e| Report::fail(EXIT_USAGE, "ordinal_or_values", e))?;
            fiber_over_map(&alpha)
        }
    };
    let p = f.poset();
    Ok(Report::ok()
        .count("elements", p.len())
        .count("relations", p.relation_count())
        .with_data(serde_json::to_value(poset_to_raw(p)).expect("posets serialize")))
}

fn total(path: &Path) -> Outcome {
    let carrier = match load(path)? {
        TrussFile::Diagram(d) => total_space(&d).map_err(invalid("diagram"))?.carrier().clone(),
        TrussFile::Tower(t) => t.top().clone(),
        TrussFile::Bordism(b) => b.tower().top().clone(),
        TrussFile::Packed(p) => p.tower().top().clone(),
        TrussFile::Category(_) => return Err(Report::fail(EXIT_INVALID, "schema", "a category has no total poset")),
    };
    Ok(Report::ok()
        .count("elements", carrier.len())
        .count("relations", carrier.relation_count())
        .with_data(serde_json::to_value(poset_to_raw(&carrier)).expect("posets serialize")))
}

fn bordism(path: &Path) -> Result<Bordism, Report> {
    match load(path)? {
        TrussFile::Bordism(b) => Ok(b),
        other => Err(Report::fail(
            EXIT_INVALID,
            path.display().to_string(),
            format!("expected a {} file, found {}", format::BORDISM, other.schema()),
        )),
    }
}

fn compose(first: &Path, second: &Path, out: Option<&Path>) -> Outcome {
    let (b1, b2) = (bordism(first)?, bordism(second)?);
    let (composite, audit) = compose_bordisms_audited(&b1, &b2).map_err(invalid("compose"))?;
    let verdict = if audit.all_agree() {
        "all choices agree"
    } else {
        "choices disagree"
    };
    let mut report = Report::ok()
        .count("crossing_relations", audit.crossing_relations)
        .count("factorizations", audit.factorizations)
        .count("with_minimum", audit.with_minimum)
        .count("with_maximum_only", audit.with_maximum_only)
        .count("without_extremum", audit.without_extremum)
        .count("disconnected", audit.disconnected)
        .count("elements", composite.tower().top().len());
    if !audit.all_agree() {
        report = Report::error(
            EXIT_INVALID,
            report::Diagnostic {
                location: "compose".into(),
                message: audit.disagreements.join("; "),
            },
        );
    }
    let emitted = emit(out, format::print(&TrussFile::Bordism(composite)))?;
    let mut data = json!({ "audit": verdict });
    if let Some(text) = emitted {
        data["file"] = json!(text);
    }
    Ok(report.with_data(data))
}

fn pack_cmd(path: &Path, out: Option<&Path>) -> Outcome {
    let t = match load(path)? {
        TrussFile::Tower(t) => t,
        other => {
            return Err(Report::fail(
                EXIT_INVALID,
                "schema",
                format!("expected a {} file, found {}", format::TOWER, other.schema()),
            ))
        }
    };
    if t.depth() == 0 {
        return Err(Report::fail(EXIT_INVALID, "depth", "depth ≥ 1 required"));
    }
    let p = pack(&t).map_err(invalid("tower"))?;
    let report = tower_counts(Report::ok(), p.tower())
        .count("trusses", p.category().objects().len())
        .count("bordisms", p.category().morphisms().len());
    let emitted = emit(out, format::print(&TrussFile::Packed(p)))?;
    Ok(attach(report, "file", emitted))
}

fn unpack_cmd(path: &Path, out: Option<&Path>) -> Outcome {
    let p = match load(path)? {
        TrussFile::Packed(p) => p,
        other => {
            return Err(Report::fail(
                EXIT_INVALID,
                "schema",
                format!("expected a {} file, found {}", format::PACKED, other.schema()),
            ))
        }
    };
    let t = unpack(&p).map_err(invalid("tower"))?;
    let report = tower_counts(Report::ok(), &t);
    let emitted = emit(out, format::print(&TrussFile::Tower(t)))?;
    Ok(attach(report, "file", emitted))
}

fn mesh_json(m: &PLMeshBundle) -> serde_json::Value {
    let base = m.base();
    let heights: serde_json::Map<String, serde_json::Value> = (0..base.len())
        .map(|b| {
            let hs: Vec<String> = m.vertex_heights()[b].heights().iter().map(|h| h.to_string()).collect();
            (base.key(b).to_string(), json!(hs))
        })
        .collect();
    let sing: Vec<serde_json::Value> = base
        .covers()
        .iter()
        .zip(m.sing_maps())
        .map(|(&(a, b), g)| json!({ "from": base.key(a), "to": base.key(b), "values": g.values() }))
        .collect();
    json!({ "base": poset_to_raw(base), "heights": heights, "sing": sing })
}

fn realize(path: &Path, out: Option<&Path>) -> Outcome {
    let diagrams: Vec<DeltaDiagram> = match load(path)? {
        TrussFile::Diagram(d) => vec![d],
        TrussFile::Tower(t) => t.skeleton().diagrams().to_vec(),
        TrussFile::Bordism(b) => b.tower().skeleton().diagrams().to_vec(),
        other => {
            return Err(Report::fail(
                EXIT_INVALID,
                "schema",
                format!("cannot realize a {} file", other.schema()),
            ))
        }
    };
    let mut stages = Vec::new();
    let mut vertices = 0;
    for (k, d) in diagrams.iter().enumerate() {
        let here = format!("stages[{k}]");
        let m = realize_bundle(d).map_err(|e| Report::fail(EXIT_INVALID, &here, e))?;
        let back = reg_extract(&m).map_err(|e| Report::fail(EXIT_INVALID, &here, e))?;
        let dual = duality_holds(&m).map_err(|e| Report::fail(EXIT_INVALID, &here, e))?;
        if &back != d || !dual {
            return Err(Report::fail(EXIT_INVALID, &here, "realization does not extract back to the diagram"));
        }
        vertices += d.base().len();
        stages.push(mesh_json(&m));
    }
    let mesh = json!({ "schema": "truss/mesh/v1", "stages": stages });
    let report = Report::ok().count("stages", diagrams.len()).count("vertices", vertices);
    match out {
        Some(p) => {
            emit(Some(p), serde_json::to_string_pretty(&mesh).expect("json") + "\n")?;
            Ok(report)
        }
        None => Ok(report.with_data(mesh)),
    }
}

fn render(path: &Path, out: Option<&Path>) -> Outcome {
    let t = match load(path)? {
        TrussFile::Tower(t) => t,
        other => {
            return Err(Report::fail(
                EXIT_INVALID,
                "schema",
                format!("expected a {} file, found {}", format::TOWER, other.schema()),
            ))
        }
    };
    let scene = layout_2truss(&t).map_err(invalid("tower"))?;
    let report = Report::ok()
        .count("regions", scene.regions.len())
        .count("wires", scene.wires.len())
        .count("nodes", scene.nodes.len());
    let emitted = emit(out, scene.to_svg())?;
    Ok(attach(report, "svg", emitted))
}

/// Exhaustive ranges that finish in seconds.
fn default_max_ordinal(suite: &str) -> usize {
    match suite {
        "homsets" | "factorization" => 3,
        _ => 2,
    }
}

fn oracle(suite: &str, max_ordinal: Option<usize>, seed: u64, samples: usize) -> Outcome {
    if !SUITES.contains(&suite) {
        return Err(Report::fail(
            EXIT_USAGE,
            "suite",
            format!("unknown suite {suite}; known suites: {}", SUITES.join(", ")),
        ));
    }
    let cfg = OracleConfig {
        max_ordinal: max_ordinal.unwrap_or_else(|| default_max_ordinal(suite)),
        seed,
        samples,
    };
    let r = run_suite(suite, &cfg).map_err(invalid("suite"))?;
    let data = json!({
        "suite": r.suite,
        "passed": r.passed,
        "max_ordinal": cfg.max_ordinal,
        "seed": cfg.seed,
        "counterexample": r.counterexample,
    });
    let mut report = if r.passed {
        Report::ok()
    } else {
        Report::fail(
            EXIT_INVALID,
            "suite",
            r.counterexample.clone().unwrap_or_else(|| "failed".into()),
        )
    };
    report.counts.insert("checked".into(), r.checked);
    report.counts.extend(r.stats);
    Ok(report.with_data(data))
}
