//! `qdomain`: batch front end over JSON workspace files.
//!
//! Exit status is 0 when every check passes, 1 when a mathematical check or
//! validation fails (the report carries the witness), and 2 on usage or parse
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use qdomain::{
    analyze_domain, cauchy_completion, effective_cap, module_projectivity_analysis,
    parse_workspace, regular_presheaf_category, render_text, render_workspace, roundtrip_module,
    run_suite, totally_below, AnalysisOptions, Cocomplete, Direction, PresheafCategory, QCategory,
    QError, RegularSemicategory, Report, SuiteBase, SuiteParams, Workspace,
};

#[derive(Parser)]
#[command(
    name = "qdomain",
    version,
    about = "Totally continuous and totally algebraic Q-categories at finite scale"
)]
struct Cli {
    /// Presheaf enumeration cap (overrides QDOMAIN_CAP and workspace settings).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Emit reports as JSON instead of tab-separated lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate every entity of a workspace.
    Validate { file: PathBuf },
    /// Totally-below relation, compacts, classification flags and representations.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        entity: Option<String>,
    },
    /// Presheaf, Cauchy or regular completion of a category.
    Complete {
        file: PathBuf,
        #[arg(long)]
        entity: String,
        #[arg(long, value_enum)]
        kind: CompletionKind,
    },
    /// Strongest postcondition or weakest precondition in a dynamic system.
    Dynamics {
        file: PathBuf,
        /// Required when the workspace defines more than one system.
        #[arg(long)]
        system: Option<String>,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        arrow: String,
        #[arg(long)]
        prop: String,
    },
    /// Exhaustive verification over enumerated small instances.
    Suite {
        #[arg(long, default_value = "boolean")]
        q: String,
        #[arg(long)]
        max_objects: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-render a workspace canonically.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CompletionKind {
    Cauchy,
    Presheaf,
    Regular,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Sp,
    Wp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Math(String),
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        match e {
            QError::Parse { .. } | QError::UnknownName(_) | QError::MalformedParams(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn load(path: &Path) -> Result<Workspace, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_workspace(&text)?)
}

fn cap_for(cli: &Cli, w: Option<&Workspace>) -> usize {
    cli.cap
        .unwrap_or_else(|| effective_cap(&w.map(|w| w.raw.settings.clone()).unwrap_or_default()))
}

fn emit(cli: &Cli, r: &Report) -> (String, bool) {
    let text = if cli.json {
        r.render_json()
    } else {
        r.render_text()
    };
    (text, r.is_ok())
}

fn theta_text(c: &QCategory, theta: &qdomain::QMatrix) -> String {
    (0..c.n())
        .map(|x| {
            let row: Vec<&str> = (0..c.n())
                .map(|a| c.q().hom(c.ty(x), c.ty(a)).name(theta.get(x, a)))
                .collect();
            format!("{}: {}", c.label(x), row.join(" "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn category<'w>(w: &'w Workspace, name: &str) -> Result<&'w Arc<QCategory>, Failure> {
    w.categories
        .get(name)
        .ok_or_else(|| Failure::Usage(format!("no category named `{name}`")))
}

fn analyze(cli: &Cli, file: &Path, entity: Option<&str>) -> Outcome {
    let w = load(file)?;
    let cap = cap_for(cli, Some(&w));
    if let Some(e) = entity {
        if !w.categories.contains_key(e) && !w.modules.contains_key(e) {
            return Err(Failure::Usage(format!("no category or module named `{e}`")));
        }
    }
    let selected = |n: &str| entity.is_none_or(|e| e == n);
    let mut r = Report::new();
    let mut opts = AnalysisOptions::new(cap);
    opts.seed = w.raw.settings.seed;
    for (name, c) in w.categories.iter().filter(|(n, _)| selected(n)) {
        let a = analyze_domain(name, c.clone(), &opts);
        let mut lines = a.report.lines.into_iter();
        // Θ goes right after the size line.
        let mut head = Report::new();
        head.lines.extend(lines.by_ref().take(1));
        if let Some(t) = &a.theta {
            head.info(name, "theta", theta_text(c, t));
        }
        head.lines.extend(lines);
        r.extend(head);
    }
    for (name, m) in w.modules.iter().filter(|(n, _)| selected(n)) {
        match roundtrip_module(m, cap) {
            Ok(rt) => r.check(
                name,
                "module-roundtrip",
                rt.passes(),
                format!(
                    "equivalent={} projective_category={} projective_module={}",
                    rt.round_trip, rt.projective_category, rt.projective_module
                ),
            ),
            Err(e) => r.check(name, "module-roundtrip", false, e.to_string()),
        }
        match module_projectivity_analysis(m, qdomain::DEFAULT_HOM_SEARCH_CAP) {
            Ok(p) => r.info(
                name,
                "module-projectivity",
                format!(
                    "projective={} generators={} summands={} endomorphisms_lifted={} ({})",
                    p.projective,
                    p.generators,
                    p.summands,
                    p.endomorphisms_lifted.map_or("-".into(), |k| k.to_string()),
                    p.proxy_label
                ),
            ),
            Err(e) => r.check(name, "module-projectivity", false, e.to_string()),
        }
    }
    Ok(emit(cli, &r))
}

fn complete(cli: &Cli, file: &Path, entity: &str, kind: CompletionKind) -> Outcome {
    let w = load(file)?;
    let cap = cap_for(cli, Some(&w));
    let c = category(&w, entity)?.clone();
    let mut r = Report::new();
    let (tag, objects) = match kind {
        CompletionKind::Presheaf => {
            let p = PresheafCategory::new(c.clone(), cap)?;
            let cat = p.category()?;
            ("P", cat)
        }
        CompletionKind::Cauchy => {
            let p = PresheafCategory::new(c.clone(), cap)?;
            ("Cauchy", cauchy_completion(&p)?.cat)
        }
        CompletionKind::Regular => {
            let a = Cocomplete::new(c.clone(), cap)?;
            let tb = totally_below(&a)?;
            let b = RegularSemicategory::new(c.q().clone(), tb.theta)?;
            ("R", regular_presheaf_category(&b, cap)?.cat)
        }
    };
    let ent = format!("{tag}({entity})");
    r.info(&ent, "size", objects.n().to_string());
    for x in 0..objects.n() {
        let row: Vec<&str> = (0..objects.n()).map(|y| objects.hom_name(x, y)).collect();
        r.info(
            &ent,
            "object",
            format!("{} | {}", objects.label(x), row.join(" ")),
        );
    }
    Ok(emit(cli, &r))
}

fn dynamics(file: &Path, system: Option<&str>, op: Op, arrow: &str, prop: &str) -> Outcome {
    let w = load(file)?;
    let d = match system {
        Some(s) => w
            .systems
            .get(s)
            .ok_or_else(|| Failure::Usage(format!("no system named `{s}`")))?,
        None => {
            let mut it = w.systems.values();
            match (it.next(), it.next()) {
                (Some(d), None) => d,
                (None, _) => return Err(Failure::Usage("workspace defines no systems".into())),
                _ => {
                    return Err(Failure::Usage(
                        "several systems defined; pass --system".into(),
                    ))
                }
            }
        }
    };
    let f = d
        .updates
        .hom(0, 0)
        .index_of(arrow)
        .ok_or_else(|| Failure::Usage(format!("no arrow named `{arrow}`")))?;
    let a = d
        .properties
        .index_of(prop)
        .ok_or_else(|| Failure::Usage(format!("no property named `{prop}`")))?;
    let dir = match op {
        Op::Sp => Direction::Sp,
        Op::Wp => Direction::Wp,
    };
    let out = qdomain::sp_wp(d, f, a, dir);
    Ok((format!("{}\n", d.properties.name(out)), true))
}

fn suite(cli: &Cli, q: &str, max_objects: Option<usize>, seed: u64) -> Outcome {
    let base = SuiteBase::parse(q)
        .ok_or_else(|| Failure::Usage(format!("unknown base `{q}` (boolean|chain3|endo3)")))?;
    let default_max = match base {
        SuiteBase::Boolean => 5,
        SuiteBase::Chain3 => 3,
        SuiteBase::Endo3 => 2,
    };
    let mut p = SuiteParams::new(base, max_objects.unwrap_or(default_max));
    p.seed = seed;
    p.cap = cap_for(cli, None);
    Ok(emit(cli, &run_suite(&p)))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { file } => {
            let w = load(file)?;
            let mut r = Report::new();
            for n in w.quantaloids.keys() {
                r.check(n, "valid-quantaloid", true, "");
            }
            for (n, c) in &w.categories {
                r.check(n, "valid-category", true, format!("objects={}", c.n()));
            }
            for n in w.modules.keys() {
                r.check(n, "valid-module", true, "");
            }
            for n in w.systems.keys() {
                r.check(n, "valid-system", true, "");
            }
            Ok(emit(cli, &r))
        }
        Command::Analyze { file, entity } => analyze(cli, file, entity.as_deref()),
        Command::Complete { file, entity, kind } => complete(cli, file, entity, *kind),
        Command::Dynamics {
            file,
            system,
            op,
            arrow,
            prop,
        } => dynamics(file, system.as_deref(), *op, arrow, prop),
        Command::Suite {
            q,
            max_objects,
            seed,
        } => suite(cli, q, *max_objects, *seed),
        Command::Export { file, format } => {
            let w = load(file)?;
            let text = match format {
                Format::Json => render_workspace(&w),
                Format::Text => render_text(&w),
            };
            Ok((text, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
