use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parabolic_core::oracle::cross_check;
use parabolic_core::stability::DEFAULT_MAX_SUBSET_SIZE;
use parabolic_core::twist::expand_factor;
use parabolic_core::{
    classify_group, conjugator, decide_with_applicability, orbit, recognize_component,
    ConjugatorWord, CoxeterGraph, IrreducibleType, Mode, StabilityError, StabilityOptions,
    StabilityVerdict, VertexSet,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "parabolic",
    version,
    about = "Conjugacy stability of parabolic subgroups of Artin groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and print its normalized form
    Validate(GraphArgs),
    /// Report the family of the Artin group and which hypotheses are known
    Classify(GraphArgs),
    /// Spherical type of each component of a subset
    Type(SubsetArgs),
    /// All standard parabolic subgroups conjugate to A_X
    Orbit(WordArgs),
    /// A word conjugating A_X onto A_{X'}
    Conjugate(ConjugateArgs),
    /// Decide whether A_X is conjugacy stable
    Stability(StabilityArgs),
    /// Print the Coxeter graph in Graphviz format
    ExportDot(DotArgs),
    /// Compare the Δ involution table with a root-system computation
    OracleCheck(OracleArgs),
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct DotArgs {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct SubsetArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated generator names
    #[arg(long)]
    subset: String,
}

#[derive(Args)]
struct WordArgs {
    #[command(flatten)]
    subset: SubsetArgs,
    /// Also spell each Garside factor as a positive word in the generators
    #[arg(long)]
    expand_words: bool,
}

#[derive(Args)]
struct ConjugateArgs {
    #[command(flatten)]
    word: WordArgs,
    #[arg(long)]
    target: String,
}

#[derive(Args)]
struct StabilityArgs {
    #[command(flatten)]
    word: WordArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_MAX_SUBSET_SIZE)]
    max_subset_size: usize,
}

#[derive(Args)]
struct OracleArgs {
    /// Check the spherical components of this graph instead of the built-in list
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Force,
}

enum Failure {
    Input(String),
    Inapplicable(String),
    Resource(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Inapplicable(_) => 3,
            Failure::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m)
            | Failure::Inapplicable(m)
            | Failure::Resource(m)
            | Failure::Check(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn load(path: &Path) -> Result<CoxeterGraph, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    CoxeterGraph::parse(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("json serializes")
        ),
        Format::Text => println!("{}", text()),
    }
}

fn word_text(g: &CoxeterGraph, w: &ConjugatorWord, expand: bool) -> String {
    let mut out = w.to_text(g);
    if expand && !w.is_empty() {
        let letters: Vec<String> = w
            .factors()
            .iter()
            .map(|f| {
                let body = expand_factor(g, f.subset).map_or("?".to_owned(), |l| l.join(" "));
                match f.sign.as_i8() {
                    1 => format!("[{body}]"),
                    _ => format!("[{body}]^-1"),
                }
            })
            .collect();
        out.push_str(&format!("  = {}", letters.join(" ")));
    }
    out
}

fn run_validate(a: &GraphArgs) -> Result<(), Failure> {
    let g = load(&a.graph)?;
    match a.format {
        Format::Json => println!("{}", g.to_json()),
        Format::Text => {
            println!("generators: {}", g.names().join(","));
            for (i, x) in g.names().iter().enumerate() {
                for (j, y) in g.names().iter().enumerate().skip(i + 1) {
                    let m = g.label(i, j);
                    if m.is_edge() {
                        println!("{x} {y} {m}");
                    }
                }
            }
        }
    }
    Ok(())
}

fn run_classify(a: &GraphArgs) -> Result<(), Failure> {
    let g = load(&a.graph)?;
    let r = classify_group(&g);
    emit(a.format, &r.to_json(&g), || {
        let mut lines = vec![
            format!("applicability: {}", r.applicability.as_str()),
            format!("justification: {}", r.justification),
            format!("spherical: {}", r.spherical),
            format!("fc_type: {}", r.fc_type),
            format!("free_product_of_spherical: {}", r.free_product_of_spherical),
            format!("large: {}", r.large),
            format!("two_dimensional: {}", r.two_dimensional),
            format!("martin_2dim_condition: {}", r.martin_2dim_condition),
        ];
        if let Some(f) = r.affine_family {
            lines.push(format!("affine_family: {f}"));
        }
        for f in &r.free_factors {
            let types: Vec<String> = f.types.iter().map(|t| t.ty.to_string()).collect();
            lines.push(format!(
                "free factor {}: {}",
                g.format_set(f.generators),
                types.join(" × ")
            ));
        }
        lines.join("\n")
    });
    Ok(())
}

fn load_subset(a: &SubsetArgs) -> Result<(CoxeterGraph, VertexSet), Failure> {
    let g = load(&a.graph.graph)?;
    let x = g.parse_subset(&a.subset).map_err(input)?;
    Ok((g, x))
}

fn run_type(a: &SubsetArgs) -> Result<(), Failure> {
    let (g, x) = load_subset(a)?;
    let comps = g.components(x).map_err(input)?;
    let typed: Vec<_> = comps
        .iter()
        .map(|&c| {
            (
                c,
                recognize_component(&g, c).expect("components are connected"),
            )
        })
        .collect();
    let spherical = typed.iter().all(|(_, t)| t.is_some());
    let value = json!({
        "subset": g.set_names(x),
        "spherical": spherical,
        "components": typed.iter().map(|(c, t)| json!({
            "generators": g.set_names(*c),
            "type": t.as_ref().map(|t| t.to_json(&g)),
        })).collect::<Vec<_>>(),
    });
    emit(a.graph.format, &value, || {
        let mut lines = vec![format!("spherical: {spherical}")];
        for (c, t) in &typed {
            let ty = t.as_ref().map_or("not spherical".to_owned(), |t| {
                let order: Vec<&str> = t.positions.iter().map(|&p| g.name(p)).collect();
                format!("{} ({})", t.ty, order.join(","))
            });
            lines.push(format!("{}: {ty}", g.format_set(*c)));
        }
        lines.join("\n")
    });
    Ok(())
}

fn run_orbit(a: &WordArgs) -> Result<(), Failure> {
    let (g, x) = load_subset(&a.subset)?;
    let table = orbit(&g, x);
    emit(
        a.subset.graph.format,
        &table.to_json(&g, a.expand_words),
        || {
            table
                .iter()
                .map(|(y, w)| format!("{}  {}", g.format_set(y), word_text(&g, w, a.expand_words)))
                .collect::<Vec<_>>()
                .join("\n")
        },
    );
    Ok(())
}

fn run_conjugate(a: &ConjugateArgs) -> Result<(), Failure> {
    let (g, x) = load_subset(&a.word.subset)?;
    let target = g.parse_subset(&a.target).map_err(input)?;
    let expand = a.word.expand_words;
    let found = conjugator(&g, x, target);
    let value = match &found {
        Some(w) => json!({ "conjugate": true, "word": w.to_json(&g, expand) }),
        None => json!({ "conjugate": false, "word": null }),
    };
    emit(a.word.subset.graph.format, &value, || match &found {
        Some(w) => word_text(&g, w, expand),
        None => "not conjugate".to_owned(),
    });
    Ok(())
}

fn run_stability(a: &StabilityArgs) -> Result<(), Failure> {
    let (g, x) = load_subset(&a.word.subset)?;
    let mode = match a.mode {
        ModeArg::Auto => Mode::Auto,
        ModeArg::Force => Mode::Force,
    };
    let opts = StabilityOptions {
        max_subset_size: a.max_subset_size,
    };
    let report = decide_with_applicability(&g, x, mode, opts).map_err(|e| match e {
        StabilityError::SubsetTooLarge { .. } => Failure::Resource(e.to_string()),
        other => Failure::Input(other.to_string()),
    })?;
    emit(
        a.word.subset.graph.format,
        &report.to_json(&g, a.word.expand_words),
        || {
            let mut lines = vec![
                format!("verdict: {}", report.verdict.as_str()),
                format!("semantics: {}", report.semantics.as_str()),
                format!("full_stability: {}", report.full_stability),
                format!("hypotheses_verified: {}", report.hypotheses_verified),
                format!("family: {}", report.family.applicability.as_str()),
            ];
            match &report.verdict {
                StabilityVerdict::NotStable(w) => {
                    lines.push(format!("witness ({}): {}", w.kind(), w.to_text(&g)))
                }
                StabilityVerdict::Inapplicable(r) => lines.push(format!("reason: {r}")),
                StabilityVerdict::Stable => {}
            }
            lines.join("\n")
        },
    );
    match report.verdict {
        StabilityVerdict::Inapplicable(reason) => Err(Failure::Inapplicable(format!(
            "stability hypotheses not known for this group ({reason}); rerun with --mode force"
        ))),
        _ => Ok(()),
    }
}

fn run_export_dot(a: &DotArgs) -> Result<(), Failure> {
    let g = load(&a.graph)?;
    print!("{}", g.to_dot());
    Ok(())
}

fn builtin_types() -> Vec<IrreducibleType> {
    use IrreducibleType::*;
    let mut out: Vec<IrreducibleType> = (2..=6).map(A).collect();
    out.extend((2..=4).map(B));
    out.extend((4..=7).map(D));
    out.extend([E(6), E(7), E(8), F4]);
    out.extend((5..=10).map(I2));
    out
}

fn run_oracle_check(a: &OracleArgs) -> Result<(), Failure> {
    let types = match &a.graph {
        None => builtin_types(),
        Some(path) => {
            let g = load(path)?;
            let mut types: Vec<IrreducibleType> = g
                .components(g.all())
                .map_err(input)?
                .into_iter()
                .filter_map(|c| recognize_component(&g, c).expect("components are connected"))
                .map(|t| t.ty)
                .collect();
            types.dedup();
            types
        }
    };
    let mut rows = Vec::new();
    let mut failed = 0;
    for ty in types {
        let row = match cross_check(ty) {
            Ok(c) => {
                if !c.passed() {
                    failed += 1;
                }
                json!({
                    "type": ty.to_string(),
                    "status": if c.passed() { "pass" } else { "fail" },
                    "oracle": c.oracle.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "table": c.table.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "longest_length": c.longest_length,
                })
            }
            Err(e) => {
                json!({ "type": ty.to_string(), "status": "unsupported", "reason": e.to_string() })
            }
        };
        rows.push(row);
    }
    let value = json!({ "all_passed": failed == 0, "rows": rows });
    emit(a.format, &value, || {
        rows.iter()
            .map(|r| {
                let perm = r["oracle"]
                    .as_array()
                    .map(|p| {
                        p.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default();
                format!(
                    "{:<8} {:<12} {perm}",
                    r["type"].as_str().unwrap_or(""),
                    r["status"].as_str().unwrap_or("")
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    if failed > 0 {
        return Err(Failure::Check(format!(
            "{failed} type(s) disagree with the Δ table"
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(a) => run_validate(a),
        Command::Classify(a) => run_classify(a),
        Command::Type(a) => run_type(a),
        Command::Orbit(a) => run_orbit(a),
        Command::Conjugate(a) => run_conjugate(a),
        Command::Stability(a) => run_stability(a),
        Command::ExportDot(a) => run_export_dot(a),
        Command::OracleCheck(a) => run_oracle_check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("parabolic: {}", f.message().replace('\n', " "));
            ExitCode::from(f.code())
        }
    }
}
