//! Command-line front end: validation, construction, enumeration, orbit and
//! extension classification, and cohomology reports.
//!
//! Reports are written to stdout and are byte-deterministic for fixed
//! inputs; the wall-clock time goes to stderr so that outputs can be
//! compared verbatim. Exit codes: 0 on success, 1 on domain errors, 2 on
//! usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypergroups::action::{enumerate_hypergroups, orbits_full};
use hypergroups::cohomology::{
    h2, schreier_classify, Cochain2, ReverseRepresentation,
};
use hypergroups::construction::{
    exact_product, standard_construct, universality_roundtrip,
};
use hypergroups::extension::{classify_ext, class_representatives, ext_by_quotient};
use hypergroups::format::{
    parse_group, parse_hypergroup, parse_psi_rows, write_group, write_hypergroup,
};
use hypergroups::group::{by_name, cyclic, describe_group, enumerate_groups_oracle, FiniteGroup};

#[derive(Parser)]
#[command(
    name = "hypergroups",
    version,
    about = "Hypergroups over a group: construction, orbits, extension classification, cohomology"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
    /// Seed for randomized subcommands. Accepted for interface stability;
    /// every current subcommand is exhaustive and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

/// Exactly one way of naming the group H.
#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct HSel {
    /// Cyclic group of this order as H.
    #[arg(long)]
    h_order: Option<usize>,
    /// H by name (z1..z8, v4, s3, d4, q8) or group file.
    #[arg(long)]
    h: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a group or hypergroup file.
    #[command(group(clap::ArgGroup::new("target").required(true).multiple(false)))]
    Validate {
        #[arg(long, group = "target")]
        group: Option<PathBuf>,
        #[arg(long, group = "target")]
        hypergroup: Option<PathBuf>,
    },
    /// Build the hypergroup of a subgroup and a right transversal.
    Construct {
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated subgroup elements, e.g. "0,2".
        #[arg(long)]
        subgroup: String,
        /// Comma-separated transversal elements, e.g. "0,1".
        #[arg(long)]
        transversal: String,
    },
    /// Rebuild the exact-product group of a hypergroup file.
    Product {
        #[arg(long)]
        hypergroup: PathBuf,
    },
    /// Verify the universality roundtrip of a hypergroup file.
    Roundtrip {
        #[arg(long)]
        hypergroup: PathBuf,
    },
    /// Enumerate all hypergroups over H with basic set of size m.
    Enumerate {
        #[command(flatten)]
        hsel: HSel,
        #[arg(long)]
        m: usize,
    },
    /// Enumerate hypergroups and partition them into wreath orbits.
    Orbits {
        #[command(flatten)]
        hsel: HSel,
        #[arg(long)]
        m: usize,
    },
    /// Classify the degree-m extensions of H.
    Classify {
        #[arg(long)]
        h: String,
        #[arg(long)]
        m: usize,
    },
    /// Classify extensions of H with quotient Q by three routes.
    Ext {
        #[arg(long)]
        h: String,
        #[arg(long)]
        q: String,
    },
    /// Cocycles, coboundaries, and the cohomology of (Q, H, psi).
    H2 {
        #[arg(long)]
        q: String,
        #[arg(long)]
        h: String,
        /// trivial, inv, or a file with one automorphism row per Q element.
        #[arg(long, default_value = "trivial")]
        psi: String,
    },
    /// Pair cohomology classes with extension classes.
    Schreier {
        #[arg(long)]
        q: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "trivial")]
        psi: String,
    },
    /// Enumerate all groups of order n up to isomorphism.
    Oracle {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let wall_ms = start.elapsed().as_millis();
    eprintln!("wall_ms: {wall_ms}");
    match outcome {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("IoError: {}: {e}", path.display())))
}

/// Resolves `--h`/`--q` arguments: a built-in name or a group file path.
fn resolve_group(spec: &str) -> Result<(FiniteGroup, String), CliError> {
    if let Some(g) = by_name(spec) {
        return Ok((g, spec.to_string()));
    }
    let path = PathBuf::from(spec);
    if path.exists() {
        let g = parse_group(&read_file(&path)?)?;
        return Ok((g, spec.to_string()));
    }
    Err(CliError(format!(
        "UnknownGroup: `{spec}` is neither a built-in name (z1..z8, v4, s3, d4, q8) nor a file"
    )))
}

fn resolve_h_arg(hsel: &HSel) -> Result<(FiniteGroup, String), CliError> {
    match (hsel.h_order, &hsel.h) {
        (Some(n), None) if n > 0 => Ok((cyclic(n), format!("z{n}"))),
        (Some(_), None) => Err(CliError("UnknownGroup: order must be positive".into())),
        (None, Some(spec)) => resolve_group(spec),
        _ => unreachable!("clap enforces exactly one selector"),
    }
}

fn parse_index_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| CliError(format!("ParseError: `{tok}` is not an index")))
        })
        .collect()
}

fn resolve_psi(
    spec: &str,
    q: &FiniteGroup,
    h: &FiniteGroup,
) -> Result<ReverseRepresentation, CliError> {
    match spec {
        "trivial" => Ok(ReverseRepresentation::trivial(q.clone(), h.clone())),
        "inv" => Ok(ReverseRepresentation::inversion(q.clone(), h.clone())?),
        path => {
            let text = read_file(&PathBuf::from(path))?;
            let rows = parse_psi_rows(&text, q.order(), h.order())?;
            Ok(ReverseRepresentation::new(q.clone(), h.clone(), rows)?)
        }
    }
}

fn join_indices(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn emit(report: &Report, mode: Emit) -> String {
    match mode {
        Emit::Text => {
            let mut s = report.text.clone();
            if !s.ends_with('\n') && !s.is_empty() {
                s.push('\n');
            }
            s
        }
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("valid json");
            s.push('\n');
            s
        }
    }
}

struct Report {
    text: String,
    json: Value,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let report = match &cli.cmd {
        Cmd::Validate { group, hypergroup } => cmd_validate(group, hypergroup)?,
        Cmd::Construct { group, subgroup, transversal } => {
            cmd_construct(group, subgroup, transversal)?
        }
        Cmd::Product { hypergroup } => cmd_product(hypergroup)?,
        Cmd::Roundtrip { hypergroup } => cmd_roundtrip(hypergroup)?,
        Cmd::Enumerate { hsel, m } => cmd_enumerate(hsel, *m)?,
        Cmd::Orbits { hsel, m } => cmd_orbits(hsel, *m)?,
        Cmd::Classify { h, m } => cmd_classify(h, *m)?,
        Cmd::Ext { h, q } => cmd_ext(h, q)?,
        Cmd::H2 { q, h, psi } => cmd_h2(q, h, psi)?,
        Cmd::Schreier { q, h, psi } => cmd_schreier(q, h, psi)?,
        Cmd::Oracle { n } => cmd_oracle(*n)?,
    };
    Ok(emit(&report, cli.emit))
}

fn cmd_validate(
    group: &Option<PathBuf>,
    hypergroup: &Option<PathBuf>,
) -> Result<Report, CliError> {
    match (group, hypergroup) {
        (Some(path), None) => {
            let g = parse_group(&read_file(path)?)?;
            Ok(Report {
                text: format!("group of order {}", g.order()),
                json: json!({"command": "validate", "kind": "group", "order": g.order()}),
            })
        }
        (None, Some(path)) => {
            let x = parse_hypergroup(&read_file(path)?)?;
            let report = x.check_axioms();
            if !report.passed() {
                let failures: Vec<String> = report
                    .results
                    .iter()
                    .filter_map(|(a, v)| v.as_ref().map(|t| format!("{a} at {t:?}")))
                    .collect();
                return Err(CliError(format!(
                    "AxiomViolation: {}",
                    failures.join("; ")
                )));
            }
            Ok(Report {
                text: format!(
                    "hypergroup |H|={} |M|={} axioms pass",
                    x.group().order(),
                    x.basic_len()
                ),
                json: json!({
                    "command": "validate",
                    "kind": "hypergroup",
                    "h_order": x.group().order(),
                    "m": x.basic_len(),
                    "axioms": "pass",
                }),
            })
        }
        _ => Err(CliError(
            "UsageError: pass exactly one of --group or --hypergroup".into(),
        )),
    }
}

fn cmd_construct(
    group: &PathBuf,
    subgroup: &str,
    transversal: &str,
) -> Result<Report, CliError> {
    let g = parse_group(&read_file(group)?)?;
    let h_elems = parse_index_list(subgroup)?;
    let members = parse_index_list(transversal)?;
    let x = standard_construct(&g, &h_elems, &members)?;
    let content = write_hypergroup(&x);
    Ok(Report {
        text: content.clone(),
        json: json!({"command": "construct", "hypergroup": content}),
    })
}

fn cmd_product(hypergroup: &PathBuf) -> Result<Report, CliError> {
    let x = parse_hypergroup(&read_file(hypergroup)?)?;
    let ep = exact_product(&x)?;
    let content = write_group(&ep.group);
    // the writer relabels the identity to 0; carry the maps along
    let e = ep.group.identity();
    let relabel = |v: usize| {
        if v == e {
            0
        } else if v == 0 {
            e
        } else {
            v
        }
    };
    let f0: Vec<usize> = ep.f0.map().iter().map(|&v| relabel(v)).collect();
    let f1: Vec<usize> = ep.f1.iter().map(|&v| relabel(v)).collect();
    let text = format!("{content}f0: {}\nf1: {}", join_indices(&f0), join_indices(&f1));
    Ok(Report {
        text,
        json: json!({"command": "product", "group": content, "f0": f0, "f1": f1}),
    })
}

fn cmd_roundtrip(hypergroup: &PathBuf) -> Result<Report, CliError> {
    let x = parse_hypergroup(&read_file(hypergroup)?)?;
    let iso = universality_roundtrip(&x)?;
    let text = format!(
        "roundtrip ok\nf0: {}\nf1: {}",
        join_indices(iso.f0()),
        join_indices(iso.f1())
    );
    Ok(Report {
        text,
        json: json!({
            "command": "roundtrip",
            "ok": true,
            "f0": iso.f0(),
            "f1": iso.f1(),
        }),
    })
}

fn cmd_enumerate(hsel: &HSel, m: usize) -> Result<Report, CliError> {
    let (group, name) = resolve_h_arg(hsel)?;
    let all = enumerate_hypergroups(&group, m)?;
    let text = format!(
        "command: enumerate\nh: {name} (order {})\nm: {m}\ncount: {}",
        group.order(),
        all.len()
    );
    Ok(Report {
        text,
        json: json!({
            "command": "enumerate",
            "h": name,
            "h_order": group.order(),
            "m": m,
            "count": all.len(),
        }),
    })
}

fn cmd_orbits(hsel: &HSel, m: usize) -> Result<Report, CliError> {
    let (group, name) = resolve_h_arg(hsel)?;
    let all = enumerate_hypergroups(&group, m)?;
    let partition = orbits_full(&all)?;
    let mut text = format!(
        "command: orbits\nh: {name} (order {})\nm: {m}\ncount: {}\norbits: {}\n",
        group.order(),
        all.len(),
        partition.len()
    );
    let mut orbit_json = Vec::new();
    for (i, orbit) in partition.orbits.iter().enumerate() {
        let rep = write_hypergroup(&all[orbit.representative]);
        let _ = write!(text, "orbit {i}: size {}\n{rep}", orbit.members.len());
        orbit_json.push(json!({"size": orbit.members.len(), "representative": rep}));
    }
    Ok(Report {
        text,
        json: json!({
            "command": "orbits",
            "h": name,
            "h_order": group.order(),
            "m": m,
            "count": all.len(),
            "orbits": orbit_json,
        }),
    })
}

fn cmd_classify(h: &str, m: usize) -> Result<Report, CliError> {
    let (group, name) = resolve_group(h)?;
    let c = classify_ext(&group, m)?;
    let orbit_route = match &c.orbit_extensions {
        Some(v) => v.len().to_string(),
        None => "skipped".to_string(),
    };
    let oracle_route = match &c.oracle_extensions {
        Some(v) => v.len().to_string(),
        None => "skipped".to_string(),
    };
    let mut text = format!(
        "command: classify\nh: {name}\nm: {m}\nclasses: {}\nroutes: orbit={orbit_route} oracle={oracle_route}\n",
        c.class_count
    );
    let mut classes_json = Vec::new();
    for (i, e) in class_representatives(&c).iter().enumerate() {
        let ambient = describe_group(e.ambient());
        let normal = e.is_normal();
        let witness = join_indices(e.morphism().map());
        let _ = writeln!(
            text,
            "class {i}: ambient {ambient} normal {normal} embedding {witness}"
        );
        classes_json.push(json!({
            "ambient": ambient,
            "normal": normal,
            "embedding": e.morphism().map(),
        }));
    }
    Ok(Report {
        text,
        json: json!({
            "command": "classify",
            "h": name,
            "m": m,
            "classes": c.class_count,
            "route_orbit": orbit_route,
            "route_oracle": oracle_route,
            "class_list": classes_json,
        }),
    })
}

fn cmd_ext(h: &str, q: &str) -> Result<Report, CliError> {
    let (hg, h_name) = resolve_group(h)?;
    let (qg, q_name) = resolve_group(q)?;
    let out = ext_by_quotient(&hg, &qg)?;
    let mut text = format!(
        "command: ext\nh: {h_name}\nq: {q_name}\nclasses: {}\nroutes: r1={} r2={} r3={} r3-stabilized={}\nagree: {}\n",
        out.classes.len(),
        out.r1_count,
        out.r2_count,
        out.r3_count,
        out.r3_stabilizer_count,
        out.routes_agree()
    );
    let mut classes_json = Vec::new();
    for (i, e) in out.classes.iter().enumerate() {
        let ambient = describe_group(e.ambient());
        let witness = join_indices(e.morphism().map());
        let _ = writeln!(text, "class {i}: ambient {ambient} embedding {witness}");
        classes_json.push(json!({"ambient": ambient, "embedding": e.morphism().map()}));
    }
    Ok(Report {
        text,
        json: json!({
            "command": "ext",
            "h": h_name,
            "q": q_name,
            "classes": out.classes.len(),
            "r1": out.r1_count,
            "r2": out.r2_count,
            "r3": out.r3_count,
            "r3_stabilized": out.r3_stabilizer_count,
            "agree": out.routes_agree(),
            "class_list": classes_json,
        }),
    })
}

fn cochain_line(c: &Cochain2) -> String {
    join_indices(c.values())
}

fn cmd_h2(q: &str, h: &str, psi: &str) -> Result<Report, CliError> {
    let (qg, q_name) = resolve_group(q)?;
    let (hg, h_name) = resolve_group(h)?;
    let rep = resolve_psi(psi, &qg, &hg)?;
    let data = h2(&rep)?;
    let mut text = format!(
        "command: h2\nq: {q_name}\nh: {h_name}\npsi: {psi}\n|Z2|={} |B2|={} |H2|={}\n",
        data.z2.len(),
        data.b2.len(),
        data.h2_order()
    );
    let mut reps_json = Vec::new();
    for (i, &r) in data.reps.iter().enumerate() {
        let line = cochain_line(&data.z2[r]);
        let _ = writeln!(text, "rep {i}: {line}");
        reps_json.push(line);
    }
    Ok(Report {
        text,
        json: json!({
            "command": "h2",
            "q": q_name,
            "h": h_name,
            "psi": psi,
            "z2": data.z2.len(),
            "b2": data.b2.len(),
            "h2": data.h2_order(),
            "reps": reps_json,
        }),
    })
}

fn cmd_schreier(q: &str, h: &str, psi: &str) -> Result<Report, CliError> {
    let (qg, q_name) = resolve_group(q)?;
    let (hg, h_name) = resolve_group(h)?;
    let rep = resolve_psi(psi, &qg, &hg)?;
    let out = schreier_classify(&rep)?;
    let mut text = format!(
        "command: schreier\nq: {q_name}\nh: {h_name}\npsi: {psi}\nclasses: {}\niso-classes: {}\n",
        out.extensions.len(),
        out.iso_class_count
    );
    let mut classes_json = Vec::new();
    for (i, e) in out.extensions.iter().enumerate() {
        let lam = cochain_line(&out.h2.z2[out.h2.reps[i]]);
        let ambient = describe_group(e.ambient());
        let _ = writeln!(text, "class {i}: lambda {lam} ambient {ambient}");
        classes_json.push(json!({"lambda": lam, "ambient": ambient}));
    }
    let covering = out
        .covering_multiplicity
        .iter()
        .map(|&k| k.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(text, "covering: {covering}");
    Ok(Report {
        text,
        json: json!({
            "command": "schreier",
            "q": q_name,
            "h": h_name,
            "psi": psi,
            "classes": classes_json,
            "iso_classes": out.iso_class_count,
            "covering": out.covering_multiplicity,
        }),
    })
}

fn cmd_oracle(n: usize) -> Result<Report, CliError> {
    let groups = enumerate_groups_oracle(n)?;
    let mut text = format!("command: oracle\nn: {n}\ncount: {}\n", groups.len());
    let mut groups_json = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        let name = describe_group(g);
        let content = write_group(g);
        let _ = write!(text, "group {i}: {name}\n{content}");
        groups_json.push(json!({"name": name, "table": content}));
    }
    Ok(Report {
        text,
        json: json!({
            "command": "oracle",
            "n": n,
            "count": groups.len(),
            "groups": groups_json,
        }),
    })
}
