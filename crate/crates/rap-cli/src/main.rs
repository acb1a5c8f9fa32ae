//! `rap` — command-line interface to the right-angled polyhedra toolkit.
//!
//! Every subcommand is a thin wrapper around one library operation.  Exit
//! codes: 0 for success or an affirmative verdict, 1 for a negative verdict
//! (inadmissible, unrecognized, non-isomorphic), 2 for input or usage
//! errors.  Identical inputs and flags produce byte-identical output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use rap_core::circuits::{prismatic_circuits, side_profile, Admissibility};
use rap_core::covers;
use rap_core::io;
use rap_core::polyhedron::Polyhedron;
use rap_core::reduction::{self, Policy};
use rap_core::volumes;
use rap_core::{canonical_form, isomorphic};

#[derive(Parser)]
#[command(name = "rap", about = "Right-angled hyperbolic polyhedra toolkit", version)]
struct Cli {
    /// Emit machine-readable JSON instead of the human report.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the human report (useful with -o).
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check right-angled admissibility; prints a witness on failure.
    Validate { file: PathBuf },
    /// Vertex/edge/face counts, histogram and edge table.
    Info { file: PathBuf },
    /// List prismatic k-circuits.
    Circuits {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Flat/roof side profile of one prismatic circuit.
    Profile {
        file: PathBuf,
        /// Index into the canonical circuit enumeration for this k.
        #[arg(long)]
        circuit: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Construct the Loebell polyhedron L(n).
    Lobell {
        n: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether the input is some L(n).
    Recognize { file: PathBuf },
    /// Closed-form Loebell volume(s).
    Lvol {
        /// Single index n.
        n: Option<u64>,
        /// Range A..B (inclusive), e.g. --table 5..20.
        #[arg(long)]
        table: Option<String>,
    },
    /// Glue two polyhedra along same-sized faces.
    Compose {
        file1: PathBuf,
        face1: usize,
        file2: PathBuf,
        face2: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(long)]
        flip: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Double a polyhedron across a face.
    Double {
        file: PathBuf,
        face: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Edge surgery along a very good edge (or any edge, with --force).
    Surgery {
        file: PathBuf,
        edge: usize,
        /// Skip the very-good precondition and report the admissibility of
        /// the result instead of assuming it.
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Split along a flat-free prismatic circuit.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        circuit: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Write the halves to <prefix>1.json and <prefix>2.json.
        #[arg(long)]
        out_prefix: Option<String>,
    },
    /// Reduce to Loebell components and certify the volume lower bound.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value = "decompose-first")]
        policy: String,
        /// Write the reduction trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Re-derive and verify the bound of a trace file.
    Bound { trace: PathBuf },
    /// Face 4-coloring, edge 3-coloring, presentations and h-certificate.
    Cover {
        file: PathBuf,
        #[arg(long)]
        boundary_face: Option<usize>,
        /// Write the presentations in text form to this path.
        #[arg(long)]
        export_presentation: Option<PathBuf>,
    },
    /// Cone angles of the spherical polar, optionally unbending an edge.
    Polar {
        file: PathBuf,
        #[command(flatten)]
        deform: Deform,
    },
    /// Canonical code of the polyhedron.
    Canon { file: PathBuf },
    /// Compare two polyhedra up to isomorphism (mirror images included).
    Iso { file1: PathBuf, file2: PathBuf },
}

#[derive(Args)]
struct Deform {
    #[arg(long)]
    edge: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
}

fn main() -> ExitCode {
    // Die quietly on closed pipes instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Formats with 12 significant digits, fixed-point for moderate magnitudes.
fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn load(path: &PathBuf) -> Result<(Polyhedron, Option<String>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed =
        io::polyhedron_from_json(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok(parsed)
}

fn save_poly(path: &PathBuf, p: &Polyhedron, name: Option<&str>) -> Result<()> {
    fs::write(path, io::polyhedron_to_json(p, name))
        .with_context(|| format!("writing {}", path.display()))
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("range must look like 5..20"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn circuit_json(p: &Polyhedron, c: &rap_core::PrismaticCircuit) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = c
        .crossed_edges
        .iter()
        .map(|&e| {
            let ed = p.edges()[e];
            serde_json::json!([ed.a, ed.b])
        })
        .collect();
    serde_json::json!({
        "faces": c.faces,
        "crossed_edges": edges,
        "crossed_edge_ids": c.crossed_edges,
    })
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn poly_value(p: &Polyhedron) -> serde_json::Value {
    serde_json::from_str(&io::polyhedron_to_json(p, None)).expect("valid JSON")
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    let quiet = cli.quiet;
    let say = |line: String| {
        if !quiet && !json {
            println!("{line}");
        }
    };
    match cli.command {
        Command::Validate { file } => {
            let (p, _) = load(&file)?;
            let verdict = rap_core::admissible(&p);
            let ok = verdict.is_admissible();
            if json {
                print_json(&serde_json::json!({
                    "admissible": ok,
                    "witness": if ok { serde_json::Value::Null }
                               else { verdict.witness().into() },
                }));
            } else if !quiet {
                match &verdict {
                    Admissibility::Admissible => println!("admissible"),
                    v => println!("not admissible: {}", v.witness()),
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Info { file } => {
            let (p, name) = load(&file)?;
            let counts = p.counts();
            let trivalent = p.is_trivalent();
            let pentagon = p.pentagon_excess().ok();
            if json {
                let edges: Vec<serde_json::Value> = p
                    .edges()
                    .iter()
                    .map(|e| serde_json::json!([e.a, e.b]))
                    .collect();
                print_json(&serde_json::json!({
                    "name": name,
                    "vertices": counts.vertices,
                    "edges": counts.edges,
                    "faces": counts.faces,
                    "histogram": counts.histogram,
                    "trivalent": trivalent,
                    "pentagons": pentagon.map(|x| x.0),
                    "excess": pentagon.map(|x| x.1),
                    "edge_table": edges,
                }));
            } else if !quiet {
                if let Some(n) = name {
                    println!("name: {n}");
                }
                println!(
                    "v = {}, e = {}, f = {}",
                    counts.vertices, counts.edges, counts.faces
                );
                let hist: Vec<String> = counts
                    .histogram
                    .iter()
                    .map(|(size, n)| format!("{size}-gons: {n}"))
                    .collect();
                println!("faces: {}", hist.join(", "));
                println!("trivalent: {trivalent}");
                if let Some((k, c)) = pentagon {
                    println!("pentagons: {k}, excess: {c}");
                }
            }
            Ok(0)
        }
        Command::Circuits { file, k } => {
            let (p, _) = load(&file)?;
            let k = k.min(p.face_count());
            let cs = prismatic_circuits(&p, k);
            if json {
                let arr: Vec<serde_json::Value> = cs.iter().map(|c| circuit_json(&p, c)).collect();
                print_json(&serde_json::json!({ "k": k, "circuits": arr }));
            } else if !quiet {
                println!("{} prismatic {k}-circuit(s)", cs.len());
                for (i, c) in cs.iter().enumerate() {
                    let edges: Vec<String> = c
                        .crossed_edges
                        .iter()
                        .map(|&e| {
                            let ed = p.edges()[e];
                            format!("({},{})", ed.a, ed.b)
                        })
                        .collect();
                    println!("[{i}] faces {:?} edges {}", c.faces, edges.join(" "));
                }
            }
            Ok(0)
        }
        Command::Profile { file, circuit, k } => {
            let (p, _) = load(&file)?;
            let cs = prismatic_circuits(&p, k);
            let c = cs
                .get(circuit)
                .ok_or_else(|| anyhow!("no prismatic {k}-circuit with index {circuit}"))?;
            let profile = side_profile(&p, c)?;
            if json {
                print_json(&serde_json::json!({
                    "circuit": circuit_json(&p, c),
                    "profile": profile,
                }));
            } else if !quiet {
                for en in &profile.entries {
                    let describe = |a: &rap_core::circuits::ArcInfo| {
                        let kind = if a.is_flat {
                            " (flat)"
                        } else if a.is_roof {
                            " (roof)"
                        } else {
                            ""
                        };
                        format!("{}{kind}", a.edge_count)
                    };
                    println!(
                        "face {}: side0 arc {}, side1 arc {}",
                        en.face,
                        describe(&en.side[0]),
                        describe(&en.side[1])
                    );
                }
            }
            Ok(0)
        }
        Command::Lobell { n, output } => {
            let p = rap_core::build_lobell(n)?;
            let name = format!("L({n})");
            if let Some(path) = &output {
                save_poly(path, &p, Some(&name))?;
                say(format!(
                    "wrote {} ({} faces)",
                    path.display(),
                    p.face_count()
                ));
            } else {
                print!("{}", io::polyhedron_to_json(&p, Some(&name)));
            }
            Ok(0)
        }
        Command::Recognize { file } => {
            let (p, _) = load(&file)?;
            match rap_core::recognize_lobell(&p) {
                Some(rap_core::LobellId(n)) => {
                    if json {
                        print_json(&serde_json::json!({ "lobell": n }));
                    } else if !quiet {
                        println!("L({n})");
                    }
                    Ok(0)
                }
                None => {
                    if json {
                        print_json(&serde_json::json!({ "lobell": null }));
                    } else if !quiet {
                        println!("not a Loebell polyhedron");
                    }
                    Ok(1)
                }
            }
        }
        Command::Lvol { n, table } => {
            if let Some(range) = table {
                let (a, b) = parse_range(&range)?;
                if json {
                    let rows: Result<Vec<serde_json::Value>> = (a..=b)
                        .map(|n| {
                            let v = volumes::lobell_volume(n)?;
                            Ok(serde_json::json!({ "n": n, "volume": v.value }))
                        })
                        .collect();
                    print_json(&serde_json::json!({ "table": rows? }));
                } else {
                    println!("{:>4}  vol(L(n))", "n");
                    for n in a..=b {
                        let v = volumes::lobell_volume(n)?;
                        println!("{n:>4}  {}", fmt_f64(v.value));
                    }
                }
                Ok(0)
            } else if let Some(n) = n {
                let v = volumes::lobell_volume(n)?;
                if json {
                    print_json(&serde_json::json!({
                        "n": n,
                        "volume": v.value,
                        "error_bound": v.error_bound,
                    }));
                } else {
                    println!("{}", fmt_f64(v.value));
                }
                Ok(0)
            } else {
                bail!("lvol needs an index n or --table A..B");
            }
        }
        Command::Compose {
            file1,
            face1,
            file2,
            face2,
            offset,
            flip,
            output,
        } => {
            let (p1, _) = load(&file1)?;
            let (p2, _) = load(&file2)?;
            let (p, circuit) = rap_core::compose(&p1, face1, &p2, face2, offset, flip)?;
            if json {
                print_json(&serde_json::json!({
                    "faces": p.face_count(),
                    "distinguished_circuit": circuit_json(&p, &circuit),
                    "polyhedron": poly_value(&p),
                }));
            }
            if let Some(path) = &output {
                say(format!(
                    "composition: {} faces; distinguished {}-circuit through faces {:?}",
                    p.face_count(),
                    circuit.len(),
                    circuit.faces
                ));
                save_poly(path, &p, None)?;
                say(format!("wrote {}", path.display()));
            } else if !json {
                print!("{}", io::polyhedron_to_json(&p, None));
            }
            Ok(0)
        }
        Command::Double { file, face, output } => {
            let (p, _) = load(&file)?;
            let d = rap_core::double(&p, face)?;
            if json {
                print_json(&serde_json::json!({
                    "faces": d.face_count(),
                    "polyhedron": poly_value(&d),
                }));
            }
            if let Some(path) = &output {
                say(format!("double: {} faces", d.face_count()));
                save_poly(path, &d, None)?;
                say(format!("wrote {}", path.display()));
            } else if !json {
                print!("{}", io::polyhedron_to_json(&d, None));
            }
            Ok(0)
        }
        Command::Surgery {
            file,
            edge,
            force,
            output,
        } => {
            let (p, _) = load(&file)?;
            let (out, verdict) = if force {
                let (out, verdict) = reduction::edge_surgery_forced(&p, edge)?;
                (out, Some(verdict))
            } else {
                (reduction::edge_surgery(&p, edge)?, None)
            };
            if json {
                print_json(&serde_json::json!({
                    "faces": out.face_count(),
                    "forced": force,
                    "result_admissible": verdict.as_ref().map(|v| v.is_admissible()),
                    "witness": verdict.as_ref().and_then(|v| if v.is_admissible() { None }
                        else { Some(v.witness()) }),
                    "polyhedron": poly_value(&out),
                }));
            }
            if let Some(path) = &output {
                match &verdict {
                    Some(v) if !v.is_admissible() => say(format!(
                        "surgery done (forced); result NOT admissible: {}",
                        v.witness()
                    )),
                    Some(_) => say("surgery done (forced); result admissible".into()),
                    None => say(format!("surgery done: {} faces", out.face_count())),
                }
                save_poly(path, &out, None)?;
                say(format!("wrote {}", path.display()));
            } else if !json {
                print!("{}", io::polyhedron_to_json(&out, None));
            }
            Ok(0)
        }
        Command::Decompose {
            file,
            circuit,
            k,
            out_prefix,
        } => {
            let (p, _) = load(&file)?;
            let cs = prismatic_circuits(&p, k);
            let c = cs
                .get(circuit)
                .ok_or_else(|| anyhow!("no prismatic {k}-circuit with index {circuit}"))?;
            let (h1, h2) = reduction::decompose(&p, c)?;
            if json {
                print_json(&serde_json::json!({
                    "circuit": circuit_json(&p, c),
                    "halves": [poly_value(&h1), poly_value(&h2)],
                }));
            } else {
                say(format!(
                    "decomposed into {} and {} faces",
                    h1.face_count(),
                    h2.face_count()
                ));
            }
            if let Some(prefix) = &out_prefix {
                let p1 = PathBuf::from(format!("{prefix}1.json"));
                let p2 = PathBuf::from(format!("{prefix}2.json"));
                save_poly(&p1, &h1, None)?;
                save_poly(&p2, &h2, None)?;
                say(format!("wrote {} and {}", p1.display(), p2.display()));
            }
            Ok(0)
        }
        Command::Reduce {
            file,
            policy,
            trace,
        } => {
            let (p, _) = load(&file)?;
            let policy =
                Policy::parse(&policy).ok_or_else(|| anyhow!("unknown policy {policy:?}"))?;
            let result = reduction::reduce(&p, policy)?;
            if json {
                print_json(
                    &serde_json::from_str::<serde_json::Value>(&io::trace_to_json(&result))
                        .unwrap(),
                );
            } else if !quiet {
                println!("policy: {}", policy.name());
                for (i, step) in result.steps.iter().enumerate() {
                    let what = match &step.mv {
                        reduction::MoveRecord::Surgery { edge } => {
                            format!("surgery on edge ({},{})", edge.0, edge.1)
                        }
                        reduction::MoveRecord::Decompose { circuit, .. } => {
                            format!("decompose along a {}-circuit", circuit.len())
                        }
                    };
                    println!(
                        "step {i}: node {} -> {:?}: {what}",
                        step.input, step.children
                    );
                }
                let terminal: Vec<String> =
                    result.terminal.iter().map(|n| format!("L({n})")).collect();
                println!("terminal: {{{}}}", terminal.join(", "));
                println!("bound: {}", fmt_f64(result.bound.value));
            }
            if let Some(path) = &trace {
                fs::write(path, io::trace_to_json(&result))
                    .with_context(|| format!("writing {}", path.display()))?;
                say(format!("wrote {}", path.display()));
            }
            Ok(0)
        }
        Command::Bound { trace } => {
            let text = fs::read_to_string(&trace)
                .with_context(|| format!("reading {}", trace.display()))?;
            let parsed = io::trace_from_json(&text)?;
            let recomputed = reduction::volume_lower_bound(&parsed)?;
            let drift = (recomputed.value - parsed.bound.value).abs();
            if drift > recomputed.error_bound + parsed.bound.error_bound {
                bail!(
                    "stored bound {} disagrees with recomputed {}",
                    fmt_f64(parsed.bound.value),
                    fmt_f64(recomputed.value)
                );
            }
            if json {
                print_json(&serde_json::json!({
                    "terminal": parsed.terminal,
                    "bound": recomputed.value,
                    "error_bound": recomputed.error_bound,
                }));
            } else if !quiet {
                let terminal: Vec<String> =
                    parsed.terminal.iter().map(|n| format!("L({n})")).collect();
                println!("terminal: {{{}}}", terminal.join(", "));
                println!("bound: {}", fmt_f64(recomputed.value));
            }
            Ok(0)
        }
        Command::Cover {
            file,
            boundary_face,
            export_presentation,
        } => {
            let (p, _) = load(&file)?;
            let fc = covers::face_four_coloring(&p, boundary_face)?;
            let ec = covers::edge_coloring(&p, &fc)?;
            let bundle = covers::presentations(&p, &fc, boundary_face)?;
            if let Some(path) = &export_presentation {
                let text = format!("{}\n{}", bundle.gamma.export(), bundle.g.export());
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                say(format!("wrote {}", path.display()));
            }
            if json || !quiet {
                let doc = serde_json::json!({
                    "face_coloring": fc,
                    "edge_coloring": ec,
                    "presentations": {
                        "gamma": bundle.gamma,
                        "g": bundle.g,
                    },
                    "h_certificate": bundle.h_certificate,
                });
                print_json(&doc);
            }
            Ok(0)
        }
        Command::Polar { file, deform } => {
            let (p, _) = load(&file)?;
            let report = rap_core::cone_angles(&p, deform.edge, deform.t)?;
            if json {
                print_json(&serde_json::json!({ "report": report }));
            } else if !quiet {
                println!(
                    "{:>6} {:>6} {:>16} {:>8}",
                    "face", "size", "cone angle", "> 2pi"
                );
                for a in &report.angles {
                    println!(
                        "{:>6} {:>6} {:>16} {:>8}",
                        a.face,
                        a.face_size,
                        fmt_f64(a.angle),
                        a.exceeds_2pi
                    );
                }
                println!("all cone angles exceed 2 pi: {}", report.all_exceed_2pi);
            }
            Ok(0)
        }
        Command::Canon { file } => {
            let (p, _) = load(&file)?;
            let code = canonical_form(&p);
            if json {
                print_json(&serde_json::json!({
                    "digest": code.digest(),
                    "code": code.as_slice(),
                }));
            } else if !quiet {
                println!("{}", code.digest());
            }
            Ok(0)
        }
        Command::Iso { file1, file2 } => {
            let (p1, _) = load(&file1)?;
            let (p2, _) = load(&file2)?;
            let same = isomorphic(&p1, &p2);
            if json {
                print_json(&serde_json::json!({ "isomorphic": same }));
            } else if !quiet {
                println!("{}", if same { "isomorphic" } else { "not isomorphic" });
            }
            Ok(if same { 0 } else { 1 })
        }
    }
}
