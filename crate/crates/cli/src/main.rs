//! Command-line interface for circuit-set matroids: axiom checking,
//! structural properties, homomorphism predicates, the homeomorphism /
//! circuit-injection decomposition, homomorphism search, catalog dumps,
//! and the exhaustive verification suites.
//!
//! Exit codes: 0 = verified / property holds, 1 = valid input but the
//! property fails (counterexample or unmet precondition), 2 = invalid
//! input or guard violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use matroid_hom::catalog::{
    enumerate_matroids, verify_facts_suite, verify_theorems_suite, CatalogSpec, SubdivisionSources,
    SuiteReport, TheoremsParams,
};
use matroid_hom::json::{JsonError, MapDoc, MatroidDoc};
use matroid_hom::structure::{decompose, StructureError};
use matroid_hom::{
    all_homomorphisms, is_circuit_injection, is_homeomorphism, is_homomorphism, GroundMap, Matroid,
};

#[derive(Parser)]
#[command(
    name = "matroid-hom",
    about = "Circuit-set matroids, matroid homomorphisms, and their decomposition",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the circuit axioms of a matroid JSON file.
    Check {
        /// Matroid document.
        matroid_file: PathBuf,
    },
    /// Print rank, co-rank, connectivity, series structure, and flags.
    Props {
        /// Matroid document.
        matroid_file: PathBuf,
    },
    /// Check map predicates for a map JSON file. The homomorphism
    /// predicate is always checked; flags request the stronger ones.
    Hom {
        /// Map document.
        map_file: PathBuf,
        /// Also require the homeomorphism predicate.
        #[arg(long)]
        homeo: bool,
        /// Also require the circuit-injection predicate.
        #[arg(long)]
        injection: bool,
    },
    /// Decompose a homomorphism as a homeomorphism followed by a circuit
    /// injection, emitting the intermediate matroid and both maps.
    Decompose {
        /// Map document.
        map_file: PathBuf,
        /// Directory to write h_matroid.json, g_map.json, h_map.json into.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the decomposition as one JSON object on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all homomorphisms between two matroid files.
    SearchHoms {
        /// Source matroid document.
        source_file: PathBuf,
        /// Target matroid document.
        target_file: PathBuf,
        /// Emit maps as JSON lines instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Dump the enumerated catalog as one matroid JSON document per line.
    Enumerate(EnumerateArgs),
    /// Run the verification suites over the enumerated catalog.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Largest ground size to enumerate (guarded at 6).
    #[arg(long, value_name = "K")]
    max_n: usize,
    /// Keep connected matroids only.
    #[arg(long)]
    connected: bool,
    /// Keep coloop-free matroids only.
    #[arg(long)]
    coloop_free: bool,
    /// Keep binary matroids only.
    #[arg(long)]
    binary: bool,
    /// Keep matroids that are connected of this co-rank only.
    #[arg(long, value_name = "K")]
    crk: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify the structural facts over the catalog.
    #[arg(long)]
    facts: bool,
    /// Verify the homomorphism theorems over the catalog.
    #[arg(long)]
    theorems: bool,
    /// Largest source ground size (guarded at 6).
    #[arg(long, value_name = "K")]
    max_n: usize,
    /// Largest target ground size for the theorems suite.
    #[arg(long, value_name = "J", default_value_t = 3)]
    targets_max_n: usize,
    /// Also use subdivisions of connected matroids on up to this many
    /// elements as theorem-suite sources.
    #[arg(long, value_name = "B")]
    subdivision_sources: Option<usize>,
    /// Largest fiber size for subdivision sources.
    #[arg(long, value_name = "F", default_value_t = 2)]
    max_fiber: usize,
    /// Emit reports as JSON instead of text.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, anyhow::Error> {
    match cli.command {
        Command::Check { matroid_file } => cmd_check(&matroid_file),
        Command::Props { matroid_file } => cmd_props(&matroid_file),
        Command::Hom {
            map_file,
            homeo,
            injection,
        } => cmd_hom(&map_file, homeo, injection),
        Command::Decompose {
            map_file,
            out,
            json,
        } => cmd_decompose(&map_file, out.as_deref(), json),
        Command::SearchHoms {
            source_file,
            target_file,
            json,
        } => cmd_search_homs(&source_file, &target_file, json),
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn read_matroid_doc(path: &Path) -> Result<MatroidDoc, anyhow::Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    Ok(MatroidDoc::parse(&text)?)
}

/// Load a map document, resolving path references relative to the map
/// file's directory.
fn read_map(path: &Path) -> Result<(Matroid, Matroid, GroundMap), anyhow::Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    let doc = MapDoc::parse(&text)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let loader = |reference: &str| -> Result<MatroidDoc, JsonError> {
        let full = base.join(reference);
        let text = fs::read_to_string(&full).map_err(|e| JsonError::UnresolvedReference {
            path: full.display().to_string(),
            reason: e.to_string(),
        })?;
        MatroidDoc::parse(&text)
    };
    Ok(doc.resolve(loader)?)
}

fn cmd_check(path: &Path) -> Result<ExitCode, anyhow::Error> {
    let doc = read_matroid_doc(path)?;
    let matroid = doc.to_matroid()?;
    println!(
        "ok: {} elements, {} circuits, axioms hold",
        matroid.num_elements(),
        matroid.circuits().len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_props(path: &Path) -> Result<ExitCode, anyhow::Error> {
    let doc = read_matroid_doc(path)?;
    let m = doc.to_matroid()?;
    if let Some(name) = &doc.name {
        println!("name: {name}");
    }
    println!(
        "elements: {} ({})",
        m.num_elements(),
        m.ground().labels().join(" ")
    );
    println!("circuits: {}", m.circuits().len());
    for labels in m.circuit_labels() {
        println!("  {{{}}}", labels.join(","));
    }
    println!("rank: {}", m.full_rank());
    println!("corank: {}", m.corank());
    let connected = m.is_connected();
    println!("connected: {connected}");
    let crk = if connected && m.corank() >= 1 {
        format!("CR^{}", m.corank())
    } else {
        "-".to_string()
    };
    println!("crk: {crk}");
    println!("binary: {}", m.is_binary());
    println!("single circuit: {}", m.is_single_circuit());
    let p = m.series_partition();
    let classes: Vec<String> = p
        .classes
        .iter()
        .map(|c| format!("{{{}}}", m.ground().labels_of(*c).join(",")))
        .collect();
    println!("series classes: {}", classes.join(" "));
    println!("loops: {{{}}}", m.ground().labels_of(p.loops).join(","));
    println!("coloops: {{{}}}", m.ground().labels_of(p.coloops).join(","));
    Ok(ExitCode::SUCCESS)
}

fn cmd_hom(path: &Path, homeo: bool, injection: bool) -> Result<ExitCode, anyhow::Error> {
    let (m, n, f) = read_map(path)?;
    let mut all_hold = true;

    let hom = is_homomorphism(&f, &m, &n)?;
    if hom.holds() {
        println!("homomorphism: holds");
    } else {
        all_hold = false;
        println!("homomorphism: fails — {hom:?}");
    }
    if homeo {
        let v = is_homeomorphism(&f, &m, &n)?;
        if v.holds() {
            println!("homeomorphism: holds");
        } else {
            all_hold = false;
            println!("homeomorphism: fails — {v:?}");
        }
    }
    if injection {
        let v = is_circuit_injection(&f, &m, &n)?;
        if v.holds() {
            println!("circuit injection: holds");
        } else {
            all_hold = false;
            println!("circuit injection: fails — {v:?}");
        }
    }
    Ok(if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_decompose(path: &Path, out: Option<&Path>, json: bool) -> Result<ExitCode, anyhow::Error> {
    let (m, n, f) = read_map(path)?;
    let d = match decompose(&f, &m, &n) {
        Ok(d) => d,
        Err(StructureError::PreconditionViolated(reason)) => {
            eprintln!("decomposition not applicable: {reason}");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };

    let h_doc = MatroidDoc::from_matroid(&d.h, Some("H".into()));
    let g_doc = MapDoc::from_parts(&d.g, &m, &d.h);
    let h_map_doc = MapDoc::from_parts(&d.h_map, &d.h, &n);

    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("h_matroid.json"), h_doc.to_json_pretty())?;
        fs::write(dir.join("g_map.json"), g_doc.to_json_pretty())?;
        fs::write(dir.join("h_map.json"), h_map_doc.to_json_pretty())?;
    }

    let certificate = serde_json::json!({
        "g_is_homeomorphism": d.certificate.g_is_homeomorphism,
        "h_is_circuit_injection": d.certificate.h_is_circuit_injection,
        "composition_equals_f": d.certificate.composition_equals_f,
        "h_circuits_subset_of_target": d.certificate.h_circuits_subset_of_target,
        "source_isomorphic_to_subdivision": d.certificate.source_isomorphic_to_subdivision,
    });
    if json {
        let doc = serde_json::json!({
            "h_matroid": serde_json::to_value(&h_doc)?,
            "g_map": serde_json::to_value(&g_doc)?,
            "h_map": serde_json::to_value(&h_map_doc)?,
            "certificate": certificate,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("H: {}", d.h.describe());
        println!("g (homeomorphism): {}", d.g.describe());
        println!("h (circuit injection): {}", d.h_map.describe());
        println!("certificate: {certificate}");
        if let Some(dir) = out {
            println!("written: {}", dir.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_search_homs(
    source_file: &Path,
    target_file: &Path,
    json: bool,
) -> Result<ExitCode, anyhow::Error> {
    let m = read_matroid_doc(source_file)?.to_matroid()?;
    let n = read_matroid_doc(target_file)?.to_matroid()?;
    let homs = all_homomorphisms(&m, &n);
    for f in &homs {
        if json {
            let doc = MapDoc::from_parts(f, &m, &n);
            println!("{}", serde_json::to_string(&doc)?);
        } else {
            println!("{}", f.describe());
        }
    }
    eprintln!("{} homomorphism(s)", homs.len());
    Ok(if homs.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<ExitCode, anyhow::Error> {
    let spec = CatalogSpec {
        max_ground_size: args.max_n,
        connected_only: args.connected,
        coloop_free: args.coloop_free,
        binary_only: args.binary,
        crk: args.crk,
    };
    let matroids = enumerate_matroids(&spec)?;
    for m in &matroids {
        println!("{}", MatroidDoc::from_matroid(m, None).to_json_string());
    }
    eprintln!("{} matroid(s)", matroids.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, anyhow::Error> {
    if !args.facts && !args.theorems {
        anyhow::bail!("nothing to verify: pass --facts and/or --theorems");
    }
    let mut reports: Vec<SuiteReport> = Vec::new();
    if args.facts {
        reports.push(verify_facts_suite(&CatalogSpec::up_to(args.max_n))?);
    }
    if args.theorems {
        let params = TheoremsParams {
            sources: CatalogSpec::up_to(args.max_n),
            targets: CatalogSpec::up_to(args.targets_max_n),
            subdivision_sources: args.subdivision_sources.map(|base| SubdivisionSources {
                base: CatalogSpec::up_to(base),
                max_fiber: args.max_fiber,
            }),
        };
        reports.push(verify_theorems_suite(&params)?);
    }
    let passed = reports.iter().all(SuiteReport::passed);
    if args.json {
        let doc: Vec<serde_json::Value> = reports.iter().map(SuiteReport::to_json).collect();
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for r in &reports {
            print!("{}", r.render_text());
        }
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
