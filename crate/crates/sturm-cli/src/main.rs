//! Batch front end: permutation checks, censuses, template construction,
//! duals, generators, fixture verification, and renderers.
//!
//! Exit codes: 0 ok, 1 validation failure, 2 usage error, 3 resource cap.

use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use sturm::complex::{decode_complex, encode_complex, SearchOptions, ThreeCellTemplate};
use sturm::enumerate::{self, CensusFilter};
use sturm::generators;
use sturm::meander;
use sturm::perm::Permutation;
use sturm::render::{render_complex_dot, render_meander_svg, LabelMode, RenderOptions};
use sturm::szs::{self, Flavor};
use sturm::{catalog, dual, platonic};

#[derive(Parser)]
#[command(name = "sturm", version, about = "Sturm permutations, meanders, and 3-cell templates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output style for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Diagnose a permutation given in one-line notation.
    Check {
        /// Whitespace-separated one-line notation, e.g. "1 8 3 4 7 6 5 2 9".
        perm: Vec<String>,
    },
    /// Stream all Sturm permutations of odd size N.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::Sturm)]
        filter: FilterArg,
        /// Emit one canonical representative per trivial-equivalence class.
        #[arg(long)]
        canonical: bool,
        /// Worker threads for the matching-pair sweep.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print census totals instead of the stream.
        #[arg(long)]
        stats: bool,
    },
    /// Build the Hamiltonian path pair and permutation of a complex file.
    Construct {
        #[arg(long)]
        complex: PathBuf,
        /// Pair flavor for plain disks (ignored for templates).
        #[arg(long, value_enum, default_value_t = FlavorArg::Zs)]
        flavor: FlavorArg,
    },
    /// Enumerate the 3-cell templates carried by a sphere complex file.
    Templates {
        #[arg(long)]
        complex: PathBuf,
        /// Node budget for the orientation search.
        #[arg(long, default_value_t = 50_000_000)]
        cap: u64,
        /// Feasibility scan: keep one completion per configuration.
        #[arg(long)]
        scan: bool,
    },
    /// Dualize a template file and evaluate the polar-anatomy battery.
    Dualize {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Closed-form families and lifts.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Also print the complex file (families built from complexes).
        #[arg(long)]
        emit_complex: bool,
    },
    /// Render a permutation as SVG or a complex as DOT.
    Render {
        /// One-line permutation to draw as a meander.
        #[arg(long, num_args = 1..)]
        perm: Option<Vec<String>>,
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Output path for SVG (stdout when absent).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LabelArg::Both)]
        labels: LabelArg,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 400)]
        height: u32,
    },
    /// Embedded fixture operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Re-derive every fixture and compare.
    Verify {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also run the scan-based icosahedron/dodecahedron sample checks.
        #[arg(long)]
        samples: bool,
    },
    /// List the embedded census rows.
    List,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    Sturm,
    Ball3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Zs,
    Sz,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelArg {
    Labels,
    Morse,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Ci,
    Simplex,
    Hypercube,
    Gon,
    Pitchfork,
    Suspension,
}


fn parse_perm(words: &[String]) -> Result<Permutation, String> {
    let joined = words.join(" ");
    joined.parse().map_err(|e| format!("{}", e))
}

fn run() -> Result<(), (u8, String)> {
    let cli = Cli::parse();
    let machine = cli.format == Format::Machine;
    match cli.command {
        Command::Check { perm } => {
            let p = parse_perm(&perm).map_err(|e| (2, e))?;
            let diag = meander::is_sturm(&p);
            let report = meander::is_three_meander_template(&p);
            if machine {
                println!("n={}", p.size());
                println!("meander={}", diag.meander);
                println!("dissipative={}", diag.dissipative);
                println!("morse={}", diag.morse);
                println!("sturm={}", diag.sturm);
                println!("ball3={}", report.is_template);
                if diag.sturm {
                    let mv = meander::morse_numbers(&p).map_err(|e| (1, e.to_string()))?;
                    println!(
                        "counts={}",
                        mv.counts
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                }
                if let Some(center) = report.center {
                    println!("center={}", center);
                }
            } else {
                println!("permutation: {}", p);
                println!("  meander:      {}", diag.meander);
                println!("  dissipative:  {}", diag.dissipative);
                println!("  morse:        {}", diag.morse);
                println!("  sturm:        {}", diag.sturm);
                if diag.sturm {
                    let mv = meander::morse_numbers(&p).map_err(|e| (1, e.to_string()))?;
                    println!("  cell counts:  {:?}", mv.counts);
                    let orbit = p.orbit_report();
                    println!("  isotropy:     {:?}", orbit.isotropy_labels());
                    println!("  canonical:    {}", orbit.canonical);
                }
                println!("  3-meander template: {}", report.is_template);
                for v in &report.violations {
                    println!("    - {}", v);
                }
                if let (Some(center), Some((wm0, wp0, wm1, wp1))) =
                    (report.center, report.neighbors)
                {
                    println!("  center: {}", center);
                    println!("  neighbors: w-0={} w+0={} w-1={} w+1={}", wm0, wp0, wm1, wp1);
                }
            }
            if !diag.sturm {
                return Err((1, "not a Sturm permutation".into()));
            }
            Ok(())
        }
        Command::Enumerate {
            n,
            filter,
            canonical,
            jobs,
            stats,
        } => {
            if n > 17 {
                eprintln!(
                    "note: n = {} exceeds the intended range; expect combinatorial runtimes",
                    n
                );
            }
            if stats {
                let c = enumerate::census(
                    n,
                    match filter {
                        FilterArg::Sturm => CensusFilter::All,
                        FilterArg::Ball3 => CensusFilter::Ball3,
                    },
                )
                .map_err(|e| (2, e.to_string()))?;
                if machine {
                    println!("n={}", c.n);
                    println!("sturm_classes={}", c.total_sturm_classes);
                    println!("ball3_classes={}", c.ball3_classes);
                } else {
                    println!(
                        "n = {}: {} Sturm classes, {} three-ball classes",
                        c.n, c.total_sturm_classes, c.ball3_classes
                    );
                }
                return Ok(());
            }
            let all =
                enumerate::enumerate_sturm_parallel(n, jobs).map_err(|e| (2, e.to_string()))?;
            let mut emitted = std::collections::HashSet::new();
            for p in all {
                if filter == FilterArg::Ball3
                    && !meander::is_three_meander_template(&p).is_template
                {
                    continue;
                }
                if canonical {
                    let c = p.canonical();
                    if emitted.insert(c.clone()) {
                        println!("{}", c);
                    }
                } else {
                    println!("{}", p);
                }
            }
            Ok(())
        }
        Command::Construct { complex, flavor } => {
            let text = fs::read_to_string(&complex)
                .map_err(|e| (2, format!("{}: {}", complex.display(), e)))?;
            let (c, template) = decode_complex(&text).map_err(|e| (1, e.to_string()))?;
            let (pair, center) = match template {
                Some(data) => {
                    let t = ThreeCellTemplate { complex: c.clone(), data };
                    let pair = szs::szs_pair(&t).map_err(|e| (1, e.to_string()))?;
                    (pair, t.data.center.clone())
                }
                None => {
                    let f = match flavor {
                        FlavorArg::Zs => Flavor::Zs,
                        FlavorArg::Sz => Flavor::Sz,
                    };
                    (szs::zs_pair(&c, f).map_err(|e| (1, e.to_string()))?, "O".into())
                }
            };
            let sigma = pair.sigma();
            let (h0, h1) = pair.names(&c, &center);
            if machine {
                println!("h0={}", h0.join(","));
                println!("h1={}", h1.join(","));
                println!("sigma={}", sigma);
                println!("sturm={}", meander::is_sturm(&sigma).sturm);
            } else {
                println!("h0:    {}", h0.join(" "));
                println!("h1:    {}", h1.join(" "));
                println!("sigma: {}", sigma);
                let diag = meander::is_sturm(&sigma);
                println!(
                    "meander={} dissipative={} morse={} sturm={}",
                    diag.meander, diag.dissipative, diag.morse, diag.sturm
                );
            }
            Ok(())
        }
        Command::Templates { complex, cap, scan } => {
            let text = fs::read_to_string(&complex)
                .map_err(|e| (2, format!("{}: {}", complex.display(), e)))?;
            let (c, _) = decode_complex(&text).map_err(|e| (1, e.to_string()))?;
            let opts = SearchOptions {
                node_cap: cap,
                first_per_config: scan,
            };
            let search =
                sturm::complex::enumerate_templates(&c, &opts).map_err(|e| (1, e.to_string()))?;
            for class in &search.classes {
                if machine {
                    println!(
                        "class delta={} eta={} sigma={}",
                        class.delta, class.eta, class.sigma
                    );
                } else {
                    println!(
                        "delta={} eta={}  sigma = {}",
                        class.delta, class.eta, class.sigma
                    );
                }
            }
            if machine {
                println!("classes={}", search.classes.len());
                println!("feasible={:?}", search.feasible);
                println!("capped={}", search.capped);
            } else {
                println!(
                    "{} classes; feasible (delta, eta): {:?}",
                    search.classes.len(),
                    search.feasible
                );
            }
            if search.capped {
                return Err((3, format!("node budget {} exhausted", cap)));
            }
            Ok(())
        }
        Command::Dualize { complex } => {
            let text = fs::read_to_string(&complex)
                .map_err(|e| (2, format!("{}: {}", complex.display(), e)))?;
            let (c, template) = decode_complex(&text).map_err(|e| (1, e.to_string()))?;
            let data = template.ok_or((
                1,
                "dualize needs a template decoration in the complex file".to_string(),
            ))?;
            let t = ThreeCellTemplate { complex: c, data };
            let dc = dual::dualize(&t).map_err(|e| (1, e.to_string()))?;
            let report = dual::check_dual(&t, &dc);
            println!("{}", encode_complex(&dc.dual, None));
            for (clause, pass) in &report.clauses {
                eprintln!("{} {}", if *pass { "pass" } else { "FAIL" }, clause);
            }
            eprintln!(
                "delta={} eta_west={} eta_east={} polar_circles=({},{})",
                report.delta,
                report.eta_west,
                report.eta_east,
                report.n_circle_len,
                report.s_circle_len
            );
            if report.all_pass() {
                Ok(())
            } else {
                Err((1, format!("dual battery failed: {:?}", report.failures())))
            }
        }
        Command::Generate {
            family,
            m,
            n,
            emit_complex,
        } => {
            if m < 1 || n < 1 {
                return Err((2, "family parameters start at 1".into()));
            }
            match family {
                Family::Ci => {
                    println!("{}", generators::ci_meander(m));
                }
                Family::Simplex => {
                    println!("{}", generators::simplex_meander(m));
                }
                Family::Hypercube => {
                    println!("{}", generators::hypercube_meander(m));
                }
                Family::Gon => {
                    let disk = generators::gon_disk(m, n).map_err(|e| (1, e.to_string()))?;
                    let sigma = szs::zs_pair(&disk, Flavor::Zs)
                        .map_err(|e| (1, e.to_string()))?
                        .sigma();
                    println!("{}", sigma);
                    if emit_complex {
                        println!("{}", encode_complex(&disk, None));
                    }
                }
                Family::Pitchfork => {
                    let t = generators::lift(
                        &generators::gon_disk(n, m).map_err(|e| (1, e.to_string()))?,
                        &generators::gon_disk(m, n).map_err(|e| (1, e.to_string()))?,
                    )
                    .map_err(|e| (1, e.to_string()))?;
                    let sigma = szs::sigma_of(&t).map_err(|e| (1, e.to_string()))?;
                    println!("{}", sigma);
                    if emit_complex {
                        println!("{}", encode_complex(&t.complex, Some(&t.data)));
                    }
                }
                Family::Suspension => {
                    let t = generators::lift(
                        &generators::striped_disk(n).map_err(|e| (1, e.to_string()))?,
                        &generators::striped_disk(m).map_err(|e| (1, e.to_string()))?,
                    )
                    .map_err(|e| (1, e.to_string()))?;
                    let sigma = szs::sigma_of(&t).map_err(|e| (1, e.to_string()))?;
                    println!("{}", sigma);
                    if emit_complex {
                        println!("{}", encode_complex(&t.complex, Some(&t.data)));
                    }
                }
            }
            Ok(())
        }
        Command::Render {
            perm,
            complex,
            svg,
            labels,
            width,
            height,
        } => match (perm, complex) {
            (Some(words), None) => {
                let p = parse_perm(&words).map_err(|e| (2, e))?;
                let opts = RenderOptions {
                    width,
                    height,
                    labels: match labels {
                        LabelArg::Labels => LabelMode::Labels,
                        LabelArg::Morse => LabelMode::Morse,
                        LabelArg::Both => LabelMode::Both,
                    },
                };
                let doc = render_meander_svg(&p, &opts).map_err(|e| (1, e.to_string()))?;
                match svg {
                    Some(path) => fs::write(&path, doc)
                        .map_err(|e| (1, format!("{}: {}", path.display(), e)))?,
                    None => print!("{}", doc),
                }
                Ok(())
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(&path)
                    .map_err(|e| (2, format!("{}: {}", path.display(), e)))?;
                let (c, template) = decode_complex(&text).map_err(|e| (1, e.to_string()))?;
                print!("{}", render_complex_dot(&c, template.as_ref()));
                Ok(())
            }
            _ => Err((2, "render needs exactly one of --perm or --complex".into())),
        },
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for case in catalog::cases() {
                    println!(
                        "{}\t{}\tn={}\t{}\tiso={:?}\tpitch={}",
                        case.case_id, case.name, case.n, case.sigma, case.isotropy, case.pitch
                    );
                }
                Ok(())
            }
            CatalogAction::Verify { jobs, samples } => {
                let mut checks = if jobs > 1 {
                    let all = catalog::cases();
                    let chunk = all.len().div_ceil(jobs);
                    let mut per_case = Vec::new();
                    std::thread::scope(|scope| {
                        let mut handles = Vec::new();
                        for group in all.chunks(chunk) {
                            handles.push(
                                scope.spawn(move || {
                                    group.iter().map(catalog::verify_case).collect::<Vec<_>>()
                                }),
                            );
                        }
                        for h in handles {
                            per_case.extend(h.join().expect("verify worker"));
                        }
                    });
                    let mut rest = catalog::verify_catalog();
                    rest.retain(|c| c.case_id.contains("census") || c.case_id.starts_with("8.1"));
                    per_case.extend(rest);
                    per_case
                } else {
                    catalog::verify_catalog()
                };
                if samples {
                    checks.extend(catalog::verify_samples(200_000_000));
                }
                let digest_ok = catalog::fixture_digest() == catalog::FIXTURE_DIGEST;
                let mut failures = 0;
                for check in &checks {
                    let status = if check.ok { "pass" } else { "FAIL" };
                    println!("{} {}", status, check.case_id);
                    for d in &check.details {
                        println!("    {}", d);
                    }
                    if !check.ok {
                        failures += 1;
                    }
                }
                println!(
                    "{} fixture digest {:#018x}",
                    if digest_ok { "pass" } else { "FAIL" },
                    catalog::fixture_digest()
                );
                let _ = platonic::by_name("tetrahedron");
                if failures == 0 && digest_ok {
                    Ok(())
                } else {
                    Err((1, format!("{} fixture checks failed", failures)))
                }
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
