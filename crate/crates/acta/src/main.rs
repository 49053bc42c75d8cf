use acta::act::Act;
use acta::claims::{self, ClaimResult};
use acta::congruence::{self, Congruence};
use acta::hom;
use acta::io;
use acta::structure;
use acta::universe::Universe;
use acta::{classify, monoid::Monoid};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "acta", version, about = "finite monoids and right acts: \
structure, cogeneration, and exhaustive claim checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the metadata line in human-readable output.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Worker threads for the universe harness (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate monoid or act files.
    Validate { paths: Vec<PathBuf> },
    /// Full structure, classification, and congruence report for one act.
    Analyze { act: PathBuf },
    /// The congruence lattice of an act.
    Congruences { act: PathBuf },
    /// Socle and large subacts.
    Socle { act: PathBuf },
    /// Radical and maximal subacts.
    Radical { act: PathBuf },
    /// Cotrace of a class of acts in an act.
    Cotrace {
        act: PathBuf,
        /// Class members, all over the same monoid.
        #[arg(long = "class", required = true)]
        class: Vec<PathBuf>,
    },
    /// All homomorphisms between two acts.
    Homs { source: PathBuf, target: PathBuf },
    /// Classification predicates for one act.
    Classify { act: PathBuf },
    /// Run registered claims over an enumerated universe.
    Universe {
        #[arg(long, default_value_t = 3)]
        max_monoid: usize,
        #[arg(long, default_value_t = 4)]
        max_act: usize,
        /// Claim ids to run (default: all).
        #[arg(long = "claims", value_delimiter = ',')]
        claims: Vec<String>,
        /// Write the JSON report here in addition to stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Use exactly the bounded enumeration instead of the default
        /// universe (which adds the four-element diamond semilattice).
        #[arg(long)]
        strict_bounds: bool,
    },
    /// Search the universe for the smallest act separating two properties.
    Counterexample {
        /// One of: cofaithful-not-subgenerator, faithful-not-cofaithful,
        /// subgenerator-not-generator.
        predicate: String,
        #[arg(long, default_value_t = 3)]
        max_monoid: usize,
        #[arg(long, default_value_t = 4)]
        max_act: usize,
    },
}

#[derive(Args)]
struct Empty {}

fn meta_line(no_meta: bool, json: bool) {
    if !no_meta && !json {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        println!("# acta {} (unix time {now})", env!("CARGO_PKG_VERSION"));
    }
}

fn load_input(path: &PathBuf) -> Result<LoadedInput, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if value.get("action").is_some() {
        Ok(LoadedInput::Act(
            io::load_act(path).map_err(|e| e.to_string())?,
        ))
    } else {
        Ok(LoadedInput::Monoid(
            io::load_monoid(path).map_err(|e| e.to_string())?,
        ))
    }
}

enum LoadedInput {
    Monoid(Monoid),
    Act(Act),
}

fn class_names(c: &Congruence, act: &Act) -> Vec<Vec<String>> {
    c.classes()
        .into_iter()
        .map(|class| class.into_iter().map(|a| act.name(a)).collect())
        .collect()
}

fn print_congruence(label: &str, c: &Congruence, act: &Act) {
    let classes: Vec<String> = class_names(c, act)
        .into_iter()
        .map(|class| format!("{{{}}}", class.join(" ")))
        .collect();
    println!("{label}: {}", classes.join(" "));
}

#[derive(Serialize)]
struct AnalyzeReport {
    structure: structure::StructureReport,
    classification: classify::Classification,
    congruences: Vec<io::CongruenceJson>,
    atoms: Vec<io::CongruenceJson>,
    monolith: Option<io::CongruenceJson>,
}

fn subact_names(sub: &acta::Subact, act: &Act) -> String {
    let names: Vec<String> = sub.elements().iter().map(|&a| act.name(a)).collect();
    format!("{{{}}}", names.join(" "))
}

fn cmd_analyze(act: &Act, json: bool) -> Result<(), String> {
    let structure = structure::structure_report(act).map_err(|e| e.to_string())?;
    let classification = classify::classification_report(act).map_err(|e| e.to_string())?;
    let congruences = congruence::all_congruences(act).map_err(|e| e.to_string())?;
    let atoms = congruence::atoms(act).map_err(|e| e.to_string())?;
    let monolith = congruence::monolith(act).map_err(|e| e.to_string())?;
    if json {
        let report = AnalyzeReport {
            structure,
            classification,
            congruences: congruences.iter().map(io::congruence_json).collect(),
            atoms: atoms.iter().map(io::congruence_json).collect(),
            monolith: monolith.as_ref().map(io::congruence_json),
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(());
    }
    println!(
        "act: {} elements over a {}-element monoid",
        act.size(),
        act.monoid().size()
    );
    let fmt_opt = |s: &Option<acta::Subact>| match s {
        Some(sub) => subact_names(sub, act),
        None => "absent".to_string(),
    };
    println!("socle: {}", fmt_opt(&structure.socle));
    println!("s-socle: {}", fmt_opt(&structure.s_socle));
    println!("radical: {}", fmt_opt(&structure.radical));
    for (label, list) in [
        ("maximal subacts", &structure.maximal_subacts),
        ("large subacts", &structure.large_subacts),
        ("theta-simple subacts", &structure.theta_simple_subacts),
    ] {
        let rendered: Vec<String> = list.iter().map(|s| subact_names(s, act)).collect();
        println!("{label}: {}", rendered.join(" "));
    }
    print_classification(&classification, act);
    println!("congruences: {}", congruences.len());
    println!("atoms: {}", atoms.len());
    match monolith {
        Some(m) => print_congruence("monolith", &m, act),
        None => println!("monolith: absent"),
    }
    Ok(())
}

fn print_classification(c: &classify::Classification, act: &Act) {
    let yn = |b: bool| if b { "yes" } else { "no" };
    println!("faithful: {}", yn(c.faithful));
    match &c.cofaithful {
        Some(w) => {
            let names: Vec<String> = w.elements.iter().map(|&a| act.name(a)).collect();
            println!("cofaithful: yes, n = {}, witness {{{}}}", w.power, names.join(" "));
        }
        None => println!("cofaithful: no"),
    }
    match c.subgenerator {
        Some(a) => println!("subgenerator: yes, witness {}", act.name(a)),
        None => println!("subgenerator: no"),
    }
    println!("generator: {}", yn(c.generator));
    println!("subdirectly irreducible: {}", yn(c.subdirectly_irreducible));
    println!("irreducible: {}", yn(c.irreducible));
    println!(
        "finitely cogenerated: {} (automatic for finite acts)",
        yn(c.finitely_cogenerated.holds)
    );
    println!(
        "finitely rees cogenerated: {} (automatic for finite acts)",
        yn(c.finitely_rees_cogenerated.holds)
    );
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.jobs;
    match &cli.command {
        Command::Validate { paths } => {
            if paths.is_empty() {
                return Err("no input files".into());
            }
            let mut failed = false;
            for path in paths {
                match load_input(path) {
                    Ok(LoadedInput::Monoid(m)) => {
                        println!("{}: valid monoid of order {}", path.display(), m.size())
                    }
                    Ok(LoadedInput::Act(a)) => println!(
                        "{}: valid act with {} elements over a {}-element monoid",
                        path.display(),
                        a.size(),
                        a.monoid().size()
                    ),
                    Err(e) => {
                        eprintln!("{e}");
                        failed = true;
                    }
                }
            }
            Ok(if failed { 1 } else { 0 })
        }
        Command::Analyze { act } => {
            meta_line(cli.no_meta, cli.json);
            let act = io::load_act(act).map_err(|e| e.to_string())?;
            cmd_analyze(&act, cli.json)?;
            Ok(0)
        }
        Command::Congruences { act } => {
            meta_line(cli.no_meta, cli.json);
            let act = io::load_act(act).map_err(|e| e.to_string())?;
            let all = congruence::all_congruences(&act).map_err(|e| e.to_string())?;
            if cli.json {
                let out: Vec<io::CongruenceJson> = all.iter().map(io::congruence_json).collect();
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{} congruences", all.len());
                for c in &all {
                    print_congruence("  ", c, &act);
                }
            }
            Ok(0)
        }
        Command::Socle { act } => {
            meta_line(cli.no_meta, cli.json);
            let act = io::load_act(act).map_err(|e| e.to_string())?;
            let socle = structure::socle(&act).map_err(|e| e.to_string())?;
            let large = structure::large_subacts(&act).map_err(|e| e.to_string())?;
            if cli.json {
                #[derive(Serialize)]
                struct Out {
                    socle: Option<Vec<usize>>,
                    large_subacts: Vec<Vec<usize>>,
                }
                let out = Out {
                    socle: socle.map(|s| s.elements().to_vec()),
                    large_subacts: large.iter().map(|s| s.elements().to_vec()).collect(),
                };
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                match &socle {
                    Some(s) => println!("socle: {}", subact_names(s, &act)),
                    None => println!("socle: absent"),
                }
                let rendered: Vec<String> =
                    large.iter().map(|s| subact_names(s, &act)).collect();
                println!("large subacts: {}", rendered.join(" "));
            }
            Ok(0)
        }
        Command::Radical { act } => {
            meta_line(cli.no_meta, cli.json);
            let act = io::load_act(act).map_err(|e| e.to_string())?;
            let (radical, maximals) = structure::radical(&act);
            if cli.json {
                #[derive(Serialize)]
                struct Out {
                    radical: Option<Vec<usize>>,
                    maximal_subacts: Vec<Vec<usize>>,
                }
                let out = Out {
                    radical: radical.map(|s| s.elements().to_vec()),
                    maximal_subacts: maximals.iter().map(|s| s.elements().to_vec()).collect(),
                };
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                match &radical {
                    Some(s) => println!("radical: {}", subact_names(s, &act)),
                    None => println!("radical: absent"),
                }
                let rendered: Vec<String> =
                    maximals.iter().map(|s| subact_names(s, &act)).collect();
                println!("maximal subacts: {}", rendered.join(" "));
            }
            Ok(0)
        }
        Command::Cotrace { act, class } => {
            meta_line(cli.no_meta, cli.json);
            let act = io::load_act(act).map_err(|e| e.to_string())?;
            let members: Vec<Act> = class
                .iter()
                .map(|p| io::load_act(p).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let refs: Vec<&Act> = members.iter().collect();
            let cot = hom::cotrace(&act, &refs).map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&io::congruence_json(&cot)).unwrap()
                );
            } else {
                print_congruence("cotrace", &cot, &act);
            }
            Ok(0)
        }
        Command::Homs { source, target } => {
            meta_line(cli.no_meta, cli.json);
            let source = io::load_act(source).map_err(|e| e.to_string())?;
            let target = io::load_act(target).map_err(|e| e.to_string())?;
            let homs = hom::enumerate_homs(&source, &target).map_err(|e| e.to_string())?;
            if cli.json {
                let maps: Vec<&Vec<usize>> = homs.iter().map(|h| &h.map).collect();
                println!("{}", serde_json::to_string_pretty(&maps).unwrap());
            } else {
                println!("{} homomorphisms", homs.len());
                for h in &homs {
                    let rendered: Vec<String> = h
                        .map
                        .iter()
                        .enumerate()
                        .map(|(a, &b)| format!("{}->{}", source.name(a), target.name(b)))
                        .collect();
                    println!("  {}", rendered.join(" "));
                }
            }
            Ok(0)
        }
        Command::Classify { act } => {
            meta_line(cli.no_meta, cli.json);
            let act = io::load_act(act).map_err(|e| e.to_string())?;
            let c = classify::classification_report(&act).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&c).unwrap());
            } else {
                print_classification(&c, &act);
            }
            Ok(0)
        }
        Command::Universe {
            max_monoid,
            max_act,
            claims,
            report,
            strict_bounds,
        } => {
            meta_line(cli.no_meta, cli.json);
            let universe = if *strict_bounds || (*max_monoid, *max_act) != (3, 4) {
                Universe::bounded(*max_monoid, *max_act).map_err(|e| e.to_string())?
            } else {
                Universe::default_universe()
            };
            let selection = if claims.is_empty() {
                None
            } else {
                for id in claims {
                    if !claims::claim_ids().contains(&id.as_str()) {
                        return Err(format!("unknown claim id {id:?}"));
                    }
                }
                Some(claims.as_slice())
            };
            let results = claims::run_claims(&universe, selection);
            let payload = serde_json::to_string_pretty(&results).unwrap();
            if let Some(path) = report {
                std::fs::write(path, &payload).map_err(|e| e.to_string())?;
            }
            if cli.json {
                println!("{payload}");
            } else {
                println!(
                    "universe: {} monoids, {} acts",
                    universe.monoids.len(),
                    universe.total_acts()
                );
                for r in &results {
                    print_claim_row(r);
                }
            }
            let hard_failure = results.iter().any(ClaimResult::hard_failure);
            Ok(if hard_failure { 1 } else { 0 })
        }
        Command::Counterexample {
            predicate,
            max_monoid,
            max_act,
        } => {
            meta_line(cli.no_meta, cli.json);
            let universe = if (*max_monoid, *max_act) == (3, 4) {
                Universe::default_universe()
            } else {
                Universe::bounded(*max_monoid, *max_act).map_err(|e| e.to_string())?
            };
            let hit = claims::find_counterexample(predicate, &universe)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&hit).unwrap());
            } else {
                match &hit {
                    Some(c) => {
                        println!("found: {}", c.details);
                        println!("monoid table: {:?}", c.monoid);
                        println!("act table: {:?}", c.act);
                    }
                    None => println!(
                        "no instance within bounds (monoid order <= {max_monoid}, act size \
                         <= {max_act})"
                    ),
                }
            }
            Ok(0)
        }
    }
}

fn print_claim_row(r: &ClaimResult) {
    let status = if !r.violations.is_empty() {
        if r.report_only {
            "flagged"
        } else {
            "FAILED"
        }
    } else {
        "ok"
    };
    println!(
        "{:32} {:7} checked {:6} confirmed {:6} skipped {:5} violations {}",
        r.claim,
        status,
        r.checked,
        r.confirmed,
        r.skipped,
        r.violations.len()
    );
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
