use std::fmt::{Debug, Display};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spinal_core::family::{decoration_passes, BlockDecoration, SEARCH_PARAMS};
use spinal_core::*;

/// Ideal triangulations, their dual special spines and minimality checks.
#[derive(Parser)]
#[command(name = "spinal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Edge classes, Euler characteristic, vertex links and verdict.
    Analyze { file: PathBuf },
    /// The dual special spine.
    Spine { file: PathBuf },
    /// Simple subpolyhedra of the dual spine.
    Subpoly { file: PathBuf },
    /// The exact epsilon-invariant of the dual spine.
    Epsilon { file: PathBuf },
    /// Decode an o-graph into a triangulation.
    Decode { file: PathBuf },
    /// The decorated graphs Gamma(k,l,m).
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Pachner moves.
    Move {
        #[command(subcommand)]
        action: MoveAction,
    },
    /// All connected triangulations with n tetrahedra, up to isomorphism.
    Census {
        n: usize,
        /// Allow the three-tetrahedron run.
        #[arg(long)]
        long_run: bool,
    },
    /// Block decorations.
    Blocks {
        #[command(subcommand)]
        action: BlocksAction,
    },
}

#[derive(Subcommand)]
enum FamilyAction {
    /// Print the o-graph of Gamma(k,l,m).
    Generate {
        k: usize,
        l: usize,
        m: usize,
        #[arg(long)]
        blocks: Option<PathBuf>,
    },
    /// Check every T(k,l,m) with k, l, m in 1..=kmax.
    Verify {
        kmax: usize,
        #[arg(long)]
        blocks: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MoveAction {
    /// 2-3 move across a face.
    #[command(name = "23")]
    TwoThree { file: PathBuf, tet: usize, face: u8 },
    /// 3-2 move around an edge class.
    #[command(name = "32")]
    ThreeTwo { file: PathBuf, edge: usize },
}

#[derive(Subcommand)]
enum BlocksAction {
    /// Search all block decorations against the test triples.
    Search,
}

enum Failure {
    Validation { kind: String, message: String },
    Invariant(String),
}

type Outcome = Result<(), Failure>;

fn variant_name(e: &impl Debug) -> String {
    let full = format!("{e:?}");
    full.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn invalid<E: Debug + Display>(e: E) -> Failure {
    Failure::Validation {
        kind: variant_name(&e),
        message: e.to_string(),
    }
}

fn check(cond: bool, message: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(Failure::Invariant(message()))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Validation {
        kind: "Io".into(),
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<Triangulation, Failure> {
    read(path)?.parse().map_err(invalid)
}

fn load_blocks(path: Option<&Path>) -> Result<BlockDecoration, Failure> {
    match path {
        Some(p) => read(p)?.parse().map_err(invalid),
        None => Ok(BlockDecoration::shipped()),
    }
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn analyze(file: &Path) -> Outcome {
    let tri = load(file)?;
    let classes = edge_classes(&tri);
    let links = vertex_links(&tri);
    let t = tri.tet_count() as i64;
    let e = classes.len() as i64;
    println!("tets={t}");
    println!("edges={e}");
    println!("chi={}", euler_characteristic(&tri));
    println!("degrees={}", join(classes.degrees()));
    println!("reversed_edges={}", join(classes.classes().iter().filter(|c| c.reversed).map(|c| c.id)));
    println!("vertices={}", links.vertices.len());
    for link in &links.vertices {
        println!(
            "link {} corners={} chi={} orientable={}",
            link.id,
            link.corners.len(),
            link.euler_characteristic,
            link.orientable
        );
    }
    println!("link_euler_total={}", links.total_euler_characteristic());
    println!("manifold={}", links.is_manifold());
    println!("orientable={}", links.all_orientable());
    match minimality_verdict(&tri) {
        Ok(v) => {
            println!("verdict={v}");
            if let Some(poor) = v.evidence.poor {
                println!("poor={poor}");
            }
            if let Some(movable) = v.evidence.movable_edges {
                println!("edges_admitting_32={movable}");
            }
        }
        Err(err) => {
            println!("verdict=unavailable");
            println!("verdict_error={}", variant_name(&err));
        }
    }
    if links.is_manifold() {
        check(links.total_euler_characteristic() == 2 * (e - t), || {
            "vertex link Euler characteristics do not sum to 2(e - t)".into()
        })?;
    }
    Ok(())
}

fn spine(file: &Path) -> Outcome {
    let tri = load(file)?;
    let spine = dualize(&tri);
    let stats = spine_stats(&spine);
    check(stats.chi == euler_characteristic(&tri), || "chi(P) differs from e - t".into())?;
    println!("components={}", stats.d);
    println!("vertices={}", stats.v);
    println!("edges={}", spine.edges().len());
    println!("chi={}", stats.chi);
    println!("connected={}", spine.is_connected());
    print!("{}", spine.dump());
    Ok(())
}

fn subpoly(file: &Path) -> Outcome {
    let spine = dualize(&load(file)?);
    let set = enumerate_simple_subpolyhedra(&spine).map_err(invalid)?;
    check(set.len() >= 2, || "empty set or full spine missing from F(P)".into())?;
    for m in &set.members {
        println!("{} v={} chi={}", m.components, m.v, m.chi);
    }
    println!("members={}", set.len());
    println!("poor={}", set.is_poor());
    Ok(())
}

fn epsilon(file: &Path) -> Outcome {
    let spine = dualize(&load(file)?);
    let eps = epsilon_invariant(&spine).map_err(invalid)?;
    check(eps.term_count >= 2, || "fewer than two terms".into())?;
    println!("{} ~ {:.12}", eps.value, eps.value.to_f64());
    println!("epsilon={}", eps.value.machine_form());
    println!("terms={}", eps.term_count);
    Ok(())
}

fn decode(file: &Path) -> Outcome {
    let graph: DecoratedGraph = read(file)?.parse().map_err(invalid)?;
    let tri = decode_ograph(&graph).map_err(invalid)?;
    check(vertex_links(&tri).all_orientable(), || "decoded triangulation is not orientable".into())?;
    println!("# tets={} edges={}", tri.tet_count(), edge_classes(&tri).len());
    print!("{tri}");
    Ok(())
}

fn family_verify(kmax: usize, blocks: &BlockDecoration) -> Outcome {
    if kmax == 0 {
        return Err(Failure::Validation {
            kind: "BadParameters".into(),
            message: "kmax must be positive".into(),
        });
    }
    let mut failures = 0;
    let mut total = 0;
    for k in 1..=kmax {
        for l in 1..=kmax {
            for m in 1..=kmax {
                let tri = decode_ograph(&generate_family(k, l, m, blocks).map_err(invalid)?).map_err(invalid)?;
                let classes = edge_classes(&tri);
                let poor = is_poor(&dualize(&tri)).map_err(invalid)?;
                let verdict = minimality_verdict(&tri).map_err(invalid)?;
                let ok = tri.tet_count() == 2 * (k + l + m + 3)
                    && classes.len() == 3
                    && poor
                    && verdict.criterion == Criterion::PoorThreeEdge;
                println!(
                    "T({k},{l},{m}) tets={} edges={} degrees={} poor={poor} verdict={verdict} ok={ok}",
                    tri.tet_count(),
                    classes.len(),
                    join(classes.degrees())
                );
                total += 1;
                failures += usize::from(!ok);
            }
        }
    }
    println!("checked={total}");
    println!("failed={failures}");
    check(failures == 0, || format!("{failures} of {total} triples are not poor three-edge"))
}

fn census(n: usize, long_run: bool) -> Outcome {
    let result = census_enumerate(n, CensusOptions { allow_long_run: long_run }).map_err(invalid)?;
    for m in &result.members {
        let verdict = m.verdict.map_or("none".to_string(), |v| v.to_string());
        println!(
            "{} edges={} chi={} manifold={} orientable={} epsilon={} verdict={verdict}",
            m.signature,
            m.edges,
            m.chi,
            m.manifold,
            m.orientable,
            m.epsilon.value.machine_form()
        );
    }
    println!("members={}", result.members.len());
    println!("manifold={}", result.members.iter().filter(|m| m.manifold).count());
    Ok(())
}

fn blocks_search() -> Outcome {
    let found = search_block_decorations(&SEARCH_PARAMS).map_err(|e| Failure::Invariant(e.to_string()))?;
    check(decoration_passes(&found[0], &SEARCH_PARAMS).unwrap_or(false), || "first result fails".into())?;
    println!("found={}", found.len());
    println!("shipped_is_first={}", found[0] == BlockDecoration::shipped());
    print!("{}", found[0]);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { file } => analyze(&file),
        Command::Spine { file } => spine(&file),
        Command::Subpoly { file } => subpoly(&file),
        Command::Epsilon { file } => epsilon(&file),
        Command::Decode { file } => decode(&file),
        Command::Family { action } => match action {
            FamilyAction::Generate { k, l, m, blocks } => {
                let graph = generate_family(k, l, m, &load_blocks(blocks.as_deref())?).map_err(invalid)?;
                print!("{graph}");
                Ok(())
            }
            FamilyAction::Verify { kmax, blocks } => family_verify(kmax, &load_blocks(blocks.as_deref())?),
        },
        Command::Move { action } => {
            let moved = match action {
                MoveAction::TwoThree { file, tet, face } => apply_23(&load(&file)?, FaceId::new(tet, face)),
                MoveAction::ThreeTwo { file, edge } => apply_32(&load(&file)?, edge),
            }
            .map_err(invalid)?;
            print!("{moved}");
            Ok(())
        }
        Command::Census { n, long_run } => census(n, long_run),
        Command::Blocks { action: BlocksAction::Search } => blocks_search(),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SPINAL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| Failure::Validation {
        kind: "BadThreads".into(),
        message: format!("SPINAL_THREADS must be a positive integer, got `{value}`"),
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Invariant(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation { kind, message }) => {
            eprintln!("error: {message}");
            println!("error_kind={kind}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(message)) => {
            eprintln!("invariant violated: {message}");
            ExitCode::from(2)
        }
    }
}
