mod batch;
mod report;
mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alexdimer::dimer::{default_segment, determinant_oracle, state_sum_with, Caps, WeightRule};
use alexdimer::linkdiag::EdgeId;
use alexdimer::murasugi::{
    certify_trapezoid, explore_flock_subsets, explore_tree, split, swap_move_diagrams, SplitContext,
};
use alexdimer::{generate, Error, LinkDiagram, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{exit_code, PolyOut, Report, Verdict, EXIT_OK};
use suites::{Env, Suite};

#[derive(Parser, Debug)]
#[command(name = "alexdimer", version, about = "Alexander polynomials of link diagrams from perfect matchings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Abort once a single enumeration has produced this many matchings.
    #[arg(long, global = true, env = "ALEXDIMER_MAX_MATCHINGS", default_value_t = Caps::default().max_matchings)]
    max_matchings: u64,
    /// Refuse diagrams with more crossings than this.
    #[arg(long, global = true, env = "ALEXDIMER_MAX_CROSSINGS", default_value_t = Caps::default().max_crossings)]
    max_crossings: usize,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Swap the incoming-quadrant weights between crossing signs. Exists so
    /// that tests can check that the suites notice a wrong weight table.
    #[arg(long, global = true, hide = true)]
    inject_weight_fault: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the symmetrized Alexander polynomial as a matching sum.
    Compute {
        input: PathBuf,
        #[arg(long)]
        segment: Option<EdgeId>,
        /// Cross-check against the determinant of the Alexander matrix.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the invariant suites.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Split along a type 2 circle and write the summand diagrams.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        circle: Option<usize>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Partition the matchings of a split by flock-edge usage.
    Explore {
        input: PathBuf,
        #[arg(long)]
        circle: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Table)]
        mode: Mode,
        /// Tree depth; defaults to the number of flock edges.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Build a recursive trapezoid certificate.
    Certify { input: PathBuf },
    /// Run verify and certify on every diagram file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Write seeded random alternating diagrams.
    Generate {
        out_dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Family::Certifiable)]
        family: Family,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Table,
    Tree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// All type 2 circles of length at most 2.
    Certifiable,
    Length1,
    Length2,
    Length3,
}

/// What a command hands back: a report, or a plain message for the
/// commands whose output is files.
enum Outcome {
    Report(Report),
    Text(String, u8),
}

fn read(path: &Path) -> Result<LinkDiagram> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    LinkDiagram::parse(&text)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn compute(d: &LinkDiagram, segment: Option<EdgeId>, oracle: bool, env: &Env) -> Result<Report> {
    let i = match segment {
        Some(i) => i,
        None => default_segment(d)?,
    };
    let p = state_sum_with(d, i, &env.rule, &env.caps)?;
    let mut r = Report::new("compute", d.name(), &env.caps);
    r.data = json!({ "segment": i });
    if oracle {
        let o = determinant_oracle(d, i)?;
        r.push(
            Verdict::new(
                "oracle",
                "the matching sum equals the Alexander-matrix determinant up to a unit",
                p.normalize_unit() == o.normalize_unit(),
            )
            .with(PolyOut::from(&o)),
        );
    }
    r.polynomial = Some(PolyOut::from(&p));
    Ok(r)
}

fn decompose(d: &LinkDiagram, circle: Option<usize>, out_dir: Option<&Path>, env: &Env) -> Result<Report> {
    let s = split(d, circle)?;
    let mut r = Report::new("decompose", d.name(), &env.caps);
    let mut parts = vec![("prime", &s.prime), ("double", &s.double)];
    let swaps = if s.length >= 2 { Some(swap_move_diagrams(&s)?) } else { None };
    if let Some((a, b)) = &swaps {
        parts.push(("tilde-prime", a));
        parts.push(("tilde-double", b));
    }
    let mut files = Vec::new();
    for (role, m) in &parts {
        let name = format!("{}-{role}", d.name());
        if let Some(dir) = out_dir {
            let path = dir.join(format!("{name}.json"));
            write(&path, &(m.diagram.clone().with_name(&name).to_json() + "\n"))?;
            files.push(path.display().to_string());
        }
        r.push(
            Verdict::new(format!("{role}-crossings"), "crossings in this part", true)
                .observed()
                .with(json!({ "crossings": m.diagram.crossing_count(), "segment": m.segment })),
        );
    }
    let meta = json!({ "split": &s, "files": files });
    if let Some(dir) = out_dir {
        write(&dir.join(format!("{}-split.json", d.name())), &(serde_json::to_string_pretty(&meta).expect("split serializes") + "\n"))?;
    }
    r.data = meta;
    Ok(r)
}

fn explore(d: &LinkDiagram, circle: Option<usize>, mode: Mode, level: Option<usize>, env: &Env) -> Result<(Report, String)> {
    let ctx = SplitContext::new(d, split(d, circle)?, env.rule, env.caps)?;
    let mut r = Report::new("explore", d.name(), &env.caps);
    let text = match mode {
        Mode::Table => {
            let t = explore_flock_subsets(&ctx)?;
            r.push(Verdict::new("conservation", "rows and the two extreme strata add up to |Delta|", t.conserved));
            let mut text = format!("{:<16} {:>9} {:>8} {:>11}  |polynomial|\n", "flock edges", "matchings", "centered", "trapezoidal");
            for row in &t.rows {
                let key: Vec<String> = row.key.iter().map(ToString::to_string).collect();
                text += &format!(
                    "{:<16} {:>9} {:>8} {:>11}  {}\n",
                    key.join(","),
                    row.matchings,
                    row.centered,
                    row.trapezoidal,
                    row.polynomial
                );
            }
            text += &format!("0-flock stratum   {}\nfull stratum      {}\n|Delta|           {}\n", t.p0_abs, t.pmax_abs, t.abs_delta);
            r.data = serde_json::to_value(&t).expect("table serializes");
            text
        }
        Mode::Tree => {
            let t = explore_tree(&ctx, level.unwrap_or(ctx.split.flock.len()))?;
            r.push(Verdict::new("conservation", "node polynomials add up to Delta", t.conserved));
            let mut text = format!("{:<12} {:>9} {:>8} {:>11}  polynomial\n", "node", "matchings", "centered", "trapezoidal");
            for n in &t.nodes {
                let key = if n.key.is_empty() { "root" } else { &n.key };
                text += &format!("{key:<12} {:>9} {:>8} {:>11}  {}\n", n.matchings, n.centered, n.trapezoidal, n.polynomial);
            }
            r.data = serde_json::to_value(&t).expect("tree serializes");
            text
        }
    };
    Ok((r, text))
}

fn certify(d: &LinkDiagram, env: &Env) -> Result<Report> {
    let c = certify_trapezoid(d, &env.rule, &env.caps)?;
    let mut r = Report::new("certify", d.name(), &env.caps);
    r.polynomial = Some(PolyOut::from(&c.root.polynomial));
    r.push(
        Verdict::new(
            "trapezoid-certificate",
            "every node is centered and trapezoidal and is rebuilt exactly from its children",
            c.verdict,
        )
        .with(json!({ "nodes": c.nodes, "leaves": c.leaves })),
    );
    r.data = serde_json::to_value(&c).expect("certificate serializes");
    Ok(r)
}

fn generate_files(out_dir: &Path, family: Family, count: usize, seed: u64) -> Result<String> {
    let ds = match family {
        Family::Certifiable => generate::certifiable(seed, count),
        Family::Length1 => generate::with_split_length(seed, count, 1),
        Family::Length2 => generate::with_split_length(seed, count, 2),
        Family::Length3 => generate::with_split_length(seed, count, 3),
    };
    std::fs::create_dir_all(out_dir).map_err(|e| Error::Precondition(format!("{}: {e}", out_dir.display())))?;
    for d in &ds {
        write(&out_dir.join(format!("{}.json", d.name())), &(d.to_json() + "\n"))?;
    }
    Ok(format!("wrote {} diagrams to {}", ds.len(), out_dir.display()))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let env = Env {
        rule: if g.inject_weight_fault { WeightRule::corrupted() } else { WeightRule::default() },
        caps: Caps { max_matchings: g.max_matchings, max_crossings: g.max_crossings },
    };
    let out = match &cli.command {
        Command::Compute { input, segment, oracle } => Outcome::Report(compute(&read(input)?, *segment, *oracle, &env)?),
        Command::Verify { input, suite } => Outcome::Report(suites::verify(&read(input)?, *suite, &env)?),
        Command::Decompose { input, circle, out_dir } => {
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| Error::Precondition(format!("{}: {e}", dir.display())))?;
            }
            Outcome::Report(decompose(&read(input)?, *circle, out_dir.as_deref(), &env)?)
        }
        Command::Explore { input, circle, mode, level } => {
            let (r, text) = explore(&read(input)?, *circle, *mode, *level, &env)?;
            if g.json {
                Outcome::Report(r)
            } else {
                if let Some(path) = &g.out {
                    write(path, &(r.to_json() + "\n"))?;
                }
                let code = r.exit();
                Outcome::Text(format!("{}{text}", r.render()), code)
            }
        }
        Command::Certify { input } => Outcome::Report(certify(&read(input)?, &env)?),
        Command::Batch { dir, report, jobs } => {
            let agg = batch::run(dir, *jobs, &env)?;
            let json = agg.to_json();
            if let Some(path) = report.as_ref().or(g.out.as_ref()) {
                write(path, &(json.clone() + "\n"))?;
            }
            let text = if g.json { json } else { agg.summary() };
            Outcome::Text(text, agg.exit())
        }
        Command::Generate { out_dir, family, count, seed } => {
            Outcome::Text(generate_files(out_dir, *family, *count, *seed)?, EXIT_OK)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Report(r)) => {
            if let Some(path) = &cli.global.out {
                if let Err(e) = write(path, &(r.to_json() + "\n")) {
                    eprintln!("error: {e}");
                    return ExitCode::from(exit_code(&e));
                }
            }
            if cli.global.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.render());
            }
            ExitCode::from(r.exit())
        }
        Ok(Outcome::Text(text, code)) => {
            println!("{}", text.trim_end());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
