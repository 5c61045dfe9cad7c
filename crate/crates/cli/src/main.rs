use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use curve_lrc::io::{points_text, MATRIX_FILE, METADATA_FILE};
use curve_lrc::{
    bound_generalized, exact_min_distance, read_matrix, recover_from_word, recovery_plan, repair,
    verify_recovery_set, write_code, ConstructionConfig, Element, Error, LrcCode, Metadata,
    ReportRow,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Locally recoverable codes from automorphism orbits of curves.
#[derive(Parser)]
#[command(name = "lrc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its generator matrix and metadata.
    Construct {
        config: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
        /// Also write the affine points of the curve to points.txt.
        #[arg(long)]
        points: bool,
    },
    /// Rebuild a code and check its parameters.
    Verify {
        config: PathBuf,
        /// A generator matrix file to compare against the rebuilt code.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Skip the exhaustive minimum distance sweep.
        #[arg(long)]
        skip_exact: bool,
        /// Number of coordinates whose planned recovery sets are checked
        /// exhaustively.
        #[arg(long, default_value_t = 32)]
        oracle_coords: usize,
    },
    /// Encode random messages, erase coordinates and repair them.
    RecoverDemo {
        /// Directory written by `construct`.
        dir: PathBuf,
        /// Comma-separated coordinates to erase.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        erase: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive minimum distance.
    Mindist { config: PathBuf },
    /// Tab-separated parameters and bounds, one line per config.
    Report {
        configs: Vec<PathBuf>,
        /// Include the exhaustive minimum distance when the budget allows.
        #[arg(long)]
        exact: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_) => 2,
        Error::Budget { .. } => 3,
        Error::Invalid(_) | Error::Io(_) => 4,
        Error::ZeroInverse => 1,
    }
}

fn load(path: &Path) -> Result<ConstructionConfig, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ConstructionConfig::from_toml(&text)
}

fn build(path: &Path) -> Result<(ConstructionConfig, LrcCode), Error> {
    let cfg = load(path)?;
    let (_, code) = cfg.build()?;
    Ok((cfg, code))
}

fn summary(code: &LrcCode) -> String {
    format!("{} availability {}", code.param_row(), code.availability())
}

fn construct_cmd(config: &Path, out: &Path, points: bool) -> Result<bool, Error> {
    let (cfg, code) = build(config)?;
    write_code(out, &code, &cfg)?;
    if points {
        let path = out.join("points.txt");
        fs::write(&path, points_text(code.points()))
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    println!("{}", summary(&code));
    Ok(true)
}

struct Checks {
    ok: bool,
}

impl Checks {
    fn report(&mut self, name: &str, status: Status, detail: impl AsRef<str>) {
        if status == Status::Fail {
            self.ok = false;
        }
        let tag = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Flag => "FLAG",
        };
        println!("{tag}\t{name}\t{}", detail.as_ref());
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
    Flag,
}

fn pass_if(b: bool) -> Status {
    if b {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn verify_cmd(
    config: &Path,
    matrix: Option<&Path>,
    skip_exact: bool,
    oracle_coords: usize,
) -> Result<bool, Error> {
    let (cfg, code) = build(config)?;
    let budget = cfg.budget();
    let mut c = Checks { ok: true };
    println!("{}", summary(&code));

    let total = code.points().len() + code.model().points_at_infinity();
    match code.model().is_maximal(code.points()) {
        Ok(m) => c.report("maximality", pass_if(m), format!("{total} points")),
        Err(e) => c.report("maximality", Status::Skip, e.to_string()),
    }

    match code.length_formula() {
        Some(l) if l.value == code.n() as u64 => c.report(
            "length",
            Status::Pass,
            format!("n = {} matches the closed form", l.value),
        ),
        Some(l) => c.report(
            "length",
            if l.enforced {
                Status::Fail
            } else {
                Status::Flag
            },
            format!("orbit-derived n = {}, closed form {}", code.n(), l.value),
        ),
        None => c.report(
            "length",
            Status::Skip,
            format!("n = {}, no closed form", code.n()),
        ),
    }

    let cert = code.certify_rank();
    c.report(
        "rank",
        pass_if(cert.rank == code.k()),
        format!(
            "expected {}, actual {} on {} columns",
            code.k(),
            cert.rank,
            cert.columns
        ),
    );

    if let Some(path) = matrix {
        let g = read_matrix(path, code.field())?;
        let rank = g.rank(code.field());
        c.report(
            "matrix rank",
            pass_if(rank == code.k()),
            format!("expected {}, actual {rank}", code.k()),
        );
        c.report(
            "matrix entries",
            pass_if(g == code.generator_matrix()),
            "file against the rebuilt generator matrix",
        );
    }

    let bound = bound_generalized(
        code.n() as i64,
        code.k() as i64,
        code.r_list().len() as i64,
        &code.r_list().iter().map(|&r| r as i64).collect::<Vec<_>>(),
    );
    let exact = if skip_exact {
        c.report("distance", Status::Skip, "sweep disabled");
        None
    } else {
        match exact_min_distance(&code, &budget) {
            Ok(d) => {
                c.report(
                    "distance",
                    pass_if(code.designed_distance() <= d && d as i64 <= bound),
                    format!(
                        "designed {} \u{2264} exact {d} \u{2264} bound {bound}",
                        code.designed_distance()
                    ),
                );
                Some(d)
            }
            Err(e @ Error::Budget { .. }) => {
                c.report("distance", Status::Skip, e.to_string());
                None
            }
            Err(e) => return Err(e),
        }
    };
    if exact.is_none() {
        c.report(
            "designed distance",
            pass_if(code.designed_distance() as i64 <= bound),
            format!(
                "designed {} \u{2264} bound {bound}",
                code.designed_distance()
            ),
        );
    }

    let n = code.n();
    let count = oracle_coords.min(n);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let mut skipped = None;
    'coords: for s in 0..count {
        let i = s * n / count;
        for set in recovery_plan(&code, i)?.sets {
            match verify_recovery_set(&code, i, &set.indices, &budget) {
                Ok(true) => checked += 1,
                Ok(false) => failures.push(format!("coordinate {i} set {:?}", set.indices)),
                Err(e @ Error::Budget { .. }) => {
                    skipped = Some(e);
                    break 'coords;
                }
                Err(e) => return Err(e),
            }
        }
    }
    match skipped {
        Some(e) => c.report("recovery sets", Status::Skip, e.to_string()),
        None => c.report(
            "recovery sets",
            pass_if(failures.is_empty()),
            if failures.is_empty() {
                format!("{checked} sets on {count} coordinates determine their target")
            } else {
                format!("not determining: {}", failures.join("; "))
            },
        ),
    }

    println!("{}", ReportRow::HEADER);
    println!("{}", ReportRow::new(&code, exact));
    Ok(c.ok)
}

fn recover_demo_cmd(dir: &Path, erase: &[usize], samples: usize, seed: u64) -> Result<bool, Error> {
    let meta = Metadata::read(&dir.join(METADATA_FILE))?;
    let (_, code) = meta.config.build()?;
    let f = code.field();
    let g = read_matrix(&dir.join(MATRIX_FILE), f)?;
    if g != code.generator_matrix() {
        return Err(Error::Invalid(format!(
            "{} does not match the code described by {}",
            MATRIX_FILE, METADATA_FILE
        )));
    }
    let n = code.n();
    let mut erased: Vec<usize> = erase.to_vec();
    erased.sort_unstable();
    erased.dedup();
    if let Some(&bad) = erased.iter().find(|&&i| i >= n) {
        return Err(Error::Invalid(format!(
            "coordinate {bad} is out of range for n = {n}"
        )));
    }
    println!("{}", summary(&code));
    if erased.is_empty() {
        println!("no erasures; nothing to repair");
        println!("result: success");
        return Ok(true);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.size();
    let words: Vec<Vec<Element>> = (0..samples)
        .map(|_| {
            let msg: Vec<Element> = (0..code.k())
                .map(|_| f.element(rng.gen_range(0..q)).expect("in range"))
                .collect();
            g.left_mul(f, &msg)
        })
        .collect();

    for &i in &erased {
        let plan = recovery_plan(&code, i)?;
        let mut usable = 0;
        let mut agreeing = 0;
        for (j, set) in plan.sets.iter().enumerate() {
            let blocked: Vec<usize> = set
                .indices
                .iter()
                .copied()
                .filter(|h| erased.binary_search(h).is_ok())
                .collect();
            if !blocked.is_empty() {
                println!(
                    "coordinate {i} set {j} (subgroup {}): blocked by erased {blocked:?}",
                    set.source
                );
                continue;
            }
            usable += 1;
            let mut agree = 0;
            for w in &words {
                if recover_from_word(&code, i, set, w)? == w[i] {
                    agree += 1;
                }
            }
            if agree == words.len() {
                agreeing += 1;
            }
            println!(
                "coordinate {i} set {j} (subgroup {}): {agree}/{} samples agree",
                set.source,
                words.len()
            );
        }
        println!(
            "coordinate {i}: {agreeing}/{} sets agree, {usable} usable",
            plan.sets.len()
        );
    }

    let mut rounds = 0;
    let mut stuck = Vec::new();
    let mut wrong = 0;
    for w in &words {
        let mut damaged: Vec<Option<Element>> = w.iter().copied().map(Some).collect();
        for &i in &erased {
            damaged[i] = None;
        }
        let rep = repair(&code, &mut damaged)?;
        rounds = rounds.max(rep.rounds);
        wrong += rep.recovered.iter().filter(|&&(i, v, _)| v != w[i]).count();
        if stuck.is_empty() {
            stuck = rep.unrecoverable;
        }
    }
    if wrong > 0 {
        println!("result: failure ({wrong} repaired values disagree with the encoded codewords)");
    } else if !stuck.is_empty() {
        println!("result: failure (unrecoverable coordinates {stuck:?})");
    } else {
        println!(
            "result: success ({} erasures repaired in {rounds} rounds)",
            erased.len()
        );
    }
    Ok(true)
}

fn mindist_cmd(config: &Path) -> Result<bool, Error> {
    let (cfg, code) = build(config)?;
    let d = exact_min_distance(&code, &cfg.budget())?;
    println!("{} exact d = {d}", code.param_row());
    Ok(true)
}

fn report_cmd(configs: &[PathBuf], exact: bool) -> Result<bool, Error> {
    println!("{}", ReportRow::HEADER);
    for path in configs {
        let (cfg, code) = build(path)?;
        let d = if exact {
            match exact_min_distance(&code, &cfg.budget()) {
                Ok(d) => Some(d),
                Err(Error::Budget { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        println!("{}", ReportRow::new(&code, d));
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct {
            config,
            out,
            points,
        } => construct_cmd(config, out, *points),
        Command::Verify {
            config,
            matrix,
            skip_exact,
            oracle_coords,
        } => verify_cmd(config, matrix.as_deref(), *skip_exact, *oracle_coords),
        Command::RecoverDemo {
            dir,
            erase,
            samples,
            seed,
        } => recover_demo_cmd(dir, erase, *samples, *seed),
        Command::Mindist { config } => mindist_cmd(config),
        Command::Report { configs, exact } => report_cmd(configs, *exact),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
