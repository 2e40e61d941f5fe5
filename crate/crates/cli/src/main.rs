mod runner;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use arrangement_core::algebra::parse_poly;
use arrangement_core::arrangement::io;
use arrangement_core::arrangement::random::sample_suite;
use arrangement_core::arrangement::{Arrangement, Flat};
use arrangement_core::assoc::{associated_primes, cross_validate_ass};
use arrangement_core::classification::{classify, derivation_module, saito_check, Derivation, Kind};
use arrangement_core::groebner::projdim_and_depth;
use arrangement_core::properties::{check_arrangement, minimize_violation, Checks};
use arrangement_core::{Error, Rat};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use runner::{run_all, with_timeout};

#[derive(Parser, Debug)]
#[command(name = "arrangements", version, about = "Freeness, plus-one generation and associated primes of central hyperplane arrangements")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Per-instance time limit in seconds.
    #[arg(long, global = true, value_name = "SECS")]
    timeout: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Include wall-clock timings in JSON output (makes it nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection lattice, flats grouped by rank.
    Lattice { input: PathBuf },
    /// Minimal graded free resolution and Betti table of S/J(A).
    Betti { input: PathBuf },
    /// Free, plus-one generated or other, with exponents and level.
    Classify { input: PathBuf },
    /// Minimal generators and minimal resolution of D(A).
    Derivations { input: PathBuf },
    /// Associated primes of S/J(A) as flats.
    AssocPrimes {
        input: PathBuf,
        /// Compare the combinatorial method with the saturation test.
        #[arg(long)]
        cross_validate: bool,
    },
    /// The localization A_X at a flat.
    Localize {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, value_name = "i,j,k")]
        flat: Vec<usize>,
        /// Write A_X in rank(X) coordinates.
        #[arg(long)]
        essential: bool,
    },
    /// The restriction A^H.
    Restrict {
        input: PathBuf,
        #[arg(long, value_name = "i")]
        hyperplane: usize,
    },
    /// The deletion A \ {H}.
    Delete {
        input: PathBuf,
        #[arg(long, value_name = "i")]
        hyperplane: usize,
    },
    /// Cone over affine forms given in the text format.
    Cone { input: PathBuf },
    /// Saito's criterion on candidate derivations (default: the computed generators).
    SaitoVerify {
        input: PathBuf,
        /// One derivation per line: its l coefficients separated by commas.
        #[arg(long)]
        candidates: Option<PathBuf>,
    },
    /// Check every structural property on files, directories and random instances.
    VerifyTheorems {
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances added to the corpus.
        #[arg(long, default_value_t = 0)]
        count: usize,
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 7)]
        max_hyperplanes: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// Directory for minimized reproduction files.
        #[arg(long, default_value = "repro")]
        repro_dir: PathBuf,
    },
    /// Random plus-one generated arrangements and the kinds of their deletions.
    SearchDeletionPog {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        max_hyperplanes: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Analyze this arrangement instead of random ones.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Print random central arrangements.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        max_hyperplanes: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}

/// Rendered result of a command.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

enum Failure {
    Engine(Error),
    Timeout(Option<Output>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::ZeroForm(_)
        | Error::DuplicateHyperplane { .. }
        | Error::NotCentral { .. }
        | Error::Io(_)
        | Error::TooManyVariables(_)
        | Error::VariableCountMismatch { .. } => EXIT_PARSE,
        _ => EXIT_PRECONDITION,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    let timeout = cli.timeout.map(Duration::from_secs);
    let format = cli.format;
    match run(cli, jobs, timeout) {
        Ok(out) => {
            emit(&out, format);
            ExitCode::from(out.code)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Timeout(partial)) => {
            if let Some(out) = partial {
                emit(&out, format);
            }
            eprintln!("error: time limit exceeded");
            ExitCode::from(EXIT_TIMEOUT)
        }
    }
}

fn emit(out: &Output, format: Format) {
    match format {
        Format::Text => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
    }
}

/// Runs a single-instance command under the time limit.
fn single<F>(timeout: Option<Duration>, f: F) -> Result<Output, Failure>
where
    F: FnOnce() -> Result<Output, Error> + Send + 'static,
{
    match with_timeout(timeout, f) {
        Some(r) => r.map_err(Failure::Engine),
        None => Err(Failure::Timeout(None)),
    }
}

fn run(cli: Cli, jobs: usize, timeout: Option<Duration>) -> Result<Output, Failure> {
    let timings = cli.timings;
    match cli.command {
        Command::Lattice { input } => {
            let a = io::read_file(&input)?;
            single(timeout, move || Ok(lattice(&a)))
        }
        Command::Betti { input } => {
            let a = io::read_file(&input)?;
            single(timeout, move || Ok(betti(&a)))
        }
        Command::Classify { input } => {
            let a = io::read_file(&input)?;
            single(timeout, move || Ok(classify_cmd(&a, timings)))
        }
        Command::Derivations { input } => {
            let a = io::read_file(&input)?;
            single(timeout, move || Ok(derivations(&a)))
        }
        Command::AssocPrimes { input, cross_validate } => {
            let a = io::read_file(&input)?;
            single(timeout, move || assoc(&a, cross_validate, timings))
        }
        Command::Localize { input, flat, essential } => {
            let a = io::read_file(&input)?;
            let x = a.flat(&flat)?;
            let ax = if essential {
                a.essentialize(&x)?.arrangement
            } else {
                a.localization(&x)?
            };
            Ok(arrangement_output(&ax))
        }
        Command::Restrict { input, hyperplane } => {
            let a = io::read_file(&input)?;
            Ok(arrangement_output(&a.restriction(hyperplane)?))
        }
        Command::Delete { input, hyperplane } => {
            let a = io::read_file(&input)?;
            Ok(arrangement_output(&a.deletion(hyperplane)?))
        }
        Command::Cone { input } => {
            let s = read(&input)?;
            Ok(arrangement_output(&io::cone_from_text(&s)?))
        }
        Command::SaitoVerify { input, candidates } => {
            let a = io::read_file(&input)?;
            let cands = match candidates {
                Some(p) => Some(parse_candidates(&read(&p)?, &a)?),
                None => None,
            };
            single(timeout, move || saito(&a, cands))
        }
        Command::VerifyTheorems {
            paths,
            seed,
            count,
            dims,
            max_hyperplanes,
            bound,
            repro_dir,
        } => {
            let mut corpus = Vec::new();
            for p in &paths {
                collect_corpus(p, &mut corpus)?;
            }
            if count > 0 {
                let lo = dims.iter().copied().min().unwrap_or(1);
                for (k, a) in sample_suite(seed, count, &dims, lo..=max_hyperplanes.max(lo), bound)?
                    .into_iter()
                    .enumerate()
                {
                    corpus.push((format!("random-{seed}-{k}"), a));
                }
            }
            verify(corpus, jobs, timeout, &repro_dir)
        }
        Command::SearchDeletionPog {
            seed,
            count,
            dim,
            max_hyperplanes,
            bound,
            input,
        } => {
            let instances = match input {
                Some(p) => vec![io::read_file(&p)?],
                None => sample_suite(seed, count, &[dim], dim..=max_hyperplanes.max(dim), bound)?,
            };
            let header = json!({
                "seed": seed,
                "count": instances.len(),
                "dim": dim,
                "max_hyperplanes": max_hyperplanes,
                "bound": bound,
            });
            search(instances, header, jobs, timeout)
        }
        Command::Random {
            seed,
            count,
            dim,
            max_hyperplanes,
            bound,
        } => {
            let all = sample_suite(seed, count, &[dim], dim..=max_hyperplanes.max(dim), bound)?;
            let text = all.iter().map(io::to_text).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(text, all.iter().map(io::to_json).collect::<Vec<_>>().into()))
        }
    }
}

fn read(p: &Path) -> Result<String, Error> {
    std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn flat_label(x: &Flat) -> String {
    let idx: Vec<String> = x.indices().iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", idx.join(","))
}

fn flat_generators(a: &Arrangement, x: &Flat) -> Vec<String> {
    a.flat_basis(x)
        .expect("flat of this arrangement")
        .iter()
        .map(|&i| a.form(i).render(a.names()))
        .collect()
}

fn kind_text(k: &Kind) -> String {
    let list = |v: &[i64]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
    match k {
        Kind::Free { exponents } => format!("kind: Free\nexponents: {}\n", list(exponents)),
        Kind::PlusOneGenerated { poexp, level } => {
            format!("kind: PlusOneGenerated\npoexp: {}\nlevel: {level}\n", list(poexp))
        }
        Kind::Other => "kind: Other\n".into(),
    }
}

fn arrangement_output(a: &Arrangement) -> Output {
    Output::ok(io::to_text(a), io::to_json(a))
}

fn lattice(a: &Arrangement) -> Output {
    let lat = a.lattice();
    let mut text = String::new();
    let mut levels = Vec::new();
    for (p, level) in lat.levels().iter().enumerate() {
        text.push_str(&format!("rank {p}: {} flat{}\n", level.len(), if level.len() == 1 { "" } else { "s" }));
        let mut entries = Vec::new();
        for x in level {
            let gens = flat_generators(a, x);
            text.push_str(&format!("  {} <{}>\n", flat_label(x), gens.join(", ")));
            entries.push(json!({"flat": x.indices(), "rank": x.rank(), "generators": gens}));
        }
        levels.push(Value::from(entries));
    }
    Output::ok(text, json!({"counts": lat.counts(), "levels": levels}))
}

fn betti(a: &Arrangement) -> Output {
    let c = classify(a);
    let (pd, depth) = projdim_and_depth(&c.betti, a.nvars());
    let text = format!(
        "{}\n{}\nprojdim: {pd}\ndepth: {depth}\n",
        c.betti.notation(),
        c.betti.grid()
    );
    let json = json!({
        "notation": c.betti.notation(),
        "betti": c.betti.to_json(),
        "totals": c.betti.totals(),
        "projdim": pd,
        "depth": depth,
        "resolution": c.resolution.to_json(Some(a.names())),
    });
    Output::ok(text, json)
}

fn classify_cmd(a: &Arrangement, timings: bool) -> Output {
    let c = classify(a);
    let mut text = kind_text(&c.kind);
    text.push_str(&format!("S/J(A): {}\n", c.betti.notation()));
    text.push_str(&format!("D(A): {}\n", c.derivations.notation()));
    if c.manual_review {
        text.push_str("manual review: plus-one generated shape with a vanishing linear entry\n");
    }
    Output::ok(text, c.to_json(a.names(), timings))
}

fn derivation_json(d: &Derivation<Rat>, names: &[String]) -> Value {
    json!({
        "pdeg": d.pdeg(),
        "coefficients": d.coeffs().iter().map(|c| c.render(names)).collect::<Vec<_>>(),
    })
}

fn derivations(a: &Arrangement) -> Output {
    let m = derivation_module(a);
    let mut text = format!("{}\n", m.notation());
    for d in &m.generators {
        text.push_str(&format!("pdeg {}: {}\n", d.pdeg().unwrap_or(0), d.render(a.names())));
    }
    let json = json!({
        "resolution": m.notation(),
        "shifts": m.resolution.modules().iter().map(|x| x.degrees().to_vec()).collect::<Vec<_>>(),
        "generators": m.generators.iter().map(|d| derivation_json(d, a.names())).collect::<Vec<_>>(),
    });
    Output::ok(text, json)
}

fn assoc(a: &Arrangement, cross: bool, timings: bool) -> Result<Output, Error> {
    if cross {
        let mut cv = cross_validate_ass(a)?;
        if !timings {
            cv.combinatorial_us = 0;
            cv.oracle_us = 0;
        }
        let text = format!(
            "methods agree: {}\ncombinatorial: {:?}\noracle: {:?}\n",
            cv.agree, cv.combinatorial, cv.oracle
        );
        let mut json = serde_json::to_value(&cv).expect("plain data");
        if !timings {
            let o = json.as_object_mut().unwrap();
            o.remove("combinatorial_us");
            o.remove("oracle_us");
        }
        let code = if cv.agree { 0 } else { EXIT_VIOLATION };
        return Ok(Output { text, json, code });
    }
    let ass = associated_primes(a)?;
    let method = serde_json::to_value(ass.method).expect("plain data");
    let mut text = format!("method: {}\n", method.as_str().unwrap());
    for x in &ass.flats {
        text.push_str(&format!(
            "rank {} {} <{}>\n",
            x.rank(),
            flat_label(x),
            flat_generators(a, x).join(", ")
        ));
    }
    Ok(Output::ok(text, ass.to_json(a)))
}

fn parse_candidates(s: &str, a: &Arrangement) -> Result<Vec<Derivation<Rat>>, Error> {
    s.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(|line| {
            let coeffs = line
                .split(',')
                .map(|p| parse_poly::<Rat>(p.trim(), a.names()))
                .collect::<Result<Vec<_>, _>>()?;
            Derivation::new(coeffs)
        })
        .collect()
}

fn saito(a: &Arrangement, cands: Option<Vec<Derivation<Rat>>>) -> Result<Output, Error> {
    let (source, cands) = match cands {
        Some(c) => ("candidates", c),
        None => ("computed", derivation_module(a).generators),
    };
    let rendered: Vec<Value> = cands.iter().map(|d| derivation_json(d, a.names())).collect();
    if cands.len() != a.nvars() {
        let text = format!(
            "{} {source} derivations for {} variables: not a basis\n",
            cands.len(),
            a.nvars()
        );
        let json = json!({"source": source, "candidates": rendered, "result": "not_a_basis"});
        return Ok(Output::ok(text, json));
    }
    match saito_check(&cands, a) {
        Ok(basis) => {
            let result = if basis { "basis" } else { "not_a_basis" };
            let text = format!("{source} derivations: {}\n", result.replace('_', " "));
            let json = json!({"source": source, "candidates": rendered, "result": result});
            Ok(Output::ok(text, json))
        }
        Err(Error::NotLogarithmic(i)) => {
            let text = format!("derivation {i} is not logarithmic\n");
            let json = json!({"source": source, "candidates": rendered, "result": "not_logarithmic", "index": i});
            Ok(Output {
                text,
                json,
                code: EXIT_PRECONDITION,
            })
        }
        Err(e) => Err(e),
    }
}

fn collect_corpus(p: &Path, out: &mut Vec<(String, Arrangement)>) -> Result<(), Error> {
    if p.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(p)
            .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|f| f.extension().is_some_and(|x| x == "json" || x == "txt"))
            .collect();
        files.sort();
        for f in files {
            out.push((f.display().to_string(), io::read_file(&f)?));
        }
    } else {
        out.push((p.display().to_string(), io::read_file(p)?));
    }
    Ok(())
}

fn verify(
    corpus: Vec<(String, Arrangement)>,
    jobs: usize,
    timeout: Option<Duration>,
    repro_dir: &Path,
) -> Result<Output, Failure> {
    let names: Vec<String> = corpus.iter().map(|(n, _)| n.clone()).collect();
    let arrangements: Vec<Arrangement> = corpus.into_iter().map(|(_, a)| a).collect();
    let batch = run_all(arrangements.clone(), jobs, timeout, |a: Arrangement| {
        check_arrangement(&a, Checks::default())
    });
    let mut text = String::new();
    let mut items = Vec::new();
    let (mut violations, mut errors, mut checks) = (0usize, 0usize, 0usize);
    for (i, r) in batch.results.iter().enumerate() {
        let Some(r) = r else { continue };
        match r {
            Ok(rep) => {
                checks += rep.checks;
                violations += rep.violations.len();
                text.push_str(&format!(
                    "{}: {} ({} checks, {} violations)\n",
                    names[i],
                    rep.kind.name(),
                    rep.checks,
                    rep.violations.len()
                ));
                let mut repros = Vec::new();
                for v in &rep.violations {
                    text.push_str(&format!("  {}: {}\n", v.property, v.detail));
                    let small = minimize_violation(&arrangements[i], &v.property, Checks::default());
                    let path = repro_dir.join(format!("repro-{i}-{}.json", v.property));
                    std::fs::create_dir_all(repro_dir)
                        .and_then(|_| std::fs::write(&path, io::to_json(&small).to_string()))
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    text.push_str(&format!("  reproduction: {}\n", path.display()));
                    repros.push(path.display().to_string());
                }
                items.push(json!({
                    "source": names[i],
                    "kind": rep.kind.name(),
                    "checks": rep.checks,
                    "violations": rep.violations,
                    "reproductions": repros,
                }));
            }
            Err(e) => {
                errors += 1;
                text.push_str(&format!("{}: error: {e}\n", names[i]));
                items.push(json!({"source": names[i], "error": e.to_string()}));
            }
        }
    }
    let completed = batch.results.iter().filter(|r| r.is_some()).count();
    text.push_str(&format!(
        "{completed} instances, {checks} checks, {violations} violations, {errors} errors\n"
    ));
    let json = json!({
        "instances": items,
        "completed": completed,
        "checks": checks,
        "violations": violations,
        "errors": errors,
        "timed_out": batch.timed_out.map(|i| names[i].clone()),
    });
    let code = if violations > 0 {
        EXIT_VIOLATION
    } else if errors > 0 {
        EXIT_PRECONDITION
    } else {
        0
    };
    let out = Output { text, json, code };
    if batch.timed_out.is_some() {
        Err(Failure::Timeout(Some(out)))
    } else {
        Ok(out)
    }
}

fn search(instances: Vec<Arrangement>, header: Value, jobs: usize, timeout: Option<Duration>) -> Result<Output, Failure> {
    let batch = run_all(instances.clone(), jobs, timeout, |a: Arrangement| {
        let c = classify(&a);
        if !c.kind.is_pog() {
            return None;
        }
        let kinds: Vec<Kind> = (0..a.len())
            .map(|h| classify(&a.deletion(h).expect("index in range")).kind)
            .collect();
        Some(kinds)
    });
    let (mut pog, mut free_d, mut pog_d, mut other_d) = (0usize, 0usize, 0usize, 0usize);
    let mut witnesses = Vec::new();
    let mut text = String::new();
    for (i, r) in batch.results.iter().enumerate() {
        let Some(Some(kinds)) = r else { continue };
        pog += 1;
        let a = &instances[i];
        let f = kinds.iter().filter(|k| k.is_free()).count();
        let p = kinds.iter().filter(|k| k.is_pog()).count();
        let o = kinds.len() - f - p;
        free_d += f;
        pog_d += p;
        other_d += o;
        if f > 0 && p > 0 && o > 0 {
            text.push_str(&format!("witness {i}: {}\n", a.rendered_forms().join(", ")));
            let deletions: Vec<Value> = kinds
                .iter()
                .enumerate()
                .map(|(h, k)| {
                    text.push_str(&format!("  delete {}: {}\n", a.form(h).render(a.names()), k.name()));
                    json!({"hyperplane": h, "form": a.form(h).render(a.names()), "classification": k})
                })
                .collect();
            witnesses.push(json!({"index": i, "arrangement": io::to_json(a), "deletions": deletions}));
        }
    }
    let completed = batch.results.iter().filter(|r| r.is_some()).count();
    text.insert_str(
        0,
        &format!(
            "{completed} arrangements, {pog} plus-one generated\ndeletions: {free_d} free, {pog_d} plus-one generated, {other_d} other\n{} witnesses\n",
            witnesses.len()
        ),
    );
    let json = json!({
        "model": header,
        "completed": completed,
        "plus_one_generated": pog,
        "tally": {"free": free_d, "plus_one_generated": pog_d, "other": other_d},
        "witnesses": witnesses,
        "timed_out": batch.timed_out,
    });
    let out = Output::ok(text, json);
    if batch.timed_out.is_some() {
        Err(Failure::Timeout(Some(out)))
    } else {
        Ok(out)
    }
}
