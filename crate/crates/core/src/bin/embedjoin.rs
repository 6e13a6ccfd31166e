use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use embedjoin::bench::{self, GenSpec, ProbeSpec};
use embedjoin::join::{self, BitsRule, JoinResult, Mode, Overrides};
use embedjoin::pairs::{read_pairs, write_pairs};
use embedjoin::pinned::PinnedScheme;
use embedjoin::{cgk, Corpus, Truncation};

#[derive(Parser)]
#[command(
    name = "embedjoin",
    version,
    about = "Edit-distance similarity self-join"
)]
struct Cli {
    /// Worker threads for the parallel phases (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Basic,
    Plus,
}

#[derive(Subcommand)]
enum Command {
    /// Join a corpus and write `id_a<TAB>id_b<TAB>distance` lines.
    Join(JoinArgs),
    /// Exact all-pairs join.
    Oracle {
        #[arg(short = 'k', long = "threshold")]
        threshold: usize,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a synthetic corpus with planted near-duplicates.
    Gen(GenArgs),
    /// Compare a result pair file with a ground-truth pair file.
    Eval {
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        /// Candidate count used for the candidate ratio.
        #[arg(long, default_value_t = 0)]
        candidates: usize,
        /// Corpus the pairs refer to; enables the id range check.
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// Best distortion of planted pairs over repeated embeddings (CSV).
    Distort(DistortArgs),
    /// Minimum normalized Hamming distance sweep over truncation lengths (CSV).
    Probe(ProbeArgs),
}

#[derive(clap::Args)]
struct JoinArgs {
    #[arg(short = 'k', long = "threshold")]
    threshold: usize,
    #[arg(short = 'r', long = "reps")]
    reps: Option<usize>,
    #[arg(short = 'z', long = "tables")]
    tables: Option<usize>,
    #[arg(short = 'm', long = "bits")]
    bits: Option<usize>,
    /// Use `m = base - floor(log2 x)` instead of `ceil(log2 N) - floor(log2 x)`.
    #[arg(long)]
    bits_base: Option<u32>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(short = 't', long = "match-threshold")]
    match_threshold: Option<usize>,
    /// auto, avg, 2avg or a length.
    #[arg(long = "truncate", default_value = "auto")]
    truncate: Truncation,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    #[arg(long)]
    grouping: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    metrics: Option<PathBuf>,
    /// Ground-truth pairs; adds recall to the metrics.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// JSON file with explicit walk coins and sampled positions.
    #[arg(long)]
    pin_scheme: Option<PathBuf>,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long)]
    n_base: usize,
    #[arg(long = "dup", default_value_t = 1)]
    dup_per_base: usize,
    #[arg(long)]
    len: usize,
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    #[arg(long, default_value_t = 0)]
    max_edits: usize,
    #[arg(long, default_value_t = 0)]
    max_shift: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Corpus output path.
    #[arg(short, long)]
    output: PathBuf,
    /// Planted-pair output path.
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(clap::Args)]
struct DistortArgs {
    /// Pairs file with `x<TAB>y` per line; generated pairs are used if absent.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pairs: usize,
    #[arg(long, default_value_t = 1000)]
    len: usize,
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    #[arg(long, default_value_t = 30)]
    max_edits: usize,
    #[arg(long, default_value_t = 0)]
    max_shift: usize,
    #[arg(short = 'r', long = "reps", default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ProbeArgs {
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1000)]
    len: usize,
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    #[arg(long, default_value_t = 15)]
    max_edits: usize,
    #[arg(long, default_value_t = 20)]
    max_shift: usize,
    #[arg(short = 'r', long = "reps", default_value_t = 7)]
    reps: usize,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(short = 'k', long = "threshold", default_value_t = 40)]
    threshold: usize,
    /// Comma-separated truncation lengths (default: len/2, len, 2*len).
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_pairs(path: &Path) -> Result<JoinResult> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let pairs =
        read_pairs(BufReader::new(file)).with_context(|| format!("in {}", path.display()))?;
    Ok(JoinResult {
        pairs,
        ..Default::default()
    })
}

fn run_join(args: JoinArgs) -> Result<()> {
    let corpus = Corpus::load(&args.input)?;
    let mut ov = Overrides {
        reps: args.reps,
        tables: args.tables,
        bits: args.bits,
        delta: args.delta,
        match_threshold: args.match_threshold,
        truncation: args.truncate,
        mode: match args.mode {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Basic => Mode::Basic,
            ModeArg::Plus => Mode::Plus,
        },
        bits_rule: args.bits_base.map_or(BitsRule::LogMaxLen, BitsRule::Base),
        prime: args.prime,
        grouping: args.grouping,
        seed: args.seed,
    };
    let pinned = args
        .pin_scheme
        .as_deref()
        .map(PinnedScheme::load)
        .transpose()?;
    if let Some(p) = &pinned {
        p.apply(&mut ov);
    }
    let cfg = join::resolve_parameters(&corpus, args.threshold, &ov)?;
    let result = match &pinned {
        Some(p) => {
            if cfg.grouping {
                bail!("--pin-scheme cannot be combined with --grouping");
            }
            let walks = p.walks(corpus.alphabet(), corpus.max_len())?;
            let scheme = p.scheme(cfg.truncation, args.prime, cfg.seed)?;
            let index = join::preprocess_with(&corpus, &cfg, &walks, scheme)?;
            join::join_index(&index)
        }
        None => join::embed_join(&corpus, &cfg)?,
    };

    let mut out = open_output(args.output.as_deref())?;
    write_pairs(&mut out, &result.pairs).context("writing pairs")?;

    if let Some(path) = &args.metrics {
        let mut obj = Map::new();
        if let Some(truth) = &args.truth {
            let truth = load_pairs(truth)?;
            let m = bench::evaluate(
                &result,
                &truth,
                result.metrics.pairs_verified,
                Some(corpus.len()),
            )?;
            obj.insert("recall".into(), json!(m.recall));
        }
        let Value::Object(metrics) = serde_json::to_value(&result.metrics)? else {
            unreachable!("metrics serialize to an object");
        };
        obj.extend(metrics);
        obj.insert("resolved_config".into(), serde_json::to_value(&cfg)?);
        let mut f = open_output(Some(path))?;
        serde_json::to_writer_pretty(&mut f, &Value::Object(obj))?;
        writeln!(f)?;
        f.flush()?;
    }
    Ok(())
}

fn run_gen(args: GenArgs) -> Result<()> {
    let spec = GenSpec {
        n_base: args.n_base,
        dup_per_base: args.dup_per_base,
        len: args.len,
        alphabet_size: args.alphabet,
        max_edits: args.max_edits,
        max_shift: args.max_shift,
        seed: args.seed,
    };
    let data = bench::generate_dataset(&spec)?;
    let mut out = open_output(Some(&args.output))?;
    for line in &data.lines {
        out.write_all(line)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    if let Some(path) = &args.truth {
        write_pairs(open_output(Some(path))?, &data.planted)?;
    }
    Ok(())
}

fn run_distort(args: DistortArgs) -> Result<()> {
    let (pairs, sigma) = match &args.input {
        Some(path) => {
            let text =
                std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
            let mut halves = Vec::new();
            for (n, line) in text.split(|&b| b == b'\n').enumerate() {
                let line = line.strip_suffix(b"\r").unwrap_or(line);
                if line.is_empty() {
                    continue;
                }
                let Some(tab) = line.iter().position(|&b| b == b'\t') else {
                    bail!("line {} of {}: expected x<TAB>y", n + 1, path.display());
                };
                halves.push(line[..tab].to_vec());
                halves.push(line[tab + 1..].to_vec());
            }
            let corpus = Corpus::from_lines(&halves)?;
            let pairs = (0..corpus.len() / 2)
                .map(|i| (corpus.get(2 * i).to_vec(), corpus.get(2 * i + 1).to_vec()))
                .collect::<Vec<_>>();
            (pairs, corpus.alphabet().size())
        }
        None => {
            let data = bench::generate_dataset(&GenSpec {
                n_base: args.pairs,
                dup_per_base: 1,
                len: args.len,
                alphabet_size: args.alphabet,
                max_edits: args.max_edits,
                max_shift: args.max_shift,
                seed: args.seed,
            })?;
            let pairs = data
                .planted
                .iter()
                .filter(|p| p.distance > 0)
                .map(|p| (data.corpus.get(p.a).to_vec(), data.corpus.get(p.b).to_vec()))
                .collect::<Vec<_>>();
            (pairs, data.corpus.alphabet().size())
        }
    };
    let best = cgk::measure_distortion(&pairs, sigma, args.reps, args.seed)?;
    let mut out = open_output(args.output.as_deref())?;
    writeln!(out, "pair_id,distortion")?;
    for (i, d) in best.iter().enumerate() {
        writeln!(out, "{i},{d}")?;
    }
    out.flush()?;
    Ok(())
}

fn run_probe(args: ProbeArgs) -> Result<()> {
    let data = bench::generate_dataset(&GenSpec {
        n_base: 2 * args.trials,
        dup_per_base: 1,
        len: args.len,
        alphabet_size: args.alphabet,
        max_edits: args.max_edits,
        max_shift: args.max_shift,
        seed: args.seed,
    })?;
    let lengths = if args.lengths.is_empty() {
        vec![(args.len / 2).max(1), args.len, 2 * args.len]
    } else {
        args.lengths.clone()
    };
    let spec = ProbeSpec {
        reps: args.reps,
        delta: args
            .delta
            .unwrap_or_else(|| ((args.len as f64).sqrt() as usize).max(1)),
        threshold: args.threshold,
        lengths: lengths.clone(),
        seed: args.seed,
    };
    let sigma = data.corpus.alphabet().size();
    let mut out = open_output(args.output.as_deref())?;
    writeln!(out, "trial,kind,length,min_normalized_hamming")?;
    for t in 0..args.trials {
        let similar = data.planted[t];
        let other = data.planted[t + args.trials];
        let cases = [
            ("similar", similar.a, similar.b),
            ("random", similar.a, other.a),
        ];
        for (kind, a, b) in cases {
            let values = bench::min_normalized_hamming(
                data.corpus.get(a),
                data.corpus.get(b),
                sigma,
                &spec,
            )?;
            for (len, v) in lengths.iter().zip(values) {
                writeln!(out, "{t},{kind},{len},{v}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::Join(args) => run_join(args),
        Command::Oracle {
            threshold,
            input,
            output,
        } => {
            let corpus = Corpus::load(&input)?;
            let result = bench::oracle_join(&corpus, threshold);
            write_pairs(open_output(output.as_deref())?, &result.pairs)?;
            Ok(())
        }
        Command::Gen(args) => run_gen(args),
        Command::Eval {
            result,
            truth,
            candidates,
            input,
        } => {
            let n = input.map(Corpus::load).transpose()?.map(|c| c.len());
            let metrics =
                bench::evaluate(&load_pairs(&result)?, &load_pairs(&truth)?, candidates, n)?;
            println!("{}", serde_json::to_string_pretty(&metrics)?);
            Ok(())
        }
        Command::Distort(args) => run_distort(args),
        Command::Probe(args) => run_probe(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
