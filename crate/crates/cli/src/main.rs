mod range;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spcpc::bec_analysis::{euler_rate_limit, product_bit_erasures, threshold_lower_bound, SequenceFamily};
use spcpc::channels::{sigma_from_ebn0, ChannelParams, LlrWord, TernaryWord};
use spcpc::codes::{BitMatrix, BitWord, MatrixJson, ProductCodeSpec};
use spcpc::crc::CrcSpec;
use spcpc::density_evolution::{de_bit_error_probs, DeGrid};
use spcpc::enumerators::{
    awgn_union_bound, bec_union_bound, product_iowef, product_wef, to_f64, WeightEnumerator, WefJson,
};
use spcpc::sc::{elias_decode, sc_decode, Observation, ScDecision};
use spcpc::scl::{bec_ml_decode, ml_exhaustive, scl_decode, BecMl, SclConfig};
use spcpc::sim::{run_bler, with_threads, DecoderSpec, SimConfig};

use range::parse_grid;

/// Single parity-check product codes as multi-kernel polar codes.
///
/// Grids are written `start:stop:step` and include `stop` when it lies on the grid.
#[derive(Parser, Debug)]
#[command(name = "spcpc", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the frozen set, generator or transform of a product code.
    Construct(ConstructArgs),
    /// Encode a message.
    Encode(EncodeArgs),
    /// Decode one channel observation.
    Decode(DecodeArgs),
    /// Monte Carlo block error rates.
    Simulate(SimulateArgs),
    /// Closed-form analyses.
    Analyze {
        #[command(subcommand)]
        what: AnalyzeCommand,
    },
    /// Density-evolution union bound over the B-AWGN channel.
    De(DeArgs),
    /// Exact weight enumerator.
    Wef(WefArgs),
    /// Union bounds from a weight enumerator.
    Bounds(BoundsArgs),
    /// Lower bound on the block erasure threshold of a code family.
    Threshold(ThresholdArgs),
}

#[derive(Subcommand, Debug)]
enum AnalyzeCommand {
    /// Per-bit SC erasure probabilities and block bounds over the BEC.
    Bec(AnalyzeBecArgs),
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    /// Component lengths, e.g. `5,5,5`.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    /// Keep the given component order instead of sorting it.
    #[arg(long)]
    keep_order: bool,
}

impl CodeArgs {
    fn spec(&self) -> Result<ProductCodeSpec> {
        Ok(if self.keep_order {
            ProductCodeSpec::with_order(&self.dims)?
        } else {
            ProductCodeSpec::new(&self.dims)?
        })
    }
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// `json`, `csv`, or a file path (format from the extension unless `--format` is given).
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

impl OutputArgs {
    fn target(&self) -> (Option<PathBuf>, Format) {
        match self.out.as_deref() {
            None => (None, self.format.unwrap_or(Format::Json)),
            Some("json") => (None, self.format.unwrap_or(Format::Json)),
            Some("csv") => (None, self.format.unwrap_or(Format::Csv)),
            Some(path) => {
                let inferred = if path.ends_with(".csv") { Format::Csv } else { Format::Json };
                (Some(PathBuf::from(path)), self.format.unwrap_or(inferred))
            }
        }
    }

    fn emit(&self, json: &Value, table: Option<&Table>) -> Result<()> {
        let (path, format) = self.target();
        let text = match format {
            Format::Json => serde_json::to_string(json)? + "\n",
            Format::Csv => table.ok_or_else(|| anyhow!("this command has no CSV form"))?.to_csv(),
        };
        match path {
            Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn to_csv(&self) -> String {
        let mut s = self.header.join(",") + "\n";
        for r in &self.rows {
            s += &(r.join(",") + "\n");
        }
        s
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Emit {
    Frozen,
    Info,
    Generator,
    Transform,
    Params,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum, default_value = "params")]
    emit: Emit,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Message bits, e.g. `1000`.
    #[arg(long)]
    message: String,
    /// Outer CRC polynomial (`0x1D7`, `crc8-spc`, `crc8-polar`).
    #[arg(long)]
    crc: Option<CrcSpec>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum DecoderKind {
    Sc,
    Elias,
    Scl,
    Ml,
}

#[derive(Args, Debug, Clone)]
struct DecoderArgs {
    #[arg(long, value_enum, default_value = "sc")]
    decoder: DecoderKind,
    #[arg(long, default_value_t = 8)]
    list_size: usize,
}

impl DecoderArgs {
    fn spec(&self) -> DecoderSpec {
        match self.decoder {
            DecoderKind::Sc => DecoderSpec::Sc,
            DecoderKind::Elias => DecoderSpec::Elias,
            DecoderKind::Scl => DecoderSpec::Scl {
                list_size: self.list_size,
            },
            DecoderKind::Ml => DecoderSpec::Ml,
        }
    }
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// Component lengths; may be omitted when `--code` is given.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    /// JSON written by `construct --emit generator`.
    #[arg(long)]
    code: Option<PathBuf>,
    /// BEC output over `{0,1,?}`.
    #[arg(long, conflicts_with = "llr")]
    bec: Option<String>,
    /// Comma-separated channel LLRs (positive favours 0).
    #[arg(long, allow_hyphen_values = true)]
    llr: Option<String>,
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long)]
    crc: Option<CrcSpec>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ChannelKind {
    Bec,
    Bawgn,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long)]
    crc: Option<CrcSpec>,
    #[arg(long, value_enum)]
    channel: ChannelKind,
    /// Erasure probabilities (BEC).
    #[arg(long)]
    epsilon: Option<String>,
    /// Eb/N0 grid in dB (B-AWGN), using the overall rate.
    #[arg(long, allow_hyphen_values = true)]
    ebn0_db: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    max_trials: u64,
    #[arg(long, default_value_t = 100)]
    target_errors: u64,
    /// Send the all-zero message.
    #[arg(long)]
    all_zero: bool,
    /// Also count genie-aided SC errors per information bit.
    #[arg(long)]
    record_first_errors: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, env = "SPCPC_THREADS")]
    threads: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct AnalyzeBecArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    epsilon_grid: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct DeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, allow_hyphen_values = true)]
    ebn0_db: String,
    #[arg(long, default_value_t = DeGrid::DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = DeGrid::DEFAULT_LMAX)]
    lmax: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct WefArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Input-output enumerator of the systematic encoder.
    #[arg(long)]
    io: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Enumerator JSON written by `wef`.
    #[arg(long, conflicts_with = "dims")]
    wef: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long, value_enum)]
    channel: ChannelKind,
    /// Erasure probabilities (BEC) or Eb/N0 in dB (B-AWGN).
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyKind {
    Euler,
    SelfSimilar,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// `a²` of the Euler family.
    #[arg(long)]
    a2: Option<u64>,
    /// `m` of the self-similar family.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn echo_config(command: &str, config: Value) {
    eprintln!("{}", json!({ "command": command, "config": config }));
}

fn bits_string(w: &BitWord) -> String {
    w.to_string()
}

fn construct(a: &ConstructArgs) -> Result<()> {
    let spec = a.code.spec()?;
    echo_config("construct", json!({ "dims": spec.dims(), "emit": format!("{:?}", a.emit).to_lowercase() }));
    let out = match a.emit {
        Emit::Frozen => json!({ "frozen": spec.frozen() }),
        Emit::Info => json!({ "info": spec.info() }),
        Emit::Generator => json!({ "dims": spec.dims(), "generator": spec.generator_matrix()?.to_json_repr() }),
        Emit::Transform => json!({ "dims": spec.dims(), "transform": spec.transform_matrix()?.to_json_repr() }),
        Emit::Params => json!({
            "dims": spec.dims(), "n": spec.n(), "k": spec.k(), "d": spec.d(), "rate": spec.rate(),
            "frozen": spec.frozen(),
        }),
    };
    a.output.emit(&out, None)
}

fn encode(a: &EncodeArgs) -> Result<()> {
    let spec = a.code.spec()?;
    echo_config("encode", json!({ "dims": spec.dims(), "crc": a.crc.map(|c| c.to_string()) }));
    let msg = BitWord::parse(&a.message)?;
    let inner = match a.crc {
        Some(c) => c.encode(&msg),
        None => msg.clone(),
    };
    let x = spec.encode(&inner)?;
    a.output.emit(
        &json!({ "message": bits_string(&msg), "codeword": bits_string(&x) }),
        None,
    )
}

/// Generator file written by `construct --emit generator`.
#[derive(serde::Deserialize)]
struct CodeFile {
    dims: Vec<usize>,
    generator: MatrixJson,
}

fn decode_spec(a: &DecodeArgs) -> Result<ProductCodeSpec> {
    match &a.code {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let file: CodeFile = serde_json::from_str(&text).context("parsing code file")?;
            if !a.dims.is_empty() && a.dims != file.dims {
                bail!("--dims {:?} disagrees with the code file {:?}", a.dims, file.dims);
            }
            let spec = ProductCodeSpec::with_order(&file.dims)?;
            if BitMatrix::from_json_repr(&file.generator)? != *spec.generator_matrix()? {
                bail!("the generator in {} is not the product-code generator for {:?}", path.display(), file.dims);
            }
            Ok(spec)
        }
        None if a.dims.is_empty() => bail!("either --dims or --code is required"),
        None => Ok(ProductCodeSpec::new(&a.dims)?),
    }
}

fn decision_json(d: &ScDecision) -> Value {
    let message: String = d.bits.iter().map(|t| t.as_char()).collect();
    json!({ "message": message, "erasures": d.bits.iter().filter(|t| t.is_erasure()).count(), "llrs": d.llrs })
}

fn decode(a: &DecodeArgs) -> Result<()> {
    let spec = decode_spec(a)?;
    let obs = match (&a.bec, &a.llr) {
        (Some(y), None) => Observation::Bec(TernaryWord::parse(y)?),
        (None, Some(l)) => Observation::Llr(LlrWord(
            l.split(',')
                .map(|v| v.trim().parse::<f64>().with_context(|| format!("bad LLR {v:?}")))
                .collect::<Result<_>>()?,
        )),
        _ => bail!("exactly one of --bec or --llr is required"),
    };
    let decoder = a.decoder.spec();
    echo_config(
        "decode",
        json!({ "dims": spec.dims(), "decoder": decoder, "crc": a.crc.map(|c| c.to_string()) }),
    );
    if obs.len() != spec.n() {
        bail!("observation has {} symbols, the code has length {}", obs.len(), spec.n());
    }
    let mut out = match (decoder, &obs) {
        (DecoderSpec::Sc, _) => decision_json(&sc_decode(&spec, &obs)?),
        (DecoderSpec::Elias, _) => decision_json(&elias_decode(&spec, &obs)?),
        (DecoderSpec::Scl { list_size }, Observation::Llr(llr)) => {
            let cfg = match a.crc {
                Some(c) => SclConfig::with_crc(list_size, c)?,
                None => SclConfig::new(list_size)?,
            };
            let r = scl_decode(&spec, llr, &cfg)?;
            json!({ "message": bits_string(&r.message), "metric": r.metric, "crc_failed": r.crc_failed })
        }
        (DecoderSpec::Scl { .. }, Observation::Bec(_)) => bail!("list decoding needs LLR input"),
        (DecoderSpec::Ml, Observation::Llr(llr)) => json!({ "message": bits_string(&ml_exhaustive(&spec, llr)?) }),
        (DecoderSpec::Ml, Observation::Bec(y)) => match bec_ml_decode(&spec, y)? {
            BecMl::Unique(u) => json!({ "message": bits_string(&u), "ambiguous": false }),
            BecMl::Ambiguous => json!({ "message": Value::Null, "ambiguous": true }),
        },
    };
    if let (Some(c), Some(m)) = (a.crc, out.get("message").and_then(Value::as_str)) {
        if !m.contains('?') {
            out["outer_message"] = json!(bits_string(&c.strip(&BitWord::parse(m)?)));
        }
    }
    out["decoder"] = json!(decoder.to_string());
    a.output.emit(&out, None)
}

fn simulate(a: &SimulateArgs) -> Result<()> {
    let spec = a.code.spec()?;
    let decoder = a.decoder.spec();
    let k_o = spec.k() - a.crc.map_or(0, |c| c.degree()).min(spec.k());
    let rate = k_o as f64 / spec.n() as f64;
    let (axis, xs) = match (a.channel, &a.epsilon, &a.ebn0_db) {
        (ChannelKind::Bec, Some(e), None) => ("epsilon", parse_grid(e)?),
        (ChannelKind::Bawgn, None, Some(s)) => ("ebn0_db", parse_grid(s)?),
        (ChannelKind::Bec, _, _) => bail!("the BEC needs --epsilon (and no --ebn0-db)"),
        (ChannelKind::Bawgn, _, _) => bail!("the B-AWGN channel needs --ebn0-db (and no --epsilon)"),
    };
    let threads = a
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    let base = |x: f64| -> Result<SimConfig> {
        let channel = match a.channel {
            ChannelKind::Bec => ChannelParams::bec(x)?,
            ChannelKind::Bawgn => ChannelParams::bawgn(sigma_from_ebn0(x, rate)?)?,
        };
        Ok(SimConfig {
            seed: a.seed,
            max_trials: a.max_trials,
            target_block_errors: a.target_errors,
            crc: a.crc,
            all_zero: a.all_zero,
            record_first_errors: a.record_first_errors,
            ..SimConfig::new(spec.dims(), channel, decoder)
        })
    };
    let config = json!({
        "dims": spec.dims(), "n": spec.n(), "k": spec.k(), "rate": rate, "decoder": decoder,
        "crc": a.crc.map(|c| c.to_string()), "channel": format!("{:?}", a.channel).to_lowercase(),
        "x_axis": axis, "grid": xs, "seed": a.seed, "max_trials": a.max_trials,
        "target_errors": a.target_errors, "all_zero": a.all_zero,
        "record_first_errors": a.record_first_errors,
    });
    let mut echoed = config.clone();
    echoed["threads"] = json!(threads);
    echo_config("simulate", echoed);

    let mut points = Vec::new();
    let mut rows = Vec::new();
    for &x in &xs {
        let cfg = base(x)?;
        let r = with_threads(threads, || run_bler(&cfg))??;
        eprintln!(
            "{}",
            json!({ "x": x, "trials": r.trials, "errors": r.block_errors, "wall_time_s": r.wall_time_s })
        );
        let mut p = json!({
            "x": x, "trials": r.trials, "errors": r.block_errors, "bler": r.bler,
            "ci_low": r.ci_low, "ci_high": r.ci_high,
        });
        if let Some(f) = &r.first_error_counts {
            p["first_error_counts"] = json!(f);
        }
        rows.push(vec![
            x.to_string(),
            r.trials.to_string(),
            r.block_errors.to_string(),
            r.bler.to_string(),
            r.ci_low.to_string(),
            r.ci_high.to_string(),
        ]);
        points.push(p);
    }
    let table = Table {
        header: vec!["x", "trials", "errors", "bler", "ci_low", "ci_high"],
        rows,
    };
    a.output.emit(
        &json!({ "config": config, "version": env!("CARGO_PKG_VERSION"), "points": points }),
        Some(&table),
    )
}

fn analyze_bec(a: &AnalyzeBecArgs) -> Result<()> {
    let spec = a.code.spec()?;
    let grid = parse_grid(&a.epsilon_grid)?;
    echo_config("analyze bec", json!({ "dims": spec.dims(), "epsilon_grid": grid }));
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for &e in &grid {
        let p = product_bit_erasures(&spec, e)?;
        rows.push(vec![e.to_string(), p.eps_max.to_string(), p.upper.to_string(), p.loose.to_string()]);
        points.push(json!({ "epsilon": e, "eps_max": p.eps_max, "sum_bound": p.upper, "loose_bound": p.loose }));
    }
    let table = Table {
        header: vec!["epsilon", "eps_max", "sum_bound", "loose_bound"],
        rows,
    };
    a.output.emit(&json!({ "dims": spec.dims(), "points": points }), Some(&table))
}

fn de(a: &DeArgs) -> Result<()> {
    let spec = a.code.spec()?;
    let grid = DeGrid::new(a.delta, a.lmax)?;
    let xs = parse_grid(&a.ebn0_db)?;
    echo_config(
        "de",
        json!({ "dims": spec.dims(), "ebn0_db": xs, "delta": a.delta, "lmax": a.lmax, "bins": grid.bins() }),
    );
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for &x in &xs {
        let r = de_bit_error_probs(&spec, sigma_from_ebn0(x, spec.rate())?, &grid)?;
        let pb1 = r.bit_error_probs[0];
        rows.push(vec![x.to_string(), r.union_bound.to_string(), pb1.to_string()]);
        points.push(json!({ "ebn0_db": x, "union_bound": r.union_bound, "p_b1": pb1 }));
    }
    let table = Table {
        header: vec!["ebn0_db", "union_bound", "p_b1"],
        rows,
    };
    a.output.emit(&json!({ "dims": spec.dims(), "points": points }), Some(&table))
}

fn wef(a: &WefArgs) -> Result<()> {
    let spec = a.code.spec()?;
    echo_config("wef", json!({ "dims": spec.dims(), "io": a.io }));
    if a.io {
        let io = product_iowef(&spec)?;
        let table = Table {
            header: vec!["i", "w", "a"],
            rows: io.to_json_repr().coeffs.iter().map(|c| c.to_vec()).collect(),
        };
        a.output.emit(&serde_json::to_value(io.to_json_repr())?, Some(&table))
    } else {
        let w = product_wef(&spec)?;
        let table = Table {
            header: vec!["w", "a"],
            rows: w.to_json_repr().coeffs.iter().map(|c| c.to_vec()).collect(),
        };
        a.output.emit(&serde_json::to_value(w.to_json_repr())?, Some(&table))
    }
}

fn bounds(a: &BoundsArgs) -> Result<()> {
    let wef = match (&a.wef, a.dims.is_empty()) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let repr: WefJson = serde_json::from_str(&text).context("parsing enumerator file")?;
            WeightEnumerator::from_json_repr(&repr)?
        }
        (None, false) => product_wef(&ProductCodeSpec::new(&a.dims)?)?,
        (None, true) => bail!("either --wef or --dims is required"),
    };
    let xs = parse_grid(&a.grid)?;
    let rate = wef.k() as f64 / wef.n() as f64;
    echo_config(
        "bounds",
        json!({ "n": wef.n(), "k": wef.k(), "channel": format!("{:?}", a.channel).to_lowercase(), "grid": xs }),
    );
    let coeffs = to_f64(wef.coeffs());
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for &x in &xs {
        let b = match a.channel {
            ChannelKind::Bec => bec_union_bound(&coeffs, x)?,
            ChannelKind::Bawgn => awgn_union_bound(&coeffs, rate, x)?,
        };
        rows.push(vec![x.to_string(), b.to_string()]);
        points.push(json!({ "x": x, "bound": b }));
    }
    let table = Table {
        header: vec!["x", "bound"],
        rows,
    };
    let channel = format!("{:?}", a.channel).to_lowercase();
    a.output.emit(
        &json!({ "n": wef.n(), "k": wef.k(), "channel": channel, "points": points }),
        Some(&table),
    )
}

fn threshold(a: &ThresholdArgs) -> Result<()> {
    let family = match (a.family, a.a2, a.m) {
        (FamilyKind::Euler, Some(a2), None) => SequenceFamily::euler(a2)?,
        (FamilyKind::SelfSimilar, None, Some(m)) => SequenceFamily::SelfSimilar { m },
        (FamilyKind::Euler, _, _) => bail!("the Euler family needs --a2 (and no --m)"),
        (FamilyKind::SelfSimilar, _, _) => bail!("the self-similar family needs --m (and no --a2)"),
    };
    echo_config("threshold", json!({ "family": family, "tol": a.tol }));
    let t = threshold_lower_bound(&family, a.tol)?;
    let a2 = a.a2.expect("checked above");
    a.output.emit(
        &json!({ "family": "euler", "a2": a2, "rate": euler_rate_limit(a2), "tol": a.tol, "threshold": t }),
        None,
    )
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::Simulate(a) => simulate(a),
        Command::Analyze {
            what: AnalyzeCommand::Bec(a),
        } => analyze_bec(a),
        Command::De(a) => de(a),
        Command::Wef(a) => wef(a),
        Command::Bounds(a) => bounds(a),
        Command::Threshold(a) => threshold(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
