use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use mlsync_core::decoder::DecoderLimits;
use mlsync_core::sim::{builtin_setup, export_stats, run_trials, ExportFormat, SetupSpec};
use mlsync_core::{parse_message, serialize_message, CodeParams, LinearCode, SyncCode};

use crate::bitfile::{read_bits, write_bits, BitFormat};
use crate::{
    CodeArgs, CodeKind, EncodeArgs, Failure, InspectArgs, LimitArgs, ReconstructArgs, SimulateArgs, StatsFormat,
    EXIT_OK, EXIT_TRUNCATED, EXIT_USAGE,
};

type Outcome = Result<u8, Failure>;

fn core_failure(e: mlsync_core::Error) -> Failure {
    match e {
        mlsync_core::Error::Parse(_) => Failure::parse(e),
        other => Failure::usage(other),
    }
}

fn code_params(args: &CodeArgs, seed: u64) -> Result<CodeParams, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::usage(anyhow!("missing {flag}")));
    let n_c = need(args.n_c, "--nc")?;
    let l1 = need(args.l1, "--l1")?;
    let l2 = need(args.l2, "--l2")?;
    let z = need(args.z, "--z")?;
    let code = match args.code {
        CodeKind::Rs => {
            if z % n_c != 0 {
                return Err(Failure::usage(anyhow!(
                    "--z {z} must be a multiple of --nc {n_c} for Reed-Solomon parity"
                )));
            }
            LinearCode::ReedSolomon { parity_symbols: z / n_c }
        }
        CodeKind::Random => LinearCode::RandomBinary { checks: z, seed },
    };
    CodeParams::new(n_c, l1, l2, code).map_err(core_failure)
}

fn limits(args: &LimitArgs) -> DecoderLimits {
    DecoderLimits {
        max_tree_nodes: args.max_tree_nodes,
        max_candidates: args.max_candidates,
        ..DecoderLimits::default()
    }
}

fn describe(params: &CodeParams) -> String {
    let parity = match params.code() {
        LinearCode::ReedSolomon { parity_symbols } => {
            format!("rs, z = {} bits ({parity_symbols} symbols)", params.parity_bits())
        }
        LinearCode::RandomBinary { checks, seed } => format!("random, z = {checks} bits, seed {seed}"),
    };
    format!(
        "n = {}, n_c = {}, l1 = {}, l2 = {}, code {parity}",
        params.n(),
        params.n_c(),
        params.l1(),
        params.l2()
    )
}

fn cost(params: &CodeParams) -> String {
    format!(
        "message bits = {} (M1 {}, M2 {}, M3 {})\nrate = {:.3}",
        params.message_bits(),
        params.l1() * params.block_syndrome_bits(),
        params.l2() * params.chunk_syndrome_bits(),
        params.parity_bits(),
        params.sync_rate()
    )
}

pub fn encode(args: EncodeArgs) -> Outcome {
    let params = code_params(&args.code, args.seed)?;
    let (x, _) = read_bits(&args.input, args.input_format, None).map_err(Failure::usage)?;
    if x.len() != params.n() {
        return Err(Failure::usage(anyhow!(
            "{} holds {} bits but the code length is {}",
            args.input.display(),
            x.len(),
            params.n()
        )));
    }
    let code = SyncCode::new(params).map_err(core_failure)?;
    let msg = code.encode(&x).map_err(core_failure)?;
    let bytes = serialize_message(&msg, &params).map_err(core_failure)?;
    fs::write(&args.out, bytes)
        .with_context(|| format!("cannot write {}", args.out.display()))
        .map_err(Failure::usage)?;
    println!("{}", describe(&params));
    println!("{}", cost(&params));
    Ok(EXIT_OK)
}

fn numbered(path: &Path, index: usize) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(format!(".{index}"));
    PathBuf::from(name)
}

pub fn reconstruct(args: ReconstructArgs) -> Outcome {
    let bytes = fs::read(&args.message)
        .with_context(|| format!("cannot read {}", args.message.display()))
        .map_err(Failure::usage)?;
    let (msg, params) = parse_message(&bytes)
        .with_context(|| format!("cannot parse {}", args.message.display()))
        .map_err(Failure::parse)?;
    let (y, used) = read_bits(&args.received, args.input_format, args.bits).map_err(Failure::usage)?;
    let code = SyncCode::new(params).map_err(core_failure)?;
    let report = code.decode(&y, &msg, limits(&args.limits)).map_err(core_failure)?;
    println!(
        "k = {}, r1 = {}, r3 = {}, r4 = {}, r5 = {}, r6 = {}, truncated = {}",
        report.k, report.r1, report.r3, report.r4, report.r5, report.r6, report.truncated
    );

    let format = match args.output_format {
        BitFormat::Auto if used == BitFormat::Raw && params.n() % 8 == 0 => BitFormat::Raw,
        BitFormat::Auto => BitFormat::Text,
        other => other,
    };
    match report.final_list.as_slice() {
        [] => {}
        [only] => write_bits(&args.out, only, format).map_err(Failure::usage)?,
        many => {
            for (i, x) in many.iter().enumerate() {
                write_bits(&numbered(&args.out, i + 1), x, format).map_err(Failure::usage)?;
            }
            eprintln!("{} candidates written to {}.1 .. .{}", many.len(), args.out.display(), many.len());
        }
    }
    if report.truncated {
        eprintln!("warning: a decoder limit was hit, the candidate list may be incomplete");
        return Ok(EXIT_TRUNCATED);
    }
    if report.r6 == 0 {
        eprintln!("error: no sequence is consistent with the received file and the message");
        return Ok(EXIT_USAGE);
    }
    Ok(EXIT_OK)
}

pub fn simulate(args: SimulateArgs) -> Outcome {
    let setup = match args.setup {
        Some(number) => builtin_setup(number as usize)
            .ok_or_else(|| Failure::usage(anyhow!("unknown setup {number}")))?,
        None => {
            let params = code_params(&args.code, args.matrix_seed)?;
            let k = args
                .k
                .ok_or_else(|| Failure::usage(anyhow!("--k is required without --setup")))?;
            SetupSpec::new("custom", params, k).map_err(core_failure)?
        }
    };
    let stats = run_trials(&setup, args.trials, args.seed, limits(&args.limits)).map_err(core_failure)?;
    eprintln!("{}: {} trials in {:.2} s", setup.name, stats.trials, stats.wall_time_secs);
    let format = match args.format {
        StatsFormat::Csv => ExportFormat::Csv,
        StatsFormat::Json => ExportFormat::Json,
    };
    let bytes = export_stats(&[stats], format).map_err(core_failure)?;
    match &args.out {
        Some(path) => fs::write(path, bytes)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::usage)?,
        None => std::io::stdout()
            .write_all(&bytes)
            .context("cannot write to standard output")
            .map_err(Failure::usage)?,
    }
    Ok(EXIT_OK)
}

pub fn inspect(args: InspectArgs) -> Outcome {
    let bytes = fs::read(&args.message)
        .with_context(|| format!("cannot read {}", args.message.display()))
        .map_err(Failure::usage)?;
    let (msg, params) = parse_message(&bytes)
        .with_context(|| format!("cannot parse {}", args.message.display()))
        .map_err(Failure::parse)?;
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let m3: String = msg
        .m3_bits(&params)
        .to_bytes_msb()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    println!("{}", describe(&params));
    println!("M1 = {}", join(&msg.m1));
    println!("M2 = {}", join(&msg.m2));
    println!("M3 = 0x{m3} ({} bits)", params.parity_bits());
    println!("{}", cost(&params));
    Ok(EXIT_OK)
}
