//! Subcommand implementations. Every command is deterministic given
//! its flags and seed; CSV floats are printed in exponent form so the
//! output is byte-stable.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use pcfec::channel::{run_monte_carlo, ChannelConfig, SimOptions};
use pcfec::component::{build_codec, CodeSpec};
use pcfec::product::{
    pack_symbols, read_frame, unpack_symbols, write_frame, Frame, ProductCode,
};
use pcfec::stall::{
    enumerate_multiplicities, floor_bound_min, floor_bound_min_nonbinary, floor_bound_pp,
    floor_bound_pp_nonbinary,
};

use crate::config::GuardChoice;

/// Stdout or a file, buffered.
fn open_output(out: Option<&PathBuf>) -> Result<Box<dyn Write>, String> {
    match out {
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn build_product(spec: &CodeSpec, guard: GuardChoice) -> Result<ProductCode, String> {
    let pc = ProductCode::from_spec(spec).map_err(|e| e.to_string())?;
    Ok(match guard {
        GuardChoice::Stall => pc,
        GuardChoice::Off => pc.with_flip_guard(None),
        GuardChoice::Limit(n) => pc.with_flip_guard(Some((n, n))),
    })
}

/// Evaluates the floor-bound pair over the p grid. Binary codes emit
/// `p,f_min,f_pp`; non-binary codes emit `p,g_min,g_pp`. The component
/// length used in the formulas is the code's full transmitted length
/// (extension included).
pub fn cmd_bounds(spec: &CodeSpec, grid: &[f64], out: Option<&PathBuf>) -> Result<(), String> {
    let codec = build_codec(spec).map_err(|e| e.to_string())?;
    let params = codec.params().clone();
    let table = enumerate_multiplicities(params.t).map_err(|e| e.to_string())?;
    let n = params.total_len();
    let mut w = open_output(out)?;
    let emit = |w: &mut dyn Write, header: bool, p: f64| -> std::io::Result<()> {
        if header {
            if params.b == 1 {
                writeln!(w, "p,f_min,f_pp")?;
            } else {
                writeln!(w, "p,g_min,g_pp")?;
            }
            return Ok(());
        }
        if params.b == 1 {
            let lo = floor_bound_min(n, params.t, p);
            let pp = floor_bound_pp(n, params.t, p, &table);
            writeln!(w, "{p:e},{lo:e},{pp:e}")
        } else {
            let lo = floor_bound_min_nonbinary(n, params.t, params.b, p);
            let pp = floor_bound_pp_nonbinary(n, params.t, params.b, p, &table);
            writeln!(w, "{p:e},{lo:e},{pp:e}")
        }
    };
    emit(&mut w, true, 0.0).map_err(|e| e.to_string())?;
    for &p in grid {
        emit(&mut w, false, p).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

/// Writes the uncorrectable-pattern multiplicity table as `n_e,m` rows.
pub fn cmd_stall_search(t: usize, out: Option<&PathBuf>) -> Result<(), String> {
    let table = enumerate_multiplicities(t).map_err(|e| e.to_string())?;
    let mut w = open_output(out)?;
    writeln!(w, "n_e,m").map_err(|e| e.to_string())?;
    for (n_e, m) in &table.entries {
        writeln!(w, "{n_e},{m}").map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

pub struct SimulateArgs {
    pub grid: Vec<f64>,
    pub iterations: u32,
    pub post_processing: bool,
    pub trials: u64,
    pub seed: u64,
    pub stop_frame_errors: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Runs the Monte Carlo sweep, appending one CSV row per p point as it
/// completes so interrupted runs keep their finished points.
pub fn cmd_simulate(
    spec: &CodeSpec,
    guard: GuardChoice,
    args: &SimulateArgs,
) -> Result<(), String> {
    let pc = build_product(spec, guard)?;
    let mut w = open_output(args.out.as_ref())?;
    writeln!(w, "p,trials,frame_errors,bit_errors,ber,ser,fer,ci95_ber")
        .map_err(|e| e.to_string())?;
    w.flush().map_err(|e| e.to_string())?;
    for &p in &args.grid {
        let mut opts = SimOptions::new(args.trials, args.iterations, args.post_processing);
        if let Some(budget) = args.stop_frame_errors {
            if budget > 0 {
                opts = opts.stop_at(budget);
            }
        }
        let stats = run_monte_carlo(&pc, &ChannelConfig::bsc(p, args.seed), &opts);
        eprintln!(
            "p={p:e}: {} trials, {} frame errors, ber={:e}",
            stats.trials,
            stats.frame_errors,
            stats.ber()
        );
        writeln!(
            w,
            "{p:e},{},{},{},{:e},{:e},{:e},{:e}",
            stats.trials,
            stats.frame_errors,
            stats.bit_errors,
            stats.ber(),
            stats.ser(),
            stats.fer(),
            stats.ci95_ber()
        )
        .map_err(|e| e.to_string())?;
        w.flush().map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Packs an information file into an encoded frame file. The input must
/// hold exactly k2 x k1 symbols of b bits, row-major, LSB-first, with
/// zero padding up to a byte boundary.
pub fn cmd_encode(
    spec: &CodeSpec,
    guard: GuardChoice,
    input: &Path,
    output: &Path,
) -> Result<(), String> {
    let pc = build_product(spec, guard)?;
    let bits = pc.row_code().params().b;
    let (k2, k1) = (pc.info_rows(), pc.info_cols());
    let bytes = std::fs::read(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let symbols = unpack_symbols(&bytes, k2 * k1, bits).map_err(|e| {
        format!(
            "{}: expected {} information symbols of {bits} bit(s) ({} bytes): {e}",
            input.display(),
            k2 * k1,
            (k2 * k1 * bits as usize).div_ceil(8)
        )
    })?;
    let info = Frame::from_data(k2, k1, symbols).map_err(|e| e.to_string())?;
    let frame = pc.encode_frame(&info).map_err(|e| e.to_string())?;
    let file = File::create(output)
        .map_err(|e| format!("cannot create {}: {e}", output.display()))?;
    write_frame(&frame, bits, BufWriter::new(file)).map_err(|e| e.to_string())
}

/// Decodes a frame file back to its information file. Returns whether
/// decoding converged; the caller turns a residual failure into exit
/// code 1 after the output is written.
pub fn cmd_decode(
    spec: &CodeSpec,
    guard: GuardChoice,
    input: &Path,
    output: &Path,
    iterations: u32,
    post_processing: bool,
) -> Result<bool, String> {
    let pc = build_product(spec, guard)?;
    let bits = pc.row_code().params().b;
    let file = File::open(input)
        .map_err(|e| format!("cannot open {}: {e}", input.display()))?;
    let (frame, frame_bits) = read_frame(std::io::BufReader::new(file))
        .map_err(|e| format!("{}: {e}", input.display()))?;
    if frame_bits != bits || frame.rows() != pc.frame_rows() || frame.cols() != pc.frame_cols()
    {
        return Err(format!(
            "{}: frame is {}x{} at b={frame_bits}, code wants {}x{} at b={bits}",
            input.display(),
            frame.rows(),
            frame.cols(),
            pc.frame_rows(),
            pc.frame_cols()
        ));
    }
    let mut outcome = pc.decode_iterative(frame, iterations);
    if post_processing {
        outcome = pc.post_process(outcome);
    }
    eprintln!(
        "converged={} iterations={} failed_rows={:?} failed_cols={:?}",
        outcome.converged, outcome.iterations_used, outcome.failed_rows, outcome.failed_cols
    );
    let info = pc.extract_info(&outcome.frame).map_err(|e| e.to_string())?;
    let packed = pack_symbols(info.data(), bits);
    std::fs::write(output, packed)
        .map_err(|e| format!("cannot write {}: {e}", output.display()))?;
    Ok(outcome.converged)
}
