// Temporary measurement harness; deleted before final delivery.
use pcfec::channel::{inject_pattern, Lane, SplitMix64};
use pcfec::component::{build_codec, CodeSpec};
use pcfec::product::{Frame, ProductCode};
use pcfec::stall::StallPattern;

#[test]
fn measure_weight4_row_outcomes_bch() {
    let spec = CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true);
    let codec = build_codec(&spec).unwrap();
    let mut fail = 0;
    let mut misc = 0;
    // all 4-subsets of 16 positions
    for a in 0..16 {
        for b in a + 1..16 {
            for c in b + 1..16 {
                for d in c + 1..16 {
                    let mut w = vec![0u16; 16];
                    for &p in &[a, b, c, d] {
                        w[p] = 1;
                    }
                    let out = codec.decode(&w);
                    if out.fail {
                        fail += 1;
                    } else {
                        misc += 1;
                    }
                }
            }
        }
    }
    println!("BCH ext weight-4 supports: fail={fail} miscorrect={misc} total={}", fail + misc);
}

#[test]
fn measure_full_grid_recovery() {
    for (name, spec, bits) in [
        ("bch16", CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true), 1u32),
        ("rs8", CodeSpec::new("reed-solomon", 7, 3, 2, 3).extended(true), 3u32),
    ] {
        let pc = ProductCode::from_spec(&spec).unwrap();
        let side = pc.frame_rows();
        let mut rng = SplitMix64::new(0xC4C4);
        let mut recovered = 0;
        let mut converged_wrong = 0;
        let mut detected_stall = 0;
        let trials = 1000;
        for _ in 0..trials {
            // random 4 distinct rows, 4 distinct cols
            let mut rows: Vec<usize> = (0..side).collect();
            let mut cols: Vec<usize> = (0..side).collect();
            for i in 0..4 {
                let j = i + rng.next_below((side - i) as u64) as usize;
                rows.swap(i, j);
                let j = i + rng.next_below((side - i) as u64) as usize;
                cols.swap(i, j);
            }
            let pattern = StallPattern::grid(&rows[..4], &cols[..4]);
            let lane = if bits == 1 { Lane::Bit(0) } else { Lane::All };
            let frame = inject_pattern(&Frame::zero(side, side), &pattern, lane, bits).unwrap();
            let out = pc.decode_iterative(frame, 2);
            if !out.converged && !out.failed_rows.is_empty() && !out.failed_cols.is_empty() {
                detected_stall += 1;
            }
            if out.converged && out.frame.data().iter().any(|&s| s != 0) {
                converged_wrong += 1;
            }
            let post = pc.post_process(out);
            if post.frame.data().iter().all(|&s| s == 0) {
                recovered += 1;
            }
        }
        println!(
            "{name}: trials={trials} recovered_by_pp={recovered} detected_stall={detected_stall} converged_to_wrong_codeword={converged_wrong}"
        );
    }
}

#[test]
fn measure_weight3_tally_bch15() {
    let spec = CodeSpec::new("binary-bch", 15, 7, 2, 1);
    let codec = build_codec(&spec).unwrap();
    let mut fail = 0;
    let mut misc = 0;
    for a in 0..15 {
        for b in a + 1..15 {
            for c in b + 1..15 {
                let mut w = vec![0u16; 15];
                w[a] = 1; w[b] = 1; w[c] = 1;
                let out = codec.decode_bounded(&w);
                if out.fail { fail += 1 } else { misc += 1 }
            }
        }
    }
    println!("BCH(15,7,2) weight-3 on zero codeword: miscorrect={misc} fail={fail}");
}

#[test]
fn measure_canonical_class_outcomes() {
    // Inject each enumerated uncorrectable class at the canonical corner
    // and check the real pipeline outcome (with the stall-sized guard).
    let spec = CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true);
    let pc = ProductCode::from_spec(&spec).unwrap();
    let table = pcfec::stall::enumerate_multiplicities(2).unwrap();
    println!("table: {:?}", table.entries);
    // re-enumerate to get actual patterns
    let g = 4usize;
    let mut per_card_recovered = std::collections::BTreeMap::new();
    let mut per_card_total = std::collections::BTreeMap::new();
    'subset: for s in 1u32..(1u32 << 16) {
        for line in 0..4 {
            let rm = 0xFu32 << (line * 4);
            let cm = (0..4).fold(0u32, |m, r| m | 1 << (r * 4 + line));
            for mask in [rm, cm] {
                let cnt = (s & mask).count_ones();
                if cnt != 0 && cnt <= 2 { continue 'subset; }
            }
        }
        // classify with idealized model by checking against table membership indirectly:
        // simply run real decoder on ALL candidates and report recovery rate per cardinality.
        let cells: Vec<(usize,usize)> = (0..16).filter(|&i| s >> i & 1 == 1).map(|i| (i / 4, i % 4)).collect();
        let pattern = StallPattern::new(cells);
        let frame = inject_pattern(&Frame::zero(16, 16), &pattern, Lane::Bit(0), 1).unwrap();
        let out = pc.post_process(pc.decode_iterative(frame, 2));
        let ok = out.frame.data().iter().all(|&x| x == 0);
        *per_card_total.entry(s.count_ones()).or_insert(0u32) += 1;
        if ok { *per_card_recovered.entry(s.count_ones()).or_insert(0u32) += 1; }
    }
    println!("candidates per cardinality (recovered/total): {:?} / {:?}", per_card_recovered, per_card_total);
}

#[test]
fn calibrate_small_code_fer() {
    use pcfec::channel::{run_monte_carlo, ChannelConfig, SimOptions};
    let pc = ProductCode::from_spec(&CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true)).unwrap();
    for p in [0.01, 0.015, 0.02, 0.025, 0.03, 0.035, 0.04] {
        let stats = run_monte_carlo(&pc, &ChannelConfig::bsc(p, 7), &SimOptions::new(20_000, 2, true));
        println!("bch16 p={p}: fer={:.4e} ber={:.3e} ci={:.2e} fe={}", stats.fer(), stats.ber(), stats.ci95_ber(), stats.frame_errors);
    }
}

#[test]
fn calibrate_small_code_fer2() {
    use pcfec::channel::{run_monte_carlo, ChannelConfig, SimOptions};
    let pc = ProductCode::from_spec(&CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true)).unwrap();
    for p in [0.05, 0.06, 0.07, 0.08, 0.09, 0.10, 0.12] {
        let stats = run_monte_carlo(&pc, &ChannelConfig::bsc(p, 7), &SimOptions::new(20_000, 2, true));
        println!("bch16 p={p}: fer={:.4e} ber={:.3e} ci={:.2e} fe={}", stats.fer(), stats.ber(), stats.ci95_ber(), stats.frame_errors);
    }
}

#[test]
fn calibrate_reference_codes() {
    use pcfec::channel::{run_monte_carlo, ChannelConfig, SimOptions};
    use std::time::Instant;
    let bch195 = ProductCode::from_spec(
        &CodeSpec::new("binary-bch", 194, 178, 2, 1).shortened_by(61).extended(true)).unwrap();
    let rs32 = ProductCode::from_spec(
        &CodeSpec::new("reed-solomon", 31, 27, 2, 5).extended(true)).unwrap();
    for (name, pc, p, trials) in [("bch195", &bch195, 8e-3, 2000u64), ("rs32", &rs32, 1e-2, 2000)] {
        for (iters, pp) in [(2u32, false), (2, true), (4, false), (4, true)] {
            let t0 = Instant::now();
            let stats = run_monte_carlo(pc, &ChannelConfig::bsc(p, 99), &SimOptions::new(trials, iters, pp));
            println!("{name} p={p} iters={iters} pp={pp}: fer={:.4e} ber={:.4e} fe={} trials={} elapsed={:?}",
                stats.fer(), stats.ber(), stats.frame_errors, stats.trials, t0.elapsed());
        }
    }
}
