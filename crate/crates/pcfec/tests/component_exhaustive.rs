//! Exhaustive component-decoder checks against independent oracles.
//!
//! The oracles build codebooks from first principles (polynomial
//! multiplication by a literature generator, or full message
//! enumeration) and classify received words by minimum distance; the
//! decoders under test never see that machinery.

use pcfec::channel::SplitMix64;
use pcfec::component::{build_codec, CodeSpec, ComponentCodec};
use pcfec::gf::Symbol;

/// Multiplies two GF(2) polynomials given as bit vectors (index =
/// degree). Test-local, independent of the library's field machinery.
fn gf2_poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= y;
        }
    }
    out
}

/// All 128 codewords of BCH(15,7,2) as bit vectors, generated by
/// multiplying message polynomials with the published generator
/// x^8 + x^7 + x^6 + x^4 + 1. Index convention matches the codec:
/// word[i] is the coefficient of x^(14-i).
fn bch15_codebook() -> Vec<Vec<u16>> {
    let generator = [1u8, 0, 0, 0, 1, 0, 1, 1, 1]; // degree 0..=8
    let mut codebook = Vec::with_capacity(128);
    for msg in 0u32..128 {
        let msg_poly: Vec<u8> = (0..7).map(|d| (msg >> d & 1) as u8).collect();
        let product = gf2_poly_mul(&msg_poly, &generator);
        let mut word = vec![0u16; 15];
        for (deg, &bit) in product.iter().enumerate() {
            word[14 - deg] = bit as u16;
        }
        codebook.push(word);
    }
    codebook
}

fn hamming(a: &[u16], b: &[u16]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[test]
fn weight_distribution_of_bch15_codebook() {
    // Sanity of the oracle itself: the known weight enumerator.
    let mut dist = [0usize; 16];
    for w in bch15_codebook() {
        dist[w.iter().filter(|&&x| x == 1).count()] += 1;
    }
    assert_eq!(dist[0], 1);
    assert_eq!(dist[5], 18);
    assert_eq!(dist[6], 30);
    assert_eq!(dist[7], 15);
    assert_eq!(dist[8], 15);
    assert_eq!(dist[9], 30);
    assert_eq!(dist[10], 18);
    assert_eq!(dist[15], 1);
}

#[test]
fn all_weight_le2_patterns_corrected_on_random_codewords() {
    let codec = build_codec(&CodeSpec::new("binary-bch", 15, 7, 2, 1)).unwrap();
    let mut rng = SplitMix64::new(0xBC15);
    for _ in 0..50 {
        let msg: Vec<Symbol> = (0..7).map(|_| (rng.next_u64() & 1) as Symbol).collect();
        let word = codec.encode(&msg).unwrap();
        let mut patterns = 0;
        for i in 0..15 {
            let mut noisy = word.clone();
            noisy[i] ^= 1;
            let out = codec.decode_bounded(&noisy);
            assert!(!out.fail);
            assert_eq!(out.corrected, word);
            patterns += 1;
            for j in i + 1..15 {
                let mut noisy = word.clone();
                noisy[i] ^= 1;
                noisy[j] ^= 1;
                let out = codec.decode_bounded(&noisy);
                assert!(!out.fail);
                assert_eq!(out.corrected, word);
                patterns += 1;
            }
        }
        assert_eq!(patterns, 120);
    }
}

#[test]
fn weight3_patterns_match_minimum_distance_oracle() {
    // Every weight-3 pattern on the zero codeword either fails or
    // miscorrects to the unique codeword within distance 2. The oracle
    // decides which from the codebook; the tallies are frozen.
    let codec = build_codec(&CodeSpec::new("binary-bch", 15, 7, 2, 1)).unwrap();
    let codebook = bch15_codebook();
    let mut fails = 0;
    let mut miscorrections = 0;
    for a in 0..15 {
        for b in a + 1..15 {
            for c in b + 1..15 {
                let mut word = vec![0 as Symbol; 15];
                word[a] = 1;
                word[b] = 1;
                word[c] = 1;
                let nearest = codebook
                    .iter()
                    .map(|cw| (hamming(cw, &word), cw))
                    .min_by_key(|(d, _)| *d)
                    .unwrap();
                let out = codec.decode_bounded(&word);
                if nearest.0 <= 2 {
                    assert!(!out.fail, "oracle says codeword within 2 at {a},{b},{c}");
                    assert_eq!(&out.corrected, nearest.1);
                    assert!(out.symbol_errors.len() <= 2);
                    miscorrections += 1;
                } else {
                    assert!(out.fail, "no codeword within 2 at {a},{b},{c}");
                    assert_eq!(out.corrected, word);
                    fails += 1;
                }
            }
        }
    }
    assert_eq!(miscorrections, 180);
    assert_eq!(fails, 275);
}

#[test]
fn extended_bch16_flags_every_weight3_pattern() {
    let spec = CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true);
    let codec = build_codec(&spec).unwrap();
    let mut count = 0;
    for a in 0..16 {
        for b in a + 1..16 {
            for c in b + 1..16 {
                let mut word = vec![0 as Symbol; 16];
                word[a] = 1;
                word[b] = 1;
                word[c] = 1;
                let out = codec.decode(&word);
                assert!(out.fail, "pattern {a},{b},{c} must be detected");
                assert_eq!(out.corrected, word, "failed decode must not change the word");
                count += 1;
            }
        }
    }
    assert_eq!(count, 560);
}

/// All 512 extended RS(8,3,2) codewords over GF(8) via message
/// enumeration through the codec's own encoder would not be independent,
/// so the oracle encodes by explicit generator-polynomial arithmetic in
/// GF(8) with tables built from scratch.
mod rs_oracle {
    // GF(8) with x^3 + x + 1: exp/log tables by repeated doubling.
    pub fn tables() -> ([u8; 7], [u8; 8]) {
        let mut exp = [0u8; 7];
        let mut log = [0u8; 8];
        let mut v: u8 = 1;
        for i in 0..7 {
            exp[i] = v;
            log[v as usize] = i as u8;
            v <<= 1;
            if v & 8 != 0 {
                v ^= 0b1011;
            }
        }
        (exp, log)
    }

    pub fn mul(exp: &[u8; 7], log: &[u8; 8], a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            exp[(log[a as usize] as usize + log[b as usize] as usize) % 7]
        }
    }

    /// Extended RS(8,3) codebook: c(x) = m(x) * g(x) with
    /// g = (x+a)(x+a^2)(x+a^3)(x+a^4), plus the overall parity symbol.
    pub fn codebook() -> Vec<Vec<u16>> {
        let (exp, log) = tables();
        // Build g by multiplying the four linear factors.
        let mut g = vec![1u8];
        for j in 1..=4usize {
            let root = exp[j % 7];
            let mut next = vec![0u8; g.len() + 1];
            for (i, &c) in g.iter().enumerate() {
                next[i + 1] ^= c; // times x
                next[i] ^= mul(&exp, &log, c, root);
            }
            g = next;
        }
        let mut out = Vec::with_capacity(512);
        for m0 in 0..8u8 {
            for m1 in 0..8u8 {
                for m2 in 0..8u8 {
                    let msg = [m0, m1, m2];
                    let mut c = vec![0u8; 7];
                    for (i, &mc) in msg.iter().enumerate() {
                        for (j, &gc) in g.iter().enumerate() {
                            c[i + j] ^= mul(&exp, &log, mc, gc);
                        }
                    }
                    // Highest degree first to match the codec layout.
                    let mut word: Vec<u16> = c.iter().rev().map(|&x| x as u16).collect();
                    let parity = word.iter().fold(0, |acc, &x| acc ^ x);
                    word.push(parity);
                    out.push(word);
                }
            }
        }
        out
    }
}

#[test]
fn extended_rs8_flags_every_weight3_symbol_pattern() {
    let spec = CodeSpec::new("reed-solomon", 7, 3, 2, 3).extended(true);
    let codec = build_codec(&spec).unwrap();
    let codebook = rs_oracle::codebook();
    assert_eq!(codebook.len(), 512);

    // Oracle sanity: minimum distance of the extended code is 6.
    let min_weight = codebook
        .iter()
        .map(|w| w.iter().filter(|&&x| x != 0).count())
        .filter(|&w| w > 0)
        .min()
        .unwrap();
    assert_eq!(min_weight, 6);

    let mut checked = 0;
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                for ma in 1..8 as Symbol {
                    for mb in 1..8 as Symbol {
                        for mc in 1..8 as Symbol {
                            let mut word = vec![0 as Symbol; 8];
                            word[a] = ma;
                            word[b] = mb;
                            word[c] = mc;
                            let out = codec.decode(&word);
                            assert!(out.fail, "{a},{b},{c} mags {ma},{mb},{mc}");
                            assert_eq!(out.corrected, word);
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(checked, 35 * 343);

    // Distance oracle on a sample: no codeword within radius t of a
    // weight-3 pattern, which is what forces the bounded decoder to
    // fail. (The full cross product is covered by the decode loop.)
    let mut rng = SplitMix64::new(0x0805);
    for _ in 0..500 {
        let mut word = vec![0 as Symbol; 8];
        let mut pos = [0usize; 3];
        pos[0] = rng.next_below(7) as usize;
        loop {
            pos[1] = rng.next_below(7) as usize;
            if pos[1] != pos[0] {
                break;
            }
        }
        loop {
            pos[2] = rng.next_below(7) as usize;
            if pos[2] != pos[0] && pos[2] != pos[1] {
                break;
            }
        }
        for &p in &pos {
            word[p] = 1 + rng.next_below(7) as Symbol;
        }
        let min_dist = codebook.iter().map(|cw| hamming(cw, &word)).min().unwrap();
        assert!(min_dist >= 3, "distance oracle: got {min_dist}");
    }
}

#[test]
fn solvers_produce_identical_outcomes() {
    // Berlekamp-Massey vs Peterson, exhaustive over all words within
    // weight 3 of the zero codeword for the small BCH code, and random
    // symbol noise for RS.
    let bm = build_codec(&CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true)).unwrap();
    let pgz = build_codec(
        &CodeSpec::new("binary-bch", 15, 7, 2, 1)
            .extended(true)
            .with_solver("peterson"),
    )
    .unwrap();
    for a in 0..16 {
        for b in a..16 {
            for c in b..16 {
                let mut word = vec![0 as Symbol; 16];
                word[a] ^= 1;
                word[b] ^= 1;
                word[c] ^= 1;
                assert_eq!(bm.decode(&word), pgz.decode(&word));
            }
        }
    }

    let bm = build_codec(&CodeSpec::new("reed-solomon", 7, 3, 2, 3).extended(true)).unwrap();
    let pgz = build_codec(
        &CodeSpec::new("reed-solomon", 7, 3, 2, 3)
            .extended(true)
            .with_solver("peterson"),
    )
    .unwrap();
    let mut rng = SplitMix64::new(77);
    for _ in 0..30_000 {
        let word: Vec<Symbol> = (0..8).map(|_| rng.next_below(8) as Symbol).collect();
        assert_eq!(bm.decode(&word), pgz.decode(&word));
    }
}

#[test]
fn peterson_is_rejected_beyond_its_radius() {
    // t=3 BCH(15,5,3) exists; Peterson only handles t<=2.
    let spec = CodeSpec::new("binary-bch", 15, 5, 3, 1).with_solver("peterson");
    assert!(build_codec(&spec).is_err());
    let spec = CodeSpec::new("binary-bch", 15, 5, 3, 1);
    assert!(build_codec(&spec).is_ok());
}

#[test]
fn decode_depends_only_on_the_error_pattern() {
    // Linearity: the decision on codeword + e mirrors the decision on e.
    for spec in [
        CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true),
        CodeSpec::new("reed-solomon", 7, 3, 2, 3).extended(true),
    ] {
        let codec = build_codec(&spec).unwrap();
        let p = codec.params().clone();
        let mask = ((1u32 << p.b) - 1) as Symbol;
        let mut rng = SplitMix64::new(0x11E);
        for _ in 0..400 {
            let msg: Vec<Symbol> =
                (0..p.k).map(|_| (rng.next_u64() as Symbol) & mask).collect();
            let codeword = codec.encode(&msg).unwrap();
            let mut error = vec![0 as Symbol; p.total_len()];
            let weight = rng.next_below(5) as usize;
            for _ in 0..weight {
                let pos = rng.next_below(p.total_len() as u64) as usize;
                error[pos] = (rng.next_u64() as Symbol) & mask;
            }
            let zero_word: Vec<Symbol> = error.clone();
            let noisy: Vec<Symbol> =
                codeword.iter().zip(&error).map(|(&c, &e)| c ^ e).collect();
            let out_zero = codec.decode(&zero_word);
            let out_code = codec.decode(&noisy);
            assert_eq!(out_zero.fail, out_code.fail);
            assert_eq!(out_zero.symbol_errors, out_code.symbol_errors);
            let residual_zero: Vec<Symbol> = out_zero.corrected.clone();
            let residual_code: Vec<Symbol> = out_code
                .corrected
                .iter()
                .zip(&codeword)
                .map(|(&a, &c)| a ^ c)
                .collect();
            assert_eq!(residual_zero, residual_code);
        }
    }
}

#[test]
fn rs_7_3_corrects_every_pattern_within_radius() {
    // Exhaustive over positions and magnitudes for weights 1 and 2.
    let codec = build_codec(&CodeSpec::new("reed-solomon", 7, 3, 2, 3)).unwrap();
    let mut rng = SplitMix64::new(0x0733);
    for _ in 0..5 {
        let msg: Vec<Symbol> = (0..3).map(|_| rng.next_below(8) as Symbol).collect();
        let word = codec.encode(&msg).unwrap();
        for i in 0..7 {
            for ma in 1..8 as Symbol {
                let mut noisy = word.clone();
                noisy[i] ^= ma;
                let out = codec.decode_bounded(&noisy);
                assert!(!out.fail && out.corrected == word);
                for j in i + 1..7 {
                    for mb in 1..8 as Symbol {
                        let mut noisy = noisy.clone();
                        noisy[j] ^= mb;
                        let out = codec.decode_bounded(&noisy);
                        assert!(!out.fail, "i={i} j={j} ma={ma} mb={mb}");
                        assert_eq!(out.corrected, word);
                    }
                }
            }
        }
    }
}

#[test]
fn reference_codes_roundtrip_under_random_noise_within_radius() {
    // Randomized round trips for the long shortened BCH and the b=5 RS
    // code used by the presets.
    let mut rng = SplitMix64::new(0x195);
    for spec in [
        CodeSpec::new("binary-bch", 194, 178, 2, 1)
            .shortened_by(61)
            .extended(true),
        CodeSpec::new("reed-solomon", 31, 27, 2, 5).extended(true),
    ] {
        let codec = build_codec(&spec).unwrap();
        let p = codec.params().clone();
        let mask = ((1u32 << p.b) - 1) as Symbol;
        for _ in 0..200 {
            let msg: Vec<Symbol> =
                (0..p.k).map(|_| (rng.next_u64() as Symbol) & mask).collect();
            let word = codec.encode(&msg).unwrap();
            assert!(codec.is_codeword(&word));
            let mut noisy = word.clone();
            let weight = 1 + rng.next_below(p.t as u64) as usize;
            let mut positions = Vec::new();
            while positions.len() < weight {
                let pos = rng.next_below(p.total_len() as u64) as usize;
                if !positions.contains(&pos) {
                    positions.push(pos);
                }
            }
            for &pos in &positions {
                noisy[pos] ^= 1 + rng.next_below(mask as u64) as Symbol;
            }
            let out = codec.decode(&noisy);
            assert!(!out.fail);
            assert_eq!(out.corrected, word);
        }
    }
}
