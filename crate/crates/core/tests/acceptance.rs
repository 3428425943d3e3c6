use std::process::ExitCode;
use std::time::Instant;

use zeroseq::numtheory::{legendre_zs_blocks, liouville_sieve, liouville_zs_blocks};
use zeroseq::oracle::{
    default_workers, verify_ap_proposition, verify_block_threshold, verify_decomposition,
    verify_decomposition_all, verify_gap_threshold, verify_window_interpolation, DEFAULT_BUDGET,
};
use zeroseq::search::scan_bounded_block;
use zeroseq::thresholds::{block_threshold, gap_threshold};
use zeroseq::SignedSeq;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn threshold_table() -> Outcome {
    let blocks: Vec<i64> = [(6, 0, 0), (6, 0, 1), (7, 1, 4)]
        .iter()
        .map(|&(k, t, q)| block_threshold(k, t, q).unwrap())
        .collect();
    let gaps: Vec<i64> = [(2, 6), (2, 8)]
        .iter()
        .map(|&(d, k)| gap_threshold(d, k).unwrap())
        .collect();
    if blocks == [9, 10, 17] && gaps == [13, 19] {
        Ok(format!("block {blocks:?}, gap {gaps:?}"))
    } else {
        Err(format!("block {blocks:?}, gap {gaps:?}"))
    }
}

fn block_sharpness() -> Outcome {
    let workers = default_workers();
    let mut cases = 0;
    let mut sizes = Vec::new();
    for k in 1..=8i64 {
        for t in (0..k).filter(|t| (k - t) % 2 == 0) {
            for q in 0..=2 {
                let n = block_threshold(k, t, q).unwrap();
                if n <= k || n > 26 {
                    continue;
                }
                let r = verify_block_threshold(
                    k as usize,
                    t as usize,
                    q as usize,
                    DEFAULT_BUDGET,
                    workers,
                )
                .map_err(|e| format!("({k},{t},{q}): {e}"))?;
                if !r.passed {
                    return Err(format!(
                        "({k},{t},{q}): counterexamples {:?}, unexpected {:?}, missing {:?}",
                        r.counterexamples, r.unexpected, r.missing
                    ));
                }
                cases += 1;
                if [(6, 0, 0), (6, 0, 1), (7, 1, 4)].contains(&(k, t, q)) {
                    sizes.push(r.extremal_count);
                }
            }
        }
    }
    // (7,1,4) has q > 2, so it is checked on its own
    let r = verify_block_threshold(7, 1, 4, DEFAULT_BUDGET, workers).map_err(|e| e.to_string())?;
    if !r.passed {
        return Err(format!("(7,1,4): {r:?}"));
    }
    sizes.push(r.extremal_count);
    if sizes != [2, 12, 2] {
        return Err(format!("extremal sizes {sizes:?}, expected [2, 12, 2]"));
    }
    Ok(format!("{cases} grid cases, extremal sizes {sizes:?}"))
}

fn gap_sharpness() -> Outcome {
    let mut sizes = Vec::new();
    for (d, k) in [(2, 6), (2, 8), (3, 6)] {
        let r = verify_gap_threshold(d, k, DEFAULT_BUDGET, default_workers())
            .map_err(|e| format!("({d},{k}): {e}"))?;
        if !r.passed {
            return Err(format!("({d},{k}): {r:?}"));
        }
        sizes.push(r.extremal_count);
    }
    if sizes[1] != 62 {
        return Err(format!("(2,8) extremal size {}, expected 62", sizes[1]));
    }
    Ok(format!("extremal sizes {sizes:?}"))
}

fn window_interpolation() -> Outcome {
    let r = verify_window_interpolation(16, default_workers()).map_err(|e| e.to_string())?;
    if r.passed {
        Ok(format!("{} (sequence, k, t) cases", r.cases))
    } else {
        Err(format!("{:?}", r.failures))
    }
}

fn decomposition() -> Outcome {
    let full = verify_decomposition_all(2, 2, 1, 1).map_err(|e| e.to_string())?;
    if !full.passed {
        return Err(format!("full enumeration: {:?}", full.failures));
    }
    let (mut instances, mut zero, mut tight, mut exhaustive) = (0, 0, 0, 0);
    let mut seed = 0;
    for n in 1..=5 {
        for m in 1..=7 {
            for r in 1..=3 {
                for s in 1..=3 {
                    seed += 1;
                    let rep =
                        verify_decomposition(n, m, r, s, 1000, seed).map_err(|e| e.to_string())?;
                    if !rep.passed {
                        return Err(format!("(n={n}, m={m}, r={r}, s={s}): {:?}", rep.failures));
                    }
                    instances += rep.instances;
                    zero += rep.zero_sum_instances;
                    tight += rep.tight_witnesses;
                    exhaustive += rep.exhaustive_checked;
                }
            }
        }
    }
    Ok(format!(
        "{instances} random instances, {zero} zero-sum, {tight} band-tight, {exhaustive} exhaustive"
    ))
}

fn applications() -> Outcome {
    let mut counts = Vec::new();
    for k in [2, 4, 6, 8] {
        let r = liouville_zs_blocks(1_000_000, k).map_err(|e| e.to_string())?;
        if r.count < 100 {
            return Err(format!("liouville k={k}: only {} blocks", r.count));
        }
        counts.push(r.count);
    }
    for p in [3, 5, 7] {
        for k in [2, 4] {
            let r = legendre_zs_blocks(p, 1_000_000, k).map_err(|e| e.to_string())?;
            if r.count == 0 {
                return Err(format!("legendre p={p} k={k}: no blocks"));
            }
        }
    }
    let big = liouville_sieve(1_000_000).unwrap();
    let ratio = big.partial_sum(1_000_000).abs() as f64 / 1e6;
    if ratio >= 0.05 {
        return Err(format!("|sum of λ| / limit = {ratio}"));
    }
    let table = liouville_sieve(10_000).unwrap();
    for n in 1..=10_000usize {
        let (mut m, mut omega, mut p) = (n, 0, 2);
        while p * p <= m {
            while m % p == 0 {
                m /= p;
                omega += 1;
            }
            p += 1;
        }
        omega += (m > 1) as u32;
        let expected = if omega % 2 == 0 { 1 } else { -1 };
        if table.get(n) != expected {
            return Err(format!("sieve disagrees with trial division at {n}"));
        }
    }
    Ok(format!(
        "liouville counts {counts:?}, |Σλ|/limit = {ratio:.5}; legendre blocks present; sieve matches"
    ))
}

fn ap_on_block_pattern() -> Outcome {
    let r = verify_ap_proposition(18).map_err(|e| e.to_string())?;
    let f = SignedSeq::pm1(
        &r.pattern
            .chars()
            .map(|c| if c == '+' { 1 } else { -1 })
            .collect::<Vec<_>>(),
    );
    let contiguous = scan_bounded_block(&f, 18, 0).map_err(|e| e.to_string())?;
    if r.passed && r.n == 80 && contiguous.is_none() {
        let ap = r.found[0].as_ref().unwrap();
        Ok(format!(
            "n=80, progression {:?} with difference {:?}",
            ap.indices, ap.kind
        ))
    } else {
        Err(format!("{r:?}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("threshold table", threshold_table),
        ("block sharpness grid", block_sharpness),
        ("gap-block sharpness", gap_sharpness),
        ("window interpolation n <= 16", window_interpolation),
        ("decomposition contract", decomposition),
        ("liouville and legendre applications", applications),
        (
            "progressions beat the block construction at k = 18",
            ap_on_block_pattern,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
