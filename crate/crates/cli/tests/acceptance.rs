//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p moncodes --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use monomial_codes::lta::orbit_evaluations_exhaustive;
use monomial_codes::polar::{bec_bhattacharyya, bhattacharyya_table, construct_from_ranking};
use monomial_codes::sample::{random_decreasing_code, random_downset, random_monomial_set};
use monomial_codes::{
    gaussian_binomial, monte_carlo_bhattacharyya, orbit_size, partitions_in_grid, rank_monomials,
    synthesize_bit_channel, LowerTriangularAffineMap, Monomial, MonomialCode, SymmetricChannel,
};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

const CHANNEL_TOLERANCE: f64 = 1e-12;
const MC_SAMPLES: u64 = 1_000_000;
const MC_RUNS: u64 = 100;
const MC_MIN_WITHIN: u64 = 99;
const MC_SIGMAS: f64 = 4.0;
const MC_SEED_BASE: u64 = 1000;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn all_monomials(m: usize) -> Vec<Monomial> {
    (0..1u32 << m).map(|b| Monomial::new(m, b).unwrap()).collect()
}

fn bec_grid() -> Vec<(String, SymmetricChannel)> {
    (1..=9)
        .map(|i| {
            let p = i as f64 / 10.0;
            (format!("bec:{p}"), SymmetricChannel::bec(p).unwrap())
        })
        .collect()
}

fn bsc_grid() -> Vec<(String, SymmetricChannel)> {
    [0.01, 0.02, 0.05, 0.1, 0.2, 0.3]
        .into_iter()
        .map(|p| (format!("bsc:{p}"), SymmetricChannel::bsc(p).unwrap()))
        .collect()
}

fn order_soundness() -> Outcome {
    let mut pairs = 0usize;
    for m in 1..=5 {
        let all = all_monomials(m);
        let leq: Vec<Vec<bool>> = all
            .iter()
            .map(|f| all.iter().map(|g| f.leq(g).unwrap()).collect())
            .collect();
        let n = all.len();
        for i in 0..n {
            ensure(leq[i][i], || format!("{} not reflexive", all[i]))?;
            for j in 0..n {
                if leq[i][j] && leq[j][i] {
                    ensure(i == j, || format!("{} and {} antisymmetry", all[i], all[j]))?;
                }
                if ok(all[i].weak_leq(&all[j]))? {
                    ensure(leq[i][j], || format!("{} ≼w {} but not ≼", all[i], all[j]))?;
                }
                if leq[i][j] {
                    let (fc, gc) = (all[i].complement(), all[j].complement());
                    ensure(ok(gc.leq(&fc))?, || format!("complements of {} ≼ {}", all[i], all[j]))?;
                    for k in 0..n {
                        if leq[j][k] {
                            ensure(leq[i][k], || format!("transitivity {} {} {}", all[i], all[j], all[k]))?;
                        }
                    }
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, m <= 5"))
}

fn dimension() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in 0..200 {
        let m = 1 + t % 8;
        let code = MonomialCode::new(ok(random_monomial_set(m, &mut rng))?);
        let rank = ok(code.generator_matrix())?.rank();
        ensure(rank == code.dimension(), || format!("m={m} |I|={} rank={rank}", code.dimension()))?;
    }
    Ok("200 random sets, m <= 8".into())
}

fn duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 3..=6 {
        for _ in 0..100 {
            let code = MonomialCode::new(ok(random_downset(m, &mut rng))?);
            let dual = ok(ok(code.dual())?.generator_matrix())?;
            ensure(dual.row_space_equal(&ok(code.dual_by_nullspace())?), || format!("{code:?}"))?;
        }
    }
    Ok("400 downsets, m in 3..=6".into())
}

fn distance_and_count() -> Outcome {
    let mut codes: Vec<MonomialCode> = Vec::new();
    for m in 1..=8 {
        for r in 0..=m {
            let code = MonomialCode::reed_muller(r, m).unwrap();
            if code.dimension() <= 24 {
                codes.push(code);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in 2..=8 {
        for _ in 0..12 {
            codes.push(ok(random_decreasing_code(m, 24, &mut rng))?);
        }
    }
    for code in &codes {
        let (d, count) = ok(code.min_weight_bruteforce())?;
        let fd = ok(code.min_distance())?;
        let fc = ok(code.min_weight_count())?;
        ensure(d as u64 == fd && count == fc, || {
            format!("{code:?}: formula ({fd}, {fc}) brute ({d}, {count})")
        })?;
    }
    let rm13 = MonomialCode::reed_muller(1, 3).unwrap();
    let rm24 = MonomialCode::reed_muller(2, 4).unwrap();
    ensure(ok(rm13.min_distance())? == 4 && ok(rm13.min_weight_count())? == 14u32.into(), || {
        "RM(1,3) is not (4, 14)".into()
    })?;
    ensure(ok(rm24.min_distance())? == 4 && ok(rm24.min_weight_count())? == 140u32.into(), || {
        "RM(2,4) is not (4, 140)".into()
    })?;
    Ok(format!("{} codes, dim <= 24", codes.len()))
}

fn reed_muller_counts() -> Outcome {
    let mut checked = 0;
    for m in 1..=8 {
        for r in 1..=m {
            let count = ok(MonomialCode::reed_muller(r, m).unwrap().min_weight_count())?;
            let q = ok(gaussian_binomial(m as i64, r as i64))?;
            ensure(count == q.clone() << r, || format!("RM({r},{m}): {count} vs 2^{r}*{q}"))?;
            let grid: BigUint = partitions_in_grid(r, m - r)
                .iter()
                .map(|p| BigUint::from(2u32).pow(p.size() as u32))
                .sum();
            ensure(grid == q, || format!("partition sum {grid} vs {q} at ({m},{r})"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (r, m) pairs"))
}

fn orbits() -> Outcome {
    for m in 1..=5 {
        let mut evaluations: Vec<BTreeSet<_>> = Vec::new();
        for g in all_monomials(m) {
            let orbit = ok(orbit_evaluations_exhaustive(&g))?;
            ensure(BigUint::from(orbit.len()) == orbit_size(&g), || {
                format!("{g}: exhaustive {} formula {}", orbit.len(), orbit_size(&g))
            })?;
            if m <= 4 {
                evaluations.push(orbit);
            }
        }
        for (i, a) in evaluations.iter().enumerate() {
            for b in &evaluations[i + 1..] {
                ensure(a.is_disjoint(b), || format!("overlapping orbits at m={m}"))?;
            }
        }
    }
    let g = ok(Monomial::parse("x1*x4", 5))?;
    let size = ok(orbit_evaluations_exhaustive(&g))?.len();
    ensure(size == 64, || format!("|O(x1x4)| = {size}"))?;
    Ok("all monomials m <= 5, |O(x1x4)| = 64".into())
}

fn permutation_group() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in 0..20 {
        let m = 2 + c % 5;
        let code = MonomialCode::new(ok(random_downset(m, &mut rng))?);
        for s in 0..50 {
            let map = LowerTriangularAffineMap::random(m, 1000 * c as u64 + s);
            ensure(ok(code.is_invariant_under(&map))?, || format!("{code:?} {map:?}"))?;
        }
    }
    Ok("20 codes x 50 maps, m <= 6".into())
}

fn polar_decreasing() -> Outcome {
    let mut built = 0usize;
    let mut failures: Vec<String> = Vec::new();
    for (name, w) in bec_grid().into_iter().chain(bsc_grid()) {
        for m in 3..=10 {
            let n = 1usize << m;
            let ranked = match rank_monomials(&w, m) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{name} m={m}: {e}"));
                    continue;
                }
            };
            for k in [1, n / 4, n / 2, 3 * n / 4, n] {
                let (code, _) = ok(construct_from_ranking(&ranked, m, k))?;
                if !code.is_decreasing() {
                    failures.push(format!("{name} m={m} k={k}: not decreasing"));
                }
                built += 1;
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{built} codes decreasing"))
    } else {
        Err(format!(
            "{built} codes decreasing, {} cells unbuilt or wrong; first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn channel_arithmetic() -> Outcome {
    for i in 1..=9 {
        let p = i as f64 / 10.0;
        let w = SymmetricChannel::bec(p).unwrap();
        for m in 1..=6 {
            let table = ok(bhattacharyya_table(&w, m))?;
            for (bits, r) in table.iter().enumerate() {
                let g = Monomial::new(m, bits as u32).unwrap();
                let closed = bec_bhattacharyya(p, &g);
                ensure((r.value - closed).abs() <= CHANNEL_TOLERANCE, || {
                    format!("bec:{p} {g}: transform {} closed form {closed}", r.value)
                })?;
            }
        }
    }
    let mut tested = 0usize;
    let table = SymmetricChannel::new(
        vec![0.6, 0.25, 0.1, 0.05],
        vec![0.05, 0.1, 0.25, 0.6],
        vec![3, 2, 1, 0],
    )
    .unwrap();
    let bases = bec_grid().into_iter().chain(bsc_grid()).map(|(_, w)| w).chain([table]);
    for base in bases {
        let mut layer = vec![base];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &layer {
                let (plus, minus) = (ok(w.plus())?, ok(w.minus())?);
                let (bp, b, bm) = (plus.bhattacharyya(), w.bhattacharyya(), minus.bhattacharyya());
                ensure(bp <= b + CHANNEL_TOLERANCE && b <= bm + CHANNEL_TOLERANCE, || {
                    format!("B(W+)={bp} B(W)={b} B(W-)={bm}")
                })?;
                tested += 1;
                next.push(plus);
                next.push(minus);
            }
            layer = next;
        }
    }
    Ok(format!("BEC recursion m <= 6; {tested} channels ordered"))
}

fn order_monotonicity() -> Outcome {
    let mut pairs = 0usize;
    for (name, w) in bec_grid().into_iter().chain(bsc_grid()) {
        for m in 1..=6 {
            let table = ok(bhattacharyya_table(&w, m))?;
            let all = all_monomials(m);
            for f in &all {
                for g in &all {
                    if ok(f.leq(g))? {
                        let (a, b) = (&table[f.bits() as usize], &table[g.bits() as usize]);
                        ensure(a.cmp_value(b).is_le(), || {
                            format!("{name} m={m}: {f} ≼ {g} but B {} > {}", a.value, b.value)
                        })?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} comparable pairs, exact order"))
}

fn monte_carlo() -> Outcome {
    let table = SymmetricChannel::new(
        vec![0.6, 0.25, 0.1, 0.05],
        vec![0.05, 0.1, 0.25, 0.6],
        vec![3, 2, 1, 0],
    )
    .unwrap();
    let bec5 = SymmetricChannel::bec(0.5).unwrap();
    let bec3 = SymmetricChannel::bec(0.3).unwrap();
    let bsc11 = SymmetricChannel::bsc(0.11).unwrap();
    let bsc2 = SymmetricChannel::bsc(0.2).unwrap();
    let cases: [(&SymmetricChannel, usize, &str); 20] = [
        (&bec5, 1, "x0"),
        (&bec5, 1, "1"),
        (&bec5, 2, "x1"),
        (&bec5, 3, "x0*x1"),
        (&bec5, 4, "x1*x2"),
        (&bec3, 2, "1"),
        (&bec3, 3, "x2"),
        (&bec3, 4, "x0*x3"),
        (&bsc11, 1, "x0"),
        (&bsc11, 1, "1"),
        (&bsc11, 2, "x0"),
        (&bsc11, 2, "x1"),
        (&bsc11, 3, "x1*x2"),
        (&bsc11, 4, "x0*x1*x2"),
        (&bsc11, 4, "x3"),
        (&bsc2, 2, "x0*x1"),
        (&bsc2, 3, "x2"),
        (&bsc2, 4, "x0"),
        (&table, 2, "x0"),
        (&table, 3, "x1"),
    ];
    let mut fewest = MC_RUNS;
    for (w, m, g) in cases {
        let g = ok(Monomial::parse(g, m))?;
        let exact = ok(synthesize_bit_channel(w, &g))?.bhattacharyya();
        let mut within = 0;
        for r in 0..MC_RUNS {
            let est = ok(monte_carlo_bhattacharyya(w, &g, MC_SAMPLES, MC_SEED_BASE + r))?;
            if (est.estimate - exact).abs() <= MC_SIGMAS * est.stderr {
                within += 1;
            }
        }
        ensure(within >= MC_MIN_WITHIN, || format!("m={m} {g}: {within}/{MC_RUNS} within 4 sigma"))?;
        fewest = fewest.min(within);
    }
    Ok(format!("20 cases, worst {fewest}/{MC_RUNS} within 4 sigma"))
}

fn cli_round_trip() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_moncodes");
    let dir = ok(tempfile::TempDir::new())?;
    let code = dir.path().join("code.json");
    let dual = dir.path().join("dual.json");
    let bad = dir.path().join("bad.json");
    let path = |p: &std::path::Path| p.to_str().unwrap().to_string();
    let run = |args: &[String]| -> Result<i32, String> {
        let out = ok(Command::new(bin).args(args).output())?;
        Ok(out.status.code().unwrap_or(-1))
    };
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let steps = [
        s(&["construct", "--channel", "bec:0.5", "--m", "4", "--k", "8", "--out", &path(&code)]),
        s(&["analyze", &path(&code)]),
        s(&["dual", &path(&code), "--out", &path(&dual)]),
        s(&["verify", &path(&code)]),
        s(&["verify", &path(&dual)]),
    ];
    for args in &steps {
        let code = run(args)?;
        ensure(code == 0, || format!("{} exited {code}", args[0]))?;
    }
    ok(std::fs::write(&bad, r#"{"m": 4, "monomials": [0, 5]}"#))?;
    for cmd in ["verify", "analyze"] {
        let code = run(&s(&[cmd, &path(&bad)]))?;
        ensure(code != 0, || format!("{cmd} accepted a non-decreasing code"))?;
    }
    Ok("pipeline exits 0, corrupted input rejected".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "order soundness", secs(10), order_soundness),
        (2, "dimension", secs(30), dimension),
        (3, "duality", secs(60), duality),
        (4, "minimum distance and count", secs(120), distance_and_count),
        (5, "Reed-Muller counts", secs(5), reed_muller_counts),
        (6, "orbits", secs(60), orbits),
        (7, "permutation group", secs(60), permutation_group),
        (8, "polar codes are decreasing", secs(300), polar_decreasing),
        (9, "channel arithmetic", secs(60), channel_arithmetic),
        (10, "Bhattacharyya order monotonicity", secs(120), order_monotonicity),
        (11, "Monte-Carlo oracle", secs(300), monte_carlo),
        (12, "CLI round trip and verify", secs(10), cli_round_trip),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took longer than {limit:?}")),
            Err(e) => (false, e),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} {id:>2} {name} ({:.1}s / {}s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
