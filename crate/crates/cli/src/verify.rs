use std::collections::BTreeSet;

use monomial_codes::gf2::codewords_of_weight;
use monomial_codes::lta::orbit_evaluations_exhaustive;
use monomial_codes::polar::bhattacharyya_table;
use monomial_codes::{
    construct_polar, orbit_enumerate, orbit_size, Error, LowerTriangularAffineMap, Monomial,
    MonomialCode, SymmetricChannel,
};
use num_bigint::BigUint;
use serde_json::json;

use crate::commands::{load_code, CommandResult, Outcome};
use crate::report::Report;
use crate::VerifyArgs;

const LTA_SAMPLES: u64 = 16;
const EXHAUSTIVE_ORBIT_MAX_VARIABLES: usize = 4;
const ORBIT_LIST_MAX: u32 = 1 << 16;
const ORDER_CHECK_MAX_VARIABLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn skip(&mut self, name: &'static str, why: &str) {
        self.0.push(Check {
            name,
            status: Status::Skipped,
            detail: why.to_string(),
        });
    }

    /// Runs `f`, which returns whether the comparison held and a detail line.
    /// Resource caps turn into a skip; other errors into a failure.
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Result<(bool, String), Error>) {
        let (status, detail) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) if e.is_resource_cap() => (Status::Skipped, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.0.push(Check { name, status, detail });
    }
}

pub fn verify(args: &VerifyArgs) -> CommandResult {
    let loaded = load_code(&args.code)?;
    let code = &loaded.code;
    let m = code.m();
    let channel_spec = args
        .channel
        .clone()
        .or_else(|| loaded.file.meta.get("channel").and_then(|v| v.as_str()).map(String::from));
    let channel = channel_spec.as_deref().map(SymmetricChannel::from_spec).transpose()?;

    let mut checks = Checks::default();
    let decreasing = code.is_decreasing();

    checks.run("decreasing", || {
        let closed = code.monomials().decreasing_closure()?;
        let brute = &closed == code.monomials();
        let d = format!("predicate={decreasing} closure_equal={brute}");
        Ok((decreasing && brute, d))
    });
    checks.run("weakly-decreasing", || {
        let predicate = code.is_weakly_decreasing();
        let mut brute = true;
        for g in code.monomials().iter() {
            for f in 0..(1u32 << m) {
                let f = Monomial::new(m, f)?;
                if f.weak_leq(g)? && !code.monomials().contains(&f) {
                    brute = false;
                }
            }
        }
        Ok((predicate && brute, format!("predicate={predicate} pairwise={brute}")))
    });
    checks.run("dimension", || {
        let rank = code.generator_matrix()?.rank();
        Ok((rank == code.dimension(), format!("|I|={} rank={rank}", code.dimension())))
    });

    let formulas = [
        "dual-nullspace",
        "dual-involution",
        "dual-parameters",
        "min-distance",
        "min-weight-count",
        "min-weight-words",
        "weak-self-duality",
        "lta-invariance",
        "orbit-sizes",
    ];
    if !decreasing {
        for name in formulas {
            checks.skip(name, "code is not decreasing");
        }
    } else {
        formula_checks(&mut checks, code, args.seed);
    }

    match (&channel, channel_spec.as_deref()) {
        (Some(w), Some(spec)) => {
            checks.run("polar-selection", || {
                let built = construct_polar(w, m, code.dimension())?;
                let same = built.monomials() == code.monomials();
                Ok((same, format!("{spec} k={}", code.dimension())))
            });
            checks.run("bhattacharyya-order", || {
                if m > ORDER_CHECK_MAX_VARIABLES {
                    return Err(Error::CapExceeded {
                        what: "variable count for the order check",
                        value: m as u128,
                        cap: ORDER_CHECK_MAX_VARIABLES as u128,
                    });
                }
                let table = bhattacharyya_table(w, m)?;
                let mut violations = 0usize;
                for f in 0..(1u32 << m) {
                    let fm = Monomial::new(m, f)?;
                    for g in 0..(1u32 << m) {
                        if fm.leq(&Monomial::new(m, g)?)?
                            && table[f as usize].cmp_value(&table[g as usize]).is_gt()
                        {
                            violations += 1;
                        }
                    }
                }
                Ok((violations == 0, format!("violations={violations}")))
            });
        }
        _ => {
            checks.skip("polar-selection", "no channel given");
            checks.skip("bhattacharyya-order", "no channel given");
        }
    }

    let ok = checks.0.iter().all(|c| c.status != Status::Fail);
    let mut r = Report::new("verify", loaded.digest);
    r.set("m", m);
    r.set("dimension", code.dimension());
    r.set("channel", channel_spec.map_or(serde_json::Value::Null, |s| json!(s)));
    r.set("passed", checks.0.iter().filter(|c| c.status == Status::Pass).count());
    r.set("failed", checks.0.iter().filter(|c| c.status == Status::Fail).count());
    r.set("skipped", checks.0.iter().filter(|c| c.status == Status::Skipped).count());
    let failing: Vec<&str> = checks.0.iter().filter(|c| c.status == Status::Fail).map(|c| c.name).collect();
    r.set("failing_checks", json!(failing));
    for c in &checks.0 {
        r.line(format!("{:<8} {:<20} {}", c.status.as_str().to_uppercase(), c.name, c.detail));
    }
    r.detail(
        "checks",
        json!(checks
            .0
            .iter()
            .map(|c| json!({"name": c.name, "status": c.status.as_str(), "detail": c.detail}))
            .collect::<Vec<_>>()),
    );
    Ok(Outcome { report: Some(r), ok })
}

fn formula_checks(checks: &mut Checks, code: &MonomialCode, seed: u64) {
    let m = code.m();
    checks.run("dual-nullspace", || {
        let dual = code.dual()?;
        let same = dual.generator_matrix()?.row_space_equal(&code.dual_by_nullspace()?);
        Ok((same, format!("dual dimension={}", dual.dimension())))
    });
    checks.run("dual-involution", || {
        let back = code.dual()?.dual()?;
        Ok((back.monomials() == code.monomials(), String::new()))
    });

    if code.dimension() == 0 {
        for name in ["dual-parameters", "min-distance", "min-weight-count", "min-weight-words"] {
            checks.skip(name, "zero code");
        }
    } else {
        checks.run("dual-parameters", || {
            let Some(p) = code.dual_parameters()? else {
                let dual = code.dual()?;
                return Ok((dual.dimension() == 0, "full space".into()));
            };
            let dual = code.dual()?;
            let (d, _) = dual.min_weight_bruteforce()?;
            let same = p.r_minus == dual.r_minus()?
                && p.r_plus == dual.r_plus()?
                && p.min_distance == d as u64;
            Ok((
                same,
                format!("formula=({}, {}, {}) brute distance={d}", p.r_minus, p.r_plus, p.min_distance),
            ))
        });
        let brute = code.min_weight_bruteforce();
        let formula_d = code.min_distance();
        match (&brute, &formula_d) {
            (Ok((d, count)), Ok(fd)) => {
                let (d, count, fd) = (*d, count.clone(), *fd);
                checks.run("min-distance", || Ok((d as u64 == fd, format!("formula={fd} brute={d}"))));
                checks.run("min-weight-count", || {
                    let fc = code.min_weight_count()?;
                    Ok((fc == count, format!("formula={fc} brute={count}")))
                });
            }
            (Err(e), _) | (_, Err(e)) => {
                let e = e.clone();
                checks.run("min-distance", || Err(e.clone()));
                checks.run("min-weight-count", || Err(e));
            }
        }
        checks.run("min-weight-words", || {
            let words = code.min_weight_enumerate()?;
            let d = code.min_distance()? as usize;
            let brute: BTreeSet<_> = codewords_of_weight(&code.generator_matrix()?, d)?.into_iter().collect();
            Ok((words == brute, format!("words={}", words.len())))
        });
    }

    match code.weakly_self_dual() {
        Err(Error::RateAboveHalf { .. }) => checks.skip("weak-self-duality", "rate above 1/2"),
        predicted => checks.run("weak-self-duality", || {
            let predicted = predicted?;
            let g = code.generator_matrix()?;
            let orthogonal = g.rows().iter().all(|r| g.rows().iter().all(|s| !r.dot(s)));
            Ok((predicted == orthogonal, format!("predicate={predicted} gram_zero={orthogonal}")))
        }),
    }

    checks.run("lta-invariance", || {
        for s in 0..LTA_SAMPLES {
            let map = LowerTriangularAffineMap::random(m, seed.wrapping_add(s));
            if !code.is_invariant_under(&map)? {
                return Ok((false, format!("{map:?}")));
            }
        }
        Ok((true, format!("maps={LTA_SAMPLES}")))
    });
    checks.run("orbit-sizes", || {
        let mut compared = 0usize;
        for g in code.monomials().iter() {
            let size = orbit_size(g);
            let brute = if m <= EXHAUSTIVE_ORBIT_MAX_VARIABLES {
                orbit_evaluations_exhaustive(g)?.len()
            } else if size <= BigUint::from(ORBIT_LIST_MAX) {
                orbit_enumerate(g)?
                    .iter()
                    .map(|p| p.evaluate())
                    .collect::<Result<BTreeSet<_>, _>>()?
                    .len()
            } else {
                continue;
            };
            if BigUint::from(brute) != size {
                return Ok((false, format!("{g}: formula={size} brute={brute}")));
            }
            compared += 1;
        }
        Ok((true, format!("monomials={compared}")))
    });
}
