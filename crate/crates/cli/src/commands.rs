use std::io::Write;
use std::path::Path;

use monomial_codes::polar::construct_from_ranking;
use monomial_codes::{
    kronecker_gm, monte_carlo_bhattacharyya, orbit_enumerate, orbit_size, rank_monomials,
    synthesize_bit_channel, young_partition, CodeFile, Error, Monomial, MonomialCode, MonomialSet,
    SymmetricChannel,
};
use serde_json::{json, Value};

use crate::report::{digest, Report};
use crate::{ClosureArgs, CodeArgs, ConstructArgs, GenmatrixArgs, OrbitArgs, RankArgs, SimulateArgs};

pub struct Outcome {
    pub report: Option<Report>,
    pub ok: bool,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome {
            report: Some(report),
            ok: true,
        }
    }

    fn silent() -> Self {
        Outcome { report: None, ok: true }
    }
}

#[derive(Debug)]
pub enum Failure {
    Check(String),
    Usage(String),
    Cap(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::NotDecreasing | Error::RateAboveHalf { .. } | Error::NoNonzeroCodeword => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub type CommandResult = Result<Outcome, Failure>;

pub struct LoadedCode {
    pub file: CodeFile,
    pub code: MonomialCode,
    pub digest: String,
}

pub fn load_code(path: &Path) -> Result<LoadedCode, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Usage(format!("{} is not UTF-8", path.display())))?;
    let file = CodeFile::parse(&text)?;
    let code = file.to_code()?;
    Ok(LoadedCode {
        file,
        code,
        digest: digest(&bytes),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn channel_digest(spec: &str, extra: &str) -> String {
    let mut bytes = spec.as_bytes().to_vec();
    if let Some(path) = spec.strip_prefix("table:") {
        if let Ok(table) = std::fs::read(path) {
            bytes.extend(table);
        }
    }
    bytes.extend(extra.as_bytes());
    digest(&bytes)
}

pub fn construct(args: &ConstructArgs) -> CommandResult {
    let w = SymmetricChannel::from_spec(&args.channel)?;
    let n = 1usize << args.m.min(30);
    if args.k > n {
        return Err(Error::DimensionOutOfRange { k: args.k, n }.into());
    }
    if args.k == 0 {
        eprintln!("warning: k = 0 selects no bit channels; writing the zero code");
    }
    let ranked = rank_monomials(&w, args.m)?;
    let (code, worst) = construct_from_ranking(&ranked, args.m, args.k)?;
    let mut file = code.to_file();
    file.meta.insert("channel".into(), json!(args.channel));
    file.meta.insert("k".into(), json!(args.k));
    file.write(&args.out)?;

    let mut r = Report::new(
        "construct",
        channel_digest(&args.channel, &format!(" m={} k={}", args.m, args.k)),
    );
    r.set("channel", args.channel.clone());
    r.set("m", args.m);
    r.set("length", n);
    r.set("dimension", code.dimension());
    r.set("worst_bhattacharyya", worst.map_or(Value::Null, |b| json!(b)));
    r.set("decreasing", code.is_decreasing());
    r.set("weakly_decreasing", code.is_weakly_decreasing());
    r.set("out", args.out.display().to_string());
    Ok(Outcome::ok(r))
}

pub fn analyze(args: &CodeArgs) -> CommandResult {
    let loaded = load_code(&args.code)?;
    let code = &loaded.code;
    let mut r = Report::new("analyze", loaded.digest);
    r.set("m", code.m());
    r.set("length", code.length());
    r.set("dimension", code.dimension());
    r.set("decreasing", code.is_decreasing());
    r.set("weakly_decreasing", code.is_weakly_decreasing());
    for key in [
        "r_plus",
        "r_minus",
        "min_distance",
        "min_weight_count",
        "dual_r_minus",
        "dual_r_plus",
        "dual_min_distance",
        "weakly_self_dual",
    ] {
        r.set(key, Value::Null);
    }
    if !code.is_decreasing() {
        r.set("refused", Error::NotDecreasing.to_string());
        return Ok(Outcome {
            report: Some(r),
            ok: false,
        });
    }
    if code.dimension() == 0 {
        r.line("zero code: distance formulas do not apply");
        return Ok(Outcome::ok(r));
    }
    r.set("r_plus", code.r_plus()?);
    r.set("r_minus", code.r_minus()?);
    r.set("min_distance", code.min_distance()?);
    r.set("min_weight_count", code.min_weight_count()?.to_string());
    match code.dual_parameters()? {
        Some(p) => {
            r.set("dual_r_minus", p.r_minus);
            r.set("dual_r_plus", p.r_plus);
            r.set("dual_min_distance", p.min_distance);
        }
        None => r.line("full space: the dual is the zero code"),
    }
    match code.weakly_self_dual() {
        Ok(b) => r.set("weakly_self_dual", b),
        Err(Error::RateAboveHalf { .. }) => r.line("rate above 1/2: weak self-duality not tested"),
        Err(e) => return Err(e.into()),
    }
    Ok(Outcome::ok(r))
}

pub fn dual(args: &CodeArgs) -> CommandResult {
    let loaded = load_code(&args.code)?;
    let dual = loaded.code.dual()?;
    let text = dual.to_file().to_canonical_json();
    emit(args.out.as_deref(), &text)?;
    if args.out.is_none() {
        return Ok(Outcome::silent());
    }
    let mut r = Report::new("dual", loaded.digest);
    r.set("m", dual.m());
    r.set("dimension", dual.dimension());
    r.set("out", args.out.as_ref().unwrap().display().to_string());
    Ok(Outcome::ok(r))
}

pub fn genmatrix(args: &GenmatrixArgs) -> CommandResult {
    let matrix = match (&args.code, args.m) {
        (Some(path), _) => load_code(path)?.code.generator_matrix()?,
        (None, Some(m)) => {
            Monomial::one(m)?;
            kronecker_gm(m)?
        }
        (None, None) => return Err(Failure::Usage("give a code file or --m".into())),
    };
    emit(args.out.as_deref(), &matrix.to_text())?;
    Ok(Outcome::silent())
}

pub fn orbit(args: &OrbitArgs) -> CommandResult {
    let g = Monomial::parse(&args.monomial, args.m)?;
    let lambda = young_partition(&g);
    let mut r = Report::new("orbit", digest(format!("{} m={}", g, args.m).as_bytes()));
    r.set("monomial", g.to_string());
    r.set("m", args.m);
    r.set("degree", g.degree());
    r.set("partition", json!(lambda.parts()));
    r.set("partition_size", lambda.size());
    r.set("orbit_size", orbit_size(&g).to_string());
    if args.list {
        let polys = orbit_enumerate(&g)?;
        let shown: Vec<String> = polys.iter().map(ToString::to_string).collect();
        for p in &shown {
            r.line(p.clone());
        }
        r.detail("orbit", json!(shown));
    }
    Ok(Outcome::ok(r))
}

pub fn closure(args: &ClosureArgs) -> CommandResult {
    let (set, input_digest) = match (&args.code, args.m) {
        (Some(path), _) => {
            let loaded = load_code(path)?;
            let mut set = loaded.code.monomials().clone();
            for text in &args.monomial {
                set.insert(Monomial::parse(text, set.m())?)?;
            }
            (set, loaded.digest)
        }
        (None, Some(m)) => {
            let monos = args
                .monomial
                .iter()
                .map(|t| Monomial::parse(t, m))
                .collect::<Result<Vec<_>, _>>()?;
            let set = MonomialSet::from_monomials(m, monos)?;
            (set, digest(args.monomial.join(",").as_bytes()))
        }
        (None, None) => return Err(Failure::Usage("give a code file or --m".into())),
    };
    let closed = set.decreasing_closure()?;
    let text = MonomialCode::new(closed.clone()).to_file().to_canonical_json();
    emit(args.out.as_deref(), &text)?;
    if args.out.is_none() {
        return Ok(Outcome::silent());
    }
    let mut r = Report::new("closure", input_digest);
    r.set("m", closed.m());
    r.set("input_size", set.len());
    r.set("closure_size", closed.len());
    r.set("out", args.out.as_ref().unwrap().display().to_string());
    Ok(Outcome::ok(r))
}

pub fn rank(args: &RankArgs) -> CommandResult {
    let w = SymmetricChannel::from_spec(&args.channel)?;
    let ranked = rank_monomials(&w, args.m)?;
    let mut r = Report::new("rank", channel_digest(&args.channel, &format!(" m={}", args.m)));
    r.set("channel", args.channel.clone());
    r.set("m", args.m);
    for (i, entry) in ranked.iter().enumerate() {
        r.line(format!("{i:>6}  {:<24} {:.17e}", entry.monomial.to_string(), entry.bhattacharyya));
    }
    r.detail("ranking", serde_json::to_value(&ranked).expect("serializable"));
    Ok(Outcome::ok(r))
}

pub fn simulate(args: &SimulateArgs) -> CommandResult {
    let w = SymmetricChannel::from_spec(&args.channel)?;
    let g = Monomial::parse(&args.monomial, args.m)?;
    let est = monte_carlo_bhattacharyya(&w, &g, args.samples, args.seed)?;
    let exact = synthesize_bit_channel(&w, &g).ok().map(|c| c.bhattacharyya());
    let mut r = Report::new(
        "simulate",
        channel_digest(&args.channel, &format!(" m={} g={} n={}", args.m, g, args.samples)),
    );
    r.set("channel", args.channel.clone());
    r.set("monomial", g.to_string());
    r.set("samples", args.samples);
    r.set("seed", args.seed);
    r.set("estimate", est.estimate);
    r.set("stderr", est.stderr);
    r.set("exact", exact.map_or(Value::Null, |b| json!(b)));
    let z = exact.filter(|_| est.stderr > 0.0).map(|b| (est.estimate - b) / est.stderr);
    r.set("z_score", z.map_or(Value::Null, |z| json!(z)));
    Ok(Outcome::ok(r))
}
