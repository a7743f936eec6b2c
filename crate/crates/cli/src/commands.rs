use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use krull_core::catalog;
use krull_core::krull::{self, HuntMode, HuntOutcome, HuntParams, HuntResult};
use krull_core::modpres::generator_annihilators;
use krull_core::nilrad;
use krull_core::{
    monicize_with, CoeffRing, Config, Dim, Error, FreeElem, Limits, ModulePresentation, MonicStrategy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_yaml::Value;

use crate::problem::Problem;
use crate::report::{self, map, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::ResourceLimit(_) => EXIT_LIMIT,
            Error::DimensionMismatch { .. } | Error::InvariantViolation(_) => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        };
        Failure { code, msg: e.to_string() }
    }
}

pub type Outcome = Result<(Report, i32), Failure>;

fn header(cmd: &str, p: &Problem) -> Report {
    let mut r = Report::new(cmd);
    r.set("field", p.ring.to_string()).set("vars", p.nvars as u64);
    if !p.names.is_empty() {
        r.set("names", Value::Sequence(p.names.iter().map(|n| n.clone().into()).collect()));
    }
    r.set("input", if p.cyclic { "ideal" } else { "module" }).set("rank", p.module.rank() as u64);
    r
}

fn debug_bases(p: &ModulePresentation, cfg: &Config) -> Result<(), Error> {
    for (i, a) in generator_annihilators(&p.pruned()?, &cfg.limits)?.iter().enumerate() {
        let gb = a.basis(cfg.order, &cfg.limits)?;
        eprintln!("# Ann(e{}) basis, {} elements, {}:", i + 1, gb.len(), cfg.order);
        for g in gb.polys() {
            eprintln!("  {g}");
        }
    }
    Ok(())
}

pub fn dim(p: &Problem, cfg: &Config, debug_gb: bool) -> Outcome {
    if debug_gb {
        debug_bases(&p.module, cfg)?;
    }
    let mut r = header("dim", p);
    match krull::dim_descent(&p.module, cfg) {
        Ok(rep) => {
            r.set("dim_descent", report::dim(rep.dim_descent))
                .set("dim_oracle", report::dim(rep.dim_oracle))
                .set("verdict", report::verdict(true))
                .set("chain", report::chain(&rep.steps))
                .set("witnesses", Value::Sequence(rep.witnesses().map(report::poly_t).collect()));
            let profile = |t: &Option<krull_core::TorsionProfile>| -> Value {
                t.as_ref().map_or_else(|| "zero module".into(), |t| t.to_string().into())
            };
            let m_profile = rep.profile_before.as_ref().map_or(Dim::MinusInfinity, |t| t.m_profile());
            r.set(
                "profiles",
                map([("before".into(), profile(&rep.profile_before)), ("after".into(), profile(&rep.profile_after))]),
            )
            .set("m_profile", report::dim(m_profile))
            .set("profile_check", report::verdict(m_profile == rep.dim_descent))
            .set("mismatches", Value::Sequence(Vec::new()));
            Ok((r, EXIT_OK))
        }
        Err(Error::DimensionMismatch { descent, oracle }) => {
            r.set("dim_descent", report::dim(descent))
                .set("dim_oracle", report::dim(oracle))
                .set("verdict", report::verdict(false))
                .set("mismatches", Value::Sequence(vec![format!("dim_descent={descent} dim_oracle={oracle}").into()]));
            Ok((r, EXIT_MISMATCH))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn normalize(p: &Problem, cfg: &Config) -> Outcome {
    let rep = krull::dim_descent(&p.module, cfg)?;
    let mut r = header("normalize", p);
    r.set("chain", report::chain(&rep.steps)).set("composite", report::change(&rep.composite));
    Ok((r, EXIT_OK))
}

pub fn profile(p: &Problem, cfg: &Config) -> Outcome {
    let c = match krull::check_profile_matches_dim(&p.module, cfg) {
        Err(Error::ZeroModule) => return Err(Failure { code: EXIT_INPUT, msg: "zero module has no profile".into() }),
        other => other?,
    };
    let verdict = if c.matches() { "MATCH" } else { "MISMATCH" };
    let summary = format!("{}; m_profile={} dim={} {verdict}", c.profile, c.m_profile(), c.dim);
    let mut r = header("profile", p);
    r.set("profile", c.profile.to_string())
        .set("m_profile", report::dim(c.m_profile()))
        .set("dim", report::dim(c.dim))
        .set("verdict", verdict)
        .set("summary", summary);
    Ok((r, EXIT_OK))
}

/// Number of variables mentioned positionally in `text`, at least 1.
pub fn infer_nvars(text: &str) -> usize {
    let b = text.as_bytes();
    let mut n = 1;
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() && (i == 0 || !b[i - 1].is_ascii_alphanumeric()) {
            let mut j = i + 1;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[i + 1..j].parse::<usize>() {
                n = n.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    n
}

pub fn monicize(ring: CoeffRing, nvars: usize, names: &[String], text: &str, strategy: MonicStrategy) -> Outcome {
    let f = krull_core::poly::parse_poly_named(text, ring, nvars, names)?;
    let (change, g) = monicize_with(&f, strategy, nvars)?;
    let mut r = Report::new("monicize");
    r.set("field", ring.to_string())
        .set("vars", nvars as u64)
        .set("input", report::poly_x(&f))
        .set("change", report::change(&change))
        .set("g", report::poly_t(&g))
        .set("degree_in_last", g.degree_in(nvars - 1).unwrap_or(0) as u64);
    Ok((r, EXIT_OK))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
    Info,
}

struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    fn from_err(name: &'static str, e: Error) -> Self {
        let status = if matches!(e, Error::ResourceLimit(_)) { Status::Skipped } else { Status::Fail };
        Check { name, status, detail: e.to_string() }
    }

    fn value(&self) -> Value {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Info => "info",
        };
        map([
            ("name".into(), self.name.into()),
            ("status".into(), status.into()),
            ("detail".into(), self.detail.clone().into()),
        ])
    }
}

/// Pass unless some item failed; skipped if every item hit a limit.
fn tally(name: &'static str, results: Vec<Result<bool, Error>>) -> Check {
    let total = results.len();
    let mut ok = 0;
    let mut skipped = 0;
    let mut failed = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(true) => ok += 1,
            Ok(false) => failed.push(format!("#{i}")),
            Err(Error::ResourceLimit(_)) => skipped += 1,
            Err(e) => failed.push(format!("#{i}: {e}")),
        }
    }
    let detail = format!("{ok} of {total} checked, {skipped} over limits");
    if !failed.is_empty() {
        Check { name, status: Status::Fail, detail: format!("{detail}; failed {}", failed.join(", ")) }
    } else if total > 0 && skipped == total {
        Check { name, status: Status::Skipped, detail }
    } else {
        Check { name, status: Status::Pass, detail }
    }
}

fn verify_module(p: &ModulePresentation, sample: &[FreeElem], expected: Option<Dim>, cfg: &Config) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut sample: Vec<FreeElem> = sample.to_vec();
    sample.extend((0..p.rank()).map(|i| p.generator(i)));
    if !p.ring().is_field() {
        match nilrad::check_artinian(p, &sample, cfg) {
            Ok(a) => {
                checks.push(Check::new("profiles_modulo_nilradical", a.profiles_agree(), format!("dim={}", a.dim)));
                checks.push(Check::new("dimension_range", a.dim_in_range(), format!("0 <= {} <= {}", a.dim, a.nvars)));
                checks.push(Check::new(
                    "s_torsion_free",
                    a.s_torsion_free_holds(),
                    format!("{} sampled elements", a.s_torsion_free.len()),
                ));
            }
            Err(e) => checks.push(Check::from_err("artinian", e)),
        }
        return checks;
    }
    let rep = match krull::dim_descent(p, cfg) {
        Ok(rep) => rep,
        Err(e) => {
            checks.push(Check::from_err("dim_agreement", e));
            return checks;
        }
    };
    let d = rep.dim_descent;
    checks.push(Check::new("dim_agreement", true, format!("dim_descent={d} dim_oracle={}", rep.dim_oracle)));
    if let Some(e) = expected {
        checks.push(Check::new("expected_dim", d == e, format!("expected {e}, got {d}")));
    }
    if let Some(after) = &rep.profile_after {
        let want = d.finite().map_or(0, |k| k + 1);
        checks.push(Check::new(
            "profile_after_threshold",
            after.threshold() == want,
            format!("threshold {} for dim {d}", after.threshold()),
        ));
    }
    let side = Config { limits: Limits::cross_check(), ..*cfg };
    let mut drops = vec![krull::check_torsion_dimension_drop(p, cfg).map(|r| r.passes())];
    drops.extend(rep.steps.iter().map(|s| krull::check_torsion_dimension_drop(&s.presentation, &side).map(|r| r.passes())));
    checks.push(tally("torsion_dimension_drop", drops));
    let eq = rep.steps.iter().map(|s| krull::check_fg_dim_equality(p, &s.presentation, &side)).collect();
    checks.push(tally("fg_dim_equality", eq));
    let mut strong_fail = Vec::new();
    let kdc = (0..=p.nvars())
        .map(|m| -> Result<bool, Error> {
            let r = krull::check_kdc(p, m, &sample, cfg)?;
            if !r.strong_holds() {
                strong_fail.push(m.to_string());
            }
            Ok(r.holds())
        })
        .collect();
    checks.push(tally("kdc", kdc));
    let detail = if strong_fail.is_empty() {
        "equality at every m".to_string()
    } else {
        format!("strict inequality at m = {}", strong_fail.join(", "))
    };
    checks.push(Check { name: "strong_kdc", status: Status::Info, detail });
    checks
}

fn verify_report(entries: Vec<(String, Vec<Check>)>, source: &str) -> (Report, i32) {
    let mut r = Report::new("verify");
    r.set("source", source);
    let (mut passed, mut failed, mut skipped) = (0u64, 0u64, 0u64);
    let modules = entries
        .iter()
        .map(|(name, checks)| {
            for c in checks {
                match c.status {
                    Status::Pass => passed += 1,
                    Status::Fail => failed += 1,
                    Status::Skipped => skipped += 1,
                    Status::Info => {}
                }
            }
            map([
                ("name".into(), name.clone().into()),
                ("checks".into(), Value::Sequence(checks.iter().map(Check::value).collect())),
            ])
        })
        .collect();
    r.set("modules", Value::Sequence(modules))
        .set("passed", passed)
        .set("failed", failed)
        .set("skipped", skipped)
        .set("verdict", if failed == 0 { "PASS" } else { "FAIL" });
    let code = if failed > 0 {
        EXIT_MISMATCH
    } else if skipped > 0 {
        EXIT_LIMIT
    } else {
        EXIT_OK
    };
    (r, code)
}

pub fn verify_file(p: &Problem, cfg: &Config) -> Outcome {
    let checks = verify_module(&p.module, &p.sample, None, cfg);
    Ok(verify_report(vec![("input".into(), checks)], "file"))
}

/// Every catalog entry, sampled at its generators plus `samples` seeded
/// random elements.
pub fn verify_catalog(samples: usize, seed: u64, cfg: &Config) -> Outcome {
    let entries = catalog::catalog()
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let m = &e.module;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let sample: Vec<FreeElem> =
                (0..samples).map(|_| catalog::random_elem(&mut rng, m.ring(), m.nvars(), m.rank(), 2)).collect();
            (e.name.to_string(), verify_module(m, &sample, Some(e.expected), cfg))
        })
        .collect();
    Ok(verify_report(entries, "catalog"))
}

pub fn hunt(params: &HuntParams, threads: usize, cfg: &Config) -> Outcome {
    if params.n == 0 || params.n > 4 {
        return Err(Error::InvalidArgument(format!("hunt supports 1..=4 variables, got {}", params.n)).into());
    }
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<HuntOutcome>> = Mutex::new(Vec::with_capacity(params.count));
    std::thread::scope(|s| {
        for _ in 0..threads.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= params.count {
                    break;
                }
                let out = krull::hunt_instance(params, i, cfg);
                done.lock().expect("no worker panics while holding the lock").push(out);
            });
        }
    });
    let mut outcomes = done.into_inner().expect("workers finished");
    outcomes.sort_by_key(|o| o.index);

    let mut mismatches = Vec::new();
    let mut skips = Vec::new();
    let mut checked = 0u64;
    for o in &outcomes {
        let ideal = Value::Sequence(o.ideal.gens().iter().map(report::poly_x).collect());
        match &o.result {
            HuntResult::Checked(c) => {
                checked += 1;
                if !c.matches() {
                    mismatches.push(map([
                        ("index".into(), (o.index as u64).into()),
                        ("ideal".into(), ideal),
                        ("profile".into(), c.profile.to_string().into()),
                        ("m_profile".into(), report::dim(c.m_profile())),
                        ("dim".into(), report::dim(c.dim)),
                    ]));
                }
            }
            HuntResult::Skipped(why) => skips.push(map([
                ("index".into(), (o.index as u64).into()),
                ("ideal".into(), ideal),
                ("reason".into(), why.clone().into()),
            ])),
        }
    }
    let mode = match params.mode {
        HuntMode::General => "general",
        HuntMode::PrincipalWithPurePower => "pure-power",
    };
    let mut r = Report::new("hunt");
    r.set("field", params.ring.to_string())
        .set("n", params.n as u64)
        .set("deg", u64::from(params.max_deg))
        .set("count", params.count as u64)
        .set("seed", params.seed)
        .set("mode", mode)
        .set("checked", checked)
        .set("skipped", skips.len() as u64)
        .set("mismatch_count", mismatches.len() as u64)
        .set("mismatches", Value::Sequence(mismatches))
        .set("skips", Value::Sequence(skips));
    Ok((r, EXIT_OK))
}
