//! Suite selection, execution and the JSON report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use crossed_core::cleft::Trivialization;
use crossed_core::coalg::check_coalgebra;
use crossed_core::crossprod::CrossedProductData;
use crossed_core::dualcross::DualCrossedData;
use crossed_core::entwine::{EntwiningData, InstanceParams};
use crossed_core::gauge::{check_group_law, GaugeTransformation};
use crossed_core::instances::mutations::{is_dual, mutate_dual, mutate_eq2, MUTATIONS};
use crossed_core::instances::toys::DualToy;
use crossed_core::instances::{lookup, Instance};
use crossed_core::kernel::{all_pass, merge, CheckReport, SampleSpec, Sampler};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Coalgebra,
    Entwining,
    Crossed,
    Cleft,
    Gauge,
    Lemma24,
    Lemma26,
    Lemma34,
    Dual,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Coalgebra,
        Suite::Entwining,
        Suite::Crossed,
        Suite::Cleft,
        Suite::Gauge,
        Suite::Lemma24,
        Suite::Lemma26,
        Suite::Lemma34,
        Suite::Dual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coalgebra => "coalgebra",
            Suite::Entwining => "entwining",
            Suite::Crossed => "crossed",
            Suite::Cleft => "cleft",
            Suite::Gauge => "gauge",
            Suite::Lemma24 => "lemma24",
            Suite::Lemma26 => "lemma26",
            Suite::Lemma34 => "lemma34",
            Suite::Dual => "dual",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// `all` or a comma-separated list; duplicates collapse and the canonical
/// order is kept so reports do not depend on how the list was spelled.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, String> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out = s.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<Suite>, _>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err("no suites selected".into());
    }
    Ok(out)
}

/// A rejected configuration; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<crossed_core::Error> for UsageError {
    fn from(e: crossed_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub instance: String,
    pub params: InstanceParams,
    pub spec: SampleSpec,
    pub suites: Vec<Suite>,
    pub mutate: Option<String>,
    /// Number of gauge transformations exercised by the gauge suite.
    pub gauges: usize,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(instance: impl Into<String>) -> Self {
        RunConfig {
            instance: instance.into(),
            params: InstanceParams::default(),
            spec: SampleSpec::default(),
            suites: Suite::ALL.to_vec(),
            mutate: None,
            gauges: 20,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub version: String,
    pub instance: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        all_pass(&self.checks)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn param_map(cfg: &RunConfig) -> BTreeMap<String, String> {
    let p = &cfg.params;
    let sp = &cfg.spec;
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    if cfg.instance == "eq2" {
        put("q", p.q.as_ref().map_or("q".to_string(), |r| r.to_string()));
        put("mu", p.mu.to_string());
        put("nu", p.nu.to_string());
        put("s", p.s.to_string());
    }
    put("pMin", sp.p_window.0.to_string());
    put("pMax", sp.p_window.1.to_string());
    put("maxDegree", sp.max_degree.to_string());
    put("samples", sp.trials.to_string());
    put("gauges", cfg.gauges.to_string());
    put("suites", cfg.suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(","));
    if let Some(m) = &cfg.mutate {
        put("mutate", m.clone());
    }
    m
}

/// Checks for an instance with a ψ, a trivialization and crossed product data.
struct Primary<'a> {
    ent: &'a Arc<EntwiningData>,
    triv: &'a Trivialization,
    data: &'a CrossedProductData,
    extra: Vec<(Suite, Box<dyn Fn(&SampleSpec) -> Vec<CheckReport> + Send + Sync + 'a>)>,
}

impl Primary<'_> {
    fn run(&self, suite: Suite, cfg: &RunConfig) -> Vec<CheckReport> {
        let spec = &cfg.spec;
        let mut out = match suite {
            Suite::Coalgebra => check_coalgebra(self.ent.c.as_ref(), spec),
            Suite::Entwining => {
                let mut v = self.ent.check_entwining(spec);
                v.extend(self.ent.check_psi_c(spec));
                v.push(self.ent.check_coaction(spec));
                v
            }
            Suite::Crossed => self.data.check_axioms(spec),
            Suite::Cleft => {
                let mut v = self.triv.validate(spec);
                v.extend(self.triv.check_theta(self.data, spec));
                v
            }
            Suite::Gauge => self.gauges(cfg),
            Suite::Lemma24 => self.data.check_comodule_compat(spec),
            Suite::Lemma26 => self.triv.check_lemma26(spec),
            Suite::Lemma34 => self.ent.check_trivial_cocycle_admissible(spec),
            Suite::Dual => vec![CheckReport::skipped("dual")],
        };
        for (s, f) in &self.extra {
            if *s == suite {
                out.extend(f(spec));
            }
        }
        out
    }

    /// Scalar gauges drawn from independent seeded streams. The sample budget
    /// is shared between them, with a floor per gauge.
    fn gauges(&self, cfg: &RunConfig) -> Vec<CheckReport> {
        let count = cfg.gauges.max(1);
        let per = cfg.spec.with_trials(cfg.spec.trials.div_ceil(count).max(3));
        let ent = self.ent.clone();
        let data = self.data;
        let make = |k: usize| {
            let mut s = Sampler::for_stream(cfg.spec.seed, &format!("gauge-{k}"));
            GaugeTransformation::random_scalar(ent.clone(), &mut s, &per)
        };
        let parts: Vec<Vec<CheckReport>> = (0..count)
            .into_par_iter()
            .map(|k| {
                let (g, h) = match (make(k), make(k + count)) {
                    (Ok(g), Ok(h)) => (g, h),
                    (Err(e), _) | (_, Err(e)) => return vec![setup_failure("gauge.construct", &e)],
                };
                let mut v = g.validate(&per);
                v.extend(g.check_equivalence(data, &per));
                v.push(check_group_law(data, &g, &h, &per));
                let cob = g.coboundary(data);
                v.extend(cob.check_axioms(&per).into_iter().map(|r| r.prefixed("coboundary")));
                v
            })
            .collect();
        merge(parts.into_iter().flatten())
    }
}

fn setup_failure(id: &str, e: &dyn fmt::Display) -> CheckReport {
    CheckReport::fail(
        id,
        1,
        crossed_core::kernel::Witness { input: "setup".into(), lhs: format!("error: {e}"), rhs: "-".into() },
    )
}

fn run_dual(toy: &DualToy, data: &DualCrossedData, suite: Suite, cfg: &RunConfig) -> Vec<CheckReport> {
    let spec = &cfg.spec;
    match suite {
        Suite::Coalgebra => {
            let mut v = check_coalgebra(toy.ent.c.as_ref(), spec);
            v.extend(check_coalgebra(toy.m.as_ref(), spec).into_iter().map(|r| r.prefixed("quotient")));
            v
        }
        Suite::Entwining => toy.ent.check(),
        Suite::Dual => {
            let mut v = vec![toy.m.check_coideal()];
            v.extend(data.check_axioms());
            v
        }
        Suite::Cleft => match &toy.cleft {
            Some(cl) => {
                let mut v = cl.validate(spec);
                v.extend(cl.check_theta(data, spec));
                v
            }
            None => vec![CheckReport::skipped("dualcleft")],
        },
        Suite::Gauge => match toy.gauges(cfg.gauges.max(1)) {
            Ok(gs) => {
                let parts: Vec<Vec<CheckReport>> = gs
                    .par_iter()
                    .map(|g| {
                        let mut v = g.validate(spec);
                        v.extend(g.check_equivalence(data));
                        v
                    })
                    .collect();
                merge(parts.into_iter().flatten())
            }
            Err(e) => vec![setup_failure("dualgauge.construct", &e)],
        },
        other => vec![CheckReport::skipped(other.name())],
    }
}

/// Runs the selected suites. Configuration problems come back as
/// [`UsageError`]; failing checks are reported, not returned as errors.
pub fn run_suite(cfg: &RunConfig) -> Result<Report, UsageError> {
    let start = Instant::now();
    cfg.spec.validate()?;
    if let Some(m) = &cfg.mutate {
        if !MUTATIONS.iter().any(|(n, _)| n == m) {
            return Err(UsageError(format!("unknown mutation '{m}'")));
        }
    }
    let inst = lookup(&cfg.instance, &cfg.params)?;
    let run = || -> Result<Vec<CheckReport>, UsageError> {
        Ok(match &inst {
            Instance::Eq2(base) => {
                let e = match &cfg.mutate {
                    Some(m) if is_dual(m) => return Err(UsageError(format!("{m} applies to the dual toys"))),
                    Some(m) => mutate_eq2(base, &cfg.params, m)?,
                    None => mutate_none(base),
                };
                let params = &cfg.params;
                let ec = &e;
                let prim = Primary {
                    ent: &e.ent,
                    triv: &e.triv,
                    data: &e.data,
                    extra: vec![
                        (Suite::Entwining, Box::new(move |_: &SampleSpec| vec![ec.check_hyperboloid(params)])),
                        (Suite::Entwining, Box::new(move |sp: &SampleSpec| vec![ec.check_kappa_action(sp)])),
                        (Suite::Entwining, Box::new(move |sp: &SampleSpec| ec.check_frontier(params, sp))),
                        (Suite::Cleft, Box::new(move |sp: &SampleSpec| ec.check_closed_forms(params, sp))),
                    ],
                };
                cfg.suites.par_iter().map(|s| prim.run(*s, cfg)).collect::<Vec<_>>().concat()
            }
            Instance::Bialgebra(b) => {
                if let Some(m) = &cfg.mutate {
                    return Err(UsageError(format!("{m} does not apply to {}", cfg.instance)));
                }
                let bc = &**b;
                let prim = Primary {
                    ent: &b.ent,
                    triv: &b.triv,
                    data: &b.cleft,
                    extra: vec![(
                        Suite::Crossed,
                        Box::new(move |sp: &SampleSpec| {
                            let mut v: Vec<CheckReport> =
                                bc.trivial.check_axioms(sp).into_iter().map(|r| r.prefixed("trivial")).collect();
                            v.push(bc.trivial.check_rho_hat_equal(&bc.cleft, sp));
                            v
                        }),
                    )],
                };
                cfg.suites.par_iter().map(|s| prim.run(*s, cfg)).collect::<Vec<_>>().concat()
            }
            Instance::Dual(toy) => {
                let data = match &cfg.mutate {
                    Some(m) if !is_dual(m) => return Err(UsageError(format!("{m} applies to eq2"))),
                    Some(m) => mutate_dual(toy, m)?,
                    None => toy.data(),
                };
                cfg.suites.par_iter().map(|s| run_dual(toy, &data, *s, cfg)).collect::<Vec<_>>().concat()
            }
        })
    };
    let checks = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| UsageError(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        instance: cfg.instance.clone(),
        params: param_map(cfg),
        seed: cfg.spec.seed,
        checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn mutate_none(e: &crossed_core::instances::eq2::Eq2) -> crossed_core::instances::eq2::Eq2 {
    crossed_core::instances::eq2::Eq2 { ent: e.ent.clone(), triv: e.triv.clone(), data: e.data.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(parse_suites("all").unwrap().len(), 9);
        assert_eq!(parse_suites("lemma26, crossed,crossed").unwrap(), vec![Suite::Crossed, Suite::Lemma26]);
        assert!(parse_suites("crossed,bogus").is_err());
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        assert!(run_suite(&RunConfig::new("nope")).is_err());
        let cfg = RunConfig { mutate: Some("nope".into()), ..RunConfig::new("eq2") };
        assert!(run_suite(&cfg).is_err());
        let cfg = RunConfig { mutate: Some("dual-rho".into()), ..RunConfig::new("eq2") };
        assert!(run_suite(&cfg).is_err());
    }

    #[test]
    fn small_dual_toy_passes() {
        let cfg = RunConfig { gauges: 4, ..RunConfig::new("regular-z3") };
        let r = run_suite(&cfg).unwrap();
        assert!(r.all_pass(), "{:#?}", r.checks.iter().filter(|c| c.failed()).collect::<Vec<_>>());
    }
}
