//! The full analysis of one (ring, ideal) pair.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use ttfkit_core::ideals::enumerate_ideals;
use ttfkit_core::modcat::trace_ideal;
use ttfkit_core::{
    check_commutative_theorem, counterexample_conditions, locally_fp_via_fix, CommutativeVerdict,
    CounterexampleReport, Elem, FinModule, FiniteRing, FixVerdict, Ideal, LfpReport, Side,
};

use crate::error::{HarnessError, Result, StageExt};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub k_max: usize,
    pub budget: u64,
    /// Cyclic modules `R/K` classified in the TTF section.
    pub module_sample: usize,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            k_max: 2,
            budget: ttfkit_core::limits::get().matrix_budget,
            module_sample: 64,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RingInfo {
    pub name: Option<String>,
    pub label: String,
    pub size: usize,
    pub commutative: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealInfo {
    pub name: Option<String>,
    pub members: Vec<Elem>,
    pub order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclicEntry {
    /// The right ideal `K` of the module `R/K`.
    pub right_ideal: Vec<Elem>,
    pub order: usize,
    pub in_c: bool,
    pub in_t: bool,
    pub in_f: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TtfSection {
    pub cyclic_modules: Vec<CyclicEntry>,
    pub truncated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub k: usize,
    /// Row-major entries.
    pub entries: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LfpSection {
    pub via_idempotents: bool,
    pub via_fix_closure: FixVerdict,
    pub k_max: usize,
    pub budget: u64,
    pub fix_closure_ideal: Vec<Elem>,
    pub idempotent_closure_ideal: Vec<Elem>,
    pub skipped_k: Vec<usize>,
    pub witnesses: Vec<Witness>,
}

impl From<&LfpReport> for LfpSection {
    fn from(r: &LfpReport) -> Self {
        Self {
            via_idempotents: r.via_idempotents,
            via_fix_closure: r.via_fix_closure,
            k_max: r.k_max,
            budget: r.budget,
            fix_closure_ideal: r.fix_closure_ideal.elements(),
            idempotent_closure_ideal: r.idempotent_closure_ideal.elements(),
            skipped_k: r.skipped.clone(),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| Witness {
                    k: w.rows(),
                    entries: w.entries().to_vec(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutativeSection {
    #[serde(flatten)]
    pub verdict: CommutativeVerdict,
    pub assumption: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub ring: RingInfo,
    pub ideal: IdealInfo,
    pub idempotent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ttf: Option<TtfSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lfp: Option<LfpSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enough_projectives: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutative: Option<CommutativeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u128>>,
}

struct Clock {
    on: bool,
    laps: BTreeMap<&'static str, u128>,
    last: Instant,
}

impl Clock {
    fn lap(&mut self, stage: &'static str) {
        if self.on {
            self.laps.insert(stage, self.last.elapsed().as_millis());
            self.last = Instant::now();
        }
    }
}

/// `R/K` for every right ideal `K`, up to the sample size.
fn ttf_section(ring: &Arc<FiniteRing>, ideal: &Ideal, sample: usize) -> Result<TtfSection> {
    let ttf = ideal.ttf_triple().stage("ttf")?;
    let rights = enumerate_ideals(ring, Side::Right).stage("ttf")?;
    let truncated = rights.len() > sample;
    let mut cyclic_modules = Vec::new();
    for k in rights.iter().take(sample) {
        let m = FinModule::ring_quotient(k, Side::Right).stage("ttf")?;
        let flags = ttf.classify(&m).stage("ttf")?;
        cyclic_modules.push(CyclicEntry {
            right_ideal: k.elements(),
            order: m.order(),
            in_c: flags.in_c,
            in_t: flags.in_t,
            in_f: flags.in_f,
        });
    }
    Ok(TtfSection {
        cyclic_modules,
        truncated,
    })
}

/// Whether `I` is the trace of the projectives `e·R`, `e ∈ I` idempotent.
fn enough_projectives(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Result<bool> {
    let modules = ideal
        .elements()
        .into_iter()
        .filter(|&e| ring.is_idempotent(e))
        .map(|e| FinModule::ideal_module(&Ideal::generated(ring, &[e], Side::Right), Side::Right))
        .collect::<ttfkit_core::Result<Vec<_>>>()
        .stage("projectives")?;
    let trace = trace_ideal(ring, &modules).stage("projectives")?;
    Ok(trace == *ideal)
}

pub fn analyze(
    ring: &Arc<FiniteRing>,
    ring_name: Option<&str>,
    ideal: &Ideal,
    ideal_name: Option<&str>,
    opts: &Options,
) -> Result<AnalysisReport> {
    if ideal.side() != Side::TwoSided {
        return Err(HarnessError::Input("analysis needs a two-sided ideal".into()));
    }
    let mut clock = Clock {
        on: opts.timings,
        laps: BTreeMap::new(),
        last: Instant::now(),
    };
    let commutative = ring.is_commutative();
    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        ring: RingInfo {
            name: ring_name.map(str::to_string),
            label: ring.label().to_string(),
            size: ring.size(),
            commutative,
        },
        ideal: IdealInfo {
            name: ideal_name.map(str::to_string),
            members: ideal.elements(),
            order: ideal.order(),
        },
        idempotent: ideal.is_idempotent(),
        ttf: None,
        lfp: None,
        enough_projectives: None,
        counterexample: None,
        commutative: None,
        timings_ms: None,
    };
    clock.lap("idempotency");
    if report.idempotent {
        report.ttf = Some(ttf_section(ring, ideal, opts.module_sample)?);
        clock.lap("ttf");
        let lfp = locally_fp_via_fix(ideal, opts.k_max, opts.budget).stage("lfp")?;
        clock.lap("lfp");
        let projectives = enough_projectives(ring, ideal)?;
        clock.lap("projectives");
        let counter = counterexample_conditions(ideal).stage("counterexample")?;
        clock.lap("counterexample");
        if projectives != lfp.via_idempotents || counter.trace_of_projective != lfp.via_idempotents {
            return Err(HarnessError::Violation(format!(
                "inconsistent projective verdicts for {} in {}",
                ideal.label(),
                ring.label()
            )));
        }
        if commutative {
            let verdict = check_commutative_theorem(ideal).stage("commutative")?;
            report.commutative = Some(CommutativeSection {
                verdict,
                assumption: "finite rings are semiregular, so the quotient category is locally finitely presented",
            });
            clock.lap("commutative");
        }
        report.lfp = Some(LfpSection::from(&lfp));
        report.enough_projectives = Some(projectives);
        report.counterexample = Some(counter);
    }
    if opts.timings {
        report.timings_ms = Some(clock.laps);
    }
    Ok(report)
}

fn list(xs: &[Elem]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let ring = r.ring.name.as_deref().unwrap_or(&r.ring.label);
    let ideal = match &r.ideal.name {
        Some(n) => format!("{n} = {}", list(&r.ideal.members)),
        None => list(&r.ideal.members),
    };
    let _ = writeln!(s, "ring {ring} ({}, {} elements)", r.ring.label, r.ring.size);
    let _ = writeln!(s, "  ideal {ideal}");
    let _ = writeln!(s, "  idempotent: {}", r.idempotent);
    if let Some(ttf) = &r.ttf {
        let count = |f: fn(&CyclicEntry) -> bool| ttf.cyclic_modules.iter().filter(|e| f(e)).count();
        let _ = writeln!(
            s,
            "  cyclic modules: {} classified{}, {} in C, {} in T, {} in F",
            ttf.cyclic_modules.len(),
            if ttf.truncated { " (truncated)" } else { "" },
            count(|e| e.in_c),
            count(|e| e.in_t),
            count(|e| e.in_f)
        );
    }
    if let Some(lfp) = &r.lfp {
        let fix = match lfp.via_fix_closure {
            FixVerdict::Certified { k } => format!("true (k = {k})"),
            FixVerdict::Unknown => "unknown".to_string(),
        };
        let _ = writeln!(s, "  locally fp via idempotents: {}", lfp.via_idempotents);
        let _ = writeln!(s, "  locally fp via Fix closure: {fix}");
    }
    if let Some(p) = r.enough_projectives {
        let _ = writeln!(s, "  enough projectives: {p}");
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(
            s,
            "  counterexample conditions: (i) {}, (ii) {}, trace of projective {}; {}",
            c.cond_i,
            c.cond_ii,
            c.trace_of_projective,
            if c.genuine_counterexample { "COUNTEREXAMPLE" } else { "not a counterexample" }
        );
    }
    if let Some(c) = &r.commutative {
        let generator = c.verdict.idempotent_generator.map_or("none".to_string(), |e| e.to_string());
        let _ = writeln!(
            s,
            "  commutative check: holds {}, generator {generator}, factor sizes {:?}, support {:?}",
            c.verdict.holds, c.verdict.factor_sizes, c.verdict.support
        );
    }
    if let Some(t) = &r.timings_ms {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v}ms")).collect();
        let _ = writeln!(s, "  timings: {}", parts.join(", "));
    }
    s
}
