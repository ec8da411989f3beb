//! The built-in example rings and their fixtures.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use ttfkit_core::ideals::enumerate_two_sided_ideals;
use ttfkit_core::{check_commutative_theorem, locally_fp_via_idempotents, Elem, FiniteRing, Ideal};

use crate::analyze::{analyze, AnalysisReport, Options, SCHEMA_VERSION};
use crate::error::{HarnessError, Result, StageExt};
use crate::oracle;
use crate::parse::{parse_spec, Environment, TableSource};

pub const GALLERY_SPEC: &str = include_str!("../gallery/gallery.ttf");
pub const FIXTURES: &str = include_str!("../gallery/fixtures.json");
const GF4_TABLES: &str = include_str!("../gallery/gf4.tables");

/// Rings of the gallery proper, in report order.
pub const GALLERY_RINGS: [&str; 10] = ["z4", "z6", "z12", "gf4", "ut2", "ut3", "m2", "z2xz3", "f2xut2", "ut2q"];

struct Embedded;

impl TableSource for Embedded {
    fn read(&self, path: &str) -> std::io::Result<String> {
        match path {
            "gf4.tables" => Ok(GF4_TABLES.to_string()),
            _ => Err(std::io::Error::new(std::io::ErrorKind::NotFound, path.to_string())),
        }
    }
}

pub fn load() -> Result<Environment> {
    parse_spec(GALLERY_SPEC, &Embedded)
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: String,
    pub ctor: String,
    pub ring: Arc<FiniteRing>,
    /// Every two-sided ideal, with its name when the gallery names it.
    pub ideals: Vec<(Option<String>, Ideal)>,
}

pub fn entries(env: &Environment) -> Result<Vec<GalleryEntry>> {
    GALLERY_RINGS
        .iter()
        .map(|&name| {
            let nr = env
                .ring(name)
                .ok_or_else(|| HarnessError::Input(format!("gallery ring `{name}` missing")))?;
            let ideals = enumerate_two_sided_ideals(&nr.ring)
                .stage("enumerate")?
                .into_iter()
                .map(|i| {
                    let label = env.ideals_of(name).find(|n| n.ideal == i).map(|n| n.name.clone());
                    (label, i)
                })
                .collect();
            Ok(GalleryEntry {
                name: name.to_string(),
                ctor: nr.ctor.clone(),
                ring: nr.ring.clone(),
                ideals,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GalleryReport {
    pub schema_version: u32,
    pub reports: Vec<AnalysisReport>,
}

/// Analyzes every (ring, ideal) pair; rings run on separate threads and
/// results are assembled in gallery order.
pub fn report(opts: &Options) -> Result<GalleryReport> {
    let env = load()?;
    let entries = entries(&env)?;
    let per_ring: Vec<Result<Vec<AnalysisReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| {
                scope.spawn(move || {
                    e.ideals
                        .iter()
                        .map(|(name, i)| analyze(&e.ring, Some(&e.name), i, name.as_deref(), opts))
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("analysis thread panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in per_ring {
        reports.extend(r?);
    }
    Ok(GalleryReport {
        schema_version: SCHEMA_VERSION,
        reports,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFixture {
    pub members: Vec<Elem>,
    pub idempotent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_by_idempotents: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent_generator: Option<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFixture {
    pub name: String,
    pub size: usize,
    pub commutative: bool,
    pub units: usize,
    pub idempotents: usize,
    pub radical: Vec<Elem>,
    pub two_sided_ideals: usize,
    pub idempotent_ideals: usize,
    pub ideals: Vec<IdealFixture>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    pub schema_version: u32,
    pub rings: Vec<RingFixture>,
}

/// Fixture values computed by the brute-force oracles alone.
pub fn derive_ring_fixture(name: &str, r: &FiniteRing) -> RingFixture {
    let commutative = oracle::is_commutative(r);
    let ideals: Vec<IdealFixture> = oracle::two_sided_ideals(r)
        .into_iter()
        .map(|i| {
            let idempotent = oracle::is_idempotent_ideal(r, &i);
            IdealFixture {
                members: i.iter().copied().collect(),
                idempotent,
                generated_by_idempotents: idempotent.then(|| oracle::generated_by_idempotents(r, &i)),
                idempotent_generator: if idempotent && commutative { oracle::idempotent_generator(r, &i) } else { None },
            }
        })
        .collect();
    RingFixture {
        name: name.to_string(),
        size: r.size(),
        commutative,
        units: oracle::units(r).len(),
        idempotents: oracle::idempotents(r).len(),
        radical: oracle::radical_left(r).into_iter().collect(),
        two_sided_ideals: ideals.len(),
        idempotent_ideals: ideals.iter().filter(|i| i.idempotent).count(),
        ideals,
    }
}

pub fn derive_fixtures() -> Result<Fixtures> {
    let env = load()?;
    let rings = entries(&env)?
        .iter()
        .map(|e| derive_ring_fixture(&e.name, &e.ring))
        .collect();
    Ok(Fixtures {
        schema_version: SCHEMA_VERSION,
        rings,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub rings: usize,
    pub ideals: usize,
    pub checks: usize,
}

fn mismatch<T: std::fmt::Debug>(fixture: String, recorded: &T, derived: &T) -> HarnessError {
    HarnessError::Violation(format!("fixture {fixture}: recorded {recorded:?}, re-derived {derived:?}"))
}

struct Checker {
    checks: usize,
}

impl Checker {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, fixture: impl FnOnce() -> String, recorded: &T, derived: &T) -> Result<()> {
        self.checks += 1;
        if recorded != derived {
            return Err(mismatch(fixture(), recorded, derived));
        }
        Ok(())
    }
}

/// Re-derives every fixture with the oracles and checks the library
/// against the same values.
pub fn verify(fixtures_json: &str) -> Result<VerifySummary> {
    let fixtures: Fixtures = serde_json::from_str(fixtures_json)
        .map_err(|e| HarnessError::Input(format!("cannot read fixtures: {e}")))?;
    let env = load()?;
    let entries = entries(&env)?;
    let mut c = Checker { checks: 0 };
    let names: Vec<&str> = fixtures.rings.iter().map(|f| f.name.as_str()).collect();
    c.eq(|| "ring list".into(), &names, &GALLERY_RINGS.to_vec())?;
    let mut ideal_count = 0;
    for (fx, e) in fixtures.rings.iter().zip(&entries) {
        let r = &e.ring;
        let derived = derive_ring_fixture(&e.name, r);
        let n = &fx.name;
        c.eq(|| format!("{n}.size"), &fx.size, &derived.size)?;
        c.eq(|| format!("{n}.commutative"), &fx.commutative, &derived.commutative)?;
        c.eq(|| format!("{n}.units"), &fx.units, &derived.units)?;
        c.eq(|| format!("{n}.idempotents"), &fx.idempotents, &derived.idempotents)?;
        c.eq(|| format!("{n}.radical"), &fx.radical, &derived.radical)?;
        c.eq(|| format!("{n}.two_sided_ideals"), &fx.two_sided_ideals, &derived.two_sided_ideals)?;
        c.eq(|| format!("{n}.idempotent_ideals"), &fx.idempotent_ideals, &derived.idempotent_ideals)?;
        c.eq(|| format!("{n}.ideals.len"), &fx.ideals.len(), &derived.ideals.len())?;
        for (k, (fi, di)) in fx.ideals.iter().zip(&derived.ideals).enumerate() {
            c.eq(|| format!("{n}.ideals[{k}]"), fi, di)?;
        }

        // library against oracle
        let lib = format!("library {n}");
        c.eq(|| format!("{lib} commutative"), &r.is_commutative(), &derived.commutative)?;
        c.eq(|| format!("{lib} units"), &r.units().count(), &derived.units)?;
        c.eq(|| format!("{lib} idempotents"), &r.idempotents().len(), &derived.idempotents)?;
        c.eq(|| format!("{lib} radical"), &r.jacobson_radical().elements(), &derived.radical)?;
        let lib_ideals: Vec<Vec<Elem>> = e.ideals.iter().map(|(_, i)| i.elements()).collect();
        let oracle_ideals: BTreeSet<Vec<Elem>> = derived.ideals.iter().map(|i| i.members.clone()).collect();
        let lib_set: BTreeSet<Vec<Elem>> = lib_ideals.iter().cloned().collect();
        c.eq(|| format!("{lib} ideal lattice"), &lib_set, &oracle_ideals)?;
        for (_, i) in &e.ideals {
            ideal_count += 1;
            let d = derived
                .ideals
                .iter()
                .find(|d| d.members == i.elements())
                .expect("lattices agree");
            let label = i.label();
            c.eq(|| format!("{lib} {label} idempotent"), &i.is_idempotent(), &d.idempotent)?;
            if d.idempotent {
                let via = locally_fp_via_idempotents(i).stage("verify")?;
                c.eq(|| format!("{lib} {label} idempotent generation"), &Some(via), &d.generated_by_idempotents)?;
                if d.idempotent_generator.is_some() || derived.commutative {
                    let v = check_commutative_theorem(i).stage("verify")?;
                    c.eq(|| format!("{lib} {label} idempotent generator"), &v.idempotent_generator, &d.idempotent_generator)?;
                }
            }
        }
    }
    Ok(VerifySummary {
        rings: entries.len(),
        ideals: ideal_count,
        checks: c.checks,
    })
}
