//! Which knots a shadow supports, fertility predicates, variation
//! statistics of minimal diagrams and checks of the inequalities tying
//! them to braid index, genus and the HOMFLY polynomial.
//!
//! Everything runs over an [`Atlas`]: the support census of every shadow
//! with `n` crossings, computed once per `n` and shared.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::codes::{enumerate_shadows_with, EnumerationOptions, Shadow};
use crate::diagram::{Diagram, DiagramStats};
use crate::error::{Error, Result};
use crate::knotbase::{Fingerprint, KnotBase, KnotRecord};
use crate::polynomial::{bounds, invariant_bounds};

/// Default ceiling for full sweeps.
pub const DEFAULT_CEILING: usize = 7;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FertilityOptions {
    /// Largest shadow crossing number the atlas will sweep.
    pub ceiling: usize,
    /// Whether the unknot counts as a target knot.
    pub include_unknot: bool,
    /// Whether shadows with nugatory crossings take part.
    pub allow_reducible: bool,
    /// Enumerate shadows up to reflection of the sphere.
    pub reflection_quotient: bool,
}

impl Default for FertilityOptions {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_CEILING,
            include_unknot: true,
            allow_reducible: true,
            reflection_quotient: false,
        }
    }
}

/// Settings embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSettings {
    pub table_version: String,
    pub table_complete_through: usize,
    pub fertility_ceiling: usize,
    pub homfly_ceiling: usize,
    pub include_unknot: bool,
    pub allow_reducible: bool,
    pub reflection_quotient: bool,
}

/// The knots supported by one shadow, with the least assignment mask
/// realizing each.
#[derive(Clone, Debug)]
pub struct SupportCensus {
    shadow: Shadow,
    // Per mask with the top crossing's bit clear: first matching record,
    // and whether the diagram carries the mirror of the reference polynomial.
    ids: Vec<u32>,
    mirrored: Vec<bool>,
    supported: Vec<(usize, u64)>,
    names: Vec<String>,
    unidentified: Vec<String>,
}

impl SupportCensus {
    pub fn shadow(&self) -> &Shadow {
        &self.shadow
    }

    /// Supported table knots in table order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Fingerprint hashes of supported knots missing from the table.
    pub fn unidentified(&self) -> &[String] {
        &self.unidentified
    }

    pub fn witness(&self, name: &str) -> Option<u64> {
        self.names.iter().position(|n| n == name).map(|i| self.supported[i].1)
    }

    /// Witness mask for the record at table position `pos`.
    pub fn witness_at(&self, pos: usize) -> Option<u64> {
        self.supported.iter().find(|s| s.0 == pos).map(|s| s.1)
    }

    pub fn supports_at(&self, pos: usize) -> bool {
        self.witness_at(pos).is_some()
    }

    pub fn witness_diagram(&self, name: &str) -> Option<Diagram> {
        self.witness(name).map(|m| Diagram::from_mask(&self.shadow, m))
    }

    /// Number of assignments examined (one per mirror pair).
    pub fn assignments_examined(&self) -> usize {
        self.ids.len()
    }
}

impl Serialize for SupportCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.shadow.crossing_count();
        let supported: BTreeMap<&str, String> = self
            .names
            .iter()
            .zip(&self.supported)
            .map(|(n, &(_, m))| (n.as_str(), bits(m, c)))
            .collect();
        let mut st = s.serialize_struct("SupportCensus", 3)?;
        st.serialize_field("shadow", &self.shadow.code())?;
        st.serialize_field("supported", &supported)?;
        st.serialize_field("unidentified", &self.unidentified)?;
        st.end()
    }
}

/// Assignment bits, crossing 0 first; `1` means the first passage is over.
pub fn bits(mask: u64, c: usize) -> String {
    (0..c).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn half_masks(c: usize) -> u64 {
    if c == 0 {
        1
    } else {
        1 << (c - 1)
    }
}

fn census_limit(base: &KnotBase) -> usize {
    base.engine().ceiling().min(63)
}

fn compute_census(shadow: &Shadow, base: &KnotBase) -> Result<SupportCensus> {
    let c = shadow.crossing_count();
    if c > census_limit(base) {
        return Err(Error::ResourceLimit { crossings: c, limit: census_limit(base) });
    }
    // A mask and its complement give mirror diagrams, which identify alike,
    // so only masks with the top bit clear are evaluated. The least mask of
    // each complementary pair is among them.
    let half = half_masks(c);
    let mut ids = Vec::with_capacity(half as usize);
    let mut mirrored = Vec::with_capacity(half as usize);
    let mut best: BTreeMap<usize, u64> = BTreeMap::new();
    let mut unidentified = BTreeSet::new();
    for mask in 0..half {
        let p = base.engine().homfly_knot(&Diagram::from_mask(shadow, mask))?;
        let hits = base.lookup(&p);
        match hits.first() {
            None => {
                unidentified.insert(Fingerprint::of(&p).hash());
                ids.push(NONE);
                mirrored.push(false);
            }
            Some(&first) => {
                for &h in hits {
                    best.entry(h).or_insert(mask);
                }
                ids.push(first as u32);
                mirrored.push(p != base.records()[first].homfly);
            }
        }
    }
    let supported: Vec<(usize, u64)> = best.into_iter().collect();
    let names = supported.iter().map(|&(i, _)| base.records()[i].name.clone()).collect();
    Ok(SupportCensus {
        shadow: shadow.clone(),
        ids,
        mirrored,
        supported,
        names,
        unidentified: unidentified.into_iter().collect(),
    })
}

/// Every table knot obtainable from `shadow` by some crossing assignment.
pub fn support_census(shadow: &Shadow, base: &KnotBase) -> Result<SupportCensus> {
    compute_census(shadow, base)
}

/// The least assignment of `shadow` giving `name` (up to mirror), if any.
pub fn supports(shadow: &Shadow, name: &str, base: &KnotBase) -> Result<Option<Diagram>> {
    let pos = base.position(name).ok_or_else(|| Error::UnknownKnot(name.to_string()))?;
    let c = shadow.crossing_count();
    if c > census_limit(base) {
        return Err(Error::ResourceLimit { crossings: c, limit: census_limit(base) });
    }
    if base.records()[pos].crossing_number > c {
        return Ok(None);
    }
    for mask in 0..half_masks(c) {
        let d = Diagram::from_mask(shadow, mask);
        let p = base.engine().homfly_knot(&d)?;
        if base.lookup(&p).contains(&pos) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// A shadow supporting both the knot under test and one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub target: String,
    pub shadow: Shadow,
    pub knot_mask: u64,
    pub target_mask: u64,
}

impl Witness {
    pub fn knot_diagram(&self) -> Diagram {
        Diagram::from_mask(&self.shadow, self.knot_mask)
    }

    pub fn target_diagram(&self) -> Diagram {
        Diagram::from_mask(&self.shadow, self.target_mask)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.shadow.crossing_count();
        let mut st = s.serialize_struct("Witness", 4)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("shadow", &self.shadow.code())?;
        st.serialize_field("knot_assignment", &bits(self.knot_mask, c))?;
        st.serialize_field("target_assignment", &bits(self.target_mask, c))?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Predicate {
    #[serde(rename = "fertile")]
    Fertile,
    #[serde(rename = "(m,n)-fertile")]
    MnFertile,
    #[serde(rename = "F(K)")]
    FertilityNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct FertilityReport {
    pub knot: String,
    pub predicate: Predicate,
    /// Largest target crossing number considered.
    pub m: Option<usize>,
    /// Shadow crossing number.
    pub n: usize,
    pub verdict: bool,
    pub fertility_number: Option<usize>,
    pub witnesses: Vec<Witness>,
    /// First target with no supporting shadow.
    pub obstruction: Option<String>,
    pub unsupported: Vec<String>,
    pub settings: SearchSettings,
}

impl FertilityReport {
    pub fn csv_header() -> Vec<&'static str> {
        vec!["knot", "predicate", "m", "n", "verdict", "fertility_number", "obstruction", "witnesses"]
    }

    pub fn csv_row(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let predicate = match self.predicate {
            Predicate::Fertile => "fertile",
            Predicate::MnFertile => "(m,n)-fertile",
            Predicate::FertilityNumber => "F(K)",
        };
        vec![
            self.knot.clone(),
            predicate.to_string(),
            opt(self.m),
            self.n.to_string(),
            self.verdict.to_string(),
            opt(self.fertility_number),
            self.obstruction.clone().unwrap_or_default(),
            self.witnesses.len().to_string(),
        ]
    }
}

/// `[lower, upper]` bracket on the canonical genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GcInterval {
    pub lower: usize,
    pub upper: usize,
}

impl GcInterval {
    pub fn exact(value: usize) -> Self {
        Self { lower: value, upper: value }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Canonical genus bracket from the HOMFLY z-degree and the reference
/// diagram of the table.
pub fn gc_interval(name: &str, base: &KnotBase) -> Result<GcInterval> {
    record_gc_interval(base.get(name)?)
}

fn record_gc_interval(rec: &KnotRecord) -> Result<GcInterval> {
    let lower = invariant_bounds(&rec.homfly)?.gc_lower.max(0) as usize;
    Ok(GcInterval { lower, upper: rec.diagram.stats().g })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VariationStats {
    pub diagrams: usize,
    pub scv: usize,
    /// Half the largest writhe difference.
    pub wv: i64,
    pub min_s: usize,
    pub max_s: usize,
    pub min_w: i64,
    pub max_w: i64,
    pub min_g: usize,
    pub cgd_lower: usize,
    pub cgd_upper: usize,
    /// The diagram set was the complete minimal-diagram set; otherwise
    /// `scv` and `wv` are lower bounds.
    pub complete: bool,
}

impl VariationStats {
    /// Exact canonical genus defect, when known.
    pub fn cgd(&self) -> Option<usize> {
        (self.complete && self.cgd_lower == self.cgd_upper).then_some(self.cgd_lower)
    }
}

/// Seifert circle variation, writhe variation and canonical genus defect of
/// a set of diagrams sharing one crossing number.
pub fn variation_stats(diagrams: &[Diagram], gc: GcInterval, complete: bool) -> Result<VariationStats> {
    let stats: Vec<DiagramStats> = diagrams.iter().map(Diagram::stats).collect();
    variation_from_stats(&stats, gc, complete)
}

fn variation_from_stats(stats: &[DiagramStats], gc: GcInterval, complete: bool) -> Result<VariationStats> {
    let first = stats.first().ok_or(Error::EmptySet)?;
    if let Some(bad) = stats.iter().find(|d| d.c != first.c) {
        return Err(Error::LengthMismatch { expected: first.c, got: bad.c });
    }
    let min_s = stats.iter().map(|d| d.s).min().unwrap();
    let max_s = stats.iter().map(|d| d.s).max().unwrap();
    let min_w = stats.iter().map(|d| d.w).min().unwrap();
    let max_w = stats.iter().map(|d| d.w).max().unwrap();
    let min_g = stats.iter().map(|d| d.g).min().unwrap();
    Ok(VariationStats {
        diagrams: stats.len(),
        scv: max_s - min_s,
        wv: (max_w - min_w) / 2,
        min_s,
        max_s,
        min_w,
        max_w,
        min_g,
        cgd_lower: min_g.saturating_sub(gc.upper),
        cgd_upper: min_g.saturating_sub(gc.lower),
        complete,
    })
}

/// A shadow supporting the knot under test, with everything else it supports.
#[derive(Clone, Debug, Serialize)]
pub struct HostRecord {
    pub shadow: String,
    pub c: usize,
    pub s: usize,
    pub g: usize,
    pub supported: Vec<String>,
}

/// Computed data about one knot, the input to [`verify_bounds`].
#[derive(Clone, Debug, Serialize)]
pub struct KnotResults {
    pub knot: String,
    pub hosts: Vec<HostRecord>,
    pub verdicts: Vec<FertilityReport>,
    pub fertility_number: Option<usize>,
    pub variation: Option<VariationStats>,
    pub minimal: Vec<DiagramStats>,
    pub settings: SearchSettings,
}

/// Lazily computed support censuses for every shadow size up to a ceiling.
pub struct Atlas<'a> {
    base: &'a KnotBase,
    options: FertilityOptions,
    levels: Vec<OnceLock<Vec<SupportCensus>>>,
}

impl<'a> Atlas<'a> {
    pub fn new(base: &'a KnotBase, options: FertilityOptions) -> Self {
        let levels = (0..=options.ceiling).map(|_| OnceLock::new()).collect();
        Self { base, options, levels }
    }

    pub fn base(&self) -> &'a KnotBase {
        self.base
    }

    pub fn options(&self) -> FertilityOptions {
        self.options
    }

    pub fn settings(&self) -> SearchSettings {
        SearchSettings {
            table_version: self.base.version().to_string(),
            table_complete_through: self.base.complete_through(),
            fertility_ceiling: self.options.ceiling,
            homfly_ceiling: self.base.engine().ceiling(),
            include_unknot: self.options.include_unknot,
            allow_reducible: self.options.allow_reducible,
            reflection_quotient: self.options.reflection_quotient,
        }
    }

    fn limit(&self) -> usize {
        self.options.ceiling.min(census_limit(self.base))
    }

    /// Censuses of all `n`-crossing shadows, in canonical shadow order.
    pub fn level(&self, n: usize) -> Result<&[SupportCensus]> {
        if n > self.limit() {
            return Err(Error::ResourceLimit { crossings: n, limit: self.limit() });
        }
        let level = self.levels[n].get_or_init(|| {
            let opts = EnumerationOptions {
                allow_reducible: self.options.allow_reducible,
                reflection_quotient: self.options.reflection_quotient,
            };
            enumerate_shadows_with(n, opts)
                .par_iter()
                .map(|s| compute_census(s, self.base).expect("shadow size checked against ceiling"))
                .collect()
        });
        Ok(level)
    }

    fn record(&self, name: &str) -> Result<(usize, &'a KnotRecord)> {
        let pos = self.base.position(name).ok_or_else(|| Error::UnknownKnot(name.to_string()))?;
        Ok((pos, &self.base.records()[pos]))
    }

    fn require_table(&self, needed: usize) -> Result<()> {
        if needed > self.base.complete_through() {
            return Err(Error::TableInsufficient {
                needed,
                complete_through: self.base.complete_through(),
            });
        }
        Ok(())
    }

    fn targets(&self, admit: impl Fn(usize) -> bool) -> Vec<usize> {
        self.base
            .records()
            .iter()
            .enumerate()
            .filter(|(_, r)| admit(r.crossing_number))
            .filter(|(_, r)| self.options.include_unknot || r.crossing_number > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// For each target, the first `n`-crossing shadow supporting both it and
    /// the knot at `pos`. Returns witnesses and unsupported targets.
    fn search(&self, pos: usize, targets: &[usize], n: usize) -> Result<(Vec<Witness>, Vec<usize>)> {
        let hosts: Vec<&SupportCensus> =
            self.level(n)?.iter().filter(|c| c.supports_at(pos)).collect();
        let mut witnesses = Vec::new();
        let mut unsupported = Vec::new();
        for &t in targets {
            let hit = hosts.iter().find_map(|c| c.witness_at(t).map(|tm| (c, tm)));
            match hit {
                Some((c, target_mask)) => witnesses.push(Witness {
                    target: self.base.records()[t].name.clone(),
                    shadow: c.shadow.clone(),
                    knot_mask: c.witness_at(pos).expect("host supports the knot"),
                    target_mask,
                }),
                None => unsupported.push(t),
            }
        }
        Ok((witnesses, unsupported))
    }

    fn report(
        &self,
        name: &str,
        predicate: Predicate,
        m: Option<usize>,
        n: usize,
        witnesses: Vec<Witness>,
        unsupported: &[usize],
    ) -> FertilityReport {
        let unsupported: Vec<String> =
            unsupported.iter().map(|&i| self.base.records()[i].name.clone()).collect();
        FertilityReport {
            knot: name.to_string(),
            predicate,
            m,
            n,
            verdict: unsupported.is_empty(),
            fertility_number: None,
            witnesses,
            obstruction: unsupported.first().cloned(),
            unsupported,
            settings: self.settings(),
        }
    }

    /// Whether some minimal-crossing shadow of `name` supports each prime
    /// knot of smaller crossing number.
    pub fn is_fertile(&self, name: &str) -> Result<FertilityReport> {
        let (pos, rec) = self.record(name)?;
        let c = rec.crossing_number;
        if c > 0 {
            self.require_table(c - 1)?;
        }
        let targets = self.targets(|k| k < c);
        let (witnesses, unsupported) = self.search(pos, &targets, c)?;
        let m = c.checked_sub(1);
        Ok(self.report(name, Predicate::Fertile, m, c, witnesses, &unsupported))
    }

    /// Whether every prime knot with at most `m` crossings shares an
    /// `n`-crossing shadow with `name`.
    pub fn is_mn_fertile(&self, name: &str, m: usize, n: usize) -> Result<FertilityReport> {
        let (pos, _) = self.record(name)?;
        self.require_table(m)?;
        let targets = self.targets(|k| k <= m);
        let (witnesses, unsupported) = self.search(pos, &targets, n)?;
        Ok(self.report(name, Predicate::MnFertile, Some(m), n, witnesses, &unsupported))
    }

    /// Largest `m <= m_max` (default `c(K)`) with `name` being
    /// `(m, c(K))`-fertile, scanning `m` upward. `None` when even `m = 0`
    /// fails.
    pub fn fertility_number(&self, name: &str, m_max: Option<usize>) -> Result<FertilityReport> {
        let (pos, rec) = self.record(name)?;
        let c = rec.crossing_number;
        let m_max = m_max.unwrap_or(c);
        self.require_table(m_max)?;
        let targets = self.targets(|k| k <= m_max);
        let (witnesses, unsupported) = self.search(pos, &targets, c)?;
        let crossings = |t: &str| self.base.get(t).map(|r| r.crossing_number).unwrap_or(0);
        let number = match unsupported.iter().map(|&i| self.base.records()[i].crossing_number).min() {
            None => Some(m_max),
            Some(k) => k.checked_sub(1),
        };
        let witnesses: Vec<Witness> = witnesses
            .into_iter()
            .filter(|w| number.is_some_and(|f| crossings(&w.target) <= f))
            .collect();
        let mut report = self.report(name, Predicate::FertilityNumber, number, c, witnesses, &unsupported);
        report.verdict = number.is_some();
        report.fertility_number = number;
        Ok(report)
    }

    /// Every minimum-crossing diagram of `name` in its reference chirality,
    /// one per class under rotation, reversal and relabeling, sorted by key.
    pub fn minimal_diagrams(&self, name: &str) -> Result<Vec<Diagram>> {
        let (pos, rec) = self.record(name)?;
        let class = *self.base.lookup(&rec.homfly).first().unwrap_or(&pos) as u32;
        let amphichiral = rec.is_amphichiral_by_homfly();
        let mut found: BTreeMap<String, Diagram> = BTreeMap::new();
        let mut add = |d: Diagram| {
            // Reflecting the sphere and then switching every crossing gives
            // another diagram of the same knot.
            let twin = d.reflect().mirror();
            found.entry(twin.key()).or_insert(twin);
            found.entry(d.key()).or_insert(d);
        };
        for census in self.level(rec.crossing_number)? {
            if !census.supports_at(pos) {
                continue;
            }
            for (mask, (&id, &mirrored)) in census.ids.iter().zip(&census.mirrored).enumerate() {
                if id != class {
                    continue;
                }
                let d = Diagram::from_mask(&census.shadow, mask as u64);
                if mirrored || amphichiral {
                    add(d.mirror());
                }
                if !mirrored {
                    add(d);
                }
            }
        }
        Ok(found.into_values().collect())
    }

    /// Canonical genus bracket, tightened by the minimal diagrams when the
    /// knot is within the ceiling.
    pub fn gc_interval(&self, name: &str) -> Result<GcInterval> {
        let (_, rec) = self.record(name)?;
        let mut gc = record_gc_interval(rec)?;
        if rec.crossing_number <= self.limit() {
            if let Some(g) = self.minimal_diagrams(name)?.iter().map(|d| d.stats().g).min() {
                gc.upper = gc.upper.min(g);
            }
        }
        Ok(gc)
    }

    /// Variation statistics over the complete minimal-diagram set. The
    /// canonical genus comes from the table annotation when present.
    pub fn variation(&self, name: &str) -> Result<VariationStats> {
        let (_, rec) = self.record(name)?;
        let gc = match rec.canonical_genus {
            Some(gc) => GcInterval::exact(gc),
            None => self.gc_interval(name)?,
        };
        variation_stats(&self.minimal_diagrams(name)?, gc, true)
    }

    /// Shadows with `n` crossings supporting `name`.
    pub fn hosts(&self, name: &str, n: usize) -> Result<Vec<HostRecord>> {
        let (pos, _) = self.record(name)?;
        Ok(self
            .level(n)?
            .iter()
            .filter(|c| c.supports_at(pos))
            .map(|c| {
                let st = c.shadow.stats();
                HostRecord {
                    shadow: c.shadow.code(),
                    c: st.c,
                    s: st.s,
                    g: st.g,
                    supported: c.names.clone(),
                }
            })
            .collect())
    }

    /// Gathers verdicts for the `(m, n)` pairs, plus the fertility number,
    /// variation statistics and host shadows when the knot is within the
    /// ceiling.
    pub fn results(&self, name: &str, pairs: &[(usize, usize)]) -> Result<KnotResults> {
        let (_, rec) = self.record(name)?;
        let c = rec.crossing_number;
        let verdicts = pairs
            .iter()
            .map(|&(m, n)| self.is_mn_fertile(name, m, n))
            .collect::<Result<Vec<_>>>()?;
        let mut sizes: BTreeSet<usize> = pairs.iter().map(|p| p.1).filter(|&n| n >= c).collect();
        let within = c <= self.limit();
        if within {
            sizes.insert(c);
        }
        let mut hosts = Vec::new();
        for n in sizes {
            hosts.extend(self.hosts(name, n)?);
        }
        let (fertility_number, variation, minimal) = if within {
            let f = self
                .fertility_number(name, Some(c.min(self.base.complete_through())))?
                .fertility_number;
            let minimal: Vec<DiagramStats> =
                self.minimal_diagrams(name)?.iter().map(Diagram::stats).collect();
            (f, Some(self.variation(name)?), minimal)
        } else {
            (None, None, Vec::new())
        };
        Ok(KnotResults {
            knot: name.to_string(),
            hosts,
            verdicts,
            fertility_number,
            variation,
            minimal,
            settings: self.settings(),
        })
    }
}

type Q = Ratio<i64>;

fn q(x: i64) -> Q {
    Q::from_integer(x)
}

fn show(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// One family of inequalities `left <= right`. When several instances are
/// checked, `left` and `right` are those of the instance closest to failing.
#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub name: String,
    pub left: Q,
    pub right: Q,
    pub holds: bool,
    pub tight: bool,
    pub cases: usize,
    pub violations: usize,
    pub detail: String,
}

impl Serialize for BoundEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundEntry", 8)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("left", &show(&self.left))?;
        st.serialize_field("right", &show(&self.right))?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("tight", &self.tight)?;
        st.serialize_field("cases", &self.cases)?;
        st.serialize_field("violations", &self.violations)?;
        st.serialize_field("detail", &self.detail)?;
        st.end()
    }
}

impl BoundEntry {
    pub fn csv_header() -> Vec<&'static str> {
        vec!["name", "left", "right", "holds", "tight", "cases", "violations", "detail"]
    }

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            show(&self.left),
            show(&self.right),
            self.holds.to_string(),
            self.tight.to_string(),
            self.cases.to_string(),
            self.violations.to_string(),
            self.detail.clone(),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub knot: String,
    pub entries: Vec<BoundEntry>,
    pub settings: SearchSettings,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn violations(&self) -> usize {
        self.entries.iter().map(|e| e.violations).sum()
    }
}

#[derive(Default)]
struct Tally {
    entries: Vec<BoundEntry>,
}

impl Tally {
    fn check(&mut self, name: &str, left: Q, right: Q, detail: impl FnOnce() -> String) {
        let holds = left <= right;
        let Some(e) = self.entries.iter_mut().find(|e| e.name == name) else {
            self.entries.push(BoundEntry {
                name: name.to_string(),
                left,
                right,
                holds,
                tight: left == right,
                cases: 1,
                violations: usize::from(!holds),
                detail: detail(),
            });
            return;
        };
        if left - right > e.left - e.right {
            e.left = left;
            e.right = right;
            e.tight = left == right;
            e.detail = detail();
        }
        e.cases += 1;
        if !holds {
            e.violations += 1;
            e.holds = false;
        }
    }
}

fn annotation(rec: &KnotRecord, key: &str, value: Option<usize>) -> Result<i64> {
    value.map(|v| v as i64).ok_or_else(|| Error::MissingAnnotation {
        knot: rec.name.clone(),
        annotation: key.to_string(),
    })
}

/// Positive crossing count and maximal self-linking number of the
/// `m`-crossing twist knot in the chirality where the former is largest.
pub fn twist_knot_values(m: usize) -> (i64, i64) {
    let m = m as i64;
    if m % 2 == 1 {
        (m, 1)
    } else {
        (m - 2, -3)
    }
}

/// Quantitative Birman-Menasco crossing bound from braid index and genus;
/// `None` for the unknot (`b = 1`).
pub fn birman_menasco_bound(b: i64, g: i64) -> Option<Q> {
    match b {
        2 => Some(q(2 * g + 1)),
        3 => Some(Q::new(5 * (2 * g + 2), 3)),
        b if b >= 4 => Some(q((2 * b - 5) * (2 * g + b - 1))),
        _ => None,
    }
}

/// Checks every applicable inequality on the data gathered for `name`.
/// Exact braid index and (canonical) genus come from table annotations and
/// their absence is an error.
pub fn verify_bounds(name: &str, base: &KnotBase, results: &KnotResults) -> Result<BoundsReport> {
    let rec = base.get(name)?;
    let c = rec.crossing_number as i64;
    let b = annotation(rec, "b", rec.braid_index)?;
    let g = annotation(rec, "g", rec.genus)?;
    let gc = annotation(rec, "gc", rec.canonical_genus)?;
    let degrees = bounds(&rec.homfly)?;
    let gc_lower = invariant_bounds(&rec.homfly)?.gc_lower.max(0) as i64;
    let mut t = Tally::default();

    for host in &results.hosts {
        let (cs, ss, gs) = (host.c as i64, host.s as i64, host.g as i64);
        let at = |other: &str| format!("shadow {} with {}", host.shadow, other);
        for other in &host.supported {
            let o = base.get(other)?;
            let (ob, og, ogc) = (
                annotation(o, "b", o.braid_index)?,
                annotation(o, "g", o.genus)?,
                annotation(o, "gc", o.canonical_genus)?,
            );
            t.check("easy observation: crossing number", q(o.crossing_number as i64), q(cs), || at(other));
            t.check("easy observation: genus below canonical genus", q(og), q(ogc), || at(other));
            t.check("easy observation: canonical genus below shadow genus", q(ogc), q(gs), || at(other));
            t.check("easy observation: braid index", q(ob), q(ss), || at(other));
            t.check("braid-genus chain: lower", q(b), q(ss), || at(other));
            t.check("braid-genus chain: upper", q(ss), q(cs + 1 - 2 * ogc), || at(other));
            if let Some(m) = o.twist {
                let (c_plus, sl_max) = twist_knot_values(m);
                t.check(
                    "self-linking bound for twist knots",
                    q(2 * gs - 1),
                    q(sl_max + 2 * (cs - c_plus)),
                    || at(other),
                );
                t.check(
                    "twist-knot genus inequality",
                    q(2 * gc - 1),
                    q(2 * cs - 2 * m as i64 + 1),
                    || at(other),
                );
            }
        }
    }

    for v in results.verdicts.iter().filter(|v| v.verdict && v.predicate == Predicate::MnFertile) {
        let (m, n) = (v.m.unwrap_or(0) as i64, v.n as i64);
        let at = || format!("(m,n) = ({m},{n})");
        let braid = if m % 2 == 1 { n - m + 2 } else { n - m + 3 };
        t.check("braid index of fertile knots", q(b), q(braid), at);
        if m <= n {
            t.check("canonical genus of fertile knots (HOMFLY lower bound)", q(gc_lower), q(n - m + 1), at);
            t.check("canonical genus of fertile knots", q(gc), q(n - m + 1), at);
            let d = n - m;
            t.check("crossing bound for fertile knots", q(c), q((2 * d + 1) * (3 * d + 4)), at);
            // The closed form above uses the b >= 4 branch even when the
            // braid bound is 3. This entry takes the worst branch allowed.
            if let Some(casewise) = (2..=braid).filter_map(|bb| birman_menasco_bound(bb, d + 1)).max() {
                t.check("crossing bound for fertile knots (case-wise)", q(c), casewise, at);
            }
        }
    }

    if let Some(f) = results.fertility_number {
        let f = f as i64;
        let at = || format!("F = {f}");
        t.check("fertility number genus bound", q(f), q(c + 1 - gc), at);
        t.check(
            "fertility number HOMFLY bound",
            q(f),
            q(c + 1) - Q::new(degrees.max_deg_z as i64, 2),
            at,
        );
        t.check("Morton canonical genus bound", Q::new(degrees.max_deg_z as i64, 2), q(gc), at);
        if let Some(v) = &results.variation {
            if let Some(cgd) = v.cgd() {
                let right = Q::new(2 * c + 4 + v.scv as i64 + 2 * cgd as i64, 3);
                t.check("generalized Hanaki bound", q(f), right, || {
                    format!("F = {f}, scv = {}, cgd = {cgd}", v.scv)
                });
            }
        }
    }

    if let Some(bound) = birman_menasco_bound(b, g) {
        t.check("quantitative Birman-Menasco", q(c), bound, || format!("b = {b}, g = {g}"));
    }

    if let Some(v) = &results.variation {
        let room = c - 2 * gc + 1 - b;
        let at = || format!("c = {c}, gc = {gc}, b = {b}");
        t.check("Seifert circle variation bound", q(v.scv as i64), q(room), at);
        t.check("writhe variation bound", Q::new(v.wv, 2), q(room), at);
        t.check("writhe variation bound (sharp form)", q(v.wv), q(room), at);
        let by_braid = match b {
            2 => Some(q(0)),
            3 => Some(Q::new(2 * c, 5)),
            b if b > 3 => Some(Q::new((2 * b - 6) * c, 2 * b - 5)),
            _ => None,
        };
        if let Some(right) = by_braid {
            t.check("variation room by braid index", q(room), right, at);
        }
    }

    for (i, d) in results.minimal.iter().enumerate() {
        for e in &results.minimal[i + 1..] {
            t.check(
                "generalized Jones",
                q((d.w - e.w).abs()),
                q(d.s as i64 + e.s as i64 - 2 * b),
                || format!("w = {} and {}, s = {} and {}", d.w, e.w, d.s, e.s),
            );
        }
    }

    Ok(BoundsReport { knot: name.to_string(), entries: t.entries, settings: results.settings.clone() })
}
