//! Prime-knot table, mirror-closed HOMFLY fingerprints and identification.
//!
//! Table file format (version line required):
//!
//! ```text
//! # knot-table v1
//! # complete-through 8
//! 3_1 3 dt:4,6,2 g=1 gc=1 b=2 alt=1 twist=3
//! ```
//!
//! One record per line: name, crossing number, reference code (`dt:`, `pd:`
//! or `gauss:`, written without spaces) and optional `key=value`
//! annotations. `complete-through N` declares that every prime knot with at
//! most `N` crossings is present.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::diagram::{parse_diagram, Diagram};
use crate::error::{Error, Result};
use crate::polynomial::{invariant_bounds, HomflyEngine, Laurent2};

pub const TABLE_HEADER: &str = "# knot-table v1";

/// The table shipped with the crate: prime knots through eight crossings.
pub const STANDARD_TABLE: &str = include_str!("../data/knots8.tbl");

/// Mirror-closed fingerprint: the unordered pair `{P, P*}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    low: Laurent2,
    high: Laurent2,
}

impl Fingerprint {
    pub fn of(p: &Laurent2) -> Self {
        let m = p.mirror();
        if *p <= m {
            Fingerprint { low: p.clone(), high: m }
        } else {
            Fingerprint { low: m, high: p.clone() }
        }
    }

    pub fn pair(&self) -> (&Laurent2, &Laurent2) {
        (&self.low, &self.high)
    }

    /// First 16 hex digits of SHA-256 over the canonical triple text.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.low.to_triples().as_bytes());
        h.update(b"|");
        h.update(self.high.to_triples().as_bytes());
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.low == self.high {
            write!(f, "{{{}}}", self.low)
        } else {
            write!(f, "{{{}, {}}}", self.low, self.high)
        }
    }
}

#[derive(Clone, Debug)]
pub struct KnotRecord {
    pub name: String,
    pub crossing_number: usize,
    pub code: String,
    pub diagram: Diagram,
    /// HOMFLY polynomial of the reference diagram (its chirality is the
    /// reference chirality).
    pub homfly: Laurent2,
    pub genus: Option<usize>,
    pub canonical_genus: Option<usize>,
    pub braid_index: Option<usize>,
    pub alternating: Option<bool>,
    /// `Some(m)` for the `m`-crossing twist knot.
    pub twist: Option<usize>,
}

impl KnotRecord {
    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint::of(&self.homfly)
    }

    pub fn is_amphichiral_by_homfly(&self) -> bool {
        self.homfly == self.homfly.mirror()
    }
}

/// Which member of a mirror pair a polynomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chirality {
    Reference,
    Mirror,
}

#[derive(Debug)]
pub struct KnotBase {
    version: String,
    complete_through: usize,
    records: Vec<KnotRecord>,
    by_name: HashMap<String, usize>,
    index: HashMap<Fingerprint, Vec<usize>>,
    engine: HomflyEngine,
}

/// Identification result, serialized as the JSON identification report.
#[derive(Clone, Debug, Serialize)]
pub struct IdentifyReport {
    pub input: String,
    pub fingerprint_hash: String,
    pub matches: Vec<String>,
    pub collisions: Vec<Vec<String>>,
}

impl KnotBase {
    /// Parses a table with the default HOMFLY ceiling.
    pub fn load_table(text: &str) -> Result<KnotBase> {
        Self::load_table_with(text, HomflyEngine::default())
    }

    pub fn load_table_with(text: &str, engine: HomflyEngine) -> Result<KnotBase> {
        let mut lines = text.lines().enumerate();
        let version = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((_, l)) if l.trim() == TABLE_HEADER => break "v1".to_string(),
                Some((i, l)) => {
                    return Err(Error::ParseError {
                        line: i + 1,
                        message: format!("expected {TABLE_HEADER:?}, found {l:?}"),
                    })
                }
                None => {
                    return Err(Error::ParseError { line: 1, message: "empty table".into() })
                }
            }
        };
        let mut complete_through = None;
        let mut records = Vec::new();
        let mut by_name = HashMap::new();
        for (i, raw) in lines {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("complete-through") {
                    complete_through = Some(n.trim().parse::<usize>().map_err(|e| {
                        Error::ParseError { line: lineno, message: format!("complete-through: {e}") }
                    })?);
                }
                continue;
            }
            let record = parse_record(line, &engine)
                .map_err(|e| Error::ParseError { line: lineno, message: e.to_string() })?;
            if by_name.insert(record.name.clone(), records.len()).is_some() {
                return Err(Error::DuplicateName(record.name));
            }
            records.push(record);
        }
        let max_c = records.iter().map(|r| r.crossing_number).max().unwrap_or(0);
        let complete_through = complete_through.unwrap_or(max_c);
        let mut index: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        for (i, r) in records.iter().enumerate() {
            index.entry(r.fingerprint()).or_default().push(i);
        }
        Ok(KnotBase { version, complete_through, records, by_name, index, engine })
    }

    pub fn load_table_file(path: &Path) -> Result<KnotBase> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::ParseError {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::load_table(&text)
    }

    /// The shipped table.
    pub fn standard() -> KnotBase {
        Self::load_table(STANDARD_TABLE).expect("shipped table parses")
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn complete_through(&self) -> usize {
        self.complete_through
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn engine(&self) -> &HomflyEngine {
        &self.engine
    }

    pub fn get(&self, name: &str) -> Result<&KnotRecord> {
        self.by_name
            .get(name)
            .map(|&i| &self.records[i])
            .ok_or_else(|| Error::UnknownKnot(name.to_string()))
    }

    /// Position of a record in table order.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Sets of names sharing one fingerprint.
    pub fn collisions(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .index
            .values()
            .filter(|v| v.len() > 1)
            .map(|v| v.iter().map(|&i| self.records[i].name.clone()).collect())
            .collect();
        out.sort();
        out
    }

    /// Table names whose fingerprint equals that of `p`, in table order.
    /// Record positions matching the fingerprint of `p`.
    pub fn lookup(&self, p: &Laurent2) -> &[usize] {
        self.index.get(&Fingerprint::of(p)).map_or(&[], Vec::as_slice)
    }

    pub fn identify_polynomial(&self, p: &Laurent2) -> Vec<&KnotRecord> {
        self.index
            .get(&Fingerprint::of(p))
            .map(|v| v.iter().map(|&i| &self.records[i]).collect())
            .unwrap_or_default()
    }

    /// Identifies a knot diagram up to mirror image. An empty result means
    /// the knot is not in the table.
    pub fn identify(&self, d: &Diagram) -> Result<Vec<String>> {
        let p = self.engine.homfly_knot(d)?;
        Ok(self.identify_polynomial(&p).into_iter().map(|r| r.name.clone()).collect())
    }

    pub fn identify_report(&self, input: &str, d: &Diagram) -> Result<IdentifyReport> {
        let p = self.engine.homfly_knot(d)?;
        let fp = Fingerprint::of(&p);
        let matches: Vec<String> =
            self.identify_polynomial(&p).into_iter().map(|r| r.name.clone()).collect();
        let collisions = if matches.len() > 1 { vec![matches.clone()] } else { Vec::new() };
        Ok(IdentifyReport { input: input.to_string(), fingerprint_hash: fp.hash(), matches, collisions })
    }

    /// Whether `p` is the reference chirality of `name` or its mirror.
    /// Amphichiral (by HOMFLY) knots always report `Reference`.
    pub fn chirality(&self, name: &str, p: &Laurent2) -> Result<Option<Chirality>> {
        let r = self.get(name)?;
        Ok(if *p == r.homfly {
            Some(Chirality::Reference)
        } else if *p == r.homfly.mirror() {
            Some(Chirality::Mirror)
        } else {
            None
        })
    }

    /// Prime knots with `c(K) <= max_c`, in table order.
    pub fn knots_through(&self, max_c: usize) -> impl Iterator<Item = &KnotRecord> {
        self.records.iter().filter(move |r| r.crossing_number <= max_c)
    }

    pub fn twist_knot(&self, m: usize) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.twist == Some(m))
    }
}

fn parse_record(line: &str, engine: &HomflyEngine) -> Result<KnotRecord> {
    let mut fields = line.split_whitespace();
    let name = fields.next().ok_or_else(|| Error::MalformedCode("missing name".into()))?;
    let c: usize = fields
        .next()
        .ok_or_else(|| Error::MalformedCode("missing crossing number".into()))?
        .parse()
        .map_err(|e| Error::MalformedCode(format!("crossing number: {e}")))?;
    let code = fields.next().ok_or_else(|| Error::MalformedCode("missing code".into()))?;
    let (kind, body) = code
        .split_once(':')
        .ok_or_else(|| Error::MalformedCode(format!("code {code:?} lacks a dt:/pd:/gauss: prefix")))?;
    let diagram = match kind {
        "dt" | "pd" | "gauss" => parse_diagram(&format!("{kind}:{}", body.replace(',', " ")))?,
        other => return Err(Error::MalformedCode(format!("unknown code kind {other:?}"))),
    };
    if diagram.crossing_count() != c {
        return Err(Error::MalformedCode(format!(
            "{name}: reference diagram has {} crossings, table says {c}",
            diagram.crossing_count()
        )));
    }
    let mut record = KnotRecord {
        name: name.to_string(),
        crossing_number: c,
        code: code.to_string(),
        homfly: engine.homfly_knot(&diagram)?,
        diagram,
        genus: None,
        canonical_genus: None,
        braid_index: None,
        alternating: None,
        twist: None,
    };
    for field in fields {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::MalformedCode(format!("annotation {field:?} is not key=value")))?;
        let number = || {
            value
                .parse::<usize>()
                .map_err(|e| Error::MalformedCode(format!("annotation {key}: {e}")))
        };
        match key {
            "g" => record.genus = Some(number()?),
            "gc" => record.canonical_genus = Some(number()?),
            "b" => record.braid_index = Some(number()?),
            "alt" => record.alternating = Some(number()? != 0),
            "twist" => record.twist = Some(number()?),
            other => return Err(Error::MalformedCode(format!("unknown annotation {other:?}"))),
        }
    }
    if let (Some(g), Some(gc)) = (record.genus, record.canonical_genus) {
        if g > gc {
            return Err(Error::MalformedCode(format!("{name}: g = {g} exceeds gc = {gc}")));
        }
    }
    if let Some(b) = record.braid_index {
        let lower = invariant_bounds(&record.homfly)?.braid_lower;
        if (b as i32) < lower {
            return Err(Error::MalformedCode(format!(
                "{name}: b = {b} is below the HOMFLY braid bound {lower}"
            )));
        }
    }
    Ok(record)
}

/// Identifies a diagram against a table; see [`KnotBase::identify`].
pub fn identify(d: &Diagram, base: &KnotBase) -> Result<Vec<String>> {
    base.identify(d)
}
