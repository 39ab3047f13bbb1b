mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knotfert::codes::{enumerate_shadows_with, parse_shadow, EnumerationOptions};
use knotfert::diagram::parse_diagram;
use knotfert::fertility::{
    support_census, verify_bounds, Atlas, BoundEntry, BoundsReport, FertilityOptions,
    FertilityReport, GcInterval, Predicate, SupportCensus, VariationStats,
};
use knotfert::knotbase::{IdentifyReport, STANDARD_TABLE};
use knotfert::polynomial::{bounds, invariant_bounds, DegreeBounds, InvariantBounds};
use knotfert::{fertility, DiagramStats, Error, HomflyEngine, KnotBase, ShadowStats};
use rayon::prelude::*;
use serde::Serialize;

use output::{error_json, Format, Report, RunConfig};

const HOMFLY_CEILING: usize = 12;
const SWEEP_CEILING: usize = fertility::DEFAULT_CEILING;

#[derive(Parser)]
#[command(name = "knotfert", version, about = "Knot shadows, HOMFLY polynomials and fertility search")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Knot table file. The built-in table is used when absent.
    #[arg(long, global = true, env = "KNOTFERT_TABLE", value_name = "FILE")]
    table: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads. Defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Crossing ceiling for the command (12 for polynomial work, 7 for
    /// sweeps). Raising it prints a cost estimate.
    #[arg(long, global = true)]
    ceiling: Option<usize>,
    /// Skip shadows with nugatory crossings.
    #[arg(long, global = true)]
    irreducible: bool,
    /// Treat shadows related by a reflection of the sphere as equal.
    #[arg(long, global = true)]
    reflection_quotient: bool,
    /// Do not count the unknot as a target knot.
    #[arg(long, global = true)]
    exclude_unknot: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, short, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct Inputs {
    /// Input file with one code per line. `#` starts a comment line.
    #[arg(long = "in", value_name = "FILE")]
    files: Vec<PathBuf>,
    /// A code given on the command line.
    #[arg(long)]
    code: Vec<String>,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct Knots {
    /// Table name such as 5_2.
    #[arg(long, conflicts_with = "all")]
    knot: Vec<String>,
    /// Every table knot up to --max-c crossings.
    #[arg(long)]
    all: bool,
    /// Largest crossing number for --all. Defaults to the ceiling.
    #[arg(long, requires = "all")]
    max_c: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List one shadow per class with n crossings.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Seifert circles, genus, writhe and self-linking of shadows or diagrams.
    Stats(Inputs),
    /// HOMFLY polynomial of knot diagrams.
    Homfly(Inputs),
    /// Look diagrams up in the knot table.
    Identify(Inputs),
    /// Knots supported by each shadow.
    Census(Inputs),
    /// Fertility verdicts.
    Fertile(Knots),
    /// (m,n)-fertility verdicts.
    Mnfertile {
        #[command(flatten)]
        knots: Knots,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Fertility numbers.
    Fnumber {
        #[command(flatten)]
        knots: Knots,
        /// Largest target crossing number to test.
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// Variation of Seifert circles, writhe and genus over minimal diagrams.
    Variation(Knots),
    /// Check every inequality on computed data. Exits 1 if one fails.
    Verify(Knots),
    /// Consistency report for the knot table.
    TableCheck,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Plain,
    Polynomial,
    Sweep,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::Stats(_) => "stats",
            Command::Homfly(_) => "homfly",
            Command::Identify(_) => "identify",
            Command::Census(_) => "census",
            Command::Fertile(_) => "fertile",
            Command::Mnfertile { .. } => "mnfertile",
            Command::Fnumber { .. } => "fnumber",
            Command::Variation(_) => "variation",
            Command::Verify(_) => "verify",
            Command::TableCheck => "table-check",
        }
    }

    fn kind(&self) -> Kind {
        match self {
            Command::Stats(_) => Kind::Plain,
            Command::Homfly(_) | Command::Identify(_) | Command::Census(_) | Command::TableCheck => {
                Kind::Polynomial
            }
            _ => Kind::Sweep,
        }
    }

    fn inputs(&self) -> Vec<String> {
        let files = |i: &Inputs| -> Vec<String> {
            i.files.iter().map(|p| p.display().to_string()).chain(i.code.iter().cloned()).collect()
        };
        let knots = |k: &Knots| -> Vec<String> {
            if k.all {
                vec![format!("--all{}", k.max_c.map(|c| format!(" --max-c {c}")).unwrap_or_default())]
            } else {
                k.knot.clone()
            }
        };
        match self {
            Command::Enumerate { n } => vec![format!("n={n}")],
            Command::Stats(i) | Command::Homfly(i) | Command::Identify(i) | Command::Census(i) => files(i),
            Command::Fertile(k) | Command::Variation(k) | Command::Verify(k) => knots(k),
            Command::Mnfertile { knots: k, m, n } => {
                let mut v = knots(k);
                v.push(format!("m={m}"));
                v.push(format!("n={n}"));
                v
            }
            Command::Fnumber { knots: k, m_max } => {
                let mut v = knots(k);
                v.extend(m_max.map(|m| format!("m_max={m}")));
                v
            }
            Command::TableCheck => Vec::new(),
        }
    }
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn name(&self) -> &'static str {
        match self {
            Failure::Domain(e) => e.name(),
            Failure::Io(_) => "IoError",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Domain(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

/// A finished report, possibly flagging a failed check (exit status 1).
struct Outcome {
    report: Report,
    failed: Option<(&'static str, String)>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, failed: None }
    }
}

struct Ctx<'a> {
    global: &'a Global,
    ceiling: usize,
}

impl Ctx<'_> {
    fn base(&self) -> Result<KnotBase, Failure> {
        let text = match &self.global.table {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
            None => STANDARD_TABLE.to_string(),
        };
        let engine = HomflyEngine::new(self.ceiling.max(HOMFLY_CEILING));
        Ok(KnotBase::load_table_with(&text, engine)?)
    }

    fn fertility_options(&self) -> FertilityOptions {
        FertilityOptions {
            ceiling: self.ceiling,
            include_unknot: !self.global.exclude_unknot,
            allow_reducible: !self.global.irreducible,
            reflection_quotient: self.global.reflection_quotient,
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let g = &cli.global;
    let jobs = g
        .jobs
        .map(|j| j as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let kind = cli.command.kind();
    let default_ceiling = match kind {
        Kind::Sweep => SWEEP_CEILING,
        _ => HOMFLY_CEILING,
    };
    let ceiling = g.ceiling.unwrap_or(default_ceiling);
    if ceiling > default_ceiling {
        warn_cost(kind, ceiling, default_ceiling);
    }
    let config = RunConfig {
        command: cli.command.name().to_string(),
        argv,
        inputs: cli.command.inputs(),
        ceiling: (kind != Kind::Plain).then_some(ceiling),
        jobs,
        table: g.table.as_ref().map_or("builtin".to_string(), |p| p.display().to_string()),
        format: g.format,
        allow_reducible: !g.irreducible,
        reflection_quotient: g.reflection_quotient,
        include_unknot: !g.exclude_unknot,
    };
    let ctx = Ctx { global: g, ceiling };

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => return fail(&Failure::Io(format!("worker pool: {e}"))),
    };
    let outcome = match pool.install(|| run(&cli.command, &ctx)) {
        Ok(outcome) => outcome,
        Err(f) => return fail(&f),
    };
    let bytes = outcome.report.render(&config);
    let written = match &g.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        return fail(&Failure::Io(e));
    }
    match outcome.failed {
        None => ExitCode::SUCCESS,
        Some((name, message)) => {
            eprintln!("knotfert: {message}");
            eprintln!("{}", error_json(name, &message));
            ExitCode::from(1)
        }
    }
}

fn fail(f: &Failure) -> ExitCode {
    println!("{}", error_json(f.name(), &f.message()));
    eprintln!("knotfert: {}", f.message());
    ExitCode::from(1)
}

fn warn_cost(kind: Kind, ceiling: usize, default: usize) {
    let estimate = match kind {
        Kind::Sweep => {
            // Shadow counts on the sphere grow by roughly a factor of 7 per crossing.
            const KNOWN: [f64; 8] = [1.0, 1.0, 2.0, 6.0, 21.0, 99.0, 588.0, 3829.0];
            let shadows = |n: usize| KNOWN.get(n).copied().unwrap_or(3829.0 * 7f64.powi(n as i32 - 7));
            let total: f64 = (0..=ceiling).map(|n| shadows(n) * 2f64.powi(n as i32 - 1)).sum();
            format!("a full sweep evaluates about {total:.1e} crossing assignments")
        }
        _ => format!("one polynomial may take up to {:.1e} skein steps", 2f64.powi(ceiling as i32)),
    };
    eprintln!("warning: crossing ceiling {ceiling} is above the default {default}; {estimate}");
}

fn run(command: &Command, ctx: &Ctx) -> Result<Outcome, Failure> {
    match command {
        Command::Enumerate { n } => enumerate(*n, ctx).map(Outcome::from),
        Command::Stats(i) => stats(&read_inputs(i)?).map(Outcome::from),
        Command::Homfly(i) => homfly(&read_inputs(i)?, ctx).map(Outcome::from),
        Command::Identify(i) => identify(&read_inputs(i)?, ctx).map(Outcome::from),
        Command::Census(i) => census(&read_inputs(i)?, ctx).map(Outcome::from),
        Command::Fertile(k) => {
            let base = ctx.base()?;
            let atlas = Atlas::new(&base, ctx.fertility_options());
            let names = knot_names(k, &base, ctx)?;
            fertility_reports(&names, |name| atlas.is_fertile(name)).map(Outcome::from)
        }
        Command::Mnfertile { knots, m, n } => {
            let base = ctx.base()?;
            let atlas = Atlas::new(&base, ctx.fertility_options());
            let names = knot_names(knots, &base, ctx)?;
            fertility_reports(&names, |name| atlas.is_mn_fertile(name, *m, *n)).map(Outcome::from)
        }
        Command::Fnumber { knots, m_max } => {
            let base = ctx.base()?;
            let atlas = Atlas::new(&base, ctx.fertility_options());
            let names = knot_names(knots, &base, ctx)?;
            fertility_reports(&names, |name| atlas.fertility_number(name, *m_max)).map(Outcome::from)
        }
        Command::Variation(k) => {
            let base = ctx.base()?;
            let atlas = Atlas::new(&base, ctx.fertility_options());
            let names = knot_names(k, &base, ctx)?;
            variation(&names, &atlas).map(Outcome::from)
        }
        Command::Verify(k) => {
            let base = ctx.base()?;
            let atlas = Atlas::new(&base, ctx.fertility_options());
            let names = knot_names(k, &base, ctx)?;
            verify(&names, &atlas, ctx.ceiling)
        }
        Command::TableCheck => table_check(&ctx.base()?),
    }
}

struct Entry {
    source: String,
    text: String,
}

fn read_inputs(inputs: &Inputs) -> Result<Vec<Entry>, Failure> {
    let mut entries = Vec::new();
    for path in &inputs.files {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let before = entries.len();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            entries.push(Entry { source: format!("{}:{}", path.display(), i + 1), text: line.to_string() });
        }
        // A file without codes holds the empty code, i.e. the round circle.
        if entries.len() == before {
            entries.push(Entry { source: path.display().to_string(), text: String::new() });
        }
    }
    for code in &inputs.code {
        entries.push(Entry { source: "--code".to_string(), text: code.clone() });
    }
    Ok(entries)
}

/// Maps entries in parallel and keeps input order. The first failure in
/// input order wins, so errors are deterministic too.
fn par_map<T: Send, F>(entries: &[Entry], f: F) -> Result<Vec<T>, Failure>
where
    F: Fn(&Entry) -> Result<T, Failure> + Sync,
{
    let results: Vec<Result<T, Failure>> = entries.par_iter().map(&f).collect();
    results.into_iter().collect()
}

fn knot_names(k: &Knots, base: &KnotBase, ctx: &Ctx) -> Result<Vec<String>, Failure> {
    if k.all {
        let max_c = k.max_c.unwrap_or(ctx.ceiling);
        return Ok(base.knots_through(max_c).map(|r| r.name.clone()).collect());
    }
    for name in &k.knot {
        base.get(name)?;
    }
    Ok(k.knot.clone())
}

#[derive(Serialize)]
struct ShadowRow {
    code: String,
    letters: String,
    key: String,
    reduced: bool,
    stats: ShadowStats,
}

#[derive(Serialize)]
struct Enumeration {
    n: usize,
    count: usize,
    shadows: Vec<ShadowRow>,
}

fn enumerate(n: usize, ctx: &Ctx) -> Result<Report, Failure> {
    if n > ctx.ceiling {
        return Err(Error::ResourceLimit { crossings: n, limit: ctx.ceiling }.into());
    }
    let opts = EnumerationOptions {
        allow_reducible: !ctx.global.irreducible,
        reflection_quotient: ctx.global.reflection_quotient,
    };
    let shadows: Vec<ShadowRow> = enumerate_shadows_with(n, opts)
        .iter()
        .map(|s| ShadowRow {
            code: s.code(),
            letters: s.letter_code(),
            key: s.canonical_key(opts.reflection_quotient),
            reduced: s.is_reduced(),
            stats: s.stats(),
        })
        .collect();
    let result = Enumeration { n, count: shadows.len(), shadows };
    let mut report = Report::new(&result).header(&["code", "letters", "c", "s", "g", "reduced"]);
    for s in &result.shadows {
        report.row(vec![
            s.code.clone(),
            s.letters.clone(),
            s.stats.c.to_string(),
            s.stats.s.to_string(),
            s.stats.g.to_string(),
            s.reduced.to_string(),
        ]);
        report.line(&s.letters);
    }
    report.line(format!("# {} shadows", result.count));
    Ok(report)
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum StatsRow {
    Shadow { source: String, input: String, code: String, reduced: bool, stats: ShadowStats },
    Diagram { source: String, input: String, code: String, stats: DiagramStats },
}

/// Over/under information marks a diagram; anything else is a shadow.
fn looks_like_diagram(text: &str) -> bool {
    text.contains(['/', ':', '[', '-'])
}

fn stats(entries: &[Entry]) -> Result<Report, Failure> {
    let rows = par_map(entries, |e| {
        let (source, input) = (e.source.clone(), e.text.clone());
        Ok(if looks_like_diagram(&e.text) {
            let d = parse_diagram(&e.text)?;
            StatsRow::Diagram { source, input, code: d.code(), stats: d.stats() }
        } else {
            let s = parse_shadow(&e.text)?;
            StatsRow::Shadow { source, input, code: s.code(), reduced: s.is_reduced(), stats: s.stats() }
        })
    })?;
    let mut report = Report::new(&rows)
        .header(&["source", "kind", "code", "c", "s", "g", "w", "sl", "c_plus", "c_minus"]);
    for row in &rows {
        match row {
            StatsRow::Shadow { source, input, code, stats: st, .. } => {
                report.row(vec![
                    source.clone(),
                    "shadow".into(),
                    code.clone(),
                    st.c.to_string(),
                    st.s.to_string(),
                    st.g.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
                report.line(format!("{input}: c={} s={} g={}", st.c, st.s, st.g));
            }
            StatsRow::Diagram { source, input, code, stats: st } => {
                report.row(vec![
                    source.clone(),
                    "diagram".into(),
                    code.clone(),
                    st.c.to_string(),
                    st.s.to_string(),
                    st.g.to_string(),
                    st.w.to_string(),
                    st.sl.to_string(),
                    st.c_plus.to_string(),
                    st.c_minus.to_string(),
                ]);
                report.line(format!(
                    "{input}: c={} s={} g={} w={} sl={} c+={} c-={}",
                    st.c, st.s, st.g, st.w, st.sl, st.c_plus, st.c_minus
                ));
            }
        }
    }
    Ok(report)
}

#[derive(Serialize)]
struct HomflyRow {
    source: String,
    input: String,
    homfly: String,
    triples: String,
    determinant: Option<u64>,
    degrees: DegreeBounds,
    bounds: InvariantBounds,
}

fn homfly(entries: &[Entry], ctx: &Ctx) -> Result<Report, Failure> {
    let engine = HomflyEngine::new(ctx.ceiling);
    let rows = par_map(entries, |e| {
        let d = parse_diagram(&e.text)?;
        let p = engine.homfly_knot(&d)?;
        Ok(HomflyRow {
            source: e.source.clone(),
            input: e.text.clone(),
            homfly: p.to_string(),
            triples: p.to_triples(),
            determinant: p.determinant(),
            degrees: bounds(&p)?,
            bounds: invariant_bounds(&p)?,
        })
    })?;
    let mut report = Report::new(&rows).header(&["source", "input", "homfly", "determinant"]);
    for r in &rows {
        let det = r.determinant.map(|d| d.to_string()).unwrap_or_default();
        report.row(vec![r.source.clone(), r.input.clone(), r.homfly.clone(), det]);
        report.line(&r.homfly);
    }
    Ok(report)
}

#[derive(Serialize)]
struct IdentifyRow {
    source: String,
    #[serde(flatten)]
    report: IdentifyReport,
}

fn identify(entries: &[Entry], ctx: &Ctx) -> Result<Report, Failure> {
    let base = ctx.base()?;
    let rows = par_map(entries, |e| {
        let d = parse_diagram(&e.text)?;
        Ok(IdentifyRow { source: e.source.clone(), report: base.identify_report(&e.text, &d)? })
    })?;
    let mut report = Report::new(&rows).header(&["source", "input", "matches", "fingerprint"]);
    for r in &rows {
        let matches = r.report.matches.join(" ");
        report.row(vec![
            r.source.clone(),
            r.report.input.clone(),
            matches.clone(),
            r.report.fingerprint_hash.clone(),
        ]);
        report.line(if matches.is_empty() {
            format!("{}: not in table (fingerprint {})", r.report.input, r.report.fingerprint_hash)
        } else {
            format!("{}: {matches}", r.report.input)
        });
    }
    Ok(report)
}

#[derive(Serialize)]
struct CensusRow {
    source: String,
    input: String,
    assignments_examined: usize,
    census: SupportCensus,
}

fn census(entries: &[Entry], ctx: &Ctx) -> Result<Report, Failure> {
    let base = ctx.base()?;
    let rows = par_map(entries, |e| {
        let shadow = parse_shadow(&e.text)?;
        if shadow.crossing_count() > ctx.ceiling {
            return Err(Error::ResourceLimit { crossings: shadow.crossing_count(), limit: ctx.ceiling }.into());
        }
        let census = support_census(&shadow, &base)?;
        Ok(CensusRow {
            source: e.source.clone(),
            input: e.text.clone(),
            assignments_examined: census.assignments_examined(),
            census,
        })
    })?;
    let mut report = Report::new(&rows).header(&["source", "shadow", "knot", "assignment"]);
    for r in &rows {
        let shadow = r.census.shadow();
        let c = shadow.crossing_count();
        for name in r.census.names() {
            let mask = r.census.witness(name).expect("supported knots have witnesses");
            report.row(vec![r.source.clone(), shadow.code(), name.clone(), fertility::bits(mask, c)]);
        }
        let mut line = format!("{}: {}", shadow.letter_code(), r.census.names().join(" "));
        if !r.census.unidentified().is_empty() {
            line.push_str(&format!(" (+{} not in table)", r.census.unidentified().len()));
        }
        report.line(line);
    }
    Ok(report)
}

fn fertility_reports<F>(names: &[String], f: F) -> Result<Report, Failure>
where
    F: Fn(&str) -> knotfert::Result<FertilityReport> + Sync,
{
    let results: Vec<knotfert::Result<FertilityReport>> = names.par_iter().map(|n| f(n)).collect();
    let reports = results.into_iter().collect::<knotfert::Result<Vec<_>>>()?;
    let mut report = Report::new(&reports).header(&FertilityReport::csv_header());
    for r in &reports {
        report.row(r.csv_row());
        let obstruction = r.obstruction.as_ref().map(|o| format!(", obstruction {o}")).unwrap_or_default();
        report.line(match r.predicate {
            Predicate::Fertile => format!("{}: fertile = {}{obstruction}", r.knot, r.verdict),
            Predicate::MnFertile => format!(
                "{}: ({},{})-fertile = {}{obstruction}",
                r.knot,
                r.m.unwrap_or_default(),
                r.n,
                r.verdict
            ),
            Predicate::FertilityNumber => match r.fertility_number {
                Some(f) => format!("{}: F = {f}{obstruction}", r.knot),
                None => format!("{}: F undetermined{obstruction}", r.knot),
            },
        });
    }
    Ok(report)
}

#[derive(Serialize)]
struct MinimalDiagram {
    code: String,
    stats: DiagramStats,
}

#[derive(Serialize)]
struct VariationRow {
    knot: String,
    canonical_genus: GcInterval,
    variation: VariationStats,
    minimal_diagrams: Vec<MinimalDiagram>,
}

fn variation(names: &[String], atlas: &Atlas) -> Result<Report, Failure> {
    let results: Vec<knotfert::Result<VariationRow>> = names
        .par_iter()
        .map(|name| {
            let diagrams = atlas.minimal_diagrams(name)?;
            Ok(VariationRow {
                knot: name.clone(),
                canonical_genus: atlas.gc_interval(name)?,
                variation: atlas.variation(name)?,
                minimal_diagrams: diagrams
                    .iter()
                    .map(|d| MinimalDiagram { code: d.code(), stats: d.stats() })
                    .collect(),
            })
        })
        .collect();
    let rows = results.into_iter().collect::<knotfert::Result<Vec<_>>>()?;
    let mut report = Report::new(&rows).header(&[
        "knot", "diagrams", "scv", "wv", "min_s", "max_s", "min_w", "max_w", "cgd_lower", "cgd_upper",
        "complete",
    ]);
    for r in &rows {
        let v = &r.variation;
        report.row(
            [
                r.knot.clone(),
                v.diagrams.to_string(),
                v.scv.to_string(),
                v.wv.to_string(),
                v.min_s.to_string(),
                v.max_s.to_string(),
                v.min_w.to_string(),
                v.max_w.to_string(),
                v.cgd_lower.to_string(),
                v.cgd_upper.to_string(),
                v.complete.to_string(),
            ]
            .to_vec(),
        );
        let cgd = match v.cgd() {
            Some(x) => x.to_string(),
            None => format!("[{}, {}]", v.cgd_lower, v.cgd_upper),
        };
        report.line(format!("{}: {} minimal diagrams, scv={} wv={} cgd={cgd}", r.knot, v.diagrams, v.scv, v.wv));
        for d in &r.minimal_diagrams {
            report.line(format!("  {}  s={} w={}", d.code, d.stats.s, d.stats.w));
        }
    }
    Ok(report)
}

#[derive(Serialize)]
struct Verification {
    all_hold: bool,
    violations: usize,
    reports: Vec<BoundsReport>,
}

/// Pairs (m, n) examined for a knot with `c` crossings: every host size
/// from `c` up to the ceiling, every target size the table covers.
fn verify_pairs(c: usize, ceiling: usize, complete_through: usize) -> Vec<(usize, usize)> {
    (c..=ceiling).flat_map(|n| (0..=n.min(complete_through)).map(move |m| (m, n))).collect()
}

fn verify(names: &[String], atlas: &Atlas, ceiling: usize) -> Result<Outcome, Failure> {
    let base = atlas.base();
    let results: Vec<knotfert::Result<BoundsReport>> = names
        .par_iter()
        .map(|name| {
            let c = base.get(name)?.crossing_number;
            let pairs = verify_pairs(c, ceiling, base.complete_through());
            verify_bounds(name, base, &atlas.results(name, &pairs)?)
        })
        .collect();
    let reports = results.into_iter().collect::<knotfert::Result<Vec<_>>>()?;
    let violations: usize = reports.iter().map(|r| r.entries.iter().filter(|e| !e.holds).count()).sum();
    let failing: Vec<String> = reports
        .iter()
        .flat_map(|r| r.entries.iter().filter(|e| !e.holds).map(move |e| format!("{} {}", r.knot, e.name)))
        .collect();
    let result = Verification { all_hold: violations == 0, violations, reports };

    let mut header = vec!["knot"];
    header.extend(BoundEntry::csv_header());
    let mut report = Report::new(&result).header(&header);
    for r in &result.reports {
        report.line(r.knot.clone());
        for e in &r.entries {
            let mut row = vec![r.knot.clone()];
            row.extend(e.csv_row());
            report.row(row);
            report.line(format!(
                "  [{}] {}: {} <= {}{} ({} cases, {} violations) {}",
                if e.holds { "ok" } else { "FAIL" },
                e.name,
                e.left,
                e.right,
                if e.tight { ", tight" } else { "" },
                e.cases,
                e.violations,
                e.detail
            ));
        }
    }
    report.line(format!("# {violations} failing entries"));
    let failed = (violations > 0)
        .then(|| ("BoundViolated", format!("{violations} entries do not hold: {}", failing.join("; "))));
    Ok(Outcome { report, failed })
}

#[derive(Serialize)]
struct TableRow {
    name: String,
    crossing_number: usize,
    determinant: Option<u64>,
    genus: Option<usize>,
    canonical_genus: Option<usize>,
    braid_index: Option<usize>,
    bounds: InvariantBounds,
    fingerprint: String,
    issues: Vec<String>,
}

#[derive(Serialize)]
struct TableCheck {
    version: String,
    complete_through: usize,
    records: usize,
    collisions: Vec<Vec<String>>,
    issues: usize,
    knots: Vec<TableRow>,
}

fn table_check(base: &KnotBase) -> Result<Outcome, Failure> {
    let mut knots = Vec::new();
    for r in base.records() {
        let b = invariant_bounds(&r.homfly)?;
        let degrees = bounds(&r.homfly)?;
        let mut issues = Vec::new();
        if let Some(gc) = r.canonical_genus {
            if (gc as i32) < b.gc_lower {
                issues.push(format!("canonical genus {gc} below the polynomial bound {}", b.gc_lower));
            }
            if gc > r.diagram.stats().g {
                issues.push(format!("canonical genus {gc} above the genus of the stored diagram"));
            }
        }
        if let (Some(g), Some(true)) = (r.genus, r.alternating) {
            if degrees.max_deg_z != 2 * g as i32 {
                issues.push(format!("alternating knot with genus {g} but z-degree {}", degrees.max_deg_z));
            }
        }
        if let Some(braid) = r.braid_index {
            if (braid as i32) < b.braid_lower {
                issues.push(format!("braid index {braid} below the polynomial bound {}", b.braid_lower));
            }
            if braid > r.diagram.stats().s {
                issues.push(format!("braid index {braid} above the Seifert circles of the stored diagram"));
            }
        }
        if base.identify(&r.diagram)? != [r.name.clone()] {
            issues.push("stored diagram does not identify back to its name".to_string());
        }
        knots.push(TableRow {
            name: r.name.clone(),
            crossing_number: r.crossing_number,
            determinant: r.homfly.determinant(),
            genus: r.genus,
            canonical_genus: r.canonical_genus,
            braid_index: r.braid_index,
            bounds: b,
            fingerprint: r.fingerprint().hash(),
            issues,
        });
    }
    let issues = knots.iter().map(|k| k.issues.len()).sum();
    let result = TableCheck {
        version: base.version().to_string(),
        complete_through: base.complete_through(),
        records: base.len(),
        collisions: base.collisions(),
        issues,
        knots,
    };
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut report = Report::new(&result)
        .header(&["name", "c", "determinant", "g", "gc", "b", "fingerprint", "issues"]);
    report.line(format!(
        "table {} complete through {} crossings, {} knots",
        result.version, result.complete_through, result.records
    ));
    for k in &result.knots {
        report.row(vec![
            k.name.clone(),
            k.crossing_number.to_string(),
            k.determinant.map(|d| d.to_string()).unwrap_or_default(),
            opt(k.genus),
            opt(k.canonical_genus),
            opt(k.braid_index),
            k.fingerprint.clone(),
            k.issues.join("; "),
        ]);
        for issue in &k.issues {
            report.line(format!("{}: {issue}", k.name));
        }
    }
    for c in &result.collisions {
        report.line(format!("fingerprint collision: {}", c.join(" ")));
    }
    report.line(format!("# {} issues, {} collisions", result.issues, result.collisions.len()));
    let failed = (result.issues > 0 || !result.collisions.is_empty()).then(|| {
        ("TableInconsistent", format!("{} issues, {} collisions", result.issues, result.collisions.len()))
    });
    Ok(Outcome { report, failed })
}

