//! Reproducible runs behind the `unital` binary. Every command returns a
//! [`RunReport`] whose JSON, minus the `timing` block, depends only on the
//! command's inputs.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{check_curve, BoundLedger, Bound, CurveClass};
use crate::census::{
    blocking_number, census_through_points, flat_census, hyperplane_census, line_census, min_solid_search,
    spectrum_solve, Histogram, SpectrumSystem,
};
use crate::gf::{Felt, Field};
use crate::hermitian::{cone_points, expected_count_u64, standard_generator, HermitianForm};
use crate::polyhyp::{HomoPoly, PolyJson};
use crate::projgeom::sample::{draw_rng, sample_points};
use crate::projgeom::{FlatMode, PointSet, ProjSpace, Subspace};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub n: Option<usize>,
    pub q: Option<u32>,
    pub d: Option<usize>,
    pub seed: Option<u64>,
    pub mode: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
    pub skipped: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Serialize, observed: impl Serialize) -> Check {
        let expected = serde_json::to_value(expected).expect("serializable");
        let observed = serde_json::to_value(observed).expect("serializable");
        Check { name: name.into(), pass: expected == observed, expected, observed, skipped: false }
    }

    pub fn skipped(name: impl Into<String>, expected: impl Serialize) -> Check {
        Check {
            name: name.into(),
            expected: serde_json::to_value(expected).expect("serializable"),
            observed: Value::Null,
            pass: false,
            skipped: true,
        }
    }

    /// A check whose computation failed.
    pub fn failed(name: impl Into<String>, expected: impl Serialize, err: impl Display) -> Check {
        Check {
            name: name.into(),
            expected: serde_json::to_value(expected).expect("serializable"),
            observed: json!({ "error": err.to_string() }),
            pass: false,
            skipped: false,
        }
    }
}

/// Scheduling facts; excluded from reproducibility comparisons.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_ms: u64,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Parameters,
    /// Modulus of the field, low degree first, so element indices in the
    /// artifacts can be decoded.
    pub field_modulus: Vec<u32>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub timing: Timing,
}

impl RunReport {
    fn new(command: String, parameters: Parameters, field: Option<&Field>) -> RunReport {
        RunReport {
            command,
            parameters,
            field_modulus: field.map(|f| f.modulus().to_vec()).unwrap_or_default(),
            checks: Vec::new(),
            pass: true,
            timing: Timing { wall_time_ms: 0, workers: rayon::current_num_threads() },
        }
    }

    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn finish(mut self, start: Instant) -> RunReport {
        self.pass = self.checks.iter().all(|c| c.skipped || c.pass);
        self.timing.wall_time_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The report without its `timing` block.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("timing");
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
    Ok(pool.install(f))
}

fn hermitian_field(q: u32) -> anyhow::Result<Arc<Field>> {
    Ok(Arc::new(Field::gf_q2(q).with_context(|| format!("GF({q}^2)"))?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildKind {
    /// Diagonal form with `t` trailing zeros on PG(r, q^2).
    Hermitian { r: usize, q: u32, t: usize },
    /// `sum x_i^(q+1)` on PG(r, q^2).
    Fermat { r: usize, q: u32 },
    /// Zero locus of a polynomial JSON file.
    Poly(PathBuf),
}

/// Builds a point set, writes it as PGPS to `out` and reports its size.
pub fn cmd_build(kind: &BuildKind, out: &Path, expect: Option<u64>) -> anyhow::Result<RunReport> {
    let start = Instant::now();
    let (set, expected, command, params) = match kind {
        BuildKind::Hermitian { r, q, t } => {
            let field = hermitian_field(*q)?;
            let form = HermitianForm::diagonal(ProjSpace::new(*r, field)?, *t)?;
            let want = expected_count_u64(*r as u64, *q as u64, *t as u64)?;
            (
                form.variety_points(),
                Some(want),
                format!("build --kind hermitian --r {r} --q {q} --t {t}"),
                Parameters { q: Some(*q), n: Some(*r), d: Some(*q as usize + 1), ..Default::default() },
            )
        }
        BuildKind::Fermat { r, q } => {
            let field = hermitian_field(*q)?;
            let space = ProjSpace::new(*r, field.clone())?;
            let poly = HomoPoly::fermat(field, r + 1, q + 1)?;
            let want = expected_count_u64(*r as u64, *q as u64, 0)?;
            (
                poly.rational_points(&space)?,
                Some(want),
                format!("build --kind fermat --r {r} --q {q}"),
                Parameters { q: Some(*q), n: Some(*r), d: Some(*q as usize + 1), ..Default::default() },
            )
        }
        BuildKind::Poly(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let j: PolyJson = serde_json::from_str(&text)?;
            let poly = HomoPoly::from_json(&j)?;
            let space = ProjSpace::new(j.nvars - 1, Arc::new(poly.field().clone()))?;
            (
                poly.rational_points(&space)?,
                None,
                format!("build --kind poly --input {}", path.display()),
                Parameters { n: Some(j.nvars - 1), d: Some(j.degree as usize), ..Default::default() },
            )
        }
    };
    let f = set.space().field();
    let params = Parameters { p: Some(f.characteristic()), k: Some(f.degree()), ..params };
    let mut report = RunReport::new(format!("{command} --out {}", out.display()), params, Some(f));
    set.save(out).with_context(|| format!("writing {}", out.display()))?;
    match expect.or(expected) {
        Some(e) => report.push(Check::new("cardinality", e, set.len())),
        None => report.push(Check::skipped("cardinality", Value::Null)),
    }
    Ok(report.finish(start))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Lines,
    Planes,
    Solids,
    FourSpaces,
    FiveSpaces,
    Hyperplanes,
}

impl Family {
    pub fn parse(s: &str) -> anyhow::Result<Family> {
        Ok(match s {
            "lines" => Family::Lines,
            "planes" => Family::Planes,
            "solids" => Family::Solids,
            "4spaces" => Family::FourSpaces,
            "5spaces" => Family::FiveSpaces,
            "hyperplanes" => Family::Hyperplanes,
            _ => bail!("unknown family {s:?}"),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Lines => "lines",
            Family::Planes => "planes",
            Family::Solids => "solids",
            Family::FourSpaces => "4spaces",
            Family::FiveSpaces => "5spaces",
            Family::Hyperplanes => "hyperplanes",
        }
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            Family::Lines => 1,
            Family::Planes => 2,
            Family::Solids => 3,
            Family::FourSpaces => 4,
            Family::FiveSpaces => 5,
            Family::Hyperplanes => n.saturating_sub(1),
        }
    }
}

/// What a `through` census pivots on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PivotSpec {
    /// A point by index.
    Point(u64),
    /// A point of the input set chosen with the seed.
    RandomPoint,
    /// The span of points given by index.
    Span(Vec<u64>),
    /// The generator spanned by `e_{2i} + e e_{2i+1}`, `N(e) = -1`.
    Generator,
    /// The perp of that generator under the standard form.
    GeneratorPerp,
}

impl PivotSpec {
    pub fn parse(s: &str) -> anyhow::Result<PivotSpec> {
        if let Some(rest) = s.strip_prefix("point:") {
            return Ok(PivotSpec::Point(rest.parse()?));
        }
        if let Some(rest) = s.strip_prefix("span:") {
            let idx = rest.split(',').map(|x| x.trim().parse()).collect::<Result<Vec<u64>, _>>()?;
            return Ok(PivotSpec::Span(idx));
        }
        Ok(match s {
            "random-point" => PivotSpec::RandomPoint,
            "generator" => PivotSpec::Generator,
            "generator-perp" => PivotSpec::GeneratorPerp,
            _ => bail!("unknown pivot {s:?}"),
        })
    }

    pub fn label(&self) -> String {
        match self {
            PivotSpec::Point(i) => format!("point:{i}"),
            PivotSpec::RandomPoint => "random-point".into(),
            PivotSpec::Span(v) => {
                format!("span:{}", v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            }
            PivotSpec::Generator => "generator".into(),
            PivotSpec::GeneratorPerp => "generator-perp".into(),
        }
    }

    fn resolve(&self, x: &PointSet, seed: Option<u64>) -> anyhow::Result<Subspace> {
        let space = x.space();
        Ok(match self {
            PivotSpec::Point(i) => space.span(&[space.point_unindex(*i)?])?,
            PivotSpec::RandomPoint => {
                let seed = seed.ok_or_else(|| anyhow!("random-point pivot needs --seed"))?;
                if x.is_empty() {
                    bail!("random-point pivot on an empty set");
                }
                let nth = draw_rng(seed, 0).gen_range(0..x.len());
                let i = x.iter().nth(nth as usize).expect("in range");
                space.span(&[space.point_unindex(i)?])?
            }
            PivotSpec::Span(v) => {
                let pts = v.iter().map(|&i| space.point_unindex(i)).collect::<Result<Vec<_>, _>>()?;
                space.span(&pts)?
            }
            PivotSpec::Generator => standard_generator(space)?,
            PivotSpec::GeneratorPerp => {
                let form = HermitianForm::standard(space.clone())?;
                form.perp_flat(&standard_generator(space)?)?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModeSpec {
    Full,
    Through(PivotSpec),
    Sample { count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRequest {
    pub input: PathBuf,
    pub family: Family,
    pub mode: ModeSpec,
    pub seed: Option<u64>,
    pub expect: Option<BTreeMap<u64, u64>>,
    pub expect_sizes: Option<Vec<u64>>,
    /// Writes `<out>.csv` and `<out>.json` when set.
    pub out: Option<PathBuf>,
}

/// Parses `size:count,size:count`.
pub fn parse_bins(s: &str) -> anyhow::Result<BTreeMap<u64, u64>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.split_once(':').ok_or_else(|| anyhow!("expected size:count, got {p:?}"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

pub fn parse_sizes(s: &str) -> anyhow::Result<Vec<u64>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| Ok(p.trim().parse()?)).collect()
}

pub fn cmd_census(req: &CensusRequest) -> anyhow::Result<(Histogram, RunReport)> {
    let start = Instant::now();
    let x = PointSet::load(&req.input).with_context(|| format!("reading {}", req.input.display()))?;
    let space = x.space();
    let d = req.family.dim(space.dim());
    let mut command = format!("census --input {} --family {}", req.input.display(), req.family.name());
    let mode = match &req.mode {
        ModeSpec::Full => {
            command += " --mode full";
            FlatMode::Full
        }
        ModeSpec::Through(p) => {
            command += &format!(" --mode through --pivot {}", p.label());
            FlatMode::Through(p.resolve(&x, req.seed)?)
        }
        ModeSpec::Sample { count } => {
            let seed = req.seed.ok_or_else(|| anyhow!("sample mode needs --seed"))?;
            command += &format!(" --mode sample --samples {count}");
            FlatMode::Sample { count: *count, seed }
        }
    };
    if let Some(s) = req.seed {
        command += &format!(" --seed {s}");
    }
    if let Some(e) = &req.expect {
        let e: Vec<String> = e.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        command += &format!(" --expect {}", e.join(","));
    }
    if let Some(e) = &req.expect_sizes {
        let e: Vec<String> = e.iter().map(|a| a.to_string()).collect();
        command += &format!(" --expect-sizes {}", e.join(","));
    }
    if let Some(o) = &req.out {
        command += &format!(" --out {}", o.display());
    }
    let label = mode.label();
    let hist = if d == 1 { line_census(&x, mode)? } else { flat_census(&x, d, mode)? };
    let f = space.field();
    let params = Parameters {
        p: Some(f.characteristic()),
        k: Some(f.degree()),
        n: Some(space.dim()),
        q: f.sub_order(),
        d: Some(d),
        seed: req.seed,
        mode: Some(label),
    };
    let mut report = RunReport::new(command, params, Some(f));
    report.push(Check::new("family size", hist.family_size, hist.bins.values().sum::<u64>()));
    if let Some(e) = &req.expect {
        report.push(Check::new("bins", e, &hist.bins));
    }
    if let Some(sizes) = &req.expect_sizes {
        let outside: Vec<u64> = hist.sizes().into_iter().filter(|s| !sizes.contains(s)).collect();
        report.push(Check::new("sizes outside the expected set", Vec::<u64>::new(), outside));
    }
    if let Some(out) = &req.out {
        std::fs::write(out.with_extension("csv"), hist.to_csv())?;
        std::fs::write(out.with_extension("json"), hist.to_json())?;
    }
    Ok((hist, report.finish(start)))
}

pub fn cmd_bounds_batch(input: &Path, q: u32, out: Option<&Path>) -> anyhow::Result<(String, RunReport)> {
    let start = Instant::now();
    let file = std::fs::File::open(input).with_context(|| format!("reading {}", input.display()))?;
    let csv = crate::bounds::bounds_batch(BufReader::new(file), q as u64)?;
    let field = Field::gf_q2(q)?;
    let mut command = format!("bounds-batch --input {} --q {q}", input.display());
    if let Some(o) = out {
        command += &format!(" --out {}", o.display());
        std::fs::write(o, &csv)?;
    }
    let params = Parameters {
        p: Some(field.characteristic()),
        k: Some(field.degree()),
        n: Some(2),
        q: Some(q),
        d: Some(q as usize + 1),
        ..Default::default()
    };
    let mut report = RunReport::new(command, params, Some(&field));
    let rows = csv.lines().skip(1).count();
    let violations = csv.lines().skip(1).filter(|l| l.contains("violat")).count();
    report.push(Check::new("curves read", rows, rows));
    report.push(Check::new("curves violating an applicable bound", 0, violations));
    Ok((csv, report.finish(start)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub q: u32,
    pub seed: u64,
    pub skip_hyperplane_census: bool,
    /// Replaces the constructed H(6, q^2) as the set under test.
    pub input: Option<PathBuf>,
    /// Permits q other than 3.
    pub allow_other_q: bool,
}

impl VerifyOptions {
    pub fn new(q: u32, seed: u64) -> VerifyOptions {
        VerifyOptions { q, seed, skip_hyperplane_census: false, input: None, allow_other_q: false }
    }

    fn command(&self) -> String {
        let mut c = format!("verify-theorem --q {} --seed {}", self.q, self.seed);
        if self.skip_hyperplane_census {
            c += " --skip-hyperplane-census";
        }
        if let Some(i) = &self.input {
            c += &format!(" --input {}", i.display());
        }
        if self.allow_other_q {
            c += " --allow-other-q";
        }
        c
    }
}

pub const VERIFY_POINTS: u64 = 100;
pub const VERIFY_SOLIDS: u64 = 10_000;
pub const VERIFY_CURVES: u64 = 10_000;

fn theta(s: u32, q: u64) -> u64 {
    let m = q * q;
    (m.pow(s + 1) - 1) / (m - 1)
}

/// Records `name`: the closure's checks, or one failed check if it errors.
fn section(report: &mut RunReport, name: &str, f: impl FnOnce() -> anyhow::Result<Vec<Check>>) {
    match f() {
        Ok(cs) => report.checks.extend(cs),
        Err(e) => report.push(Check::failed(name, Value::Null, format!("{e:#}"))),
    }
}

fn sizes_outside(h: &Histogram, allowed: &[u64]) -> Vec<u64> {
    h.sizes().into_iter().filter(|s| !allowed.contains(s)).collect()
}

/// Every countable claim about H(6, q^2) and its sections, at the given `q`.
pub fn cmd_verify_theorem(opts: &VerifyOptions) -> anyhow::Result<RunReport> {
    let start = Instant::now();
    let q = opts.q;
    if q != 3 && !opts.allow_other_q {
        bail!("verify-theorem is calibrated for q = 3; pass --allow-other-q to run q = {q}");
    }
    let field = hermitian_field(q)?;
    let qq = q as u64;
    let seed = opts.seed;
    let params = Parameters {
        p: Some(field.characteristic()),
        k: Some(field.degree()),
        n: Some(6),
        q: Some(q),
        d: Some(q as usize + 1),
        seed: Some(seed),
        mode: Some("verify".into()),
    };
    let mut report = RunReport::new(opts.command(), params, Some(&field));
    let line_sizes = [1, qq + 1, qq * qq + 1];

    // variety sizes
    let mut varieties: BTreeMap<usize, PointSet> = BTreeMap::new();
    for r in 2..=6usize {
        let form = HermitianForm::standard_form(r, field.clone())?;
        let want = expected_count_u64(r as u64, qq, 0)?;
        let x = form.variety_points();
        report.push(Check::new(format!("|H({r},q^2)|"), want, x.len()));
        varieties.insert(r, x);
    }
    let h6 = match &opts.input {
        Some(path) => {
            let x = PointSet::load(path).with_context(|| format!("reading {}", path.display()))?;
            if *x.space() != *varieties[&6].space() {
                bail!("{} is not a point set of PG(6, {})", path.display(), qq * qq);
            }
            report.push(Check::new("|input|", expected_count_u64(6, qq, 0)?, x.len()));
            x
        }
        None => varieties[&6].clone(),
    };
    let space = h6.space().clone();
    let h6_count = expected_count_u64(6, qq, 0)?;

    // lines through random points
    section(&mut report, "lines through random points", || {
        let pts = sample_points(&space, VERIFY_POINTS, seed)?;
        let hist = census_through_points(&h6, &pts)?;
        Ok(vec![
            Check::new("lines through random points: family size", VERIFY_POINTS * theta(5, qq), hist.family_size),
            Check::new("lines through random points: sizes outside {1,q+1,q^2+1}", Vec::<u64>::new(), sizes_outside(&hist, &line_sizes)),
            Check::new("lines through random points: lines missing the set", 0, hist.bins.get(&0).copied().unwrap_or(0)),
        ])
    });

    // minimal solid
    let bound = qq.pow(4) + qq * qq + 1;
    let mut perp_solid = None;
    section(&mut report, "minimal solid", || {
        let form = HermitianForm::standard(space.clone())?;
        let gen = standard_generator(&space)?;
        let perp = form.perp_flat(&gen)?;
        let mut cs = vec![
            Check::new("generator plane inside the set", true, space.subspace_points(&gen).is_subset(&h6)?),
            Check::new("perp solid of the generator: intersection", bound, space.count_in(&perp, &h6)),
        ];
        let found = min_solid_search(&h6, &[gen], None)?;
        cs.push(Check::new("smallest solid through the generator", bound, found.size));
        let sample = flat_census(&h6, 3, FlatMode::Sample { count: VERIFY_SOLIDS, seed })?;
        let below: u64 = sample.bins.range(..bound).map(|(_, c)| c).sum();
        cs.push(Check::new("sampled solids below q^4+q^2+1", 0, below));
        perp_solid = Some(perp);
        Ok(cs)
    });

    // cone sections through the perp solid
    section(&mut report, "sections through the perp solid", || {
        let perp = perp_solid.clone().ok_or_else(|| anyhow!("no perp solid"))?;
        let through = 1 + qq * qq + qq.pow(4);
        let h4 = flat_census(&h6, 4, FlatMode::Through(perp.clone()))?;
        let h5 = flat_census(&h6, 5, FlatMode::Through(perp))?;
        let want4: BTreeMap<u64, u64> = [(expected_count_u64(4, qq, 2)?, through)].into_iter().collect();
        let want5: BTreeMap<u64, u64> = [(expected_count_u64(5, qq, 1)?, through)].into_iter().collect();
        Ok(vec![
            Check::new("4-spaces through the perp solid", want4, h4.bins),
            Check::new("5-spaces through the perp solid", want5, h5.bins),
        ])
    });

    // hyperplane spectrum
    let tangent = expected_count_u64(5, qq, 1)?;
    let secant = expected_count_u64(5, qq, 0)?;
    let hyperplanes = theta(6, qq);
    let want_hyp: BTreeMap<u64, u64> = [(tangent, h6_count), (secant, hyperplanes - h6_count)].into_iter().collect();
    let mut census_bins = None;
    if opts.skip_hyperplane_census {
        report.push(Check::skipped("hyperplane census of the set", &want_hyp));
    } else {
        section(&mut report, "hyperplane census of the set", || {
            let h = hyperplane_census(&h6)?;
            census_bins = Some(h.bins.clone());
            Ok(vec![Check::new("hyperplane census of the set", &want_hyp, h.bins)])
        });
    }

    // double counting system
    section(&mut report, "double counting system", || {
        let middle = qq.pow(9) + qq.pow(7) + qq.pow(5) + qq * qq + 1;
        let x = BigInt::from(h6_count);
        let totals = [BigInt::from(hyperplanes), &x * theta(5, qq), &x * (h6_count - 1) * theta(4, qq)];
        let sol = spectrum_solve(&SpectrumSystem::new(vec![tangent, middle, secant], totals))?;
        let sol: BTreeMap<u64, u64> =
            sol.into_iter().map(|(k, v)| (k, v.to_u64().expect("fits"))).collect();
        let mut want = want_hyp.clone();
        want.insert(middle, 0);
        let mut cs = vec![Check::new("double counting solution", want, &sol)];
        if let Some(bins) = &census_bins {
            let nonzero: BTreeMap<u64, u64> = sol.into_iter().filter(|&(_, v)| v > 0).collect();
            cs.push(Check::new("double counting solution agrees with the census", bins, nonzero));
        }
        Ok(cs)
    });

    // H(4, q^2)
    section(&mut report, "H(4,q^2)", || {
        let h4 = &varieties[&4];
        let n4 = expected_count_u64(4, qq, 0)?;
        let want: BTreeMap<u64, u64> =
            [(expected_count_u64(3, qq, 1)?, n4), (expected_count_u64(3, qq, 0)?, theta(4, qq) - n4)].into_iter().collect();
        let hyp = hyperplane_census(h4)?;
        let lines = line_census(h4, FlatMode::Full)?;
        let block = blocking_number(h4, 1, FlatMode::Full)?;
        Ok(vec![
            Check::new("H(4,q^2): hyperplane census", want, hyp.bins),
            Check::new("H(4,q^2): line sizes outside {1,q+1,q^2+1}", Vec::<u64>::new(), sizes_outside(&lines, &line_sizes)),
            Check::new("H(4,q^2): line blocking number", 1, block.value),
        ])
    });

    // plane curves of degree q + 1
    section(&mut report, "curves", || {
        let plane = ProjSpace::new(2, field.clone())?;
        let d = q + 1;
        let fermat = check_curve(&HomoPoly::fermat(field.clone(), 3, d)?, &plane, qq)?;
        let lines: Vec<Vec<Felt>> = field.elements().take(d as usize).map(|c| vec![Felt::ONE, c, Felt::ZERO]).collect();
        let pencil = HomoPoly::product_of_linear(field.clone(), &lines)?;
        let pencil_n = pencil.rational_points(&plane)?.len();
        let ledger = BoundLedger::new(d as u64, qq * qq, Some(qq))?;
        let piecewise = ledger.get(Bound::HommaPiecewise).expect("hermitian layer");
        let hermitian = qq.pow(3) + 1;
        let results: Vec<(u64, usize, CurveClass)> = (0..VERIFY_CURVES)
            .into_par_iter()
            .map(|i| {
                let mut rng = draw_rng(seed, i);
                let f = HomoPoly::random(field.clone(), 3, d, &mut rng).expect("nonzero");
                let c = check_curve(&f, &plane, qq).expect("valid curve");
                (c.n_points, c.components, c.class)
            })
            .collect();
        let free: Vec<u64> = results.iter().filter(|r| r.1 == 0).map(|r| r.0).collect();
        let gap = free.iter().filter(|&&n| n > piecewise && n != hermitian).count();
        let violations = results.iter().filter(|r| r.2 == CurveClass::Violation).count();
        Ok(vec![
            Check::new("Fermat curve: points", hermitian, fermat.n_points),
            Check::new("Fermat curve: line components", 0, fermat.components),
            Check::new("pencil of q+1 lines: points", d as u64 * qq * qq + 1, pencil_n),
            Check::new("random curves without line components above the piecewise bound", 0, gap),
            Check::new("random curves violating an applicable bound", 0, violations),
        ])
    });

    // degenerate varieties as cones
    section(&mut report, "cones", || {
        let mut cs = Vec::new();
        for r in 2..=4usize {
            let sp = ProjSpace::new(r, field.clone())?;
            for t in 1..=3usize.min(r) {
                let mut rng = draw_rng(seed, (r * 10 + t) as u64);
                let form = HermitianForm::random_of_rank(sp.clone(), r + 1 - t, &mut rng)?;
                let class = form.radical_classify();
                let dec = form.cone_decomposition()?;
                let cone = cone_points(&sp, dec.vertex.as_ref(), &dec.base, &dec.base_flat)?;
                let var = form.variety_points();
                let name = format!("cone R_{t}H({},q^2) in PG({r},q^2)", r - t);
                cs.push(Check::new(format!("{name}: radical dimension"), t, class.t));
                cs.push(Check::new(format!("{name}: variety equals cone"), true, cone == var));
                cs.push(Check::new(format!("{name}: size"), expected_count_u64(r as u64, qq, t as u64)?, var.len()));
            }
        }
        Ok(cs)
    });

    Ok(report.finish(start))
}
