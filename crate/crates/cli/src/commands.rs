use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use skewlines::groupoid::{census as run_census, explore_cluster, Census, CensusOptions};
use skewlines::invariants::{class_of, inv_configuration, inv_p, ring_from_state};
use skewlines::io::{read_json, BundleFile, ClusterFile, ConfigFile, StateFile};
use skewlines::jones::{diagram_from_bundle, diagram_of_state, eval_poly, jd, jm, parse_rational, LaurentPoly, ProjectiveDiagram};
use skewlines::lincore::{DiscreteState, LineConfig, Vec3};
use skewlines::projection::{d3, fibonacci_direction, outside_tests, project_plane, project_point, ProjectionBundle};
use skewlines::rational::{big_to_f64, format_sig, to_f64, Rational};
use skewlines::sampling::{random_valid_spec, rng_for};

use crate::manifest::{Artifact, RunManifest, Timer};
use crate::reproduce::Outcome;
use crate::{Format, Which};

/// Significant digits of every decimal in reports.
pub const DIGITS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] skewlines::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub struct Context {
    pub seed: u64,
    pub budget: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Context {
    /// Writes `text` to `--out` or stdout.
    pub fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    pub fn json<T: Serialize>(&self, manifest: &RunManifest, body: &T) -> Result<String> {
        let text = serde_json::to_string_pretty(&Artifact { manifest, body })
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(text + "\n")
    }

    /// Writes CSV to `--out` with a sidecar manifest, or to stdout.
    pub fn csv<R: Serialize>(&self, manifest: &RunManifest, rows: &[R]) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        self.emit(&String::from_utf8_lossy(&bytes))?;
        if let Some(p) = &self.out {
            let side = sidecar(p);
            let text = serde_json::to_string_pretty(manifest).map_err(|e| CliError::Usage(e.to_string()))?;
            fs::write(side, text + "\n")?;
        }
        Ok(())
    }
}

fn sidecar(p: &Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn dec(r: &Rational) -> String {
    format_sig(to_f64(r), DIGITS)
}

fn direction(u: &[f64]) -> Result<Vec3> {
    match u {
        [x, y, z] => Ok([*x, *y, *z]),
        _ => Err(CliError::Usage("--u needs three comma-separated numbers".into())),
    }
}

fn load_config(path: &Path) -> Result<LineConfig> {
    Ok(read_json::<ConfigFile>(path)?.to_config()?)
}

fn load_state(path: &Path) -> Result<DiscreteState> {
    Ok(read_json::<StateFile>(path)?.to_state()?)
}

pub fn gen(ctx: &Context, n: usize, count: usize) -> Result<Outcome> {
    if n < 2 {
        return Err(skewlines::Error::TooFew(n).into());
    }
    let timer = Timer::start();
    let files: Vec<ConfigFile> = (0..count)
        .map(|i| random_valid_spec(n, &mut rng_for(ctx.seed, i as u64)).map(|(spec, _)| ConfigFile::new(spec)))
        .collect::<std::result::Result<_, _>>()?;
    let manifest = RunManifest::new("gen", ctx.seed, Some(count));
    match (&ctx.out, count) {
        (Some(dir), c) if c > 1 => {
            fs::create_dir_all(dir)?;
            for (i, f) in files.iter().enumerate() {
                let path = dir.join(format!("config_{i:04}.json"));
                fs::write(&path, ctx.json(&manifest.clone().output(Some(&path)), f)?)?;
            }
        }
        _ if count == 1 => ctx.emit(&ctx.json(&manifest.output(ctx.out.as_deref()), &files[0])?)?,
        _ => {
            #[derive(Serialize)]
            struct Many<'a> {
                configs: &'a [ConfigFile],
            }
            ctx.emit(&ctx.json(&manifest, &Many { configs: &files })?)?
        }
    }
    timer.report("gen");
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    det_p: i128,
    inv_p: Option<String>,
    inv_p_decimal: Option<String>,
    class: String,
    class_decimal: String,
    inv: Option<String>,
    inv_decimal: Option<String>,
    ring: Vec<Vec<i64>>,
    ring_vector: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct AnalysisRow {
    #[serde(rename = "det_P")]
    det_p: i128,
    #[serde(rename = "InvP")]
    inv_p: String,
    class: String,
    #[serde(rename = "Inv")]
    inv: String,
    #[serde(rename = "InvP_num")]
    inv_p_num: String,
    #[serde(rename = "InvP_den")]
    inv_p_den: String,
    class_num: i128,
    class_den: i128,
    #[serde(rename = "Inv_num")]
    inv_num: String,
    #[serde(rename = "Inv_den")]
    inv_den: String,
}

pub fn analyze(ctx: &Context, input: &Path) -> Result<Outcome> {
    let value: serde_json::Value = read_json(input)?;
    let state = if value.get("lines").is_some() {
        load_config(input)?.state()?
    } else {
        load_state(input)?
    };
    let ip = inv_p(&state.p).ok();
    let inv = inv_configuration(&state).ok();
    let class = class_of(&state.dir);
    let ring = ring_from_state(&state)?;
    let report = Analysis {
        n: state.dim(),
        det_p: state.p.det(),
        inv_p: ip.map(|r| r.to_string()),
        inv_p_decimal: ip.as_ref().map(dec),
        class: class.to_string(),
        class_decimal: dec(&class),
        inv: inv.map(|r| r.to_string()),
        inv_decimal: inv.as_ref().map(dec),
        ring: ring.matrix().rows(),
        ring_vector: ring.ring_vector().ok(),
    };
    let manifest = RunManifest::new("analyze", ctx.seed, None).input(input).output(ctx.out.as_deref());
    match ctx.format {
        Format::Json => ctx.emit(&ctx.json(&manifest, &report)?)?,
        Format::Csv => {
            let parts = |r: Option<Rational>| match r {
                Some(r) => (dec(&r), r.numer().to_string(), r.denom().to_string()),
                None => ("singular".into(), String::new(), String::new()),
            };
            let (ipd, ipn, ipq) = parts(ip);
            let (id, inn, iq) = parts(inv);
            let row = AnalysisRow {
                det_p: report.det_p,
                inv_p: ipd,
                class: dec(&class),
                inv: id,
                inv_p_num: ipn,
                inv_p_den: ipq,
                class_num: *class.numer(),
                class_den: *class.denom(),
                inv_num: inn,
                inv_den: iq,
            };
            ctx.csv(&manifest, &[row])?
        }
        Format::Text => {
            let mut s = String::new();
            let show = |v: &Option<String>, d: &Option<String>| match (v, d) {
                (Some(v), Some(d)) => format!("{v} = {d}"),
                _ => "singular".into(),
            };
            writeln!(s, "lines    {}", report.n).unwrap();
            writeln!(s, "det P    {}", report.det_p).unwrap();
            writeln!(s, "InvP     {}", show(&report.inv_p, &report.inv_p_decimal)).unwrap();
            writeln!(s, "class    {} = {}", report.class, report.class_decimal).unwrap();
            writeln!(s, "Inv      {}", show(&report.inv, &report.inv_decimal)).unwrap();
            writeln!(s, "Ring").unwrap();
            for row in &report.ring {
                writeln!(s, "  {}", row.iter().map(|v| format!("{v:>3}")).collect::<Vec<_>>().join(" ")).unwrap();
            }
            match &report.ring_vector {
                Some(v) => writeln!(s, "ring vector {v:?}").unwrap(),
                None => writeln!(s, "ring vector undefined").unwrap(),
            }
            ctx.emit(&s)?
        }
    }
    Ok(Outcome::Pass)
}

pub fn cluster(ctx: &Context, state_path: &Path) -> Result<Outcome> {
    let timer = Timer::start();
    let state = load_state(state_path)?;
    let c = explore_cluster(&state)?;
    let file = ClusterFile::from_cluster(&c);
    let manifest = RunManifest::new("cluster", ctx.seed, None).input(state_path).output(ctx.out.as_deref());
    if ctx.format == Format::Json || ctx.out.is_some() {
        ctx.emit(&ctx.json(&manifest, &file)?)?;
    } else {
        let mut s = String::new();
        writeln!(s, "det P           {}", file.det).unwrap();
        writeln!(s, "size            {}", file.size).unwrap();
        writeln!(s, "labeled states  {}", c.labeled_size()).unwrap();
        writeln!(s, "moves           {}", c.edge_count()).unwrap();
        writeln!(s, "singular        {}", c.singular).unwrap();
        writeln!(s, "invariant sum   {}", format_sig(file.gsum_decimal, DIGITS)).unwrap();
        ctx.emit(&s)?;
    }
    timer.report("cluster");
    Ok(Outcome::Pass)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub class: usize,
    pub det_p: i128,
    pub inv_p: String,
    pub size: usize,
    pub labeled_states: usize,
    pub gsum: f64,
    pub specular: bool,
    pub mirror: Option<usize>,
    pub first_sample: usize,
    pub jd_at_08: Option<f64>,
}

/// Census rows, with the projective bracket at 0.8 when asked (in parallel).
pub fn census_rows(c: &Census, with_jones: bool) -> Result<Vec<CensusRow>> {
    let a = parse_rational("0.8")?;
    c.classes
        .par_iter()
        .enumerate()
        .map(|(i, k)| {
            let jd08 = if with_jones {
                let d = diagram_of_state(&k.cluster.state(0))?;
                Some(big_to_f64(&eval_poly(&jd(&d)?, &a)?))
            } else {
                None
            };
            Ok(CensusRow {
                class: i,
                det_p: k.cluster.det(),
                inv_p: k.cluster.invp().map(|r| dec(&r)).unwrap_or_else(|_| "singular".into()),
                size: k.cluster.size(),
                labeled_states: k.cluster.labeled_size(),
                gsum: big_to_f64(&k.cluster.gsum()),
                specular: k.specular,
                mirror: k.mirror,
                first_sample: k.first_sample,
                jd_at_08: jd08,
            })
        })
        .collect()
}

pub fn census(ctx: &Context, n: usize, stop: bool, with_jones: bool) -> Result<Outcome> {
    let timer = Timer::start();
    let budget = ctx.budget.unwrap_or(100_000);
    let c = run_census(&CensusOptions { n, budget, seed: ctx.seed, stop_when_complete: stop })?;
    let rows = census_rows(&c, with_jones)?;
    let manifest = RunManifest::new("census", ctx.seed, Some(budget)).output(ctx.out.as_deref());
    match ctx.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                n: usize,
                samples_used: usize,
                rejected: usize,
                total_states: usize,
                complete: Option<bool>,
                classes: &'a [CensusRow],
            }
            let body = Body {
                n,
                samples_used: c.samples_used,
                rejected: c.rejected,
                total_states: c.total_states(),
                complete: c.is_complete(),
                classes: &rows,
            };
            ctx.emit(&ctx.json(&manifest, &body)?)?
        }
        Format::Csv => ctx.csv(&manifest, &rows)?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{:>5} {:>6} {:>12} {:>7} {:>16} {:>8} {:>12}", "class", "det", "InvP", "size", "sum", "specular", "jd(0.8)").unwrap();
            for r in &rows {
                let jd = r.jd_at_08.map(|v| format_sig(v, 7)).unwrap_or_default();
                writeln!(s, "{:>5} {:>6} {:>12} {:>7} {:>16} {:>8} {:>12}", r.class, r.det_p, r.inv_p, r.size, format_sig(r.gsum, DIGITS), r.specular, jd).unwrap();
            }
            writeln!(s, "classes {} total {} samples {} rejected {}", rows.len(), c.total_states(), c.samples_used, c.rejected).unwrap();
            ctx.emit(&s)?
        }
    }
    timer.report("census");
    Ok(match c.is_complete() {
        Some(false) => Outcome::Inconclusive,
        _ => Outcome::Pass,
    })
}

#[derive(Serialize)]
struct SweepRow {
    direction: usize,
    u_x: f64,
    u_y: f64,
    u_z: f64,
    inv_num: String,
    inv_den: String,
}

pub fn project(ctx: &Context, config: &Path, u: &[f64], point: bool, sweep: Option<usize>) -> Result<Outcome> {
    let cfg = load_config(config)?;
    let manifest = RunManifest::new("project", ctx.seed, sweep).input(config).output(ctx.out.as_deref());
    if let Some(samples) = sweep {
        let p = cfg.chirality()?;
        let mut rng = rng_for(ctx.seed, 0);
        let mut rows = Vec::new();
        for idx in 0..samples {
            let dir = fibonacci_direction(idx, samples, 1e-3, &mut rng);
            let Ok(b) = project_plane(&cfg, &dir) else {
                log::warn!("direction {idx} is degenerate, skipped");
                continue;
            };
            let state = DiscreteState::new(p.clone(), d3(&b.prm))?;
            let (num, den) = match inv_configuration(&state) {
                Ok(r) => (r.numer().to_string(), r.denom().to_string()),
                Err(_) => ("singular".into(), String::new()),
            };
            rows.push(SweepRow { direction: idx, u_x: dir[0], u_y: dir[1], u_z: dir[2], inv_num: num, inv_den: den });
        }
        ctx.csv(&manifest, &rows)?;
        return Ok(Outcome::Pass);
    }
    let u = direction(u)?;
    let bundle = if point {
        let pp = project_point(&cfg, &u)?;
        ProjectionBundle { prm: pp.corrected, ..pp.raw }
    } else {
        project_plane(&cfg, &u)?
    };
    ctx.emit(&ctx.json(&manifest, &BundleFile::from_bundle(&bundle))?)?;
    Ok(Outcome::Pass)
}

pub fn inside(ctx: &Context, config: &Path, u: &[f64]) -> Result<Outcome> {
    let cfg = load_config(config)?;
    let (ring, sandwich) = outside_tests(&cfg, &direction(u)?)?;
    if ring != sandwich {
        log::warn!("outside tests disagree: ring {ring}, sandwich {sandwich}");
    }
    #[derive(Serialize)]
    struct Verdict {
        outside: bool,
        ring_test: bool,
        sandwich_test: bool,
    }
    let v = Verdict { outside: ring, ring_test: ring, sandwich_test: sandwich };
    let manifest = RunManifest::new("inside", ctx.seed, None).input(config);
    match ctx.format {
        Format::Json => ctx.emit(&ctx.json(&manifest, &v)?)?,
        Format::Csv => ctx.csv(&manifest, &[v])?,
        Format::Text => ctx.emit(&format!(
            "{}\nring test {}, sandwich test {}\n",
            if ring { "outside" } else { "inside" },
            v.ring_test,
            v.sandwich_test
        ))?,
    }
    Ok(Outcome::Pass)
}

pub fn jones(
    ctx: &Context,
    state: Option<&Path>,
    config: Option<&Path>,
    u: &[f64],
    bundle: Option<&Path>,
    which: Which,
    eval: Option<&str>,
) -> Result<Outcome> {
    let mut manifest = RunManifest::new("jones", ctx.seed, None);
    let diagram: ProjectiveDiagram = match (state, config, bundle) {
        (Some(s), None, Some(b)) => {
            manifest = manifest.input(s).input(b);
            let st = load_state(s)?;
            diagram_from_bundle(&read_json::<BundleFile>(b)?.to_bundle()?, &st.p)?
        }
        (Some(s), None, None) => {
            manifest = manifest.input(s);
            diagram_of_state(&load_state(s)?)?
        }
        (None, Some(c), None) => {
            manifest = manifest.input(c);
            let cfg = load_config(c)?;
            diagram_from_bundle(&project_plane(&cfg, &direction(u)?)?, &cfg.chirality()?)?
        }
        _ => return Err(CliError::Usage("give --state, --state with --bundle, or --config with --u".into())),
    };
    let a = eval.map(parse_rational).transpose()?;
    #[derive(Serialize)]
    struct Entry {
        name: &'static str,
        polynomial: String,
        value: Option<String>,
        value_exact: Option<String>,
    }
    let mut entries = Vec::new();
    let mut add = |name: &'static str, p: LaurentPoly| -> Result<()> {
        let v = a.as_ref().map(|a| eval_poly(&p, a)).transpose()?;
        entries.push(Entry {
            name,
            polynomial: p.to_string(),
            value: v.as_ref().map(|v| format_sig(big_to_f64(v), DIGITS)),
            value_exact: v.map(|v| v.to_string()),
        });
        Ok(())
    };
    if which != Which::Jm {
        add("jd", jd(&diagram)?)?;
    }
    if which != Which::Jd {
        add("jm", jm(&diagram)?)?;
    }
    let manifest = manifest.output(ctx.out.as_deref());
    match ctx.format {
        Format::Json => ctx.emit(&ctx.json(&manifest, &serde_json::json!({ "polynomials": entries }))?)?,
        Format::Csv => ctx.csv(&manifest, &entries)?,
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                writeln!(s, "{} = {}", e.name, e.polynomial).unwrap();
                if let Some(v) = &e.value {
                    writeln!(s, "{}({}) = {}", e.name, eval.unwrap_or_default(), v).unwrap();
                }
            }
            ctx.emit(&s)?
        }
    }
    Ok(Outcome::Pass)
}
