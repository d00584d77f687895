use polycauchy::format::{fmt_real, write_samples};
use polycauchy::oracles::{chi_square_gof, quadrature_integrate, GofReport};
use polycauchy::polygon::subdivide_triangle;
use polycauchy::student::integrate_student_mc;
use polycauchy::{
    cauchy_elliptic_pdf, cauchy_std_pdf, integrate_cauchy_elliptic, integrate_cauchy_std,
    solid_angle_polygon, student_pdf, Error, LscParams, PlanePoint, PlanePolygon, SphericalPolygon,
    SplitMix64, StudentDof, TruncatedCauchy,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command, IntegrateArgs, PdfArgs, PolyArgs, SampleArgs, VerifyArgs};
use crate::error::{status, CliError};
use crate::input::{parse_samples, read_text, PolygonFile};
use crate::manifest::{self, RunManifest};

/// Absolute agreement required between solid-angle and quadrature masses.
const INTEGRAL_TOLERANCE: f64 = 1e-8;
const QUADRATURE_TOLERANCE: f64 = 1e-11;
/// Goodness-of-fit checks fail below this p-value.
const GOF_ALPHA: f64 = 1e-3;

/// Bytes for standard output plus the exit status.
#[derive(Debug)]
pub struct Output {
    pub bytes: Vec<u8>,
    pub status: u8,
}

impl Output {
    fn ok(bytes: Vec<u8>) -> Self {
        Self {
            bytes,
            status: status::SUCCESS,
        }
    }
}

fn render(json: bool, doc: Value, text: String) -> Output {
    if json {
        Output::ok(format!("{doc}\n").into_bytes())
    } else {
        Output::ok(text.into_bytes())
    }
}

/// Runs a parsed command line. `args` is the command line without the
/// program name, recorded verbatim in manifests.
pub fn run(cli: &Cli, args: &[String]) -> Result<Output, CliError> {
    match &cli.command {
        Command::Pdf(a) => pdf(a, cli.json),
        Command::Integrate(a) => integrate(a, cli.json),
        Command::Sample(a) => sample(a, cli.json, args),
        Command::SolidAngle(a) => solid_angle(a, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Replay(a) => manifest::replay(&a.manifest, cli.json),
    }
}

fn lsc(raw: [f64; 5]) -> Result<LscParams, CliError> {
    let [a1, a2, b1, b2, rho] = raw;
    Ok(LscParams::new(a1, a2, b1, b2, rho)?)
}

fn load(p: &PolyArgs) -> Result<(String, PolygonFile), CliError> {
    let text = read_text(&p.poly)?;
    let doc = PolygonFile::parse(&text)?;
    Ok((text, doc))
}

fn pdf(a: &PdfArgs, json: bool) -> Result<Output, CliError> {
    let x = PlanePoint::new(a.point.0, a.point.1)?;
    let value = match (a.lsc, a.nu) {
        (Some(raw), _) => cauchy_elliptic_pdf(x, &lsc(raw)?),
        (None, Some(nu)) => student_pdf(x, StudentDof::new(nu)?),
        (None, None) => cauchy_std_pdf(x),
    };
    Ok(render(
        json,
        json!({ "value": value }),
        format!("{}\n", fmt_real(value)),
    ))
}

fn integrate(a: &IntegrateArgs, json: bool) -> Result<Output, CliError> {
    let (_, doc) = load(&a.poly)?;
    let poly = doc.polygon()?;
    let params = doc.params(a.lsc)?;
    let Some(nu) = a.nu else {
        let value = match &params {
            Some(p) => integrate_cauchy_elliptic(&poly, p)?,
            None => integrate_cauchy_std(&poly)?,
        };
        return Ok(render(
            json,
            json!({ "value": value, "method": "solid-angle" }),
            format!("value {}\nmethod solid-angle\n", fmt_real(value)),
        ));
    };
    if params.is_some() {
        return Err(CliError::Usage(
            "--nu cannot be combined with location-scale-correlation parameters".into(),
        ));
    }
    let (samples, seed) = a
        .samples
        .zip(a.seed)
        .ok_or_else(|| CliError::Usage("--nu needs both --samples and --seed".into()))?;
    let est = integrate_student_mc(&poly, StudentDof::new(nu)?, samples, seed)?;
    Ok(render(
        json,
        json!({
            "value": est.value,
            "method": "mc",
            "standard_error": est.standard_error,
            "samples": est.samples,
        }),
        format!(
            "value {}\nmethod mc\nstandard_error {}\nsamples {}\n",
            fmt_real(est.value),
            fmt_real(est.standard_error),
            est.samples
        ),
    ))
}

fn sampler_for(poly: &PlanePolygon, params: Option<&LscParams>) -> Result<TruncatedCauchy, Error> {
    match params {
        Some(p) => TruncatedCauchy::elliptic(poly, p),
        None => TruncatedCauchy::standard(poly),
    }
}

fn draw(sampler: &TruncatedCauchy, n: u64, seed: u64) -> Result<Vec<PlanePoint>, Error> {
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| sampler.sample(rng.next_pair())).collect()
}

fn sample(a: &SampleArgs, json: bool, args: &[String]) -> Result<Output, CliError> {
    let (text, doc) = load(&a.poly)?;
    let poly = doc.polygon()?;
    let params = doc.params(a.lsc)?;
    let samples = draw(&sampler_for(&poly, params.as_ref())?, a.samples, a.seed)?;

    let bytes = if json {
        let rows: Vec<[f64; 2]> = samples.iter().map(|s| [s.x1(), s.x2()]).collect();
        format!("{}\n", json!({ "samples": rows })).into_bytes()
    } else {
        let mut buf = Vec::with_capacity(samples.len() * 40);
        write_samples(&mut buf, &samples)?;
        buf
    };
    if let Some(path) = &a.manifest {
        RunManifest::new(
            "sample",
            manifest::strip_manifest_flag(args),
            a.seed,
            a.samples,
            &text,
            &bytes,
        )
        .write(path)?;
    }
    Ok(Output::ok(bytes))
}

fn solid_angle(a: &PolyArgs, json: bool) -> Result<Output, CliError> {
    let (_, doc) = load(a)?;
    let sphere = SphericalPolygon::from_plane(&doc.polygon()?)?;
    let omega = solid_angle_polygon(&sphere);
    let mass = omega / std::f64::consts::TAU;
    Ok(render(
        json,
        json!({ "solid_angle": omega, "mass": mass }),
        format!("solid_angle {}\nmass {}\n", fmt_real(omega), fmt_real(mass)),
    ))
}

/// One verification entry.
struct Check {
    name: &'static str,
    pass: bool,
    fields: Vec<(&'static str, Value)>,
}

impl Check {
    fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        map.insert("name".into(), json!(self.name));
        map.insert("pass".into(), json!(self.pass));
        for (k, v) in &self.fields {
            map.insert((*k).into(), v.clone());
        }
        Value::Object(map)
    }

    fn to_line(&self) -> String {
        let mut line = format!("{} {}", if self.pass { "PASS" } else { "FAIL" }, self.name);
        for (k, v) in &self.fields {
            let v = match v {
                Value::Number(n) if n.is_f64() => fmt_real(n.as_f64().unwrap_or(f64::NAN)),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            line += &format!(" {k}={v}");
        }
        line
    }
}

fn verify(a: &VerifyArgs, json: bool) -> Result<Output, CliError> {
    let (_, doc) = load(&a.poly)?;
    let poly = doc.polygon()?;
    let params = doc.params(a.lsc)?;
    if a.nu.is_some() && params.is_some() {
        return Err(CliError::Usage(
            "--nu cannot be combined with location-scale-correlation parameters".into(),
        ));
    }
    let samples = match &a.input {
        Some(path) => parse_samples(&read_text(path)?)?,
        None => draw(&sampler_for(&poly, params.as_ref())?, a.samples, a.seed)?,
    };

    let mut checks = vec![integral_check(&poly, params.as_ref())?];
    checks.push(gof_check(
        &poly,
        params.as_ref(),
        &samples,
        a.tamper_masses,
    )?);
    if let Some(nu) = a.nu {
        checks.push(student_check(
            &poly,
            StudentDof::new(nu)?,
            a.samples,
            a.seed,
        )?);
    }

    let pass = checks.iter().all(|c| c.pass);
    let doc = json!({
        "pass": pass,
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
    });
    let mut text: String = checks.iter().map(|c| c.to_line() + "\n").collect();
    text += if pass {
        "verify: pass\n"
    } else {
        "verify: fail\n"
    };
    let mut out = render(json, doc, text);
    if !pass {
        out.status = status::VERIFICATION;
    }
    Ok(out)
}

/// Quadrature result, or its best estimate when the budget runs out.
fn quadrature<F: Fn(PlanePoint) -> f64>(f: F, poly: &PlanePolygon) -> Result<(f64, bool), Error> {
    match quadrature_integrate(f, poly, QUADRATURE_TOLERANCE) {
        Ok(r) => Ok((r.value, false)),
        Err(Error::BudgetExceeded { best, .. }) => Ok((best, true)),
        Err(e) => Err(e),
    }
}

fn integral_check(poly: &PlanePolygon, params: Option<&LscParams>) -> Result<Check, Error> {
    let (exact, (quad, exhausted)) = match params {
        Some(p) => (
            integrate_cauchy_elliptic(poly, p)?,
            quadrature(|x| cauchy_elliptic_pdf(x, p), poly)?,
        ),
        None => (
            integrate_cauchy_std(poly)?,
            quadrature(cauchy_std_pdf, poly)?,
        ),
    };
    let difference = (exact - quad).abs();
    let mut fields = vec![
        ("solid_angle_mass", json!(exact)),
        ("quadrature", json!(quad)),
        ("difference", json!(difference)),
    ];
    if exhausted {
        fields.push(("quadrature_budget_exhausted", json!(true)));
    }
    Ok(Check {
        name: "integral",
        pass: difference <= INTEGRAL_TOLERANCE,
        fields,
    })
}

/// Sub-triangle bins: the fan triangles of `poly`, each split into `4^levels`.
fn bins(poly: &PlanePolygon, levels: u32) -> Result<Vec<PlanePolygon>, Error> {
    poly.fan_triangles()
        .into_iter()
        .flat_map(|t| subdivide_triangle(t, levels))
        .map(|t| PlanePolygon::new(t.to_vec()))
        .collect()
}

fn gof_check(
    poly: &PlanePolygon,
    params: Option<&LscParams>,
    samples: &[PlanePoint],
    tamper: bool,
) -> Result<Check, Error> {
    let n = samples.len() as f64;
    // the finest binning whose smallest bin still expects five samples
    let mut chosen = None;
    for levels in (0..=2).rev() {
        let bins = bins(poly, levels)?;
        let masses = bins
            .iter()
            .map(|b| match params {
                Some(p) => integrate_cauchy_elliptic(b, p),
                None => integrate_cauchy_std(b),
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let total: f64 = masses.iter().sum();
        let smallest = masses.iter().copied().fold(f64::INFINITY, f64::min);
        if bins.len() >= 2 && n * smallest / total >= 5.0 {
            chosen = Some((bins, masses));
            break;
        }
    }
    let Some((bins, mut masses)) = chosen else {
        return Ok(Check {
            name: "goodness_of_fit",
            pass: false,
            fields: vec![(
                "reason",
                json!("too few samples for at least two bins of five"),
            )],
        });
    };
    if tamper {
        let by = |cmp: fn(&f64, &f64) -> bool| {
            (0..masses.len())
                .reduce(|i, j| if cmp(&masses[j], &masses[i]) { j } else { i })
                .expect("at least two bins")
        };
        let (hi, lo) = (by(|a, b| a > b), by(|a, b| a < b));
        masses.swap(hi, lo);
    }
    Ok(match chi_square_gof(samples, &bins, &masses) {
        Ok(GofReport {
            statistic,
            dof,
            p_value,
            ..
        }) => Check {
            name: "goodness_of_fit",
            pass: p_value > GOF_ALPHA,
            fields: vec![
                ("samples", json!(samples.len())),
                ("bins", json!(bins.len())),
                ("statistic", json!(statistic)),
                ("dof", json!(dof)),
                ("p_value", json!(p_value)),
            ],
        },
        Err(e) => Check {
            name: "goodness_of_fit",
            pass: false,
            fields: vec![("reason", json!(e.to_string()))],
        },
    })
}

fn student_check(poly: &PlanePolygon, nu: StudentDof, n: u64, seed: u64) -> Result<Check, Error> {
    let est = integrate_student_mc(poly, nu, n, seed)?;
    let (quad, exhausted) = quadrature(|x| student_pdf(x, nu), poly)?;
    let difference = (est.value - quad).abs();
    let allowed = (3.0 * est.standard_error).clamp(1e-9, 1e-3);
    let mut fields = vec![
        ("nu", json!(nu.get())),
        ("mc", json!(est.value)),
        ("standard_error", json!(est.standard_error)),
        ("quadrature", json!(quad)),
        ("difference", json!(difference)),
    ];
    if exhausted {
        fields.push(("quadrature_budget_exhausted", json!(true)));
    }
    Ok(Check {
        name: "student_mc",
        pass: difference <= allowed,
        fields,
    })
}

/// Only used by replay: re-parse a recorded command line.
pub fn run_recorded(args: &[String]) -> Result<Output, CliError> {
    use clap::Parser;
    let cli =
        Cli::try_parse_from(std::iter::once("polycauchy".to_string()).chain(args.iter().cloned()))
            .map_err(|e| CliError::Usage(format!("recorded arguments no longer parse: {e}")))?;
    run(&cli, args)
}
