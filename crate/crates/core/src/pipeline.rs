//! Report generation shared by the command line and the self-test.
//! Every emitted file starts with the effective configuration.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{
    acyclicity_certificate, assemble_equivariant_complex, assemble_novikov_complex, equivariant_incidence, incidence_rational,
    incidence_series, ComplexError, CyclicMorseData, EquivariantMorseData,
};
use crate::flow::{
    check_transversality, compute_return_endomorphism, find_critical_points, geometric_incidences, lift_critical_points,
    perturb_and_recount, random_admissible_bumps, render_svg, Dir, Field, FlowError, GeometricTable, Scenario, Tolerances,
    Tracer,
};
use crate::io::{algebra_to_value, group_to_value, novikov_to_value, Problem, RationalJson, SeriesJson};
use crate::laurent::expand_rational;
use crate::semilinear::summed_series_direct;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: String,
    pub order: i64,
    pub seed: u64,
    pub svg: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

impl RunConfig {
    pub fn new(command: &str, input: &str) -> Self {
        RunConfig { command: command.into(), input: input.into(), order: 64, seed: 0, svg: true, tolerances: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Named file contents, a verification verdict and console lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Outputs {
    pub files: Vec<(String, String)>,
    pub verified: bool,
    pub messages: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

fn csv_with_config(cfg: &RunConfig, header: &str) -> String {
    format!("# config: {}\n{header}\n", cfg.to_json())
}

fn json_report(cfg: &RunConfig, mut body: serde_json::Map<String, Value>) -> String {
    body.insert("config".into(), serde_json::to_value(cfg).expect("serializable"));
    let mut s = serde_json::to_string_pretty(&Value::Object(body)).expect("serializable");
    s.push('\n');
    s
}

fn d2_verdict<E: crate::complex::NovEntry>(c: &crate::complex::ChainComplexNov<E>) -> (bool, Value) {
    match c.check_d2() {
        Ok(()) => (true, json!("ok")),
        Err(w) => (false, json!({ "degree": w.degree, "target": w.target, "source": w.source, "value": w.value })),
    }
}

/// Incidence tables over `Z((t))`: Cramer closed forms checked against iteration.
pub fn novikov_report_z(d: &CyclicMorseData, cfg: &RunConfig) -> Result<Outputs, PipelineError> {
    let n = cfg.order;
    let mut series_csv = csv_with_config(cfg, "x,y,k,n_k");
    let mut rational_csv = csv_with_config(cfg, "x,y,m,P,Q");
    let mut pairs = Vec::new();
    let mut verified = true;
    for (x, y) in d.adjacent_pairs() {
        let s = incidence_series(d, &x, &y, n)?;
        let r = incidence_rational(d, &x, &y)?;
        let agree = expand_rational(&r, n) == s;
        verified &= agree;
        write_rows(&mut series_csv, &mut rational_csv, &x, &y, &s, &r);
        pairs.push(json!({
            "x": x, "y": y,
            "rational": RationalJson::from(&r),
            "closed_form": r.to_string(),
            "series": SeriesJson::from(&s),
            "agree": agree,
        }));
    }
    let (d2_ok, d2) = d2_verdict(&assemble_novikov_complex(d, n.min(30))?);
    verified &= d2_ok;
    finish(cfg, d, series_csv, rational_csv, pairs, d2, None, verified)
}

fn write_rows(
    series_csv: &mut String,
    rational_csv: &mut String,
    x: &str,
    y: &str,
    s: &crate::laurent::LaurentSeries,
    r: &crate::laurent::RationalFn,
) {
    for k in s.min_exp().min(-1)..=s.trunc() {
        let c = s.coeff(k).unwrap_or_default();
        let _ = writeln!(series_csv, "{x},{y},{k},{c}");
    }
    let join = |v: &[num_bigint::BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(rational_csv, "{x},{y},{},{},{}", r.shift_m(), join(r.num().coeffs()), join(r.den().coeffs()));
}

#[allow(clippy::too_many_arguments)]
fn finish(
    cfg: &RunConfig,
    abel: &CyclicMorseData,
    series_csv: String,
    rational_csv: String,
    pairs: Vec<Value>,
    d2: Value,
    group: Option<Value>,
    verified: bool,
) -> Result<Outputs, PipelineError> {
    let acyclic = match acyclicity_certificate(abel) {
        Ok(c) => serde_json::to_value(c).expect("serializable"),
        Err(e) => json!(e.to_string()),
    };
    let mut body = serde_json::Map::new();
    if let Some(g) = group {
        body.insert("group".into(), g);
    }
    body.insert("pairs".into(), Value::Array(pairs));
    body.insert("d2".into(), d2);
    body.insert("acyclicity".into(), acyclic);
    body.insert("verified".into(), json!(verified));
    let report = json_report(cfg, body);
    let msg = format!("{} incidence pairs, verified: {verified}", abel.adjacent_pairs().len());
    Ok(Outputs {
        files: vec![("series.csv".into(), series_csv), ("rational.csv".into(), rational_csv), ("report.json".into(), report)],
        verified,
        messages: vec![msg],
    })
}

/// Equivariant tables: type-(L) closed forms checked against direct
/// semilinear iteration. For the trivial group the output coincides with
/// [`novikov_report_z`].
pub fn novikov_report_twisted(d: &EquivariantMorseData, cfg: &RunConfig) -> Result<Outputs, PipelineError> {
    let n = cfg.order.max(0) as usize;
    let trivial = d.group.m() == 0;
    let abel = d.abelianize();
    let mut series_csv = csv_with_config(cfg, "x,y,k,n_k");
    let mut rational_csv = csv_with_config(cfg, "x,y,m,P,Q");
    let mut pairs = Vec::new();
    let mut verified = true;
    for (x, y) in d.adjacent_pairs() {
        let (t, e) = equivariant_incidence(d, &x, &y, n)?;
        let s_idx = d.points.iter().find(|p| p.name == y).map(|p| p.index).unwrap_or(0);
        let direct = summed_series_direct(&d.h[&s_idx], &d.lambda[&y], &d.x_class[&x], n).map_err(ComplexError::from)?;
        let direct = match d.direct.get(&(x.clone(), y.clone())) {
            Some(c) if !c.is_zero() => direct
                .add(&crate::twisted::NovikovElt::level_term(d.group.clone(), c.clone(), -1, n as i64))
                .map_err(ComplexError::from)?,
            _ => direct,
        };
        let agree = e == direct || e.sub(&direct).map(|z| z.is_zero()).unwrap_or(false);
        verified &= agree;
        let r = incidence_rational(&abel, &x, &y)?;
        let mut pair = serde_json::Map::new();
        pair.insert("x".into(), json!(x));
        pair.insert("y".into(), json!(y));
        pair.insert("rational".into(), serde_json::to_value(RationalJson::from(&r)).expect("serializable"));
        pair.insert("closed_form".into(), json!(r.to_string()));
        if trivial {
            let s = e.to_laurent().map_err(ComplexError::from)?;
            write_rows(&mut series_csv, &mut rational_csv, &x, &y, &s, &r);
            pair.insert("series".into(), serde_json::to_value(SeriesJson::from(&s)).expect("serializable"));
        } else {
            for k in e.start().min(-1)..=e.trunc() {
                let c = e.coeff(k).map(|a| a.to_string()).unwrap_or_else(|| "0".into());
                let _ = writeln!(series_csv, "{x},{y},{k},{c}");
            }
            let join = |v: &[num_bigint::BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(rational_csv, "{x},{y},{},{},{}", r.shift_m(), join(r.num().coeffs()), join(r.den().coeffs()));
            pair.insert("series".into(), novikov_to_value(&e));
            let cert = crate::twisted::growth_constants_for_type_l(&t);
            pair.insert(
                "type_l".into(),
                json!({
                    "Y": t.y.iter().map(algebra_to_value).collect::<Vec<_>>(),
                    "A": t.a.iter().map(|r| r.iter().map(algebra_to_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "X": t.x.iter().map(algebra_to_value).collect::<Vec<_>>(),
                    "growth": { "N": cert.n.to_string(), "A": cert.a.to_string(), "B": cert.b.to_string() },
                }),
            );
        }
        pair.insert("agree".into(), json!(agree));
        pairs.push(Value::Object(pair));
    }
    let (d2_ok, d2) = d2_verdict(&assemble_equivariant_complex(d, n.min(30))?);
    verified &= d2_ok;
    let group = (!trivial).then(|| group_to_value(&d.group));
    finish(cfg, &abel, series_csv, rational_csv, pairs, d2, group, verified)
}

pub fn run_novikov(p: &Problem, cfg: &RunConfig) -> Result<Outputs, PipelineError> {
    if p.is_twisted() {
        novikov_report_twisted(&p.data, cfg)
    } else {
        novikov_report_z(&p.cyclic(), cfg)
    }
}

/// Everything the flow command computes, before rendering.
#[derive(Clone, Debug)]
pub struct FlowRun {
    pub scenario: Scenario,
    pub points: Vec<crate::flow::LiftedPoint>,
    pub transversality: crate::flow::TransversalityReport,
    pub route_a: Result<GeometricTable, FlowError>,
    pub route_b: Option<Result<crate::flow::ReturnData, FlowError>>,
    pub perturbation: Option<Result<crate::flow::PerturbationReport, FlowError>>,
}

impl FlowRun {
    pub fn cyclic(&self) -> Option<CyclicMorseData> {
        match &self.route_b {
            Some(Ok(r)) => Some(r.to_cyclic(&self.points)),
            _ => None,
        }
    }
}

/// Critical points, both counting routes and the perturbation experiment.
pub fn compute_flow(sc: &Scenario, seed: u64) -> Result<FlowRun, FlowError> {
    sc.validate()?;
    let map = sc.map();
    let tol = &sc.tolerances;
    let crit = find_critical_points(&map, tol)?;
    let idx: Vec<usize> = crit.iter().map(|c| c.index).collect();
    let euler = idx.iter().filter(|&&i| i == 0).count() as i64 - idx.iter().filter(|&&i| i == 1).count() as i64
        + idx.iter().filter(|&&i| i == 2).count() as i64;
    if euler != 0 {
        return Err(FlowError::InvalidMap(format!("critical points have Euler characteristic {euler}, expected 0")));
    }
    map.check_fiber(sc.cut, 1024)?;
    let points = lift_critical_points(&crit, sc.cut);
    let field = Field::gradient_of(&map);
    let tracer = Tracer::new(&field, &points, tol);
    let transversality = check_transversality(&tracer, sc.cut, sc.k_max.max(0) as usize)?;
    let route_a = geometric_incidences(&tracer, sc.cut, sc.k_max);
    let route_b = match (sc.fiber, sc.delta) {
        (Some(f), Some(d)) => Some(compute_return_endomorphism(&tracer, sc.cut, d, f)),
        _ => None,
    };
    let perturbation = match &route_a {
        Ok(before) if !points.is_empty() => {
            let bumps =
                if sc.bumps.is_empty() { random_admissible_bumps(&map, &points, tol, seed, 3) } else { sc.bumps.clone() };
            Some(perturb_and_recount(&map, &points, tol, sc.cut, &bumps, sc.k_max, Some(before)))
        }
        _ => None,
    };
    Ok(FlowRun { scenario: sc.clone(), points, transversality, route_a, route_b, perturbation })
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Renders a [`FlowRun`]; the verdict fails on a two-route mismatch,
/// a perturbation difference inside the hypothesis or `∂² ≠ 0`.
pub fn flow_report(run: &FlowRun, cfg: &RunConfig) -> Result<Outputs, PipelineError> {
    let sc = &run.scenario;
    let mut messages = Vec::new();
    let mut verified = true;
    let mut crit_csv = csv_with_config(cfg, "name,index,x,y,F,eig_min,eig_max");
    for p in &run.points {
        let c = &p.crit;
        let _ = writeln!(
            crit_csv,
            "{},{},{:.12},{:.12},{:.12},{:.9},{:.9}",
            p.name,
            c.index,
            c.position[0],
            c.position[1],
            c.value + p.shift as f64,
            c.eigenvalues[0],
            c.eigenvalues[1]
        );
    }
    let cyclic = run.cyclic();
    let mut nk_csv = csv_with_config(cfg, "x,y,k,route_a,route_b");
    let mut comparison = Vec::new();
    if let Ok(table) = &run.route_a {
        for (x, y) in table.counts.keys() {
            let b = cyclic.as_ref().map(|d| incidence_series(d, x, y, sc.k_max)).transpose()?;
            let mut equal = true;
            for k in -1..=sc.k_max {
                let a = table.get(x, y, k);
                let bk = b.as_ref().map(|s| s.coeff(k).unwrap_or_default());
                if let Some(bk) = &bk {
                    equal &= *bk == a.into();
                }
                let _ = writeln!(nk_csv, "{x},{y},{k},{a},{}", bk.map(|v| v.to_string()).unwrap_or_default());
            }
            if b.is_some() {
                comparison.push(json!({ "x": x, "y": y, "equal": equal }));
                verified &= equal;
            }
        }
    }
    let mut cc_csv = csv_with_config(cfg, "check,pass,samples,reached,worst_margin,witness_start,witness_landing");
    let mut body = serde_json::Map::new();
    body.insert("scenario".into(), serde_json::to_value(sc).expect("serializable"));
    body.insert("critical_points".into(), json!(run.points.len()));
    body.insert("transversality".into(), serde_json::to_value(&run.transversality).expect("serializable"));
    match &run.route_a {
        Ok(_) => {}
        Err(e) => {
            messages.push(format!("direct counting unavailable: {e}"));
            body.insert("route_a_error".into(), json!(e.to_string()));
        }
    }
    match &run.route_b {
        None => {
            body.insert("route_b".into(), json!("no fiber height given"));
        }
        Some(Err(e)) => {
            messages.push(format!("return endomorphism unavailable: {e}"));
            body.insert("route_b".into(), json!(e.to_string()));
        }
        Some(Ok(r)) => {
            let w = &r.witness;
            for c in [&w.b1, &w.b1_soles, &w.b0, &w.b0_soles] {
                let (s, l) = c.witness.map(|(a, b)| (format!("{a:.12}"), format!("{b:.12}"))).unwrap_or_default();
                let wm = c.worst_margin.map(|m| format!("{m:.12}")).unwrap_or_default();
                let _ = writeln!(cc_csv, "{},{},{},{},{wm},{s},{l}", c.name, c.pass, c.samples, c.reached);
            }
            let d = r.to_cyclic(&run.points);
            let closed: Vec<Value> = d
                .adjacent_pairs()
                .iter()
                .map(|(x, y)| {
                    let q = incidence_rational(&d, x, y).expect("complete data");
                    json!({ "x": x, "y": y, "rational": RationalJson::from(&q), "closed_form": q.to_string() })
                })
                .collect();
            let (d2_ok, d2) = d2_verdict(&assemble_novikov_complex(&d, 30)?);
            verified &= d2_ok;
            let acyclic = acyclicity_certificate(&d).map(|c| serde_json::to_value(c).expect("serializable"))?;
            body.insert(
                "route_b".into(),
                json!({
                    "h0": r.h0, "h1": r.h1,
                    "X": r.x_class, "lambda": r.lambda,
                    "direct": r.direct.iter().map(|((x, y), n)| json!({"x": x, "y": y, "n": n})).collect::<Vec<_>>(),
                    "condition_c": w.summary(),
                    "delta": num(w.delta),
                }),
            );
            body.insert("closed_forms".into(), Value::Array(closed));
            body.insert("d2".into(), d2);
            body.insert("acyclicity".into(), acyclic);
        }
    }
    body.insert("two_route".into(), Value::Array(comparison));
    match &run.perturbation {
        Some(Ok(p)) => {
            if !p.identical && !p.outside_hypothesis {
                verified = false;
            }
            body.insert(
                "perturbation".into(),
                json!({
                    "bumps": p.bumps, "identical": p.identical, "outside_hypothesis": p.outside_hypothesis,
                    "differences": p.differences,
                }),
            );
        }
        Some(Err(e)) => {
            body.insert("perturbation".into(), json!(e.to_string()));
        }
        None => {}
    }
    body.insert("verified".into(), json!(verified));
    let mut files = vec![
        ("critical.csv".to_string(), crit_csv),
        ("nk.csv".to_string(), nk_csv),
        ("condition_c.csv".to_string(), cc_csv),
        ("flow.json".to_string(), json_report(cfg, body)),
    ];
    if cfg.svg {
        files.push(("flow.svg".to_string(), flow_svg(run, cfg)?));
    }
    messages.insert(0, format!("{}: {} critical points, verified: {verified}", sc.name, run.points.len()));
    Ok(Outputs { files, verified, messages })
}

fn flow_svg(run: &FlowRun, cfg: &RunConfig) -> Result<String, FlowError> {
    let sc = &run.scenario;
    let map = sc.map();
    let field = Field::gradient_of(&map);
    let tracer = Tracer::new(&field, &run.points, &sc.tolerances);
    let fiber: Vec<[f64; 2]> = (0..=256).map(|i| map.fiber_point(sc.cut, i as f64 / 256.0)).collect::<Result<_, _>>()?;
    let mut paths = Vec::new();
    for (i, p) in run.points.iter().enumerate() {
        if p.index() != 1 {
            continue;
        }
        for sigma in [1.0, -1.0] {
            for (dir, color) in [(Dir::Down, "#1f77b4"), (Dir::Up, "#d62728")] {
                let level = if dir == Dir::Down { sc.cut } else { sc.cut + 1.0 };
                if let Ok(t) = tracer.separatrix(i, sigma, dir, level, 2, true) {
                    paths.push((t.path, color.to_string()));
                }
            }
        }
    }
    let crit: Vec<_> = run.points.iter().map(|p| p.crit.clone()).collect();
    let svg = render_svg(&sc.name, &crit, &fiber, &paths);
    Ok(svg.replacen("<title>", &format!("<desc>config: {}</desc>\n<title>", xml_escape(&cfg.to_json())), 1))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn run_flow(sc: &Scenario, cfg: &RunConfig) -> Result<Outputs, PipelineError> {
    let run = compute_flow(sc, cfg.seed)?;
    flow_report(&run, cfg)
}
