use std::fmt::Write as _;

use chebotarev::abstract_model::{random_abstract_model, FiniteGroup, Measure};
use chebotarev::covers::{places_above_oracle, splitting_data, FrobeniusDataRepr, GroupElement};
use chebotarev::function_field::places_up_to_degree;
use chebotarev::theorem::{make_gamma_context, map_places, verify, TheoremReport, VerifyOptions};
use chebotarev::{Error, Result};
use serde::Serialize;

use crate::config::{resolve, resolve_gamma, CommonArgs, Format};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rendered output plus the assertion failures found while producing it.
pub struct Output {
    pub text: String,
    pub failures: Vec<String>,
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

fn json_text<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Config(e.to_string()))
}

fn join(set: &[GroupElement]) -> String {
    set.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct PlaceLine {
    degree: usize,
    #[serde(flatten)]
    data: FrobeniusDataRepr,
    /// Disagreements with the oracle; empty when it agrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Vec<String>>,
}

#[derive(Serialize)]
struct PlacesReport<'a> {
    version: &'static str,
    config: &'a crate::config::RunConfig,
    places: Vec<PlaceLine>,
}

pub fn places(args: &CommonArgs) -> Result<Output> {
    let r = resolve(args, None)?;
    let places = places_up_to_degree(&r.field, args.deg, args.max_enum)?;
    let lines = map_places(args.workers, &places, |p| {
        let data = splitting_data(&r.cover, p)?;
        let oracle = if args.oracle {
            Some(places_above_oracle(&r.cover, p, args.max_enum)?.disagreements(&data))
        } else {
            None
        };
        Ok(PlaceLine {
            degree: p.degree(),
            data: data.to_repr(),
            oracle,
        })
    })?;
    let failures = lines
        .iter()
        .filter_map(|l| match &l.oracle {
            Some(d) if !d.is_empty() => Some(format!("{}: {}", l.data.place_label, d.join("; "))),
            _ => None,
        })
        .collect();

    let oracle_cell = |l: &PlaceLine| match &l.oracle {
        None => "-".to_string(),
        Some(d) if d.is_empty() => "agree".to_string(),
        Some(_) => "DISAGREE".to_string(),
    };
    let text = match args.format {
        Format::Json => json_text(&PlacesReport {
            version: VERSION,
            config: &r.config,
            places: lines,
        })?,
        Format::Csv => csv_text(
            &[
                "place",
                "degree",
                "e",
                "f",
                "places_above",
                "deg_Q",
                "decomposition",
                "inertia",
                "frobenius",
                "oracle",
            ],
            lines
                .iter()
                .map(|l| {
                    vec![
                        l.data.place_label.clone(),
                        l.degree.to_string(),
                        l.data.e.to_string(),
                        l.data.f.to_string(),
                        l.data.places_above.to_string(),
                        l.data.deg_q.to_string(),
                        join(&l.data.decomposition),
                        join(&l.data.inertia),
                        join(&l.data.frobenius),
                        oracle_cell(l),
                    ]
                })
                .collect(),
        )?,
        Format::Pretty => {
            let mut s = format!(
                "{} over F_{}  (chebotarev {VERSION}, seed {})\n",
                r.config.cover, r.config.q, args.seed
            );
            let _ = writeln!(
                s,
                "{:<20} {:>3} {:>3} {:>3} {:>5}  frobenius",
                "place", "e", "f", "#Q", "deg_Q"
            );
            for l in &lines {
                let _ = writeln!(
                    s,
                    "{:<20} {:>3} {:>3} {:>3} {:>5}  {}{}",
                    l.data.place_label,
                    l.data.e,
                    l.data.f,
                    l.data.places_above,
                    l.data.deg_q,
                    join(&l.data.frobenius),
                    if l.oracle.is_some() {
                        format!("  [{}]", oracle_cell(l))
                    } else {
                        String::new()
                    }
                );
            }
            s
        }
    };
    Ok(Output { text, failures })
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    version: &'static str,
    config: &'a crate::config::RunConfig,
    pass: bool,
    reports: &'a [TheoremReport],
}

pub fn verify_cmd(args: &CommonArgs, gamma: &str) -> Result<Output> {
    let r = resolve(args, Some(gamma))?;
    let gammas = resolve_gamma(&r.cover, gamma)?;
    let opts = VerifyOptions {
        oracle: args.oracle,
        max_degree: args.deg,
        workers: args.workers,
        enumeration_limit: args.max_enum,
    };
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for g in &gammas {
        let ctx = make_gamma_context(&r.cover, g)?;
        let report = verify(&ctx, &opts)?;
        if let Err(e) = report.check() {
            failures.push(format!("gamma {g}: {e}"));
        }
        log_summary(&report);
        reports.push(report);
    }
    let text = match args.format {
        Format::Json => json_text(&VerifyReport {
            version: VERSION,
            config: &r.config,
            pass: failures.is_empty(),
            reports: &reports,
        })?,
        Format::Csv => {
            let mut header = vec!["gamma".to_string()];
            let mut rows = Vec::new();
            for report in &reports {
                let body = report.to_csv()?;
                let mut rd = csv::Reader::from_reader(body.as_bytes());
                if header.len() == 1 {
                    let h = rd.headers().map_err(|e| Error::Config(e.to_string()))?;
                    header.extend(h.iter().map(str::to_string));
                }
                for rec in rd.records() {
                    let rec = rec.map_err(|e| Error::Config(e.to_string()))?;
                    let mut row = vec![report.gamma.to_string()];
                    row.extend(rec.iter().map(str::to_string));
                    rows.push(row);
                }
            }
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_text(&header, rows)?
        }
        Format::Pretty => {
            let mut s = format!(
                "chebotarev {VERSION}  seed {}  workers {}\n",
                args.seed, args.workers
            );
            for report in &reports {
                let _ = writeln!(s, "\n{report}");
            }
            s
        }
    };
    Ok(Output { text, failures })
}

fn log_summary(report: &TheoremReport) {
    let mut line = format!(
        "gamma {}: theorem {}",
        report.gamma,
        if report.theorem_pass { "pass" } else { "FAIL" }
    );
    if let Some(c) = &report.corollary {
        let _ = write!(line, ", corollary {:?}, S = {}", c.verdict, c.sum);
    }
    if report.oracle {
        let agree = report
            .places
            .iter()
            .filter(|r| r.oracle.as_deref() == Some("agree"))
            .count();
        let _ = write!(
            line,
            ", oracle agrees with the formula at {agree}/{} places",
            report.places.len()
        );
    }
    eprintln!("{line}");
}

#[derive(Debug, Default, Serialize)]
pub struct AbstractSummary {
    version: &'static str,
    group: String,
    order: usize,
    trials: u64,
    seed: u64,
    places: u64,
    measure_sums: u64,
    psi_checks: u64,
    phi_checks: u64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<AbstractFailure>,
}

#[derive(Debug, Serialize)]
struct AbstractFailure {
    trial: u64,
    seed: u64,
    error: String,
    reason: &'static str,
    model: serde_json::Value,
}

pub fn abstract_cmd(group: &str, trials: u64, seed: u64, format: Format) -> Result<Output> {
    let g = FiniteGroup::library(group)?;
    if trials == 0 {
        return Err(Error::Config("--trials must be positive".into()));
    }
    let mut sum = AbstractSummary {
        version: VERSION,
        group: g.name.clone(),
        order: g.order(),
        trials,
        seed,
        ..Default::default()
    };
    for t in 0..trials {
        let model_seed = seed.wrapping_add(t);
        let model = random_abstract_model(&g, model_seed);
        if let Err(e) = check_model(&model, &mut sum) {
            let value = serde_json::from_str(&model.to_json()).unwrap_or(serde_json::Value::Null);
            sum.failure = Some(AbstractFailure {
                trial: t,
                seed: model_seed,
                reason: e.reason(),
                error: e.to_string(),
                model: value,
            });
            break;
        }
    }
    sum.pass = sum.failure.is_none();
    let failures = sum.failure.iter().map(|f| f.error.clone()).collect();
    let text = match format {
        Format::Json => json_text(&sum)?,
        Format::Csv => csv_text(
            &[
                "group",
                "order",
                "trials",
                "seed",
                "places",
                "measure_sums",
                "psi_checks",
                "phi_checks",
                "pass",
            ],
            vec![vec![
                sum.group.clone(),
                sum.order.to_string(),
                sum.trials.to_string(),
                sum.seed.to_string(),
                sum.places.to_string(),
                sum.measure_sums.to_string(),
                sum.psi_checks.to_string(),
                sum.phi_checks.to_string(),
                sum.pass.to_string(),
            ]],
        )?,
        Format::Pretty => {
            let mut s = format!(
                "{} (order {}): {} models from seed {}\n",
                sum.group, sum.order, sum.trials, sum.seed
            );
            let _ = writeln!(
                s,
                "places {}  measure sums {}  psi checks {}  phi checks {}  {}",
                sum.places,
                sum.measure_sums,
                sum.psi_checks,
                sum.phi_checks,
                if sum.pass { "pass" } else { "FAIL" }
            );
            if let Some(f) = &sum.failure {
                let _ = writeln!(s, "trial {} (seed {}): {}", f.trial, f.seed, f.error);
            }
            s
        }
    };
    Ok(Output { text, failures })
}

fn check_model(
    model: &chebotarev::abstract_model::AbstractModel,
    sum: &mut AbstractSummary,
) -> Result<()> {
    model.validate()?;
    let g = &model.group;
    let n = model.geometric.len() as u64;
    for i in 0..model.places.len() {
        sum.places += 1;
        let mut total = Measure::from_integer(0);
        for gamma in g.elements() {
            let m = model.measure(i, gamma)?;
            total += m;
            if model.places[i].degree == 1 {
                model.psi_fiber_count(i, gamma)?;
                sum.psi_checks += 1;
                let phi = model.phi_fiber_count(i, gamma)?;
                let predicted = m * n;
                if phi != predicted {
                    return Err(Error::FormulaMismatch {
                        direct: phi.to_string(),
                        formula: predicted.to_string(),
                    });
                }
                sum.phi_checks += 1;
            }
        }
        if total != Measure::from_integer(1) {
            return Err(Error::FormulaMismatch {
                direct: total.to_string(),
                formula: "1".into(),
            });
        }
        sum.measure_sums += 1;
    }
    Ok(())
}
