use std::fs;
use std::io::Write;

use edgestat::checks::{anti_concentration_check, brun_check, shift_inequality_check};
use edgestat::distribution::subset_count_within;
use edgestat::moments::{closed_form_moments, distribution_moments};
use edgestat::search::{construction_bound, local_search, EvalConfig, SearchConfig, SearchRecord};
use edgestat::{
    brute_force_table, exact_distribution_with_budget, mc_distribution, parse_graph6, write_graph6,
    Construction, Graph, RecordsStore,
};
use serde_json::json;

use crate::{
    CheckArgs, ConstructArgs, DistArgs, Format, MomentsArgs, Output, SearchArgs, Source, VerifyArgs,
};

pub enum Status {
    Ok,
    CheckFailed,
}

pub type CmdResult = Result<Status, String>;

fn err(e: edgestat::Error) -> String {
    e.to_string()
}

fn load_graph(src: &Source, seed: Option<u64>) -> Result<Graph, String> {
    if let Some(s) = &src.g6 {
        return parse_graph6(s.trim()).map_err(err);
    }
    if let Some(path) = &src.file {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| format!("{}: no graph6 line", path.display()))?;
        return parse_graph6(line).map_err(err);
    }
    let spec = src.construct.as_deref().expect("clap requires one source");
    build(spec, seed)
}

fn build(spec: &str, seed: Option<u64>) -> Result<Graph, String> {
    let c: Construction = spec.parse().map_err(err)?;
    if c.is_randomized() && seed.is_none() {
        return Err(format!("construction `{spec}` is randomized; pass --seed"));
    }
    c.build(seed.unwrap_or(0)).map_err(err)
}

fn emit(output: &Output, text: String) -> Result<(), String> {
    let mut text = text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn to_json(v: &impl serde::Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn dist(a: DistArgs) -> CmdResult {
    let g = load_graph(&a.source, a.seed)?;
    let exact = !a.mc && subset_count_within(g.n(), a.k, a.budget).is_ok();
    let text = if exact {
        let d = exact_distribution_with_budget(&g, a.k, a.budget).map_err(err)?;
        match a.output.format {
            Format::Json => to_json(&d.to_json())?,
            Format::Csv => {
                let rows: Vec<Vec<String>> = (0..d.counts().len())
                    .map(|l| {
                        vec![
                            l.to_string(),
                            d.count(l).to_string(),
                            format!("{:.17e}", d.probability_f64(l)),
                        ]
                    })
                    .collect();
                csv(&["l", "count", "probability"], &rows)
            }
        }
    } else {
        let seed = a.seed.ok_or("sampling needs --seed")?;
        let est = mc_distribution(&g, a.k, a.samples, seed).map_err(err)?;
        match a.output.format {
            Format::Json => to_json(&est.to_json())?,
            Format::Csv => {
                let rows: Vec<Vec<String>> = est
                    .to_json()
                    .estimates
                    .iter()
                    .map(|e| {
                        vec![
                            e.l.to_string(),
                            e.hits.to_string(),
                            format!("{:.17e}", e.p),
                            format!("{:.17e}", e.se),
                        ]
                    })
                    .collect();
                csv(&["l", "hits", "probability", "std_error"], &rows)
            }
        }
    };
    emit(&a.output, text)?;
    Ok(Status::Ok)
}

pub fn moments(a: MomentsArgs) -> CmdResult {
    let g = load_graph(&a.source, a.seed)?;
    let closed = closed_form_moments(&g, a.k).map_err(err)?;
    let from_dist = match subset_count_within(g.n(), a.k, a.budget) {
        Ok(_) => Some(distribution_moments(
            &exact_distribution_with_budget(&g, a.k, a.budget).map_err(err)?,
        )),
        Err(_) => None,
    };
    let agree = from_dist.as_ref().map(|d| *d == closed);
    let text = match a.output.format {
        Format::Json => to_json(&json!({
            "n": g.n(),
            "k": a.k,
            "closed_form": closed.to_json(),
            "distribution": from_dist.as_ref().map(|d| d.to_json()),
            "agree": agree,
        }))?,
        Format::Csv => {
            let c = closed.to_json();
            let d = from_dist.as_ref().map(|d| d.to_json());
            let mut rows = Vec::new();
            let mut push = |name: String, cv: &String, dv: Option<&String>| {
                rows.push(vec![name, cv.clone(), dv.cloned().unwrap_or_default()]);
            };
            push("mu".into(), &c.mu, d.as_ref().map(|d| &d.mu));
            push(
                "central2".into(),
                &c.central2,
                d.as_ref().map(|d| &d.central2),
            );
            push(
                "central3".into(),
                &c.central3,
                d.as_ref().map(|d| &d.central3),
            );
            push(
                "central4".into(),
                &c.central4,
                d.as_ref().map(|d| &d.central4),
            );
            for r in 0..4 {
                push(
                    format!("binom_moment_{}", r + 1),
                    &c.binom_moments[r],
                    d.as_ref().map(|d| &d.binom_moments[r]),
                );
            }
            csv(&["quantity", "closed_form", "distribution"], &rows)
        }
    };
    emit(&a.output, text)?;
    Ok(match agree {
        Some(false) => Status::CheckFailed,
        _ => Status::Ok,
    })
}

fn check_rows(checks: &[edgestat::CheckReport]) -> Vec<Vec<String>> {
    checks
        .iter()
        .map(|c| {
            vec![
                c.quantity.clone(),
                c.lhs.clone(),
                c.rhs.clone(),
                c.holds.to_string(),
                c.slack.clone(),
            ]
        })
        .collect()
}

const CHECK_HEADER: [&str; 5] = ["quantity", "lhs", "rhs", "holds", "slack"];

pub fn check(a: CheckArgs) -> CmdResult {
    let g = load_graph(&a.source, a.seed)?;
    let (text, holds) = if let Some(l) = a.l {
        let d = exact_distribution_with_budget(&g, a.k, a.budget).map_err(err)?;
        let rep = anti_concentration_check(&d, l).map_err(err)?;
        let text = match a.output.format {
            Format::Json => to_json(&rep.to_json())?,
            Format::Csv => csv(&CHECK_HEADER, &check_rows(&rep.checks)),
        };
        (text, rep.holds())
    } else if let Some(t) = a.t {
        let rep = shift_inequality_check(&g, a.k, t, a.budget).map_err(err)?;
        let text = match a.output.format {
            Format::Json => to_json(&rep.to_json())?,
            Format::Csv => csv(&CHECK_HEADER, &check_rows(&rep.checks)),
        };
        (text, rep.holds())
    } else {
        let r = a.r.expect("clap requires one of -l, -t, -r");
        let rep = brun_check(&g, a.k, r).map_err(err)?.to_json();
        let text = match a.output.format {
            Format::Json => to_json(&rep)?,
            Format::Csv => csv(
                &["r", "binomial_moment", "poisson_moment", "ratio"],
                &[vec![
                    rep.r.to_string(),
                    rep.binomial_moment.clone(),
                    rep.poisson_moment.clone(),
                    rep.ratio.clone().unwrap_or_default(),
                ]],
            ),
        };
        (text, true)
    };
    emit(&a.output, text)?;
    Ok(if holds {
        Status::Ok
    } else {
        Status::CheckFailed
    })
}

fn record_text(r: &SearchRecord, format: Format) -> Result<String, String> {
    match format {
        Format::Json => to_json(r),
        Format::Csv => Ok(csv(
            &[
                "n",
                "k",
                "l",
                "density",
                "exact",
                "graph",
                "edges",
                "method",
                "iterations",
                "seed",
            ],
            &[vec![
                r.n.to_string(),
                r.k.to_string(),
                r.l.to_string(),
                r.density.clone(),
                r.exact.to_string(),
                r.graph.clone(),
                r.edges.to_string(),
                r.method.to_string(),
                r.iterations.to_string(),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
            ]],
        )),
    }
}

pub fn search(a: SearchArgs) -> CmdResult {
    let record = if a.brute {
        brute_force_table(a.n, !a.no_prune)
            .and_then(|t| t.record(a.k, a.l))
            .map_err(err)?
    } else {
        let seed = a.seed.ok_or("local search needs --seed")?;
        let cfg = SearchConfig {
            iterations: a.iterations,
            restarts: a.restarts,
            eval: EvalConfig {
                budget: a.budget,
                mc_samples: a.samples,
                mc_seed: seed,
            },
            ..SearchConfig::default()
        };
        local_search(a.n, a.k, a.l, &cfg, seed).map_err(err)?
    };
    let mut store = RecordsStore::open(&a.records).map_err(err)?;
    if store.insert(record.clone()).map_err(err)? {
        store.save().map_err(err)?;
        eprintln!(
            "edgestat: stored record for ({}, {}, {}) in {}",
            a.n,
            a.k,
            a.l,
            a.records.display()
        );
    }
    emit(&a.output, record_text(&record, a.output.format)?)?;
    Ok(Status::Ok)
}

pub fn construct(a: ConstructArgs) -> CmdResult {
    let text = if let Some(spec) = &a.construct {
        let g = build(spec, a.seed)?;
        match a.output.format {
            Format::Json => to_json(
                &json!({ "construction": spec, "n": g.n(), "m": g.m(), "graph": write_graph6(&g) }),
            )?,
            Format::Csv => csv(
                &["construction", "n", "m", "graph"],
                &[vec![
                    spec.clone(),
                    g.n().to_string(),
                    g.m().to_string(),
                    write_graph6(&g),
                ]],
            ),
        }
    } else {
        let (n, k, l) = match (a.n, a.k, a.l) {
            (Some(n), Some(k), Some(l)) => (n, k, l),
            _ => return Err("pass --construct SPEC, or -n, -k and -l".into()),
        };
        let seed = a
            .seed
            .ok_or("the catalogue includes seeded gnp draws; pass --seed")?;
        let cfg = EvalConfig {
            budget: a.budget,
            mc_samples: a.samples,
            mc_seed: seed,
        };
        record_text(
            &construction_bound(n, k, l, seed, &cfg).map_err(err)?,
            a.output.format,
        )?
    };
    emit(&a.output, text)?;
    Ok(Status::Ok)
}

pub fn verify(a: VerifyArgs) -> CmdResult {
    let outcomes = edgestat::verify::run_all();
    let text = match a.output.format {
        Format::Json => to_json(&outcomes)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = outcomes
                .iter()
                .map(|o| {
                    vec![
                        o.id.to_string(),
                        o.name.to_string(),
                        o.passed.to_string(),
                        o.detail.clone(),
                    ]
                })
                .collect();
            csv(&["id", "name", "passed", "detail"], &rows)
        }
    };
    if a.output.format == Format::Json && a.output.out.is_none() {
        for o in &outcomes {
            eprintln!("{}", o.line());
        }
    }
    emit(&a.output, text)?;
    let passed = outcomes.iter().filter(|o| o.passed).count();
    eprintln!("edgestat: {passed}/{} criteria passed", outcomes.len());
    Ok(if passed == outcomes.len() {
        Status::Ok
    } else {
        Status::CheckFailed
    })
}
