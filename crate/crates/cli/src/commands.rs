use std::fmt::Write as _;

use serde_json::json;

use recperm::composition::CenteredComposition;
use recperm::exact::boundary::{composition_count, composition_count_formula, d_count, d_ext, martin_ratio, phi_boundary};
use recperm::exact::extension::extension_count;
use recperm::exact::laws::Model;
use recperm::exact::polya::{pe_pmf, pe_pmf_printed};
use recperm::exact::stirling::record_stirling_tables;
use recperm::exact::table::{pushforward_table, window_table, DistTable};
use recperm::params::{GeneralParams, LimitFamily, TwoParam};
use recperm::perm::Permutation;
use recperm::rational::format_rational;
use recperm::records::{extract_records, RecordValues};
use recperm::sample::{
    sample_conditioned_with, sample_from_shape_with, sample_general_with, sample_integer_window_with, sample_json,
    sample_limit_with, sample_shape_with, sample_two_param_with, substream, ShapeParams,
};
use recperm::shape::TwoSidedShape;
use recperm::verify::moments::record_moments;
use recperm::verify::{mc_asymptotics, run_suite, Experiment, Suite, SuiteConfig};
use recperm::{Error, Result};

use crate::{Cli, Command, ExactCommand, Format, McArgs, ModelArgs, ModelKind, SampleArgs, VerifyArgs};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Sample(a) => sample(a, cli.format).map(Output::ok),
        Command::Exact(e) => exact(e, cli.format).map(Output::ok),
        Command::Verify(v) => verify(v, cli.format),
        Command::Mc(m) => mc(m, cli.format),
    }
}

fn read_shape(path: &std::path::Path) -> Result<TwoSidedShape> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))?;
    TwoSidedShape::from_json(&s)
}

fn integer(s: &str, name: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Argument(format!("{name} = {s:?} must be a positive integer for the window model")))
}

fn family(m: &ModelArgs) -> Result<LimitFamily> {
    m.family
        .as_deref()
        .ok_or_else(|| Error::Argument("--family is required for the limit model".into()))?
        .parse()
}

fn exact_model(m: &ModelArgs) -> Result<Model> {
    Ok(match m.model {
        ModelKind::TwoParam => Model::TwoParam(TwoParam::parse(&m.theta, &m.zeta)?),
        ModelKind::General => Model::General(GeneralParams::parse(&m.theta, &m.zeta, &m.alpha)?),
        ModelKind::Limit => Model::Limit(family(m)?),
        ModelKind::FromShape => {
            let path = m
                .shape_file
                .as_deref()
                .ok_or_else(|| Error::Argument("--shape-file is required".into()))?;
            Model::FixedShape(read_shape(path)?.to_exact())
        }
        other => return Err(Error::Argument(format!("no exact table for model {other:?}"))),
    })
}

fn emit_table(t: &DistTable, format: Format) -> String {
    match format {
        Format::Json => t.to_json() + "\n",
        Format::Csv => t.to_csv(),
        Format::Table => {
            let mut s = String::new();
            for (p, q) in t.entries() {
                let _ = writeln!(s, "{p}\t{}", format_rational(q));
            }
            s
        }
    }
}

fn sample(a: &SampleArgs, format: Format) -> Result<String> {
    let m = &a.model;
    if a.n == 0 && !matches!(m.model, ModelKind::Shape | ModelKind::Conditioned) {
        return Err(Error::Argument("--n must be positive".into()));
    }
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(if m.model == ModelKind::Shape { "rho,center_index\n" } else { "perm,l,u\n" });
    }
    let shape_params = || -> Result<ShapeParams> {
        Ok(if m.alpha.trim() == "tail:0" {
            TwoParam::parse(&m.theta, &m.zeta)?.into()
        } else {
            GeneralParams::parse(&m.theta, &m.zeta, &m.alpha)?.into()
        })
    };
    for t in 0..a.trials {
        let mut rng = substream(a.seed, t);
        let word: Permutation = match m.model {
            ModelKind::TwoParam => sample_two_param_with(a.n, &TwoParam::parse(&m.theta, &m.zeta)?, &mut rng)?,
            ModelKind::General => sample_general_with(a.n, &GeneralParams::parse(&m.theta, &m.zeta, &m.alpha)?, rng)?,
            ModelKind::Limit => sample_limit_with(a.n, &family(m)?, &mut rng)?,
            ModelKind::FromShape => {
                let path = m
                    .shape_file
                    .as_deref()
                    .ok_or_else(|| Error::Argument("--shape-file is required".into()))?;
                sample_from_shape_with(&read_shape(path)?, a.n, &mut rng)?
            }
            ModelKind::ShapeConstruction => {
                let shape = sample_shape_with(&shape_params()?, a.k, &mut rng)?;
                sample_from_shape_with(&shape, a.n, &mut rng)?
            }
            ModelKind::Conditioned => {
                let rv: RecordValues = a
                    .profile
                    .as_deref()
                    .ok_or_else(|| Error::Argument("--profile is required for the conditioned model".into()))?
                    .parse()?;
                sample_conditioned_with(&rv, &mut rng)?
            }
            ModelKind::Window => {
                let (th, ze) = (integer(&m.theta, "theta")?, integer(&m.zeta, "zeta")?);
                sample_integer_window_with(a.n, th, ze, &mut rng)?
            }
            ModelKind::Shape => {
                let shape = sample_shape_with(&shape_params()?, a.k, &mut rng)?;
                match format {
                    Format::Csv => {
                        let rho: Vec<String> = shape.ascending().iter().map(|x| x.to_string()).collect();
                        let _ = writeln!(out, "\"{}\",{}", rho.join(","), shape.left_len());
                    }
                    _ => {
                        out.push_str(&shape.to_json());
                        out.push('\n');
                    }
                }
                continue;
            }
        };
        match format {
            Format::Table => {
                let _ = writeln!(out, "{word}");
            }
            Format::Json => {
                out.push_str(&sample_json(&word).to_string());
                out.push('\n');
            }
            Format::Csv => {
                let prof = extract_records(&word);
                let _ = writeln!(out, "\"{word}\",{},{}", prof.lower_count(), prof.upper_count());
            }
        }
    }
    Ok(out)
}

fn composition(s: &str) -> Result<CenteredComposition> {
    s.parse()
}

fn scalar(name: &str, value: String, format: Format) -> String {
    match format {
        Format::Json => json!({ name: value }).to_string() + "\n",
        Format::Csv => format!("{name}\n{value}\n"),
        Format::Table => value + "\n",
    }
}

fn exact(e: &ExactCommand, format: Format) -> Result<String> {
    Ok(match e {
        ExactCommand::Table { model, n } => {
            let table = if model.model == ModelKind::Window {
                window_table(*n, integer(&model.theta, "theta")?, integer(&model.zeta, "zeta")?)?
            } else {
                pushforward_table(*n, &exact_model(model)?)?
            };
            emit_table(&table, format)
        }
        ExactCommand::Stirling { n } => {
            if *n == 0 {
                return Err(Error::Argument("--n must be positive".into()));
            }
            let table = &record_stirling_tables(*n)[n - 1];
            let mut cells = Vec::new();
            for (l, row) in table.iter().enumerate() {
                for (u, c) in row.iter().enumerate() {
                    if *c != Default::default() {
                        cells.push((l, u, c.to_string()));
                    }
                }
            }
            match format {
                Format::Json => {
                    let entries: Vec<_> = cells.iter().map(|(l, u, c)| json!({"l": l, "u": u, "count": c})).collect();
                    json!({"n": n, "entries": entries}).to_string() + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("l,u,count\n");
                    for (l, u, c) in &cells {
                        let _ = writeln!(s, "{l},{u},{c}");
                    }
                    s
                }
                Format::Table => {
                    let body: Vec<String> = cells.iter().map(|(l, u, c)| format!("({l},{u}):{c}")).collect();
                    format!("{{{}}}\n", body.join(","))
                }
            }
        }
        ExactCommand::Pe { n, theta, zeta, printed } => {
            let p = TwoParam::parse(theta, zeta)?;
            let mut rows = Vec::new();
            for r in 1..=*n {
                let v = if *printed { pe_pmf_printed(*n, &p, r)? } else { pe_pmf(*n, &p, r)? };
                rows.push((r, format_rational(&v)));
            }
            if rows.is_empty() {
                return Err(Error::Argument("--n must be positive".into()));
            }
            match format {
                Format::Json => {
                    let entries: Vec<_> = rows.iter().map(|(r, v)| json!({"r": r, "p": v})).collect();
                    json!({"n": n, "entries": entries}).to_string() + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("r,p\n");
                    for (r, v) in &rows {
                        let _ = writeln!(s, "{r},{v}");
                    }
                    s
                }
                Format::Table => rows.iter().map(|(r, v)| format!("{r}\t{v}\n")).collect(),
            }
        }
        ExactCommand::D { composition: c } => scalar("d", d_count(&composition(c)?).to_string(), format),
        ExactCommand::Dext { from, to } => {
            scalar("d_ext", d_ext(&composition(from)?, &composition(to)?)?.to_string(), format)
        }
        ExactCommand::Ratio { from, to } => scalar(
            "ratio",
            format_rational(&martin_ratio(&composition(from)?, &composition(to)?)?),
            format,
        ),
        ExactCommand::Phi { composition: c, shape_file } => {
            let shape = read_shape(shape_file)?;
            scalar("phi", phi_boundary(&composition(c)?, &shape)?.to_string(), format)
        }
        ExactCommand::Followers { composition: c } => {
            let f: Vec<String> = composition(c)?.followers().iter().map(|x| x.to_string()).collect();
            match format {
                Format::Json => json!({"followers": f}).to_string() + "\n",
                Format::Csv => std::iter::once("composition".to_string())
                    .chain(f.iter().map(|x| format!("\"{x}\"")))
                    .map(|l| l + "\n")
                    .collect(),
                Format::Table => f.iter().map(|x| format!("{x}\n")).collect(),
            }
        }
        ExactCommand::CountCompositions { n, max_n } => {
            let (lo, hi) = match (n, max_n) {
                (Some(n), None) => (*n, *n),
                (None, Some(m)) => (1, *m),
                (Some(n), Some(m)) => (*n, *m),
                (None, None) => return Err(Error::Argument("give --n or --max-n".into())),
            };
            if lo == 0 || hi > 20 || lo > hi {
                return Err(Error::Argument("need 1 <= n <= max-n <= 20".into()));
            }
            let rows: Vec<(usize, String, String)> = (lo..=hi)
                .map(|k| (k, composition_count(k).to_string(), composition_count_formula(k).to_string()))
                .collect();
            match format {
                Format::Json => {
                    let entries: Vec<_> = rows
                        .iter()
                        .map(|(k, c, f)| json!({"n": k, "count": c, "formula": f}))
                        .collect();
                    json!({"entries": entries}).to_string() + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("n,count,formula\n");
                    for (k, c, f) in &rows {
                        let _ = writeln!(s, "{k},{c},{f}");
                    }
                    s
                }
                Format::Table => rows.iter().map(|(k, c, f)| format!("{k}\t{c}\t{f}\n")).collect(),
            }
        }
        ExactCommand::ExtensionCount { n, l, u, to_n, to_l, to_u } => scalar(
            "extension_count",
            extension_count(*n, *l, *u, *to_n, *to_l, *to_u)?.to_string(),
            format,
        ),
    })
}

fn verify(v: &VerifyArgs, format: Format) -> Result<Output> {
    let suite: Suite = v.suite.parse()?;
    if !(v.trial_scale > 0.0 && v.trial_scale.is_finite()) {
        return Err(Error::Argument("--trial-scale must be positive".into()));
    }
    let config = SuiteConfig {
        seed: v.seed,
        trial_scale: v.trial_scale,
        negative_control: v.negative_control,
    };
    let r = run_suite(suite, &config)?;
    let text = match format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => {
            let mut s = String::from("experiment,verdict\n");
            for x in &r.reports {
                let _ = writeln!(s, "{},{}", x.experiment, x.verdict);
            }
            s
        }
        Format::Table => r.to_text(),
    };
    Ok(Output {
        text,
        passed: r.verdict,
    })
}

fn mc(m: &McArgs, format: Format) -> Result<Output> {
    let p = TwoParam::parse(&m.theta, &m.zeta)?;
    if m.experiment == "record-moments" {
        let r = record_moments(&p, m.n, m.trials, m.seed)?;
        let passed = r.lower.z_mean.abs() < 4.0 && r.upper.z_mean.abs() < 4.0;
        let text = match format {
            Format::Json => serde_json::to_string_pretty(&json!({
                "experiment": "record-moments",
                "params": {"theta": format_rational(&p.theta), "zeta": format_rational(&p.zeta)},
                "n": r.n,
                "trials": r.trials,
                "seed": r.seed,
                "statistics": {"lower": r.lower, "upper": r.upper},
                "verdict": passed,
            }))
            .expect("report serializes")
                + "\n",
            _ => format!(
                "{} record-moments n={} lower_mean={} (exact {}, z {:.3}) upper_mean={} (exact {}, z {:.3})\n",
                if passed { "PASS" } else { "FAIL" },
                r.n,
                r.lower.empirical_mean,
                r.lower.exact_mean,
                r.lower.z_mean,
                r.upper.empirical_mean,
                r.upper.exact_mean,
                r.upper.z_mean
            ),
        };
        return Ok(Output { text, passed });
    }
    let exp: Experiment = m.experiment.parse()?;
    let r = mc_asymptotics(exp, &p, m.n, m.trials, m.seed)?;
    let text = match format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => {
            let mut s = String::from("statistic,value\n");
            for (k, v) in &r.statistics {
                let _ = writeln!(s, "{k},{v}");
            }
            s
        }
        Format::Table => r.to_line() + "\n",
    };
    Ok(Output {
        text,
        passed: r.verdict,
    })
}
