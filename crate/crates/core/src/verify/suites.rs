//! Named verification suites. Exact suites are boolean; statistical ones use
//! fixed seeds, so every report is reproducible byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::asymptotics::{mc_asymptotics, Experiment};
use super::divergence::{compare_counts, empirical_counts, DivergenceReport};
use super::indicators::check_indicator_structure;
use super::moments::record_moments;
use super::uniformity::{check_conditional_uniformity, Statistic};
use super::Report;
use crate::bijections::{classical_project, hat_bijection, HatDirection, ProjectionMode};
use crate::composition::{composition_to_profile, profile_to_composition, CenteredComposition, GrowingComposition};
use crate::error::{Error, Result};
use crate::exact::boundary::{
    composition_count, composition_count_formula, d_count, d_ext, martin_ratio, martin_ratio_by_counts,
    phi_boundary,
};
use crate::exact::extension::{extension_count, extension_count_brute};
use crate::exact::laws::{
    general_closed_form, general_perm_probability, literal_per_rank_total, part_factorials, printed_closed_form,
    Model,
};
use crate::exact::polya::{pe_pmf, pe_pmf_printed};
use crate::exact::stirling::{
    check_generating_function, record_stirling_enumerated, record_stirling_tables, record_stirling_via_cycles,
    stirling_first_row,
};
use crate::exact::table::{pushforward_table, window_table, DistTable};
use crate::exact::wtable::{check_dual, check_dual_on_masses, w_table, w_table_two_param};
use crate::params::{GeneralParams, LimitFamily, TwoParam};
use crate::perm::{factorial_usize, InitialRanks, Permutation};
use crate::rational::{count_to_rational, format_rational, int, ratio, BigCount, Rational};
use crate::records::{extract_records, fold_records, record_counts, RecordValues};
use crate::sample::{
    sample_conditioned_with, sample_from_shape_with, sample_general_with, sample_integer_window_with,
    sample_limit_with, sample_shape_with, sample_two_param_with, ShapeParams, StreamModel, StreamState,
};
use crate::shape::TwoSidedShape;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Identities,
    Pushforward,
    Diagram,
    Boundary,
    Uniformity,
    Indicators,
    Dual,
    Errata,
    Samplers,
    Asymptotics,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Identities,
        Suite::Pushforward,
        Suite::Diagram,
        Suite::Boundary,
        Suite::Uniformity,
        Suite::Indicators,
        Suite::Dual,
        Suite::Errata,
        Suite::Samplers,
        Suite::Asymptotics,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Pushforward => "pushforward",
            Suite::Diagram => "diagram",
            Suite::Boundary => "boundary",
            Suite::Uniformity => "uniformity",
            Suite::Indicators => "indicators",
            Suite::Dual => "dual",
            Suite::Errata => "errata",
            Suite::Samplers => "samplers",
            Suite::Asymptotics => "asymptotics",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "bijection" || s == "bijections" {
            return Ok(Suite::Diagram);
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Multiplies every trial count of the statistical suites.
    pub trial_scale: f64,
    /// Sample with θ and ζ exchanged while comparing against the
    /// unexchanged laws; the sampler suite must then fail.
    pub negative_control: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20_240_601,
            trial_scale: 1.0,
            negative_control: false,
        }
    }
}

impl SuiteConfig {
    fn trials(&self, base: u64) -> u64 {
        ((base as f64 * self.trial_scale).round() as u64).max(2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub reports: Vec<Report>,
    pub verdict: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            s.push_str(&r.to_line());
            s.push('\n');
        }
        s.push_str(&format!(
            "{} suite {}\n",
            if self.verdict { "PASS" } else { "FAIL" },
            self.suite
        ));
        s
    }

    pub fn failures(&self) -> Vec<&Report> {
        self.reports.iter().filter(|r| !r.verdict).collect()
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let reports = match suite {
        Suite::Identities => identities()?,
        Suite::Pushforward => pushforward()?,
        Suite::Diagram => diagram()?,
        Suite::Boundary => boundary()?,
        Suite::Uniformity => uniformity()?,
        Suite::Indicators => indicators()?,
        Suite::Dual => dual()?,
        Suite::Errata => errata()?,
        Suite::Samplers => samplers(config)?,
        Suite::Asymptotics => asymptotics(config)?,
    };
    let verdict = reports.iter().all(|r| r.verdict);
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        seed: config.seed,
        reports,
        verdict,
    })
}

fn tp(theta: &str, zeta: &str) -> TwoParam {
    TwoParam::parse(theta, zeta).expect("valid two-parameter literal")
}

fn gp(theta: &str, zeta: &str, alpha: &str) -> GeneralParams {
    GeneralParams::parse(theta, zeta, alpha).expect("valid general literal")
}

fn tp_json(p: &TwoParam) -> serde_json::Value {
    json!({"theta": format_rational(&p.theta), "zeta": format_rational(&p.zeta)})
}

fn model_json(m: &Model) -> serde_json::Value {
    match m {
        Model::TwoParam(p) => json!({"model": "two-param", "theta": format_rational(&p.theta), "zeta": format_rational(&p.zeta)}),
        Model::General(g) => json!({"model": "general", "theta": format_rational(&g.theta), "zeta": format_rational(&g.zeta), "alpha": g.alpha_spec()}),
        Model::Limit(f) => json!({"model": "limit", "family": f.to_string()}),
        Model::FixedShape(s) => json!({"model": "fixed-shape", "rho": s.ascending().iter().map(format_rational).collect::<Vec<_>>(), "center_index": s.left_len()}),
    }
}

fn identities() -> Result<Vec<Report>> {
    let n_max = 10;
    let tables = record_stirling_tables(n_max);
    let mut out = Vec::new();
    let (mut enum_ok, mut cycles_ok, mut sym_ok, mut marg_ok) = (true, true, true, true);
    for n in 1..=n_max {
        let t = &tables[n - 1];
        let e = record_stirling_enumerated(n)?;
        let row = stirling_first_row(n);
        for l in 0..n {
            for u in 0..n {
                enum_ok &= t[l][u] == e[l][u];
                cycles_ok &= t[l][u] == record_stirling_via_cycles(n, l, u);
                sym_ok &= t[l][u] == t[u][l];
            }
            marg_ok &= t[l].iter().sum::<BigCount>() == row[l + 1];
        }
    }
    out.push(
        Report::new("record-stirling")
            .n(n_max)
            .require("recursion_equals_enumeration", enum_ok)
            .require("recursion_equals_cycle_identity", cycles_ok)
            .require("symmetric_in_l_u", sym_ok)
            .require("marginal_is_signless_stirling", marg_ok),
    );
    for p in [tp("1", "1"), tp("2", "3"), tp("1/2", "5/2")] {
        let ok = (1..=n_max).all(|n| check_generating_function(n, &p));
        out.push(
            Report::new("generating-function")
                .params(tp_json(&p))
                .n(n_max)
                .require("holds_exactly", ok),
        );
    }
    Ok(out)
}

fn pushforward_models() -> Vec<Model> {
    let shape = crate::shape::ExactShape::new(
        ratio(1, 2),
        vec![ratio(2, 5), ratio(3, 10), ratio(1, 5), ratio(1, 10), ratio(1, 20), ratio(1, 40)],
        vec![ratio(3, 5), ratio(3, 4), ratio(4, 5), ratio(9, 10), ratio(19, 20), ratio(39, 40)],
    )
    .expect("valid shape");
    vec![
        Model::TwoParam(tp("1", "1")),
        Model::TwoParam(tp("2", "3")),
        Model::TwoParam(tp("1/2", "5/2")),
        Model::TwoParam(tp("2", "2")),
        Model::TwoParam(tp("3", "1")),
        Model::General(gp("1", "1", "tail:1/2")),
        Model::General(gp("2", "1", "1:1/2,-1:1/4;tail:0")),
        Model::General(gp("1", "1", "-1:-1/2,1:1/3;tail:1/4")),
        Model::Limit(LimitFamily::BernoulliPyramid(ratio(1, 2))),
        Model::Limit(LimitFamily::SingleRecord(ratio(1, 3))),
        Model::Limit(LimitFamily::ThetaZero(int(2))),
        Model::Limit(LimitFamily::ZetaZero(ratio(3, 2))),
        Model::FixedShape(shape),
    ]
}

/// Which fibers must be constant, from the structure of each law; `None`
/// where no claim is made.
fn expected_uniformity(model: &Model, stat: Statistic) -> Option<bool> {
    match (model, stat) {
        (_, Statistic::Rec) => Some(true),
        (Model::TwoParam(_) | Model::Limit(_), Statistic::Counts) => Some(true),
        (Model::TwoParam(p), Statistic::Lower) => Some(p.zeta.is_one()),
        (Model::TwoParam(p), Statistic::Upper) => Some(p.theta.is_one()),
        (Model::TwoParam(p), Statistic::Total) => Some(p.theta == p.zeta),
        _ => None,
    }
}

fn uniformity_reports(models: &[Model], n_max: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for m in models {
        let mut r = Report::new("conditional-uniformity").params(model_json(m)).n(n_max);
        for stat in Statistic::ALL {
            let mut all_hold = true;
            let mut consistent = true;
            for n in 1..=n_max {
                let table = pushforward_table(n, m)?;
                let rep = check_conditional_uniformity(&table, stat);
                all_hold &= rep.holds;
                if n >= 4 {
                    if let Some(e) = expected_uniformity(m, stat) {
                        consistent &= rep.holds == e;
                    }
                }
            }
            r = r
                .stat(&format!("{stat}_holds"), all_hold)
                .require(&format!("{stat}_as_expected"), consistent);
        }
        out.push(r);
    }
    Ok(out)
}

fn pushforward() -> Result<Vec<Report>> {
    let n_max = 7;
    let models = pushforward_models();
    let mut out = Vec::new();
    for m in &models {
        let tables: Vec<DistTable> = (1..=n_max).map(|n| pushforward_table(n, m)).collect::<Result<_>>()?;
        let sums = tables.iter().all(|t| t.total() == Rational::one());
        let coherent = tables
            .iter()
            .enumerate()
            .all(|(i, t)| (1..=i).all(|m| t.restrict(m).map(|r| r == tables[m - 1]).unwrap_or(false)));
        out.push(
            Report::new("table")
                .params(model_json(m))
                .n(n_max)
                .require("sums_to_one", sums)
                .require("coherent_under_restrict", coherent),
        );
    }
    out.extend(uniformity_reports(&models, n_max)?);
    for (t, z) in [(1usize, 2usize), (2, 2), (3, 1)] {
        let p = TwoParam::new(int(t as i64), int(z as i64))?;
        let mut ok = true;
        for n in 1..=5 {
            ok &= window_table(n, t, z)? == pushforward_table(n, &Model::TwoParam(p.clone()))?;
        }
        out.push(
            Report::new("window-projection")
                .params(tp_json(&p))
                .n(5)
                .require("equals_two_param_table", ok),
        );
    }
    Ok(out)
}

fn uniformity() -> Result<Vec<Report>> {
    uniformity_reports(&pushforward_models(), 7)
}

fn diagram() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let mut diag = true;
    let mut hat = true;
    for n in 2..=6 {
        for p in Permutation::all(n) {
            let down = p.restrict(n - 1)?;
            let inv = p.inverse();
            diag &= down.inverse() == classical_project(&inv, ProjectionMode::OneRowDelete)?;
            diag &= hat_bijection(&down.inverse(), HatDirection::Forward)
                == classical_project(&hat_bijection(&inv, HatDirection::Forward), ProjectionMode::CycleDelete)?;
            hat &= hat_bijection(&hat_bijection(&p, HatDirection::Forward), HatDirection::Inverse) == p;
        }
    }
    out.push(
        Report::new("commutative-diagram")
            .n(6)
            .require("restrict_inverse_projection_commute", diag)
            .require("hat_round_trip", hat),
    );
    let mut sizes = true;
    let mut split = true;
    let mut total_ok = true;
    for n in 2..=8 {
        let mut fibers: BTreeMap<Permutation, Vec<usize>> = BTreeMap::new();
        for p in Permutation::all(n) {
            fibers.entry(fold_records(&p)?).or_default().push(record_counts(&p).0);
        }
        let mut total = 0;
        for (image, ls) in &fibers {
            let r = record_counts(image).0 + 1;
            sizes &= ls.len() == 1 << r;
            for l in 0..=r {
                let k = ls.iter().filter(|&&x| x == l).count();
                split &= BigCount::from(k) == crate::rational::binomial(r, l);
            }
            total += ls.len();
        }
        total_ok &= total == factorial_usize(n);
    }
    out.push(
        Report::new("fold-records")
            .n(8)
            .require("fiber_sizes_power_of_two", sizes)
            .require("binomial_type_split", split)
            .require("fibers_partition", total_ok),
    );
    let mut comp_rt = true;
    let mut prof_rt = true;
    let mut ranks_rt = true;
    for n in 1..=8 {
        for c in CenteredComposition::all_of_degree(n) {
            comp_rt &= profile_to_composition(&composition_to_profile(&c)) == c;
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for p in Permutation::all(n) {
            ranks_rt &= p.to_initial_ranks().to_permutation() == p;
            let rv = extract_records(&p).into_values();
            let mut key = rv.values().to_vec();
            key.push(rv.center_index());
            if seen.insert(key) {
                prof_rt &= composition_to_profile(&profile_to_composition(&rv)) == rv;
            }
        }
    }
    out.push(
        Report::new("profile-composition")
            .n(8)
            .require("composition_round_trip", comp_rt)
            .require("profile_round_trip", prof_rt)
            .require("initial_rank_round_trip", ranks_rt),
    );
    Ok(out)
}

fn composition_of(p: &Permutation) -> CenteredComposition {
    profile_to_composition(extract_records(p).values())
}

fn boundary() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let mut ok = true;
    for n in 1..=8 {
        let mut hist: BTreeMap<CenteredComposition, usize> = BTreeMap::new();
        for p in Permutation::all(n) {
            *hist.entry(composition_of(&p)).or_default() += 1;
        }
        for c in CenteredComposition::all_of_degree(n) {
            ok &= BigCount::from(hist.get(&c).copied().unwrap_or(0)) == d_count(&c);
        }
        ok &= hist.len() == CenteredComposition::all_of_degree(n).len();
    }
    let spot: CenteredComposition = "3,1,^1,3,2".parse()?;
    let brute = (0..factorial_usize(10))
        .into_par_iter()
        .filter(|&code| composition_of(&InitialRanks::from_code(10, code).to_permutation()) == spot)
        .count();
    out.push(
        Report::new("d-count")
            .n(8)
            .stat("spot_composition", spot.to_string())
            .stat("spot_formula", d_count(&spot).to_string())
            .stat("spot_enumerated", brute as u64)
            .require("equals_class_size", ok)
            .require("spot_value_3024", d_count(&spot) == BigCount::from(3024u32) && brute == 3024),
    );
    let mut ext_ok = true;
    let mut ratio_ok = true;
    let mut pairs = 0u64;
    for n in 1..=5 {
        for p in Permutation::all(n) {
            let lambda = composition_of(&p);
            let base = p.code();
            let step = factorial_usize(n);
            for m in n..=8 {
                let mut hist: BTreeMap<CenteredComposition, usize> = BTreeMap::new();
                for t in 0..factorial_usize(m) / step {
                    let q = InitialRanks::from_code(m, base + t * step).to_permutation();
                    *hist.entry(composition_of(&q)).or_default() += 1;
                }
                for mu in CenteredComposition::all_of_degree(m) {
                    let count = hist.get(&mu).copied().unwrap_or(0);
                    match d_ext(&lambda, &mu) {
                        Ok(d) => {
                            pairs += 1;
                            ext_ok &= d == BigCount::from(count);
                            ratio_ok &= martin_ratio(&lambda, &mu)? == martin_ratio_by_counts(&lambda, &mu)?;
                        }
                        Err(Error::Order(_)) => ext_ok &= count == 0,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    out.push(
        Report::new("d-ext")
            .stat("successor_pairs_checked", pairs)
            .require("equals_extension_count", ext_ok)
            .require("martin_ratio_closed_form", ratio_ok),
    );
    let counts_ok = (2..=14).all(|n| count_to_rational(&composition_count(n)) == composition_count_formula(n));
    out.push(Report::new("composition-count").n(14).require("equals_2^(n-3)(n+2)", counts_ok));
    let mut ext_dp = true;
    for n in 1..=4 {
        for n2 in n..=7 {
            for l in 0..n {
                for u in 0..n - l {
                    for l2 in l..n2 {
                        for u2 in u..n2 - l2 {
                            ext_dp &= extension_count(n, l, u, n2, l2, u2)?
                                == BigCount::from(extension_count_brute(n, l, u, n2, l2, u2)?);
                        }
                    }
                }
            }
        }
    }
    out.push(Report::new("extension-count").n(7).require("equals_enumeration", ext_dp));
    out.extend(dual()?);
    Ok(out)
}

fn dual() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for p in [tp("1", "1"), tp("2", "3"), tp("1/2", "5/2")] {
        let w = w_table_two_param(&p, 9);
        let via_classes = w_table(&Model::TwoParam(p.clone()), 7)?;
        let agree = (1..=7).all(|n| (0..n).all(|l| (0..n - l).all(|u| w.get(n, l, u) == via_classes.get(n, l, u))));
        out.push(
            Report::new("dual-recursion")
                .params(tp_json(&p))
                .n(9)
                .stat("holds_on_masses", check_dual_on_masses(&w))
                .require("holds_per_word", check_dual(&w))
                .require("class_sums_agree", agree),
        );
    }
    Ok(out)
}

fn indicators() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let cases: Vec<(Model, usize, bool)> = vec![
        (Model::TwoParam(tp("1", "1")), 7, true),
        (Model::TwoParam(tp("3", "1")), 6, true),
        (Model::TwoParam(tp("2", "3")), 6, true),
        (Model::General(gp("1", "1", "tail:1/2")), 6, false),
    ];
    for (m, n_max, expect) in cases {
        let mut r = Report::new("indicator-structure").params(model_json(&m)).n(n_max);
        let mut bern = true;
        let mut thin = true;
        let mut alloc = true;
        for n in 1..=n_max {
            let rep = check_indicator_structure(&m, n)?;
            bern &= rep.bernoulli;
            thin &= rep.thinning;
            alloc &= rep.allocation.unwrap_or(true);
        }
        r = r.stat("bernoulli", bern).stat("thinning", thin).stat("allocation", alloc);
        r = if expect {
            r.require("structure_holds", bern && thin && alloc)
        } else {
            r.require("negative_control_rejected", !bern)
        };
        out.push(r);
    }
    Ok(out)
}

fn errata() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let p = tp("1", "1");
    let printed: Rational = (1..=3).map(|r| pe_pmf_printed(3, &p, r)).sum::<Result<Rational>>()?;
    let mut matches = true;
    for q in [tp("1", "1"), tp("2", "3"), tp("1/2", "5/2")] {
        for n in 1..=8 {
            let table = pushforward_table(n, &Model::TwoParam(q.clone()))?;
            let centers = table.marginal(|w| w.at(1));
            for r in 1..=n {
                matches &= centers.get(&r).cloned().unwrap_or_else(Rational::zero) == pe_pmf(n, &q, r)?;
            }
        }
    }
    out.push(
        Report::new("polya-eggenberger-display")
            .stat("printed_total_at_3_1_1", format_rational(&printed))
            .require("printed_display_not_normalized", printed != Rational::one())
            .require("corrected_form_is_center_law", matches),
    );
    let g = gp("1", "1", "1:1/2;tail:0");
    let state: CenteredComposition = "^1,2".parse()?;
    let literal = literal_per_rank_total(&state, &g);
    let model = Model::General(g.clone());
    let mut gap_ok = true;
    for n in 1..=6 {
        for c in CenteredComposition::all_of_degree(n) {
            gap_ok &= model.block_law(&GrowingComposition::from_composition(&c))?.total() == Rational::one();
        }
    }
    out.push(
        Report::new("per-rank-step-law")
            .params(json!({"theta": "1", "zeta": "1", "alpha": g.alpha_spec(), "state": "1,3,2"}))
            .stat("literal_total", format_rational(&literal))
            .require("literal_reading_not_normalized", literal != Rational::one())
            .require("gap_level_law_normalized", gap_ok),
    );
    let mut factorial_gap = true;
    let mut shift = true;
    let mut closed = true;
    let mut witness = None;
    for params in [gp("2", "3", "tail:0"), gp("1", "1", "tail:1/2"), gp("2", "1", "1:1/2,-1:1/4;tail:0")] {
        let zero_alpha = params.is_two_param();
        for n in 1..=6 {
            for w in Permutation::all(n) {
                let lambda = composition_of(&w);
                let path = general_perm_probability(&w, &params)?;
                closed &= general_closed_form(&lambda, &params) == path;
                let ratio = printed_closed_form(&lambda, &params) / &path;
                let shift_factor = params.lower_weight(lambda.lower_len()) / params.lower_weight(0)
                    * params.upper_weight(lambda.upper_len())
                    / params.upper_weight(0);
                if zero_alpha {
                    factorial_gap &= ratio == part_factorials(&lambda);
                    if witness.is_none() && ratio != Rational::one() {
                        witness = Some(format!("{w}: ratio {}", format_rational(&ratio)));
                    }
                } else {
                    shift &= ratio == part_factorials(&lambda) * shift_factor;
                }
            }
        }
    }
    out.push(
        Report::new("closed-form-display")
            .stat("witness", witness.unwrap_or_default())
            .require("closed_form_equals_path_product", closed)
            .require("ratio_is_part_factorials_at_zero_alpha", factorial_gap)
            .require("ratio_includes_record_index_shift", shift),
    );
    Ok(out)
}

fn divergence_report(
    name: &str,
    params: serde_json::Value,
    table: &DistTable,
    counts: &[u64],
    trials: u64,
    seed: u64,
) -> Result<Report> {
    let d: DivergenceReport = compare_counts(table, counts)?;
    Ok(Report::new(name)
        .params(params)
        .n(table.n())
        .sampling(trials, seed)
        .stat("total_variation", d.total_variation)
        .stat("tv_bound", d.tv_bound(table.n()))
        .stat("chi_square", d.chi_square)
        .stat("dof", d.dof as u64)
        .stat("p_value", d.p_value)
        .require("accepted", d.accepts(table.n())))
}

fn swap_general(g: &GeneralParams) -> GeneralParams {
    GeneralParams::new(
        g.zeta.clone(),
        g.theta.clone(),
        g.alpha.iter().map(|(k, v)| (-k, v.clone())).collect(),
        g.tail.clone(),
    )
    .expect("mirror of a valid parameter set is valid")
}

fn samplers(config: &SuiteConfig) -> Result<Vec<Report>> {
    let seed = config.seed;
    let neg = config.negative_control;
    let base = config.trials(200_000);
    let mut out = Vec::new();
    let sw = |p: &TwoParam| if neg { p.swapped() } else { p.clone() };

    let p = tp("2", "3");
    let table = pushforward_table(5, &Model::TwoParam(p.clone()))?;
    let q = sw(&p);
    let counts = empirical_counts(5, base, seed, |r| sample_two_param_with(5, &q, r))?;
    out.push(divergence_report("sample-two-param", tp_json(&p), &table, &counts, base, seed)?);

    let p = tp("1/2", "5/2");
    let table = pushforward_table(5, &Model::TwoParam(p.clone()))?;
    let sm = StreamModel::from_model(&Model::TwoParam(sw(&p)))?;
    let counts = empirical_counts(5, base, seed + 1, |r| {
        let mut s = StreamState::with_rng(sm.clone(), r.clone());
        s.advance_to(5)?;
        Ok(s.prefix())
    })?;
    out.push(divergence_report("stream-two-param", tp_json(&p), &table, &counts, base, seed + 1)?);

    for (i, g) in [gp("1", "1", "tail:1/2"), gp("2", "1", "1:1/2,-1:1/4;tail:0"), gp("2", "3", "tail:0")]
        .into_iter()
        .enumerate()
    {
        let n = if g.is_two_param() { 4 } else { 5 };
        let m = if g.is_two_param() {
            Model::TwoParam(TwoParam::new(g.theta.clone(), g.zeta.clone())?)
        } else {
            Model::General(g.clone())
        };
        let table = pushforward_table(n, &m)?;
        let h = if neg { swap_general(&g) } else { g.clone() };
        let s = seed + 10 + i as u64;
        let counts = empirical_counts(n, base, s, |r| sample_general_with(n, &h, r.clone()))?;
        let params = json!({"theta": format_rational(&g.theta), "zeta": format_rational(&g.zeta), "alpha": g.alpha_spec()});
        out.push(divergence_report("sample-general", params, &table, &counts, base, s)?);
    }

    let families = [
        LimitFamily::BernoulliPyramid(ratio(1, 2)),
        LimitFamily::SingleRecord(ratio(1, 3)),
        LimitFamily::ThetaZero(int(2)),
        LimitFamily::ZetaZero(ratio(3, 2)),
    ];
    for (i, f) in families.iter().enumerate() {
        let table = pushforward_table(5, &Model::Limit(f.clone()))?;
        let s = seed + 20 + i as u64;
        let counts = empirical_counts(5, base, s, |r| sample_limit_with(5, f, r))?;
        out.push(divergence_report("sample-limit", json!({"family": f.to_string()}), &table, &counts, base, s)?);
    }

    for (i, (t, z, n)) in [(1usize, 1usize, 3usize), (1, 2, 5), (2, 2, 4), (3, 1, 4)].into_iter().enumerate() {
        let p = TwoParam::new(int(t as i64), int(z as i64))?;
        let table = pushforward_table(n, &Model::TwoParam(p.clone()))?;
        let (a, b) = if neg { (z, t) } else { (t, z) };
        let s = seed + 30 + i as u64;
        let counts = empirical_counts(n, base, s, |r| sample_integer_window_with(n, a, b, r))?;
        out.push(divergence_report("sample-integer-window", tp_json(&p), &table, &counts, base, s)?);
    }

    let shape_cases: Vec<(ShapeParams, Model)> = vec![
        (tp("2", "3").into(), Model::TwoParam(tp("2", "3"))),
        (tp("1", "1").into(), Model::TwoParam(tp("1", "1"))),
        (gp("1", "1", "tail:1/2").into(), Model::General(gp("1", "1", "tail:1/2"))),
    ];
    for (i, (sp, m)) in shape_cases.into_iter().enumerate() {
        let n = 4;
        let table = pushforward_table(n, &m)?;
        let sp = match (&sp, neg) {
            (ShapeParams::TwoParam(p), true) => ShapeParams::TwoParam(p.swapped()),
            (ShapeParams::General(g), true) => ShapeParams::General(swap_general(g)),
            _ => sp,
        };
        let s = seed + 40 + i as u64;
        let counts = empirical_counts(n, base, s, |r| {
            let shape = sample_shape_with(&sp, n, r)?;
            sample_from_shape_with(&shape, n, r)
        })?;
        out.push(divergence_report("shape-construction", model_json(&m), &table, &counts, base, s)?);
    }

    let fixed = TwoSidedShape::new(0.4, vec![0.25, 0.1, 0.05], vec![0.7, 0.85, 0.95])?;
    let table = pushforward_table(4, &Model::FixedShape(fixed.to_exact()))?;
    let s = seed + 50;
    let counts = empirical_counts(4, base, s, |r| sample_from_shape_with(&fixed, 4, r))?;
    out.push(divergence_report("fixed-shape", json!({"shape": fixed.to_json()}), &table, &counts, base, s)?);

    let phi_trials = config.trials(1_000_000);
    let s = seed + 51;
    let counts = empirical_counts(3, phi_trials, s, |r| sample_from_shape_with(&fixed, 3, r))?;
    let target: Permutation = "1,3,2".parse()?;
    let freq = counts[target.code()] as f64 / phi_trials as f64;
    let phi = phi_boundary(&"^1,2".parse()?, &fixed)?;
    let rel = (freq - phi).abs() / phi;
    out.push(
        Report::new("phi-fixed-shape")
            .params(json!({"shape": fixed.to_json(), "composition": "^1,2"}))
            .n(3)
            .sampling(phi_trials, s)
            .stat("phi", phi)
            .stat("frequency", freq)
            .stat("relative_error", rel)
            .require("within_5_percent", rel < 0.05),
    );

    for (i, (num, den)) in [(0i64, 1i64), (1, 2), (1, 1)].into_iter().enumerate() {
        let n = 5;
        let pr = ratio(num, den);
        let pf = num as f64 / den as f64;
        let probs: Vec<Rational> = (0..factorial_usize(n))
            .map(|code| {
                let w = InitialRanks::from_code(n, code).to_permutation();
                let (l, u) = record_counts(&w);
                if l + u + 1 == n {
                    num_traits::pow(pr.clone(), l) * num_traits::pow(Rational::one() - &pr, u)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let table = DistTable::new(n, probs)?;
        let s = seed + 60 + i as u64;
        let fam = LimitFamily::BernoulliPyramid(pr.clone());
        let direct = empirical_counts(n, base, s, |r| sample_limit_with(n, &fam, r))?;
        let flat = TwoSidedShape::new(pf, vec![pf; n], vec![pf; n])?;
        let via_shape = empirical_counts(n, base, s + 100, |r| sample_from_shape_with(&flat, n, r))?;
        let params = json!({"p": format_rational(&pr)});
        out.push(divergence_report("pyramid-direct", params.clone(), &table, &direct, base, s)?);
        out.push(divergence_report("pyramid-constant-shape", params, &table, &via_shape, base, s + 100)?);
    }

    let cond_trials = config.trials(300_000);
    for (i, spec) in ["1,[2],3", "1,4,[5],8,10"].into_iter().enumerate() {
        let rv: RecordValues = spec.parse()?;
        let lambda = profile_to_composition(&rv);
        let d = d_count(&lambda);
        let s = seed + 70 + i as u64;
        let draws: Vec<Permutation> = (0..cond_trials)
            .into_par_iter()
            .map(|t| sample_conditioned_with(&rv, &mut crate::sample::rng::substream(s, t)))
            .collect::<Result<_>>()?;
        let profile_ok = draws.iter().all(|w| extract_records(w).values() == &rv);
        let mut hist: BTreeMap<&Permutation, u64> = BTreeMap::new();
        for w in &draws {
            *hist.entry(w).or_default() += 1;
        }
        let cells = hist.len();
        let expected = cond_trials as f64 / cells as f64;
        let chi: f64 = hist.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        let dof = cells.saturating_sub(1).max(1);
        let p_value = {
            use statrs::distribution::{ChiSquared, ContinuousCDF};
            let dist = ChiSquared::new(dof as f64).map_err(|e| Error::Argument(e.to_string()))?;
            (1.0 - dist.cdf(chi)).max(0.0)
        };
        out.push(
            Report::new("sample-conditioned")
                .params(json!({"record_values": spec, "composition": lambda.to_string()}))
                .n(rv.n())
                .sampling(cond_trials, s)
                .stat("class_size", d.to_string())
                .stat("distinct_outputs", cells as u64)
                .stat("chi_square", chi)
                .stat("p_value", p_value)
                .require("profile_always_matches", profile_ok)
                .require("covers_class", BigCount::from(cells) == d)
                .require("uniform", p_value > 1e-3),
        );
    }

    if !neg {
        let p = tp("2", "3");
        let table = pushforward_table(4, &Model::TwoParam(p.clone()))?;
        let q = p.swapped();
        let s = seed + 80;
        let counts = empirical_counts(4, base, s, |r| sample_two_param_with(4, &q, r))?;
        let d = compare_counts(&table, &counts)?;
        out.push(
            Report::new("negative-control-swapped")
                .params(tp_json(&p))
                .n(4)
                .sampling(base, s)
                .stat("p_value", d.p_value)
                .stat("total_variation", d.total_variation)
                .require("rejected", d.p_value < 1e-3),
        );
    }
    Ok(out)
}

fn asymptotics(config: &SuiteConfig) -> Result<Vec<Report>> {
    let seed = config.seed;
    let mut out = Vec::new();
    let n = 10_000;
    let trials = config.trials(4000);
    for (i, (p, band)) in [(tp("1", "1"), true), (tp("1/2", "1/2"), true), (tp("2", "3"), false)]
        .into_iter()
        .enumerate()
    {
        let s = seed + i as u64;
        let m = record_moments(&p, n, trials, s)?;
        let mut r = Report::new("record-moments")
            .params(tp_json(&p))
            .n(n)
            .sampling(trials, s)
            .stat("exact_mean", m.lower.exact_mean)
            .stat("empirical_mean", m.lower.empirical_mean)
            .stat("z_mean", m.lower.z_mean)
            .stat("ratio_to_theta_ln_n", m.lower.log_ratio)
            .require("mean_within_4se", m.lower.z_mean.abs() < 4.0);
        if band {
            r = r.require("ratio_in_0.9_1.1", m.lower.log_ratio > 0.9 && m.lower.log_ratio < 1.1);
        }
        out.push(r);
    }
    let big = 100_000;
    let runs = [
        (Experiment::ShapeConvergence, tp("1", "1"), 2000),
        (Experiment::ShapeConvergence, tp("2", "3"), 2000),
        (Experiment::PoissonTimes, tp("1", "1"), 2000),
        (Experiment::PoissonTimes, tp("2", "3"), 2000),
        (Experiment::PoissonValues, tp("1", "1"), 2000),
        (Experiment::AdjacentPairs, tp("1", "1"), 2000),
        (Experiment::AdjacentPairs, tp("2", "3"), 2000),
        (Experiment::GaussianCounts, tp("1", "1"), 1000),
    ];
    for (i, (e, p, t)) in runs.into_iter().enumerate() {
        out.push(mc_asymptotics(e, &p, big, config.trials(t), seed + 100 + i as u64)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("bijection".parse::<Suite>().unwrap(), Suite::Diagram);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_exact_suites_pass() {
        let c = SuiteConfig::default();
        for s in [Suite::Errata, Suite::Indicators, Suite::Dual] {
            let r = run_suite(s, &c).unwrap();
            assert!(r.verdict, "{}", r.to_text());
        }
    }
}
