//! Exact and statistical verification: divergences between sampled and
//! exact laws, conditional uniformity, record moments, indicator structure,
//! Monte Carlo asymptotics, and the named suites built from them.

pub mod asymptotics;
pub mod divergence;
pub mod indicators;
pub mod moments;
pub mod suites;
pub mod uniformity;

pub use asymptotics::{mc_asymptotics, Experiment};
pub use divergence::{compare_counts, compare_exact_empirical, empirical_counts, DivergenceReport};
pub use indicators::{check_indicator_structure, IndicatorReport, IndicatorStats};
pub use moments::{exact_count_moments, record_moments, MomentReport};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteReport};
pub use uniformity::{check_conditional_uniformity, Statistic, UniformityReport};

use serde::Serialize;
use serde_json::{Map, Value};

/// One experiment or check with its statistics and verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub params: Value,
    pub n: Option<usize>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub statistics: Map<String, Value>,
    pub verdict: bool,
}

impl Report {
    pub fn new(experiment: impl Into<String>) -> Self {
        Report {
            experiment: experiment.into(),
            params: Value::Null,
            n: None,
            trials: None,
            seed: None,
            statistics: Map::new(),
            verdict: true,
        }
    }

    pub fn params(mut self, params: Value) -> Self {
        self.params = params;
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn sampling(mut self, trials: u64, seed: u64) -> Self {
        self.trials = Some(trials);
        self.seed = Some(seed);
        self
    }

    pub fn stat(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.statistics.insert(key.to_string(), value.into());
        self
    }

    /// Records a named boolean criterion; the verdict is the conjunction.
    pub fn require(mut self, key: &str, ok: bool) -> Self {
        self.statistics.insert(key.to_string(), Value::Bool(ok));
        self.verdict &= ok;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line: verdict, name, then the statistics as `key=value`.
    pub fn to_line(&self) -> String {
        let mut s = format!("{} {}", if self.verdict { "PASS" } else { "FAIL" }, self.experiment);
        if let Some(n) = self.n {
            s.push_str(&format!(" n={n}"));
        }
        for (k, v) in &self.statistics {
            match v {
                Value::String(t) => s.push_str(&format!(" {k}={t}")),
                other => s.push_str(&format!(" {k}={other}")),
            }
        }
        s
    }
}

/// `z = (observed - expected) / se`, with `se = 0` mapped to 0 when the two agree.
pub fn z_score(observed: f64, expected: f64, se: f64) -> f64 {
    if se > 0.0 {
        (observed - expected) / se
    } else if observed == expected {
        0.0
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_conjunction() {
        let r = Report::new("x").require("a", true).stat("v", 1.5);
        assert!(r.verdict);
        let r = r.require("b", false);
        assert!(!r.verdict);
        assert!(r.to_line().starts_with("FAIL x"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["statistics"]["v"], 1.5);
        assert_eq!(v["verdict"], false);
    }

    #[test]
    fn z_scores() {
        assert_eq!(z_score(1.0, 1.0, 0.0), 0.0);
        assert_eq!(z_score(3.0, 1.0, 1.0), 2.0);
        assert!(z_score(2.0, 1.0, 0.0).is_infinite());
    }
}
