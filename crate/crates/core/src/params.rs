//! Model parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, to_f64, Rational};

/// Weights `θ` (lower records) and `ζ` (upper records), both positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoParam {
    pub theta: Rational,
    pub zeta: Rational,
}

impl TwoParam {
    pub fn new(theta: Rational, zeta: Rational) -> Result<Self> {
        if !theta.is_positive() || !zeta.is_positive() {
            return Err(Error::Domain(format!(
                "theta = {theta} and zeta = {zeta} must be positive"
            )));
        }
        Ok(TwoParam { theta, zeta })
    }

    /// Parses decimal or `a/b` strings.
    pub fn parse(theta: &str, zeta: &str) -> Result<Self> {
        TwoParam::new(parse_rational(theta)?, parse_rational(zeta)?)
    }

    pub fn uniform() -> Self {
        TwoParam {
            theta: Rational::one(),
            zeta: Rational::one(),
        }
    }

    pub fn swapped(&self) -> Self {
        TwoParam {
            theta: self.zeta.clone(),
            zeta: self.theta.clone(),
        }
    }

    pub fn theta_f64(&self) -> f64 {
        to_f64(&self.theta)
    }

    pub fn zeta_f64(&self) -> f64 {
        to_f64(&self.zeta)
    }

    /// As general parameters with every `α_k = 0`.
    pub fn to_general(&self) -> GeneralParams {
        GeneralParams {
            theta: self.theta.clone(),
            zeta: self.zeta.clone(),
            alpha: BTreeMap::new(),
            tail: Rational::zero(),
        }
    }
}

impl fmt::Display for TwoParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta={},zeta={}", self.theta, self.zeta)
    }
}

/// `θ`, `ζ` and the block discounts `α_k` (`k != 0`); indices not listed
/// explicitly take the `tail` value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralParams {
    pub theta: Rational,
    pub zeta: Rational,
    pub alpha: BTreeMap<isize, Rational>,
    pub tail: Rational,
}

impl GeneralParams {
    /// Builds and checks the principal domain.
    pub fn new(
        theta: Rational,
        zeta: Rational,
        alpha: BTreeMap<isize, Rational>,
        tail: Rational,
    ) -> Result<Self> {
        let p = GeneralParams {
            theta,
            zeta,
            alpha,
            tail,
        };
        p.check_domain()?;
        Ok(p)
    }

    /// The same discount `a` at every index.
    pub fn constant(theta: Rational, zeta: Rational, a: Rational) -> Result<Self> {
        GeneralParams::new(theta, zeta, BTreeMap::new(), a)
    }

    pub fn alpha(&self, k: isize) -> &Rational {
        self.alpha.get(&k).unwrap_or(&self.tail)
    }

    /// `θ + α_{-1} + ... + α_{-l}`: weight of a new lower record when `l` exist.
    pub fn lower_weight(&self, l: usize) -> Rational {
        let mut w = self.theta.clone();
        for i in 1..=l as isize {
            w += self.alpha(-i);
        }
        w
    }

    /// `ζ + α_1 + ... + α_u`.
    pub fn upper_weight(&self, u: usize) -> Rational {
        let mut w = self.zeta.clone();
        for i in 1..=u as isize {
            w += self.alpha(i);
        }
        w
    }

    pub fn is_two_param(&self) -> bool {
        self.tail.is_zero() && self.alpha.values().all(Zero::is_zero)
    }

    /// Strict positivity of `1 - α_k`, of every lower weight and of every
    /// upper weight. Partial sums past the last explicit index move by the
    /// tail value, so a negative tail fails and otherwise checking one step
    /// past the explicit indices suffices.
    pub fn check_domain(&self) -> Result<()> {
        let one = Rational::one();
        for (k, a) in &self.alpha {
            if a >= &one {
                return Err(Error::Domain(format!("1 - alpha_{k} = {} <= 0", &one - a)));
            }
        }
        if self.tail >= one {
            return Err(Error::Domain(format!("1 - tail alpha = {} <= 0", &one - &self.tail)));
        }
        if self.tail.is_negative() {
            return Err(Error::Domain(format!(
                "tail alpha {} < 0 drives record weights negative",
                self.tail
            )));
        }
        let lower_span = self.alpha.keys().filter(|k| **k < 0).map(|k| -k).max().unwrap_or(0) as usize;
        let upper_span = self.alpha.keys().filter(|k| **k > 0).max().copied().unwrap_or(0) as usize;
        for l in 0..=lower_span + 1 {
            let w = self.lower_weight(l);
            if !w.is_positive() {
                return Err(Error::Domain(format!("lower-record weight {w} <= 0 at l = {l}")));
            }
        }
        for u in 0..=upper_span + 1 {
            let w = self.upper_weight(u);
            if !w.is_positive() {
                return Err(Error::Domain(format!("upper-record weight {w} <= 0 at u = {u}")));
            }
        }
        Ok(())
    }

    /// Parses the `"k:v,k:v;tail:v"` alpha grammar.
    pub fn parse_alpha(spec: &str) -> Result<(BTreeMap<isize, Rational>, Rational)> {
        let mut alpha = BTreeMap::new();
        let mut tail = Rational::zero();
        for section in spec.split(';') {
            for item in section.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let (key, value) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("{item:?}: expected k:v")))?;
                let value = parse_rational(value)?;
                if key.trim() == "tail" {
                    tail = value;
                } else {
                    let k: isize = key
                        .trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("{key:?}: {e}")))?;
                    if k == 0 {
                        return Err(Error::Parse("alpha_0 is not a parameter".into()));
                    }
                    alpha.insert(k, value);
                }
            }
        }
        Ok((alpha, tail))
    }

    pub fn parse(theta: &str, zeta: &str, alpha: &str) -> Result<Self> {
        let (alpha, tail) = GeneralParams::parse_alpha(alpha)?;
        GeneralParams::new(parse_rational(theta)?, parse_rational(zeta)?, alpha, tail)
    }

    pub fn alpha_spec(&self) -> String {
        let explicit: Vec<String> = self
            .alpha
            .iter()
            .map(|(k, v)| format!("{k}:{}", format_rational(v)))
            .collect();
        format!("{};tail:{}", explicit.join(","), format_rational(&self.tail))
    }
}

impl fmt::Display for GeneralParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theta={},zeta={},alpha={}",
            self.theta,
            self.zeta,
            self.alpha_spec()
        )
    }
}

/// The degenerate limit laws of the two-parameter family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LimitFamily {
    /// Every position is a record, lower with probability `p`.
    BernoulliPyramid(Rational),
    /// One proper record; the word starts `(1, n)` with probability `p`, else `(n, 1)`.
    SingleRecord(Rational),
    /// `θ → 0`: the word is `1` followed by a shifted `(1, ζ)` word.
    ThetaZero(Rational),
    /// `ζ → 0`: the word is `n` followed by a `(θ, 1)` word.
    ZetaZero(Rational),
}

impl LimitFamily {
    pub fn validate(&self) -> Result<()> {
        match self {
            LimitFamily::BernoulliPyramid(p) | LimitFamily::SingleRecord(p) => {
                if p.is_negative() || p > &Rational::one() {
                    return Err(Error::Argument(format!("p = {p} outside [0, 1]")));
                }
            }
            LimitFamily::ThetaZero(x) | LimitFamily::ZetaZero(x) => {
                if !x.is_positive() {
                    return Err(Error::Argument(format!("parameter {x} must be positive")));
                }
            }
        }
        Ok(())
    }

    pub fn parameter(&self) -> &Rational {
        match self {
            LimitFamily::BernoulliPyramid(p)
            | LimitFamily::SingleRecord(p)
            | LimitFamily::ThetaZero(p)
            | LimitFamily::ZetaZero(p) => p,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LimitFamily::BernoulliPyramid(_) => "bernoulli-pyramid",
            LimitFamily::SingleRecord(_) => "single-record",
            LimitFamily::ThetaZero(_) => "theta-zero",
            LimitFamily::ZetaZero(_) => "zeta-zero",
        }
    }
}

impl fmt::Display for LimitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind(), self.parameter())
    }
}

impl FromStr for LimitFamily {
    type Err = Error;

    /// `"bernoulli-pyramid:1/2"`, `"single-record:1"`, `"theta-zero:2"`, `"zeta-zero:3"`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("{s:?}: expected kind:value")))?;
        let v = parse_rational(value)?;
        let fam = match kind.trim() {
            "bernoulli-pyramid" | "pyramid" => LimitFamily::BernoulliPyramid(v),
            "single-record" => LimitFamily::SingleRecord(v),
            "theta-zero" => LimitFamily::ThetaZero(v),
            "zeta-zero" => LimitFamily::ZetaZero(v),
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn two_param_requires_positivity() {
        assert!(TwoParam::new(int(0), int(1)).is_err());
        assert!(TwoParam::new(int(1), ratio(-1, 2)).is_err());
        assert!(TwoParam::parse("1/2", "5/2").is_ok());
    }

    #[test]
    fn alpha_grammar() {
        let p = GeneralParams::parse("1", "1", "1:1/2,-1:1/4;tail:0").unwrap();
        assert_eq!(p.alpha(1), &ratio(1, 2));
        assert_eq!(p.alpha(-1), &ratio(1, 4));
        assert_eq!(p.alpha(7), &int(0));
        let q = GeneralParams::parse("1", "1", &p.alpha_spec()).unwrap();
        assert_eq!(p, q);
        assert!(GeneralParams::parse_alpha("0:1").is_err());
        assert!(GeneralParams::parse_alpha("x").is_err());
        let t = GeneralParams::parse("2", "3", "tail:1/2").unwrap();
        assert_eq!(t.alpha(-5), &ratio(1, 2));
    }

    #[test]
    fn principal_domain() {
        // 1 - alpha_k must be positive
        assert!(GeneralParams::parse("1", "1", "2:1").is_err());
        assert!(GeneralParams::parse("1", "1", "tail:1").is_err());
        // negative discounts are fine while the weights stay positive
        assert!(GeneralParams::parse("1", "1", "-1:-1/2").is_ok());
        assert!(GeneralParams::parse("1", "1", "-1:-1,-2:0").is_err());
        assert!(GeneralParams::parse("1", "1", "3:-2").is_err());
        assert!(GeneralParams::parse("1", "1", "tail:-1/10").is_err());
        assert!(GeneralParams::parse("0", "1", "-1:1/2").is_err());
        let p = GeneralParams::parse("1", "1", "-1:-1/2").unwrap();
        assert_eq!(p.lower_weight(1), ratio(1, 2));
    }

    #[test]
    fn limit_family_parse() {
        let f: LimitFamily = "bernoulli-pyramid:1/2".parse().unwrap();
        assert_eq!(f, LimitFamily::BernoulliPyramid(ratio(1, 2)));
        assert!("single-record:2".parse::<LimitFamily>().is_err());
        assert!("theta-zero:0".parse::<LimitFamily>().is_err());
        assert!("nope:1".parse::<LimitFamily>().is_err());
    }
}
