//! Coherent streams: one more position per step, drawn from a step law.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;

use super::rng::{substream, uniform};
use crate::composition::{Growth, GrowingComposition};
use crate::error::Result;
use crate::exact::laws::Model;
use crate::params::LimitFamily;
use crate::perm::{InitialRanks, Permutation};
use crate::rational::to_f64;
use crate::records::{RecordProfile, RecordValues};
use crate::shape::TwoSidedShape;

/// Floating-point form of a sequential model.
#[derive(Clone, PartialEq, Debug)]
pub enum StreamModel {
    TwoParam { theta: f64, zeta: f64 },
    General { theta: f64, zeta: f64, alpha: BTreeMap<isize, f64>, tail: f64 },
    Pyramid { p: f64 },
    SingleRecord { p: f64 },
    ThetaZero { zeta: f64 },
    ZetaZero { theta: f64 },
    FixedShape(TwoSidedShape),
}

impl StreamModel {
    pub fn from_model(model: &Model) -> Result<Self> {
        model.validate()?;
        Ok(match model {
            Model::TwoParam(p) => StreamModel::TwoParam {
                theta: p.theta_f64(),
                zeta: p.zeta_f64(),
            },
            Model::General(p) => StreamModel::General {
                theta: to_f64(&p.theta),
                zeta: to_f64(&p.zeta),
                alpha: p.alpha.iter().map(|(k, v)| (*k, to_f64(v))).collect(),
                tail: to_f64(&p.tail),
            },
            Model::Limit(LimitFamily::BernoulliPyramid(p)) => StreamModel::Pyramid { p: to_f64(p) },
            Model::Limit(LimitFamily::SingleRecord(p)) => StreamModel::SingleRecord { p: to_f64(p) },
            Model::Limit(LimitFamily::ThetaZero(z)) => StreamModel::ThetaZero { zeta: to_f64(z) },
            Model::Limit(LimitFamily::ZetaZero(t)) => StreamModel::ZetaZero { theta: to_f64(t) },
            Model::FixedShape(s) => {
                let asc: Vec<f64> = s.ascending().iter().map(to_f64).collect();
                StreamModel::FixedShape(TwoSidedShape::from_ascending(&asc, s.left_len())?)
            }
        })
    }

    fn alpha(&self, k: isize) -> f64 {
        match self {
            StreamModel::General { alpha, tail, .. } => *alpha.get(&k).unwrap_or(tail),
            _ => 0.0,
        }
    }
}

/// One emitted position.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StreamStep {
    pub n: usize,
    pub rank: usize,
    /// `None` for the first position.
    pub growth: Option<Growth>,
}

/// A growing coherent word together with its record structure.
#[derive(Clone, Debug)]
pub struct StreamState {
    model: StreamModel,
    rng: ChaCha8Rng,
    ranks: Vec<usize>,
    g: GrowingComposition,
    lower_times: Vec<usize>,
    upper_times: Vec<usize>,
    lower_weight: f64,
    upper_weight: f64,
}

impl StreamState {
    pub fn new(model: StreamModel, seed: u64) -> Self {
        StreamState::with_rng(model, substream(seed, 0))
    }

    pub fn with_rng(model: StreamModel, rng: ChaCha8Rng) -> Self {
        let (lower_weight, upper_weight) = match &model {
            StreamModel::General { theta, zeta, .. } => (*theta, *zeta),
            _ => (0.0, 0.0),
        };
        StreamState {
            model,
            rng,
            ranks: Vec::new(),
            g: GrowingComposition::new(),
            lower_times: Vec::new(),
            upper_times: Vec::new(),
            lower_weight,
            upper_weight,
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn composition(&self) -> &GrowingComposition {
        &self.g
    }

    pub fn lower_count(&self) -> usize {
        self.lower_times.len()
    }

    pub fn upper_count(&self) -> usize {
        self.upper_times.len()
    }

    pub fn prefix(&self) -> Permutation {
        InitialRanks::new(self.ranks.clone())
            .expect("stream ranks are valid")
            .to_permutation()
    }

    /// Record values and times of the current word.
    pub fn profile(&self) -> RecordProfile {
        let l = self.g.lower_count() as isize;
        let u = self.g.upper_count() as isize;
        let values = (-l..=u).map(|k| self.g.record_value(k)).collect();
        let mut times: Vec<usize> = self.lower_times.iter().rev().copied().collect();
        times.push(1);
        times.extend_from_slice(&self.upper_times);
        RecordProfile::new(
            RecordValues::new(values, l as usize).expect("tracked values are valid"),
            times,
        )
        .expect("tracked profile is valid")
    }

    /// Weights (unnormalized) of a new lower record, of a new upper record,
    /// and of block `k` as a function of its label and size.
    fn weights(&self) -> Result<(f64, f64)> {
        let size = self.g.size();
        Ok(match &self.model {
            StreamModel::TwoParam { theta, zeta } => (*theta, *zeta),
            StreamModel::General { .. } => (self.lower_weight, self.upper_weight),
            StreamModel::Pyramid { p } => (*p, 1.0 - p),
            StreamModel::SingleRecord { p } => {
                if size == 1 {
                    (1.0 - p, *p)
                } else {
                    (0.0, 0.0)
                }
            }
            StreamModel::ThetaZero { zeta } => (0.0, *zeta),
            StreamModel::ZetaZero { theta } => (*theta, 0.0),
            StreamModel::FixedShape(s) => {
                let l = self.g.lower_count() as isize;
                let u = self.g.upper_count() as isize;
                (*s.rho_or_truncation(-l)?, 1.0 - s.rho_or_truncation(u)?)
            }
        })
    }

    fn block_weight(&self, k: isize, size: usize) -> Result<f64> {
        Ok(match &self.model {
            StreamModel::General { .. } => size as f64 - self.model.alpha(k),
            StreamModel::Pyramid { .. } => 0.0,
            StreamModel::FixedShape(s) => s.gap(k)?,
            _ => size as f64,
        })
    }

    fn draw_rank(&mut self) -> Result<usize> {
        let j = self.g.size() + 1;
        let (wl, wu) = self.weights()?;
        if let StreamModel::TwoParam { .. } = self.model {
            let x = uniform(&mut self.rng) * (wl + wu + (j - 2) as f64);
            return Ok(if x < wl {
                1
            } else if x < wl + wu || j == 2 {
                j
            } else {
                (2 + (x - wl - wu) as usize).min(j - 1)
            });
        }
        let mut blocks = Vec::with_capacity(self.g.lower_count() + self.g.upper_count());
        let mut total = wl + wu;
        for (k, s) in self.g.blocks() {
            let w = self.block_weight(k, s)?;
            total += w;
            blocks.push((s, w));
        }
        let mut x = uniform(&mut self.rng) * total;
        if x < wl {
            return Ok(1);
        }
        x -= wl;
        if x < wu {
            return Ok(j);
        }
        x -= wu;
        let mut start = 2;
        let mut fallback = None;
        for &(s, w) in &blocks {
            if w > 0.0 {
                if x < w {
                    let slot = ((x / w) * s as f64) as usize;
                    return Ok(start + slot.min(s - 1));
                }
                fallback = Some(start + s - 1);
                x -= w;
            }
            start += s;
        }
        // rounding past the last positive weight
        Ok(fallback.unwrap_or(if wu > 0.0 { j } else { 1 }))
    }

    /// Appends one position.
    pub fn stream_next(&mut self) -> Result<StreamStep> {
        if self.ranks.is_empty() {
            self.ranks.push(1);
            return Ok(StreamStep {
                n: 1,
                rank: 1,
                growth: None,
            });
        }
        let rank = self.draw_rank()?;
        Ok(self.push(rank))
    }

    fn push(&mut self, rank: usize) -> StreamStep {
        let growth = self.g.push_rank(rank);
        self.ranks.push(rank);
        let n = self.ranks.len();
        match growth {
            Growth::Lower => {
                self.lower_times.push(n);
                let k = self.lower_times.len() as isize;
                self.lower_weight += self.model.alpha(-k);
            }
            Growth::Upper => {
                self.upper_times.push(n);
                let k = self.upper_times.len() as isize;
                self.upper_weight += self.model.alpha(k);
            }
            Growth::Interior(_) => {}
        }
        StreamStep {
            n,
            rank,
            growth: Some(growth),
        }
    }

    /// Extends to length `n` (no-op when already that long).
    pub fn advance_to(&mut self, n: usize) -> Result<()> {
        while self.ranks.len() < n {
            self.stream_next()?;
        }
        Ok(())
    }
}
