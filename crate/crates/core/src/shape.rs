//! Truncated two-sided nondecreasing sequences `(ρ_k)` in `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{from_f64, Rational};

/// `ρ_{-K_l} <= ... <= ρ_0 <= ... <= ρ_{K_u}` with entries of any ordered type.
#[derive(Clone, PartialEq, Debug)]
pub struct Shape<T> {
    center: T,
    /// `ρ_{-1}, ρ_{-2}, ...`
    left: Vec<T>,
    /// `ρ_1, ρ_2, ...`
    right: Vec<T>,
}

pub type TwoSidedShape = Shape<f64>;
pub type ExactShape = Shape<Rational>;

#[derive(Serialize, Deserialize)]
struct ShapeFile {
    rho: Vec<f64>,
    center_index: usize,
}

impl<T: Clone + PartialOrd> Shape<T> {
    pub fn center(&self) -> &T {
        &self.center
    }

    pub fn left_len(&self) -> usize {
        self.left.len()
    }

    pub fn right_len(&self) -> usize {
        self.right.len()
    }

    pub fn rho(&self, k: isize) -> Option<&T> {
        match k.signum() {
            0 => Some(&self.center),
            -1 => self.left.get((-k - 1) as usize),
            _ => self.right.get((k - 1) as usize),
        }
    }

    pub fn rho_or_truncation(&self, k: isize) -> Result<&T> {
        self.rho(k).ok_or_else(|| {
            Error::Truncation(format!(
                "rho_{k} needed but the shape stops at -{}..{}",
                self.left.len(),
                self.right.len()
            ))
        })
    }

    /// All entries in increasing index order.
    pub fn ascending(&self) -> Vec<T> {
        let mut v: Vec<T> = self.left.iter().rev().cloned().collect();
        v.push(self.center.clone());
        v.extend(self.right.iter().cloned());
        v
    }
}

impl<T> Shape<T>
where
    T: Clone + PartialOrd + for<'a> std::ops::Sub<&'a T, Output = T>,
{
    /// `p_k = ρ_{k+1} - ρ_k` for `k < 0` and `ρ_k - ρ_{k-1}` for `k > 0`.
    pub fn gap(&self, k: isize) -> Result<T> {
        let (hi, lo) = match k.signum() {
            -1 => (k + 1, k),
            1 => (k, k - 1),
            _ => return Err(Error::Argument("the center has no gap".into())),
        };
        Ok(self.rho_or_truncation(hi)?.clone() - self.rho_or_truncation(lo)?)
    }
}

impl TwoSidedShape {
    pub fn new(center: f64, left: Vec<f64>, right: Vec<f64>) -> Result<Self> {
        let s = Shape {
            center,
            left,
            right,
        };
        s.validate()?;
        Ok(s)
    }

    /// From entries in increasing index order with `ρ_0` at `center_index`.
    pub fn from_ascending(rho: &[f64], center_index: usize) -> Result<Self> {
        if center_index >= rho.len() {
            return Err(Error::Validation(format!(
                "center index {center_index} outside 0..{}",
                rho.len()
            )));
        }
        TwoSidedShape::new(
            rho[center_index],
            rho[..center_index].iter().rev().copied().collect(),
            rho[center_index + 1..].to_vec(),
        )
    }

    fn validate(&self) -> Result<()> {
        let v = self.ascending();
        if let Some(x) = v.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::Validation(format!("rho entry {x} outside [0, 1]")));
        }
        if v.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation("rho must be nondecreasing".into()));
        }
        Ok(())
    }

    /// Mass below `ρ_{-K}`.
    pub fn lower_tail_mass(&self) -> f64 {
        *self.left.last().unwrap_or(&self.center)
    }

    /// Mass above `ρ_K`.
    pub fn upper_tail_mass(&self) -> f64 {
        1.0 - self.right.last().unwrap_or(&self.center)
    }

    /// Sum of all stored gaps; never exceeds 1.
    pub fn gap_sum(&self) -> f64 {
        self.right.last().unwrap_or(&self.center) - self.left.last().unwrap_or(&self.center)
    }

    pub fn to_exact(&self) -> ExactShape {
        Shape {
            center: from_f64(self.center),
            left: self.left.iter().map(|&x| from_f64(x)).collect(),
            right: self.right.iter().map(|&x| from_f64(x)).collect(),
        }
    }

    /// `{"rho":[...],"center_index":i}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ShapeFile {
            rho: self.ascending(),
            center_index: self.left.len(),
        })
        .expect("shape serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: ShapeFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("shape file: {e}")))?;
        TwoSidedShape::from_ascending(&f.rho, f.center_index)
    }
}

impl ExactShape {
    pub fn new(center: Rational, left: Vec<Rational>, right: Vec<Rational>) -> Result<Self> {
        let s = Shape {
            center,
            left,
            right,
        };
        let v = s.ascending();
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        if v.iter().any(|x| x < &zero || x > &one) || v.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation(
                "rho must be nondecreasing inside [0, 1]".into(),
            ));
        }
        Ok(s)
    }
}
