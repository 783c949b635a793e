//! Random generation under every model: direct samplers, coherent streams,
//! shape-driven ranking, conditioned words and window projections.

pub mod conditioned;
pub mod models;
pub mod rng;
pub mod shape;
pub mod stream;

pub use conditioned::{sample_conditioned, sample_conditioned_with};
pub use models::{
    sample_general, sample_general_with, sample_integer_window, sample_integer_window_with,
    sample_limit, sample_limit_with, sample_two_param, sample_two_param_with, two_param_ranks,
};
pub use rng::substream;
pub use shape::{
    sample_from_shape, sample_from_shape_traced, sample_from_shape_with, sample_shape,
    sample_shape_with, ShapeParams, DEFAULT_TRUNCATION,
};
pub use stream::{StreamModel, StreamState, StreamStep};

use serde_json::json;

use crate::perm::Permutation;
use crate::records::extract_records;

/// `{"n","perm","l","u","record_values","record_times"}` with record values
/// ascending and times aligned to them.
pub fn sample_json(p: &Permutation) -> serde_json::Value {
    let prof = extract_records(p);
    json!({
        "n": p.len(),
        "perm": p.to_string(),
        "l": prof.lower_count(),
        "u": prof.upper_count(),
        "record_values": prof.values().values(),
        "record_times": prof.times(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_emission() {
        let p: Permutation = "3,1,4,2,5".parse().unwrap();
        let v = sample_json(&p);
        assert_eq!(v["l"], 1);
        assert_eq!(v["u"], 2);
        assert_eq!(v["record_values"], json!([1, 3, 4, 5]));
        assert_eq!(v["record_times"], json!([2, 1, 3, 5]));
    }
}
