use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// Summary of one algorithm run. Phases keep their execution order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub seed: u64,
    pub n: usize,
    pub delta: usize,
    pub phases: IndexMap<String, u64>,
    pub total_rounds: u64,
    pub valid: bool,
    /// Zero unless timing was requested, so reports stay byte-stable.
    pub wall_ms: u64,
}

impl RunReport {
    pub fn new(algorithm: &str, seed: u64, n: usize, delta: usize) -> Self {
        RunReport {
            algorithm: algorithm.to_string(),
            seed,
            n,
            delta,
            phases: IndexMap::new(),
            total_rounds: 0,
            valid: false,
            wall_ms: 0,
        }
    }

    /// Adds `rounds` to phase `name`, creating it at the end if new.
    pub fn charge(&mut self, name: &str, rounds: u64) {
        *self.phases.entry(name.to_string()).or_insert(0) += rounds;
        self.total_rounds += rounds;
    }

    pub fn phase(&self, name: &str) -> Option<u64> {
        self.phases.get(name).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_keeps_phase_order() {
        let mut r = RunReport::new("det", 7, 10, 3);
        for (i, name) in ["linial", "ruling_set", "layers", "layer_coloring", "brooks"]
            .iter()
            .enumerate()
        {
            r.charge(name, i as u64 + 1);
        }
        assert_eq!(r.total_rounds, 15);
        let text = r.to_json();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(
            back.phases.keys().next().map(String::as_str),
            Some("linial")
        );
        assert_eq!(text, back.to_json());
    }
}
