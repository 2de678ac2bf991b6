use serde::{Deserialize, Serialize};

/// Runtime limits, echoed into every report for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct Config {
    /// Depth to which rays are developed when certifying boundary answers.
    pub horizon: usize,
    /// Radius of the witness search ball used by the tuple decider.
    pub search_radius: usize,
    /// Cap on ball radii accepted by enumeration commands.
    pub ball_cap: usize,
    /// Cube dimension up to which link flagness is validated.
    pub dimension_cap: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config { horizon: 64, search_radius: 6, ball_cap: 5, dimension_cap: 3 }
    }
}
