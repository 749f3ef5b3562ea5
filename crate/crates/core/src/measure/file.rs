use serde::{Deserialize, Serialize};

use super::{MeasureError, MeasureTower, Result};
use crate::exactq::{format_rational, parse_rational};

/// On-disk form of a tower: values as `"num/den"` strings. A present
/// `denom_exponent` is treated as a declared bound and enforced on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerFile {
    pub ell: u64,
    pub rank: usize,
    pub depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denom_exponent: Option<i64>,
    pub levels: Vec<Vec<String>>,
}

impl TowerFile {
    pub fn from_tower(tower: &MeasureTower) -> Self {
        TowerFile {
            ell: tower.ell(),
            rank: tower.rank(),
            depth: tower.depth(),
            denom_exponent: Some(tower.denom_exponent()),
            levels: tower.levels().iter().map(|l| l.iter().map(format_rational).collect()).collect(),
        }
    }

    pub fn to_tower(&self) -> Result<MeasureTower> {
        if self.levels.len() != self.depth + 1 {
            return Err(MeasureError::File(format!("depth {} but {} levels", self.depth, self.levels.len())));
        }
        // reject oversized shapes before parsing any values
        for (n, table) in self.levels.iter().enumerate() {
            let expected = super::cell_count(self.ell.max(3), self.rank.clamp(1, 3), n)?;
            if table.len() as u64 != expected {
                return Err(MeasureError::BadShape { level: n, got: table.len(), expected });
            }
        }
        let levels = self
            .levels
            .iter()
            .map(|l| {
                l.iter()
                    .map(|s| parse_rational(s).map_err(|e| MeasureError::File(e.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MeasureTower::from_levels_bounded(self.ell, self.rank, levels, self.denom_exponent)
    }

    pub fn parse(json: &str) -> Result<MeasureTower> {
        let file: TowerFile = serde_json::from_str(json).map_err(|e| MeasureError::File(e.to_string()))?;
        file.to_tower()
    }

    pub fn to_json(tower: &MeasureTower) -> String {
        serde_json::to_string(&Self::from_tower(tower)).expect("tower file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::super::bernoulli_measure;
    use super::*;

    #[test]
    fn roundtrip() {
        let e = bernoulli_measure(3, 7, 2).unwrap();
        let json = TowerFile::to_json(&e);
        assert_eq!(TowerFile::parse(&json).unwrap(), e);
    }

    #[test]
    fn declared_bound_rejects() {
        let json = r#"{"ell":3,"rank":1,"depth":1,"denom_exponent":0,"levels":[["1/3"],["1/3","0","0"]]}"#;
        assert!(matches!(TowerFile::parse(json), Err(MeasureError::NotBounded { .. })));
        let bad = r#"{"ell":3,"rank":1,"depth":1,"levels":[["1"],["1","1","0"]]}"#;
        assert!(matches!(TowerFile::parse(bad), Err(MeasureError::NotDistribution { .. })));
        let huge = r#"{"ell":3,"rank":3,"depth":40,"levels":[]}"#;
        assert!(TowerFile::parse(huge).is_err());
    }
}
