use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::grid::{Field, GridParams, RadialGrid};
use crate::error::{FujdError, Result};

pub const CHECKPOINT_HEADER: &str = "FUJD1";

/// Grid descriptor and node values; restored on a rebuilt grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub grid: GridParams,
    pub robin: f64,
    pub max_nodes: usize,
    pub field: Field,
}

impl Checkpoint {
    pub fn new(grid: &RadialGrid, max_nodes: usize, field: &Field) -> Self {
        Self {
            grid: grid.params,
            robin: grid.robin,
            max_nodes,
            field: field.clone(),
        }
    }

    pub fn to_string(&self) -> Result<String> {
        let body = serde_json::to_string(self).map_err(|e| FujdError::Checkpoint(e.to_string()))?;
        Ok(format!("{CHECKPOINT_HEADER}\n{body}\n"))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (head, body) = text
            .split_once('\n')
            .ok_or_else(|| FujdError::Checkpoint("missing header line".into()))?;
        if head.trim_end() != CHECKPOINT_HEADER {
            return Err(FujdError::Checkpoint(format!(
                "unsupported header {head:?}, expected {CHECKPOINT_HEADER}"
            )));
        }
        serde_json::from_str(body).map_err(|e| FujdError::Checkpoint(e.to_string()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_string()?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Rebuilds the grid and checks the node count against the stored field.
    pub fn restore(&self) -> Result<(RadialGrid, Field)> {
        let grid = RadialGrid::new(self.grid, self.robin, self.max_nodes)?;
        if grid.len() != self.field.values.len() {
            return Err(FujdError::Checkpoint(format!(
                "grid has {} nodes, checkpoint has {} values",
                grid.len(),
                self.field.values.len()
            )));
        }
        Ok((grid, self.field.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::DEFAULT_MAX_NODES;

    #[test]
    fn round_trip_is_exact() {
        let grid = RadialGrid::new(GridParams::default(), 0.8, DEFAULT_MAX_NODES).unwrap();
        let field = Field::sample(&grid, 12.5, |r| (1.0 + r * r).powf(-0.9) / 3.0);
        let cp = Checkpoint::new(&grid, DEFAULT_MAX_NODES, &field);
        let back = Checkpoint::parse(&cp.to_string().unwrap()).unwrap();
        assert_eq!(back, cp);
        let (g2, f2) = back.restore().unwrap();
        assert_eq!(g2.nodes, grid.nodes);
        assert_eq!(f2, field);
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(Checkpoint::parse("FUJD0\n{}").is_err());
        assert!(Checkpoint::parse("no newline").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.fujd");
        let grid = RadialGrid::new(GridParams::default(), 0.0, DEFAULT_MAX_NODES).unwrap();
        let cp = Checkpoint::new(&grid, DEFAULT_MAX_NODES, &Field::sample(&grid, 1.0, |r| r));
        cp.write(&path).unwrap();
        assert_eq!(Checkpoint::read(&path).unwrap(), cp);
    }
}
