use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource limits shared by group construction, lattice enumeration and
/// the verification harness.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest group order `group_from_permutations` will enumerate.
    pub max_elements: usize,
    /// Largest group order for which the full subgroup lattice is built.
    pub max_lattice_order: usize,
    /// Largest number of subgroups a lattice may hold.
    pub max_subgroups: usize,
    /// Cooperative deadline, checked at loop boundaries.
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 200_000,
            max_lattice_order: 2000,
            max_subgroups: 20_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub fn check_deadline(&self, what: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::resource(format!(
                "time budget exhausted during {what}"
            ))),
            _ => Ok(()),
        }
    }
}
