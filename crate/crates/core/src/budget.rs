/// Upper bound on the number of matrix cells (unknowns times equations, or
/// stored nonzeros) a computation may assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_cells: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_cells: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("resource limit: {what} needs {needed} cells, budget is {budget}")]
pub struct ResourceExceeded {
    pub what: &'static str,
    pub needed: u64,
    pub budget: u64,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self { max_cells: u64::MAX }
    }

    pub fn check(&self, what: &'static str, needed: u64) -> Result<(), ResourceExceeded> {
        if needed > self.max_cells {
            Err(ResourceExceeded {
                what,
                needed,
                budget: self.max_cells,
            })
        } else {
            Ok(())
        }
    }
}
