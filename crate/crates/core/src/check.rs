use alloc::string::String;
use alloc::vec::Vec;

/// Failures kept verbatim; later ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 25;

/// Running count of checked cases and failures of an identity check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failed += other.failed;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}
