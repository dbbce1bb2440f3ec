use serde::Serialize;

/// Outcome of an exhaustive or sampled check: how many cases ran and the
/// counterexamples found (capped at [`Report::MAX_KEPT`]).
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl Report {
    pub const MAX_KEPT: usize = 20;

    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), ..Default::default() }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, what: impl Into<String>) {
        self.checked += 1;
        self.failed += 1;
        if self.failures.len() < Self::MAX_KEPT {
            self.failures.push(what.into());
        }
    }

    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(what());
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < Self::MAX_KEPT {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}
