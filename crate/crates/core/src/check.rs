use std::fmt;

const KEPT_FAILURES: usize = 20;

/// Outcome of an exhaustive property check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Number of instances examined.
    pub checked: usize,
    pub failure_count: usize,
    /// The first few counterexamples.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Records one instance; `detail` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(detail());
        }
    }

    pub fn fail(&mut self, detail: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(detail);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report's counts and messages into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
        self.failure_count += other.failure_count;
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checked, {} failed",
            self.name, self.checked, self.failure_count
        )?;
        for failure in &self.failures {
            write!(f, "\n  counterexample: {failure}")?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}
