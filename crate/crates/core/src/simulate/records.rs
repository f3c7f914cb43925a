use std::fmt::Write;

/// One CSV row of a simulation report.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub seed: u64,
    pub variant: String,
    /// Majorana mode count `N`, or site count `n` for the complex models.
    pub n: usize,
    pub t: f64,
    /// Trotter step count; empty for quantities that do not depend on it.
    pub s: Option<usize>,
    pub observable: String,
    pub method: String,
    pub value_re: f64,
    pub value_im: f64,
}

impl ResultRecord {
    pub const HEADER: &'static str = "seed,variant,N,t,s,observable,method,value_re,value_im";

    /// Row without trailing newline. Floats use the shortest round-trip form.
    pub fn to_csv_row(&self) -> String {
        let mut row = String::new();
        let s = self.s.map(|s| s.to_string()).unwrap_or_default();
        write!(
            row,
            "{},{},{},{:?},{},{},{},{:?},{:?}",
            self.seed, self.variant, self.n, self.t, s, self.observable, self.method, self.value_re, self.value_im
        )
        .expect("writing to a String cannot fail");
        row
    }

    /// Sort key giving the pinned output order: seed, then t, then s.
    pub fn sort_key(&self) -> (u64, f64, usize) {
        (self.seed, self.t, self.s.unwrap_or(0))
    }
}
