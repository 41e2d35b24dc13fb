use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::output::fmt_sig;

pub const CURVE_CSV_HEADER: [&str; 3] = ["t", "value_a", "value_b"];

/// Two curves on a shared time axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedCurve {
    pub t: Vec<f64>,
    pub value_a: Vec<f64>,
    pub value_b: Vec<f64>,
}

impl PairedCurve {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn max_abs_deviation(&self) -> f64 {
        self.value_a
            .iter()
            .zip(&self.value_b)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(CURVE_CSV_HEADER)?;
        for i in 0..self.len() {
            wtr.write_record([fmt_sig(self.t[i]), fmt_sig(self.value_a[i]), fmt_sig(self.value_b[i])])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }
}

/// `samples` evenly spaced points covering `[start, end]`.
pub(crate) fn linspace(start: f64, end: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|i| if i + 1 == n { end } else { start + (end - start) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}
