use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_FATIGUE_RATE: f64 = 1.0;

/// Per-muscle constants: maximum voluntary contraction (N) and fatigue rate `k` (1/min).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuscleProfile {
    mvc: f64,
    k: f64,
}

impl MuscleProfile {
    pub fn new(mvc: f64, k: f64) -> Result<Self> {
        if !(mvc.is_finite() && mvc > 0.0) {
            return Err(Error::InvalidArgument(format!("mvc must be positive, got {mvc}")));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
        }
        Ok(Self { mvc, k })
    }

    /// Muscle with the default fatigue rate of 1 min⁻¹.
    pub fn with_mvc(mvc: f64) -> Result<Self> {
        Self::new(mvc, DEFAULT_FATIGUE_RATE)
    }

    pub fn mvc(&self) -> f64 {
        self.mvc
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// External load sampled at increasing times and linearly interpolated in between.
///
/// Times are in minutes and start at zero; loads are in newtons. A step change
/// is written as two samples a short interval apart.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadProfile {
    times: Vec<f64>,
    loads: Vec<f64>,
    // running trapezoid integral of load (N·min) at each sample time
    cumulative: Vec<f64>,
}

pub const PROFILE_CSV_HEADER: [&str; 2] = ["time_min", "load_N"];

impl LoadProfile {
    pub fn new(samples: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let (times, loads): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
        if let Some(i) = Self::first_violation(&times, &loads)? {
            return Err(Error::InvalidArgument(Self::describe_violation(&times, &loads, i)));
        }
        Ok(Self::from_validated(times, loads))
    }

    /// Constant `load` held from 0 to `duration` minutes.
    pub fn constant(load: f64, duration: f64) -> Result<Self> {
        Self::new([(0.0, load), (duration, load)])
    }

    fn from_validated(times: Vec<f64>, loads: Vec<f64>) -> Self {
        let mut cumulative = Vec::with_capacity(times.len());
        cumulative.push(0.0);
        for i in 1..times.len() {
            let area = 0.5 * (loads[i - 1] + loads[i]) * (times[i] - times[i - 1]);
            cumulative.push(cumulative[i - 1] + area);
        }
        Self {
            times,
            loads,
            cumulative,
        }
    }

    // Index of the first offending sample, or an error for too-short input.
    fn first_violation(times: &[f64], loads: &[f64]) -> Result<Option<usize>> {
        if times.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "load profile needs at least 2 samples, got {}",
                times.len()
            )));
        }
        for i in 0..times.len() {
            let bad_time = !times[i].is_finite()
                || (i == 0 && times[0] != 0.0)
                || (i > 0 && times[i] <= times[i - 1]);
            let bad_load = !loads[i].is_finite() || loads[i] < 0.0;
            if bad_time || bad_load {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn describe_violation(times: &[f64], loads: &[f64], i: usize) -> String {
        if !loads[i].is_finite() || loads[i] < 0.0 {
            format!("sample {i}: load must be finite and non-negative, got {}", loads[i])
        } else if i == 0 {
            format!("profile must start at time 0, got {}", times[0])
        } else {
            format!(
                "sample {i}: times must be strictly increasing ({} after {})",
                times[i],
                times[i - 1]
            )
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn loads(&self) -> &[f64] {
        &self.loads
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.loads.iter().copied())
    }

    /// Last sample time, in minutes.
    pub fn duration(&self) -> f64 {
        *self.times.last().expect("profile has at least 2 samples")
    }

    pub fn max_load(&self) -> f64 {
        self.loads.iter().copied().fold(0.0, f64::max)
    }

    /// Same profile with every load multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.samples().map(|(t, l)| (t, l * factor)))
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        if !(0.0..=self.duration()).contains(&t) {
            return Err(Error::Domain(format!(
                "t = {t} min lies outside the profile domain [0, {}]",
                self.duration()
            )));
        }
        Ok(())
    }

    // Segment index i such that times[i] <= t <= times[i + 1].
    fn segment(&self, t: f64) -> usize {
        let upper = self.times.partition_point(|&x| x <= t);
        upper.saturating_sub(1).min(self.times.len() - 2)
    }

    /// Load at segment `i`, evaluated on that segment's line.
    pub(crate) fn segment_load(&self, i: usize, t: f64) -> f64 {
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let (l0, l1) = (self.loads[i], self.loads[i + 1]);
        l0 + (l1 - l0) * (t - t0) / (t1 - t0)
    }

    pub fn load_at(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.segment_load(self.segment(t), t))
    }

    /// ∫₀ᵗ load du in N·min; exact for the piecewise-linear interpolant.
    pub fn integral(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        let i = self.segment(t);
        let partial = 0.5 * (self.loads[i] + self.segment_load(i, t)) * (t - self.times[i]);
        Ok(self.cumulative[i] + partial)
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != PROFILE_CSV_HEADER {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "expected header `{}`, found `{}`",
                    PROFILE_CSV_HEADER.join(","),
                    header.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }

        let mut times = Vec::new();
        let mut loads = Vec::new();
        let mut lines = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 2 fields, found {}", record.len()),
                });
            }
            let field = |j: usize| -> Result<f64> {
                record[j].parse::<f64>().map_err(|e| Error::Parse {
                    line,
                    message: format!("`{}` is not a number: {e}", &record[j]),
                })
            };
            times.push(field(0)?);
            loads.push(field(1)?);
            lines.push(line);
        }

        match Self::first_violation(&times, &loads) {
            Ok(None) => Ok(Self::from_validated(times, loads)),
            Ok(Some(i)) => Err(Error::Parse {
                line: lines[i],
                message: Self::describe_violation(&times, &loads, i),
            }),
            Err(e) => Err(Error::Parse {
                line: lines.last().copied().unwrap_or(1),
                message: e.to_string(),
            }),
        }
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_reader(file)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(PROFILE_CSV_HEADER)?;
        for (t, l) in self.samples() {
            wtr.write_record([t.to_string(), l.to_string()])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }
}
