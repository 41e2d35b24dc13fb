use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use super::correlation::{icc, pearson_r};
use crate::catalog::{MetModel, PublishedValues, Region};
use crate::error::{Error, Result};
use crate::fatigue::met_dynamic;
use crate::output::{fmt_sig, line_chart_svg, Series};

pub const DEFAULT_GRID_START: f64 = 0.20;
pub const DEFAULT_GRID_END: f64 = 0.95;
pub const DEFAULT_GRID_STEP: f64 = 0.01;

pub const REPORT_CSV_HEADER: [&str; 5] = ["model_id", "region", "r", "icc", "n_grid_points"];

/// Relative loads at which the dynamic and catalog endurance times are compared.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonGrid {
    f_values: Vec<f64>,
    k: f64,
}

impl ComparisonGrid {
    pub fn new(f_values: Vec<f64>, k: f64) -> Result<Self> {
        if f_values.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "comparison grid needs at least 3 points, got {}",
                f_values.len()
            )));
        }
        if let Some(bad) = f_values.iter().find(|&&f| !(f > 0.0 && f <= 1.0)) {
            return Err(Error::InvalidArgument(format!(
                "grid value {bad} lies outside (0, 1]"
            )));
        }
        if f_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("grid values must be strictly increasing".into()));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
        }
        Ok(Self { f_values, k })
    }

    /// `start, start + step, …` up to and including `end` (within rounding).
    pub fn range(start: f64, end: f64, step: f64, k: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidArgument(format!("grid step must be positive, got {step}")));
        }
        if !(start.is_finite() && end.is_finite() && end >= start) {
            return Err(Error::InvalidArgument(format!(
                "grid end {end} must not precede start {start}"
            )));
        }
        let n = ((end - start) / step + 1e-9).floor() as usize + 1;
        // rounding to 12 decimals keeps e.g. 0.2 + 75·0.01 from landing just above 0.95
        let f_values = (0..n)
            .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
            .collect();
        Self::new(f_values, k)
    }

    pub fn f_values(&self) -> &[f64] {
        &self.f_values
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.f_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_values.is_empty()
    }
}

impl Default for ComparisonGrid {
    /// f_MVC from 0.20 to 0.95 in steps of 0.01 (76 points), k = 1 min⁻¹.
    fn default() -> Self {
        Self::range(DEFAULT_GRID_START, DEFAULT_GRID_END, DEFAULT_GRID_STEP, 1.0)
            .expect("default grid is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Compared { r: f64, icc: f64 },
    Skipped { reason: String },
}

/// One catalog model compared against the dynamic endurance time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelComparison {
    pub model_id: String,
    pub display_name: String,
    pub region: Region,
    /// Grid points inside the model's valid domain.
    pub f_values: Vec<f64>,
    pub met_model: Vec<f64>,
    pub met_dynamic: Vec<f64>,
    /// True when the model's domain removed some grid points.
    pub clipped: bool,
    pub outcome: Outcome,
    pub published: Option<PublishedValues>,
}

impl ModelComparison {
    pub fn r(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Compared { r, .. } => Some(r),
            Outcome::Skipped { .. } => None,
        }
    }

    pub fn icc(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Compared { icc, .. } => Some(icc),
            Outcome::Skipped { .. } => None,
        }
    }

    pub fn n_grid_points(&self) -> usize {
        self.f_values.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub grid: ComparisonGrid,
    pub records: Vec<ModelComparison>,
}

/// Compares the dynamic model's MET, −ln f/(k f), with each catalog model over the grid.
///
/// Models whose valid domain clips the grid are compared on the remaining points
/// and flagged; models left with fewer than 2 points are skipped with a reason.
pub fn replicate_table2<'a>(
    grid: &ComparisonGrid,
    models: impl IntoIterator<Item = &'a MetModel>,
) -> Result<ComparisonReport> {
    let records = models
        .into_iter()
        .map(|m| compare_model(grid, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport {
        grid: grid.clone(),
        records,
    })
}

fn compare_model(grid: &ComparisonGrid, model: &MetModel) -> Result<ModelComparison> {
    let mut f_values = Vec::with_capacity(grid.len());
    let mut met_model = Vec::with_capacity(grid.len());
    let mut met_dyn = Vec::with_capacity(grid.len());
    for &f in grid.f_values() {
        if let Ok(met) = model.evaluate(f) {
            f_values.push(f);
            met_model.push(met);
            met_dyn.push(met_dynamic(f, grid.k())?);
        }
    }
    let clipped = f_values.len() < grid.len();

    let outcome = if f_values.len() < 2 {
        Outcome::Skipped {
            reason: format!(
                "grid has {} point(s) inside valid domain {}",
                f_values.len(),
                model.valid_domain
            ),
        }
    } else {
        match (pearson_r(&met_model, &met_dyn), icc(&met_model, &met_dyn)) {
            (Ok(r), Ok(icc)) => Outcome::Compared { r, icc },
            (Err(e), _) | (_, Err(e)) => Outcome::Skipped { reason: e.to_string() },
        }
    };

    Ok(ModelComparison {
        model_id: model.id.clone(),
        display_name: model.display_name.clone(),
        region: model.region,
        f_values,
        met_model,
        met_dynamic: met_dyn,
        clipped,
        outcome,
        published: model.published,
    })
}

impl ComparisonReport {
    pub fn get(&self, model_id: &str) -> Option<&ModelComparison> {
        self.records.iter().find(|r| r.model_id == model_id)
    }

    pub fn region(&self, region: Region) -> impl Iterator<Item = &ModelComparison> {
        self.records.iter().filter(move |r| r.region == region)
    }

    /// Regions present in the report, in canonical order.
    pub fn regions(&self) -> Vec<Region> {
        Region::ALL
            .into_iter()
            .filter(|&g| self.records.iter().any(|r| r.region == g))
            .collect()
    }

    /// Mean ICC over the compared models of `region`.
    pub fn mean_icc(&self, region: Region) -> Option<f64> {
        let vals: Vec<f64> = self.region(region).filter_map(|r| r.icc()).collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    }

    /// `model_id,region,r,icc,n_grid_points`; skipped models leave r and icc empty.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(REPORT_CSV_HEADER)?;
        for rec in &self.records {
            wtr.write_record([
                rec.model_id.clone(),
                rec.region.to_string(),
                rec.r().map(fmt_sig).unwrap_or_default(),
                rec.icc().map(fmt_sig).unwrap_or_default(),
                rec.n_grid_points().to_string(),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }

    /// `f_mvc,met_<model_id>…,met_dynamic` for one region over the full grid.
    pub fn write_region_curves_csv<W: Write>(&self, region: Region, writer: W) -> Result<()> {
        let models: Vec<_> = self.region(region).collect();
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["f_mvc".to_string()];
        header.extend(models.iter().map(|m| format!("met_{}", m.model_id)));
        header.push("met_dynamic".into());
        wtr.write_record(&header)?;

        for &f in self.grid.f_values() {
            let mut row = vec![fmt_sig(f)];
            for m in &models {
                let cell = m
                    .f_values
                    .iter()
                    .position(|&x| x == f)
                    .map(|i| fmt_sig(m.met_model[i]))
                    .unwrap_or_default();
                row.push(cell);
            }
            row.push(fmt_sig(met_dynamic(f, self.grid.k())?));
            wtr.write_record(&row)?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }

    /// Bar-chart data `model_id,display_name,icc,published_icc` for one region.
    pub fn write_region_icc_csv<W: Write>(&self, region: Region, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["model_id", "display_name", "icc", "published_icc"])?;
        for m in self.region(region) {
            wtr.write_record([
                m.model_id.clone(),
                m.display_name.clone(),
                m.icc().map(fmt_sig).unwrap_or_default(),
                m.published.map(|p| fmt_sig(p.icc)).unwrap_or_default(),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }

    pub fn region_curves_svg(&self, region: Region) -> Result<String> {
        let mut series: Vec<Series<'_>> = self
            .region(region)
            .map(|m| Series {
                name: &m.display_name,
                points: m.f_values.iter().copied().zip(m.met_model.iter().copied()).collect(),
            })
            .collect();
        let dynamic = self
            .grid
            .f_values()
            .iter()
            .map(|&f| Ok((f, met_dynamic(f, self.grid.k())?)))
            .collect::<Result<Vec<_>>>()?;
        series.push(Series { name: "dynamic", points: dynamic });
        Ok(line_chart_svg(
            &format!("Endurance time, {region} models"),
            "f_MVC",
            "MET (min)",
            &series,
        ))
    }

    /// Plain-text table with computed and published correlations.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<24} {:<9} {:>8} {:>8} {:>8} {:>8} {:>5}",
            "model", "region", "r", "r_pub", "icc", "icc_pub", "n"
        );
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.4}"));
        for rec in &self.records {
            let _ = writeln!(
                out,
                "{:<24} {:<9} {:>8} {:>8} {:>8} {:>8} {:>5}{}",
                rec.display_name,
                rec.region.as_str(),
                opt(rec.r()),
                opt(rec.published.map(|p| p.r)),
                opt(rec.icc()),
                opt(rec.published.map(|p| p.icc)),
                rec.n_grid_points(),
                if rec.clipped { " (clipped)" } else { "" }
            );
            if let Outcome::Skipped { reason } = &rec.outcome {
                let _ = writeln!(out, "    skipped: {reason}");
            }
        }
        out
    }
}
