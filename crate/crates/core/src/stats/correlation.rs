use crate::error::{Error, Result};

fn check_pair(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "vectors differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 observations, got {}",
            a.len()
        )));
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("observations must be finite".into()));
    }
    Ok(())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Pearson product-moment correlation of two equal-length samples.
pub fn pearson_r(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b)?;
    let (ma, mb) = (mean(a), mean(b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::UndefinedCorrelation(
            "one of the vectors has zero variance".into(),
        ));
    }
    Ok((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0))
}

/// One-way random-effects intraclass correlation between two measurement series.
///
/// Rows are the paired observations (n levels), columns the two series (p = 2).
pub fn icc(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b)?;
    icc_one_way(&[a, b])
}

/// One-way ANOVA ICC for `p = columns.len()` raters over `n` shared levels:
/// (MS_between − MS_within) / (MS_between + (p − 1)·MS_within).
pub fn icc_one_way(columns: &[&[f64]]) -> Result<f64> {
    let p = columns.len();
    if p < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 series, got {p}")));
    }
    let n = columns[0].len();
    if columns.iter().any(|c| c.len() != n) {
        return Err(Error::InvalidArgument("series differ in length".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 levels, got {n}")));
    }
    if columns.iter().flat_map(|c| c.iter()).any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("observations must be finite".into()));
    }

    let row_means: Vec<f64> = (0..n)
        .map(|i| columns.iter().map(|c| c[i]).sum::<f64>() / p as f64)
        .collect();
    let grand = mean(&row_means);

    let ss_between: f64 = row_means.iter().map(|m| (m - grand).powi(2)).sum::<f64>() * p as f64;
    let ss_within: f64 = columns
        .iter()
        .map(|c| c.iter().zip(&row_means).map(|(x, m)| (x - m).powi(2)).sum::<f64>())
        .sum();

    let ms_between = ss_between / (n - 1) as f64;
    let ms_within = ss_within / (n * (p - 1)) as f64;
    let denom = ms_between + (p - 1) as f64 * ms_within;
    if denom == 0.0 {
        return Err(Error::Degenerate("all observations are identical".into()));
    }
    Ok((ms_between - ms_within) / denom)
}
