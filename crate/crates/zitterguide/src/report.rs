//! Deterministic output formatting: fixed-precision floats, CSV assembly,
//! and the JSON record types the commands emit.
//!
//! Every float is printed with 12 significant digits in scientific notation
//! so identical inputs produce byte-identical files.

use num_complex::Complex64;
use serde::Serialize;

use crate::modesolver::{ModeIndex, ModeSolutionRecord};
use crate::perturb::{ConditionsReport, PerturbationMatrix, ShiftBreakdown};

/// 12 significant digits, scientific notation.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.11e}")
}

/// Complex value as `re{+/-}im i` with both parts in [`fmt_f`] form.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", fmt_f(z.re), fmt_f(z.im))
    } else {
        format!("{}-{}i", fmt_f(z.re), fmt_f(-z.im))
    }
}

/// Compact mode-state label for matrix axes, e.g. `n1m+2s-1`.
pub fn state_label(index: &ModeIndex) -> String {
    format!("n{}m{:+}s{:+}", index.n, index.m_ell, index.sigma)
}

/// Join one CSV row.
pub fn csv_row(cells: &[String]) -> String {
    cells.join(",")
}

/// Assemble a CSV document from a header and rows.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    out
}

/// Full shift report for one mode.
#[derive(Debug, Serialize)]
pub struct ShiftReport {
    pub mode: ModeSolutionRecord,
    pub lp_label: String,
    pub shifts: ShiftBreakdown,
    pub conditions: ConditionsReport,
    pub second_order_delta_beta_sq: f64,
    pub beat_length: Option<f64>,
}

/// Serializable perturbation matrix.
#[derive(Debug, Serialize)]
pub struct MatrixRecord {
    pub particle: crate::medium::ParticleKind,
    pub r: f64,
    pub labels: Vec<ModeIndex>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixRecord {
    pub fn new(
        particle: crate::medium::ParticleKind,
        r: f64,
        matrix: &PerturbationMatrix,
    ) -> Self {
        MatrixRecord {
            particle,
            r,
            labels: matrix.labels.clone(),
            re: matrix
                .values
                .iter()
                .map(|row| row.iter().map(|z| z.re).collect())
                .collect(),
            im: matrix
                .values
                .iter()
                .map(|row| row.iter().map(|z| z.im).collect())
                .collect(),
        }
    }
}

/// CSV rendering of the matrix: labeled rows and columns, complex cells.
pub fn matrix_csv(matrix: &PerturbationMatrix) -> String {
    let mut header: Vec<String> = vec!["bra\\ket".to_string()];
    header.extend(matrix.labels.iter().map(state_label));
    let mut out = header.join(",");
    out.push('\n');
    for (bra, row) in matrix.labels.iter().zip(&matrix.values) {
        let mut cells = vec![state_label(bra)];
        cells.extend(row.iter().map(|z| fmt_complex(*z)));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_12_significant_digits() {
        assert_eq!(fmt_f(1.0), "1.00000000000e0");
        assert_eq!(fmt_f(-0.000123456789012345), "-1.23456789012e-4");
        assert_eq!(fmt_f(299792458.0), "2.99792458000e8");
    }

    #[test]
    fn complex_format_signs() {
        assert_eq!(
            fmt_complex(Complex64::new(1.0, -2.0)),
            "1.00000000000e0-2.00000000000e0i"
        );
        assert_eq!(
            fmt_complex(Complex64::new(0.0, 0.0)),
            "0.00000000000e0+0.00000000000e0i"
        );
    }

    #[test]
    fn labels() {
        let idx = ModeIndex::new(2, -3, 1).unwrap();
        assert_eq!(state_label(&idx), "n2m-3s+1");
    }
}
