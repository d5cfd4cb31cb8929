//! JSON interchange: `{"rows": n, "cols": n, "re": [...], "im": [...]}`,
//! row-major. Density matrices add `dim_a` / `dim_b`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::density::{Bipartition, DensityMatrix};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&ComplexMatrix<f64>> for MatrixJson {
    fn from(m: &ComplexMatrix<f64>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: m.as_slice().iter().map(|z| z.re).collect(),
            im: m.as_slice().iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix<f64> {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.re.len() != j.im.len() {
            return Err(Error::DimensionMismatch(format!(
                "re has {} entries but im has {}",
                j.re.len(),
                j.im.len()
            )));
        }
        let data = j.re.iter().zip(&j.im).map(|(&re, &im)| Complex::new(re, im)).collect();
        ComplexMatrix::new(j.rows, j.cols, data)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityJson {
    #[serde(flatten)]
    pub matrix: MatrixJson,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl From<&DensityMatrix<f64>> for DensityJson {
    fn from(rho: &DensityMatrix<f64>) -> Self {
        let p = rho.partition();
        Self { matrix: rho.matrix().into(), dim_a: p.dim_a, dim_b: p.dim_b }
    }
}

impl TryFrom<DensityJson> for DensityMatrix<f64> {
    type Error = Error;

    fn try_from(j: DensityJson) -> Result<Self> {
        let partition = Bipartition::new(j.dim_a, j.dim_b)?;
        DensityMatrix::new(j.matrix.try_into()?, partition)
    }
}
