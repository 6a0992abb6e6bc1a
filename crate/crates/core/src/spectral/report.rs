use num_complex::Complex;
use serde::Serialize;

use super::EigenDecomposition;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Frequency and total variation of one eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRecord<T> {
    /// 1-based frequency index.
    pub k: usize,
    pub lambda: Complex<T>,
    /// Principal argument of `lambda`, in `(-pi, pi]`.
    pub omega: T,
    /// `|1 - lambda / max_m |lambda_m||`.
    pub total_variation: T,
}

/// Per-eigenvalue frequency data in frequency order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport<T> {
    pub records: Vec<SpectrumRecord<T>>,
    /// Schur-order index of each record.
    pub ordering: Vec<usize>,
}

#[derive(Serialize)]
struct RecordJson {
    k: usize,
    re: f64,
    im: f64,
    omega: f64,
    tv: f64,
}

#[derive(Serialize)]
struct ReportJson {
    ordering: Vec<usize>,
    eigenvalues: Vec<RecordJson>,
}

impl<T: Real> SpectrumReport<T> {
    pub(crate) fn new(d: &EigenDecomposition<T>) -> Result<Self> {
        let max = d.max_modulus();
        if max == T::zero() {
            return Err(Error::DegenerateSpectrum);
        }
        let omegas = d.frequencies();
        let records = d
            .eigenvalues()
            .iter()
            .zip(omegas)
            .enumerate()
            .map(|(i, (&lambda, omega))| SpectrumRecord {
                k: i + 1,
                lambda,
                omega,
                total_variation: (Complex::new(T::one(), T::zero()) - lambda / max).norm(),
            })
            .collect();
        Ok(SpectrumReport {
            records,
            ordering: d.ordering().to_vec(),
        })
    }

    /// CSV with header `k,re,im,omega,tv`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,re,im,omega,tv\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.k, r.lambda.re, r.lambda.im, r.omega, r.total_variation
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let json = ReportJson {
            ordering: self.ordering.clone(),
            eigenvalues: self
                .records
                .iter()
                .map(|r| RecordJson {
                    k: r.k,
                    re: f(r.lambda.re),
                    im: f(r.lambda.im),
                    omega: f(r.omega),
                    tv: f(r.total_variation),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&json)?)
    }
}
