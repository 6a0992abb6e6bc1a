//! Polynomial graph filters `y = sum_s h_s A^s x`, evaluated in the vertex
//! domain by iterated shifts or in the spectral domain as `V H(Lambda) V^-1 x`.

use std::ops::{Add, Mul};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Dag, Digraph, GraphSignal};
use crate::padding::{zero_pad_general, PadOptions, PaddedDag};
use crate::scalar::Real;
use crate::spectral::{eigendecompose, EigenDecomposition, SpectralConfig};

/// Filter coefficients `h_0 .. h_S`; the order `S` is one less than the length.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterCoeffs<T>(Vec<T>);

impl<T> FilterCoeffs<T> {
    pub fn new(h: Vec<T>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::EmptyFilter);
        }
        Ok(FilterCoeffs(h))
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.0
    }
}

/// Vertex-domain evaluation by shift accumulation: `S` sparse products, never
/// an explicit matrix power. Works over any scalar the weights convert into,
/// including exact rationals.
pub fn apply_vertex_domain<T, W>(
    graph: &impl AsRef<Digraph<W>>,
    h: &FilterCoeffs<T>,
    x: &[T],
) -> Result<GraphSignal<T>>
where
    W: Clone,
    T: Clone + Zero + Add<Output = T> + Mul<Output = T> + From<W>,
{
    let g = graph.as_ref();
    let mut shifted = g.shift(x)?.into_inner();
    let mut coeffs = h.coeffs().iter();
    let h0 = coeffs.next().expect("nonempty").clone();
    let mut y: Vec<T> = x.iter().map(|v| h0.clone() * v.clone()).collect();
    for (s, hs) in coeffs.enumerate() {
        if s > 0 {
            shifted = g.shift_unchecked(&shifted);
        }
        for (acc, v) in y.iter_mut().zip(&shifted) {
            *acc = acc.clone() + hs.clone() * v.clone();
        }
    }
    Ok(GraphSignal::new(y))
}

/// Diagonal of `H(Lambda)`: the filter polynomial at each eigenvalue, by Horner.
pub fn transfer_function<T: Real>(
    d: &EigenDecomposition<T>,
    h: &FilterCoeffs<T>,
) -> Vec<Complex<T>> {
    d.eigenvalues()
        .iter()
        .map(|&l| {
            h.coeffs().iter().rev().fold(Complex::zero(), |acc, &c| {
                acc * l + Complex::new(c, T::zero())
            })
        })
        .collect()
}

/// Spectral evaluation `y = V H(Lambda) V^-1 x`, keeping the complex result.
pub fn apply_spectral_complex<T: Real>(
    d: &EigenDecomposition<T>,
    h: &FilterCoeffs<T>,
    x: &[T],
) -> Result<GraphSignal<Complex<T>>> {
    let spectrum = d.gft(x)?;
    let response = transfer_function(d, h);
    let filtered: Vec<Complex<T>> = spectrum.iter().zip(&response).map(|(a, b)| a * b).collect();
    d.igft(&filtered)
}

/// Spectral evaluation truncated to the real part. Logs a warning when the
/// discarded imaginary part exceeds `1e-8 (1 + ||y||_inf)`.
pub fn apply_spectral<T: Real>(
    d: &EigenDecomposition<T>,
    h: &FilterCoeffs<T>,
    x: &[T],
) -> Result<GraphSignal<T>> {
    let y = apply_spectral_complex(d, h, x)?;
    let max_re = y.iter().fold(T::zero(), |m, z| m.max(z.re.abs()));
    let max_im = y.iter().fold(T::zero(), |m, z| m.max(z.im.abs()));
    if max_im > T::lit(1e-8) * (T::one() + max_re) {
        log::warn!(
            "spectral filter output has imaginary residue {:e}; decomposition may be ill-conditioned",
            max_im.to_f64().unwrap_or(f64::NAN)
        );
    }
    Ok(GraphSignal::new(y.iter().map(|z| z.re).collect()))
}

/// A zero-padded DAG with its cached decomposition. Filters of order at most
/// `pad` evaluated here agree with vertex-domain evaluation on the original
/// DAG. Immutable; share freely across threads.
#[derive(Clone, Debug)]
pub struct ZeroPadFilter<T> {
    padded: PaddedDag<T>,
    decomposition: EigenDecomposition<T>,
    pad: usize,
}

impl<T: Real> ZeroPadFilter<T> {
    pub fn new(
        dag: &Dag<T>,
        pad: usize,
        opts: &PadOptions<T>,
        cfg: &SpectralConfig<T>,
    ) -> Result<Self> {
        let padded = zero_pad_general(dag, pad, opts)?;
        let decomposition = eigendecompose(&padded.graph().adjacency_matrix(), cfg)?;
        Ok(ZeroPadFilter {
            padded,
            decomposition,
            pad,
        })
    }

    pub fn padded(&self) -> &PaddedDag<T> {
        &self.padded
    }

    pub fn decomposition(&self) -> &EigenDecomposition<T> {
        &self.decomposition
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    fn check_order(&self, h: &FilterCoeffs<T>) -> Result<()> {
        if h.order() > self.pad {
            return Err(Error::OrderExceedsPadding {
                order: h.order(),
                pad: self.pad,
            });
        }
        Ok(())
    }

    /// Output on every vertex of the padded graph, including the values held
    /// in the padding paths.
    pub fn apply_padded(&self, h: &FilterCoeffs<T>, x: &[T]) -> Result<GraphSignal<T>> {
        self.check_order(h)?;
        let xp = self.padded.pad_signal(x)?;
        apply_spectral(&self.decomposition, h, &xp)
    }

    /// Output on the original vertices.
    pub fn apply(&self, h: &FilterCoeffs<T>, x: &[T]) -> Result<GraphSignal<T>> {
        let y = self.apply_padded(h, x)?;
        self.padded.restrict_signal(&y)
    }
}

/// Zero-pads `dag` with `pad` vertices per added path, filters spectrally and
/// restricts the result to the original vertices.
pub fn filter_via_zero_padding<T: Real>(
    dag: &Dag<T>,
    h: &FilterCoeffs<T>,
    x: &[T],
    pad: usize,
) -> Result<GraphSignal<T>> {
    if h.order() > pad {
        return Err(Error::OrderExceedsPadding {
            order: h.order(),
            pad,
        });
    }
    GraphSignal::new(x.to_vec()).expect_len(dag.n())?;
    if h.order() == 0 {
        let c = h.coeffs()[0];
        return Ok(x.iter().map(|&v| c * v).collect::<Vec<_>>().into());
    }
    ZeroPadFilter::new(dag, pad, &PadOptions::default(), &SpectralConfig::default())?.apply(h, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn cycle(n: usize) -> Digraph<f64> {
        Digraph::new(n, (1..=n).map(|v| Edge::new(v, v % n + 1, 1.0))).unwrap()
    }

    #[test]
    fn identity_filter() {
        let g = Dag::<f64>::unweighted(3, &[(1, 2), (2, 3)]).unwrap();
        let h = FilterCoeffs::new(vec![1.0]).unwrap();
        let x = [1.0, -2.0, 3.5];
        assert_eq!(&*apply_vertex_domain(&g, &h, &x).unwrap(), &x);
    }

    #[test]
    fn moving_average_on_cycle_is_circular_convolution() {
        let n = 6;
        let g = cycle(n);
        let h = FilterCoeffs::new(vec![1.0 / 3.0; 3]).unwrap();
        let x: Vec<f64> = (0..n).map(|i| (i * i) as f64).collect();
        let y = apply_vertex_domain(&g, &h, &x).unwrap();
        // row u of the cycle points to u + 1, so A^s x picks x(u + s)
        for u in 0..n {
            let want = (0..3).map(|s| x[(u + s) % n]).sum::<f64>() / 3.0;
            assert!((y[u] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_filter_rejected() {
        assert!(matches!(
            FilterCoeffs::<f64>::new(vec![]),
            Err(Error::EmptyFilter)
        ));
    }

    #[test]
    fn transfer_function_values() {
        let d = eigendecompose(&cycle(8).adjacency_matrix(), &SpectralConfig::default()).unwrap();
        let id = transfer_function(&d, &FilterCoeffs::new(vec![1.0]).unwrap());
        assert!(id
            .iter()
            .all(|z| (z - Complex::new(1.0, 0.0)).norm() < 1e-15));
        let shift = transfer_function(&d, &FilterCoeffs::new(vec![0.0, 1.0]).unwrap());
        for (s, l) in shift.iter().zip(d.eigenvalues()) {
            assert!((s - l).norm() < 1e-15);
        }
        let three = transfer_function(&d, &FilterCoeffs::new(vec![1.0, 1.0, 1.0]).unwrap());
        let at_one = d
            .eigenvalues()
            .iter()
            .position(|l| (l - 1.0).norm() < 1e-12)
            .unwrap();
        assert!((three[at_one] - Complex::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn order_must_not_exceed_pad() {
        let g = Dag::<f64>::unweighted(3, &[(1, 2), (2, 3)]).unwrap();
        let h = FilterCoeffs::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            filter_via_zero_padding(&g, &h, &[1.0, 2.0, 3.0], 1),
            Err(Error::OrderExceedsPadding { order: 2, pad: 1 })
        ));
    }

    #[test]
    fn constant_filter_without_padding() {
        let g = Dag::<f64>::unweighted(4, &[(1, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        let h = FilterCoeffs::new(vec![2.5]).unwrap();
        let x = [1.0, 2.0, -1.0, 0.5];
        let y = filter_via_zero_padding(&g, &h, &x, 0).unwrap();
        for (a, b) in y.iter().zip(x) {
            assert!((a - 2.5 * b).abs() < 1e-12);
        }
    }
}
