//! Spectral measures of Hermitian observables: eigenvalue clustering into
//! spectral points, evaluation of spectral projectors on value sets, and
//! detection of common eigenvectors between two observables.

use std::fmt;

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::hilbert::{check_hermitian, CMatrix, Projector};

/// One point of a clustered spectrum.
#[derive(Debug, Clone)]
pub struct SpectralPoint {
    pub eigenvalue: f64,
    pub projector: Projector,
}

/// Hermitian observable together with its clustered spectral measure.
///
/// Invariants: eigenvalues strictly increasing, eigenprojectors mutually
/// orthogonal and summing to the identity, and Σ λᵢ·Pᵢ reconstructs the
/// matrix.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: CMatrix,
    spectrum: Vec<SpectralPoint>,
}

/// Default clustering tolerance: 1e-8 times the spectral radius.
pub fn default_cluster_tol(spectral_radius: f64) -> f64 {
    1e-8 * spectral_radius.max(1.0)
}

impl Observable {
    /// Eigendecompose a Hermitian matrix, merging eigenvalues closer than
    /// `cluster_tol` into a single spectral point.
    pub fn decompose(m: &CMatrix, cluster_tol: Option<f64>) -> Result<Self> {
        check_hermitian(m)?;
        let dim = m.nrows();
        let eig = SymmetricEigen::new(m.clone());
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let radius = eig.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
        let tol = cluster_tol.unwrap_or_else(|| default_cluster_tol(radius));

        let mut spectrum = Vec::new();
        let mut i = 0;
        while i < dim {
            // chain adjacent eigenvalues within cluster_tol into one point
            let mut j = i + 1;
            while j < dim
                && eig.eigenvalues[order[j]] - eig.eigenvalues[order[j - 1]] <= tol
            {
                j += 1;
            }
            let members = &order[i..j];
            let mean: f64 =
                members.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / members.len() as f64;
            let vectors: Vec<_> = members
                .iter()
                .map(|&k| eig.eigenvectors.column(k).clone_owned())
                .collect();
            spectrum.push(SpectralPoint {
                eigenvalue: mean,
                projector: Projector::from_span(&vectors)?,
            });
            i = j;
        }
        Ok(Observable { matrix: m.clone(), spectrum })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn spectrum(&self) -> &[SpectralPoint] {
        &self.spectrum
    }

    /// A scalar multiple of the identity: every vector is an eigenvector.
    pub fn is_degenerate_identity(&self) -> bool {
        self.spectrum.len() == 1
    }

    /// Σ λᵢ·Pᵢ, for reconstruction checks.
    pub fn reconstruct(&self) -> CMatrix {
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for point in &self.spectrum {
            m += point.projector.matrix() * num_complex::Complex64::new(point.eigenvalue, 0.0);
        }
        m
    }

    /// Spectral projector P_A(X): sum of eigenprojectors with eigenvalue in X.
    pub fn spectral_projector(&self, x: &ValueSet) -> Projector {
        let dim = self.dim();
        let mut matrix = CMatrix::zeros(dim, dim);
        let mut any = false;
        for point in &self.spectrum {
            if x.contains(point.eigenvalue) {
                matrix += point.projector.matrix();
                any = true;
            }
        }
        if !any {
            return Projector::zero(dim);
        }
        Projector::new(matrix).expect("sum of orthogonal eigenprojectors is a projector")
    }
}

/// All common eigenvectors of two observables, reported as the nonzero meets
/// of their eigenprojector pairs. An empty result means the observables are
/// totally noncommuting.
pub fn common_eigenvectors(a: &Observable, b: &Observable) -> Result<Vec<Projector>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let mut meets = Vec::new();
    for pa in a.spectrum() {
        for pb in b.spectrum() {
            let m = pa.projector.meet(&pb.projector)?;
            if !m.is_zero() {
                meets.push(m);
            }
        }
    }
    Ok(meets)
}

/// Finite union of half-open intervals [lo, hi) plus isolated points.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ValueSet {
    pub intervals: Vec<(f64, f64)>,
    pub points: Vec<f64>,
}

impl ValueSet {
    pub fn new(intervals: Vec<(f64, f64)>, points: Vec<f64>) -> Result<Self> {
        for &(lo, hi) in &intervals {
            if !(lo < hi) {
                return Err(Error::InvalidValueSet(format!(
                    "interval [{lo}, {hi}) requires lo < hi"
                )));
            }
        }
        let mut vs = ValueSet { intervals, points };
        vs.normalize();
        Ok(vs)
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        ValueSet::new(vec![(lo, hi)], vec![])
    }

    pub fn point(x: f64) -> Self {
        ValueSet { intervals: vec![], points: vec![x] }
    }

    pub fn points(xs: &[f64]) -> Self {
        let mut vs = ValueSet { intervals: vec![], points: xs.to_vec() };
        vs.normalize();
        vs
    }

    fn normalize(&mut self) {
        self.intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for &(lo, hi) in &self.intervals {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        self.intervals = merged;
        self.points.sort_by(f64::total_cmp);
        self.points.dedup();
        // drop points already covered by an interval
        let intervals = self.intervals.clone();
        self.points
            .retain(|&x| !intervals.iter().any(|&(lo, hi)| lo <= x && x < hi));
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= x && x < hi)
            || self.points.iter().any(|&p| p == x)
    }

    /// Parse the textual form, e.g. `[0.5,2.5)+{3}` (ASCII) or with `∪`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        for token in text.replace('∪', "+").split('+') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            if let Some(inner) = token.strip_prefix('[').and_then(|t| t.strip_suffix(')')) {
                let (lo, hi) = inner.split_once(',').ok_or_else(|| {
                    Error::InvalidValueSet(format!("malformed interval: {token}"))
                })?;
                let lo: f64 = lo.trim().parse().map_err(|_| {
                    Error::InvalidValueSet(format!("bad number in {token}"))
                })?;
                let hi: f64 = hi.trim().parse().map_err(|_| {
                    Error::InvalidValueSet(format!("bad number in {token}"))
                })?;
                intervals.push((lo, hi));
            } else if let Some(inner) = token.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
                for part in inner.split(',') {
                    let x: f64 = part.trim().parse().map_err(|_| {
                        Error::InvalidValueSet(format!("bad number in {token}"))
                    })?;
                    points.push(x);
                }
            } else {
                return Err(Error::InvalidValueSet(format!("unrecognized token: {token}")));
            }
        }
        ValueSet::new(intervals, points)
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(lo, hi) in &self.intervals {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "[{lo},{hi})")?;
            first = false;
        }
        if !self.points.is_empty() {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{{")?;
            for (i, p) in self.points.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "}}")?;
        } else if first {
            write!(f, "{{}}")?;
        }
        Ok(())
    }
}
