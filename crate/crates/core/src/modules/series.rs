use super::GModule;
use crate::fplinalg::{FpMatrix, RowSpace};

/// Radical and socle filtrations of a module.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    /// `rad^0 = M ⊇ rad^1 ⊇ … ⊇ rad^n = 0`.
    pub radical_series: Vec<RowSpace>,
    /// `soc^0 = 0 ⊆ soc^1 ⊆ … ⊆ soc^n = M`.
    pub socle_series: Vec<RowSpace>,
    pub radical_length: usize,
    pub socle_length: usize,
}

/// `rad(W) = W·J(kG)` for a submodule `W`, the spin of `w·(s − 1)`.
#[must_use]
pub fn radical_of(m: &GModule, w: &RowSpace) -> RowSpace {
    let f = m.field();
    let parts: Vec<FpMatrix> = m
        .generator_differences()
        .iter()
        .map(|d| w.basis().mul(d))
        .collect();
    let refs: Vec<&FpMatrix> = parts.iter().collect();
    let stacked = FpMatrix::vstack(f, m.dim(), &refs);
    m.spin(&stacked)
}

#[must_use]
pub fn radical(m: &GModule) -> RowSpace {
    radical_of(m, &RowSpace::full(m.field(), m.dim()))
}

/// Lifts of a basis of `M / rad M`: generators of `M` of minimal number.
#[must_use]
pub fn top_basis(m: &GModule) -> FpMatrix {
    let r = radical(m);
    let non = r.nonpivots();
    let mut t = FpMatrix::zeros(m.field(), non.len(), m.dim());
    for (i, &j) in non.iter().enumerate() {
        t.set(i, j, 1);
    }
    t
}

#[must_use]
pub fn radical_series(m: &GModule) -> Vec<RowSpace> {
    let mut out = vec![RowSpace::full(m.field(), m.dim())];
    while out.last().expect("non-empty").dim() > 0 {
        let next = radical_of(m, out.last().expect("non-empty"));
        out.push(next);
    }
    out
}

/// `soc(M)`: vectors fixed by every generator.
#[must_use]
pub fn socle(m: &GModule) -> RowSpace {
    let diffs = m.generator_differences();
    let refs: Vec<&FpMatrix> = diffs.iter().collect();
    let h = FpMatrix::hstack(m.field(), m.dim(), &refs);
    RowSpace::span(&h.kernel_basis())
}

/// Vectors `v` with `v·(s − 1) ∈ below` for every generator `s`.
pub(crate) fn socle_above(m: &GModule, below: &RowSpace) -> RowSpace {
    let q = below.quotient_map();
    let parts: Vec<FpMatrix> = m.generator_differences().iter().map(|d| d.mul(&q)).collect();
    let refs: Vec<&FpMatrix> = parts.iter().collect();
    let h = FpMatrix::hstack(m.field(), m.dim(), &refs);
    RowSpace::span(&h.kernel_basis())
}

#[must_use]
pub fn socle_series(m: &GModule) -> Vec<RowSpace> {
    let mut out = vec![RowSpace::zero(m.field(), m.dim())];
    while out.last().expect("non-empty").dim() < m.dim() {
        let next = socle_above(m, out.last().expect("non-empty"));
        out.push(next);
    }
    out
}

#[must_use]
pub fn radical_length(m: &GModule) -> usize {
    radical_series(m).len() - 1
}

#[must_use]
pub fn socle_length(m: &GModule) -> usize {
    socle_series(m).len() - 1
}

#[must_use]
pub fn series(m: &GModule) -> SeriesReport {
    let radical_series = radical_series(m);
    let socle_series = socle_series(m);
    SeriesReport {
        radical_length: radical_series.len() - 1,
        socle_length: socle_series.len() - 1,
        radical_series,
        socle_series,
    }
}
