use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::series::{socle, top_basis};
use super::{dual, GMap, GModule};
use crate::fplinalg::{FpMatrix, SpanSolver};

/// A presentation of `M` relative to its tops: a basis of vectors `t_i·h`,
/// plus every linear relation needed to check equivariance.
pub(crate) struct Presentation {
    pub tops: FpMatrix,
    /// `(top index, group element)` for each basis vector.
    pub basis_words: Vec<(usize, usize)>,
    /// Rows are the basis vectors `t_i·A(h)`.
    pub basis: FpMatrix,
    /// `(lhs, rhs)`: `t_i·A(h) = Σ c_j · basis_j`.
    pub relations: Vec<((usize, usize), Vec<u8>)>,
}

pub(crate) fn presentation(m: &GModule) -> Presentation {
    let f = m.field();
    let g = m.group();
    let tops = top_basis(m);
    let gens = g.generator_elements();
    let mut solver = SpanSolver::new(f, m.dim());
    let mut basis_words = Vec::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut relations = Vec::new();
    // only independent vectors are pushed, so solver coefficients index `rows`
    let mut next = 0;
    for i in 0..tops.rows() {
        let v = tops.row(i).to_vec();
        if let Some(c) = solver.express(&v) {
            relations.push(((i, 0), c));
        } else {
            solver.push(&v);
            basis_words.push((i, 0));
            rows.push(v);
        }
        while next < rows.len() {
            let (ti, h) = basis_words[next];
            let v = rows[next].clone();
            next += 1;
            for &s in &gens {
                let w = m.action(s).vec_mul(&v);
                let hs = g.mul(h, s);
                if let Some(c) = solver.express(&w) {
                    relations.push(((ti, hs), c));
                } else {
                    solver.push(&w);
                    basis_words.push((ti, hs));
                    rows.push(w);
                }
            }
        }
    }
    let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
    let basis = FpMatrix::from_row_slices(f, m.dim(), &refs);
    Presentation { tops, basis_words, basis, relations }
}

/// Basis of `Hom_kG(M, N)`.
#[must_use]
pub fn hom_space(m: &GModule, n: &GModule) -> Vec<GMap> {
    assert!(m.same_ring(n), "hom_space: modules over different rings");
    if m.dim() == 0 || n.dim() == 0 {
        return Vec::new();
    }
    // Unknowns: images of the tops of the domain. Use the dual side when it is smaller.
    let direct = top_basis(m).rows() * n.dim();
    let dual_cost = socle(n).dim() * m.dim();
    if dual_cost < direct {
        let (nd, md) = (dual(n), dual(m));
        return hom_by_presentation(&nd, &md)
            .into_iter()
            .map(|f| GMap::new_unchecked(m, n, f.transpose()))
            .collect();
    }
    hom_by_presentation(m, n)
        .into_iter()
        .map(|f| GMap::new_unchecked(m, n, f))
        .collect()
}

/// Matrices of a basis of `Hom(M, N)` via the presentation of `M`.
pub(crate) fn hom_by_presentation(m: &GModule, n: &GModule) -> Vec<FpMatrix> {
    let f = m.field();
    let pres = presentation(m);
    let t = pres.tops.rows();
    let dn = n.dim();
    let nb = pres.basis_words.len();
    // current solution space for (X_0 … X_{t-1}) ∈ N^t, as rows
    let mut sol = FpMatrix::identity(f, t * dn);
    for ((i, h), c) in &pres.relations {
        if sol.rows() == 0 {
            break;
        }
        // residual(X) = X_i·B(h) − Σ c_j X_{i_j}·B(h_j)
        let mut res = sol.block(0, i * dn, sol.rows(), dn).mul(n.action(*h));
        for (j, &cj) in c.iter().enumerate().take(nb) {
            if cj == 0 {
                continue;
            }
            let (ij, hj) = pres.basis_words[j];
            let part = sol.block(0, ij * dn, sol.rows(), dn).mul(n.action(hj));
            res.add_scaled(&part, f.neg(cj));
        }
        if res.is_zero() {
            continue;
        }
        let k = res.kernel_basis();
        sol = k.mul(&sol);
    }
    if sol.rows() == 0 {
        return Vec::new();
    }
    let binv = pres.basis.inverse().expect("presentation basis is a basis");
    (0..sol.rows())
        .map(|r| {
            let x = sol.row(r);
            let mut images = FpMatrix::zeros(f, nb, dn);
            for (k, &(i, h)) in pres.basis_words.iter().enumerate() {
                let xi = &x[i * dn..(i + 1) * dn];
                images.row_mut(k).copy_from_slice(&n.action(h).vec_mul(xi));
            }
            binv.mul(&images)
        })
        .collect()
}

/// Basis of `Hom(M, N)` by solving `A(s)·F = F·B(s)` directly. Slow; used as an oracle.
#[must_use]
pub fn hom_space_naive(m: &GModule, n: &GModule) -> Vec<GMap> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let gens = m.group().generator_elements();
    let nv = dm * dn;
    let mut sys = FpMatrix::zeros(f, nv, nv * gens.len());
    for (gi, &s) in gens.iter().enumerate() {
        let a = m.action(s);
        let b = n.action(s);
        let off = gi * nv;
        for i in 0..dm {
            for j in 0..dn {
                let col = off + i * dn + j;
                for k in 0..dm {
                    let v = a.get(i, k);
                    if v != 0 {
                        let r = k * dn + j;
                        sys.set(r, col, f.add(sys.get(r, col), v));
                    }
                }
                for k in 0..dn {
                    let v = b.get(k, j);
                    if v != 0 {
                        let r = i * dn + k;
                        sys.set(r, col, f.sub(sys.get(r, col), v));
                    }
                }
            }
        }
    }
    let k = sys.kernel_basis();
    (0..k.rows())
        .map(|r| GMap::new_unchecked(m, n, FpMatrix::from_data(f, dm, dn, k.row(r).to_vec())))
        .collect()
}

/// Linear combination of maps with the given coefficients.
pub fn combine(dom: &GModule, cod: &GModule, basis: &[GMap], coeffs: &[u8]) -> GMap {
    let mut mat = FpMatrix::zeros(dom.field(), dom.dim(), cod.dim());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            mat.add_scaled(b.mat(), c);
        }
    }
    GMap::new_unchecked(dom, cod, mat)
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 14;
const RANDOM_TRIALS: usize = 256;

/// An invertible module map `M → N`, if one is found.
///
/// The search is exhaustive when `Hom(M, N)` has at most 2^14 elements and
/// otherwise samples random combinations with a fixed seed.
#[must_use]
pub fn find_isomorphism(m: &GModule, n: &GModule) -> Option<GMap> {
    if !m.same_ring(n) || m.dim() != n.dim() {
        return None;
    }
    if m.dim() == 0 {
        return Some(GMap::zero(m, n));
    }
    let basis = hom_space(m, n);
    if basis.is_empty() {
        return None;
    }
    let p = u64::from(m.p());
    let h = basis.len();
    let size = (0..h).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&x| x <= EXHAUSTIVE_LIMIT));
    if size.is_some() {
        let mut coeffs = vec![0u8; h];
        loop {
            // count in base p; the first candidates are the single basis elements
            let mut k = 0;
            loop {
                if k == h {
                    return None;
                }
                coeffs[k] += 1;
                if u32::from(coeffs[k]) < m.p() {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
            let cand = combine(m, n, &basis, &coeffs);
            if cand.rank() == m.dim() {
                return Some(cand);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1505);
    for b in &basis {
        if b.rank() == m.dim() {
            return Some(b.clone());
        }
    }
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u8> = (0..h).map(|_| rng.gen_range(0..m.p()) as u8).collect();
        let cand = combine(m, n, &basis, &coeffs);
        if cand.rank() == m.dim() {
            return Some(cand);
        }
    }
    None
}

#[must_use]
pub fn is_isomorphic(m: &GModule, n: &GModule) -> bool {
    find_isomorphism(m, n).is_some()
}
