//! Tate cohomology through a complete resolution of the trivial module.
//!
//! `… → P_1 → P_0 → P_{-1} → P_{-2} → …` with `P_0 = P_{-1} = kG` and
//! `d_0` multiplication by the norm element. Positive degrees are minimal
//! covers of kernels, negative degrees minimal hulls of cokernels. The model
//! of `Ω^n k` is `coker(d_{n+1})`, a quotient of `P_n`.
//!
//! Cochains of `M` in degree `n` are `Hom(P_n, M) = M^{r_n}`, recording the
//! images of the free generators. A map `f` induces zero on `Ĥ^n` exactly
//! when `f(Z^n(M)) ⊆ B^n(N)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::fplinalg::{Field, FpMatrix, RowSpace};
use crate::groups::{FiniteGroup, KgElem};
use crate::modules::{free_module, quotient_module, submodule, top_basis, GMap, GModule};
use crate::stable::{functional_matrix, socle_functionals};

struct Differential {
    /// `d_n : P_n → P_{n−1}`.
    mat: FpMatrix,
    /// `u[a][b]`: the `b`-component of `d_n(e_a)`.
    u: Vec<Vec<KgElem>>,
}

/// A complete resolution of `k`, grown lazily in both directions.
pub struct Resolution {
    group: Arc<FiniteGroup>,
    field: Field,
    ranks: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, Differential>,
    omega: BTreeMap<i32, GModule>,
    /// `Z^i(Ω^a k)` keyed by `(a, i)`.
    omega_cocycles: HashMap<(i32, i32), RowSpace>,
}

type CacheKey = (u32, Vec<usize>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Mutex<Resolution>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Mutex<Resolution>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The shared resolution for `(G, p)`.
#[must_use]
pub fn resolution(group: &Arc<FiniteGroup>, field: Field) -> Arc<Mutex<Resolution>> {
    let n = group.order();
    let key: CacheKey = (
        field.p(),
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| group.mul(a, b)).collect(),
    );
    let mut c = cache().lock().unwrap_or_else(std::sync::PoisonError::into_inner);
    Arc::clone(
        c.entry(key)
            .or_insert_with(|| Arc::new(Mutex::new(Resolution::new(Arc::clone(group), field)))),
    )
}

/// Runs `f` with the locked resolution of the module's ring.
pub fn with_resolution<T>(group: &Arc<FiniteGroup>, field: Field, f: impl FnOnce(&mut Resolution) -> T) -> T {
    let r = resolution(group, field);
    let mut guard = r.lock().unwrap_or_else(std::sync::PoisonError::into_inner);
    f(&mut guard)
}

fn components(mat: &FpMatrix, rn: usize, rprev: usize, order: usize, field: Field) -> Vec<Vec<KgElem>> {
    (0..rn)
        .map(|a| {
            let row = mat.row(a * order);
            (0..rprev)
                .map(|b| KgElem { field, coeffs: row[b * order..(b + 1) * order].to_vec() })
                .collect()
        })
        .collect()
}

impl Resolution {
    fn new(group: Arc<FiniteGroup>, field: Field) -> Resolution {
        let n = group.order();
        let norm = KgElem::norm(field, n);
        let kg = free_module(&group, field, 1);
        let d0 = kg.algebra_action(&norm);
        let mut ranks = BTreeMap::new();
        ranks.insert(0, 1);
        ranks.insert(-1, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(0, Differential { u: components(&d0, 1, 1, n, field), mat: d0 });
        Resolution {
            group,
            field,
            ranks,
            diffs,
            omega: BTreeMap::new(),
            omega_cocycles: HashMap::new(),
        }
    }

    #[must_use]
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[must_use]
    pub fn field(&self) -> Field {
        self.field
    }

    fn free(&self, rank: usize) -> GModule {
        free_module(&self.group, self.field, rank)
    }

    /// Makes `d_n` available for every `n` in `lo..=hi`.
    pub fn ensure(&mut self, lo: i32, hi: i32) {
        let mut top = *self.diffs.keys().next_back().expect("d_0");
        while top < hi {
            self.extend_up(top + 1);
            top += 1;
        }
        let mut bottom = *self.diffs.keys().next().expect("d_0");
        while bottom > lo {
            self.extend_down(bottom - 1);
            bottom -= 1;
        }
    }

    fn extend_up(&mut self, n: i32) {
        let prev = &self.diffs[&(n - 1)];
        let rprev = self.ranks[&(n - 1)];
        let pprev = self.free(rprev);
        let ker = RowSpace::span(&prev.mat.kernel_basis());
        let (kmod, incl) = submodule(&pprev, &ker);
        let tops = top_basis(&kmod).mul(incl.mat());
        let order = self.group.order();
        let r = tops.rows();
        let mut mat = FpMatrix::zeros(self.field, r * order, rprev * order);
        for a in 0..r {
            for h in 0..order {
                mat.row_mut(a * order + h)
                    .copy_from_slice(&pprev.action(h).vec_mul(tops.row(a)));
            }
        }
        self.ranks.insert(n, r);
        let u = components(&mat, r, rprev, order, self.field);
        self.diffs.insert(n, Differential { mat, u });
    }

    fn extend_down(&mut self, n: i32) {
        let next = &self.diffs[&(n + 1)];
        let rn = self.ranks[&n];
        let pn = self.free(rn);
        let (q, pi) = quotient_module(&pn, &RowSpace::span(&next.mat));
        let lambda = socle_functionals(&q);
        let phi = functional_matrix(&q, &lambda);
        let mat = pi.mat().mul(&phi);
        let s = lambda.cols();
        self.ranks.insert(n - 1, s);
        let u = components(&mat, rn, s, self.group.order(), self.field);
        self.diffs.insert(n, Differential { mat, u });
    }

    #[must_use]
    pub fn rank(&mut self, n: i32) -> usize {
        self.ensure(n.min(0), n.max(0));
        self.ranks[&n]
    }

    /// Matrix of `d_n : P_n → P_{n−1}`.
    pub fn differential(&mut self, n: i32) -> FpMatrix {
        self.ensure(n.min(0), n.max(0));
        self.diffs[&n].mat.clone()
    }

    /// `Ω^n k` as `P_n / im d_{n+1}`, together with the quotient map from `P_n`.
    pub fn omega_k(&mut self, n: i32) -> GModule {
        if let Some(m) = self.omega.get(&n) {
            return m.clone();
        }
        self.ensure(n.min(0), (n + 1).max(0));
        let pn = self.free(self.ranks[&n]);
        let (q, _) = quotient_module(&pn, &RowSpace::span(&self.diffs[&(n + 1)].mat));
        let q = rebind(&q, &self.group);
        self.omega.insert(n, q.clone());
        q
    }

    /// Cochain differential `δ^n : M^{r_{n−1}} → M^{r_n}`.
    pub fn coboundary_matrix(&mut self, m: &GModule, n: i32) -> FpMatrix {
        self.ensure((n - 1).min(0), n.max(0));
        let rn = self.ranks[&n];
        let rprev = self.ranks[&(n - 1)];
        let d = m.dim();
        let mut out = FpMatrix::zeros(self.field, rprev * d, rn * d);
        for (a, ua) in self.diffs[&n].u.iter().enumerate() {
            for (b, uab) in ua.iter().enumerate() {
                if !uab.is_zero() {
                    out.set_block(b * d, a * d, &m.algebra_action(uab));
                }
            }
        }
        out
    }

    /// `Z^n(M)`.
    pub fn cocycles(&mut self, m: &GModule, n: i32) -> RowSpace {
        let delta = self.coboundary_matrix(m, n + 1);
        RowSpace::span(&delta.kernel_basis())
    }

    /// `B^n(M)`.
    pub fn coboundaries(&mut self, m: &GModule, n: i32) -> RowSpace {
        RowSpace::span(&self.coboundary_matrix(m, n))
    }

    /// `Z^i(Ω^a k)`, cached.
    pub fn omega_cocycles(&mut self, a: i32, i: i32) -> RowSpace {
        if let Some(z) = self.omega_cocycles.get(&(a, i)) {
            return z.clone();
        }
        let om = self.omega_k(a);
        let z = self.cocycles(&om, i);
        self.omega_cocycles.insert((a, i), z.clone());
        z
    }

    /// Cocycles in `Z^n(M)` representing a basis of `Ĥ^n(M)`.
    pub fn cohomology_basis(&mut self, m: &GModule, n: i32) -> Vec<Vec<u8>> {
        let z = self.cocycles(m, n);
        let b = self.coboundaries(m, n);
        complement_rows(&z, &b)
    }

    /// The map `Ω^n k → M` induced by a cocycle.
    pub fn cocycle_map(&mut self, m: &GModule, n: i32, z: &[u8]) -> GMap {
        let om = self.omega_k(n);
        let rn = self.ranks[&n];
        let order = self.group.order();
        let d = m.dim();
        let mut full = FpMatrix::zeros(self.field, rn * order, d);
        for a in 0..rn {
            let ma = &z[a * d..(a + 1) * d];
            for h in 0..order {
                full.row_mut(a * order + h).copy_from_slice(&m.action(h).vec_mul(ma));
            }
        }
        // Ω^n k has the non-pivot unit vectors of im d_{n+1} as basis
        let non = RowSpace::span(&self.diffs[&(n + 1)].mat).nonpivots();
        GMap::new_unchecked(&om, m, full.select_rows(&non))
    }

    /// `dim Ĥ^n(M)`.
    pub fn tate_dim(&mut self, m: &GModule, n: i32) -> usize {
        self.cocycles(m, n).dim() - self.coboundaries(m, n).dim()
    }

    /// True when `f` induces zero on `Ĥ^n`.
    pub fn is_ghost_in_degree(&mut self, f: &GMap, n: i32) -> bool {
        let z = self.cocycles(f.dom(), n);
        if z.dim() == 0 {
            return true;
        }
        let b = self.coboundaries(f.cod(), n);
        let img = apply_componentwise(z.basis(), f.mat(), self.ranks[&n]);
        b.contains_rows(&img)
    }
}

/// Applies `F` to each of the `r` components of the rows of `z`.
pub(crate) fn apply_componentwise(z: &FpMatrix, f: &FpMatrix, r: usize) -> FpMatrix {
    let blocks: Vec<&FpMatrix> = (0..r).map(|_| f).collect();
    z.mul(&FpMatrix::block_diag(f.field(), &blocks))
}

/// Rows of `z` extending a basis of `b ⊆ z` to one of `z`.
pub(crate) fn complement_rows(z: &RowSpace, b: &RowSpace) -> Vec<Vec<u8>> {
    let mut acc = b.clone();
    let mut out = Vec::new();
    for i in 0..z.dim() {
        let v = z.basis().row(i);
        if !acc.contains(v) {
            out.push(v.to_vec());
            let m = FpMatrix::from_row_slices(z.field(), z.ambient(), &[v]);
            acc = acc.sum(&RowSpace::span(&m));
        }
    }
    out
}

/// A module object over `group` itself, so it compares pointer-equal with others.
fn rebind(m: &GModule, group: &Arc<FiniteGroup>) -> GModule {
    if Arc::ptr_eq(m.group(), group) {
        m.clone()
    } else {
        GModule::from_actions_unchecked(Arc::clone(group), m.field(), m.dim(), m.actions().to_vec())
    }
}

/// `dim Ĥ^n(G, M) = dim [Ω^n k, M]`.
#[must_use]
pub fn tate_dim(m: &GModule, n: i32) -> usize {
    with_resolution(m.group(), m.field(), |r| r.tate_dim(m, n))
}

/// `Ω^n k` from the shared complete resolution.
#[must_use]
pub fn omega_k(group: &Arc<FiniteGroup>, field: Field, n: i32) -> GModule {
    with_resolution(group, field, |r| r.omega_k(n))
}

/// True when `f` induces zero on `Ĥ^n` for every `|n| ≤ w`.
#[must_use]
pub fn is_window_ghost(f: &GMap, w: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let w = i32::try_from(w).expect("window fits in i32");
    with_resolution(f.dom().group(), f.dom().field(), |r| {
        (-w..=w).all(|n| r.is_ghost_in_degree(f, n))
    })
}

/// True when `f` induces zero on `Ĥ^n` for every listed degree.
#[must_use]
pub fn is_ghost_in_degrees(f: &GMap, degrees: &[i32]) -> bool {
    if f.is_zero() {
        return true;
    }
    with_resolution(f.dom().group(), f.dom().field(), |r| {
        degrees.iter().all(|&n| r.is_ghost_in_degree(f, n))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupExpr;
    use crate::modules::is_isomorphic;
    use crate::stable::{is_stably_trivial, omega, stable_hom};

    fn ring(e: GroupExpr, p: u32) -> (Arc<FiniteGroup>, Field) {
        (FiniteGroup::build(&e).unwrap(), Field::new(p).unwrap())
    }

    #[test]
    fn resolution_ranks_over_klein_four() {
        let (g, f) = ring(GroupExpr::Product(vec![GroupExpr::Cyclic(2), GroupExpr::Cyclic(2)]), 2);
        with_resolution(&g, f, |r| {
            let ranks: Vec<usize> = (-3..=3).map(|n| r.rank(n)).collect();
            assert_eq!(ranks, vec![3, 2, 1, 1, 2, 3, 4]);
            for n in -2..=2 {
                let d1 = r.differential(n);
                let d0 = r.differential(n - 1);
                assert!(d1.mul(&d0).is_zero(), "d∘d ≠ 0 at {n}");
            }
        });
    }

    #[test]
    fn omega_models_agree() {
        let (g, f) = ring(GroupExpr::Dihedral(8), 2);
        let k = GModule::trivial(&g, f).unwrap();
        for n in -2..=2 {
            assert!(is_isomorphic(&omega_k(&g, f, n), &omega(&k, n)), "degree {n}");
        }
    }

    #[test]
    fn tate_dims_match_stable_hom() {
        let (g, f) = ring(GroupExpr::Product(vec![GroupExpr::Cyclic(3), GroupExpr::Cyclic(3)]), 3);
        let k = GModule::trivial(&g, f).unwrap();
        let m = omega(&k, 1);
        for n in -2..=2 {
            let direct = stable_hom(&omega_k(&g, f, n), &m).dim();
            assert_eq!(tate_dim(&m, n), direct, "degree {n}");
        }
    }

    #[test]
    fn cyclic_group_cohomology_is_one_dimensional() {
        let (g, f) = ring(GroupExpr::Cyclic(9), 3);
        let k = GModule::trivial(&g, f).unwrap();
        for n in -3..=3 {
            assert_eq!(tate_dim(&k, n), 1);
        }
    }

    #[test]
    fn window_ghost_examples() {
        let (g, f) = ring(GroupExpr::Cyclic(9), 3);
        let k = GModule::trivial(&g, f).unwrap();
        assert!(!is_window_ghost(&GMap::identity(&k), 0));
        assert!(is_window_ghost(&GMap::zero(&k, &k), 3));
        // cocycle maps represent non-zero classes
        with_resolution(&g, f, |r| {
            for n in -2..=2 {
                let basis = r.cohomology_basis(&k, n);
                assert_eq!(basis.len(), 1);
                let map = r.cocycle_map(&k, n, &basis[0]);
                assert!(GMap::new(map.dom(), map.cod(), map.mat().clone()).is_ok());
                assert!(!is_stably_trivial(&map));
            }
        });
    }
}
