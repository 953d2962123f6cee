//! Finite-dimensional kG-modules as explicit matrix representations.
//!
//! Modules are right modules: `A(g)` acts on row vectors from the right and
//! `A(gh) = A(g)·A(h)`. The regular module has basis `e_h` with
//! `e_h·g = e_{hg}`. Maps are matrices `F` with `A(g)·F = F·B(g)`.

mod decompose;
mod hom;
mod series;

use std::sync::Arc;

pub use decompose::{decompose, decompose_with, Decomposition, Summand, DEFAULT_TRIALS};
pub(crate) use decompose::split_into;
pub use hom::{combine, find_isomorphism, hom_space, hom_space_naive, is_isomorphic};
pub use series::{
    radical, radical_length, radical_of, radical_series, series, socle, socle_length,
    socle_series, top_basis, SeriesReport,
};

use crate::error::{Error, Result};
use crate::fplinalg::{Field, FpMatrix, RowSpace};
use crate::groups::{FiniteGroup, KgElem, SubgroupEmbedding};

struct ModuleData {
    group: Arc<FiniteGroup>,
    field: Field,
    dim: usize,
    action: Vec<FpMatrix>,
}

/// A kG-module given by the action matrix of every group element.
///
/// Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct GModule {
    inner: Arc<ModuleData>,
}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GModule(|G|={}, p={}, dim={})",
            self.group().order(),
            self.p(),
            self.dim()
        )
    }
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.same_ring(other) && self.inner.action == other.inner.action)
    }
}

impl GModule {
    /// Module from the action of every element, validated as a homomorphism.
    pub fn from_actions(group: Arc<FiniteGroup>, field: Field, action: Vec<FpMatrix>) -> Result<GModule> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction("one matrix per element required".into()));
        }
        let dim = action.first().map_or(0, FpMatrix::rows);
        for a in &action {
            if a.rows() != dim || a.cols() != dim || a.field() != field {
                return Err(Error::InvalidAction("shape or field mismatch".into()));
            }
        }
        check_field(&group, field)?;
        if !action[0].is_identity() {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for h in 0..group.order() {
            for s in group.generator_elements() {
                if action[group.mul(h, s)] != action[h].mul(&action[s]) {
                    return Err(Error::InvalidAction("not a homomorphism".into()));
                }
            }
        }
        Ok(GModule { inner: Arc::new(ModuleData { group, field, dim, action }) })
    }

    /// Module from matrices for the group's generators, in generator order.
    ///
    /// The action of every element is obtained along a spanning tree of the
    /// Cayley graph; every other edge is checked, which validates all relations.
    pub fn from_generators(group: Arc<FiniteGroup>, field: Field, gens: &[FpMatrix]) -> Result<GModule> {
        let gen_elems = group.generator_elements();
        if gens.len() != gen_elems.len() {
            return Err(Error::InvalidAction(format!(
                "expected {} generator matrices, got {}",
                gen_elems.len(),
                gens.len()
            )));
        }
        check_field(&group, field)?;
        let dim = gens.first().map_or(0, FpMatrix::rows);
        for a in gens {
            if a.rows() != dim || a.cols() != dim || a.field() != field {
                return Err(Error::InvalidAction("shape or field mismatch".into()));
            }
        }
        let n = group.order();
        let mut action: Vec<Option<FpMatrix>> = vec![None; n];
        action[0] = Some(FpMatrix::identity(field, dim));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (k, &s) in gen_elems.iter().enumerate() {
                let hs = group.mul(h, s);
                let m = action[h].as_ref().expect("visited").mul(&gens[k]);
                match &action[hs] {
                    Some(existing) => {
                        if *existing != m {
                            return Err(Error::InvalidAction(format!(
                                "relation violated at {}·{}",
                                group.label(h),
                                group.label(s)
                            )));
                        }
                    }
                    None => {
                        action[hs] = Some(m);
                        queue.push_back(hs);
                    }
                }
            }
        }
        let action = action.into_iter().map(|a| a.expect("generators generate")).collect();
        Ok(GModule { inner: Arc::new(ModuleData { group, field, dim, action }) })
    }

    /// Trusted constructor for actions derived from existing modules.
    pub(crate) fn from_actions_unchecked(group: Arc<FiniteGroup>, field: Field, dim: usize, action: Vec<FpMatrix>) -> GModule {
        debug_assert_eq!(action.len(), group.order());
        debug_assert!(action.iter().all(|a| a.rows() == dim && a.cols() == dim));
        GModule { inner: Arc::new(ModuleData { group, field, dim, action }) }
    }

    #[must_use]
    pub fn zero(group: &Arc<FiniteGroup>, field: Field) -> GModule {
        let action = vec![FpMatrix::zeros(field, 0, 0); group.order()];
        GModule::from_actions_unchecked(Arc::clone(group), field, 0, action)
    }

    pub fn trivial(group: &Arc<FiniteGroup>, field: Field) -> Result<GModule> {
        check_field(group, field)?;
        let action = vec![FpMatrix::identity(field, 1); group.order()];
        Ok(GModule::from_actions_unchecked(Arc::clone(group), field, 1, action))
    }

    /// The right regular module kG.
    pub fn regular(group: &Arc<FiniteGroup>, field: Field) -> Result<GModule> {
        check_field(group, field)?;
        Ok(free_module(group, field, 1))
    }

    #[inline]
    #[must_use]
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.inner.group
    }

    #[inline]
    #[must_use]
    pub fn field(&self) -> Field {
        self.inner.field
    }

    #[inline]
    #[must_use]
    pub fn p(&self) -> u32 {
        self.inner.field.p()
    }

    #[inline]
    #[must_use]
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    #[inline]
    #[must_use]
    pub fn action(&self, g: usize) -> &FpMatrix {
        &self.inner.action[g]
    }

    #[must_use]
    pub fn actions(&self) -> &[FpMatrix] {
        &self.inner.action
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Same group (by table) and same prime.
    #[must_use]
    pub fn same_ring(&self, other: &GModule) -> bool {
        self.field() == other.field()
            && (Arc::ptr_eq(self.group(), other.group()) || self.group() == other.group())
    }

    /// Matrix of the group algebra element `u` acting on the right.
    #[must_use]
    pub fn algebra_action(&self, u: &KgElem) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field(), self.dim(), self.dim());
        for (g, &c) in u.coeffs.iter().enumerate() {
            if c != 0 {
                out.add_scaled(self.action(g), c);
            }
        }
        out
    }

    /// `A(g) − I` for each generator of the group.
    #[must_use]
    pub fn generator_differences(&self) -> Vec<FpMatrix> {
        self.group()
            .generator_elements()
            .into_iter()
            .map(|s| self.action(s).minus_identity())
            .collect()
    }

    /// Smallest submodule containing the rows of `vectors`.
    #[must_use]
    pub fn spin(&self, vectors: &FpMatrix) -> RowSpace {
        let f = self.field();
        let gens: Vec<&FpMatrix> = self
            .group()
            .generator_elements()
            .into_iter()
            .map(|s| self.action(s))
            .collect();
        let mut solver = crate::fplinalg::SpanSolver::new(f, self.dim());
        let mut basis: Vec<Vec<u8>> = Vec::new();
        for i in 0..vectors.rows() {
            if solver.push(vectors.row(i)) {
                basis.push(vectors.row(i).to_vec());
            }
        }
        let mut next = 0;
        while next < basis.len() {
            let v = basis[next].clone();
            next += 1;
            for a in &gens {
                let w = a.vec_mul(&v);
                if solver.push(&w) {
                    basis.push(w);
                }
            }
        }
        let rows: Vec<&[u8]> = basis.iter().map(Vec::as_slice).collect();
        RowSpace::span(&FpMatrix::from_row_slices(f, self.dim(), &rows))
    }

    /// True when the span of `rows` is invariant under the action.
    #[must_use]
    pub fn is_invariant(&self, space: &RowSpace) -> bool {
        self.group()
            .generator_elements()
            .into_iter()
            .all(|s| space.contains_rows(&space.basis().mul(self.action(s))))
    }

    /// Number of free summands: the rank of the norm element acting on the module.
    #[must_use]
    pub fn free_rank(&self) -> usize {
        let n = KgElem::norm(self.field(), self.group().order());
        self.algebra_action(&n).rank()
    }
}

fn check_field(group: &FiniteGroup, field: Field) -> Result<()> {
    match group.prime() {
        Some(p) if p != field.p() => Err(Error::Precondition(format!(
            "group order {} is not a power of p = {}",
            group.order(),
            field.p()
        ))),
        _ => Ok(()),
    }
}

/// The free module kG^rank with basis `(a, h)` at index `a·|G| + h`.
#[must_use]
pub fn free_module(group: &Arc<FiniteGroup>, field: Field, rank: usize) -> GModule {
    let n = group.order();
    let d = n * rank;
    let action = (0..n)
        .map(|g| {
            let mut m = FpMatrix::zeros(field, d, d);
            for a in 0..rank {
                for h in 0..n {
                    m.set(a * n + h, a * n + group.mul(h, g), 1);
                }
            }
            m
        })
        .collect();
    GModule::from_actions_unchecked(Arc::clone(group), field, d, action)
}

/// An equivariant linear map `v ↦ v·mat`.
#[derive(Clone, Debug)]
pub struct GMap {
    dom: GModule,
    cod: GModule,
    mat: FpMatrix,
}

impl GMap {
    /// Validated constructor: checks equivariance on the generators.
    pub fn new(dom: &GModule, cod: &GModule, mat: FpMatrix) -> Result<GMap> {
        if !dom.same_ring(cod) {
            return Err(Error::Mismatch);
        }
        if mat.rows() != dom.dim() || mat.cols() != cod.dim() {
            return Err(Error::Precondition("map has the wrong shape".into()));
        }
        for s in dom.group().generator_elements() {
            if dom.action(s).mul(&mat) != mat.mul(cod.action(s)) {
                return Err(Error::NotEquivariant);
            }
        }
        Ok(GMap { dom: dom.clone(), cod: cod.clone(), mat })
    }

    pub(crate) fn new_unchecked(dom: &GModule, cod: &GModule, mat: FpMatrix) -> GMap {
        debug_assert_eq!((mat.rows(), mat.cols()), (dom.dim(), cod.dim()));
        GMap { dom: dom.clone(), cod: cod.clone(), mat }
    }

    #[must_use]
    pub fn identity(m: &GModule) -> GMap {
        GMap::new_unchecked(m, m, FpMatrix::identity(m.field(), m.dim()))
    }

    #[must_use]
    pub fn zero(dom: &GModule, cod: &GModule) -> GMap {
        GMap::new_unchecked(dom, cod, FpMatrix::zeros(dom.field(), dom.dim(), cod.dim()))
    }

    #[inline]
    #[must_use]
    pub fn dom(&self) -> &GModule {
        &self.dom
    }

    #[inline]
    #[must_use]
    pub fn cod(&self) -> &GModule {
        &self.cod
    }

    #[inline]
    #[must_use]
    pub fn mat(&self) -> &FpMatrix {
        &self.mat
    }

    /// The composite "first `self`, then `next`".
    ///
    /// # Panics
    /// Panics if `next` does not start where `self` ends.
    #[must_use]
    pub fn then(&self, next: &GMap) -> GMap {
        assert!(self.cod.dim() == next.dom.dim() && self.cod.same_ring(&next.dom), "maps do not compose");
        GMap::new_unchecked(&self.dom, &next.cod, self.mat.mul(&next.mat))
    }

    #[must_use]
    pub fn add(&self, other: &GMap) -> GMap {
        GMap::new_unchecked(&self.dom, &self.cod, self.mat.add(&other.mat))
    }

    #[must_use]
    pub fn sub(&self, other: &GMap) -> GMap {
        GMap::new_unchecked(&self.dom, &self.cod, self.mat.sub(&other.mat))
    }

    #[must_use]
    pub fn scaled(&self, c: u8) -> GMap {
        GMap::new_unchecked(&self.dom, &self.cod, self.mat.scaled(c))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    #[must_use]
    pub fn kernel(&self) -> RowSpace {
        RowSpace::span(&self.mat.kernel_basis())
    }

    #[must_use]
    pub fn image(&self) -> RowSpace {
        RowSpace::span(&self.mat)
    }

    #[must_use]
    pub fn is_injective(&self) -> bool {
        self.rank() == self.dom.dim()
    }

    #[must_use]
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.cod.dim()
    }

    /// Same map viewed between other (equal) module objects.
    #[must_use]
    pub fn retarget(&self, dom: &GModule, cod: &GModule) -> GMap {
        GMap::new_unchecked(dom, cod, self.mat.clone())
    }

    /// The dual map `N* → M*`, whose matrix is the transpose.
    #[must_use]
    pub fn dual(&self) -> GMap {
        GMap::new_unchecked(&dual(&self.cod), &dual(&self.dom), self.mat.transpose())
    }
}

/// Which half of a subspace construction to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Sub,
    Quotient,
}

/// Submodule spanned by `rows` with its inclusion, or the quotient by it with the projection.
pub fn sub_or_quotient(m: &GModule, rows: &FpMatrix, which: Which) -> Result<(GModule, GMap)> {
    let space = RowSpace::span(rows);
    if !m.is_invariant(&space) {
        return Err(Error::NotInvariant);
    }
    Ok(match which {
        Which::Sub => submodule(m, &space),
        Which::Quotient => quotient_module(m, &space),
    })
}

/// Submodule for an invariant subspace; basis = the echelon basis.
pub(crate) fn submodule(m: &GModule, space: &RowSpace) -> (GModule, GMap) {
    let f = m.field();
    let b = space.basis();
    let action = m
        .actions()
        .iter()
        .map(|a| b.mul(a).select_cols(space.pivots()))
        .collect();
    let sub = GModule::from_actions_unchecked(Arc::clone(m.group()), f, space.dim(), action);
    let incl = GMap::new_unchecked(&sub, m, b.clone());
    (sub, incl)
}

/// Quotient by an invariant subspace; basis = images of the non-pivot unit vectors.
pub(crate) fn quotient_module(m: &GModule, space: &RowSpace) -> (GModule, GMap) {
    let f = m.field();
    let q = space.quotient_map();
    let non = space.nonpivots();
    let action = m
        .actions()
        .iter()
        .map(|a| a.select_rows(&non).mul(&q))
        .collect();
    let quo = GModule::from_actions_unchecked(Arc::clone(m.group()), f, non.len(), action);
    let proj = GMap::new_unchecked(m, &quo, q);
    (quo, proj)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: GModule,
    pub injections: Vec<GMap>,
    pub projections: Vec<GMap>,
}

/// Direct sum of modules over `group`; the empty sum is the zero module.
pub fn direct_sum(group: &Arc<FiniteGroup>, field: Field, ms: &[GModule]) -> Result<DirectSum> {
    for m in ms {
        if m.field() != field || !(Arc::ptr_eq(m.group(), group) || **m.group() == **group) {
            return Err(Error::Mismatch);
        }
    }
    let d: usize = ms.iter().map(GModule::dim).sum();
    let action = (0..group.order())
        .map(|g| {
            let blocks: Vec<&FpMatrix> = ms.iter().map(|m| m.action(g)).collect();
            FpMatrix::block_diag(field, &blocks)
        })
        .collect();
    let module = GModule::from_actions_unchecked(Arc::clone(group), field, d, action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in ms {
        let mut inj = FpMatrix::zeros(field, m.dim(), d);
        inj.set_block(0, off, &FpMatrix::identity(field, m.dim()));
        projections.push(GMap::new_unchecked(&module, m, inj.transpose()));
        injections.push(GMap::new_unchecked(m, &module, inj));
        off += m.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

/// Direct sum of a non-empty list.
///
/// # Panics
/// Panics on an empty list.
pub fn sum_of(ms: &[GModule]) -> Result<DirectSum> {
    let first = ms.first().expect("sum_of needs at least one module");
    direct_sum(first.group(), first.field(), ms)
}

pub fn tensor(m1: &GModule, m2: &GModule) -> Result<GModule> {
    if !m1.same_ring(m2) {
        return Err(Error::Mismatch);
    }
    let action = (0..m1.group().order())
        .map(|g| m1.action(g).kronecker(m2.action(g)))
        .collect();
    Ok(GModule::from_actions_unchecked(
        Arc::clone(m1.group()),
        m1.field(),
        m1.dim() * m2.dim(),
        action,
    ))
}

/// Contragredient module: `g` acts by the transpose of `A(g⁻¹)`.
#[must_use]
pub fn dual(m: &GModule) -> GModule {
    let g = m.group();
    let action = (0..g.order())
        .map(|x| m.action(g.inv(x)).transpose())
        .collect();
    GModule::from_actions_unchecked(Arc::clone(g), m.field(), m.dim(), action)
}

pub fn restrict(m: &GModule, e: &SubgroupEmbedding) -> Result<GModule> {
    if **m.group() != *e.ambient {
        return Err(Error::Mismatch);
    }
    let action = e.map.iter().map(|&g| m.action(g).clone()).collect();
    Ok(GModule::from_actions_unchecked(Arc::clone(&e.sub), m.field(), m.dim(), action))
}

/// Restriction of a map.
pub fn restrict_map(f: &GMap, e: &SubgroupEmbedding) -> Result<GMap> {
    let d = restrict(f.dom(), e)?;
    let c = restrict(f.cod(), e)?;
    Ok(GMap::new_unchecked(&d, &c, f.mat().clone()))
}

/// Inflation along a surjection `G → Q` given as an element map.
pub fn inflate(m: &GModule, ambient: &Arc<FiniteGroup>, proj: &[usize]) -> Result<GModule> {
    if proj.len() != ambient.order() || proj.iter().any(|&q| q >= m.group().order()) {
        return Err(Error::Precondition("projection has the wrong shape".into()));
    }
    let action = proj.iter().map(|&q| m.action(q).clone()).collect();
    GModule::from_actions(Arc::clone(ambient), m.field(), action)
}

/// An induced module with the unit and retraction of the restriction adjunction.
#[derive(Clone, Debug)]
pub struct Induced {
    /// `M↑ = M ⊗_{kH} kG`, basis `(j, v)` at index `j·dim M + v` for right coset reps `t_j`.
    pub module: GModule,
    /// `M↑` restricted back to the subgroup.
    pub restricted: GModule,
    /// `m ↦ m ⊗ 1`.
    pub unit: GMap,
    /// `m ⊗ t_j ↦ m` for `j = 0`, zero otherwise; `unit` then `retraction` is the identity.
    pub retraction: GMap,
}

pub fn induce(m: &GModule, e: &SubgroupEmbedding) -> Result<Induced> {
    if **m.group() != *e.sub {
        return Err(Error::Mismatch);
    }
    let g = &e.ambient;
    let f = m.field();
    let reps = e.right_coset_reps();
    let k = reps.len();
    let d = m.dim();
    // right coset index and subgroup part of each element: x = h·t_j
    let mut coset = vec![(0usize, 0usize); g.order()];
    for (j, &t) in reps.iter().enumerate() {
        for (hi, &h) in e.map.iter().enumerate() {
            coset[g.mul(h, t)] = (j, hi);
        }
    }
    let action = (0..g.order())
        .map(|x| {
            let mut a = FpMatrix::zeros(f, k * d, k * d);
            for (j, &t) in reps.iter().enumerate() {
                let (j2, hi) = coset[g.mul(t, x)];
                a.set_block(j * d, j2 * d, m.action(hi));
            }
            a
        })
        .collect();
    let module = GModule::from_actions_unchecked(Arc::clone(g), f, k * d, action);
    let restricted = restrict(&module, e)?;
    let mut u = FpMatrix::zeros(f, d, k * d);
    u.set_block(0, 0, &FpMatrix::identity(f, d));
    let unit = GMap::new(m, &restricted, u.clone())?;
    let retraction = GMap::new(&restricted, m, u.transpose())?;
    Ok(Induced { module, restricted, unit, retraction })
}

/// Induced map `f↑ = f ⊗ id`, block diagonal over the cosets.
pub fn induce_map(f: &GMap, e: &SubgroupEmbedding) -> Result<(Induced, Induced, GMap)> {
    let a = induce(f.dom(), e)?;
    let b = induce(f.cod(), e)?;
    let blocks: Vec<&FpMatrix> = (0..e.index()).map(|_| f.mat()).collect();
    let mat = FpMatrix::block_diag(f.dom().field(), &blocks);
    let map = GMap::new_unchecked(&a.module, &b.module, mat);
    Ok((a, b, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupExpr;

    fn field(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn trivial_and_regular() {
        let c2 = FiniteGroup::build(&GroupExpr::Cyclic(2)).unwrap();
        assert_eq!(GModule::trivial(&c2, field(2)).unwrap().dim(), 1);
        let c9 = FiniteGroup::build(&GroupExpr::Cyclic(9)).unwrap();
        let r = GModule::regular(&c9, field(3)).unwrap();
        assert_eq!(r.dim(), 9);
        assert_eq!(radical_length(&r), 9);
        assert!(GModule::regular(&c9, field(2)).is_err());
        let q8 = FiniteGroup::build(&GroupExpr::Quaternion8).unwrap();
        assert_eq!(radical_length(&GModule::regular(&q8, field(2)).unwrap()), 5);
    }

    #[test]
    fn generator_constructor_validates_relations() {
        let c3 = FiniteGroup::build(&GroupExpr::Cyclic(3)).unwrap();
        let f = field(3);
        let ok = FpMatrix::from_rows(f, &[vec![1, 1], vec![0, 1]]);
        assert!(GModule::from_generators(Arc::clone(&c3), f, &[ok]).is_ok());
        // order 2 over F_3: violates g^3 = 1
        let bad = FpMatrix::from_rows(f, &[vec![0, 1], vec![1, 0]]);
        assert!(GModule::from_generators(c3, f, &[bad]).is_err());
    }

    #[test]
    fn sums_and_tensors() {
        let c3 = FiniteGroup::build(&GroupExpr::Cyclic(3)).unwrap();
        let f = field(3);
        let k = GModule::trivial(&c3, f).unwrap();
        let s = direct_sum(&c3, f, &[k.clone(), k.clone()]).unwrap();
        assert_eq!(s.module.dim(), 2);
        assert_eq!(radical_length(&s.module), 1);
        assert_eq!(direct_sum(&c3, f, &[]).unwrap().module.dim(), 0);
        let r = GModule::regular(&c3, f).unwrap();
        let t = tensor(&k, &r).unwrap();
        assert!(is_isomorphic(&t, &r));
    }

    #[test]
    fn induced_from_trivial_subgroup_is_regular() {
        let d8 = FiniteGroup::build(&GroupExpr::Dihedral(8)).unwrap();
        let f = field(2);
        let triv = d8.subgroup(&[]).unwrap();
        let k = GModule::trivial(&triv.sub, f).unwrap();
        let ind = induce(&k, &triv).unwrap();
        assert!(is_isomorphic(&ind.module, &GModule::regular(&d8, f).unwrap()));
        assert!(ind.unit.then(&ind.retraction).mat().is_identity());
    }

    #[test]
    fn sub_and_quotient() {
        let c9 = FiniteGroup::build(&GroupExpr::Cyclic(9)).unwrap();
        let f = field(3);
        let r = GModule::regular(&c9, f).unwrap();
        let rad4 = radical_series(&r)[4].clone();
        let (m4, proj) = sub_or_quotient(&r, rad4.basis(), Which::Quotient).unwrap();
        assert_eq!(m4.dim(), 4);
        assert!(proj.is_surjective());
        let (full, incl) = sub_or_quotient(&r, &FpMatrix::identity(f, 9), Which::Sub).unwrap();
        assert!(incl.mat().is_identity());
        assert_eq!(full.dim(), 9);
        let not_inv = FpMatrix::from_rows(f, &[vec![1, 0, 0, 0, 0, 0, 0, 0, 0]]);
        assert_eq!(sub_or_quotient(&r, &not_inv, Which::Sub).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn dual_of_regular_is_regular() {
        let q8 = FiniteGroup::build(&GroupExpr::Quaternion8).unwrap();
        let f = field(2);
        let r = GModule::regular(&q8, f).unwrap();
        assert!(is_isomorphic(&dual(&r), &r));
        let k = GModule::trivial(&q8, f).unwrap();
        assert!(is_isomorphic(&dual(&k), &k));
    }
}
