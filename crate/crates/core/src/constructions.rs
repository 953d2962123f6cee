//! Explicit ghosts and the lower-bound witnesses built from them.
//!
//! Every map here is a ghost by a theorem, not by a window check, so
//! composites of them certify lower bounds on ghost length.
//!
//! Right multiplications on an induced module live on a right ideal of kG:
//! under the antipode a left ideal `kG·w` becomes the right ideal `ι(w)·kG`,
//! and right multiplication by `u` becomes left multiplication by `ι(u)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fplinalg::{Field, FpMatrix, RowSpace};
use crate::ghosts::{CertKind, GhostCertificate};
use crate::groups::{FiniteGroup, GroupExpr, KgElem, SubgroupEmbedding};
use crate::modules::{induce, induce_map, radical_length, submodule, GMap, GModule, Induced};

pub const CENTRAL_THEOREM: &str = "multiplication by x-1 for central x is a ghost";
pub const RIGHT_MULT_THEOREM: &str =
    "right multiplication by x-1 on a module induced from a cyclic normal subgroup is a ghost";
pub const INDUCED_THEOREM: &str = "induction carries ghosts to ghosts";

/// `x − 1` acting on a module, for central `x`.
#[derive(Clone, Debug)]
pub struct CentralWitness {
    pub element: usize,
    pub module: GModule,
    pub map: GMap,
    pub cert: GhostCertificate,
}

pub fn central_mult_ghost(m: &GModule, x: usize) -> Result<CentralWitness> {
    let g = m.group();
    if x >= g.order() {
        return Err(Error::Precondition(format!("no element {x}")));
    }
    if !g.is_central(x) {
        return Err(Error::Precondition(format!("{} is not central", g.label(x))));
    }
    let map = GMap::new_unchecked(m, m, m.action(x).minus_identity());
    let cert = GhostCertificate::by_theorem(map.clone(), CENTRAL_THEOREM)
        .with_notes(&format!("{}-1", g.label(x)));
    Ok(CentralWitness { element: x, module: m.clone(), map, cert })
}

/// Jordan block `I + N` of size `n`, with `z_i·N = z_{i+1}`.
fn unipotent(field: Field, n: usize) -> FpMatrix {
    let mut a = FpMatrix::identity(field, n);
    for i in 1..n {
        a.set(i - 1, i, 1);
    }
    a
}

/// The indecomposable `M_n = kC/(g−1)^n` over a cyclic group.
pub fn cyclic_module(group: &Arc<FiniteGroup>, field: Field, n: usize) -> Result<GModule> {
    let gens = group.generator_elements();
    if gens.len() != 1 || group.element_order(gens[0]) != group.order() {
        return Err(Error::InvalidGroup("expected a cyclic group with one generator".into()));
    }
    if n == 0 || n > group.order() {
        return Err(Error::Precondition(format!("dimension {n} out of range 1..={}", group.order())));
    }
    GModule::from_generators(Arc::clone(group), field, &[unipotent(field, n)])
}

/// The tensor product of the cyclic indecomposables `M_{n_i}` over a product of cyclic groups.
pub fn abelian_module(a: &Arc<FiniteGroup>, field: Field, dims: &[usize]) -> Result<GModule> {
    let orders = product_orders(a)?;
    if dims.len() != orders.len() {
        return Err(Error::Precondition(format!(
            "{} dimensions given for {} cyclic factors",
            dims.len(),
            orders.len()
        )));
    }
    for (&n, &o) in dims.iter().zip(orders) {
        if n == 0 || n > o {
            return Err(Error::Precondition(format!("dimension {n} out of range 1..={o}")));
        }
    }
    let gens: Vec<FpMatrix> = (0..dims.len())
        .map(|i| {
            dims.iter().enumerate().fold(FpMatrix::identity(field, 1), |acc, (j, &n)| {
                let b = if i == j { unipotent(field, n) } else { FpMatrix::identity(field, n) };
                acc.kronecker(&b)
            })
        })
        .collect();
    GModule::from_generators(Arc::clone(a), field, &gens)
}

fn product_orders(a: &FiniteGroup) -> Result<&[usize]> {
    if !a.is_abelian() {
        return Err(Error::InvalidGroup("expected an abelian group".into()));
    }
    match a.cyclic_factors() {
        Some(o) if o.len() == a.generators().len() => Ok(o),
        _ => Err(Error::InvalidGroup("abelian group without a recorded cyclic decomposition".into())),
    }
}

/// The composite `Π (g_i − 1)^{n_i − 1}` on `⊗ M_{n_i}`.
#[derive(Clone, Debug)]
pub struct AbelianTheta {
    pub module: GModule,
    pub theta: GMap,
    /// `None` when every `n_i = 1` and `θ` is the identity.
    pub cert: Option<GhostCertificate>,
    /// Some `n_i ≤ p^{r_i}/2`, so `θ` is stably non-trivial by theorem.
    pub nontrivial_by_theorem: bool,
}

pub fn abelian_theta(a: &Arc<FiniteGroup>, field: Field, dims: &[usize]) -> Result<AbelianTheta> {
    let m = abelian_module(a, field, dims)?;
    let orders = product_orders(a)?;
    let gens = a.generator_elements();
    let mut factors = Vec::new();
    for (i, &n) in dims.iter().enumerate() {
        let w = central_mult_ghost(&m, gens[i])?;
        factors.extend(std::iter::repeat(w.cert).take(n - 1));
    }
    let nontrivial_by_theorem = dims.iter().zip(orders).any(|(&n, &o)| 2 * n <= o);
    let (theta, cert) = if factors.is_empty() {
        (GMap::identity(&m), None)
    } else {
        let c = GhostCertificate::composite(factors);
        (c.map.clone(), Some(c))
    };
    Ok(AbelianTheta { module: m, theta, cert, nontrivial_by_theorem })
}

/// `M_n↑` for a cyclic normal subgroup `C = ⟨g⟩`, realised as the right ideal
/// `(g−1)^{p^r−n}·kG`, carrying right multiplications.
#[derive(Clone, Debug)]
pub struct CyclicNormalWitness {
    pub embedding: SubgroupEmbedding,
    pub n: usize,
    /// Generator of the cyclic subgroup, as an ambient element.
    pub generator: usize,
    pub induced: GModule,
    /// Inclusion of the ideal into the regular module.
    pub inclusion: GMap,
    /// `R_{x−1}` for each requested `x`.
    pub right_mults: BTreeMap<usize, GhostCertificate>,
    ideal: RowSpace,
}

pub fn right_mult_ghost(e: &SubgroupEmbedding, n: usize, x: usize) -> Result<CyclicNormalWitness> {
    let mut w = cyclic_normal_module(e, n, char_field(&e.ambient)?)?;
    w.add_right_mult(x)?;
    Ok(w)
}

/// The induced module of a cyclic normal subgroup, without any maps yet.
pub fn cyclic_normal_module(e: &SubgroupEmbedding, n: usize, field: Field) -> Result<CyclicNormalWitness> {
    let g = &e.ambient;
    let c = &e.sub;
    let order = c.order();
    let gen = (0..order)
        .find(|&h| c.element_order(h) == order)
        .ok_or_else(|| Error::InvalidGroup("subgroup is not cyclic".into()))?;
    if !g.is_normal(e) {
        return Err(Error::NotNormal);
    }
    if order < 2 || c.prime() != Some(field.p()) {
        return Err(Error::Precondition("subgroup must be a non-trivial p-group".into()));
    }
    if n == 0 || n > order {
        return Err(Error::Precondition(format!("n = {n} out of range 1..={order}")));
    }
    let generator = e.map[gen];
    let w = KgElem::minus_one(field, g.order(), generator).pow(order - n, g);
    let reg = GModule::regular(g, field)?;
    let seed = FpMatrix::from_row_slices(field, g.order(), &[w.coeffs.as_slice()]);
    let ideal = reg.spin(&seed);
    let (induced, inclusion) = submodule(&reg, &ideal);
    Ok(CyclicNormalWitness {
        embedding: e.clone(),
        n,
        generator,
        induced,
        inclusion,
        right_mults: BTreeMap::new(),
        ideal,
    })
}

/// The prime field of the group's characteristic.
fn char_field(g: &FiniteGroup) -> Result<Field> {
    let p = g.prime().ok_or_else(|| Error::InvalidGroup("trivial group".into()))?;
    Field::new(p)
}

/// Matrix of `v ↦ u·v` on kG in the basis of group elements.
fn left_mult_matrix(g: &FiniteGroup, u: &KgElem) -> FpMatrix {
    let n = g.order();
    let mut out = FpMatrix::zeros(u.field, n, n);
    for (y, &c) in u.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for h in 0..n {
            let col = g.mul(y, h);
            let cur = out.get(h, col);
            out.set(h, col, u.field.add(cur, c));
        }
    }
    out
}

impl CyclicNormalWitness {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.embedding.ambient
    }

    /// `R_u`, the right multiplication by `u` in the left-module picture.
    pub fn right_mult_elem(&self, u: &KgElem) -> Result<GMap> {
        let g = self.group();
        let l = left_mult_matrix(g, &u.antipode(g));
        let img = self.ideal.basis().mul(&l);
        if !self.ideal.contains_rows(&img) {
            return Err(Error::NotInvariant);
        }
        let mat = img.select_cols(self.ideal.pivots());
        GMap::new(&self.induced, &self.induced, mat)
    }

    /// Certified `R_{x−1}`.
    pub fn right_mult(&self, x: usize) -> Result<GhostCertificate> {
        let g = self.group();
        if x >= g.order() {
            return Err(Error::Precondition(format!("no element {x}")));
        }
        let u = KgElem::minus_one(self.induced.field(), g.order(), x);
        let map = self.right_mult_elem(&u)?;
        Ok(GhostCertificate::by_theorem(map, RIGHT_MULT_THEOREM).with_notes(&format!("R_({}-1)", g.label(x))))
    }

    pub fn add_right_mult(&mut self, x: usize) -> Result<&GhostCertificate> {
        let c = self.right_mult(x)?;
        Ok(self.right_mults.entry(x).or_insert(c))
    }

    /// `R_{g_l−1} ∘ ⋯ ∘ R_{g_1−1}`, applying `word[0]` first.
    pub fn composite(&self, word: &[usize]) -> Result<GhostCertificate> {
        if word.is_empty() {
            return Err(Error::Precondition("empty word".into()));
        }
        let factors = word.iter().map(|&x| self.right_mult(x)).collect::<Result<Vec<_>>>()?;
        Ok(GhostCertificate::composite(factors))
    }

    /// Whether every right multiplication by a group element preserves the ideal.
    pub fn is_bimodule(&self) -> bool {
        let g = self.group();
        let f = self.induced.field();
        (0..g.order()).all(|x| {
            let l = left_mult_matrix(g, &KgElem::basis(f, g.order(), g.inv(x)));
            self.ideal.contains_rows(&self.ideal.basis().mul(&l))
        })
    }

    /// `M·J` for the right action, in induced-module coordinates.
    pub fn right_radical(&self) -> Result<RowSpace> {
        let f = self.induced.field();
        let d = self.induced.dim();
        let mut rows = FpMatrix::zeros(f, 0, d);
        for s in self.group().generator_elements() {
            let m = self.right_mult(s)?.map;
            for i in 0..d {
                rows.push_row(m.mat().row(i));
            }
        }
        Ok(RowSpace::span(&rows))
    }

    /// Words in the generators of length `rad len − 1` whose composite is non-zero.
    ///
    /// Right multiplication by products of more generator differences
    /// vanishes, so such a word maps onto the socle.
    pub fn find_socle_word(&self) -> Result<Option<Vec<usize>>> {
        let depth = radical_length(&self.induced).saturating_sub(1);
        let gens = self.group().generator_elements();
        let maps = gens.iter().map(|&s| Ok(self.right_mult(s)?.map.mat().clone())).collect::<Result<Vec<_>>>()?;
        let start = FpMatrix::identity(self.induced.field(), self.induced.dim());
        let mut word = Vec::new();
        Ok(dfs_word(&start, &maps, &gens, depth, &mut word).then_some(word))
    }
}

fn dfs_word(cur: &FpMatrix, maps: &[FpMatrix], gens: &[usize], depth: usize, word: &mut Vec<usize>) -> bool {
    if depth == 0 {
        return true;
    }
    for (m, &s) in maps.iter().zip(gens) {
        let next = RowSpace::span(&cur.mul(m)).basis().clone();
        if next.rows() == 0 {
            continue;
        }
        word.push(s);
        if dfs_word(&next, maps, gens, depth - 1, word) {
            return true;
        }
        word.pop();
    }
    false
}

/// `(x−1)^{l−1} ∘ f↑` and its detection retraction.
#[derive(Clone, Debug)]
pub struct InductionWitness {
    pub l: usize,
    pub dom: Induced,
    pub cod: Induced,
    pub induced_map: GMap,
    pub composite: GMap,
    /// Present when the composite has at least one certified factor.
    pub cert: Option<GhostCertificate>,
    /// `r ∘ (x−1)^{l−1}↓ ∘ f↑↓ ∘ i`, which equals `(−1)^{l−1} f`.
    pub detection: GMap,
    pub sign: u8,
}

/// Smallest `l ≥ 1` with `x^l ∈ H`.
#[must_use]
pub fn coset_order(e: &SubgroupEmbedding, x: usize) -> usize {
    let g = &e.ambient;
    let mut y = x;
    let mut l = 1;
    while !e.contains(y) {
        y = g.mul(y, x);
        l += 1;
    }
    l
}

/// `factors` describes `f` as a composite of certified ghosts over the
/// subgroup; leave it empty when `f` is not itself claimed to be a ghost.
pub fn induction_witness(
    f: &GMap,
    factors: &[GhostCertificate],
    e: &SubgroupEmbedding,
    x: usize,
    l: usize,
) -> Result<InductionWitness> {
    let g = &e.ambient;
    if x >= g.order() || !g.is_central(x) {
        return Err(Error::Precondition("x must be a central element".into()));
    }
    if l == 0 || coset_order(e, x) != l {
        return Err(Error::Precondition(format!(
            "l = {l} is not the least power of x landing in the subgroup ({})",
            coset_order(e, x)
        )));
    }
    let (dom, cod, up) = induce_map(f, e)?;
    let xm = central_mult_ghost(&cod.module, x)?;
    let mut composite = up.clone();
    for _ in 1..l {
        composite = composite.then(&xm.map);
    }
    let mut certs: Vec<GhostCertificate> = Vec::new();
    for c in factors {
        let (_, _, m) = induce_map(&c.map, e)?;
        certs.push(GhostCertificate::by_theorem(m, INDUCED_THEOREM).with_notes(&c.notes));
    }
    if !certs.is_empty() {
        let chained = factors.iter().skip(1).fold(factors[0].map.clone(), |a, c| a.then(&c.map));
        if chained.mat() != f.mat() {
            return Err(Error::Precondition("factors do not compose to f".into()));
        }
    }
    certs.extend(std::iter::repeat(xm.cert.clone()).take(l - 1));
    let cert = if certs.is_empty() {
        None
    } else {
        // the first induced factor may sit on a separately built copy of the module
        Some(GhostCertificate::composite(certs))
    };
    let down = composite.retarget(&dom.restricted, &cod.restricted);
    let detection = dom.unit.then(&down).then(&cod.retraction);
    let field = f.dom().field();
    let sign = if (l - 1) % 2 == 0 { 1 } else { field.neg(1) };
    Ok(InductionWitness { l, dom, cod, induced_map: up, composite, cert, detection, sign })
}

/// Induces a certified ghost factor by factor, so an `n`-fold ghost stays `n`-fold.
pub fn induce_certificate(c: &GhostCertificate, e: &SubgroupEmbedding) -> Result<GhostCertificate> {
    match &c.kind {
        CertKind::ByTheorem(_) => {
            let (_, _, m) = induce_map(&c.map, e)?;
            Ok(GhostCertificate::by_theorem(m, INDUCED_THEOREM).with_notes(&c.notes))
        }
        CertKind::ByWindow(_) => Err(Error::NotCertified),
        CertKind::Composite(fs) => {
            let parts = fs.iter().map(|f| induce_certificate(f, e)).collect::<Result<Vec<_>>>()?;
            Ok(GhostCertificate::composite(parts).with_notes(&c.notes))
        }
    }
}

/// A certified lower-bound witness for the ghost number of a group algebra.
#[derive(Clone, Debug)]
pub struct GroupWitness {
    pub module: GModule,
    /// `None` when the witness is the identity of a non-projective module.
    pub cert: Option<GhostCertificate>,
    pub strategy: String,
}

impl GroupWitness {
    /// The lower bound the witness certifies once it is stably non-trivial.
    #[must_use]
    pub fn claimed_lower(&self) -> usize {
        1 + self.cert.as_ref().map_or(0, GhostCertificate::length)
    }
}

/// The strongest witness the explicit constructions give for `kG`.
pub fn ghost_number_witness(expr: &GroupExpr, field: Field) -> Result<GroupWitness> {
    let g = FiniteGroup::build(expr)?;
    if g.prime() != Some(field.p()) {
        return Err(Error::Precondition("the group must be a non-trivial p-group in characteristic p".into()));
    }
    match expr {
        GroupExpr::Dihedral(order) => {
            let q = order / 4;
            let (x, y) = (g.element("x").expect("x"), g.element("y").expect("y"));
            let e = g.subgroup(&[g.mul(x, y)])?;
            let w = cyclic_normal_module(&e, q, field)?;
            let word: Vec<usize> = (0..q).map(|k| if k % 2 == 0 { x } else { y }).collect();
            Ok(GroupWitness {
                module: w.induced.clone(),
                cert: Some(w.composite(&word)?),
                strategy: "right multiplication by ((x-1)(y-1))^(q/2) on k induced from C_2".into(),
            })
        }
        GroupExpr::Quaternion8 => {
            let (i, j) = (g.element("i").expect("i"), g.element("j").expect("j"));
            let e = g.subgroup(&[g.mul(i, i)])?;
            let w = cyclic_normal_module(&e, 1, field)?;
            Ok(GroupWitness {
                module: w.induced.clone(),
                cert: Some(w.composite(&[i, j])?),
                strategy: "right multiplication by (i+1)(j+1) on kV".into(),
            })
        }
        _ if g.is_abelian() && product_orders(&g).is_ok() => {
            let orders = product_orders(&g)?.to_vec();
            let smallest = (0..orders.len()).min_by_key(|&i| orders[i]).expect("non-trivial");
            let dims: Vec<usize> = orders
                .iter()
                .enumerate()
                .map(|(i, &o)| if i == smallest { o / 2 } else { o })
                .collect();
            let t = abelian_theta(&g, field, &dims)?;
            Ok(GroupWitness { module: t.module, cert: t.cert, strategy: format!("abelian theta, dims {dims:?}") })
        }
        _ => central_cyclic_witness(&g, field),
    }
}

/// Generic witness: `M_n↑` from a central subgroup of order p with `n = ⌈(p−1)/2⌉`.
fn central_cyclic_witness(g: &Arc<FiniteGroup>, field: Field) -> Result<GroupWitness> {
    let p = field.p() as usize;
    let z = g
        .center()
        .into_iter()
        .find(|&z| g.element_order(z) == p)
        .ok_or_else(|| Error::InvalidGroup("no central element of order p".into()))?;
    let e = g.subgroup(&[z])?;
    let w = cyclic_normal_module(&e, p / 2, field)?;
    let cert = match w.find_socle_word()? {
        Some(word) if !word.is_empty() => Some(w.composite(&word)?),
        _ => None,
    };
    Ok(GroupWitness {
        module: w.induced.clone(),
        cert,
        strategy: format!("right multiplication onto the socle of M_{}↑ from a central C_{p}", p / 2),
    })
}

/// `M_n↑` as an abstract induced module, for comparison with the ideal model.
pub fn induced_cyclic(e: &SubgroupEmbedding, n: usize, field: Field) -> Result<GModule> {
    Ok(induce(&cyclic_module(&e.sub, field, n)?, e)?.module)
}
