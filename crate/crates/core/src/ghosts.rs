//! Ghosts, universal window ghosts and certified bounds on ghost length.
//!
//! A window ghost is only known to vanish on `Ĥ^n` for `|n| ≤ W`. Every true
//! ghost is a window ghost, so window arguments give sound upper bounds. Lower
//! bounds come only from composites whose factors are ghosts by theorem.

use std::fmt;

use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, RowSpace};
use crate::modules::{
    direct_sum, free_module, quotient_module, radical_series, socle_length, socle_series, GMap,
    GModule,
};
use crate::stable::{injective_hull, is_stably_trivial, is_stably_zero, strip_free};
use crate::tate::{apply_componentwise, complement_rows, with_resolution};

pub use crate::tate::{is_ghost_in_degrees, is_window_ghost};

/// Why a map is known to be a ghost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertKind {
    /// A theorem proves the map is a ghost in every degree.
    ByTheorem(String),
    /// Verified to vanish on `Ĥ^n` for `|n| ≤ W` only.
    ByWindow(u32),
    /// A composite of certified ghosts, first factor first.
    Composite(Vec<GhostCertificate>),
}

#[derive(Clone, Debug)]
pub struct GhostCertificate {
    pub kind: CertKind,
    pub map: GMap,
    pub notes: String,
}

impl PartialEq for GhostCertificate {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.notes == other.notes && self.map.mat() == other.map.mat()
    }
}

impl Eq for GhostCertificate {}

impl GhostCertificate {
    #[must_use]
    pub fn by_theorem(map: GMap, theorem: &str) -> GhostCertificate {
        GhostCertificate {
            kind: CertKind::ByTheorem(theorem.to_string()),
            map,
            notes: String::new(),
        }
    }

    /// Composite of certified factors, applied first to last.
    ///
    /// # Panics
    /// Panics on an empty list or factors that do not compose.
    #[must_use]
    pub fn composite(factors: Vec<GhostCertificate>) -> GhostCertificate {
        let mut it = factors.iter();
        let first = it.next().expect("composite of at least one ghost").map.clone();
        let map = it.fold(first, |acc, c| acc.then(&c.map));
        GhostCertificate { kind: CertKind::Composite(factors), map, notes: String::new() }
    }

    #[must_use]
    pub fn with_notes(mut self, notes: &str) -> GhostCertificate {
        self.notes = notes.to_string();
        self
    }

    /// True iff every factor is a ghost by theorem.
    #[must_use]
    pub fn is_true_ghost(&self) -> bool {
        match &self.kind {
            CertKind::ByTheorem(_) => true,
            CertKind::ByWindow(_) => false,
            CertKind::Composite(fs) => fs.iter().all(GhostCertificate::is_true_ghost),
        }
    }

    /// Number of ghost factors: a composite of `n` ghosts is an `n`-fold ghost.
    #[must_use]
    pub fn length(&self) -> usize {
        match &self.kind {
            CertKind::Composite(fs) => fs.iter().map(GhostCertificate::length).sum(),
            _ => 1,
        }
    }
}

impl fmt::Display for GhostCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CertKind::ByTheorem(t) => write!(f, "ghost by theorem ({t})"),
            CertKind::ByWindow(w) => write!(f, "window ghost (|n| <= {w})"),
            CertKind::Composite(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "composite[{}]", parts.join(" ; "))
            }
        }
    }
}

/// Whether `f` kills the socle and lands in the radical, both unstably.
///
/// For projective-free modules both conditions only depend on the stable
/// class, since maps through projectives kill socles and land in radicals.
pub fn soc_rad_check(f: &GMap) -> Result<(bool, bool)> {
    soc_rad_check_l(f, 1)
}

/// `soc^l(M) ⊆ ker f` and `im f ⊆ rad^l(N)`.
pub fn soc_rad_check_l(f: &GMap, l: usize) -> Result<(bool, bool)> {
    if f.dom().free_rank() > 0 || f.cod().free_rank() > 0 {
        return Err(Error::Precondition("soc_rad_check needs projective-free modules".into()));
    }
    let soc = socle_series(f.dom());
    let kills = soc
        .get(l)
        .map_or_else(|| f.is_zero(), |s| s.basis().mul(f.mat()).is_zero());
    let rad = radical_series(f.cod());
    let lands = match rad.get(l) {
        Some(r) => r.contains_rows(f.mat()),
        None => f.is_zero(),
    };
    Ok((kills, lands))
}

/// How the summands of the universal source are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SourceMode {
    /// One summand `Ω^i k` per basis class of `Ĥ^i(M)`, for every `|i| ≤ W`.
    FullBasis,
    /// Only the summands needed for `ψ_*` to be onto `Ĥ^i(M)` for `|i| ≤ W`.
    #[default]
    Generators,
}

/// The cofibre `φ : M → U` of a map `ψ : F → M` onto windowed Tate cohomology.
#[derive(Clone, Debug)]
pub struct UniversalGhost {
    /// The projective-free part of the cofibre.
    pub u: GModule,
    pub phi: GMap,
    pub cert: GhostCertificate,
    /// `(degree, cocycle)` of each summand `Ω^a k` of the source.
    pub source_degrees: Vec<i32>,
    pub source: GModule,
    pub psi: GMap,
}

/// `M → U_M` vanishing on `Ĥ^n` for `|n| ≤ W`, through which every such map factors.
#[must_use]
pub fn universal_window_ghost(m: &GModule, w: u32) -> UniversalGhost {
    universal_window_ghost_with(m, w, SourceMode::default())
}

#[must_use]
pub fn universal_window_ghost_with(m: &GModule, w: u32, mode: SourceMode) -> UniversalGhost {
    let wi = i32::try_from(w).expect("window fits in i32");
    let g = m.group();
    let f = m.field();
    let degrees: Vec<i32> = std::iter::once(0)
        .chain((1..=wi).flat_map(|i| [-i, i]))
        .collect();
    let pieces: Vec<(i32, GMap)> = with_resolution(g, f, |res| {
        let mut chosen: Vec<(i32, GMap)> = Vec::new();
        for &i in &degrees {
            let z = res.cocycles(m, i);
            let b = res.coboundaries(m, i);
            if z.dim() == b.dim() {
                continue;
            }
            let mut covered = b;
            if mode == SourceMode::Generators {
                for (a, psi) in &chosen {
                    let za = res.omega_cocycles(*a, i);
                    let r = res.rank(i);
                    if za.dim() > 0 {
                        let img = apply_componentwise(za.basis(), psi.mat(), r);
                        covered = covered.sum(&RowSpace::span(&img));
                    }
                }
            }
            for c in complement_rows(&z, &covered) {
                if mode == SourceMode::Generators && covered.contains(&c) {
                    continue;
                }
                let psi = res.cocycle_map(m, i, &c);
                if mode == SourceMode::Generators {
                    let zi = res.omega_cocycles(i, i);
                    let img = apply_componentwise(zi.basis(), psi.mat(), res.rank(i));
                    covered = covered.sum(&RowSpace::span(&img));
                }
                chosen.push((i, psi));
            }
        }
        chosen
    });
    cofibre(m, &pieces, w)
}

fn cofibre(m: &GModule, pieces: &[(i32, GMap)], w: u32) -> UniversalGhost {
    let g = m.group();
    let f = m.field();
    let sources: Vec<GModule> = pieces.iter().map(|(_, p)| p.dom().clone()).collect();
    let src = direct_sum(g, f, &sources).expect("same ring");
    let mut psi_mat = FpMatrix::zeros(f, src.module.dim(), m.dim());
    let mut off = 0;
    for (_, p) in pieces {
        psi_mat.set_block(off, 0, p.mat());
        off += p.dom().dim();
    }
    let psi = GMap::new_unchecked(&src.module, m, psi_mat);
    let hull = injective_hull(&src.module);
    let di = hull.hull.dim();
    let mi = direct_sum(g, f, &[m.clone(), hull.hull.clone()]).expect("same ring");
    let rel = FpMatrix::hstack(f, src.module.dim(), &[psi.mat(), &hull.inj.mat().neg()]);
    let (u_full, q) = quotient_module(&mi.module, &RowSpace::span(&rel));
    let phi_full = mi.injections[0].then(&q);
    let st = strip_free(&u_full);
    let phi = phi_full.then(&st.proj);
    debug_assert!(di == 0 || u_full.dim() <= m.dim() + di);
    let cert = GhostCertificate {
        kind: CertKind::ByWindow(w),
        map: phi.clone(),
        notes: format!("cofibre of {} Tate classes", pieces.len()),
    };
    UniversalGhost {
        u: st.module,
        phi,
        cert,
        source_degrees: pieces.iter().map(|(a, _)| *a).collect(),
        source: src.module,
        psi,
    }
}

/// Socle length of the projective-free part: `gl(M)` is at most this.
#[must_use]
pub fn socle_length_upper(m: &GModule) -> usize {
    socle_length(&strip_free(m).module)
}

/// Method that produced an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperMethod {
    SocleBound,
    UniversalIteration(u32),
    /// The iteration cap was reached first; the socle bound stands.
    SocleBoundNmaxExhausted(u32),
}

impl fmt::Display for UpperMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperMethod::SocleBound => write!(f, "socle_bound"),
            UpperMethod::UniversalIteration(w) => write!(f, "universal_iteration({w})"),
            UpperMethod::SocleBoundNmaxExhausted(n) => write!(f, "socle_bound(nmax {n} exhausted)"),
        }
    }
}

/// Certified bounds `lower ≤ gl(M) ≤ upper`.
#[derive(Clone, Debug)]
pub struct LengthBounds {
    pub lower: usize,
    /// The longest stably non-trivial certified composite, if any was used.
    pub lower_witness: Option<GhostCertificate>,
    pub upper: usize,
    pub upper_method: UpperMethod,
    pub module: GModule,
}

impl LengthBounds {
    #[must_use]
    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }
}

/// Checks that a witness composite starts at `m` and is made of true ghosts.
fn validate_witness(m: &GModule, w: &GhostCertificate) -> Result<()> {
    if !w.is_true_ghost() {
        return Err(Error::NotCertified);
    }
    if w.map.dom().dim() != m.dim() || !w.map.dom().same_ring(m) || w.map.dom().actions() != m.actions()
    {
        return Err(Error::Precondition("witness does not start at the module".into()));
    }
    Ok(())
}

/// Lower bound from certified witnesses: 1 + the longest stably non-trivial one.
pub fn certified_lower_bound(m: &GModule, witnesses: &[GhostCertificate]) -> Result<(usize, Option<GhostCertificate>)> {
    if is_stably_zero(m) {
        return Ok((0, None));
    }
    let mut best = (1usize, None);
    for w in witnesses {
        validate_witness(m, w)?;
        let len = w.length();
        if 1 + len > best.0 && !is_stably_trivial(&w.map) {
            best = (1 + len, Some(w.clone()));
        }
    }
    Ok(best)
}

/// Certified bounds on the ghost length of `m`.
///
/// Upper bound: the socle length of the projective-free part, improved by the
/// first `n ≤ nmax` for which the `n`-fold iterated universal window ghost is
/// stably trivial.
pub fn ghost_length_bounds(m: &GModule, w: u32, nmax: usize, witnesses: &[GhostCertificate]) -> Result<LengthBounds> {
    let (lower, lower_witness) = certified_lower_bound(m, witnesses)?;
    let pf = strip_free(m);
    let upper_socle = socle_length(&pf.module);
    let mut upper = upper_socle;
    let mut method = UpperMethod::SocleBound;
    if lower < upper_socle {
        let mut cur = pf.module.clone();
        let mut comp = GMap::identity(&cur);
        let mut n = 0;
        while n + 1 < upper_socle {
            if n + 1 > nmax {
                method = UpperMethod::SocleBoundNmaxExhausted(u32::try_from(nmax).unwrap_or(u32::MAX));
                break;
            }
            let ug = universal_window_ghost(&cur, w);
            comp = comp.then(&ug.phi);
            cur = ug.u;
            n += 1;
            if n >= lower && (cur.dim() == 0 || is_stably_trivial(&comp)) {
                upper = n;
                method = UpperMethod::UniversalIteration(w);
                break;
            }
        }
    }
    if lower > upper {
        return Err(Error::Inconclusive(format!(
            "certified lower bound {lower} exceeds upper bound {upper}"
        )));
    }
    Ok(LengthBounds { lower, lower_witness, upper, upper_method: method, module: m.clone() })
}

/// Default window: twice the socle length of kG.
#[must_use]
pub fn default_window(m: &GModule) -> u32 {
    let reg = free_module(m.group(), m.field(), 1);
    u32::try_from(2 * socle_length(&reg)).expect("small")
}

/// Default iteration cap: the socle length of kG.
#[must_use]
pub fn default_nmax(m: &GModule) -> usize {
    socle_length(&free_module(m.group(), m.field(), 1))
}

/// `n`-fold iterated universal window ghost out of `m`, composed.
#[must_use]
pub fn iterated_universal_ghost(m: &GModule, w: u32, n: usize) -> GMap {
    let mut cur = m.clone();
    let mut comp = GMap::identity(m);
    for _ in 0..n {
        let ug = universal_window_ghost(&cur, w);
        comp = comp.then(&ug.phi);
        cur = ug.u;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::Field;
    use crate::groups::{FiniteGroup, GroupExpr, KgElem};
    use crate::modules::{sub_or_quotient, Which};
    use crate::stable::factors_through_first;
    use std::sync::Arc;

    fn cyc(n: usize, p: u32) -> (Arc<FiniteGroup>, Field) {
        (FiniteGroup::build(&GroupExpr::Cyclic(n)).unwrap(), Field::new(p).unwrap())
    }

    fn m_n(g: &Arc<FiniteGroup>, f: Field, n: usize) -> GModule {
        let r = GModule::regular(g, f).unwrap();
        let rad = radical_series(&r)[n].clone();
        sub_or_quotient(&r, rad.basis(), Which::Quotient).unwrap().0
    }

    #[test]
    fn trivial_module_has_length_one() {
        let (g, f) = cyc(4, 2);
        let k = GModule::trivial(&g, f).unwrap();
        let b = ghost_length_bounds(&k, 2, 4, &[]).unwrap();
        assert_eq!((b.lower, b.upper), (1, 1));
    }

    #[test]
    fn universal_ghost_over_c2_is_trivial() {
        let (g, f) = cyc(2, 2);
        let k = GModule::trivial(&g, f).unwrap();
        let ug = universal_window_ghost(&k, 1);
        assert!(is_stably_trivial(&ug.phi));
        let z = GModule::zero(&g, f);
        assert_eq!(universal_window_ghost(&z, 1).u.dim(), 0);
    }

    #[test]
    fn multiplication_by_g_minus_one_is_a_window_ghost() {
        let (g, f) = cyc(9, 3);
        let m = m_n(&g, f, 4);
        let x = m.algebra_action(&KgElem::minus_one(f, 9, 1));
        let map = GMap::new(&m, &m, x).unwrap();
        assert!(is_window_ghost(&map, 4));
        assert!(!is_window_ghost(&GMap::identity(&m), 0));
        assert_eq!(soc_rad_check(&map).unwrap(), (true, true));
    }

    #[test]
    fn universal_ghost_matches_g_minus_one_over_c9() {
        let (g, f) = cyc(9, 3);
        let m = m_n(&g, f, 4);
        let x = GMap::new(&m, &m, m.algebra_action(&KgElem::minus_one(f, 9, 1))).unwrap();
        let full = universal_window_ghost_with(&m, 2, SourceMode::FullBasis);
        let gen = universal_window_ghost(&m, 2);
        for ug in [&full, &gen] {
            assert!(is_window_ghost(&ug.phi, 2));
            assert!(factors_through_first(&x, &ug.phi));
            assert!(factors_through_first(&ug.phi, &x));
        }
        assert!(gen.source.dim() <= full.source.dim());
        assert!(!is_stably_trivial(&x));
    }

    #[test]
    fn bounds_for_m4_over_c9() {
        let (g, f) = cyc(9, 3);
        let m = m_n(&g, f, 4);
        let x = GMap::new(&m, &m, m.algebra_action(&KgElem::minus_one(f, 9, 1))).unwrap();
        let c = GhostCertificate::by_theorem(x, "central element minus one");
        let witness = GhostCertificate::composite(vec![c.clone(), c.clone(), c]);
        let b = ghost_length_bounds(&m, 4, 9, &[witness]).unwrap();
        assert_eq!((b.lower, b.upper), (4, 4));
    }

    #[test]
    fn uncertified_witness_rejected() {
        let (g, f) = cyc(3, 3);
        let k = GModule::trivial(&g, f).unwrap();
        let w = GhostCertificate { kind: CertKind::ByWindow(1), map: GMap::zero(&k, &k), notes: String::new() };
        assert_eq!(ghost_length_bounds(&k, 1, 2, &[w]).unwrap_err(), Error::NotCertified);
    }
}
