//! Auslander-Reiten triangles `Ω²M → H(M) → M → ΩM` in the stable category.
//!
//! The stable endomorphism algebra of a small module is handled by brute
//! force: every element is tested for nilpotency, which certifies locality
//! and yields the radical at once.

use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, RowSpace};
use crate::modules::{direct_sum, sub_or_quotient, GMap, GModule, Which};
use crate::stable::{
    factors_through_last, is_stably_trivial, projective_cover, stable_hom, strip_free, CoverData, StableHom,
};

/// Largest stable endomorphism algebra searched exhaustively.
pub const MAX_ENUMERATED: u64 = 1 << 16;

/// The radical `J` of the stable endomorphism algebra of a module with local stable End.
#[derive(Clone, Debug)]
pub struct StableEndRadical {
    pub module: GModule,
    pub end: StableHom,
    /// `J` in the coordinates of `end`.
    pub radical: RowSpace,
    /// Representatives of a basis of `J`.
    pub radical_maps: Vec<GMap>,
    /// `dim End − dim J`, the degree of the residue field over the prime field.
    pub residue_degree: usize,
}

impl StableEndRadical {
    /// Whether a stable endomorphism lies in `J`.
    #[must_use]
    pub fn contains(&self, f: &GMap) -> bool {
        self.radical.contains(&self.end.coords(f))
    }

    /// Coordinates of `f` in `End / J`.
    #[must_use]
    pub fn residue(&self, f: &GMap) -> Vec<u8> {
        let c = self.end.coords(f);
        let q = self.radical.quotient_map();
        FpMatrix::from_data(f.dom().field(), 1, c.len(), c).mul(&q).row(0).to_vec()
    }
}

/// Matrices of `x ↦ x·b_i` on the stable End algebra, with products read as "first, then".
fn right_regular(end: &StableHom) -> Vec<FpMatrix> {
    let s = end.dim();
    let f = end.basis.first().map(|b| b.dom().field());
    end.basis
        .iter()
        .map(|bi| {
            let mut m = FpMatrix::zeros(f.expect("non-empty"), s, s);
            for (j, bj) in end.basis.iter().enumerate() {
                m.row_mut(j).copy_from_slice(&end.coords(&bj.then(bi)));
            }
            m
        })
        .collect()
}

/// Radical of the stable End algebra, certified by enumerating every element.
///
/// Fails with `NotCertified` when the algebra is not local (the module is
/// decomposable in the stable category) or too large to enumerate.
pub fn stable_end_radical(m: &GModule) -> Result<StableEndRadical> {
    if m.free_rank() > 0 {
        return Err(Error::Precondition("module has projective summands".into()));
    }
    let end = stable_hom(m, m);
    let s = end.dim();
    if s == 0 {
        return Err(Error::Precondition("module is projective".into()));
    }
    let f = m.field();
    let p = u64::from(f.p());
    let total = (0..s).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&x| x <= MAX_ENUMERATED));
    if total.is_none() {
        return Err(Error::NotCertified);
    }
    let regs = right_regular(&end);
    let mut nil = FpMatrix::zeros(f, 0, s);
    let mut count_nil = 0u64;
    let mut c = vec![0u8; s];
    loop {
        let mut r = FpMatrix::zeros(f, s, s);
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                r.add_scaled(&regs[k], ck);
            }
        }
        if r.is_nilpotent() {
            count_nil += 1;
            nil.push_row(&c);
        } else if r.inverse().is_none() {
            // neither nilpotent nor invertible: End is not local
            return Err(Error::NotCertified);
        }
        let mut k = 0;
        loop {
            if k == s {
                break;
            }
            c[k] += 1;
            if u32::from(c[k]) < f.p() {
                break;
            }
            c[k] = 0;
            k += 1;
        }
        if k == s {
            break;
        }
    }
    let radical = RowSpace::span(&nil);
    // the nilpotent elements must be exactly a subspace
    if p.pow(u32::try_from(radical.dim()).expect("small")) != count_nil {
        return Err(Error::NotCertified);
    }
    let radical_maps = (0..radical.dim()).map(|i| end.map_from_coords(radical.basis().row(i))).collect();
    let residue_degree = s - radical.dim();
    Ok(StableEndRadical { module: m.clone(), end, radical, radical_maps, residue_degree })
}

/// `γ : M → ΩM` with `f` then `γ` stably trivial for every `f ∈ J`.
#[derive(Clone, Debug)]
pub struct AlmostZero {
    pub gamma: GMap,
    pub cover: CoverData,
    pub radical: StableEndRadical,
    /// All solutions, as stable coordinates in `[M, ΩM]`.
    pub solutions: RowSpace,
    pub target: StableHom,
}

pub fn almost_zero_map(m: &GModule) -> Result<AlmostZero> {
    let radical = stable_end_radical(m)?;
    let cover = projective_cover(m);
    let om = &cover.kernel;
    let target = stable_hom(m, om);
    let t = target.dim();
    let f = m.field();
    if t == 0 {
        return Err(Error::Precondition("no stable maps to the syzygy".into()));
    }
    // coefficient vectors c with Σ c_i (j then h_i) ≡ 0 for every basis element j of J
    let width = radical.radical_maps.len() * t;
    let mut sys = FpMatrix::zeros(f, t, width);
    for (i, h) in target.basis.iter().enumerate() {
        for (a, j) in radical.radical_maps.iter().enumerate() {
            let c = target.coords(&j.then(h));
            sys.row_mut(i)[a * t..(a + 1) * t].copy_from_slice(&c);
        }
    }
    let solutions = RowSpace::span(&sys.kernel_basis());
    if solutions.dim() == 0 {
        return Err(Error::Inconclusive("no map is killed by the radical".into()));
    }
    let gamma = target.map_from_coords(solutions.basis().row(0));
    Ok(AlmostZero { gamma, cover, radical, solutions, target })
}

/// The A-R triangle of `M` with the heart realised as a module.
#[derive(Clone, Debug)]
pub struct ARTriangle {
    pub m: GModule,
    pub gamma: GMap,
    pub omega: GModule,
    pub omega2: GModule,
    /// The pullback `E` of `P → ΩM` along `γ`, before stripping.
    pub extension: GModule,
    pub ext_alpha: GMap,
    pub ext_beta: GMap,
    /// `H(M)`, the projective-free part of `E`.
    pub heart: GModule,
    pub alpha: GMap,
    pub beta: GMap,
    pub radical: StableEndRadical,
}

pub fn heart(m: &GModule) -> Result<ARTriangle> {
    let az = almost_zero_map(m)?;
    let om = az.cover.kernel.clone();
    let c2 = projective_cover(&om);
    let g = m.group();
    let f = m.field();
    let sum = direct_sum(g, f, &[c2.cover.clone(), m.clone()])?;
    // E = ker(P ⊕ M → ΩM), (x, v) ↦ π(x) − γ(v)
    let diff = c2.surj.mat().clone();
    let stacked = FpMatrix::vstack(f, om.dim(), &[&diff, &az.gamma.mat().neg()]);
    let to_om = GMap::new(&sum.module, &om, stacked)?;
    let ker = to_om.kernel();
    let (ext, incl) = sub_or_quotient(&sum.module, ker.basis(), Which::Sub)?;
    let ext_beta = incl.then(&sum.projections[1]);
    // Ω²M sits inside P as the kernel of π
    let into_sum = c2.incl.then(&sum.injections[0]);
    let coords: Vec<Vec<u8>> = (0..into_sum.mat().rows()).map(|i| ker.coords(into_sum.mat().row(i))).collect();
    let rows: Vec<&[u8]> = coords.iter().map(Vec::as_slice).collect();
    let ext_alpha = GMap::new(&c2.kernel, &ext, FpMatrix::from_row_slices(f, ext.dim(), &rows))?;
    let st = strip_free(&ext);
    let beta = st.incl.then(&ext_beta);
    let alpha = ext_alpha.then(&st.proj);
    Ok(ARTriangle {
        m: m.clone(),
        gamma: az.gamma,
        omega: om,
        omega2: c2.kernel,
        extension: ext,
        ext_alpha,
        ext_beta,
        heart: st.module,
        alpha,
        beta,
        radical: az.radical,
    })
}

/// Whether `β : Y → Z` is right almost split against maps out of the testers.
///
/// `Z` must have local stable End. `β` itself must not be split epic, and a
/// stably zero `β` out of a non-projective `Y` is rejected because it is not
/// right minimal. Non-split-epic maps `T → Z` form the subspace of `φ` with
/// `ψ` then `φ` in `J` for all `ψ : Z → T`; each basis element of that
/// subspace must factor through `β`.
pub fn check_right_almost_split(beta: &GMap, testers: &[GModule]) -> Result<bool> {
    let z = beta.cod();
    let rad = stable_end_radical(z)?;
    if is_split_epi(beta, &rad) {
        return Ok(false);
    }
    if is_stably_trivial(beta) && !strip_free(beta.dom()).module.is_zero() {
        return Ok(false);
    }
    let f = z.field();
    for t in testers {
        let into = stable_hom(t, z);
        if into.dim() == 0 {
            continue;
        }
        let out = stable_hom(z, t);
        let d = rad.residue_degree;
        let width = out.dim() * d;
        let mut m = FpMatrix::zeros(f, into.dim(), width);
        for (i, phi) in into.basis.iter().enumerate() {
            for (j, psi) in out.basis.iter().enumerate() {
                let r = rad.residue(&psi.then(phi));
                m.row_mut(i)[j * d..(j + 1) * d].copy_from_slice(&r);
            }
        }
        let non_split = m.kernel_basis();
        for k in 0..non_split.rows() {
            let phi = into.map_from_coords(non_split.row(k));
            if !factors_through_last(&phi, beta) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn is_split_epi(beta: &GMap, rad: &StableEndRadical) -> bool {
    let back = stable_hom(beta.cod(), beta.dom());
    back.basis.iter().any(|psi| !rad.contains(&psi.then(beta)))
}
