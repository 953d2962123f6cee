use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::{combine, find_isomorphism, hom_space};
use super::{submodule, GMap, GModule};
use crate::fplinalg::{FpMatrix, RowSpace};

/// One indecomposable piece with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: GModule,
    pub incl: GMap,
    pub proj: GMap,
    /// True when indecomposability was proved rather than sampled.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    /// True when every summand is certified indecomposable.
    #[must_use]
    pub fn certified(&self) -> bool {
        self.summands.iter().all(|s| s.certified)
    }

    #[must_use]
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.module.dim()).collect()
    }

    /// Isomorphism classes with multiplicities, in order of first appearance.
    #[must_use]
    pub fn grouped(&self) -> Vec<(GModule, usize)> {
        let mut out: Vec<(GModule, usize)> = Vec::new();
        for s in &self.summands {
            match out.iter_mut().find(|(m, _)| find_isomorphism(m, &s.module).is_some()) {
                Some(entry) => entry.1 += 1,
                None => out.push((s.module.clone(), 1)),
            }
        }
        out
    }
}

/// Default number of random endomorphisms tried per piece.
pub const DEFAULT_TRIALS: usize = 64;
const EXHAUSTIVE_ENDS: u64 = 6561;

/// Splits `m` into indecomposables by Fitting decompositions of random endomorphisms.
#[must_use]
pub fn decompose(m: &GModule, seed: u64) -> Decomposition {
    decompose_with(m, seed, DEFAULT_TRIALS)
}

#[must_use]
pub fn decompose_with(m: &GModule, seed: u64, trials: usize) -> Decomposition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if m.dim() == 0 {
        return Decomposition { summands: out };
    }
    let mut queue = vec![(m.clone(), GMap::identity(m), GMap::identity(m))];
    while let Some((piece, incl, proj)) = queue.pop() {
        let ends = hom_space(&piece, &piece);
        let split = if ends.len() <= 1 {
            None
        } else {
            fitting_split(&piece, &ends, trials, &mut rng)
        };
        match split {
            Some([(a, ia, pa), (b, ib, pb)]) => {
                queue.push((b, ib.then(&incl), proj.then(&pb)));
                queue.push((a, ia.then(&incl), proj.then(&pa)));
            }
            None => {
                let certified = ends.len() <= 1 || exhaustively_local(&piece, &ends);
                out.push(Summand { module: piece, incl, proj, certified });
            }
        }
    }
    Decomposition { summands: out }
}

type Piece = (GModule, GMap, GMap);

fn fitting_split(m: &GModule, ends: &[GMap], trials: usize, rng: &mut ChaCha8Rng) -> Option<[Piece; 2]> {
    let p = m.p();
    // basis elements first: they split sums of non-isomorphic pieces cheaply
    for e in ends {
        if let Some(s) = split_along(m, e.mat()) {
            return Some(s);
        }
    }
    for _ in 0..trials {
        let coeffs: Vec<u8> = (0..ends.len()).map(|_| rng.gen_range(0..p) as u8).collect();
        let e = combine(m, m, ends, &coeffs);
        if let Some(s) = split_along(m, e.mat()) {
            return Some(s);
        }
    }
    None
}

/// `M = ker(e^d) ⊕ im(e^d)` when both parts are non-zero.
pub(crate) fn split_along(m: &GModule, e: &FpMatrix) -> Option<[Piece; 2]> {
    let d = m.dim();
    let mut pw = e.clone();
    let mut rank = pw.rank();
    loop {
        let next = pw.mul(&pw);
        let r = next.rank();
        pw = next;
        if r == rank {
            break;
        }
        rank = r;
    }
    if rank == 0 || rank == d {
        return None;
    }
    let ker = RowSpace::span(&pw.kernel_basis());
    let im = RowSpace::span(&pw);
    Some(split_into(m, &ker, &im))
}

/// The two pieces of `M = A ⊕ B` for complementary invariant subspaces.
pub(crate) fn split_into(m: &GModule, a: &RowSpace, b: &RowSpace) -> [Piece; 2] {
    let f = m.field();
    let (ma, ia) = submodule(m, a);
    let (mb, ib) = submodule(m, b);
    let stacked = FpMatrix::vstack(f, m.dim(), &[a.basis(), b.basis()]);
    let t = stacked.inverse().expect("complementary subspaces");
    let ka = a.dim();
    let pa_cols: Vec<usize> = (0..ka).collect();
    let pb_cols: Vec<usize> = (ka..m.dim()).collect();
    let pa = GMap::new_unchecked(m, &ma, t.select_cols(&pa_cols));
    let pb = GMap::new_unchecked(m, &mb, t.select_cols(&pb_cols));
    [(ma, ia, pa), (mb, ib, pb)]
}

/// Every endomorphism is nilpotent or invertible, checked over the whole
/// endomorphism space when it is small enough.
fn exhaustively_local(m: &GModule, ends: &[GMap]) -> bool {
    let p = u64::from(m.p());
    let h = ends.len();
    let Some(_) = (0..h).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&x| x <= EXHAUSTIVE_ENDS)) else {
        return false;
    };
    let mut coeffs = vec![0u8; h];
    loop {
        let mut k = 0;
        loop {
            if k == h {
                return true;
            }
            coeffs[k] += 1;
            if u32::from(coeffs[k]) < m.p() {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
        let e = combine(m, m, ends, &coeffs);
        if e.rank() != m.dim() && !e.mat().is_nilpotent() {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::Field;
    use crate::groups::{FiniteGroup, GroupExpr};
    use crate::modules::{direct_sum, restrict};

    #[test]
    fn two_trivials() {
        let g = FiniteGroup::build(&GroupExpr::Cyclic(3)).unwrap();
        let f = Field::new(3).unwrap();
        let k = GModule::trivial(&g, f).unwrap();
        let s = direct_sum(&g, f, &[k.clone(), k.clone()]).unwrap().module;
        let d = decompose(&s, 1);
        assert_eq!(d.dims(), vec![1, 1]);
        assert!(d.certified());
        let grouped = d.grouped();
        assert_eq!(grouped.len(), 1);
        assert_eq!(grouped[0].1, 2);
    }

    #[test]
    fn restricted_regular_is_free() {
        let c3 = GroupExpr::Cyclic(3);
        let g = FiniteGroup::build(&GroupExpr::Product(vec![c3.clone(), c3])).unwrap();
        let f = Field::new(3).unwrap();
        let diag = g.mul(g.element("g1").unwrap(), g.element("g2").unwrap());
        let e = g.subgroup(&[diag]).unwrap();
        let r = restrict(&GModule::regular(&g, f).unwrap(), &e).unwrap();
        let d = decompose(&r, 7);
        assert_eq!(d.dims(), vec![3, 3, 3]);
        let reg = GModule::regular(&e.sub, f).unwrap();
        for s in &d.summands {
            assert!(find_isomorphism(&s.module, &reg).is_some());
            assert!(s.incl.then(&s.proj).mat().is_identity());
        }
    }
}
