//! Bounds on the ghost number of a group algebra.
//!
//! The lower bound is always a certified witness composite that is checked to
//! be stably non-trivial. Upper bounds come from the radical length of kG, by
//! computation over every indecomposable for cyclic groups, or from a theorem
//! when the group belongs to a family with a known answer. Theorem-cited upper
//! bounds are labelled as such.

use std::fmt;

use crate::constructions::{central_mult_ghost, cyclic_module, ghost_number_witness, GroupWitness};
use crate::error::{Error, Result};
use crate::fplinalg::Field;
use crate::ghosts::{certified_lower_bound, ghost_length_bounds, GhostCertificate, LengthBounds};
use crate::groups::{FiniteGroup, GroupExpr};
use crate::modules::{free_module, is_isomorphic, radical_length};
use crate::stable::omega;

/// Where an upper bound on the ghost number comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupUpper {
    /// Projective-free modules have radical length below that of kG.
    RadicalLength,
    /// Maximum over the indecomposables `M_1 … M_{n−1}` of a cyclic group.
    CyclicExhaustive,
    /// Cited from a theorem; not recomputed.
    Theorem(String),
}

impl fmt::Display for GroupUpper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupUpper::RadicalLength => write!(f, "radical length of kG minus one"),
            GroupUpper::CyclicExhaustive => write!(f, "bounds on every indecomposable"),
            GroupUpper::Theorem(t) => write!(f, "theorem: {t}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupBounds {
    pub lower: usize,
    pub witness: GroupWitness,
    pub upper: usize,
    pub upper_method: GroupUpper,
    /// Per-module bounds behind a cyclic exhaustive upper bound.
    pub modules: Vec<LengthBounds>,
}

impl GroupBounds {
    #[must_use]
    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }
}

pub const DIHEDRAL_THEOREM: &str = "the ghost number of kD_4q is q+1";
pub const RANK_TWO_THEOREM: &str = "the generating number of k(C_p^r x C_p^s) is at most p^r+p^s-3 when 2 < p^r <= p^s";

/// Cyclic groups up to this order run the universal-ghost iteration on every
/// indecomposable; larger ones use `Ω M_n ≅ M_{N−n}` and the socle bound.
pub const CYCLIC_ITERATION_LIMIT: usize = 9;

/// Certified lower and upper bounds on the ghost number of `kG`.
pub fn ghost_number_bounds(expr: &GroupExpr, field: Field, window: u32, nmax: usize) -> Result<GroupBounds> {
    let g = FiniteGroup::build(expr)?;
    if g.prime() != Some(field.p()) {
        return Err(Error::Precondition(format!(
            "group of order {} has no modular representations in characteristic {}",
            g.order(),
            field.p()
        )));
    }
    let witness = ghost_number_witness(expr, field)?;
    let certs: Vec<_> = witness.cert.iter().cloned().collect();
    let (lower, _) = certified_lower_bound(&witness.module, &certs)?;

    let generic = radical_length(&free_module(&g, field, 1)) - 1;
    let mut upper = generic;
    let mut method = GroupUpper::RadicalLength;
    let mut modules = Vec::new();
    let mut consider = |u: usize, m: GroupUpper| {
        if u < upper {
            upper = u;
            method = m;
        }
    };
    match expr {
        GroupExpr::Cyclic(n) => {
            let (u, ms) = cyclic_upper(&g, field, *n, window, nmax)?;
            modules = ms;
            consider(u, GroupUpper::CyclicExhaustive);
        }
        GroupExpr::Dihedral(order) => consider(order / 4 + 1, GroupUpper::Theorem(DIHEDRAL_THEOREM.into())),
        _ => {
            if let Some(o) = g.cyclic_factors() {
                if o.len() == 2 && o[0].min(o[1]) > 2 {
                    consider(o[0] + o[1] - 3, GroupUpper::Theorem(RANK_TWO_THEOREM.into()));
                }
            }
        }
    }
    if lower > upper {
        return Err(Error::Inconclusive(format!("lower bound {lower} exceeds upper bound {upper}")));
    }
    Ok(GroupBounds { lower, witness, upper, upper_method: method, modules })
}

fn cyclic_upper(
    g: &std::sync::Arc<FiniteGroup>,
    field: Field,
    n: usize,
    window: u32,
    nmax: usize,
) -> Result<(usize, Vec<LengthBounds>)> {
    let mut best = 0;
    let mut out: Vec<LengthBounds> = Vec::new();
    let gen = g.generator_elements()[0];
    for d in 1..n {
        let m = cyclic_module(g, field, d)?;
        // (g−1)^k on M_d stays stably non-trivial for k < min(d, n−d)
        let k = d.min(n - d) - 1;
        let witnesses: Vec<GhostCertificate> = if k == 0 {
            Vec::new()
        } else {
            let c = central_mult_ghost(&m, gen)?.cert;
            vec![GhostCertificate::composite(vec![c; k])]
        };
        let b = if n <= CYCLIC_ITERATION_LIMIT || 2 * d <= n {
            ghost_length_bounds(&m, window, nmax, &witnesses)?
        } else {
            // Ω is a triangulated autoequivalence, so it preserves ghost length
            let partner = cyclic_module(g, field, n - d)?;
            if !is_isomorphic(&omega(&m, 1), &partner) {
                return Err(Error::Inconclusive(format!("Ω M_{d} is not M_{}", n - d)));
            }
            let mut b = out.get(n - d - 1).cloned().ok_or_else(|| Error::Inconclusive("missing partner".into()))?;
            let (lower, w) = certified_lower_bound(&m, &witnesses)?;
            b.module = m;
            b.lower = lower;
            b.lower_witness = w;
            b
        };
        best = best.max(b.upper);
        out.push(b);
    }
    Ok((best, out))
}
