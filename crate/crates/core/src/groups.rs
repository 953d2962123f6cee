//! Finite p-groups as full multiplication tables.
//!
//! Element 0 is always the identity. Groups are immutable once built and are
//! shared through `Arc`.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fplinalg::Field;

/// A group to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Product(Vec<GroupExpr>),
    /// Dihedral group of the given order `4q`, `q` a power of two.
    Dihedral(usize),
    Quaternion8,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<(String, usize)>,
    labels: Vec<String>,
    prime: Option<u32>,
    cyclic_factors: Option<Vec<usize>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

fn prime_power(n: usize) -> Option<Option<u32>> {
    if n == 1 {
        return Some(None);
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(Some(p as u32))
}

fn from_elements<T: Clone + Eq + Hash>(
    elems: Vec<T>,
    op: impl Fn(&T, &T) -> T,
    gens: Vec<(String, T)>,
    label: impl Fn(&T) -> String,
    cyclic_factors: Option<Vec<usize>>,
) -> Result<FiniteGroup> {
    let index: HashMap<T, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elems.len();
    let mut mul = vec![0; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let c = op(a, b);
            mul[i * n + j] = *index
                .get(&c)
                .ok_or_else(|| Error::InvalidGroup("not closed".into()))?;
        }
    }
    let generators = gens
        .into_iter()
        .map(|(name, e)| (name, index[&e]))
        .collect();
    let labels = elems.iter().map(label).collect();
    FiniteGroup::from_table(mul, generators, labels, cyclic_factors)
}

fn power_label(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

impl FiniteGroup {
    /// Validates a multiplication table whose element 0 is the identity.
    pub fn from_table(
        mul: Vec<usize>,
        generators: Vec<(String, usize)>,
        labels: Vec<String>,
        cyclic_factors: Option<Vec<usize>>,
    ) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 || mul.len() != n * n || mul.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("malformed table".into()));
        }
        let prime = prime_power(n).ok_or(Error::NotPrimePower(n))?;
        for a in 0..n {
            if mul[a] != a || mul[a * n] != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidGroup("not associative".into()));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul[a * n + b] == 0)
                .ok_or_else(|| Error::InvalidGroup("missing inverse".into()))?;
            if mul[inv[a] * n + a] != 0 {
                return Err(Error::InvalidGroup("one-sided inverse".into()));
            }
        }
        let g = FiniteGroup {
            order: n,
            mul,
            inv,
            generators,
            labels,
            prime,
            cyclic_factors,
        };
        let gens: Vec<usize> = g.generators.iter().map(|&(_, e)| e).collect();
        if g.closure(&gens).len() != n {
            return Err(Error::InvalidGroup("generators do not generate".into()));
        }
        Ok(g)
    }

    /// Builds and validates a group from an expression.
    pub fn build(expr: &GroupExpr) -> Result<Arc<FiniteGroup>> {
        Ok(Arc::new(match expr {
            GroupExpr::Cyclic(n) => FiniteGroup::cyclic(*n)?,
            GroupExpr::Product(fs) => {
                let mut flat = Vec::new();
                flatten(fs, &mut flat);
                let parts = flat
                    .iter()
                    .map(FiniteGroup::build)
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::product(&parts)?
            }
            GroupExpr::Dihedral(n) => FiniteGroup::dihedral(*n)?,
            GroupExpr::Quaternion8 => FiniteGroup::quaternion8()?,
        }))
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic(0)".into()));
        }
        let gens = if n > 1 { vec![("g".to_string(), 1)] } else { vec![] };
        from_elements(
            (0..n).collect(),
            |a, b| (a + b) % n,
            gens,
            |&a| if a == 0 { "1".into() } else { power_label("g", a) },
            Some(if n > 1 { vec![n] } else { vec![] }),
        )
    }

    /// Direct product; factor `i` (1-based) contributes generators with suffix `i`.
    pub fn product(factors: &[Arc<FiniteGroup>]) -> Result<FiniteGroup> {
        let orders: Vec<usize> = factors.iter().map(|f| f.order).collect();
        let total: usize = orders.iter().product();
        let decode = |mut i: usize| -> Vec<usize> {
            let mut v = vec![0; orders.len()];
            for k in (0..orders.len()).rev() {
                v[k] = i % orders[k];
                i /= orders[k];
            }
            v
        };
        let elems: Vec<Vec<usize>> = (0..total).map(decode).collect();
        let mut gens = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            for (name, e) in &f.generators {
                let mut v = vec![0; factors.len()];
                v[k] = *e;
                gens.push((format!("{name}{}", k + 1), v));
            }
        }
        let cyclic = factors
            .iter()
            .map(|f| f.cyclic_factors.as_ref().filter(|c| c.len() <= 1).cloned())
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect());
        from_elements(
            elems,
            |a, b| {
                a.iter()
                    .zip(b)
                    .zip(factors)
                    .map(|((&x, &y), f)| f.mul(x, y))
                    .collect()
            },
            gens,
            |v| {
                let parts: Vec<String> = v
                    .iter()
                    .zip(factors)
                    .enumerate()
                    .filter(|(_, (&x, _))| x != 0)
                    .map(|(k, (&x, f))| format!("({})_{}", f.labels[x], k + 1))
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("")
                }
            },
            cyclic,
        )
    }

    /// Dihedral group of order `n = 4q` generated by involutions `x`, `y`.
    ///
    /// Elements are `g^a` and `g^a x` with `g = xy` of order `2q`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n < 4 || n % 4 != 0 || !(n / 4).is_power_of_two() {
            return Err(Error::InvalidGroup(format!(
                "dihedral({n}): order must be 4q with q a power of 2"
            )));
        }
        let m = n / 2;
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|b| (0..m).map(move |a| (a, b))).collect();
        // (g^a x^b)(g^c x^d) = g^(a + (-1)^b c) x^(b+d), using x g x = g^-1
        let op = move |&(a, b): &(usize, usize), &(c, d): &(usize, usize)| {
            let c2 = if b == 1 { (m - c) % m } else { c };
            ((a + c2) % m, (b + d) % 2)
        };
        // y = x·g, so that x·y = g
        let y = op(&(0, 1), &(1, 0));
        from_elements(
            elems,
            op,
            vec![("x".into(), (0, 1)), ("y".into(), y)],
            |&(a, b)| {
                let g = if a == 0 { String::new() } else { power_label("(xy)", a) };
                match (g.is_empty(), b) {
                    (true, 0) => "1".into(),
                    (_, 0) => g,
                    _ => format!("{g}x"),
                }
            },
            None,
        )
    }

    /// Quaternion group with generators `i`, `j`; `ε = i²` is central.
    pub fn quaternion8() -> Result<FiniteGroup> {
        // units 1, i, j, k = ij with a sign bit; table of unit products as (sign, unit)
        const T: [[(u8, u8); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let elems: Vec<(u8, u8)> = (0..2).flat_map(|s| (0..4).map(move |u| (s, u))).collect();
        from_elements(
            elems,
            |&(s, u), &(t, v)| {
                let (r, w) = T[u as usize][v as usize];
                ((s + t + r) % 2, w)
            },
            vec![("i".into(), (0, 1)), ("j".into(), (0, 2))],
            |&(s, u)| {
                let unit = ["1", "i", "j", "ij"][u as usize];
                match (s, u) {
                    (0, _) => unit.into(),
                    (_, 0) => "ε".into(),
                    _ => format!("ε{unit}"),
                }
            },
            None,
        )
    }

    #[inline]
    #[must_use]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    #[must_use]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    #[must_use]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    #[must_use]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    #[must_use]
    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    #[must_use]
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    #[must_use]
    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    #[must_use]
    pub fn generator_elements(&self) -> Vec<usize> {
        self.generators.iter().map(|&(_, e)| e).collect()
    }

    /// Looks up a generator by name, or any element by its label.
    #[must_use]
    pub fn element(&self, name: &str) -> Option<usize> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, e)| e)
            .or_else(|| self.labels.iter().position(|l| l == name))
    }

    #[must_use]
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[must_use]
    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// The prime dividing the order (`None` for the trivial group).
    #[must_use]
    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    /// Orders of the cyclic factors when the group was built as a product of cyclic groups.
    #[must_use]
    pub fn cyclic_factors(&self) -> Option<&[usize]> {
        self.cyclic_factors.as_deref()
    }

    #[must_use]
    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| self.is_central(a))
    }

    #[must_use]
    pub fn is_central(&self, x: usize) -> bool {
        (0..self.order).all(|a| self.mul(a, x) == self.mul(x, a))
    }

    #[must_use]
    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&x| self.is_central(x)).collect()
    }

    /// Sorted list of the elements of the subgroup generated by `gens`.
    #[must_use]
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &s in gens {
                let b = self.mul(a, s);
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        (0..self.order).filter(|&a| seen[a]).collect()
    }

    /// Subgroup generated by `gens`, with smallest-index left-coset representatives.
    pub fn subgroup(self: &Arc<Self>, gens: &[usize]) -> Result<SubgroupEmbedding> {
        let elems = self.closure(gens);
        let n = elems.len();
        let mut pos = vec![usize::MAX; self.order];
        for (k, &e) in elems.iter().enumerate() {
            pos[e] = k;
        }
        let mut mul = vec![0; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                mul[i * n + j] = pos[self.mul(a, b)];
            }
        }
        let mut sub_gens: Vec<(String, usize)> = Vec::new();
        for &g in gens {
            if g != 0 && !sub_gens.iter().any(|&(_, e)| e == pos[g]) {
                sub_gens.push((self.labels[g].clone(), pos[g]));
            }
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let sub = FiniteGroup::from_table(mul, sub_gens, labels, None)?;
        let mut coset_of = vec![usize::MAX; self.order];
        let mut coset_reps = Vec::new();
        for a in 0..self.order {
            if coset_of[a] == usize::MAX {
                let c = coset_reps.len();
                coset_reps.push(a);
                for &h in &elems {
                    coset_of[self.mul(a, h)] = c;
                }
            }
        }
        Ok(SubgroupEmbedding {
            sub: Arc::new(sub),
            ambient: Arc::clone(self),
            map: elems,
            coset_reps,
        })
    }

    #[must_use]
    pub fn is_normal(&self, e: &SubgroupEmbedding) -> bool {
        let mut inside = vec![false; self.order];
        for &h in &e.map {
            inside[h] = true;
        }
        (0..self.order).all(|g| {
            e.map
                .iter()
                .all(|&h| inside[self.mul(self.mul(g, h), self.inv(g))])
        })
    }

    /// Quotient by a normal subgroup, with the projection as an element map.
    pub fn quotient(&self, normal: &SubgroupEmbedding) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
        if *normal.ambient != *self {
            return Err(Error::Mismatch);
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let reps = &normal.coset_reps;
        let mut proj = vec![usize::MAX; self.order];
        for (c, &r) in reps.iter().enumerate() {
            for &h in &normal.map {
                proj[self.mul(r, h)] = c;
            }
        }
        let m = reps.len();
        let mut mul = vec![0; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = proj[self.mul(a, b)];
            }
        }
        let mut gens: Vec<(String, usize)> = Vec::new();
        for (name, e) in &self.generators {
            let q = proj[*e];
            if q != 0 && !gens.iter().any(|&(_, x)| x == q) {
                gens.push((name.clone(), q));
            }
        }
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        let q = FiniteGroup::from_table(mul, gens, labels, None)?;
        Ok((Arc::new(q), proj))
    }
}

fn flatten(fs: &[GroupExpr], out: &mut Vec<GroupExpr>) {
    for f in fs {
        match f {
            GroupExpr::Product(inner) => flatten(inner, out),
            other => out.push(other.clone()),
        }
    }
}

/// A subgroup with its inclusion into the ambient group.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub sub: Arc<FiniteGroup>,
    pub ambient: Arc<FiniteGroup>,
    /// `map[i]` is the ambient index of subgroup element `i` (sorted, identity first).
    pub map: Vec<usize>,
    /// Smallest-index representative of each left coset `gH`, identity first.
    pub coset_reps: Vec<usize>,
}

impl SubgroupEmbedding {
    #[must_use]
    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    /// Subgroup index of an ambient element, if it lies in the subgroup.
    #[must_use]
    pub fn preimage(&self, g: usize) -> Option<usize> {
        self.map.binary_search(&g).ok()
    }

    #[must_use]
    pub fn contains(&self, g: usize) -> bool {
        self.preimage(g).is_some()
    }

    /// Right coset representatives, the inverses of the left ones, so that
    /// `G` is the disjoint union of the cosets `H t`.
    #[must_use]
    pub fn right_coset_reps(&self) -> Vec<usize> {
        self.coset_reps.iter().map(|&r| self.ambient.inv(r)).collect()
    }
}

/// An element of the group algebra kG, as a coefficient vector over the elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgElem {
    pub field: Field,
    pub coeffs: Vec<u8>,
}

impl KgElem {
    #[must_use]
    pub fn zero(field: Field, order: usize) -> KgElem {
        KgElem {
            field,
            coeffs: vec![0; order],
        }
    }

    #[must_use]
    pub fn basis(field: Field, order: usize, g: usize) -> KgElem {
        let mut e = KgElem::zero(field, order);
        e.coeffs[g] = 1;
        e
    }

    /// `g − 1`.
    #[must_use]
    pub fn minus_one(field: Field, order: usize, g: usize) -> KgElem {
        let mut e = KgElem::basis(field, order, g);
        e.coeffs[0] = field.sub(e.coeffs[0], 1);
        e
    }

    /// Sum of all group elements.
    #[must_use]
    pub fn norm(field: Field, order: usize) -> KgElem {
        KgElem {
            field,
            coeffs: vec![1; order],
        }
    }

    #[must_use]
    pub fn add(&self, other: &KgElem) -> KgElem {
        let mut c = self.coeffs.clone();
        self.field.axpy(&mut c, &other.coeffs, 1);
        KgElem { field: self.field, coeffs: c }
    }

    #[must_use]
    pub fn scaled(&self, f: u8) -> KgElem {
        let mut c = self.coeffs.clone();
        self.field.scale(&mut c, f);
        KgElem { field: self.field, coeffs: c }
    }

    #[must_use]
    pub fn mul(&self, other: &KgElem, g: &FiniteGroup) -> KgElem {
        let f = self.field;
        let mut out = vec![0u8; g.order()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y != 0 {
                    let ab = g.mul(a, b);
                    out[ab] = f.add(out[ab], f.mul(x, y));
                }
            }
        }
        KgElem { field: f, coeffs: out }
    }

    #[must_use]
    pub fn pow(&self, e: usize, g: &FiniteGroup) -> KgElem {
        (0..e).fold(KgElem::basis(self.field, g.order(), 0), |acc, _| acc.mul(self, g))
    }

    /// Image under the antipode `g ↦ g⁻¹`, an anti-automorphism of kG.
    #[must_use]
    pub fn antipode(&self, g: &FiniteGroup) -> KgElem {
        let mut out = vec![0u8; g.order()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            out[g.inv(a)] = x;
        }
        KgElem { field: self.field, coeffs: out }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.prime(), None);
    }

    #[test]
    fn rejects_non_prime_power() {
        assert_eq!(FiniteGroup::cyclic(6).unwrap_err(), Error::NotPrimePower(6));
        assert!(FiniteGroup::dihedral(12).is_err());
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion8().unwrap();
        let i = q.element("i").unwrap();
        let j = q.element("j").unwrap();
        let eps = q.mul(i, i);
        assert_eq!(q.mul(j, j), eps);
        let ij = q.mul(i, j);
        assert_eq!(q.mul(ij, ij), eps);
        assert_eq!(q.mul(eps, eps), 0);
        assert_eq!(q.center(), vec![0, eps]);
    }

    #[test]
    fn dihedral_relations() {
        for q in [1usize, 2, 4] {
            let d = FiniteGroup::dihedral(4 * q).unwrap();
            let x = d.element("x").unwrap();
            let y = d.element("y").unwrap();
            assert_eq!(d.element_order(x), 2);
            assert_eq!(d.element_order(y), 2);
            let xy = d.mul(x, y);
            let yx = d.mul(y, x);
            assert_eq!(d.pow(xy, q), d.pow(yx, q));
            assert_eq!(d.element_order(xy), 2 * q);
        }
        let d16 = FiniteGroup::dihedral(16).unwrap();
        let xy = d16.mul(d16.element("x").unwrap(), d16.element("y").unwrap());
        assert_eq!(d16.center(), vec![0, d16.pow(xy, 4)]);
    }

    #[test]
    fn product_generators_are_suffixed() {
        let g = FiniteGroup::build(&GroupExpr::Product(vec![
            GroupExpr::Cyclic(3),
            GroupExpr::Cyclic(3),
        ]))
        .unwrap();
        let names: Vec<&str> = g.generators().iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["g1", "g2"]);
        assert_eq!(g.cyclic_factors(), Some(&[3, 3][..]));
        let s = g.subgroup(&[g.element("g1").unwrap()]).unwrap();
        assert_eq!(s.sub.order(), 3);
        assert_eq!(s.index(), 3);
        assert_eq!(s.coset_reps[0], 0);
    }

    #[test]
    fn quotients() {
        let q = Arc::new(FiniteGroup::quaternion8().unwrap());
        let i = q.element("i").unwrap();
        let z = q.subgroup(&[q.mul(i, i)]).unwrap();
        let (v, proj) = q.quotient(&z).unwrap();
        assert_eq!(v.order(), 4);
        assert!((1..4).all(|a| v.element_order(a) == 2));
        assert_eq!(proj.len(), 8);

        let d = Arc::new(FiniteGroup::dihedral(16).unwrap());
        let xy = d.mul(d.element("x").unwrap(), d.element("y").unwrap());
        let c = d.subgroup(&[d.pow(xy, 4)]).unwrap();
        let (d8, _) = d.quotient(&c).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.center().len(), 2);
        assert!(!d8.is_abelian());

        let triv = q.subgroup(&[]).unwrap();
        let (copy, _) = q.quotient(&triv).unwrap();
        assert_eq!(copy.order(), 8);

        let x = d.element("x").unwrap();
        let non_normal = d.subgroup(&[x]).unwrap();
        assert_eq!(d.quotient(&non_normal).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn dihedral_rotation_subgroup() {
        let d = Arc::new(FiniteGroup::dihedral(8).unwrap());
        let xy = d.mul(d.element("x").unwrap(), d.element("y").unwrap());
        let c = d.subgroup(&[xy]).unwrap();
        assert_eq!(c.sub.order(), 4);
        assert!(d.is_normal(&c));
    }

    #[test]
    fn antipode_reverses_products() {
        let q = FiniteGroup::quaternion8().unwrap();
        let f = Field::new(2).unwrap();
        let a = KgElem::minus_one(f, 8, q.element("i").unwrap());
        let b = KgElem::minus_one(f, 8, q.element("j").unwrap());
        assert_eq!(a.mul(&b, &q).antipode(&q), b.antipode(&q).mul(&a.antipode(&q), &q));
    }
}
