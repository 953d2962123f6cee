//! String and band modules over `Λ = k⟨X,Y⟩/(X², Y²)`.
//!
//! A word `l_1 ⋯ l_n` lays out basis vectors `z_0 … z_n` along the schema
//! `z_{i−1} ← z_i`: a direct letter at position `i` means `z_i·L = z_{i−1}`
//! and an inverse letter means `z_{i−1}·L = z_i`, where `L` is `X` for the
//! letter `a` and `Y` for `b`. Matrices act on row vectors.
//!
//! Modules are produced over Λ first. `to_group_module` then sends the first
//! group generator to `1 + X` and the second to `1 + Y`, which gives
//! `kD_{4q}`-modules in characteristic 2 and, for words killed by `XY` and
//! `YX`, modules over a rank-two abelian group.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fplinalg::{Field, FpMatrix};
use crate::groups::FiniteGroup;
use crate::modules::{GMap, GModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub family: Family,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter { family: Family::A, inverse: false };
    pub const B: Letter = Letter { family: Family::B, inverse: false };
    pub const A_INV: Letter = Letter { family: Family::A, inverse: true };
    pub const B_INV: Letter = Letter { family: Family::B, inverse: true };

    #[must_use]
    pub fn inv(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }

    #[must_use]
    pub fn swapped(self) -> Letter {
        let family = match self.family {
            Family::A => Family::B,
            Family::B => Family::A,
        };
        Letter { family, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'a',
            Family::B => 'b',
        };
        if self.inverse {
            write!(f, "{c}^-1")
        } else {
            write!(f, "{c}")
        }
    }
}

/// A word whose letters alternate between the `a` and `b` families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    #[must_use]
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if let Some(i) = letters.windows(2).position(|w| w[0].family == w[1].family) {
            return Err(Error::Word(format!("letters {} and {} do not alternate", i + 1, i + 2)));
        }
        Ok(Word { letters })
    }

    #[must_use]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed order with every letter inverted.
    #[must_use]
    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `l_k ⋯ l_n l_1 ⋯ l_{k−1}`, starting at index `k`.
    #[must_use]
    pub fn rotated(&self, k: usize) -> Word {
        let n = self.len();
        Word { letters: (0..n).map(|i| self.letters[(i + k) % n]).collect() }
    }

    /// Concatenation; fails if the join breaks alternation.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut l = self.letters.clone();
        l.extend_from_slice(&other.letters);
        Word::new(l)
    }

    pub fn pow(&self, e: usize) -> Result<Word> {
        let mut l = Vec::with_capacity(self.len() * e);
        for _ in 0..e {
            l.extend_from_slice(&self.letters);
        }
        Word::new(l)
    }

    /// Word with `a` and `b` exchanged.
    #[must_use]
    pub fn swapped(&self) -> Word {
        Word { letters: self.letters.iter().map(|l| l.swapped()).collect() }
    }

    #[must_use]
    pub fn is_proper_power(&self) -> bool {
        let n = self.len();
        (1..n).filter(|d| n % d == 0).any(|d| (d..n).all(|i| self.letters[i] == self.letters[i - d]))
    }

    /// Longest runs of consecutive direct and of consecutive inverse letters.
    /// Cyclic runs wrap around; an unbounded cyclic run reports `usize::MAX`.
    #[must_use]
    pub fn max_runs(&self, cyclic: bool) -> (usize, usize) {
        let n = self.len();
        let mut best = (0, 0);
        if n == 0 {
            return best;
        }
        if cyclic && self.letters.iter().all(|l| l.inverse == self.letters[0].inverse) {
            return if self.letters[0].inverse { (0, usize::MAX) } else { (usize::MAX, 0) };
        }
        let span = if cyclic { 2 * n } else { n };
        let mut run = 0;
        for i in 0..span {
            let l = self.letters[i % n];
            let same = i > 0 && self.letters[(i - 1) % n].inverse == l.inverse;
            run = if same { run + 1 } else { 1 };
            let slot = if l.inverse { &mut best.1 } else { &mut best.0 };
            *slot = (*slot).max(run.min(n));
        }
        best
    }

    fn key(&self) -> Vec<u8> {
        self.letters.iter().map(|l| (l.family as u8) * 2 + u8::from(l.inverse)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses `ab^-1a^-1`, `ab⁻¹a⁻¹` or the shorthand `aBA` (capitals are inverse
/// letters). `""` and `"1"` are the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() || t == "1" {
        return Ok(Word::empty());
    }
    let chars: Vec<char> = t.chars().collect();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (family, cap) = match chars[i] {
            'a' => (Family::A, false),
            'b' => (Family::B, false),
            'A' => (Family::A, true),
            'B' => (Family::B, true),
            c => return Err(Error::Word(format!("unexpected character '{c}' at {}", i + 1))),
        };
        i += 1;
        let mut inverse = cap;
        let rest: String = chars[i..].iter().collect();
        for suffix in ["^-1", "⁻¹", "^{-1}"] {
            if rest.starts_with(suffix) {
                if cap {
                    return Err(Error::Word("capital letters are already inverse".into()));
                }
                inverse = true;
                i += suffix.chars().count();
                break;
            }
        }
        letters.push(Letter { family, inverse });
    }
    Word::new(letters)
}

/// Matrices of `X` and `Y` on a Λ-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaModule {
    pub x: FpMatrix,
    pub y: FpMatrix,
}

impl LambdaModule {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    #[must_use]
    pub fn field(&self) -> Field {
        self.x.field()
    }

    /// `d` copies of the simple module.
    #[must_use]
    pub fn zeros(field: Field, d: usize) -> LambdaModule {
        LambdaModule { x: FpMatrix::zeros(field, d, d), y: FpMatrix::zeros(field, d, d) }
    }

    fn op_mut(&mut self, family: Family) -> &mut FpMatrix {
        match family {
            Family::A => &mut self.x,
            Family::B => &mut self.y,
        }
    }

    /// `X² = Y² = 0`, plus `XY = YX = 0` when `lambda_prime` is set.
    #[must_use]
    pub fn satisfies(&self, lambda_prime: bool) -> bool {
        let ok = self.x.mul(&self.x).is_zero() && self.y.mul(&self.y).is_zero();
        ok && (!lambda_prime || (self.x.mul(&self.y).is_zero() && self.y.mul(&self.x).is_zero()))
    }

    /// `V ⊗ L`: every vertex replaced by a copy of `V`, edges by identities.
    #[must_use]
    pub fn tensor_identity(&self, d: usize) -> LambdaModule {
        let i = FpMatrix::identity(self.field(), d);
        LambdaModule { x: self.x.kronecker(&i), y: self.y.kronecker(&i) }
    }

    /// The group module with generator 0 acting as `1 + X` and generator 1 as `1 + Y`.
    pub fn to_group_module(&self, group: &Arc<FiniteGroup>) -> Result<GModule> {
        if group.generators().len() != 2 {
            return Err(Error::InvalidGroup("word modules need a group with two generators".into()));
        }
        let gens = [self.x.add(&FpMatrix::identity(self.field(), self.dim())), self.y.add(&FpMatrix::identity(self.field(), self.dim()))];
        GModule::from_generators(Arc::clone(group), self.field(), &gens)
    }
}

/// Linear map between two Λ-modules given as a matrix, checked to commute with `X` and `Y`.
fn check_lambda_map(a: &LambdaModule, b: &LambdaModule, m: &FpMatrix) -> bool {
    a.x.mul(m) == m.mul(&b.x) && a.y.mul(m) == m.mul(&b.y)
}

/// `M(C)`, of dimension `|C| + 1`.
#[must_use]
pub fn string_module(c: &Word, field: Field) -> LambdaModule {
    let n = c.len();
    let mut m = LambdaModule::zeros(field, n + 1);
    for (i, l) in c.letters().iter().enumerate() {
        // letter l_{i+1} joins z_i and z_{i+1}
        let (from, to) = if l.inverse { (i, i + 1) } else { (i + 1, i) };
        m.op_mut(l.family).set(from, to, 1);
    }
    m
}

/// A primitive cyclic word with an automorphism `φ` of a space `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandDescriptor {
    word: Word,
    phi: FpMatrix,
    /// True when `φ` was built from a power of an irreducible polynomial.
    pub phi_certified: bool,
}

impl BandDescriptor {
    /// A band with explicitly given `φ`; indecomposability of `φ` is trusted.
    pub fn new(word: Word, phi: FpMatrix) -> Result<BandDescriptor> {
        let n = word.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::Word("band words have even non-zero length".into()));
        }
        if word.is_proper_power() {
            return Err(Error::Word(format!("{word} is a proper power")));
        }
        if phi.rows() != phi.cols() || phi.rows() == 0 || phi.inverse().is_none() {
            return Err(Error::Word("band automorphism must be an invertible square matrix".into()));
        }
        Ok(BandDescriptor { word, phi, phi_certified: false })
    }

    /// `φ = id` on a one-dimensional space.
    pub fn with_identity(word: Word, field: Field) -> Result<BandDescriptor> {
        let mut d = BandDescriptor::new(word, FpMatrix::identity(field, 1))?;
        d.phi_certified = true;
        Ok(d)
    }

    /// `φ` the companion matrix of a monic polynomial, given by its
    /// coefficients from the constant term up, leading 1 omitted.
    pub fn companion(word: Word, field: Field, coeffs: &[u8]) -> Result<BandDescriptor> {
        let m = coeffs.len();
        if m == 0 {
            return Err(Error::Word("polynomial of degree 0".into()));
        }
        let mut poly: Vec<u8> = coeffs.iter().map(|&c| field.reduce(u32::from(c))).collect();
        poly.push(1);
        if !is_primary(field, &poly) {
            return Err(Error::Word("polynomial is not a power of an irreducible".into()));
        }
        let mut phi = FpMatrix::zeros(field, m, m);
        for i in 0..m - 1 {
            phi.set(i, i + 1, 1);
        }
        for (j, &c) in poly[..m].iter().enumerate() {
            phi.set(m - 1, j, field.neg(c));
        }
        let mut d = BandDescriptor::new(word, phi)?;
        d.phi_certified = true;
        Ok(d)
    }

    #[must_use]
    pub fn word(&self) -> &Word {
        &self.word
    }

    #[must_use]
    pub fn phi(&self) -> &FpMatrix {
        &self.phi
    }
}

/// `M(C, φ)`, of dimension `|C|·dim V`; `φ` labels the edge of `l_1`.
#[must_use]
pub fn band_module(d: &BandDescriptor) -> LambdaModule {
    let f = d.phi.field();
    let v = d.phi.rows();
    let n = d.word.len();
    let mut m = LambdaModule::zeros(f, n * v);
    let id = FpMatrix::identity(f, v);
    for (i, l) in d.word.letters().iter().enumerate() {
        let (lo, hi) = (i, (i + 1) % n);
        let (from, to) = if l.inverse { (lo, hi) } else { (hi, lo) };
        let blk = if i == 0 { &d.phi } else { &id };
        m.op_mut(l.family).set_block(from * v, to * v, blk);
    }
    m
}

/// Canonical representative of `{C, C⁻¹}`.
#[must_use]
pub fn canonical_string(c: &Word) -> Word {
    let inv = c.inverse();
    if inv.key().cmp(&c.key()) == Ordering::Less {
        inv
    } else {
        c.clone()
    }
}

/// Canonical form of a band under rotation and inversion, `φ ↦ φ⁻¹` on inversion.
#[must_use]
pub fn canonical_band(d: &BandDescriptor) -> BandDescriptor {
    let n = d.word.len();
    let inv = d.word.inverse();
    let mut best: Option<(Vec<u8>, Word, bool)> = None;
    for (w, flipped) in [(&d.word, false), (&inv, true)] {
        for k in 0..n {
            let r = w.rotated(k);
            let key = r.key();
            if best.as_ref().map_or(true, |b| key < b.0) {
                best = Some((key, r, flipped));
            }
        }
    }
    let (_, word, flipped) = best.expect("non-empty band");
    let phi = if flipped { d.phi.inverse().expect("invertible") } else { d.phi.clone() };
    BandDescriptor { word, phi, phi_certified: d.phi_certified }
}

/// Every word of length at most `n`, the empty word first.
#[must_use]
pub fn words_up_to(n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            let fams: &[Family] = match w.last() {
                None => &[Family::A, Family::B],
                Some(l) if l.family == Family::A => &[Family::B],
                Some(_) => &[Family::A],
            };
            for &family in fams {
                for inverse in [false, true] {
                    let mut v = w.clone();
                    v.push(Letter { family, inverse });
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|v| Word { letters: v.clone() }));
        layer = next;
    }
    out
}

/// Condition for a string module over `kD_{4q}`: no run of `2q` direct or inverse letters.
#[must_use]
pub fn string_admissible(c: &Word, q: usize) -> bool {
    let (d, i) = c.max_runs(false);
    d < 2 * q && i < 2 * q
}

/// Whether a band module is killed by `(XY)^q − (YX)^q`.
///
/// Runs are measured on the cyclic word, which covers every power of it.
#[must_use]
pub fn band_admissible(d: &BandDescriptor, q: usize) -> bool {
    let (dr, ir) = d.word.max_runs(true);
    if dr < 2 * q && ir < 2 * q {
        return true;
    }
    is_projective_band(d, q)
}

/// The band `(ab)^q(ba)^{−q}` with `φ = id`, the projective indecomposable of `kD_{4q}`.
#[must_use]
pub fn is_projective_band(d: &BandDescriptor, q: usize) -> bool {
    if !(d.phi.rows() == 1 && d.phi.is_identity()) {
        return false;
    }
    let Ok(p) = projective_band_word(q) else { return false };
    let c = canonical_band(&BandDescriptor { word: p, phi: d.phi.clone(), phi_certified: true });
    canonical_band(d).word == c.word
}

/// `(ab)^q (ba)^{−q}`.
pub fn projective_band_word(q: usize) -> Result<Word> {
    let ab = Word::new(vec![Letter::A, Letter::B])?;
    let ba_inv = Word::new(vec![Letter::B, Letter::A])?.inverse();
    ab.pow(q)?.concat(&ba_inv.pow(q)?)
}

/// `(ab)^{q/2} (ba)^{−q/2}`, whose band module is `k` induced from the centre of `D_{4q}`.
pub fn central_induced_band_word(q: usize) -> Result<Word> {
    if q < 2 || q % 2 == 1 {
        return Err(Error::Word("q must be even".into()));
    }
    projective_band_word(q / 2)
}

fn check_dihedral(group: &FiniteGroup, q: usize) -> Result<()> {
    let ok = group.order() == 4 * q
        && !group.is_abelian()
        && group.element("x").is_some()
        && group.element("y").is_some();
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGroup(format!("expected the dihedral group of order {}", 4 * q)))
    }
}

/// `M(C)` as a `kD_{4q}`-module.
pub fn string_module_dihedral(c: &Word, group: &Arc<FiniteGroup>, field: Field) -> Result<GModule> {
    let q = group.order() / 4;
    check_dihedral(group, q)?;
    if !string_admissible(c, q) {
        return Err(Error::Word(format!("{c} contains (ab)^{q}, (ba)^{q} or an inverse")));
    }
    string_module(c, field).to_group_module(group)
}

/// `M(C, φ)` as a `kD_{4q}`-module.
pub fn band_module_dihedral(d: &BandDescriptor, group: &Arc<FiniteGroup>) -> Result<GModule> {
    let q = group.order() / 4;
    check_dihedral(group, q)?;
    if !band_admissible(d, q) {
        return Err(Error::Word(format!("a power of {} contains (ab)^{q}, (ba)^{q} or an inverse", d.word)));
    }
    band_module(d).to_group_module(group)
}

/// The exact sequence `0 → M(C) → ⊕ M(L_i) → ⊕ k → 0` obtained by cutting
/// `C` at every peak `ab⁻¹` and `ba⁻¹`.
#[derive(Clone, Debug)]
pub struct PeakSplit {
    pub word: Word,
    pub pieces: Vec<Word>,
    /// Vertex index in `M(C)` of each cut.
    pub peaks: Vec<usize>,
    pub module: LambdaModule,
    pub split: LambdaModule,
    /// One simple module per peak.
    pub cokernel: LambdaModule,
    /// `M(C) → ⊕ M(L_i)`: a peak `z` goes to `z_end(L_i) + z_start(L_{i+1})`.
    pub incl: FpMatrix,
    /// `⊕ M(L_i) → ⊕ k`: the two copies of a cut vertex go to `e_i` and `−e_i`.
    pub proj: FpMatrix,
}

#[must_use]
pub fn split_peaks(c: &Word, field: Field) -> PeakSplit {
    let l = c.letters();
    let peaks: Vec<usize> = (1..l.len()).filter(|&j| !l[j - 1].inverse && l[j].inverse).collect();
    let mut pieces = Vec::new();
    let mut start = 0;
    for &j in &peaks {
        pieces.push(Word { letters: l[start..j].to_vec() });
        start = j;
    }
    pieces.push(Word { letters: l[start..].to_vec() });
    let module = string_module(c, field);
    let parts: Vec<LambdaModule> = pieces.iter().map(|w| string_module(w, field)).collect();
    let total: usize = parts.iter().map(LambdaModule::dim).sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.dim();
            Some(o)
        })
        .collect();
    let split = LambdaModule {
        x: FpMatrix::block_diag(field, &parts.iter().map(|p| &p.x).collect::<Vec<_>>()),
        y: FpMatrix::block_diag(field, &parts.iter().map(|p| &p.y).collect::<Vec<_>>()),
    };
    let mut incl = FpMatrix::zeros(field, c.len() + 1, total);
    let mut proj = FpMatrix::zeros(field, total, peaks.len());
    let mut piece = 0;
    for v in 0..=c.len() {
        let local = v - if piece == 0 { 0 } else { peaks[piece - 1] };
        if peaks.get(piece) == Some(&v) {
            let end = offsets[piece] + local;
            let next = offsets[piece + 1];
            incl.set(v, end, 1);
            incl.set(v, next, 1);
            proj.set(end, piece, 1);
            proj.set(next, piece, field.neg(1));
            piece += 1;
        } else {
            incl.set(v, offsets[piece] + local, 1);
        }
    }
    let cokernel = LambdaModule::zeros(field, peaks.len());
    PeakSplit { word: c.clone(), pieces, peaks, module, split, cokernel, incl, proj }
}

/// The exact sequence `0 → M(C, φ) → M(C) ⊗ V → V → 0` for a band rotated
/// so that it reads `a⁻¹ ⋯ b` or `b⁻¹ ⋯ a`.
#[derive(Clone, Debug)]
pub struct BandSplit {
    pub band: BandDescriptor,
    pub module: LambdaModule,
    pub strings: LambdaModule,
    pub cokernel: LambdaModule,
    pub incl: FpMatrix,
    pub proj: FpMatrix,
}

pub fn band_to_strings(d: &BandDescriptor) -> Result<BandSplit> {
    let n = d.word.len();
    let l = d.word.letters();
    // rotate so the word starts with an inverse letter and ends with a direct one
    let k = (0..n)
        .find(|&k| l[k].inverse && !l[(k + n - 1) % n].inverse)
        .ok_or_else(|| Error::Word("band word has letters of one direction only".into()))?;
    let band = BandDescriptor { word: d.word.rotated(k), phi: d.phi.clone(), phi_certified: d.phi_certified };
    let f = d.phi.field();
    let v = d.phi.rows();
    let module = band_module(&band);
    let strings = string_module(&band.word, f).tensor_identity(v);
    let mut incl = FpMatrix::zeros(f, n * v, (n + 1) * v);
    let id = FpMatrix::identity(f, v);
    incl.set_block(0, 0, &band.phi);
    incl.set_block(0, n * v, &id);
    for j in 1..n {
        incl.set_block(j * v, j * v, &id);
    }
    let mut proj = FpMatrix::zeros(f, (n + 1) * v, v);
    proj.set_block(0, 0, &band.phi.inverse().expect("invertible"));
    proj.set_block(n * v, 0, &id.neg());
    let cokernel = LambdaModule::zeros(f, v);
    Ok(BandSplit { band, module, strings, cokernel, incl, proj })
}

/// Checks `0 → A →i B →p C → 0` at matrix level: equivariance, injectivity,
/// surjectivity and `im i = ker p`.
#[must_use]
pub fn is_exact_lambda(a: &LambdaModule, b: &LambdaModule, c: &LambdaModule, i: &FpMatrix, p: &FpMatrix) -> bool {
    check_lambda_map(a, b, i)
        && check_lambda_map(b, c, p)
        && i.rank() == a.dim()
        && p.rank() == c.dim()
        && i.mul(p).is_zero()
        && a.dim() + c.dim() == b.dim()
}

/// The same sequence as group modules, with maps validated.
pub fn sequence_to_group(
    group: &Arc<FiniteGroup>,
    a: &LambdaModule,
    b: &LambdaModule,
    c: &LambdaModule,
    i: &FpMatrix,
    p: &FpMatrix,
) -> Result<(GMap, GMap)> {
    let (ga, gb, gc) = (a.to_group_module(group)?, b.to_group_module(group)?, c.to_group_module(group)?);
    Ok((GMap::new(&ga, &gb, i.clone())?, GMap::new(&gb, &gc, p.clone())?))
}

/// Smallest-degree monic factor by trial division, then checks the polynomial is a power of it.
fn is_primary(f: Field, poly: &[u8]) -> bool {
    let deg = poly.len() - 1;
    if poly[0] == 0 {
        return false;
    }
    let Some(fac) = (1..=deg).find_map(|d| monic_polys(f, d).into_iter().find(|m| poly_rem(f, poly, m).iter().all(|&c| c == 0)))
    else {
        return false;
    };
    let mut cur = poly.to_vec();
    while cur.len() > 1 {
        match poly_div_exact(f, &cur, &fac) {
            Some(q) => cur = q,
            None => return false,
        }
    }
    true
}

fn monic_polys(f: Field, d: usize) -> Vec<Vec<u8>> {
    let p = f.p() as usize;
    let count = p.pow(u32::try_from(d).expect("small degree"));
    (0..count)
        .map(|mut k| {
            let mut c: Vec<u8> = (0..d)
                .map(|_| {
                    let r = (k % p) as u8;
                    k /= p;
                    r
                })
                .collect();
            c.push(1);
            c
        })
        .collect()
}

fn poly_rem(f: Field, a: &[u8], m: &[u8]) -> Vec<u8> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().expect("non-empty");
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
        }
        r.pop();
    }
    r
}

fn poly_div_exact(f: Field, a: &[u8], m: &[u8]) -> Option<Vec<u8>> {
    let dm = m.len() - 1;
    if a.len() <= dm {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![0u8; a.len() - dm];
    while r.len() > dm {
        let lead = *r.last().expect("non-empty");
        let shift = r.len() - 1 - dm;
        q[shift] = lead;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupExpr;
    use crate::modules::{is_isomorphic, radical_length};

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn parsing() {
        assert!(parse_word("").unwrap().is_empty());
        let w = parse_word("ab⁻¹a⁻¹").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(parse_word("ab^-1a^-1").unwrap(), w);
        assert_eq!(parse_word("aBA").unwrap(), w);
        assert_eq!(w.to_string(), "ab^-1a^-1");
        assert!(parse_word("aa").is_err());
        assert!(parse_word("ac").is_err());
    }

    #[test]
    fn displayed_matrices() {
        let m = string_module(&parse_word("ab^-1a^-1").unwrap(), f2());
        let x = FpMatrix::from_rows(f2(), &[vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
        let y = FpMatrix::from_rows(f2(), &[vec![0, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]]);
        assert_eq!(m.x, x);
        assert_eq!(m.y, y);
        assert!(m.satisfies(false));
    }

    #[test]
    fn admissibility() {
        let ab = parse_word("ab").unwrap();
        let a = parse_word("a").unwrap();
        for q in [2, 4] {
            assert!(string_admissible(&ab.pow(q - 1).unwrap().concat(&a).unwrap(), q));
            assert!(!string_admissible(&ab.pow(q).unwrap(), q));
        }
        let d8 = FiniteGroup::build(&GroupExpr::Dihedral(8)).unwrap();
        assert!(string_module_dihedral(&ab.pow(2).unwrap(), &d8, f2()).is_err());
        assert!(string_module_dihedral(&parse_word("aba").unwrap(), &d8, f2()).is_ok());
    }

    #[test]
    fn band_identities() {
        for q in [2usize, 4] {
            let g = FiniteGroup::build(&GroupExpr::Dihedral(4 * q)).unwrap();
            let reg = GModule::regular(&g, f2()).unwrap();
            let pb = BandDescriptor::with_identity(projective_band_word(q).unwrap(), f2()).unwrap();
            let m = band_module_dihedral(&pb, &g).unwrap();
            assert_eq!(radical_length(&m), 2 * q + 1);
            assert!(is_isomorphic(&m, &reg));
            let nb = BandDescriptor::with_identity(central_induced_band_word(q).unwrap(), f2()).unwrap();
            let n = band_module_dihedral(&nb, &g).unwrap();
            assert_eq!(radical_length(&n), q + 1);
        }
    }

    #[test]
    fn band_rejections() {
        let w = parse_word("abab").unwrap();
        assert!(BandDescriptor::with_identity(w, f2()).is_err());
        assert!(BandDescriptor::with_identity(parse_word("aba").unwrap(), f2()).is_err());
        let d8 = FiniteGroup::build(&GroupExpr::Dihedral(8)).unwrap();
        let all_direct = BandDescriptor::with_identity(parse_word("ab").unwrap(), f2()).unwrap();
        assert!(band_module_dihedral(&all_direct, &d8).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_string(&parse_word("ab^-1").unwrap()), canonical_string(&parse_word("ba^-1").unwrap()));
        assert_eq!(canonical_string(&Word::empty()), Word::empty());
        let w = parse_word("aba^-1b^-1").unwrap();
        let d = BandDescriptor::with_identity(w.clone(), f2()).unwrap();
        let r = BandDescriptor::with_identity(w.rotated(1), f2()).unwrap();
        assert_eq!(canonical_band(&d), canonical_band(&r));
    }

    #[test]
    fn small_lambda_prime_band() {
        let f3 = Field::new(3).unwrap();
        let d = BandDescriptor::with_identity(parse_word("b^-1a").unwrap(), f3).unwrap();
        let m = band_module(&d);
        assert_eq!(m.dim(), 2);
        assert!(m.satisfies(true));
        let g = FiniteGroup::build(&GroupExpr::Product(vec![GroupExpr::Cyclic(3), GroupExpr::Cyclic(3)])).unwrap();
        assert!(m.to_group_module(&g).is_ok());
    }

    #[test]
    fn peaks_split_exactly() {
        let c = parse_word("ab^-1a^-1bab^-1").unwrap();
        let s = split_peaks(&c, f2());
        assert_eq!(s.peaks, vec![1, 5]);
        let ks = LambdaModule::zeros(f2(), s.peaks.len());
        assert!(is_exact_lambda(&s.module, &s.split, &ks, &s.incl, &s.proj));
        for p in &s.pieces {
            assert!(!p.letters().windows(2).any(|w| !w[0].inverse && w[1].inverse));
        }
        let plain = split_peaks(&parse_word("a^-1b^-1ab").unwrap(), f2());
        assert_eq!(plain.pieces.len(), 1);
        // signs matter once -1 != 1
        for p in [3, 5] {
            let s = split_peaks(&c, Field::new(p).unwrap());
            assert!(is_exact_lambda(&s.module, &s.split, &s.cokernel, &s.incl, &s.proj));
        }
    }

    #[test]
    fn band_to_strings_is_exact() {
        let d8 = FiniteGroup::build(&GroupExpr::Dihedral(8)).unwrap();
        let kv = BandDescriptor::with_identity(parse_word("a^-1b^-1ab").unwrap(), f2()).unwrap();
        let s = band_to_strings(&kv).unwrap();
        assert!(is_exact_lambda(&s.module, &s.strings, &s.cokernel, &s.incl, &s.proj));
        assert!(sequence_to_group(&d8, &s.module, &s.strings, &s.cokernel, &s.incl, &s.proj).is_ok());
        let f3 = Field::new(3).unwrap();
        let tw = BandDescriptor::companion(parse_word("ab^-1").unwrap(), f3, &[1, 0]).unwrap();
        let s = band_to_strings(&tw).unwrap();
        assert!(is_exact_lambda(&s.module, &s.strings, &s.cokernel, &s.incl, &s.proj));
    }

    #[test]
    fn companion_primary_check() {
        let f3 = Field::new(3).unwrap();
        let w = parse_word("ab^-1").unwrap();
        // t^2 + 1 is irreducible over F_3
        assert!(BandDescriptor::companion(w.clone(), f3, &[1, 0]).is_ok());
        // t^2 - 1 = (t - 1)(t + 1)
        assert!(BandDescriptor::companion(w.clone(), f3, &[2, 0]).is_err());
        // (t - 1)^2 = t^2 + t + 1 over F_3
        assert!(BandDescriptor::companion(w, f3, &[1, 1]).is_ok());
    }
}
