//! The line-oriented run configuration.
//!
//! ```text
//! # comments run to the end of the line
//! seed 7
//! window 8
//! group C(3) x C(3)
//! prime 3
//! let M = abelian(3, 1)
//! check series M claim=3
//! check ghost_bounds M window=4 nmax=4 claim=2..2
//! check classification_row claim=3 cite="..."
//! ```
//!
//! Each `group` line opens a section; `let` and `check` lines belong to the
//! most recent section. `seed`, `window` and `nmax` are global.

use std::collections::BTreeSet;
use std::fmt;

use stmod_core::GroupExpr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ConfigError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line: pos.line, col: pos.col, msg: msg.into() })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Caret,
    Star,
    Times,
    DotDot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Times => write!(f, "`×`"),
            Tok::DotDot => write!(f, "`..`"),
        }
    }
}

fn lex(line: &str, lineno: usize) -> Result<Vec<(Tok, Pos)>, ConfigError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: lineno, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            '×' => Some(Tok::Times),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c == '.' && chars.get(i + 1) == Some(&'.') {
            out.push((Tok::DotDot, pos));
            i += 2;
        } else if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' {
                j += 1;
            }
            if j == chars.len() {
                return err(pos, "unterminated string");
            }
            out.push((Tok::Str(chars[start..j].iter().collect()), pos));
            i = j + 1;
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            let n = text.parse().map_err(|_| ConfigError { line: lineno, col: i + 1, msg: "integer out of range".into() })?;
            out.push((Tok::Int(n), pos));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            out.push((Tok::Ident(chars[i..j].iter().collect()), pos));
            i = j;
        } else {
            return err(pos, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

/// An expression on the right of `let` or inside a check argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(i64),
    Str(String),
    /// A bare name: a module binding, a builtin like `trivial`, or a group element.
    Name(String),
    /// A group element written as a product of generator powers, e.g. `x*y^2`.
    Elem(Vec<(String, i64)>),
    Call(String, Vec<Arg>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub key: Option<String>,
    pub value: Expr,
}

/// A claimed interval; `hi = None` is unbounded above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{h}"),
            Some(h) => write!(f, "[{}, {h}]", self.lo),
            None => write!(f, ">= {}", self.lo),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Series { module: String },
    GhostBounds { module: String, window: Option<u32>, nmax: Option<usize> },
    Ar { module: String, testers: Testers },
    WordIdentities,
    ClassificationRow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Testers {
    /// The module, its heart summands and the trivial module.
    Heart,
    /// Every indecomposable `M_1 … M_{n−1}` of a cyclic group.
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub claim: Option<Claim>,
    pub citation: Option<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Let { name: String, expr: Expr, pos: Pos },
    Check(Check),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub group: GroupExpr,
    pub prime: u32,
    pub items: Vec<Item>,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub window: Option<u32>,
    pub nmax: Option<usize>,
    pub sections: Vec<Section>,
}

impl RunConfig {
    #[must_use]
    pub fn check_count(&self) -> usize {
        self.sections.iter().flat_map(|s| &s.items).filter(|i| matches!(i, Item::Check(_))).count()
    }
}

struct Cursor {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ConfigError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.unexpected(&t.to_string())
        }
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ConfigError> {
        match self.toks.get(self.i) {
            Some((t, p)) => err(*p, format!("expected {wanted}, found {t}")),
            None => err(self.end, format!("expected {wanted} before end of line")),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ConfigError> {
        match self.next() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            _ => {
                self.i -= 1;
                self.unexpected("a name")
            }
        }
    }

    fn int(&mut self) -> Result<(i64, Pos), ConfigError> {
        match self.next() {
            Some((Tok::Int(n), p)) => Ok((n, p)),
            _ => {
                self.i -= 1;
                self.unexpected("an integer")
            }
        }
    }

    fn positive(&mut self) -> Result<(usize, Pos), ConfigError> {
        let (n, p) = self.int()?;
        if n <= 0 {
            return err(p, "expected a positive integer");
        }
        usize::try_from(n).map(|n| (n, p)).or_else(|_| err(p, "integer out of range"))
    }

    fn done(&self) -> Result<(), ConfigError> {
        if self.i < self.toks.len() {
            self.unexpected("end of line")
        } else {
            Ok(())
        }
    }
}

fn group_call(name: &str, args: &[GroupExpr], ints: &[usize], pos: Pos) -> Result<GroupExpr, ConfigError> {
    let one = |what: &str| -> Result<usize, ConfigError> {
        match (ints, args.is_empty()) {
            ([n], true) => Ok(*n),
            _ => err(pos, format!("{what} takes one integer")),
        }
    };
    Ok(match name {
        "C" | "cyclic" => GroupExpr::Cyclic(one("cyclic")?),
        "D" | "dihedral" => GroupExpr::Dihedral(one("dihedral")?),
        "product" => {
            if !ints.is_empty() || args.len() < 2 {
                return err(pos, "product takes at least two groups");
            }
            GroupExpr::Product(args.to_vec())
        }
        _ => return err(pos, format!("unknown group constructor `{name}`")),
    })
}

/// A bare group name like `C9`, `D8`, `Q8` or `quaternion8`.
fn group_name(name: &str, pos: Pos) -> Result<GroupExpr, ConfigError> {
    match name {
        "Q8" | "quaternion8" | "quaternion" => return Ok(GroupExpr::Quaternion8),
        _ => {}
    }
    let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
    let n: Option<usize> = digits.parse().ok();
    match (head, n) {
        ("C", Some(n)) => Ok(GroupExpr::Cyclic(n)),
        ("D", Some(n)) => Ok(GroupExpr::Dihedral(n)),
        _ => err(pos, format!("unknown group `{name}`")),
    }
}

fn parse_group(c: &mut Cursor) -> Result<GroupExpr, ConfigError> {
    let mut factors = vec![parse_group_power(c)?];
    loop {
        let is_x = matches!(c.peek(), Some(Tok::Ident(s)) if s == "x");
        if is_x || c.eat(&Tok::Times) {
            if is_x {
                c.next();
            }
            factors.push(parse_group_power(c)?);
        } else {
            break;
        }
    }
    let mut flat = Vec::new();
    for f in factors {
        flat.extend(f);
    }
    Ok(if flat.len() == 1 { flat.pop().expect("one factor") } else { GroupExpr::Product(flat) })
}

fn parse_group_power(c: &mut Cursor) -> Result<Vec<GroupExpr>, ConfigError> {
    let base = parse_group_atom(c)?;
    if c.eat(&Tok::Caret) {
        let (k, _) = c.positive()?;
        return Ok(vec![base; k]);
    }
    Ok(vec![base])
}

fn parse_group_atom(c: &mut Cursor) -> Result<GroupExpr, ConfigError> {
    if c.eat(&Tok::LParen) {
        let g = parse_group(c)?;
        c.expect(&Tok::RParen)?;
        return Ok(g);
    }
    let (name, pos) = c.ident()?;
    if !c.eat(&Tok::LParen) {
        return group_name(&name, pos);
    }
    let mut groups = Vec::new();
    let mut ints = Vec::new();
    if !c.eat(&Tok::RParen) {
        loop {
            if matches!(c.peek(), Some(Tok::Int(_))) {
                ints.push(c.positive()?.0);
            } else {
                groups.push(parse_group(c)?);
            }
            if c.eat(&Tok::RParen) {
                break;
            }
            c.expect(&Tok::Comma)?;
        }
    }
    group_call(&name, &groups, &ints, pos)
}

fn parse_expr(c: &mut Cursor) -> Result<Expr, ConfigError> {
    let pos = c.pos();
    match c.next() {
        Some((Tok::Int(n), _)) => Ok(Expr { kind: ExprKind::Int(n), pos }),
        Some((Tok::Str(s), _)) => Ok(Expr { kind: ExprKind::Str(s), pos }),
        Some((Tok::Ident(name), _)) => {
            if c.eat(&Tok::LParen) {
                let mut args = Vec::new();
                if !c.eat(&Tok::RParen) {
                    loop {
                        args.push(parse_arg(c)?);
                        if c.eat(&Tok::RParen) {
                            break;
                        }
                        c.expect(&Tok::Comma)?;
                    }
                }
                return Ok(Expr { kind: ExprKind::Call(name, args), pos });
            }
            if matches!(c.peek(), Some(Tok::Caret | Tok::Star)) {
                let mut factors = vec![(name, 1)];
                loop {
                    if c.eat(&Tok::Caret) {
                        let (e, _) = c.int()?;
                        factors.last_mut().expect("factor").1 = e;
                    } else if c.eat(&Tok::Star) {
                        factors.push((c.ident()?.0, 1));
                    } else {
                        break;
                    }
                }
                return Ok(Expr { kind: ExprKind::Elem(factors), pos });
            }
            Ok(Expr { kind: ExprKind::Name(name), pos })
        }
        _ => {
            c.i -= 1;
            c.unexpected("an expression")
        }
    }
}

fn parse_arg(c: &mut Cursor) -> Result<Arg, ConfigError> {
    if let (Some(Tok::Ident(k)), Some(Tok::Eq)) = (c.toks.get(c.i).map(|t| &t.0), c.toks.get(c.i + 1).map(|t| &t.0)) {
        let key = k.clone();
        c.i += 2;
        return Ok(Arg { key: Some(key), value: parse_expr(c)? });
    }
    Ok(Arg { key: None, value: parse_expr(c)? })
}

fn parse_claim(c: &mut Cursor) -> Result<Claim, ConfigError> {
    let (lo, p) = c.int()?;
    if lo < 0 {
        return err(p, "claims are non-negative");
    }
    let lo = lo as usize;
    if !c.eat(&Tok::DotDot) {
        return Ok(Claim { lo, hi: Some(lo) });
    }
    if matches!(c.peek(), Some(Tok::Int(_))) {
        let (hi, p) = c.int()?;
        if hi < lo as i64 {
            return err(p, "empty claimed interval");
        }
        return Ok(Claim { lo, hi: Some(hi as usize) });
    }
    Ok(Claim { lo, hi: None })
}

fn parse_check(c: &mut Cursor, pos: Pos, names: &BTreeSet<String>) -> Result<Check, ConfigError> {
    let (kind_name, kpos) = c.ident()?;
    let needs_module = matches!(kind_name.as_str(), "series" | "ghost_bounds" | "ar");
    let module = if needs_module {
        let (m, mpos) = c.ident()?;
        if !names.contains(&m) {
            return err(mpos, format!("unknown module `{m}`"));
        }
        m
    } else {
        String::new()
    };
    let mut claim = None;
    let mut citation = None;
    let mut window = None;
    let mut nmax = None;
    let mut testers = Testers::Heart;
    while c.peek().is_some() {
        let (key, kp) = c.ident()?;
        c.expect(&Tok::Eq)?;
        match key.as_str() {
            "claim" => claim = Some(parse_claim(c)?),
            "cite" => match c.next() {
                Some((Tok::Str(s), _)) => citation = Some(s),
                _ => {
                    c.i -= 1;
                    return c.unexpected("a quoted citation");
                }
            },
            "window" if kind_name == "ghost_bounds" => window = Some(c.positive()?.0 as u32),
            "nmax" if kind_name == "ghost_bounds" => nmax = Some(c.positive()?.0),
            "testers" if kind_name == "ar" => {
                let (t, tp) = c.ident()?;
                testers = match t.as_str() {
                    "heart" => Testers::Heart,
                    "cyclic" => Testers::Cyclic,
                    _ => return err(tp, "testers is `heart` or `cyclic`"),
                };
            }
            _ => return err(kp, format!("unknown option `{key}` for {kind_name}")),
        }
    }
    let kind = match kind_name.as_str() {
        "series" => CheckKind::Series { module },
        "ghost_bounds" => CheckKind::GhostBounds { module, window, nmax },
        "ar" => CheckKind::Ar { module, testers },
        "word_identities" => CheckKind::WordIdentities,
        "classification_row" => CheckKind::ClassificationRow,
        _ => return err(kpos, format!("unknown check `{kind_name}`")),
    };
    if claim.is_some() && matches!(kind, CheckKind::Ar { .. } | CheckKind::WordIdentities) {
        return err(kpos, format!("{kind_name} checks fixed identities and takes no claim"));
    }
    Ok(Check { kind, claim, citation, pos })
}

const RESERVED: &[&str] = &["trivial", "regular"];

/// Parses a whole configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut seen = BTreeSet::new();
    let mut names = BTreeSet::new();
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let toks = lex(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let end = Pos { line: lineno, col: line.chars().count() + 1 };
        let mut c = Cursor { toks, i: 0, end };
        let (kw, pos) = c.ident()?;
        let global = matches!(kw.as_str(), "seed" | "window" | "nmax");
        if global && !seen.insert(kw.clone()) {
            return err(pos, format!("`{kw}` is set twice"));
        }
        match kw.as_str() {
            "seed" => {
                let (n, p) = c.int()?;
                cfg.seed = u64::try_from(n).or_else(|_| err(p, "the seed is non-negative"))?;
            }
            "window" => cfg.window = Some(c.positive()?.0 as u32),
            "nmax" => cfg.nmax = Some(c.positive()?.0),
            "group" => {
                let group = parse_group(&mut c)?;
                let prime = prime_of(&group).map_or_else(|m| err(pos, m), Ok)?;
                cfg.sections.push(Section { group, prime, items: Vec::new(), pos });
                names.clear();
            }
            "prime" | "let" | "check" => {
                let Some(section) = cfg.sections.last_mut() else {
                    return err(pos, format!("`{kw}` before any `group` line"));
                };
                match kw.as_str() {
                    "prime" => {
                        let (p, pp) = c.positive()?;
                        if p as u32 != section.prime {
                            return err(pp, format!("the group is a {}-group", section.prime));
                        }
                    }
                    "let" => {
                        let (name, np) = c.ident()?;
                        if RESERVED.contains(&name.as_str()) {
                            return err(np, format!("`{name}` is reserved"));
                        }
                        c.expect(&Tok::Eq)?;
                        let expr = parse_expr(&mut c)?;
                        check_refs(&expr, &names)?;
                        names.insert(name.clone());
                        section.items.push(Item::Let { name, expr, pos });
                    }
                    _ => {
                        let check = parse_check(&mut c, pos, &names)?;
                        section.items.push(Item::Check(check));
                    }
                }
            }
            _ => return err(pos, format!("unknown statement `{kw}`")),
        }
        c.done()?;
    }
    Ok(cfg)
}

/// Constructors whose first argument is evaluated over a subgroup, so that
/// section bindings cannot be referenced there.
const SUBGROUP_FIRST: &[&str] = &["induce"];

fn check_refs(e: &Expr, names: &BTreeSet<String>) -> Result<(), ConfigError> {
    if let ExprKind::Call(f, args) = &e.kind {
        for (i, a) in args.iter().enumerate() {
            if i == 0 && SUBGROUP_FIRST.contains(&f.as_str()) {
                if let ExprKind::Name(n) = &a.value.kind {
                    if names.contains(n) {
                        return err(a.value.pos, format!("`{n}` lives over the whole group, not the subgroup"));
                    }
                }
                continue;
            }
            check_refs(&a.value, names)?;
        }
    }
    Ok(())
}

/// The prime of a group expression, before the group is built.
pub fn prime_of(g: &GroupExpr) -> Result<u32, String> {
    match g {
        GroupExpr::Cyclic(n) => prime_power(*n),
        GroupExpr::Quaternion8 => Ok(2),
        GroupExpr::Dihedral(n) if *n >= 8 && prime_power(*n)? == 2 => Ok(2),
        GroupExpr::Dihedral(n) => Err(format!("D({n}) needs order 2^k with k >= 3")),
        GroupExpr::Product(fs) => {
            let ps: BTreeSet<u32> = fs.iter().map(prime_of).collect::<Result<_, _>>()?;
            if ps.len() == 1 {
                Ok(*ps.iter().next().expect("one prime"))
            } else {
                Err("factors of a product must share a prime".into())
            }
        }
    }
}

fn prime_power(n: usize) -> Result<u32, String> {
    if n < 2 {
        return Err("the group must be non-trivial".into());
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n >= 2");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 && p < 256 {
        Ok(p as u32)
    } else {
        Err(format!("{n} is not a power of a small prime"))
    }
}

/// `C_9`, `C_3 x C_3`, `D_8`, `Q_8`.
#[must_use]
pub fn group_label(g: &GroupExpr) -> String {
    match g {
        GroupExpr::Cyclic(n) => format!("C_{n}"),
        GroupExpr::Dihedral(n) => format!("D_{n}"),
        GroupExpr::Quaternion8 => "Q_8".into(),
        GroupExpr::Product(fs) => {
            let parts: Vec<String> = fs
                .iter()
                .map(|f| match f {
                    GroupExpr::Product(_) => format!("({})", group_label(f)),
                    _ => group_label(f),
                })
                .collect();
            parts.join(" x ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_group(src: &str) -> GroupExpr {
        parse_config(&format!("group {src}\n")).unwrap().sections[0].group.clone()
    }

    #[test]
    fn group_syntax() {
        let c3 = GroupExpr::Cyclic(3);
        let c33 = GroupExpr::Product(vec![c3.clone(), c3.clone()]);
        assert_eq!(one_group("C(3) x C(3)"), c33);
        assert_eq!(one_group("C3 × C3"), c33);
        assert_eq!(one_group("cyclic(3)^2"), c33);
        assert_eq!(one_group("product(C(3), C3)"), c33);
        assert_eq!(one_group("Q8"), GroupExpr::Quaternion8);
        assert_eq!(one_group("dihedral(16)"), GroupExpr::Dihedral(16));
        assert_eq!(group_label(&one_group("C2^3")), "C_2 x C_2 x C_2");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_config("group C(3)\ncheck series M\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 14));
        let e = parse_config("group C(6)\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_config("let M = trivial\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse_config("group C(4)\nprime 3\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 7));
        let e = parse_config("group C(4)\nlet M = cyclic(2) extra\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 19));
        let e = parse_config("group C(4)\ncheck series trivial\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_config("seed 1\nseed 2\n").is_err());
        assert!(parse_config("group C(4)\nlet s = word(\"ab\n").is_err());
    }

    #[test]
    fn lets_and_checks() {
        let cfg = parse_config(
            "seed 5 # comment\ngroup C(3) x C(3)\nlet M = induce(trivial, g1)\nlet N = tensor(M, dual(M))\n\
             check ghost_bounds N window=4 claim=2..3\ncheck classification_row claim=3.. cite=\"three\"\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.check_count(), 2);
        let Item::Check(ch) = &cfg.sections[0].items[3] else { panic!() };
        assert_eq!(ch.claim, Some(Claim { lo: 3, hi: None }));
        assert_eq!(ch.citation.as_deref(), Some("three"));
        let Item::Let { expr, .. } = &cfg.sections[0].items[0] else { panic!() };
        assert!(matches!(&expr.kind, ExprKind::Call(f, a) if f == "induce" && a.len() == 2));
    }

    #[test]
    fn element_products() {
        let cfg = parse_config("group D8\nlet M = ideal(x*y, 2, x, y)\nlet N = induce(trivial, x*y^2)\n").unwrap();
        let Item::Let { expr, .. } = &cfg.sections[0].items[1] else { panic!() };
        let ExprKind::Call(_, args) = &expr.kind else { panic!() };
        assert_eq!(args[1].value.kind, ExprKind::Elem(vec![("x".into(), 1), ("y".into(), 2)]));
    }

    #[test]
    fn subgroup_argument_cannot_use_bindings() {
        assert!(parse_config("group C9\nlet M = trivial\nlet N = induce(M, g1)\n").is_err());
    }
}
