//! Evaluates a parsed configuration into report rows.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use stmod_core::artriangles::{check_right_almost_split, heart};
use stmod_core::constructions::{abelian_theta, cyclic_module, cyclic_normal_module, induce_certificate};
use stmod_core::ghost_number::ghost_number_bounds;
use stmod_core::ghosts::{default_nmax, default_window, ghost_length_bounds, GhostCertificate};
use stmod_core::modules::{decompose, dual, free_module, induce, is_isomorphic, series, sum_of, tensor};
use stmod_core::stable::{is_stably_trivial, omega};
use stmod_core::words::{
    band_module_dihedral, central_induced_band_word, parse_word, projective_band_word, string_admissible,
    string_module_dihedral, words_up_to, BandDescriptor,
};
use stmod_core::{Field, FiniteGroup, GModule, GroupExpr};

use crate::config::{group_label, Check, CheckKind, Claim, Expr, ExprKind, Item, RunConfig, Section, Testers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    WithinBounds,
    Inconclusive,
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::WithinBounds => "within-bounds",
            Status::Inconclusive => "inconclusive",
            Status::Mismatch => "mismatch",
        })
    }
}

/// Status of computed bounds `[lower, upper]` against a claimed interval.
#[must_use]
pub fn interval_status(lower: usize, upper: usize, claim: Option<Claim>) -> Status {
    let Some(c) = claim else { return Status::WithinBounds };
    let hi = c.hi.unwrap_or(usize::MAX);
    if c.hi == Some(upper) && c.lo == lower {
        Status::Match
    } else if upper < c.lo || lower > hi {
        Status::Mismatch
    } else {
        Status::WithinBounds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub subject: String,
    pub claimed: Option<String>,
    pub citation: Option<String>,
    pub computed: String,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub status: Status,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    #[must_use]
    pub fn has_mismatch(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Mismatch)
    }

    /// The results file: a JSON array of rows.
    #[must_use]
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.rows).expect("rows serialize");
        s.push('\n');
        s
    }

    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!("{:<14} {}: {}", r.status.to_string(), r.subject, r.computed));
            if let Some(c) = &r.claimed {
                out.push_str(&format!("; claimed {c}"));
            }
            if let Some(c) = &r.citation {
                out.push_str(&format!(" ({c})"));
            }
            out.push('\n');
        }
        let count = |s: Status| self.rows.iter().filter(|r| r.status == s).count();
        out.push_str(&format!(
            "{} rows: {} match, {} within-bounds, {} inconclusive, {} mismatch\n",
            self.rows.len(),
            count(Status::Match),
            count(Status::WithinBounds),
            count(Status::Inconclusive),
            count(Status::Mismatch),
        ));
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Record wall-clock time per row; off by default so results stay byte-identical.
    pub timing: bool,
}

/// A module together with the certified ghosts its constructor knows about.
#[derive(Clone, Debug)]
struct Value {
    module: GModule,
    witnesses: Vec<GhostCertificate>,
}

impl Value {
    fn bare(module: GModule) -> Value {
        Value { module, witnesses: Vec::new() }
    }
}

type Env = BTreeMap<String, Result<Value, String>>;

struct Ctx<'a> {
    group: Arc<FiniteGroup>,
    expr: &'a GroupExpr,
    field: Field,
    cfg: &'a RunConfig,
}

pub fn run(cfg: &RunConfig, opts: RunOptions) -> Report {
    let mut rows = Vec::new();
    for section in &cfg.sections {
        run_section(cfg, section, opts, &mut rows);
    }
    Report { rows }
}

fn run_section(cfg: &RunConfig, section: &Section, opts: RunOptions, rows: &mut Vec<ReportRow>) {
    let label = group_label(&section.group);
    let field = Field::new(section.prime).expect("prime validated by the parser");
    let group = FiniteGroup::build(&section.group).map_err(|e| e.to_string());
    let mut env = Env::new();
    for item in &section.items {
        match item {
            Item::Let { name, expr, .. } => {
                let v = match &group {
                    Ok(g) => {
                        let ctx = Ctx { group: Arc::clone(g), expr: &section.group, field, cfg };
                        eval(&ctx, &ctx.group, expr, &env)
                    }
                    Err(e) => Err(e.clone()),
                };
                env.insert(name.clone(), v);
            }
            Item::Check(check) => {
                let start = Instant::now();
                let mut row = match &group {
                    Ok(g) => {
                        let ctx = Ctx { group: Arc::clone(g), expr: &section.group, field, cfg };
                        run_check(&ctx, &label, check, &env)
                    }
                    Err(e) => failed(format!("{label}: {}", check_name(check)), check, e),
                };
                if opts.timing {
                    row.runtime_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
                }
                rows.push(row);
            }
        }
    }
}

fn check_name(c: &Check) -> String {
    match &c.kind {
        CheckKind::Series { module } => format!("series of {module}"),
        CheckKind::GhostBounds { module, .. } => format!("ghost length of {module}"),
        CheckKind::Ar { module, .. } => format!("A-R triangle of {module}"),
        CheckKind::WordIdentities => "word identities".into(),
        CheckKind::ClassificationRow => "ghost number".into(),
    }
}

fn failed(subject: String, c: &Check, why: &str) -> ReportRow {
    ReportRow {
        subject,
        claimed: c.claim.map(|x| x.to_string()),
        citation: c.citation.clone(),
        computed: format!("not computed: {why}"),
        lower: None,
        upper: None,
        status: Status::Inconclusive,
        runtime_ms: 0,
    }
}

fn lookup<'e>(env: &'e Env, name: &str) -> Result<&'e Value, String> {
    match env.get(name) {
        Some(Ok(v)) => Ok(v),
        Some(Err(e)) => Err(format!("{name} could not be built: {e}")),
        None => Err(format!("unknown module {name}")),
    }
}

fn run_check(ctx: &Ctx<'_>, label: &str, c: &Check, env: &Env) -> ReportRow {
    let subject = format!("{label}: {}", check_name(c));
    let res = match &c.kind {
        CheckKind::Series { module } => lookup(env, module).map(|v| {
            let s = series(&v.module);
            let text = format!(
                "dim {}, radical length {}, socle length {}",
                v.module.dim(),
                s.radical_length,
                s.socle_length
            );
            (text, Some((s.radical_length, s.radical_length)), None)
        }),
        CheckKind::GhostBounds { module, window, nmax } => lookup(env, module).and_then(|v| {
            let w = window.or(ctx.cfg.window).unwrap_or_else(|| default_window(&v.module));
            let n = nmax.or(ctx.cfg.nmax).unwrap_or_else(|| default_nmax(&v.module));
            let b = ghost_length_bounds(&v.module, w, n, &v.witnesses).map_err(|e| e.to_string())?;
            let text = format!("[{}, {}] by {}, window {w}", b.lower, b.upper, b.upper_method);
            Ok((text, Some((b.lower, b.upper)), None))
        }),
        CheckKind::Ar { module, testers } => lookup(env, module).and_then(|v| ar_check(ctx, &v.module, *testers)),
        CheckKind::WordIdentities => word_identities(ctx),
        CheckKind::ClassificationRow => {
            let reg = free_module(&ctx.group, ctx.field, 1);
            let w = ctx.cfg.window.unwrap_or_else(|| default_window(&reg));
            let n = ctx.cfg.nmax.unwrap_or_else(|| default_nmax(&reg));
            ghost_number_bounds(ctx.expr, ctx.field, w, n).map_err(|e| e.to_string()).map(|b| {
                let text = format!(
                    "[{}, {}]; lower from {}, upper from {}",
                    b.lower, b.upper, b.witness.strategy, b.upper_method
                );
                (text, Some((b.lower, b.upper)), None)
            })
        }
    };
    match res {
        Err(e) => failed(subject, c, &e),
        Ok((computed, bounds, verdict)) => {
            let status = match (verdict, bounds) {
                (Some(true), _) => Status::Match,
                (Some(false), _) => Status::Mismatch,
                (None, Some((l, u))) => interval_status(l, u, c.claim),
                (None, None) => Status::WithinBounds,
            };
            ReportRow {
                subject,
                claimed: c.claim.map(|x| x.to_string()),
                citation: c.citation.clone(),
                computed,
                lower: bounds.map(|b| b.0),
                upper: bounds.map(|b| b.1),
                status,
                runtime_ms: 0,
            }
        }
    }
}

type CheckResult = Result<(String, Option<(usize, usize)>, Option<bool>), String>;

fn ar_check(ctx: &Ctx<'_>, m: &GModule, testers: Testers) -> CheckResult {
    let t = heart(m).map_err(|e| e.to_string())?;
    let gamma_ok = !is_stably_trivial(&t.gamma);
    let parts = decompose(&t.heart, ctx.cfg.seed);
    let mut dims = parts.dims();
    dims.sort_unstable();
    let list: Vec<GModule> = match testers {
        Testers::Cyclic => {
            let n = ctx.group.order();
            (1..n).map(|d| cyclic_module(&ctx.group, ctx.field, d)).collect::<Result<_, _>>().map_err(|e| e.to_string())?
        }
        Testers::Heart => {
            let mut v = vec![m.clone(), GModule::trivial(&ctx.group, ctx.field).map_err(|e| e.to_string())?];
            v.extend(parts.summands.iter().map(|s| s.module.clone()));
            v
        }
    };
    let split = check_right_almost_split(&t.beta, &list).map_err(|e| e.to_string())?;
    let text = format!(
        "heart summand dims {dims:?}{}; almost zero map {}; beta {} against {} testers",
        if parts.certified() { "" } else { " (randomized split)" },
        if gamma_ok { "stably non-trivial" } else { "stably trivial" },
        if split { "right almost split" } else { "not right almost split" },
        list.len()
    );
    Ok((text, None, Some(gamma_ok && split)))
}

fn word_identities(ctx: &Ctx<'_>) -> CheckResult {
    let GroupExpr::Dihedral(order) = ctx.expr else {
        return Err("word identities need a dihedral group".into());
    };
    let q = order / 4;
    let g = &ctx.group;
    let f = ctx.field;
    let e = |x: stmod_core::Error| x.to_string();
    let reg = GModule::regular(g, f).map_err(e)?;
    let pb = BandDescriptor::with_identity(projective_band_word(q).map_err(e)?, f).map_err(e)?;
    let projective_ok = is_isomorphic(&band_module_dihedral(&pb, g).map_err(e)?, &reg);
    let mut checked = vec![format!("kG = M((ab)^{q}(ba)^-{q}) {}", if projective_ok { "holds" } else { "fails" })];
    let mut ok = projective_ok;
    if q % 2 == 0 {
        let z = g.center().into_iter().find(|&z| z != g.identity()).ok_or("trivial centre")?;
        let n = induce(&GModule::trivial(&g.subgroup(&[z]).map_err(e)?.sub, f).map_err(e)?, &g.subgroup(&[z]).map_err(e)?)
            .map_err(e)?
            .module;
        let nb = BandDescriptor::with_identity(central_induced_band_word(q).map_err(e)?, f).map_err(e)?;
        let n_ok = is_isomorphic(&band_module_dihedral(&nb, g).map_err(e)?, &n);
        checked.push(format!("k induced from the centre = M((ab)^{0}(ba)^-{0}) {1}", q / 2, if n_ok { "holds" } else { "fails" }));
        ok &= n_ok;
    }
    let mut strings = 0;
    let mut string_ok = true;
    for w in words_up_to(4).into_iter().filter(|w| string_admissible(w, q)) {
        let m = string_module_dihedral(&w, g, f).map_err(e)?;
        let mi = string_module_dihedral(&w.inverse(), g, f).map_err(e)?;
        string_ok &= m.dim() == w.len() + 1 && is_isomorphic(&m, &mi);
        strings += 1;
    }
    checked.push(format!(
        "dim M(C) = |C|+1 and M(C) = M(C^-1) on {strings} strings {}",
        if string_ok { "hold" } else { "fail" }
    ));
    Ok((checked.join("; "), None, Some(ok && string_ok)))
}

fn positional(args: &[crate::config::Arg]) -> Vec<&Expr> {
    args.iter().filter(|a| a.key.is_none()).map(|a| &a.value).collect()
}

fn int_arg(e: &Expr) -> Result<usize, String> {
    match e.kind {
        ExprKind::Int(n) if n > 0 => Ok(n as usize),
        _ => Err(format!("line {}, column {}: expected a positive integer", e.pos.line, e.pos.col)),
    }
}

fn element(g: &FiniteGroup, e: &Expr) -> Result<usize, String> {
    let at = |m: String| format!("line {}, column {}: {m}", e.pos.line, e.pos.col);
    let factors: Vec<(String, i64)> = match &e.kind {
        ExprKind::Name(n) => vec![(n.clone(), 1)],
        ExprKind::Elem(fs) => fs.clone(),
        ExprKind::Int(1) => return Ok(g.identity()),
        _ => return Err(at("expected a group element".into())),
    };
    let mut x = g.identity();
    for (name, k) in factors {
        let y = g.element(&name).ok_or_else(|| at(format!("no element named {name}")))?;
        let o = g.element_order(y) as i64;
        x = g.mul(x, g.pow(y, k.rem_euclid(o) as usize));
    }
    Ok(x)
}

fn eval(ctx: &Ctx<'_>, g: &Arc<FiniteGroup>, e: &Expr, env: &Env) -> Result<Value, String> {
    let f = ctx.field;
    let s = |x: stmod_core::Error| x.to_string();
    let (name, args) = match &e.kind {
        ExprKind::Name(n) if n == "trivial" => return GModule::trivial(g, f).map(Value::bare).map_err(s),
        ExprKind::Name(n) if n == "regular" => return Ok(Value::bare(free_module(g, f, 1))),
        ExprKind::Name(n) => return lookup(env, n).cloned(),
        ExprKind::Call(n, a) => (n.as_str(), a),
        _ => return Err(format!("line {}, column {}: expected a module", e.pos.line, e.pos.col)),
    };
    let pos = positional(args);
    let arity = |k: usize| -> Result<(), String> {
        if pos.len() == k {
            Ok(())
        } else {
            Err(format!("line {}, column {}: {name} takes {k} argument(s)", e.pos.line, e.pos.col))
        }
    };
    let sub = |x: &Expr| eval(ctx, g, x, env).map(|v| v.module);
    match name {
        "free" => {
            arity(1)?;
            Ok(Value::bare(free_module(g, f, int_arg(pos[0])?)))
        }
        "cyclic" | "cyclic_quotient" => {
            arity(1)?;
            let n = int_arg(pos[0])?;
            let m = cyclic_module(g, f, n).map_err(s)?;
            let witnesses = if 2 * n <= g.order() {
                abelian_theta(g, f, &[n]).ok().and_then(|t| t.cert).into_iter().collect()
            } else {
                Vec::new()
            };
            Ok(Value { module: m, witnesses })
        }
        "abelian" => {
            let dims = pos.iter().map(|x| int_arg(x)).collect::<Result<Vec<_>, _>>()?;
            let t = abelian_theta(g, f, &dims).map_err(s)?;
            Ok(Value { module: t.module, witnesses: t.cert.into_iter().collect() })
        }
        "ideal" => {
            if pos.len() < 2 {
                return Err(format!("line {}, column {}: ideal takes an element, n and a word", e.pos.line, e.pos.col));
            }
            let x = element(g, pos[0])?;
            let n = int_arg(pos[1])?;
            let emb = g.subgroup(&[x]).map_err(s)?;
            let w = cyclic_normal_module(&emb, n, f).map_err(s)?;
            let word = pos[2..].iter().map(|y| element(g, y)).collect::<Result<Vec<_>, _>>()?;
            let word = if word.is_empty() { w.find_socle_word().map_err(s)?.unwrap_or_default() } else { word };
            let mut witnesses = Vec::new();
            if !word.is_empty() {
                witnesses.push(w.composite(&word).map_err(s)?);
            }
            Ok(Value { module: w.induced.clone(), witnesses })
        }
        "induce" => {
            if pos.len() < 2 {
                return Err(format!("line {}, column {}: induce takes a module and generators", e.pos.line, e.pos.col));
            }
            let gens = pos[1..].iter().map(|y| element(g, y)).collect::<Result<Vec<_>, _>>()?;
            let emb = g.subgroup(&gens).map_err(s)?;
            let inner = eval(ctx, &emb.sub, pos[0], &Env::new())?;
            let up = induce(&inner.module, &emb).map_err(s)?;
            let witnesses = inner.witnesses.iter().filter_map(|c| induce_certificate(c, &emb).ok()).collect();
            Ok(Value { module: up.module, witnesses })
        }
        "tensor" => {
            arity(2)?;
            Ok(Value::bare(tensor(&sub(pos[0])?, &sub(pos[1])?).map_err(s)?))
        }
        "dual" => {
            arity(1)?;
            Ok(Value::bare(dual(&sub(pos[0])?)))
        }
        "sum" => {
            let ms = pos.iter().map(|x| sub(x)).collect::<Result<Vec<_>, _>>()?;
            if ms.is_empty() {
                return Err(format!("line {}, column {}: sum of nothing", e.pos.line, e.pos.col));
            }
            Ok(Value::bare(sum_of(&ms).map_err(s)?.module))
        }
        "omega" => {
            if pos.is_empty() || pos.len() > 2 {
                return Err(format!("line {}, column {}: omega takes a module and a shift", e.pos.line, e.pos.col));
            }
            let n = match pos.get(1).map(|x| &x.kind) {
                None => 1,
                Some(ExprKind::Int(n)) => i32::try_from(*n).map_err(|_| "shift out of range".to_string())?,
                Some(_) => return Err("omega shift must be an integer".into()),
            };
            Ok(Value::bare(omega(&sub(pos[0])?, n)))
        }
        "word" => {
            arity(1)?;
            let ExprKind::Str(text) = &pos[0].kind else { return Err("word takes a quoted word".into()) };
            let w = parse_word(text).map_err(s)?;
            Ok(Value::bare(string_module_dihedral(&w, g, f).map_err(s)?))
        }
        "band" => {
            arity(1)?;
            let ExprKind::Str(text) = &pos[0].kind else { return Err("band takes a quoted word".into()) };
            let w = parse_word(text).map_err(s)?;
            let phi = args.iter().find(|a| a.key.as_deref() == Some("phi"));
            let d = match phi.map(|a| &a.value.kind) {
                None => BandDescriptor::with_identity(w, f).map_err(s)?,
                Some(ExprKind::Call(c, cs)) if c == "companion" => {
                    let coeffs = cs
                        .iter()
                        .map(|a| match a.value.kind {
                            ExprKind::Int(v) => Ok(f.from_i64(v)),
                            _ => Err("companion takes integer coefficients".to_string()),
                        })
                        .collect::<Result<Vec<u8>, _>>()?;
                    BandDescriptor::companion(w, f, &coeffs).map_err(s)?
                }
                Some(_) => return Err("phi must be companion(...)".into()),
            };
            Ok(Value::bare(band_module_dihedral(&d, g).map_err(s)?))
        }
        _ => Err(format!("line {}, column {}: unknown constructor {name}", e.pos.line, e.pos.col)),
    }
}
