//! Line-oriented text format for categories and the structures living on them.
//!
//! ```text
//! # comment
//! category Arrow
//!   object 0
//!   object 1
//!   morphism i : 0 -> 1
//! end
//! relcat RelArrow from Arrow
//!   weq i
//! end
//! functor F : Arrow -> Chain2
//!   obj 0 |-> 0
//!   obj 1 |-> 2
//!   mor i |-> c
//! end
//! nat eta : id:Arrow => G.F
//!   at 0 = id_0
//! end
//! adjunction L = F -| G unit eta counit eps
//! retraction R on RelArrow sub 0 Q { 0 |-> 0 ; 1 |-> 0 ; i |-> id_0 } q { 0 = id_0 ; 1 = i }
//! ```
//!
//! Composites with an identity are filled in automatically. Functor
//! expressions in `nat` headers are a functor name, `id:<category>`, or a
//! composite `G.F` (apply `F` first). Identities of a functor's source go to
//! identities unless listed. A retraction may end in `side left|right`;
//! without it the side is read off the endpoints of `q`.

use std::sync::Arc;

use indexmap::IndexMap;

use crate::adjunction::{verify_adjunction, Adjunction};
use crate::cat::{validate_category, FinCat, Mor, Obj, RawCategory};
use crate::derived::{validate_retraction, RetractionData, Side};
use crate::error::{CatError, Result};
use crate::functor::{Functor, NatTrans};
use crate::localization::RelCat;

#[derive(Clone, Debug)]
pub struct NamedRelCat {
    pub category: String,
    pub rc: RelCat,
}

#[derive(Clone, Debug)]
pub struct NamedFunctor {
    pub src: String,
    pub tgt: String,
    pub functor: Functor,
}

#[derive(Clone, Debug)]
pub struct NamedNat {
    pub dom: String,
    pub cod: String,
    pub nat: NatTrans,
}

#[derive(Clone, Debug)]
pub struct NamedAdjunction {
    pub left: String,
    pub right: String,
    pub unit: String,
    pub counit: String,
    pub adj: Adjunction,
}

#[derive(Clone, Debug)]
pub struct NamedRetraction {
    pub relcat: String,
    pub data: RetractionData,
}

/// Everything declared in one or more description files, by name and in
/// declaration order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: IndexMap<String, Arc<FinCat>>,
    pub relcats: IndexMap<String, NamedRelCat>,
    pub functors: IndexMap<String, NamedFunctor>,
    pub nats: IndexMap<String, NamedNat>,
    pub adjunctions: IndexMap<String, NamedAdjunction>,
    pub retractions: IndexMap<String, NamedRetraction>,
}

fn perr(line: usize, message: impl Into<String>) -> CatError {
    CatError::Parse { line, message: message.into() }
}

fn verr(entity: String, e: CatError) -> CatError {
    CatError::Validation { entity, source: Box::new(e) }
}

fn dangling(what: &str, name: &str) -> CatError {
    CatError::DanglingId(format!("{what} {name}"))
}

enum Block {
    Category {
        line: usize,
        raw: RawCategory,
    },
    RelCat {
        line: usize,
        name: String,
        category: String,
        weq: Vec<String>,
    },
    Functor {
        line: usize,
        name: String,
        src: String,
        tgt: String,
        obj: Vec<(String, String)>,
        mor: Vec<(String, String)>,
    },
    Nat {
        line: usize,
        name: String,
        dom: String,
        cod: String,
        at: Vec<(String, String)>,
    },
}

/// Parse one file into a fresh workspace.
pub fn parse(text: &str) -> Result<Workspace> {
    let mut ws = Workspace::default();
    ws.extend_from(text)?;
    Ok(ws)
}

/// Parse several files in order into one workspace; later files may refer
/// to names from earlier ones.
pub fn parse_all<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Workspace> {
    let mut ws = Workspace::default();
    for t in texts {
        ws.extend_from(t)?;
    }
    Ok(ws)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

impl Workspace {
    pub fn extend_from(&mut self, text: &str) -> Result<()> {
        let lines: Vec<&str> = text.lines().collect();
        let mut block: Option<Block> = None;
        let mut k = 0;
        while k < lines.len() {
            let lineno = k + 1;
            let mut content = strip_comment(lines[k]).to_string();
            k += 1;
            // braces may span lines in retraction declarations
            while content.matches('{').count() > content.matches('}').count() && k < lines.len() {
                content.push(' ');
                content.push_str(strip_comment(lines[k]));
                k += 1;
            }
            let spaced = content.replace('{', " { ").replace('}', " } ").replace(';', " ; ");
            let toks: Vec<&str> = spaced.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            match block.take() {
                Some(b) => block = self.block_line(b, &toks, lineno)?,
                None => block = self.top_line(&toks, lineno)?,
            }
        }
        if let Some(b) = block {
            let line = match b {
                Block::Category { line, .. }
                | Block::RelCat { line, .. }
                | Block::Functor { line, .. }
                | Block::Nat { line, .. } => line,
            };
            return Err(perr(line, "block is not closed by `end`"));
        }
        Ok(())
    }

    fn top_line(&mut self, t: &[&str], line: usize) -> Result<Option<Block>> {
        let s = |x: &str| x.to_string();
        match t {
            ["category", name] => {
                self.fresh(&self.categories.contains_key(*name), "category", name, line)?;
                Ok(Some(Block::Category { line, raw: RawCategory { name: s(name), ..Default::default() } }))
            }
            ["relcat", name, "from", cat] => {
                self.fresh(&self.relcats.contains_key(*name), "relcat", name, line)?;
                Ok(Some(Block::RelCat { line, name: s(name), category: s(cat), weq: Vec::new() }))
            }
            ["functor", name, ":", src, "->", tgt] => {
                self.fresh(&self.functors.contains_key(*name), "functor", name, line)?;
                Ok(Some(Block::Functor { line, name: s(name), src: s(src), tgt: s(tgt), obj: vec![], mor: vec![] }))
            }
            ["nat", name, ":", dom, "=>", cod] => {
                self.fresh(&self.nats.contains_key(*name), "nat", name, line)?;
                Ok(Some(Block::Nat { line, name: s(name), dom: s(dom), cod: s(cod), at: vec![] }))
            }
            ["adjunction", name, "=", f, "-|", g, "unit", eta, "counit", eps] => {
                self.fresh(&self.adjunctions.contains_key(*name), "adjunction", name, line)?;
                let entity = format!("adjunction {name}");
                let adj = self.build_adjunction(f, g, eta, eps).map_err(|e| verr(entity, e))?;
                self.adjunctions
                    .insert(s(name), NamedAdjunction { left: s(f), right: s(g), unit: s(eta), counit: s(eps), adj });
                Ok(None)
            }
            ["retraction", name, "on", rc, "sub", rest @ ..] => {
                self.fresh(&self.retractions.contains_key(*name), "retraction", name, line)?;
                self.retraction_line(name, rc, rest, line)?;
                Ok(None)
            }
            _ => Err(perr(line, format!("unrecognised declaration `{}`", t.join(" ")))),
        }
    }

    fn fresh(&self, taken: &bool, kind: &str, name: &str, line: usize) -> Result<()> {
        if *taken {
            return Err(perr(line, format!("duplicate {kind} name `{name}`")));
        }
        Ok(())
    }

    fn block_line(&mut self, mut b: Block, t: &[&str], line: usize) -> Result<Option<Block>> {
        let s = |x: &str| x.to_string();
        if t == ["end"] {
            self.finish(b)?;
            return Ok(None);
        }
        match (&mut b, t) {
            (Block::Category { raw, .. }, ["object", o]) => raw.objects.push(s(o)),
            (Block::Category { raw, .. }, ["morphism", m, ":", d, "->", c]) => raw.morphisms.push((s(m), s(d), s(c))),
            (Block::Category { raw, .. }, ["compose", g, ".", f, "=", h]) => raw.compose.push((s(g), s(f), s(h))),
            (Block::RelCat { weq, .. }, ["weq", m]) => weq.push(s(m)),
            (Block::Functor { obj, .. }, ["obj", a, "|->", x]) => obj.push((s(a), s(x))),
            (Block::Functor { mor, .. }, ["mor", f, "|->", g]) => mor.push((s(f), s(g))),
            (Block::Nat { at, .. }, ["at", o, "=", m]) => at.push((s(o), s(m))),
            _ => return Err(perr(line, format!("unexpected line `{}` in block", t.join(" ")))),
        }
        Ok(Some(b))
    }

    fn finish(&mut self, b: Block) -> Result<()> {
        match b {
            Block::Category { mut raw, .. } => {
                let name = raw.name.clone();
                fill_identity_composites(&mut raw);
                let cat = validate_category(&raw).map_err(|e| verr(format!("category {name}"), e))?;
                self.categories.insert(name, Arc::new(cat));
            }
            Block::RelCat { name, category, weq, .. } => {
                let entity = format!("relcat {name}");
                let cat = self.category(&category).map_err(|e| verr(entity.clone(), e))?;
                let ms = weq
                    .iter()
                    .map(|m| cat.mor_id(m).ok_or_else(|| dangling("morphism", m)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| verr(entity, e))?;
                let rc = RelCat::new(name.clone(), cat, ms);
                self.relcats.insert(name, NamedRelCat { category, rc });
            }
            Block::Functor { name, src, tgt, obj, mor, .. } => {
                let entity = format!("functor {name}");
                let functor = self.build_functor(&src, &tgt, &obj, &mor).map_err(|e| verr(entity, e))?;
                self.functors.insert(name, NamedFunctor { src, tgt, functor });
            }
            Block::Nat { name, dom, cod, at, .. } => {
                let entity = format!("nat {name}");
                let nat = self.build_nat(&dom, &cod, &at).map_err(|e| verr(entity, e))?;
                self.nats.insert(name, NamedNat { dom, cod, nat });
            }
        }
        Ok(())
    }

    fn category(&self, name: &str) -> Result<Arc<FinCat>> {
        self.categories.get(name).cloned().ok_or_else(|| dangling("category", name))
    }

    fn build_functor(
        &self,
        src: &str,
        tgt: &str,
        obj: &[(String, String)],
        mor: &[(String, String)],
    ) -> Result<Functor> {
        let (s, t) = (self.category(src)?, self.category(tgt)?);
        let mut om: Vec<Option<Obj>> = vec![None; s.n_obj()];
        for (a, x) in obj {
            let a = s.obj_id(a).ok_or_else(|| dangling("object", a))?;
            om[a] = Some(t.obj_id(x).ok_or_else(|| dangling("object", x))?);
        }
        let om = om
            .iter()
            .enumerate()
            .map(|(a, o)| o.ok_or_else(|| CatError::NotAFunctor(format!("object {} is unmapped", s.obj_name(a)))))
            .collect::<Result<Vec<_>>>()?;
        let mut mm: Vec<Option<Mor>> = vec![None; s.n_mor()];
        for (f, g) in mor {
            let f = s.mor_id(f).ok_or_else(|| dangling("morphism", f))?;
            mm[f] = Some(t.mor_id(g).ok_or_else(|| dangling("morphism", g))?);
        }
        let mm = s
            .morphisms()
            .map(|f| match mm[f] {
                Some(g) => Ok(g),
                None if s.is_identity(f) => Ok(t.id(om[s.dom(f)])),
                None => Err(CatError::NotAFunctor(format!("morphism {} is unmapped", s.mor_name(f)))),
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(s, t, om, mm)
    }

    /// Resolve `F`, `id:<cat>` or `G.F`.
    pub fn functor_expr(&self, expr: &str) -> Result<Functor> {
        let mut acc: Option<Functor> = None;
        for part in expr.split('.').rev() {
            let f = match part.strip_prefix("id:") {
                Some(c) => Functor::identity(&self.category(c)?),
                None => self.functors.get(part).map(|n| n.functor.clone()).ok_or_else(|| dangling("functor", part))?,
            };
            acc = Some(match acc {
                None => f,
                Some(first) => f.after(&first)?,
            });
        }
        acc.ok_or_else(|| dangling("functor", expr))
    }

    fn build_nat(&self, dom: &str, cod: &str, at: &[(String, String)]) -> Result<NatTrans> {
        let (f, g) = (self.functor_expr(dom)?, self.functor_expr(cod)?);
        let (s, t) = (f.src.clone(), f.tgt.clone());
        let mut comp: Vec<Option<Mor>> = vec![None; s.n_obj()];
        for (o, m) in at {
            let o = s.obj_id(o).ok_or_else(|| dangling("object", o))?;
            comp[o] = Some(t.mor_id(m).ok_or_else(|| dangling("morphism", m))?);
        }
        let comp = comp
            .iter()
            .enumerate()
            .map(|(o, m)| m.ok_or_else(|| CatError::NotNatural(format!("no component at {}", s.obj_name(o)))))
            .collect::<Result<Vec<_>>>()?;
        NatTrans::new(f, g, comp)
    }

    fn build_adjunction(&self, f: &str, g: &str, eta: &str, eps: &str) -> Result<Adjunction> {
        let fun = |n: &str| self.functors.get(n).map(|x| x.functor.clone()).ok_or_else(|| dangling("functor", n));
        let nat = |n: &str| self.nats.get(n).map(|x| x.nat.clone()).ok_or_else(|| dangling("nat", n));
        verify_adjunction(fun(f)?, fun(g)?, nat(eta)?, nat(eps)?)
    }

    fn retraction_line(&mut self, name: &str, rc_name: &str, rest: &[&str], line: usize) -> Result<()> {
        let q_at = rest.iter().position(|&x| x == "Q").ok_or_else(|| perr(line, "retraction needs `Q { ... }`"))?;
        let sub: Vec<&str> = rest[..q_at].iter().flat_map(|x| x.split(',')).filter(|x| !x.is_empty()).collect();
        let (qmap, after) = braced(&rest[q_at + 1..], line)?;
        let (qcomp, after) = match after {
            ["q", tail @ ..] => braced(tail, line)?,
            _ => return Err(perr(line, "retraction needs `q { ... }` after Q")),
        };
        let side = match after {
            [] => None,
            ["side", "left"] => Some(Side::Left),
            ["side", "right"] => Some(Side::Right),
            _ => return Err(perr(line, format!("trailing tokens `{}`", after.join(" ")))),
        };
        let parse_pairs = |items: &[Vec<&str>], sep: &str| -> Result<Vec<(String, String)>> {
            items
                .iter()
                .map(|it| match it.as_slice() {
                    [a, s, b] if *s == sep => Ok((a.to_string(), b.to_string())),
                    _ => Err(perr(line, format!("expected `a {sep} b`, got `{}`", it.join(" ")))),
                })
                .collect()
        };
        let qmap = parse_pairs(&qmap, "|->")?;
        let qcomp = parse_pairs(&qcomp, "=")?;
        let entity = format!("retraction {name}");
        let data = self.build_retraction(rc_name, &sub, &qmap, &qcomp, side).map_err(|e| verr(entity.clone(), e))?;
        validate_retraction(data.clone()).map_err(|e| verr(entity, e))?;
        self.retractions.insert(name.to_string(), NamedRetraction { relcat: rc_name.to_string(), data });
        Ok(())
    }

    fn build_retraction(
        &self,
        rc_name: &str,
        sub: &[&str],
        qmap: &[(String, String)],
        qcomp: &[(String, String)],
        side: Option<Side>,
    ) -> Result<RetractionData> {
        let rc = self.relcats.get(rc_name).map(|r| r.rc.clone()).ok_or_else(|| dangling("relcat", rc_name))?;
        let c = rc.cat.clone();
        let obj = |n: &str| c.obj_id(n).ok_or_else(|| dangling("object", n));
        let mor = |n: &str| c.mor_id(n).ok_or_else(|| dangling("morphism", n));
        let sub = sub.iter().map(|n| obj(n)).collect::<Result<Vec<_>>>()?;
        let mut q_obj = vec![None; c.n_obj()];
        let mut q_mor = vec![None; c.n_mor()];
        for (a, b) in qmap {
            match c.obj_id(a) {
                Some(o) => q_obj[o] = Some(obj(b)?),
                None => q_mor[mor(a)?] = Some(mor(b)?),
            }
        }
        let q_obj = c
            .objects()
            .map(|a| q_obj[a].ok_or_else(|| CatError::QNotFunctorial(format!("Q({}) is missing", c.obj_name(a)))))
            .collect::<Result<Vec<_>>>()?;
        let q_mor = c
            .morphisms()
            .map(|f| match q_mor[f] {
                Some(g) => Ok(g),
                None if c.is_identity(f) => Ok(c.id(q_obj[c.dom(f)])),
                None => Err(CatError::QNotFunctorial(format!("Q({}) is missing", c.mor_name(f)))),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut q = vec![None; c.n_obj()];
        for (a, m) in qcomp {
            q[obj(a)?] = Some(mor(m)?);
        }
        let q = c
            .objects()
            .map(|a| q[a].ok_or_else(|| CatError::QNotWeq { object: c.obj_name(a).to_string() }))
            .collect::<Result<Vec<_>>>()?;
        let side = side.unwrap_or_else(|| {
            let left = c.objects().all(|a| c.dom(q[a]) == q_obj[a] && c.cod(q[a]) == a);
            if left {
                Side::Left
            } else {
                Side::Right
            }
        });
        Ok(RetractionData { rc, side, sub, q_obj, q_mor, q })
    }

    /// Same names per kind and equal underlying data.
    pub fn extensionally_equal(&self, other: &Workspace) -> bool {
        fn keys<V>(a: &IndexMap<String, V>, b: &IndexMap<String, V>) -> bool {
            a.len() == b.len() && a.keys().all(|k| b.contains_key(k))
        }
        keys(&self.categories, &other.categories)
            && self
                .categories
                .iter()
                .all(|(k, c)| **c == *other.categories[k] && c.name() == other.categories[k].name())
            && keys(&self.relcats, &other.relcats)
            && self.relcats.iter().all(|(k, r)| {
                let o = &other.relcats[k];
                r.category == o.category && r.rc.weq == o.rc.weq && *r.rc.cat == *o.rc.cat
            })
            && keys(&self.functors, &other.functors)
            && self.functors.iter().all(|(k, f)| f.functor == other.functors[k].functor)
            && keys(&self.nats, &other.nats)
            && self.nats.iter().all(|(k, n)| n.nat == other.nats[k].nat)
            && keys(&self.adjunctions, &other.adjunctions)
            && self.adjunctions.iter().all(|(k, a)| a.adj == other.adjunctions[k].adj)
            && keys(&self.retractions, &other.retractions)
            && self.retractions.iter().all(|(k, r)| {
                let (a, b) = (&r.data, &other.retractions[k].data);
                a.side == b.side
                    && a.sub == b.sub
                    && a.q_obj == b.q_obj
                    && a.q_mor == b.q_mor
                    && a.q == b.q
                    && a.rc.weq == b.rc.weq
            })
    }
}

/// Split `{ a |-> b ; c |-> d }` into items, returning the tokens after `}`.
fn braced<'a, 'b>(t: &'b [&'a str], line: usize) -> Result<(Vec<Vec<&'a str>>, &'b [&'a str])> {
    if t.first() != Some(&"{") {
        return Err(perr(line, "expected `{`"));
    }
    let close = t.iter().position(|&x| x == "}").ok_or_else(|| perr(line, "missing `}`"))?;
    let items = t[1..close].split(|&x| x == ";").filter(|it| !it.is_empty()).map(|it| it.to_vec()).collect();
    Ok((items, &t[close + 1..]))
}

fn fill_identity_composites(raw: &mut RawCategory) {
    let ids: std::collections::HashSet<String> = raw.objects.iter().map(|o| format!("id_{o}")).collect();
    let have: std::collections::HashSet<(String, String)> =
        raw.compose.iter().map(|(g, f, _)| (g.clone(), f.clone())).collect();
    let mut all: Vec<(String, String, String)> = raw.morphisms.clone();
    for o in &raw.objects {
        let idn = format!("id_{o}");
        if !all.iter().any(|m| m.0 == idn) {
            all.push((idn, o.clone(), o.clone()));
        }
    }
    let mut extra = Vec::new();
    for (f, d, c) in &all {
        let pre = (format!("id_{c}"), f.clone());
        if !have.contains(&pre) {
            extra.push((pre.0, pre.1, f.clone()));
        }
        let post = (f.clone(), format!("id_{d}"));
        if !have.contains(&post) && !(ids.contains(f) && f == &format!("id_{d}")) {
            extra.push((post.0, post.1, f.clone()));
        }
    }
    raw.compose.extend(extra);
}

fn writable(name: &str) -> Result<&str> {
    let bad = name.is_empty()
        || name.chars().any(|ch| ch.is_whitespace() || "#{};,".contains(ch))
        || ["->", "|->", "=>", "-|", "=", ":", ".", "end"].contains(&name);
    if bad {
        return Err(CatError::ShapeMismatch(format!("name `{name}` cannot be written in the text format")));
    }
    Ok(name)
}

/// Write a workspace in the text format. Identity composites and identity
/// functor components are left implicit.
pub fn serialize(ws: &Workspace) -> Result<String> {
    use std::fmt::Write;
    let mut out = String::new();
    for (name, c) in &ws.categories {
        writeln!(out, "category {}", writable(name)?).ok();
        for o in c.objects() {
            writeln!(out, "  object {}", writable(c.obj_name(o))?).ok();
        }
        for f in c.morphisms() {
            writeln!(
                out,
                "  morphism {} : {} -> {}",
                writable(c.mor_name(f))?,
                c.obj_name(c.dom(f)),
                c.obj_name(c.cod(f))
            )
            .ok();
        }
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            for &g in c.out_of(c.cod(f)).iter().filter(|&&g| !c.is_identity(g)) {
                writeln!(out, "  compose {} . {} = {}", c.mor_name(g), c.mor_name(f), c.mor_name(c.compose(g, f))).ok();
            }
        }
        writeln!(out, "end").ok();
    }
    for (name, r) in &ws.relcats {
        let c = &r.rc.cat;
        writeln!(out, "relcat {} from {}", writable(name)?, r.category).ok();
        for m in c.morphisms().filter(|&m| r.rc.weq[m] && !c.is_iso(m)) {
            writeln!(out, "  weq {}", c.mor_name(m)).ok();
        }
        writeln!(out, "end").ok();
    }
    for (name, f) in &ws.functors {
        let (s, t, fun) = (&f.functor.src, &f.functor.tgt, &f.functor);
        writeln!(out, "functor {} : {} -> {}", writable(name)?, f.src, f.tgt).ok();
        for a in s.objects() {
            writeln!(out, "  obj {} |-> {}", s.obj_name(a), t.obj_name(fun.obj[a])).ok();
        }
        for m in s.morphisms().filter(|&m| !s.is_identity(m)) {
            writeln!(out, "  mor {} |-> {}", s.mor_name(m), t.mor_name(fun.mor[m])).ok();
        }
        writeln!(out, "end").ok();
    }
    for (name, n) in &ws.nats {
        let (s, t) = (&n.nat.dom.src, &n.nat.dom.tgt);
        writeln!(out, "nat {} : {} => {}", writable(name)?, n.dom, n.cod).ok();
        for a in s.objects() {
            writeln!(out, "  at {} = {}", s.obj_name(a), t.mor_name(n.nat.comp[a])).ok();
        }
        writeln!(out, "end").ok();
    }
    for (name, a) in &ws.adjunctions {
        writeln!(out, "adjunction {} = {} -| {} unit {} counit {}", writable(name)?, a.left, a.right, a.unit, a.counit)
            .ok();
    }
    for (name, r) in &ws.retractions {
        let d = &r.data;
        let c = &d.rc.cat;
        let sub: Vec<&str> = d.sub.iter().map(|&o| c.obj_name(o)).collect();
        let mut qmap: Vec<String> =
            c.objects().map(|a| format!("{} |-> {}", c.obj_name(a), c.obj_name(d.q_obj[a]))).collect();
        qmap.extend(
            c.morphisms()
                .filter(|&f| !c.is_identity(f))
                .map(|f| format!("{} |-> {}", c.mor_name(f), c.mor_name(d.q_mor[f]))),
        );
        let q: Vec<String> = c.objects().map(|a| format!("{} = {}", c.obj_name(a), c.mor_name(d.q[a]))).collect();
        let side = match d.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        writeln!(
            out,
            "retraction {} on {} sub {} Q {{ {} }} q {{ {} }} side {side}",
            writable(name)?,
            r.relcat,
            sub.join(","),
            qmap.join(" ; "),
            q.join(" ; ")
        )
        .ok();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "
# two categories and a Galois connection
category Arrow
  object 0
  object 1
  morphism i : 0 -> 1
end
category Chain2
  object 0
  object 1
  object 2
  morphism a : 0 -> 1
  morphism b : 1 -> 2
  morphism c : 0 -> 2
  compose b . a = c
end
relcat RelArrow from Arrow
  weq i
end
functor F : Arrow -> Chain2
  obj 0 |-> 0
  obj 1 |-> 2
  mor i |-> c
end
functor G : Chain2 -> Arrow
  obj 0 |-> 0
  obj 1 |-> 0
  obj 2 |-> 1
  mor a |-> id_0
  mor b |-> i
  mor c |-> i
end
nat eta : id:Arrow => G.F
  at 0 = id_0
  at 1 = id_1
end
nat eps : F.G => id:Chain2
  at 0 = id_0
  at 1 = a
  at 2 = id_2
end
adjunction FG = F -| G unit eta counit eps
retraction R on RelArrow sub 0 Q { 0 |-> 0 ; 1 |-> 0 ; i |-> id_0 } q { 0 = id_0 ; 1 = i }
";

    #[test]
    fn parses_small_file() {
        let ws = parse(SMALL).unwrap();
        assert_eq!(ws.categories.len(), 2);
        assert_eq!(ws.categories["Chain2"].n_mor(), 6);
        assert!(ws.relcats["RelArrow"].rc.weq[0]);
        assert_eq!(ws.retractions["R"].data.side, Side::Left);
        assert!(ws.adjunctions["FG"].adj.left_is_fully_faithful());
    }

    #[test]
    fn round_trip() {
        let ws = parse(SMALL).unwrap();
        let text = serialize(&ws).unwrap();
        let back = parse(&text).unwrap();
        assert!(ws.extensionally_equal(&back), "{text}");
    }

    #[test]
    fn duplicate_category_is_a_parse_error() {
        let text = "category A\nobject x\nend\ncategory A\nobject y\nend\n";
        match parse(text) {
            Err(CatError::Parse { line, .. }) => assert_eq!(line, 4),
            r => panic!("unexpected {r:?}"),
        }
    }

    #[test]
    fn unknown_morphism_is_a_validation_error() {
        let text = SMALL.replace("mor i |-> c", "mor i |-> zz");
        match parse(&text) {
            Err(CatError::Validation { entity, source }) => {
                assert_eq!(entity, "functor F");
                assert!(matches!(*source, CatError::DanglingId(_)));
            }
            r => panic!("unexpected {r:?}"),
        }
    }

    #[test]
    fn unclosed_block_and_junk_are_reported() {
        assert!(matches!(parse("category A\nobject x\n"), Err(CatError::Parse { line: 1, .. })));
        assert!(matches!(parse("frobnicate\n"), Err(CatError::Parse { line: 1, .. })));
        assert!(matches!(parse("category A\nobject\nend"), Err(CatError::Parse { line: 2, .. })));
    }

    #[test]
    fn braces_may_span_lines() {
        let text = SMALL.replace(
            "retraction R on RelArrow sub 0 Q { 0 |-> 0 ; 1 |-> 0 ; i |-> id_0 } q { 0 = id_0 ; 1 = i }",
            "retraction R on RelArrow sub 0 Q {\n 0 |-> 0 ;\n 1 |-> 0 ; i |-> id_0\n} q { 0 = id_0 ; 1 = i }",
        );
        assert!(parse(&text).unwrap().retractions.contains_key("R"));
    }
}
