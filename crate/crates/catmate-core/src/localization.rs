//! Relative categories and their strict localizations, computed by a
//! coset-table enumeration of the presented category with inverted letters.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::cat::{Budget, FinCat, Mor, Obj};
use crate::enumerate::{enumerate_functors, enumerate_nats};
use crate::error::{shape, CatError, Result};
use crate::functor::{same_cat, Functor, NatTrans};
use crate::functor_cat::FunctorCat;

const UNSET: usize = usize::MAX;
const NODE_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct RelCat {
    pub name: String,
    pub cat: Arc<FinCat>,
    pub weq: Vec<bool>,
}

impl RelCat {
    /// Isomorphisms are always added.
    pub fn new(name: impl Into<String>, cat: Arc<FinCat>, weq: impl IntoIterator<Item = Mor>) -> RelCat {
        let mut w: Vec<bool> = cat.morphisms().map(|m| cat.is_iso(m)).collect();
        for m in weq {
            w[m] = true;
        }
        RelCat { name: name.into(), cat, weq: w }
    }

    pub fn minimal(cat: Arc<FinCat>) -> RelCat {
        RelCat::new(cat.name().to_string(), cat, [])
    }

    pub fn maximal(cat: Arc<FinCat>) -> RelCat {
        let all: Vec<Mor> = cat.morphisms().collect();
        RelCat::new(cat.name().to_string(), cat, all)
    }

    pub fn is_weq(&self, m: Mor) -> bool {
        self.weq[m]
    }

    pub fn only_isos(&self) -> bool {
        self.cat.morphisms().all(|m| !self.weq[m] || self.cat.is_iso(m))
    }

    /// Close under 2-out-of-3.
    pub fn saturate_2of3(&self) -> RelCat {
        let c = &*self.cat;
        let mut w = self.weq.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for f in c.morphisms() {
                for &g in c.out_of(c.cod(f)) {
                    let h = c.compose(g, f);
                    let n = [w[f], w[g], w[h]].iter().filter(|&&b| b).count();
                    if n == 2 {
                        w[f] = true;
                        w[g] = true;
                        w[h] = true;
                        changed = true;
                    }
                }
            }
        }
        RelCat { name: self.name.clone(), cat: self.cat.clone(), weq: w }
    }

    /// Pointwise weak equivalences on a diagram category over this one.
    pub fn pointwise(&self, fc: &FunctorCat) -> RelCat {
        let weq = fc.comps.iter().map(|cs| cs.iter().all(|&m| self.weq[m])).collect();
        RelCat { name: format!("{}^{}", self.name, fc.shape.name()), cat: fc.cat.clone(), weq }
    }

    /// Inherited weak equivalences on a subcategory given by a parent map.
    pub fn restrict(&self, cat: Arc<FinCat>, parent: &[Mor]) -> RelCat {
        let weq = parent.iter().map(|&m| self.weq[m]).collect();
        RelCat { name: cat.name().to_string(), cat, weq }
    }
}

/// Letter of a zig-zag word: a morphism or the formal inverse of a weak equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Fwd(Mor),
    Inv(Mor),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocStatus {
    Exact,
    Undecided { bound: usize },
}

#[derive(Clone, Debug)]
pub struct Localization {
    pub ho: Arc<FinCat>,
    pub h: Functor,
    /// Shortlex-least word per morphism of `ho`, letters in order of application.
    pub normal_forms: Vec<Vec<Letter>>,
}

#[derive(Clone, Debug)]
pub struct LocalizationResult {
    pub rc: RelCat,
    pub status: LocStatus,
    pub loc: Option<Localization>,
    pub bound: usize,
}

impl LocalizationResult {
    pub fn exact(&self) -> Result<&Localization> {
        match (&self.status, &self.loc) {
            (LocStatus::Exact, Some(l)) => Ok(l),
            _ => Err(CatError::UndecidedLocalization { bound: self.bound }),
        }
    }
    pub fn is_exact(&self) -> bool {
        self.status == LocStatus::Exact
    }
}

impl Localization {
    pub fn src(&self) -> &Arc<FinCat> {
        &self.h.src
    }

    /// Class of a zig-zag word (letters in order of application) starting at `start`.
    pub fn class_of(&self, start: Obj, word: &[Letter]) -> Option<Mor> {
        let ho = &*self.ho;
        let mut cur = ho.id(start);
        for &l in word {
            let step = match l {
                Letter::Fwd(m) => self.h.mor[m],
                Letter::Inv(w) => ho.inverse(self.h.mor[w])?,
            };
            cur = ho.try_compose(step, cur)?;
        }
        Some(cur)
    }

    pub fn word_name(&self, word: &[Letter]) -> String {
        word_name(self.src(), word)
    }
}

fn word_name(c: &FinCat, word: &[Letter]) -> String {
    let parts: Vec<String> = word
        .iter()
        .rev()
        .map(|l| match *l {
            Letter::Fwd(m) => c.mor_name(m).to_string(),
            Letter::Inv(w) => format!("{}^-1", c.mor_name(w)),
        })
        .collect();
    parts.join("*")
}

pub fn default_bound(rc: &RelCat) -> usize {
    2 * rc.cat.n_mor() + 4
}

/// Localize `rc` at the given word-length bound.
pub fn localize(rc: &RelCat, bound: usize) -> LocalizationResult {
    let c = rc.cat.clone();
    if rc.only_isos() {
        // nothing to invert: the localization is the category itself
        let normal_forms =
            c.morphisms().map(|m| if c.is_identity(m) { vec![] } else { vec![Letter::Fwd(m)] }).collect();
        let loc = Localization { ho: c.clone(), h: Functor::identity(&c), normal_forms };
        return LocalizationResult { rc: rc.clone(), status: LocStatus::Exact, loc: Some(loc), bound };
    }
    let mut tc = Table::new(rc, bound);
    tc.run();
    let undecided = LocalizationResult { rc: rc.clone(), status: LocStatus::Undecided { bound }, loc: None, bound };
    if tc.overflow || !tc.complete_and_consistent() {
        return undecided;
    }
    let (ho, h, normal_forms) = tc.assemble();
    let max_len = normal_forms.iter().map(|w| w.len()).max().unwrap_or(0);
    if max_len + 1 > bound {
        return undecided;
    }
    let loc = Localization { ho, h, normal_forms };
    LocalizationResult { rc: rc.clone(), status: LocStatus::Exact, loc: Some(loc), bound }
}

struct Table<'a> {
    c: &'a FinCat,
    arc: Arc<FinCat>,
    name: String,
    letters: Vec<(Letter, Obj, Obj)>,
    out_letters: Vec<Vec<usize>>,
    slot: Vec<usize>,
    rels: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
    obj: Vec<Obj>,
    root: Vec<Obj>,
    depth: Vec<usize>,
    next: Vec<Vec<usize>>,
    parent: Vec<usize>,
    bound: usize,
    changed: bool,
    overflow: bool,
}

impl<'a> Table<'a> {
    fn new(rc: &'a RelCat, bound: usize) -> Table<'a> {
        let c = &*rc.cat;
        let mut letters = Vec::new();
        for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
            letters.push((Letter::Fwd(m), c.dom(m), c.cod(m)));
        }
        for w in c.morphisms().filter(|&m| !c.is_identity(m) && rc.weq[m]) {
            letters.push((Letter::Inv(w), c.cod(w), c.dom(w)));
        }
        let mut out_letters = vec![Vec::new(); c.n_obj()];
        let mut slot = vec![0; letters.len()];
        for (k, l) in letters.iter().enumerate() {
            slot[k] = out_letters[l.1].len();
            out_letters[l.1].push(k);
        }
        let fwd: HashMap<Mor, usize> = letters
            .iter()
            .enumerate()
            .filter_map(|(k, l)| if let Letter::Fwd(m) = l.0 { Some((m, k)) } else { None })
            .collect();
        let word = |m: Mor| -> Vec<usize> {
            if c.is_identity(m) {
                vec![]
            } else {
                vec![fwd[&m]]
            }
        };
        let mut rels = vec![Vec::new(); c.n_obj()];
        for f in c.morphisms().filter(|&m| !c.is_identity(m)) {
            for &g in c.out_of(c.cod(f)).iter().filter(|&&g| !c.is_identity(g)) {
                rels[c.dom(f)].push((vec![fwd[&f], fwd[&g]], word(c.compose(g, f))));
            }
        }
        for (k, l) in letters.iter().enumerate() {
            if let Letter::Inv(w) = l.0 {
                rels[c.dom(w)].push((vec![fwd[&w], k], vec![]));
                rels[c.cod(w)].push((vec![k, fwd[&w]], vec![]));
            }
        }
        let mut t = Table {
            c,
            arc: rc.cat.clone(),
            name: format!("Ho({})", rc.name),
            letters,
            out_letters,
            slot,
            rels,
            obj: Vec::new(),
            root: Vec::new(),
            depth: Vec::new(),
            next: Vec::new(),
            parent: Vec::new(),
            bound,
            changed: false,
            overflow: false,
        };
        for o in c.objects() {
            t.add_node(o, o, 0);
        }
        t
    }

    fn add_node(&mut self, obj: Obj, root: Obj, depth: usize) -> usize {
        let n = self.obj.len();
        self.obj.push(obj);
        self.root.push(root);
        self.depth.push(depth);
        self.next.push(vec![UNSET; self.out_letters[obj].len()]);
        self.parent.push(n);
        if n >= NODE_CAP {
            self.overflow = true;
        }
        n
    }

    fn find(&mut self, mut n: usize) -> usize {
        while self.parent[n] != n {
            self.parent[n] = self.parent[self.parent[n]];
            n = self.parent[n];
        }
        n
    }

    fn edge(&mut self, n: usize, l: usize) -> Option<usize> {
        let e = self.next[n][self.slot[l]];
        (e != UNSET).then(|| self.find(e))
    }

    fn define(&mut self, n: usize, l: usize) -> Option<usize> {
        if self.depth[n] + 1 > self.bound {
            return None;
        }
        let (obj, root, d) = (self.letters[l].2, self.root[n], self.depth[n] + 1);
        let x = self.add_node(obj, root, d);
        self.next[n][self.slot[l]] = x;
        self.changed = true;
        Some(x)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, gone) = (a.min(b), a.max(b));
            self.parent[gone] = keep;
            self.depth[keep] = self.depth[keep].min(self.depth[gone]);
            self.changed = true;
            for s in 0..self.next[gone].len() {
                let e = self.next[gone][s];
                if e == UNSET {
                    continue;
                }
                let k = self.next[keep][s];
                if k == UNSET {
                    self.next[keep][s] = e;
                } else {
                    queue.push_back((k, e));
                }
            }
        }
    }

    fn trace(&mut self, n: usize, word: &[usize]) -> (usize, usize) {
        let mut cur = self.find(n);
        for (i, &l) in word.iter().enumerate() {
            match self.edge(cur, l) {
                Some(x) => cur = x,
                None => return (cur, i),
            }
        }
        (cur, word.len())
    }

    fn define_along(&mut self, n: usize, word: &[usize]) {
        let mut cur = self.find(n);
        for &l in word {
            cur = match self.edge(cur, l) {
                Some(x) => x,
                None => match self.define(cur, l) {
                    Some(x) => x,
                    None => return,
                },
            };
        }
    }

    fn scan(&mut self, n: usize, u: &[usize], v: &[usize], allow_define: bool) {
        let (pu, iu) = self.trace(n, u);
        let (pv, iv) = self.trace(n, v);
        if iu == u.len() && iv == v.len() {
            if pu != pv {
                self.merge(pu, pv);
            }
        } else if iu == u.len() && iv + 1 == v.len() {
            let s = self.slot[v[iv]];
            self.next[pv][s] = pu;
            self.changed = true;
        } else if iv == v.len() && iu + 1 == u.len() {
            let s = self.slot[u[iu]];
            self.next[pu][s] = pv;
            self.changed = true;
        } else if allow_define {
            self.define_along(n, u);
            self.define_along(n, v);
            self.scan(n, u, v, false);
        }
    }

    fn run(&mut self) {
        loop {
            self.changed = false;
            let mut idx = 0;
            while idx < self.obj.len() && !self.overflow {
                if self.find(idx) == idx {
                    let ls = self.out_letters[self.obj[idx]].clone();
                    for l in ls {
                        if self.edge(idx, l).is_none() {
                            self.define(idx, l);
                        }
                    }
                    let rels = self.rels[self.obj[idx]].clone();
                    for (u, v) in &rels {
                        if self.find(idx) != idx {
                            break;
                        }
                        self.scan(idx, u, v, true);
                    }
                }
                idx += 1;
            }
            if !self.changed || self.overflow {
                break;
            }
        }
    }

    fn live(&mut self) -> Vec<usize> {
        (0..self.obj.len()).filter(|&n| self.find(n) == n).collect()
    }

    fn complete_and_consistent(&mut self) -> bool {
        for n in self.live() {
            let ls = self.out_letters[self.obj[n]].clone();
            if ls.iter().any(|&l| self.edge(n, l).is_none()) {
                return false;
            }
            let rels = self.rels[self.obj[n]].clone();
            for (u, v) in &rels {
                let (pu, iu) = self.trace(n, u);
                let (pv, iv) = self.trace(n, v);
                if iu != u.len() || iv != v.len() || pu != pv {
                    return false;
                }
            }
        }
        true
    }

    fn assemble(&mut self) -> (Arc<FinCat>, Functor, Vec<Vec<Letter>>) {
        let c = self.c;
        // shortlex normal forms by breadth-first search from each root
        let mut nf: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut order: Vec<usize> = Vec::new();
        for o in c.objects() {
            let r = self.find(o);
            nf.insert(r, vec![]);
            let mut queue = VecDeque::from([r]);
            let mut group = vec![r];
            while let Some(n) = queue.pop_front() {
                let ls = self.out_letters[self.obj[n]].clone();
                for l in ls {
                    let x = self.edge(n, l).unwrap();
                    if !nf.contains_key(&x) {
                        let mut w = nf[&n].clone();
                        w.push(l);
                        nf.insert(x, w);
                        queue.push_back(x);
                        group.push(x);
                    }
                }
            }
            group.sort_by(|a, b| nf[a].len().cmp(&nf[b].len()).then_with(|| nf[a].cmp(&nf[b])));
            order.extend(group);
        }
        let index: HashMap<usize, Mor> = order.iter().enumerate().map(|(k, &n)| (n, k)).collect();
        let to_letters = |w: &[usize]| -> Vec<Letter> { w.iter().map(|&l| self.letters[l].0).collect() };
        let normal_forms: Vec<Vec<Letter>> = order.iter().map(|n| to_letters(&nf[n])).collect();
        let morphisms: Vec<(String, Obj, Obj)> = order
            .iter()
            .zip(&normal_forms)
            .map(|(&n, w)| {
                let name = if w.is_empty() { format!("id_{}", c.obj_name(self.root[n])) } else { word_name(c, w) };
                (name, self.root[n], self.obj[n])
            })
            .collect();
        let identity: Vec<Mor> = c.objects().map(|o| index[&self.find(o)]).collect();
        let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
        for (fi, &fnode) in order.iter().enumerate() {
            let b = self.obj[fnode];
            for (gi, &gnode) in order.iter().enumerate() {
                if self.root[gnode] != b {
                    continue;
                }
                let (end, k) = self.trace(fnode, &nf[&gnode]);
                debug_assert_eq!(k, nf[&gnode].len());
                table.insert((gi, fi), index[&end]);
            }
        }
        let ho = FinCat::build(
            self.name.clone(),
            c.objects().map(|o| c.obj_name(o).to_string()).collect(),
            morphisms,
            identity.clone(),
            |g, f| table.get(&(g, f)).copied(),
        )
        .expect("complete coset table yields a category");
        let fwd: HashMap<Mor, usize> = self
            .letters
            .iter()
            .enumerate()
            .filter_map(|(k, l)| if let Letter::Fwd(m) = l.0 { Some((m, k)) } else { None })
            .collect();
        let hmor: Vec<Mor> = c
            .morphisms()
            .map(|m| {
                if c.is_identity(m) {
                    identity[c.dom(m)]
                } else {
                    let r = self.find(c.dom(m));
                    let x = self.edge(r, fwd[&m]).unwrap();
                    index[&x]
                }
            })
            .collect();
        let ho = Arc::new(ho);
        let h = Functor { src: self.arc.clone(), tgt: ho.clone(), obj: c.objects().collect(), mor: hmor };
        (ho, h, normal_forms)
    }
}

/// `F` sends weak equivalences to weak equivalences.
pub fn is_homotopical(f: &Functor, src: &RelCat, tgt: &RelCat) -> bool {
    f.src.morphisms().all(|m| !src.weq[m] || tgt.weq[f.mor[m]])
}

/// First weak equivalence not preserved.
pub fn homotopical_witness(f: &Functor, src: &RelCat, tgt: &RelCat) -> Option<Mor> {
    f.src.morphisms().find(|&m| src.weq[m] && !tgt.weq[f.mor[m]])
}

/// Image of a word under `H_tgt . F`.
fn eval_word(f: &Functor, tgt: &Localization, start: Obj, word: &[Letter]) -> Option<Mor> {
    let ho = &*tgt.ho;
    let mut cur = ho.id(f.obj[start]);
    for &l in word {
        let step = match l {
            Letter::Fwd(m) => tgt.h.mor[f.mor[m]],
            Letter::Inv(w) => ho.inverse(tgt.h.mor[f.mor[w]])?,
        };
        cur = ho.try_compose(step, cur)?;
    }
    Some(cur)
}

/// `Ho F` with `Ho F . H_src = H_tgt . F`.
pub fn ho_functor(f: &Functor, src: &LocalizationResult, tgt: &LocalizationResult) -> Result<Functor> {
    if let Some(m) = homotopical_witness(f, &src.rc, &tgt.rc) {
        return Err(CatError::NotHomotopical { mor: f.src.mor_name(m).to_string() });
    }
    let (ls, lt) = (src.exact()?, tgt.exact()?);
    let ho = &ls.ho;
    let mor = ho
        .morphisms()
        .map(|m| {
            eval_word(f, lt, ho.dom(m), &ls.normal_forms[m])
                .ok_or_else(|| CatError::NotHomotopical { mor: ho.mor_name(m).to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(ls.ho.clone(), lt.ho.clone(), f.obj.clone(), mor)
}

/// The functor `Ho C -> E` induced by a `k: C -> E` that inverts weak equivalences.
pub fn induced_functor(res: &LocalizationResult, k: &Functor) -> Result<Functor> {
    require_same(&k.src, &res.rc.cat, "induced_functor")?;
    let loc = res.exact()?;
    let e = &*k.tgt;
    if let Some(m) = k.src.morphisms().find(|&m| res.rc.weq[m] && !e.is_iso(k.mor[m])) {
        return Err(CatError::NotHomotopical { mor: k.src.mor_name(m).to_string() });
    }
    let ho = &loc.ho;
    let mor = ho
        .morphisms()
        .map(|m| {
            let mut cur = e.id(k.obj[ho.dom(m)]);
            for &l in &loc.normal_forms[m] {
                let step = match l {
                    Letter::Fwd(x) => k.mor[x],
                    Letter::Inv(w) => e.inverse(k.mor[w]).expect("checked invertible"),
                };
                cur = e.compose(step, cur);
            }
            cur
        })
        .collect();
    Functor::new(ho.clone(), k.tgt.clone(), k.obj.clone(), mor)
}

/// `Ho tau` with components `H(tau_c)`.
pub fn ho_nat(tau: &NatTrans, src: &LocalizationResult, tgt: &LocalizationResult) -> Result<NatTrans> {
    let dom = ho_functor(&tau.dom, src, tgt)?;
    let cod = ho_functor(&tau.cod, src, tgt)?;
    let lt = tgt.exact()?;
    NatTrans::new(dom, cod, tau.comp.iter().map(|&m| lt.h.mor[m]).collect())
}

/// Verdict that `H(0)` is initial in the localization.
pub fn check_initial_preserved(res: &LocalizationResult) -> Result<bool> {
    let c = &res.rc.cat;
    let zero = c.initial_object().ok_or(CatError::NoInitialObject)?;
    let loc = res.exact()?;
    let h0 = loc.h.obj[zero];
    Ok(loc.ho.objects().all(|b| loc.ho.hom(h0, b).len() == 1))
}

/// Counts from the universal-property check against one probe category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub probe: String,
    pub ho_functors: usize,
    pub inverting_functors: usize,
    pub injective: bool,
    pub onto_inverting: bool,
    pub nat_pairs: usize,
    pub nat_bijective: bool,
}

impl UniversalReport {
    pub fn ok(&self) -> bool {
        self.injective && self.onto_inverting && self.nat_bijective
    }
}

/// Precomposition with `H` against a probe: a bijection onto the functors that
/// invert weak equivalences, and bijective on transformations.
pub fn universal_property_check(res: &LocalizationResult, probe: &Arc<FinCat>, bud: Budget) -> Result<UniversalReport> {
    let loc = res.exact()?;
    let rc = &res.rc;
    let from_ho = enumerate_functors(&loc.ho, probe, bud)?;
    let from_c = enumerate_functors(&rc.cat, probe, bud)?;
    let inverting: Vec<&Functor> =
        from_c.iter().filter(|k| rc.cat.morphisms().all(|m| !rc.weq[m] || probe.is_iso(k.mor[m]))).collect();
    let pulled: Vec<Functor> = from_ho.iter().map(|k| k.after(&loc.h)).collect::<Result<_>>()?;
    let mut sorted: Vec<&Vec<Mor>> = pulled.iter().map(|k| &k.mor).collect();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == pulled.len();
    let onto_inverting =
        inverting.len() == pulled.len() && inverting.iter().all(|k| pulled.iter().any(|p| p.mor == k.mor));
    let mut nat_pairs = 0;
    let mut nat_bijective = true;
    for (a, ka) in from_ho.iter().enumerate() {
        for (b, kb) in from_ho.iter().enumerate() {
            let upstairs = enumerate_nats(ka, kb, bud)?;
            let downstairs = enumerate_nats(&pulled[a], &pulled[b], bud)?;
            let mut images: Vec<Vec<Mor>> =
                upstairs.iter().map(|t| NatTrans::whisker_right(t, &loc.h).map(|w| w.comp)).collect::<Result<_>>()?;
            images.sort();
            images.dedup();
            nat_pairs += 1;
            if images.len() != upstairs.len() || images.len() != downstairs.len() {
                nat_bijective = false;
            }
        }
    }
    Ok(UniversalReport {
        probe: probe.name().to_string(),
        ho_functors: from_ho.len(),
        inverting_functors: inverting.len(),
        injective,
        onto_inverting,
        nat_pairs,
        nat_bijective,
    })
}

/// Whether two localizations have the same underlying `H` up to an
/// isomorphism of the localized categories fixing objects.
pub fn same_localization(a: &Localization, b: &Localization) -> Result<bool> {
    if !same_cat(a.src(), b.src()) || a.ho.n_mor() != b.ho.n_mor() {
        return Ok(false);
    }
    let mut map = vec![UNSET; a.ho.n_mor()];
    for m in a.ho.morphisms() {
        match b.class_of(a.ho.dom(m), &a.normal_forms[m]) {
            Some(x) => map[m] = x,
            None => return Ok(false),
        }
    }
    let f = Functor { src: a.ho.clone(), tgt: b.ho.clone(), obj: a.ho.objects().collect(), mor: map };
    Ok(f.check().is_ok() && f.inverse().is_some())
}

/// Relative category of a localization: images of weak equivalences become
/// the distinguished class.
pub fn image_relcat(loc: &Localization, rc: &RelCat) -> RelCat {
    let w: Vec<Mor> = rc.cat.morphisms().filter(|&m| rc.weq[m]).map(|m| loc.h.mor[m]).collect();
    RelCat::new(format!("{}'", loc.ho.name()), loc.ho.clone(), w)
}

pub fn require_same(a: &Arc<FinCat>, b: &Arc<FinCat>, what: &str) -> Result<()> {
    if same_cat(a, b) {
        Ok(())
    } else {
        Err(shape(format!("{what}: categories differ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rel_arrow() -> RelCat {
        let a = fixtures::arrow();
        let i = a.mor_id("i").unwrap();
        RelCat::new("RelArrow", a, [i])
    }

    #[test]
    fn rel_arrow_gives_walking_iso() {
        let r = localize(&rel_arrow(), 4);
        let loc = r.exact().unwrap();
        assert_eq!((loc.ho.n_obj(), loc.ho.n_mor()), (2, 4));
        loc.ho.check_laws().unwrap();
        assert!(loc.ho.is_iso(loc.h.mor[2]));
        let names: Vec<&str> = loc.ho.morphisms().map(|m| loc.ho.mor_name(m)).collect();
        assert_eq!(names, ["id_0", "i", "id_1", "i^-1"]);
    }

    #[test]
    fn bound_one_is_undecided() {
        assert_eq!(localize(&rel_arrow(), 1).status, LocStatus::Undecided { bound: 1 });
        assert!(localize(&rel_arrow(), 2).is_exact());
    }

    #[test]
    fn group_is_its_own_localization() {
        let g = fixtures::g1();
        let r = localize(&RelCat::maximal(g.clone()), 8);
        let loc = r.exact().unwrap();
        assert!(Arc::ptr_eq(&loc.ho, &g));
        assert!(loc.h.is_identity());
    }

    #[test]
    fn initial_object_checks() {
        let r = localize(&rel_arrow(), 4);
        assert!(check_initial_preserved(&r).unwrap());
        let c = localize(&RelCat::minimal(fixtures::chain2()), 4);
        assert!(check_initial_preserved(&c).unwrap());
        let g = localize(&RelCat::maximal(fixtures::g1()), 4);
        assert_eq!(check_initial_preserved(&g), Err(CatError::NoInitialObject));
    }

    #[test]
    fn homotopical_checks() {
        let r = rel_arrow();
        let id = Functor::identity(&r.cat);
        assert!(is_homotopical(&id, &r, &r));
        assert!(!is_homotopical(&id, &r, &RelCat::minimal(r.cat.clone())));
    }

    #[test]
    fn collapse_to_trivial_group() {
        let r = rel_arrow();
        let g0 = RelCat::maximal(fixtures::g0());
        let f = Functor::constant(&r.cat, &g0.cat, 0);
        let (lr, lg) = (localize(&r, 4), localize(&g0, 4));
        let hf = ho_functor(&f, &lr, &lg).unwrap();
        assert_eq!(hf.after(&lr.exact().unwrap().h).unwrap(), lg.exact().unwrap().h.after(&f).unwrap());
    }
}
