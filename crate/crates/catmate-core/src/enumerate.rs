//! Backtracking enumeration of functors and natural transformations.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::cat::{Budget, FinCat, Mor, Obj};
use crate::error::{budget, Result};
use crate::functor::{Functor, NatTrans};

const UNSET: usize = usize::MAX;

/// Visit every functor `c -> d` in lexicographic order (objects first, then
/// non-identity morphisms in declared order).
pub fn for_each_functor(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    mut visit: impl FnMut(Functor) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = c.n_obj();
    let mut obj = vec![UNSET; n];
    // morphisms to check once both endpoints are placed: grouped by the later endpoint
    let mut arrows_at: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for f in c.morphisms() {
        if !c.is_identity(f) {
            arrows_at[c.dom(f).max(c.cod(f))].push(f);
        }
    }
    let gens: Vec<Mor> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
    // triples (g, f, h) with h = g . f, indexed by the position of the last-assigned member
    let mut pos = vec![UNSET; c.n_mor()];
    for (k, &f) in gens.iter().enumerate() {
        pos[f] = k;
    }
    let mut triples: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); gens.len()];
    for f in c.morphisms() {
        for &g in c.out_of(c.cod(f)) {
            let h = c.compose(g, f);
            let last = [g, f, h].iter().filter(|&&x| pos[x] != UNSET).map(|&x| pos[x]).max();
            if let Some(k) = last {
                triples[k].push((g, f, h));
            }
        }
    }
    let ctx = Ctx { c, d, arrows_at, gens, triples };
    ctx.objects(0, &mut obj, &mut visit)
}

struct Ctx<'a> {
    c: &'a Arc<FinCat>,
    d: &'a Arc<FinCat>,
    arrows_at: Vec<Vec<Mor>>,
    gens: Vec<Mor>,
    triples: Vec<Vec<(Mor, Mor, Mor)>>,
}

impl Ctx<'_> {
    fn objects(
        &self,
        k: usize,
        obj: &mut Vec<Obj>,
        visit: &mut impl FnMut(Functor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == obj.len() {
            let mut mor = vec![UNSET; self.c.n_mor()];
            for o in self.c.objects() {
                mor[self.c.id(o)] = self.d.id(obj[o]);
            }
            return self.morphisms(0, obj, &mut mor, visit);
        }
        for x in self.d.objects() {
            obj[k] = x;
            let ok = self.arrows_at[k].iter().all(|&f| !self.d.hom(obj[self.c.dom(f)], obj[self.c.cod(f)]).is_empty());
            if ok {
                self.objects(k + 1, obj, visit)?;
            }
        }
        obj[k] = UNSET;
        ControlFlow::Continue(())
    }

    fn morphisms(
        &self,
        k: usize,
        obj: &[Obj],
        mor: &mut Vec<Mor>,
        visit: &mut impl FnMut(Functor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == self.gens.len() {
            return visit(Functor { src: self.c.clone(), tgt: self.d.clone(), obj: obj.to_vec(), mor: mor.clone() });
        }
        let f = self.gens[k];
        let (a, b) = (obj[self.c.dom(f)], obj[self.c.cod(f)]);
        for &m in self.d.hom(a, b) {
            mor[f] = m;
            let ok = self.triples[k].iter().all(|&(g, f1, h)| self.d.compose(mor[g], mor[f1]) == mor[h]);
            if ok {
                self.morphisms(k + 1, obj, mor, visit)?;
            }
        }
        mor[f] = UNSET;
        ControlFlow::Continue(())
    }
}

/// All functors `c -> d`, failing when more than `budget.max_objects` exist.
pub fn enumerate_functors(c: &Arc<FinCat>, d: &Arc<FinCat>, bud: Budget) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    let flow = for_each_functor(c, d, |f| {
        if out.len() >= bud.max_objects {
            return ControlFlow::Break(());
        }
        out.push(f);
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(budget(format!("functors {} -> {}", c.name(), d.name()), bud.max_objects));
    }
    Ok(out)
}

/// Visit every transformation `f => g` whose components pass `keep`, in
/// lexicographic order of components.
pub fn for_each_nat(
    f: &Functor,
    g: &Functor,
    keep: impl Fn(Obj, Mor) -> bool,
    mut visit: impl FnMut(NatTrans) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let c = &*f.src;
    let d = &*f.tgt;
    let mut arrows_at: Vec<Vec<Mor>> = vec![Vec::new(); c.n_obj()];
    for m in c.morphisms() {
        if !c.is_identity(m) {
            arrows_at[c.dom(m).max(c.cod(m))].push(m);
        }
    }
    let mut comp = vec![UNSET; c.n_obj()];
    fn go(
        k: usize,
        f: &Functor,
        g: &Functor,
        d: &FinCat,
        arrows_at: &[Vec<Mor>],
        keep: &dyn Fn(Obj, Mor) -> bool,
        comp: &mut Vec<Mor>,
        visit: &mut dyn FnMut(NatTrans) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == comp.len() {
            return visit(NatTrans { dom: f.clone(), cod: g.clone(), comp: comp.clone() });
        }
        let c = &*f.src;
        for &m in d.hom(f.obj[k], g.obj[k]) {
            if !keep(k, m) {
                continue;
            }
            comp[k] = m;
            let ok = arrows_at[k].iter().all(|&u| {
                let (a, b) = (c.dom(u), c.cod(u));
                d.compose(g.mor[u], comp[a]) == d.compose(comp[b], f.mor[u])
            });
            if ok {
                go(k + 1, f, g, d, arrows_at, keep, comp, visit)?;
            }
        }
        comp[k] = UNSET;
        ControlFlow::Continue(())
    }
    go(0, f, g, d, &arrows_at, &keep, &mut comp, &mut visit)
}

/// All transformations `f => g`, capped at `budget.max_morphisms`.
pub fn enumerate_nats(f: &Functor, g: &Functor, bud: Budget) -> Result<Vec<NatTrans>> {
    enumerate_nats_filtered(f, g, bud, |_, _| true)
}

pub fn enumerate_nats_filtered(
    f: &Functor,
    g: &Functor,
    bud: Budget,
    keep: impl Fn(Obj, Mor) -> bool,
) -> Result<Vec<NatTrans>> {
    let mut out = Vec::new();
    let flow = for_each_nat(f, g, keep, |t| {
        if out.len() >= bud.max_morphisms {
            return ControlFlow::Break(());
        }
        out.push(t);
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(budget("natural transformations", bud.max_morphisms));
    }
    Ok(out)
}

/// All natural isomorphisms `f => g`.
pub fn enumerate_nat_isos(f: &Functor, g: &Functor, bud: Budget) -> Result<Vec<NatTrans>> {
    let d = f.tgt.clone();
    enumerate_nats_filtered(f, g, bud, move |_, m| d.is_iso(m))
}
