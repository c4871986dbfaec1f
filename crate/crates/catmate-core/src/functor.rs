//! Functors and natural transformations with extensional equality.

use std::fmt;
use std::sync::Arc;

use crate::cat::{FinCat, Mor, Obj};
use crate::error::{shape, CatError, Result};

pub fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct Functor {
    pub src: Arc<FinCat>,
    pub tgt: Arc<FinCat>,
    pub obj: Vec<Obj>,
    pub mor: Vec<Mor>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Functor) -> bool {
        self.obj == other.obj
            && self.mor == other.mor
            && same_cat(&self.src, &other.src)
            && same_cat(&self.tgt, &other.tgt)
    }
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<&str> = self.obj.iter().map(|&o| self.tgt.obj_name(o)).collect();
        write!(f, "Functor({} -> {}: [{}])", self.src.name(), self.tgt.name(), objs.join(","))
    }
}

impl Functor {
    /// Build and check functoriality exhaustively.
    pub fn new(src: Arc<FinCat>, tgt: Arc<FinCat>, obj: Vec<Obj>, mor: Vec<Mor>) -> Result<Functor> {
        let f = Functor { src, tgt, obj, mor };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&*self.src, &*self.tgt);
        if self.obj.len() != s.n_obj() || self.mor.len() != s.n_mor() {
            return Err(CatError::NotAFunctor("map sizes do not match the source".into()));
        }
        if self.obj.iter().any(|&o| o >= t.n_obj()) || self.mor.iter().any(|&m| m >= t.n_mor()) {
            return Err(CatError::NotAFunctor("image out of range".into()));
        }
        for f in s.morphisms() {
            let m = self.mor[f];
            if t.dom(m) != self.obj[s.dom(f)] || t.cod(m) != self.obj[s.cod(f)] {
                return Err(CatError::NotAFunctor(format!("{} is sent to an arrow of the wrong type", s.mor_name(f))));
            }
        }
        for o in s.objects() {
            if self.mor[s.id(o)] != t.id(self.obj[o]) {
                return Err(CatError::NotAFunctor(format!("identity of {} not preserved", s.obj_name(o))));
            }
        }
        for f in s.morphisms() {
            for &g in s.out_of(s.cod(f)) {
                if self.mor[s.compose(g, f)] != t.compose(self.mor[g], self.mor[f]) {
                    return Err(CatError::NotAFunctor(format!("{} . {} not preserved", s.mor_name(g), s.mor_name(f))));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: &Arc<FinCat>) -> Functor {
        Functor { src: c.clone(), tgt: c.clone(), obj: c.objects().collect(), mor: c.morphisms().collect() }
    }

    pub fn constant(src: &Arc<FinCat>, tgt: &Arc<FinCat>, o: Obj) -> Functor {
        Functor { src: src.clone(), tgt: tgt.clone(), obj: vec![o; src.n_obj()], mor: vec![tgt.id(o); src.n_mor()] }
    }

    /// Functor between categories whose target is a preorder, from its object map.
    pub fn from_object_map(src: &Arc<FinCat>, tgt: &Arc<FinCat>, obj: Vec<Obj>) -> Result<Functor> {
        let mut mor = Vec::with_capacity(src.n_mor());
        for f in src.morphisms() {
            let hom = tgt.hom(obj[src.dom(f)], obj[src.cod(f)]);
            if hom.len() != 1 {
                return Err(CatError::NotAFunctor(format!("no unique image for {}", src.mor_name(f))));
            }
            mor.push(hom[0]);
        }
        Functor::new(src.clone(), tgt.clone(), obj, mor)
    }

    /// `self . first`, i.e. apply `first` and then `self`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if !same_cat(&first.tgt, &self.src) {
            return Err(shape(format!("cannot compose {:?} after {:?}", self, first)));
        }
        Ok(Functor {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            obj: first.obj.iter().map(|&o| self.obj[o]).collect(),
            mor: first.mor.iter().map(|&m| self.mor[m]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.src, &self.tgt)
            && self.obj.iter().enumerate().all(|(i, &o)| i == o)
            && self.mor.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn is_full(&self) -> bool {
        let s = &*self.src;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let mut img: Vec<Mor> = s.hom(a, b).iter().map(|&f| self.mor[f]).collect();
                img.sort_unstable();
                img.dedup();
                img.len() == self.tgt.hom(self.obj[a], self.obj[b]).len()
            })
        })
    }

    pub fn is_faithful(&self) -> bool {
        let s = &*self.src;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let mut img: Vec<Mor> = s.hom(a, b).iter().map(|&f| self.mor[f]).collect();
                img.sort_unstable();
                img.dedup();
                img.len() == s.hom(a, b).len()
            })
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_full() && self.is_faithful()
    }

    /// Inverse of a functor that is bijective on objects and morphisms.
    pub fn inverse(&self) -> Option<Functor> {
        let (s, t) = (&*self.src, &*self.tgt);
        if s.n_obj() != t.n_obj() || s.n_mor() != t.n_mor() {
            return None;
        }
        let mut obj = vec![usize::MAX; t.n_obj()];
        for (a, &o) in self.obj.iter().enumerate() {
            if obj[o] != usize::MAX {
                return None;
            }
            obj[o] = a;
        }
        let mut mor = vec![usize::MAX; t.n_mor()];
        for (f, &m) in self.mor.iter().enumerate() {
            if mor[m] != usize::MAX {
                return None;
            }
            mor[m] = f;
        }
        Some(Functor { src: self.tgt.clone(), tgt: self.src.clone(), obj, mor })
    }

    pub fn on_op(&self, src_op: &Arc<FinCat>, tgt_op: &Arc<FinCat>) -> Functor {
        Functor { src: src_op.clone(), tgt: tgt_op.clone(), obj: self.obj.clone(), mor: self.mor.clone() }
    }

    pub fn describe(&self) -> String {
        let objs: Vec<String> = self
            .src
            .objects()
            .map(|o| format!("{}|->{}", self.src.obj_name(o), self.tgt.obj_name(self.obj[o])))
            .collect();
        objs.join(" ")
    }
}

#[derive(Clone)]
pub struct NatTrans {
    pub dom: Functor,
    pub cod: Functor,
    pub comp: Vec<Mor>,
}

impl PartialEq for NatTrans {
    fn eq(&self, other: &NatTrans) -> bool {
        self.comp == other.comp && self.dom == other.dom && self.cod == other.cod
    }
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<&str> = self.comp.iter().map(|&m| self.dom.tgt.mor_name(m)).collect();
        write!(f, "Nat[{}]", comps.join(","))
    }
}

impl NatTrans {
    pub fn new(dom: Functor, cod: Functor, comp: Vec<Mor>) -> Result<NatTrans> {
        let t = NatTrans { dom, cod, comp };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        let (f, g) = (&self.dom, &self.cod);
        if !same_cat(&f.src, &g.src) || !same_cat(&f.tgt, &g.tgt) {
            return Err(shape("transformation between non-parallel functors"));
        }
        let (s, t) = (&*f.src, &*f.tgt);
        if self.comp.len() != s.n_obj() {
            return Err(shape("component count"));
        }
        for a in s.objects() {
            let c = self.comp[a];
            if c >= t.n_mor() || t.dom(c) != f.obj[a] || t.cod(c) != g.obj[a] {
                return Err(CatError::NotNatural(format!("component at {} has the wrong type", s.obj_name(a))));
            }
        }
        for m in s.morphisms() {
            if let Some(w) = self.naturality_failure(m) {
                return Err(CatError::NotNatural(w));
            }
        }
        Ok(())
    }

    fn naturality_failure(&self, m: Mor) -> Option<String> {
        let s = &*self.dom.src;
        let t = &*self.dom.tgt;
        let (a, b) = (s.dom(m), s.cod(m));
        let lhs = t.compose(self.cod.mor[m], self.comp[a]);
        let rhs = t.compose(self.comp[b], self.dom.mor[m]);
        (lhs != rhs).then(|| s.mor_name(m).to_string())
    }

    pub fn identity(f: &Functor) -> NatTrans {
        NatTrans { dom: f.clone(), cod: f.clone(), comp: f.obj.iter().map(|&o| f.tgt.id(o)).collect() }
    }

    /// `self . first` (vertical).
    pub fn after(&self, first: &NatTrans) -> Result<NatTrans> {
        if first.cod != self.dom {
            return Err(shape("vertical composite of non-composable transformations"));
        }
        let t = &*self.dom.tgt;
        Ok(NatTrans {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            comp: self.comp.iter().zip(&first.comp).map(|(&g, &f)| t.compose(g, f)).collect(),
        })
    }

    /// Horizontal composite `self * inner`; for `self: G => G'` and `inner: F => F'`
    /// the component at c is `self_{F'c} . G(inner_c)`.
    pub fn hcomp(&self, inner: &NatTrans) -> Result<NatTrans> {
        let dom = self.dom.after(&inner.dom)?;
        let cod = self.cod.after(&inner.cod)?;
        let t = &*self.dom.tgt;
        let comp =
            inner.comp.iter().zip(&inner.cod.obj).map(|(&a, &fc)| t.compose(self.comp[fc], self.dom.mor[a])).collect();
        Ok(NatTrans { dom, cod, comp })
    }

    /// `K self`.
    pub fn whisker_left(k: &Functor, alpha: &NatTrans) -> Result<NatTrans> {
        Ok(NatTrans {
            dom: k.after(&alpha.dom)?,
            cod: k.after(&alpha.cod)?,
            comp: alpha.comp.iter().map(|&m| k.mor[m]).collect(),
        })
    }

    /// `alpha_K`.
    pub fn whisker_right(alpha: &NatTrans, k: &Functor) -> Result<NatTrans> {
        Ok(NatTrans {
            dom: alpha.dom.after(k)?,
            cod: alpha.cod.after(k)?,
            comp: k.obj.iter().map(|&o| alpha.comp[o]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.comp.iter().all(|&m| self.dom.tgt.is_identity(m))
    }

    pub fn is_iso(&self) -> bool {
        self.comp.iter().all(|&m| self.dom.tgt.is_iso(m))
    }

    /// First object whose component is not invertible.
    pub fn non_iso_at(&self) -> Option<Obj> {
        self.comp.iter().position(|&m| !self.dom.tgt.is_iso(m))
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let t = &*self.dom.tgt;
        let comp = self.comp.iter().map(|&m| t.inverse(m)).collect::<Option<Vec<_>>>()?;
        Some(NatTrans { dom: self.cod.clone(), cod: self.dom.clone(), comp })
    }

    pub fn on_op(&self, src_op: &Arc<FinCat>, tgt_op: &Arc<FinCat>) -> NatTrans {
        NatTrans { dom: self.cod.on_op(src_op, tgt_op), cod: self.dom.on_op(src_op, tgt_op), comp: self.comp.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhiskerKind {
    Vertical,
    Horizontal,
    LeftWhisker,
    RightWhisker,
}

#[derive(Clone, Copy, Debug)]
pub enum Cell<'a> {
    Nat(&'a NatTrans),
    Fun(&'a Functor),
}

/// Uniform entry point for the four 2-categorical composites. For the
/// whiskerings the functor goes on the side named by the kind.
pub fn compose_whisker(kind: WhiskerKind, a: Cell<'_>, b: Cell<'_>) -> Result<NatTrans> {
    match (kind, a, b) {
        (WhiskerKind::Vertical, Cell::Nat(x), Cell::Nat(y)) => x.after(y),
        (WhiskerKind::Horizontal, Cell::Nat(x), Cell::Nat(y)) => x.hcomp(y),
        (WhiskerKind::LeftWhisker, Cell::Fun(k), Cell::Nat(y)) => NatTrans::whisker_left(k, y),
        (WhiskerKind::RightWhisker, Cell::Nat(x), Cell::Fun(k)) => NatTrans::whisker_right(x, k),
        _ => Err(shape(format!("{kind:?} applied to the wrong kinds of cells"))),
    }
}
