//! Adjunctions with certified triangle identities, and adjoint search.

use std::sync::Arc;

use crate::cat::{FinCat, Mor, Obj};
use crate::error::{shape, CatError, Result};
use crate::functor::{same_cat, Functor, NatTrans};

#[derive(Clone, Debug, PartialEq)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub unit: NatTrans,
    pub counit: NatTrans,
}

/// Check shapes, naturality and both triangle identities.
pub fn verify_adjunction(f: Functor, g: Functor, eta: NatTrans, eps: NatTrans) -> Result<Adjunction> {
    let (c, d) = (f.src.clone(), f.tgt.clone());
    if !same_cat(&g.src, &d) || !same_cat(&g.tgt, &c) {
        return Err(shape("left and right functors are not opposed"));
    }
    let id_c = Functor::identity(&c);
    let id_d = Functor::identity(&d);
    let gf = g.after(&f)?;
    let fg = f.after(&g)?;
    if eta.dom != id_c || eta.cod != gf {
        return Err(shape("unit must go id => GF"));
    }
    if eps.dom != fg || eps.cod != id_d {
        return Err(shape("counit must go FG => id"));
    }
    eta.check()?;
    eps.check()?;
    for a in c.objects() {
        let fa = f.obj[a];
        if d.compose(eps.comp[fa], f.mor[eta.comp[a]]) != d.id(fa) {
            return Err(CatError::TriangleFailure { object: c.obj_name(a).to_string() });
        }
    }
    for b in d.objects() {
        let gb = g.obj[b];
        if c.compose(g.mor[eps.comp[b]], eta.comp[gb]) != c.id(gb) {
            return Err(CatError::TriangleFailure { object: d.obj_name(b).to_string() });
        }
    }
    Ok(Adjunction { left: f, right: g, unit: eta, counit: eps })
}

/// Adjunction between functors into preorders, where unit and counit are
/// forced. Reports the first object at which one of them cannot exist.
pub fn poset_adjunction(f: Functor, g: Functor) -> Result<Adjunction> {
    let (c, d) = (f.src.clone(), f.tgt.clone());
    if !c.is_preorder() || !d.is_preorder() {
        return Err(shape("poset_adjunction needs preorders"));
    }
    let gf = g.after(&f)?;
    let fg = f.after(&g)?;
    let mut eta = Vec::new();
    for a in c.objects() {
        match c.hom(a, gf.obj[a]).first() {
            Some(&m) => eta.push(m),
            None => return Err(CatError::TriangleFailure { object: c.obj_name(a).to_string() }),
        }
    }
    let mut eps = Vec::new();
    for b in d.objects() {
        match d.hom(fg.obj[b], b).first() {
            Some(&m) => eps.push(m),
            None => return Err(CatError::TriangleFailure { object: d.obj_name(b).to_string() }),
        }
    }
    let unit = NatTrans { dom: Functor::identity(&c), cod: gf, comp: eta };
    let counit = NatTrans { dom: fg, cod: Functor::identity(&d), comp: eps };
    verify_adjunction(f, g, unit, counit)
}

impl Adjunction {
    pub fn src(&self) -> &Arc<FinCat> {
        &self.left.src
    }
    pub fn tgt(&self) -> &Arc<FinCat> {
        &self.left.tgt
    }

    pub fn identity(c: &Arc<FinCat>) -> Adjunction {
        let id = Functor::identity(c);
        let n = NatTrans::identity(&id);
        Adjunction { left: id.clone(), right: id, unit: n.clone(), counit: n }
    }

    /// `g |-> G(g) . eta_c` for `g: Fc -> d`.
    pub fn to_right(&self, c: Obj, g: Mor) -> Mor {
        self.left.src.compose(self.right.mor[g], self.unit.comp[c])
    }

    /// `f |-> eps_d . F(f)` for `f: c -> Gd`.
    pub fn to_left(&self, d: Obj, f: Mor) -> Mor {
        self.left.tgt.compose(self.counit.comp[d], self.left.mor[f])
    }

    /// The hom-set bijections `D(Fc, d) -> C(c, Gd)` for every pair.
    pub fn hom_table(&self) -> Vec<((Obj, Obj), Vec<(Mor, Mor)>)> {
        let (c, d) = (self.src(), self.tgt());
        let mut out = Vec::new();
        for a in c.objects() {
            for b in d.objects() {
                let pairs = d.hom(self.left.obj[a], b).iter().map(|&g| (g, self.to_right(a, g))).collect();
                out.push(((a, b), pairs));
            }
        }
        out
    }

    /// Whether the hom tables are mutually inverse bijections.
    pub fn hom_bijective(&self) -> bool {
        self.hom_table().iter().all(|&((a, b), ref pairs)| {
            pairs.len() == self.src().hom(a, self.right.obj[b]).len()
                && pairs.iter().all(|&(g, f)| self.to_left(b, f) == g)
        })
    }

    /// `(F2 . F1) -| (G1 . G2)` for `self = F1 -| G1` followed by `next = F2 -| G2`.
    pub fn then(&self, next: &Adjunction) -> Result<Adjunction> {
        let f = next.left.after(&self.left)?;
        let g = self.right.after(&next.right)?;
        let eta = NatTrans::whisker_left(&self.right, &NatTrans::whisker_right(&next.unit, &self.left)?)?
            .after(&self.unit)?;
        let eps = next
            .counit
            .after(&NatTrans::whisker_left(&next.left, &NatTrans::whisker_right(&self.counit, &next.right)?)?)?;
        verify_adjunction(f, g, eta, eps)
    }

    pub fn left_is_fully_faithful(&self) -> bool {
        self.unit.is_iso()
    }

    pub fn right_is_fully_faithful(&self) -> bool {
        self.counit.is_iso()
    }

    pub fn is_equivalence(&self) -> bool {
        self.unit.is_iso() && self.counit.is_iso()
    }
}

/// Search initial objects of the comma categories `c | G`; absent when one is missing.
pub fn find_left_adjoint(g: &Functor) -> Option<Adjunction> {
    let c = &g.tgt;
    let (fobj, eta): (Vec<Obj>, Vec<Mor>) =
        c.objects().map(|a| initial_under(g, a)).collect::<Option<Vec<_>>>()?.into_iter().unzip();
    crate::universal::left_adjoint_from_arrows(g, fobj, eta)
}

fn initial_under(g: &Functor, a: Obj) -> Option<(Obj, Mor)> {
    let (d, c) = (&*g.src, &*g.tgt);
    for d0 in d.objects() {
        for &f0 in c.hom(a, g.obj[d0]) {
            let universal = d.objects().all(|b| {
                c.hom(a, g.obj[b])
                    .iter()
                    .all(|&f| d.hom(d0, b).iter().filter(|&&h| c.compose(g.mor[h], f0) == f).count() == 1)
            });
            if universal {
                return Some((d0, f0));
            }
        }
    }
    None
}

/// Search terminal objects of the comma categories `F | d`.
pub fn find_right_adjoint(f: &Functor) -> Option<Adjunction> {
    let d = &f.tgt;
    let (gobj, eps): (Vec<Obj>, Vec<Mor>) =
        d.objects().map(|b| terminal_over(f, b)).collect::<Option<Vec<_>>>()?.into_iter().unzip();
    crate::universal::right_adjoint_from_arrows(f, gobj, eps)
}

fn terminal_over(f: &Functor, b: Obj) -> Option<(Obj, Mor)> {
    let (c, d) = (&*f.src, &*f.tgt);
    for c0 in c.objects() {
        for &e0 in d.hom(f.obj[c0], b) {
            let universal = c.objects().all(|a| {
                d.hom(f.obj[a], b)
                    .iter()
                    .all(|&e| c.hom(a, c0).iter().filter(|&&h| d.compose(e0, f.mor[h]) == e).count() == 1)
            });
            if universal {
                return Some((c0, e0));
            }
        }
    }
    None
}
