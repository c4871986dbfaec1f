//! Concrete functor categories `C^I` and their structure functors.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::cat::{product_category, unique_name, Budget, FinCat, Mor, Obj};
use crate::enumerate::{enumerate_functors, enumerate_nats};
use crate::error::{budget, shape, Result};
use crate::functor::{same_cat, Functor, NatTrans};

/// A (full subcategory of a) functor category. Object `k` of `cat` is the
/// functor `objs[k]`; morphism `m` has components `comps[m]`.
#[derive(Clone, Debug)]
pub struct FunctorCat {
    pub cat: Arc<FinCat>,
    pub shape: Arc<FinCat>,
    pub base: Arc<FinCat>,
    pub objs: Vec<Functor>,
    pub comps: Vec<Vec<Mor>>,
    obj_lookup: HashMap<Vec<Mor>, Obj>,
}

/// All functors `I -> C` and all transformations between them.
pub fn functor_category(i: &Arc<FinCat>, c: &Arc<FinCat>, bud: Budget) -> Result<FunctorCat> {
    let objs = enumerate_functors(i, c, bud)?;
    FunctorCat::on(format!("{}^{}", c.name(), i.name()), i, c, objs, bud)
}

impl FunctorCat {
    /// Full subcategory of `C^I` on the given functors (order kept, duplicates dropped).
    pub fn on(name: String, i: &Arc<FinCat>, c: &Arc<FinCat>, objs: Vec<Functor>, bud: Budget) -> Result<FunctorCat> {
        let mut seen = HashSet::new();
        let objs: Vec<Functor> = objs.into_iter().filter(|f| seen.insert(f.mor.clone())).collect();
        for f in &objs {
            if !same_cat(&f.src, i) || !same_cat(&f.tgt, c) {
                return Err(shape("functor category member with the wrong shape"));
            }
        }
        if objs.len() > bud.max_objects {
            return Err(budget(format!("objects of {name}"), bud.max_objects));
        }
        let mut taken = HashSet::new();
        let obj_names: Vec<String> = objs
            .iter()
            .map(|f| {
                let vals: Vec<&str> = f.obj.iter().map(|&o| c.obj_name(o)).collect();
                let base = format!("<{}>", vals.join(","));
                let dup = objs.iter().filter(|g| g.obj == f.obj).count() > 1;
                let base = if dup {
                    let ms: Vec<&str> =
                        i.morphisms().filter(|&u| !i.is_identity(u)).map(|u| c.mor_name(f.mor[u])).collect();
                    format!("<{}|{}>", vals.join(","), ms.join(","))
                } else {
                    base
                };
                unique_name(base, &mut taken)
            })
            .collect();
        let mut morphisms = Vec::new();
        let mut comps: Vec<Vec<Mor>> = Vec::new();
        let mut identity = vec![0; objs.len()];
        let mut mtaken = HashSet::new();
        for (a, fa) in objs.iter().enumerate() {
            for (b, fb) in objs.iter().enumerate() {
                let nats = enumerate_nats(fa, fb, bud)?;
                for t in nats {
                    let mname = if a == b && t.is_identity() {
                        identity[a] = morphisms.len();
                        format!("id_{}", obj_names[a])
                    } else {
                        let cs: Vec<&str> = t.comp.iter().map(|&m| c.mor_name(m)).collect();
                        format!("{{{}}}", cs.join(","))
                    };
                    morphisms.push((unique_name(mname, &mut mtaken), a, b));
                    comps.push(t.comp);
                    if morphisms.len() > bud.max_morphisms {
                        return Err(budget(format!("morphisms of {name}"), bud.max_morphisms));
                    }
                }
            }
        }
        let mut by_ends: HashMap<(Obj, Obj, &[Mor]), Mor> = HashMap::new();
        for (k, m) in morphisms.iter().enumerate() {
            by_ends.insert((m.1, m.2, comps[k].as_slice()), k);
        }
        let cat = FinCat::build(name, obj_names, morphisms.clone(), identity, |g, f| {
            let comp: Vec<Mor> = comps[g].iter().zip(&comps[f]).map(|(&x, &y)| c.compose(x, y)).collect();
            by_ends.get(&(morphisms[f].1, morphisms[g].2, comp.as_slice())).copied()
        })?;
        let obj_lookup = objs.iter().enumerate().map(|(k, f)| (f.mor.clone(), k)).collect();
        Ok(FunctorCat { cat: Arc::new(cat), shape: i.clone(), base: c.clone(), objs, comps, obj_lookup })
    }

    pub fn obj_of(&self, f: &Functor) -> Option<Obj> {
        self.obj_lookup.get(&f.mor).copied()
    }

    pub fn mor_of(&self, dom: Obj, cod: Obj, comp: &[Mor]) -> Option<Mor> {
        self.cat.hom(dom, cod).iter().copied().find(|&m| self.comps[m] == comp)
    }

    pub fn nat_of(&self, t: &NatTrans) -> Option<Mor> {
        self.mor_of(self.obj_of(&t.dom)?, self.obj_of(&t.cod)?, &t.comp)
    }

    pub fn nat(&self, m: Mor) -> NatTrans {
        NatTrans {
            dom: self.objs[self.cat.dom(m)].clone(),
            cod: self.objs[self.cat.cod(m)].clone(),
            comp: self.comps[m].clone(),
        }
    }

    /// Constant diagram functor `C -> C^I`; needs every constant functor present.
    pub fn delta(&self) -> Result<Functor> {
        let c = &self.base;
        let obj = c
            .objects()
            .map(|o| {
                self.obj_of(&Functor::constant(&self.shape, c, o)).ok_or_else(|| shape("constant diagram missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mor = c
            .morphisms()
            .map(|f| {
                let comp = vec![f; self.shape.n_obj()];
                self.mor_of(obj[c.dom(f)], obj[c.cod(f)], &comp).ok_or_else(|| shape("constant morphism missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor { src: c.clone(), tgt: self.cat.clone(), obj, mor })
    }

    /// Evaluation at an object of the shape.
    pub fn ev(&self, j: Obj) -> Functor {
        Functor {
            src: self.cat.clone(),
            tgt: self.base.clone(),
            obj: self.objs.iter().map(|f| f.obj[j]).collect(),
            mor: self.comps.iter().map(|cs| cs[j]).collect(),
        }
    }

    /// `ev_dom(u) => ev_cod(u)` with component `X(u)` at `X`.
    pub fn ev_mor(&self, u: Mor) -> NatTrans {
        let s = &self.shape;
        NatTrans { dom: self.ev(s.dom(u)), cod: self.ev(s.cod(u)), comp: self.objs.iter().map(|f| f.mor[u]).collect() }
    }

    /// `F^I: C^I -> D^I` landing in `target` (a functor category over `D`).
    pub fn postcompose(&self, f: &Functor, target: &FunctorCat) -> Result<Functor> {
        if !same_cat(&f.src, &self.base) || !same_cat(&f.tgt, &target.base) || !same_cat(&self.shape, &target.shape) {
            return Err(shape("postcompose: shapes do not match"));
        }
        let obj = self
            .objs
            .iter()
            .map(|x| {
                let y = f.after(x)?;
                target.obj_of(&y).ok_or_else(|| shape("postcompose: image diagram missing from target"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mor = self
            .cat
            .morphisms()
            .map(|m| {
                let comp: Vec<Mor> = self.comps[m].iter().map(|&x| f.mor[x]).collect();
                target
                    .mor_of(obj[self.cat.dom(m)], obj[self.cat.cod(m)], &comp)
                    .ok_or_else(|| shape("postcompose: image transformation missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor { src: self.cat.clone(), tgt: target.cat.clone(), obj, mor })
    }

    /// `alpha^I: F^I => G^I` with component `alpha_X` at `X`.
    pub fn postcompose_nat(&self, alpha: &NatTrans, target: &FunctorCat) -> Result<NatTrans> {
        let dom = self.postcompose(&alpha.dom, target)?;
        let cod = self.postcompose(&alpha.cod, target)?;
        let comp = self
            .objs
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let c: Vec<Mor> = x.obj.iter().map(|&o| alpha.comp[o]).collect();
                target.mor_of(dom.obj[k], cod.obj[k], &c).ok_or_else(|| shape("postcompose_nat: component missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NatTrans { dom, cod, comp })
    }

    /// `C^I -> C^K` by precomposition with `k: K -> I`.
    pub fn precompose(&self, k: &Functor, target: &FunctorCat) -> Result<Functor> {
        if !same_cat(&k.tgt, &self.shape) || !same_cat(&k.src, &target.shape) {
            return Err(shape("precompose: shapes do not match"));
        }
        let obj = self
            .objs
            .iter()
            .map(|x| target.obj_of(&x.after(k)?).ok_or_else(|| shape("precompose: image missing")))
            .collect::<Result<Vec<_>>>()?;
        let mor = self
            .cat
            .morphisms()
            .map(|m| {
                let comp: Vec<Mor> = k.obj.iter().map(|&o| self.comps[m][o]).collect();
                target
                    .mor_of(obj[self.cat.dom(m)], obj[self.cat.cod(m)], &comp)
                    .ok_or_else(|| shape("precompose: image missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor { src: self.cat.clone(), tgt: target.cat.clone(), obj, mor })
    }

    /// The isomorphism `C -> C^One` when the shape is terminal.
    pub fn from_one(&self) -> Result<Functor> {
        if self.shape.n_mor() != 1 {
            return Err(shape("shape is not the terminal category"));
        }
        self.delta()
    }
}

/// Uncurrying `outer = (inner)^I` with `inner = C^J` into `prod = C^{IxJ}`:
/// the diagram `X` goes to `(i, j) |-> X(i)(j)`.
pub fn uncurry(outer: &FunctorCat, inner: &FunctorCat, prod: &FunctorCat) -> Result<Functor> {
    let (i, j) = (&*outer.shape, &*inner.shape);
    let c = &inner.base;
    let nj = j.n_obj();
    let mj = j.n_mor();
    if !same_cat(&outer.base, &inner.cat) || prod.shape.n_obj() != i.n_obj() * nj || !same_cat(&prod.base, c) {
        return Err(shape("uncurry: shapes do not match"));
    }
    let pshape = prod.shape.clone();
    let obj = outer
        .objs
        .iter()
        .map(|x| {
            let ob: Vec<Obj> = (0..i.n_obj() * nj).map(|p| inner.objs[x.obj[p / nj]].obj[p % nj]).collect();
            let mor: Vec<Mor> = (0..i.n_mor() * mj)
                .map(|p| {
                    let (u, v) = (p / mj, p % mj);
                    let xi = &inner.objs[x.obj[i.dom(u)]];
                    c.compose(inner.comps[x.mor[u]][j.cod(v)], xi.mor[v])
                })
                .collect();
            let f = Functor { src: pshape.clone(), tgt: c.clone(), obj: ob, mor };
            prod.obj_of(&f).ok_or_else(|| shape("uncurry: diagram missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mor = outer
        .cat
        .morphisms()
        .map(|m| {
            let comp: Vec<Mor> = (0..i.n_obj() * nj).map(|p| inner.comps[outer.comps[m][p / nj]][p % nj]).collect();
            prod.mor_of(obj[outer.cat.dom(m)], obj[outer.cat.cod(m)], &comp)
                .ok_or_else(|| shape("uncurry: transformation missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor { src: outer.cat.clone(), tgt: prod.cat.clone(), obj, mor })
}

/// Product shape together with the full diagram category over it.
pub fn product_functor_category(i: &Arc<FinCat>, j: &Arc<FinCat>, c: &Arc<FinCat>, bud: Budget) -> Result<FunctorCat> {
    let p = Arc::new(product_category(i, j));
    functor_category(&p, c, bud)
}

/// The twist `(C^J)^I -> (C^I)^J`, obtained through both uncurryings.
pub fn twist(ji: (&FunctorCat, &FunctorCat), ij: (&FunctorCat, &FunctorCat), bud: Budget) -> Result<Functor> {
    let (outer_a, inner_a) = ji;
    let (outer_b, inner_b) = ij;
    let c = &inner_a.base;
    let i = &outer_a.shape;
    let j = &inner_a.shape;
    let p_ij = product_functor_category(i, j, c, bud)?;
    let p_ji = product_functor_category(j, i, c, bud)?;
    let ua = uncurry(outer_a, inner_a, &p_ij)?;
    let ub = uncurry(outer_b, inner_b, &p_ji)?;
    let swap = Functor::new(
        p_ji.shape.clone(),
        p_ij.shape.clone(),
        (0..p_ji.shape.n_obj()).map(|p| (p % i.n_obj()) * j.n_obj() + p / i.n_obj()).collect(),
        (0..p_ji.shape.n_mor()).map(|p| (p % i.n_mor()) * j.n_mor() + p / i.n_mor()).collect(),
    )?;
    let reindex = p_ij.precompose(&swap, &p_ji)?;
    let ub_inv = ub.inverse().ok_or_else(|| shape("uncurry is not bijective"))?;
    ub_inv.after(&reindex.after(&ua)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn arrow_to_arrow() {
        let a = fixtures::arrow();
        let fc = functor_category(&a, &a, Budget::default()).unwrap();
        assert_eq!((fc.cat.n_obj(), fc.cat.n_mor()), (3, 6));
        fc.cat.check_laws().unwrap();
    }

    #[test]
    fn one_shape_is_base() {
        let c = fixtures::chain2();
        let fc = functor_category(&fixtures::one(), &c, Budget::default()).unwrap();
        let iso = fc.from_one().unwrap();
        iso.check().unwrap();
        assert!(iso.inverse().is_some());
    }

    #[test]
    fn delta_and_ev() {
        let a = fixtures::arrow();
        let s = fixtures::span();
        let fc = functor_category(&s, &a, Budget::default()).unwrap();
        let d = fc.delta().unwrap();
        d.check().unwrap();
        for j in s.objects() {
            assert!(fc.ev(j).after(&d).unwrap().is_identity());
        }
    }

    #[test]
    fn twist_is_an_isomorphism() {
        let b = Budget::default();
        let (a, s, c) = (fixtures::arrow(), fixtures::span(), fixtures::arrow());
        let cj = functor_category(&a, &c, b).unwrap();
        let cji = functor_category(&s, &cj.cat, b).unwrap();
        let ci = functor_category(&s, &c, b).unwrap();
        let cij = functor_category(&a, &ci.cat, b).unwrap();
        let t = twist((&cji, &cj), (&cij, &ci), b).unwrap();
        t.check().unwrap();
        assert!(t.inverse().is_some());
    }
}
