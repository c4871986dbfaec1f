//! Built-in fixture categories, constructed directly from their defining data.

use std::sync::Arc;

use crate::cat::{FinCat, Mor, Obj};
use crate::derived::{RetractionData, Side};
use crate::functor::{Functor, NatTrans};
use crate::localization::RelCat;

/// Poset from its non-identity relations `(name, dom, cod)`; composites are
/// forced because every hom-set has at most one element.
pub fn poset(name: &str, objects: &[&str], arrows: &[(&str, &str, &str)]) -> FinCat {
    let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let ix = |s: &str| objects.iter().position(|o| *o == s).expect("poset object");
    let mut morphisms: Vec<(String, Obj, Obj)> = Vec::new();
    for o in objects {
        morphisms.push((format!("id_{o}"), ix(o), ix(o)));
    }
    for (n, d, c) in arrows {
        morphisms.push((n.to_string(), ix(d), ix(c)));
    }
    let find = |d: Obj, c: Obj| morphisms.iter().position(|m| m.1 == d && m.2 == c);
    let table: Vec<Vec<Option<Mor>>> =
        (0..objects.len()).map(|d| (0..objects.len()).map(|c| find(d, c)).collect()).collect();
    let doms: Vec<Obj> = morphisms.iter().map(|m| m.1).collect();
    let cods: Vec<Obj> = morphisms.iter().map(|m| m.2).collect();
    FinCat::build(name, objs, morphisms.clone(), (0..objects.len()).collect(), |g, f| table[doms[f]][cods[g]])
        .expect("poset fixture")
}

pub fn one() -> Arc<FinCat> {
    Arc::new(poset("One", &["*"], &[]))
}

pub fn arrow() -> Arc<FinCat> {
    Arc::new(poset("Arrow", &["0", "1"], &[("i", "0", "1")]))
}

pub fn chain2() -> Arc<FinCat> {
    Arc::new(poset("Chain2", &["0", "1", "2"], &[("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")]))
}

/// `a <- b -> c`.
pub fn span() -> Arc<FinCat> {
    Arc::new(poset("Span", &["a", "b", "c"], &[("l", "b", "a"), ("r", "b", "c")]))
}

pub fn walking_iso() -> Arc<FinCat> {
    let objects = vec!["0".to_string(), "1".to_string()];
    let morphisms =
        vec![("id_0".to_string(), 0, 0), ("id_1".to_string(), 1, 1), ("u".to_string(), 0, 1), ("v".to_string(), 1, 0)];
    // every hom-set is a singleton, so composites are determined by endpoints
    let ends = [(0, 0), (1, 1), (0, 1), (1, 0)];
    Arc::new(
        FinCat::build("WalkingIso", objects, morphisms, vec![0, 1], |g, f| {
            ends.iter().position(|&e| e == (ends[f].0, ends[g].1))
        })
        .expect("walking iso"),
    )
}

/// Cyclic group of the given order as a one-object category.
pub fn cyclic(name: &str, order: usize) -> Arc<FinCat> {
    let mut morphisms = vec![("id_*".to_string(), 0, 0)];
    for k in 1..order {
        let n = if k == 1 { "s".to_string() } else { format!("s{k}") };
        morphisms.push((n, 0, 0));
    }
    Arc::new(
        FinCat::build(name, vec!["*".into()], morphisms, vec![0], |g, f| Some((g + f) % order)).expect("cyclic group"),
    )
}

pub fn g1() -> Arc<FinCat> {
    cyclic("G1", 2)
}

pub fn g0() -> Arc<FinCat> {
    cyclic("G0", 1)
}

/// Skeleton of finite sets of size at most two; morphisms are functions.
pub fn fs2() -> Arc<FinCat> {
    let objects: Vec<String> = (0..3).map(|k| format!("S{k}")).collect();
    let mut funcs: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for a in 0..3usize {
        for b in 0..3usize {
            let count = b.pow(a as u32);
            for code in 0..count {
                let vals = (0..a).map(|x| (code / b.pow(x as u32)) % b).collect();
                funcs.push((a, b, vals));
            }
        }
    }
    // identities first within each endomorphism set
    funcs.sort_by_key(|(a, b, v)| {
        let is_id = a == b && v.iter().enumerate().all(|(i, &x)| i == x);
        (*a, *b, !is_id, v.clone())
    });
    let name = |a: usize, b: usize, v: &[usize]| -> String {
        if a == b && v.iter().enumerate().all(|(i, &x)| i == x) {
            return format!("id_S{a}");
        }
        match (a, b) {
            (0, _) => format!("e{b}"),
            (1, 2) => format!("p{}", v[0]),
            (2, 1) => "t".into(),
            (2, 2) if v == [1, 0] => "sw".into(),
            (2, 2) => format!("k{}", v[0]),
            _ => unreachable!(),
        }
    };
    let morphisms: Vec<(String, Obj, Obj)> = funcs.iter().map(|(a, b, v)| (name(*a, *b, v), *a, *b)).collect();
    let identity = (0..3)
        .map(|a| {
            funcs.iter().position(|(x, y, v)| *x == a && *y == a && v.iter().enumerate().all(|(i, &z)| i == z)).unwrap()
        })
        .collect();
    Arc::new(
        FinCat::build("FS2", objects, morphisms, identity, |g, f| {
            let (a, _, fv) = &funcs[f];
            let (_, c, gv) = &funcs[g];
            let vals: Vec<usize> = fv.iter().map(|&x| gv[x]).collect();
            funcs.iter().position(|(x, y, v)| x == a && y == c && *v == vals)
        })
        .expect("FS2"),
    )
}

/// Left adjoint of the Galois connection `Arrow <-> Chain2`.
pub fn galois_left(arrow: &Arc<FinCat>, chain: &Arc<FinCat>) -> Functor {
    Functor::from_object_map(arrow, chain, vec![0, 2]).expect("galois left")
}

pub fn galois_right(chain: &Arc<FinCat>, arrow: &Arc<FinCat>) -> Functor {
    Functor::from_object_map(chain, arrow, vec![0, 0, 1]).expect("galois right")
}

/// The unique transformation between two functors into a preorder, if any.
pub fn poset_nat(f: &Functor, g: &Functor) -> Option<NatTrans> {
    let t = &*f.tgt;
    let comp = f.obj.iter().zip(&g.obj).map(|(&a, &b)| t.hom(a, b).first().copied()).collect::<Option<Vec<_>>>()?;
    NatTrans::new(f.clone(), g.clone(), comp).ok()
}

/// Arrow with `i` a weak equivalence.
pub fn rel_arrow() -> RelCat {
    let a = arrow();
    let i = a.mor_id("i").expect("arrow");
    RelCat::new("RelArrow", a, [i])
}

/// Left retraction of RelArrow onto `{0}`: `Q(1) = 0`, `q_1 = i`.
pub fn rel_arrow_left_retraction() -> RetractionData {
    let rc = rel_arrow();
    let a = rc.cat.clone();
    let i = a.mor_id("i").expect("arrow");
    RetractionData {
        rc,
        side: Side::Left,
        sub: vec![0],
        q_obj: vec![0, 0],
        q_mor: vec![a.id(0); a.n_mor()],
        q: vec![a.id(0), i],
    }
}

/// Right retraction of RelArrow onto `{1}`: `Q(0) = 1`, `q_0 = i`.
pub fn rel_arrow_right_retraction() -> RetractionData {
    let rc = rel_arrow();
    let a = rc.cat.clone();
    let i = a.mor_id("i").expect("arrow");
    RetractionData {
        rc,
        side: Side::Right,
        sub: vec![1],
        q_obj: vec![1, 1],
        q_mor: vec![a.id(1); a.n_mor()],
        q: vec![i, a.id(1)],
    }
}

/// The commuting square `Arrow x Arrow` as a poset.
pub fn square() -> Arc<FinCat> {
    Arc::new(poset(
        "Square",
        &["00", "01", "10", "11"],
        &[("u", "00", "01"), ("v", "00", "10"), ("w", "01", "11"), ("x", "10", "11"), ("d", "00", "11")],
    ))
}
