//! Finite categories with an explicit composition table.

use std::collections::HashMap;
use std::fmt;

use crate::error::{CatError, Result};

pub type Obj = usize;
pub type Mor = usize;

const NONE: u32 = u32::MAX;
const DENSE_LIMIT: usize = 1200;

/// Caps on the size of any constructed category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_objects: 500, max_morphisms: 5000 }
    }
}

impl Budget {
    pub fn check(&self, what: &str, objects: usize, morphisms: usize) -> Result<()> {
        if objects > self.max_objects {
            return Err(crate::error::budget(format!("{what}: {objects} objects"), self.max_objects));
        }
        if morphisms > self.max_morphisms {
            return Err(crate::error::budget(format!("{what}: {morphisms} morphisms"), self.max_morphisms));
        }
        Ok(())
    }

    pub fn scaled(&self, factor: usize) -> Budget {
        Budget { max_objects: self.max_objects * factor, max_morphisms: self.max_morphisms * factor }
    }
}

#[derive(Clone, Debug)]
enum Table {
    Dense { m: usize, data: Vec<u32> },
    Sparse(HashMap<(u32, u32), u32>),
}

impl Table {
    fn new(m: usize) -> Table {
        if m <= DENSE_LIMIT {
            Table::Dense { m, data: vec![NONE; m * m] }
        } else {
            Table::Sparse(HashMap::new())
        }
    }

    fn get(&self, g: Mor, f: Mor) -> Option<Mor> {
        match self {
            Table::Dense { m, data } => {
                let v = data[g * m + f];
                (v != NONE).then_some(v as usize)
            }
            Table::Sparse(map) => map.get(&(g as u32, f as u32)).map(|&v| v as usize),
        }
    }

    fn set(&mut self, g: Mor, f: Mor, h: Mor) {
        match self {
            Table::Dense { m, data } => data[g * *m + f] = h as u32,
            Table::Sparse(map) => {
                map.insert((g as u32, f as u32), h as u32);
            }
        }
    }
}

/// A finite category. Objects and morphisms are indices into declared-order
/// name tables; composition is total on composable pairs.
#[derive(Clone)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    identity: Vec<Mor>,
    hom: HashMap<(Obj, Obj), Vec<Mor>>,
    out: Vec<Vec<Mor>>,
    inc: Vec<Vec<Mor>>,
    table: Table,
    obj_ix: HashMap<String, Obj>,
    mor_ix: HashMap<String, Mor>,
}

/// Unvalidated category description as read from the text format.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    pub compose: Vec<(String, String, String)>,
}

impl FinCat {
    /// Assemble a category from indexed data. `compose(g, f)` is queried for
    /// every composable pair; identities must be listed in `identity`.
    pub fn build(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<(String, Obj, Obj)>,
        identity: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<FinCat> {
        let mut cat = FinCat::skeleton(name.into(), objects, morphisms, identity)?;
        for f in 0..cat.dom.len() {
            let b = cat.cod[f];
            for gi in 0..cat.out[b].len() {
                let g = cat.out[b][gi];
                let h = compose(g, f).ok_or_else(|| CatError::MissingComposite {
                    g: cat.mor_names[g].clone(),
                    f: cat.mor_names[f].clone(),
                })?;
                if h >= cat.dom.len() || cat.dom[h] != cat.dom[f] || cat.cod[h] != cat.cod[g] {
                    return Err(CatError::ShapeMismatch(format!(
                        "composite {} . {} has the wrong type",
                        cat.mor_names[g], cat.mor_names[f]
                    )));
                }
                cat.table.set(g, f, h);
            }
        }
        Ok(cat)
    }

    fn skeleton(
        name: String,
        objects: Vec<String>,
        morphisms: Vec<(String, Obj, Obj)>,
        identity: Vec<Mor>,
    ) -> Result<FinCat> {
        let n = objects.len();
        let m = morphisms.len();
        let mut obj_ix = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if obj_ix.insert(o.clone(), i).is_some() {
                return Err(CatError::DuplicateId(o.clone()));
            }
        }
        let mut mor_ix = HashMap::with_capacity(m);
        let mut mor_names = Vec::with_capacity(m);
        let mut dom = Vec::with_capacity(m);
        let mut cod = Vec::with_capacity(m);
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut hom: HashMap<(Obj, Obj), Vec<Mor>> = HashMap::new();
        for (i, (nm, d, c)) in morphisms.into_iter().enumerate() {
            if d >= n || c >= n {
                return Err(CatError::DanglingId(nm));
            }
            if mor_ix.insert(nm.clone(), i).is_some() {
                return Err(CatError::DuplicateId(nm));
            }
            mor_names.push(nm);
            dom.push(d);
            cod.push(c);
            out[d].push(i);
            inc[c].push(i);
            hom.entry((d, c)).or_default().push(i);
        }
        if identity.len() != n {
            return Err(CatError::ShapeMismatch("identity table size".into()));
        }
        for (o, &e) in identity.iter().enumerate() {
            if e >= m || dom[e] != o || cod[e] != o {
                return Err(CatError::IdentityViolation { mor: format!("identity of {}", objects[o]) });
            }
        }
        Ok(FinCat { name, objects, mor_names, dom, cod, identity, hom, out, inc, table: Table::new(m), obj_ix, mor_ix })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn with_name(mut self, name: impl Into<String>) -> FinCat {
        self.name = name.into();
        self
    }
    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }
    pub fn n_mor(&self) -> usize {
        self.dom.len()
    }
    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }
    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.dom.len()
    }
    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }
    pub fn mor_name(&self, f: Mor) -> &str {
        &self.mor_names[f]
    }
    pub fn obj_id(&self, name: &str) -> Option<Obj> {
        self.obj_ix.get(name).copied()
    }
    pub fn mor_id(&self, name: &str) -> Option<Mor> {
        self.mor_ix.get(name).copied()
    }
    pub fn dom(&self, f: Mor) -> Obj {
        self.dom[f]
    }
    pub fn cod(&self, f: Mor) -> Obj {
        self.cod[f]
    }
    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o]
    }
    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity[self.dom[f]] == f
    }
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        self.hom.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }
    /// Morphisms with the given domain, in declared order.
    pub fn out_of(&self, o: Obj) -> &[Mor] {
        &self.out[o]
    }
    /// Morphisms with the given codomain, in declared order.
    pub fn into(&self, o: Obj) -> &[Mor] {
        &self.inc[o]
    }

    /// `g . f`; panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("{}: {} . {} not composable", self.name, self.mor_names[g], self.mor_names[f]))
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if g >= self.n_mor() || f >= self.n_mor() || self.cod[f] != self.dom[g] {
            return None;
        }
        self.table.get(g, f)
    }

    /// Compose a path given in application order (first applied first).
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.try_compose(g, acc))
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.dom[f], self.cod[f]);
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identity[a] && self.compose(f, g) == self.identity[b])
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_preorder(&self) -> bool {
        self.hom.values().all(|v| v.len() <= 1)
    }

    pub fn initial_object(&self) -> Option<Obj> {
        self.objects().find(|&a| self.objects().all(|b| self.hom(a, b).len() == 1))
    }

    pub fn terminal_object(&self) -> Option<Obj> {
        self.objects().find(|&b| self.objects().all(|a| self.hom(a, b).len() == 1))
    }

    /// Exhaustive check of identity and associativity laws.
    pub fn check_laws(&self) -> Result<()> {
        for f in self.morphisms() {
            let (a, b) = (self.dom[f], self.cod[f]);
            if self.compose(f, self.identity[a]) != f || self.compose(self.identity[b], f) != f {
                return Err(CatError::IdentityViolation { mor: self.mor_names[f].clone() });
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.cod[f]) {
                let gf = self.compose(g, f);
                for &h in self.out_of(self.cod[g]) {
                    if self.compose(self.compose(h, g), f) != self.compose(h, gf) {
                        return Err(CatError::AssociativityViolation {
                            h: self.mor_names[h].clone(),
                            g: self.mor_names[g].clone(),
                            f: self.mor_names[f].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn opposite(&self) -> FinCat {
        let morphisms = self.morphisms().map(|f| (self.mor_names[f].clone(), self.cod[f], self.dom[f])).collect();
        FinCat::build(format!("{}^op", self.name), self.objects.clone(), morphisms, self.identity.clone(), |g, f| {
            self.try_compose(f, g)
        })
        .expect("opposite of a valid category")
    }

    /// Full subcategory on `objs` (kept in the given order). Returns the
    /// category and, for each of its morphisms, the parent morphism.
    pub fn full_subcategory(&self, name: impl Into<String>, objs: &[Obj]) -> (FinCat, Vec<Mor>) {
        let mut local = HashMap::new();
        for (i, &o) in objs.iter().enumerate() {
            local.insert(o, i);
        }
        let mut parent = Vec::new();
        let mut morphisms = Vec::new();
        let mut back = HashMap::new();
        for f in self.morphisms() {
            if let (Some(&d), Some(&c)) = (local.get(&self.dom[f]), local.get(&self.cod[f])) {
                back.insert(f, parent.len());
                parent.push(f);
                morphisms.push((self.mor_names[f].clone(), d, c));
            }
        }
        let identity = objs.iter().map(|&o| back[&self.identity[o]]).collect();
        let names = objs.iter().map(|&o| self.objects[o].clone()).collect();
        let cat = FinCat::build(name, names, morphisms, identity, |g, f| {
            self.try_compose(parent[g], parent[f]).and_then(|h| back.get(&h).copied())
        })
        .expect("full subcategory of a valid category");
        (cat, parent)
    }

    /// Structural equality of all tables (names included).
    pub fn same_as(&self, other: &FinCat) -> bool {
        if self.objects != other.objects
            || self.mor_names != other.mor_names
            || self.dom != other.dom
            || self.cod != other.cod
            || self.identity != other.identity
        {
            return false;
        }
        self.morphisms()
            .all(|f| self.out_of(self.cod[f]).iter().all(|&g| self.table.get(g, f) == other.table.get(g, f)))
    }

    pub fn to_raw(&self) -> RawCategory {
        let mut compose = Vec::new();
        for f in self.morphisms() {
            for &g in self.out_of(self.cod[f]) {
                let h = self.compose(g, f);
                compose.push((self.mor_names[g].clone(), self.mor_names[f].clone(), self.mor_names[h].clone()));
            }
        }
        RawCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms()
                .map(|f| {
                    (self.mor_names[f].clone(), self.objects[self.dom[f]].clone(), self.objects[self.cod[f]].clone())
                })
                .collect(),
            compose,
        }
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &FinCat) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({}: {} objects, {} morphisms)", self.name, self.n_obj(), self.n_mor())
    }
}

/// Validate a parsed description exhaustively. Identities named `id_<obj>`
/// are created unless declared; composites must all be listed.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat> {
    let mut obj_ix = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_ix.insert(o.as_str(), i).is_some() {
            return Err(CatError::DuplicateId(o.clone()));
        }
    }
    let mut morphisms: Vec<(String, Obj, Obj)> = Vec::new();
    let mut seen = HashMap::new();
    for (nm, d, c) in &raw.morphisms {
        let d = *obj_ix.get(d.as_str()).ok_or_else(|| CatError::DanglingId(d.clone()))?;
        let c = *obj_ix.get(c.as_str()).ok_or_else(|| CatError::DanglingId(c.clone()))?;
        if seen.insert(nm.clone(), morphisms.len()).is_some() {
            return Err(CatError::DuplicateId(nm.clone()));
        }
        morphisms.push((nm.clone(), d, c));
    }
    let mut identity = Vec::with_capacity(raw.objects.len());
    for (o, oname) in raw.objects.iter().enumerate() {
        let idn = format!("id_{oname}");
        match seen.get(&idn) {
            Some(&i) => {
                if morphisms[i].1 != o || morphisms[i].2 != o {
                    return Err(CatError::IdentityViolation { mor: idn });
                }
                identity.push(i);
            }
            None => {
                seen.insert(idn.clone(), morphisms.len());
                identity.push(morphisms.len());
                morphisms.push((idn, o, o));
            }
        }
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (g, f, h) in &raw.compose {
        let look = |s: &String| seen.get(s).copied().ok_or_else(|| CatError::DanglingId(s.clone()));
        let (gi, fi, hi) = (look(g)?, look(f)?, look(h)?);
        if morphisms[fi].2 != morphisms[gi].1 {
            return Err(CatError::ShapeMismatch(format!("{g} . {f} is not composable")));
        }
        if let Some(prev) = table.insert((gi, fi), hi) {
            if prev != hi {
                return Err(CatError::DuplicateId(format!("compose {g} . {f}")));
            }
        }
    }
    let cat =
        FinCat::build(raw.name.clone(), raw.objects.clone(), morphisms, identity, |g, f| table.get(&(g, f)).copied())?;
    cat.check_laws()?;
    Ok(cat)
}

/// Product category; objects and morphisms are pairs in lexicographic order.
pub fn product_category(i: &FinCat, j: &FinCat) -> FinCat {
    let nj = j.n_obj();
    let mj = j.n_mor();
    let objects = i
        .objects()
        .flat_map(|a| j.objects().map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", i.obj_name(a), j.obj_name(b)))
        .collect();
    let morphisms = i
        .morphisms()
        .flat_map(|f| j.morphisms().map(move |g| (f, g)))
        .map(|(f, g)| {
            let name = if i.is_identity(f) && j.is_identity(g) {
                format!("id_({},{})", i.obj_name(i.dom(f)), j.obj_name(j.dom(g)))
            } else {
                format!("({},{})", i.mor_name(f), j.mor_name(g))
            };
            (name, i.dom(f) * nj + j.dom(g), i.cod(f) * nj + j.cod(g))
        })
        .collect();
    let identity =
        i.objects().flat_map(|a| j.objects().map(move |b| (a, b))).map(|(a, b)| i.id(a) * mj + j.id(b)).collect();
    FinCat::build(format!("{}x{}", i.name(), j.name()), objects, morphisms, identity, |g, f| {
        let (g1, g2) = (g / mj, g % mj);
        let (f1, f2) = (f / mj, f % mj);
        Some(i.try_compose(g1, f1)? * mj + j.try_compose(g2, f2)?)
    })
    .expect("product of valid categories")
}

/// Discrete category on `n` objects named by `names`.
pub fn discrete(name: &str, names: Vec<String>) -> FinCat {
    let n = names.len();
    let morphisms = names.iter().enumerate().map(|(o, s)| (format!("id_{s}"), o, o)).collect();
    FinCat::build(name, names, morphisms, (0..n).collect(), |g, f| (g == f).then_some(g)).expect("discrete category")
}

/// Make `base` unique among `taken` by appending `#k`.
pub(crate) fn unique_name(base: String, taken: &mut std::collections::HashSet<String>) -> String {
    if taken.insert(base.clone()) {
        return base;
    }
    let mut k = 1;
    loop {
        let cand = format!("{base}#{k}");
        if taken.insert(cand.clone()) {
            return cand;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_raw() -> RawCategory {
        RawCategory {
            name: "Arrow".into(),
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![("i".into(), "0".into(), "1".into())],
            compose: vec![
                ("id_0".into(), "id_0".into(), "id_0".into()),
                ("id_1".into(), "id_1".into(), "id_1".into()),
                ("i".into(), "id_0".into(), "i".into()),
                ("id_1".into(), "i".into(), "i".into()),
            ],
        }
    }

    #[test]
    fn arrow_validates() {
        let c = validate_category(&arrow_raw()).unwrap();
        assert_eq!(c.n_mor(), 3);
        assert_eq!(c.initial_object(), Some(0));
        assert_eq!(c.terminal_object(), Some(1));
        assert!(c.is_preorder());
    }

    #[test]
    fn missing_entry_is_reported() {
        let mut raw = arrow_raw();
        raw.compose.retain(|(g, f, _)| !(g == "i" && f == "id_0"));
        assert!(matches!(validate_category(&raw), Err(CatError::MissingComposite { .. })));
    }

    #[test]
    fn dangling_reference() {
        let mut raw = arrow_raw();
        raw.morphisms.push(("j".into(), "0".into(), "7".into()));
        assert_eq!(validate_category(&raw), Err(CatError::DanglingId("7".into())));
    }

    #[test]
    fn products_count_pairs() {
        let a = validate_category(&arrow_raw()).unwrap();
        let p = product_category(&a, &a);
        assert_eq!((p.n_obj(), p.n_mor()), (4, 9));
        p.check_laws().unwrap();
    }

    #[test]
    fn opposite_is_involutive() {
        let a = validate_category(&arrow_raw()).unwrap();
        let back = a.opposite().opposite().with_name("Arrow");
        assert_eq!(back, a);
    }
}
