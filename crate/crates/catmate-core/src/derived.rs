//! Deformation retractions, derived functors certified by their Kan property,
//! derived adjunctions, composition of derived functors and derived mates.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::adjunction::{find_left_adjoint, verify_adjunction, Adjunction};
use crate::cat::{Budget, FinCat, Mor, Obj};
use crate::enumerate::{enumerate_functors, enumerate_nats, for_each_nat};
use crate::error::{shape, CatError, Result};
use crate::fixtures;
use crate::functor::{same_cat, Functor, NatTrans};
use crate::functor_cat::{functor_category, FunctorCat};
use crate::localization::{
    default_bound, ho_functor, homotopical_witness, induced_functor, localize, LocalizationResult, RelCat,
};
use crate::mates::{MateSquare, MateVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `q_C: QC -> C`, used for left derived functors.
    Left,
    /// `q_C: C -> QC`, used for right derived functors.
    Right,
}

/// Unvalidated retraction data. `Q` is given on objects and morphisms of `C`
/// with values in the full subcategory on `sub`; it need not be functorial.
#[derive(Clone, Debug)]
pub struct RetractionData {
    pub rc: RelCat,
    pub side: Side,
    pub sub: Vec<Obj>,
    pub q_obj: Vec<Obj>,
    pub q_mor: Vec<Mor>,
    pub q: Vec<Mor>,
}

impl RetractionData {
    /// `C_0 = C`, `Q = id`, `q = id`.
    pub fn trivial(rc: &RelCat, side: Side) -> RetractionData {
        let c = &rc.cat;
        RetractionData {
            rc: rc.clone(),
            side,
            sub: c.objects().collect(),
            q_obj: c.objects().collect(),
            q_mor: c.morphisms().collect(),
            q: c.objects().map(|o| c.id(o)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeformationRetraction {
    pub data: RetractionData,
    pub sub_cat: Arc<FinCat>,
    /// Parent morphism in `C` of each morphism of `C_0`.
    pub parent: Vec<Mor>,
    pub incl: Functor,
    pub sub_rc: RelCat,
    pub loc: Arc<LocalizationResult>,
    pub loc0: Arc<LocalizationResult>,
    /// `H_0 Q: C -> Ho C_0`.
    pub h0q: Functor,
    /// `Q~: Ho C -> Ho C_0`.
    pub q_tilde: Functor,
}

/// Check a retraction: weak equivalences `q_C`, the naturality squares of
/// `q`, and that `H_0 Q` is a functor inverting weak equivalences.
pub fn validate_retraction(data: RetractionData) -> Result<DeformationRetraction> {
    let c = data.rc.cat.clone();
    if data.q_obj.len() != c.n_obj() || data.q.len() != c.n_obj() || data.q_mor.len() != c.n_mor() {
        return Err(shape("retraction tables do not cover the category"));
    }
    let mut local = vec![None; c.n_obj()];
    for (k, &o) in data.sub.iter().enumerate() {
        if o >= c.n_obj() || local[o].is_some() {
            return Err(shape("bad subcategory object list"));
        }
        local[o] = Some(k);
    }
    for a in c.objects() {
        let qa = data.q_obj[a];
        if qa >= c.n_obj() || local[qa].is_none() {
            return Err(shape(format!("Q({}) is not in the subcategory", c.obj_name(a))));
        }
        let q = data.q[a];
        let ends = match data.side {
            Side::Left => (qa, a),
            Side::Right => (a, qa),
        };
        if q >= c.n_mor() || (c.dom(q), c.cod(q)) != ends {
            return Err(shape(format!("q at {} has the wrong endpoints", c.obj_name(a))));
        }
    }
    for f in c.morphisms() {
        let qf = data.q_mor[f];
        if qf >= c.n_mor() || c.dom(qf) != data.q_obj[c.dom(f)] || c.cod(qf) != data.q_obj[c.cod(f)] {
            return Err(shape(format!("Q({}) has the wrong endpoints", c.mor_name(f))));
        }
    }
    if let Some(a) = c.objects().find(|&a| !data.rc.weq[data.q[a]]) {
        return Err(CatError::QNotWeq { object: c.obj_name(a).to_string() });
    }
    for f in c.morphisms() {
        let (a, b) = (c.dom(f), c.cod(f));
        let commutes = match data.side {
            Side::Left => c.compose(data.q[b], data.q_mor[f]) == c.compose(f, data.q[a]),
            Side::Right => c.compose(data.q_mor[f], data.q[a]) == c.compose(data.q[b], f),
        };
        if !commutes {
            return Err(CatError::SquareFailure { mor: c.mor_name(f).to_string() });
        }
    }

    let (sub_cat, parent) = c.full_subcategory(format!("{}_0", c.name()), &data.sub);
    let sub_cat = Arc::new(sub_cat);
    let back: HashMap<Mor, Mor> = parent.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let incl = Functor::new(sub_cat.clone(), c.clone(), data.sub.clone(), parent.clone())?;
    let sub_rc = data.rc.restrict(sub_cat.clone(), &parent);
    let loc = Arc::new(localize(&data.rc, default_bound(&data.rc)));
    let loc0 = Arc::new(localize(&sub_rc, default_bound(&sub_rc)));
    let l0 = loc0.exact()?;
    loc.exact()?;

    let h0q_obj = c.objects().map(|a| l0.h.obj[local[data.q_obj[a]].expect("checked")]).collect();
    let h0q_mor = c.morphisms().map(|f| l0.h.mor[back[&data.q_mor[f]]]).collect();
    let h0q = Functor::new(c.clone(), l0.ho.clone(), h0q_obj, h0q_mor)
        .map_err(|e| CatError::HoQNotFunctorial(e.to_string()))?;
    if let Some(w) = c.morphisms().find(|&w| data.rc.weq[w] && !l0.ho.is_iso(h0q.mor[w])) {
        return Err(CatError::HoQNotFunctorial(format!("H_0 Q does not invert {}", c.mor_name(w))));
    }
    let q_tilde = induced_functor(&loc, &h0q)?;
    Ok(DeformationRetraction { data, sub_cat, parent, incl, sub_rc, loc, loc0, h0q, q_tilde })
}

impl DeformationRetraction {
    pub fn trivial(rc: &RelCat, side: Side) -> Result<DeformationRetraction> {
        validate_retraction(RetractionData::trivial(rc, side))
    }

    pub fn side(&self) -> Side {
        self.data.side
    }

    /// `Ho I: Ho C_0 -> Ho C`.
    pub fn ho_inclusion(&self) -> Result<Functor> {
        ho_functor(&self.incl, &self.loc0, &self.loc)
    }

    /// The families `H q_C` and `H_0 q_C` are natural isomorphisms
    /// `Ho I . Q~ ~ id` and `Q~ . Ho I ~ id`.
    pub fn equivalence_check(&self) -> Result<bool> {
        let (l, l0) = (self.loc.exact()?, self.loc0.exact()?);
        let hi = self.ho_inclusion()?;
        let iq = hi.after(&self.q_tilde)?;
        let qi = self.q_tilde.after(&hi)?;
        let back: HashMap<Mor, Mor> = self.parent.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let big: Vec<Mor> = self.data.q.iter().map(|&m| l.h.mor[m]).collect();
        let small: Vec<Mor> = self.data.sub.iter().map(|&o| l0.h.mor[back[&self.data.q[o]]]).collect();
        let (id, id0) = (Functor::identity(&l.ho), Functor::identity(&l0.ho));
        let (a, b) = match self.side() {
            Side::Left => (NatTrans::new(iq, id, big), NatTrans::new(qi, id0, small)),
            Side::Right => (NatTrans::new(id, iq, big), NatTrans::new(id0, qi, small)),
        };
        Ok(matches!((a, b), (Ok(a), Ok(b)) if a.is_iso() && b.is_iso()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedKind {
    Left,
    Right,
    TotalLeft,
    TotalRight,
}

impl DerivedKind {
    pub fn is_left(self) -> bool {
        matches!(self, DerivedKind::Left | DerivedKind::TotalLeft)
    }
    pub fn is_total(self) -> bool {
        matches!(self, DerivedKind::TotalLeft | DerivedKind::TotalRight)
    }
    pub fn as_str(self) -> &'static str {
        match self {
            DerivedKind::Left => "left",
            DerivedKind::Right => "right",
            DerivedKind::TotalLeft => "total-left",
            DerivedKind::TotalRight => "total-right",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Absoluteness {
    Unchecked,
    /// Every probe of the default family passed.
    Certified {
        probes: Vec<String>,
    },
    /// The listed probes passed but they do not cover the default family.
    Partial {
        probes: Vec<String>,
    },
    /// `Ho F` of a homotopical `F` with identity cell: absolute because
    /// precomposition with a localization is fully faithful. Not enumerated.
    Homotopical,
    Failed {
        probe: String,
        witness: String,
    },
}

impl Absoluteness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Absoluteness::Unchecked => "unchecked",
            Absoluteness::Certified { .. } => "certified",
            Absoluteness::Partial { .. } => "partial",
            Absoluteness::Homotopical => "homotopical",
            Absoluteness::Failed { .. } => "failed",
        }
    }
}

/// A derived functor with its cell. Left kinds carry `lambda: LF . H => T`,
/// right kinds `rho: T => RF . H`, where `T` is the base functor, or `H_D . F`
/// for total kinds.
#[derive(Clone, Debug)]
pub struct DerivedFunctorCert {
    pub base: Functor,
    pub derived: Functor,
    pub cell: NatTrans,
    pub kind: DerivedKind,
    pub absolute: Absoluteness,
    pub src: Arc<LocalizationResult>,
    pub tgt: Option<Arc<LocalizationResult>>,
}

impl DerivedFunctorCert {
    /// Localization functor of the domain.
    pub fn h(&self) -> &Functor {
        &self.src.loc.as_ref().expect("certs are built on exact localizations").h
    }

    /// Localization functor of the codomain (total kinds only).
    pub fn h_tgt(&self) -> Option<&Functor> {
        self.tgt.as_ref().map(|t| &t.loc.as_ref().expect("certs are built on exact localizations").h)
    }

    /// The functor the cell compares against.
    pub fn target(&self) -> Result<Functor> {
        match self.h_tgt() {
            Some(h) => h.after(&self.base),
            None => Ok(self.base.clone()),
        }
    }

    pub fn codomain(&self) -> &Arc<FinCat> {
        &self.derived.tgt
    }

    /// Shape and naturality of the cell.
    pub fn check_cell(&self) -> Result<()> {
        let dh = self.derived.after(self.h())?;
        let t = self.target()?;
        let (dom, cod) = if self.kind.is_left() { (dh, t) } else { (t, dh) };
        if self.cell.dom != dom || self.cell.cod != cod || self.cell.comp.len() != self.base.src.n_obj() {
            return Err(shape("cell has the wrong boundary"));
        }
        let e = &*self.cell.dom.tgt;
        for (a, &m) in self.cell.comp.iter().enumerate() {
            if m >= e.n_mor() || e.dom(m) != dom.obj[a] || e.cod(m) != cod.obj[a] {
                return Err(shape(format!("cell component at {} has the wrong endpoints", self.base.src.obj_name(a))));
            }
        }
        self.cell.check()
    }

    /// Mark a total cert of the form `(Ho F, id)` as absolute without
    /// enumeration. Fails unless the derived functor is the induced one.
    pub fn structural(mut self) -> Result<DerivedFunctorCert> {
        let tgt = self.tgt.clone().ok_or_else(|| shape("structural absoluteness needs a total cert"))?;
        if !self.cell.is_identity() || self.derived != ho_functor(&self.base, &self.src, &tgt)? {
            return Err(CatError::PreconditionFailure("cert is not the induced functor with identity cell".into()));
        }
        self.absolute = Absoluteness::Homotopical;
        Ok(self)
    }

    /// `(Y . LF, Y lambda)` for a plain cert and `Y: D -> E`.
    pub fn whisker(&self, y: &Functor) -> Result<DerivedFunctorCert> {
        if self.kind.is_total() {
            return Err(CatError::PreconditionFailure("whiskering needs a plain cert".into()));
        }
        Ok(DerivedFunctorCert {
            base: y.after(&self.base)?,
            derived: y.after(&self.derived)?,
            cell: NatTrans::whisker_left(y, &self.cell)?,
            kind: self.kind,
            absolute: Absoluteness::Unchecked,
            src: self.src.clone(),
            tgt: None,
        })
    }
}

/// Total derived functor of a homotopical functor: `Ho F` with identity cell.
pub fn homotopical_cert(
    f: &Functor,
    src: &Arc<LocalizationResult>,
    tgt: &Arc<LocalizationResult>,
    left: bool,
) -> Result<DerivedFunctorCert> {
    let derived = ho_functor(f, src, tgt)?;
    let t = tgt.exact()?.h.after(f)?;
    Ok(DerivedFunctorCert {
        base: f.clone(),
        derived,
        cell: NatTrans::identity(&t),
        kind: if left { DerivedKind::TotalLeft } else { DerivedKind::TotalRight },
        absolute: Absoluteness::Unchecked,
        src: src.clone(),
        tgt: Some(tgt.clone()),
    })
}

/// `LF = F~ . Q~` with cell `F q_C`, or the total version
/// `Ho(F|C_0) . Q~` with cell `H_D F q_C` when `tgt` is given.
pub fn derive_via_retraction(
    f: &Functor,
    ret: &DeformationRetraction,
    tgt: Option<&Arc<LocalizationResult>>,
) -> Result<DerivedFunctorCert> {
    if !same_cat(&f.src, &ret.data.rc.cat) {
        return Err(shape("functor and retraction live on different categories"));
    }
    let restricted = f.after(&ret.incl)?;
    let sub = &ret.sub_cat;
    let k = match tgt {
        Some(t) => {
            if !same_cat(&f.tgt, &t.rc.cat) {
                return Err(shape("target localization is over another category"));
            }
            if let Some(w) = homotopical_witness(&restricted, &ret.sub_rc, &t.rc) {
                return Err(CatError::PreconditionFailure(format!(
                    "F restricted to the subcategory does not preserve the weak equivalence {}",
                    sub.mor_name(w)
                )));
            }
            t.exact()?.h.after(&restricted)?
        }
        None => {
            if let Some(w) = sub.morphisms().find(|&w| ret.sub_rc.weq[w] && !f.tgt.is_iso(restricted.mor[w])) {
                return Err(CatError::PreconditionFailure(format!(
                    "F does not invert the weak equivalence {} of the subcategory",
                    sub.mor_name(w)
                )));
            }
            restricted
        }
    };
    let fbar = induced_functor(&ret.loc0, &k)?;
    let derived = fbar.after(&ret.q_tilde)?;
    let target = match tgt {
        Some(t) => t.exact()?.h.after(f)?,
        None => f.clone(),
    };
    let comp: Vec<Mor> = ret.data.q.iter().map(|&q| target.mor[q]).collect();
    let dh = derived.after(&ret.loc.exact()?.h)?;
    let (cell, kind) = match (ret.side(), tgt.is_some()) {
        (Side::Left, total) => {
            (NatTrans::new(dh, target, comp)?, if total { DerivedKind::TotalLeft } else { DerivedKind::Left })
        }
        (Side::Right, total) => {
            (NatTrans::new(target, dh, comp)?, if total { DerivedKind::TotalRight } else { DerivedKind::Right })
        }
    };
    Ok(DerivedFunctorCert {
        base: f.clone(),
        derived,
        cell,
        kind,
        absolute: Absoluteness::Unchecked,
        src: ret.loc.clone(),
        tgt: tgt.cloned(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanReport {
    /// The plain universal property against every functor into the codomain.
    pub universal: bool,
    /// Functors `X: Ho C -> T` checked for the plain property.
    pub candidates: usize,
    /// Transformations checked to factor uniquely, over all probes.
    pub factorizations: usize,
    pub witness: Option<String>,
    pub absolute: Absoluteness,
}

impl KanReport {
    pub fn passed(&self) -> bool {
        self.universal
            && matches!(
                self.absolute,
                Absoluteness::Certified { .. } | Absoluteness::Partial { .. } | Absoluteness::Homotopical
            )
    }
}

/// One, Arrow, WalkingIso and the codomain of the cert.
pub fn default_probes(cert: &DerivedFunctorCert) -> Vec<Arc<FinCat>> {
    vec![fixtures::one(), fixtures::arrow(), fixtures::walking_iso(), cert.codomain().clone()]
}

struct ProbeOutcome {
    functors: usize,
    factorizations: usize,
    witness: Option<String>,
}

/// For every `X: Ho C -> E`, the map `tau |-> Y lambda . tau_H` from
/// `Nat(X, Y.LF)` to `Nat(X.H, Y.T)` is a bijection (dually for right kinds).
fn check_against(cert: &DerivedFunctorCert, y: &Functor, bud: Budget) -> Result<ProbeOutcome> {
    let e = y.tgt.clone();
    let h = cert.h();
    let yd = y.after(&cert.derived)?;
    let yt = y.after(&cert.target()?)?;
    let cell: Vec<Mor> = cert.cell.comp.iter().map(|&m| y.mor[m]).collect();
    let left = cert.kind.is_left();
    let xs = enumerate_functors(&cert.derived.src, &e, bud)?;
    let mut factorizations = 0;
    for x in &xs {
        let xh = x.after(h)?;
        let (up, down) = if left {
            (enumerate_nats(x, &yd, bud)?, enumerate_nats(&xh, &yt, bud)?)
        } else {
            (enumerate_nats(&yd, x, bud)?, enumerate_nats(&yt, &xh, bud)?)
        };
        let images: HashSet<Vec<Mor>> = up
            .iter()
            .map(|t| {
                (0..cell.len())
                    .map(|a| {
                        let th = t.comp[h.obj[a]];
                        if left {
                            e.compose(cell[a], th)
                        } else {
                            e.compose(th, cell[a])
                        }
                    })
                    .collect()
            })
            .collect();
        factorizations += down.len();
        let problem = if images.len() != up.len() {
            Some("two transformations induce the same cell")
        } else if images.len() != down.len() {
            Some("some transformation does not factor through the cell")
        } else {
            None
        };
        if let Some(p) = problem {
            return Ok(ProbeOutcome {
                functors: xs.len(),
                factorizations,
                witness: Some(format!("{p}: probe {}, Y = {}, X = {}", e.name(), y.describe(), x.describe())),
            });
        }
    }
    Ok(ProbeOutcome { functors: xs.len(), factorizations, witness: None })
}

/// Check the Kan property of a cert by enumeration, then its absoluteness
/// against `probes` (the default family when absent).
pub fn verify_kan(cert: &DerivedFunctorCert, probes: Option<&[Arc<FinCat>]>, bud: Budget) -> Result<KanReport> {
    if let Err(e) = cert.check_cell() {
        let witness = format!("cell: {e}");
        return Ok(KanReport {
            universal: false,
            candidates: 0,
            factorizations: 0,
            witness: Some(witness.clone()),
            absolute: Absoluteness::Failed { probe: "cell".into(), witness },
        });
    }
    let plain = check_against(cert, &Functor::identity(cert.codomain()), bud)?;
    let mut factorizations = plain.factorizations;
    if let Some(w) = plain.witness {
        return Ok(KanReport {
            universal: false,
            candidates: plain.functors,
            factorizations,
            witness: Some(w.clone()),
            absolute: Absoluteness::Failed { probe: cert.codomain().name().to_string(), witness: w },
        });
    }
    let defaults = default_probes(cert);
    let probes: Vec<Arc<FinCat>> = probes.map(|p| p.to_vec()).unwrap_or_else(|| defaults.clone());
    let mut passed = Vec::new();
    for e in &probes {
        for y in enumerate_functors(cert.codomain(), e, bud)? {
            let out = check_against(cert, &y, bud)?;
            factorizations += out.factorizations;
            if let Some(w) = out.witness {
                return Ok(KanReport {
                    universal: true,
                    candidates: plain.functors,
                    factorizations,
                    witness: Some(w.clone()),
                    absolute: Absoluteness::Failed { probe: e.name().to_string(), witness: w },
                });
            }
        }
        passed.push(e.name().to_string());
    }
    let covered = defaults.iter().all(|d| probes.iter().any(|p| p.same_as(d)));
    let absolute =
        if covered { Absoluteness::Certified { probes: passed } } else { Absoluteness::Partial { probes: passed } };
    Ok(KanReport { universal: true, candidates: plain.functors, factorizations, witness: None, absolute })
}

/// The cert with its absoluteness verified against the default probes.
pub fn certify(mut cert: DerivedFunctorCert, bud: Budget) -> Result<(DerivedFunctorCert, KanReport)> {
    let report = verify_kan(&cert, None, bud)?;
    cert.absolute = report.absolute.clone();
    Ok((cert, report))
}

/// Transformations `dom => cod` whose component at each object satisfies
/// `eq`; returns the first one and how many exist (counting stops at 2).
fn solve(dom: &Functor, cod: &Functor, eq: impl Fn(Obj, Mor) -> bool) -> (Option<NatTrans>, usize) {
    let mut first = None;
    let mut count = 0;
    let _ = for_each_nat(dom, cod, eq, |t| {
        count += 1;
        if first.is_none() {
            first = Some(t);
        }
        if count >= 2 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (first, count)
}

fn solve_unique(dom: &Functor, cod: &Functor, what: &str, eq: impl Fn(Obj, Mor) -> bool) -> Result<NatTrans> {
    match solve(dom, cod, eq) {
        (Some(t), 1) => Ok(t),
        (_, n) => Err(CatError::NoSolution(format!("{what}: {} solutions", if n >= 2 { "several" } else { "no" }))),
    }
}

/// Objects of a localization are those of the category, so `H` is a bijection on objects.
fn preimage(h: &Functor) -> Vec<Obj> {
    let mut pre = vec![0; h.tgt.n_obj()];
    for (a, &x) in h.obj.iter().enumerate() {
        pre[x] = a;
    }
    pre
}

fn same_loc(a: &LocalizationResult, b: &LocalizationResult) -> bool {
    same_cat(&a.rc.cat, &b.rc.cat) && a.rc.weq == b.rc.weq
}

fn compatible(a: &DerivedFunctorCert, b: &DerivedFunctorCert) -> bool {
    a.kind == b.kind
        && same_loc(&a.src, &b.src)
        && match (&a.tgt, &b.tgt) {
            (Some(x), Some(y)) => same_loc(x, y),
            (None, None) => same_cat(a.codomain(), b.codomain()),
            _ => false,
        }
}

/// The unique `L sigma` with `sigma . lambda = lambda' . (L sigma)_H`, or the
/// right-handed `R sigma` with `(R sigma)_H . rho = rho' . sigma`.
pub fn derived_nat(sigma: &NatTrans, a: &DerivedFunctorCert, b: &DerivedFunctorCert) -> Result<NatTrans> {
    if !compatible(a, b) {
        return Err(shape("derived_nat needs certs of the same kind and localizations"));
    }
    if sigma.dom != a.base || sigma.cod != b.base {
        return Err(shape("transformation does not run between the base functors"));
    }
    let t = a.codomain().clone();
    let hat: Vec<Mor> = match a.h_tgt() {
        Some(hd) => sigma.comp.iter().map(|&m| hd.mor[m]).collect(),
        None => sigma.comp.clone(),
    };
    let pre = preimage(a.h());
    let (la, lb) = (&a.cell.comp, &b.cell.comp);
    if a.kind.is_left() {
        solve_unique(&a.derived, &b.derived, "derived transformation", |x, m| {
            let c = pre[x];
            t.compose(lb[c], m) == t.compose(hat[c], la[c])
        })
    } else {
        solve_unique(&a.derived, &b.derived, "derived transformation", |x, m| {
            let c = pre[x];
            t.compose(m, la[c]) == t.compose(lb[c], hat[c])
        })
    }
}

/// The comparison `theta: a.derived => b.derived` compatible with the cells,
/// when it exists uniquely and is invertible.
pub fn compare_certs(a: &DerivedFunctorCert, b: &DerivedFunctorCert) -> Result<Option<NatTrans>> {
    if !compatible(a, b) || a.base != b.base {
        return Err(shape("compare_certs needs certs for the same functor"));
    }
    let t = a.codomain().clone();
    let pre = preimage(a.h());
    let (la, lb) = (&a.cell.comp, &b.cell.comp);
    let left = a.kind.is_left();
    let (theta, n) = solve(&a.derived, &b.derived, |x, m| {
        let c = pre[x];
        if left {
            t.compose(lb[c], m) == la[c]
        } else {
            t.compose(m, la[c]) == lb[c]
        }
    });
    Ok(theta.filter(|t| n == 1 && t.is_iso()))
}

#[derive(Clone, Debug)]
pub struct DerivedAdjunction {
    pub adjunction: Adjunction,
    pub left: DerivedFunctorCert,
    pub right: DerivedFunctorCert,
    /// Size of the solution set of each compatibility square (capped at 2).
    pub unit_solutions: usize,
    pub counit_solutions: usize,
}

fn ensure_absolute(cert: DerivedFunctorCert, bud: Budget) -> Result<DerivedFunctorCert> {
    let cert = match cert.absolute {
        Absoluteness::Unchecked => certify(cert, bud)?.0,
        _ => cert,
    };
    if let Absoluteness::Failed { probe, witness } = &cert.absolute {
        return Err(CatError::PreconditionFailure(format!("cert is not absolute on probe {probe}: {witness}")));
    }
    Ok(cert)
}

/// `LF -| RG` with unit and counit solving the two compatibility squares
/// `RG lambda . eta'_H = rho_F . H eta` and `H eps . lambda_G = eps'_H . LF rho`.
pub fn derived_adjunction(
    adj: &Adjunction,
    cert_f: &DerivedFunctorCert,
    cert_g: &DerivedFunctorCert,
    bud: Budget,
) -> Result<DerivedAdjunction> {
    if cert_f.kind != DerivedKind::TotalLeft || cert_g.kind != DerivedKind::TotalRight {
        return Err(shape("derived_adjunction needs a total left and a total right cert"));
    }
    if cert_f.base != adj.left || cert_g.base != adj.right {
        return Err(shape("certs are not for the adjoint functors"));
    }
    let cert_f = ensure_absolute(cert_f.clone(), bud)?;
    let cert_g = ensure_absolute(cert_g.clone(), bud)?;
    let (lf, rg) = (&cert_f.derived, &cert_g.derived);
    let (hc, hd) = (cert_f.h(), cert_g.h());
    let (hoc, hod) = (lf.src.clone(), lf.tgt.clone());
    let (lam, rho) = (&cert_f.cell.comp, &cert_g.cell.comp);
    let (f, g) = (&adj.left, &adj.right);
    let (pc, pd) = (preimage(hc), preimage(hd));

    let id_c = Functor::identity(&hoc);
    let rglf = rg.after(lf)?;
    let unit_eq = |x: Obj, m: Mor| {
        let c = pc[x];
        hoc.compose(rg.mor[lam[c]], m) == hoc.compose(rho[f.obj[c]], hc.mor[adj.unit.comp[c]])
    };
    let (unit, unit_solutions) = solve(&id_c, &rglf, unit_eq);
    let id_d = Functor::identity(&hod);
    let lfrg = lf.after(rg)?;
    let counit_eq = |x: Obj, m: Mor| {
        let d = pd[x];
        hod.compose(m, lf.mor[rho[d]]) == hod.compose(hd.mor[adj.counit.comp[d]], lam[g.obj[d]])
    };
    let (counit, counit_solutions) = solve(&lfrg, &id_d, counit_eq);
    let (unit, counit) = match (unit, counit) {
        (Some(u), Some(e)) if unit_solutions == 1 && counit_solutions == 1 => (u, e),
        _ => {
            return Err(CatError::NoSolution(format!(
                "compatibility squares have {unit_solutions} and {counit_solutions} solutions"
            )))
        }
    };
    let adjunction = verify_adjunction(lf.clone(), rg.clone(), unit, counit)?;
    Ok(DerivedAdjunction { adjunction, left: cert_f, right: cert_g, unit_solutions, counit_solutions })
}

/// Total left derived functor of `F` from a left adjoint of `RG`, with cell
/// `eps'_{H F} . F'(rho_F) . F'(H eta)`.
pub fn derive_left_from_right_adjoint(adj: &Adjunction, cert_g: &DerivedFunctorCert) -> Result<DerivedFunctorCert> {
    if cert_g.kind != DerivedKind::TotalRight || cert_g.base != adj.right {
        return Err(shape("need a total right cert for the right adjoint"));
    }
    let rg = &cert_g.derived;
    let dot = find_left_adjoint(rg).ok_or_else(|| {
        CatError::NoLeftAdjoint(format!("{} -> {} has no left adjoint", rg.src.name(), rg.tgt.name()))
    })?;
    let fdot = &dot.left;
    let hd = cert_g.h();
    let hc = cert_g.h_tgt().ok_or_else(|| shape("total cert without target localization"))?;
    let f = &adj.left;
    let hod = &*fdot.tgt;
    let comp = f
        .src
        .objects()
        .map(|c| {
            let fc = f.obj[c];
            let m = hod.compose(fdot.mor[cert_g.cell.comp[fc]], fdot.mor[hc.mor[adj.unit.comp[c]]]);
            hod.compose(dot.counit.comp[hd.obj[fc]], m)
        })
        .collect();
    let cell = NatTrans::new(fdot.after(hc)?, hd.after(f)?, comp)?;
    Ok(DerivedFunctorCert {
        base: f.clone(),
        derived: fdot.clone(),
        cell,
        kind: DerivedKind::TotalLeft,
        absolute: Absoluteness::Unchecked,
        src: cert_g.tgt.clone().expect("total cert"),
        tgt: Some(cert_g.src.clone()),
    })
}

#[derive(Clone, Debug)]
pub struct ComposeVerdict {
    pub composes: bool,
    /// The composite with its composite cell.
    pub candidate: DerivedFunctorCert,
    pub report: KanReport,
    /// Whether a supplied cert for the composite agrees with the candidate.
    pub agrees_with_given: Option<bool>,
}

/// Whether `outer . inner` with the composite cell is a total derived functor
/// of the composite base functor.
pub fn composes_check(
    inner: &DerivedFunctorCert,
    outer: &DerivedFunctorCert,
    given: Option<&DerivedFunctorCert>,
    probes: Option<&[Arc<FinCat>]>,
    bud: Budget,
) -> Result<ComposeVerdict> {
    if !inner.kind.is_total() || inner.kind != outer.kind {
        return Err(shape("composes_check needs total certs of the same handedness"));
    }
    let mid = inner.tgt.as_ref().expect("total cert");
    if !same_loc(mid, &outer.src) {
        return Err(shape("certs do not share the middle localization"));
    }
    let base = outer.base.after(&inner.base)?;
    let derived = outer.derived.after(&inner.derived)?;
    let e = outer.codomain().clone();
    let h = inner.h();
    let ht = outer.h_tgt().expect("total cert");
    let comp: Vec<Mor> = inner
        .base
        .src
        .objects()
        .map(|c| {
            let ic = inner.base.obj[c];
            if inner.kind.is_left() {
                e.compose(outer.cell.comp[ic], outer.derived.mor[inner.cell.comp[c]])
            } else {
                e.compose(outer.derived.mor[inner.cell.comp[c]], outer.cell.comp[ic])
            }
        })
        .collect();
    let (dh, t) = (derived.after(h)?, ht.after(&base)?);
    let cell = if inner.kind.is_left() { NatTrans::new(dh, t, comp)? } else { NatTrans::new(t, dh, comp)? };
    let mut candidate = DerivedFunctorCert {
        base,
        derived,
        cell,
        kind: inner.kind,
        absolute: Absoluteness::Unchecked,
        src: inner.src.clone(),
        tgt: outer.tgt.clone(),
    };
    let report = verify_kan(&candidate, probes, bud)?;
    candidate.absolute = report.absolute.clone();
    let agrees_with_given = match given {
        Some(g) => Some(report.universal && compare_certs(&candidate, g)?.is_some()),
        None => None,
    };
    Ok(ComposeVerdict { composes: report.universal, candidate, report, agrees_with_given })
}

/// For derived adjunctions `LF -| RG` (inner) and `LF' -| RG'` (outer):
/// whether the left adjoints compose and whether the right adjoints compose.
pub fn adjoint_composition(
    inner: &DerivedAdjunction,
    outer: &DerivedAdjunction,
    bud: Budget,
) -> Result<(ComposeVerdict, ComposeVerdict)> {
    let none: &[Arc<FinCat>] = &[];
    let left = composes_check(&inner.left, &outer.left, None, Some(none), bud)?;
    let right = composes_check(&outer.right, &inner.right, None, Some(none), bud)?;
    Ok((left, right))
}

#[derive(Clone, Debug)]
pub struct DerivedMateVerdict {
    pub verdict: MateVerdict,
    pub l_sigma: NatTrans,
    pub r_tau: NatTrans,
    pub square: MateSquare,
}

/// Derive both cells of a mate square with homotopical legs and check that
/// the derived cells are mates in the square of derived adjunctions.
pub fn derived_mate_check(
    sq: &MateSquare,
    top: &DerivedAdjunction,
    bottom: &DerivedAdjunction,
    bud: Budget,
) -> Result<DerivedMateVerdict> {
    let sq = sq.mate()?;
    let (sigma, tau) = (sq.sigma.as_ref().expect("filled"), sq.tau.as_ref().expect("filled"));
    let loc = |c: &DerivedFunctorCert| c.tgt.clone().expect("total cert");
    let (lc, ld) = (top.left.src.clone(), loc(&top.left));
    let (lc2, ld2) = (bottom.left.src.clone(), loc(&bottom.left));
    let none: &[Arc<FinCat>] = &[];
    let x_left = homotopical_cert(&sq.x, &lc, &lc2, true)?;
    let x_right = homotopical_cert(&sq.x, &lc, &lc2, false)?;
    let y_left = homotopical_cert(&sq.y, &ld, &ld2, true)?;
    let y_right = homotopical_cert(&sq.y, &ld, &ld2, false)?;

    let fx = composes_check(&x_left, &bottom.left, None, Some(none), bud)?;
    if !fx.composes {
        return Err(CatError::CompositionHypothesisFailed(format!(
            "Ho X does not compose with the derived bottom left adjoint: {}",
            fx.report.witness.unwrap_or_default()
        )));
    }
    let gy = composes_check(&y_right, &bottom.right, None, Some(none), bud)?;
    if !gy.composes {
        return Err(CatError::CompositionHypothesisFailed(format!(
            "Ho Y does not compose with the derived bottom right adjoint: {}",
            gy.report.witness.unwrap_or_default()
        )));
    }
    let yf = composes_check(&top.left, &y_left, None, Some(none), bud)?;
    let xg = composes_check(&top.right, &x_right, None, Some(none), bud)?;
    let l_sigma = derived_nat(sigma, &fx.candidate, &yf.candidate)?;
    let r_tau = derived_nat(tau, &xg.candidate, &gy.candidate)?;
    let square = MateSquare::new(top.adjunction.clone(), bottom.adjunction.clone(), x_left.derived, y_left.derived)?
        .with_sigma(l_sigma.clone())?
        .with_tau(r_tau.clone())?;
    let verdict = square.check_mate_pair()?;
    Ok(DerivedMateVerdict { verdict, l_sigma, r_tau, square })
}

/// Apply a functorial `Q` pointwise to diagrams of shape `i`.
pub fn lift_retraction_pointwise(
    ret: &DeformationRetraction,
    i: &Arc<FinCat>,
    bud: Budget,
) -> Result<(DeformationRetraction, FunctorCat)> {
    let d = &ret.data;
    let c = d.rc.cat.clone();
    let q = Functor::new(c.clone(), c.clone(), d.q_obj.clone(), d.q_mor.clone())
        .map_err(|e| CatError::QNotFunctorial(e.to_string()))?;
    let fc = functor_category(i, &c, bud)?;
    let rc = d.rc.pointwise(&fc);
    let in_sub: HashSet<Obj> = d.sub.iter().copied().collect();
    let missing = || shape("pointwise image missing from the diagram category");
    let sub = fc.cat.objects().filter(|&x| fc.objs[x].obj.iter().all(|o| in_sub.contains(o))).collect();
    let q_obj = fc.objs.iter().map(|x| fc.obj_of(&q.after(x)?).ok_or_else(missing)).collect::<Result<Vec<_>>>()?;
    let q_mor = fc
        .cat
        .morphisms()
        .map(|m| {
            let comp: Vec<Mor> = fc.comps[m].iter().map(|&u| q.mor[u]).collect();
            fc.mor_of(q_obj[fc.cat.dom(m)], q_obj[fc.cat.cod(m)], &comp).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let qq = fc
        .cat
        .objects()
        .map(|x| {
            let comp: Vec<Mor> = fc.objs[x].obj.iter().map(|&o| d.q[o]).collect();
            let found = match d.side {
                Side::Left => fc.mor_of(q_obj[x], x, &comp),
                Side::Right => fc.mor_of(x, q_obj[x], &comp),
            };
            found.ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let data = RetractionData { rc, side: d.side, sub, q_obj, q_mor, q: qq };
    Ok((validate_retraction(data)?, fc))
}
