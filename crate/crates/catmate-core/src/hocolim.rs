//! Homotopy colimits as left adjoints to `Ho Delta`: construction, Fubini,
//! transfer along evaluation, and pointwiseness in the index object.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::adjunction::{find_left_adjoint, verify_adjunction, Adjunction};
use crate::bc::bc_interchange;
use crate::cat::{product_category, Budget, FinCat, Mor, Obj};
use crate::derived::{
    derive_left_from_right_adjoint, derived_adjunction, homotopical_cert, DerivedAdjunction, DerivedFunctorCert,
};
use crate::enumerate::for_each_nat;
use crate::error::{shape, CatError, Result};
use crate::functor::{Functor, NatTrans};
use crate::functor_cat::{functor_category, uncurry, FunctorCat};
use crate::localization::{
    default_bound, ho_functor, ho_nat, homotopical_witness, localize, LocalizationResult, RelCat,
};
use crate::mates::{conjugate_iso_check, MateSquare};
use crate::universal::{colim_adjunction, evaluation_adjoints, left_adjoint_from_arrows, EvalAdjoints};

type Loc = Arc<LocalizationResult>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Derived from a strict colimit adjunction.
    DerivedColimit,
    /// Left adjoint of `Ho Delta` found by comma-category search.
    Searched,
    /// Assembled along `J_! -| ev_J -| J_*` from diagrams in `C^J`.
    Transferred,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::DerivedColimit => "derived-colimit",
            Provenance::Searched => "searched",
            Provenance::Transferred => "transferred",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct HocolimConfig {
    /// Word-length bound for every localization; `default_bound` when absent.
    pub bound: Option<usize>,
    pub bud: Budget,
    /// Skip the derived-colimit route.
    pub search_only: bool,
}


/// `hocolim_I -| Ho Delta` on `Ho(C^I) <-> Ho C`.
#[derive(Clone, Debug)]
pub struct HocolimStructure {
    pub rc: RelCat,
    pub shape: Arc<FinCat>,
    pub fc: FunctorCat,
    pub loc_base: Loc,
    pub loc_diag: Loc,
    pub delta: Functor,
    pub ho_delta: Functor,
    pub adjunction: Adjunction,
    pub provenance: Provenance,
    pub derived: Option<DerivedAdjunction>,
    /// Why earlier routes were not taken.
    pub notes: Vec<String>,
}

fn localize_exact(rc: &RelCat, bound: Option<usize>) -> Result<Loc> {
    let res = localize(rc, bound.unwrap_or_else(|| default_bound(rc)));
    res.exact()?;
    Ok(Arc::new(res))
}

/// `Ho F` with identity cell, marked absolute, when `F` is homotopical.
fn structural_cert(f: &Functor, src: &Loc, tgt: &Loc, left: bool) -> Result<Option<DerivedFunctorCert>> {
    if homotopical_witness(f, &src.rc, &tgt.rc).is_some() {
        return Ok(None);
    }
    Ok(Some(homotopical_cert(f, src, tgt, left)?.structural()?))
}

/// Derived adjunction for `adj` when the right adjoint is homotopical; the
/// left one is derived from a left adjoint of `Ho G` when it is not.
fn derive_with_homotopical_right(adj: &Adjunction, src: &Loc, tgt: &Loc, bud: Budget) -> Result<DerivedAdjunction> {
    let right = structural_cert(&adj.right, tgt, src, false)?.ok_or_else(|| {
        CatError::PreconditionFailure(format!(
            "{} -> {} is not homotopical",
            adj.right.src.name(),
            adj.right.tgt.name()
        ))
    })?;
    let left = match structural_cert(&adj.left, src, tgt, true)? {
        Some(c) => c,
        None => derive_left_from_right_adjoint(adj, &right)?,
    };
    derived_adjunction(adj, &left, &right, bud)
}

/// `F^I -| G^I` for `F -| G`, between diagram categories over the same shape.
pub fn postcompose_adjunction(adj: &Adjunction, src: &FunctorCat, tgt: &FunctorCat) -> Result<Adjunction> {
    let left = src.postcompose(&adj.left, tgt)?;
    let right = tgt.postcompose(&adj.right, src)?;
    let unit = src.postcompose_nat(&adj.unit, src)?;
    let counit = tgt.postcompose_nat(&adj.counit, tgt)?;
    verify_adjunction(left, right, unit, counit)
}

fn identity_between(a: &Functor, b: &Functor, what: &str) -> Result<NatTrans> {
    if a != b {
        return Err(CatError::MissingStructure(format!("{what}: the two functors differ")));
    }
    Ok(NatTrans::identity(a))
}

fn iso_adjunction(f: &Functor, g: &Functor) -> Result<Adjunction> {
    let gf = g.after(f)?;
    let fg = f.after(g)?;
    if !gf.is_identity() || !fg.is_identity() {
        return Err(shape("not mutually inverse"));
    }
    let unit = NatTrans { dom: Functor::identity(&f.src), cod: gf.clone(), comp: NatTrans::identity(&gf).comp };
    let counit = NatTrans { dom: fg.clone(), cod: Functor::identity(&f.tgt), comp: NatTrans::identity(&fg).comp };
    verify_adjunction(f.clone(), g.clone(), unit, counit)
}

/// Localize `C` and `C^I` and build the structure.
pub fn build_hocolim(rc: &RelCat, i: &Arc<FinCat>, cfg: &HocolimConfig) -> Result<Option<HocolimStructure>> {
    let loc_base = localize_exact(rc, cfg.bound)?;
    build_hocolim_over(&loc_base, i, cfg)
}

/// As `build_hocolim`, reusing an exact localization of the base.
pub fn build_hocolim_over(loc_base: &Loc, i: &Arc<FinCat>, cfg: &HocolimConfig) -> Result<Option<HocolimStructure>> {
    let rc = &loc_base.rc;
    let fc = functor_category(i, &rc.cat, cfg.bud)?;
    let loc_diag = localize_exact(&rc.pointwise(&fc), cfg.bound)?;
    assemble(fc, loc_base.clone(), loc_diag, cfg)
}

fn assemble(fc: FunctorCat, loc_base: Loc, loc_diag: Loc, cfg: &HocolimConfig) -> Result<Option<HocolimStructure>> {
    let delta = fc.delta()?;
    let ho_delta = ho_functor(&delta, &loc_base, &loc_diag)?;
    let mut notes = Vec::new();
    let make = |adjunction: Adjunction, provenance, derived, notes| HocolimStructure {
        rc: loc_base.rc.clone(),
        shape: fc.shape.clone(),
        fc: fc.clone(),
        loc_base: loc_base.clone(),
        loc_diag: loc_diag.clone(),
        delta: delta.clone(),
        ho_delta: ho_delta.clone(),
        adjunction,
        provenance,
        derived,
        notes,
    };
    if cfg.search_only {
        notes.push("derived-colimit route disabled".to_string());
    } else {
        match colim_adjunction(&fc)? {
            None => notes.push("some diagram has no strict colimit".to_string()),
            Some(colim) => match derive_with_homotopical_right(&colim, &loc_diag, &loc_base, cfg.bud) {
                Ok(d) => return Ok(Some(make(d.adjunction.clone(), Provenance::DerivedColimit, Some(d), notes))),
                Err(e) => notes.push(format!("colim is not derivable here: {e}")),
            },
        }
    }
    Ok(find_left_adjoint(&ho_delta).map(|adj| make(adj, Provenance::Searched, None, notes)))
}

impl HocolimStructure {
    pub fn hocolim(&self) -> &Functor {
        &self.adjunction.left
    }

    pub fn unit(&self) -> &NatTrans {
        &self.adjunction.unit
    }

    pub fn ho_base(&self) -> &Arc<FinCat> {
        &self.ho_delta.src
    }

    pub fn ho_diag(&self) -> &Arc<FinCat> {
        &self.ho_delta.tgt
    }

    /// `Ho Delta . H_C = H_{C^I} . Delta`.
    pub fn delta_square_commutes(&self) -> Result<bool> {
        let hb = &self.loc_base.exact()?.h;
        let hd = &self.loc_diag.exact()?.h;
        Ok(self.ho_delta.after(hb)? == hd.after(&self.delta)?)
    }

    /// Exhaustive factorization check: each `f: X -> Ho Delta c` factors
    /// through the unit at `X` exactly once. Returns the first failure.
    pub fn unit_universality(&self) -> Option<String> {
        let (hd, hb) = (&**self.ho_diag(), &**self.ho_base());
        let (l, d, eta) = (self.hocolim(), &self.ho_delta, self.unit());
        for x in hd.objects() {
            for c in hb.objects() {
                for &f in hd.hom(x, d.obj[c]) {
                    let n = hb.hom(l.obj[x], c).iter().filter(|&&g| hd.compose(d.mor[g], eta.comp[x]) == f).count();
                    if n != 1 {
                        return Some(format!(
                            "{} -> {} factors {n} times through the unit at {}",
                            hd.obj_name(x),
                            hd.mor_name(f),
                            hd.obj_name(x)
                        ));
                    }
                }
            }
        }
        None
    }

    /// The comparison `hocolim . H => H . colim` with component
    /// `eps_{H colim X} . hocolim(H eta_X)`, when strict colimits exist.
    pub fn strict_comparison(&self) -> Result<Option<NatTrans>> {
        let Some(colim) = colim_adjunction(&self.fc)? else { return Ok(None) };
        let hb = &self.loc_base.exact()?.h;
        let hd = &self.loc_diag.exact()?.h;
        let (l, eps) = (self.hocolim(), &self.adjunction.counit);
        let ho = &**self.ho_base();
        let comp = self
            .fc
            .cat
            .objects()
            .map(|x| ho.compose(eps.comp[hb.obj[colim.left.obj[x]]], l.mor[hd.mor[colim.unit.comp[x]]]))
            .collect();
        NatTrans::new(l.after(hd)?, hb.after(&colim.left)?, comp).map(Some)
    }
}

/// Fubini for `I` and `J`: the composite right adjoint `Ho Delta_J . Ho Delta_I`
/// against `Ho Delta_{JxI}` through uncurrying, and the conjugate iso.
#[derive(Clone, Debug)]
pub struct FubiniReport {
    /// Over `I`, on `C`.
    pub inner: HocolimStructure,
    /// Over `J`, on `C^I`.
    pub outer: HocolimStructure,
    /// Over `J x I`, on `C`.
    pub product: HocolimStructure,
    /// `Ho((C^I)^J) -> Ho(C^{JxI})`.
    pub ho_uncurry: Functor,
    pub uncurry_is_iso: bool,
    pub right_adjoints_equal: bool,
    /// `hocolim_{JxI} . Ho U => hocolim_I . hocolim_J`.
    pub comparison: Option<NatTrans>,
    /// `(comparison invertible, right-adjoint cell invertible)`.
    pub conjugate_iso: (bool, bool),
}

impl FubiniReport {
    pub fn holds(&self) -> bool {
        self.uncurry_is_iso && self.right_adjoints_equal && self.conjugate_iso == (true, true)
    }
}

pub fn fubini_check(rc: &RelCat, i: &Arc<FinCat>, j: &Arc<FinCat>, cfg: &HocolimConfig) -> Result<FubiniReport> {
    let missing = |what: &str| CatError::MissingStructure(format!("no homotopy colimits {what}"));
    let inner = build_hocolim(rc, i, cfg)?.ok_or_else(|| missing("over the inner shape"))?;
    let outer = build_hocolim_over(&inner.loc_diag, j, cfg)?.ok_or_else(|| missing("over the outer shape"))?;
    let p = Arc::new(product_category(j, i));
    let product = build_hocolim_over(&inner.loc_base, &p, cfg)?.ok_or_else(|| missing("over the product shape"))?;

    let u = uncurry(&outer.fc, &inner.fc, &product.fc)?;
    let u_inv = u.inverse().ok_or_else(|| shape("uncurrying is not bijective"))?;
    let ho_u = ho_functor(&u, &outer.loc_diag, &product.loc_diag)?;
    let ho_u_inv = ho_functor(&u_inv, &product.loc_diag, &outer.loc_diag)?;
    let iso = iso_adjunction(&ho_u, &ho_u_inv);

    let top = outer.adjunction.then(&inner.adjunction)?;
    let composite = ho_u_inv.after(&product.ho_delta)?;
    let right_adjoints_equal = top.right == composite;
    let (comparison, conjugate_iso) = match (&iso, right_adjoints_equal) {
        (Ok(iso), true) => {
            let bottom = iso.then(&product.adjunction)?;
            let x = Functor::identity(top.src());
            let y = Functor::identity(top.tgt());
            let sq = MateSquare::new(top.clone(), bottom, x, y)?;
            let tau = identity_between(&sq.tau_dom()?, &sq.tau_cod()?, "right adjoints")?;
            let sq = sq.with_tau(tau)?.mate()?;
            let verdict = conjugate_iso_check(&sq)?;
            (sq.sigma, verdict)
        }
        _ => (None, (false, false)),
    };
    Ok(FubiniReport {
        inner,
        outer,
        product,
        ho_uncurry: ho_u,
        uncurry_is_iso: iso.is_ok(),
        right_adjoints_equal,
        comparison,
        conjugate_iso,
    })
}

/// Outcome of transferring `I`-homotopy colimits from `C^J` to `C`.
#[derive(Clone, Debug)]
pub struct TransferReport {
    pub structure: HocolimStructure,
    /// The structure built directly on `C`, when one exists.
    pub direct: Option<HocolimStructure>,
    /// Canonical comparison `transferred => direct` of the two left adjoints.
    pub comparison: Option<NatTrans>,
    pub agrees: Option<bool>,
}

fn eval_adjoints(cj: &FunctorCat, jo: Obj) -> Result<(EvalAdjoints, Adjunction, Adjunction)> {
    let name = cj.shape.obj_name(jo).to_string();
    let ea = evaluation_adjoints(cj, jo)?;
    let shriek =
        ea.shriek.clone().ok_or_else(|| CatError::MissingStructure(format!("J_! at {name} does not exist")))?;
    let star = ea.star.clone().ok_or_else(|| CatError::MissingStructure(format!("J_* at {name} does not exist")))?;
    Ok((ea, shriek, star))
}

/// The left adjoint to `Ho Delta` on `Ho(C^I)` obtained as
/// `Ho ev_J . hocolim_I . L(J_!^I)`, with unit transported along
/// `ev_J . Delta . J_* = Delta . ev_J . J_* ~ Delta`.
pub fn transfer_hocolim(
    rc: &RelCat,
    i: &Arc<FinCat>,
    jcat: &Arc<FinCat>,
    jo: Obj,
    cfg: &HocolimConfig,
) -> Result<TransferReport> {
    if jcat.hom(jo, jo).len() != 1 {
        return Err(CatError::EndomorphismObstruction { object: jcat.obj_name(jo).to_string() });
    }
    let bud = cfg.bud;
    let cj = functor_category(jcat, &rc.cat, bud)?;
    let loc_base = localize_exact(rc, cfg.bound)?;
    let loc_j = localize_exact(&rc.pointwise(&cj), cfg.bound)?;
    let (_, shriek, star) = eval_adjoints(&cj, jo)?;
    let top = build_hocolim_over(&loc_j, i, cfg)?
        .ok_or_else(|| CatError::MissingStructure("diagrams in C^J have no homotopy colimits".into()))?;
    let ci = functor_category(i, &rc.cat, bud)?;
    let loc_ci = localize_exact(&rc.pointwise(&ci), cfg.bound)?;

    let shriek_i = postcompose_adjunction(&shriek, &ci, &top.fc)?;
    let d1 = derive_with_homotopical_right(&shriek_i, &loc_ci, &top.loc_diag, bud)?;
    let d3 = derive_with_homotopical_right(&star, &loc_j, &loc_base, bud)
        .map_err(|e| CatError::MissingStructure(format!("ev_J -| J_* is not derivable: {e}")))?;
    let a = d1.adjunction.then(&top.adjunction)?.then(&d3.adjunction)?;

    let delta_c = ci.delta()?;
    let ho_delta_c = ho_functor(&delta_c, &loc_base, &loc_ci)?;
    let phi = ho_nat(&NatTrans::whisker_left(&delta_c, &star.counit)?, &loc_base, &loc_ci)?;
    if phi.dom != a.right {
        return Err(CatError::MissingStructure("composite right adjoint is not Ho(Delta ev_J J_*)".into()));
    }
    if !phi.is_iso() {
        return Err(CatError::MissingStructure("ev_J J_* is not isomorphic to the identity".into()));
    }
    let hoci = &*ho_delta_c.tgt;
    let eta: Vec<Mor> = hoci.objects().map(|x| hoci.compose(phi.comp[a.left.obj[x]], a.unit.comp[x])).collect();
    let adjunction = left_adjoint_from_arrows(&ho_delta_c, a.left.obj.clone(), eta)
        .ok_or_else(|| CatError::MissingStructure("transported unit is not universal".into()))?;
    if adjunction.left != a.left {
        return Err(CatError::MissingStructure("transported left adjoint differs from the composite".into()));
    }
    let structure = HocolimStructure {
        rc: rc.clone(),
        shape: i.clone(),
        fc: ci.clone(),
        loc_base: loc_base.clone(),
        loc_diag: loc_ci.clone(),
        delta: delta_c,
        ho_delta: ho_delta_c,
        adjunction,
        provenance: Provenance::Transferred,
        derived: None,
        notes: Vec::new(),
    };
    let direct = assemble(ci, loc_base, loc_ci, cfg)?;
    let (comparison, agrees) = match &direct {
        Some(d) => {
            let x = Functor::identity(d.ho_diag());
            let y = Functor::identity(d.ho_base());
            let sq = MateSquare::new(d.adjunction.clone(), structure.adjunction.clone(), x, y)?;
            let tau = identity_between(&sq.tau_dom()?, &sq.tau_cod()?, "Ho Delta")?;
            let sq = sq.with_tau(tau)?.mate()?;
            let (s, t) = conjugate_iso_check(&sq)?;
            (sq.sigma, Some(s && t))
        }
        None => (None, None),
    };
    Ok(TransferReport { structure, direct, comparison, agrees })
}

/// Verdict on full faithfulness of a derived left adjoint.
#[derive(Clone, Debug)]
pub struct FfVerdict {
    pub fully_faithful: bool,
    /// `rho_F . H eta = (RG) lambda . eta'_H` at every object.
    pub equation_holds: bool,
    pub witness: Option<String>,
    pub derived: DerivedAdjunction,
}

/// Derived unit of `F -| G` invertible, for `F` fully faithful and `G`
/// homotopical.
pub fn ff_derived_left(adj: &Adjunction, src: &Loc, tgt: &Loc, bud: Budget) -> Result<FfVerdict> {
    if !adj.left_is_fully_faithful() {
        return Err(CatError::PreconditionFailure("the left adjoint is not fully faithful".into()));
    }
    let d = derive_with_homotopical_right(adj, src, tgt, bud)?;
    let (lc, rc) = (&d.left, &d.right);
    let hc = lc.h();
    let ho = &*hc.tgt;
    let rg = &rc.derived;
    let eta_dot = &d.adjunction.unit;
    let mut witness = None;
    for c in adj.src().objects() {
        let lhs = ho.compose(rc.cell.comp[adj.left.obj[c]], hc.mor[adj.unit.comp[c]]);
        let rhs = ho.compose(rg.mor[lc.cell.comp[c]], eta_dot.comp[hc.obj[c]]);
        if lhs != rhs {
            witness = Some(format!("unit equation fails at {}", adj.src().obj_name(c)));
            break;
        }
    }
    let equation_holds = witness.is_none();
    if let Some(o) = eta_dot.non_iso_at() {
        witness.get_or_insert_with(|| format!("derived unit not invertible at {}", ho.obj_name(o)));
    }
    Ok(FfVerdict { fully_faithful: eta_dot.is_iso(), equation_holds, witness, derived: d })
}

/// Full faithfulness of `L J_!: Ho C -> Ho(C^J)`.
pub fn ff_lj_shriek(rc: &RelCat, jcat: &Arc<FinCat>, jo: Obj, cfg: &HocolimConfig) -> Result<FfVerdict> {
    let cj = functor_category(jcat, &rc.cat, cfg.bud)?;
    let ea = evaluation_adjoints(&cj, jo)?;
    let shriek = ea
        .shriek
        .ok_or_else(|| CatError::PreconditionFailure(format!("J_! at {} does not exist", jcat.obj_name(jo))))?;
    let loc_base = localize_exact(rc, cfg.bound)?;
    let loc_j = localize_exact(&rc.pointwise(&cj), cfg.bound)?;
    ff_derived_left(&shriek, &loc_base, &loc_j, cfg.bud)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointwiseRoute {
    ViaJStar,
    ViaJShriek,
}

impl PointwiseRoute {
    pub fn as_str(self) -> &'static str {
        match self {
            PointwiseRoute::ViaJStar => "via-Jstar",
            PointwiseRoute::ViaJShriek => "via-Jshriek",
        }
    }
}

/// A checked condition with an explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Hypothesis {
        Hypothesis { name: name.into(), holds, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityVerdict {
    pub mor: Mor,
    pub name: String,
    pub commutes: bool,
    /// Diagram at which the square fails.
    pub witness: Option<String>,
}

/// Both rows of the pointwiseness square together with the evaluation
/// functors and transformations on homotopy categories.
#[derive(Clone, Debug)]
pub struct PointwiseSetup {
    pub jcat: Arc<FinCat>,
    pub cj: FunctorCat,
    /// Over `I`, on `C`.
    pub bottom: HocolimStructure,
    /// Over `I`, on `C^J`.
    pub top: HocolimStructure,
    /// `Ho ev_J^I: Ho((C^J)^I) -> Ho(C^I)` per object `J`.
    pub ev_diag: Vec<Functor>,
    /// `Ho ev_J: Ho(C^J) -> Ho C` per object `J`.
    pub ev: Vec<Functor>,
    /// `Ho ev_j^I` per morphism `j`.
    pub ev_diag_mor: Vec<NatTrans>,
    /// `Ho ev_j` per morphism `j`.
    pub ev_mor: Vec<NatTrans>,
    /// `ev_J^I` before localizing.
    pub strict_ev_diag: Vec<Functor>,
}

pub fn pointwise_setup(
    rc: &RelCat,
    i: &Arc<FinCat>,
    jcat: &Arc<FinCat>,
    cfg: &HocolimConfig,
) -> Result<PointwiseSetup> {
    let cj = functor_category(jcat, &rc.cat, cfg.bud)?;
    let loc_base = localize_exact(rc, cfg.bound)?;
    let loc_j = localize_exact(&rc.pointwise(&cj), cfg.bound)?;
    let missing = |what: &str| CatError::MissingAdjunction(format!("no homotopy colimits on {what}"));
    let bottom = build_hocolim_over(&loc_base, i, cfg)?.ok_or_else(|| missing("C"))?;
    let top = build_hocolim_over(&loc_j, i, cfg)?.ok_or_else(|| missing("C^J"))?;
    let mut strict_ev_diag = Vec::new();
    let mut ev_diag = Vec::new();
    let mut ev = Vec::new();
    for jo in jcat.objects() {
        let e = cj.ev(jo);
        let ei = top.fc.postcompose(&e, &bottom.fc)?;
        ev_diag.push(ho_functor(&ei, &top.loc_diag, &bottom.loc_diag)?);
        ev.push(ho_functor(&e, &loc_j, &loc_base)?);
        strict_ev_diag.push(ei);
    }
    let mut ev_diag_mor = Vec::new();
    let mut ev_mor = Vec::new();
    for u in jcat.morphisms() {
        let t = cj.ev_mor(u);
        ev_diag_mor.push(ho_nat(&top.fc.postcompose_nat(&t, &bottom.fc)?, &top.loc_diag, &bottom.loc_diag)?);
        ev_mor.push(ho_nat(&t, &loc_j, &loc_base)?);
    }
    Ok(PointwiseSetup { jcat: jcat.clone(), cj, bottom, top, ev_diag, ev, ev_diag_mor, ev_mor, strict_ev_diag })
}

impl PointwiseSetup {
    fn ho_top_diag(&self) -> &FinCat {
        self.top.ho_diag()
    }

    /// For each `j: J -> J'`, whether
    /// `cell_J' . hocolim(Ho ev_j^I) = (Ho ev_j)_hocolim . cell_J` at every diagram.
    pub fn check_naturality(&self, cells: &[NatTrans]) -> Vec<NaturalityVerdict> {
        self.verdicts(|u, a| {
            let ho = &**self.bottom.ho_base();
            let (s, t) = (self.jcat.dom(u), self.jcat.cod(u));
            let (hb, ht) = (self.bottom.hocolim(), self.top.hocolim());
            let lhs = ho.try_compose(cells[t].comp[a], hb.mor[self.ev_diag_mor[u].comp[a]]);
            let rhs = ho.try_compose(self.ev_mor[u].comp[ht.obj[a]], cells[s].comp[a]);
            lhs.is_some() && lhs == rhs
        })
    }

    /// For each `j: J -> J'`, whether `cell_J'^-1 . (hocolim X)j . cell_J`
    /// equals `hocolim X(-, j)` at every diagram `X`.
    pub fn check_factorization(&self, cells: &[NatTrans]) -> Vec<NaturalityVerdict> {
        self.verdicts(|u, a| {
            let ho = &**self.bottom.ho_base();
            let (s, t) = (self.jcat.dom(u), self.jcat.cod(u));
            let (hb, ht) = (self.bottom.hocolim(), self.top.hocolim());
            let f = ho.inverse(cells[t].comp[a]).and_then(|inv| {
                let m = ho.try_compose(self.ev_mor[u].comp[ht.obj[a]], cells[s].comp[a])?;
                ho.try_compose(inv, m)
            });
            f == Some(hb.mor[self.ev_diag_mor[u].comp[a]])
        })
    }

    fn verdicts(&self, ok: impl Fn(Mor, Obj) -> bool) -> Vec<NaturalityVerdict> {
        let d = self.ho_top_diag();
        self.jcat
            .morphisms()
            .map(|u| {
                let bad = d.objects().find(|&a| !ok(u, a));
                NaturalityVerdict {
                    mor: u,
                    name: self.jcat.mor_name(u).to_string(),
                    commutes: bad.is_none(),
                    witness: bad.map(|a| d.obj_name(a).to_string()),
                }
            })
            .collect()
    }

    /// The left mate of the identity in the strict square of colimit
    /// adjunctions at `J`, when all strict colimits exist.
    pub fn strict_identity_mate(&self, jo: Obj) -> Result<Option<NatTrans>> {
        let (Some(top), Some(bottom)) = (colim_adjunction(&self.top.fc)?, colim_adjunction(&self.bottom.fc)?) else {
            return Ok(None);
        };
        let sq = MateSquare::new(top, bottom, self.strict_ev_diag[jo].clone(), self.cj.ev(jo))?;
        let tau = identity_between(&sq.tau_dom()?, &sq.tau_cod()?, "ev_J Delta and Delta ev_J")?;
        sq.left_mate(&tau).map(Some)
    }

    /// The pointwiseness square at `J` with identity right-adjoint cell.
    fn square(&self, jo: Obj) -> Result<MateSquare> {
        let sq = MateSquare::new(
            self.top.adjunction.clone(),
            self.bottom.adjunction.clone(),
            self.ev_diag[jo].clone(),
            self.ev[jo].clone(),
        )?;
        let tau = identity_between(&sq.tau_dom()?, &sq.tau_cod()?, "Ho ev_J Ho Delta and Ho Delta Ho ev_J")?;
        sq.with_tau(tau)
    }
}

/// Per-`J` isomorphisms `hocolim . Ho ev_J => Ho ev_J . hocolim` and their
/// naturality in `J`.
#[derive(Clone, Debug)]
pub struct PointwisenessReport {
    pub route: PointwiseRoute,
    /// `sigma_J` or `beta_J`, indexed by the objects of the index category.
    pub cells: Vec<NatTrans>,
    pub isos: Vec<bool>,
    pub naturality: Vec<NaturalityVerdict>,
    /// Hypotheses checked on the way, in order.
    pub hypotheses: Vec<Hypothesis>,
    /// Per-`J` equations the cells must satisfy.
    pub equations: Vec<Hypothesis>,
    pub setup: PointwiseSetup,
}

impl PointwisenessReport {
    pub fn holds(&self) -> bool {
        self.isos.iter().all(|&b| b)
            && self.naturality.iter().all(|v| v.commutes)
            && self.equations.iter().all(|e| e.holds)
            && self.hypotheses.iter().all(|h| h.holds)
    }
}

fn obj_label(jcat: &FinCat, jo: Obj) -> String {
    format!("J = {}", jcat.obj_name(jo))
}

/// `sigma_J` as the horizontal mate of the identity, certified through the
/// interchange with `Ho ev_J -| R J_*`.
pub fn pointwise_via_jstar(
    rc: &RelCat,
    i: &Arc<FinCat>,
    jcat: &Arc<FinCat>,
    cfg: &HocolimConfig,
) -> Result<PointwisenessReport> {
    let setup = pointwise_setup(rc, i, jcat, cfg)?;
    let (top, bottom) = (&setup.top, &setup.bottom);
    let terminal = rc.cat.terminal_object().is_some();
    let preorder = jcat.is_preorder();
    let mut hypotheses = vec![
        Hypothesis::new("terminal object", terminal, rc.cat.name()),
        Hypothesis::new("index category is a preorder", preorder, jcat.name()),
    ];
    let mut cells = Vec::new();
    let mut isos = Vec::new();
    let mut equations = Vec::new();
    for jo in jcat.objects() {
        let label = obj_label(jcat, jo);
        let (_, _, star) = eval_adjoints(&setup.cj, jo).map_err(|e| CatError::MissingAdjunction(e.to_string()))?;
        if let Some(m) = homotopical_witness(&star.right, rc, &top.loc_base.rc) {
            let why = if terminal && preorder {
                "unexpected, since a terminal object and a preorder shape make it homotopical"
            } else {
                "no terminal object with preorder shape, and powers do not preserve weak equivalences"
            };
            return Err(CatError::CompositionHypothesisFailed(format!(
                "J_* at {} does not preserve the weak equivalence {} ({why})",
                jcat.obj_name(jo),
                rc.cat.mor_name(m)
            )));
        }
        let route = if terminal && preorder { "terminal object and preorder shape" } else { "stable powers" };
        hypotheses.push(Hypothesis::new(format!("J_* homotopical at {label}"), true, route));

        let yt = derive_with_homotopical_right(&star, &top.loc_base, &bottom.loc_base, cfg.bud)?.adjunction;
        let star_i = postcompose_adjunction(&star, &top.fc, &bottom.fc)?;
        let xs = derive_with_homotopical_right(&star_i, &top.loc_diag, &bottom.loc_diag, cfg.bud)?.adjunction;

        // Both composites are homotopical, so they compose exactly when the
        // induced functors agree.
        let strict = top.fc.delta()?.after(&star.right)?;
        let composes = ho_functor(&strict, &bottom.loc_base, &top.loc_diag)? == top.ho_delta.after(&yt.right)?;
        if !composes {
            return Err(CatError::CompositionHypothesisFailed(format!("Ho Delta and R J_* at {label}")));
        }
        hypotheses.push(Hypothesis::new(
            format!("Ho Delta composes with R J_* at {label}"),
            true,
            "induced functors agree",
        ));

        let sq = setup.square(jo)?;
        let cert = bc_interchange(&sq, Some((&xs, &yt)))?;
        equations.push(Hypothesis::new(
            format!("mates conjugate at {label}"),
            cert.conjugate,
            cert.report.route.as_str(),
        ));
        equations.push(Hypothesis::new(
            format!("horizontal and vertical verdicts agree at {label}"),
            cert.verdicts_agree(),
            format!("horizontal {}, vertical {}", cert.horizontal, cert.vertical_dual),
        ));
        isos.push(cert.horizontal);
        cells.push(cert.sigma);
    }
    let naturality = setup.check_naturality(&cells);
    Ok(PointwisenessReport { route: PointwiseRoute::ViaJStar, cells, isos, naturality, hypotheses, equations, setup })
}

/// Whether some natural isomorphism `f => g` exists.
pub fn nat_iso_exists(f: &Functor, g: &Functor) -> bool {
    let t = g.tgt.clone();
    for_each_nat(f, g, |_, m| t.is_iso(m), |_| ControlFlow::Break(())).is_break()
}

/// `beta_J` from the composite units, per `J`, with naturality checked
/// through the factorization `beta_J'^-1 . (hocolim X)j . beta_J`.
pub fn pointwise_via_jshriek(
    rc: &RelCat,
    i: &Arc<FinCat>,
    jcat: &Arc<FinCat>,
    cfg: &HocolimConfig,
) -> Result<PointwisenessReport> {
    let setup = pointwise_setup(rc, i, jcat, cfg)?;
    let (top, bottom) = (&setup.top, &setup.bottom);
    let initial = rc.cat.initial_object().is_some() && jcat.is_preorder();
    let mut hypotheses = Vec::new();
    let mut cells = Vec::new();
    let mut isos = Vec::new();
    let mut equations = Vec::new();
    let ho = &**bottom.ho_base();
    let hoi = &**bottom.ho_diag();
    for jo in jcat.objects() {
        let label = obj_label(jcat, jo);
        let ea = evaluation_adjoints(&setup.cj, jo)?;
        let shriek = match (&ea.shriek, ea.shriek_fully_faithful) {
            (Some(s), true) => s.clone(),
            _ => return Err(CatError::NotFullyFaithful(format!("J_! at {label} is missing or not fully faithful"))),
        };
        let why = if initial { "initial object and preorder shape" } else { "copower formula" };
        hypotheses.push(Hypothesis::new(format!("J_! fully faithful at {label}"), true, why));
        let base = ff_derived_left(&shriek, &bottom.loc_base, &top.loc_base, cfg.bud)?;
        let shriek_i = postcompose_adjunction(&shriek, &bottom.fc, &top.fc)?;
        let diag = ff_derived_left(&shriek_i, &bottom.loc_diag, &top.loc_diag, cfg.bud)?;
        for (what, v) in [("L J_!", &base), ("L J_!^I", &diag)] {
            if !v.fully_faithful {
                return Err(CatError::NotFullyFaithful(format!(
                    "{what} at {label}: {}",
                    v.witness.clone().unwrap_or_default()
                )));
            }
            hypotheses.push(Hypothesis::new(
                format!("{what} fully faithful at {label}"),
                true,
                "derived unit invertible",
            ));
            equations.push(Hypothesis::new(format!("{what} unit equation at {label}"), v.equation_holds, ""));
        }

        let (x, y) = (&setup.ev_diag[jo], &setup.ev[jo]);
        let (hb, ht) = (bottom.hocolim(), top.hocolim());
        let dom = hb.after(x)?;
        let cod = y.after(ht)?;
        if !nat_iso_exists(&dom, &cod) {
            return Err(CatError::NoObjectwiseIso(format!("hocolim Ho ev_J and Ho ev_J hocolim at {label}")));
        }
        hypotheses.push(Hypothesis::new(
            format!("some iso hocolim Ho ev_J ~ Ho ev_J hocolim at {label}"),
            true,
            "found by search",
        ));

        // alpha: hocolim L(J_!^I) => L J_! hocolim, conjugate to the identity
        // between the equal right adjoints.
        let a2 = bottom.adjunction.then(&base.derived.adjunction)?;
        let a1 = diag.derived.adjunction.then(&top.adjunction)?;
        let sq =
            MateSquare::new(a2, a1.clone(), Functor::identity(bottom.ho_diag()), Functor::identity(top.ho_base()))?;
        let tau = identity_between(&sq.tau_dom()?, &sq.tau_cod()?, "composite right adjoints")?;
        let alpha = sq.left_mate(&tau)?;
        let g = &a1.right;
        let (lj_i, theta) = (&diag.derived.adjunction.left, &diag.derived.adjunction.unit);
        let (theta2, eta2) = (&base.derived.adjunction.unit, bottom.unit());
        let eta = top.unit();
        let compatible = hoi.objects().all(|xo| {
            let lhs = hoi.compose_path(&[theta.comp[xo], x.mor[eta.comp[lj_i.obj[xo]]], g.mor[alpha.comp[xo]]]);
            let rhs = hoi.try_compose(bottom.ho_delta.mor[theta2.comp[hb.obj[xo]]], eta2.comp[xo]);
            lhs.is_some() && lhs == rhs
        });
        equations.push(Hypothesis::new(format!("alpha compatible with composite units at {label}"), compatible, ""));

        // beta_J = (theta'^-1 . (Ho ev_J) alpha_{Ho ev_J} . ((Ho ev_J) hocolim zeta)^-1)^-1
        let zeta = &diag.derived.adjunction.counit;
        let hod = top.ho_diag();
        let mut comp = Vec::new();
        for ao in hod.objects() {
            let xa = x.obj[ao];
            let step = (|| {
                let z = ho.inverse(y.mor[ht.mor[zeta.comp[ao]]])?;
                let t = ho.inverse(theta2.comp[hb.obj[xa]])?;
                let gamma = ho.compose_path(&[z, y.mor[alpha.comp[xa]], t])?;
                ho.inverse(gamma)
            })();
            comp.push(step.ok_or_else(|| {
                CatError::NoSolution(format!("beta recipe is not invertible at {} for {label}", hod.obj_name(ao)))
            })?);
        }
        let beta = NatTrans::new(dom, cod, comp)?;

        let delta_b = &bottom.ho_delta;
        let mut eq_holds = true;
        let mut unique = true;
        for ao in hod.objects() {
            let target = x.mor[eta.comp[ao]];
            let via = |m: Mor| hoi.try_compose(delta_b.mor[m], eta2.comp[x.obj[ao]]);
            eq_holds &= via(beta.comp[ao]) == Some(target);
            let sols = ho.hom(hb.obj[x.obj[ao]], y.obj[ht.obj[ao]]).iter().filter(|&&m| via(m) == Some(target)).count();
            unique &= sols == 1;
        }
        equations.push(Hypothesis::new(format!("(Ho ev_J) eta = (Ho Delta) beta . eta' at {label}"), eq_holds, ""));
        equations.push(Hypothesis::new(format!("beta unique solution at {label}"), unique, ""));
        isos.push(beta.is_iso());
        cells.push(beta);
    }
    let naturality = setup.check_factorization(&cells);
    Ok(PointwisenessReport { route: PointwiseRoute::ViaJShriek, cells, isos, naturality, hypotheses, equations, setup })
}
