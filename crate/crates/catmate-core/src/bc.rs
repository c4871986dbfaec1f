//! Beck-Chevalley squares: invertibility of mates, the interchange between
//! horizontal and vertical mates, and sufficient criteria.

use std::fmt;
use std::sync::Arc;

use crate::adjunction::{find_left_adjoint, find_right_adjoint, Adjunction};
use crate::cat::{Budget, FinCat, Mor};
use crate::enumerate::{enumerate_functors, enumerate_nat_isos, for_each_functor};
use crate::error::{shape, CatError, Result};
use crate::functor::{Functor, NatTrans};
use crate::functor_cat::{functor_category, FunctorCat};
use crate::mates::MateSquare;
use crate::universal::{colim_adjunction, colimit, evaluation_adjoints};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// Which criterion decided a report. Criteria are tried in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    Direct,
    FfRightAdjoints,
    Equivalences,
    FfLeftAdjoints,
    Interchange,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::FfRightAdjoints => "ff-right-adjoints",
            Route::Equivalences => "equivalences",
            Route::FfLeftAdjoints => "ff-left-adjoints",
            Route::Interchange => "interchange",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct BCReport {
    pub holds: bool,
    pub mate_cell: NatTrans,
    pub route: Route,
    /// Object where the mate fails to be invertible.
    pub witness: Option<String>,
}

impl BCReport {
    fn from_cell(cell: NatTrans, route: Route) -> BCReport {
        let witness = cell.non_iso_at().map(|o| cell.dom.src.obj_name(o).to_string());
        BCReport { holds: witness.is_none(), mate_cell: cell, route, witness }
    }
}

fn tau_of(sq: &MateSquare) -> Result<NatTrans> {
    match (&sq.tau, &sq.sigma) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(s)) => sq.right_mate(s),
        _ => Err(shape("square has no cell")),
    }
}

fn sigma_of(sq: &MateSquare) -> Result<NatTrans> {
    match (&sq.sigma, &sq.tau) {
        (Some(s), _) => Ok(s.clone()),
        (None, Some(t)) => sq.left_mate(t),
        _ => Err(shape("square has no cell")),
    }
}

/// Right adjoints `X -| S`, `Y -| T`, searched for when not supplied.
fn right_pair(sq: &MateSquare, given: Option<(&Adjunction, &Adjunction)>) -> Result<(Adjunction, Adjunction)> {
    let (xs, yt) = match given {
        Some((a, b)) => (a.clone(), b.clone()),
        None => {
            let xs =
                find_right_adjoint(&sq.x).ok_or_else(|| CatError::MissingAdjunction("right adjoint of X".into()))?;
            let yt =
                find_right_adjoint(&sq.y).ok_or_else(|| CatError::MissingAdjunction("right adjoint of Y".into()))?;
            (xs, yt)
        }
    };
    if xs.left != sq.x || yt.left != sq.y {
        return Err(shape("vertical adjunctions must have X and Y as left adjoints"));
    }
    Ok((xs, yt))
}

/// Left adjoints `M -| X`, `N -| Y`, searched for when not supplied.
fn left_pair(sq: &MateSquare, given: Option<(&Adjunction, &Adjunction)>) -> Result<(Adjunction, Adjunction)> {
    let (mx, ny) = match given {
        Some((a, b)) => (a.clone(), b.clone()),
        None => {
            let mx = find_left_adjoint(&sq.x).ok_or_else(|| CatError::MissingAdjunction("left adjoint of X".into()))?;
            let ny = find_left_adjoint(&sq.y).ok_or_else(|| CatError::MissingAdjunction("left adjoint of Y".into()))?;
            (mx, ny)
        }
    };
    if mx.right != sq.x || ny.right != sq.y {
        return Err(shape("vertical adjunctions must have X and Y as right adjoints"));
    }
    Ok((mx, ny))
}

/// The square read sideways with `Y -| T` on top and `X -| S` below; the
/// legs are `G` and `G'` and `tau` sits in the sigma position.
pub fn transpose_right(sq: &MateSquare, xs: &Adjunction, yt: &Adjunction) -> Result<MateSquare> {
    MateSquare::new(yt.clone(), xs.clone(), sq.top.right.clone(), sq.bottom.right.clone())?.with_sigma(tau_of(sq)?)
}

/// The square read sideways with `N -| Y` on top and `M -| X` below. The
/// cell `G'Y => XG` is the inverse of `tau`, which must exist.
pub fn transpose_left(sq: &MateSquare, mx: &Adjunction, ny: &Adjunction) -> Result<MateSquare> {
    let inv = tau_of(sq)?.inverse().ok_or_else(|| {
        CatError::PreconditionFailure("vertical condition with left adjoints needs tau invertible".into())
    })?;
    MateSquare::new(ny.clone(), mx.clone(), sq.bottom.right.clone(), sq.top.right.clone())?.with_tau(inv)
}

/// Compute the relevant mate and test it componentwise.
///
/// Horizontal: the left mate of `tau` (or, dually, the right mate of
/// `sigma`). Vertical dual: the right mate `rho: GT => SG'` of `tau` for
/// `X -| S`, `Y -| T`. Vertical: the left mate of `tau^-1` for `M -| X`,
/// `N -| Y`. Missing vertical adjunctions are searched for.
pub fn bc_check(
    sq: &MateSquare,
    direction: Direction,
    dual: bool,
    vertical: Option<(&Adjunction, &Adjunction)>,
) -> Result<BCReport> {
    let cell = match (direction, dual) {
        (Direction::Horizontal, false) => sq.left_mate(&tau_of(sq)?)?,
        (Direction::Horizontal, true) => sq.right_mate(&sigma_of(sq)?)?,
        (Direction::Vertical, true) => {
            let (xs, yt) = right_pair(sq, vertical)?;
            let t = transpose_right(sq, &xs, &yt)?;
            t.right_mate(t.sigma.as_ref().unwrap())?
        }
        (Direction::Vertical, false) => {
            let (mx, ny) = left_pair(sq, vertical)?;
            let t = transpose_left(sq, &mx, &ny)?;
            t.left_mate(t.tau.as_ref().unwrap())?
        }
    };
    Ok(BCReport::from_cell(cell, Route::Direct))
}

#[derive(Clone, Debug)]
pub struct InterchangeCert {
    /// Horizontal left mate `F'X => YF`.
    pub sigma: NatTrans,
    /// Vertical right mate `GT => SG'`.
    pub rho: NatTrans,
    /// `sigma` and `rho` are mates for `YF -| GT` and `F'X -| SG'`.
    pub conjugate: bool,
    /// The adjunct of `sigma` equals `rho_YF . G theta'_F . eta`.
    pub sharp_agrees: bool,
    pub horizontal: bool,
    pub vertical_dual: bool,
    pub report: BCReport,
}

impl InterchangeCert {
    pub fn verdicts_agree(&self) -> bool {
        self.horizontal == self.vertical_dual
    }
}

pub fn bc_interchange(sq: &MateSquare, vertical: Option<(&Adjunction, &Adjunction)>) -> Result<InterchangeCert> {
    let (xs, yt) = right_pair(sq, vertical)?;
    let tau = tau_of(sq)?;
    let sigma = sq.left_mate(&tau)?;
    let tr = transpose_right(sq, &xs, &yt)?;
    let rho = tr.right_mate(&tau)?;

    let upper = sq.top.then(&yt)?;
    let lower = xs.then(&sq.bottom)?;
    let conj =
        MateSquare::new(upper, lower.clone(), Functor::identity(sq.top.src()), Functor::identity(sq.bottom.tgt()))?
            .with_sigma(sigma.clone())?
            .with_tau(rho.clone())?;
    let conjugate = conj.check_mate_pair()?.mates;

    let c = sq.top.src();
    let (f, g, eta) = (&sq.top.left, &sq.top.right, &sq.top.unit);
    let sharp_agrees = c.objects().all(|a| {
        let direct = c.compose(lower.right.mor[sigma.comp[a]], lower.unit.comp[a]);
        let fa = f.obj[a];
        let yfa = sq.y.obj[fa];
        let formula = c.compose(rho.comp[yfa], c.compose(g.mor[yt.unit.comp[fa]], eta.comp[a]));
        direct == formula
    });

    let route = if tau.is_iso() && yt.right_is_fully_faithful() && xs.left_is_fully_faithful() {
        Route::FfRightAdjoints
    } else if xs.is_equivalence() && yt.is_equivalence() {
        Route::Equivalences
    } else {
        Route::Interchange
    };
    let horizontal = sigma.is_iso();
    let vertical_dual = rho.is_iso();
    let mut report = BCReport::from_cell(sigma.clone(), route);
    report.holds = vertical_dual;
    Ok(InterchangeCert { sigma, rho, conjugate, sharp_agrees, horizontal, vertical_dual, report })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `X` and `N` fully faithful.
    XAndN,
    /// `M, N` or `X, Y` fully faithful, and some `F'X ~= YF` exists.
    PairAndIso,
}

#[derive(Clone, Debug)]
pub struct SufficientReport {
    /// `None` when no clause applies (hypothesis not met).
    pub clause: Option<Clause>,
    pub report: BCReport,
    /// The assembled `YF zeta . Y rho_X . theta'_F'X` equals the left mate of `tau`.
    pub formula_agrees: bool,
}

impl SufficientReport {
    pub fn hypothesis_met(&self) -> bool {
        self.clause.is_some()
    }
}

/// Sufficient criteria from left adjoints `M -| X` and `N -| Y` of the legs.
pub fn bc_sufficient(
    sq: &MateSquare,
    left_adjoints: Option<(&Adjunction, &Adjunction)>,
    bud: Budget,
) -> Result<SufficientReport> {
    let (mx, ny) = left_pair(sq, left_adjoints)?;
    let tau = tau_of(sq)?;
    if !tau.is_iso() {
        return Err(CatError::PreconditionFailure("tau is not invertible".into()));
    }
    // rho: NF' => FM, conjugate of tau for FM -| XG and NF' -| G'Y
    let upper = mx.then(&sq.top)?;
    let lower = sq.bottom.then(&ny)?;
    let conj = MateSquare::new(upper, lower, Functor::identity(sq.bottom.src()), Functor::identity(sq.top.tgt()))?;
    let rho = conj.left_mate(&tau)?;

    let c = sq.top.src();
    let d2 = &*sq.y.tgt;
    let (f, y) = (&sq.top.left, &sq.y);
    let (zeta, theta2) = (&mx.counit, &ny.unit);
    let comp: Vec<Mor> = c
        .objects()
        .map(|a| {
            let xa = sq.x.obj[a];
            let f2xa = sq.bottom.left.obj[xa];
            let m = d2.compose(y.mor[rho.comp[xa]], theta2.comp[f2xa]);
            d2.compose(y.mor[f.mor[zeta.comp[a]]], m)
        })
        .collect();
    let sigma = NatTrans { dom: sq.sigma_dom()?, cod: sq.sigma_cod()?, comp };
    let formula_agrees = sigma == sq.left_mate(&tau)?;

    let x_ff = mx.right_is_fully_faithful();
    let y_ff = ny.right_is_fully_faithful();
    let m_ff = mx.left_is_fully_faithful();
    let n_ff = ny.left_is_fully_faithful();
    let clause = if x_ff && n_ff {
        Some(Clause::XAndN)
    } else if (m_ff && n_ff) || (x_ff && y_ff) {
        let isos = enumerate_nat_isos(&sq.sigma_dom()?, &sq.sigma_cod()?, bud)?;
        (!isos.is_empty()).then_some(Clause::PairAndIso)
    } else {
        None
    };
    let route = if clause.is_some() { Route::FfLeftAdjoints } else { Route::Direct };
    Ok(SufficientReport { clause, report: BCReport::from_cell(sigma, route), formula_agrees })
}

/// Every adjunction `F -| G` with `G: D -> C`, one per right adjoint.
pub fn adjunctions_between(c: &Arc<FinCat>, d: &Arc<FinCat>, bud: Budget) -> Result<Vec<Adjunction>> {
    Ok(enumerate_functors(d, c, bud)?.iter().filter_map(find_left_adjoint).collect())
}

/// Exhaustive search for a square with `tau` invertible whose left mate is
/// not, over adjunctions between the given categories.
pub fn find_bc_counterexample(cats: &[Arc<FinCat>], bud: Budget) -> Result<Option<MateSquare>> {
    let mut adjs = Vec::new();
    for c in cats {
        for d in cats {
            adjs.extend(adjunctions_between(c, d, bud)?);
        }
    }
    for top in &adjs {
        for bottom in &adjs {
            let xs = enumerate_functors(top.src(), bottom.src(), bud)?;
            let ys = enumerate_functors(top.tgt(), bottom.tgt(), bud)?;
            for x in &xs {
                for y in &ys {
                    let sq = MateSquare::new(top.clone(), bottom.clone(), x.clone(), y.clone())?;
                    for tau in enumerate_nat_isos(&sq.tau_dom()?, &sq.tau_cod()?, bud)? {
                        let sigma = sq.left_mate(&tau)?;
                        if !sigma.is_iso() {
                            return Ok(Some(sq.with_tau(tau)?.with_sigma(sigma)?));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The pinned counterexample on `Arrow`: identity adjunction on top,
/// `const 0 -| const 1` below, `X = const 1`, `Y = id`, `tau = id`. The mate
/// `const 0 => id` is not invertible at `1`.
pub fn pinned_counterexample(arrow: &Arc<FinCat>) -> Result<MateSquare> {
    let top = Adjunction::identity(arrow);
    let g2 = Functor::constant(arrow, arrow, 1);
    let bottom =
        find_left_adjoint(&g2).ok_or_else(|| CatError::MissingAdjunction("const 1 has no left adjoint".into()))?;
    let x = Functor::constant(arrow, arrow, 1);
    let y = Functor::identity(arrow);
    let sq = MateSquare::new(top, bottom, x, y)?;
    let tau = NatTrans::identity(&sq.tau_dom()?);
    sq.with_tau(tau)
}

/// The square of constant-diagram functors
///
/// ```text
///   C^(IxJ) <--Delta-- C^J
///     | ev_J             | ev_J
///   C^I    <--Delta--    C
/// ```
///
/// with identity filler, on a full subcategory of `(C^J)^I` spanned by the
/// constant diagrams and `chunk`. The bottom row lives on the full
/// subcategory of `C^I` spanned by constant diagrams and the evaluations.
/// With `with_star`, the top is also closed under `(J_*)^I` so that both legs
/// get right adjoints, returned as `vertical`.
pub struct ColimitSquare {
    pub top_cat: FunctorCat,
    pub bottom_cat: FunctorCat,
    pub square: MateSquare,
    pub vertical: Option<(Adjunction, Adjunction)>,
}

pub fn colimit_square(
    cj: &FunctorCat,
    i: &Arc<FinCat>,
    jo: usize,
    chunk: &[Functor],
    with_star: bool,
    bud: Budget,
) -> Result<Option<ColimitSquare>> {
    let c = &cj.base;
    let mut top_objs: Vec<Functor> = cj.cat.objects().map(|o| Functor::constant(i, &cj.cat, o)).collect();
    top_objs.extend(chunk.iter().cloned());
    let ev = cj.ev(jo);
    let mut bot_objs: Vec<Functor> = c.objects().map(|o| Functor::constant(i, c, o)).collect();
    for x in &top_objs {
        bot_objs.push(ev.after(x)?);
    }
    let star = if with_star {
        let adj = evaluation_adjoints(cj, jo)?
            .star
            .ok_or_else(|| CatError::MissingAdjunction("J_* does not exist".into()))?;
        for a in &bot_objs {
            top_objs.push(adj.right.after(a)?);
        }
        Some(adj)
    } else {
        None
    };
    let top_cat = FunctorCat::on(format!("{}^{}", cj.cat.name(), i.name()), i, &cj.cat, top_objs, bud)?;
    let bottom_cat = FunctorCat::on(format!("{}^{}", c.name(), i.name()), i, c, bot_objs, bud)?;
    let Some(top) = colim_adjunction(&top_cat)? else { return Ok(None) };
    let Some(bottom) = colim_adjunction(&bottom_cat)? else { return Ok(None) };
    let x = top_cat.postcompose(&ev, &bottom_cat)?;
    let vertical = match star {
        Some(yt) => {
            let xs = find_right_adjoint(&x)
                .ok_or_else(|| CatError::MissingAdjunction("right adjoint of ev_J on the chunk".into()))?;
            Some((xs, yt))
        }
        None => None,
    };
    let sq = MateSquare::new(top, bottom, x, ev)?;
    let tau = NatTrans::identity(&sq.tau_dom()?);
    let square = sq.with_tau(tau)?;
    Ok(Some(ColimitSquare { top_cat, bottom_cat, square, vertical }))
}

/// Diagrams `I -> C^J` all of whose pointwise restrictions have colimits.
pub fn pointwise_colimit_diagrams(cj: &FunctorCat, i: &Arc<FinCat>, limit: usize) -> Vec<Functor> {
    let mut out = Vec::new();
    let _ = for_each_functor(i, &cj.cat, |x| {
        let ok = cj.shape.objects().all(|j| colimit(&cj.ev(j).after(&x).unwrap()).is_some());
        let constant = x.obj.iter().all(|&o| o == x.obj[0]) && x.mor.iter().all(|&m| cj.cat.is_identity(m));
        if ok && !constant {
            out.push(x);
        }
        if out.len() >= limit {
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    });
    out
}

/// Check the constant-diagram square at every `J`, chunk by chunk.
pub fn colimit_square_sweep(
    c: &Arc<FinCat>,
    i: &Arc<FinCat>,
    j: &Arc<FinCat>,
    max_diagrams: usize,
    chunk_size: usize,
    bud: Budget,
) -> Result<Vec<(usize, BCReport)>> {
    let cj = functor_category(j, c, bud)?;
    let diagrams = pointwise_colimit_diagrams(&cj, i, max_diagrams);
    let mut out = Vec::new();
    for jo in j.objects() {
        for chunk in diagrams.chunks(chunk_size.max(1)) {
            let sq = colimit_square(&cj, i, jo, chunk, false, bud)?
                .ok_or_else(|| CatError::MissingAdjunction("colimit adjunction on a chunk".into()))?;
            out.push((jo, bc_check(&sq.square, Direction::Horizontal, false, None)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::poset_adjunction;
    use crate::fixtures;
    use crate::mates::{paste, PasteKind};

    fn galois() -> Adjunction {
        let (a, c) = (fixtures::arrow(), fixtures::chain2());
        poset_adjunction(fixtures::galois_left(&a, &c), fixtures::galois_right(&c, &a)).unwrap()
    }

    fn conjugate_square(top: Adjunction, bottom: Adjunction, tau: NatTrans) -> MateSquare {
        let (x, y) = (Functor::identity(top.src()), Functor::identity(top.tgt()));
        MateSquare::new(top, bottom, x, y).unwrap().with_tau(tau).unwrap()
    }

    #[test]
    fn identity_legs_hold_iff_tau_iso() {
        let adj = galois();
        let sq = conjugate_square(adj.clone(), adj.clone(), NatTrans::identity(&adj.right));
        let r = bc_check(&sq, Direction::Horizontal, false, None).unwrap();
        assert!(r.holds && r.route == Route::Direct);

        let a = fixtures::arrow();
        let bottom = find_left_adjoint(&Functor::constant(&a, &a, 1)).unwrap();
        let top = Adjunction::identity(&a);
        let tau = fixtures::poset_nat(&top.right, &bottom.right).unwrap();
        assert!(!tau.is_iso());
        let r = bc_check(&conjugate_square(top, bottom, tau), Direction::Horizontal, false, None).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.as_deref(), Some("1"));
    }

    #[test]
    fn pinned_counterexample_fails() {
        let sq = pinned_counterexample(&fixtures::arrow()).unwrap();
        assert!(sq.tau.as_ref().unwrap().is_iso());
        let r = bc_check(&sq, Direction::Horizontal, false, None).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.as_deref(), Some("1"));
        // the dual condition starts from the mate and recovers tau
        let full = sq.mate().unwrap();
        let d = bc_check(&MateSquare { tau: None, ..full }, Direction::Horizontal, true, None).unwrap();
        assert!(d.holds);
    }

    #[test]
    fn search_finds_a_counterexample() {
        let cats = [fixtures::one(), fixtures::arrow()];
        let sq = find_bc_counterexample(&cats, Budget::default()).unwrap().unwrap();
        assert!(sq.tau.as_ref().unwrap().is_iso());
        assert!(!sq.sigma.as_ref().unwrap().is_iso());
        assert!(sq.check_mate_pair().unwrap().mates);
    }

    #[test]
    fn interchange_on_identities() {
        let a = fixtures::chain2();
        let id = Adjunction::identity(&a);
        let sq = MateSquare::identity_on(&id);
        let cert = bc_interchange(&sq, Some((&id, &id))).unwrap();
        assert!(cert.sigma.is_identity() && cert.rho.is_identity());
        assert!(cert.conjugate && cert.sharp_agrees && cert.verdicts_agree());
    }

    #[test]
    fn ff_right_adjoints_route() {
        let adj = galois();
        let sq = conjugate_square(adj.clone(), adj.clone(), NatTrans::identity(&adj.right));
        let cert = bc_interchange(&sq, None).unwrap();
        assert_eq!(cert.report.route, Route::FfRightAdjoints);
        assert!(cert.report.holds && cert.conjugate && cert.sharp_agrees);
    }

    #[test]
    fn interchange_needs_right_adjoints() {
        let sq = pinned_counterexample(&fixtures::arrow()).unwrap();
        assert!(matches!(bc_interchange(&sq, None), Err(CatError::MissingAdjunction(_))));
    }

    #[test]
    fn interchange_on_failing_square() {
        let a = fixtures::arrow();
        let bottom = find_left_adjoint(&Functor::constant(&a, &a, 1)).unwrap();
        let top = Adjunction::identity(&a);
        let tau = fixtures::poset_nat(&top.right, &bottom.right).unwrap();
        let sq = conjugate_square(top, bottom, tau);
        let cert = bc_interchange(&sq, None).unwrap();
        assert!(cert.conjugate && cert.sharp_agrees);
        assert!(!cert.horizontal && !cert.vertical_dual);
        assert_eq!(cert.report.route, Route::Equivalences);
        let v = bc_check(&sq, Direction::Vertical, true, None).unwrap();
        assert_eq!(v.holds, cert.horizontal);
    }

    #[test]
    fn sufficient_on_identity_legs() {
        let adj = galois();
        let sq = conjugate_square(adj.clone(), adj.clone(), NatTrans::identity(&adj.right));
        let s = bc_sufficient(&sq, None, Budget::default()).unwrap();
        assert_eq!(s.clause, Some(Clause::XAndN));
        assert!(s.report.holds && s.formula_agrees);
        assert_eq!(s.report.route, Route::FfLeftAdjoints);
    }

    #[test]
    fn pasted_squares_stay_bc() {
        let adj = galois();
        let sq = conjugate_square(adj.clone(), adj.clone(), NatTrans::identity(&adj.right)).mate().unwrap();
        let p = paste(PasteKind::Vertical, &sq, &sq).unwrap();
        assert!(p.sigma.as_ref().unwrap().is_iso());
        assert!(bc_check(&p, Direction::Horizontal, true, None).unwrap().holds);
        let g = fixtures::g1();
        let id = Adjunction::identity(&g);
        let s = MateSquare::identity_on(&id);
        let p = paste(PasteKind::Horizontal, &s, &s).unwrap();
        assert!(bc_check(&p, Direction::Horizontal, true, None).unwrap().holds);
    }
}
