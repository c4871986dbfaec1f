//! Check suites over a parsed workspace and the report they produce.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::adjunction::{find_right_adjoint, Adjunction};
use crate::bc::{
    bc_check, bc_interchange, colimit_square_sweep, find_bc_counterexample, pinned_counterexample, Direction,
};
use crate::cat::{Budget, FinCat};
use crate::derived::{
    adjoint_composition, derive_via_retraction, derived_adjunction, homotopical_cert, validate_retraction, verify_kan,
    DerivedAdjunction, DerivedFunctorCert, Side,
};
use crate::enumerate::{enumerate_functors, enumerate_nat_isos, enumerate_nats};
use crate::error::{CatError, Result};
use crate::fixtures;
use crate::format::Workspace;
use crate::functor::{same_cat, Functor, NatTrans};
use crate::hocolim::{
    build_hocolim, fubini_check, pointwise_via_jshriek, pointwise_via_jstar, transfer_hocolim, HocolimConfig,
};
use crate::localization::{
    default_bound, is_homotopical, localize, universal_property_check, LocalizationResult, RelCat,
};
use crate::mates::{conjugate_iso_check, paste, paste_tau, MateSquare, PasteKind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecided => "undecided",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Option<String>,
    /// Enumerated instances behind the verdict.
    pub cases: usize,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    fn new(suite: Suite, checks: Vec<CheckRecord>) -> Report {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Undecided => summary.undecided += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { schema_version: SCHEMA_VERSION, suite: suite.as_str().to_string(), checks, summary }
    }

    /// 0 when nothing failed or stayed undecided, 1 on any failure, else 2.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.undecided > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            write!(
                out,
                "{:<9} {} [{}] ({} cases, {:.1} ms)",
                c.status.as_str().to_uppercase(),
                c.id,
                c.anchor,
                c.cases,
                c.runtime_ms
            )
            .ok();
            if let Some(w) = &c.witness {
                write!(out, " -- {w}").ok();
            }
            out.push('\n');
        }
        let s = &self.summary;
        writeln!(
            out,
            "suite {}: {} pass, {} fail, {} undecided, {} skipped",
            self.suite, s.pass, s.fail, s.undecided, s.skipped
        )
        .ok();
        out
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Mates,
    Bc,
    Localization,
    Derived,
    Hocolim,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Mates => "mates",
            Suite::Bc => "bc",
            Suite::Localization => "localization",
            Suite::Derived => "derived",
            Suite::Hocolim => "hocolim",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        Ok(match s {
            "mates" => Suite::Mates,
            "bc" => Suite::Bc,
            "localization" => Suite::Localization,
            "derived" => Suite::Derived,
            "hocolim" => Suite::Hocolim,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub bud: Budget,
    /// Localization word bound; `default_bound` when absent.
    pub bound: Option<usize>,
    /// Probe categories for universal properties, by name. Names missing from
    /// the workspace fall back to the built-in One, Arrow and WalkingIso.
    pub probes: Vec<String>,
    /// Index shapes `(I, J)` for the constant-diagram and homotopy colimit checks.
    pub shapes: Vec<(String, String)>,
    /// Adjunctions whose categories have more objects are left out of the
    /// mate and Beck-Chevalley sweeps.
    pub max_objects: usize,
    /// Cap on diagrams per constant-diagram sweep; unbounded by default.
    pub max_diagrams: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            bud: Budget::default(),
            bound: None,
            probes: vec!["One".into(), "Arrow".into(), "WalkingIso".into()],
            shapes: vec![("Span".into(), "Arrow".into())],
            max_objects: 3,
            max_diagrams: usize::MAX,
        }
    }
}

struct Outcome {
    status: Status,
    witness: Option<String>,
    cases: usize,
}

impl Outcome {
    fn pass(cases: usize) -> Outcome {
        Outcome { status: Status::Pass, witness: None, cases }
    }
    fn skipped(why: impl Into<String>) -> Outcome {
        Outcome { status: Status::Skipped, witness: Some(why.into()), cases: 0 }
    }
    fn fail(cases: usize, w: impl Into<String>) -> Outcome {
        Outcome { status: Status::Fail, witness: Some(w.into()), cases }
    }
    fn verdict(ok: bool, cases: usize, w: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::pass(cases)
        } else {
            Outcome::fail(cases, w())
        }
    }
}

/// Errors that mean "not applicable here" rather than a failed property.
fn from_error(e: CatError) -> Outcome {
    match e {
        CatError::UndecidedLocalization { .. } => {
            Outcome { status: Status::Undecided, witness: Some(e.to_string()), cases: 0 }
        }
        CatError::SizeBudgetExceeded { .. }
        | CatError::MissingAdjunction(_)
        | CatError::MissingStructure(_)
        | CatError::EndomorphismObstruction { .. }
        | CatError::CompositionHypothesisFailed(_)
        | CatError::PreconditionFailure(_)
        | CatError::NoLeftAdjoint(_)
        | CatError::NotFullyFaithful(_)
        | CatError::NotHomotopical { .. } => Outcome::skipped(e.to_string()),
        e => Outcome::fail(0, e.to_string()),
    }
}

struct Runner {
    checks: Vec<CheckRecord>,
}

impl Runner {
    fn run(&mut self, id: String, anchor: &str, f: impl FnOnce() -> Result<Outcome>) {
        let t = Instant::now();
        let o = f().unwrap_or_else(from_error);
        self.checks.push(CheckRecord {
            id,
            anchor: anchor.to_string(),
            status: o.status,
            witness: o.witness,
            cases: o.cases,
            runtime_ms: t.elapsed().as_secs_f64() * 1000.0,
        });
    }
}

pub fn run_suite(ws: &Workspace, suite: Suite, cfg: &SuiteConfig) -> Report {
    let mut r = Runner { checks: Vec::new() };
    let all = suite == Suite::All;
    if all || suite == Suite::Localization {
        localization_checks(ws, cfg, &mut r);
    }
    if all || suite == Suite::Mates {
        mate_checks(ws, cfg, &mut r);
    }
    if all || suite == Suite::Bc {
        bc_checks(ws, cfg, &mut r);
    }
    if all || suite == Suite::Derived {
        derived_checks(ws, cfg, &mut r);
    }
    if all || suite == Suite::Hocolim {
        hocolim_checks(ws, cfg, &mut r);
    }
    Report::new(suite, r.checks)
}

fn probe_cats(ws: &Workspace, cfg: &SuiteConfig) -> Vec<Arc<FinCat>> {
    cfg.probes
        .iter()
        .filter_map(|n| {
            ws.categories.get(n).cloned().or_else(|| match n.as_str() {
                "One" => Some(fixtures::one()),
                "Arrow" => Some(fixtures::arrow()),
                "WalkingIso" => Some(fixtures::walking_iso()),
                _ => None,
            })
        })
        .collect()
}

fn bound_for(rc: &RelCat, cfg: &SuiteConfig) -> usize {
    cfg.bound.unwrap_or_else(|| default_bound(rc))
}

fn localization_checks(ws: &Workspace, cfg: &SuiteConfig, r: &mut Runner) {
    let probes = probe_cats(ws, cfg);
    for (name, nrc) in &ws.relcats {
        let res = localize(&nrc.rc, bound_for(&nrc.rc, cfg));
        r.run(format!("localization:{name}:exact"), "localization by zig-zag congruence closure", || {
            let l = res.exact()?;
            Ok(Outcome::pass(l.ho.n_mor()))
        });
        for p in &probes {
            r.run(
                format!("localization:{name}:universal:{}", p.name()),
                "universal property of the localization",
                || {
                    if !res.is_exact() {
                        return Ok(Outcome::skipped("localization undecided"));
                    }
                    let u = universal_property_check(&res, p, cfg.bud)?;
                    Ok(Outcome::verdict(u.ok(), u.ho_functors + u.nat_pairs, || format!("{u:?}")))
                },
            );
        }
    }
    for (name, nr) in &ws.retractions {
        r.run(
            format!("localization:{name}:retraction-equivalence"),
            "deformation retraction induces an equivalence",
            || {
                let d = validate_retraction(nr.data.clone())?;
                Ok(Outcome::verdict(d.equivalence_check()?, 1, || "H q is not invertible".into()))
            },
        );
    }
}

fn small_adjunctions<'a>(ws: &'a Workspace, cfg: &SuiteConfig) -> Vec<(&'a str, &'a Adjunction)> {
    ws.adjunctions
        .iter()
        .filter(|(_, a)| a.adj.src().n_obj() <= cfg.max_objects && a.adj.tgt().n_obj() <= cfg.max_objects)
        .map(|(n, a)| (n.as_str(), &a.adj))
        .collect()
}

/// Every square with `top` and `bottom` and arbitrary legs, without cells.
fn squares(top: &Adjunction, bottom: &Adjunction, bud: Budget) -> Result<Vec<MateSquare>> {
    let xs = enumerate_functors(top.src(), bottom.src(), bud)?;
    let ys = enumerate_functors(top.tgt(), bottom.tgt(), bud)?;
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            out.push(MateSquare::new(top.clone(), bottom.clone(), x.clone(), y.clone())?);
        }
    }
    Ok(out)
}

/// Every square of `squares` filled with every sigma-cell and its mate.
fn filled(top: &Adjunction, bottom: &Adjunction, bud: Budget) -> Result<Vec<MateSquare>> {
    let mut out = Vec::new();
    for sq in squares(top, bottom, bud)? {
        for s in enumerate_nats(&sq.sigma_dom()?, &sq.sigma_cod()?, bud)? {
            out.push(sq.clone().with_sigma(s)?.mate()?);
        }
    }
    Ok(out)
}

fn legs(sq: &MateSquare) -> String {
    format!("X = [{}], Y = [{}]", sq.x.describe(), sq.y.describe())
}

fn cell(t: &NatTrans) -> String {
    format!("{t:?}")
}

fn mate_checks(ws: &Workspace, cfg: &SuiteConfig, r: &mut Runner) {
    let adjs = small_adjunctions(ws, cfg);
    for &(tn, top) in &adjs {
        for &(bn, bottom) in &adjs {
            r.run(format!("mates:{tn}/{bn}:involution"), "mate correspondence is a bijection", || {
                let mut cases = 0;
                for sq in squares(top, bottom, cfg.bud)? {
                    let sigmas = enumerate_nats(&sq.sigma_dom()?, &sq.sigma_cod()?, cfg.bud)?;
                    let taus = enumerate_nats(&sq.tau_dom()?, &sq.tau_cod()?, cfg.bud)?;
                    if sigmas.len() != taus.len() {
                        return Ok(Outcome::fail(
                            cases,
                            format!("{}: {} sigma vs {} tau cells", legs(&sq), sigmas.len(), taus.len()),
                        ));
                    }
                    for s in &sigmas {
                        let t = sq.right_mate(s)?;
                        if sq.left_mate(&t)? != *s {
                            return Ok(Outcome::fail(cases, format!("{}: sigma {}", legs(&sq), cell(s))));
                        }
                        let v = sq.clone().with_sigma(s.clone())?.with_tau(t)?.check_mate_pair()?;
                        if !(v.mates && v.unit_condition && v.hom_condition) {
                            return Ok(Outcome::fail(cases, format!("{}: {:?}", legs(&sq), v.witness)));
                        }
                        cases += 1;
                    }
                    for t in &taus {
                        if sq.right_mate(&sq.left_mate(t)?)? != *t {
                            return Ok(Outcome::fail(cases, format!("{}: tau {}", legs(&sq), cell(t))));
                        }
                        cases += 1;
                    }
                }
                Ok(Outcome::pass(cases))
            });
            if same_cat(top.src(), bottom.src()) && same_cat(top.tgt(), bottom.tgt()) {
                r.run(format!("mates:{tn}/{bn}:conjugate"), "conjugate cells are invertible together", || {
                    let sq = MateSquare::new(
                        top.clone(),
                        bottom.clone(),
                        Functor::identity(top.src()),
                        Functor::identity(top.tgt()),
                    )?;
                    let taus = enumerate_nats(&sq.tau_dom()?, &sq.tau_cod()?, cfg.bud)?;
                    for (k, t) in taus.iter().enumerate() {
                        let (a, b) = conjugate_iso_check(&sq.clone().with_tau(t.clone())?.mate()?)?;
                        if a != b {
                            return Ok(Outcome::fail(k, format!("tau {} gives ({a}, {b})", cell(t))));
                        }
                    }
                    if taus.is_empty() {
                        return Ok(Outcome::skipped("no tau-cells for identity legs"));
                    }
                    Ok(Outcome::pass(taus.len()))
                });
            }
        }
    }
    r.run("mates:pasting:vertical".into(), "mates are compatible with vertical pasting", || {
        let mut cases = 0;
        for &(an, a) in &adjs {
            for &(bn, b) in &adjs {
                let upper = filled(a, b, cfg.bud)?;
                for &(cn, c) in &adjs {
                    let lower = filled(b, c, cfg.bud)?;
                    for s1 in &upper {
                        for s2 in &lower {
                            if let Some(w) = pasting_failure(PasteKind::Vertical, s1, s2)? {
                                return Ok(Outcome::fail(cases, format!("{an}/{bn}/{cn}: {w}")));
                            }
                            cases += 1;
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass(cases))
    });
    r.run("mates:pasting:horizontal".into(), "mates are compatible with horizontal pasting", || {
        let mut cases = 0;
        for &(a1n, a1) in &adjs {
            for &(a2n, a2) in adjs.iter().filter(|(_, a2)| same_cat(a1.tgt(), a2.src())) {
                for &(b1n, b1) in &adjs {
                    for &(b2n, b2) in adjs.iter().filter(|(_, b2)| same_cat(b1.tgt(), b2.src())) {
                        let left = filled(a1, b1, cfg.bud)?;
                        let right = filled(a2, b2, cfg.bud)?;
                        for s1 in &left {
                            for s2 in right.iter().filter(|s2| s2.x == s1.y) {
                                if let Some(w) = pasting_failure(PasteKind::Horizontal, s1, s2)? {
                                    return Ok(Outcome::fail(cases, format!("{a1n}+{a2n}/{b1n}+{b2n}: {w}")));
                                }
                                cases += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass(cases))
    });
}

/// The mate of the pasted sigma-cells must be the pasted tau-cells.
fn pasting_failure(kind: PasteKind, s1: &MateSquare, s2: &MateSquare) -> Result<Option<String>> {
    let pasted = paste(kind, s1, s2)?;
    let tau = pasted.right_mate(pasted.sigma.as_ref().expect("pasted sigma"))?;
    let expected = paste_tau(kind, s1, s2)?;
    Ok((tau != expected).then(|| format!("{} then {}: {} vs {}", legs(s1), legs(s2), cell(&tau), cell(&expected))))
}

fn bc_checks(ws: &Workspace, cfg: &SuiteConfig, r: &mut Runner) {
    let adjs = small_adjunctions(ws, cfg);
    for &(tn, top) in &adjs {
        for &(bn, bottom) in &adjs {
            r.run(
                format!("bc:{tn}/{bn}:interchange"),
                "horizontal and vertical Beck-Chevalley conditions interchange",
                || {
                    let mut cases = 0;
                    for sq in squares(top, bottom, cfg.bud)? {
                        let (Some(xs), Some(yt)) = (find_right_adjoint(&sq.x), find_right_adjoint(&sq.y)) else {
                            continue;
                        };
                        for t in enumerate_nat_isos(&sq.tau_dom()?, &sq.tau_cod()?, cfg.bud)? {
                            let filled = sq.clone().with_tau(t)?;
                            let cert = bc_interchange(&filled, Some((&xs, &yt)))?;
                            let direct = bc_check(&filled, Direction::Horizontal, false, None)?;
                            if !(cert.verdicts_agree()
                                && cert.conjugate
                                && cert.sharp_agrees
                                && direct.holds == cert.horizontal)
                            {
                                return Ok(Outcome::fail(
                                    cases,
                                    format!(
                                        "{}: horizontal {} vertical-dual {} conjugate {} sharp {}",
                                        legs(&sq),
                                        cert.horizontal,
                                        cert.vertical_dual,
                                        cert.conjugate,
                                        cert.sharp_agrees
                                    ),
                                ));
                            }
                            cases += 1;
                        }
                    }
                    if cases == 0 {
                        return Ok(Outcome::skipped("no square with invertible tau and right adjoint legs"));
                    }
                    Ok(Outcome::pass(cases))
                },
            );
        }
    }
    let mut small: Vec<Arc<FinCat>> = Vec::new();
    for (_, a) in &adjs {
        for c in [a.src(), a.tgt()] {
            if c.n_obj() <= 2 && !small.iter().any(|s| same_cat(s, c)) {
                small.push(c.clone());
            }
        }
    }
    r.run("bc:counterexample:search".into(), "invertible tau with non-invertible mate", || {
        if small.is_empty() {
            return Ok(Outcome::skipped("no small categories"));
        }
        match find_bc_counterexample(&small, cfg.bud)? {
            Some(sq) => {
                let s = sq.sigma.as_ref().expect("found square has sigma");
                let at = s.non_iso_at().map(|o| s.dom.src.obj_name(o).to_string()).unwrap_or_default();
                Ok(Outcome::pass(1).with_note(format!("{}; mate not invertible at {at}", legs(&sq))))
            }
            None => Ok(Outcome::fail(0, "no counterexample found")),
        }
    });
    if let Some(arrow) = ws.categories.get("Arrow") {
        r.run("bc:counterexample:pinned".into(), "invertible tau with non-invertible mate", || {
            let sq = pinned_counterexample(arrow)?;
            let rep = bc_check(&sq, Direction::Horizontal, false, None)?;
            let tau_iso = sq.tau.as_ref().is_some_and(|t| t.is_iso());
            Ok(Outcome::verdict(tau_iso && !rep.holds, 1, || "pinned square is not a counterexample".into()))
        });
    }
    for (iname, jname) in &cfg.shapes {
        let (Some(i), Some(j)) = (ws.categories.get(iname), ws.categories.get(jname)) else { continue };
        for (cname, c) in ws.categories.iter().filter(|(_, c)| c.n_obj() <= cfg.max_objects) {
            r.run(format!("bc:{cname}/{iname}/{jname}:constant-diagram"), "colimits commute with evaluation", || {
                let reps = colimit_square_sweep(c, i, j, cfg.max_diagrams, 4, cfg.bud)?;
                if reps.is_empty() {
                    return Ok(Outcome::skipped("only constant diagrams"));
                }
                match reps.iter().find(|(_, rep)| !rep.holds) {
                    Some((jo, rep)) => Ok(Outcome::fail(
                        reps.len(),
                        format!(
                            "at {}: mate not invertible at {}",
                            j.obj_name(*jo),
                            rep.witness.clone().unwrap_or_default()
                        ),
                    )),
                    None => Ok(Outcome::pass(reps.len())),
                }
            });
        }
    }
}

impl Outcome {
    fn with_note(mut self, note: String) -> Outcome {
        self.witness = Some(note);
        self
    }
}

fn loc_of(rc: &RelCat, cfg: &SuiteConfig) -> Arc<LocalizationResult> {
    Arc::new(localize(rc, bound_for(rc, cfg)))
}

/// A total cert for `f` between two relative categories: homotopical, or
/// through a retraction of the source on the requested side.
fn total_cert(
    ws: &Workspace,
    f: &Functor,
    (src_name, src): (&str, &Arc<LocalizationResult>),
    tgt: &Arc<LocalizationResult>,
    side: Side,
) -> Result<DerivedFunctorCert> {
    let left = side == Side::Left;
    if is_homotopical(f, &src.rc, &tgt.rc) {
        return homotopical_cert(f, src, tgt, left);
    }
    for nr in ws.retractions.values().filter(|nr| nr.relcat == src_name && nr.data.side == side) {
        let ret = validate_retraction(nr.data.clone())?;
        if let Ok(cert) = derive_via_retraction(f, &ret, Some(tgt)) {
            return Ok(cert);
        }
    }
    Err(CatError::PreconditionFailure("not homotopical and no usable retraction".into()))
}

fn derived_checks(ws: &Workspace, cfg: &SuiteConfig, r: &mut Runner) {
    let probes = probe_cats(ws, cfg);
    for (rname, nr) in &ws.retractions {
        let ret = validate_retraction(nr.data.clone());
        let c = nr.data.rc.cat.clone();
        let mut funs: Vec<(String, Functor)> = vec![(format!("id:{}", c.name()), Functor::identity(&c))];
        funs.extend(
            ws.functors
                .iter()
                .filter(|(_, f)| same_cat(&f.functor.src, &c))
                .map(|(n, f)| (n.clone(), f.functor.clone())),
        );
        for (fname, f) in funs {
            let cert = ret.clone().and_then(|ret| derive_via_retraction(&f, &ret, None));
            r.run(format!("derived:{rname}/{fname}:kan"), "derived functor via deformation retraction", || {
                let rep = verify_kan(&cert.clone()?, Some(&probes), cfg.bud)?;
                Ok(Outcome::verdict(rep.passed(), rep.candidates + rep.factorizations, || {
                    rep.witness.clone().unwrap_or_else(|| format!("absoluteness {}", rep.absolute.as_str()))
                }))
            });
            r.run(
                format!("derived:{rname}/{fname}:corruption"),
                "single-component corruptions break the Kan property",
                || {
                    let cert = cert.clone()?;
                    let t = cert.cell.cod.tgt.clone();
                    let mut cases = 0;
                    for (k, &m0) in cert.cell.comp.iter().enumerate() {
                        for m in t.morphisms().filter(|&m| m != m0) {
                            let mut bad = cert.clone();
                            bad.cell.comp[k] = m;
                            if verify_kan(&bad, Some(&[]), cfg.bud)?.universal {
                                return Ok(Outcome::fail(
                                    cases,
                                    format!(
                                        "component at {} replaced by {} went unnoticed",
                                        cert.cell.dom.src.obj_name(k),
                                        t.mor_name(m)
                                    ),
                                ));
                            }
                            cases += 1;
                        }
                    }
                    Ok(Outcome::pass(cases))
                },
            );
        }
    }

    let mut derived: Vec<(String, DerivedAdjunction)> = Vec::new();
    for (aname, na) in &ws.adjunctions {
        let adj = &na.adj;
        let over = |c: &Arc<FinCat>| ws.relcats.iter().filter(|(_, r)| same_cat(&r.rc.cat, c)).collect::<Vec<_>>();
        for (cn, rc) in over(adj.src()) {
            for (dn, rd) in over(adj.tgt()) {
                let id = format!("derived:{aname}@{cn},{dn}:adjunction");
                let (lc, ld) = (loc_of(&rc.rc, cfg), loc_of(&rd.rc, cfg));
                let attempt = (|| -> Result<DerivedAdjunction> {
                    let cf = total_cert(ws, &adj.left, (cn, &lc), &ld, Side::Left)?;
                    let cg = total_cert(ws, &adj.right, (dn, &ld), &lc, Side::Right)?;
                    derived_adjunction(adj, &cf, &cg, cfg.bud)
                })();
                r.run(id, "derived adjunction from the compatibility squares", || {
                    let d = attempt.clone()?;
                    let ok = d.unit_solutions == 1 && d.counit_solutions == 1 && d.adjunction.hom_bijective();
                    Ok(Outcome::verdict(ok, 2, || format!("{} and {} solutions", d.unit_solutions, d.counit_solutions)))
                });
                if let Ok(d) = attempt {
                    derived.push((format!("{aname}@{cn},{dn}"), d));
                }
            }
        }
    }
    r.run("derived:composition".into(), "left adjoints compose iff right adjoints compose", || {
        let mut cases = 0;
        for (n1, inner) in &derived {
            for (n2, outer) in &derived {
                let mid_ok = same_cat(&inner.adjunction.right.src, &outer.adjunction.left.src)
                    && inner
                        .left
                        .tgt
                        .as_ref()
                        .zip(Some(&outer.left.src))
                        .is_some_and(|(a, b)| a.rc.weq == b.rc.weq && same_cat(&a.rc.cat, &b.rc.cat));
                if !mid_ok {
                    continue;
                }
                let (l, rr) = adjoint_composition(inner, outer, cfg.bud)?;
                if l.composes != rr.composes {
                    return Ok(Outcome::fail(
                        cases,
                        format!("{n1} then {n2}: left {} right {}", l.composes, rr.composes),
                    ));
                }
                cases += 1;
            }
        }
        if cases == 0 {
            return Ok(Outcome::skipped("no composable derived adjunctions"));
        }
        Ok(Outcome::pass(cases))
    });
}

/// Relative categories small enough for diagram categories over them.
fn hocolim_relcats(ws: &Workspace) -> impl Iterator<Item = (&String, &RelCat)> {
    ws.relcats.iter().filter(|(_, r)| r.rc.cat.n_mor() <= 6).map(|(n, r)| (n, &r.rc))
}

fn hocolim_checks(ws: &Workspace, cfg: &SuiteConfig, r: &mut Runner) {
    let hc = HocolimConfig { bound: cfg.bound, bud: cfg.bud, search_only: false };
    for (iname, jname) in &cfg.shapes {
        let (Some(i), Some(j)) = (ws.categories.get(iname), ws.categories.get(jname)) else { continue };
        for (rname, rc) in hocolim_relcats(ws) {
            let base = format!("hocolim:{rname}/{iname}");
            r.run(format!("{base}:structure"), "homotopy colimit as left adjoint to the constant functor", || {
                match build_hocolim(rc, i, &hc)? {
                    None => Ok(Outcome::skipped("Ho Delta has no left adjoint")),
                    Some(s) => {
                        let ok = s.delta_square_commutes()? && s.unit_universality().is_none();
                        Ok(Outcome::verdict(ok, s.ho_diag().n_obj(), || s.unit_universality().unwrap_or_default())
                            .with_provenance(s.provenance.as_str()))
                    }
                }
            });
            if rc.only_isos() {
                r.run(format!("{base}:strict"), "strict and homotopy colimits agree without weak equivalences", || {
                    let s =
                        build_hocolim(rc, i, &hc)?.ok_or_else(|| CatError::MissingStructure("no hocolim".into()))?;
                    match s.strict_comparison()? {
                        None => Ok(Outcome::skipped("no strict colimits")),
                        Some(k) => Ok(Outcome::verdict(k.is_iso(), k.comp.len(), || format!("comparison {k:?}"))),
                    }
                });
            }
            let pair = format!("hocolim:{rname}/{iname}/{jname}");
            r.run(format!("{pair}:pointwise-jstar"), "pointwiseness through right adjoints of evaluation", || {
                let rep = pointwise_via_jstar(rc, i, j, &hc)?;
                Ok(pointwise_outcome(&rep))
            });
            r.run(format!("{pair}:pointwise-jshriek"), "pointwiseness through left adjoints of evaluation", || {
                let rep = pointwise_via_jshriek(rc, i, j, &hc)?;
                Ok(pointwise_outcome(&rep))
            });
            r.run(format!("{pair}:fubini"), "homotopy colimits over a product iterate", || {
                let rep = fubini_check(rc, i, j, &hc)?;
                Ok(Outcome::verdict(rep.holds(), 1, || {
                    format!(
                        "uncurry iso {}, right adjoints equal {}, conjugate {:?}",
                        rep.uncurry_is_iso, rep.right_adjoints_equal, rep.conjugate_iso
                    )
                }))
            });
            for jo in j.objects() {
                r.run(
                    format!("{pair}:transfer:{}", j.obj_name(jo)),
                    "homotopy colimits transfer along evaluation",
                    || {
                        let rep = transfer_hocolim(rc, i, j, jo, &hc)?;
                        match rep.agrees {
                            None => Ok(Outcome::pass(1).with_note("no direct structure to compare".into())),
                            Some(a) => Ok(Outcome::verdict(a, 1, || "transferred and direct hocolim differ".into())),
                        }
                    },
                );
            }
        }
    }
}

fn pointwise_outcome(rep: &crate::hocolim::PointwisenessReport) -> Outcome {
    let cases = rep.cells.len() + rep.naturality.len() + rep.equations.len();
    Outcome::verdict(rep.holds(), cases, || {
        if let Some(v) = rep.naturality.iter().find(|v| !v.commutes) {
            return format!("naturality fails at {} ({})", v.name, v.witness.clone().unwrap_or_default());
        }
        if let Some(e) = rep.equations.iter().find(|e| !e.holds) {
            return format!("equation {} fails: {}", e.name, e.detail);
        }
        if let Some(h) = rep.hypotheses.iter().find(|h| !h.holds) {
            return format!("hypothesis {} fails: {}", h.name, h.detail);
        }
        "a comparison cell is not invertible".into()
    })
}

impl Outcome {
    fn with_provenance(mut self, p: &str) -> Outcome {
        if self.witness.is_none() {
            self.witness = Some(format!("provenance {p}"));
        }
        self
    }
}
