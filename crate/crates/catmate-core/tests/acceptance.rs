//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#[path = "support/oracle.rs"]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use catmate_core::adjunction::Adjunction;
use catmate_core::bc::{
    bc_check, bc_interchange, colimit_square, colimit_square_sweep, find_bc_counterexample, pinned_counterexample,
    pointwise_colimit_diagrams, Direction,
};
use catmate_core::cat::FinCat;
use catmate_core::derived::{
    adjoint_composition, derive_via_retraction, derived_adjunction, homotopical_cert, validate_retraction, verify_kan,
    DerivedAdjunction,
};
use catmate_core::enumerate::{enumerate_functors, enumerate_nats};
use catmate_core::fixtures;
use catmate_core::format::{parse, Workspace};
use catmate_core::functor::{Functor, NatTrans};
use catmate_core::functor_cat::functor_category;
use catmate_core::hocolim::{
    build_hocolim, ff_lj_shriek, fubini_check, pointwise_via_jshriek, pointwise_via_jstar, HocolimConfig,
};
use catmate_core::localization::{localize, RelCat};
use catmate_core::suite::{run_suite, Report, Status, Suite, SuiteConfig};
use catmate_core::Budget;

const CORPUS: &str = include_str!("../../../fixtures/corpus.cat");

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Workspace {
    parse(CORPUS).expect("corpus parses")
}

fn bud() -> Budget {
    Budget::default()
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

/// Checks of a report whose id matches `pred`: all pass, none fail, at least one ran.
fn all_pass(rep: &Report, pred: impl Fn(&str) -> bool, allow_skip: bool) -> Result<(usize, usize), String> {
    let mut checks = 0;
    let mut cases = 0;
    for c in rep.checks.iter().filter(|c| pred(&c.id)) {
        match c.status {
            Status::Pass => {
                checks += 1;
                cases += c.cases;
            }
            Status::Skipped if allow_skip => {}
            s => return Err(format!("{} is {}: {}", c.id, s.as_str(), c.witness.clone().unwrap_or_default())),
        }
    }
    ensure(checks > 0, || "no matching check ran".into())?;
    Ok((checks, cases))
}

fn localization_exactness() -> Verdict {
    let rc = fixtures::rel_arrow();
    let res = localize(&rc, 4);
    let loc = res.exact().map_err(e)?;
    ensure((loc.ho.n_obj(), loc.ho.n_mor()) == (2, 4), || {
        format!("Ho RelArrow has {} objects, {} morphisms", loc.ho.n_obj(), loc.ho.n_mor())
    })?;
    oracle::agrees(loc, &mut oracle::Oracle::build(&rc, 6))?;

    let g1 = fixtures::g1();
    let res = localize(&RelCat::minimal(g1.clone()), 8);
    let lg = res.exact().map_err(e)?;
    ensure(lg.ho.same_as(&g1), || "Ho G1 differs from G1".into())?;
    ensure(lg.h.obj == vec![0] && lg.h.mor == g1.morphisms().collect::<Vec<_>>(), || {
        "H is not the identity on G1".into()
    })?;
    Ok("RelArrow: 2 objects, 4 morphisms, matches the word oracle up to length 6; G1 localizes to itself with H = id"
        .into())
}

fn universal_property() -> Verdict {
    let ws = corpus();
    let rep = run_suite(&ws, Suite::Localization, &SuiteConfig::default());
    let (checks, cases) = all_pass(&rep, |id| id.contains(":universal:"), false)?;
    let expected = ws.relcats.len() * 3;
    ensure(checks == expected, || format!("{checks} of {expected} relcat/probe pairs checked"))?;
    Ok(format!("{checks} relcat/probe pairs, {cases} enumerated functors and transformation pairs, all bijective"))
}

fn mate_calculus() -> Verdict {
    let rep = run_suite(&corpus(), Suite::Mates, &SuiteConfig::default());
    let (_, inv) = all_pass(&rep, |id| id.ends_with(":involution"), false)?;
    let (_, vert) = all_pass(&rep, |id| id == "mates:pasting:vertical", false)?;
    let (_, hor) = all_pass(&rep, |id| id == "mates:pasting:horizontal", false)?;
    let (_, conj) = all_pass(&rep, |id| id.ends_with(":conjugate"), true)?;
    ensure(rep.summary.fail == 0 && rep.summary.undecided == 0, || "mates suite has failures".into())?;
    Ok(format!("(a) {inv} cells round-trip; (b) {vert} vertical and {hor} horizontal pastings; (c) {conj} conjugate pairs agree"))
}

fn beck_chevalley() -> Verdict {
    let (c, i, j) = (fixtures::fs2(), fixtures::span(), fixtures::arrow());
    let reps = colimit_square_sweep(&c, &i, &j, usize::MAX, 4, bud()).map_err(e)?;
    let cj = functor_category(&j, &c, bud()).map_err(e)?;
    let diagrams = pointwise_colimit_diagrams(&cj, &i, usize::MAX);
    ensure(reps.len() == j.n_obj() * diagrams.len().div_ceil(4), || "sweep skipped chunks".into())?;
    if let Some((jo, r)) = reps.iter().find(|(_, r)| !r.holds) {
        return Err(format!("(a) mate not invertible at J = {}: {:?}", j.obj_name(*jo), r.witness));
    }

    let rep = run_suite(&corpus(), Suite::Bc, &SuiteConfig::default());
    let (_, corpus_cases) = all_pass(&rep, |id| id.ends_with(":interchange"), true)?;
    let chunk = pointwise_colimit_diagrams(&cj, &i, 4);
    for jo in j.objects() {
        let cs = colimit_square(&cj, &i, jo, &chunk, true, bud()).map_err(e)?.ok_or("no colimit square")?;
        let (xs, yt) = cs.vertical.as_ref().ok_or("no vertical adjoints")?;
        let cert = bc_interchange(&cs.square, Some((xs, yt))).map_err(e)?;
        ensure(cert.verdicts_agree() && cert.conjugate, || {
            format!("(b) interchange disagrees on FS2 at {}", j.obj_name(jo))
        })?;
    }

    let small = [fixtures::one(), fixtures::arrow()];
    let found = find_bc_counterexample(&small, bud()).map_err(e)?.ok_or("(c) search found no counterexample")?;
    let pinned = pinned_counterexample(&fixtures::arrow()).map_err(e)?;
    for sq in [&found, &pinned] {
        let tau_iso = sq.tau.as_ref().is_some_and(|t| t.is_iso());
        let holds = bc_check(sq, Direction::Horizontal, false, None).map_err(e)?.holds;
        ensure(tau_iso && !holds, || "(c) square is not a counterexample".into())?;
    }
    Ok(format!(
        "(a) {} pointwise-colimit diagrams at both objects of Arrow; (b) {corpus_cases} corpus squares plus FS2; (c) counterexample found and pinned",
        diagrams.len()
    ))
}

fn derived_functors() -> Verdict {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).map_err(e)?;
    let a = fixtures::arrow();
    let f = Functor::identity(&a);
    let cert = derive_via_retraction(&f, &ret, None).map_err(e)?;
    ensure(cert.derived.obj == vec![0, 0], || "LF is not constant at 0".into())?;
    let i = a.mor_id("i").unwrap();
    ensure(cert.cell.comp[1] == i, || "lambda at 1 is not i".into())?;

    // independent count: every cell X H => F factors through lambda exactly once
    let xs = enumerate_functors(&cert.derived.src, &a, bud()).map_err(e)?;
    for x in &xs {
        let betas = enumerate_nats(x, &cert.derived, bud()).map_err(e)?;
        for alpha in enumerate_nats(&x.after(cert.h()).map_err(e)?, &f, bud()).map_err(e)? {
            let n = betas
                .iter()
                .filter(|b| {
                    NatTrans::whisker_right(b, cert.h()).and_then(|bh| cert.cell.after(&bh)).is_ok_and(|c| c == alpha)
                })
                .count();
            ensure(n == 1, || format!("{n} factorizations of a cell through lambda"))?;
        }
    }
    let rep = verify_kan(&cert, None, bud()).map_err(e)?;
    ensure(rep.passed(), || format!("verify_kan: {:?}", rep.witness))?;

    let mut corrupted = 0;
    for c in a.objects() {
        for m in a.morphisms().filter(|&m| m != cert.cell.comp[c]) {
            let mut bad = cert.clone();
            bad.cell.comp[c] = m;
            let rep = verify_kan(&bad, None, bud()).map_err(e)?;
            ensure(!rep.universal, || format!("corruption at {} to {} accepted", a.obj_name(c), a.mor_name(m)))?;
            corrupted += 1;
        }
    }
    Ok(format!("{} candidates, one factorization each; {corrupted} corruptions rejected", xs.len()))
}

fn triangles_hold(adj: &Adjunction) -> bool {
    let (c, d) = (adj.src(), adj.tgt());
    let (f, g) = (&adj.left, &adj.right);
    c.objects().all(|x| d.compose(adj.counit.comp[f.obj[x]], f.mor[adj.unit.comp[x]]) == d.id(f.obj[x]))
        && d.objects().all(|y| c.compose(g.mor[adj.counit.comp[y]], adj.unit.comp[g.obj[y]]) == c.id(g.obj[y]))
}

fn derived_pairs() -> Result<Vec<DerivedAdjunction>, String> {
    let a = fixtures::arrow();
    let id = Functor::identity(&a);
    let plain = Arc::new(localize(&RelCat::minimal(a.clone()), 16));
    let left = validate_retraction(fixtures::rel_arrow_left_retraction()).map_err(e)?;
    let right = validate_retraction(fixtures::rel_arrow_right_retraction()).map_err(e)?;
    let adj = Adjunction::identity(&a);
    let collapse = derived_adjunction(
        &adj,
        &derive_via_retraction(&id, &left, Some(&plain)).map_err(e)?,
        &homotopical_cert(&id, &plain, &left.loc, false).map_err(e)?,
        bud(),
    )
    .map_err(e)?;
    let expand = derived_adjunction(
        &adj,
        &homotopical_cert(&id, &plain, &right.loc, true).map_err(e)?,
        &derive_via_retraction(&id, &right, Some(&plain)).map_err(e)?,
        bud(),
    )
    .map_err(e)?;
    let flat = derived_adjunction(
        &adj,
        &homotopical_cert(&id, &plain, &plain, true).map_err(e)?,
        &homotopical_cert(&id, &plain, &plain, false).map_err(e)?,
        bud(),
    )
    .map_err(e)?;
    Ok(vec![collapse, expand, flat])
}

fn derived_adjunctions() -> Verdict {
    let rep = run_suite(&corpus(), Suite::Derived, &SuiteConfig::default());
    let (adjs, _) = all_pass(&rep, |id| id.ends_with(":adjunction"), true)?;
    let (_, pairs) = all_pass(&rep, |id| id == "derived:composition", false)?;
    let ds = derived_pairs()?;
    for d in &ds {
        ensure(d.unit_solutions == 1 && d.counit_solutions == 1, || "solution set is not a singleton".into())?;
        ensure(triangles_hold(&d.adjunction), || "triangle identity fails".into())?;
    }
    let mut tested = 0;
    for inner in &ds {
        for outer in &ds {
            let Ok((l, r)) = adjoint_composition(inner, outer, bud()) else { continue };
            ensure(l.composes == r.composes, || "left and right composition verdicts differ".into())?;
            tested += 1;
        }
    }
    ensure(tested > 0, || "no composable pair".into())?;
    Ok(format!("{adjs} corpus adjunctions derive with unique solutions; {} composition pairs agree", pairs + tested))
}

fn rel_arrow_instance() -> (RelCat, Arc<FinCat>, Arc<FinCat>) {
    (fixtures::rel_arrow(), fixtures::span(), fixtures::arrow())
}

fn jstar_route() -> Verdict {
    let (rc, i, j) = rel_arrow_instance();
    let rep = pointwise_via_jstar(&rc, &i, &j, &HocolimConfig::default()).map_err(e)?;
    ensure(rep.cells.len() == j.n_obj() && rep.isos.iter().all(|&b| b), || "some sigma_J is not invertible".into())?;
    ensure(rep.naturality.len() == j.n_mor(), || "naturality not checked for every morphism".into())?;
    if let Some(v) = rep.naturality.iter().find(|v| !v.commutes) {
        return Err(format!("naturality fails at {}", v.name));
    }
    ensure(rep.holds(), || "report does not hold".into())?;
    Ok(format!("{} invertible sigma_J, {} naturality squares commute", rep.cells.len(), rep.naturality.len()))
}

fn jshriek_route() -> Verdict {
    let (rc, i, j) = rel_arrow_instance();
    let cfg = HocolimConfig::default();
    for jo in j.objects() {
        let v = ff_lj_shriek(&rc, &j, jo, &cfg).map_err(e)?;
        ensure(v.fully_faithful && v.equation_holds, || format!("LJ_! at {} is not certified", j.obj_name(jo)))?;
    }
    let rep = pointwise_via_jshriek(&rc, &i, &j, &cfg).map_err(e)?;
    ensure(rep.holds(), || format!("{:?}", rep.equations))?;
    ensure(rep.naturality.iter().all(|v| v.commutes), || "naturality fails".into())?;
    let star = pointwise_via_jstar(&rc, &i, &j, &cfg).map_err(e)?;
    ensure(star.cells.iter().zip(&rep.cells).all(|(s, b)| s.comp == b.comp), || "routes disagree on sigma_J".into())?;

    let ho = rep.setup.bottom.ho_base().clone();
    let target = j.obj_id("1").unwrap();
    let mut detected = 0;
    for a in 0..rep.cells[target].comp.len() {
        for m in ho.morphisms().filter(|&m| m != rep.cells[target].comp[a]) {
            let mut cells = rep.cells.clone();
            cells[target].comp[a] = m;
            let verdicts = rep.setup.check_factorization(&cells);
            let bad =
                verdicts.iter().find(|v| !v.commutes).ok_or_else(|| format!("perturbation at component {a} missed"))?;
            ensure(bad.witness.is_some(), || "perturbation detected without a witness".into())?;
            detected += 1;
        }
    }
    Ok(format!("LJ_! fully faithful at both objects, equations hold, agrees with J_*; {detected} perturbations caught with witnesses"))
}

fn fubini() -> Verdict {
    let (rc, i, j) = rel_arrow_instance();
    let rep = fubini_check(&rc, &i, &j, &HocolimConfig::default()).map_err(e)?;
    ensure(rep.uncurry_is_iso, || "uncurry is not an isomorphism".into())?;
    ensure(rep.right_adjoints_equal, || "composite right adjoints differ".into())?;
    ensure(rep.conjugate_iso == (true, true), || format!("conjugacy {:?}", rep.conjugate_iso))?;
    Ok("right adjoints agree through the twist; conjugate isomorphism verified".into())
}

fn strict_consistency() -> Verdict {
    let ws = corpus();
    let cfg = HocolimConfig::default();
    let shapes = [fixtures::one(), fixtures::arrow(), fixtures::span()];
    let mut compared = 0;
    let mut without = 0;
    for (name, c) in ws.categories.iter().filter(|(_, c)| c.n_mor() <= 6) {
        let rc = RelCat::minimal(c.clone());
        for i in &shapes {
            let Some(s) = build_hocolim(&rc, i, &cfg).map_err(e)? else {
                without += 1;
                continue;
            };
            match s.strict_comparison().map_err(e)? {
                Some(k) => ensure(k.is_iso(), || format!("{name} over {}: comparison not invertible", i.name()))?,
                None => {
                    without += 1;
                    continue;
                }
            }
            compared += 1;
        }
    }
    let mut degenerate = 0;
    for c in [fixtures::arrow(), fixtures::chain2()] {
        let (i, j) = (fixtures::span(), fixtures::arrow());
        let rep = pointwise_via_jstar(&RelCat::minimal(c.clone()), &i, &j, &cfg).map_err(e)?;
        let h = &rep.setup.bottom.loc_base.exact().map_err(e)?.h;
        for jo in j.objects() {
            let strict = rep.setup.strict_identity_mate(jo).map_err(e)?.ok_or("no strict colimits")?;
            let lifted: Vec<_> = strict.comp.iter().map(|&m| h.mor[m]).collect();
            ensure(rep.cells[jo].comp == lifted, || format!("sigma_J over {} is not the strict mate", c.name()))?;
            degenerate += 1;
        }
    }
    Ok(format!("{compared} hocolim structures match strict colimits ({without} without strict colimits); {degenerate} sigma_J equal the strict identity mate"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("localization exactness", localization_exactness),
        ("universal property of localization", universal_property),
        ("mate calculus", mate_calculus),
        ("Beck-Chevalley", beck_chevalley),
        ("derived functors", derived_functors),
        ("derived adjunctions", derived_adjunctions),
        ("pointwiseness via J_*", jstar_route),
        ("pointwiseness via J_!", jshriek_route),
        ("Fubini", fubini),
        ("strict/derived consistency", strict_consistency),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
