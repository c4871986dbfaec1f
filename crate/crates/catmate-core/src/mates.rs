//! Mate squares: the bijection between `F'X => YF` and `XG => G'Y`, its
//! hom-set characterization, pasting and conjugate isomorphisms.

use crate::adjunction::Adjunction;
use crate::cat::Obj;
use crate::error::{shape, CatError, Result};
use crate::functor::{same_cat, Functor, NatTrans};

/// ```text
///   C --F--> D        top:    F -| G
///   |X       |Y       bottom: F' -| G'
///   C' -F'-> D'       sigma: F'X => YF,  tau: XG => G'Y
/// ```
#[derive(Clone, Debug)]
pub struct MateSquare {
    pub top: Adjunction,
    pub bottom: Adjunction,
    pub x: Functor,
    pub y: Functor,
    pub sigma: Option<NatTrans>,
    pub tau: Option<NatTrans>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MateVerdict {
    pub mates: bool,
    pub unit_condition: bool,
    pub hom_condition: bool,
    pub witness: Option<String>,
}

impl MateSquare {
    pub fn new(top: Adjunction, bottom: Adjunction, x: Functor, y: Functor) -> Result<MateSquare> {
        if !same_cat(&x.src, top.src())
            || !same_cat(&y.src, top.tgt())
            || !same_cat(&x.tgt, bottom.src())
            || !same_cat(&y.tgt, bottom.tgt())
        {
            return Err(shape("square boundaries do not align"));
        }
        Ok(MateSquare { top, bottom, x, y, sigma: None, tau: None })
    }

    pub fn with_sigma(mut self, sigma: NatTrans) -> Result<MateSquare> {
        if sigma.dom != self.bottom.left.after(&self.x)? || sigma.cod != self.y.after(&self.top.left)? {
            return Err(shape("sigma must go F'X => YF"));
        }
        self.sigma = Some(sigma);
        Ok(self)
    }

    pub fn with_tau(mut self, tau: NatTrans) -> Result<MateSquare> {
        if tau.dom != self.x.after(&self.top.right)? || tau.cod != self.bottom.right.after(&self.y)? {
            return Err(shape("tau must go XG => G'Y"));
        }
        self.tau = Some(tau);
        Ok(self)
    }

    /// `F'X`.
    pub fn sigma_dom(&self) -> Result<Functor> {
        self.bottom.left.after(&self.x)
    }
    /// `YF`.
    pub fn sigma_cod(&self) -> Result<Functor> {
        self.y.after(&self.top.left)
    }
    /// `XG`.
    pub fn tau_dom(&self) -> Result<Functor> {
        self.x.after(&self.top.right)
    }
    /// `G'Y`.
    pub fn tau_cod(&self) -> Result<Functor> {
        self.bottom.right.after(&self.y)
    }

    /// Right mate `tau_d = G'Y(eps_d) . G'(sigma_Gd) . eta'_XGd`.
    pub fn right_mate(&self, sigma: &NatTrans) -> Result<NatTrans> {
        let (g, eps) = (&self.top.right, &self.top.counit);
        let (g2, eta2) = (&self.bottom.right, &self.bottom.unit);
        let c2 = self.x.tgt.clone();
        let d = self.y.src.clone();
        let comp = d
            .objects()
            .map(|b| {
                let gb = g.obj[b];
                let xgb = self.x.obj[gb];
                let m = c2.compose(g2.mor[sigma.comp[gb]], eta2.comp[xgb]);
                c2.compose(g2.mor[self.y.mor[eps.comp[b]]], m)
            })
            .collect();
        Ok(NatTrans { dom: self.tau_dom()?, cod: self.tau_cod()?, comp })
    }

    /// Left mate `sigma_c = eps'_YFc . F'(tau_Fc) . F'X(eta_c)`.
    pub fn left_mate(&self, tau: &NatTrans) -> Result<NatTrans> {
        let (f, eta) = (&self.top.left, &self.top.unit);
        let (f2, eps2) = (&self.bottom.left, &self.bottom.counit);
        let d2 = self.y.tgt.clone();
        let c = self.x.src.clone();
        let comp = c
            .objects()
            .map(|a| {
                let fa = f.obj[a];
                let m = d2.compose(f2.mor[tau.comp[fa]], f2.mor[self.x.mor[eta.comp[a]]]);
                d2.compose(eps2.comp[self.y.obj[fa]], m)
            })
            .collect();
        Ok(NatTrans { dom: self.sigma_dom()?, cod: self.sigma_cod()?, comp })
    }

    /// Fill in whichever cell is missing.
    pub fn mate(&self) -> Result<MateSquare> {
        let mut out = self.clone();
        match (&self.sigma, &self.tau) {
            (Some(s), None) => out.tau = Some(self.right_mate(s)?),
            (None, Some(t)) => out.sigma = Some(self.left_mate(t)?),
            (Some(_), Some(_)) => {}
            (None, None) => return Err(shape("square has no cell")),
        }
        Ok(out)
    }

    /// Both characterizations of matehood, evaluated independently.
    pub fn check_mate_pair(&self) -> Result<MateVerdict> {
        let (sigma, tau) = match (&self.sigma, &self.tau) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(shape("check_mate_pair needs both cells")),
        };
        let (f, g, eta) = (&self.top.left, &self.top.right, &self.top.unit);
        let (g2, eta2) = (&self.bottom.right, &self.bottom.unit);
        let c = &*self.x.src;
        let d = &*self.y.src;
        let c2 = &*self.x.tgt;
        let d2 = &*self.y.tgt;
        let mut unit_witness: Option<String> = None;
        for a in c.objects() {
            let lhs = c2.compose(g2.mor[sigma.comp[a]], eta2.comp[self.x.obj[a]]);
            let rhs = c2.compose(tau.comp[f.obj[a]], self.x.mor[eta.comp[a]]);
            if lhs != rhs {
                unit_witness = Some(c.obj_name(a).to_string());
                break;
            }
        }
        let mut hom_witness: Option<String> = None;
        'outer: for a in c.objects() {
            for b in d.objects() {
                for &h in d.hom(f.obj[a], b) {
                    let lhs = c2.compose(tau.comp[b], self.x.mor[c.compose(g.mor[h], eta.comp[a])]);
                    let rhs = c2.compose(g2.mor[d2.compose(self.y.mor[h], sigma.comp[a])], eta2.comp[self.x.obj[a]]);
                    if lhs != rhs {
                        hom_witness = Some(format!("({}, {})", c.obj_name(a), d.obj_name(b)));
                        break 'outer;
                    }
                }
            }
        }
        let (u, h) = (unit_witness.is_none(), hom_witness.is_none());
        Ok(MateVerdict { mates: u && h, unit_condition: u, hom_condition: h, witness: hom_witness.or(unit_witness) })
    }

    /// Identity square on an adjunction with identity cells.
    pub fn identity_on(adj: &Adjunction) -> MateSquare {
        let x = Functor::identity(adj.src());
        let y = Functor::identity(adj.tgt());
        MateSquare {
            top: adj.clone(),
            bottom: adj.clone(),
            sigma: Some(NatTrans::identity(&adj.left)),
            tau: Some(NatTrans::identity(&adj.right)),
            x,
            y,
        }
    }

    pub fn is_conjugate_shape(&self) -> bool {
        self.x.is_identity() && self.y.is_identity()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PasteKind {
    Vertical,
    Horizontal,
}

/// Paste two squares carrying sigma-cells. Vertical: `s2` sits below `s1`
/// (`s1.bottom == s2.top`). Horizontal: `s2` sits to the right of `s1`
/// (`s1.y == s2.x`).
pub fn paste(kind: PasteKind, s1: &MateSquare, s2: &MateSquare) -> Result<MateSquare> {
    let sig1 = s1.sigma.as_ref().ok_or_else(|| shape("paste needs sigma cells"))?;
    let sig2 = s2.sigma.as_ref().ok_or_else(|| shape("paste needs sigma cells"))?;
    match kind {
        PasteKind::Vertical => {
            if s1.bottom != s2.top {
                return Err(shape("vertical paste: middle adjunctions differ"));
            }
            let x = s2.x.after(&s1.x)?;
            let y = s2.y.after(&s1.y)?;
            // Y' sigma . sigma'_X
            let cell = NatTrans::whisker_left(&s2.y, sig1)?.after(&NatTrans::whisker_right(sig2, &s1.x)?)?;
            MateSquare::new(s1.top.clone(), s2.bottom.clone(), x, y)?.with_sigma(cell)
        }
        PasteKind::Horizontal => {
            if s1.y != s2.x {
                return Err(shape("horizontal paste: middle legs differ"));
            }
            let top = s1.top.then(&s2.top)?;
            let bottom = s1.bottom.then(&s2.bottom)?;
            // sigma2_{F1} . F2' sigma1
            let cell =
                NatTrans::whisker_right(sig2, &s1.top.left)?.after(&NatTrans::whisker_left(&s2.bottom.left, sig1)?)?;
            MateSquare::new(top, bottom, s1.x.clone(), s2.y.clone())?.with_sigma(cell)
        }
    }
}

/// The pasting of the two tau-cells, computed independently of `paste`.
pub fn paste_tau(kind: PasteKind, s1: &MateSquare, s2: &MateSquare) -> Result<NatTrans> {
    let t1 = s1.tau.as_ref().ok_or_else(|| shape("paste_tau needs tau cells"))?;
    let t2 = s2.tau.as_ref().ok_or_else(|| shape("paste_tau needs tau cells"))?;
    match kind {
        // tau'_Y . X' tau
        PasteKind::Vertical => NatTrans::whisker_right(t2, &s1.y)?.after(&NatTrans::whisker_left(&s2.x, t1)?),
        // G1' tau2 . tau1_{G2}
        PasteKind::Horizontal => {
            NatTrans::whisker_left(&s1.bottom.right, t2)?.after(&NatTrans::whisker_right(t1, &s2.top.right)?)
        }
    }
}

/// For a conjugate square (X, Y identities) with both cells, report whether
/// each cell is invertible.
pub fn conjugate_iso_check(square: &MateSquare) -> Result<(bool, bool)> {
    if !square.is_conjugate_shape() {
        return Err(shape("conjugate_iso_check needs identity legs"));
    }
    let v = square.check_mate_pair()?;
    if !v.mates {
        return Err(CatError::NotMates { witness: v.witness.unwrap_or_default() });
    }
    let s = square.sigma.as_ref().unwrap().is_iso();
    let t = square.tau.as_ref().unwrap().is_iso();
    Ok((s, t))
}

/// Mate naturality: for `alpha: X => X'` and `beta: Y => Y'` between two
/// squares sharing adjunctions, the sigma-square commutes iff the tau-square does.
pub fn mate_naturality(s: &MateSquare, s2: &MateSquare, alpha: &NatTrans, beta: &NatTrans) -> Result<(bool, bool)> {
    let (sig, sig2) = (s.sigma.as_ref().unwrap(), s2.sigma.as_ref().unwrap());
    let (tau, tau2) = (s.tau.as_ref().unwrap(), s2.tau.as_ref().unwrap());
    // beta_F . sigma  vs  sigma' . F' alpha
    let l1 = NatTrans::whisker_right(beta, &s.top.left)?.after(sig)?;
    let l2 = sig2.after(&NatTrans::whisker_left(&s.bottom.left, alpha)?)?;
    // G' beta . tau  vs  tau' . alpha_G
    let r1 = NatTrans::whisker_left(&s.bottom.right, beta)?.after(tau)?;
    let r2 = tau2.after(&NatTrans::whisker_right(alpha, &s.top.right)?)?;
    Ok((l1 == l2, r1 == r2))
}

/// First object where two parallel transformations differ.
pub fn first_difference(a: &NatTrans, b: &NatTrans) -> Option<Obj> {
    a.comp.iter().zip(&b.comp).position(|(x, y)| x != y)
}
