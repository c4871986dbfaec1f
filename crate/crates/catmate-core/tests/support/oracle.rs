//! Brute-force localization oracle: all typed zig-zag words up to a length,
//! glued by union-find under rewrites that hold in any localization.

use std::collections::HashMap;

use catmate_core::cat::{Mor, Obj};
use catmate_core::localization::{Letter, Localization, RelCat};

type Word = (Obj, Vec<Letter>);

pub struct Oracle {
    words: Vec<Word>,
    parent: Vec<usize>,
    /// Words this short are compared; longer ones only serve as detours.
    compare: usize,
}

impl Oracle {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[x] = r;
        r
    }

    pub fn build(rc: &RelCat, len: usize) -> Oracle {
        let c = &*rc.cat;
        let end = |start: Obj, w: &[Letter]| match w.last() {
            None => start,
            Some(Letter::Fwd(m)) => c.cod(*m),
            Some(Letter::Inv(m)) => c.dom(*m),
        };
        let mut words: Vec<Word> = c.objects().map(|o| (o, Vec::new())).collect();
        let mut frontier = words.clone();
        for _ in 0..len {
            let mut next = Vec::new();
            for (s, w) in &frontier {
                let e = end(*s, w);
                for m in c.morphisms() {
                    if c.dom(m) == e {
                        let mut v = w.clone();
                        v.push(Letter::Fwd(m));
                        next.push((*s, v));
                    }
                    if rc.weq[m] && c.cod(m) == e {
                        let mut v = w.clone();
                        v.push(Letter::Inv(m));
                        next.push((*s, v));
                    }
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let mut o = Oracle { parent: (0..words.len()).collect(), words, compare: len.saturating_sub(2) };
        for k in 0..o.words.len() {
            let (s, w) = o.words[k].clone();
            for p in 0..w.len() {
                let mut rewrites: Vec<Vec<Letter>> = Vec::new();
                match w[p] {
                    Letter::Fwd(f) if c.is_identity(f) => rewrites.push([&w[..p], &w[p + 1..]].concat()),
                    // derivable: f^-1 = f^-1 . f . g = g for g the inverse of f in C
                    Letter::Inv(f) => {
                        if let Some(g) = c.inverse(f) {
                            rewrites.push([&w[..p], &[Letter::Fwd(g)], &w[p + 1..]].concat());
                        }
                    }
                    _ => {}
                }
                if p + 1 < w.len() {
                    match (w[p], w[p + 1]) {
                        (Letter::Fwd(f), Letter::Fwd(g)) => {
                            rewrites.push([&w[..p], &[Letter::Fwd(c.compose(g, f))], &w[p + 2..]].concat())
                        }
                        (Letter::Fwd(a), Letter::Inv(b)) | (Letter::Inv(a), Letter::Fwd(b)) if a == b => {
                            rewrites.push([&w[..p], &w[p + 2..]].concat())
                        }
                        // a^-1 then b^-1 is (a.b)^-1 whenever a.b is itself inverted
                        (Letter::Inv(a), Letter::Inv(b)) => {
                            let ab = c.compose(a, b);
                            if rc.weq[ab] {
                                rewrites.push([&w[..p], &[Letter::Inv(ab)], &w[p + 2..]].concat())
                            }
                        }
                        _ => {}
                    }
                }
                for r in rewrites {
                    let j = index[&(s, r)];
                    let (a, b) = (o.find(k), o.find(j));
                    o.parent[a] = b;
                }
            }
        }
        o
    }
}

/// Every oracle class maps to one morphism of `Ho`, distinct classes of short
/// words to distinct morphisms, and every morphism of `Ho` is hit.
pub fn agrees(loc: &Localization, o: &mut Oracle) -> Result<(), String> {
    let mut class_to_mor: HashMap<usize, Mor> = HashMap::new();
    let mut mor_to_class: HashMap<Mor, usize> = HashMap::new();
    let mut hit = vec![false; loc.ho.n_mor()];
    for k in 0..o.words.len() {
        let (s, w) = o.words[k].clone();
        let m = loc.class_of(loc.h.obj[s], &w).ok_or_else(|| format!("word {w:?} has no class"))?;
        hit[m] = true;
        let cls = o.find(k);
        if *class_to_mor.entry(cls).or_insert(m) != m {
            return Err(format!("oracle-equal words split: {w:?}"));
        }
        // long words may still be missing the detours that would merge them
        if w.len() > o.compare {
            continue;
        }
        if *mor_to_class.entry(m).or_insert(cls) != cls {
            return Err(format!(
                "distinct oracle classes merged at {}: {:?} vs class of {:?}",
                loc.ho.mor_name(m),
                w,
                o.words[mor_to_class[&m]]
            ));
        }
    }
    let reached = hit.iter().filter(|&&b| b).count();
    if reached != loc.ho.n_mor() {
        return Err(format!("oracle reaches {reached} of {} morphisms", loc.ho.n_mor()));
    }
    Ok(())
}
