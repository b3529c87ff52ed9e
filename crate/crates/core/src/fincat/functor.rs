//! Functors between finite categories.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Report;

use super::category::{same_category, CatRef, MorId, ObjId};

#[derive(Debug, Clone, PartialEq)]
pub struct FinFunctor {
    pub source: CatRef,
    pub target: CatRef,
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl FinFunctor {
    pub fn new(source: CatRef, target: CatRef, obj_map: Vec<ObjId>, mor_map: Vec<MorId>) -> Result<Self> {
        if obj_map.len() != source.object_count() || mor_map.len() != source.mor_count() {
            return Err(Error::malformed(
                "functor maps do not cover the source category",
            ));
        }
        if obj_map.iter().any(|o| o.0 >= target.object_count())
            || mor_map.iter().any(|m| m.0 >= target.mor_count())
        {
            return Err(Error::malformed("functor maps point outside the target"));
        }
        Ok(FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn identity(c: &CatRef) -> Self {
        FinFunctor {
            source: Arc::clone(c),
            target: Arc::clone(c),
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    pub fn on_obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.0]
    }

    pub fn on_mor(&self, m: MorId) -> MorId {
        self.mor_map[m.0]
    }

    /// g∘f, requiring f.target = g.source.
    pub fn compose(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(&f.target, &g.source) {
            return Err(Error::BaseMismatch(
                "functor composition: inner target differs from outer source".into(),
            ));
        }
        Ok(FinFunctor {
            source: Arc::clone(&f.source),
            target: Arc::clone(&g.target),
            obj_map: f.obj_map.iter().map(|&o| g.on_obj(o)).collect(),
            mor_map: f.mor_map.iter().map(|&m| g.on_mor(m)).collect(),
        })
    }

    /// Preservation of endpoints, identities and all tabulated composites.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("functor");
        let (c, d) = (&self.source, &self.target);
        for m in c.morphisms() {
            let fm = self.on_mor(m);
            report.check(
                "preserves-endpoints",
                || format!("{} maps to {}", c.mor_name(m), d.mor_name(fm)),
                d.src(fm) == self.on_obj(c.src(m)) && d.tgt(fm) == self.on_obj(c.tgt(m)),
            );
        }
        for o in c.objects() {
            report.check(
                "preserves-identity",
                || format!("id_{}", c.object_name(o)),
                self.on_mor(c.identity(o)) == d.identity(self.on_obj(o)),
            );
        }
        for (&(g, f), &gf) in c.composition_entries() {
            report.check(
                "preserves-composition",
                || format!("{} . {}", c.mor_name(g), c.mor_name(f)),
                d.compose(self.on_mor(g), self.on_mor(f)) == Some(self.on_mor(gf)),
            );
        }
        report
    }

    /// Every hom map hom(a,b) -> hom(Fa,Fb) is a bijection.
    pub fn is_fully_faithful(&self) -> Result<bool> {
        let (c, d) = (&self.source, &self.target);
        for a in c.objects() {
            for b in c.objects() {
                let dom = c.hom_set(a, b)?;
                let cod = d.hom_set(self.on_obj(a), self.on_obj(b))?;
                let mut image: Vec<MorId> = dom.iter().map(|&m| self.on_mor(m)).collect();
                image.sort();
                image.dedup();
                if image.len() != dom.len() || image.len() != cod.len() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_identity_on_objects(&self) -> bool {
        self.source.object_count() == self.target.object_count()
            && self.obj_map.iter().enumerate().all(|(i, o)| o.0 == i)
    }
}

/// All functors c -> d, by backtracking over object and morphism assignments.
/// Output is lexicographic in the flattened assignment vector.
pub fn all_functors(c: &CatRef, d: &CatRef) -> Vec<FinFunctor> {
    let mut found = Vec::new();
    let n_obj = c.object_count();
    let mut obj_map: Vec<ObjId> = Vec::with_capacity(n_obj);

    fn assign_mors(
        c: &CatRef,
        d: &CatRef,
        obj_map: &[ObjId],
        mor_map: &mut Vec<MorId>,
        found: &mut Vec<FinFunctor>,
    ) {
        let next = mor_map.len();
        if next == c.mor_count() {
            // endpoint and identity constraints hold by construction; check composites
            for (&(g, f), &gf) in c.composition_entries() {
                if d.compose(mor_map[g.0], mor_map[f.0]) != Some(mor_map[gf.0]) {
                    return;
                }
            }
            found.push(FinFunctor {
                source: Arc::clone(c),
                target: Arc::clone(d),
                obj_map: obj_map.to_vec(),
                mor_map: mor_map.clone(),
            });
            return;
        }
        let m = MorId(next);
        if c.is_identity(m) {
            mor_map.push(d.identity(obj_map[c.src(m).0]));
            assign_mors(c, d, obj_map, mor_map, found);
            mor_map.pop();
            return;
        }
        let fa = obj_map[c.src(m).0];
        let fb = obj_map[c.tgt(m).0];
        for cand in d.hom_set(fa, fb).expect("objects exist") {
            mor_map.push(cand);
            assign_mors(c, d, obj_map, mor_map, found);
            mor_map.pop();
        }
    }

    fn assign_objs(
        c: &CatRef,
        d: &CatRef,
        obj_map: &mut Vec<ObjId>,
        found: &mut Vec<FinFunctor>,
    ) {
        if obj_map.len() == c.object_count() {
            let mut mor_map = Vec::with_capacity(c.mor_count());
            assign_mors(c, d, obj_map, &mut mor_map, found);
            return;
        }
        for o in d.objects() {
            obj_map.push(o);
            assign_objs(c, d, obj_map, found);
            obj_map.pop();
        }
    }

    assign_objs(c, d, &mut obj_map, &mut found);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::samples;

    #[test]
    fn identity_functor_is_valid_ff_ioo() {
        let c = Arc::new(samples::chain(3));
        let f = FinFunctor::identity(&c);
        assert!(f.validate().is_clean());
        assert!(f.is_fully_faithful().unwrap());
        assert!(f.is_identity_on_objects());
    }

    #[test]
    fn constant_functor_to_terminal_is_not_ff() {
        let arrow = Arc::new(samples::walking_arrow());
        let pt = Arc::new(samples::terminal());
        let f = FinFunctor::new(
            Arc::clone(&arrow),
            Arc::clone(&pt),
            vec![ObjId(0), ObjId(0)],
            vec![MorId(0); arrow.mor_count()],
        )
        .unwrap();
        assert!(f.validate().is_clean());
        assert!(!f.is_fully_faithful().unwrap());
    }

    #[test]
    fn full_subcategory_inclusion_is_ff_not_ioo() {
        // chain 0<1<2, full subcategory on {0, 2}
        let big = Arc::new(samples::chain(3));
        let mut b = super::super::category::CategoryBuilder::new("sub");
        let s0 = b.object("0");
        let s2 = b.object("2");
        let f02 = b.morphism("f02", s0, s2);
        let sub = Arc::new(b.build());
        let _ = f02;
        let incl = FinFunctor::new(
            Arc::clone(&sub),
            Arc::clone(&big),
            vec![ObjId(0), ObjId(2)],
            vec![
                big.mor_by_name("f02").unwrap(),
                big.identity(ObjId(0)),
                big.identity(ObjId(2)),
            ],
        )
        .unwrap();
        assert!(incl.validate().is_clean(), "{}", incl.validate().render_text());
        assert!(incl.is_fully_faithful().unwrap());
        assert!(!incl.is_identity_on_objects());
    }

    #[test]
    fn functor_count_between_walking_arrows_is_three() {
        let c = Arc::new(samples::walking_arrow());
        assert_eq!(all_functors(&c, &c).len(), 3);
    }
}
