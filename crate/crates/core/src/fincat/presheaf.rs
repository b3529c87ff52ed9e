//! Finite presheaves, natural transformations and their exhaustive search.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Report;

use super::category::{same_category, CatRef, MorId, ObjId};

/// A contravariant Set-valued functor on a finite category. For a morphism
/// f : a -> b the action maps values at b to values at a.
#[derive(Debug, Clone, PartialEq)]
pub struct FinPresheaf {
    pub base: CatRef,
    /// Value names per object; indices are the semantic content.
    pub values: Vec<Vec<String>>,
    /// action[m][v] for v an index into values[tgt m], landing in values[src m].
    pub action: Vec<Vec<usize>>,
}

impl FinPresheaf {
    pub fn size_at(&self, o: ObjId) -> usize {
        self.values[o.0].len()
    }

    pub fn act(&self, m: MorId, v: usize) -> usize {
        self.action[m.0][v]
    }

    pub fn empty(base: &CatRef) -> Self {
        FinPresheaf {
            base: Arc::clone(base),
            values: vec![Vec::new(); base.object_count()],
            action: vec![Vec::new(); base.mor_count()],
        }
    }

    /// The representable presheaf hom(-, a).
    pub fn yoneda(base: &CatRef, a: ObjId) -> Self {
        let values: Vec<Vec<MorId>> = base
            .objects()
            .map(|s| base.hom_set(s, a).expect("object exists"))
            .collect();
        let names = values
            .iter()
            .map(|hs| hs.iter().map(|&m| base.mor_name(m).to_string()).collect())
            .collect();
        let action = base
            .morphisms()
            .map(|m| {
                let tgt_hom = &values[base.tgt(m).0];
                let src_hom = &values[base.src(m).0];
                tgt_hom
                    .iter()
                    .map(|&v| {
                        let composed = base.compose(v, m).expect("composable");
                        src_hom.iter().position(|&w| w == composed).expect("closed")
                    })
                    .collect()
            })
            .collect();
        FinPresheaf {
            base: Arc::clone(base),
            values: names,
            action,
        }
    }

    /// Identity action and contravariant functoriality on every tabulated pair.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("presheaf");
        let c = &self.base;
        if self.values.len() != c.object_count() || self.action.len() != c.mor_count() {
            report.push("shape", "value or action tables do not cover the base");
            return report;
        }
        for m in c.morphisms() {
            let dom = self.size_at(c.tgt(m));
            let cod = self.size_at(c.src(m));
            if self.action[m.0].len() != dom {
                report.push(
                    "action-shape",
                    format!("action of {} has wrong domain size", c.mor_name(m)),
                );
                continue;
            }
            for (v, &w) in self.action[m.0].iter().enumerate() {
                report.check(
                    "action-range",
                    || format!("{} sends {} out of range", c.mor_name(m), v),
                    w < cod,
                );
            }
        }
        if !report.is_clean() {
            return report;
        }
        for o in c.objects() {
            let id = c.identity(o);
            report.check(
                "identity-action",
                || format!("at {}", c.object_name(o)),
                self.action[id.0].iter().enumerate().all(|(v, &w)| v == w),
            );
        }
        for (&(g, f), &gf) in c.composition_entries() {
            // contravariant: P(g∘f) = P(f) ∘ P(g)
            let ok = (0..self.size_at(c.tgt(g)))
                .all(|v| self.act(gf, v) == self.act(f, self.act(g, v)));
            report.check(
                "contravariant-functoriality",
                || format!("{} . {}", c.mor_name(g), c.mor_name(f)),
                ok,
            );
        }
        report
    }
}

/// Covariant companion, used by left Kan extensions.
#[derive(Debug, Clone, PartialEq)]
pub struct FinCopresheaf {
    pub base: CatRef,
    pub values: Vec<Vec<String>>,
    /// action[m][v] for v an index into values[src m], landing in values[tgt m].
    pub action: Vec<Vec<usize>>,
}

impl FinCopresheaf {
    pub fn size_at(&self, o: ObjId) -> usize {
        self.values[o.0].len()
    }

    pub fn act(&self, m: MorId, v: usize) -> usize {
        self.action[m.0][v]
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("copresheaf");
        let c = &self.base;
        for o in c.objects() {
            let id = c.identity(o);
            report.check(
                "identity-action",
                || format!("at {}", c.object_name(o)),
                self.action[id.0].iter().enumerate().all(|(v, &w)| v == w),
            );
        }
        for (&(g, f), &gf) in c.composition_entries() {
            let ok = (0..self.size_at(c.src(f)))
                .all(|v| self.act(gf, v) == self.act(g, self.act(f, v)));
            report.check(
                "covariant-functoriality",
                || format!("{} . {}", c.mor_name(g), c.mor_name(f)),
                ok,
            );
        }
        report
    }
}

/// A natural family of component maps between two presheaves on one base.
#[derive(Debug, Clone, PartialEq)]
pub struct NatTransform {
    pub source: Arc<FinPresheaf>,
    pub target: Arc<FinPresheaf>,
    /// components[o][v]: image in target.values[o] of source value v.
    pub components: Vec<Vec<usize>>,
}

impl NatTransform {
    pub fn validate(&self) -> Report {
        let mut report = Report::new("natural transformation");
        let c = &self.source.base;
        for m in c.morphisms() {
            let s = c.src(m);
            let t = c.tgt(m);
            for v in 0..self.source.size_at(t) {
                let left = self.components[s.0][self.source.act(m, v)];
                let right = self.target.act(m, self.components[t.0][v]);
                report.check(
                    "naturality",
                    || format!("square of {} at value {v}", c.mor_name(m)),
                    left == right,
                );
            }
        }
        report
    }
}

/// All natural transformations p ⇒ q, by element-wise backtracking with
/// naturality pruning. Components are emitted in lexicographic order of the
/// flattened assignment vector, so the result is canonical.
pub fn nat_transformations(p: &Arc<FinPresheaf>, q: &Arc<FinPresheaf>) -> Result<Vec<NatTransform>> {
    if !same_category(&p.base, &q.base) {
        return Err(Error::BaseMismatch(
            "natural transformations need a common base category".into(),
        ));
    }
    let c = &p.base;
    let n_obj = c.object_count();

    // flattened slots in object-major order
    let mut slots: Vec<(ObjId, usize)> = Vec::new();
    for o in c.objects() {
        for v in 0..p.size_at(o) {
            slots.push((o, v));
        }
    }

    // morphisms grouped by endpoint object for incremental checks
    let mors: Vec<MorId> = c.morphisms().collect();

    let mut components: Vec<Vec<Option<usize>>> =
        (0..n_obj).map(|o| vec![None; p.size_at(ObjId(o))]).collect();
    let mut found = Vec::new();

    fn consistent(
        c: &CatRef,
        p: &FinPresheaf,
        q: &FinPresheaf,
        comp: &[Vec<Option<usize>>],
        mors: &[MorId],
        o: ObjId,
        v: usize,
    ) -> bool {
        let w = comp[o.0][v].unwrap();
        for &m in mors {
            // square alpha_src ∘ P(m) = Q(m) ∘ alpha_tgt, element-wise
            if c.tgt(m) == o {
                let pv = p.act(m, v);
                if let Some(ws) = comp[c.src(m).0][pv] {
                    if ws != q.act(m, w) {
                        return false;
                    }
                }
            }
            if c.src(m) == o {
                for u in 0..p.size_at(c.tgt(m)) {
                    if p.act(m, u) == v {
                        if let Some(wt) = comp[c.tgt(m).0][u] {
                            if w != q.act(m, wt) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn search(
        c: &CatRef,
        p: &Arc<FinPresheaf>,
        q: &Arc<FinPresheaf>,
        slots: &[(ObjId, usize)],
        mors: &[MorId],
        comp: &mut Vec<Vec<Option<usize>>>,
        found: &mut Vec<NatTransform>,
        depth: usize,
    ) {
        if depth == slots.len() {
            found.push(NatTransform {
                source: Arc::clone(p),
                target: Arc::clone(q),
                components: comp
                    .iter()
                    .map(|col| col.iter().map(|x| x.unwrap()).collect())
                    .collect(),
            });
            return;
        }
        let (o, v) = slots[depth];
        for w in 0..q.size_at(o) {
            comp[o.0][v] = Some(w);
            if consistent(c, p, q, comp, mors, o, v) {
                search(c, p, q, slots, mors, comp, found, depth + 1);
            }
            comp[o.0][v] = None;
        }
    }

    search(c, p, q, &slots, &mors, &mut components, &mut found, 0);
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::samples;

    fn arc(c: crate::fincat::FinCategory) -> CatRef {
        Arc::new(c)
    }

    #[test]
    fn empty_presheaf_has_exactly_one_transformation_out() {
        let base = arc(samples::chain(3));
        let p = Arc::new(FinPresheaf::empty(&base));
        let q = Arc::new(FinPresheaf::yoneda(&base, ObjId(1)));
        let nats = nat_transformations(&p, &q).unwrap();
        assert_eq!(nats.len(), 1);
    }

    #[test]
    fn yoneda_count_matches_value_size_on_small_categories() {
        for c in samples::suite6() {
            let base = arc(c);
            for a in base.objects() {
                let ya = Arc::new(FinPresheaf::yoneda(&base, a));
                for b in base.objects() {
                    let q = Arc::new(FinPresheaf::yoneda(&base, b));
                    let nats = nat_transformations(&ya, &q).unwrap();
                    assert_eq!(
                        nats.len(),
                        q.size_at(a),
                        "Yoneda failed at {} in {}",
                        base.object_name(a),
                        base.name
                    );
                    for n in nats {
                        assert!(n.validate().is_clean());
                    }
                }
            }
        }
    }

    #[test]
    fn base_mismatch_is_an_error() {
        let b1 = arc(samples::chain(2));
        let b2 = arc(samples::chain(3));
        let p = Arc::new(FinPresheaf::empty(&b1));
        let q = Arc::new(FinPresheaf::empty(&b2));
        assert!(nat_transformations(&p, &q).is_err());
    }

    #[test]
    fn presheaf_validation_spots_broken_functoriality() {
        let base = arc(samples::chain(3));
        let mut values = vec![vec!["p".into(), "q".into()], vec!["r".into()], vec!["s".into()]];
        let mut action = vec![Vec::new(); base.mor_count()];
        for o in base.objects() {
            action[base.identity(o).0] = (0..values[o.0].len()).collect();
        }
        action[base.mor_by_name("f01").unwrap().0] = vec![0]; // r -> p
        action[base.mor_by_name("f12").unwrap().0] = vec![0]; // s -> r
        action[base.mor_by_name("f02").unwrap().0] = vec![1]; // s -> q, breaking f01∘f12 route
        values.shrink_to_fit();
        let p = FinPresheaf {
            base: Arc::clone(&base),
            values,
            action,
        };
        let r = p.validate();
        assert!(!r.is_clean());
        assert!(r.violations.iter().any(|v| v.law == "contravariant-functoriality"));
    }
}
