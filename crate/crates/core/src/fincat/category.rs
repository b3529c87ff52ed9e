//! Finite categories as total composition tables.
//!
//! Categories are stored with a fully tabulated composition map so that every
//! law (closure, associativity, unit laws) can be checked exhaustively.
//! Enumerations sort by (source, target, morphism id), which keeps all
//! downstream outputs reproducible across runs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub usize);

/// A finite category: named objects and morphisms, identity assignment and a
/// total composition table on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    pub name: String,
    object_names: Vec<String>,
    mor_names: Vec<String>,
    mor_src: Vec<ObjId>,
    mor_tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    /// (g, f) -> g∘f, keyed with the inner (first-applied) morphism second.
    compose: HashMap<(MorId, MorId), MorId>,
}

/// Mutable builder; `build` freezes the category after wiring identities.
pub struct CategoryBuilder {
    name: String,
    object_names: Vec<String>,
    mor_names: Vec<String>,
    mor_src: Vec<ObjId>,
    mor_tgt: Vec<ObjId>,
    identity: Vec<Option<MorId>>,
    compose: HashMap<(MorId, MorId), MorId>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder {
            name: name.into(),
            object_names: Vec::new(),
            mor_names: Vec::new(),
            mor_src: Vec::new(),
            mor_tgt: Vec::new(),
            identity: Vec::new(),
            compose: HashMap::new(),
        }
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.object_names.push(name.into());
        self.identity.push(None);
        ObjId(self.object_names.len() - 1)
    }

    /// Declares an existing morphism as the identity of `o`.
    pub fn set_identity(&mut self, o: ObjId, m: MorId) {
        self.identity[o.0] = Some(m);
    }

    /// Adds an explicit identity morphism for `o`.
    pub fn identity_mor(&mut self, o: ObjId) -> MorId {
        if let Some(m) = self.identity[o.0] {
            return m;
        }
        let name = format!("id_{}", self.object_names[o.0]);
        let m = self.morphism(name, o, o);
        self.identity[o.0] = Some(m);
        m
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: ObjId, tgt: ObjId) -> MorId {
        self.mor_names.push(name.into());
        self.mor_src.push(src);
        self.mor_tgt.push(tgt);
        MorId(self.mor_names.len() - 1)
    }

    pub fn composite(&mut self, g: MorId, f: MorId, gf: MorId) {
        self.compose.insert((g, f), gf);
    }

    /// Freezes the category. Identities are created where missing and the
    /// composition table is completed on identity pairs.
    pub fn build(mut self) -> FinCategory {
        for o in 0..self.object_names.len() {
            self.identity_mor(ObjId(o));
        }
        let identity: Vec<MorId> = self.identity.into_iter().map(|m| m.unwrap()).collect();
        for m in 0..self.mor_names.len() {
            let m = MorId(m);
            let src = self.mor_src[m.0];
            let tgt = self.mor_tgt[m.0];
            self.compose.entry((m, identity[src.0])).or_insert(m);
            self.compose.entry((identity[tgt.0], m)).or_insert(m);
        }
        FinCategory {
            name: self.name,
            object_names: self.object_names,
            mor_names: self.mor_names,
            mor_src: self.mor_src,
            mor_tgt: self.mor_tgt,
            identity,
            compose: self.compose,
        }
    }
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn mor_count(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.object_names.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.mor_names.len()).map(MorId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.object_names[o.0]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.mor_names[m.0]
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjId> {
        self.object_names
            .iter()
            .position(|n| n == name)
            .map(ObjId)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn mor_by_name(&self, name: &str) -> Result<MorId> {
        self.mor_names
            .iter()
            .position(|n| n == name)
            .map(MorId)
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.mor_src[m.0]
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.mor_tgt[m.0]
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identity[o.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.mor_src[m.0].0] == m
    }

    /// Composite g∘f if the pair is composable and tabulated.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn composition_entries(&self) -> impl Iterator<Item = (&(MorId, MorId), &MorId)> {
        self.compose.iter()
    }

    /// All morphisms a -> b in ascending id order.
    pub fn hom_set(&self, a: ObjId, b: ObjId) -> Result<Vec<MorId>> {
        if a.0 >= self.object_count() {
            return Err(Error::UnknownObject(format!("#{}", a.0)));
        }
        if b.0 >= self.object_count() {
            return Err(Error::UnknownObject(format!("#{}", b.0)));
        }
        Ok(self
            .morphisms()
            .filter(|&m| self.src(m) == a && self.tgt(m) == b)
            .collect())
    }

    fn describe(&self, m: MorId) -> String {
        format!(
            "{} : {} -> {}",
            self.mor_names[m.0],
            self.object_names[self.src(m).0],
            self.object_names[self.tgt(m).0]
        )
    }

    /// Exhaustive law check: closure of the composition table, identity laws
    /// and associativity on every composable triple.
    pub fn validate(&self) -> Report {
        let mut report = Report::new(format!("category `{}`", self.name));

        for o in self.objects() {
            let id = self.identity(o);
            report.check(
                "identity-endpoints",
                || format!("id of {} is {}", self.object_name(o), self.describe(id)),
                self.src(id) == o && self.tgt(id) == o,
            );
        }

        // Closure: an entry for every composable pair, no entry for others,
        // and correct endpoints on each tabulated composite.
        for g in self.morphisms() {
            for f in self.morphisms() {
                let composable = self.tgt(f) == self.src(g);
                match self.compose(g, f) {
                    None => report.check(
                        "composition-total",
                        || format!("missing {} . {}", self.mor_name(g), self.mor_name(f)),
                        !composable,
                    ),
                    Some(h) => {
                        if !composable {
                            report.push(
                                "composition-domain",
                                format!(
                                    "entry for non-composable pair ({}, {})",
                                    self.mor_name(g),
                                    self.mor_name(f)
                                ),
                            );
                            continue;
                        }
                        report.check(
                            "composite-endpoints",
                            || {
                                format!(
                                    "{} . {} = {}",
                                    self.mor_name(g),
                                    self.mor_name(f),
                                    self.describe(h)
                                )
                            },
                            self.src(h) == self.src(f) && self.tgt(h) == self.tgt(g),
                        );
                    }
                }
            }
        }

        for m in self.morphisms() {
            let left = self.compose(self.identity(self.tgt(m)), m);
            report.check(
                "left-unit",
                || format!("id . {} = {:?}", self.mor_name(m), left.map(|h| self.mor_name(h))),
                left == Some(m),
            );
            let right = self.compose(m, self.identity(self.src(m)));
            report.check(
                "right-unit",
                || format!("{} . id = {:?}", self.mor_name(m), right.map(|h| self.mor_name(h))),
                right == Some(m),
            );
        }

        // Associativity, parallelized over the innermost morphism.
        let by_src: Vec<Vec<MorId>> = {
            let mut v = vec![Vec::new(); self.object_count()];
            for m in self.morphisms() {
                v[self.src(m).0].push(m);
            }
            v
        };
        let assoc_failures: Vec<(MorId, MorId, MorId)> = par::flat_map_range(self.mor_count(), |f| {
            let f = MorId(f);
            let mut bad = Vec::new();
            for &g in &by_src[self.tgt(f).0] {
                let gf = match self.compose(g, f) {
                    Some(h) => h,
                    None => continue,
                };
                for &h in &by_src[self.tgt(g).0] {
                    let hg = match self.compose(h, g) {
                        Some(x) => x,
                        None => continue,
                    };
                    if self.compose(h, gf) != self.compose(hg, f) {
                        bad.push((h, g, f));
                    }
                }
            }
            bad
        });
        let mut triples = 0usize;
        for f in self.morphisms() {
            for &g in &by_src[self.tgt(f).0] {
                triples += by_src[self.tgt(g).0].len();
                let _ = g;
            }
        }
        report.checks += triples;
        for (h, g, f) in assoc_failures {
            report.violations.push(crate::report::Violation {
                law: "associativity".into(),
                witness: format!(
                    "({} . {}) . {} != {} . ({} . {})",
                    self.mor_name(h),
                    self.mor_name(g),
                    self.mor_name(f),
                    self.mor_name(h),
                    self.mor_name(g),
                    self.mor_name(f)
                ),
            });
        }

        report
    }
}

/// Shared handle used by functors, presheaves and theories.
pub type CatRef = Arc<FinCategory>;

/// Structural identity, short-circuited on pointer equality.
pub fn same_category(a: &CatRef, b: &CatRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::samples;

    #[test]
    fn terminal_category_is_valid() {
        let c = samples::terminal();
        assert!(c.validate().is_clean());
        assert_eq!(c.object_count(), 1);
        assert_eq!(c.mor_count(), 1);
    }

    #[test]
    fn chain_poset_is_valid() {
        let c = samples::chain(3);
        let report = c.validate();
        assert!(report.is_clean(), "{}", report.render_text());
        assert_eq!(c.mor_count(), 6);
    }

    #[test]
    fn corrupted_composite_is_reported_with_the_pair() {
        // 0 -> 1 -> 2 with g∘f redirected to an endomorphism-less target.
        let mut b = CategoryBuilder::new("bad");
        let o0 = b.object("0");
        let o1 = b.object("1");
        let o2 = b.object("2");
        let f = b.morphism("f", o0, o1);
        let g = b.morphism("g", o1, o2);
        let gf = b.morphism("gf", o0, o2);
        b.composite(g, f, gf);
        let mut c = b.build();
        // swap the composite's target artificially
        c.mor_tgt[gf.0] = o1;
        let report = c.validate();
        assert!(!report.is_clean());
        assert!(report
            .violations
            .iter()
            .any(|v| v.witness.contains("g . f") || v.witness.contains("gf")));
    }

    #[test]
    fn hom_sets_are_canonical() {
        let c = samples::chain(3);
        let h = c.hom_set(ObjId(0), ObjId(2)).unwrap();
        assert_eq!(h.len(), 1);
        let id = c.hom_set(ObjId(1), ObjId(1)).unwrap();
        assert_eq!(id, vec![c.identity(ObjId(1))]);
        assert!(c.hom_set(ObjId(9), ObjId(0)).is_err());
    }
}
