//! Finite colimits and pointwise left Kan extensions.
//!
//! Colimits of finite set-valued diagrams are computed as a disjoint union
//! quotiented by the zig-zag relation, using union-find. Class numbering is
//! by first occurrence in diagram order, so results are deterministic.

use crate::error::{Error, Result};

use super::category::{MorId, ObjId};
use super::functor::FinFunctor;
use super::presheaf::FinCopresheaf;

/// Plain union-find over 0..n with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        // keep the smaller index as root so representatives are canonical
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
    }
}

/// A finite diagram of finite sets: node sizes plus arrows with their maps.
#[derive(Debug, Clone)]
pub struct SetDiagram {
    pub sizes: Vec<usize>,
    /// (from node, to node, map from elements of `from` to elements of `to`)
    pub arrows: Vec<(usize, usize, Vec<usize>)>,
}

/// Colimit of a [`SetDiagram`] with its canonical cocone.
#[derive(Debug, Clone, PartialEq)]
pub struct SetColimit {
    pub class_count: usize,
    /// cocone: class_of[node][element] is the colimit class.
    pub class_of: Vec<Vec<usize>>,
}

pub fn set_colimit(d: &SetDiagram) -> SetColimit {
    let offsets: Vec<usize> = d
        .sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = d.sizes.iter().sum();
    let mut uf = UnionFind::new(total);
    for (from, to, map) in &d.arrows {
        for (v, &w) in map.iter().enumerate() {
            uf.union(offsets[*from] + v, offsets[*to] + w);
        }
    }
    let mut class_ids = vec![usize::MAX; total];
    let mut next = 0usize;
    for x in 0..total {
        let r = uf.find(x);
        if class_ids[r] == usize::MAX {
            class_ids[r] = next;
            next += 1;
        }
        class_ids[x] = class_ids[r];
    }
    let class_of = d
        .sizes
        .iter()
        .enumerate()
        .map(|(node, &s)| (0..s).map(|v| class_ids[offsets[node] + v]).collect())
        .collect();
    SetColimit {
        class_count: next,
        class_of,
    }
}

/// A finite presentation of the comma category (i ↓ x): objects are pairs
/// (s, g : i(s) -> x) and arrows are source-category morphisms making the
/// evident triangle commute.
#[derive(Debug, Clone)]
pub struct CommaPresentation {
    /// (source object, morphism i(s) -> x in the target category)
    pub objects: Vec<(ObjId, MorId)>,
    /// (from comma object, to comma object, h : s -> s' with g' ∘ i(h) = g)
    pub arrows: Vec<(usize, usize, MorId)>,
}

/// Builds the full comma category (i ↓ x) of a functor between finite
/// categories.
pub fn comma_over(i: &FinFunctor, x: ObjId) -> Result<CommaPresentation> {
    let c = &i.source;
    let d = &i.target;
    let mut objects = Vec::new();
    for s in c.objects() {
        for g in d.hom_set(i.on_obj(s), x)? {
            objects.push((s, g));
        }
    }
    let mut arrows = Vec::new();
    for (from, &(s, g)) in objects.iter().enumerate() {
        for h in c.morphisms().filter(|&h| c.src(h) == s) {
            let s2 = c.tgt(h);
            for (to, &(s2b, g2)) in objects.iter().enumerate() {
                if s2b == s2 && d.compose(g2, i.on_mor(h)) == Some(g) {
                    arrows.push((from, to, h));
                }
            }
        }
    }
    Ok(CommaPresentation { objects, arrows })
}

/// Value and cocone of a pointwise left Kan extension.
#[derive(Debug, Clone)]
pub struct KanValue {
    pub colimit: SetColimit,
    pub comma: CommaPresentation,
}

/// Lan_i(f) at x, computed as the colimit of f over the supplied comma
/// presentation of (i ↓ x).
pub fn left_kan_value(
    i: &FinFunctor,
    f: &FinCopresheaf,
    x: ObjId,
    comma: &CommaPresentation,
    max_classes: usize,
) -> Result<KanValue> {
    let total: usize = comma
        .objects
        .iter()
        .map(|&(s, _)| f.size_at(s))
        .sum();
    if total > max_classes {
        return Err(Error::bound("left Kan colimit enumeration", max_classes));
    }
    let diagram = SetDiagram {
        sizes: comma.objects.iter().map(|&(s, _)| f.size_at(s)).collect(),
        arrows: comma
            .arrows
            .iter()
            .map(|&(from, to, h)| {
                let map = (0..f.size_at(i.source.src(h)))
                    .map(|v| f.act(h, v))
                    .collect();
                (from, to, map)
            })
            .collect(),
    };
    let _ = x;
    Ok(KanValue {
        colimit: set_colimit(&diagram),
        comma: comma.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::samples;
    use std::sync::Arc;

    #[test]
    fn colimit_of_empty_diagram_is_empty() {
        let d = SetDiagram {
            sizes: vec![0, 0],
            arrows: vec![(0, 1, Vec::new())],
        };
        assert_eq!(set_colimit(&d).class_count, 0);
    }

    #[test]
    fn pushout_of_two_points_along_shared_point() {
        // {a} <- {x} -> {b} has colimit a=x=b, a single class
        let d = SetDiagram {
            sizes: vec![1, 1, 1],
            arrows: vec![(0, 1, vec![0]), (0, 2, vec![0])],
        };
        let col = set_colimit(&d);
        assert_eq!(col.class_count, 1);
    }

    /// Lan along the identity functor returns the input functor, pointwise on
    /// every object of each small sample category.
    #[test]
    fn kan_along_identity_is_the_identity() {
        for c in samples::suite6() {
            let base = Arc::new(c);
            // a covariant functor with distinguishable values: v(o) = hom(x0, o)
            let x0 = ObjId(0);
            let values: Vec<Vec<MorId>> = base
                .objects()
                .map(|o| base.hom_set(x0, o).unwrap())
                .collect();
            let f = FinCopresheaf {
                base: Arc::clone(&base),
                values: values
                    .iter()
                    .map(|hs| hs.iter().map(|&m| base.mor_name(m).to_string()).collect())
                    .collect(),
                action: base
                    .morphisms()
                    .map(|m| {
                        values[base.src(m).0]
                            .iter()
                            .map(|&v| {
                                let w = base.compose(m, v).unwrap();
                                values[base.tgt(m).0].iter().position(|&z| z == w).unwrap()
                            })
                            .collect()
                    })
                    .collect(),
            };
            assert!(f.validate().is_clean());
            let id = FinFunctor::identity(&base);
            for x in base.objects() {
                let comma = comma_over(&id, x).unwrap();
                let kan = left_kan_value(&id, &f, x, &comma, 10_000).unwrap();
                assert_eq!(
                    kan.colimit.class_count,
                    f.size_at(x),
                    "Lan_id mismatch at {} in {}",
                    base.object_name(x),
                    base.name
                );
                // the cocone component at (x, id_x) is a bijection
                let idx = comma
                    .objects
                    .iter()
                    .position(|&(s, g)| s == x && g == base.identity(x))
                    .unwrap();
                let mut classes = kan.colimit.class_of[idx].clone();
                classes.sort_unstable();
                classes.dedup();
                assert_eq!(classes.len(), f.size_at(x));
            }
        }
    }

    #[test]
    fn empty_valued_functor_has_empty_colimit() {
        let base = Arc::new(samples::chain(3));
        let f = FinCopresheaf {
            base: Arc::clone(&base),
            values: vec![Vec::new(); 3],
            action: vec![Vec::new(); base.mor_count()],
        };
        let id = FinFunctor::identity(&base);
        let comma = comma_over(&id, ObjId(2)).unwrap();
        let kan = left_kan_value(&id, &f, ObjId(2), &comma, 100).unwrap();
        assert_eq!(kan.colimit.class_count, 0);
    }
}
