//! Ambient effective categories.
//!
//! Two families cover everything this workbench computes with: truncated
//! globular sets (graphs are the dimension-1 case) and their bicolored
//! variant, i.e. the slice over the two-color object, stored as a pair of
//! components since boundaries preserve colors.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::glob::{hom_globs, same_glob, GlobMor, GlobRef, GlobSet};
use crate::report::Report;

/// An object of an ambient category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Obj {
    Plain(GlobRef),
    Bi(GlobRef, GlobRef),
}

impl Obj {
    pub fn plain(g: GlobSet) -> Obj {
        Obj::Plain(Arc::new(g))
    }

    pub fn bi(a: GlobSet, b: GlobSet) -> Obj {
        Obj::Bi(Arc::new(a), Arc::new(b))
    }

    pub fn as_plain(&self) -> Result<&GlobRef> {
        match self {
            Obj::Plain(g) => Ok(g),
            Obj::Bi(..) => Err(Error::malformed("expected a plain object")),
        }
    }

    pub fn as_bi(&self) -> Result<(&GlobRef, &GlobRef)> {
        match self {
            Obj::Bi(a, b) => Ok((a, b)),
            Obj::Plain(..) => Err(Error::malformed("expected a bicolored object")),
        }
    }

    pub fn total_cells(&self) -> usize {
        match self {
            Obj::Plain(g) => g.total_cells(),
            Obj::Bi(a, b) => a.total_cells() + b.total_cells(),
        }
    }

    /// Cell counts per dimension, colors merged.
    pub fn sizes(&self) -> Vec<usize> {
        match self {
            Obj::Plain(g) => g.sizes.clone(),
            Obj::Bi(a, b) => (0..=a.dim).map(|k| a.sizes[k] + b.sizes[k]).collect(),
        }
    }

    pub fn validate(&self) -> Report {
        match self {
            Obj::Plain(g) => g.validate(),
            Obj::Bi(a, b) => {
                let mut r = a.validate();
                r.absorb(b.validate());
                r
            }
        }
    }
}

/// A morphism of an ambient category, carrying its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Mor {
    Plain(GlobMor),
    Bi(GlobMor, GlobMor),
}

impl Mor {
    pub fn as_plain(&self) -> Result<&GlobMor> {
        match self {
            Mor::Plain(f) => Ok(f),
            Mor::Bi(..) => Err(Error::malformed("expected a plain morphism")),
        }
    }

    pub fn as_bi(&self) -> Result<(&GlobMor, &GlobMor)> {
        match self {
            Mor::Bi(f, g) => Ok((f, g)),
            Mor::Plain(..) => Err(Error::malformed("expected a bicolored morphism")),
        }
    }

    pub fn dom(&self) -> Obj {
        match self {
            Mor::Plain(f) => Obj::Plain(Arc::clone(&f.dom)),
            Mor::Bi(f, g) => Obj::Bi(Arc::clone(&f.dom), Arc::clone(&g.dom)),
        }
    }

    pub fn cod(&self) -> Obj {
        match self {
            Mor::Plain(f) => Obj::Plain(Arc::clone(&f.cod)),
            Mor::Bi(f, g) => Obj::Bi(Arc::clone(&f.cod), Arc::clone(&g.cod)),
        }
    }

    pub fn validate(&self) -> Report {
        match self {
            Mor::Plain(f) => f.validate(),
            Mor::Bi(f, g) => {
                let mut r = f.validate();
                r.absorb(g.validate());
                r
            }
        }
    }
}

/// The ambient category itself: plain or bicolored globular sets at a fixed
/// truncation dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffCat {
    Plain { dim: usize },
    Bi { dim: usize },
}

impl EffCat {
    pub fn dim(&self) -> usize {
        match self {
            EffCat::Plain { dim } | EffCat::Bi { dim } => *dim,
        }
    }

    pub fn contains(&self, x: &Obj) -> bool {
        match (self, x) {
            (EffCat::Plain { dim }, Obj::Plain(g)) => g.dim == *dim,
            (EffCat::Bi { dim }, Obj::Bi(a, b)) => a.dim == *dim && b.dim == *dim,
            _ => false,
        }
    }

    /// Complete hom-set in canonical order; errors out past `limit` results.
    pub fn hom(&self, a: &Obj, b: &Obj, limit: usize) -> Result<Vec<Mor>> {
        match (self, a, b) {
            (EffCat::Plain { .. }, Obj::Plain(x), Obj::Plain(y)) => {
                Ok(hom_globs(x, y, limit)?.into_iter().map(Mor::Plain).collect())
            }
            (EffCat::Bi { .. }, Obj::Bi(x1, x2), Obj::Bi(y1, y2)) => {
                let h1 = hom_globs(x1, y1, limit)?;
                let h2 = hom_globs(x2, y2, limit)?;
                if h1.len().saturating_mul(h2.len()) > limit {
                    return Err(Error::bound("bicolored hom enumeration", limit));
                }
                let mut out = Vec::with_capacity(h1.len() * h2.len());
                for f in &h1 {
                    for g in &h2 {
                        out.push(Mor::Bi(f.clone(), g.clone()));
                    }
                }
                Ok(out)
            }
            _ => Err(Error::BaseMismatch(
                "objects do not live in this ambient category".into(),
            )),
        }
    }

    pub fn identity(&self, x: &Obj) -> Result<Mor> {
        match (self, x) {
            (EffCat::Plain { .. }, Obj::Plain(g)) => Ok(Mor::Plain(GlobMor::identity(g))),
            (EffCat::Bi { .. }, Obj::Bi(a, b)) => {
                Ok(Mor::Bi(GlobMor::identity(a), GlobMor::identity(b)))
            }
            _ => Err(Error::BaseMismatch("identity".into())),
        }
    }

    pub fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        match (g, f) {
            (Mor::Plain(g), Mor::Plain(f)) => Ok(Mor::Plain(GlobMor::compose(g, f)?)),
            (Mor::Bi(g1, g2), Mor::Bi(f1, f2)) => {
                Ok(Mor::Bi(GlobMor::compose(g1, f1)?, GlobMor::compose(g2, f2)?))
            }
            _ => Err(Error::BaseMismatch("composition across flavors".into())),
        }
    }

    pub fn empty_obj(&self) -> Obj {
        match self {
            EffCat::Plain { dim } => Obj::plain(GlobSet::empty(*dim)),
            EffCat::Bi { dim } => Obj::bi(GlobSet::empty(*dim), GlobSet::empty(*dim)),
        }
    }

    pub fn terminal(&self) -> Obj {
        match self {
            EffCat::Plain { dim } => Obj::plain(GlobSet::terminal(*dim)),
            EffCat::Bi { dim } => Obj::bi(GlobSet::terminal(*dim), GlobSet::terminal(*dim)),
        }
    }

    /// Binary coproduct with its injections.
    pub fn coproduct(&self, a: &Obj, b: &Obj) -> Result<(Obj, Mor, Mor)> {
        match (self, a, b) {
            (EffCat::Plain { .. }, Obj::Plain(x), Obj::Plain(y)) => {
                let sum = Arc::new(GlobSet::coproduct(x, y));
                let in1 = GlobMor {
                    dom: Arc::clone(x),
                    cod: Arc::clone(&sum),
                    maps: (0..=x.dim).map(|k| (0..x.sizes[k]).collect()).collect(),
                };
                let in2 = GlobMor {
                    dom: Arc::clone(y),
                    cod: Arc::clone(&sum),
                    maps: (0..=y.dim)
                        .map(|k| (0..y.sizes[k]).map(|c| c + x.sizes[k]).collect())
                        .collect(),
                };
                Ok((Obj::Plain(sum), Mor::Plain(in1), Mor::Plain(in2)))
            }
            _ => Err(Error::Unsupported(
                "coproducts are only materialized for plain objects".into(),
            )),
        }
    }
}

pub fn same_obj(a: &Obj, b: &Obj) -> bool {
    match (a, b) {
        (Obj::Plain(x), Obj::Plain(y)) => same_glob(x, y),
        (Obj::Bi(x1, x2), Obj::Bi(y1, y2)) => same_glob(x1, y1) && same_glob(x2, y2),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bicolored_homs_are_products_of_componentwise_homs() {
        let cat = EffCat::Bi { dim: 1 };
        let a = Obj::bi(GlobSet::linear(1, 1), GlobSet::empty(1));
        let b = Obj::bi(GlobSet::linear(2, 1), GlobSet::linear(0, 1));
        // hom([1],[2]) = 2 shifts; hom(empty,[0]) = 1
        let h = cat.hom(&a, &b, 100).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn coproduct_injections_commute_with_boundaries() {
        let cat = EffCat::Plain { dim: 1 };
        let a = Obj::plain(GlobSet::linear(2, 1));
        let b = Obj::plain(GlobSet::parallel_edges(2, 1));
        let (sum, in1, in2) = cat.coproduct(&a, &b).unwrap();
        assert!(in1.validate().is_clean());
        assert!(in2.validate().is_clean());
        assert_eq!(sum.sizes(), vec![5, 4]);
    }
}
