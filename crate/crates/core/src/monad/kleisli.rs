//! The Kleisli construction: objects are base objects, morphisms G -> G′ are
//! base morphisms G -> T G′, composition substitutes and flattens.

use std::sync::Arc;

use crate::effcat::{Mor, Obj};
use crate::error::{Error, Result};
use crate::free::{flatten, FreeCell, FreeObj};
use crate::glob::GlobMor;
use crate::report::Report;

use super::{FreeView, MonadDescription, MonadKind};

#[derive(Clone)]
pub struct KleisliPresentation {
    pub monad: Arc<MonadDescription>,
}

impl KleisliPresentation {
    pub fn new(monad: &Arc<MonadDescription>) -> Self {
        KleisliPresentation {
            monad: Arc::clone(monad),
        }
    }

    /// hom_Kl(a, b) enumerates base hom(a, T b) in canonical order.
    pub fn hom(&self, a: &Obj, b: &Obj) -> Result<Vec<Mor>> {
        let tb = self.monad.apply_obj(b)?;
        self.monad
            .base
            .hom(a, &tb, self.monad.bound().max_cells)
    }

    /// The Kleisli identity of x, i.e. the unit component.
    pub fn id(&self, x: &Obj) -> Result<Mor> {
        self.monad.unit_at(x)
    }

    /// L_T(g) = η(G′) ∘ g for a base morphism g : G -> G′.
    pub fn lift(&self, g: &Mor) -> Result<Mor> {
        let unit = self.monad.unit_at(&g.cod())?;
        self.monad.base.compose(&unit, g)
    }

    /// g ⊙ f = μ(G″) ∘ T(g) ∘ f, computed by substituting g into the free
    /// cells picked by f and flattening.
    pub fn compose(&self, g: &Mor, f: &Mor, mid: &Obj, out: &Obj) -> Result<Mor> {
        match &self.monad.kind {
            MonadKind::Identity => self.monad.base.compose(g, f),
            MonadKind::Custom(_) => {
                // the direct formula, with every factor tabulated
                let tg = self.monad.apply_mor(g)?;
                let mu = self.monad.mult_at(out)?;
                self.monad.base.compose(&mu, &self.monad.base.compose(&tg, f)?)
            }
            _ => {
                let view_mid = self.monad.view(mid)?;
                let view_out = self.monad.view(out)?;
                substitute_mor(f, g, &view_mid, &view_out)
            }
        }
    }

    /// U_T(f) = μ(G′) ∘ T(f) for a Kleisli morphism f : G -> G′, again by
    /// cell-wise substitution.
    pub fn forget(&self, f: &Mor, out: &Obj) -> Result<Mor> {
        match &self.monad.kind {
            MonadKind::Identity => Ok(f.clone()),
            MonadKind::Custom(_) => {
                let tf = self.monad.apply_mor(f)?;
                let mu = self.monad.mult_at(out)?;
                self.monad.base.compose(&mu, &tf)
            }
            _ => {
                let dom = f.dom();
                let view_dom = self.monad.view(&dom)?;
                let view_out = self.monad.view(out)?;
                forget_mor(f, &view_dom, &view_out)
            }
        }
    }
}

/// Substitutes the Kleisli morphism `g` into the image cells of `f`.
pub(crate) fn substitute_mor(
    f: &Mor,
    g: &Mor,
    view_mid: &FreeView,
    view_out: &FreeView,
) -> Result<Mor> {
    match (f, g, view_mid, view_out) {
        (Mor::Plain(f), Mor::Plain(g), FreeView::Plain(mid), FreeView::Plain(out)) => {
            let maps = plain_subst_tables(
                &f.maps,
                |k, c| out.cells[k][g.maps[k][c]].clone(),
                mid,
                out,
            )?;
            Ok(Mor::Plain(GlobMor {
                dom: Arc::clone(&f.dom),
                cod: Arc::clone(&out.glob),
                maps,
            }))
        }
        (
            Mor::Bi(f1, f2),
            Mor::Bi(g1, g2),
            FreeView::Bi {
                c1: mid1, c2: mid2, shift: mid_shift, ..
            },
            FreeView::Bi { c1: out1, c2: out2, .. },
        ) => {
            let m1 = plain_subst_tables(
                &f1.maps,
                |k, c| out1.cells[k][g1.maps[k][c]].clone(),
                mid1,
                out1,
            )?;
            // second color: cells of mid1 ⊔ mid2 resolve through g1 (landing
            // in the first summand of the output coproduct) or g2
            let resolve = |k: usize, c: usize| -> FreeCell {
                if c < mid_shift_at(mid_shift, k) {
                    out1.cells[k][g1.maps[k][c]].clone()
                } else {
                    out2.cells[k][g2.maps[k][c - mid_shift_at(mid_shift, k)]].clone()
                }
            };
            let m2 = plain_subst_tables(&f2.maps, resolve, mid2, out2)?;
            Ok(Mor::Bi(
                GlobMor {
                    dom: Arc::clone(&f1.dom),
                    cod: Arc::clone(&out1.glob),
                    maps: m1,
                },
                GlobMor {
                    dom: Arc::clone(&f2.dom),
                    cod: Arc::clone(&out2.glob),
                    maps: m2,
                },
            ))
        }
        _ => Err(Error::BaseMismatch("kleisli substitution flavors".into())),
    }
}

fn mid_shift_at(shift: &[usize], k: usize) -> usize {
    shift.get(k).copied().unwrap_or(0)
}

/// Shared driver: push each f-image cell through the resolver and flatten.
fn plain_subst_tables(
    f_maps: &[Vec<usize>],
    resolve: impl Fn(usize, usize) -> FreeCell,
    mid: &FreeObj,
    out: &FreeObj,
) -> Result<Vec<Vec<usize>>> {
    let mut maps = Vec::with_capacity(f_maps.len());
    for k in 0..f_maps.len() {
        let mut col = Vec::with_capacity(f_maps[k].len());
        for &img in &f_maps[k] {
            let cell = &mid.cells[k][img];
            let flat = flatten(
                cell,
                &|v| match resolve(0, v) {
                    FreeCell::Vertex(w) => w,
                    _ => unreachable!(),
                },
                &|e| resolve(1, e),
                &|f| resolve(2, f),
            );
            col.push(out.cell_index(&flat)?);
        }
        maps.push(col);
    }
    Ok(maps)
}

/// U_T(f): every cell of T(dom f) substitutes through f and flattens.
fn forget_mor(f: &Mor, view_dom: &FreeView, view_out: &FreeView) -> Result<Mor> {
    match (f, view_dom, view_out) {
        (Mor::Plain(f), FreeView::Plain(dom), FreeView::Plain(out)) => {
            let mut maps = Vec::with_capacity(dom.cells.len());
            for k in 0..dom.cells.len() {
                let mut col = Vec::with_capacity(dom.cells[k].len());
                for cell in &dom.cells[k] {
                    let flat = flatten(
                        cell,
                        &|v| match &out.cells[0][f.maps[0][v]] {
                            FreeCell::Vertex(w) => *w,
                            _ => unreachable!(),
                        },
                        &|e| out.cells[1][f.maps[1][e]].clone(),
                        &|x| out.cells[2][f.maps[2][x]].clone(),
                    );
                    col.push(out.cell_index(&flat)?);
                }
                maps.push(col);
            }
            Ok(Mor::Plain(GlobMor {
                dom: Arc::clone(&dom.glob),
                cod: Arc::clone(&out.glob),
                maps,
            }))
        }
        (
            Mor::Bi(f1, f2),
            FreeView::Bi { c1: dom1, c2: dom2, shift, .. },
            FreeView::Bi { c1: out1, c2: out2, .. },
        ) => {
            let resolve1 = |k: usize, c: usize| out1.cells[k][f1.maps[k][c]].clone();
            let mut maps1 = Vec::new();
            for k in 0..dom1.cells.len() {
                let mut col = Vec::new();
                for cell in &dom1.cells[k] {
                    let flat = flatten(
                        cell,
                        &|v| match resolve1(0, v) {
                            FreeCell::Vertex(w) => w,
                            _ => unreachable!(),
                        },
                        &|e| resolve1(1, e),
                        &|x| resolve1(2, x),
                    );
                    col.push(out1.cell_index(&flat)?);
                }
                maps1.push(col);
            }
            let resolve2 = |k: usize, c: usize| -> FreeCell {
                if c < mid_shift_at(shift, k) {
                    out1.cells[k][f1.maps[k][c]].clone()
                } else {
                    out2.cells[k][f2.maps[k][c - mid_shift_at(shift, k)]].clone()
                }
            };
            let mut maps2 = Vec::new();
            for k in 0..dom2.cells.len() {
                let mut col = Vec::new();
                for cell in &dom2.cells[k] {
                    let flat = flatten(
                        cell,
                        &|v| match resolve2(0, v) {
                            FreeCell::Vertex(w) => w,
                            _ => unreachable!(),
                        },
                        &|e| resolve2(1, e),
                        &|x| resolve2(2, x),
                    );
                    col.push(out2.cell_index(&flat)?);
                }
                maps2.push(col);
            }
            Ok(Mor::Bi(
                GlobMor {
                    dom: Arc::clone(&dom1.glob),
                    cod: Arc::clone(&out1.glob),
                    maps: maps1,
                },
                GlobMor {
                    dom: Arc::clone(&dom2.glob),
                    cod: Arc::clone(&out2.glob),
                    maps: maps2,
                },
            ))
        }
        _ => Err(Error::BaseMismatch("kleisli forget flavors".into())),
    }
}

/// Kleisli laws on fully enumerated hom-sets among the given objects:
/// associativity of ⊙ and both unit laws.
pub fn check_kleisli_laws(kl: &KleisliPresentation, objects: &[Obj]) -> Result<Report> {
    let mut report = Report::new(format!("Kleisli laws over `{}`", kl.monad.name));
    let n = objects.len();
    // units
    for a in 0..n {
        for b in 0..n {
            let hom = kl.hom(&objects[a], &objects[b])?;
            let id_a = kl.id(&objects[a])?;
            let id_b = kl.id(&objects[b])?;
            for f in &hom {
                let left = kl.compose(&id_b, f, &objects[b], &objects[b])?;
                report.check("left-unit", || format!("η⊙f ≠ f ({a}->{b})"), &left == f);
                let right = kl.compose(f, &id_a, &objects[a], &objects[b])?;
                report.check("right-unit", || format!("f⊙η ≠ f ({a}->{b})"), &right == f);
            }
        }
    }
    // associativity on all composable triples
    for a in 0..n {
        for b in 0..n {
            let hom_ab = kl.hom(&objects[a], &objects[b])?;
            for c in 0..n {
                let hom_bc = kl.hom(&objects[b], &objects[c])?;
                for d in 0..n {
                    let hom_cd = kl.hom(&objects[c], &objects[d])?;
                    for f in &hom_ab {
                        for g in &hom_bc {
                            let gf = kl.compose(g, f, &objects[b], &objects[c])?;
                            for h in &hom_cd {
                                let hg = kl.compose(h, g, &objects[c], &objects[d])?;
                                let left = kl.compose(h, &gf, &objects[c], &objects[d])?;
                                let right = kl.compose(&hg, f, &objects[b], &objects[d])?;
                                report.check(
                                    "associativity",
                                    || format!("triple over ({a},{b},{c},{d})"),
                                    left == right,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effcat::EffCat;
    use crate::free::Bound;
    use crate::glob::GlobSet;

    fn free_cat() -> Arc<MonadDescription> {
        Arc::new(MonadDescription::free_cat(Bound::default()))
    }

    #[test]
    fn kleisli_hom_counts_on_linear_graphs() {
        let kl = KleisliPresentation::new(&free_cat());
        let one = Obj::plain(GlobSet::linear(1, 1));
        // hom_Kl([1],[1]): the three paths (0,0), (0,1), (1,1)
        assert_eq!(kl.hom(&one, &one).unwrap().len(), 3);
        // hom_Kl([0],[n]) = n+1 vertices
        let zero = Obj::plain(GlobSet::linear(0, 1));
        for n in 0..4 {
            let tgt = Obj::plain(GlobSet::linear(n, 1));
            assert_eq!(kl.hom(&zero, &tgt).unwrap().len(), n + 1);
        }
    }

    #[test]
    fn kleisli_laws_hold_for_free_cat_on_small_arities() {
        let kl = KleisliPresentation::new(&free_cat());
        let objs: Vec<Obj> = (0..3).map(|n| Obj::plain(GlobSet::linear(n, 1))).collect();
        let r = check_kleisli_laws(&kl, &objs).unwrap();
        assert!(r.is_clean(), "{}", r.render_text());
    }

    #[test]
    fn identity_monad_kleisli_is_the_base() {
        let m = Arc::new(MonadDescription::identity(EffCat::Plain { dim: 1 }));
        let kl = KleisliPresentation::new(&m);
        let x = Obj::plain(GlobSet::parallel_edges(2, 1));
        let hom = kl.hom(&x, &x).unwrap();
        // graph endomorphisms of the parallel pair: 2 vertex maps fixing
        // orientation times edge permutations with matching endpoints
        assert!(!hom.is_empty());
        for f in &hom {
            let c = kl.compose(f, &kl.id(&x).unwrap(), &x, &x).unwrap();
            assert_eq!(&c, f);
        }
    }

    /// The substitution route and the direct μ∘T(g)∘f route agree.
    #[test]
    fn kleisli_composition_matches_the_direct_formula() {
        let m = free_cat();
        let kl = KleisliPresentation::new(&m);
        let a = Obj::plain(GlobSet::linear(1, 1));
        let b = Obj::plain(GlobSet::linear(2, 1));
        let homs_ab = kl.hom(&a, &b).unwrap();
        let homs_bb = kl.hom(&b, &b).unwrap();
        for f in &homs_ab {
            for g in &homs_bb {
                let fast = kl.compose(g, f, &b, &b).unwrap();
                let tg = m.apply_mor(g).unwrap();
                let mu = m.mult_at(&b).unwrap();
                let slow = m
                    .base
                    .compose(&mu, &m.base.compose(&tg, f).unwrap())
                    .unwrap();
                assert_eq!(fast, slow);
            }
        }
    }
}
