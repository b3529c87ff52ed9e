//! Monads as computable data on effective categories.
//!
//! A monad is described by its base category, an object/morphism action, and
//! unit and multiplication component oracles. Values of the free monads are
//! materialized lazily and within bounds; all laws are checked pointwise at
//! caller-supplied test objects, never claimed globally.

pub mod adjunction;
pub mod kleisli;
pub mod morphism;

use std::sync::Arc;

use crate::effcat::{same_obj, EffCat, Mor, Obj};
use crate::error::{Error, Result};
use crate::free::{flatten_through, free_obj, free_obj_slice, Bound, FreeCell, FreeObj};
use crate::glob::{GlobMor, GlobRef, GlobSet};
use crate::par;
use crate::report::Report;

pub use adjunction::{check_kleisli_adjunction, u_functor, u_functor_mor, AdjMorphism, Adjunction};
pub use kleisli::KleisliPresentation;
pub use morphism::{
    check_monad_morphism, compose_monad_morphisms, k_functor, EffFunctor, KleisliFunctor,
    MonadMorphism, QOracle,
};

/// Extensible kernel of a monad: the four component oracles.
pub struct CustomMonad {
    pub endo_obj: Box<dyn Fn(&Obj) -> Result<Obj> + Send + Sync>,
    pub endo_mor: Box<dyn Fn(&Mor) -> Result<Mor> + Send + Sync>,
    pub unit: Box<dyn Fn(&Obj) -> Result<Mor> + Send + Sync>,
    pub mult: Box<dyn Fn(&Obj) -> Result<Mor> + Send + Sync>,
}

#[derive(Clone)]
pub enum MonadKind {
    Identity,
    /// Free category on graphs; values are path objects.
    FreeCat { bound: Bound },
    /// Free strict n-category on truncated globular sets.
    FreeNCat { bound: Bound },
    /// The bicolored monad whose algebras are pairs of strict n-categories
    /// with a strict functor between them.
    FunctorMonad { bound: Bound },
    Custom(Arc<CustomMonad>),
}

impl std::fmt::Debug for MonadKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonadKind::Identity => write!(f, "Identity"),
            MonadKind::FreeCat { bound } => write!(f, "FreeCat({bound:?})"),
            MonadKind::FreeNCat { bound } => write!(f, "FreeNCat({bound:?})"),
            MonadKind::FunctorMonad { bound } => write!(f, "FunctorMonad({bound:?})"),
            MonadKind::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MonadDescription {
    pub name: String,
    pub base: EffCat,
    pub kind: MonadKind,
}

/// Materialized free structure over one object, giving cell-level access to
/// the endofunctor value.
#[derive(Debug, Clone)]
pub enum FreeView {
    /// T = 1: the view is the object itself.
    Trivial(Obj),
    Plain(FreeObj),
    Bi {
        c1: FreeObj,
        /// free object over the coproduct of both colors
        c2: FreeObj,
        sum: GlobRef,
        /// per-dimension size of the first color inside the coproduct
        shift: Vec<usize>,
    },
}

impl FreeView {
    /// The endofunctor value as an ambient object.
    pub fn value(&self) -> Obj {
        match self {
            FreeView::Trivial(x) => x.clone(),
            FreeView::Plain(f) => Obj::Plain(Arc::clone(&f.glob)),
            FreeView::Bi { c1, c2, .. } => {
                Obj::Bi(Arc::clone(&c1.glob), Arc::clone(&c2.glob))
            }
        }
    }

    pub fn complete(&self) -> bool {
        match self {
            FreeView::Trivial(_) => true,
            FreeView::Plain(f) => f.complete,
            FreeView::Bi { c1, c2, .. } => c1.complete && c2.complete,
        }
    }
}

impl MonadDescription {
    pub fn identity(base: EffCat) -> Self {
        MonadDescription {
            name: "identity".into(),
            base,
            kind: MonadKind::Identity,
        }
    }

    pub fn free_cat(bound: Bound) -> Self {
        MonadDescription {
            name: "free-cat".into(),
            base: EffCat::Plain { dim: 1 },
            kind: MonadKind::FreeCat { bound },
        }
    }

    pub fn free_ncat(dim: usize, bound: Bound) -> Self {
        MonadDescription {
            name: format!("free-{dim}cat"),
            base: EffCat::Plain { dim },
            kind: MonadKind::FreeNCat { bound },
        }
    }

    pub fn functor_monad(dim: usize, bound: Bound) -> Self {
        MonadDescription {
            name: "functor-monad".into(),
            base: EffCat::Bi { dim },
            kind: MonadKind::FunctorMonad { bound },
        }
    }

    pub fn custom(name: impl Into<String>, base: EffCat, kernel: CustomMonad) -> Self {
        MonadDescription {
            name: name.into(),
            base,
            kind: MonadKind::Custom(Arc::new(kernel)),
        }
    }

    pub fn bound(&self) -> Bound {
        match &self.kind {
            MonadKind::FreeCat { bound }
            | MonadKind::FreeNCat { bound }
            | MonadKind::FunctorMonad { bound } => *bound,
            _ => Bound::default(),
        }
    }

    fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Materializes T(x) with cell tables.
    pub fn view(&self, x: &Obj) -> Result<FreeView> {
        if !self.base.contains(x) {
            return Err(Error::BaseMismatch(format!(
                "object does not live in the base of `{}`",
                self.name
            )));
        }
        match &self.kind {
            MonadKind::Identity | MonadKind::Custom(_) => Ok(FreeView::Trivial(x.clone())),
            MonadKind::FreeCat { bound } | MonadKind::FreeNCat { bound } => {
                let g = x.as_plain()?;
                Ok(FreeView::Plain(free_obj(g, self.dim(), bound)?))
            }
            MonadKind::FunctorMonad { bound } => {
                let (a, b) = x.as_bi()?;
                let sum = Arc::new(GlobSet::coproduct(a, b));
                let c1 = free_obj(a, self.dim(), bound)?;
                let c2 = free_obj(&sum, self.dim(), bound)?;
                Ok(FreeView::Bi {
                    c1,
                    c2,
                    shift: a.sizes.clone(),
                    sum,
                })
            }
        }
    }

    pub fn apply_obj(&self, x: &Obj) -> Result<Obj> {
        match &self.kind {
            MonadKind::Custom(k) => (k.endo_obj)(x),
            _ => Ok(self.view(x)?.value()),
        }
    }

    pub fn apply_mor(&self, f: &Mor) -> Result<Mor> {
        match &self.kind {
            MonadKind::Identity => Ok(f.clone()),
            MonadKind::Custom(k) => (k.endo_mor)(f),
            MonadKind::FreeCat { .. } | MonadKind::FreeNCat { .. } => {
                let g = f.as_plain()?;
                let dom = self.view(&Obj::Plain(Arc::clone(&g.dom)))?;
                let cod = self.view(&Obj::Plain(Arc::clone(&g.cod)))?;
                let (dom, cod) = match (&dom, &cod) {
                    (FreeView::Plain(a), FreeView::Plain(b)) => (a, b),
                    _ => unreachable!(),
                };
                Ok(Mor::Plain(relabel_free(dom, cod, g)?))
            }
            MonadKind::FunctorMonad { .. } => {
                let (f1, f2) = f.as_bi()?;
                let dom = self.view(&Obj::Bi(Arc::clone(&f1.dom), Arc::clone(&f2.dom)))?;
                let cod = self.view(&Obj::Bi(Arc::clone(&f1.cod), Arc::clone(&f2.cod)))?;
                match (&dom, &cod) {
                    (
                        FreeView::Bi { c1: d1, c2: d2, shift: ds, .. },
                        FreeView::Bi { c1: e1, c2: e2, shift: es, sum, .. },
                    ) => {
                        let t1 = relabel_free(d1, e1, f1)?;
                        // the coproduct map f1 ⊔ f2 between the sum bases
                        let sum_map = GlobMor {
                            dom: Arc::clone(&d2.base),
                            cod: Arc::clone(sum),
                            maps: (0..=self.dim())
                                .map(|k| {
                                    let mut col: Vec<usize> =
                                        f1.maps[k].clone();
                                    col.extend(f2.maps[k].iter().map(|&c| c + es[k]));
                                    debug_assert_eq!(col.len(), d2.base.sizes[k]);
                                    let _ = ds;
                                    col
                                })
                                .collect(),
                        };
                        let t2 = relabel_free(d2, e2, &sum_map)?;
                        Ok(Mor::Bi(t1, t2))
                    }
                    _ => unreachable!(),
                }
            }
        }
    }

    pub fn unit_at(&self, x: &Obj) -> Result<Mor> {
        match &self.kind {
            MonadKind::Identity => self.base.identity(x),
            MonadKind::Custom(k) => (k.unit)(x),
            MonadKind::FreeCat { .. } | MonadKind::FreeNCat { .. } => {
                let g = x.as_plain()?;
                let view = match self.view(x)? {
                    FreeView::Plain(v) => v,
                    _ => unreachable!(),
                };
                Ok(Mor::Plain(unit_into(g, &view, 0)?))
            }
            MonadKind::FunctorMonad { .. } => {
                let (a, b) = x.as_bi()?;
                match self.view(x)? {
                    FreeView::Bi { c1, c2, shift, .. } => {
                        let u1 = unit_into(a, &c1, 0)?;
                        let u2 = unit_into_shifted(b, &c2, &shift)?;
                        Ok(Mor::Bi(u1, u2))
                    }
                    _ => unreachable!(),
                }
            }
        }
    }

    pub fn mult_at(&self, x: &Obj) -> Result<Mor> {
        match &self.kind {
            MonadKind::Identity => self.base.identity(x),
            MonadKind::Custom(k) => (k.mult)(x),
            MonadKind::FreeCat { .. } | MonadKind::FreeNCat { .. } => {
                let tx = match self.view(x)? {
                    FreeView::Plain(v) => v,
                    _ => unreachable!(),
                };
                let ttx = match self.view(&Obj::Plain(Arc::clone(&tx.glob)))? {
                    FreeView::Plain(v) => v,
                    _ => unreachable!(),
                };
                let maps = flatten_maps(&ttx, &tx)?;
                Ok(Mor::Plain(GlobMor {
                    dom: Arc::clone(&ttx.glob),
                    cod: Arc::clone(&tx.glob),
                    maps,
                }))
            }
            MonadKind::FunctorMonad { .. } => {
                let bx = self.view(x)?;
                let (tx1, tsum, shift) = match &bx {
                    FreeView::Bi { c1, c2, shift, .. } => (c1, c2, shift.clone()),
                    _ => unreachable!(),
                };
                let bbx = self.view(&bx.value())?;
                let (ttx1, touter, outer_shift) = match &bbx {
                    FreeView::Bi { c1, c2, shift, .. } => (c1, c2, shift.clone()),
                    _ => unreachable!(),
                };
                // color 1: plain flattening over T(x1)
                let m1 = GlobMor {
                    dom: Arc::clone(&ttx1.glob),
                    cod: Arc::clone(&tx1.glob),
                    maps: flatten_maps(ttx1, tx1)?,
                };
                // color 2: cells of T(Tx1 ⊔ Tsum) resolve through either
                // T(in1) on the first summand or identically on the second,
                // then flatten into T(sum).
                let resolve = |k: usize, c: usize| -> FreeCell {
                    if c < outer_shift[k] {
                        // a cell of T(x1): inject its free cell into the sum
                        tx1.cells[k][c].clone()
                    } else {
                        tsum.cells[k][c - outer_shift[k]].clone()
                    }
                };
                let mut maps2 = Vec::new();
                for k in 0..=self.dim() {
                    let mut col = Vec::with_capacity(touter.cells[k].len());
                    for cell in &touter.cells[k] {
                        let flat = crate::free::flatten(
                            cell,
                            &|v| match resolve(0, v) {
                                FreeCell::Vertex(w) => w,
                                _ => unreachable!(),
                            },
                            &|e| resolve(1, e),
                            &|f| resolve(2, f),
                        );
                        col.push(tsum.cell_index(&flat)?);
                    }
                    maps2.push(col);
                }
                let m2 = GlobMor {
                    dom: Arc::clone(&touter.glob),
                    cod: Arc::clone(&tsum.glob),
                    maps: maps2,
                };
                let _ = shift;
                Ok(Mor::Bi(m1, m2))
            }
        }
    }
}

/// T applied to a globular map, between materialized views.
fn relabel_free(dom: &FreeObj, cod: &FreeObj, f: &GlobMor) -> Result<GlobMor> {
    let dims = dom.cells.len();
    let mut maps = Vec::with_capacity(dims);
    for k in 0..dims {
        let mut col = Vec::with_capacity(dom.cells[k].len());
        for cell in &dom.cells[k] {
            col.push(cod.cell_index(&cell.relabel(f))?);
        }
        maps.push(col);
    }
    Ok(GlobMor {
        dom: Arc::clone(&dom.glob),
        cod: Arc::clone(&cod.glob),
        maps,
    })
}

fn unit_into(x: &GlobRef, view: &FreeObj, shift_base: usize) -> Result<GlobMor> {
    let _ = shift_base;
    let mut maps = Vec::with_capacity(x.dim + 1);
    for k in 0..=x.dim {
        let mut col = Vec::with_capacity(x.sizes[k]);
        for c in 0..x.sizes[k] {
            col.push(view.cell_index(&FreeCell::eta(&view.base, k, c))?);
        }
        maps.push(col);
    }
    Ok(GlobMor {
        dom: Arc::clone(x),
        cod: Arc::clone(&view.glob),
        maps,
    })
}

/// Unit of the second color: cells of `x` sit inside the coproduct base of
/// `view` after the per-dimension shift.
fn unit_into_shifted(x: &GlobRef, view: &FreeObj, shift: &[usize]) -> Result<GlobMor> {
    let mut maps = Vec::with_capacity(x.dim + 1);
    for k in 0..=x.dim {
        let mut col = Vec::with_capacity(x.sizes[k]);
        for c in 0..x.sizes[k] {
            col.push(view.cell_index(&FreeCell::eta(&view.base, k, c + shift[k]))?);
        }
        maps.push(col);
    }
    Ok(GlobMor {
        dom: Arc::clone(x),
        cod: Arc::clone(&view.glob),
        maps,
    })
}

/// Multiplication tables: every cell of the doubly free object flattens to a
/// cell of the singly free one.
fn flatten_maps(ttx: &FreeObj, tx: &FreeObj) -> Result<Vec<Vec<usize>>> {
    let dims = ttx.cells.len();
    let mut maps = Vec::with_capacity(dims);
    for k in 0..dims {
        let col: Vec<Result<usize>> = par::map_vec(&ttx.cells[k], |cell| {
            tx.cell_index(&flatten_through(cell, tx))
        });
        maps.push(col.into_iter().collect::<Result<Vec<_>>>()?);
    }
    Ok(maps)
}

/// Pointwise monad-law check at the supplied test objects.
///
/// For the free monads the laws are verified symbolically, by comparing
/// flattened free cells over the enumerated slice of the doubly and triply
/// free objects; this stays total even though those objects are infinite.
/// For identity and custom monads the tabulated component oracles are
/// composed directly; a custom multiplication whose iterate escapes the
/// enumeration bound skips the associativity triple for that object.
pub fn check_monad_laws(m: &MonadDescription, test_objects: &[Obj]) -> Result<Report> {
    let mut report = Report::new(format!("monad laws for `{}`", m.name));
    for (i, x) in test_objects.iter().enumerate() {
        let label = format!("object #{i}");
        match &m.kind {
            MonadKind::Identity | MonadKind::Custom(_) => {
                check_laws_tabular(m, x, &label, &mut report)?
            }
            MonadKind::FreeCat { bound } | MonadKind::FreeNCat { bound } => {
                let g = x.as_plain()?;
                check_laws_symbolic_plain(g, m.dim(), bound, &label, &mut report)?;
            }
            MonadKind::FunctorMonad { bound } => {
                let (a, b) = x.as_bi()?;
                check_laws_symbolic_plain(a, m.dim(), bound, &format!("{label} color 1"), &mut report)?;
                check_laws_symbolic_bi(a, b, m.dim(), bound, &format!("{label} color 2"), &mut report)?;
            }
        }
    }
    Ok(report)
}

fn check_laws_tabular(
    m: &MonadDescription,
    x: &Obj,
    label: &str,
    report: &mut Report,
) -> Result<()> {
    let tx = m.apply_obj(x)?;
    let unit = m.unit_at(x)?;
    let mult = m.mult_at(x)?;
    let id_tx = m.base.identity(&tx)?;

    let unit_at_tx = m.unit_at(&tx)?;
    let left = m.base.compose(&mult, &unit_at_tx)?;
    report.check("unit-left", || format!("μ∘ηT ≠ id at {label}"), left == id_tx);

    let t_unit = m.apply_mor(&unit)?;
    let right = m.base.compose(&mult, &t_unit)?;
    report.check("unit-right", || format!("μ∘Tη ≠ id at {label}"), right == id_tx);

    // associativity where the iterated multiplication evaluates in bounds
    let assoc = (|| -> Result<(Mor, Mor)> {
        let mult_at_tx = m.mult_at(&tx)?;
        let t_mult = m.apply_mor(&mult)?;
        Ok((
            m.base.compose(&mult, &mult_at_tx)?,
            m.base.compose(&mult, &t_mult)?,
        ))
    })();
    match assoc {
        Ok((l, r)) => report.check(
            "associativity",
            || {
                let (a, b) = first_difference(&l, &r);
                format!("μ∘μT ≠ μ∘Tμ at {label}: first difference {a} vs {b}")
            },
            l == r,
        ),
        Err(e) if e.is_bound_exhausted() => {}
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Iterated free objects are infinite; the associativity slice is the
/// canonical prefix of their enumeration under this budget.
fn tower_bound(bound: &Bound) -> Bound {
    Bound {
        max_len: bound.max_len,
        max_cells: bound.max_cells.min(20_000),
    }
}

/// Symbolic law check for the plain free monads over one base object.
fn check_laws_symbolic_plain(
    x: &GlobRef,
    dim: usize,
    bound: &Bound,
    label: &str,
    report: &mut Report,
) -> Result<()> {
    let v1 = free_obj(x, dim, bound)?;
    let tower = tower_bound(bound);
    let v2 = free_obj_slice(&v1.glob, dim, &tower)?;
    let v3 = free_obj_slice(&v2.glob, dim, &tower)?;

    // unit laws, cell by cell over T(x)
    let eta_map = unit_glob_mor(x, &v1);
    for k in 0..v1.cells.len() {
        for (c, cell) in v1.cells[k].iter().enumerate() {
            let eta_up = FreeCell::eta(&v2.base, k, c);
            report.check(
                "unit-left",
                || format!("μ∘ηT moved cell {c} (dim {k}) at {label}"),
                flatten_through(&eta_up, &v1) == *cell,
            );
            report.check(
                "unit-right",
                || format!("μ∘Tη moved cell {c} (dim {k}) at {label}"),
                flatten_through(&cell.relabel(&eta_map), &v1) == *cell,
            );
        }
    }

    // associativity over the enumerated slice of the triply free object:
    // flatten-then-flatten against substitute-then-flatten
    let failures: Vec<Option<String>> = par::map_range(v3.cells.len(), |k| {
        for (c, u) in v3.cells[k].iter().enumerate() {
            let route_a = flatten_through(&flatten_through(u, &v2), &v1);
            let route_b = crate::free::flatten(
                u,
                &|v| match flatten_through(&v2.cells[0][v], &v1) {
                    FreeCell::Vertex(w) => w,
                    _ => unreachable!(),
                },
                &|e| flatten_through(&v2.cells[1][e], &v1),
                &|f| flatten_through(&v2.cells[2][f], &v1),
            );
            if route_a != route_b {
                return Some(format!("cell {c} (dim {k}) at {label}"));
            }
        }
        None
    });
    for (k, f) in failures.into_iter().enumerate() {
        report.checks += v3.cells[k].len();
        if let Some(w) = f {
            report.push("associativity", w);
        }
    }
    Ok(())
}

fn unit_glob_mor(x: &GlobRef, view: &FreeObj) -> GlobMor {
    let mut maps = Vec::with_capacity(x.dim + 1);
    for k in 0..=x.dim {
        maps.push(
            (0..x.sizes[k])
                .map(|c| view.index[k][&FreeCell::eta(&view.base, k, c)])
                .collect(),
        );
    }
    GlobMor {
        dom: Arc::clone(x),
        cod: Arc::clone(&view.glob),
        maps,
    }
}

/// Symbolic law check for the second color of the functor monad.
fn check_laws_symbolic_bi(
    x1: &GlobRef,
    x2: &GlobRef,
    dim: usize,
    bound: &Bound,
    label: &str,
    report: &mut Report,
) -> Result<()> {
    let sum0 = Arc::new(GlobSet::coproduct(x1, x2));
    let tx1 = free_obj(x1, dim, bound)?;
    let tsum = free_obj(&sum0, dim, bound)?;
    let tower = tower_bound(bound);
    let u1 = Arc::new(GlobSet::coproduct(&tx1.glob, &tsum.glob));
    let ttx1 = free_obj_slice(&tx1.glob, dim, &tower)?;
    let touter = free_obj_slice(&u1, dim, &tower)?;
    let u2 = Arc::new(GlobSet::coproduct(&ttx1.glob, &touter.glob));
    let touter2 = free_obj_slice(&u2, dim, &tower)?;

    // resolvers into free cells over sum0 resp. u1
    let rho0 = |k: usize, c: usize| -> FreeCell {
        if c < tx1.glob.sizes[k] {
            tx1.cells[k][c].clone()
        } else {
            tsum.cells[k][c - tx1.glob.sizes[k]].clone()
        }
    };
    let rho1 = |k: usize, c: usize| -> FreeCell {
        if c < ttx1.glob.sizes[k] {
            ttx1.cells[k][c].clone()
        } else {
            touter.cells[k][c - ttx1.glob.sizes[k]].clone()
        }
    };
    let flat0 = |cell: &FreeCell| -> FreeCell {
        crate::free::flatten(
            cell,
            &|v| match rho0(0, v) {
                FreeCell::Vertex(w) => w,
                _ => unreachable!(),
            },
            &|e| rho0(1, e),
            &|f| rho0(2, f),
        )
    };
    let flat1 = |cell: &FreeCell| -> FreeCell {
        crate::free::flatten(
            cell,
            &|v| match rho1(0, v) {
                FreeCell::Vertex(w) => w,
                _ => unreachable!(),
            },
            &|e| rho1(1, e),
            &|f| rho1(2, f),
        )
    };

    // unit laws at each cell of T(sum0); B(η) relabels through η1 ⊔ η2
    let n = bi_unit_glob_mor(x1, x2, &sum0, &tx1, &tsum, &u1);
    for k in 0..tsum.cells.len() {
        for (c, cell) in tsum.cells[k].iter().enumerate() {
            let eta_up = FreeCell::eta(&u1, k, c + tx1.glob.sizes[k]);
            report.check(
                "unit-left",
                || format!("μ∘ηB moved cell {c} (dim {k}) at {label}"),
                flat0(&eta_up) == *cell,
            );
            report.check(
                "unit-right",
                || format!("μ∘Bη moved cell {c} (dim {k}) at {label}"),
                flat0(&cell.relabel(&n)) == *cell,
            );
        }
    }

    // associativity over the enumerated slice of the second color of B³:
    // route A flattens in two stages, route B substitutes each cell of the
    // middle layer by its own flattening first
    let sigma = |k: usize, c: usize| -> FreeCell {
        if c < ttx1.glob.sizes[k] {
            flatten_through(&ttx1.cells[k][c], &tx1)
        } else {
            flat0(&touter.cells[k][c - ttx1.glob.sizes[k]])
        }
    };
    for k in 0..touter2.cells.len() {
        for (c, u) in touter2.cells[k].iter().enumerate() {
            let route_a = flat0(&flat1(u));
            let route_b = crate::free::flatten(
                u,
                &|v| match sigma(0, v) {
                    FreeCell::Vertex(w) => w,
                    _ => unreachable!(),
                },
                &|e| sigma(1, e),
                &|f| sigma(2, f),
            );
            report.check(
                "associativity",
                || format!("cell {c} (dim {k}) at {label}"),
                route_a == route_b,
            );
        }
    }
    Ok(())
}

fn bi_unit_glob_mor(
    x1: &GlobRef,
    x2: &GlobRef,
    sum0: &GlobRef,
    tx1: &FreeObj,
    tsum: &FreeObj,
    u1: &GlobRef,
) -> GlobMor {
    let mut maps = Vec::with_capacity(sum0.dim + 1);
    for k in 0..=sum0.dim {
        let mut col = Vec::with_capacity(sum0.sizes[k]);
        for c in 0..x1.sizes[k] {
            col.push(tx1.index[k][&FreeCell::eta(x1, k, c)]);
        }
        for c in 0..x2.sizes[k] {
            let idx = tsum.index[k][&FreeCell::eta(sum0, k, c + x1.sizes[k])];
            col.push(idx + tx1.glob.sizes[k]);
        }
        maps.push(col);
    }
    GlobMor {
        dom: Arc::clone(sum0),
        cod: Arc::clone(u1),
        maps,
    }
}

fn first_difference(a: &Mor, b: &Mor) -> (String, String) {
    fn scan(a: &GlobMor, b: &GlobMor) -> Option<(String, String)> {
        for k in 0..a.maps.len() {
            for c in 0..a.maps[k].len().min(b.maps[k].len()) {
                if a.maps[k][c] != b.maps[k][c] {
                    return Some((
                        format!("{}↦{}", GlobSet::cell_name(k, c), a.maps[k][c]),
                        format!("{}↦{}", GlobSet::cell_name(k, c), b.maps[k][c]),
                    ));
                }
            }
        }
        None
    }
    match (a, b) {
        (Mor::Plain(a), Mor::Plain(b)) => scan(a, b).unwrap_or_default(),
        (Mor::Bi(a1, a2), Mor::Bi(b1, b2)) => {
            scan(a1, b1).or_else(|| scan(a2, b2)).unwrap_or_default()
        }
        _ => (String::from("flavor"), String::from("mismatch")),
    }
}

/// Equality of monads at a test object: object value, unit and multiplication
/// components all agree.
pub fn monads_agree_at(a: &MonadDescription, b: &MonadDescription, x: &Obj) -> Result<bool> {
    let ta = a.apply_obj(x)?;
    let tb = b.apply_obj(x)?;
    if !same_obj(&ta, &tb) {
        return Ok(false);
    }
    Ok(a.unit_at(x)? == b.unit_at(x)? && a.mult_at(x)? == b.mult_at(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn probes() -> Vec<Obj> {
        vec![
            Obj::plain(GlobSet::linear(0, 1)),
            Obj::plain(GlobSet::linear(1, 1)),
            Obj::plain(GlobSet::linear(2, 1)),
            Obj::plain(GlobSet::parallel_edges(2, 1)),
        ]
    }

    #[test]
    fn identity_monad_passes_laws() {
        let m = MonadDescription::identity(EffCat::Plain { dim: 1 });
        let r = check_monad_laws(&m, &probes()).unwrap();
        assert!(r.is_clean(), "{}", r.render_text());
    }

    #[test]
    fn free_category_monad_passes_laws() {
        let m = MonadDescription::free_cat(Bound::with_len(3));
        let r = check_monad_laws(&m, &probes()).unwrap();
        assert!(r.is_clean(), "{}", r.render_text());
    }

    #[test]
    fn free_two_category_monad_passes_laws_on_globes() {
        let m = MonadDescription::free_ncat(2, Bound::with_len(3));
        let objs = vec![
            Obj::plain(GlobSet::globe(2, 2)),
            Obj::plain(GlobSet::vertical_pair()),
        ];
        let r = check_monad_laws(&m, &objs).unwrap();
        assert!(r.is_clean(), "{}", r.render_text());
    }

    #[test]
    fn functor_monad_passes_laws_and_value_shapes() {
        let m = MonadDescription::functor_monad(1, Bound::with_len(3));
        let x = Obj::bi(GlobSet::linear(1, 1), GlobSet::linear(0, 1));
        let r = check_monad_laws(&m, &[x.clone()]).unwrap();
        assert!(r.is_clean(), "{}", r.render_text());

        // B(X, ∅) = (TX, TX) and B(∅, Y) = (∅, TY)
        let x_empty = Obj::bi(GlobSet::linear(1, 1), GlobSet::empty(1));
        let v = m.apply_obj(&x_empty).unwrap();
        let (c1, c2) = v.as_bi().unwrap();
        assert_eq!(c1, c2);
        assert_eq!(c1.sizes[1], 3);

        let empty_y = Obj::bi(GlobSet::empty(1), GlobSet::linear(1, 1));
        let v = m.apply_obj(&empty_y).unwrap();
        let (c1, c2) = v.as_bi().unwrap();
        assert!(c1.is_empty());
        assert_eq!(c2.sizes[1], 3);
    }

    #[test]
    fn corrupted_multiplication_is_reported() {
        // wrap free-cat but swap two entries of μ at the edge level
        let inner = MonadDescription::free_cat(Bound::with_len(3));
        let inner2 = inner.clone();
        let inner3 = inner.clone();
        let inner4 = inner.clone();
        let bad = MonadDescription::custom(
            "free-cat-corrupted",
            EffCat::Plain { dim: 1 },
            CustomMonad {
                endo_obj: Box::new(move |x| inner.apply_obj(x)),
                endo_mor: Box::new(move |f| inner2.apply_mor(f)),
                unit: Box::new(move |x| inner3.unit_at(x)),
                mult: Box::new(move |x| {
                    let m = inner4.mult_at(x)?;
                    match m {
                        Mor::Plain(mut g) => {
                            if g.maps[1].len() >= 2 {
                                g.maps[1].swap(0, 1);
                            }
                            Ok(Mor::Plain(g))
                        }
                        other => Ok(other),
                    }
                }),
            },
        );
        let x = Obj::plain(GlobSet::linear(1, 1));
        let r = check_monad_laws(&bad, &[x]).unwrap();
        assert!(!r.is_clean());
    }
}
