//! Morphisms of monads and their Kleisli images.
//!
//! A morphism (Q, q) consists of a functor Q between the bases and a natural
//! family q : QT ⇒ T′Q, subject to a unit triangle and a multiplication
//! rectangle. Composition is (Q_o∘Q_i, (q_o Q_i)∘(Q_o q_i)) with the outer
//! morphism written first.

use std::sync::Arc;

use crate::effcat::{same_obj, EffCat, Mor, Obj};
use crate::error::{Error, Result};
use crate::glob::{GlobMor, GlobSet};
use crate::report::Report;

use super::{FreeView, MonadDescription};

/// Natural-transformation component oracle generator for custom functors.
pub struct CustomFunctor {
    pub name: String,
    pub source: EffCat,
    pub target: EffCat,
    pub on_obj: Box<dyn Fn(&Obj) -> Result<Obj> + Send + Sync>,
    pub on_mor: Box<dyn Fn(&Mor) -> Result<Mor> + Send + Sync>,
}

/// A functor between ambient categories.
#[derive(Clone)]
pub enum EffFunctor {
    Identity(EffCat),
    /// X ↦ (X, ∅): the first color inclusion.
    Color1 { dim: usize },
    /// X ↦ (∅, X): the second color inclusion.
    Color2 { dim: usize },
    Compose(Box<EffFunctor>, Box<EffFunctor>),
    Custom(Arc<CustomFunctor>),
}

impl std::fmt::Debug for EffFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EffFunctor::Identity(c) => write!(f, "Identity({c:?})"),
            EffFunctor::Color1 { dim } => write!(f, "Color1(dim {dim})"),
            EffFunctor::Color2 { dim } => write!(f, "Color2(dim {dim})"),
            EffFunctor::Compose(a, b) => write!(f, "{a:?} ∘ {b:?}"),
            EffFunctor::Custom(c) => write!(f, "Custom({})", c.name),
        }
    }
}

impl EffFunctor {
    pub fn source(&self) -> EffCat {
        match self {
            EffFunctor::Identity(c) => *c,
            EffFunctor::Color1 { dim } | EffFunctor::Color2 { dim } => EffCat::Plain { dim: *dim },
            EffFunctor::Compose(_, inner) => inner.source(),
            EffFunctor::Custom(c) => c.source,
        }
    }

    pub fn target(&self) -> EffCat {
        match self {
            EffFunctor::Identity(c) => *c,
            EffFunctor::Color1 { dim } | EffFunctor::Color2 { dim } => EffCat::Bi { dim: *dim },
            EffFunctor::Compose(outer, _) => outer.target(),
            EffFunctor::Custom(c) => c.target,
        }
    }

    pub fn apply_obj(&self, x: &Obj) -> Result<Obj> {
        match self {
            EffFunctor::Identity(_) => Ok(x.clone()),
            EffFunctor::Color1 { dim } => {
                let g = x.as_plain()?;
                Ok(Obj::Bi(Arc::clone(g), Arc::new(GlobSet::empty(*dim))))
            }
            EffFunctor::Color2 { dim } => {
                let g = x.as_plain()?;
                Ok(Obj::Bi(Arc::new(GlobSet::empty(*dim)), Arc::clone(g)))
            }
            EffFunctor::Compose(outer, inner) => outer.apply_obj(&inner.apply_obj(x)?),
            EffFunctor::Custom(c) => (c.on_obj)(x),
        }
    }

    pub fn apply_mor(&self, f: &Mor) -> Result<Mor> {
        match self {
            EffFunctor::Identity(_) => Ok(f.clone()),
            EffFunctor::Color1 { dim } => {
                let g = f.as_plain()?;
                let empty = Arc::new(GlobSet::empty(*dim));
                Ok(Mor::Bi(
                    g.clone(),
                    GlobMor {
                        dom: Arc::clone(&empty),
                        cod: empty,
                        maps: vec![Vec::new(); *dim + 1],
                    },
                ))
            }
            EffFunctor::Color2 { dim } => {
                let g = f.as_plain()?;
                let empty = Arc::new(GlobSet::empty(*dim));
                Ok(Mor::Bi(
                    GlobMor {
                        dom: Arc::clone(&empty),
                        cod: empty,
                        maps: vec![Vec::new(); *dim + 1],
                    },
                    g.clone(),
                ))
            }
            EffFunctor::Compose(outer, inner) => outer.apply_mor(&inner.apply_mor(f)?),
            EffFunctor::Custom(c) => (c.on_mor)(f),
        }
    }
}

/// Component oracle of the natural family q : QT ⇒ T′Q.
#[derive(Clone)]
pub enum QOracle {
    /// q = 1 for the identity morphism of a monad.
    IdentityComponents,
    /// Components of the source-color inclusion into the functor monad.
    Delta,
    /// Components of the target-color inclusion into the functor monad.
    Kappa,
    Composite(Arc<MonadMorphism>, Arc<MonadMorphism>),
    Custom(Arc<dyn Fn(&Obj) -> Result<Mor> + Send + Sync>),
}

#[derive(Clone)]
pub struct MonadMorphism {
    pub name: String,
    pub source: Arc<MonadDescription>,
    pub target: Arc<MonadDescription>,
    pub functor: EffFunctor,
    pub q: QOracle,
}

impl std::fmt::Debug for MonadMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MonadMorphism {} : {} -> {}",
            self.name, self.source.name, self.target.name
        )
    }
}

impl MonadMorphism {
    pub fn identity(m: &Arc<MonadDescription>) -> Self {
        MonadMorphism {
            name: format!("1_{}", m.name),
            source: Arc::clone(m),
            target: Arc::clone(m),
            functor: EffFunctor::Identity(m.base),
            q: QOracle::IdentityComponents,
        }
    }

    /// The component q(x) : Q(T x) -> T′(Q x).
    pub fn q_at(&self, x: &Obj) -> Result<Mor> {
        match &self.q {
            QOracle::IdentityComponents => {
                let tx = self.source.apply_obj(x)?;
                self.source.base.identity(&tx)
            }
            QOracle::Delta => {
                // (T x, ∅) -> (T x, T(x ⊔ ∅)): identity and the empty map
                let tx_view = self.source.view(x)?;
                let tx = match &tx_view {
                    FreeView::Plain(v) => Arc::clone(&v.glob),
                    _ => return Err(Error::malformed("delta needs a plain source monad")),
                };
                let qx = self.functor.apply_obj(x)?;
                let bqx = self.target.apply_obj(&qx)?;
                let (b1, b2) = bqx.as_bi()?;
                if **b1 != *tx {
                    return Err(Error::malformed(
                        "delta components misaligned with the functor monad value",
                    ));
                }
                let id1 = GlobMor {
                    dom: Arc::clone(&tx),
                    cod: Arc::clone(b1),
                    maps: (0..=tx.dim).map(|k| (0..tx.sizes[k]).collect()).collect(),
                };
                Ok(Mor::Bi(id1, GlobMor::from_empty(b2)))
            }
            QOracle::Kappa => {
                // (∅, T x) -> (T ∅, T(∅ ⊔ x)): both components are forced
                let tx_view = self.source.view(x)?;
                let tx = match &tx_view {
                    FreeView::Plain(v) => Arc::clone(&v.glob),
                    _ => return Err(Error::malformed("kappa needs a plain source monad")),
                };
                let qx = self.functor.apply_obj(x)?;
                let bqx = self.target.apply_obj(&qx)?;
                let (b1, b2) = bqx.as_bi()?;
                if **b2 != *tx {
                    return Err(Error::malformed(
                        "kappa components misaligned with the functor monad value",
                    ));
                }
                let empty_dom = Arc::new(GlobSet::empty(tx.dim));
                let c1 = GlobMor {
                    dom: empty_dom,
                    cod: Arc::clone(b1),
                    maps: vec![Vec::new(); tx.dim + 1],
                };
                let c2 = GlobMor {
                    dom: Arc::clone(&tx),
                    cod: Arc::clone(b2),
                    maps: (0..=tx.dim).map(|k| (0..tx.sizes[k]).collect()).collect(),
                };
                Ok(Mor::Bi(c1, c2))
            }
            QOracle::Composite(outer, inner) => {
                let qi_x = inner.q_at(x)?;
                let q_inner_mapped = outer.functor.apply_mor(&qi_x)?;
                let qo_at = outer.q_at(&inner.functor.apply_obj(x)?)?;
                outer.target.base.compose(&qo_at, &q_inner_mapped)
            }
            QOracle::Custom(f) => f(x),
        }
    }
}

/// compose(outer, inner): underlying functor outer∘inner, components
/// (q_outer at Q_inner) ∘ (Q_outer of q_inner).
pub fn compose_monad_morphisms(
    outer: &Arc<MonadMorphism>,
    inner: &Arc<MonadMorphism>,
) -> Result<MonadMorphism> {
    if inner.target.name != outer.source.name || inner.target.base != outer.source.base {
        return Err(Error::BaseMismatch(format!(
            "cannot compose {} after {}: boundary monads differ",
            outer.name, inner.name
        )));
    }
    Ok(MonadMorphism {
        name: format!("{}∘{}", outer.name, inner.name),
        source: Arc::clone(&inner.source),
        target: Arc::clone(&outer.target),
        functor: EffFunctor::Compose(
            Box::new(outer.functor.clone()),
            Box::new(inner.functor.clone()),
        ),
        q: QOracle::Composite(Arc::clone(outer), Arc::clone(inner)),
    })
}

/// Unit triangle, multiplication rectangle and naturality of q, at the
/// supplied objects and morphisms.
pub fn check_monad_morphism(
    mm: &MonadMorphism,
    test_objects: &[Obj],
    test_morphisms: &[Mor],
) -> Result<Report> {
    let mut report = Report::new(format!("monad morphism `{}`", mm.name));
    let s = &mm.source;
    let t = &mm.target;
    for (i, x) in test_objects.iter().enumerate() {
        let label = format!("object #{i}");
        let qx = mm.functor.apply_obj(x)?;
        let q_at_x = mm.q_at(x)?;

        // unit triangle: q(x) ∘ Q(η) = η′(Qx)
        let q_eta = mm.functor.apply_mor(&s.unit_at(x)?)?;
        let lhs = t.base.compose(&q_at_x, &q_eta)?;
        let rhs = t.unit_at(&qx)?;
        report.check("unit-axiom", || format!("at {label}"), lhs == rhs);

        // multiplication rectangle: q(x) ∘ Q(μ) = μ′(Qx) ∘ T′(q(x)) ∘ q(Tx)
        let tx = s.apply_obj(x)?;
        let q_mu = mm.functor.apply_mor(&s.mult_at(x)?)?;
        let lhs = t.base.compose(&q_at_x, &q_mu)?;
        let q_at_tx = mm.q_at(&tx)?;
        let tq = t.apply_mor(&q_at_x)?;
        let rhs = t
            .base
            .compose(&t.mult_at(&qx)?, &t.base.compose(&tq, &q_at_tx)?)?;
        report.check("multiplication-axiom", || format!("at {label}"), lhs == rhs);
    }
    for (i, f) in test_morphisms.iter().enumerate() {
        // naturality: q(y) ∘ Q(T f) = T′(Q f) ∘ q(x)
        let x = f.dom();
        let y = f.cod();
        let lhs = t
            .base
            .compose(&mm.q_at(&y)?, &mm.functor.apply_mor(&s.apply_mor(f)?)?)?;
        let rhs = t
            .base
            .compose(&t.apply_mor(&mm.functor.apply_mor(f)?)?, &mm.q_at(&x)?)?;
        report.check(
            "naturality",
            || format!("square of test morphism #{i}"),
            lhs == rhs,
        );
    }
    Ok(report)
}

/// Componentwise equality of two monad morphisms at test objects.
pub fn morphisms_agree_at(a: &MonadMorphism, b: &MonadMorphism, x: &Obj) -> Result<bool> {
    let fa = a.functor.apply_obj(x)?;
    let fb = b.functor.apply_obj(x)?;
    Ok(same_obj(&fa, &fb) && a.q_at(x)? == b.q_at(x)?)
}

/// The Kleisli image of a monad morphism: the functor P with
/// P(f) = q(G′) ∘ Q(f) on Kleisli morphisms, paired with Q on bases.
pub struct KleisliFunctor {
    pub mm: Arc<MonadMorphism>,
}

impl KleisliFunctor {
    pub fn apply_obj(&self, x: &Obj) -> Result<Obj> {
        self.mm.functor.apply_obj(x)
    }

    /// P on a Kleisli morphism f : x -> tgt (presented by f : x -> T tgt).
    pub fn apply_kleisli(&self, f: &Mor, tgt: &Obj) -> Result<Mor> {
        let qf = self.mm.functor.apply_mor(f)?;
        let q_tgt = self.mm.q_at(tgt)?;
        self.mm.target.base.compose(&q_tgt, &qf)
    }
}

/// The square P ∘ L_T = L_T′ ∘ Q on the supplied base morphisms.
pub fn check_adj_square(kf: &KleisliFunctor, test_morphisms: &[Mor]) -> Result<Report> {
    let mut report = Report::new(format!("Kleisli square for `{}`", kf.mm.name));
    let s = &kf.mm.source;
    let t = &kf.mm.target;
    for (i, g) in test_morphisms.iter().enumerate() {
        let y = g.cod();
        let lift = s.base.compose(&s.unit_at(&y)?, g)?;
        let lhs = kf.apply_kleisli(&lift, &y)?;
        let qg = kf.mm.functor.apply_mor(g)?;
        let qy = kf.mm.functor.apply_obj(&y)?;
        let rhs = t.base.compose(&t.unit_at(&qy)?, &qg)?;
        report.check(
            "kleisli-square",
            || format!("P∘L ≠ L′∘Q at test morphism #{i}"),
            lhs == rhs,
        );
    }
    Ok(report)
}

/// Builds the Kleisli image of a monad morphism.
pub fn k_functor(mm: &Arc<MonadMorphism>) -> KleisliFunctor {
    KleisliFunctor { mm: Arc::clone(mm) }
}
