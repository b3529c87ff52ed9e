//! Kleisli adjunctions and the round trip back to monads.
//!
//! Only adjunctions arising from the Kleisli construction are materialized;
//! the functor from monads to adjunctions pairs with a right inverse that
//! recovers the monad componentwise — the round trip is checked by
//! re-deriving every component through the adjunction operations.

use std::sync::Arc;

use crate::effcat::{Mor, Obj};
use crate::error::Result;
use crate::report::Report;

use super::kleisli::KleisliPresentation;
use super::morphism::{KleisliFunctor, MonadMorphism, QOracle};
use super::{CustomMonad, MonadDescription};

/// An adjunction presented by the Kleisli construction of a monad.
#[derive(Clone)]
pub struct Adjunction {
    pub monad: Arc<MonadDescription>,
    pub kleisli: KleisliPresentation,
}

impl Adjunction {
    pub fn of(monad: &Arc<MonadDescription>) -> Self {
        Adjunction {
            monad: Arc::clone(monad),
            kleisli: KleisliPresentation::new(monad),
        }
    }

    /// The counit at x: the Kleisli morphism T x -> x presented by the base
    /// identity of T x.
    pub fn counit_at(&self, x: &Obj) -> Result<Mor> {
        let tx = self.monad.apply_obj(x)?;
        self.monad.base.identity(&tx)
    }
}

/// Triangle identities of the Kleisli adjunction at the given objects.
pub fn check_kleisli_adjunction(a: &Adjunction, test_objects: &[Obj]) -> Result<Report> {
    let mut report = Report::new(format!("Kleisli adjunction of `{}`", a.monad.name));
    let m = &a.monad;
    for (i, x) in test_objects.iter().enumerate() {
        let label = format!("object #{i}");
        let tx = m.apply_obj(x)?;

        // U(ε) ∘ η(U x) = 1 on U x = T x
        let eps = a.counit_at(x)?;
        let u_eps = a.kleisli.forget(&eps, x)?;
        let unit_tx = m.unit_at(&tx)?;
        let left = m.base.compose(&u_eps, &unit_tx)?;
        report.check(
            "triangle-U",
            || format!("Uε ∘ ηU ≠ 1 at {label}"),
            left == m.base.identity(&tx)?,
        );

        // ε(L x) ⊙ L(η x) = 1 in the Kleisli category
        let l_eta = a.kleisli.lift(&m.unit_at(x)?)?;
        let composite = a.kleisli.compose(&eps, &l_eta, &tx, x)?;
        report.check(
            "triangle-L",
            || format!("εL ⊙ Lη ≠ 1 at {label}"),
            composite == a.kleisli.id(x)?,
        );
    }
    Ok(report)
}

/// The monad recovered from an adjunction: (UL, η, UεL), with every component
/// routed through the adjunction operations.
pub fn u_functor(a: &Adjunction) -> MonadDescription {
    let m = Arc::clone(&a.monad);
    let base = m.base;
    let name = format!("U∘K({})", m.name);
    let m1 = Arc::clone(&m);
    let m2 = Arc::clone(&m);
    let m3 = Arc::clone(&m);
    let m4 = Arc::clone(&m);
    MonadDescription::custom(
        name,
        base,
        CustomMonad {
            endo_obj: Box::new(move |x| m1.apply_obj(x)),
            endo_mor: Box::new(move |g| {
                // U(L g): lift then forget
                let kl = KleisliPresentation::new(&m2);
                let lifted = kl.lift(g)?;
                kl.forget(&lifted, &g.cod())
            }),
            unit: Box::new(move |x| m3.unit_at(x)),
            mult: Box::new(move |x| {
                // U(ε at L x): the counit is the base identity on T x
                let kl = KleisliPresentation::new(&m4);
                let tx = m4.apply_obj(x)?;
                kl.forget(&m4.base.identity(&tx)?, x)
            }),
        },
    )
}

/// A morphism of Kleisli adjunctions: P between the Kleisli categories and Q
/// between the bases, with P ∘ L = L′ ∘ Q.
pub struct AdjMorphism {
    pub source: Adjunction,
    pub target: Adjunction,
    pub p: KleisliFunctor,
}

impl AdjMorphism {
    pub fn of(kf: KleisliFunctor) -> Self {
        AdjMorphism {
            source: Adjunction::of(&kf.mm.source),
            target: Adjunction::of(&kf.mm.target),
            p: kf,
        }
    }
}

/// The monad morphism recovered from an adjunction morphism: the underlying
/// functor Q together with q = (U′ P ε ∘ η′ Q U) L, evaluated pointwise.
pub fn u_functor_mor(am: &AdjMorphism) -> MonadMorphism {
    let src_adj = am.source.clone();
    let tgt_adj = am.target.clone();
    let p = KleisliFunctor {
        mm: Arc::clone(&am.p.mm),
    };
    let functor = am.p.mm.functor.clone();
    let source = Arc::new(u_functor(&am.source));
    let target = Arc::new(u_functor(&am.target));
    MonadMorphism {
        name: format!("U∘K({})", am.p.mm.name),
        source,
        target,
        functor: functor.clone(),
        q: QOracle::Custom(Arc::new(move |x: &Obj| {
            // q(x) = U′(P(ε at L x)) ∘ η′(Q(U(L x)))
            let tx = src_adj.monad.apply_obj(x)?;
            let eps = src_adj.counit_at(x)?;
            let p_eps = p.apply_kleisli(&eps, x)?;
            let qx = functor.apply_obj(x)?;
            let u_p_eps = tgt_adj.kleisli.forget(&p_eps, &qx)?;
            let q_tx = functor.apply_obj(&tx)?;
            let eta_q_tx = tgt_adj.monad.unit_at(&q_tx)?;
            tgt_adj.monad.base.compose(&u_p_eps, &eta_q_tx)
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effcat::EffCat;
    use crate::free::Bound;
    use crate::glob::GlobSet;
    use crate::monad::monads_agree_at;

    fn probes() -> Vec<Obj> {
        (0..3).map(|n| Obj::plain(GlobSet::linear(n, 1))).collect()
    }

    #[test]
    fn triangle_identities_hold_for_free_cat() {
        let m = Arc::new(MonadDescription::free_cat(Bound::default()));
        let r = check_kleisli_adjunction(&Adjunction::of(&m), &probes()).unwrap();
        assert!(r.is_clean(), "{}", r.render_text());
    }

    #[test]
    fn round_trip_recovers_the_identity_monad() {
        let m = Arc::new(MonadDescription::identity(EffCat::Plain { dim: 1 }));
        let back = u_functor(&Adjunction::of(&m));
        for x in probes() {
            assert!(monads_agree_at(&m, &back, &x).unwrap());
        }
    }

    #[test]
    fn round_trip_recovers_free_cat_componentwise() {
        let m = Arc::new(MonadDescription::free_cat(Bound::default()));
        let back = u_functor(&Adjunction::of(&m));
        for x in probes() {
            assert!(monads_agree_at(&m, &back, &x).unwrap());
        }
    }
}
