//! A fixed library of small categories used by checkers, tests and the CLI.

use super::category::{CategoryBuilder, FinCategory, ObjId};

/// One object, identity only.
pub fn terminal() -> FinCategory {
    let mut b = CategoryBuilder::new("terminal");
    b.object("*");
    b.build()
}

pub fn discrete(n: usize) -> FinCategory {
    let mut b = CategoryBuilder::new(format!("discrete{n}"));
    for i in 0..n {
        b.object(format!("{i}"));
    }
    b.build()
}

/// Two objects and one arrow between them.
pub fn walking_arrow() -> FinCategory {
    let mut b = CategoryBuilder::new("arrow");
    let a = b.object("a");
    let c = b.object("b");
    b.morphism("f", a, c);
    b.build()
}

/// The poset 0 < 1 < ... < n-1 viewed as a category.
pub fn chain(n: usize) -> FinCategory {
    let mut b = CategoryBuilder::new(format!("chain{n}"));
    let objs: Vec<ObjId> = (0..n).map(|i| b.object(format!("{i}"))).collect();
    let mut mor = vec![vec![None; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            mor[i][j] = Some(b.morphism(format!("f{i}{j}"), objs[i], objs[j]));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                b.composite(mor[j][k].unwrap(), mor[i][j].unwrap(), mor[i][k].unwrap());
            }
        }
    }
    b.build()
}

/// Free category on two parallel edges a ⇉ b.
pub fn parallel_pair() -> FinCategory {
    let mut b = CategoryBuilder::new("parallel");
    let a = b.object("a");
    let c = b.object("b");
    b.morphism("f", a, c);
    b.morphism("g", a, c);
    b.build()
}

/// The group Z/2 as a one-object category.
pub fn cyclic2() -> FinCategory {
    let mut b = CategoryBuilder::new("cyclic2");
    let o = b.object("*");
    let s = b.morphism("s", o, o);
    let id = b.identity_mor(o);
    b.composite(s, s, id);
    b.build()
}

/// Two objects with a pair of mutually inverse arrows.
pub fn walking_iso() -> FinCategory {
    let mut b = CategoryBuilder::new("iso");
    let a = b.object("a");
    let c = b.object("b");
    let f = b.morphism("f", a, c);
    let g = b.morphism("g", c, a);
    let ida = b.identity_mor(a);
    let idb = b.identity_mor(c);
    b.composite(g, f, ida);
    b.composite(f, g, idb);
    b.build()
}

/// The fixed six-category suite used by the nerve harnesses:
/// all members have at most 3 objects and 7 morphisms.
pub fn suite6() -> Vec<FinCategory> {
    vec![
        terminal(),
        discrete(2),
        walking_arrow(),
        parallel_pair(),
        chain(3),
        cyclic2(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_members_are_valid_and_small() {
        for c in suite6() {
            let r = c.validate();
            assert!(r.is_clean(), "{}", r.render_text());
            assert!(c.object_count() <= 3);
            assert!(c.mor_count() <= 7);
        }
    }

    #[test]
    fn walking_iso_is_valid() {
        assert!(walking_iso().validate().is_clean());
    }
}
