//! Truncated globular sets (dimension ≤ 2) and their morphisms.
//!
//! A graph is the dimension-1 case. Cells are anonymous indices; display
//! names like `v0`, `e3`, `f1` are derived on demand.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Report;

/// Finite globular set truncated at `dim` (0, 1 or 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlobSet {
    pub dim: usize,
    /// sizes[k] = number of k-cells; length dim+1.
    pub sizes: Vec<usize>,
    /// src[k][c] = source (k)-cell of the (k+1)-cell c; length dim.
    pub src: Vec<Vec<usize>>,
    pub tgt: Vec<Vec<usize>>,
}

pub type GlobRef = Arc<GlobSet>;

impl GlobSet {
    pub fn new(dim: usize, sizes: Vec<usize>, src: Vec<Vec<usize>>, tgt: Vec<Vec<usize>>) -> Result<Self> {
        let g = GlobSet { dim, sizes, src, tgt };
        let r = g.validate();
        if !r.is_clean() {
            return Err(Error::malformed(format!(
                "invalid globular set: {}",
                r.violations[0].witness
            )));
        }
        Ok(g)
    }

    pub fn cells(&self, k: usize) -> usize {
        if k <= self.dim {
            self.sizes[k]
        } else {
            0
        }
    }

    pub fn total_cells(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_cells() == 0
    }

    pub fn cell_name(k: usize, c: usize) -> String {
        let prefix = ["v", "e", "f"][k.min(2)];
        format!("{prefix}{c}")
    }

    /// Shape sanity plus the globular identities ss = st and ts = tt.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("globular set");
        if self.sizes.len() != self.dim + 1
            || self.src.len() != self.dim
            || self.tgt.len() != self.dim
        {
            report.push("shape", "level tables do not match the dimension");
            return report;
        }
        for k in 0..self.dim {
            if self.src[k].len() != self.sizes[k + 1] || self.tgt[k].len() != self.sizes[k + 1] {
                report.push("shape", format!("boundary tables at level {k} are incomplete"));
                return report;
            }
            for c in 0..self.sizes[k + 1] {
                report.check(
                    "boundary-range",
                    || format!("{} has out-of-range boundary", Self::cell_name(k + 1, c)),
                    self.src[k][c] < self.sizes[k] && self.tgt[k][c] < self.sizes[k],
                );
            }
        }
        if !report.is_clean() {
            return report;
        }
        if self.dim >= 2 {
            for c in 0..self.sizes[2] {
                let (s, t) = (self.src[1][c], self.tgt[1][c]);
                report.check(
                    "globularity-src",
                    || format!("ss != st at {}", Self::cell_name(2, c)),
                    self.src[0][s] == self.src[0][t],
                );
                report.check(
                    "globularity-tgt",
                    || format!("ts != tt at {}", Self::cell_name(2, c)),
                    self.tgt[0][s] == self.tgt[0][t],
                );
            }
        }
        report
    }

    pub fn empty(dim: usize) -> GlobSet {
        GlobSet {
            dim,
            sizes: vec![0; dim + 1],
            src: vec![Vec::new(); dim],
            tgt: vec![Vec::new(); dim],
        }
    }

    /// The linear graph [n]: n+1 vertices and n consecutive edges, viewed at
    /// the requested dimension (no higher cells).
    pub fn linear(n: usize, dim: usize) -> GlobSet {
        let mut sizes = vec![0; dim + 1];
        sizes[0] = n + 1;
        if dim >= 1 {
            sizes[1] = n;
        }
        let mut src = vec![Vec::new(); dim];
        let mut tgt = vec![Vec::new(); dim];
        if dim >= 1 {
            src[0] = (0..n).collect();
            tgt[0] = (1..=n).collect();
        }
        GlobSet { dim, sizes, src, tgt }
    }

    /// The d-globe at ambient dimension `dim` (d ≤ dim ≤ 2).
    pub fn globe(d: usize, dim: usize) -> GlobSet {
        let mut g = GlobSet::empty(dim);
        match d {
            0 => {
                g.sizes[0] = 1;
            }
            1 => {
                g.sizes[0] = 2;
                g.sizes[1] = 1;
                g.src[0] = vec![0];
                g.tgt[0] = vec![1];
            }
            2 => {
                g.sizes[0] = 2;
                g.sizes[1] = 2;
                g.sizes[2] = 1;
                g.src[0] = vec![0, 0];
                g.tgt[0] = vec![1, 1];
                g.src[1] = vec![0];
                g.tgt[1] = vec![1];
            }
            _ => panic!("globes exist only up to dimension 2 here"),
        }
        g
    }

    /// Two vertices with n parallel edges between them.
    pub fn parallel_edges(n: usize, dim: usize) -> GlobSet {
        let mut g = GlobSet::empty(dim);
        g.sizes[0] = 2;
        g.sizes[1] = n;
        g.src[0] = vec![0; n];
        g.tgt[0] = vec![1; n];
        g
    }

    /// Two parallel edges with n parallel faces between them.
    pub fn parallel_faces(n: usize) -> GlobSet {
        let mut g = GlobSet::parallel_edges(2, 2);
        g.sizes[2] = n;
        g.src[1] = vec![0; n];
        g.tgt[1] = vec![1; n];
        g
    }

    /// Classifier of a vertically composable pair of faces:
    /// two vertices, three parallel edges, faces e0 ⇒ e1 and e1 ⇒ e2.
    pub fn vertical_pair() -> GlobSet {
        let mut g = GlobSet::parallel_edges(3, 2);
        g.sizes[2] = 2;
        g.src[1] = vec![0, 1];
        g.tgt[1] = vec![1, 2];
        g
    }

    /// One cell in every dimension, boundaries collapsed.
    pub fn terminal(dim: usize) -> GlobSet {
        GlobSet {
            dim,
            sizes: vec![1; dim + 1],
            src: vec![vec![0]; dim],
            tgt: vec![vec![0]; dim],
        }
    }

    /// Disjoint union; cells of `b` are shifted past those of `a`.
    pub fn coproduct(a: &GlobSet, b: &GlobSet) -> GlobSet {
        assert_eq!(a.dim, b.dim, "coproduct needs a common dimension");
        let dim = a.dim;
        let sizes = (0..=dim).map(|k| a.sizes[k] + b.sizes[k]).collect();
        let shift = |k: usize, table_a: &[usize], table_b: &[usize]| -> Vec<usize> {
            table_a
                .iter()
                .copied()
                .chain(table_b.iter().map(|&c| c + a.sizes[k]))
                .collect()
        };
        GlobSet {
            dim,
            sizes,
            src: (0..dim).map(|k| shift(k, &a.src[k], &b.src[k])).collect(),
            tgt: (0..dim).map(|k| shift(k, &a.tgt[k], &b.tgt[k])).collect(),
        }
    }
}

/// A map of globular sets: per-dimension cell maps commuting with boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlobMor {
    pub dom: GlobRef,
    pub cod: GlobRef,
    pub maps: Vec<Vec<usize>>,
}

impl GlobMor {
    pub fn identity(x: &GlobRef) -> GlobMor {
        GlobMor {
            dom: Arc::clone(x),
            cod: Arc::clone(x),
            maps: (0..=x.dim).map(|k| (0..x.sizes[k]).collect()).collect(),
        }
    }

    pub fn from_empty(x: &GlobRef) -> GlobMor {
        GlobMor {
            dom: Arc::new(GlobSet::empty(x.dim)),
            cod: Arc::clone(x),
            maps: vec![Vec::new(); x.dim + 1],
        }
    }

    pub fn on(&self, k: usize, c: usize) -> usize {
        self.maps[k][c]
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("globular map");
        for k in 0..=self.dom.dim {
            if self.maps.len() <= k || self.maps[k].len() != self.dom.sizes[k] {
                report.push("shape", format!("map table at level {k} is incomplete"));
                return report;
            }
            for c in 0..self.dom.sizes[k] {
                report.check(
                    "range",
                    || format!("{} maps out of range", GlobSet::cell_name(k, c)),
                    self.maps[k][c] < self.cod.sizes[k],
                );
            }
        }
        if !report.is_clean() {
            return report;
        }
        for k in 0..self.dom.dim {
            for c in 0..self.dom.sizes[k + 1] {
                let ok_src = self.maps[k][self.dom.src[k][c]] == self.cod.src[k][self.maps[k + 1][c]];
                let ok_tgt = self.maps[k][self.dom.tgt[k][c]] == self.cod.tgt[k][self.maps[k + 1][c]];
                report.check(
                    "boundary-commutes",
                    || format!("at {}", GlobSet::cell_name(k + 1, c)),
                    ok_src && ok_tgt,
                );
            }
        }
        report
    }

    /// g∘f with a structural domain/codomain check.
    pub fn compose(g: &GlobMor, f: &GlobMor) -> Result<GlobMor> {
        if !same_glob(&f.cod, &g.dom) {
            return Err(Error::BaseMismatch("globular map composition".into()));
        }
        Ok(GlobMor {
            dom: Arc::clone(&f.dom),
            cod: Arc::clone(&g.cod),
            maps: f
                .maps
                .iter()
                .enumerate()
                .map(|(k, col)| col.iter().map(|&c| g.maps[k][c]).collect())
                .collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        (0..=self.dom.dim).all(|k| {
            if self.dom.sizes[k] != self.cod.sizes[k] {
                return false;
            }
            let mut seen = vec![false; self.cod.sizes[k]];
            for &c in &self.maps[k] {
                if seen[c] {
                    return false;
                }
                seen[c] = true;
            }
            true
        })
    }
}

pub fn same_glob(a: &GlobRef, b: &GlobRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// All globular maps x -> y in lexicographic order of the flattened
/// assignment (dimension-major). Errors out past `limit` results.
pub fn hom_globs(x: &GlobRef, y: &GlobRef, limit: usize) -> Result<Vec<GlobMor>> {
    assert_eq!(x.dim, y.dim, "hom between globular sets of equal dimension");
    let dim = x.dim;

    // candidate index: (k, src, tgt) -> k-cells of y with those boundaries
    let mut by_boundary: Vec<HashMap<(usize, usize), Vec<usize>>> = vec![HashMap::new(); dim];
    for k in 0..dim {
        for c in 0..y.sizes[k + 1] {
            by_boundary[k]
                .entry((y.src[k][c], y.tgt[k][c]))
                .or_default()
                .push(c);
        }
    }

    let mut maps: Vec<Vec<usize>> = (0..=dim).map(|k| vec![0; x.sizes[k]]).collect();
    let mut out = Vec::new();
    let slots: Vec<(usize, usize)> = (0..=dim)
        .flat_map(|k| (0..x.sizes[k]).map(move |c| (k, c)))
        .collect();

    fn rec(
        x: &GlobSet,
        y: &GlobSet,
        by_boundary: &[HashMap<(usize, usize), Vec<usize>>],
        slots: &[(usize, usize)],
        maps: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        depth: usize,
        limit: usize,
    ) -> Result<()> {
        if depth == slots.len() {
            if out.len() >= limit {
                return Err(Error::bound("globular hom enumeration", limit));
            }
            out.push(maps.clone());
            return Ok(());
        }
        let (k, c) = slots[depth];
        if k == 0 {
            for img in 0..y.sizes[0] {
                maps[0][c] = img;
                rec(x, y, by_boundary, slots, maps, out, depth + 1, limit)?;
            }
        } else {
            let key = (maps[k - 1][x.src[k - 1][c]], maps[k - 1][x.tgt[k - 1][c]]);
            if let Some(cands) = by_boundary[k - 1].get(&key) {
                for &img in cands {
                    maps[k][c] = img;
                    rec(x, y, by_boundary, slots, maps, out, depth + 1, limit)?;
                }
            }
        }
        Ok(())
    }

    let mut raw = Vec::new();
    rec(x, y, &by_boundary, &slots, &mut maps, &mut raw, 0, limit)?;
    for m in raw {
        out.push(GlobMor {
            dom: Arc::clone(x),
            cod: Arc::clone(y),
            maps: m,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_are_globular() {
        for g in [
            GlobSet::empty(2),
            GlobSet::linear(3, 1),
            GlobSet::globe(2, 2),
            GlobSet::parallel_faces(2),
            GlobSet::vertical_pair(),
            GlobSet::terminal(2),
        ] {
            let r = g.validate();
            assert!(r.is_clean(), "{}", r.render_text());
        }
    }

    #[test]
    fn hom_counts_on_linear_graphs() {
        // graph maps [m] -> [n] shift the path: n-m+1 of them for m <= n
        let x = Arc::new(GlobSet::linear(1, 1));
        let y = Arc::new(GlobSet::linear(3, 1));
        assert_eq!(hom_globs(&x, &y, 1000).unwrap().len(), 3);
        assert_eq!(hom_globs(&y, &x, 1000).unwrap().len(), 0);
        // and exactly one endomorphism of [1]
        assert_eq!(hom_globs(&x, &x, 1000).unwrap().len(), 1);
    }

    #[test]
    fn hom_enumeration_is_bounded() {
        let x = Arc::new(GlobSet::parallel_edges(2, 1));
        let y = Arc::new(GlobSet::parallel_edges(3, 1));
        let err = hom_globs(&x, &y, 2).unwrap_err();
        assert!(err.is_bound_exhausted());
    }

    #[test]
    fn coproduct_preserves_validity_and_counts() {
        let a = GlobSet::globe(2, 2);
        let b = GlobSet::linear(2, 2);
        let c = GlobSet::coproduct(&a, &b);
        assert!(c.validate().is_clean());
        assert_eq!(c.sizes, vec![5, 4, 1]);
    }

    #[test]
    fn composition_checks_boundaries() {
        let x = Arc::new(GlobSet::linear(1, 1));
        let y = Arc::new(GlobSet::linear(2, 1));
        let maps = hom_globs(&x, &y, 100).unwrap();
        for f in &maps {
            assert!(f.validate().is_clean());
            let id = GlobMor::identity(&y);
            let c = GlobMor::compose(&id, f).unwrap();
            assert_eq!(c.maps, f.maps);
        }
    }
}
