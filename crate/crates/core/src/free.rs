//! Free cells over a globular set: paths in dimension 1 and interchange
//! normal forms (column diagrams) in dimension 2, together with bounded
//! enumeration, relabeling and flattening.
//!
//! A dimension-2 free cell is a horizontal string of columns; every column is
//! either a bare edge (a whisker) or a non-empty vertical stack of faces.
//! Each column spans exactly one edge position, since generating faces have
//! single parallel edges as boundaries, so vertical composition concatenates
//! stacks column by column.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::glob::{GlobMor, GlobRef, GlobSet};

/// Enumeration budget. `max_len` bounds path length, diagram width and stack
/// height; `max_cells` is a hard cap on materialized cells per dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub max_len: usize,
    pub max_cells: usize,
}

impl Default for Bound {
    fn default() -> Self {
        Bound {
            max_len: 8,
            max_cells: 200_000,
        }
    }
}

impl Bound {
    pub fn with_len(max_len: usize) -> Self {
        Bound {
            max_len,
            ..Bound::default()
        }
    }
}

/// One column of a dimension-2 free cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Edge(usize),
    /// Non-empty chain of faces composed vertically.
    Stack(Vec<usize>),
}

/// A cell of the free strict n-category on a globular set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FreeCell {
    Vertex(usize),
    Path { start: usize, edges: Vec<usize> },
    Diagram { start: usize, cols: Vec<Column> },
}

impl FreeCell {
    pub fn dim(&self) -> usize {
        match self {
            FreeCell::Vertex(_) => 0,
            FreeCell::Path { .. } => 1,
            FreeCell::Diagram { .. } => 2,
        }
    }

    /// Unit cell on the k-cell `c` of `x`.
    pub fn eta(x: &GlobSet, k: usize, c: usize) -> FreeCell {
        match k {
            0 => FreeCell::Vertex(c),
            1 => FreeCell::Path {
                start: x.src[0][c],
                edges: vec![c],
            },
            2 => FreeCell::Diagram {
                start: x.src[0][x.src[1][c]],
                cols: vec![Column::Stack(vec![c])],
            },
            _ => unreachable!("cells above dimension 2"),
        }
    }

    pub fn path_end(&self, x: &GlobSet) -> usize {
        match self {
            FreeCell::Path { start, edges } => {
                edges.last().map(|&e| x.tgt[0][e]).unwrap_or(*start)
            }
            _ => panic!("path_end on a non-path"),
        }
    }

    fn col_src_edge(x: &GlobSet, col: &Column) -> usize {
        match col {
            Column::Edge(e) => *e,
            Column::Stack(fs) => x.src[1][fs[0]],
        }
    }

    fn col_tgt_edge(x: &GlobSet, col: &Column) -> usize {
        match col {
            Column::Edge(e) => *e,
            Column::Stack(fs) => x.tgt[1][*fs.last().unwrap()],
        }
    }

    /// Globular source of a cell: a path for diagrams, a vertex for paths.
    pub fn boundary_src(&self, x: &GlobSet) -> FreeCell {
        match self {
            FreeCell::Vertex(_) => panic!("vertices have no boundary"),
            FreeCell::Path { start, .. } => FreeCell::Vertex(*start),
            FreeCell::Diagram { start, cols } => FreeCell::Path {
                start: *start,
                edges: cols.iter().map(|c| Self::col_src_edge(x, c)).collect(),
            },
        }
    }

    pub fn boundary_tgt(&self, x: &GlobSet) -> FreeCell {
        match self {
            FreeCell::Vertex(_) => panic!("vertices have no boundary"),
            FreeCell::Path { .. } => FreeCell::Vertex(self.path_end(x)),
            FreeCell::Diagram { start, cols } => FreeCell::Path {
                start: *start,
                edges: cols.iter().map(|c| Self::col_tgt_edge(x, c)).collect(),
            },
        }
    }

    /// Column profile of a diagram: stack height per column, 0 for whiskers.
    /// Paths yield all-zero profiles of their length.
    pub fn profile(&self) -> Vec<usize> {
        match self {
            FreeCell::Vertex(_) => Vec::new(),
            FreeCell::Path { edges, .. } => vec![0; edges.len()],
            FreeCell::Diagram { cols, .. } => cols
                .iter()
                .map(|c| match c {
                    Column::Edge(_) => 0,
                    Column::Stack(fs) => fs.len(),
                })
                .collect(),
        }
    }

    /// Relabels a cell along a globular map.
    pub fn relabel(&self, f: &GlobMor) -> FreeCell {
        match self {
            FreeCell::Vertex(v) => FreeCell::Vertex(f.maps[0][*v]),
            FreeCell::Path { start, edges } => FreeCell::Path {
                start: f.maps[0][*start],
                edges: edges.iter().map(|&e| f.maps[1][e]).collect(),
            },
            FreeCell::Diagram { start, cols } => FreeCell::Diagram {
                start: f.maps[0][*start],
                cols: cols
                    .iter()
                    .map(|c| match c {
                        Column::Edge(e) => Column::Edge(f.maps[1][*e]),
                        Column::Stack(fs) => {
                            Column::Stack(fs.iter().map(|&x| f.maps[2][x]).collect())
                        }
                    })
                    .collect(),
            },
        }
    }
}

/// Vertical composite of diagrams with matching boundary paths. All inputs
/// have equal width; stacks concatenate column by column.
pub fn vertical_compose(parts: &[FreeCell]) -> FreeCell {
    let first = parts.first().expect("non-empty stack of diagrams");
    let (start, width) = match first {
        FreeCell::Diagram { start, cols } => (*start, cols.len()),
        _ => panic!("vertical composition of non-diagrams"),
    };
    let mut cols = Vec::with_capacity(width);
    for j in 0..width {
        let mut fused: Vec<usize> = Vec::new();
        let mut edge = None;
        for p in parts {
            let pcols = match p {
                FreeCell::Diagram { cols, .. } => cols,
                _ => unreachable!(),
            };
            match &pcols[j] {
                Column::Edge(e) => edge = Some(*e),
                Column::Stack(fs) => fused.extend_from_slice(fs),
            }
        }
        if fused.is_empty() {
            cols.push(Column::Edge(edge.expect("whisker column carries its edge")));
        } else {
            cols.push(Column::Stack(fused));
        }
    }
    FreeCell::Diagram { start, cols }
}

/// Flattens a free cell over free cells: `cell` lives over a globular set
/// whose k-cells resolve to free cells over the final base. This is both the
/// multiplication of the free monads and Kleisli substitution.
pub fn flatten(
    cell: &FreeCell,
    resolve_vertex: &dyn Fn(usize) -> usize,
    resolve_edge: &dyn Fn(usize) -> FreeCell,
    resolve_face: &dyn Fn(usize) -> FreeCell,
) -> FreeCell {
    match cell {
        FreeCell::Vertex(v) => FreeCell::Vertex(resolve_vertex(*v)),
        FreeCell::Path { start, edges } => {
            let mut out = Vec::new();
            for &e in edges {
                match resolve_edge(e) {
                    FreeCell::Path { edges: es, .. } => out.extend(es),
                    _ => panic!("edge resolved to a non-path"),
                }
            }
            FreeCell::Path {
                start: resolve_vertex(*start),
                edges: out,
            }
        }
        FreeCell::Diagram { start, cols } => {
            let mut out = Vec::new();
            for col in cols {
                match col {
                    Column::Edge(e) => match resolve_edge(*e) {
                        FreeCell::Path { edges: es, .. } => {
                            out.extend(es.into_iter().map(Column::Edge))
                        }
                        _ => panic!("edge resolved to a non-path"),
                    },
                    Column::Stack(fs) => {
                        let parts: Vec<FreeCell> = fs.iter().map(|&f| resolve_face(f)).collect();
                        match vertical_compose(&parts) {
                            FreeCell::Diagram { cols: cs, .. } => out.extend(cs),
                            _ => unreachable!(),
                        }
                    }
                }
            }
            FreeCell::Diagram {
                start: resolve_vertex(*start),
                cols: out,
            }
        }
    }
}

/// A materialized free object T(x): the underlying globular set, the free
/// cells in canonical order and the reverse index.
#[derive(Debug, Clone)]
pub struct FreeObj {
    pub base: GlobRef,
    pub glob: GlobRef,
    pub cells: Vec<Vec<FreeCell>>,
    pub index: Vec<HashMap<FreeCell, usize>>,
    pub complete: bool,
}

impl FreeObj {
    pub fn cell_index(&self, cell: &FreeCell) -> Result<usize> {
        self.index[cell.dim()]
            .get(cell)
            .copied()
            .ok_or_else(|| Error::bound("free cell outside the materialized bound", self.cells[cell.dim()].len()))
    }
}

fn enumerate_paths(x: &GlobSet, bound: &Bound, soft: bool) -> Result<(Vec<FreeCell>, bool)> {
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); x.sizes[0]];
    if x.dim >= 1 {
        for e in 0..x.sizes[1] {
            out_edges[x.src[0][e]].push(e);
        }
    }
    let mut cells: Vec<FreeCell> = Vec::new();
    let mut frontier: Vec<(usize, Vec<usize>)> = (0..x.sizes[0]).map(|v| (v, Vec::new())).collect();
    for (v, es) in &frontier {
        cells.push(FreeCell::Path {
            start: *v,
            edges: es.clone(),
        });
    }
    let mut complete = true;
    let mut len = 0usize;
    while !frontier.is_empty() {
        if len == bound.max_len {
            // anything left to extend?
            let extensible = frontier.iter().any(|(start, es)| {
                let end = es.last().map(|&e| x.tgt[0][e]).unwrap_or(*start);
                !out_edges[end].is_empty()
            });
            if extensible {
                complete = false;
            }
            break;
        }
        let mut next = Vec::new();
        for (start, es) in &frontier {
            let end = es.last().map(|&e| x.tgt[0][e]).unwrap_or(*start);
            for &e in &out_edges[end] {
                let mut es2 = es.clone();
                es2.push(e);
                next.push((*start, es2));
            }
        }
        for (v, es) in &next {
            if cells.len() >= bound.max_cells {
                if soft {
                    return Ok((cells, false));
                }
                return Err(Error::bound("path enumeration", bound.max_cells));
            }
            cells.push(FreeCell::Path {
                start: *v,
                edges: es.clone(),
            });
        }
        frontier = next;
        len += 1;
    }
    Ok((cells, complete))
}

fn enumerate_diagrams(x: &GlobSet, bound: &Bound, soft: bool) -> Result<(Vec<FreeCell>, bool)> {
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); x.sizes[0]];
    for e in 0..x.sizes[1] {
        out_edges[x.src[0][e]].push(e);
    }
    let mut faces_on: Vec<Vec<usize>> = vec![Vec::new(); x.sizes[1]];
    if x.dim >= 2 {
        for f in 0..x.sizes[2] {
            faces_on[x.src[1][f]].push(f);
        }
    }

    struct St<'a> {
        x: &'a GlobSet,
        out_edges: &'a [Vec<usize>],
        faces_on: &'a [Vec<usize>],
        bound: Bound,
        soft: bool,
        cells: Vec<FreeCell>,
        complete: bool,
    }

    struct Full;

    impl<'a> St<'a> {
        fn emit(&mut self, start: usize, cols: &[Column]) -> Result<std::result::Result<(), Full>> {
            if self.cells.len() >= self.bound.max_cells {
                if self.soft {
                    self.complete = false;
                    return Ok(Err(Full));
                }
                return Err(Error::bound("diagram enumeration", self.bound.max_cells));
            }
            self.cells.push(FreeCell::Diagram {
                start,
                cols: cols.to_vec(),
            });
            Ok(Ok(()))
        }

        fn extend(&mut self, start: usize, at: usize, cols: &mut Vec<Column>) -> Result<std::result::Result<(), Full>> {
            if self.emit(start, cols)?.is_err() {
                return Ok(Err(Full));
            }
            let x = self.x;
            let out_edges = self.out_edges;
            let faces_on = self.faces_on;
            let can_extend = !out_edges[at].is_empty();
            if cols.len() == self.bound.max_len {
                if can_extend {
                    self.complete = false;
                }
                return Ok(Ok(()));
            }
            for &e in &out_edges[at] {
                let next = x.tgt[0][e];
                cols.push(Column::Edge(e));
                let r = self.extend(start, next, cols)?;
                cols.pop();
                if r.is_err() {
                    return Ok(Err(Full));
                }
                for &f in &faces_on[e] {
                    let mut stack = vec![f];
                    if self.grow_stack(start, next, cols, &mut stack)?.is_err() {
                        return Ok(Err(Full));
                    }
                }
            }
            Ok(Ok(()))
        }

        fn grow_stack(
            &mut self,
            start: usize,
            next: usize,
            cols: &mut Vec<Column>,
            stack: &mut Vec<usize>,
        ) -> Result<std::result::Result<(), Full>> {
            cols.push(Column::Stack(stack.clone()));
            let r = self.extend(start, next, cols)?;
            cols.pop();
            if r.is_err() {
                return Ok(Err(Full));
            }
            let x = self.x;
            let faces_on = self.faces_on;
            let top_edge = x.tgt[1][*stack.last().unwrap()];
            let can_grow = !faces_on[top_edge].is_empty();
            if stack.len() == self.bound.max_len {
                if can_grow {
                    self.complete = false;
                }
                return Ok(Ok(()));
            }
            for &f2 in &faces_on[top_edge] {
                stack.push(f2);
                let r = self.grow_stack(start, next, cols, stack)?;
                stack.pop();
                if r.is_err() {
                    return Ok(Err(Full));
                }
            }
            Ok(Ok(()))
        }
    }

    let mut st = St {
        x,
        out_edges: &out_edges,
        faces_on: &faces_on,
        bound: *bound,
        soft,
        cells: Vec::new(),
        complete: true,
    };
    'outer: for v in 0..x.sizes[0] {
        let mut cols = Vec::new();
        if st.extend(v, v, &mut cols)?.is_err() {
            break 'outer;
        }
    }
    Ok((st.cells, st.complete))
}

/// Materializes the free object at `out_dim` over `x` (paths at dimension 1,
/// paths and diagrams at dimension 2). Exceeding `max_cells` is an error.
pub fn free_obj(x: &GlobRef, out_dim: usize, bound: &Bound) -> Result<FreeObj> {
    free_obj_inner(x, out_dim, bound, false)
}

/// Like [`free_obj`] but truncates at `max_cells` instead of erroring; the
/// result is the canonical prefix of the enumeration with `complete = false`.
pub fn free_obj_slice(x: &GlobRef, out_dim: usize, bound: &Bound) -> Result<FreeObj> {
    free_obj_inner(x, out_dim, bound, true)
}

fn free_obj_inner(x: &GlobRef, out_dim: usize, bound: &Bound, soft: bool) -> Result<FreeObj> {
    assert!(out_dim >= 1 && out_dim <= 2);
    let mut cells: Vec<Vec<FreeCell>> = Vec::with_capacity(out_dim + 1);
    cells.push((0..x.sizes[0]).map(FreeCell::Vertex).collect());
    let (paths, paths_complete) = enumerate_paths(x, bound, soft)?;
    cells.push(paths);
    let mut complete = paths_complete;
    if out_dim == 2 {
        let (diagrams, diag_complete) = enumerate_diagrams(x, bound, soft)?;
        complete = complete && diag_complete;
        cells.push(diagrams);
    }
    let mut index: Vec<HashMap<FreeCell, usize>> = cells
        .iter()
        .map(|cs| {
            cs.iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect()
        })
        .collect();

    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for k in 1..=out_dim {
        let mut s = Vec::with_capacity(cells[k].len());
        let mut t = Vec::with_capacity(cells[k].len());
        let mut kept = Vec::with_capacity(cells[k].len());
        for c in &cells[k] {
            let bs = c.boundary_src(x);
            let bt = c.boundary_tgt(x);
            let si = index[k - 1].get(&bs).copied();
            let ti = index[k - 1].get(&bt).copied();
            match (si, ti) {
                (Some(si), Some(ti)) => {
                    s.push(si);
                    t.push(ti);
                    kept.push(c.clone());
                }
                _ if soft => {
                    // truncated lower level: drop the cell from the slice
                    complete = false;
                }
                _ => {
                    return Err(Error::bound(
                        "free object boundaries escaped the enumeration bound",
                        bound.max_cells,
                    ))
                }
            }
        }
        if kept.len() != cells[k].len() {
            cells[k] = kept;
            index[k] = cells[k]
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect();
        }
        src.push(s);
        tgt.push(t);
    }
    let glob = GlobSet {
        dim: out_dim,
        sizes: cells.iter().map(|cs| cs.len()).collect(),
        src,
        tgt,
    };
    debug_assert!(glob.validate().is_clean());
    Ok(FreeObj {
        base: Arc::clone(x),
        glob: Arc::new(glob),
        cells,
        index,
        complete,
    })
}

/// Flattening against a materialized middle layer: `cell` lives over
/// `mid.glob` and resolves through `mid`'s own free cells.
pub fn flatten_through(cell: &FreeCell, mid: &FreeObj) -> FreeCell {
    flatten(
        cell,
        &|v| match &mid.cells[0][v] {
            FreeCell::Vertex(w) => *w,
            _ => unreachable!(),
        },
        &|e| mid.cells[1][e].clone(),
        &|f| mid.cells[2][f].clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn globe2() -> GlobRef {
        Arc::new(GlobSet::globe(2, 2))
    }

    #[test]
    fn free_on_single_two_globe_has_expected_cell_counts() {
        let t = free_obj(&globe2(), 2, &Bound::default()).unwrap();
        assert!(t.complete);
        assert_eq!(t.glob.sizes, vec![2, 4, 5]);
    }

    #[test]
    fn free_on_linear_graph_counts_paths() {
        let x = Arc::new(GlobSet::linear(2, 1));
        let t = free_obj(&x, 1, &Bound::default()).unwrap();
        assert!(t.complete);
        // pairs i <= j
        assert_eq!(t.glob.sizes[1], 6);
    }

    #[test]
    fn loops_truncate_with_a_flag() {
        let mut g = GlobSet::empty(1);
        g.sizes[0] = 1;
        g.sizes[1] = 1;
        g.src[0] = vec![0];
        g.tgt[0] = vec![0];
        let x = Arc::new(g);
        let t = free_obj(&x, 1, &Bound::with_len(3)).unwrap();
        assert!(!t.complete);
        // lengths 0..=3
        assert_eq!(t.glob.sizes[1], 4);
    }

    #[test]
    fn vertical_pair_classifier_admits_one_two_column_stack() {
        let x = Arc::new(GlobSet::vertical_pair());
        let t = free_obj(&x, 2, &Bound::default()).unwrap();
        assert!(t.complete);
        // the stack [f0, f1] appears as a single-column diagram
        let has_double = t.cells[2].iter().any(|c| matches!(
            c,
            FreeCell::Diagram { cols, .. }
                if cols.len() == 1 && matches!(&cols[0], Column::Stack(s) if s.len() == 2)
        ));
        assert!(has_double);
    }

    #[test]
    fn flatten_concatenates_paths() {
        let x = Arc::new(GlobSet::linear(2, 1));
        let tx = free_obj(&x, 1, &Bound::default()).unwrap();
        // a path of length 2 over T(x): [e01-as-path, e12-as-path]
        let p0 = tx.cell_index(&FreeCell::Path { start: 0, edges: vec![0] }).unwrap();
        let p1 = tx.cell_index(&FreeCell::Path { start: 1, edges: vec![1] }).unwrap();
        let outer = FreeCell::Path { start: 0, edges: vec![p0, p1] };
        let flat = flatten_through(&outer, &tx);
        assert_eq!(flat, FreeCell::Path { start: 0, edges: vec![0, 1] });
    }
}
