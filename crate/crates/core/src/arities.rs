//! Arity assignments: a finite dense subcategory inside an ambient category,
//! with the density checker, the left Kan comparison for monads with arities
//! and the exactness (mate) condition for morphisms of such assignments.

use std::collections::HashMap;
use std::sync::Arc;

use crate::effcat::{same_obj, EffCat, Mor, Obj};
use crate::error::{Error, Result};
use crate::fincat::{
    nat_transformations, CatRef, CategoryBuilder, FinCategory, FinFunctor, FinPresheaf, MorId,
    ObjId, SetDiagram,
};
use crate::glob::GlobSet;
use crate::monad::{EffFunctor, MonadDescription};
use crate::par;
use crate::report::Report;

/// Designated generator arities of one color: the d-globes and their
/// source/target inclusions, used by Segal reconstruction.
#[derive(Debug, Clone)]
pub struct ColorGenerators {
    /// globes[d] = arity object index of the d-globe.
    pub globes: Vec<usize>,
    /// src_incl[d-1] : globe_{d-1} -> globe_d picking the source boundary.
    pub src_incl: Vec<MorId>,
    pub tgt_incl: Vec<MorId>,
}

/// A finite full subcategory of arities inside an ambient category.
#[derive(Debug, Clone)]
pub struct ArityAssignment {
    pub key: String,
    pub ambient: EffCat,
    pub object_names: Vec<String>,
    /// i₀ on objects.
    pub objects: Vec<Obj>,
    pub theta0: CatRef,
    /// i₀ on morphisms, indexed by the morphism ids of `theta0`.
    pub i0_mor: Vec<Mor>,
    /// hom-set offsets: morphism ids of theta0 hom(s,t) start at offset[s][t].
    pub offsets: Vec<Vec<usize>>,
    pub generators: Vec<ColorGenerators>,
    /// cell_inclusions[s][color][dim][cell]: the theta0 morphism from the
    /// matching globe into object s that hits the cell.
    pub cell_inclusions: Vec<Vec<Vec<Vec<MorId>>>>,
    /// hom-enumeration cap inherited from the construction.
    pub limit: usize,
}

/// Assembles a finite category from externally enumerated hom-sets.
pub(crate) fn assemble_category<M, E>(
    name: &str,
    object_names: &[String],
    homs: &[Vec<Vec<M>>],
    identity_of: impl Fn(usize) -> Result<M>,
    compose: E,
) -> Result<(FinCategory, Vec<M>, Vec<Vec<usize>>)>
where
    M: Clone + Eq + std::hash::Hash + Send + Sync,
    E: Fn(usize, usize, usize, &M, &M) -> Result<M> + Sync,
{
    let n = object_names.len();
    let mut builder = CategoryBuilder::new(name);
    let objs: Vec<_> = object_names
        .iter()
        .map(|nm| builder.object(nm.clone()))
        .collect();

    let mut flat: Vec<M> = Vec::new();
    let mut offsets = vec![vec![0usize; n]; n];
    let mut mor_ids = Vec::new();
    for s in 0..n {
        for t in 0..n {
            offsets[s][t] = flat.len();
            for m in &homs[s][t] {
                let mid = builder.morphism(format!("m{}", flat.len()), objs[s], objs[t]);
                mor_ids.push(mid);
                flat.push(m.clone());
            }
        }
    }
    for s in 0..n {
        let id = identity_of(s)?;
        let local = homs[s][s]
            .iter()
            .position(|m| *m == id)
            .ok_or_else(|| Error::malformed("identity missing from enumerated hom-set"))?;
        builder.set_identity(objs[s], mor_ids[offsets[s][s] + local]);
    }
    // reverse index per pair for composite lookup
    let mut index: Vec<HashMap<&M, usize>> = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let mut h = HashMap::new();
            for (k, m) in homs[s][t].iter().enumerate() {
                h.insert(m, k);
            }
            index.push(h);
        }
    }

    // composition table, computed in parallel per (s,t,u) block
    let blocks: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|s| (0..n).flat_map(move |t| (0..n).map(move |u| (s, t, u))))
        .collect();
    let tables: Vec<Result<Vec<(usize, usize, usize)>>> = par::map_vec(&blocks, |&(s, t, u)| {
        let mut entries = Vec::new();
        for (gi, g) in homs[t][u].iter().enumerate() {
            for (fi, f) in homs[s][t].iter().enumerate() {
                let c = compose(s, t, u, g, f)?;
                let ci = *index[s * n + u]
                    .get(&c)
                    .ok_or_else(|| Error::malformed("composite escaped the enumerated hom-set"))?;
                entries.push((
                    offsets[t][u] + gi,
                    offsets[s][t] + fi,
                    offsets[s][u] + ci,
                ));
            }
        }
        Ok(entries)
    });
    for block in tables {
        for (g, f, c) in block? {
            builder.composite(mor_ids[g], mor_ids[f], mor_ids[c]);
        }
    }
    Ok((builder.build(), flat, offsets))
}

impl ArityAssignment {
    /// Builds the full subcategory on the given ambient objects, locating the
    /// generator globes and the per-cell inclusion morphisms.
    pub fn full_subcategory(
        key: impl Into<String>,
        ambient: EffCat,
        objects: Vec<Obj>,
        object_names: Vec<String>,
        globe_indices: Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<ArityAssignment> {
        let key = key.into();
        let n = objects.len();
        let mut homs: Vec<Vec<Vec<Mor>>> = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                homs[s][t] = ambient.hom(&objects[s], &objects[t], limit)?;
            }
        }
        let (theta0, i0_mor, offsets) = assemble_category(
            &format!("theta0-{key}"),
            &object_names,
            &homs,
            |s| ambient.identity(&objects[s]),
            |_, _, _, g, f| ambient.compose(g, f),
        )?;
        let theta0 = Arc::new(theta0);

        // generator inclusions: the boundary maps between consecutive globes.
        // The d-globe has a unique top cell (index 0); its source and target
        // (d-1)-cells are indexed 0 and 1.
        let dim = ambient.dim();
        let mut generators = Vec::new();
        for (color, globes) in globe_indices.iter().enumerate() {
            let mut src_incl = Vec::new();
            let mut tgt_incl = Vec::new();
            for d in 1..=dim {
                let (lo, hi) = (globes[d - 1], globes[d]);
                let hom = &homs[lo][hi];
                let mut src = None;
                let mut tgt = None;
                for (k, m) in hom.iter().enumerate() {
                    let maps = color_maps(m, color)?;
                    if maps[d - 1][0] == 0 {
                        src = Some(MorId(offsets[lo][hi] + k));
                    }
                    if maps[d - 1][0] == 1 {
                        tgt = Some(MorId(offsets[lo][hi] + k));
                    }
                }
                src_incl.push(src.ok_or_else(|| Error::malformed("missing source inclusion"))?);
                tgt_incl.push(tgt.ok_or_else(|| Error::malformed("missing target inclusion"))?);
            }
            generators.push(ColorGenerators {
                globes: globes.clone(),
                src_incl,
                tgt_incl,
            });
        }

        // per-cell characteristic inclusions from the globes
        let colors = generators.len();
        let mut cell_inclusions: Vec<Vec<Vec<Vec<MorId>>>> = Vec::with_capacity(n);
        for s in 0..n {
            let mut per_color = Vec::with_capacity(colors);
            for (color, gens) in generators.iter().enumerate() {
                let sizes = color_sizes(&objects[s], color)?;
                let mut per_dim = Vec::with_capacity(dim + 1);
                for (d, &count) in sizes.iter().enumerate() {
                    let mut per_cell = vec![None; count];
                    let globe = gens.globes[d];
                    for (k, m) in homs[globe][s].iter().enumerate() {
                        let maps = color_maps(m, color)?;
                        if maps[d].is_empty() {
                            continue;
                        }
                        let hit = maps[d][0];
                        if per_cell[hit].is_some() {
                            return Err(Error::malformed(
                                "ambiguous characteristic inclusion for a cell",
                            ));
                        }
                        per_cell[hit] = Some(MorId(offsets[globe][s] + k));
                    }
                    let per_cell: Option<Vec<MorId>> = per_cell.into_iter().collect();
                    per_dim.push(per_cell.ok_or_else(|| {
                        Error::malformed("a cell is not reachable from the generator globes")
                    })?);
                }
                per_color.push(per_dim);
            }
            cell_inclusions.push(per_color);
        }

        Ok(ArityAssignment {
            key,
            ambient,
            object_names,
            objects,
            theta0,
            i0_mor,
            offsets,
            generators,
            cell_inclusions,
            limit,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// The presheaf hom(i₀ −, x) on theta0.
    pub fn hom_presheaf(&self, x: &Obj) -> Result<FinPresheaf> {
        let n = self.object_count();
        let mut values: Vec<Vec<Mor>> = Vec::with_capacity(n);
        for s in 0..n {
            values.push(self.ambient.hom(&self.objects[s], x, self.limit)?);
        }
        let mut action = Vec::with_capacity(self.theta0.mor_count());
        for m in self.theta0.morphisms() {
            let s = self.theta0.src(m).0;
            let t = self.theta0.tgt(m).0;
            let im = &self.i0_mor[m.0];
            let mut col = Vec::with_capacity(values[t].len());
            for g in &values[t] {
                let composed = self.ambient.compose(g, im)?;
                let pos = values[s]
                    .iter()
                    .position(|h| *h == composed)
                    .ok_or_else(|| Error::malformed("precomposite escaped the hom-set"))?;
                col.push(pos);
            }
            action.push(col);
        }
        Ok(FinPresheaf {
            base: Arc::clone(&self.theta0),
            values: values
                .iter()
                .map(|hs| (0..hs.len()).map(|i| format!("x{i}")).collect())
                .collect(),
            action,
        })
    }

    /// Sanity of the stored interpretation: i₀ preserves identities and all
    /// composites of theta0 (full faithfulness holds by construction, since
    /// the hom-sets are the ambient ones).
    pub fn validate(&self) -> Result<Report> {
        let mut report = Report::new(format!("arity assignment `{}`", self.key));
        for s in 0..self.object_count() {
            let id = self.theta0.identity(ObjId(s));
            report.check(
                "identity-interpretation",
                || format!("at {}", self.object_names[s]),
                self.i0_mor[id.0] == self.ambient.identity(&self.objects[s])?,
            );
        }
        for (&(g, f), &gf) in self.theta0.composition_entries() {
            let composed = self
                .ambient
                .compose(&self.i0_mor[g.0], &self.i0_mor[f.0])?;
            report.check(
                "composition-interpretation",
                || format!("{} . {}", self.theta0.mor_name(g), self.theta0.mor_name(f)),
                composed == self.i0_mor[gf.0],
            );
        }
        Ok(report)
    }
}

fn color_maps(m: &Mor, color: usize) -> Result<&Vec<Vec<usize>>> {
    match (m, color) {
        (Mor::Plain(f), 0) => Ok(&f.maps),
        (Mor::Bi(f, _), 0) => Ok(&f.maps),
        (Mor::Bi(_, g), 1) => Ok(&g.maps),
        _ => Err(Error::malformed("color out of range for this morphism")),
    }
}

fn color_sizes(o: &Obj, color: usize) -> Result<Vec<usize>> {
    match (o, color) {
        (Obj::Plain(g), 0) => Ok(g.sizes.clone()),
        (Obj::Bi(a, _), 0) => Ok(a.sizes.clone()),
        (Obj::Bi(_, b), 1) => Ok(b.sizes.clone()),
        _ => Err(Error::malformed("color out of range for this object")),
    }
}

/// Density of i₀ at the probe objects: hom(x, y) must biject onto the
/// natural transformations hom(i₀−, x) ⇒ hom(i₀−, y), via postcomposition.
pub fn check_density(a: &ArityAssignment, probes: &[Obj]) -> Result<Report> {
    let mut report = Report::new(format!("density of `{}`", a.key));
    let presheaves: Vec<Arc<FinPresheaf>> = probes
        .iter()
        .map(|x| a.hom_presheaf(x).map(Arc::new))
        .collect::<Result<_>>()?;
    for (xi, x) in probes.iter().enumerate() {
        for (yi, y) in probes.iter().enumerate() {
            let hom = a.ambient.hom(x, y, a.limit)?;
            let nats = nat_transformations(&presheaves[xi], &presheaves[yi])?;
            // the canonical map g ↦ (g ∘ −)
            let mut images = Vec::with_capacity(hom.len());
            for g in &hom {
                let mut comps = Vec::with_capacity(a.object_count());
                for s in 0..a.object_count() {
                    let from = a.ambient.hom(&a.objects[s], x, a.limit)?;
                    let to = a.ambient.hom(&a.objects[s], y, a.limit)?;
                    let mut col = Vec::with_capacity(from.len());
                    for h in &from {
                        let gh = a.ambient.compose(g, h)?;
                        col.push(
                            to.iter()
                                .position(|k| *k == gh)
                                .ok_or_else(|| Error::malformed("postcomposite escaped"))?,
                        );
                    }
                    comps.push(col);
                }
                images.push(comps);
            }
            let mut seen = Vec::new();
            let mut ok = true;
            for img in &images {
                if seen.contains(img) {
                    ok = false;
                }
                seen.push(img.clone());
                if !nats.iter().any(|n| n.components == *img) {
                    ok = false;
                }
            }
            report.check(
                "density-bijection",
                || {
                    format!(
                        "probes ({xi},{yi}): |hom| = {}, |Nat| = {}",
                        hom.len(),
                        nats.len()
                    )
                },
                ok && images.len() == nats.len(),
            );
        }
    }
    Ok(report)
}

/// The comma category (i₀ ↓ x) over an ambient object.
#[derive(Debug, Clone)]
pub struct AmbientComma {
    /// (arity index, morphism i₀ s -> x)
    pub objects: Vec<(usize, Mor)>,
    /// (from, to, theta0 morphism)
    pub arrows: Vec<(usize, usize, MorId)>,
}

pub fn comma_arities(a: &ArityAssignment, x: &Obj) -> Result<AmbientComma> {
    let mut objects = Vec::new();
    for s in 0..a.object_count() {
        for g in a.ambient.hom(&a.objects[s], x, a.limit)? {
            objects.push((s, g));
        }
    }
    let mut arrows = Vec::new();
    for (from, (s, g)) in objects.iter().enumerate() {
        for h in a.theta0.morphisms().filter(|&h| a.theta0.src(h).0 == *s) {
            let t = a.theta0.tgt(h).0;
            for (to, (t2, g2)) in objects.iter().enumerate() {
                if *t2 == t && a.ambient.compose(g2, &a.i0_mor[h.0])? == *g {
                    arrows.push((from, to, h));
                }
            }
        }
    }
    Ok(AmbientComma { objects, arrows })
}

/// Flattened per-level cell counts of an ambient object.
pub(crate) fn obj_levels(o: &Obj) -> Vec<usize> {
    match o {
        Obj::Plain(g) => g.sizes.clone(),
        Obj::Bi(a, b) => a.sizes.iter().chain(b.sizes.iter()).copied().collect(),
    }
}

pub(crate) fn mor_levels(m: &Mor) -> Vec<Vec<usize>> {
    match m {
        Mor::Plain(f) => f.maps.clone(),
        Mor::Bi(f, g) => f.maps.iter().chain(g.maps.iter()).cloned().collect(),
    }
}

/// The canonical comparison Lan_{i₀}(T∘i₀)(x) -> T(x) for each probe,
/// computed level-wise as a set colimit over the comma category, plus the
/// pointwise-nerve equation at every arity object.
pub fn check_arities(a: &ArityAssignment, m: &MonadDescription, probes: &[Obj]) -> Result<Report> {
    let mut report = Report::new(format!("arities of `{}` for `{}`", a.key, m.name));
    let t_of_arity: Vec<Obj> = a
        .objects
        .iter()
        .map(|o| m.apply_obj(o))
        .collect::<Result<_>>()?;
    let t_of_incl: Vec<Mor> = a
        .i0_mor
        .iter()
        .map(|f| m.apply_mor(f))
        .collect::<Result<_>>()?;

    for (pi, x) in probes.iter().enumerate() {
        let comma = comma_arities(a, x)?;
        let tx = m.apply_obj(x)?;
        let tx_levels = obj_levels(&tx);
        let t_of_g: Vec<Mor> = comma
            .objects
            .iter()
            .map(|(_, g)| m.apply_mor(g))
            .collect::<Result<_>>()?;

        // level-wise colimit and comparison with T x
        for (level, &tx_count) in tx_levels.iter().enumerate() {
            let diagram = SetDiagram {
                sizes: comma
                    .objects
                    .iter()
                    .map(|(s, _)| obj_levels(&t_of_arity[*s])[level])
                    .collect(),
                arrows: comma
                    .arrows
                    .iter()
                    .map(|&(from, to, h)| (from, to, mor_levels(&t_of_incl[h.0])[level].clone()))
                    .collect(),
            };
            let colim = crate::fincat::set_colimit(&diagram);
            // the cocone into T x: (s,g,cell) ↦ T(g)(cell)
            let mut class_image = vec![usize::MAX; colim.class_count];
            let mut well_defined = true;
            for (o, (s, _)) in comma.objects.iter().enumerate() {
                let maps = mor_levels(&t_of_g[o]);
                for cell in 0..obj_levels(&t_of_arity[*s])[level] {
                    let cls = colim.class_of[o][cell];
                    let img = maps[level][cell];
                    if class_image[cls] == usize::MAX {
                        class_image[cls] = img;
                    } else if class_image[cls] != img {
                        well_defined = false;
                    }
                }
            }
            let mut hit = vec![false; tx_count];
            let mut injective = true;
            for &img in &class_image {
                if img == usize::MAX {
                    continue;
                }
                if hit[img] {
                    injective = false;
                }
                hit[img] = true;
            }
            report.check(
                "kan-comparison",
                || {
                    format!(
                        "probe #{pi} level {level}: {} classes vs {} cells",
                        colim.class_count, tx_count
                    )
                },
                well_defined && injective && colim.class_count == tx_count && hit.iter().all(|&b| b),
            );
        }

        // pointwise nerve equation: colim hom(i₀ r, T i₀ −) ≅ hom(i₀ r, T x)
        for r in 0..a.object_count() {
            let homs: Vec<Vec<Mor>> = comma
                .objects
                .iter()
                .map(|(s, _)| a.ambient.hom(&a.objects[r], &t_of_arity[*s], a.limit))
                .collect::<Result<_>>()?;
            let arrows = comma
                .arrows
                .iter()
                .map(|&(from, to, h)| {
                    let map = homs[from]
                        .iter()
                        .map(|phi| {
                            let post = a.ambient.compose(&t_of_incl[h.0], phi)?;
                            homs[to]
                                .iter()
                                .position(|k| *k == post)
                                .ok_or_else(|| Error::malformed("postcomposite escaped"))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok((from, to, map))
                })
                .collect::<Result<Vec<_>>>()?;
            let diagram = SetDiagram {
                sizes: homs.iter().map(|h| h.len()).collect(),
                arrows,
            };
            let colim = crate::fincat::set_colimit(&diagram);
            let target = a.ambient.hom(&a.objects[r], &tx, a.limit)?;
            let mut class_image = vec![usize::MAX; colim.class_count];
            let mut well_defined = true;
            for (o, hom) in homs.iter().enumerate() {
                for (ci, phi) in hom.iter().enumerate() {
                    let composed = a.ambient.compose(&t_of_g[o], phi)?;
                    let img = target
                        .iter()
                        .position(|k| *k == composed)
                        .ok_or_else(|| Error::malformed("nerve comparison escaped"))?;
                    let cls = colim.class_of[o][ci];
                    if class_image[cls] == usize::MAX {
                        class_image[cls] = img;
                    } else if class_image[cls] != img {
                        well_defined = false;
                    }
                }
            }
            let mut hit = vec![false; target.len()];
            let mut injective = true;
            for &img in &class_image {
                if img == usize::MAX {
                    continue;
                }
                if hit[img] {
                    injective = false;
                }
                hit[img] = true;
            }
            report.check(
                "nerve-equation",
                || format!("probe #{pi} at arity {}", a.object_names[r]),
                well_defined
                    && injective
                    && colim.class_count == target.len()
                    && hit.iter().all(|&b| b),
            );
        }
    }
    Ok(report)
}

/// A morphism of arity assignments: an ambient functor F and an arity functor
/// l with F ∘ i₀ = i₁ ∘ l on the nose.
pub struct AritiesMorphism {
    pub name: String,
    pub source: Arc<ArityAssignment>,
    pub target: Arc<ArityAssignment>,
    pub ambient: EffFunctor,
    pub arity_map: FinFunctor,
}

impl AritiesMorphism {
    pub fn validate(&self) -> Result<Report> {
        let mut report = Report::new(format!("arity morphism `{}`", self.name));
        report.absorb(self.arity_map.validate());
        for s in 0..self.source.object_count() {
            let lhs = self.ambient.apply_obj(&self.source.objects[s])?;
            let rhs = &self.target.objects[self.arity_map.on_obj(ObjId(s)).0];
            report.check(
                "square-objects",
                || format!("at {}", self.source.object_names[s]),
                same_obj(&lhs, rhs),
            );
        }
        for h in self.source.theta0.morphisms() {
            let lhs = self.ambient.apply_mor(&self.source.i0_mor[h.0])?;
            let rhs = &self.target.i0_mor[self.arity_map.on_mor(h).0];
            report.check(
                "square-morphisms",
                || format!("at {}", self.source.theta0.mor_name(h)),
                lhs == *rhs,
            );
        }
        Ok(report)
    }
}

/// The Beck–Chevalley mate at sample presheaves and probe objects: the
/// canonical map Nat(hom(i₁−, Fa), Z) -> Nat(hom(i₀−, a), Z∘l) must be a
/// bijection.
pub fn check_exactness(
    am: &AritiesMorphism,
    samples: &[Arc<FinPresheaf>],
    probes: &[Obj],
) -> Result<Report> {
    let mut report = Report::new(format!("exactness of `{}`", am.name));
    let square = am.validate()?;
    if !square.is_clean() {
        report.absorb(square);
        return Ok(report);
    }
    for (zi, z) in samples.iter().enumerate() {
        if !crate::fincat::same_category(&z.base, &am.target.theta0) {
            return Err(Error::BaseMismatch(
                "sample presheaf does not live on the target arity category".into(),
            ));
        }
        // restriction along l
        let zl = Arc::new(crate::theory::restrict_presheaf(&am.arity_map, z)?);
        for (ai, a) in probes.iter().enumerate() {
            let fa = am.ambient.apply_obj(a)?;
            let p1 = Arc::new(am.target.hom_presheaf(&fa)?);
            let p0 = Arc::new(am.source.hom_presheaf(a)?);
            let n1 = nat_transformations(&p1, z)?;
            let n0 = nat_transformations(&p0, &zl)?;

            let hom_to_fa: Vec<Vec<Mor>> = (0..am.target.object_count())
                .map(|t| {
                    am.target
                        .ambient
                        .hom(&am.target.objects[t], &fa, am.target.limit)
                })
                .collect::<Result<_>>()?;
            let mut images = Vec::new();
            for psi in &n1 {
                let mut comps = Vec::with_capacity(am.source.object_count());
                for s in 0..am.source.object_count() {
                    let ls = am.arity_map.on_obj(ObjId(s)).0;
                    let from = am
                        .source
                        .ambient
                        .hom(&am.source.objects[s], a, am.source.limit)?;
                    let mut col = Vec::with_capacity(from.len());
                    for g in &from {
                        let fg = am.ambient.apply_mor(g)?;
                        let w = hom_to_fa[ls]
                            .iter()
                            .position(|k| *k == fg)
                            .ok_or_else(|| Error::malformed("mate image escaped"))?;
                        col.push(psi.components[ls][w]);
                    }
                    comps.push(col);
                }
                images.push(comps);
            }
            let mut ok = images.len() == n0.len();
            let mut seen = Vec::new();
            for img in &images {
                if seen.contains(img) || !n0.iter().any(|n| n.components == *img) {
                    ok = false;
                }
                seen.push(img.clone());
            }
            report.check(
                "mate-iso",
                || {
                    format!(
                        "sample #{zi} probe #{ai}: {} vs {} components",
                        n1.len(),
                        n0.len()
                    )
                },
                ok,
            );
        }
    }
    Ok(report)
}

/// The d-globe as an ambient object of the requested color.
pub fn globe_obj(ambient: EffCat, d: usize, color: usize) -> Obj {
    match ambient {
        EffCat::Plain { dim } => Obj::plain(GlobSet::globe(d, dim)),
        EffCat::Bi { dim } => {
            let g = GlobSet::globe(d, dim);
            if color == 0 {
                Obj::bi(g, GlobSet::empty(dim))
            } else {
                Obj::bi(GlobSet::empty(dim), g)
            }
        }
    }
}
