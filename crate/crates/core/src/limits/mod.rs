//! Finite diagrams of embeddings of one presentation, the maps they induce
//! on 𝕋- and ℝ𝕋-points, functoriality checks and separation of points by
//! extending an embedding.

mod presets;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    extend_embedding, toric_factor, AlgebraError, Embedding, MonomialModel, Presentation, ToricMorphism,
};
use crate::arith::{Field, NonNegRational, Rational};
use crate::poly::Poly;
use crate::report::CheckReport;
use crate::tropical::{
    is_real_trop_point, is_trop_point, real_trop_of_point, trop_of_point, RealTropPoint, TropError, TropPoint,
};
use crate::zoo::ValuedField;

pub use presets::{grid_rationals, sample_points, Preset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Trop(#[from] TropError),
    #[error("no node {0} in the diagram")]
    BadNode(usize),
    #[error("point is not in the tropicalization at node {0}")]
    NotOnTrop(usize),
    #[error("family is not compatible along arrow {from} -> {to}")]
    Incompatible { from: usize, to: usize },
    #[error("the two points coincide")]
    SamePoint,
    #[error("no separating element found within budget {0}")]
    Exhausted(usize),
}

/// Which tropical band the points live over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Trop,
    RealTrop,
}

/// φ from node `from` to node `to`, with embedding(to) = φ ∘ embedding(from).
#[derive(Debug, Clone)]
pub struct Arrow<F> {
    pub from: usize,
    pub to: usize,
    pub phi: ToricMorphism<F>,
}

/// Embeddings of one presentation, all extending the canonical node 0, with
/// verified toric arrows closed under composition.
#[derive(Debug, Clone)]
pub struct EmbeddingDiagram<V: ValuedField> {
    models: Vec<MonomialModel<V>>,
    arrows: Vec<Arrow<V::F>>,
    /// (a, b, c): arrow c is arrow b after arrow a.
    compositions: Vec<(usize, usize, usize)>,
}

impl<V: ValuedField> EmbeddingDiagram<V> {
    pub fn new(pres: &Presentation<V>) -> Self {
        EmbeddingDiagram {
            models: vec![MonomialModel::new(Embedding::canonical(pres))],
            arrows: Vec::new(),
            compositions: Vec::new(),
        }
    }

    pub fn presentation(&self) -> &Presentation<V> {
        self.models[0].embedding().presentation()
    }

    pub fn field(&self) -> &V {
        self.models[0].embedding().field()
    }

    pub fn node(&self, i: usize) -> Result<&MonomialModel<V>, LimitError> {
        self.models.get(i).ok_or(LimitError::BadNode(i))
    }

    pub fn nodes(&self) -> &[MonomialModel<V>] {
        &self.models
    }

    pub fn arrows(&self) -> &[Arrow<V::F>] {
        &self.arrows
    }

    pub fn compositions(&self) -> &[(usize, usize, usize)] {
        &self.compositions
    }

    /// Adds the extension of node `base` by `extras` and the projection
    /// arrow back to `base`, then closes under composition.
    pub fn add_extension(&mut self, base: usize, extras: &[Poly<V::F>]) -> Result<usize, LimitError> {
        let (ext, phi) = extend_embedding(self.node(base)?.embedding(), extras)?;
        self.models.push(MonomialModel::new(ext));
        let idx = self.models.len() - 1;
        self.add_arrow(idx, base, phi)?;
        Ok(idx)
    }

    /// Adds φ: node `from` → node `to` after verifying it factors the
    /// embeddings, then closes under composition.
    pub fn add_arrow(&mut self, from: usize, to: usize, phi: ToricMorphism<V::F>) -> Result<usize, LimitError> {
        let phi = toric_factor(self.node(from)?.embedding(), self.node(to)?.embedding(), phi)?;
        self.arrows.push(Arrow { from, to, phi });
        let idx = self.arrows.len() - 1;
        self.close()?;
        Ok(idx)
    }

    fn close(&mut self) -> Result<(), LimitError> {
        loop {
            let mut added = false;
            for a in 0..self.arrows.len() {
                for b in 0..self.arrows.len() {
                    if self.arrows[a].to != self.arrows[b].from
                        || self.compositions.iter().any(|&(x, y, _)| (x, y) == (a, b))
                    {
                        continue;
                    }
                    let comp = self.arrows[a].phi.then(&self.arrows[b].phi)?;
                    let (from, to) = (self.arrows[a].from, self.arrows[b].to);
                    let c = match self.arrows.iter().position(|r| r.from == from && r.to == to && r.phi == comp) {
                        Some(c) => c,
                        None => {
                            let phi = toric_factor(self.models[from].embedding(), self.models[to].embedding(), comp)?;
                            self.arrows.push(Arrow { from, to, phi });
                            self.arrows.len() - 1
                        }
                    };
                    self.compositions.push((a, b, c));
                    added = true;
                }
            }
            if !added {
                return Ok(());
            }
        }
    }
}

/// The map Y_ι(𝕋) → Y_ȷ(𝕋) of φ, defined on trop points of `from`.
pub fn induced_map<V: ValuedField>(
    from: &MonomialModel<V>,
    phi: &ToricMorphism<V::F>,
    w: &[NonNegRational],
) -> Result<TropPoint, LimitError> {
    if !is_trop_point(from, w)? {
        return Err(LimitError::NotOnTrop(0));
    }
    Ok(phi.apply_trop(from.embedding().field(), w))
}

pub fn induced_real_map<V: ValuedField>(
    from: &MonomialModel<V>,
    phi: &ToricMorphism<V::F>,
    w: &[Rational],
) -> Result<RealTropPoint, LimitError> {
    if !is_real_trop_point(from, w)? {
        return Err(LimitError::NotOnTrop(0));
    }
    Ok(phi.apply_real_trop(from.embedding().field(), w))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "target", content = "points")]
pub enum Family {
    Trop(Vec<TropPoint>),
    RealTrop(Vec<RealTropPoint>),
}

/// One point per node, compatible with every arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibleFamily {
    pub nodes: Vec<String>,
    pub family: Family,
}

fn node_point<V: ValuedField>(m: &MonomialModel<V>, p: &[V::F], target: Target) -> Result<Vec<Rational>, LimitError> {
    Ok(match target {
        Target::Trop => trop_of_point(m, p)?.into_iter().map(NonNegRational::into_inner).collect(),
        Target::RealTrop => real_trop_of_point(m, p)?,
    })
}

fn push<V: ValuedField>(d: &EmbeddingDiagram<V>, arrow: &Arrow<V::F>, w: &[Rational], target: Target) -> Vec<Rational> {
    match target {
        Target::Trop => {
            let w: Vec<NonNegRational> = w.iter().map(|x| NonNegRational::new(x.clone()).unwrap()).collect();
            arrow.phi.apply_trop(d.field(), &w).into_iter().map(NonNegRational::into_inner).collect()
        }
        Target::RealTrop => arrow.phi.apply_real_trop(d.field(), w),
    }
}

/// (trop_ι(P))_ι over the nodes, checked along every arrow.
pub fn family_from_point<V: ValuedField>(
    d: &EmbeddingDiagram<V>,
    p: &[V::F],
    target: Target,
) -> Result<CompatibleFamily, LimitError> {
    let pts = d.models.iter().map(|m| node_point(m, p, target)).collect::<Result<Vec<_>, _>>()?;
    for arrow in &d.arrows {
        if push(d, arrow, &pts[arrow.from], target) != pts[arrow.to] {
            return Err(LimitError::Incompatible { from: arrow.from, to: arrow.to });
        }
    }
    let nodes = d.models.iter().map(|m| m.embedding().describe()).collect();
    let family = match target {
        Target::Trop => Family::Trop(
            pts.into_iter().map(|w| w.into_iter().map(|x| NonNegRational::new(x).unwrap()).collect()).collect(),
        ),
        Target::RealTrop => Family::RealTrop(pts),
    };
    Ok(CompatibleFamily { nodes, family })
}

/// For every point P and arrow φ: ι → ȷ, checks φ(trop_ι(P)) = trop_ȷ(P),
/// that trop_ι(P) passes the membership test, and that composites in the
/// diagram induce the composed maps.
pub fn check_functoriality<V: ValuedField>(
    d: &EmbeddingDiagram<V>,
    points: &[Vec<V::F>],
    target: Target,
) -> CheckReport {
    let subject = format!("{} over {}", d.presentation_label(), d.field().id());
    let mut report = CheckReport::new(
        match target {
            Target::Trop => "functoriality:trop",
            Target::RealTrop => "functoriality:real-trop",
        },
        subject,
        None,
    );
    report.note(format!("{} nodes, {} arrows, {} compositions", d.models.len(), d.arrows.len(), d.compositions.len()));
    for p in points {
        let label = crate::algebra::show_point(p);
        let pts = match d.models.iter().map(|m| node_point(m, p, target)).collect::<Result<Vec<_>, _>>() {
            Ok(pts) => pts,
            Err(e) => {
                report.fail("point on X", format!("{label}: {e}"));
                continue;
            }
        };
        for (i, (m, w)) in d.models.iter().zip(&pts).enumerate() {
            let member = match target {
                Target::Trop => {
                    is_trop_point(m, &w.iter().map(|x| NonNegRational::new(x.clone()).unwrap()).collect::<Vec<_>>())
                }
                Target::RealTrop => is_real_trop_point(m, w),
            };
            report.checked += 1;
            if member != Ok(true) {
                report.fail("membership", format!("{label} at node {i}: {:?}", w));
            }
        }
        for arrow in &d.arrows {
            report.checked += 1;
            let got = push(d, arrow, &pts[arrow.from], target);
            if got != pts[arrow.to] {
                report.fail(
                    "induced map",
                    format!(
                        "{label}: arrow {} -> {} gives {:?}, expected {:?}",
                        arrow.from, arrow.to, got, pts[arrow.to]
                    ),
                );
            }
        }
        for &(a, b, c) in &d.compositions {
            report.checked += 1;
            let w = &pts[d.arrows[a].from];
            let two_step = push(d, &d.arrows[b], &push(d, &d.arrows[a], w, target), target);
            if two_step != push(d, &d.arrows[c], w, target) {
                report.fail("composition", format!("{label}: arrows {a}, {b} vs {c}"));
            }
        }
    }
    report
}

impl<V: ValuedField> EmbeddingDiagram<V> {
    fn presentation_label(&self) -> String {
        let p = self.presentation();
        let rel: Vec<String> = p.generators().iter().map(|g| p.show(g)).collect();
        if rel.is_empty() {
            format!("A^{}", p.nvars())
        } else {
            format!("V({})", rel.join(", "))
        }
    }
}

/// ι₀ extended by the listed elements that are not already generators.
pub fn cofinal_embedding<V: ValuedField>(
    elements: &[Poly<V::F>],
    iota0: &Embedding<V>,
) -> Result<Embedding<V>, LimitError> {
    let mut extras: Vec<Poly<V::F>> = Vec::new();
    for e in elements {
        if !iota0.generators().contains(e) && !extras.contains(e) {
            extras.push(e.clone());
        }
    }
    Ok(extend_embedding(iota0, &extras)?.0)
}

/// A separating embedding and how it was found.
#[derive(Debug, Clone)]
pub struct Separation<V: ValuedField> {
    pub embedding: Embedding<V>,
    /// The added element, or `None` when ι₀ already separates.
    pub element: Option<Poly<V::F>>,
    /// Dictionary tier of the element, 0 for ι₀ itself.
    pub tier: usize,
    pub image_p: TropPoint,
    pub image_q: TropPoint,
}

const SHIFTS: [i64; 6] = [1, -1, 2, -2, 3, -3];

/// Candidate elements of one dictionary tier: 1 shifts a_i + c, 2 products
/// a_i·a_j, 3 the user list followed by the point shifts a_i − a_i(P) and
/// a_i − a_i(Q).
fn tier<V: ValuedField>(
    iota0: &Embedding<V>,
    t: usize,
    user: &[Poly<V::F>],
    p: &[V::F],
    q: &[V::F],
) -> Vec<Poly<V::F>> {
    let n = iota0.presentation().nvars();
    let gens = iota0.generators();
    match t {
        1 => gens
            .iter()
            .flat_map(|g| SHIFTS.iter().map(move |&c| g.add(&Poly::constant(n, V::F::from_rational(c.into())))))
            .collect(),
        2 => (0..gens.len()).flat_map(|i| (i..gens.len()).map(move |j| gens[i].mul(&gens[j]))).collect(),
        3 => {
            let mut out = user.to_vec();
            for pt in [p, q] {
                out.extend(gens.iter().map(|g| g.sub(&Poly::constant(n, g.eval(pt)))));
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Searches the tiers 1..=budget in order for f with |f(P)| ≠ |f(Q)| and
/// returns ι₀ extended by the first one found.
pub fn separate<V: ValuedField>(
    p: &[V::F],
    q: &[V::F],
    iota0: &Embedding<V>,
    user: &[Poly<V::F>],
    budget: usize,
) -> Result<Separation<V>, LimitError> {
    let pres = iota0.presentation();
    pres.contains_point(p)?;
    pres.contains_point(q)?;
    if p == q {
        return Err(LimitError::SamePoint);
    }
    let m0 = MonomialModel::new(iota0.clone());
    let (tp, tq) = (trop_of_point(&m0, p)?, trop_of_point(&m0, q)?);
    if tp != tq {
        return Ok(Separation { embedding: iota0.clone(), element: None, tier: 0, image_p: tp, image_q: tq });
    }
    let vf = iota0.field();
    for t in 1..=budget {
        for f in tier(iota0, t, user, p, q) {
            if vf.abs(&f.eval(p)) == vf.abs(&f.eval(q)) {
                continue;
            }
            let embedding = cofinal_embedding(std::slice::from_ref(&f), iota0)?;
            let m = MonomialModel::new(embedding.clone());
            let (image_p, image_q) = (trop_of_point(&m, p)?, trop_of_point(&m, q)?);
            return Ok(Separation { embedding, element: Some(f), tier: t, image_p, image_q });
        }
    }
    Err(LimitError::Exhausted(budget))
}
