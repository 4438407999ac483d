use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::TropError;
use crate::arith::Rational;
use crate::poly::Poly;
use crate::report::SCHEMA;
use crate::zoo::ValuedField;

type Pt = [Rational; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub vertex: usize,
    pub direction: [i64; 2],
}

/// A cell with no vertex on it: the whole line through `point`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub point: Pt,
    pub direction: [i64; 2],
}

/// Corner locus of u ↦ max_j (log_b|c_j| + ⟨e_j, u⟩) in additive coordinates
/// u_i = log_b |x_i|, b the base of the field's absolute value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropCurve2D {
    pub schema: String,
    pub field: String,
    pub polynomial: String,
    pub base: u64,
    pub convention: String,
    pub vertices: Vec<Pt>,
    /// Bounded edges as pairs of vertex indices.
    pub edges: Vec<[usize; 2]>,
    pub rays: Vec<Ray>,
    pub lines: Vec<Line>,
}

struct Term {
    ell: Rational,
    e: [i64; 2],
}

impl Term {
    fn at(&self, u: &Pt) -> Rational {
        &(&self.ell + &(&Rational::from(self.e[0]) * &u[0])) + &(&Rational::from(self.e[1]) * &u[1])
    }
}

fn terms<V: ValuedField>(vf: &V, f: &Poly<V::F>) -> Vec<Term> {
    f.terms()
        .map(|(e, c)| Term { ell: vf.log_abs(c).expect("nonzero coefficient"), e: [i64::from(e[0]), i64::from(e[1])] })
        .collect()
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn dot(a: [i64; 2], u: &Pt) -> Rational {
    &(&q(a[0]) * &u[0]) + &(&q(a[1]) * &u[1])
}

fn max_twice(values: &[Rational]) -> bool {
    match values.iter().max() {
        None => true,
        Some(m) => values.iter().filter(|v| *v == m).count() >= 2,
    }
}

/// The bend condition in additive coordinates: the maximum of
/// log_b|c_j| + ⟨e_j, u⟩ over the terms is attained at least twice.
pub fn bend_null_additive<V: ValuedField>(vf: &V, f: &Poly<V::F>, u: &[Rational]) -> bool {
    let values: Vec<Rational> = f
        .terms()
        .map(|(e, c)| {
            e.iter().zip(u).fold(vf.log_abs(c).expect("nonzero coefficient"), |acc, (&k, x)| &acc + &(&q(k.into()) * x))
        })
        .collect();
    max_twice(&values)
}

fn is_max(ts: &[Term], i: usize, u: &Pt) -> bool {
    let v = ts[i].at(u);
    ts.iter().all(|t| t.at(u) <= v)
}

/// Parameter interval of a tie cell along `p0 + s·d`.
struct Cell {
    p0: Pt,
    d: [i64; 2],
    lo: Option<Rational>,
    hi: Option<Rational>,
}

impl Cell {
    fn at(&self, s: &Rational) -> Pt {
        [&self.p0[0] + &(&q(self.d[0]) * s), &self.p0[1] + &(&q(self.d[1]) * s)]
    }
}

fn tie_cell(ts: &[Term], i: usize, j: usize) -> Option<Cell> {
    let delta = [ts[i].e[0] - ts[j].e[0], ts[i].e[1] - ts[j].e[1]];
    let g = delta[0].gcd(&delta[1]);
    let mut d = [-delta[1] / g, delta[0] / g];
    if d[0] < 0 || (d[0] == 0 && d[1] < 0) {
        d = [-d[0], -d[1]];
    }
    // ⟨Δ, u⟩ = ℓ_j − ℓ_i, solved along Δ
    let norm = q(delta[0] * delta[0] + delta[1] * delta[1]);
    let scale = (&ts[j].ell - &ts[i].ell) / norm;
    let p0 = [&q(delta[0]) * &scale, &q(delta[1]) * &scale];
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    for (k, t) in ts.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let diff = [ts[i].e[0] - t.e[0], ts[i].e[1] - t.e[1]];
        let alpha = &(&ts[i].ell - &t.ell) + &dot(diff, &p0);
        let beta = diff[0] * d[0] + diff[1] * d[1];
        if beta == 0 {
            if alpha.signum() < 0 {
                return None;
            }
            continue;
        }
        let bound = -alpha / q(beta);
        if beta > 0 {
            lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
        } else {
            hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
        }
    }
    match (&lo, &hi) {
        (Some(l), Some(h)) if l >= h => None,
        _ => Some(Cell { p0, d, lo, hi }),
    }
}

/// The plane tropical curve of a bivariate polynomial.
pub fn trop_curve_2d<V: ValuedField>(vf: &V, f: &Poly<V::F>) -> Result<TropCurve2D, TropError> {
    if f.nvars() != 2 {
        return Err(TropError::NotBivariate(f.nvars()));
    }
    if f.num_terms() < 2 {
        return Err(TropError::Monomial);
    }
    let ts = terms(vf, f);
    let n = ts.len();
    let mut vertex_set: BTreeSet<Pt> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a1 = [ts[i].e[0] - ts[j].e[0], ts[i].e[1] - ts[j].e[1]];
                let a2 = [ts[i].e[0] - ts[k].e[0], ts[i].e[1] - ts[k].e[1]];
                let det = a1[0] * a2[1] - a1[1] * a2[0];
                if det == 0 {
                    continue;
                }
                let b1 = &ts[j].ell - &ts[i].ell;
                let b2 = &ts[k].ell - &ts[i].ell;
                let u = [
                    (&(&b1 * &q(a2[1])) - &(&b2 * &q(a1[1]))) / q(det),
                    (&(&b2 * &q(a1[0])) - &(&b1 * &q(a2[0]))) / q(det),
                ];
                if is_max(&ts, i, &u) {
                    vertex_set.insert(u);
                }
            }
        }
    }
    let mut cells = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let Some(cell) = tie_cell(&ts, i, j) else { continue };
            let a = cell.lo.as_ref().map(|s| cell.at(s));
            let b = cell.hi.as_ref().map(|s| cell.at(s));
            let offset = dot([cell.d[1], -cell.d[0]], &cell.p0);
            if !seen.insert((cell.d, offset, a.clone(), b.clone())) {
                continue;
            }
            vertex_set.extend(a.iter().chain(b.iter()).cloned());
            cells.push((cell, a, b));
        }
    }
    let vertices: Vec<Pt> = vertex_set.into_iter().collect();
    let index: BTreeMap<&Pt, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let (mut edges, mut rays, mut lines) = (Vec::new(), Vec::new(), Vec::new());
    for (cell, a, b) in cells {
        match (a, b) {
            (Some(a), Some(b)) => {
                let (x, y) = (index[&a], index[&b]);
                edges.push([x.min(y), x.max(y)]);
            }
            (Some(a), None) => rays.push(Ray { vertex: index[&a], direction: cell.d }),
            (None, Some(b)) => rays.push(Ray { vertex: index[&b], direction: [-cell.d[0], -cell.d[1]] }),
            (None, None) => lines.push(Line { point: cell.p0, direction: cell.d }),
        }
    }
    edges.sort();
    edges.dedup();
    rays.sort_by_key(|r| (r.vertex, r.direction));
    rays.dedup();
    Ok(TropCurve2D {
        schema: SCHEMA.into(),
        field: vf.id(),
        polynomial: f.display(&["x".to_string(), "y".to_string()]),
        base: vf.base(),
        convention: format!("max; u = log_{} |x|; term value log_{}|c| + <e, u>", vf.base(), vf.base()),
        vertices,
        edges,
        rays,
        lines,
    })
}

fn cross(a: &Pt, d: [i64; 2]) -> Rational {
    &(&a[0] * &q(d[1])) - &(&a[1] * &q(d[0]))
}

fn sub(a: &Pt, b: &Pt) -> Pt {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

impl TropCurve2D {
    /// Midpoints of the bounded edges.
    pub fn edge_midpoints(&self) -> Vec<Pt> {
        self.edges
            .iter()
            .map(|[a, b]| {
                let (p, r) = (&self.vertices[*a], &self.vertices[*b]);
                [(&p[0] + &r[0]) / q(2), (&p[1] + &r[1]) / q(2)]
            })
            .collect()
    }

    /// Whether u lies on a vertex, edge, ray or line of the curve.
    pub fn contains(&self, u: &Pt) -> bool {
        if self.vertices.contains(u) {
            return true;
        }
        let on_edge = self.edges.iter().any(|[a, b]| {
            let (p, r) = (&self.vertices[*a], &self.vertices[*b]);
            let pu = sub(u, p);
            let pr = sub(r, p);
            let c = &(&pu[0] * &pr[1]) - &(&pu[1] * &pr[0]);
            let t = &(&pu[0] * &pr[0]) + &(&pu[1] * &pr[1]);
            let len = &(&pr[0] * &pr[0]) + &(&pr[1] * &pr[1]);
            c.is_zero() && t.signum() >= 0 && t <= len
        });
        let on_ray = self.rays.iter().any(|r| {
            let pu = sub(u, &self.vertices[r.vertex]);
            cross(&pu, r.direction).is_zero() && dot(r.direction, &pu).signum() >= 0
        });
        let on_line = self.lines.iter().any(|l| cross(&sub(u, &l.point), l.direction).is_zero());
        on_edge || on_ray || on_line
    }

    /// Vertices, edges and rays drawn in additive coordinates, with a legend.
    pub fn to_svg(&self) -> String {
        let mut pts: Vec<(f64, f64)> = self.vertices.iter().map(|v| (v[0].to_f64(), v[1].to_f64())).collect();
        pts.extend(self.lines.iter().map(|l| (l.point[0].to_f64(), l.point[1].to_f64())));
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if pts.is_empty() {
            (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        let pad = ((x1 - x0).max(y1 - y0) * 0.5).max(2.0);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let half = (x1 - x0).max(y1 - y0) / 2.0 + pad;
        let (size, margin) = (400.0, 40.0);
        let sx = |x: f64| margin + (x - (cx - half)) / (2.0 * half) * size;
        let sy = |y: f64| margin + ((cy + half) - y) / (2.0 * half) * size;
        let far = 4.0 * half;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = size + 2.0 * margin,
            h = size + 2.0 * margin + 80.0
        );
        let _ = writeln!(
            s,
            r#"<clipPath id="plot"><rect x="{margin}" y="{margin}" width="{size}" height="{size}"/></clipPath>"#
        );
        let _ = writeln!(
            s,
            r##"<rect x="{margin}" y="{margin}" width="{size}" height="{size}" fill="none" stroke="#999"/>"##
        );
        let _ = writeln!(s, r#"<g clip-path="url(#plot)" stroke-width="2">"#);
        let line = |s: &mut String, a: (f64, f64), b: (f64, f64), color: &str, dash: &str| {
            let _ = writeln!(
                s,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}"{dash}/>"#,
                sx(a.0),
                sy(a.1),
                sx(b.0),
                sy(b.1)
            );
        };
        for [a, b] in &self.edges {
            line(&mut s, pts[*a], pts[*b], "black", "");
        }
        for r in &self.rays {
            let (x, y) = pts[r.vertex];
            let end = (x + far * r.direction[0] as f64, y + far * r.direction[1] as f64);
            line(&mut s, (x, y), end, "#1f5fbf", r#" stroke-dasharray="6 3""#);
        }
        for l in &self.lines {
            let (x, y) = (l.point[0].to_f64(), l.point[1].to_f64());
            let (dx, dy) = (l.direction[0] as f64 * far, l.direction[1] as f64 * far);
            line(&mut s, (x - dx, y - dy), (x + dx, y + dy), "#1f5fbf", r#" stroke-dasharray="2 2""#);
        }
        for (v, &(x, y)) in self.vertices.iter().zip(&pts) {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="crimson"><title>({}, {})</title></circle>"#,
                sx(x),
                sy(y),
                v[0],
                v[1]
            );
        }
        let _ = writeln!(s, "</g>");
        let legend_y = size + 2.0 * margin;
        let lines = [
            format!("Trop V({}) over {}", self.polynomial, self.field),
            self.convention.clone(),
            "red dots: vertices; solid: bounded edges; dashed: rays; dotted: full lines".to_string(),
            format!("view: u1 in [{:.2}, {:.2}], u2 in [{:.2}, {:.2}]", cx - half, cx + half, cy - half, cy + half),
        ];
        for (i, text) in lines.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{margin}" y="{:.1}" font-family="monospace" font-size="12">{}</text>"#,
                legend_y + 16.0 * i as f64,
                xml_escape(text)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
