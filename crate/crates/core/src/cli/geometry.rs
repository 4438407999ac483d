use std::path::Path;

use serde_json::json;

use super::{input, CliError, Outcome, PointArgs, RunConfig};
use crate::algebra::{Embedding, EmbeddingSpec, ModelElem, MonomialModel, Presentation};
use crate::arith::{Field, NonNegRational, Rational};
use crate::limits::{
    check_functoriality, family_from_point, sample_points, separate as separate_points, LimitError, Preset, Target,
};
use crate::poly::{parse_expr, symbols, Poly};
use crate::report::SCHEMA;
use crate::tropical::{
    bend_null, is_real_trop_point, is_trop_point, real_bend_null, signed_term_values, term_values, trop_curve_2d,
};
use crate::zoo::{parse_field, ValuedField};

fn load(path: &Path) -> Result<EmbeddingSpec, CliError> {
    EmbeddingSpec::from_path(path).map_err(input)
}

fn monomial<F: Field>(names: &[String], s: &str) -> Result<ModelElem<F>, CliError> {
    let p: Poly<F> = parse_expr(s).and_then(|e| e.to_poly(names)).map_err(input)?;
    match p.num_terms() {
        0 => Ok(ModelElem::new(F::zero(), vec![0; names.len()])),
        1 => {
            let (e, c) = p.terms().next().expect("one term");
            Ok(ModelElem::new(c.clone(), e.clone()))
        }
        _ => Err(input(format!("`{s}` is not a monomial in {}", names.join(", ")))),
    }
}

fn model_null_in<V: ValuedField>(
    vf: V,
    spec: &EmbeddingSpec,
    sum: &str,
    bound: Option<u32>,
) -> Result<Outcome, CliError> {
    let emb = spec.build(vf).map_err(input)?;
    let names = emb.names().to_vec();
    let elems = sum
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| monomial::<V::F>(&names, s))
        .collect::<Result<Vec<_>, _>>()?;
    let model = MonomialModel::new(emb.clone());
    let m = model.model_null(&elems, bound);
    Ok(Outcome::answer(
        m.to_string(),
        json!({
            "schema": SCHEMA,
            "embedding": emb.describe(),
            "coordinates": names,
            "sum": elems.iter().map(|e| e.display(&names)).collect::<Vec<_>>(),
            "null": m,
        }),
    ))
}

pub(super) fn model_null(cfg: &RunConfig, path: &Path, sum: &str) -> Result<Outcome, CliError> {
    let spec = load(path)?;
    let kind = spec.field_kind().map_err(input)?;
    with_field!(kind, vf => model_null_in(vf, &spec, sum, cfg.degree_bound))
}

fn coords(csv: &str) -> Result<Vec<Rational>, CliError> {
    csv.split(',').map(|s| s.trim().parse::<Rational>().map_err(input)).collect()
}

fn trop_in<V: ValuedField>(vf: V, args: &PointArgs, real: bool) -> Result<Outcome, CliError> {
    if real && !vf.is_ordered() {
        return Err(input(format!("field {} has no ordering", vf.id())));
    }
    let point = coords(&args.point)?;
    let magnitudes = || -> Result<Vec<NonNegRational>, CliError> {
        point.iter().map(|x| NonNegRational::new(x.clone()).map_err(input)).collect()
    };
    let point_text: Vec<String> = point.iter().map(ToString::to_string).collect();
    if let Some(path) = &args.embedding {
        let emb = load(path)?.build(vf).map_err(input)?;
        let model = MonomialModel::new(emb.clone());
        let member = if real { is_real_trop_point(&model, &point) } else { is_trop_point(&model, &magnitudes()?) }
            .map_err(input)?;
        let relations: Vec<String> = emb.relations().map_err(input)?.iter().map(|r| r.display(emb.names())).collect();
        return Ok(Outcome::answer(
            member.to_string(),
            json!({
                "schema": SCHEMA,
                "embedding": emb.describe(),
                "relations": relations,
                "point": point_text,
                "member": member,
            }),
        ));
    }
    let poly = args.poly.as_deref().ok_or_else(|| input("--poly or --embedding is required"))?;
    let expr = parse_expr(poly).map_err(input)?;
    let vars = args.vars.clone().unwrap_or_else(|| symbols::<V::F>(&expr));
    let f: Poly<V::F> = expr.to_poly(&vars).map_err(input)?;
    if point.len() != vars.len() {
        return Err(input(format!("point has {} coordinates for variables {}", point.len(), vars.join(", "))));
    }
    let (null, values): (bool, Vec<String>) = if real {
        (real_bend_null(&vf, &f, &point), signed_term_values(&vf, &f, &point).iter().map(ToString::to_string).collect())
    } else {
        let w = magnitudes()?;
        (bend_null(&vf, &f, &w), term_values(&vf, &f, &w).iter().map(ToString::to_string).collect())
    };
    Ok(Outcome::answer(
        null.to_string(),
        json!({
            "schema": SCHEMA,
            "field": vf.id(),
            "polynomial": f.display(&vars),
            "variables": vars,
            "point": point_text,
            "term_values": values,
            "null": null,
        }),
    ))
}

pub(super) fn trop(args: &PointArgs, real: bool) -> Result<Outcome, CliError> {
    let kind = parse_field(&args.field).map_err(input)?;
    with_field!(kind, vf => trop_in(vf, args, real))
}

fn curve_in<V: ValuedField>(vf: V, poly: &str) -> Result<Outcome, CliError> {
    let expr = parse_expr(poly).map_err(input)?;
    let syms = symbols::<V::F>(&expr);
    let xy = ["x".to_string(), "y".to_string()];
    let vars: Vec<String> = if syms.iter().all(|s| xy.contains(s)) { xy.to_vec() } else { syms };
    let f: Poly<V::F> = expr.to_poly(&vars).map_err(input)?;
    let mut curve = trop_curve_2d(&vf, &f).map_err(input)?;
    curve.polynomial = f.display(&vars);
    let artifact = serde_json::to_value(&curve).expect("curve serializes");
    Ok(Outcome { text: String::new(), show_artifact: true, artifact, pass: true, svg: Some(curve.to_svg()) })
}

pub(super) fn trop_curve(field: &str, poly: &str) -> Result<Outcome, CliError> {
    let kind = parse_field(field).map_err(input)?;
    with_field!(kind, vf => curve_in(vf, poly))
}

/// Pairs among this many sampled points are run through the separation search.
const DEMO_PAIRS_FROM: usize = 12;

fn demo_in<V: ValuedField>(vf: V, preset: Preset, cfg: &RunConfig, count: usize) -> Result<Outcome, CliError> {
    let d = preset.diagram(vf.clone()).map_err(input)?;
    let pts = sample_points(preset, &vf, count, cfg.seed);
    let mut reports = vec![check_functoriality(&d, &pts, Target::Trop)];
    if vf.is_ordered() {
        reports.push(check_functoriality(&d, &pts, Target::RealTrop));
    }
    for r in &mut reports {
        r.seed = Some(cfg.seed);
    }
    let families = pts
        .iter()
        .take(3)
        .map(|p| family_from_point(&d, p, Target::Trop))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input)?;
    let iota0 = d.nodes()[0].embedding();
    let (mut pairs, mut separated, mut by_tier, mut failures) = (0usize, 0usize, [0usize; 4], Vec::new());
    let head = &pts[..pts.len().min(DEMO_PAIRS_FROM)];
    for (i, p) in head.iter().enumerate() {
        for q in &head[i + 1..] {
            if p == q {
                continue;
            }
            pairs += 1;
            match separate_points(p, q, iota0, &[], 3) {
                Ok(s) => {
                    separated += 1;
                    by_tier[s.tier] += 1;
                }
                Err(e) => failures.push(format!("{:?} vs {:?}: {e}", p, q)),
            }
        }
    }
    let arrows: Vec<_> = d
        .arrows()
        .iter()
        .map(|a| {
            let mono: Vec<String> = a
                .phi
                .monomials()
                .iter()
                .map(|(c, e)| ModelElem::new(c.clone(), e.clone()).display(d.nodes()[a.from].embedding().names()))
                .collect();
            json!({ "from": a.from, "to": a.to, "monomials": mono })
        })
        .collect();
    let pass = reports.iter().all(|r| r.pass) && failures.is_empty();
    let artifact = json!({
        "schema": SCHEMA,
        "preset": preset.name(),
        "field": vf.id(),
        "seed": cfg.seed,
        "nodes": d.nodes().iter().map(|m| m.embedding().describe()).collect::<Vec<_>>(),
        "arrows": arrows,
        "functoriality": reports,
        "families": families,
        "separation": {
            "pairs": pairs,
            "separated": separated,
            "by_tier": by_tier,
            "failures": failures,
        },
    });
    Ok(Outcome::report(artifact, pass))
}

pub(super) fn limit_demo(cfg: &RunConfig, preset: &str, field: &str, count: usize) -> Result<Outcome, CliError> {
    let preset = Preset::parse(preset).ok_or_else(|| input(format!("unknown preset `{preset}`; use line or conic")))?;
    let kind = parse_field(field).map_err(input)?;
    with_field!(kind, vf => demo_in(vf, preset, cfg, count))
}

fn parse_point<F: Field>(s: &str) -> Result<Vec<F>, CliError> {
    s.split(';').map(|x| parse_expr(x).and_then(|e| e.to_field::<F>()).map_err(input)).collect()
}

fn separate_in<V: ValuedField>(
    vf: V,
    embedding: Option<&Path>,
    points: &str,
    extras: &[String],
    budget: usize,
) -> Result<Outcome, CliError> {
    let iota0 = match embedding {
        Some(path) => load(path)?.build(vf.clone()).map_err(input)?,
        None => Embedding::canonical(&Presentation::affine(vf.clone(), &["t"]).map_err(input)?),
    };
    let (p, q) = points.split_once(',').ok_or_else(|| input("--points expects P,Q"))?;
    let (p, q) = (parse_point::<V::F>(p)?, parse_point::<V::F>(q)?);
    let pres = iota0.presentation();
    let user = extras.iter().map(|s| pres.poly(s)).collect::<Result<Vec<_>, _>>().map_err(input)?;
    let show = |x: &[V::F]| x.iter().map(ToString::to_string).collect::<Vec<_>>();
    let mut artifact = json!({
        "schema": SCHEMA,
        "field": vf.id(),
        "base_embedding": iota0.describe(),
        "p": show(&p),
        "q": show(&q),
        "budget": budget,
    });
    let obj = artifact.as_object_mut().expect("object");
    match separate_points(&p, &q, &iota0, &user, budget) {
        Ok(s) => {
            obj.insert("separated".into(), json!(true));
            obj.insert("embedding".into(), json!(s.embedding.describe()));
            obj.insert("element".into(), json!(s.element.as_ref().map(|f| pres.show(f))));
            obj.insert("tier".into(), json!(s.tier));
            obj.insert("image_p".into(), json!(s.image_p));
            obj.insert("image_q".into(), json!(s.image_q));
            Ok(Outcome::report(artifact, true))
        }
        Err(e @ LimitError::Exhausted(_)) => {
            obj.insert("separated".into(), json!(false));
            obj.insert("reason".into(), json!(e.to_string()));
            Ok(Outcome::report(artifact, false))
        }
        Err(e) => Err(input(e)),
    }
}

pub(super) fn separate(
    preset: Option<&str>,
    points: Option<&str>,
    field: &str,
    embedding: Option<&Path>,
    extras: &[String],
    budget: usize,
) -> Result<Outcome, CliError> {
    match (preset, points) {
        (Some("a1-pm1"), _) => separate_in(crate::zoo::TrivialQ, None, "1,-1", extras, budget),
        (Some(other), _) => Err(input(format!("unknown preset `{other}`; use a1-pm1"))),
        (None, Some(points)) => {
            let kind = parse_field(field).map_err(input)?;
            with_field!(kind, vf => separate_in(vf, embedding, points, extras, budget))
        }
        (None, None) => Err(input("--preset or --points is required")),
    }
}
