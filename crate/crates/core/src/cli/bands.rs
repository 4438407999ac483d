use std::collections::BTreeSet;

use serde_json::json;

use super::{input, CliError, Outcome, RunConfig};
use crate::band::{check_band_axioms, check_morphism, exhaustive_sample, seeded_rng, Band, SampleBand};
use crate::report::{CheckReport, SCHEMA};
use crate::spectra::{localize as localize_band, ExplicitSpec, FreeBand, FreeSpec, IntegerSpec, MultSet, SpecSpace};
use crate::zoo::{parse_field, sign_morphism, signed_valuation, trop_valuation, ValuedField, ZooBand};

fn band(id: &str) -> Result<ZooBand, CliError> {
    ZooBand::parse(id).map_err(input)
}

fn report_outcome(mut report: CheckReport, seed: u64) -> Outcome {
    report.seed.get_or_insert(seed);
    let pass = report.pass;
    Outcome::report(serde_json::to_value(&report).expect("report serializes"), pass)
}

pub(super) fn axioms(cfg: &RunConfig, id: &str, samples: usize) -> Result<Outcome, CliError> {
    Ok(report_outcome(band(id)?.check_axioms(samples, cfg.max_len, cfg.seed), cfg.seed))
}

pub(super) fn null(id: &str, sum: &str) -> Result<Outcome, CliError> {
    let b = band(id)?;
    let s = b.parse_sum(sum).map_err(input)?;
    let is_null = b.is_null(&s);
    Ok(Outcome::answer(is_null.to_string(), json!({ "schema": SCHEMA, "sum": b.tag(&s), "null": is_null })))
}

pub(super) fn neg(id: &str, elem: &str) -> Result<Outcome, CliError> {
    let b = band(id)?;
    let a = b.parse_elem(elem).map_err(input)?;
    let n = b.neg(&a).map_err(input)?;
    Ok(Outcome::answer(
        n.to_string(),
        json!({ "schema": SCHEMA, "band": b.id(), "elem": a.to_string(), "neg": n.to_string() }),
    ))
}

pub(super) fn spec(cfg: &RunConfig, id: &str) -> Result<Outcome, CliError> {
    let space = if let Some((base, rest)) = id.split_once('[') {
        let names: Vec<String> = rest
            .strip_suffix(']')
            .ok_or_else(|| input(format!("unclosed variable list in `{id}`")))?
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        SpecSpace::build(&FreeSpec { band: FreeBand::new(band(base)?, names) })
    } else if id.trim() == "ring:Z" {
        SpecSpace::build(&IntegerSpec { bound: cfg.prime_bound })
    } else {
        SpecSpace::build(&ExplicitSpec::new(band(id)?))
    }
    .map_err(input)?;
    let text = space.points.iter().map(|p| p.label.clone()).collect::<Vec<_>>().join("\n");
    let artifact = serde_json::to_value(&space).expect("spec serializes");
    Ok(Outcome { text, show_artifact: true, artifact, pass: true, svg: None })
}

pub(super) fn localize(
    cfg: &RunConfig,
    id: &str,
    at: &Option<String>,
    set: &Option<String>,
    prime: &Option<String>,
) -> Result<Outcome, CliError> {
    let b = band(id)?;
    let elems =
        |csv: &str| -> Result<Vec<_>, CliError> { csv.split(',').map(|s| b.parse_elem(s).map_err(input)).collect() };
    let (s, described) = match (at, set, prime) {
        (Some(h), None, None) => (MultSet::Powers(b.parse_elem(h).map_err(input)?), format!("powers of {h}")),
        (None, Some(csv), None) => (MultSet::Explicit(elems(csv)?), format!("{{{csv}}}")),
        (None, None, Some(csv)) => {
            (MultSet::Complement(elems(csv)?.into_iter().collect::<BTreeSet<_>>()), format!("complement of {{{csv}}}"))
        }
        _ => return Err(input("give exactly one of --at, --set, --prime")),
    };
    let (loc, iota) = localize_band(&b, s).map_err(input)?;
    let mut rng = seeded_rng(cfg.seed);
    let nulls: Vec<_> = (0..200).map(|_| b.sample_null(&mut rng, cfg.max_len)).collect();
    let pairs: Vec<_> = (0..200).map(|_| (b.sample_elem(&mut rng), b.sample_elem(&mut rng))).collect();
    let iota_report = check_morphism(&iota, &nulls, &pairs, Some(cfg.seed)).map_err(input)?;
    let axioms = exhaustive_sample(&loc, cfg.max_len.min(3)).map(|sample| check_band_axioms(&loc, &sample));
    let pass = iota_report.pass && axioms.as_ref().is_none_or(|r| r.pass);
    let artifact = json!({
        "schema": SCHEMA,
        "band": b.id(),
        "multiplicative_set": described,
        "trivial": loc.is_trivial(),
        "elements": loc.elements().map(|es| es.iter().map(ToString::to_string).collect::<Vec<_>>()),
        "warning": loc.warning,
        "iota": iota_report,
        "axioms": axioms,
    });
    Ok(Outcome::report(artifact, pass))
}

fn morphism_report<V: ValuedField>(
    vf: V,
    name: &str,
    cfg: &RunConfig,
    samples: usize,
) -> Result<CheckReport, CliError> {
    let band = vf.bandified();
    let mut rng = seeded_rng(cfg.seed);
    let nulls: Vec<_> = (0..samples).map(|_| band.sample_null(&mut rng, cfg.max_len)).collect();
    let pairs: Vec<_> = (0..samples).map(|_| (band.sample_elem(&mut rng), band.sample_elem(&mut rng))).collect();
    let seed = Some(cfg.seed);
    match name {
        "trop-valuation" => check_morphism(&trop_valuation(&vf), &nulls, &pairs, seed),
        "sign" => check_morphism(&sign_morphism(&vf).map_err(input)?, &nulls, &pairs, seed),
        "signed-valuation" => {
            let compat: Vec<V::F> = (0..40).map(|_| vf.sample_elem(&mut rng)).collect();
            check_morphism(&signed_valuation(&vf, &compat).map_err(input)?, &nulls, &pairs, seed)
        }
        _ => return Err(input(format!("unknown morphism `{name}`; use trop-valuation, sign or signed-valuation"))),
    }
    .map_err(input)
}

pub(super) fn morphism(cfg: &RunConfig, name: &str, field: &str, samples: usize) -> Result<Outcome, CliError> {
    let kind = parse_field(field).map_err(input)?;
    let report = with_field!(kind, vf => morphism_report(vf, name, cfg, samples))?;
    Ok(report_outcome(report, cfg.seed))
}
