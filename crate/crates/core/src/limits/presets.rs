use std::collections::BTreeSet;

use super::{EmbeddingDiagram, LimitError};
use crate::algebra::Presentation;
use crate::arith::{Field, Rational};
use crate::band::seeded_rng;
use crate::zoo::ValuedField;

/// Built-in demo diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// 𝔸¹ with nodes (t), (t, t+1), (t, t+1, t²).
    Line,
    /// V(x² + y² − 1) with nodes (x, y), (x, y, xy), (x, y, xy, x+1).
    Conic,
}

impl Preset {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "line" => Some(Preset::Line),
            "conic" => Some(Preset::Conic),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Line => "line",
            Preset::Conic => "conic",
        }
    }

    pub fn diagram<V: ValuedField>(&self, vf: V) -> Result<EmbeddingDiagram<V>, LimitError> {
        let (vars, rels, first, second): (&[&str], &[&str], &[&str], &[&str]) = match self {
            Preset::Line => (&["t"], &[], &["t + 1"], &["t^2"]),
            Preset::Conic => (&["x", "y"], &["x^2 + y^2 - 1"], &["x*y"], &["x + 1"]),
        };
        let p = Presentation::parse(vf, vars, rels)?;
        let polys = |xs: &[&str]| xs.iter().map(|s| p.poly(s)).collect::<Result<Vec<_>, _>>();
        let mut d = EmbeddingDiagram::new(&p);
        let one = d.add_extension(0, &polys(first)?)?;
        d.add_extension(one, &polys(second)?)?;
        Ok(d)
    }
}

/// Seeded points of the preset's variety: random t on 𝔸¹, and the rational
/// parametrization ((1 − s²)/(1 + s²), 2s/(1 + s²)) on the conic.
pub fn sample_points<V: ValuedField>(preset: Preset, vf: &V, count: usize, seed: u64) -> Vec<Vec<V::F>> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            let s = vf.sample_elem(&mut rng);
            match preset {
                Preset::Line => vec![s],
                Preset::Conic => {
                    let s2 = s.mul(&s);
                    let inv = V::F::one().add(&s2).inv().expect("1 + s² is nonzero");
                    let two = V::F::from_rational(2.into());
                    vec![V::F::one().sub(&s2).mul(&inv), two.mul(&s).mul(&inv)]
                }
            }
        })
        .collect()
}

/// The distinct rationals a/b with |a| ≤ bound and 1 ≤ b ≤ bound, sorted.
pub fn grid_rationals(bound: i64) -> Vec<Rational> {
    let set: BTreeSet<Rational> =
        (-bound..=bound).flat_map(|a| (1..=bound).map(move |b| Rational::new(a, b).unwrap())).collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{check_functoriality, Target};
    use crate::zoo::{PadicQ, TadicQt, TrivialQ};

    #[test]
    fn presets_are_functorial() {
        for preset in [Preset::Line, Preset::Conic] {
            let d = preset.diagram(TrivialQ).unwrap();
            assert_eq!(d.nodes().len(), 3);
            let pts = sample_points(preset, &TrivialQ, 20, 7);
            assert!(check_functoriality(&d, &pts, Target::Trop).pass);
            assert!(check_functoriality(&d, &pts, Target::RealTrop).pass);
            let vf = PadicQ::new(3).unwrap();
            let d = preset.diagram(vf).unwrap();
            assert!(check_functoriality(&d, &sample_points(preset, &vf, 20, 7), Target::Trop).pass);
            let d = preset.diagram(TadicQt).unwrap();
            assert!(check_functoriality(&d, &sample_points(preset, &TadicQt, 10, 7), Target::RealTrop).pass);
        }
    }

    #[test]
    fn grid() {
        let g = grid_rationals(5);
        assert_eq!(g.first(), Some(&Rational::from(-5)));
        assert!(g.contains(&"2/3".parse().unwrap()));
        assert_eq!(g.iter().filter(|x| x.is_zero()).count(), 1);
    }
}
