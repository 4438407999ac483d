use band_kernel::algebra::{Embedding, Presentation};
use band_kernel::arith::Rational;
use band_kernel::limits::{
    check_functoriality, cofinal_embedding, family_from_point, grid_rationals, sample_points, separate, Family,
    LimitError, Preset, Target,
};
use band_kernel::zoo::{PadicQ, TadicQt, TrivialQ, ValuedField};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn functorial<V: ValuedField>(preset: Preset, vf: V, target: Target) {
    let d = preset.diagram(vf.clone()).unwrap();
    let pts = sample_points(preset, &vf, 100, 9);
    let r = check_functoriality(&d, &pts, target);
    assert!(r.pass, "{} over {}: {:?}", preset.name(), vf.id(), r.witness);
}

#[test]
fn presets_are_functorial() {
    functorial(Preset::Line, TrivialQ, Target::Trop);
    functorial(Preset::Line, TrivialQ, Target::RealTrop);
    functorial(Preset::Line, PadicQ::new(3).unwrap(), Target::Trop);
    functorial(Preset::Line, TadicQt, Target::RealTrop);
    functorial(Preset::Conic, TrivialQ, Target::Trop);
    functorial(Preset::Conic, PadicQ::new(5).unwrap(), Target::Trop);
}

#[test]
fn closed_diagram_records_the_composite() {
    let d = Preset::Line.diagram(TrivialQ).unwrap();
    assert_eq!(d.nodes().len(), 3);
    // 2 extensions plus their composite
    assert_eq!(d.arrows().len(), 3);
    assert_eq!(d.compositions().len(), 1);
}

#[test]
fn families_serialize_and_agree_with_nodes() {
    let d = Preset::Line.diagram(TrivialQ).unwrap();
    for p in sample_points(Preset::Line, &TrivialQ, 20, 1) {
        let fam = family_from_point(&d, &p, Target::RealTrop).unwrap();
        assert_eq!(fam.nodes, vec!["(t)", "(t, t + 1)", "(t, t + 1, t^2)"]);
        let Family::RealTrop(pts) = &fam.family else { panic!("wrong target") };
        assert_eq!(pts.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 3]);
        let back = serde_json::from_str(&serde_json::to_string(&fam).unwrap()).unwrap();
        assert_eq!(fam, back);
    }
}

#[test]
fn separation_on_the_padic_grid() {
    let pres = Presentation::affine(PadicQ::new(3).unwrap(), &["t"]).unwrap();
    let iota0 = Embedding::canonical(&pres);
    let grid = grid_rationals(5);
    assert_eq!(grid.len(), 39);
    let mut tiers = [0usize; 4];
    for (i, a) in grid.iter().enumerate() {
        for b in &grid[i + 1..] {
            let s = separate(std::slice::from_ref(a), std::slice::from_ref(b), &iota0, &[], 3).unwrap();
            assert_ne!(s.image_p, s.image_q);
            tiers[s.tier] += 1;
        }
    }
    assert_eq!(tiers.iter().sum::<usize>(), 39 * 38 / 2);
}

#[test]
fn separation_errors() {
    let pres = Presentation::affine(TrivialQ, &["t"]).unwrap();
    let iota0 = Embedding::canonical(&pres);
    assert!(matches!(separate(&[q(2)], &[q(2)], &iota0, &[], 3), Err(LimitError::SamePoint)));
    let half = Rational::new(1, 2).unwrap();
    let third = Rational::new(2, 3).unwrap();
    assert!(matches!(
        separate(std::slice::from_ref(&half), std::slice::from_ref(&third), &iota0, &[], 2),
        Err(LimitError::Exhausted(2))
    ));
    let s = separate(&[half], &[third], &iota0, &[], 3).unwrap();
    assert_eq!(s.tier, 3);
}

#[test]
fn user_elements_come_first_in_the_last_tier() {
    let pres = Presentation::affine(TrivialQ, &["t"]).unwrap();
    let iota0 = Embedding::canonical(&pres);
    let user = vec![pres.poly("2t - 1").unwrap()];
    let s = separate(&[Rational::new(1, 2).unwrap()], &[Rational::new(2, 3).unwrap()], &iota0, &user, 3).unwrap();
    assert_eq!(s.embedding.describe(), "(t, 2*t - 1)");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn refinement_only_adds_coordinates(a in -5i64..=5, b in 1i64..=5, c in -5i64..=5) {
        let pres = Presentation::affine(TrivialQ, &["t"]).unwrap();
        let iota0 = Embedding::canonical(&pres);
        let p = Rational::new(a, b).unwrap();
        let f = pres.poly(&format!("t + {}", c.abs())).unwrap();
        let e1 = cofinal_embedding(std::slice::from_ref(&f), &iota0).unwrap();
        let e2 = cofinal_embedding(&[f.clone(), f], &iota0).unwrap();
        prop_assert_eq!(e1.len(), e2.len());
        let c1 = e1.coords(std::slice::from_ref(&p)).unwrap();
        prop_assert_eq!(&c1[..1], &[p][..]);
    }
}
