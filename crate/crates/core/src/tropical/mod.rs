//! 𝕋- and ℝ𝕋-points of monomial band models: bend conditions,
//! tropicalization of rational points and plane tropical curves.

mod curve;

use thiserror::Error;

use crate::algebra::{AlgebraError, MonomialModel};
use crate::arith::{NonNegRational, Rational};
use crate::poly::Poly;
use crate::zoo::{signed_abs, RealTropical, Tropical, ValuedField};

pub use curve::{bend_null_additive, trop_curve_2d, Line, Ray, TropCurve2D};

/// Multiplicative coordinates |a_i| of a 𝕋-point.
pub type TropPoint = Vec<NonNegRational>;

/// Signed coordinates sign(a_i)·|a_i| of an ℝ𝕋-point.
pub type RealTropPoint = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("point has {got} coordinates, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("field {0} has no ordering")]
    Unordered(String),
    #[error("plane curves need a polynomial in 2 variables, got {0}")]
    NotBivariate(usize),
    #[error("a monomial has an empty tropical curve")]
    Monomial,
}

/// |c_i|·w^{e_i} for every term.
pub fn term_values<V: ValuedField>(vf: &V, relation: &Poly<V::F>, w: &[NonNegRational]) -> Vec<NonNegRational> {
    relation
        .terms()
        .map(|(e, c)| {
            e.iter().zip(w).fold(vf.abs(c), |acc, (&k, x)| if k == 0 { acc } else { &acc * &x.pow(k.into()).unwrap() })
        })
        .collect()
}

/// Whether the term values of `relation` at w form a null sum of 𝕋: the
/// maximum is attained at least twice, or every term vanishes.
pub fn bend_null<V: ValuedField>(vf: &V, relation: &Poly<V::F>, w: &[NonNegRational]) -> bool {
    Tropical::max_attained_twice(&term_values(vf, relation, w))
}

/// sign(c_i)|c_i|·w^{e_i} with signs and magnitudes multiplied in ℝ𝕋.
pub fn signed_term_values<V: ValuedField>(vf: &V, relation: &Poly<V::F>, w: &[Rational]) -> Vec<Rational> {
    relation
        .terms()
        .map(|(e, c)| {
            e.iter()
                .zip(w)
                .fold(signed_abs(vf, c), |acc, (&k, x)| if k == 0 { acc } else { &acc * &x.pow(k.into()).unwrap() })
        })
        .collect()
}

pub fn real_bend_null<V: ValuedField>(vf: &V, relation: &Poly<V::F>, w: &[Rational]) -> bool {
    RealTropical::null_values(&signed_term_values(vf, relation, w))
}

fn check_len(expected: usize, got: usize) -> Result<(), TropError> {
    if expected == got {
        Ok(())
    } else {
        Err(TropError::Arity { expected, got })
    }
}

/// Membership in the tropical prevariety cut out by the embedding's
/// relations. For a principal ideal this is Trop(X, ι).
pub fn is_trop_point<V: ValuedField>(m: &MonomialModel<V>, w: &[NonNegRational]) -> Result<bool, TropError> {
    check_len(m.rank(), w.len())?;
    let vf = m.embedding().field();
    Ok(m.embedding().relations()?.iter().all(|r| bend_null(vf, r, w)))
}

/// w_i = |a_i(P)| for a point P of X.
pub fn trop_of_point<V: ValuedField>(m: &MonomialModel<V>, p: &[V::F]) -> Result<TropPoint, TropError> {
    let vf = m.embedding().field();
    Ok(m.embedding().coords(p)?.iter().map(|a| vf.abs(a)).collect())
}

pub fn is_real_trop_point<V: ValuedField>(m: &MonomialModel<V>, w: &[Rational]) -> Result<bool, TropError> {
    let vf = m.embedding().field();
    if !vf.is_ordered() {
        return Err(TropError::Unordered(vf.id()));
    }
    check_len(m.rank(), w.len())?;
    Ok(m.embedding().relations()?.iter().all(|r| real_bend_null(vf, r, w)))
}

/// w_i = sign(a_i(P))·|a_i(P)|.
pub fn real_trop_of_point<V: ValuedField>(m: &MonomialModel<V>, p: &[V::F]) -> Result<RealTropPoint, TropError> {
    let vf = m.embedding().field();
    if !vf.is_ordered() {
        return Err(TropError::Unordered(vf.id()));
    }
    Ok(m.embedding().coords(p)?.iter().map(|a| signed_abs(vf, a)).collect())
}

/// The morphism ℝ𝕋 → 𝕋 applied coordinatewise.
pub fn forget_signs(w: &[Rational]) -> TropPoint {
    w.iter().map(|x| NonNegRational::new(x.abs()).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{extend_embedding, Embedding, Presentation};
    use crate::arith::LaurentFrac;
    use crate::zoo::{PadicQ, TadicQt, TrivialQ};

    fn nn(s: &str) -> NonNegRational {
        s.parse().unwrap()
    }

    fn w(xs: &[&str]) -> TropPoint {
        xs.iter().map(|s| nn(s)).collect()
    }

    fn r(xs: &[&str]) -> RealTropPoint {
        xs.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn line<V: ValuedField>(vf: V, f: &str) -> MonomialModel<V> {
        let p = Presentation::parse(vf, &["x", "y"], &[f]).unwrap();
        MonomialModel::new(Embedding::canonical(&p))
    }

    #[test]
    fn bend_examples() {
        let p = Presentation::affine(TrivialQ, &["x", "y"]).unwrap();
        let f = p.poly("x + y + 1").unwrap();
        assert!(bend_null(&TrivialQ, &f, &w(&["1", "1"])));
        assert!(!bend_null(&TrivialQ, &f, &w(&["2", "1"])));
        assert!(bend_null(&TrivialQ, &f, &w(&["2", "2"])));
        assert!(bend_null(&TrivialQ, &Poly::zero(2), &w(&["2", "1"])));
        assert!(bend_null(&TrivialQ, &p.poly("x").unwrap(), &w(&["0", "1"])));
    }

    #[test]
    fn extended_affine_line() {
        let p = Presentation::affine(TrivialQ, &["t"]).unwrap();
        let (e, _) = extend_embedding(&Embedding::canonical(&p), &[p.poly("t + 1").unwrap()]).unwrap();
        let m = MonomialModel::new(e);
        assert!(is_trop_point(&m, &w(&["1", "1"])).unwrap());
        assert!(is_trop_point(&m, &w(&["1", "0"])).unwrap());
        assert!(!is_trop_point(&m, &w(&["1", "5"])).unwrap());
        assert!(is_trop_point(&m, &w(&["1"])).is_err());
        assert_eq!(trop_of_point(&m, &[Rational::from(1)]).unwrap(), w(&["1", "1"]));
        assert_eq!(trop_of_point(&m, &[Rational::from(-1)]).unwrap(), w(&["1", "0"]));
    }

    #[test]
    fn padic_point() {
        let m = line(PadicQ::new(3).unwrap(), "x + y + 1");
        let t = trop_of_point(&m, &[Rational::from(3), Rational::from(-4)]).unwrap();
        assert_eq!(t, w(&["1/3", "1"]));
        assert!(is_trop_point(&m, &t).unwrap());
        assert!(trop_of_point(&m, &[Rational::from(3), Rational::from(4)]).is_err());
        assert!(matches!(is_real_trop_point(&m, &r(&["1", "1"])), Err(TropError::Unordered(_))));
    }

    #[test]
    fn real_examples() {
        let m = line(TrivialQ, "x + y + 1");
        assert!(is_real_trop_point(&m, &r(&["-1", "-1"])).unwrap());
        assert!(!is_real_trop_point(&m, &r(&["1", "1"])).unwrap());
        assert!(is_real_trop_point(&m, &r(&["-2", "2"])).unwrap());
        assert_eq!(real_trop_of_point(&m, &[Rational::from(1), Rational::from(-2)]).unwrap(), r(&["1", "-1"]));

        let m = line(TadicQt, "x + y + 1");
        let t = LaurentFrac::t();
        let p = [LaurentFrac::one().neg().sub(&t), t];
        let rt = real_trop_of_point(&m, &p).unwrap();
        assert_eq!(rt, r(&["-1", "1/2"]));
        assert!(is_real_trop_point(&m, &rt).unwrap());
        let z = [LaurentFrac::one().neg(), LaurentFrac::zero()];
        assert_eq!(real_trop_of_point(&m, &z).unwrap(), r(&["-1", "0"]));
        assert_eq!(forget_signs(&rt), w(&["1", "1/2"]));
    }
}
