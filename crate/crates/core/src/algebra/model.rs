use std::fmt;

use super::{ideal_member, AlgebraError, Embedding, Membership};
use crate::arith::{Field, NonNegRational, Rational};
use crate::poly::{Exponents, Poly};
use crate::zoo::{signed_abs, ValuedField};

/// The element c·a^e of R_ι.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelElem<F> {
    pub coeff: F,
    pub exps: Exponents,
}

impl<F: Field> ModelElem<F> {
    pub fn new(coeff: F, exps: Exponents) -> Self {
        ModelElem { coeff, exps }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ModelElem {
            coeff: self.coeff.mul(&other.coeff),
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        let mono: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        match (mono.is_empty(), self.coeff.is_one()) {
            (true, _) => format!("{}", self.coeff),
            (false, true) => mono.join("*"),
            (false, false) => format!("({})*{}", self.coeff, mono.join("*")),
        }
    }
}

impl<F: fmt::Display> fmt::Display for ModelElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exps.iter().map(ToString::to_string).collect();
        write!(f, "{}·a^({})", self.coeff, e.join(","))
    }
}

/// R_ι: the monomials c·a^e in the generators of an embedding, with the
/// null sums of R that consist of such monomials.
#[derive(Debug, Clone)]
pub struct MonomialModel<V: ValuedField> {
    emb: Embedding<V>,
}

impl<V: ValuedField> MonomialModel<V> {
    pub fn new(emb: Embedding<V>) -> Self {
        MonomialModel { emb }
    }

    pub fn embedding(&self) -> &Embedding<V> {
        &self.emb
    }

    pub fn rank(&self) -> usize {
        self.emb.len()
    }

    pub fn elem(&self, coeff: V::F, exps: Exponents) -> Result<ModelElem<V::F>, AlgebraError> {
        if exps.len() != self.rank() {
            return Err(AlgebraError::Arity { expected: self.rank(), got: exps.len() });
        }
        Ok(ModelElem::new(coeff, exps))
    }

    pub fn one(&self) -> ModelElem<V::F> {
        ModelElem::new(V::F::one(), vec![0; self.rank()])
    }

    /// c·Π a_j^{e_j} as a polynomial in x.
    pub fn expand(&self, a: &ModelElem<V::F>) -> Poly<V::F> {
        let n = self.emb.presentation().nvars();
        let mut p = Poly::constant(n, a.coeff.clone());
        for (g, &e) in self.emb.generators().iter().zip(&a.exps) {
            if e > 0 && !p.is_zero() {
                p = p.mul(&g.pow(e));
            }
        }
        p
    }

    fn decide(&self, f: &Poly<V::F>, bound: Option<u32>) -> Membership {
        let pres = self.emb.presentation();
        ideal_member(f, pres, bound.unwrap_or_else(|| pres.default_bound(f)))
    }

    /// Equality in R, i.e. a − b ∈ I.
    pub fn equal(&self, a: &ModelElem<V::F>, b: &ModelElem<V::F>, bound: Option<u32>) -> Membership {
        self.decide(&self.expand(a).sub(&self.expand(b)), bound)
    }

    pub fn is_zero(&self, a: &ModelElem<V::F>) -> Membership {
        self.decide(&self.expand(a), None)
    }

    /// Σ c_i·a^{e_i} ∈ I.
    pub fn model_null(&self, sum: &[ModelElem<V::F>], bound: Option<u32>) -> Membership {
        let n = self.emb.presentation().nvars();
        let total = sum.iter().fold(Poly::zero(n), |acc, a| acc.add(&self.expand(a)));
        self.decide(&total, bound)
    }
}

/// A monomial map φ: 𝔸^m → 𝔸^r, the j-th target coordinate being c_j·a^{E_j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricMorphism<F> {
    source: usize,
    monomials: Vec<(F, Exponents)>,
}

impl<F: Field> ToricMorphism<F> {
    pub fn new(source: usize, monomials: Vec<(F, Exponents)>) -> Result<Self, AlgebraError> {
        if let Some((_, e)) = monomials.iter().find(|(_, e)| e.len() != source) {
            return Err(AlgebraError::Arity { expected: source, got: e.len() });
        }
        Ok(ToricMorphism { source, monomials })
    }

    pub fn identity(m: usize) -> Self {
        Self::projection(m, &(0..m).collect::<Vec<_>>())
    }

    /// Keeps the listed coordinates of 𝔸^m, in order.
    pub fn projection(m: usize, keep: &[usize]) -> Self {
        let monomials = keep.iter().map(|&i| (F::one(), unit(m, i))).collect();
        ToricMorphism { source: m, monomials }
    }

    pub fn source_dim(&self) -> usize {
        self.source
    }

    pub fn target_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[(F, Exponents)] {
        &self.monomials
    }

    /// ψ ∘ φ, with `self` = φ applied first.
    pub fn then(&self, psi: &ToricMorphism<F>) -> Result<ToricMorphism<F>, AlgebraError> {
        if psi.source != self.target_dim() {
            return Err(AlgebraError::Arity { expected: self.target_dim(), got: psi.source });
        }
        let monomials = psi
            .monomials
            .iter()
            .map(|(d, f)| {
                let mut c = d.clone();
                let mut e = vec![0; self.source];
                for ((cj, ej), &k) in self.monomials.iter().zip(f) {
                    c = c.mul(&cj.pow(k));
                    for (a, b) in e.iter_mut().zip(ej) {
                        *a += b * k;
                    }
                }
                (c, e)
            })
            .collect();
        Ok(ToricMorphism { source: self.source, monomials })
    }

    /// The inclusion R_ȷ → R_ι sending b^e to its monomial in the a's.
    pub fn include(&self, b: &ModelElem<F>) -> ModelElem<F> {
        let mut c = b.coeff.clone();
        let mut e = vec![0; self.source];
        for ((cj, ej), &k) in self.monomials.iter().zip(&b.exps) {
            if k == 0 {
                continue;
            }
            c = c.mul(&cj.pow(k));
            for (a, x) in e.iter_mut().zip(ej) {
                *a += x * k;
            }
        }
        ModelElem::new(c, e)
    }

    pub fn apply_point(&self, a: &[F]) -> Vec<F> {
        self.monomials
            .iter()
            .map(|(c, e)| e.iter().zip(a).fold(c.clone(), |acc, (&k, x)| if k == 0 { acc } else { acc.mul(&x.pow(k)) }))
            .collect()
    }

    /// The induced map on 𝕋-points: w ↦ (|c_j|·w^{E_j})_j.
    pub fn apply_trop<V: ValuedField<F = F>>(&self, vf: &V, w: &[NonNegRational]) -> Vec<NonNegRational> {
        self.monomials
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .zip(w)
                    .fold(vf.abs(c), |acc, (&k, x)| if k == 0 { acc } else { &acc * &x.pow(k as i64).unwrap() })
            })
            .collect()
    }

    /// The induced map on ℝ𝕋-points, signs multiplied alongside magnitudes.
    pub fn apply_real_trop<V: ValuedField<F = F>>(&self, vf: &V, w: &[Rational]) -> Vec<Rational> {
        self.monomials
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .zip(w)
                    .fold(signed_abs(vf, c), |acc, (&k, x)| if k == 0 { acc } else { &acc * &x.pow(k as i64).unwrap() })
            })
            .collect()
    }
}

fn unit(m: usize, i: usize) -> Exponents {
    let mut e = vec![0; m];
    e[i] = 1;
    e
}

/// ι' = ι followed by the extra generators, with the projection φ: 𝔸^{m+r} → 𝔸^m
/// satisfying ι = φ ∘ ι'.
pub fn extend_embedding<V: ValuedField>(
    iota: &Embedding<V>,
    extras: &[Poly<V::F>],
) -> Result<(Embedding<V>, ToricMorphism<V::F>), AlgebraError> {
    let n = iota.presentation().nvars();
    if let Some(g) = extras.iter().find(|g| g.nvars() != n) {
        return Err(AlgebraError::Arity { expected: n, got: g.nvars() });
    }
    let mut ext = iota.clone();
    for g in extras {
        ext.push(g.clone());
    }
    ext.canonical = iota.canonical && extras.is_empty();
    let m = iota.len();
    Ok((ext, ToricMorphism::projection(m + extras.len(), &(0..m).collect::<Vec<_>>())))
}

/// Verifies ȷ = φ ∘ ι in R: each ȷ-generator minus its prescribed monomial
/// in the ι-generators must lie in I. Returns φ, whose
/// [`ToricMorphism::include`] realizes R_ȷ ⊆ R_ι.
pub fn toric_factor<V: ValuedField>(
    iota: &Embedding<V>,
    jota: &Embedding<V>,
    phi: ToricMorphism<V::F>,
) -> Result<ToricMorphism<V::F>, AlgebraError> {
    iota.same_presentation(jota)?;
    if phi.source_dim() != iota.len() {
        return Err(AlgebraError::Arity { expected: iota.len(), got: phi.source_dim() });
    }
    if phi.target_dim() != jota.len() {
        return Err(AlgebraError::Arity { expected: jota.len(), got: phi.target_dim() });
    }
    let model = MonomialModel::new(iota.clone());
    let pres = iota.presentation();
    for (j, (b, (c, e))) in jota.generators().iter().zip(phi.monomials()).enumerate() {
        let diff = b.sub(&model.expand(&ModelElem::new(c.clone(), e.clone())));
        let membership = pres.member(&diff);
        if membership != Membership::Yes {
            return Err(AlgebraError::Rejected { index: j, generator: pres.show(b), membership });
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::super::Presentation;
    use super::*;
    use crate::zoo::{PadicQ, TrivialQ};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn model(vars: &[&str], gens: &[&str]) -> MonomialModel<TrivialQ> {
        let p = Presentation::parse(TrivialQ, vars, gens).unwrap();
        MonomialModel::new(Embedding::canonical(&p))
    }

    #[test]
    fn model_null_examples() {
        let m = model(&["x"], &["x^2 - 2"]);
        let s = [m.elem(q(1), vec![2]).unwrap(), m.elem(q(-2), vec![0]).unwrap()];
        assert_eq!(m.model_null(&s, None), Membership::Yes);

        let m = model(&["x", "y"], &[]);
        let s = [m.elem(q(1), vec![1, 0]).unwrap(), m.elem(q(1), vec![0, 1]).unwrap()];
        assert_eq!(m.model_null(&s, None), Membership::No);

        let m = model(&["x", "y"], &["x + y - 1"]);
        let s =
            [m.elem(q(1), vec![1, 0]).unwrap(), m.elem(q(1), vec![0, 1]).unwrap(), m.elem(q(-1), vec![0, 0]).unwrap()];
        assert_eq!(m.model_null(&s, None), Membership::Yes);
    }

    #[test]
    fn extend_examples() {
        let p = Presentation::affine(TrivialQ, &["t"]).unwrap();
        let iota = Embedding::canonical(&p);
        let (ext, phi) = extend_embedding(&iota, &[p.poly("t + 1").unwrap()]).unwrap();
        assert_eq!(ext.describe(), "(t, t + 1)");
        assert_eq!(phi, ToricMorphism::projection(2, &[0]));
        assert!(toric_factor(&ext, &iota, phi).is_ok());

        let (same, id) = extend_embedding(&iota, &[]).unwrap();
        assert!(same.is_canonical());
        assert_eq!(id, ToricMorphism::identity(1));

        let (sq, phi) = extend_embedding(&iota, &[p.poly("t*t").unwrap()]).unwrap();
        assert_eq!(sq.describe(), "(t, t^2)");
        assert_eq!(phi.apply_point(&[q(3), q(9)]), vec![q(3)]);
    }

    #[test]
    fn toric_factor_examples() {
        let p = Presentation::affine(TrivialQ, &["x", "y"]).unwrap();
        let iota = Embedding::canonical(&p);
        let jota = Embedding::from_generators(&p, vec![p.poly("x*y").unwrap()]).unwrap();
        let phi = ToricMorphism::new(2, vec![(q(1), vec![1, 1])]).unwrap();
        let phi = toric_factor(&iota, &jota, phi).unwrap();
        let b = ModelElem::new(q(5), vec![2]);
        assert_eq!(phi.include(&b), ModelElem::new(q(5), vec![2, 2]));

        let p = Presentation::affine(TrivialQ, &["t"]).unwrap();
        let iota = Embedding::canonical(&p);
        let jota = Embedding::from_generators(&p, vec![p.poly("t + 1").unwrap()]).unwrap();
        let err = toric_factor(&iota, &jota, ToricMorphism::identity(1)).unwrap_err();
        assert!(matches!(err, AlgebraError::Rejected { index: 0, membership: Membership::No, .. }));
    }

    #[test]
    fn factoring_through_the_quotient() {
        // 2x²y = 2x modulo x·y − 1
        let p = Presentation::parse(TrivialQ, &["x", "y"], &["x*y - 1"]).unwrap();
        let iota = Embedding::canonical(&p);
        let jota = Embedding::from_generators(&p, vec![p.poly("1").unwrap(), p.poly("2x^2*y").unwrap()]).unwrap();
        let phi = ToricMorphism::new(2, vec![(q(1), vec![0, 0]), (q(2), vec![1, 0])]).unwrap();
        assert!(toric_factor(&iota, &jota, phi).is_ok());
    }

    #[test]
    fn composition_and_trop_maps() {
        let phi = ToricMorphism::new(2, vec![(q(3), vec![1, 1]), (q(1), vec![0, 2])]).unwrap();
        let psi = ToricMorphism::new(2, vec![(q(2), vec![2, 1])]).unwrap();
        let comp = phi.then(&psi).unwrap();
        assert_eq!(comp.monomials(), &[(q(18), vec![2, 4])]);
        let a = [q(2), q(5)];
        assert_eq!(comp.apply_point(&a), psi.apply_point(&phi.apply_point(&a)));

        let vf = PadicQ::new(3).unwrap();
        let w = [NonNegRational::from_integer(3), NonNegRational::one()];
        let mid = phi.apply_trop(&vf, &w);
        assert_eq!(mid[0], NonNegRational::one());
        assert_eq!(comp.apply_trop(&vf, &w), psi.apply_trop(&vf, &mid));
        assert_eq!(phi.apply_real_trop(&TrivialQ, &[q(-1), q(-1)]), vec![q(1), q(1)]);
    }
}
