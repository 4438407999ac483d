//! Finitely presented algebras k[x]/I, closed embeddings given by generator
//! lists, ideal membership and the monomial band model of an embedding.

mod linsolve;
mod load;
mod model;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Field;
use crate::poly::{Exponents, ParseError, Poly};
use crate::zoo::ValuedField;

pub use load::{EmbeddingSpec, PolySpec};
pub use model::{extend_embedding, toric_factor, ModelElem, MonomialModel, ToricMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ideal generators must be nonzero")]
    ZeroGenerator,
    #[error("polynomial has {got} variables, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("duplicate or empty variable name `{0}`")]
    BadName(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("bad exponent key `{0}`")]
    BadExponents(String),
    #[error("cannot parse presentation: {0}")]
    Format(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("embeddings belong to different presentations")]
    PresentationMismatch,
    #[error("relation not expressible in the generators: {0}")]
    NotExpressible(String),
    #[error("generator {index} ({generator}) is not the prescribed monomial: membership {membership}")]
    Rejected { index: usize, generator: String, membership: Membership },
    #[error("point {point} does not satisfy {relation}")]
    NotOnVariety { point: String, relation: String },
}

/// Outcome of an ideal membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Yes => "yes",
            Membership::No => "no",
            Membership::Unknown => "unknown",
        })
    }
}

/// R = k[x_1..x_n]/I over a valued field.
#[derive(Debug, Clone)]
pub struct Presentation<V: ValuedField> {
    pub field: V,
    vars: Vec<String>,
    gens: Vec<Poly<V::F>>,
}

impl<V: ValuedField> PartialEq for Presentation<V> {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id() && self.vars == other.vars && self.gens == other.gens
    }
}

impl<V: ValuedField> Presentation<V> {
    pub fn new(field: V, vars: Vec<String>, gens: Vec<Poly<V::F>>) -> Result<Self, AlgebraError> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(AlgebraError::BadName(v.clone()));
            }
        }
        for g in &gens {
            if g.is_zero() {
                return Err(AlgebraError::ZeroGenerator);
            }
            if g.nvars() != vars.len() {
                return Err(AlgebraError::Arity { expected: vars.len(), got: g.nvars() });
            }
        }
        Ok(Presentation { field, vars, gens })
    }

    /// Parses generator expressions in the given variable names.
    pub fn parse(field: V, vars: &[&str], gens: &[&str]) -> Result<Self, AlgebraError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| crate::poly::parse_expr(g).and_then(|e| e.to_poly::<V::F>(&vars)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, vars, gens)
    }

    /// Affine n-space: no relations.
    pub fn affine(field: V, vars: &[&str]) -> Result<Self, AlgebraError> {
        Self::parse(field, vars, &[])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Poly<V::F>] {
        &self.gens
    }

    pub fn poly(&self, expr: &str) -> Result<Poly<V::F>, AlgebraError> {
        Ok(crate::poly::parse_expr(expr)?.to_poly(&self.vars)?)
    }

    pub fn show(&self, p: &Poly<V::F>) -> String {
        p.display(&self.vars)
    }

    /// Bound used when none is given: two above the degrees involved.
    pub fn default_bound(&self, f: &Poly<V::F>) -> u32 {
        let gdeg = self.gens.iter().filter_map(Poly::degree).max().unwrap_or(0);
        f.degree().unwrap_or(0).max(gdeg) + 2
    }

    pub fn member(&self, f: &Poly<V::F>) -> Membership {
        ideal_member(f, self, self.default_bound(f))
    }

    /// Whether `point` satisfies every generator exactly.
    pub fn contains_point(&self, point: &[V::F]) -> Result<(), AlgebraError> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::Arity { expected: self.nvars(), got: point.len() });
        }
        match self.gens.iter().find(|g| !g.eval(point).is_zero()) {
            None => Ok(()),
            Some(g) => Err(AlgebraError::NotOnVariety { point: show_point(point), relation: self.show(g) }),
        }
    }
}

pub(crate) fn show_point<F: fmt::Display>(p: &[F]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Decides f ∈ I. The zero ideal and principal ideals are decided exactly;
/// otherwise the multiples m·g_i of degree at most `degree_bound` are
/// searched for a combination equal to f, and `Unknown` is returned when
/// none exists.
pub fn ideal_member<V: ValuedField>(f: &Poly<V::F>, p: &Presentation<V>, degree_bound: u32) -> Membership {
    if f.is_zero() {
        return Membership::Yes;
    }
    match p.gens.as_slice() {
        [] => Membership::No,
        [g] => {
            if f.div_rem(g).1.is_zero() {
                Membership::Yes
            } else {
                Membership::No
            }
        }
        gens => {
            let bound = degree_bound.max(f.degree().unwrap_or(0));
            if macaulay_solvable(f, gens, p.nvars(), bound) {
                Membership::Yes
            } else {
                Membership::Unknown
            }
        }
    }
}

fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Exponents> {
    let mut out = vec![Vec::new()];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=deg - used {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

fn macaulay_solvable<F: Field>(f: &Poly<F>, gens: &[Poly<F>], nvars: usize, bound: u32) -> bool {
    let mut columns: Vec<Poly<F>> = Vec::new();
    for g in gens {
        let Some(d) = g.degree() else { continue };
        if d > bound {
            continue;
        }
        for m in monomials_up_to(nvars, bound - d) {
            columns.push(g.mul_monomial(&F::one(), &m));
        }
    }
    let mut row_of: BTreeMap<Exponents, usize> = BTreeMap::new();
    for p in columns.iter().chain(std::iter::once(f)) {
        for (e, _) in p.terms() {
            let next = row_of.len();
            row_of.entry(e.clone()).or_insert(next);
        }
    }
    let mut rows = vec![vec![F::zero(); columns.len() + 1]; row_of.len()];
    for (j, p) in columns.iter().enumerate() {
        for (e, c) in p.terms() {
            rows[row_of[e]][j] = c.clone();
        }
    }
    for (e, c) in f.terms() {
        rows[row_of[e]][columns.len()] = c.clone();
    }
    linsolve::is_consistent(rows)
}

/// A generator list a_1..a_m of R, giving a closed embedding into 𝔸^m.
#[derive(Debug, Clone)]
pub struct Embedding<V: ValuedField> {
    pres: Presentation<V>,
    gens: Vec<Poly<V::F>>,
    names: Vec<String>,
    canonical: bool,
}

impl<V: ValuedField> Embedding<V> {
    /// a_i = x_i.
    pub fn canonical(pres: &Presentation<V>) -> Self {
        let n = pres.nvars();
        Embedding {
            pres: pres.clone(),
            gens: (0..n).map(|i| Poly::var(n, i)).collect(),
            names: pres.vars.clone(),
            canonical: true,
        }
    }

    /// An arbitrary list of elements of R. Whether they generate R is not
    /// checked; use [`extend_embedding`] for embeddings known to generate.
    pub fn from_generators(pres: &Presentation<V>, gens: Vec<Poly<V::F>>) -> Result<Self, AlgebraError> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != pres.nvars()) {
            return Err(AlgebraError::Arity { expected: pres.nvars(), got: g.nvars() });
        }
        let mut emb = Embedding { pres: pres.clone(), gens: Vec::new(), names: Vec::new(), canonical: false };
        for g in gens {
            emb.push(g);
        }
        Ok(emb)
    }

    pub(crate) fn push(&mut self, g: Poly<V::F>) {
        let name = match (0..self.pres.nvars()).find(|&i| g == Poly::var(self.pres.nvars(), i)) {
            Some(i) if !self.names.contains(&self.pres.vars[i]) => self.pres.vars[i].clone(),
            _ => {
                let mut name = format!("a{}", self.gens.len() + 1);
                while self.names.contains(&name) || self.pres.vars.contains(&name) {
                    name.push('\'');
                }
                name
            }
        };
        self.names.push(name);
        self.gens.push(g);
        self.canonical = false;
    }

    pub fn presentation(&self) -> &Presentation<V> {
        &self.pres
    }

    pub fn generators(&self) -> &[Poly<V::F>] {
        &self.gens
    }

    /// Coordinate names of 𝔸^m: the variable name for a generator x_i,
    /// `a<j>` otherwise.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn field(&self) -> &V {
        &self.pres.field
    }

    /// Generator list as readable text, e.g. `(t, t + 1)`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| self.pres.show(g)).collect();
        format!("({})", parts.join(", "))
    }

    /// Images a_j(P) of a point of X.
    pub fn coords(&self, point: &[V::F]) -> Result<Vec<V::F>, AlgebraError> {
        self.pres.contains_point(point)?;
        Ok(self.gens.iter().map(|g| g.eval(point)).collect())
    }

    /// Defining relations of the image in 𝔸^m, as polynomials in the
    /// generator coordinates: each ideal generator rewritten through the
    /// coordinates a_j = x_i, and a_j − g_j(x) for the remaining generators.
    /// Needs every variable to occur among the generators.
    pub fn relations(&self) -> Result<Vec<Poly<V::F>>, AlgebraError> {
        let n = self.pres.nvars();
        let m = self.gens.len();
        let mut var_pos = Vec::with_capacity(n);
        for i in 0..n {
            match self.gens.iter().position(|g| *g == Poly::var(n, i)) {
                Some(j) => var_pos.push(j),
                None => {
                    return Err(AlgebraError::NotExpressible(format!(
                        "variable {} is not among the generators",
                        self.pres.vars[i]
                    )))
                }
            }
        }
        let images: Vec<Poly<V::F>> = var_pos.iter().map(|&j| Poly::var(m, j)).collect();
        let mut out: Vec<Poly<V::F>> = self.pres.gens.iter().map(|g| g.compose(&images)).collect();
        for (j, g) in self.gens.iter().enumerate() {
            if var_pos.contains(&j) {
                continue;
            }
            out.push(Poly::var(m, j).sub(&g.compose(&images)));
        }
        Ok(out)
    }

    pub(crate) fn same_presentation(&self, other: &Embedding<V>) -> Result<(), AlgebraError> {
        if self.pres == other.pres {
            Ok(())
        } else {
            Err(AlgebraError::PresentationMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::zoo::{TadicQt, TrivialQ};

    fn pres(vars: &[&str], gens: &[&str]) -> Presentation<TrivialQ> {
        Presentation::parse(TrivialQ, vars, gens).unwrap()
    }

    #[test]
    fn principal_membership_is_exact() {
        let p = pres(&["x", "y"], &["x - y"]);
        assert_eq!(ideal_member(&p.poly("x^2 - y^2").unwrap(), &p, 2), Membership::Yes);
        let p = pres(&["x"], &["x"]);
        for b in 0..5 {
            assert_eq!(ideal_member(&p.poly("1").unwrap(), &p, b), Membership::No);
        }
        let p = pres(&["x"], &["x^2"]);
        assert_eq!(ideal_member(&p.poly("x").unwrap(), &p, 1), Membership::No);
        assert_eq!(ideal_member(&p.poly("x^3 - 2x^2").unwrap(), &p, 3), Membership::Yes);
    }

    #[test]
    fn zero_ideal() {
        let p = pres(&["x", "y"], &[]);
        assert_eq!(p.member(&p.poly("x + y").unwrap()), Membership::No);
        assert_eq!(p.member(&p.poly("x + y - y - x").unwrap()), Membership::Yes);
    }

    #[test]
    fn general_ideals_by_linear_algebra() {
        let p = pres(&["x", "y", "z"], &["x - y", "y - z"]);
        assert_eq!(p.member(&p.poly("x - z").unwrap()), Membership::Yes);
        assert_eq!(p.member(&p.poly("x^2 - z^2").unwrap()), Membership::Yes);
        assert_eq!(p.member(&p.poly("x").unwrap()), Membership::Unknown);
        // 1 = (1 - xy)(xy + 1) + y²·x² only shows up at degree 4
        let p = pres(&["x", "y"], &["x^2", "x*y + 1"]);
        assert_eq!(ideal_member(&p.poly("1").unwrap(), &p, 4), Membership::Yes);
        assert_eq!(ideal_member(&p.poly("1").unwrap(), &p, 3), Membership::Unknown);
    }

    #[test]
    fn coefficients_in_rational_functions() {
        let p = Presentation::parse(TadicQt, &["x", "y"], &["x + y + t"]).unwrap();
        assert_eq!(p.member(&p.poly("x^2 + x*y + t*x").unwrap()), Membership::Yes);
        assert_eq!(p.member(&p.poly("x + y + 1").unwrap()), Membership::No);
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(Presentation::parse(TrivialQ, &["x"], &["x - x"]), Err(AlgebraError::ZeroGenerator));
        assert!(matches!(Presentation::parse(TrivialQ, &["x", "x"], &[]), Err(AlgebraError::BadName(_))));
        let p = pres(&["x", "y"], &["x + y + 1"]);
        let q = |n| Rational::from(n);
        assert!(p.contains_point(&[q(3), q(-4)]).is_ok());
        assert!(p.contains_point(&[q(3), q(4)]).is_err());
    }

    #[test]
    fn relations_of_embeddings() {
        let p = pres(&["t"], &[]);
        let e = Embedding::from_generators(&p, vec![p.poly("t").unwrap(), p.poly("t + 1").unwrap()]).unwrap();
        assert_eq!(e.names(), ["t", "a2"]);
        let rel = e.relations().unwrap();
        assert_eq!(rel.len(), 1);
        assert_eq!(rel[0].display(e.names()), "-t + a2 - 1");
        let only = Embedding::from_generators(&p, vec![p.poly("t + 1").unwrap()]).unwrap();
        assert!(matches!(only.relations(), Err(AlgebraError::NotExpressible(_))));

        let p = pres(&["x", "y"], &["x + y + 1"]);
        let rel = Embedding::canonical(&p).relations().unwrap();
        assert_eq!(rel, p.generators());
    }
}
