//! Sparse multivariate polynomials over an exact field.

mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::Field;

pub use parse::{parse_expr, symbols, Expr, ParseError};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Polynomial in a fixed number of variables. Terms are keyed by exponent
/// vectors compared lexicographically, so the last key is the lex-leading
/// monomial with x₁ > x₂ > ….
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(F::one(), e)
    }

    pub fn monomial(c: F, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        let nvars = exps.len();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, F)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                let s = slot.add(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut r = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect() }
    }

    pub fn mul_monomial(&self, c: &F, exps: &[u32]) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), v.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars, "point dimension");
        self.terms.iter().fold(F::zero(), |acc, (e, c)| {
            let m = e.iter().zip(point).fold(c.clone(), |m, (k, x)| m.mul(&x.pow(*k)));
            acc.add(&m)
        })
    }

    /// Substitutes `images[i]` for variable i. All images share one ring.
    pub fn compose(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut r = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut m = Poly::constant(target, c.clone());
            for (img, k) in images.iter().zip(e) {
                if *k > 0 {
                    m = m.mul(&img.pow(*k));
                }
            }
            r = r.add(&m);
        }
        r
    }

    /// Division by a single polynomial with full reduction of the remainder.
    /// `{g}` is a Gröbner basis of `(g)`, so the remainder vanishes exactly
    /// when `g` divides `self`.
    pub fn div_rem(&self, g: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let (ge, gc) = g.leading_term().expect("division by zero polynomial");
        let (ge, gc_inv) = (ge.clone(), gc.inv().unwrap());
        let mut q = Poly::zero(self.nvars);
        let mut rem = Poly::zero(self.nvars);
        let mut p = self.clone();
        while let Some((pe, pc)) = p.leading_term() {
            let (pe, pc) = (pe.clone(), pc.clone());
            if pe.iter().zip(&ge).all(|(a, b)| a >= b) {
                let e: Exponents = pe.iter().zip(&ge).map(|(a, b)| a - b).collect();
                let c = pc.mul(&gc_inv);
                p = p.sub(&g.mul_monomial(&c, &e));
                q.add_term(e, c);
            } else {
                p.terms.remove(&pe);
                rem.add_term(pe, pc);
            }
        }
        (q, rem)
    }

    /// Re-embeds into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> Poly<F> {
        assert!(nvars >= self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) if !rest.starts_with('(') && !text.contains(' ') => (true, rest.to_string()),
                _ => (false, text),
            };
            let mag = if mag.contains(' ') && !mag.starts_with('(') { format!("({mag})") } else { mag };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(j, k)| if *k == 1 { names[j].clone() } else { format!("{}^{k}", names[j]) })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    let _ = write!(out, "{mag}*");
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Default variable names x1, x2, … .
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LaurentFrac, Rational};

    fn p(s: &str, vars: &[&str]) -> Poly<Rational> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        parse_expr(s).unwrap().to_poly(&vars).unwrap()
    }

    #[test]
    fn arithmetic_and_eval() {
        let f = p("x^2 - y^2", &["x", "y"]);
        let g = p("(x - y)*(x + y)", &["x", "y"]);
        assert_eq!(f, g);
        assert_eq!(f.eval(&[Rational::from(3), Rational::from(1)]), Rational::from(8));
        assert_eq!(f.degree(), Some(2));
    }

    #[test]
    fn division_remainder() {
        let f = p("x^2 - y^2", &["x", "y"]);
        let g = p("x - y", &["x", "y"]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, p("x + y", &["x", "y"]));
        let (_, r) = p("x", &["x"]).div_rem(&p("x^2", &["x"]));
        assert_eq!(r, p("x", &["x"]));
    }

    #[test]
    fn compose_substitutes() {
        let f = p("a*b + 1", &["a", "b"]);
        let img = vec![p("x + 1", &["x"]), p("x", &["x"])];
        assert_eq!(f.compose(&img), p("x^2 + x + 1", &["x"]));
    }

    #[test]
    fn display_roundtrip() {
        let names: Vec<String> = vec!["x".into(), "y".into()];
        for s in ["x^2*y - 3/2*x + 7", "-x - y - 1", "0", "2*x^3*y^2"] {
            let f = p(s, &["x", "y"]);
            let shown = f.display(&names);
            assert_eq!(parse_expr(&shown).unwrap().to_poly::<Rational>(&names).unwrap(), f, "{shown}");
        }
    }

    #[test]
    fn laurent_coefficients_roundtrip() {
        let names: Vec<String> = vec!["x".into(), "y".into()];
        let f: Poly<LaurentFrac> = parse_expr("x + y + t").unwrap().to_poly(&names).unwrap();
        let g: Poly<LaurentFrac> = parse_expr("(t + 1)/t*x - t^2*y").unwrap().to_poly(&names).unwrap();
        for h in [f, g] {
            let shown = h.display(&names);
            assert_eq!(parse_expr(&shown).unwrap().to_poly::<LaurentFrac>(&names).unwrap(), h, "{shown}");
        }
    }
}
