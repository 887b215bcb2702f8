//! Finitely supported elements of `ℓ¹(G, ω)` with exact Gaussian-rational
//! coefficients, for `G` a free group or a finite permutation group.

mod coeff;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

pub use coeff::{
    integer, modulus_at_least_difference, modulus_exceeds, parse_rational, rational, rational_pow,
    Coefficient, Rational,
};

use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::groups::{CosetSpace, GroupHom, Permutation};
use crate::weights::Weight;

/// Group elements that can index an algebra element. The context is the
/// rank of a free group or the degree of a permutation group; elements of
/// different contexts never mix.
pub trait GroupElement: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn context(&self) -> usize;
    fn identity_in(context: usize) -> Self;
    /// Product; callers guarantee equal contexts.
    fn product(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
}

impl GroupElement for FreeWord {
    fn context(&self) -> usize {
        self.rank()
    }
    fn identity_in(context: usize) -> Self {
        FreeWord::identity(context)
    }
    fn product(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        self.invert()
    }
    fn is_identity(&self) -> bool {
        FreeWord::is_identity(self)
    }
}

impl GroupElement for Permutation {
    fn context(&self) -> usize {
        self.degree()
    }
    fn identity_in(context: usize) -> Self {
        Permutation::identity(context)
    }
    fn product(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inverse(&self) -> Self {
        Permutation::inverse(self)
    }
    fn is_identity(&self) -> bool {
        Permutation::is_identity(self)
    }
}

/// A finitely supported function `G -> ℚ(i)`. Zero coefficients are never
/// stored, so equality is equality of functions.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<G: GroupElement> {
    context: usize,
    terms: BTreeMap<G, Coefficient>,
}

/// Bracket around a weighted norm: `lower <= ‖f‖_ω <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBound {
    pub lower: Rational,
    pub upper: Rational,
}

impl NormBound {
    pub fn exact(&self) -> Option<&Rational> {
        (self.lower == self.upper).then_some(&self.lower)
    }
}

impl<G: GroupElement> AlgebraElement<G> {
    pub fn zero(context: usize) -> Self {
        AlgebraElement {
            context,
            terms: BTreeMap::new(),
        }
    }

    /// The point mass `δ_g`.
    pub fn delta(g: G) -> Self {
        Self::monomial(Coefficient::one(), g)
    }

    pub fn monomial(c: Coefficient, g: G) -> Self {
        let mut f = Self::zero(g.context());
        f.add_term(g, &c);
        f
    }

    /// `δ_e`.
    pub fn unit(context: usize) -> Self {
        Self::delta(G::identity_in(context))
    }

    pub fn from_terms<I>(context: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (G, Coefficient)>,
    {
        let mut f = Self::zero(context);
        for (g, c) in terms {
            if g.context() != context {
                return Err(Error::RankMismatch {
                    expected: context,
                    found: g.context(),
                });
            }
            f.add_term(g, &c);
        }
        Ok(f)
    }

    pub fn context(&self) -> usize {
        self.context
    }

    pub fn terms(&self) -> &BTreeMap<G, Coefficient> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &G> {
        self.terms.keys()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &G) -> Coefficient {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    /// `f(e)`.
    pub fn identity_coefficient(&self) -> Coefficient {
        self.coefficient(&G::identity_in(self.context))
    }

    pub fn add_term(&mut self, g: G, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(g.context(), self.context);
        let entry = self.terms.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.context != other.context {
            return Err(Error::RankMismatch {
                expected: self.context,
                found: other.context,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.context);
        }
        AlgebraElement {
            context: self.context,
            terms: self.terms.iter().map(|(g, a)| (g.clone(), a * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c);
        }
        Ok(out)
    }

    /// `(f * g)(t) = Σ_{uv = t} f(u) g(v)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = Self::zero(self.context);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.product(v), &(a * b));
            }
        }
        Ok(out)
    }

    /// `δ_t * f`.
    pub fn left_translate(&self, t: &G) -> Self {
        AlgebraElement {
            context: self.context,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (t.product(g), c.clone()))
                .collect(),
        }
    }

    /// `f * δ_t`.
    pub fn right_translate(&self, t: &G) -> Self {
        AlgebraElement {
            context: self.context,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.product(t), c.clone()))
                .collect(),
        }
    }

    /// `f^t = δ_t * f * δ_{t^{-1}}`, moving the support by `s -> t s t^{-1}`.
    pub fn conjugate(&self, t: &G) -> Result<Self> {
        if t.context() != self.context {
            return Err(Error::RankMismatch {
                expected: self.context,
                found: t.context(),
            });
        }
        let t_inv = t.inverse();
        Ok(AlgebraElement {
            context: self.context,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (t.product(g).product(&t_inv), c.clone()))
                .collect(),
        })
    }

    /// `Σ_t f(t)`.
    pub fn augmentation(&self) -> Coefficient {
        let mut s = Coefficient::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// `‖f‖_ω = Σ |f(t)| ω(t)`, bracketed exactly.
    pub fn weighted_norm(&self, weight: &dyn Weight<G>) -> Result<NormBound> {
        let mut lower = Rational::default();
        let mut upper = Rational::default();
        for (g, c) in &self.terms {
            let w = weight.eval(g)?;
            let (lo, hi) = c.modulus_bracket();
            lower += &lo * &w;
            upper += &hi * &w;
        }
        Ok(NormBound { lower, upper })
    }

    /// Keeps the terms whose group element satisfies the predicate.
    pub fn restrict(&self, mut keep: impl FnMut(&G) -> bool) -> Self {
        AlgebraElement {
            context: self.context,
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_support(&self, mut f: impl FnMut(&G) -> G) -> Self {
        let mut out = Self::zero(self.context);
        for (g, c) in &self.terms {
            out.add_term(f(g), c);
        }
        out
    }
}

impl<G: GroupElement> Add for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;
    fn add(self, rhs: &AlgebraElement<G>) -> AlgebraElement<G> {
        self.try_add(rhs).expect("context mismatch in sum")
    }
}

impl<G: GroupElement> Sub for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;
    fn sub(self, rhs: &AlgebraElement<G>) -> AlgebraElement<G> {
        self.try_add(&-rhs).expect("context mismatch in difference")
    }
}

impl<G: GroupElement> Neg for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;
    fn neg(self) -> AlgebraElement<G> {
        self.scale(&Coefficient::from_int(-1))
    }
}

impl<G: GroupElement> Mul for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;
    fn mul(self, rhs: &AlgebraElement<G>) -> AlgebraElement<G> {
        self.convolve(rhs).expect("context mismatch in convolution")
    }
}

impl<G: GroupElement> fmt::Display for AlgebraElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·δ[{g}]")?;
        }
        Ok(())
    }
}

impl<G: GroupElement> fmt::Debug for AlgebraElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `δ_e - δ_t`.
pub fn augmentation_generator<G: GroupElement>(t: &G) -> AlgebraElement<G> {
    let mut f = AlgebraElement::unit(t.context());
    f.add_term(t.clone(), &Coefficient::from_int(-1));
    f
}

/// `free_sums[i] = Σ_{s ∈ t_i H} f(s)` over the left cosets of `H`.
pub fn coset_sums(f: &AlgebraElement<FreeWord>, cosets: &CosetSpace) -> Result<Vec<Coefficient>> {
    if f.context() != cosets.rank() {
        return Err(Error::RankMismatch {
            expected: cosets.rank(),
            found: f.context(),
        });
    }
    let mut sums = vec![Coefficient::zero(); cosets.index()];
    for (s, c) in f.terms() {
        sums[cosets.coset_index(s)?] += c;
    }
    Ok(sums)
}

/// `q(f)(x) = Σ_{q(s) = x} f(s)`.
pub fn push_forward(f: &AlgebraElement<FreeWord>, hom: &GroupHom) -> Result<AlgebraElement<Permutation>> {
    if f.context() != hom.rank() {
        return Err(Error::RankMismatch {
            expected: hom.rank(),
            found: f.context(),
        });
    }
    let mut out = AlgebraElement::zero(hom.degree());
    for (s, c) in f.terms() {
        out.add_term(hom.apply_unchecked(s), c);
    }
    Ok(out)
}
