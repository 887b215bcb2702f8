//! Weights `ω: G -> [1, ∞)` with `ω(e) = 1` and `ω(st) <= ω(s) ω(t)`,
//! valued in exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed};

use crate::algebra::{rational_pow, GroupElement, Rational};
use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::groups::{quotient_table, FiniteGroupTable, FiniteIndexSubgroup, GroupHom, Permutation};

pub trait Weight<G>: Send + Sync {
    fn eval(&self, g: &G) -> Result<Rational>;

    /// `Some(c)` when the weight is `t -> c^{|t|}` for the word length of
    /// its group; used to compute induced weights exactly.
    fn radial_base(&self) -> Option<&Rational> {
        None
    }

    fn describe(&self) -> String;
}

const CACHED_POWERS: usize = 64;

/// `ω(t) = c^{|t|_X}` on a free group.
#[derive(Clone, Debug)]
pub struct RadialWeight {
    base: Rational,
    powers: Vec<Rational>,
}

impl RadialWeight {
    pub fn new(base: Rational) -> Result<RadialWeight> {
        if base <= Rational::one() {
            return Err(Error::Invalid(format!("radial base must exceed 1, got {base}")));
        }
        let mut powers = Vec::with_capacity(CACHED_POWERS);
        let mut p = Rational::one();
        for _ in 0..CACHED_POWERS {
            powers.push(p.clone());
            p = &p * &base;
        }
        Ok(RadialWeight { base, powers })
    }

    /// The default base `c = 2`.
    pub fn base_two() -> RadialWeight {
        RadialWeight::new(Rational::from_integer(2.into())).expect("2 > 1")
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    /// `c^length`.
    pub fn at_length(&self, length: usize) -> Rational {
        match self.powers.get(length) {
            Some(p) => p.clone(),
            None => rational_pow(&self.base, length),
        }
    }
}

/// `radial_eval` in free-function form: `base^length`.
pub fn radial_eval(base: &Rational, length: usize) -> Rational {
    rational_pow(base, length)
}

impl Weight<FreeWord> for RadialWeight {
    fn eval(&self, g: &FreeWord) -> Result<Rational> {
        Ok(self.at_length(g.len()))
    }

    fn radial_base(&self) -> Option<&Rational> {
        Some(&self.base)
    }

    fn describe(&self) -> String {
        format!("radial(base {})", self.base)
    }
}

/// `γ = ω|_H`: the parent weight, defined only on elements of `H`.
pub struct RestrictedWeight<'a> {
    parent: &'a dyn Weight<FreeWord>,
    sub: &'a FiniteIndexSubgroup,
}

impl<'a> RestrictedWeight<'a> {
    pub fn new(parent: &'a dyn Weight<FreeWord>, sub: &'a FiniteIndexSubgroup) -> Self {
        RestrictedWeight { parent, sub }
    }
}

impl Weight<FreeWord> for RestrictedWeight<'_> {
    fn eval(&self, g: &FreeWord) -> Result<Rational> {
        if !self.sub.contains(g)? {
            return Err(Error::SupportEscapesSubgroup(g.to_string()));
        }
        self.parent.eval(g)
    }

    fn describe(&self) -> String {
        format!("restricted({}, index {})", self.parent.describe(), self.sub.index())
    }
}

/// The weight induced on the finite quotient `F_m / ker q` by a radial
/// parent: `ω̃(q(t)) = inf { ω(s) : q(s) = q(t) } = c^{length of q(t)}`.
#[derive(Clone, Debug)]
pub struct InducedWeight {
    radial: RadialWeight,
    table: FiniteGroupTable,
}

impl InducedWeight {
    /// Fails for non-radial parents: the infimum over an infinite coset has
    /// no general algorithm and is never approximated.
    pub fn new(parent: &dyn Weight<FreeWord>, hom: &GroupHom, cap: usize) -> Result<InducedWeight> {
        let table = quotient_table(hom, cap)?;
        InducedWeight::from_table(parent, table)
    }

    pub fn from_table(parent: &dyn Weight<FreeWord>, table: FiniteGroupTable) -> Result<InducedWeight> {
        let Some(base) = parent.radial_base() else {
            return Err(Error::UnsupportedWeight(format!(
                "induced weight of {} needs an infimum over an infinite coset",
                parent.describe()
            )));
        };
        Ok(InducedWeight {
            radial: RadialWeight::new(base.clone())?,
            table,
        })
    }

    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }
}

impl Weight<Permutation> for InducedWeight {
    fn eval(&self, g: &Permutation) -> Result<Rational> {
        match self.table.length_of(g) {
            Some(len) => Ok(self.radial.at_length(len)),
            None => Err(Error::UnsupportedWeight(format!(
                "{g} is not an element of the quotient"
            ))),
        }
    }

    fn radial_base(&self) -> Option<&Rational> {
        Some(self.radial.base())
    }

    fn describe(&self) -> String {
        format!(
            "induced({}, quotient of order {})",
            self.radial.describe(),
            self.table.order()
        )
    }
}

/// `induced_eval` in free-function form.
pub fn induced_eval(parent: &dyn Weight<FreeWord>, hom: &GroupHom, element: &Permutation, cap: usize) -> Result<Rational> {
    InducedWeight::new(parent, hom, cap)?.eval(element)
}

/// A weight on a finite set of elements given by an explicit table.
#[derive(Clone, Debug)]
pub struct TableWeight<G: GroupElement> {
    values: BTreeMap<G, Rational>,
}

impl<G: GroupElement> TableWeight<G> {
    /// Requires every value to be at least 1 and the identity, when listed,
    /// to have weight 1. Submultiplicativity is not checked here.
    pub fn new(values: BTreeMap<G, Rational>) -> Result<TableWeight<G>> {
        for (g, v) in &values {
            if *v < Rational::one() {
                return Err(Error::Invalid(format!("weight of {g} is {v} < 1")));
            }
            if g.is_identity() && !v.is_one() {
                return Err(Error::Invalid(format!("weight of the identity is {v}, not 1")));
            }
        }
        Ok(TableWeight { values })
    }

    pub fn values(&self) -> &BTreeMap<G, Rational> {
        &self.values
    }
}

impl<G: GroupElement> Weight<G> for TableWeight<G> {
    fn eval(&self, g: &G) -> Result<Rational> {
        self.values
            .get(g)
            .cloned()
            .ok_or_else(|| Error::UnsupportedWeight(format!("no table entry for {g}")))
    }

    fn describe(&self) -> String {
        format!("table({} entries)", self.values.len())
    }
}

/// One failure of `ω(st) <= ω(s) ω(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<G> {
    pub s: G,
    pub t: G,
    pub weight_of_product: Rational,
    pub product_of_weights: Rational,
}

#[derive(Clone, Debug)]
pub struct WeightCheckReport<G> {
    pub checked_pairs: usize,
    pub identity_ok: bool,
    pub violations: Vec<Violation<G>>,
}

impl<G> WeightCheckReport<G> {
    pub fn passed(&self) -> bool {
        self.identity_ok && self.violations.is_empty()
    }
}

impl<G: fmt::Display> fmt::Display for WeightCheckReport<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pairs checked, {} violations",
            self.checked_pairs,
            self.violations.len()
        )?;
        if let Some(v) = self.violations.first() {
            write!(
                f,
                "; first: ω({}·{}) = {} > {}",
                v.s, v.t, v.weight_of_product, v.product_of_weights
            )?;
        }
        Ok(())
    }
}

/// Tests `ω(st) <= ω(s) ω(t)` on every ordered pair of the domain, and
/// `ω(e) = 1`. Symmetry `ω(t) = ω(t^{-1})` is not an axiom and is not tested.
pub fn check_submultiplicative<G: GroupElement>(weight: &dyn Weight<G>, domain: &[G]) -> Result<WeightCheckReport<G>> {
    let values: Vec<Rational> = domain.iter().map(|g| weight.eval(g)).collect::<Result<_>>()?;
    let identity_ok = match domain.first() {
        Some(g) => weight.eval(&G::identity_in(g.context()))?.is_one(),
        None => true,
    };
    let mut violations = Vec::new();
    let mut checked_pairs = 0;
    for (s, ws) in domain.iter().zip(&values) {
        for (t, wt) in domain.iter().zip(&values) {
            checked_pairs += 1;
            let wst = weight.eval(&s.product(t))?;
            let bound = ws * wt;
            if wst > bound {
                violations.push(Violation {
                    s: s.clone(),
                    t: t.clone(),
                    weight_of_product: wst,
                    product_of_weights: bound,
                });
            }
        }
    }
    debug_assert!(values.iter().all(|v| !v.is_negative()));
    Ok(WeightCheckReport {
        checked_pairs,
        identity_ok,
        violations,
    })
}
