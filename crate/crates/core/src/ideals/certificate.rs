use std::collections::BTreeMap;

use num::Zero;

use super::factorization::{YFactorization, YMetric};
use crate::algebra::{augmentation_generator, coset_sums, integer, rational_pow, AlgebraElement, Coefficient, Rational};
use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::groups::FiniteIndexSubgroup;
use crate::weights::RadialWeight;

type Element = AlgebraElement<FreeWord>;

/// Norm evidence for a geodesic certificate under `γ(t) = 2^{|t|_X}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthBoundEvidence {
    /// `‖g_y‖_γ` for every `y` with `g_y ≠ 0`.
    pub norms: BTreeMap<FreeWord, Rational>,
    /// `γ(u) = 2^{|u|_X}`.
    pub bound: Rational,
    /// `2^{|y_1⋯y_j|_X}` for `j = 0, ..., n-1`.
    pub prefix_norms: Vec<Rational>,
    pub strictly_increasing: bool,
    pub holds: bool,
}

impl GrowthBoundEvidence {
    pub fn max_norm(&self) -> Rational {
        self.norms.values().max().cloned().unwrap_or_else(Rational::zero)
    }
}

/// The family `g_y` with `δ_e − δ_u = Σ_y g_y ∗ (δ_e − δ_y)`.
#[derive(Clone, Debug)]
pub struct TelescopeCertificate {
    pub factorization: YFactorization,
    pub geodesic: bool,
    /// Nonzero `g_y` only; every other `y ∈ Y` has `g_y = 0`.
    pub gens: BTreeMap<FreeWord, Element>,
    /// Per `y`, the indices `j` with `y_{j+1} = y`; `h_y^{(j)} = δ_{y_1⋯y_j}` exactly there.
    pub summands: BTreeMap<FreeWord, Vec<usize>>,
    pub identity_checked: bool,
    /// Present for geodesic factorizations.
    pub growth: Option<GrowthBoundEvidence>,
}

impl TelescopeCertificate {
    pub fn u(&self) -> &FreeWord {
        &self.factorization.u
    }

    pub fn g(&self, y: &FreeWord) -> Element {
        self.gens
            .get(y)
            .cloned()
            .unwrap_or_else(|| Element::zero(y.rank()))
    }

    /// `h_y^{(j)}` as an algebra element, zero unless `y_{j+1} = y`.
    pub fn summand(&self, y: &FreeWord, j: usize) -> Element {
        let rank = self.factorization.u.rank();
        match self.factorization.factors.get(j) {
            Some(f) if f == y => Element::delta(self.factorization.prefixes()[j].clone()),
            _ => Element::zero(rank),
        }
    }

    /// `Σ_y g_y ∗ (δ_e − δ_y)`.
    pub fn evaluate(&self) -> Element {
        let mut total = Element::zero(self.factorization.u.rank());
        for (y, g) in &self.gens {
            total = &total + &(g * &augmentation_generator(y));
        }
        total
    }
}

/// Builds and self-verifies the telescoping certificate of a factorization.
/// Geodesicity is decided with the metric; only geodesic certificates carry
/// [`GrowthBoundEvidence`], and a failed bound there is reported as an error.
pub fn telescope_from_factorization(metric: &YMetric<'_>, factorization: YFactorization) -> Result<TelescopeCertificate> {
    let sub = metric.subgroup();
    let u = factorization.u.clone();
    let factorization = YFactorization::new(sub, u.clone(), factorization.factors)?;
    let geodesic = metric.distance(&u)? == factorization.len();
    let prefixes = factorization.prefixes();

    let mut gens: BTreeMap<FreeWord, Element> = BTreeMap::new();
    let mut summands: BTreeMap<FreeWord, Vec<usize>> = BTreeMap::new();
    for (j, y) in factorization.factors.iter().enumerate() {
        gens.entry(y.clone())
            .or_insert_with(|| Element::zero(u.rank()))
            .add_term(prefixes[j].clone(), &Coefficient::one());
        summands.entry(y.clone()).or_default().push(j);
    }
    gens.retain(|_, g| !g.is_zero());

    let mut cert = TelescopeCertificate {
        factorization,
        geodesic,
        gens,
        summands,
        identity_checked: false,
        growth: None,
    };
    if cert.evaluate() != augmentation_generator(&u) {
        return Err(Error::Verification(format!("telescoping identity fails for u = {u}")));
    }
    cert.identity_checked = true;

    if geodesic {
        let gamma = RadialWeight::base_two();
        let mut norms = BTreeMap::new();
        for (y, g) in &cert.gens {
            let n = g.weighted_norm(&gamma)?;
            norms.insert(y.clone(), n.upper);
        }
        let bound = gamma.at_length(u.len());
        let prefix_norms: Vec<Rational> = prefixes[..prefixes.len() - 1]
            .iter()
            .map(|p| gamma.at_length(p.len()))
            .collect();
        let strictly_increasing = prefix_norms.windows(2).all(|w| w[0] < w[1]);
        let holds = norms.values().all(|n| *n <= bound);
        if !(holds && strictly_increasing) {
            return Err(Error::Verification(format!(
                "norm bound fails for geodesic factorization of {u}"
            )));
        }
        cert.growth = Some(GrowthBoundEvidence {
            norms,
            bound,
            prefix_norms,
            strictly_increasing,
            holds,
        });
    }
    Ok(cert)
}

/// The certificate of the geodesic factorization chosen by the metric.
pub fn telescope_certificate(metric: &YMetric<'_>, u: &FreeWord) -> Result<TelescopeCertificate> {
    let f = metric.geodesic(u)?;
    telescope_from_factorization(metric, f)
}

/// Norm comparison for one `φ_y`, on upper brackets, under `γ = 2^{|·|_X}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiNormEvidence {
    pub phi_norm: Rational,
    /// `Σ_i |α_i| γ(u_i)`.
    pub weighted_coefficients: Rational,
    pub f_norm: Rational,
    pub holds: bool,
}

/// `f = Σ_y φ_y ∗ (δ_e − δ_y)` for an augmentation-zero `f` supported on `H`.
#[derive(Clone, Debug)]
pub struct AugmentationDecomposition {
    pub f: Element,
    pub phi: BTreeMap<FreeWord, Element>,
    pub evidence: BTreeMap<FreeWord, PhiNormEvidence>,
    /// One certificate per non-identity support element `u_i`, in support order.
    pub certificates: Vec<TelescopeCertificate>,
    pub identity_checked: bool,
}

impl AugmentationDecomposition {
    pub fn phi(&self, y: &FreeWord) -> Element {
        self.phi
            .get(y)
            .cloned()
            .unwrap_or_else(|| Element::zero(self.f.context()))
    }

    pub fn evaluate(&self) -> Element {
        let mut total = Element::zero(self.f.context());
        for (y, p) in &self.phi {
            total = &total + &(p * &augmentation_generator(y));
        }
        total
    }
}

fn check_rank(sub: &FiniteIndexSubgroup, f: &Element) -> Result<()> {
    if f.context() != sub.rank() {
        return Err(Error::RankMismatch {
            expected: sub.rank(),
            found: f.context(),
        });
    }
    Ok(())
}

/// `φ_y = −Σ_i α_i g_y^{(i)}` over the support `f = Σ_i α_i δ_{u_i}`.
pub fn decompose_augmentation(sub: &FiniteIndexSubgroup, f: &Element, node_cap: usize) -> Result<AugmentationDecomposition> {
    check_rank(sub, f)?;
    for s in f.support() {
        if !sub.contains(s)? {
            return Err(Error::SupportEscapesSubgroup(s.to_string()));
        }
    }
    let aug = f.augmentation();
    if !aug.is_zero() {
        return Err(Error::AugmentationNonzero(aug.to_string()));
    }
    let words: Vec<FreeWord> = f.support().filter(|s| !s.is_identity()).cloned().collect();
    let mut out = AugmentationDecomposition {
        f: f.clone(),
        phi: BTreeMap::new(),
        evidence: BTreeMap::new(),
        certificates: Vec::with_capacity(words.len()),
        identity_checked: false,
    };
    if words.is_empty() {
        out.identity_checked = true;
        return Ok(out);
    }
    let metric = YMetric::covering(sub, &words, node_cap)?;
    decompose_with_metric(&metric, f, out)
}

fn decompose_with_metric(metric: &YMetric<'_>, f: &Element, mut out: AugmentationDecomposition) -> Result<AugmentationDecomposition> {
    let gamma = RadialWeight::base_two();
    let mut weighted: BTreeMap<FreeWord, Rational> = BTreeMap::new();
    for (u, alpha) in f.terms() {
        if u.is_identity() {
            continue;
        }
        let cert = telescope_certificate(metric, u)?;
        let minus_alpha = -alpha;
        let (_, alpha_upper) = alpha.modulus_bracket();
        for (y, g) in &cert.gens {
            let phi = out
                .phi
                .entry(y.clone())
                .or_insert_with(|| Element::zero(f.context()));
            *phi = &*phi + &g.scale(&minus_alpha);
            *weighted.entry(y.clone()).or_insert_with(Rational::zero) +=
                &alpha_upper * gamma.at_length(u.len());
        }
        out.certificates.push(cert);
    }
    out.phi.retain(|_, p| !p.is_zero());
    if out.evaluate() != *f {
        return Err(Error::Verification("augmentation decomposition does not reproduce f".into()));
    }
    out.identity_checked = true;
    let f_norm = f.weighted_norm(&gamma)?.upper;
    for (y, p) in &out.phi {
        let phi_norm = p.weighted_norm(&gamma)?.upper;
        let w = weighted.remove(y).unwrap_or_else(Rational::zero);
        let holds = phi_norm <= w && w <= f_norm;
        out.evidence.insert(
            y.clone(),
            PhiNormEvidence {
                phi_norm,
                weighted_coefficients: w,
                f_norm: f_norm.clone(),
                holds,
            },
        );
    }
    Ok(out)
}

/// `f = Σ_y ψ_y ∗ (δ_e − δ_y)` for `f` with vanishing left-coset sums.
#[derive(Clone, Debug)]
pub struct JExpression {
    pub f: Element,
    pub psi: BTreeMap<FreeWord, Element>,
    /// `f^{(i)}` with `f = Σ_i δ_{t_i} ∗ f^{(i)}`, indexed by coset.
    pub components: Vec<Element>,
    pub decompositions: Vec<AugmentationDecomposition>,
    pub identity_checked: bool,
}

impl JExpression {
    pub fn psi(&self, y: &FreeWord) -> Element {
        self.psi
            .get(y)
            .cloned()
            .unwrap_or_else(|| Element::zero(self.f.context()))
    }

    pub fn evaluate(&self) -> Element {
        let mut total = Element::zero(self.f.context());
        for (y, p) in &self.psi {
            total = &total + &(p * &augmentation_generator(y));
        }
        total
    }
}

/// `f^{(i)}(h) = f(t_i h)` for `h ∈ H`.
pub fn coset_components(sub: &FiniteIndexSubgroup, f: &Element) -> Result<Vec<Element>> {
    check_rank(sub, f)?;
    let t = sub.transversal();
    let mut parts = vec![Element::zero(sub.rank()); t.len()];
    for (s, c) in f.terms() {
        let i = sub.coset_index(s)?;
        parts[i].add_term(t[i].invert().mul(s), c);
    }
    Ok(parts)
}

pub fn express_in_j_generators(sub: &FiniteIndexSubgroup, f: &Element, node_cap: usize) -> Result<JExpression> {
    check_rank(sub, f)?;
    let sums = coset_sums(f, sub.cosets())?;
    if let Some(i) = sums.iter().position(|c| !c.is_zero()) {
        return Err(Error::CosetSumNonzero {
            coset: i,
            representative: sub.transversal()[i].to_string(),
            sum: sums[i].to_string(),
        });
    }
    let components = coset_components(sub, f)?;
    let words: Vec<FreeWord> = components
        .iter()
        .flat_map(|c| c.support().filter(|s| !s.is_identity()).cloned())
        .collect();
    let metric = if words.is_empty() {
        None
    } else {
        Some(YMetric::covering(sub, &words, node_cap)?)
    };

    let mut psi: BTreeMap<FreeWord, Element> = BTreeMap::new();
    let mut decompositions = Vec::with_capacity(components.len());
    for (t, part) in sub.transversal().iter().zip(&components) {
        let empty = AugmentationDecomposition {
            f: part.clone(),
            phi: BTreeMap::new(),
            evidence: BTreeMap::new(),
            certificates: Vec::new(),
            identity_checked: part.is_zero(),
        };
        let d = match &metric {
            Some(m) if !part.is_zero() => decompose_with_metric(m, part, empty)?,
            _ => empty,
        };
        for (y, phi) in &d.phi {
            let entry = psi.entry(y.clone()).or_insert_with(|| Element::zero(f.context()));
            *entry = &*entry + &phi.left_translate(t);
        }
        decompositions.push(d);
    }
    psi.retain(|_, p| !p.is_zero());
    let mut out = JExpression {
        f: f.clone(),
        psi,
        components,
        decompositions,
        identity_checked: false,
    };
    if out.evaluate() != *f {
        return Err(Error::Verification("J-generator expression does not reproduce f".into()));
    }
    out.identity_checked = true;
    Ok(out)
}

/// `2^{|u|_X}` as used by the bound.
pub fn telescope_norm_bound(u: &FreeWord) -> Rational {
    rational_pow(&integer(2), u.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{even_length_subgroup, Radius};

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, 2).unwrap()
    }

    fn d(s: &str) -> Element {
        Element::delta(w(s))
    }

    #[test]
    fn single_and_repeated_factor() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let m = YMetric::new(&sub, 2, 100_000).unwrap();
        let c = telescope_certificate(&m, &w("ab")).unwrap();
        assert_eq!(c.gens.len(), 1);
        assert_eq!(c.g(&w("ab")), Element::unit(2));
        assert_eq!(c.g(&w("aa")), Element::zero(2));
        let c = telescope_certificate(&m, &w("abab")).unwrap();
        assert_eq!(c.g(&w("ab")), &Element::unit(2) + &d("ab"));
        assert_eq!(c.summand(&w("ab"), 1), d("ab"));
        assert_eq!(c.summand(&w("aa"), 0), Element::zero(2));
        let growth = c.growth.unwrap();
        assert_eq!(growth.norms[&w("ab")], integer(5));
        assert_eq!(growth.bound, integer(16));
        assert_eq!(growth.prefix_norms, vec![integer(1), integer(4)]);
    }

    #[test]
    fn non_geodesic_keeps_identity_only() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let m = YMetric::new(&sub, 2, 100_000).unwrap();
        let f = YFactorization::new(&sub, w("aa"), vec![w("ab"), w("Ba")]).unwrap();
        let c = telescope_from_factorization(&m, f).unwrap();
        assert!(c.identity_checked);
        assert!(!c.geodesic);
        assert!(c.growth.is_none());
    }

    #[test]
    fn decomposition_examples() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let zero = decompose_augmentation(&sub, &Element::zero(2), 100_000).unwrap();
        assert!(zero.phi.is_empty() && zero.identity_checked);
        let f = &d("aa") - &d("ab");
        let dec = decompose_augmentation(&sub, &f, 100_000).unwrap();
        assert_eq!(dec.evaluate(), f);
        assert!(dec.evidence.values().all(|e| e.holds));
        let g = &Element::unit(2) - &d("abab");
        let dec = decompose_augmentation(&sub, &g, 100_000).unwrap();
        assert_eq!(dec.phi(&w("ab")), &Element::unit(2) + &d("ab"));
        assert!(matches!(
            decompose_augmentation(&sub, &d("aa"), 100_000),
            Err(Error::AugmentationNonzero(_))
        ));
        assert!(matches!(
            decompose_augmentation(&sub, &(&d("a") - &d("b")), 100_000),
            Err(Error::SupportEscapesSubgroup(_))
        ));
    }

    #[test]
    fn j_expression_examples() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let f = &d("a") - &d("b");
        let e = express_in_j_generators(&sub, &f, 100_000).unwrap();
        assert_eq!(e.psi(&w("Ab")), d("a"));
        assert_eq!(e.evaluate(), f);
        let e = express_in_j_generators(&sub, &(&Element::unit(2) - &d("aa")), 100_000).unwrap();
        assert_eq!(e.psi(&w("aa")), Element::unit(2));
        assert!(express_in_j_generators(&sub, &Element::zero(2), 100_000).unwrap().psi.is_empty());
        assert!(matches!(
            express_in_j_generators(&sub, &d("a"), 100_000),
            Err(Error::CosetSumNonzero { coset: 1, .. })
        ));
    }
}
