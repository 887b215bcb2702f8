use crate::algebra::{modulus_at_least_difference, modulus_exceeds, push_forward, AlgebraElement, Coefficient, Rational};
use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::groups::{grigorchuk_is_trivial, grigorchuk_level_hom, GroupHom};
use crate::weights::RadialWeight;

/// A group `G = F_n / N` with solvable word problem and a chain of finite
/// quotients `G -> G_L`.
pub trait QuotientFamily {
    fn name(&self) -> String;
    fn rank(&self) -> usize;
    fn level_hom(&self, level: usize) -> Result<GroupHom>;
    /// Whether the word is the identity of `G` itself.
    fn is_trivial(&self, w: &FreeWord) -> Result<bool>;
}

/// The Grigorchuk group on generators `a, b, c, d` with its level quotients.
#[derive(Clone, Copy, Debug)]
pub struct GrigorchukFamily {
    pub degree_cap: usize,
}

impl Default for GrigorchukFamily {
    fn default() -> Self {
        GrigorchukFamily { degree_cap: 1 << 16 }
    }
}

impl QuotientFamily for GrigorchukFamily {
    fn name(&self) -> String {
        "grigorchuk".into()
    }
    fn rank(&self) -> usize {
        4
    }
    fn level_hom(&self, level: usize) -> Result<GroupHom> {
        grigorchuk_level_hom(level, self.degree_cap)
    }
    fn is_trivial(&self, w: &FreeWord) -> Result<bool> {
        grigorchuk_is_trivial(w)
    }
}

/// Support words of `f` that are equal in `G`, merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportClass {
    /// Shortlex-least word of the class; `ε` for the identity class.
    pub representative: FreeWord,
    pub coefficient: Coefficient,
    /// Number of support words merged.
    pub words: usize,
    pub trivial_at_level: bool,
}

#[derive(Clone, Debug)]
pub struct SeparationResult {
    pub f: AlgebraElement<FreeWord>,
    /// `t` with the separated element equal to `δ_t ∗ f`, when a translation was needed.
    pub translation: Option<FreeWord>,
    pub translated: AlgebraElement<FreeWord>,
    pub classes: Vec<SupportClass>,
    pub level: usize,
    pub quotient_degree: usize,
    /// `{e}` together with the classes whose image at `level` is nontrivial.
    pub finite_set: Vec<FreeWord>,
    /// `q(f)(e) = Σ_{s ∈ H} f(s)`.
    pub identity_sum: Coefficient,
    pub f_e: Coefficient,
    /// Upper bound for `Σ_{t ∉ F} |f(t)| ω(t)`.
    pub tail: Rational,
    pub tail_dominated: bool,
    /// `|q(f)(e)| ≥ |f(e)| − tail`, checked exactly when `|f(e)| > tail`.
    pub certified: Option<bool>,
}

fn classify(family: &dyn QuotientFamily, f: &AlgebraElement<FreeWord>) -> Result<Vec<SupportClass>> {
    let mut classes: Vec<SupportClass> = Vec::new();
    for (s, c) in f.terms() {
        let mut found = None;
        for (k, class) in classes.iter().enumerate() {
            if family.is_trivial(&class.representative.invert().mul(s))? {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => {
                classes[k].coefficient += c;
                classes[k].words += 1;
            }
            None => classes.push(SupportClass {
                representative: s.clone(),
                coefficient: c.clone(),
                words: 1,
                trivial_at_level: false,
            }),
        }
    }
    for class in &mut classes {
        if family.is_trivial(&class.representative)? {
            class.representative = FreeWord::identity(f.context());
        }
    }
    classes.retain(|c| !c.coefficient.is_zero());
    Ok(classes)
}

/// Finds the first level `L ≤ l_max` whose kernel `H_L` has a nonzero
/// identity-coset sum `q_L(f)(e)`, after translating `f` so that `f(e) ≠ 0`
/// in `G`. The tail is measured by `weight` on word lengths, which bound
/// lengths in `G` from above.
pub fn separate(f: &AlgebraElement<FreeWord>, family: &dyn QuotientFamily, l_max: usize, weight: &RadialWeight) -> Result<SeparationResult> {
    if f.context() != family.rank() {
        return Err(Error::RankMismatch {
            expected: family.rank(),
            found: f.context(),
        });
    }
    let mut classes = classify(family, f)?;
    if classes.is_empty() {
        return Err(Error::ZeroElement);
    }
    let mut translation = None;
    let mut translated = f.clone();
    if !classes.iter().any(|c| c.representative.is_identity()) {
        let mut best = 0;
        for (k, c) in classes.iter().enumerate() {
            if c.coefficient.modulus_squared() > classes[best].coefficient.modulus_squared() {
                best = k;
            }
        }
        let t = classes[best].representative.invert();
        translated = f.left_translate(&t);
        classes = classify(family, &translated)?;
        translation = Some(t);
    }
    let f_e = classes
        .iter()
        .find(|c| c.representative.is_identity())
        .map(|c| c.coefficient.clone())
        .ok_or_else(|| Error::Verification("translation did not produce a nonzero f(e)".into()))?;

    for level in 1..=l_max {
        let hom = family.level_hom(level)?;
        let mut class_sum = Coefficient::zero();
        for c in &mut classes {
            c.trivial_at_level = hom.apply(&c.representative)?.is_identity();
            if c.trivial_at_level {
                class_sum += &c.coefficient;
            }
        }
        let pushed = push_forward(&translated, &hom)?.identity_coefficient();
        if pushed != class_sum {
            return Err(Error::Verification(format!(
                "identity-coset sum {pushed} disagrees with class sum {class_sum} at level {level}"
            )));
        }
        if pushed.is_zero() {
            continue;
        }
        let mut finite_set = vec![FreeWord::identity(f.context())];
        let mut tail = Rational::default();
        for c in &classes {
            if c.representative.is_identity() {
                continue;
            }
            if c.trivial_at_level {
                tail += c.coefficient.modulus_bracket().1 * weight.at_length(c.representative.len());
            } else {
                finite_set.push(c.representative.clone());
            }
        }
        let tail_dominated = modulus_exceeds(&f_e, &tail);
        let certified = tail_dominated.then(|| modulus_at_least_difference(&pushed, &f_e, &tail));
        return Ok(SeparationResult {
            f: f.clone(),
            translation,
            translated,
            classes,
            level,
            quotient_degree: hom.degree(),
            finite_set,
            identity_sum: pushed,
            f_e,
            tail,
            tail_dominated,
            certified,
        });
    }
    Err(Error::NoSeparation(l_max))
}
