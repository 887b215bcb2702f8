//! Seeded property suites over fixed catalogues of subgroups, quotients and
//! finite models. Every suite is deterministic in its seed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{coset_sums, integer, push_forward, rational, AlgebraElement, Coefficient, Rational};
use crate::cancellation::check_exhaustive;
use crate::error::{Error, Result};
use crate::freegroup::{alphabet, ball, reduce, FreeWord, Letter};
use crate::groups::{
    grigorchuk_level_hom, quotient_table, FiniteIndexSubgroup, GroupHom, Permutation, Radius, SubgroupMode, DEFAULT_CAP,
};
use crate::ideals::{
    codimension_report, decompose_augmentation, express_in_j_generators, extract_subgroup_expression, lift_ideal,
    pull_back_generators, separate, solve_left_ideal_membership, telescope_certificate, CosetStructure, FiniteModel,
    GrigorchukFamily, QuotientFamily, YMetric, DEFAULT_NODE_CAP,
};
use crate::weights::{check_submultiplicative, InducedWeight, RadialWeight, TableWeight, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteName {
    ReductionOracle,
    Weights,
    AlgebraAxioms,
    Lifting,
    Cancellation,
    Certificates,
    InducedWeights,
    Separation,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::ReductionOracle,
        SuiteName::Weights,
        SuiteName::AlgebraAxioms,
        SuiteName::Lifting,
        SuiteName::Cancellation,
        SuiteName::Certificates,
        SuiteName::InducedWeights,
        SuiteName::Separation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::ReductionOracle => "reduction-oracle",
            SuiteName::Weights => "weights",
            SuiteName::AlgebraAxioms => "algebra-axioms",
            SuiteName::Lifting => "lemma21",
            SuiteName::Cancellation => "lemma23",
            SuiteName::Certificates => "lemma24",
            SuiteName::InducedWeights => "lemma25",
            SuiteName::Separation => "separation",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<SuiteName> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// One named group of checks within a suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteCase {
    pub id: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteCase {
    fn new(id: impl Into<String>) -> SuiteCase {
        SuiteCase {
            id: id.into(),
            ..SuiteCase::default()
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn record(&mut self, outcome: Result<bool>, detail: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.check(ok, detail),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", detail()));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: SuiteName,
    pub seed: u64,
    pub cases: Vec<SuiteCase>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(SuiteCase::passed)
    }

    pub fn checked(&self) -> usize {
        self.cases.iter().map(|c| c.checked).sum()
    }

    pub fn failed(&self) -> usize {
        self.cases.iter().map(|c| c.failures.len()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.name.as_str(),
            "seed": self.seed,
            "checked": self.checked(),
            "failed": self.failed(),
            "passed": self.passed(),
            "cases": self.cases.iter().map(|c| serde_json::json!({
                "id": c.id,
                "checked": c.checked,
                "failures": c.failures,
                "passed": c.passed(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (seed {}): {} checks, {} failures",
            self.name,
            self.seed,
            self.checked(),
            self.failed()
        )?;
        let width = self.cases.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
        for c in &self.cases {
            let status = if c.passed() { "ok" } else { "FAIL" };
            writeln!(f, "  {:<width$} {:>7} {}", c.id, c.checked, status)?;
            for msg in c.failures.iter().take(5) {
                writeln!(f, "    {msg}")?;
            }
            if c.failures.len() > 5 {
                writeln!(f, "    ... {} more", c.failures.len() - 5)?;
            }
        }
        Ok(())
    }
}

pub fn run_suite(name: SuiteName, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = match name {
        SuiteName::ReductionOracle => reduction_oracle(&mut rng),
        SuiteName::Weights => weights_suite()?,
        SuiteName::AlgebraAxioms => algebra_axioms(&mut rng)?,
        SuiteName::Lifting => lifting_suite(&mut rng)?,
        SuiteName::Cancellation => cancellation_suite()?,
        SuiteName::Certificates => certificate_suite(&mut rng)?,
        SuiteName::InducedWeights => induced_weight_suite()?,
        SuiteName::Separation => separation_suite(&mut rng)?,
    };
    Ok(SuiteReport { name, seed, cases })
}

fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("catalogue permutations are valid")
}

fn hom(degree: usize, images: Vec<Permutation>) -> GroupHom {
    GroupHom::new(images.len(), degree, images).expect("catalogue homomorphisms are valid")
}

/// Subgroups of `F_2` of index 2, 3 and 4, with automatic radius.
pub fn sample_subgroups() -> Vec<(&'static str, FiniteIndexSubgroup)> {
    let build = |h: GroupHom, mode| FiniteIndexSubgroup::new(h, mode, Radius::Auto, DEFAULT_CAP).expect("small index");
    let swap = perm(2, &[&[0, 1]]);
    vec![
        ("even-length (index 2, kernel)", build(hom(2, vec![swap.clone(), swap]), SubgroupMode::Kernel)),
        (
            "stabilizer of 0 (index 3)",
            build(hom(3, vec![perm(3, &[&[0, 1, 2]]), perm(3, &[&[0, 1]])]), SubgroupMode::Stabilizer(0)),
        ),
        (
            "Klein kernel (index 4)",
            build(
                hom(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]),
                SubgroupMode::Kernel,
            ),
        ),
    ]
}

/// Finite quotients of free groups used for the induced-weight checks.
pub fn quotient_test_set() -> Vec<(String, GroupHom)> {
    let mut out = vec![
        ("Z/5 (rank 1)".to_string(), hom(5, vec![perm(5, &[&[0, 1, 2, 3, 4]])])),
        ("Sym(2)".to_string(), hom(2, vec![perm(2, &[&[0, 1]]), perm(2, &[&[0, 1]])])),
        ("Z/3".to_string(), hom(3, vec![perm(3, &[&[0, 1, 2]]), perm(3, &[&[0, 2, 1]])])),
        ("Klein four".to_string(), hom(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])])),
        ("Sym(3)".to_string(), hom(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])])),
        ("dihedral of order 8".to_string(), hom(4, vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[1, 3]])])),
        ("Sym(4)".to_string(), hom(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])])),
    ];
    for level in 1..=3 {
        out.push((
            format!("Grigorchuk level {level}"),
            grigorchuk_level_hom(level, DEFAULT_CAP).expect("small level"),
        ));
    }
    out
}

/// A table on `Z/4` with `ω(2) = 5` and 1 elsewhere, which fails at `(1, 1)`.
pub fn broken_table_weight() -> (TableWeight<Permutation>, Vec<Permutation>) {
    let gen = perm(4, &[&[0, 1, 2, 3]]);
    let table = quotient_table(&hom(4, vec![gen.clone()]), 16).expect("order 4");
    let square = gen.compose(&gen);
    let values = table
        .elements()
        .iter()
        .map(|p| (p.clone(), if *p == square { integer(5) } else { integer(1) }))
        .collect();
    (
        TableWeight::new(values).expect("values are at least 1"),
        table.elements().to_vec(),
    )
}

/// Naive reduction: repeatedly delete the first adjacent inverse pair.
pub fn naive_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut w = letters.to_vec();
    loop {
        let Some(i) = (1..w.len()).find(|&i| w[i] == w[i - 1].inverse()) else {
            return w;
        };
        w.drain(i - 1..=i);
    }
}

pub fn random_letters(rng: &mut impl Rng, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter::from_code(rng.gen_range(0..2 * rank))).collect()
}

/// A reduced word of length uniform in `0..=max_len`.
pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let x = Letter::from_code(rng.gen_range(0..2 * rank));
        if letters.last() != Some(&x.inverse()) {
            letters.push(x);
        }
    }
    reduce(rank, &letters).expect("letters within rank")
}

/// A small nonzero Gaussian rational; imaginary with probability `complex`.
pub fn random_coefficient(rng: &mut impl Rng, complex: f64) -> Coefficient {
    let part = |rng: &mut dyn rand::RngCore| {
        let n = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        rational(n, [1, 2][rng.gen_range(0..2)])
    };
    let re = part(rng);
    let im = if rng.gen_bool(complex) { part(rng) } else { Rational::default() };
    Coefficient::new(re, im)
}

pub fn random_element(rng: &mut impl Rng, rank: usize, radius: usize, max_terms: usize, complex: f64) -> AlgebraElement<FreeWord> {
    let mut f = AlgebraElement::zero(rank);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let c = random_coefficient(rng, complex);
        f.add_term(random_word(rng, rank, radius), &c);
    }
    f
}

/// A product of at most `max_factors` uniformly chosen elements of `Y`.
pub fn random_subgroup_word(rng: &mut impl Rng, sub: &FiniteIndexSubgroup, max_factors: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_factors);
    (0..n).fold(FreeWord::identity(sub.rank()), |acc, _| {
        acc.mul(sub.y().choose(rng).expect("Y is nonempty"))
    })
}

fn reduction_oracle(rng: &mut ChaCha8Rng) -> Vec<SuiteCase> {
    [2usize, 3]
        .into_iter()
        .map(|rank| {
            let mut case = SuiteCase::new(format!("stack vs naive, rank {rank}"));
            for _ in 0..5000 {
                let letters = random_letters(rng, rank, 64);
                let fast = reduce(rank, &letters).map(|w| w.letters().to_vec());
                let slow = naive_reduce(&letters);
                case.check(fast.as_ref() == Ok(&slow), || {
                    format!("{letters:?}: {fast:?} vs {slow:?}")
                });
            }
            case
        })
        .collect()
}

fn weights_suite() -> Result<Vec<SuiteCase>> {
    let mut cases = Vec::new();
    let b6 = ball(2, 6, DEFAULT_CAP)?;
    for base in [integer(2), rational(3, 2)] {
        let w = RadialWeight::new(base.clone())?;
        let mut case = SuiteCase::new(format!("radial base {base} on B_6"));
        let r = check_submultiplicative(&w, b6.elements())?;
        case.checked = r.checked_pairs;
        if !r.passed() {
            case.failures.push(r.to_string());
        }
        cases.push(case);
    }
    let two = RadialWeight::base_two();
    for (name, h) in quotient_test_set() {
        let induced = InducedWeight::new(&two, &h, DEFAULT_CAP)?;
        let elements = induced.table().elements().to_vec();
        let values: BTreeMap<Permutation, Rational> = elements
            .iter()
            .map(|p| induced.eval(p).map(|v| (p.clone(), v)))
            .collect::<Result<_>>()?;
        let table = TableWeight::new(values)?;
        let mut case = SuiteCase::new(format!("induced table on {name}"));
        let r = check_submultiplicative(&table, &elements)?;
        case.checked = r.checked_pairs;
        if !r.passed() {
            case.failures.push(r.to_string());
        }
        cases.push(case);
    }
    let (broken, domain) = broken_table_weight();
    let r = check_submultiplicative(&broken, &domain)?;
    let mut case = SuiteCase::new("broken table is flagged");
    case.check(!r.violations.is_empty(), || "no violation found".into());
    cases.push(case);
    Ok(cases)
}

fn algebra_axioms(rng: &mut ChaCha8Rng) -> Result<Vec<SuiteCase>> {
    let mut assoc = SuiteCase::new("associativity");
    let mut distrib = SuiteCase::new("distributivity");
    let mut unit = SuiteCase::new("unit");
    let mut aug = SuiteCase::new("augmentation is multiplicative");
    let mut conj = SuiteCase::new("conjugation is an automorphism");
    let mut push = SuiteCase::new("push-forward is a homomorphism");
    let mut norm = SuiteCase::new("norm is submultiplicative");
    let q = hom(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]);
    let omega = RadialWeight::base_two();
    let e = AlgebraElement::unit(2);
    for i in 0..100 {
        let f = random_element(rng, 2, 3, 4, 0.25);
        let g = random_element(rng, 2, 3, 4, 0.25);
        let h = random_element(rng, 2, 3, 4, 0.25);
        let t = random_word(rng, 2, 3);
        let label = || format!("sample {i}");
        assoc.check(&(&f * &g) * &h == &f * &(&g * &h), label);
        distrib.check(
            &f * &(&g + &h) == &(&f * &g) + &(&f * &h) && &(&g + &h) * &f == &(&g * &f) + &(&h * &f),
            label,
        );
        unit.check(&e * &f == f && &f * &e == f, label);
        aug.check((&f * &g).augmentation() == &f.augmentation() * &g.augmentation(), label);
        conj.record(
            (|| Ok((&f * &g).conjugate(&t)? == &f.conjugate(&t)? * &g.conjugate(&t)?))(),
            label,
        );
        push.record(
            (|| Ok(push_forward(&(&f * &g), &q)? == &push_forward(&f, &q)? * &push_forward(&g, &q)?))(),
            label,
        );
        let fr = random_element(rng, 2, 3, 4, 0.0);
        let gr = random_element(rng, 2, 3, 4, 0.0);
        norm.record(
            (|| {
                let lhs = (&fr * &gr).weighted_norm(&omega)?.upper;
                Ok(lhs <= fr.weighted_norm(&omega)?.upper * gr.weighted_norm(&omega)?.upper)
            })(),
            label,
        );
    }
    Ok(vec![assoc, distrib, unit, aug, conj, push, norm])
}

/// A random element of `ℂH` with small integer coefficients.
pub fn random_model_element(rng: &mut impl Rng, model: &FiniteModel) -> AlgebraElement<Permutation> {
    let mut f = AlgebraElement::zero(model.context());
    for &h in model.subgroup_ids() {
        let c = rng.gen_range(-2i64..=2);
        f.add_term(model.element(h).clone(), &Coefficient::from_int(c));
    }
    f
}

/// One random left ideal `I` of `ℂH` and the full lifting check for it:
/// the codimension formula, the left-ideal witnesses, and extraction of a
/// random `g ∈ I` from an expression over generators of `J`.
pub fn lifting_instance(rng: &mut impl Rng, model: &FiniteModel) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let seeds: Vec<_> = (0..rng.gen_range(1..=2)).map(|_| random_model_element(rng, model)).collect();
    let basis = model.left_ideal_in_h(&seeds)?;
    let lifted = lift_ideal(model, &basis)?;
    if !lifted.all_verified() {
        problems.push("left-ideal witness failed".into());
    }
    let report = codimension_report(model, &lifted)?;
    if !(report.formula_holds && report.j_is_left_ideal) {
        problems.push(format!("codimension report {report:?}"));
    }
    let t = model.transversal().to_vec();
    let mut gens: Vec<AlgebraElement<Permutation>> = seeds
        .iter()
        .map(|s| s.left_translate(t.choose(rng).expect("nonempty transversal")))
        .collect();
    let mut mixed = AlgebraElement::zero(model.context());
    for tk in &t {
        let mut r = AlgebraElement::zero(model.context());
        for b in &basis {
            r = &r + &b.scale(&Coefficient::from_int(rng.gen_range(-1..=1)));
        }
        mixed = &mixed + &r.left_translate(tk);
    }
    gens.push(mixed);
    let mut g = AlgebraElement::zero(model.context());
    for b in &basis {
        g = &g + &b.scale(&Coefficient::from_int(rng.gen_range(-2..=2)));
    }
    match solve_left_ideal_membership(model, &gens, &g)? {
        None => problems.push("g is not in the left ideal generated by the J generators".into()),
        Some(hs) => {
            let expr: Vec<_> = hs.into_iter().zip(gens).collect();
            let out = extract_subgroup_expression(model, &g, &expr)?;
            let i_span = model.span(&basis)?;
            for term in &out.terms {
                if !i_span.contains(&model.to_dense(&term.component)?) {
                    problems.push(format!("component f_{}^({}) is not in I", term.i, term.k));
                }
            }
            if out.evaluate() != g {
                problems.push("extraction does not reproduce g".into());
            }
        }
    }
    Ok(problems)
}

fn lifting_suite(rng: &mut ChaCha8Rng) -> Result<Vec<SuiteCase>> {
    let mut cases = Vec::new();
    for model in FiniteModel::standard() {
        let mut case = SuiteCase::new(model.name().to_string());
        for i in 0..20 {
            let problems = lifting_instance(rng, &model)?;
            case.checked += 1;
            case.failures.extend(problems.into_iter().map(|p| format!("ideal {i}: {p}")));
        }
        cases.push(case);
    }
    Ok(cases)
}

fn cancellation_suite() -> Result<Vec<SuiteCase>> {
    let mut cases = Vec::new();
    let even = crate::groups::even_length_subgroup(Radius::Fixed(2));
    let subs = sample_subgroups();
    let mut targets: Vec<(&str, &FiniteIndexSubgroup, usize)> = vec![("even-length, r = 2", &even, 4)];
    targets.push((subs[1].0, &subs[1].1, 4));
    targets.push((subs[2].0, &subs[2].1, 3));
    for (name, sub, max_len) in targets {
        let metric = YMetric::new(sub, max_len, DEFAULT_NODE_CAP)?;
        let summary = check_exhaustive(&metric, max_len, 10_000)?;
        let mut case = SuiteCase::new(format!("{name}, |u|_Y <= {max_len}"));
        case.checked = summary.factorizations;
        case.failures = summary.violations;
        if summary.truncated > 0 {
            case.failures.push(format!("{} elements hit the factorization cap", summary.truncated));
        }
        cases.push(case);
    }
    let metric = YMetric::new(&even, 2, DEFAULT_NODE_CAP)?;
    let aa = FreeWord::parse("aa", 2)?;
    let bogus = crate::ideals::YFactorization::new(&even, aa, vec![FreeWord::parse("ab", 2)?, FreeWord::parse("Ba", 2)?])?;
    let mut control = SuiteCase::new("non-geodesic (ab)(Ba) is rejected");
    control.check(
        matches!(crate::cancellation::check_cancellation(&metric, &bogus), Err(Error::NonGeodesic { .. })),
        || "accepted".into(),
    );
    cases.push(control);
    Ok(cases)
}

fn certificate_suite(rng: &mut ChaCha8Rng) -> Result<Vec<SuiteCase>> {
    let mut cases = Vec::new();
    for (k, (name, sub)) in sample_subgroups().into_iter().enumerate() {
        let metric = YMetric::new(&sub, 3, DEFAULT_NODE_CAP)?;
        let mut certs = SuiteCase::new(format!("certificates: {name}"));
        for _ in 0..if k == 0 { 68 } else { 66 } {
            let u = random_subgroup_word(rng, &sub, 6);
            let label = || format!("u = {u}");
            certs.record(
                telescope_certificate(&metric, &u).map(|c| {
                    c.identity_checked && c.growth.as_ref().is_some_and(|e| e.holds && e.strictly_increasing)
                }),
                label,
            );
        }
        cases.push(certs);

        let mut dec = SuiteCase::new(format!("decompositions: {name}"));
        let mut expr = SuiteCase::new(format!("J expressions: {name}"));
        for _ in 0..10 {
            let mut f = AlgebraElement::zero(2);
            for _ in 0..rng.gen_range(1..=3) {
                let c = random_coefficient(rng, 0.25);
                f.add_term(random_subgroup_word(rng, &sub, 2), &c);
            }
            let total = f.augmentation();
            f.add_term(FreeWord::identity(2), &-&total);
            dec.record(
                decompose_augmentation(&sub, &f, DEFAULT_NODE_CAP)
                    .map(|d| d.identity_checked && d.evidence.values().all(|e| e.holds)),
                || format!("f = {f}"),
            );

            let g = random_element(rng, 2, 3, 4, 0.25);
            let sums = coset_sums(&g, sub.cosets())?;
            let mut j = g.clone();
            for (t, s) in sub.transversal().iter().zip(&sums) {
                j.add_term(t.clone(), &-s);
            }
            expr.record(
                express_in_j_generators(&sub, &j, DEFAULT_NODE_CAP).map(|e| e.identity_checked),
                || format!("f = {j}"),
            );
        }
        cases.push(dec);
        cases.push(expr);
    }
    Ok(cases)
}

/// Word lengths in the finite quotient by image-set growth:
/// `S_k = S_{k-1} · X`, so `g` first appears at step `|g|`.
pub fn lengths_by_growth(h: &GroupHom) -> BTreeMap<Permutation, usize> {
    let letters: Vec<Permutation> = alphabet(h.rank()).map(|x| h.letter_image(x).clone()).collect();
    let mut seen = BTreeMap::from([(Permutation::identity(h.degree()), 0usize)]);
    let mut frontier: BTreeSet<Permutation> = seen.keys().cloned().collect();
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let mut next = BTreeSet::new();
        for p in &frontier {
            for x in &letters {
                let q = p.compose(x);
                if !seen.contains_key(&q) {
                    seen.insert(q.clone(), k);
                    next.insert(q);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn induced_weight_suite() -> Result<Vec<SuiteCase>> {
    let mut cases = Vec::new();
    let two = RadialWeight::base_two();
    for (name, h) in quotient_test_set() {
        let induced = InducedWeight::new(&two, &h, DEFAULT_CAP)?;
        let mut case = SuiteCase::new(format!("induced weight on {name}"));
        for (p, len) in lengths_by_growth(&h) {
            case.record(induced.eval(&p).map(|v| v == two.at_length(len)), || format!("{p}"));
        }
        case.check(case.checked == induced.table().order(), || "orders differ".into());
        cases.push(case);

        let stab = match FiniteIndexSubgroup::new(h.clone(), SubgroupMode::Stabilizer(0), Radius::Auto, DEFAULT_CAP) {
            Ok(s) => s,
            Err(e @ Error::CapExceeded { .. }) => {
                cases.push(SuiteCase::new(format!("pull-back generation in {name}: skipped, {e}")));
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut pull = SuiteCase::new(format!("pull-back generation, point stabilizer in {name}"));
        pull.record(pull_back_generators(&h, &stab, DEFAULT_CAP).map(|r| r.generates), || name.clone());
        cases.push(pull);
    }
    let sym3 = hom(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]);
    let sign = hom(2, vec![perm(2, &[&[0, 1]]), Permutation::identity(2)]);
    let alt = FiniteIndexSubgroup::new(sign, SubgroupMode::Kernel, Radius::Auto, DEFAULT_CAP)?;
    let mut pull = SuiteCase::new("pull-back generation, Alt(3) in Sym(3)");
    pull.record(
        pull_back_generators(&sym3, &alt, DEFAULT_CAP).map(|r| r.generates && !r.generators.is_empty()),
        || "Alt(3)".into(),
    );
    cases.push(pull);
    Ok(cases)
}

fn separation_suite(rng: &mut ChaCha8Rng) -> Result<Vec<SuiteCase>> {
    let family = GrigorchukFamily::default();
    let omega = RadialWeight::base_two();
    let mut sep = SuiteCase::new("separated within 8 levels");
    let mut eq3 = SuiteCase::new("push-forward matches the coset sum");
    let mut cert = SuiteCase::new("certified inequality when dominated");
    let mut done = 0;
    while done < 100 {
        let f = random_element(rng, 4, 4, 4, 0.25);
        let result = match separate(&f, &family, 8, &omega) {
            Err(Error::ZeroElement) => continue,
            r => r,
        };
        done += 1;
        match result {
            Ok(r) => {
                sep.check(true, String::new);
                let h = family.level_hom(r.level)?;
                let pushed = push_forward(&r.translated, &h)?.identity_coefficient();
                eq3.check(pushed == r.identity_sum && !pushed.is_zero(), || format!("f = {f}"));
                if let Some(ok) = r.certified {
                    cert.check(ok, || format!("f = {f}"));
                }
            }
            Err(e) => sep.record(Err(e), || format!("f = {f}")),
        }
    }
    Ok(vec![sep, eq3, cert])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(n.as_str().parse::<SuiteName>().unwrap(), n);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }

    #[test]
    fn naive_reduce_examples() {
        let w = FreeWord::parse("ab", 2).unwrap();
        let letters = [w.letters(), FreeWord::parse("BA", 2).unwrap().letters()].concat();
        assert!(naive_reduce(&letters).is_empty());
    }

    #[test]
    fn reduction_suite_is_deterministic() {
        let a = run_suite(SuiteName::ReductionOracle, 7).unwrap();
        let b = run_suite(SuiteName::ReductionOracle, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
        assert_eq!(a.checked(), 10_000);
    }

    #[test]
    fn sample_subgroups_have_expected_indices() {
        let subs = sample_subgroups();
        assert_eq!(subs.iter().map(|(_, s)| s.index()).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert!(subs.iter().all(|(_, s)| s.y_generates() && s.radius() <= 4));
    }
}
