//! Acceptance gate: eight criteria, each checked against an oracle written
//! here from first principles. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use beurling::algebra::{coset_sums, push_forward, AlgebraElement, Coefficient, Rational};
use beurling::cancellation::{check_cancellation, check_exhaustive};
use beurling::freegroup::{reduce, FreeWord, Letter};
use beurling::groups::{even_length_subgroup, GroupHom, Permutation, Radius, DEFAULT_CAP};
use beurling::ideals::{
    codimension_report, extract_subgroup_expression, lift_ideal, separate, solve_left_ideal_membership,
    telescope_certificate, CosetStructure, FiniteModel, GrigorchukFamily, YFactorization, YMetric, DEFAULT_NODE_CAP,
};
use beurling::suites::{broken_table_weight, quotient_test_set, sample_subgroups};
use beurling::weights::{check_submultiplicative, induced_eval, InducedWeight, RadialWeight, TableWeight, Weight};
use beurling::Error;

type Outcome = Result<String, String>;

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("1 reduction oracle", 5, reduction_oracle),
        ("2 telescoping certificates", 30, certificates),
        ("3 cancellation, exhaustive", 60, cancellation_exhaustive),
        ("4 induced weight identity", 120, induced_weight),
        ("5 kernel characterization", 60, kernel_characterization),
        ("6 finite models", 30, finite_models),
        ("7 separation", 120, separation),
        ("8 weight axioms", 300, weight_axioms),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {:.1}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name:<30} {:>7.2}s  {detail}", elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:<30} {:>7.2}s  {detail}", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: beurling::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---- words as letter codes: generator g is 2g, its inverse 2g + 1 ----

fn inv(x: u8) -> u8 {
    x ^ 1
}

/// Repeatedly deletes the leftmost adjacent pair `x x^{-1}` until none is left.
fn naive_reduce(w: &[u8]) -> Vec<u8> {
    let mut w = w.to_vec();
    'scan: loop {
        for i in 1..w.len() {
            if w[i] == inv(w[i - 1]) {
                w.remove(i);
                w.remove(i - 1);
                continue 'scan;
            }
        }
        return w;
    }
}

fn concat(a: &[u8], b: &[u8]) -> Vec<u8> {
    naive_reduce(&[a, b].concat())
}


fn codes(w: &FreeWord) -> Vec<u8> {
    w.letters().iter().map(|l| l.code() as u8).collect()
}

fn word(rank: usize, w: &[u8]) -> FreeWord {
    let letters: Vec<Letter> = w.iter().map(|&c| Letter::from_code(c as usize)).collect();
    reduce(rank, &letters).expect("codes within rank")
}

/// Letters cancelled when `b` is appended to the reduced word `a`.
fn cancelled(a: &[u8], b: &[u8]) -> usize {
    let mut k = 0;
    while k < a.len() && k < b.len() && a[a.len() - 1 - k] == inv(b[k]) {
        k += 1;
    }
    k
}

/// Every reduced word of length at most `r`, by depth-first extension.
fn reduced_words(rank: usize, r: usize) -> Vec<Vec<u8>> {
    fn go(rank: usize, r: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        out.push(cur.clone());
        if cur.len() == r {
            return;
        }
        for x in 0..2 * rank as u8 {
            if cur.last().is_some_and(|&l| l == inv(x)) {
                continue;
            }
            cur.push(x);
            go(rank, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, r, &mut Vec::new(), &mut out);
    out
}

fn real(c: &Coefficient) -> Result<BigRational, String> {
    ensure(c.im.is_zero(), || format!("expected a real coefficient, got {c}"))?;
    Ok(c.re.clone())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    (0..e).fold(q(1), |acc, _| acc * base)
}

// ---- 1 ----

fn reduction_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for rank in [2usize, 3] {
        for _ in 0..5000 {
            let len = rng.gen_range(0..=64);
            let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2 * rank as u8)).collect();
            let letters: Vec<Letter> = w.iter().map(|&c| Letter::from_code(c as usize)).collect();
            let fast = codes(&lib(reduce(rank, &letters))?);
            let slow = naive_reduce(&w);
            ensure(fast == slow, || format!("rank {rank}, {w:?}: {fast:?} vs {slow:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} sequences, 0 mismatches"))
}

// ---- 2 ----

type Sparse = HashMap<Vec<u8>, BigRational>;

fn add_to(f: &mut Sparse, w: Vec<u8>, c: BigRational) {
    let e = f.entry(w).or_insert_with(BigRational::zero);
    *e += c;
}

fn convolve(f: &Sparse, g: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (s, a) in f {
        for (t, b) in g {
            add_to(&mut out, concat(s, t), a * b);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn sparse(f: &AlgebraElement<FreeWord>) -> Result<Sparse, String> {
    f.terms().iter().map(|(w, c)| Ok((codes(w), real(c)?))).collect()
}

fn certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let two = q(2);
    let subs = sample_subgroups();
    let mut count = 0;
    for (k, (name, sub)) in subs.iter().enumerate() {
        let metric = lib(YMetric::new(sub, 3, DEFAULT_NODE_CAP))?;
        let y: Vec<Vec<u8>> = sub.y().iter().map(codes).collect();
        let samples = if k == 0 { 68 } else { 66 };
        for _ in 0..samples {
            let n = rng.gen_range(0..=6);
            let u = (0..n).fold(Vec::new(), |acc, _| concat(&acc, y.choose(&mut rng).unwrap()));
            let uw = word(2, &u);
            let cert = lib(telescope_certificate(&metric, &uw))?;
            let label = || format!("{name}, u = {uw}");
            ensure(cert.identity_checked && cert.geodesic, || format!("{}: not verified", label()))?;
            ensure(cert.factorization.len() <= n, || format!("{}: longer than the sampled product", label()))?;
            let product = cert.factorization.factors.iter().fold(Vec::new(), |acc, y| concat(&acc, &codes(y)));
            ensure(product == u, || format!("{}: factors do not multiply to u", label()))?;

            let mut total = Sparse::new();
            for (yw, g) in &cert.gens {
                let mut gen = Sparse::new();
                add_to(&mut gen, Vec::new(), q(1));
                add_to(&mut gen, codes(yw), q(-1));
                for (w, c) in convolve(&sparse(g)?, &gen) {
                    add_to(&mut total, w, c);
                }
            }
            total.retain(|_, c| !c.is_zero());
            let mut expected = Sparse::new();
            add_to(&mut expected, Vec::new(), q(1));
            add_to(&mut expected, u.clone(), q(-1));
            expected.retain(|_, c| !c.is_zero());
            ensure(total == expected, || format!("{}: telescoping identity fails", label()))?;

            let bound = pow(&two, u.len());
            for (yw, g) in &cert.gens {
                let norm: BigRational = sparse(g)?.iter().map(|(w, c)| c.abs() * pow(&two, w.len())).sum();
                ensure(norm <= bound, || format!("{}: ‖g_{yw}‖ = {norm} > {bound}", label()))?;
            }
            let mut prefix = Vec::new();
            let mut norms = Vec::new();
            for y in &cert.factorization.factors {
                norms.push(pow(&two, prefix.len()));
                prefix = concat(&prefix, &codes(y));
            }
            ensure(norms.windows(2).all(|w| w[0] < w[1]), || format!("{}: prefix norms not increasing", label()))?;
            let growth = cert.growth.as_ref().ok_or_else(|| format!("{}: no bound evidence", label()))?;
            ensure(growth.prefix_norms == norms && growth.holds && growth.bound == bound, || {
                format!("{}: bound evidence disagrees", label())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} certificates over indices 2, 3, 4"))
}

// ---- 3 ----

fn cancellation_exhaustive() -> Outcome {
    let sub = even_length_subgroup(Radius::Fixed(2));
    let y: Vec<Vec<u8>> = reduced_words(2, 2).into_iter().filter(|w| w.len() == 2).collect();
    let lib_y: BTreeSet<Vec<u8>> = sub.y().iter().map(codes).collect();
    ensure(lib_y == y.iter().cloned().collect(), || "Y differs from the twelve words of length 2".into())?;

    // all sequences of at most four factors, grouped by product
    let mut length: HashMap<Vec<u8>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut geodesics: HashMap<Vec<u8>, Vec<Vec<usize>>> = HashMap::from([(Vec::new(), vec![vec![]])]);
    let mut layer: Vec<(Vec<usize>, Vec<u8>)> = vec![(vec![], vec![])];
    for n in 1..=4 {
        let mut next = Vec::new();
        for (seq, p) in &layer {
            for (i, yi) in y.iter().enumerate() {
                let mut s = seq.clone();
                s.push(i);
                let u = concat(p, yi);
                let d = *length.entry(u.clone()).or_insert(n);
                if d == n {
                    geodesics.entry(u.clone()).or_default().push(s.clone());
                }
                next.push((s, u));
            }
        }
        layer = next;
    }

    let mut violations = Vec::new();
    let mut total = 0;
    let half = |k: usize| k.div_ceil(2);
    for (u, seqs) in &geodesics {
        for seq in seqs {
            total += 1;
            let ys: Vec<&Vec<u8>> = seq.iter().map(|&i| &y[i]).collect();
            for i in 1..ys.len() {
                let c = cancelled(ys[i - 1], ys[i]);
                if c + 1 > half(ys[i - 1].len()).min(half(ys[i].len())) {
                    violations.push(format!("{u:?}: pair {i} cancels {c}"));
                }
            }
            let mut prefix: Vec<u8> = Vec::new();
            for (j, yj) in ys.iter().enumerate() {
                let c = cancelled(&prefix, yj);
                if c >= half(yj.len()) {
                    violations.push(format!("{u:?}: factor {} loses position {}", j + 1, c));
                }
                let next = concat(&prefix, yj);
                if next.len() <= prefix.len() {
                    violations.push(format!("{u:?}: prefix {} does not grow", j + 1));
                }
                prefix = next;
            }
        }
    }
    ensure(violations.is_empty(), || violations[..violations.len().min(3)].join("; "))?;

    let metric = lib(YMetric::new(&sub, 4, DEFAULT_NODE_CAP))?;
    for (u, seqs) in &geodesics {
        let (all, truncated) = lib(metric.all_geodesics(&word(2, u), 10_000))?;
        ensure(!truncated && all.len() == seqs.len(), || {
            format!("{u:?}: {} geodesic factorizations, expected {}", all.len(), seqs.len())
        })?;
    }
    let summary = lib(check_exhaustive(&metric, 4, 10_000))?;
    ensure(summary.violations.is_empty(), || summary.violations.join("; "))?;
    ensure(summary.factorizations == total && summary.elements == geodesics.len(), || {
        format!("checker saw {} factorizations of {} elements, expected {total} of {}", summary.factorizations, summary.elements, geodesics.len())
    })?;

    let aa = word(2, &[0, 0]);
    let bogus = lib(YFactorization::new(&sub, aa, vec![word(2, &[0, 2]), word(2, &[3, 0])]))?;
    ensure(
        matches!(check_cancellation(&metric, &bogus), Err(Error::NonGeodesic { given: 2, geodesic: 1 })),
        || "the non-geodesic (ab)(Ba) was not rejected".into(),
    )?;
    Ok(format!("{} elements, {total} factorizations, 0 violations; (ab)(Ba) rejected", geodesics.len()))
}

// ---- 4 ----

fn images(h: &GroupHom) -> Vec<Vec<u32>> {
    (0..2 * h.rank())
        .map(|code| h.letter_image(Letter::from_code(code)).images().to_vec())
        .collect()
}

fn compose(p: &[u32], x: &[u32]) -> Vec<u32> {
    x.iter().map(|&j| p[j as usize]).collect()
}

/// Lengths in the quotient from `S_k = S_{k-1} · X`.
fn image_set_lengths(h: &GroupHom) -> BTreeMap<Vec<u32>, usize> {
    let x = images(h);
    let e: Vec<u32> = (0..h.degree() as u32).collect();
    let mut seen = BTreeMap::from([(e.clone(), 0)]);
    let mut current = vec![e];
    let mut k = 0;
    while !current.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for p in &current {
            for xi in &x {
                let r = compose(p, xi);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), k);
                    next.push(r);
                }
            }
        }
        current = next;
    }
    seen
}

/// Shortest preimage length of each element among all reduced words of
/// length at most `r`, or `None` if that ball has more than `cap` words.
fn ball_preimage_lengths(h: &GroupHom, r: usize, cap: u64) -> Option<BTreeMap<Vec<u32>, usize>> {
    let m = 2 * h.rank() as u64;
    let size: u64 = 1 + (1..=r as u32).map(|k| m * (m - 1).pow(k - 1)).sum::<u64>();
    if size > cap {
        return None;
    }
    fn go(x: &[Vec<u32>], r: usize, last: Option<usize>, p: Vec<u32>, len: usize, out: &mut BTreeMap<Vec<u32>, usize>) {
        let best = out.entry(p.clone()).or_insert(len);
        *best = (*best).min(len);
        if len == r {
            return;
        }
        for (code, xi) in x.iter().enumerate() {
            if last.is_some_and(|l| l == code ^ 1) {
                continue;
            }
            go(x, r, Some(code), compose(&p, xi), len + 1, out);
        }
    }
    let mut out = BTreeMap::new();
    go(&images(h), r, None, (0..h.degree() as u32).collect(), 0, &mut out);
    Some(out)
}

fn induced_weight() -> Outcome {
    let two = RadialWeight::base_two();
    let mut checked = 0;
    let mut brute = Vec::new();
    for (name, h) in quotient_test_set() {
        let lengths = image_set_lengths(&h);
        let diameter = *lengths.values().max().unwrap();
        let induced = lib(InducedWeight::new(&two, &h, DEFAULT_CAP))?;
        ensure(induced.table().order() == lengths.len(), || format!("{name}: order differs"))?;
        if let Some(ball) = ball_preimage_lengths(&h, diameter + 2, 3_000_000) {
            ensure(ball == lengths, || format!("{name}: ball preimages disagree with image-set iteration"))?;
            brute.push(name.clone());
        }
        for (p, len) in &lengths {
            let perm = Permutation::new(p.clone()).map_err(|e| e.to_string())?;
            let expected = pow(&q(2), *len);
            let v = lib(induced_eval(&two, &h, &perm, DEFAULT_CAP))?;
            ensure(v == expected, || format!("{name}: ω({perm}) = {v}, expected {expected}"))?;
            ensure(lib(induced.eval(&perm))? == expected, || format!("{name}: cached table disagrees at {perm}"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} elements over {} quotients; ball brute force on {}",
        quotient_test_set().len(),
        brute.len()
    ))
}

// ---- 5 ----

fn random_b4_element(rng: &mut ChaCha8Rng, rank: usize, complex: bool) -> Vec<(Vec<u8>, BigRational, BigRational)> {
    let ball = reduced_words(rank, 4);
    (0..rng.gen_range(1..=6))
        .map(|_| {
            let w = ball.choose(rng).unwrap().clone();
            let re = BigRational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into());
            let im = if complex && rng.gen_bool(0.3) {
                BigRational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into())
            } else {
                q(0)
            };
            (w, re, im)
        })
        .collect()
}

fn to_element(rank: usize, terms: &[(Vec<u8>, BigRational, BigRational)]) -> AlgebraElement<FreeWord> {
    let mut f = AlgebraElement::zero(rank);
    for (w, re, im) in terms {
        f.add_term(word(rank, w), &Coefficient::new(re.clone(), im.clone()));
    }
    f
}

fn kernel_characterization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sub = even_length_subgroup(Radius::Fixed(2));
    let mut zeros = 0;
    for _ in 0..500 {
        let mut terms = random_b4_element(&mut rng, 2, true);
        if rng.gen_bool(0.5) {
            for parity in 0..2 {
                let (re, im) = terms
                    .iter()
                    .filter(|(w, _, _)| w.len() % 2 == parity)
                    .fold((q(0), q(0)), |(a, b), (_, r, i)| (a + r, b + i));
                let anchor = if parity == 0 { vec![] } else { vec![0] };
                terms.push((anchor, -re, -im));
            }
        }
        let mut sums = [(q(0), q(0)), (q(0), q(0))];
        for (w, re, im) in &terms {
            sums[w.len() % 2].0 += re;
            sums[w.len() % 2].1 += im;
        }
        let vanish = sums.iter().all(|(a, b)| a.is_zero() && b.is_zero());
        let f = to_element(2, &terms);
        let pushed = lib(push_forward(&f, sub.hom()))?;
        ensure(pushed.is_zero() == vanish, || format!("f = {f}: push-forward zero = {}", pushed.is_zero()))?;
        let lib_sums = lib(coset_sums(&f, sub.cosets()))?;
        for (t, s) in sub.transversal().iter().zip(&lib_sums) {
            let (re, im) = &sums[t.len() % 2];
            ensure(s.re == *re && s.im == *im, || format!("f = {f}: coset of {t} sums to {s}"))?;
        }
        zeros += vanish as usize;
    }
    Ok(format!("500 elements, {zeros} in the kernel"))
}

// ---- 6 ----

fn rank_of(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &pivot;
                for j in c..width {
                    let v = &m[r][j] * &factor;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

struct Model {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    in_h: Vec<bool>,
}

impl Model {
    fn new(m: &FiniteModel) -> Model {
        let elements = m.table().elements().to_vec();
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut in_h = vec![false; elements.len()];
        for &i in m.subgroup_ids() {
            in_h[i] = true;
        }
        Model { elements, index, in_h }
    }

    fn dense(&self, f: &AlgebraElement<Permutation>) -> Result<Vec<BigRational>, String> {
        let mut v = vec![q(0); self.elements.len()];
        for (p, c) in f.terms() {
            v[self.index[p]] = real(c)?;
        }
        Ok(v)
    }

    /// `δ_x ∗ v`.
    fn translate(&self, x: usize, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![q(0); v.len()];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[self.index[&self.elements[x].compose(&self.elements[i])]] += c;
            }
        }
        out
    }

    fn convolve(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![q(0); a.len()];
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                for (j, v) in self.translate(i, b).into_iter().enumerate() {
                    out[j] += c * v;
                }
            }
        }
        out
    }
}

fn finite_models() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ideals = 0;
    for fm in FiniteModel::standard() {
        let m = Model::new(&fm);
        let n = m.elements.len();
        let h_ids: Vec<usize> = (0..n).filter(|&i| m.in_h[i]).collect();
        let index = n / h_ids.len();
        for trial in 0..20 {
            let label = || format!("{fm}, ideal {trial}");
            let seeds: Vec<AlgebraElement<Permutation>> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let mut f = AlgebraElement::zero(fm.context());
                    for &h in &h_ids {
                        f.add_term(m.elements[h].clone(), &Coefficient::from_int(rng.gen_range(-2..=2)));
                    }
                    f
                })
                .collect();
            let mut i_rows = Vec::new();
            for s in &seeds {
                let v = m.dense(s)?;
                for &x in &h_ids {
                    i_rows.push(m.translate(x, &v));
                }
            }
            let dim_i = rank_of(&i_rows);

            let basis = lib(fm.left_ideal_in_h(&seeds))?;
            let basis_rows: Vec<_> = basis.iter().map(|b| m.dense(b)).collect::<Result<_, _>>()?;
            ensure(rank_of(&basis_rows) == dim_i && rank_of(&[i_rows.clone(), basis_rows.clone()].concat()) == dim_i, || {
                format!("{}: basis does not span I", label())
            })?;
            let lifted = lib(lift_ideal(&fm, &basis))?;
            let mut j_rows = Vec::new();
            for b in &basis_rows {
                for x in 0..n {
                    j_rows.push(m.translate(x, b));
                }
            }
            let dim_j = rank_of(&j_rows);
            ensure(n - dim_j == index * (h_ids.len() - dim_i), || {
                format!("{}: codim J = {}, index {index}, codim I = {}", label(), n - dim_j, h_ids.len() - dim_i)
            })?;
            let report = lib(codimension_report(&fm, &lifted))?;
            ensure(report.dim_j == dim_j && report.dim_i == dim_i && report.formula_holds, || {
                format!("{}: report {report:?}", label())
            })?;
            let gens = lifted.generator_elements();
            let gen_rows: Vec<_> = gens.iter().map(|g| m.dense(g)).collect::<Result<_, _>>()?;
            ensure(rank_of(&[j_rows.clone(), gen_rows].concat()) == dim_j, || {
                format!("{}: a lifted generator lies outside J", label())
            })?;

            let mut g = AlgebraElement::zero(fm.context());
            for b in &basis {
                g = &g + &b.scale(&Coefficient::from_int(rng.gen_range(-2..=2)));
            }
            let hs = lib(solve_left_ideal_membership(&fm, &gens, &g))?
                .ok_or_else(|| format!("{}: g is not in ℂG·J", label()))?;
            let expr: Vec<_> = hs.into_iter().zip(gens).collect();
            let out = lib(extract_subgroup_expression(&fm, &g, &expr))?;
            let mut total = vec![q(0); n];
            for t in &out.terms {
                ensure(t.coefficient.support().all(|p| m.in_h[m.index[p]]), || {
                    format!("{}: coefficient leaves H", label())
                })?;
                let comp = m.dense(&t.component)?;
                ensure(rank_of(&[i_rows.clone(), vec![comp.clone()]].concat()) == dim_i, || {
                    format!("{}: component outside I", label())
                })?;
                for (k, v) in m.convolve(&m.dense(&t.coefficient)?, &comp).into_iter().enumerate() {
                    total[k] += v;
                }
            }
            ensure(total == m.dense(&g)?, || format!("{}: extraction does not reproduce g", label()))?;
            ideals += 1;
        }
    }
    Ok(format!("{ideals} ideals over 3 models"))
}

// ---- 7 ----

/// Grigorchuk generators 0..4 = a, b, c, d; each is an involution.
/// Sections: b = (a, c), c = (a, d), d = (1, b).
fn sections(x: u8) -> [Option<u8>; 2] {
    match x {
        1 => [Some(0), Some(2)],
        2 => [Some(0), Some(3)],
        3 => [None, Some(1)],
        _ => unreachable!(),
    }
}

/// Word problem by the contracting recursion.
fn grig_trivial(w: &[u8]) -> bool {
    let mut s: Vec<u8> = Vec::new();
    for &x in w {
        match (s.last().copied(), x) {
            (Some(y), x) if y == x => {
                s.pop();
            }
            (Some(y), x) if y != 0 && x != 0 => {
                s.pop();
                s.push(6 - y - x);
            }
            _ => s.push(x),
        }
    }
    if s.is_empty() {
        return true;
    }
    if s.iter().filter(|&&x| x == 0).count() % 2 == 1 {
        return false;
    }
    let mut parts = [Vec::new(), Vec::new()];
    let mut swapped = 0;
    for &x in &s {
        if x == 0 {
            swapped ^= 1;
            continue;
        }
        let [s0, s1] = sections(x);
        if let Some(v) = s0 {
            parts[swapped].push(v);
        }
        if let Some(v) = s1 {
            parts[1 - swapped].push(v);
        }
    }
    if parts[0].len() >= s.len() && parts[1].len() >= s.len() {
        return false;
    }
    grig_trivial(&parts[0]) && grig_trivial(&parts[1])
}

/// Whether the word acts trivially on the first `level` levels of the tree.
fn grig_trivial_at(w: &[u8], level: usize) -> bool {
    fn act(x: u8, v: &[u8]) -> Vec<u8> {
        let mut out = v.to_vec();
        let mut state = Some(x);
        for bit in out.iter_mut() {
            match state {
                None => break,
                Some(0) => {
                    *bit ^= 1;
                    state = None;
                }
                Some(g) => {
                    state = sections(g)[*bit as usize];
                }
            }
        }
        out
    }
    (0..1u32 << level).all(|leaf| {
        let v: Vec<u8> = (0..level).map(|i| (leaf >> i & 1) as u8).collect();
        let mut cur = v.clone();
        for &x in w.iter().rev() {
            cur = act(x, &cur);
        }
        cur == v
    })
}

fn gen_of(w: &[u8]) -> Vec<u8> {
    w.iter().map(|&c| c / 2).collect()
}

fn separation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let family = GrigorchukFamily::default();
    let omega = RadialWeight::base_two();
    let mut separated = 0;
    let mut certified = 0;
    let mut levels = BTreeMap::new();
    while separated < 100 {
        let terms = random_b4_element(&mut rng, 4, false);
        let f = to_element(4, &terms);
        // group support words that are equal in G
        let mut classes: Vec<(Vec<u8>, BigRational)> = Vec::new();
        for (w, c) in f.terms() {
            let g = gen_of(&codes(w));
            let c = real(c)?;
            match classes.iter_mut().find(|(r, _)| grig_trivial(&[invert_gens(r), g.clone()].concat())) {
                Some(class) => class.1 += c,
                None => classes.push((g, c)),
            }
        }
        classes.retain(|(_, c)| !c.is_zero());
        let result = separate(&f, &family, 8, &omega);
        if classes.is_empty() {
            ensure(matches!(result, Err(Error::ZeroElement)), || format!("f = {f} is zero in G but was separated"))?;
            continue;
        }
        let r = result.map_err(|e| format!("f = {f}: {e}"))?;
        separated += 1;
        *levels.entry(r.level).or_insert(0) += 1;

        let t = match &r.translation {
            Some(t) => codes(t),
            None => vec![],
        };
        let translated: Vec<(Vec<u8>, BigRational)> = f.terms().iter().map(|(w, c)| Ok((concat(&t, &codes(w)), real(c)?))).collect::<Result<_, String>>()?;
        let f_e: BigRational = translated.iter().filter(|(w, _)| grig_trivial(&gen_of(w))).map(|(_, c)| c.clone()).sum();
        ensure(!f_e.is_zero() && r.f_e == Coefficient::real(f_e.clone()), || format!("f = {f}: f(e) = {}", r.f_e))?;
        let sum_at = |level: usize| -> BigRational {
            translated.iter().filter(|(w, _)| grig_trivial_at(&gen_of(w), level)).map(|(_, c)| c.clone()).sum()
        };
        for level in 1..r.level {
            ensure(sum_at(level).is_zero(), || format!("f = {f}: level {level} already separates"))?;
        }
        let qfe = sum_at(r.level);
        ensure(!qfe.is_zero() && r.identity_sum == Coefficient::real(qfe.clone()), || {
            format!("f = {f}: q(f)(e) = {} at level {}, expected {qfe}", r.identity_sum, r.level)
        })?;

        // classes of the translated element collapsing at the chosen level
        let mut tclasses: Vec<(Vec<u8>, BigRational)> = Vec::new();
        for (w, c) in &translated {
            let g = gen_of(w);
            match tclasses.iter_mut().find(|(rep, _)| grig_trivial(&[invert_gens(rep), g.clone()].concat())) {
                Some(class) => {
                    if g.len() < class.0.len() {
                        class.0 = g;
                    }
                    class.1 += c;
                }
                None => tclasses.push((g, c.clone())),
            }
        }
        let tail: BigRational = tclasses
            .iter()
            .filter(|(rep, c)| !c.is_zero() && !grig_trivial(rep) && grig_trivial_at(rep, r.level))
            .map(|(rep, c)| c.abs() * pow(&q(2), rep.len()))
            .sum();
        ensure(tail == r.tail, || format!("f = {f}: tail {} vs {tail}", r.tail))?;
        let dominated = f_e.abs() > tail;
        ensure(r.tail_dominated == dominated, || format!("f = {f}: domination flag"))?;
        if dominated {
            let holds = qfe.abs() >= f_e.abs() - &tail;
            ensure(holds && r.certified == Some(true), || format!("f = {f}: certified inequality fails"))?;
            certified += 1;
        }
    }
    Ok(format!("100 separated (levels {levels:?}), {certified} certified inequalities"))
}

fn invert_gens(w: &[u8]) -> Vec<u8> {
    w.iter().rev().copied().collect()
}

// ---- 8 ----

fn weight_axioms() -> Outcome {
    let ball = reduced_words(2, 6);
    let words: Vec<FreeWord> = ball.iter().map(|w| word(2, w)).collect();
    for base in [q(2), BigRational::new(3.into(), 2.into())] {
        let w = lib(RadialWeight::new(base.clone()))?;
        let powers: Vec<BigRational> = (0..=12).map(|k| pow(&base, k)).collect();
        for s in &ball {
            for t in &ball {
                let st = s.len() + t.len() - 2 * cancelled(s, t);
                ensure(powers[st] <= &powers[s.len()] * &powers[t.len()], || format!("oracle fails at {s:?} {t:?}"))?;
            }
        }
        let report = lib(check_submultiplicative(&w, &words))?;
        ensure(report.passed() && report.checked_pairs == ball.len() * ball.len(), || {
            format!("base {base}: {report}")
        })?;
    }

    let two = RadialWeight::base_two();
    let mut tables = 0;
    for (name, h) in quotient_test_set() {
        let lengths = image_set_lengths(&h);
        let values: BTreeMap<Permutation, Rational> = lengths
            .iter()
            .map(|(p, &l)| (Permutation::new(p.clone()).unwrap(), pow(&q(2), l)))
            .collect();
        let elements: Vec<Permutation> = values.keys().cloned().collect();
        for s in &elements {
            for t in &elements {
                ensure(values[&s.compose(t)] <= &values[s] * &values[t], || format!("{name}: oracle fails"))?;
            }
        }
        let induced = lib(InducedWeight::new(&two, &h, DEFAULT_CAP))?;
        let induced_values = lib(elements.iter().map(|p| Ok((p.clone(), induced.eval(p)?))).collect())?;
        let table = lib(TableWeight::new(induced_values))?;
        ensure(table.values() == &values, || format!("{name}: induced table differs from the lengths"))?;
        let report = lib(check_submultiplicative(&table, &elements))?;
        ensure(report.passed(), || format!("{name}: {report}"))?;
        tables += 1;
    }

    let (broken, domain) = broken_table_weight();
    let report = lib(check_submultiplicative(&broken, &domain))?;
    let v = report.violations.first().ok_or("the broken table weight passed")?;
    let ws = lib(broken.eval(&v.s))?;
    let wt = lib(broken.eval(&v.t))?;
    let wst = lib(broken.eval(&v.s.compose(&v.t)))?;
    ensure(wst > &ws * &wt && wst == v.weight_of_product, || "the reported witness is not a violation".into())?;
    Ok(format!(
        "B_6 ({} words) at bases 2 and 3/2, {tables} quotient tables; broken table flagged at ({}, {})",
        ball.len(),
        v.s,
        v.t
    ))
}
