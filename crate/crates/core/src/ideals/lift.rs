use std::fmt;

use crate::algebra::linalg::RowEchelon;
use crate::algebra::{AlgebraElement, Coefficient, GroupElement};
use crate::error::{Error, Result};
use crate::freegroup::{alphabet, FreeWord};
use crate::groups::{quotient_table, FiniteGroupTable, FiniteIndexSubgroup, GroupHom, Permutation};

/// A group with a finite-index subgroup `H` and a left transversal of it.
pub trait CosetStructure {
    type Elem: GroupElement;

    fn context(&self) -> usize;
    fn transversal(&self) -> &[Self::Elem];
    fn coset_of(&self, g: &Self::Elem) -> Result<usize>;
    fn in_subgroup(&self, g: &Self::Elem) -> Result<bool>;
    fn is_normal(&self) -> bool;
    /// A symmetric generating set of the ambient group.
    fn group_generators(&self) -> Vec<Self::Elem>;

    fn index(&self) -> usize {
        self.transversal().len()
    }

    /// `v = t_j^{-1} g` where `g ∈ t_j H`.
    fn split(&self, g: &Self::Elem) -> Result<(usize, Self::Elem)> {
        let j = self.coset_of(g)?;
        Ok((j, self.transversal()[j].inverse().product(g)))
    }

    /// `f^{(j)}` with `f = Σ_j δ_{t_j} ∗ f^{(j)}` and every `f^{(j)}` supported on `H`.
    fn components(&self, f: &AlgebraElement<Self::Elem>) -> Result<Vec<AlgebraElement<Self::Elem>>> {
        let mut parts = vec![AlgebraElement::zero(self.context()); self.index()];
        for (s, c) in f.terms() {
            let (j, v) = self.split(s)?;
            parts[j].add_term(v, c);
        }
        Ok(parts)
    }
}

impl CosetStructure for FiniteIndexSubgroup {
    type Elem = FreeWord;

    fn context(&self) -> usize {
        self.rank()
    }
    fn transversal(&self) -> &[FreeWord] {
        FiniteIndexSubgroup::transversal(self)
    }
    fn coset_of(&self, g: &FreeWord) -> Result<usize> {
        self.coset_index(g)
    }
    fn in_subgroup(&self, g: &FreeWord) -> Result<bool> {
        self.contains(g)
    }
    fn is_normal(&self) -> bool {
        FiniteIndexSubgroup::is_normal(self)
    }
    fn group_generators(&self) -> Vec<FreeWord> {
        alphabet(self.rank())
            .into_iter()
            .map(|x| FreeWord::generator(self.rank(), x).expect("letter within rank"))
            .collect()
    }
}

/// A finite permutation group `G` with a subgroup `H`, small enough for dense
/// linear algebra in `ℂG`.
#[derive(Clone, Debug)]
pub struct FiniteModel {
    name: String,
    hom: GroupHom,
    table: FiniteGroupTable,
    in_h: Vec<bool>,
    subgroup: Vec<usize>,
    transversal_ids: Vec<usize>,
    transversal: Vec<Permutation>,
    coset: Vec<usize>,
    normal: bool,
}

impl FiniteModel {
    /// `G = ⟨generators⟩` and `H = ⟨subgroup_generators⟩`, both closed by BFS.
    pub fn new(name: &str, generators: Vec<Permutation>, subgroup_generators: &[Permutation], cap: usize) -> Result<FiniteModel> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::Invalid("a finite model needs at least one generator".into()))?;
        let hom = GroupHom::new(generators.len(), degree, generators)?;
        let table = quotient_table(&hom, cap)?;
        let n = table.order();
        let mut in_h = vec![false; n];
        in_h[0] = true;
        let mut subgroup = vec![0usize];
        let mut gens = Vec::with_capacity(subgroup_generators.len());
        for p in subgroup_generators {
            gens.push(table.index_of(p).ok_or_else(|| {
                Error::Invalid(format!("subgroup generator {p} is not in the group"))
            })?);
        }
        let mut head = 0;
        while head < subgroup.len() {
            let h = subgroup[head];
            head += 1;
            for &s in &gens {
                let x = table.multiply(h, s);
                if !in_h[x] {
                    in_h[x] = true;
                    subgroup.push(x);
                }
            }
        }
        subgroup.sort_unstable();

        let mut coset = vec![usize::MAX; n];
        let mut transversal_ids = Vec::new();
        for g in 0..n {
            if coset[g] != usize::MAX {
                continue;
            }
            let k = transversal_ids.len();
            transversal_ids.push(g);
            for &h in &subgroup {
                coset[table.multiply(g, h)] = k;
            }
        }
        let normal = (0..n).all(|g| {
            let gi = table.inverse(g);
            subgroup
                .iter()
                .all(|&h| in_h[table.multiply(table.multiply(g, h), gi)])
        });
        let transversal = transversal_ids
            .iter()
            .map(|&i| table.elements()[i].clone())
            .collect();
        Ok(FiniteModel {
            name: name.to_string(),
            hom,
            table,
            in_h,
            subgroup,
            transversal_ids,
            transversal,
            coset,
            normal,
        })
    }

    /// `Z/n ⊇ ⟨d⟩`, with `k ∈ Z/n` realized as the `k`-th power of an `n`-cycle.
    pub fn cyclic(n: usize, d: usize) -> Result<FiniteModel> {
        if n == 0 || d == 0 || n % d != 0 {
            return Err(Error::Invalid(format!("need d | n, got n = {n}, d = {d}")));
        }
        let c = Self::cycle_power(n, 1);
        FiniteModel::new(
            &format!("Z/{n} ⊇ Z/{}", n / d),
            vec![c],
            &[Self::cycle_power(n, d)],
            n,
        )
    }

    /// `Sym(3) ⊇ Alt(3)`.
    pub fn sym3_alt3() -> FiniteModel {
        let t = Permutation::from_cycles(3, &[&[0, 1]]).expect("valid cycle");
        let r = Permutation::from_cycles(3, &[&[0, 1, 2]]).expect("valid cycle");
        FiniteModel::new("Sym(3) ⊇ Alt(3)", vec![t, r.clone()], &[r], 6).expect("order 6")
    }

    /// The three models `(Z/4, Z/2)`, `(Z/6, Z/3)`, `(Sym(3), Alt(3))`.
    pub fn standard() -> Vec<FiniteModel> {
        vec![
            FiniteModel::cyclic(4, 2).expect("2 | 4"),
            FiniteModel::cyclic(6, 2).expect("2 | 6"),
            FiniteModel::sym3_alt3(),
        ]
    }

    /// The named model: `z4`, `z6` or `s3`.
    pub fn named(name: &str) -> Result<FiniteModel> {
        match name {
            "z4" => FiniteModel::cyclic(4, 2),
            "z6" => FiniteModel::cyclic(6, 2),
            "s3" => Ok(FiniteModel::sym3_alt3()),
            _ => Err(Error::Invalid(format!("unknown finite model {name:?}; expected z4, z6 or s3"))),
        }
    }

    fn cycle_power(n: usize, k: usize) -> Permutation {
        Permutation::from_slice(&(0..n).map(|i| (i + k) % n).collect::<Vec<_>>())
            .expect("rotation is a permutation")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }

    /// The generators as images of the free generators `a, b, ...`.
    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup.len()
    }

    /// Table indices of `H`, ascending.
    pub fn subgroup_ids(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn transversal_ids(&self) -> &[usize] {
        &self.transversal_ids
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.table.elements()[i]
    }

    pub fn id_of(&self, p: &Permutation) -> Result<usize> {
        self.table
            .index_of(p)
            .ok_or_else(|| Error::Invalid(format!("{p} is not in {}", self.name)))
    }

    /// Dense coordinates in the basis `δ_g` of `ℂG`, indexed by table order.
    pub fn to_dense(&self, f: &AlgebraElement<Permutation>) -> Result<Vec<Coefficient>> {
        let mut v = vec![Coefficient::zero(); self.order()];
        for (g, c) in f.terms() {
            v[self.id_of(g)?] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense(&self, v: &[Coefficient]) -> AlgebraElement<Permutation> {
        let mut f = AlgebraElement::zero(self.table.degree());
        for (i, c) in v.iter().enumerate() {
            f.add_term(self.element(i).clone(), c);
        }
        f
    }

    /// Vector-space basis of the left ideal of `ℂH` generated by the seeds.
    pub fn left_ideal_in_h(&self, seeds: &[AlgebraElement<Permutation>]) -> Result<Vec<AlgebraElement<Permutation>>> {
        let mut e = RowEchelon::new(self.order());
        let mut basis = Vec::new();
        for s in seeds {
            for t in s.support() {
                if !self.in_h[self.id_of(t)?] {
                    return Err(Error::SupportEscapesSubgroup(t.to_string()));
                }
            }
            for &h in &self.subgroup {
                let x = s.left_translate(self.element(h));
                if e.insert(&self.to_dense(&x)?) {
                    basis.push(x);
                }
            }
        }
        Ok(basis)
    }

    pub fn span(&self, vectors: &[AlgebraElement<Permutation>]) -> Result<RowEchelon> {
        let mut e = RowEchelon::new(self.order());
        for v in vectors {
            e.insert(&self.to_dense(v)?);
        }
        Ok(e)
    }
}

impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (|G| = {}, |H| = {}, index {})",
            self.name,
            self.order(),
            self.subgroup_order(),
            self.transversal.len()
        )
    }
}

impl CosetStructure for FiniteModel {
    type Elem = Permutation;

    fn context(&self) -> usize {
        self.table.degree()
    }
    fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }
    fn coset_of(&self, g: &Permutation) -> Result<usize> {
        Ok(self.coset[self.id_of(g)?])
    }
    fn in_subgroup(&self, g: &Permutation) -> Result<bool> {
        Ok(self.in_h[self.id_of(g)?])
    }
    fn is_normal(&self) -> bool {
        self.normal
    }
    fn group_generators(&self) -> Vec<Permutation> {
        (0..2 * self.table.rank())
            .map(|code| self.element(self.table.neighbor(0, code)).clone())
            .collect()
    }
}

/// `δ_x ∗ δ_{t_i} ∗ b = δ_{t_j} ∗ (δ_v ∗ b)` with `x t_i = t_j v`, `v ∈ H`.
#[derive(Clone, Debug)]
pub struct LeftIdealWitness<G: GroupElement> {
    pub x: G,
    pub i: usize,
    pub basis_index: usize,
    pub j: usize,
    pub v: G,
    pub verified: bool,
}

/// `J = ⊕_i δ_{t_i} ∗ I`, presented by the products `δ_{t_i} ∗ b`.
#[derive(Clone, Debug)]
pub struct LiftedIdeal<G: GroupElement> {
    pub i_basis: Vec<AlgebraElement<G>>,
    /// `(i, b index, δ_{t_i} ∗ b)`.
    pub generators: Vec<(usize, usize, AlgebraElement<G>)>,
    pub witnesses: Vec<LeftIdealWitness<G>>,
}

impl<G: GroupElement> LiftedIdeal<G> {
    pub fn all_verified(&self) -> bool {
        self.witnesses.iter().all(|w| w.verified)
    }

    pub fn generator_elements(&self) -> Vec<AlgebraElement<G>> {
        self.generators.iter().map(|(_, _, g)| g.clone()).collect()
    }
}

fn require_normal<S: CosetStructure>(s: &S) -> Result<()> {
    if !s.is_normal() {
        return Err(Error::NotNormal("the subgroup is not normal".into()));
    }
    Ok(())
}

fn require_on_h<S: CosetStructure>(s: &S, f: &AlgebraElement<S::Elem>) -> Result<()> {
    for t in f.support() {
        if !s.in_subgroup(t)? {
            return Err(Error::SupportEscapesSubgroup(t.to_string()));
        }
    }
    Ok(())
}

pub fn lift_ideal<S: CosetStructure>(s: &S, i_basis: &[AlgebraElement<S::Elem>]) -> Result<LiftedIdeal<S::Elem>> {
    require_normal(s)?;
    for b in i_basis {
        require_on_h(s, b)?;
    }
    let t = s.transversal();
    let mut generators = Vec::with_capacity(t.len() * i_basis.len());
    for (i, ti) in t.iter().enumerate() {
        for (k, b) in i_basis.iter().enumerate() {
            generators.push((i, k, b.left_translate(ti)));
        }
    }
    let mut witnesses = Vec::new();
    for x in s.group_generators() {
        for (i, ti) in t.iter().enumerate() {
            let (j, v) = s.split(&x.product(ti))?;
            let v_in_h = s.in_subgroup(&v)?;
            for (k, b) in i_basis.iter().enumerate() {
                let lhs = b.left_translate(ti).left_translate(&x);
                let moved = b.left_translate(&v);
                let rhs = moved.left_translate(&t[j]);
                let verified = v_in_h && lhs == rhs && require_on_h(s, &moved).is_ok();
                witnesses.push(LeftIdealWitness {
                    x: x.clone(),
                    i,
                    basis_index: k,
                    j,
                    v: v.clone(),
                    verified,
                });
            }
        }
    }
    Ok(LiftedIdeal {
        i_basis: i_basis.to_vec(),
        generators,
        witnesses,
    })
}

/// Dimension counts for a lifted ideal in a finite model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimensionReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub dim_i: usize,
    pub dim_j: usize,
    pub codim_i: usize,
    pub codim_j: usize,
    /// `J` is closed under left multiplication by the generators of `G`.
    pub j_is_left_ideal: bool,
    pub formula_holds: bool,
}

pub fn codimension_report(model: &FiniteModel, lifted: &LiftedIdeal<Permutation>) -> Result<CodimensionReport> {
    let basis_span = model.span(&lifted.i_basis)?;
    let dim_i = basis_span.rank();
    let gens = lifted.generator_elements();
    let j_span = model.span(&gens)?;
    let dim_j = j_span.rank();
    let mut j_is_left_ideal = true;
    'outer: for x in model.group_generators() {
        for g in &gens {
            if !j_span.contains(&model.to_dense(&g.left_translate(&x))?) {
                j_is_left_ideal = false;
                break 'outer;
            }
        }
    }
    let index = model.index();
    let codim_i = model.subgroup_order() - dim_i;
    let codim_j = model.order() - dim_j;
    Ok(CodimensionReport {
        group_order: model.order(),
        subgroup_order: model.subgroup_order(),
        index,
        dim_i,
        dim_j,
        codim_i,
        codim_j,
        j_is_left_ideal,
        formula_holds: codim_j == index * codim_i,
    })
}

/// One term `c ∗ f_i^{(k)}` of an extracted expression.
#[derive(Clone, Debug)]
pub struct ExtractedTerm<G: GroupElement> {
    pub i: usize,
    pub k: usize,
    pub k_prime: usize,
    /// `δ_{t_{k'} t_k} ∗ (h_i^{(k')})^{t_k^{-1}}`.
    pub coefficient: AlgebraElement<G>,
    /// `f_i^{(k)}`.
    pub component: AlgebraElement<G>,
}

#[derive(Clone, Debug)]
pub struct ExtractedExpression<G: GroupElement> {
    pub g: AlgebraElement<G>,
    pub terms: Vec<ExtractedTerm<G>>,
    pub identity_checked: bool,
}

impl<G: GroupElement> ExtractedExpression<G> {
    pub fn evaluate(&self) -> AlgebraElement<G> {
        let mut total = AlgebraElement::zero(self.g.context());
        for term in &self.terms {
            total = &total + &(&term.coefficient * &term.component);
        }
        total
    }
}

/// Rewrites `g = Σ_i h_i ∗ f_i` (with `g` on `H`, `f_i ∈ J`) as a combination
/// of the components `f_i^{(k)}` with coefficients supported on `H`.
pub fn extract_subgroup_expression<S: CosetStructure>(
    s: &S,
    g: &AlgebraElement<S::Elem>,
    expression: &[(AlgebraElement<S::Elem>, AlgebraElement<S::Elem>)],
) -> Result<ExtractedExpression<S::Elem>> {
    require_normal(s)?;
    require_on_h(s, g)?;
    let mut total = AlgebraElement::zero(s.context());
    for (h, f) in expression {
        total = total.try_add(&h.convolve(f)?)?;
    }
    if total != *g {
        return Err(Error::Verification("the given expression does not reproduce g".into()));
    }
    let t = s.transversal();
    let k_prime: Vec<usize> = t
        .iter()
        .map(|tk| s.coset_of(&tk.inverse()))
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for (i, (h, f)) in expression.iter().enumerate() {
        let hc = s.components(h)?;
        let fc = s.components(f)?;
        for (k, tk) in t.iter().enumerate() {
            if fc[k].is_zero() {
                continue;
            }
            let kp = k_prime[k];
            let shift = t[kp].product(tk);
            let coefficient = hc[kp].conjugate(&tk.inverse())?.left_translate(&shift);
            if coefficient.is_zero() {
                continue;
            }
            require_on_h(s, &coefficient)?;
            terms.push(ExtractedTerm {
                i,
                k,
                k_prime: kp,
                coefficient,
                component: fc[k].clone(),
            });
        }
    }
    let mut out = ExtractedExpression {
        g: g.clone(),
        terms,
        identity_checked: false,
    };
    if out.evaluate() != *g {
        return Err(Error::Verification("extracted expression does not reproduce g".into()));
    }
    out.identity_checked = true;
    Ok(out)
}

/// Coefficients `h_i` with `g = Σ_i h_i ∗ f_i` in `ℂG`, if `g` lies in the
/// left ideal generated by the `f_i`.
pub fn solve_left_ideal_membership(
    model: &FiniteModel,
    generators: &[AlgebraElement<Permutation>],
    g: &AlgebraElement<Permutation>,
) -> Result<Option<Vec<AlgebraElement<Permutation>>>> {
    let mut e = RowEchelon::new(model.order());
    let mut labels = Vec::with_capacity(model.order() * generators.len());
    for (i, f) in generators.iter().enumerate() {
        for x in 0..model.order() {
            e.insert(&model.to_dense(&f.left_translate(model.element(x)))?);
            labels.push((i, x));
        }
    }
    let Some(c) = e.solve(&model.to_dense(g)?) else {
        return Ok(None);
    };
    let mut hs = vec![AlgebraElement::zero(model.context()); generators.len()];
    for ((i, x), ci) in labels.into_iter().zip(c) {
        hs[i].add_term(model.element(x).clone(), &ci);
    }
    Ok(Some(hs))
}
