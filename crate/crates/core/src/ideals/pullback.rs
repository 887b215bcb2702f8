use std::collections::BTreeSet;

use crate::algebra::linalg::RowEchelon;
use crate::algebra::{augmentation_generator, AlgebraElement, Coefficient};
use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::groups::{coset_transversal, quotient_table, schreier_generators, FiniteGroupTable, FiniteIndexSubgroup, GroupHom, Permutation, SubgroupMode};

/// The images `q(δ_e − δ_y) = δ_e − δ_{q(y)}` of the generators of `J(F_n, K)`.
#[derive(Clone, Debug)]
pub struct PullbackResult {
    /// `(y, q(y))` for every `y ∈ Y_K`.
    pub images: Vec<(FreeWord, Permutation)>,
    /// The distinct nonzero images.
    pub generators: Vec<AlgebraElement<Permutation>>,
    /// Number of `y` with `q(y) = e`, whose image is zero.
    pub degenerate: usize,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    /// Dimension of the left ideal of `ℂG` generated by `generators`.
    pub ideal_dimension: usize,
    /// `|G| − [G:H]`, the dimension of `J(G, H)`.
    pub expected_dimension: usize,
    pub generates: bool,
}

/// Pushes the generators of `J(F_n, K)` forward along `q`, where `K` is the
/// preimage of `H = q(K)`, and checks that they generate `J(G, H)`.
pub fn pull_back_generators(q: &GroupHom, k: &FiniteIndexSubgroup, cap: usize) -> Result<PullbackResult> {
    if q.rank() != k.rank() {
        return Err(Error::RankMismatch {
            expected: q.rank(),
            found: k.rank(),
        });
    }
    let kernel = coset_transversal(q, SubgroupMode::Kernel)?;
    for w in schreier_generators(&kernel) {
        if !k.contains(&w)? {
            return Err(Error::Invalid(format!(
                "K is not a preimage: {w} lies in the kernel of q but not in K"
            )));
        }
    }
    let table = quotient_table(q, cap)?;
    let in_h: Vec<bool> = (0..table.order())
        .map(|i| k.contains(table.witness(i)))
        .collect::<Result<_>>()?;
    let subgroup_order = in_h.iter().filter(|&&b| b).count();

    let mut images = Vec::with_capacity(k.y().len());
    let mut seen = BTreeSet::new();
    let mut generators = Vec::new();
    let mut degenerate = 0;
    for y in k.y() {
        let t = q.apply(y)?;
        if t.is_identity() {
            degenerate += 1;
        } else if seen.insert(t.clone()) {
            generators.push(augmentation_generator(&t));
        }
        images.push((y.clone(), t));
    }

    let ideal_dimension = left_ideal_dimension(&table, &generators)?;
    let index = table.order() / subgroup_order;
    let expected_dimension = table.order() - index;
    Ok(PullbackResult {
        images,
        generators,
        degenerate,
        group_order: table.order(),
        subgroup_order,
        index,
        ideal_dimension,
        expected_dimension,
        generates: ideal_dimension == expected_dimension,
    })
}

fn dense(table: &FiniteGroupTable, f: &AlgebraElement<Permutation>) -> Result<Vec<Coefficient>> {
    let mut v = vec![Coefficient::zero(); table.order()];
    for (g, c) in f.terms() {
        let i = table
            .index_of(g)
            .ok_or_else(|| Error::Invalid(format!("{g} is not in the quotient")))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// `dim span{δ_x ∗ f : x ∈ G, f ∈ generators}`.
pub fn left_ideal_dimension(table: &FiniteGroupTable, generators: &[AlgebraElement<Permutation>]) -> Result<usize> {
    let mut e = RowEchelon::new(table.order());
    for f in generators {
        for x in table.elements() {
            e.insert(&dense(table, &f.left_translate(x))?);
        }
    }
    Ok(e.rank())
}
