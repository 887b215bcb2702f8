use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::freegroup::{FreeWord, Letter};
use crate::groups::FiniteIndexSubgroup;

/// `u = y_1 y_2 ... y_n` with every `y_i ∈ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YFactorization {
    pub u: FreeWord,
    pub factors: Vec<FreeWord>,
}

impl YFactorization {
    /// Checks that every factor lies in `Y` and that the product is `u`.
    pub fn new(sub: &FiniteIndexSubgroup, u: FreeWord, factors: Vec<FreeWord>) -> Result<YFactorization> {
        for y in &factors {
            if sub.y_position(y).is_none() {
                return Err(Error::Invalid(format!("factor {y} is not in Y")));
            }
        }
        let product = factors
            .iter()
            .fold(FreeWord::identity(sub.rank()), |acc, y| acc.mul(y));
        if product != u {
            return Err(Error::Invalid(format!(
                "factors multiply to {product}, not {u}"
            )));
        }
        Ok(YFactorization { u, factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `x_{i,1} ... x_{i,k_i}` for each factor.
    pub fn x_expansions(&self) -> Vec<&[Letter]> {
        self.factors.iter().map(FreeWord::letters).collect()
    }

    /// The prefix products `e, y_1, y_1 y_2, ..., y_1 ... y_n`.
    pub fn prefixes(&self) -> Vec<FreeWord> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut p = FreeWord::identity(self.u.rank());
        out.push(p.clone());
        for y in &self.factors {
            p = p.mul(y);
            out.push(p.clone());
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Node {
    word: FreeWord,
    dist: usize,
    parent: usize,
    via: usize,
}

/// The word metric `|·|_Y` on `H`, from a BFS ball of radius `R` in the
/// Cayley graph of `(H, Y)`. Distances up to `2R` are exact: beyond the ball
/// a geodesic is split at its `R`-th prefix, which lies on the sphere.
#[derive(Clone, Debug)]
pub struct YMetric<'a> {
    sub: &'a FiniteIndexSubgroup,
    radius: usize,
    nodes: Vec<Node>,
    index: HashMap<FreeWord, usize>,
    sphere_start: usize,
}

impl<'a> YMetric<'a> {
    pub fn new(sub: &'a FiniteIndexSubgroup, radius: usize, node_cap: usize) -> Result<YMetric<'a>> {
        if sub.y().is_empty() {
            return Err(Error::Invalid("Y is empty; choose a larger radius".into()));
        }
        let root = FreeWord::identity(sub.rank());
        let mut nodes = vec![Node {
            word: root.clone(),
            dist: 0,
            parent: usize::MAX,
            via: usize::MAX,
        }];
        let mut index = HashMap::from([(root, 0usize)]);
        let mut sphere_start = 0;
        for d in 1..=radius {
            let layer_start = nodes.len();
            for i in sphere_start..layer_start {
                for (k, y) in sub.y().iter().enumerate() {
                    let w = nodes[i].word.mul(y);
                    if index.contains_key(&w) {
                        continue;
                    }
                    if nodes.len() >= node_cap {
                        return Err(Error::CapExceeded {
                            what: "Y-ball search",
                            size: nodes.len() as u128 + 1,
                            cap: node_cap,
                        });
                    }
                    index.insert(w.clone(), nodes.len());
                    nodes.push(Node {
                        word: w,
                        dist: d,
                        parent: i,
                        via: k,
                    });
                }
            }
            sphere_start = layer_start;
        }
        Ok(YMetric {
            sub,
            radius,
            nodes,
            index,
            sphere_start,
        })
    }

    /// Smallest radius whose metric resolves every given word, searching
    /// radii `1, 2, ...` until the node cap is hit.
    pub fn covering(sub: &'a FiniteIndexSubgroup, words: &[FreeWord], node_cap: usize) -> Result<YMetric<'a>> {
        for w in words {
            if !sub.contains(w)? {
                return Err(Error::NotInSubgroup(w.to_string()));
            }
        }
        let mut radius = 1;
        loop {
            let metric = YMetric::new(sub, radius, node_cap)?;
            if words.iter().all(|w| metric.distance_opt(w).is_some()) {
                return Ok(metric);
            }
            radius += 1;
        }
    }

    pub fn subgroup(&self) -> &'a FiniteIndexSubgroup {
        self.sub
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Number of elements in the ball of radius `R`.
    pub fn ball_size(&self) -> usize {
        self.nodes.len()
    }

    /// Elements of the ball in BFS order with their `Y`-lengths.
    pub fn ball(&self) -> impl Iterator<Item = (&FreeWord, usize)> {
        self.nodes.iter().map(|n| (&n.word, n.dist))
    }

    fn path(&self, mut i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes[i].dist);
        while i != 0 {
            out.push(self.nodes[i].via);
            i = self.nodes[i].parent;
        }
        out.reverse();
        out
    }

    /// `(sphere node, node of p^{-1} u)` attaining the distance beyond the ball.
    fn meet(&self, u: &FreeWord) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in self.sphere_start..self.nodes.len() {
            let rest = self.nodes[i].word.invert().mul(u);
            if let Some(&j) = self.index.get(&rest) {
                let total = self.nodes[i].dist + self.nodes[j].dist;
                if best.is_none_or(|(b, _, _)| total < b) {
                    best = Some((total, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// `|u|_Y` if it is at most `2R`; assumes `u ∈ H`.
    pub fn distance_opt(&self, u: &FreeWord) -> Option<usize> {
        if let Some(&i) = self.index.get(u) {
            return Some(self.nodes[i].dist);
        }
        self.meet(u)
            .map(|(i, j)| self.nodes[i].dist + self.nodes[j].dist)
    }

    /// `|u|_Y = d`, by lookup alone when `d ≤ R`.
    fn has_distance(&self, u: &FreeWord, d: usize) -> bool {
        if d <= self.radius {
            return self.index.get(u).is_some_and(|&i| self.nodes[i].dist == d);
        }
        self.distance_opt(u) == Some(d)
    }

    pub fn distance(&self, u: &FreeWord) -> Result<usize> {
        if !self.sub.contains(u)? {
            return Err(Error::NotInSubgroup(u.to_string()));
        }
        self.distance_opt(u)
            .ok_or(Error::SearchExhausted(2 * self.radius))
    }

    /// A factorization of minimal `Y`-length; among those, the BFS tree path
    /// through the first sphere element in BFS order.
    pub fn geodesic(&self, u: &FreeWord) -> Result<YFactorization> {
        if !self.sub.contains(u)? {
            return Err(Error::NotInSubgroup(u.to_string()));
        }
        let ids = if let Some(&i) = self.index.get(u) {
            self.path(i)
        } else {
            let (i, j) = self
                .meet(u)
                .ok_or(Error::SearchExhausted(2 * self.radius))?;
            let mut ids = self.path(i);
            ids.extend(self.path(j));
            ids
        };
        Ok(YFactorization {
            u: u.clone(),
            factors: ids.into_iter().map(|k| self.sub.y()[k].clone()).collect(),
        })
    }

    /// Every geodesic factorization of `u`, in lexicographic order of the
    /// factor sequence, stopping after `cap`. The flag reports truncation.
    pub fn all_geodesics(&self, u: &FreeWord, cap: usize) -> Result<(Vec<YFactorization>, bool)> {
        let n = self.distance(u)?;
        let mut out = Vec::new();
        let mut stack: Vec<FreeWord> = Vec::with_capacity(n);
        let truncated = self.extend_geodesics(u, n, &FreeWord::identity(u.rank()), &mut stack, &mut out, cap);
        Ok((out, truncated))
    }

    fn extend_geodesics(
        &self,
        u: &FreeWord,
        n: usize,
        prefix: &FreeWord,
        factors: &mut Vec<FreeWord>,
        out: &mut Vec<YFactorization>,
        cap: usize,
    ) -> bool {
        let j = factors.len();
        if j == n {
            if out.len() >= cap {
                return true;
            }
            out.push(YFactorization {
                u: u.clone(),
                factors: factors.clone(),
            });
            return false;
        }
        for y in self.sub.y() {
            let next = prefix.mul(y);
            // |next|_Y <= j + 1 always, so this forces |next|_Y = j + 1 too
            let rest = next.invert().mul(u);
            if !self.has_distance(&rest, n - j - 1) {
                continue;
            }
            factors.push(y.clone());
            let truncated = self.extend_geodesics(u, n, &next, factors, out, cap);
            factors.pop();
            if truncated {
                return true;
            }
        }
        false
    }
}

/// Default bound on the number of BFS nodes in a Y-ball search.
pub const DEFAULT_NODE_CAP: usize = 2_000_000;

/// A minimal-length factorization of `u` over `Y`, deepening the search
/// radius as needed.
pub fn y_geodesic_factorization(sub: &FiniteIndexSubgroup, u: &FreeWord, node_cap: usize) -> Result<YFactorization> {
    YMetric::covering(sub, std::slice::from_ref(u), node_cap)?.geodesic(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{even_length_subgroup, Radius};

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, 2).unwrap()
    }

    #[test]
    fn geodesic_examples() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let f = y_geodesic_factorization(&sub, &w("abab"), 100_000).unwrap();
        assert_eq!(f.factors, vec![w("ab"), w("ab")]);
        let f = y_geodesic_factorization(&sub, &w("aa"), 100_000).unwrap();
        assert_eq!(f.factors, vec![w("aa")]);
        let f = y_geodesic_factorization(&sub, &w(""), 100_000).unwrap();
        assert!(f.is_empty());
        assert!(matches!(
            y_geodesic_factorization(&sub, &w("a"), 100_000),
            Err(Error::NotInSubgroup(_))
        ));
    }

    #[test]
    fn meet_agrees_with_ball() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let big = YMetric::new(&sub, 4, 1_000_000).unwrap();
        let small = YMetric::new(&sub, 2, 1_000_000).unwrap();
        for (u, d) in big.ball() {
            assert_eq!(small.distance_opt(u), Some(d), "{u}");
            let g = small.geodesic(u).unwrap();
            assert_eq!(g.len(), d);
            assert_eq!(YFactorization::new(&sub, u.clone(), g.factors).unwrap().u, *u);
        }
    }

    #[test]
    fn all_geodesics_of_abab() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let m = YMetric::new(&sub, 2, 100_000).unwrap();
        let (all, truncated) = m.all_geodesics(&w("abab"), 100).unwrap();
        assert!(!truncated);
        assert_eq!(all.len(), 1);
        // every geodesic of aabb has two factors
        let (all, _) = m.all_geodesics(&w("aabb"), 100).unwrap();
        assert!(all.iter().all(|f| f.len() == 2));
        assert!(all.contains(&YFactorization { u: w("aabb"), factors: vec![w("aa"), w("bb")] }));
    }

    #[test]
    fn radius_exhaustion_is_reported() {
        let sub = even_length_subgroup(Radius::Fixed(2));
        let m = YMetric::new(&sub, 1, 100_000).unwrap();
        assert_eq!(m.distance(&w("ababab")), Err(Error::SearchExhausted(2)));
    }
}
