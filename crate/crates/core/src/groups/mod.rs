//! Finite quotients of free groups and the finite-index subgroups they cut out.
//!
//! A [`GroupHom`] sends each generator of `F_m` to a permutation. A subgroup
//! is either the kernel of that map (always normal) or the preimage of a point
//! stabilizer (normal only in special cases). Cosets are LEFT cosets `tH`,
//! enumerated by breadth-first search over left multiplication by letters.

mod grigorchuk;
mod perm;
mod table;

use std::collections::HashMap;

pub use grigorchuk::{grigorchuk_is_trivial, grigorchuk_level_hom, word_states, GrigorchukState};
pub use perm::Permutation;
pub use table::{quotient_table, FiniteGroupTable};

use crate::error::{Error, Result};
use crate::freegroup::{alphabet, ball, FreeWord, Letter};

/// Default cap used wherever a ball, table or search must be bounded.
pub const DEFAULT_CAP: usize = 1 << 20;

/// Homomorphism `F_rank -> Sym(degree)` given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    rank: usize,
    degree: usize,
    /// Indexed by letter code, so inverse images are precomputed.
    letter_images: Vec<Permutation>,
}

impl GroupHom {
    pub fn new(rank: usize, degree: usize, generator_images: Vec<Permutation>) -> Result<GroupHom> {
        if generator_images.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: generator_images.len(),
            });
        }
        let mut letter_images = Vec::with_capacity(2 * rank);
        for p in generator_images {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: p.degree(),
                });
            }
            let inv = p.inverse();
            letter_images.push(p);
            letter_images.push(inv);
        }
        Ok(GroupHom {
            rank,
            degree,
            letter_images,
        })
    }

    /// The map onto the trivial group of degree 1.
    pub fn trivial(rank: usize) -> GroupHom {
        GroupHom::new(rank, 1, vec![Permutation::identity(1); rank]).expect("trivial hom")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_images(&self) -> impl Iterator<Item = &Permutation> {
        self.letter_images.iter().step_by(2)
    }

    pub fn letter_image(&self, x: Letter) -> &Permutation {
        &self.letter_images[x.code()]
    }

    /// Image of a word: `q(x_1 ... x_k) = q(x_1) * ... * q(x_k)`.
    pub fn apply(&self, w: &FreeWord) -> Result<Permutation> {
        self.check_rank(w)?;
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &FreeWord) -> Permutation {
        let mut images: Vec<u32> = (0..self.degree as u32).collect();
        for &x in w.letters().iter().rev() {
            let p = self.letter_image(x);
            for v in images.iter_mut() {
                *v = p.apply(*v as usize) as u32;
            }
        }
        Permutation::new(images).expect("product of permutations")
    }

    /// `q(w)(point)` without materializing `q(w)`.
    pub fn act(&self, w: &FreeWord, point: usize) -> Result<usize> {
        self.check_rank(w)?;
        Ok(w
            .letters()
            .iter()
            .rev()
            .fold(point, |p, &x| self.letter_image(x).apply(p)))
    }

    fn check_rank(&self, w: &FreeWord) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        Ok(())
    }
}

/// `apply_hom` in free-function form.
pub fn apply_hom(hom: &GroupHom, w: &FreeWord) -> Result<Permutation> {
    hom.apply(w)
}

/// Which subgroup of `F_m` a homomorphism describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupMode {
    /// `H = ker q`; always normal.
    Kernel,
    /// `H = { w : q(w) fixes the point }`; normal only in special cases.
    Stabilizer(usize),
}

#[derive(Clone, Debug)]
enum CosetLookup {
    ByElement(HashMap<Permutation, usize>),
    /// Point of the orbit to coset index; `usize::MAX` off the orbit.
    ByPoint(Vec<usize>),
}

/// Left cosets `tH` of a finite-index subgroup with a minimal-length,
/// shortlex-least transversal. `transversal()[0]` is the identity.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    hom: GroupHom,
    mode: SubgroupMode,
    transversal: Vec<FreeWord>,
    lookup: CosetLookup,
}

/// Enumerates left cosets by BFS over `w -> x w`, layer by layer, keeping
/// the shortlex-least candidate for each newly reached coset.
pub fn coset_transversal(hom: &GroupHom, mode: SubgroupMode) -> Result<CosetSpace> {
    if let SubgroupMode::Stabilizer(p) = mode {
        if p >= hom.degree() {
            return Err(Error::Invalid(format!(
                "stabilized point {p} outside degree {}",
                hom.degree()
            )));
        }
    }
    let rank = hom.rank();
    let identity = Permutation::identity(hom.degree());
    let key_of = |q: &Permutation| -> CosetKey {
        match mode {
            SubgroupMode::Kernel => CosetKey::Element(q.clone()),
            SubgroupMode::Stabilizer(p) => CosetKey::Point(q.apply(p)),
        }
    };

    let mut reps: Vec<(FreeWord, Permutation)> = vec![(FreeWord::identity(rank), identity.clone())];
    let mut seen: HashMap<CosetKey, usize> = HashMap::new();
    seen.insert(key_of(&identity), 0);
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut candidates: HashMap<CosetKey, (FreeWord, Permutation)> = HashMap::new();
        for &i in &layer {
            let (w, q) = reps[i].clone();
            for x in alphabet(rank) {
                if w.first() == Some(x.inverse()) {
                    continue;
                }
                let xq = hom.letter_image(x).compose(&q);
                let key = key_of(&xq);
                if seen.contains_key(&key) {
                    continue;
                }
                let xw = w.prepend(x);
                match candidates.get(&key) {
                    Some((best, _)) if *best <= xw => {}
                    _ => {
                        candidates.insert(key, (xw, xq));
                    }
                }
            }
        }
        let mut fresh: Vec<(CosetKey, (FreeWord, Permutation))> = candidates.into_iter().collect();
        fresh.sort_by(|a, b| a.1 .0.cmp(&b.1 .0));
        layer.clear();
        for (key, rep) in fresh {
            seen.insert(key, reps.len());
            layer.push(reps.len());
            reps.push(rep);
        }
    }

    let transversal: Vec<FreeWord> = reps.iter().map(|(w, _)| w.clone()).collect();
    let lookup = match mode {
        SubgroupMode::Kernel => CosetLookup::ByElement(
            reps.iter()
                .enumerate()
                .map(|(i, (_, q))| (q.clone(), i))
                .collect(),
        ),
        SubgroupMode::Stabilizer(p) => {
            let mut by_point = vec![usize::MAX; hom.degree()];
            for (i, (_, q)) in reps.iter().enumerate() {
                by_point[q.apply(p)] = i;
            }
            CosetLookup::ByPoint(by_point)
        }
    };
    Ok(CosetSpace {
        hom: hom.clone(),
        mode,
        transversal,
        lookup,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum CosetKey {
    Element(Permutation),
    Point(usize),
}

impl CosetSpace {
    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn mode(&self) -> SubgroupMode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.hom.rank()
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[FreeWord] {
        &self.transversal
    }

    /// Position in the transversal of the left coset `wH`.
    pub fn coset_index(&self, w: &FreeWord) -> Result<usize> {
        match &self.lookup {
            CosetLookup::ByElement(map) => {
                let q = self.hom.apply(w)?;
                Ok(*map.get(&q).expect("every image is reached by the transversal"))
            }
            CosetLookup::ByPoint(by_point) => {
                let SubgroupMode::Stabilizer(p) = self.mode else {
                    unreachable!()
                };
                Ok(by_point[self.hom.act(w, p)?])
            }
        }
    }

    /// The transversal element of the coset `wH`.
    pub fn representative(&self, w: &FreeWord) -> Result<&FreeWord> {
        Ok(&self.transversal[self.coset_index(w)?])
    }

    pub fn contains(&self, w: &FreeWord) -> Result<bool> {
        match self.mode {
            SubgroupMode::Kernel => Ok(self.hom.apply(w)?.is_identity()),
            SubgroupMode::Stabilizer(p) => Ok(self.hom.act(w, p)? == p),
        }
    }

    /// Whether `H` is normal: kernels always are; for stabilizers this checks
    /// that every Schreier generator stays in `H` under conjugation by every
    /// letter, which suffices at finite index.
    pub fn is_normal(&self) -> bool {
        if self.mode == SubgroupMode::Kernel {
            return true;
        }
        let gens = schreier_generators(self);
        alphabet(self.rank()).all(|x| {
            let xw = FreeWord::generator(self.rank(), x).expect("letter in range");
            gens.iter()
                .all(|s| self.contains(&s.conjugate_by(&xw)).expect("same rank"))
        })
    }
}

/// Schreier generators of `H`, freely reduced, without the identity, sorted
/// shortlex. For kernels these are `t x rep(t x)^{-1}`; for stabilizers, whose
/// transversal is a left transversal of a non-normal subgroup, the valid form
/// is `rep(x t)^{-1} x t`.
pub fn schreier_generators(cosets: &CosetSpace) -> Vec<FreeWord> {
    let rank = cosets.rank();
    let mut out = Vec::new();
    for t in cosets.transversal() {
        for x in alphabet(rank) {
            let xw = FreeWord::generator(rank, x).expect("letter in range");
            let s = match cosets.mode() {
                SubgroupMode::Kernel => {
                    let tx = t.mul(&xw);
                    let rep = cosets.representative(&tx).expect("same rank");
                    tx.mul(&rep.invert())
                }
                SubgroupMode::Stabilizer(_) => {
                    let xt = xw.mul(t);
                    let rep = cosets.representative(&xt).expect("same rank");
                    rep.invert().mul(&xt)
                }
            };
            if !s.is_identity() {
                out.push(s);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Radius choice for the ball generating set `Y = Ḃ_r ∩ H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Radius {
    /// Longest Schreier generator, which guarantees that `Y` generates `H`.
    Auto,
    Fixed(usize),
}

/// `Y = { w in B_r : w != e, w in H }` in shortlex order.
pub fn ball_generating_set(cosets: &CosetSpace, radius: usize, cap: usize) -> Result<Vec<FreeWord>> {
    let b = ball(cosets.rank(), radius, cap)?;
    let mut y = Vec::new();
    for w in b.punctured() {
        if cosets.contains(w)? {
            y.push(w.clone());
        }
    }
    Ok(y)
}

/// A finite-index subgroup `H` of `F_m` with its transversal, Schreier
/// generators and ball generating set `Y`.
#[derive(Clone, Debug)]
pub struct FiniteIndexSubgroup {
    cosets: CosetSpace,
    schreier: Vec<FreeWord>,
    radius: usize,
    y: Vec<FreeWord>,
    y_index: HashMap<FreeWord, usize>,
}

impl FiniteIndexSubgroup {
    pub fn new(hom: GroupHom, mode: SubgroupMode, radius: Radius, cap: usize) -> Result<FiniteIndexSubgroup> {
        let cosets = coset_transversal(&hom, mode)?;
        FiniteIndexSubgroup::from_cosets(cosets, radius, cap)
    }

    pub fn from_cosets(cosets: CosetSpace, radius: Radius, cap: usize) -> Result<FiniteIndexSubgroup> {
        let schreier = schreier_generators(&cosets);
        let radius = match radius {
            Radius::Auto => schreier.iter().map(FreeWord::len).max().unwrap_or(1),
            Radius::Fixed(r) => r,
        };
        let y = ball_generating_set(&cosets, radius, cap)?;
        let y_index = y.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(FiniteIndexSubgroup {
            cosets,
            schreier,
            radius,
            y,
            y_index,
        })
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn hom(&self) -> &GroupHom {
        self.cosets.hom()
    }

    pub fn mode(&self) -> SubgroupMode {
        self.cosets.mode()
    }

    pub fn rank(&self) -> usize {
        self.cosets.rank()
    }

    pub fn index(&self) -> usize {
        self.cosets.index()
    }

    pub fn transversal(&self) -> &[FreeWord] {
        self.cosets.transversal()
    }

    pub fn schreier_generators(&self) -> &[FreeWord] {
        &self.schreier
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `Y = Ḃ_r ∩ H` in shortlex order.
    pub fn y(&self) -> &[FreeWord] {
        &self.y
    }

    pub fn y_position(&self, w: &FreeWord) -> Option<usize> {
        self.y_index.get(w).copied()
    }

    /// Whether every Schreier generator lies in `Y`, so that `Y` generates `H`.
    pub fn y_generates(&self) -> bool {
        self.schreier.iter().all(|s| self.y_index.contains_key(s))
    }

    pub fn contains(&self, w: &FreeWord) -> Result<bool> {
        self.cosets.contains(w)
    }

    pub fn coset_index(&self, w: &FreeWord) -> Result<usize> {
        self.cosets.coset_index(w)
    }

    pub fn is_normal(&self) -> bool {
        self.cosets.is_normal()
    }
}

/// `subgroup_contains` in free-function form.
pub fn subgroup_contains(sub: &FiniteIndexSubgroup, w: &FreeWord) -> Result<bool> {
    sub.contains(w)
}

/// Kernel of `F_2 -> Sym(2)`, `a, b -> (0 1)`: the words of even length.
pub fn even_length_subgroup(radius: Radius) -> FiniteIndexSubgroup {
    let swap = Permutation::from_cycles(2, &[&[0, 1]]).expect("swap");
    let hom = GroupHom::new(2, 2, vec![swap.clone(), swap]).expect("valid hom");
    FiniteIndexSubgroup::new(hom, SubgroupMode::Kernel, radius, DEFAULT_CAP).expect("small ball")
}
