use std::collections::HashMap;
use std::collections::VecDeque;

use super::{GroupHom, Permutation};
use crate::error::{Error, Result};
use crate::freegroup::{alphabet, FreeWord};

/// The image `q(F_m)` as an explicit finite group, with the word metric
/// induced by the generator images: `length(t) = min { |s| : q(s) = t }`.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    rank: usize,
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    lengths: Vec<usize>,
    witnesses: Vec<FreeWord>,
    /// `neighbors[t][code] = index of t * q(letter)`.
    neighbors: Vec<Vec<usize>>,
}

/// BFS from the identity over right multiplication by letter images.
pub fn quotient_table(hom: &GroupHom, cap: usize) -> Result<FiniteGroupTable> {
    let rank = hom.rank();
    let identity = Permutation::identity(hom.degree());
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut lengths = vec![0usize];
    let mut witnesses = vec![FreeWord::identity(rank)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for x in alphabet(rank) {
            let next = elements[t].compose(hom.letter_image(x));
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded {
                    what: "quotient table",
                    size: elements.len() as u128 + 1,
                    cap,
                });
            }
            index.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
            lengths.push(lengths[t] + 1);
            witnesses.push(witnesses[t].append(x));
        }
    }
    let neighbors = elements
        .iter()
        .map(|p| {
            alphabet(rank)
                .map(|x| index[&p.compose(hom.letter_image(x))])
                .collect()
        })
        .collect();
    Ok(FiniteGroupTable {
        rank,
        degree: hom.degree(),
        elements,
        index,
        lengths,
        witnesses,
        neighbors,
    })
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Elements in BFS order; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// Word length of an element of the table, or `None` if it is not in it.
    pub fn length_of(&self, p: &Permutation) -> Option<usize> {
        self.index_of(p).map(|i| self.lengths[i])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn diameter(&self) -> usize {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// A geodesic word mapping to element `i`.
    pub fn witness(&self, i: usize) -> &FreeWord {
        &self.witnesses[i]
    }

    pub fn neighbor(&self, i: usize, letter_code: usize) -> usize {
        self.neighbors[i][letter_code]
    }

    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }
}
