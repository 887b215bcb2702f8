//! The first Grigorchuk group acting on the rooted binary tree.
//!
//! Wreath recursion: `a = swap`, `b = (a, c)`, `c = (a, d)`, `d = (1, b)`.
//! Leaves of level `L` are binary strings of length `L` read as integers with
//! the most significant bit at the top of the tree, so projecting a leaf to
//! level `L - 1` drops its lowest bit.

use super::{GroupHom, Permutation};
use crate::error::{Error, Result};
use crate::freegroup::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrigorchukState {
    Identity,
    A,
    B,
    C,
    D,
}

impl GrigorchukState {
    pub const GENERATORS: [GrigorchukState; 4] = [Self::A, Self::B, Self::C, Self::D];

    /// Whether the state swaps the two subtrees of the root.
    pub fn swaps_root(self) -> bool {
        self == GrigorchukState::A
    }

    /// Restriction to the subtree below the given first letter.
    pub fn section(self, bit: usize) -> GrigorchukState {
        use GrigorchukState::*;
        match (self, bit) {
            (Identity, _) | (A, _) => Identity,
            (B, 0) | (C, 0) => A,
            (B, _) => C,
            (C, _) => D,
            (D, 0) => Identity,
            (D, _) => B,
        }
    }

    /// Product inside the Klein four-group `{1, b, c, d}`.
    fn klein_product(self, other: GrigorchukState) -> GrigorchukState {
        use GrigorchukState::*;
        match (self, other) {
            (Identity, x) | (x, Identity) => x,
            (x, y) if x == y => Identity,
            (B, C) | (C, B) => D,
            (B, D) | (D, B) => C,
            (C, D) | (D, C) => B,
            _ => unreachable!("klein_product on a"),
        }
    }

    fn act_on_leaf(self, leaf: usize, level: usize) -> usize {
        let mut state = self;
        let mut out = 0usize;
        for depth in 0..level {
            let bit = (leaf >> (level - 1 - depth)) & 1;
            let image = if state.swaps_root() { 1 - bit } else { bit };
            out = out << 1 | image;
            state = state.section(bit);
        }
        out
    }
}

/// `F_4 -> Sym(2^L)`, sending `a, b, c, d` to their action on level `L`.
pub fn grigorchuk_level_hom(level: usize, cap: usize) -> Result<GroupHom> {
    if level == 0 {
        return Err(Error::Invalid("Grigorchuk level must be at least 1".into()));
    }
    if level >= 63 || (1usize << level) > cap {
        return Err(Error::CapExceeded {
            what: "Grigorchuk level degree",
            size: 1u128 << level.min(127),
            cap,
        });
    }
    let degree = 1usize << level;
    let images = GrigorchukState::GENERATORS
        .iter()
        .map(|s| {
            Permutation::new((0..degree).map(|v| s.act_on_leaf(v, level) as u32).collect())
                .expect("tree automorphism permutes leaves")
        })
        .collect();
    GroupHom::new(4, degree, images)
}

/// Maps a word of the rank-4 free cover to Grigorchuk generators; every
/// generator is an involution, so inverse letters map to the same state.
pub fn word_states(w: &FreeWord) -> Result<Vec<GrigorchukState>> {
    if w.rank() != 4 {
        return Err(Error::RankMismatch {
            expected: 4,
            found: w.rank(),
        });
    }
    Ok(w.letters()
        .iter()
        .map(|x| GrigorchukState::GENERATORS[x.generator()])
        .collect())
}

/// Decides whether a word of the free cover is trivial in the Grigorchuk
/// group, by the contracting recursion on sections.
pub fn grigorchuk_is_trivial(w: &FreeWord) -> Result<bool> {
    Ok(states_trivial(&word_states(w)?))
}

fn normalize(states: &[GrigorchukState]) -> Vec<GrigorchukState> {
    use GrigorchukState::*;
    let mut out: Vec<GrigorchukState> = Vec::with_capacity(states.len());
    for &s in states {
        match (out.last().copied(), s) {
            (_, Identity) => {}
            (Some(A), A) => {
                out.pop();
            }
            (Some(t), s) if t != A && s != A => {
                out.pop();
                // the letter below `t`, if any, is `a`, so the product cannot merge further
                let p = t.klein_product(s);
                if p != Identity {
                    out.push(p);
                }
            }
            _ => out.push(s),
        }
    }
    out
}

fn states_trivial(states: &[GrigorchukState]) -> bool {
    let w = normalize(states);
    match w.len() {
        0 => return true,
        1 => return false,
        _ => {}
    }
    if w.iter().filter(|s| s.swaps_root()).count() % 2 == 1 {
        return false;
    }
    // The word acts as w[0] * w[1] * ... applied right to left; track the
    // subtree each factor is entered through and collect the sections.
    for start in 0..2 {
        let mut bit = start;
        let mut section = Vec::with_capacity(w.len());
        for &s in w.iter().rev() {
            section.push(s.section(bit));
            if s.swaps_root() {
                bit = 1 - bit;
            }
        }
        section.reverse();
        if !states_trivial(&section) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FreeWord {
        FreeWord::parse(s, 4).unwrap()
    }

    #[test]
    fn level_one_images() {
        let h = grigorchuk_level_hom(1, 1 << 10).unwrap();
        let imgs: Vec<_> = h.generator_images().cloned().collect();
        assert_eq!(imgs[0], Permutation::from_cycles(2, &[&[0, 1]]).unwrap());
        assert!(imgs[1..].iter().all(Permutation::is_identity));
    }

    #[test]
    fn involutions_and_bcd_relation() {
        for level in 1..=8 {
            let h = grigorchuk_level_hom(level, 1 << 10).unwrap();
            for p in h.generator_images() {
                assert!(p.compose(p).is_identity());
            }
            assert!(h.apply(&g("bcd")).unwrap().is_identity());
        }
    }

    #[test]
    fn projection_compatibility() {
        for level in 2..=8 {
            let fine = grigorchuk_level_hom(level, 1 << 10).unwrap();
            let coarse = grigorchuk_level_hom(level - 1, 1 << 10).unwrap();
            for (p, q) in fine.generator_images().zip(coarse.generator_images()) {
                for v in 0..p.degree() {
                    assert_eq!(p.apply(v) >> 1, q.apply(v >> 1));
                }
            }
        }
    }

    #[test]
    fn word_problem_examples() {
        assert!(grigorchuk_is_trivial(&g("")).unwrap());
        assert!(grigorchuk_is_trivial(&g("aa")).unwrap());
        assert!(grigorchuk_is_trivial(&g("bcd")).unwrap());
        assert!(!grigorchuk_is_trivial(&g("a")).unwrap());
        assert!(!grigorchuk_is_trivial(&g("ad")).unwrap());
        // (ad)^4 = 1 and (ac)^8 = 1, (ab)^16 = 1
        assert!(grigorchuk_is_trivial(&g("adadadad")).unwrap());
        assert!(!grigorchuk_is_trivial(&g("adad")).unwrap());
        assert!(grigorchuk_is_trivial(&g(&"ac".repeat(8))).unwrap());
        assert!(!grigorchuk_is_trivial(&g(&"ac".repeat(4))).unwrap());
        assert!(grigorchuk_is_trivial(&g(&"ab".repeat(16))).unwrap());
        assert!(!grigorchuk_is_trivial(&g(&"ab".repeat(8))).unwrap());
    }
}
