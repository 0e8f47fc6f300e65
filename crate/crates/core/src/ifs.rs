//! The affine contraction family `f_a(x) = ½(x + u_a)`, word-indexed
//! compositions, the canonical projection onto the attractor in closed
//! form, and the Hutchinson iteration engine.
//!
//! Every map halves distances exactly, so set iterates contract at rate
//! 1/2 in any ℓ^p and the attractor is approximated to `2^-n` after `n`
//! steps from any seed inside the unit simplex.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lp_geometry::{PointSet, SparsePoint};
use crate::rational::ExactRational;
use crate::symbolic::{Alphabet, FiniteWord, InfiniteWord, Letter};

pub const DEFAULT_MAX_POINTS: usize = 1_000_000;

/// The map family over one alphabet. `lipschitz_factor` is the shared
/// exact contraction rate of every member (1/2 for this family);
/// `max_points` caps Hutchinson growth.
#[derive(Debug, Clone)]
pub struct IfsFamily {
    alphabet: Arc<Alphabet>,
    lipschitz_factor: ExactRational,
    max_points: usize,
}

impl IfsFamily {
    pub fn new(alphabet: &Arc<Alphabet>) -> Self {
        IfsFamily {
            alphabet: Arc::clone(alphabet),
            lipschitz_factor: ExactRational::ratio(1, 2),
            max_points: DEFAULT_MAX_POINTS,
        }
    }

    pub fn with_max_points(alphabet: &Arc<Alphabet>, max_points: usize) -> Self {
        IfsFamily {
            max_points,
            ..IfsFamily::new(alphabet)
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn lipschitz_factor(&self) -> &ExactRational {
        &self.lipschitz_factor
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    fn check_letter(&self, a: Letter) -> Result<()> {
        if !self.alphabet.contains(a) {
            return Err(Error::UnknownLetter(format!("#{}", a.index())));
        }
        Ok(())
    }

    fn check_point(&self, x: &SparsePoint) -> Result<()> {
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// `f_a(x) = ½(x + u_a)`; the `z` map is pure halving since `u_z`
    /// is the origin.
    pub fn apply_map(&self, a: Letter, x: &SparsePoint) -> Result<SparsePoint> {
        self.check_letter(a)?;
        self.check_point(x)?;
        let mut coords: BTreeMap<Letter, ExactRational> =
            x.coords().map(|(l, v)| (l, v.halved())).collect();
        if a != self.alphabet.z() {
            let half = ExactRational::ratio(1, 2);
            let entry = coords.entry(a).or_insert_with(ExactRational::zero);
            *entry = &*entry + &half;
        }
        Ok(SparsePoint::from_map(&self.alphabet, coords))
    }

    /// `f_w = f_{w_1} ∘ … ∘ f_{w_m}`: the composition applies the last
    /// letter first. The empty word is the identity.
    pub fn apply_word(&self, w: &FiniteWord, x: &SparsePoint) -> Result<SparsePoint> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        self.check_point(x)?;
        let mut current = x.clone();
        for a in w.letters().iter().rev() {
            current = self.apply_map(*a, &current)?;
        }
        Ok(current)
    }

    /// Canonical projection of a word onto the attractor, in closed
    /// form: the periodic tail pins the unique fixed point of
    /// `f_tail`, obtained by scaling `f_tail(0)` with `1/(1 - 2^-L)`,
    /// and the prefix maps that point forward. Agrees exactly with the
    /// coordinate-series embedding.
    pub fn project(&self, word: &InfiniteWord) -> Result<SparsePoint> {
        if word.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let tail_word = FiniteWord::new(&self.alphabet, word.tail().to_vec())?;
        let at_origin = self.apply_word(&tail_word, &SparsePoint::origin(&self.alphabet))?;
        let period = word.tail().len() as u32;
        let ratio = ExactRational::one() - ExactRational::inv_pow(2, period);
        let fixed = SparsePoint::from_map(
            &self.alphabet,
            at_origin.coords().map(|(l, v)| (l, v / &ratio)).collect(),
        );
        let prefix_word = FiniteWord::new(&self.alphabet, word.prefix().to_vec())?;
        self.apply_word(&prefix_word, &fixed)
    }

    /// One Hutchinson step: the union of `f_a(set)` over `letters`,
    /// deduplicated exactly into canonical order.
    pub fn hutchinson_step(&self, letters: &[Letter], set: &PointSet) -> Result<PointSet> {
        if letters.is_empty() {
            return Err(Error::EmptyLetterSet);
        }
        if set.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if set.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut chosen = letters.to_vec();
        chosen.sort_unstable();
        chosen.dedup();
        for a in &chosen {
            self.check_letter(*a)?;
        }
        let requested = chosen.len().saturating_mul(set.len());
        if requested > self.max_points {
            return Err(Error::PointCapExceeded {
                limit: self.max_points,
                requested,
            });
        }
        let mut images = Vec::with_capacity(requested);
        for a in &chosen {
            for x in set.points() {
                images.push(self.apply_map(*a, x)?);
            }
        }
        PointSet::new(&self.alphabet, images)
    }

    /// `n`-fold Hutchinson iteration. With seed `{origin}` the result
    /// is exactly the embedded image of all length-`n` words over
    /// `letters` continued by `z^∞`.
    pub fn iterate_hutchinson(
        &self,
        letters: &[Letter],
        seed: &PointSet,
        n: u32,
    ) -> Result<PointSet> {
        let mut current = seed.clone();
        if n == 0 {
            // Validate inputs even when no step runs.
            if letters.is_empty() {
                return Err(Error::EmptyLetterSet);
            }
            if seed.is_empty() {
                return Err(Error::EmptyPointSet);
            }
            if seed.alphabet() != &self.alphabet {
                return Err(Error::AlphabetMismatch);
            }
            return Ok(current);
        }
        for _ in 0..n {
            current = self.hutchinson_step(letters, &current)?;
        }
        Ok(current)
    }
}
