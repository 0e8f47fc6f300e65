//! The word-to-point embedding, its quantitative continuity modulus,
//! and the constructive inverse.
//!
//! A word maps to the point whose coordinate at letter `b` is
//! `Σ 2^{-k}` over the positions `k` where `b` occurs; the letter `z`
//! contributes nothing. Identified words land on the identical point,
//! and `decode` recovers the full word class from any such point.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lp_geometry::SparsePoint;
use crate::rational::ExactRational;
use crate::symbolic::{word_class, InfiniteWord, Letter, WordClass};

/// Exact coordinate of `word` at letter `b`: the dyadic sum over
/// occurrences of `b` in the prefix plus one geometric closed form per
/// occurrence in the repeating tail.
pub fn coordinate(word: &InfiniteWord, b: Letter) -> Result<ExactRational> {
    let alphabet = word.alphabet();
    if !alphabet.contains(b) {
        return Err(Error::UnknownLetter(format!("#{}", b.index())));
    }
    if b == alphabet.z() {
        return Err(Error::ZCoordinate);
    }
    let m = word.prefix().len();
    let mut acc = ExactRational::zero();
    for (i, l) in word.prefix().iter().enumerate() {
        if *l == b {
            acc += &ExactRational::inv_pow(2, (i + 1) as u32);
        }
    }
    let period = word.tail().len() as u32;
    // Occurrence at tail offset j recurs at positions m+j+1, m+j+1+L, …
    // summing to 2^-(m+j+1) / (1 - 2^-L).
    let ratio = ExactRational::one() - ExactRational::inv_pow(2, period);
    for (j, l) in word.tail().iter().enumerate() {
        if *l == b {
            let head = ExactRational::inv_pow(2, (m + j + 1) as u32);
            acc += &(&head / &ratio);
        }
    }
    Ok(acc)
}

/// The embedded point of `word`: all nonzero coordinates at once.
/// Equivalent words produce the identical point.
pub fn embed(word: &InfiniteWord) -> SparsePoint {
    let alphabet = word.alphabet();
    let z = alphabet.z();
    let mut support: Vec<Letter> = word
        .prefix()
        .iter()
        .chain(word.tail())
        .copied()
        .filter(|l| *l != z)
        .collect();
    support.sort_unstable();
    support.dedup();
    let mut coords = BTreeMap::new();
    for b in support {
        let v = coordinate(word, b).expect("support letters are valid non-z letters");
        coords.insert(b, v);
    }
    SparsePoint::from_map(alphabet, coords)
}

/// Modulus of continuity for the embedding: words agreeing on their
/// first `m` letters embed within `2^(1-m)` of each other in every
/// ℓ^p, because each position `k > m` moves the 1-norm by at most
/// `2·2^-k` and `‖·‖_p ≤ ‖·‖_1`.
pub fn continuity_bound(m: u32) -> ExactRational {
    if m == 0 {
        ExactRational::from_int(2)
    } else {
        ExactRational::inv_pow(2, m - 1)
    }
}

/// Constructive inverse of [`embed`]: greedy first-letter peeling.
///
/// A coordinate ≥ 1/2 can only come from that letter occupying the
/// first position, so the head letter is forced; at an exact 1/2 tie
/// the two candidates are precisely an identified pair, and the
/// alphabet-smaller letter is taken. Each step replaces `x` by the
/// residual `2x - u_chosen`. Exact rational residuals repeat iff the
/// preimage word is eventually periodic, so repetition detection
/// terminates with the full word class.
pub fn decode(x: &SparsePoint, max_depth: usize) -> Result<WordClass> {
    let alphabet = x.alphabet().clone();
    let z = alphabet.z();
    check_simplex(x)?;
    let half = ExactRational::ratio(1, 2);
    let one = ExactRational::one();
    let mut seen: HashMap<SparsePoint, usize> = HashMap::new();
    let mut letters: Vec<Letter> = Vec::new();
    let mut current = x.clone();
    loop {
        if let Some(&start) = seen.get(&current) {
            let prefix = letters[..start].to_vec();
            let tail = letters[start..].to_vec();
            let word = InfiniteWord::new(&alphabet, prefix, tail)
                .expect("decode emits letters of the point's own alphabet");
            return Ok(word_class(&word));
        }
        if letters.len() >= max_depth {
            return Err(Error::DepthExceeded { max_depth });
        }
        seen.insert(current.clone(), letters.len());
        let chosen = current
            .coords()
            .find(|(_, v)| **v >= half)
            .map(|(l, _)| l)
            .unwrap_or(z);
        let mut next = BTreeMap::new();
        for (l, v) in current.coords() {
            let doubled = v.doubled();
            let moved = if l == chosen { doubled - one.clone() } else { doubled };
            if !moved.is_zero() {
                next.insert(l, moved);
            }
        }
        current = SparsePoint::from_map(&alphabet, next);
        check_simplex(&current)?;
        letters.push(chosen);
    }
}

/// Points decodable at all must sit in the closed unit simplex:
/// coordinates in [0,1] with sum ≤ 1.
fn check_simplex(x: &SparsePoint) -> Result<()> {
    let one = ExactRational::one();
    for (l, v) in x.coords() {
        if v.is_negative() || *v > one {
            return Err(Error::NotOnAttractor(format!(
                "coordinate at {:?} is {}, outside [0,1]",
                x.alphabet().symbol(l),
                v
            )));
        }
    }
    let sum = x.coordinate_sum();
    if sum > one {
        return Err(Error::NotOnAttractor(format!(
            "coordinate sum {} exceeds 1",
            sum
        )));
    }
    Ok(())
}
