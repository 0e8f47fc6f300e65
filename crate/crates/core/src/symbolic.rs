//! Alphabets, finite and eventually periodic infinite words, the two
//! word metrics, and the two-point identification quotient.
//!
//! Infinite words are stored canonically: the repeating tail is
//! primitive (not a power of a shorter block) and the prefix never ends
//! with the tail's last letter (such a letter is absorbed into a
//! rotation of the tail). The canonical form realizes the minimal
//! preperiod and minimal period, so two words denote the same sequence
//! iff their stored forms are equal, and `==` is sequence equality.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Index of a letter within its alphabet's declared order. The order is
/// total and fixed; it drives every deterministic tie-break in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite set of distinct letter symbols with one distinguished letter
/// `z`. The remaining letters index the coordinates of embedded points.
/// The `Ord` impl only exists to give cross-alphabet collections a
/// stable order; it has no semantic meaning.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
    z: Letter,
}

impl Alphabet {
    /// Validates and builds an alphabet. Symbols must be distinct,
    /// non-empty, and free of `,`, `"`, and control characters (they
    /// appear verbatim in CSV headers and JSON). At least one letter
    /// besides `z` is required.
    pub fn new<I, S>(letters: I, z: &str) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.len() < 2 {
            return Err(Error::InvalidAlphabet(
                "need z plus at least one coordinate letter".into(),
            ));
        }
        for sym in &letters {
            if sym.is_empty() {
                return Err(Error::InvalidAlphabet("empty letter symbol".into()));
            }
            if sym.chars().any(|c| c == ',' || c == '"' || c.is_control()) {
                return Err(Error::InvalidAlphabet(format!(
                    "letter {:?} contains a reserved character",
                    sym
                )));
            }
            if letters.iter().filter(|s| *s == sym).count() > 1 {
                return Err(Error::InvalidAlphabet(format!("duplicate letter {:?}", sym)));
            }
        }
        let z_pos = letters
            .iter()
            .position(|s| s == z)
            .ok_or_else(|| Error::InvalidAlphabet(format!("z = {:?} is not a letter", z)))?;
        Ok(Alphabet {
            letters,
            z: Letter(z_pos as u32),
        })
    }

    pub fn from_data(data: &AlphabetData) -> Result<Self> {
        Alphabet::new(data.letters.iter().cloned(), &data.z)
    }

    pub fn to_data(&self) -> AlphabetData {
        AlphabetData {
            letters: self.letters.clone(),
            z: self.symbol(self.z).to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn z(&self) -> Letter {
        self.z
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.letters
            .iter()
            .position(|s| s == symbol)
            .map(|i| Letter(i as u32))
            .ok_or_else(|| Error::UnknownLetter(symbol.to_string()))
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.letters[letter.index()]
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.letters.len()
    }

    /// All letters in declared order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len() as u32).map(Letter)
    }

    /// The coordinate index set: every letter except `z`, in declared order.
    pub fn coordinate_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        let z = self.z;
        self.letters().filter(move |l| *l != z)
    }
}

/// JSON form of an alphabet: `{"letters": ["z","a","b"], "z": "z"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphabetData {
    pub letters: Vec<String>,
    pub z: String,
}

/// A finite word, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl FiniteWord {
    pub fn new(alphabet: &Arc<Alphabet>, letters: Vec<Letter>) -> Result<Self> {
        check_letters(alphabet, &letters)?;
        Ok(FiniteWord {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        FiniteWord {
            alphabet: Arc::clone(alphabet),
            letters: Vec::new(),
        }
    }

    pub fn from_symbols(alphabet: &Arc<Alphabet>, symbols: &[&str]) -> Result<Self> {
        let letters = symbols
            .iter()
            .map(|s| alphabet.letter(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteWord {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("λ");
        }
        f.write_str(&join_symbols(&self.alphabet, &self.letters))
    }
}

/// An eventually periodic infinite word `prefix · tail · tail · …`,
/// held in canonical form (primitive tail, minimal prefix).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfiniteWord {
    alphabet: Arc<Alphabet>,
    prefix: Vec<Letter>,
    tail: Vec<Letter>,
}

impl InfiniteWord {
    pub fn new(alphabet: &Arc<Alphabet>, prefix: Vec<Letter>, tail: Vec<Letter>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::InvalidWord("repeating tail must be non-empty".into()));
        }
        check_letters(alphabet, &prefix)?;
        check_letters(alphabet, &tail)?;
        let (prefix, tail) = canonicalize(prefix, tail);
        Ok(InfiniteWord {
            alphabet: Arc::clone(alphabet),
            prefix,
            tail,
        })
    }

    /// The constant word `l^∞`.
    pub fn constant(alphabet: &Arc<Alphabet>, letter: Letter) -> Result<Self> {
        InfiniteWord::new(alphabet, Vec::new(), vec![letter])
    }

    pub fn from_symbols(alphabet: &Arc<Alphabet>, prefix: &[&str], tail: &[&str]) -> Result<Self> {
        let prefix = prefix
            .iter()
            .map(|s| alphabet.letter(s))
            .collect::<Result<Vec<_>>>()?;
        let tail = tail
            .iter()
            .map(|s| alphabet.letter(s))
            .collect::<Result<Vec<_>>>()?;
        InfiniteWord::new(alphabet, prefix, tail)
    }

    pub fn from_data(alphabet: &Arc<Alphabet>, data: &WordData) -> Result<Self> {
        let prefix = data
            .prefix
            .iter()
            .map(|s| alphabet.letter(s))
            .collect::<Result<Vec<_>>>()?;
        let tail = data
            .tail
            .iter()
            .map(|s| alphabet.letter(s))
            .collect::<Result<Vec<_>>>()?;
        InfiniteWord::new(alphabet, prefix, tail)
    }

    /// Exports the canonical form.
    pub fn to_data(&self) -> WordData {
        WordData {
            prefix: self
                .prefix
                .iter()
                .map(|l| self.alphabet.symbol(*l).to_string())
                .collect(),
            tail: self
                .tail
                .iter()
                .map(|l| self.alphabet.symbol(*l).to_string())
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Canonical non-repeating prefix (may be empty).
    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    /// Canonical repeating block (primitive, non-empty).
    pub fn tail(&self) -> &[Letter] {
        &self.tail
    }

    /// Letter at 0-based position `idx` of the denoted sequence.
    pub fn letter_at(&self, idx: usize) -> Letter {
        if idx < self.prefix.len() {
            self.prefix[idx]
        } else {
            self.tail[(idx - self.prefix.len()) % self.tail.len()]
        }
    }

    pub fn is_constant(&self) -> bool {
        self.prefix.is_empty() && self.tail.len() == 1
    }

    pub fn same_alphabet(&self, other: &InfiniteWord) -> bool {
        self.alphabet == other.alphabet
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = join_symbols(&self.alphabet, &self.prefix);
        let tail = join_symbols(&self.alphabet, &self.tail);
        write!(f, "{}({})^∞", prefix, tail)
    }
}

/// JSON form of a word: `{"prefix": ["c","a"], "tail": ["b"]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordData {
    #[serde(default)]
    pub prefix: Vec<String>,
    pub tail: Vec<String>,
}

/// The identification class of a word: a singleton, or the pair
/// `{u·a·b^∞, u·b·a^∞}` with `a ≠ b`. In the pair case the member whose
/// first differing letter is alphabet-smaller comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordClass {
    members: Vec<InfiniteWord>,
}

impl WordClass {
    pub fn members(&self) -> &[InfiniteWord] {
        &self.members
    }

    pub fn is_pair(&self) -> bool {
        self.members.len() == 2
    }

    /// The ordering-first member; for pairs this is the deterministic
    /// class representative.
    pub fn representative(&self) -> &InfiniteWord {
        &self.members[0]
    }

    pub fn contains(&self, word: &InfiniteWord) -> bool {
        self.members.iter().any(|m| m == word)
    }
}

fn check_letters(alphabet: &Alphabet, letters: &[Letter]) -> Result<()> {
    for l in letters {
        if !alphabet.contains(*l) {
            return Err(Error::InvalidWord(format!(
                "letter index {} out of range for alphabet of {} letters",
                l.index(),
                alphabet.len()
            )));
        }
    }
    Ok(())
}

fn join_symbols(alphabet: &Alphabet, letters: &[Letter]) -> String {
    let wide = alphabet.letters().any(|l| alphabet.symbol(l).len() > 1);
    let sep = if wide { " " } else { "" };
    letters
        .iter()
        .map(|l| alphabet.symbol(*l))
        .collect::<Vec<_>>()
        .join(sep)
}

/// Reduces `(prefix, tail)` to the unique minimal representation.
///
/// Step 1 replaces the tail by its primitive root. Step 2 absorbs
/// prefix letters: `prefix.last() == tail.last()` means the sequence is
/// also `prefix[..m-1] · rot(tail) · rot(tail) · …` with one letter less
/// of preperiod, where `rot` moves the last letter to the front. A
/// rotation of a primitive word stays primitive, so step 1 never needs
/// repeating, and the loop stops exactly at the minimal preperiod.
fn canonicalize(mut prefix: Vec<Letter>, mut tail: Vec<Letter>) -> (Vec<Letter>, Vec<Letter>) {
    let len = tail.len();
    for d in 1..=len {
        if len % d == 0 && tail.iter().enumerate().all(|(i, l)| *l == tail[i % d]) {
            tail.truncate(d);
            break;
        }
    }
    while let Some(&last) = prefix.last() {
        if last != *tail.last().expect("tail is non-empty") {
            break;
        }
        prefix.pop();
        tail.rotate_right(1);
    }
    (prefix, tail)
}

/// First 0-based position where the denoted sequences differ, if any.
/// Two eventually periodic sequences agreeing through both preperiods
/// plus one aligned lcm window agree everywhere.
pub fn first_difference(a: &InfiniteWord, b: &InfiniteWord) -> Option<usize> {
    if a == b {
        return None;
    }
    let scan = a.prefix.len().max(b.prefix.len()) + a.tail.len().lcm(&b.tail.len());
    let idx = (0..scan).find(|&k| a.letter_at(k) != b.letter_at(k));
    Some(idx.expect("distinct canonical forms denote distinct sequences"))
}

/// Baire metric: `1/k` where `k` is the first (1-based) index at which
/// the sequences differ, and `0` for equal sequences.
pub fn baire_dist(a: &InfiniteWord, b: &InfiniteWord) -> Result<ExactRational> {
    if !a.same_alphabet(b) {
        return Err(Error::AlphabetMismatch);
    }
    match first_difference(a, b) {
        None => Ok(ExactRational::zero()),
        Some(idx) => Ok(ExactRational::ratio(1, (idx + 1) as i64)),
    }
}

/// Summable word metric `Σ_{k≥1} (1 − δ_k)/3^k`, with `δ_k = 1` exactly
/// when the words agree at position `k`. Computed exactly: a finite sum
/// over both preperiods plus one aligned lcm window scaled by the
/// geometric factor `1/(1 − 3^{-L})`.
pub fn lambda_dist(a: &InfiniteWord, b: &InfiniteWord) -> Result<ExactRational> {
    if !a.same_alphabet(b) {
        return Err(Error::AlphabetMismatch);
    }
    if a == b {
        return Ok(ExactRational::zero());
    }
    let head = a.prefix.len().max(b.prefix.len());
    let window = a.tail.len().lcm(&b.tail.len());
    let mut total = ExactRational::zero();
    for k in 0..head {
        if a.letter_at(k) != b.letter_at(k) {
            total += &ExactRational::inv_pow(3, (k + 1) as u32);
        }
    }
    let mut window_sum = ExactRational::zero();
    for k in head..head + window {
        if a.letter_at(k) != b.letter_at(k) {
            window_sum += &ExactRational::inv_pow(3, (k + 1) as u32);
        }
    }
    let ratio = ExactRational::one() - ExactRational::inv_pow(3, window as u32);
    total += &(&window_sum / &ratio);
    Ok(total)
}

/// Truncation of [`lambda_dist`] to the first `terms` positions, for
/// diagnostic display. Underestimates by at most `(1/2)·3^{-terms}`.
pub fn lambda_dist_truncated(a: &InfiniteWord, b: &InfiniteWord, terms: u32) -> Result<ExactRational> {
    if !a.same_alphabet(b) {
        return Err(Error::AlphabetMismatch);
    }
    let mut total = ExactRational::zero();
    for k in 0..terms as usize {
        if a.letter_at(k) != b.letter_at(k) {
            total += &ExactRational::inv_pow(3, (k + 1) as u32);
        }
    }
    Ok(total)
}

/// First `m` letters of the denoted sequence.
pub fn prefix_of(word: &InfiniteWord, m: usize) -> FiniteWord {
    FiniteWord {
        alphabet: Arc::clone(&word.alphabet),
        letters: (0..m).map(|k| word.letter_at(k)).collect(),
    }
}

/// In canonical form the identified pairs are exactly the words
/// `u·a·b^∞` with `a ≠ b`: one-letter tail and non-empty prefix (the
/// absorption rule already guarantees `prefix.last() ≠ tail letter`).
/// The partner swaps the last prefix letter with the tail letter.
pub fn identified_partner(word: &InfiniteWord) -> Option<InfiniteWord> {
    if word.tail.len() != 1 || word.prefix.is_empty() {
        return None;
    }
    let mut prefix = word.prefix.clone();
    let a = prefix.pop().expect("prefix is non-empty");
    let b = word.tail[0];
    prefix.push(b);
    Some(InfiniteWord {
        alphabet: Arc::clone(&word.alphabet),
        prefix,
        tail: vec![a],
    })
}

/// Whether two words denote the same point of the quotient space: equal
/// as sequences, or an identified two-point pair.
pub fn equivalent(a: &InfiniteWord, b: &InfiniteWord) -> Result<bool> {
    if !a.same_alphabet(b) {
        return Err(Error::AlphabetMismatch);
    }
    if a == b {
        return Ok(true);
    }
    Ok(identified_partner(a).as_ref() == Some(b))
}

/// All members of the identification class of `word`.
pub fn word_class(word: &InfiniteWord) -> WordClass {
    match identified_partner(word) {
        None => WordClass {
            members: vec![word.clone()],
        },
        Some(partner) => {
            // The members first differ right after the shared stem; the
            // alphabet-smaller letter there decides the ordering.
            let pos = word.prefix.len() - 1;
            let mut members = vec![word.clone(), partner];
            if members[1].letter_at(pos) < members[0].letter_at(pos) {
                members.swap(0, 1);
            }
            WordClass { members }
        }
    }
}
