//! Free reduction, the free-group operations on reduced words, cyclic
//! reduction and conjugacy.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{Census, Letter, Word};

/// A word with no adjacent `x x⁻¹` pair. Always held flat.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord(Word);

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord(Word::empty())
    }

    /// Accepts `w` only if it is already reduced.
    pub fn new(w: Word) -> Option<ReducedWord> {
        is_reduced(&w).then(|| ReducedWord(w.to_flat()))
    }

    pub(crate) fn new_unchecked(w: Word) -> ReducedWord {
        debug_assert!(is_reduced(&w));
        ReducedWord(w)
    }

    pub fn parse(text: &str) -> Result<ReducedWord> {
        Ok(reduce(&Word::parse(text)?))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.as_slice().expect("reduced words are flat")
    }

    pub fn len(&self) -> usize {
        self.letters().len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters().is_empty()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.inverse())
    }

    pub fn census(&self) -> Census {
        self.0.census()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedWord(\"{}\")", self.0)
    }
}

impl AsRef<Word> for ReducedWord {
    fn as_ref(&self) -> &Word {
        &self.0
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = Word::deserialize(deserializer)?;
        ReducedWord::new(w).ok_or_else(|| serde::de::Error::custom("word is not reduced"))
    }
}

fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last().is_some_and(|top| top.is_inverse_of(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// Maximal cancellation. Single left-to-right stack pass.
pub fn reduce(w: &Word) -> ReducedWord {
    ReducedWord(Word::from_letters(reduce_letters(w.iter())))
}

pub fn is_reduced(w: &Word) -> bool {
    let mut prev: Option<Letter> = None;
    for l in w.iter() {
        if prev.is_some_and(|p| p.is_inverse_of(l)) {
            return false;
        }
        prev = Some(l);
    }
    true
}

/// The free-group product.
pub fn multiply(u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
    let a = u.letters();
    let b = v.letters();
    let mut cancel = 0;
    while cancel < a.len().min(b.len()) && a[a.len() - 1 - cancel].is_inverse_of(b[cancel]) {
        cancel += 1;
    }
    let mut out = Vec::with_capacity(a.len() + b.len() - 2 * cancel);
    out.extend_from_slice(&a[..a.len() - cancel]);
    out.extend_from_slice(&b[cancel..]);
    ReducedWord(Word::from_letters(out))
}

pub fn invert(w: &Word) -> Word {
    w.inverse()
}

/// `w = p · core · p⁻¹` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSplit {
    pub conjugator: ReducedWord,
    pub core: ReducedWord,
}

pub fn cyclic_reduce(w: &Word) -> CyclicSplit {
    let r = reduce(w);
    let ls = r.letters();
    let mut peel = 0;
    while ls.len() >= 2 * peel + 2 && ls[peel].is_inverse_of(ls[ls.len() - 1 - peel]) {
        peel += 1;
    }
    CyclicSplit {
        conjugator: ReducedWord(Word::from_letters(ls[..peel].to_vec())),
        core: ReducedWord(Word::from_letters(ls[peel..ls.len() - peel].to_vec())),
    }
}

pub fn is_cyclically_reduced(w: &ReducedWord) -> bool {
    let ls = w.letters();
    match (ls.first(), ls.last()) {
        (Some(a), Some(b)) => !a.is_inverse_of(*b),
        _ => true,
    }
}

/// Conjugacy in the free group: equal cyclic cores up to rotation.
pub fn is_conjugate(u: &ReducedWord, v: &ReducedWord) -> bool {
    let cu = cyclic_reduce(u.word()).core;
    let cv = cyclic_reduce(v.word()).core;
    let a = cu.letters();
    let b = cv.letters();
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|shift| a.iter().zip(b[shift..].iter().chain(&b[..shift])).all(|(x, y)| x == y))
}

/// Result of splitting `λ = p · q` for the conjugate `λ δ λ⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSplit {
    /// Length of `p`.
    pub split: usize,
    pub prefix: ReducedWord,
    pub suffix: ReducedWord,
    /// `reduce(q δ q⁻¹)`.
    pub inner: ReducedWord,
    /// `reduce(λ δ λ⁻¹) = p · inner · p⁻¹`, letter for letter.
    pub reduced: ReducedWord,
    /// Every letter of `q` occurs, up to sign, in `δ`.
    pub census_ok: bool,
}

/// Splits `λ = p · q` with `p` as long as possible such that
/// `reduce(λ δ λ⁻¹)` is literally `p · reduce(q δ q⁻¹) · p⁻¹`.
pub fn prefix_split(lambda: &ReducedWord, delta: &ReducedWord) -> Result<PrefixSplit> {
    if delta.is_empty() {
        return Err(Error::DegenerateLoop);
    }
    let lam = lambda.letters();
    let del = delta.letters();
    let full = reduce_letters(
        lam.iter()
            .copied()
            .chain(del.iter().copied())
            .chain(lam.iter().rev().map(|l| l.inverse())),
    );

    // Longest prefix first: p survives iff reduce(q δ q⁻¹) cannot cancel
    // against p on either side.
    for t in (0..=lam.len()).rev() {
        let (p, q) = lam.split_at(t);
        let inner = reduce_letters(
            q.iter()
                .copied()
                .chain(del.iter().copied())
                .chain(q.iter().rev().map(|l| l.inverse())),
        );
        let joins_left = match (p.last(), inner.first()) {
            (Some(a), Some(b)) => a.is_inverse_of(*b),
            _ => false,
        };
        let joins_right = match (inner.last(), p.last()) {
            (Some(a), Some(b)) => a.is_inverse_of(b.inverse()),
            _ => false,
        };
        if joins_left || joins_right {
            continue;
        }
        let expected: Vec<Letter> = p
            .iter()
            .copied()
            .chain(inner.iter().copied())
            .chain(p.iter().rev().map(|l| l.inverse()))
            .collect();
        if expected != full {
            return Err(Error::Invariant(
                "prefix split disagrees with the direct reduction".into(),
            ));
        }
        let delta_census = delta.census();
        let census_ok = q.iter().all(|l| delta_census.contains_generator(l.generator));
        return Ok(PrefixSplit {
            split: t,
            prefix: ReducedWord(Word::from_letters(p.to_vec())),
            suffix: ReducedWord(Word::from_letters(q.to_vec())),
            inner: ReducedWord(Word::from_letters(inner)),
            reduced: ReducedWord(Word::from_letters(full)),
            census_ok,
        });
    }
    Err(Error::Invariant("no prefix split exists".into()))
}

/// Cancels adjacent inverse pairs chosen uniformly at random until none are
/// left. Quadratic; only used to check confluence of [`reduce`].
pub fn reduce_oracle(w: &Word, seed: u64) -> ReducedWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters = w.to_vec();
    let mut sites = Vec::new();
    loop {
        sites.clear();
        sites.extend((1..letters.len()).filter(|&i| letters[i - 1].is_inverse_of(letters[i])));
        let Some(&i) = sites.choose(&mut rng) else {
            break;
        };
        letters.drain(i - 1..=i);
    }
    ReducedWord(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn r(s: &str) -> ReducedWord {
        ReducedWord::new(w(s)).unwrap_or_else(|| panic!("{s} is not reduced"))
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&w("l1 L1")).to_string(), "e");
        assert_eq!(reduce(&w("r1.1 R1.1 r1.2 R1.2")).to_string(), "e");
        assert_eq!(reduce(&w("l1 l2 L2 l3 l2 L2 L1")).to_string(), "l1 l3 L1");
        assert_eq!(reduce(&w("l1 l2 L2 l3 l2 L2 L1").to_shared()).to_string(), "l1 l3 L1");
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&Word::empty()));
        assert!(!is_reduced(&w("l1 L1")));
        assert!(is_reduced(&w("r1.1 l2 R1.1 r1.2 l3 R1.2 r1.1 l2 R1.1 r1.2 l3 R1.2")));
        assert!(ReducedWord::new(w("l2 l1 L1")).is_none());
    }

    #[test]
    fn multiply_examples() {
        let u = r("l1 l2 r1.1");
        assert_eq!(multiply(&u, &ReducedWord::identity()), u);
        assert_eq!(multiply(&r("l1 l2"), &r("L2 l3")).to_string(), "l1 l3");
        assert!(multiply(&u, &u.inverse()).is_empty());
    }

    #[test]
    fn invert_examples() {
        assert!(invert(&Word::empty()).is_empty());
        assert_eq!(invert(&w("l1 l2")).to_string(), "L2 L1");
        assert_eq!(
            invert(&w("r1.1 l2 R1.1 r1.2 l3 R1.2")).to_string(),
            "r1.2 L3 R1.2 r1.1 L2 R1.1"
        );
    }

    #[test]
    fn cyclic_reduce_examples() {
        let s = cyclic_reduce(&w("l1 l2 L1"));
        assert_eq!((s.conjugator.to_string(), s.core.to_string()), ("l1".into(), "l2".into()));
        let s = cyclic_reduce(&w("l2"));
        assert_eq!((s.conjugator.to_string(), s.core.to_string()), ("e".into(), "l2".into()));
        let s = cyclic_reduce(&w("l1 L1"));
        assert!(s.conjugator.is_empty() && s.core.is_empty());
        let s = cyclic_reduce(&w("l3 l1 l2 L1 L3"));
        assert_eq!(s.conjugator.to_string(), "l3 l1");
        assert!(is_cyclically_reduced(&s.core));
    }

    #[test]
    fn conjugacy_examples() {
        assert!(is_conjugate(&r("l1 l2"), &r("l2 l1")));
        assert!(!is_conjugate(&r("l1"), &r("l2")));
        assert!(is_conjugate(&r("l1 l2 L1"), &r("l2")));
        assert!(!is_conjugate(&r("l1 l2"), &r("l1 L2")));
        assert!(is_conjugate(&ReducedWord::identity(), &ReducedWord::identity()));
        assert!(!is_conjugate(&ReducedWord::identity(), &r("l4 L5")));
    }

    #[test]
    fn prefix_split_examples() {
        let s = prefix_split(&r("l1 l2"), &r("L2 l3 l2")).unwrap();
        assert_eq!(s.prefix.to_string(), "l1");
        assert_eq!(s.suffix.to_string(), "l2");
        assert_eq!(s.reduced.to_string(), "l1 l3 L1");
        assert!(s.census_ok);

        let s = prefix_split(&ReducedWord::identity(), &r("l1")).unwrap();
        assert!(s.prefix.is_empty() && s.suffix.is_empty());

        let s = prefix_split(&r("l1"), &r("l2")).unwrap();
        assert_eq!(s.prefix.to_string(), "l1");
        assert!(s.suffix.is_empty());
        assert_eq!(s.reduced.to_string(), "l1 l2 L1");

        assert_eq!(prefix_split(&r("l1"), &ReducedWord::identity()), Err(Error::DegenerateLoop));
    }

    #[test]
    fn prefix_split_when_delta_is_swallowed() {
        // λ δ λ⁻¹ = l1 l2 l3 L3 L3 L2 L1 → l1 l2 L3 L2 L1
        let s = prefix_split(&r("l1 l2 l3"), &r("L3")).unwrap();
        assert_eq!(s.prefix.to_string(), "l1 l2");
        assert_eq!(s.inner.to_string(), "L3");
        assert!(s.census_ok);
    }

    #[test]
    fn oracle_examples() {
        for seed in 0..10 {
            assert_eq!(reduce_oracle(&w("l1 L1 l1"), seed).to_string(), "l1");
            let x = w("l1 r2.1 L4 l4 l4");
            assert_eq!(reduce_oracle(&x, seed), reduce(&x));
        }
        let red = w("l1 l2 R1.1");
        assert_eq!(reduce_oracle(&red, 3).word(), &red);
    }
}
