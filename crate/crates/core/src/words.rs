//! Letters, alphabets and words.
//!
//! A [`Word`] is a finite sequence of [`Letter`]s stored in one of two
//! representations:
//!
//! * **flat**: an explicit letter slice;
//! * **shared**: a directed acyclic graph of concatenation nodes over letter
//!   leaves. Every node caches its length and its letter census, so length and
//!   census queries never expand the word, and letter substitutions rewrite
//!   each distinct node once.
//!
//! Both representations are observationally identical: equality, hashing,
//! formatting and every operation in this crate ignore the representation.
//!
//! Shared nodes are hash-consed by a builder that lives for the duration of a
//! single construction or rewrite and is confined to the calling thread. The
//! finished nodes are immutable and `Send + Sync`, so words may be shared
//! between threads freely.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Letter index type. Indices start at 1.
pub type Index = u64;

/// Name of the environment variable that overrides [`index_limit`].
pub const MAX_INDEX_ENV: &str = "PANTS_MAX_INDEX";

/// The largest letter index any operation may produce.
///
/// Defaults to `2^63 - 1`; the `PANTS_MAX_INDEX` environment variable lowers
/// or raises it (read once per process).
pub fn index_limit() -> Index {
    static LIMIT: OnceLock<Index> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_INDEX_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<Index>().ok())
            .filter(|&v| v >= 1)
            .unwrap_or(i64::MAX as Index)
    })
}

pub(crate) fn check_index(index: u128) -> Result<Index> {
    let limit = index_limit();
    if index > limit as u128 {
        Err(Error::IndexOverflow { index, limit })
    } else {
        Ok(index as Index)
    }
}

/// Which of the two conjugating arcs of a pair of pants a letter names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn number(self) -> u8 {
        match self {
            Branch::First => 1,
            Branch::Second => 2,
        }
    }

    pub fn from_number(j: u8) -> Option<Branch> {
        match j {
            1 => Some(Branch::First),
            2 => Some(Branch::Second),
            _ => None,
        }
    }
}

/// An unsigned generator: a loop `ℓ_i` or a conjugator `ρ_{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Loop(Index),
    Conj(Index, Branch),
}

impl Generator {
    pub fn index(self) -> Index {
        match self {
            Generator::Loop(i) | Generator::Conj(i, _) => i,
        }
    }

    pub fn is_loop(self) -> bool {
        matches!(self, Generator::Loop(_))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Loop(i) => write!(f, "l{i}"),
            Generator::Conj(i, b) => write!(f, "r{i}.{}", b.number()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A signed generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub sign: Sign,
}

impl Letter {
    /// `ℓ_i`.
    pub fn ell(i: Index) -> Letter {
        debug_assert!(i >= 1);
        Letter {
            generator: Generator::Loop(i),
            sign: Sign::Pos,
        }
    }

    /// `ρ_{i,j}`; `j` must be 1 or 2.
    pub fn rho(i: Index, j: u8) -> Letter {
        debug_assert!(i >= 1);
        let branch = Branch::from_number(j).expect("conjugator branch must be 1 or 2");
        Letter {
            generator: Generator::Conj(i, branch),
            sign: Sign::Pos,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            sign: self.sign.flip(),
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }

    pub fn is_loop(self) -> bool {
        self.generator.is_loop()
    }

    pub fn index(self) -> Index {
        self.generator.index()
    }

    fn parse_token(token: &str, position: usize) -> Result<Letter> {
        let err = |reason| Error::Parse {
            token: token.to_string(),
            position,
            reason,
        };
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(|| err("empty token"))?;
        let rest = chars.as_str();
        let (is_loop, sign) = match head {
            'l' => (true, Sign::Pos),
            'L' => (true, Sign::Neg),
            'r' => (false, Sign::Pos),
            'R' => (false, Sign::Neg),
            _ => return Err(err("unknown prefix (expected l, L, r or R)")),
        };
        let parse_index = |s: &str| -> Result<Index> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("index must be a positive decimal integer"));
            }
            let value: u128 = s.parse().map_err(|_| err("index out of range"))?;
            if value == 0 {
                return Err(err("index must be at least 1"));
            }
            check_index(value)
        };
        let generator = if is_loop {
            Generator::Loop(parse_index(rest)?)
        } else {
            let (i, j) = rest
                .split_once('.')
                .ok_or_else(|| err("conjugator needs the form r<i>.<j>"))?;
            let branch = match j {
                "1" => Branch::First,
                "2" => Branch::Second,
                _ => return Err(err("branch must be 1 or 2")),
            };
            Generator::Conj(parse_index(i)?, branch)
        };
        Ok(Letter { generator, sign })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lower, upper) = match self.generator {
            Generator::Loop(_) => ('l', 'L'),
            Generator::Conj(..) => ('r', 'R'),
        };
        let head = if self.sign == Sign::Pos { lower } else { upper };
        match self.generator {
            Generator::Loop(i) => write!(f, "{head}{i}"),
            Generator::Conj(i, b) => write!(f, "{head}{i}.{}", b.number()),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        Letter::parse_token(s.trim(), 0)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The alphabet `A_{n,k}`: conjugators `ρ_{i,j}` with `i ≤ n - 1` and loops
/// `ℓ_i` with `n ≤ i ≤ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphabetBound {
    pub n: Index,
    pub k: Index,
}

impl AlphabetBound {
    pub fn new(n: Index, k: Index) -> Result<AlphabetBound> {
        if n == 0 {
            return Err(Error::Parameter("alphabet base level must be at least 1".into()));
        }
        if k + 1 < n {
            return Err(Error::Parameter(format!(
                "alphabet top level {k} is below n - 1 = {}",
                n - 1
            )));
        }
        Ok(AlphabetBound { n, k })
    }

    /// Alphabet with base level `n` and every loop index from `n` up to the
    /// index limit.
    pub fn unbounded(n: Index) -> Result<AlphabetBound> {
        AlphabetBound::new(n, index_limit().max(n.saturating_sub(1)))
    }

    pub fn admits(&self, letter: Letter) -> bool {
        match letter.generator {
            Generator::Conj(i, _) => i >= 1 && i < self.n,
            Generator::Loop(i) => i >= self.n && i <= self.k,
        }
    }

    /// Every letter of the alphabet, both signs, in a fixed order.
    /// Only meant for bounded alphabets of desk size.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for i in 1..self.n {
            for j in [1, 2] {
                let l = Letter::rho(i, j);
                out.push(l);
                out.push(l.inverse());
            }
        }
        for i in self.n..=self.k {
            out.push(Letter::ell(i));
            out.push(Letter::ell(i).inverse());
        }
        out
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        self.check_census(&w.census())
    }

    pub(crate) fn check_census(&self, census: &Census) -> Result<()> {
        match census.letters().find(|l| !self.admits(*l)) {
            None => Ok(()),
            Some(letter) => Err(Error::Alphabet {
                letter: letter.to_string(),
                alphabet: self.to_string(),
            }),
        }
    }
}

impl fmt::Display for AlphabetBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({},{})", self.n, self.k)
    }
}

/// Exact multiset of letters in a word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    counts: BTreeMap<Letter, u64>,
}

impl Census {
    fn single(letter: Letter) -> Census {
        let mut counts = BTreeMap::new();
        counts.insert(letter, 1);
        Census { counts }
    }

    fn merged(a: &Census, b: &Census) -> Census {
        let (big, small) = if a.counts.len() >= b.counts.len() { (a, b) } else { (b, a) };
        let mut counts = big.counts.clone();
        for (l, c) in &small.counts {
            *counts.entry(*l).or_insert(0) += c;
        }
        Census { counts }
    }

    fn add(&mut self, letter: Letter) {
        *self.counts.entry(letter).or_insert(0) += 1;
    }

    /// Sign-sensitive count.
    pub fn count(&self, letter: Letter) -> u64 {
        self.counts.get(&letter).copied().unwrap_or(0)
    }

    /// Sign-insensitive count.
    pub fn count_generator(&self, generator: Generator) -> u64 {
        [Sign::Pos, Sign::Neg]
            .into_iter()
            .map(|sign| self.count(Letter { generator, sign }))
            .sum()
    }

    pub fn contains_generator(&self, generator: Generator) -> bool {
        self.count_generator(generator) > 0
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Distinct letters present, in ascending order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.counts.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, u64)> + '_ {
        self.counts.iter().map(|(l, c)| (*l, *c))
    }

    pub fn signed(&self) -> &BTreeMap<Letter, u64> {
        &self.counts
    }

    pub fn unsigned(&self) -> BTreeMap<Generator, u64> {
        let mut out = BTreeMap::new();
        for (l, c) in &self.counts {
            *out.entry(l.generator).or_insert(0) += c;
        }
        out
    }
}

#[derive(Debug)]
pub(crate) enum Node {
    Leaf(Letter),
    Concat {
        left: Arc<Node>,
        right: Arc<Node>,
        len: u64,
        census: Census,
    },
}

impl Node {
    fn len(&self) -> u64 {
        match self {
            Node::Leaf(_) => 1,
            Node::Concat { len, .. } => *len,
        }
    }

    fn census(&self) -> Census {
        match self {
            Node::Leaf(l) => Census::single(*l),
            Node::Concat { census, .. } => census.clone(),
        }
    }

    fn mentions(&self, pred: &impl Fn(Letter) -> bool) -> bool {
        match self {
            Node::Leaf(l) => pred(*l),
            Node::Concat { census, .. } => census.letters().any(pred),
        }
    }
}

fn node_key(node: &Arc<Node>) -> usize {
    Arc::as_ptr(node) as usize
}

/// Hash-consing table for shared nodes. Lives for one construction.
#[derive(Default)]
pub(crate) struct SharedBuilder {
    leaves: HashMap<Letter, Arc<Node>>,
    concats: HashMap<(usize, usize), Arc<Node>>,
}

impl SharedBuilder {
    fn leaf(&mut self, letter: Letter) -> Arc<Node> {
        self.leaves
            .entry(letter)
            .or_insert_with(|| Arc::new(Node::Leaf(letter)))
            .clone()
    }

    fn concat(&mut self, left: Option<Arc<Node>>, right: Option<Arc<Node>>) -> Option<Arc<Node>> {
        match (left, right) {
            (None, r) => r,
            (l, None) => l,
            (Some(l), Some(r)) => {
                let key = (node_key(&l), node_key(&r));
                if let Some(hit) = self.concats.get(&key) {
                    return Some(hit.clone());
                }
                let census = match (&*l, &*r) {
                    (Node::Concat { census: a, .. }, Node::Concat { census: b, .. }) => {
                        Census::merged(a, b)
                    }
                    (Node::Concat { census, .. }, Node::Leaf(x))
                    | (Node::Leaf(x), Node::Concat { census, .. }) => {
                        let mut c = census.clone();
                        c.add(*x);
                        c
                    }
                    (Node::Leaf(a), Node::Leaf(b)) => {
                        let mut c = Census::single(*a);
                        c.add(*b);
                        c
                    }
                };
                let node = Arc::new(Node::Concat {
                    len: l.len() + r.len(),
                    left: l,
                    right: r,
                    census,
                });
                self.concats.insert(key, node.clone());
                Some(node)
            }
        }
    }

    fn balanced(&mut self, letters: &[Letter]) -> Option<Arc<Node>> {
        match letters.len() {
            0 => None,
            1 => Some(self.leaf(letters[0])),
            n => {
                let (a, b) = letters.split_at(n / 2);
                let a = self.balanced(a);
                let b = self.balanced(b);
                self.concat(a, b)
            }
        }
    }

    fn repeat(&mut self, unit: Option<Arc<Node>>, count: u64) -> Option<Arc<Node>> {
        let mut result = None;
        let mut power = unit;
        let mut remaining = count;
        while remaining > 0 {
            if remaining & 1 == 1 {
                result = self.concat(result, power.clone());
            }
            remaining >>= 1;
            if remaining > 0 {
                power = self.concat(power.clone(), power);
            }
        }
        result
    }
}

#[derive(Clone)]
enum Repr {
    Flat(Arc<[Letter]>),
    Shared(Option<Arc<Node>>),
}

/// A finite word over the pants alphabets.
#[derive(Clone)]
pub struct Word {
    repr: Repr,
}

impl Default for Word {
    fn default() -> Word {
        Word::empty()
    }
}

impl Word {
    pub fn empty() -> Word {
        Word {
            repr: Repr::Flat(Arc::from(Vec::new())),
        }
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Word {
        Word {
            repr: Repr::Flat(Arc::from(letters.into())),
        }
    }

    pub fn single(letter: Letter) -> Word {
        Word::from_letters(vec![letter])
    }

    /// Builds a shared (DAG) word from a letter sequence.
    pub fn shared(letters: &[Letter]) -> Word {
        let mut builder = SharedBuilder::default();
        Word {
            repr: Repr::Shared(builder.balanced(letters)),
        }
    }

    fn from_node(node: Option<Arc<Node>>) -> Word {
        Word {
            repr: Repr::Shared(node),
        }
    }

    /// `count` copies of `self`, in shared representation. Takes
    /// `O(log count)` nodes.
    pub fn repeat(&self, count: u64) -> Word {
        let mut builder = SharedBuilder::default();
        let unit = self.node_in(&mut builder);
        Word::from_node(builder.repeat(unit, count))
    }

    fn node_in(&self, builder: &mut SharedBuilder) -> Option<Arc<Node>> {
        match &self.repr {
            Repr::Flat(ls) => builder.balanced(ls),
            Repr::Shared(n) => n.clone(),
        }
    }

    pub fn is_shared(&self) -> bool {
        matches!(self.repr, Repr::Shared(_))
    }

    pub fn to_shared(&self) -> Word {
        match &self.repr {
            Repr::Shared(_) => self.clone(),
            Repr::Flat(ls) => Word::shared(ls),
        }
    }

    pub fn to_flat(&self) -> Word {
        match &self.repr {
            Repr::Flat(_) => self.clone(),
            Repr::Shared(_) => Word::from_letters(self.to_vec()),
        }
    }

    pub fn to_vec(&self) -> Vec<Letter> {
        match &self.repr {
            Repr::Flat(ls) => ls.to_vec(),
            Repr::Shared(_) => self.iter().collect(),
        }
    }

    /// Letter slice for flat words; `None` for shared ones.
    pub fn as_slice(&self) -> Option<&[Letter]> {
        match &self.repr {
            Repr::Flat(ls) => Some(ls),
            Repr::Shared(_) => None,
        }
    }

    pub fn iter(&self) -> Letters<'_> {
        match &self.repr {
            Repr::Flat(ls) => Letters(LettersInner::Flat(ls.iter())),
            Repr::Shared(node) => Letters(LettersInner::Shared(node.iter().map(|n| &**n).collect())),
        }
    }

    /// Number of letters. Constant time in both representations.
    pub fn len(&self) -> u64 {
        match &self.repr {
            Repr::Flat(ls) => ls.len() as u64,
            Repr::Shared(None) => 0,
            Repr::Shared(Some(n)) => n.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Letter multiset. Read from the root node's cache for shared words.
    pub fn census(&self) -> Census {
        match &self.repr {
            Repr::Flat(ls) => {
                let mut c = Census::default();
                for l in ls.iter() {
                    c.add(*l);
                }
                c
            }
            Repr::Shared(None) => Census::default(),
            Repr::Shared(Some(n)) => n.census(),
        }
    }

    pub fn first(&self) -> Option<Letter> {
        self.iter().next()
    }

    /// Concatenation. Stays flat when both sides are flat.
    pub fn concat(&self, other: &Word) -> Word {
        match (&self.repr, &other.repr) {
            (Repr::Flat(a), Repr::Flat(b)) => {
                let mut v = Vec::with_capacity(a.len() + b.len());
                v.extend_from_slice(a);
                v.extend_from_slice(b);
                Word::from_letters(v)
            }
            _ => {
                let mut builder = SharedBuilder::default();
                let a = self.node_in(&mut builder);
                let b = other.node_in(&mut builder);
                Word::from_node(builder.concat(a, b))
            }
        }
    }

    /// Applies a letter substitution. Shared words are rewritten node by node,
    /// each distinct node once; subgraphs that mention no moved letter are
    /// reused untouched.
    pub(crate) fn substitute(&self, subst: &impl Substitution) -> Word {
        match &self.repr {
            Repr::Flat(ls) => {
                let mut out = Vec::with_capacity(ls.len());
                for &l in ls.iter() {
                    if subst.moves(l) {
                        out.extend_from_slice(&subst.image(l));
                    } else {
                        out.push(l);
                    }
                }
                Word::from_letters(out)
            }
            Repr::Shared(root) => {
                let Some(root) = root else {
                    return Word::from_node(None);
                };
                let mut rw = Rewriter {
                    builder: SharedBuilder::default(),
                    memo: HashMap::new(),
                    leaf_images: HashMap::new(),
                    subst,
                };
                Word::from_node(rw.rewrite(root))
            }
        }
    }

    /// Reversed word with every sign flipped.
    pub fn inverse(&self) -> Word {
        match &self.repr {
            Repr::Flat(ls) => Word::from_letters(ls.iter().rev().map(|l| l.inverse()).collect::<Vec<_>>()),
            Repr::Shared(None) => self.clone(),
            Repr::Shared(Some(root)) => {
                let mut builder = SharedBuilder::default();
                let mut memo = HashMap::new();
                Word::from_node(invert_node(root, &mut builder, &mut memo))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["e"] {
            return Ok(Word::empty());
        }
        for (position, token) in tokens.iter().enumerate() {
            if *token == "e" {
                return Err(Error::Parse {
                    token: token.to_string(),
                    position,
                    reason: "`e` must stand alone",
                });
            }
            letters.push(Letter::parse_token(token, position)?);
        }
        Ok(Word::from_letters(letters))
    }
}

fn invert_node(
    node: &Arc<Node>,
    builder: &mut SharedBuilder,
    memo: &mut HashMap<usize, Option<Arc<Node>>>,
) -> Option<Arc<Node>> {
    if let Some(hit) = memo.get(&node_key(node)) {
        return hit.clone();
    }
    let out = match &**node {
        Node::Leaf(l) => Some(builder.leaf(l.inverse())),
        Node::Concat { left, right, .. } => {
            let r = invert_node(right, builder, memo);
            let l = invert_node(left, builder, memo);
            builder.concat(r, l)
        }
    };
    memo.insert(node_key(node), out.clone());
    out
}

/// A letter-to-word substitution; letters it does not move are fixed.
pub(crate) trait Substitution {
    fn moves(&self, letter: Letter) -> bool;
    fn image(&self, letter: Letter) -> Vec<Letter>;
}

struct Rewriter<'a, S: Substitution> {
    builder: SharedBuilder,
    memo: HashMap<usize, Option<Arc<Node>>>,
    leaf_images: HashMap<Letter, Option<Arc<Node>>>,
    subst: &'a S,
}

impl<S: Substitution> Rewriter<'_, S> {
    fn rewrite(&mut self, node: &Arc<Node>) -> Option<Arc<Node>> {
        if !node.mentions(&|l| self.subst.moves(l)) {
            return Some(node.clone());
        }
        if let Some(hit) = self.memo.get(&node_key(node)) {
            return hit.clone();
        }
        let out = match &**node {
            Node::Leaf(l) => {
                if let Some(img) = self.leaf_images.get(l) {
                    img.clone()
                } else {
                    let img = self.builder.balanced(&self.subst.image(*l));
                    self.leaf_images.insert(*l, img.clone());
                    img
                }
            }
            Node::Concat { left, right, .. } => {
                let a = self.rewrite(left);
                let b = self.rewrite(right);
                self.builder.concat(a, b)
            }
        };
        self.memo.insert(node_key(node), out.clone());
        out
    }
}

/// Depth-first letter iterator over either representation.
pub struct Letters<'a>(LettersInner<'a>);

enum LettersInner<'a> {
    Flat(std::slice::Iter<'a, Letter>),
    Shared(Vec<&'a Node>),
}

impl Iterator for Letters<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        match &mut self.0 {
            LettersInner::Flat(it) => it.next().copied(),
            LettersInner::Shared(stack) => loop {
                match stack.pop()? {
                    Node::Leaf(l) => return Some(*l),
                    Node::Concat { left, right, .. } => {
                        stack.push(right);
                        stack.push(left);
                    }
                }
            },
        }
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = Letter;
    type IntoIter = Letters<'a>;

    fn into_iter(self) -> Letters<'a> {
        self.iter()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word::from_letters(iter.into_iter().collect::<Vec<_>>())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word::from_letters(v)
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Flat(a), Repr::Flat(b)) => a == b,
            (Repr::Shared(Some(a)), Repr::Shared(Some(b))) if Arc::ptr_eq(a, b) => true,
            _ => self.iter().eq(other.iter()),
        }
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len().hash(state);
        for l in self.iter() {
            l.hash(state);
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    Word::parse(text)
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

pub fn word_length(w: &Word) -> u64 {
    w.len()
}

pub fn letter_census(w: &Word) -> Census {
    w.census()
}

pub fn validate_alphabet(w: &Word, bound: AlphabetBound) -> bool {
    bound.check(w).is_ok()
}
