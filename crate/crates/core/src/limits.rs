//! Inverse-limit and direct-limit elements.
//!
//! A [`CoherentFamily`] stands for an element of the inverse limit of the free
//! groups `F⁺_{n,k}` along the maps `T_{n,k}`: it answers "what is the reduced
//! word at level `k`?" for every `k ≥ n - 1`. Finite words give constant
//! families; infinite ones are given by a rule together with a declared
//! stabilization bound, which is checked whenever it is used.
//!
//! A [`PantsElement`] is a level together with a family, modelling an element
//! of the direct limit along the substitutions `D_n`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homs::{drop_pants, drop_pants_to, expand, expand_from, expand_once, expand_truncated_chain, project, tee};
use crate::rewrite::{is_reduced, reduce, ReducedWord};
use crate::words::{check_index, AlphabetBound, Generator, Index, Letter, Sign, Word};

/// Levels above the stabilization point that coherence checks look at by
/// default.
pub const DEFAULT_HORIZON_SLACK: Index = 6;

type Rule = dyn Fn(Index) -> Result<ReducedWord> + Send + Sync;
type Bound = dyn Fn(Index) -> Index + Send + Sync;

#[derive(Clone)]
pub struct GeneratorFamily {
    pub name: String,
    rule: Arc<Rule>,
    bound: Arc<Bound>,
}

impl GeneratorFamily {
    /// `rule(k)` is the reduced word at level `k`; `bound(m)` is a level from
    /// which the projections to level `m` no longer change.
    pub fn new(
        name: impl Into<String>,
        rule: impl Fn(Index) -> Result<ReducedWord> + Send + Sync + 'static,
        bound: impl Fn(Index) -> Index + Send + Sync + 'static,
    ) -> GeneratorFamily {
        GeneratorFamily {
            name: name.into(),
            rule: Arc::new(rule),
            bound: Arc::new(bound),
        }
    }
}

#[derive(Clone)]
pub enum FamilyKind {
    /// Constant from level `top` upward.
    FiniteWord { word: ReducedWord, top: Index },
    Generator(GeneratorFamily),
}

#[derive(Clone)]
pub struct CoherentFamily {
    base: Index,
    kind: FamilyKind,
    horizon: Index,
}

impl fmt::Debug for CoherentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::FiniteWord { word, top } => f
                .debug_struct("CoherentFamily")
                .field("base", &self.base)
                .field("word", word)
                .field("top", top)
                .finish(),
            FamilyKind::Generator(g) => f
                .debug_struct("CoherentFamily")
                .field("base", &self.base)
                .field("generator", &g.name)
                .field("horizon", &self.horizon)
                .finish(),
        }
    }
}

fn max_loop_index(w: &Word) -> Option<Index> {
    w.census().letters().filter(|l| l.is_loop()).map(|l| l.index()).max()
}

impl CoherentFamily {
    pub fn generator(base: Index, family: GeneratorFamily, horizon: Index) -> Result<CoherentFamily> {
        if base == 0 {
            return Err(Error::Parameter("levels start at 1".into()));
        }
        Ok(CoherentFamily {
            base,
            kind: FamilyKind::Generator(family),
            horizon: horizon.max(base),
        })
    }

    pub fn base(&self) -> Index {
        self.base
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn horizon(&self) -> Index {
        self.horizon
    }

    pub fn with_horizon(mut self, horizon: Index) -> CoherentFamily {
        self.horizon = horizon.max(self.base);
        self
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FamilyKind::FiniteWord { .. })
    }

    pub fn finite_word(&self) -> Option<&ReducedWord> {
        match &self.kind {
            FamilyKind::FiniteWord { word, .. } => Some(word),
            FamilyKind::Generator(_) => None,
        }
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            FamilyKind::FiniteWord { .. } => "finite",
            FamilyKind::Generator(g) => &g.name,
        }
    }

    /// The reduced word at level `k ≥ base - 1`.
    pub fn at(&self, k: Index) -> Result<ReducedWord> {
        if k + 1 < self.base {
            return Err(Error::Parameter(format!(
                "level {k} is below n - 1 = {}",
                self.base - 1
            )));
        }
        match &self.kind {
            FamilyKind::FiniteWord { word, top } => {
                if k >= *top {
                    Ok(word.clone())
                } else {
                    Ok(reduce(&project(word.word(), self.base, *top, k)?))
                }
            }
            FamilyKind::Generator(g) => {
                let w = (g.rule)(k)?;
                AlphabetBound::new(self.base, k)?.check(w.word())?;
                Ok(w)
            }
        }
    }

    /// Level from which projections to level `m` are constant.
    pub fn stabilization_bound(&self, m: Index) -> Index {
        match &self.kind {
            FamilyKind::FiniteWord { top, .. } => *top,
            FamilyKind::Generator(g) => (g.bound)(m),
        }
    }

    /// Checks `T_{n,k}(f(k + 1)) = f(k)` for every `k` from `n - 1` up to the
    /// horizon.
    pub fn check_coherence(&self) -> Result<()> {
        for k in self.base - 1..self.horizon {
            let upper = self.at(k + 1)?;
            let lower = self.at(k)?;
            let image = tee(&upper, self.base, k)?;
            if image != lower {
                return Err(Error::Coherence {
                    name: self.name().to_string(),
                    level: k,
                    detail: format!("T({upper}) = {image}, expected {lower}"),
                });
            }
        }
        Ok(())
    }
}

/// The family that is constantly `w` from its largest loop index upward.
pub fn make_finite_element(n: Index, w: &ReducedWord) -> Result<CoherentFamily> {
    if n == 0 {
        return Err(Error::Parameter("levels start at 1".into()));
    }
    let top = max_loop_index(w.word()).unwrap_or(0).max(n - 1);
    AlphabetBound::new(n, top)?.check(w.word())?;
    Ok(CoherentFamily {
        base: n,
        kind: FamilyKind::FiniteWord {
            word: w.clone(),
            top,
        },
        horizon: top + DEFAULT_HORIZON_SLACK,
    })
}

/// `f(k) = ℓ_n ℓ_{n+1} ⋯ ℓ_k`, stabilizing at `k(m) = m`.
pub fn wild_loop(n: Index) -> CoherentFamily {
    assert!(n >= 1, "levels start at 1");
    let family = GeneratorFamily::new(
        format!("wild_loop({n})"),
        move |k| {
            Ok(ReducedWord::new_unchecked(
                (n..=k).map(Letter::ell).collect::<Word>(),
            ))
        },
        |m| m,
    );
    CoherentFamily {
        base: n,
        kind: FamilyKind::Generator(family),
        horizon: n + DEFAULT_HORIZON_SLACK,
    }
}

/// `ω_{n,m}`: the stabilized, unreduced projection to `W⁺_{n,m}`.
pub fn omega(x: &CoherentFamily, m: Index) -> Result<Word> {
    let n = x.base;
    if m + 1 < n {
        return Err(Error::Parameter(format!("need m ≥ n - 1 = {}, got {m}", n - 1)));
    }
    let k = x.stabilization_bound(m).max(m);
    let here = project(x.at(k)?.word(), n, k, m)?;
    let next = project(x.at(k + 1)?.word(), n, k + 1, m)?;
    if here != next {
        return Err(Error::Stabilization {
            name: x.name().to_string(),
            m,
            k,
        });
    }
    Ok(here)
}

/// `D_n` applied levelwise to a family at level `n`.
fn push_family(f: &CoherentFamily) -> Result<CoherentFamily> {
    let n = f.base;
    match &f.kind {
        FamilyKind::FiniteWord { word, .. } => {
            let image = ReducedWord::new_unchecked(expand_once(word.word(), n)?.to_flat());
            make_finite_element(n + 1, &image)
        }
        FamilyKind::Generator(g) => {
            check_index(2 * n as u128 + 1)?;
            let parent = f.clone();
            let low = 2 * n + 1;
            let rule = move |k: Index| -> Result<ReducedWord> {
                if k >= low {
                    let image = expand_once(parent.at(k)?.word(), n)?;
                    Ok(ReducedWord::new_unchecked(image.to_flat()))
                } else {
                    let image = expand_once(parent.at(low)?.word(), n)?;
                    Ok(reduce(&project(&image, n + 1, low, k)?))
                }
            };
            let parent_bound = g.bound.clone();
            let bound = move |m: Index| parent_bound(m.max(n)).max(low);
            let family = GeneratorFamily::new(format!("d{n}({})", g.name), rule, bound);
            CoherentFamily::generator(n + 1, family, f.horizon.max(low) + 1)
        }
    }
}

/// An element of the direct limit: a family at some level.
#[derive(Debug, Clone)]
pub struct PantsElement {
    pub level: Index,
    pub family: CoherentFamily,
}

impl PantsElement {
    /// Reduces `w` and wraps it as a finite element at `level`.
    pub fn finite(level: Index, w: &Word) -> Result<PantsElement> {
        Ok(PantsElement {
            level,
            family: make_finite_element(level, &reduce(w))?,
        })
    }

    pub fn identity(level: Index) -> Result<PantsElement> {
        PantsElement::finite(level, &Word::empty())
    }

    pub fn from_family(family: CoherentFamily) -> PantsElement {
        PantsElement {
            level: family.base,
            family,
        }
    }

    pub fn word(&self) -> Option<&ReducedWord> {
        self.family.finite_word()
    }
}

/// Moves `x` up to `target` along the substitutions `D_{level}, …, D_{target-1}`.
pub fn push(x: &PantsElement, target: Index) -> Result<PantsElement> {
    if target < x.level {
        return Err(Error::Parameter(format!(
            "cannot push from level {} down to {target}",
            x.level
        )));
    }
    if let Some(w) = x.word() {
        let image = expand_from(w.word(), x.level, target - x.level)?;
        return PantsElement::finite(target, &image);
    }
    let mut family = x.family.clone();
    for _ in x.level..target {
        family = push_family(&family)?;
    }
    Ok(PantsElement::from_family(family))
}

/// Equality in the direct limit, for finite-word representatives.
pub fn eq_pants(a: &PantsElement, b: &PantsElement) -> Result<bool> {
    if !a.family.is_finite() || !b.family.is_finite() {
        return Err(Error::Unsupported(
            "equality is only decidable for finite-word representatives".into(),
        ));
    }
    let level = a.level.max(b.level);
    let (pa, pb) = (push(a, level)?, push(b, level)?);
    Ok(pa.word() == pb.word())
}

/// `χ_m(x) ∈ W⁺_{m+1,m}`, a word over conjugator letters only.
pub fn chi(x: &PantsElement, m: Index) -> Result<Word> {
    if m == 0 {
        return Err(Error::Parameter("χ is indexed from m = 1".into()));
    }
    if m + 1 >= x.level {
        let y = push(x, m + 1)?;
        omega(&y.family, m)
    } else {
        // The element lives above m + 1: compute there and apply E down to m.
        let top = x.level - 1;
        let c = chi(x, top)?;
        drop_pants_to(&c, top, m)
    }
}

/// `E_m(χ_{m+1}(x)) = χ_m(x)`.
pub fn chi_coherence_check(x: &PantsElement, m: Index) -> Result<bool> {
    let upper = chi(x, m + 1)?;
    Ok(drop_pants(&upper, m + 1)? == chi(x, m)?)
}

/// `D̄(ω_{n,m-1}(x)) = ω_{m,m-1}(push(x, m))` for even `m ≥ n`.
pub fn truncated_square_check(x: &PantsElement, m: Index) -> Result<bool> {
    if m < x.level.max(2) || m % 2 != 0 {
        return Err(Error::Parameter(format!(
            "need an even m ≥ max(n, 2), got m = {m}"
        )));
    }
    let left = expand_truncated_chain(&omega(&x.family, m - 1)?, x.level, m)?;
    let right = omega(&push(x, m)?.family, m - 1)?;
    Ok(left == right)
}

/// One conjugate `c s c⁻¹` with `s` a single loop letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub conjugator: Word,
    pub core: Letter,
}

impl Factor {
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.conjugator
            .iter()
            .chain(std::iter::once(self.core))
            .chain(self.conjugator.inverse().to_vec())
    }
}

/// `∏ cᵢ sᵢ cᵢ⁻¹`, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConjugateFactorization {
    pub factors: Vec<Factor>,
}

impl ConjugateFactorization {
    /// The unreduced product of the factors.
    pub fn product(&self) -> Word {
        self.factors.iter().flat_map(|f| f.letters().collect::<Vec<_>>()).collect()
    }

    pub fn min_core_index(&self) -> Option<Index> {
        self.factors.iter().map(|f| f.core.index()).min()
    }

    /// The product reduces to `w` and every core index is at least `threshold`.
    pub fn certifies(&self, w: &Word, threshold: Index) -> bool {
        reduce(&self.product()) == reduce(w)
            && self.factors.iter().all(|f| f.core.is_loop() && f.core.index() >= threshold)
    }
}

/// Reads the nested bracketing of an expanded loop word: every positive
/// conjugator opens a bracket, every negative one closes the innermost, and
/// each loop letter is conjugated by the brackets open around it.
fn parse_factors(w: &Word) -> Result<ConjugateFactorization> {
    let mut open: Vec<Letter> = Vec::new();
    let mut factors = Vec::new();
    for l in w.iter() {
        match (l.generator, l.sign) {
            (Generator::Loop(_), _) => factors.push(Factor {
                conjugator: Word::from_letters(open.clone()),
                core: l,
            }),
            (Generator::Conj(..), Sign::Pos) => open.push(l),
            (Generator::Conj(..), Sign::Neg) => {
                if open.pop() != Some(l.inverse()) {
                    return Err(Error::Invariant(format!("unbalanced conjugator {l}")));
                }
            }
        }
    }
    if !open.is_empty() {
        return Err(Error::Invariant("unclosed conjugator".into()));
    }
    Ok(ConjugateFactorization { factors })
}

fn check_loop_word(w: &ReducedWord) -> Result<()> {
    AlphabetBound::unbounded(1)?.check(w.word())
}

/// Expands `w` until every loop index is at least `threshold` and splits the
/// result into conjugates of single loop letters.
pub fn spanier_witness(w: &ReducedWord, threshold: Index) -> Result<ConjugateFactorization> {
    Ok(spanier_expansion(w, threshold)?.1)
}

fn spanier_expansion(w: &ReducedWord, threshold: Index) -> Result<(Word, ConjugateFactorization)> {
    if threshold == 0 {
        return Err(Error::Parameter("threshold must be at least 1".into()));
    }
    check_loop_word(w)?;
    let expanded = expand(w.word(), threshold - 1)?;
    let factorization = parse_factors(&expanded)?;
    if !is_reduced(&expanded) || !factorization.certifies(&expanded, threshold) {
        return Err(Error::Invariant(format!(
            "witness for {w} at threshold {threshold} does not certify"
        )));
    }
    Ok((expanded, factorization))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConjugatorCensus {
    pub factors: u64,
    pub distinct_conjugators: u64,
    pub min_loop_index: Index,
    pub total_length: u64,
    pub max_conjugator_length: u64,
}

/// Statistics of the witness at threshold `depth + 1`.
pub fn conjugator_census(w: &ReducedWord, depth: u64) -> Result<ConjugatorCensus> {
    let (expanded, fac) = spanier_expansion(w, depth + 1)?;
    let distinct: BTreeSet<String> = fac.factors.iter().map(|f| f.conjugator.to_string()).collect();
    Ok(ConjugatorCensus {
        factors: fac.factors.len() as u64,
        distinct_conjugators: if fac.factors.is_empty() { 0 } else { distinct.len() as u64 },
        min_loop_index: fac.min_core_index().unwrap_or(0),
        total_length: expanded.len(),
        max_conjugator_length: fac.factors.iter().map(|f| f.conjugator.len()).max().unwrap_or(0),
    })
}
