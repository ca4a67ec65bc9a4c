//! Deletion and substitution homomorphisms between the word monoids, and
//! randomized checks that the diagrams built from them commute.
//!
//! | map | here | effect |
//! |-----|------|--------|
//! | `R_{n,k}` | [`delete_top`] | erase `ℓ_{k+1}^{±1}` |
//! | `R_{n,m} ∘ … ∘ R_{n,k-1}` | [`project`] | erase every loop letter above `m` |
//! | `T_{n,k}` | [`tee`] | erase `ℓ_{k+1}^{±1}`, then reduce |
//! | `D_n` | [`expand_once`] | substitute the pants relation for `ℓ_n^{±1}` |
//! | `E_{n-1}` | [`drop_pants`] | erase `ρ_{n,1}^{±1}, ρ_{n,2}^{±1}` |
//! | `D̄_{j,m-1}` | [`expand_truncated`] | `D_j`, or its loop-free shadow once `2j ≥ m` |
//!
//! On π₁ level the isomorphisms `h_{n,k}` are the identity on reduced words,
//! so they have no counterpart here.
//!
//! Every map validates its input alphabet before touching the word.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rewrite::{is_reduced, reduce, ReducedWord};
use crate::sample::{mixed_word, random_word, sample_rng};
use crate::words::{check_index, AlphabetBound, Generator, Index, Letter, Sign, Substitution, Word};

/// Longest word the diagram samplers draw.
pub const SAMPLE_MAX_LEN: usize = 60;

struct DeleteLoopsAbove(Index);

impl Substitution for DeleteLoopsAbove {
    fn moves(&self, l: Letter) -> bool {
        matches!(l.generator, Generator::Loop(i) if i > self.0)
    }

    fn image(&self, _: Letter) -> Vec<Letter> {
        Vec::new()
    }
}

struct DeleteConjAbove(Index);

impl Substitution for DeleteConjAbove {
    fn moves(&self, l: Letter) -> bool {
        matches!(l.generator, Generator::Conj(i, _) if i > self.0)
    }

    fn image(&self, _: Letter) -> Vec<Letter> {
        Vec::new()
    }
}

/// `ℓ_n ↦ ρ_{n,1} ℓ_{2n} ρ_{n,1}⁻¹ ρ_{n,2} ℓ_{2n+1} ρ_{n,2}⁻¹`, or with the
/// loop letters dropped when `keep_loops` is false.
struct PantsRelation {
    n: Index,
    keep_loops: bool,
}

impl Substitution for PantsRelation {
    fn moves(&self, l: Letter) -> bool {
        l.generator == Generator::Loop(self.n)
    }

    fn image(&self, l: Letter) -> Vec<Letter> {
        let (r1, r2) = (Letter::rho(self.n, 1), Letter::rho(self.n, 2));
        let positive: Vec<Letter> = if self.keep_loops {
            let (a, b) = (Letter::ell(2 * self.n), Letter::ell(2 * self.n + 1));
            vec![r1, a, r1.inverse(), r2, b, r2.inverse()]
        } else {
            vec![r1, r1.inverse(), r2, r2.inverse()]
        };
        match l.sign {
            Sign::Pos => positive,
            Sign::Neg => positive.iter().rev().map(|x| x.inverse()).collect(),
        }
    }
}

fn bound(n: Index, k: Index) -> Result<AlphabetBound> {
    AlphabetBound::new(n, k)
}

fn level_at_least_one(n: Index) -> Result<()> {
    if n == 0 {
        Err(Error::Parameter("levels start at 1".into()))
    } else {
        Ok(())
    }
}

/// `R_{n,k}: W⁺_{n,k+1} → W⁺_{n,k}`.
pub fn delete_top(w: &Word, n: Index, k: Index) -> Result<Word> {
    bound(n, k + 1)?.check(w)?;
    bound(n, k)?;
    Ok(w.substitute(&DeleteLoopsAbove(k)))
}

/// `R_{n,m} ∘ R_{n,m+1} ∘ ⋯ ∘ R_{n,k-1}: W⁺_{n,k} → W⁺_{n,m}`.
pub fn project(w: &Word, n: Index, k: Index, m: Index) -> Result<Word> {
    if m > k {
        return Err(Error::Parameter(format!("cannot project from level {k} up to {m}")));
    }
    bound(n, k)?.check(w)?;
    bound(n, m)?;
    Ok(w.substitute(&DeleteLoopsAbove(m)))
}

/// `T_{n,k} = S_{n,k} ∘ R_{n,k}` on reduced words.
pub fn tee(w: &ReducedWord, n: Index, k: Index) -> Result<ReducedWord> {
    Ok(reduce(&delete_top(w.word(), n, k)?))
}

/// `D_n: W⁺_{n,k} → W⁺_{n+1,k}`.
pub fn expand_once(w: &Word, n: Index) -> Result<Word> {
    level_at_least_one(n)?;
    let census = w.census();
    AlphabetBound::unbounded(n)?.check_census(&census)?;
    if census.contains_generator(Generator::Loop(n)) {
        check_index(2 * n as u128 + 1)?;
    }
    Ok(w.substitute(&PantsRelation { n, keep_loops: true }))
}

/// `D_n ∘ ⋯ ∘ D_1` on a word over loop letters.
pub fn expand(w: &Word, depth: u64) -> Result<Word> {
    expand_from(w, 1, depth)
}

/// `D_{n+depth-1} ∘ ⋯ ∘ D_n` for a word at level `n`.
pub fn expand_from(w: &Word, n: Index, depth: u64) -> Result<Word> {
    level_at_least_one(n)?;
    AlphabetBound::unbounded(n)?.check(w)?;
    let mut out = w.clone();
    for j in n..n + depth {
        out = expand_once(&out, j)?;
    }
    Ok(out)
}

/// `E_{n-1}: W⁺_{n+1,n} → W⁺_{n,n-1}`.
pub fn drop_pants(w: &Word, n: Index) -> Result<Word> {
    level_at_least_one(n)?;
    bound(n + 1, n)?.check(w)?;
    Ok(w.substitute(&DeleteConjAbove(n - 1)))
}

/// `E_m ∘ ⋯ ∘ E_{n-1}: W⁺_{n+1,n} → W⁺_{m+1,m}`; erases conjugators above `m`.
pub fn drop_pants_to(w: &Word, n: Index, m: Index) -> Result<Word> {
    if m > n {
        return Err(Error::Parameter(format!("cannot drop from level {n} up to {m}")));
    }
    bound(n + 1, n)?.check(w)?;
    Ok(w.substitute(&DeleteConjAbove(m)))
}

/// `D̄_{j,m-1}: W⁺_{j,m-1} → W⁺_{j+1,m-1}`, with `m` even.
pub fn expand_truncated(w: &Word, j: Index, m: Index) -> Result<Word> {
    if m % 2 != 0 {
        return Err(Error::Parameter(format!("m = {m} must be even")));
    }
    if j == 0 || j + 1 > m {
        return Err(Error::Parameter(format!("need 1 ≤ j ≤ m - 1, got j = {j}, m = {m}")));
    }
    bound(j, m - 1)?.check(w)?;
    let keep_loops = 2 * j < m - 1;
    Ok(w.substitute(&PantsRelation { n: j, keep_loops }))
}

/// `D̄_{m-1,m-1} ∘ ⋯ ∘ D̄_{n,m-1}: W⁺_{n,m-1} → W⁺_{m,m-1}`.
pub fn expand_truncated_chain(w: &Word, n: Index, m: Index) -> Result<Word> {
    let mut out = w.clone();
    for j in n..m {
        out = expand_truncated(&out, j, m)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFailure {
    /// Which square or law failed.
    pub check: String,
    pub input: Word,
    pub left: Word,
    pub right: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub diagram: String,
    pub n: Index,
    pub k: Index,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Index>,
    pub samples: u64,
    pub seed: u64,
    pub failures: Vec<DiagramFailure>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Appends the samples and failures of `other`, which must describe the
    /// same diagram.
    pub fn merge(&mut self, other: DiagramReport) {
        debug_assert_eq!(self.diagram, other.diagram);
        self.samples += other.samples;
        self.failures.extend(other.failures);
    }
}

fn check_diagram_params(n: Index, k: Index) -> Result<()> {
    level_at_least_one(n)?;
    let floor = 2 * n as u128 + 1;
    if (k as u128) < floor {
        return Err(Error::Parameter(format!("need k ≥ 2n + 1 = {floor}, got k = {k}")));
    }
    check_index(k as u128 + 1)?;
    Ok(())
}

fn compare(check: &str, input: &Word, left: Word, right: Word) -> Option<DiagramFailure> {
    (left != right).then(|| DiagramFailure {
        check: check.to_string(),
        input: input.clone(),
        left,
        right,
    })
}

/// Both paths of the trapezoid for one input word at `(n, k)`:
/// `E_{n-1} ∘ R-chain ∘ D_n` against the `R`-chain down to `n - 1`.
pub fn trapezoid_paths(w: &Word, n: Index, k: Index) -> Result<(Word, Word)> {
    let left = drop_pants(&project(&expand_once(w, n)?, n + 1, k, n)?, n)?;
    let right = project(w, n, k, n - 1)?;
    Ok((left, right))
}

pub fn verify_trapezoid(n: Index, k: Index, samples: u64, seed: u64) -> Result<DiagramReport> {
    verify_trapezoid_with(Exec::default(), n, k, samples, seed)
}

pub fn verify_trapezoid_with(exec: Exec, n: Index, k: Index, samples: u64, seed: u64) -> Result<DiagramReport> {
    check_diagram_params(n, k)?;
    let alphabet = bound(n, k)?;
    let outcomes = exec.map_indexed(samples, |i| -> Result<Option<DiagramFailure>> {
        let w = mixed_word(&mut sample_rng(seed, i), alphabet, SAMPLE_MAX_LEN);
        let (left, right) = trapezoid_paths(&w, n, k)?;
        Ok(compare("trapezoid", &w, left, right))
    });
    Ok(DiagramReport {
        diagram: "trapezoid".into(),
        n,
        k,
        m: None,
        samples,
        seed,
        failures: outcomes.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect(),
    })
}

/// Checks of the cube for one input word `w` over `A_{n,k+1}`.
pub fn cube_checks(w: &Word, n: Index, k: Index) -> Result<Vec<DiagramFailure>> {
    let mut out = Vec::new();
    // R_{n+1,k} ∘ D_n = D_n ∘ R_{n,k}
    let left = delete_top(&expand_once(w, n)?, n + 1, k)?;
    let right = expand_once(&delete_top(w, n, k)?, n)?;
    out.extend(compare("R/D square", w, left, right));
    // S_{n+1,k+1} ∘ D_n = D_n ∘ S_{n,k+1}
    let left = reduce(&expand_once(w, n)?).into_word();
    let right = expand_once(reduce(w).word(), n)?;
    out.extend(compare("S/D square", w, left, right));
    // D_n(F⁺_{n,k}) ⊆ F⁺_{n+1,k}
    let r = reduce(&delete_top(w, n, k)?);
    let image = expand_once(r.word(), n)?;
    if !is_reduced(&image) {
        out.push(DiagramFailure {
            check: "reducedness".into(),
            input: r.word().clone(),
            left: image.clone(),
            right: reduce(&image).into_word(),
        });
    }
    Ok(out)
}

pub fn verify_cube(n: Index, k: Index, samples: u64, seed: u64) -> Result<DiagramReport> {
    verify_cube_with(Exec::default(), n, k, samples, seed)
}

pub fn verify_cube_with(exec: Exec, n: Index, k: Index, samples: u64, seed: u64) -> Result<DiagramReport> {
    check_diagram_params(n, k)?;
    let alphabet = bound(n, k + 1)?;
    let outcomes = exec.map_indexed(samples, |i| {
        let mut rng = sample_rng(seed, i);
        let w = if i % 2 == 0 {
            random_word(&mut rng, alphabet, SAMPLE_MAX_LEN, true)
        } else {
            mixed_word(&mut rng, alphabet, SAMPLE_MAX_LEN)
        };
        cube_checks(&w, n, k)
    });
    Ok(DiagramReport {
        diagram: "cube".into(),
        n,
        k,
        m: None,
        samples,
        seed,
        failures: outcomes.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect(),
    })
}
