//! Integer sequences, the sets `A` and `A+`, the contraction/expansion moves
//! between them, dihedral normal forms, reduction certificates and
//! enumeration.
//!
//! A sequence `(c₁,…,cₙ)` is in `A` when `η(c₁)⋯η(cₙ) = -id`. It is in `A+`
//! when additionally every entry is positive and every proper prefix product
//! has a nonnegative first column. Positions are 0-based and cyclic where an
//! operation says so.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::mat2cf::Mat2;

/// A finite sequence of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq(pub Vec<i64>);

impl Seq {
    pub fn new(entries: Vec<i64>) -> Self {
        Seq(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    /// Left rotation: entry `k` of the result is entry `k + r` of `self`.
    pub fn rotated(&self, r: usize) -> Seq {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let r = r % n;
        Seq(self.0[r..].iter().chain(&self.0[..r]).copied().collect())
    }

    pub fn reversed(&self) -> Seq {
        Seq(self.0.iter().rev().copied().collect())
    }

    /// `k`-fold concatenation.
    pub fn repeat(&self, k: usize) -> Seq {
        Seq(self.0.repeat(k))
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Deref for Seq {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Seq {
    fn from(v: Vec<i64>) -> Self {
        Seq(v)
    }
}

impl From<&[i64]> for Seq {
    fn from(v: &[i64]) -> Self {
        Seq(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Seq {
    fn from(v: [i64; N]) -> Self {
        Seq(v.to_vec())
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Seq {
    type Err = String;

    /// Parses `1,2,3`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if t.is_empty() {
            return Ok(Seq::default());
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|e| format!("invalid integer {:?}: {e}", x.trim()))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Seq)
    }
}

pub fn is_in_a(s: &[i64]) -> Result<bool> {
    if s.is_empty() {
        return Ok(false);
    }
    Ok(crate::mat2cf::eta_product(s)?.is_neg_identity())
}

pub fn is_in_aplus(s: &[i64]) -> Result<bool> {
    if s.is_empty() || s.iter().any(|&c| c < 1) {
        return Ok(false);
    }
    let mut prefix = Mat2::IDENTITY;
    for (k, &c) in s.iter().enumerate() {
        prefix = prefix.checked_mul(&Mat2::eta(c))?;
        if k + 1 < s.len() && (prefix.a < 0 || prefix.c < 0) {
            return Ok(false);
        }
    }
    Ok(prefix.is_neg_identity())
}

/// Removes the `1` at `pos` and decrements both cyclic neighbours.
pub fn contract(s: &Seq, pos: usize) -> Result<Seq> {
    let n = s.len();
    if n < 3 {
        return Err(Error::SequenceTooShort { seq: s.clone(), min: 3 });
    }
    if pos >= n {
        return Err(Error::PositionOutOfRange { pos, len: n });
    }
    if s[pos] != 1 {
        return Err(Error::NotOne { seq: s.clone(), pos });
    }
    let prev = (pos + n - 1) % n;
    let next = (pos + 1) % n;
    let mut out = Vec::with_capacity(n - 1);
    for (k, &c) in s.iter().enumerate() {
        if k == pos {
            continue;
        }
        out.push(if k == prev || k == next { c - 1 } else { c });
    }
    Ok(Seq(out))
}

/// Inserts a `1` into the cyclic gap after position `gap` and increments both
/// neighbours. The new `1` sits at index `gap + 1`, so
/// `contract(&expand(s, g)?, g + 1)` returns `s`.
pub fn expand(s: &Seq, gap: usize) -> Result<Seq> {
    let n = s.len();
    if n < 2 {
        return Err(Error::SequenceTooShort { seq: s.clone(), min: 2 });
    }
    if gap >= n {
        return Err(Error::PositionOutOfRange { pos: gap, len: n });
    }
    let next = (gap + 1) % n;
    let mut out = Vec::with_capacity(n + 1);
    for (k, &c) in s.iter().enumerate() {
        out.push(if k == gap || k == next { c + 1 } else { c });
        if k == gap {
            out.push(1);
        }
    }
    Ok(Seq(out))
}

/// Rotates so that the `1` at `pos` lands at index 1, then contracts there.
/// The result is `(c_{pos-1}-1, c_{pos+1}-1, c_{pos+2}, …, c_{pos-2})`.
pub fn contract_at(s: &Seq, pos: usize) -> Result<Seq> {
    let n = s.len();
    if pos >= n {
        return Err(Error::PositionOutOfRange { pos, len: n });
    }
    contract(&s.rotated((pos + n - 1) % n.max(1)), 1)
}

/// Smallest cyclic index holding a `1` whose two neighbours are both `>= 2`.
pub fn contractible_one(s: &[i64]) -> Option<usize> {
    let n = s.len();
    if n < 3 {
        return None;
    }
    (0..n).find(|&k| s[k] == 1 && s[(k + n - 1) % n] >= 2 && s[(k + 1) % n] >= 2)
}

/// Lexicographically smallest element of the dihedral orbit (all rotations of
/// the sequence and of its reversal).
pub fn dihedral_normal_form(s: &Seq) -> Seq {
    let n = s.len();
    if n == 0 {
        return s.clone();
    }
    let rev = s.reversed();
    let mut best: Option<(usize, bool)> = None;
    let cmp_at = |(r1, f1): (usize, bool), (r2, f2): (usize, bool)| {
        let a = if f1 { &rev } else { s };
        let b = if f2 { &rev } else { s };
        (0..n)
            .map(|k| a[(k + r1) % n].cmp(&b[(k + r2) % n]))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    };
    for flip in [false, true] {
        for r in 0..n {
            let cand = (r, flip);
            best = match best {
                Some(b) if cmp_at(cand, b).is_ge() => Some(b),
                _ => Some(cand),
            };
        }
    }
    let (r, flip) = best.expect("non-empty orbit");
    if flip {
        rev.rotated(r)
    } else {
        s.rotated(r)
    }
}

/// True when `s` is its own dihedral normal form. Cheaper than computing the
/// normal form because comparisons stop at the first difference.
pub fn is_dihedral_normal_form(s: &[i64]) -> bool {
    let n = s.len();
    for r in 0..n {
        // rotation
        for k in 0..n {
            let x = s[(k + r) % n];
            match x.cmp(&s[k]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
        // reflection: reversed then rotated by r
        for k in 0..n {
            let x = s[(2 * n - 1 - k - r) % n];
            match x.cmp(&s[k]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

pub fn dihedral_equivalent(s: &Seq, t: &Seq) -> bool {
    s.len() == t.len() && dihedral_normal_form(s) == dihedral_normal_form(t)
}

/// One contraction move: optionally reverse `before`, rotate it left by
/// `rotation`, then contract at `position`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveStep {
    pub rotation: usize,
    pub reflected: bool,
    pub position: usize,
    pub before: Seq,
    pub after: Seq,
}

impl MoveStep {
    pub fn apply(&self) -> Result<Seq> {
        let base = if self.reflected {
            self.before.reversed()
        } else {
            self.before.clone()
        };
        contract(&base.rotated(self.rotation), self.position)
    }
}

/// A chain of contractions from an `A+` sequence down to `(1,1,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCertificate {
    pub start: Seq,
    pub steps: Vec<MoveStep>,
}

impl MoveCertificate {
    /// Recomputes every step from `start` and checks that each intermediate
    /// lies in `A+` and that the chain ends at `(1,1,1)`.
    pub fn replay(&self) -> Result<()> {
        let reject = |step: usize, reason: String| Error::Certificate { step, reason };
        if !is_in_aplus(&self.start)? {
            return Err(reject(0, format!("start {} is not in A+", self.start)));
        }
        let mut current = self.start.clone();
        for (k, step) in self.steps.iter().enumerate() {
            if step.before != current {
                return Err(reject(k, format!("expected {current}, certificate has {}", step.before)));
            }
            let after = step.apply().map_err(|e| reject(k, e.to_string()))?;
            if after != step.after {
                return Err(reject(k, format!("contraction gives {after}, certificate has {}", step.after)));
            }
            if !is_in_aplus(&after)? {
                return Err(reject(k, format!("{after} is not in A+")));
            }
            current = after;
        }
        if current != Seq::from([1, 1, 1]) {
            return Err(reject(self.steps.len(), format!("ends at {current}, not (1,1,1)")));
        }
        Ok(())
    }
}

/// Contracts an `A+` sequence down to `(1,1,1)` in exactly `n - 3` moves,
/// always at the smallest index holding a `1` with both neighbours `>= 2`.
pub fn reduce_certificate(s: &Seq) -> Result<MoveCertificate> {
    if !is_in_aplus(s)? {
        return Err(Error::NotInAplus { seq: s.clone() });
    }
    let mut steps = Vec::with_capacity(s.len().saturating_sub(3));
    let mut current = s.clone();
    while current.len() > 3 {
        let n = current.len();
        let pos = contractible_one(&current).ok_or_else(|| {
            Error::Internal(format!("A+ sequence {current} has no contractible 1"))
        })?;
        let step = MoveStep {
            rotation: (pos + n - 1) % n,
            reflected: false,
            position: 1,
            before: current.clone(),
            after: contract_at(&current, pos)?,
        };
        current = step.after.clone();
        steps.push(step);
    }
    Ok(MoveCertificate { start: s.clone(), steps })
}

/// All `∼`-classes of `A+` sequences of length `n`, as sorted dihedral normal
/// forms, generated by expanding `(1,1,1)` level by level.
pub fn enumerate_aplus(n: usize) -> Result<Vec<Seq>> {
    enumerate_aplus_with(n, Strategy::default())
}

pub fn enumerate_aplus_with(n: usize, strategy: Strategy) -> Result<Vec<Seq>> {
    if n < 3 {
        return Err(Error::LengthOutOfRange { n, min: 3, max: usize::MAX });
    }
    let mut level: Vec<Seq> = vec![Seq::from([1, 1, 1])];
    for _ in 3..n {
        let next = exec::flat_map(strategy, &level, |s| {
            (0..s.len())
                .map(|g| dihedral_normal_form(&expand(s, g).expect("gap in range")))
                .collect()
        });
        level = next.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    }
    Ok(level)
}
