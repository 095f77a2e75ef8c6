//! The decision procedure for finite root systems, its certificates, and the
//! invariants `h`, `q`, `|R+|` of a finite verdict.
//!
//! Every input is first brought to a centrally symmetric cycle (chains pass
//! to their double cover, non-centrally-symmetric cycles to theirs). The half
//! sequence `(c_1,…,c_{|A|/2})` is then contracted at a `1` with both cyclic
//! neighbours `>= 2` until one of the base cases applies.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aplus::{contract_at, contractible_one, is_in_aplus, Seq};
use crate::covering::{chain_double_cover, end_order, transport_roots, universal_cover, Direction};
use crate::error::{Error, Result};
use crate::mat2cf::OrderResult;
use crate::roots::{build_root_system, reducible_root_system, RootSystem2};
use crate::scheme::{CartanScheme2, Label};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Some off-diagonal entry is zero; finite iff all are and `(ρ_iρ_j)²`
    /// fixes every object.
    ZeroCase { objects: usize, all_zero: bool, finite: bool },
    ChainToCycle { spine: Seq, cover: Seq },
    NonCsDouble { before: Seq, after: Seq },
    AllGeTwo { half: Seq },
    /// A `1` next to another `1`: finite only for the half `(1,1,1)`.
    TripleOnes { half: Seq, finite: bool },
    /// `|A| = 4` with half `(c,1)` up to rotation, `c > 1`.
    BaseFour { half: Seq, c1: i64, finite: bool },
    /// `(…, c_{p-1}, 1, c_{p+1}, …)² → (…, c_{p-1}-1, c_{p+1}-1, …)²` on halves.
    Contract { position: usize, before: Seq, after: Seq },
    /// Centrally symmetric cycles with half `(c_1)` or `(1,1)`: decided by
    /// the `A+` test on the universal cover.
    SmallCaseOracle { char_seq: Seq, h: Option<u32>, finite: bool },
}

impl Step {
    fn verdict(&self) -> Option<bool> {
        match self {
            Step::ZeroCase { finite, .. }
            | Step::TripleOnes { finite, .. }
            | Step::BaseFour { finite, .. }
            | Step::SmallCaseOracle { finite, .. } => Some(*finite),
            Step::AllGeTwo { .. } => Some(false),
            _ => None,
        }
    }
}

fn verdict_word(finite: bool) -> &'static str {
    if finite {
        "finite"
    } else {
        "not finite"
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::ZeroCase { objects, all_zero, finite } => {
                let what = if *all_zero { "all entries zero" } else { "zero and nonzero entries mixed" };
                write!(f, "zero case, |A| = {objects}, {what}: {}", verdict_word(*finite))
            }
            Step::ChainToCycle { spine, cover } => {
                write!(f, "chain {spine} unfolds to its double cover, cycle {cover}")
            }
            Step::NonCsDouble { before, .. } => write!(
                f,
                "{before} is not centrally symmetric; pass to the double cover {before}²"
            ),
            Step::AllGeTwo { half } => write!(f, "{half}²: all entries >= 2: not finite"),
            Step::TripleOnes { half, finite } => {
                write!(f, "{half}²: two adjacent entries 1: {}", verdict_word(*finite))
            }
            Step::BaseFour { half, c1, finite } => write!(
                f,
                "{half}²: |A| = 4 with c1 = {c1}: {}",
                verdict_word(*finite)
            ),
            Step::Contract { position, before, after } => {
                write!(f, "contract at position {}: {before}² → {after}²", position + 1)
            }
            Step::SmallCaseOracle { char_seq, h, finite } => {
                let h = h.map_or("infinite".to_string(), |h| h.to_string());
                write!(f, "small case {char_seq}: h = {h}, universal cover test: {}", verdict_word(*finite))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub objects: usize,
    pub q: i64,
    pub h: u32,
    pub positive_roots: u64,
    /// `|R+| = m·|A|/2` for cycles, `m·|A|` for chains.
    pub m: u32,
    pub max_entry: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub scheme: CartanScheme2,
    pub finite: bool,
    pub irreducible: bool,
    pub certificate: Vec<Step>,
    pub stats: Option<Stats>,
}

impl Decision {
    /// Half sequences of the centrally symmetric cycles visited, in order.
    pub fn halves(&self) -> Vec<Seq> {
        let mut out: Vec<Seq> = Vec::new();
        for step in &self.certificate {
            match step {
                Step::ChainToCycle { cover, .. } => push_half(&mut out, cover),
                Step::NonCsDouble { before, .. } => out.push(before.clone()),
                Step::Contract { before, after, .. } => {
                    if out.last() != Some(before) {
                        out.push(before.clone());
                    }
                    out.push(after.clone());
                }
                Step::AllGeTwo { half } | Step::TripleOnes { half, .. } | Step::BaseFour { half, .. } => {
                    if out.last() != Some(half) {
                        out.push(half.clone());
                    }
                }
                Step::SmallCaseOracle { char_seq, .. } => push_half(&mut out, char_seq),
                Step::ZeroCase { .. } => {}
            }
        }
        out
    }

    pub fn contractions(&self) -> usize {
        self.certificate.iter().filter(|s| matches!(s, Step::Contract { .. })).count()
    }
}

fn push_half(out: &mut Vec<Seq>, full: &Seq) {
    if full.len().is_multiple_of(2) && is_cs(full) {
        let half = Seq(full[..full.len() / 2].to_vec());
        if out.last() != Some(&half) {
            out.push(half);
        }
    }
}

fn is_cs(s: &[i64]) -> bool {
    let h = s.len() / 2;
    s.len().is_multiple_of(2) && (0..h).all(|k| s[k] == s[k + h])
}

fn half_of(s: &Seq) -> Seq {
    Seq(s[..s.len() / 2].to_vec())
}

/// `(ρ_iρ_j)²` fixes every object.
fn reducible_walk_closes(scheme: &CartanScheme2) -> Result<bool> {
    let t = scheme.table()?;
    Ok((0..t.len()).all(|a| {
        let mut b = a;
        for _ in 0..2 {
            b = t.rho(Label::I, t.rho(Label::J, b));
        }
        b == a
    }))
}

fn has_adjacent_ones(half: &[i64]) -> bool {
    let n = half.len();
    (0..n).any(|k| half[k] == 1 && half[(k + 1) % n] == 1)
}

/// Finite iff `L` has finite order `h` and the first `h·|A|/2` entries of
/// the `h`-fold repetition lie in `A+`.
fn small_case(char_seq: &Seq) -> Result<Step> {
    let scheme = CartanScheme2::Cycle { char_seq: char_seq.clone() };
    let h = end_order(&scheme)?.finite();
    let finite = match h {
        Some(h) => {
            let d = char_seq.repeat(h as usize);
            is_in_aplus(&d[..d.len() / 2])?
        }
        None => false,
    };
    Ok(Step::SmallCaseOracle { char_seq: char_seq.clone(), h, finite })
}

/// Terminal step or contraction for a centrally symmetric cycle with
/// characteristic sequence `current`.
fn next_step(current: &Seq) -> Result<Step> {
    if current.len() == 2 {
        return small_case(current);
    }
    let half = half_of(current);
    let m = half.len();
    if half.iter().all(|&c| c >= 2) {
        return Ok(Step::AllGeTwo { half });
    }
    if m == 2 {
        if half[0] == 1 && half[1] == 1 {
            return small_case(current);
        }
        let c1 = half[0].max(half[1]);
        return Ok(Step::BaseFour { half, c1, finite: c1 == 2 || c1 == 3 });
    }
    if has_adjacent_ones(&half) {
        let finite = half.0 == [1, 1, 1];
        return Ok(Step::TripleOnes { half, finite });
    }
    let position = contractible_one(&half)
        .ok_or_else(|| Error::Internal(format!("no contractible 1 in {half}")))?;
    let after = contract_at(&half, position)?;
    Ok(Step::Contract { position, before: half, after })
}

pub fn decide(scheme: &CartanScheme2) -> Result<Decision> {
    let report = scheme.validate();
    if !report.is_decidable() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::Invalid(msgs.join("; ")));
    }
    let mut certificate = Vec::new();
    let finite;
    let irreducible;
    if scheme.has_zero_entry() {
        let all_zero = scheme.sequence().iter().all(|&c| c == 0);
        finite = all_zero && reducible_walk_closes(scheme)?;
        irreducible = false;
        certificate.push(Step::ZeroCase { objects: scheme.num_objects(), all_zero, finite });
    } else {
        irreducible = true;
        let mut current = match scheme {
            CartanScheme2::Chain { spine } => {
                let cover = chain_double_cover(scheme)?.cover.sequence().clone();
                certificate.push(Step::ChainToCycle { spine: spine.clone(), cover: cover.clone() });
                cover
            }
            CartanScheme2::Cycle { char_seq } => char_seq.clone(),
        };
        if !is_cs(&current) {
            let after = current.repeat(2);
            certificate.push(Step::NonCsDouble { before: current, after: after.clone() });
            current = after;
        }
        loop {
            let step = next_step(&current)?;
            if let Step::Contract { after, .. } = &step {
                current = after.repeat(2);
                certificate.push(step);
                continue;
            }
            finite = step.verdict().unwrap_or(false);
            certificate.push(step);
            break;
        }
    }
    let mut decision =
        Decision { scheme: scheme.clone(), finite, irreducible, certificate, stats: None };
    if finite {
        decision.stats = Some(stats(scheme, &decision)?);
    }
    Ok(decision)
}

/// `q`, `h` and `|R+|` from `h(6|A| - q) = 24`, cross-checked against the
/// order of the loop matrix, the possible values of `m`, and the entry bounds
/// `|A|+1` (cycles) and `2|A|+1` (chains).
pub fn stats(scheme: &CartanScheme2, decision: &Decision) -> Result<Stats> {
    if !decision.finite {
        return Err(Error::NotFinite);
    }
    let objects = scheme.num_objects();
    let n = objects as i64;
    let q = scheme.q()?;
    let denom = 6 * n - q;
    if denom <= 0 || 24 % denom != 0 || (12 * n) % denom != 0 {
        return Err(Error::Internal(format!(
            "6|A| - q = {denom} does not divide 24 for {scheme}"
        )));
    }
    let h = (24 / denom) as u32;
    let positive_roots = (12 * n / denom) as u64;
    let (loop_h, m, bound) = match scheme {
        CartanScheme2::Cycle { .. } => (end_order(scheme)?, h, n + 1),
        CartanScheme2::Chain { .. } => {
            let cover = chain_double_cover(scheme)?.cover;
            let o = match end_order(&cover)? {
                OrderResult::Finite(k) => OrderResult::Finite(2 * k),
                OrderResult::Infinite => OrderResult::Infinite,
            };
            (o, h / 2, 2 * n + 1)
        }
    };
    if loop_h != OrderResult::Finite(h) {
        return Err(Error::Internal(format!(
            "h = {h} from the q identity but End(a) has order {loop_h} for {scheme}"
        )));
    }
    if h as u64 * objects as u64 != 2 * positive_roots {
        return Err(Error::Internal(format!("|R+| = {positive_roots} differs from h|A|/2")));
    }
    if ![1, 2, 3, 4, 6].contains(&m) || (scheme.kind() == crate::scheme::Kind::Chain && h % 2 == 1) {
        return Err(Error::Internal(format!("m = {m} is not in {{1,2,3,4,6}} for {scheme}")));
    }
    let max_entry = scheme.max_entry()?;
    if max_entry > bound {
        return Err(Error::Internal(format!(
            "entry {max_entry} exceeds the bound {bound} for {scheme}"
        )));
    }
    Ok(Stats { objects, q, h, positive_roots, m, max_entry })
}

/// Replays a certificate against `scheme` without consulting [`decide`]:
/// every step is recomputed from the state left by the previous one, and the
/// terminal step's verdict must match `decision.finite`.
pub fn verify_certificate(decision: &Decision) -> Result<()> {
    let reject = |step: usize, reason: String| Error::Certificate { step, reason };
    let scheme = &decision.scheme;
    let report = scheme.validate();
    if !report.is_decidable() {
        return Err(reject(0, "input scheme is invalid".into()));
    }
    let steps = &decision.certificate;
    let mut current: Option<Seq> = match scheme {
        CartanScheme2::Cycle { char_seq } if !scheme.has_zero_entry() => Some(char_seq.clone()),
        _ => None,
    };
    let mut verdict = None;
    for (k, step) in steps.iter().enumerate() {
        if verdict.is_some() {
            return Err(reject(k, "step after a terminal step".into()));
        }
        match step {
            Step::ZeroCase { objects, all_zero, finite } => {
                if k != 0 || !scheme.has_zero_entry() {
                    return Err(reject(k, "zero case for a scheme without zero entries".into()));
                }
                let az = scheme.sequence().iter().all(|&c| c == 0);
                let fin = az && reducible_walk_closes(scheme)?;
                if *objects != scheme.num_objects() || *all_zero != az || *finite != fin {
                    return Err(reject(k, "zero case data do not match the scheme".into()));
                }
                verdict = Some(fin);
            }
            Step::ChainToCycle { spine, cover } => {
                if k != 0 || scheme.has_zero_entry() || scheme.chain_spine().ok() != Some(spine) {
                    return Err(reject(k, "chain unfolding must start from the input chain".into()));
                }
                let mut expect = spine.0.clone();
                expect.extend(spine[1..spine.len() - 1].iter().rev());
                if cover.0 != expect {
                    return Err(reject(k, format!("double cover of {spine} is {}", Seq(expect))));
                }
                current = Some(cover.clone());
            }
            Step::NonCsDouble { before, after } => {
                let cur = current.as_ref().ok_or_else(|| reject(k, "no current cycle".into()))?;
                if before != cur || is_cs(before) || *after != before.repeat(2) {
                    return Err(reject(k, "invalid doubling".into()));
                }
                current = Some(after.clone());
            }
            Step::Contract { position, before, after } => {
                let cur = current.as_ref().ok_or_else(|| reject(k, "no current cycle".into()))?;
                if !is_cs(cur) || cur.len() < 6 || half_of(cur) != *before {
                    return Err(reject(k, format!("{before}² is not the current cycle")));
                }
                let n = before.len();
                let p = *position;
                if p >= n || before[p] != 1 || before[(p + n - 1) % n] < 2 || before[(p + 1) % n] < 2 {
                    return Err(reject(k, format!("position {p} of {before} is not a 1 between entries >= 2")));
                }
                if contract_at(before, p)? != *after {
                    return Err(reject(k, format!("contraction of {before} is not {after}")));
                }
                current = Some(after.repeat(2));
            }
            Step::AllGeTwo { half }
            | Step::TripleOnes { half, .. }
            | Step::BaseFour { half, .. } => {
                let cur = current.as_ref().ok_or_else(|| reject(k, "no current cycle".into()))?;
                if !is_cs(cur) || half_of(cur) != *half {
                    return Err(reject(k, format!("{half}² is not the current cycle")));
                }
                let fin = match step {
                    Step::AllGeTwo { .. } => {
                        if half.iter().any(|&c| c < 2) {
                            return Err(reject(k, format!("{half} has an entry below 2")));
                        }
                        false
                    }
                    Step::TripleOnes { finite, .. } => {
                        if half.len() < 3 || !has_adjacent_ones(half) {
                            return Err(reject(k, format!("{half} has no adjacent ones")));
                        }
                        let fin = half.0 == [1, 1, 1];
                        if *finite != fin {
                            return Err(reject(k, "wrong verdict".into()));
                        }
                        fin
                    }
                    Step::BaseFour { c1, finite, .. } => {
                        let ok = half.len() == 2
                            && *c1 > 1
                            && (half.0 == [*c1, 1] || half.0 == [1, *c1]);
                        if !ok {
                            return Err(reject(k, format!("{half} is not (c,1) with c > 1")));
                        }
                        let fin = *c1 == 2 || *c1 == 3;
                        if *finite != fin {
                            return Err(reject(k, "wrong verdict".into()));
                        }
                        fin
                    }
                    _ => unreachable!(),
                };
                verdict = Some(fin);
            }
            Step::SmallCaseOracle { char_seq, .. } => {
                let cur = current.as_ref().ok_or_else(|| reject(k, "no current cycle".into()))?;
                let small = cur.len() == 2 || (cur.len() == 4 && cur.iter().all(|&c| c == 1));
                if cur != char_seq || !is_cs(cur) || !small {
                    return Err(reject(k, format!("{char_seq} is not a small centrally symmetric case")));
                }
                let redo = small_case(char_seq)?;
                if redo != *step {
                    return Err(reject(k, "small case data do not match".into()));
                }
                verdict = redo.verdict();
            }
        }
    }
    match verdict {
        None => Err(reject(steps.len(), "certificate has no terminal step".into())),
        Some(v) if v != decision.finite => {
            Err(reject(steps.len(), format!("terminal verdict {v} contradicts the decision")))
        }
        Some(_) => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremal {
    pub n: usize,
    pub cycle: CartanScheme2,
    pub chain: CartanScheme2,
    /// `n = 1`: the 2-cycle `(1,3)` and the one-object chain `(1,3)`.
    pub g2_base_case: bool,
}

/// Schemes with `n` (chain) and `2n` (cycle) objects carrying the entry
/// `-(2n+1)`, which attains the entry bounds.
pub fn extremal_scheme(n: usize) -> Result<Extremal> {
    if n == 0 {
        return Err(Error::Invalid("extremal schemes need n >= 1".into()));
    }
    let big = 2 * n as i64 + 1;
    let (cycle, spine) = if n == 1 {
        (vec![1, 3], vec![1, 3])
    } else {
        let twos = vec![2; n - 2];
        let mut spine = vec![3];
        spine.extend(&twos);
        spine.extend([1, big]);
        let mut cycle = spine.clone();
        cycle.push(1);
        cycle.extend(&twos);
        (cycle, spine)
    };
    Ok(Extremal {
        n,
        cycle: CartanScheme2::cycle_from_char_seq(cycle)?,
        chain: CartanScheme2::chain_from_spine(spine)?,
        g2_base_case: n == 1,
    })
}

/// A finite root system of type `scheme`, built on the universal cover from
/// its `A+` half sequence and transported down.
pub fn realize_root_system(scheme: &CartanScheme2) -> Result<RootSystem2> {
    if scheme.has_zero_entry() {
        let all_zero = scheme.sequence().iter().all(|&c| c == 0);
        if all_zero && reducible_walk_closes(scheme)? {
            return Ok(reducible_root_system(scheme));
        }
        return Err(Error::NotFinite);
    }
    match scheme {
        CartanScheme2::Chain { .. } => {
            let rel = chain_double_cover(scheme)?;
            let up = realize_root_system(&rel.cover)?;
            transport_roots(&rel, &up, Direction::Down)
        }
        CartanScheme2::Cycle { .. } => {
            let rel = match universal_cover(scheme) {
                Err(Error::InfiniteOrder) => return Err(Error::NotFinite),
                r => r?,
            };
            let t = rel.cover.sequence();
            if !is_cs(t) {
                return Err(Error::NotFinite);
            }
            let d = half_of(t);
            if !is_in_aplus(&d)? {
                return Err(Error::NotFinite);
            }
            let rs = build_root_system(&d)?;
            transport_roots(&rel, &rs, Direction::Down)
        }
    }
}
