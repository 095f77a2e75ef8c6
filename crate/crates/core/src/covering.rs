//! Coverings of rank-two Cartan schemes.
//!
//! Only the cyclic deck groups occur at rank two: `k`-fold covers of cycles
//! (generated by a power of the loop matrix) and the double cover that
//! unfolds a chain into a cycle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::aplus::Seq;
use crate::error::{Error, Result};
use crate::mat2cf::{eta_product, matrix_order, Mat2, OrderResult};
use crate::roots::RootSystem2;
use crate::scheme::{CartanScheme2, Label};

/// How cover objects project to base objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum ObjectMap {
    /// Cover object `k` maps to `k mod base_objects`.
    Modulo { base_objects: usize },
    /// Cycle of `2N` objects folded onto a chain of `N`: `0 ↦ 0`,
    /// `k ↦ k-1` for `1 ≤ k ≤ N`, `k ↦ 2N-k` above.
    ChainFold { base_objects: usize },
}

impl ObjectMap {
    pub fn project(&self, a: usize) -> usize {
        match *self {
            ObjectMap::Modulo { base_objects } => a % base_objects,
            ObjectMap::ChainFold { base_objects: n } => {
                if a == 0 {
                    0
                } else if a <= n {
                    a - 1
                } else {
                    2 * n - a
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringRelation {
    pub base: CartanScheme2,
    pub cover: CartanScheme2,
    pub fold: usize,
    pub object_map: ObjectMap,
}

impl CoveringRelation {
    pub fn project(&self, a: usize) -> usize {
        self.object_map.project(a)
    }

    /// Cover objects lying over base object `b`, ascending.
    pub fn fiber(&self, b: usize) -> Vec<usize> {
        (0..self.cover.num_objects())
            .filter(|&a| self.project(a) == b)
            .collect()
    }

    /// Checks the covering axioms pointwise: Cartan matrices agree along the
    /// projection, the projection commutes with both reflections, and every
    /// fiber has exactly `fold` elements.
    pub fn check(&self) -> Result<()> {
        let base = self.base.table()?;
        let cover = self.cover.table()?;
        if cover.len() != self.fold * base.len() {
            return Err(Error::Invalid(format!(
                "cover has {} objects, expected {} x {}",
                cover.len(),
                self.fold,
                base.len()
            )));
        }
        let mut fibers = vec![0usize; base.len()];
        for a in 0..cover.len() {
            let b = self.project(a);
            if b >= base.len() {
                return Err(Error::NoSuchObject { object: b, objects: base.len() });
            }
            fibers[b] += 1;
            if cover.cartan[a] != base.cartan[b] {
                return Err(Error::Invalid(format!(
                    "Cartan matrix at cover object {a} differs from base object {b}"
                )));
            }
            for l in Label::BOTH {
                if self.project(cover.rho(l, a)) != base.rho(l, b) {
                    return Err(Error::Invalid(format!(
                        "projection does not commute with reflection {l:?} at cover object {a}"
                    )));
                }
            }
        }
        if let Some(b) = fibers.iter().position(|&f| f != self.fold) {
            return Err(Error::Invalid(format!(
                "fiber over base object {b} has {} elements, expected {}",
                fibers[b], self.fold
            )));
        }
        Ok(())
    }
}

/// `η(c_N)⋯η(c_1)` for the characteristic sequence `(c_1,…,c_N)`.
pub fn loop_matrix(scheme: &CartanScheme2) -> Result<Mat2> {
    let s = scheme.cycle_seq()?;
    eta_product(&s.reversed())
}

/// Order of `End(a)`; the same for every object of a cycle.
pub fn end_order(scheme: &CartanScheme2) -> Result<OrderResult> {
    matrix_order(&loop_matrix(scheme)?)
}

pub fn k_fold_cover(scheme: &CartanScheme2, k: usize) -> Result<CoveringRelation> {
    let s = scheme.cycle_seq()?;
    if k == 0 {
        return Err(Error::ZeroFold);
    }
    Ok(CoveringRelation {
        base: scheme.clone(),
        cover: CartanScheme2::Cycle { char_seq: s.repeat(k) },
        fold: k,
        object_map: ObjectMap::Modulo { base_objects: s.len() },
    })
}

/// The palindromic cycle `(c_1,…,c_N,c_{N+1},c_N,…,c_2)` folding onto the
/// chain with spine `(c_1,…,c_{N+1})`.
pub fn chain_double_cover(scheme: &CartanScheme2) -> Result<CoveringRelation> {
    let spine = scheme.chain_spine()?;
    let n = spine.len() - 1;
    let mut seq = spine.0.clone();
    seq.extend(spine[1..n].iter().rev());
    Ok(CoveringRelation {
        base: scheme.clone(),
        cover: CartanScheme2::Cycle { char_seq: Seq(seq) },
        fold: 2,
        object_map: ObjectMap::ChainFold { base_objects: n },
    })
}

/// The simply connected cover: the `h`-fold cover with `h = |End(a)|`.
pub fn universal_cover(scheme: &CartanScheme2) -> Result<CoveringRelation> {
    match end_order(scheme)? {
        OrderResult::Finite(h) => k_fold_cover(scheme, h as usize),
        OrderResult::Infinite => Err(Error::InfiniteOrder),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainQuotient {
    pub label: Label,
    pub object: usize,
    pub spine: Seq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    /// Every reference pair whose characteristic sequence has the palindromic
    /// chain-cover form, with the spine of the quotient chain.
    pub chain_quotients: Vec<ChainQuotient>,
    /// Characteristic sequence of the non-centrally-symmetric cycle this
    /// scheme double covers, if any.
    pub half_quotient: Option<Seq>,
}

impl QuotientReport {
    /// Distinct quotient spines, sorted.
    pub fn chain_spines(&self) -> Vec<Seq> {
        let set: BTreeSet<Seq> = self.chain_quotients.iter().map(|q| q.spine.clone()).collect();
        set.into_iter().collect()
    }
}

pub fn detect_quotients(scheme: &CartanScheme2) -> Result<QuotientReport> {
    let t = scheme.cycle_seq()?;
    let len = t.len();
    let n = len / 2;
    let mut chain_quotients = Vec::new();
    for label in Label::BOTH {
        for object in 0..len {
            let s = scheme.char_seq(label, object)?;
            if (1..n).all(|k| s[k] == s[len - k]) {
                chain_quotients.push(ChainQuotient { label, object, spine: Seq(s[..=n].to_vec()) });
            }
        }
    }
    let half_quotient = if len % 4 == 0 && scheme.is_centrally_symmetric()? {
        let d = Seq(t[..n].to_vec());
        let quarter = n / 2;
        let doubled = (0..quarter).all(|k| d[k] == d[k + quarter]);
        (!doubled).then_some(d)
    } else {
        None
    };
    Ok(QuotientReport { chain_quotients, half_quotient })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// Moves a root system along a covering: upwards every cover object copies
/// the roots of its image, downwards each base object takes the intersection
/// over its fiber.
pub fn transport_roots(
    rel: &CoveringRelation,
    rs: &RootSystem2,
    direction: Direction,
) -> Result<RootSystem2> {
    match direction {
        Direction::Up => {
            if rs.scheme != rel.base || rs.roots.len() != rel.base.num_objects() {
                return Err(Error::SchemeMismatch);
            }
            let roots = (0..rel.cover.num_objects())
                .map(|a| rs.roots[rel.project(a)].clone())
                .collect();
            Ok(RootSystem2 { scheme: rel.cover.clone(), roots })
        }
        Direction::Down => {
            if rs.scheme != rel.cover || rs.roots.len() != rel.cover.num_objects() {
                return Err(Error::SchemeMismatch);
            }
            let roots = (0..rel.base.num_objects())
                .map(|b| {
                    let mut fiber = rel.fiber(b).into_iter();
                    let first = fiber.next().map(|a| rs.roots[a].clone()).unwrap_or_default();
                    fiber.fold(first, |acc, a| acc.intersection(&rs.roots[a]).copied().collect())
                })
                .collect();
            Ok(RootSystem2 { scheme: rel.base.clone(), roots })
        }
    }
}
