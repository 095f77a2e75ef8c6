//! Exhaustive grids of small schemes: cycles up to dihedral symmetry and
//! chains up to reversal. Sweeps are split by a fixed-length prefix so the
//! work parallelizes without materializing the grid.

use crate::aplus::{is_dihedral_normal_form, Seq};
use crate::exec::{self, Strategy};
use crate::scheme::CartanScheme2;

pub const CYCLE_LENGTHS: [usize; 4] = [2, 4, 6, 8];
pub const CHAIN_MAX_OBJECTS: usize = 4;
pub const MAX_ENTRY: i64 = 7;

/// Advances `s` as a base-`(max+1)` counter; false once it wraps to zero.
fn advance(s: &mut [i64], max: i64) -> bool {
    for c in s.iter_mut().rev() {
        if *c < max {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

fn prefixes(k: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut p = vec![0; k];
    loop {
        out.push(p.clone());
        if !advance(&mut p, max) {
            return out;
        }
    }
}

/// Applies `f` to one representative of every dihedral class of cycles of
/// length `len` with entries in `0..=max_entry`, keeping the `Some` results.
/// Output order follows the lexicographic order of the representatives.
pub fn sweep_cycles<R, F>(len: usize, max_entry: i64, strategy: Strategy, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&CartanScheme2) -> Option<R> + Sync + Send,
{
    let k = len.min(2);
    exec::flat_map(strategy, &prefixes(k, max_entry), |prefix| {
        let mut out = Vec::new();
        let mut s = prefix.clone();
        s.resize(len, 0);
        loop {
            if is_dihedral_normal_form(&s) {
                let scheme = CartanScheme2::Cycle { char_seq: Seq(s.clone()) };
                out.extend(f(&scheme));
            }
            if !advance(&mut s[k..], max_entry) {
                break;
            }
        }
        out
    })
}

pub fn cycle_representatives(len: usize, max_entry: i64, strategy: Strategy) -> Vec<Seq> {
    sweep_cycles(len, max_entry, strategy, |s| Some(s.sequence().clone()))
}

/// Spines of chains with `1..=max_objects` objects, one per reversal class.
pub fn chain_spines(max_objects: usize, max_entry: i64) -> Vec<Seq> {
    let mut out = Vec::new();
    for len in 2..=max_objects + 1 {
        let mut s = vec![0; len];
        loop {
            let rev: Vec<i64> = s.iter().rev().copied().collect();
            if s <= rev {
                out.push(Seq(s.clone()));
            }
            if !advance(&mut s, max_entry) {
                break;
            }
        }
    }
    out
}

pub fn sweep_chains<R, F>(max_objects: usize, max_entry: i64, strategy: Strategy, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&CartanScheme2) -> Option<R> + Sync + Send,
{
    let spines = chain_spines(max_objects, max_entry);
    exec::flat_map(strategy, &spines, |s| {
        f(&CartanScheme2::Chain { spine: s.clone() }).into_iter().collect()
    })
}
