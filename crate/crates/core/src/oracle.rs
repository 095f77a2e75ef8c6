//! Brute-force checkers that share no code with the contraction procedure in
//! [`crate::decide`]. They only multiply η-matrices, iterate matrix powers,
//! filter compositions by the `A+` definition, and walk the Weyl groupoid.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::aplus::{is_dihedral_normal_form, is_in_a, is_in_aplus, Seq};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::mat2cf::{Mat2, OrderResult};
use crate::roots::{reducible_root_system, verify_axioms};
use crate::scheme::{CartanScheme2, Label};

/// Order by multiplying up to `cap - 1` powers; `Infinite` if the identity
/// is not reached (or the entries overflow, which finite-order matrices
/// never do).
pub fn matrix_order_by_powers(m: &Mat2, cap: u32) -> OrderResult {
    let mut p = *m;
    for k in 1..cap {
        if p.is_identity() {
            return OrderResult::Finite(k);
        }
        p = match p.checked_mul(m) {
            Ok(q) => q,
            Err(_) => return OrderResult::Infinite,
        };
    }
    OrderResult::Infinite
}

fn eta_chain(mut seq: impl Iterator<Item = i64>) -> Result<Mat2> {
    seq.try_fold(Mat2::IDENTITY, |acc, c| acc.checked_mul(&Mat2::eta(c)))
}

/// Irreducible cycle test: the loop matrix has finite order `h`, the `h`-fold
/// repetition is centrally symmetric, and its half lies in `A+`.
fn cycle_admits_finite(t: &Seq) -> Result<bool> {
    let l = eta_chain(t.iter().rev().copied())?;
    let h = match matrix_order_by_powers(&l, 13) {
        OrderResult::Finite(h) => h as usize,
        OrderResult::Infinite => return Ok(false),
    };
    let big = t.repeat(h);
    let half = big.len() / 2;
    if big[..half] != big[half..] {
        return Ok(false);
    }
    is_in_aplus(&big[..half])
}

pub fn decide_bruteforce(scheme: &CartanScheme2) -> Result<bool> {
    let report = scheme.validate();
    if !report.is_decidable() {
        return Err(Error::Invalid(format!("{scheme} fails validation")));
    }
    let seq = scheme.sequence();
    if seq.contains(&0) {
        if seq.iter().any(|&c| c != 0) {
            return Ok(false);
        }
        return Ok(verify_axioms(&reducible_root_system(scheme)).is_ok());
    }
    match scheme {
        CartanScheme2::Cycle { char_seq } => cycle_admits_finite(char_seq),
        CartanScheme2::Chain { spine } => {
            let mut t = spine.0.clone();
            t.extend(spine[1..spine.len() - 1].iter().rev());
            cycle_admits_finite(&Seq(t))
        }
    }
}

/// Calls `f` on every composition of `sum` into `n` parts, each `>= min_part`,
/// whose proper prefixes pass `keep`.
fn compositions<F, K>(n: usize, sum: i64, min_part: i64, prefix: &mut Vec<i64>, keep: &K, f: &mut F)
where
    F: FnMut(&[i64]),
    K: Fn(&[i64]) -> bool,
{
    let left = n - prefix.len();
    if left == 0 {
        if sum == 0 {
            f(prefix);
        }
        return;
    }
    if left == 1 {
        if sum >= min_part {
            prefix.push(sum);
            f(prefix);
            prefix.pop();
        }
        return;
    }
    let max = sum - min_part * (left as i64 - 1);
    for c in min_part..=max {
        prefix.push(c);
        if keep(prefix) {
            compositions(n, sum - c, min_part, prefix, keep, f);
        }
        prefix.pop();
    }
}

fn prefix_column_nonnegative(prefix: &[i64]) -> bool {
    match eta_chain(prefix.iter().copied()) {
        Ok(m) => m.a >= 0 && m.c >= 0,
        Err(_) => true,
    }
}

pub const BRUTEFORCE_MAX_LEN: usize = 12;

/// `A+` sequences of length `n` as sorted dihedral normal forms, found by
/// filtering the compositions of `3(n-2)` into `n` positive parts.
pub fn enumerate_aplus_bruteforce(n: usize) -> Result<Vec<Seq>> {
    enumerate_aplus_bruteforce_with(n, Strategy::default())
}

pub fn enumerate_aplus_bruteforce_with(n: usize, strategy: Strategy) -> Result<Vec<Seq>> {
    if !(3..=BRUTEFORCE_MAX_LEN).contains(&n) {
        return Err(Error::LengthOutOfRange { n, min: 3, max: BRUTEFORCE_MAX_LEN });
    }
    let sum = 3 * (n as i64 - 2);
    let firsts: Vec<i64> = (1..=sum - (n as i64 - 1)).collect();
    let found = exec::flat_map(strategy, &firsts, |&c1| {
        let mut out = Vec::new();
        let mut prefix = vec![c1];
        let keep = |p: &[i64]| p.len() == n || prefix_column_nonnegative(p);
        compositions(n, sum - c1, 1, &mut prefix, &keep, &mut |s| {
            if is_dihedral_normal_form(s) && is_in_aplus(s).unwrap_or(false) {
                out.push(Seq(s.to_vec()));
            }
        });
        out
    });
    let mut found = found;
    found.sort();
    found.dedup();
    Ok(found)
}

/// First sequence of length `n` with all entries `>= 2` and entry sum
/// `3(n-2)` that lies in `A`.
pub fn all_ge_two_in_a_with_sum(n: usize) -> Result<Option<Seq>> {
    if n < 2 || 3 * (n as i64 - 2) < 2 * n as i64 {
        return Ok(None);
    }
    let mut hit = None;
    let mut err = None;
    compositions(n, 3 * (n as i64 - 2), 2, &mut Vec::new(), &|_| true, &mut |s| {
        if hit.is_none() {
            match is_in_a(s) {
                Ok(true) => hit = Some(Seq(s.to_vec())),
                Ok(false) => {}
                Err(e) => err = Some(e),
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(hit),
    }
}

/// First sequence of length `n` with entries in `2..=max_entry` that lies in
/// `A`, searching every such sequence.
pub fn all_ge_two_in_a_bounded(n: usize, max_entry: i64) -> Result<Option<Seq>> {
    let mut s = vec![2i64; n];
    loop {
        if is_in_a(&s)? {
            return Ok(Some(Seq(s)));
        }
        let mut k = 0;
        while k < n && s[k] == max_entry {
            s[k] = 2;
            k += 1;
        }
        if k == n {
            return Ok(None);
        }
        s[k] += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfsReport {
    /// Distinct `(object, matrix)` pairs reached from the base object.
    pub states: usize,
    pub end_size: usize,
    pub end_even: usize,
    pub end_odd: usize,
    /// No matrix was reached at two different objects.
    pub c3_holds: bool,
    pub budget_exceeded: bool,
    /// The state count is exact. Once entries leave `i64` the search
    /// compares residues modulo two primes: distinct residues prove distinct
    /// matrices, equal ones prove nothing and clear this flag.
    pub exact: bool,
    /// `c3_holds` rests on exact matrices only. False when a failure was
    /// seen through equal residues alone.
    pub c3_exact: bool,
}

pub fn default_cap(objects: usize) -> usize {
    24 * objects + 1
}

const PRIMES: [u64; 2] = [(1 << 61) - 1, 1_000_000_007];

type Residues = [[u64; 4]; 2];

fn residues(m: &Mat2) -> Residues {
    let e = [m.a, m.b, m.c, m.d];
    PRIMES.map(|p| e.map(|x| x.rem_euclid(p as i64) as u64))
}

fn mul_mod(x: &[u64; 4], y: &[u64; 4], p: u64) -> [u64; 4] {
    let f = |a: u64, b: u64, c: u64, d: u64| {
        ((a as u128 * b as u128 + c as u128 * d as u128) % p as u128) as u64
    };
    [
        f(x[0], y[0], x[1], y[2]),
        f(x[0], y[1], x[1], y[3]),
        f(x[2], y[0], x[3], y[2]),
        f(x[2], y[1], x[3], y[3]),
    ]
}

fn sigma(table: &crate::scheme::ObjectTable, a: usize, l: Label) -> Mat2 {
    let m = table.cartan[a].0;
    match l {
        Label::I => Mat2::new(-1, -m[0][1], 0, 1),
        Label::J => Mat2::new(1, 0, -m[1][0], -1),
    }
}

#[derive(Clone, Copy)]
struct State {
    object: usize,
    key: Residues,
    exact: Option<Mat2>,
    /// Label of the reflection that produced this state.
    via: Option<Label>,
}

/// Breadth-first search of `Hom(a_0, ·)` in the Weyl groupoid, generated by
/// the reflections `σ_l^b : b → ρ_l(b)`. Stops once more than `cap` states
/// have been seen.
pub fn groupoid_bfs(scheme: &CartanScheme2, cap: usize) -> Result<BfsReport> {
    let table = scheme.table()?;
    let id = residues(&Mat2::IDENTITY);
    let start = State { object: 0, key: id, exact: Some(Mat2::IDENTITY), via: None };
    // value: whether the stored matrix is known exactly
    let mut seen: HashMap<(usize, Residues), bool> = HashMap::from([((0, id), true)]);
    let mut owner: HashMap<Residues, (usize, bool)> = HashMap::from([(id, (0, true))]);
    let mut queue = VecDeque::from([start]);
    let mut c3_holds = true;
    let mut exact = true;
    let mut c3_exact = true;
    let mut budget_exceeded = false;
    'search: while let Some(st) = queue.pop_front() {
        for l in Label::BOTH {
            let s = sigma(&table, st.object, l);
            let next_exact = st.exact.and_then(|m| s.checked_mul(&m).ok());
            if next_exact.is_none() && st.via == Some(l) {
                // σ_l σ_l = 1 leads back to the parent, which is already seen
                continue;
            }
            let sk = residues(&s);
            let key = [0, 1].map(|i| mul_mod(&sk[i], &st.key[i], PRIMES[i]));
            let object = table.rho(l, st.object);
            let known = next_exact.is_some();
            if let Some(&was_known) = seen.get(&(object, key)) {
                if !(known && was_known) {
                    exact = false;
                }
                continue;
            }
            seen.insert((object, key), known);
            match owner.get(&key) {
                Some(&(o, was_known)) if o != object => {
                    c3_holds = false;
                    if !(known && was_known) {
                        c3_exact = false;
                    }
                }
                Some(_) => {}
                None => {
                    owner.insert(key, (object, known));
                }
            }
            if seen.len() > cap {
                budget_exceeded = true;
                break 'search;
            }
            queue.push_back(State { object, key, exact: next_exact, via: Some(l) });
        }
    }
    let mut end_even = 0;
    let mut end_odd = 0;
    for (a, key) in seen.keys() {
        if *a == 0 {
            // det is ±1 and ±1 differ modulo any odd prime
            let [a, b, c, d] = key[1];
            let p = PRIMES[1] as u128;
            let det = (a as u128 * d as u128 + (p - 1) * ((b as u128 * c as u128) % p)) % p;
            if det == 1 {
                end_even += 1;
            } else {
                end_odd += 1;
            }
        }
    }
    Ok(BfsReport {
        states: seen.len(),
        end_size: end_even + end_odd,
        end_even,
        end_odd,
        c3_holds,
        budget_exceeded,
        exact,
        c3_exact,
    })
}
