//! Root systems over ℤ², their axioms, and the explicit construction from an
//! `A+` sequence.
//!
//! Roots are coordinate pairs in the basis `α_1, α_2`; a root is positive when
//! both coordinates are nonnegative.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aplus::{is_in_aplus, Seq};
use crate::error::{Error, Result};
use crate::mat2cf::Mat2;
use crate::scheme::{CartanMatrix2, CartanScheme2, Label};

pub type Root = [i64; 2];

pub const ALPHA: [Root; 2] = [[1, 0], [0, 1]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem2 {
    pub scheme: CartanScheme2,
    pub roots: Vec<BTreeSet<Root>>,
}

fn is_positive(r: &Root) -> bool {
    r[0] >= 0 && r[1] >= 0
}

impl RootSystem2 {
    pub fn positive_roots(&self, a: usize) -> Vec<Root> {
        self.roots[a].iter().copied().filter(is_positive).collect()
    }
}

/// `σ_l^a`: `α_l ↦ -α_l`, `α_{l'} ↦ α_{l'} - c_{l,l'} α_l`.
pub fn reflection(cartan: &CartanMatrix2, l: Label) -> Mat2 {
    match l {
        Label::I => Mat2::new(-1, -cartan.off(Label::I), 0, 1),
        Label::J => Mat2::new(1, 0, -cartan.off(Label::J), -1),
    }
}

/// The simply connected root system attached to `d ∈ A+`: a cycle on `2n`
/// objects with characteristic sequence `d²`. Even objects carry
/// `±η(c_k)⋯η(c_{k+l-1})·α_1`, odd objects the same vectors twisted by `τ`,
/// for `0 ≤ l < n`.
pub fn build_root_system(d: &Seq) -> Result<RootSystem2> {
    if !is_in_aplus(d)? {
        return Err(Error::NotInAplus { seq: d.clone() });
    }
    let n = d.len();
    let t = d.repeat(2);
    let mut roots = Vec::with_capacity(2 * n);
    for v in 0..2 * n {
        let mut set = BTreeSet::new();
        let mut prod = if v % 2 == 0 { Mat2::IDENTITY } else { Mat2::TAU };
        for l in 0..n {
            if l > 0 {
                prod = prod.checked_mul(&Mat2::eta(t[(v + l - 1) % (2 * n)]))?;
            }
            let r = prod.apply(ALPHA[0])?;
            set.insert(r);
            set.insert([-r[0], -r[1]]);
        }
        roots.push(set);
    }
    Ok(RootSystem2 { scheme: CartanScheme2::Cycle { char_seq: t }, roots })
}

/// `{±α_1, ±α_2}` at every object.
pub fn reducible_root_system(scheme: &CartanScheme2) -> RootSystem2 {
    let set: BTreeSet<Root> = [[1, 0], [0, 1], [-1, 0], [0, -1]].into_iter().collect();
    RootSystem2 { scheme: scheme.clone(), roots: vec![set; scheme.num_objects()] }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    Shape(String),
    R1 { object: usize },
    R2 { object: usize, label: Label },
    R3 { object: usize, label: Label },
    R4 { object: usize, m: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Shape(s) => write!(f, "malformed root system: {s}"),
            AxiomViolation::R1 { object } => {
                write!(f, "(R1) violated at object {object}: roots are not R+ ∪ -R+")
            }
            AxiomViolation::R2 { object, label } => write!(
                f,
                "(R2) violated at object {object}: multiples of α_{} are not exactly ±α_{}",
                label.index() + 1,
                label.index() + 1
            ),
            AxiomViolation::R3 { object, label } => write!(
                f,
                "(R3) violated: σ_{label:?} at object {object} does not map its roots onto the neighbour's"
            ),
            AxiomViolation::R4 { object, m } => write!(
                f,
                "(R4) violated at object {object}: (ρ_i ρ_j)^{m} does not fix the object"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_axioms(rs: &RootSystem2) -> AxiomReport {
    let mut violations = Vec::new();
    let table = match rs.scheme.table() {
        Ok(t) if t.len() == rs.roots.len() => t,
        Ok(t) => {
            violations.push(AxiomViolation::Shape(format!(
                "{} root sets for {} objects",
                rs.roots.len(),
                t.len()
            )));
            return AxiomReport { violations };
        }
        Err(e) => {
            violations.push(AxiomViolation::Shape(e.to_string()));
            return AxiomReport { violations };
        }
    };
    for (a, set) in rs.roots.iter().enumerate() {
        let r1 = set.iter().all(|r| {
            let neg = [-r[0], -r[1]];
            *r != [0, 0] && (is_positive(r) || is_positive(&neg)) && set.contains(&neg)
        });
        if !r1 {
            violations.push(AxiomViolation::R1 { object: a });
        }
        for l in Label::BOTH {
            let on_axis: Vec<&Root> = set.iter().filter(|r| r[1 - l.index()] == 0).collect();
            let mut want = [ALPHA[l.index()], ALPHA[l.index()]];
            want[1][l.index()] = -1;
            want.sort();
            if on_axis.len() != 2 || *on_axis[0] != want[0] || *on_axis[1] != want[1] {
                violations.push(AxiomViolation::R2 { object: a, label: l });
            }
        }
    }
    for a in 0..table.len() {
        for l in Label::BOTH {
            let sigma = reflection(&table.cartan[a], l);
            let image: Option<BTreeSet<Root>> =
                rs.roots[a].iter().map(|r| sigma.apply(*r).ok()).collect();
            if image.as_ref() != Some(&rs.roots[table.rho(l, a)]) {
                violations.push(AxiomViolation::R3 { object: a, label: l });
            }
        }
    }
    for a in 0..table.len() {
        let m = rs.roots[a].iter().filter(|r| is_positive(r)).count();
        let mut b = a;
        for _ in 0..m {
            b = table.rho(Label::I, table.rho(Label::J, b));
        }
        if m == 0 || b != a {
            violations.push(AxiomViolation::R4 { object: a, m });
        }
    }
    AxiomReport { violations }
}

/// The common number of positive roots.
pub fn positive_root_count(rs: &RootSystem2) -> Result<usize> {
    let mut counts = rs.roots.iter().map(|s| s.iter().filter(|r| is_positive(r)).count());
    let first = counts.next().unwrap_or(0);
    if counts.all(|c| c == first) {
        Ok(first)
    } else {
        Err(Error::NonUniformRootCount)
    }
}

/// Reads the `A+` sequence off the alternating walk from `(label, object)`:
/// `a_1 = a`, `a_{2r} = ρ_i(a_{2r-1})`, `a_{2r+1} = ρ_j(a_{2r})`, with
/// `c_{2r-1} = -c_{ij}` at `a_{2r-1}` and `c_{2r} = -c_{ji}` at `a_{2r}`.
pub fn phi(rs: &RootSystem2, label: Label, object: usize) -> Result<Seq> {
    let table = rs.scheme.table()?;
    if object >= table.len() {
        return Err(Error::NoSuchObject { object, objects: table.len() });
    }
    let n = rs.roots[object].iter().filter(|r| is_positive(r)).count();
    let (i, j) = (label, label.other());
    let mut c = Vec::with_capacity(2 * n);
    let mut a = object;
    for k in 0..2 * n {
        let l = if k % 2 == 0 { i } else { j };
        c.push(-table.cartan[a].off(l));
        a = table.rho(l, a);
    }
    if c.contains(&0) {
        return Err(Error::Reducible);
    }
    if c[..n] != c[n..] {
        return Err(Error::Internal(format!(
            "walk from object {object} is not n-periodic: {}",
            Seq(c)
        )));
    }
    c.truncate(n);
    let s = Seq(c);
    if !is_in_aplus(&s)? {
        return Err(Error::NotInAplus { seq: s });
    }
    Ok(s)
}
