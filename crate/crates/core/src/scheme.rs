//! Connected rank-two Cartan schemes.
//!
//! A connected rank-two scheme has an object change diagram that is either a
//! cycle or a chain, so two encodings cover everything:
//!
//! * `Cycle { char_seq }`: objects `0..N` on a cycle, edge `k` joins objects
//!   `k` and `k+1 (mod N)`, carries label `k mod 2` and value `char_seq[k]`.
//! * `Chain { spine }`: `N = spine.len() - 1` objects on a path. Edge `k`
//!   (value `spine[k]`, label `k mod 2`) joins objects `k-1` and `k`; edges
//!   `0` and `N` are loops at the two ends (fixed points of a reflection).
//!
//! Every object has exactly one edge of each label. Its Cartan matrix has
//! `c_{l,l'} = -(value of its l-edge)` off the diagonal. The base reference
//! pair for characteristic sequences is label `I` at object `0`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aplus::{dihedral_normal_form, Seq};
use crate::error::{Error, Result};

/// One of the two reflection labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    I,
    J,
}

impl Label {
    pub const BOTH: [Label; 2] = [Label::I, Label::J];

    pub fn index(self) -> usize {
        match self {
            Label::I => 0,
            Label::J => 1,
        }
    }

    pub fn from_index(k: usize) -> Label {
        if k.is_multiple_of(2) {
            Label::I
        } else {
            Label::J
        }
    }

    pub fn other(self) -> Label {
        match self {
            Label::I => Label::J,
            Label::J => Label::I,
        }
    }
}

/// A 2×2 generalized Cartan matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix2(pub [[i64; 2]; 2]);

impl CartanMatrix2 {
    pub fn from_off_diagonal(c12: i64, c21: i64) -> Self {
        CartanMatrix2([[2, c12], [c21, 2]])
    }

    pub fn entry(&self, row: Label, col: Label) -> i64 {
        self.0[row.index()][col.index()]
    }

    /// `c_{l, l'}` with `l'` the other label.
    pub fn off(&self, l: Label) -> i64 {
        self.entry(l, l.other())
    }

    /// (M1): diagonal 2, off-diagonal nonpositive.
    pub fn satisfies_m1(&self) -> bool {
        self.0[0][0] == 2 && self.0[1][1] == 2 && self.0[0][1] <= 0 && self.0[1][0] <= 0
    }

    /// (M2): a zero off-diagonal entry forces its transpose partner to be zero.
    pub fn satisfies_m2(&self) -> bool {
        (self.0[0][1] == 0) == (self.0[1][0] == 0)
    }
}

impl fmt::Display for CartanMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cycle,
    Chain,
}

/// A connected rank-two Cartan scheme in one of its two canonical encodings.
///
/// The variants can hold arbitrary data (so that [`CartanScheme2::validate`]
/// can report what is wrong); the `cycle`/`chain` constructors only accept
/// well-formed input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CartanScheme2 {
    Cycle { char_seq: Seq },
    Chain { spine: Seq },
}

/// Per-object reflections and Cartan matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectTable {
    pub rho: Vec<[usize; 2]>,
    pub cartan: Vec<CartanMatrix2>,
}

impl ObjectTable {
    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn rho(&self, l: Label, a: usize) -> usize {
        self.rho[a][l.index()]
    }
}

fn check_nonnegative(s: &Seq) -> Result<()> {
    match s.iter().position(|&c| c < 0) {
        Some(pos) => Err(Error::NegativeEntry { pos, value: s[pos] }),
        None => Ok(()),
    }
}

impl CartanScheme2 {
    pub fn cycle_from_char_seq(s: impl Into<Seq>) -> Result<Self> {
        let s = s.into();
        if s.is_empty() || s.len() % 2 == 1 {
            return Err(Error::OddCycleLength { len: s.len() });
        }
        check_nonnegative(&s)?;
        Ok(CartanScheme2::Cycle { char_seq: s })
    }

    pub fn chain_from_spine(s: impl Into<Seq>) -> Result<Self> {
        let s = s.into();
        if s.len() < 2 {
            return Err(Error::SequenceTooShort { seq: s, min: 2 });
        }
        check_nonnegative(&s)?;
        Ok(CartanScheme2::Chain { spine: s })
    }

    pub fn kind(&self) -> Kind {
        match self {
            CartanScheme2::Cycle { .. } => Kind::Cycle,
            CartanScheme2::Chain { .. } => Kind::Chain,
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.kind() == Kind::Cycle
    }

    /// The stored sequence (characteristic sequence or spine).
    pub fn sequence(&self) -> &Seq {
        match self {
            CartanScheme2::Cycle { char_seq } => char_seq,
            CartanScheme2::Chain { spine } => spine,
        }
    }

    pub fn num_objects(&self) -> usize {
        match self {
            CartanScheme2::Cycle { char_seq } => char_seq.len(),
            CartanScheme2::Chain { spine } => spine.len().saturating_sub(1),
        }
    }

    pub fn cycle_seq(&self) -> Result<&Seq> {
        match self {
            CartanScheme2::Cycle { char_seq } => Ok(char_seq),
            CartanScheme2::Chain { .. } => Err(Error::ExpectedCycle),
        }
    }

    pub fn chain_spine(&self) -> Result<&Seq> {
        match self {
            CartanScheme2::Chain { spine } => Ok(spine),
            CartanScheme2::Cycle { .. } => Err(Error::ExpectedChain),
        }
    }

    /// Builds the explicit object table. Fails only on malformed shapes (odd
    /// or empty cycles, chains without objects); entry signs are not checked.
    pub fn table(&self) -> Result<ObjectTable> {
        match self {
            CartanScheme2::Cycle { char_seq: t } => {
                let n = t.len();
                if n == 0 || n % 2 == 1 {
                    return Err(Error::OddCycleLength { len: n });
                }
                let mut rho = Vec::with_capacity(n);
                let mut cartan = Vec::with_capacity(n);
                for v in 0..n {
                    let next = (v + 1) % n;
                    let prev = (v + n - 1) % n;
                    // edge v (to next) has label v mod 2, edge v-1 the other
                    let (r, c12, c21) = if v % 2 == 0 {
                        ([next, prev], -t[v], -t[prev])
                    } else {
                        ([prev, next], -t[prev], -t[v])
                    };
                    rho.push(r);
                    cartan.push(CartanMatrix2::from_off_diagonal(c12, c21));
                }
                Ok(ObjectTable { rho, cartan })
            }
            CartanScheme2::Chain { spine: c } => {
                if c.len() < 2 {
                    return Err(Error::SequenceTooShort { seq: c.clone(), min: 2 });
                }
                let n = c.len() - 1;
                let mut rho = Vec::with_capacity(n);
                let mut cartan = Vec::with_capacity(n);
                for m in 0..n {
                    let left = if m == 0 { m } else { m - 1 };
                    let right = if m + 1 == n { m } else { m + 1 };
                    // left edge c[m] has label m mod 2, right edge c[m+1] the other
                    let (r, c12, c21) = if m % 2 == 0 {
                        ([left, right], -c[m], -c[m + 1])
                    } else {
                        ([right, left], -c[m + 1], -c[m])
                    };
                    rho.push(r);
                    cartan.push(CartanMatrix2::from_off_diagonal(c12, c21));
                }
                Ok(ObjectTable { rho, cartan })
            }
        }
    }

    /// Characteristic sequence with respect to the reference pair
    /// `(label, object)`: walk `a, ρ_i(a), ρ_jρ_i(a), …` and read off
    /// `-c_{ij}` at odd steps and `-c_{ji}` at even steps.
    pub fn char_seq(&self, label: Label, object: usize) -> Result<Seq> {
        self.cycle_seq()?;
        let table = self.table()?;
        let n = table.len();
        if object >= n {
            return Err(Error::NoSuchObject { object, objects: n });
        }
        let (i, j) = (label, label.other());
        let mut out = Vec::with_capacity(n);
        let mut a = object;
        for k in 0..n {
            let l = if k % 2 == 0 { i } else { j };
            out.push(-table.cartan[a].off(l));
            a = table.rho(l, a);
        }
        Ok(Seq(out))
    }

    /// `c_k = c_{k + |A|/2}` for the characteristic sequence.
    pub fn is_centrally_symmetric(&self) -> Result<bool> {
        let s = self.cycle_seq()?;
        let h = s.len() / 2;
        Ok(s.len() % 2 == 0 && (0..h).all(|k| s[k] == s[k + h]))
    }

    /// Sum of all negated off-diagonal Cartan entries.
    pub fn q(&self) -> Result<i64> {
        let table = self.table()?;
        Ok(table.cartan.iter().map(|m| -m.0[0][1] - m.0[1][0]).sum())
    }

    /// Largest absolute off-diagonal Cartan entry.
    pub fn max_entry(&self) -> Result<i64> {
        let table = self.table()?;
        Ok(table
            .cartan
            .iter()
            .flat_map(|m| [m.0[0][1].abs(), m.0[1][0].abs()])
            .max()
            .unwrap_or(0))
    }

    pub fn has_zero_entry(&self) -> bool {
        self.sequence().contains(&0)
    }

    /// True when the characteristic data contain both zero and nonzero
    /// entries. No root system can exist then.
    pub fn has_mixed_zeros(&self) -> bool {
        let s = self.sequence();
        s.contains(&0) && s.iter().any(|&c| c != 0)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let table = match self.table() {
            Ok(t) => Some(t),
            Err(e) => {
                violations.push(Violation::Shape(e.to_string()));
                None
            }
        };
        if let Some(table) = &table {
            let n = table.len();
            for (a, m) in table.cartan.iter().enumerate() {
                if !m.satisfies_m1() {
                    violations.push(Violation::M1 { object: a, matrix: *m });
                }
                if !m.satisfies_m2() {
                    violations.push(Violation::M2 { object: a, matrix: *m });
                }
            }
            for l in Label::BOTH {
                for a in 0..n {
                    let b = table.rho(l, a);
                    if b >= n || table.rho(l, b) != a {
                        violations.push(Violation::C1 { label: l, object: a });
                    } else if table.cartan[a].off(l) != table.cartan[b].off(l) {
                        violations.push(Violation::C2 { label: l, object: a });
                    }
                }
            }
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(a) = queue.pop_front() {
                for l in Label::BOTH {
                    let b = table.rho(l, a);
                    if b < n && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                violations.push(Violation::Disconnected);
            }
        }
        ValidationReport {
            kind: self.kind(),
            objects: self.num_objects(),
            mixed_zero: self.has_mixed_zeros(),
            violations,
        }
    }

    /// Equivalence of schemes up to relabelling objects and swapping the two
    /// labels. For cycles this is dihedral equivalence of characteristic
    /// sequences; for chains, equality of spines up to reversal.
    pub fn equivalent(&self, other: &CartanScheme2) -> bool {
        match (self, other) {
            (CartanScheme2::Cycle { char_seq: s }, CartanScheme2::Cycle { char_seq: t }) => {
                s.len() == t.len() && dihedral_normal_form(s) == dihedral_normal_form(t)
            }
            (CartanScheme2::Chain { spine: s }, CartanScheme2::Chain { spine: t }) => {
                s == t || *s == t.reversed()
            }
            _ => false,
        }
    }
}

impl fmt::Display for CartanScheme2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanScheme2::Cycle { char_seq } => write!(f, "cycle {char_seq}"),
            CartanScheme2::Chain { spine } => write!(f, "chain {spine}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Shape(String),
    M1 { object: usize, matrix: CartanMatrix2 },
    M2 { object: usize, matrix: CartanMatrix2 },
    C1 { label: Label, object: usize },
    C2 { label: Label, object: usize },
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "malformed scheme: {s}"),
            Violation::M1 { object, matrix } => write!(
                f,
                "(M1) violated at object {object}: Cartan matrix {matrix} needs diagonal 2 and nonpositive off-diagonal entries"
            ),
            Violation::M2 { object, matrix } => write!(
                f,
                "(M2) violated at object {object}: Cartan matrix {matrix} has exactly one zero off-diagonal entry"
            ),
            Violation::C1 { label, object } => {
                write!(f, "(C1) violated: reflection {label:?} is not an involution at object {object}")
            }
            Violation::C2 { label, object } => write!(
                f,
                "(C2) violated: reflection {label:?} does not preserve its Cartan row at object {object}"
            ),
            Violation::Disconnected => f.write_str("object change diagram is not connected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub kind: Kind,
    pub objects: usize,
    pub violations: Vec<Violation>,
    /// Zero and nonzero off-diagonal entries coexist; such a scheme admits no
    /// root system.
    pub mixed_zero: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Valid, or failing only through (M2) because of mixed zeros. Such input
    /// is still decidable: the answer is "no finite root system".
    pub fn is_decidable(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, Violation::M2 { .. }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(v: &[i64]) -> CartanScheme2 {
        CartanScheme2::cycle_from_char_seq(Seq::from(v)).unwrap()
    }

    fn chain(v: &[i64]) -> CartanScheme2 {
        CartanScheme2::chain_from_spine(Seq::from(v)).unwrap()
    }

    #[test]
    fn cycle_construction() {
        let s = cycle(&[5, 1, 2, 2]);
        assert_eq!(s.num_objects(), 4);
        let t = s.table().unwrap();
        // a_1: (-c_1, -c_0) = (-5, -2); a_2: (-c_1, -c_2) = (-5, -1)
        assert_eq!(t.cartan[0], CartanMatrix2::from_off_diagonal(-5, -2));
        assert_eq!(t.cartan[1], CartanMatrix2::from_off_diagonal(-5, -1));
        assert_eq!(t.cartan[2], CartanMatrix2::from_off_diagonal(-2, -1));
        assert_eq!(t.cartan[3], CartanMatrix2::from_off_diagonal(-2, -2));
        assert_eq!(t.rho(Label::I, 0), 1);
        assert_eq!(t.rho(Label::J, 1), 2);
        assert_eq!(t.rho(Label::J, 0), 3);

        let z = cycle(&[0, 0]);
        assert_eq!(z.num_objects(), 2);
        assert!(z.table().unwrap().cartan.iter().all(|m| m.off(Label::I) == 0 && m.off(Label::J) == 0));

        let a2 = cycle(&[1, 1]);
        assert!(a2
            .table()
            .unwrap()
            .cartan
            .iter()
            .all(|m| *m == CartanMatrix2::from_off_diagonal(-1, -1)));

        assert_eq!(
            CartanScheme2::cycle_from_char_seq(Seq::from([1, 2, 3])),
            Err(Error::OddCycleLength { len: 3 })
        );
        assert!(matches!(
            CartanScheme2::cycle_from_char_seq(Seq::from([1, -2])),
            Err(Error::NegativeEntry { pos: 1, value: -2 })
        ));
    }

    #[test]
    fn chain_construction() {
        let a2 = chain(&[1, 1]);
        let t = a2.table().unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.cartan[0], CartanMatrix2::from_off_diagonal(-1, -1));
        assert_eq!(t.rho[0], [0, 0]);

        let b2 = chain(&[1, 2, 1]);
        assert_eq!(b2.num_objects(), 2);

        let g = chain(&[3, 1, 5]);
        let t = g.table().unwrap();
        assert_eq!(t.cartan[0], CartanMatrix2::from_off_diagonal(-3, -1));
        assert_eq!(t.cartan[1], CartanMatrix2::from_off_diagonal(-5, -1));
        assert_eq!(t.rho[0], [0, 1]);
        assert_eq!(t.rho[1], [1, 0]);
        assert!(g.max_entry().unwrap() == 5);

        assert!(CartanScheme2::chain_from_spine(Seq::from([1])).is_err());
    }

    #[test]
    fn characteristic_sequences_at_reference_pairs() {
        let s = cycle(&[5, 1, 2, 2]);
        assert_eq!(s.char_seq(Label::I, 0).unwrap(), Seq::from([5, 1, 2, 2]));
        assert_eq!(s.char_seq(Label::J, 0).unwrap(), Seq::from([2, 2, 1, 5]));
        let rho_i = s.table().unwrap().rho(Label::I, 0);
        assert_eq!(s.char_seq(Label::I, rho_i).unwrap(), Seq::from([5, 2, 2, 1]));
        assert_eq!(chain(&[1, 1]).char_seq(Label::I, 0), Err(Error::ExpectedCycle));
        assert!(matches!(s.char_seq(Label::I, 9), Err(Error::NoSuchObject { .. })));
    }

    #[test]
    fn reference_pairs_sweep_the_dihedral_orbit() {
        for v in [[5i64, 1, 2, 2, 7, 3], [1, 2, 3, 4, 5, 6], [2, 2, 1, 2, 2, 1]] {
            let s = cycle(&v);
            let n = v.len();
            let mut got: Vec<Seq> = Vec::new();
            for l in Label::BOTH {
                for a in 0..n {
                    got.push(s.char_seq(l, a).unwrap());
                }
            }
            let base = Seq::from(v);
            let mut orbit: Vec<Seq> = (0..n)
                .flat_map(|r| [base.rotated(r), base.reversed().rotated(r)])
                .collect();
            got.sort();
            orbit.sort();
            assert_eq!(got, orbit);
            let cs = s.is_centrally_symmetric().unwrap();
            for g in &got {
                assert_eq!(cycle(g).is_centrally_symmetric().unwrap(), cs);
            }
        }
    }

    #[test]
    fn central_symmetry() {
        assert!(cycle(&[3, 1, 3, 1]).is_centrally_symmetric().unwrap());
        assert!(!cycle(&[5, 1, 2, 2]).is_centrally_symmetric().unwrap());
        assert!(cycle(&[1, 2, 1, 2]).is_centrally_symmetric().unwrap());
        assert_eq!(chain(&[1, 1]).is_centrally_symmetric(), Err(Error::ExpectedCycle));
    }

    #[test]
    fn validation() {
        assert!(cycle(&[1, 1, 1, 1]).validate().is_valid());
        let neg = CartanScheme2::Cycle { char_seq: Seq::from([1, -1, 1, 1]) };
        let r = neg.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::M1 { .. })));
        assert!(!r.is_decidable());
        let mixed = cycle(&[0, 1, 0, 1]);
        let r = mixed.validate();
        assert!(r.mixed_zero);
        assert!(r.violations.iter().all(|v| matches!(v, Violation::M2 { .. })));
        assert!(!r.is_valid());
        assert!(r.is_decidable());
        let odd = CartanScheme2::Cycle { char_seq: Seq::from([1, 1, 1]) };
        assert!(matches!(odd.validate().violations[0], Violation::Shape(_)));
        assert!(chain(&[0, 0, 0]).validate().is_valid());
        assert!(chain(&[3, 1, 5]).validate().is_valid());
    }

    #[test]
    fn generated_schemes_validate() {
        for len in [2usize, 4, 6] {
            for code in 0..4usize.pow(len as u32) {
                let v: Vec<i64> = (0..len).map(|k| ((code / 4usize.pow(k as u32)) % 4) as i64).collect();
                let s = cycle(&v);
                assert_eq!(s.validate().is_valid(), !s.has_mixed_zeros(), "{s}");
                let c = chain(&v[..len.min(5)]);
                assert_eq!(c.validate().is_valid(), !c.has_mixed_zeros(), "{c}");
            }
        }
    }

    #[test]
    fn equivalence() {
        assert!(cycle(&[5, 1, 2, 2]).equivalent(&cycle(&[2, 2, 1, 5])));
        assert!(cycle(&[1, 2, 1, 2]).equivalent(&cycle(&[2, 1, 2, 1])));
        assert!(!cycle(&[1, 1, 1, 1]).equivalent(&chain(&[1, 1])));
        assert!(chain(&[3, 1, 5]).equivalent(&chain(&[5, 1, 3])));
        assert!(!chain(&[1, 2, 1]).equivalent(&chain(&[2, 1, 2])));
        assert!(!cycle(&[5, 1, 2, 2]).equivalent(&cycle(&[5, 1, 2, 3])));
    }

    #[test]
    fn q_values() {
        assert_eq!(cycle(&[3, 1, 3, 1]).q().unwrap(), 16);
        assert_eq!(cycle(&[1, 1]).q().unwrap(), 4);
        assert_eq!(cycle(&[1, 2]).q().unwrap(), 6);
        assert_eq!(chain(&[1, 1]).q().unwrap(), 2);
    }

    #[test]
    fn serialization_shape() {
        let s = cycle(&[5, 1, 2, 2]);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"kind":"cycle","char_seq":[5,1,2,2]}"#
        );
        let c: CartanScheme2 = serde_json::from_str(r#"{"kind":"chain","spine":[1,1]}"#).unwrap();
        assert_eq!(c, chain(&[1, 1]));
    }
}
