//! Finite groups given by multiplication tables (order at most 64), their
//! subgroups as bitmasks, and built-in examples.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

pub const MAX_ORDER: usize = 64;

/// A subgroup of some ambient group, as a bitmask over element indices.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup(u64);

impl Subgroup {
    pub fn from_mask(mask: u64) -> Self {
        Subgroup(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn order(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, g: usize) -> bool {
        self.0 >> g & 1 == 1
    }

    pub fn is_subset_of(self, other: Subgroup) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: Subgroup) -> Subgroup {
        Subgroup(self.0 & other.0)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..64).filter(move |i| m >> i & 1 == 1)
    }

    pub fn members(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Lexicographic order on sorted member lists.
    pub fn lex_cmp(self, other: Subgroup) -> std::cmp::Ordering {
        self.elements().cmp(other.elements())
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members())
    }
}

/// A finite group given by its multiplication table; element 0 is the identity.
pub struct Group {
    label: String,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    names: Vec<String>,
    subgroup_names: Vec<(Subgroup, String)>,
    subgroups: Vec<Subgroup>,
    lattice: SubgroupLattice,
}

/// On-disk group description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupFile {
    pub label: String,
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    /// Preferred labels for particular subgroups, given by their element lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroup_names: Vec<(Vec<usize>, String)>,
}

impl Group {
    pub fn from_table(label: &str, mult: Vec<Vec<usize>>) -> Result<Arc<Group>> {
        Self::build(label, mult, None, Vec::new())
    }

    fn build(
        label: &str,
        mult: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
        subgroup_names: Vec<(Vec<usize>, String)>,
    ) -> Result<Arc<Group>> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::GroupAxiom("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::GroupAxiom(format!("order {n} exceeds the supported maximum {MAX_ORDER}")));
        }
        for (a, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::GroupAxiom(format!("row {a} has length {} instead of {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::GroupAxiom(format!("row {a} contains out-of-range entry {bad}")));
            }
        }
        for a in 0..n {
            if mult[0][a] != a || mult[a][0] != a {
                return Err(Error::GroupAxiom(format!("0 is not a two-sided identity (fails at element {a})")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::GroupAxiom(format!("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| mult[a][b] == 0 && mult[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(Error::GroupAxiom(format!("element {a} has no inverse"))),
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(_) => return Err(Error::GroupAxiom("element name list has the wrong length".into())),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let subgroup_names =
            subgroup_names.into_iter().map(|(m, s)| (Subgroup(m.iter().fold(0u64, |acc, &e| acc | 1 << e)), s)).collect();
        let mut g = Group {
            label: label.to_string(),
            mult,
            inv,
            names,
            subgroup_names,
            subgroups: Vec::new(),
            lattice: SubgroupLattice::placeholder(),
        };
        g.subgroups = g.enumerate_subgroups();
        g.lattice = SubgroupLattice::new(&g, g.whole());
        Ok(Arc::new(g))
    }

    /// Built-in groups: `trivial` (or `e`, `C1`), `C<n>`, `C2xC2` (or `V4`, `K4`), `D8`, `Q8`.
    pub fn builtin(name: &str) -> Result<Arc<Group>> {
        match name {
            "trivial" | "e" | "C1" => Self::build("e", vec![vec![0]], Some(vec!["1".into()]), Vec::new()),
            "C2xC2" | "V4" | "K4" | "C2^2" => {
                let mult = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
                let names = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
                Self::build("C2xC2", mult, Some(names), Vec::new())
            }
            "D8" => Ok(dihedral8()?),
            "Q8" => Ok(quaternion8()?),
            _ => {
                let n: usize = name
                    .strip_prefix('C')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
                if n == 0 || n > MAX_ORDER {
                    return Err(Error::UnknownGroup(name.to_string()));
                }
                Ok(cyclic(n)?)
            }
        }
    }

    pub fn from_file(file: &GroupFile) -> Result<Arc<Group>> {
        if file.mult.len() != file.order {
            return Err(Error::GroupFile(format!("order {} but table has {} rows", file.order, file.mult.len())));
        }
        Self::build(&file.label, file.mult.clone(), file.names.clone(), file.subgroup_names.clone())
    }

    pub fn parse_json(text: &str) -> Result<Arc<Group>> {
        let f: GroupFile = serde_json::from_str(text).map_err(|e| Error::GroupFile(e.to_string()))?;
        Self::from_file(&f)
    }

    pub fn to_file(&self) -> GroupFile {
        let default_names = self.names.iter().enumerate().all(|(i, s)| *s == i.to_string());
        GroupFile {
            label: self.label.clone(),
            order: self.order(),
            mult: self.mult.clone(),
            names: (!default_names).then(|| self.names.clone()),
            subgroup_names: self.subgroup_names.iter().map(|(s, n)| (s.members(), n.clone())).collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name).or_else(|| name.parse().ok().filter(|&i| i < self.order()))
    }

    pub fn whole(&self) -> Subgroup {
        let n = self.order();
        Subgroup(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup(1)
    }

    /// `g S g^{-1}`
    pub fn conjugate(&self, g: usize, s: Subgroup) -> Subgroup {
        let gi = self.inv(g);
        Subgroup(s.elements().fold(0, |m, x| m | 1 << self.mul(self.mul(g, x), gi)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing the elements of `mask`.
    pub fn generate(&self, mask: u64) -> Subgroup {
        let mut cur = mask | 1;
        let mut frontier: Vec<usize> = Subgroup(cur).members();
        let gens = Subgroup(mask).members();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if cur >> y & 1 == 0 {
                    cur |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        Subgroup(cur)
    }

    pub fn is_subgroup(&self, s: Subgroup) -> bool {
        s.contains(0) && s.elements().all(|a| s.elements().all(|b| s.contains(self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, s: Subgroup) -> bool {
        (0..self.order()).all(|g| self.conjugate(g, s) == s)
    }

    pub fn normalizer(&self, within: Subgroup, s: Subgroup) -> Subgroup {
        Subgroup(within.elements().filter(|&g| self.conjugate(g, s) == s).fold(0, |m, g| m | 1 << g))
    }

    fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        use std::collections::BTreeSet;
        let cyclic: BTreeSet<Subgroup> = (0..self.order()).map(|g| self.generate(1 << g)).collect();
        let mut all: BTreeSet<Subgroup> = cyclic.clone();
        let mut frontier: Vec<Subgroup> = cyclic.iter().copied().collect();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.is_subset_of(h) {
                    continue;
                }
                let j = self.generate(h.mask() | c.mask());
                if all.insert(j) {
                    frontier.push(j);
                }
            }
        }
        let mut v: Vec<Subgroup> = all.into_iter().collect();
        v.sort_by(|a, b| a.order().cmp(&b.order()).then(a.lex_cmp(*b)));
        v
    }

    /// All subgroups, sorted by order then lexicographically.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub(crate) fn preferred_name(&self, s: Subgroup) -> Option<&str> {
        self.subgroup_names.iter().find(|(m, _)| *m == s).map(|(_, n)| n.as_str())
    }

    /// Isomorphism-type name used for default labels ("C4", "V4", "Q8", ...).
    pub fn type_name(&self, s: Subgroup) -> String {
        let n = s.order();
        if n == 1 {
            return "e".into();
        }
        let orders: Vec<usize> = s.elements().map(|g| self.element_order(g)).collect();
        if orders.contains(&n) {
            return format!("C{n}");
        }
        let abelian = s.elements().all(|a| s.elements().all(|b| self.mul(a, b) == self.mul(b, a)));
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        match (n, abelian, involutions) {
            (4, _, _) => "V4".into(),
            (8, false, 1) => "Q8".into(),
            (8, false, _) => "D8".into(),
            (8, true, 7) => "C2^3".into(),
            (8, true, _) => "C2xC4".into(),
            _ => format!("H{n}"),
        }
    }

    /// The order-2 subgroup `t = [C2/e]` refers to: the unique subgroup of
    /// order 2 when that subgroup is normal and there is no other.
    pub fn distinguished_c2(&self) -> Option<Subgroup> {
        let twos: Vec<Subgroup> = self.subgroups.iter().copied().filter(|s| s.order() == 2).collect();
        (twos.len() == 1).then(|| twos[0])
    }

    /// The group structure on a subgroup, re-indexed so its identity is 0.
    pub fn subgroup_as_group(self: &Arc<Self>, s: Subgroup) -> Result<Embedding> {
        let elems = s.members();
        let pos = |x: usize| elems.iter().position(|&e| e == x).expect("closed under multiplication");
        let mult = elems.iter().map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        let names = elems.iter().map(|&a| self.names[a].clone()).collect();
        let sub_names = self
            .subgroup_names
            .iter()
            .filter(|(m, _)| m.is_subset_of(s))
            .map(|(m, n)| (m.elements().map(pos).collect(), n.clone()))
            .collect();
        let label = self.lattice.label_of(s).to_string();
        let group = Self::build(&label, mult, Some(names), sub_names)?;
        Ok(Embedding { group, parent: Arc::clone(self), image: elems })
    }

    /// `G/N` for a normal subgroup `N`; cosets are numbered by their smallest element.
    pub fn quotient(self: &Arc<Self>, n: Subgroup) -> Result<Quotient> {
        if !self.is_subgroup(n) || !self.is_normal(n) {
            return Err(Error::NotNormal(format!("{n:?}")));
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for x in n.elements() {
                coset_of[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let mult = reps.iter().map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect()).collect();
        let names = reps.iter().map(|&a| self.names[a].clone()).collect();
        let label = format!("{}/{}", self.label, self.lattice.label_of(n));
        let group = Self::build(&label, mult, Some(names), Vec::new())?;
        Ok(Quotient { group, parent: Arc::clone(self), normal: n, coset_of, reps })
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.label, self.order())
    }
}

/// A subgroup viewed as a group in its own right.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub group: Arc<Group>,
    pub parent: Arc<Group>,
    /// `image[i]` is the parent element of element `i`.
    pub image: Vec<usize>,
}

impl Embedding {
    pub fn map_subgroup(&self, s: Subgroup) -> Subgroup {
        Subgroup(s.elements().fold(0, |m, e| m | 1 << self.image[e]))
    }
}

/// `G/N` with the projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<Group>,
    pub parent: Arc<Group>,
    pub normal: Subgroup,
    pub coset_of: Vec<usize>,
    pub reps: Vec<usize>,
}

impl Quotient {
    pub fn image(&self, s: Subgroup) -> Subgroup {
        Subgroup(s.elements().fold(0, |m, e| m | 1 << self.coset_of[e]))
    }

    pub fn preimage(&self, s: Subgroup) -> Subgroup {
        Subgroup((0..self.parent.order()).filter(|&g| s.contains(self.coset_of[g])).fold(0, |m, g| m | 1 << g))
    }
}

fn cyclic(n: usize) -> Result<Arc<Group>> {
    let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    Group::build(&format!("C{n}"), mult, Some(names), Vec::new())
}

/// `r^a s^b` has index `a + 4b`.
fn dihedral8() -> Result<Arc<Group>> {
    let el = |a: usize, b: usize| a % 4 + 4 * (b % 2);
    let mult = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (a, b, c, d) = (x % 4, x / 4, y % 4, y / 4);
                    let c = if b == 1 { (4 - c) % 4 } else { c };
                    el(a + c, b + d)
                })
                .collect()
        })
        .collect();
    let names = ["1", "r", "r^2", "r^3", "s", "rs", "r^2s", "r^3s"].iter().map(|s| s.to_string()).collect();
    Group::build("D8", mult, Some(names), Vec::new())
}

/// Elements `1, -1, i, -i, j, -j, k, -k` at indices 0..8.
fn quaternion8() -> Result<Arc<Group>> {
    // unit products: (sign, unit) with units 1, i, j, k = 0..4
    let unit = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let mult = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (neg, u) = unit(x / 2, y / 2);
                    let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                    2 * u + sign as usize
                })
                .collect()
        })
        .collect();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    let subs = vec![
        (vec![0, 1], "C2".to_string()),
        (vec![0, 1, 2, 3], "I".to_string()),
        (vec![0, 1, 4, 5], "J".to_string()),
        (vec![0, 1, 6, 7], "K".to_string()),
    ];
    Group::build("Q8", mult, Some(names), subs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_have_expected_orders() {
        for (name, n) in [("trivial", 1), ("C2", 2), ("C4", 4), ("C8", 8), ("C2xC2", 4), ("D8", 8), ("Q8", 8)] {
            assert_eq!(Group::builtin(name).unwrap().order(), n, "{name}");
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = Group::builtin("Q8").unwrap();
        let (i, j, k, m1) = (2, 4, 6, 1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), 7);
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(j, k), i);
        assert_eq!(q.element_name(7), "-k");
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(Group::builtin("Q8").unwrap().subgroups().len(), 6);
        assert_eq!(Group::builtin("C4").unwrap().subgroups().len(), 3);
        assert_eq!(Group::builtin("D8").unwrap().subgroups().len(), 10);
        assert_eq!(Group::builtin("C2xC2").unwrap().subgroups().len(), 5);
    }

    #[test]
    fn q8_subgroups_all_normal() {
        let q = Group::builtin("Q8").unwrap();
        assert!(q.subgroups().iter().all(|&s| q.is_normal(s)));
    }

    #[test]
    fn non_associative_table_rejected() {
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = Group::from_table("loop", t).unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }

    #[test]
    fn six_by_six_non_associative_rejected() {
        let mut t: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
        t[1][1] = 3;
        t[1][2] = 2;
        assert!(matches!(Group::from_table("bad", t), Err(Error::GroupAxiom(_))));
    }

    #[test]
    fn missing_inverse_rejected() {
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]];
        assert!(Group::from_table("bad", t).is_err());
    }

    #[test]
    fn q8_mod_center_is_klein_table() {
        let q = Group::builtin("Q8").unwrap();
        let quo = q.quotient(Subgroup::from_mask(0b11)).unwrap();
        let v4 = Group::builtin("C2xC2").unwrap();
        assert_eq!(quo.group.table(), v4.table());
    }

    #[test]
    fn group_file_round_trip() {
        let g = Group::builtin("D8").unwrap();
        let text = serde_json::to_string(&g.to_file()).unwrap();
        let h = Group::parse_json(&text).unwrap();
        assert_eq!(h.table(), g.table());
    }
}
