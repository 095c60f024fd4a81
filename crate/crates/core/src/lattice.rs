//! Subgroups up to conjugacy, double cosets and tables of marks.

use std::collections::HashMap;

use crate::group::{Group, Subgroup};

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Lexicographically smallest member.
    pub rep: Subgroup,
    pub members: Vec<Subgroup>,
    pub label: String,
    pub normal: bool,
    pub normalizer: Subgroup,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.rep.order()
    }

    /// `|N(H)/H|`
    pub fn weyl_order(&self) -> usize {
        self.normalizer.order() / self.rep.order()
    }
}

/// Conjugacy classes of subgroups of `within`, under conjugation by `within`.
///
/// Classes are ordered by increasing order, ties broken lexicographically on
/// the representatives' member lists, so class 0 is trivial and the last class
/// is `within` itself.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    within: Subgroup,
    classes: Vec<SubgroupClass>,
    class_of: HashMap<Subgroup, usize>,
    to_rep: HashMap<Subgroup, usize>,
    subconj: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    pub(crate) fn placeholder() -> Self {
        SubgroupLattice {
            within: Subgroup::from_mask(1),
            classes: Vec::new(),
            class_of: HashMap::new(),
            to_rep: HashMap::new(),
            subconj: Vec::new(),
        }
    }

    pub fn new(g: &Group, within: Subgroup) -> Self {
        let subs: Vec<Subgroup> = g.subgroups().iter().copied().filter(|s| s.is_subset_of(within)).collect();
        let mut class_of = HashMap::new();
        let mut to_rep = HashMap::new();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        // subgroups are sorted by (order, lex), so the first unseen one is its class's smallest member
        for &s in &subs {
            if class_of.contains_key(&s) {
                continue;
            }
            let idx = classes.len();
            let mut members = Vec::new();
            for w in within.elements() {
                let c = g.conjugate(w, s);
                if !class_of.contains_key(&c) {
                    class_of.insert(c, idx);
                    members.push(c);
                    // w^{-1} c w = s
                    to_rep.insert(c, g.inv(w));
                }
            }
            members.sort_by(|a, b| a.lex_cmp(*b));
            classes.push(SubgroupClass {
                rep: s,
                normal: members.len() == 1,
                normalizer: g.normalizer(within, s),
                members,
                label: String::new(),
            });
        }
        let n = classes.len();
        let mut subconj = vec![vec![false; n]; n];
        for (k, ck) in classes.iter().enumerate() {
            for (h, ch) in classes.iter().enumerate() {
                subconj[k][h] = ck.members.iter().any(|m| m.is_subset_of(ch.rep));
            }
        }
        let mut lat = SubgroupLattice { within, classes, class_of, to_rep, subconj };
        lat.assign_default_labels(g);
        lat
    }

    fn assign_default_labels(&mut self, g: &Group) {
        let whole = g.whole();
        let names: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                if c.rep.order() == 1 {
                    "e".to_string()
                } else if c.rep == whole {
                    g.label().to_string()
                } else if let Some(n) = c.members.iter().find_map(|m| g.preferred_name(*m)) {
                    n.to_string()
                } else {
                    g.type_name(c.rep)
                }
            })
            .collect();
        let mut labels = names.clone();
        for (i, name) in names.iter().enumerate() {
            let same: Vec<usize> = (0..names.len()).filter(|&j| &names[j] == name).collect();
            if same.len() > 1 {
                let pos = same.iter().position(|&j| j == i).unwrap();
                labels[i] = format!("{name}{}", suffix(pos));
            }
        }
        for (c, l) in self.classes.iter_mut().zip(labels) {
            c.label = l;
        }
    }

    /// Relabels using `name_of` on representatives; duplicate names get `.1`, `.2`, ...
    pub(crate) fn relabel(&mut self, name_of: impl Fn(Subgroup) -> String) {
        let names: Vec<String> = self.classes.iter().map(|c| name_of(c.rep)).collect();
        for (i, c) in self.classes.iter_mut().enumerate() {
            let dup: Vec<usize> = (0..names.len()).filter(|&j| names[j] == names[i]).collect();
            c.label = if dup.len() > 1 {
                format!("{}.{}", names[i], dup.iter().position(|&j| j == i).unwrap() + 1)
            } else {
                names[i].clone()
            };
        }
    }

    pub fn within(&self) -> Subgroup {
        self.within
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn rep(&self, i: usize) -> Subgroup {
        self.classes[i].rep
    }

    pub fn label(&self, i: usize) -> &str {
        &self.classes[i].label
    }

    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class index of a subgroup of `within`.
    pub fn class_of(&self, s: Subgroup) -> usize {
        *self.class_of.get(&s).unwrap_or_else(|| panic!("{s:?} is not a subgroup of {:?}", self.within))
    }

    pub fn try_class_of(&self, s: Subgroup) -> Option<usize> {
        self.class_of.get(&s).copied()
    }

    pub fn label_of(&self, s: Subgroup) -> &str {
        self.label(self.class_of(s))
    }

    /// An element `γ` of `within` with `γ s γ^{-1}` the class representative.
    pub fn to_rep(&self, s: Subgroup) -> usize {
        self.to_rep[&s]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    /// `K` is conjugate to a subgroup of `H`.
    pub fn subconjugate(&self, k: usize, h: usize) -> bool {
        self.subconj[k][h]
    }

    /// All subgroups of `within` in (order, lex) order.
    pub fn subgroups(&self) -> impl Iterator<Item = Subgroup> + '_ {
        self.classes.iter().flat_map(|c| c.members.iter().copied())
    }

    /// `m[K][H] = |(W/H)^K|` for `W = within`.
    pub fn table_of_marks(&self, g: &Group) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0i64; n]; n];
        for (k, ck) in self.classes.iter().enumerate() {
            for (h, ch) in self.classes.iter().enumerate() {
                if !self.subconj[k][h] {
                    continue;
                }
                let count = self
                    .within
                    .elements()
                    .filter(|&w| g.conjugate(g.inv(w), ck.rep).is_subset_of(ch.rep))
                    .count();
                m[k][h] = (count / ch.rep.order()) as i64;
            }
        }
        m
    }
}

fn suffix(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("_{i}")
    }
}

/// Representatives of `left \ G / right` (restricted to `within`): the
/// smallest element of each double coset, ascending.
pub fn double_cosets(g: &Group, within: Subgroup, left: Subgroup, right: Subgroup) -> Vec<usize> {
    let mut seen = 0u64;
    let mut reps = Vec::new();
    for x in within.elements() {
        if seen >> x & 1 == 1 {
            continue;
        }
        reps.push(x);
        for l in left.elements() {
            let lx = g.mul(l, x);
            for r in right.elements() {
                seen |= 1 << g.mul(lx, r);
            }
        }
    }
    reps
}

/// Size of the double coset `L x R`.
pub fn double_coset_size(g: &Group, left: Subgroup, right: Subgroup, x: usize) -> usize {
    let mut seen = 0u64;
    for l in left.elements() {
        let lx = g.mul(l, x);
        for r in right.elements() {
            seen |= 1 << g.mul(lx, r);
        }
    }
    seen.count_ones() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(elems: &[usize]) -> Subgroup {
        Subgroup::from_mask(elems.iter().fold(0, |m, &e| m | 1 << e))
    }

    #[test]
    fn q8_classes_in_lattice_order() {
        let q = Group::builtin("Q8").unwrap();
        let l = q.lattice();
        let labels: Vec<&str> = (0..l.len()).map(|i| l.label(i)).collect();
        assert_eq!(labels, ["e", "C2", "I", "J", "K", "Q8"]);
        assert!(l.classes().iter().all(|c| c.normal));
    }

    #[test]
    fn small_lattices() {
        assert_eq!(Group::builtin("C4").unwrap().lattice().len(), 3);
        assert_eq!(Group::builtin("C2xC2").unwrap().lattice().len(), 5);
        let d8 = Group::builtin("D8").unwrap();
        let labels: Vec<&str> = (0..d8.lattice().len()).map(|i| d8.lattice().label(i)).collect();
        assert_eq!(labels, ["e", "C2a", "C2b", "C2c", "C4", "V4a", "V4b", "D8"]);
    }

    #[test]
    fn d8_class_count_matches_brute_force() {
        let g = Group::builtin("D8").unwrap();
        // every subset closed under the group law
        let subs: Vec<Subgroup> =
            (0u64..256).map(Subgroup::from_mask).filter(|s| s.contains(0) && g.is_subgroup(*s)).collect();
        assert_eq!(subs.len(), 10);
        let mut classes: Vec<Vec<Subgroup>> = Vec::new();
        for s in subs {
            if classes.iter().any(|c| c.contains(&s)) {
                continue;
            }
            let mut c: Vec<Subgroup> = (0..8).map(|x| g.conjugate(x, s)).collect();
            c.sort();
            c.dedup();
            classes.push(c);
        }
        assert_eq!(classes.len(), 8);
        assert_eq!(g.lattice().len(), 8);
    }

    #[test]
    fn weyl_orders() {
        let d8 = Group::builtin("D8").unwrap();
        let l = d8.lattice();
        let w: Vec<usize> = l.classes().iter().map(|c| c.weyl_order()).collect();
        assert_eq!(w, [8, 4, 2, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn double_coset_examples() {
        let q = Group::builtin("Q8").unwrap();
        let i = sub(&[0, 1, 2, 3]);
        let c2 = sub(&[0, 1]);
        assert_eq!(double_cosets(&q, q.whole(), i, c2).len(), 2);
        assert_eq!(double_cosets(&q, q.whole(), q.whole(), c2), vec![0]);
        let v4 = Group::builtin("C2xC2").unwrap();
        assert_eq!(double_cosets(&v4, v4.whole(), v4.trivial(), v4.trivial()).len(), 4);
    }

    #[test]
    fn double_coset_sizes_partition_group() {
        for name in ["Q8", "D8", "C8", "C2xC2"] {
            let g = Group::builtin(name).unwrap();
            for &a in g.subgroups() {
                for &b in g.subgroups() {
                    let total: usize =
                        double_cosets(&g, g.whole(), a, b).iter().map(|&x| double_coset_size(&g, a, b, x)).sum();
                    assert_eq!(total, g.order());
                }
            }
        }
    }

    #[test]
    fn q8_table_of_marks() {
        let q = Group::builtin("Q8").unwrap();
        let m = q.lattice().table_of_marks(&q);
        let col_i: Vec<i64> = (0..6).map(|k| m[k][2]).collect();
        assert_eq!(col_i, [2, 2, 2, 0, 0, 0]);
        assert!((0..6).all(|k| m[k][5] == 1));
        let col_e: Vec<i64> = (0..6).map(|k| m[k][0]).collect();
        assert_eq!(col_e, [8, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn marks_triangular_with_weyl_diagonal() {
        for name in ["Q8", "D8", "C8", "C2xC2", "C4"] {
            let g = Group::builtin(name).unwrap();
            let l = g.lattice();
            let m = l.table_of_marks(&g);
            for k in 0..l.len() {
                assert_eq!(m[k][k] as usize, l.class(k).weyl_order());
                for h in 0..k {
                    assert_eq!(m[k][h], 0, "{name}");
                }
            }
        }
    }
}
