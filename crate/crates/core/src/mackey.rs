//! Mackey functors presented levelwise by finitely generated abelian groups.
//!
//! Values are stored once per conjugacy class of subgroups, at the class
//! representative. The value at any other member `S` of the class is
//! identified with it through conjugation by `γ_S` (the element returned by
//! [`SubgroupLattice::to_rep`]). With that convention the functor is
//! determined by
//!
//! * `R[(c, S)]`: restriction from the representative of `c` to each actual
//!   subgroup `S` of it, landing in the value of `S`'s class;
//! * `T[(c, S)]`: the matching transfers;
//! * `W[c][n]`: the action of each `n` in the normalizer of the representative.
//!
//! All matrices act on column vectors, one column per source generator.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, GroupFile, Quotient, Subgroup};
use crate::lattice::{double_cosets, SubgroupLattice};
use crate::linalg::{hom, quotient_presentation, reduce_vec, IntLattice, IntMatrix};

/// `Z^r ⊕ Z/d_1 ⊕ ...` on named generators; order 0 means infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelValue {
    pub orders: Vec<BigInt>,
    pub labels: Vec<String>,
}

impl LevelValue {
    pub fn zero() -> Self {
        LevelValue { orders: Vec::new(), labels: Vec::new() }
    }

    pub fn new(orders: &[i64]) -> Self {
        let labels = (1..=orders.len()).map(|i| format!("g{i}")).collect();
        LevelValue { orders: orders.iter().map(|&d| BigInt::from(d)).collect(), labels }
    }

    pub fn with_labels(orders: &[i64], labels: &[&str]) -> Self {
        assert_eq!(orders.len(), labels.len());
        LevelValue {
            orders: orders.iter().map(|&d| BigInt::from(d)).collect(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        reduce_vec(v, &self.orders)
    }

    /// Invariant factors `d_1 | d_2 | ...` with the free part as zeros at the front.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        quotient_presentation(&IntLattice::diagonal(&self.orders)).invariants
    }

    /// E.g. `Z ⊕ Z/2 ⊕ Z/2`, or `0`.
    pub fn describe(&self) -> String {
        if self.orders.is_empty() {
            return "0".into();
        }
        self.orders.iter().map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") }).collect::<Vec<_>>().join(" ⊕ ")
    }

    fn latex(&self) -> String {
        if self.orders.is_empty() {
            return "0".into();
        }
        self.orders
            .iter()
            .map(|d| if d.is_zero() { "\\mathbb{Z}".to_string() } else { format!("\\mathbb{{Z}}/{d}") })
            .collect::<Vec<_>>()
            .join(" \\oplus ")
    }
}

/// Multiplicative structure constants on the chosen generators of each level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingData {
    /// Coordinates of the unit, per class.
    pub one: Vec<Vec<BigInt>>,
    /// `products[c][i][j]` = coordinates of `g_i · g_j` at class `c`.
    pub products: Vec<Vec<Vec<Vec<BigInt>>>>,
}

impl RingData {
    pub fn mul(&self, value: &LevelValue, c: usize, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let n = value.ngens();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, p) in out.iter_mut().zip(&self.products[c][i][j]) {
                    *o += &ab * p;
                }
            }
        }
        value.reduce(&out)
    }
}

#[derive(Clone)]
pub struct MackeyPresentation {
    group: Arc<Group>,
    name: String,
    values: Vec<LevelValue>,
    res: HashMap<(usize, Subgroup), IntMatrix>,
    tr: HashMap<(usize, Subgroup), IntMatrix>,
    weyl: Vec<HashMap<usize, IntMatrix>>,
    ring: Option<RingData>,
}

impl std::fmt::Debug for MackeyPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.lewis_diagram())
    }
}

impl PartialEq for MackeyPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.group.table() == other.group.table()
            && self.name == other.name
            && self.values == other.values
            && self.res == other.res
            && self.tr == other.tr
            && self.weyl == other.weyl
            && self.ring == other.ring
    }
}

fn subgroups_of(g: &Group, h: Subgroup) -> impl Iterator<Item = Subgroup> + '_ {
    g.subgroups().iter().copied().filter(move |s| s.is_subset_of(h))
}

/// Block-diagonal sum.
fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
        }
    }
    m
}

fn scale(m: &IntMatrix, k: &BigInt) -> IntMatrix {
    IntMatrix::from_rows(m.cols(), m.to_rows().into_iter().map(|r| r.into_iter().map(|x| x * k).collect()).collect())
}

impl MackeyPresentation {
    /// Assembles a presentation from callbacks. Matrices are reduced modulo the
    /// target orders; nothing is validated here (see [`validate`](Self::validate)).
    pub fn from_fns(
        group: Arc<Group>,
        name: impl Into<String>,
        values: Vec<LevelValue>,
        res: impl Fn(usize, Subgroup) -> IntMatrix,
        tr: impl Fn(usize, Subgroup) -> IntMatrix,
        weyl: impl Fn(usize, usize) -> IntMatrix,
    ) -> Self {
        let lat = group.lattice();
        assert_eq!(values.len(), lat.len(), "one value per subgroup class");
        let mut r = HashMap::new();
        let mut t = HashMap::new();
        let mut w = Vec::with_capacity(lat.len());
        for c in 0..lat.len() {
            let h = lat.rep(c);
            let vh = &values[c];
            for s in subgroups_of(&group, h) {
                let vs = &values[lat.class_of(s)];
                let rm = res(c, s);
                let tm = tr(c, s);
                assert_eq!((rm.rows(), rm.cols()), (vs.ngens(), vh.ngens()), "restriction matrix shape");
                assert_eq!((tm.rows(), tm.cols()), (vh.ngens(), vs.ngens()), "transfer matrix shape");
                r.insert((c, s), rm.reduce_rows(&vs.orders));
                t.insert((c, s), tm.reduce_rows(&vh.orders));
            }
            let mut wc = HashMap::new();
            for n in lat.class(c).normalizer.elements() {
                let m = weyl(c, n);
                assert_eq!((m.rows(), m.cols()), (vh.ngens(), vh.ngens()), "Weyl matrix shape");
                wc.insert(n, m.reduce_rows(&vh.orders));
            }
            w.push(wc);
        }
        MackeyPresentation { group, name: name.into(), values, res: r, tr: t, weyl: w, ring: None }
    }

    /// The zero functor.
    pub fn zero(group: Arc<Group>) -> Self {
        let n = group.lattice().len();
        Self::from_fns(
            group,
            "0",
            vec![LevelValue::zero(); n],
            |_, _| IntMatrix::zeros(0, 0),
            |_, _| IntMatrix::zeros(0, 0),
            |_, _| IntMatrix::zeros(0, 0),
        )
    }

    pub fn with_ring(mut self, ring: RingData) -> Self {
        self.ring = Some(ring);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.group.lattice()
    }

    pub fn values(&self) -> &[LevelValue] {
        &self.values
    }

    pub fn value(&self, c: usize) -> &LevelValue {
        &self.values[c]
    }

    /// Value at the class labelled `label`.
    pub fn value_at(&self, label: &str) -> Option<&LevelValue> {
        self.lattice().find(label).map(|c| &self.values[c])
    }

    pub fn ring(&self) -> Option<&RingData> {
        self.ring.as_ref()
    }

    /// Stored restriction from the representative of `c` to `s`.
    pub fn res_stored(&self, c: usize, s: Subgroup) -> &IntMatrix {
        &self.res[&(c, s)]
    }

    pub fn tr_stored(&self, c: usize, s: Subgroup) -> &IntMatrix {
        &self.tr[&(c, s)]
    }

    pub fn weyl(&self, c: usize, n: usize) -> &IntMatrix {
        &self.weyl[c][&n]
    }

    fn gamma(&self, s: Subgroup) -> usize {
        self.lattice().to_rep(s)
    }

    /// `c_g : M(S) → M(gSg⁻¹)` in representative coordinates.
    pub fn conj_matrix(&self, s: Subgroup, g: usize) -> &IntMatrix {
        let grp = &self.group;
        let t = grp.conjugate(g, s);
        let n = grp.mul(grp.mul(self.gamma(t), g), grp.inv(self.gamma(s)));
        self.weyl(self.lattice().class_of(s), n)
    }

    /// `res^H_K` for arbitrary `K ≤ H` in representative coordinates.
    pub fn res_matrix(&self, h: Subgroup, k: Subgroup) -> IntMatrix {
        let grp = &self.group;
        let lat = self.lattice();
        let gamma = self.gamma(h);
        let k2 = grp.conjugate(gamma, k);
        let n = grp.mul(grp.mul(self.gamma(k), grp.inv(gamma)), grp.inv(self.gamma(k2)));
        self.weyl(lat.class_of(k), n).mul(&self.res[&(lat.class_of(h), k2)])
    }

    /// `tr_K^H` for arbitrary `K ≤ H` in representative coordinates.
    pub fn tr_matrix(&self, k: Subgroup, h: Subgroup) -> IntMatrix {
        let grp = &self.group;
        let lat = self.lattice();
        let gamma = self.gamma(h);
        let k2 = grp.conjugate(gamma, k);
        let n = grp.mul(grp.mul(self.gamma(k2), gamma), grp.inv(self.gamma(k)));
        self.tr[&(lat.class_of(h), k2)].mul(self.weyl(lat.class_of(k), n))
    }

    fn orders_of(&self, s: Subgroup) -> &[BigInt] {
        &self.values[self.lattice().class_of(s)].orders
    }

    /// Every violated axiom, described. Empty iff the presentation is a Mackey functor.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let grp = &self.group;
        let lat = self.lattice();
        let d = |s: Subgroup| lat.label_of(s).to_string();
        for c in 0..lat.len() {
            let h = lat.rep(c);
            let vh = &self.values[c];
            let id = IntMatrix::identity(vh.ngens()).reduce_rows(&vh.orders);
            for s in subgroups_of(grp, h) {
                let vs = self.orders_of(s);
                if !hom::is_well_defined(&self.res[&(c, s)], &vh.orders, vs) {
                    out.push(format!("res {} → {} is not well defined", d(h), d(s)));
                }
                if !hom::is_well_defined(&self.tr[&(c, s)], vs, &vh.orders) {
                    out.push(format!("tr {} → {} is not well defined", d(s), d(h)));
                }
            }
            if self.res[&(c, h)] != id || self.tr[&(c, h)] != id {
                out.push(format!("res or tr from {} to itself is not the identity", d(h)));
            }
            let norm = lat.class(c).normalizer;
            for n1 in norm.elements() {
                let w1 = &self.weyl[c][&n1];
                if !hom::is_well_defined(w1, &vh.orders, &vh.orders) {
                    out.push(format!("Weyl action of {} at {} is not well defined", grp.element_name(n1), d(h)));
                }
                if h.contains(n1) && *w1 != id {
                    out.push(format!("{} ∈ {} acts nontrivially on its own level", grp.element_name(n1), d(h)));
                }
                for n2 in norm.elements() {
                    let lhs = &self.weyl[c][&grp.mul(n1, n2)];
                    let rhs = w1.mul(&self.weyl[c][&n2]);
                    if !hom::equal_mod(lhs, &rhs, &vh.orders) {
                        out.push(format!("Weyl action at {} is not a homomorphism", d(h)));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for c in 0..lat.len() {
            let h = lat.rep(c);
            for s in subgroups_of(grp, h) {
                for k in subgroups_of(grp, s) {
                    let ko = self.orders_of(k);
                    if !hom::equal_mod(&self.res_matrix(s, k).mul(&self.res[&(c, s)]), &self.res[&(c, k)], ko) {
                        out.push(format!("res {} → {} → {} differs from res {} → {}", d(h), d(s), d(k), d(h), d(k)));
                    }
                    let ho = &self.values[c].orders;
                    if !hom::equal_mod(&self.tr[&(c, s)].mul(&self.tr_matrix(k, s)), &self.tr[&(c, k)], ho) {
                        out.push(format!("tr {} → {} → {} differs from tr {} → {}", d(k), d(s), d(h), d(k), d(h)));
                    }
                }
                for g in 0..grp.order() {
                    let (gh, gs) = (grp.conjugate(g, h), grp.conjugate(g, s));
                    let lhs = self.conj_matrix(s, g).mul(&self.res_matrix(h, s));
                    let rhs = self.res_matrix(gh, gs).mul(self.conj_matrix(h, g));
                    if !hom::equal_mod(&lhs, &rhs, self.orders_of(s)) {
                        out.push(format!("res {} → {} is not equivariant for {}", d(h), d(s), grp.element_name(g)));
                    }
                    let lhs = self.conj_matrix(h, g).mul(&self.tr_matrix(s, h));
                    let rhs = self.tr_matrix(gs, gh).mul(self.conj_matrix(s, g));
                    if !hom::equal_mod(&lhs, &rhs, &self.values[c].orders) {
                        out.push(format!("tr {} → {} is not equivariant for {}", d(s), d(h), grp.element_name(g)));
                    }
                }
            }
            for k in subgroups_of(grp, h) {
                for l in subgroups_of(grp, h) {
                    let ko = self.orders_of(k);
                    let lhs = self.res_matrix(h, k).mul(&self.tr_matrix(l, h));
                    let mut rhs = IntMatrix::zeros(lhs.rows(), lhs.cols());
                    for x in double_cosets(grp, h, k, l) {
                        let src = grp.conjugate(grp.inv(x), k).intersect(l);
                        let dst = k.intersect(grp.conjugate(x, l));
                        let term = self.tr_matrix(dst, k).mul(self.conj_matrix(src, x)).mul(&self.res_matrix(l, src));
                        rhs = rhs.add(&term);
                    }
                    if !hom::equal_mod(&lhs, &rhs, ko) {
                        out.push(format!(
                            "double coset formula fails for res^{}_{} tr_{}^{}",
                            d(h),
                            d(k),
                            d(l),
                            d(h)
                        ));
                    }
                }
            }
        }
        out.dedup();
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidMackey(format!("{}: {v}", self.name))),
        }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Restriction to the subgroup `h`, as a Mackey functor for `h`.
    pub fn restrict(&self, h: Subgroup) -> Result<MackeyPresentation> {
        if !self.group.is_subgroup(h) {
            return Err(Error::UnknownSubgroup(format!("{h:?}")));
        }
        let emb = self.group.subgroup_as_group(h)?;
        let sub = Arc::clone(&emb.group);
        let lat = self.lattice();
        let slat = sub.lattice();
        let values: Vec<LevelValue> =
            slat.classes().iter().map(|c| self.values[lat.class_of(emb.map_subgroup(c.rep))].clone()).collect();
        let out = MackeyPresentation::from_fns(
            Arc::clone(&sub),
            format!("{}↓{}", self.name, lat.label_of(h)),
            values,
            |c, s| {
                let t = emb.map_subgroup(slat.rep(c));
                let gamma = emb.image[slat.to_rep(s)];
                let s = emb.map_subgroup(s);
                self.conj_matrix(s, gamma).mul(&self.res_matrix(t, s))
            },
            |c, s| {
                let t = emb.map_subgroup(slat.rep(c));
                let grp = &self.group;
                let gamma = emb.image[slat.to_rep(s)];
                let s = emb.map_subgroup(s);
                self.tr_matrix(s, t).mul(self.conj_matrix(grp.conjugate(gamma, s), grp.inv(gamma)))
            },
            |c, n| self.conj_matrix(emb.map_subgroup(slat.rep(c)), emb.image[n]).clone(),
        );
        let ring = self.ring.as_ref().map(|r| RingData {
            one: slat.classes().iter().map(|c| r.one[lat.class_of(emb.map_subgroup(c.rep))].clone()).collect(),
            products: slat.classes().iter().map(|c| r.products[lat.class_of(emb.map_subgroup(c.rep))].clone()).collect(),
        });
        let out = match ring {
            Some(r) => out.with_ring(r),
            None => out,
        };
        out.validated()
    }

    /// Inflation of `m` (a functor for `G/N`) along `q : G → G/N`.
    pub fn inflate(m: &MackeyPresentation, q: &Quotient) -> Result<MackeyPresentation> {
        if m.group.table() != q.group.table() {
            return Err(Error::Incompatible(format!("{} is not a functor for {}", m.name, q.group.label())));
        }
        let g = Arc::clone(&q.parent);
        let lat = g.lattice();
        let n = q.normal;
        let above = |s: Subgroup| n.is_subset_of(s);
        let values: Vec<LevelValue> = lat
            .classes()
            .iter()
            .map(|c| {
                if above(c.rep) {
                    m.values[m.lattice().class_of(q.image(c.rep))].clone()
                } else {
                    LevelValue::zero()
                }
            })
            .collect();
        let dims = |s: Subgroup| values[lat.class_of(s)].ngens();
        let coset = |x: usize| q.coset_of[x];
        let out = MackeyPresentation::from_fns(
            Arc::clone(&g),
            format!("infl {}", m.name),
            values.clone(),
            |c, s| {
                let k = lat.rep(c);
                if !above(s) {
                    return IntMatrix::zeros(dims(s), dims(k));
                }
                let (kb, sb) = (q.image(k), q.image(s));
                m.conj_matrix(sb, coset(lat.to_rep(s))).mul(&m.res_matrix(kb, sb))
            },
            |c, s| {
                let k = lat.rep(c);
                if !above(s) {
                    return IntMatrix::zeros(dims(k), dims(s));
                }
                let (kb, sb) = (q.image(k), q.image(s));
                let gamma = lat.to_rep(s);
                let s2 = q.image(g.conjugate(gamma, s));
                m.tr_matrix(sb, kb).mul(m.conj_matrix(s2, coset(g.inv(gamma))))
            },
            |c, x| {
                let k = lat.rep(c);
                if !above(k) {
                    return IntMatrix::zeros(0, 0);
                }
                m.conj_matrix(q.image(k), coset(x)).clone()
            },
        );
        out.validated()
    }

    /// `Φ^N`: levels `K ⊇ N` modulo transfers from subgroups not containing `N`,
    /// as a functor for `G/N`.
    pub fn geometric_fixed_points(&self, n: Subgroup) -> Result<FixedPoints> {
        let q = self.group.quotient(n)?;
        let qg = Arc::clone(&q.group);
        let qlat = qg.lattice();
        let lat = self.lattice();
        // per quotient class: projection from the old coordinates and lifts back
        let mut parts = Vec::with_capacity(qlat.len());
        for c in qlat.classes() {
            let k = q.preimage(c.rep);
            let v = &self.values[lat.class_of(k)];
            let mut gens: Vec<Vec<BigInt>> = IntLattice::diagonal(&v.orders).basis().to_rows();
            for l in subgroups_of(&self.group, k).filter(|l| !n.is_subset_of(*l)) {
                let t = self.tr_matrix(l, k);
                gens.extend((0..t.cols()).map(|j| t.column(j)));
            }
            let pres = quotient_presentation(&IntLattice::from_vectors(v.ngens(), &gens));
            let labels = (0..pres.ngens()).map(|j| combination_label(&pres.lifts.column(j), &v.labels)).collect();
            let value = LevelValue { orders: pres.invariants.clone(), labels };
            parts.push((k, value, pres.projection, pres.lifts));
        }
        let values: Vec<LevelValue> = parts.iter().map(|p| p.1.clone()).collect();
        let grp = &self.group;
        let out = MackeyPresentation::from_fns(
            Arc::clone(&qg),
            format!("Φ^{} {}", lat.label_of(n), self.name),
            values,
            |c, sb| {
                let (k, _, _, lifts) = &parts[c];
                let s = q.preimage(sb);
                let gamma = q.reps[qlat.to_rep(sb)];
                let proj = &parts[qlat.class_of(sb)].2;
                proj.mul(self.conj_matrix(s, gamma)).mul(&self.res_matrix(*k, s)).mul(lifts)
            },
            |c, sb| {
                let (k, _, proj, _) = &parts[c];
                let s = q.preimage(sb);
                let gamma = q.reps[qlat.to_rep(sb)];
                let s2 = grp.conjugate(gamma, s);
                let lifts = &parts[qlat.class_of(sb)].3;
                proj.mul(&self.tr_matrix(s, *k)).mul(self.conj_matrix(s2, grp.inv(gamma))).mul(lifts)
            },
            |c, x| {
                let (k, _, proj, lifts) = &parts[c];
                proj.mul(self.conj_matrix(*k, q.reps[x])).mul(lifts)
            },
        );
        let lifts = parts.into_iter().map(|p| p.3).collect();
        Ok(FixedPoints { functor: out.validated()?, quotient: q, lifts })
    }

    pub fn direct_sum(&self, other: &MackeyPresentation) -> Result<MackeyPresentation> {
        if self.group.table() != other.group.table() {
            return Err(Error::Incompatible("direct sum of functors for different groups".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| LevelValue {
                orders: a.orders.iter().chain(&b.orders).cloned().collect(),
                labels: a.labels.iter().chain(&b.labels).cloned().collect(),
            })
            .collect();
        let out = MackeyPresentation::from_fns(
            Arc::clone(&self.group),
            format!("{} ⊕ {}", self.name, other.name),
            values,
            |c, s| block_diag(&self.res[&(c, s)], &other.res[&(c, s)]),
            |c, s| block_diag(&self.tr[&(c, s)], &other.tr[&(c, s)]),
            |c, n| block_diag(&self.weyl[c][&n], &other.weyl[c][&n]),
        );
        Ok(out)
    }

    /// Pairs `(c, S)` where `S` is a maximal proper subgroup of the representative
    /// of `c` chosen from a class covered by `c`; larger levels first, then class order.
    pub fn covering_pairs(&self) -> Vec<(usize, Subgroup)> {
        let lat = self.lattice();
        let mut out = Vec::new();
        let mut classes: Vec<usize> = (0..lat.len()).collect();
        classes.sort_by_key(|&c| (std::cmp::Reverse(lat.class(c).order()), c));
        for c in classes {
            let h = lat.rep(c);
            for d in 0..c {
                if !lat.subconjugate(d, c) {
                    continue;
                }
                let covered = (d + 1..c).all(|m| !(lat.subconjugate(d, m) && lat.subconjugate(m, c)));
                if !covered {
                    continue;
                }
                if let Some(s) = lat.class(d).members.iter().copied().find(|s| s.is_subset_of(h)) {
                    out.push((c, s));
                }
            }
        }
        out
    }

    /// Plain-text Lewis diagram: levels from the top down, classes of equal
    /// order on one row, followed by the maps between adjacent levels.
    pub fn lewis_diagram(&self) -> String {
        let lat = self.lattice();
        let grp = &self.group;
        let mut s = String::new();
        let _ = writeln!(s, "{} over {}", self.name, grp.label());
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|&c| {
                    let v = &self.values[c];
                    if v.is_zero() {
                        format!("{}: 0", lat.label(c))
                    } else {
                        format!("{}: {} <{}>", lat.label(c), v.describe(), v.labels.join(", "))
                    }
                })
                .collect();
            let _ = writeln!(s, "  {}", cells.join(" | "));
        }
        let pairs = self.covering_pairs();
        let _ = writeln!(s, "restrictions:");
        for &(c, sub) in &pairs {
            let _ = writeln!(s, "  {} → {}: {}", lat.label(c), lat.label_of(sub), fmt_matrix(&self.res[&(c, sub)]));
        }
        let _ = writeln!(s, "transfers:");
        for &(c, sub) in &pairs {
            let _ = writeln!(s, "  {} → {}: {}", lat.label_of(sub), lat.label(c), fmt_matrix(&self.tr[&(c, sub)]));
        }
        let mut weyl_lines = Vec::new();
        for c in 0..lat.len() {
            let h = lat.rep(c);
            let id = IntMatrix::identity(self.values[c].ngens()).reduce_rows(&self.values[c].orders);
            let mut seen = 0u64;
            for x in lat.class(c).normalizer.elements() {
                if seen >> x & 1 == 1 {
                    continue;
                }
                for y in h.elements() {
                    seen |= 1 << grp.mul(x, y);
                }
                if self.weyl[c][&x] != id {
                    weyl_lines.push(format!(
                        "  {} at {}: {}",
                        grp.element_name(x),
                        lat.label(c),
                        fmt_matrix(&self.weyl[c][&x])
                    ));
                }
            }
        }
        if !weyl_lines.is_empty() {
            let _ = writeln!(s, "weyl actions:");
            for l in weyl_lines {
                let _ = writeln!(s, "{l}");
            }
        }
        if let Some(r) = &self.ring {
            let _ = writeln!(s, "ring structure:");
            for c in (0..lat.len()).rev() {
                let v = &self.values[c];
                if v.is_zero() {
                    continue;
                }
                let mut terms = vec![format!("1 = {}", fmt_coords(&r.one[c], &v.labels))];
                for i in 0..v.ngens() {
                    for j in i..v.ngens() {
                        terms.push(format!(
                            "{}·{} = {}",
                            v.labels[i],
                            v.labels[j],
                            fmt_coords(&r.products[c][i][j], &v.labels)
                        ));
                    }
                }
                let _ = writeln!(s, "  {}: {}", lat.label(c), terms.join(", "));
            }
        }
        s
    }

    /// Classes grouped by subgroup order, largest first; within a row, class order.
    fn rows(&self) -> Vec<Vec<usize>> {
        let lat = self.lattice();
        let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..lat.len() {
            by_order.entry(lat.class(c).order()).or_default().push(c);
        }
        by_order.into_values().rev().collect()
    }

    /// A `tikz-cd` Lewis diagram with restrictions in black and transfers in orange.
    pub fn to_latex(&self) -> String {
        let lat = self.lattice();
        let rows = self.rows();
        let width = rows.iter().map(Vec::len).max().unwrap_or(1);
        let mut pos = HashMap::new();
        let mut s = String::from("\\begin{tikzcd}[column sep=large, row sep=large]\n");
        for (r, row) in rows.iter().enumerate() {
            let start = (width - row.len()) / 2;
            let mut cells = vec![String::new(); width];
            for (i, &c) in row.iter().enumerate() {
                let col = if row.len() == 1 { (width - 1) / 2 } else { start + i };
                cells[col] = self.values[c].latex();
                pos.insert(c, (r + 1, col + 1));
            }
            let _ = write!(s, "  {}", cells.join(" & "));
            s.push_str(if r + 1 < rows.len() { " \\\\\n" } else { "\n" });
        }
        for (c, sub) in self.covering_pairs() {
            let (a, b) = (pos[&c], pos[&lat.class_of(sub)]);
            let _ = writeln!(
                s,
                "  \\arrow[from={}-{}, to={}-{}, bend right=10, \"{}\"']",
                a.0,
                a.1,
                b.0,
                b.1,
                latex_matrix(&self.res[&(c, sub)])
            );
            let _ = writeln!(
                s,
                "  \\arrow[from={}-{}, to={}-{}, bend right=10, orange, \"{}\"']",
                b.0,
                b.1,
                a.0,
                a.1,
                latex_matrix(&self.tr[&(c, sub)])
            );
        }
        s.push_str("\\end{tikzcd}\n");
        s
    }

    pub fn to_json(&self) -> MackeyJson {
        let lat = self.lattice();
        let to_rows = |m: &IntMatrix| m.to_rows().iter().map(|r| r.iter().map(big_to_i64).collect()).collect();
        let mut res = Vec::new();
        let mut tr = Vec::new();
        let mut weyl = Vec::new();
        for c in 0..lat.len() {
            for s in subgroups_of(&self.group, lat.rep(c)) {
                res.push(MapJson { level: lat.label(c).into(), subgroup: s.members(), matrix: to_rows(&self.res[&(c, s)]) });
                tr.push(MapJson { level: lat.label(c).into(), subgroup: s.members(), matrix: to_rows(&self.tr[&(c, s)]) });
            }
            for x in lat.class(c).normalizer.elements() {
                weyl.push(WeylJson { level: lat.label(c).into(), element: x, matrix: to_rows(&self.weyl[c][&x]) });
            }
        }
        MackeyJson {
            name: self.name.clone(),
            group: self.group.to_file(),
            levels: (0..lat.len())
                .map(|c| LevelJson {
                    label: lat.label(c).into(),
                    subgroup: lat.rep(c).members(),
                    orders: self.values[c].orders.iter().map(big_to_i64).collect(),
                    generators: self.values[c].labels.clone(),
                })
                .collect(),
            res,
            tr,
            weyl,
            ring: self.ring.as_ref().map(|r| RingJson {
                one: r.one.iter().map(|v| v.iter().map(big_to_i64).collect()).collect(),
                products: r
                    .products
                    .iter()
                    .map(|p| p.iter().map(|row| row.iter().map(|v| v.iter().map(big_to_i64).collect()).collect()).collect())
                    .collect(),
            }),
        }
    }

    pub fn from_json(j: &MackeyJson) -> Result<MackeyPresentation> {
        let group = Group::from_file(&j.group)?;
        let lat = group.lattice();
        if j.levels.len() != lat.len() {
            return Err(Error::Json(format!("expected {} levels, found {}", lat.len(), j.levels.len())));
        }
        let mut values = vec![LevelValue::zero(); lat.len()];
        for l in &j.levels {
            let c = lat
                .try_class_of(mask_of(&l.subgroup))
                .ok_or_else(|| Error::Json(format!("level {} is not a subgroup", l.label)))?;
            if l.orders.len() != l.generators.len() {
                return Err(Error::Json(format!("level {}: orders and generators differ in length", l.label)));
            }
            values[c] = LevelValue { orders: l.orders.iter().map(|&d| BigInt::from(d)).collect(), labels: l.generators.clone() };
        }
        let class_by_label = |label: &str| lat.find(label).ok_or_else(|| Error::UnknownSubgroup(label.to_string()));
        let mut res = HashMap::new();
        let mut tr = HashMap::new();
        let mut weyl = HashMap::new();
        for m in &j.res {
            res.insert((class_by_label(&m.level)?, mask_of(&m.subgroup)), &m.matrix);
        }
        for m in &j.tr {
            tr.insert((class_by_label(&m.level)?, mask_of(&m.subgroup)), &m.matrix);
        }
        for m in &j.weyl {
            weyl.insert((class_by_label(&m.level)?, m.element), &m.matrix);
        }
        let dims = |c: usize| values[c].ngens();
        let build = |rows: Option<&&Vec<Vec<i64>>>, r: usize, c: usize| -> Result<IntMatrix> {
            let rows = rows.ok_or_else(|| Error::Json("missing structure map".into()))?;
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Json(format!("matrix has the wrong shape (expected {r}×{c})")));
            }
            Ok(IntMatrix::from_rows(c, rows.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()))
        };
        // check presence and shapes before the infallible constructor runs
        for c in 0..lat.len() {
            for s in subgroups_of(&group, lat.rep(c)) {
                build(res.get(&(c, s)), dims(lat.class_of(s)), dims(c))?;
                build(tr.get(&(c, s)), dims(c), dims(lat.class_of(s)))?;
            }
            for x in lat.class(c).normalizer.elements() {
                build(weyl.get(&(c, x)), dims(c), dims(c))?;
            }
        }
        let out = MackeyPresentation::from_fns(
            Arc::clone(&group),
            j.name.clone(),
            values.clone(),
            |c, s| build(res.get(&(c, s)), dims(lat.class_of(s)), dims(c)).unwrap(),
            |c, s| build(tr.get(&(c, s)), dims(c), dims(lat.class_of(s))).unwrap(),
            |c, x| build(weyl.get(&(c, x)), dims(c), dims(c)).unwrap(),
        );
        let out = match &j.ring {
            Some(r) => out.with_ring(RingData {
                one: r.one.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                products: r
                    .products
                    .iter()
                    .map(|p| p.iter().map(|row| row.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect()).collect())
                    .collect(),
            }),
            None => out,
        };
        out.validated()
    }
}

fn mask_of(members: &[usize]) -> Subgroup {
    Subgroup::from_mask(members.iter().fold(0u64, |acc, &e| acc | 1 << e))
}

fn big_to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("entry exceeds 64 bits")
}

/// `[1 0 0]`, `[2; 1; 0]`, a bare scalar for 1×1, or `0` for maps out of or into 0.
pub fn fmt_matrix(m: &IntMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "0".into();
    }
    if m.rows() == 1 && m.cols() == 1 {
        return m[(0, 0)].to_string();
    }
    m.to_string()
}

fn latex_matrix(m: &IntMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "0".into();
    }
    if m.rows() == 1 && m.cols() == 1 {
        return m[(0, 0)].to_string();
    }
    let rows: Vec<String> =
        m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" & ")).collect();
    format!("\\left[\\begin{{smallmatrix}}{}\\end{{smallmatrix}}\\right]", rows.join(" \\\\ "))
}

fn fmt_coords(v: &[BigInt], labels: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, l)| if a.is_one() { l.clone() } else { format!("{a}{l}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Label for a lift given in old coordinates, e.g. `u_I` or `u_I+u_K`.
fn combination_label(v: &[BigInt], labels: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, l)| {
            if a.is_one() {
                l.clone()
            } else if (-a).is_one() {
                format!("-{l}")
            } else {
                format!("{a}{l}")
            }
        })
        .collect();
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = terms[0].clone();
    for t in &terms[1..] {
        if !t.starts_with('-') {
            s.push('+');
        }
        s.push_str(t);
    }
    s
}

/// A levelwise homomorphism between two presentations for the same group.
#[derive(Clone, Debug)]
pub struct MackeyMap {
    /// One matrix per subgroup class, target generators × source generators.
    pub components: Vec<IntMatrix>,
}

impl MackeyMap {
    /// Checks that the components are well defined and commute with all structure maps.
    pub fn check_natural(&self, src: &MackeyPresentation, dst: &MackeyPresentation) -> Result<()> {
        if src.group.table() != dst.group.table() {
            return Err(Error::Incompatible("functors for different groups".into()));
        }
        let lat = src.lattice();
        let f = &self.components;
        if f.len() != lat.len() {
            return Err(Error::Incompatible("one component per subgroup class is required".into()));
        }
        for c in 0..lat.len() {
            let (a, b) = (&src.values[c], &dst.values[c]);
            if (f[c].rows(), f[c].cols()) != (b.ngens(), a.ngens()) {
                return Err(Error::Incompatible(format!("component at {} has the wrong shape", lat.label(c))));
            }
            if !hom::is_well_defined(&f[c], &a.orders, &b.orders) {
                return Err(Error::Incompatible(format!("component at {} is not well defined", lat.label(c))));
            }
        }
        for c in 0..lat.len() {
            let h = lat.rep(c);
            for s in subgroups_of(&src.group, h) {
                let d = lat.class_of(s);
                let lhs = f[d].mul(&src.res[&(c, s)]);
                let rhs = dst.res[&(c, s)].mul(&f[c]);
                if !hom::equal_mod(&lhs, &rhs, &dst.values[d].orders) {
                    return Err(Error::Incompatible(format!(
                        "does not commute with res {} → {}",
                        lat.label(c),
                        lat.label_of(s)
                    )));
                }
                let lhs = f[c].mul(&src.tr[&(c, s)]);
                let rhs = dst.tr[&(c, s)].mul(&f[d]);
                if !hom::equal_mod(&lhs, &rhs, &dst.values[c].orders) {
                    return Err(Error::Incompatible(format!(
                        "does not commute with tr {} → {}",
                        lat.label_of(s),
                        lat.label(c)
                    )));
                }
            }
            for x in lat.class(c).normalizer.elements() {
                let lhs = f[c].mul(&src.weyl[c][&x]);
                let rhs = dst.weyl[c][&x].mul(&f[c]);
                if !hom::equal_mod(&lhs, &rhs, &dst.values[c].orders) {
                    return Err(Error::Incompatible(format!("does not commute with the Weyl action at {}", lat.label(c))));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelExactness {
    pub level: String,
    pub injective: bool,
    pub exact_in_middle: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub levels: Vec<LevelExactness>,
}

impl ExactnessReport {
    pub fn is_short_exact(&self) -> bool {
        self.levels.iter().all(|l| l.injective && l.exact_in_middle && l.surjective)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.levels {
            let mark = |b: bool| if b { "yes" } else { "NO" };
            let _ = writeln!(
                s,
                "{}: injective {}, exact in the middle {}, surjective {}",
                l.level,
                mark(l.injective),
                mark(l.exact_in_middle),
                mark(l.surjective)
            );
        }
        let _ = writeln!(s, "{}", if self.is_short_exact() { "short exact" } else { "not short exact" });
        s
    }
}

/// Levelwise exactness of `a --f--> b --g--> c`.
pub fn check_exact(
    a: &MackeyPresentation,
    b: &MackeyPresentation,
    c: &MackeyPresentation,
    f: &MackeyMap,
    g: &MackeyMap,
) -> Result<ExactnessReport> {
    f.check_natural(a, b)?;
    g.check_natural(b, c)?;
    let lat = a.lattice();
    let levels = (0..lat.len())
        .map(|i| {
            let (fa, gb) = (&f.components[i], &g.components[i]);
            let (oa, ob, oc) = (&a.values[i].orders, &b.values[i].orders, &c.values[i].orders);
            LevelExactness {
                level: lat.label(i).to_string(),
                injective: hom::is_injective(fa, oa, ob),
                exact_in_middle: hom::kernel(gb, oc) == hom::image(fa, ob),
                surjective: hom::is_surjective(gb, oc),
            }
        })
        .collect();
    Ok(ExactnessReport { levels })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub mismatches: Vec<String>,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `Φ^N M` over `G/N`, with `lifts[c]` expressing each generator at class `c`
/// of `G/N` in the coordinates of `M` at the preimage.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub functor: MackeyPresentation,
    pub quotient: Quotient,
    pub lifts: Vec<IntMatrix>,
}

/// Compares `m` with `f` after the levelwise basis change `basis[c] : m(c) → f(c)`
/// (identity when `None`). This is fixture matching, not an isomorphism search.
pub fn compare(m: &MackeyPresentation, f: &MackeyPresentation, basis: Option<&[IntMatrix]>) -> Comparison {
    let mut out = Comparison::default();
    if m.group.table() != f.group.table() {
        out.mismatches.push("functors for different groups".into());
        return out;
    }
    let lat = m.lattice();
    let identity: Vec<IntMatrix>;
    let b = match basis {
        Some(b) => b,
        None => {
            for c in 0..lat.len() {
                if m.values[c].ngens() != f.values[c].ngens() {
                    out.mismatches.push(format!("{}: different numbers of generators", lat.label(c)));
                }
            }
            if !out.matches() {
                return out;
            }
            identity = m.values.iter().map(|v| IntMatrix::identity(v.ngens())).collect();
            &identity
        }
    };
    for c in 0..lat.len() {
        let (vm, vf) = (&m.values[c], &f.values[c]);
        if vm.invariant_factors() != vf.invariant_factors() {
            out.mismatches.push(format!("{}: {} vs {}", lat.label(c), vm.describe(), vf.describe()));
            continue;
        }
        let bc = &b[c];
        if (bc.rows(), bc.cols()) != (vf.ngens(), vm.ngens())
            || !hom::is_well_defined(bc, &vm.orders, &vf.orders)
            || !hom::is_injective(bc, &vm.orders, &vf.orders)
            || !hom::is_surjective(bc, &vf.orders)
        {
            out.mismatches.push(format!("{}: basis change is not an isomorphism", lat.label(c)));
        }
    }
    if !out.matches() {
        return out;
    }
    for c in 0..lat.len() {
        let h = lat.rep(c);
        for s in subgroups_of(&m.group, h) {
            let d = lat.class_of(s);
            if !hom::equal_mod(&b[d].mul(&m.res[&(c, s)]), &f.res[&(c, s)].mul(&b[c]), &f.values[d].orders) {
                out.mismatches.push(format!("res {} → {}", lat.label(c), lat.label_of(s)));
            }
            if !hom::equal_mod(&b[c].mul(&m.tr[&(c, s)]), &f.tr[&(c, s)].mul(&b[d]), &f.values[c].orders) {
                out.mismatches.push(format!("tr {} → {}", lat.label_of(s), lat.label(c)));
            }
        }
        for x in lat.class(c).normalizer.elements() {
            if !hom::equal_mod(&b[c].mul(&m.weyl[c][&x]), &f.weyl[c][&x].mul(&b[c]), &f.values[c].orders) {
                out.mismatches.push(format!("Weyl action of {} at {}", m.group.element_name(x), lat.label(c)));
            }
        }
    }
    if let (Some(rm), Some(rf)) = (&m.ring, &f.ring) {
        for c in 0..lat.len() {
            let (vm, vf) = (&m.values[c], &f.values[c]);
            if vf.reduce(&b[c].mul_vec(&rm.one[c])) != vf.reduce(&rf.one[c]) {
                out.mismatches.push(format!("unit at {}", lat.label(c)));
            }
            for i in 0..vm.ngens() {
                for j in 0..vm.ngens() {
                    let lhs = vf.reduce(&b[c].mul_vec(&rm.products[c][i][j]));
                    let rhs = rf.mul(vf, c, &b[c].column(i), &b[c].column(j));
                    if lhs != rhs {
                        out.mismatches.push(format!("product {}·{} at {}", vm.labels[i], vm.labels[j], lat.label(c)));
                    }
                }
            }
        }
    }
    out.mismatches.dedup();
    out
}

/// Builds presentations from maps along covering relations, assuming trivial
/// Weyl actions unless overridden. Maps between non-adjacent levels are
/// composites along a chain of covers; unspecified covering maps are zero.
pub struct MackeyBuilder {
    group: Arc<Group>,
    name: String,
    values: Vec<LevelValue>,
    res: HashMap<(usize, usize), IntMatrix>,
    tr: HashMap<(usize, usize), IntMatrix>,
    weyl: HashMap<usize, Box<dyn Fn(usize) -> IntMatrix>>,
    ring: Option<RingData>,
}

fn matrix(rows: &[&[i64]], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

impl MackeyBuilder {
    pub fn new(group: Arc<Group>, name: impl Into<String>) -> Self {
        let n = group.lattice().len();
        MackeyBuilder {
            group,
            name: name.into(),
            values: vec![LevelValue::zero(); n],
            res: HashMap::new(),
            tr: HashMap::new(),
            weyl: HashMap::new(),
            ring: None,
        }
    }

    fn class(&self, label: &str) -> usize {
        self.group.lattice().find(label).unwrap_or_else(|| panic!("no subgroup class labelled {label}"))
    }

    pub fn value(mut self, label: &str, v: LevelValue) -> Self {
        let c = self.class(label);
        self.values[c] = v;
        self
    }

    /// Restriction from `from` to the covered class `to`, as rows.
    pub fn res(mut self, from: &str, to: &str, rows: &[&[i64]]) -> Self {
        let (a, b) = (self.class(from), self.class(to));
        let m = matrix(rows, self.values[a].ngens());
        self.res.insert((a, b), m);
        self
    }

    /// Transfer from `from` up to the covering class `to`, as rows.
    pub fn tr(mut self, from: &str, to: &str, rows: &[&[i64]]) -> Self {
        let (a, b) = (self.class(from), self.class(to));
        let m = matrix(rows, self.values[a].ngens());
        self.tr.insert((b, a), m);
        self
    }

    pub fn weyl(mut self, label: &str, action: impl Fn(usize) -> IntMatrix + 'static) -> Self {
        let c = self.class(label);
        self.weyl.insert(c, Box::new(action));
        self
    }

    pub fn ring(mut self, ring: RingData) -> Self {
        self.ring = Some(ring);
        self
    }

    fn cover_above(&self, c: usize, d: usize) -> Option<usize> {
        let lat = self.group.lattice();
        (0..c).rev().find(|&m| {
            lat.subconjugate(m, c)
                && lat.subconjugate(d, m)
                && (m + 1..c).all(|x| !(lat.subconjugate(m, x) && lat.subconjugate(x, c)))
        })
    }

    fn res_compose(&self, c: usize, d: usize) -> IntMatrix {
        if c == d {
            return IntMatrix::identity(self.values[c].ngens());
        }
        let m = self.cover_above(c, d).expect("class is not subconjugate");
        let step =
            self.res.get(&(c, m)).cloned().unwrap_or_else(|| IntMatrix::zeros(self.values[m].ngens(), self.values[c].ngens()));
        self.res_compose(m, d).mul(&step)
    }

    fn tr_compose(&self, d: usize, c: usize) -> IntMatrix {
        if c == d {
            return IntMatrix::identity(self.values[c].ngens());
        }
        let m = self.cover_above(c, d).expect("class is not subconjugate");
        let step =
            self.tr.get(&(c, m)).cloned().unwrap_or_else(|| IntMatrix::zeros(self.values[c].ngens(), self.values[m].ngens()));
        step.mul(&self.tr_compose(d, m))
    }

    pub fn build(self) -> Result<MackeyPresentation> {
        let lat = self.group.lattice();
        for (&(a, b), m) in &self.res {
            if (m.rows(), m.cols()) != (self.values[b].ngens(), self.values[a].ngens()) {
                return Err(Error::InvalidMackey(format!("res {} → {} has the wrong shape", lat.label(a), lat.label(b))));
            }
        }
        for (&(a, b), m) in &self.tr {
            if (m.rows(), m.cols()) != (self.values[a].ngens(), self.values[b].ngens()) {
                return Err(Error::InvalidMackey(format!("tr {} → {} has the wrong shape", lat.label(b), lat.label(a))));
            }
        }
        let out = MackeyPresentation::from_fns(
            Arc::clone(&self.group),
            self.name.clone(),
            self.values.clone(),
            |c, s| self.res_compose(c, lat.class_of(s)),
            |c, s| self.tr_compose(lat.class_of(s), c),
            |c, x| match self.weyl.get(&c) {
                Some(f) => f(x),
                None => IntMatrix::identity(self.values[c].ngens()),
            },
        );
        let out = match self.ring {
            Some(r) => out.with_ring(r),
            None => out,
        };
        out.validated()
    }
}

/// JSON form of a presentation; the group travels with it.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MackeyJson {
    pub name: String,
    pub group: GroupFile,
    pub levels: Vec<LevelJson>,
    pub res: Vec<MapJson>,
    pub tr: Vec<MapJson>,
    pub weyl: Vec<WeylJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LevelJson {
    pub label: String,
    pub subgroup: Vec<usize>,
    pub orders: Vec<i64>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapJson {
    /// Label of the class whose representative is the larger group.
    pub level: String,
    pub subgroup: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WeylJson {
    pub level: String,
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RingJson {
    pub one: Vec<Vec<i64>>,
    pub products: Vec<Vec<Vec<Vec<i64>>>>,
}

/// `-1` on every generator for elements outside `h`, identity inside.
pub fn sign_outside(group: &Group, h: Subgroup, ngens: usize) -> impl Fn(usize) -> IntMatrix {
    let inside: Vec<bool> = (0..group.order()).map(|x| h.contains(x)).collect();
    move |x| {
        if inside[x] {
            IntMatrix::identity(ngens)
        } else {
            scale(&IntMatrix::identity(ngens), &BigInt::from(-1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{constant_f2, constant_z, fixture};

    fn q8() -> Arc<Group> {
        Group::builtin("Q8").unwrap()
    }

    fn sub(g: &Group, label: &str) -> Subgroup {
        g.lattice().rep(g.lattice().find(label).unwrap())
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn restriction_of_nz_to_c4_is_constant() {
        let nz = fixture("NZ").unwrap();
        for h in ["I", "J", "K"] {
            let r = nz.restrict(sub(nz.group(), h)).unwrap();
            assert_eq!(r.group().type_name(r.group().whole()), "C4");
            let z = constant_z(Arc::clone(r.group()));
            let cmp = compare(&r, &z, None);
            assert!(cmp.matches(), "{h}: {:?}", cmp.mismatches);
        }
    }

    #[test]
    fn restriction_of_constant_and_inflated() {
        let g = q8();
        let z = constant_z(Arc::clone(&g));
        for &h in g.subgroups() {
            let r = z.restrict(h).unwrap();
            assert!(compare(&r, &constant_z(Arc::clone(r.group())), None).matches());
        }
        let infl = fixture("inflF2").unwrap().restrict(sub(&g, "I")).unwrap();
        assert!(infl.values().iter().all(LevelValue::is_zero));
    }

    #[test]
    fn restriction_to_non_normal_subgroup() {
        let d8 = Group::builtin("D8").unwrap();
        let z = constant_z(Arc::clone(&d8));
        for &h in d8.subgroups() {
            let r = z.restrict(h).unwrap();
            assert!(r.violations().is_empty());
        }
    }

    #[test]
    fn inflation_recovers_catalogue_entries() {
        let g = q8();
        let top = g.quotient(g.whole()).unwrap();
        let f2 = constant_f2(Arc::clone(&top.group));
        let infl = MackeyPresentation::inflate(&f2, &top).unwrap();
        assert!(compare(&infl, &fixture("inflF2").unwrap(), None).matches());

        let mut sum = MackeyPresentation::zero(Arc::clone(&g));
        for h in ["I", "J", "K"] {
            let q = g.quotient(sub(&g, h)).unwrap();
            let part = MackeyPresentation::inflate(&constant_f2(Arc::clone(&q.group)), &q).unwrap();
            sum = sum.direct_sum(&part).unwrap();
        }
        let cmp = compare(&sum.validated().unwrap(), &fixture("phiIJK_F2").unwrap(), None);
        assert!(cmp.matches(), "{:?}", cmp.mismatches);

        let zero = MackeyPresentation::zero(Arc::clone(&top.group));
        assert!(MackeyPresentation::inflate(&zero, &top).unwrap().values().iter().all(LevelValue::is_zero));
    }

    #[test]
    fn inflation_needs_a_normal_subgroup() {
        let d8 = Group::builtin("D8").unwrap();
        let reflection = d8.subgroups().iter().copied().find(|s| s.order() == 2 && !d8.is_normal(*s)).unwrap();
        assert!(matches!(d8.quotient(reflection), Err(Error::NotNormal(_))));
    }

    #[test]
    fn top_fixed_points() {
        let g = q8();
        for name in ["constZ", "NZ"] {
            let fp = fixture(name).unwrap().geometric_fixed_points(g.whole()).unwrap();
            let v = &fp.functor.values()[0];
            assert_eq!(v.describe(), "Z/2", "{name}");
        }
        let zero = MackeyPresentation::zero(Arc::clone(&g)).geometric_fixed_points(sub(&g, "C2")).unwrap();
        assert!(zero.functor.values().iter().all(LevelValue::is_zero));
    }

    #[test]
    fn fixed_points_undo_inflation() {
        let g = q8();
        for h in ["C2", "I", "Q8"] {
            let n = sub(&g, h);
            let q = g.quotient(n).unwrap();
            for base in [constant_z(Arc::clone(&q.group)), constant_f2(Arc::clone(&q.group))] {
                let back = MackeyPresentation::inflate(&base, &q).unwrap().geometric_fixed_points(n).unwrap();
                let cmp = compare(&back.functor, &base, None);
                assert!(cmp.matches(), "{h}: {:?}", cmp.mismatches);
            }
        }
    }

    fn main_sequence() -> (MackeyPresentation, MackeyPresentation, MackeyPresentation, MackeyMap, MackeyMap) {
        let a = fixture("inflF2^2").unwrap();
        let b = fixture("NZ").unwrap();
        let c = fixture("constZ").unwrap();
        let lat = b.lattice();
        let top = lat.top();
        let f = MackeyMap {
            components: (0..lat.len())
                .map(|i| if i == top { m(&[&[0, 0], &[1, 0], &[0, 1]]) } else { IntMatrix::zeros(1, 0) })
                .collect(),
        };
        let g = MackeyMap {
            components: (0..lat.len()).map(|i| if i == top { m(&[&[1, 0, 0]]) } else { m(&[&[1]]) }).collect(),
        };
        (a, b, c, f, g)
    }

    #[test]
    fn main_sequence_is_exact() {
        let (a, b, c, f, g) = main_sequence();
        let r = check_exact(&a, &b, &c, &f, &g).unwrap();
        assert!(r.is_short_exact(), "{}", r.to_text());
    }

    #[test]
    fn exactness_failures() {
        let g = Group::builtin("C2").unwrap();
        let z = constant_z(Arc::clone(&g));
        let ones = MackeyMap { components: vec![m(&[&[1]]); 2] };
        let twos = MackeyMap { components: vec![m(&[&[2]]); 2] };
        let r = check_exact(&z, &z, &z, &twos, &ones).unwrap();
        assert!(r.levels.iter().all(|l| l.injective && !l.exact_in_middle && l.surjective));
        let zero = MackeyPresentation::zero(Arc::clone(&g));
        let into = MackeyMap { components: vec![IntMatrix::zeros(1, 0); 2] };
        let onto = MackeyMap { components: vec![IntMatrix::zeros(0, 1); 2] };
        assert!(check_exact(&zero, &z, &z, &into, &ones).unwrap().is_short_exact());
        assert!(check_exact(&z, &z, &zero, &ones, &onto).unwrap().is_short_exact());
        // not natural: ×2 at one level only
        let bad = MackeyMap { components: vec![m(&[&[1]]), m(&[&[2]])] };
        assert!(check_exact(&z, &z, &z, &bad, &ones).is_err());
    }

    #[test]
    fn duals_and_self_comparison() {
        assert!(!compare(&fixture("mg").unwrap(), &fixture("mg*").unwrap(), None).matches());
        assert!(!compare(&fixture("constF2").unwrap(), &fixture("constZ").unwrap(), None).matches());
        let phi = fixture("phiIJK_F2").unwrap();
        assert!(compare(&phi, &phi, None).matches());
    }

    #[test]
    fn restriction_transposes_with_duality() {
        let g = q8();
        for (a, b) in [("mg", "mg*"), ("phiIJK_F2", "phiIJK_F2*")] {
            let (a, b) = (fixture(a).unwrap(), fixture(b).unwrap());
            for h in ["I", "J", "K"] {
                let (ra, rb) = (a.restrict(sub(&g, h)).unwrap(), b.restrict(sub(&g, h)).unwrap());
                let lat = ra.lattice();
                for c in 0..lat.len() {
                    for s in subgroups_of(ra.group(), lat.rep(c)) {
                        assert_eq!(ra.res_matrix(lat.rep(c), s).transpose(), rb.tr_matrix(s, lat.rep(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for name in ["NZ", "mgw", "constZ*", "inflF2^2"] {
            let f = fixture(name).unwrap();
            let text = serde_json::to_string(&f.to_json()).unwrap();
            let back = MackeyPresentation::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, f, "{name}");
        }
    }

    #[test]
    fn lewis_diagram_lists_levels_in_layout_order() {
        let text = fixture("NZ").unwrap().lewis_diagram();
        let i = text.find("I:").unwrap();
        let j = text.find("J:").unwrap();
        let k = text.find("K:").unwrap();
        assert!(i < j && j < k);
        assert!(text.contains("Z ⊕ Z/2 ⊕ Z/2"));
        assert!(fixture("NZ").unwrap().to_latex().contains("tikzcd"));
    }

    #[test]
    fn builder_rejects_broken_double_coset_formula() {
        let g = Group::builtin("C2").unwrap();
        let bad = MackeyBuilder::new(g, "bad")
            .value("C2", LevelValue::new(&[0]))
            .value("e", LevelValue::new(&[0]))
            .res("C2", "e", &[&[1]])
            .tr("e", "C2", &[&[1]])
            .build();
        assert!(bad.is_err());
    }
}
