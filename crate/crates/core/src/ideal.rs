//! Principal Tambara ideals of the Burnside Tambara functor and their quotients.
//!
//! The ideal generated by `x ∈ A(K)` is, at level `L`, the subgroup spanned by
//! `tr_M^L(b · nm_{K'}^M(res^{gKg⁻¹}_{K'} c_g x))` over `K' ≤ M ≤ L` and `b` in
//! the orbit basis of `A(M)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::burnside::{Burnside, BurnsideElement, ElementJson};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::{element_order, quotient_presentation, rebase, AbelianPresentation, IntLattice, IntMatrix};
use crate::mackey::{LevelValue, MackeyPresentation, RingData};
use crate::par::{self, Exec};

/// How a level generator arises from the ideal's generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorPath {
    /// Index of the ideal generator (for sums of principal ideals).
    pub source: usize,
    pub conj: usize,
    pub restrict_to: Subgroup,
    pub norm_to: Subgroup,
    /// Orbit class of `A(norm_to)` multiplied in; `None` for 1.
    pub multiplier: Option<usize>,
    pub transfer_to: Subgroup,
}

#[derive(Clone, Debug)]
pub struct NamedGenerator {
    pub element: BurnsideElement,
    pub path: GeneratorPath,
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct IdealLevel {
    level: Subgroup,
    generators: Vec<NamedGenerator>,
    selected: Vec<usize>,
    lattice: IntLattice,
}

impl IdealLevel {
    pub fn level(&self) -> Subgroup {
        self.level
    }

    /// All distinct nonzero path elements, paths with multiplier 1 first.
    pub fn generators(&self) -> &[NamedGenerator] {
        &self.generators
    }

    /// Greedily chosen generators spanning the same lattice; witnesses refer to these.
    pub fn selected(&self) -> impl Iterator<Item = &NamedGenerator> + '_ {
        self.selected.iter().map(|&i| &self.generators[i])
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }
}

/// An integral combination of named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub terms: Vec<(BigInt, String)>,
}

impl Witness {
    pub fn coefficients(&self) -> Vec<BigInt> {
        self.terms.iter().map(|(c, _)| c.clone()).collect()
    }

    /// Coefficient of the generator called `name` (zero if absent).
    pub fn coefficient(&self, name: &str) -> BigInt {
        self.terms.iter().find(|(_, n)| n == name).map(|(c, _)| c.clone()).unwrap_or_default()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.terms.iter().filter(|(c, _)| !c.is_zero()) {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if abs.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs}·{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub struct TambaraIdeal {
    burnside: Arc<Burnside>,
    generators: Vec<(BurnsideElement, String)>,
    levels: Vec<IdealLevel>,
}

impl fmt::Debug for TambaraIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TambaraIdeal({:?})", self.generators.iter().map(|g| &g.1).collect::<Vec<_>>())
    }
}

impl TambaraIdeal {
    pub fn principal(b: &Arc<Burnside>, generator: &BurnsideElement) -> Self {
        Self::principal_with(b, generator, Exec::default())
    }

    pub fn principal_with(b: &Arc<Burnside>, generator: &BurnsideElement, exec: Exec) -> Self {
        let name = b.format(generator);
        Self::generated_by(b, &[(generator.clone(), name)], exec)
    }

    /// The ideal generated by several elements, as the sum of the principal ideals.
    pub fn generated_by(b: &Arc<Burnside>, generators: &[(BurnsideElement, String)], exec: Exec) -> Self {
        let lat = b.lattice();
        let levels = par::map_range(exec, lat.len(), |c| build_level(b, generators, lat.rep(c)));
        TambaraIdeal { burnside: Arc::clone(b), generators: generators.to_vec(), levels }
    }

    pub fn burnside(&self) -> &Arc<Burnside> {
        &self.burnside
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.1.as_str()).collect()
    }

    /// Levels indexed by subgroup class of the ambient group.
    pub fn levels(&self) -> &[IdealLevel] {
        &self.levels
    }

    pub fn level(&self, c: usize) -> &IdealLevel {
        &self.levels[c]
    }

    /// The level at the class of `s`.
    pub fn level_of(&self, s: Subgroup) -> &IdealLevel {
        &self.levels[self.burnside.lattice().class_of(s)]
    }

    pub fn lattice_at(&self, s: Subgroup) -> &IntLattice {
        &self.level_of(s).lattice
    }

    /// Membership at any subgroup (not only class representatives).
    pub fn contains(&self, x: &BurnsideElement) -> bool {
        let y = self.burnside.to_rep_level(x);
        self.lattice_at(y.level()).contains(y.coeffs())
    }

    /// Coefficients over the selected generators of the level, or `None`.
    pub fn membership(&self, x: &BurnsideElement) -> Option<Witness> {
        let y = self.burnside.to_rep_level(x);
        let level = self.level_of(y.level());
        let coeffs = level.lattice.member(y.coeffs())?;
        Some(Witness { terms: coeffs.into_iter().zip(level.selected().map(|g| g.name.clone())).collect() })
    }

    /// Basis vectors of `I(rep)` moved to the conjugate subgroup `s`.
    fn basis_at(&self, s: Subgroup) -> Vec<BurnsideElement> {
        let b = &self.burnside;
        let rep = b.lattice().rep(b.lattice().class_of(s));
        self.lattice_at(s).basis().to_rows().into_iter().map(|r| b.from_rep_level(&b.element(rep, r), s)).collect()
    }

    /// Checks that every level is an ideal, that the levels are closed under
    /// restriction, transfer and conjugation, and samples norm differences
    /// `nm(x + i) - nm(x)` for `x` in `A(S)` and `i` in `I(S)`.
    pub fn check_closure(&self, exec: Exec, random_samples: usize, seed: u64) -> ClosureReport {
        let b = &self.burnside;
        let lat = b.lattice();
        let parts = par::map_range(exec, lat.len(), |c| self.check_level(c, random_samples, seed));
        let mut report = ClosureReport::default();
        for p in parts {
            report.merge(p);
        }
        report
    }

    fn check_level(&self, c: usize, random_samples: usize, seed: u64) -> ClosureReport {
        let b = &self.burnside;
        let g = b.group();
        let lat = b.lattice();
        let l = lat.rep(c);
        let mut rep = ClosureReport::default();
        let basis = self.basis_at(l);
        let ring = b.ring(l);
        for p in 0..ring.rank() {
            let orbit = b.element(l, unit(ring.rank(), p));
            for v in &basis {
                let ok = self.contains(&b.mul(&orbit, v).expect("same level"));
                rep.record("multiplication", ok, || format!("[{}/{}]·v leaves I({})", ring.label(), ring.lattice().label(p), ring.label()));
            }
        }
        for n in lat.class(c).normalizer.elements() {
            for v in &basis {
                let ok = self.contains(&b.conj(v, n));
                rep.record("conjugation", ok, || format!("c_{} leaves I({})", g.element_name(n), ring.label()));
            }
        }
        for s in g.subgroups().iter().copied().filter(|s| s.is_subset_of(l) && *s != l) {
            let label = b.describe(s);
            for v in &basis {
                let ok = self.contains(&b.res(v, s).expect("contained"));
                rep.record("restriction", ok, || format!("res {} → {} leaves the ideal", ring.label(), label));
            }
            let below = self.basis_at(s);
            for w in &below {
                let ok = self.contains(&b.tr(w, l).expect("contained"));
                rep.record("transfer", ok, || format!("tr {} → {} leaves the ideal", label, ring.label()));
            }
            let mut xs: Vec<BurnsideElement> = vec![b.zero(s), b.one(s), b.integer(s, -1)];
            let rank = b.ring(s).rank();
            xs.extend((0..rank).map(|p| b.element(s, unit(rank, p))));
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9e37_79b9) ^ s.mask());
            for _ in 0..random_samples {
                xs.push(b.element(s, (0..rank).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect()));
            }
            let mut is: Vec<BurnsideElement> = below.clone();
            if below.len() > 1 {
                for _ in 0..random_samples {
                    let mut acc = b.zero(s);
                    for w in &below {
                        acc = &acc + &w.scale(&BigInt::from(rng.gen_range(-2i64..=2)));
                    }
                    is.push(acc);
                }
            }
            for x in &xs {
                let base = b.nm(x, l).expect("contained");
                for i in &is {
                    let moved = b.nm(&(x + i), l).expect("contained");
                    let ok = self.contains(&(&moved - &base));
                    rep.record("norm difference", ok, || {
                        format!("nm_{}^{}(x + i) - nm(x) leaves the ideal for x = {}", label, ring.label(), b.format(x))
                    });
                }
            }
        }
        rep
    }

    pub fn to_json(&self) -> IdealJson {
        let b = &self.burnside;
        let lat = b.lattice();
        IdealJson {
            group: b.group().label().to_string(),
            generators: self.generators.iter().map(|(x, n)| (n.clone(), b.to_json(x))).collect(),
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(c, lv)| LevelIdealJson {
                    level: lat.label(c).to_string(),
                    generators: lv
                        .generators
                        .iter()
                        .enumerate()
                        .map(|(i, g)| GeneratorJson {
                            name: g.name.clone(),
                            element: b.format(&g.element),
                            selected: lv.selected.contains(&i),
                        })
                        .collect(),
                    hnf_basis: lv
                        .lattice
                        .basis()
                        .to_rows()
                        .iter()
                        .map(|r| b.format(&b.element(lv.level, r.clone())))
                        .collect(),
                })
                .collect(),
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

fn build_level(b: &Burnside, generators: &[(BurnsideElement, String)], l: Subgroup) -> IdealLevel {
    let g = b.group();
    let glat = b.lattice();
    let llat = b.ring(l).lattice();
    let mut plain: Vec<NamedGenerator> = Vec::new();
    let mut multiplied: Vec<NamedGenerator> = Vec::new();
    for (src, (x, xname)) in generators.iter().enumerate() {
        let k = x.level();
        let ck = glat.class_of(k);
        for mi in 0..llat.len() {
            let m = llat.rep(mi);
            let mring = b.ring(m);
            let mlat = mring.lattice();
            for ki in 0..mlat.len() {
                let kp = mlat.rep(ki);
                if !glat.subconjugate(glat.class_of(kp), ck) {
                    continue;
                }
                let mut seen: Vec<BurnsideElement> = Vec::new();
                for conj in 0..g.order() {
                    let source = g.conjugate(conj, k);
                    if !kp.is_subset_of(source) {
                        continue;
                    }
                    let v = b.res(&b.conj(x, conj), kp).expect("contained");
                    if seen.contains(&v) {
                        continue;
                    }
                    seen.push(v.clone());
                    if v.is_zero() {
                        continue;
                    }
                    let n = b.nm(&v, m).expect("contained");
                    let path = |multiplier| GeneratorPath {
                        source: src,
                        conj,
                        restrict_to: kp,
                        norm_to: m,
                        multiplier,
                        transfer_to: l,
                    };
                    let p = path(None);
                    plain.push(NamedGenerator {
                        element: b.tr(&n, l).expect("contained"),
                        name: path_name(b, &p, k, xname),
                        path: p,
                    });
                    for o in 0..mring.rank() - 1 {
                        let orbit = b.element(m, unit(mring.rank(), o));
                        let p = path(Some(o));
                        multiplied.push(NamedGenerator {
                            element: b.tr(&b.mul(&orbit, &n).expect("same level"), l).expect("contained"),
                            name: path_name(b, &p, k, xname),
                            path: p,
                        });
                    }
                }
            }
        }
    }
    let mut generators: Vec<NamedGenerator> = Vec::new();
    for cand in plain.into_iter().chain(multiplied) {
        if !cand.element.is_zero() && !generators.iter().any(|g| g.element == cand.element) {
            generators.push(cand);
        }
    }
    let rank = b.ring(l).rank();
    let mut selected = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut lattice = IntLattice::zero(rank);
    for (i, gen) in generators.iter().enumerate() {
        if !lattice.contains(gen.element.coeffs()) {
            rows.push(gen.element.coeffs().to_vec());
            selected.push(i);
            lattice = IntLattice::from_vectors(rank, &rows);
        }
    }
    IdealLevel { level: l, generators, selected, lattice }
}

/// E.g. `tr_{I}^{Q8} nm_{C2}^{I}(t - 2)`.
fn path_name(b: &Burnside, p: &GeneratorPath, k: Subgroup, xname: &str) -> String {
    let g = b.group();
    let d = |s: Subgroup| b.describe(s);
    let source = g.conjugate(p.conj, k);
    let mut s = format!("({xname})");
    if source != k {
        s = format!("c_{}{s}", g.element_name(p.conj));
    }
    if p.restrict_to != source {
        s = format!("res^{{{}}}_{{{}}}{s}", d(source), d(p.restrict_to));
    }
    if p.norm_to != p.restrict_to {
        s = format!("nm_{{{}}}^{{{}}}{s}", d(p.restrict_to), d(p.norm_to));
    }
    if let Some(o) = p.multiplier {
        let ring = b.ring(p.norm_to);
        s = format!("[{}/{}]·{s}", ring.label(), ring.lattice().label(o));
        if p.transfer_to != p.norm_to {
            s = format!("({s})");
        }
    }
    if p.transfer_to != p.norm_to {
        s = format!("tr_{{{}}}^{{{}}}{}{s}", d(p.norm_to), d(p.transfer_to), if s.starts_with('(') { "" } else { " " });
    }
    s
}

/// Check counts and failure messages, grouped by kind.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub counts: BTreeMap<String, (usize, usize)>,
    pub failures: Vec<String>,
}

impl ClosureReport {
    fn record(&mut self, kind: &str, ok: bool, msg: impl FnOnce() -> String) {
        let e = self.counts.entry(kind.to_string()).or_default();
        e.0 += 1;
        if !ok {
            e.1 += 1;
            if self.failures.len() < 50 {
                self.failures.push(msg());
            }
        }
    }

    fn merge(&mut self, other: ClosureReport) {
        for (k, (n, f)) in other.counts {
            let e = self.counts.entry(k).or_default();
            e.0 += n;
            e.1 += f;
        }
        self.failures.extend(other.failures);
    }

    pub fn checks(&self) -> usize {
        self.counts.values().map(|c| c.0).sum()
    }

    pub fn failure_count(&self) -> usize {
        self.counts.values().map(|c| c.1).sum()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealJson {
    pub group: String,
    pub generators: Vec<(String, ElementJson)>,
    pub levels: Vec<LevelIdealJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelIdealJson {
    pub level: String,
    pub generators: Vec<GeneratorJson>,
    pub hnf_basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorJson {
    pub name: String,
    pub element: String,
    pub selected: bool,
}

/// Generators for the quotient at each level.
#[derive(Clone, Debug, Default)]
pub enum BasisChoice {
    /// `1` first, then elements `[L/P] - |L:P|`, chosen by a depth-first search.
    #[default]
    Default,
    /// Labelled lifts per level label; levels not listed use the default search.
    Explicit(Vec<(String, Vec<(String, BurnsideElement)>)>),
}

/// Name for a lift: `1`, `u_P` for `[L/P] - |L:P|`, otherwise the element itself.
pub fn auto_label(b: &Burnside, x: &BurnsideElement) -> String {
    if *x == b.one(x.level()) {
        return "1".into();
    }
    let ring = b.ring(x.level());
    let n = ring.rank();
    let idx = x.level().order();
    for p in 0..n - 1 {
        let mut c = unit(n, p);
        c[n - 1] = -BigInt::from(idx / ring.lattice().rep(p).order());
        if x.coeffs() == c.as_slice() {
            return format!("u_{}", ring.lattice().label(p));
        }
    }
    b.format(x)
}

#[derive(Clone, Debug)]
pub struct QuotientLevel {
    pub presentation: AbelianPresentation,
    pub labels: Vec<String>,
}

/// `A/I` with its Mackey structure, ring structure constants and norms on demand.
pub struct QuotientTambara {
    burnside: Arc<Burnside>,
    levels: Vec<QuotientLevel>,
    mackey: MackeyPresentation,
}

impl QuotientTambara {
    pub fn new(ideal: &TambaraIdeal, basis: &BasisChoice) -> Result<Self> {
        let b = Arc::clone(ideal.burnside());
        let lat = b.lattice();
        let mut levels = Vec::with_capacity(lat.len());
        for c in 0..lat.len() {
            let l = lat.rep(c);
            let il = ideal.level(c).lattice();
            let explicit = match basis {
                BasisChoice::Explicit(v) => v.iter().find(|(label, _)| label == lat.label(c)),
                BasisChoice::Default => None,
            };
            let level = match explicit {
                Some((label, lifts)) => {
                    let base = quotient_presentation(il);
                    let vecs: Vec<Vec<BigInt>> = lifts.iter().map(|(_, x)| x.coeffs().to_vec()).collect();
                    if lifts.iter().any(|(_, x)| x.level() != l) {
                        return Err(Error::BadBasis(format!("{label}: lift at the wrong level")));
                    }
                    let orders: Vec<BigInt> = vecs
                        .iter()
                        .map(|v| element_order(&base.project(v), &base.invariants).unwrap_or_default())
                        .collect();
                    let pres = rebase(il, &vecs, &orders).ok_or_else(|| Error::BadBasis(label.clone()))?;
                    QuotientLevel { presentation: pres, labels: lifts.iter().map(|(n, _)| n.clone()).collect() }
                }
                None => default_basis(&b, l, il),
            };
            levels.push(level);
        }
        // the structure maps must descend to the quotient
        for c in 0..lat.len() {
            let l = lat.rep(c);
            let basis = ideal.basis_at(l);
            for s in b.group().subgroups().iter().copied().filter(|s| s.is_subset_of(l)) {
                for v in &basis {
                    if !ideal.contains(&b.res(v, s)?) {
                        return Err(Error::NotWellDefined(format!("res {} → {}", lat.label(c), b.describe(s))));
                    }
                }
                for w in ideal.basis_at(s) {
                    if !ideal.contains(&b.tr(&w, l)?) {
                        return Err(Error::NotWellDefined(format!("tr {} → {}", b.describe(s), lat.label(c))));
                    }
                }
            }
        }
        let values: Vec<LevelValue> = levels
            .iter()
            .map(|q| LevelValue { orders: q.presentation.invariants.clone(), labels: q.labels.clone() })
            .collect();
        let lift = |c: usize, j: usize| b.element(lat.rep(c), q_lift(&levels[c], j));
        let project = |x: &BurnsideElement| {
            let y = b.to_rep_level(x);
            levels[lat.class_of(y.level())].presentation.project(y.coeffs())
        };
        let columns = |rows: usize, cols: Vec<Vec<BigInt>>| IntMatrix::from_columns(rows, &cols);
        let ngens = |c: usize| levels[c].presentation.ngens();
        let mackey = MackeyPresentation::from_fns(
            Arc::clone(b.group()),
            format!("A/⟨{}⟩", ideal.generator_names().join(", ")),
            values,
            |c, s| {
                let cols = (0..ngens(c)).map(|j| project(&b.res(&lift(c, j), s).expect("contained"))).collect();
                columns(ngens(lat.class_of(s)), cols)
            },
            |c, s| {
                let d = lat.class_of(s);
                let cols = (0..ngens(d))
                    .map(|j| project(&b.tr(&b.from_rep_level(&lift(d, j), s), lat.rep(c)).expect("contained")))
                    .collect();
                columns(ngens(c), cols)
            },
            |c, n| {
                let cols = (0..ngens(c)).map(|j| project(&b.conj(&lift(c, j), n))).collect();
                columns(ngens(c), cols)
            },
        );
        let ring = RingData {
            one: (0..lat.len()).map(|c| project(&b.one(lat.rep(c)))).collect(),
            products: (0..lat.len())
                .map(|c| {
                    (0..ngens(c))
                        .map(|i| (0..ngens(c)).map(|j| project(&b.mul(&lift(c, i), &lift(c, j)).expect("same level"))).collect())
                        .collect()
                })
                .collect(),
        };
        let mackey = mackey.with_ring(ring).validated()?;
        Ok(QuotientTambara { burnside: b, levels, mackey })
    }

    pub fn mackey(&self) -> &MackeyPresentation {
        &self.mackey
    }

    pub fn levels(&self) -> &[QuotientLevel] {
        &self.levels
    }

    pub fn burnside(&self) -> &Arc<Burnside> {
        &self.burnside
    }

    /// Image of a Burnside element in the quotient, in the coordinates of its class.
    pub fn project(&self, x: &BurnsideElement) -> Vec<BigInt> {
        let y = self.burnside.to_rep_level(x);
        self.levels[self.burnside.lattice().class_of(y.level())].presentation.project(y.coeffs())
    }

    /// A Burnside element at the class representative mapping to `coords`.
    pub fn lift(&self, c: usize, coords: &[BigInt]) -> BurnsideElement {
        let l = self.burnside.lattice().rep(c);
        self.burnside.element(l, self.levels[c].presentation.lift(coords))
    }

    /// `nm_S^H` on the quotient, computed on a lift; `coords` are in the
    /// coordinates of `S`'s class, the result in those of `H`'s class.
    pub fn norm(&self, s: Subgroup, h: Subgroup, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        let b = &self.burnside;
        let c = b.lattice().class_of(s);
        let x = b.from_rep_level(&self.lift(c, coords), s);
        Ok(self.project(&b.nm(&x, h)?))
    }
}

fn q_lift(level: &QuotientLevel, j: usize) -> Vec<BigInt> {
    level.presentation.lifts.column(j)
}

/// Depth-first search for generators among `1` and `[L/P] - |L:P|`;
/// falls back to the Smith-form generators.
fn default_basis(b: &Burnside, l: Subgroup, il: &IntLattice) -> QuotientLevel {
    let base = quotient_presentation(il);
    let ring = b.ring(l);
    let n = ring.rank();
    let mut cands: Vec<(String, Vec<BigInt>)> = vec![("1".into(), unit(n, n - 1))];
    for p in 0..n - 1 {
        let mut c = unit(n, p);
        c[n - 1] = -BigInt::from(l.order() / ring.lattice().rep(p).order());
        cands.push((format!("u_{}", ring.lattice().label(p)), c));
    }
    let orders: Vec<Option<BigInt>> =
        cands.iter().map(|(_, v)| element_order(&base.project(v), &base.invariants)).collect();
    let want: Vec<Option<BigInt>> = base.invariants.iter().map(|d| (!d.is_zero()).then(|| d.clone())).collect();
    let mut chosen = Vec::new();
    if search(il, &cands, &orders, &want, &base.invariants, &mut chosen) {
        let lifts: Vec<Vec<BigInt>> = chosen.iter().map(|&i| cands[i].1.clone()).collect();
        let pres = rebase(il, &lifts, &base.invariants).expect("search verified the basis");
        return QuotientLevel { presentation: pres, labels: chosen.iter().map(|&i| cands[i].0.clone()).collect() };
    }
    let labels = (0..base.ngens())
        .map(|j| {
            let x = b.element(l, base.lifts.column(j));
            auto_label(b, &x)
        })
        .collect();
    QuotientLevel { presentation: base, labels }
}

fn search(
    il: &IntLattice,
    cands: &[(String, Vec<BigInt>)],
    orders: &[Option<BigInt>],
    want: &[Option<BigInt>],
    invariants: &[BigInt],
    chosen: &mut Vec<usize>,
) -> bool {
    let pos = chosen.len();
    if pos == want.len() {
        let lifts: Vec<Vec<BigInt>> = chosen.iter().map(|&i| cands[i].1.clone()).collect();
        return rebase(il, &lifts, invariants).is_some();
    }
    for i in 0..cands.len() {
        if chosen.contains(&i) || orders[i] != want[pos] {
            continue;
        }
        // keep candidates in increasing order within a run of equal orders
        if pos > 0 && want[pos - 1] == want[pos] && chosen[pos - 1] > i {
            continue;
        }
        chosen.push(i);
        if search(il, cands, orders, want, invariants, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
