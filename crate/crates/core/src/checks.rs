//! Named identities about the quaternion group's Burnside Tambara functor,
//! each recomputed from scratch and compared with its expected value.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::burnside::{Burnside, BurnsideElement};
use crate::error::{Error, Result};
use crate::fixtures::{constant_z, fixture};
use crate::group::{Group, Quotient, Subgroup};
use crate::ideal::{BasisChoice, QuotientTambara, TambaraIdeal};
use crate::linalg::{IntLattice, IntMatrix};
use crate::mackey::{check_exact, compare, MackeyMap, MackeyPresentation};
use crate::par::Exec;

type Outcome = std::result::Result<(), String>;

pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    run: fn() -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub detail: Option<String>,
}

pub const CHECKS: &[Check] = &[
    Check { id: "c4-norm", description: "nm_C2^C4(t - 2) = -[C4/e] + 3[C4/C2] - 2, with nm(2) and nm(-1)", run: c4_norm },
    Check { id: "c2-maps", description: "res_e^C2(t - 2) = 0, nm_e^C2(2) = 2 + t, transfers of t - 2", run: c2_maps },
    Check {
        id: "q8-norm",
        description: "nm_C2^Q8(t - 2) by marks agrees with nm_I^Q8 nm_C2^I(t - 2) by the index-2 sum formula",
        run: q8_norm,
    },
    Check { id: "q8-ideal-top", description: "the top level of the ideal is spanned by the five listed generators", run: q8_ideal_top },
    Check {
        id: "c4-quotient",
        description: "the ideal is the augmentation ideal at I, J, K, with witnesses (1, 1) and (3, 2)",
        run: c4_quotient,
    },
    Check {
        id: "q8-quotient-ring",
        description: "top quotient Z ⊕ Z/2 ⊕ Z/2, its ring relations, and the kernel generators r1..r5",
        run: q8_quotient_ring,
    },
    Check { id: "nz-diagram", description: "the quotient Mackey functor equals the NZ diagram", run: nz_diagram },
    Check { id: "nz-norms", description: "norms from the C4 levels of the quotient: 1 ↦ 1, 0 ↦ 0, sum formula", run: nz_norms },
    Check { id: "c2-example", description: "the ideal generated by 2 at e for C2 and its quotient Z/2, Z/4", run: c2_example },
    Check { id: "c4-restriction", description: "the quotient restricted to I, J, K is constant Z", run: c4_restriction },
    Check { id: "fixed-points-top", description: "Φ^Q8 of NZ is Z/2", run: fixed_points_top },
    Check {
        id: "fixed-points-c2",
        description: "Φ^C2 of NZ matches the C2×C2 quotient by the ideal generated by 2 at e",
        run: fixed_points_c2,
    },
    Check { id: "main-sequence", description: "inflF2^2 → NZ → constZ is short exact at every level", run: main_sequence },
    Check { id: "catalogue", description: "every catalogue functor satisfies the Mackey axioms; mg and mg* differ", run: catalogue },
];

/// Runs the checks with the given ids (all when `only` is empty).
pub fn run_checks(only: &[String]) -> Result<Vec<CheckResult>> {
    for id in only {
        if !CHECKS.iter().any(|c| c.id == id) {
            return Err(Error::UnknownCheck(id.clone()));
        }
    }
    Ok(CHECKS
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| o == c.id))
        .map(|c| {
            let outcome = (c.run)();
            CheckResult {
                id: c.id.to_string(),
                description: c.description.to_string(),
                passed: outcome.is_ok(),
                detail: outcome.err(),
            }
        })
        .collect())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_eq(b: &Burnside, got: &BurnsideElement, want: &str, what: &str) -> Outcome {
    let want_el = b.parse(got.level(), want).map_err(|e| e.to_string())?;
    ensure(*got == want_el, || format!("{what}: got {}, expected {want}", b.format(got)))
}

fn e<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q8_burnside() -> Arc<Burnside> {
    Burnside::new(Group::builtin("Q8").expect("builtin"))
}

fn level(b: &Burnside, label: &str) -> Subgroup {
    b.subgroup(label).expect("standard label")
}

/// The ideal generated by `t - 2` at `C2`, over `Q8`.
pub fn q8_ideal(b: &Arc<Burnside>, exec: Exec) -> TambaraIdeal {
    let c2 = level(b, "C2");
    let x = b.parse(c2, "t - 2").expect("valid element");
    TambaraIdeal::generated_by(b, &[(x, "t - 2".into())], exec)
}

/// The quotient by [`q8_ideal`] on the generators `1, [Q8/I] - 2, [Q8/K] - 2` at the top.
pub fn nz_quotient(b: &Arc<Burnside>, ideal: &TambaraIdeal) -> Result<QuotientTambara> {
    let q = b.group().whole();
    let lifts = vec![
        ("1".to_string(), b.one(q)),
        ("u_I".to_string(), b.parse(q, "[Q8/I] - 2")?),
        ("u_K".to_string(), b.parse(q, "[Q8/K] - 2")?),
    ];
    QuotientTambara::new(ideal, &BasisChoice::Explicit(vec![("Q8".into(), lifts)]))
}

fn c4_norm() -> Outcome {
    let b = Burnside::new(e(Group::builtin("C4"))?);
    let c2 = level(&b, "C2");
    let c4 = b.group().whole();
    expect_eq(&b, &e(b.nm(&e(b.parse(c2, "t - 2"))?, c4))?, "-[C4/e] + 3[C4/C2] - 2", "nm(t - 2)")?;
    expect_eq(&b, &e(b.nm(&b.integer(c2, 2), c4))?, "2 + [C4/C2]", "nm(2)")?;
    expect_eq(&b, &e(b.nm(&b.integer(c2, -1), c4))?, "[C4/C2] - 1", "nm(-1)")
}

fn c2_maps() -> Outcome {
    let b = Burnside::new(e(Group::builtin("C2"))?);
    let (e1, c2) = (b.group().trivial(), b.group().whole());
    let x = e(b.parse(c2, "t - 2"))?;
    ensure(e(b.res(&x, e1))?.is_zero(), || "res_e(t - 2) is not 0".into())?;
    expect_eq(&b, &e(b.nm(&b.integer(e1, 2), c2))?, "2 + t", "nm_e^C2(2)")?;
    let q = q8_burnside();
    let y = e(q.parse(level(&q, "C2"), "t - 2"))?;
    expect_eq(&q, &e(q.tr(&y, q.group().whole()))?, "[Q8/e] - 2[Q8/C2]", "tr_C2^Q8(t - 2)")?;
    let c4 = Burnside::new(e(Group::builtin("C4"))?);
    let z = e(c4.parse(level(&c4, "C2"), "t - 2"))?;
    expect_eq(&c4, &e(c4.tr(&z, c4.group().whole()))?, "[C4/e] - 2[C4/C2]", "tr_C2^C4(t - 2)")
}

/// `nm_I^Q8` by repeated use of `nm(a + b) = nm(a) + nm(b) + tr(ab)`, from
/// its values on the orbits of `I`.
fn norm_by_sum_formula(b: &Burnside, x: &BurnsideElement, top: Subgroup, on_orbit: &[BurnsideElement]) -> BurnsideElement {
    let i = x.level();
    let tr = |y: &BurnsideElement| b.tr(y, top).expect("contained");
    let mul = |p: &BurnsideElement, q: &BurnsideElement| b.mul(p, q).expect("same level");
    // nm(-o) from nm(o) + nm(-o) + tr(-o·o) = nm(0) = 0
    let norm_neg = |o: &BurnsideElement, n: &BurnsideElement| &tr(&mul(o, o)) - n;
    let mut acc_el = b.zero(i);
    let mut acc_nm = b.zero(top);
    for (k, c) in x.coeffs().iter().enumerate() {
        let mut unit = b.zero(i).coeffs().to_vec();
        unit[k] = BigInt::from(1);
        let o = b.element(i, unit);
        let (term, term_nm) = if c < &BigInt::zero() {
            (-&o, norm_neg(&o, &on_orbit[k]))
        } else {
            (o, on_orbit[k].clone())
        };
        let mut n = c.magnitude().clone();
        while !n.is_zero() {
            acc_nm = &(&acc_nm + &term_nm) + &tr(&mul(&acc_el, &term));
            acc_el = &acc_el + &term;
            n -= 1u32;
        }
    }
    acc_nm
}

fn q8_norm() -> Outcome {
    let b = q8_burnside();
    let (c2, i, q) = (level(&b, "C2"), level(&b, "I"), b.group().whole());
    let x = e(b.parse(c2, "t - 2"))?;
    let want = "-2[Q8/e] + 3[Q8/I] + 3[Q8/J] + 3[Q8/K] - 2";
    expect_eq(&b, &e(b.nm(&x, q))?, want, "nm_C2^Q8 by marks")?;
    let mid = e(b.nm(&x, i))?;
    expect_eq(&b, &mid, "-[I/e] + 3[I/C2] - 2", "nm_C2^I(t - 2)")?;
    let on_orbit = [e(b.parse(q, "2[Q8/e]"))?, e(b.parse(q, "[Q8/J] + [Q8/K]"))?, b.one(q)];
    for (k, want) in on_orbit.iter().enumerate() {
        let mut unit = vec![BigInt::zero(); 3];
        unit[k] = 1.into();
        ensure(e(b.nm(&b.element(i, unit), q))? == *want, || format!("nm_I^Q8 of orbit {k} disagrees with orbit counting"))?;
    }
    expect_eq(&b, &norm_by_sum_formula(&b, &mid, q, &on_orbit), want, "nm_I^Q8 by the sum formula")
}

fn q8_ideal_top() -> Outcome {
    let b = q8_burnside();
    let ideal = q8_ideal(&b, Exec::default());
    let q = b.group().whole();
    let listed = [
        "-2[Q8/e] + 3[Q8/I] + 3[Q8/J] + 3[Q8/K] - 2",
        "[Q8/e] - 2[Q8/C2]",
        "-[Q8/e] + 3[Q8/C2] - 2[Q8/I]",
        "-[Q8/e] + 3[Q8/C2] - 2[Q8/J]",
        "-[Q8/e] + 3[Q8/C2] - 2[Q8/K]",
    ];
    let rows: Vec<Vec<BigInt>> = listed.iter().map(|s| b.parse(q, s).map(|x| x.coeffs().to_vec())).collect::<Result<_>>().map_err(|e| e.to_string())?;
    let want = IntLattice::from_vectors(6, &rows);
    ensure(*ideal.lattice_at(q) == want, || "top lattice differs from the span of the listed generators".into())?;
    let top = ideal.level_of(q);
    let tr_j = top.generators().iter().find(|g| g.name == "tr_{J}^{Q8} nm_{C2}^{J}(t - 2)").ok_or("missing tr_J nm_J generator")?;
    expect_eq(&b, &tr_j.element, listed[3], "tr_J^Q8 nm_C2^J(t - 2)")
}

fn c4_quotient() -> Outcome {
    let b = q8_burnside();
    let ideal = q8_ideal(&b, Exec::default());
    let quotient = e(nz_quotient(&b, &ideal))?;
    for h in ["I", "J", "K"] {
        let s = level(&b, h);
        let aug = IntLattice::kernel(&IntMatrix::from_rows(3, vec![orbit_sizes(&b, s)]), &[BigInt::zero()]);
        ensure(*ideal.lattice_at(s) == aug, || format!("{h}: not the augmentation ideal"))?;
        let v = quotient.mackey().value_at(h).ok_or("missing level")?;
        ensure(v.describe() == "Z", || format!("{h}: quotient is {}", v.describe()))?;
        for (x, want) in [(format!("[{h}/C2] - 2"), [1, 1]), (format!("[{h}/e] - 4"), [3, 2])] {
            let w = ideal.membership(&e(b.parse(s, &x))?).ok_or_else(|| format!("{x} is not in the ideal"))?;
            let tr = w.coefficient(&format!("tr_{{C2}}^{{{h}}}(t - 2)"));
            let nm = w.coefficient(&format!("nm_{{C2}}^{{{h}}}(t - 2)"));
            ensure(w.terms.len() == 2 && tr == want[0].into() && nm == want[1].into(), || format!("{x}: witness {w}"))?;
        }
    }
    Ok(())
}

/// Cardinality of each orbit of `level`.
fn orbit_sizes(b: &Burnside, level: Subgroup) -> Vec<BigInt> {
    let ring = b.ring(level);
    (0..ring.rank()).map(|k| BigInt::from(level.order() / ring.lattice().rep(k).order())).collect()
}

fn q8_quotient_ring() -> Outcome {
    let b = q8_burnside();
    let ideal = q8_ideal(&b, Exec::default());
    let quotient = e(nz_quotient(&b, &ideal))?;
    let q = b.group().whole();
    let m = quotient.mackey();
    let top = m.value_at("Q8").ok_or("missing top level")?;
    ensure(top.describe() == "Z ⊕ Z/2 ⊕ Z/2", || format!("top level is {}", top.describe()))?;
    let ring = m.ring().ok_or("no ring data")?;
    let c = m.lattice().top();
    let zero = vec![BigInt::zero(); 3];
    for (i, j) in [(1, 1), (2, 2), (1, 2)] {
        ensure(ring.products[c][i][j] == zero, || format!("product of generators {i}, {j} is nonzero"))?;
    }
    ensure(top.orders[1] == 2.into() && top.orders[2] == 2.into(), || "u_I, u_K do not have order 2".into())?;
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    ensure(quotient.project(&e(b.parse(q, "[Q8/J]"))?) == big(&[2, 1, 1]), || "[Q8/J] does not map to u_I + u_K + 2".into())?;
    // q on the orbit basis e, C2, I, J, K, 1
    let qmap = IntMatrix::from_i64(&[&[8, 4, 2, 2, 2, 1], &[0, 0, 1, 1, 0, 0], &[0, 0, 0, 1, 1, 0]]);
    let kernel = IntLattice::kernel(&qmap, &big(&[0, 2, 2]));
    ensure(kernel == *ideal.lattice_at(q), || "kernel of q differs from the ideal".into())?;
    let rs: [(&str, [i64; 5]); 5] = [
        ("[Q8/e] - 2[Q8/C2]", [1, 0, 0, 0, 0]),
        ("[Q8/C2] - 2[Q8/I]", [1, 1, 0, 0, 0]),
        ("2[Q8/I] - 4", [12, 2, 3, 3, 2]),
        ("2[Q8/K] - 4", [12, 3, 3, 2, 2]),
        ("[Q8/I] + [Q8/J] + [Q8/K] - 6", [18, 4, 4, 4, 3]),
    ];
    let names = [
        "tr_{C2}^{Q8}(t - 2)",
        "tr_{I}^{Q8} nm_{C2}^{I}(t - 2)",
        "tr_{J}^{Q8} nm_{C2}^{J}(t - 2)",
        "tr_{K}^{Q8} nm_{C2}^{K}(t - 2)",
        "nm_{C2}^{Q8}(t - 2)",
    ];
    for (k, (r, want)) in rs.iter().enumerate() {
        let x = e(b.parse(q, r))?;
        ensure(kernel.contains(x.coeffs()), || format!("r{} is not in the kernel of q", k + 1))?;
        let w = ideal.membership(&x).ok_or_else(|| format!("r{} is not in the ideal", k + 1))?;
        let got: Vec<BigInt> = names.iter().map(|n| w.coefficient(n)).collect();
        ensure(got == big(want), || format!("r{}: witness {w}", k + 1))?;
    }
    Ok(())
}

fn nz_diagram() -> Outcome {
    let b = q8_burnside();
    let ideal = q8_ideal(&b, Exec::default());
    let quotient = e(nz_quotient(&b, &ideal))?;
    let cmp = compare(quotient.mackey(), &e(fixture("NZ"))?, None);
    ensure(cmp.matches(), || cmp.mismatches.join("; "))
}

fn nz_norms() -> Outcome {
    let b = q8_burnside();
    let ideal = q8_ideal(&b, Exec::default());
    let quotient = e(nz_quotient(&b, &ideal))?;
    let q = b.group().whole();
    let one = vec![BigInt::from(1), BigInt::zero(), BigInt::zero()];
    for h in ["I", "J", "K"] {
        let s = level(&b, h);
        ensure(e(quotient.norm(s, q, &[1.into()]))? == one, || format!("nm_{h}(1) is not 1"))?;
        ensure(e(quotient.norm(s, q, &[0.into()]))?.iter().all(Zero::is_zero), || format!("nm_{h}(0) is not 0"))?;
        let tr = quotient.mackey().tr_matrix(s, q).clone();
        for a in -3i64..=3 {
            for c in -3i64..=3 {
                let lhs = e(quotient.norm(s, q, &[(a + c).into()]))?;
                let mut rhs = e(quotient.norm(s, q, &[a.into()]))?;
                let nc = e(quotient.norm(s, q, &[c.into()]))?;
                let t = tr.mul_vec(&[BigInt::from(a * c)]);
                for k in 0..3 {
                    rhs[k] += &nc[k] + &t[k];
                }
                let rhs = quotient.mackey().value_at("Q8").ok_or("missing top level")?.reduce(&rhs);
                ensure(lhs == rhs, || format!("sum formula fails for nm_{h}({a} + {c})"))?;
            }
        }
    }
    Ok(())
}

fn c2_example() -> Outcome {
    let b = Burnside::new(e(Group::builtin("C2"))?);
    let (e1, c2) = (b.group().trivial(), b.group().whole());
    let ideal = TambaraIdeal::principal(&b, &b.integer(e1, 2));
    let want = IntLattice::from_vectors(2, &[e(b.parse(c2, "2 + t"))?.coeffs().to_vec(), e(b.parse(c2, "2t"))?.coeffs().to_vec()]);
    ensure(*ideal.lattice_at(c2) == want, || "level C2 is not (2 + t, 2t)".into())?;
    ensure(*ideal.lattice_at(e1) == IntLattice::from_vectors(1, &[vec![2.into()]]), || "level e is not (2)".into())?;
    let quotient = e(QuotientTambara::new(&ideal, &BasisChoice::Default))?;
    let m = quotient.mackey();
    ensure(m.values()[0].describe() == "Z/2" && m.values()[1].describe() == "Z/4", || "levels are not Z/2, Z/4".into())?;
    let res = m.res_matrix(c2, e1);
    let tr = m.tr_matrix(e1, c2);
    ensure(res == IntMatrix::from_i64(&[&[1]]), || format!("res is {res:?}"))?;
    ensure(tr == IntMatrix::from_i64(&[&[2]]), || format!("tr is {tr:?}"))
}

fn c4_restriction() -> Outcome {
    let b = q8_burnside();
    let ideal = q8_ideal(&b, Exec::default());
    let quotient = e(nz_quotient(&b, &ideal))?;
    for h in ["I", "J", "K"] {
        let r = e(quotient.mackey().restrict(level(&b, h)))?;
        let cmp = compare(&r, &constant_z(Arc::clone(r.group())), None);
        ensure(cmp.matches(), || format!("{h}: {}", cmp.mismatches.join("; ")))?;
    }
    Ok(())
}

fn fixed_points_top() -> Outcome {
    let nz = e(fixture("NZ"))?;
    let fp = e(nz.geometric_fixed_points(nz.group().whole()))?;
    let v = &fp.functor.values()[0];
    ensure(v.describe() == "Z/2", || format!("Φ^Q8 NZ is {}", v.describe()))
}

/// `[K/L] ↦ [(K/N)/(L/N)]` when `N ≤ L`, and `0` otherwise.
pub fn fixed_point_map(b: &Burnside, target: &Burnside, q: &Quotient, x: &BurnsideElement) -> BurnsideElement {
    let k = x.level();
    let kb = q.image(k);
    let src = b.ring(k).lattice();
    let dst = target.ring(kb).lattice();
    let mut coeffs = target.zero(kb).coeffs().to_vec();
    for (i, c) in x.coeffs().iter().enumerate() {
        let l = src.rep(i);
        if q.normal.is_subset_of(l) {
            coeffs[dst.class_of(q.image(l))] += c;
        }
    }
    target.element(kb, coeffs)
}

fn fixed_points_c2() -> Outcome {
    let b = q8_burnside();
    let nz = e(fixture("NZ"))?;
    let c2 = level(&b, "C2");
    let fp = e(nz.geometric_fixed_points(c2))?;
    let qg = Arc::clone(&fp.quotient.group);
    let klein = e(Group::builtin("C2xC2"))?;
    ensure(qg.type_name(qg.whole()) == klein.type_name(klein.whole()), || format!("Q8/C2 is {}", qg.type_name(qg.whole())))?;
    let bq = Burnside::new(Arc::clone(&qg));
    let gen = bq.integer(qg.trivial(), 2);
    let other = e(QuotientTambara::new(&TambaraIdeal::principal(&bq, &gen), &BasisChoice::Default))?;
    // lifts of the NZ generators to the Burnside functor
    let lat = b.lattice();
    let nz_lift = |k: Subgroup| -> Result<Vec<BurnsideElement>> {
        if k == b.group().whole() {
            Ok(vec![b.one(k), b.parse(k, "[Q8/I] - 2")?, b.parse(k, "[Q8/K] - 2")?])
        } else {
            Ok(vec![b.one(k)])
        }
    };
    let qlat = qg.lattice();
    let mut basis = Vec::with_capacity(qlat.len());
    for c in 0..qlat.len() {
        let k = fp.quotient.preimage(qlat.rep(c));
        debug_assert_eq!(lat.rep(lat.class_of(k)), k);
        let gens = e(nz_lift(k))?;
        let lifts = &fp.lifts[c];
        let cols: Vec<Vec<BigInt>> = (0..lifts.cols())
            .map(|j| {
                let col = lifts.column(j);
                let mut x = b.zero(k);
                for (g, a) in gens.iter().zip(&col) {
                    x = &x + &g.scale(a);
                }
                other.project(&fixed_point_map(&b, &bq, &fp.quotient, &x))
            })
            .collect();
        basis.push(IntMatrix::from_columns(other.mackey().values()[c].ngens(), &cols));
    }
    let cmp = compare(&fp.functor, other.mackey(), Some(&basis));
    ensure(cmp.matches(), || cmp.mismatches.join("; "))
}

/// `inflF2^2 → NZ → constZ`: the torsion summand at the top, then the augmentation.
pub fn main_sequence_maps(nz: &MackeyPresentation) -> (MackeyMap, MackeyMap) {
    let lat = nz.lattice();
    let top = lat.top();
    let f = MackeyMap {
        components: (0..lat.len())
            .map(|i| if i == top { IntMatrix::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]) } else { IntMatrix::zeros(1, 0) })
            .collect(),
    };
    let g = MackeyMap {
        components: (0..lat.len())
            .map(|i| if i == top { IntMatrix::from_i64(&[&[1, 0, 0]]) } else { IntMatrix::from_i64(&[&[1]]) })
            .collect(),
    };
    (f, g)
}

fn main_sequence() -> Outcome {
    let nz = e(fixture("NZ"))?;
    let (f, g) = main_sequence_maps(&nz);
    let r = e(check_exact(&e(fixture("inflF2^2"))?, &nz, &e(fixture("constZ"))?, &f, &g))?;
    ensure(r.is_short_exact(), || r.to_text())
}

fn catalogue() -> Outcome {
    for (name, _) in crate::fixtures::FIXTURES {
        let name = if *name == "inflF2^n" { "inflF2^2" } else { name };
        let m = e(fixture(name))?;
        let v = m.violations();
        ensure(v.is_empty(), || format!("{name}: {}", v.join("; ")))?;
    }
    ensure(!compare(&e(fixture("mg"))?, &e(fixture("mg*"))?, None).matches(), || "mg and mg* compare equal".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        for r in run_checks(&[]).unwrap() {
            assert!(r.passed, "{}: {:?}", r.id, r.detail);
        }
    }

    #[test]
    fn selection_by_id() {
        let r = run_checks(&["nz-diagram".into()]).unwrap();
        assert_eq!(r.len(), 1);
        assert!(run_checks(&["nope".into()]).is_err());
    }
}
