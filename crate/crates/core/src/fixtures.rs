//! Named Mackey functors: constant functors over any group and a catalogue of
//! quaternion-group functors given by their Lewis diagrams.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::IntMatrix;
use crate::mackey::{sign_outside, LevelValue, MackeyBuilder, MackeyPresentation, RingData};

/// Names accepted by [`fixture`], with a one-line description each.
pub const FIXTURES: &[(&str, &str)] = &[
    ("constZ", "constant Z: restrictions 1, transfers the index"),
    ("constZ*", "dual constant Z: restrictions the index, transfers 1"),
    ("constF2", "constant F2"),
    ("B30", "Z/8, Z/4 (x3), Z/2, 0; restrictions 1, transfers 2"),
    ("inflF2", "F2 at the top level, zero elsewhere"),
    ("inflF2^n", "F2^n at the top level, zero elsewhere (e.g. inflF2^2)"),
    ("phiIJK_f", "F2 at each index-2 level, zero elsewhere"),
    ("phiIJK_F2", "F2^3 at the top, F2 at each index-2 level; restrictions the projections"),
    ("phiIJK_F2*", "F2^3 at the top, F2 at each index-2 level; transfers the inclusions"),
    ("phiZ_B20", "Z/4 at the top, Z/2 at each index-2 level; restriction onto, transfer 2"),
    ("mg", "F2^2 at the top; restrictions p1, +, p2"),
    ("mg*", "F2^2 at the top; transfers i1, diagonal, i2"),
    ("mgw", "F2^2 at the top, sign-twisted Z/4 at each index-2 level, Z/2 at C2"),
    ("NZ", "the quotient of the Burnside functor by the ideal generated by t - 2 at C2"),
];

/// Constant `Z`: restriction 1, transfer multiplication by the index.
pub fn constant_z(group: Arc<Group>) -> MackeyPresentation {
    constant(group, "constZ", 0, false)
}

/// Dual constant `Z`: restriction multiplication by the index, transfer 1.
pub fn constant_z_dual(group: Arc<Group>) -> MackeyPresentation {
    constant(group, "constZ*", 0, true)
}

pub fn constant_f2(group: Arc<Group>) -> MackeyPresentation {
    constant(group, "constF2", 2, false)
}

fn constant(group: Arc<Group>, name: &str, order: i64, dual: bool) -> MackeyPresentation {
    let lat = group.lattice();
    let values = vec![LevelValue::with_labels(&[order], &["1"]); lat.len()];
    let scalar = |x: usize| IntMatrix::from_rows(1, vec![vec![BigInt::from(x)]]);
    let index = |c: usize, s: crate::group::Subgroup| lat.rep(c).order() / s.order();
    let ring = RingData {
        one: vec![vec![BigInt::from(1)]; lat.len()],
        products: vec![vec![vec![vec![BigInt::from(1)]]]; lat.len()],
    };
    let m = MackeyPresentation::from_fns(
        Arc::clone(&group),
        name,
        values,
        |c, s| scalar(if dual { index(c, s) } else { 1 }),
        |c, s| scalar(if dual { 1 } else { index(c, s) }),
        |_, _| IntMatrix::identity(1),
    );
    if dual {
        m
    } else {
        m.with_ring(ring)
    }
}

/// A catalogue entry. The quaternion entries are functors for `Q8`;
/// the constant functors use `Q8` as well (see [`constant_z`] for other groups).
pub fn fixture(name: &str) -> Result<MackeyPresentation> {
    let q8 = Group::builtin("Q8")?;
    let f2 = || LevelValue::with_labels(&[2], &["1"]);
    let mid = ["I", "J", "K"];
    match name {
        "constZ" => Ok(constant_z(q8)),
        "constZ*" => Ok(constant_z_dual(q8)),
        "constF2" => Ok(constant_f2(q8)),
        "B30" => {
            let mut b = MackeyBuilder::new(q8, name)
                .value("Q8", LevelValue::with_labels(&[8], &["1"]))
                .value("C2", LevelValue::with_labels(&[2], &["1"]));
            for h in mid {
                b = b
                    .value(h, LevelValue::with_labels(&[4], &["1"]))
                    .res("Q8", h, &[&[1]])
                    .tr(h, "Q8", &[&[2]])
                    .res(h, "C2", &[&[1]])
                    .tr("C2", h, &[&[2]]);
            }
            b.build()
        }
        "inflF2" => MackeyBuilder::new(q8, name).value("Q8", f2()).build(),
        "phiIJK_f" => {
            let mut b = MackeyBuilder::new(q8, name);
            for h in mid {
                b = b.value(h, f2());
            }
            b.build()
        }
        "phiIJK_F2" | "phiIJK_F2*" => {
            let dual = name.ends_with('*');
            let mut b = MackeyBuilder::new(q8, name).value("Q8", LevelValue::with_labels(&[2, 2, 2], &["e1", "e2", "e3"]));
            let rows: [&[i64]; 3] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]];
            for (i, h) in mid.into_iter().enumerate() {
                b = b.value(h, f2());
                if dual {
                    let col: Vec<&[i64]> = (0..3).map(|r| if r == i { &[1i64][..] } else { &[0i64][..] }).collect();
                    b = b.tr(h, "Q8", &col);
                } else {
                    b = b.res("Q8", h, &[rows[i]]);
                }
            }
            b.build()
        }
        "phiZ_B20" => {
            let mut b = MackeyBuilder::new(q8, name).value("Q8", LevelValue::with_labels(&[4], &["1"]));
            for h in mid {
                b = b.value(h, f2()).res("Q8", h, &[&[1]]).tr(h, "Q8", &[&[2]]);
            }
            b.build()
        }
        "mg" => MackeyBuilder::new(q8, name)
            .value("Q8", LevelValue::with_labels(&[2, 2], &["e1", "e2"]))
            .value("I", f2())
            .value("J", f2())
            .value("K", f2())
            .res("Q8", "I", &[&[1, 0]])
            .res("Q8", "J", &[&[1, 1]])
            .res("Q8", "K", &[&[0, 1]])
            .build(),
        "mg*" => MackeyBuilder::new(q8, name)
            .value("Q8", LevelValue::with_labels(&[2, 2], &["e1", "e2"]))
            .value("I", f2())
            .value("J", f2())
            .value("K", f2())
            .tr("I", "Q8", &[&[1], &[0]])
            .tr("J", "Q8", &[&[1], &[1]])
            .tr("K", "Q8", &[&[0], &[1]])
            .build(),
        "mgw" => {
            let g = Arc::clone(&q8);
            let lat = g.lattice();
            let mut b = MackeyBuilder::new(Arc::clone(&q8), name)
                .value("Q8", LevelValue::with_labels(&[2, 2], &["e1", "e2"]))
                .value("C2", f2());
            let res: [&[i64]; 3] = [&[2, 0], &[2, 2], &[0, 2]];
            let tr: [[&[i64]; 2]; 3] = [[&[0], &[1]], [&[1], &[1]], [&[1], &[0]]];
            for (i, h) in mid.into_iter().enumerate() {
                let sub = lat.rep(lat.find(h).expect("Q8 labels"));
                b = b
                    .value(h, LevelValue::with_labels(&[4], &["1"]))
                    .res("Q8", h, &[res[i]])
                    .tr(h, "Q8", &tr[i])
                    .res(h, "C2", &[&[1]])
                    .tr("C2", h, &[&[2]])
                    .weyl(h, sign_outside(&g, sub, 1));
            }
            b.build()
        }
        "NZ" => normed_constant_z(q8),
        _ => {
            if let Some(n) = name.strip_prefix("inflF2^").and_then(|n| n.parse::<usize>().ok()) {
                let labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
                let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
                return MackeyBuilder::new(q8, name).value("Q8", LevelValue::with_labels(&vec![2; n], &refs)).build();
            }
            Err(Error::UnknownFixture(name.to_string()))
        }
    }
}

/// The Lewis diagram of the norm of constant `Z` from `C2` to `Q8`, with its
/// ring structure on the generators `1, u_I, u_K` at the top.
fn normed_constant_z(q8: Arc<Group>) -> Result<MackeyPresentation> {
    let lat = q8.lattice();
    let z = || LevelValue::with_labels(&[0], &["1"]);
    let big = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let n = lat.len();
    let mut one = vec![big(&[1]); n];
    let mut products = vec![vec![vec![big(&[1])]]; n];
    let top = lat.top();
    one[top] = big(&[1, 0, 0]);
    let e = |i: usize| {
        let mut v = vec![0i64; 3];
        v[i] = 1;
        big(&v)
    };
    products[top] = (0..3)
        .map(|i| (0..3).map(|j| if i == 0 { e(j) } else if j == 0 { e(i) } else { big(&[0, 0, 0]) }).collect())
        .collect();
    let mut b = MackeyBuilder::new(Arc::clone(&q8), "NZ")
        .value("Q8", LevelValue::with_labels(&[0, 2, 2], &["1", "u_I", "u_K"]))
        .value("C2", z())
        .value("e", z())
        .res("C2", "e", &[&[1]])
        .tr("e", "C2", &[&[2]])
        .ring(RingData { one, products });
    let tr: [[&[i64]; 3]; 3] = [[&[2], &[1], &[0]], [&[2], &[1], &[1]], [&[2], &[0], &[1]]];
    for (i, h) in ["I", "J", "K"].into_iter().enumerate() {
        b = b
            .value(h, z())
            .res("Q8", h, &[&[1, 0, 0]])
            .tr(h, "Q8", &tr[i])
            .res(h, "C2", &[&[1]])
            .tr("C2", h, &[&[2]]);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::compare;

    #[test]
    fn every_fixture_is_a_mackey_functor() {
        for (name, _) in FIXTURES {
            let name = if *name == "inflF2^n" { "inflF2^3" } else { name };
            let m = fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(m.violations().is_empty(), "{name}: {:?}", m.violations());
        }
    }

    #[test]
    fn constant_functors_over_other_groups() {
        for g in ["C2", "C4", "C8", "C2xC2", "D8"] {
            let grp = Group::builtin(g).unwrap();
            for m in [constant_z(Arc::clone(&grp)), constant_z_dual(Arc::clone(&grp)), constant_f2(Arc::clone(&grp))] {
                assert!(m.violations().is_empty(), "{g} {}: {:?}", m.name(), m.violations());
            }
        }
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn dual_pairs_differ() {
        assert!(!compare(&fixture("mg").unwrap(), &fixture("mg*").unwrap(), None).matches());
        assert!(compare(&fixture("constZ").unwrap(), &fixture("constZ").unwrap(), None).matches());
    }

    #[test]
    fn mgw_rejects_trivial_weyl_action() {
        // with the sign action removed, res^Q8_I tr_I^Q8 would have to be 2, not 0
        let q8 = Group::builtin("Q8").unwrap();
        let bad = MackeyBuilder::new(q8, "bad")
            .value("Q8", LevelValue::with_labels(&[2, 2], &["e1", "e2"]))
            .value("I", LevelValue::with_labels(&[4], &["1"]))
            .res("Q8", "I", &[&[2, 0]])
            .tr("I", "Q8", &[&[0], &[1]])
            .build();
        assert!(bad.is_err());
    }
}
