//! Exact integer matrices: Hermite and Smith normal forms, integer lattices,
//! kernels of maps into products of cyclic groups, and presentations of
//! finitely generated abelian quotients.
//!
//! Everything is arbitrary precision. Matrices act on column vectors; lattices
//! are spanned by the rows of their basis matrix.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Concatenates `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Reduces row `i` modulo `moduli[i]` into `[0, m)`; a zero modulus leaves the row alone.
    pub fn reduce_rows(&self, moduli: &[BigInt]) -> IntMatrix {
        assert_eq!(moduli.len(), self.rows);
        let mut m = self.clone();
        for (i, d) in moduli.iter().enumerate() {
            if !d.is_zero() {
                for j in 0..m.cols {
                    m[(i, j)] = m[(i, j)].mod_floor(d);
                }
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form together with the unimodular transform.
pub struct HnfResult {
    /// Same shape as the input; the first `rank` rows are the HNF basis, the rest are zero.
    pub form: IntMatrix,
    /// `transform * input == form`.
    pub transform: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form: pivots strictly increase, are positive, and the
/// entries above each pivot lie in `[0, pivot)`.
pub fn hnf_with_transform(m: &IntMatrix) -> HnfResult {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..m.cols {
        if p == m.rows {
            break;
        }
        loop {
            let best = (p..m.rows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut clean = true;
            for r in p + 1..m.rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = -h[(r, col)].div_floor(&h[(p, col)]);
                h.add_row(r, p, &q);
                u.add_row(r, p, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for r in 0..p {
            let q = -h[(r, col)].div_floor(&h[(p, col)]);
            h.add_row(r, p, &q);
            u.add_row(r, p, &q);
        }
        pivots.push(col);
        p += 1;
    }
    HnfResult { form: h, transform: u, rank: p, pivots }
}

/// The nonzero rows of the Hermite normal form of `m`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let r = hnf_with_transform(m);
    IntMatrix::from_rows(m.cols, (0..r.rank).map(|i| r.form.row(i).to_vec()).collect())
}

#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`, zeros last.
    pub diag: Vec<BigInt>,
    /// Unimodular, `left * m * right` is diagonal.
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
}

pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap_rows(t, bi);
            left.swap_rows(t, bi);
            a.swap_cols(t, bj);
            right.swap_cols(t, bj);
            right_inv.swap_rows(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                right_inv.add_row(t, j, &-q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let pivot = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
    Snf { diag, left, right, right_inverse: right_inv }
}

/// A submodule of `Z^n`, stored by its row HNF basis, together with the
/// generators it was built from so membership can be certified.
#[derive(Clone, Debug)]
pub struct IntLattice {
    ambient_rank: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
    generators: IntMatrix,
    /// `transform * generators == basis`
    transform: IntMatrix,
}

impl IntLattice {
    pub fn from_generators(ambient_rank: usize, generators: IntMatrix) -> Self {
        assert_eq!(generators.cols(), ambient_rank);
        let h = hnf_with_transform(&generators);
        let basis = IntMatrix::from_rows(ambient_rank, (0..h.rank).map(|i| h.form.row(i).to_vec()).collect());
        let transform =
            IntMatrix::from_rows(generators.rows(), (0..h.rank).map(|i| h.transform.row(i).to_vec()).collect());
        IntLattice { ambient_rank, basis, pivots: h.pivots, generators, transform }
    }

    pub fn from_vectors(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> Self {
        Self::from_generators(ambient_rank, IntMatrix::from_rows(ambient_rank, vectors.to_vec()))
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::from_generators(ambient_rank, IntMatrix::zeros(0, ambient_rank))
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::from_generators(ambient_rank, IntMatrix::identity(ambient_rank))
    }

    /// The lattice `d_1 Z ⊕ ... ⊕ d_n Z` (a zero entry contributes nothing).
    pub fn diagonal(moduli: &[BigInt]) -> Self {
        let n = moduli.len();
        let rows = moduli
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = d.clone();
                r
            })
            .collect::<Vec<_>>();
        Self::from_vectors(n, &rows)
    }

    /// All `v` with `m * v ≡ 0` row-wise modulo `moduli` (modulus 0 means an exact equation).
    pub fn kernel(m: &IntMatrix, moduli: &[BigInt]) -> Self {
        assert_eq!(moduli.len(), m.rows(), "one modulus per row");
        let n = m.cols();
        let diag = IntMatrix::from_rows(
            m.rows(),
            (0..m.rows())
                .map(|i| (0..m.rows()).map(|j| if i == j { moduli[i].clone() } else { BigInt::zero() }).collect())
                .collect(),
        );
        // left kernel of [m | diag]^T
        let aug = m.hstack(&diag).transpose();
        let h = hnf_with_transform(&aug);
        let vectors: Vec<Vec<BigInt>> =
            (h.rank..aug.rows()).map(|i| h.transform.row(i)[..n].to_vec()).collect();
        Self::from_vectors(n, &vectors)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Coefficients `c` (one per generator) with `Σ c_i gen_i == v`, or `None`.
    pub fn member(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let coords = self.basis_coordinates(v)?;
        let k = self.generators.rows();
        let mut c = vec![BigInt::zero(); k];
        for (i, a) in coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                *cj += a * &self.transform[(i, j)];
            }
        }
        Some(c)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.basis_coordinates(v).is_some()
    }

    fn basis_coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank, "vector length differs from ambient rank");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (i, &p) in self.pivots.iter().enumerate() {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&self.basis[(i, p)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(self.basis.row(i)) {
                    *x -= &q * b;
                }
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &IntLattice) -> IntLattice {
        IntLattice::from_generators(self.ambient_rank, self.generators.vstack(&other.generators))
    }
}

impl PartialEq for IntLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.basis == other.basis
    }
}

impl Eq for IntLattice {}

/// `Z^n / L ≅ Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with explicit coordinates.
///
/// `invariants` lists the generator orders, free generators (order 0) first,
/// then torsion orders ascending. `projection` maps `Z^n` onto these
/// coordinates (rows reduced modulo their order), `lifts` has one column per
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub invariants: Vec<BigInt>,
    pub projection: IntMatrix,
    pub lifts: IntMatrix,
}

impl AbelianPresentation {
    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn ngens(&self) -> usize {
        self.invariants.len()
    }

    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        reduce_vec(&self.projection.mul_vec(v), &self.invariants)
    }

    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.lifts.mul_vec(coords)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }
}

pub fn reduce_vec(v: &[BigInt], moduli: &[BigInt]) -> Vec<BigInt> {
    v.iter()
        .zip(moduli)
        .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
        .collect()
}

pub fn quotient_presentation(l: &IntLattice) -> AbelianPresentation {
    let n = l.ambient_rank();
    let k = l.rank();
    let s = snf(l.basis());
    let mut order: Vec<(BigInt, usize)> = (k..n).map(|j| (BigInt::zero(), j)).collect();
    order.extend(s.diag.iter().enumerate().filter(|(_, d)| !d.is_one()).map(|(i, d)| (d.clone(), i)));
    let invariants: Vec<BigInt> = order.iter().map(|(d, _)| d.clone()).collect();
    let projection = IntMatrix::from_rows(n, order.iter().map(|(_, j)| s.right.column(*j)).collect())
        .reduce_rows(&invariants);
    let lifts = IntMatrix::from_columns(n, &order.iter().map(|(_, j)| s.right_inverse.row(*j).to_vec()).collect::<Vec<_>>());
    AbelianPresentation { invariants, projection, lifts }
}

/// Re-presents `Z^n / l` on caller-chosen generators.
///
/// Succeeds iff the images of `lifts` (columns of a `n × m` matrix) form a
/// basis of the quotient with exactly the orders `orders`.
pub fn rebase(l: &IntLattice, lifts: &[Vec<BigInt>], orders: &[BigInt]) -> Option<AbelianPresentation> {
    let n = l.ambient_rank();
    let m = lifts.len();
    assert_eq!(orders.len(), m);
    let base = quotient_presentation(l);
    let gens = IntMatrix::from_columns(n, lifts);
    // relations among the chosen generators must be exactly diag(orders)
    let image = base.projection.mul(&gens);
    let relations = IntLattice::kernel(&image, &base.invariants);
    if relations != IntLattice::diagonal(orders) {
        return None;
    }
    let span = IntLattice::from_generators(n, gens.transpose().vstack(l.generators()));
    let mut projection = IntMatrix::zeros(m, n);
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        let c = span.member(&e)?;
        for j in 0..m {
            projection[(j, i)] = c[j].clone();
        }
    }
    Some(AbelianPresentation { invariants: orders.to_vec(), projection: projection.reduce_rows(orders), lifts: gens })
}

/// Order of an element given in presentation coordinates; `None` for infinite order.
pub fn element_order(coords: &[BigInt], invariants: &[BigInt]) -> Option<BigInt> {
    let mut acc = BigInt::one();
    for (c, d) in coords.iter().zip(invariants) {
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let g = c.gcd(d);
            acc = acc.lcm(&(d / g));
        }
    }
    Some(acc)
}

/// Helpers for homomorphisms between finitely generated abelian groups
/// `⊕ Z/a_j → ⊕ Z/b_i` given by integer matrices.
pub mod hom {
    use super::*;

    /// `F` respects the relations of the source.
    pub fn is_well_defined(f: &IntMatrix, source: &[BigInt], target: &[BigInt]) -> bool {
        (0..f.cols()).all(|j| {
            let col: Vec<BigInt> = f.column(j).iter().map(|x| x * &source[j]).collect();
            reduce_vec(&col, target).iter().all(Zero::is_zero)
        })
    }

    /// Kernel as a lattice in the source coordinates (contains the source relations).
    pub fn kernel(f: &IntMatrix, target: &[BigInt]) -> IntLattice {
        IntLattice::kernel(f, target)
    }

    /// Image plus target relations, as a lattice in target coordinates.
    pub fn image(f: &IntMatrix, target: &[BigInt]) -> IntLattice {
        IntLattice::from_generators(f.rows(), f.transpose()).sum(&IntLattice::diagonal(target))
    }

    pub fn is_injective(f: &IntMatrix, source: &[BigInt], target: &[BigInt]) -> bool {
        IntLattice::diagonal(source).contains_lattice(&kernel(f, target))
    }

    pub fn is_surjective(f: &IntMatrix, target: &[BigInt]) -> bool {
        image(f, target) == IntLattice::full(f.rows())
    }

    pub fn equal_mod(a: &IntMatrix, b: &IntMatrix, target: &[BigInt]) -> bool {
        a.rows() == b.rows() && a.cols() == b.cols() && a.reduce_rows(target) == b.reduce_rows(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_of_transfer_images() {
        let m = IntMatrix::from_i64(&[&[2, 1, 0], &[2, 1, 1], &[2, 0, 1], &[4, 2, 0]]);
        assert_eq!(hnf(&m), IntMatrix::from_i64(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn hnf_trivial_cases() {
        let id = IntMatrix::identity(3);
        assert_eq!(hnf(&id), id);
        assert_eq!(hnf(&IntMatrix::zeros(2, 3)).rows(), 0);
    }

    #[test]
    fn hnf_transform_is_consistent() {
        let m = IntMatrix::from_i64(&[&[6, 4, 2], &[3, -5, 7], &[9, 9, 9], &[0, 2, -4]]);
        let h = hnf_with_transform(&m);
        assert_eq!(h.transform.mul(&m), h.form);
    }

    #[test]
    fn snf_examples() {
        let s = snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 2]]));
        assert_eq!(s.diag, v(&[2, 2]));
        let s = snf(&IntMatrix::from_i64(&[&[1]]));
        assert_eq!(s.diag, v(&[1]));
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = snf(&m);
        assert_eq!(s.diag, v(&[2, 6, 12]));
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        assert_eq!(s.right.mul(&s.right_inverse), IntMatrix::identity(3));
    }

    #[test]
    fn quotient_of_transfer_lattice_is_z_mod_2() {
        let l = IntLattice::from_generators(3, IntMatrix::from_i64(&[&[2, 1, 0], &[2, 1, 1], &[2, 0, 1], &[4, 2, 0]]));
        let q = quotient_presentation(&l);
        assert_eq!(q.invariants, v(&[2]));
    }

    #[test]
    fn kernel_trivial_cases() {
        let zero = IntMatrix::zeros(1, 2);
        assert_eq!(IntLattice::kernel(&zero, &v(&[0])), IntLattice::full(2));
        let id = IntMatrix::identity(2);
        assert_eq!(IntLattice::kernel(&id, &v(&[0, 0])).rank(), 0);
    }

    #[test]
    fn kernel_with_torsion_targets() {
        // v ↦ (v0 + v1 mod 2)
        let m = IntMatrix::from_i64(&[&[1, 1]]);
        let k = IntLattice::kernel(&m, &v(&[2]));
        assert_eq!(k, IntLattice::from_vectors(2, &[v(&[1, 1]), v(&[0, 2])]));
    }

    #[test]
    fn membership_witness_over_generators() {
        // tr(t-2) and nm(t-2) in A(C4), coordinates ([C4/e], [C4/C2], 1)
        let l = IntLattice::from_vectors(3, &[v(&[1, -2, 0]), v(&[-1, 3, -2])]);
        assert_eq!(l.member(&v(&[0, 1, -2])), Some(v(&[1, 1])));
        assert_eq!(l.member(&v(&[1, 0, -4])), Some(v(&[3, 2])));
        assert_eq!(l.member(&v(&[0, 0, 0])), Some(v(&[0, 0])));
        assert_eq!(l.member(&v(&[0, 0, 1])), None);
    }

    #[test]
    fn quotient_trivial_cases() {
        assert_eq!(quotient_presentation(&IntLattice::zero(2)).invariants, v(&[0, 0]));
        assert!(quotient_presentation(&IntLattice::full(3)).is_trivial());
    }

    #[test]
    fn rebase_onto_chosen_generators() {
        // Z^2 / <(2, 0)> on generators e0, e1: orders (0, 2) is wrong, (2, 0) after reorder
        let l = IntLattice::from_vectors(2, &[v(&[2, 0])]);
        assert!(rebase(&l, &[v(&[0, 1]), v(&[1, 0])], &v(&[0, 2])).is_some());
        assert!(rebase(&l, &[v(&[1, 0]), v(&[0, 1])], &v(&[0, 2])).is_none());
        assert!(rebase(&l, &[v(&[1, 1]), v(&[1, 0])], &v(&[0, 2])).is_some());
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&v(&[0, 1, 2]), &v(&[0, 2, 4])), Some(BigInt::from(2)));
        assert_eq!(element_order(&v(&[1, 0]), &v(&[0, 2])), None);
    }
}
