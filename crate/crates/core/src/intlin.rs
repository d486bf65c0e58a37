//! Exact integer linear algebra: dense matrices over arbitrary-precision
//! integers, Smith normal form with transformation matrices, cokernel
//! invariants and kernel rank.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense rectangular matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Identity scaled by an integer.
    pub fn scalar(n: usize, value: impl Into<BigInt>) -> IntMatrix {
        let value = value.into();
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|x| x.clone().into()).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    /// The 0/1 matrix with ones exactly off the diagonal by one.
    pub fn tridiagonal_band(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 1..n {
            m[(i, i - 1)] = BigInt::one();
            m[(i - 1, i)] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn abs(&self) -> IntMatrix {
        self.map(|x| x.abs())
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        self.map(|x| -x)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Assemble `[[a, b], [c, d]]` from equal-size square blocks.
    pub fn block2x2(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> IntMatrix {
        let n = a.rows;
        for m in [a, b, c, d] {
            assert_eq!((m.rows, m.cols), (n, n), "blocks must be square and equal-size");
        }
        let mut out = IntMatrix::zero(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = a[(i, j)].clone();
                out[(i, j + n)] = b[(i, j)].clone();
                out[(i + n, j)] = c[(i, j)].clone();
                out[(i + n, j + n)] = d[(i, j)].clone();
            }
        }
        out
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].clone()).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[from]
    fn add_row(&mut self, target: usize, from: usize, c: &BigInt) {
        for j in 0..self.cols {
            let delta = c * &self[(from, j)];
            self[(target, j)] += delta;
        }
    }

    /// col[target] += c * col[from]
    fn add_col(&mut self, target: usize, from: usize, c: &BigInt) {
        for i in 0..self.rows {
            let delta = c * &self[(i, from)];
            self[(i, target)] += delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Pivot selection rule for the Smith reduction. The resulting diagonal is
/// the same either way; the rule only steers intermediate entry growth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest nonzero absolute value, ties broken row-major.
    MinAbs,
    /// First nonzero entry in row-major order.
    FirstNonZero,
}

#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form: `a = u * d * v` with `u`, `v` unimodular and `d`
/// diagonal, non-negative, each entry dividing the next.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    smith_normal_form_with(a, PivotRule::MinAbs)
}

pub fn smith_normal_form_with(a: &IntMatrix, rule: PivotRule) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    // Invariant maintained by every elementary step: a == u * d * v.

    'outer: for k in 0..rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(&d, k, rule) else {
            break 'outer;
        };
        d.swap_rows(k, pi);
        u.swap_cols(k, pi);
        d.swap_cols(k, pj);
        v.swap_rows(k, pj);
        loop {
            if d[(k, k)].is_negative() {
                d.negate_row(k);
                u.negate_col(k);
            }

            for i in k + 1..rows {
                if !d[(i, k)].is_zero() {
                    let q = &d[(i, k)] / &d[(k, k)];
                    if !q.is_zero() {
                        d.add_row(i, k, &-&q);
                        u.add_col(k, i, &q);
                    }
                }
            }
            for j in k + 1..cols {
                if !d[(k, j)].is_zero() {
                    let q = &d[(k, j)] / &d[(k, k)];
                    if !q.is_zero() {
                        d.add_col(j, k, &-&q);
                        v.add_row(k, j, &q);
                    }
                }
            }

            // Any surviving remainder is strictly smaller than the pivot;
            // swapping it into the pivot position guarantees progress for
            // either pivot rule.
            if let Some(i) = (k + 1..rows).find(|&i| !d[(i, k)].is_zero()) {
                d.swap_rows(k, i);
                u.swap_cols(k, i);
                continue;
            }
            if let Some(j) = (k + 1..cols).find(|&j| !d[(k, j)].is_zero()) {
                d.swap_cols(k, j);
                v.swap_rows(k, j);
                continue;
            }

            // Enforce the divisibility chain before moving on: pull a row
            // holding a non-divisible entry up into row k and keep reducing.
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[(i, j)] % &d[(k, k)]).is_zero());
            match offender {
                Some((i, _)) => {
                    d.add_row(k, i, &BigInt::one());
                    u.add_col(i, k, &-BigInt::one());
                }
                None => break,
            }
        }
    }

    debug_assert_eq!(u.mul(&d).mul(&v), *a);
    SmithDecomposition { u, d, v }
}

fn pick_pivot(d: &IntMatrix, k: usize, rule: PivotRule) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..d.rows {
        for j in k..d.cols {
            if d[(i, j)].is_zero() {
                continue;
            }
            match rule {
                PivotRule::FirstNonZero => return Some((i, j)),
                PivotRule::MinAbs => {
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// The isomorphism class of a finitely generated abelian group: free rank
/// plus the invariant-factor chain (each >= 2, each dividing the next).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> AbelianInvariants {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum; free ranks add and the torsion chains are merged back
    /// into a divisibility chain.
    pub fn plus(&self, other: &AbelianInvariants) -> AbelianInvariants {
        if other.torsion.is_empty() {
            return AbelianInvariants {
                free_rank: self.free_rank + other.free_rank,
                torsion: self.torsion.clone(),
            };
        }
        if self.torsion.is_empty() {
            return AbelianInvariants {
                free_rank: self.free_rank + other.free_rank,
                torsion: other.torsion.clone(),
            };
        }
        // General case: diagonalize the combined torsion presentation.
        let all: Vec<&BigInt> = self.torsion.iter().chain(&other.torsion).collect();
        let mut presentation = IntMatrix::zero(all.len(), all.len());
        for (i, t) in all.iter().enumerate() {
            presentation[(i, i)] = (*t).clone();
        }
        let mut combined = cokernel(&presentation);
        combined.free_rank = self.free_rank + other.free_rank;
        combined
    }

    /// The order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariants of `Z^rows / col-span(a)`.
pub fn cokernel(a: &IntMatrix) -> AbelianInvariants {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|x| !x.is_zero()).count();
    AbelianInvariants {
        free_rank: a.rows - nonzero,
        torsion: diag.into_iter().filter(|x| *x > BigInt::one()).collect(),
    }
}

/// Rank of the kernel of `a` (kernels of integer matrices are free).
pub fn kernel_rank(a: &IntMatrix) -> usize {
    let snf = smith_normal_form(a);
    let rank = snf.diagonal().iter().filter(|x| !x.is_zero()).count();
    a.cols - rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn unimodular(x: &IntMatrix) -> bool {
        // |det| = 1 iff the Smith diagonal is all ones.
        let snf = smith_normal_form(x);
        snf.diagonal().iter().all(|d| d == &BigInt::one())
    }

    #[test]
    fn known_smith_forms() {
        let snf = smith_normal_form(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.diagonal(), [BigInt::from(1), BigInt::from(6)]);

        let snf = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(snf.d, IntMatrix::identity(3));

        let snf = smith_normal_form(&m(&[vec![0]]));
        assert_eq!(snf.diagonal(), [BigInt::zero()]);
    }

    #[test]
    fn reconstruction_and_unimodularity_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let rows = rng.random_range(1..5);
            let cols = rng.random_range(1..5);
            let a = IntMatrix::from_rows(
                &(0..rows)
                    .map(|_| (0..cols).map(|_| rng.random_range(-9i64..9)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            );
            let snf = smith_normal_form(&a);
            assert_eq!(snf.u.mul(&snf.d).mul(&snf.v), a);
            assert!(unimodular(&snf.u));
            assert!(unimodular(&snf.v));
            // Divisibility chain, non-negative diagonal.
            let diag = snf.diagonal();
            for w in diag.windows(2) {
                assert!(!w[0].is_negative());
                if !w[0].is_zero() {
                    assert!((&w[1] % &w[0]).is_zero(), "{diag:?}");
                } else {
                    assert!(w[1].is_zero(), "{diag:?}");
                }
            }
            // Pivot rule does not affect the diagonal.
            let other = smith_normal_form_with(&a, PivotRule::FirstNonZero);
            assert_eq!(other.diagonal(), diag);
            assert_eq!(other.u.mul(&other.d).mul(&other.v), a);
        }
    }

    #[test]
    fn cokernel_invariants() {
        let inv = cokernel(&m(&[vec![-1, -10], vec![-1, -7]]));
        assert_eq!(inv, AbelianInvariants { free_rank: 0, torsion: vec![BigInt::from(3)] });

        assert!(cokernel(&m(&[vec![-1]])).is_trivial());
        assert_eq!(cokernel(&IntMatrix::zero(2, 2)), AbelianInvariants::free(2));
    }

    #[test]
    fn kernel_ranks() {
        assert_eq!(kernel_rank(&IntMatrix::identity(4)), 0);
        assert_eq!(kernel_rank(&IntMatrix::zero(3, 3)), 3);
        assert_eq!(kernel_rank(&m(&[vec![1, 1], vec![1, 1]])), 1);
    }

    #[test]
    fn direct_sums_merge_chains() {
        let a = AbelianInvariants { free_rank: 1, torsion: vec![BigInt::from(4)] };
        let b = AbelianInvariants::free(2);
        assert_eq!(
            a.plus(&b),
            AbelianInvariants { free_rank: 3, torsion: vec![BigInt::from(4)] }
        );
        // Z/2 + Z/3 = Z/6 as a chain.
        let c = AbelianInvariants { free_rank: 0, torsion: vec![BigInt::from(2)] };
        let d = AbelianInvariants { free_rank: 0, torsion: vec![BigInt::from(3)] };
        assert_eq!(c.plus(&d).torsion, vec![BigInt::from(6)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianInvariants::free(0).to_string(), "0");
        assert_eq!(AbelianInvariants::free(2).to_string(), "Z^2");
        let g = AbelianInvariants { free_rank: 1, torsion: vec![BigInt::from(3)] };
        assert_eq!(g.to_string(), "Z + Z/3");
    }
}
