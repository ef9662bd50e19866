//! Exact linear algebra over ℚ: fraction-free elimination, rank, null spaces.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{denominator_lcm, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon data: pivot column for each nonzero row.
#[derive(Debug, Clone)]
struct Echelon {
    rref: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = Rational::from_integer(denominator_lcm(row.iter()));
                row.iter().map(|x| (x * &l).to_integer()).collect()
            })
            .collect()
    }

    /// Bareiss elimination on the integerized rows. Returns the pivot columns
    /// and the eliminated integer matrix (upper echelon, not reduced).
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, bool) {
        let mut m = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut swapped_odd = false;
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                swapped_odd = !swapped_odd;
            }
            for i in r + 1..self.rows {
                for j in col + 1..self.cols {
                    let v = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                    m[i][j] = v / &prev;
                }
                m[i][col] = BigInt::zero();
            }
            // columns left of `col` in rows below are already zero
            prev = m[r][col].clone();
            pivots.push(col);
            r += 1;
        }
        (m, pivots, swapped_odd)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "square matrix");
        if self.rows == 0 {
            return Rational::one();
        }
        let (m, pivots, odd) = self.bareiss();
        if pivots.len() < self.rows {
            return Rational::zero();
        }
        let mut scale = Rational::one();
        for i in 0..self.rows {
            scale *= Rational::from_integer(denominator_lcm(self.row(i).iter()));
        }
        let d = Rational::from_integer(m[self.rows - 1][self.cols - 1].clone()) / scale;
        if odd {
            -d
        } else {
            d
        }
    }

    fn echelon(&self) -> Echelon {
        let (m, pivots, _) = self.bareiss();
        let mut rref: Vec<Vec<Rational>> = m
            .into_iter()
            .take(pivots.len())
            .map(|row| row.into_iter().map(Rational::from_integer).collect())
            .collect();
        // back-substitution to reduced form
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let inv = Rational::one() / &rref[k][pc];
            for x in rref[k].iter_mut() {
                *x *= &inv;
            }
            for i in 0..k {
                let f = rref[i][pc].clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    let v = &f * &rref[k][j];
                    rref[i][j] -= v;
                }
            }
        }
        Echelon { rref, pivots }
    }
}

/// Rank and a basis of `{v : A v = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullSpace {
    pub rank: usize,
    pub basis: Vec<Vec<Rational>>,
}

pub fn solve_linear(a: &RatMatrix) -> NullSpace {
    let e = a.echelon();
    let free: Vec<usize> = (0..a.cols).filter(|c| !e.pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); a.cols];
            v[f] = Rational::one();
            for (k, &pc) in e.pivots.iter().enumerate() {
                v[pc] = -e.rref[k][f].clone();
            }
            v
        })
        .collect();
    NullSpace {
        rank: e.pivots.len(),
        basis,
    }
}

/// Solution set of `A v = b`: one particular solution plus the homogeneous
/// null space, or `None` when inconsistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub null_space: NullSpace,
}

pub fn solve_affine(a: &RatMatrix, b: &[Rational]) -> Option<AffineSolution> {
    assert_eq!(b.len(), a.rows);
    let aug = RatMatrix::from_rows(
        (0..a.rows)
            .map(|i| {
                let mut row = a.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect(),
    );
    let aug = if a.rows == 0 {
        RatMatrix::zeros(0, a.cols + 1)
    } else {
        aug
    };
    let e = aug.echelon();
    if e.pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut particular = vec![Rational::zero(); a.cols];
    for (k, &pc) in e.pivots.iter().enumerate() {
        particular[pc] = e.rref[k][a.cols].clone();
    }
    Some(AffineSolution {
        particular,
        null_space: solve_linear(a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant(), int(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), int(0));
        let h = RatMatrix::from_rows(vec![
            vec![int(1), rat(1, 2), rat(1, 3)],
            vec![rat(1, 2), rat(1, 3), rat(1, 4)],
            vec![rat(1, 3), rat(1, 4), rat(1, 5)],
        ]);
        assert_eq!(h.determinant(), rat(1, 2160));
    }

    #[test]
    fn null_space() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = solve_linear(&a);
        assert_eq!(ns.rank, 2);
        assert_eq!(ns.basis.len(), 1);
        assert!(a.mul_vec(&ns.basis[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn affine() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let s = solve_affine(&a, &[int(3), int(1)]).unwrap();
        assert_eq!(s.particular, vec![int(2), int(1)]);
        assert!(s.null_space.basis.is_empty());
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve_affine(&a, &[int(1), int(3)]).is_none());
        let s = solve_affine(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(s.null_space.basis.len(), 1);
    }
}
