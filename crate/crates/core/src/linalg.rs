//! Exact square solves by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::series::Coeff;

/// Solves `matrix · x = rhs` exactly, or returns `None` if `matrix` is
/// singular.
///
/// Each row is first scaled to integer entries; elimination then keeps the
/// matrix integral and only the right-hand side carries fractions.
pub fn solve(matrix: &[Vec<Coeff>], rhs: &[Coeff]) -> Option<Vec<Coeff>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "rhs length must match matrix");
    if n == 0 {
        return Some(Vec::new());
    }
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut b: Vec<Coeff> = Vec::with_capacity(n);
    for (row, r) in matrix.iter().zip(rhs) {
        assert_eq!(row.len(), n, "matrix must be square");
        let scale = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        a.push(
            row.iter()
                .map(|c| (c * Coeff::from_integer(scale.clone())).to_integer())
                .collect(),
        );
        b.push(r * Coeff::from_integer(scale));
    }

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        if pivot != k {
            a.swap(pivot, k);
            b.swap(pivot, k);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            let prev_q = Coeff::from_integer(prev.clone());
            b[i] = (Coeff::from_integer(a[k][k].clone()) * &b[i]
                - Coeff::from_integer(a[i][k].clone()) * &b[k])
                / prev_q;
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let mut x = vec![Coeff::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            acc -= Coeff::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Coeff::from_integer(a[i][i].clone());
    }
    Some(x)
}
