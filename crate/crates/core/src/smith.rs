//! Smith normal form over the integers.
//!
//! This gives a characteristic-independent rank oracle: the rank of an
//! integer matrix over GF(p) is the number of elementary divisors not
//! divisible by p, which can be checked against elimination done directly
//! in the prime field.

// Pivoting and elimination walk rectangular index windows; iterator forms
// obscure which window each loop covers.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

/// Elementary divisors of a rational matrix with integer entries: the
/// nonzero diagonal of the Smith normal form, each positive and dividing
/// the next. Entries that are not integers are rejected with their 1-based
/// position.
pub fn smith_diagonal(m: &Matrix) -> Result<Vec<BigInt>> {
    if *m.field() != FieldSpec::rationals() {
        return Err(Error::FieldMismatch(FieldSpec::rationals(), *m.field()));
    }
    let rows = m.rows();
    let cols = m.cols();
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let s = m.get(i, j);
            match s.as_integer() {
                Some(n) => a[i][j] = n.clone(),
                None => {
                    return Err(Error::NotInteger {
                        row: i + 1,
                        col: j + 1,
                        value: s.to_string(),
                    })
                }
            }
        }
    }

    let mut divisors = Vec::new();
    let steps = rows.min(cols);
    'outer: for t in 0..steps {
        loop {
            // Bring a nonzero entry of minimal magnitude to the pivot slot.
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if a[r][c].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((br, bc)) => a[r][c].abs() < a[br][bc].abs(),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else { break 'outer };
            a.swap(t, pr);
            if pc != t {
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
            }

            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = &a[r][t] / &a[t][t];
                if !q.is_zero() {
                    for c in t..cols {
                        let s = &q * &a[t][c];
                        a[r][c] -= s;
                    }
                }
                if !a[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = &a[t][c] / &a[t][t];
                if !q.is_zero() {
                    for r in t..rows {
                        let s = &q * &a[r][t];
                        a[r][c] -= s;
                    }
                }
                if !a[t][c].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Pull any entry the pivot does not divide into the working row,
            // so the next pass replaces the pivot by a proper divisor.
            let offender = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&a[r][c] % &a[t][t]).is_zero());
            if let Some((r, _)) = offender {
                for c in t..cols {
                    let s = a[r][c].clone();
                    a[t][c] += s;
                }
                continue;
            }
            break;
        }
        if a[t][t].is_zero() {
            break;
        }
        divisors.push(a[t][t].abs());
    }
    Ok(divisors)
}

/// Rank over GF(p) read off the elementary divisors: those not divisible
/// by p stay invertible after reduction.
pub fn rank_mod_p(divisors: &[BigInt], p: u64) -> usize {
    let p = BigInt::from(p);
    divisors.iter().filter(|d| !(*d % &p).is_zero()).count()
}
