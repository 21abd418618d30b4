//! Fraction-free Gauss-Jordan elimination.
//!
//! Rows are first scaled to integers. Elimination then follows Bareiss'
//! update `a[i][j] = (p * a[i][j] - a[i][c] * a[r][j]) / prev`, whose
//! divisions are exact, so every intermediate entry is a minor of the input.
//! After the sweep all pivots carry the same value and dividing through gives
//! the reduced row echelon form over the rationals.
//!
//! The sweep runs over `i128` with checked arithmetic first and is repeated
//! over `BigInt` only when an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

trait ExactInt: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `(a * b - c * d) / e`, `None` on overflow or inexact division.
    fn bareiss(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn bareiss(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let num = if *c == 0 || *d == 0 {
            a.checked_mul(*b)?
        } else {
            a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?
        };
        if num % e != 0 {
            return None;
        }
        Some(num / e)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn bareiss(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let num = a * b - c * d;
        let (q, r) = num.div_rem(e);
        assert!(Zero::is_zero(&r), "inexact Bareiss division");
        Some(q)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Reduced row echelon form of a rational matrix.
#[derive(Clone, Debug)]
pub struct Reduced {
    /// Nonzero rows of the RREF, one per pivot.
    pub rows: Vec<Vec<Rational>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the right null space, one primitive integer vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                primitive(v)
            })
            .collect()
    }
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let mut lcm: BigInt = One::one();
    for x in &v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g: BigInt = Zero::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if Zero::is_zero(&g) {
        return v;
    }
    // Fix the sign so the first nonzero entry is positive.
    if let Some(first) = ints.iter().find(|x| !Zero::is_zero(*x)) {
        if first.is_negative() {
            g = -g;
        }
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut lcm: BigInt = One::one();
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
            row.iter().map(|x| (x * &lcm).to_integer()).collect()
        })
        .collect()
}

fn sweep<T: ExactInt>(mut m: Vec<Vec<T>>, cols: usize) -> Option<(Vec<Vec<T>>, Vec<usize>, T)> {
    let nrows = m.len();
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let lead = row[c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                if row[j].is_zero() && (lead.is_zero() || pivot_row[j].is_zero()) {
                    continue;
                }
                row[j] = T::bareiss(&piv, &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[c] = T::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Some((m, pivots, prev))
}

fn finish<T: ExactInt>(m: Vec<Vec<T>>, pivots: Vec<usize>, prev: T, cols: usize) -> Reduced {
    let d = prev.to_big();
    let rows = m
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| Rational::new(x.to_big(), d.clone()))
                .collect()
        })
        .collect();
    Reduced { rows, pivots, cols }
}

/// Rows scaled to integers, as `i128` when every entry fits.
fn scaled_rows(rows: &[Vec<Rational>]) -> Result<Vec<Vec<i128>>, Vec<Vec<BigInt>>> {
    let direct: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|row| row.iter().map(|x| if x.denom().is_one() { x.numer().to_i128() } else { None }).collect())
        .collect();
    if let Some(d) = direct {
        return Ok(d);
    }
    let big = integer_rows(rows);
    let small: Option<Vec<Vec<i128>>> = big.iter().map(|row| row.iter().map(|x| x.to_i128()).collect()).collect();
    small.ok_or(big)
}

/// Echelon rows, pivot columns and the common pivot.
type Swept<T> = (Vec<Vec<T>>, Vec<usize>, T);

fn sweep_any(rows: &[Vec<Rational>], cols: usize) -> Result<Swept<i128>, Swept<BigInt>> {
    let big = match scaled_rows(rows) {
        Ok(small) => match sweep(small, cols) {
            Some(done) => return Ok(done),
            None => integer_rows(rows),
        },
        Err(big) => big,
    };
    Err(sweep(big, cols).expect("BigInt elimination cannot overflow"))
}

/// Reduced row echelon form of `rows` (each of length `cols`).
pub fn reduce(rows: &[Vec<Rational>], cols: usize) -> Reduced {
    match sweep_any(rows, cols) {
        Ok((m, pivots, prev)) => finish(m, pivots, prev, cols),
        Err((m, pivots, prev)) => finish(m, pivots, prev, cols),
    }
}

/// Rank of `rows` without building the reduced form.
pub fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    match sweep_any(rows, cols) {
        Ok((_, pivots, _)) => pivots.len(),
        Err((_, pivots, _)) => pivots.len(),
    }
}
