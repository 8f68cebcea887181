//! Exact linear algebra over the rationals for small dense systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;
pub type RatVec = Vec<BigRational>;

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigInt], v: &[BigRational]) -> BigRational {
    a.iter()
        .zip(v)
        .filter(|(x, _)| !x.is_zero())
        .fold(BigRational::zero(), |acc, (x, y)| {
            acc + BigRational::from_integer(x.clone()) * y
        })
}

pub fn to_rat(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn ints(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg(v: &[BigInt]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// The primitive integer vector on the ray through a rational vector.
pub fn primitive_rat(v: &[BigRational]) -> IntVec {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: IntVec = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    primitive(&scaled)
}

/// `s*a + t*b`.
pub fn combine(s: &BigInt, a: &[BigInt], t: &BigInt, b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| s * x + t * y).collect()
}

/// Reduced row echelon form of a set of rational row vectors.
#[derive(Debug, Clone)]
pub struct Rref {
    ncols: usize,
    rows: Vec<RatVec>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new(rows: &[RatVec], ncols: usize) -> Rref {
        let mut m: Vec<RatVec> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = &*x - &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        Rref {
            ncols,
            rows: m,
            pivots,
        }
    }

    pub fn from_ints(rows: &[IntVec], ncols: usize) -> Rref {
        let rat: Vec<RatVec> = rows.iter().map(|r| to_rat(r)).collect();
        Rref::new(&rat, ncols)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Unique representative of `v` modulo the row space (zero at pivot columns).
    pub fn reduce(&self, v: &[BigRational]) -> RatVec {
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if out[c].is_zero() {
                continue;
            }
            let f = out[c].clone();
            for (x, y) in out.iter_mut().zip(row) {
                *x = &*x - &f * y;
            }
        }
        out
    }

    pub fn reduce_int(&self, v: &[BigInt]) -> IntVec {
        primitive_rat(&self.reduce(&to_rat(v)))
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Basis of `{x : row . x = 0 for every row}`, one vector per free column.
    pub fn kernel(&self) -> Vec<RatVec> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivots.contains(&f) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.ncols];
            v[f] = BigRational::one();
            for (row, &c) in self.rows.iter().zip(&self.pivots) {
                v[c] = -row[f].clone();
            }
            out.push(v);
        }
        out
    }

    /// Primitive integer rows of the echelon form, sorted.
    pub fn canonical_basis(&self) -> Vec<IntVec> {
        let mut out: Vec<IntVec> = self.rows.iter().map(|r| primitive_rat(r)).collect();
        out.sort();
        out
    }
}

pub fn rank(rows: &[IntVec], ncols: usize) -> usize {
    Rref::from_ints(rows, ncols).rank()
}

/// Primitive integer basis of the orthogonal complement of the span of `rows`.
pub fn kernel(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    Rref::from_ints(rows, ncols)
        .kernel()
        .iter()
        .map(|v| primitive_rat(v))
        .collect()
}

/// Sign of the first nonzero entry flipped to positive.
pub fn normalize_sign(v: IntVec) -> IntVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&v),
        _ => v,
    }
}
