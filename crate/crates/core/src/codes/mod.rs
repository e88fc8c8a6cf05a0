//! Classical Reed-Muller codes, their derived codes and the QRM(1,m) CSS pair.
//!
//! Coordinates of a length-`2^m` code are the inputs `u = 0..2^m`, with the
//! Boolean variable `x_1` read from the most significant bit of `u`. The
//! shortened code drops coordinate `u = 0`, so its coordinate `i` is the
//! input `u = i + 1`.

mod weights;

pub use weights::{
    hamming_distribution, macwilliams_transform, punctured_rm_distribution, rm2_weight_distribution,
    shortened_rm_distribution, weight_distribution, weight_enum_eval, WeightDistribution,
    ENUMERATION_LIMIT,
};

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVec};

pub const MAX_M: usize = 16;

/// A linear code stored as a generator matrix and a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    generator: BinaryMatrix,
    parity_check: BinaryMatrix,
}

impl BinaryCode {
    /// Builds a code from a full-rank generator; the parity check is the
    /// canonical null-space basis.
    pub fn from_generator(generator: BinaryMatrix) -> Result<Self> {
        let rank = generator.rank();
        if rank != generator.num_rows() {
            return Err(Error::invalid(
                "generator",
                format!("rows are dependent: rank {rank} < {} rows", generator.num_rows()),
            ));
        }
        let parity_check = generator.null_space();
        Ok(BinaryCode {
            generator,
            parity_check,
        })
    }

    /// Whole space GF(2)^n.
    pub fn full_space(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = BitVec::zeros(n);
                v.set(i, true);
                v
            })
            .collect();
        BinaryCode::from_generator(BinaryMatrix::from_rows(n, rows).expect("unit rows"))
            .expect("unit rows are independent")
    }

    /// The code `{0}` of length `n`.
    pub fn zero(n: usize) -> Self {
        BinaryCode::from_generator(BinaryMatrix::zeros(0, n)).expect("empty generator")
    }

    pub fn len(&self) -> usize {
        self.generator.num_cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.num_rows()
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.parity_check
    }

    pub fn contains(&self, word: &BitVec) -> Result<bool> {
        Ok(syndrome(&self.parity_check, word)?.is_zero())
    }

    /// All codewords, in Gray-code order from the generator.
    pub fn codewords(&self) -> Result<Vec<BitVec>> {
        let k = self.dimension();
        if k > ENUMERATION_LIMIT {
            return Err(Error::EnumerationTooLarge {
                k,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut out = Vec::with_capacity(1 << k);
        self.generator.for_each_codeword(|c| out.push(c.clone()));
        Ok(out)
    }

    /// Minimum nonzero weight, or `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        let dist = weight_distribution(self)?;
        Ok(dist.min_nonzero_weight())
    }
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min || m > MAX_M {
        return Err(Error::invalid("m", format!("expected {min} <= m <= {MAX_M}, got {m}")));
    }
    Ok(())
}

/// Subsets of `{0..m}` of size `d` in lexicographic order.
fn combinations(m: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            go(v + 1, m, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Generator of RM(r,m): one row per monomial of degree at most `r`,
/// highest degree first, ending with the all-ones row.
pub fn rm_generator(r: usize, m: usize) -> Result<BinaryMatrix> {
    if m > MAX_M {
        return Err(Error::invalid("m", format!("expected m <= {MAX_M}, got {m}")));
    }
    if r > m {
        return Err(Error::invalid("r", format!("order {r} exceeds m = {m}")));
    }
    let n = 1usize << m;
    let mut rows = Vec::new();
    for d in (0..=r).rev() {
        for vars in combinations(m, d) {
            // Variable v reads bit (m - 1 - v) of the input.
            let mask: usize = vars.iter().map(|&v| 1usize << (m - 1 - v)).sum();
            let mut row = BitVec::zeros(n);
            for u in 0..n {
                if u & mask == mask {
                    row.set(u, true);
                }
            }
            rows.push(row);
        }
    }
    BinaryMatrix::from_rows(n, rows)
}

fn drop_first_coordinate(row: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(row.len() - 1);
    for i in row.ones_iter().filter(|&i| i > 0) {
        out.set(i - 1, true);
    }
    out
}

/// The shortened code RM-bar(1,m): codewords of RM(1,m) vanishing at the
/// first coordinate, with that coordinate deleted.
pub fn shortened_rm(m: usize) -> Result<BinaryCode> {
    check_m(m, 2)?;
    let g = rm_generator(1, m)?;
    // The m linear rows vanish at u = 0; the constant row does not.
    let rows = g.rows()[..m].iter().map(drop_first_coordinate).collect();
    BinaryCode::from_generator(BinaryMatrix::from_rows((1 << m) - 1, rows)?)
}

/// The punctured code RM*(1,m): RM-bar plus the all-ones word.
pub fn punctured_rm(m: usize) -> Result<BinaryCode> {
    check_m(m, 2)?;
    let bar = shortened_rm(m)?;
    let n = bar.len();
    let mut rows = bar.generator().rows().to_vec();
    rows.push(BitVec::ones(n));
    BinaryCode::from_generator(BinaryMatrix::from_rows(n, rows)?)
}

/// The dual code: generator and parity check swap roles.
pub fn dual(code: &BinaryCode) -> BinaryCode {
    BinaryCode {
        generator: code.parity_check.clone(),
        parity_check: code.generator.clone(),
    }
}

/// `h · eᵀ` over GF(2).
pub fn syndrome(h: &BinaryMatrix, error: &BitVec) -> Result<BitVec> {
    h.mul_vec(error)
}

/// QRM(1,m): X errors are detected by the parity check of RM*, Z errors by
/// the parity check of the Hamming code (which is RM-bar's generator).
#[derive(Clone, Debug)]
pub struct QrmCode {
    m: usize,
    rm_bar: BinaryCode,
    rm_star: BinaryCode,
    hamming: BinaryCode,
}

impl QrmCode {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        (1 << self.m) - 1
    }

    pub fn rm_bar(&self) -> &BinaryCode {
        &self.rm_bar
    }

    pub fn rm_star(&self) -> &BinaryCode {
        &self.rm_star
    }

    pub fn hamming(&self) -> &BinaryCode {
        &self.hamming
    }

    /// Detects X errors.
    pub fn h_z(&self) -> &BinaryMatrix {
        self.rm_star.parity_check()
    }

    /// Detects Z errors.
    pub fn h_x(&self) -> &BinaryMatrix {
        self.hamming.parity_check()
    }

    /// Basis labels supporting logical `|x>`: the coset `RM-bar + x·1`.
    pub fn logical_support(&self, x: bool) -> Result<Vec<BitVec>> {
        let mut words = self.rm_bar.codewords()?;
        if x {
            for w in &mut words {
                *w = w.complement();
            }
        }
        Ok(words)
    }
}

pub fn qrm(m: usize) -> Result<QrmCode> {
    check_m(m, 3)?;
    let rm_bar = shortened_rm(m)?;
    let rm_star = punctured_rm(m)?;
    let hamming = dual(&rm_bar);
    Ok(QrmCode {
        m,
        rm_bar,
        rm_star,
        hamming,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rm13_generator_rows() {
        let g = rm_generator(1, 3).unwrap();
        assert_eq!(g.to_text(), "00001111\n00110011\n01010101\n11111111\n");
    }

    #[test]
    fn rm_rejects_order_above_m() {
        assert!(rm_generator(3, 2).is_err());
        assert!(shortened_rm(1).is_err());
        assert!(qrm(2).is_err());
    }

    #[test]
    fn shortened_m2_codewords() {
        let mut words: Vec<String> = shortened_rm(2)
            .unwrap()
            .codewords()
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        words.sort();
        assert_eq!(words, ["000", "011", "101", "110"]);
    }

    #[test]
    fn dual_is_an_involution() {
        let c = punctured_rm(4).unwrap();
        assert_eq!(dual(&dual(&c)), c);
    }

    #[test]
    fn qrm4_matrix_shapes() {
        let q = qrm(4).unwrap();
        assert_eq!(q.n(), 15);
        assert_eq!(q.h_x().num_rows(), 4);
        assert_eq!(q.h_z().num_rows(), 10);
    }

    #[test]
    fn logical_cosets_are_disjoint() {
        let q = qrm(3).unwrap();
        let zero = q.logical_support(false).unwrap();
        let one = q.logical_support(true).unwrap();
        assert!(zero.iter().all(|w| !one.contains(w)));
    }
}
