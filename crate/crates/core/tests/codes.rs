use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use ftqm::codes::{
    dual, hamming_distribution, macwilliams_transform, punctured_rm, punctured_rm_distribution, qrm,
    rm2_weight_distribution, rm_generator, shortened_rm, shortened_rm_distribution, syndrome, weight_distribution,
    weight_enum_eval, BinaryCode, WeightDistribution,
};
use ftqm::gf2::{BinaryMatrix, BitVec};

/// Codewords of the shortened first-order code built by the recursion
/// `S_m = [S_{m-1} 0 S_{m-1}; S_{m-1} 1 ~S_{m-1}]` from `S_2`.
fn s_recursion(m: usize) -> Vec<Vec<u8>> {
    let mut s: Vec<Vec<u8>> = vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    for _ in 3..=m {
        let mut next = Vec::with_capacity(2 * s.len());
        for row in &s {
            next.push([row.as_slice(), &[0], row.as_slice()].concat());
        }
        for row in &s {
            let comp: Vec<u8> = row.iter().map(|b| 1 - b).collect();
            next.push([row.as_slice(), &[1], comp.as_slice()].concat());
        }
        s = next;
    }
    s
}

/// Plain-array span of `rows`.
fn span(rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = rows.first().map_or(0, Vec::len);
    (0u64..1 << rows.len())
        .map(|mask| {
            let mut w = vec![0u8; n];
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (a, b) in w.iter_mut().zip(r) {
                        *a ^= b;
                    }
                }
            }
            w
        })
        .collect()
}

fn bits(v: &BitVec) -> Vec<u8> {
    v.iter().map(u8::from).collect()
}

fn rows_of(m: &BinaryMatrix) -> Vec<Vec<u8>> {
    m.rows().iter().map(bits).collect()
}

fn histogram(words: &[Vec<u8>], n: usize) -> Vec<u64> {
    let mut h = vec![0u64; n + 1];
    for w in words {
        h[w.iter().map(|&b| b as usize).sum::<usize>()] += 1;
    }
    h
}

fn as_u64(d: &WeightDistribution) -> Vec<u64> {
    d.counts().iter().map(|c| u64::try_from(c).unwrap()).collect()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn first_order_generator_of_three_variables() {
    let g = rm_generator(1, 3).unwrap();
    assert_eq!(g.to_text().trim(), "00001111\n00110011\n01010101\n11111111");
}

#[test]
fn generator_rows_are_monomial_evaluations() {
    // Row for x_i evaluates bit (m-i) of u, MSB first.
    for m in 2..=6 {
        let g = rm_generator(1, m).unwrap();
        let n = 1usize << m;
        for i in 0..m {
            let expect: Vec<u8> = (0..n).map(|u| ((u >> (m - 1 - i)) & 1) as u8).collect();
            assert_eq!(bits(g.row(i)), expect, "m={m} row {i}");
        }
        assert_eq!(bits(g.row(m)), vec![1u8; n]);
    }
}

#[test]
fn second_order_generator_contains_products() {
    let g = rm_generator(2, 4).unwrap();
    assert_eq!(g.num_rows(), 11);
    let code = BinaryCode::from_generator(g).unwrap();
    let n = 16;
    for a in 0..4 {
        for b in a + 1..4 {
            let w: Vec<u8> = (0..n).map(|u| (((u >> (3 - a)) & (u >> (3 - b))) & 1) as u8).collect();
            assert!(code.contains(&BitVec::from_bits(&w)).unwrap());
        }
    }
}

#[test]
fn shortened_code_matches_recursion() {
    for m in 2..=6 {
        let code = shortened_rm(m).unwrap();
        let ours: BTreeSet<Vec<u8>> = span(&rows_of(code.generator())).into_iter().collect();
        let theirs: BTreeSet<Vec<u8>> = s_recursion(m).into_iter().collect();
        assert_eq!(ours, theirs, "m={m}");
    }
}

#[test]
fn distributions_match_plain_enumeration() {
    for m in 2..=5 {
        let n = (1 << m) - 1;
        let bar = shortened_rm(m).unwrap();
        let star = punctured_rm(m).unwrap();
        assert_eq!(as_u64(&weight_distribution(&bar).unwrap()), histogram(&span(&rows_of(bar.generator())), n));
        assert_eq!(as_u64(&weight_distribution(&star).unwrap()), histogram(&span(&rows_of(star.generator())), n));
        assert_eq!(as_u64(&shortened_rm_distribution(m).unwrap()), histogram(&span(&rows_of(bar.generator())), n));
    }
    for m in 2..=4 {
        let n = (1 << m) - 1;
        let ham = dual(&shortened_rm(m).unwrap());
        assert_eq!(as_u64(&hamming_distribution(m).unwrap()), histogram(&span(&rows_of(ham.generator())), n));
    }
}

#[test]
fn punctured_distribution_has_four_weights() {
    for m in 2..=12 {
        let n = (1usize << m) - 1;
        let h = 1u64 << m;
        let d = punctured_rm_distribution(m).unwrap();
        let mut expect = vec![0u64; n + 1];
        expect[0] = 1;
        expect[(1 << (m - 1)) - 1] = h - 1;
        expect[1 << (m - 1)] = h - 1;
        expect[n] = 1;
        assert_eq!(as_u64(&d), expect, "m={m}");
    }
}

#[test]
fn hamming_dual_has_distance_three() {
    for m in 3..=5 {
        let ham = dual(&shortened_rm(m).unwrap());
        assert_eq!(hamming_distribution(m).unwrap().min_nonzero_weight(), Some(3));
        if ham.dimension() <= 24 {
            assert_eq!(ham.min_distance().unwrap(), Some(3));
        }
    }
}

#[test]
fn second_order_distribution_m4_by_enumeration() {
    let code = BinaryCode::from_generator(rm_generator(2, 4).unwrap()).unwrap();
    let h = histogram(&span(&rows_of(code.generator())), 16);
    assert_eq!(as_u64(&rm2_weight_distribution(4).unwrap()), h);
    assert_eq!(rm2_weight_distribution(4).unwrap().to_string(), "{0:1, 4:140, 6:448, 8:870, 10:448, 12:140, 16:1}");
}

#[test]
fn second_order_distribution_totals() {
    for m in 4..=12 {
        let d = rm2_weight_distribution(m).unwrap();
        let k = 1 + m + m * (m - 1) / 2;
        assert_eq!(d.total(), BigUint::from(1u8) << k, "m={m}");
        assert!(d.support().all(|(w, _)| w % 2 == 0));
    }
    let d5 = rm2_weight_distribution(5).unwrap();
    let code = BinaryCode::from_generator(rm_generator(2, 5).unwrap()).unwrap();
    assert_eq!(d5, weight_distribution(&code).unwrap());
}

#[test]
fn macwilliams_round_trips() {
    for m in 2..=5 {
        for code in [shortened_rm(m).unwrap(), punctured_rm(m).unwrap()] {
            let d = weight_distribution(&code).unwrap();
            let dual_size = BigUint::from(1u8) << (code.len() - code.dimension());
            let there = macwilliams_transform(&d, &dual_size).unwrap();
            assert_eq!(macwilliams_transform(&there, &d.total()).unwrap(), d);
            if dual(&code).dimension() <= 24 {
                assert_eq!(there, weight_distribution(&dual(&code)).unwrap());
            }
        }
        for r in 1..m {
            let code = BinaryCode::from_generator(rm_generator(r, m).unwrap()).unwrap();
            if code.dimension() > 24 {
                continue;
            }
            let d = weight_distribution(&code).unwrap();
            let dual_size = BigUint::from(1u8) << (code.len() - code.dimension());
            let there = macwilliams_transform(&d, &dual_size).unwrap();
            assert_eq!(macwilliams_transform(&there, &d.total()).unwrap(), d, "RM({r},{m})");
        }
    }
}

#[test]
fn macwilliams_rejects_wrong_dual_size() {
    let d = shortened_rm_distribution(3).unwrap();
    assert!(macwilliams_transform(&d, &BigUint::from(15u8)).is_err());
}

#[test]
fn enumerator_of_full_space() {
    let d = weight_distribution(&BinaryCode::full_space(6)).unwrap();
    let expect: Vec<u64> = (0..=6).map(|k| binom(6, k)).collect();
    assert_eq!(as_u64(&d), expect);
    assert!((weight_enum_eval(&d, 0.7, 0.3) - 1.0).abs() < 1e-14);
}

#[test]
fn qrm_structure() {
    for m in 3..=7 {
        let code = qrm(m).unwrap();
        let n = (1 << m) - 1;
        assert_eq!(code.n(), n);
        assert_eq!(code.h_x().num_rows(), m);
        assert_eq!(code.h_z().num_rows(), n - m - 1);
        // CSS condition: every X check commutes with every Z check.
        assert!(code.h_x().mul_transpose(code.h_z()).unwrap().is_zero());
        for x in [false, true] {
            for y in code.logical_support(x).unwrap() {
                assert!(syndrome(code.h_z(), &y).unwrap().is_zero());
            }
        }
    }
    assert!(qrm(2).is_err());
}

proptest! {
    #[test]
    fn syndrome_is_linear(m in 3usize..=6, a in any::<u64>(), b in any::<u64>()) {
        let code = qrm(m).unwrap();
        let n = code.n();
        let ea = BitVec::from_u64(a & ((1 << n) - 1), n);
        let eb = BitVec::from_u64(b & ((1 << n) - 1), n);
        let lhs = syndrome(code.h_z(), &ea.xor(&eb)).unwrap();
        let rhs = syndrome(code.h_z(), &ea).unwrap().xor(&syndrome(code.h_z(), &eb).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn codewords_have_zero_syndrome(m in 2usize..=7, coeffs in any::<u64>()) {
        let code = punctured_rm(m).unwrap();
        let mut w = BitVec::zeros(code.len());
        for (i, row) in code.generator().rows().iter().enumerate() {
            if coeffs >> i & 1 == 1 {
                w.xor_assign(row);
            }
        }
        prop_assert!(syndrome(code.parity_check(), &w).unwrap().is_zero());
        prop_assert!(code.contains(&w).unwrap());
    }

    #[test]
    fn dual_is_an_involution(m in 2usize..=7) {
        let code = shortened_rm(m).unwrap();
        let back = dual(&dual(&code));
        prop_assert_eq!(back.generator().rref().0, code.generator().rref().0);
    }
}
