use proptest::collection::vec;
use proptest::prelude::*;

use ftqm::channel::{sample_pattern, PauliChannel, RateMode};
use ftqm::gf2::{BinaryMatrix, BitVec};
use ftqm::rng::{run_streams, stream};

fn bitvec(len: usize) -> impl Strategy<Value = BitVec> {
    vec(0u8..=1, len).prop_map(|b| BitVec::from_bits(&b))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    vec(bitvec(cols), rows).prop_map(move |r| BinaryMatrix::from_rows(cols, r).unwrap())
}

/// Rank by plain Gaussian elimination on byte rows.
fn naive_rank(m: &BinaryMatrix) -> usize {
    let mut rows: Vec<Vec<u8>> = m.rows().iter().map(|r| r.iter().map(u8::from).collect()).collect();
    let mut rank = 0;
    for c in 0..m.num_cols() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] == 1 {
                let pivot = rows[rank].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn text_round_trip() {
    let m = BinaryMatrix::from_text("0110\n1011\n").unwrap();
    assert_eq!(m.num_rows(), 2);
    assert_eq!(BinaryMatrix::from_text(&m.to_text()).unwrap(), m);
    assert!(BinaryMatrix::from_text("01\n011").is_err());
    assert_eq!("10110".parse::<BitVec>().unwrap().weight(), 3);
    assert!("102".parse::<BitVec>().is_err());
}

#[test]
fn words_beyond_one_limb() {
    let mut v = BitVec::zeros(130);
    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    assert_eq!(v.weight(), 3);
    assert_eq!(v.complement().weight(), 127);
    assert_eq!(v.ones_iter().collect::<Vec<_>>(), [0, 64, 129]);
    assert!(v.dot(&BitVec::ones(130)));
}

#[test]
fn channel_parsing() {
    let ch: PauliChannel = "0.01".parse().unwrap();
    assert_eq!(ch, PauliChannel::depolarizing(0.01).unwrap());
    let ch: PauliChannel = "0.1,0.5,0,0.5".parse().unwrap();
    assert_eq!(ch.rates(RateMode::ExactMarginal), (0.05, 0.05));
    assert_eq!(ch.rates(RateMode::UpperBound), (0.1, 0.1));
    assert!("0.1,0.5,0.5".parse::<PauliChannel>().is_err());
    assert!("0.1,0.5,0.5,0.5".parse::<PauliChannel>().is_err());
    assert!("1.5".parse::<PauliChannel>().is_err());
}

#[test]
fn sampler_marginals() {
    let ch = PauliChannel::new(0.2, 0.5, 0.3, 0.2).unwrap();
    let mut rng = stream(3, 0);
    let (n, trials) = (50, 20_000);
    let (mut x, mut z, mut y) = (0usize, 0usize, 0usize);
    for _ in 0..trials {
        let pat = sample_pattern(&ch, n, &mut rng);
        x += pat.x_part.weight();
        z += pat.z_part.weight();
        y += pat.x_part.ones_iter().filter(|&i| pat.z_part.get(i)).count();
    }
    let total = (n * trials) as f64;
    for (got, want) in [(x, ch.marginal_x_rate()), (z, ch.marginal_z_rate()), (y, 0.2 * 0.3)] {
        let sigma = (want * (1.0 - want) / total).sqrt();
        assert!((got as f64 / total - want).abs() < 5.0 * sigma, "{got} vs {want}");
    }
    assert!(sample_pattern(&PauliChannel::noiseless(), 7, &mut rng).is_identity());
}

#[test]
fn streams_are_distinct_and_repeatable() {
    use rand::Rng;
    let (mut a, mut b) = run_streams(5, 0);
    let (mut c, _) = run_streams(5, 1);
    let x: u64 = a.random();
    assert_ne!(x, b.random::<u64>());
    assert_ne!(x, c.random::<u64>());
    assert_eq!(x, run_streams(5, 0).0.random::<u64>());
}

proptest! {
    #[test]
    fn rank_matches_naive_elimination(m in (1usize..8, 1usize..80).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(m.rank(), naive_rank(&m));
    }

    #[test]
    fn rank_nullity(m in (1usize..10, 1usize..90).prop_flat_map(|(r, c)| matrix(r, c))) {
        let null = m.null_space();
        prop_assert_eq!(m.rank() + null.num_rows(), m.num_cols());
        prop_assert_eq!(null.rank(), null.num_rows());
        if null.num_rows() > 0 {
            prop_assert!(m.mul_transpose(&null).unwrap().is_zero());
        }
    }

    #[test]
    fn rref_preserves_row_space(m in (1usize..8, 1usize..70).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        for row in m.rows() {
            let mut stacked = r.clone();
            stacked.push_row(row.clone()).unwrap();
            prop_assert_eq!(stacked.rank(), pivots.len());
        }
    }

    #[test]
    fn xor_and_dot_are_bilinear(len in 1usize..200, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = stream(seed, 0);
        let mut v = || BitVec::from_bits(&(0..len).map(|_| rng.random::<bool>() as u8).collect::<Vec<_>>());
        let (a, b, c) = (v(), v(), v());
        prop_assert_eq!(a.xor(&b).dot(&c), a.dot(&c) ^ b.dot(&c));
        prop_assert_eq!(a.xor(&a).weight(), 0);
        prop_assert_eq!(a.weight() + a.complement().weight(), len);
    }

    #[test]
    fn mul_vec_is_row_dots(m in (1usize..6, 1usize..100).prop_flat_map(|(r, c)| (matrix(r, c), bitvec(c)))) {
        let (m, v) = m;
        let s = m.mul_vec(&v).unwrap();
        for (i, row) in m.rows().iter().enumerate() {
            prop_assert_eq!(s.get(i), row.dot(&v));
        }
    }
}
