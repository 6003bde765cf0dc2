mod common;

use common::*;
use num_bigint::BigInt;

use toric_heights::heights::LaurentPolyQ;
use toric_heights::nssbounds::{bk_afin_bound, nss_bounds, nss_support, NssInput};
use toric_heights::numkernel::ExactLog;
use toric_heights::Error;

fn input(n: u64, s: u64, d: u64, h: ExactLog, vol: i64) -> NssInput {
    NssInput::new(n, s, d, h, BigInt::from(vol)).unwrap()
}

#[test]
fn worked_values() {
    let b = nss_bounds(&input(2, 2, 1, ExactLog::zero(), 2));
    assert_eq!(b.deg_bound, BigInt::from(16));
    assert_eq!(b.height_bound, el(&[(2, 4644, 1)]));
    assert_eq!(b.warnings.len(), 1);

    // 2 * 27 * 2 * 4 * (log 3 + log 2 + 84 log 3)
    let b = nss_bounds(&input(2, 2, 2, log_of(3), 4));
    assert_eq!(b.deg_bound, BigInt::from(64));
    assert_eq!(b.height_bound, el(&[(2, 432, 1), (3, 36720, 1)]));
    assert!(b.warnings.is_empty());

    // s = 1 drops the log s term: 2 * 27 * 2 * (84 log 3)
    let b = nss_bounds(&input(2, 1, 2, ExactLog::zero(), 1));
    assert_eq!(b.height_bound, el(&[(3, 9072, 1)]));

    assert_eq!(
        bk_afin_bound(2, 2, &log_of(3), &BigInt::from(4)).unwrap(),
        el(&[(3, 128, 1)])
    );
    // h = 0 leaves 5 n (n+1) log(d+1) Vol(A)
    assert_eq!(
        bk_afin_bound(3, 1, &ExactLog::zero(), &BigInt::from(2)).unwrap(),
        el(&[(2, 120, 1)])
    );
    assert!(matches!(
        bk_afin_bound(1, 2, &log_of(3), &BigInt::from(4)),
        Err(Error::Precondition { .. })
    ));
}

#[test]
fn augmented_supports() {
    let a = nss_support(2, &[vec![vec![1, 1]]]).unwrap();
    assert_eq!(
        a.points(),
        &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
    );
    let a = nss_support(1, &[vec![vec![3]]]).unwrap();
    assert_eq!(a.points(), &[vec![0], vec![1], vec![3]]);
    assert_eq!(nss_support(2, &[]).unwrap().len(), 3);
    assert!(nss_support(1, &[vec![vec![-1]]]).is_err());

    // x1 x2 - 1 and 3 x1^2 - x2: d = 2, h = log 3, A = {0, e1, e2, (1,1), (2,0)}
    let polys = [
        LaurentPolyQ::from_ints(2, &[(&[1, 1], 1, 1), (&[0, 0], -1, 1)]).unwrap(),
        LaurentPolyQ::from_ints(2, &[(&[2, 0], 3, 1), (&[0, 1], -1, 1)]).unwrap(),
    ];
    let (inp, a) = NssInput::from_polys(2, &polys).unwrap();
    assert_eq!(a.len(), 5);
    assert_eq!((inp.n, inp.s, inp.d), (2, 2, 2));
    assert_eq!(inp.h, log_of(3));
    // conv{0, (2,0), (1,1), (0,1)} has area 3/2
    assert_eq!(inp.vol, BigInt::from(3));
}

#[test]
fn bounds_are_monotone_over_the_grid() {
    let heights = [ExactLog::zero(), log_of(2), log_of(3), log_of(6)];
    let bound = |n: u64, s: u64, d: u64, h: usize, vol: i64| {
        let b = nss_bounds(&input(n, s, d, heights[h].clone(), vol));
        let afin = (n >= 2).then(|| bk_afin_bound(n, d, &heights[h], &BigInt::from(vol)).unwrap());
        (b.deg_bound, b.height_bound, afin)
    };
    let mut compared = 0;
    for n in 1..=4u64 {
        for s in 1..=3u64 {
            for d in 1..=4u64 {
                for h in 0..heights.len() {
                    for vol in 1..=4i64 {
                        let base = bound(n, s, d, h, vol);
                        let mut steps = vec![
                            bound(n + 1, s, d, h, vol),
                            bound(n, s + 1, d, h, vol),
                            bound(n, s, d + 1, h, vol),
                            bound(n, s, d, h, vol + 1),
                        ];
                        if h + 1 < heights.len() {
                            steps.push(bound(n, s, d, h + 1, vol));
                        }
                        for next in steps {
                            assert!(next.0 >= base.0);
                            assert!(next.1.try_cmp(&base.1).unwrap().is_ge());
                            if let (Some(lo), Some(hi)) = (&base.2, &next.2) {
                                assert!(hi.try_cmp(lo).unwrap().is_ge());
                            }
                            compared += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(compared > 3000);
}
