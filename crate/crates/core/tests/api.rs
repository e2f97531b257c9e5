//! End-to-end checks of the public API against a naive, independent
//! polynomial implementation (plain `i128` vectors, Pascal recursion).

use qsums_core::expressions::{
    alternating_narayana_quotient, central_quotient, cyclic_conjecture, cyclic_quotient,
    narayana_conjecture, super_catalan_conjecture,
};
use qsums_core::oracles::{
    check_limit_identity, check_pfaff_saalschutz, check_reciprocal_symmetry,
};
use qsums_core::{evaluate_claim, ClaimId, LaurentPoly, ParamTuple, QContext};

/// Dense polynomial in `q` with a shift: coefficient of `q^(i + low)` at `i`.
#[derive(Clone, Debug)]
struct Naive {
    low: i64,
    c: Vec<i128>,
}

impl Naive {
    fn constant(v: i128) -> Self {
        Naive { low: 0, c: vec![v] }
    }

    fn mul(&self, o: &Naive) -> Naive {
        let mut c = vec![0i128; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Naive {
            low: self.low + o.low,
            c,
        }
    }

    fn add(&self, o: &Naive) -> Naive {
        let low = self.low.min(o.low);
        let high = (self.low + self.c.len() as i64).max(o.low + o.c.len() as i64);
        let mut c = vec![0i128; (high - low) as usize];
        for (i, a) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + i] += a;
        }
        for (i, a) in o.c.iter().enumerate() {
            c[(o.low - low) as usize + i] += a;
        }
        Naive { low, c }
    }

    fn shift(&self, e: i64) -> Naive {
        Naive {
            low: self.low + e,
            c: self.c.clone(),
        }
    }

    fn to_laurent(&self) -> LaurentPoly {
        let c: Vec<i64> = self.c.iter().map(|&v| i64::try_from(v).unwrap()).collect();
        LaurentPoly::from_i64s(self.low, &c)
    }
}

fn q_int(n: i64) -> Naive {
    if n <= 0 {
        return Naive::constant(0);
    }
    Naive {
        low: 0,
        c: vec![1; n as usize],
    }
}

/// Pascal: `[n k] = [n-1 k-1] + q^k [n-1 k]`.
fn q_binom(n: i64, k: i64) -> Naive {
    if k < 0 || k > n {
        return Naive::constant(0);
    }
    if k == 0 || k == n {
        return Naive::constant(1);
    }
    q_binom(n - 1, k - 1).add(&q_binom(n - 1, k).shift(k))
}

fn pow(p: &Naive, e: i64) -> Naive {
    (0..e).fold(Naive::constant(1), |acc, _| acc.mul(p))
}

#[test]
fn central_numerator_matches_naive_sum() {
    let ctx = QContext::new();
    for n in 1..=7 {
        for r in 1..=3 {
            for j in 0..=1 {
                let mut sum = Naive::constant(0);
                for k in 1..=n {
                    let term = q_int(2 * k)
                        .mul(&pow(&q_int(k), 2 * r))
                        .mul(&q_binom(2 * n, n + k))
                        .shift((r + 1) * (n - k) + j * k * k);
                    sum = sum.add(&term);
                }
                let e = central_quotient(&ctx, n, r, j).unwrap();
                assert_eq!(e.numerator, sum.to_laurent(), "n={n} r={r} j={j}");
                let den = pow(&q_int(n), 2).mul(&q_binom(2 * n, n)).to_laurent();
                assert_eq!(e.denominator, den);
                let quotient = e.quotient().expect("divisible");
                assert_eq!(quotient * &den, e.numerator);
            }
        }
    }
}

#[test]
fn cyclic_numerator_matches_naive_sum() {
    let ctx = QContext::new();
    for ns in [vec![1, 2], vec![2, 3, 1], vec![3, 2, 2, 1], vec![2, 2]] {
        let m = ns.len();
        for r in 0..=2 {
            for j in 0..=m as i64 {
                let mut sum = Naive::constant(0);
                for k in 1..=ns[0] {
                    let mut term = q_int(2 * k)
                        .mul(&pow(&q_int(k), 2 * r))
                        .shift(j * k * k - (r + 1) * k);
                    for i in 0..m {
                        let (a, b) = (ns[i], ns[(i + 1) % m]);
                        term = term.mul(&q_binom(a + b, a + k));
                    }
                    sum = sum.add(&term);
                }
                let e = cyclic_quotient(&ctx, &ns, r, j).unwrap();
                assert_eq!(e.numerator, sum.to_laurent(), "{ns:?} r={r} j={j}");
                assert!(e.is_integral());
            }
        }
    }
}

#[test]
fn every_claim_evaluates_at_a_small_point() {
    let ctx = QContext::new();
    let points = [
        (ClaimId::CentralSum, ParamTuple::new(vec![3], 1, 1)),
        (ClaimId::CyclicSum, ParamTuple::new(vec![2, 3], 1, 2)),
        (
            ClaimId::TriangleSum,
            ParamTuple::new(vec![3], 1, 2).with_s(2),
        ),
        (
            ClaimId::AlternatingPair,
            ParamTuple::new(vec![2, 3], 1, 1).with_a(1),
        ),
        (
            ClaimId::TripleCycle,
            ParamTuple::new(vec![2, 3, 2], 1, 3).with_a(0),
        ),
        (
            ClaimId::ShiftedPair,
            ParamTuple::new(vec![2], 1, 3).with_s(1).with_a(1),
        ),
        (ClaimId::FactorialForm, ParamTuple::new(vec![2, 3, 1], 1, 3)),
        (
            ClaimId::DoubleCentral,
            ParamTuple::new(vec![2, 3], 1, 2).with_s(1).with_a(0),
        ),
        (
            ClaimId::NarayanaSum,
            ParamTuple::new(vec![3], 1, 2).with_a(1),
        ),
        (
            ClaimId::SuperCatalanConjecture,
            ParamTuple::new(vec![1, 1], 0, 0).with_s(1).with_t(2),
        ),
        (
            ClaimId::NarayanaConjecture,
            ParamTuple::new(vec![3], 1, -2).with_a(0),
        ),
        (ClaimId::CyclicConjecture, ParamTuple::new(vec![2, 2], 0, 5)),
        (
            ClaimId::NarayanaCycleConjecture,
            ParamTuple::new(vec![2, 3], 1, 4),
        ),
        (ClaimId::AlternatingNarayana, ParamTuple::new(vec![2], 2, 3)),
    ];
    for (claim, p) in points {
        let v = evaluate_claim(&ctx, claim, &p).unwrap();
        assert!(v.holds(), "{claim} {p}");
        let q = v.evaluation.quotient().unwrap();
        assert_eq!(q * &v.evaluation.denominator, v.evaluation.numerator);
    }
}

#[test]
fn conjecture_helpers_agree_with_claim_evaluation() {
    let ctx = QContext::new();
    let sc = super_catalan_conjecture(&ctx, 1, 1, 0, 1, 2, 0).unwrap();
    assert!(sc.as_predicted() && sc.in_band);
    for j in -3..=5 {
        let helper = narayana_conjecture(&ctx, 2, 1, 1, j).unwrap();
        let p = ParamTuple::new(vec![2], 1, j).with_a(1);
        let v = evaluate_claim(&ctx, ClaimId::NarayanaConjecture, &p).unwrap();
        assert_eq!(helper.quotient.as_ref(), v.evaluation.quotient());
        assert_eq!(helper.in_band, v.in_band);

        let helper = cyclic_conjecture(&ctx, &[2, 1, 3], 1, j).unwrap();
        assert!(helper.integral);
        assert_eq!(helper.in_band, (0..=3).contains(&j));
    }
}

#[test]
fn alternating_narayana_examples() {
    let ctx = QContext::new();
    for (n, r, j) in [(1, 1, 0), (2, 1, 1), (2, 2, 3)] {
        assert!(alternating_narayana_quotient(&ctx, n, r, j)
            .unwrap()
            .is_integral());
    }
}

#[test]
fn identity_examples() {
    let ctx = QContext::new();
    // k = n1 collapses the sum to its s = 0 term
    assert!(check_pfaff_saalschutz(&ctx, 3, 4, 5, 3).unwrap().holds);
    assert!(check_limit_identity(&ctx, 1, 1, 1).unwrap().holds);
    assert!(
        check_reciprocal_symmetry(&ctx, &[3, 2, 1], 0)
            .unwrap()
            .holds
    );
}

#[test]
fn theorem_claims_reject_j_outside_band() {
    let ctx = QContext::new();
    assert!(evaluate_claim(&ctx, ClaimId::CyclicSum, &ParamTuple::new(vec![2, 2], 0, 3)).is_err());
    assert!(evaluate_claim(
        &ctx,
        ClaimId::CyclicConjecture,
        &ParamTuple::new(vec![2, 2], 0, 3)
    )
    .is_ok());
}
