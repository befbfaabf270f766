use std::collections::HashMap;

use conjcodes::algebra::{companion_matrix, Elem, Field, Matrix, Poly};
use conjcodes::codes::LinearCode;
use conjcodes::ensemble::{
    build_ensemble, find_lemma2_pair, is_a_good, meets_lemma2_bound, sieve_good, standard_ensemble, verify_balanced,
};
use conjcodes::Budget;

const B: Budget = Budget(1 << 22);

fn all_words(q: u32, n: usize) -> Vec<Vec<Elem>> {
    let total = (q as usize).pow(n as u32);
    (0..total)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = Elem((x % q as usize) as u32);
                    x /= q as usize;
                    d
                })
                .collect()
        })
        .collect()
}

fn counts_of(w: &[Elem], q: u32) -> Vec<u32> {
    let mut c = vec![0u32; q as usize];
    for e in w {
        c[e.0 as usize] += 1;
    }
    c
}

/// The goodness test recomputed from scratch: membership of every word,
/// class sizes by counting words of each type.
fn brute_good(code: &LinearCode, a: f64) -> bool {
    let q = code.field().order();
    let n = code.n();
    let words = all_words(q, n);
    let mut class: HashMap<Vec<u32>, f64> = HashMap::new();
    let mut in_code: HashMap<Vec<u32>, f64> = HashMap::new();
    for w in &words {
        let t = counts_of(w, q);
        *class.entry(t.clone()).or_default() += 1.0;
        if code.contains(w) && w.iter().any(|e| !e.is_zero()) {
            *in_code.entry(t).or_default() += 1.0;
        }
    }
    let types = class.len() as f64;
    let scale = (types - 1.0) * (q as f64).powf(code.k() as f64 - n as f64) * a;
    in_code.iter().all(|(t, &c)| c <= scale * class[t] * (1.0 + 1e-12))
}

#[test]
fn build_examples() {
    let f = Field::prime(2).unwrap();
    let t = companion_matrix(&Poly::from_ints(&f, &[1, 1, 0, 1])).unwrap();
    let ens = build_ensemble(&t, 2, 2).unwrap();
    assert_eq!(ens.len(), 7);

    let full = build_ensemble(&t, 3, 3).unwrap();
    for i in 0..full.len() {
        let m = full.member(i).unwrap();
        assert_eq!(m.pair.c1(), &LinearCode::full(&f, 3));
        assert_eq!(m.pair.c2(), &LinearCode::full(&f, 3));
    }
    assert!(build_ensemble(&t, 0, 2).is_err());
}

#[test]
fn member_examples() {
    let f = Field::prime(2).unwrap();
    let t = companion_matrix(&Poly::from_ints(&f, &[1, 1, 0, 1])).unwrap();
    let ens = build_ensemble(&t, 2, 2).unwrap();
    let m1 = ens.member(1).unwrap();
    // T itself; C1 = first two rows of T, C2 = last two rows of (T^-1)^t
    assert_eq!(m1.a, t);
    assert_eq!(m1.pair.c1(), &LinearCode::from_generator(&t.top(2)));
    let tinv_t = t.inverse().unwrap().transpose();
    assert_eq!(m1.pair.c2(), &LinearCode::from_generator(&tinv_t.bottom(2)));
    assert!(m1.pair.c1().contains_code(&m1.pair.c2().dual()));
    // biorthogonality A B^t = I
    assert_eq!(m1.a.mul(&m1.b.transpose()).unwrap(), Matrix::identity(&f, 3));
    let m0 = ens.member(0).unwrap();
    assert_eq!(m0.pair.c1(), &LinearCode::from_generator(&Matrix::identity(&f, 3).top(2)));
}

#[test]
fn members_satisfy_css_via_first_rows() {
    for (p, n) in [(2u32, 3usize), (2, 4), (2, 5), (3, 2), (3, 3)] {
        let f = Field::prime(p).unwrap();
        for k1 in 0..=n {
            for k2 in (n - k1)..=n {
                let ens = standard_ensemble(&f, n, k1, k2).unwrap();
                for i in 0..ens.len() {
                    let m = ens.member(i).unwrap();
                    assert!(m.pair.c1().contains_code(&m.pair.c2().dual()));
                    assert_eq!(m.pair.c2().dual(), LinearCode::from_generator(&m.a.top(n - k2)));
                }
            }
        }
    }
}

#[test]
fn balancedness_small_cases() {
    for (p, n) in [(2u32, 3usize), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4)] {
        let f = Field::prime(p).unwrap();
        for k1 in 0..=n {
            for k2 in (n - k1)..=n {
                let ens = standard_ensemble(&f, n, k1, k2).unwrap();
                let v1 = verify_balanced(&ens, 1, B).unwrap();
                let v2 = verify_balanced(&ens, 2, B).unwrap();
                assert_eq!(v1, (p as u64).pow(k1 as u32) - 1);
                assert_eq!(v2, (p as u64).pow(k2 as u32) - 1);
            }
        }
    }
}

#[test]
fn balancedness_by_direct_count() {
    let f = Field::prime(2).unwrap();
    let ens = standard_ensemble(&f, 3, 2, 2).unwrap();
    for w in all_words(2, 3).into_iter().skip(1) {
        for j in [1, 2] {
            let c = (0..7).filter(|&i| ens.member(i).unwrap().pair.code(j).contains(&w)).count();
            assert_eq!(c, 3);
        }
    }
}

#[test]
fn orbit_is_injective() {
    for (p, n) in [(2u32, 4usize), (3, 3)] {
        let f = Field::prime(p).unwrap();
        let ens = standard_ensemble(&f, n, n, n).unwrap();
        for y in all_words(p, n).into_iter().skip(1) {
            let mut seen: Vec<Vec<Elem>> = (0..ens.len()).map(|i| ens.member(i).unwrap().a.vec_mul(&y)).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), ens.len());
        }
    }
}

#[test]
fn a_good_examples() {
    let f = Field::prime(2).unwrap();
    let full = LinearCode::full(&f, 5);
    assert!(is_a_good(&full, 32.0, B).unwrap());
    assert!(is_a_good(&LinearCode::zero(&f, 5), 1.0, B).unwrap());

    let ens = standard_ensemble(&f, 7, 5, 5).unwrap();
    let a = 2f64.powf(0.2 * 7.0);
    for i in 0..ens.len() {
        let m = ens.member(i).unwrap();
        for j in [1, 2] {
            let c = m.pair.code(j);
            assert_eq!(is_a_good(c, a, B).unwrap(), brute_good(c, a), "member {i} family {j}");
        }
    }
}

#[test]
fn sieve_soundness() {
    let f = Field::prime(2).unwrap();
    let ens = standard_ensemble(&f, 7, 5, 5).unwrap();
    let r = sieve_good(&ens, 0.1, B).unwrap();
    assert_eq!(r.z, 78);
    assert!(r.bad_count_j1 <= r.z && r.bad_count_j2 <= r.z);
    let a = 2f64.powf(0.7);
    for &i in &r.good_indices {
        let m = ens.member(i).unwrap();
        assert!(brute_good(m.pair.c1(), a) && brute_good(m.pair.c2(), a));
    }
    assert!(r.good_indices.len() as u64 >= 127u64.saturating_sub(2 * r.z));

    // epsilon = 1 makes the bound exceed every count
    let all = sieve_good(&ens, 1.0, B).unwrap();
    assert_eq!(all.good_indices.len(), 127);

    let small = standard_ensemble(&f, 3, 2, 2).unwrap();
    let r = sieve_good(&small, 0.05, B).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    for key in ["n", "k1", "k2", "epsilon", "z", "good_indices", "bad_count_j1", "bad_count_j2"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}

#[test]
fn lemma2_pair_examples() {
    let f = Field::prime(2).unwrap();
    let ens = standard_ensemble(&f, 7, 5, 5).unwrap();
    let (i, pair) = find_lemma2_pair(&ens, B).unwrap();
    assert!(brute_good(pair.c1(), 2.0) && brute_good(pair.c2(), 2.0));
    for earlier in 0..i {
        let m = ens.member(earlier).unwrap();
        assert!(!(brute_good(m.pair.c1(), 2.0) && brute_good(m.pair.c2(), 2.0)));
    }

    let full = standard_ensemble(&f, 4, 4, 4).unwrap();
    assert_eq!(find_lemma2_pair(&full, B).unwrap().0, 0);

    let small = standard_ensemble(&f, 3, 2, 2).unwrap();
    let (_, p) = find_lemma2_pair(&small, B).unwrap();
    assert!(meets_lemma2_bound(p.c1(), B).unwrap() && brute_good(p.c1(), 2.0));
    assert!(meets_lemma2_bound(p.c2(), B).unwrap() && brute_good(p.c2(), 2.0));
}
