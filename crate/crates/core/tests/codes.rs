use conjcodes::algebra::{Elem, Field, Matrix};
use conjcodes::codes::{dual, hamming_7_4, make_pair, quotient, repetition, spectrum, syndrome, LinearCode};
use conjcodes::infotheory::{type_of, TypeDistribution};
use conjcodes::{Budget, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const B: Budget = Budget(1 << 20);

fn gf2() -> Field {
    Field::prime(2).unwrap()
}

/// Every word of GF(q)^n.
fn all_words(f: &Field, n: usize) -> Vec<Vec<Elem>> {
    let q = f.order();
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

/// Dual by brute force: words orthogonal to every codeword.
fn brute_dual(c: &LinearCode) -> Vec<Vec<Elem>> {
    let f = c.field();
    let words = c.codewords(B).unwrap();
    let mut out: Vec<_> =
        all_words(f, c.n()).into_iter().filter(|y| words.iter().all(|x| f.dot(x, y).is_zero())).collect();
    out.sort();
    out
}

fn sorted_words(c: &LinearCode) -> Vec<Vec<Elem>> {
    let mut w = c.codewords(B).unwrap();
    w.sort();
    w
}

#[test]
fn dual_examples() {
    let f = gf2();
    let full = LinearCode::full(&f, 3);
    assert_eq!(dual(&full), LinearCode::zero(&f, 3));

    let rep = repetition(&f, 3);
    let even = dual(&rep);
    assert_eq!(even.k(), 2);
    let expected: Vec<Vec<Elem>> =
        all_words(&f, 3).into_iter().filter(|w| w.iter().filter(|e| !e.is_zero()).count() % 2 == 0).collect();
    let mut expected = expected;
    expected.sort();
    assert_eq!(sorted_words(&even), expected);

    let h = hamming_7_4();
    assert_eq!(h.k(), 4);
    let simplex = dual(&h);
    assert_eq!(simplex.k(), 3);
    assert_eq!(sorted_words(&simplex), brute_dual(&h));
    // every nonzero simplex word has weight 4
    for w in simplex.codewords(B).unwrap() {
        let wt = w.iter().filter(|e| !e.is_zero()).count();
        assert!(wt == 0 || wt == 4);
    }
}

#[test]
fn make_pair_examples() {
    let f = gf2();
    let full = LinearCode::full(&f, 4);
    assert_eq!(make_pair(full.clone(), full).unwrap().k(), 4);

    let h = hamming_7_4();
    let p = make_pair(h.clone(), h.clone()).unwrap();
    assert_eq!(p.k(), 1);
    assert_eq!(sorted_words(&h).len(), 16);
    for w in dual(&h).codewords(B).unwrap() {
        assert!(h.codewords(B).unwrap().contains(&w));
    }

    let rep = repetition(&f, 3);
    assert!(matches!(make_pair(rep.clone(), rep), Err(Error::ContainmentViolated(_))));
}

#[test]
fn quotient_examples() {
    let f = gf2();
    let q = quotient(&LinearCode::full(&f, 2), &LinearCode::zero(&f, 2)).unwrap();
    assert_eq!(q.reps(), &Matrix::identity(&f, 2));

    let h = hamming_7_4();
    let s = dual(&h);
    let q = quotient(&h, &s).unwrap();
    assert_eq!(q.dim(), 1);
    let q_self = quotient(&h, &h).unwrap();
    assert_eq!(q_self.dim(), 0);
    assert!(quotient(&s, &h).is_err());
}

#[test]
fn quotient_encode_examples() {
    let f = gf2();
    let q = quotient(&LinearCode::full(&f, 3), &LinearCode::zero(&f, 3)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    assert_eq!(q.encode(&[Elem(0); 3], &mut rng).unwrap(), vec![Elem(0); 3]);

    let h = hamming_7_4();
    let s = dual(&h);
    let qc = quotient(&h, &s).unwrap();
    let w = qc.encode(&[Elem(1)], &mut rng).unwrap();
    assert!(h.contains(&w));
    // the nonzero coset: in H but not in the simplex code
    assert!(syndrome(&h, &w).iter().all(|e| e.is_zero()));
    assert!(!syndrome(&s, &w).iter().all(|e| e.is_zero()));

    // all 2^3 scrambles land in one coset, and cover it
    let mut coset = Vec::new();
    for sc in all_words(&f, 3) {
        let w = qc.encode_with_scramble(&[Elem(1)], &sc).unwrap();
        assert_eq!(qc.coset_of(&w).unwrap(), vec![Elem(1)]);
        coset.push(w);
    }
    coset.sort();
    coset.dedup();
    assert_eq!(coset.len(), 8);
    let rep = qc.reps().row(0).to_vec();
    for w in &coset {
        assert!(s.contains(&f.sub_vec(w, &rep)));
    }
    assert!(qc.encode(&[Elem(1), Elem(0)], &mut rng).is_err());
}

#[test]
fn coset_of_examples() {
    let h = hamming_7_4();
    let qc = quotient(&h, &dual(&h)).unwrap();
    assert_eq!(qc.coset_of(&[Elem(0); 7]).unwrap(), vec![Elem(0)]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in 0..2 {
        for _ in 0..20 {
            let w = qc.encode(&[Elem(m)], &mut rng).unwrap();
            assert_eq!(qc.coset_of(&w).unwrap(), vec![Elem(m)]);
        }
    }
    let mut e1 = vec![Elem(0); 7];
    e1[0] = Elem(1);
    assert!(matches!(qc.coset_of(&e1), Err(Error::NotInCode)));
}

#[test]
fn spectrum_examples() {
    let f = gf2();
    let z = spectrum(&LinearCode::zero(&f, 5), B).unwrap();
    assert_eq!(z.total(), 1);
    assert_eq!(z.count(&TypeDistribution::new(vec![5, 0]).unwrap()), 1);

    let r = spectrum(&repetition(&f, 3), B).unwrap();
    assert_eq!(r.iter().count(), 2);
    assert_eq!(r.count(&TypeDistribution::new(vec![3, 0]).unwrap()), 1);
    assert_eq!(r.count(&TypeDistribution::new(vec![0, 3]).unwrap()), 1);

    let h = spectrum(&hamming_7_4(), B).unwrap();
    let weights = [1u128, 0, 0, 7, 7, 0, 0, 1];
    for (w, &expect) in weights.iter().enumerate() {
        let t = TypeDistribution::new(vec![7 - w as u32, w as u32]).unwrap();
        assert_eq!(h.count(&t), expect, "weight {w}");
    }
    assert_eq!(h.total(), 16);
    assert!(h.to_csv().starts_with("n0,n1,count\n"));
}

#[test]
fn syndrome_examples() {
    let h = hamming_7_4();
    for w in h.codewords(B).unwrap() {
        assert!(syndrome(&h, &w).iter().all(|e| e.is_zero()));
    }
    let mut e1 = vec![Elem(0); 7];
    e1[0] = Elem(1);
    let s = syndrome(&h, &e1);
    let col0: Vec<Elem> = (0..3).map(|r| h.parity_check().get(r, 0)).collect();
    assert_eq!(s, col0);
    assert!(s.iter().any(|e| !e.is_zero()));
}

fn random_code(f: &Field, n: usize, rows: usize, seed: u64) -> LinearCode {
    let q = f.order() as u64;
    let mut s = seed;
    let data: Vec<Vec<Elem>> = (0..rows.min(n + 1))
        .map(|_| {
            (0..n)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    Elem(((s >> 33) % q) as u32)
                })
                .collect()
        })
        .collect();
    LinearCode::from_rows(f, n, &data).unwrap()
}

fn arb_field_len() -> impl Strategy<Value = (Field, usize)> {
    (prop::sample::select(vec![(2u32, 1usize), (3, 1), (2, 2)]), 1usize..=6).prop_filter_map(
        "fits budget",
        |((p, m), n)| {
            let f = Field::new(p, m).unwrap();
            ((f.order() as u64).pow(n as u32) <= 5000).then_some((f, n))
        },
    )
}

fn arb_code() -> impl Strategy<Value = LinearCode> {
    (arb_field_len(), 0usize..=6, any::<u64>()).prop_map(|((f, n), rows, seed)| random_code(&f, n, rows, seed))
}

/// Two codes of the same length over the same field; the second is biased
/// towards containing the dual of the first so both branches get exercised.
fn arb_code_pair() -> impl Strategy<Value = (LinearCode, LinearCode)> {
    (arb_field_len(), 0usize..=6, 0usize..=6, any::<u64>(), any::<bool>()).prop_map(|((f, n), r1, r2, seed, force)| {
        let a = random_code(&f, n, r1, seed);
        let mut b = random_code(&f, n, r2, seed ^ 0x9e37_79b9_7f4a_7c15);
        if force {
            b = b.sum(&a.dual()).unwrap();
        }
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_involution_and_matches_brute_force(c in arb_code()) {
        let d = dual(&c);
        prop_assert_eq!(d.k(), c.n() - c.k());
        prop_assert_eq!(dual(&d), c.clone());
        prop_assert_eq!(sorted_words(&d), brute_dual(&c));
    }

    #[test]
    fn containment_matches_enumeration((a, b) in arb_code_pair()) {
        let aw = a.codewords(B).unwrap();
        let by_enum = b.codewords(B).unwrap().iter().all(|w| aw.contains(w));
        prop_assert_eq!(a.contains_code(&b), by_enum);
        for w in all_words(a.field(), a.n()) {
            prop_assert_eq!(a.contains(&w), aw.contains(&w));
        }
    }

    #[test]
    fn css_condition_is_symmetric((a, b) in arb_code_pair()) {
        prop_assert_eq!(a.contains_code(&dual(&b)), b.contains_code(&dual(&a)));
        let pair = make_pair(a.clone(), b.clone());
        if a.contains_code(&dual(&b)) {
            prop_assert_eq!(pair.unwrap().k(), a.k() + b.k() - a.n());
        } else {
            prop_assert!(pair.is_err());
        }
    }

    #[test]
    fn quotient_encode_covers_exact_coset(c in arb_code(), pick in any::<u64>()) {
        // take b = span of a prefix of c's rows
        let nb = (pick as usize) % (c.k() + 1);
        let b = LinearCode::from_generator(&c.generator().top(nb));
        let qc = quotient(&c, &b).unwrap();
        prop_assert_eq!(qc.dim(), c.k() - b.k());
        let f = c.field();
        let msgs = all_words(f, qc.dim());
        let msg = &msgs[(pick as usize / 7) % msgs.len()];
        let mut image: Vec<_> = all_words(f, b.k())
            .iter()
            .map(|s| qc.encode_with_scramble(msg, s).unwrap())
            .collect();
        image.sort();
        image.dedup();
        let base = qc.reps().vec_mul(msg);
        let mut coset: Vec<_> = b.codewords(B).unwrap().iter().map(|x| f.add_vec(&base, x)).collect();
        coset.sort();
        prop_assert_eq!(&image, &coset);
        for w in &image {
            prop_assert_eq!(&qc.coset_of(w).unwrap(), msg);
        }
    }

    #[test]
    fn spectrum_totals_and_permutation_invariance(c in arb_code(), shift in 0usize..6) {
        let s = spectrum(&c, B).unwrap();
        prop_assert_eq!(s.total(), (c.field().order() as u128).pow(c.k() as u32));
        let n = c.n();
        let rows: Vec<Vec<Elem>> = c.generator().row_vecs().into_iter()
            .map(|r| (0..n).map(|i| r[(i + shift) % n]).collect())
            .collect();
        let permuted = LinearCode::from_rows(c.field(), n, &rows).unwrap();
        prop_assert_eq!(spectrum(&permuted, B).unwrap(), s.clone());
        for w in c.codewords(B).unwrap() {
            prop_assert!(s.count(&type_of(&w, c.field().order() as usize)) > 0);
        }
    }

    #[test]
    fn syndrome_is_linear(c in arb_code(), seed in any::<u64>()) {
        let words = all_words(c.field(), c.n());
        let y = &words[seed as usize % words.len()];
        let z = &words[(seed >> 20) as usize % words.len()];
        let f = c.field();
        prop_assert_eq!(syndrome(&c, &f.add_vec(y, z)), f.add_vec(&syndrome(&c, y), &syndrome(&c, z)));
        prop_assert_eq!(syndrome(&c, y).iter().all(|e| e.is_zero()), c.contains(y));
    }
}
