use conjcodes::algebra::{Elem, Field};
use conjcodes::codes::LinearCode;
use conjcodes::rs_outer::{bd_decode, grs_dual, hamming_pair, rs_pair, GrsCode, OuterCode, OuterPair};
use conjcodes::Budget;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const B: Budget = Budget(1 << 22);

fn gf(p: u32, m: usize) -> Field {
    Field::new(p, m).unwrap()
}

fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

/// All error patterns of weight exactly w.
fn patterns(q: u32, n: usize, w: usize) -> Vec<Vec<Elem>> {
    fn rec(q: u32, n: usize, w: usize, start: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if w == 0 {
            out.push(cur.clone());
            return;
        }
        for pos in start..n {
            for v in 1..q {
                cur[pos] = Elem(v);
                rec(q, n, w - 1, pos + 1, cur, out);
                cur[pos] = Elem(0);
            }
        }
    }
    let mut out = Vec::new();
    rec(q, n, w, 0, &mut vec![Elem(0); n], &mut out);
    out
}

#[test]
fn rs_pair_examples() {
    let f = gf(2, 3);
    let p = rs_pair(&f, 7, 5, 5).unwrap();
    assert_eq!(p.k(), 3);
    let d2_dual = p.d2().code().dual();
    assert_eq!(d2_dual.k(), 2);
    // dual(D2) is the [7, 2] RS code with unit multipliers
    assert_eq!(&d2_dual, GrsCode::rs(&f, 7, 2).unwrap().code());
    assert!(p.d1().code().contains_code(&d2_dual));
    assert_eq!(p.d1().code(), GrsCode::rs(&f, 7, 5).unwrap().code());

    let full = rs_pair(&f, 7, 7, 7).unwrap();
    assert_eq!(full.d1().code(), &LinearCode::full(&f, 7));
    assert_eq!(full.d2().code(), &LinearCode::full(&f, 7));

    assert!(rs_pair(&f, 7, 3, 3).is_err());
    assert!(rs_pair(&f, 8, 5, 5).is_err());
}

#[test]
fn rs_pairs_hold_for_all_parameters() {
    for (p, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let f = gf(p, m);
        let qm1 = f.order() as usize - 1;
        for n in 1..=qm1.min(9) {
            for k1 in 0..=n {
                for k2 in (n - k1)..=n {
                    let pair = rs_pair(&f, n, k1, k2).unwrap();
                    assert!(pair.d1().code().contains_code(&pair.d2().code().dual()));
                }
            }
        }
    }
}

#[test]
fn grs_dual_examples() {
    let f = gf(2, 3);
    let full = GrsCode::rs(&f, 7, 7).unwrap();
    assert_eq!(grs_dual(&full).code(), &LinearCode::zero(&f, 7));

    let c = GrsCode::rs(&f, 7, 5).unwrap();
    let d = grs_dual(&c);
    let mut a = d.code().codewords(B).unwrap();
    let mut b = c.code().dual().codewords(B).unwrap();
    assert_eq!(a.len(), 64);
    a.sort();
    b.sort();
    assert_eq!(a, b);
    assert_eq!(grs_dual(&d).code(), c.code());
}

#[test]
fn grs_dual_matches_kernel_dual_on_shortened_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, m) in [(2, 3), (3, 2), (2, 4), (5, 1)] {
        let f = gf(p, m);
        for n in 1..f.order() as usize {
            for k in 0..=n {
                // random distinct points and multipliers
                let mut pts: Vec<Elem> = (1..f.order()).map(Elem).collect();
                for i in (1..pts.len()).rev() {
                    pts.swap(i, rng.gen_range(0..=i));
                }
                pts.truncate(n);
                let mult: Vec<Elem> = (0..n).map(|_| Elem(rng.gen_range(1..f.order()))).collect();
                let c = GrsCode::new(&f, pts, mult, k).unwrap();
                assert_eq!(grs_dual(&c).code(), &c.code().dual());
            }
        }
    }
}

#[test]
fn encode_examples() {
    let f = gf(2, 3);
    let c = GrsCode::rs(&f, 7, 3).unwrap();
    assert_eq!(c.encode(&[Elem(0); 3]).unwrap(), vec![Elem(0); 7]);
    let g = GrsCode::new(&f, c.points().to_vec(), (1..8).map(Elem).collect(), 3).unwrap();
    let w = g.encode(&[Elem(5), Elem(0), Elem(0)]).unwrap();
    let expect: Vec<Elem> = g.multipliers().iter().map(|&v| f.mul(v, Elem(5))).collect();
    assert_eq!(w, expect);
    assert!(c.encode(&[Elem(1)]).is_err());

    let rs72 = GrsCode::rs(&f, 7, 2).unwrap();
    let mut words = Vec::new();
    for a in 0..8 {
        for b in 0..8 {
            let w = rs72.encode(&[Elem(a), Elem(b)]).unwrap();
            assert!(rs72.code().contains(&w));
            words.push(w);
        }
    }
    words.sort();
    words.dedup();
    assert_eq!(words.len(), 64);
}

#[test]
fn mds_distance() {
    for (f, n, k) in [(gf(2, 3), 7, 3), (gf(2, 3), 5, 2), (gf(2, 2), 3, 1), (gf(3, 2), 8, 3)] {
        let c = GrsCode::rs(&f, n, k).unwrap();
        let d = c.code().codewords(B).unwrap().iter().map(|w| weight(w)).filter(|&w| w > 0).min().unwrap();
        assert_eq!(d, c.designed_distance());
    }
}

fn exhaustive_bd(f: &Field, n: usize, k: usize) {
    let c = GrsCode::rs(f, n, k).unwrap();
    let t = c.radius();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = f.order();
    let samples: Vec<Vec<Elem>> =
        (0..4).map(|_| c.encode(&(0..k).map(|_| Elem(rng.gen_range(0..q))).collect::<Vec<_>>()).unwrap()).collect();
    for cw in &samples {
        for w in 0..=t {
            for e in patterns(q, n, w) {
                let y = f.add_vec(cw, &e);
                assert_eq!(bd_decode(&c, &y, t).as_ref(), Some(cw), "weight {w}");
            }
        }
        // beyond the radius: no crash, and any answer is a close codeword
        for e in patterns(q, n, t + 1) {
            let y = f.add_vec(cw, &e);
            if let Some(d) = bd_decode(&c, &y, t) {
                assert!(c.code().contains(&d));
                assert!(weight(&f.sub_vec(&d, &y)) <= t);
            }
        }
    }
}

#[test]
fn bd_decode_corrects_up_to_radius() {
    exhaustive_bd(&gf(2, 3), 7, 3);
    exhaustive_bd(&gf(2, 2), 3, 1);
    exhaustive_bd(&gf(2, 3), 7, 5);
    exhaustive_bd(&gf(3, 2), 8, 2);
}

#[test]
fn bd_decode_examples() {
    let f = gf(2, 3);
    let c = GrsCode::rs(&f, 7, 3).unwrap();
    let cw = c.encode(&[Elem(1), Elem(2), Elem(3)]).unwrap();
    assert_eq!(bd_decode(&c, &cw, 2), Some(cw.clone()));
    let mut y = cw.clone();
    y[4] = f.add(y[4], Elem(6));
    assert_eq!(bd_decode(&c, &y, 2), Some(cw.clone()));
    for e in patterns(8, 7, 3).iter().take(2000) {
        let _ = bd_decode(&c, &f.add_vec(&cw, e), 2);
    }
}

#[test]
fn hamming_outer_pair() {
    let f = Field::prime(2).unwrap().extend(1).unwrap();
    let p = hamming_pair(&f, 3).unwrap();
    assert_eq!((p.n(), p.k()), (7, 1));
    let OuterCode::Table(t) = p.d1() else { panic!("table code expected") };
    for cw in t.code().codewords(B).unwrap() {
        for e in patterns(2, 7, 1) {
            assert_eq!(t.decode(&f.add_vec(&cw, &e)), Some(cw.clone()));
        }
    }
}

#[test]
fn json_round_trip() {
    let f = gf(2, 3);
    for p in [rs_pair(&f, 7, 5, 5).unwrap(), hamming_pair(&Field::prime(2).unwrap(), 3).unwrap()] {
        let j = p.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = OuterPair::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.d1().code(), p.d1().code());
        assert_eq!(back.d2().code(), p.d2().code());
    }
    let v = serde_json::to_value(rs_pair(&f, 7, 5, 5).unwrap().to_json()).unwrap();
    assert_eq!(v["kind"], "rs");
    assert!(v.get("eval_points").is_some() && v.get("multipliers1").is_some());
}
