use conjcodes::algebra::{
    companion_matrix, dual_basis, lowest_primitive, multiplicative_order_naive, polynomial_basis, trace, Elem, Field,
    Matrix,
};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![
        Field::new(2, 1).unwrap(),
        Field::new(3, 1).unwrap(),
        Field::new(2, 3).unwrap(),
        Field::new(3, 2).unwrap(),
        Field::new(2, 2).unwrap().extend(2).unwrap(),
        Field::new(5, 1).unwrap().extend(2).unwrap(),
    ]
}

fn arb_field_and_elems() -> impl Strategy<Value = (Field, Elem, Elem, Elem)> {
    (0..fields().len()).prop_flat_map(|i| {
        let f = fields()[i].clone();
        let q = f.order();
        (Just(f), 0..q, 0..q, 0..q).prop_map(|(f, a, b, c)| (f, Elem(a), Elem(b), Elem(c)))
    })
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in arb_field_and_elems()) {
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
        }
        // Frobenius is additive
        let p = f.characteristic() as u128;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..6, cols in 1usize..7, seed in any::<u64>()) {
        let f = Field::new(3, 1).unwrap();
        let mut s = seed;
        let m = Matrix::from_rows(&f, cols, &(0..rows).map(|_| (0..cols).map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Elem(((s >> 33) % 3) as u32)
        }).collect()).collect::<Vec<_>>()).unwrap();
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.rows(), cols);
        for r in 0..k.rows() {
            prop_assert!(m.mul_vec(k.row(r)).iter().all(|e| e.is_zero()));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    for f in fields() {
        let g = f.generator();
        assert_eq!(f.element_order(g), f.order() as u64 - 1);
        let mut seen: Vec<Elem> = (0..f.order() as u64 - 1).map(|i| f.exp(i)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), f.order() as usize - 1);
    }
}

#[test]
fn dual_bases_pair_to_identity() {
    for f in fields().into_iter().filter(|f| f.base().is_some()) {
        let pair = dual_basis(&f, &polynomial_basis(&f)).unwrap();
        let base = f.base().unwrap();
        for (a, &b) in pair.basis.iter().enumerate() {
            for (c, &d) in pair.dual.iter().enumerate() {
                let expect = if a == c { Elem::ONE } else { Elem::ZERO };
                assert_eq!(trace(&f, f.mul(b, d)), expect);
            }
        }
        for x in f.elements() {
            assert!(pair.coords(x).iter().all(|c| c.0 < base.order()));
            assert_eq!(pair.from_coords(&pair.coords(x)), x);
        }
    }
}

#[test]
fn companion_orders_by_counting() {
    for (p, n) in [(2u32, 3usize), (2, 4), (2, 7), (3, 2), (3, 3)] {
        let f = Field::prime(p).unwrap();
        let t = companion_matrix(&lowest_primitive(&f, n).unwrap()).unwrap();
        let order = (p as u64).pow(n as u32) - 1;
        assert_eq!(multiplicative_order_naive(&t, order + 1), Some(order));
    }
}
