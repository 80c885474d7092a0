use monomial_codes::monomial::EXHAUSTIVE_MAX_VARIABLES;
use monomial_codes::{
    evaluate, BitVector, BooleanPolynomial, CodeFile, LowerTriangularAffineMap, Monomial,
    MonomialCode, MonomialSet, SymmetricChannel,
};
use proptest::prelude::*;

fn monomial(max_m: usize) -> impl Strategy<Value = Monomial> {
    (1..=max_m).prop_flat_map(|m| (0..(1u32 << m)).prop_map(move |b| Monomial::new(m, b).unwrap()))
}

fn triple(max_m: usize) -> impl Strategy<Value = (Monomial, Monomial, Monomial)> {
    (1..=max_m).prop_flat_map(|m| {
        let g = move || (0..(1u32 << m)).prop_map(move |b| Monomial::new(m, b).unwrap());
        (g(), g(), g())
    })
}

fn monomial_set(max_m: usize) -> impl Strategy<Value = MonomialSet> {
    (1..=max_m).prop_flat_map(|m| {
        proptest::collection::vec(0..(1u32 << m), 0..12)
            .prop_map(move |bits| MonomialSet::from_bits(m, bits).unwrap())
    })
}

fn downset(max_m: usize) -> impl Strategy<Value = MonomialSet> {
    monomial_set(max_m).prop_map(|s| s.decreasing_closure().unwrap())
}

proptest! {
    #[test]
    fn order_is_transitive_and_antisymmetric((f, g, h) in triple(12)) {
        let (fg, gh) = (f.leq(&g).unwrap(), g.leq(&h).unwrap());
        if fg && gh {
            prop_assert!(f.leq(&h).unwrap());
        }
        if fg && g.leq(&f).unwrap() {
            prop_assert_eq!(f, g);
        }
        prop_assert!(f.leq(&f).unwrap());
    }

    #[test]
    fn divisibility_refines_order((f, g, _h) in triple(12)) {
        if f.weak_leq(&g).unwrap() {
            prop_assert!(f.leq(&g).unwrap());
        }
        if f.leq(&g).unwrap() {
            prop_assert!(f.degree() <= g.degree());
        }
        prop_assert!(Monomial::one(f.m()).unwrap().leq(&f).unwrap());
    }

    #[test]
    fn complement_reverses_order((f, g, _h) in triple(12)) {
        prop_assert_eq!(f.leq(&g).unwrap(), g.complement().leq(&f.complement()).unwrap());
        prop_assert_eq!(f.complement().complement(), f);
    }

    #[test]
    fn closure_is_a_closure_operator(s in monomial_set(8), t in monomial_set(8)) {
        let c = s.decreasing_closure().unwrap();
        prop_assert!(c.is_decreasing());
        prop_assert!(s.is_subset(&c));
        prop_assert_eq!(c.decreasing_closure().unwrap(), c.clone());
        if t.m() == s.m() {
            let u = s.union(&t).unwrap();
            prop_assert!(c.is_subset(&u.decreasing_closure().unwrap()));
        }
    }

    #[test]
    fn dual_of_downset(set in downset(8)) {
        let code = MonomialCode::new(set.clone());
        let dual = code.dual().unwrap();
        prop_assert!(dual.is_decreasing());
        prop_assert_eq!(dual.dimension(), (1usize << set.m()) - set.len());
        prop_assert_eq!(dual.dual().unwrap(), code.clone());
        prop_assert!(set.complements().complement_in_all().unwrap().is_decreasing());
        if !set.is_empty() && set.len() < 1 << set.m() {
            let p = code.dual_parameters().unwrap().unwrap();
            prop_assert_eq!(p.r_minus, dual.r_minus().unwrap());
            prop_assert_eq!(p.r_plus, dual.r_plus().unwrap());
            prop_assert_eq!(p.min_distance, dual.min_distance().unwrap());
        }
    }

    #[test]
    fn evaluation_is_linear(m in 1usize..=8, a in any::<u64>(), b in any::<u64>()) {
        let pick = |mask: u64| (0..(1u32 << m)).filter(move |&t| mask.rotate_left(t) & 1 == 1);
        let p = BooleanPolynomial::from_terms(m, pick(a));
        let q = BooleanPolynomial::from_terms(m, pick(b));
        let mut sum = p.evaluate().unwrap();
        sum.xor_assign(&q.evaluate().unwrap());
        prop_assert_eq!(sum, p.add(&q).evaluate().unwrap());
    }

    #[test]
    fn action_agrees_with_position_permutation(g in monomial(8), seed in any::<u64>()) {
        let map = LowerTriangularAffineMap::random(g.m(), seed);
        let image = map.act(&g);
        prop_assert!(image.contains(&g));
        let permuted = evaluate(&g).unwrap().permute(&map.coordinate_permutation());
        prop_assert_eq!(image.evaluate().unwrap(), permuted);
        let mut perm = map.coordinate_permutation();
        perm.sort_unstable();
        prop_assert!(perm.iter().enumerate().all(|(i, &p)| i == p));
    }

    #[test]
    fn code_files_round_trip(set in monomial_set(10)) {
        let file = MonomialCode::new(set).to_file();
        let text = file.to_canonical_json();
        let back = CodeFile::parse(&text).unwrap();
        prop_assert_eq!(back.to_canonical_json(), text);
    }

    #[test]
    fn bit_vectors_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
        let v = BitVector::from_bools(bits.iter().copied());
        let back: BitVector = v.to_string().parse().unwrap();
        prop_assert_eq!(back.weight(), bits.iter().filter(|&&b| b).count());
        prop_assert_eq!(back, v);
    }

    #[test]
    fn transforms_keep_channels_valid(p in 0.0f64..=0.5, erasure in any::<bool>()) {
        let w = if erasure { SymmetricChannel::bec(p).unwrap() } else { SymmetricChannel::bsc(p).unwrap() };
        let b = w.bhattacharyya();
        for t in [w.minus().unwrap(), w.plus().unwrap(), w.plus().unwrap().minus().unwrap()] {
            prop_assert!((t.p0().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            prop_assert!((t.p1().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            for (y, &z) in t.involution().iter().enumerate() {
                prop_assert_eq!(t.involution()[z], y);
                prop_assert_eq!(t.p1()[y], t.p0()[z]);
            }
        }
        prop_assert!(w.plus().unwrap().bhattacharyya() <= b + 1e-15);
        prop_assert!(b <= w.minus().unwrap().bhattacharyya() + 1e-15);
    }
}

#[test]
fn exhaustive_cap_is_sixteen() {
    assert_eq!(EXHAUSTIVE_MAX_VARIABLES, 16);
    assert!(MonomialSet::all(17).unwrap_err().is_resource_cap());
}
