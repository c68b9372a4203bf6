use proptest::prelude::*;
use proptest::sample::select;

use relq::oracle::brute::{brute_product, brute_residual_left, brute_residual_right};
use relq::oracle::laws::{run_laws, LAWS};
use relq::tensor::{galois_inverse, galois_map, map_leq};
use relq::{Bits, ClosureSpace, FinitePoset, RelationQuantale, Relation, Side, TensorBase};

const CASES: u32 = 1000;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        ..ProptestConfig::default()
    }
}

/// A poset on up to six points from strictly increasing index pairs.
fn poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..8).prop_map(move |pairs| {
            let pairs: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a < b).collect();
            FinitePoset::from_pairs((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap()
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = Bits> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(move |v| Bits::from_indices(n, v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)))
}

fn space() -> impl Strategy<Value = (ClosureSpace, Bits, Bits)> {
    (1usize..=6).prop_flat_map(|n| {
        (proptest::collection::vec(subset(n), 0..5), subset(n), subset(n)).prop_map(move |(gens, x, y)| {
            (ClosureSpace::from_generators_n(n, &gens).unwrap(), x.clone(), x.union(&y))
        })
    })
}

fn lattices() -> Vec<FinitePoset> {
    vec![
        FinitePoset::chain(3),
        FinitePoset::chain(4),
        FinitePoset::powerset(&["p", "q"]),
        FinitePoset::n5(),
        FinitePoset::m3(),
    ]
}

fn relation(rows: usize, cols: usize) -> impl Strategy<Value = Relation> {
    subset(rows * cols).prop_map(move |b| Relation::from_bits(rows, cols, b))
}

/// A lattice square and a relation on its truncated carrier.
fn square_with_relations() -> impl Strategy<Value = (TensorBase, Relation, Relation)> {
    select(lattices()).prop_flat_map(|p| {
        let base = TensorBase::lattice_square("B", &p);
        let (r, c) = (base.rows(), base.cols());
        (Just(base), relation(r, c), relation(r, c))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cuts_absorb_down_closure(p in poset(), seed in any::<u64>()) {
        let x = Bits::from_indices(p.len(), (0..p.len()).filter(|i| seed >> i & 1 == 1));
        let down = p.down_closure(&x);
        prop_assert_eq!(p.cut(&down), p.cut(&x));
        prop_assert!(down.is_subset(&p.cut(&x)));
        prop_assert!(p.is_down_set(&p.cut(&x)));
        if let Some(s) = p.join(&x) {
            prop_assert_eq!(&p.cut(&x), p.down_of(s));
        }
    }

    #[test]
    fn space_closure_is_a_closure_operator((s, x, y) in space()) {
        let (cx, cy) = (s.closure_of(&x), s.closure_of(&y));
        prop_assert!(x.is_subset(&cx));
        prop_assert!(cx.is_subset(&cy));
        prop_assert_eq!(s.closure_of(&cx), cx.clone());
        prop_assert!(s.is_closed(&cx));
    }

    #[test]
    fn least_tensor_is_a_closure_and_join_dense((base, r, s) in square_with_relations()) {
        let t = base.t_bar(&r);
        prop_assert!(r.is_subset(&t));
        prop_assert!(t.is_subset(&base.t_bar(&r.union(&s))));
        prop_assert_eq!(base.t_bar(&t), t.clone());
        prop_assert!(base.is_tensor_by_slices(&t) && base.is_tensor_by_rectangles(&t));
        let mut union = base.empty();
        for (a, b) in t.pairs() {
            union.union_with(&base.pure(a, b));
        }
        prop_assert_eq!(union, t.clone());
        prop_assert_eq!(base.t_bar_by_steps(&r).unwrap(), t);
    }

    #[test]
    fn tensors_and_maps_correspond((base, r, s) in square_with_relations()) {
        let (t, u) = (base.t_bar(&r), base.t_bar(&s));
        let f = galois_map(&base, &t).unwrap();
        let g = galois_map(&base, &u).unwrap();
        prop_assert_eq!(galois_inverse(&base, &f).unwrap(), t.clone());
        prop_assert_eq!(galois_map(&base, &galois_inverse(&base, &f).unwrap()).unwrap(), f.clone());
        let b = base.right().augmented().unwrap().poset();
        prop_assert_eq!(t.is_subset(&u), map_leq(b, &f, &g));
    }

    #[test]
    fn residuals_are_adjoint_to_the_product(
        (q, members, i, j, k) in select(vec![FinitePoset::chain(3), FinitePoset::powerset(&["p", "q"])]).prop_flat_map(|p| {
            let q = RelationQuantale::of_side(&Side::lattice("B", &p)).unwrap();
            let members = q.enumerate(4096).unwrap();
            let n = members.len();
            (Just(q), Just(members), 0..n, 0..n, 0..n)
        })
    ) {
        let (r, s, t) = (&members[i], &members[j], &members[k]);
        let rs = q.product(r, s);
        prop_assert_eq!(&rs, &brute_product(r, s));
        prop_assert_eq!(q.residual_right(r, t), brute_residual_right(&q, &members, r, t));
        prop_assert_eq!(q.residual_left(t, s), brute_residual_left(&q, &members, t, s));
        let a = rs.is_subset(t);
        prop_assert_eq!(a, s.is_subset(&q.residual_right(r, t)));
        prop_assert_eq!(a, r.is_subset(&q.residual_left(t, s)));
    }
}

#[test]
fn seeded_laws_hold() {
    let reports = run_laws(CASES as usize, 7);
    assert_eq!(reports.len(), LAWS.len());
    for r in reports {
        assert!(r.ok(), "{r}");
        assert!(r.cases >= CASES as usize);
    }
}
