use kempe_core::exactfield::{EchelonBasis, FieldSpec};
use kempe_core::graphalg::{GraphMonomial, Permutation, ValenceVector};
use kempe_core::invring::{relation_kernel, SparseVec, SymPower};
use kempe_core::relcat::*;

const Q: FieldSpec = FieldSpec::Rationals;

fn matching(n: usize, pairs: &[(usize, usize)]) -> GraphMonomial {
    assert_eq!(pairs.len() * 2, n);
    GraphMonomial::normalize(n, pairs).unwrap()
}

fn span(dim: usize, field: FieldSpec, vectors: &[SparseVec]) -> EchelonBasis {
    let mut b = EchelonBasis::new(dim, field);
    for v in vectors {
        b.insert(v).unwrap();
    }
    b
}

fn same_span(a: &EchelonBasis, b: &EchelonBasis) -> bool {
    a.rank() == b.rank() && b.basis().iter().all(|v| a.contains(v).unwrap())
}

fn proportional(a: &SparseVec, b: &SparseVec) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    let ratio = &a[0].1 * &b[0].1.inv().unwrap();
    a.iter()
        .zip(b)
        .all(|((i, x), (j, y))| i == j && *x == &ratio * y)
}

#[test]
fn catalog_relations_expand_to_zero() {
    let mut rels = vec![plucker_relation(), simple_quadric(), segre_binomial_cubic(), del_pezzo_base()];
    rels.extend(del_pezzo_quadrics());
    for rel in &rels {
        assert!(rel.expands_to_zero().unwrap(), "{rel}");
    }
    assert!(sign_relation().is_zero());
}

#[test]
fn binomials_have_equal_superpositions() {
    let extra = GraphMonomial::normalize(10, &[(9, 10)]).unwrap();
    let extended = extend_relation(&simple_quadric(), &extra).unwrap();
    for rel in [simple_quadric(), extended, segre_binomial_cubic()] {
        let (lhs, rhs) = binomial_sides(&rel).expect("binomial");
        assert_eq!(lhs.unsigned(), rhs.unsigned());
    }
}

#[test]
fn extended_quadric_stays_a_relation() {
    let mut rel = simple_quadric();
    for n in [10, 12] {
        let extra = GraphMonomial::normalize(n, &[(n - 1, n)]).unwrap();
        rel = extend_relation(&rel, &extra).unwrap();
        assert_eq!(rel.n, n);
        assert!(rel.expands_to_zero().unwrap());
    }
}

#[test]
fn five_points_with_double_weights() {
    let w = ValenceVector::uniform(5, 2);
    let k = relation_kernel(5, &w, 2, Q).unwrap();
    assert_eq!(k.sym().dim(), 21);
    assert_eq!(k.dim(), 5);
    let rotations: Vec<SparseVec> = del_pezzo_quadrics()
        .iter()
        .map(|r| k.sym().vector_of(r).unwrap())
        .collect();
    assert!(same_span(&span(k.sym().dim(), Q, &rotations), &span(k.sym().dim(), Q, &k.vectors)));
}

#[test]
fn six_point_cubic() {
    let w = ValenceVector::uniform(6, 1);
    assert_eq!(relation_kernel(6, &w, 2, Q).unwrap().dim(), 0);
    let k3 = relation_kernel(6, &w, 3, Q).unwrap();
    assert_eq!(k3.dim(), 1);
    let segre = k3.sym().vector_of(&segre_binomial_cubic()).unwrap();
    assert!(!segre.is_empty());
    assert!(proportional(&segre, &k3.vectors[0]));
    let skew = skew_cubic_vector(k3.sym(), &matching(6, &[(1, 2), (3, 4), (5, 6)])).unwrap();
    assert!(proportional(&skew, &segre));
    let check = generation_check(6, 3, Q).unwrap();
    assert_eq!((check.kernel2_dim, check.kernel_dim, check.defect()), (0, 1, 1));
}

#[test]
fn eight_point_skew_cubic_and_quadrics() {
    let w = ValenceVector::uniform(8, 1);
    let sym3 = SymPower::new(8, &w, 3);
    let k2 = relation_kernel(8, &w, 2, Q).unwrap();
    assert_eq!(k2.dim(), 14);
    let dim2 = k2.sym().dim();
    let kernel = span(dim2, Q, &k2.vectors);

    let cubic = skew_cubic_vector(&sym3, &matching(8, &[(1, 2), (3, 4), (5, 6), (7, 8)])).unwrap();
    assert!(!cubic.is_empty());
    let other = skew_cubic_vector(&sym3, &matching(8, &[(1, 5), (2, 8), (3, 4), (6, 7)])).unwrap();
    assert!(proportional(&cubic, &other));
    for t in [Permutation::transposition(8, 1, 2), Permutation::transposition(8, 3, 7)] {
        let moved = sym3.act(&sym3.action_matrix(&t).unwrap(), &cubic).unwrap();
        let negated: SparseVec = cubic.iter().map(|(i, c)| (*i, -c)).collect();
        assert_eq!(moved, negated);
    }

    let partials = span(dim2, Q, &partial_vectors(&sym3, &cubic));
    assert!(same_span(&partials, &kernel));
    let rotated = partial_vectors_in_basis(&sym3, &cubic, &Permutation::from_cycles(8, &[vec![1, 4, 6]]).unwrap()).unwrap();
    assert!(same_span(&partials, &span(dim2, Q, &rotated)));
    let sym2 = k2.sym();
    let swap = sym2.action_matrix(&Permutation::transposition(8, 2, 5)).unwrap();
    let moved: Vec<SparseVec> = partials.basis().iter().map(|v| sym2.act(&swap, v).unwrap()).collect();
    assert!(same_span(&partials, &span(dim2, Q, &moved)));

    let quadric = sym2.vector_of(&simple_quadric()).unwrap();
    let orbit = orbit_span(sym2, &quadric, Q).unwrap();
    assert!(same_span(&orbit.basis, &kernel));
    for (sigma, w) in &orbit.witnesses {
        let moved = simple_quadric().apply_permutation(sigma).unwrap();
        assert_eq!(&sym2.vector_of(&moved).unwrap(), w);
    }
    assert_eq!(orbit_span(sym2, &Vec::new(), Q).unwrap().dim(), 0);
}

#[test]
fn eight_point_cubics_generated_in_characteristic_zero_only() {
    let over_q = generation_check(8, 3, Q).unwrap();
    assert_eq!((over_q.kernel2_dim, over_q.kernel_dim), (14, 196));
    assert!(over_q.equal());

    let f3 = FieldSpec::prime(3).unwrap();
    let mut over_f3 = generation_check(8, 3, f3).unwrap();
    assert_eq!(over_f3.kernel_dim, 196);
    assert!(over_f3.defect() >= 1);
    let sym3 = over_f3.kernel.sym().clone();
    let cubic = skew_cubic_vector(&sym3, &matching(8, &[(1, 2), (3, 4), (5, 6), (7, 8)])).unwrap();
    let reduced = reduce_vector(&primitive_part(&cubic), f3).unwrap();
    assert!(!reduced.is_empty());
    assert!(over_f3.kernel.map.apply(&reduced, f3).is_empty());
    assert!(!over_f3.generated.contains(&reduced).unwrap());
    over_f3.generated.insert(&reduced).unwrap();
    assert_eq!(over_f3.generated.rank(), over_f3.kernel_dim);
}

#[test]
fn skew_cubic_rejects_non_matchings() {
    let g = GraphMonomial::normalize(6, &[(1, 2), (1, 3), (5, 6)]).unwrap();
    assert!(skew_cubic(6, &g).is_err());
}
