use kempe_core::exactfield::FieldSpec;
use kempe_core::graphalg::ValenceVector;
use kempe_core::invring::{graded_dimension, relation_kernel};
use kempe_core::symrep::{character_table, hook_dimension, module_character, sym_power_character, Partition};

fn even_partitions(n: usize, max_parts: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = Partition::all(n)
        .into_iter()
        .filter(|p| p.all_even() && p.len() <= max_parts)
        .collect();
    out.sort();
    out
}

#[test]
fn degree_one_piece_is_two_row_irreducible() {
    for n in [4, 6, 8, 10] {
        let table = character_table(n).unwrap();
        let r1 = module_character(n, &ValenceVector::uniform(n, 1)).unwrap();
        let m = table.decompose(&r1).unwrap();
        assert_eq!(m.partitions(), vec![Partition::new(vec![n / 2, n / 2]).unwrap()], "n = {n}");
    }
}

#[test]
fn quadrics_and_degree_two_piece() {
    let q = FieldSpec::Rationals;
    for n in [6, 8, 10] {
        let table = character_table(n).unwrap();
        let r1 = module_character(n, &ValenceVector::uniform(n, 1)).unwrap();
        let sym2 = table.decompose(&sym_power_character(&r1, 2).unwrap()).unwrap();
        let r2_char = module_character(n, &ValenceVector::uniform(n, 2)).unwrap();
        let r2 = table.decompose(&r2_char).unwrap();
        assert!(sym2.is_multiplicity_free());
        assert!(r2.is_multiplicity_free());
        assert_eq!(sym2.partitions(), even_partitions(n, 4), "n = {n}");
        assert_eq!(r2.partitions(), even_partitions(n, 3), "n = {n}");

        let diff = table.decompose(&sym_power_character(&r1, 2).unwrap().sub(&r2_char).unwrap()).unwrap();
        let four_part: Vec<Partition> = even_partitions(n, 4).into_iter().filter(|p| p.len() == 4).collect();
        assert_eq!(diff.partitions(), four_part);

        let r2_dim = graded_dimension(n, &ValenceVector::uniform(n, 2), q).unwrap();
        assert_eq!(r2.dimension(), r2_dim as u128);
        if n <= 8 {
            let kernel = relation_kernel(n, &ValenceVector::uniform(n, 1), 2, q).unwrap();
            assert_eq!(diff.dimension(), kernel.dim() as u128);
        }
    }
}

#[test]
fn ten_point_quadric_count_from_hook_lengths() {
    assert_eq!(hook_dimension(&Partition::new(vec![4, 2, 2, 2]).unwrap()), 300);
}

#[test]
fn skew_cubics() {
    for (n, expected) in [(6, 1), (8, 1), (10, 0)] {
        let table = character_table(n).unwrap();
        let r1 = module_character(n, &ValenceVector::uniform(n, 1)).unwrap();
        let cubes = sym_power_character(&r1, 3).unwrap();
        assert_eq!(table.sign_multiplicity(&cubes).unwrap(), expected, "n = {n}");
    }
}
