use homog_einstein::algebra::{rat, ratio};
use homog_einstein::{GroupFamily, ModuleId, SpaceSpec};

use GroupFamily::{Orthogonal, Symplectic};
use ModuleId::{Diagonal, OffDiagonal};

fn spec(family: GroupFamily, blocks: &[u64], s: usize) -> SpaceSpec {
    SpaceSpec::new(family, blocks.to_vec(), s).unwrap()
}

#[test]
fn module_dimensions() {
    assert_eq!(spec(Orthogonal, &[3, 2], 1).module_dimension(Diagonal(1)).unwrap(), 3);
    assert_eq!(spec(Symplectic, &[1, 2], 1).module_dimension(Diagonal(1)).unwrap(), 3);
    assert_eq!(spec(Symplectic, &[2, 3], 1).module_dimension(OffDiagonal(1, 2)).unwrap(), 24);
    // isotropy subalgebras have a dimension but are not summands
    let so = spec(Orthogonal, &[3, 2], 1);
    assert_eq!(so.module_dimension(Diagonal(2)).unwrap(), 1);
    assert!(!so.is_summand(Diagonal(2)));
    assert!(so.module_dimension(Diagonal(3)).is_err());
    assert!(so.module_dimension(OffDiagonal(2, 1)).is_err());
}

#[test]
fn dimension_of_p_matches_group_quotient() {
    let sp = spec(Orthogonal, &[3, 3, 4], 2);
    // dim so(10) - dim so(4) = 45 - 6
    assert_eq!(sp.dim_p(), 39);
    let sp = spec(Symplectic, &[1, 1, 1], 2);
    // dim sp(3) - dim sp(1) = 21 - 3
    assert_eq!(sp.dim_p(), 18);
}

#[test]
fn killing_ratios() {
    assert_eq!(spec(Orthogonal, &[3, 2], 1).killing_ratio(3).unwrap(), ratio(1, 3));
    assert_eq!(spec(Orthogonal, &[3, 2], 1).killing_ratio(5).unwrap(), rat(1));
    assert_eq!(spec(Symplectic, &[1, 1], 1).killing_ratio(1).unwrap(), ratio(2, 3));
}

#[test]
fn triple_symbols() {
    let so = spec(Orthogonal, &[2, 3], 1);
    let table = so.triple_symbols();
    // the so(3) isotropy block
    assert_eq!(table.get(Diagonal(2), Diagonal(2), Diagonal(2)), rat(1));
    assert_eq!(table.get(Diagonal(1), Diagonal(1), Diagonal(1)), rat(0));
    assert_eq!(table.get(Diagonal(1), OffDiagonal(1, 2), OffDiagonal(1, 2)), rat(1));
    // symmetric under permutation
    assert_eq!(table.get(OffDiagonal(1, 2), Diagonal(1), OffDiagonal(1, 2)), rat(1));

    let sp = spec(Symplectic, &[1, 1], 1);
    assert_eq!(sp.triple_symbols().get(Diagonal(1), OffDiagonal(1, 2), OffDiagonal(1, 2)), rat(1));
}

#[test]
fn triple_with_three_distinct_blocks() {
    let so = spec(Orthogonal, &[3, 3, 2], 2);
    let v = so.triple_symbols().get(OffDiagonal(1, 2), OffDiagonal(2, 3), OffDiagonal(1, 3));
    assert_eq!(v, ratio(3, 2));
}

#[test]
fn genericity() {
    let c = spec(Orthogonal, &[2, 2, 5], 2).check_generic();
    assert!(!c.generic);
    assert!(c.reason.unwrap().contains("two diagonal blocks of size 2"));
    assert!(spec(Symplectic, &[1, 1, 1], 2).check_generic().generic);
    assert!(spec(Orthogonal, &[3, 4], 1).check_generic().generic);
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(SpaceSpec::new(Orthogonal, vec![], 0).is_err());
    assert!(SpaceSpec::new(Orthogonal, vec![3, 0], 1).is_err());
    assert!(SpaceSpec::new(Orthogonal, vec![3, 2], 3).is_err());
    assert!(SpaceSpec::new(Orthogonal, vec![2], 1).is_err());
}

#[test]
fn module_id_text_round_trip() {
    for id in [Diagonal(1), Diagonal(12), OffDiagonal(1, 3), OffDiagonal(10, 11)] {
        assert_eq!(id.to_string().parse::<ModuleId>().unwrap(), id);
    }
    assert!("q1".parse::<ModuleId>().is_err());
    assert!("p(1)".parse::<ModuleId>().is_err());
}
