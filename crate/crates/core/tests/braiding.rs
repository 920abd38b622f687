use plbraid::braiding::{braid_diagram, check_triangle_condition, prepare};
use plbraid::oracles::{normalized_bracket, normalized_bracket_from_braid};
use plbraid::{closure, BraidWord};

fn w(n: usize, l: &[i32]) -> BraidWord {
    BraidWord::new(n, l.to_vec()).unwrap()
}

#[test]
fn closures_braid_back_to_the_same_link() {
    for b in [w(2, &[1, 1, 1]), w(3, &[1, -2, 1, -2]), w(3, &[1, 2]), w(2, &[-1, -1]), w(1, &[])] {
        let d = closure(&b);
        let ld = prepare(&d).unwrap();
        assert!(check_triangle_condition(&ld).0);
        let out = braid_diagram(&ld).unwrap();
        assert_eq!(
            normalized_bracket_from_braid(&out).unwrap(),
            normalized_bracket(&d).unwrap(),
            "{b:?} -> {out:?}"
        );
    }
}

#[test]
fn closure_round_trip_is_exact() {
    for b in [w(2, &[1, 1, 1]), w(3, &[1, -2, 1, -2]), w(3, &[1, 2]), w(2, &[-1, -1]), w(1, &[]), w(4, &[3, 1, -2, 3])] {
        let out = braid_diagram(&prepare(&closure(&b)).unwrap()).unwrap();
        assert_eq!(out.free_reduce(), b.free_reduce());
    }
}
