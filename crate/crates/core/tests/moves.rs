use plbraid::oracles::normalized_bracket_from_braid;
use plbraid::{BraidWord, LMoveKind};

#[test]
fn l_move_preserves_bracket_at_every_position() {
    let b = BraidWord::new(4, vec![1, -2, 1, 3, 2, 2, -3, 1]).unwrap();
    let want = normalized_bracket_from_braid(&b).unwrap();
    for split in 0..=b.len() {
        for i in 1..=5 {
            for kind in [LMoveKind::Over, LMoveKind::Under] {
                for s in [1, -1] {
                    let o = b.l_move(split, i, kind, s).unwrap();
                    assert_eq!(o.strands(), 5);
                    assert_eq!(o.exponent_sum(), b.exponent_sum() + s as i64);
                    assert_eq!(normalized_bracket_from_braid(&o).unwrap(), want, "{split} {i} {kind:?} {s}");
                }
            }
        }
    }
}

#[test]
fn boundary_l_move_is_a_markov_move() {
    let b = BraidWord::new(3, vec![1, -2, 1]).unwrap();
    for s in [1, -1] {
        for kind in [LMoveKind::Over, LMoveKind::Under] {
            let l = b.l_move(b.len(), 4, kind, s).unwrap().free_reduce();
            assert_eq!(l, b.markov_stabilize(s).unwrap());
        }
    }
}
