use std::time::Instant;

use shapefib::quotients::*;
use shapefib::space::pi0;

#[test]
fn every_small_action_gives_a_fibration() {
    let start = Instant::now();
    let graphs = action_domain(11, 12);
    let (mut actions, mut free, mut forests) = (0, 0, 0);
    for x in &graphs {
        for g in small_groups() {
            for a in all_actions(&g, x) {
                actions += 1;
                let report = quotient_fibration_report(&a).unwrap();
                assert!(report.holds(), "{x:?} {report:?}");
                forests += report.brute_force.is_some() as usize;
                for v in x.vertices() {
                    assert!(fiber_sequence_check(&a, v).unwrap().holds());
                }
                if a.is_free() {
                    free += 1;
                    assert!(free_comparison(&a).unwrap().is_equivalence());
                }
            }
        }
    }
    eprintln!("{} graphs, {actions} actions, {free} free, {forests} on forests, {:?}", graphs.len(), start.elapsed());
    assert!(free > 10 && forests > 100);
}

#[test]
fn identifications_in_the_quotient_count_connecting_elements() {
    // on forests the quotient is finite: |Hom([x], [y])| is the number of g with g·x ~ y
    for x in (1..=4).flat_map(simple_graphs) {
        for g in small_groups() {
            for a in all_actions(&g, &x) {
                let Some(q) = shape_of_quotient(&a).unwrap().finite else { continue };
                let comp = pi0(&x).of_vertex;
                for u in x.vertices() {
                    for v in x.vertices() {
                        let expected = (0..g.order()).filter(|&h| comp[a.act(h, u)] == comp[v]).count();
                        assert_eq!(q.hom(u, v).len(), expected);
                    }
                }
            }
        }
    }
}

#[test]
fn connected_spaces_have_connected_shapes() {
    for x in action_domain(3, 20) {
        assert!(shape_connectedness_check(&x));
    }
}
