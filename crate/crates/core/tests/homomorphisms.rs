//! The splitting and embedding maps, checked through the formal target
//! tables: relator preservation and the printed surjectivity witnesses.

use ela::closure::table_from_presentation;
use ela::dynkin::{DynkinDiagram, Family};
use ela::exactla::{ratio, sv_unit};
use ela::freelie::{bracket, electrical_relators, LieElement};
use ela::reps::{hom_b_to_a_plus_a, TargetElem};
use ela::verify::weight_vector_preimages;

#[test]
fn b_relators_vanish_in_both_summands() {
    for n in 2..=4 {
        let phi = hom_b_to_a_plus_a(n);
        let ta = table_from_presentation(&DynkinDiagram::new(Family::A, n).unwrap(), 0).unwrap();
        let tb =
            table_from_presentation(&DynkinDiagram::new(Family::A, n - 1).unwrap(), 0).unwrap();
        for rel in electrical_relators(&phi.source) {
            match phi.apply(&rel.lhs).unwrap() {
                TargetElem::Sum(l, r) => {
                    assert!(
                        ta.reduce(&l).unwrap().is_empty(),
                        "B_{n} {} left",
                        rel.label
                    );
                    assert!(
                        tb.reduce(&r).unwrap().is_empty(),
                        "B_{n} {} right",
                        rel.label
                    );
                }
                _ => panic!("sum target"),
            }
        }
    }
}

#[test]
fn b_surjectivity_witnesses() {
    // phi(-1/2 [e2[e2 e1]]) = (f2, 0) and phi(e2 + 1/2 [e2[e2 e1]]) = (0, f2)
    let n = 3;
    let phi = hom_b_to_a_plus_a(n);
    let ta = table_from_presentation(&DynkinDiagram::new(Family::A, n).unwrap(), 0).unwrap();
    let tb = table_from_presentation(&DynkinDiagram::new(Family::A, n - 1).unwrap(), 0).unwrap();
    let e1 = LieElement::generator(0);
    let e2 = LieElement::generator(1);
    let nested = bracket(&e2, &bracket(&e2, &e1));

    let x = nested.scale(&ratio(-1, 2));
    match phi.apply(&x).unwrap() {
        TargetElem::Sum(l, r) => {
            assert_eq!(ta.reduce(&l).unwrap(), sv_unit(ta.simple_index(1)));
            assert!(tb.reduce(&r).unwrap().is_empty());
        }
        _ => panic!("sum target"),
    }

    let y = e2.add(&nested.scale(&ratio(1, 2)));
    match phi.apply(&y).unwrap() {
        TargetElem::Sum(l, r) => {
            assert!(ta.reduce(&l).unwrap().is_empty());
            // f_2 is generator 0 of the shifted summand
            assert_eq!(tb.reduce(&r).unwrap(), sv_unit(tb.simple_index(0)));
        }
        _ => panic!("sum target"),
    }
}

#[test]
fn top_raising_preimage_degenerates_to_e1() {
    // at n = 1 the double sum collapses to its initial condition e_1
    let pre = weight_vector_preimages(1);
    assert_eq!(pre.top_raising, LieElement::generator(0));
    assert!(pre.raising.is_empty());
    assert!(pre.lowering.is_empty());
    assert_eq!(pre.toral.len(), 1);
}

#[test]
fn a2_solve_example() {
    // in the smallest symplectic representation, [e1,[e1,e2]] solves to -2 e1
    use ela::exactla::{rat, solve_in_span};
    use ela::reps::rep_a;
    let rep = rep_a(2);
    let e1 = LieElement::generator(0);
    let e2 = LieElement::generator(1);
    let vectors = vec![
        rep.evaluate(&e1).unwrap().flatten(),
        rep.evaluate(&e2).unwrap().flatten(),
    ];
    assert_eq!(ela::exactla::rank_of(&vectors, 4), 2);
    let target = rep
        .evaluate(&bracket(&e1, &bracket(&e1, &e2)))
        .unwrap()
        .flatten();
    let coeffs = solve_in_span(&vectors, 4, &target).unwrap().unwrap();
    assert_eq!(coeffs, vec![rat(-2), rat(0)]);
}
