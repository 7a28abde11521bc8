use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dinitz::model::{Line, ListAssignment, Orientation, RectangularGraph, VertexOrdering};
use dinitz::ops::{associated_matrix, associated_orientation, degree_profile, has_cyclic_triangle, line_out_degrees, parity};
use dinitz::parity::{census_breakdown, delta_map, parity_census, CensusOptions};
use dinitz::solver::{solve_rectangle, solve_square_plus_one, validate_solution, SolveError, SolveOptions};
use dinitz::LatinRectangle;

fn small_orientation() -> impl Strategy<Value = Orientation> {
    (1usize..4, 1usize..5).prop_flat_map(|(r, n)| {
        let g = RectangularGraph::shared(r, n, VertexOrdering::Lex).unwrap();
        prop::collection::vec(any::<bool>(), g.edge_count())
            .prop_map(move |bits| Orientation::from_bits(g.clone(), bits).unwrap())
    })
}

proptest! {
    #[test]
    fn single_reversal_flips_parity(d in small_orientation(), pick in any::<prop::sample::Index>()) {
        prop_assume!(d.edge_count() > 0);
        let mut e = d.clone();
        e.reverse_edge(pick.index(d.edge_count()));
        prop_assert_ne!(parity(&d), parity(&e));
    }

    #[test]
    fn profile_bounds(d in small_orientation()) {
        let g = d.graph().clone();
        let p = degree_profile(&d);
        let mut sum = 0;
        for v in g.vertices() {
            prop_assert!(p.horizontal(v) < g.cols());
            prop_assert!(p.total(v) <= g.rows() + g.cols() - 2);
            prop_assert!(p.horizontal(v) <= p.total(v));
            sum += p.total(v);
        }
        prop_assert_eq!(sum, g.edge_count());
    }

    #[test]
    fn triangle_free_lines_are_permutations(d in small_orientation()) {
        if has_cyclic_triangle(&d).is_none() {
            for line in d.graph().lines() {
                let mut degs = line_out_degrees(&d, line).unwrap();
                degs.sort_unstable();
                prop_assert_eq!(degs, (0..d.graph().line_vertices(line).len()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn latin_round_trip(seed in any::<u64>(), n in 2usize..=7, r_frac in 0.0f64..1.0) {
        let r = 1 + ((n - 1) as f64 * r_frac) as usize % (n - 1).max(1);
        let lists = ListAssignment::from_ints(vec![vec![(0..n as i64).collect(); n]; r]).unwrap();
        let s = solve_rectangle(&lists, &SolveOptions::seeded(seed)).unwrap();
        let rows: Vec<Vec<usize>> = s.rectangle.iter()
            .map(|row| row.iter().map(|x| x.to_string().parse().unwrap()).collect())
            .collect();
        let l = LatinRectangle::new(rows.clone()).unwrap();
        prop_assert_eq!(associated_matrix(&associated_orientation(&l)), rows);
    }

    #[test]
    fn solver_sound_and_complete_in_regime(seed in any::<u64>(), n in 2usize..=7, r_off in 1usize..6) {
        let r = n.saturating_sub(r_off).max(1);
        prop_assume!(r < n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists: Vec<Vec<Vec<i64>>> = (0..r).map(|_| (0..n).map(|_| {
            rand::seq::index::sample(&mut rng, 2 * n + 1, n).into_iter().map(|x| x as i64).collect()
        }).collect()).collect();
        let lists = ListAssignment::from_ints(lists).unwrap();
        let s = solve_rectangle(&lists, &SolveOptions::seeded(seed));
        let unsat = matches!(s, Err(SolveError::Unsatisfiable { .. }));
        prop_assert!(!unsat, "unsatisfiable in the guaranteed regime");
        let s = s.unwrap();
        prop_assert!(validate_solution(&s.rectangle, &lists).unwrap().is_valid());
        let again = solve_rectangle(&lists, &SolveOptions::seeded(seed)).unwrap();
        prop_assert_eq!(again.rectangle, s.rectangle);
    }

    #[test]
    fn square_solver_complete_in_regime(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists: Vec<Vec<Vec<i64>>> = (0..n).map(|_| (0..n).map(|_| {
            rand::seq::index::sample(&mut rng, 2 * n + 3, n + 1).into_iter().map(|x| x as i64).collect()
        }).collect()).collect();
        let lists = ListAssignment::from_ints(lists).unwrap();
        let s = solve_square_plus_one(&lists, &SolveOptions::seeded(seed)).unwrap();
        prop_assert!(validate_solution(&s.rectangle, &lists).unwrap().is_valid());
    }
}

/// Brute force over all 2^16 orientations of the 2x4 graph, independent of
/// the pruned enumerator.
#[test]
fn two_by_four_census_matches_brute_force() {
    let target = delta_map(2, 4).unwrap();
    for ordering in [VertexOrdering::Lex, VertexOrdering::RowsAscColsDesc] {
        let g = RectangularGraph::shared(2, 4, ordering).unwrap();
        let m = g.edge_count();
        let (mut even, mut odd, mut free) = (0u64, 0u64, HashSet::new());
        for mask in 0u64..1 << m {
            let d = Orientation::from_bits(g.clone(), (0..m).map(|e| mask >> e & 1 == 1)).unwrap();
            if degree_profile(&d).total_rows() != target.to_rows() {
                continue;
            }
            if mask.count_ones() % 2 == 0 {
                even += 1;
            } else {
                odd += 1;
            }
            if has_cyclic_triangle(&d).is_none() {
                free.insert(d);
            }
        }
        let b = census_breakdown(&g, &target, &CensusOptions::default()).unwrap();
        assert_eq!((b.all.de, b.all.do_), (even, odd));
        assert_eq!(b.triangle_free.total() as usize, free.len());
        assert_eq!(b.with_triangle.de, b.with_triangle.do_);
    }
}

#[test]
fn column_descending_census_sign() {
    // The two orderings disagree on every row pair: 1x3 has 3 such pairs,
    // so the sign flips; 2x3 has 6, so it does not.
    let lex = |r, n| parity_census(&delta_map(r, n).unwrap(), &VertexOrdering::Lex, &CensusOptions::default()).unwrap();
    let desc = |r, n| {
        parity_census(&delta_map(r, n).unwrap(), &VertexOrdering::RowsAscColsDesc, &CensusOptions::default()).unwrap()
    };
    assert_eq!(lex(1, 3).gap(), -desc(1, 3).gap());
    assert_eq!(lex(2, 3).gap(), desc(2, 3).gap());
}

#[test]
fn circulant_last_row_line() {
    let d = associated_orientation(&dinitz::circulant(3, 5).unwrap());
    assert_eq!(line_out_degrees(&d, Line::Row(3)).unwrap(), vec![2, 3, 4, 0, 1]);
}
