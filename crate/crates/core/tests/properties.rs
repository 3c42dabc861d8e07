use itertools::Itertools;
use latinsq::construct::{
    additive_family, column_residue_counts, develop_cyclic, gcd, gf_mols, is_prime,
    modular_additive, modular_multiplicative, shift_family, Sign,
};
use latinsq::search::{
    exhaustive_t_max, max_mutual_subset, orthogonal_mate_search, LatinSquares, Payload, Status,
};
use latinsq::verify::{is_latin, mutually_t_orthogonal, t_orthogonal, t_orthogonal_squares};
use latinsq::{Grid, LatinSquare, SearchBudget, SquareFamily};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn perm(rng: &mut ChaCha8Rng, s: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..s).collect();
    p.shuffle(rng);
    p
}

/// A cyclic square scrambled by random row, column and symbol permutations.
fn scrambled(s: usize, seed: u64) -> LatinSquare {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LatinSquare::cyclic(s)
        .unwrap()
        .permute_rows(&perm(&mut rng, s))
        .unwrap()
        .permute_cols(&perm(&mut rng, s))
        .unwrap()
        .relabel(&perm(&mut rng, s))
        .unwrap()
}

fn is_valid(sq: &LatinSquare) -> bool {
    is_latin(&sq.to_grid()).holds()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transforms_preserve_latin(s in 1usize..=12, seed: u64, k in 0usize..12) {
        let sq = scrambled(s, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        prop_assert!(is_valid(&sq));
        prop_assert!(is_valid(&sq.transpose()));
        prop_assert!(is_valid(&sq.shift_rows(k)));
        prop_assert!(is_valid(&sq.normalize_first_row()));
        prop_assert!(is_valid(&sq.relabel(&perm(&mut rng, s)).unwrap()));
        prop_assert_eq!(sq.transpose().transpose(), sq.clone());
        let first: Vec<usize> = sq.normalize_first_row().row(0).iter().map(|&v| v as usize).collect();
        prop_assert_eq!(first, (0..s).collect::<Vec<_>>());
    }

    #[test]
    fn single_square_superposes_to_s_distinct(s in 1usize..=10, seed: u64) {
        let sq = scrambled(s, seed);
        prop_assert_eq!(t_orthogonal_squares(&[&sq]).unwrap().distinct, s);
    }

    #[test]
    fn distinct_count_symmetries(s in 2usize..=9, seeds in prop::collection::vec(any::<u64>(), 2..4)) {
        let squares: Vec<LatinSquare> = seeds.iter().map(|&x| scrambled(s, x)).collect();
        let refs: Vec<&LatinSquare> = squares.iter().collect();
        let base = t_orthogonal_squares(&refs).unwrap().distinct;
        let reversed: Vec<&LatinSquare> = refs.iter().rev().copied().collect();
        prop_assert_eq!(t_orthogonal_squares(&reversed).unwrap().distinct, base);
        let mut rng = ChaCha8Rng::seed_from_u64(seeds[0]);
        let relabeled = squares[0].relabel(&perm(&mut rng, s)).unwrap();
        let mut swapped = refs.clone();
        swapped[0] = &relabeled;
        prop_assert_eq!(t_orthogonal_squares(&swapped).unwrap().distinct, base);
        let rows = perm(&mut rng, s);
        let moved: Vec<LatinSquare> = squares.iter().map(|q| q.permute_rows(&rows).unwrap()).collect();
        let moved_refs: Vec<&LatinSquare> = moved.iter().collect();
        prop_assert_eq!(t_orthogonal_squares(&moved_refs).unwrap().distinct, base);
    }

    #[test]
    fn prefix_extension(s in 2usize..=8, seeds in prop::collection::vec(any::<u64>(), 3..6)) {
        let squares: Vec<LatinSquare> = seeds.iter().map(|&x| scrambled(s, x)).collect();
        let fam = SquareFamily::external("random", squares).unwrap();
        for t in 1..fam.len() {
            let prefix: Vec<usize> = (0..t).collect();
            if t_orthogonal(&fam, &prefix).unwrap().is_t_orthogonal {
                for extra in t..fam.len() {
                    let mut ext = prefix.clone();
                    ext.push(extra);
                    prop_assert!(t_orthogonal(&fam, &ext).unwrap().is_t_orthogonal);
                }
            }
        }
    }

    #[test]
    fn developed_permutations_are_latin(s in 1usize..=20, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let row: Vec<usize> = perm(&mut rng, s).into_iter().map(|v| v + 1).collect();
        let sq = develop_cyclic(&row).unwrap();
        prop_assert!(is_valid(&sq));
        let first: Vec<usize> = sq.to_one_based_rows()[0].clone();
        prop_assert_eq!(first, row);
    }

    #[test]
    fn grid_verdict_agrees_with_square_constructor(s in 1usize..=4, cells in prop::collection::vec(0usize..4, 16)) {
        let rows: Vec<Vec<usize>> = (0..s).map(|r| cells[r * s..(r + 1) * s].to_vec()).collect();
        let grid = Grid::from_rows(rows.clone()).unwrap();
        prop_assert_eq!(is_latin(&grid).holds(), LatinSquare::from_rows(rows).is_ok());
    }

    #[test]
    fn text_and_json_round_trip(s in 1usize..=12, seed: u64) {
        let sq = scrambled(s, seed);
        let text = latinsq::io::square_to_text(&sq);
        prop_assert_eq!(latinsq::io::parse_square_text(&text).unwrap(), sq.clone());
        let json = serde_json::to_string(&sq).unwrap();
        prop_assert_eq!(serde_json::from_str::<LatinSquare>(&json).unwrap(), sq);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn found_mates_are_orthogonal(s in 3usize..=5, seed: u64) {
        let sq = scrambled(s, seed);
        let out = orthogonal_mate_search(&sq, &SearchBudget::default());
        if let Payload::Square { square } = &out.payload {
            prop_assert_eq!(out.status, Status::Found);
            prop_assert_eq!(t_orthogonal_squares(&[&sq, square]).unwrap().defect, 0);
        } else {
            prop_assert_eq!(out.status, Status::ProvenAbsent);
        }
        let par = orthogonal_mate_search(&sq, &SearchBudget::default().with_threads(3));
        prop_assert_eq!(par, out);
    }

    #[test]
    fn subset_search_never_beats_exhaustive(seed: u64, n in 2usize..12) {
        let all: Vec<LatinSquare> = LatinSquares::new(4).unwrap().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picked: Vec<LatinSquare> = all.choose_multiple(&mut rng, n).cloned().collect();
        let fam = SquareFamily::external("sample", picked).unwrap();
        let out = max_mutual_subset(&fam, 2, &SearchBudget::default()).unwrap();
        let Payload::Subset { indices } = out.payload else { panic!() };
        prop_assert!(indices.len() <= 3);
        let pick = fam.select(&indices).unwrap();
        if pick.len() >= 2 {
            prop_assert!(mutually_t_orthogonal(&pick, 2).unwrap().holds());
        }
    }
}

#[test]
fn exhaustive_maximum_bounds_subset_search() {
    let Payload::Family { squares } = exhaustive_t_max(4, 2, &SearchBudget::default())
        .unwrap()
        .payload
    else {
        panic!()
    };
    assert_eq!(squares.len(), 3);
    let fam = gf_mols(4).unwrap();
    let Payload::Subset { indices } = max_mutual_subset(&fam, 2, &SearchBudget::default())
        .unwrap()
        .payload
    else {
        panic!()
    };
    assert!(indices.len() <= squares.len());
}

#[test]
fn minus_sign_is_plus_with_complementary_multiplier() {
    for s in 2..=12 {
        for h in 1..s {
            if gcd(h, s) != 1 {
                continue;
            }
            let minus = modular_additive(s, h, Sign::Minus).unwrap();
            let plus = modular_additive(s, s - h, Sign::Plus).unwrap();
            assert_eq!(minus, plus, "s={s} h={h}");
            // and column j of one is a column of the other
            for c in 0..s {
                let col: Vec<u8> = (0..s).map(|r| minus.get(r, c) as u8).collect();
                assert!((0..s).any(|d| (0..s).all(|r| plus.get(r, d) as u8 == col[r])));
            }
        }
    }
}

#[test]
fn multiplicative_grid_is_latin_iff_successor_prime() {
    for s in 1..=63 {
        let grid = modular_multiplicative(s).unwrap();
        assert_eq!(grid.is_latin(), is_prime(s + 1), "s={s}");
        assert_eq!(grid.verdict().holds(), is_latin(grid.grid()).holds());
    }
}

#[test]
fn prime_additive_squares_are_latin() {
    for s in (2..=64).filter(|&s| is_prime(s)) {
        for h in 1..s {
            assert!(is_valid(&modular_additive(s, h, Sign::Plus).unwrap()));
            assert!(is_valid(&modular_additive(s, h, Sign::Minus).unwrap()));
        }
        assert_eq!(additive_family(s).unwrap().len(), s - 1);
    }
}

#[test]
fn column_repetition_law() {
    for n in (4..=30).filter(|&n| !is_prime(n)) {
        for j in 1..n {
            let g = gcd(j, n);
            let counts = column_residue_counts(n, j);
            for (residue, &count) in counts.iter().enumerate() {
                let expected = match residue {
                    0 => g - 1,
                    r if r % g == 0 => g,
                    _ => 0,
                };
                assert_eq!(count, expected, "n={n} column={j} residue={residue}");
            }
            // the same counts read off the grid itself
            let grid = modular_multiplicative(n - 1).unwrap();
            let mut seen = vec![0; n];
            for r in 0..n - 1 {
                seen[(grid.grid().get(r, j - 1) + 1) % n] += 1;
            }
            assert_eq!(seen, counts);
        }
    }
}

#[test]
fn mutual_orthogonality_is_upward_closed_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let s = rng.gen_range(3..=8);
        let base = if is_prime(s + 1) {
            modular_multiplicative(s).unwrap().into_square().unwrap()
        } else {
            scrambled(s, rng.gen())
        };
        let fam = shift_family(&base.permute_cols(&perm(&mut rng, s)).unwrap());
        let staircase: Vec<bool> = (2..=fam.len())
            .map(|t| mutually_t_orthogonal(&fam, t).unwrap().holds())
            .collect();
        assert!(
            staircase.iter().tuple_windows().all(|(a, b)| !a || *b),
            "{staircase:?}"
        );
    }
}

#[test]
fn proven_absent_is_invariant_under_relabeling() {
    let base = modular_multiplicative(6).unwrap().into_square().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..3 {
        let sq = base.relabel(&perm(&mut rng, 6)).unwrap();
        assert_eq!(
            orthogonal_mate_search(&sq, &SearchBudget::default()).status,
            Status::ProvenAbsent
        );
    }
}
