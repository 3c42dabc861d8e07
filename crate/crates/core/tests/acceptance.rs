//! Acceptance checks, one PASS/FAIL line per criterion. Runs as a plain
//! binary so every line is printed even when an earlier check fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use latinsq::construct::{
    additive_family, collapse_symbols, column_residue_counts, develop_cyclic, gcd, gf_mols,
    inflate_frequency, is_prime, modular_multiplicative, shift_family, ORDER_15_FIRST_ROWS,
};
use latinsq::search::{
    conjecture_probe, enumerate_latin, orthogonal_mate_search, EnumerationMode, Payload, Status,
};
use latinsq::verify::{
    freq_orthogonal, is_frequency, is_latin, min_orthogonality_degree, mutually_t_orthogonal,
    t_orthogonal,
};
use latinsq::{LatinSquare, SearchBudget, SquareFamily};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Check>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rows_of(sq: &LatinSquare) -> Vec<String> {
    sq.to_one_based_rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect()
}

fn digits(rows: &str) -> Vec<String> {
    rows.split('|').map(str::to_string).collect()
}

fn square(rows: &str) -> LatinSquare {
    let rows = rows
        .split('|')
        .map(|r| {
            r.chars()
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect()
        })
        .collect();
    LatinSquare::from_one_based(rows).unwrap()
}

/// 1-based tuples of the superposition, row-major.
fn tuples(family: &SquareFamily, indices: &[usize]) -> Vec<Vec<usize>> {
    let t = family.superpose(indices).unwrap();
    t.tuples()
        .map(|x| x.iter().map(|&v| v as usize + 1).collect())
        .collect()
}

fn every_pair_fails(family: &SquareFamily) -> bool {
    (0..family.len())
        .combinations(2)
        .all(|p| !t_orthogonal(family, &p).unwrap().is_t_orthogonal)
}

fn order_three_pair() -> Check {
    let fam = additive_family(3).map_err(|e| e.to_string())?;
    ensure(
        rows_of(fam.member(0).unwrap()) == digits("231|312|123"),
        "h=1 grid",
    )?;
    ensure(
        rows_of(fam.member(1).unwrap()) == digits("321|132|213"),
        "h=2 grid",
    )?;
    let report = t_orthogonal(&fam, &[0, 1]).unwrap();
    ensure(report.is_t_orthogonal, "pair not 2-orthogonal")?;
    let top: Vec<Vec<usize>> = tuples(&fam, &[0, 1]).into_iter().take(3).collect();
    ensure(
        top == [vec![2, 3], vec![3, 2], vec![1, 1]],
        format!("top row {top:?}"),
    )?;
    Ok("9 distinct pairs".into())
}

fn prime_additive_families() -> Check {
    for (s, n) in [(5, 4), (7, 6)] {
        let fam = additive_family(s).unwrap();
        ensure(
            fam.len() == n,
            format!("order {s} has {} members", fam.len()),
        )?;
        for t in 2..=n {
            ensure(
                mutually_t_orthogonal(&fam, t).unwrap().holds(),
                format!("order {s} fails t={t}"),
            )?;
        }
    }
    Ok("all t from 2 to N hold".into())
}

fn order_four_shift() -> Check {
    let base = modular_multiplicative(4)
        .unwrap()
        .into_square()
        .map_err(|e| e.to_string())?;
    let fam = shift_family(&base);
    let expected = [
        "1234|2413|3142|4321",
        "2413|3142|4321|1234",
        "3142|4321|1234|2413",
        "4321|1234|2413|3142",
    ];
    for (k, rows) in expected.iter().enumerate() {
        ensure(
            rows_of(fam.member(k).unwrap()) == digits(rows),
            format!("member {}", k + 1),
        )?;
    }
    ensure(min_orthogonality_degree(&fam) == Some(3), "min degree")?;
    ensure(every_pair_fails(&fam), "some pair is 2-orthogonal")?;
    let reference = [
        "1234", "2413", "3142", "4321", "2341", "4132", "1423", "3214", "3412", "1324", "4231",
        "2143", "4123", "3241", "2314", "1432",
    ];
    let got: Vec<String> = tuples(&fam, &[0, 1, 2, 3])
        .iter()
        .map(|t| t.iter().map(|v| v.to_string()).collect())
        .collect();
    ensure(got == reference, format!("4-tuples {got:?}"))?;
    Ok("degree 3, 16 tuples match".into())
}

fn order_six_shift() -> Check {
    let base = modular_multiplicative(6)
        .unwrap()
        .into_square()
        .map_err(|e| e.to_string())?;
    let fam = shift_family(&base);
    ensure(
        rows_of(fam.member(0).unwrap()) == digits("123456|246135|362514|415263|531642|654321"),
        "A_1 rows",
    )?;
    ensure(min_orthogonality_degree(&fam) == Some(3), "min degree")?;
    ensure(every_pair_fails(&fam), "some pair is 2-orthogonal")?;
    Ok("degree 3, all 15 pairs fail".into())
}

fn order_six_mate(threads: usize) -> Check {
    let base = modular_multiplicative(6)
        .unwrap()
        .into_square()
        .map_err(|e| e.to_string())?;
    let budget = SearchBudget::default().with_threads(threads);
    let out = orthogonal_mate_search(&base, &budget);
    ensure(
        out.status == Status::ProvenAbsent,
        format!("status {}", out.status),
    )?;
    Ok(format!("proven-absent after {} nodes", out.nodes))
}

fn order_twelve_shift() -> Check {
    let base = modular_multiplicative(12)
        .unwrap()
        .into_square()
        .map_err(|e| e.to_string())?;
    let fam = shift_family(&base);
    ensure(fam.len() == 12, "size")?;
    ensure(min_orthogonality_degree(&fam) == Some(3), "min degree")?;
    // first three columns of the reference 3-tuple array, row by row
    let reference = [
        [[1, 2, 3], [2, 4, 6], [3, 6, 9]],
        [[2, 3, 4], [4, 6, 8], [6, 9, 12]],
        [[3, 4, 5], [6, 8, 10], [9, 12, 2]],
        [[4, 5, 6], [8, 10, 12], [12, 2, 5]],
        [[5, 6, 7], [10, 12, 1], [2, 5, 8]],
        [[6, 7, 8], [12, 1, 3], [5, 8, 11]],
        [[7, 8, 9], [1, 3, 5], [8, 11, 1]],
        [[8, 9, 10], [3, 5, 7], [11, 1, 4]],
        [[9, 10, 11], [5, 7, 9], [1, 4, 7]],
        [[10, 11, 12], [7, 9, 11], [4, 7, 10]],
        [[11, 12, 1], [9, 11, 2], [7, 10, 3]],
        [[12, 1, 2], [11, 2, 4], [10, 3, 6]],
    ];
    let got = tuples(&fam, &[0, 1, 2]);
    for (r, row) in reference.iter().enumerate() {
        for (c, tuple) in row.iter().enumerate() {
            ensure(
                got[r * 12 + c] == tuple,
                format!("cell ({}, {}) is {:?}", r + 1, c + 1, got[r * 12 + c]),
            )?;
        }
    }
    Ok("degree 3, 36 reference tuples match".into())
}

fn field_mols() -> Check {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let fam = gf_mols(q).map_err(|e| e.to_string())?;
        ensure(fam.len() == q - 1, format!("GF({q}) size"))?;
        if fam.len() >= 2 {
            ensure(
                mutually_t_orthogonal(&fam, 2).unwrap().holds(),
                format!("GF({q}) not pairwise orthogonal"),
            )?;
        }
    }
    let triple = [
        "1234|2143|3412|4321",
        "1234|3412|4321|2143",
        "1234|4321|2143|3412",
    ];
    let fam = SquareFamily::external("side-4 triple", triple.iter().map(|r| square(r)).collect())
        .unwrap();
    ensure(
        mutually_t_orthogonal(&fam, 2).unwrap().holds(),
        "triple not pairwise 2-orthogonal",
    )?;
    ensure(
        t_orthogonal(&fam, &[0, 1, 2]).unwrap().is_t_orthogonal,
        "triple not 3-orthogonal",
    )?;
    Ok("q-1 MOLS for each q; side-4 triple holds".into())
}

fn order_fifteen() -> Check {
    let members = ORDER_15_FIRST_ROWS
        .iter()
        .map(|r| develop_cyclic(r))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    for sq in &members {
        ensure(is_latin(&sq.to_grid()).holds(), "developed grid not Latin")?;
    }
    let fam = SquareFamily::external("order-15", members).unwrap();
    let verdicts: Vec<String> = (0..4)
        .combinations(2)
        .map(|p| {
            let r = t_orthogonal(&fam, &p).unwrap();
            format!(
                "{}{}:{}",
                p[0] + 1,
                p[1] + 1,
                if r.is_t_orthogonal {
                    "orthogonal".to_string()
                } else {
                    format!("defect {}", r.defect)
                }
            )
        })
        .collect();
    Ok(format!("4 Latin squares; pairs {}", verdicts.join(" ")))
}

/// Stacks permutation rows, counting those whose columns never repeat.
fn naive_count(s: usize) -> u64 {
    fn go(rows: &mut Vec<Vec<usize>>, perms: &[Vec<usize>], s: usize) -> u64 {
        if rows.len() == s {
            return 1;
        }
        let mut n = 0;
        for p in perms {
            if rows.iter().all(|r| r.iter().zip(p).all(|(a, b)| a != b)) {
                rows.push(p.clone());
                n += go(rows, perms, s);
                rows.pop();
            }
        }
        n
    }
    go(
        &mut Vec::new(),
        &(0..s).permutations(s).collect::<Vec<_>>(),
        s,
    )
}

fn enumeration() -> Check {
    let expected = [1u64, 2, 12, 576, 161280];
    for (s, &want) in (1..=5).zip(&expected) {
        let oracle = naive_count(s);
        ensure(
            oracle == want,
            format!("naive oracle gives {oracle} at order {s}"),
        )?;
        let out = enumerate_latin(s, EnumerationMode::CountAll, &SearchBudget::default()).unwrap();
        ensure(out.status == Status::Found, "budget")?;
        ensure(
            out.payload == Payload::Count { count: want },
            format!("order {s}: {:?}", out.payload),
        )?;
    }
    Ok("1 2 12 576 161280".into())
}

fn random_family(rng: &mut ChaCha8Rng) -> SquareFamily {
    let shuffle = |rng: &mut ChaCha8Rng, fam: SquareFamily| {
        let s = fam.order();
        let mut members = fam.into_members();
        for m in &mut members {
            let mut pi: Vec<usize> = (0..s).collect();
            pi.shuffle(rng);
            *m = m.permute_rows(&pi).unwrap();
        }
        members.shuffle(rng);
        SquareFamily::external("shuffled", members).unwrap()
    };
    let fam = match rng.gen_range(0..4) {
        0 => additive_family(*[3, 5, 7, 11].choose(rng).unwrap()).unwrap(),
        1 => {
            let s = *[2, 4, 6, 10].choose(rng).unwrap();
            shift_family(&modular_multiplicative(s).unwrap().into_square().unwrap())
        }
        2 => gf_mols(*[4, 8, 9].choose(rng).unwrap()).unwrap(),
        _ => {
            let s = rng.gen_range(3..=9);
            let mut row: Vec<usize> = (1..=s).collect();
            row.shuffle(rng);
            shift_family(&develop_cyclic(&row).unwrap())
        }
    };
    // half the time keep a prefix of the family in its constructed order
    if rng.gen_bool(0.5) {
        let size = rng.gen_range(2..=fam.len().clamp(2, 8));
        let keep: Vec<usize> = (0..size.min(fam.len())).collect();
        fam.select(&keep).unwrap()
    } else {
        shuffle(rng, fam)
    }
}

fn prefix_extension() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7);
    let mut families = 0;
    let mut prefixes = 0;
    while families < 1000 {
        let fam = random_family(&mut rng);
        if fam.len() < 2 {
            continue;
        }
        families += 1;
        let n = fam.len().min(8);
        for t in 1..n {
            let prefix: Vec<usize> = (0..t).collect();
            if !t_orthogonal(&fam, &prefix).unwrap().is_t_orthogonal {
                continue;
            }
            prefixes += 1;
            for extra in t..fam.len() {
                let mut ext = prefix.clone();
                ext.push(extra);
                ensure(
                    t_orthogonal(&fam, &ext).unwrap().is_t_orthogonal,
                    format!("extension of {t}-prefix fails"),
                )?;
            }
        }
        let tmax = fam.len().min(5);
        let holds: Vec<bool> = (2..=tmax)
            .map(|t| mutually_t_orthogonal(&fam, t).unwrap().holds())
            .collect();
        ensure(
            holds.iter().tuple_windows().all(|(a, b)| !a || *b),
            format!("staircase {holds:?}"),
        )?;
    }
    let base = modular_multiplicative(4).unwrap().into_square().unwrap();
    let report = conjecture_probe(&shift_family(&base)).unwrap();
    let c = report
        .converse
        .ok_or("no converse counterexample at order 4")?;
    let fam = shift_family(&base);
    ensure(
        t_orthogonal(&fam, &c.subset).unwrap().is_t_orthogonal,
        "converse subset not t-orthogonal",
    )?;
    ensure(
        !t_orthogonal(&fam, &c.failing).unwrap().is_t_orthogonal,
        "converse failing subset holds",
    )?;
    ensure(
        c.failing.iter().all(|i| c.subset.contains(i)),
        "failing subset not inside",
    )?;
    Ok(format!(
        "{families} families, {prefixes} orthogonal prefixes; converse at t={}",
        c.t
    ))
}

fn repetition_law() -> Check {
    let mut columns = 0;
    for n in (4..=30).filter(|&n| !is_prime(n)) {
        let grid = modular_multiplicative(n - 1).unwrap();
        ensure(!grid.is_latin(), format!("modulus {n} grid is Latin"))?;
        for j in 1..n {
            let g = gcd(j, n);
            let mut seen = vec![0usize; n];
            for r in 0..n - 1 {
                seen[(grid.grid().get(r, j - 1) + 1) % n] += 1;
            }
            ensure(
                seen == column_residue_counts(n, j),
                "counts disagree with the grid",
            )?;
            for (residue, &count) in seen.iter().enumerate() {
                let want = if residue == 0 {
                    g - 1
                } else if residue % g == 0 {
                    g
                } else {
                    0
                };
                ensure(
                    count == want,
                    format!("modulus {n} column {j} residue {residue}: {count} != {want}"),
                )?;
            }
            columns += 1;
        }
    }
    Ok(format!("{columns} columns"))
}

fn frequency_squares() -> Check {
    for (base, lambda) in [
        (additive_family(3).unwrap(), 2),
        (gf_mols(4).unwrap(), 3),
        (additive_family(5).unwrap(), 2),
    ] {
        for m in base.members() {
            let f = inflate_frequency(m, lambda).map_err(|e| e.to_string())?;
            ensure(
                is_frequency(&f.to_grid(), lambda).holds(),
                "inflated grid not F(n; lambda)",
            )?;
            ensure(
                !freq_orthogonal(&f, &f).unwrap().holds(),
                "self-superposition orthogonal",
            )?;
        }
    }
    let mols = gf_mols(4).unwrap();
    let a = collapse_symbols(mols.member(0).unwrap(), &[0, 0, 1, 1]).map_err(|e| e.to_string())?;
    let b = collapse_symbols(mols.member(1).unwrap(), &[0, 0, 1, 1]).map_err(|e| e.to_string())?;
    ensure(
        a.multiplicity() == 2 && a.symbols() == 2,
        "collapsed parameters",
    )?;
    ensure(
        freq_orthogonal(&a, &b).unwrap().holds(),
        "collapsed pair not orthogonal",
    )?;
    let mut counts = [[0; 2]; 2];
    for r in 0..4 {
        for c in 0..4 {
            counts[a.get(r, c)][b.get(r, c)] += 1;
        }
    }
    ensure(
        counts == [[4, 4], [4, 4]],
        format!("pair counts {counts:?}"),
    )?;
    ensure(
        !freq_orthogonal(&a, &a).unwrap().holds(),
        "collapsed self-superposition orthogonal",
    )?;
    Ok("each pair appears 4 times".into())
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "1 order-3 additive pair",
            Duration::from_millis(1),
            Box::new(order_three_pair),
        ),
        (
            "2 order-5/7 additive families",
            Duration::from_millis(100),
            Box::new(prime_additive_families),
        ),
        (
            "3 order-4 shift family",
            Duration::from_millis(10),
            Box::new(order_four_shift),
        ),
        (
            "4 order-6 shift family",
            Duration::from_millis(50),
            Box::new(order_six_shift),
        ),
        (
            "5a order-6 mate search, 1 thread",
            Duration::from_secs(300),
            Box::new(|| order_six_mate(1)),
        ),
        (
            "5b order-6 mate search, 8 threads",
            Duration::from_secs(60),
            Box::new(|| order_six_mate(8)),
        ),
        (
            "6 order-12 shift family",
            Duration::from_millis(200),
            Box::new(order_twelve_shift),
        ),
        (
            "7 finite-field MOLS",
            Duration::from_secs(1),
            Box::new(field_mols),
        ),
        (
            "8 order-15 development",
            Duration::from_millis(100),
            Box::new(order_fifteen),
        ),
        (
            "9 enumeration counts",
            Duration::from_secs(30),
            Box::new(enumeration),
        ),
        (
            "10 prefix extension",
            Duration::from_secs(60),
            Box::new(prefix_extension),
        ),
        (
            "11 column repetition law",
            Duration::from_secs(1),
            Box::new(repetition_law),
        ),
        (
            "12 frequency squares",
            Duration::from_millis(10),
            Box::new(frequency_squares),
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}; too slow")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!("PASS {name} [{elapsed:.2?} <= {limit:?}] {detail}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name} [{elapsed:.2?}, limit {limit:?}] {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
