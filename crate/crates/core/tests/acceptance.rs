//! Acceptance checks, one line of output per criterion. Exits nonzero if
//! any criterion fails or exceeds its time budget.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use twistpoly::corpus;
use twistpoly::ribbon::{bouquet_exchange, bouquet_slide, partial_dual_polynomial, PolynomialMode};
use twistpoly::{
    exchange_ends, four_term_report, from_matrix, handle_slide, is_binary, quadrant_equalities,
    slide_exchange, tutte_check, tutte_consistent, tutte_solve, twist_polynomial, Bouquet,
    Gf2SymMatrix, IntPolynomial, MovePair, RibbonGraph, SetSystem, TutteCase, TutteScalars,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (
    &'static str,
    Option<Duration>,
    Box<dyn Fn() -> Outcome + 'a>,
);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sys(ground: &[&str], family: &[&[&str]]) -> SetSystem {
    SetSystem::from_labels(ground, family).unwrap()
}

fn poly(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

/// Exhaustive systems on 2 and 3 elements followed by 10^4 seeded random
/// systems on 4 to 6 elements.
fn system_corpus() -> Vec<SetSystem> {
    let mut out: Vec<SetSystem> = (2..=3)
        .flat_map(|n| corpus::all_set_systems(n).unwrap())
        .collect();
    let mut rng = corpus::rng(0x5eed);
    for _ in 0..10_000 {
        let n = rng.gen_range(4..=6);
        out.push(corpus::random_set_system(&mut rng, n));
    }
    out
}

/// Runs `check` on every (system, ordered pair) and reports the first failure.
fn over_pairs(
    systems: &[SetSystem],
    check: impl Fn(&SetSystem, MovePair) -> bool + Sync,
) -> Outcome {
    let failure = systems.par_iter().find_map_first(|d| {
        MovePair::all(d.ground().len())
            .find(|&m| !check(d, m))
            .map(|m| {
                format!(
                    "{d} pair ({}, {})",
                    d.ground().label(m.a),
                    d.ground().label(m.b)
                )
            })
    });
    match failure {
        Some(f) => Err(f),
        None => {
            let pairs: usize = systems
                .iter()
                .map(|d| d.ground().len() * (d.ground().len() - 1))
                .sum();
            Ok(format!(
                "{} systems, {pairs} (system, pair) checks",
                systems.len()
            ))
        }
    }
}

fn worked_example() -> Outcome {
    let d = sys(&["a", "b", "c"], &[&[], &["b", "c"]]);
    let m = MovePair::new(d.ground(), "a", "b").unwrap();
    let r = four_term_report(&d, m).map_err(|e| e.to_string())?;
    let expected_systems = [
        d.clone(),
        sys(&["a", "b", "c"], &[&[], &["a", "b"], &["b", "c"]]),
        sys(
            &["a", "b", "c"],
            &[&[], &["a", "b"], &["a", "c"], &["b", "c"]],
        ),
        sys(&["a", "b", "c"], &[&[], &["a", "c"], &["b", "c"]]),
    ];
    ensure(r.systems == expected_systems, || {
        format!("systems {:?}", r.systems)
    })?;
    let expected = ["4z^2+4", "6z^2+2", "8z^2", "6z^2+2"].map(poly);
    ensure(r.polynomials == expected, || {
        format!("polynomials {:?}", r.polynomials)
    })?;
    ensure(r.defect.is_zero(), || format!("defect {}", r.defect))?;
    Ok(format!(
        "polynomials {} / {} / {} / {}, defect 0",
        expected[0], expected[1], expected[2], expected[3]
    ))
}

fn four_term(systems: &[SetSystem]) -> Outcome {
    over_pairs(systems, |d, m| {
        four_term_report(d, m).unwrap().defect.is_zero()
    })
}

fn quadrants(systems: &[SetSystem]) -> Outcome {
    over_pairs(systems, |d, m| quadrant_equalities(d, m).unwrap())
}

fn involutions(systems: &[SetSystem]) -> Outcome {
    over_pairs(systems, |d, m| {
        let slid = handle_slide(d, m).unwrap();
        let exchanged = exchange_ends(d, m).unwrap();
        let closed = slide_exchange(d, m).unwrap();
        handle_slide(&slid, m).unwrap() == *d
            && exchange_ends(&exchanged, m).unwrap() == *d
            && exchange_ends(&slid, m).unwrap() == closed
            && handle_slide(&exchanged, m).unwrap() == closed
    })
}

fn slide_width(systems: &[SetSystem]) -> Outcome {
    let summary = over_pairs(systems, |d, m| {
        handle_slide(d, m).unwrap().width() == d.width()
    })?;
    let d = sys(&["a", "b"], &[&[]]);
    let m = MovePair::new(d.ground(), "a", "b").unwrap();
    let w = exchange_ends(&d, m).unwrap().width().width;
    ensure(d.width().width == 0 && w == 2, || {
        format!("exchange of ({{a,b}},{{∅}}) has width {w}")
    })?;
    Ok(format!(
        "{summary}; exchange on ({{a,b}},{{∅}}) moves width 0 to 2"
    ))
}

fn matrix_delta_matroids() -> Outcome {
    let mut count = 0;
    for n in 0..=4 {
        let ground = corpus::letters(n);
        for c in Gf2SymMatrix::all(n) {
            let d = from_matrix(&ground, &c).map_err(|e| e.to_string())?;
            ensure(d.is_delta_matroid(), || {
                format!("D(C) is not a delta-matroid for\n{c}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} symmetric matrices"))
}

fn binary_closure() -> Outcome {
    let mut checks = 0;
    for n in 2..=4 {
        let ground = corpus::letters(n);
        let matrices: Vec<Gf2SymMatrix> = Gf2SymMatrix::all(n).collect();
        let bad = matrices.par_iter().find_map_first(|c| {
            let d = from_matrix(&ground, c).unwrap();
            MovePair::all(n)
                .find(|&m| {
                    !is_binary(&handle_slide(&d, m).unwrap()).unwrap()
                        || !is_binary(&exchange_ends(&d, m).unwrap()).unwrap()
                })
                .map(|m| format!("{c}\npair {} {}", ground.label(m.a), ground.label(m.b)))
        });
        if let Some(b) = bad {
            return Err(b);
        }
        checks += matrices.len() * n * (n - 1);
    }
    Ok(format!("{checks} (matrix, pair) checks"))
}

fn tutte_contradiction() -> Outcome {
    let d = sys(&["a", "b", "c"], &[&[], &["b", "c"]]);
    let dp = sys(
        &["a", "b", "c"],
        &[&[], &["a", "b"], &["a", "c"], &["b", "c"]],
    );
    let t1 = tutte_check(&d, "b").map_err(|e| e.to_string())?;
    let t2 = tutte_check(&dp, "c").map_err(|e| e.to_string())?;
    ensure(
        t1.case == TutteCase::Ordinary && t2.case == TutteCase::Ordinary,
        || "case".into(),
    )?;
    ensure(
        (
            t1.whole.clone(),
            t1.deletion.clone(),
            t1.contraction.clone(),
        ) == (poly("4z^2+4"), poly("4"), poly("4")),
        || format!("first triple {t1:?}"),
    )?;
    ensure(
        (
            t2.whole.clone(),
            t2.deletion.clone(),
            t2.contraction.clone(),
        ) == (poly("8z^2"), poly("2z^2+2"), poly("2z^2+2")),
        || format!("second triple {t2:?}"),
    )?;
    ensure(poly("4z^2+4") * poly("2z^2+2") != poly("32z^2"), || {
        "identity".into()
    })?;
    let triples = [t1, t2];
    ensure(tutte_solve(&triples).is_none(), || {
        "linear system is solvable".into()
    })?;
    let mut rng = corpus::rng(8);
    let r = |rng: &mut rand_chacha::ChaCha8Rng| {
        BigRational::new(
            BigInt::from(rng.gen_range(-50..=50)),
            BigInt::from(rng.gen_range(1..=12)),
        )
    };
    for _ in 0..2000 {
        let s = TutteScalars {
            x: r(&mut rng),
            y: r(&mut rng),
            p: r(&mut rng),
            q: r(&mut rng),
        };
        ensure(!tutte_consistent(&triples, &s), || {
            format!("consistent at {s:?}")
        })?;
    }
    ensure(
        !tutte_consistent(&triples, &TutteScalars::from_integers(1, 1, 1, 1)),
        || "unit scalars".into(),
    )?;
    Ok("triples (4z^2+4, 4, 4), (8z^2, 2z^2+2, 2z^2+2); no rational solution".into())
}

fn ribbon_polynomials() -> Outcome {
    let mut graphs: Vec<RibbonGraph> = (0..=3)
        .flat_map(corpus::all_connected_ribbon_graphs)
        .collect();
    let exhaustive = graphs.len();
    let mut rng = corpus::rng(9);
    for _ in 0..1000 {
        let m = rng.gen_range(4..=6);
        graphs.push(corpus::random_connected_ribbon_graph(&mut rng, m));
    }
    let bad = graphs.par_iter().find_map_first(|g| {
        let direct = partial_dual_polynomial(g, PolynomialMode::Direct).unwrap();
        let via = partial_dual_polynomial(g, PolynomialMode::ViaDeltaMatroid).unwrap();
        (direct != via).then(|| format!("{g}direct {direct}, via delta-matroid {via}"))
    });
    match bad {
        Some(b) => Err(b),
        None => Ok(format!(
            "{exhaustive} graphs with ≤ 3 edges, 1000 random with 4-6 edges"
        )),
    }
}

fn bouquet_identities() -> Outcome {
    let mut checks = 0;
    for m in 2..=4 {
        let bouquets = corpus::all_orientable_bouquets(m);
        let results: Vec<Result<usize, String>> = bouquets.par_iter().map(check_bouquet).collect();
        for r in results {
            checks += r?;
        }
    }
    ensure(checks > 0, || "no movable pairs".into())?;
    Ok(format!("{checks} (bouquet, pair) checks"))
}

fn check_bouquet(b: &Bouquet) -> Result<usize, String> {
    let eps =
        |x: &Bouquet| partial_dual_polynomial(&x.to_ribbon(), PolynomialMode::Direct).unwrap();
    let dm = b.to_ribbon().delta_matroid().unwrap();
    let labels: Vec<&str> = b.labels().labels().collect();
    let mut checks = 0;
    for &x in &labels {
        for &y in &labels {
            if x == y {
                continue;
            }
            let Ok(exchanged) = bouquet_exchange(b, x, y) else {
                continue;
            };
            let slid = bouquet_slide(b, x, y).unwrap();
            let both = bouquet_exchange(&slid, x, y).unwrap();
            let m = MovePair::new(dm.ground(), x, y).unwrap();
            ensure(
                slid.to_ribbon().delta_matroid().unwrap() == handle_slide(&dm, m).unwrap(),
                || format!("{b}\nslide {x} {y}"),
            )?;
            ensure(
                exchanged.to_ribbon().delta_matroid().unwrap() == exchange_ends(&dm, m).unwrap(),
                || format!("{b}\nexchange {x} {y}"),
            )?;
            let defect = eps(b) + eps(&both) - eps(&exchanged) - eps(&slid);
            ensure(defect.is_zero(), || {
                format!("{b}\npair {x} {y}: defect {defect}")
            })?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn non_closure_witness() -> Outcome {
    let mut witnesses = Vec::new();
    for n in 2..=4 {
        for d in corpus::all_delta_matroids(n).unwrap() {
            for m in MovePair::all(n) {
                let slid = handle_slide(&d, m).unwrap();
                if !slid.is_delta_matroid() {
                    witnesses.push((d.clone(), m, slid));
                }
            }
        }
    }
    ensure(!witnesses.is_empty(), || "no witness found".into())?;
    for (d, m, slid) in &witnesses {
        ensure(
            d.is_delta_matroid()
                && !slid.is_delta_matroid()
                && handle_slide(d, *m).unwrap() == *slid,
            || format!("witness does not verify: {d}"),
        )?;
    }
    let (d, m, _) = &witnesses[0];
    Ok(format!(
        "{} witnesses, e.g. {} with pair ({}, {})",
        witnesses.len(),
        d.format_family(),
        d.ground().label(m.a),
        d.ground().label(m.b)
    ))
}

/// Twist polynomial from first principles: materialise each twisted family
/// as label sets and measure its width directly.
fn naive_twist_polynomial(d: &SetSystem) -> IntPolynomial {
    let n = d.ground().len();
    let family: Vec<BTreeSet<usize>> = d
        .feasible()
        .iter()
        .map(|f| (0..n).filter(|&i| f.contains(i)).collect())
        .collect();
    let mut result = IntPolynomial::zero();
    for a in 0..1u32 << n {
        let twist: BTreeSet<usize> = (0..n).filter(|&i| a >> i & 1 == 1).collect();
        let sizes: Vec<usize> = family
            .iter()
            .map(|f| f.symmetric_difference(&twist).count())
            .collect();
        let width = sizes.iter().max().unwrap() - sizes.iter().min().unwrap();
        result = result + IntPolynomial::monomial(BigInt::from(1), width as u32);
    }
    result
}

fn oracle_agreement() -> Outcome {
    let mut rng = corpus::rng(12);
    let systems: Vec<SetSystem> = (0..1000)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            corpus::random_set_system(&mut rng, n)
        })
        .collect();
    let bad = systems.par_iter().find_map_first(|d| {
        let (fast, slow) = (twist_polynomial(d), naive_twist_polynomial(d));
        (fast != slow).then(|| format!("{d}\nfast {fast}, naive {slow}"))
    });
    match bad {
        Some(b) => Err(b),
        None => Ok("1000 random systems on 1-8 elements".into()),
    }
}

fn main() -> ExitCode {
    let systems = system_corpus();
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("1 worked example", Some(ms(1)), Box::new(worked_example)),
        (
            "2 four-term relation",
            Some(s(10)),
            Box::new(|| four_term(&systems)),
        ),
        (
            "3 quadrant width equalities",
            Some(s(30)),
            Box::new(|| quadrants(&systems)),
        ),
        (
            "4 move involutions",
            None,
            Box::new(|| involutions(&systems)),
        ),
        (
            "5 slide preserves width",
            None,
            Box::new(|| slide_width(&systems)),
        ),
        (
            "6 matrix systems are delta-matroids",
            Some(s(5)),
            Box::new(matrix_delta_matroids),
        ),
        ("7 binary closure", Some(s(60)), Box::new(binary_closure)),
        ("8 Tutte contradiction", None, Box::new(tutte_contradiction)),
        (
            "9 partial-dual polynomial",
            Some(s(120)),
            Box::new(ribbon_polynomials),
        ),
        ("10 bouquet moves", None, Box::new(bouquet_identities)),
        (
            "11 slide non-closure witness",
            None,
            Box::new(non_closure_witness),
        ),
        (
            "12 naive oracle agreement",
            None,
            Box::new(oracle_agreement),
        ),
    ];
    // warm the thread pool so its start-up is not charged to a criterion
    rayon::broadcast(|_| ());
    let mut failed = 0;
    for (name, budget, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|b| elapsed > b);
        let budget_text = budget.map_or(String::new(), |b| format!(" (budget {b:?})"));
        match (&outcome, over) {
            (Ok(detail), false) => println!("PASS  {name}: {detail} [{elapsed:.2?}{budget_text}]"),
            (Ok(detail), true) => {
                failed += 1;
                println!("FAIL  {name}: over time budget, {detail} [{elapsed:.2?}{budget_text}]");
            }
            (Err(e), _) => {
                failed += 1;
                println!("FAIL  {name}: {e} [{elapsed:.2?}{budget_text}]");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
