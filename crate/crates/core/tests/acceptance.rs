//! Acceptance suite: one line per criterion, each with its time budget.
//!
//! Run with `cargo test -p tri-core --test acceptance -- --nocapture` to see the report.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tri_core::definability::{
    apply_op, base_ranking, bot_ranking, closure, in_family_f1, in_family_f2,
    verify_nondefinability, PreorderOp, Variant,
};
use tri_core::operators::{
    apply_semantic, check_cells, check_characterization, check_ci_postulates,
    check_ci_postulates_on, ci_table, drastic_table, revise, sweep_all_operators, OperatorTable,
    CI_POSTULATES, TABLE_COUNT,
};
use tri_core::ranking::{
    all_rankings, capture_valuation, formula_of_ranking, ranking_of_formula, Level, Ranking,
};
use tri_core::semantics::{enumerate_interpretations, eval, Interpretation};
use tri_core::syntax::Formula;
use tri_core::truth::TruthValue::{self, False as F, Half as H, True as T};

fn random_formula<R: Rng>(rng: &mut R, n: usize, depth: u32) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return if rng.gen_ratio(1, 8) { Formula::Bot } else { Formula::var(rng.gen_range(0..n)) };
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => Formula::not(random_formula(rng, n, d)),
        1 => Formula::dia1(random_formula(rng, n, d)),
        2 => Formula::box1(random_formula(rng, n, d)),
        3 => Formula::dia2(random_formula(rng, n, d)),
        4 => Formula::box2(random_formula(rng, n, d)),
        k => {
            let a = random_formula(rng, n, d);
            let b = random_formula(rng, n, d);
            match k {
                5 => Formula::and(a, b),
                6 => Formula::or(a, b),
                _ => Formula::implies(a, b),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 1. Truth tables, transcribed row by row (◊₁ at 0 read as 0).

const AND_ROWS: [(TruthValue, TruthValue, TruthValue); 9] = [
    (T, T, T), (T, H, H), (T, F, F),
    (H, T, H), (H, H, H), (H, F, F),
    (F, T, F), (F, H, F), (F, F, F),
];
const OR_ROWS: [(TruthValue, TruthValue, TruthValue); 9] = [
    (T, T, T), (T, H, T), (T, F, T),
    (H, T, T), (H, H, H), (H, F, H),
    (F, T, T), (F, H, H), (F, F, F),
];
const IMPLIES_ROWS: [(TruthValue, TruthValue, TruthValue); 9] = [
    (T, T, T), (T, H, H), (T, F, F),
    (H, T, T), (H, H, H), (H, F, H),
    (F, T, T), (F, H, T), (F, F, T),
];
// input order 1, 1/2, 0
const NOT_COL: [TruthValue; 3] = [F, H, T];
const DIA1_COL: [TruthValue; 3] = [H, F, F];
const BOX1_COL: [TruthValue; 3] = [T, T, H];
const DIA2_COL: [TruthValue; 3] = [T, F, F];
const BOX2_COL: [TruthValue; 3] = [T, T, F];

fn criterion_truth_tables() {
    let x = || Formula::var(0);
    let y = || Formula::var(1);
    let binary: [(&str, &[(TruthValue, TruthValue, TruthValue); 9], Formula); 3] = [
        ("and", &AND_ROWS, Formula::and(x(), y())),
        ("or", &OR_ROWS, Formula::or(x(), y())),
        ("implies", &IMPLIES_ROWS, Formula::implies(x(), y())),
    ];
    for (name, rows, f) in binary {
        for &(p, q, expected) in rows.iter() {
            let w = Interpretation::new(vec![p, q]);
            assert_eq!(eval(&f, &w).unwrap(), expected, "{name} at ({p},{q})");
        }
    }
    let unary: [(&str, [TruthValue; 3], fn(Formula) -> Formula); 5] = [
        ("not", NOT_COL, Formula::not),
        ("dia1", DIA1_COL, Formula::dia1),
        ("box1", BOX1_COL, Formula::box1),
        ("dia2", DIA2_COL, Formula::dia2),
        ("box2", BOX2_COL, Formula::box2),
    ];
    for (name, column, wrap) in unary {
        for (input, expected) in [T, H, F].into_iter().zip(column) {
            let w = Interpretation::new(vec![input]);
            assert_eq!(eval(&wrap(x()), &w).unwrap(), expected, "{name} at {input}");
        }
    }
    assert_eq!(eval(&Formula::Bot, &Interpretation::new(vec![])).unwrap(), F);
}

// ---------------------------------------------------------------------------
// 2. Ranking -> formula -> ranking is the identity.

fn criterion_representation() {
    let mut count = 0;
    for n in [1, 2] {
        for r in all_rankings(n) {
            let f = formula_of_ranking(&r).unwrap();
            assert_eq!(ranking_of_formula(&f, n).unwrap(), r);
            count += 1;
        }
    }
    assert_eq!(count, 27 + 19_683);
}

// ---------------------------------------------------------------------------
// 3. Capture formulas have exactly one model.

fn criterion_capture() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let w = Interpretation::new(
            (0..n).map(|_| [F, H, T][rng.gen_range(0..3)]).collect(),
        );
        let f = capture_valuation(&w).unwrap();
        let models: Vec<Interpretation> = enumerate_interpretations(n)
            .into_iter()
            .filter(|v| eval(&f, v).unwrap() == T)
            .collect();
        assert_eq!(models, vec![w]);
    }
}

// ---------------------------------------------------------------------------
// 4. Cautious-improvement postulates.

fn criterion_ci_postulates() {
    let exhaustive = check_ci_postulates(1).unwrap();
    for r in &exhaustive.results {
        assert!(r.holds(), "{} fails at n=1 on {:?}", r.name, r.witness);
        assert_eq!(r.checked, 729);
    }
    assert_eq!(exhaustive.results.len(), CI_POSTULATES.len());

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs: Vec<(Ranking, Ranking)> = (0..1000)
        .map(|_| {
            (
                Ranking::from_index(2, rng.gen_range(0..19_683)),
                Ranking::from_index(2, rng.gen_range(0..19_683)),
            )
        })
        .collect();
    let sampled = check_ci_postulates_on(pairs, 2).unwrap();
    for r in &sampled.results {
        assert!(r.holds(), "{} fails at n=2 on {:?}", r.name, r.witness);
        assert_eq!(r.checked, 1000);
    }

    // CI1' relates model sets only; the truth tables differ where φ = 1 and θ = 0.
    let (prior, input, w) = exhaustive.ci1_prime_table_counterexample.expect("tables differ");
    assert_eq!((prior.level(&w), input.level(&w)), (Level::One, Level::Three));
    let phi = formula_of_ranking(&prior).unwrap();
    let theta = formula_of_ranking(&input).unwrap();
    let star = revise(&ci_table(), &phi, &theta, 1).unwrap();
    let rhs = Formula::and(Formula::box1(phi), theta);
    assert_eq!(eval(&star, &w).unwrap(), H);
    assert_eq!(eval(&rhs, &w).unwrap(), F);
}

// ---------------------------------------------------------------------------
// 5. Every operator table is characterized by its postulates.

fn criterion_general_characterization() {
    assert_eq!(check_characterization(&ci_table(), 1), Ok(()));
    assert_eq!(check_characterization(&drastic_table(), 1), Ok(()));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let t = OperatorTable::from_index(rng.gen_range(0..TABLE_COUNT));
        assert_eq!(check_cells(&t), Ok(()), "{t}");
        assert_eq!(check_characterization(&t, 1), Ok(()), "{t}");
    }
    // full sweep: cell-level and exhaustive 27x27 check for all 19,683 tables
    let report = sweep_all_operators(1);
    assert_eq!(report.checked, 19_683);
    assert!(report.failures.is_empty(), "{:?}", &report.failures[..report.failures.len().min(5)]);
}

// ---------------------------------------------------------------------------
// 6. Drastic absorption and two-step cautious improvement.

fn criterion_absorption() {
    let rankings: Vec<Ranking> = all_rankings(1).collect();
    let formulas: Vec<Formula> = rankings.iter().map(|r| formula_of_ranking(r).unwrap()).collect();
    let (ci, drastic) = (ci_table(), drastic_table());
    let mut pairs = 0;
    for (rf, f) in rankings.iter().zip(&formulas) {
        for (rg, g) in rankings.iter().zip(&formulas) {
            assert_eq!(&apply_semantic(&drastic, rf, rg).unwrap(), rg);
            let once = apply_semantic(&ci, rf, rg).unwrap();
            assert_eq!(&apply_semantic(&ci, &once, rg).unwrap(), rg);

            let via_formulas = revise(&drastic, f, g, 1).unwrap();
            assert_eq!(&ranking_of_formula(&via_formulas, 1).unwrap(), rg);
            let twice = revise(&ci, &revise(&ci, f, g, 1).unwrap(), g, 1).unwrap();
            assert_eq!(&ranking_of_formula(&twice, 1).unwrap(), rg);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 729);
}

// ---------------------------------------------------------------------------
// 7. Non-definability over one variable.

fn criterion_nondefinability() {
    use PreorderOp::*;
    let p0 = base_ranking();
    let bot = bot_ranking();

    let one = closure(&[p0.clone()], &[Neg, Box1, Join]).unwrap();
    assert!(one.iter().all(|r| !in_family_f1(r)));
    let two = closure(&[p0.clone()], &[Neg, Box2, Join]).unwrap();
    assert!(two.iter().all(|r| !in_family_f2(r)));

    let both = closure(&[p0.clone(), bot.clone()], &[Neg, Box1, Box2, Join, Meet]).unwrap();
    assert_eq!(both.len(), 27);

    let plain = closure(&[p0, bot], &[Neg, Join, Meet]).unwrap();
    assert!(plain.len() < 27);

    for variant in [Variant::Box1, Variant::Box2] {
        for include_bot in [false, true] {
            let report = verify_nondefinability(variant, include_bot);
            if !include_bot {
                assert!(report.disjoint());
            }
            println!(
                "    closure {variant} include_bot={include_bot}: size {}, forbidden reached {}, meet redundant {}",
                report.closure.len(),
                report.forbidden.iter().filter(|(_, hit)| *hit).count(),
                report.meet_redundant
            );
        }
    }
    println!("    plain K3 closure size {}", plain.len());
}

// ---------------------------------------------------------------------------
// 8. The nine-world example, with the bottom line of each diagram as level 1.

fn criterion_nine_worlds() {
    let levels = |one: &[usize], two: &[usize], three: &[usize]| {
        let mut out = vec![Level::One; 9];
        for (ws, level) in [(one, Level::One), (two, Level::Two), (three, Level::Three)] {
            for &w in ws {
                out[w - 1] = level;
            }
        }
        Ranking::new(2, out).unwrap()
    };
    let phi = levels(&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]);
    let theta = levels(&[3, 6, 9], &[2, 5, 8], &[1, 4, 7]);
    let expected = levels(&[3, 6], &[1, 2, 5, 8, 9], &[4, 7]);
    assert_eq!(apply_semantic(&ci_table(), &phi, &theta).unwrap(), expected);
}

// ---------------------------------------------------------------------------
// 9. ranking_of_formula is a homomorphism onto the level operations.

fn ranking_via_ops(f: &Formula, n: usize) -> Ranking {
    use PreorderOp::*;
    let un = |op, r: &Ranking| apply_op(op, r, None).unwrap();
    let bin = |op, a: &Ranking, b: &Ranking| apply_op(op, a, Some(b)).unwrap();
    match f {
        Formula::Bot => Ranking::constant(n, Level::Three),
        Formula::Var(_) => ranking_of_formula(f, n).unwrap(),
        Formula::Not(a) => un(Neg, &ranking_via_ops(a, n)),
        Formula::Box1(a) => un(Box1, &ranking_via_ops(a, n)),
        Formula::Box2(a) => un(Box2, &ranking_via_ops(a, n)),
        Formula::Dia1(a) => un(Neg, &un(Box1, &un(Neg, &ranking_via_ops(a, n)))),
        Formula::Dia2(a) => un(Neg, &un(Box2, &un(Neg, &ranking_via_ops(a, n)))),
        Formula::And(a, b) => bin(Meet, &ranking_via_ops(a, n), &ranking_via_ops(b, n)),
        Formula::Or(a, b) => bin(Join, &ranking_via_ops(a, n), &ranking_via_ops(b, n)),
        Formula::Implies(a, b) => {
            bin(Join, &un(Neg, &ranking_via_ops(a, n)), &ranking_via_ops(b, n))
        }
    }
}

fn criterion_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let f = random_formula(&mut rng, 2, 6);
        assert_eq!(ranking_via_ops(&f, 2), ranking_of_formula(&f, 2).unwrap(), "{f}");
    }
}

// ---------------------------------------------------------------------------

#[test]
fn acceptance_suite() {
    let criteria: [(&str, fn(), Duration); 9] = [
        ("1 truth-table fidelity", criterion_truth_tables, Duration::from_secs(1)),
        ("2 representation round trip (n=1, n=2)", criterion_representation, Duration::from_secs(30)),
        ("3 capture formulas have one model", criterion_capture, Duration::from_secs(10)),
        ("4 cautious-improvement postulates", criterion_ci_postulates, Duration::from_secs(30)),
        ("5 characterization of all 19683 tables", criterion_general_characterization, Duration::from_secs(300)),
        ("6 drastic absorption and two-step iteration", criterion_absorption, Duration::from_secs(5)),
        ("7 non-definability closures", criterion_nondefinability, Duration::from_secs(1)),
        ("8 nine-world example", criterion_nine_worlds, Duration::from_secs(1)),
        ("9 homomorphism onto level operations", criterion_homomorphism, Duration::from_secs(10)),
    ];
    let mut failed = Vec::new();
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= budget) {
            (Ok(()), true) => "PASS",
            (Ok(()), false) => "FAIL (over time budget)",
            (Err(_), _) => "FAIL",
        };
        println!("[{verdict}] criterion {name} ({:.2?} / {:?})", elapsed, budget);
        if verdict != "PASS" {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
