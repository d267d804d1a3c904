//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails or overruns its time budget.
//!
//! Every comparison below is exact: polynomials are compared as integer
//! coefficient maps, after unit normalization only where a criterion says
//! "up to a unit".

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use alexdimer::dimer::{
    alternating_structure, default_segment, determinant_oracle, segment_independence_check, state_sum_with, Caps,
    WeightRule,
};
use alexdimer::laurent::{is_noncanceling_product, is_noncanceling_sum, shape_report, CoeffSeq};
use alexdimer::murasugi::{
    build_tilde_graphs, certify_trapezoid, decompose_state_sum, explore_flock_subsets, explore_tree,
    flock_parity_check, split, swaps_for, verify_flock_deletion, verify_length1, verify_noncanceling,
    verify_support, verify_swap_graphs, verify_tilde_structure, SplitContext,
};
use alexdimer::{fixtures, generate, Error, LinkDiagram};
use proptest::test_runner::{Config, TestRunner};

/// Cases per randomized property in criterion 9.
const PROPERTY_CASES: u32 = 1000;
/// Seeds for the generated diagrams, fixed so runs are reproducible.
const SEED_CERTIFY: u64 = 20_260_501;
const SEED_LENGTH: u64 = 7;
/// Generated diagrams required by criteria 5 and 8.
const GENERATED_LENGTH_TWO: usize = 3;
const GENERATED_CERTIFIED: usize = 12;

type Check = fn() -> Result<String, String>;

fn rule() -> WeightRule {
    WeightRule::default()
}

fn caps() -> Caps {
    Caps::default()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn context<'a>(d: &'a LinkDiagram, circle: Option<usize>) -> Result<SplitContext<'a>, String> {
    let s = split(d, circle).map_err(e2s)?;
    SplitContext::new(d, s, rule(), caps()).map_err(e2s)
}

/// Every diagram that has a T2 circle of positive length, with that circle.
fn split_cases() -> Vec<(LinkDiagram, usize)> {
    let mut ds: Vec<LinkDiagram> = fixtures::all();
    ds.extend(generate::with_split_length(SEED_LENGTH, GENERATED_LENGTH_TWO, 2));
    ds.extend(generate::with_split_length(SEED_LENGTH, 2, 1));
    ds.extend(generate::with_split_length(SEED_LENGTH, 2, 3));
    ds.extend(generate::certifiable(SEED_CERTIFY, GENERATED_CERTIFIED));
    let mut out = Vec::new();
    for d in ds {
        let ids: Vec<usize> = d
            .t2_circles()
            .iter()
            .filter(|c| d.t2_length(c).is_ok_and(|l| l > 0))
            .map(|c| c.id)
            .collect();
        for id in ids {
            out.push((d.clone(), id));
        }
    }
    out
}

fn c1_trapezoid_checker() -> Result<String, String> {
    let seq = CoeffSeq::from_ints(&[14, 108, 395, 882, 1320, 1302, 882, 395, 108, 14]);
    let r = shape_report(&seq);
    ensure(r.trapezoidal, || "displayed sequence should be trapezoidal".into())?;
    ensure(!r.palindromic, || "displayed sequence should not be palindromic".into())?;
    ensure(r.flags.iter().any(|f| f.contains("1320") && f.contains("1302")), || {
        format!("palindromicity discrepancy not flagged: {:?}", r.flags)
    })?;
    Ok(format!("trapezoidal=true palindromic=false flag=\"{}\"", r.flags[0]))
}

fn c2_oracle() -> Result<String, String> {
    let mut n = 0;
    for d in fixtures::all() {
        ensure(d.crossing_count() <= 12, || format!("{} is larger than 12 crossings", d.name()))?;
        let i = default_segment(&d).map_err(e2s)?;
        let s = state_sum_with(&d, i, &rule(), &caps()).map_err(e2s)?;
        let o = determinant_oracle(&d, i).map_err(e2s)?;
        ensure(s.normalize_unit() == o.normalize_unit(), || {
            format!("{}: state sum {s} but oracle {o}", d.name())
        })?;
        n += 1;
    }
    Ok(format!("{n} fixtures agree after unit normalization"))
}

fn c3_segment_independence() -> Result<String, String> {
    let mut parts = Vec::new();
    for d in [fixtures::trefoil(), fixtures::hopf(), fixtures::fig8(), fixtures::whitehead()] {
        let r = segment_independence_check(&d, &rule(), &caps()).map_err(e2s)?;
        let computed = r.results.iter().filter(|x| x.polynomial.is_some()).count();
        ensure(r.consistent, || format!("{} depends on the segment", d.name()))?;
        ensure(computed == d.edge_ids().len(), || format!("{} skipped a segment", d.name()))?;
        parts.push(format!("{}:{computed}", d.name()));
    }
    Ok(format!("identical over all segments ({})", parts.join(" ")))
}

fn c4_alternating_structure() -> Result<String, String> {
    let mut names = Vec::new();
    for d in fixtures::all().into_iter().filter(|d| d.is_connected() && d.is_alternating()) {
        let a = alternating_structure(&d, &rule(), &caps()).map_err(e2s)?;
        ensure(a.sign_coherent, || format!("{}: equal-degree matchings disagree in sign", d.name()))?;
        ensure(a.palindromic && a.saturated, || format!("{}: |Delta| = {} is not palindromic and saturated", d.name(), a.polynomial.abs_poly()))?;
        ensure(a.span == Some(a.expected_span), || {
            format!("{}: span {:?}, expected {}", d.name(), a.span, a.expected_span)
        })?;
        names.push(d.name().to_string());
    }
    Ok(format!("sign-coherent, palindromic, saturated, span c-s+1 on {}", names.join(",")))
}

fn c5_identities() -> Result<String, String> {
    // (a) length 0
    let mut zero_circles = 0;
    for d in [fixtures::split_trefoils(), fixtures::split_kinks()] {
        let p = state_sum_with(&d, default_segment(&d).map_err(e2s)?, &rule(), &caps()).map_err(e2s)?;
        ensure(p.is_zero(), || format!("{}: expected 0, got {p}", d.name()))?;
        match split(&d, None) {
            Err(Error::LengthZero(_)) => zero_circles += 1,
            Err(Error::Precondition(_)) if d.t2_circles().is_empty() => {}
            other => return Err(format!("{}: unexpected split result {:?}", d.name(), other.map(|s| s.length))),
        }
    }
    ensure(zero_circles > 0, || "no split diagram exercised a length-0 circle".into())?;
    // (b) length 1
    let mut ones = vec![fixtures::l1()];
    ones.extend(generate::with_split_length(SEED_LENGTH, 2, 1));
    for d in &ones {
        let c = context(d, None)?;
        let p = verify_length1(&c).map_err(e2s)?;
        ensure(p.holds, || format!("{}: {} != ({})({})", d.name(), p.delta, p.delta_prime, p.delta_double))?;
    }
    // (c) length 2
    let mut twos = vec![fixtures::fig8()];
    twos.extend(generate::with_split_length(SEED_LENGTH, GENERATED_LENGTH_TWO, 2));
    for d in &twos {
        let c = context(d, None)?;
        let dc = decompose_state_sum(&c).map_err(e2s)?;
        let rhs = &(&dc.delta_prime * &dc.delta_double) + &(&dc.delta_tilde_prime * &dc.delta_tilde_double);
        ensure(dc.holds() && dc.remainder.is_zero() && dc.delta_check == rhs, || {
            format!("{}: two-term identity fails, remainder {}", d.name(), dc.remainder)
        })?;
    }
    // (d) length 3
    let d = fixtures::l3();
    let c = context(&d, None)?;
    ensure(c.split.length == 3, || "l3 does not split with length 3".into())?;
    let dc = decompose_state_sum(&c).map_err(e2s)?;
    let rhs = &(&(&dc.delta_prime * &dc.delta_double) + &(&dc.delta_tilde_prime * &dc.delta_tilde_double)) + &dc.remainder;
    ensure(dc.holds() && dc.delta_check == rhs, || "l3: three-term identity fails".into())?;
    ensure(!dc.remainder.is_zero(), || "l3: remainder unexpectedly vanishes".into())?;
    Ok(format!(
        "length 0 on 2 split diagrams, length 1 on {}, length 2 on {} (remainder 0), length 3 on l3 (remainder {})",
        ones.len(),
        twos.len(),
        dc.remainder
    ))
}

fn c6_structural() -> Result<String, String> {
    let cases = split_cases();
    for (d, id) in &cases {
        let c = context(d, Some(*id))?;
        let tag = format!("{} circle {id}", d.name());
        ensure(verify_flock_deletion(&c).map_err(e2s)?, || format!("{tag}: flock deletion graph differs"))?;
        let swaps = swaps_for(&c).map_err(e2s)?;
        if let Some(sw) = &swaps {
            let tilde = build_tilde_graphs(&c).map_err(e2s)?;
            ensure(verify_swap_graphs(&c, &tilde, sw).map_err(e2s)?, || format!("{tag}: swap-move graphs differ"))?;
        }
        let st = verify_tilde_structure(&c, swaps.as_ref()).map_err(e2s)?;
        ensure(st.holds(), || format!("{tag}: {st:?}"))?;
        let parity = flock_parity_check(&c).map_err(e2s)?;
        ensure(parity.holds, || format!("{tag}: unbalanced flock usage {:?}", parity.histogram))?;
    }
    Ok(format!("{} splits: weights 1, deletion, tilde graphs, preservation, parity", cases.len()))
}

fn c7_noncanceling() -> Result<String, String> {
    let cases: Vec<_> = split_cases().into_iter().filter(|(d, _)| d.is_alternating()).collect();
    let mut strict = 0;
    for (d, id) in &cases {
        let c = context(d, Some(*id))?;
        let tag = format!("{} circle {id}", d.name());
        let r = verify_noncanceling(&c).map_err(e2s)?;
        ensure(r.hypothesis_met && r.holds(), || format!("{tag}: {r:?}"))?;
        strict += usize::from(r.strict);
        ensure(verify_support(&c).map_err(e2s)?, || format!("{tag}: support differs"))?;
    }
    Ok(format!("{} alternating splits, {strict} with strict inequality", cases.len()))
}

fn c8_certificates() -> Result<String, String> {
    let mut ds = vec![fixtures::fig8(), fixtures::trefoil(), fixtures::hopf(), fixtures::whitehead()];
    ds.extend(generate::certifiable(SEED_CERTIFY, GENERATED_CERTIFIED));
    let mut nodes = 0;
    for d in &ds {
        let cert = certify_trapezoid(d, &rule(), &caps()).map_err(e2s)?;
        ensure(cert.verdict, || format!("{}: certificate verdict false", d.name()))?;
        nodes += cert.nodes;
    }
    Ok(format!("{} diagrams ({GENERATED_CERTIFIED} generated), {nodes} nodes", ds.len()))
}

fn run_property<S: proptest::strategy::Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn c9_properties() -> Result<String, String> {
    use proptest::prop_assert;
    run_property("product of trapezoids", (common::trapezoid(), common::trapezoid()), |(a, b)| {
        let p = &common::seq_poly(&a) * &common::seq_poly(&b);
        prop_assert!(p.coefficient_sequence().is_trapezoidal(), "{} * {} = {}", common::seq_poly(&a), common::seq_poly(&b), p);
        Ok(())
    })?;
    run_property("absolute value of a sum", common::noncanceling_pair(), |(f, g)| {
        prop_assert!(is_noncanceling_sum(&[f.clone(), g.clone()]));
        prop_assert!((&f + &g).abs_poly() == &f.abs_poly() + &g.abs_poly());
        Ok(())
    })?;
    run_property("absolute value of a product", common::noncanceling_factors(), |(f, g)| {
        prop_assert!(is_noncanceling_product(&f, &g));
        prop_assert!((&f * &g).abs_poly() == &f.abs_poly() * &g.abs_poly());
        Ok(())
    })?;
    run_property(
        "centered trapezoids closed under + and *",
        (common::centered_trapezoid(), common::centered_trapezoid()),
        |(f, g)| {
            let good = |h: &alexdimer::LaurentPoly| {
                h.is_centered() && h.dominates(&alexdimer::LaurentPoly::zero()) && h.coefficient_sequence().is_trapezoidal()
            };
            prop_assert!(good(&f) && good(&g));
            prop_assert!(good(&(&f * &g)));
            if f.has_uniform_parity() && (&f + &g).has_uniform_parity() {
                prop_assert!(good(&(&f + &g)));
            }
            Ok(())
        },
    )?;
    Ok(format!("4 properties x {PROPERTY_CASES} cases"))
}

fn c10_exploration() -> Result<String, String> {
    let d = fixtures::l3();
    let c = context(&d, None)?;
    let table = explore_flock_subsets(&c).map_err(e2s)?;
    ensure(table.conserved, || "flock-subset rows do not sum to |Delta|".into())?;
    let mut levels = 0;
    for level in 0..=c.split.flock.len() {
        let t = explore_tree(&c, level).map_err(e2s)?;
        ensure(t.conserved, || format!("tree level {level} does not sum to Delta"))?;
        levels += 1;
    }
    Ok(format!("{} table rows conserve |Delta| = {}; {levels} tree levels conserve Delta", table.rows.len(), table.abs_delta))
}

fn main() {
    let criteria: [(u8, &str, Duration, Check); 10] = [
        (1, "trapezoid checker on the displayed sequence", Duration::from_secs(1), c1_trapezoid_checker),
        (2, "oracle equivalence", Duration::from_secs(10), c2_oracle),
        (3, "segment independence", Duration::from_secs(30), c3_segment_independence),
        (4, "alternating structure", Duration::from_secs(30), c4_alternating_structure),
        (5, "Murasugi identities", Duration::from_secs(60), c5_identities),
        (6, "structural checks", Duration::from_secs(60), c6_structural),
        (7, "non-canceling and support", Duration::from_secs(60), c7_noncanceling),
        (8, "trapezoid certificates", Duration::from_secs(120), c8_certificates),
        (9, "laurent property suites", Duration::from_secs(10), c9_properties),
        (10, "exploration conservation", Duration::from_secs(30), c10_exploration),
    ];
    let mut failed = 0;
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {id:>2} {} {title}: {detail} [{:.2}s of {}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
