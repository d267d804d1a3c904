//! The checks behind `verify`. Errors that belong to one circle (an
//! ambiguous crossing, say) are recorded as verdicts so that the rest of the
//! suite still runs; cap overruns abort the whole run.

use alexdimer::dimer::{
    alternating_structure, default_segment, determinant_oracle, segment_independence_check, truncated_graph, Caps,
    WeightRule,
};
use alexdimer::murasugi::{
    build_tilde_graphs, decompose_state_sum, flock_parity_check, remainder_observation, split, swaps_for,
    verify_flock_deletion, verify_length1, verify_noncanceling, verify_support, verify_swap_graphs,
    verify_tilde_structure, SplitContext,
};
use alexdimer::{Error, LaurentPoly, LinkDiagram, Result};
use serde_json::json;

use crate::report::{PolyOut, Report, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Dimer,
    Murasugi,
}

pub struct Env {
    pub rule: WeightRule,
    pub caps: Caps,
}

pub fn verify(d: &LinkDiagram, suite: Suite, env: &Env) -> Result<Report> {
    let mut r = Report::new("verify", d.name(), &env.caps);
    if matches!(suite, Suite::All | Suite::Dimer) {
        dimer_suite(d, env, &mut r)?;
    }
    if matches!(suite, Suite::All | Suite::Murasugi) {
        murasugi_suite(d, env, &mut r)?;
    }
    Ok(r)
}

fn dimer_suite(d: &LinkDiagram, env: &Env, r: &mut Report) -> Result<()> {
    let connected = d.is_connected();
    let i = default_segment(d)?;
    let g = truncated_graph(d, i, &env.rule)?;
    r.push(
        Verdict::new(
            "present-regions",
            "a connected diagram has as many present regions as crossings",
            g.black.len() == g.white.len(),
        )
        .asserted_if(connected)
        .with(json!({ "crossings": g.black.len(), "present_regions": g.white.len() })),
    );

    let seg = segment_independence_check(d, &env.rule, &env.caps)?;
    let delta = seg
        .results
        .iter()
        .find_map(|x| x.polynomial.clone())
        .unwrap_or_else(LaurentPoly::zero);
    r.polynomial = Some(PolyOut::from(&delta));
    let computed = seg.results.iter().filter(|x| x.polynomial.is_some()).count();
    r.push(
        Verdict::new(
            "segment-independence",
            "the state sum does not depend on the distinguished segment",
            seg.consistent,
        )
        .with(json!({ "segments": computed, "skipped": seg.results.len() - computed })),
    );

    let oracle = determinant_oracle(d, i)?;
    r.push(
        Verdict::new(
            "oracle",
            "the matching sum equals the Alexander-matrix determinant up to a unit",
            delta.normalize_unit() == oracle.normalize_unit(),
        )
        .with(PolyOut::from(&oracle)),
    );
    r.push(Verdict::new("centered", "the state sum is symmetric or antisymmetric under t -> 1/t", delta.is_centered()));
    r.push(
        Verdict::new("palindromic", "absolute coefficients read the same in both directions", delta.is_palindromic_abs())
            .asserted_if(connected),
    );

    let hyp = connected && d.is_alternating();
    let a = alternating_structure(d, &env.rule, &env.caps)?;
    r.push(
        Verdict::new(
            "sign-coherence",
            "for an alternating diagram, matchings of equal degree have equal sign",
            a.sign_coherent,
        )
        .asserted_if(hyp),
    );
    r.push(
        Verdict::new("saturated-support", "an alternating diagram's polynomial has no interior zero", a.saturated)
            .asserted_if(hyp),
    );
    r.push(
        Verdict::new(
            "degree-span",
            "an alternating diagram's span is crossings minus Seifert circles plus one",
            a.span == Some(a.expected_span),
        )
        .asserted_if(hyp)
        .with(json!({ "span": a.span, "expected": a.expected_span })),
    );
    Ok(())
}

fn murasugi_suite(d: &LinkDiagram, env: &Env, r: &mut Report) -> Result<()> {
    let circles: Vec<usize> = d.t2_circles().iter().map(|c| c.id).collect();
    if circles.is_empty() {
        r.push(Verdict::new("special", "the diagram has no type 2 circle, so there is nothing to split", true).observed());
    }
    for id in circles {
        match circle_checks(d, id, env, r) {
            Ok(()) => {}
            Err(e @ Error::ResourceCap(_)) => return Err(e),
            Err(Error::LengthZero(_)) => {
                let delta = r.polynomial.as_ref().map(|p| p.terms.is_zero());
                let zero = match delta {
                    Some(z) => z,
                    None => alexdimer::dimer::state_sum_with(d, default_segment(d)?, &env.rule, &env.caps)?.is_zero(),
                };
                r.push(Verdict::new(
                    format!("circle {id}: length-0"),
                    "a circle of length 0 means the diagram is split and the polynomial is 0",
                    zero,
                ));
            }
            Err(e) => r.push(
                Verdict::new(format!("circle {id}: split"), "the circle can be split", false)
                    .asserted_if(!matches!(e, Error::Ambiguity(_)))
                    .with(e.to_string()),
            ),
        }
    }
    Ok(())
}

fn circle_checks(d: &LinkDiagram, id: usize, env: &Env, r: &mut Report) -> Result<()> {
    let s = split(d, Some(id))?;
    let ctx = SplitContext::new(d, s, env.rule, env.caps)?;
    let l = ctx.split.length;
    let tag = |name: &str| format!("circle {id}: {name}");
    let alternating = d.is_alternating();

    r.push(
        Verdict::new(tag("flock-deletion"), "removing flock edges leaves the union of the summand graphs", verify_flock_deletion(&ctx)?)
            .with(json!({ "length": l, "flock_edges": ctx.split.flock.len() })),
    );
    let swaps = swaps_for(&ctx)?;
    if let Some(sw) = &swaps {
        let tilde = build_tilde_graphs(&ctx)?;
        r.push(Verdict::new(
            tag("tilde-graphs"),
            "the swap-move diagrams have the subgraphs cut out at the bridge regions as graphs",
            verify_swap_graphs(&ctx, &tilde, sw)?,
        ));
    }
    let st = verify_tilde_structure(&ctx, swaps.as_ref())?;
    r.push(Verdict::new(tag("flock-weights"), "every flock edge has weight 1", st.flock_weights_one));
    r.push(Verdict::new(
        tag("circle-in-summands"),
        "the circle bounds a region in both summands and every other type 2 circle goes to exactly one",
        st.circle_is_t1_in_summands && st.other_t2_circles_distributed,
    ));
    if let Some(ok) = st.summands_alternating {
        r.push(Verdict::new(tag("summands-alternating"), "summands of an alternating diagram are alternating", ok));
    }
    if let Some(ok) = st.tilde_alternating {
        r.push(Verdict::new(tag("tilde-alternating"), "swap-move diagrams of an alternating diagram are alternating", ok));
    }
    if let Some(ok) = st.tilde_t2_counts_match {
        r.push(Verdict::new(tag("tilde-t2-count"), "swap moves keep the number of type 2 circles", ok));
    }
    let parity = flock_parity_check(&ctx)?;
    r.push(
        Verdict::new(tag("flock-parity"), "each matching uses as many flock edges on one side as on the other", parity.holds)
            .with(&parity.histogram),
    );

    match l {
        1 => {
            let p = verify_length1(&ctx)?;
            r.push(
                Verdict::new(tag("product-identity"), "for length 1 the polynomial is the product of the summands'", p.holds)
                    .with(json!({ "prime": PolyOut::from(&p.delta_prime), "double": PolyOut::from(&p.delta_double) })),
            );
        }
        _ => {
            let dc = decompose_state_sum(&ctx)?;
            let detail = json!({
                "p0": PolyOut::from(&dc.p0),
                "pmax": PolyOut::from(&dc.pmax),
                "remainder": PolyOut::from(&dc.remainder),
                "prime": PolyOut::from(&dc.delta_prime),
                "double": PolyOut::from(&dc.delta_double),
                "tilde_prime": PolyOut::from(&dc.delta_tilde_prime),
                "tilde_double": PolyOut::from(&dc.delta_tilde_double),
            });
            if l == 2 {
                r.push(
                    Verdict::new(
                        tag("two-term-identity"),
                        "for length 2 the polynomial is the summand product plus the swap-move product",
                        dc.holds() && dc.remainder.is_zero(),
                    )
                    .with(detail),
                );
            } else {
                r.push(
                    Verdict::new(
                        tag("three-term-identity"),
                        "the polynomial is the summand product plus the swap-move product plus the intermediate flock strata",
                        dc.holds(),
                    )
                    .with(detail),
                );
            }
            if alternating {
                let obs = remainder_observation(&ctx)?;
                r.push(
                    Verdict::new(
                        tag("remainder-shape"),
                        "the part of |Delta| not covered by the two products is centered and trapezoidal",
                        obs.centered && obs.trapezoidal,
                    )
                    .observed()
                    .with(PolyOut::from(&obs.polynomial)),
                );
            }
        }
    }

    let nc = verify_noncanceling(&ctx)?;
    r.push(
        Verdict::new(
            tag("non-canceling"),
            "for an alternating diagram no cancellation occurs between strata and |Delta| bounds the product terms",
            nc.holds(),
        )
        .asserted_if(alternating)
        .with(json!({ "strict": nc.strict, "lower_bound": PolyOut::from(&nc.lower_bound) })),
    );
    r.push(
        Verdict::new(tag("support"), "for an alternating diagram the polynomial and the summand product share support", verify_support(&ctx)?)
            .asserted_if(alternating),
    );
    Ok(())
}
