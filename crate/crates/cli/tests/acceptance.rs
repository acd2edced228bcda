//! Acceptance criteria 1 to 10, one pass/fail line each.
//!
//! Runs without the libtest harness so the lines are always printed:
//! `cargo test -p knotcalc-cli --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use knotcalc::cable::{cable2, hat_from_tilde, jprime_chain, king_verify, make_hat, CableSpec};
use knotcalc::diagram::{Diagram, RMove};
use knotcalc::poly::{king_a_image, king_z_image, two_var_substitute, GaussInt, LaurentPoly, TwoVarPoly};
use knotcalc::presentations::BraidWord;
use knotcalc::seifert::{
    alexander_from_seifert, braid_seifert_matrix, determinant, elementary_enlarge, is_monic, normalize_alexander,
    seifert_matrix, signature, EnlargeMode,
};
use knotcalc::skein::{
    alexander_from_conway, bracket, bracket_state_sum, conway_with, jones, jones_memoized, jones_state_sum,
    kauffman_f_with, verify_jones_skein, SkeinConfig, SkeinError, SkeinMemo,
};
use knotcalc::stevedore::Expected;
use knotcalc::table::KnotTable;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Setup) -> Outcome);

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

struct Setup {
    table: KnotTable,
    exp: Expected,
    memo: SkeinMemo,
    cfg: SkeinConfig,
    k: Diagram,
}

impl Setup {
    fn new() -> Setup {
        let table = KnotTable::bundled();
        let exp = Expected::bundled();
        let base = table.get(&exp.knot).unwrap().diagram().unwrap();
        let k = if exp.mirror { base.mirror() } else { base };
        Setup {
            table,
            exp,
            memo: SkeinMemo::new(),
            cfg: SkeinConfig::default(),
            k,
        }
    }

    fn knot(&self, name: &str) -> Diagram {
        self.table.get(name).unwrap().diagram().unwrap()
    }

    fn kauffman(&self) -> Result<TwoVarPoly, String> {
        kauffman_f_with(&self.k, &self.memo, &self.cfg).map_err(err)
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn arb_braid(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..5).prop_flat_map(move |n| {
        proptest::collection::vec((1..n as i32, proptest::bool::ANY), 1..max_len).prop_map(move |v| {
            BraidWord::new(n, v.into_iter().map(|(k, s)| if s { k } else { -k }).collect()).unwrap()
        })
    })
}

fn c1(s: &Setup) -> Outcome {
    let want = p("2t^-1 - 5 + 2t");
    let d = s.knot("6_1");
    let seif = alexander_from_seifert(&seifert_matrix(&d).map_err(err)?);
    let conway = normalize_alexander(&alexander_from_conway(&conway_with(&d, &s.memo, &s.cfg).map_err(err)?));
    ensure(seif == want, || format!("seifert path gave {seif}"))?;
    ensure(conway == want, || format!("conway path gave {conway}"))?;
    ensure(!is_monic(&seif), || "6_1 reported monic".into())?;
    let tre = alexander_from_seifert(&seifert_matrix(&s.knot("3_1")).map_err(err)?);
    ensure(is_monic(&tre), || format!("3_1 Alexander {tre} not monic"))?;
    Ok(format!("Δ = {seif} on both paths; 6_1 not monic, 3_1 monic"))
}

fn c2(s: &Setup) -> Outcome {
    let f = s.kauffman()?;
    let corrected: TwoVarPoly = s.exp.kauffman_f.parse().map_err(err)?;
    ensure(f == corrected, || format!("computed {f}"))?;
    // the displayed form carries +4a^2z^2; everything else agrees
    let mut displayed = corrected.clone();
    displayed.add_term(2, 2, 8);
    let diff: Vec<_> = (f.clone() + displayed.scale(-1)).terms().collect();
    ensure(diff == vec![((2, 2), -8)], || format!("unexpected difference {diff:?}"))?;
    let sub_disp = two_var_substitute(&displayed, &king_a_image(), &king_z_image()).map_err(err)?;
    let sub_want: LaurentPoly = s.exp.substitution.parse().map_err(err)?;
    ensure(sub_disp != sub_want, || "displayed form also matches the substitution".into())?;
    Ok("F matches the six-term display with z^2 coefficient a^-2 - 4a^2 - 3a^4; \
        the displayed +4a^2 is inconsistent with the substitution display"
        .into())
}

fn c3(s: &Setup) -> Outcome {
    let f = s.kauffman()?;
    let got = two_var_substitute(&f, &king_a_image(), &king_z_image()).map_err(err)?;
    let want: LaurentPoly = s.exp.substitution.parse().map_err(err)?;
    ensure(got.is_real(), || format!("imaginary part left in {got}"))?;
    ensure(got == want, || format!("got {got}"))?;
    ensure(got.len() == 15, || format!("{} terms", got.len()))?;
    Ok("15 real terms, t^-12 .. t^6".into())
}

fn c4(s: &Setup) -> Outcome {
    let c = cable2(&CableSpec {
        base: s.k.clone(),
        framing: 0,
    })
    .map_err(err)?;
    let start = Instant::now();
    let v = jones_memoized(&c, &SkeinMemo::new(), &s.cfg).map_err(err)?;
    let took = start.elapsed();
    let want: LaurentPoly = s.exp.cable_jones.parse().map_err(err)?;
    ensure(v == want, || format!("got {v}"))?;
    ensure(took <= Duration::from_secs(300), || format!("took {took:?}"))?;
    ensure(c.linking_number(0, 1) == Ok(0), || "lk != 0".into())?;
    Ok(format!("{} crossings, lk 0, {:.1?}", c.crossing_count(), took))
}

/// Companions for the sweep: everything in the table up to 7 crossings.
fn sweep(s: &Setup) -> Vec<(String, Diagram)> {
    let mut out: Vec<_> = s.table.up_to(7).map(|k| (k.name.clone(), k.diagram().unwrap())).collect();
    out.push(("mirror 6_1".into(), s.k.clone()));
    out
}

fn cable_jones(s: &Setup, d: &Diagram, f: i64) -> Result<(Diagram, LaurentPoly), String> {
    let c = cable2(&CableSpec {
        base: d.clone(),
        framing: f,
    })
    .map_err(err)?;
    let v = jones_memoized(&c, &s.memo, &s.cfg).map_err(err)?;
    Ok((c, v))
}

fn c5(s: &Setup) -> Outcome {
    let mut n = 0;
    for (name, d) in sweep(s) {
        let fk = kauffman_f_with(&d, &s.memo, &s.cfg).map_err(err)?;
        for f in [0, 1] {
            let (_, v) = cable_jones(s, &d, f)?;
            ensure(king_verify(&fk, &v, f).map_err(err)?, || format!("{name} f={f}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (knot, f) pairs"))
}

fn c6(s: &Setup) -> Outcome {
    let mut n = 0;
    for (name, d) in sweep(s) {
        for f in [0, 1] {
            let (c, v) = cable_jones(s, &d, f)?;
            let vh = jones_memoized(&make_hat(&c).map_err(err)?, &s.memo, &s.cfg).map_err(err)?;
            ensure(vh == hat_from_tilde(&v, f), || format!("{name} f={f}"))?;
            if f == 0 {
                ensure(vh == v, || format!("{name}: hat differs at f=0"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} (knot, f) pairs"))
}

fn c7(s: &Setup) -> Outcome {
    let c = cable2(&CableSpec {
        base: s.k.clone(),
        framing: 0,
    })
    .map_err(err)?;
    let vh = jones_memoized(&make_hat(&c).map_err(err)?, &s.memo, &s.cfg).map_err(err)?;
    let got = jprime_chain(&vh);
    let want: LaurentPoly = s.exp.jprime_jones.parse().map_err(err)?;
    ensure(got == want, || format!("got {got}"))?;
    Ok(format!("V(J') = {got}"))
}

fn c8(s: &Setup) -> Outcome {
    let d = s.knot("3_1");
    let v = jones(&d);
    let oracle = jones_state_sum(&d, &s.cfg).map_err(err)?;
    ensure(v == oracle, || format!("contraction {v} vs state sum {oracle}"))?;
    let stored: LaurentPoly = s.table.get("3_1").unwrap().jones.parse().map_err(err)?;
    ensure(v == stored, || format!("table has {stored}"))?;
    // the displayed V(J) = t^-4 + t^-3 + t^-1 has the exponents of the
    // mirror but a + sign on t^-4
    let m = v.invert_variable();
    let displayed = p("t^-4 + t^-3 + t^-1");
    let exps = |q: &LaurentPoly| q.terms().map(|(e, _)| e).collect::<Vec<_>>();
    ensure(exps(&m) == exps(&displayed), || format!("exponents of {m}"))?;
    let mut mags: Vec<_> = m.terms().map(|(_, c)| c.re.abs()).collect();
    mags.sort();
    ensure(mags == vec![1, 1, 1], || format!("coefficients of {m}"))?;
    let differs: Vec<_> = m.terms().filter(|&(e, c)| displayed.coeff(e) != c).map(|(e, _)| e).collect();
    ensure(differs == vec![-16], || format!("sign pattern of {m}"))?;
    Ok(format!(
        "V(3_1) = {v}; its mirror {m} matches the displayed V(J) except the t^-4 sign (recorded)"
    ))
}

fn c9(s: &Setup) -> Outcome {
    let mut parts = Vec::new();

    // skein relation at every crossing
    let mut sites = 0;
    for k in s.table.up_to(8) {
        let d = k.diagram().map_err(err)?;
        for i in 0..d.crossing_count() {
            let ok = verify_jones_skein(&d, i, |e| jones_memoized(e, &s.memo, &s.cfg)).map_err(|e: SkeinError| err(e))?;
            ensure(ok, || format!("skein relation fails at {} crossing {i}", k.name))?;
            sites += 1;
        }
    }
    parts.push(format!("skein at {sites} crossings"));

    // Jones invariance, bracket R2/R3 invariance and R1 scaling
    let minus_a3 = |k: i64| {
        let q = LaurentPoly::t_quarters(-3 * k);
        if k % 2 == 0 {
            q
        } else {
            -q
        }
    };
    runner(96)
        .run(&(arb_braid(10), 0usize..1000), |(b, pick)| {
            let d = b.closure();
            let (v, br) = (jones(&d), bracket(&d));
            let mut moves = d.move_sites();
            for arc in d.arcs().into_iter().take(3) {
                for sign in [1, -1] {
                    moves.push(RMove::R1Add {
                        arc,
                        sign,
                        under_first: pick % 2 == 0,
                    });
                }
            }
            let faces = d.faces();
            let f = &faces[pick % faces.len()];
            if f.len() >= 2 {
                let arc = |i: usize| d.crossings()[f.darts[i].0].pd[f.darts[i].1];
                let (x, y) = (arc(0), arc(1));
                if x != y {
                    moves.push(RMove::R2Add {
                        over_arc: x,
                        under_arc: y,
                        face: Some(pick % faces.len()),
                    });
                }
            }
            for mv in &moves {
                let (e, rec) = d.apply_reidemeister(mv).unwrap();
                proptest::prop_assert_eq!(jones(&e), v.clone(), "{:?}", mv);
                proptest::prop_assert_eq!(bracket(&e), &br * &minus_a3(rec.writhe_delta), "{:?}", mv);
            }
            Ok(())
        })
        .map_err(err)?;
    parts.push("R1/R2/R3 moves".into());

    // Kauffman to Jones specialization on the table
    let (a, z) = (
        LaurentPoly::monomial(GaussInt::real(-1), -3),
        LaurentPoly::t_quarters(1) + LaurentPoly::t_quarters(-1),
    );
    for k in s.table.up_to(8) {
        let d = k.diagram().map_err(err)?;
        let f = kauffman_f_with(&d, &s.memo, &s.cfg).map_err(err)?;
        let v = two_var_substitute(&f, &a, &z).map_err(err)?;
        ensure(v == jones_memoized(&d, &s.memo, &s.cfg).map_err(err)?, || format!("specialization fails on {}", k.name))?;
    }
    parts.push("F to V".into());

    // Alexander symmetry and Δ(1) = ±1
    for k in &s.table.knots {
        let d = k.diagram().map_err(err)?;
        let delta = alexander_from_seifert(&seifert_matrix(&d).map_err(err)?);
        ensure(delta.invert_variable() == delta, || format!("{} Δ not symmetric", k.name))?;
        let one = delta.eval_int(1).map_err(err)?;
        ensure(*one.denom() == 1 && one.numer().abs() == 1, || format!("{} Δ(1) = {one}", k.name))?;
    }
    parts.push("Δ symmetric, Δ(1) = ±1".into());

    // congruence and enlargement invariance
    let unimodular = |n: usize| {
        proptest::collection::vec((0..n.max(1), 0..n.max(1), -2i64..3), 0..6).prop_map(move |ops| {
            let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
            for (i, j, c) in ops {
                if i != j {
                    for r in m.iter_mut() {
                        r[j] += c * r[i];
                    }
                }
            }
            m
        })
    };
    runner(64)
        .run(
            &arb_braid(8).prop_flat_map(move |b| {
                let s = braid_seifert_matrix(&b);
                let n = s.size();
                (
                    proptest::strategy::Just(s),
                    unimodular(n),
                    proptest::collection::vec(-3i64..4, n),
                    proptest::bool::ANY,
                )
            }),
            |(m, pm, x, row)| {
                let c = m.congruent(&pm).unwrap();
                let (d0, det0, sig0) = (alexander_from_seifert(&m), determinant(&m), signature(&m));
                proptest::prop_assert_eq!(alexander_from_seifert(&c), d0.clone());
                proptest::prop_assert_eq!(determinant(&c), det0);
                proptest::prop_assert_eq!(signature(&c), sig0);
                let mode = if row { EnlargeMode::Row } else { EnlargeMode::Column };
                let e = elementary_enlarge(&m, mode, &x).unwrap();
                proptest::prop_assert_eq!(alexander_from_seifert(&e), d0);
                proptest::prop_assert_eq!(determinant(&e), det0);
                proptest::prop_assert_eq!(signature(&e), sig0);
                Ok(())
            },
        )
        .map_err(err)?;
    parts.push("congruence and enlargement".into());

    // memoized Jones against the bracket state sum on every diagram up to 12 crossings
    let mut diagrams: Vec<Diagram> = s.table.knots.iter().map(|k| k.diagram().unwrap()).collect();
    for (_, d) in sweep(s) {
        for f in -1..=1 {
            let c = cable2(&CableSpec { base: d.clone(), framing: f }).map_err(err)?;
            diagrams.push(c.clone());
            diagrams.push(make_hat(&c).map_err(err)?);
        }
    }
    diagrams.retain(|d| d.crossing_count() <= 12);
    let oracle_cfg = SkeinConfig {
        state_sum_cap: 12,
        ..s.cfg
    };
    for d in &diagrams {
        let m = jones_memoized(d, &s.memo, &s.cfg).map_err(err)?;
        ensure(m == jones_state_sum(d, &oracle_cfg).map_err(err)?, || format!("memoized Jones differs on {:?}", d.crossings()))?;
    }
    runner(64)
        .run(&arb_braid(13), |b| {
            let d = b.closure();
            proptest::prop_assert_eq!(jones_memoized(&d, &SkeinMemo::new(), &oracle_cfg).unwrap(), jones_state_sum(&d, &oracle_cfg).unwrap());
            proptest::prop_assert_eq!(bracket(&d), bracket_state_sum(&d, &oracle_cfg).unwrap());
            Ok(())
        })
        .map_err(err)?;
    parts.push(format!("memoized = state sum on {} fixed diagrams plus random braids", diagrams.len()));

    // δ of a braid tangle R2-reduces to the trivial tangle
    runner(96)
        .run(&arb_braid(9), |b| {
            let d = b.to_tangle().double_delta().closure().simplify_regular();
            proptest::prop_assert_eq!(d.crossing_count(), 0);
            proptest::prop_assert_eq!(d.free_loops(), b.strands());
            Ok(())
        })
        .map_err(err)?;
    parts.push("δ R2-reduces".into());

    Ok(parts.join("; "))
}

fn c10(_: &Setup) -> Outcome {
    let run = |workers: &str, format: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_knotcalc"))
            .args(["--format", format, "--workers", workers, "verify-paper"])
            .output()
            .map_err(err)?;
        ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
        Ok::<_, String>(out.stdout)
    };
    let (t1, t4) = (run("1", "text")?, run("4", "text")?);
    ensure(t1 == t4, || "text payloads differ".into())?;
    let report = |bytes: Vec<u8>| -> Result<String, String> {
        let v: serde_json::Value = serde_json::from_slice(&bytes).map_err(err)?;
        serde_json::to_string(&v["report"]).map_err(err)
    };
    let (j1, j4) = (report(run("1", "json")?)?, report(run("4", "json")?)?);
    ensure(j1 == j4, || "json reports differ".into())?;
    Ok(format!("identical payloads with 1 and 4 workers ({} bytes)", j1.len()))
}

fn main() {
    let s = Setup::new();
    let criteria: [Criterion; 10] = [
        ("Alexander polynomial of 6_1 and monicity", c1),
        ("Kauffman polynomial of 6_1", c2),
        ("cabling substitution", c3),
        ("Jones polynomial of the 0-framed cable", c4),
        ("cabling identity sweep", c5),
        ("hat orientation sweep", c6),
        ("twisted double chain", c7),
        ("trefoil Jones", c8),
        ("property suites", c9),
        ("determinism across worker counts", c10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&s) {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
