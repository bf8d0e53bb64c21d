use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use ybe_core::actions::{check_cyclic_conditions, compute_actions, verify_power_identities};
use ybe_core::enumerate::{survey, CatalogEntry, Survey};
use ybe_core::group::{
    decomposability_criteria, orbits_left, sylow_in_left_group, sylow_in_quotient, PermGroup, QuotientGroup,
    SylowDecomposition, CLOSURE_BOUND, QUOTIENT_BOUND,
};
use ybe_core::istructure::{parse_monomial, IStructure};
use ybe_core::linear::{
    check_linear_ybe, check_qybe_unitarity, random_lemma_survey, skew_lemma_roundtrip, BinomialLinearMap,
};
use ybe_core::retract::{
    assemble_union, is_generalized_twisted_union, parse_cross_maps, retract_tower, Level, UnionSpec,
};
use ybe_core::rewrite::{
    binomial, check_centrality, count_degree_classes, count_normal_forms_exhaustive, count_normal_monomials,
    find_skew_ordering, OrderingCertificate,
};
use ybe_core::solution::Witness;
use ybe_core::solution::{parse_solution_file, parse_solution_json, serialize, serialize_json, SolutionFile};
use ybe_core::{classify, Error, SolutionMap};

use crate::report::{monomial, word, Report};
use crate::{CliError, Global};

/// Words longer than this many letters are not reduced exhaustively by `hilbert`.
const EXHAUSTIVE_WORDS: f64 = 200_000.0;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(path: &Path) -> Result<SolutionFile, CliError> {
    let text = read(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        parse_solution_json(&text)
    } else {
        parse_solution_file(&text)
    };
    parsed.map_err(|source| CliError::Input { path: path.to_path_buf(), source })
}

fn to_value<T: ?Sized + serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("core reports serialize")
}

/// A certified skew-type ordering. Not finding one for a square-free
/// involutive solution contradicts the structure theorem, so it is reported
/// as a falsification.
fn certificate(s: &SolutionMap) -> Result<OrderingCertificate, CliError> {
    find_skew_ordering(s)?
        .map_err(|failure| Error::Falsification(format!("no skew-type Groebner ordering: {failure}")).into())
}

fn describe_witness(s: &SolutionMap, w: &Witness) -> String {
    let l = |x: usize| s.label(x);
    match *w {
        Witness::NotInvolutive { pair, image, back } => format!(
            "not involutive: r({} {}) = ({} {}), r({} {}) = ({} {})",
            l(pair.0),
            l(pair.1),
            l(image.0),
            l(image.1),
            l(image.0),
            l(image.1),
            l(back.0),
            l(back.1)
        ),
        Witness::LeftDegenerate { x, y1, y2 } => {
            format!("left degenerate: L_{} sends {} and {} to the same point", l(x), l(y1), l(y2))
        }
        Witness::RightDegenerate { y, x1, x2 } => {
            format!("right degenerate: R_{} sends {} and {} to the same point", l(y), l(x1), l(x2))
        }
        Witness::NotSquareFree { x, image } => {
            format!("not square-free: r({} {}) = ({} {})", l(x), l(x), l(image.0), l(image.1))
        }
        Witness::NotBraided { triple, lhs, rhs } => format!(
            "not braided at {}: r12 r23 r12 gives {}, r23 r12 r23 gives {}",
            word(s, &triple),
            word(s, &lhs),
            word(s, &rhs)
        ),
    }
}

fn orbits_text(orbits: &[Vec<usize>]) -> String {
    orbits
        .iter()
        .map(|o| format!("{{{}}}", o.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn one_based(sets: &[Vec<usize>]) -> Value {
    json!(sets.iter().map(|o| o.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn level_text(level: &Level) -> String {
    match level {
        Level::Level { level } => level.to_string(),
        Level::Irretractable { step, order } => {
            format!("none (irretractable of order {order} after {step} steps)")
        }
        Level::NotWithinBound { steps } => format!("unknown (above {steps})"),
    }
}

pub fn verify(_: &Global, path: &Path) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let r = classify(&s);
    let mut rep = Report::new("verify");
    rep.field("n", s.n())
        .field("involutive", r.involutive)
        .field("left_nondegenerate", r.left_nondegenerate)
        .field("right_nondegenerate", r.right_nondegenerate)
        .field("square_free", r.square_free)
        .field("braided", r.braided)
        .field("symmetric", r.symmetric)
        .field("r_order", r.r_order.map_or(Value::Null, Value::from));
    for w in &r.witnesses {
        rep.line(format!("witness {}", describe_witness(&s, w)));
    }
    rep.data("witnesses", to_value(&r.witnesses));
    rep.check(r.braided && r.nondegenerate(), || "not a non-degenerate solution of the braid relation".into());
    Ok(rep)
}

pub fn analyze(_: &Global, path: &Path) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let a = compute_actions(&s)?;
    let mut rep = Report::new("analyze");
    for x in 0..s.n() {
        rep.line(format!("L_{0} {1}  R_{0} {2}  M_{0} {3}", s.label(x), a.left[x], a.right[x], a.orders[x]));
    }
    rep.data("L", a.left.iter().map(|p| p.to_string()).collect::<Vec<_>>())
        .data("R", a.right.iter().map(|p| p.to_string()).collect::<Vec<_>>())
        .data("Mx", a.orders.clone())
        .field("M", a.cyclic_degree)
        .field("R_inverse_of_L", a.right_inverts_left());
    let cyclic = check_cyclic_conditions(&s);
    rep.line(format!("cyclic.weak {}", cyclic.weak)).line(format!("cyclic.strong {}", cyclic.strong));
    for w in &cyclic.witnesses {
        rep.line(format!("witness {w}"));
    }
    rep.data("cyclic", to_value(&cyclic));

    let class = classify(&s);
    if class.is_square_free_solution() {
        rep.check(a.right_inverts_left(), || "R_x differs from the inverse of L_x".into());
        rep.check(cyclic.strong, || "the cyclic condition fails".into());
        let p = certificate(&s)?.presentation;
        let m = u32::try_from(a.cyclic_degree)
            .map_err(|_| Error::BoundExceeded { what: "cyclic degree".into(), bound: u32::MAX as u64 })?;
        let powers = verify_power_identities(&s, &p, m + 1)?;
        rep.field("power_identities_checked", powers.checked);
        for f in &powers.failures {
            rep.violation(format!(
                "power identity {} fails for ({}, {}) with exponents {} {}",
                f.identity,
                s.label(f.x),
                s.label(f.y),
                f.p,
                f.q
            ));
        }
        let central = check_centrality(&p, m)?;
        rep.field("powers_commute", central.powers_commute).field("power_sum_central", central.power_sum_central);
        for w in &central.witnesses {
            rep.violation(format!("centrality: {w}"));
        }
        rep.data("power_identities", to_value(&powers)).data("centrality", to_value(&central));
    }
    Ok(rep)
}

pub fn order(_: &Global, path: &Path) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let mut rep = Report::new("order");
    match find_skew_ordering(&s)? {
        Ok(cert) => {
            let p = &cert.presentation;
            let labels: Vec<String> = cert.order.iter().map(|&x| s.label(x)).collect();
            rep.field("order", labels.join(" < ")).field("strategy", cert.strategy.to_string());
            let rules: Vec<String> = p
                .rules()
                .iter()
                .map(|r| {
                    format!("{} {} = {} {}", s.label(r.lhs.0), s.label(r.lhs.1), s.label(r.rhs.0), s.label(r.rhs.1))
                })
                .collect();
            for r in &rules {
                rep.line(format!("rule {r}"));
            }
            let gb = p.groebner();
            rep.data("rules", rules)
                .field("skew", p.is_skew())
                .field("groebner", gb.ok)
                .field("overlaps_checked", gb.overlaps.len())
                .data("attempts", to_value(&cert.attempts));
            rep.check(p.is_certified(), || "ordering returned without a certificate".into());
        }
        Err(failure) => {
            rep.violation(format!("no skew-type Groebner ordering: {failure}"));
            rep.data("trace", to_value(&failure));
        }
    }
    Ok(rep)
}

pub fn nf(_: &Global, path: &Path, text: &str) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let p = certificate(&s)?.presentation;
    let w = s.parse_word(text).map_err(|e| CliError::Usage(format!("word: {e}")))?;
    let (e, _) = p.normal_form(&w)?;
    let normal = e.to_word(p.order());
    let mut rep = Report::new("nf");
    rep.line(word(&s, &normal));
    rep.data("input", word(&s, &w)).data("normal_form", word(&s, &normal)).data("exponents", to_value(&e));
    Ok(rep)
}

pub fn hilbert(g: &Global, path: &Path) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let p = certificate(&s)?.presentation;
    let n = s.n();
    let maxdeg = g.maxdeg.unwrap_or(6);
    let mut rep = Report::new("hilbert");
    let mut rows = Vec::new();
    for d in 0..=maxdeg {
        let normal = count_normal_monomials(&p, d);
        let expected = binomial((n + d).saturating_sub(1) as u64, d as u64);
        let small = (n as f64).powi(d as i32) <= EXHAUSTIVE_WORDS;
        let (exhaustive, classes) = if small {
            (Some(count_normal_forms_exhaustive(&p, d)? as u128), Some(count_degree_classes(&s, d)? as u128))
        } else {
            (None, None)
        };
        let show = |c: Option<u128>| c.map_or("-".to_string(), |c| c.to_string());
        rep.line(format!(
            "degree {d}: normal {normal}  expected {expected}  exhaustive {}  classes {}",
            show(exhaustive),
            show(classes)
        ));
        for (what, value) in
            [("exhaustive reduction", exhaustive), ("degree classes", classes), ("normal monomials", Some(normal))]
        {
            if let Some(v) = value {
                rep.check(v == expected, || format!("degree {d}: {what} gives {v}, expected {expected}"));
            }
        }
        rows.push(json!({
            "degree": d,
            "normal": normal.to_string(),
            "expected": expected.to_string(),
            "exhaustive": exhaustive.map(|c| c.to_string()),
            "classes": classes.map(|c| c.to_string()),
        }));
    }
    rep.data("degrees", rows);
    Ok(rep)
}

pub fn istructure(_: &Global, path: &Path, text: &str) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let p = certificate(&s)?.presentation;
    let ist = IStructure::new(&s, &p)?;
    let a = parse_monomial(s.n(), text).map_err(|e| CliError::Usage(format!("monomial: {e}")))?;
    let v = ist.left(&a)?;
    let v1 = ist.right(&a)?;
    let mut rep = Report::new("istructure");
    rep.field("monomial", text.trim())
        .field("v", monomial(&s, p.order(), &v))
        .field("v1", monomial(&s, p.order(), &v1))
        .field("equal", v == v1)
        .data("v_exponents", to_value(&v))
        .data("v1_exponents", to_value(&v1));
    rep.check(ist.left_preimage(&v) == a, || "v is not inverted by its preimage map".into());
    rep.check(ist.right_preimage(&v1) == a, || "v1 is not inverted by its preimage map".into());
    Ok(rep)
}

fn sylow_lines(rep: &mut Report, d: &SylowDecomposition) {
    for piece in &d.pieces {
        rep.line(format!(
            "sylow p={} alpha={} q={} order={} expected={} prime_power={} normal={}",
            piece.prime,
            piece.alpha,
            piece.q,
            piece.order,
            piece.expected_order.map_or("-".to_string(), |e| e.to_string()),
            piece.order_is_prime_power,
            piece.normal
        ));
    }
    rep.line(format!("sylow pairwise_commute={} covers={}", d.pairwise_commute, d.covers));
    if let Some(notice) = &d.notice {
        rep.line(format!("notice {notice}"));
    }
    rep.data("sylow", to_value(d));
    rep.check(d.ok(), || "Sylow pieces do not decompose the group".into());
}

pub fn group(g: &Global, path: &Path) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let a = compute_actions(&s)?;
    let closure = g.bound.map_or(CLOSURE_BOUND, |b| b as usize);
    let gl = PermGroup::generate_bounded(s.n(), a.left.clone(), closure)?;
    let orbits = orbits_left(&s);
    let series = gl.derived_series()?;
    let mut rep = Report::new("group");
    rep.field("G_L", gl.order())
        .field("orbits", orbits_text(&orbits))
        .data("orbits", one_based(&orbits))
        .field("M", a.cyclic_degree)
        .field("derived_series", series.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" > "))
        .data("derived_series", series.clone())
        .field("solvable", gl.is_solvable()?);

    if !classify(&s).is_square_free_solution() {
        rep.line("quotient skipped: not a square-free involutive solution");
        return Ok(rep);
    }
    let decomposable = decomposability_criteria(&s)?;
    rep.field("decomposable", orbits.len() > 1).data("decomposability", to_value(&decomposable));
    rep.check(decomposable.consistent, || "a decomposability criterion fires on an indecomposable solution".into());
    rep.check(s.n() < 2 || orbits.len() > 1, || "square-free solution with a single orbit".into());

    let p = certificate(&s)?.presentation;
    let bound = g.bound.unwrap_or(QUOTIENT_BOUND);
    let sylow = match QuotientGroup::with_bound(&s, &p, bound) {
        Ok(q) => {
            let axioms = q.validate()?;
            rep.field("quotient_order", axioms.order)
                .field("quotient_expected", axioms.expected_order)
                .field("quotient_exponent", axioms.exponent)
                .field("associativity_exhaustive", axioms.associativity_exhaustive)
                .data("axioms", to_value(&axioms));
            for f in &axioms.failures {
                rep.violation(format!("quotient: {f}"));
            }
            rep.check(axioms.ok(), || "quotient group axioms fail".into());
            sylow_in_quotient(&q)?
        }
        Err(Error::BoundExceeded { what, .. }) => {
            rep.field("quotient_order", "skipped: bound");
            let mut d = sylow_in_left_group(&s)?;
            d.notice = Some(format!("{what} exceeds the bound {bound}; Sylow pieces taken in G_L"));
            d
        }
        Err(e) => return Err(e.into()),
    };
    sylow_lines(&mut rep, &sylow);
    Ok(rep)
}

pub fn retract(g: &Global, path: &Path) -> Result<Report, CliError> {
    let s = load(path)?.solution;
    let n = s.n();
    let steps = g.bound.map_or(n.max(1), |b| b as usize);
    let tower = retract_tower(&s, steps)?;
    let mut rep = Report::new("retract");
    let sizes = tower.sizes(n);
    rep.field("sizes", sizes.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" -> ")).data("sizes", sizes);
    for (k, step) in tower.steps.iter().enumerate() {
        rep.line(format!("step {} classes {}", k + 1, orbits_text(&step.classes)));
    }
    rep.data("classes", tower.steps.iter().map(|st| one_based(&st.classes)).collect::<Vec<_>>());
    rep.line(format!("level {}", level_text(&tower.level))).data("level", to_value(&tower.level));
    Ok(rep)
}

pub fn union(_: &Global, xpath: &Path, ypath: &Path, cross: &Path) -> Result<Report, CliError> {
    let x = load(xpath)?.solution;
    let y = load(ypath)?.solution;
    let (nx, ny) = (x.n(), y.n());
    let (xy, yx) = parse_cross_maps(&read(cross)?, nx, ny)
        .map_err(|source| CliError::Input { path: cross.to_path_buf(), source })?;
    let (sol, class) = assemble_union(&UnionSpec { x, y, xy, yx })?;
    let mut rep = Report::new("union");
    rep.field("n", sol.n())
        .field("involutive", class.involutive)
        .field("nondegenerate", class.nondegenerate())
        .field("square_free", class.square_free)
        .field("braided", class.braided);
    for w in &class.witnesses {
        rep.line(format!("witness {}", describe_witness(&sol, w)));
    }
    rep.data("witnesses", to_value(&class.witnesses)).data("solution", serialize_json(&sol));
    if class.is_solution() {
        let xs: Vec<usize> = (0..nx).collect();
        let ys: Vec<usize> = (nx..nx + ny).collect();
        let tw = is_generalized_twisted_union(&sol, &xs, &ys)?;
        rep.field("twisted_union", tw.twisted).field("generalized_twisted_union", tw.generalized());
        if let Some((a, b)) = tw.witness {
            rep.line(format!("twisted witness {} {}", sol.label(a), sol.label(b)));
        }
        rep.data("twisted", to_value(&tw));
        rep.check(tw.formulations_agree(), || {
            "the two forms of the generalized twisted union condition disagree".into()
        });
    } else {
        rep.violation("the assembled union is not a solution");
    }
    Ok(rep)
}

pub fn linear(g: &Global, path: &Path, trials: usize) -> Result<Report, CliError> {
    let file = load(path)?;
    let r =
        BinomialLinearMap::from_file(&file).map_err(|source| CliError::Input { path: path.to_path_buf(), source })?;
    let s = file.solution;
    let class = classify(&s);
    let ybe = check_linear_ybe(&r);
    let q = check_qybe_unitarity(&r);
    let mut rep = Report::new("linear");
    rep.field("coefficient_lines", file.coefficients.len())
        .field("linear_ybe", ybe.ok)
        .field("qybe", q.qybe.ok)
        .field("unitary", q.unitary);
    for w in [&ybe.witness, &q.qybe.witness, &q.unitarity_witness].into_iter().flatten() {
        rep.line(format!("witness {w}"));
    }
    rep.data("ybe_check", to_value(&ybe)).data("qybe_check", to_value(&q));
    rep.check(ybe.ok == q.qybe.ok, || "braid form and QYBE form disagree".into());
    rep.check(q.unitary == class.involutive, || "unitarity differs from involutivity".into());
    if file.coefficients.is_empty() {
        rep.check(ybe.ok == class.braided, || {
            "coefficient-one map disagrees with the set map on the braid relation".into()
        });
    }
    if class.is_square_free_solution() {
        let order = certificate(&s)?.order;
        let rt = skew_lemma_roundtrip(&r, &order)?;
        rep.field("coefficient_groebner", rt.groebner.ok);
        if let Some(o) = &rt.groebner.failing_overlap {
            rep.line(format!("failing overlap {o}"));
        }
        rep.data("groebner", to_value(&rt.groebner));
        rep.check(rt.agree, || "linear YBE and the coefficient Groebner test disagree".into());
        let sv = random_lemma_survey(&s, &order, trials, g.seed)?;
        rep.line(format!(
            "random coefficients: {} trials, {} both hold, {} both fail, {} disagree (seed {})",
            sv.trials,
            sv.both_true,
            sv.both_false,
            sv.disagreements.len(),
            g.seed
        ));
        rep.data("survey", to_value(&sv)).data("seed", g.seed);
        for d in &sv.disagreements {
            rep.violation(format!("random trial disagrees: {d}"));
        }
    }
    Ok(rep)
}

fn entry_line(k: usize, e: &CatalogEntry) -> String {
    let order = e
        .ordering
        .as_ref()
        .map_or("none".to_string(), |o| o.iter().map(|x| format!("x{}", x + 1)).collect::<Vec<_>>().join("<"));
    format!(
        "{:>3}  M {}  orbits {}  level {}  |G_L| {}  relations {} ({} disjoint)  order {}  L {}",
        k + 1,
        e.m,
        e.orbit_count,
        level_text(&e.level),
        e.group_order,
        e.nontrivial_relations,
        e.disjoint_relations,
        order,
        e.left_actions.join(" ")
    )
}

fn survey_table(sv: &Survey) -> String {
    let mut out = format!("{} classes ({} nontrivial)\n", sv.total, sv.nontrivial);
    for (k, e) in sv.entries.iter().enumerate() {
        out.push_str(&entry_line(k, e));
        out.push('\n');
    }
    out
}

pub fn enumerate(_: &Global, n: usize, out: Option<&Path>) -> Result<Report, CliError> {
    let sv = survey(n)?;
    let mut rep = Report::new("enumerate");
    rep.text.push_str(&survey_table(&sv));
    rep.line(format!(
        "with ordering {}  decomposable {}  retractable {}",
        sv.with_ordering, sv.decomposable, sv.retractable
    ));
    rep.data("n", n)
        .data("total", sv.total)
        .data("nontrivial", sv.nontrivial)
        .data("with_ordering", sv.with_ordering)
        .data("decomposable", sv.decomposable)
        .data("retractable", sv.retractable)
        .data("entries", to_value(&sv.entries));
    rep.check(sv.with_ordering == sv.total, || "an entry has no skew-type Groebner ordering".into());
    rep.check(n < 2 || sv.decomposable == sv.total, || "an entry is indecomposable".into());
    if let Some(dir) = out {
        let io = |source| CliError::Io { path: dir.to_path_buf(), source };
        fs::create_dir_all(dir).map_err(io)?;
        for (k, e) in sv.entries.iter().enumerate() {
            let file = dir.join(format!("n{n}_{:02}.ybe", k + 1));
            fs::write(&file, serialize(&e.solution)).map_err(io)?;
        }
        fs::write(dir.join("survey.txt"), survey_table(&sv)).map_err(io)?;
        let doc = serde_json::to_string_pretty(&rep.to_json()).expect("reports serialize");
        fs::write(dir.join("survey.json"), doc).map_err(io)?;
        rep.line(format!("wrote {} files to {}", sv.total + 2, dir.display()));
    }
    Ok(rep)
}

/// Every solution counted here should be retractable. A failure is reported
/// as a finding but never changes the exit status.
pub fn conjecture(_: &Global, n: usize) -> Result<Report, CliError> {
    let mut rep = Report::new("conjecture");
    let mut rows = Vec::new();
    for k in 1..=n {
        let sv = survey(k)?;
        let pct = if sv.total == 0 { 100.0 } else { 100.0 * sv.retractable as f64 / sv.total as f64 };
        rep.line(format!("n={k}: {}/{} retractable ({pct:.0}%)", sv.retractable, sv.total));
        let counterexamples: Vec<Vec<String>> =
            sv.entries.iter().filter(|e| !e.retractable).map(|e| e.left_actions.clone()).collect();
        for c in &counterexamples {
            rep.line(format!("  irretractable: L {}", c.join(" ")));
        }
        rows.push(
            json!({ "n": k, "total": sv.total, "retractable": sv.retractable, "counterexamples": counterexamples }),
        );
    }
    rep.data("sizes", rows);
    Ok(rep)
}
