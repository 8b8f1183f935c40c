//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use latpair::classification::{
    c_n_closed_form, classify, make_type, scan_omegas, type_invariants, Kind, Parity, TypeDescriptor,
};
use latpair::exact_linalg::arith::{is_square, squarefree_part};
use latpair::genus2::{curve_tamagawa_over_extension, lattice_type_from_curve};
use latpair::invariants::{
    betts_group, betts_pairing, fixed_points_direct, pairing_data, separation_group, up_to_squares,
};
use latpair::oracle::{sweep, CaseOutcome};
use latpair::pair::LatticePair;
use latpair::tamagawa::{
    base_change, elliptic_data, elliptic_reference, tamagawa_number, type_base_change, AbVarLocalData, ExtensionSpec,
};
use num_bigint::BigInt;
use num_integer::Integer;

const SEED: u64 = 0;
const CASES: usize = 500;
const CAP: u64 = 1_000_000;

/// Ascending coefficients, expected type, and `c` over `(e, f)`.
type CurveExample = (&'static [i64], &'static str, fn(u64, u64) -> u64);
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Verdict + 'a>);

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn from_failures(checked: usize, failures: Vec<String>, extra: &str) -> Verdict {
        let ok = failures.is_empty();
        let mut detail = format!("{checked} checks, {} failures{extra}", failures.len());
        for f in failures.iter().take(5) {
            detail.push_str("\n      ");
            detail.push_str(f);
        }
        Verdict { ok, detail }
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ext(e: u64, f: u64) -> ExtensionSpec {
    ExtensionSpec::new(e, f).unwrap()
}

fn templates(bound: u64) -> Vec<TypeDescriptor> {
    Kind::ALL.iter().flat_map(|&k| TypeDescriptor::enumerate(k, bound)).collect()
}

fn table_reproduction() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in templates(4) {
        checked += 1;
        let pair = make_type(&t);
        let d = pair.d_matrix();
        let want = type_invariants(&t);
        let sep = separation_group(&pair.lambda, &d).map(|g| g.abstract_group());
        let b = betts_group(&pair).map(|g| g.abstract_group());
        let c = fixed_points_direct(&pair, &big(1), 1);
        match (sep, b, c) {
            (Ok(s), Ok(b), Ok(c)) if s == want.separation && b == want.betts && c == want.c => {}
            other => {
                failures.push(format!("{t}: got {other:?}, table ({}, {}, {})", want.separation, want.betts, want.c))
            }
        }
    }
    Verdict::from_failures(checked, failures, "")
}

fn formula_vs_oracle(outcomes: &[CaseOutcome], elapsed: Duration) -> Verdict {
    let failures: Vec<String> = outcomes
        .iter()
        .flat_map(|o| o.failures.iter().filter(|f| !f.contains("divide")).map(move |f| format!("case {}: {f}", o.id)))
        .collect();
    let skipped: usize = outcomes.iter().map(|o| o.skipped).sum();
    let mut v = Verdict::from_failures(
        outcomes.len(),
        failures,
        &format!(", e = 1..6, {skipped} brute counts above cap, {:.1}s", elapsed.as_secs_f64()),
    );
    if outcomes.len() < CASES || skipped > 0 || elapsed >= Duration::from_secs(120) {
        v.ok = false;
    }
    v
}

fn divisibility(outcomes: &[CaseOutcome]) -> Verdict {
    let failures: Vec<String> = outcomes
        .iter()
        .flat_map(|o| o.failures.iter().filter(|f| f.contains("divide")).map(move |f| format!("case {}: {f}", o.id)))
        .collect();
    Verdict::from_failures(outcomes.len(), failures, "")
}

fn pairing_failures(p: &LatticePair, label: &str) -> Option<Vec<String>> {
    let b = match betts_group(p) {
        Ok(b) => b,
        Err(e) => return Some(vec![format!("{label}: {e}")]),
    };
    if b.order() > big(64) {
        return None;
    }
    let mut out = Vec::new();
    let n = b.order();
    if !(is_square(&n) || (n.is_even() && is_square(&(&n / 2)))) {
        out.push(format!("{label}: |B| = {n}"));
    }
    match pairing_data(p) {
        Ok(data) => {
            if !data.is_antisymmetric() {
                out.push(format!("{label}: not antisymmetric"));
            }
            if !data.is_perfect() {
                out.push(format!("{label}: not perfect"));
            }
            let elements: Vec<_> = data.elements().iter().map(|c| data.group.element(c)).collect();
            for x in &elements {
                let fx = p.frobenius.mul_vec(x);
                for y in &elements {
                    match (betts_pairing(p, x, y), betts_pairing(p, y, &fx)) {
                        (Ok(a), Ok(b)) if (&a + &b).is_integer() => {}
                        _ => out.push(format!("{label}: <x,y> + <y,Fx> not integral")),
                    }
                }
            }
        }
        Err(e) => out.push(format!("{label}: {e}")),
    }
    Some(out)
}

fn pairing_suite(outcomes: &[CaseOutcome]) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    let generated = outcomes.iter().map(|o| (format!("case {}", o.id), o.generated.pair.clone()));
    let models = templates(4).into_iter().map(|t| (t.to_string(), make_type(&t)));
    for (label, p) in generated.chain(models) {
        if let Some(f) = pairing_failures(&p, &label) {
            checked += 1;
            failures.extend(f);
        }
    }
    Verdict::from_failures(checked, failures, " (pairs with |B| <= 64)")
}

fn up_to_squares_laws() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in templates(3) {
        let pair = make_type(&t);
        for e in 1..=4 {
            for f in [1, 2, 3, 4, 6] {
                checked += 1;
                let formula = up_to_squares(&pair, &big(e), f);
                let direct = fixed_points_direct(&pair, &big(e), f).map(|c| squarefree_part(&c));
                match (&formula, &direct) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => failures.push(format!("{t}, e = {e}, f = {f}: formula {formula:?}, direct {direct:?}")),
                }
            }
        }
    }
    Verdict::from_failures(checked, failures, "")
}

fn base_change_commutation() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in templates(4).into_iter().filter(|t| t.rank() == 2) {
        let data = AbVarLocalData::new(make_type(&t)).unwrap();
        for e in 1..=3 {
            for f in 1..=3 {
                checked += 1;
                let want = type_base_change(&t, ext(e, f));
                match base_change(&data, ext(e, f)).and_then(|d| classify(&d.pair)) {
                    Ok(got) if got == want => {}
                    got => failures.push(format!("{t} over ({e}, {f}): {got:?}, table {want}")),
                }
            }
        }
    }
    Verdict::from_failures(checked, failures, "")
}

fn elliptic_tables() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=12 {
        for split in [true, false] {
            let d = elliptic_data(n, split);
            let b = betts_group(&d.pair).unwrap().order();
            checked += 1;
            if (b == big(2)) != (!split && n % 2 == 1) {
                failures.push(format!("I_{n}, split = {split}: |B| = {b}"));
            }
            for e in 1..=4 {
                for f in 1..=4 {
                    checked += 1;
                    let want = elliptic_reference(n, split, ext(e, f));
                    match base_change(&d, ext(e, f)).and_then(|o| tamagawa_number(&o)) {
                        Ok(c) if c == want => {}
                        got => failures.push(format!("I_{n}, split = {split}, ({e}, {f}): {got:?}, table {want}")),
                    }
                }
            }
        }
    }
    Verdict::from_failures(checked, failures, " (n <= 12, e, f <= 4)")
}

fn genus2_examples() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    let examples: [CurveExample; 2] = [
        (&[64, 64, 20, 20, 1, 1], "4.4:2", |e, f| match f % 4 {
            0 => 4 * e * e,
            2 => 4,
            _ => 2,
        }),
        (&[36, 0, 76, 0, 17, 0, 1], "1.2B:5,1", |e, f| if f % 2 == 0 { 5 * e * e } else { 5 * e }),
    ];
    for (coeffs, ty, c) in examples {
        let start = Instant::now();
        let f: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
        checked += 1;
        match lattice_type_from_curve(3, &f) {
            Ok(curve) if curve.descriptor.map(|t| t.to_string()).as_deref() == Some(ty) => {}
            other => failures.push(format!("{ty}: got {:?}", other.map(|c| c.descriptor))),
        }
        for e in 1..=4 {
            for fd in 1..=8 {
                checked += 1;
                match curve_tamagawa_over_extension(3, &f, ext(e, fd)) {
                    Ok(got) if got == big(c(e, fd)) => {}
                    got => failures.push(format!("{ty} over ({e}, {fd}): {got:?}, expected {}", c(e, fd))),
                }
            }
        }
        slowest = slowest.max(start.elapsed());
    }
    let mut v = Verdict::from_failures(checked, failures, &format!(", slowest example {:.2}s", slowest.as_secs_f64()));
    if slowest >= Duration::from_secs(1) {
        v.ok = false;
    }
    v
}

fn cyclotomic_closed_form() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut notes = Vec::new();
    for n in [3usize, 4, 5, 6, 8, 12] {
        let omegas = scan_omegas(n, 6);
        if omegas.is_empty() {
            failures.push(format!("n = {n}: no valid omega found"));
            continue;
        }
        let mut parities = Vec::new();
        for (omega, pair) in &omegas {
            for e in 1..=3u64 {
                checked += 1;
                let index = pair.lambda.index(&pair.lambda_prime.scaled(&big(e)));
                let parity = Parity::of(&index);
                if !parities.contains(&parity) {
                    parities.push(parity);
                }
                let closed = c_n_closed_form(n as u64, parity);
                let direct = fixed_points_direct(pair, &big(e), 1);
                match (&closed, &direct) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => failures
                        .push(format!("n = {n}, omega = {omega:?}, e = {e}: closed {closed:?}, direct {direct:?}")),
                }
            }
        }
        if n.is_power_of_two() {
            let missing: Vec<String> = [Parity::Even, Parity::Odd]
                .iter()
                .filter(|p| !parities.contains(p))
                .map(|p| format!("{p:?}"))
                .collect();
            let status =
                if missing.is_empty() { "both parities".to_string() } else { missing.join("/") + " unrealized" };
            notes.push(format!("n = {n}: {} omegas, {status}", omegas.len()));
        }
    }
    let extra = format!("; {}", notes.join(", "));
    Verdict::from_failures(checked, failures, &extra)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes = sweep(CASES, SEED, CAP, &[1, 2, 3, 4, 5, 6]);
    let sweep_time = start.elapsed();

    let criteria: Vec<Criterion> = vec![
        ("table reproduction", Box::new(table_reproduction)),
        ("formula vs oracle", Box::new(|| formula_vs_oracle(&outcomes, sweep_time))),
        ("divisibility law", Box::new(|| divisibility(&outcomes))),
        ("pairing suite", Box::new(|| pairing_suite(&outcomes))),
        ("up-to-squares laws", Box::new(up_to_squares_laws)),
        ("base-change commutation", Box::new(base_change_commutation)),
        ("elliptic tables", Box::new(elliptic_tables)),
        ("genus-2 examples", Box::new(genus2_examples)),
        ("cyclotomic closed form", Box::new(cyclotomic_closed_form)),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let v = run();
        all &= v.ok;
        let status = if v.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({:.2}s) {}", i + 1, t.elapsed().as_secs_f64(), v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
