use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use superortho::chains::{
    chain_stats_above, count_chains, d_closed_form, d_general, d_recursion, CoefficientValue,
};
use superortho::constants::{
    compute_c_alphas, constant_report, ratio_string, reciprocal_sum_table, verify_coeff_root_bounds,
    ConstantReport,
};
use superortho::error::{Error, Result};
use superortho::identity::{verify_identity, verify_identity_tensor, IdentityReport};
use superortho::partition::{
    certify_partition_bound, enumerate_set_partitions, enumerate_types, partition_numbers, PartitionType,
    SetPartition,
};
use superortho::stirling::{falling_factorial, verify_alternating_identity, verify_factorial_identity, StirlingTable};
use superortho::superortho::{
    check_s_type_iv, verify_example_properties, ExampleReport, STRUCTURE_BUDGET, TYPE_IV_BUDGET,
};

use crate::emit::{csv_line, json, verdict, Format, Output};

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

#[derive(Serialize)]
struct TypeCoefficient {
    #[serde(rename = "type")]
    ty: PartitionType,
    #[serde(flatten)]
    value: CoefficientValue,
}

pub fn coeff(
    ty: Option<PartitionType>,
    p1: Option<SetPartition>,
    p2: Option<SetPartition>,
    n: Option<usize>,
    fmt: Format,
) -> Result<Output> {
    let rows: Vec<TypeCoefficient> = match (ty, p1, p2, n) {
        (Some(ty), None, None, None) => {
            let value = d_closed_form(&ty);
            vec![TypeCoefficient { ty, value }]
        }
        (None, Some(p1), Some(p2), None) => {
            let value = d_general(&p1, &p2)?;
            let body = match fmt {
                Format::Text => format!("{}\n", value.value),
                Format::Json => json(&value),
                Format::Csv => format!("value,source\n{},{}\n", value.value, value.source),
            };
            return Ok(Output::ok(body));
        }
        (None, None, None, Some(n)) => {
            if n == 0 {
                return Err(usage("n must be positive"));
            }
            enumerate_types(n)
                .into_iter()
                .map(|ty| {
                    let value = d_closed_form(&ty);
                    TypeCoefficient { ty, value }
                })
                .collect()
        }
        _ => return Err(usage("coeff takes exactly one of --type, --p1 with --p2, or --n")),
    };
    let body = match fmt {
        Format::Text if rows.len() == 1 => format!("{}\n", rows[0].value.value),
        Format::Text => rows.iter().map(|r| format!("({})  {}\n", r.ty, r.value.value)).collect(),
        Format::Json if rows.len() == 1 => json(&rows[0]),
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = String::from("type,d\n");
            for r in &rows {
                out.push_str(&csv_line(&[r.ty.to_string(), r.value.value.to_string()]));
            }
            out
        }
    };
    Ok(Output::ok(body))
}

pub fn chains(n: Option<usize>, p1: Option<SetPartition>, p2: Option<SetPartition>, fmt: Format) -> Result<Output> {
    let (p1, p2) = match (n, p1, p2) {
        (Some(n), None, None) => (SetPartition::singletons(n), SetPartition::top(n)),
        (n, Some(p1), Some(p2)) => {
            if n.is_some_and(|n| n != p1.n()) {
                return Err(usage(format!("{p1} is not a partition of [{}]", n.unwrap_or(0))));
            }
            (p1, p2)
        }
        (Some(n), Some(p1), None) => {
            if p1.n() != n {
                return Err(usage(format!("{p1} is not a partition of [{n}]")));
            }
            let top = SetPartition::top(n);
            (p1, top)
        }
        (None, Some(p1), None) => {
            let top = SetPartition::top(p1.n());
            (p1, top)
        }
        _ => return Err(usage("chains needs --n, or --p1 (optionally with --p2)")),
    };
    let stats = count_chains(&p1, &p2)?;
    let body = match fmt {
        Format::Text => format!("[{p1}, {p2}]: {stats}\n"),
        Format::Json => json(&stats),
        Format::Csv => format!("odd,even,d\n{},{},{}\n", stats.odd, stats.even, stats.d),
    };
    Ok(Output::ok(body))
}

pub fn identity(
    n: Option<usize>,
    l: usize,
    p1: Option<SetPartition>,
    trials: usize,
    seed: u64,
    fmt: Format,
) -> Result<Output> {
    let p1 = match (n, p1) {
        (Some(n), None) => SetPartition::singletons(n),
        (None, Some(p1)) => p1,
        (Some(n), Some(p1)) if p1.n() == n => p1,
        (Some(n), Some(p1)) => return Err(usage(format!("{p1} is not a partition of [{n}]"))),
        (None, None) => return Err(usage("identity needs --n or --p1")),
    };
    let report = verify_identity(p1.n(), l, &p1, trials, seed)?;
    let body = render_identity(&report, seed, fmt);
    Ok(Output::checked(body, report.passed()))
}

fn render_identity(report: &IdentityReport, seed: u64, fmt: Format) -> String {
    match fmt {
        Format::Text => {
            let mut out = format!(
                "identity n={} L={} p1={} trials={} seed={}: {} failures\n",
                report.n,
                report.l,
                report.p1,
                report.trials,
                seed,
                report.failures.len()
            );
            for f in &report.failures {
                out.push_str(&format!("  seed {}: lhs = {}, rhs = {}\n", f.seed, f.lhs, f.rhs));
            }
            out.push_str(verdict(report.passed()));
            out
        }
        Format::Json => json(report),
        Format::Csv => {
            let mut out = String::from("seed,lhs,rhs\n");
            for f in &report.failures {
                out.push_str(&csv_line(&[f.seed.to_string(), f.lhs.to_string(), f.rhs.to_string()]));
            }
            out
        }
    }
}

#[derive(Serialize)]
struct StirlingRow {
    n: usize,
    k: usize,
    #[serde(serialize_with = "serialize_display")]
    s2: num_bigint::BigUint,
}

#[derive(Serialize)]
struct StirlingReport {
    max_n: usize,
    rows: Vec<StirlingRow>,
    /// `n` values where `sum_k S(n,k) [x]_k = x^n` failed at some sample.
    factorial_failures: Vec<usize>,
    /// `n` values where the alternating sum is not `[n == 1]`.
    alternating_failures: Vec<usize>,
}

fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn sample_points(n: usize) -> Vec<BigRational> {
    // n + 1 distinct points (i - 5) / 2, half of them non-integral
    (0..=n as i64)
        .map(|i| BigRational::new(BigInt::from(i - 5), BigInt::from(2)))
        .collect()
}

fn stirling_report(max_n: usize) -> StirlingReport {
    let table = StirlingTable::new(max_n);
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for k in 1..=n {
            rows.push(StirlingRow {
                n,
                k,
                s2: table.get(n, k).clone(),
            });
        }
    }
    let factorial_failures = (1..=max_n)
        .filter(|&n| !verify_factorial_identity(n, &sample_points(n)))
        .collect();
    let alternating_failures = (1..=max_n)
        .filter(|&n| {
            let expected = if n == 1 { BigInt::one() } else { BigInt::zero() };
            verify_alternating_identity(n) != expected
        })
        .collect();
    StirlingReport {
        max_n,
        rows,
        factorial_failures,
        alternating_failures,
    }
}

pub fn stirling(n: usize, fmt: Format) -> Result<Output> {
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let report = stirling_report(n);
    let passed = report.factorial_failures.is_empty() && report.alternating_failures.is_empty();
    let body = match fmt {
        Format::Text => {
            let mut out = String::new();
            for row in &report.rows {
                out.push_str(&format!("S({}, {}) = {}\n", row.n, row.k, row.s2));
            }
            out.push_str(&format!(
                "factorial identity failures: {:?}\nalternating identity failures: {:?}\n",
                report.factorial_failures, report.alternating_failures
            ));
            out.push_str(verdict(passed));
            out
        }
        Format::Json => json(&report),
        Format::Csv => StirlingTable::new(n).to_csv(),
    };
    Ok(Output::checked(body, passed))
}

fn constant_text(report: &ConstantReport) -> String {
    let cs: Vec<String> = report.c_alphas.iter().map(|c| c.to_string()).collect();
    format!(
        "r = {}\nC = [{}]\nexact root in [{}, {}]\nclosed-form bound = {}\nprior bound = {}\nK = {}\n2r - 1 = {}\n",
        report.r,
        cs.join(", "),
        report.exact_root.lo,
        report.exact_root.hi,
        report.paper_bound,
        report.prior_bound,
        report.k_const,
        report.lower_reference
    )
}

pub fn constants(r: Option<usize>, max: Option<usize>, n: Option<usize>, fmt: Format) -> Result<Output> {
    match (r, max, n) {
        (Some(r), None, None) => {
            let report = constant_report(r)?;
            let passed = report.passed();
            let body = match fmt {
                Format::Text => {
                    let mut out = constant_text(&report);
                    out.push_str(verdict(passed));
                    out
                }
                Format::Json => json(&report),
                Format::Csv => format!("{}\n{}\n", ConstantReport::CSV_HEADER, report.csv_row()),
            };
            Ok(Output::checked(body, passed))
        }
        (None, Some(max), None) => {
            let reports = (1..=max).map(constant_report).collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(ConstantReport::passed);
            let body = match fmt {
                Format::Text => {
                    let mut out: String = reports.iter().map(|r| constant_text(r) + "\n").collect();
                    out.push_str(verdict(passed));
                    out
                }
                Format::Json => json(&reports),
                Format::Csv => {
                    let mut out = format!("{}\n", ConstantReport::CSV_HEADER);
                    for r in &reports {
                        out.push_str(&r.csv_row());
                        out.push('\n');
                    }
                    out
                }
            };
            Ok(Output::checked(body, passed))
        }
        (None, None, Some(n)) => {
            let c = compute_c_alphas(n)?;
            let body = match fmt {
                Format::Text => c.c.iter().enumerate().map(|(a, v)| format!("C_{a} = {v}\n")).collect(),
                Format::Json => json(&c),
                Format::Csv => c.to_csv(),
            };
            Ok(Output::ok(body))
        }
        _ => Err(usage("constants takes exactly one of --r, --max or --n")),
    }
}

pub fn sumcheck(max: usize, fmt: Format) -> Result<Output> {
    let table = reciprocal_sum_table(max)?;
    let passed = table.passed();
    let body = match fmt {
        Format::Text => {
            let mut out: String = table
                .rows
                .iter()
                .map(|row| {
                    let status = if row.below_one { "< 1" } else { ">= 1" };
                    format!("m = {:>3}: {} {}\n", row.m, ratio_string(&row.value), status)
                })
                .collect();
            out.push_str(verdict(passed));
            out
        }
        Format::Json => json(&table),
        Format::Csv => table.to_csv(),
    };
    Ok(Output::checked(body, passed))
}

pub fn example(r: usize, s0: usize, n_dim: usize, s: Option<usize>, budget: Option<u64>, fmt: Format) -> Result<Output> {
    let type_iv_budget = budget.unwrap_or(TYPE_IV_BUDGET);
    let structure_budget = budget.unwrap_or(STRUCTURE_BUDGET);
    if let Some(s) = s {
        let family = superortho::superortho::build_example_family(r, s0, n_dim)?;
        let outcome = check_s_type_iv(&family, r, s, type_iv_budget)?;
        let expected = s == s0;
        let holds = outcome.passed() == expected;
        let body = match fmt {
            Format::Text => {
                let mut out = format!(
                    "r={r} s0={s0} N={n_dim} s={s}: {} candidates, {}\n",
                    outcome.candidates,
                    match &outcome.violation {
                        None => "every tuple vanishes".to_string(),
                        Some(v) => format!("violation at {v:?}"),
                    }
                );
                out.push_str(verdict(holds));
                out
            }
            Format::Json => json(&outcome),
            Format::Csv => format!(
                "s,expected_pass,passed,violation\n{}",
                csv_line(&[
                    s.to_string(),
                    expected.to_string(),
                    outcome.passed().to_string(),
                    violation_string(&outcome.violation),
                ])
            ),
        };
        return Ok(Output::checked(body, holds));
    }
    let report = verify_example_properties(r, s0, n_dim, type_iv_budget, structure_budget)?;
    let body = match fmt {
        Format::Text => example_text(&report),
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("s,expected_pass,passed,violation\n");
            for row in &report.type_iv {
                out.push_str(&csv_line(&[
                    row.s.to_string(),
                    row.expected_pass.to_string(),
                    row.outcome.passed().to_string(),
                    violation_string(&row.outcome.violation),
                ]));
            }
            out
        }
    };
    Ok(Output::checked(body, report.passed()))
}

fn violation_string(v: &Option<Vec<usize>>) -> String {
    v.as_ref()
        .map(|t| t.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}

fn example_text(report: &ExampleReport) -> String {
    let mut out = format!(
        "example family r={} s0={} N={}: {} members\n",
        report.r,
        report.s0,
        report.n_dim,
        report.family.len()
    );
    for (i, f) in report.family.members().iter().enumerate() {
        out.push_str(&format!("  {:>3} {}  {}\n", i + 1, f, report.family.origin(i + 1)));
    }
    for row in &report.structures {
        let found = match &row.member_witness {
            Some(w) => format!("found {w}"),
            None => "none".to_string(),
        };
        let mark = if row.holds() { "ok" } else { "MISMATCH" };
        out.push_str(&format!(
            "({t},{t}) structure: expected {}, {found} [{mark}]\n",
            if row.expected { "present" } else { "absent" },
            t = row.t
        ));
    }
    for row in &report.type_iv {
        let mark = if row.holds() { "ok" } else { "MISMATCH" };
        let outcome = match &row.outcome.violation {
            None => format!("passes ({} tuples)", row.outcome.candidates),
            Some(v) => format!("fails at {v:?}"),
        };
        out.push_str(&format!(
            "{}-Type IV: expected {}, {outcome} [{mark}]\n",
            row.s,
            if row.expected_pass { "pass" } else { "fail" }
        ));
    }
    out.push_str(verdict(report.passed()));
    out
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn battery(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut mismatches = 0;
    let mut total = 0;
    for n in 1..=6 {
        for (p, stats) in chain_stats_above(&SetPartition::singletons(n))? {
            total += 1;
            if stats.d != d_closed_form(&p.partition_type()).value {
                mismatches += 1;
            }
        }
    }
    checks.push(check(
        "chain counts vs closed form",
        mismatches == 0,
        format!("{total} partitions, n <= 6, {mismatches} mismatches"),
    ));

    let types: Vec<PartitionType> = (1..=10).flat_map(enumerate_types).collect();
    let bad = types
        .iter()
        .filter(|t| d_recursion(t).value != d_closed_form(t).value)
        .count();
    checks.push(check(
        "recursion vs closed form",
        bad == 0,
        format!("{} types, n <= 10, {bad} mismatches", types.len()),
    ));

    let mut failures = 0;
    let mut runs = 0;
    for n in 1..=4 {
        for p1 in enumerate_set_partitions(n)? {
            for l in 2..=3 {
                failures += verify_identity(n, l, &p1, 5, seed)?.failures.len();
                runs += 1;
            }
        }
    }
    checks.push(check(
        "distinct-sum identity",
        failures == 0,
        format!("{runs} configurations x 5 trials, n <= 4, seed {seed}, {failures} failures"),
    ));

    let tensor = verify_identity_tensor(3, 2, &[2, 1, 2], seed)?;
    checks.push(check(
        "tensor identity",
        tensor.passed(),
        format!("dims {:?}, {} partitions", tensor.dims, tensor.partitions_checked),
    ));

    let mut bad = 0;
    for n in 1..=8 {
        for l in 1..=8i64 {
            let l_q = BigRational::from_integer(l.into());
            let sum = chain_stats_above(&SetPartition::singletons(n))?
                .into_iter()
                .fold(BigInt::zero(), |acc, (p, s)| acc + s.d * BigInt::from(l).pow(p.num_blocks() as u32));
            if BigRational::from_integer(sum) != falling_factorial(&l_q, n) {
                bad += 1;
            }
        }
    }
    checks.push(check(
        "falling factorial specialisation",
        bad == 0,
        format!("n, L <= 8, {bad} mismatches"),
    ));

    let st = stirling_report(25);
    checks.push(check(
        "stirling identities",
        st.factorial_failures.is_empty() && st.alternating_failures.is_empty(),
        "n <= 25".to_string(),
    ));

    let table = reciprocal_sum_table(59)?;
    checks.push(check(
        "reciprocal sums below one",
        table.passed(),
        format!("2 <= m <= 59, first m >= 1: {:?}", table.first_at_least_one),
    ));

    let reports = (1..=10).map(constant_report).collect::<Result<Vec<_>>>()?;
    checks.push(check(
        "exact root below closed-form bound",
        reports.iter().all(ConstantReport::passed),
        "r <= 10".to_string(),
    ));

    let mut bad = 0;
    for n in (2..=20).step_by(2) {
        bad += verify_coeff_root_bounds(n, 60)?.failures().len();
    }
    checks.push(check(
        "coefficient bound C_alpha < n^(n-alpha)",
        bad == 0,
        format!("even n <= 20, {bad} failures"),
    ));

    let p = partition_numbers(1000);
    let bad = (1..=1000).filter(|&n| !certify_partition_bound(n, &p[n])).count();
    checks.push(check(
        "partition function bound",
        bad == 0,
        format!("1 <= n <= 1000, {bad} uncertified"),
    ));

    for (r, s0) in [(2, 1), (3, 1)] {
        let rep = verify_example_properties(r, s0, r, TYPE_IV_BUDGET, STRUCTURE_BUDGET)?;
        checks.push(check(
            &format!("example family r={r} s0={s0}"),
            rep.passed(),
            format!("N = {r}, {} members", rep.family.len()),
        ));
    }
    Ok(checks)
}

pub fn report(seed: u64, fmt: Format) -> Result<Output> {
    let checks = battery(seed)?;
    let passed = checks.iter().all(|c| c.passed);
    let body = match fmt {
        Format::Text => {
            let mut out: String = checks
                .iter()
                .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect();
            out.push_str(verdict(passed));
            out
        }
        Format::Json => json(&checks),
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &checks {
                out.push_str(&csv_line(&[c.name.clone(), c.passed.to_string(), c.detail.clone()]));
            }
            out
        }
    };
    Ok(Output::checked(body, passed))
}
