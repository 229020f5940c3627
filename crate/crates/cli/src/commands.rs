use std::env;

use longrun_core::stats::{default_alpha, moments, narrowing_report, p_value_at_least, pmf_table};
use longrun_core::verify::{run_suite, VerifyConfig};
use longrun_core::{BinomialTable, Composition, Counter, Definition, MomentSummary, PerLetterSpec};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::args::{CountArgs, DefinitionArg, DistArgs, PvalueArgs, Stat, TableArgs, VerifyArgs};
use crate::error::CliError;
use crate::output::{Report, Rounding};

/// Overrides the number of rows in the cached binomial table.
pub const BINOMIAL_ROWS_ENV: &str = "LONGRUN_BINOMIAL_ROWS";

pub fn parse_counts(text: &str) -> Result<Composition, CliError> {
    let counts = parse_list::<usize>(text, "counts")?;
    Ok(Composition::new(counts)?)
}

fn parse_list<T: std::str::FromStr>(text: &str, name: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|part| part.trim().parse::<T>().map_err(|_| CliError::invalid(format!("--{name}: cannot parse {part:?}"))))
        .collect()
}

fn parse_scalar<T: std::str::FromStr>(text: &str, name: &str) -> Result<T, CliError> {
    let mut values = parse_list::<T>(text, name)?;
    if values.len() != 1 {
        return Err(CliError::arity(format!("--{name} takes a single value here, got {}", values.len())));
    }
    Ok(values.remove(0))
}

/// `a/b`, an integer, or a plain decimal such as `0.05`.
pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::invalid(format!("cannot parse {text:?} as a fraction or decimal"));
    let text = text.trim();
    if text.contains('/') {
        let value: BigRational = text.parse().map_err(|_| bad())?;
        return Ok(value);
    }
    let (whole, frac) = text.split_once('.').unwrap_or((text, ""));
    if whole.is_empty() && frac.is_empty() || !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(digits, scale))
}

pub fn counter(comp: Composition) -> Result<Counter, CliError> {
    match env::var(BINOMIAL_ROWS_ENV) {
        Ok(rows) => {
            let rows: usize = rows
                .trim()
                .parse()
                .map_err(|_| CliError::invalid(format!("{BINOMIAL_ROWS_ENV} must be a non-negative integer")))?;
            Ok(Counter::with_table(comp, BinomialTable::new(rows))?)
        }
        Err(_) => Ok(Counter::new(comp)),
    }
}

fn definition(arg: DefinitionArg, letter: usize) -> Result<Definition, CliError> {
    match arg {
        DefinitionArg::Whole => Ok(Definition::Whole),
        DefinitionArg::PerLetter if letter == 0 => Err(CliError::invalid("--letter is 1-based")),
        DefinitionArg::PerLetter => Ok(Definition::PerLetter { letter: letter - 1 }),
    }
}

fn definition_json(def: Definition) -> (Value, Value) {
    match def {
        Definition::Whole => (json!("whole"), Value::Null),
        Definition::PerLetter { letter } => (json!("per-letter"), json!(letter + 1)),
    }
}

fn ratio(count: &BigUint, total: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(count.clone()), BigInt::from(total.clone()))
}

pub fn count(args: &CountArgs) -> Result<Report, CliError> {
    let comp = parse_counts(&args.composition.counts)?;
    let counter = counter(comp)?;
    let k = counter.composition().k();
    let q_text = || args.q.as_deref().ok_or_else(|| CliError::usage("--q is required for this statistic"));
    let per_letter = |m: &str, q: &str| -> Result<PerLetterSpec, CliError> {
        let m = parse_list::<usize>(m, "m")?;
        let q = parse_list::<i64>(q, "q")?;
        for (name, len) in [("m", m.len()), ("q", q.len())] {
            if len != k {
                return Err(CliError::arity(format!("--{name} needs {k} values (one per letter), got {len}")));
            }
        }
        Ok(PerLetterSpec::new(m, q)?)
    };
    let (value, params) = match args.stat {
        Stat::N | Stat::L => {
            let spec = per_letter(&args.m, q_text()?)?;
            let value = if args.stat == Stat::N { counter.count_n(&spec)? } else { counter.count_l(&spec)? };
            (value, json!({ "m": spec.m(), "q": spec.q() }))
        }
        Stat::W if args.definition == DefinitionArg::PerLetter => {
            let spec = per_letter(&args.m, q_text()?)?;
            (counter.count_w_per_letter(&spec)?, json!({ "m": spec.m(), "q": spec.q() }))
        }
        Stat::W | Stat::Q => {
            let m = parse_scalar::<usize>(&args.m, "m")?;
            let q = parse_scalar::<i64>(q_text()?, "q")?;
            let value = if args.stat == Stat::W { counter.count_w_whole(q, m)? } else { counter.count_q(q, m)? };
            (value, json!({ "m": m, "q": q }))
        }
        Stat::Z => {
            if args.letter == 0 {
                return Err(CliError::invalid("--letter is 1-based"));
            }
            let m = parse_scalar::<usize>(&args.m, "m")?;
            let q = parse_scalar::<usize>(q_text()?, "q")?;
            (counter.count_z_for_letter(args.letter - 1, q, m)?, json!({ "letter": args.letter, "m": m, "q": q }))
        }
        Stat::T => {
            let r = args.r.ok_or_else(|| CliError::usage("--r is required for T"))?;
            (counter.count_t(r), json!({ "r": r }))
        }
    };
    let total = counter.total_arrangements();
    let probability = ratio(&value, &total);
    let rounding = Rounding::from_args(&args.output, Rounding::DEFAULT);
    let stat = format!("{:?}", args.stat);
    Ok(Report {
        json: json!({
            "command": "count",
            "stat": stat,
            "counts": counter.composition().counts(),
            "parameters": params,
            "count": value.to_string(),
            "total": total.to_string(),
            "probability": rounding.json(&probability),
        }),
        columns: vec!["stat", "count", "total", "probability_exact", "probability_decimal"],
        rows: vec![vec![
            stat,
            value.to_string(),
            total.to_string(),
            longrun_core::combinatorics::format_exact(&probability),
            rounding.render(&probability),
        ]],
        plot: None,
    })
}

pub fn distribution(args: &DistArgs, cumulative: bool) -> Result<Report, CliError> {
    let counter = counter(parse_counts(&args.composition.counts)?)?;
    let def = definition(args.definition, args.letter)?;
    let table = pmf_table(&counter, def, args.m)?;
    let rounding = Rounding::from_args(&args.output, Rounding::DEFAULT);
    let series: Vec<(usize, &BigRational)> = table
        .rows
        .iter()
        .map(|row| (row.q, if cumulative { row.cdf.as_ratio() } else { row.pmf.as_ratio() }))
        .collect();
    let (def_name, letter) = definition_json(def);
    let command = if cumulative { "cdf" } else { "pmf" };
    Ok(Report {
        json: json!({
            "command": command,
            "counts": counter.composition().counts(),
            "definition": def_name,
            "letter": letter,
            "m": args.m,
            "support_max": table.support_max,
            "rows": series.iter().map(|(q, p)| json!({ "q": q, "probability": rounding.json(p) })).collect::<Vec<_>>(),
        }),
        columns: vec!["q", "probability_exact", "probability_decimal"],
        rows: series
            .iter()
            .map(|(q, p)| vec![q.to_string(), longrun_core::combinatorics::format_exact(p), rounding.render(p)])
            .collect(),
        plot: Some(series.iter().map(|(q, p)| (*q, rounding.render(p))).collect()),
    })
}

fn moment_report(
    command: &str,
    counts: &[usize],
    def: Definition,
    summaries: &[MomentSummary],
    rounding: Rounding,
) -> Report {
    let (def_name, letter) = definition_json(def);
    let exact = longrun_core::combinatorics::format_exact;
    let rows = summaries
        .iter()
        .map(|s| {
            vec![
                s.m.to_string(),
                exact(&s.mean),
                rounding.render(&s.mean),
                exact(&s.second_moment),
                rounding.render(&s.second_moment),
                exact(&s.variance),
                rounding.render(&s.variance),
            ]
        })
        .collect();
    Report {
        json: json!({
            "command": command,
            "counts": counts,
            "definition": def_name,
            "letter": letter,
            "rows": summaries.iter().map(|s| json!({
                "m": s.m,
                "mean": rounding.json(&s.mean),
                "second_moment": rounding.json(&s.second_moment),
                "variance": rounding.json(&s.variance),
            })).collect::<Vec<_>>(),
        }),
        columns: vec![
            "m",
            "mean_exact",
            "mean_decimal",
            "second_moment_exact",
            "second_moment_decimal",
            "variance_exact",
            "variance_decimal",
        ],
        rows,
        plot: None,
    }
}

pub fn moments_command(args: &DistArgs) -> Result<Report, CliError> {
    let counter = counter(parse_counts(&args.composition.counts)?)?;
    let def = definition(args.definition, args.letter)?;
    let summary = moments(&pmf_table(&counter, def, args.m)?);
    Ok(moment_report(
        "moments",
        counter.composition().counts(),
        def,
        &[summary],
        Rounding::from_args(&args.output, Rounding::DEFAULT),
    ))
}

pub fn table(args: &TableArgs) -> Result<Report, CliError> {
    let counter = counter(parse_counts(&args.composition.counts)?)?;
    let def = definition(args.definition, args.letter)?;
    let summaries = narrowing_report(&counter, def, args.m_max)?;
    let rounding = Rounding::from_args(&args.output, Rounding::Fixed(3));
    Ok(moment_report("table", counter.composition().counts(), def, &summaries, rounding))
}

pub fn pvalue(args: &PvalueArgs) -> Result<Report, CliError> {
    let dist = &args.dist;
    let counter = counter(parse_counts(&dist.composition.counts)?)?;
    let def = definition(dist.definition, dist.letter)?;
    let alpha = if args.alpha == "1/20" { default_alpha() } else { parse_rational(&args.alpha)? };
    if alpha < BigRational::zero() || alpha > BigRational::one() {
        return Err(CliError::invalid("--alpha must lie in [0, 1]"));
    }
    let result = p_value_at_least(&counter, def, dist.m, args.q, &alpha)?;
    let rounding = Rounding::from_args(&dist.output, Rounding::DEFAULT);
    let exact = longrun_core::combinatorics::format_exact;
    let p = result.p_value.as_ratio();
    let (def_name, letter) = definition_json(def);
    Ok(Report {
        json: json!({
            "command": "pvalue",
            "counts": counter.composition().counts(),
            "definition": def_name,
            "letter": letter,
            "m": dist.m,
            "statistic": result.statistic_name,
            "observed_q": result.observed_q,
            "p_exact": exact(p),
            "p_decimal": rounding.render(p),
            "alpha": rounding.json(&result.alpha),
            "reject": result.reject,
        }),
        columns: vec!["statistic", "observed_q", "p_exact", "p_decimal", "alpha", "reject"],
        rows: vec![vec![
            result.statistic_name.clone(),
            result.observed_q.to_string(),
            exact(p),
            rounding.render(p),
            exact(&result.alpha),
            result.reject.to_string(),
        ]],
        plot: None,
    })
}

/// The report, plus whether every identity held.
pub fn verify(args: &VerifyArgs) -> Result<(Report, bool), CliError> {
    let defaults = VerifyConfig::default();
    let config = VerifyConfig {
        max_total: args.max_total,
        max_k: args.max_k,
        max_order: args.max_order,
        cap: args.cap.unwrap_or(defaults.cap),
    };
    let reports = run_suite(&config)?;
    let all = reports.iter().all(|r| r.passed());
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.name.to_string(),
                r.checks.to_string(),
                r.failures.to_string(),
                r.passed().to_string(),
                r.detail.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let json = json!({
        "command": "verify",
        "max_total": config.max_total,
        "max_k": config.max_k,
        "max_order": config.max_order,
        "cap": config.cap,
        "passed": all,
        "identities": reports.iter().map(|r| json!({
            "name": r.name,
            "checks": r.checks,
            "failures": r.failures,
            "passed": r.passed(),
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    Ok((Report { json, columns: vec!["identity", "checks", "failures", "passed", "detail"], rows, plot: None }, all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/20").unwrap(), r(1, 20));
        assert_eq!(parse_rational("0.05").unwrap(), r(1, 20));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("1").unwrap(), r(1, 1));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-0.1").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn count_lists() {
        assert_eq!(parse_counts("10, 7").unwrap().counts(), &[10, 7]);
        assert_eq!(parse_counts("3,0").unwrap_err().code, "absent_letter");
        assert_eq!(parse_counts("3,x").unwrap_err().code, "invalid_argument");
        assert_eq!(parse_scalar::<usize>("1,2", "m").unwrap_err().code, "invalid_arity");
    }
}
