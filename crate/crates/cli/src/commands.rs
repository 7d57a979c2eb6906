use std::io::{self, Write};

use serde::Serialize;
use serde_json::json;

use commgrowth::arith::growth_series_rank1;
use commgrowth::chevalley::{brute_force_order, GroupOrder, MatrixFamily};
use commgrowth::comgraph::sample::{metric_suite, random_transfer_cases, TransferCase};
use commgrowth::comgraph::{
    check_transfer_inequality, enumerate_ball, BallGuard, RationalCyclic, RationalLattice,
};
use commgrowth::parahoric::{
    check_two_k_plus_three, count_admissible_cocharacters, lambda_estimate, maximal_lattice_bound,
    paper_lambda_bound, per_prime_bound,
};
use commgrowth::rootsys::build;
use commgrowth::{BoundReport, Error};

use crate::{Command, Family, Suite, TableFormat};

pub enum Outcome {
    AllHold,
    SomeFailed,
}

impl Outcome {
    fn from_reports<'a>(reports: impl IntoIterator<Item = &'a BoundReport>) -> Self {
        if reports.into_iter().all(|r| r.holds) {
            Outcome::AllHold
        } else {
            Outcome::SomeFailed
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Lib(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        RunError::Io(e.into())
    }
}

type RunResult = Result<Outcome, RunError>;

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

pub fn run(command: &Command, out: &mut dyn Write) -> RunResult {
    match command {
        Command::Rank1 { n, format } => rank1(*n, format, out),
        Command::Ball {
            family,
            dim,
            n,
            json,
        } => ball(*family, *dim, *n, *json, out),
        Command::Rootsys { kind, json } => {
            let rs = build(kind)?;
            if *json {
                write_json(out, &rs)?;
            } else {
                writeln!(out, "label {}", rs.label())?;
                writeln!(out, "rank {}", rs.rank())?;
                writeln!(out, "N {}", rs.num_positive_roots())?;
                writeln!(out, "d {}", rs.dimension())?;
                writeln!(out, "degrees {:?}", rs.degrees)?;
                for r in &rs.positive_roots {
                    writeln!(out, "root {r:?}")?;
                }
            }
            Ok(Outcome::AllHold)
        }
        Command::Order {
            kind,
            p,
            k,
            brute_force,
            json,
        } => order(kind, *p, *k, *brute_force, *json, out),
        Command::Parahoric {
            kind,
            k,
            p,
            m,
            json,
        } => parahoric(kind, *k, *p, *m, *json, out),
        Command::Check(args) => match &args.suite {
            Suite::Metric {
                samples,
                seed,
                json,
            } => emit_reports(&metric_suite(*samples, *seed)?, *json, out),
            Suite::Transfer {
                cases,
                budget,
                seed,
                json,
            } => {
                let guard = BallGuard::default();
                let reports = random_transfer_cases(*cases, *budget, *seed)?
                    .iter()
                    .map(|case| match case {
                        TransferCase::Cyclic(a, b, n) => {
                            check_transfer_inequality(a, b, *n, &guard)
                        }
                        TransferCase::Lattice(a, b, n) => {
                            check_transfer_inequality(a, b, *n, &guard)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                emit_reports(&reports, *json, out)
            }
        },
    }
}

fn emit_reports(reports: &[BoundReport], json: bool, out: &mut dyn Write) -> RunResult {
    if json {
        write_json(out, &reports)?;
    } else {
        for r in reports {
            writeln!(out, "{r}")?;
        }
    }
    Ok(Outcome::from_reports(reports))
}

fn rank1(n: usize, format: &TableFormat, out: &mut dyn Write) -> RunResult {
    let series = growth_series_rank1(n)?;
    if format.json {
        write_json(out, &series)?;
    } else if format.csv {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut *out);
        w.write_record(["k", "c_k", "C_k"])?;
        for k in 1..=n {
            w.write_record(&[
                k.to_string(),
                series.term(k).to_string(),
                series.total(k).to_string(),
            ])?;
        }
        w.flush()?;
    } else {
        for k in 1..=n {
            writeln!(out, "{k}\t{}\t{}", series.term(k), series.total(k))?;
        }
    }
    Ok(Outcome::AllHold)
}

fn ball(family: Family, dim: usize, n: u64, json: bool, out: &mut dyn Write) -> RunResult {
    match family {
        Family::Cyclic => {
            if dim != 1 {
                return Err(Error::Domain("the cyclic family lives in dimension 1".into()).into());
            }
            list(&enumerate_ball(&RationalCyclic::INTEGERS, n)?, json, out)
        }
        Family::Lattice => {
            if dim == 0 {
                return Err(Error::Domain("dimension must be positive".into()).into());
            }
            list(
                &enumerate_ball(&RationalLattice::standard(dim), n)?,
                json,
                out,
            )
        }
    }
}

fn list<T: Serialize + std::fmt::Display>(
    items: &[T],
    json: bool,
    out: &mut dyn Write,
) -> RunResult {
    if json {
        write_json(out, &items)?;
    } else {
        for item in items {
            writeln!(out, "{item}")?;
        }
    }
    Ok(Outcome::AllHold)
}

fn order(kind: &str, p: u64, k: u32, brute: bool, json: bool, out: &mut dyn Write) -> RunResult {
    let rs = build(kind)?;
    let order = GroupOrder::over_prime_power(&rs, p, k)?;
    let mut outcome = Outcome::AllHold;
    let counted = if brute {
        let family = MatrixFamily::for_type(rs.kind).ok_or_else(|| {
            Error::Domain(format!("no brute-force matrix model for {}", rs.label()))
        })?;
        let modulus = p
            .checked_pow(k)
            .ok_or_else(|| Error::Resource("modulus p^k exceeds 64 bits".into()))?;
        let c = brute_force_order(family, modulus)?;
        if order.value != c.into() {
            outcome = Outcome::SomeFailed;
        }
        Some(c)
    } else {
        None
    };
    if json {
        let mut v = serde_json::to_value(&order).map_err(io::Error::from)?;
        if let Some(c) = counted {
            v["brute_force"] = json!(c.to_string());
        }
        write_json(out, &v)?;
    } else {
        writeln!(out, "{}", order.value)?;
        if let Some(c) = counted {
            writeln!(out, "brute_force {c}")?;
        }
    }
    Ok(outcome)
}

fn parahoric(
    kind: &str,
    k: u32,
    p: Option<u64>,
    m: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> RunResult {
    let rs = build(kind)?;
    let count = count_admissible_cocharacters(&rs, k as u64 + 1)?;
    let paper_bound = lambda_estimate(&rs, k as u64).to_string();

    let mut reports = Vec::new();
    if count.exact.is_some() {
        reports.push(paper_lambda_bound(&rs, k as u64)?);
    }
    let mut per_prime = None;
    if let Some(p) = p {
        let r = per_prime_bound(&rs, p, k)?;
        per_prime = r.lhs_integer().map(|v| v.to_string());
        reports.push(r);
        if k >= 1 {
            reports.push(check_two_k_plus_three(p, k)?);
        }
    }
    let m_bound = m
        .map(|m| maximal_lattice_bound(&rs, m))
        .transpose()?
        .map(|v| v.to_string());

    if json {
        write_json(
            out,
            &json!({
                "exact": count.exact.map(|e| e.to_string()),
                "box_bound": count.box_bound.to_string(),
                "paper_bound": paper_bound,
                "per_prime": per_prime,
                "m_bound": m_bound,
            }),
        )?;
    } else {
        match count.exact {
            Some(e) => writeln!(out, "exact {e}")?,
            None => writeln!(out, "exact unavailable")?,
        }
        writeln!(out, "box_bound {}", count.box_bound)?;
        writeln!(out, "paper_bound {paper_bound}")?;
        if let Some(v) = &per_prime {
            writeln!(out, "per_prime {v}")?;
        }
        if let Some(v) = &m_bound {
            writeln!(out, "m_bound {v}")?;
        }
        for r in &reports {
            writeln!(out, "{r}")?;
        }
    }
    Ok(Outcome::from_reports(&reports))
}
