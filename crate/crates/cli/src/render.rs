//! Text, CSV and JSON renderings. All three share one column order.

use serde::Serialize;

use qconv::polymat::{DistanceResult, TriState};
use qconv::report::{MemberOutcome, Status};
use qconv::weight::INFINITE;

use crate::Format;

pub const COLUMNS: [&str; 14] = [
    "family",
    "member",
    "q",
    "n",
    "k",
    "m",
    "delta",
    "df_lower",
    "df_upper",
    "df_exact",
    "pure",
    "singleton_bound",
    "optimal",
    "status",
];

#[derive(Serialize)]
struct Row {
    family: String,
    member: String,
    q: Option<u32>,
    n: Option<usize>,
    k: Option<usize>,
    m: Option<usize>,
    delta: Option<usize>,
    df_lower: Option<usize>,
    df_upper: Option<usize>,
    df_exact: Option<bool>,
    pure: Option<&'static str>,
    singleton_bound: Option<usize>,
    optimal: Option<bool>,
    status: Status,
}

fn tri(t: TriState) -> &'static str {
    match t {
        TriState::Yes => "yes",
        TriState::No => "no",
        TriState::Unknown => "unknown",
    }
}

fn row(o: &MemberOutcome) -> Row {
    let c = o.code.as_ref();
    Row {
        family: o.report.family.clone(),
        member: o.report.member.clone(),
        q: c.map(|c| c.q),
        n: c.map(|c| c.n),
        k: c.map(|c| c.k),
        m: c.map(|c| c.m),
        delta: c.map(|c| c.delta),
        df_lower: c.map(|c| c.df.lower),
        df_upper: c.and_then(|c| c.df.upper),
        df_exact: c.map(|c| c.df.exact),
        pure: c.map(|c| tri(c.pure)),
        singleton_bound: c.map(|c| c.singleton_bound),
        optimal: c.map(|c| c.optimal),
        status: o.report.status(),
    }
}

fn cells(r: &Row) -> Vec<String> {
    fn opt<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map_or("-".into(), |x| x.to_string())
    }
    vec![
        r.family.clone(),
        r.member.clone(),
        opt(&r.q),
        opt(&r.n),
        opt(&r.k),
        opt(&r.m),
        opt(&r.delta),
        opt(&r.df_lower),
        opt(&r.df_upper),
        opt(&r.df_exact),
        opt(&r.pure),
        opt(&r.singleton_bound),
        opt(&r.optimal),
        r.status.to_string(),
    ]
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn members(format: Format, outcomes: &[MemberOutcome]) -> anyhow::Result<String> {
    match format {
        Format::Json => {
            let codes: Vec<_> = outcomes.iter().filter_map(|o| o.code.as_ref()).collect();
            let reports: Vec<_> = outcomes.iter().map(|o| &o.report).collect();
            Ok(serde_json::to_string_pretty(&serde_json::json!({ "codes": codes, "reports": reports }))? + "\n")
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(COLUMNS)?;
            for o in outcomes {
                w.serialize(row(o))?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = outcomes.iter().map(|o| cells(&row(o))).collect();
            let mut out = table(&COLUMNS, &rows);
            if outcomes.is_empty() {
                out += "(no members)\n";
            }
            for o in outcomes {
                for c in o.report.claims.iter().filter(|c| c.status != Status::Pass) {
                    out += &format!("{} {}: {} ({})\n", o.report.member, c.id, c.status, c.details);
                }
            }
            Ok(out)
        }
    }
}

pub fn bound(format: Format, n: usize, k: usize, delta: usize, b: usize) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => format!("{b}\n"),
        Format::Json => serde_json::json!({ "n": n, "k": k, "delta": delta, "singleton_bound": b }).to_string() + "\n",
        Format::Csv => format!("n,k,delta,singleton_bound\n{n},{k},{delta},{b}\n"),
    })
}

fn finite(v: usize) -> String {
    if v == INFINITE {
        "inf".into()
    } else {
        v.to_string()
    }
}

pub fn distances(format: Format, free: &DistanceResult, dual: &DistanceResult) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({ "free": free, "dual": dual }))? + "\n",
        Format::Csv => {
            let mut out = String::from("code,df_lower,df_upper,exact\n");
            for (name, d) in [("free", free), ("dual", dual)] {
                out += &format!("{name},{},{},{}\n", finite(d.df_lower), finite(d.df_upper), d.exact);
            }
            out
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = [("free", free), ("dual", dual)]
                .iter()
                .map(|(name, d)| vec![name.to_string(), finite(d.df_lower), finite(d.df_upper), d.exact.to_string()])
                .collect();
            table(&["code", "df_lower", "df_upper", "exact"], &rows)
        }
    })
}
