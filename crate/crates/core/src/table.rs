//! Comparison rows: [n, k, d], the classical bounds and 1 + p(q - d).

use std::sync::Arc;
use std::time::Instant;

use crate::ascurve::{count_points, genus, max_points};
use crate::bounds::{d_lower_bound, hasse_weil, new_bound, serre, BoundRow};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::powcode::{PowerTraceCode, SearchOptions, Strategy};

#[derive(Clone, Copy, Debug)]
pub struct TableOptions {
    /// Strategy and limits for the minimum-distance search.
    pub search: SearchOptions,
    /// Also maximize N_f over all curves.
    pub max_points: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            search: SearchOptions::default(),
            max_points: true,
        }
    }
}

fn other(strategy: Strategy) -> Strategy {
    match strategy {
        Strategy::Gray => Strategy::Orbit,
        Strategy::Orbit => Strategy::Gray,
    }
}

/// Computes one row. The point maximum is searched with the other strategy
/// when that one is within the work limit, so d and N_max come from
/// independent enumerations.
pub fn compute_row(p: u32, m: u32, r: u32, opts: &TableOptions) -> Result<BoundRow> {
    let start = Instant::now();
    let ctx = Arc::new(FieldCtx::new(p, m)?);
    let code = PowerTraceCode::new(ctx.clone(), r)?;
    let q = ctx.q() as u64;
    let g = genus(p, r)?;
    let mut row = BoundRow {
        p: p as u64,
        m,
        r,
        q,
        n: code.len() as u64,
        k: code.dimension(),
        d: None,
        genus: g,
        hasse_weil: hasse_weil(q, g),
        serre: serre(q, g),
        our_bound: None,
        d_lower: d_lower_bound(p as u64, m, r),
        max_points: None,
        witness: None,
        curves_checked: 0,
        hasse_weil_violations: 0,
        seconds: 0.0,
        skipped: None,
    };

    let md = match code.min_distance(&opts.search) {
        Ok(md) => md,
        Err(Error::Infeasible { estimate, limit }) => {
            row.skipped = Some(format!("work {estimate:.2e} > limit {limit:.2e}"));
            row.seconds = start.elapsed().as_secs_f64();
            return Ok(row);
        }
        Err(e) => return Err(e),
    };
    let ours = new_bound(p as u64, m, md.d)?;
    row.d = Some(md.d);
    row.our_bound = Some(ours);
    row.curves_checked += md.evaluated;
    row.hasse_weil_violations += md.hasse_weil_violations;

    // the witness attains the bound by direct point counting
    let n_witness = count_points(&ctx, &md.witness)?;
    if n_witness != ours {
        return Err(Error::Invariant(format!(
            "{p}^{m} r={r}: witness {} has {n_witness} points, expected {ours}",
            md.witness
        )));
    }
    row.witness = Some(md.witness);

    if opts.max_points {
        let mut search = opts.search;
        let alt = other(search.strategy);
        if code.work_estimate(alt) <= search.work_limit {
            search.strategy = alt;
        }
        let mp = max_points(&ctx, r, &search)?;
        row.max_points = Some(mp.n_max);
        row.curves_checked += mp.evaluated;
        row.hasse_weil_violations += mp.hasse_weil_violations;
    }
    row.seconds = start.elapsed().as_secs_f64();
    Ok(row)
}

pub const CSV_HEADER: [&str; 11] = [
    "p",
    "m",
    "q",
    "n",
    "k",
    "d",
    "hasse_weil",
    "serre",
    "our_bound",
    "tight",
    "seconds",
];

/// CSV fields in [`CSV_HEADER`] order.
pub fn csv_fields(row: &BoundRow) -> Vec<String> {
    let d = match (&row.d, &row.skipped) {
        (Some(d), _) => d.to_string(),
        (None, Some(reason)) => format!("skipped({reason})"),
        (None, None) => String::new(),
    };
    vec![
        row.p.to_string(),
        row.m.to_string(),
        row.q.to_string(),
        row.n.to_string(),
        row.k.to_string(),
        d,
        row.hasse_weil.to_string(),
        row.serre.to_string(),
        row.our_bound.map(|b| b.to_string()).unwrap_or_default(),
        match row.tight() {
            Some(true) => "y".into(),
            Some(false) => "n".into(),
            None => String::new(),
        },
        format!("{:.3}", row.seconds),
    ]
}

pub fn markdown_header(m_even: Option<bool>) -> String {
    let classical = match m_even {
        Some(true) => "Hasse-Weil bound",
        Some(false) => "Serre bound",
        None => "Hasse-Weil / Serre bound",
    };
    format!(
        "| q | Parameters [n,k,d] | {classical} | Our bound | tight | seconds |\n|---|---|---|---|---|---|"
    )
}

pub fn markdown_row(row: &BoundRow) -> String {
    let d = match (&row.d, &row.skipped) {
        (Some(d), _) => d.to_string(),
        (None, Some(reason)) => format!("skipped({reason})"),
        (None, None) => "?".into(),
    };
    format!(
        "| {}^{} | [{},{},{}] | {} | {} | {} | {:.3} |",
        row.p,
        row.m,
        row.n,
        row.k,
        d,
        row.classical(),
        row.our_bound.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
        match row.tight() {
            Some(true) => "y",
            Some(false) => "n",
            None => "-",
        },
        row.seconds
    )
}
