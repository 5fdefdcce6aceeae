//! Tables of `α_u` and their JSON form, which doubles as an on-disk cache.

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::expr::{self, Mode};
use crate::nt;
use crate::structure::AlphaRecord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub u: u32,
    pub f: u64,
    #[serde(rename = "Q")]
    pub q: Vec<u64>,
    pub excess: u64,
    pub alpha_cnf: String,
    pub alpha_p: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesFile {
    pub p: u32,
    pub rows: Vec<TableRow>,
}

/// `α_u` written as `Σ_{r ∈ Q(f(u))} χ_r` in base-`p` notation followed by the
/// excess, e.g. `7^w+7+3`.
pub fn alpha_sum_form(ctx: &Context, rec: &AlphaRecord) -> Result<String> {
    let mut parts = Vec::new();
    for &r in &rec.q {
        let (u, n) = nt::factor_u64(r)[0];
        parts.push(ctx.chi_prime_power(u as u32, n)?.to_p_expansion_string(ctx.p()));
    }
    if rec.excess > 0 || parts.is_empty() {
        parts.push(rec.excess.to_string());
    }
    Ok(parts.join("+"))
}

impl TableRow {
    pub fn from_record(ctx: &Context, rec: &AlphaRecord) -> Result<Self> {
        Ok(TableRow {
            u: rec.u,
            f: rec.f,
            q: rec.q.clone(),
            excess: rec.excess,
            alpha_cnf: rec.alpha.to_ordinal(ctx.p()).to_cnf_string(),
            alpha_p: alpha_sum_form(ctx, rec)?,
        })
    }

    /// Reads the row back, checking that both renderings of `α_u` agree.
    pub fn to_record(&self, ctx: &Context) -> Result<AlphaRecord> {
        let cnf = expr::parse(&self.alpha_cnf, Mode::Ordinal, ctx)?;
        let sum = expr::parse(&self.alpha_p, Mode::Ordinal, ctx)?;
        if cnf != sum {
            return Err(Error::Malformed(format!("row u={}: alpha_cnf and alpha_p differ", self.u)));
        }
        Ok(AlphaRecord {
            u: self.u,
            f: self.f,
            q: self.q.clone(),
            excess: self.excess,
            alpha: ctx.ordinal_to_element(&cnf),
        })
    }
}

/// One row per prime `u <= u_max` with `u != p`, in increasing `u`.
pub fn generate(ctx: &Context, u_max: u32) -> Result<TablesFile> {
    let rows = nt::primes_up_to(u_max)
        .into_iter()
        .filter(|&u| u != ctx.p())
        .map(|u| TableRow::from_record(ctx, &ctx.alpha_u(u)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(TablesFile { p: ctx.p(), rows })
}

impl TablesFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("tables file: {e}")))
    }

    /// Seeds `ctx` with every row, smallest `u` first so that each row's
    /// check can use the rows below it.
    pub fn seed(&self, ctx: &Context) -> Result<()> {
        if self.p != ctx.p() {
            return Err(Error::Malformed(format!("tables file is for p = {}, not {}", self.p, ctx.p())));
        }
        let mut rows: Vec<&TableRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| r.u);
        for row in rows {
            ctx.seed_alpha(row.to_record(ctx)?)?;
        }
        Ok(())
    }

    pub fn render_text(&self) -> String {
        let header = ["u", "f(u)", "Q(f(u))", "excess", "alpha_u", "cnf"];
        let mut lines: Vec<[String; 6]> = vec![header.map(String::from)];
        for r in &self.rows {
            let q: Vec<String> = r.q.iter().map(u64::to_string).collect();
            lines.push([
                r.u.to_string(),
                r.f.to_string(),
                format!("{{{}}}", q.join(",")),
                r.excess.to_string(),
                r.alpha_p.clone(),
                r.alpha_cnf.clone(),
            ]);
        }
        let widths: Vec<usize> = (0..6).map(|i| lines.iter().map(|l| l[i].len()).max().unwrap()).collect();
        let mut out = format!("alpha_u in On_{}\n", self.p);
        for l in &lines {
            let cells: Vec<String> = l.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
