//! Ranking comparison of two score vectors over the same vertices.

use std::fmt::Write as _;

use mag_core::ranking::{depth_for_fraction, rbo, solve_persistence, to_ranking, RboOptions, TieMode};

use crate::scores::format_score;
use crate::{Error, Result};

/// How RBO is parameterised: `weight` of the total goes to the top
/// `depth_fraction` of the ranking (or the top `depth` positions if set).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RboSettings {
    pub weight: f64,
    pub depth_fraction: f64,
    pub depth: Option<usize>,
    pub ties: TieMode,
    pub truncate: Option<usize>,
}

impl Default for RboSettings {
    fn default() -> Self {
        RboSettings {
            weight: 0.85,
            depth_fraction: 0.10,
            depth: None,
            ties: TieMode::Identifier,
            truncate: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub len: usize,
    pub depth: usize,
    pub persistence: f64,
    pub rbo: f64,
    pub rbd: f64,
    /// Rankings, best first.
    pub order_a: Vec<usize>,
    pub order_b: Vec<usize>,
}

pub fn compare_scores(a: &[f64], b: &[f64], settings: &RboSettings) -> Result<Comparison> {
    if a.len() != b.len() {
        return Err(Error::Data(format!(
            "score vectors have {} and {} entries",
            a.len(),
            b.len()
        )));
    }
    let len = a.len();
    let depth = settings
        .depth
        .unwrap_or_else(|| depth_for_fraction(settings.depth_fraction, len))
        .max(1);
    let persistence = solve_persistence(settings.weight, depth)?;
    let (ra, rb) = (to_ranking(a), to_ranking(b));
    let options = RboOptions {
        ties: settings.ties,
        truncate: settings.truncate,
    };
    let value = rbo(&ra, &rb, persistence, options)?;
    Ok(Comparison {
        len,
        depth,
        persistence,
        rbo: value,
        rbd: 1.0 - value,
        order_a: ra.items().to_vec(),
        order_b: rb.items().to_vec(),
    })
}

/// Text report with the `top` leading positions of both rankings.
pub fn render(cmp: &Comparison, names: &[String], a: &[f64], b: &[f64], top: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices     {}", cmp.len);
    let _ = writeln!(out, "depth        {}", cmp.depth);
    let _ = writeln!(out, "persistence  {}", format_score(cmp.persistence));
    let _ = writeln!(out, "rbo          {}", format_score(cmp.rbo));
    let _ = writeln!(out, "rbd          {}", format_score(cmp.rbd));
    let top = top.min(cmp.len);
    if top == 0 {
        return out;
    }
    let mut position_b = vec![0usize; cmp.len];
    for (k, &x) in cmp.order_b.iter().enumerate() {
        position_b[x] = k + 1;
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{:>5}  {:<20} {:>14}  {:<20} {:>14}  {:>7}", "rank", "first", "score", "second", "score", "moved");
    for k in 0..top {
        let (x, y) = (cmp.order_a[k], cmp.order_b[k]);
        let moved = position_b[x] as i64 - (k as i64 + 1);
        let _ = writeln!(
            out,
            "{:>5}  {:<20} {:>14}  {:<20} {:>14}  {:>+7}",
            k + 1,
            names[x],
            format_score(a[x]),
            names[y],
            format_score(b[y]),
            moved
        );
    }
    out
}
