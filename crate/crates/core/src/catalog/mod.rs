//! Published rule families and the generator notation used to describe them.
//!
//! Tables are stored as symbolic recipes (generator rows plus constant
//! expressions) and instantiated at whatever precision the caller asks for.
//!
//! Generator rows use a compact notation:
//!
//! * `a,b,0` lists the coordinates; names refer to table constants and
//!   decimals are taken literally. A leading `-` negates an entry.
//! * `±x` gives one coordinate an independent sign.
//! * `±(x,y)` flips the signs of a group together.
//! * `(x,y,z)_S` includes every distinct permutation of the group.
//! * `x×k` repeats an entry `k` times.
//!
//! Signs are applied before permutations. A sign group that spans the
//! whole point becomes [`GeneratorPattern::global_negate`].

mod expr;
pub(crate) mod simplex;
mod tables;

use std::fmt;

use crate::error::{CubatureError, Result};
use crate::moments::Region;
use crate::real::Real;
use crate::rule::CubatureRule;

pub use simplex::{simplex_rule, SimplexVariant};

/// Evaluate an expression in the syntax of the table recipes (`+ - * / ^`,
/// `sqrt`, `pi`, decimal literals) at the precision of `ctx`.
pub fn eval_expr<T: Real>(ctx: &T::Ctx, src: &str) -> Result<T> {
    expr::eval(ctx, &[], src).map_err(CubatureError::InvalidInput)
}
use tables::Table;

/// Points generated from one base point by sign changes and permutations.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorPattern<T = f64> {
    pub base: Vec<T>,
    /// Groups of positions whose signs flip together; each group is
    /// independent of the others.
    pub sign_groups: Vec<Vec<usize>>,
    /// Groups of positions whose values are permuted in every distinct way.
    pub perm_groups: Vec<Vec<usize>>,
    pub global_negate: bool,
    pub weight: T,
}

impl<T: Real> GeneratorPattern<T> {
    /// A single point with no closures.
    pub fn point(base: Vec<T>, weight: T) -> Self {
        GeneratorPattern { base, sign_groups: vec![], perm_groups: vec![], global_negate: false, weight }
    }

    /// `(±v, 0, …, 0)_S`: the 2n axis points at distance `v`.
    pub fn axes(n: usize, v: T, weight: T) -> Self {
        let ctx = v.ctx();
        let mut base = vec![T::zero(&ctx); n];
        base[0] = v;
        GeneratorPattern { base, sign_groups: vec![vec![0]], perm_groups: vec![(0..n).collect()], global_negate: false, weight }
    }
}

/// Expand a pattern into its distinct points, each carrying the pattern's
/// weight.
pub fn expand_generator<T: Real>(pattern: &GeneratorPattern<T>) -> Vec<(Vec<T>, T)> {
    let mut points: Vec<Vec<T>> = Vec::new();
    let groups = &pattern.sign_groups;
    for mask in 0u64..(1u64 << groups.len()) {
        let mut p = pattern.base.clone();
        for (g, positions) in groups.iter().enumerate() {
            if mask >> g & 1 == 1 {
                for &i in positions {
                    p[i] = -p[i].clone();
                }
            }
        }
        let p: Vec<T> = p.into_iter().map(T::canonical_zero).collect();
        let mut stage = vec![p];
        for positions in &pattern.perm_groups {
            let mut next = Vec::new();
            for q in &stage {
                let vals: Vec<T> = positions.iter().map(|&i| q[i].clone()).collect();
                for perm in distinct_permutations(&vals) {
                    let mut r = q.clone();
                    for (&i, v) in positions.iter().zip(perm) {
                        r[i] = v;
                    }
                    next.push(r);
                }
            }
            stage = next;
        }
        points.extend(stage);
    }
    if pattern.global_negate {
        let neg: Vec<Vec<T>> = points
            .iter()
            .map(|p| p.iter().map(|v| (-v.clone()).canonical_zero()).collect())
            .collect();
        points.extend(neg);
    }
    let mut out: Vec<Vec<T>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.into_iter().map(|p| (p, pattern.weight.clone())).collect()
}

/// Distinct orderings of a multiset, in lexicographic order of first
/// appearance classes.
fn distinct_permutations<T: Real>(vals: &[T]) -> Vec<Vec<T>> {
    let mut classes: Vec<T> = Vec::new();
    let mut ids: Vec<usize> = vals
        .iter()
        .map(|v| match classes.iter().position(|c| c == v) {
            Some(k) => k,
            None => {
                classes.push(v.clone());
                classes.len() - 1
            }
        })
        .collect();
    ids.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(ids.iter().map(|&k| classes[k].clone()).collect());
        // Next lexicographic permutation.
        let Some(i) = (1..ids.len()).rev().find(|&i| ids[i - 1] < ids[i]) else {
            return out;
        };
        let j = (i..ids.len()).rev().find(|&j| ids[j] > ids[i - 1]).unwrap();
        ids.swap(i - 1, j);
        ids[i..].reverse();
    }
}

/// A generator row before constants are substituted.
#[derive(Clone, Debug)]
struct SymbolicRow {
    entries: Vec<(bool, String)>,
    sign_groups: Vec<Vec<usize>>,
    perm_groups: Vec<Vec<usize>>,
    global_negate: bool,
}

fn parse_pattern(src: &str) -> std::result::Result<SymbolicRow, String> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = PatternParser { chars: &chars, pos: 0, row: SymbolicRow { entries: vec![], sign_groups: vec![], perm_groups: vec![], global_negate: false } };
    p.row_items()?;
    if p.pos != chars.len() {
        return Err(format!("unexpected `{}` in pattern `{src}`", chars[p.pos]));
    }
    let mut row = p.row;
    let n = row.entries.len();
    if let Some(k) = row.sign_groups.iter().position(|g| g.len() == n && n > 1) {
        row.sign_groups.remove(k);
        row.global_negate = true;
    }
    Ok(row)
}

struct PatternParser<'a> {
    chars: &'a [char],
    pos: usize,
    row: SymbolicRow,
}

impl PatternParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn row_items(&mut self) -> std::result::Result<(), String> {
        loop {
            self.item()?;
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn item(&mut self) -> std::result::Result<(), String> {
        let signed = if self.peek() == Some('±') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.row.entries.len();
        if self.peek() == Some('(') {
            self.pos += 1;
            self.row_items()?;
            if self.peek() != Some(')') {
                return Err(format!("missing `)` at {}", self.pos));
            }
            self.pos += 1;
            if self.chars[self.pos..].starts_with(&['_', 'S']) {
                self.pos += 2;
                self.row.perm_groups.push((start..self.row.entries.len()).collect());
            }
        } else {
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let tok_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '.' || c == '_') {
                self.pos += 1;
            }
            if tok_start == self.pos {
                return Err(format!("expected an entry at {}", self.pos));
            }
            let tok: String = self.chars[tok_start..self.pos].iter().collect();
            let mut count = 1;
            if self.peek() == Some('×') {
                self.pos += 1;
                let s = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                count = self.chars[s..self.pos].iter().collect::<String>().parse().map_err(|_| "bad repeat count".to_string())?;
                if signed && count != 1 {
                    return Err("a signed entry cannot be repeated".into());
                }
            }
            for _ in 0..count {
                self.row.entries.push((neg, tok.clone()));
            }
        }
        if signed {
            self.row.sign_groups.push((start..self.row.entries.len()).collect());
        }
        Ok(())
    }
}

/// Identifiers of the implemented rule tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    /// 10-point degree-4 rules in 3 dimensions.
    T3_10_4,
    /// 11-point degree-4 rule in 3 dimensions.
    T3_11_4,
    /// 16-point degree-4 rules with a 10-point and a 5-point shell.
    T4_16_4A,
    /// 16-point (15 for the ball) degree-4 rules with 6- and 9-point shells.
    T4_16_4B,
    T5_22_4,
    T6_28_4,
    /// 38-point degree-4 rules with two negative weights.
    T7_38_4,
    T4_23_5,
    T6_44_5,
    T2_10_6,
    T2_11_6,
    T6_127_7,
    T7_183_7,
}

impl TableId {
    pub const ALL: [TableId; 13] = [
        TableId::T3_10_4,
        TableId::T3_11_4,
        TableId::T4_16_4A,
        TableId::T4_16_4B,
        TableId::T5_22_4,
        TableId::T6_28_4,
        TableId::T7_38_4,
        TableId::T4_23_5,
        TableId::T6_44_5,
        TableId::T2_10_6,
        TableId::T2_11_6,
        TableId::T6_127_7,
        TableId::T7_183_7,
    ];

    fn table(self) -> &'static Table {
        match self {
            TableId::T3_10_4 => &tables::T3_10_4,
            TableId::T3_11_4 => &tables::T3_11_4,
            TableId::T4_16_4A => &tables::T4_16_4A,
            TableId::T4_16_4B => &tables::T4_16_4B,
            TableId::T5_22_4 => &tables::T5_22_4,
            TableId::T6_28_4 => &tables::T6_28_4,
            TableId::T7_38_4 => &tables::T7_38_4,
            TableId::T4_23_5 => &tables::T4_23_5,
            TableId::T6_44_5 => &tables::T6_44_5,
            TableId::T2_10_6 => &tables::T2_10_6,
            TableId::T2_11_6 => &tables::T2_11_6,
            TableId::T6_127_7 => &tables::T6_127_7,
            TableId::T7_183_7 => &tables::T7_183_7,
        }
    }

    /// Short name such as `5_22_4` or `4_16_4a`.
    pub fn key(self) -> &'static str {
        match self {
            TableId::T3_10_4 => "3_10_4",
            TableId::T3_11_4 => "3_11_4",
            TableId::T4_16_4A => "4_16_4a",
            TableId::T4_16_4B => "4_16_4b",
            TableId::T5_22_4 => "5_22_4",
            TableId::T6_28_4 => "6_28_4",
            TableId::T7_38_4 => "7_38_4",
            TableId::T4_23_5 => "4_23_5",
            TableId::T6_44_5 => "6_44_5",
            TableId::T2_10_6 => "2_10_6",
            TableId::T2_11_6 => "2_11_6",
            TableId::T6_127_7 => "6_127_7",
            TableId::T7_183_7 => "7_183_7",
        }
    }

    pub fn n(self) -> usize {
        self.table().n
    }

    pub fn degree(self) -> u32 {
        self.table().degree
    }

    /// Whether the constants are exact closed forms rather than printed
    /// decimals.
    pub fn is_closed_form(self) -> bool {
        self.table().closed_form
    }

    /// Relative verification tolerance appropriate to the table's data:
    /// tight for closed forms, looser for printed decimals.
    pub fn verify_tolerance(self) -> f64 {
        if self.is_closed_form() {
            1e-11
        } else {
            1e-9
        }
    }

    pub fn regions(self) -> Vec<Region> {
        self.table().variants.iter().map(|(r, _)| *r).collect()
    }

    /// Shell sizes by increasing radius (`1+10+5`), or `None` for rules
    /// without a clean shell structure.
    pub fn shells(self, region: Region) -> Option<&'static str> {
        Some(match self {
            TableId::T4_16_4A => "1+10+5",
            TableId::T4_16_4B if region == Region::Ball => "0+6+9",
            TableId::T4_16_4B => "1+6+9",
            TableId::T4_23_5 => "1+22",
            TableId::T5_22_4 => "1+6+15",
            TableId::T6_28_4 => "1+27",
            TableId::T6_127_7 => "1+54+72",
            TableId::T7_38_4 => "1+8+8+21",
            TableId::T7_183_7 => "1+56+126",
            TableId::T6_44_5 => "12+32",
            _ => return None,
        })
    }

    fn parameters(self, region: Region) -> Result<&'static [(&'static str, &'static str)]> {
        self.table()
            .variants
            .iter()
            .find(|(r, _)| *r == region)
            .map(|(_, p)| *p)
            .ok_or_else(|| CubatureError::UnpublishedCombination { table: self.key().to_string(), region })
    }

    /// Number of points in the built rule for `region`.
    pub fn point_count(self, region: Region) -> usize {
        expand_table::<f64>(&(), self, region).map(|(p, _)| p.len()).unwrap_or(0)
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

fn evaluate_parameters<T: Real>(ctx: &T::Ctx, table: TableId, region: Region) -> Result<Vec<(String, T)>> {
    let mut vars: Vec<(String, T)> = Vec::new();
    for (name, src) in table.parameters(region)? {
        let v = expr::eval::<T>(ctx, &vars, src)
            .map_err(|e| CubatureError::InvalidInput(format!("table {table} constant {name}: {e}")))?;
        vars.push((name.to_string(), v));
    }
    Ok(vars)
}

/// Generator patterns of a table with its constants substituted.
pub fn paper_patterns<T: Real>(ctx: &T::Ctx, table: TableId, region: Region) -> Result<Vec<GeneratorPattern<T>>> {
    let vars = evaluate_parameters::<T>(ctx, table, region)?;
    let bad = |e: String| CubatureError::InvalidInput(format!("table {table}: {e}"));
    let mut out = Vec::new();
    for (pattern, weight) in table.table().rows {
        let row = parse_pattern(pattern).map_err(bad)?;
        let base = row
            .entries
            .iter()
            .map(|(neg, tok)| {
                let v = expr::eval::<T>(ctx, &vars, tok)?;
                Ok(if *neg { -v } else { v })
            })
            .collect::<std::result::Result<Vec<T>, String>>()
            .map_err(bad)?;
        let weight = expr::eval::<T>(ctx, &vars, weight).map_err(bad)?;
        out.push(GeneratorPattern {
            base,
            sign_groups: row.sign_groups,
            perm_groups: row.perm_groups,
            global_negate: row.global_negate,
            weight,
        });
    }
    Ok(out)
}

/// Build a published rule at the precision of `ctx`. Points whose weight is
/// exactly zero are omitted.
pub fn build_paper_rule<T: Real>(ctx: &T::Ctx, table: TableId, region: Region) -> Result<CubatureRule<T>> {
    let (rows, weights) = expand_table::<T>(ctx, table, region)?;
    let id = format_id(table, region, rows.len());
    Ok(CubatureRule::new(region, table.n(), rows, weights)?.with_degree(table.degree()).with_provenance(id))
}

type PointsAndWeights<T> = (Vec<Vec<T>>, Vec<T>);

fn expand_table<T: Real>(ctx: &T::Ctx, table: TableId, region: Region) -> Result<PointsAndWeights<T>> {
    let n = table.n();
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for pattern in paper_patterns::<T>(ctx, table, region)? {
        if pattern.base.len() != n {
            return Err(CubatureError::InvalidInput(format!("table {table}: row of length {}", pattern.base.len())));
        }
        if pattern.weight.is_zero() {
            continue;
        }
        for (p, w) in expand_generator(&pattern) {
            rows.push(p);
            weights.push(w);
        }
    }
    Ok((rows, weights))
}

pub fn build_paper_rule_f64(table: TableId, region: Region) -> Result<CubatureRule<f64>> {
    build_paper_rule::<f64>(&(), table, region)
}

/// Named closed-form constants of a table (coordinates only), as
/// `(name, expression, value)`. Empty for tables printed as decimals.
pub fn closed_form_parameters<T: Real>(ctx: &T::Ctx, table: TableId, region: Region) -> Result<Vec<(String, String, T)>> {
    if !table.is_closed_form() {
        return Ok(vec![]);
    }
    let vars = evaluate_parameters::<T>(ctx, table, region)?;
    Ok(table
        .parameters(region)?
        .iter()
        .zip(vars)
        .filter(|((name, _), _)| !name.starts_with('_') && !name.starts_with('W'))
        .map(|((name, src), (_, v))| (name.to_string(), src.to_string(), v))
        .collect())
}

/// Canonical catalog identifier, e.g. `s7-183-7`, `e2r2-5-22-4`,
/// `e1r-3-11-4`. The two 16-point families in 4 dimensions carry an `a`/`b`
/// suffix for the E regions.
pub fn catalog_id(table: TableId, region: Region) -> String {
    format_id(table, region, table.point_count(region))
}

fn format_id(table: TableId, region: Region, count: usize) -> String {
    let n = table.n();
    let d = table.degree();
    let suffix = match (table, region) {
        (TableId::T4_16_4A, Region::ExpR2 | Region::ExpR) => "a",
        (TableId::T4_16_4B, Region::ExpR2 | Region::ExpR) => "b",
        _ => "",
    };
    match region {
        Region::Ball => format!("s{n}-{count}-{d}{suffix}"),
        Region::ExpR2 => format!("e2r2-{n}-{count}-{d}{suffix}"),
        Region::ExpR => format!("e1r-{n}-{count}-{d}{suffix}"),
        Region::GaussianProb => format!("g{n}-{count}-{d}{suffix}"),
    }
}

/// One implemented (table, region) rule.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub table: TableId,
    pub region: Region,
    pub n: usize,
    pub points: usize,
    pub degree: u32,
    pub shells: Option<&'static str>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<CubatureRule<f64>> {
        build_paper_rule_f64(self.table, self.region)
    }

    pub fn build_in<T: Real>(&self, ctx: &T::Ctx) -> Result<CubatureRule<T>> {
        build_paper_rule(ctx, self.table, self.region)
    }

    /// Other spellings accepted by [`lookup`]: `e{n}r2-N-d`, `e{n}r-N-d`,
    /// `e{n}-N-d` (ExpR2) and `{tag}-n-N-d` with the region tags.
    fn aliases(&self) -> Vec<String> {
        let (n, count, d) = (self.n, self.points, self.degree);
        let s = match (self.table, self.region) {
            (TableId::T4_16_4A, Region::ExpR2 | Region::ExpR) => "a",
            (TableId::T4_16_4B, Region::ExpR2 | Region::ExpR) => "b",
            _ => "",
        };
        let mut v = vec![format!("{}-{n}-{count}-{d}{s}", self.region.tag())];
        match self.region {
            Region::ExpR2 => {
                v.push(format!("e{n}r2-{count}-{d}{s}"));
                v.push(format!("e{n}-{count}-{d}{s}"));
            }
            Region::ExpR => v.push(format!("e{n}r-{count}-{d}{s}")),
            Region::Ball => v.push(format!("ball-{n}-{count}-{d}{s}")),
            Region::GaussianProb => {}
        }
        v
    }
}

/// Every implemented (table, region) pair, in table order.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for table in TableId::ALL {
        for region in table.regions() {
            out.push(CatalogEntry {
                id: catalog_id(table, region),
                table,
                region,
                n: table.n(),
                points: table.point_count(region),
                degree: table.degree(),
                shells: table.shells(region),
            });
        }
    }
    out
}

/// Find a catalog entry by identifier or alias. An identifier that matches
/// only by dropping the `a`/`b` suffix is accepted when unique.
pub fn lookup(id: &str) -> Result<CatalogEntry> {
    let key = id.trim().to_ascii_lowercase();
    let all = entries();
    if let Some(e) = all.iter().find(|e| e.id == key || e.aliases().contains(&key)) {
        return Ok(e.clone());
    }
    let loose: Vec<&CatalogEntry> = all
        .iter()
        .filter(|e| {
            std::iter::once(e.id.clone())
                .chain(e.aliases())
                .any(|a| a.strip_suffix(['a', 'b']).is_some_and(|s| s == key))
        })
        .collect();
    match loose.as_slice() {
        [one] => Ok((*one).clone()),
        [] => Err(CubatureError::UnknownTable(id.to_string())),
        many => Err(CubatureError::UnknownTable(format!(
            "{id} is ambiguous: {}",
            many.iter().map(|e| e.id.as_str()).collect::<Vec<_>>().join(", ")
        ))),
    }
}
