//! Orthogonal arrays: the code-based builder, baselines, I/O and the Rao bound.
//!
//! [`build_oa`] turns a linear code whose dual distance exceeds `t` and a far
//! vector `b` into an `OA[n^tau q^k, m, n, t]`. Every codeword `u` is mapped
//! into `[n]` coordinate by coordinate with [`phi`], except where `u_j = b_j`.
//! Those "bad" coordinates are filled with every possible tuple in `[n]^l`,
//! and each filled row is repeated `n^(tau - l)` times so that all codewords
//! contribute the same number of rows.

use std::fmt;
use std::io::{BufRead, Write};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::codes::{binomial_big, dual_distance_at_least, far_from_code, FarVector, LinearCode};
use crate::error::{invalid, Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::primes::prime_power;

/// Default cap on `s * m` for in-memory and streamed builds.
pub const DEFAULT_CELL_CAP: u128 = 100_000_000;

/// Codewords handed to each parallel work unit in [`build_oa_streaming`].
const CODEWORD_CHUNK: u128 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ReedSolomon,
    RandomCode,
    Bush,
    Product,
    Imported,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ReedSolomon => "rs",
            Provenance::RandomCode => "random-code",
            Provenance::Bush => "bush",
            Provenance::Product => "product",
            Provenance::Imported => "imported",
        })
    }
}

/// Everything the builder needs: a code over `F_q` with `q = 1 (mod n)`, a far
/// vector and its agreement bound.
#[derive(Debug, Clone)]
pub struct BuildPlan {
    pub m: usize,
    pub n: u64,
    pub t: usize,
    pub q: u64,
    pub tau: usize,
    pub code: LinearCode,
    pub bad: FarVector,
    pub provenance: Provenance,
}

impl BuildPlan {
    /// Assembles a plan, checking the cheap invariants.
    pub fn new(
        n: u64,
        t: usize,
        code: LinearCode,
        bad: FarVector,
        provenance: Provenance,
    ) -> Result<Self> {
        let q = code.p();
        let m = code.len();
        if n < 2 || q % n != 1 {
            return Err(invalid(format!("field order {q} is not 1 mod {n}")));
        }
        if bad.b.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "far vector has length {}, code has length {m}",
                bad.b.len()
            )));
        }
        if t > m {
            return Err(invalid(format!("strength {t} exceeds length {m}")));
        }
        if let Some(d) = code.dual_distance() {
            if d.at_least < t + 1 {
                return Err(invalid(format!(
                    "declared dual distance {} is below t + 1 = {}",
                    d.at_least,
                    t + 1
                )));
            }
        }
        Ok(BuildPlan {
            m,
            n,
            t,
            q,
            tau: bad.tau,
            code,
            bad,
            provenance,
        })
    }

    /// Exhaustively re-checks the dual distance and farness hypotheses.
    pub fn validate(&self) -> Result<()> {
        if !dual_distance_at_least(&self.code, self.t + 1) {
            return Err(invalid("code dual distance is below t + 1"));
        }
        if !far_from_code(&self.code, &self.bad.b, self.tau)? {
            return Err(invalid(format!(
                "far vector agrees with a codeword in more than {} places",
                self.tau
            )));
        }
        Ok(())
    }

    /// Closed-form row count `n^tau * q^k`.
    pub fn rows(&self) -> BigUint {
        BigUint::from(self.n).pow(self.tau as u32)
            * BigUint::from(self.q).pow(self.code.dimension() as u32)
    }

    /// `s / n^t`.
    pub fn lambda(&self) -> BigUint {
        self.rows() / BigUint::from(self.n).pow(self.t as u32)
    }

    fn rows_checked(&self, cap: u128) -> Result<u128> {
        let s = self.rows();
        let cells = &s * BigUint::from(self.m);
        let needed = u128::try_from(&cells).unwrap_or(u128::MAX);
        if needed > cap {
            return Err(Error::CapExceeded {
                what: "orthogonal array cells",
                needed,
                cap,
            });
        }
        Ok(u128::try_from(&s).expect("bounded by cap"))
    }
}

/// `1 + (((x + q - 1 - beta) mod q) mod n)`: a `(q-1)/n`-to-1 map from
/// `F_q \ {beta}` onto `[n]`.
#[inline]
pub fn phi(q: u64, n: u64, beta: Elem, x: Elem) -> u64 {
    assert!(x != beta, "phi is undefined at its bad value");
    debug_assert!(x < q && beta < q && q % n == 1);
    1 + ((x + (q - 1 - beta)) % q) % n
}

/// An `s x m` array over `[n] = {1..n}` of strength `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    s: usize,
    m: usize,
    n: u64,
    t: usize,
    entries: Vec<u32>,
    provenance: Provenance,
}

impl OrthogonalArray {
    /// Wraps a row-major entry buffer. Entries must lie in `[1, n]` and `n^t`
    /// must divide the row count; the strength itself is not checked here.
    pub fn from_entries(
        m: usize,
        n: u64,
        t: usize,
        entries: Vec<u32>,
        provenance: Provenance,
    ) -> Result<Self> {
        if m == 0 || !entries.len().is_multiple_of(m) {
            return Err(Error::DimensionMismatch(format!(
                "{} entries do not form rows of length {m}",
                entries.len()
            )));
        }
        if n < 2 || n > u32::MAX as u64 {
            return Err(invalid(format!("alphabet size {n} out of range")));
        }
        if t > m {
            return Err(invalid(format!("strength {t} exceeds column count {m}")));
        }
        let s = entries.len() / m;
        if let Some(bad) = entries.iter().find(|&&v| v == 0 || v as u64 > n) {
            return Err(invalid(format!("entry {bad} outside [1, {n}]")));
        }
        let nt = n.checked_pow(t as u32).unwrap_or(u64::MAX);
        if s == 0 || !(s as u64).is_multiple_of(nt) {
            return Err(invalid(format!("row count {s} is not a positive multiple of {n}^{t}")));
        }
        Ok(OrthogonalArray {
            s,
            m,
            n,
            t,
            entries,
            provenance,
        })
    }

    pub fn from_rows(n: u64, t: usize, rows: &[Vec<u32>], provenance: Provenance) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_entries(m, n, t, rows.concat(), provenance)
    }

    /// The single all-ones row over a one-letter alphabet, the identity for
    /// [`product_oa`].
    pub fn trivial(m: usize, t: usize) -> Self {
        OrthogonalArray {
            s: 1,
            m,
            n: 1,
            t,
            entries: vec![1; m],
            provenance: Provenance::Imported,
        }
    }

    pub fn rows(&self) -> usize {
        self.s
    }

    pub fn columns(&self) -> usize {
        self.m
    }

    pub fn alphabet(&self) -> u64 {
        self.n
    }

    pub fn strength(&self) -> usize {
        self.t
    }

    pub fn lambda(&self) -> u64 {
        self.s as u64 / self.n.pow(self.t as u32)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks_exact(self.m)
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.m + col]
    }

    /// Copy with rows reordered by `perm` (row `i` of the result is row `perm[i]`).
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.s);
        let entries = perm.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        OrthogonalArray {
            entries,
            ..self.clone()
        }
    }

    pub fn header(&self) -> String {
        format!("OA {} {} {} {} {}", self.s, self.m, self.n, self.t, self.lambda())
    }
}

/// Rows emitted by one codeword: every fix-up tuple `v`, each repeated `n^(tau - l)` times.
fn codeword_block(plan: &BuildPlan, u: &[Elem], out: &mut Vec<u32>) {
    let (n, q) = (plan.n, plan.q);
    let bad_positions: Vec<usize> = (0..plan.m).filter(|&j| u[j] == plan.bad.b[j]).collect();
    let l = bad_positions.len();
    assert!(l <= plan.tau, "codeword agrees with the far vector in {l} > tau places");
    let copies = n.pow((plan.tau - l) as u32);
    let mut row: Vec<u32> = (0..plan.m)
        .map(|j| {
            if u[j] == plan.bad.b[j] {
                1
            } else {
                phi(q, n, plan.bad.b[j], u[j]) as u32
            }
        })
        .collect();
    // v runs over [n]^l lexicographically; the last bad position varies fastest.
    loop {
        for _ in 0..copies {
            out.extend_from_slice(&row);
        }
        let next = bad_positions.iter().rev().find_map(|&j| {
            if (row[j] as u64) < n {
                row[j] += 1;
                Some(())
            } else {
                row[j] = 1;
                None
            }
        });
        if next.is_none() {
            break;
        }
    }
}

/// Streams the array built from `plan` to `sink` one row at a time, in a
/// fixed order: codewords by lexicographic coefficient vector, then fix-up
/// tuples lexicographically. Returns the row count.
pub fn build_oa_streaming<F>(plan: &BuildPlan, cell_cap: u128, mut sink: F) -> Result<u128>
where
    F: FnMut(&[u32]) -> Result<()>,
{
    let s = plan.rows_checked(cell_cap)?;
    let total = plan.code.size().expect("bounded by cap");
    let mut emitted = 0u128;
    let mut start = 0u128;
    while start < total {
        let end = (start + CODEWORD_CHUNK * rayon::current_num_threads() as u128).min(total);
        let chunks: Vec<(u128, u128)> = (start..end)
            .step_by(CODEWORD_CHUNK as usize)
            .map(|lo| (lo, (lo + CODEWORD_CHUNK).min(end)))
            .collect();
        let blocks: Vec<Vec<u32>> = chunks
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut out = Vec::new();
                let mut u = vec![0; plan.m];
                for i in lo..hi {
                    plan.code.encode_into(&plan.code.coefficients_at(i), &mut u);
                    codeword_block(plan, &u, &mut out);
                }
                out
            })
            .collect();
        for block in blocks {
            for row in block.chunks_exact(plan.m) {
                sink(row)?;
                emitted += 1;
            }
        }
        start = end;
    }
    assert_eq!(emitted, s, "row count differs from n^tau q^k");
    Ok(emitted)
}

/// In-memory wrapper around [`build_oa_streaming`].
pub fn build_oa(plan: &BuildPlan, cell_cap: u128) -> Result<OrthogonalArray> {
    let s = plan.rows_checked(cell_cap)?;
    let mut entries = Vec::with_capacity(s as usize * plan.m);
    build_oa_streaming(plan, cell_cap, |row| {
        entries.extend_from_slice(row);
        Ok(())
    })?;
    OrthogonalArray::from_entries(plan.m, plan.n, plan.t, entries, plan.provenance)
}

/// Bush's construction: evaluations of all `n^t` polynomials of degree `< t`
/// over `F_n` at the first `m` field elements. Requires `n` a prime power and
/// `t <= m <= n`.
pub fn bush_oa(n: u64, m: usize, t: usize) -> Result<OrthogonalArray> {
    let (p, e) = prime_power(n).ok_or_else(|| invalid(format!("{n} is not a prime power")))?;
    if m as u64 > n {
        return Err(invalid(format!("Bush construction needs m <= n, got m = {m}, n = {n}")));
    }
    if t == 0 || t > m {
        return Err(invalid(format!("need 1 <= t <= m, got t = {t}")));
    }
    let field = FieldCtx::new(p, e)?;
    let count = n
        .checked_pow(t as u32)
        .filter(|&c| c as u128 * m as u128 <= DEFAULT_CELL_CAP)
        .ok_or(Error::CapExceeded {
            what: "Bush array cells",
            needed: (n as u128).saturating_pow(t as u32).saturating_mul(m as u128),
            cap: DEFAULT_CELL_CAP,
        })?;
    let mut entries = Vec::with_capacity(count as usize * m);
    let mut coeffs = vec![0u64; t];
    for idx in 0..count {
        let mut rest = idx;
        for c in coeffs.iter_mut().rev() {
            *c = rest % n;
            rest /= n;
        }
        entries.extend((0..m as u64).map(|x| field.horner_eval(&coeffs, x) as u32 + 1));
    }
    OrthogonalArray::from_entries(m, n, t, entries, Provenance::Bush)
}

/// Entry-wise Cartesian product: row `(i, j)` pairs row `i` of `a` with row
/// `j` of `b` via `(a - 1) * n_b + b`. Strength is the smaller of the two.
pub fn product_oa(a: &OrthogonalArray, b: &OrthogonalArray) -> Result<OrthogonalArray> {
    if a.m != b.m {
        return Err(Error::DimensionMismatch(format!(
            "factor column counts differ: {} vs {}",
            a.m, b.m
        )));
    }
    let n = a.n * b.n;
    let t = a.t.min(b.t);
    let mut entries = Vec::with_capacity(a.s * b.s * a.m);
    for ra in a.iter_rows() {
        for rb in b.iter_rows() {
            entries.extend(
                ra.iter()
                    .zip(rb)
                    .map(|(&x, &y)| (x - 1) * b.n as u32 + y),
            );
        }
    }
    if n == 1 {
        return Ok(OrthogonalArray::trivial(a.m, t));
    }
    OrthogonalArray::from_entries(a.m, n, t, entries, Provenance::Product)
}

/// Rao's lower bound `C(m, floor(t/2)) * (n-1)^floor(t/2)` on the rows of any
/// `OA[s, m, n, t]`.
pub fn rao_bound(m: usize, n: u64, t: usize) -> BigUint {
    let h = t / 2;
    binomial_big(m, h) * BigUint::from(n - 1).pow(h as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Text,
    Csv,
}

/// Streaming writer for the text and CSV formats.
pub struct OaWriter<W: Write> {
    out: W,
    format: ExportFormat,
    zero_based: bool,
    line: String,
}

impl<W: Write> OaWriter<W> {
    /// Text output is always 1-based; `zero_based` applies to CSV only.
    pub fn new(out: W, format: ExportFormat, zero_based: bool) -> Self {
        OaWriter {
            out,
            format,
            zero_based: zero_based && format == ExportFormat::Csv,
            line: String::new(),
        }
    }

    /// Text: `OA <s> <m> <n> <t> <lambda>`. CSV: `c1,...,cm` when `csv_header` is set.
    pub fn header(&mut self, s: u128, m: usize, n: u64, t: usize, csv_header: bool) -> Result<()> {
        match self.format {
            ExportFormat::Text => {
                let lambda = s / (n as u128).pow(t as u32);
                writeln!(self.out, "OA {s} {m} {n} {t} {lambda}")?;
            }
            ExportFormat::Csv if csv_header => {
                let cols: Vec<String> = (1..=m).map(|c| format!("c{c}")).collect();
                writeln!(self.out, "{}", cols.join(","))?;
            }
            ExportFormat::Csv => {}
        }
        Ok(())
    }

    pub fn row(&mut self, row: &[u32]) -> Result<()> {
        use fmt::Write as _;
        let sep = match self.format {
            ExportFormat::Text => ' ',
            ExportFormat::Csv => ',',
        };
        let shift = self.zero_based as u32;
        self.line.clear();
        for (i, &v) in row.iter().enumerate() {
            if i > 0 {
                self.line.push(sep);
            }
            write!(self.line, "{}", v - shift).expect("writing to a String");
        }
        self.line.push('\n');
        self.out.write_all(self.line.as_bytes())?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

pub fn write_oa<W: Write>(oa: &OrthogonalArray, out: W, format: ExportFormat, zero_based: bool) -> Result<()> {
    let mut w = OaWriter::new(out, format, zero_based);
    w.header(oa.s as u128, oa.m, oa.n, oa.t, false)?;
    for row in oa.iter_rows() {
        w.row(row)?;
    }
    w.finish()?;
    Ok(())
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::Malformed(format!("line {line}: bad integer {tok:?}")))
}

/// Reads the text format written by [`OaWriter`], checking the header against the body.
pub fn read_oa_text<R: BufRead>(input: R) -> Result<OrthogonalArray> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Malformed("empty input".into()))??;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 6 || fields[0] != "OA" {
        return Err(Error::Malformed(format!("bad header {header:?}")));
    }
    let s: usize = parse_num(fields[1], 1)?;
    let m: usize = parse_num(fields[2], 1)?;
    let n: u64 = parse_num(fields[3], 1)?;
    let t: usize = parse_num(fields[4], 1)?;
    let lambda: u64 = parse_num(fields[5], 1)?;
    let mut entries = Vec::with_capacity(s.saturating_mul(m).min(1 << 28));
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 2;
        if i >= s {
            if line.is_empty() {
                continue;
            }
            return Err(Error::Malformed(format!("line {lineno}: more than {s} rows")));
        }
        let before = entries.len();
        for tok in line.split(' ') {
            entries.push(parse_num::<u32>(tok, lineno)?);
        }
        if entries.len() - before != m {
            return Err(Error::Malformed(format!("line {lineno}: expected {m} entries")));
        }
    }
    if entries.len() != s * m {
        return Err(Error::Malformed(format!("expected {s} rows, found {}", entries.len() / m.max(1))));
    }
    let oa = OrthogonalArray::from_entries(m, n, t, entries, Provenance::Imported)
        .map_err(|e| Error::Malformed(e.to_string()))?;
    if oa.lambda() != lambda {
        return Err(Error::Malformed(format!("header index {lambda} != s / n^t = {}", oa.lambda())));
    }
    Ok(oa)
}

/// Reads CSV rows (an optional non-numeric header line is skipped). `n`
/// defaults to the largest entry.
pub fn read_oa_csv<R: BufRead>(input: R, n: Option<u64>, t: usize, zero_based: bool) -> Result<OrthogonalArray> {
    let shift = zero_based as u32;
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.split(',').any(|tok| tok.trim().parse::<u32>().is_err())) {
            continue;
        }
        let row = line
            .split(',')
            .map(|tok| parse_num::<u32>(tok.trim(), i + 1).map(|v| v + shift))
            .collect::<Result<Vec<u32>>>()?;
        rows.push(row);
    }
    let n = n.unwrap_or_else(|| rows.iter().flatten().copied().max().unwrap_or(0) as u64);
    OrthogonalArray::from_rows(n, t, &rows, Provenance::Imported).map_err(|e| Error::Malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::plan_rs;

    #[test]
    fn phi_examples() {
        assert_eq!(phi(7, 3, 2, 3), 1);
        assert_eq!(phi(7, 3, 0, 5), 2);
        let mut image: Vec<u64> = [0, 1, 3, 4, 5, 6].iter().map(|&x| phi(7, 3, 2, x)).collect();
        image.sort();
        assert_eq!(image, vec![1, 1, 2, 2, 3, 3]);
    }

    #[test]
    #[should_panic]
    fn phi_rejects_bad_value() {
        phi(7, 3, 2, 2);
    }

    #[test]
    fn build_sizes() {
        let oa = build_oa(&plan_rs(6, 4, 2).unwrap(), DEFAULT_CELL_CAP).unwrap();
        assert_eq!((oa.rows(), oa.lambda()), (1764, 49));
        let oa = build_oa(&plan_rs(2, 3, 2).unwrap(), DEFAULT_CELL_CAP).unwrap();
        assert_eq!((oa.rows(), oa.lambda()), (100, 25));
    }

    #[test]
    fn codeword_without_bad_positions_repeats_n_tau_times() {
        let plan = plan_rs(6, 4, 2).unwrap();
        // u = 0 never meets b = (1, 4, 2, 2).
        let mut out = Vec::new();
        codeword_block(&plan, &[0, 0, 0, 0], &mut out);
        assert_eq!(out.len(), 36 * 4);
        let first = out[..4].to_vec();
        assert!(out.chunks(4).all(|r| r == first.as_slice()));

        // u = b on the first two coordinates: 36 distinct fix-ups, one copy each.
        let mut out = Vec::new();
        codeword_block(&plan, &[1, 4, 0, 0], &mut out);
        let mut fixes: Vec<_> = out.chunks(4).map(|r| (r[0], r[1])).collect();
        fixes.dedup();
        assert_eq!(fixes.len(), 36);
    }

    #[test]
    fn cap_is_enforced() {
        let plan = plan_rs(6, 4, 2).unwrap();
        assert!(matches!(build_oa(&plan, 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn bush_examples() {
        let oa = bush_oa(5, 5, 2).unwrap();
        assert_eq!(oa.header(), "OA 25 5 5 2 1");
        let oa = bush_oa(4, 4, 2).unwrap();
        assert_eq!((oa.rows(), oa.lambda()), (16, 1));
        let oa = bush_oa(3, 2, 2).unwrap();
        let mut rows: Vec<_> = oa.iter_rows().map(<[u32]>::to_vec).collect();
        rows.sort();
        let all: Vec<Vec<u32>> = (1..=3).flat_map(|a| (1..=3).map(move |b| vec![a, b])).collect();
        assert_eq!(rows, all);
        assert!(bush_oa(6, 4, 2).is_err());
        assert!(bush_oa(5, 6, 2).is_err());
    }

    #[test]
    fn product_shape_and_identity() {
        let a = bush_oa(2, 2, 2).unwrap();
        let b = bush_oa(3, 2, 2).unwrap();
        let ab = product_oa(&a, &b).unwrap();
        assert_eq!((ab.rows(), ab.alphabet(), ab.strength()), (36, 6, 2));
        let id = product_oa(&OrthogonalArray::trivial(2, 2), &b).unwrap();
        assert_eq!(id.entries(), b.entries());
        assert_eq!(id.alphabet(), 3);
        assert!(product_oa(&a, &bush_oa(3, 3, 2).unwrap()).is_err());
    }

    #[test]
    fn rao_examples() {
        assert_eq!(rao_bound(4, 6, 2), BigUint::from(20u32));
        assert_eq!(rao_bound(9, 17, 1), BigUint::from(1u32));
        assert_eq!(rao_bound(8, 2, 4), BigUint::from(28u32));
    }

    #[test]
    fn text_round_trip_and_format() {
        let oa = bush_oa(3, 3, 2).unwrap();
        let mut buf = Vec::new();
        write_oa(&oa, &mut buf, ExportFormat::Text, false).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("OA 9 3 3 2 1\n1 1 1\n"));
        assert!(text.lines().all(|l| !l.ends_with(' ')));
        assert!(!text.contains('\r'));
        let back = read_oa_text(buf.as_slice()).unwrap();
        assert_eq!(back.entries(), oa.entries());

        let mut csv = Vec::new();
        write_oa(&oa, &mut csv, ExportFormat::Csv, true).unwrap();
        assert!(String::from_utf8(csv.clone()).unwrap().starts_with("0,0,0\n"));
        let back = read_oa_csv(csv.as_slice(), Some(3), 2, true).unwrap();
        assert_eq!(back.entries(), oa.entries());
    }

    #[test]
    fn malformed_text_is_rejected() {
        for bad in [
            "",
            "OA 4 2 2 2\n1 1\n",
            "OA 4 2 2 2 1\n1 1\n1 2\n2 1\n",
            "OA 4 2 2 2 1\n1 1\n1 2\n2 1\n2 3\n",
            "OA 4 2 2 2 2\n1 1\n1 2\n2 1\n2 2\n",
            "OA 4 2 2 2 1\n1 1\n1 2\n2 1\n2 2 \n",
        ] {
            assert!(read_oa_text(bad.as_bytes()).is_err(), "{bad:?}");
        }
    }
}
