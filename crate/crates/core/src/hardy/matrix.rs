//! Coordinates of `C_Φ` in the monomial basis.
//!
//! Besides the square block `⟨C_Φ e_α, e_β⟩`, `max α, max β ≤ D`, assembly keeps a
//! range factor `X` with `X*X = P_D C_Φ* C_Φ P_D`, so that the singular values of `X`
//! are those of `C_Φ P_D` with the full (untruncated) range.

use super::integrals::{tail_squared_on_rule, w2_moments};
use super::{basis, basis_band, binomial, AffineNode, BidiskSymbol, CircleRule, MonomialIndex, TruncationSpec};
use crate::error::{Error, Result};
use crate::maps::C64;
use nalgebra::DMatrix;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

/// Width of the degree band beyond `D` used to sharpen the tail profile.
pub const SUB_BAND: usize = 128;
const SUB_K: usize = 3;
const KCUT_EPS: f64 = 1e-20;
const PROFILE_FLOOR: f64 = 64.0 * f64::EPSILON;
const MAGIC: &[u8; 4] = b"CBOM";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 96;

/// Matrix of `C_Φ` on the span of `{e_α : max α ≤ D}`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    spec: Option<TruncationSpec>,
    entries: DMatrix<C64>,
    range_factor: DMatrix<C64>,
    tail_hs: f64,
    tail_profile: Vec<f64>,
    params_hash: String,
}

#[derive(Clone, Copy, PartialEq)]
enum KeyMode {
    /// `F = P`: `F^i P^j` depends on `i + j` only.
    Merged,
    /// `P ≡ 0`: only `j = 0` survives.
    NoP,
    Full,
}

fn key(mode: KeyMode, a: MonomialIndex, k: usize) -> Option<(usize, usize)> {
    if a.alpha2 < k {
        return None;
    }
    let (i, j) = (a.alpha1, a.alpha2 - k);
    match mode {
        KeyMode::Merged => Some((i + j, 0)),
        KeyMode::NoP => (j == 0).then_some((i, 0)),
        KeyMode::Full => Some((i, j)),
    }
}

struct Powers {
    f: Vec<Vec<C64>>,
    p: Vec<Vec<C64>>,
    q: Vec<Vec<C64>>,
}

fn powers(nodes: &[AffineNode], deg: usize, kmax: usize, full: bool) -> Powers {
    let run = |z: C64, n: usize| {
        let mut v = Vec::with_capacity(n + 1);
        let mut acc = C64::new(1.0, 0.0);
        for _ in 0..=n {
            v.push(acc);
            acc *= z;
        }
        v
    };
    Powers {
        f: nodes.iter().map(|a| run(a.f, 2 * deg)).collect(),
        p: if full { nodes.iter().map(|a| run(a.p, deg)).collect() } else { Vec::new() },
        q: nodes.iter().map(|a| run(a.q, kmax)).collect(),
    }
}

/// Weighted samples `√w F^i P^j Q^k` of the distinct functions needed at level `k`.
struct KeyedBlock {
    keys: BTreeMap<(usize, usize), usize>,
    samples: DMatrix<C64>,
}

fn keyed_block(cols: &[MonomialIndex], k: usize, mode: KeyMode, pw: &Powers, sw: &[f64]) -> KeyedBlock {
    let mut keys = BTreeMap::new();
    for a in cols {
        if let Some(kk) = key(mode, *a, k) {
            let n = keys.len();
            keys.entry(kk).or_insert(n);
        }
    }
    let mut samples = DMatrix::zeros(sw.len(), keys.len());
    for (&(i, j), &c) in &keys {
        for (n, s) in sw.iter().enumerate() {
            let mut v = pw.f[n][i] * pw.q[n][k];
            if mode == KeyMode::Full {
                v *= pw.p[n][j];
            }
            samples[(n, c)] = v * *s;
        }
    }
    KeyedBlock { keys, samples }
}

fn kcut(nodes: &[AffineNode], deg: usize) -> usize {
    let qmax = nodes.iter().map(|a| a.q.norm()).fold(0.0, f64::max);
    if qmax == 0.0 {
        return 0;
    }
    (0..=deg).take_while(|&k| k == 0 || binomial(deg, k) * qmax.powi(k as i32) >= KCUT_EPS).last().unwrap_or(0)
}

fn upper_factor(m: DMatrix<C64>) -> DMatrix<C64> {
    if m.ncols() == 0 {
        return m;
    }
    m.qr().r()
}

fn hash_of(symbol: &BidiskSymbol, spec: &TruncationSpec, rule_len: usize) -> String {
    let text = serde_json::to_string(&(symbol, spec, rule_len)).unwrap_or_default();
    hex(&Sha256::digest(text.as_bytes()))
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn unhex(s: &str) -> [u8; 32] {
    let mut out = [0u8; 32];
    for (i, b) in out.iter_mut().enumerate() {
        *b = s.get(2 * i..2 * i + 2).and_then(|s| u8::from_str_radix(s, 16).ok()).unwrap_or(0);
    }
    out
}

/// Assembles `C_Φ` on the graded rule tied to `spec`.
pub fn assemble_matrix(symbol: &BidiskSymbol, spec: &TruncationSpec) -> Result<OperatorMatrix> {
    assemble_matrix_with(symbol, spec, &CircleRule::for_spec(spec))
}

/// Assembles `C_Φ` with an explicit `t₁` rule; the `t₂` integrals are exact.
pub fn assemble_matrix_with(symbol: &BidiskSymbol, spec: &TruncationSpec, rule: &CircleRule) -> Result<OperatorMatrix> {
    let d = spec.max_degree();
    let nodes: Vec<AffineNode> = rule.nodes.iter().map(|&t| symbol.affine_at(t)).collect();
    let sw: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let mode = if symbol.f_equals_p() {
        KeyMode::Merged
    } else if nodes.iter().all(|a| a.p == C64::new(0.0, 0.0)) {
        KeyMode::NoP
    } else {
        KeyMode::Full
    };
    let kmax = kcut(&nodes, d);
    let cols = basis(d);
    let dim = cols.len();
    let pw = powers(&nodes, d, kmax, mode == KeyMode::Full);

    let fourier = DMatrix::from_fn(d + 1, nodes.len(), |b, n| C64::from_polar(sw[n], -(b as f64) * rule.nodes[n]));
    let mut entries = DMatrix::zeros(dim, dim);
    let mut blocks = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let kb = keyed_block(&cols, k, mode, &pw, &sw);
        let coeffs = &fourier * &kb.samples;
        for (ca, a) in cols.iter().enumerate() {
            let Some(kk) = key(mode, *a, k) else { continue };
            let c = kb.keys[&kk];
            let bin = binomial(a.alpha2, k);
            for b1 in 0..=d {
                let row = MonomialIndex::new(b1, k).position();
                entries[(row, ca)] = coeffs[(b1, c)] * bin;
            }
        }
        let r = upper_factor(kb.samples.clone());
        blocks.push((kb.keys, r));
    }

    let rows: usize = blocks.iter().map(|(_, r)| r.nrows()).sum();
    let mut range_factor = DMatrix::zeros(rows, dim);
    let mut off = 0;
    for (k, (keys, r)) in blocks.iter().enumerate() {
        for (ca, a) in cols.iter().enumerate() {
            let Some(kk) = key(mode, *a, k) else { continue };
            let c = keys[&kk];
            let bin = binomial(a.alpha2, k);
            for i in 0..r.nrows() {
                range_factor[(off + i, ca)] = r[(i, c)] * bin;
            }
        }
        off += r.nrows();
    }

    if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Computation("non-finite matrix entry".into()));
    }

    let (tail_hs, tail_profile) = if symbol.is_hilbert_schmidt() {
        let tail2 = tail_squared_on_rule(symbol, rule, spec);
        if tail2.is_finite() {
            check_consistency(symbol, rule, &range_factor, tail2, d)?;
            let sub = sub_band_eigenvalues(&nodes, &sw, d, mode)?;
            (tail2.sqrt(), tail_profile(tail2, &sub))
        } else {
            (f64::INFINITY, Vec::new())
        }
    } else {
        (f64::INFINITY, Vec::new())
    };

    Ok(OperatorMatrix {
        spec: Some(*spec),
        entries,
        range_factor,
        tail_hs,
        tail_profile,
        params_hash: hash_of(symbol, spec, rule.len()),
    })
}

fn check_consistency(symbol: &BidiskSymbol, rule: &CircleRule, x: &DMatrix<C64>, tail2: f64, d: usize) -> Result<()> {
    let hs = rule.integrate(|t| {
        let a = symbol.affine_at(t);
        a.mean_inverse_om_w2() / a.om_f
    });
    let cols: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    let radicand = hs - cols;
    if radicand < -1e-10 * hs.max(1.0) {
        return Err(Error::Inconsistency(format!("column norms {cols} exceed the Hilbert-Schmidt integral {hs}")));
    }
    let direct: f64 = rule.integrate(|t| {
        let a = symbol.affine_at(t);
        let f2 = a.f.norm_sqr();
        let m = w2_moments(&a, d);
        let s1: f64 = (0..=d).map(|i| f2.powi(i as i32)).sum();
        s1 * m.iter().sum::<f64>()
    });
    if (direct - cols).abs() > 1e-10 * cols.max(1.0) {
        return Err(Error::Inconsistency(format!("range factor norm {cols} differs from direct quadrature {direct}")));
    }
    if (radicand - tail2).abs() > 1e-6 * hs.max(1.0) {
        return Err(Error::Inconsistency(format!("tail {tail2} differs from HS - columns = {radicand}")));
    }
    Ok(())
}

/// Eigenvalues (descending) of the Gram matrix of `C_Φ` on the band `D < max α ≤ D + 16`,
/// keeping range levels `k ≤ 6`; each is at most the corresponding squared singular value
/// of the discarded block.
fn sub_band_eigenvalues(nodes: &[AffineNode], sw: &[f64], d: usize, mode: KeyMode) -> Result<Vec<f64>> {
    let hi = d + SUB_BAND;
    let cols = basis_band(d, hi);
    let kmax = kcut(nodes, hi).min(SUB_K);
    let pw = powers(nodes, hi, kmax, mode == KeyMode::Full);
    let mut rs = Vec::new();
    for k in 0..=kmax {
        let kb = keyed_block(&cols, k, mode, &pw, sw);
        let r = upper_factor(kb.samples);
        rs.push((kb.keys, r));
    }
    let offs: Vec<usize> = rs
        .iter()
        .scan(0, |o, (_, r)| {
            let v = *o;
            *o += r.nrows();
            Some(v)
        })
        .collect();
    let total: usize = rs.iter().map(|(_, r)| r.nrows()).sum();
    let mut gram = DMatrix::<C64>::zeros(total, total);
    for k in 0..=kmax {
        for l in k..=kmax {
            let (kk, rk) = &rs[k];
            let (kl, rl) = &rs[l];
            let mut m = DMatrix::<C64>::zeros(kk.len(), kl.len());
            for a in &cols {
                if let (Some(x), Some(y)) = (key(mode, *a, k), key(mode, *a, l)) {
                    m[(kk[&x], kl[&y])] += C64::new(binomial(a.alpha2, k) * binomial(a.alpha2, l), 0.0);
                }
            }
            let g = rk * m * rl.adjoint();
            gram.view_mut((offs[k], offs[l]), (g.nrows(), g.ncols())).copy_from(&g);
            if l != k {
                gram.view_mut((offs[l], offs[k]), (g.ncols(), g.nrows())).copy_from(&g.adjoint());
            }
        }
    }
    let mut ev: Vec<f64> = gram.symmetric_eigenvalues().iter().map(|v| v.max(0.0)).collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    if ev.iter().any(|v| !v.is_finite()) {
        return Err(Error::Computation("sub-band eigenvalues are not finite".into()));
    }
    Ok(ev)
}

fn tail_profile(tail2: f64, sub: &[f64]) -> Vec<f64> {
    let floor = PROFILE_FLOOR * tail2;
    let mut out = Vec::with_capacity(sub.len() + 1);
    let mut acc = 0.0;
    out.push(tail2.sqrt());
    for v in sub {
        acc += v;
        let r = (tail2 - acc).max(floor);
        out.push(r.sqrt());
        if r <= floor {
            break;
        }
    }
    out
}

/// Header of a binary or CSV matrix dump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DumpHeader {
    /// Per-variable degree.
    pub max_degree: u32,
    /// Quadrature resolution.
    pub quad_points: u32,
    /// Hex SHA-256 of the symbol and truncation.
    pub params_hash: String,
    /// Matrix side `(D + 1)²`.
    pub dim: u64,
    /// Hex SHA-256 of the run configuration; zeros when written without one.
    pub config_hash: String,
    /// Seed of the run.
    pub seed: u64,
}

impl OperatorMatrix {
    /// Wraps a dense matrix whose singular values are to be taken as given.
    pub fn from_dense(entries: DMatrix<C64>, tail_hs: f64) -> Result<Self> {
        if !(tail_hs >= 0.0) {
            return Err(Error::InvalidInput(format!("tail bound {tail_hs} must be non-negative")));
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(Self {
            spec: None,
            range_factor: entries.clone(),
            entries,
            tail_hs,
            tail_profile: vec![tail_hs],
            params_hash: String::new(),
        })
    }

    /// Truncation, when assembled from a symbol.
    pub fn spec(&self) -> Option<&TruncationSpec> {
        self.spec.as_ref()
    }

    /// Square block indexed by `(β, α)` in basis order.
    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// `⟨C_Φ e_α, e_β⟩`.
    pub fn entry(&self, beta: MonomialIndex, alpha: MonomialIndex) -> Result<C64> {
        let (i, j) = (beta.position(), alpha.position());
        let n = self.entries.nrows();
        if i >= n || j >= n {
            return Err(Error::Index { index: i.max(j) + 1, len: n });
        }
        Ok(self.entries[(i, j)])
    }

    /// Factor with the singular values of `C_Φ P_D`.
    pub fn range_factor(&self) -> &DMatrix<C64> {
        &self.range_factor
    }

    /// Hilbert–Schmidt norm of the discarded columns.
    pub fn tail_hs(&self) -> f64 {
        self.tail_hs
    }

    /// Entry `r` bounds `a_{r+1}` of the discarded columns; entry 0 is `tail_hs`.
    pub fn tail_profile(&self) -> &[f64] {
        &self.tail_profile
    }

    /// Hex SHA-256 identifying the symbol and truncation.
    pub fn params_hash(&self) -> &str {
        &self.params_hash
    }

    /// `‖C_Φ e_α‖²` in basis order, from the range factor.
    pub fn column_norms_squared(&self) -> Vec<f64> {
        self.range_factor.column_iter().map(|c| c.norm_squared()).collect()
    }

    fn header(&self) -> DumpHeader {
        DumpHeader {
            max_degree: self.spec.map_or(0, |s| s.max_degree() as u32),
            quad_points: self.spec.map_or(0, |s| s.quad_points() as u32),
            params_hash: self.params_hash.clone(),
            dim: self.entries.nrows() as u64,
            config_hash: hex(&[0u8; 32]),
            seed: 0,
        }
    }

    /// Binary dump without run tags; see [`OperatorMatrix::write_binary_tagged`].
    pub fn write_binary<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        self.write_binary_tagged(path, "", 0)
    }

    /// Binary dump: `CBOM`, version, `D`, `Q` (u32 LE), 32-byte symbol hash, `n` (u64 LE),
    /// 32-byte config hash, seed (u64 LE), then `n²` pairs `(re, im)` of f64 LE in
    /// row-major order.
    pub fn write_binary_tagged<P: AsRef<Path>>(&self, path: P, config_hash: &str, seed: u64) -> Result<()> {
        let h = self.header();
        let mut buf = Vec::with_capacity(HEADER_LEN + 16 * self.entries.len());
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&VERSION.to_le_bytes());
        buf.extend_from_slice(&h.max_degree.to_le_bytes());
        buf.extend_from_slice(&h.quad_points.to_le_bytes());
        buf.extend_from_slice(&unhex(&h.params_hash));
        buf.extend_from_slice(&h.dim.to_le_bytes());
        buf.extend_from_slice(&unhex(config_hash));
        buf.extend_from_slice(&seed.to_le_bytes());
        for i in 0..self.entries.nrows() {
            for j in 0..self.entries.ncols() {
                let z = self.entries[(i, j)];
                buf.extend_from_slice(&z.re.to_le_bytes());
                buf.extend_from_slice(&z.im.to_le_bytes());
            }
        }
        std::fs::File::create(path)?.write_all(&buf)?;
        Ok(())
    }

    /// Reads a binary dump back.
    pub fn read_binary<P: AsRef<Path>>(path: P) -> Result<(DumpHeader, DMatrix<C64>)> {
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        let bad = |m: &str| Error::Parse { line: 0, message: m.to_string() };
        if buf.len() < HEADER_LEN || &buf[..4] != MAGIC {
            return Err(bad("not a matrix dump"));
        }
        let u32_at = |o: usize| u32::from_le_bytes(buf[o..o + 4].try_into().expect("4 bytes"));
        if u32_at(4) != VERSION {
            return Err(bad("unsupported dump version"));
        }
        let dim = u64::from_le_bytes(buf[48..56].try_into().expect("8 bytes"));
        let header = DumpHeader {
            max_degree: u32_at(8),
            quad_points: u32_at(12),
            params_hash: hex(&buf[16..48]),
            dim,
            config_hash: hex(&buf[56..88]),
            seed: u64::from_le_bytes(buf[88..96].try_into().expect("8 bytes")),
        };
        let n = dim as usize;
        if buf.len() != HEADER_LEN + 16 * n * n {
            return Err(bad("truncated matrix dump"));
        }
        let f = |o: usize| f64::from_le_bytes(buf[o..o + 8].try_into().expect("8 bytes"));
        let m = DMatrix::from_fn(n, n, |i, j| {
            let o = HEADER_LEN + 16 * (i * n + j);
            C64::new(f(o), f(o + 8))
        });
        Ok((header, m))
    }

    /// CSV dump: `#` header lines with `D`, `Q`, hash and extra key-value pairs, then
    /// `beta1,beta2,alpha1,alpha2,re,im` rows in row-major order.
    pub fn write_csv<P: AsRef<Path>>(&self, path: P, extra: &[(&str, String)]) -> Result<()> {
        let h = self.header();
        let idx = basis(self.spec.map_or(0, |s| s.max_degree()));
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "# D={} Q={} params_hash={} dim={}", h.max_degree, h.quad_points, h.params_hash, h.dim)?;
        for (k, v) in extra {
            writeln!(out, "# {k}={v}")?;
        }
        writeln!(out, "beta1,beta2,alpha1,alpha2,re,im")?;
        for i in 0..self.entries.nrows() {
            for j in 0..self.entries.ncols() {
                let z = self.entries[(i, j)];
                let (b, a) = (idx.get(i), idx.get(j));
                let (b1, b2) = b.map_or((i, 0), |b| (b.alpha1, b.alpha2));
                let (a1, a2) = a.map_or((j, 0), |a| (a.alpha1, a.alpha2));
                writeln!(out, "{b1},{b2},{a1},{a2},{:e},{:e}", z.re, z.im)?;
            }
        }
        out.flush()?;
        Ok(())
    }
}
