//! Sparse points of ℓ^p indexed by the coordinate letters, p-norms and
//! p-distances, and the Hausdorff–Pompeiu distance between finite point
//! sets.
//!
//! The exponent p is runtime data. Integer p is computed exactly on
//! rationals (roots taken only at the boundary, and only when they are
//! rational); non-integer p falls back to floating point with relative
//! error ≤ 1e-12. Set-membership and equality decisions never touch
//! floats.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::symbolic::{Alphabet, Letter};

/// The ℓ^p exponent, `p ≥ 1`. Integral values get exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Int(u32),
    Float(f64),
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidExponent(format!("{}", p)));
        }
        if p.fract() == 0.0 && p <= u32::MAX as f64 {
            Ok(Exponent::Int(p as u32))
        } else {
            Ok(Exponent::Float(p))
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Int(k) => k as f64,
            Exponent::Float(f) => f,
        }
    }

    pub fn as_int(self) -> Option<u32> {
        match self {
            Exponent::Int(k) => Some(k),
            Exponent::Float(_) => None,
        }
    }

    /// `1/q` for the conjugate exponent `q` (so `0` when `p = 1`).
    pub fn conjugate_inv(self) -> f64 {
        1.0 - 1.0 / self.as_f64()
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidExponent(s.to_string()))?;
        Exponent::new(p)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Int(k) => write!(f, "{}", k),
            Exponent::Float(x) => write!(f, "{}", x),
        }
    }
}

/// A nonnegative scalar that is exact when the computation stayed in
/// the rationals and approximate otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(ExactRational),
    Approx(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => r.to_f64(),
            Real::Approx(f) => *f,
        }
    }

    pub fn exact(&self) -> Option<&ExactRational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(r) => r.is_zero(),
            Real::Approx(f) => *f == 0.0,
        }
    }

    pub fn to_data(&self) -> RealData {
        RealData {
            decimal: format!("{}", self.to_f64()),
            exact: self.exact().map(|r| r.to_fraction_string()),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Wire form of a [`Real`]: decimal rendering plus the exact fraction
/// when one is known.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealData {
    pub decimal: String,
    pub exact: Option<String>,
}

/// A finitely supported point: letter → nonzero exact coordinate.
/// The distinguished letter `z` is never a coordinate index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoint {
    alphabet: Arc<Alphabet>,
    coords: BTreeMap<Letter, ExactRational>,
}

impl SparsePoint {
    pub fn origin(alphabet: &Arc<Alphabet>) -> Self {
        SparsePoint {
            alphabet: Arc::clone(alphabet),
            coords: BTreeMap::new(),
        }
    }

    /// The unit vector `u_l` (coordinate 1 at `l`, 0 elsewhere).
    pub fn unit(alphabet: &Arc<Alphabet>, letter: Letter) -> Result<Self> {
        SparsePoint::new(alphabet, [(letter, ExactRational::one())])
    }

    pub fn new<I>(alphabet: &Arc<Alphabet>, coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Letter, ExactRational)>,
    {
        let mut map = BTreeMap::new();
        for (letter, value) in coords {
            if !alphabet.contains(letter) {
                return Err(Error::UnknownLetter(format!("#{}", letter.index())));
            }
            if letter == alphabet.z() {
                return Err(Error::ZCoordinate);
            }
            if value.is_zero() {
                continue;
            }
            if map.insert(letter, value).is_some() {
                return Err(Error::InvalidLetter(
                    alphabet.symbol(letter).to_string(),
                    "duplicate coordinate",
                ));
            }
        }
        Ok(SparsePoint {
            alphabet: Arc::clone(alphabet),
            coords: map,
        })
    }

    /// Internal constructor for callers that guarantee valid letters;
    /// still drops zero entries.
    pub(crate) fn from_map(alphabet: &Arc<Alphabet>, map: BTreeMap<Letter, ExactRational>) -> Self {
        let coords = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        SparsePoint {
            alphabet: Arc::clone(alphabet),
            coords,
        }
    }

    pub fn from_data(alphabet: &Arc<Alphabet>, data: &PointData) -> Result<Self> {
        let mut pairs = Vec::with_capacity(data.coords.len());
        for (symbol, value) in &data.coords {
            pairs.push((alphabet.letter(symbol)?, value.clone()));
        }
        SparsePoint::new(alphabet, pairs)
    }

    pub fn to_data(&self) -> PointData {
        PointData {
            coords: self
                .coords
                .iter()
                .map(|(l, v)| (self.alphabet.symbol(*l).to_string(), v.clone()))
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Coordinate at `letter`, zero when absent from the support.
    pub fn coord(&self, letter: Letter) -> ExactRational {
        self.coords
            .get(&letter)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// Support entries in letter order.
    pub fn coords(&self) -> impl Iterator<Item = (Letter, &ExactRational)> + '_ {
        self.coords.iter().map(|(l, v)| (*l, v))
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coordinate_sum(&self) -> ExactRational {
        let mut acc = ExactRational::zero();
        for v in self.coords.values() {
            acc += v;
        }
        acc
    }

    pub fn same_alphabet(&self, other: &SparsePoint) -> bool {
        self.alphabet == other.alphabet
    }
}

impl PartialOrd for SparsePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SparsePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        if !Arc::ptr_eq(&self.alphabet, &other.alphabet) {
            let ord = self.alphabet.cmp(&other.alphabet);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for SparsePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_origin() {
            return f.write_str("{origin}");
        }
        let cells: Vec<String> = self
            .coords
            .iter()
            .map(|(l, v)| format!("{}: {}", self.alphabet.symbol(*l), v))
            .collect();
        write!(f, "{{{}}}", cells.join(", "))
    }
}

/// JSON form of a point: `{"coords": {"a": "1/2", "b": "1/4"}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointData {
    pub coords: BTreeMap<String, ExactRational>,
}

/// A finite set of points over one alphabet, deduplicated and held in a
/// canonical sorted order so every downstream output is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    alphabet: Arc<Alphabet>,
    points: Vec<SparsePoint>,
}

impl PointSet {
    pub fn new(alphabet: &Arc<Alphabet>, mut points: Vec<SparsePoint>) -> Result<Self> {
        for p in &points {
            if p.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet {
            alphabet: Arc::clone(alphabet),
            points,
        })
    }

    pub fn singleton(point: SparsePoint) -> Self {
        PointSet {
            alphabet: Arc::clone(point.alphabet()),
            points: vec![point],
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn points(&self) -> &[SparsePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &SparsePoint) -> bool {
        self.points.binary_search(point).is_ok()
    }

    pub fn same_alphabet(&self, other: &PointSet) -> bool {
        self.alphabet == other.alphabet
    }

    /// One row per point, one column per coordinate letter in declared
    /// order, exact fraction cells. Letters are validated at alphabet
    /// construction to be CSV-safe, so no quoting is needed.
    pub fn to_csv(&self) -> String {
        let letters: Vec<Letter> = self.alphabet.coordinate_letters().collect();
        let mut out = String::new();
        let header: Vec<&str> = letters.iter().map(|l| self.alphabet.symbol(*l)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for point in &self.points {
            let row: Vec<String> = letters
                .iter()
                .map(|l| point.coord(*l).to_fraction_string())
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(alphabet: &Arc<Alphabet>, csv: &str) -> Result<Self> {
        let mut lines = csv.lines().map(str::trim_end).filter(|l| !l.is_empty());
        let header = lines.next().ok_or(Error::EmptyPointSet)?;
        let mut columns = Vec::new();
        for name in header.split(',') {
            let letter = alphabet.letter(name.trim())?;
            if letter == alphabet.z() {
                return Err(Error::ZCoordinate);
            }
            columns.push(letter);
        }
        let mut points = Vec::new();
        for line in lines {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != columns.len() {
                return Err(Error::CsvShape(format!(
                    "row has {} cells, header has {} columns",
                    cells.len(),
                    columns.len()
                )));
            }
            let mut pairs = Vec::with_capacity(columns.len());
            for (letter, cell) in columns.iter().zip(cells) {
                pairs.push((*letter, cell.trim().parse::<ExactRational>()?));
            }
            points.push(SparsePoint::new(alphabet, pairs)?);
        }
        PointSet::new(alphabet, points)
    }
}

/// Exact `Σ |x_a - y_a|^p` for integer `p ≥ 1`.
pub fn dist_p_pow(x: &SparsePoint, y: &SparsePoint, p: u32) -> Result<ExactRational> {
    if !x.same_alphabet(y) {
        return Err(Error::AlphabetMismatch);
    }
    let mut acc = ExactRational::zero();
    merge_diffs(x, y, |d| acc += &d.abs().powu(p));
    Ok(acc)
}

/// `(Σ |x_a - y_a|^p)^(1/p)`.
pub fn dist_p(x: &SparsePoint, y: &SparsePoint, p: Exponent) -> Result<Real> {
    if !x.same_alphabet(y) {
        return Err(Error::AlphabetMismatch);
    }
    match p {
        Exponent::Int(k) => Ok(real_root(dist_p_pow(x, y, k)?, k)),
        Exponent::Float(f) => {
            let mut acc = 0.0f64;
            merge_diffs(x, y, |d| acc += d.to_f64().abs().powf(f));
            Ok(Real::Approx(acc.powf(1.0 / f)))
        }
    }
}

/// `(Σ |x_a|^p)^(1/p)`.
pub fn norm_p(x: &SparsePoint, p: Exponent) -> Real {
    let origin = SparsePoint::origin(x.alphabet());
    dist_p(x, &origin, p).expect("same alphabet by construction")
}

/// Visits `x_a - y_a` over the union of supports.
fn merge_diffs(x: &SparsePoint, y: &SparsePoint, mut visit: impl FnMut(ExactRational)) {
    let mut xs = x.coords().peekable();
    let mut ys = y.coords().peekable();
    loop {
        match (xs.peek().copied(), ys.peek().copied()) {
            (None, None) => break,
            (Some((_, v)), None) => {
                visit(v.clone());
                xs.next();
            }
            (None, Some((_, w))) => {
                visit(-w.clone());
                ys.next();
            }
            (Some((lx, v)), Some((ly, w))) => match lx.cmp(&ly) {
                Ordering::Less => {
                    visit(v.clone());
                    xs.next();
                }
                Ordering::Greater => {
                    visit(-w.clone());
                    ys.next();
                }
                Ordering::Equal => {
                    visit(v - w);
                    xs.next();
                    ys.next();
                }
            },
        }
    }
}

/// Takes the `p`-th root at the boundary: exact when the root is
/// rational, floating point (relative error ≤ 1e-12) otherwise.
fn real_root(pow_sum: ExactRational, p: u32) -> Real {
    if p == 1 || pow_sum.is_zero() {
        return Real::Exact(pow_sum);
    }
    match pow_sum.nth_root_exact(p) {
        Some(root) => Real::Exact(root),
        None => Real::Approx(pow_sum.to_f64().powf(1.0 / p as f64)),
    }
}

/// Hausdorff–Pompeiu distance between finite non-empty sets:
/// `max(sup_s inf_t d_p(s,t), sup_t inf_s d_p(s,t))`.
pub fn hausdorff(s: &PointSet, t: &PointSet, p: Exponent) -> Result<Real> {
    check_hausdorff_inputs(s, t)?;
    match p {
        Exponent::Int(k) => Ok(real_root(hausdorff_pow(s, t, k)?, k)),
        Exponent::Float(f) => Ok(Real::Approx(hausdorff_f64(s, t, f))),
    }
}

/// Exact `p`-th power of the Hausdorff distance for integer `p ≥ 1`.
/// All comparisons happen on the monotone quantity `d^p`, so callers
/// can test bounds exactly without extracting roots.
pub fn hausdorff_pow(s: &PointSet, t: &PointSet, p: u32) -> Result<ExactRational> {
    check_hausdorff_inputs(s, t)?;
    if p == 0 {
        return Err(Error::InvalidExponent("0".into()));
    }
    if let Some((is_, it_, scale)) = intern_sets(s, t, p) {
        let fwd = directed_sup_min(is_.len(), it_.len(), |i, j| {
            dist_pow_interned(&is_[i], &it_[j], p)
        });
        let bwd = directed_sup_min(it_.len(), is_.len(), |i, j| {
            dist_pow_interned(&it_[i], &is_[j], p)
        });
        let h = fwd.max(bwd);
        let denom = num_traits::Pow::pow(&scale, p);
        ExactRational::from_big(BigInt::from(h), denom)
    } else {
        let fwd = directed_sup_min(s.len(), t.len(), |i, j| {
            dist_p_pow(&s.points()[i], &t.points()[j], p).expect("alphabets already checked")
        });
        let bwd = directed_sup_min(t.len(), s.len(), |i, j| {
            dist_p_pow(&t.points()[i], &s.points()[j], p).expect("alphabets already checked")
        });
        Ok(fwd.max(bwd))
    }
}

fn check_hausdorff_inputs(s: &PointSet, t: &PointSet) -> Result<()> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !s.same_alphabet(t) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

fn hausdorff_f64(s: &PointSet, t: &PointSet, p: f64) -> f64 {
    let to_f64 = |set: &PointSet| -> Vec<Vec<(u32, f64)>> {
        set.points()
            .iter()
            .map(|pt| {
                pt.coords()
                    .map(|(l, v)| (l.index() as u32, v.to_f64()))
                    .collect()
            })
            .collect()
    };
    let fs = to_f64(s);
    let ft = to_f64(t);
    let dist = |x: &[(u32, f64)], y: &[(u32, f64)]| -> OrdF64 {
        let (mut i, mut j, mut acc) = (0usize, 0usize, 0.0f64);
        while i < x.len() || j < y.len() {
            let d = match (x.get(i), y.get(j)) {
                (Some(&(lx, v)), Some(&(ly, w))) => match lx.cmp(&ly) {
                    Ordering::Less => {
                        i += 1;
                        v
                    }
                    Ordering::Greater => {
                        j += 1;
                        -w
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        v - w
                    }
                },
                (Some(&(_, v)), None) => {
                    i += 1;
                    v
                }
                (None, Some(&(_, w))) => {
                    j += 1;
                    -w
                }
                (None, None) => break,
            };
            acc += d.abs().powf(p);
        }
        OrdF64(acc)
    };
    let fwd = directed_sup_min(fs.len(), ft.len(), |i, j| dist(&fs[i], &ft[j]));
    let bwd = directed_sup_min(ft.len(), fs.len(), |i, j| dist(&ft[i], &fs[j]));
    fwd.max(bwd).0.powf(1.0 / p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

trait SupMinValue: Ord + Clone {
    fn zero() -> Self;
}

impl SupMinValue for i128 {
    fn zero() -> Self {
        0
    }
}

impl SupMinValue for OrdF64 {
    fn zero() -> Self {
        OrdF64(0.0)
    }
}

impl SupMinValue for ExactRational {
    fn zero() -> Self {
        ExactRational::zero()
    }
}

/// `max_i min_j dist(i, j)` with two pruning devices that never change
/// the result:
///
/// - Early break: once some `j` gives `dist ≤ best`, point `i` cannot
///   raise the supremum and the inner scan stops.
/// - Warm start: the inner scan walks `j` in an expanding ring around
///   the previous point's minimizer. Point sets are sorted, so sequence
///   neighbors tend to be geometric neighbors.
///
/// A strided pre-pass grows `best` early so the main pass breaks fast.
/// Correctness does not depend on the pre-pass: for every `i` the main
/// pass either computes the exact minimum (and folds it into the max)
/// or proves `min_j ≤ best`.
fn directed_sup_min<V, D>(from_len: usize, to_len: usize, mut dist: D) -> V
where
    V: SupMinValue,
    D: FnMut(usize, usize) -> V,
{
    debug_assert!(from_len > 0 && to_len > 0);
    let mut best = V::zero();
    let mut warm = 0usize;
    let stride = (from_len / 64).max(1);
    for pass in 0..2u8 {
        for i in 0..from_len {
            if pass == 0 && i % stride != 0 {
                continue;
            }
            let mut min_d: Option<V> = None;
            let mut min_idx = warm;
            let mut capped = false;
            for j in ring_indices(warm, to_len) {
                let d = dist(i, j);
                if d <= best {
                    min_idx = j;
                    capped = true;
                    break;
                }
                if min_d.as_ref().map_or(true, |m| d < *m) {
                    min_d = Some(d);
                    min_idx = j;
                }
            }
            if !capped {
                if let Some(m) = min_d {
                    if m > best {
                        best = m;
                    }
                }
            }
            warm = min_idx;
        }
    }
    best
}

/// Yields `center`, then alternates outward: `center+1`, `center-1`, …
/// until all of `0..len` has been visited.
fn ring_indices(center: usize, len: usize) -> impl Iterator<Item = usize> {
    let mut up = center + 1;
    let mut down = center as i64 - 1;
    let mut first = true;
    let mut go_up = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return Some(center);
        }
        let take_up = if go_up { up < len } else { up < len && down < 0 };
        go_up = !go_up;
        if take_up {
            let v = up;
            up += 1;
            Some(v)
        } else if down >= 0 {
            let v = down as usize;
            down -= 1;
            Some(v)
        } else if up < len {
            let v = up;
            up += 1;
            Some(v)
        } else {
            None
        }
    })
}

/// Rescales both sets onto a common integer grid when that is safe:
/// coordinates become `i64` numerators over the lcm denominator, and
/// `Σ |δ|^p` is guaranteed to fit in `i128`. Returns `None` when the
/// magnitudes rule the fast path out.
#[allow(clippy::type_complexity)]
fn intern_sets(
    s: &PointSet,
    t: &PointSet,
    p: u32,
) -> Option<(Vec<Vec<(u32, i64)>>, Vec<Vec<(u32, i64)>>, BigInt)> {
    let mut scale = BigInt::one();
    let mut max_abs = BigInt::zero();
    for set in [s, t] {
        for pt in set.points() {
            for (_, v) in pt.coords() {
                scale = scale.lcm(v.denom());
            }
        }
    }
    for set in [s, t] {
        for pt in set.points() {
            for (_, v) in pt.coords() {
                let m = (v.numer() * (&scale / v.denom())).abs();
                if m > max_abs {
                    max_abs = m;
                }
            }
        }
    }
    // Largest possible |δ| is 2·max_abs; at most |alphabet| terms sum.
    let support = s.alphabet().len() as u64;
    let delta_bits = (&max_abs * 2u32 + 1u32).bits();
    let sum_bits = delta_bits * p as u64 + (64 - support.leading_zeros() as u64);
    if max_abs.bits() > 62 || sum_bits > 120 {
        return None;
    }
    let intern = |set: &PointSet| -> Vec<Vec<(u32, i64)>> {
        set.points()
            .iter()
            .map(|pt| {
                pt.coords()
                    .map(|(l, v)| {
                        let n: i64 = (v.numer() * (&scale / v.denom()))
                            .try_into()
                            .expect("magnitude bound checked above");
                        (l.index() as u32, n)
                    })
                    .collect()
            })
            .collect()
    };
    Some((intern(s), intern(t), scale))
}

fn dist_pow_interned(x: &[(u32, i64)], y: &[(u32, i64)], p: u32) -> i128 {
    let (mut i, mut j) = (0usize, 0usize);
    let mut acc = 0i128;
    loop {
        let d: i64 = match (x.get(i), y.get(j)) {
            (Some(&(lx, v)), Some(&(ly, w))) => match lx.cmp(&ly) {
                Ordering::Less => {
                    i += 1;
                    v
                }
                Ordering::Greater => {
                    j += 1;
                    w
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    v - w
                }
            },
            (Some(&(_, v)), None) => {
                i += 1;
                v
            }
            (None, Some(&(_, w))) => {
                j += 1;
                w
            }
            (None, None) => break,
        };
        acc += (d.unsigned_abs() as i128).pow(p);
    }
    acc
}
