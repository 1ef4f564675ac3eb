use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let entries = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        IntegerMatrix { rows: rows.len(), cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src], for columns from `from` on.
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for c in from..self.cols {
            let s = self.get(src, c);
            if !s.is_zero() {
                let v = self.get(dst, c) - q * s;
                self.set(dst, c, v);
            }
        }
    }

    /// col[dst] -= q * col[src], for rows from `from` on.
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for r in from..self.rows {
            let s = self.get(r, src);
            if !s.is_zero() {
                let v = self.get(r, dst) - q * s;
                self.set(r, dst, v);
            }
        }
    }
}

/// Nonzero diagonal of the Smith normal form, `d₁ | d₂ | … | d_r`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form by elementary operations, always pivoting on the
/// nonzero entry of least absolute value (ties broken by row, then column).
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < a.rows.min(a.cols) {
        let Some((pr, pc)) = least_entry(&a, t..a.rows, t..a.cols) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for r in t + 1..a.rows {
                if !a.get(r, t).is_zero() {
                    let q = a.get(r, t).div_floor(&p);
                    a.sub_row(r, t, &q, t);
                    dirty |= !a.get(r, t).is_zero();
                }
            }
            for c in t + 1..a.cols {
                if !a.get(t, c).is_zero() {
                    let q = a.get(t, c).div_floor(&p);
                    a.sub_col(c, t, &q, t);
                    dirty |= !a.get(t, c).is_zero();
                }
            }
            if dirty {
                // A remainder smaller than the pivot survived; move it to the pivot.
                let (r, c) = least_in_cross(&a, t);
                a.swap_rows(t, r);
                a.swap_cols(t, c);
                continue;
            }
            let bad = (t + 1..a.rows)
                .flat_map(|r| (t + 1..a.cols).map(move |c| (r, c)))
                .find(|&(r, c)| !a.get(r, c).is_multiple_of(&p));
            match bad {
                Some((r, _)) => {
                    let one = -BigInt::one();
                    a.sub_row(t, r, &one, t);
                }
                None => break,
            }
        }
        diagonal.push(a.get(t, t).abs());
        t += 1;
    }
    SmithForm { diagonal }
}

fn least_entry(
    a: &IntegerMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in rows {
        for c in cols.clone() {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| av < *b) {
                let unit = av.is_one();
                best = Some((av, r, c));
                if unit {
                    return best.map(|(_, r, c)| (r, c));
                }
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn least_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    for r in t + 1..a.rows {
        let v = a.get(r, t).abs();
        if !v.is_zero() && v < best.0 {
            best = (v, r, t);
        }
    }
    for c in t + 1..a.cols {
        let v = a.get(t, c).abs();
        if !v.is_zero() && v < best.0 {
            best = (v, t, c);
        }
    }
    (best.1, best.2)
}

/// Sparse column of `(row, value)` pairs sorted by row.
pub(crate) type SparseCol = Vec<(usize, i64)>;

/// Column reduction with unit pivots only. Columns are reduced left to
/// right against earlier columns whose lowest entry is ±1; returns the
/// number of pivots, or `None` if some column ends with a non-unit lowest
/// entry or an intermediate value overflows. When it succeeds every
/// invariant factor equals one.
pub(crate) fn unit_pivot_rank(cols: &mut [SparseCol], nrows: usize) -> Option<usize> {
    let mut owner: Vec<usize> = vec![usize::MAX; nrows];
    let mut rank = 0;
    for j in 0..cols.len() {
        loop {
            let Some(&(low, val)) = cols[j].last() else {
                break;
            };
            let o = owner[low];
            if o == usize::MAX {
                if val.abs() != 1 {
                    return None;
                }
                owner[low] = j;
                rank += 1;
                break;
            }
            let pivot = cols[o].last().unwrap().1;
            let factor = val.checked_mul(pivot)?;
            let reduced = axpy(&cols[j], &cols[o], factor)?;
            cols[j] = reduced;
        }
    }
    Some(rank)
}

/// `a - factor * b` on sparse columns with overflow checks.
fn axpy(a: &SparseCol, b: &SparseCol, factor: i64) -> Option<SparseCol> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1.checked_mul(factor)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(b[j].1.checked_mul(factor)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Smith form of a sparse matrix: unit pivots are eliminated sparsely
/// (choosing the pivot with least fill estimate), and what remains is
/// reduced densely with arbitrary precision.
pub(crate) fn sparse_smith(cols: &[SparseCol], nrows: usize) -> SmithForm {
    use std::collections::BTreeMap;
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); nrows];
    let mut colsets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); cols.len()];
    for (c, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            rows[r].insert(c, BigInt::from(v));
            colsets[c].insert(r);
        }
    }
    let mut units = 0usize;
    loop {
        // Markowitz choice among unit entries.
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                if v.abs().is_one() {
                    let cost = (row.len() - 1) * (colsets[c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, c));
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let prow = std::mem::take(&mut rows[pr]);
        let pval = prow[&pc].clone();
        let others: Vec<usize> = colsets[pc].iter().copied().filter(|&r| r != pr).collect();
        for &c in prow.keys() {
            colsets[c].remove(&pr);
        }
        for r in others {
            let a = rows[r].remove(&pc).unwrap();
            colsets[pc].remove(&r);
            let q = &a * &pval;
            for (&c, v) in &prow {
                if c == pc {
                    continue;
                }
                let e = rows[r].entry(c).or_insert_with(BigInt::zero);
                *e -= &q * v;
                if e.is_zero() {
                    rows[r].remove(&c);
                    colsets[c].remove(&r);
                } else {
                    colsets[c].insert(r);
                }
            }
        }
        colsets[pc].clear();
        units += 1;
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| !colsets[c].is_empty()).collect();
    let mut dense = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            dense.set(i, col_pos[c], v.clone());
        }
    }
    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(smith_normal_form(&dense).diagonal);
    SmithForm { diagonal }
}
