//! Exact edit distance: thresholded banded DP for verification, the full
//! quadratic DP as ground truth, and the shift statistic.

use std::cmp::min;

use crate::corpus::Symbol;

/// Edit distance of `x` and `y` if it is at most `k`, `None` otherwise.
///
/// Only the `2k + 1` diagonals around the main one are considered, one row at
/// a time, so the cost is `O((2k + 1) * min(|x|, |y|))` time and `O(k)` space.
/// Within a row only the span of cells that can still reach the final cell
/// within `k` edits is filled.
#[allow(clippy::needless_range_loop)]
pub fn banded_edit_distance(x: &[Symbol], y: &[Symbol], k: usize) -> Option<usize> {
    let (x, y) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let (n, m) = (x.len(), y.len());
    if m - n > k {
        return None;
    }
    let width = 2 * k + 1;
    let inf = k + 1;
    // Cell (i, j) lives at index d = j + k - i of its row. Reaching (n, m)
    // from index d costs at least |d - target| more edits.
    let target = m - n + k;
    let alive = |v: usize, d: usize| v + d.abs_diff(target) <= k;

    let mut prev = vec![inf; width];
    let (mut lo, mut hi) = (width, 0);
    for d in k..width {
        let j = d - k;
        if j <= m && alive(j, d) {
            prev[d] = j;
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    if lo > hi {
        return None;
    }
    let mut cur = vec![inf; width];
    for i in 1..=n {
        let xi = x[i - 1];
        let get = |row: &[usize], d: usize| if d >= lo && d <= hi { row[d] } else { inf };
        let (mut new_lo, mut new_hi) = (width, 0);
        let mut left = inf;
        for d in lo.saturating_sub(1)..width {
            if d > hi && left == inf {
                break;
            }
            let j = (i + d) as isize - k as isize;
            let v = if j < 0 || j as usize > m {
                inf
            } else if j == 0 {
                i
            } else {
                let j = j as usize;
                let sub = get(&prev, d) + (xi != y[j - 1]) as usize;
                let del = if d + 1 < width {
                    get(&prev, d + 1) + 1
                } else {
                    inf
                };
                min(min(sub, del), left + 1)
            };
            let v = if v < inf && alive(v, d) { v } else { inf };
            cur[d] = v;
            left = v;
            if v < inf {
                new_lo = new_lo.min(d);
                new_hi = d;
            }
        }
        if new_lo > new_hi {
            return None;
        }
        std::mem::swap(&mut prev, &mut cur);
        lo = new_lo;
        hi = new_hi;
    }
    let dist = if (lo..=hi).contains(&target) {
        prev[target]
    } else {
        inf
    };
    (dist <= k).then_some(dist)
}

/// Levenshtein distance with unit costs.
pub fn full_edit_distance(x: &[Symbol], y: &[Symbol]) -> usize {
    let mut row: Vec<usize> = (0..=y.len()).collect();
    for (i, &a) in x.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &b) in y.iter().enumerate() {
            let next = min(min(row[j + 1], row[j]) + 1, diag + (a != b) as usize);
            diag = row[j + 1];
            row[j + 1] = next;
        }
    }
    row[y.len()]
}

/// Longest prefix of either string whose wholesale deletion lies on an
/// optimal alignment: `max t` with `ED(x, y) = t + ED(x[t..], y)`, or the same
/// with the roles swapped; 0 if no such `t >= 1` exists.
///
/// One suffix-suffix DP yields `ED(x[t..], y)` and `ED(x, y[t..])` for all `t`.
pub fn shift(x: &[Symbol], y: &[Symbol]) -> usize {
    let (n, m) = (x.len(), y.len());
    // row[u] = ED(x[t..], y[u..]) for the current t, iterating t downwards.
    let mut row: Vec<usize> = (0..=m).map(|u| m - u).collect();
    let mut x_suffix = vec![0; n + 1];
    x_suffix[n] = row[0];
    for t in (0..n).rev() {
        let mut next = vec![0; m + 1];
        next[m] = n - t;
        for u in (0..m).rev() {
            next[u] = min(
                min(row[u], next[u + 1]) + 1,
                row[u + 1] + (x[t] != y[u]) as usize,
            );
        }
        row = next;
        x_suffix[t] = row[0];
    }
    let total = row[0];
    let sft1 = (1..=n)
        .rev()
        .find(|&t| total == t + x_suffix[t])
        .unwrap_or(0);
    let sft2 = (1..=m).rev().find(|&t| total == t + row[t]).unwrap_or(0);
    sft1.max(sft2)
}
