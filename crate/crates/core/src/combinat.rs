//! Index bookkeeping: permutation signs, sorted keys, subsets and tuples.

/// Sorts `idx` in place and returns the sign of the sorting permutation, or `None`
/// when an index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // insertion sort keeps the transposition count explicit
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Canonical (strictly increasing) form of an index tuple with its sign.
pub fn canonical(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    sort_with_sign(&mut v).map(|s| (v, s))
}

/// All permutations of `0..k` paired with their signs, in lexicographic order.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out.into_iter()
        .map(|p| {
            let mut q = p.clone();
            let s = sort_with_sign(&mut q).expect("permutation has distinct entries");
            (p, s)
        })
        .collect()
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All `k`-tuples over `0..n` in lexicographic order.
pub fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Multi-indices `p` of length `m` with `|p| <= max_total`.
pub fn multi_indices(m: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(m, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, max_total, &mut Vec::new(), &mut out);
    out
}

/// Merges two disjoint increasing keys, returning the merged key and the sign of the
/// shuffle, or `None` when they share an entry.
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    canonical(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(canonical(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(canonical(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(canonical(&[1, 1]), None);
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i32>(), 0);
    }

    #[test]
    fn enumerations() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(2, 3).len(), 0);
        assert_eq!(all_tuples(3, 2).len(), 9);
        assert_eq!(multi_indices(2, 2).len(), 6);
        assert_eq!(merge_sign(&[1], &[0, 2]), Some((vec![0, 1, 2], -1)));
    }
}
