use serde::Serialize;

/// `(S_1, ..., S_r)` such that the blocks `{s, ..., s + i - 1}` for `s ∈ S_i` tile `{0, ..., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShadowedPartition {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl ShadowedPartition {
    pub fn rank(&self) -> usize {
        self.sets.len()
    }

    /// The blocks are pairwise disjoint and cover `{0, ..., n-1}`.
    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.n];
        for (i, s) in self.sets.iter().enumerate() {
            for &start in s {
                for j in 0..=i {
                    match seen.get_mut(start + j) {
                        Some(x) if !*x => *x = true,
                        _ => return false,
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    fn key(&self) -> Vec<bool> {
        self.sets.iter().flat_map(|s| (0..self.n).map(move |k| s.contains(&k))).collect()
    }
}

/// `P_r(n)`, ordered lexicographically by the membership vectors of `S_1, ..., S_r`.
pub fn enumerate_p_r_n(r: usize, n: usize) -> Vec<ShadowedPartition> {
    fn go(r: usize, n: usize, pos: usize, sets: &mut Vec<Vec<usize>>, out: &mut Vec<ShadowedPartition>) {
        if pos == n {
            out.push(ShadowedPartition { n, sets: sets.clone() });
            return;
        }
        for len in 1..=r.min(n - pos) {
            sets[len - 1].push(pos);
            go(r, n, pos + len, sets, out);
            sets[len - 1].pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    go(r, n, 0, &mut vec![Vec::new(); r], &mut out);
    out.sort_by_cached_key(|p| p.key());
    out
}

/// `c(n) = c(n-1) + ... + c(n-r)`, `c(0) = 1`.
pub fn count_compositions(r: usize, n: usize) -> u64 {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        c[k] = (1..=r.min(k)).map(|i| c[k - i]).sum();
    }
    c[n]
}
